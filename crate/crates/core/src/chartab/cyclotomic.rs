use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Reduction data for `Q(ζ_n)` in the power basis `1, ζ, …, ζ^{φ(n)−1}`.
#[derive(Debug)]
pub struct CycField {
    pub n: u32,
    pub phi: usize,
    /// `Φ_n`, low coefficient first.
    pub poly: Vec<i64>,
    /// `ζ^k` reduced, for `k < n`.
    powers: Vec<Vec<i128>>,
}

fn cyclotomic_poly(n: u32, cache: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    // xⁿ − 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let den = cyclotomic_poly(d, cache);
            num = div_exact(&num, &den);
        }
    }
    cache.insert(n, num.clone());
    num
}

fn div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; r.len() - dd];
    for i in (dd..r.len()).rev() {
        let c = r[i]; // den is monic
        q[i - dd] = c;
        for (j, &b) in den.iter().enumerate() {
            r[i - dd + j] -= c * b;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

impl CycField {
    /// Shared reduction data for `Q(ζ_n)`.
    pub fn get(n: u32) -> Arc<CycField> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().unwrap().get(&n) {
            return f.clone();
        }
        let poly = {
            let mut c = HashMap::new();
            cyclotomic_poly(n.max(1), &mut c)
        };
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i128; phi];
        cur[0] = 1;
        for _ in 0..n.max(1) {
            powers.push(cur.clone());
            // multiply by ζ: shift, then reduce the overflow coefficient.
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            for i in 0..phi {
                cur[i] -= top * poly[i] as i128;
            }
        }
        let f = Arc::new(CycField { n: n.max(1), phi, poly, powers });
        cache.lock().unwrap().insert(n, f.clone());
        f
    }
}

/// An element of `Z[ζ_n]` in the power basis, reduced modulo `Φ_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    n: u32,
    c: Vec<i128>,
}

impl CycInt {
    pub fn zero(n: u32) -> Self {
        let phi = CycField::get(n).phi;
        CycInt { n: n.max(1), c: vec![0; phi] }
    }

    pub fn from_int(n: u32, a: i128) -> Self {
        let mut z = Self::zero(n);
        z.c[0] = a;
        z
    }

    /// `ζ_n^k`.
    pub fn root_power(n: u32, k: i64) -> Self {
        let f = CycField::get(n);
        let k = k.rem_euclid(f.n as i64) as usize;
        CycInt { n: f.n, c: f.powers[k].clone() }
    }

    /// `Σ a_k ζ_n^k` for an arbitrary coefficient list.
    pub fn from_exponents(n: u32, a: &[i128]) -> Self {
        let f = CycField::get(n);
        let mut c = vec![0i128; f.phi];
        for (k, &x) in a.iter().enumerate() {
            if x != 0 {
                for (ci, &p) in c.iter_mut().zip(&f.powers[k % f.n as usize]) {
                    *ci += x * p;
                }
            }
        }
        CycInt { n: f.n, c }
    }

    /// Takes power-basis coefficients, which must already be reduced.
    pub fn from_coeffs(n: u32, coeffs: Vec<i128>) -> Result<Self> {
        let f = CycField::get(n);
        if coeffs.len() > f.phi {
            // Not reduced: treat as exponents.
            return Ok(Self::from_exponents(n, &coeffs));
        }
        let mut c = coeffs;
        c.resize(f.phi, 0);
        Ok(CycInt { n: f.n, c })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn as_integer(&self) -> Option<i128> {
        self.c[1..].iter().all(|&x| x == 0).then_some(self.c[0])
    }

    pub fn add(&self, o: &CycInt) -> CycInt {
        debug_assert_eq!(self.n, o.n);
        CycInt { n: self.n, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &CycInt) -> CycInt {
        CycInt { n: self.n, c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> CycInt {
        CycInt { n: self.n, c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: i128) -> CycInt {
        CycInt { n: self.n, c: self.c.iter().map(|a| a * k).collect() }
    }

    pub fn mul(&self, o: &CycInt) -> CycInt {
        debug_assert_eq!(self.n, o.n);
        let f = CycField::get(self.n);
        let phi = f.phi;
        let mut prod = vec![0i128; 2 * phi - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        let mut c = prod[..phi].to_vec();
        for (k, &x) in prod.iter().enumerate().skip(phi) {
            if x != 0 {
                for (ci, &p) in c.iter_mut().zip(&f.powers[k % f.n as usize]) {
                    *ci += x * p;
                }
            }
        }
        CycInt { n: self.n, c }
    }

    /// Complex conjugate, `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> CycInt {
        let f = CycField::get(self.n);
        let mut c = vec![0i128; f.phi];
        for (k, &x) in self.c.iter().enumerate() {
            if x != 0 {
                let j = (f.n as usize - k) % f.n as usize;
                for (ci, &p) in c.iter_mut().zip(&f.powers[j]) {
                    *ci += x * p;
                }
            }
        }
        CycInt { n: self.n, c }
    }

    /// Galois action `ζ ↦ ζ^k` for `k` coprime to `n`.
    pub fn galois(&self, k: i64) -> CycInt {
        let f = CycField::get(self.n);
        let mut c = vec![0i128; f.phi];
        for (i, &x) in self.c.iter().enumerate() {
            if x != 0 {
                let j = (i as i64 * k).rem_euclid(f.n as i64) as usize;
                for (ci, &p) in c.iter_mut().zip(&f.powers[j]) {
                    *ci += x * p;
                }
            }
        }
        CycInt { n: self.n, c }
    }

    /// Image in `Q(ζ_m)` for a multiple `m` of `n`.
    pub fn embed(&self, m: u32) -> CycInt {
        assert_eq!(m % self.n, 0, "Q(ζ_{}) does not embed in Q(ζ_{m})", self.n);
        let step = (m / self.n) as usize;
        let mut exps = vec![0i128; m as usize];
        for (i, &x) in self.c.iter().enumerate() {
            exps[(i * step) % m as usize] += x;
        }
        CycInt::from_exponents(m, &exps)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(a) = self.as_integer() {
            return write!(f, "{a}");
        }
        let mut first = true;
        for (k, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            if !first && x > 0 {
                f.write_str("+")?;
            }
            first = false;
            match (k, x) {
                (0, _) => write!(f, "{x}")?,
                (_, 1) => write!(f, "z{}^{k}", self.n)?,
                (_, -1) => write!(f, "-z{}^{k}", self.n)?,
                _ => write!(f, "{x}*z{}^{k}", self.n)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Converts rational power-basis coefficients of `Q(ζ_n)` to an algebraic integer,
/// failing if any coefficient is not integral.
pub fn from_rationals(n: u32, coeffs: &[BigRational]) -> Result<CycInt> {
    let mut c = Vec::with_capacity(coeffs.len());
    for r in coeffs {
        if !r.is_integer() {
            return Err(Error::Table {
                name: String::new(),
                reason: format!("non-integral coefficient {r} (character values are algebraic integers)"),
            });
        }
        let v = r.to_integer();
        let v = v.to_i128().filter(|x| x.abs() < 1 << 60).ok_or_else(|| Error::Table {
            name: String::new(),
            reason: format!("coefficient {v} out of range"),
        })?;
        c.push(v);
    }
    CycInt::from_coeffs(n, c)
}

pub fn to_rationals(x: &CycInt) -> Vec<BigRational> {
    x.c.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect()
}

pub fn rational_is_nonneg_integer(r: &BigRational) -> bool {
    r.is_integer() && !r.is_negative()
}

pub fn big_one() -> BigRational {
    BigRational::one()
}

pub fn big_zero() -> BigRational {
    BigRational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(CycField::get(1).poly, vec![-1, 1]);
        assert_eq!(CycField::get(4).poly, vec![1, 0, 1]);
        assert_eq!(CycField::get(6).poly, vec![1, -1, 1]);
        assert_eq!(CycField::get(12).poly, vec![1, 0, -1, 0, 1]);
        assert_eq!(CycField::get(30).phi, 8);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in [3u32, 5, 8, 12, 30] {
            let s = (0..n as i64).fold(CycInt::zero(n), |acc, k| acc.add(&CycInt::root_power(n, k)));
            assert!(s.is_zero(), "n = {n}");
            assert_eq!(CycInt::root_power(n, 1).mul(&CycInt::root_power(n, n as i64 - 1)), CycInt::from_int(n, 1));
        }
    }

    #[test]
    fn golden_ratio_in_q_zeta5() {
        // b5 = ζ + ζ⁴ satisfies b² + b − 1 = 0.
        let b = CycInt::root_power(5, 1).add(&CycInt::root_power(5, 4));
        let lhs = b.mul(&b).add(&b).sub(&CycInt::from_int(5, 1));
        assert!(lhs.is_zero());
        assert_eq!(b.conj(), b);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let a = CycInt::root_power(3, 1);
        let b = CycInt::root_power(3, 2).add(&CycInt::from_int(3, 2));
        assert_eq!(a.mul(&b).embed(12), a.embed(12).mul(&b.embed(12)));
        assert_eq!(a.embed(6), CycInt::root_power(6, 2));
    }

    proptest! {
        #[test]
        fn ring_laws(n in prop::sample::select(vec![4u32, 7, 9, 12, 15, 20]),
                     a in prop::collection::vec(-5i128..5, 20),
                     b in prop::collection::vec(-5i128..5, 20),
                     c in prop::collection::vec(-5i128..5, 20)) {
            let (a, b, c) = (CycInt::from_exponents(n, &a), CycInt::from_exponents(n, &b), CycInt::from_exponents(n, &c));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
            prop_assert_eq!(a.conj().conj(), a);
        }
    }
}
