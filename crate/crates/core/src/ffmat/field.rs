use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Field element, encoded in base `p`: `Σ cᵢ pⁱ` stands for `Σ cᵢ tⁱ`.
pub type Elt = u8;

/// Largest supported field size.
pub const MAX_Q: usize = 16;

/// `GF(p^k)` with precomputed addition and multiplication tables.
#[derive(Clone)]
pub struct Field {
    p: u8,
    k: u8,
    q: u8,
    modulus: Vec<u8>,
    add: Vec<Elt>,
    mul: Vec<Elt>,
    neg: Vec<Elt>,
    inv: Vec<Elt>,
    primitive: Elt,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}
impl Eq for Field {}

/// Fixed moduli, low coefficient first. Prime fields use `t − g` for a
/// primitive root `g`, so `t` is primitive in every field here.
pub fn standard_modulus(q: usize) -> Option<Vec<u8>> {
    Some(match q {
        2 => vec![1, 1],
        3 => vec![1, 1],
        4 => vec![1, 1, 1],
        5 => vec![3, 1],
        7 => vec![4, 1],
        8 => vec![1, 1, 0, 1],
        9 => vec![2, 2, 1],
        11 => vec![9, 1],
        13 => vec![11, 1],
        16 => vec![1, 1, 0, 0, 1],
        _ => return None,
    })
}

fn prime_power(q: usize) -> Option<(usize, usize)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl Field {
    /// Builds `GF(p^k)` from a monic modulus, rejecting reducible ones.
    pub fn new(p: usize, modulus: &[u8]) -> Result<Field> {
        let k = modulus.len().saturating_sub(1);
        if k == 0 || *modulus.last().unwrap() != 1 {
            return Err(Error::Field("modulus must be monic of degree ≥ 1".into()));
        }
        if prime_power(p) != Some((p, 1)) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        let q = p.pow(k as u32);
        if q > MAX_Q {
            return Err(Error::Field(format!("GF({q}) exceeds the supported size {MAX_Q}")));
        }
        if modulus.iter().any(|&c| c as usize >= p) {
            return Err(Error::Field("modulus coefficient out of range".into()));
        }
        let digits = |x: usize| -> Vec<usize> {
            let mut v = vec![0; k];
            let mut x = x;
            for d in v.iter_mut() {
                *d = x % p;
                x /= p;
            }
            v
        };
        let encode = |v: &[usize]| -> Elt { v.iter().rev().fold(0, |acc, &c| acc * p + c) as Elt };
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<usize> = (0..k).map(|i| (da[i] + db[i]) % p).collect();
                add[a * q + b] = encode(&s);
                let mut prod = vec![0usize; 2 * k];
                for i in 0..k {
                    for j in 0..k {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                for deg in (k..2 * k).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for (i, &m) in modulus.iter().enumerate() {
                            let idx = deg - k + i;
                            prod[idx] = (prod[idx] + (p - c) * m as usize) % p;
                        }
                    }
                }
                mul[a * q + b] = encode(&prod[..k]);
            }
        }
        let mut neg = vec![0; q];
        let mut inv = vec![0; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Elt;
            if a != 0 {
                // A reducible modulus leaves zero divisors, hence some element without inverse.
                inv[a] = (0..q)
                    .find(|&b| mul[a * q + b] == 1)
                    .ok_or_else(|| Error::Field(format!("modulus {modulus:?} is reducible over GF({p})")))?
                    as Elt;
            }
        }
        let mut f = Field {
            p: p as u8,
            k: k as u8,
            q: q as u8,
            modulus: modulus.to_vec(),
            add,
            mul,
            neg,
            inv,
            primitive: 0,
        };
        f.primitive = if k > 1 && f.mult_order(p as Elt) == q - 1 {
            p as Elt
        } else {
            (1..q as Elt)
                .find(|&a| f.mult_order(a) == q - 1)
                .expect("multiplicative group is cyclic")
        };
        Ok(f)
    }

    /// The field of order `q` with its fixed modulus, shared for the life of the process.
    pub fn get(q: usize) -> Result<&'static Field> {
        static FIELDS: OnceLock<Vec<Option<Field>>> = OnceLock::new();
        let all = FIELDS.get_or_init(|| {
            (0..=MAX_Q)
                .map(|q| {
                    let (p, _) = prime_power(q)?;
                    Field::new(p, &standard_modulus(q)?).ok()
                })
                .collect()
        });
        all.get(q)
            .and_then(|f| f.as_ref())
            .ok_or_else(|| Error::Field(format!("no field of order {q} available")))
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.p as usize
    }
    #[inline]
    pub fn k(&self) -> usize {
        self.k as usize
    }
    #[inline]
    pub fn q(&self) -> usize {
        self.q as usize
    }
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }
    pub fn primitive(&self) -> Elt {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        self.add[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg[b as usize])
    }
    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        self.neg[a as usize]
    }
    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elt) -> Option<Elt> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: Elt, e: u64) -> Elt {
        let mut acc = 1;
        let mut b = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: Elt) -> Elt {
        self.pow(a, self.p as u64)
    }

    /// Order of the unitary twist's fixed field, `√q`, when `q` is a square.
    pub fn sqrt_q(&self) -> Option<usize> {
        (self.k % 2 == 0).then(|| (self.p as usize).pow(self.k as u32 / 2))
    }

    /// The unitary twist `x ↦ x^{√q}`; requires an even extension degree.
    pub fn twist(&self, a: Elt) -> Elt {
        let r = self.sqrt_q().expect("unitary twist needs a square field order");
        self.pow(a, r as u64)
    }

    pub fn mult_order(&self, a: Elt) -> usize {
        assert!(a != 0);
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Elements forming a basis of the field over its prime subfield: `1, t, …, t^{k−1}`.
    pub fn prime_basis(&self) -> Vec<Elt> {
        (0..self.k as u32).map(|i| (self.p as usize).pow(i) as Elt).collect()
    }

    pub fn from_int(&self, n: i64) -> Elt {
        n.rem_euclid(self.p as i64) as Elt
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf3_addition() {
        let f = Field::get(3).unwrap();
        assert_eq!(f.add(2, 2), 1);
    }

    #[test]
    fn gf4_omega_squared() {
        let f = Field::get(4).unwrap();
        // ω = t encodes as 2; ω + 1 encodes as 3.
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn gf9_frobenius_is_involutive() {
        let f = Field::get(9).unwrap();
        for x in f.elements() {
            assert_eq!(f.frobenius(f.frobenius(x)), x);
        }
        assert!(f.elements().any(|x| f.frobenius(x) != x));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // t² + 1 = (t + 1)² over GF(2).
        assert!(matches!(Field::new(2, &[1, 0, 1]), Err(Error::Field(_))));
        assert!(Field::new(3, &[1, 0, 1]).is_ok());
    }

    #[test]
    fn axioms_for_all_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = Field::get(q).unwrap();
            assert_eq!(f.mult_order(f.primitive()), q - 1);
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
            // Every standard modulus makes t primitive.
            if f.k() > 1 {
                assert_eq!(f.mult_order(f.p() as Elt), q - 1);
            }
        }
    }
}
