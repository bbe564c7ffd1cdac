//! Order polynomials of finite groups of Lie type.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// `q^d − ε` with `ε = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub d: u32,
    pub eps: i8,
}

const fn minus(d: u32) -> Factor {
    Factor { d, eps: 1 }
}
const fn plus(d: u32) -> Factor {
    Factor { d, eps: -1 }
}

impl Factor {
    pub fn eval(&self, q: &BigInt) -> BigInt {
        q.pow(self.d) - BigInt::from(self.eps)
    }
}

/// `q^{q_power} · ∏ num / ∏ den / gcd(center)`; `center = (a, b, ε)` stands
/// for dividing by `gcd(a, q^b − ε)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderPolynomial {
    pub family: String,
    pub q_power: u32,
    pub num: Vec<Factor>,
    pub den: Vec<Factor>,
    pub center: Option<(u32, u32, i8)>,
}

impl OrderPolynomial {
    fn new(family: &str, q_power: u32, num: Vec<Factor>) -> Self {
        OrderPolynomial { family: family.into(), q_power, num, den: vec![], center: None }
    }

    fn center(mut self, a: u32, b: u32, eps: i8) -> Self {
        self.center = Some((a, b, eps));
        self
    }

    /// Order without the center quotient.
    pub fn eval_full(&self, q: u64) -> BigUint {
        let q = BigInt::from(q);
        let mut n: BigInt = (&q).pow(self.q_power);
        for f in &self.num {
            n *= f.eval(&q);
        }
        let mut d = BigInt::one();
        for f in &self.den {
            d *= f.eval(&q);
        }
        debug_assert!((&n % &d).is_zero());
        (n / d).to_biguint().expect("positive order")
    }

    pub fn center_order(&self, q: u64) -> BigUint {
        match self.center {
            None => BigUint::one(),
            Some((a, b, eps)) => {
                let x = BigInt::from(q).pow(b) - BigInt::from(eps);
                BigUint::from(a).gcd(&x.abs().to_biguint().unwrap())
            }
        }
    }

    pub fn eval(&self, q: u64) -> BigUint {
        self.eval_full(q) / self.center_order(q)
    }

    /// The cyclotomic-style factors as a multiset of `(d, ε)` after cancelling the denominator.
    pub fn factors(&self) -> Vec<Factor> {
        let mut v = self.num.clone();
        for f in &self.den {
            if let Some(i) = v.iter().position(|g| g == f) {
                v.remove(i);
            }
        }
        v
    }
}

impl fmt::Display for OrderPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{}", self.q_power)?;
        for x in &self.num {
            write!(f, "(q^{}{}1)", x.d, if x.eps > 0 { "-" } else { "+" })?;
        }
        for x in &self.den {
            write!(f, "/(q^{}{}1)", x.d, if x.eps > 0 { "-" } else { "+" })?;
        }
        if let Some((a, b, e)) = self.center {
            write!(f, "/({a},q^{b}{}1)", if e > 0 { "-" } else { "+" })?;
        }
        Ok(())
    }
}

fn prod(ds: &[u32]) -> Vec<Factor> {
    ds.iter().map(|&d| minus(d)).collect()
}

/// Order polynomial of a simple group (or the stated exceptional group).
///
/// `family` is one of `PSL2`, `PSL`, `PSU`, `PSp`, `POmega`, `POmega+`, `POmega-`,
/// `Sz`/`2B2`, `2G2`, `G2`, `3D4`, `2F4`, `F4`, `E6`, `2E6`, `E7`, `E8`; `n` is the
/// dimension for the classical families and ignored otherwise.
pub fn order_polynomial(family: &str, n: u32) -> Result<OrderPolynomial> {
    let fam = family.trim();
    Ok(match fam {
        "PSL2" => OrderPolynomial::new(fam, 1, prod(&[2])).center(2, 1, 1),
        "PSL" if n >= 2 => {
            OrderPolynomial::new(fam, n * (n - 1) / 2, prod(&(2..=n).collect::<Vec<_>>())).center(n, 1, 1)
        }
        "PSU" if n >= 2 => OrderPolynomial::new(
            fam,
            n * (n - 1) / 2,
            (2..=n).map(|i| if i % 2 == 0 { minus(i) } else { plus(i) }).collect(),
        )
        .center(n, 1, -1),
        "PSp" | "POmega" if n >= 2 => {
            let m = if fam == "PSp" { n / 2 } else { (n - 1) / 2 };
            OrderPolynomial::new(fam, m * m, (1..=m).map(|i| minus(2 * i)).collect()).center(2, 1, 1)
        }
        "POmega+" | "POmega-" if n >= 4 && n % 2 == 0 => {
            let m = n / 2;
            let eps = if fam == "POmega+" { 1 } else { -1 };
            let mut num = vec![Factor { d: m, eps }];
            num.extend((1..m).map(|i| minus(2 * i)));
            OrderPolynomial::new(fam, m * (m - 1), num).center(4, m, eps)
        }
        "Sz" | "2B2" => OrderPolynomial::new(fam, 2, vec![plus(2), minus(1)]),
        "2G2" => OrderPolynomial::new(fam, 3, vec![plus(3), minus(1)]),
        "G2" => OrderPolynomial::new(fam, 6, prod(&[6, 2])),
        "3D4" => OrderPolynomial {
            family: fam.into(),
            q_power: 12,
            num: prod(&[12, 6, 2]),
            den: vec![minus(4)],
            center: None,
        },
        "2F4" => OrderPolynomial::new(fam, 12, vec![plus(6), minus(4), plus(3), minus(1)]),
        "F4" => OrderPolynomial::new(fam, 24, prod(&[2, 6, 8, 12])),
        "E6" => OrderPolynomial::new(fam, 36, prod(&[2, 5, 6, 8, 9, 12])).center(3, 1, 1),
        "2E6" => OrderPolynomial::new(
            fam,
            36,
            vec![minus(2), plus(5), minus(6), minus(8), plus(9), minus(12)],
        )
        .center(3, 1, -1),
        "E7" => OrderPolynomial::new(fam, 63, prod(&[2, 6, 8, 10, 12, 14, 18])).center(2, 1, 1),
        "E8" => OrderPolynomial::new(fam, 120, prod(&[2, 8, 12, 14, 18, 20, 24, 30])),
        _ => return Err(Error::UnsupportedFamily(format!("{family} (n = {n})"))),
    })
}

/// Exact order of a simple group of Lie type at `q`.
pub fn order_poly_eval(family: &str, n: u32, q: u64) -> Result<BigUint> {
    Ok(order_polynomial(family, n)?.eval(q))
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Order of a classical matrix group as stored in the catalog (not projectivized).
///
/// Unitary groups take `q` to be the order of the base field of the
/// hermitian form, i.e. the groups live over `GF(q²)`.
pub fn matrix_group_order(family: &str, d: u32, q: u64) -> Result<BigUint> {
    let bad = || Error::UnsupportedFamily(format!("{family}({d},{q})"));
    let sl = |d: u32| order_polynomial("PSL", d).map(|p| p.eval_full(q));
    let su = |d: u32| order_polynomial("PSU", d).map(|p| p.eval_full(q));
    let sp = |d: u32| order_polynomial("PSp", d).map(|p| p.eval_full(q));
    Ok(match family {
        "SL" => sl(d)?,
        "GL" => sl(d)? * big(q - 1),
        "SU" => su(d)?,
        "GU" => su(d)? * big(q + 1),
        "Sp" if d % 2 == 0 => sp(d)?,
        "GSp" if d % 2 == 0 => sp(d)? * big(q - 1),
        "GO" if d % 2 == 1 && q % 2 == 1 => {
            // |GO(2m+1,q)| = 2 q^{m²} ∏ (q^{2i} − 1)
            order_polynomial("POmega", d)?.eval_full(q) * big(2)
        }
        "GO+" | "GO-" | "Omega+" | "Omega-" if d % 2 == 0 => {
            let sign = if family.ends_with('+') { "POmega+" } else { "POmega-" };
            let so = order_polynomial(sign, d)?.eval_full(q);
            // eval_full is |Ω|·gcd-free, i.e. half of |SO| for q odd and of |GO| for q even.
            if family.starts_with("GO") {
                so * big(if q % 2 == 0 { 2 } else { 4 })
            } else if q % 2 == 0 {
                so
            } else {
                return Err(bad());
            }
        }
        "Sz" => order_polynomial("Sz", 0)?.eval_full(q),
        _ => return Err(bad()),
    })
}
