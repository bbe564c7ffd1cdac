//! Involution-counting inequalities: the PSL(2,q) case analysis, the
//! field-automorphism bound for PSL(2,q) and Sz(q), and the generic
//! "enough involutions outside the maximal subgroups" criterion.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::zsigmondy::{is_prime, prime_power};
use crate::bigser;
use crate::error::{Error, Result};

fn r(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn frac(a: BigRational, b: BigRational) -> BigRational {
    a / b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum BoundStatus {
    Pass,
    Fail,
    OutOfRange(String),
}

impl BoundStatus {
    fn from_bool(b: bool) -> Self {
        if b { BoundStatus::Pass } else { BoundStatus::Fail }
    }

    /// Out-of-range inputs are not failures.
    pub fn ok(&self) -> bool {
        *self != BoundStatus::Fail
    }
}

/// A named exact quantity in a bound report.
#[derive(Clone, Debug, Serialize)]
pub struct Quantity {
    pub name: String,
    #[serde(with = "bigser::rational")]
    pub value: BigRational,
}

fn qty(name: &str, value: BigRational) -> Quantity {
    Quantity { name: name.into(), value }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Psl2Case {
    /// `x` semisimple with `p | q − 1`: Borel and dihedral overgroups.
    PDivQMinus,
    /// `x` semisimple with `p | q + 1`: a single dihedral overgroup.
    PDivQPlus,
    /// `x` a transvection (`p | q`).
    Unipotent,
}

impl FromStr for Psl2Case {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "p_div_q_minus" | "minus" | "q_minus" => Ok(Psl2Case::PDivQMinus),
            "p_div_q_plus" | "plus" | "q_plus" => Ok(Psl2Case::PDivQPlus),
            "unipotent" => Ok(Psl2Case::Unipotent),
            _ => Err(Error::Expr(format!("unknown PSL(2,q) case {s:?}"))),
        }
    }
}

impl fmt::Display for Psl2Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Psl2Case::PDivQMinus => "p_div_q_minus",
            Psl2Case::PDivQPlus => "p_div_q_plus",
            Psl2Case::Unipotent => "unipotent",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Psl2Bounds {
    pub q: u64,
    pub case: Psl2Case,
    pub values: Vec<Quantity>,
    /// The exact number of involutions in PSL(2,q).
    #[serde(with = "bigser::biguint")]
    pub i2_exact: BigUint,
    pub status: BoundStatus,
}

/// Exact `i₂(PSL(2,q))`: `q² − 1` for even `q`, else `q(q ± 1)/2` with `q ≡ ±1 mod 4`.
pub fn i2_psl2(q: u64) -> BigUint {
    let q = BigUint::from(q);
    if (&q % 2u32).is_zero() {
        &q * &q - 1u32
    } else if (&q % 4u32) == BigUint::one() {
        &q * (&q + 1u32) / 2u32
    } else {
        &q * (&q - 1u32) / 2u32
    }
}

/// Evaluates the displayed involution counts for PSL(2,q) in the given case.
pub fn psl2_bounds(q: u64, case: Psl2Case) -> Result<Psl2Bounds> {
    let (ch, _) = prime_power(q).ok_or_else(|| Error::Expr(format!("{q} is not a prime power")))?;
    if q < 4 {
        return Err(Error::Expr(format!("q = {q} is below 4")));
    }
    let qq = r(q);
    let odd = q % 2 == 1;
    let i2_g = if odd { &qq * (&qq - r(1)) / r(2) } else { &qq * &qq - r(1) };
    let mut values = vec![qq.clone()].into_iter().map(|v| qty("q", v)).collect::<Vec<_>>();
    values.push(qty("i2(G) lower", i2_g.clone()));
    let status = match case {
        Psl2Case::PDivQMinus => {
            let (i2_b, i2_d) = if odd { (qq.clone(), (&qq + r(1)) / r(2)) } else { (&qq - r(1), &qq - r(1)) };
            let lhs = if odd { (&qq * &qq - &qq) / r(2) } else { &qq * &qq - r(1) };
            let middle = if odd { r(2) * &qq + (&qq + r(1)) / r(2) } else { r(2) * (&qq - r(1)) + (&qq - r(1)) };
            let rhs = r(2) * &i2_b + &i2_d;
            values.push(qty("i2(B) upper", i2_b));
            values.push(qty("i2(D) upper", i2_d));
            values.push(qty("lhs", lhs.clone()));
            values.push(qty("middle", middle.clone()));
            values.push(qty("2 i2(B) + i2(D)", rhs.clone()));
            if (odd && q < 7) || (!odd && q < 8) {
                BoundStatus::OutOfRange(format!("the count needs q ≥ {} here", if odd { 7 } else { 8 }))
            } else {
                BoundStatus::from_bool(lhs > middle && middle >= rhs)
            }
        }
        Psl2Case::PDivQPlus => {
            // One dihedral overgroup; an involution outside it exists once i₂(G) exceeds |D|.
            let d = r(2) * (&qq + r(1)) / r(if odd { 2 } else { 1 });
            values.push(qty("|D|", d.clone()));
            if q < 7 {
                BoundStatus::OutOfRange("q ≥ 7 assumed".into())
            } else {
                BoundStatus::from_bool(i2_g > d)
            }
        }
        Psl2Case::Unipotent => {
            // ⟨x, x^n⟩ = PSL(2,ch) for a transvection x; nonsolvable iff ch ≥ 5.
            values.push(qty("characteristic", r(ch)));
            if ch < 5 {
                BoundStatus::OutOfRange(format!("no unipotent element of prime order ≥ 5 in characteristic {ch}"))
            } else {
                BoundStatus::Pass
            }
        }
    };
    let i2_exact = i2_psl2(q);
    debug_assert!(r(BigInt::from(i2_exact.clone())) >= i2_g);
    Ok(Psl2Bounds { q, case, values, i2_exact, status })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldAutFamily {
    #[serde(rename = "PSL2")]
    Psl2,
    #[serde(rename = "Sz")]
    Sz,
}

impl FromStr for FieldAutFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "PSL2" | "PSL(2)" | "L2" => Ok(FieldAutFamily::Psl2),
            "SZ" | "2B2" => Ok(FieldAutFamily::Sz),
            _ => Err(Error::UnsupportedFamily(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldAutBound {
    pub family: FieldAutFamily,
    pub q0: u64,
    pub p: u64,
    /// The displayed terms, summed as `term_sum`.
    #[serde(with = "bigser::rationals")]
    pub terms: Vec<BigRational>,
    #[serde(with = "bigser::rational")]
    pub term_sum: BigRational,
    /// The closed-form majorant of `|Γ|`.
    #[serde(with = "bigser::rational")]
    pub gamma_bound: BigRational,
    /// Lower bound for (Sz: exact value of) `i₂(G₀)`.
    #[serde(with = "bigser::biguint")]
    pub i2: BigUint,
    pub passes: bool,
}

fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Field-automorphism bound: `x` a field automorphism of order `p` of
/// `G₀ = PSL(2, q₀^p)` or `Sz(q₀^p)`; checks `Σ terms ≤ majorant < i₂(G₀)`.
pub fn field_aut_gamma_bound(q0: u64, p: u64, family: FieldAutFamily) -> Result<FieldAutBound> {
    let (ch, k) = prime_power(q0).ok_or_else(|| Error::Expr(format!("q0 = {q0} is not a prime power")))?;
    if !is_prime(p) || p == 2 {
        return Err(Error::Expr(format!("p = {p} must be an odd prime")));
    }
    let big_q = BigUint::from(q0).pow(p as u32);
    let (a, qq) = (r(q0), r(BigInt::from(big_q.clone())));
    let (terms, majorant, i2) = match family {
        FieldAutFamily::Psl2 if ch % 2 == 1 => {
            let c = &a * (&a * &a - r(1)); // |PSL(2,q0)|·(2,q0−1)
            let terms = vec![
                frac(&qq * &c, &a * (&a - r(1))),
                frac((&qq + r(1)) * &c, r(2) * (&a - r(1))),
                frac((&qq + r(3)) * &c, r(2) * (&a + r(1))),
                frac(c.clone(), r(2)),
            ];
            let maj = &a * (&a + r(1)) * (r(3) * &qq + &a + r(3)) / r(2);
            (terms, maj, &big_q * (&big_q - 1u32) / 2u32)
        }
        FieldAutFamily::Psl2 => {
            let c = &a * (&a * &a - r(1));
            let terms = vec![
                frac((&qq - r(1)) * &c, &a * (&a - r(1))),
                frac((&qq - r(1)) * &c, r(2) * (&a - r(1))),
                frac((&qq + r(1)) * &c, r(2) * (&a + r(1))),
                c.clone(),
            ];
            let maj = r(2) * (&qq + &a) * (&a + r(1)) * &a;
            (terms, maj, &big_q * &big_q - 1u32)
        }
        FieldAutFamily::Sz => {
            if ch != 2 || k % 2 == 0 || p < 5 {
                return Err(Error::Expr(format!("Sz needs q0 = 2^(2a+1) and p ≥ 5 (got q0 = {q0}, p = {p})")));
            }
            let s0 = r(BigInt::from(exact_sqrt(&BigUint::from(2 * q0)).unwrap()));
            let s = r(BigInt::from(exact_sqrt(&(&big_q * 2u32)).expect("2q is a square for odd powers of 2")));
            let sz0 = &a * &a * (&a * &a + r(1)) * (&a - r(1)); // |Sz(q0)|
            let terms = vec![
                frac((&qq - r(1)) * &sz0, &a * &a * (&a - r(1))),
                frac((&qq - r(1)) * &sz0, r(2) * (&a - r(1))),
                frac(r(3) * (&qq - &s + r(1)) * &sz0, r(4) * (&a + &s0 + r(1))),
                frac(r(3) * (&qq + &s + r(1)) * &sz0, r(4) * (&a - &s0 + r(1))),
                &a * &a * (&a * &a + r(1)) * (&a * &a - r(1)),
            ];
            let maj = (&qq - r(1)) * (&a * &a + r(1))
                + (&qq - r(1)) * &a * &a * (&a * &a + r(1)) / r(2)
                + r(2) * (&qq + &s + r(1)) * &a * &a * (&a + &s0 + r(1)) * (&a - r(1))
                + &a * &a * (&a * &a + r(1)) * (&a * &a - r(1));
            let i2 = (&big_q * &big_q + 1u32) * (&big_q - 1u32);
            (terms, maj, i2)
        }
    };
    let term_sum: BigRational = terms.iter().cloned().fold(BigRational::zero(), |s, t| s + t);
    let passes = term_sum <= majorant && majorant < r(BigInt::from(i2.clone()));
    Ok(FieldAutBound { family, q0, p, terms, term_sum, gamma_bound: majorant, i2, passes })
}

/// One class of maximal subgroups `X` in the counting criterion.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScenarioSubgroup {
    pub name: String,
    /// `|G : X|`
    #[serde(with = "bigser::biguint")]
    pub index: BigUint,
    /// `|x^G ∩ X|`
    #[serde(with = "bigser::biguint")]
    pub fusion: BigUint,
    /// `|Y ∩ X|`
    #[serde(with = "bigser::biguint")]
    pub involutions: BigUint,
}

/// Inputs of the involution-counting criterion for an element `x`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CountingScenario {
    pub name: String,
    /// `|x^G|`
    #[serde(with = "bigser::biguint")]
    pub class_size: BigUint,
    /// `|Y|`, the involutions of the socle.
    #[serde(with = "bigser::biguint")]
    pub involutions: BigUint,
    #[serde(default)]
    pub subgroups: Vec<ScenarioSubgroup>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountinvOutcome {
    #[serde(with = "bigser::rationals")]
    pub terms: Vec<BigRational>,
    #[serde(with = "bigser::rational")]
    pub rhs: BigRational,
    #[serde(with = "bigser::biguint")]
    pub lhs: BigUint,
    pub passes: bool,
}

/// `|Y| > Σ |x^G ∩ X||G:X||Y ∩ X| / |x^G|`.
pub fn countinv_check(s: &CountingScenario) -> Result<CountinvOutcome> {
    if s.class_size.is_zero() {
        return Err(Error::Scenario(format!("{}: |x^G| must be positive", s.name)));
    }
    for x in &s.subgroups {
        if x.index.is_zero() {
            return Err(Error::Scenario(format!("{}: index of {} must be positive", s.name, x.name)));
        }
        if x.fusion > s.class_size {
            return Err(Error::Scenario(format!("{}: |x^G ∩ {}| exceeds |x^G|", s.name, x.name)));
        }
        if x.involutions > &x.index * &s.involutions {
            return Err(Error::Scenario(format!("{}: involution count of {} is implausible", s.name, x.name)));
        }
    }
    let den = r(BigInt::from(s.class_size.clone()));
    let terms: Vec<BigRational> = s
        .subgroups
        .iter()
        .map(|x| r(BigInt::from(&x.fusion * &x.index * &x.involutions)) / &den)
        .collect();
    let rhs = terms.iter().cloned().fold(BigRational::zero(), |a, b| a + b);
    let passes = r(BigInt::from(s.involutions.clone())) > rhs;
    Ok(CountinvOutcome { terms, rhs, lhs: s.involutions.clone(), passes })
}

/// Which torus of `Sz(q)` the element's order divides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SzCase {
    #[serde(rename = "q_minus_1")]
    QMinus1,
    QPlusR,
    QMinusR,
}

impl FromStr for SzCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "q_minus_1" | "minus1" | "qminus1" => Ok(SzCase::QMinus1),
            "q_plus_r" | "plus" => Ok(SzCase::QPlusR),
            "q_minus_r" | "minus" => Ok(SzCase::QMinusR),
            _ => Err(Error::Expr(format!("unknown Suzuki case {s:?} (q_minus_1, q_plus_r, q_minus_r)"))),
        }
    }
}

/// The displayed upper bounds for the counting sum in `Sz(q)`, with `r = √(2q)`:
/// `p | q−1`: `(q²−q−1) + (q−1)²/2 + (q−1)`; `p | q ± r + 1`: `(q ± r + 1)² + (q ± r + 1)`.
/// The outcome compares against `(q²+1)(q−1)` involutions (or `involutions`, if given).
pub fn sz_countinv_chain(q: u64, case: SzCase, involutions: Option<BigUint>) -> Result<CountinvOutcome> {
    let (ch, k) = prime_power(q).ok_or_else(|| Error::Expr(format!("{q} is not a prime power")))?;
    if ch != 2 || k % 2 == 0 || q < 8 {
        return Err(Error::Expr(format!("Sz(q) needs q = 2^(2a+1) ≥ 8, got {q}")));
    }
    let qq = r(q);
    let s = r(BigInt::from(exact_sqrt(&BigUint::from(2 * q)).unwrap()));
    let terms = match case {
        SzCase::QMinus1 => vec![&qq * &qq - &qq - r(1), (&qq - r(1)) * (&qq - r(1)) / r(2), &qq - r(1)],
        SzCase::QPlusR | SzCase::QMinusR => {
            let t = if case == SzCase::QPlusR { &qq + &s + r(1) } else { &qq - &s + r(1) };
            vec![&t * &t, t]
        }
    };
    let lhs = involutions.unwrap_or_else(|| (BigUint::from(q).pow(2) + 1u32) * (q - 1));
    let rhs = terms.iter().cloned().fold(BigRational::zero(), |a, b| a + b);
    let passes = r(BigInt::from(lhs.clone())) > rhs;
    Ok(CountinvOutcome { terms, rhs, lhs, passes })
}

/// Named scenarios shipped in `data/countinv.json`.
pub fn load_scenarios() -> Result<Vec<CountingScenario>> {
    #[derive(Deserialize)]
    struct File {
        scenarios: Vec<CountingScenario>,
    }
    let f: File = crate::error::read_json(&crate::data_dir().join("countinv.json"))?;
    Ok(f.scenarios)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn value(b: &Psl2Bounds, name: &str) -> BigRational {
        b.values.iter().find(|v| v.name == name).unwrap().value.clone()
    }

    #[test]
    fn psl2_examples() {
        let b = psl2_bounds(7, Psl2Case::PDivQMinus).unwrap();
        assert_eq!(value(&b, "lhs"), rat(21, 1));
        assert_eq!(value(&b, "middle"), rat(18, 1));
        assert_eq!(b.status, BoundStatus::Pass);
        let b = psl2_bounds(8, Psl2Case::PDivQMinus).unwrap();
        assert_eq!(value(&b, "lhs"), rat(63, 1));
        assert_eq!(value(&b, "middle"), rat(21, 1));
        assert_eq!(b.status, BoundStatus::Pass);
        let b = psl2_bounds(5, Psl2Case::PDivQMinus).unwrap();
        assert!(matches!(b.status, BoundStatus::OutOfRange(_)));
        assert!(psl2_bounds(6, Psl2Case::PDivQMinus).is_err());
        assert_eq!(i2_psl2(7), BigUint::from(21u32));
        assert_eq!(i2_psl2(5), BigUint::from(15u32));
        assert_eq!(i2_psl2(8), BigUint::from(63u32));
    }

    #[test]
    fn field_aut_examples() {
        let b = field_aut_gamma_bound(3, 5, FieldAutFamily::Psl2).unwrap();
        assert_eq!(b.term_sum, rat(3186, 1));
        assert_eq!(b.gamma_bound, rat(4410, 1));
        assert_eq!(b.i2, BigUint::from(29403u32));
        assert!(b.passes);
        let b = field_aut_gamma_bound(4, 5, FieldAutFamily::Psl2).unwrap();
        assert_eq!(b.gamma_bound, rat(2 * (1024 + 4) * 5 * 4, 1));
        assert_eq!(b.i2, BigUint::from(4u64.pow(10) - 1));
        assert!(b.passes);
        let b = field_aut_gamma_bound(2, 5, FieldAutFamily::Sz).unwrap();
        assert_eq!(b.terms, vec![rat(155, 1), rat(310, 1), rat(75, 1), rat(615, 1), rat(60, 1)]);
        assert_eq!(b.term_sum, rat(1215, 1));
        assert_eq!(b.gamma_bound, rat(2165, 1));
        assert_eq!(b.i2, BigUint::from(1025u32 * 31));
        assert!(b.passes);
        assert!(field_aut_gamma_bound(2, 3, FieldAutFamily::Sz).is_err());
        assert!(field_aut_gamma_bound(6, 5, FieldAutFamily::Psl2).is_err());
    }

    #[test]
    fn countinv_examples() {
        let empty = CountingScenario { name: "t".into(), class_size: 1u32.into(), involutions: 1u32.into(), subgroups: vec![] };
        let o = countinv_check(&empty).unwrap();
        assert!(o.passes && o.rhs.is_zero());

        let chain = sz_countinv_chain(8, SzCase::QMinus1, None).unwrap();
        assert_eq!(chain.rhs, rat(173, 2));
        assert_eq!(chain.lhs, BigUint::from(455u32));
        assert!(chain.passes);
        assert!(!sz_countinv_chain(8, SzCase::QMinus1, Some(50u32.into())).unwrap().passes);
        assert_eq!(sz_countinv_chain(8, SzCase::QPlusR, None).unwrap().rhs, rat(182, 1));
        assert_eq!(sz_countinv_chain(8, SzCase::QMinusR, None).unwrap().rhs, rat(30, 1));
    }

    proptest! {
        /// Raising |Y| never turns a pass into a failure; raising any term never turns a failure into a pass.
        #[test]
        fn countinv_monotone(y in 1u64..10_000, extra in 0u64..100, f in 1u64..50, i in 1u64..50, inv in 0u64..50, cls in 50u64..100) {
            let inv = inv.min(y);
            let sub = ScenarioSubgroup { name: "X".into(), index: i.into(), fusion: f.into(), involutions: inv.into() };
            let s = CountingScenario { name: "s".into(), class_size: cls.into(), involutions: y.into(), subgroups: vec![sub.clone()] };
            let mut bigger = s.clone();
            bigger.involutions = (y + extra).into();
            let (a, b) = (countinv_check(&s).unwrap(), countinv_check(&bigger).unwrap());
            prop_assert!(!a.passes || b.passes);
            let mut heavier = s.clone();
            heavier.subgroups.push(sub);
            prop_assert!(countinv_check(&heavier).unwrap().rhs >= a.rhs);
        }

        /// The majorant dominates the displayed sum whenever both are defined.
        #[test]
        fn psl2_majorant_dominates(q0 in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13]), p in prop::sample::select(vec![3u64, 5, 7])) {
            let b = field_aut_gamma_bound(q0, p, FieldAutFamily::Psl2).unwrap();
            prop_assert!(b.term_sum <= b.gamma_bound);
        }
    }
}
