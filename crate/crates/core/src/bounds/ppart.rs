//! Sylow p-part identities: for a prime `p ≥ 5` whose multiplicative order
//! modulo it is fixed by a table row, the p-part of the group order equals
//! the p-part of a stated expression in `q`.

use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::expr::{integral, poly_divrem, poly_mul, Expr, QPoly};
use super::orders::order_polynomial;
use super::zsigmondy::{p_part, prime_power, primitive_prime_divisors};
use crate::chartab::CycField;
use crate::error::{Error, Result};

/// Smallest prime considered; 2 and 3 behave differently in these identities.
pub const MIN_PRIME: u64 = 5;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PPartRow {
    /// Smallest degree `d` of the order polynomial with `p | q^d − 1`, when the table gives it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    /// The divisibility case, e.g. `q^9+1`.
    pub case: String,
    /// Expression whose p-part is claimed to equal that of the group order (empty when skipped).
    #[serde(default)]
    pub ppart_expr: String,
    pub subgroup: String,
    #[serde(default)]
    pub skip: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PPartTable {
    pub family: String,
    /// `odd_power_of_2` restricts `q` to `2^{2a+1}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_form: Option<String>,
    pub rows: Vec<PPartRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum RowStatus {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeCheck {
    pub p: u64,
    pub group_ppart: String,
    pub claim_ppart: String,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowCheck {
    pub family: String,
    pub row: usize,
    pub e: Option<u32>,
    pub case: String,
    pub ppart_expr: String,
    pub q: u64,
    /// Multiplicative order of `q` modulo `p` implied by the case.
    pub order: u32,
    pub primes: Vec<PrimeCheck>,
    /// Primitive prime divisors below [`MIN_PRIME`], not checked.
    pub small_primes: Vec<u64>,
    pub status: RowStatus,
}

impl RowCheck {
    pub fn passes(&self) -> bool {
        self.status != RowStatus::Fail
    }
}

/// Multiplicative order of `q` mod `p` for primes `p ≥ 5` dividing the case
/// expression: `q^k − 1 → k`, `q^k + 1 → 2k`, `Φ_o(q) → o`.
pub fn case_order(case: &str) -> Result<u32> {
    let poly = integral(&Expr::parse(case)?.to_poly()?).ok_or_else(|| Error::Expr(format!("{case} is not integral")))?;
    let k = poly.len().saturating_sub(1);
    if k >= 1 && poly[k] == BigInt::one() && poly[1..k].iter().all(Zero::is_zero) {
        if poly[0] == BigInt::from(-1) {
            return Ok(k as u32);
        }
        if poly[0] == BigInt::one() {
            return Ok(2 * k as u32);
        }
    }
    for o in 1..=120u32 {
        let phi = &CycField::get(o).poly;
        if phi.len() == poly.len() && phi.iter().zip(&poly).all(|(&a, b)| BigInt::from(a) == *b) {
            return Ok(o);
        }
    }
    Err(Error::Expr(format!("{case} is neither q^k ± 1 nor a cyclotomic polynomial")))
}

fn order_poly_q(family: &str) -> Result<QPoly> {
    let op = order_polynomial(family, 0)?;
    let int = |x: i64| BigRational::from_integer(BigInt::from(x));
    let qk = |d: u32, eps: i8| {
        let mut v = vec![BigRational::zero(); d as usize + 1];
        v[0] = int(-(eps as i64));
        v[d as usize] = BigRational::one();
        v
    };
    let mut num = vec![BigRational::zero(); op.q_power as usize + 1];
    num[op.q_power as usize] = BigRational::one();
    for f in &op.num {
        num = poly_mul(&num, &qk(f.d, f.eps));
    }
    for f in &op.den {
        let (quo, rem) = poly_divrem(&num, &qk(f.d, f.eps))?;
        debug_assert!(rem.is_empty());
        num = quo;
    }
    Ok(num)
}

/// Whether the row's expression (with gcd factors dropped) divides the order
/// polynomial in `Q[q]`.
pub fn divides_order_polynomial(family: &str, row: &PPartRow) -> Result<bool> {
    let d = Expr::parse(&row.ppart_expr)?.to_poly()?;
    let (_, rem) = poly_divrem(&order_poly_q(family)?, &d)?;
    Ok(rem.is_empty())
}

impl PPartTable {
    pub fn load(path: &Path) -> Result<Self> {
        crate::error::read_json(path)
    }

    fn q_allowed(&self, q: u64) -> Option<String> {
        let Some((r, k)) = prime_power(q) else { return Some(format!("{q} is not a prime power")) };
        match self.q_form.as_deref() {
            Some("odd_power_of_2") if r != 2 || k % 2 == 0 => Some(format!("{} needs q = 2^(2a+1)", self.family)),
            _ => None,
        }
    }

    /// Checks one row at one `q`.
    pub fn check_row(&self, row_index: usize, q: u64) -> Result<RowCheck> {
        let row = self.rows.get(row_index).ok_or_else(|| Error::Expr(format!("no row {row_index}")))?;
        let order = case_order(&row.case)?;
        let mut out = RowCheck {
            family: self.family.clone(),
            row: row_index,
            e: row.e,
            case: row.case.clone(),
            ppart_expr: row.ppart_expr.clone(),
            q,
            order,
            primes: vec![],
            small_primes: vec![],
            status: RowStatus::Pass,
        };
        if row.skip {
            out.status = RowStatus::Skipped("row marked x: case cannot occur".into());
            return Ok(out);
        }
        if let Some(reason) = self.q_allowed(q) {
            out.status = RowStatus::Skipped(reason);
            return Ok(out);
        }
        let ppds = primitive_prime_divisors(q, order)?;
        let (small, primes): (Vec<u64>, Vec<u64>) = ppds.into_iter().partition(|&p| p < MIN_PRIME);
        out.small_primes = small;
        if primes.is_empty() {
            out.status = RowStatus::Skipped(format!("no primitive prime divisor p ≥ {MIN_PRIME} of q^{order} − 1 at q = {q}"));
            return Ok(out);
        }
        let group = order_polynomial(&self.family, 0)?.eval_full(q);
        let expr = Expr::parse(&row.ppart_expr)?;
        let qb = BigInt::from(q);
        for p in primes {
            let v = expr.eval_int(&qb, Some(&BigInt::from(p)))?;
            let v = v.magnitude().clone();
            let (g, c) = (p_part(&group, p), p_part(&v, p));
            let equal = g == c && !v.is_zero();
            if !equal {
                out.status = RowStatus::Fail;
            }
            out.primes.push(PrimeCheck { p, group_ppart: g.to_string(), claim_ppart: c.to_string(), equal });
        }
        Ok(out)
    }

    pub fn check_all(&self, qs: &[u64]) -> Result<Vec<RowCheck>> {
        let mut out = Vec::new();
        for i in 0..self.rows.len() {
            for &q in qs {
                out.push(self.check_row(i, q)?);
            }
        }
        Ok(out)
    }

    /// Index of the first row matching `e` (if given) and `case` (spacing-insensitive).
    pub fn find_row(&self, e: Option<u32>, case: &str) -> Option<usize> {
        let norm = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        self.rows.iter().position(|r| (e.is_none() || r.e == e) && norm(&r.case) == norm(case))
    }
}

/// All shipped tables, ordered by file name.
pub fn load_tables() -> Result<Vec<PPartTable>> {
    let dir = crate::data_dir().join("ppart");
    let mut paths: Vec<_> = std::fs::read_dir(&dir)
        .map_err(|source| Error::Io { path: dir.display().to_string(), source })?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths.iter().map(|p| PPartTable::load(p)).collect()
}

pub fn load_table(family: &str) -> Result<PPartTable> {
    load_tables()?
        .into_iter()
        .find(|t| t.family.eq_ignore_ascii_case(family))
        .ok_or_else(|| Error::UnsupportedFamily(family.to_string()))
}

/// Value of `q^a ∓ 1`-style sums used in reports.
pub fn eval_expr(expr: &str, q: u64) -> Result<BigUint> {
    let v = Expr::parse(expr)?.eval_int(&BigInt::from(q), None)?;
    v.to_biguint().ok_or_else(|| Error::Expr(format!("{expr} is negative at q = {q}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_orders() {
        assert_eq!(case_order("q^9+1").unwrap(), 18);
        assert_eq!(case_order("q^7-1").unwrap(), 7);
        assert_eq!(case_order("q+1").unwrap(), 2);
        assert_eq!(case_order("q-1").unwrap(), 1);
        assert_eq!(case_order("q^4-q^2+1").unwrap(), 12);
        assert_eq!(case_order("q^2-q+1").unwrap(), 6);
        assert_eq!(case_order("q^2+q+1").unwrap(), 3);
        assert!(case_order("q^2+2").is_err());
    }

    #[test]
    fn order_polynomial_as_polynomial() {
        let p = order_poly_q("E7").unwrap();
        assert_eq!(p.len(), 63 + 2 + 6 + 8 + 10 + 12 + 14 + 18 + 1);
        let q3d4 = order_poly_q("3D4").unwrap();
        // Value at q = 2 agrees with the evaluator.
        let v = q3d4.iter().rev().fold(BigRational::zero(), |acc, c| acc * BigRational::from_integer(2.into()) + c);
        assert_eq!(v.to_integer(), BigInt::from(211341312u64));
    }
}
