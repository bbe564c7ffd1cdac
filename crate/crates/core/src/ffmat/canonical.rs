//! Invariant factors, Jordan shapes of unipotent elements, and the
//! transvection / pseudoreflection predicates.

use super::field::Elt;
use super::matrix::FFMatrix;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Non-unit invariant factors `f₁ | f₂ | … | f_m` of a matrix, monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors {
    pub factors: Vec<Poly>,
}

impl InvariantFactors {
    pub fn minimal_polynomial(&self) -> &Poly {
        self.factors.last().expect("a matrix of dimension ≥ 1 has a nonunit factor")
    }

    pub fn characteristic_polynomial(&self) -> Poly {
        let f = self.factors[0].field();
        self.factors.iter().fold(Poly::constant(f, 1), |acc, p| acc.mul(p))
    }
}

/// Smith normal form of `tI − M` over `GF(q)[t]`.
///
/// The pivot is always the lowest-degree nonzero entry of the remaining
/// block, ties going to the first in row-major order, so the reduction is
/// deterministic.
pub fn invariant_factors(m: &FFMatrix) -> InvariantFactors {
    let f = m.field();
    let d = m.dim();
    let mut a: Vec<Vec<Poly>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let c = f.neg(m.get(i, j));
                    if i == j {
                        Poly::new(f, vec![c, 1])
                    } else {
                        Poly::constant(f, c)
                    }
                })
                .collect()
        })
        .collect();

    for k in 0..d {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..d {
                for j in k..d {
                    if let Some(deg) = a[i][j].degree() {
                        if best.is_none_or(|(bd, _, _)| deg < bd) {
                            best = Some((deg, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let mut clean = true;
            for i in k + 1..d {
                if a[i][k].is_zero() {
                    continue;
                }
                let (q, r) = a[i][k].div_rem(&a[k][k]);
                for j in k..d {
                    let t = a[k][j].mul(&q);
                    a[i][j] = a[i][j].sub(&t);
                }
                clean &= r.is_zero();
            }
            for j in k + 1..d {
                if a[k][j].is_zero() {
                    continue;
                }
                let (q, r) = a[k][j].div_rem(&a[k][k]);
                for i in k..d {
                    let t = a[i][k].mul(&q);
                    a[i][j] = a[i][j].sub(&t);
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // Enforce divisibility into the remaining block.
            let bad = (k + 1..d)
                .flat_map(|i| (k + 1..d).map(move |j| (i, j)))
                .find(|&(i, j)| !a[k][k].divides(&a[i][j]));
            match bad {
                Some((i, _)) => {
                    for j in k..d {
                        let t = a[i][j].clone();
                        a[k][j] = a[k][j].add(&t);
                    }
                }
                None => break,
            }
        }
    }
    let factors = (0..d)
        .map(|i| a[i][i].monic())
        .filter(|p| p.degree().unwrap_or(0) > 0)
        .collect();
    InvariantFactors { factors }
}

/// Jordan block sizes (descending) of a unipotent matrix, from the ranks of `(M − I)ʲ`.
pub fn unipotent_shape(m: &FFMatrix) -> Result<Vec<usize>> {
    let f = m.field();
    let d = m.dim();
    let n = m.sub(&FFMatrix::identity(f, d));
    let mut ranks = vec![d];
    let mut p = FFMatrix::identity(f, d);
    while *ranks.last().unwrap() > 0 {
        p = p.mul(&n);
        let r = p.rank();
        if r == *ranks.last().unwrap() {
            return Err(Error::NotUnipotent);
        }
        ranks.push(r);
    }
    // Blocks of size ≥ j: ranks[j−1] − ranks[j].
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut shape = Vec::new();
    for j in (1..=at_least.len()).rev() {
        let exact = at_least[j - 1] - at_least.get(j).copied().unwrap_or(0);
        shape.extend(std::iter::repeat_n(j, exact));
    }
    Ok(shape)
}

fn minus_identity(m: &FFMatrix) -> FFMatrix {
    m.sub(&FFMatrix::identity(m.field(), m.dim()))
}

pub fn is_transvection(m: &FFMatrix) -> bool {
    let n = minus_identity(m);
    n.rank() == 1 && n.mul(&n).scalar_value() == Some(0)
}

pub fn is_pseudoreflection(m: &FFMatrix) -> bool {
    minus_identity(m).rank() == 1 && invariant_factors(m).minimal_polynomial().is_squarefree()
}

/// An involutory pseudoreflection; in characteristic 2 these are the orthogonal transvections.
pub fn is_reflection(m: &FFMatrix) -> bool {
    minus_identity(m).rank() == 1 && m.mul(m).is_identity()
}

/// Scalars `λ` (in the matrix's field) for which `λM` satisfies `pred`.
pub fn up_to_scalar(m: &FFMatrix, pred: impl Fn(&FFMatrix) -> bool) -> Option<Elt> {
    let f = m.field();
    (1..f.q() as Elt).find(|&l| pred(&m.scale(l)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffmat::field::Field;
    use proptest::prelude::*;

    fn mat(q: usize, rows: &[&[u64]]) -> FFMatrix {
        let f = Field::get(q).unwrap();
        FFMatrix::from_rows(f, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn strs(ifs: &InvariantFactors) -> Vec<String> {
        ifs.factors.iter().map(|p| p.to_string()).collect()
    }

    /// Independent oracle: `det(tI − M)` by cofactor expansion over `GF(q)[t]`.
    fn char_poly(m: &FFMatrix) -> Poly {
        let f = m.field();
        let d = m.dim();
        let entry = |i: usize, j: usize| {
            let c = f.neg(m.get(i, j));
            if i == j {
                Poly::new(f, vec![c, 1])
            } else {
                Poly::constant(f, c)
            }
        };
        fn det(f: &'static Field, rows: &[usize], cols: &[usize], e: &dyn Fn(usize, usize) -> Poly) -> Poly {
            if rows.is_empty() {
                return Poly::constant(f, 1);
            }
            let mut acc = Poly::zero(f);
            for (k, &c) in cols.iter().enumerate() {
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = e(rows[0], c).mul(&det(f, &rows[1..], &rest, e));
                acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
        let idx: Vec<usize> = (0..d).collect();
        det(f, &idx, &idx, &entry)
    }

    #[test]
    fn identity_factors() {
        let f = Field::get(3).unwrap();
        let ifs = invariant_factors(&FFMatrix::identity(f, 3));
        assert_eq!(strs(&ifs), vec!["t+2", "t+2", "t+2"]);
    }

    #[test]
    fn transvection_factors() {
        let m = mat(3, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let ifs = invariant_factors(&m);
        assert_eq!(strs(&ifs), vec!["t+2", "t^2+t+1"]);
        assert!(is_transvection(&m));
        assert!(!is_pseudoreflection(&m));
        assert_eq!(unipotent_shape(&m).unwrap(), vec![2, 1]);
    }

    #[test]
    fn identity_is_neither() {
        let f = Field::get(3).unwrap();
        let i = FFMatrix::identity(f, 4);
        assert!(!is_transvection(&i));
        assert!(!is_pseudoreflection(&i));
        assert_eq!(unipotent_shape(&i).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn regular_unipotent() {
        let m = mat(3, &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]);
        assert_eq!(unipotent_shape(&m).unwrap(), vec![4]);
        assert_eq!(invariant_factors(&m).factors.len(), 1);
        assert!(unipotent_shape(&mat(3, &[&[2, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn cube_root_pseudoreflection() {
        let f = Field::get(4).unwrap();
        // ω = t is a primitive cube root of unity in GF(4).
        let m = FFMatrix::diag(f, &[2, 1, 1, 1]);
        assert!(!is_transvection(&m));
        assert!(is_pseudoreflection(&m));
        assert!(!is_reflection(&m));
    }

    #[test]
    fn order_six_direct_sum_shape() {
        // −J₂ ⊕ (1) has order 6 with square a transvection; add a (−1) block.
        let m = mat(3, &[&[2, 2, 0, 0], &[0, 2, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 2]]);
        assert_eq!(m.order(), Some(6));
        assert!(is_transvection(&m.mul(&m)));
        let ifs = invariant_factors(&m);
        // t+ε₁ with ε₁ = 1, and (t²−1)(t−ε₂) with ε₂ = −1.
        assert_eq!(strs(&ifs), vec!["t+1", "t^3+t^2+2t+2"]);
    }

    fn mat_strategy(q: usize, d: usize) -> impl Strategy<Value = FFMatrix> {
        prop::collection::vec(0..q as u64, d * d).prop_map(move |v| {
            let f = Field::get(q).unwrap();
            let rows: Vec<Vec<u64>> = v.chunks(d).map(|c| c.to_vec()).collect();
            FFMatrix::from_rows(f, &rows).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn factors_multiply_to_char_poly(m in mat_strategy(3, 4)) {
            let ifs = invariant_factors(&m);
            prop_assert_eq!(ifs.characteristic_polynomial(), char_poly(&m));
            for w in ifs.factors.windows(2) {
                prop_assert!(w[0].divides(&w[1]));
            }
        }

        #[test]
        fn factors_are_conjugation_invariant(m in mat_strategy(4, 3), g in mat_strategy(4, 3)) {
            if let Some(gi) = g.inverse() {
                prop_assert_eq!(invariant_factors(&gi.mul(&m).mul(&g)), invariant_factors(&m));
            }
        }

        #[test]
        fn minimal_polynomial_annihilates(m in mat_strategy(9, 3)) {
            let mp = invariant_factors(&m).minimal_polynomial().clone();
            let f = m.field();
            let mut acc = FFMatrix::zero(f, 3);
            for &c in mp.coeffs().iter().rev() {
                acc = acc.mul(&m).add(&FFMatrix::scalar(f, 3, c));
            }
            prop_assert_eq!(acc.scalar_value(), Some(0));
        }
    }
}
