use serde::{Deserialize, Serialize};

use super::field::Elt;
use super::matrix::{nullspace, FFMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    /// `B(u, v) = u B vᵀ`.
    Bilinear,
    /// `h(u, v) = u B σ(v)ᵀ` with `σ` the unitary twist.
    Hermitian,
    /// `Q(v) = v Q vᵀ` with `Q` upper triangular (characteristic 2).
    Quadratic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub kind: FormKind,
    pub gram: FFMatrix,
}

/// Folds a square matrix to the upper-triangular matrix of the same quadratic form.
fn fold(m: &FFMatrix) -> FFMatrix {
    let f = m.field();
    let d = m.dim();
    let mut out = FFMatrix::zero(f, d);
    for i in 0..d {
        out.set(i, i, m.get(i, i));
        for j in i + 1..d {
            out.set(i, j, f.add(m.get(i, j), m.get(j, i)));
        }
    }
    out
}

impl Form {
    pub fn new(kind: FormKind, gram: FFMatrix) -> Self {
        Form { kind, gram }
    }

    /// The form transported by `m` (acting on row vectors).
    fn transport(&self, m: &FFMatrix) -> FFMatrix {
        let f = m.field();
        match self.kind {
            FormKind::Bilinear => m.mul(&self.gram).mul(&m.transpose()),
            FormKind::Hermitian => m.mul(&self.gram).mul(&m.map(|x| f.twist(x)).transpose()),
            FormKind::Quadratic => fold(&m.mul(&self.gram).mul(&m.transpose())),
        }
    }

    pub fn preserved_by(&self, m: &FFMatrix) -> bool {
        self.transport(m) == self.gram
    }

    /// `λ` with `M B Mᵀ = λB`, if `m` is a similitude.
    pub fn similitude_multiplier(&self, m: &FFMatrix) -> Option<Elt> {
        let t = self.transport(m);
        let d = self.gram.dim();
        let (i, j) = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .find(|&(i, j)| self.gram.get(i, j) != 0)?;
        let f = m.field();
        let l = f.mul(t.get(i, j), f.inv(self.gram.get(i, j))?);
        (self.gram.scale(l) == t).then_some(l)
    }

    /// Polarization of a quadratic form, or the Gram matrix itself.
    pub fn bilinear(&self) -> FFMatrix {
        match self.kind {
            FormKind::Quadratic => self.gram.add(&self.gram.transpose()),
            _ => self.gram.clone(),
        }
    }

    pub fn value(&self, v: &[Elt]) -> Elt {
        let f = self.gram.field();
        let w = match self.kind {
            FormKind::Hermitian => v.iter().map(|&x| f.twist(x)).collect(),
            _ => v.to_vec(),
        };
        let vb = self.gram.apply(v);
        vb.iter().zip(&w).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    /// `B(u, v)` for the polarized (or sesquilinear) form.
    pub fn pair(&self, u: &[Elt], v: &[Elt]) -> Elt {
        let f = self.gram.field();
        let b = self.bilinear();
        let w: Vec<Elt> = match self.kind {
            FormKind::Hermitian => v.iter().map(|&x| f.twist(x)).collect(),
            _ => v.to_vec(),
        };
        let ub = b.apply(u);
        ub.iter().zip(&w).fold(0, |acc, (&a, &c)| f.add(acc, f.mul(a, c)))
    }
}

/// Basis of the bilinear forms `B` with `M B Mᵀ = B` for every `M` in `gens`.
pub fn invariant_bilinear_forms(gens: &[FFMatrix]) -> Vec<FFMatrix> {
    let f = gens[0].field();
    let d = gens[0].dim();
    let n = d * d;
    // Each generator contributes d² equations (M B Mᵀ − B)_{ij} = 0 in the d² unknowns B_{kl}.
    let mut rows = Vec::with_capacity(gens.len() * n * n);
    for m in gens {
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let mut c = f.mul(m.get(i, k), m.get(j, l));
                        if i == k && j == l {
                            c = f.sub(c, 1);
                        }
                        rows.push(c);
                    }
                }
            }
        }
    }
    nullspace(f, &rows, gens.len() * n, n)
        .into_iter()
        .map(|v| FFMatrix::from_flat(f, d, v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffmat::field::Field;

    #[test]
    fn quadratic_fold_and_invariance() {
        let f = Field::get(2).unwrap();
        // Q = x1 x2 on GF(2)².
        let q = FFMatrix::from_rows(f, &[vec![0, 1], vec![0, 0]]).unwrap();
        let form = Form::new(FormKind::Quadratic, q);
        let swap = FFMatrix::from_rows(f, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(form.preserved_by(&swap));
        let shear = FFMatrix::from_rows(f, &[vec![1, 1], vec![0, 1]]).unwrap();
        // Preserves the polar form but not Q: (1,0) ↦ (1,1) has Q = 1.
        assert!(!form.preserved_by(&shear));
        assert_eq!(form.value(&[1, 1]), 1);
    }

    #[test]
    fn invariant_forms_of_sl2() {
        let f = Field::get(5).unwrap();
        let a = FFMatrix::from_rows(f, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = FFMatrix::from_rows(f, &[vec![1, 0], vec![1, 1]]).unwrap();
        let forms = invariant_bilinear_forms(&[a.clone(), b]);
        // SL(2) preserves exactly the alternating forms.
        assert_eq!(forms.len(), 1);
        let g = &forms[0];
        assert_eq!(g.get(0, 0), 0);
        assert_eq!(g.get(0, 1), f.neg(g.get(1, 0)));
        assert!(Form::new(FormKind::Bilinear, g.clone()).preserved_by(&a));
    }
}
