use super::field::{Elt, Field};
use super::matrix::FFMatrix;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, DEGREE_CAP};

/// A set of row vectors permuted by matrices: all nonzero vectors, the
/// projective points, or an invariant subset of either.
#[derive(Clone, Debug)]
pub struct MatrixAction {
    field: &'static Field,
    d: usize,
    projective: bool,
    points: Vec<Vec<Elt>>,
    /// Base-q code of a (normalized) vector → point index.
    index: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

fn code(q: usize, v: &[Elt]) -> usize {
    v.iter().fold(0, |acc, &x| acc * q + x as usize)
}

fn normalize(f: &Field, v: &mut [Elt]) {
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        let inv = f.inv(lead).unwrap();
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
    }
}

impl MatrixAction {
    fn build(field: &'static Field, d: usize, projective: bool) -> Result<Self> {
        let q = field.q();
        let total = q
            .checked_pow(d as u32)
            .filter(|&t| t <= 1 << 24)
            .ok_or_else(|| Error::DegreeCap(usize::MAX, DEGREE_CAP))?;
        let mut points = Vec::new();
        let mut index = vec![ABSENT; total];
        for c in 1..total {
            // Lexicographic: coordinate 0 is the most significant digit.
            let mut v = vec![0 as Elt; d];
            let mut x = c;
            for i in (0..d).rev() {
                v[i] = (x % q) as Elt;
                x /= q;
            }
            if projective && v.iter().find(|&&x| x != 0) != Some(&1) {
                continue;
            }
            index[c] = points.len() as u32;
            points.push(v);
        }
        if points.len() > DEGREE_CAP {
            return Err(Error::DegreeCap(points.len(), DEGREE_CAP));
        }
        Ok(MatrixAction { field, d, projective, points, index })
    }

    /// One-dimensional subspaces, represented with first nonzero coordinate 1, in lexicographic order.
    pub fn projective(field: &'static Field, d: usize) -> Result<Self> {
        Self::build(field, d, true)
    }

    /// Nonzero vectors; faithful for any matrix group.
    pub fn vectors(field: &'static Field, d: usize) -> Result<Self> {
        Self::build(field, d, false)
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn points(&self) -> &[Vec<Elt>] {
        &self.points
    }

    pub fn point_index(&self, v: &[Elt]) -> Option<usize> {
        let mut w = v.to_vec();
        if self.projective {
            normalize(self.field, &mut w);
        }
        match self.index[code(self.field.q(), &w)] {
            ABSENT => None,
            i => Some(i as usize),
        }
    }

    /// The permutation induced by `m`; `None` if `m` does not preserve the point set.
    pub fn try_perm_of(&self, m: &FFMatrix) -> Option<Permutation> {
        let mut img = Vec::with_capacity(self.points.len());
        for v in &self.points {
            img.push(self.point_index(&m.apply(v))? as u16);
        }
        Some(Permutation::from_images_unchecked(img))
    }

    pub fn perm_of(&self, m: &FFMatrix) -> Permutation {
        self.try_perm_of(m).expect("matrix preserves the action's point set")
    }

    /// Restricts to a subset of points (which must be invariant under the matrices used later).
    pub fn restrict(&self, keep: &[usize]) -> MatrixAction {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        let mut index = vec![ABSENT; self.index.len()];
        let points: Vec<Vec<Elt>> = keep.iter().map(|&i| self.points[i].clone()).collect();
        for (k, v) in points.iter().enumerate() {
            index[code(self.field.q(), v)] = k as u32;
        }
        MatrixAction { field: self.field, d: self.d, projective: self.projective, points, index }
    }

    /// Orbits of the group generated by `gens`, each sorted, ordered by least point.
    pub fn orbits(&self, gens: &[FFMatrix]) -> Vec<Vec<usize>> {
        let perms: Vec<Permutation> = gens.iter().map(|g| self.perm_of(g)).collect();
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut orb = vec![s];
            let mut k = 0;
            while k < orb.len() {
                let p = orb[k];
                for g in &perms {
                    let r = g.image(p);
                    if !seen[r] {
                        seen[r] = true;
                        orb.push(r);
                    }
                }
                k += 1;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    /// Recovers the matrix from its action on the standard basis (vector actions only).
    pub fn matrix_of(&self, g: &Permutation) -> Option<FFMatrix> {
        if self.projective {
            return None;
        }
        let mut e = Vec::with_capacity(self.d * self.d);
        for i in 0..self.d {
            let mut basis = vec![0; self.d];
            basis[i] = 1;
            let idx = self.point_index(&basis)?;
            e.extend_from_slice(&self.points[g.image(idx)]);
        }
        Some(FFMatrix::from_flat(self.field, self.d, e))
    }

    /// Recovers a matrix inducing `g` on a projective action, up to a scalar:
    /// the images of the basis lines and of `⟨e₁ + … + e_d⟩` fix it.
    pub fn projective_matrix_of(&self, g: &Permutation) -> Option<FFMatrix> {
        if !self.projective {
            return self.matrix_of(g);
        }
        let (f, d) = (self.field, self.d);
        let mut rows = Vec::with_capacity(d);
        for i in 0..d {
            let mut basis = vec![0; d];
            basis[i] = 1;
            rows.push(self.points[g.image(self.point_index(&basis)?)].clone());
        }
        let target = &self.points[g.image(self.point_index(&vec![1; d])?)];
        // Solve Σ λᵢ rowsᵢ = target, i.e. λ·R = target with R the row matrix.
        let r = FFMatrix::from_flat(f, d, rows.concat());
        let lambda = FFMatrix::from_flat(f, d, {
            let mut t = target.clone();
            t.extend(std::iter::repeat(0).take(d * d - d));
            t
        })
        .mul(&r.inverse()?);
        let mut e = Vec::with_capacity(d * d);
        for (i, row) in rows.iter().enumerate() {
            let l = lambda.get(0, i);
            if l == 0 {
                return None;
            }
            e.extend(row.iter().map(|&x| f.mul(l, x)));
        }
        let m = FFMatrix::from_flat(f, d, e);
        (self.try_perm_of(&m).as_ref() == Some(g)).then_some(m)
    }

    pub fn group(&self, gens: &[FFMatrix]) -> Result<PermGroup> {
        PermGroup::with_degree(self.degree(), gens.iter().map(|g| self.perm_of(g)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_point_counts() {
        for (q, d, n) in [(3, 3, 13), (2, 6, 63), (4, 4, 85), (3, 5, 121), (2, 8, 255), (9, 3, 91)] {
            let f = Field::get(q).unwrap();
            assert_eq!(MatrixAction::projective(f, d).unwrap().degree(), n);
        }
        let f = Field::get(9).unwrap();
        assert!(MatrixAction::projective(f, 5).is_err());
    }

    #[test]
    fn points_are_normalized_and_sorted() {
        let f = Field::get(3).unwrap();
        let a = MatrixAction::projective(f, 2).unwrap();
        assert_eq!(a.points(), &[vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert_eq!(a.point_index(&[2, 1]), Some(3));
    }

    #[test]
    fn vector_action_recovers_matrices() {
        let f = Field::get(4).unwrap();
        let a = MatrixAction::vectors(f, 2).unwrap();
        let m = FFMatrix::from_rows(f, &[vec![1, 2], vec![2, 1]]).unwrap();
        assert_ne!(m.det(), 0);
        assert_eq!(a.matrix_of(&a.perm_of(&m)).unwrap(), m);
    }

    #[test]
    fn projective_recovery_up_to_scalar() {
        let f = Field::get(3).unwrap();
        let a = MatrixAction::projective(f, 3).unwrap();
        let m = FFMatrix::from_rows(f, &[vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]]).unwrap();
        assert_ne!(m.det(), 0);
        let r = a.projective_matrix_of(&a.perm_of(&m)).unwrap();
        assert!(r == m || r == m.scale(2));
    }
}
