use std::fmt;
use std::hash::{Hash, Hasher};

use super::field::{Elt, Field};
use crate::error::{Error, Result};

/// Square matrix over a small finite field, row-major. Vectors are rows and
/// matrices act on the right (`v ↦ vM`), so products read left to right like
/// permutations.
#[derive(Clone)]
pub struct FFMatrix {
    field: &'static Field,
    d: usize,
    e: Vec<Elt>,
}

impl PartialEq for FFMatrix {
    fn eq(&self, o: &Self) -> bool {
        self.d == o.d && self.field == o.field && self.e == o.e
    }
}
impl Eq for FFMatrix {}

impl Hash for FFMatrix {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.d.hash(h);
        self.e.hash(h);
    }
}

impl FFMatrix {
    pub fn zero(field: &'static Field, d: usize) -> Self {
        FFMatrix { field, d, e: vec![0; d * d] }
    }

    pub fn identity(field: &'static Field, d: usize) -> Self {
        Self::scalar(field, d, 1)
    }

    pub fn scalar(field: &'static Field, d: usize, a: Elt) -> Self {
        let mut m = Self::zero(field, d);
        for i in 0..d {
            m.e[i * d + i] = a;
        }
        m
    }

    pub fn diag(field: &'static Field, entries: &[Elt]) -> Self {
        let d = entries.len();
        let mut m = Self::zero(field, d);
        for (i, &a) in entries.iter().enumerate() {
            m.e[i * d + i] = a;
        }
        m
    }

    pub fn from_rows(field: &'static Field, rows: &[Vec<u64>]) -> Result<Self> {
        let d = rows.len();
        let mut e = Vec::with_capacity(d * d);
        for r in rows {
            if r.len() != d {
                return Err(Error::Matrix(format!("row of length {} in a {d}×{d} matrix", r.len())));
            }
            for &x in r {
                if x as usize >= field.q() {
                    return Err(Error::Matrix(format!("entry {x} outside GF({})", field.q())));
                }
                e.push(x as Elt);
            }
        }
        Ok(FFMatrix { field, d, e })
    }

    pub(crate) fn from_flat(field: &'static Field, d: usize, e: Vec<Elt>) -> Self {
        debug_assert_eq!(e.len(), d * d);
        FFMatrix { field, d, e }
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.e.chunks(self.d).map(|r| r.iter().map(|&x| x as u64).collect()).collect()
    }

    pub fn row(&self, i: usize) -> &[Elt] {
        &self.e[i * self.d..(i + 1) * self.d]
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elt {
        self.e[i * self.d + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, a: Elt) {
        self.e[i * self.d + j] = a;
    }

    pub fn mul(&self, o: &FFMatrix) -> FFMatrix {
        let (f, d) = (self.field, self.d);
        let mut e = vec![0; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.e[i * d + k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    let idx = i * d + j;
                    e[idx] = f.add(e[idx], f.mul(a, o.e[k * d + j]));
                }
            }
        }
        FFMatrix { field: f, d, e }
    }

    pub fn add(&self, o: &FFMatrix) -> FFMatrix {
        let f = self.field;
        let e = self.e.iter().zip(&o.e).map(|(&a, &b)| f.add(a, b)).collect();
        FFMatrix { field: f, d: self.d, e }
    }

    pub fn sub(&self, o: &FFMatrix) -> FFMatrix {
        let f = self.field;
        let e = self.e.iter().zip(&o.e).map(|(&a, &b)| f.sub(a, b)).collect();
        FFMatrix { field: f, d: self.d, e }
    }

    pub fn scale(&self, a: Elt) -> FFMatrix {
        let f = self.field;
        FFMatrix { field: f, d: self.d, e: self.e.iter().map(|&x| f.mul(x, a)).collect() }
    }

    pub fn transpose(&self) -> FFMatrix {
        let d = self.d;
        let mut m = Self::zero(self.field, d);
        for i in 0..d {
            for j in 0..d {
                m.e[j * d + i] = self.e[i * d + j];
            }
        }
        m
    }

    /// Entrywise field automorphism.
    pub fn map(&self, g: impl Fn(Elt) -> Elt) -> FFMatrix {
        FFMatrix { field: self.field, d: self.d, e: self.e.iter().map(|&x| g(x)).collect() }
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[Elt]) -> Vec<Elt> {
        let (f, d) = (self.field, self.d);
        let mut out = vec![0; d];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for j in 0..d {
                out[j] = f.add(out[j], f.mul(a, self.e[k * d + j]));
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar_value(1)
    }

    fn is_scalar_value(&self, a: Elt) -> bool {
        let d = self.d;
        (0..d).all(|i| (0..d).all(|j| self.e[i * d + j] == if i == j { a } else { 0 }))
    }

    /// The scalar `λ` if the matrix is `λI`.
    pub fn scalar_value(&self) -> Option<Elt> {
        let a = self.e[0];
        self.is_scalar_value(a).then_some(a)
    }

    /// Row echelon form; returns (echelon matrix, rank, determinant).
    fn eliminate(&self) -> (Vec<Elt>, usize, Elt) {
        let (f, d) = (self.field, self.d);
        let mut a = self.e.clone();
        let mut det: Elt = 1;
        let mut rank = 0;
        for col in 0..d {
            let Some(piv) = (rank..d).find(|&r| a[r * d + col] != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                for j in 0..d {
                    a.swap(piv * d + j, rank * d + j);
                }
                det = f.neg(det);
            }
            let pv = a[rank * d + col];
            det = f.mul(det, pv);
            let inv = f.inv(pv).unwrap();
            for r in rank + 1..d {
                let c = f.mul(a[r * d + col], inv);
                if c != 0 {
                    for j in col..d {
                        a[r * d + j] = f.sub(a[r * d + j], f.mul(c, a[rank * d + j]));
                    }
                }
            }
            rank += 1;
        }
        (a, rank, det)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().1
    }

    pub fn det(&self) -> Elt {
        self.eliminate().2
    }

    pub fn inverse(&self) -> Option<FFMatrix> {
        let (f, d) = (self.field, self.d);
        let mut a = self.e.clone();
        let mut inv = Self::identity(f, d).e;
        for col in 0..d {
            let piv = (col..d).find(|&r| a[r * d + col] != 0)?;
            for j in 0..d {
                a.swap(piv * d + j, col * d + j);
                inv.swap(piv * d + j, col * d + j);
            }
            let pinv = f.inv(a[col * d + col]).unwrap();
            for j in 0..d {
                a[col * d + j] = f.mul(a[col * d + j], pinv);
                inv[col * d + j] = f.mul(inv[col * d + j], pinv);
            }
            for r in 0..d {
                if r == col {
                    continue;
                }
                let c = a[r * d + col];
                if c != 0 {
                    for j in 0..d {
                        a[r * d + j] = f.sub(a[r * d + j], f.mul(c, a[col * d + j]));
                        inv[r * d + j] = f.sub(inv[r * d + j], f.mul(c, inv[col * d + j]));
                    }
                }
            }
        }
        Some(FFMatrix { field: f, d, e: inv })
    }

    pub fn pow(&self, mut e: u64) -> FFMatrix {
        let mut acc = Self::identity(self.field, self.d);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order; `None` if singular.
    pub fn order(&self) -> Option<u64> {
        self.order_until(|m| m.is_identity())
    }

    /// Least `n` with `Mⁿ` scalar.
    pub fn projective_order(&self) -> Option<u64> {
        self.order_until(|m| m.scalar_value().is_some())
    }

    fn order_until(&self, done: impl Fn(&FFMatrix) -> bool) -> Option<u64> {
        if self.det() == 0 {
            return None;
        }
        let bound = (self.field.q() as u64).pow(self.d as u32);
        let mut m = self.clone();
        let mut n = 1;
        while !done(&m) {
            m = m.mul(self);
            n += 1;
            if n > bound {
                unreachable!("element order exceeds q^d");
            }
        }
        Some(n)
    }

    /// Kernel of `v ↦ vM` as a list of basis row vectors.
    pub fn left_kernel(&self) -> Vec<Vec<Elt>> {
        // vM = 0 ⇔ Mᵀvᵀ = 0: null space of the transpose.
        self.transpose().right_kernel()
    }

    /// Solutions `x` of `M xᵀ = 0`.
    pub fn right_kernel(&self) -> Vec<Vec<Elt>> {
        nullspace(self.field, &self.e, self.d, self.d)
    }
}

/// Null space of an `rows × cols` matrix (solutions of `A x = 0`).
pub fn nullspace(f: &Field, a: &[Elt], rows: usize, cols: usize) -> Vec<Vec<Elt>> {
    let mut a = a.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        for j in 0..cols {
            a.swap(piv * cols + j, r * cols + j);
        }
        let inv = f.inv(a[r * cols + c]).unwrap();
        for j in 0..cols {
            a[r * cols + j] = f.mul(a[r * cols + j], inv);
        }
        for i in 0..rows {
            if i != r && a[i * cols + c] != 0 {
                let k = a[i * cols + c];
                for j in 0..cols {
                    a[i * cols + j] = f.sub(a[i * cols + j], f.mul(k, a[r * cols + j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0; cols];
            x[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(a[i * cols + fc]);
            }
            x
        })
        .collect()
}

impl fmt::Display for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.e.chunks(self.d).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}){}", self.field.q(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let f = Field::get(9).unwrap();
        let m = FFMatrix::from_rows(f, &[vec![1, 3, 0], vec![5, 2, 7], vec![0, 4, 8]]).unwrap();
        if let Some(inv) = m.inverse() {
            assert!(m.mul(&inv).is_identity());
            assert_ne!(m.det(), 0);
        } else {
            assert_eq!(m.det(), 0);
        }
        let s = FFMatrix::from_rows(f, &[vec![1, 2], vec![1, 2]]).unwrap();
        assert_eq!(s.det(), 0);
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_none());
    }

    #[test]
    fn det_is_multiplicative() {
        let f = Field::get(4).unwrap();
        let a = FFMatrix::from_rows(f, &[vec![1, 2, 3], vec![0, 1, 2], vec![3, 0, 1]]).unwrap();
        let b = FFMatrix::from_rows(f, &[vec![2, 0, 1], vec![1, 1, 0], vec![0, 3, 1]]).unwrap();
        assert_eq!(a.mul(&b).det(), f.mul(a.det(), b.det()));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let f = Field::get(3).unwrap();
        let m = FFMatrix::from_rows(f, &[vec![1, 1, 0], vec![2, 2, 0], vec![0, 0, 1]]).unwrap();
        let k = m.left_kernel();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(|&x| x == 0));
    }

    #[test]
    fn orders() {
        let f = Field::get(3).unwrap();
        let t = FFMatrix::from_rows(f, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(t.order(), Some(3));
        let m = FFMatrix::scalar(f, 2, 2);
        assert_eq!(m.order(), Some(2));
        assert_eq!(m.projective_order(), Some(1));
    }
}
