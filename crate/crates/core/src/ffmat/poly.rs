use std::fmt;

use super::field::{Elt, Field};

/// Polynomial in `t` over a finite field, coefficients low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: &'static Field,
    c: Vec<Elt>,
}

impl Poly {
    pub fn new(field: &'static Field, mut c: Vec<Elt>) -> Poly {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { field, c }
    }

    pub fn zero(field: &'static Field) -> Poly {
        Poly { field, c: vec![] }
    }

    pub fn constant(field: &'static Field, a: Elt) -> Poly {
        Poly::new(field, vec![a])
    }

    /// `t − a`.
    pub fn linear(field: &'static Field, a: Elt) -> Poly {
        Poly::new(field, vec![field.neg(a), 1])
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Elt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elt {
        *self.c.last().unwrap_or(&0)
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let f = self.field;
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| f.add(*self.c.get(i).unwrap_or(&0), *o.c.get(i).unwrap_or(&0)))
            .collect();
        Poly::new(f, c)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.field, self.c.iter().map(|&a| self.field.neg(a)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut c = vec![0; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, c)
    }

    pub fn scale(&self, a: Elt) -> Poly {
        Poly::new(self.field, self.c.iter().map(|&x| self.field.mul(x, a)).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(self.field, 1), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let f = self.field;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = f.inv(d.lead()).unwrap();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let mut qc = vec![0; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let coef = f.mul(r[i], inv);
            if coef == 0 {
                continue;
            }
            qc[i - dd] = coef;
            for (j, &dj) in d.c.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = f.sub(r[idx], f.mul(coef, dj));
            }
        }
        (Poly::new(f, qc), Poly::new(f, r))
    }

    pub fn divides(&self, o: &Poly) -> bool {
        o.div_rem(self).1.is_zero()
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lead()) {
            Some(i) => self.scale(i),
            None => self.clone(),
        }
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(f.from_int(i as i64), a))
            .collect();
        Poly::new(f, c)
    }

    /// No repeated irreducible factor. Over a perfect field this is `gcd(f, f') = 1`
    /// once the `f' = 0` case (a p-th power) is excluded.
    pub fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        !d.is_zero() && self.gcd(&d).is_one() || self.degree() == Some(0)
    }

    pub fn eval(&self, x: Elt) -> Elt {
        self.c.iter().rev().fold(0, |acc, &a| self.field.add(self.field.mul(acc, x), a))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => f.write_str("t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{a}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let f = Field::get(9).unwrap();
        let a = Poly::new(f, vec![1, 5, 0, 7, 2]);
        let b = Poly::new(f, vec![3, 0, 4]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_and_squarefree() {
        let f = Field::get(3).unwrap();
        let tm1 = Poly::linear(f, 1);
        let tp1 = Poly::linear(f, 2);
        let sq = tm1.mul(&tm1);
        assert!(!sq.is_squarefree());
        assert!(tm1.mul(&tp1).is_squarefree());
        assert_eq!(sq.gcd(&tm1.mul(&tp1)), tm1);
        // t³ − 1 = (t − 1)³ in characteristic 3 has zero derivative.
        let cube = tm1.pow(3);
        assert!(!cube.is_squarefree());
        assert_eq!(cube.to_string(), "t^3+2");
    }
}
