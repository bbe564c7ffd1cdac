use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

/// A bijection of `{0, .., degree-1}` stored as its image list.
///
/// Products are read left to right: `a.mul(&b)` sends `i` to `b(a(i))`,
/// and `x.conjugate_by(g)` is `g⁻¹ x g`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity and the degree cap.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > super::DEGREE_CAP {
            return Err(Error::DegreeCap(n, super::DEGREE_CAP));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "image {i} repeated or out of range for degree {n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u16>) -> Self {
        Permutation { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Checked product: maps `i` to `other(self(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul(other))
    }

    /// Unchecked product; degrees must agree.
    #[inline]
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    /// In-place right multiplication: `self ← self · other`.
    #[inline]
    pub fn mul_assign(&mut self, other: &Permutation) {
        for i in self.images.iter_mut() {
            *i = other.images[*i as usize];
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let mut base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // (g⁻¹ x g)(g(i)) = g(x(i))
        let mut out = vec![0u16; self.degree()];
        for (i, &xi) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[xi as usize];
        }
        Permutation { images: out }
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.image(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.image(j);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                len += 1;
                j = self.image(j);
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Least `n ≥ 1` with `self^n = 1`, the lcm of the cycle lengths.
    pub fn order(&self) -> BigUint {
        let mut acc = BigUint::one();
        let mut lens = self.cycle_type();
        lens.dedup();
        for l in lens {
            acc = acc.lcm(&BigUint::from(l));
        }
        acc
    }

    /// Element order when it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.images.iter().enumerate().all(|(i, &j)| self.images[j as usize] as usize == i)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &j)| *i != j as usize)
            .map(|(i, _)| i)
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

/// Prints 1-based disjoint cycle notation, e.g. `(1,6)(2,5)(3,4)`; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// Parses 1-based cycle notation into a permutation of the given degree.
///
/// Accepts `(1,6)(2,5)(3,4)`, `(1 6)(2 5)` and the compact `(12345)` form
/// (every character one point, so only for points below 10). Whitespace
/// between tokens is ignored; `()` and the empty string are the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
    let cycles = split_cycles(text)?;
    let mut images: Vec<usize> = (0..degree).collect();
    let mut used = vec![false; degree];
    for cycle in cycles {
        for &p in &cycle {
            if p == 0 || p > degree {
                return Err(Error::Parse(format!("point {p} outside 1..={degree}")));
            }
            if used[p - 1] {
                return Err(Error::Parse(format!("point {p} appears twice")));
            }
            used[p - 1] = true;
        }
        for k in 0..cycle.len() {
            images[cycle[k] - 1] = cycle[(k + 1) % cycle.len()] - 1;
        }
    }
    Permutation::from_images(images)
}

/// Like [`parse_cycles`] but takes the degree to be the largest point mentioned.
pub fn parse_cycles_auto(text: &str) -> Result<Permutation> {
    let max = split_cycles(text)?
        .iter()
        .flatten()
        .copied()
        .max()
        .unwrap_or(0);
    parse_cycles(text, max)
}

fn split_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::Parse(format!("expected '(' at {rest:?}")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse("unclosed cycle".into()))?;
        let body = &rest[1..close];
        let points: Vec<usize> = if body.contains(',') {
            body.split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(e.to_string()))?
        } else if body.split_whitespace().count() > 1 {
            body.split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(e.to_string()))?
        } else {
            body.trim()
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad point {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        if !points.is_empty() {
            out.push(points);
        }
        rest = rest[close + 1..].trim_start();
    }
    Ok(out)
}
