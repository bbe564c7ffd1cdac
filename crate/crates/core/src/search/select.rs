use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffmat::canonical::{is_pseudoreflection, is_reflection, is_transvection, up_to_scalar};
use crate::ffmat::lemmas::MatrixSampler;
use crate::ffmat::{CatalogGroup, FFMatrix, MatGroupSpec, MatrixAction};
use crate::perm::{ConjClass, PermGroup, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Any,
    Transvection,
    Pseudoreflection,
    Reflection,
}

impl Property {
    fn holds(self, m: &FFMatrix) -> bool {
        match self {
            Property::Any => true,
            Property::Transvection => up_to_scalar(m, is_transvection).is_some(),
            Property::Pseudoreflection => up_to_scalar(m, is_pseudoreflection).is_some(),
            Property::Reflection => up_to_scalar(m, is_reflection).is_some(),
        }
    }
}

/// `ORDER[:PROPERTY]`: projective order `ORDER`, and the power of `x` of
/// prime order `r` (the largest prime dividing `ORDER`) has `PROPERTY` up to
/// a scalar. `!PROPERTY` negates, e.g. `2:!transvection`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ElementSpec {
    pub order: u64,
    pub property: Property,
    pub negate: bool,
}

impl ElementSpec {
    pub fn new(order: u64, property: Property) -> Self {
        ElementSpec { order, property, negate: false }
    }

    /// Largest prime dividing the order.
    pub fn prime(&self) -> u64 {
        let mut n = self.order;
        let mut r = 1;
        let mut d = 2;
        while n > 1 {
            while n % d == 0 {
                n /= d;
                r = d;
            }
            d += 1;
        }
        r
    }

    /// Checks a matrix (not its projective image) against the order and property.
    pub fn matches(&self, m: &FFMatrix) -> bool {
        if m.projective_order() != Some(self.order) {
            return false;
        }
        let power = m.pow(self.order / self.prime());
        self.property.holds(&power) != self.negate
    }
}

impl FromStr for ElementSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Task(format!("bad element spec {s:?}; expected ORDER[:PROPERTY]"));
        let (ord, prop) = s.split_once(':').unwrap_or((s, "any"));
        let order: u64 = ord.trim().parse().map_err(|_| bad())?;
        if order < 2 {
            return Err(bad());
        }
        let prop = prop.trim();
        let (negate, prop) = match prop.strip_prefix('!') {
            Some(p) => (true, p),
            None => (false, prop),
        };
        let property = match prop.to_ascii_lowercase().as_str() {
            "any" | "" => Property::Any,
            "transvection" => Property::Transvection,
            "pseudoreflection" => Property::Pseudoreflection,
            "reflection" => Property::Reflection,
            _ => return Err(bad()),
        };
        Ok(ElementSpec { order, property, negate })
    }
}

impl fmt::Display for ElementSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.property {
            Property::Any => "any",
            Property::Transvection => "transvection",
            Property::Pseudoreflection => "pseudoreflection",
            Property::Reflection => "reflection",
        };
        write!(f, "{}:{}{p}", self.order, if self.negate { "!" } else { "" })
    }
}

#[derive(Clone, Debug)]
pub struct Selected {
    pub matrix: FFMatrix,
    pub perm: Permutation,
    pub draws: u64,
}

/// Draws random matrices from the catalog group until one matches `spec`.
pub fn select_element(g: &CatalogGroup, spec: &ElementSpec, seed: u64, max_draws: u64) -> Result<Selected> {
    let mut sampler = MatrixSampler::new(&g.spec, seed)?;
    for draw in 1..=max_draws {
        let m = sampler.next_matrix();
        if spec.matches(&m) {
            let perm = g.action.perm_of(&m);
            return Ok(Selected { matrix: m, perm, draws: draw });
        }
    }
    Err(Error::Task(format!("no element {spec} in {} within {max_draws} draws", g.spec.name)))
}

/// Every group element of the form `u ↦ u + a·B(u, v)·v` (`v` a projective
/// point, `a ≠ 0`): the transvections and reflections defined by the form,
/// or by `B = I` for groups without one.
pub fn root_elements(spec: &MatGroupSpec) -> Result<Vec<FFMatrix>> {
    let f = spec.field;
    let d = spec.d;
    let pts = MatrixAction::projective(f, d)?;
    let pair = |u: &[u8], v: &[u8]| match &spec.form {
        Some(form) => form.pair(u, v),
        None => u.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))),
    };
    let basis: Vec<Vec<u8>> = (0..d).map(|i| (0..d).map(|j| (i == j) as u8).collect()).collect();
    let mut out = Vec::new();
    for v in pts.points() {
        let col: Vec<u8> = basis.iter().map(|e| pair(e, v)).collect();
        if col.iter().all(|&c| c == 0) {
            continue;
        }
        for a in 1..f.q() as u8 {
            let mut m = FFMatrix::identity(f, d);
            for i in 0..d {
                for j in 0..d {
                    m.set(i, j, f.add(m.get(i, j), f.mul(f.mul(a, col[i]), v[j])));
                }
            }
            if m.det() != 0 && !m.is_identity() && spec.family_member(&m) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// Splits elements of `g` into conjugacy classes; one [`ConjClass`] per class met, in first-seen order.
pub fn split_classes(g: &PermGroup, elems: &[Permutation], cap: usize) -> Result<Vec<ConjClass>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for x in elems {
        if x.is_identity() || seen.contains(x) {
            continue;
        }
        let c = g.conjugacy_class(x, cap)?;
        seen.extend(c.elements.iter().flatten().cloned());
        if c.elements.is_none() {
            return Err(Error::ClassCap(cap));
        }
        out.push(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffmat::classical_group;

    #[test]
    fn parse_specs() {
        let s: ElementSpec = "6:transvection".parse().unwrap();
        assert_eq!((s.order, s.property, s.negate, s.prime()), (6, Property::Transvection, false, 3));
        let s: ElementSpec = "2:!transvection".parse().unwrap();
        assert!(s.negate);
        assert_eq!(s.to_string(), "2:!transvection");
        assert_eq!("13".parse::<ElementSpec>().unwrap().property, Property::Any);
        assert!("1".parse::<ElementSpec>().is_err());
        assert!("6:rotation".parse::<ElementSpec>().is_err());
    }

    #[test]
    fn root_element_counts() {
        // 63 symplectic transvections in Sp(6,2); 45 unitary transvections in SU(4,2).
        let sp = classical_group("Sp", 6, 2).unwrap();
        let t = root_elements(&sp).unwrap();
        assert_eq!(t.len(), 63);
        assert!(t.iter().all(is_transvection));
        let su = classical_group("SU", 4, 2).unwrap();
        assert_eq!(root_elements(&su).unwrap().iter().filter(|m| is_transvection(m)).count(), 45);
        // GO(5,3): 81 nonsingular points, two reflections (±) each.
        let go = classical_group("GO", 5, 3).unwrap();
        let r = root_elements(&go).unwrap();
        assert_eq!(r.iter().filter(|m| is_reflection(m)).count(), 81);
    }

    #[test]
    fn order6_with_transvection_square() {
        let g = classical_group("SL", 3, 3).unwrap().realize().unwrap();
        let spec: ElementSpec = "6:transvection".parse().unwrap();
        let s = select_element(&g, &spec, 1, 20_000).unwrap();
        assert_eq!(s.perm.order_u64(), Some(6));
        assert!(up_to_scalar(&s.matrix.pow(2), is_transvection).is_some());
    }
}
