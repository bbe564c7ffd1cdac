//! Sweeps behind the order-6 and order-9 matrix lemmas.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::action::MatrixAction;
use super::canonical::{invariant_factors, is_transvection, unipotent_shape, up_to_scalar, InvariantFactors};
use super::catalog::MatGroupSpec;
use super::matrix::FFMatrix;
use super::poly::Poly;
use super::sample::ProductReplacement;
use crate::error::Result;
use crate::perm::{PermGroup, DEGREE_CAP};

/// Random matrices from a catalog group: uniform through the faithful
/// vector action when it fits under the degree cap, otherwise a
/// product-replacement walk on the generators.
pub enum MatrixSampler {
    Uniform { action: MatrixAction, group: PermGroup, rng: ChaCha8Rng },
    Walk(ProductReplacement<FFMatrix>),
}

impl MatrixSampler {
    pub fn new(spec: &MatGroupSpec, seed: u64) -> Result<Self> {
        let nvec = spec.field.q().pow(spec.d as u32) - 1;
        Ok(if nvec <= DEGREE_CAP {
            let action = MatrixAction::vectors(spec.field, spec.d)?;
            let group = action.group(&spec.generators)?;
            MatrixSampler::Uniform { action, group, rng: ChaCha8Rng::seed_from_u64(seed) }
        } else {
            MatrixSampler::Walk(ProductReplacement::new(&spec.generators, FFMatrix::mul, seed))
        })
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self, MatrixSampler::Uniform { .. })
    }

    pub fn next_matrix(&mut self) -> FFMatrix {
        match self {
            MatrixSampler::Uniform { action, group, rng } => {
                action.matrix_of(&group.random_element(rng)).expect("vector action")
            }
            MatrixSampler::Walk(pr) => pr.next_element(),
        }
    }
}

/// `x` has order 6 in the projective group, is a genuine order-6 matrix,
/// and `x²` is a scalar multiple of a transvection.
pub fn is_lift6_candidate(x: &FFMatrix) -> bool {
    x.order() == Some(6)
        && x.projective_order() == Some(6)
        && up_to_scalar(&x.mul(x), is_transvection).is_some()
}

/// Invariant factors of the form `t+ε₁` (any number), `t²−1` (any number),
/// and exactly one `(t²−1)(t−ε₂)`, with `ε₁, ε₂ = ±1`.
pub fn lift6_shape(ifs: &InvariantFactors) -> bool {
    let Some((last, rest)) = ifs.factors.split_last() else { return false };
    let f = last.field();
    let one = 1;
    let m1 = f.neg(1);
    let t2m1 = Poly::linear(f, one).mul(&Poly::linear(f, m1));
    let last_ok = [one, m1].iter().any(|&e| *last == t2m1.mul(&Poly::linear(f, e)));
    let rest_ok = rest
        .iter()
        .all(|p| *p == t2m1 || *p == Poly::linear(f, one) || *p == Poly::linear(f, m1));
    last_ok && rest_ok
}

pub fn minimal_is_t2m1_squared(ifs: &InvariantFactors) -> bool {
    let mp = ifs.minimal_polynomial();
    let f = mp.field();
    let t2m1 = Poly::linear(f, 1).mul(&Poly::linear(f, f.neg(1)));
    *mp == t2m1.mul(&t2m1)
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct ShapeSweep {
    pub group: String,
    /// Matrices drawn (or enumerated).
    pub examined: u64,
    /// Of those, candidates for the order-6 lemma.
    pub candidates: u64,
    pub shape_ok: u64,
    pub minpoly_t2m1_squared: u64,
    /// Distinct invariant-factor lists seen among candidates.
    pub shapes: Vec<Vec<String>>,
}

impl ShapeSweep {
    fn record(&mut self, x: &FFMatrix) {
        self.examined += 1;
        if !is_lift6_candidate(x) {
            return;
        }
        self.candidates += 1;
        let ifs = invariant_factors(x);
        if lift6_shape(&ifs) {
            self.shape_ok += 1;
        }
        if minimal_is_t2m1_squared(&ifs) {
            self.minpoly_t2m1_squared += 1;
        }
        let s: Vec<String> = ifs.factors.iter().map(|p| p.to_string()).collect();
        if !self.shapes.contains(&s) {
            self.shapes.push(s);
            self.shapes.sort();
        }
    }

    pub fn passes(&self) -> bool {
        self.candidates > 0 && self.shape_ok == self.candidates && self.minpoly_t2m1_squared == 0
    }
}

/// Every element of a catalog group small enough for the faithful vector action.
pub fn exhaustive_lift6(spec: &MatGroupSpec) -> Result<ShapeSweep> {
    let action = MatrixAction::vectors(spec.field, spec.d)?;
    let group = action.group(&spec.generators)?;
    let mut sweep = ShapeSweep { group: spec.name.clone(), ..Default::default() };
    group.for_each_element(|g| {
        sweep.record(&action.matrix_of(g).expect("vector action"));
        true
    });
    Ok(sweep)
}

/// Draws random elements, powering each down to order 6 where possible,
/// until `target` candidates have been seen (or `max_draws` is reached).
pub fn sampled_lift6(spec: &MatGroupSpec, target: u64, max_draws: u64, seed: u64) -> Result<ShapeSweep> {
    let mut sampler = MatrixSampler::new(spec, seed)?;
    let mut sweep = ShapeSweep { group: spec.name.clone(), ..Default::default() };
    for _ in 0..max_draws {
        if sweep.candidates >= target {
            break;
        }
        let g = sampler.next_matrix();
        let o = g.order().expect("invertible");
        if o % 6 == 0 {
            sweep.record(&g.pow(o / 6));
        } else {
            sweep.examined += 1;
        }
    }
    Ok(sweep)
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct JordanSweep {
    pub group: String,
    pub examined: u64,
    /// Order-9 elements whose cube is a transvection.
    pub candidates: u64,
    pub regular: u64,
    pub shapes: Vec<Vec<usize>>,
}

impl JordanSweep {
    pub fn passes(&self) -> bool {
        self.candidates > 0 && self.regular == self.candidates
    }
}

/// Order-9 elements with transvection cube, drawn by powering random elements.
pub fn sampled_order9(spec: &MatGroupSpec, target: u64, max_draws: u64, seed: u64) -> Result<JordanSweep> {
    let mut sampler = MatrixSampler::new(spec, seed)?;
    let mut sweep = JordanSweep { group: spec.name.clone(), ..Default::default() };
    for _ in 0..max_draws {
        if sweep.candidates >= target {
            break;
        }
        sweep.examined += 1;
        let g = sampler.next_matrix();
        let o = g.order().expect("invertible");
        if o % 9 != 0 {
            continue;
        }
        let x = g.pow(o / 9);
        if !is_transvection(&x.pow(3)) {
            continue;
        }
        sweep.candidates += 1;
        let shape = unipotent_shape(&x)?;
        if shape == [x.dim()] {
            sweep.regular += 1;
        }
        if !sweep.shapes.contains(&shape) {
            sweep.shapes.push(shape);
        }
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffmat::field::Field;

    #[test]
    fn shape_recognizer() {
        let f = Field::get(3).unwrap();
        let m = FFMatrix::from_rows(f, &[vec![2, 2, 0, 0], vec![0, 2, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 2]]).unwrap();
        assert!(is_lift6_candidate(&m));
        assert!(lift6_shape(&invariant_factors(&m)));
        // −u for a transvection u has order 6 but projective order 3.
        let u = FFMatrix::from_rows(f, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let neg = u.scale(2);
        assert_eq!(neg.order(), Some(6));
        assert!(!is_lift6_candidate(&neg));
        assert!(!lift6_shape(&invariant_factors(&neg)));
    }
}
