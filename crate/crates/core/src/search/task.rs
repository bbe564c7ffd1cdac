use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::certificate::{nonsolvable_certificate, Certificate};
use super::sweep::{exhaustive_all_solvable, SweepOptions};
use crate::bigser;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

pub const DEFAULT_SEED: u64 = 0xBAE2;
pub const DEFAULT_BUDGET: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `⟨x, x^g⟩`
    #[serde(alias = "pair")]
    PairConjugate,
    /// `⟨x, y⟩` with `y² = 1`
    #[serde(alias = "involution")]
    InvolutionPartner,
    /// `⟨x, x^{g₁}, x^{g₂}⟩`
    #[serde(alias = "triple")]
    TripleConjugate,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pair" | "pair_conjugate" => Ok(Mode::PairConjugate),
            "involution" | "involution_partner" => Ok(Mode::InvolutionPartner),
            "triple" | "triple_conjugate" => Ok(Mode::TripleConjugate),
            _ => Err(Error::Task(format!("unknown mode {s:?} (pair, involution, triple)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::PairConjugate => "pair_conjugate",
            Mode::InvolutionPartner => "involution_partner",
            Mode::TripleConjugate => "triple_conjugate",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchTask {
    pub group: PermGroup,
    pub x: Permutation,
    pub mode: Mode,
    pub budget: u64,
    pub seed: u64,
    pub exhaustive: bool,
    /// Where involution partners come from; the whole group when `None`.
    pub partners: Option<PermGroup>,
}

impl SearchTask {
    pub fn new(group: PermGroup, x: Permutation, mode: Mode) -> Self {
        SearchTask { group, x, mode, budget: DEFAULT_BUDGET, seed: DEFAULT_SEED, exhaustive: false, partners: None }
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn exhaustive(mut self, on: bool) -> Self {
        self.exhaustive = on;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::Budget);
        }
        if !self.group.contains(&self.x) {
            return Err(Error::NotMember);
        }
        if let Some(p) = &self.partners {
            if p.degree() != self.group.degree() {
                return Err(Error::DegreeMismatch(self.group.degree(), p.degree()));
            }
        }
        Ok(())
    }
}

/// A verified nonsolvable subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub mode: Mode,
    pub x: String,
    pub x_order: u64,
    /// `g` (pair), `g₁, g₂` (triple); empty for involution partners.
    pub conjugators: Vec<String>,
    /// The generators besides `x`: `x^g`, `x^{gᵢ}` or `y`.
    pub partners: Vec<String>,
    #[serde(with = "bigser::biguint")]
    pub generated_order: BigUint,
    pub certificate: Certificate,
    pub trials_used: u64,
    pub seed: u64,
}

/// A random involution of `g`: a power of a random element of even order.
/// `None` when no even-order element shows up in `tries` draws.
pub fn random_involution<R: rand::Rng + ?Sized>(g: &PermGroup, rng: &mut R, tries: u32) -> Option<Permutation> {
    for _ in 0..tries {
        let r = g.random_element(rng);
        let o = r.order_u64()?;
        if o % 2 == 0 {
            return Some(r.pow((o / 2) as i64));
        }
    }
    None
}

fn witness(task: &SearchTask, conj: Vec<Permutation>, partners: Vec<Permutation>, h: &PermGroup, trials: u64, rng: &mut ChaCha8Rng) -> Witness {
    let certificate = nonsolvable_certificate(h, rng);
    debug_assert!(!certificate.solvable);
    Witness {
        mode: task.mode,
        x: task.x.to_string(),
        x_order: task.x.order_u64().unwrap_or(0),
        conjugators: conj.iter().map(|g| g.to_string()).collect(),
        partners: partners.iter().map(|g| g.to_string()).collect(),
        generated_order: h.order().clone(),
        certificate,
        trials_used: trials,
        seed: task.seed,
    }
}

/// Randomized (or, with `exhaustive`, complete) search for a nonsolvable
/// subgroup of the requested shape. Reproducible from the task's seed.
pub fn find_nonsolvable(task: &SearchTask) -> Result<Option<Witness>> {
    task.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(task.seed);
    if task.exhaustive {
        let census = exhaustive_all_solvable(&task.group, &task.x, task.mode, &SweepOptions::default())?;
        let Some(found) = census.first_nonsolvable else { return Ok(None) };
        let partners = found.iter().map(|s| crate::perm::parse_cycles(s, task.group.degree())).collect::<Result<Vec<_>>>()?;
        let mut gens = vec![task.x.clone()];
        gens.extend(partners.iter().cloned());
        let h = PermGroup::new(gens)?;
        return Ok(Some(witness(task, vec![], partners, &h, census.tuples_checked, &mut rng)));
    }
    let pool = task.partners.as_ref().unwrap_or(&task.group);
    let x = &task.x;
    for trial in 1..=task.budget {
        let (conj, partners) = match task.mode {
            Mode::PairConjugate => {
                let g = task.group.random_element(&mut rng);
                let y = x.conjugate_by(&g);
                (vec![g], vec![y])
            }
            Mode::TripleConjugate => {
                let g1 = task.group.random_element(&mut rng);
                let g2 = task.group.random_element(&mut rng);
                let (y, z) = (x.conjugate_by(&g1), x.conjugate_by(&g2));
                (vec![g1, g2], vec![y, z])
            }
            Mode::InvolutionPartner => match random_involution(pool, &mut rng, 1000) {
                Some(y) => (vec![], vec![y]),
                None => return Ok(None),
            },
        };
        let mut gens = vec![x.clone()];
        gens.extend(partners.iter().cloned());
        let h = PermGroup::new(gens)?;
        if !h.is_solvable() {
            return Ok(Some(witness(task, conj, partners, &h, trial, &mut rng)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::named::{alternating, symmetric};
    use crate::perm::parse_cycles;

    #[test]
    fn a5_involution_partner() {
        let g = alternating(5);
        let x = parse_cycles("(1,2,3,4,5)", 5).unwrap();
        let w = find_nonsolvable(&SearchTask::new(g.clone(), x.clone(), Mode::InvolutionPartner).budget(1000)).unwrap().unwrap();
        assert_eq!(w.generated_order, BigUint::from(60u32));
        assert_eq!(w.seed, DEFAULT_SEED);
        // Any involution of A₅ outside ⟨x⟩'s normalizer works; for instance:
        let y = parse_cycles("(1,2)(3,4)", 5).unwrap();
        assert_eq!(PermGroup::new(vec![x, y]).unwrap().order(), &BigUint::from(60u32));
    }

    #[test]
    fn reproducible() {
        let g = symmetric(6);
        let x = parse_cycles("(1,2,3)", 6).unwrap();
        let t = SearchTask::new(g, x, Mode::PairConjugate).budget(500).seed(7);
        let a = find_nonsolvable(&t).unwrap();
        let b = find_nonsolvable(&t).unwrap();
        assert!(a.is_some());
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn exhausted_and_invalid() {
        let g = symmetric(5);
        let x = parse_cycles("(1,2)", 5).unwrap();
        assert_eq!(find_nonsolvable(&SearchTask::new(g.clone(), x.clone(), Mode::TripleConjugate).budget(200)).unwrap(), None);
        assert_eq!(find_nonsolvable(&SearchTask::new(g.clone(), x.clone(), Mode::TripleConjugate).exhaustive(true)).unwrap(), None);
        assert!(matches!(find_nonsolvable(&SearchTask::new(g.clone(), x, Mode::PairConjugate).budget(0)), Err(Error::Budget)));
        let outside = parse_cycles("(1,2)", 5).unwrap();
        assert!(find_nonsolvable(&SearchTask::new(alternating(5), outside, Mode::PairConjugate)).is_err());
    }

    #[test]
    fn exhaustive_finds_witness() {
        let g = symmetric(6);
        let x = parse_cycles("(1,2)(3,4)", 6).unwrap();
        let w = find_nonsolvable(&SearchTask::new(g, x, Mode::TripleConjugate).exhaustive(true)).unwrap().unwrap();
        assert!(!w.certificate.solvable);
        assert_eq!(w.partners.len(), 2);
    }
}
