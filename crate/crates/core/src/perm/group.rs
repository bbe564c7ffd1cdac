use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use super::{Permutation, CLASS_CAP, DEGREE_CAP};
use crate::error::{Error, Result};

const UNREACHED: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

/// One level of the stabilizer chain: the strong generators fixing the
/// earlier base points, and a Schreier vector for the orbit of this level's
/// base point.
#[derive(Clone, Debug)]
struct Level {
    base_point: u16,
    gens: Vec<Permutation>,
    inv_gens: Vec<Permutation>,
    orbit: Vec<u16>,
    label: Vec<u32>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut label = vec![UNREACHED; degree];
        label[base_point] = ROOT;
        Level {
            base_point: base_point as u16,
            gens: Vec::new(),
            inv_gens: Vec::new(),
            orbit: vec![base_point as u16],
            label,
        }
    }

    fn add_gen(&mut self, g: Permutation) {
        self.inv_gens.push(g.inverse());
        self.gens.push(g);
        self.rebuild_orbit();
    }

    fn rebuild_orbit(&mut self) {
        self.label.iter_mut().for_each(|l| *l = UNREACHED);
        let b = self.base_point as usize;
        self.label[b] = ROOT;
        self.orbit.clear();
        self.orbit.push(b as u16);
        let mut k = 0;
        while k < self.orbit.len() {
            let p = self.orbit[k] as usize;
            for (j, s) in self.gens.iter().enumerate() {
                let q = s.image(p);
                if self.label[q] == UNREACHED {
                    self.label[q] = j as u32;
                    self.orbit.push(q as u16);
                }
            }
            k += 1;
        }
    }

    #[inline]
    fn contains(&self, p: usize) -> bool {
        self.label[p] != UNREACHED
    }

    /// Right-multiplies `h` by `u_p⁻¹`, where `u_p` maps the base point to `p`.
    fn strip(&self, h: &mut Permutation, mut p: usize) {
        while self.label[p] != ROOT {
            let j = self.label[p] as usize;
            h.mul_assign(&self.inv_gens[j]);
            p = self.inv_gens[j].image(p);
        }
    }

    /// Transversal element mapping the base point to `p`.
    fn transversal(&self, mut p: usize, degree: usize) -> Permutation {
        let mut word = Vec::new();
        while self.label[p] != ROOT {
            let j = self.label[p] as usize;
            word.push(j);
            p = self.inv_gens[j].image(p);
        }
        let mut u = Permutation::identity(degree);
        for &j in word.iter().rev() {
            u.mul_assign(&self.gens[j]);
        }
        u
    }
}

/// A permutation group with a stabilizer chain, built by deterministic
/// Schreier–Sims.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
            order: BigUint::one(),
        }
    }

    /// Builds the BSGS for `⟨gens⟩`.
    pub fn new(gens: Vec<Permutation>) -> Result<Self> {
        let degree = gens.first().ok_or(Error::NoGenerators)?.degree();
        Self::with_degree(degree, gens)
    }

    /// Like [`PermGroup::new`] but allows an empty generator list.
    pub fn with_degree(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if degree > DEGREE_CAP {
            return Err(Error::DegreeCap(degree, DEGREE_CAP));
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let mut g = PermGroup::trivial(degree);
        g.generators = gens;
        let nontrivial: Vec<Permutation> = g
            .generators
            .iter()
            .filter(|s| !s.is_identity())
            .cloned()
            .collect();
        for s in nontrivial {
            g.push_level0(s);
        }
        g.complete_from_zero();
        Ok(g)
    }

    fn push_level0(&mut self, s: Permutation) {
        if self.levels.is_empty() {
            let b = s.first_moved_point().expect("nontrivial");
            self.levels.push(Level::new(b, self.degree));
        }
        self.levels[0].add_gen(s);
    }

    /// Sifts `h` through levels `from..`, returning the residue and the level
    /// where sifting stopped (`levels.len()` if it passed every level).
    fn sift_from(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for (m, lvl) in self.levels.iter().enumerate().skip(from) {
            let p = h.image(lvl.base_point as usize);
            if !lvl.contains(p) {
                return (h, m);
            }
            lvl.strip(&mut h, p);
        }
        let n = self.levels.len();
        (h, n)
    }

    /// Finds a Schreier generator at level `i` that does not sift.
    fn check_level(&self, i: usize) -> Option<(Permutation, usize)> {
        let lvl = &self.levels[i];
        for k in 0..lvl.orbit.len() {
            let beta = lvl.orbit[k] as usize;
            let u = lvl.transversal(beta, self.degree);
            for s in &lvl.gens {
                let gamma = s.image(beta);
                let mut h = u.mul(s);
                lvl.strip(&mut h, gamma);
                if h.is_identity() {
                    continue;
                }
                let (r, j) = self.sift_from(h, i + 1);
                if j < self.levels.len() || !r.is_identity() {
                    return Some((r, j));
                }
            }
        }
        None
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point as usize).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Strong generators, deduplicated, in level order.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if seen.insert(g.clone()) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (r, j) = self.sift_from(g.clone(), 0);
        j == self.levels.len() && r.is_identity()
    }

    /// Adds a generator, extending the chain incrementally. Returns whether the group grew.
    pub fn extend(&mut self, g: Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, g.degree()));
        }
        if self.contains(&g) {
            return Ok(false);
        }
        self.generators.push(g.clone());
        self.push_level0(g);
        self.complete_from_zero();
        Ok(true)
    }

    /// Schreier–Sims completion after level 0 gained generators; deeper levels
    /// are assumed to hold complete chains for their own groups.
    fn complete_from_zero(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i: isize = 0;
        while i >= 0 {
            let iu = i as usize;
            match self.check_level(iu) {
                None => i -= 1,
                Some((h, j)) => {
                    if j == self.levels.len() {
                        let b = h.first_moved_point().expect("nontrivial residue");
                        self.levels.push(Level::new(b, self.degree));
                    }
                    for l in iu + 1..=j {
                        self.levels[l].add_gen(h.clone());
                    }
                    i = j as isize;
                }
            }
        }
        self.order = self
            .levels
            .iter()
            .map(|l| BigUint::from(l.orbit.len()))
            .product();
    }

    /// Smallest subgroup of `self` containing `elems` and normalized by `self`.
    pub fn normal_closure(&self, elems: &[Permutation]) -> PermGroup {
        let mut n = PermGroup::trivial(self.degree);
        let mut queue: Vec<Permutation> = Vec::new();
        for e in elems {
            if !e.is_identity() && !n.contains(e) {
                n.extend(e.clone()).expect("degree checked");
                queue.push(e.clone());
            }
        }
        while let Some(a) = queue.pop() {
            for g in &self.generators {
                let c = a.conjugate_by(g);
                if !n.contains(&c) {
                    n.extend(c.clone()).expect("degree checked");
                    queue.push(c);
                }
            }
        }
        n
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let gens = &self.generators;
        let mut comms = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let c = Permutation::commutator(a, b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// `G = D₀ ⊇ D₁ ⊇ …`, stopping at the first repeated term (which is included once).
    pub fn derived_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                break;
            }
            let d = last.derived_subgroup();
            if d.order == last.order {
                break;
            }
            series.push(d);
        }
        series
    }

    /// Order of the last derived term: 1 iff solvable, otherwise the perfect core's order.
    pub fn perfect_core_order(&self) -> BigUint {
        let mut cur = self.clone();
        loop {
            if cur.is_trivial() {
                return BigUint::one();
            }
            let d = cur.derived_subgroup();
            if d.order == cur.order {
                return d.order;
            }
            cur = d;
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.perfect_core_order().is_one()
    }

    /// Uniform random element: one uniform transversal element per level,
    /// multiplied deepest level first.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for lvl in self.levels.iter().rev() {
            let p = lvl.orbit[rng.random_range(0..lvl.orbit.len())] as usize;
            g.mul_assign(&lvl.transversal(p, self.degree));
        }
        g
    }

    /// Explicit transversals, one vector per level, in orbit order.
    fn transversals(&self) -> Vec<Vec<Permutation>> {
        self.levels
            .iter()
            .map(|l| {
                l.orbit
                    .iter()
                    .map(|&p| l.transversal(p as usize, self.degree))
                    .collect()
            })
            .collect()
    }

    /// Visits every element exactly once; the callback may stop the walk by returning `false`.
    pub fn for_each_element<F: FnMut(&Permutation) -> bool>(&self, mut f: F) {
        let ts = self.transversals();
        let id = Permutation::identity(self.degree);
        if ts.is_empty() {
            f(&id);
            return;
        }
        fn walk<F: FnMut(&Permutation) -> bool>(
            ts: &[Vec<Permutation>],
            level: usize,
            acc: &Permutation,
            f: &mut F,
        ) -> bool {
            for u in &ts[level] {
                let next = acc.mul(u);
                let go = if level == 0 {
                    f(&next)
                } else {
                    walk(ts, level - 1, &next, f)
                };
                if !go {
                    return false;
                }
            }
            true
        }
        walk(&ts, ts.len() - 1, &id, &mut f);
    }

    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        self.for_each_element(|g| {
            out.push(g.clone());
            true
        });
        out
    }

    /// Conjugacy class of `x` as the orbit under conjugation by the generators.
    /// Elements are kept when the size is at most `cap`; otherwise only the size
    /// is reported, up to the global class cap.
    pub fn conjugacy_class(&self, x: &Permutation, cap: usize) -> Result<ConjClass> {
        if !self.contains(x) {
            return Err(Error::NotMember);
        }
        let orbit = self.class_orbit(x)?;
        let size = BigUint::from(orbit.len());
        let elements = if orbit.len() <= cap { Some(orbit) } else { None };
        Ok(ConjClass {
            representative: x.clone(),
            size,
            elements,
        })
    }

    pub(crate) fn class_orbit(&self, x: &Permutation) -> Result<Vec<Permutation>> {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut out = vec![x.clone()];
        seen.insert(x.clone());
        let mut queue = VecDeque::from([x.clone()]);
        while let Some(y) = queue.pop_front() {
            for g in &self.generators {
                let z = y.conjugate_by(g);
                if seen.insert(z.clone()) {
                    if out.len() >= CLASS_CAP {
                        return Err(Error::ClassCap(CLASS_CAP));
                    }
                    out.push(z.clone());
                    queue.push_back(z);
                }
            }
        }
        Ok(out)
    }

    /// Conjugacy classes of involutions, found by enumerating the group.
    pub fn involution_classes(&self) -> Result<Vec<ConjClass>> {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut classes = Vec::new();
        let mut err = None;
        self.for_each_element(|g| {
            if g.is_involution() && !seen.contains(g) {
                match self.class_orbit(g) {
                    Ok(orbit) => {
                        let size = BigUint::from(orbit.len());
                        seen.extend(orbit.iter().cloned());
                        classes.push(ConjClass {
                            representative: g.clone(),
                            size,
                            elements: Some(orbit),
                        });
                    }
                    Err(e) => {
                        err = Some(e);
                        return false;
                    }
                }
            }
            true
        });
        match err {
            Some(e) => Err(e),
            None => Ok(classes),
        }
    }

    /// Number of elements of order 2, as the sum of involution class sizes.
    pub fn involution_count(&self) -> Result<BigUint> {
        Ok(self
            .involution_classes()?
            .iter()
            .map(|c| c.size.clone())
            .sum())
    }
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub representative: Permutation,
    pub size: BigUint,
    pub elements: Option<Vec<Permutation>>,
}
