//! Small permutation groups given by explicit generators.

use super::{parse_cycles, PermGroup, Permutation};
use crate::error::{Error, Result};

fn cycle(n: usize, pts: &[usize]) -> Permutation {
    let mut img: Vec<usize> = (0..n).collect();
    for k in 0..pts.len() {
        img[pts[k]] = pts[(k + 1) % pts.len()];
    }
    Permutation::from_images(img).expect("valid cycle")
}

pub fn symmetric(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n.max(1));
    }
    let all: Vec<usize> = (0..n).collect();
    PermGroup::new(vec![cycle(n, &all), cycle(n, &[0, 1])]).expect("valid")
}

pub fn alternating(n: usize) -> PermGroup {
    if n < 3 {
        return PermGroup::trivial(n.max(1));
    }
    let gens = (2..n).map(|k| cycle(n, &[0, 1, k])).collect();
    PermGroup::new(gens).expect("valid")
}

pub fn cyclic(n: usize) -> PermGroup {
    let all: Vec<usize> = (0..n).collect();
    PermGroup::with_degree(n, vec![cycle(n, &all)]).expect("valid")
}

/// Dihedral group of order `2n` acting on an `n`-gon (`n ≥ 3`).
pub fn dihedral(n: usize) -> PermGroup {
    let all: Vec<usize> = (0..n).collect();
    let refl = Permutation::from_images((0..n).map(|i| (n - i) % n).collect()).expect("valid");
    PermGroup::new(vec![cycle(n, &all), refl]).expect("valid")
}

/// Resolves names like `S5`, `A6`, `C7`, `D10` (order 10); anything else is
/// looked up by the caller in the matrix catalog.
pub fn by_name(name: &str) -> Option<PermGroup> {
    let (head, tail) = name.split_at(1);
    let n: usize = tail.parse().ok()?;
    match head {
        "S" if (1..=64).contains(&n) => Some(symmetric(n)),
        "A" if (1..=64).contains(&n) => Some(alternating(n)),
        "C" if (1..=4096).contains(&n) => Some(cyclic(n)),
        "D" if n >= 6 && n % 2 == 0 && n / 2 <= 4096 => Some(dihedral(n / 2)),
        _ => None,
    }
}

/// Builds a group from 1-based cycle-notation generators on `degree` points.
pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<PermGroup> {
    if gens.is_empty() {
        return Err(Error::NoGenerators);
    }
    let gens = gens
        .iter()
        .map(|g| parse_cycles(g, degree))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(gens)
}

/// `G × H` acting on the disjoint union of the two domains.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let (m, n) = (g.degree(), h.degree());
    let left = g.generators().iter().map(|x| {
        Permutation::from_images((0..m).map(|i| x.image(i)).chain(m..m + n).collect()).expect("valid")
    });
    let right = h.generators().iter().map(|y| {
        Permutation::from_images((0..m).chain((0..n).map(|i| m + y.image(i))).collect()).expect("valid")
    });
    PermGroup::with_degree(m + n, left.chain(right).collect()).expect("valid")
}

/// Imprimitive wreath product `G ≀ H`: `H` (degree k) permutes k copies of `G`'s domain.
pub fn wreath_product(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let (m, k) = (g.degree(), h.degree());
    let mut gens: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|x| Permutation::from_images((0..m * k).map(|p| if p < m { x.image(p) } else { p }).collect()).expect("valid"))
        .collect();
    gens.extend(h.generators().iter().map(|y| {
        Permutation::from_images((0..m * k).map(|p| y.image(p / m) * m + p % m).collect()).expect("valid")
    }));
    PermGroup::with_degree(m * k, gens).expect("valid")
}
