use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::task::Mode;
use crate::bigser;
use crate::error::{Error, Result};
use crate::perm::named::symmetric;
use crate::perm::{PermGroup, Permutation, CLASS_CAP};

#[derive(Clone, Debug)]
pub struct SweepOptions {
    /// Largest class (or involution set) listed explicitly.
    pub cap: usize,
    /// Shuffles the class listing before sweeping.
    pub shuffle: Option<u64>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { cap: 20_000, shuffle: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderCount {
    #[serde(with = "bigser::biguint")]
    pub order: BigUint,
    pub count: u64,
}

/// Outcome of a complete sweep with `x` fixed as the class representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub mode: Mode,
    pub x: String,
    /// Size of the class (or involution set) the partners range over.
    pub class_size: usize,
    /// Ordered partner tuples covered: `n` (pair, involution) or `n²` (triple).
    pub tuples_checked: u64,
    /// Distinct generating sets, i.e. BSGS computations after memoization.
    pub distinct_subgroups: u64,
    /// Generated orders over ordered tuples; complete only when `all_solvable`.
    pub orders: Vec<OrderCount>,
    pub all_solvable: bool,
    /// The first nonsolvable partner tuple in listing order.
    pub first_nonsolvable: Option<Vec<String>>,
}

struct Row {
    index: usize,
    checked: u64,
    distinct: u64,
    orders: BTreeMap<BigUint, u64>,
    hit: Option<Vec<Permutation>>,
}

type Memo = HashMap<Vec<Permutation>, (BigUint, bool)>;

fn generate(memo: &mut Memo, mut gens: Vec<Permutation>, distinct: &mut u64) -> Result<(BigUint, bool)> {
    gens.sort_unstable();
    gens.dedup();
    if let Some(v) = memo.get(&gens) {
        return Ok(v.clone());
    }
    *distinct += 1;
    let h = PermGroup::new(gens.clone())?;
    let v = (h.order().clone(), h.is_solvable());
    memo.insert(gens, v.clone());
    Ok(v)
}

/// Sweeps every subgroup `⟨x, y⟩` (`y` in the class of `x`, or any involution)
/// or `⟨x, y, z⟩` (`y, z` in the class of `x`). Fixing `x` loses nothing:
/// simultaneous conjugation preserves solvability.
///
/// Workers take rows `y`; a nonsolvable hit at row `i` cancels rows after
/// `i` only, so the reported witness is the first in listing order.
pub fn exhaustive_all_solvable(group: &PermGroup, x: &Permutation, mode: Mode, opts: &SweepOptions) -> Result<Census> {
    if !group.contains(x) {
        return Err(Error::NotMember);
    }
    let cap = opts.cap.min(CLASS_CAP);
    let mut class: Vec<Permutation> = match mode {
        Mode::InvolutionPartner => {
            let mut all = Vec::new();
            for c in group.involution_classes()? {
                all.extend(c.elements.expect("listed"));
                if all.len() > cap {
                    return Err(Error::ClassCap(cap));
                }
            }
            all
        }
        _ => group.conjugacy_class(x, cap)?.elements.ok_or(Error::ClassCap(cap))?,
    };
    match opts.shuffle {
        Some(seed) => class.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
        None => class.sort_unstable(),
    }
    let n = class.len();
    let stop = AtomicUsize::new(usize::MAX);
    let rows: Vec<Result<Row>> = (0..n)
        .into_par_iter()
        .map_init(Memo::new, |memo, i| {
            let mut row = Row { index: i, checked: 0, distinct: 0, orders: BTreeMap::new(), hit: None };
            if i > stop.load(Ordering::Relaxed) {
                return Ok(row);
            }
            let y = &class[i];
            let partners: Vec<Vec<Permutation>> = match mode {
                Mode::TripleConjugate => (i..n).map(|j| vec![y.clone(), class[j].clone()]).collect(),
                _ => vec![vec![y.clone()]],
            };
            for p in partners {
                let weight = if p.len() == 2 && p[0] != p[1] { 2 } else { 1 };
                let mut gens = vec![x.clone()];
                gens.extend(p.iter().cloned());
                let (order, solvable) = generate(memo, gens, &mut row.distinct)?;
                row.checked += weight;
                *row.orders.entry(order).or_default() += weight;
                if !solvable {
                    row.hit = Some(p);
                    stop.fetch_min(i, Ordering::Relaxed);
                    break;
                }
            }
            Ok(row)
        })
        .collect();
    let mut census = Census {
        mode,
        x: x.to_string(),
        class_size: n,
        tuples_checked: 0,
        distinct_subgroups: 0,
        orders: vec![],
        all_solvable: true,
        first_nonsolvable: None,
    };
    let mut orders: BTreeMap<BigUint, u64> = BTreeMap::new();
    for row in rows {
        let row = row?;
        let _ = row.index;
        census.tuples_checked += row.checked;
        census.distinct_subgroups += row.distinct;
        for (o, c) in row.orders {
            *orders.entry(o).or_default() += c;
        }
        if let (Some(hit), true) = (row.hit, census.all_solvable) {
            census.all_solvable = false;
            census.first_nonsolvable = Some(hit.iter().map(|g| g.to_string()).collect());
        }
    }
    census.orders = orders.into_iter().map(|(order, count)| OrderCount { order, count }).collect();
    Ok(census)
}

/// One odd involution class of `S_n` in the triple-conjugate census.
#[derive(Clone, Debug, Serialize)]
pub struct ClassCensus {
    /// Number of 2-cycles.
    pub transpositions: usize,
    pub census: Census,
}

/// Triple sweeps over each odd involution class `(12)(34)…(2k−1,2k)`, `k` odd.
pub fn symmetric_involution_census(n: usize) -> Result<Vec<ClassCensus>> {
    let g = symmetric(n);
    (1..=n / 2)
        .filter(|k| k % 2 == 1)
        .map(|k| {
            let images: Vec<usize> = (0..n).map(|i| if i < 2 * k { i ^ 1 } else { i }).collect();
            let x = Permutation::from_images(images)?;
            let census = exhaustive_all_solvable(&g, &x, Mode::TripleConjugate, &SweepOptions::default())?;
            Ok(ClassCensus { transpositions: k, census })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::named::alternating;
    use crate::perm::parse_cycles;

    #[test]
    fn s5_transpositions() {
        let g = symmetric(5);
        let x = parse_cycles("(1,2)", 5).unwrap();
        let c = exhaustive_all_solvable(&g, &x, Mode::TripleConjugate, &SweepOptions::default()).unwrap();
        assert!(c.all_solvable);
        assert_eq!((c.class_size, c.tuples_checked), (10, 100));
        assert_eq!(c.orders.iter().map(|o| o.count).sum::<u64>(), 100);
        // ⟨(12), y, z⟩ for transpositions is a Young subgroup: S₂, S₃, S₂×S₂, S₄, S₃×S₂…
        assert!(c.orders.iter().all(|o| [2u32, 4, 6, 8, 12, 24].contains(&(o.order.to_string().parse().unwrap()))));
    }

    #[test]
    fn pair_and_involution_modes() {
        let g = alternating(5);
        let x = parse_cycles("(1,2,3)", 5).unwrap();
        let c = exhaustive_all_solvable(&g, &x, Mode::PairConjugate, &SweepOptions::default()).unwrap();
        assert_eq!(c.class_size, 20);
        assert!(!c.all_solvable);
        let c = exhaustive_all_solvable(&g, &x, Mode::InvolutionPartner, &SweepOptions::default()).unwrap();
        assert_eq!(c.class_size, 15);
        assert!(!c.all_solvable);
    }

    #[test]
    fn cap_enforced() {
        let g = symmetric(8);
        let x = parse_cycles("(1,2)(3,4)(5,6)", 8).unwrap();
        let opts = SweepOptions { cap: 100, shuffle: None };
        assert!(matches!(exhaustive_all_solvable(&g, &x, Mode::TripleConjugate, &opts), Err(Error::ClassCap(100))));
    }

    #[test]
    fn order_independent() {
        let g = symmetric(6);
        let x = parse_cycles("(1,2)(3,4)(5,6)", 6).unwrap();
        let base = exhaustive_all_solvable(&g, &x, Mode::TripleConjugate, &SweepOptions::default()).unwrap();
        assert!(base.all_solvable);
        for seed in 0..3 {
            let c = exhaustive_all_solvable(&g, &x, Mode::TripleConjugate, &SweepOptions { shuffle: Some(seed), ..Default::default() }).unwrap();
            assert!(c.all_solvable);
            assert_eq!(c.orders, base.orders);
        }
    }
}
