use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;
use serde::Serialize;

use crate::bigser;
use crate::perm::PermGroup;

/// Random `(a, b)` draws spent looking for a coprime triple.
pub const THOMPSON_DRAWS: u32 = 1000;

/// Evidence about the solvability of a generated subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub solvable: bool,
    /// `|H|, |H'|, …` down to the trivial group or the perfect core.
    #[serde(serialize_with = "ser_orders")]
    pub derived_orders: Vec<BigUint>,
    /// `1` for solvable groups.
    #[serde(with = "bigser::biguint")]
    pub perfect_core_order: BigUint,
    /// Orders of `a, b, c = (ab)⁻¹`, pairwise coprime and nontrivial.
    pub thompson_triple: Option<[u64; 3]>,
}

fn ser_orders<S: serde::Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|n| n.to_string()))
}

/// Derived-series evidence, plus a coprime triple from the perfect core when
/// one turns up within [`THOMPSON_DRAWS`] random draws.
pub fn nonsolvable_certificate<R: Rng + ?Sized>(h: &PermGroup, rng: &mut R) -> Certificate {
    let series = h.derived_series();
    let last = series.last().expect("series starts with H");
    let derived_orders: Vec<BigUint> = series.iter().map(|g| g.order().clone()).collect();
    if last.is_trivial() {
        return Certificate { solvable: true, derived_orders, perfect_core_order: BigUint::one(), thompson_triple: None };
    }
    let mut thompson_triple = None;
    for _ in 0..THOMPSON_DRAWS {
        let a = last.random_element(rng);
        let b = last.random_element(rng);
        let c = a.mul(&b).inverse();
        let o = [&a, &b, &c].map(|g| g.order_u64().unwrap_or(0));
        if o.iter().all(|&k| k > 1) && o[0].gcd(&o[1]) == 1 && o[0].gcd(&o[2]) == 1 && o[1].gcd(&o[2]) == 1 {
            thompson_triple = Some(o);
            break;
        }
    }
    Certificate { solvable: false, derived_orders, perfect_core_order: last.order().clone(), thompson_triple }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::named::{alternating, symmetric};
    use crate::perm::parse_cycles;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = nonsolvable_certificate(&alternating(5), &mut rng);
        assert!(!c.solvable);
        assert_eq!(c.perfect_core_order, BigUint::from(60u32));
        let mut t = c.thompson_triple.unwrap();
        t.sort();
        assert_eq!(t, [2, 3, 5]);

        let c = nonsolvable_certificate(&symmetric(4), &mut rng);
        assert!(c.solvable && c.thompson_triple.is_none());
        assert_eq!(c.derived_orders.iter().map(|n| n.to_string()).collect::<Vec<_>>(), ["24", "12", "4", "1"]);

        let p = |s: &str| parse_cycles(s, 8).unwrap();
        let x = p("(1,2)(3,4)(5,6)(7,8)");
        let gens = vec![x.clone(), x.conjugate_by(&p("(1,4,3)(2,8,5,6,7)")), x.conjugate_by(&p("(1,3)(2,6,5,8,7,4)"))];
        let l27 = PermGroup::new(gens).unwrap();
        let c = nonsolvable_certificate(&l27, &mut rng);
        assert_eq!(c.perfect_core_order, BigUint::from(168u32));
    }
}
