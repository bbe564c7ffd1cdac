use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigUint;
use nonsolv_core::chartab::corpus::corpus;
use nonsolv_core::chartab::{character_table, load_named, CharacterTable, ClassStructure, TableDoc};
use nonsolv_core::perm::named;

/// Tables agree up to reordering rows and columns (columns matched within equal (order, size)).
fn same_table(a: &CharacterTable, b: &CharacterTable) -> bool {
    if a.n_classes() != b.n_classes() || a.order() != b.order() {
        return false;
    }
    let r = a.n_classes();
    let key = |t: &CharacterTable, k: usize| (t.classes()[k].element_order, t.classes()[k].size.clone());
    let e = a.exponent().max(b.exponent());
    let rows = |t: &CharacterTable, perm: &[usize]| -> BTreeSet<Vec<Vec<i128>>> {
        t.characters()
            .iter()
            .map(|row| perm.iter().map(|&k| row[k].embed(e / row[k].n() * row[k].n()).coeffs().to_vec()).collect())
            .collect()
    };
    let target = rows(b, &(0..r).collect::<Vec<_>>());
    // Enumerate column bijections a → b respecting keys.
    fn search(
        k: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ok: &dyn Fn(usize, usize) -> bool,
        done: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if k == perm.len() {
            return done(perm);
        }
        for j in 0..perm.len() {
            if !used[j] && ok(k, j) {
                used[j] = true;
                perm[k] = j;
                if search(k + 1, perm, used, ok, done) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    let mut perm = vec![0; r];
    let mut used = vec![false; r];
    let ok = |i: usize, j: usize| key(a, j) == key(b, i);
    search(0, &mut perm, &mut used, &ok, &mut |p| rows(a, p) == target)
}

#[test]
fn shipped_tables_load() {
    let c2 = load_named("C2").unwrap();
    assert_eq!(c2.degrees(), vec![1, 1]);
    let a5 = load_named("A5").unwrap();
    let mut d = a5.degrees();
    d.sort();
    assert_eq!(d, vec![1, 3, 3, 4, 5]);
    assert_eq!(a5.exponent(), 30);
    for name in ["S4", "C6"] {
        let t = load_named(name).unwrap();
        assert_eq!(t.n_classes(), if name == "S4" { 5 } else { 6 });
    }
}

#[test]
fn shipped_tables_match_computed() {
    for (name, g) in [("A5", named::alternating(5)), ("S4", named::symmetric(4)), ("C6", named::cyclic(6)), ("C2", named::cyclic(2))] {
        let shipped = load_named(name).unwrap();
        let computed = character_table(name, &g).unwrap();
        assert!(same_table(&computed, &shipped), "{name}");
    }
}

#[test]
fn perturbed_tables_rejected() {
    let text = std::fs::read_to_string(nonsolv_core::data_dir().join("tables/a5.json")).unwrap();
    let doc: TableDoc = serde_json::from_str(&text).unwrap();

    let mut flipped = doc.clone();
    flipped.irreducibles[4][1].coeffs[0] = "-1".into();
    let err = flipped.into_table().unwrap_err().to_string();
    assert!(err.contains("orthogonality"), "{err}");

    let mut sizes = doc.clone();
    sizes.classes[1].size = nonsolv_core::chartab::BigNum::Int(14);
    assert!(sizes.into_table().is_err());

    let mut frac = doc.clone();
    frac.irreducibles[0][0].coeffs[0] = "1/2".into();
    assert!(frac.into_table().is_err());

    let mut short = doc;
    short.irreducibles.pop();
    assert!(short.into_table().is_err());
}

#[test]
fn json_roundtrip() {
    for g in corpus().into_iter().take(40) {
        let t = character_table(g.name, &g.group).unwrap();
        let back = CharacterTable::from_json_str(&t.to_json()).unwrap();
        assert!(same_table(&t, &back), "{}", g.name);
    }
}

#[test]
fn a5_structure_constants() {
    let t = load_named("A5").unwrap();
    let one = t.identity_class();
    assert_eq!(t.structure_count(one, one, one).unwrap(), BigUint::from(1u32));
    let (c2, c3, c5) = (t.class_index("2a").unwrap(), t.class_index("3a").unwrap(), t.class_index("5a").unwrap());
    // Each involution pairs with itself only.
    assert_eq!(t.structure_count(c2, c2, one).unwrap(), BigUint::from(15u32));
    assert_eq!(t.structure_count(c3, c3, one).unwrap(), BigUint::from(20u32));
    // Direct count over the 15×20 pairs.
    let g = named::alternating(5);
    let cs = ClassStructure::new(&g).unwrap();
    let brute = cs.brute_force_structure_constants();
    let by_key = |o: u64| (0..cs.n_classes()).find(|&k| cs.orders[k] == o).unwrap();
    let n = t.structure_count(c2, c3, c5).unwrap();
    assert!(n > BigUint::from(0u32));
    assert_eq!(n, BigUint::from(brute[by_key(2)][by_key(3)][by_key(5)]));
}

#[test]
fn thompson_on_shipped_tables() {
    let a5 = load_named("A5").unwrap().thompson_nonsolvable().unwrap();
    let mut o = a5.orders;
    o.sort();
    assert_eq!(o, [2, 3, 5]);
    assert!(load_named("C6").unwrap().thompson_nonsolvable().is_none());
    assert!(load_named("S4").unwrap().thompson_nonsolvable().is_none());
    assert!(load_named("C2").unwrap().thompson_nonsolvable().is_none());
}

#[test]
fn structure_constant_identities() {
    for g in corpus().into_iter().filter(|g| g.order <= 200) {
        let t = character_table(g.name, &g.group).unwrap();
        let r = t.n_classes();
        for a in 0..r {
            for b in 0..r {
                let mut total = BigUint::from(0u32);
                for c in 0..r {
                    let n = t.structure_count(a, b, c).unwrap();
                    assert_eq!(n, t.structure_count(b, a, c).unwrap(), "{} symmetry", g.name);
                    let inv = |k| t.inverse_class(k);
                    assert_eq!(n, t.structure_count(inv(a), inv(b), inv(c)).unwrap(), "{} inversion", g.name);
                    total += n * &t.classes()[c].size;
                }
                assert_eq!(total, &t.classes()[a].size * &t.classes()[b].size, "{}", g.name);
            }
        }
    }
}

#[test]
fn thompson_matches_solvability_on_corpus() {
    let start = Instant::now();
    let groups = corpus();
    assert!(groups.len() >= 50);
    for g in &groups {
        let t = character_table(g.name, &g.group).unwrap();
        assert_eq!(t.order(), &BigUint::from(g.order));
        let triple = t.thompson_nonsolvable();
        assert_eq!(triple.is_some(), !g.group.is_solvable(), "{}", g.name);
        if let Some(tr) = triple {
            let [a, b, c] = tr.orders;
            assert!(num_integer::gcd(a, b) == 1 && num_integer::gcd(b, c) == 1 && num_integer::gcd(a, c) == 1);
        }
    }
    assert!(start.elapsed().as_secs() < 300);
}

#[test]
fn structure_constants_match_pair_counts() {
    for g in corpus().into_iter().filter(|g| g.order <= 400) {
        let cs = ClassStructure::new(&g.group).unwrap();
        let t = nonsolv_core::chartab::dixon::table_from_classes(g.name, &cs).unwrap();
        let brute = cs.brute_force_structure_constants();
        let r = cs.n_classes();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    assert_eq!(t.structure_count(a, b, c).unwrap(), BigUint::from(brute[a][b][c]), "{} ({a},{b},{c})", g.name);
                }
            }
        }
    }
}
