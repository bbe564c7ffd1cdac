use std::collections::HashSet;

use num_bigint::BigUint;
use nonsolv_core::bounds::order_poly_eval;
use nonsolv_core::ffmat::builders::build_catalog;
use nonsolv_core::ffmat::{classical_group, Catalog, FFMatrix, FormKind, MatrixAction, ProductReplacement};
use nonsolv_core::perm::parse_cycles;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn catalog() -> Catalog {
    Catalog::load_default().expect("shipped catalog loads")
}

#[test]
fn every_entry_verifies() {
    for spec in catalog().specs().unwrap() {
        let order = spec.verify().unwrap_or_else(|e| panic!("{e}"));
        assert_eq!(order, spec.expected_order, "{}", spec.name);
    }
}

#[test]
fn shipped_catalog_matches_builders() {
    let built = build_catalog().unwrap();
    assert_eq!(built, catalog().groups);
}

#[test]
fn forms_preserved_exactly() {
    for spec in catalog().specs().unwrap() {
        let Some(form) = &spec.form else { continue };
        let f = spec.field;
        for g in &spec.generators {
            let gram = &form.gram;
            let lhs = match form.kind {
                FormKind::Bilinear => g.mul(gram).mul(&g.transpose()),
                FormKind::Hermitian => g.mul(gram).mul(&g.map(|x| f.twist(x)).transpose()),
                FormKind::Quadratic => {
                    // Compare the quadratic form values on every vector instead.
                    let act = MatrixAction::vectors(f, spec.d).unwrap();
                    for v in act.points() {
                        assert_eq!(form.value(&g.apply(v)), form.value(v), "{}", spec.name);
                    }
                    continue;
                }
            };
            if spec.family == "GSp" {
                assert!(form.similitude_multiplier(g).is_some());
            } else {
                assert_eq!(&lhs, gram, "{}", spec.name);
            }
        }
    }
}

#[test]
fn tampered_generator_rejected() {
    let cat = catalog();
    let mut rec = cat.groups.iter().find(|r| r.name == "Sp(4,3)").unwrap().clone();
    rec.generators[0][0][0] = (rec.generators[0][0][0] + 1) % 3;
    let spec = nonsolv_core::ffmat::MatGroupSpec::from_record(&rec).unwrap();
    assert!(spec.verify().is_err());
    rec.field_modulus = vec![2, 1];
    assert!(nonsolv_core::ffmat::MatGroupSpec::from_record(&rec).is_err());
}

#[test]
fn classical_group_examples() {
    assert_eq!(classical_group("Sp", 4, 3).unwrap().expected_order, BigUint::from(51840u32));
    assert_eq!(classical_group("SL", 3, 3).unwrap().expected_order, BigUint::from(5616u32));
    assert_eq!(classical_group("SU", 4, 2).unwrap().expected_order, BigUint::from(25920u32));
    assert!(classical_group("SL", 7, 2).is_err());
}

#[test]
fn projective_images() {
    let cat = catalog();
    let cases: &[(&str, usize, u64)] = &[
        ("SL(3,3)", 13, 5616),
        ("Sp(6,2)", 63, 1451520),
        ("SU(4,2)", 85, 25920),
        ("Sp(4,3)", 40, 25920),
        ("GO(5,3)", 121, 51840),
        ("Omega+(8,2)", 255, 174182400),
        ("Sz(8)", 65, 29120),
    ];
    for &(name, degree, order) in cases {
        let g = cat.find(name).unwrap().realize().unwrap();
        assert_eq!(g.perm.degree(), degree, "{name}");
        assert_eq!(g.image_order(), &BigUint::from(order), "{name}");
        let scalars = g.spec.admissible_scalars().len() as u64;
        if g.spec.perm_action == nonsolv_core::ffmat::PermActionKind::Projective {
            assert_eq!(g.kernel_order(), Some(scalars), "{name}");
        }
    }
}

#[test]
fn perfect_core_matches_order_polynomial() {
    for spec in catalog().specs().unwrap() {
        let g = spec.realize().unwrap();
        let core = g.perm.perfect_core_order();
        let want = order_poly_eval(&spec.simple.family, spec.simple.n, spec.simple.q).unwrap();
        assert_eq!(core, want, "{}", spec.name);
    }
}

/// Independent oracle: close the generator matrices under multiplication.
fn matrix_closure(gens: &[FFMatrix], cap: usize) -> Option<usize> {
    let id = FFMatrix::identity(gens[0].field(), gens[0].dim());
    let mut seen = HashSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(g) = stack.pop() {
        for s in gens {
            let h = g.mul(s);
            if seen.insert(h.clone()) {
                if seen.len() > cap {
                    return None;
                }
                stack.push(h);
            }
        }
    }
    Some(seen.len())
}

#[test]
fn small_groups_match_closure() {
    let mut checked = 0;
    for spec in catalog().specs().unwrap() {
        if spec.expected_order > BigUint::from(5000u32) {
            continue;
        }
        let n = matrix_closure(&spec.generators, 5000).unwrap();
        assert_eq!(BigUint::from(n), spec.compute_order().unwrap(), "{}", spec.name);
        checked += 1;
    }
    assert!(checked >= 6);
}

#[test]
fn projectivize_is_a_homomorphism() {
    for spec in catalog().specs().unwrap() {
        let act = spec.perm_action().unwrap();
        let mut pr = ProductReplacement::new(&spec.generators, FFMatrix::mul, 99);
        let pairs = if act.degree() > 500 { 100 } else { 1000 };
        for _ in 0..pairs {
            let a = pr.next_element();
            let b = pr.next_element();
            assert_eq!(act.perm_of(&a.mul(&b)), act.perm_of(&a).mul(&act.perm_of(&b)), "{}", spec.name);
        }
    }
}

#[test]
fn involution_counts_and_classes() {
    let cat = catalog();
    let psl28 = cat.find("PSL(2,8)").unwrap().realize().unwrap();
    assert_eq!(psl28.perm.involution_count().unwrap(), BigUint::from(63u32));
    let sz = cat.find("Sz(8)").unwrap().realize().unwrap();
    assert_eq!(sz.perm.involution_count().unwrap(), BigUint::from(455u32));
    let psl27 = cat.find("PSL(2,7)").unwrap().realize().unwrap();
    assert_eq!(psl27.perm.degree(), 8);
    let classes = psl27.perm.involution_classes().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0].size, BigUint::from(21u32));
    let brute = psl27.perm.elements().iter().filter(|g| g.is_involution()).count();
    assert_eq!(brute, 21);
}

#[test]
fn random_elements_are_members() {
    let g = catalog().find("Sp(4,3)").unwrap().realize().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let x = g.perm.random_element(&mut rng);
        assert!(g.perm.contains(&x));
    }
    assert!(!g.perm.contains(&parse_cycles("(1,2)", 40).unwrap()));
}
