//! Generator constructions behind `data/catalog.json`.
//!
//! Each family starts from a natural generating set (root elements,
//! transvections or reflections for the stored form). A greedy pass keeps only
//! generators that enlarge the group, then a seeded product-replacement walk
//! looks for two random elements that already generate; the result is verified
//! against the order formula before it is written out.

use super::action::MatrixAction;
use super::catalog::{field_order, CatalogRecord, MatGroupSpec, PermActionKind, SimpleRef};
use super::field::{Elt, Field};
use super::forms::{invariant_bilinear_forms, Form, FormKind};
use super::matrix::FFMatrix;
use super::sample::ProductReplacement;
use crate::bounds::matrix_group_order;
use crate::error::{Error, Result};
use crate::perm::DEGREE_CAP;

/// `I + a·cᵀr` for a column vector `c` and row vector `r`.
fn rank_one(f: &'static Field, c: &[Elt], r: &[Elt], a: Elt) -> FFMatrix {
    let d = c.len();
    let mut m = FFMatrix::identity(f, d);
    for i in 0..d {
        for j in 0..d {
            let x = f.mul(a, f.mul(c[i], r[j]));
            m.set(i, j, f.add(m.get(i, j), x));
        }
    }
    m
}

fn unit(d: usize, i: usize) -> Vec<Elt> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

fn sum_units(d: usize, i: usize, j: usize) -> Vec<Elt> {
    let mut v = unit(d, i);
    v[j] = 1;
    v
}

fn root_elements(f: &'static Field, d: usize) -> Vec<FFMatrix> {
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                for &a in &f.prime_basis() {
                    let mut m = FFMatrix::identity(f, d);
                    m.set(i, j, a);
                    out.push(m);
                }
            }
        }
    }
    out
}

fn first_diag(f: &'static Field, d: usize, a: Elt) -> FFMatrix {
    let mut e = vec![1; d];
    e[0] = a;
    FFMatrix::diag(f, &e)
}

pub fn symplectic_form(f: &'static Field, d: usize) -> FFMatrix {
    let mut b = FFMatrix::zero(f, d);
    for i in 0..d {
        b.set(i, d - 1 - i, if i < d / 2 { 1 } else { f.neg(1) });
    }
    b
}

fn symplectic_transvections(f: &'static Field, b: &FFMatrix) -> Vec<FFMatrix> {
    let d = b.dim();
    let mut ws: Vec<Vec<Elt>> = (0..d).map(|i| unit(d, i)).collect();
    for i in 0..d {
        for j in i + 1..d {
            ws.push(sum_units(d, i, j));
        }
    }
    let mut out = Vec::new();
    for w in ws {
        let c = b.apply(&w); // B is antisymmetric, so wBᵀ = −Bwᵀ; either column works.
        for &a in &f.prime_basis() {
            out.push(rank_one(f, &c, &w, a));
        }
    }
    out
}

fn unitary_transvections(f: &'static Field, d: usize) -> Result<Vec<FFMatrix>> {
    let form = Form::new(FormKind::Hermitian, FFMatrix::identity(f, d));
    let traceless: Vec<Elt> = (1..f.q() as Elt).filter(|&a| f.add(a, f.twist(a)) == 0).collect();
    let mut out = Vec::new();
    for w in MatrixAction::projective(f, d)?.points() {
        if form.value(w) != 0 {
            continue;
        }
        let c: Vec<Elt> = w.iter().map(|&x| f.twist(x)).collect();
        for &a in &traceless {
            out.push(rank_one(f, &c, w, a));
        }
    }
    Ok(out)
}

fn orthogonal_reflections(f: &'static Field, form: &Form) -> Result<Vec<FFMatrix>> {
    let d = form.gram.dim();
    let polar = form.bilinear();
    let mut out = Vec::new();
    for v in MatrixAction::projective(f, d)?.points() {
        let qv = form.value(v);
        if qv == 0 {
            continue;
        }
        let m = match form.kind {
            // u ↦ u − 2B(u,v)/B(v,v) v
            FormKind::Bilinear => {
                let k = f.neg(f.mul(f.from_int(2), f.inv(qv).unwrap()));
                rank_one(f, &polar.apply(v), v, k)
            }
            // u ↦ u + B(u,v)/Q(v) v
            _ => rank_one(f, &polar.apply(v), v, f.inv(qv).unwrap()),
        };
        out.push(m);
    }
    Ok(out)
}

fn quadratic_form(f: &'static Field, d: usize, minus: bool) -> Form {
    let mut q = FFMatrix::zero(f, d);
    for i in (0..d).step_by(2) {
        q.set(i, i + 1, 1);
    }
    if minus {
        // x_{d−1}² + x_{d−1}x_d + x_d² is anisotropic over GF(2).
        q.set(d - 2, d - 2, 1);
        q.set(d - 1, d - 1, 1);
    }
    Form::new(FormKind::Quadratic, q)
}

/// Generators of the Suzuki group `Sz(8)` inside `Sp(4,8)`: a root element,
/// the antidiagonal Weyl element and a torus element.
fn suzuki_generators(f: &'static Field) -> Vec<FFMatrix> {
    let theta = |x: Elt| f.pow(x, 4);
    let (a, b): (Elt, Elt) = (1, 0);
    let s = FFMatrix::from_rows(
        f,
        &[
            vec![1, 0, 0, 0],
            vec![a as u64, 1, 0, 0],
            vec![b as u64, theta(a) as u64, 1, 0],
            vec![
                f.add(f.add(f.mul(f.mul(a, a), theta(a)), f.mul(a, b)), theta(b)) as u64,
                f.add(f.mul(a, theta(a)), b) as u64,
                a as u64,
                1,
            ],
        ],
    )
    .expect("valid");
    let mut t = FFMatrix::zero(f, 4);
    for i in 0..4 {
        t.set(i, 3 - i, 1);
    }
    let k = f.primitive();
    let ki = f.inv(k).unwrap();
    let dm = FFMatrix::diag(f, &[f.pow(k, 3), f.pow(k, 2), f.pow(ki, 2), f.pow(ki, 3)]);
    vec![s, t, dm]
}

struct Draft {
    name: String,
    aliases: Vec<String>,
    family: &'static str,
    d: usize,
    q: usize,
    natural: Vec<FFMatrix>,
    keep: Vec<FFMatrix>,
    form: Option<Form>,
    perm_action: PermActionKind,
    simple: (&'static str, u32),
    reduce: bool,
}

fn draft(family: &'static str, d: usize, q: usize) -> Result<Draft> {
    let f = Field::get(field_order(family, q))?;
    let name = format!("{family}({d},{q})");
    let mut dr = Draft {
        name,
        aliases: vec![],
        family,
        d,
        q,
        natural: vec![],
        keep: vec![],
        form: None,
        perm_action: PermActionKind::Projective,
        simple: ("PSL", d as u32),
        reduce: true,
    };
    let prim = f.primitive();
    match family {
        "SL" => {
            dr.natural = root_elements(f, d);
            dr.aliases.push(format!("PSL({d},{q})"));
        }
        "GL" => {
            dr.natural = root_elements(f, d);
            dr.natural.insert(0, first_diag(f, d, prim));
            dr.aliases.push(format!("PGL({d},{q})"));
        }
        "Sp" | "GSp" => {
            let b = symplectic_form(f, d);
            dr.natural = symplectic_transvections(f, &b);
            if family == "GSp" {
                let m = d / 2;
                let e: Vec<Elt> = (0..d).map(|i| if i < m { prim } else { 1 }).collect();
                dr.natural.insert(0, FFMatrix::diag(f, &e));
            } else {
                dr.aliases.push(format!("PSp({d},{q})"));
            }
            dr.form = Some(Form::new(FormKind::Bilinear, b));
            dr.simple = ("PSp", d as u32);
        }
        "SU" | "GU" => {
            dr.natural = unitary_transvections(f, d)?;
            dr.form = Some(Form::new(FormKind::Hermitian, FFMatrix::identity(f, d)));
            dr.simple = ("PSU", d as u32);
            if family == "GU" {
                let zeta = f.pow(prim, (q - 1) as u64);
                dr.natural.insert(0, first_diag(f, d, zeta));
                dr.keep.push(FFMatrix::scalar(f, d, zeta));
            } else {
                dr.aliases.push(format!("PSU({d},{q})"));
            }
        }
        "GO" => {
            let form = Form::new(FormKind::Bilinear, FFMatrix::identity(f, d));
            dr.natural = orthogonal_reflections(f, &form)?;
            dr.form = Some(form);
            dr.simple = ("POmega", d as u32);
            dr.aliases.push(format!("PGO({d},{q})"));
        }
        "GO+" | "GO-" | "Omega+" | "Omega-" => {
            let minus = family.ends_with('-');
            let form = quadratic_form(f, d, minus);
            let refl = orthogonal_reflections(f, &form)?;
            dr.natural = if family.starts_with("Omega") {
                refl[1..].iter().map(|r| refl[0].mul(r)).collect()
            } else {
                refl
            };
            dr.form = Some(form);
            dr.simple = (if minus { "POmega-" } else { "POmega+" }, d as u32);
            if family.starts_with("Omega") {
                dr.aliases.push(format!("P{family}({d},{q})"));
            }
        }
        "Sz" => {
            let gens = suzuki_generators(f);
            let forms = invariant_bilinear_forms(&gens);
            if forms.len() != 1 {
                return Err(Error::Catalog { name: dr.name, reason: "no unique invariant form".into() });
            }
            dr.form = Some(Form::new(FormKind::Bilinear, forms[0].clone()));
            dr.natural = gens;
            dr.name = format!("Sz({q})");
            dr.aliases.push(format!("2B2({q})"));
            dr.perm_action = PermActionKind::SmallestOrbit;
            dr.simple = ("Sz", 0);
            dr.reduce = false;
        }
        _ => return Err(Error::UnsupportedFamily(family.into())),
    }
    Ok(dr)
}

fn finish(dr: Draft, seed: u64) -> Result<CatalogRecord> {
    let f = Field::get(field_order(dr.family, dr.q))?;
    let expected = matrix_group_order(dr.family, dr.d as u32, dr.q as u64)?;
    let mut spec = MatGroupSpec {
        name: dr.name.clone(),
        aliases: dr.aliases.clone(),
        family: dr.family.into(),
        d: dr.d,
        q: dr.q,
        field: f,
        generators: dr.keep.clone(),
        form: dr.form.clone(),
        expected_order: expected.clone(),
        perm_action: dr.perm_action,
        simple: SimpleRef { family: dr.simple.0.into(), n: dr.simple.1, q: dr.q as u64 },
    };
    let bad = |reason: String| Error::Catalog { name: dr.name.clone(), reason };
    for (i, m) in dr.natural.iter().chain(&dr.keep).enumerate() {
        if !spec.family_member(m) {
            return Err(bad(format!("constructed generator {i} is not in the family")));
        }
    }
    let nvec = f.q().pow(dr.d as u32) - 1;
    let (action, target) = if nvec <= DEGREE_CAP {
        (MatrixAction::vectors(f, dr.d)?, expected.clone())
    } else {
        let k = spec.admissible_scalars().len();
        (MatrixAction::projective(f, dr.d)?, &expected / num_bigint::BigUint::from(k))
    };
    let mut g = action.group(&dr.keep)?;
    let mut selected = Vec::new();
    for m in &dr.natural {
        if *g.order() == target {
            break;
        }
        if g.extend(action.perm_of(m))? {
            selected.push(m.clone());
        }
    }
    if *g.order() != target {
        return Err(bad(format!("natural generators give order {}, want {target}", g.order())));
    }
    let mut gens = selected.clone();
    if dr.reduce && selected.len() > 2 {
        let mut pr = ProductReplacement::new(&selected, FFMatrix::mul, seed);
        for _ in 0..200 {
            let a = pr.next_element();
            let b = pr.next_element();
            let mut pair = dr.keep.clone();
            pair.extend([a.clone(), b.clone()]);
            if *action.group(&pair)?.order() == target {
                gens = vec![a, b];
                break;
            }
        }
    }
    let mut all = dr.keep.clone();
    all.extend(gens);
    spec.generators = all;
    spec.verify()?;
    Ok(spec.to_record())
}

/// The `(family, d, q)` triples shipped in the catalog.
pub const CATALOG_TRIPLES: &[(&str, usize, usize)] = &[
    ("SL", 2, 4),
    ("SL", 2, 5),
    ("SL", 2, 7),
    ("SL", 2, 8),
    ("SL", 2, 9),
    ("SL", 2, 11),
    ("SL", 2, 13),
    ("SL", 2, 16),
    ("SL", 3, 3),
    ("SU", 3, 3),
    ("Sp", 4, 3),
    ("SU", 4, 2),
    ("Sp", 6, 2),
    ("Sp", 4, 4),
    ("GO", 5, 3),
    ("GO+", 8, 2),
    ("GO-", 8, 2),
    ("Omega+", 8, 2),
    ("Sz", 4, 8),
    ("GL", 3, 3),
    ("GL", 4, 3),
    ("SL", 4, 3),
    ("GSp", 4, 3),
    ("GU", 4, 3),
];

pub fn build_record(family: &'static str, d: usize, q: usize) -> Result<CatalogRecord> {
    finish(draft(family, d, q)?, 0xBAE2 ^ ((d as u64) << 8) ^ q as u64)
}

/// Builds and verifies every catalog entry.
pub fn build_catalog() -> Result<Vec<CatalogRecord>> {
    CATALOG_TRIPLES.iter().map(|&(fam, d, q)| build_record(fam, d, q)).collect()
}
