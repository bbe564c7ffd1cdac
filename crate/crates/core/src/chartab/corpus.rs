//! A fixed corpus of small groups (order ≤ 2000), solvable and not, for
//! checking computed character tables against direct group computations.

use crate::ffmat::{Elt, FFMatrix, Field, MatrixAction};
use crate::perm::named::{alternating, cyclic, dihedral, direct_product, symmetric, wreath_product};
use crate::perm::{PermGroup, Permutation};

pub struct CorpusGroup {
    pub name: &'static str,
    pub order: u64,
    pub group: PermGroup,
}

fn mat(q: usize, rows: &[&[u64]]) -> FFMatrix {
    let f = Field::get(q).expect("supported field");
    FFMatrix::from_rows(f, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).expect("valid matrix")
}

/// Generators of SL(2,q): upper transvections by 1 and by a primitive element, lower by 1.
fn sl2_gens(q: usize) -> Vec<FFMatrix> {
    let prim = Field::get(q).unwrap().primitive() as u64;
    vec![mat(q, &[&[1, 1], &[0, 1]]), mat(q, &[&[1, prim], &[0, 1]]), mat(q, &[&[1, 0], &[1, 1]])]
}

fn diag_prim(q: usize) -> FFMatrix {
    let prim = Field::get(q).unwrap().primitive() as u64;
    mat(q, &[&[prim, 0], &[0, 1]])
}

fn linear(q: usize, d: usize, projective: bool, gens: &[FFMatrix]) -> PermGroup {
    let f = Field::get(q).unwrap();
    let act = if projective { MatrixAction::projective(f, d) } else { MatrixAction::vectors(f, d) }.unwrap();
    act.group(gens).unwrap()
}

/// Projective line action of `gens` together with `v ↦ (v·m)^φ` (φ the Frobenius map).
fn projective_semilinear(q: usize, gens: &[FFMatrix], m: &FFMatrix) -> PermGroup {
    let f = Field::get(q).unwrap();
    let act = MatrixAction::projective(f, 2).unwrap();
    let mut perms: Vec<Permutation> = gens.iter().map(|g| act.perm_of(g)).collect();
    let img = act
        .points()
        .iter()
        .map(|v| {
            let w: Vec<Elt> = m.apply(v).into_iter().map(|x| f.frobenius(x)).collect();
            act.point_index(&w).unwrap()
        })
        .collect();
    perms.push(Permutation::from_images(img).unwrap());
    PermGroup::with_degree(act.degree(), perms).unwrap()
}

/// Affine group on GF(q)^d: translations plus the given linear maps, optionally Frobenius.
fn affine(q: usize, d: usize, lin: &[FFMatrix], frobenius: bool) -> PermGroup {
    let f = Field::get(q).unwrap();
    let n = q.pow(d as u32);
    let vec_of = |mut c: usize| -> Vec<Elt> {
        let mut v = vec![0 as Elt; d];
        for i in (0..d).rev() {
            v[i] = (c % q) as Elt;
            c /= q;
        }
        v
    };
    let code = |v: &[Elt]| v.iter().fold(0usize, |a, &x| a * q + x as usize);
    let from_map = |g: &dyn Fn(Vec<Elt>) -> Vec<Elt>| {
        Permutation::from_images((0..n).map(|c| code(&g(vec_of(c)))).collect()).unwrap()
    };
    let mut gens: Vec<Permutation> = lin.iter().map(|m| from_map(&|v| m.apply(&v))).collect();
    for i in 0..d {
        gens.push(from_map(&|mut v| {
            v[i] = f.add(v[i], 1);
            v
        }));
    }
    if frobenius {
        gens.push(from_map(&|v| v.into_iter().map(|x| f.frobenius(x)).collect()));
    }
    PermGroup::with_degree(n, gens).unwrap()
}

fn scalar1(q: usize, power: u64) -> FFMatrix {
    let f = Field::get(q).unwrap();
    FFMatrix::scalar(f, 1, f.pow(f.primitive(), power))
}

fn q8() -> PermGroup {
    linear(3, 2, false, &[mat(3, &[&[0, 1], &[2, 0]]), mat(3, &[&[1, 1], &[1, 2]])])
}

/// The corpus, in a fixed order.
pub fn corpus() -> Vec<CorpusGroup> {
    let mut out = Vec::new();
    let mut add = |name: &'static str, order: u64, group: PermGroup| out.push(CorpusGroup { name, order, group });

    for (name, n) in [
        ("C2", 2),
        ("C3", 3),
        ("C4", 4),
        ("C5", 5),
        ("C6", 6),
        ("C7", 7),
        ("C8", 8),
        ("C9", 9),
        ("C10", 10),
        ("C12", 12),
        ("C15", 15),
    ] {
        add(name, n as u64, cyclic(n));
    }
    for (name, n) in [
        ("D6", 3),
        ("D8", 4),
        ("D10", 5),
        ("D12", 6),
        ("D14", 7),
        ("D16", 8),
        ("D18", 9),
        ("D20", 10),
        ("D24", 12),
    ] {
        add(name, 2 * n as u64, dihedral(n));
    }
    add("A4", 12, alternating(4));
    add("S4", 24, symmetric(4));
    add("A5", 60, alternating(5));
    add("S5", 120, symmetric(5));
    add("A6", 360, alternating(6));
    add("S6", 720, symmetric(6));
    add("Q8", 8, q8());

    let (c2, c3, s3) = (cyclic(2), cyclic(3), symmetric(3));
    let (a4, s4, a5, s5) = (alternating(4), symmetric(4), alternating(5), symmetric(5));
    add("C2xC2", 4, direct_product(&c2, &c2));
    add("C3xC3", 9, direct_product(&c3, &c3));
    add("C2xC2xC2", 8, direct_product(&direct_product(&c2, &c2), &c2));
    add("C2xS3", 12, direct_product(&c2, &s3));
    add("S3xS3", 36, direct_product(&s3, &s3));
    add("C2xA4", 24, direct_product(&c2, &a4));
    add("C2xS4", 48, direct_product(&c2, &s4));
    add("C2xA5", 120, direct_product(&c2, &a5));
    add("C3xA5", 180, direct_product(&c3, &a5));
    add("S3xA5", 360, direct_product(&s3, &a5));
    add("A4xA5", 720, direct_product(&a4, &a5));
    add("C2xS5", 240, direct_product(&c2, &s5));
    add("Q8xC3", 24, direct_product(&q8(), &c3));

    add("C3wrC2", 18, wreath_product(&c3, &c2));
    add("C5wrC2", 50, wreath_product(&cyclic(5), &c2));
    add("C2wrC3", 24, wreath_product(&c2, &c3));
    add("S3wrC2", 72, wreath_product(&s3, &c2));
    add("A4wrC2", 288, wreath_product(&a4, &c2));
    add("S4wrC2", 1152, wreath_product(&s4, &c2));
    add("S3wrC3", 648, wreath_product(&s3, &c3));

    add("SL(2,3)", 24, linear(3, 2, false, &sl2_gens(3)));
    let mut gl23 = sl2_gens(3);
    gl23.push(diag_prim(3));
    add("GL(2,3)", 48, linear(3, 2, false, &gl23));
    add("SL(2,5)", 120, linear(5, 2, false, &sl2_gens(5)));
    add("SL(2,7)", 336, linear(7, 2, false, &sl2_gens(7)));
    add("PSL(2,7)", 168, linear(7, 2, true, &sl2_gens(7)));
    let mut pgl27 = sl2_gens(7);
    pgl27.push(diag_prim(7));
    add("PGL(2,7)", 336, linear(7, 2, true, &pgl27));
    add("PSL(2,8)", 504, linear(8, 2, true, &sl2_gens(8)));
    add("PSL(2,11)", 660, linear(11, 2, true, &sl2_gens(11)));
    add("PSL(2,13)", 1092, linear(13, 2, true, &sl2_gens(13)));
    let mut pgl29 = sl2_gens(9);
    pgl29.push(diag_prim(9));
    add("PGL(2,9)", 720, linear(9, 2, true, &pgl29));
    add("M10", 720, projective_semilinear(9, &sl2_gens(9), &diag_prim(9)));
    add("PGammaL(2,8)", 1512, projective_semilinear(8, &sl2_gens(8), &mat(8, &[&[1, 0], &[0, 1]])));

    add("AGL(1,5)", 20, affine(5, 1, &[scalar1(5, 1)], false));
    add("AGL(1,7)", 42, affine(7, 1, &[scalar1(7, 1)], false));
    add("7:3", 21, affine(7, 1, &[scalar1(7, 2)], false));
    add("AGL(1,8)", 56, affine(8, 1, &[scalar1(8, 1)], false));
    add("AGL(1,9)", 72, affine(9, 1, &[scalar1(9, 1)], false));
    add("AGL(1,11)", 110, affine(11, 1, &[scalar1(11, 1)], false));
    add("11:5", 55, affine(11, 1, &[scalar1(11, 2)], false));
    add("13:3", 39, affine(13, 1, &[scalar1(13, 4)], false));
    add("AGL(1,13)", 156, affine(13, 1, &[scalar1(13, 1)], false));
    add("AGammaL(1,8)", 168, affine(8, 1, &[scalar1(8, 1)], true));
    add("AGammaL(1,9)", 144, affine(9, 1, &[scalar1(9, 1)], true));
    add("AGL(1,16)", 240, affine(16, 1, &[scalar1(16, 1)], false));
    add("ASL(2,3)", 216, affine(3, 2, &sl2_gens(3), false));
    let mut agl23 = sl2_gens(3);
    agl23.push(diag_prim(3));
    add("AGL(2,3)", 432, affine(3, 2, &agl23, false));
    add("ASL(2,4)", 960, affine(4, 2, &sl2_gens(4), false));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_orders() {
        let c = corpus();
        assert!(c.len() >= 50);
        for g in &c {
            assert_eq!(g.group.order_u64(), Some(g.order), "{}", g.name);
            assert!(g.order <= 2000);
        }
        let nonsolvable = c.iter().filter(|g| !g.group.is_solvable()).count();
        assert!(nonsolvable >= 15 && c.len() - nonsolvable >= 30, "{nonsolvable} nonsolvable of {}", c.len());
    }
}
