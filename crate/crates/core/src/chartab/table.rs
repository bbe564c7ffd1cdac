use std::path::Path;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::cyclotomic::{from_rationals, CycInt};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub name: String,
    pub size: BigUint,
    pub element_order: u64,
}

/// Irreducible characters of a finite group with exact values in `Z[ζ_n]`,
/// `n` the exponent. Construction validates sizes, degrees and row
/// orthogonality; an invalid table never exists as a value.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    name: String,
    order: BigUint,
    exponent: u32,
    classes: Vec<ClassInfo>,
    chars: Vec<Vec<CycInt>>,
    identity: usize,
    inverse: Vec<usize>,
}

/// Classes `(A, B, C)` of nontrivial elements with pairwise coprime orders
/// and `abc = 1` for some `a ∈ A, b ∈ B, c ∈ C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoprimeTriple {
    pub classes: [usize; 3],
    pub names: [String; 3],
    pub orders: [u64; 3],
    /// Number of `(a, b) ∈ A×B` with `ab = c⁻¹` for a fixed `c ∈ C`.
    #[serde(serialize_with = "ser_big")]
    pub count: BigUint,
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn reject(name: &str, reason: impl Into<String>) -> Error {
    Error::Table { name: name.to_string(), reason: reason.into() }
}

fn small(name: &str, v: &BigUint) -> Result<i128> {
    v.to_i128().filter(|x| *x < 1 << 100).ok_or_else(|| reject(name, format!("{v} too large for exact checks")))
}

impl CharacterTable {
    /// Builds and validates a table. Character values may live in any `Q(ζ_m)`
    /// with `m` dividing the exponent.
    pub fn new(
        name: impl Into<String>,
        order: BigUint,
        exponent: u32,
        classes: Vec<ClassInfo>,
        chars: Vec<Vec<CycInt>>,
    ) -> Result<Self> {
        let name = name.into();
        let r = classes.len();
        if r == 0 {
            return Err(reject(&name, "no classes"));
        }
        if exponent == 0 {
            return Err(reject(&name, "exponent must be positive"));
        }
        if chars.len() != r {
            return Err(reject(&name, format!("{} characters for {r} classes", chars.len())));
        }
        for c in &classes {
            if c.element_order == 0 || exponent as u64 % c.element_order != 0 {
                return Err(reject(&name, format!("class {} has order {} not dividing the exponent", c.name, c.element_order)));
            }
        }
        let total: BigUint = classes.iter().map(|c| &c.size).sum();
        if total != order {
            return Err(reject(&name, format!("class sizes sum to {total}, not {order}")));
        }
        let ids: Vec<usize> = (0..r).filter(|&i| classes[i].element_order == 1).collect();
        if ids.len() != 1 || !classes[ids[0]].size.is_one() {
            return Err(reject(&name, "need exactly one identity class of size 1"));
        }
        let identity = ids[0];

        let mut rows = Vec::with_capacity(r);
        for (i, row) in chars.into_iter().enumerate() {
            if row.len() != r {
                return Err(reject(&name, format!("character {i} has {} values", row.len())));
            }
            let mut out = Vec::with_capacity(r);
            for v in row {
                if exponent % v.n() != 0 {
                    return Err(reject(&name, format!("value in Q(ζ_{}) outside Q(ζ_{exponent})", v.n())));
                }
                out.push(if v.n() == exponent { v } else { v.embed(exponent) });
            }
            rows.push(out);
        }

        // Degrees.
        let mut deg_sq = BigUint::zero();
        for (i, row) in rows.iter().enumerate() {
            match row[identity].as_integer() {
                Some(d) if d > 0 => deg_sq += BigUint::from(d as u128 * d as u128),
                _ => return Err(reject(&name, format!("degree of character {i} is not a positive integer"))),
            }
        }
        if deg_sq != order {
            return Err(reject(&name, format!("squared degrees sum to {deg_sq}, not {order}")));
        }

        // Row orthogonality.
        let sizes: Vec<i128> = classes.iter().map(|c| small(&name, &c.size)).collect::<Result<_>>()?;
        let ord = small(&name, &order)?;
        let conj: Vec<Vec<CycInt>> = rows.iter().map(|row| row.iter().map(CycInt::conj).collect()).collect();
        for i in 0..r {
            for j in i..r {
                let mut s = CycInt::zero(exponent);
                for k in 0..r {
                    s = s.add(&rows[i][k].mul(&conj[j][k]).scale(sizes[k]));
                }
                let want = if i == j { ord } else { 0 };
                if s.as_integer() != Some(want) {
                    return Err(reject(&name, format!("orthogonality fails for characters {i}, {j}")));
                }
            }
        }

        // Inverse classes: the column of C⁻¹ is the conjugate column of C.
        let mut inverse = vec![usize::MAX; r];
        for k in 0..r {
            for l in 0..r {
                if classes[l].element_order == classes[k].element_order && (0..r).all(|i| conj[i][k] == rows[i][l]) {
                    inverse[k] = l;
                    break;
                }
            }
            if inverse[k] == usize::MAX {
                return Err(reject(&name, format!("no inverse class for {}", classes[k].name)));
            }
        }

        Ok(CharacterTable { name, order, exponent, classes, chars: rows, identity, inverse })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn n_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn characters(&self) -> &[Vec<CycInt>] {
        &self.chars
    }

    pub fn value(&self, chi: usize, class: usize) -> &CycInt {
        &self.chars[chi][class]
    }

    pub fn identity_class(&self) -> usize {
        self.identity
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse[c]
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.chars.iter().map(|row| row[self.identity].as_integer().unwrap() as u64).collect()
    }

    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name.eq_ignore_ascii_case(name))
    }

    fn check_class(&self, c: usize) -> Result<()> {
        if c < self.n_classes() { Ok(()) } else { Err(Error::ClassIndex(c)) }
    }

    /// Number of pairs `(a, b) ∈ A×B` with `ab = c` for a fixed `c ∈ C`, from
    /// `|A||B|/|G| · Σ_χ χ(a)χ(b)χ(c⁻¹)/χ(1)`.
    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> Result<BigRational> {
        self.check_class(a)?;
        self.check_class(b)?;
        self.check_class(c)?;
        let degs = self.degrees();
        let l = degs.iter().fold(1u64, |acc, &d| acc.lcm(&d));
        let mut s = CycInt::zero(self.exponent);
        for (row, &d) in self.chars.iter().zip(&degs) {
            let t = row[a].mul(&row[b]).mul(&row[c].conj());
            s = s.add(&t.scale((l / d) as i128));
        }
        let s = s.as_integer().ok_or_else(|| reject(&self.name, "structure constant sum is irrational"))?;
        let num = BigInt::from(self.classes[a].size.clone()) * BigInt::from(self.classes[b].size.clone()) * BigInt::from(s);
        let den = BigInt::from(self.order.clone()) * BigInt::from(l);
        let n = BigRational::new(num, den);
        if !n.is_integer() || n < BigRational::zero() {
            return Err(reject(&self.name, format!("structure constant {n} is not a nonnegative integer")));
        }
        Ok(n)
    }

    /// Integer form of [`structure_constant`](Self::structure_constant).
    pub fn structure_count(&self, a: usize, b: usize, c: usize) -> Result<BigUint> {
        let n = self.structure_constant(a, b, c)?;
        Ok(n.to_integer().to_biguint().expect("checked nonnegative"))
    }

    /// First triple of nontrivial classes with pairwise coprime element orders
    /// realizing `abc = 1`, in the order `(|A||B||C|, A, B, C)`.
    pub fn thompson_nonsolvable(&self) -> Option<CoprimeTriple> {
        let r = self.n_classes();
        let ord = |i: usize| self.classes[i].element_order;
        let nontrivial: Vec<usize> = (0..r).filter(|&i| i != self.identity).collect();
        let mut triples = Vec::new();
        for &a in &nontrivial {
            for &b in &nontrivial {
                if ord(a).gcd(&ord(b)) != 1 {
                    continue;
                }
                for &c in &nontrivial {
                    if ord(a).gcd(&ord(c)) == 1 && ord(b).gcd(&ord(c)) == 1 {
                        let w = &self.classes[a].size * &self.classes[b].size * &self.classes[c].size;
                        triples.push((w, a, b, c));
                    }
                }
            }
        }
        triples.sort();
        for (_, a, b, c) in triples {
            let n = self.structure_count(a, b, self.inverse[c]).ok()?;
            if !n.is_zero() {
                return Some(CoprimeTriple {
                    classes: [a, b, c],
                    names: [a, b, c].map(|i| self.classes[i].name.clone()),
                    orders: [ord(a), ord(b), ord(c)],
                    count: n,
                });
            }
        }
        None
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: TableDoc =
            serde_json::from_str(text).map_err(|source| Error::Json { path: "<table>".into(), source })?;
        doc.into_table()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let doc: TableDoc = crate::error::read_json(path)?;
        doc.into_table()
    }

    pub fn to_doc(&self) -> TableDoc {
        TableDoc {
            name: self.name.clone(),
            order: BigNum::Text(self.order.to_string()),
            exponent: self.exponent,
            classes: self
                .classes
                .iter()
                .map(|c| ClassDoc { name: c.name.clone(), size: BigNum::Text(c.size.to_string()), element_order: c.element_order })
                .collect(),
            irreducibles: self
                .chars
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| {
                            // Store each value in the smallest Q(ζ_m) we can cheaply detect.
                            let v = shrink(v);
                            CycDoc { n: v.n(), coeffs: v.coeffs().iter().map(|x| x.to_string()).collect() }
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("table serializes")
    }
}

/// Tries successively smaller divisors `m` of `n` for which `v` lies in `Q(ζ_m)`.
fn shrink(v: &CycInt) -> CycInt {
    if v.as_integer().is_some() {
        return CycInt::from_int(1, v.coeffs()[0]);
    }
    let n = v.n();
    let mut best = v.clone();
    for m in 2..n {
        if n % m != 0 {
            continue;
        }
        // Candidate: read off the coefficients on powers of ζ_n^{n/m}.
        let step = (n / m) as usize;
        let phi_m = super::cyclotomic::CycField::get(m).phi;
        let mut c = vec![0i128; phi_m];
        let mut ok = true;
        for (k, &x) in v.coeffs().iter().enumerate() {
            if x == 0 {
                continue;
            }
            if k % step != 0 || k / step >= phi_m {
                ok = false;
                break;
            }
            c[k / step] = x;
        }
        if ok {
            let cand = CycInt::from_coeffs(m, c).expect("reduced");
            if &cand.embed(n) == v {
                best = cand;
                break;
            }
        }
    }
    best
}

/// A number given either as JSON number or as a decimal string.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BigNum {
    Int(u64),
    Text(String),
}

impl BigNum {
    fn value(&self, name: &str) -> Result<BigUint> {
        match self {
            BigNum::Int(v) => Ok(BigUint::from(*v)),
            BigNum::Text(s) => BigUint::from_str(s.trim()).map_err(|_| reject(name, format!("bad integer {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CycDoc {
    pub n: u32,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassDoc {
    pub name: String,
    pub size: BigNum,
    pub element_order: u64,
}

/// On-disk character table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableDoc {
    pub name: String,
    pub order: BigNum,
    pub exponent: u32,
    pub classes: Vec<ClassDoc>,
    pub irreducibles: Vec<Vec<CycDoc>>,
}

impl TableDoc {
    pub fn into_table(self) -> Result<CharacterTable> {
        let name = self.name;
        let order = self.order.value(&name)?;
        let classes = self
            .classes
            .into_iter()
            .map(|c| Ok(ClassInfo { size: c.size.value(&name)?, name: c.name, element_order: c.element_order }))
            .collect::<Result<Vec<_>>>()?;
        let mut chars = Vec::new();
        for row in self.irreducibles {
            let mut out = Vec::new();
            for v in row {
                if v.n == 0 {
                    return Err(reject(&name, "cyclotomic with n = 0"));
                }
                let coeffs = v
                    .coeffs
                    .iter()
                    .map(|s| BigRational::from_str(s.trim()).map_err(|_| reject(&name, format!("bad rational {s:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                let x = from_rationals(v.n, &coeffs).map_err(|e| match e {
                    Error::Table { reason, .. } => reject(&name, reason),
                    e => e,
                })?;
                out.push(x);
            }
            chars.push(out);
        }
        CharacterTable::new(name, order, self.exponent, classes, chars)
    }
}

/// Loads a shipped table `data/tables/<name>.json`.
pub fn load_named(name: &str) -> Result<CharacterTable> {
    let path = crate::data_dir().join("tables").join(format!("{}.json", name.to_ascii_lowercase()));
    CharacterTable::load(&path)
}
