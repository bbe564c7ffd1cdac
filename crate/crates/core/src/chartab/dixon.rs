//! Character tables of small permutation groups by simultaneous
//! diagonalization of the class matrices over a prime field, lifted to
//! cyclotomic integers through eigenvalue multiplicities.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;

use super::cyclotomic::CycInt;
use super::table::{CharacterTable, ClassInfo};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Largest group order accepted by the explicit element enumeration here.
pub const MAX_ORDER: u64 = 20_000;

/// Elements of a small group partitioned into conjugacy classes.
/// Classes are sorted by element order, then size, then first element.
pub struct ClassStructure {
    pub elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub orders: Vec<u64>,
}

impl ClassStructure {
    pub fn new(g: &PermGroup) -> Result<Self> {
        let n = g.order_u64().filter(|&n| n <= MAX_ORDER).ok_or_else(|| Error::Table {
            name: String::new(),
            reason: format!("group order {} exceeds the enumeration limit {MAX_ORDER}", g.order()),
        })?;
        let elements = g.elements();
        debug_assert_eq!(elements.len() as u64, n);
        let index: HashMap<Permutation, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let gens = g.generators().to_vec();
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for start in 0..elements.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = raw.len();
            class_of[start] = id;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let x = &elements[orbit[head]];
                head += 1;
                for s in &gens {
                    let y = index[&x.conjugate_by(s)];
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            raw.push(orbit);
        }
        let ord = |c: &Vec<usize>| elements[c[0]].order_u64().expect("small order");
        raw.sort_by_key(|c| (ord(c), c.len(), c[0]));
        for (id, c) in raw.iter().enumerate() {
            for &e in c {
                class_of[e] = id;
            }
        }
        let orders = raw.iter().map(ord).collect();
        Ok(ClassStructure { elements, index, class_of, classes: raw, orders })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn n_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn index_of(&self, p: &Permutation) -> usize {
        self.index[p]
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, &o| a.lcm(&o))
    }

    /// ATLAS-style names: element order followed by a letter.
    pub fn class_names(&self) -> Vec<String> {
        let mut seen: HashMap<u64, u8> = HashMap::new();
        self.orders
            .iter()
            .map(|&o| {
                let k = seen.entry(o).or_insert(0);
                let name = format!("{o}{}", letters(*k));
                *k += 1;
                name
            })
            .collect()
    }

    /// Class of `rep(k)^l`.
    fn power_map(&self, k: usize, l: u64) -> usize {
        let x = &self.elements[self.classes[k][0]];
        self.class_of[self.index[&x.pow(l as i64)]]
    }

    /// `c[i][j][k]` = #{(x, y) ∈ Cᵢ×Cⱼ : xy = z_k} for the fixed representative `z_k`.
    pub fn class_matrices(&self) -> Vec<Vec<Vec<u32>>> {
        let r = self.n_classes();
        let mut c = vec![vec![vec![0u32; r]; r]; r];
        let reps: Vec<&Permutation> = self.classes.iter().map(|cl| &self.elements[cl[0]]).collect();
        for (i, cl) in self.classes.iter().enumerate() {
            for &x in cl {
                let xi = self.elements[x].inverse();
                for (k, z) in reps.iter().enumerate() {
                    let y = xi.mul(z);
                    c[i][self.class_of[self.index[&y]]][k] += 1;
                }
            }
        }
        c
    }

    /// Brute-force structure constants from all `|G|²` products:
    /// `n[a][b][c]` pairs `(x, y) ∈ A×B` with `xy` equal to a fixed element of `C`.
    pub fn brute_force_structure_constants(&self) -> Vec<Vec<Vec<u64>>> {
        let r = self.n_classes();
        let mut n = vec![vec![vec![0u64; r]; r]; r];
        for (i, x) in self.elements.iter().enumerate() {
            let a = self.class_of[i];
            for (j, y) in self.elements.iter().enumerate() {
                let b = self.class_of[j];
                n[a][b][self.class_of[self.index[&x.mul(y)]]] += 1;
            }
        }
        for row in n.iter_mut() {
            for cell in row.iter_mut() {
                for (c, v) in cell.iter_mut().enumerate() {
                    *v /= self.classes[c].len() as u64;
                }
            }
        }
        n
    }
}

fn letters(mut k: u8) -> String {
    let mut s = String::new();
    loop {
        s.insert(0, (b'a' + k % 26) as char);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    s
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn primitive_root(p: u64) -> u64 {
    let mut m = p - 1;
    let mut fs = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            fs.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        fs.push(m);
    }
    (2..p).find(|&g| fs.iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1)).expect("prime has a primitive root")
}

/// Row-reduces `rows` in place (over GF(p)) and returns pivot columns.
fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut piv = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(s) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, s);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        piv.push(c);
        r += 1;
    }
    rows.truncate(r);
    piv
}

/// Right null space of a square matrix over GF(p).
fn nullspace(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut a = m.to_vec();
    let piv = rref(&mut a, p);
    let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in a.iter().zip(&piv) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial over GF(p) via Hessenberg reduction, low coefficient first.
fn charpoly(m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = m.len();
    let mut h = m.to_vec();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else { continue };
        if i != j + 1 {
            h.swap(i, j + 1);
            for row in h.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let inv = inv_mod(h[j + 1][j], p);
        for i in j + 2..n {
            let u = h[i][j] * inv % p;
            if u == 0 {
                continue;
            }
            for k in 0..n {
                h[i][k] = (h[i][k] + (p - u) * h[j + 1][k]) % p;
            }
            for row in h.iter_mut() {
                row[j + 1] = (row[j + 1] + u * row[i]) % p;
            }
        }
    }
    // p_{k+1} = (t − h_kk) p_k − Σ_{i<k} h_ik (h_{i+1,i}⋯h_{k,k−1}) p_i
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let mut next = vec![0u64; k + 2];
        for (d, &c) in polys[k].iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + (p - h[k][k]) * c) % p;
        }
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = prod * h[i + 1][i] % p;
            let f = prod * h[i][k] % p;
            if f != 0 {
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = (next[d] + (p - f) * c % p) % p;
                }
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn roots(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p) == 0)
        .collect()
}

/// Splits the common eigenspaces of the class matrices into lines.
fn common_eigenvectors(mats: &[Vec<Vec<u64>>], p: u64, r: usize) -> Result<Vec<Vec<u64>>> {
    let identity: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|j| (i == j) as u64).collect()).collect();
    let mut pending = vec![identity];
    let mut done = Vec::new();
    // A fixed pseudo-random combination separates most characters in one step.
    let mut combo = vec![vec![0u64; r]; r];
    let mut seed = 0x9E37_79B9u64;
    for m in mats {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let a = (seed >> 33) % p;
        for i in 0..r {
            for j in 0..r {
                combo[i][j] = (combo[i][j] + a * m[i][j]) % p;
            }
        }
    }
    let order: Vec<&Vec<Vec<u64>>> = std::iter::once(&combo).chain(mats.iter()).collect();
    for m in order {
        let mut next = Vec::new();
        for basis in pending {
            if basis.len() == 1 {
                done.push(basis.into_iter().next().unwrap());
                continue;
            }
            let mut basis = basis;
            let piv = rref(&mut basis, p);
            let dim = basis.len();
            // Restriction: R[a][b] = (M v_b)[piv a].
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|v| (0..r).map(|i| (0..r).fold(0u64, |s, k| (s + m[i][k] * v[k]) % p)).collect())
                .collect();
            let rmat: Vec<Vec<u64>> = (0..dim).map(|a| (0..dim).map(|b| images[b][piv[a]]).collect()).collect();
            let mut found = 0;
            for lambda in roots(&charpoly(&rmat, p), p) {
                let shifted: Vec<Vec<u64>> = (0..dim)
                    .map(|a| (0..dim).map(|b| (rmat[a][b] + if a == b { p - lambda } else { 0 }) % p).collect())
                    .collect();
                let ns = nullspace(&shifted, p);
                found += ns.len();
                let space: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|c| (0..r).map(|i| (0..dim).fold(0u64, |s, b| (s + c[b] * basis[b][i]) % p)).collect())
                    .collect();
                next.push(space);
            }
            if found != dim {
                return Err(Error::Table { name: String::new(), reason: "class matrices are not diagonalizable".into() });
            }
        }
        pending = next;
        if pending.is_empty() {
            break;
        }
    }
    for b in pending {
        if b.len() != 1 {
            return Err(Error::Table { name: String::new(), reason: "eigenspaces failed to split".into() });
        }
        done.extend(b);
    }
    Ok(done)
}

/// Computes the character table of a small permutation group.
pub fn character_table(name: &str, g: &PermGroup) -> Result<CharacterTable> {
    let cs = ClassStructure::new(g)?;
    table_from_classes(name, &cs)
}

pub fn table_from_classes(name: &str, cs: &ClassStructure) -> Result<CharacterTable> {
    let err = |reason: String| Error::Table { name: name.to_string(), reason };
    let r = cs.n_classes();
    let order = cs.order() as u64;
    let e = cs.exponent();
    let bound = 2 * ((order as f64).sqrt().ceil() as u64) + 1;
    let p = (1..).map(|k| k * e + 1).find(|&p| p > bound && is_prime(p)).unwrap();
    let c = cs.class_matrices();
    let mats: Vec<Vec<Vec<u64>>> =
        (0..r).map(|i| (0..r).map(|j| (0..r).map(|k| c[i][j][k] as u64 % p).collect()).collect()).collect();
    let vecs = common_eigenvectors(&mats[1..], p, r)?;
    if vecs.len() != r {
        return Err(err(format!("found {} characters for {r} classes", vecs.len())));
    }
    let sizes: Vec<u64> = cs.classes.iter().map(|c| c.len() as u64).collect();
    let inv_class: Vec<usize> =
        (0..r).map(|k| cs.class_of[cs.index_of(&cs.elements[cs.classes[k][0]].inverse())]).collect();
    let z = pow_mod(primitive_root(p), (p - 1) / e, p);

    let mut rows = Vec::with_capacity(r);
    for v in vecs {
        let n0 = inv_mod(v[0], p);
        let w: Vec<u64> = v.iter().map(|x| x * n0 % p).collect();
        let s = (0..r).fold(0u64, |acc, k| (acc + w[k] * w[inv_class[k]] % p * inv_mod(sizes[k] % p, p)) % p);
        let d2 = order % p * inv_mod(s, p) % p;
        let d = (1..).take_while(|d| d * d <= order).find(|d| d * d % p == d2).ok_or_else(|| err("no degree".into()))?;
        let vals: Vec<u64> = (0..r).map(|k| w[k] * d % p * inv_mod(sizes[k] % p, p) % p).collect();
        let mut row = Vec::with_capacity(r);
        for k in 0..r {
            let o = cs.orders[k];
            let xi = pow_mod(z, e / o, p);
            let o_inv = inv_mod(o % p, p);
            let powers: Vec<u64> = (0..o).map(|l| vals[cs.power_map(k, l)]).collect();
            let mut mult = vec![0i128; o as usize];
            for j in 0..o {
                let xi_j = inv_mod(pow_mod(xi, j, p), p);
                let mut acc = 0u64;
                let mut t = 1u64;
                for &pv in &powers {
                    acc = (acc + pv * t) % p;
                    t = t * xi_j % p;
                }
                let m = acc * o_inv % p;
                if m > d {
                    return Err(err(format!("eigenvalue multiplicity {m} exceeds degree {d}")));
                }
                mult[j as usize] = m as i128;
            }
            row.push(CycInt::from_exponents(o as u32, &mult).embed(e as u32));
        }
        rows.push((d, row));
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| cmp_rows(&a.1, &b.1)));
    let names = cs.class_names();
    let classes = (0..r)
        .map(|k| ClassInfo { name: names[k].clone(), size: BigUint::from(sizes[k]), element_order: cs.orders[k] })
        .collect();
    CharacterTable::new(name, BigUint::from(order), e as u32, classes, rows.into_iter().map(|(_, r)| r).collect())
}

fn cmp_rows(a: &[CycInt], b: &[CycInt]) -> std::cmp::Ordering {
    // Trivial character first among degree-1 rows, then by coefficients descending.
    for (x, y) in a.iter().zip(b) {
        let o = y.coeffs().cmp(x.coeffs());
        if o.is_ne() {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}
