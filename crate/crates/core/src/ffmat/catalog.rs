//! Named classical groups given by explicit generators, stored as JSON.

use std::path::Path;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::action::MatrixAction;
use super::field::{Elt, Field};
use super::forms::{Form, FormKind};
use super::matrix::FFMatrix;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, DEGREE_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum PermActionKind {
    /// All one-dimensional subspaces.
    #[default]
    Projective,
    /// The smallest orbit of the group on one-dimensional subspaces.
    SmallestOrbit,
}

/// The simple group expected as the perfect core of the projective image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleRef {
    pub family: String,
    pub n: u32,
    pub q: u64,
}

/// One catalog entry as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub name: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    pub family: String,
    pub d: usize,
    /// Family parameter; unitary families live over `GF(q²)`.
    pub q: usize,
    pub field_modulus: Vec<u8>,
    pub generators: Vec<Vec<Vec<u64>>>,
    #[serde(default)]
    pub form: Option<Vec<Vec<u64>>>,
    #[serde(default)]
    pub form_kind: Option<FormKind>,
    pub expected_order: String,
    #[serde(default)]
    pub perm_action: PermActionKind,
    pub simple: SimpleRef,
}

pub const FAMILIES: &[&str] = &["SL", "GL", "SU", "GU", "Sp", "GSp", "GO", "GO+", "GO-", "Omega+", "Omega-", "Sz"];

pub fn is_unitary(family: &str) -> bool {
    matches!(family, "SU" | "GU")
}

/// Order of the field the matrices live over.
pub fn field_order(family: &str, q: usize) -> usize {
    if is_unitary(family) {
        q * q
    } else {
        q
    }
}

/// A catalog group with parsed matrices.
#[derive(Clone, Debug)]
pub struct MatGroupSpec {
    pub name: String,
    pub aliases: Vec<String>,
    pub family: String,
    pub d: usize,
    pub q: usize,
    pub field: &'static Field,
    pub generators: Vec<FFMatrix>,
    pub form: Option<Form>,
    pub expected_order: BigUint,
    pub perm_action: PermActionKind,
    pub simple: SimpleRef,
}

impl MatGroupSpec {
    pub fn from_record(r: &CatalogRecord) -> Result<Self> {
        let bad = |reason: String| Error::Catalog { name: r.name.clone(), reason };
        if !FAMILIES.contains(&r.family.as_str()) {
            return Err(bad(format!("unknown family {}", r.family)));
        }
        let field = Field::get(field_order(&r.family, r.q)).map_err(|e| bad(e.to_string()))?;
        if field.modulus() != r.field_modulus.as_slice() {
            return Err(bad(format!("field modulus {:?} differs from the fixed {:?}", r.field_modulus, field.modulus())));
        }
        let mats = |rows: &Vec<Vec<u64>>| -> Result<FFMatrix> {
            let m = FFMatrix::from_rows(field, rows).map_err(|e| bad(e.to_string()))?;
            if m.dim() != r.d {
                return Err(bad(format!("matrix of dimension {} in a degree-{} group", m.dim(), r.d)));
            }
            Ok(m)
        };
        let generators = r.generators.iter().map(mats).collect::<Result<Vec<_>>>()?;
        if generators.is_empty() {
            return Err(bad("no generators".into()));
        }
        let form = match (&r.form, r.form_kind) {
            (Some(g), Some(k)) => Some(Form::new(k, mats(g)?)),
            (None, None) => None,
            _ => return Err(bad("form and form_kind must be given together".into())),
        };
        let expected_order = r.expected_order.parse().map_err(|_| bad("expected_order is not an integer".into()))?;
        Ok(MatGroupSpec {
            name: r.name.clone(),
            aliases: r.aliases.clone(),
            family: r.family.clone(),
            d: r.d,
            q: r.q,
            field,
            generators,
            form,
            expected_order,
            perm_action: r.perm_action,
            simple: r.simple.clone(),
        })
    }

    pub fn to_record(&self) -> CatalogRecord {
        CatalogRecord {
            name: self.name.clone(),
            aliases: self.aliases.clone(),
            family: self.family.clone(),
            d: self.d,
            q: self.q,
            field_modulus: self.field.modulus().to_vec(),
            generators: self.generators.iter().map(|g| g.rows()).collect(),
            form: self.form.as_ref().map(|f| f.gram.rows()),
            form_kind: self.form.as_ref().map(|f| f.kind),
            expected_order: self.expected_order.to_string(),
            perm_action: self.perm_action,
            simple: self.simple.clone(),
        }
    }

    fn err(&self, reason: String) -> Error {
        Error::Catalog { name: self.name.clone(), reason }
    }

    /// Whether `m` satisfies the family's defining conditions (form, determinant,
    /// and for `Omega` in characteristic 2 the Dickson invariant).
    pub fn family_member(&self, m: &FFMatrix) -> bool {
        let det = m.det();
        if det == 0 {
            return false;
        }
        let fam = self.family.as_str();
        if matches!(fam, "SL" | "SU" | "Sp" | "Sz" | "Omega+" | "Omega-") && det != 1 {
            return false;
        }
        if let Some(form) = &self.form {
            let ok = match fam {
                "GSp" => form.similitude_multiplier(m).is_some(),
                _ => form.preserved_by(m),
            };
            if !ok {
                return false;
            }
        }
        if fam.starts_with("Omega") && self.field.p() == 2 {
            let rank = m.sub(&FFMatrix::identity(self.field, self.d)).rank();
            if rank % 2 != 0 {
                return false;
            }
        }
        true
    }

    /// Scalars `λ` with `λI` in the family.
    pub fn admissible_scalars(&self) -> Vec<Elt> {
        (1..self.field.q() as Elt)
            .filter(|&l| self.family_member(&FFMatrix::scalar(self.field, self.d, l)))
            .collect()
    }

    pub fn projective_action(&self) -> Result<MatrixAction> {
        MatrixAction::projective(self.field, self.d)
    }

    /// The permutation action used for searches: all projective points, or
    /// the smallest orbit on them.
    pub fn perm_action(&self) -> Result<MatrixAction> {
        let full = self.projective_action()?;
        Ok(match self.perm_action {
            PermActionKind::Projective => full,
            PermActionKind::SmallestOrbit => {
                let orbits = full.orbits(&self.generators);
                let smallest = orbits.iter().min_by_key(|o| o.len()).expect("nonempty");
                full.restrict(smallest)
            }
        })
    }

    /// Exact order of the matrix group, computed from the generators.
    ///
    /// Uses the faithful action on nonzero vectors when it fits under the
    /// degree cap; otherwise the projective image order times the scalar
    /// subgroup, which must then be pinned down by scalar generators.
    pub fn compute_order(&self) -> Result<BigUint> {
        let q = self.field.q();
        let nvec = q.checked_pow(self.d as u32).map(|n| n - 1).unwrap_or(usize::MAX);
        if nvec <= DEGREE_CAP {
            let act = MatrixAction::vectors(self.field, self.d)?;
            return Ok(act.group(&self.generators)?.order().clone());
        }
        let image = self.projective_action()?.group(&self.generators)?;
        let upper = self.admissible_scalars().len();
        let lower = self
            .generators
            .iter()
            .filter_map(|g| g.scalar_value())
            .map(|l| self.field.mult_order(l))
            .fold(1usize, num_integer::lcm);
        if lower != upper {
            return Err(self.err(format!(
                "scalar subgroup undetermined: generators give {lower}, family allows {upper}"
            )));
        }
        Ok(image.order() * BigUint::from(upper))
    }

    /// Checks every generator against the family and the order against `expected_order`.
    pub fn verify(&self) -> Result<BigUint> {
        for (i, g) in self.generators.iter().enumerate() {
            if !self.family_member(g) {
                return Err(self.err(format!("generator {i} fails the {} conditions", self.family)));
            }
        }
        let order = self.compute_order()?;
        if order != self.expected_order {
            return Err(self.err(format!("computed order {order}, expected {}", self.expected_order)));
        }
        Ok(order)
    }

    pub fn realize(&self) -> Result<CatalogGroup> {
        let action = self.perm_action()?;
        let perm = action.group(&self.generators)?;
        Ok(CatalogGroup { spec: self.clone(), action, perm })
    }

    pub fn matches_name(&self, name: &str) -> bool {
        let norm = |s: &str| s.replace(' ', "").to_ascii_lowercase();
        let n = norm(name);
        norm(&self.name) == n || self.aliases.iter().any(|a| norm(a) == n)
    }
}

/// A catalog group together with its permutation action.
#[derive(Clone, Debug)]
pub struct CatalogGroup {
    pub spec: MatGroupSpec,
    pub action: MatrixAction,
    pub perm: PermGroup,
}

impl CatalogGroup {
    pub fn image_order(&self) -> &BigUint {
        self.perm.order()
    }

    /// Scalar kernel of the action: matrix order over image order.
    pub fn kernel_order(&self) -> Option<u64> {
        (&self.spec.expected_order / self.perm.order()).to_u64()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Catalog {
    pub groups: Vec<CatalogRecord>,
}

impl Catalog {
    pub fn load(path: &Path) -> Result<Catalog> {
        crate::error::read_json(path)
    }

    pub fn load_default() -> Result<Catalog> {
        Self::load(&crate::data_dir().join("catalog.json"))
    }

    pub fn specs(&self) -> Result<Vec<MatGroupSpec>> {
        self.groups.iter().map(MatGroupSpec::from_record).collect()
    }

    pub fn find(&self, name: &str) -> Result<MatGroupSpec> {
        for r in &self.groups {
            let s = MatGroupSpec::from_record(r)?;
            if s.matches_name(name) {
                return Ok(s);
            }
        }
        Err(Error::UnknownGroup(name.into()))
    }

    /// Looks up `(family, d, q)` and verifies the entry.
    pub fn classical_group(&self, family: &str, d: usize, q: usize) -> Result<MatGroupSpec> {
        let r = self
            .groups
            .iter()
            .find(|r| r.family == family && r.d == d && r.q == q)
            .ok_or_else(|| Error::UnknownGroup(format!("{family}({d},{q})")))?;
        let s = MatGroupSpec::from_record(r)?;
        s.verify()?;
        Ok(s)
    }
}

/// Convenience: `classical_group` against the shipped catalog.
pub fn classical_group(family: &str, d: usize, q: usize) -> Result<MatGroupSpec> {
    Catalog::load_default()?.classical_group(family, d, q)
}
