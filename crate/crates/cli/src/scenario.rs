//! The scenario catalog: one runnable, machine-checkable claim per entry.

use std::collections::HashSet;
use std::path::Path;

use nonsolv_core::bounds::counting::SzCase;
use nonsolv_core::bounds::{FieldAutFamily, Psl2Case};
use nonsolv_core::search::Mode;
use nonsolv_core::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Scenario {
    pub id: String,
    #[serde(default)]
    pub description: String,
    /// Acceptance criterion this scenario gates, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criterion: Option<u32>,
    /// Wall-clock limit in seconds, checked by the acceptance suite.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_limit_s: Option<u64>,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", content = "cases", rename_all = "snake_case")]
pub enum Body {
    Witness(Vec<WitnessCase>),
    ExceptionSweep(Vec<SweepCase>),
    BoundCheck(Vec<BoundCase>),
    PpartCheck(Vec<PpartCase>),
    ThompsonCheck(Vec<ThompsonCase>),
    InvariantFactorSweep(Vec<LemmaCase>),
    OracleCheck(Vec<OracleCase>),
}

impl Body {
    pub fn kind(&self) -> &'static str {
        match self {
            Body::Witness(_) => "witness",
            Body::ExceptionSweep(_) => "exception_sweep",
            Body::BoundCheck(_) => "bound_check",
            Body::PpartCheck(_) => "ppart_check",
            Body::ThompsonCheck(_) => "thompson_check",
            Body::InvariantFactorSweep(_) => "invariant_factor_sweep",
            Body::OracleCheck(_) => "oracle_check",
        }
    }
}

fn pair() -> Mode {
    Mode::PairConjugate
}
fn triple() -> Mode {
    Mode::TripleConjugate
}
fn yes() -> bool {
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XClass {
    /// One representative per involution class.
    Involutions,
    /// As above, skipping the classes of the form's transvections.
    InvolutionsExceptTransvections,
}

/// Either an explicit generating set (`conjugators`/`partners` given) whose
/// order is checked, or a search for a nonsolvable subgroup.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessCase {
    pub group: String,
    /// `x` in cycle notation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    /// `ORDER[:PROPERTY]`, matched on catalog matrices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_class: Option<XClass>,
    #[serde(default = "pair")]
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conjugators: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub partners: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub exhaustive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_order: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    Transvection,
    Reflection,
}

/// An exhaustive sweep with `x` fixed: given in cycle notation, as every
/// class of the form's root elements of one kind, or the `S_n` census.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepCase {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<RootKind>,
    #[serde(default = "triple")]
    pub mode: Mode,
    #[serde(default = "yes")]
    pub expect_all_solvable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_classes: Option<usize>,
    /// Odd involution classes of `S_n`: only transpositions may be all-solvable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric_census: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "lemma", rename_all = "snake_case")]
pub enum BoundCase {
    Psl2 {
        qs: Vec<u64>,
        /// All three cases when empty.
        #[serde(default)]
        cases: Vec<Psl2Case>,
    },
    Fieldaut {
        family: FieldAutFamily,
        q0s: Vec<u64>,
        ps: Vec<u64>,
        /// Skip `q₀^p` above this.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_q: Option<u64>,
    },
    Countinv {
        scenario: String,
        /// Overrides `|Y|`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        involutions: Option<String>,
        #[serde(default = "yes")]
        expect_pass: bool,
        /// Confirms the conclusion by finding involution partners in this group.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        search_group: Option<String>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        search_orders: Vec<u64>,
    },
    Sz {
        q: u64,
        case: SzCase,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        involutions: Option<String>,
        #[serde(default = "yes")]
        expect_pass: bool,
    },
    InvolutionCount {
        group: String,
        /// `PSL(2,q)`: `q² − 1` for even `q`, at least `q(q−1)/2` for odd `q`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        psl2_q: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        exact: Option<String>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RowRef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    pub case: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PpartCase {
    /// All shipped tables when empty.
    #[serde(default)]
    pub families: Vec<String>,
    pub qs: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row: Option<RowRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_prime: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum ThompsonCase {
    /// Tables computed from the built-in corpus, checked against solvability
    /// and (up to `structure_max_order`) against counted products.
    Corpus { max_order: u64, structure_max_order: u64, min_groups: usize },
    /// A shipped table from `data/tables`.
    Table { name: String, expect_nonsolvable: bool },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "lemma", rename_all = "snake_case")]
pub enum LemmaCase {
    Lift6Exhaustive { group: String },
    Lift6Sampled { group: String, target: u64, max_draws: u64 },
    Order9 { group: String, target: u64, max_draws: u64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleCase {
    /// Closure oracle for catalog groups up to this order.
    pub max_order: u64,
}

#[derive(Serialize, Deserialize)]
struct File {
    scenarios: Vec<Scenario>,
}

/// Loads a scenario file, rejecting duplicate ids; entries come back sorted by id.
pub fn load(path: &Path) -> Result<Vec<Scenario>> {
    let file: File = nonsolv_core::error::read_json(path)?;
    let mut seen = HashSet::new();
    for s in &file.scenarios {
        if !seen.insert(s.id.clone()) {
            return Err(Error::Task(format!("duplicate scenario id {}", s.id)));
        }
    }
    let mut v = file.scenarios;
    v.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(v)
}

pub fn load_default() -> Result<Vec<Scenario>> {
    load(&nonsolv_core::data_dir().join("scenarios.json"))
}

/// `all`, an exact id, or a `*` glob.
pub fn matches(filter: &str, id: &str) -> bool {
    if filter == "all" {
        return true;
    }
    let pattern = format!("^{}$", filter.split('*').map(regex::escape).collect::<Vec<_>>().join(".*"));
    regex::Regex::new(&pattern).map(|r| r.is_match(id)).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_each_kind() {
        let text = r#"{"scenarios": [
            {"id": "b", "kind": "witness", "cases": [{"group": "A5", "x": "(1,2,3,4,5)", "mode": "involution"}]},
            {"id": "a", "kind": "bound_check", "cases": [
                {"lemma": "psl2", "qs": [7]},
                {"lemma": "sz", "q": 8, "case": "q_minus_1"},
                {"lemma": "countinv", "scenario": "sz8-order7"}]},
            {"id": "c", "kind": "thompson_check", "cases": [{"source": "table", "name": "A5", "expect_nonsolvable": true}]},
            {"id": "d", "kind": "exception_sweep", "cases": [{"symmetric_census": 8}]}
        ]}"#;
        let dir = std::env::temp_dir().join(format!("nonsolv-scen-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("s.json");
        std::fs::write(&path, text).unwrap();
        let v = load(&path).unwrap();
        std::fs::remove_dir_all(&dir).unwrap();
        assert_eq!(v.iter().map(|s| s.id.as_str()).collect::<Vec<_>>(), ["a", "b", "c", "d"]);
        let Body::Witness(w) = &v[1].body else { panic!() };
        assert_eq!(w[0].mode, Mode::InvolutionPartner);
        let Body::BoundCheck(b) = &v[0].body else { panic!() };
        assert!(matches!(b[2], BoundCase::Countinv { expect_pass: true, .. }));
        let Body::ExceptionSweep(s) = &v[3].body else { panic!() };
        assert_eq!(s[0].mode, Mode::TripleConjugate);
        assert!(s[0].expect_all_solvable);
    }

    #[test]
    fn unknown_kind_rejected() {
        let r: std::result::Result<Scenario, _> = serde_json::from_str(r#"{"id": "x", "kind": "magic", "cases": []}"#);
        assert!(r.is_err());
    }

    proptest! {
        #[test]
        fn literal_filters_match_only_themselves(a in "[a-z0-9.+()-]{1,12}", b in "[a-z0-9.+()-]{1,12}") {
            prop_assert!(matches(&a, &a));
            prop_assert_eq!(matches(&a, &b), a == b);
            let (glob, id) = (format!("{a}*"), format!("{a}{b}"));
            prop_assert!(matches(&glob, &id));
        }
    }
}
