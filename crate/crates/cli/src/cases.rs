//! Runs individual scenario cases against the core library.

use std::collections::HashSet;

use nonsolv_core::bounds::counting::{i2_psl2, load_scenarios, sz_countinv_chain};
use nonsolv_core::bounds::ppart::RowStatus;
use nonsolv_core::bounds::{countinv_check, field_aut_gamma_bound, load_table, load_tables, psl2_bounds, BoundStatus, Psl2Case};
use nonsolv_core::chartab::corpus::corpus;
use nonsolv_core::chartab::dixon::table_from_classes;
use nonsolv_core::chartab::{load_named, ClassStructure};
use nonsolv_core::ffmat::canonical::{is_reflection, is_transvection};
use nonsolv_core::ffmat::lemmas::{exhaustive_lift6, sampled_lift6, sampled_order9};
use nonsolv_core::ffmat::{Catalog, FFMatrix};
use nonsolv_core::bounds::order_poly_eval;
use nonsolv_core::perm::parse_cycles;
use nonsolv_core::search::*;
use nonsolv_core::{Error, PermGroup, Permutation, Result};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::groups::{resolve, Resolved};
use crate::scenario::*;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "reason", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

impl Outcome {
    fn check(ok: bool, why: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(why())
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail(_) => "fail",
            Outcome::Skipped(_) => "skipped",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    #[serde(flatten)]
    pub outcome: Outcome,
    pub detail: Value,
}

fn result(outcome: Outcome, detail: Value) -> Result<CaseResult> {
    Ok(CaseResult { outcome, detail })
}

fn big(s: &str) -> Result<BigUint> {
    s.parse().map_err(|_| Error::Task(format!("{s:?} is not a nonnegative integer")))
}

fn catalog_of<'a>(g: &'a Resolved, what: &str) -> Result<&'a nonsolv_core::ffmat::CatalogGroup> {
    g.catalog().ok_or_else(|| Error::Task(format!("{what} needs a catalog group, got {}", g.name())))
}

/// Class representatives of the form's root elements satisfying `pred`.
fn root_classes(g: &nonsolv_core::ffmat::CatalogGroup, pred: fn(&FFMatrix) -> bool) -> Result<Vec<Permutation>> {
    let perms: Vec<Permutation> = root_elements(&g.spec)?.iter().filter(|m| pred(m)).map(|m| g.action.perm_of(m)).collect();
    Ok(split_classes(&g.perm, &perms, 100_000)?.into_iter().map(|c| c.representative).collect())
}

pub fn witness(c: &WitnessCase, seed: u64) -> Result<CaseResult> {
    let g = resolve(&c.group)?;
    let deg = g.perm().degree();
    let seed = c.seed.unwrap_or(seed);
    if !c.conjugators.is_empty() || !c.partners.is_empty() {
        let x = parse_cycles(c.x.as_deref().ok_or_else(|| Error::Task("explicit witness needs x".into()))?, deg)?;
        let mut gens = vec![x.clone()];
        for g in &c.conjugators {
            gens.push(x.conjugate_by(&parse_cycles(g, deg)?));
        }
        for y in &c.partners {
            gens.push(parse_cycles(y, deg)?);
        }
        let h = PermGroup::new(gens.clone())?;
        let solvable = h.is_solvable();
        let order_ok = c.expect_order.as_deref().map_or(Ok(true), |o| big(o).map(|o| &o == h.order()))?;
        let products: Vec<String> = gens[1..].iter().map(|y| x.mul(y).to_string()).collect();
        return result(
            Outcome::check(!solvable && order_ok, || format!("order {} (solvable: {solvable})", h.order())),
            json!({"group": g.name(), "x": x.to_string(), "generators": gens.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                   "x_times_generators": products, "generated_order": h.order().to_string(), "solvable": solvable}),
        );
    }
    let xs: Vec<(String, Permutation)> = match (&c.x, &c.element, c.x_class) {
        (Some(x), _, _) => vec![(x.clone(), parse_cycles(x, deg)?)],
        (None, Some(spec), _) => {
            let spec: ElementSpec = spec.parse()?;
            let sel = select_element(catalog_of(&g, "element selection")?, &spec, seed, 100_000)?;
            vec![(spec.to_string(), sel.perm)]
        }
        (None, None, Some(kind)) => {
            let mut classes = g.perm().involution_classes()?;
            if kind == XClass::InvolutionsExceptTransvections {
                let cg = catalog_of(&g, "transvection filtering")?;
                let tv: HashSet<Permutation> =
                    root_elements(&cg.spec)?.iter().filter(|m| is_transvection(m)).map(|m| cg.action.perm_of(m)).collect();
                classes.retain(|cl| !tv.contains(&cl.representative));
            }
            classes.into_iter().map(|cl| (format!("involution class of size {}", cl.size), cl.representative)).collect()
        }
        _ => return Err(Error::Task("witness case needs x, element or x_class".into())),
    };
    let mut details = Vec::new();
    let mut failures = Vec::new();
    for (label, x) in xs {
        let mut task = SearchTask::new(g.perm().clone(), x, c.mode).seed(seed).exhaustive(c.exhaustive);
        if let Some(b) = c.budget {
            task = task.budget(b);
        }
        let w = find_nonsolvable(&task)?;
        match &w {
            None => failures.push(format!("{label}: no witness within budget {}", task.budget)),
            Some(w) => {
                if let Some(o) = &c.expect_order {
                    if w.generated_order != big(o)? {
                        failures.push(format!("{label}: generated order {}", w.generated_order));
                    }
                }
            }
        }
        details.push(json!({"x": label, "witness": w}));
    }
    result(
        Outcome::check(failures.is_empty(), || failures.join("; ")),
        json!({"group": g.name(), "mode": c.mode, "seed": seed, "searches": details}),
    )
}

pub fn sweep(c: &SweepCase) -> Result<CaseResult> {
    if let Some(n) = c.symmetric_census {
        let census = symmetric_involution_census(n)?;
        let ok = census.iter().all(|cc| cc.census.all_solvable == (cc.transpositions == 1));
        let rows: Vec<Value> = census
            .iter()
            .map(|cc| json!({"transpositions": cc.transpositions, "all_solvable": cc.census.all_solvable,
                             "class_size": cc.census.class_size, "first_nonsolvable": cc.census.first_nonsolvable}))
            .collect();
        return result(Outcome::check(ok, || "census does not single out transpositions".into()), json!({"n": n, "classes": rows}));
    }
    let g = resolve(c.group.as_deref().ok_or_else(|| Error::Task("sweep needs a group".into()))?)?;
    let xs: Vec<Permutation> = match (&c.x, c.root) {
        (Some(x), _) => vec![parse_cycles(x, g.perm().degree())?],
        (None, Some(kind)) => {
            let cg = catalog_of(&g, "root elements")?;
            root_classes(cg, if kind == RootKind::Transvection { is_transvection } else { is_reflection })?
        }
        _ => return Err(Error::Task("sweep needs x or root".into())),
    };
    let mut censuses = Vec::new();
    let mut ok = c.expect_classes.map_or(true, |n| n == xs.len());
    for x in &xs {
        let census = exhaustive_all_solvable(g.perm(), x, c.mode, &SweepOptions::default())?;
        ok &= census.all_solvable == c.expect_all_solvable;
        censuses.push(census);
    }
    result(
        Outcome::check(ok, || format!("{} classes, all_solvable = {:?}", xs.len(), censuses.iter().map(|c| c.all_solvable).collect::<Vec<_>>())),
        json!({"group": g.name(), "classes": censuses}),
    )
}

pub fn bound(c: &BoundCase, seed: u64) -> Result<CaseResult> {
    match c {
        BoundCase::Psl2 { qs, cases } => {
            let cases = if cases.is_empty() { vec![Psl2Case::PDivQMinus, Psl2Case::PDivQPlus, Psl2Case::Unipotent] } else { cases.clone() };
            let mut rows = Vec::new();
            let mut bad = Vec::new();
            for &q in qs {
                for &case in &cases {
                    let b = psl2_bounds(q, case)?;
                    if b.status == BoundStatus::Fail {
                        bad.push(format!("q = {q} {case}"));
                    }
                    rows.push(serde_json::to_value(&b).expect("serializable"));
                }
            }
            result(Outcome::check(bad.is_empty(), || bad.join(", ")), json!({"rows": rows}))
        }
        BoundCase::Fieldaut { family, q0s, ps, max_q } => {
            let mut rows = Vec::new();
            let mut bad = Vec::new();
            for &q0 in q0s {
                for &p in ps {
                    let q = (q0 as f64).powi(p as i32);
                    if max_q.is_some_and(|m| q > m as f64) {
                        continue;
                    }
                    let b = field_aut_gamma_bound(q0, p, *family)?;
                    if !b.passes {
                        bad.push(format!("q0 = {q0}, p = {p}"));
                    }
                    rows.push(serde_json::to_value(&b).expect("serializable"));
                }
            }
            result(Outcome::check(bad.is_empty() && !rows.is_empty(), || bad.join(", ")), json!({"rows": rows}))
        }
        BoundCase::Countinv { scenario, involutions, expect_pass, search_group, search_orders } => {
            let mut s = load_scenarios()?
                .into_iter()
                .find(|s| &s.name == scenario)
                .ok_or_else(|| Error::Scenario(format!("no scenario {scenario}")))?;
            if let Some(y) = involutions {
                s.involutions = big(y)?;
            }
            let o = countinv_check(&s)?;
            let mut ok = o.passes == *expect_pass;
            let mut found = Vec::new();
            if let Some(gname) = search_group {
                let g = resolve(gname)?;
                let cg = catalog_of(&g, "countinv search")?;
                for &ord in search_orders {
                    let sel = select_element(cg, &ElementSpec::new(ord, Property::Any), seed, 100_000)?;
                    let w = find_nonsolvable(&SearchTask::new(g.perm().clone(), sel.perm, Mode::InvolutionPartner).seed(seed))?;
                    ok &= w.is_some();
                    found.push(json!({"order": ord, "witness": w}));
                }
            }
            result(
                Outcome::check(ok, || format!("|Y| = {} vs {} (passes = {})", o.lhs, o.rhs, o.passes)),
                json!({"scenario": s, "outcome": o, "searches": found}),
            )
        }
        BoundCase::Sz { q, case, involutions, expect_pass } => {
            let y = involutions.as_deref().map(big).transpose()?;
            let o = sz_countinv_chain(*q, *case, y)?;
            result(Outcome::check(o.passes == *expect_pass, || format!("passes = {}", o.passes)), serde_json::to_value(&o).expect("serializable"))
        }
        BoundCase::InvolutionCount { group, psl2_q, exact } => {
            let g = resolve(group)?;
            let n = g.perm().involution_count()?;
            let mut detail = json!({"group": g.name(), "involutions": n.to_string()});
            let mut ok = true;
            if let Some(e) = exact {
                ok &= n == big(e)?;
            }
            if let Some(q) = *psl2_q {
                let qb = BigUint::from(q);
                if q % 2 == 0 {
                    ok &= n == &qb * &qb - 1u32;
                } else {
                    let lower = &qb * (&qb - 1u32) / 2u32;
                    ok &= n >= lower && n == i2_psl2(q);
                    detail["lower_bound"] = json!(lower.to_string());
                    detail["equals_lower_bound"] = json!(n == lower);
                }
            }
            result(Outcome::check(ok, || format!("{} involutions", n)), detail)
        }
    }
}

pub fn ppart(c: &PpartCase) -> Result<CaseResult> {
    let tables = if c.families.is_empty() { load_tables()? } else { c.families.iter().map(|f| load_table(f)).collect::<Result<Vec<_>>>()? };
    let mut checks = Vec::new();
    for t in &tables {
        let rows: Vec<usize> = match &c.row {
            Some(r) => vec![t.find_row(r.e, &r.case).ok_or_else(|| Error::Task(format!("{}: no row {:?} {}", t.family, r.e, r.case)))?],
            None => (0..t.rows.len()).collect(),
        };
        for i in rows {
            for &q in &c.qs {
                checks.push(t.check_row(i, q)?);
            }
        }
    }
    let fails: Vec<String> = checks
        .iter()
        .filter(|r| r.status == RowStatus::Fail)
        .map(|r| format!("{} {} q = {}", r.family, r.case, r.q))
        .collect();
    let passed = checks.iter().filter(|r| r.status == RowStatus::Pass).count();
    let skipped = checks.len() - passed - fails.len();
    let mut outcome = Outcome::check(fails.is_empty(), || fails.join(", "));
    if outcome == Outcome::Pass && passed == 0 {
        outcome = Outcome::Skipped("no primitive prime divisor ≥ 5 at the requested q".into());
    }
    if let (Some(p), Outcome::Pass) = (c.expect_prime, &outcome) {
        if !checks.iter().any(|r| r.primes.iter().any(|x| x.p == p)) {
            outcome = Outcome::Fail(format!("prime {p} not checked"));
        }
    }
    result(outcome, json!({"checked": passed, "skipped": skipped, "rows": checks}))
}

pub fn thompson(c: &ThompsonCase) -> Result<CaseResult> {
    match c {
        ThompsonCase::Table { name, expect_nonsolvable } => {
            let t = load_named(name)?;
            let triple = t.thompson_nonsolvable();
            result(Outcome::check(triple.is_some() == *expect_nonsolvable, || format!("triple: {triple:?}")), json!({"table": name, "triple": triple}))
        }
        ThompsonCase::Corpus { max_order, structure_max_order, min_groups } => {
            let mut rows = Vec::new();
            let mut bad = Vec::new();
            let mut structure_checked = 0;
            let groups: Vec<_> = corpus().into_iter().filter(|g| g.order <= *max_order).collect();
            for g in &groups {
                let cs = ClassStructure::new(&g.group)?;
                let t = table_from_classes(g.name, &cs)?;
                let triple = t.thompson_nonsolvable();
                let solvable = g.group.is_solvable();
                if triple.is_some() == solvable {
                    bad.push(format!("{}: triple {:?}, solvable {solvable}", g.name, triple.as_ref().map(|t| t.orders)));
                }
                if g.order <= *structure_max_order {
                    let brute = cs.brute_force_structure_constants();
                    let r = cs.n_classes();
                    for a in 0..r {
                        for b in 0..r {
                            for k in 0..r {
                                if t.structure_count(a, b, k)? != BigUint::from(brute[a][b][k]) {
                                    bad.push(format!("{}: structure constant ({a},{b},{k})", g.name));
                                }
                            }
                        }
                    }
                    structure_checked += 1;
                }
                rows.push(json!({"group": g.name, "order": g.order, "classes": cs.n_classes(), "solvable": solvable,
                                 "triple": triple.map(|t| t.orders)}));
            }
            let ok = bad.is_empty() && groups.len() >= *min_groups;
            result(
                Outcome::check(ok, || format!("{} groups; {}", groups.len(), bad.join("; "))),
                json!({"groups": groups.len(), "structure_checked": structure_checked, "rows": rows}),
            )
        }
    }
}

pub fn lemma(c: &LemmaCase, seed: u64) -> Result<CaseResult> {
    let cat = Catalog::load_default()?;
    match c {
        LemmaCase::Lift6Exhaustive { group } => {
            let s = exhaustive_lift6(&cat.find(group)?)?;
            result(Outcome::check(s.passes(), || format!("{} of {} candidates fit", s.shape_ok, s.candidates)), serde_json::to_value(&s).expect("serializable"))
        }
        LemmaCase::Lift6Sampled { group, target, max_draws } => {
            let s = sampled_lift6(&cat.find(group)?, *target, *max_draws, seed)?;
            let ok = s.passes() && s.candidates >= *target;
            result(Outcome::check(ok, || format!("{} of {} candidates fit", s.shape_ok, s.candidates)), serde_json::to_value(&s).expect("serializable"))
        }
        LemmaCase::Order9 { group, target, max_draws } => {
            let s = sampled_order9(&cat.find(group)?, *target, *max_draws, seed)?;
            let ok = s.passes() && s.candidates >= *target;
            result(Outcome::check(ok, || format!("{} of {} regular", s.regular, s.candidates)), serde_json::to_value(&s).expect("serializable"))
        }
    }
}

/// Catalog groups: BSGS order against closure of the generators; perfect core against the order polynomial.
pub fn oracle(c: &OracleCase) -> Result<CaseResult> {
    let cat = Catalog::load_default()?;
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for spec in cat.specs()? {
        let bsgs = spec.verify()?;
        let g = spec.realize()?;
        let core = g.perm.perfect_core_order();
        let poly = order_poly_eval(&spec.simple.family, spec.simple.n, spec.simple.q)?;
        if core != poly {
            bad.push(format!("{}: core {core} vs polynomial {poly}", spec.name));
        }
        let mut closure = None;
        if spec.expected_order <= BigUint::from(c.max_order) {
            let n = matrix_closure(&spec.generators, c.max_order as usize);
            if n.map(BigUint::from).as_ref() != Some(&bsgs) {
                bad.push(format!("{}: closure {n:?} vs BSGS {bsgs}", spec.name));
            }
            closure = n;
        }
        rows.push(json!({"group": spec.name, "bsgs_order": bsgs.to_string(), "perfect_core": core.to_string(), "order_polynomial": poly.to_string(), "closure": closure}));
    }
    result(Outcome::check(bad.is_empty(), || bad.join("; ")), json!({"rows": rows}))
}

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
