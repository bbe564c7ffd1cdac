use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use nonsolv_cli::groups::resolve;
use nonsolv_cli::report::{all_ok, run_suite};
use nonsolv_cli::scenario;
use nonsolv_core::bounds::counting::{load_scenarios, sz_countinv_chain, SzCase};
use nonsolv_core::bounds::{countinv_check, field_aut_gamma_bound, load_table, psl2_bounds, FieldAutFamily, Psl2Case};
use nonsolv_core::chartab::CharacterTable;
use nonsolv_core::ffmat::Catalog;
use nonsolv_core::perm::parse_cycles;
use nonsolv_core::search::{find_nonsolvable, select_element, ElementSpec, Mode, SearchTask, DEFAULT_BUDGET, DEFAULT_SEED};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "nonsolv", version, about = "Searches and bounds for nonsolvable subgroups of finite groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run scenarios from the catalog, one JSON report per line.
    Run {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall-clock timings (makes reports nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// List scenario ids.
    List,
    /// Print one scenario definition.
    Show { id: String },
    /// Look for x and conjugates/partners generating a nonsolvable subgroup.
    Search {
        #[arg(long)]
        group: String,
        /// `ORDER[:PROPERTY]`, e.g. `6:transvection`.
        #[arg(long, conflicts_with = "x")]
        element: Option<String>,
        /// `x` in 1-based cycle notation.
        #[arg(long)]
        x: Option<String>,
        #[arg(long, default_value = "pair")]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        exhaustive: bool,
    },
    /// Evaluate one counting bound.
    Bounds {
        #[arg(long)]
        lemma: String,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        scenario: Option<String>,
        /// Override `|Y|` for countinv/sz.
        #[arg(long)]
        involutions: Option<String>,
    },
    /// Check p-part table rows at one q.
    Ppart {
        #[arg(long)]
        family: String,
        #[arg(long)]
        q: u64,
        /// `e,case`, e.g. `18,Phi18`; omit e as `,case`.
        #[arg(long)]
        row: Option<String>,
    },
    /// Thompson's criterion on a character table.
    Table {
        /// Shipped table name or a group name to compute the table of.
        #[arg(long, conflicts_with = "file")]
        name: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Also print all structure constants.
        #[arg(long)]
        structure: bool,
    },
    /// Inspect the matrix-group catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    /// Dump the catalog as JSON.
    Export,
    /// Recompute every order with Schreier–Sims.
    Verify {
        #[arg(long)]
        name: Option<String>,
    },
}

fn print(v: &Value) {
    // A closed pipe (`| head`) is not an error worth a panic.
    let _ = writeln!(io::stdout(), "{}", serde_json::to_string_pretty(v).expect("json"));
}

fn search(group: &str, element: Option<String>, x: Option<String>, mode: Mode, budget: u64, seed: u64, exhaustive: bool) -> Result<bool> {
    let g = resolve(group)?;
    let (x, label) = match (x, element) {
        (Some(x), _) => (parse_cycles(&x, g.perm().degree())?, x),
        (None, Some(e)) => {
            let spec: ElementSpec = e.parse()?;
            let cg = g.catalog().ok_or_else(|| anyhow!("--element needs a matrix group"))?;
            (select_element(cg, &spec, seed, 100_000)?.perm, spec.to_string())
        }
        (None, None) => bail!("give --x or --element"),
    };
    let task = SearchTask::new(g.perm().clone(), x, mode).budget(budget).seed(seed).exhaustive(exhaustive);
    let w = find_nonsolvable(&task)?;
    print(&json!({"group": g.name(), "x": label, "mode": mode, "budget": budget, "seed": seed, "found": w.is_some(), "witness": w}));
    Ok(w.is_some())
}

fn bounds(lemma: &str, q: Option<u64>, p: Option<u64>, case: Option<String>, family: Option<String>, scenario: Option<String>, inv: Option<String>) -> Result<bool> {
    let need_q = || q.ok_or_else(|| anyhow!("--q is required"));
    let inputs = json!({"lemma": lemma, "q": q, "p": p, "case": case, "family": family, "scenario": scenario, "involutions": inv});
    let inv = inv.map(|s| s.parse::<num_bigint::BigUint>()).transpose().context("--involutions")?;
    let (values, passes) = match lemma {
        "psl2" => {
            let case: Psl2Case = case.as_deref().unwrap_or("p_div_q_minus").parse()?;
            let b = psl2_bounds(need_q()?, case)?;
            let ok = b.status.ok();
            (serde_json::to_value(b)?, ok)
        }
        "fieldaut" => {
            let fam = match family.as_deref().unwrap_or("PSL2") {
                "PSL2" => FieldAutFamily::Psl2,
                "Sz" => FieldAutFamily::Sz,
                f => bail!("unknown family {f}"),
            };
            let b = field_aut_gamma_bound(need_q()?, p.ok_or_else(|| anyhow!("--p is required"))?, fam)?;
            let ok = b.passes;
            (serde_json::to_value(b)?, ok)
        }
        "countinv" => {
            let name = scenario.ok_or_else(|| anyhow!("--scenario is required"))?;
            let mut s = load_scenarios()?.into_iter().find(|s| s.name == name).ok_or_else(|| anyhow!("no scenario {name}"))?;
            if let Some(y) = inv {
                s.involutions = y;
            }
            let o = countinv_check(&s)?;
            let ok = o.passes;
            (json!({"scenario": s, "outcome": o}), ok)
        }
        "sz" => {
            let case: SzCase = case.as_deref().unwrap_or("q_minus_r").parse()?;
            let o = sz_countinv_chain(need_q()?, case, inv)?;
            let ok = o.passes;
            (serde_json::to_value(o)?, ok)
        }
        l => bail!("unknown lemma {l} (countinv, psl2, fieldaut, sz)"),
    };
    print(&json!({"inputs": inputs, "values": values, "passes": passes}));
    Ok(passes)
}

fn ppart(family: &str, q: u64, row: Option<String>) -> Result<bool> {
    let t = load_table(family)?;
    let rows: Vec<usize> = match row {
        Some(r) => {
            let (e, case) = r.split_once(',').ok_or_else(|| anyhow!("--row is e,case"))?;
            let e = if e.trim().is_empty() { None } else { Some(e.trim().parse()?) };
            vec![t.find_row(e, case.trim()).ok_or_else(|| anyhow!("no row {r} in {family}"))?]
        }
        None => (0..t.rows.len()).collect(),
    };
    let checks = rows.into_iter().map(|i| t.check_row(i, q)).collect::<nonsolv_core::Result<Vec<_>>>()?;
    let ok = checks.iter().all(|c| c.passes());
    print(&json!({"family": t.family, "q": q, "rows": checks, "passes": ok}));
    Ok(ok)
}

fn table(name: Option<String>, file: Option<PathBuf>, structure: bool) -> Result<bool> {
    let t = match (name, file) {
        (_, Some(f)) => CharacterTable::load(&f)?,
        (Some(n), None) => match nonsolv_core::chartab::load_named(&n) {
            Ok(t) => t,
            Err(_) => nonsolv_core::chartab::character_table(&n, resolve(&n)?.perm())?,
        },
        (None, None) => bail!("give --name or --file"),
    };
    let triple = t.thompson_nonsolvable();
    let mut out = json!({
        "table": t.name(), "order": t.order().to_string(), "classes": t.n_classes(),
        "degrees": t.degrees(), "nonsolvable": triple.is_some(), "triple": triple,
    });
    if structure {
        let r = t.n_classes();
        let mut consts = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    consts.push(json!([a, b, c, t.structure_count(a, b, c)?.to_string()]));
                }
            }
        }
        out["structure_counts"] = json!(consts);
    }
    print(&out);
    Ok(true)
}

fn catalog(action: CatalogCmd) -> Result<bool> {
    let cat = Catalog::load_default()?;
    match action {
        CatalogCmd::List => {
            for r in &cat.groups {
                writeln!(io::stdout(), "{}\t{}\t{}", r.name, r.expected_order, r.aliases.join(","))?;
            }
            Ok(true)
        }
        CatalogCmd::Export => {
            writeln!(io::stdout(), "{}", serde_json::to_string_pretty(&cat.groups)?)?;
            Ok(true)
        }
        CatalogCmd::Verify { name } => {
            let mut ok = true;
            for spec in cat.specs()? {
                if name.as_deref().is_some_and(|n| !spec.matches_name(n)) {
                    continue;
                }
                let res = spec.verify();
                ok &= res.is_ok();
                println!("{}\t{}", spec.name, match res {
                    Ok(n) => format!("ok {n}"),
                    Err(e) => format!("FAILED {e}"),
                });
            }
            Ok(ok)
        }
    }
}

fn run() -> Result<bool> {
    match Cli::parse().cmd {
        Cmd::Run { suite, seed, workers, out, timing } => {
            let reports = run_suite(&suite, seed, workers.max(1), timing)?;
            let mut w: Box<dyn Write> = match out {
                Some(p) => Box::new(BufWriter::new(File::create(&p).with_context(|| p.display().to_string())?)),
                None => Box::new(io::stdout().lock()),
            };
            for r in &reports {
                writeln!(w, "{}", serde_json::to_string(r)?)?;
                eprintln!("{:8} {}{}", r.outcome.to_uppercase(), r.scenario, r.reason.as_deref().map(|s| format!(": {s}")).unwrap_or_default());
            }
            Ok(all_ok(&reports))
        }
        Cmd::List => {
            for s in scenario::load_default()? {
                writeln!(io::stdout(), "{}\t{}\t{}", s.id, s.body.kind(), s.description)?;
            }
            Ok(true)
        }
        Cmd::Show { id } => {
            let s = scenario::load_default()?.into_iter().find(|s| s.id == id).ok_or_else(|| anyhow!("no scenario {id}"))?;
            print(&serde_json::to_value(&s)?);
            Ok(true)
        }
        Cmd::Search { group, element, x, mode, budget, seed, exhaustive } => search(&group, element, x, mode, budget, seed, exhaustive),
        Cmd::Bounds { lemma, q, p, case, family, scenario, involutions } => bounds(&lemma, q, p, case, family, scenario, involutions),
        Cmd::Ppart { family, q, row } => ppart(&family, q, row),
        Cmd::Table { name, file, structure } => table(name, file, structure),
        Cmd::Catalog { action } => catalog(action),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

