//! Command-line front end: emits the cohomology tables and the numerical
//! invariants of the dimension-two distribution families on `P^4` in human
//! and machine formats, runs the symbolic fixture suite, and evaluates
//! Chern-class expression files.
//!
//! Exit codes: 0 on success, 1 when a verification reports a mismatch,
//! 2 on usage or input errors.

mod expr;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use hmdist_core::cohomology::{self, CohomologyTable};
use hmdist_core::dist::{
    self, classify_numeric, rao_per_twist, HmDistribution, RaoDimension, RaoH1,
};
use hmdist_core::fixtures::{run_all, FixtureSource};
use hmdist_core::intersection::Side;
use hmdist_core::rational::rat;
use output::{aligned, csv_rows, rat_json, rat_text, CommandResult, Format, Status};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

/// Environment variable overriding the directory of the cohomology table
/// data files (`hm_e.tbl`, `hm_ee.tbl`).
const DATA_DIR_VAR: &str = "HMDIST_DATA_DIR";
/// Environment variable overriding the directory of the form fixtures.
const FIXTURE_DIR_VAR: &str = "HMDIST_FIXTURE_DIR";

#[derive(Parser)]
#[command(
    name = "hmdist",
    version,
    about = "Exact invariants of dimension-two distributions on P^4"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology dimension tables.
    Tables {
        #[command(subcommand)]
        which: TablesCommand,
    },
    /// Dimensions h^q(P^n, Omega^p(k)) from the closed formula.
    Bott {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Invariants of the degree-(2a+6) distribution with conormal E(-a-7).
    Invariants {
        #[arg(long)]
        a: i64,
        /// Also print the alternate closed forms (degree convention 2a+5);
        /// these disagree with the derivation and are shown for comparison.
        #[arg(long)]
        alt: bool,
    },
    /// Rao-module dimension of the singular scheme.
    Rao {
        #[arg(long)]
        a: i64,
        /// List h^1 per twist over the support window.
        #[arg(long)]
        per_twist: bool,
    },
    /// Hom- and moduli-space dimensions of the family.
    Moduli {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        alt: bool,
    },
    /// Arithmetic feasibility search for degree 1 and 2 distributions.
    Classify {
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        degree: u32,
    },
    /// Hilbert polynomial chi(E(-a-7+t)) of the conormal sheaf.
    Hilbert {
        #[arg(long)]
        a: i64,
    },
    /// Verification suites.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Evaluate a Chern-class expression file.
    Chern { file: PathBuf },
}

#[derive(Subcommand)]
enum TablesCommand {
    /// h^i(E(k)) for the Horrocks-Mumford bundle.
    Hm {
        /// Twist range `lo..hi` (default: the explicitly tabulated window).
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
    },
    /// h^i((E (x) E)(k)).
    HmTensor {
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Run the symbolic fixture checks (wedges, brackets, pencils).
    Fixtures {
        /// Run a single named check.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Tangent,
    Conormal,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Tangent => Side::Tangent,
            SideArg::Conormal => Side::Conormal,
        }
    }
}

fn fail(msg: String) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match run(&cli.command) {
        Ok(r) => r,
        Err(msg) => return fail(msg),
    };
    let rendered = result.render(cli.format);
    match &cli.out {
        None => print!("{rendered}"),
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                return fail(format!("cannot write {}: {e}", path.display()));
            }
        }
    }
    ExitCode::from(result.status.exit_code() as u8)
}

fn load_table(file: &str, embedded: &'static CohomologyTable) -> Result<CohomologyTable, String> {
    match std::env::var_os(DATA_DIR_VAR) {
        None => Ok(embedded.clone()),
        Some(dir) => {
            let path = PathBuf::from(dir).join(file);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            CohomologyTable::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
        }
    }
}

fn fixture_source() -> FixtureSource {
    match std::env::var_os(FIXTURE_DIR_VAR) {
        None => FixtureSource::Embedded,
        Some(dir) => FixtureSource::Dir(PathBuf::from(dir)),
    }
}

fn parse_range(spec: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = spec
        .split_once("..")
        .ok_or_else(|| format!("range must be `lo..hi`, got `{spec}`"))?;
    let lo = lo
        .parse::<i64>()
        .map_err(|_| format!("bad range bound `{lo}`"))?;
    let hi = hi
        .parse::<i64>()
        .map_err(|_| format!("bad range bound `{hi}`"))?;
    if lo > hi {
        return Err(format!("empty range `{spec}`"));
    }
    Ok((lo, hi))
}

fn run(command: &Command) -> Result<CommandResult, String> {
    match command {
        Command::Tables { which } => {
            let (table, file, provenance, range) = match which {
                TablesCommand::Hm { range } => (
                    load_table("hm_e.tbl", cohomology::hm_table())?,
                    "e",
                    vec!["table:e", "chi:e", "serre:e"],
                    range,
                ),
                TablesCommand::HmTensor { range } => (
                    load_table("hm_ee.tbl", cohomology::hm_tensor_table())?,
                    "ee",
                    vec!["table:ee", "chi:ee", "serre:ee"],
                    range,
                ),
            };
            let (lo, hi) = match range {
                Some(spec) => parse_range(spec)?,
                None => {
                    let w = table.explicit_twists();
                    (*w.first().unwrap(), *w.last().unwrap())
                }
            };
            let mut rows_json = Vec::new();
            let mut rows_h = vec![vec![
                "k".to_string(),
                "h0".into(),
                "h1".into(),
                "h2".into(),
                "h3".into(),
                "h4".into(),
            ]];
            let mut rows_csv = Vec::new();
            for k in lo..=hi {
                let dims = table.dimensions(k).map_err(|e| format!("twist {k}: {e}"))?;
                rows_json.push(json!({"k": k, "h": dims}));
                let mut row = vec![k.to_string()];
                row.extend(dims.iter().map(u64::to_string));
                rows_h.push(row.clone());
                rows_csv.push(row);
            }
            let chi: Vec<Value> = table.chi.coeffs().iter().map(rat_json).collect();
            Ok(CommandResult {
                status: Status::Ok,
                payload: json!({
                    "table": file,
                    "dual_twist": table.dual_twist,
                    "chi_coefficients": chi,
                    "rows": rows_json,
                }),
                human: aligned(&rows_h),
                csv: csv_rows(&["k", "h0", "h1", "h2", "h3", "h4"], &rows_csv),
                provenance,
            })
        }
        Command::Bott { n, p, k } => {
            let v = cohomology::bott(*n, *p, *k).map_err(|e| e.to_string())?;
            let dims: Vec<u64> = v.known_values().expect("closed formula");
            let row: Vec<String> = dims.iter().map(u64::to_string).collect();
            let mut header: Vec<String> = (0..=*n).map(|q| format!("h{q}")).collect();
            header.insert(0, "k".into());
            let mut hrow = vec![k.to_string()];
            hrow.extend(row.clone());
            Ok(CommandResult {
                status: Status::Ok,
                payload: json!({"n": n, "p": p, "k": k, "h": dims}),
                human: aligned(&[header.clone(), hrow.clone()]),
                csv: csv_rows(
                    &header.iter().map(String::as_str).collect::<Vec<_>>(),
                    &[hrow],
                ),
                provenance: vec!["bott"],
            })
        }
        Command::Invariants { a, alt } => {
            let d = HmDistribution::compute(*a).map_err(|e| e.to_string())?;
            let chern: Vec<Value> = d.conormal.chern().coeffs().iter().map(rat_json).collect();
            let rao = rao_json(&d.rao);
            let mut payload = json!({
                "a": d.a,
                "degree": d.degree,
                "conormal": {"rank": d.conormal.rank(), "chern": chern},
                "deg_z": d.deg_z,
                "pa": rat_json(&d.pa),
                "rao_dimension": rao,
                "hypersurface_degree_bound": d.degree_bound,
                "hom_dim": d.hom_dim.to_string(),
                "moduli_dim": d.moduli_dim.to_string(),
            });
            let mut rows = vec![
                vec!["a".to_string(), d.a.to_string()],
                vec!["degree".into(), d.degree.to_string()],
                vec!["conormal".into(), format!("{}", d.conormal)],
                vec!["deg Z".into(), d.deg_z.to_string()],
                vec!["pa Z".into(), rat_text(&d.pa)],
                vec!["rao".into(), rao_text(&d.rao)],
                vec!["degree bound".into(), d.degree_bound.to_string()],
                vec!["hom dim".into(), d.hom_dim.to_string()],
                vec!["moduli dim".into(), d.moduli_dim.to_string()],
            ];
            if *alt {
                let (deg_alt, pa_alt) = dist::hm_invariants_alt(*a);
                let moduli_alt = dist::moduli_dimension_alt(*a);
                payload["alternate"] = json!({
                    "deg_z": deg_alt,
                    "pa": rat_json(&pa_alt),
                    "moduli_dim": rat_json(&moduli_alt),
                    "note": "alternate closed forms in the 2a+5 degree convention; inconsistent with the derivation",
                });
                rows.push(vec!["deg Z (alt)".into(), deg_alt.to_string()]);
                rows.push(vec!["pa Z (alt)".into(), rat_text(&pa_alt)]);
                rows.push(vec!["moduli (alt)".into(), rat_text(&moduli_alt)]);
            }
            let csv: Vec<Vec<String>> = rows.clone();
            Ok(CommandResult {
                status: Status::Ok,
                payload,
                human: aligned(&rows),
                csv: csv_rows(&["quantity", "value"], &csv),
                provenance: vec![
                    "closed-form:deg-z",
                    "closed-form:genus",
                    "en:conormal",
                    "table:ee",
                    "vanishing:omega-e",
                    "chi:e",
                ],
            })
        }
        Command::Rao { a, per_twist } => {
            let dim = dist::rao_dimension(*a).map_err(|e| e.to_string())?;
            let mut payload = json!({"a": a, "dimension": rao_json(&dim)});
            let mut rows = vec![vec!["rao dimension".to_string(), rao_text(&dim)]];
            let mut csv = vec![];
            if *per_twist {
                let per = rao_per_twist(*a).map_err(|e| e.to_string())?;
                let mut jrows = Vec::new();
                rows.push(vec!["twist".into(), "h1".into()]);
                for (q, v) in &per {
                    let text = match v {
                        RaoH1::Known(n) => n.to_string(),
                        RaoH1::Gap => "gap".to_string(),
                    };
                    jrows.push(json!({"q": q, "h1": match v {
                        RaoH1::Known(n) => json!(n),
                        RaoH1::Gap => json!("gap"),
                    }}));
                    rows.push(vec![q.to_string(), text.clone()]);
                    csv.push(vec![q.to_string(), text]);
                }
                payload["per_twist"] = Value::Array(jrows);
            }
            Ok(CommandResult {
                status: Status::Ok,
                payload,
                human: aligned(&rows),
                csv: if csv.is_empty() {
                    csv_rows(
                        &["quantity", "value"],
                        &[vec!["rao_dimension".to_string(), rao_text(&dim)]],
                    )
                } else {
                    csv_rows(&["q", "h1"], &csv)
                },
                provenance: vec![
                    "table:ee",
                    "vanishing:omega-e",
                    "vanishing:e-e",
                    "chi:omega-e",
                ],
            })
        }
        Command::Moduli { a, alt } => {
            let hom = dist::hom_dimension(*a).map_err(|e| e.to_string())?;
            let moduli = dist::moduli_dimension(*a).map_err(|e| e.to_string())?;
            let mut payload = json!({
                "a": a,
                "hom_dim": hom.to_string(),
                "moduli_dim": moduli.to_string(),
            });
            let mut rows = vec![
                vec!["hom dim".to_string(), hom.to_string()],
                vec!["moduli dim".into(), moduli.to_string()],
            ];
            if *alt {
                let m = dist::moduli_dimension_alt(*a);
                payload["moduli_dim_alternate"] = rat_json(&m);
                rows.push(vec!["moduli (alt)".into(), rat_text(&m)]);
            }
            Ok(CommandResult {
                status: Status::Ok,
                payload,
                human: aligned(&rows),
                csv: csv_rows(&["quantity", "value"], &rows),
                provenance: vec!["chi:e", "closed-form:moduli"],
            })
        }
        Command::Classify { side, degree } => {
            let side: Side = (*side).into();
            let all = classify_numeric(side, *degree).map_err(|e| e.to_string())?;
            let mut jrows = Vec::new();
            let mut rows = vec![vec![
                "degZ".to_string(),
                "branch".into(),
                "c1".into(),
                "c2".into(),
                "pa".into(),
                "survives".into(),
                "rejected by".into(),
            ]];
            let mut csv = Vec::new();
            for c in &all {
                let rejected = c
                    .rejected_by()
                    .map(|f| f.name().to_string())
                    .unwrap_or_default();
                jrows.push(json!({
                    "deg_z": c.deg_z,
                    "branch": c.branch.to_string(),
                    "c1": c.c1,
                    "c2": rat_json(&c.c2),
                    "pa": rat_json(&c.pa),
                    "survives": c.survives(),
                    "failed_filters": c.failed.iter().map(|f| f.name()).collect::<Vec<_>>(),
                }));
                let row = vec![
                    c.deg_z.to_string(),
                    c.branch.to_string(),
                    c.c1.to_string(),
                    rat_text(&c.c2),
                    rat_text(&c.pa),
                    c.survives().to_string(),
                    rejected,
                ];
                rows.push(row.clone());
                csv.push(row);
            }
            Ok(CommandResult {
                status: Status::Ok,
                payload: json!({
                    "side": side.to_string(),
                    "degree": degree,
                    "candidates": jrows,
                    "survivors": all.iter().filter(|c| c.survives()).map(|c| c.deg_z).collect::<Vec<_>>(),
                }),
                human: aligned(&rows),
                csv: csv_rows(
                    &[
                        "deg_z",
                        "branch",
                        "c1",
                        "c2",
                        "pa",
                        "survives",
                        "rejected_by",
                    ],
                    &csv,
                ),
                provenance: vec![
                    "closed-form:c2",
                    "closed-form:genus",
                    "filter:bogomolov",
                    "filter:schwarzenberger",
                ],
            })
        }
        Command::Hilbert { a } => {
            let p = dist::hm_hilbert_polynomial(*a).map_err(|e| e.to_string())?;
            let coeffs: Vec<Value> = p.coeffs().iter().map(rat_json).collect();
            let mut rows = vec![vec!["P(t)".to_string(), p.to_string()]];
            let mut csv = Vec::new();
            for (i, c) in p.coeffs().iter().enumerate() {
                csv.push(vec![i.to_string(), rat_text(c)]);
            }
            for t in 0..=4i64 {
                rows.push(vec![format!("P({t})"), rat_text(&p.eval(&rat(t)))]);
            }
            Ok(CommandResult {
                status: Status::Ok,
                payload: json!({"a": a, "coefficients": coeffs}),
                human: aligned(&rows),
                csv: csv_rows(&["degree", "coefficient"], &csv),
                provenance: vec!["chi:e"],
            })
        }
        Command::Verify { what } => match what {
            VerifyCommand::Fixtures { only } => {
                let src = fixture_source();
                let reports = run_all(only.as_deref(), &src).map_err(|e| e.to_string())?;
                let all_ok = reports.iter().all(|r| r.ok);
                let mut jrows = Vec::new();
                let mut rows = Vec::new();
                let mut csv = Vec::new();
                for r in &reports {
                    jrows.push(json!({"check": r.name, "ok": r.ok, "details": r.details}));
                    rows.push(vec![
                        if r.ok {
                            "ok".to_string()
                        } else {
                            "MISMATCH".into()
                        },
                        r.name.to_string(),
                        r.details.clone(),
                    ]);
                    csv.push(vec![
                        r.name.to_string(),
                        r.ok.to_string(),
                        r.details.clone(),
                    ]);
                }
                Ok(CommandResult {
                    status: if all_ok { Status::Ok } else { Status::Mismatch },
                    payload: json!({"checks": jrows}),
                    human: aligned(&rows),
                    csv: csv_rows(&["check", "ok", "details"], &csv),
                    provenance: vec!["fixtures"],
                })
            }
        },
        Command::Chern { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
            let outcome = expr::evaluate(&text)?;
            let status = if outcome.mismatches == 0 {
                Status::Ok
            } else {
                Status::Mismatch
            };
            let csv: Vec<Vec<String>> = outcome
                .human_rows
                .iter()
                .map(|r| vec![r[0].clone(), r.get(2).cloned().unwrap_or_default()])
                .collect();
            Ok(CommandResult {
                status,
                payload: json!({
                    "records": outcome.records,
                    "mismatches": outcome.mismatches,
                }),
                human: aligned(&outcome.human_rows),
                csv: csv_rows(&["expression", "value"], &csv),
                provenance: vec!["intersection-ring"],
            })
        }
    }
}

fn rao_json(d: &RaoDimension) -> Value {
    match d {
        RaoDimension::Exact(n) => json!({"exact": n}),
        RaoDimension::AtLeast { lower, gap_twists } => {
            json!({"at_least": lower, "gap_twists": gap_twists})
        }
    }
}

fn rao_text(d: &RaoDimension) -> String {
    match d {
        RaoDimension::Exact(n) => n.to_string(),
        RaoDimension::AtLeast { lower, gap_twists } => {
            format!(">= {lower} (uncovered twists {gap_twists:?})")
        }
    }
}
