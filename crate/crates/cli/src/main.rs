//! `positroid`: enumerate, decompose and verify positroids of interval matrices.
//!
//! Exit status: 0 on success, 1 when a cross-check disagrees or a theorem
//! check fails, 2 on malformed input, 3 when a configured size bound is exceeded.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use positroid::catalan::set_catalan_cache;
use positroid::diagram::{pattern_dmw, shift_w_pattern};
use positroid::error::check_bound;
use positroid::perm::{classify_positions, g_stat, perm_leq};
use positroid::positroid::{enumerate_pw, q_family, Strategy};
use positroid::transversal::pattern_mw;
use positroid::tutte::{rank_in_pw, ClosedForm};
use positroid::verify::{run_suite, Suite};
use positroid::{Bounds, Error, Permutation, SetFamily, Subset};

#[derive(Parser)]
#[command(
    name = "positroid",
    version,
    about = "Positroids P_w, their Catalan decomposition and diagram matroids"
)]
struct Cli {
    /// TOML file overriding the size bounds.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the bases of P_w (or of DM_w with `--source diagram`).
    Bases {
        w: String,
        #[arg(long, value_enum, default_value_t = Source::Positroid)]
        source: Source,
        /// Only the piece Q_w of the decomposition (requires `--source qunion`).
        #[arg(long)]
        only_q: bool,
        /// Compare against an independent computation; exit 1 on disagreement.
        #[arg(long)]
        cross_check: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Tutte polynomial of P_w.
    Tutte {
        w: String,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Rank of a set of columns in P_w.
    Rank {
        w: String,
        /// Comma-separated elements of [2n], e.g. `1,4`.
        set: String,
        #[arg(long)]
        cross_check: bool,
    },
    /// The pieces Q_v (v ≥ w, v avoiding 123) whose union is P_w.
    Decompose {
        w: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    /// Filter all n-subsets by the Bruhat test on v_I.
    Positroid,
    /// Bipartite matching on the generic matrix M_w.
    Oracle,
    /// Union of the pieces Q_v.
    Qunion,
    /// The diagram matroid DM_w.
    Diagram,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Rank,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Theorems,
    Conjectures,
    Identities,
}

enum Failure {
    Lib(Error),
    Disagreement(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = std::result::Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Disagreement(msg)) => {
            eprintln!("positroid: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("positroid: {e}");
            ExitCode::from(match e {
                Error::Resource { .. } => 3,
                _ => 2,
            })
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let bounds = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
            })?;
            Bounds::from_toml(&text)?
        }
        None => Bounds::default(),
    };
    set_catalan_cache(bounds.catalan_cache);
    match cli.command {
        Command::Bases {
            w,
            source,
            only_q,
            cross_check,
            format,
        } => bases(&w.parse()?, source, only_q, cross_check, format, &bounds),
        Command::Tutte { w, method, format } => tutte(&w.parse()?, method, format, &bounds),
        Command::Rank {
            w,
            set,
            cross_check,
        } => rank(&w.parse()?, &set, cross_check),
        Command::Decompose { w, format } => decompose(&w.parse()?, format, &bounds),
        Command::Verify { suite, n, seed } => verify(suite, n, seed, &bounds),
    }
}

fn bases(
    w: &Permutation,
    source: Source,
    only_q: bool,
    cross_check: bool,
    format: Format,
    bounds: &Bounds,
) -> Outcome {
    let rows = bounds.max_basis_rows;
    let family = match (source, only_q) {
        (Source::Qunion, true) => q_family(w)?,
        (_, true) => {
            return Err(Error::InvalidArgument("--only-q requires --source qunion".into()).into())
        }
        (Source::Positroid, _) => enumerate_pw(w, Strategy::VWordFilter, rows)?,
        (Source::Qunion, _) => enumerate_pw(w, Strategy::QUnion, rows)?,
        (Source::Oracle, _) => pattern_mw(w).enumerate_bases(rows)?,
        (Source::Diagram, _) => pattern_dmw(w).enumerate_bases(rows)?,
    };
    if cross_check {
        let (reference, what) = match (source, only_q) {
            (Source::Diagram, _) => (
                shift_w_pattern(w, &pattern_mw(w))?.enumerate_bases(rows)?,
                "the shifted matrix shift_w M_w",
            ),
            (_, true) => {
                let pw = pattern_mw(w).enumerate_bases(rows)?;
                let higher: Vec<SetFamily> = Permutation::all(w.len())
                    .filter(|v| v != w && perm_leq(w, v))
                    .map(|v| pattern_mw(&v).enumerate_bases(rows))
                    .collect::<positroid::Result<_>>()?;
                let q = pw.iter().filter(|s| higher.iter().all(|h| !h.contains(*s)));
                (
                    SetFamily::new(pw.ground(), q)?,
                    "P_w minus the P_v for v > w",
                )
            }
            (Source::Oracle, _) => (
                enumerate_pw(w, Strategy::VWordFilter, rows)?,
                "the Bruhat membership test",
            ),
            _ => (pattern_mw(w).enumerate_bases(rows)?, "the matching oracle"),
        };
        if reference != family {
            return Err(Failure::Disagreement(format!(
                "{} sets from this source, {} from {what}",
                family.len(),
                reference.len()
            )));
        }
    }
    Ok(match format {
        Format::Text => {
            let mut out = String::new();
            for set in family.iter() {
                writeln!(out, "{set}").unwrap();
            }
            writeln!(out, "count: {}", family.len()).unwrap();
            out
        }
        Format::Csv => family.iter().map(|s| format!("{s}\n")).collect(),
        Format::Json => {
            let report =
                json!({"permutation": w.to_string(), "count": family.len(), "bases": family});
            format!("{report}\n")
        }
    })
}

fn tutte(w: &Permutation, method: Method, format: Format, bounds: &Bounds) -> Outcome {
    let closed = match method {
        Method::Closed | Method::Both => {
            Some(ClosedForm::new(w.len(), bounds.max_closed_form_n)?.tutte(w)?)
        }
        Method::Rank => None,
    };
    let by_rank = match method {
        Method::Rank | Method::Both => Some(pattern_mw(w).tutte_by_rank(bounds.max_tutte_ground)?),
        Method::Closed => None,
    };
    if let (Some(c), Some(r)) = (&closed, &by_rank) {
        if c != r {
            return Err(Failure::Disagreement(format!(
                "closed form {c} but rank sum {r}"
            )));
        }
    }
    let poly = closed.or(by_rank).expect("at least one method ran");
    Ok(match format {
        Format::Json => format!(
            "{}\n",
            json!({"permutation": w.to_string(), "polynomial": poly.to_string(), "terms": poly})
        ),
        _ => format!("{poly}\n"),
    })
}

fn rank(w: &Permutation, set: &str, cross_check: bool) -> Outcome {
    let set: Subset = set.parse()?;
    if !set.is_subset(Subset::full(2 * w.len())) {
        return Err(Error::InvalidArgument(format!(
            "{{{set}}} is not a subset of [{}]",
            2 * w.len()
        ))
        .into());
    }
    let r = rank_in_pw(w, set)?;
    if cross_check {
        let oracle = pattern_mw(w).rank_of(set);
        if oracle != r {
            return Err(Failure::Disagreement(format!(
                "rank {r} but matching oracle gives {oracle}"
            )));
        }
    }
    Ok(format!("{r}\n"))
}

fn decompose(w: &Permutation, format: Format, bounds: &Bounds) -> Outcome {
    let n = w.len();
    check_bound("permutation size", n, bounds.max_closed_form_n)?;
    let rows: Vec<(Permutation, String, usize)> = Permutation::avoiding_123(n)
        .into_iter()
        .filter(|v| perm_leq(w, v))
        .map(|v| {
            let runs = classify_positions(&v)
                .runs
                .iter()
                .map(|r| format!("[{},{}]", r.start, r.end))
                .collect::<Vec<_>>()
                .join(" ");
            let size = q_family(&v).map(|q| q.len());
            size.map(|s| (v, runs, s))
        })
        .collect::<positroid::Result<_>>()?;
    let total: usize = rows.iter().map(|r| r.2).sum();
    Ok(match format {
        Format::Text => {
            let mut out = format!("{:<width$}  {:>6}  runs\n", "v", "#Q_v", width = n.max(1));
            for (v, runs, size) in &rows {
                writeln!(
                    out,
                    "{:<width$}  {size:>6}  {runs}",
                    v.to_string(),
                    width = n.max(1)
                )
                .unwrap();
            }
            writeln!(out, "total: {total}").unwrap();
            out
        }
        Format::Csv => {
            let mut out = String::from("v,g,q_size,runs\n");
            for (v, runs, size) in &rows {
                writeln!(out, "{v},{},{size},{runs}", g_stat(v)).unwrap();
            }
            out
        }
        Format::Json => {
            let pieces: Vec<_> = rows
                .iter()
                .map(|(v, runs, size)| json!({"v": v.to_string(), "g": g_stat(v).to_string(), "q_size": size, "runs": runs}))
                .collect();
            format!(
                "{}\n",
                json!({"permutation": w.to_string(), "total": total, "pieces": pieces})
            )
        }
    })
}

fn verify(suite: SuiteArg, n: usize, seed: u64, bounds: &Bounds) -> Outcome {
    let suite = match suite {
        SuiteArg::Theorems => Suite::Theorems,
        SuiteArg::Conjectures => Suite::Conjectures,
        SuiteArg::Identities => Suite::Identities,
    };
    let report = run_suite(suite, n, seed, bounds)?;
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    if report.succeeded() {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::Disagreement(format!(
            "{suite:?} suite reported failures"
        )))
    }
}
