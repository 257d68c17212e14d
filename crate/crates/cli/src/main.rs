use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cxembed::embed22::{decide_embed22, Answer, Embed22Error, Reason};
use cxembed::format::{parse_any, write_json, write_text, ComplexFile, FormatError};
use cxembed::geometry::{
    check_coset_membership, check_moment_lemma, quoted_moment_sign, GeometryError,
};
use cxembed::homology::betti_mod2;
use cxembed::linalg::LinalgError;
use cxembed::reduction::{
    clause_gadget_general, conflict_gadget_l1, parse_dimacs, reduce, GadgetComplex, ReductionError,
};
use cxembed::vankampen::{verdict_from_vanishing, ObstructionSystem, VanKampenError, Verdict};
use cxembed::SimplicialComplex;

#[derive(Parser)]
#[command(name = "cxembed", version, about = "Embeddability tests for simplicial complexes")]
struct Cli {
    /// Structured JSON output instead of the line report
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Vankampen,
    Plane,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Decide embeddability of a complex
    Decide {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Dimension k for R^{2k}; defaults to the dimension of the complex
        #[arg(long)]
        k: Option<usize>,
        complex: PathBuf,
        /// Write the obstruction system (P, o_gamma, Phi) as JSON
        #[arg(long, value_name = "PATH")]
        dump_obstruction: Option<PathBuf>,
        /// Exit 0 for yes, 10 for no, 11 for inconclusive
        #[arg(long)]
        exit_verdict: bool,
    },
    /// Compile a 3-CNF formula in DIMACS format into a 2-complex
    Reduce {
        cnf: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
    },
    /// Write a standalone gadget complex
    #[command(group(ArgGroup::new("kind").required(true).args(["clause", "conflict"])))]
    Gadget {
        /// Clause gadget CG(k, l)
        #[arg(long, num_args = 2, value_names = ["K", "L"])]
        clause: Option<Vec<usize>>,
        /// Conflict gadget
        #[arg(long)]
        conflict: bool,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
    },
    /// Counts, Euler characteristic and mod-2 Betti numbers
    Info { complex: PathBuf },
    /// Check intersection-number identities on the moment curve or random maps
    #[command(group(ArgGroup::new("check").required(true).args(["moment_lemma", "coset"])))]
    Verify {
        #[arg(long)]
        moment_lemma: bool,
        #[arg(long)]
        coset: bool,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        complex: PathBuf,
    },
}

enum CliError {
    Usage(String),
    Precondition(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Precondition(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<VanKampenError> for CliError {
    fn from(e: VanKampenError) -> Self {
        match e {
            VanKampenError::InvalidK(_) | VanKampenError::DimensionTooLarge { .. } => {
                CliError::Precondition(e.to_string())
            }
            VanKampenError::SymmetryViolation { .. } | VanKampenError::Linalg(_) => {
                CliError::Internal(e.to_string())
            }
        }
    }
}

impl From<Embed22Error> for CliError {
    fn from(e: Embed22Error) -> Self {
        match e {
            Embed22Error::DimensionTooLarge(_) => CliError::Precondition(e.to_string()),
            Embed22Error::OverloadedEdge { .. } => CliError::Internal(e.to_string()),
        }
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::ParameterRange { .. } => CliError::Precondition(e.to_string()),
            ReductionError::Dimacs(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::VanKampen(v) => v.into(),
            GeometryError::Linalg(l) => l.into(),
            GeometryError::NonGeneric(_) | GeometryError::Exhausted(_) | GeometryError::InvalidK(_) => {
                CliError::Precondition(e.to_string())
            }
            other => CliError::Internal(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<SimplicialComplex, CliError> {
    parse_any(&read(path)?)?
        .to_complex()
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write_gadget(g: &GadgetComplex, path: &Path, format: OutFormat) -> Result<(), CliError> {
    let file = ComplexFile::from_complex(&g.complex).with_metadata(g.metadata());
    let text = match format {
        OutFormat::Json => write_json(&file),
        OutFormat::Text => write_text(&file),
    };
    write(path, &text)
}

/// Stdout text plus the process exit code.
struct Outcome {
    text: String,
    code: u8,
}

fn report(json_mode: bool, value: Value, lines: String) -> String {
    if json_mode {
        format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable"))
    } else {
        lines
    }
}

fn info_value(k: &SimplicialComplex) -> Value {
    json!({
        "dim": k.dim(),
        "f_vector": k.f_vector(),
        "euler_characteristic": k.euler_characteristic(),
        "betti_mod2": betti_mod2(k),
    })
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let json_mode = cli.json;
    let ok = |text| Outcome { text, code: 0 };
    match cli.command {
        Command::Decide {
            mode: Mode::Vankampen,
            k,
            complex,
            dump_obstruction,
            exit_verdict,
        } => {
            let cx = load_complex(&complex)?;
            let k = k.unwrap_or(cx.dim());
            let sys = ObstructionSystem::build(&cx, k)?;
            if let Some(path) = dump_obstruction {
                let dump = serde_json::to_string_pretty(&sys.dump()).expect("serializable");
                write(&path, &(dump + "\n"))?;
            }
            let verdict = verdict_from_vanishing(sys.vanishes()?, k);
            let value = json!({
                "mode": "vankampen",
                "k": k,
                "verdict": verdict,
                "pairs": sys.index.len(),
                "columns": sys.phi.cols(),
            });
            let lines = format!(
                "verdict {verdict}\nk {k}\npairs {}\ncolumns {}\n",
                sys.index.len(),
                sys.phi.cols()
            );
            let code = match (exit_verdict, verdict) {
                (false, _) | (true, Verdict::Embeddable) => 0,
                (true, Verdict::NotEmbeddable) => 10,
                (true, Verdict::InconclusiveVanishing) => 11,
            };
            Ok(Outcome {
                text: report(json_mode, value, lines),
                code,
            })
        }
        Command::Decide {
            mode: Mode::Plane,
            complex,
            exit_verdict,
            ..
        } => {
            let cx = load_complex(&complex)?;
            let r = decide_embed22(&cx)?;
            let verdict = match r.verdict {
                Answer::Yes => "YES",
                Answer::No => "NO",
            };
            let mut lines = format!("verdict {verdict}\n");
            let reason = match &r.reason {
                Reason::PlanarityFailure => "PlanarityFailure".to_string(),
                Reason::LinkFailure { vertex } => format!("LinkFailure {vertex}"),
                Reason::HomologicalCycle { triangles } => {
                    format!("HomologicalCycle {}", triangles.len())
                }
                Reason::None => "None".to_string(),
            };
            writeln!(lines, "reason {reason}").expect("string write");
            if let Reason::HomologicalCycle { triangles } = &r.reason {
                for t in triangles {
                    writeln!(lines, "triangle {}", join(t.vertices())).expect("string write");
                }
            }
            let value = json!({ "mode": "plane", "verdict": verdict, "reason": r.reason });
            let code = match (exit_verdict, r.verdict) {
                (false, _) | (true, Answer::Yes) => 0,
                (true, Answer::No) => 10,
            };
            Ok(Outcome {
                text: report(json_mode, value, lines),
                code,
            })
        }
        Command::Reduce { cnf, output, format } => {
            let phi = parse_dimacs(&read(&cnf)?).map_err(ReductionError::from)?;
            let g = reduce(&phi);
            write_gadget(&g, &output, format)?;
            let f = g.complex.f_vector();
            let value = json!({
                "clauses": phi.clauses.len(),
                "conflicts": g.conflicts.len(),
                "f_vector": f,
                "output": output.display().to_string(),
            });
            let lines = format!(
                "clauses {}\nconflicts {}\nf-vector {}\n",
                phi.clauses.len(),
                g.conflicts.len(),
                join(&f)
            );
            Ok(ok(report(json_mode, value, lines)))
        }
        Command::Gadget {
            clause,
            output,
            format,
            ..
        } => {
            let g = match clause.as_deref() {
                Some([k, l]) => clause_gadget_general(*k, *l)?,
                Some(_) => unreachable!("clap enforces two values"),
                None => conflict_gadget_l1(),
            };
            write_gadget(&g, &output, format)?;
            let f = g.complex.f_vector();
            let value = json!({ "f_vector": f, "openings": g.openings.len(), "output": output.display().to_string() });
            let lines = format!("f-vector {}\nopenings {}\n", join(&f), g.openings.len());
            Ok(ok(report(json_mode, value, lines)))
        }
        Command::Info { complex } => {
            let cx = load_complex(&complex)?;
            let f = cx.f_vector();
            let lines = format!(
                "dim {}\nf-vector {}\nchi {}\nbetti {}\n",
                cx.dim(),
                join(&f),
                cx.euler_characteristic(),
                join(&betti_mod2(&cx))
            );
            Ok(ok(report(json_mode, info_value(&cx), lines)))
        }
        Command::Verify {
            moment_lemma,
            k,
            trials,
            seed,
            complex,
            ..
        } => {
            let cx = load_complex(&complex)?;
            let k = k.unwrap_or(cx.dim());
            if moment_lemma {
                let sign = quoted_moment_sign(k);
                let c = check_moment_lemma(&cx, k, sign)?;
                let mut lines = format!(
                    "moment-lemma k={k} sign={sign:+}: {}\n",
                    if c.holds { "PASS" } else { "FAIL" }
                );
                if let Some((s, t, of, og)) = &c.counterexample {
                    writeln!(lines, "counterexample {s} {t} o_f={of} o_gamma={og}").expect("string write");
                }
                let observed = c.observed_sign.map_or("none".to_string(), |s| format!("{s:+}"));
                writeln!(lines, "observed-sign {observed}").expect("string write");
                let value = json!({
                    "check": "moment-lemma",
                    "k": k,
                    "sign": sign,
                    "pass": c.holds,
                    "counterexample": c.counterexample,
                    "observed_sign": c.observed_sign,
                });
                Ok(ok(report(json_mode, value, lines)))
            } else {
                let sign = cxembed::geometry::moment_sign(k);
                let r = check_coset_membership(&cx, k, trials, seed, sign)?;
                let pass = r.failures == 0;
                let mut lines = format!(
                    "coset k={k} trials={trials} seed={seed} sign={sign:+}: {}\n",
                    if pass { "PASS" } else { "FAIL" }
                );
                if let Some(t) = r.first_failure {
                    writeln!(lines, "first-failure trial {t}").expect("string write");
                }
                let value = json!({ "check": "coset", "k": k, "pass": pass, "report": r });
                Ok(ok(report(json_mode, value, lines)))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
