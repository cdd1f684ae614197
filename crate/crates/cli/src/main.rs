use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use monadkit::dual::{diagnose, dual_monad, DualMonad};
use monadkit::extmat::ExtMatrixJson;
use monadkit::lines::{enumerate_lines, m_wedge_line, negative_conic, positive_locus, LineClassifier, PlueckerLine};
use monadkit::moduli_checks::{det_quadric, j1_block, jacobian, stability_sample, stabilizer_tangent_rank, strata_sample};
use monadkit::normal_forms::{classify_n1, normalize_n, Witness};
use monadkit::p1_cohomology::splitting_type;
use monadkit::reproduce::{run_all, Options};
use monadkit::restriction_scroll::{decompose_m, induced_p3_monad, scroll_membership, solve_splitting};
use monadkit::syzygy::syzygy_space;
use monadkit::monad::MonadJson;
use monadkit::{Error, ExtMatrix, Field, Monad, Multivector, Scalar, ScalarMatrix, Variance};
use serde_json::{json, Value};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "monadkit", version, about = "Exact computations with rank-4 instanton monads on P4")]
struct Cli {
    /// Q or Fp:<p>; overrides the field recorded in input files.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    quick: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complex, surjectivity and subbundle checks.
    Validate { file: PathBuf },
    NormalizeN { file: PathBuf },
    ClassifyN1 { file: PathBuf },
    Syzygy { file: PathBuf },
    /// Build M = Γ(p|q) from the syzygies of N.
    MakeM {
        file: PathBuf,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    Dual { file: PathBuf },
    /// rank(M∧ℓ) and the predicted splitting on one line.
    Jump {
        file: PathBuf,
        /// Two spanning vectors, "x;y".
        #[arg(long)]
        line: String,
    },
    /// Splitting types over every line of P4(F_q).
    JumpStrata { file: PathBuf },
    /// Čech computation of the splitting type on one line.
    Splitting {
        file: PathBuf,
        #[arg(long)]
        line: String,
    },
    SmoothCheck { file: PathBuf },
    Stability {
        file: PathBuf,
        #[arg(long, default_value_t = 500)]
        trials: u64,
    },
    DetQuadric { file: PathBuf },
    SampleStrata {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        trials: Option<u64>,
    },
    /// Restriction to the hyperplane span N, or to the given one.
    Restrict {
        file: PathBuf,
        #[arg(long)]
        hyperplane: Option<String>,
    },
    ScrollTest {
        file: PathBuf,
        #[arg(long)]
        p: String,
    },
    /// Run the acceptance criteria.
    Reproduce,
}

enum Fail {
    Parse(String),
    Semantic(String),
    Internal(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Fail::Parse(e.to_string()),
            Error::Window(_) | Error::Integrity(_) => Fail::Internal(e.to_string()),
            _ => Fail::Semantic(e.to_string()),
        }
    }
}

/// The report and whether the command succeeded semantically.
type Outcome = Result<(Value, bool), Fail>;

struct Ctx {
    field: Option<Field>,
    seed: u64,
    quick: bool,
}

impl Ctx {
    fn read(&self, path: &Path) -> Result<(Value, Field), Fail> {
        let text = std::fs::read_to_string(path).map_err(|e| Fail::Parse(format!("{}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text).map_err(|e| Fail::Parse(format!("{}: {e}", path.display())))?;
        let field = match (self.field, value.get("field").and_then(Value::as_str)) {
            (Some(f), _) => f,
            (None, Some(s)) => s.parse()?,
            (None, None) => Field::Rationals,
        };
        Ok((value, field))
    }

    fn monad(&self, path: &Path) -> Result<Monad, Fail> {
        let (mut value, field) = self.read(path)?;
        value["field"] = json!(field.to_string());
        let j: MonadJson = serde_json::from_value(value).map_err(|e| Fail::Parse(format!("{}: {e}", path.display())))?;
        Ok(Monad::from_json(&j)?)
    }

    /// The matrix under `key`, or the whole file if it is a bare matrix.
    fn matrix(&self, path: &Path, key: &str) -> Result<ExtMatrix, Fail> {
        let (value, field) = self.read(path)?;
        let m = value.get(key).cloned().unwrap_or(value);
        let j: ExtMatrixJson = serde_json::from_value(m).map_err(|e| Fail::Parse(format!("{}: {e}", path.display())))?;
        Ok(ExtMatrix::from_json(&j, field)?)
    }
}

fn scalars(s: &str, field: Field) -> Result<Vec<Scalar>, Fail> {
    s.split(',').map(|x| field.parse_scalar(x.trim()).map_err(Fail::from)).collect()
}

fn rows(m: &ScalarMatrix) -> Value {
    json!(m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn witness(w: &Witness) -> Value {
    json!({ "g_row": rows(&w.g_row), "g_col": rows(&w.g_col), "basis_change": rows(&w.basis_change) })
}

fn vectors(vs: &[Multivector]) -> Value {
    json!(vs.iter().map(|v| v.to_string()).collect::<Vec<_>>())
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable report")
}

fn line_arg(s: &str, field: Field) -> Result<PlueckerLine, Fail> {
    Ok(PlueckerLine::parse(s, field)?)
}

fn run(cli: &Cli) -> Outcome {
    let field = cli.field.as_deref().map(str::parse::<Field>).transpose()?;
    let ctx = Ctx { field, seed: cli.seed, quick: cli.quick };
    match &cli.command {
        Command::Validate { file } => {
            let m = ctx.monad(file)?;
            let r = m.validate();
            Ok((to_value(&r), r.in_x0))
        }
        Command::NormalizeN { file } => {
            let n = ctx.matrix(file, "N")?;
            let r = normalize_n(&n)?;
            let form = r.witness.apply(&n)?;
            Ok((json!({ "tag": r.tag, "normal_form": to_value(&form.to_json()), "witness": witness(&r.witness) }), true))
        }
        Command::ClassifyN1 { file } => {
            let n1 = ctx.matrix(file, "N1")?;
            let c = classify_n1(&n1)?;
            let w = c.witness.as_ref().map(witness);
            Ok((json!({ "type": c.tag.name(), "degenerate_rows": c.degenerate_rows, "witness": w }), true))
        }
        Command::Syzygy { file } => {
            let n = ctx.matrix(file, "N")?;
            let g = syzygy_space(&n)?;
            Ok((json!({ "dimension": g.dimension(), "gamma": to_value(&g.gamma().to_json()) }), true))
        }
        Command::MakeM { file, p, q } => {
            let n = ctx.matrix(file, "N")?;
            let g = syzygy_space(&n)?;
            let f = n.field();
            let m = g.m_from_coeffs(&scalars(p, f)?, &scalars(q, f)?)?;
            let monad = Monad::new(m, n)?;
            Ok((json!({ "monad": to_value(&monad.to_json()), "validation": to_value(&monad.validate()) }), true))
        }
        Command::Dual { file } => {
            let m = ctx.monad(file)?;
            let d = diagnose(&m)?;
            let dual = match dual_monad(&m)? {
                DualMonad::Instanton(x) => json!({ "kind": "instanton", "monad": to_value(&x.to_json()) }),
                DualMonad::Extension { m, p, x } => json!({
                    "kind": "extension",
                    "M": to_value(&m.to_json()),
                    "P": to_value(&p.to_json()),
                    "x": x.to_string(),
                }),
            };
            Ok((json!({ "rank": d.rank, "h0_dual": d.h0_dual, "dual": dual }), true))
        }
        Command::Jump { file, line } => {
            let m = ctx.monad(file)?;
            let l = line_arg(line, m.field())?;
            let rank = m_wedge_line(m.m(), &l)?.rank();
            let class = LineClassifier::new(&m)?.classify(&l)?;
            Ok((json!({ "line": l.to_string_pair(), "rank": rank, "h1_twist_minus1": 2 - rank, "class": to_value(&class) }), true))
        }
        Command::JumpStrata { file } => {
            let m = ctx.monad(file)?;
            let Field::Prime(q) = m.field() else {
                return Err(Fail::Semantic("jump-strata needs a prime field (use --field Fp:<p>)".into()));
            };
            let classifier = LineClassifier::new(&m)?;
            let mut counts: BTreeMap<String, u64> = BTreeMap::new();
            let mut total = 0u64;
            for l in enumerate_lines(q)? {
                let c = classifier.classify(&l)?;
                *counts.entry(format!("{:?}", c.splitting)).or_default() += 1;
                total += 1;
            }
            let conic = negative_conic(m.n())?.points(m.field())?.len();
            let locus = positive_locus(&m)?;
            let report = json!({
                "q": q,
                "lines": total,
                "splitting_counts": counts,
                "negative_conic_points": conic,
                "positive_locus": format!("{:?}", locus.kind()),
            });
            Ok((report, true))
        }
        Command::Splitting { file, line } => {
            let m = ctx.monad(file)?;
            let l = line_arg(line, m.field())?;
            let r = splitting_type(&m, &l)?;
            Ok((json!({ "line": l.to_string_pair(), "report": to_value(&r) }), true))
        }
        Command::SmoothCheck { file } => {
            let m = ctx.monad(file)?;
            let j = jacobian(m.m(), m.n())?.rank();
            let report = json!({
                "jacobian_rank": j,
                "j1_rank": j1_block(m.m(), m.n())?.rank(),
                "stabilizer_rank_n": stabilizer_tangent_rank(m.n(), None)?,
                "stabilizer_rank_mn": stabilizer_tangent_rank(m.n(), Some(m.m()))?,
            });
            Ok((report, j == 20))
        }
        Command::Stability { file, trials } => {
            let m = ctx.monad(file)?;
            let trials = if ctx.quick { (*trials).min(100) } else { *trials };
            let r = stability_sample(&m, trials, ctx.seed)?;
            Ok((to_value(&r), r.all_stable()))
        }
        Command::DetQuadric { file } => {
            let n = ctx.matrix(file, "N")?;
            let d = det_quadric(&n)?;
            Ok((json!({ "rank": d.rank, "coefficients": rows(&d.coefficients) }), true))
        }
        Command::SampleStrata { q, trials } => {
            let trials = trials.unwrap_or(if ctx.quick { 10_000 } else { 100_000 });
            Ok((to_value(&strata_sample(*q, trials, ctx.seed)?), true))
        }
        Command::Restrict { file, hyperplane } => {
            let m = ctx.monad(file)?;
            match hyperplane {
                None => {
                    let p3 = induced_p3_monad(&m)?;
                    let report = json!({
                        "w": vectors(&p3.w),
                        "M": to_value(&p3.m.to_json()),
                        "N": to_value(&p3.n.to_json()),
                        "S": to_value(&p3.splitting.to_json()),
                        "validation": to_value(&p3.validation),
                    });
                    Ok((report, p3.validation.valid))
                }
                Some(h) => {
                    let f = m.field();
                    let w: Vec<Multivector> =
                        h.split(';').map(|s| Multivector::parse(s.trim(), 5, f)).collect::<Result<_, _>>()?;
                    if w.len() != 4 {
                        return Err(Fail::Parse("--hyperplane needs four vectors".into()));
                    }
                    let v0 = (0..5)
                        .map(|i| Multivector::basis_vector(5, Variance::Primal, f, i))
                        .find(|e| {
                            let mut all = w.clone();
                            all.push(e.clone());
                            monadkit::extmat::coords_matrix(&all, 1).rank() == 5
                        })
                        .ok_or_else(|| Fail::Semantic("the vectors do not span a hyperplane".into()))?;
                    let d = decompose_m(m.m(), &w, &v0)?;
                    let s = solve_splitting(&d)?;
                    let report = json!({
                        "w": vectors(&w),
                        "solved": s.is_some(),
                        "S": s.as_ref().map(|s| to_value(&s.to_json())),
                    });
                    Ok((report, s.is_some()))
                }
            }
        }
        Command::ScrollTest { file, p } => {
            let n = ctx.matrix(file, "N")?;
            let tag = normalize_n(&n)?.tag;
            let p = scalars(p, n.field())?;
            let r = scroll_membership(&p, tag)?;
            let plane = r.plane.as_ref().map(|pl| vectors(&pl.basis));
            Ok((json!({ "tag": tag, "on_scroll": r.on_scroll, "plane": plane }), true))
        }
        Command::Reproduce => {
            let outcomes = run_all(&Options { quick: ctx.quick, seed: ctx.seed });
            for o in &outcomes {
                eprintln!("{:>2}  {}  {:<28} {}", o.id, if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
            }
            let all = outcomes.iter().all(|o| o.passed);
            Ok((json!({ "quick": ctx.quick, "criteria": to_value(&outcomes), "all_passed": all }), all))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::NormalizeN { .. } => "normalize-n",
        Command::ClassifyN1 { .. } => "classify-n1",
        Command::Syzygy { .. } => "syzygy",
        Command::MakeM { .. } => "make-m",
        Command::Dual { .. } => "dual",
        Command::Jump { .. } => "jump",
        Command::JumpStrata { .. } => "jump-strata",
        Command::Splitting { .. } => "splitting",
        Command::SmoothCheck { .. } => "smooth-check",
        Command::Stability { .. } => "stability",
        Command::DetQuadric { .. } => "det-quadric",
        Command::SampleStrata { .. } => "sample-strata",
        Command::Restrict { .. } => "restrict",
        Command::ScrollTest { .. } => "scroll-test",
        Command::Reproduce => "reproduce",
    }
}

fn emit(cli: &Cli, report: &Value) -> Result<(), Fail> {
    let text = serde_json::to_string_pretty(report).expect("json") + "\n";
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Fail::Internal(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    if let Some(n) = std::env::var("IML_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let name = command_name(&cli.command);
    let (code, body) = match run(&cli) {
        Ok((report, ok)) => (if ok { 0 } else { 2 }, json!({ "ok": ok, "result": report })),
        Err(f) => {
            let (code, kind, msg) = match f {
                Fail::Parse(m) => (3, "parse", m),
                Fail::Semantic(m) => (2, "semantic", m),
                Fail::Internal(m) => (1, "internal", m),
            };
            eprintln!("monadkit {name}: {msg}");
            (code, json!({ "ok": false, "error": { "kind": kind, "message": msg } }))
        }
    };
    let mut report = json!({ "schema_version": SCHEMA_VERSION, "command": name });
    if let (Value::Object(r), Value::Object(b)) = (&mut report, body) {
        r.extend(b);
    }
    match emit(&cli, &report) {
        Ok(()) => ExitCode::from(code),
        Err(_) => ExitCode::from(1),
    }
}
