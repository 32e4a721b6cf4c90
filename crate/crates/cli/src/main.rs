mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use semigp::duality::{a_dual, canonical_map, classify};
use semigp::gallery::{lambda_q, radical_powers, run_scenario, ScenarioParams};
use semigp::homology::{ext_dims, resolve, tor_dims};
use semigp::io::{self, algebra_file, module_file, IoError};
use semigp::quiver::{build_tensor, monic_combinatorial, monic_homological, monic_via_ext};
use semigp::triangular::{classify_triple, t2_dual_bundle};
use semigp::{Error, Field, FieldSpec, Fp, Rational, Status};

use config::{Format, WorkspaceConfig};

#[derive(Parser, Debug)]
#[command(name = "semigp", version, about = "Exact module-theoretic computations over finite-dimensional algebras")]
struct Cli {
    /// Workspace configuration file (overrides the SEMIGP_CONFIG variable).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format; JSON unless the configuration says otherwise.
    #[arg(long, global = true, value_parser = ["json", "text"])]
    format: Option<String>,
    /// Dimension cap beyond which linear algebra refuses to run.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Bounded {
    /// Largest homological degree examined.
    #[arg(long)]
    bound: Option<usize>,
    /// Seed for randomized steps such as isomorphism search.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Algebra presentations.
    Algebra {
        #[command(subcommand)]
        action: AlgebraCmd,
    },
    /// Modules over an algebra.
    Module {
        #[command(subcommand)]
        action: ModuleCmd,
    },
    /// Dimensions of Ext^i(M, N).
    Ext {
        m: PathBuf,
        n: PathBuf,
        #[command(flatten)]
        opts: Bounded,
    },
    /// Dimensions of Tor_i(U, X) for a right module U and a left module X.
    Tor {
        u: PathBuf,
        x: PathBuf,
        #[command(flatten)]
        opts: Bounded,
    },
    /// Modules over a triangular matrix algebra given as triples.
    T2 {
        #[command(subcommand)]
        action: T2Cmd,
    },
    /// Tensor algebras with a quiver.
    Tensor {
        #[command(subcommand)]
        action: TensorCmd,
    },
    /// Whether a representation is monic.
    Monic {
        rep: PathBuf,
        #[arg(long, value_enum, default_value_t = MonicMode::Combinatorial)]
        mode: MonicMode,
        #[command(flatten)]
        opts: Bounded,
    },
    /// Built-in algebras.
    Gallery {
        #[command(subcommand)]
        action: GalleryCmd,
    },
    /// Run a named verification scenario.
    Verify {
        scenario: String,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        /// One parameter, or a comma-separated list where the scenario accepts several.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        /// Q, or a prime p (also written F_p).
        #[arg(long)]
        field: Option<String>,
        /// Number of random samples for sampled scenarios.
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        opts: Bounded,
    },
}

#[derive(Subcommand, Debug)]
enum AlgebraCmd {
    /// Check a presentation: unit, associativity, idempotents and radical.
    Validate { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum ModuleCmd {
    /// Check a module file against an algebra file.
    Validate {
        file: PathBuf,
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Torsionless, reflexive, semi-Gorenstein-projective and related verdicts.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        opts: Bounded,
    },
    /// The dual Hom_A(M, A) as a module on the other side.
    Dual {
        file: PathBuf,
    },
    /// Projective resolution term dimensions.
    Resolve {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        steps: usize,
        #[arg(long)]
        minimal: bool,
    },
}

#[derive(Subcommand, Debug)]
enum T2Cmd {
    /// The module over the triangular algebra described by a triple.
    Build { triple: PathBuf },
    /// The dual triple together with its comparison maps.
    Dual { triple: PathBuf },
    /// Componentwise conditions checked against the flat module.
    Classify {
        triple: PathBuf,
        #[command(flatten)]
        opts: Bounded,
    },
}

#[derive(Subcommand, Debug)]
enum TensorCmd {
    /// The tensor product of an algebra with a path algebra.
    Build { algebra: PathBuf, quiver: PathBuf },
}

#[derive(Subcommand, Debug)]
enum GalleryCmd {
    /// The six-dimensional local algebra with parameter q.
    LambdaQ {
        #[arg(long, allow_hyphen_values = true, default_value = "2")]
        q: String,
        #[arg(long)]
        field: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MonicMode {
    /// Injectivity of the arrow maps at each vertex.
    Combinatorial,
    /// Tor-vanishing against the vertex simples.
    Homological,
    /// The Ext-orthogonality form, for cross-checking.
    Ext,
}

/// The result of one command: a JSON report, an optional bespoke text
/// rendering and the status that determines the exit code.
struct Outcome {
    report: Value,
    text: Option<String>,
    status: Status,
}

impl Outcome {
    fn new(report: Value, status: Status) -> Self {
        Outcome { report, text: None, status }
    }
}

/// Failures that map to exit code 3, optionally with a JSON body for stdout.
#[derive(Debug)]
struct Rejected {
    message: String,
    body: Option<Value>,
}

impl std::fmt::Display for Rejected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Rejected {}

fn rejected(e: IoError) -> anyhow::Error {
    let body = match e.validation() {
        Some(Error::NonAssociative(i, j, k)) => Some(json!({"valid": false, "error": e.to_string(), "witness": [i, j, k]})),
        Some(_) => Some(json!({"valid": false, "error": e.to_string()})),
        None => None,
    };
    anyhow::Error::new(Rejected { message: e.to_string(), body })
}

/// Instantiates `$body` with the scalar type `$f` chosen by a field spec.
macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Rationals => {
                type $f = Rational;
                $body
            }
            FieldSpec::PrimeField(2) => {
                type $f = Fp<2>;
                $body
            }
            FieldSpec::PrimeField(3) => {
                type $f = Fp<3>;
                $body
            }
            FieldSpec::PrimeField(5) => {
                type $f = Fp<5>;
                $body
            }
            FieldSpec::PrimeField(7) => {
                type $f = Fp<7>;
                $body
            }
            FieldSpec::PrimeField(11) => {
                type $f = Fp<11>;
                $body
            }
            FieldSpec::PrimeField(13) => {
                type $f = Fp<13>;
                $body
            }
            FieldSpec::PrimeField(101) => {
                type $f = Fp<101>;
                $body
            }
            FieldSpec::PrimeField(32003) => {
                type $f = Fp<32003>;
                $body
            }
            other => bail!("field {other} is not compiled in (supported: Q, F_2, F_3, F_5, F_7, F_11, F_13, F_101, F_32003)"),
        }
    };
}

fn field_of(path: &Path) -> Result<FieldSpec> {
    let a = io::algebra_path_of(path).map_err(rejected)?;
    io::peek_field(&a).map_err(rejected)
}

fn parse_field(s: &str) -> Result<FieldSpec> {
    FieldSpec::parse(s).map_err(|e| anyhow::Error::new(Rejected { message: e.to_string(), body: None }))
}

struct Ctx {
    cfg: WorkspaceConfig,
}

impl Ctx {
    fn bound(&self, o: &Bounded) -> usize {
        o.bound.unwrap_or(self.cfg.bound)
    }

    fn seed(&self, o: &Bounded) -> u64 {
        o.seed.unwrap_or(self.cfg.seed)
    }
}

fn status_of_bool(b: bool) -> Status {
    Status::from_bool(b)
}

fn run(cli: Cli, cfg: WorkspaceConfig) -> Result<Outcome> {
    let ctx = Ctx { cfg };
    match cli.command {
        Command::Algebra { action: AlgebraCmd::Validate { file } } => with_field!(field_of(&file)?, F => algebra_validate::<F>(&file)),
        Command::Module { action } => match action {
            ModuleCmd::Validate { file, algebra } => with_field!(field_of(&algebra)?, F => {
                let a = io::load_algebra::<F>(&algebra).map_err(rejected)?;
                let m = io::load_module_over(&file, &a).map_err(rejected)?;
                Ok(Outcome::new(json!({"valid": true, "module": m.label, "side": m.side().as_str(), "dim": m.dim()}), Status::Holds))
            }),
            ModuleCmd::Classify { file, opts } => with_field!(field_of(&file)?, F => {
                let m = io::load_module::<F>(&file).map_err(rejected)?;
                let r = classify(&m, ctx.bound(&opts), ctx.seed(&opts))?;
                Ok(Outcome::new(r.to_json(), r.status()))
            }),
            ModuleCmd::Dual { file } => with_field!(field_of(&file)?, F => module_dual::<F>(&file)),
            ModuleCmd::Resolve { file, steps, minimal } => with_field!(field_of(&file)?, F => {
                let m = io::load_module::<F>(&file).map_err(rejected)?;
                let res = resolve(&m, steps, minimal)?;
                let labels: Vec<Vec<String>> = res
                    .terms
                    .iter()
                    .map(|t| t.iter().map(|&s| format!("P{s}")).collect())
                    .collect();
                Ok(Outcome::new(
                    json!({"module": m.label, "minimal": res.minimal, "complete": res.complete, "term_dims": res.term_dims(), "terms": labels}),
                    Status::Holds,
                ))
            }),
        },
        Command::Ext { m, n, opts } => with_field!(field_of(&m)?, F => {
            let mm = io::load_module::<F>(&m).map_err(rejected)?;
            let nn = io::load_module::<F>(&n).map_err(rejected)?;
            let t = ext_dims(&mm, &nn, ctx.bound(&opts))?;
            Ok(Outcome::new(t.to_json(), Status::Holds))
        }),
        Command::Tor { u, x, opts } => with_field!(field_of(&u)?, F => {
            let uu = io::load_module::<F>(&u).map_err(rejected)?;
            let xx = io::load_module::<F>(&x).map_err(rejected)?;
            let dims = tor_dims(&uu, &xx, ctx.bound(&opts))?;
            let rows: Vec<Value> = dims.iter().enumerate().map(|(i, d)| json!({"i": i, "dim": d})).collect();
            Ok(Outcome::new(json!({"source": uu.label, "target": xx.label, "rows": rows}), Status::Holds))
        }),
        Command::T2 { action } => match action {
            T2Cmd::Build { triple } => with_field!(field_of(&triple)?, F => {
                let t = io::load_triple::<F>(&triple).map_err(rejected)?;
                let flat = t.to_module();
                let (da, dm, db) = t.parent.block_dims();
                Ok(Outcome::new(
                    json!({
                        "triple": t.to_json(),
                        "block_dims": {"A": da, "M": dm, "B": db},
                        "algebra": algebra_file(&t.parent.flat),
                        "module": module_file(&flat, "algebra"),
                    }),
                    Status::Holds,
                ))
            }),
            T2Cmd::Dual { triple } => with_field!(field_of(&triple)?, F => {
                let t = io::load_triple::<F>(&triple).map_err(rejected)?;
                let b = t2_dual_bundle(&t)?;
                Ok(Outcome::new(b.to_json(), Status::Holds))
            }),
            T2Cmd::Classify { triple, opts } => with_field!(field_of(&triple)?, F => {
                let t = io::load_triple::<F>(&triple).map_err(rejected)?;
                let r = classify_triple(&t, ctx.bound(&opts), ctx.seed(&opts))?;
                let gp = match r.flat["gp"]["status"].as_str() {
                    Some("holds") => Status::Holds,
                    Some("fails") => Status::Fails,
                    _ => Status::Unknown,
                };
                let status = if r.all_agree() { gp } else { Status::Fails };
                Ok(Outcome::new(r.to_json(), status))
            }),
        },
        Command::Tensor { action: TensorCmd::Build { algebra, quiver } } => with_field!(field_of(&algebra)?, F => {
            let a = io::load_algebra::<F>(&algebra).map_err(rejected)?;
            let q = io::load_quiver(&quiver).map_err(rejected)?;
            let t = build_tensor(&a, &q)?;
            let paths: Vec<String> = q.paths().iter().map(|p| q.path_label(p)).collect();
            Ok(Outcome::new(
                json!({"quiver": q.to_json(), "paths": paths, "dim": t.flat.dim(), "algebra": algebra_file(&t.flat)}),
                Status::Holds,
            ))
        }),
        Command::Monic { rep, mode, opts } => with_field!(field_of(&rep)?, F => {
            let r = io::load_rep::<F>(&rep).map_err(rejected)?;
            let bound = ctx.bound(&opts);
            let v = match mode {
                MonicMode::Combinatorial => monic_combinatorial(&r),
                MonicMode::Homological => monic_homological(&r.tensor, &r.to_module(), bound)?,
                MonicMode::Ext => monic_via_ext(&r.tensor, &r.to_module(), bound)?,
            };
            let mode_name = format!("{mode:?}").to_lowercase();
            let assumption = r.tensor.quiver.has_relations().then_some("relations present: finite global dimension of the path algebra is assumed");
            Ok(Outcome::new(json!({"representation": r.label, "mode": mode_name, "verdict": v.to_json(), "assumption": assumption}), v.status()))
        }),
        Command::Gallery { action: GalleryCmd::LambdaQ { q, field } } => {
            let spec = parse_field(field.as_deref().unwrap_or(&ctx.cfg.field))?;
            with_field!(spec, F => {
                let qv: F = F::parse_scalar(&q).map_err(|e| anyhow::Error::new(Rejected { message: e.to_string(), body: None }))?;
                let l = lambda_q(&qv).map_err(|e| anyhow::Error::new(Rejected { message: e.to_string(), body: None }))?;
                let (j1, j2, j3) = radical_powers(&l.algebra);
                Ok(Outcome::new(
                    json!({"q": qv.to_string(), "field": F::spec().to_string(), "warnings": l.warnings, "radical_layers": [1, j1 - j2, j2 - j3], "algebra": algebra_file(&l.algebra)}),
                    Status::Holds,
                ))
            })
        }
        Command::Verify { scenario, q, c, field, samples, opts } => {
            let spec = parse_field(field.as_deref().unwrap_or(&ctx.cfg.field))?;
            let params = ScenarioParams { q, c, bound: Some(ctx.bound(&opts)), seed: Some(ctx.seed(&opts)), samples };
            with_field!(spec, F => {
                let r = run_scenario::<F>(&scenario, &params).map_err(|e| match e {
                    Error::Malformed(_) | Error::Scalar(_) => anyhow::Error::new(Rejected { message: e.to_string(), body: None }),
                    other => anyhow::Error::new(other),
                })?;
                Ok(Outcome { report: r.to_json(), text: Some(r.to_text()), status: r.status() })
            })
        }
    }
}

fn algebra_validate<F: Field>(file: &Path) -> Result<Outcome> {
    let a = io::load_algebra::<F>(file).map_err(rejected)?;
    let summands: Vec<Value> = a.projective_summands().iter().enumerate().map(|(i, s)| json!({"label": format!("P{i}"), "dim": s.dim()})).collect();
    Ok(Outcome::new(
        json!({
            "valid": true,
            "field": F::spec().to_string(),
            "dim": a.dim(),
            "labels": a.labels(),
            "radical_dim": a.radical().ok().map(|r| r.cols()),
            "idempotents": a.idempotent_count(),
            "projective_summands": summands,
        }),
        Status::Holds,
    ))
}

fn module_dual<F: Field>(file: &Path) -> Result<Outcome> {
    let m = io::load_module::<F>(file).map_err(rejected)?;
    let d = a_dual(&m)?;
    let phi = canonical_map(&m)?;
    let alg = io::algebra_path_of(file).map_err(rejected)?;
    Ok(Outcome::new(
        json!({
            "module": m.label,
            "dual": module_file(&d.dual, &alg.to_string_lossy()),
            "dual_dim": d.dual.dim(),
            "canonical_map": {"rank": phi.rank(), "kernel_dim": m.dim() - phi.rank(), "cokernel_dim": phi.target.dim() - phi.rank()},
        }),
        status_of_bool(true),
    ))
}

/// Indented `key: value` rendering of a JSON report.
fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                if val.is_object() || (val.is_array() && val.as_array().is_some_and(|a| a.iter().any(|x| x.is_object()))) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_text(val, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", compact(val)));
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                out.push_str(&format!("{pad}- [{i}]\n"));
                render_text(item, indent + 1, out);
            }
        }
        other => out.push_str(&format!("{pad}{}\n", compact(other))),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn exit_code(s: Status) -> u8 {
    match s {
        Status::Holds => 0,
        Status::Fails => 1,
        Status::Unknown => 2,
    }
}

/// Writes to stdout, ignoring a reader that has gone away.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    let cfg = match settle_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(3);
        }
    };
    semigp::linalg::set_dimension_cap(cfg.cap);
    let format = cfg.format;
    match run(cli, cfg) {
        Ok(out) => {
            match format {
                Format::Json => emit(&format!("{}\n", serde_json::to_string_pretty(&out.report).expect("report serializes"))),
                Format::Text => {
                    let text = out.text.unwrap_or_else(|| {
                        let mut s = String::new();
                        render_text(&out.report, 0, &mut s);
                        s
                    });
                    emit(&text);
                }
            }
            ExitCode::from(exit_code(out.status))
        }
        Err(e) => {
            if let Some(r) = e.downcast_ref::<Rejected>() {
                if let Some(body) = &r.body {
                    emit(&format!("{}\n", serde_json::to_string_pretty(body).expect("body serializes")));
                }
            }
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn settle_config(cli: &Cli) -> Result<WorkspaceConfig> {
    let mut cfg = match &cli.config {
        Some(p) => WorkspaceConfig::from_file(p)?,
        None => WorkspaceConfig::from_env()?,
    };
    if let Some(f) = &cli.format {
        cfg.format = Format::parse(f)?;
    }
    if let Some(c) = cli.cap {
        cfg.cap = c;
    }
    cfg.check().context("invalid configuration")?;
    Ok(cfg)
}
