//! Command-line front end. `run` returns the exit code and the exact bytes
//! written to standard output and standard error, so tests can drive it
//! without spawning a process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use icisb_core::bernstein::{bprime_wh_detailed, full_from_reduced, FactoredJson};
use icisb_core::decide::{decide_ci, decide_hypersurface, is_input_error, Conclusion, Verdict, VerdictJson};
use icisb_core::groebner::OrderKind;
use icisb_core::polyring::{parse_rational, parse_untyped};
use icisb_core::singularity::{infer_morphism_weights, jacobian_minors, normalize_weights};
use icisb_core::weylcheck::{verify_certificate, CertificateJson, CertificateReport};
use icisb_core::{Error, Morphism, Rational, Ring, WeightSystem};
use serde::{Deserialize, Serialize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "icisb", version, about = "Bernstein-type polynomials of weighted-homogeneous complete intersections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Maximal minors of the Jacobian of h, or of (h, f) with --include-f.
    Minors(MorphismArgs),
    /// Standard monomials of O/((f, h) + J_{h,f}) with their weights.
    Basis(MorphismArgs),
    /// b'_f(h, s) from the weights of the quotient basis.
    Bprime(MorphismArgs),
    /// Reduced and full Bernstein polynomial of a hypersurface, with the verdict.
    Bs(MorphismArgs),
    /// Decide whether L = R.
    Decide(MorphismArgs),
    /// Check a functional-equation or membership certificate.
    Verify(VerifyArgs),
    /// Weights making every component weighted-homogeneous with deg f = 1.
    InferWeights(MorphismArgs),
    /// Run a JSON job file.
    Job(JobArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OrderArg {
    #[default]
    Grevlex,
    Lex,
}

impl From<OrderArg> for OrderKind {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Grevlex => OrderKind::WeightedGrevlex,
            OrderArg::Lex => OrderKind::WeightedLex,
        }
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct MorphismArgs {
    /// Component h_i; repeat for a complete intersection.
    #[arg(long = "h")]
    pub h: Vec<String>,
    /// The function f.
    #[arg(long = "f")]
    pub f: String,
    /// `infer`, or a comma-separated list of positive rationals.
    #[arg(long, default_value = "infer")]
    pub weights: String,
    /// Number of variables; defaults to the highest index mentioned.
    #[arg(long)]
    pub nvars: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include the row of f in `minors`.
    #[arg(long)]
    pub include_f: bool,
    /// Treat generation of R_h by δ_h as given in `decide`.
    #[arg(long)]
    pub assume_generation: bool,
    #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
    pub order: OrderArg,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long)]
    pub certificate: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct JobArgs {
    pub file: PathBuf,
}

/// Job file: the flags of one subcommand as a JSON object.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: String,
    #[serde(default)]
    pub h: Vec<String>,
    #[serde(default)]
    pub f: Option<String>,
    #[serde(default)]
    pub weights: Option<WeightsSpec>,
    #[serde(default)]
    pub nvars: Option<usize>,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub include_f: bool,
    #[serde(default)]
    pub assume_generation: bool,
    #[serde(default)]
    pub order: OrderArg,
    /// Path relative to the job file, or an inline certificate.
    #[serde(default)]
    pub certificate: Option<CertificateSource>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightsSpec {
    Text(String),
    List(Vec<serde_json::Value>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CertificateSource {
    Path(String),
    Inline(Box<CertificateJson>),
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, code: i32) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Failure while preparing or running a command, already mapped to an exit code.
#[derive(Debug)]
struct CliError {
    code: i32,
    message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

fn input(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn context(what: &str) -> impl Fn(Error) -> CliError + '_ {
    move |e| input(format!("{what}: {e}"))
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli.command),
        Err(e) => {
            let text = e.render().to_string();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(text, EXIT_OK)
                }
                _ => Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                },
            }
        }
    }
}

pub fn execute(command: &Command) -> Outcome {
    let result = match command {
        Command::Minors(a) => cmd_minors(a),
        Command::Basis(a) => cmd_basis(a),
        Command::Bprime(a) => cmd_bprime(a),
        Command::Bs(a) => cmd_bs(a),
        Command::Decide(a) => cmd_decide(a),
        Command::Verify(a) => cmd_verify(&load_certificate(&a.certificate), a.format),
        Command::InferWeights(a) => cmd_infer_weights(a),
        Command::Job(a) => return run_job_file(&a.file),
    };
    match result {
        Ok((stdout, code)) => Outcome::ok(stdout, code),
        Err(e) => Outcome {
            code: e.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", e.message),
        },
    }
}

type CmdResult = Result<(String, i32), CliError>;

fn parse_morphism(a: &MorphismArgs) -> Result<Morphism, CliError> {
    let f = parse_untyped(&a.f).map_err(|e| input(format!("in --f: {e}")))?;
    let hs = a
        .h
        .iter()
        .enumerate()
        .map(|(i, t)| parse_untyped(t).map_err(|e| input(format!("in --h #{}: {e}", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    if f.uses_s() || hs.iter().any(|h| h.uses_s()) {
        return Err(input("the parameter s may not occur in h or f"));
    }
    let inferred = hs.iter().map(|h| h.min_nx()).fold(f.min_nx(), usize::max);
    let n = a.nvars.unwrap_or(inferred);
    if n < inferred {
        return Err(input(format!("--nvars {n} is smaller than the highest variable index x{inferred}")));
    }
    let ring = Ring::new(n);
    let h = hs
        .into_iter()
        .map(|p| p.into_poly(ring))
        .collect::<icisb_core::Result<Vec<_>>>()?;
    Ok(Morphism::new(n, h, f.into_poly(ring)?)?)
}

fn parse_weights(text: &str, m: &Morphism) -> Result<WeightSystem, CliError> {
    if text.trim() == "infer" {
        return infer_morphism_weights(m).map_err(|e| match e {
            Error::NoSolution => input("no positive weights make every component weighted-homogeneous"),
            other => other.into(),
        });
    }
    let ws = text
        .split(',')
        .map(|t| parse_rational(t.trim()))
        .collect::<icisb_core::Result<Vec<Rational>>>()
        .map_err(context("in --weights"))?;
    if ws.len() != m.n() {
        return Err(input(format!("--weights lists {} values for {} variables", ws.len(), m.n())));
    }
    Ok(WeightSystem::new(ws)?)
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

#[derive(Serialize)]
struct MorphismReport {
    nvars: usize,
    h: Vec<String>,
    f: String,
}

impl MorphismReport {
    fn new(m: &Morphism) -> Self {
        MorphismReport {
            nvars: m.n(),
            h: m.h().iter().map(ToString::to_string).collect(),
            f: m.f().to_string(),
        }
    }
}

#[derive(Serialize)]
struct MinorEntry {
    columns: Vec<usize>,
    minor: String,
}

#[derive(Serialize)]
struct MinorsReport {
    morphism: MorphismReport,
    include_f: bool,
    minors: Vec<MinorEntry>,
}

fn cmd_minors(a: &MorphismArgs) -> CmdResult {
    let m = parse_morphism(a)?;
    let minors = jacobian_minors(&m, a.include_f)?;
    let report = MinorsReport {
        morphism: MorphismReport::new(&m),
        include_f: a.include_f,
        minors: minors
            .into_iter()
            .map(|(columns, p)| MinorEntry {
                columns,
                minor: p.to_string(),
            })
            .collect(),
    };
    let out = match a.format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut s = String::new();
            for e in &report.minors {
                let cols: Vec<String> = e.columns.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "m[{}] = {}", cols.join(","), e.minor);
            }
            s
        }
    };
    Ok((out, EXIT_OK))
}

#[derive(Serialize)]
struct BasisEntry {
    monomial: String,
    weight: String,
}

#[derive(Serialize)]
struct WeightCount {
    weight: String,
    count: usize,
}

#[derive(Serialize)]
struct BasisReport {
    morphism: MorphismReport,
    weights: Vec<String>,
    dim: usize,
    basis: Vec<BasisEntry>,
    weight_multiplicities: Vec<WeightCount>,
}

#[derive(Serialize)]
struct BprimeReport {
    morphism: MorphismReport,
    weights: Vec<String>,
    rho: Vec<String>,
    shift: String,
    quotient_dim: usize,
    bprime: FactoredJson,
}

struct Computed {
    m: Morphism,
    alpha: Vec<Rational>,
    rho: Vec<Rational>,
    c: icisb_core::bernstein::BPrimeComputation,
}

fn compute(a: &MorphismArgs) -> Result<Computed, CliError> {
    let m = parse_morphism(a)?;
    let w = parse_weights(&a.weights, &m)?;
    let nw = normalize_weights(&m, &w)?;
    let c = bprime_wh_detailed(&m, &nw, a.order.into())?;
    Ok(Computed {
        alpha: nw.alpha.weights().to_vec(),
        rho: nw.rho.clone(),
        m,
        c,
    })
}

fn cmd_basis(a: &MorphismArgs) -> CmdResult {
    let Computed { m, alpha, c, .. } = compute(a)?;
    let report = BasisReport {
        morphism: MorphismReport::new(&m),
        weights: strings(&alpha),
        dim: c.basis.dim(),
        basis: c
            .basis
            .monomials
            .iter()
            .zip(&c.basis.weights)
            .map(|(mono, w)| BasisEntry {
                monomial: mono.to_string(),
                weight: w.to_string(),
            })
            .collect(),
        weight_multiplicities: c
            .basis
            .weight_multiplicities()
            .into_iter()
            .map(|(w, count)| WeightCount {
                weight: w.to_string(),
                count,
            })
            .collect(),
    };
    let out = match a.format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut s = format!("dim = {}\n", report.dim);
            for e in &report.basis {
                let _ = writeln!(s, "{}  weight {}", e.monomial, e.weight);
            }
            s
        }
    };
    Ok((out, EXIT_OK))
}

fn cmd_bprime(a: &MorphismArgs) -> CmdResult {
    let Computed { m, alpha, rho, c } = compute(a)?;
    let report = BprimeReport {
        morphism: MorphismReport::new(&m),
        weights: strings(&alpha),
        rho: strings(&rho),
        shift: c.shift.to_string(),
        quotient_dim: c.basis.dim(),
        bprime: c.b.to_json(),
    };
    let out = match a.format {
        Format::Json => to_json(&report),
        Format::Text => format!("bprime(s) = {}\n", c.b),
    };
    Ok((out, EXIT_OK))
}

#[derive(Serialize)]
struct BsReport {
    morphism: MorphismReport,
    weights: Vec<String>,
    reduced: FactoredJson,
    full: FactoredJson,
    verdict: VerdictJson,
}

fn verdict_code(v: &Verdict) -> Result<i32, CliError> {
    if let Some(e) = &v.error {
        if is_input_error(e) {
            return Err(e.clone().into());
        }
    }
    Ok(if v.conclusion == Conclusion::Inconclusive {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    })
}

fn verdict_text(v: &Verdict) -> String {
    let json = v.to_json();
    let mut s = String::new();
    for e in &v.evidence {
        let roots: Vec<String> = e.integral_roots.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "{} = {}  integral roots [{}]", e.name, e.b, roots.join(", "));
    }
    let label = |v: &serde_json::Value| v.as_str().unwrap_or_default().to_string();
    let _ = writeln!(
        s,
        "hypothesis: {}",
        label(&serde_json::to_value(json.hypothesis).expect("enum serializes"))
    );
    let _ = writeln!(
        s,
        "conclusion: {}",
        label(&serde_json::to_value(json.conclusion).expect("enum serializes"))
    );
    if let Some(r) = &json.reason {
        let _ = writeln!(s, "reason: {r}");
    }
    s
}

fn cmd_bs(a: &MorphismArgs) -> CmdResult {
    if !a.h.is_empty() {
        return Err(input("bs takes only --f; use bprime or decide for complete intersections"));
    }
    let Computed { m, alpha, c, .. } = compute(a)?;
    let verdict = decide_hypersurface(m.f(), &WeightSystem::new(alpha.clone())?);
    let code = verdict_code(&verdict)?;
    let full = full_from_reduced(&c.b);
    let out = match a.format {
        Format::Json => to_json(&BsReport {
            morphism: MorphismReport::new(&m),
            weights: strings(&alpha),
            reduced: c.b.to_json(),
            full: full.to_json(),
            verdict: verdict.to_json(),
        }),
        Format::Text => format!("b(s) = {full}\nreduced = {}\n{}", c.b, verdict_text(&verdict)),
    };
    Ok((out, code))
}

fn cmd_decide(a: &MorphismArgs) -> CmdResult {
    let m = parse_morphism(a)?;
    let w = parse_weights(&a.weights, &m)?;
    let verdict = if m.p() == 0 {
        decide_hypersurface(m.f(), &w)
    } else {
        decide_ci(&m, &w, a.assume_generation)
    };
    let code = verdict_code(&verdict)?;
    let out = match a.format {
        Format::Json => to_json(&verdict.to_json()),
        Format::Text => verdict_text(&verdict),
    };
    Ok((out, code))
}

#[derive(Serialize)]
struct InferReport {
    morphism: MorphismReport,
    weights: Vec<String>,
    rho: Vec<String>,
}

fn cmd_infer_weights(a: &MorphismArgs) -> CmdResult {
    let m = parse_morphism(a)?;
    let w = parse_weights("infer", &m)?;
    let nw = normalize_weights(&m, &w)?;
    let report = InferReport {
        morphism: MorphismReport::new(&m),
        weights: strings(nw.alpha.weights()),
        rho: strings(&nw.rho),
    };
    let out = match a.format {
        Format::Json => to_json(&report),
        Format::Text => format!("weights = ({})\nrho = ({})\n", report.weights.join(", "), report.rho.join(", ")),
    };
    Ok((out, EXIT_OK))
}

fn load_certificate(path: &std::path::Path) -> Result<CertificateJson, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct VerifyReport {
    #[serde(flatten)]
    report: CertificateReport,
    verified: bool,
}

/// Exit code 2 when the identity does not hold.
fn cmd_verify(cert: &Result<CertificateJson, CliError>, format: Format) -> CmdResult {
    let cert = match cert {
        Ok(c) => c,
        Err(e) => {
            return Err(CliError {
                code: e.code,
                message: e.message.clone(),
            })
        }
    };
    let report = verify_certificate(cert)?;
    let holds = report.holds;
    let out = match format {
        Format::Json => to_json(&VerifyReport { report, verified: holds }),
        Format::Text => format!("verified: {holds}\n"),
    };
    Ok((out, if holds { EXIT_OK } else { EXIT_INCONCLUSIVE }))
}

fn weights_text(w: &Option<WeightsSpec>) -> Result<String, CliError> {
    Ok(match w {
        None => "infer".into(),
        Some(WeightsSpec::Text(t)) => t.clone(),
        Some(WeightsSpec::List(vs)) => vs
            .iter()
            .map(|v| match v {
                serde_json::Value::String(s) => Ok(s.clone()),
                serde_json::Value::Number(n) => Ok(n.to_string()),
                other => Err(input(format!("weight {other} is neither a number nor a string"))),
            })
            .collect::<Result<Vec<_>, _>>()?
            .join(","),
    })
}

pub fn run_job_file(path: &std::path::Path) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::input_error(format!("cannot read {}: {e}", path.display())),
    };
    let job: JobSpec = match serde_json::from_str(&text) {
        Ok(j) => j,
        Err(e) => return Outcome::input_error(format!("{}: {e}", path.display())),
    };
    let base = path.parent().map(PathBuf::from).unwrap_or_default();
    run_job(&job, &base)
}

/// Run a job; certificate paths are resolved against `base`.
pub fn run_job(job: &JobSpec, base: &std::path::Path) -> Outcome {
    if job.command == "verify" {
        let cert = match &job.certificate {
            Some(CertificateSource::Path(p)) => load_certificate(&base.join(p)),
            Some(CertificateSource::Inline(c)) => Ok((**c).clone()),
            None => return Outcome::input_error("verify job needs a `certificate`"),
        };
        return match cmd_verify(&cert, job.format) {
            Ok((stdout, code)) => Outcome::ok(stdout, code),
            Err(e) => Outcome {
                code: e.code,
                stdout: String::new(),
                stderr: format!("error: {}\n", e.message),
            },
        };
    }
    let weights = match weights_text(&job.weights) {
        Ok(w) => w,
        Err(e) => return Outcome::input_error(e.message),
    };
    let Some(f) = job.f.clone() else {
        return Outcome::input_error(format!("{} job needs `f`", job.command));
    };
    let args = MorphismArgs {
        h: job.h.clone(),
        f,
        weights,
        nvars: job.nvars,
        format: job.format,
        include_f: job.include_f,
        assume_generation: job.assume_generation,
        order: job.order,
    };
    let command = match job.command.as_str() {
        "minors" => Command::Minors(args),
        "basis" => Command::Basis(args),
        "bprime" => Command::Bprime(args),
        "bs" => Command::Bs(args),
        "decide" => Command::Decide(args),
        "infer-weights" => Command::InferWeights(args),
        other => return Outcome::input_error(format!("unknown job command `{other}`")),
    };
    execute(&command)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("icisb").chain(args.iter().copied()))
    }

    #[test]
    fn bprime_quadric_with_linear_form() {
        let out = run_args(&["bprime", "--h", "x1^2+x2^2+x3^2+x4^2", "--f", "x1", "--weights", "infer"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["bprime"]["factors"], serde_json::json!([{"offset": "2", "mult": 1}]));
        assert_eq!(v["bprime"]["provenance"], "prop2-formula");
    }

    #[test]
    fn bs_three_variable_quadric() {
        let out = run_args(&["bs", "--f", "x1^2+x2^2+x3^2", "--format", "text"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.starts_with("b(s) = (s+1)(s+3/2)\n"), "{}", out.stdout);
        assert!(out.stdout.contains("conclusion: L_equals_R"));
    }

    #[test]
    fn decide_inconclusive_exit_code() {
        let out = run_args(&["decide", "--h", "x1^2+x2^2+x3^2+x4^2", "--f", "x1"]);
        assert_eq!(out.code, 2);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["conclusion"], "Inconclusive");
        assert_eq!(v["hypothesis"], "Failed");
    }

    #[test]
    fn input_errors_exit_one() {
        for args in [
            vec!["bprime", "--f", "x1^2*x2"],
            vec!["bprime", "--f", "x1^2+x2^3", "--weights", "1,1"],
            vec!["bprime", "--h", "x1", "--h", "x2", "--f", "x1*x2"],
            vec!["bprime", "--f", "x1^^2"],
            vec!["frobnicate"],
        ] {
            let out = run_args(&args);
            assert_eq!(out.code, 1, "{args:?}");
            assert!(out.stdout.is_empty());
            assert!(!out.stderr.is_empty());
        }
    }

    #[test]
    fn parse_error_location() {
        let out = run_args(&["bprime", "--f", "x1 + * x2"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("line 1, column 6"), "{}", out.stderr);
        assert!(out.stderr.contains("`*`"), "{}", out.stderr);
    }

    #[test]
    fn deterministic_output() {
        let args = ["basis", "--f", "x1^2+x2^3+x3^4", "--weights", "1/2,1/3,1/4"];
        assert_eq!(run_args(&args), run_args(&args));
    }
}
