use clap::{Args, Parser, Subcommand};
use modp_core::catalog;
use modp_core::classification::{
    character_extends, enumerate_parameters, principal_series_analyze, SupersingularDatum, SupersingularDatumJson,
};
use modp_core::hecke_gl2::{verify_changing_weight_identity, HeckeError};
use modp_core::report::LemmaReport;
use modp_core::root_datum::{verify_cone_lemmas, ConeLemma, RootDatum, RootDatumError, Violation};
use modp_core::scalars::{CharacterJson, FiniteField, TorusCharacterDatum};
use modp_core::selftest;
use modp_core::weyl::{verify_coset_bruhat_lemma, WeylGroup};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "modp", version, about = "Root-datum, classification and GL2 Hecke checks for mod-p representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of a text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the parallel verifiers.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a root datum and print its basic invariants.
    RootdataCheck(DatumArgs),
    /// Run the cone lemmas and the Bruhat coset lemma on a datum.
    LemmasVerify {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, default_value_t = 6)]
        bound: u32,
    },
    /// Enumerate classification parameters over a list of supersingular data.
    ClassifyEnumerate {
        #[command(flatten)]
        datum: DatumArgs,
        /// JSON file `{"data": [...]}`; default is the trivial datum on every Levi.
        #[arg(long = "char")]
        data: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        q: u32,
    },
    /// Composition factors of the principal series of a torus character.
    PsAnalyze {
        #[command(flatten)]
        datum: DatumArgs,
        /// `trivial` or a character JSON file.
        #[arg(long = "char", default_value = "trivial")]
        character: String,
        /// Residue field size for `--char trivial`.
        #[arg(long, default_value_t = 3)]
        q: u32,
    },
    /// Verify the changing-the-weight convolution identity for GL2(Q_p).
    HeckeVerifyCw(CwArgs),
    /// Hecke-algebra commands.
    Hecke {
        #[command(subcommand)]
        command: HeckeCommand,
    },
    /// Run the full acceptance suite.
    Selftest,
}

#[derive(Subcommand)]
enum HeckeCommand {
    /// Same as `hecke-verify-cw`.
    VerifyCw(CwArgs),
}

#[derive(Args)]
struct DatumArgs {
    /// `builtin:NAME` or a path to a root-datum JSON file.
    #[arg(long)]
    datum: String,
}

#[derive(Args, Clone, Copy)]
struct CwArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 0)]
    m: i64,
}

/// Errors that are the caller's fault (exit 2).
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

struct Outcome {
    passed: bool,
    report: Value,
    summary: String,
}

/// Outer error: unreadable input. Inner error: a datum that parses but
/// fails validation.
fn load_datum_checked(spec: &str) -> Result<Result<RootDatum, Vec<Violation>>, InputError> {
    let loaded = match spec.strip_prefix("builtin:") {
        Some(name) => catalog::builtin(name),
        None => {
            let text = std::fs::read_to_string(spec).map_err(|e| InputError(format!("{spec}: {e}")))?;
            RootDatum::from_json(&text)
        }
    };
    match loaded {
        Ok(rd) => Ok(Ok(rd)),
        Err(RootDatumError::Invalid(v)) => Ok(Err(v)),
        Err(e) => Err(e.into()),
    }
}

fn load_datum(spec: &str) -> Result<RootDatum, InputError> {
    load_datum_checked(spec)?.map_err(|v| InputError(RootDatumError::Invalid(v).to_string()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn rootdata_check(spec: &str) -> Result<Outcome, InputError> {
    let rd = match load_datum_checked(spec)? {
        Ok(rd) => rd,
        Err(violations) => {
            let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            let summary = format!("invalid root datum: {}", list.join("; "));
            return Ok(Outcome { passed: false, report: json!({ "valid": false, "violations": list }), summary });
        }
    };
    let wg = WeylGroup::generate(&rd).ok();
    let report = json!({
        "datum": rd.name(),
        "valid": true,
        "rank": rd.rank(),
        "semisimple_rank": rd.semisimple_rank(),
        "cartan": rd.cartan(),
        "positive_roots": rd.positive_roots().len(),
        "derived_simply_connected": rd.is_derived_simply_connected(),
        "weyl_order": wg.map(|w| w.order()),
    });
    let summary = format!(
        "{}: valid, rank {}, semisimple rank {}, {} positive roots",
        rd.name(),
        rd.rank(),
        rd.semisimple_rank(),
        rd.positive_roots().len()
    );
    Ok(Outcome { passed: true, report, summary })
}

fn lemmas_verify(spec: &str, bound: u32) -> Result<Outcome, InputError> {
    let rd = load_datum(spec)?;
    let wg = WeylGroup::generate(&rd)?;
    let bruhat = LemmaReport::merge(
        "coset-bruhat",
        rd.name(),
        rd.all_simple().subsets().into_iter().map(|t| verify_coset_bruhat_lemma(&wg, t)).collect(),
    );
    let reports = vec![
        verify_cone_lemmas(&rd, ConeLemma::DominanceSquare, bound),
        verify_cone_lemmas(&rd, ConeLemma::OrthogonalCone, bound),
        bruhat,
    ];
    let passed = reports.iter().all(|r| r.passed);
    let summary = reports
        .iter()
        .map(|r| format!("{} on {}: {} ({} cases)", r.lemma, r.datum, if r.passed { "pass" } else { "FAIL" }, r.cases))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome { passed, report: json!({ "datum": rd.name(), "bound": bound, "lemmas": reports }), summary })
}

#[derive(serde::Deserialize)]
struct DataFile {
    data: Vec<SupersingularDatumJson>,
}

fn default_data(rd: &RootDatum, q: u32) -> Result<Vec<SupersingularDatum>, InputError> {
    let field = FiniteField::of_order(q)?;
    rd.all_simple()
        .subsets()
        .into_iter()
        .map(|levi| {
            let omega = TorusCharacterDatum::trivial(rd.orthogonal_sublattice(levi), &field, q)?;
            let label = format!("trivial-{:?}", levi.indices());
            Ok(SupersingularDatum::new(rd, levi, omega, &label)?)
        })
        .collect()
}

fn classify_enumerate(spec: &str, data: Option<&PathBuf>, q: u32) -> Result<Outcome, InputError> {
    let rd = load_datum(spec)?;
    let data = match data {
        Some(path) => {
            let file: DataFile = read_json(path)?;
            file.data.iter().map(|d| SupersingularDatum::from_json(&rd, d)).collect::<Result<Vec<_>, _>>()?
        }
        None => default_data(&rd, q)?,
    };
    let e = enumerate_parameters(&rd, &data)?;
    let entries: Vec<Value> = e
        .entries
        .iter()
        .map(|(lam, desc)| {
            json!({
                "pi1": lam.pi1,
                "pi2": lam.pi2,
                "sigma1": lam.sigma1.label,
                "descriptor": desc.to_json(&rd),
            })
        })
        .collect();
    let report = json!({
        "datum": rd.name(),
        "count": entries.len(),
        "injective": e.injective(),
        "collisions": e.collisions,
        "parameters": entries,
    });
    let summary = format!("{}: {} parameters, injective: {}", rd.name(), e.entries.len(), e.injective());
    Ok(Outcome { passed: e.injective(), report, summary })
}

fn ps_analyze(spec: &str, character: &str, q: u32) -> Result<Outcome, InputError> {
    let rd = load_datum(spec)?;
    let nu = if character == "trivial" {
        let field = FiniteField::of_order(q)?;
        let basis = (0..rd.rank()).map(|i| (0..rd.rank()).map(|j| i64::from(i == j)).collect()).collect();
        TorusCharacterDatum::trivial(basis, &field, q)?
    } else {
        let cj: CharacterJson = read_json(&PathBuf::from(character))?;
        TorusCharacterDatum::from_json(&cj)?
    };
    let ps = principal_series_analyze(&rd, &nu)?;
    let report = json!({
        "datum": rd.name(),
        "C": ps.c,
        "length": ps.length,
        "irreducible": ps.irreducible(),
        "extends_to_G": character_extends(&rd, &nu)?,
        "factors": ps.factors.iter().map(|d| d.to_json(&rd)).collect::<Vec<_>>(),
    });
    let summary = format!("{}: C = {}, length {}", rd.name(), ps.c, ps.length);
    Ok(Outcome { passed: true, report, summary })
}

fn hecke_verify_cw(args: CwArgs) -> Result<Outcome, InputError> {
    match verify_changing_weight_identity(args.p, args.m) {
        Ok(r) => {
            let summary = format!("p = {}, m = {}: identity holds with c = {}", r.p, r.m, r.c);
            Ok(Outcome { passed: true, report: serde_json::to_value(&r).unwrap(), summary })
        }
        Err(HeckeError::IdentityFailed(v)) => {
            Ok(Outcome { passed: false, report: *v, summary: format!("p = {}, m = {}: identity FAILED", args.p, args.m) })
        }
        Err(e) => Err(InputError(e.to_string())),
    }
}

fn selftest_run() -> Outcome {
    let results = selftest::run_all();
    let passed = results.iter().all(|r| r.passed);
    let summary = results.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n");
    Outcome { passed, report: json!({ "criteria": results }), summary }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::RootdataCheck(_) => "rootdata-check",
        Command::LemmasVerify { .. } => "lemmas-verify",
        Command::ClassifyEnumerate { .. } => "classify-enumerate",
        Command::PsAnalyze { .. } => "ps-analyze",
        Command::HeckeVerifyCw(_) | Command::Hecke { .. } => "hecke-verify-cw",
        Command::Selftest => "selftest",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let result = match &cli.command {
        Command::RootdataCheck(d) => rootdata_check(&d.datum),
        Command::LemmasVerify { datum, bound } => lemmas_verify(&datum.datum, *bound),
        Command::ClassifyEnumerate { datum, data, q } => classify_enumerate(&datum.datum, data.as_ref(), *q),
        Command::PsAnalyze { datum, character, q } => ps_analyze(&datum.datum, character, *q),
        Command::HeckeVerifyCw(a) | Command::Hecke { command: HeckeCommand::VerifyCw(a) } => hecke_verify_cw(*a),
        Command::Selftest => Ok(selftest_run()),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let mut report = json!({ "schema": 1, "command": command_name(&cli.command), "passed": outcome.passed });
    if let (Value::Object(dst), Value::Object(src)) = (&mut report, outcome.report) {
        dst.extend(src);
    }
    let text = serde_json::to_string_pretty(&report).unwrap();
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    // a closed pipe on stdout is not an error worth reporting
    let mut stdout = std::io::stdout();
    let _ = writeln!(stdout, "{}", if cli.json { &text } else { &outcome.summary });
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
