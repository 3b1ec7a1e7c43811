//! `rsdh`: error distances, deep-hole checks, witness generation and
//! verification sweeps over small finite fields.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sha2::{Digest, Sha256};

use rsdh_core::constructions::{
    all_units_pair_products, witness_discriminant, witness_pair_products,
    witness_pair_products_zero, witness_pair_products_zero_weak, witness_power_sums,
    witness_power_sums_divisible, witness_sum, Construction, DiscriminantParams, Domain, PairMode,
};
use rsdh_core::oracle::oracle_cap_from_env;
use rsdh_core::par::with_jobs;
use rsdh_core::sweep::{to_json, to_tsv};
use rsdh_core::text::{parse_element, parse_elements, parse_field, parse_poly};
use rsdh_core::{
    run_sweep, CodeKind, DistanceEngine, DistanceResult, Elem, Error, Family, Field, KSelect,
    Methods, Parallelism, ReceivedWord, RsCode, SweepConfig, SweepSummary, SymmetricProfile,
    Verdict,
};

const EXIT_DISAGREE: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(name = "rsdh", version, about = "Error distance to Reed-Solomon codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Error distance of one received word.
    Distance {
        #[command(flatten)]
        input: WordInput,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Whether a received word is a deep hole.
    Classify {
        #[command(flatten)]
        input: WordInput,
    },
    /// Builds a witness set with a prescribed symmetric profile.
    Witness(WitnessArgs),
    /// Sweeps families of words and compares every applicable method.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct WordInput {
    /// Field spec: `q`, `p^m` or `p^m/mod=c0,...,cm`.
    #[arg(long)]
    field: String,
    /// Code kind; an explicit `--eval-set` implies `generalized`.
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    /// Comma-separated evaluation points.
    #[arg(long = "eval-set")]
    eval_set: Option<String>,
    #[arg(long)]
    k: usize,
    /// Comma-separated word values, one per evaluation point.
    #[arg(long, conflicts_with = "poly", required_unless_present = "poly")]
    word: Option<String>,
    /// Polynomial: ascending coefficients `1,0,2` or an expression `x^3+g*x`.
    #[arg(long)]
    poly: Option<String>,
}

#[derive(Copy, Clone, ValueEnum)]
enum KindArg {
    Standard,
    Primitive,
    Generalized,
}

impl From<KindArg> for CodeKind {
    fn from(k: KindArg) -> CodeKind {
        match k {
            KindArg::Standard => CodeKind::Standard,
            KindArg::Primitive => CodeKind::Primitive,
            KindArg::Generalized => CodeKind::Generalized,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Closed,
    Dp,
    Oracle,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long, visible_alias = "lemma")]
    construction: Construction,
    #[arg(long, visible_alias = "q")]
    field: String,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    zeta: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    r1: Option<String>,
    #[arg(long)]
    mu: Option<String>,
    /// `field` (all of F_q) or `units` (F_q*); used by `sum`.
    #[arg(long, default_value = "field")]
    domain: Domain,
}

#[derive(Copy, Clone, ValueEnum)]
enum FamilyArg {
    /// `x^(k+1) - b x^k`, all `b`.
    K1,
    /// `x^(k+2) - b x^(k+1) + c x^k`, all `(b, c)`.
    K2,
    /// `a x^(q-2) + v`, all `a != 0`, random `v` of degree below `k`.
    Inverse,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodName {
    Closed,
    Dp,
    Oracle,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Tsv => "tsv",
            Format::Json => "json",
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated field orders.
    #[arg(long, value_delimiter = ',')]
    fields: Vec<String>,
    /// A single field spec; repeatable, and needed for explicit moduli.
    #[arg(long = "field")]
    field: Vec<String>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "standard")]
    kinds: Vec<KindArg>,
    #[arg(long = "k-min")]
    k_min: Option<usize>,
    #[arg(long = "k-max")]
    k_max: Option<usize>,
    /// Only `k = q - offset`.
    #[arg(long = "k-offset", conflicts_with_all = ["k_min", "k_max"])]
    k_offset: Option<usize>,
    #[arg(long, value_enum, default_value_t = FamilyArg::K1)]
    family: FamilyArg,
    /// Random low-degree parts per `(k, a)` for the inverse family.
    #[arg(long, default_value_t = 10)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "closed,dp,oracle"
    )]
    methods: Vec<MethodName>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Output path; defaults to `results/sweep-<config hash>.<format>`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; `1` runs sequentially.
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Distance { input, method } => distance(&input, method),
        Command::Classify { input } => classify(&input),
        Command::Witness(args) => witness(&args),
        Command::Verify(args) => verify(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Failure::Core(Error::Undecidable(_)) => EXIT_UNKNOWN,
                _ => EXIT_ERROR,
            })
        }
    }
}

/// Why a command stopped early.
enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => e.fmt(f),
            Failure::Io(path, e) => write!(f, "cannot write {}: {e}", path.display()),
        }
    }
}

fn load(input: &WordInput) -> Result<(RsCode, ReceivedWord), Failure> {
    let field = Arc::new(parse_field(&input.field)?);
    let kind = match (&input.eval_set, input.kind) {
        (Some(_), Some(k)) if !matches!(k, KindArg::Generalized) => {
            return Err(
                Error::InvalidCode("--eval-set only applies to generalized codes".into()).into(),
            )
        }
        (Some(_), _) => CodeKind::Generalized,
        (None, k) => k.map_or(CodeKind::Standard, CodeKind::from),
    };
    let code = match kind {
        CodeKind::Generalized => {
            let set = input
                .eval_set
                .as_deref()
                .ok_or_else(|| Error::InvalidCode("generalized codes need --eval-set".into()))?;
            let eval_set = parse_elements(&field, set)?;
            RsCode::new(field.clone(), eval_set, input.k)?
        }
        kind => RsCode::with_kind(field.clone(), kind, input.k)?,
    };
    let word = match (&input.word, &input.poly) {
        (Some(w), _) => code.word(parse_elements(&field, w)?)?,
        (None, Some(p)) => code.word_from_poly(&parse_poly(&field, p)?)?,
        (None, None) => unreachable!("clap requires --word or --poly"),
    };
    Ok((code, word))
}

fn verdict_exit(r: &DistanceResult) -> u8 {
    match r.verdict {
        Verdict::Unknown => EXIT_UNKNOWN,
        _ => 0,
    }
}

fn distance(input: &WordInput, method: MethodArg) -> Result<u8, Failure> {
    let (code, u) = load(input)?;
    let engine = DistanceEngine::new(code);
    let r = match method {
        MethodArg::Auto => engine.distance(&u)?,
        MethodArg::Closed => engine.closed_form(&u)?,
        MethodArg::Dp => engine.subset_distance(&u)?,
        MethodArg::Oracle => engine.oracle(&u)?,
    };
    println!("{}", r.to_json());
    Ok(verdict_exit(&r))
}

fn classify(input: &WordInput) -> Result<u8, Failure> {
    let (code, u) = load(input)?;
    let radius = code.covering_radius();
    let (deep, r) = DistanceEngine::new(code).classify_deep_hole(&u)?;
    let doc = json!({ "deep_hole": deep, "covering_radius": radius, "result": r });
    println!("{doc}");
    Ok(verdict_exit(&r))
}

fn element(
    field: &Field,
    arg: &Option<String>,
    default: Option<Elem>,
    name: &str,
) -> Result<Elem, Error> {
    match (arg, default) {
        (Some(s), _) => parse_element(field, s),
        (None, Some(d)) => Ok(d),
        (None, None) => Err(Error::OutOfRange(format!("--{name} is required"))),
    }
}

fn witness(args: &WitnessArgs) -> Result<u8, Failure> {
    let f = parse_field(&args.field)?;
    let t = || {
        args.t
            .ok_or_else(|| Error::OutOfRange("--t is required".into()))
    };
    let el = |arg: &Option<String>, default, name| element(&f, arg, default, name);
    let (elements, domain) = match args.construction {
        Construction::Sum => (
            witness_sum(&f, args.domain, t()?, el(&args.b, Some(Elem::ZERO), "b")?)?,
            args.domain,
        ),
        Construction::PairProducts => (
            witness_pair_products(&f, t()?, el(&args.c, None, "c")?, PairMode::Strict)?,
            Domain::Units,
        ),
        Construction::PairProductsWeak => (
            witness_pair_products(&f, t()?, el(&args.c, None, "c")?, PairMode::Weak)?,
            Domain::Units,
        ),
        Construction::PairProductsAll => (all_units_pair_products(&f)?, Domain::Units),
        Construction::PairProductsZero => (witness_pair_products_zero(&f, t()?)?, Domain::Units),
        Construction::PairProductsZeroWeak => {
            (witness_pair_products_zero_weak(&f, t()?)?, Domain::Units)
        }
        Construction::Discriminant => {
            let params = DiscriminantParams {
                r: el(&args.r, Some(Elem::ONE), "r")?,
                r1: el(&args.r1, Some(Elem::ONE), "r1")?,
                mu: el(&args.mu, Some(Elem::ONE), "mu")?,
                b: el(&args.b, Some(Elem::ZERO), "b")?,
                c: el(&args.c, Some(Elem::ZERO), "c")?,
            };
            (witness_discriminant(&f, &params, t()?)?, Domain::Units)
        }
        Construction::PowerSums => (
            witness_power_sums(&f, t()?, el(&args.zeta, None, "zeta")?)?,
            Domain::Field,
        ),
        Construction::PowerSumsDivisible => (
            witness_power_sums_divisible(&f, t()?, el(&args.zeta, None, "zeta")?)?,
            Domain::Field,
        ),
    };
    let doc = json!({
        "construction": args.construction.name(),
        "q": f.q(),
        "domain": domain.to_string(),
        "elements": elements,
        "profile": SymmetricProfile::of(&f, &elements),
    });
    println!("{doc}");
    Ok(0)
}

fn sweep_config(args: &VerifyArgs) -> Result<SweepConfig, Error> {
    let specs: Vec<&String> = args.fields.iter().chain(&args.field).collect();
    if specs.is_empty() {
        return Err(Error::OutOfRange(
            "give at least one --fields or --field".into(),
        ));
    }
    let fields = specs
        .into_iter()
        .map(|s| parse_field(s).map(Arc::new))
        .collect::<Result<Vec<_>, _>>()?;
    let k = match (args.k_offset, args.k_min, args.k_max) {
        (Some(off), _, _) => KSelect::QMinus(off),
        (None, None, None) => KSelect::All,
        (None, lo, hi) => KSelect::Range(lo.unwrap_or(0), hi.unwrap_or(usize::MAX)),
    };
    let family = match args.family {
        FamilyArg::K1 => Family::DegreeK1,
        FamilyArg::K2 => Family::DegreeK2,
        FamilyArg::Inverse => Family::InverseMonomial {
            samples: args.samples,
        },
    };
    Ok(SweepConfig {
        fields,
        kinds: args.kinds.iter().map(|&k| CodeKind::from(k)).collect(),
        k,
        family,
        methods: Methods {
            closed_form: args.methods.contains(&MethodName::Closed),
            subset_dp: args.methods.contains(&MethodName::Dp),
            oracle: args.methods.contains(&MethodName::Oracle),
        },
        oracle_cap: oracle_cap_from_env(),
        parallelism: if args.jobs == Some(1) {
            Parallelism::Sequential
        } else {
            Parallelism::Parallel
        },
        seed: args.seed,
    })
}

/// Hash of everything that determines the sweep's rows and their format.
fn config_hash(config: &SweepConfig, format: Format) -> String {
    let fields: Vec<String> = config
        .fields
        .iter()
        .map(|f| format!("{}:{:?}", f.q(), f.modulus()))
        .collect();
    let canonical = format!(
        "fields={fields:?};kinds={:?};k={:?};family={:?};methods={:?};cap={};seed={};format={}",
        config.kinds,
        config.k,
        config.family,
        config.methods,
        config.oracle_cap,
        config.seed,
        format.extension()
    );
    let digest = Sha256::digest(canonical.as_bytes());
    digest[..6].iter().map(|b| format!("{b:02x}")).collect()
}

fn verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let config = sweep_config(args)?;
    let rows = with_jobs(args.jobs, || run_sweep(&config))?;
    let body = match args.format {
        Format::Tsv => to_tsv(&rows),
        Format::Json => to_json(&rows),
    };
    let path = args.out.clone().unwrap_or_else(|| {
        PathBuf::from("results").join(format!(
            "sweep-{}.{}",
            config_hash(&config, args.format),
            args.format.extension()
        ))
    });
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Io(path.clone(), e))?;
    }
    std::fs::write(&path, body).map_err(|e| Failure::Io(path.clone(), e))?;
    let summary = SweepSummary::of(&rows);
    let doc = json!({ "output": path.display().to_string(), "summary": summary });
    println!("{doc}");
    Ok(if summary.disagree > 0 {
        EXIT_DISAGREE
    } else {
        0
    })
}
