//! Command-line driver for the partial-spread code construction.
//!
//! Five subcommands cover the pipeline end to end: `construct` builds the
//! code of one index-set triple and checks every predicted property,
//! `search` enumerates admissible triples, `verify` runs the verification
//! suites on an instance or on truth-table files, and `walsh` / `weights`
//! export spectra and weight distributions.
//!
//! Exit codes: 0 when everything asked for passed, 1 when a predicted
//! property or verification suite failed, 2 for invalid or inadmissible
//! input. All output is deterministic for a fixed command line, so reruns
//! are byte-identical.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::{fmt, fs};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use spreadcode::boolfn::{
    hat_tilde_link_holds, spectra_linked, BooleanFunction, WalshSpectrum,
};
use spreadcode::code::{
    construct_code, enumerate_weights, predict_walsh, predict_weights, LinearCode,
    WeightDistribution,
};
use spreadcode::gf2::{BitVector, Gf2tField};
use spreadcode::minimal::{
    ab_ratio, covers, covers_by_weight, is_minimal_bruteforce, proposition_suite, walsh_criterion,
    AbRatio, MinimalityReport, Witness, MAX_BRUTE_FORCE_DIMENSION,
};
use spreadcode::spread::{
    build_family, check_conditions, search_admissible, search_admissible_seeded, ConditionReport,
    FunctionFamily, PartialSpread, SetStats, SetSystem,
};

/// Random-trial count for the sampled verification suites.
const FULL_TRIALS: u32 = 10_000;
/// Trial count under `--quick`.
const QUICK_TRIALS: u32 = 200;
/// Seed for the sampled verification suites.
const VERIFY_SEED: u64 = 0x5eed_0005;

/// The canonical length-63 instance used when `verify` and `walsh` get no
/// explicit triple.
const CANONICAL_T: u32 = 3;
const CANONICAL_A1: [u16; 4] = [1, 2, 3, 4];
const CANONICAL_A2: [u16; 4] = [1, 2, 3, 5];
const CANONICAL_A3: [u16; 4] = [1, 2, 4, 6];

#[derive(Parser)]
#[command(
    name = "spreadcode",
    version,
    about = "Minimal binary linear codes from partial-spread Boolean functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the code of one index-set triple and check its predicted properties
    Construct(ConstructArgs),
    /// Enumerate admissible index-set triples as JSON lines
    Search(SearchArgs),
    /// Run the verification suites on an instance or a truth-table file
    Verify(VerifyArgs),
    /// Print Walsh spectra of the family members or of an input function
    Walsh(WalshArgs),
    /// Print the enumerated weight distribution of an instance
    Weights(WeightsArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// Spread parameter t; the construction lives in dimension n = 2t
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=6))]
    t: u32,
    /// Irreducible modulus of GF(2^t) as a hex polynomial, e.g. 0xb
    #[arg(long, value_parser = parse_hex)]
    modulus: Option<u64>,
    /// Index set A1: comma-separated values in 1..=2^t+1
    #[arg(long, value_delimiter = ',', required = true)]
    a1: Vec<u16>,
    /// Index set A2
    #[arg(long, value_delimiter = ',', required = true)]
    a2: Vec<u16>,
    /// Index set A3
    #[arg(long, value_delimiter = ',', required = true)]
    a3: Vec<u16>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Build even when the admissibility conditions fail
    #[arg(long)]
    force: bool,
    /// Directory receiving the report files
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SearchArgs {
    /// Spread parameter; exhaustive at t = 3, seeded sampling above
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..=5))]
    t: u32,
    /// Keep only triples whose smallest member size is at most 2^(t-2)
    #[arg(long)]
    ab_violating: bool,
    /// Seed for the sampled stage at t > 3
    #[arg(long)]
    seed: Option<u64>,
    /// Stop after this many triples
    #[arg(long)]
    limit: Option<usize>,
    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Spread parameter of the instance to verify
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=6), default_value_t = CANONICAL_T)]
    t: u32,
    /// Irreducible modulus of GF(2^t) as a hex polynomial
    #[arg(long, value_parser = parse_hex)]
    modulus: Option<u64>,
    /// Index set A1 (defaults to the canonical instance when all three are omitted)
    #[arg(long, value_delimiter = ',')]
    a1: Vec<u16>,
    /// Index set A2
    #[arg(long, value_delimiter = ',')]
    a2: Vec<u16>,
    /// Index set A3
    #[arg(long, value_delimiter = ',')]
    a3: Vec<u16>,
    /// Truth-table file to check instead of an instance
    #[arg(long)]
    input: Option<PathBuf>,
    /// Walsh spectrum CSV to check against the truth table
    #[arg(long, requires = "input")]
    spectrum: Option<PathBuf>,
    /// Cut the random-trial suites down for fast runs
    #[arg(long)]
    quick: bool,
    /// Seed for the random-trial suites
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct WalshArgs {
    /// Truth-table file; omit to use an instance's seven members
    #[arg(long)]
    input: Option<PathBuf>,
    /// Spread parameter of the instance
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=6), default_value_t = CANONICAL_T)]
    t: u32,
    /// Irreducible modulus of GF(2^t) as a hex polynomial
    #[arg(long, value_parser = parse_hex)]
    modulus: Option<u64>,
    /// Index set A1 (defaults to the canonical instance when all three are omitted)
    #[arg(long, value_delimiter = ',')]
    a1: Vec<u16>,
    /// Index set A2
    #[arg(long, value_delimiter = ',')]
    a2: Vec<u16>,
    /// Index set A3
    #[arg(long, value_delimiter = ',')]
    a3: Vec<u16>,
    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct WeightsArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Enumerate even when the admissibility conditions fail
    #[arg(long)]
    force: bool,
    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Terminal failure: message for stderr plus the process exit code
/// (1 verification failure, 2 invalid input).
struct Failure {
    code: u8,
    message: String,
}

fn invalid(e: impl fmt::Display) -> Failure {
    Failure {
        code: 2,
        message: e.to_string(),
    }
}

fn parse_hex(s: &str) -> Result<u64, String> {
    let digits = s.trim().trim_start_matches("0x").trim_start_matches("0X");
    u64::from_str_radix(digits, 16).map_err(|e| format!("not a hex polynomial: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Construct(args) => cmd_construct(args),
        Command::Search(args) => cmd_search(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Walsh(args) => cmd_walsh(args),
        Command::Weights(args) => cmd_weights(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// One assembled instance: field, spread, system, conditions. The function
/// family is built separately, after any condition gate has run, so an
/// inadmissible triple is reported as such rather than as whatever
/// degeneracy it causes downstream.
struct Instance {
    t: u32,
    n: u32,
    modulus: u64,
    spread: PartialSpread,
    sys: SetSystem,
    conditions: ConditionReport,
}

fn assemble(
    t: u32,
    modulus: Option<u64>,
    a1: &[u16],
    a2: &[u16],
    a3: &[u16],
) -> Result<Instance, Failure> {
    let field = match modulus {
        Some(m) => Gf2tField::new(t, m),
        None => Gf2tField::with_default_modulus(t),
    }
    .map_err(invalid)?;
    let sys = SetSystem::new(
        t,
        a1.iter().copied(),
        a2.iter().copied(),
        a3.iter().copied(),
    )
    .map_err(invalid)?;
    let spread = PartialSpread::desarguesian_with_modulus(t, field.modulus()).map_err(invalid)?;
    let conditions = check_conditions(&sys);
    let n = 2 * t;
    if n < 6 {
        eprintln!(
            "warning: n = {n} is below the smallest dimension (6) the construction's \
             statements assume; building and checking anyway"
        );
    }
    Ok(Instance {
        t,
        n,
        modulus: field.modulus(),
        spread,
        sys,
        conditions,
    })
}

fn family(inst: &Instance) -> Result<FunctionFamily, Failure> {
    build_family(&inst.spread, &inst.sys).map_err(invalid)
}

/// Rejects an inadmissible instance unless `--force` was given; the
/// message names each failed condition with its witness.
fn gate_conditions(inst: &Instance, force: bool) -> Result<(), Failure> {
    if inst.conditions.all_pass() {
        return Ok(());
    }
    if force {
        eprintln!("warning: admissibility conditions fail; building anyway under --force");
        return Ok(());
    }
    let mut lines = vec!["admissibility conditions fail:".to_string()];
    let report = &inst.conditions;
    if !report.condition1 {
        lines.push(format!(
            "  condition 1 (no containment between an index set and a pairwise \
             symmetric difference): {}",
            report.condition1_witness.as_deref().unwrap_or("violated")
        ));
    }
    if !report.condition2 {
        lines.push(format!(
            "  condition 2 (nonempty triple intersection, at least two pairwise \
             intersections beyond it): triple intersection size {}, differing pairs {}",
            report.triple_intersection_size, report.differing_pairs
        ));
    }
    if !report.condition3 {
        lines.push(format!(
            "  condition 3 (every pairwise and triple symmetric difference has \
             size at least 2): {}",
            report.condition3_witness.as_deref().unwrap_or("violated")
        ));
    }
    lines.push("  rerun with --force to build regardless".to_string());
    Err(Failure {
        code: 2,
        message: lines.join("\n"),
    })
}

fn set_to_vec(set: &BTreeSet<u16>) -> Vec<u16> {
    set.iter().copied().collect()
}

fn format_set(set: &BTreeSet<u16>) -> String {
    let inner: Vec<String> = set.iter().map(u16::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

fn describe_witness(witness: &Option<Witness>) -> String {
    match witness {
        None => "none".into(),
        Some(Witness::Cover(c)) => format!(
            "message {:#x} (weight {}) covers message {:#x} (weight {})",
            c.covering_message, c.covering_weight, c.covered_message, c.covered_weight
        ),
        Some(Witness::Criterion(v)) => format!(
            "condition {} {:?} instance at phi1 = {}, phi2 = {}, x = {}, y = {}",
            v.condition, v.form, v.phi1, v.phi2, v.x, v.y
        ),
    }
}

fn generator_text(code: &LinearCode) -> String {
    let g = code.generator();
    let mut out = String::with_capacity(g.nrows() * (g.ncols() + 1));
    for i in 0..g.nrows() {
        let row = g.row(i);
        for c in 0..g.ncols() {
            out.push(if row.get(c) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))
}

fn to_pretty_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

// --- construct ---------------------------------------------------------

/// One predicted property of the construction, with the measurement that
/// confirmed or refuted it.
#[derive(Serialize)]
struct Claim {
    name: &'static str,
    detail: String,
    ok: bool,
}

#[derive(Serialize)]
struct Parameters<'a> {
    t: u32,
    n: u32,
    modulus: String,
    length: usize,
    dimension: usize,
    a1: Vec<u16>,
    a2: Vec<u16>,
    a3: Vec<u16>,
    admissible: bool,
    conditions: &'a ConditionReport,
    stats: SetStats,
}

#[derive(Serialize)]
struct MinimalitySummary {
    criterion: MinimalityReport,
    brute_force: Option<MinimalityReport>,
    deciders_agree: Option<bool>,
    claims: Vec<Claim>,
    all_claims_verified: bool,
}

fn cmd_construct(args: ConstructArgs) -> Result<u8, Failure> {
    let inst = assemble(
        args.instance.t,
        args.instance.modulus,
        &args.instance.a1,
        &args.instance.a2,
        &args.instance.a3,
    )?;
    gate_conditions(&inst, args.force)?;
    let admissible = inst.conditions.all_pass();

    let fam = family(&inst)?;
    let code = construct_code(&fam).map_err(invalid)?;
    let enumerated = enumerate_weights(&code).map_err(invalid)?;
    let ratio = ab_ratio(&enumerated).map_err(invalid)?;
    let predicted = admissible
        .then(|| predict_weights(&inst.sys, inst.n))
        .transpose()
        .map_err(invalid)?;

    let criterion = walsh_criterion(&fam);
    let brute = (code.dimension() <= MAX_BRUTE_FORCE_DIMENSION)
        .then(|| is_minimal_bruteforce(&code))
        .transpose()
        .map_err(invalid)?;
    let agree = brute.as_ref().map(|b| b.is_minimal == criterion.is_minimal);

    let stats = inst.sys.stats();
    let claims = if admissible {
        build_claims(&inst, &code, &enumerated, predicted.as_ref(), &criterion, brute.as_ref(), &ratio, &stats)
    } else {
        Vec::new()
    };
    let all_ok = claims.iter().all(|c| c.ok);

    fs::create_dir_all(&args.out)
        .map_err(|e| invalid(format!("cannot create {}: {e}", args.out.display())))?;
    let parameters = Parameters {
        t: inst.t,
        n: inst.n,
        modulus: format!("{:#x}", inst.modulus),
        length: code.length(),
        dimension: code.dimension(),
        a1: set_to_vec(inst.sys.sets()[0]),
        a2: set_to_vec(inst.sys.sets()[1]),
        a3: set_to_vec(inst.sys.sets()[2]),
        admissible,
        conditions: &inst.conditions,
        stats,
    };
    let summary = MinimalitySummary {
        criterion,
        brute_force: brute,
        deciders_agree: agree,
        claims,
        all_claims_verified: all_ok,
    };
    write_file(&args.out.join("parameters.json"), &to_pretty_json(&parameters))?;
    write_file(&args.out.join("generator.txt"), &generator_text(&code))?;
    write_file(&args.out.join("weights.csv"), &enumerated.to_csv())?;
    if let Some(p) = &predicted {
        write_file(&args.out.join("predicted.csv"), &p.to_csv())?;
    }
    write_file(&args.out.join("minimality.json"), &to_pretty_json(&summary))?;

    match args.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Combined<'a> {
                parameters: &'a Parameters<'a>,
                minimality: &'a MinimalitySummary,
            }
            print!(
                "{}",
                to_pretty_json(&Combined {
                    parameters: &parameters,
                    minimality: &summary,
                })
            );
        }
        Format::Text => print_construct_text(&inst, &code, &enumerated, &ratio, &summary, &args.out),
        Format::Csv => {
            return Err(invalid("construct supports --format text or json"));
        }
    }

    if !admissible {
        // Nothing was predicted, so nothing could fail; the warning above
        // already flagged the forced build.
        return Ok(0);
    }
    Ok(u8::from(!all_ok))
}

#[allow(clippy::too_many_arguments)]
fn build_claims(
    inst: &Instance,
    code: &LinearCode,
    enumerated: &WeightDistribution,
    predicted: Option<&WeightDistribution>,
    criterion: &MinimalityReport,
    brute: Option<&MinimalityReport>,
    ratio: &AbRatio,
    stats: &SetStats,
) -> Vec<Claim> {
    let mut claims = Vec::new();
    let expected_dim = (inst.n + 3) as usize;
    claims.push(Claim {
        name: "dimension",
        detail: format!("measured {}, predicted {expected_dim}", code.dimension()),
        ok: code.dimension() == expected_dim,
    });

    let predicted = predicted.expect("claims are built only for admissible instances");
    let table_ok = enumerated == predicted;
    claims.push(Claim {
        name: "weight-table",
        detail: if table_ok {
            "enumerated distribution matches the predicted table".into()
        } else {
            "enumerated distribution differs from the predicted table; compare \
             weights.csv with predicted.csv"
                .into()
        },
        ok: table_ok,
    });

    let expected_min = stats.epsilon as u32 * ((1u32 << inst.t) - 1);
    let measured_min = enumerated.wt_min().unwrap_or(0);
    claims.push(Claim {
        name: "minimum-weight",
        detail: format!("wt_min = {measured_min}, epsilon * (2^t - 1) = {expected_min}"),
        ok: measured_min == expected_min,
    });

    let (agree_ok, agree_detail) = match brute {
        Some(b) => (
            b.is_minimal == criterion.is_minimal,
            format!(
                "criterion says {}, brute force says {}",
                verdict(criterion.is_minimal),
                verdict(b.is_minimal)
            ),
        ),
        None => (
            true,
            format!(
                "brute force skipped: dimension {} above the cap of {}",
                code.dimension(),
                MAX_BRUTE_FORCE_DIMENSION
            ),
        ),
    };
    claims.push(Claim {
        name: "decider-agreement",
        detail: agree_detail,
        ok: agree_ok,
    });

    let minimal_ok = criterion.is_minimal && brute.map_or(true, |b| b.is_minimal);
    claims.push(Claim {
        name: "minimal",
        detail: if minimal_ok {
            "no covering pair exists".into()
        } else {
            format!("criterion witness: {}", describe_witness(&criterion.witness))
        },
        ok: minimal_ok,
    });

    let threshold = 1usize << (inst.t - 2);
    if stats.epsilon <= threshold {
        claims.push(Claim {
            name: "ab-violation",
            detail: format!(
                "epsilon = {} is at most 2^(t-2) = {threshold}, so the ratio must be \
                 at most 1/2; measured {ratio}",
                stats.epsilon
            ),
            ok: ratio.is_violating(),
        });
    } else {
        claims.push(Claim {
            name: "ab-violation",
            detail: format!(
                "no claim: epsilon = {} exceeds 2^(t-2) = {threshold}; measured ratio {ratio}",
                stats.epsilon
            ),
            ok: true,
        });
    }
    claims
}

fn verdict(minimal: bool) -> &'static str {
    if minimal {
        "minimal"
    } else {
        "not minimal"
    }
}

fn print_construct_text(
    inst: &Instance,
    code: &LinearCode,
    enumerated: &WeightDistribution,
    ratio: &AbRatio,
    summary: &MinimalitySummary,
    out_dir: &Path,
) {
    let stats = inst.sys.stats();
    println!(
        "[{}, {}] code at n = {} (t = {}, modulus {:#x})",
        code.length(),
        code.dimension(),
        inst.n,
        inst.t,
        inst.modulus
    );
    let sets = inst.sys.sets();
    println!(
        "A1 = {}  A2 = {}  A3 = {}",
        format_set(sets[0]),
        format_set(sets[1]),
        format_set(sets[2])
    );
    println!(
        "sizes: s1 = {}, s2 = {}, s3 = {}, chi12 = {}, chi13 = {}, chi23 = {}, \
         chi123 = {}, epsilon = {}",
        stats.s1, stats.s2, stats.s3, stats.chi12, stats.chi13, stats.chi23, stats.chi123,
        stats.epsilon
    );
    println!(
        "weights: wt_min = {}, wt_max = {}, ratio = {}, AB-violating = {}",
        enumerated.wt_min().unwrap_or(0),
        enumerated.wt_max().unwrap_or(0),
        ratio,
        ratio.is_violating()
    );
    match (&summary.brute_force, summary.deciders_agree) {
        (Some(b), Some(agree)) => println!(
            "minimality: criterion {} ({}), brute force {} ({}), agree = {agree}",
            verdict(summary.criterion.is_minimal),
            describe_witness(&summary.criterion.witness),
            verdict(b.is_minimal),
            describe_witness(&b.witness),
        ),
        _ => println!(
            "minimality: criterion {} ({}); brute force skipped above dimension {}",
            verdict(summary.criterion.is_minimal),
            describe_witness(&summary.criterion.witness),
            MAX_BRUTE_FORCE_DIMENSION
        ),
    }
    for claim in &summary.claims {
        println!(
            "claim {}: {} - {}",
            claim.name,
            if claim.ok { "ok" } else { "FAILED" },
            claim.detail
        );
    }
    if summary.claims.is_empty() {
        println!("no predicted properties to verify (conditions not satisfied)");
    }
    // Wide matrices stay out of terminal output; the file always has them.
    if inst.n <= 8 {
        print!("generator:\n{}", generator_text(code));
    } else {
        println!("generator: see {}", out_dir.join("generator.txt").display());
    }
    println!(
        "artifacts: {}",
        ["parameters.json", "generator.txt", "weights.csv", "minimality.json"]
            .map(|f| out_dir.join(f).display().to_string())
            .join(", ")
    );
}

// --- search -------------------------------------------------------------

fn cmd_search(args: SearchArgs) -> Result<u8, Failure> {
    let found = match args.seed {
        Some(seed) => search_admissible_seeded(args.t, args.ab_violating, seed),
        None => search_admissible(args.t, args.ab_violating),
    }
    .map_err(invalid)?;
    let cap = args.limit.unwrap_or(usize::MAX);

    let mut rendered = String::new();
    for sys in found.iter().take(cap) {
        match args.format {
            Format::Json => {
                let line = serde_json::to_string(sys).expect("set systems serialize");
                rendered.push_str(&line);
                rendered.push('\n');
            }
            Format::Text => {
                let sets = sys.sets();
                let _ = writeln!(
                    rendered,
                    "A1 = {}  A2 = {}  A3 = {}  epsilon = {}",
                    format_set(sets[0]),
                    format_set(sets[1]),
                    format_set(sets[2]),
                    sys.stats().epsilon
                );
            }
            Format::Csv => return Err(invalid("search supports --format json or text")),
        }
    }
    emit(args.out.as_deref(), &rendered)?;
    Ok(0)
}

/// Writes to the given file, or to stdout when there is none.
fn emit(out: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_file(path, contents),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(contents.as_bytes())
                .map_err(|e| invalid(format!("cannot write to stdout: {e}")))
        }
    }
}

// --- verify -------------------------------------------------------------

#[derive(Serialize)]
struct Suite {
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct VerifySummary {
    mode: &'static str,
    instance: Option<InstanceSummary>,
    suites: Vec<Suite>,
    all_passed: bool,
}

#[derive(Serialize)]
struct InstanceSummary {
    t: u32,
    n: u32,
    modulus: String,
    a1: Vec<u16>,
    a2: Vec<u16>,
    a3: Vec<u16>,
    stats: SetStats,
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    if args.format == Format::Csv {
        return Err(invalid("verify supports --format text or json"));
    }
    let (mode, instance, suites) = match &args.input {
        Some(path) => ("file", None, verify_file(path, args.spectrum.as_deref())?),
        None => {
            let inst = verify_instance_args(&args)?;
            let trials = if args.quick { QUICK_TRIALS } else { FULL_TRIALS };
            let seed = args.seed.unwrap_or(VERIFY_SEED);
            let suites = verify_instance(&inst, trials, seed)?;
            let summary = InstanceSummary {
                t: inst.t,
                n: inst.n,
                modulus: format!("{:#x}", inst.modulus),
                a1: set_to_vec(inst.sys.sets()[0]),
                a2: set_to_vec(inst.sys.sets()[1]),
                a3: set_to_vec(inst.sys.sets()[2]),
                stats: inst.sys.stats(),
            };
            ("instance", Some(summary), suites)
        }
    };
    let all_passed = suites.iter().all(|s| s.passed);
    let summary = VerifySummary {
        mode,
        instance,
        suites,
        all_passed,
    };
    match args.format {
        Format::Json => print!("{}", to_pretty_json(&summary)),
        _ => {
            for suite in &summary.suites {
                println!(
                    "SUITE {}: {} - {}",
                    suite.name,
                    if suite.passed { "pass" } else { "FAIL" },
                    suite.detail
                );
            }
            if all_passed {
                println!("verification: all suites passed");
            } else {
                let failed: Vec<&str> = summary
                    .suites
                    .iter()
                    .filter(|s| !s.passed)
                    .map(|s| s.name)
                    .collect();
                println!("verification failed: {}", failed.join(", "));
            }
        }
    }
    Ok(u8::from(!all_passed))
}

fn verify_instance_args(args: &VerifyArgs) -> Result<Instance, Failure> {
    let explicit = !args.a1.is_empty() || !args.a2.is_empty() || !args.a3.is_empty();
    if explicit {
        if args.a1.is_empty() || args.a2.is_empty() || args.a3.is_empty() {
            return Err(invalid("provide all of --a1, --a2, --a3 or none of them"));
        }
        let inst = assemble(args.t, args.modulus, &args.a1, &args.a2, &args.a3)?;
        if !inst.conditions.all_pass() {
            return Err(gate_conditions(&inst, false).expect_err("conditions fail"));
        }
        return Ok(inst);
    }
    if args.t != CANONICAL_T {
        return Err(invalid(
            "provide --a1/--a2/--a3 when verifying an instance with t != 3",
        ));
    }
    assemble(
        CANONICAL_T,
        args.modulus,
        &CANONICAL_A1,
        &CANONICAL_A2,
        &CANONICAL_A3,
    )
}

/// The instance-mode suites: random-trial transform checks, the two
/// closed-form-versus-enumeration cross-checks, decider agreement, and the
/// five spectral properties.
fn verify_instance(inst: &Instance, trials: u32, seed: u64) -> Result<Vec<Suite>, Failure> {
    let mut suites = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = inst.n;
    let fam = family(inst)?;

    let mut link_failures = 0u32;
    for _ in 0..trials {
        let f = BooleanFunction::from_fn(n, |_| rng.gen_bool(0.5)).map_err(invalid)?;
        if !hat_tilde_link_holds(&f) || !f.walsh_hat().parseval_holds() {
            link_failures += 1;
        }
    }
    for (_, member) in fam.members() {
        if !hat_tilde_link_holds(member) || !member.walsh_hat().parseval_holds() {
            link_failures += 1;
        }
    }
    suites.push(Suite {
        name: "transform-link",
        passed: link_failures == 0,
        detail: format!(
            "{trials} random functions at n = {n} plus the 7 members: transform link \
             and Parseval ({link_failures} failures)"
        ),
    });

    let code = construct_code(&fam).map_err(invalid)?;
    let mut cover_failures = 0u32;
    let len = code.length();
    for round in 0..trials {
        let mut x = BitVector::zeros(len);
        let mut y = BitVector::zeros(len);
        for c in 0..len {
            x.set(c, rng.gen_bool(0.5));
            y.set(c, rng.gen_bool(0.5));
        }
        // Every third pair is a forced subset so the covering branch gets
        // dense coverage.
        let y = if round % 3 == 0 {
            x.and(&y).map_err(invalid)?
        } else {
            y
        };
        let direct = covers(&x, &y).map_err(invalid)?;
        let by_weight = covers_by_weight(&x, &y).map_err(invalid)?;
        if direct != by_weight {
            cover_failures += 1;
        }
    }
    suites.push(Suite {
        name: "cover-identity",
        passed: cover_failures == 0,
        detail: format!(
            "{trials} random pairs of length {len}: support test versus weight \
             identity ({cover_failures} disagreements)"
        ),
    });

    let mut spectra_ok = true;
    for (label, member) in fam.members() {
        let predicted = predict_walsh(&inst.sys, label, &inst.spread).map_err(invalid)?;
        if predicted != member.walsh_hat() {
            spectra_ok = false;
        }
    }
    suites.push(Suite {
        name: "member-spectra",
        passed: spectra_ok,
        detail: "closed-form spectra against the transform for all 7 members".into(),
    });

    let enumerated = enumerate_weights(&code).map_err(invalid)?;
    let predicted = predict_weights(&inst.sys, n).map_err(invalid)?;
    let table_ok = enumerated == predicted;
    suites.push(Suite {
        name: "weight-table",
        passed: table_ok,
        detail: if table_ok {
            format!(
                "enumerated distribution matches the prediction (wt_min = {}, wt_max = {})",
                enumerated.wt_min().unwrap_or(0),
                enumerated.wt_max().unwrap_or(0)
            )
        } else {
            "enumerated distribution differs from the prediction".into()
        },
    });

    let criterion = walsh_criterion(&fam);
    let (agree_ok, agree_detail) = if code.dimension() <= MAX_BRUTE_FORCE_DIMENSION {
        let brute = is_minimal_bruteforce(&code).map_err(invalid)?;
        (
            brute.is_minimal == criterion.is_minimal,
            format!(
                "criterion says {}, brute force says {}",
                verdict(criterion.is_minimal),
                verdict(brute.is_minimal)
            ),
        )
    } else {
        (
            true,
            format!(
                "criterion says {}; brute force skipped above dimension {}",
                verdict(criterion.is_minimal),
                MAX_BRUTE_FORCE_DIMENSION
            ),
        )
    };
    suites.push(Suite {
        name: "decider-agreement",
        passed: agree_ok,
        detail: agree_detail,
    });

    let report = proposition_suite(&inst.sys, &fam).map_err(invalid)?;
    suites.push(Suite {
        name: "spectral-properties",
        passed: report.all_pass(),
        detail: if report.all_pass() {
            "all five spectral properties hold".into()
        } else {
            format!("violations: {:?}", report.violations)
        },
    });
    Ok(suites)
}

/// The file-mode suites: Parseval on the table's transform, and the
/// transform link between the (given or recomputed) hat spectrum and the
/// tilde transform recomputed from the table.
fn verify_file(table: &Path, spectrum: Option<&Path>) -> Result<Vec<Suite>, Failure> {
    let text = fs::read_to_string(table)
        .map_err(|e| invalid(format!("cannot read {}: {e}", table.display())))?;
    let f = BooleanFunction::from_table_text(&text).map_err(invalid)?;
    let hat = f.walsh_hat();
    let tilde = f.walsh_tilde();

    let mut suites = vec![Suite {
        name: "parseval",
        passed: hat.parseval_holds(),
        detail: format!("transform of the n = {} table", f.n()),
    }];
    let (linked, detail) = match spectrum {
        Some(path) => {
            let csv = fs::read_to_string(path)
                .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
            let given = WalshSpectrum::from_csv(&csv).map_err(invalid)?;
            (
                spectra_linked(&given, &tilde),
                format!(
                    "spectrum file {} against the second transform of the table",
                    path.display()
                ),
            )
        }
        None => (
            spectra_linked(&hat, &tilde),
            "both transforms recomputed from the table".into(),
        ),
    };
    suites.push(Suite {
        name: "transform-link",
        passed: linked,
        detail,
    });
    Ok(suites)
}

// --- walsh --------------------------------------------------------------

fn cmd_walsh(args: WalshArgs) -> Result<u8, Failure> {
    if let Some(path) = &args.input {
        let text = fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        let f = BooleanFunction::from_table_text(&text).map_err(invalid)?;
        let hat = f.walsh_hat();
        let rendered = match args.format {
            Format::Csv => hat.to_csv(),
            Format::Json => to_pretty_json(&SpectrumJson {
                member: None,
                values: hat.values().to_vec(),
            }),
            Format::Text => return Err(invalid("walsh supports --format csv or json")),
        };
        emit(args.out.as_deref(), &rendered)?;
        return Ok(0);
    }

    let explicit = !args.a1.is_empty() || !args.a2.is_empty() || !args.a3.is_empty();
    let inst = if explicit {
        if args.a1.is_empty() || args.a2.is_empty() || args.a3.is_empty() {
            return Err(invalid("provide all of --a1, --a2, --a3 or none of them"));
        }
        assemble(args.t, args.modulus, &args.a1, &args.a2, &args.a3)?
    } else {
        if args.t != CANONICAL_T {
            return Err(invalid("provide --a1/--a2/--a3 for spectra with t != 3"));
        }
        assemble(
            CANONICAL_T,
            args.modulus,
            &CANONICAL_A1,
            &CANONICAL_A2,
            &CANONICAL_A3,
        )?
    };

    let fam = family(&inst)?;
    let rendered = match args.format {
        Format::Csv => {
            let mut out = String::from("member,w,value\n");
            for (label, member) in fam.members() {
                let hat = member.walsh_hat();
                for (w, v) in hat.values().iter().enumerate() {
                    let _ = writeln!(out, "{label},{w},{v}");
                }
            }
            out
        }
        Format::Json => {
            let members: Vec<SpectrumJson> = fam
                .members()
                .map(|(label, member)| SpectrumJson {
                    member: Some(label.name().to_string()),
                    values: member.walsh_hat().values().to_vec(),
                })
                .collect();
            to_pretty_json(&members)
        }
        Format::Text => return Err(invalid("walsh supports --format csv or json")),
    };
    emit(args.out.as_deref(), &rendered)?;
    Ok(0)
}

#[derive(Serialize)]
struct SpectrumJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    member: Option<String>,
    values: Vec<i32>,
}

// --- weights ------------------------------------------------------------

fn cmd_weights(args: WeightsArgs) -> Result<u8, Failure> {
    let inst = assemble(
        args.instance.t,
        args.instance.modulus,
        &args.instance.a1,
        &args.instance.a2,
        &args.instance.a3,
    )?;
    gate_conditions(&inst, args.force)?;

    let fam = family(&inst)?;
    let code = construct_code(&fam).map_err(invalid)?;
    let enumerated = enumerate_weights(&code).map_err(invalid)?;
    if inst.conditions.all_pass() {
        let predicted = predict_weights(&inst.sys, inst.n).map_err(invalid)?;
        if enumerated != predicted {
            // Cannot happen for an admissible instance; failing loudly here
            // beats exporting a distribution the prediction disowns.
            println!("{}", enumerated.to_csv());
            return Err(Failure {
                code: 1,
                message: "enumerated distribution differs from the predicted table".into(),
            });
        }
    }
    let rendered = match args.format {
        Format::Csv => enumerated.to_csv(),
        Format::Json => to_pretty_json(&enumerated),
        Format::Text => return Err(invalid("weights supports --format csv or json")),
    };
    emit(args.out.as_deref(), &rendered)?;
    Ok(0)
}
