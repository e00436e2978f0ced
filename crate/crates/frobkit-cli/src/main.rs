mod instance;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use frobkit::frobenius::{
    bounds, frobenius_binary_search, frobenius_bruteforce, frobenius_nijenhuis,
    representability_decider, verify_solver_agreement,
};
use frobkit::problems::{
    decide_assoc_ikp, decide_assoc_ikp_dp, decide_cofrobenius, decide_cofrobenius_oracle,
    decide_exact_frobenius, decide_exact_frobenius_oracle, decide_frob_cofrob_pair,
    decide_frobenius, decide_frobenius_oracle, decide_integer_knapsack, decide_pi2_3dm,
    decide_pi2_ikp, decide_pi2_ikp_dp,
};
use frobkit::reductions::{
    reduce_3dm_to_assoc_ikp, reduce_assoc_ikp_to_cofrobenius, verify_reduction_phi,
    verify_reduction_psi,
};
use frobkit::report::VerifyReport;
use frobkit::{Caps, Error};

use instance::{InstanceFile, KnapsackInstance, PairInstance};

/// Frobenius-number toolkit: solvers, problem deciders, Karp reductions,
/// and seeded verification harnesses.
#[derive(Parser)]
#[command(name = "frobkit", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Residue-table entry cap (overrides FROBKIT_CAPS).
    #[arg(long, global = true)]
    cap_residues: Option<u64>,
    /// Dynamic-programming table bit cap.
    #[arg(long, global = true)]
    cap_dp_bits: Option<u64>,
    /// Quantifier-enumeration budget.
    #[arg(long, global = true)]
    cap_enum: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Nijenhuis,
    Bruteforce,
    Binsearch,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Frobenius,
    Cofrobenius,
    Exact,
    Pair,
    Knapsack,
    Pi2ikp,
    #[value(name = "assoc-ikp")]
    AssocIkp,
    #[value(name = "3dm")]
    ThreeDm,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyWhich {
    Psi,
    Phi,
    Solvers,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    #[value(name = "3dm")]
    ThreeDm,
    Knapsack,
    Pi2ikp,
    #[value(name = "assoc-ikp")]
    AssocIkp,
    Frobenius,
    Exact,
    Pair,
}

#[derive(Subcommand)]
enum Command {
    /// Compute g(A) for a frobenius-shaped instance (the k field is ignored).
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
        algorithm: Algorithm,
    },
    /// Decide a problem on an instance; exit 0 = yes, 1 = no.
    Decide { problem: Problem, input: PathBuf },
    /// Decide via the independent oracle route (brute-force / per-k DP).
    Oracle { problem: Problem, input: PathBuf },
    /// Print the four closed-form bounds on g(A).
    Bounds { input: PathBuf },
    /// Apply a Karp reduction; writes the image instance plus a .cert.json sidecar.
    Reduce {
        #[command(subcommand)]
        which: ReduceCmd,
    },
    /// Replay a reduction or the solver trio against independent oracles.
    Verify {
        which: VerifyWhich,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        q_max: Option<u32>,
        #[arg(long)]
        m1_max: Option<usize>,
        #[arg(long)]
        m2_max: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        a_max: Option<u64>,
        /// Write the full report here (otherwise stdout only).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a seed-deterministic random instance file.
    Gen {
        kind: GenKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        m1_size: usize,
        #[arg(long, default_value_t = 3)]
        m2_size: usize,
        /// Maximum set size for integer-set kinds.
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        a_max: u64,
    },
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// psi: 3dm instance -> assoc-ikp instance.
    #[command(name = "3dm-to-ikp")]
    ThreeDmToIkp {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// phi: assoc-ikp instance -> frobenius (coFrobenius) instance.
    #[command(name = "ikp-to-cofrob")]
    IkpToCofrob {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = match effective_caps(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(cli, &caps) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Caps resolution order: built-in defaults, then FROBKIT_CAPS
/// ("residues=N,dp_bits=N,enum=N"), then command-line flags.
fn effective_caps(cli: &Cli) -> Result<Caps, String> {
    let mut caps = Caps::default();
    if let Ok(env) = std::env::var("FROBKIT_CAPS") {
        for part in env.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| format!("FROBKIT_CAPS entry {part:?} is not key=value"))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|e| format!("FROBKIT_CAPS {key}: {e}"))?;
            match key.trim() {
                "residues" => caps.residue_entries = value,
                "dp_bits" => caps.dp_bits = value,
                "enum" => caps.enumeration = value,
                other => return Err(format!("unknown FROBKIT_CAPS key {other:?}")),
            }
        }
    }
    if let Some(v) = cli.cap_residues {
        caps.residue_entries = v;
    }
    if let Some(v) = cli.cap_dp_bits {
        caps.dp_bits = v;
    }
    if let Some(v) = cli.cap_enum {
        caps.enumeration = v;
    }
    if caps.residue_entries == 0 || caps.dp_bits == 0 || caps.enumeration == 0 {
        return Err("caps must be positive".to_string());
    }
    Ok(caps)
}

fn load(path: &Path) -> Result<InstanceFile, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::parse(format!("{}: {e}", path.display())))
}

fn save(path: &Path, inst: &InstanceFile) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(inst).expect("instances serialize");
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::parse(format!("{}: {e}", path.display())))
}

fn kind_mismatch(expected: &str, got: &InstanceFile) -> Error {
    Error::contract(format!(
        "instance kind {:?} does not match this command (expected {expected})",
        got.kind()
    ))
}

fn run(cli: Cli, caps: &Caps) -> Result<u8, Error> {
    let format = cli.format;
    match cli.command {
        Command::Solve { input, algorithm } => {
            let file = load(&input)?;
            let inst = file
                .as_frobenius()
                .ok_or_else(|| kind_mismatch("frobenius or exact", &file))?;
            let a = inst.a();
            let g = match algorithm {
                Algorithm::Nijenhuis => frobenius_nijenhuis(a, caps)?,
                Algorithm::Bruteforce => frobenius_bruteforce(a, caps)?,
                Algorithm::Binsearch => {
                    frobenius_binary_search(a, &representability_decider(caps.clone()))?
                }
                Algorithm::Auto => match frobenius_nijenhuis(a, caps) {
                    Err(Error::Resource(_)) => {
                        frobenius_binary_search(a, &representability_decider(caps.clone()))?
                    }
                    other => other?,
                },
            };
            match format {
                Format::Text => println!("{g}"),
                Format::Json => println!("{{\"g\":\"{g}\"}}"),
                Format::Csv => println!("g\n{g}"),
            }
            Ok(0)
        }
        Command::Decide { problem, input } => {
            let answer = dispatch_decide(problem, &load(&input)?, caps, false)?;
            print_verdict(format, answer);
            Ok(if answer { 0 } else { 1 })
        }
        Command::Oracle { problem, input } => {
            let answer = dispatch_decide(problem, &load(&input)?, caps, true)?;
            print_verdict(format, answer);
            Ok(if answer { 0 } else { 1 })
        }
        Command::Bounds { input } => {
            let file = load(&input)?;
            let inst = file
                .as_frobenius()
                .ok_or_else(|| kind_mismatch("frobenius or exact", &file))?;
            let report = bounds(inst.a())?;
            match format {
                Format::Text => {
                    println!("wilf_upper         {}", report.wilf_upper);
                    println!("erdos_graham_upper {}", report.erdos_graham_upper);
                    match report.davison_lower {
                        Some(d) => println!("davison_lower      {d:.4}"),
                        None => println!("davison_lower      n/a (requires n = 3)"),
                    }
                    println!("aliev_gruber_lower {:.4}", report.aliev_gruber_lower);
                }
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                Format::Csv => {
                    println!("wilf_upper,erdos_graham_upper,davison_lower,aliev_gruber_lower");
                    println!(
                        "{},{},{},{}",
                        report.wilf_upper,
                        report.erdos_graham_upper,
                        report
                            .davison_lower
                            .map_or(String::new(), |d| format!("{d}")),
                        report.aliev_gruber_lower
                    );
                }
            }
            Ok(0)
        }
        Command::Reduce { which } => match which {
            ReduceCmd::ThreeDmToIkp { input, output } => {
                let file = load(&input)?;
                let InstanceFile::ThreeDM(inst) = &file else {
                    return Err(kind_mismatch("3dm", &file));
                };
                let (image, cert) = reduce_3dm_to_assoc_ikp(inst)?;
                save(&output, &InstanceFile::AssocIkp(image))?;
                write_cert(&output, &cert)?;
                println!(
                    "psi: case {} -> {} (cert {})",
                    cert.stats.case,
                    output.display(),
                    cert_path(&output).display()
                );
                Ok(0)
            }
            ReduceCmd::IkpToCofrob { input, output } => {
                let file = load(&input)?;
                let InstanceFile::AssocIkp(inst) = &file else {
                    return Err(kind_mismatch("assoc-ikp", &file));
                };
                let (image, cert) = reduce_assoc_ikp_to_cofrobenius(inst)?;
                save(&output, &InstanceFile::Frobenius(image))?;
                write_cert(&output, &cert)?;
                println!(
                    "phi: case {} -> {} (cert {})",
                    cert.stats.case,
                    output.display(),
                    cert_path(&output).display()
                );
                Ok(0)
            }
        },
        Command::Verify {
            which,
            trials,
            seed,
            q_max,
            m1_max,
            m2_max,
            n_max,
            a_max,
            output,
        } => {
            let report = match which {
                VerifyWhich::Psi => verify_reduction_psi(
                    trials.unwrap_or(200),
                    q_max.unwrap_or(2),
                    m1_max.unwrap_or(2),
                    m2_max.unwrap_or(4),
                    seed.unwrap_or(42),
                    caps,
                )?,
                VerifyWhich::Phi => verify_reduction_phi(
                    trials.unwrap_or(500),
                    a_max.unwrap_or(60),
                    n_max.unwrap_or(5),
                    seed.unwrap_or(1),
                    caps,
                )?,
                VerifyWhich::Solvers => verify_solver_agreement(
                    trials.unwrap_or(500),
                    n_max.unwrap_or(5),
                    a_max.unwrap_or(200),
                    seed.unwrap_or(3),
                    caps,
                )?,
            };
            print_report(format, &report);
            if let Some(path) = output {
                let mut text = serde_json::to_string_pretty(&report).unwrap();
                text.push('\n');
                fs::write(&path, text)
                    .map_err(|e| Error::parse(format!("{}: {e}", path.display())))?;
            }
            if report.all_agree() {
                Ok(0)
            } else {
                let dump = PathBuf::from(format!("{}-disagreements.json", report.which));
                let bad: Vec<_> = report.disagreements();
                fs::write(&dump, serde_json::to_string_pretty(&bad).unwrap())
                    .map_err(|e| Error::parse(format!("{}: {e}", dump.display())))?;
                eprintln!(
                    "{} disagreement(s); offending instances dumped to {}",
                    bad.len(),
                    dump.display()
                );
                Ok(1)
            }
        }
        Command::Gen {
            kind,
            seed,
            output,
            q,
            m1_size,
            m2_size,
            n,
            a_max,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let file = generate(kind, &mut rng, q, m1_size, m2_size, n, a_max, caps)?;
            save(&output, &file)?;
            println!("wrote {} instance to {}", file.kind(), output.display());
            Ok(0)
        }
    }
}

fn dispatch_decide(
    problem: Problem,
    file: &InstanceFile,
    caps: &Caps,
    oracle: bool,
) -> Result<bool, Error> {
    match (problem, file) {
        (Problem::Frobenius, InstanceFile::Frobenius(i)) => {
            if oracle {
                decide_frobenius_oracle(i, caps)
            } else {
                decide_frobenius(i, caps)
            }
        }
        (Problem::Cofrobenius, InstanceFile::Frobenius(i)) => {
            if oracle {
                decide_cofrobenius_oracle(i, caps)
            } else {
                decide_cofrobenius(i, caps)
            }
        }
        (Problem::Exact, InstanceFile::Exact(i) | InstanceFile::Frobenius(i)) => {
            if oracle {
                decide_exact_frobenius_oracle(i, caps)
            } else {
                decide_exact_frobenius(i, caps)
            }
        }
        (Problem::Pair, InstanceFile::Pair(p)) => {
            if oracle {
                Ok(decide_frobenius_oracle(&p.first, caps)?
                    && decide_cofrobenius_oracle(&p.second, caps)?)
            } else {
                decide_frob_cofrob_pair(&p.first, &p.second, caps)
            }
        }
        (Problem::Knapsack, InstanceFile::Knapsack(KnapsackInstance { a, k })) => {
            if oracle {
                frobkit::frobenius::is_representable_dp(a, k, caps)
            } else {
                decide_integer_knapsack(a, k, caps)
            }
        }
        (Problem::Pi2ikp, InstanceFile::Pi2Ikp(i)) => {
            if oracle {
                decide_pi2_ikp_dp(i, caps)
            } else {
                decide_pi2_ikp(i, caps)
            }
        }
        (Problem::AssocIkp, InstanceFile::AssocIkp(i)) => {
            if oracle {
                decide_assoc_ikp_dp(i, caps)
            } else {
                decide_assoc_ikp(i, caps)
            }
        }
        (Problem::ThreeDm, InstanceFile::ThreeDM(i)) => decide_pi2_3dm(i, caps),
        (_, got) => Err(kind_mismatch("the problem's instance kind", got)),
    }
}

fn generate(
    kind: GenKind,
    rng: &mut ChaCha8Rng,
    q: u32,
    m1_size: usize,
    m2_size: usize,
    n: usize,
    a_max: u64,
    caps: &Caps,
) -> Result<InstanceFile, Error> {
    use frobkit::gen;
    use rand::Rng;
    Ok(match kind {
        GenKind::ThreeDm => {
            InstanceFile::ThreeDM(gen::random_3dm_exact(rng, q, m1_size, m2_size)?)
        }
        GenKind::Knapsack => {
            let a = gen::random_positive_set(rng, 1, n, a_max)?;
            let k = rng.gen_range(0..=a_max * a_max);
            InstanceFile::Knapsack(KnapsackInstance {
                a,
                k: BigUint::from(k),
            })
        }
        GenKind::Pi2ikp => InstanceFile::Pi2Ikp(gen::random_pi2_ikp(rng, n, a_max)?),
        GenKind::AssocIkp => InstanceFile::AssocIkp(gen::random_assoc_ikp(rng, n, a_max)?),
        GenKind::Frobenius => {
            InstanceFile::Frobenius(gen::random_frobenius_instance(rng, n, a_max)?)
        }
        GenKind::Exact => {
            // An exact instance is more interesting with k = g(A) now and then;
            // draw A, then put k at or near the true Frobenius number.
            let inst = gen::random_frobenius_instance(rng, n, a_max)?;
            let g = frobenius_nijenhuis(inst.a(), caps)?;
            let offset: i64 = rng.gen_range(-1..=1);
            let k = if offset < 0 && g > BigUint::from(1u32) {
                g - BigUint::from(1u32)
            } else {
                g + BigUint::from(offset.max(0) as u64)
            };
            InstanceFile::Exact(frobkit::problems::FrobeniusInstance::new(
                inst.a().clone(),
                k,
            )?)
        }
        GenKind::Pair => InstanceFile::Pair(PairInstance {
            first: gen::random_frobenius_instance(rng, n, a_max)?,
            second: gen::random_frobenius_instance(rng, n, a_max)?,
        }),
    })
}

fn print_verdict(format: Format, answer: bool) {
    let text = if answer { "yes" } else { "no" };
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{{\"answer\":\"{text}\"}}"),
        Format::Csv => println!("answer\n{text}"),
    }
}

fn print_report(format: Format, report: &VerifyReport) {
    match format {
        Format::Text => {
            let (yes, no) = report.yes_no_counts();
            println!(
                "{}: {}/{} trials agree (seed {}, {} yes / {} no, {} us total)",
                report.which,
                report.agreements(),
                report.trials.len(),
                report.seed,
                yes,
                no,
                report.total_micros
            );
            for t in report.disagreements() {
                println!("  DISAGREE trial {}: {} {:?}", t.index, t.summary, t.outcomes);
            }
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(report).unwrap()),
        Format::Csv => {
            println!("index,summary,outcomes,agree,micros");
            for t in &report.trials {
                let outcomes = t
                    .outcomes
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(";");
                println!(
                    "{},{:?},{},{},{}",
                    t.index, t.summary, outcomes, t.agree, t.micros
                );
            }
        }
    }
}

fn cert_path(output: &Path) -> PathBuf {
    output.with_extension("cert.json")
}

fn write_cert<O: serde::Serialize>(
    output: &Path,
    cert: &frobkit::reductions::ReductionCertificate<O>,
) -> Result<(), Error> {
    let path = cert_path(output);
    let mut text = serde_json::to_string_pretty(cert).expect("certificates serialize");
    text.push('\n');
    fs::write(&path, text).map_err(|e| Error::parse(format!("{}: {e}", path.display())))
}
