use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use divcodes::enumerate::{
    classify, for_each_extension, ClassifyParams, CodeDatabase, ExtensionProblem, IsoMode,
};
use divcodes::feasibility::{
    filter_self_orthogonality, known_length_status, solve_truncated_system, FeasibilityInstance,
    FeasibleSolution, LengthStatus,
};
use divcodes::geometry::{construct_named, subcode_spectrum, NamedCode};
use divcodes::spectra::{macwilliams_transform, weight_distribution, WeightDistribution};
use divcodes::verify::{run_step, run_steps, Verdict, VerifyConfig};
use divcodes::{Error, GeneratorMatrix};

#[derive(Parser)]
#[command(
    name = "divcodes",
    version,
    about = "Divisible binary linear codes workbench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Enumerator,
    /// Space-aligned columns.
    #[value(name = "paper-table")]
    Aligned,
}

#[derive(Subcommand)]
enum Command {
    /// Classify all codes with nonzero weights in a given set.
    Classify {
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<usize>,
        /// Defaults to the gcd of the weights.
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        projective: bool,
        /// Continue the run stored in this database file (rewritten in place).
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Write the database here, checkpointing after every work unit.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        shard_depth: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value = "augment")]
        mode: String,
    },
    /// Enumerate one-row extensions of a code read from stdin.
    Extend {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        n_prime: usize,
        #[arg(long)]
        systematic: bool,
        #[arg(long)]
        full_length: bool,
        /// One solution per orbit under adding old codewords to the new row.
        #[arg(long)]
        normal_form: bool,
        /// Fixed split `class:ones` (class in hex), repeatable.
        #[arg(long)]
        prescribe: Vec<String>,
        /// Print only the number of solutions.
        #[arg(long)]
        count: bool,
    },
    /// MacWilliams transform of an enumerator or a code from stdin, or with
    /// `--weights` the nonnegative solutions of the first identities.
    Macwilliams {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        enumerator: Option<String>,
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<usize>>,
        #[arg(long, default_value_t = 4)]
        identities: usize,
        #[arg(long)]
        non_projective: bool,
        /// Keep solutions whose dual counts at these weights are integral,
        /// nonnegative and at least the primal counts.
        #[arg(long, value_delimiter = ',')]
        self_orthogonal: Vec<usize>,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Print a named code.
    Construct {
        #[arg(long)]
        name: String,
    },
    /// Weight distribution of a code from stdin, or the subcode spectrum of
    /// every codeword of the given weight.
    Spectrum {
        #[arg(long)]
        codeword_weight: Option<usize>,
        #[arg(long, value_enum, default_value = "enumerator")]
        format: Format,
    },
    /// Existence status of a projective q^r-divisible code of length n.
    Lengths {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: usize,
    },
    /// Count table of a classification run.
    Tables {
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<usize>,
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        projective: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Check every arithmetic step of the length-59 nonexistence argument.
    Verify59 {
        /// Emit `step=<id> verdict=<...>` records instead of text.
        #[arg(long)]
        records: bool,
        /// Run a single step.
        #[arg(long)]
        step: Option<usize>,
        /// Fault injection: treat this 4-divisible length as realizable.
        #[arg(long)]
        allow_length: Option<usize>,
        /// Fault injection: use this value of y = 2^k.
        #[arg(long)]
        y: Option<u64>,
    },
}

enum Failure {
    /// Downstream reader went away; not an error.
    Closed,
    Math(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Failure::Closed
        } else {
            Failure::Math(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn read_codes() -> Result<Vec<GeneratorMatrix>, Failure> {
    let mut out = Vec::new();
    for line in io::stdin().lock().lines() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        out.push(GeneratorMatrix::parse_line(t)?);
    }
    if out.is_empty() {
        return Err(Failure::Usage("expected a code on stdin".into()));
    }
    Ok(out)
}

fn print_distribution(
    out: &mut impl Write,
    a: &WeightDistribution,
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Tsv => write!(out, "{}", a.to_tsv()),
        _ => writeln!(out, "{a}"),
    }
}

fn aligned_table(tsv: &str) -> String {
    let rows: Vec<Vec<&str>> = tsv.lines().map(|l| l.split('\t').collect()).collect();
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let width: Vec<usize> = (0..cols)
        .map(|j| {
            rows.iter()
                .filter_map(|r| r.get(j))
                .map(|c| c.len())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in &rows {
        let cells: Vec<String> = (0..cols)
            .map(|j| format!("{:>w$}", r.get(j).copied().unwrap_or(""), w = width[j]))
            .collect();
        out.push_str(cells.join(" ").trim_end());
        out.push('\n');
    }
    out
}

fn classify_params(
    weights: Vec<usize>,
    delta: Option<usize>,
    max_n: usize,
    projective: bool,
    jobs: usize,
) -> ClassifyParams {
    let delta = delta.unwrap_or_else(|| weights.iter().fold(0, |g, &w| gcd(g, w)));
    ClassifyParams::new(delta, &weights, max_n)
        .projective(projective)
        .jobs(jobs)
}

fn run(cmd: Command) -> Outcome {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cmd {
        Command::Classify {
            weights,
            delta,
            max_n,
            projective,
            resume,
            output,
            shard_depth,
            jobs,
            mode,
        } => {
            let mut p = classify_params(weights, delta, max_n, projective, jobs)
                .shard_depth(shard_depth)
                .mode(mode.parse::<IsoMode>()?);
            let resumed = match &resume {
                Some(path) => Some(CodeDatabase::read(path)?),
                None => None,
            };
            p.checkpoint = output.or(resume);
            let db = classify(&p, resumed)?;
            if p.checkpoint.is_some() {
                write!(out, "{}", db.counts_table())?;
            } else {
                write!(out, "{}", db.to_text())?;
            }
        }
        Command::Extend {
            delta,
            a,
            b,
            n_prime,
            systematic,
            full_length,
            normal_form,
            prescribe,
            count,
        } => {
            for g in read_codes()? {
                let mut p = ExtensionProblem::new(&g, delta, a, b, n_prime)?
                    .systematic(systematic)
                    .full_length(full_length)
                    .normal_form(normal_form);
                for spec in &prescribe {
                    let (u, x) = spec.split_once(':').ok_or_else(|| {
                        Failure::Usage(format!("expected class:ones, got {spec:?}"))
                    })?;
                    let u = u64::from_str_radix(u, 16)
                        .map_err(|_| Failure::Usage(format!("bad class {u:?}")))?;
                    let x = x
                        .parse()
                        .map_err(|_| Failure::Usage(format!("bad count {x:?}")))?;
                    p = p.prescribe(u, x);
                }
                let mut total = 0usize;
                let mut lines = Vec::new();
                for_each_extension(&p, |v| {
                    total += 1;
                    if !count {
                        lines.push(v.to_matrix().to_line(true));
                    }
                })?;
                if count {
                    writeln!(out, "{total}")?;
                } else {
                    for l in lines {
                        writeln!(out, "{l}")?;
                    }
                }
            }
        }
        Command::Macwilliams {
            n,
            k,
            enumerator,
            weights,
            identities,
            non_projective,
            self_orthogonal,
            format,
        } => {
            if let Some(weights) = weights {
                let n = n.ok_or_else(|| Failure::Usage("--n is required with --weights".into()))?;
                let mut inst = FeasibilityInstance::new(n, &weights)
                    .with_identities(identities)
                    .with_projective(!non_projective);
                if let Some(k) = k {
                    inst = inst.with_dimension(k);
                }
                let mut sols = solve_truncated_system(&inst)?;
                if !self_orthogonal.is_empty() {
                    sols = filter_self_orthogonality(sols, &self_orthogonal);
                }
                match format {
                    Format::Enumerator => {
                        for s in &sols {
                            writeln!(out, "k={} {}", s.k, s.distribution)?;
                        }
                    }
                    _ => {
                        writeln!(out, "{}", FeasibleSolution::tsv_header(&inst.weights))?;
                        for s in &sols {
                            writeln!(out, "{}", s.tsv_row(&inst.weights))?;
                        }
                    }
                }
                return Ok(());
            }
            let (a, k) = match enumerator {
                Some(e) => {
                    let n = n.ok_or_else(|| Failure::Usage("--n is required".into()))?;
                    let k = k.ok_or_else(|| Failure::Usage("--k is required".into()))?;
                    (WeightDistribution::parse_enumerator(n, &e)?, k)
                }
                None => {
                    let g = read_codes()?.remove(0);
                    (weight_distribution(&g)?, g.k())
                }
            };
            let b = macwilliams_transform(&a, k)?;
            print_distribution(&mut out, b.as_distribution(), format)?;
        }
        Command::Construct { name } => {
            let name: NamedCode = name.parse()?;
            writeln!(out, "{}", construct_named(name).to_line(false))?;
        }
        Command::Spectrum {
            codeword_weight,
            format,
        } => {
            for g in read_codes()? {
                match codeword_weight {
                    None => print_distribution(&mut out, &weight_distribution(&g)?, format)?,
                    Some(w) => {
                        let g = g.row_basis();
                        for m in 1..1u64 << g.k() {
                            let c = g.encode(m);
                            if c.weight() != w {
                                continue;
                            }
                            let s = subcode_spectrum(&g, &c)?;
                            writeln!(out, "# codeword {c} subcodes {}", s.total())?;
                            write!(out, "{}", s.to_tsv())?;
                        }
                    }
                }
            }
        }
        Command::Lengths { q, r, n } => {
            writeln!(out, "{}", known_length_status(q, r, n)?)?;
        }
        Command::Tables {
            weights,
            delta,
            max_n,
            projective,
            jobs,
            format,
        } => {
            let p = classify_params(weights, delta, max_n, projective, jobs);
            let table = classify(&p, None)?.counts_table();
            match format {
                Format::Aligned => write!(out, "{}", aligned_table(&table))?,
                _ => write!(out, "{table}")?,
            }
        }
        Command::Verify59 {
            records,
            step,
            allow_length,
            y,
        } => {
            let mut cfg = VerifyConfig {
                y: y.map(BigInt::from),
                ..Default::default()
            };
            if let Some(extra) = allow_length {
                cfg.length_status = Box::new(move |q, r, n| {
                    if (q, r, n) == (2, 2, extra) {
                        Ok(LengthStatus::Exists)
                    } else {
                        known_length_status(q, r, n)
                    }
                });
            }
            let reports = match step {
                Some(id) => vec![run_step(id, &cfg)?],
                None => run_steps(&cfg)?,
            };
            for r in &reports {
                if records {
                    writeln!(out, "{}", r.record())?;
                } else {
                    write!(out, "{r}")?;
                }
            }
            if let Some(bad) = reports.iter().find(|r| r.verdict == Verdict::Fails) {
                return Err(Failure::Math(format!("step {} fails", bad.id)));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
