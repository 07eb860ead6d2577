//! `videal`: classify quadratic orders and numerical semigroups by
//! their multiplicative ideal theory, evaluate ideal expressions, and
//! run the arithmetic self-check suites.

mod expr;
mod spec;

use clap::{Parser, Subcommand, ValueEnum};
use spec::{Domain, DomainSpec};
use std::path::PathBuf;
use std::time::Instant;
use videal::report;
use videal::selftest;

#[derive(Parser)]
#[command(
    name = "videal",
    version,
    about = "Exact ideal arithmetic and v-/t-classification for quadratic orders and numerical semigroups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable report (includes wall-clock time).
    Text,
    /// Byte-reproducible structured document.
    Structured,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a domain: v-domain, PvMD, Mori, Krull and friends, with witnesses
    Classify {
        /// Spec file of flat `key = value` lines
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Inline spec, e.g.: quadratic d=-3 f=2  |  semigroup 2,3
        inline: Vec<String>,
        /// Cap pair heights and ideal enumeration at N
        #[arg(long)]
        bound: Option<u32>,
        /// Random ideals sampled per sweep
        #[arg(long)]
        samples: Option<u32>,
        /// RNG seed (identical seed + bounds reproduce reports byte for byte)
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Comma-separated rational primes for the essential-prime table (quadratic only)
        #[arg(long)]
        primes: Option<String>,
    },
    /// Evaluate an ideal expression over a domain and print its canonical form
    Ideal {
        /// Spec file of flat `key = value` lines
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Inline spec tokens followed by the expression (the last argument)
        args: Vec<String>,
    },
    /// Run the internal oracle-differential and invariant suites
    Selftest {
        /// Scales the random-case volume (default 8)
        #[arg(long, default_value_t = 8)]
        bound: u32,
        /// Base number of random cases per suite
        #[arg(long, default_value_t = 60)]
        samples: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Corrupt one operation on purpose to demonstrate detection
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    match Cli::parse().cmd {
        Cmd::Classify {
            spec,
            inline,
            bound,
            samples,
            seed,
            format,
            primes,
        } => cmd_classify(spec, inline, bound, samples, seed, format, primes),
        Cmd::Ideal { spec, args } => cmd_ideal(spec, args),
        Cmd::Selftest {
            bound,
            samples,
            seed,
            inject_fault,
        } => cmd_selftest(bound, samples, seed, inject_fault),
    }
}

/// Load the domain spec from a file or from inline tokens (exactly one
/// of the two), apply flag overrides, or explain why not.
fn load_spec(
    file: Option<PathBuf>,
    inline: &[String],
    bound: Option<u32>,
    samples: Option<u32>,
    seed: Option<u64>,
) -> Result<DomainSpec, String> {
    let mut parsed = match (file, inline.is_empty()) {
        (Some(path), true) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
            spec::parse_spec(&text).map_err(|e| format!("{}: {}", path.display(), e))?
        }
        (None, false) => spec::parse_inline(inline).map_err(|e| format!("inline spec: {}", e))?,
        (Some(_), false) => return Err("give either --spec or an inline spec, not both".into()),
        (None, true) => {
            return Err(
                "missing domain: give --spec FILE or an inline spec like `quadratic d=-3 f=2`"
                    .into(),
            )
        }
    };
    if let Some(b) = bound {
        parsed.bounds.pair_height = b;
        parsed.bounds.ideal_bound = b;
    }
    if let Some(s) = samples {
        parsed.bounds.samples = s;
    }
    if let Some(s) = seed {
        parsed.bounds.seed = s;
    }
    Ok(parsed)
}

fn parse_primes(arg: &str) -> Result<Vec<u64>, String> {
    arg.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u64>()
                .map_err(|_| format!("`{}` is not a prime argument (expected integers)", s))
        })
        .collect()
}

fn cmd_classify(
    file: Option<PathBuf>,
    inline: Vec<String>,
    bound: Option<u32>,
    samples: Option<u32>,
    seed: Option<u64>,
    format: Format,
    primes: Option<String>,
) -> i32 {
    let parsed = match load_spec(file, &inline, bound, samples, seed) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}", e);
            return 2;
        }
    };
    let primes = match primes.as_deref().map(parse_primes).transpose() {
        Ok(p) => p.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {}", e);
            return 2;
        }
    };
    let start = Instant::now();
    let doc = match &parsed.domain {
        Domain::Quad(order) => report::quadratic_report(order, &parsed.bounds, &primes),
        Domain::Sg(sg) => {
            if !primes.is_empty() {
                eprintln!("error: the essential-prime table applies only to quadratic orders");
                return 2;
            }
            report::semigroup_report(sg, &parsed.bounds)
        }
    };
    match doc {
        Ok(doc) => {
            match format {
                Format::Text => print!(
                    "{}",
                    report::to_text(&doc, Some(start.elapsed().as_millis()))
                ),
                Format::Structured => print!("{}", report::to_json(&doc)),
            }
            0
        }
        Err(e) => {
            eprintln!("error: {}", e);
            1
        }
    }
}

fn cmd_ideal(file: Option<PathBuf>, mut args: Vec<String>) -> i32 {
    let Some(expression) = args.pop() else {
        eprintln!("error: missing the ideal expression (the last argument)");
        return 2;
    };
    let parsed = match load_spec(file, &args, None, None, None) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}", e);
            return 2;
        }
    };
    let rendered = match &parsed.domain {
        Domain::Quad(order) => expr::describe_ideal(order, &expression),
        Domain::Sg(sg) => expr::describe_ideal(sg, &expression),
    };
    match rendered {
        Ok(text) => {
            print!("{}", text);
            0
        }
        Err(e) => {
            eprintln!("{}", e.render(&expression));
            2
        }
    }
}

fn cmd_selftest(bound: u32, samples: u32, seed: u64, inject_fault: Option<String>) -> i32 {
    if let Some(name) = inject_fault {
        let Some(fault) = selftest::Fault::parse(&name) else {
            eprintln!(
                "error: unknown fault `{}` (choose from: {})",
                name,
                selftest::Fault::names().join(", ")
            );
            return 2;
        };
        return match selftest::run_with_fault(fault) {
            Some(err) => {
                println!("injected fault: {}", name);
                println!("detected: {}", err);
                1
            }
            None => {
                println!("injected fault: {}", name);
                println!("UNDETECTED: the consistency checks missed the corruption");
                1
            }
        };
    }
    let effective = (samples.max(10)).saturating_mul(bound.max(1)) / 8;
    let report = selftest::run(seed, effective.max(10));
    print!("{}", report.render());
    if report.all_passed() {
        0
    } else {
        1
    }
}
