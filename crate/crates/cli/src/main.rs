//! `fibonomial`: fibonomial coefficients, their p-adic valuations, base
//! `F_p` expansions, triangle renders and divisibility sweeps.
//!
//! Exit status is 0 on a clean run, 1 when a counterexample is reported and
//! 2 on usage or domain errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use fibonomial_core::conjecture::{find_counterexample, lucas_binomial_residue, verify_conjecture, SweepMethod, SweepOptions};
use fibonomial_core::fib::{fib, fib_mod, fibonomial, fibonomial_mod};
use fibonomial_core::radix::{expand_base_fp, expand_base_p};
use fibonomial_core::render::{render, Format, RenderSpec, TriangleKind};
use fibonomial_core::valuation::{entry_point, fibonomial_valuation_oracle, kw_valuation, Relation, Valuation};
use fibonomial_core::{Natural, EXACT_CAP};

/// Directory for sweep files when `verify` is given no `--out`.
const OUT_DIR_VAR: &str = "FIBONOMIAL_OUT_DIR";

#[derive(Parser)]
#[command(name = "fibonomial", version, about = "Fibonomial coefficients and their divisibility by primes")]
struct Cli {
    /// Largest n for exact big-integer answers.
    #[arg(long, global = true, default_value_t = EXACT_CAP)]
    cap: u64,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The Fibonacci number F_n.
    Fib {
        n: u64,
        #[arg(long = "mod", value_name = "M")]
        modulus: Option<u64>,
    },
    /// The fibonomial coefficient C(n, k)_F.
    Fibonomial {
        n: u64,
        k: u64,
        #[arg(long = "mod", value_name = "M")]
        modulus: Option<u64>,
    },
    /// Entry point p* of a prime and how it compares with p.
    EntryPoint { p: u64 },
    /// The exponent of p in C(n, k)_F.
    Valuation {
        n: Natural,
        k: Natural,
        #[arg(long)]
        prime: u64,
        /// Defaults to carry for odd primes and oracle for 2.
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Digits of n, least significant first.
    Expand {
        n: Natural,
        #[arg(long, value_enum)]
        base: BaseArg,
        #[arg(long)]
        prime: u64,
    },
    /// C(n, k) mod p from the base-p digits.
    Lucas {
        n: Natural,
        k: Natural,
        #[arg(long)]
        prime: u64,
    },
    /// Render a binomial or fibonomial triangle.
    Triangle {
        #[arg(long)]
        rows: u64,
        #[arg(long = "mod", value_name = "M")]
        modulus: Option<u64>,
        #[arg(long, value_enum, default_value_t = KindArg::Fibonomial)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Ascii)]
        format: FormatArg,
        /// Text glyph per residue, comma separated, starting at residue 0.
        #[arg(long, value_delimiter = ',')]
        glyphs: Option<Vec<String>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print one of the standard small triangles.
    Figure {
        #[arg(value_enum)]
        name: FigureArg,
    },
    /// Sweep the first rows for disagreements between p | C(n, k)_F and the
    /// base F_p digit product, written as JSON lines.
    Verify {
        #[arg(long)]
        prime: u64,
        #[arg(long, required_unless_present = "counterexample")]
        rows: Option<u64>,
        /// JSONL destination; defaults to $FIBONOMIAL_OUT_DIR or stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads, 0 for all available.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        /// Cross-check every N-th pair against the oracle in carry mode; 0 turns it off.
        #[arg(long, default_value_t = 37)]
        oracle_every: u64,
        /// Write the elapsed time into the summary line.
        #[arg(long)]
        record_time: bool,
        /// Report the known witness for a prime with p* < p instead of sweeping.
        #[arg(long)]
        counterexample: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Carry,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    #[value(name = "p")]
    Uniform,
    #[value(name = "Fp")]
    Fibonacci,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Binomial,
    Fibonomial,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Ascii,
    Pgm,
    Svg,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureArg {
    Pascal,
    PascalMod2,
    Fibonomial,
    FibonomialMod2,
    FibonomialMod5,
}

impl FigureArg {
    fn spec(self) -> RenderSpec {
        let (kind, rows, modulus) = match self {
            FigureArg::Pascal => (TriangleKind::Binomial, 8, None),
            FigureArg::PascalMod2 => (TriangleKind::Binomial, 8, Some(2)),
            FigureArg::Fibonomial => (TriangleKind::Fibonomial, 8, None),
            FigureArg::FibonomialMod2 => (TriangleKind::Fibonomial, 9, Some(2)),
            FigureArg::FibonomialMod5 => (TriangleKind::Fibonomial, 10, Some(5)),
        };
        RenderSpec::new(kind, rows, modulus, Format::Ascii)
    }
}

enum Outcome {
    Clean,
    Counterexample,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Counterexample) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn check_cap(n: u64, cap: u64, hint: &str) -> anyhow::Result<()> {
    if n > cap {
        bail!("exact values are offered up to n = {cap} (got {n}); {hint}");
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let json = cli.json;
    match &cli.command {
        Command::Fib { n, modulus } => {
            let value = match modulus {
                Some(m) => fib_mod(*n, *m)?.to_string(),
                None => {
                    check_cap(*n, cli.cap, "pass --mod or raise --cap")?;
                    fib(*n)?.to_string()
                }
            };
            emit(json, json!({ "n": n, "modulus": modulus, "value": value }), &value);
        }
        Command::Fibonomial { n, k, modulus } => {
            let value = match modulus {
                Some(m) => fibonomial_mod(*n, *k, *m)?.to_string(),
                None => {
                    check_cap(*n, cli.cap, "pass --mod or raise --cap")?;
                    fibonomial(*n, *k).to_string()
                }
            };
            emit(json, json!({ "n": n, "k": k, "modulus": modulus, "value": value }), &value);
        }
        Command::EntryPoint { p } => {
            let profile = entry_point(*p)?;
            let sign = match profile.relation {
                Relation::Less => "<",
                Relation::Equal => "=",
                Relation::Greater => ">",
            };
            let text = format!(
                "p* = {}\nnu_{p}(F_{}) = {}\np* {sign} p",
                profile.p_star, profile.p_star, profile.nu_p_f_pstar
            );
            emit(json, serde_json::to_value(profile)?, &text);
        }
        Command::Valuation { n, k, prime, method } => {
            if k > n {
                bail!("k = {k} exceeds n = {n}");
            }
            let profile = entry_point(*prime)?;
            let method = method.unwrap_or(if profile.is_odd() { MethodArg::Carry } else { MethodArg::Oracle });
            let valuation: Valuation = match method {
                MethodArg::Carry => kw_valuation(k, &(n - k), &profile)?,
                MethodArg::Oracle => {
                    let small = u64::try_from(n).ok().filter(|&v| v <= cli.cap);
                    let Some(small) = small else {
                        bail!("the oracle works up to n = {} (got {n}); use --method carry or raise --cap", cli.cap);
                    };
                    let k = u64::try_from(k).expect("k <= n fits");
                    fibonomial_valuation_oracle(small, k, *prime)?
                }
            };
            let doc = json!({
                "n": n.to_string(),
                "k": k.to_string(),
                "p": prime,
                "exponent": valuation.exponent,
                "method": valuation.method,
            });
            emit(json, doc, &valuation.exponent.to_string());
        }
        Command::Expand { n, base, prime } => {
            let digits = match base {
                BaseArg::Uniform => expand_base_p(n, *prime)?,
                BaseArg::Fibonacci => expand_base_fp(n, &entry_point(*prime)?),
            };
            let list: Vec<String> = digits.digits.iter().map(u64::to_string).collect();
            emit(json, serde_json::to_value(&digits)?, &format!("({})", list.join(", ")));
        }
        Command::Lucas { n, k, prime } => {
            let residue = lucas_binomial_residue(n, k, *prime)?;
            let doc = json!({ "n": n.to_string(), "k": k.to_string(), "p": prime, "residue": residue });
            emit(json, doc, &residue.to_string());
        }
        Command::Triangle { rows, modulus, kind, format, glyphs, out } => {
            let kind = match kind {
                KindArg::Binomial => TriangleKind::Binomial,
                KindArg::Fibonomial => TriangleKind::Fibonomial,
            };
            let format = match format {
                FormatArg::Ascii => Format::Ascii,
                FormatArg::Pgm => Format::Pgm,
                FormatArg::Svg => Format::Svg,
                FormatArg::Json => Format::Json,
            };
            let mut spec = RenderSpec::new(kind, *rows, *modulus, format);
            spec.palette = glyphs.clone();
            spec.exact_cap = cli.cap;
            let text = render(&spec)?;
            match out {
                Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
        }
        Command::Figure { name } => print!("{}", render(&name.spec())?),
        Command::Verify { prime, rows, out, jobs, method, oracle_every, record_time, counterexample } => {
            let profile = entry_point(*prime)?;
            if *counterexample {
                let (n, k, verdict) = find_counterexample(&profile)?;
                let text = format!(
                    "p* = {} < p = {prime}; witness (n, k) = ({n}, {k}): {prime} does not divide C({n}, {k})_F \
                     but divides the digit product F_{}",
                    profile.p_star, profile.p_star
                );
                emit(json, serde_json::to_value(verdict)?, &text);
                return Ok(Outcome::Counterexample);
            }
            if profile.relation == Relation::Less {
                bail!(
                    "p* = {} < p = {prime}, so the divisibility rule is known to fail for this prime; \
                     rerun with --counterexample for the witness",
                    profile.p_star
                );
            }
            let rows = rows.expect("clap requires --rows here");
            let options = SweepOptions {
                jobs: *jobs,
                method: method.map(|m| match m {
                    MethodArg::Carry => SweepMethod::Carry,
                    MethodArg::Oracle => SweepMethod::Oracle,
                }),
                oracle_stride: (*oracle_every > 0).then_some(*oracle_every),
            };
            let record = verify_conjecture(&profile, rows, &options)?;
            let path = out.clone().or_else(|| {
                std::env::var_os(OUT_DIR_VAR).map(|dir| PathBuf::from(dir).join(format!("verify-p{prime}-rows{rows}.jsonl")))
            });
            let summary = format!(
                "p = {prime}, rows 0..{rows}, {} method: {} counterexample(s), {} oracle check(s)",
                match record.method {
                    SweepMethod::Carry => "carry",
                    SweepMethod::Oracle => "oracle",
                },
                record.counterexamples.len(),
                record.oracle_checks
            );
            match path {
                Some(path) => {
                    let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                    let mut w = BufWriter::new(file);
                    record.write_jsonl(&mut w, *record_time)?;
                    w.flush()?;
                    println!("{summary}\nwrote {}", path.display());
                }
                None => {
                    let stdout = io::stdout();
                    let mut w = stdout.lock();
                    record.write_jsonl(&mut w, *record_time)?;
                    w.flush()?;
                    eprintln!("{summary}");
                }
            }
            if !record.holds() {
                return Ok(Outcome::Counterexample);
            }
        }
    }
    Ok(Outcome::Clean)
}

fn emit(json: bool, doc: serde_json::Value, text: &str) {
    if json {
        println!("{doc}");
    } else {
        println!("{text}");
    }
}
