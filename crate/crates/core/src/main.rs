use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nm_elasticity::arithmetical::{
    elasticity_sets_equal_arithmetical, recover_a_over_k, recover_d, three_minimal_elasticities,
};
use nm_elasticity::factorizations::LengthTables;
use nm_elasticity::monoid::parse_generators;
use nm_elasticity::plot::{self, PlotKind};
use nm_elasticity::profile::{compare_profiles, ElasticityProfile, Outcome, DEFAULT_T_MAX};
use nm_elasticity::verify::{self, Suite, VerifyOptions};
use nm_elasticity::{NumericalMonoid, Rational};

const EXIT_FAILURE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_NOT_ARITHMETICAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "nm-elasticity",
    version,
    about = "Length and elasticity invariants of numerical monoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Rho,
    Maxlen,
    Minlen,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Core,
    Arith,
    Profile,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Max/min factorization length and elasticity of every element in a range
    Stats {
        /// Comma-separated generators, e.g. 3,5,7
        generators: String,
        #[arg(long)]
        from: Option<u64>,
        #[arg(long)]
        to: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// SVG scatter plot of rho(n), M(n) or m(n)
    Plot {
        generators: String,
        #[arg(long, value_enum, default_value = "rho")]
        kind: Kind,
        #[arg(long)]
        to: Option<u64>,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Recover d and a/k of an arithmetical monoid from its elasticities
    Recover { generators: String },
    /// Decide whether two monoids have the same set of elasticities
    Compare {
        generators: String,
        other: String,
        #[arg(long, default_value_t = DEFAULT_T_MAX)]
        tmax: u64,
    },
    /// Elasticity profile as JSON
    Profile {
        generators: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the invariant suites
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Corrupt a length table first (negative control)
        #[arg(long, hide = true)]
        tamper: bool,
    },
}

enum Failure {
    Invalid(String),
    Io(io::Error),
    NotArithmetical,
    Check(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<nm_elasticity::Error> for Failure {
    fn from(e: nm_elasticity::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::NotArithmetical) => {
            eprintln!("error: monoid is not arithmetical");
            ExitCode::from(EXIT_NOT_ARITHMETICAL)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

fn monoid(text: &str) -> Result<NumericalMonoid, Failure> {
    Ok(NumericalMonoid::new(&parse_generators(text)?)?)
}

fn sink(path: Option<&PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Default upper end of a range: ten periods past the profile window.
fn default_upper(s: &NumericalMonoid) -> u64 {
    if s.embedding_dimension() < 2 {
        return 100;
    }
    s.second_largest() * s.largest() + 10 * s.multiplicity() * s.largest()
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Stats {
            generators,
            from,
            to,
            format,
            output,
        } => {
            let s = monoid(&generators)?;
            if format == Format::Svg {
                return Err(Failure::Invalid(
                    "svg output is only available for plot".into(),
                ));
            }
            let tables = LengthTables::new(&s)?;
            let rows =
                tables.stats_range(from.unwrap_or(0), to.unwrap_or_else(|| default_upper(&s)));
            let mut w = sink(output.as_ref())?;
            match format {
                Format::Csv => {
                    writeln!(w, "n,max_len,min_len,rho_num,rho_den")?;
                    for st in &rows {
                        writeln!(
                            w,
                            "{},{},{},{},{}",
                            st.n,
                            st.max_len,
                            st.min_len,
                            st.elasticity.numer(),
                            st.elasticity.denom()
                        )?;
                    }
                }
                Format::Json => {
                    let values: Vec<_> = rows
                        .iter()
                        .map(|st| {
                            // M(n) and m(n) are machine integers, so the reduced ratio is too
                            let (num, den) = st.elasticity.to_u64_pair().expect("fits in u64");
                            serde_json::json!({
                                "n": st.n,
                                "max_len": st.max_len,
                                "min_len": st.min_len,
                                "rho_num": num,
                                "rho_den": den,
                            })
                        })
                        .collect();
                    serde_json::to_writer_pretty(&mut w, &values).map_err(io::Error::from)?;
                    writeln!(w)?;
                }
                Format::Svg => unreachable!(),
            }
            w.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Plot {
            generators,
            kind,
            to,
            format,
            output,
        } => {
            let s = monoid(&generators)?;
            if format != Format::Svg {
                return Err(Failure::Invalid("plot only writes svg".into()));
            }
            let tables = LengthTables::new(&s)?;
            let kind = match kind {
                Kind::Rho => PlotKind::Rho,
                Kind::Maxlen => PlotKind::MaxLen,
                Kind::Minlen => PlotKind::MinLen,
            };
            let svg = plot::render(&tables, kind, to.unwrap_or_else(|| default_upper(&s)));
            let mut w = sink(output.as_ref())?;
            w.write_all(svg.as_bytes())?;
            w.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Recover { generators } => {
            let s = monoid(&generators)?;
            let params = s.detect_arithmetical().ok_or(Failure::NotArithmetical)?;
            let profile = ElasticityProfile::build(&s)?;
            let smallest = profile.smallest_values(3);
            let [one, f, g] = &smallest[..] else {
                return Err(Failure::Check("fewer than three elasticities".into()));
            };
            if *one != Rational::one() || three_minimal_elasticities(&s)?[..] != smallest[..] {
                return Err(Failure::Check(
                    "tuple parametrization disagrees with the profile".into(),
                ));
            }
            let sup = profile.limit();
            let d = recover_d(f, g)?;
            let a_over_k = recover_a_over_k(&sup, d)?;
            println!("d={d} a/k={a_over_k} sup={sup}");
            if d != params.d() || a_over_k != Rational::from_u64s(params.a(), params.k()) {
                return Err(Failure::Check(format!(
                    "recovered values disagree with {params}"
                )));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare {
            generators,
            other,
            tmax,
        } => {
            let (s, t) = (monoid(&generators)?, monoid(&other)?);
            let (p, q) = (ElasticityProfile::build(&s)?, ElasticityProfile::build(&t)?);
            let verdict = compare_profiles(&p, &q, tmax);
            match verdict.outcome {
                Outcome::Equal => println!("EQUAL"),
                Outcome::NotEqual => println!(
                    "NOT_EQUAL witness={}",
                    verdict
                        .witness
                        .as_ref()
                        .expect("not-equal verdicts carry a witness")
                ),
                Outcome::Unknown => println!("UNKNOWN bound={}", verdict.checked_bound),
            }
            if let (Some(a), Some(b)) = (s.detect_arithmetical(), t.detect_arithmetical()) {
                let equal = elasticity_sets_equal_arithmetical(&a, &b);
                println!("arithmetical {}", if equal { "EQUAL" } else { "NOT_EQUAL" });
                let consistent = match verdict.outcome {
                    Outcome::Equal => equal,
                    Outcome::NotEqual => !equal,
                    Outcome::Unknown => true,
                };
                if !consistent {
                    return Err(Failure::Check(
                        "profile verdict contradicts the arithmetical criterion".into(),
                    ));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Profile { generators, output } => {
            let s = monoid(&generators)?;
            let profile = ElasticityProfile::build(&s)?;
            let mut w = sink(output.as_ref())?;
            writeln!(w, "{}", profile.to_json()?)?;
            w.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, tamper } => {
            let suite = match suite {
                SuiteArg::Core => Suite::Core,
                SuiteArg::Arith => Suite::Arith,
                SuiteArg::Profile => Suite::Profile,
                SuiteArg::All => Suite::All,
            };
            let results = verify::run(suite, VerifyOptions { tamper });
            let mut failed = 0;
            for r in &results {
                if r.passed {
                    println!("PASS {}", r.name);
                } else {
                    failed += 1;
                    println!("FAIL {}: {}", r.name, r.detail);
                }
            }
            println!("{} checks, {failed} failed", results.len());
            Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILURE)
            })
        }
    }
}
