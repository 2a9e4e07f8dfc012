use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use coulomb_cli::{to_csv, to_json, TheoryFile};
use coulomb_core::abelian::{ring_hilbert, unit_relations};
use coulomb_core::monopole::{fmt_coweight, glue, hilbert, MonopoleError, Refine};
use coulomb_core::motivic::{matter_exponent, normalization, term_check};
use coulomb_core::series::TruncatedSeries;
use coulomb_core::symprod::{pe_identity_check, qbinomial_check, SymProdCase};
use coulomb_core::theory::{classify, Verdict};
use num_traits::Zero;

const DEFAULT_CUTOFF: usize = 20;

/// Coulomb-branch Hilbert series from the monopole formula.
///
/// Refined series carry one fugacity per generator of π₁(G): z1, z2, ... for
/// free generators and w1, w2, ... for torsion ones.
///
/// Exit status: 0 success, 1 invalid input, 2 Bad theory, 3 failed check.
#[derive(Parser)]
#[command(name = "coulomb", version)]
struct Cli {
    /// Worker threads for the term sums (output does not depend on it).
    #[arg(long, global = true, env = "COULOMB_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Args)]
struct SeriesOpts {
    /// Highest power of t kept [default: 20].
    #[arg(long, env = "COULOMB_CUTOFF")]
    cutoff: Option<usize>,
    #[arg(long, value_enum, env = "COULOMB_FORMAT", default_value = "human")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Monopole-formula series of one theory.
    Hilbert {
        file: PathBuf,
        #[command(flatten)]
        series: SeriesOpts,
        /// Grade by π₁(G).
        #[arg(long, env = "COULOMB_REFINE", num_args = 0..=1, default_missing_value = "true")]
        refine: Option<bool>,
        /// Background flavor coweight, comma separated.
        #[arg(
            long,
            env = "COULOMB_LAMBDA_F",
            value_delimiter = ',',
            allow_hyphen_values = true
        )]
        lambda_f: Option<Vec<i64>>,
        /// Enumerate a fixed box instead of the slope bound.
        #[arg(long, env = "COULOMB_RADIUS_OVERRIDE")]
        radius_override: Option<i64>,
    },
    /// Good, ugly or bad, with a witness coweight.
    Classify {
        file: PathBuf,
        /// Lattice search radius used when the exact vertex search is too big.
        #[arg(long)]
        radius: Option<i64>,
    },
    /// Series of the fiber product of several flavored theories, assembled
    /// from their flavored series.
    Glue {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        series: SeriesOpts,
    },
    /// Abelian theories: series of the explicit ring presentation.
    AbelianRing {
        file: PathBuf,
        #[command(flatten)]
        series: SeriesOpts,
        #[arg(long, env = "COULOMB_REFINE", num_args = 0..=1, default_missing_value = "true")]
        refine: Option<bool>,
        /// Print products of the unit monopole operators up to this degree.
        #[arg(long)]
        relations: Option<i64>,
        /// Compare against the monopole formula (lift as background flux).
        #[arg(long)]
        check: bool,
    },
    /// Compare each monopole term with the class of the automorphism group
    /// of the corresponding bundle on P¹.
    MotivicCheck {
        file: PathBuf,
        /// Dominant coweights with entries in [-box, box].
        #[arg(long = "box", default_value_t = 2)]
        radius: i64,
        /// Degree of the line bundle twisting the matter; prints the matter
        /// exponent per coweight.
        #[arg(long, allow_hyphen_values = true)]
        deg_m1: Option<i64>,
        /// Divide out the overall factor (-1)^r s^r before printing.
        #[arg(long)]
        normalize: bool,
    },
    /// Check Σ_k H_k Λ^k = PE(Λ H_1) for U(k) with an adjoint and N
    /// fundamentals.
    SymprodCheck {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = 12)]
        order_t: usize,
        #[arg(long, default_value_t = 3)]
        order_lambda: usize,
        /// Also check the q-binomial resummation.
        #[arg(long)]
        qbinomial: bool,
    },
}

fn emit(s: &TruncatedSeries, format: Format) {
    match format {
        Format::Human => println!("{s}"),
        Format::Json => println!("{}", to_json(s)),
        Format::Csv => print!("{}", to_csv(s)),
    }
}

fn load(path: &Path) -> Result<TheoryFile> {
    TheoryFile::load(path).with_context(|| format!("loading {}", path.display()))
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()?;
    }
    match cli.command {
        Command::Hilbert {
            file,
            series,
            refine,
            lambda_f,
            radius_override,
        } => {
            let f = load(&file)?;
            let th = f.theory()?;
            let cutoff = series.cutoff.or(f.options.cutoff).unwrap_or(DEFAULT_CUTOFF);
            let refine = Refine {
                pi1: refine.or(f.options.refine).unwrap_or(false),
                lambda_f: lambda_f.or_else(|| f.default_lambda_f()),
            };
            let radius = radius_override.or(f.options.radius_override);
            emit(&hilbert(&th, cutoff, &refine, radius)?, series.format);
            Ok(0)
        }
        Command::Classify { file, radius } => {
            let th = load(&file)?.theory()?;
            let c = classify(&th, radius)?;
            let mut line = match (&c.witness, c.min_nonzero_two_delta) {
                (Some(w), Some(d)) if c.verdict == Verdict::Good => {
                    format!("Good, smallest nonzero 2Δ={} at λ={}", d, fmt_coweight(w))
                }
                (Some(w), Some(d)) => {
                    format!("{}, witness λ={}, 2Δ={}", c.verdict, fmt_coweight(w), d)
                }
                _ => c.verdict.to_string(),
            };
            if c.bounded_search {
                line.push_str(" (bounded search)");
            }
            println!("{line}");
            Ok(if c.verdict == Verdict::Bad { 2 } else { 0 })
        }
        Command::Glue { files, series } => {
            let files = files.iter().map(|p| load(p)).collect::<Result<Vec<_>>>()?;
            let theories = files
                .iter()
                .map(|f| f.theory())
                .collect::<Result<Vec<_>, _>>()?;
            let cutoff = series
                .cutoff
                .or(files[0].options.cutoff)
                .unwrap_or(DEFAULT_CUTOFF);
            emit(&glue(&theories, cutoff)?, series.format);
            Ok(0)
        }
        Command::AbelianRing {
            file,
            series,
            refine,
            relations,
            check,
        } => {
            let f = load(&file)?;
            let data = f.abelian()?;
            let cutoff = series.cutoff.or(f.options.cutoff).unwrap_or(DEFAULT_CUTOFF);
            let refined = refine.or(f.options.refine).unwrap_or(false);
            let ring = ring_hilbert(&data, cutoff, refined)?;
            emit(&ring, series.format);
            if let Some(max) = relations {
                for r in unit_relations(&data, max) {
                    println!(
                        "z^{} * z^{} = {}",
                        fmt_coweight(&r.left),
                        fmt_coweight(&r.right),
                        r.product
                    );
                }
            }
            if check {
                let th = data.theory()?;
                let refine = Refine {
                    pi1: refined,
                    lambda_f: Some(data.lift().to_vec()),
                };
                let mono = hilbert(&th, cutoff, &refine, None)?;
                if mono != ring {
                    eprintln!("ring series differs from the monopole formula: {mono}");
                    return Ok(3);
                }
                println!("agrees with the monopole formula to t^{cutoff}");
            }
            Ok(0)
        }
        Command::MotivicCheck {
            file,
            radius,
            deg_m1,
            normalize,
        } => {
            let th = load(&file)?.theory()?;
            let rd = &th.gauge;
            let norm = normalization(rd);
            println!(
                "normalization factor: {norm}{}",
                if normalize { " (divided out)" } else { "" }
            );
            let mut failures = 0;
            let points = rd.dominant_in_box(radius);
            for l in &points {
                let c = term_check(rd, l)?;
                let shown = if normalize {
                    c.monopole.div(&norm)
                } else {
                    c.monopole.clone()
                };
                let mut line = format!("λ={}\t{}", fmt_coweight(l), shown);
                if let Some(d) = deg_m1 {
                    line.push_str(&format!("\tmatter exponent {}", matter_exponent(&th, l, d)));
                }
                if !c.holds() {
                    failures += 1;
                    line.push_str(&format!("\tMISMATCH general={}", c.general));
                }
                println!("{line}");
            }
            println!(
                "checked {} coweights, {} mismatches",
                points.len(),
                failures
            );
            Ok(if failures == 0 { 0 } else { 3 })
        }
        Command::SymprodCheck {
            n,
            order_t,
            order_lambda,
            qbinomial,
        } => {
            let case = SymProdCase::new(n, order_t, order_lambda)?;
            let d = pe_identity_check(&case)?;
            println!("plethystic identity: max discrepancy {d}");
            let mut ok = d.is_zero();
            if qbinomial {
                let q = qbinomial_check(&case);
                println!("q-binomial resummation: max discrepancy {q}");
                ok &= q.is_zero();
            }
            Ok(if ok { 0 } else { 3 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let bad = e.chain().any(|c| {
                matches!(
                    c.downcast_ref::<MonopoleError>(),
                    Some(MonopoleError::Bad { .. } | MonopoleError::DivergentGlue(_))
                )
            });
            if bad {
                eprintln!("{e}");
                ExitCode::from(2)
            } else {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        }
    }
}
