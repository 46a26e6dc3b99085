//! Command-line front end: parse matroid descriptions, dispatch the
//! computations, and emit canonical text or JSON.
//!
//! All numeric output is exact and byte-identical across runs and worker
//! counts. Exit codes: 0 on success, 1 on a computation error (with a
//! machine-readable JSON object on stderr), 2 on a usage error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use chaintutte::{
    chain_tutte, chain_tutte_recursive, chain_whitney, check_valuation, constant_evaluations,
    characteristic_poly, expected_codim, g_invariant, j_mobius_poly, mobius_poly,
    opposite_char_poly, universal_chain_tutte, ChainTuttePoly, EnumOptions, Error, InvariantId,
    LaurentPoly, Matroid, MatroidKind, SubdivisionNerve, Variable,
};

#[derive(Parser)]
#[command(
    name = "chaintutte",
    version,
    about = "Chain Tutte/Whitney polynomials of matroids and their derived invariants"
)]
struct Cli {
    /// Inline matroid JSON, e.g. '{"type":"uniform","r":2,"n":4}'
    #[arg(long, global = true, value_name = "JSON")]
    matroid: Option<String>,

    /// Path to a file holding the matroid JSON
    #[arg(long, global = true, value_name = "PATH", conflicts_with = "matroid")]
    matroid_file: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads (default: available parallelism); results are
    /// byte-identical for any value
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Chain-enumeration budget, checked against (k+1)^n
    #[arg(long, global = true)]
    max_chains: Option<u64>,

    /// Permutation budget for the G-invariant, checked against n!
    #[arg(long, global = true)]
    max_perms: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the chain Tutte polynomial T^k (or the Whitney / universal forms)
    ChainTutte {
        #[arg(short)]
        k: usize,
        /// Use the split-polynomial recursion instead of direct enumeration
        #[arg(long, conflicts_with_all = ["whitney", "universal"])]
        recursive: bool,
        /// Emit the chain Whitney form W^k in the a/b variables
        #[arg(long, conflicts_with = "universal")]
        whitney: bool,
        /// Emit the universal chain polynomial in the u/v variables
        #[arg(long)]
        universal: bool,
    },
    /// Evaluate T^k exactly at a rational point
    Evaluate {
        #[arg(short)]
        k: usize,
        /// Point as JSON, e.g. '{"x1":2,"x2":1,"y1":1,"y2":2}'; values may
        /// be integers or "p/q" strings
        #[arg(long, value_name = "JSON")]
        point: String,
    },
    /// Compute a derived invariant
    Invariant {
        /// One of: mobius-poly | char-poly | opp-char-poly | j-mobius |
        /// ford-s | expected-codim | g-invariant | constant-evals
        #[arg(long)]
        name: String,
        /// Chain level for constant-evals (default 2)
        #[arg(short)]
        k: Option<usize>,
    },
    /// Check the inclusion-exclusion valuation identity on a subdivision nerve
    CheckValuation {
        /// Path to the nerve JSON file
        #[arg(long)]
        nerve: PathBuf,
        /// One of: chain-tutte | chain-whitney | mobius-poly |
        /// opp-char-poly | j-mobius | ford-s | g-invariant
        #[arg(long)]
        invariant: String,
        /// Chain level for the chain-tutte / chain-whitney invariants
        #[arg(short)]
        k: Option<usize>,
    },
    /// Validate the matroid axioms of the input and report its kind
    Validate,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            println!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            let payload = serde_json::json!({
                "error": { "kind": err.kind(), "message": err.to_string() }
            });
            eprintln!("{payload}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<String, Error> {
    let opts = enum_options(cli);
    match &cli.command {
        Command::ChainTutte { k, recursive, whitney, universal } => {
            let m = load_matroid(cli)?;
            let result = if *whitney {
                chain_whitney(&m, *k, &opts)?
            } else if *universal {
                universal_chain_tutte(&m, *k, &opts)?
            } else if *recursive {
                chain_tutte_recursive(&m, *k, &opts)?
            } else {
                chain_tutte(&m, *k, &opts)?
            };
            Ok(render_chain_poly(&result, cli.format))
        }
        Command::Evaluate { k, point } => {
            let m = load_matroid(cli)?;
            let t = chain_tutte(&m, *k, &opts)?;
            let bound = parse_point(point)?;
            let value = t.poly.evaluate(&bound)?;
            Ok(match cli.format {
                Format::Text => format_rational(&value),
                Format::Json => {
                    serde_json::json!({ "value": format_rational(&value) }).to_string()
                }
            })
        }
        Command::Invariant { name, k } => {
            let m = load_matroid(cli)?;
            invariant_output(&m, name, k.unwrap_or(2), cli.format, &opts)
        }
        Command::CheckValuation { nerve, invariant, k } => {
            let text = std::fs::read_to_string(nerve)
                .map_err(|e| Error::Json(format!("cannot read {}: {e}", nerve.display())))?;
            let nerve = SubdivisionNerve::from_json_str(&text)?;
            let id = InvariantId::parse(invariant, *k)?;
            let report = check_valuation(id, &nerve, &opts)?;
            Ok(match cli.format {
                Format::Text => format!(
                    "invariant: {}\nequal: {}\npieces evaluated: {}",
                    report.invariant, report.equal, report.pieces_evaluated
                ),
                Format::Json => report.to_json().to_string(),
            })
        }
        Command::Validate => {
            let m = load_matroid(cli)?;
            let kind = match m.kind() {
                MatroidKind::Matroid => "matroid",
                MatroidKind::Polymatroid => "polymatroid",
            };
            Ok(match cli.format {
                Format::Text => format!("valid {kind}: n={}, rank={}", m.n(), m.rank_m()),
                Format::Json => serde_json::json!({
                    "valid": true,
                    "kind": kind,
                    "n": m.n(),
                    "rank": m.rank_m(),
                })
                .to_string(),
            })
        }
    }
}

fn enum_options(cli: &Cli) -> EnumOptions {
    let mut opts = EnumOptions::default();
    if let Some(threads) = cli.threads {
        opts.threads = threads.max(1);
    }
    if let Some(max_chains) = cli.max_chains {
        opts.max_chains = max_chains;
    }
    if let Some(max_perms) = cli.max_perms {
        opts.max_perms = max_perms;
    }
    opts
}

fn load_matroid(cli: &Cli) -> Result<Matroid, Error> {
    let text = match (&cli.matroid, &cli.matroid_file) {
        (Some(inline), _) => inline.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Error::Json(format!("cannot read {}: {e}", path.display())))?,
        (None, None) => {
            return Err(Error::InvalidParameters(
                "a matroid is required: pass --matroid or --matroid-file".into(),
            ))
        }
    };
    Matroid::from_json_str(&text)
}

fn render_chain_poly(p: &ChainTuttePoly, format: Format) -> String {
    match format {
        Format::Text => p.poly.canonical_string(),
        Format::Json => serde_json::json!({
            "k": p.k,
            "n": p.n,
            "rank": p.matroid_rank,
            "form": p.form.name(),
            "poly": p.poly.to_json(),
        })
        .to_string(),
    }
}

fn parse_point(text: &str) -> Result<BTreeMap<Variable, BigRational>, Error> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Json(format!("bad point: {e}")))?;
    let map = value
        .as_object()
        .ok_or_else(|| Error::Json("the point must be a JSON object".into()))?;
    let mut out = BTreeMap::new();
    for (name, entry) in map {
        let var: Variable = name.parse()?;
        let rational = match entry {
            serde_json::Value::Number(num) => {
                if let Some(int) = num.as_i64() {
                    BigRational::from_integer(int.into())
                } else {
                    return Err(Error::Json(format!(
                        "value for `{name}` must be an integer or a \"p/q\" string"
                    )));
                }
            }
            serde_json::Value::String(s) => BigRational::from_str(s)
                .map_err(|_| Error::Json(format!("bad rational `{s}` for `{name}`")))?,
            _ => {
                return Err(Error::Json(format!(
                    "value for `{name}` must be an integer or a \"p/q\" string"
                )))
            }
        };
        out.insert(var, rational);
    }
    Ok(out)
}

fn format_rational(value: &BigRational) -> String {
    if value.is_integer() {
        value.to_integer().to_string()
    } else {
        value.to_string()
    }
}

fn invariant_output(
    m: &Matroid,
    name: &str,
    k: usize,
    format: Format,
    opts: &EnumOptions,
) -> Result<String, Error> {
    let poly_out = |name: &str, p: LaurentPoly, format: Format| -> String {
        match format {
            Format::Text => p.canonical_string(),
            Format::Json => {
                serde_json::json!({ "name": name, "poly": p.to_json() }).to_string()
            }
        }
    };
    Ok(match name {
        "mobius-poly" => poly_out(name, mobius_poly(m)?, format),
        "char-poly" => poly_out(name, characteristic_poly(m)?, format),
        "opp-char-poly" => poly_out(name, opposite_char_poly(m)?, format),
        "j-mobius" => poly_out(name, j_mobius_poly(m)?, format),
        "ford-s" => poly_out(name, chaintutte::ford_s_poly(m)?, format),
        "expected-codim" => {
            let value = expected_codim(m)?;
            match format {
                Format::Text => value.to_string(),
                Format::Json => {
                    serde_json::json!({ "name": name, "value": value.to_string() }).to_string()
                }
            }
        }
        "g-invariant" => {
            let g = g_invariant(m, opts)?;
            g.to_json().to_string()
        }
        "constant-evals" => {
            let record = constant_evaluations(m, k, opts)?;
            record.to_json().to_string()
        }
        other => return Err(Error::UnknownInvariant(other.to_string())),
    })
}
