//! Command-line front end: compute Hall products and Hall polynomials, and
//! run the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid partition input,
//! 3 bound violation, 4 cache corruption.

mod report;

use clap::{Parser, Subcommand};
use hallforge::fq::{self, PrimePower};
use hallforge::hall::{hall_multiply, F1VectBackend, F1tBackend, FqModuleBackend, HallElement};
use hallforge::partition::Partition;
use hallforge::{Error, QPoly};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hallforge",
    about = "Exact Hall algebra structure constants and identity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two basis elements in the chosen Hall algebra.
    HallMult {
        /// Backend: `fq:<q>:<N>`, `f1`, or `f1t`.
        #[arg(long)]
        backend: String,
        /// Left factor: comma-separated decreasing partition (or a single
        /// size for the f1 backend). Empty string = unit.
        #[arg(long, default_value = "")]
        left: String,
        /// Right factor, same format as --left.
        #[arg(long, default_value = "")]
        right: String,
    },
    /// Compute the Hall polynomial g^λ_{μν}(t).
    HallPoly {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        /// Cache directory; defaults to $HALLFORGE_CACHE when set.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        /// One of: zelevinsky, green, segal, symfunc, statistics, f1-bridge.
        suite: String,
        /// Partition-size bound used by size-driven suites.
        #[arg(long)]
        size: Option<u32>,
        /// Field order used by q-driven suites.
        #[arg(long)]
        q: Option<u32>,
        /// Dimension bound used by dimension-driven suites.
        #[arg(long)]
        dim: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e.downcast_ref::<Error>() {
                Some(Error::BoundExceeded(_)) => ExitCode::from(3),
                Some(Error::InvalidPartition(_)) | Some(Error::InvalidArgument(_)) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::HallMult {
            backend,
            left,
            right,
        } => cmd_hall_mult(&backend, &left, &right),
        Command::HallPoly {
            lambda,
            mu,
            nu,
            cache,
        } => cmd_hall_poly(&lambda, &mu, &nu, cache),
        Command::Verify {
            suite,
            size,
            q,
            dim,
        } => report::cmd_verify(&suite, size, q, dim),
    }
}

/// Parses a comma-separated decreasing partition; rejects non-decreasing
/// input instead of sorting silently. The empty string is the empty
/// partition.
fn parse_partition(s: &str) -> Result<Partition, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Partition::empty());
    }
    let mut parts = Vec::new();
    for piece in s.split(',') {
        let v: u32 = piece
            .trim()
            .parse()
            .map_err(|_| Error::InvalidPartition(format!("bad part {piece:?}")))?;
        parts.push(v);
    }
    Partition::new(parts)
}

fn parse_size(s: &str) -> Result<u32, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(0);
    }
    s.parse()
        .map_err(|_| Error::InvalidPartition(format!("bad size {s:?}")))
}

#[derive(serde::Serialize)]
struct MultReport {
    backend: String,
    left: Vec<u32>,
    right: Vec<u32>,
    product: Vec<TermJson>,
}

#[derive(serde::Serialize)]
struct TermJson {
    label: Vec<u32>,
    coeff: i128,
}

fn coeff_to_i128(r: &hallforge::Rat) -> anyhow::Result<i128> {
    if !r.is_integer() {
        anyhow::bail!("non-integer product coefficient {r}");
    }
    i128::try_from(r.to_integer()).map_err(|_| anyhow::anyhow!("coefficient overflow"))
}

fn cmd_hall_mult(backend: &str, left: &str, right: &str) -> anyhow::Result<ExitCode> {
    let pieces: Vec<&str> = backend.split(':').collect();
    let (text, report): (String, MultReport) = match pieces.as_slice() {
        ["fq", q, n] => {
            let q: u32 = q
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad field order {q:?}")))?;
            let n: u32 = n
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad nilpotency order {n:?}")))?;
            let left = parse_partition(left)?;
            let right = parse_partition(right)?;
            if left.first() > n || right.first() > n {
                return Err(Error::InvalidArgument(format!(
                    "parts exceed the nilpotency order {n}"
                ))
                .into());
            }
            let b = FqModuleBackend::new(PrimePower::new(q)?, n, left.size() + right.size());
            let product = hall_multiply(
                &b,
                &HallElement::basis(left.clone()),
                &HallElement::basis(right.clone()),
            )?;
            let mut text_terms = Vec::new();
            let mut json_terms = Vec::new();
            for (label, coeff) in product.terms() {
                let c = coeff_to_i128(coeff)?;
                text_terms.push(format!("{c}·{label}"));
                json_terms.push(TermJson {
                    label: label.parts().to_vec(),
                    coeff: c,
                });
            }
            (
                join_terms(&text_terms),
                MultReport {
                    backend: backend.to_string(),
                    left: left.parts().to_vec(),
                    right: right.parts().to_vec(),
                    product: json_terms,
                },
            )
        }
        ["f1t"] => {
            let left = parse_partition(left)?;
            let right = parse_partition(right)?;
            let b = F1tBackend {
                max_size: left.size() + right.size(),
            };
            let product = hall_multiply(
                &b,
                &HallElement::basis(left.clone()),
                &HallElement::basis(right.clone()),
            )?;
            let mut text_terms = Vec::new();
            let mut json_terms = Vec::new();
            for (label, coeff) in product.terms() {
                let c = coeff_to_i128(coeff)?;
                text_terms.push(format!("{c}·{label}"));
                json_terms.push(TermJson {
                    label: label.parts().to_vec(),
                    coeff: c,
                });
            }
            (
                join_terms(&text_terms),
                MultReport {
                    backend: backend.to_string(),
                    left: left.parts().to_vec(),
                    right: right.parts().to_vec(),
                    product: json_terms,
                },
            )
        }
        ["f1"] => {
            let left = parse_size(left)?;
            let right = parse_size(right)?;
            let b = F1VectBackend {
                max_size: left + right,
            };
            let product = hall_multiply(&b, &HallElement::basis(left), &HallElement::basis(right))?;
            let mut text_terms = Vec::new();
            let mut json_terms = Vec::new();
            for (label, coeff) in product.terms() {
                let c = coeff_to_i128(coeff)?;
                text_terms.push(format!("{c}·[{label}]"));
                json_terms.push(TermJson {
                    label: vec![*label],
                    coeff: c,
                });
            }
            (
                join_terms(&text_terms),
                MultReport {
                    backend: backend.to_string(),
                    left: vec![left],
                    right: vec![right],
                    product: json_terms,
                },
            )
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unknown backend {backend:?}; use fq:<q>:<N>, f1, or f1t"
            ))
            .into())
        }
    };
    println!("{text}");
    println!("{}", serde_json::to_string(&report)?);
    Ok(ExitCode::SUCCESS)
}

fn join_terms(terms: &[String]) -> String {
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

#[derive(serde::Serialize, serde::Deserialize, PartialEq, Clone)]
struct PolyCacheEntry {
    lambda: Vec<u32>,
    mu: Vec<u32>,
    nu: Vec<u32>,
    poly: QPoly,
}

fn cmd_hall_poly(
    lambda: &str,
    mu: &str,
    nu: &str,
    cache: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let lambda = parse_partition(lambda)?;
    let mu = parse_partition(mu)?;
    let nu = parse_partition(nu)?;
    let cache_dir = cache.or_else(|| std::env::var_os("HALLFORGE_CACHE").map(PathBuf::from));
    let cache_file = cache_dir.map(|d| d.join("hall_poly_cache.json"));

    let mut entries: Vec<PolyCacheEntry> = Vec::new();
    if let Some(path) = &cache_file {
        if path.exists() {
            let data = std::fs::read_to_string(path)?;
            match serde_json::from_str::<Vec<PolyCacheEntry>>(&data) {
                Ok(parsed) => entries = parsed,
                Err(e) => {
                    eprintln!("error: cache corrupt: {e}");
                    return Ok(ExitCode::from(4));
                }
            }
        }
    }

    let key = (
        lambda.parts().to_vec(),
        mu.parts().to_vec(),
        nu.parts().to_vec(),
    );
    let hit = entries
        .iter()
        .find(|e| (e.lambda.clone(), e.mu.clone(), e.nu.clone()) == key)
        .cloned();
    let poly = match hit {
        Some(entry) => {
            // validate the cached polynomial with one fresh sample
            let q = PrimePower::new(2)?;
            let fresh = fq::hall_constant_direct(q, &lambda, &mu, &nu)?;
            if entry.poly.eval_i64(2) != fresh {
                eprintln!("error: cache corrupt: cached polynomial fails a fresh sample");
                return Ok(ExitCode::from(4));
            }
            entry.poly
        }
        None => {
            let poly = fq::hall_polynomial(&lambda, &mu, &nu)?;
            entries.push(PolyCacheEntry {
                lambda: lambda.parts().to_vec(),
                mu: mu.parts().to_vec(),
                nu: nu.parts().to_vec(),
                poly: poly.clone(),
            });
            if let Some(path) = &cache_file {
                if let Some(parent) = path.parent() {
                    std::fs::create_dir_all(parent)?;
                }
                std::fs::write(path, serde_json::to_string(&entries)?)?;
            }
            poly
        }
    };
    println!("{}", poly.to_string().replace('q', "t"));
    println!(
        "{}",
        serde_json::to_string(&PolyCacheEntry {
            lambda: lambda.parts().to_vec(),
            mu: mu.parts().to_vec(),
            nu: nu.parts().to_vec(),
            poly,
        })?
    );
    Ok(ExitCode::SUCCESS)
}
