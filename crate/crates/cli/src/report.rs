//! Verification suites behind `hallforge verify`, each emitting a
//! machine-readable JSON report and the matching exit code.

use hallforge::fq::{self, PrimePower};
use hallforge::hall::{green_compatibility_check, FqVectBackend};
use hallforge::partition::{partitions_of, Composition, Partition};
use hallforge::{f1, groupoid, qanalog, symfunc, zelevinsky, Error, Rat};
use num_traits::One;
use std::process::ExitCode;

#[derive(serde::Serialize)]
struct VerifyReport {
    suite: String,
    cases: usize,
    failures: Vec<String>,
}

pub fn cmd_verify(
    suite: &str,
    size: Option<u32>,
    q: Option<u32>,
    dim: Option<u32>,
) -> anyhow::Result<ExitCode> {
    let (cases, failures) = match suite {
        "zelevinsky" => verify_zelevinsky(size.unwrap_or(4))?,
        "green" => verify_green(q.unwrap_or(2), dim.unwrap_or(3))?,
        "segal" => verify_segal(q.unwrap_or(2), dim.unwrap_or(2))?,
        "symfunc" => verify_symfunc(size.unwrap_or(5))?,
        "statistics" => verify_statistics(size.unwrap_or(6))?,
        "f1-bridge" => verify_f1_bridge(size.unwrap_or(4))?,
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite {other:?}; choose zelevinsky, green, segal, symfunc, statistics, or f1-bridge"
            ))
            .into())
        }
    };
    let report = VerifyReport {
        suite: suite.to_string(),
        cases,
        failures,
    };
    println!("{}", serde_json::to_string(&report)?);
    Ok(if report.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

type Outcome = (usize, Vec<String>);

/// b_{λμ} against direct flag counts at q ∈ {2,3}, the q = 1 matrix count,
/// and the composition-sequence recomputation.
fn verify_zelevinsky(size: u32) -> anyhow::Result<Outcome> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for n in 0..=size {
        for la in partitions_of(n)? {
            for mu in partitions_of(n)? {
                cases += 1;
                let b = zelevinsky::b_polynomial(&la, &mu, None)?;
                for qv in [2u32, 3] {
                    let quots: Vec<Partition> =
                        la.parts().iter().map(|&r| Partition::column(r)).collect();
                    let flags = fq::flag_count_direct(PrimePower::new(qv)?, &mu, &quots)?;
                    if b.eval_i64(qv as i64) != flags {
                        failures.push(format!("b({la},{mu}) at q={qv}: {b} vs flags {flags}"));
                    }
                }
                if b.eval_i64(1) != f1::count_zero_one_matrices(&la, &mu)? {
                    failures.push(format!("b({la},{mu}) at q=1 differs from the matrix count"));
                }
                let via_seq =
                    zelevinsky::b_polynomial_via_composition_sequences(&la, &Composition::from(&mu))?;
                if via_seq != b {
                    failures.push(format!("b({la},{mu}): composition-sequence path differs"));
                }
            }
        }
    }
    Ok((cases, failures))
}

/// Green's compatibility square over F_q vector spaces, plus the termwise
/// q^{-kl} form of the coproduct.
fn verify_green(q: u32, dim: u32) -> anyhow::Result<Outcome> {
    let qq = PrimePower::new(q)?;
    let backend = FqVectBackend::new(qq, 2 * dim);
    let mut cases = 0;
    let mut failures = Vec::new();
    for a in 0..=dim {
        for b in 0..=dim {
            cases += 1;
            let report = green_compatibility_check(&backend, &a, &b)?;
            if !report.ok {
                failures.push(format!("green fails at dims ({a}, {b}): {:?}", report.first_diff));
            }
        }
    }
    for n in 0..=dim {
        cases += 1;
        let d = hallforge::hall::coproduct_prime(
            &backend,
            &hallforge::hall::HallElement::basis(n),
        )?;
        for k in 0..=n {
            let l = n - k;
            let expect = Rat::new(hallforge::Int::one(), hallforge::Int::from(q).pow(k * l));
            if d.coeff(&(k, l)) != expect {
                failures.push(format!("Δ'(1_{n}) term ({k},{l}) ≠ q^-{}", k * l));
            }
        }
        if d.terms().len() != n as usize + 1 {
            failures.push(format!("Δ'(1_{n}) has spurious terms"));
        }
    }
    Ok((cases, failures))
}

/// Decategorified 2-Segal conditions on the truncated flag groupoids.
fn verify_segal(q: u32, dim: u32) -> anyhow::Result<Outcome> {
    let report =
        groupoid::flags::two_segal_cardinality_check(PrimePower::new(q)?, dim as usize)?;
    Ok((5, report.failures))
}

/// Symmetric-function bridges: e↔m against the polynomial oracle, φ, and
/// the Hall–Littlewood specialization (both internally asserted).
fn verify_symfunc(size: u32) -> anyhow::Result<Outcome> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for n in 0..=size.min(8) {
        for la in partitions_of(n)? {
            cases += 1;
            if let Err(e) = symfunc::elementary_to_monomial(&la) {
                failures.push(format!("e_{la}: {e}"));
            }
        }
    }
    for n in 0..=size.min(5) {
        for la in partitions_of(n)? {
            cases += 2;
            if let Err(e) = symfunc::phi_image(&la) {
                failures.push(format!("φ(u_{la}): {e}"));
            }
            if let Err(e) = symfunc::hall_littlewood_image(&la) {
                failures.push(format!("ψ(u_{la}): {e}"));
            }
        }
    }
    Ok((cases, failures))
}

/// Inversion and lattice-area partition functions against their closed
/// forms.
fn verify_statistics(size: u32) -> anyhow::Result<Outcome> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for n in 0..=size.min(8) {
        cases += 1;
        if qanalog::inversion_partition_function(n)? != qanalog::q_factorial(n) {
            failures.push(format!("inversion statistic differs from [{n}]_q!"));
        }
    }
    for total in 0..=size.min(14) {
        for m in 0..=total {
            cases += 1;
            if qanalog::lattice_area_partition_function(m, total - m)?
                != qanalog::q_binomial(total, m)?
            {
                failures.push(format!("lattice area ({m},{}) differs", total - m));
            }
        }
    }
    Ok((cases, failures))
}

/// F_1 bridge: the q = 1 value of every Hall polynomial equals the
/// `F_1[[t]]` structure constant.
fn verify_f1_bridge(size: u32) -> anyhow::Result<Outcome> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for n in 0..=size.min(5) {
        for la in partitions_of(n)? {
            for a in 0..=n {
                for mu in partitions_of(a)? {
                    for nu in partitions_of(n - a)? {
                        cases += 1;
                        let poly = fq::hall_polynomial(&la, &mu, &nu)?;
                        let f1t = f1::f1t_hall_constant(&la, &mu, &nu)?;
                        if poly.eval_i64(1) != f1t {
                            failures.push(format!(
                                "g^{la}_{{{mu},{nu}}}(1) = {} but the F_1[[t]] count is {f1t}",
                                poly.eval_i64(1)
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok((cases, failures))
}
