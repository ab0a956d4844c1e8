use std::io::Write;
use std::time::{Duration, Instant};

use rand_core::CryptoRngCore;
use sigmakit::nizk::{prove, verify};
use sigmakit::{Secret, Statement};

use crate::scenario::{generators, instantiate, template, Backend, Scenario};
use crate::Failure;

pub const OR_WIDTHS: [usize; 3] = [2, 4, 8];

/// Median prove and verify times as CSV rows `scenario,op,median_ms,n`.
pub fn run(
    scenarios: &[Scenario],
    backend: &Backend,
    n: usize,
    rng: &mut dyn CryptoRngCore,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Config("--n must be at least 1".into()));
    }
    let io = |e: std::io::Error| Failure::Config(format!("writing benchmark output: {e}"));
    writeln!(out, "scenario,op,median_ms,n").map_err(io)?;
    for &scenario in scenarios {
        let (stmt, public) = instantiate(scenario, backend, false, rng)?;
        let verifier = template(&public)?;
        for (op, ms) in measure(&stmt, &verifier, n, rng)? {
            writeln!(out, "{scenario},{op},{ms:.3},{n}").map_err(io)?;
        }
    }
    for k in OR_WIDTHS {
        let (stmt, verifier) = or_of(k, backend, rng)?;
        for (op, ms) in measure(&stmt, &verifier, n, rng)? {
            writeln!(out, "or-of-{k},{op},{ms:.3},{n}").map_err(io)?;
        }
    }
    Ok(())
}

fn measure(
    stmt: &Statement,
    verifier: &Statement,
    n: usize,
    rng: &mut dyn CryptoRngCore,
) -> Result<[(&'static str, f64); 2], Failure> {
    let mut prove_times = Vec::with_capacity(n);
    let mut verify_times = Vec::with_capacity(n);
    for _ in 0..n {
        let start = Instant::now();
        let proof = prove(stmt, rng).map_err(|e| Failure::prove(&e))?;
        prove_times.push(start.elapsed());

        let start = Instant::now();
        let ok = verify(verifier, &proof).map_err(|e| Failure::Reject(e.to_string()))?;
        verify_times.push(start.elapsed());
        if !ok {
            return Err(Failure::Reject("benchmark proof did not verify".into()));
        }
    }
    Ok([("prove", median_ms(prove_times)), ("verify", median_ms(verify_times))])
}

fn median_ms(mut times: Vec<Duration>) -> f64 {
    times.sort();
    let mid = times.len() / 2;
    let median = if times.len().is_multiple_of(2) {
        (times[mid - 1] + times[mid]) / 2
    } else {
        times[mid]
    };
    median.as_secs_f64() * 1e3
}

/// `OR` of `k` Schnorr statements, the last one honest.
fn or_of(k: usize, backend: &Backend, rng: &mut dyn CryptoRngCore) -> Result<(Statement, Statement), Failure> {
    let group = backend.group()?;
    let (g, _) = generators(&group);
    let x = group.random_scalar(rng);
    let lhs: Vec<_> = (0..k)
        .map(|i| {
            if i + 1 == k {
                g.exp(&x)
            } else {
                group.random_nonidentity_element(rng)
            }
        })
        .collect();
    let build = |with_value: bool| -> sigmakit::Result<Statement> {
        let children = lhs
            .iter()
            .enumerate()
            .map(|(i, y)| {
                let s = if with_value && i + 1 == k {
                    Secret::with_value(x)
                } else {
                    Secret::new()
                };
                Statement::dlrep(*y, &s * g)
            })
            .collect::<sigmakit::Result<Vec<_>>>()?;
        if with_value {
            Statement::or(children, (0..k).map(|i| i + 1 != k).collect())
        } else {
            Statement::or_unflagged(children)
        }
    };
    let prover = build(true).map_err(|e| Failure::prove(&e))?;
    let verifier = build(false).map_err(|e| Failure::prove(&e))?;
    Ok((prover, verifier))
}
