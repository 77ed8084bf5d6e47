//! One PASS/FAIL line per acceptance criterion.
//!
//! Criterion 7 cannot hold as stated: the exact residuals of several weight-4
//! decompositions from N = 7 on have denominators above 10^6 (for example
//! −2669/2488320 at N = 12, j = 7). It is reported as FAIL with the offending
//! cases and does not abort the run. Any other failure exits nonzero.

use cyclokzb::cli::{run_suite, RunConfig};
use std::time::{Duration, Instant};

const KNOWN_UNATTAINABLE: [u32; 1] = [7];

struct Criterion {
    id: u32,
    suite: &'static str,
    title: &'static str,
    time_limit: Option<Duration>,
}

fn main() {
    let cfg = RunConfig::new(None, 8, 128).expect("valid config");
    let criteria = [
        Criterion { id: 1, suite: "cylinder", title: "cylinder identity at cutoff 8", time_limit: Some(Duration::from_secs(5)) },
        Criterion { id: 2, suite: "hain", title: "Hain relation, N<=6, cutoff 8", time_limit: None },
        Criterion { id: 3, suite: "lemma-d1", title: "e0^n e_zeta maps to Y^n t_zeta, n<=5, N<=6", time_limit: None },
        Criterion { id: 4, suite: "dims", title: "ext_dim matches formula, N<=30, 2<=m<=6", time_limit: Some(Duration::from_secs(1)) },
        Criterion { id: 5, suite: "heads", title: "heads match closed forms", time_limit: None },
        Criterion { id: 6, suite: "injectivity", title: "head matrix rank phi(N)/2, N<=12, m<=5", time_limit: None },
        Criterion { id: 7, suite: "decomposition", title: "decomposition residuals reconstruct, denominators <= 1e6", time_limit: None },
        Criterion { id: 8, suite: "bernoulli", title: "Li pairing equals -B_m(k/N)/m!, N<=12, m<=6", time_limit: None },
        Criterion { id: 9, suite: "mzv", title: "MZV identities to 1e-10, series vs quadrature to 1e-20", time_limit: None },
        Criterion { id: 10, suite: "shuffle", title: "shuffle, inversion, composition to 1e-15 on 100 instances", time_limit: None },
        Criterion { id: 11, suite: "dch", title: "T(dch) mod D^2 coefficients to 1e-10, m<=3, N<=4", time_limit: None },
        Criterion { id: 12, suite: "hecke", title: "Hecke sublattice identity to 1e-6, psi and [d] commute", time_limit: None },
        Criterion { id: 13, suite: "star", title: "star relation residual < 1e-8, N in {1,2}", time_limit: None },
        Criterion { id: 14, suite: "linearized", title: "linearized transport to 1e-10, closed form to 1e-25", time_limit: None },
    ];

    let start = Instant::now();
    let mut unexpected = Vec::new();
    for c in &criteria {
        let t0 = Instant::now();
        let result = run_suite(c.suite, &cfg);
        let elapsed = t0.elapsed();
        let (mut pass, mut detail) = match result {
            Ok(r) => (r.pass, r.detail.to_string()),
            Err(e) => (false, format!("error: {e}")),
        };
        if let Some(limit) = c.time_limit {
            if elapsed > limit {
                pass = false;
                detail = format!("runtime {:.2}s exceeds {:.0}s; {detail}", elapsed.as_secs_f64(), limit.as_secs_f64());
            }
        }
        println!(
            "{} criterion {:>2} [{:.2}s] {}: {}",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            elapsed.as_secs_f64(),
            c.title,
            detail
        );
        if !pass && !KNOWN_UNATTAINABLE.contains(&c.id) {
            unexpected.push(c.id);
        }
    }
    println!("total {:.1}s", start.elapsed().as_secs_f64());
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
