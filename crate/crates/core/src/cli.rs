//! Command-line front end and the verification-suite driver.
//!
//! Exit codes: 0 when every requested check passes, 1 when a computation
//! contract is violated, 2 for usage errors.

use crate::extdecomp::{basis as basis_roots, closed_form_head, decompose, decompose_all, ext_dim, ext_dim_formula, head, head_rank};
use crate::hain::{cylinder_check, cylinder_check_perturbed, hain_relation_residual, lemma_d1};
use crate::hecke::{hecke_numeric, psi_check_json, psi_commutes, shift_commutes, shift_commutes_numeric, tp_preserves_relations};
use crate::numeric::iterint::chen_properties;
use crate::numeric::linearized::linearized_transport_check;
use crate::numeric::polylog::{decomposition_residuals, li_word_forms};
use crate::numeric::star::{betti_transport_check, star_check};
use crate::numeric::{bernoulli_pairing, dch_transport_depth1, li, li_log_series, multiple_li, regularized_iterint, BigC, PathSpec};
use crate::rational::{q, qi, qpow};
use crate::roots::euler_phi;
use crate::{Error, Result, Root, Q};
use clap::{Parser, Subcommand};
use num_traits::One;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "cyclokzb", version, about = "Cyclotomic KZ/KZB computations and checks")]
pub struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub json_file: Option<PathBuf>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Head of the Galois image of σ_{m,ζ} in the ε basis.
    Heads {
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        m: u32,
        /// Residue k of the defining root; defaults to the first basis root.
        #[arg(long)]
        k: Option<u64>,
        /// Heads for every basis root.
        #[arg(long)]
        all: bool,
    },
    /// Class of Li_m(ζ_N^j) in the primitive basis.
    Decompose {
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        m: u32,
        /// Omit to decompose every j.
        #[arg(long)]
        j: Option<u64>,
    },
    /// Dimension of the space of extension classes.
    Dims {
        #[arg(long = "N")]
        n: u64,
        #[arg(long, conflicts_with = "m_range")]
        m: Option<u32>,
        /// Inclusive range such as 2..6.
        #[arg(long)]
        m_range: Option<String>,
    },
    /// Li_m(ζ_N^k).
    Li {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u64,
        #[arg(long = "N")]
        n: u64,
        #[arg(long, default_value_t = 128)]
        prec: u32,
    },
    /// Multiple polylogarithm; all arguments 1 (an MZV) unless --args is given.
    Mzv {
        #[arg(long, value_delimiter = ',')]
        indices: Vec<u32>,
        /// Real arguments z_1..z_m.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        args: Option<Vec<f64>>,
        #[arg(long, default_value_t = 128)]
        prec: u32,
    },
    /// Coefficients of e_0^m e_ζ in T(dch) mod D² by regularized quadrature.
    Dch {
        #[arg(long = "N")]
        n: u64,
        #[arg(long, default_value_t = 3)]
        max_weight: u32,
        #[arg(long, default_value_t = 128)]
        prec: u32,
    },
    /// T_p G_{m,ζ_N} symbolically and against the sublattice sum.
    Hecke {
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1.0)]
        tau_im: f64,
        #[arg(long, default_value_t = 300)]
        radius: u64,
        #[arg(long, default_value_t = 128)]
        prec: u32,
    },
    /// ψ∘T_p = T_p∘ψ and relation preservation, exactly.
    PsiCheck {
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: u64,
    },
    /// Run verification suites.
    Verify {
        /// Comma-separated suite names, or "all".
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        #[arg(long, default_value_t = 8)]
        cutoff: u32,
        #[arg(long, default_value_t = 128)]
        prec: u32,
    },
}

pub const SUITES: [&str; 14] = [
    "hain",
    "cylinder",
    "lemma-d1",
    "dims",
    "heads",
    "injectivity",
    "bernoulli",
    "decomposition",
    "mzv",
    "shuffle",
    "dch",
    "hecke",
    "star",
    "linearized",
];

/// Validated run parameters shared by all subcommands.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub n: Option<u64>,
    pub cutoff: u32,
    pub prec: u32,
}

impl RunConfig {
    pub fn new(n: Option<u64>, cutoff: u32, prec: u32) -> Result<RunConfig> {
        if n == Some(0) {
            return Err(Error::InvalidArgument("N must be at least 1".into()));
        }
        if cutoff < 2 {
            return Err(Error::InvalidArgument("cutoff must be at least 2".into()));
        }
        if prec < 64 {
            return Err(Error::InvalidArgument("precision must be at least 64 bits".into()));
        }
        Ok(RunConfig { n, cutoff, prec })
    }
}

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

impl SuiteResult {
    fn new(name: &str, pass: bool, detail: Value) -> SuiteResult {
        SuiteResult { name: name.into(), pass, detail }
    }

    pub fn to_json(&self) -> Value {
        json!({"suite": self.name, "pass": self.pass, "detail": self.detail})
    }
}

fn sci(x: f64) -> Value {
    format!("{x:.3e}").into()
}

fn suite_hain(cfg: &RunConfig) -> Result<SuiteResult> {
    let mut rows = serde_json::Map::new();
    let mut pass = true;
    for n in 1..=6 {
        let r = hain_relation_residual(n, cfg.cutoff)?;
        pass &= r.is_zero();
        rows.insert(format!("N={n}"), json!(r.is_zero()));
    }
    Ok(SuiteResult::new("hain", pass, json!({"cutoff": cfg.cutoff, "relation_vanishes": rows})))
}

fn suite_cylinder(cfg: &RunConfig) -> Result<SuiteResult> {
    let ok = cylinder_check(cfg.cutoff)?;
    let control = cylinder_check_perturbed(cfg.cutoff)?;
    Ok(SuiteResult::new("cylinder", ok && !control, json!({"cutoff": cfg.cutoff, "identity": ok, "perturbed_identity": control})))
}

fn suite_lemma_d1(_: &RunConfig) -> Result<SuiteResult> {
    let mut pass = true;
    let mut rows = Vec::new();
    for n in 1..=6 {
        let r = lemma_d1(n, 5)?;
        pass &= r.images_match && r.rank == r.count;
        rows.push(json!({"N": n, "images_match": r.images_match, "rank": r.rank, "count": r.count}));
    }
    Ok(SuiteResult::new("lemma-d1", pass, json!(rows)))
}

fn suite_dims(_: &RunConfig) -> Result<SuiteResult> {
    let mut bad = Vec::new();
    for n in 1..=30 {
        for m in 2..=6 {
            let d = ext_dim(n, m)?;
            if d != ext_dim_formula(n, m) {
                bad.push(json!({"N": n, "m": m, "dim": d}));
            }
        }
    }
    Ok(SuiteResult::new("dims", bad.is_empty(), json!({"range": "N<=30, 2<=m<=6", "mismatches": bad})))
}

fn suite_heads(_: &RunConfig) -> Result<SuiteResult> {
    let mut rows = Vec::new();
    let mut pass = true;
    let mut cases: Vec<(u64, u32)> = vec![(5, 3), (7, 4), (8, 3), (9, 2), (6, 3), (6, 4)];
    for m in [3, 5, 7] {
        cases.push((1, m));
        cases.push((2, m));
    }
    for (n, m) in cases {
        for z in basis_roots(n, m) {
            let h = head(n, m, z)?;
            let has_closed = closed_form_head(n, m, z).is_some();
            pass &= has_closed;
            rows.push(json!({"N": n, "m": m, "head": h.to_json(), "closed_form_checked": has_closed}));
        }
    }
    let h53 = head(5, 3, Root::new(1, 5))?;
    let corollary = h53.coeff(Root::unit(5)) == Some(q(-25, 24));
    pass &= corollary;
    for m in [3u32, 5, 7] {
        let h = head(2, m, Root::new(1, 2))?;
        let want = Q::one() / (qi(2) * (qpow(&qi(2), 1 - m as i64) - qi(1)));
        pass &= h.coeff(Root::new(1, 2)) == Some(q(1, 2)) && h.coeff(Root::unit(2)) == Some(want);
        pass &= head(1, m, Root::unit(1))?.coeff(Root::unit(1)) == Some(q(1, 2));
    }
    Ok(SuiteResult::new("heads", pass, json!({"prime_corollary_-25/24": corollary, "heads": rows})))
}

fn suite_injectivity(_: &RunConfig) -> Result<SuiteResult> {
    let mut bad = Vec::new();
    for n in 3..=12 {
        for m in 2..=5 {
            let r = head_rank(n, m)?;
            if r as u64 != euler_phi(n) / 2 {
                bad.push(json!({"N": n, "m": m, "rank": r}));
            }
        }
    }
    Ok(SuiteResult::new("injectivity", bad.is_empty(), json!({"range": "3<=N<=12, 2<=m<=5", "mismatches": bad})))
}

fn suite_bernoulli(cfg: &RunConfig) -> Result<SuiteResult> {
    let mut count = 0;
    let mut failures = Vec::new();
    for n in 1..=12 {
        for m in 2..=6 {
            for k in 0..n {
                match bernoulli_pairing(m, Root { k, n }, cfg.prec) {
                    Ok(_) => count += 1,
                    Err(Error::Reconstruction(s)) => failures.push(json!(format!("N={n} m={m} k={k}: {s}"))),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(SuiteResult::new("bernoulli", failures.is_empty(), json!({"pairings_matched": count, "prec": cfg.prec, "failures": failures})))
}

fn suite_decomposition(_: &RunConfig) -> Result<SuiteResult> {
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 1..=12 {
        for m in 2..=4 {
            match decomposition_residuals(n, m, 192, 1_000_000) {
                Ok(r) => count += r.len(),
                Err(Error::Reconstruction(_)) => {
                    for (j, r) in decomposition_residuals(n, m, 192, 1_000_000_000_000)? {
                        if r.denom() > &1_000_000.into() {
                            failures.push(json!(format!("N={n} m={m} j={j}: {}", crate::rational::fmt_q(&r))));
                        }
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(SuiteResult::new(
        "decomposition",
        failures.is_empty(),
        json!({"prec": 192, "max_denominator": 1_000_000, "reconstructed": count, "failures": failures}),
    ))
}

/// Interior test points for the series/quadrature comparison.
pub fn mzv_interior_points(prec: u32) -> Vec<(Vec<u32>, Vec<BigC>)> {
    let c = |re: f64, im: f64| BigC::from_f64(re, im, prec);
    vec![
        (vec![1, 1], vec![c(0.5, 0.0), c(0.5, 0.0)]),
        (vec![3], vec![c(0.5, 0.0)]),
        (vec![2, 1], vec![c(0.3, 0.2), c(0.5, 0.0)]),
        (vec![1, 2], vec![c(-0.4, 0.0), c(0.0, 0.6)]),
        (vec![1, 1, 2], vec![c(0.9, 0.0), c(-0.5, 0.5), c(0.4, -0.3)]),
    ]
}

/// max |series − quadrature| over the interior points.
pub fn mzv_series_vs_quadrature(prec: u32) -> Result<f64> {
    let mut worst = 0.0f64;
    for (ns, zs) in mzv_interior_points(prec) {
        let series = multiple_li(&ns, &zs, prec)?;
        let (forms, end) = li_word_forms(&ns, &zs);
        let path = PathSpec::polyline(vec![BigC::zero(prec), end]);
        let word: Vec<usize> = (0..forms.len()).collect();
        let quad = regularized_iterint(&path, &forms, &word, prec)?;
        worst = worst.max(series.dist(&quad));
    }
    Ok(worst)
}

/// |ζ(4) − 4ζ(1,3)|, |ζ(4) − ζ(1,1,2)|, |ζ(4) − (4/3)ζ(2,2)|.
pub fn mzv_footnote(prec: u32) -> Result<[f64; 3]> {
    let one = BigC::one(prec);
    let z4 = BigC::from_float(crate::numeric::zeta_value(4, prec)?, rug::Float::new(prec));
    let z13 = multiple_li(&[1, 3], &[one.clone(), one.clone()], prec)?;
    let z112 = multiple_li(&[1, 1, 2], &[one.clone(), one.clone(), one.clone()], prec)?;
    let z22 = multiple_li(&[2, 2], &[one.clone(), one], prec)?;
    Ok([z4.dist(&z13.mul_i64(4)), z4.dist(&z112), z4.dist(&z22.mul_q(&q(4, 3)))])
}

fn suite_mzv(cfg: &RunConfig) -> Result<SuiteResult> {
    let f = mzv_footnote(cfg.prec)?;
    let sq = mzv_series_vs_quadrature(cfg.prec)?;
    let pass = f.iter().all(|&x| x < 1e-10) && sq < 1e-20;
    Ok(SuiteResult::new(
        "mzv",
        pass,
        json!({"zeta4_minus_4zeta13": sci(f[0]), "zeta4_minus_zeta112": sci(f[1]), "zeta4_minus_4/3zeta22": sci(f[2]), "series_vs_quadrature": sci(sq)}),
    ))
}

fn suite_shuffle(cfg: &RunConfig) -> Result<SuiteResult> {
    let r = chen_properties(100, 2024, cfg.prec)?;
    Ok(SuiteResult::new(
        "shuffle",
        r.max() < 1e-15,
        json!({"instances": r.instances, "shuffle": sci(r.shuffle), "inversion": sci(r.inversion), "composition": sci(r.composition)}),
    ))
}

/// Rows (N, k, m, quadrature, (−1)^m Li_{m+1}(ζ̄), |difference|) for the
/// coefficient of e_0^m e_ζ in T(dch).
pub fn dch_table(n: u64, max_m: u32, prec: u32) -> Result<Vec<(u64, u32, BigC, BigC, f64)>> {
    let t = dch_transport_depth1(n, max_m + 1, prec)?;
    let mut rows = Vec::new();
    for k in 0..n {
        for m in 0..=max_m {
            if m == 0 && k == 0 {
                continue;
            }
            let mut w = vec![0u8; m as usize];
            w.push(1 + k as u8);
            let got = t.coeff(&w);
            let sign = if m % 2 == 0 { 1 } else { -1 };
            let want = li(m + 1, Root { k, n }.conj(), prec)?.mul_i64(sign);
            let d = got.dist(&want);
            rows.push((k, m, got, want, d));
        }
    }
    Ok(rows)
}

fn suite_dch(cfg: &RunConfig) -> Result<SuiteResult> {
    let mut worst = 0.0f64;
    for n in 1..=4 {
        for r in dch_table(n, 3, cfg.prec)? {
            worst = worst.max(r.4);
        }
    }
    let betti = betti_transport_check(2, 3, cfg.prec)?.max_residual();
    Ok(SuiteResult::new(
        "dch",
        worst < 1e-10 && betti < 1e-10,
        json!({"max_residual_N<=4_m<=3": sci(worst), "transported_betti_N=2": sci(betti)}),
    ))
}

fn suite_hecke(cfg: &RunConfig) -> Result<SuiteResult> {
    let tau = BigC::i(cfg.prec);
    let mut pass = true;
    let mut rows = Vec::new();
    for (n, m, p) in [(5, 6, 2), (5, 6, 3), (7, 5, 2)] {
        let r = hecke_numeric(n, m, p, &tau, 300, cfg.prec)?;
        pass &= r.residual < 1e-6;
        rows.push(json!({"N": n, "m": m, "p": p, "residual": sci(r.residual)}));
    }
    let mut exact = true;
    for n in 1..=12u64 {
        for m in 3..=6 {
            for p in [2u64, 3, 5, 7] {
                if n % p != 0 {
                    exact &= psi_commutes(n, m, p)? && tp_preserves_relations(n, m - 1, p)?;
                }
            }
        }
    }
    let shift_sym = shift_commutes(3, 6, 2, 5)? && shift_commutes(5, 5, 2, 3)? && shift_commutes(4, 4, 3, 5)?;
    let shift_num = shift_commutes_numeric(3, 6, 2, 5, &tau, 300, cfg.prec)?;
    pass &= exact && shift_sym && shift_num < 1e-6;
    Ok(SuiteResult::new(
        "hecke",
        pass,
        json!({"sublattice": rows, "psi_commutes_and_relations": exact, "shift_commutes_symbolic": shift_sym, "shift_commutes_numeric": sci(shift_num)}),
    ))
}

fn suite_star(cfg: &RunConfig) -> Result<SuiteResult> {
    let mut pass = true;
    let mut rows = Vec::new();
    for n in [1, 2] {
        let r = star_check(n, cfg.prec)?;
        pass &= r.residual < 1e-8 && r.perturbed_residual > 1e-4;
        rows.push(json!({"N": n, "residual": sci(r.residual), "perturbed_residual": sci(r.perturbed_residual)}));
    }
    Ok(SuiteResult::new("star", pass, json!(rows)))
}

fn suite_linearized(cfg: &RunConfig) -> Result<SuiteResult> {
    let r = linearized_transport_check(cfg.prec)?;
    let pass = r.constant_residual < 1e-10 && r.perturbed_residual < 1e-10 && r.closed_form_residual < 1e-25 && r.lambda_gap > 1e-3;
    Ok(SuiteResult::new(
        "linearized",
        pass,
        json!({
            "constant_residual": sci(r.constant_residual),
            "perturbed_residual": sci(r.perturbed_residual),
            "closed_form_residual": sci(r.closed_form_residual),
            "lambda_gap": sci(r.lambda_gap),
        }),
    ))
}

pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<SuiteResult> {
    match name {
        "hain" => suite_hain(cfg),
        "cylinder" => suite_cylinder(cfg),
        "lemma-d1" => suite_lemma_d1(cfg),
        "dims" => suite_dims(cfg),
        "heads" => suite_heads(cfg),
        "injectivity" => suite_injectivity(cfg),
        "bernoulli" => suite_bernoulli(cfg),
        "decomposition" => suite_decomposition(cfg),
        "mzv" => suite_mzv(cfg),
        "shuffle" => suite_shuffle(cfg),
        "dch" => suite_dch(cfg),
        "hecke" => suite_hecke(cfg),
        "star" => suite_star(cfg),
        "linearized" => suite_linearized(cfg),
        _ => Err(Error::InvalidArgument(format!("unknown suite {name}; known: {}", SUITES.join(",")))),
    }
}

fn parse_range(s: &str) -> Result<(u32, u32)> {
    let (a, b) = s.split_once("..").ok_or_else(|| Error::InvalidArgument(format!("bad range {s}")))?;
    let a: u32 = a.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad range {s}")))?;
    let b: u32 = b.trim_start_matches('=').trim().parse().map_err(|_| Error::InvalidArgument(format!("bad range {s}")))?;
    Ok((a, b))
}

/// Executes a parsed command: (all checks passed, JSON report).
pub fn execute(cmd: &Cmd) -> Result<(bool, Value)> {
    match cmd {
        Cmd::Heads { n, m, k, all } => {
            RunConfig::new(Some(*n), 2, 64)?;
            let roots = match k {
                Some(k) => vec![Root::new(*k as i64, *n)],
                None => basis_roots(*n, *m),
            };
            if roots.is_empty() {
                return Err(Error::BadWeight(*m));
            }
            if *all {
                let hs: Vec<Value> = roots.iter().map(|z| head(*n, *m, *z).map(|h| h.to_json())).collect::<Result<_>>()?;
                Ok((true, json!({"N": n, "m": m, "heads": hs})))
            } else {
                Ok((true, head(*n, *m, roots[0])?.to_json()))
            }
        }
        Cmd::Decompose { n, m, j } => {
            RunConfig::new(Some(*n), 2, 64)?;
            match j {
                Some(j) => Ok((true, json!({"N": n, "m": m, "j": j, "class": decompose(*n, *m, *j)?.to_json()["coords"]}))),
                None => {
                    let all: serde_json::Map<String, Value> = decompose_all(*n, *m)?
                        .iter()
                        .enumerate()
                        .map(|(j, c)| (format!("j={j}"), c.to_json()["coords"].clone()))
                        .collect();
                    Ok((true, json!({"N": n, "m": m, "classes": all})))
                }
            }
        }
        Cmd::Dims { n, m, m_range } => {
            RunConfig::new(Some(*n), 2, 64)?;
            match (m, m_range) {
                (Some(m), None) => Ok((true, json!({"dim": ext_dim(*n, *m)?}))),
                (None, Some(r)) => {
                    let (a, b) = parse_range(r)?;
                    let dims: serde_json::Map<String, Value> =
                        (a..=b).map(|m| ext_dim(*n, m).map(|d| (m.to_string(), json!(d)))).collect::<Result<_>>()?;
                    Ok((true, json!({"N": n, "dims": dims})))
                }
                _ => Err(Error::InvalidArgument("give --m or --m-range".into())),
            }
        }
        Cmd::Li { m, k, n, prec } => {
            RunConfig::new(Some(*n), 2, *prec)?;
            let r = Root::new(*k as i64, *n);
            let v = li(*m, r, *prec)?;
            let check = li_log_series(*m, r, *prec)?;
            let err = v.dist(&check).max(v.abs_f64() * 2f64.powi(1 - *prec as i32));
            let digits = (*prec as f64 * std::f64::consts::LOG10_2) as usize;
            let pass = err < 2f64.powi(16 - *prec as i32).max(1e-300);
            Ok((pass, json!({"m": m, "k": k, "N": n, "prec": prec, "value": v.to_json(digits), "error_estimate": sci(err)})))
        }
        Cmd::Mzv { indices, args, prec } => {
            RunConfig::new(None, 2, *prec)?;
            let zs: Vec<BigC> = match args {
                Some(a) => a.iter().map(|x| BigC::from_f64(*x, 0.0, *prec)).collect(),
                None => vec![BigC::one(*prec); indices.len()],
            };
            let v = multiple_li(indices, &zs, *prec)?;
            let hi = multiple_li(indices, &zs.iter().map(|z| z.with_prec(prec + 32)).collect::<Vec<_>>(), prec + 32)?;
            let digits = (*prec as f64 * std::f64::consts::LOG10_2) as usize;
            Ok((true, json!({"indices": indices, "args": args, "prec": prec, "value": v.to_json(digits), "error_estimate": sci(v.dist(&hi).max(v.abs_f64() * 2f64.powi(1 - *prec as i32)))})))
        }
        Cmd::Dch { n, max_weight, prec } => {
            RunConfig::new(Some(*n), 2, *prec)?;
            let rows = dch_table(*n, *max_weight, *prec)?;
            let worst = rows.iter().map(|r| r.4).fold(0.0, f64::max);
            let out: Vec<Value> = rows
                .iter()
                .map(|(k, m, got, want, d)| {
                    json!({"zeta": Root { k: *k, n: *n }.label(), "m": m, "quadrature": got.to_json(25), "expected": want.to_json(25), "residual": sci(*d)})
                })
                .collect();
            Ok((worst < 1e-10, json!({"N": n, "max_weight": max_weight, "prec": prec, "coefficients": out, "max_residual": sci(worst)})))
        }
        Cmd::Hecke { n, m, p, tau_im, radius, prec } => {
            RunConfig::new(Some(*n), 2, *prec)?;
            let tau = BigC::from_f64(0.0, *tau_im, *prec);
            let r = hecke_numeric(*n, *m, *p, &tau, *radius, *prec)?;
            let mut j = r.to_json();
            j["radius"] = json!(radius);
            j["tau_im"] = json!(tau_im);
            Ok((r.residual < 1e-6, j))
        }
        Cmd::PsiCheck { n, m, p } => {
            RunConfig::new(Some(*n), 2, 64)?;
            psi_check_json(*n, *m, *p)
        }
        Cmd::Verify { suite, cutoff, prec } => {
            let cfg = RunConfig::new(None, *cutoff, *prec)?;
            let names: Vec<String> =
                if suite.iter().any(|s| s == "all") { SUITES.iter().map(|s| s.to_string()).collect() } else { suite.clone() };
            let mut results = Vec::new();
            let mut pass = true;
            for name in &names {
                let r = run_suite(name, &cfg)?;
                pass &= r.pass;
                results.push(r.to_json());
            }
            Ok((pass, json!({"cutoff": cutoff, "prec": prec, "pass": pass, "results": results})))
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Consistency(_) | Error::Reconstruction(_) | Error::NotGroupLike | Error::NotLie => 1,
        _ => 2,
    }
}

// A closed pipe (e.g. `| head`) is not an error worth panicking over.
fn emit(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

/// Parses argv, runs the command, prints JSON to stdout and returns the exit
/// status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.cmd) {
        Ok((pass, report)) => {
            let text = serde_json::to_string_pretty(&report).expect("JSON values always serialize");
            emit(&text);
            if let Some(path) = &cli.json_file {
                if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            }
            if pass {
                0
            } else {
                eprintln!("error: a requested check failed");
                1
            }
        }
        Err(e) => {
            let code = exit_code_for(&e);
            let report = json!({"error": e.to_string(), "exit": code});
            emit(&serde_json::to_string_pretty(&report).expect("JSON values always serialize"));
            eprintln!("error: {e}");
            code
        }
    }
}
