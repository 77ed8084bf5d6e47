//! Eisenstein lattice sums G_{m,ζ}(τ) = Σ' ζ^k/(kτ+ℓ)^m, the Hecke operators
//! T_p and level shifts [d] on their symbols, and the map ψ to extension
//! classes of weight m−1.

use crate::extdecomp::{decompose_all, relation_matrix, ExtClass};
use crate::linalg::rref;
use crate::numeric::BigC;
use crate::rational::{fmt_q, qi, qpow};
use crate::roots::is_prime;
use crate::{Error, Result, Root, Q};
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// A formal Q-combination of symbols G_{m,ζ}, ζ = ζ_N^k keyed by k.
#[derive(Debug, Clone, PartialEq)]
pub struct EisensteinSym {
    pub m: u32,
    pub n: u64,
    pub terms: BTreeMap<u64, Q>,
}

impl EisensteinSym {
    pub fn zero(m: u32, n: u64) -> Result<EisensteinSym> {
        if m < 3 {
            return Err(Error::BadWeight(m));
        }
        Ok(EisensteinSym { m, n, terms: BTreeMap::new() })
    }

    pub fn g(m: u32, r: Root) -> Result<EisensteinSym> {
        let mut s = EisensteinSym::zero(m, r.n)?;
        s.add_term(r.k, &qi(1));
        Ok(s)
    }

    pub fn add_term(&mut self, k: u64, c: &Q) {
        let k = k % self.n;
        let v = self.terms.get(&k).cloned().unwrap_or_else(Q::zero) + c;
        if v.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, v);
        }
    }

    pub fn add(&self, o: &EisensteinSym) -> EisensteinSym {
        assert_eq!((self.m, self.n), (o.m, o.n));
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> EisensteinSym {
        let mut out = EisensteinSym { m: self.m, n: self.n, terms: BTreeMap::new() };
        for (k, x) in &self.terms {
            out.add_term(*k, &(x * c));
        }
        out
    }

    pub fn sub(&self, o: &EisensteinSym) -> EisensteinSym {
        self.add(&o.scale(&qi(-1)))
    }

    /// Folds G_{m,ζ̄} = (−1)^m G_{m,ζ} onto representatives 2k ≤ N.
    pub fn canonical(&self) -> EisensteinSym {
        let sign = if self.m % 2 == 0 { qi(1) } else { qi(-1) };
        let mut out = EisensteinSym { m: self.m, n: self.n, terms: BTreeMap::new() };
        for (k, c) in &self.terms {
            let kb = (self.n - k) % self.n;
            if 2 * k <= self.n {
                out.add_term(*k, c);
            } else {
                out.add_term(kb, &(c * &sign));
            }
        }
        // self-conjugate symbols vanish for odd m
        if self.m % 2 == 1 {
            out.terms.retain(|k, _| (2 * k) % self.n != 0);
        }
        out
    }

    pub fn equivalent(&self, o: &EisensteinSym) -> bool {
        self.sub(o).canonical().terms.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let t: serde_json::Map<String, Value> =
            self.terms.iter().map(|(k, c)| (Root { k: *k, n: self.n }.label(), fmt_q(c).into())).collect();
        json!({"m": self.m, "N": self.n, "terms": t})
    }
}

fn check_p(p: u64, n: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if n % p == 0 {
        return Err(Error::PrimeDividesLevel { p, n });
    }
    Ok(())
}

/// T_p G_{m,ζ} = p^{m−1}G_{m,ζ} + G_{m,ζ^p}, extended linearly.
pub fn hecke_tp(s: &EisensteinSym, p: u64) -> Result<EisensteinSym> {
    check_p(p, s.n)?;
    let pm = qpow(&qi(p as i64), s.m as i64 - 1);
    let mut out = EisensteinSym { m: s.m, n: s.n, terms: BTreeMap::new() };
    for (k, c) in &s.terms {
        out.add_term(*k, &(c * &pm));
        out.add_term(k * p, c);
    }
    Ok(out)
}

/// [d]G_{m,ζ} = d^{m−2} Σ_{ξ^d = ζ} G_{m,ξ}, at level dN.
pub fn level_shift(s: &EisensteinSym, d: u64) -> Result<EisensteinSym> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be positive".into()));
    }
    let nd = s.n * d;
    let dm = qpow(&qi(d as i64), s.m as i64 - 2);
    let mut out = EisensteinSym { m: s.m, n: nd, terms: BTreeMap::new() };
    for (k, c) in &s.terms {
        for t in 0..d {
            out.add_term(k + t * s.n, &(c * &dm));
        }
    }
    Ok(out)
}

/// ψ(G_{m,ζ}) = class of Li_{m−1}(ζ).
pub fn psi(s: &EisensteinSym) -> Result<ExtClass> {
    let all = decompose_all(s.n, s.m - 1)?;
    let mut out = ExtClass::zero(s.n, s.m - 1);
    for (k, c) in &s.terms {
        out = out.add(&all[*k as usize].scale(c));
    }
    Ok(out)
}

/// T_p on classes of weight w: Li_w(ζ) ↦ p^w Li_w(ζ) + Li_w(ζ^p).
pub fn tp_on_ext(p: u64, e: &ExtClass) -> Result<ExtClass> {
    check_p(p, e.n)?;
    let all = decompose_all(e.n, e.m)?;
    let pw = qpow(&qi(p as i64), e.m as i64);
    let mut out = ExtClass::zero(e.n, e.m);
    for (k, c) in &e.coords {
        let img = all[*k as usize].scale(&pw).add(&all[((k * p) % e.n) as usize]);
        out = out.add(&img.scale(c));
    }
    Ok(out)
}

/// Every relation row of relation_matrix(N, w) maps under T_p into the row span.
pub fn tp_preserves_relations(n: u64, w: u32, p: u64) -> Result<bool> {
    check_p(p, n)?;
    let rows = relation_matrix(n, w)?;
    let nu = n as usize;
    let span = rref(rows.clone(), nu);
    let pw = qpow(&qi(p as i64), w as i64);
    Ok(rows.iter().all(|r| {
        let mut img = vec![Q::zero(); nu];
        for (k, c) in r.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            img[k] += c * &pw;
            img[(k as u64 * p % n) as usize] += c;
        }
        span.contains(&img)
    }))
}

/// ψ∘T_p = T_p∘ψ on every symbol G_{m,ζ}, ζ ∈ μ_N.
pub fn psi_commutes(n: u64, m: u32, p: u64) -> Result<bool> {
    for k in 0..n {
        let g = EisensteinSym::g(m, Root { k, n })?;
        if psi(&hecke_tp(&g, p)?)? != tp_on_ext(p, &psi(&g)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension of the span of primitive symbols modulo G_{ζ̄} = (−1)^m G_ζ.
pub fn primitive_symbol_dim(n: u64, m: u32) -> usize {
    (0..n)
        .map(|k| Root { k, n })
        .filter(|r| r.classify().is_primitive && 2 * r.k <= n)
        .filter(|r| m % 2 == 0 || !r.is_self_conjugate())
        .count()
}

#[derive(Debug, Clone)]
pub struct EisValue {
    pub value: BigC,
    /// Bound on the omitted lattice points: 8R^{2−m}/((m−2)c^m) with c the
    /// smallest |kτ+ℓ|/max(|k|,|ℓ|) on the lattice.
    pub tail_bound: f64,
}

fn check_tau(m: u32, tau: &BigC, radius: u64) -> Result<()> {
    if m < 3 {
        return Err(Error::BadWeight(m));
    }
    if tau.im_f64() <= 0.0 {
        return Err(Error::InvalidArgument("τ must lie in the upper half plane".into()));
    }
    if radius < 10 {
        return Err(Error::InvalidArgument("radius must be at least 10".into()));
    }
    Ok(())
}

fn tail_bound(m: u32, tau: &BigC, radius: u64) -> f64 {
    // |kτ+ℓ| ≥ c·max(|k|,|ℓ|), c = Im τ/(1+|τ|) is a safe lower bound
    let c = tau.im_f64() / (1.0 + tau.abs_f64());
    8.0 * (radius as f64).powi(2 - m as i32) / ((m - 2) as f64 * c.powi(m as i32))
}

/// Calls f(k, ℓ, (kτ+ℓ)^{−m}) over 0 < max(|k|,|ℓ|) ≤ R.
fn lattice_pass(m: u32, tau: &BigC, radius: u64, prec: u32, mut f: impl FnMut(i64, i64, &BigC)) {
    let r = radius as i64;
    let tau = tau.with_prec(prec);
    for k in -r..=r {
        let kt = tau.mul_i64(k);
        for l in -r..=r {
            if k == 0 && l == 0 {
                continue;
            }
            let inv = BigC::one(prec).div(&kt.add(&BigC::from_i64(l, prec)));
            let mut t = inv.clone();
            for _ in 1..m {
                t = t.mul(&inv);
            }
            f(k, l, &t);
        }
    }
}

fn powers(n: u64, prec: u32) -> Vec<BigC> {
    (0..n).map(|k| BigC::root_of_unity(k, n, prec)).collect()
}

/// Σ_r buckets[r] Σ_j c_j ζ_N^{jr}.
fn combine(buckets: &[BigC], coeffs: &[(u64, BigC)], chars: &[BigC], n: u64, prec: u32) -> BigC {
    let mut acc = BigC::zero(prec);
    for (r, b) in buckets.iter().enumerate() {
        let mut chi = BigC::zero(prec);
        for (j, c) in coeffs {
            chi = chi.add(&c.mul(&chars[((*j as u128 * r as u128) % n as u128) as usize]));
        }
        acc = acc.add(&chi.mul(b));
    }
    acc
}

/// Truncated lattice sum for a symbol combination.
pub fn eval_sym(s: &EisensteinSym, tau: &BigC, radius: u64, prec: u32) -> Result<EisValue> {
    check_tau(s.m, tau, radius)?;
    let chars = powers(s.n, prec);
    let coeffs: Vec<(u64, BigC)> = s.terms.iter().map(|(k, c)| (*k, BigC::from_q(c, prec))).collect();
    let mut buckets = vec![BigC::zero(prec); s.n as usize];
    lattice_pass(s.m, tau, radius, prec, |k, _, t| {
        let b = &mut buckets[k.rem_euclid(s.n as i64) as usize];
        *b = b.add(t);
    });
    let acc = combine(&buckets, &coeffs, &chars, s.n, prec);
    let total: f64 = s.terms.values().map(|c| crate::rational::q_to_f64(c).abs()).sum();
    Ok(EisValue { value: acc, tail_bound: total * tail_bound(s.m, tau, radius) })
}

pub fn eisenstein_eval(m: u32, r: Root, tau: &BigC, radius: u64, prec: u32) -> Result<EisValue> {
    eval_sym(&EisensteinSym::g(m, r)?, tau, radius, prec)
}

/// p^{m−1} Σ_{[Λ:Λ′]=p} G(Λ′) by explicit membership in the p+1 index-p
/// sublattices {p | k} and {ℓ ≡ jk mod p}, j = 0..p−1.
pub fn sublattice_tp(s: &EisensteinSym, p: u64, tau: &BigC, radius: u64, prec: u32) -> Result<BigC> {
    check_tau(s.m, tau, radius)?;
    check_p(p, s.n)?;
    let chars = powers(s.n, prec);
    let coeffs: Vec<(u64, BigC)> = s.terms.iter().map(|(k, c)| (*k, BigC::from_q(c, prec))).collect();
    let pi = p as i64;
    let mut buckets = vec![BigC::zero(prec); s.n as usize];
    lattice_pass(s.m, tau, radius, prec, |k, l, t| {
        let mut count = i64::from(k.rem_euclid(pi) == 0);
        for j in 0..pi {
            count += i64::from((l - j * k).rem_euclid(pi) == 0);
        }
        if count > 0 {
            let b = &mut buckets[k.rem_euclid(s.n as i64) as usize];
            *b = b.add(&t.mul_i64(count));
        }
    });
    let acc = combine(&buckets, &coeffs, &chars, s.n, prec);
    Ok(acc.mul_q(&qpow(&qi(pi), s.m as i64 - 1)))
}

#[derive(Debug, Clone)]
pub struct HeckeReport {
    pub n: u64,
    pub m: u32,
    pub p: u64,
    pub symbolic: EisensteinSym,
    pub formula: BigC,
    pub sublattice: BigC,
    pub residual: f64,
    pub tail_bound: f64,
}

impl HeckeReport {
    pub fn to_json(&self) -> Value {
        json!({
            "N": self.n, "m": self.m, "p": self.p,
            "symbolic": self.symbolic.to_json(),
            "formula": self.formula.to_json(20),
            "sublattice": self.sublattice.to_json(20),
            "residual": self.residual,
            "tail_bound": self.tail_bound,
        })
    }
}

/// Compares the symbolic T_pG_{m,ζ_N} evaluated by lattice sums with the
/// sublattice oracle at τ.
pub fn hecke_numeric(n: u64, m: u32, p: u64, tau: &BigC, radius: u64, prec: u32) -> Result<HeckeReport> {
    let g = EisensteinSym::g(m, Root::new(1, n))?;
    let sym = hecke_tp(&g, p)?;
    let f = eval_sym(&sym, tau, radius, prec)?;
    let s = sublattice_tp(&g, p, tau, radius, prec)?;
    Ok(HeckeReport {
        n,
        m,
        p,
        residual: f.value.dist(&s),
        tail_bound: f.tail_bound,
        symbolic: sym,
        formula: f.value,
        sublattice: s,
    })
}

/// |d^{m−1}G_{m,ζ}(dτ) − d^{m−2}Σ_{ξ^d=ζ}G_{m,ξ}(τ)| for ζ = ζ_N^k.
pub fn level_shift_residual(m: u32, r: Root, d: u64, tau: &BigC, radius: u64, prec: u32) -> Result<f64> {
    let g = EisensteinSym::g(m, r)?;
    let lhs = eval_sym(&g, &tau.mul_i64(d as i64), radius, prec)?.value.mul_q(&qpow(&qi(d as i64), m as i64 - 1));
    let rhs = eval_sym(&level_shift(&g, d)?, tau, radius, prec)?.value;
    Ok(lhs.dist(&rhs))
}

/// Symbolic [d]∘T_p = T_p∘[d] on every G_{m,ζ}, ζ ∈ μ_N.
pub fn shift_commutes(n: u64, m: u32, d: u64, p: u64) -> Result<bool> {
    check_p(p, n * d)?;
    for k in 0..n {
        let g = EisensteinSym::g(m, Root { k, n })?;
        let a = level_shift(&hecke_tp(&g, p)?, d)?;
        let b = hecke_tp(&level_shift(&g, d)?, p)?;
        if !a.equivalent(&b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Numeric [d]∘T_p versus T_p∘[d] on G_{m,ζ_N} with both T_p evaluated by
/// the sublattice oracle.
pub fn shift_commutes_numeric(n: u64, m: u32, d: u64, p: u64, tau: &BigC, radius: u64, prec: u32) -> Result<f64> {
    let g = EisensteinSym::g(m, Root::new(1, n))?;
    let dm = qpow(&qi(d as i64), m as i64 - 1);
    let lhs = sublattice_tp(&g, p, &tau.mul_i64(d as i64), radius, prec)?.mul_q(&dm);
    let rhs = sublattice_tp(&level_shift(&g, d)?, p, tau, radius, prec)?;
    Ok(lhs.dist(&rhs))
}

/// ψ on a symbol, for the CLI.
pub fn psi_check_json(n: u64, m: u32, p: u64) -> Result<(bool, Value)> {
    let commutes = psi_commutes(n, m, p)?;
    let preserves = tp_preserves_relations(n, m - 1, p)?;
    let g = EisensteinSym::g(m, Root::new(1, n))?;
    let lhs = psi(&hecke_tp(&g, p)?)?;
    Ok((
        commutes && preserves,
        json!({
            "N": n, "m": m, "p": p,
            "psi_T_p": lhs.to_json(),
            "T_p_psi": tp_on_ext(p, &psi(&g)?)?.to_json(),
            "commutes": commutes,
            "relations_preserved": preserves,
        }),
    ))
}
