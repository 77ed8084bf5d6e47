//! The star relation in the KZ fundamental group modulo D², with numeric
//! associator coefficients, and the transported Betti generator.
//!
//! With base point ∂/∂t at 0 and Φ = G(dch), the loop that winds once
//! counterclockwise around all finite punctures is computed two ways:
//!
//!   Π_{j=0}^{N−1} Φ_j e^{L e_{ζ^j}} Φ_j^{-1} e^{L e_0/N}
//!     = Φ e^{L e_1/2} Q e^{−L e_∞} Q^{-1} e^{−L e_1/2} Φ^{-1},
//!
//! where L = 2πi, Φ_η is Φ under e_r ↦ e_{rη}, and Q is Φ^{-1} under
//! e_0 ↦ e_∞ = −e_0 − Σ e_ζ, e_ζ ↦ e_ζ̄ (the substitution t ↦ 1/t).

use super::bigc::{BigC, CRing};
use super::iterint::{dch_transport_depth1, path_series_depth1, PathSpec};
use crate::freelie::{Alphabet, Letter};
use crate::ncseries::Ncs;
use crate::polyquot::{betti_basis_cyc, BettiForm};
use crate::Result;

/// Word length used for the mod-D² comparison.
pub const STAR_LENGTH: u32 = 3;

fn depth1(a: &Ncs<CRing>) -> Ncs<CRing> {
    a.truncate_depth(1)
}

fn mul(a: &Ncs<CRing>, b: &Ncs<CRing>) -> Result<Ncs<CRing>> {
    Ok(depth1(&a.mul(b)?))
}

fn exp_letter(ring: CRing, al: Alphabet, cutoff: u32, l: Letter, c: &BigC) -> Result<Ncs<CRing>> {
    Ncs::letter(ring, al, cutoff, l).scale(c).exp_series()
}

#[derive(Debug, Clone)]
pub struct StarReport {
    pub n: u64,
    pub residual: f64,
    /// Residual after adding 10⁻³ to the e_0 e_1 coefficient of Φ.
    pub perturbed_residual: f64,
}

fn star_sides(n: u64, phi: &Ncs<CRing>, prec: u32) -> Result<(Ncs<CRing>, Ncs<CRing>)> {
    let ring = CRing { prec };
    let al = Alphabet::kz(n);
    let cutoff = phi.cutoff;
    let l = BigC::two_pi_i(prec);
    let phi_inv = depth1(&phi.inverse()?);
    let rot = |j: u64, s: &Ncs<CRing>| -> Result<Ncs<CRing>> {
        s.substitute(&|c: Letter| {
            let img = if c == 0 { 0 } else { 1 + ((c as u64 - 1 + j) % n) as Letter };
            Ncs::letter(ring, al, cutoff, img)
        })
    };
    let e0_step = exp_letter(ring, al, cutoff, 0, &l.div_i64(n as i64))?;
    let mut lhs = Ncs::one(ring, al, cutoff);
    for j in 0..n {
        let pj = depth1(&rot(j, phi)?);
        let pj_inv = depth1(&rot(j, &phi_inv)?);
        let turn = exp_letter(ring, al, cutoff, 1 + j as Letter, &l)?;
        lhs = mul(&lhs, &pj)?;
        lhs = mul(&lhs, &turn)?;
        lhs = mul(&lhs, &pj_inv)?;
        lhs = mul(&lhs, &e0_step)?;
    }
    let e_inf = {
        let mut s = Ncs::letter(ring, al, cutoff, 0).scale(&BigC::from_i64(-1, prec));
        for k in 0..n {
            s = s.sub(&Ncs::letter(ring, al, cutoff, 1 + k as Letter))?;
        }
        s
    };
    let invert = |s: &Ncs<CRing>| -> Result<Ncs<CRing>> {
        s.substitute(&|c: Letter| {
            if c == 0 {
                e_inf.clone()
            } else {
                Ncs::letter(ring, al, cutoff, 1 + ((n - (c as u64 - 1)) % n) as Letter)
            }
        })
    };
    let q = depth1(&invert(&phi_inv)?);
    let q_inv = depth1(&invert(phi)?);
    let half = exp_letter(ring, al, cutoff, 1, &l.div_i64(2))?;
    let half_inv = exp_letter(ring, al, cutoff, 1, &l.div_i64(-2))?;
    let around_inf = depth1(&e_inf.scale(&l.neg()).exp_series()?);
    let mut rhs = phi.clone();
    for f in [&half, &q, &around_inf, &q_inv, &half_inv, &phi_inv] {
        rhs = mul(&rhs, f)?;
    }
    Ok((lhs, rhs))
}

fn max_diff(a: &Ncs<CRing>, b: &Ncs<CRing>) -> Result<f64> {
    let d = a.sub(b)?;
    Ok(d.coeffs.values().map(|c| c.abs_f64()).fold(0.0, f64::max))
}

/// Maximal coefficient discrepancy of the star relation modulo D², words of
/// at most three letters, plus the negative control.
pub fn star_check(n: u64, prec: u32) -> Result<StarReport> {
    if n == 0 || n > 6 {
        return Err(crate::Error::InvalidArgument("star_check supports 1 ≤ N ≤ 6".into()));
    }
    let phi = path_series_depth1(&PathSpec::dch(prec), n, STAR_LENGTH, prec)?;
    let (lhs, rhs) = star_sides(n, &phi, prec)?;
    let residual = max_diff(&lhs, &rhs)?;
    let mut bad = phi.clone();
    let w = vec![0, 1];
    let c = bad.coeff(&w).add(&BigC::from_f64(1e-3, 0.0, prec));
    bad.coeffs.insert(w, c);
    let (l2, r2) = star_sides(n, &bad, prec)?;
    Ok(StarReport { n, residual, perturbed_residual: max_diff(&l2, &r2)? })
}

#[derive(Debug, Clone)]
pub struct BettiCheck {
    pub n: u64,
    /// (k, m, numeric coefficient, symbolic value, |difference|)
    pub rows: Vec<(u64, u32, BigC, BigC, f64)>,
}

impl BettiCheck {
    pub fn max_residual(&self) -> f64 {
        self.rows.iter().map(|r| r.4).fold(0.0, f64::max)
    }
}

/// Ad(e^{iπ e_1}·T(dch))(2πi e_0) read on the words e_0^m e_ζ, against the
/// transported Betti generator evaluated at L = 2πi, λ_{m,ζ} = Li_m(ζ).
pub fn betti_transport_check(n: u64, m_max: u32, prec: u32) -> Result<BettiCheck> {
    let ring = CRing { prec };
    let al = Alphabet::kz(n);
    let t = dch_transport_depth1(n, m_max + 1, prec)?;
    let cutoff = t.cutoff;
    let l = BigC::two_pi_i(prec);
    let g = mul(&exp_letter(ring, al, cutoff, 1, &l.div_i64(2))?, &t)?;
    let x = Ncs::letter(ring, al, cutoff, 0).scale(&l);
    let ad = mul(&mul(&g, &x)?, &depth1(&g.inverse()?))?;
    let sym = &betti_basis_cyc(n, m_max, BettiForm::Transported)?[0].kz;
    let mut rows = Vec::new();
    for k in 0..n {
        for m in 2..=m_max {
            let mut w = vec![0 as Letter; m as usize];
            w.push(1 + k as Letter);
            let num = ad.coeff(&w);
            let val = sym.coeff(k, m).evaluate(prec)?;
            let d = num.dist(&val);
            rows.push((k, m, num, val, d));
        }
    }
    Ok(BettiCheck { n, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_small_levels() {
        for n in [1, 2] {
            let r = star_check(n, 128).unwrap();
            assert!(r.residual < 1e-8, "N={n}: {}", r.residual);
            assert!(r.perturbed_residual > 1e-4, "N={n}: {}", r.perturbed_residual);
        }
        assert!(star_check(3, 128).unwrap().residual < 1e-8);
    }

    #[test]
    fn transported_betti() {
        let r = betti_transport_check(2, 3, 128).unwrap();
        assert!(r.max_residual() < 1e-10, "{:?}", r.rows);
    }
}
