//! Iterated integrals of logarithmic forms by re-expanded Taylor series.
//!
//! Along a straight segment the prefix integrals V_k(t) = ∫ f_1⋯f_k satisfy
//! dV_k = V_{k−1} f_k dt. Around each center they are power series; the
//! segment is walked in steps of half the distance to the nearest pole.
//! Endpoints may sit on poles as long as the integrals converge there.

use super::bigc::BigC;
use crate::{Error, Result};

/// The form scale·dt/(t − pole).
#[derive(Debug, Clone, PartialEq)]
pub struct TForm {
    pub pole: BigC,
    pub scale: BigC,
}

const SAME: f64 = 1e-40;

fn nearest_pole(c: &BigC, forms: &[TForm]) -> f64 {
    forms.iter().map(|f| f.pole.dist(c)).filter(|&d| d > SAME).fold(f64::INFINITY, f64::min)
}

/// Values of all prefix integrals at `end`, starting from `vals` at `start`.
fn walk(forms: &[TForm], start: &BigC, end: &BigC, mut vals: Vec<BigC>, prec: u32) -> Result<Vec<BigC>> {
    let n = forms.len();
    let mut c = start.clone();
    let total = end.dist(start);
    if total == 0.0 {
        return Ok(vals);
    }
    let dir = end.sub(start).div(&BigC::from_f64(total, 0.0, prec));
    for _ in 0..10_000 {
        let rho = nearest_pole(&c, forms);
        let remaining = end.dist(&c);
        let (h, done) = if remaining <= rho / 2.0 {
            (end.sub(&c), true)
        } else {
            (dir.mul(&BigC::from_f64(rho / 2.0, 0.0, prec)), false)
        };
        let ratio = h.abs_f64() / rho;
        let terms = if ratio == 0.0 { 2 } else { ((prec as f64 + 12.0) / -ratio.log2()).ceil() as usize + 2 };
        // series coefficients a[k][j]
        let mut prev: Vec<BigC> = vec![BigC::zero(prec); terms];
        prev[0] = vals[0].clone();
        for k in 1..=n {
            let f = &forms[k - 1];
            let mut cur = vec![BigC::zero(prec); terms];
            cur[0] = vals[k].clone();
            if f.pole.dist(&c) <= SAME {
                if !prev[0].is_zero() && prev[0].abs_f64() > 1e-300 {
                    return Err(Error::MissingRegularization);
                }
                for j in 1..terms {
                    cur[j] = f.scale.mul(&prev[j]).div_i64(j as i64);
                }
            } else {
                // 1/(t − a) = Σ_r (−1)^r h^r / (c − a)^{r+1}
                let inv = BigC::one(prec).div(&c.sub(&f.pole));
                let mut g = Vec::with_capacity(terms);
                let mut x = f.scale.mul(&inv);
                let step = inv.neg();
                for _ in 0..terms {
                    g.push(x.clone());
                    x = x.mul(&step);
                }
                for j in 1..terms {
                    let mut s = BigC::zero(prec);
                    for i in 0..j {
                        if !prev[i].is_zero() {
                            s = s.add(&prev[i].mul(&g[j - 1 - i]));
                        }
                    }
                    cur[j] = s.div_i64(j as i64);
                }
            }
            prev = std::mem::replace(&mut cur, Vec::new());
            // Horner evaluation at h
            let mut v = BigC::zero(prec);
            for a in prev.iter().rev() {
                v = v.mul(&h).add(a);
            }
            vals[k] = v;
        }
        c = c.add(&h);
        if done {
            return Ok(vals);
        }
    }
    Err(Error::InteriorSingularity("Taylor walk did not reach the endpoint".into()))
}

fn check_segment(forms: &[TForm], a: &BigC, b: &BigC) -> Result<()> {
    let len = b.dist(a);
    for f in forms {
        let (da, db) = (f.pole.dist(a), f.pole.dist(b));
        if da > SAME && db > SAME && da + db - len < 1e-30 * (1.0 + len) {
            return Err(Error::InteriorSingularity(format!("pole {} lies on the segment", f.pole)));
        }
    }
    Ok(())
}

/// ∫_a^b f_1⋯f_n along the straight segment.
pub fn integrate_word(forms: &[TForm], a: &BigC, b: &BigC, prec: u32) -> Result<BigC> {
    let n = forms.len();
    check_segment(forms, a, b)?;
    let mut init = vec![BigC::zero(prec); n + 1];
    init[0] = BigC::one(prec);
    if !forms.iter().any(|f| f.pole.dist(b) <= SAME) {
        return Ok(walk(forms, a, b, init, prec)?.pop().unwrap());
    }
    // meet in the middle: forward a → p, backward b → p on the reversed word
    let rho_b = nearest_pole(b, forms).min(b.dist(a) * 2.0);
    let len = b.dist(a);
    let back = (rho_b / 2.0).min(len / 2.0);
    let p = b.sub(&b.sub(a).mul(&BigC::from_f64(back / len, 0.0, prec)));
    let fwd = walk(forms, a, &p, init.clone(), prec)?;
    let rev: Vec<TForm> = forms.iter().rev().cloned().collect();
    let bwd = walk(&rev, b, &p, init, prec)?;
    // ∫_p^b w[r..n] = (−1)^{n−r} ∫_b^p reversed
    let mut acc = BigC::zero(prec);
    for r in 0..=n {
        let t = fwd[r].mul(&bwd[n - r]);
        acc = if (n - r) % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_and_dilog() {
        let p = 128;
        let one = BigC::one(p);
        let zero = BigC::zero(p);
        // ∫_0^{1/2} dt/(1−t) = log 2
        let f = TForm { pole: one.clone(), scale: one.neg() };
        let h = BigC::from_f64(0.5, 0.0, p);
        let v = integrate_word(&[f.clone()], &zero, &h, p).unwrap();
        let log2 = BigC::from_i64(2, p).ln();
        assert!(v.dist(&log2) < 1e-36);
        // ζ(2) = ∫_0^1 dt/(1−t) dt/t
        let g = TForm { pole: zero.clone(), scale: one.clone() };
        let z2 = integrate_word(&[f.clone(), g.clone()], &zero, &one, p).unwrap();
        assert!((z2.re_f64() - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-15);
        // starting on a pole of the first letter diverges
        assert_eq!(integrate_word(&[g.clone(), f.clone()], &zero, &h, p), Err(Error::MissingRegularization));
        let bad = TForm { pole: BigC::from_f64(0.25, 0.0, p), scale: one.clone() };
        assert!(matches!(integrate_word(&[bad], &zero, &h, p), Err(Error::InteriorSingularity(_))));
    }
}
