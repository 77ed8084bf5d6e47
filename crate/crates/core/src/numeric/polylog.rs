//! Polylogarithms and multiple polylogarithms at high precision.

use super::bigc::BigC;
use super::taylor::{integrate_word, TForm};
use crate::rational::{bernoulli, bernoulli_poly, factorial, q, qi};
use crate::{Error, Result, Root, Q};
use num_integer::Integer;
use rug::ops::Pow;
use rug::Float;

const GUARD: u32 = 24;

fn fq(x: &Q, prec: u32) -> Float {
    Float::with_val(prec, super::bigc::rug_rat(x))
}

/// Hurwitz ζ(s, a) for integer s ≥ 2 and 0 < a ≤ 1, by Euler–Maclaurin.
pub fn hurwitz(s: u32, a: &Float, prec: u32) -> Float {
    assert!(s >= 2);
    let wp = prec + GUARD;
    let big_m = prec / 8 + 12;
    let mut sum = Float::new(wp);
    for n in 0..big_m {
        let x = Float::with_val(wp, a + n);
        sum += x.pow(-(s as i32)).clone();
    }
    let x = Float::with_val(wp, a + big_m);
    sum += Float::with_val(wp, x.clone().pow(1 - s as i32)) / (s - 1);
    sum += Float::with_val(wp, x.clone().pow(-(s as i32))) / 2u32;
    let eps = Float::with_val(wp, Float::i_exp(1, -(wp as i32)));
    let x2 = Float::with_val(wp, &x * &x);
    // poch · x^{−s−2j+1}, updated by two factors and x^{−2} per step
    let mut p = Float::with_val(wp, x.clone().pow(-(s as i32) - 1)) * s;
    let mut last = Float::with_val(wp, f64::INFINITY);
    for j in 1..200u32 {
        let c = bernoulli(2 * j as usize) / Q::from(factorial(2 * j));
        let term = Float::with_val(wp, &p * fq(&c, wp));
        let mag = Float::with_val(wp, term.abs_ref());
        if mag >= last {
            break;
        }
        sum += &term;
        if mag < eps {
            break;
        }
        last = mag;
        p *= (s + 2 * j - 1) * (s + 2 * j);
        p /= &x2;
    }
    Float::with_val(prec, sum)
}

pub fn zeta_value(n: u32, prec: u32) -> Result<Float> {
    if n < 2 {
        return Err(Error::Divergent(format!("ζ({n})")));
    }
    Ok(Float::with_val(prec, Float::zeta_u(n)))
}

/// Li_m(ζ_N^k) = N^{−m} Σ_{j=1}^{N} ζ^{jk} ζ(m, j/N) for m ≥ 2; −log(1 − ζ) for m = 1.
pub fn li(m: u32, r: Root, prec: u32) -> Result<BigC> {
    if m == 0 {
        return Err(Error::BadWeight(0));
    }
    let wp = prec + GUARD;
    let g = r.k.gcd(&r.n);
    let (k, n) = (r.k / g, r.n / g);
    if m == 1 {
        if k == 0 {
            return Err(Error::Divergent("Li_1(1)".into()));
        }
        let z = BigC::root_of_unity(k, n, wp);
        return Ok(BigC::one(wp).sub(&z).ln().neg().with_prec(prec));
    }
    if n == 1 {
        let z = zeta_value(m, wp)?;
        return Ok(BigC::from_float(z, Float::new(prec)).with_prec(prec));
    }
    let mut acc = BigC::zero(wp);
    for j in 1..=n {
        let a = Float::with_val(wp, j) / n;
        let h = hurwitz(m, &a, wp);
        acc = acc.add(&BigC::root_of_unity(j * k, n, wp).mul_f(&h));
    }
    let nm = Float::with_val(wp, n).pow(m);
    Ok(BigC(rug::Complex::with_val(prec, acc.0 / nm)))
}

/// Li_s(e^μ) = Σ_{j≠s−1} ζ(s−j) μ^j/j! + μ^{s−1}/(s−1)!·(H_{s−1} − log(−μ)),
/// with μ = 2πik/N taken in (−πi, πi]. Used as an independent check of [`li`].
pub fn li_log_series(s: u32, r: Root, prec: u32) -> Result<BigC> {
    if r.k == 0 || s == 0 {
        return li(s, r, prec);
    }
    let wp = prec + GUARD;
    let kk = if 2 * r.k > r.n { r.k as i64 - r.n as i64 } else { r.k as i64 };
    let mu = BigC::two_pi_i(wp).mul_q(&q(kk, r.n as i64));
    let mut acc = BigC::zero(wp);
    let mut pw = BigC::one(wp); // μ^j / j!
    let eps = Float::with_val(wp, Float::i_exp(1, -(wp as i32) - 4));
    for j in 0..(3 * wp + 40) {
        if j > 0 {
            pw = pw.mul(&mu).div_i64(j as i64);
        }
        let e = s as i64 - j as i64;
        let term = if e == 1 {
            let h: Q = (1..s).map(|i| q(1, i as i64)).sum();
            BigC::from_q(&h, wp).sub(&mu.neg().ln()).mul(&pw)
        } else if e >= 2 {
            pw.mul_f(&zeta_value(e as u32, wp)?)
        } else {
            let nn = (-e) as usize;
            let z = bernoulli(nn + 1) * qi(if nn % 2 == 0 { 1 } else { -1 }) / qi(nn as i64 + 1);
            pw.mul_q(&z)
        };
        acc = acc.add(&term);
        if e < 0 && !term.is_zero() && term.abs() < eps {
            break;
        }
    }
    Ok(acc.with_prec(prec))
}

/// Forms of the iterated-integral representation of Li_{n_1..n_m}(z_1..z_m),
/// integrated from 0 to z_1⋯z_m.
pub fn li_word_forms(ns: &[u32], zs: &[BigC]) -> (Vec<TForm>, BigC) {
    let prec = zs[0].prec();
    let mut forms = Vec::new();
    let mut pole = BigC::one(prec);
    for (i, &n) in ns.iter().enumerate() {
        if i > 0 {
            pole = pole.mul(&zs[i - 1]);
        }
        forms.push(TForm { pole: pole.clone(), scale: BigC::from_i64(-1, prec) });
        for _ in 1..n {
            forms.push(TForm { pole: BigC::zero(prec), scale: BigC::one(prec) });
        }
    }
    let end = zs.iter().fold(BigC::one(prec), |a, z| a.mul(z));
    (forms, end)
}

/// Li_{n_1..n_m}(z_1..z_m) = Σ_{0<k_1<⋯<k_m} Π z_i^{k_i}/k_i^{n_i} on the
/// closed unit polydisk.
pub fn multiple_li(ns: &[u32], zs: &[BigC], prec: u32) -> Result<BigC> {
    if ns.is_empty() || ns.len() != zs.len() || ns.contains(&0) {
        return Err(Error::InvalidArgument("indices and arguments must be nonempty, equal length, positive".into()));
    }
    let wp = prec + GUARD;
    let zs: Vec<BigC> = zs.iter().map(|z| z.with_prec(wp)).collect();
    if zs.iter().any(|z| z.abs_f64() > 1.0 + 1e-30) {
        return Err(Error::InvalidArgument("arguments must lie in the closed unit disk".into()));
    }
    let last = zs.last().unwrap();
    if *ns.last().unwrap() == 1 && last.dist(&BigC::one(wp)) < 1e-30 {
        return Err(Error::Divergent("last index 1 with last argument 1".into()));
    }
    let rho = last.abs_f64();
    if rho <= 0.75 {
        let m = ns.len();
        let kmax = ((wp + 10 + 8 * m as u32) as f64 / -rho.max(1e-300).log2()).ceil() as u64 + 2;
        let mut acc = vec![BigC::zero(wp); m + 1];
        acc[0] = BigC::one(wp);
        let mut zp: Vec<BigC> = vec![BigC::one(wp); m];
        for k in 1..=kmax {
            for j in (1..=m).rev() {
                zp[j - 1] = zp[j - 1].mul(&zs[j - 1]);
                let kn = Float::with_val(wp, k).pow(ns[j - 1]);
                let t = acc[j - 1].mul(&zp[j - 1].div(&BigC::from_float(kn, Float::new(wp))));
                acc[j] = acc[j].add(&t);
            }
        }
        return Ok(acc[m].with_prec(prec));
    }
    let (forms, end) = li_word_forms(ns, &zs);
    Ok(integrate_word(&forms, &BigC::zero(wp), &end, wp)?.with_prec(prec))
}

/// (Li_m(ζ) + (−1)^m Li_m(ζ̄))/(2πi)^m, reconstructed as a rational and
/// compared with −B_m(k/N)/m!.
pub fn bernoulli_pairing(m: u32, r: Root, prec: u32) -> Result<Q> {
    if m < 2 {
        return Err(Error::BadWeight(m));
    }
    let a = li(m, r, prec)?;
    let b = li(m, r.conj(), prec)?;
    let s = if m % 2 == 0 { a.add(&b) } else { a.sub(&b) };
    let v = s.div(&BigC::two_pi_i(prec).pow_u(m));
    let tol = Float::with_val(prec, Float::i_exp(1, 40 - prec as i32));
    if v.im().clone().abs() > tol {
        return Err(Error::Reconstruction(format!("imaginary part {} is not zero", v.im())));
    }
    let got = super::reconstruct(v.re(), 1_000_000_000_000, &tol)
        .ok_or_else(|| Error::Reconstruction(format!("no rational within tolerance of {}", v.re())))?;
    let expect = -bernoulli_poly(m as usize, &q(r.k as i64, r.n as i64)) / Q::from(factorial(m));
    if got != expect {
        return Err(Error::Reconstruction(format!("pairing {got} differs from −B_m(k/N)/m! = {expect}")));
    }
    Ok(got)
}

/// |ℓ^{m−1} Σ_{w^ℓ=z} Li_m(w) − Li_m(z)| for z = ζ_N^k, w ranging over level ℓN.
pub fn distribution_residual(m: u32, l: u64, r: Root, prec: u32) -> Result<f64> {
    let big = r.n * l;
    let mut acc = BigC::zero(prec);
    for t in 0..l {
        acc = acc.add(&li(m, Root::new((r.k + t * r.n) as i64, big), prec)?);
    }
    let lm = acc.mul_i64((l as i64).pow(m - 1));
    Ok(lm.sub(&li(m, r, prec)?).abs_f64())
}

/// Li_m(ζ_N^j) − Σ_b c_b Li_m(ζ_N^b) for the exact decomposition c of the
/// class of Li_m(ζ_N^j), divided by (2πi)^m, reconstructed as a rational
/// with denominator at most `max_den`.
pub fn decomposition_residuals(n: u64, m: u32, prec: u32, max_den: u64) -> Result<Vec<(u64, Q)>> {
    let classes = crate::extdecomp::decompose_all(n, m)?;
    let wp = prec + GUARD;
    let lis: Vec<BigC> = (0..n).map(|j| li(m, Root { k: j, n }, wp)).collect::<Result<_>>()?;
    let period = BigC::two_pi_i(wp).pow_u(m);
    let tol = Float::with_val(wp, Float::i_exp(1, 48 - prec as i32));
    let mut out = Vec::new();
    for (j, cls) in classes.iter().enumerate() {
        let mut res = lis[j].clone();
        for (b, c) in &cls.coords {
            res = res.sub(&lis[*b as usize].mul_q(c));
        }
        let ratio = res.div(&period);
        if Float::with_val(wp, ratio.im().abs_ref()) > tol {
            return Err(Error::Reconstruction(format!("N={n} m={m} j={j}: imaginary part {}", ratio.im_f64())));
        }
        let qv = super::reconstruct(ratio.re(), max_den, &tol)
            .ok_or_else(|| Error::Reconstruction(format!("N={n} m={m} j={j}: {}", ratio.re_f64())))?;
        out.push((j as u64, qv));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    fn pi(p: u32) -> Float {
        Float::with_val(p, Constant::Pi)
    }

    #[test]
    fn li_examples() {
        let p = 128;
        let z2 = li(2, Root::unit(1), p).unwrap();
        let pi2 = Float::with_val(p, pi(p).square());
        assert!((z2.re().clone() - pi2.clone() / 6u32).abs() < 1e-36);
        let l = li(2, Root::new(1, 2), p).unwrap();
        assert!((l.re().clone() + pi2.clone() / 12u32).abs() < 1e-36);
        assert!(l.im().clone().abs() < 1e-36);
        let l3 = li(3, Root::new(1, 2), p).unwrap();
        let z3 = zeta_value(3, p).unwrap();
        assert!((l3.re().clone() + z3 * 3u32 / 4u32).abs() < 1e-36);
        assert!((l3.re_f64() + 0.9015426773696957).abs() < 1e-15);
        assert!(matches!(li(1, Root::unit(3), p), Err(Error::Divergent(_))));
        // Li_2(i) = −π²/48 + i·G
        let li2i = li(2, Root::new(1, 4), p).unwrap();
        let catalan = Float::with_val(p, Constant::Catalan);
        assert!((li2i.im().clone() - catalan).abs() < 1e-36);
        assert!((li2i.re().clone() + pi2 / 48u32).abs() < 1e-36);
    }

    #[test]
    fn li_routes_agree() {
        let p = 128;
        for n in 2..=7u64 {
            for k in 0..n {
                for m in 1..=5 {
                    if m == 1 && k == 0 {
                        continue;
                    }
                    let r = Root::new(k as i64, n);
                    let a = li(m, r, p).unwrap();
                    let b = li_log_series(m, r, p).unwrap();
                    assert!(a.dist(&b) < 1e-35, "m={m} k={k} N={n}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn distribution() {
        let p = 128;
        for n in 1..=6u64 {
            for l in 2..=3u64 {
                for m in 2..=4 {
                    for k in 0..n {
                        assert!(distribution_residual(m, l, Root::new(k as i64, n), p).unwrap() < 1e-35);
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(bernoulli_pairing(2, Root::new(1, 2), 128).unwrap(), q(1, 24));
        assert_eq!(bernoulli_pairing(2, Root::unit(1), 128).unwrap(), q(-1, 12));
        let b3 = bernoulli_pairing(3, Root::new(1, 3), 128).unwrap();
        assert_eq!(b3, -bernoulli_poly(3, &q(1, 3)) / qi(6));
        assert!(bernoulli_pairing(1, Root::new(1, 3), 128).is_err());
    }

    #[test]
    fn mzv_footnote() {
        let p = 128;
        let one = BigC::one(p);
        let z4 = zeta_value(4, p).unwrap().to_f64();
        let z13 = multiple_li(&[1, 3], &[one.clone(), one.clone()], p).unwrap();
        let z112 = multiple_li(&[1, 1, 2], &[one.clone(), one.clone(), one.clone()], p).unwrap();
        let z22 = multiple_li(&[2, 2], &[one.clone(), one.clone()], p).unwrap();
        let pi4 = Float::with_val(p, pi(p).pow(4u32)) / 360u32;
        assert!((z13.re().clone() - pi4).abs() < 1e-30);
        assert!((z13.re_f64() - 0.2705808084).abs() < 1e-10);
        assert!((z112.re_f64() - z4).abs() < 1e-12);
        assert!((4.0 / 3.0 * z22.re_f64() - z4).abs() < 1e-12);
        assert!(multiple_li(&[2, 1], &[one.clone(), one.clone()], p).is_err());
    }

    #[test]
    fn decomposition_residuals_are_rational() {
        for n in [1u64, 2, 5, 6] {
            for m in 2..=4 {
                let r = decomposition_residuals(n, m, 192, 1_000_000).unwrap();
                assert_eq!(r.len(), n as usize);
            }
        }
        let r = decomposition_residuals(5, 2, 192, 1_000_000).unwrap();
        assert_eq!(r[3].1, q(11, 300));
        // weight 4 denominators outgrow 10^6 from N = 7 on
        let r = decomposition_residuals(12, 4, 192, 1_000_000_000).unwrap();
        assert_eq!(r[7].1, q(-2669, 2488320));
        assert!(decomposition_residuals(12, 4, 192, 1_000_000).is_err());
    }

    #[test]
    fn nested_sum_matches_path_integral() {
        let p = 128;
        let h = BigC::from_q(&q(1, 2), p);
        let a = multiple_li(&[1, 1], &[h.clone(), h.clone()], p).unwrap();
        let (forms, end) = li_word_forms(&[1, 1], &[h.clone(), h.clone()]);
        let b = integrate_word(&forms, &BigC::zero(p), &end, p).unwrap();
        assert!(a.dist(&b) < 1e-35);
        let z = BigC::from_f64(0.3, -0.4, p);
        let w = BigC::root_of_unity(1, 5, p);
        let a = multiple_li(&[2, 1, 3], &[w.clone(), h.clone(), z.clone()], p).unwrap();
        let (forms, end) = li_word_forms(&[2, 1, 3], &[w, h, z]);
        let b = integrate_word(&forms, &BigC::zero(p), &end, p).unwrap();
        assert!(a.dist(&b) < 1e-35);
    }
}
