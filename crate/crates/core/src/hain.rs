//! The level-N Hain map from the KZ Lie algebra to the KZB Lie algebra.
//!
//! Ψ(e0) = (X/(e^X − 1))·Y, Ψ(e∞) = (X/(e^{−X} − 1))·Y, Ψ(e_ζ) = t_ζ, where
//! e∞ = −e0 − Σ_ζ e_ζ.

use crate::freelie::{kzb_t, Alphabet, AlphabetKind, LieElt};
use crate::linalg::rank;
use crate::ncseries::{ad_series, Ncs};
use crate::polyquot::PolyQuot;
use crate::rational::{bern_coeffs, bern_neg_coeffs};
use crate::ring::QRing;
use crate::{Error, Result, Q};
use num_traits::One;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    E0,
    EInf,
    /// e_{ζ^k}
    E(u64),
}

impl Gen {
    pub fn parse(s: &str) -> Result<Gen> {
        match s {
            "e0" => Ok(Gen::E0),
            "einf" | "e_inf" | "e∞" => Ok(Gen::EInf),
            _ => s
                .strip_prefix('z')
                .or_else(|| s.strip_prefix("e_"))
                .and_then(|k| k.parse().ok())
                .map(Gen::E)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown KZ generator {s}"))),
        }
    }
}

pub fn hain_image(n: u64, g: Gen, cutoff: u32) -> Result<LieElt> {
    if cutoff < 1 {
        return Err(Error::InvalidArgument("cutoff must be at least 1".into()));
    }
    let al = Alphabet::kzb(n);
    let x = LieElt::generator(al, cutoff, 0);
    let y = LieElt::generator(al, cutoff, 1);
    match g {
        Gen::E0 => ad_series(&bern_coeffs(cutoff as usize + 1), &x, &y),
        Gen::EInf => ad_series(&bern_neg_coeffs(cutoff as usize + 1), &x, &y),
        Gen::E(k) if k < n => Ok(kzb_t(n, cutoff, k)),
        Gen::E(k) => Err(Error::InvalidArgument(format!("e_ζ^{k} is not a generator at level {n}"))),
    }
}

/// Apply Ψ to a KZ Lie element, truncating the image at `target_cutoff`.
pub fn hain_apply(u: &LieElt, target_cutoff: u32) -> Result<LieElt> {
    if u.alphabet.kind != AlphabetKind::Kz {
        return Err(Error::InvalidArgument("hain_apply needs the KZ alphabet".into()));
    }
    let n = u.alphabet.n;
    let images: Vec<LieElt> = u
        .alphabet
        .letters()
        .map(|l| hain_image(n, if l == 0 { Gen::E0 } else { Gen::E(l as u64 - 1) }, target_cutoff))
        .collect::<Result<_>>()?;
    Ok(u.map_morphism(Alphabet::kzb(n), target_cutoff, &|l| images[l as usize].clone()))
}

/// Ψ(e0) + Ψ(e∞) + Σ_ζ Ψ(e_ζ), which should vanish.
pub fn hain_relation_residual(n: u64, cutoff: u32) -> Result<LieElt> {
    let mut s = hain_image(n, Gen::E0, cutoff)?.add(&hain_image(n, Gen::EInf, cutoff)?)?;
    for k in 0..n {
        s = s.add(&hain_image(n, Gen::E(k), cutoff)?)?;
    }
    Ok(s)
}

/// Ad(exp X)(e0_image) + Ψ(e∞); zero for the true Hain image of e0.
pub fn cylinder_residual(e0_image: &LieElt) -> Result<LieElt> {
    let al = e0_image.alphabet;
    let x = LieElt::generator(al, e0_image.cutoff, 0);
    let lhs = Ncs::exp(&x).conjugate(e0_image)?;
    lhs.add(&hain_image(al.n, Gen::EInf, e0_image.cutoff)?)
}

pub fn cylinder_check(cutoff: u32) -> Result<bool> {
    if cutoff < 2 {
        return Err(Error::InvalidArgument("cylinder check needs cutoff ≥ 2".into()));
    }
    Ok(cylinder_residual(&hain_image(1, Gen::E0, cutoff)?)?.is_zero())
}

/// The negative control: e0 ↦ Y.
pub fn cylinder_check_perturbed(cutoff: u32) -> Result<bool> {
    let y = LieElt::generator(Alphabet::kzb(1), cutoff, 1);
    Ok(cylinder_residual(&y)?.is_zero())
}

/// ad_{e0}^m(e_{ζ^k}) in the KZ algebra.
pub fn kz_depth_one(n: u64, m: u32, k: u64, cutoff: u32) -> LieElt {
    let al = Alphabet::kz(n);
    let mut w = vec![0u8; m as usize];
    w.push(al.ez(k));
    LieElt::from_terms(al, cutoff, [(w, Q::one())]).expect("e0^m e_ζ is Lyndon")
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct LemmaD1Report {
    pub n: u64,
    pub max_power: u32,
    /// Every ad_{e0}^m(e_ζ) maps to Y^m·t_ζ mod D².
    pub images_match: bool,
    /// Rank of the images of {e0} ∪ {e0^m·e_ζ}.
    pub rank: usize,
    pub count: usize,
}

/// Check Ψ(e0^m·e_ζ) ≡ Y^m t_ζ mod D² for m ≤ max_power, through the full
/// KZB image, and the linear independence of the images.
pub fn lemma_d1(n: u64, max_power: u32) -> Result<LemmaD1Report> {
    let kz_cut = 2 * (max_power + 1);
    let kzb_cut = max_power + 2;
    let e0 = LieElt::generator(Alphabet::kz(n), kz_cut, 0);
    let mut imgs = vec![hain_apply(&e0, kzb_cut)?.project_mod_d2()?];
    let mut ok = true;
    for m in 0..=max_power {
        for k in 0..n {
            let p = hain_apply(&kz_depth_one(n, m, k, kz_cut), kzb_cut)?.project_mod_d2()?;
            ok &= p == PolyQuot::column_monomial(QRing, n, max_power, k, (0, m), Q::one());
            imgs.push(p);
        }
    }
    let rows: Vec<Vec<Q>> = imgs.iter().map(|p| p.coordinates()).collect();
    let r = rank(&rows, rows[0].len());
    Ok(LemmaD1Report { n, max_power, images_match: ok, rank: r, count: rows.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::lyndon_basis;
    use crate::rational::{q, qi};

    #[test]
    fn hain_image_examples() {
        let al = Alphabet::kzb(5);
        let e0 = hain_image(5, Gen::E0, 5).unwrap();
        let ad = |k: usize| {
            let mut w = vec![0u8; k];
            w.push(1);
            w
        };
        assert_eq!(e0.coeff(&ad(0)), qi(1));
        assert_eq!(e0.coeff(&ad(1)), q(-1, 2));
        assert_eq!(e0.coeff(&ad(2)), q(1, 12));
        assert_eq!(e0.coeff(&ad(3)), qi(0));
        assert_eq!(e0.coeff(&ad(4)), q(-1, 720));
        assert_eq!(e0.terms.len(), 4);
        assert_eq!(hain_image(5, Gen::E(1), 5).unwrap(), LieElt::generator(al, 5, al.t(1)));
        let einf = hain_image(5, Gen::EInf, 3).unwrap();
        assert_eq!(einf.coeff(&ad(0)), qi(-1));
        assert_eq!(einf.coeff(&ad(1)), q(-1, 2));
        assert_eq!(einf.coeff(&ad(2)), q(-1, 12));
        assert!(hain_image(5, Gen::E(5), 5).is_err());
        assert_eq!(Gen::parse("z3").unwrap(), Gen::E(3));
        assert!(Gen::parse("q").is_err());
    }

    #[test]
    fn relation_holds() {
        for n in 1..=4 {
            for w in [1, 4, 7, 10] {
                assert!(hain_relation_residual(n, w).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn cylinder() {
        assert!(cylinder_check(2).unwrap());
        assert!(cylinder_check(8).unwrap());
        assert!(!cylinder_check_perturbed(2).unwrap());
        assert!(!cylinder_check_perturbed(5).unwrap());
    }

    #[test]
    fn morphism_on_brackets() {
        let al = Alphabet::kz(3);
        let e0 = LieElt::generator(al, 10, 0);
        let ez = LieElt::generator(al, 10, al.ez(2));
        let lhs = hain_apply(&e0.bracket(&ez).unwrap(), 6).unwrap();
        let rhs = hain_image(3, Gen::E0, 6).unwrap().bracket(&hain_image(3, Gen::E(2), 6).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lemma_d1_holds() {
        for n in 1..=3 {
            let r = lemma_d1(n, 4).unwrap();
            assert!(r.images_match);
            assert_eq!(r.rank, r.count);
        }
    }

    #[test]
    fn filtration_compatibility() {
        // Ψ sends W-codegree w of KZ to M-codegree w of KZB and respects F.
        for n in 1..=2 {
            let al = Alphabet::kz(n);
            for u in lyndon_basis(&al, 8).unwrap() {
                let x = LieElt::from_terms(al, 8, [(u.clone(), qi(1))]).unwrap();
                let d = x.degrees().unwrap();
                let img = hain_apply(&x, 8).unwrap();
                let kzb = Alphabet::kzb(n);
                for w in img.terms.keys() {
                    let m: u32 = w.iter().map(|&l| kzb.degrees(l).m).sum();
                    let f: u32 = w.iter().map(|&l| kzb.degrees(l).f).sum();
                    assert!(m >= d.m && f >= d.f, "{}", al.spell(&u));
                }
            }
        }
    }

    #[test]
    fn depth_strictness() {
        for n in 1..=2 {
            let al = Alphabet::kz(n);
            for u in lyndon_basis(&al, 12).unwrap() {
                let x = LieElt::from_terms(al, 12, [(u.clone(), qi(1))]).unwrap();
                let img = hain_apply(&x, 6).unwrap();
                // only compare the lowest-weight homogeneous piece, which is
                // complete at this cutoff
                let lowest = img.homogeneous_components().into_iter().next();
                if let Some((w, c)) = lowest {
                    if w <= 6 {
                        assert_eq!(c.degrees().unwrap().depth, x.degrees().unwrap().depth, "{}", al.spell(&u));
                    }
                }
            }
        }
    }
}
