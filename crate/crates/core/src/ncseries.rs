//! Truncated noncommutative power series over a coefficient ring.

use crate::freelie::{Alphabet, Letter, LieElt, Word, WordPoly};
use crate::rational::factorial;
use crate::ring::{QRing, Ring};
use crate::{Error, Result, Q};
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub struct Ncs<R: Ring> {
    pub ring: R,
    pub alphabet: Alphabet,
    pub cutoff: u32,
    pub coeffs: BTreeMap<Word, R::E>,
}

impl<R: Ring> Ncs<R> {
    pub fn zero(ring: R, alphabet: Alphabet, cutoff: u32) -> Self {
        Ncs { ring, alphabet, cutoff, coeffs: BTreeMap::new() }
    }

    pub fn one(ring: R, alphabet: Alphabet, cutoff: u32) -> Self {
        let mut s = Self::zero(ring, alphabet, cutoff);
        let one = s.ring.one();
        s.coeffs.insert(Vec::new(), one);
        s
    }

    pub fn letter(ring: R, alphabet: Alphabet, cutoff: u32, l: Letter) -> Self {
        let mut s = Self::zero(ring, alphabet, cutoff);
        let one = s.ring.one();
        s.add_term(vec![l], one);
        s
    }

    pub fn from_terms(ring: R, alphabet: Alphabet, cutoff: u32, terms: impl IntoIterator<Item = (Word, R::E)>) -> Self {
        let mut s = Self::zero(ring, alphabet, cutoff);
        for (w, c) in terms {
            s.add_term(w, c);
        }
        s
    }

    /// Embed a rational Lie element through its word expansion.
    pub fn from_lie(ring: R, u: &LieElt) -> Self {
        let mut s = Self::zero(ring, u.alphabet, u.cutoff);
        for (w, c) in u.expand() {
            let c = s.ring.from_q(&c);
            s.add_term(w, c);
        }
        s
    }

    pub fn add_term(&mut self, w: Word, c: R::E) {
        if self.alphabet.weight(&w) > self.cutoff || self.ring.is_zero(&c) {
            return;
        }
        let sum = match self.coeffs.get(&w) {
            Some(x) => self.ring.add(x, &c),
            None => c,
        };
        if self.ring.is_zero(&sum) {
            self.coeffs.remove(&w);
        } else {
            self.coeffs.insert(w, sum);
        }
    }

    pub fn coeff(&self, w: &[Letter]) -> R::E {
        self.coeffs.get(w).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_term(&self) -> R::E {
        self.coeff(&[])
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.alphabet != o.alphabet || self.cutoff != o.cutoff {
            return Err(Error::AlphabetMismatch(
                format!("{}@{}", self.alphabet.name(), self.cutoff),
                format!("{}@{}", o.alphabet.name(), o.cutoff),
            ));
        }
        if self.ring != o.ring {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        for (w, c) in &o.coeffs {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&self.ring.neg(&self.ring.one())))
    }

    pub fn scale(&self, c: &R::E) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.alphabet, self.cutoff);
        for (w, x) in &self.coeffs {
            out.add_term(w.clone(), self.ring.mul(x, c));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = Self::zero(self.ring.clone(), self.alphabet, self.cutoff);
        for (u, a) in &self.coeffs {
            let wu = self.alphabet.weight(u);
            for (v, b) in &o.coeffs {
                if wu + self.alphabet.weight(v) <= self.cutoff {
                    let mut w = u.clone();
                    w.extend_from_slice(v);
                    out.add_term(w, self.ring.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// Σ_{n≥0} c_n x^n; needs x without constant term, so the sum is finite.
    fn power_series(&self, c: &dyn Fn(u32) -> R::E) -> Result<Self> {
        if !self.ring.is_zero(&self.constant_term()) {
            return Err(Error::ConstantTerm);
        }
        let mut out = Self::one(self.ring.clone(), self.alphabet, self.cutoff).scale(&c(0));
        let mut p = Self::one(self.ring.clone(), self.alphabet, self.cutoff);
        for n in 1..=self.cutoff {
            p = p.mul(self)?;
            if p.coeffs.is_empty() {
                break;
            }
            out = out.add(&p.scale(&c(n)))?;
        }
        Ok(out)
    }

    /// exp of a series without constant term.
    pub fn exp_series(&self) -> Result<Self> {
        let r = self.ring.clone();
        self.power_series(&|n| r.from_q(&Q::new(1.into(), factorial(n))))
    }

    /// log of a series with constant term 1, as a series.
    pub fn log_series(&self) -> Result<Self> {
        if self.constant_term() != self.ring.one() {
            return Err(Error::ConstantTerm);
        }
        let x = self.sub(&Self::one(self.ring.clone(), self.alphabet, self.cutoff))?;
        let r = self.ring.clone();
        x.power_series(&|n| if n == 0 { r.zero() } else { r.from_q(&Q::new(if n % 2 == 1 { 1 } else { -1 }.into(), n.into())) })
    }

    /// Inverse of a series with constant term 1: Σ (1 − s)^n.
    pub fn inverse(&self) -> Result<Self> {
        if self.constant_term() != self.ring.one() {
            return Err(Error::ConstantTerm);
        }
        let one = Self::one(self.ring.clone(), self.alphabet, self.cutoff);
        let x = one.sub(self)?;
        let r = self.ring.clone();
        x.power_series(&|_| r.one())
    }

    /// Apply the algebra morphism defined by letter images (each image a
    /// series without constant term).
    pub fn substitute(&self, image: &dyn Fn(Letter) -> Self) -> Result<Self> {
        let imgs: Vec<Self> = self.alphabet.letters().map(image).collect();
        let mut out = Self::zero(self.ring.clone(), self.alphabet, self.cutoff);
        let mut cache: BTreeMap<Word, Self> = BTreeMap::new();
        cache.insert(Vec::new(), Self::one(self.ring.clone(), self.alphabet, self.cutoff));
        for (w, c) in &self.coeffs {
            // words are visited in lexicographic order, so every proper
            // prefix of w is cached unless it was never needed
            let mut k = w.len();
            while !cache.contains_key(&w[..k]) {
                k -= 1;
            }
            for j in k..w.len() {
                let next = cache[&w[..j]].mul(&imgs[w[j] as usize])?;
                cache.insert(w[..=j].to_vec(), next);
            }
            out = out.add(&cache[w].scale(c))?;
        }
        Ok(out)
    }

    /// Drop words with more than `d` letters of t-degree one.
    pub fn truncate_depth(&self, d: u32) -> Self {
        let mut out = self.clone();
        out.coeffs.retain(|w, _| w.iter().filter(|&&l| self.alphabet.degrees(l).t > 0).count() as u32 <= d);
        out
    }

    pub fn with_ring<S: Ring>(&self, ring: S, f: &dyn Fn(&R::E) -> S::E) -> Ncs<S> {
        let mut out = Ncs::zero(ring, self.alphabet, self.cutoff);
        for (w, c) in &self.coeffs {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let coeffs: serde_json::Map<String, Value> =
            self.coeffs.iter().map(|(w, c)| (self.alphabet.spell(w), Value::from(self.ring.render(c)))).collect();
        json!({"alphabet": self.alphabet.name(), "cutoff": self.cutoff, "coeffs": coeffs})
    }
}

impl Ncs<QRing> {
    pub fn exp(u: &LieElt) -> Ncs<QRing> {
        Ncs::from_lie(QRing, u).exp_series().expect("Lie elements have no constant term")
    }

    /// log of a group-like series as a Lie element.
    pub fn log(&self) -> Result<LieElt> {
        let l = self.log_series()?;
        let p: WordPoly = l.coeffs.clone();
        LieElt::from_word_poly(self.alphabet, self.cutoff, &p).map_err(|_| Error::NotGroupLike)
    }

    pub fn is_group_like(&self) -> bool {
        self.log().is_ok()
    }

    /// Ad(s)(v) = s·v·s^{-1} for group-like s.
    pub fn conjugate(&self, v: &LieElt) -> Result<LieElt> {
        if !self.is_group_like() {
            return Err(Error::NotGroupLike);
        }
        let p = self.mul(&Ncs::from_lie(QRing, v))?.mul(&self.inverse()?)?;
        LieElt::from_word_poly(self.alphabet, self.cutoff, &p.coeffs)
    }
}

/// Σ_n c_n ad_g^n(v), truncated at the cutoff of v.
pub fn ad_series(c: &[Q], g: &LieElt, v: &LieElt) -> Result<LieElt> {
    let mut out = LieElt::zero(v.alphabet, v.cutoff);
    let mut term = v.clone();
    for cn in c {
        if term.is_zero() {
            break;
        }
        if !cn.is_zero() {
            out = out.add(&term.scale(cn))?;
        }
        term = g.bracket(&term)?;
    }
    Ok(out)
}

/// 1/n! for n = 0..len, the coefficients of e^x.
pub fn exp_coeffs(len: usize) -> Vec<Q> {
    (0..len as u32).map(|n| Q::new(1.into(), factorial(n))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::tests::arb_lie;
    use crate::rational::{bern_coeffs, bern_neg_coeffs, q, qi};
    use proptest::prelude::*;

    fn lie(al: Alphabet, cut: u32, terms: &[(&str, Q)]) -> LieElt {
        LieElt::from_terms(al, cut, terms.iter().map(|(s, c)| (al.parse_word(s).unwrap(), c.clone()))).unwrap()
    }

    #[test]
    fn mul_examples() {
        let al = Alphabet::kz(2);
        let one = Ncs::one(QRing, al, 8);
        let e0 = Ncs::letter(QRing, al, 8, 0);
        let e1 = Ncs::letter(QRing, al, 8, al.ez(0));
        let p = one.add(&e0).unwrap().mul(&one.add(&e1).unwrap()).unwrap();
        assert_eq!(p.coeffs.len(), 4);
        assert_eq!(p.coeff(&[0, 1]), qi(1));
        assert_eq!(p.mul(&one).unwrap(), p);
        let e1e0 = e1.mul(&e0).unwrap();
        assert_eq!(e0.mul(&e1e0).unwrap().coeff(&[0, 1, 0]), qi(1));
        assert!(e0.mul(&Ncs::one(QRing, al, 6)).is_err());
    }

    #[test]
    fn bch_degree_three() {
        let al = Alphabet::kzb(1);
        let x = LieElt::generator(al, 3, 0);
        let y = LieElt::generator(al, 3, 1);
        let z = Ncs::exp(&x).mul(&Ncs::exp(&y)).unwrap().log().unwrap();
        let expect = lie(al, 3, &[("X", qi(1)), ("Y", qi(1)), ("XY", q(1, 2)), ("XXY", q(1, 12)), ("XYY", q(1, 12))]);
        assert_eq!(z, expect);
        assert_ne!(Ncs::exp(&x).mul(&Ncs::exp(&y)).unwrap(), Ncs::exp(&x.add(&y).unwrap()));
        assert_eq!(Ncs::exp(&LieElt::zero(al, 3)), Ncs::one(QRing, al, 3));
    }

    #[test]
    fn log_errors() {
        let al = Alphabet::kzb(1);
        let x = Ncs::letter(QRing, al, 4, 0);
        assert_eq!(x.log(), Err(Error::ConstantTerm));
        let one = Ncs::one(QRing, al, 4);
        let s = one.add(&x.mul(&Ncs::letter(QRing, al, 4, 1)).unwrap()).unwrap();
        assert_eq!(s.log(), Err(Error::NotGroupLike));
        assert_eq!(s.conjugate(&LieElt::generator(al, 4, 0)), Err(Error::NotGroupLike));
    }

    #[test]
    fn ad_series_examples() {
        let al = Alphabet::kzb(1);
        let x = LieElt::generator(al, 5, 0);
        let y = LieElt::generator(al, 5, 1);
        assert_eq!(ad_series(&[qi(1)], &x, &y).unwrap(), y);
        assert_eq!(ad_series(&[qi(0), qi(1)], &x, &y).unwrap(), x.bracket(&y).unwrap());
        // Bern + BernNeg = −[X,Y]
        let b = ad_series(&bern_coeffs(6), &x, &y).unwrap();
        let bn = ad_series(&bern_neg_coeffs(6), &x, &y).unwrap();
        assert_eq!(b.add(&bn).unwrap(), x.bracket(&y).unwrap().scale(&qi(-1)));
    }

    #[test]
    fn conjugate_examples() {
        let al = Alphabet::kzb(1);
        let x = LieElt::generator(al, 6, 0);
        let y = LieElt::generator(al, 6, 1);
        let c = Ncs::exp(&x).conjugate(&y).unwrap();
        assert_eq!(c, ad_series(&exp_coeffs(7), &x, &y).unwrap());
        assert_eq!(Ncs::one(QRing, al, 6).conjugate(&y).unwrap(), y);
    }

    #[test]
    fn substitute_and_inverse() {
        let al = Alphabet::kz(2);
        let u = lie(al, 8, &[("e0", qi(1)), ("e0z1", q(1, 3)), ("z0", qi(2))]);
        let g = Ncs::exp(&u);
        assert_eq!(g.mul(&g.inverse().unwrap()).unwrap(), Ncs::one(QRing, al, 8));
        // swapping z0 and z1 is a Hopf morphism, so group-likeness survives
        let swap = g
            .substitute(&|l| match l {
                0 => Ncs::letter(QRing, al, 8, 0),
                1 => Ncs::letter(QRing, al, 8, 2),
                _ => Ncs::letter(QRing, al, 8, 1),
            })
            .unwrap();
        assert!(swap.is_group_like());
        assert_eq!(swap.coeff(&[2]), qi(2));
        assert_eq!(g.truncate_depth(0).coeffs.keys().filter(|w| !w.is_empty()).count(), 4);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn exp_log_roundtrip(u in arb_lie(Alphabet::kzb(2), 6, 4)) {
            let g = Ncs::exp(&u);
            prop_assert!(g.is_group_like());
            prop_assert_eq!(g.log().unwrap(), u);
        }

        #[test]
        fn group_likes_multiply(u in arb_lie(Alphabet::kz(1), 8, 3), v in arb_lie(Alphabet::kz(1), 8, 3)) {
            prop_assert!(Ncs::exp(&u).mul(&Ncs::exp(&v)).unwrap().is_group_like());
        }
    }
}
