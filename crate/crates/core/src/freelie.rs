//! Truncated free Lie algebras over Q in Lyndon coordinates.
//!
//! Two alphabets are used. The KZ alphabet has letters e0 and e_ζ for ζ in
//! μ_N. The KZB alphabet is free on X, Y, t_1..t_{N-1}; the letter t_0 is
//! the derived element [X,Y] - Σ_{k≥1} t_k. Elements are truncated by the
//! total W-codegree of their words.

use crate::linalg::rref;
use crate::polyquot::PolyQuot;
use crate::rational::{fmt_q, parse_q};
use crate::ring::QRing;
use crate::{Error, Result, Q};
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub type Letter = u8;
pub type Word = Vec<Letter>;
pub type WordPoly = BTreeMap<Word, Q>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlphabetKind {
    /// e0 = letter 0, e_{ζ^k} = letter 1+k.
    Kz,
    /// X = 0, Y = 1, t_k = 1+k for k = 1..N-1.
    Kzb,
    /// X = 0, Y = 1, t_k = 2+k for k = 0..N-1: the N-generator presentation
    /// with the relation not imposed. Used to compute depth.
    KzbFull,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    pub kind: AlphabetKind,
    pub n: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LetterDegrees {
    pub w: u32,
    pub m: u32,
    pub f: u32,
    pub t: u32,
}

impl Alphabet {
    pub fn kz(n: u64) -> Alphabet {
        assert!(n >= 1);
        Alphabet { kind: AlphabetKind::Kz, n }
    }

    pub fn kzb(n: u64) -> Alphabet {
        assert!(n >= 1);
        Alphabet { kind: AlphabetKind::Kzb, n }
    }

    pub fn kzb_full(n: u64) -> Alphabet {
        assert!(n >= 1);
        Alphabet { kind: AlphabetKind::KzbFull, n }
    }

    pub fn len(&self) -> usize {
        match self.kind {
            AlphabetKind::Kz | AlphabetKind::Kzb => self.n as usize + 1,
            AlphabetKind::KzbFull => self.n as usize + 2,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.len() as Letter
    }

    /// KZ letter e_{ζ^k}.
    pub fn ez(&self, k: u64) -> Letter {
        assert_eq!(self.kind, AlphabetKind::Kz);
        (1 + k % self.n) as Letter
    }

    /// KZB letter t_k, k ≥ 1 (or any k for the full presentation).
    pub fn t(&self, k: u64) -> Letter {
        match self.kind {
            AlphabetKind::Kzb => {
                assert!(k >= 1 && k < self.n, "t_0 is derived in the KZB alphabet");
                (1 + k) as Letter
            }
            AlphabetKind::KzbFull => (2 + k) as Letter,
            AlphabetKind::Kz => panic!("no t letters in the KZ alphabet"),
        }
    }

    pub fn degrees(&self, l: Letter) -> LetterDegrees {
        match self.kind {
            AlphabetKind::Kz => LetterDegrees { w: 2, m: 2, f: 1, t: (l > 0) as u32 },
            AlphabetKind::Kzb | AlphabetKind::KzbFull => match l {
                0 => LetterDegrees { w: 1, m: 0, f: 0, t: 0 },
                1 => LetterDegrees { w: 1, m: 2, f: 1, t: 0 },
                _ => LetterDegrees { w: 2, m: 2, f: 1, t: 1 },
            },
        }
    }

    pub fn weight(&self, w: &[Letter]) -> u32 {
        w.iter().map(|&l| self.degrees(l).w).sum()
    }

    pub fn symbol(&self, l: Letter) -> String {
        match self.kind {
            AlphabetKind::Kz => {
                if l == 0 {
                    "e0".into()
                } else {
                    format!("z{}", l - 1)
                }
            }
            AlphabetKind::Kzb => match l {
                0 => "X".into(),
                1 => "Y".into(),
                _ => format!("t{}", l - 1),
            },
            AlphabetKind::KzbFull => match l {
                0 => "X".into(),
                1 => "Y".into(),
                _ => format!("t{}", l - 2),
            },
        }
    }

    pub fn spell(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&l| self.symbol(l)).collect()
    }

    /// Parse a word spelled as tokens `[A-Za-z][0-9]*`, e.g. "XXY", "Xt1", "e0z2".
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let symbols: HashMap<String, Letter> = self.letters().map(|l| (self.symbol(l), l)).collect();
        let mut out = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let tok: String = chars[i..j].iter().collect();
            let l = symbols
                .get(&tok)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown symbol {tok} in {}", self.name())))?;
            out.push(*l);
            i = j;
        }
        Ok(out)
    }

    pub fn name(&self) -> String {
        let k = match self.kind {
            AlphabetKind::Kz => "KZ",
            AlphabetKind::Kzb => "KZB",
            AlphabetKind::KzbFull => "KZB-full",
        };
        format!("{k}/{}", self.n)
    }

    pub fn parse_name(s: &str) -> Result<Alphabet> {
        let bad = || Error::InvalidArgument(format!("bad alphabet {s}"));
        let (k, n) = s.split_once('/').ok_or_else(bad)?;
        let n: u64 = n.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        match k {
            "KZ" => Ok(Alphabet::kz(n)),
            "KZB" => Ok(Alphabet::kzb(n)),
            "KZB-full" => Ok(Alphabet::kzb_full(n)),
            _ => Err(bad()),
        }
    }
}

pub fn is_lyndon(w: &[Letter]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|i| w < &w[i..])
}

/// Standard factorization w = uv with v the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[Letter]) -> (Word, Word) {
    assert!(w.len() >= 2);
    for i in 1..w.len() {
        if is_lyndon(&w[i..]) {
            return (w[..i].to_vec(), w[i..].to_vec());
        }
    }
    unreachable!("a single letter is always Lyndon")
}

fn lyndon_cache() -> &'static Mutex<HashMap<Word, Arc<WordPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<Word, Arc<WordPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Word expansion of the standard bracketing P_w of a Lyndon word.
pub fn expand_lyndon(w: &[Letter]) -> Arc<WordPoly> {
    if let Some(p) = lyndon_cache().lock().unwrap().get(w) {
        return p.clone();
    }
    let p = if w.len() == 1 {
        BTreeMap::from([(w.to_vec(), Q::one())])
    } else {
        let (u, v) = standard_factorization(w);
        let (pu, pv) = (expand_lyndon(&u), expand_lyndon(&v));
        let mut out = wp_mul(&pu, &pv, None);
        for (x, c) in wp_mul(&pv, &pu, None) {
            wp_add_term(&mut out, x, -c);
        }
        out
    };
    let p = Arc::new(p);
    lyndon_cache().lock().unwrap().insert(w.to_vec(), p.clone());
    p
}

pub fn wp_add_term(p: &mut WordPoly, w: Word, c: Q) {
    if c.is_zero() {
        return;
    }
    match p.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Concatenation product, optionally truncated by (alphabet, cutoff).
pub fn wp_mul(a: &WordPoly, b: &WordPoly, trunc: Option<(&Alphabet, u32)>) -> WordPoly {
    let mut out = WordPoly::new();
    let wb: Vec<(u32, &Word, &Q)> = b
        .iter()
        .map(|(w, c)| (trunc.map_or(0, |(al, _)| al.weight(w)), w, c))
        .collect();
    for (x, cx) in a {
        let wx = trunc.map_or(0, |(al, _)| al.weight(x));
        for (wy, y, cy) in &wb {
            if let Some((_, cut)) = trunc {
                if wx + wy > cut {
                    continue;
                }
            }
            let mut z = x.clone();
            z.extend_from_slice(y);
            wp_add_term(&mut out, z, cx * *cy);
        }
    }
    out
}

/// All Lyndon words of W-codegree ≤ ω in lexicographic order.
pub fn lyndon_basis(alphabet: &Alphabet, omega: u32) -> Result<Vec<Word>> {
    if omega == 0 {
        return Err(Error::InvalidArgument("cutoff must be positive".into()));
    }
    let mut out = Vec::new();
    let mut stack: Vec<(Word, u32)> = vec![(Vec::new(), 0)];
    while let Some((w, wt)) = stack.pop() {
        if !w.is_empty() && is_lyndon(&w) {
            out.push(w.clone());
        }
        for l in alphabet.letters() {
            let d = alphabet.degrees(l).w;
            if wt + d <= omega {
                let mut v = w.clone();
                v.push(l);
                if is_prenecklace(&v) {
                    stack.push((v, wt + d));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Prefixes of Lyndon words (possibly with a larger alphabet) are exactly the
/// pre-necklaces: w[i] ≥ w[i-p] comparison in Duval's scan never fails.
fn is_prenecklace(w: &[Letter]) -> bool {
    let mut p = 1;
    for i in 1..w.len() {
        if w[i] < w[i - p] {
            return false;
        }
        if w[i] > w[i - p] {
            p = i + 1;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElt {
    pub alphabet: Alphabet,
    pub cutoff: u32,
    pub terms: BTreeMap<Word, Q>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Degrees {
    pub w: u32,
    pub m: u32,
    pub f: u32,
    pub depth: u32,
}

impl LieElt {
    pub fn zero(alphabet: Alphabet, cutoff: u32) -> LieElt {
        LieElt { alphabet, cutoff, terms: BTreeMap::new() }
    }

    pub fn generator(alphabet: Alphabet, cutoff: u32, l: Letter) -> LieElt {
        LieElt::from_terms(alphabet, cutoff, [(vec![l], Q::one())]).expect("letters are Lyndon")
    }

    /// Build from Lyndon-coordinate terms; words above the cutoff are dropped.
    pub fn from_terms(alphabet: Alphabet, cutoff: u32, terms: impl IntoIterator<Item = (Word, Q)>) -> Result<LieElt> {
        let mut out = LieElt::zero(alphabet, cutoff);
        for (w, c) in terms {
            if !is_lyndon(&w) || w.iter().any(|&l| l as usize >= alphabet.len()) {
                return Err(Error::InvalidArgument(format!("{} is not a Lyndon word", alphabet.spell(&w))));
            }
            if alphabet.weight(&w) <= cutoff {
                wp_add_term(&mut out.terms, w, c);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Letter]) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    fn check(&self, other: &LieElt) -> Result<()> {
        if self.alphabet != other.alphabet || self.cutoff != other.cutoff {
            return Err(Error::AlphabetMismatch(
                format!("{}@{}", self.alphabet.name(), self.cutoff),
                format!("{}@{}", other.alphabet.name(), other.cutoff),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &LieElt) -> Result<LieElt> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            wp_add_term(&mut out.terms, w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LieElt) -> Result<LieElt> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> LieElt {
        let mut out = LieElt::zero(self.alphabet, self.cutoff);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect();
        }
        out
    }

    pub fn with_cutoff(&self, cutoff: u32) -> LieElt {
        let mut out = LieElt::zero(self.alphabet, cutoff);
        out.terms = self
            .terms
            .iter()
            .filter(|(w, _)| self.alphabet.weight(w) <= cutoff)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        out
    }

    /// Word expansion in the tensor algebra.
    pub fn expand(&self) -> WordPoly {
        let mut out = WordPoly::new();
        for (w, c) in &self.terms {
            for (x, cx) in expand_lyndon(w).iter() {
                wp_add_term(&mut out, x.clone(), c * cx);
            }
        }
        out
    }

    /// Recover Lyndon coordinates from a word polynomial. P_w has w as its
    /// lexicographically smallest word with coefficient 1, so peeling off the
    /// smallest word is triangular.
    pub fn from_word_poly(alphabet: Alphabet, cutoff: u32, p: &WordPoly) -> Result<LieElt> {
        let mut rest: WordPoly = p
            .iter()
            .filter(|(w, c)| !c.is_zero() && !w.is_empty() && alphabet.weight(w) <= cutoff)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        if p.get(&Vec::new()).is_some_and(|c| !c.is_zero()) {
            return Err(Error::NotLie);
        }
        let mut out = LieElt::zero(alphabet, cutoff);
        while let Some((w, c)) = rest.pop_first() {
            if !is_lyndon(&w) {
                return Err(Error::NotLie);
            }
            for (x, cx) in expand_lyndon(&w).iter() {
                if *x != w {
                    wp_add_term(&mut rest, x.clone(), -(&c * cx));
                }
            }
            out.terms.insert(w, c);
        }
        Ok(out)
    }

    pub fn bracket(&self, other: &LieElt) -> Result<LieElt> {
        self.check(other)?;
        let (a, b) = (self.expand(), other.expand());
        let t = Some((&self.alphabet, self.cutoff));
        let mut p = wp_mul(&a, &b, t);
        for (w, c) in wp_mul(&b, &a, t) {
            wp_add_term(&mut p, w, -c);
        }
        LieElt::from_word_poly(self.alphabet, self.cutoff, &p)
    }

    /// Components by W-codegree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, LieElt> {
        let mut out: BTreeMap<u32, LieElt> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(self.alphabet.weight(w))
                .or_insert_with(|| LieElt::zero(self.alphabet, self.cutoff))
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    /// Extend letter images to a Lie morphism and apply it.
    pub fn map_morphism(&self, target: Alphabet, target_cutoff: u32, image: &dyn Fn(Letter) -> LieElt) -> LieElt {
        let mut memo: HashMap<Word, LieElt> = HashMap::new();
        let mut out = LieElt::zero(target, target_cutoff);
        for (w, c) in &self.terms {
            let img = morphism_image(w, target, target_cutoff, image, &mut memo);
            out = out.add(&img.scale(c)).expect("same target");
        }
        out
    }

    pub fn degrees(&self) -> Result<Degrees> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let sum = |w: &Word, f: &dyn Fn(LetterDegrees) -> u32| w.iter().map(|&l| f(self.alphabet.degrees(l))).sum::<u32>();
        let w = self.terms.keys().map(|x| sum(x, &|d| d.w)).min().unwrap();
        let m = self.terms.keys().map(|x| sum(x, &|d| d.m)).min().unwrap();
        let f = self.terms.keys().map(|x| sum(x, &|d| d.f)).max().unwrap();
        let depth = match self.alphabet.kind {
            AlphabetKind::Kz | AlphabetKind::KzbFull => self.terms.keys().map(|x| sum(x, &|d| d.t)).min().unwrap(),
            AlphabetKind::Kzb => self.homogeneous_components().values().map(kzb_depth).min().unwrap(),
        };
        Ok(Degrees { w, m, f, depth })
    }

    /// Image in the mod-D² model; columns are kept to degree cutoff - 2.
    pub fn project_mod_d2(&self) -> Result<PolyQuot<QRing>> {
        if self.alphabet.kind != AlphabetKind::Kzb {
            return Err(Error::InvalidArgument("project_mod_D2 needs the KZB alphabet".into()));
        }
        let n = self.alphabet.n;
        let max_deg = self.cutoff.saturating_sub(2);
        let mut memo: HashMap<Word, PolyQuot<QRing>> = HashMap::new();
        let mut out = PolyQuot::zero(QRing, n, max_deg);
        for (w, c) in &self.terms {
            let img = project_word(w, n, max_deg, &mut memo);
            out = out.add(&img.scale(c));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "alphabet": self.alphabet.name(),
            "cutoff": self.cutoff,
            "terms": self.terms.iter().map(|(w, c)| json!({
                "word": self.alphabet.spell(w),
                "num": c.numer().to_string(),
                "den": c.denom().to_string(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<LieElt> {
        let bad = |s: &str| Error::InvalidArgument(format!("bad LieElt json: {s}"));
        let alphabet = Alphabet::parse_name(v["alphabet"].as_str().ok_or_else(|| bad("alphabet"))?)?;
        let cutoff = v["cutoff"].as_u64().ok_or_else(|| bad("cutoff"))? as u32;
        let mut terms = Vec::new();
        for t in v["terms"].as_array().ok_or_else(|| bad("terms"))? {
            let w = alphabet.parse_word(t["word"].as_str().ok_or_else(|| bad("word"))?)?;
            let c = parse_q(&format!(
                "{}/{}",
                t["num"].as_str().ok_or_else(|| bad("num"))?,
                t["den"].as_str().ok_or_else(|| bad("den"))?
            ))
            .ok_or_else(|| bad("rational"))?;
            terms.push((w, c));
        }
        LieElt::from_terms(alphabet, cutoff, terms)
    }
}

impl fmt::Display for LieElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{}*[{}]", fmt_q(c), self.alphabet.spell(w)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn morphism_image(
    w: &Word,
    target: Alphabet,
    cutoff: u32,
    image: &dyn Fn(Letter) -> LieElt,
    memo: &mut HashMap<Word, LieElt>,
) -> LieElt {
    if let Some(x) = memo.get(w) {
        return x.clone();
    }
    let img = if w.len() == 1 {
        image(w[0]).with_cutoff(cutoff)
    } else {
        let (u, v) = standard_factorization(w);
        let a = morphism_image(&u, target, cutoff, image, memo);
        let b = morphism_image(&v, target, cutoff, image, memo);
        a.bracket(&b).expect("same target alphabet")
    };
    memo.insert(w.clone(), img.clone());
    img
}

fn project_word(w: &Word, n: u64, max_deg: u32, memo: &mut HashMap<Word, PolyQuot<QRing>>) -> PolyQuot<QRing> {
    if let Some(x) = memo.get(w) {
        return x.clone();
    }
    let img = if w.len() == 1 {
        match w[0] {
            0 => PolyQuot::x(QRing, n, max_deg),
            1 => PolyQuot::y(QRing, n, max_deg),
            l => PolyQuot::column_unit(QRing, n, max_deg, (l - 1) as u64),
        }
    } else {
        let (u, v) = standard_factorization(w);
        let a = project_word(&u, n, max_deg, memo);
        let b = project_word(&v, n, max_deg, memo);
        a.bracket(&b)
    };
    memo.insert(w.clone(), img.clone());
    img
}

/// The derived KZB element t_0 = [X,Y] - Σ_{k≥1} t_k.
pub fn kzb_t0(n: u64, cutoff: u32) -> LieElt {
    let al = Alphabet::kzb(n);
    let mut terms = vec![(vec![0, 1], Q::one())];
    for k in 1..n {
        terms.push((vec![al.t(k)], -Q::one()));
    }
    LieElt::from_terms(al, cutoff, terms).unwrap()
}

/// KZB element for t_k with t_0 expanded.
pub fn kzb_t(n: u64, cutoff: u32, k: u64) -> LieElt {
    let k = k % n;
    if k == 0 {
        kzb_t0(n, cutoff)
    } else {
        let al = Alphabet::kzb(n);
        LieElt::generator(al, cutoff, al.t(k))
    }
}

/// Map the full presentation onto the free KZB algebra.
pub fn from_full_presentation(u: &LieElt) -> LieElt {
    let n = u.alphabet.n;
    u.map_morphism(Alphabet::kzb(n), u.cutoff, &|l| match l {
        0 | 1 => LieElt::generator(Alphabet::kzb(n), u.cutoff, l),
        _ => kzb_t(n, u.cutoff, (l - 2) as u64),
    })
}

/// Depth of a nonzero W-homogeneous KZB element in the N-generator
/// presentation: the largest d such that it is a combination of Lie words
/// with at least d letters t_k (k = 0..N-1).
fn kzb_depth(c: &LieElt) -> u32 {
    let proj = c.project_mod_d2().expect("KZB alphabet");
    if !proj.a.is_zero() || !proj.b.is_zero() {
        return 0;
    }
    if !proj.is_zero() {
        return 1;
    }
    let w = c.alphabet.weight(c.terms.keys().next().unwrap());
    let mut d = 2;
    while 2 * (d + 1) <= w && in_depth(c, w, d + 1) {
        d += 1;
    }
    d
}

fn in_depth(c: &LieElt, weight: u32, d: u32) -> bool {
    let n = c.alphabet.n;
    let full = Alphabet::kzb_full(n);
    let basis: Vec<Word> = lyndon_basis(&c.alphabet, weight)
        .unwrap()
        .into_iter()
        .filter(|w| c.alphabet.weight(w) == weight)
        .collect();
    let index: HashMap<&Word, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let to_vec = |u: &LieElt| {
        let mut v = vec![Q::zero(); basis.len()];
        for (w, x) in &u.terms {
            if let Some(&i) = index.get(w) {
                v[i] = x.clone();
            }
        }
        v
    };
    let rows: Vec<Vec<Q>> = lyndon_basis(&full, weight)
        .unwrap()
        .into_iter()
        .filter(|w| full.weight(w) == weight && w.iter().filter(|&&l| l >= 2).count() as u32 >= d)
        .map(|w| to_vec(&from_full_presentation(&LieElt::from_terms(full, weight, [(w, Q::one())]).unwrap())))
        .collect();
    if rows.is_empty() {
        return false;
    }
    rref(rows, basis.len()).contains(&to_vec(&c.with_cutoff(weight)))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use proptest::prelude::*;

    pub fn arb_lie(alphabet: Alphabet, cutoff: u32, max_terms: usize) -> impl Strategy<Value = LieElt> {
        let basis = lyndon_basis(&alphabet, cutoff).unwrap();
        proptest::collection::vec((0..basis.len(), -3i64..4), 1..=max_terms).prop_map(move |picks| {
            LieElt::from_terms(alphabet, cutoff, picks.into_iter().map(|(i, c)| (basis[i].clone(), qi(c)))).unwrap()
        })
    }

    fn gen(al: Alphabet, cut: u32, s: &str) -> LieElt {
        LieElt::from_terms(al, cut, [(al.parse_word(s).unwrap(), qi(1))]).unwrap()
    }

    #[test]
    fn lyndon_basis_examples() {
        let al = Alphabet::kzb(1);
        let b: Vec<String> = lyndon_basis(&al, 2).unwrap().iter().map(|w| al.spell(w)).collect();
        assert_eq!(b, vec!["X", "XY", "Y"]);
        let al = Alphabet::kz(1);
        let b: Vec<String> = lyndon_basis(&al, 4).unwrap().iter().map(|w| al.spell(w)).collect();
        assert_eq!(b, vec!["e0", "e0z0", "z0"]);
        let al = Alphabet::kzb(2);
        let c2 = lyndon_basis(&al, 2).unwrap().iter().filter(|w| al.weight(w) == 2).count();
        assert_eq!(c2, 2);
        assert!(lyndon_basis(&al, 0).is_err());
    }

    /// Witt's formula for a free Lie algebra on k letters of equal weight.
    #[test]
    fn witt_dimensions() {
        fn mobius(n: u32) -> i64 {
            let f = crate::roots::prime_factors(n as u64);
            let sq = f.iter().any(|p| (n as u64) % (p * p) == 0);
            if sq {
                0
            } else if f.len() % 2 == 0 {
                1
            } else {
                -1
            }
        }
        for (al, k, per) in [(Alphabet::kzb(1), 2i64, 1u32), (Alphabet::kz(2), 3, 2)] {
            let basis = lyndon_basis(&al, 8).unwrap();
            for len in 1..=8 / per {
                let witt: i64 = (1..=len).filter(|d| len % d == 0).map(|d| mobius(d) * k.pow(len / d)).sum::<i64>() / len as i64;
                let count = basis.iter().filter(|w| w.len() as u32 == len).count() as i64;
                assert_eq!(count, witt);
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let al = Alphabet::kzb(1);
        let x = gen(al, 6, "X");
        let y = gen(al, 6, "Y");
        let xy = x.bracket(&y).unwrap();
        assert_eq!(xy, gen(al, 6, "XY"));
        assert_eq!(y.bracket(&x).unwrap(), xy.scale(&qi(-1)));
        // [Y,[X,Y]] is the Lyndon word XYY up to sign
        let yxy = y.bracket(&xy).unwrap();
        assert_eq!(yxy, gen(al, 6, "XYY").scale(&qi(-1)));
        assert!(x.bracket(&gen(Alphabet::kzb(2), 6, "X")).is_err());
    }

    #[test]
    fn degree_examples() {
        let al = Alphabet::kzb(2);
        let d = gen(al, 6, "t1").degrees().unwrap();
        assert_eq!(d, Degrees { w: 2, m: 2, f: 1, depth: 1 });
        let d = gen(al, 6, "XXY").degrees().unwrap();
        assert_eq!(d, Degrees { w: 3, m: 2, f: 1, depth: 1 });
        let d = gen(al, 6, "Y").degrees().unwrap();
        assert_eq!(d, Degrees { w: 1, m: 2, f: 1, depth: 0 });
        assert_eq!(LieElt::zero(al, 4).degrees(), Err(Error::ZeroElement));
        // [t1, [X, t1]] lives in D^2
        let t1 = gen(al, 8, "t1");
        let x = gen(al, 8, "X");
        let u = t1.bracket(&x.bracket(&t1).unwrap()).unwrap();
        assert_eq!(u.degrees().unwrap().depth, 2);
        // [t0, t1] with t0 derived: depth 2 even though it contains [[X,Y],t1]
        let u = kzb_t0(2, 8).bracket(&t1).unwrap();
        assert_eq!(u.degrees().unwrap().depth, 2);
    }

    #[test]
    fn projection_examples() {
        let al = Alphabet::kzb(3);
        let p = gen(al, 5, "X").project_mod_d2().unwrap();
        assert_eq!(p, PolyQuot::x(QRing, 3, 3));
        let p = gen(al, 5, "XY").project_mod_d2().unwrap();
        for k in 0..3 {
            assert_eq!(p.cols[k], BTreeMap::from([((0, 0), qi(1))]));
        }
        let p = gen(al, 5, "XXY").project_mod_d2().unwrap();
        for k in 0..3 {
            assert_eq!(p.cols[k], BTreeMap::from([((1, 0), qi(1))]));
        }
        let p = kzb_t0(3, 5).project_mod_d2().unwrap();
        assert_eq!(p, PolyQuot::column_unit(QRing, 3, 3, 0));
    }

    #[test]
    fn json_roundtrip() {
        let al = Alphabet::kzb(3);
        let u = gen(al, 6, "XXY").scale(&q(-3, 7)).add(&gen(al, 6, "Xt2")).unwrap();
        let v = LieElt::from_json(&u.to_json()).unwrap();
        assert_eq!(u, v);
        assert_eq!(u.to_json()["terms"][0]["word"], "XXY");
    }

    #[test]
    fn abelianization_kernel_is_depth_positive() {
        // For KZ: Lie words of t-degree ≥ 1 span the kernel of e_ζ ↦ 0.
        // In each graded piece the kernel dimension equals the number of Lyndon
        // words containing a ζ-letter, and e0 alone survives.
        for n in 1..=3u64 {
            let al = Alphabet::kz(n);
            let basis = lyndon_basis(&al, 10).unwrap();
            for wt in (2..=10).step_by(2) {
                let piece: Vec<&Word> = basis.iter().filter(|w| al.weight(w) == wt).collect();
                let rows: Vec<Vec<Q>> = piece
                    .iter()
                    .map(|w| {
                        let img = LieElt::from_terms(al, 10, [((*w).clone(), qi(1))])
                            .unwrap()
                            .map_morphism(Alphabet::kz(n), 10, &|l| {
                                if l == 0 {
                                    LieElt::generator(Alphabet::kz(n), 10, 0)
                                } else {
                                    LieElt::zero(Alphabet::kz(n), 10)
                                }
                            });
                        vec![img.coeff(&[0])]
                    })
                    .collect();
                let rank = crate::linalg::rank(&rows, 1);
                let kernel = piece.len() - rank;
                let with_t = piece.iter().filter(|w| w.iter().any(|&l| l > 0)).count();
                assert_eq!(kernel, with_t);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn antisymmetry_and_jacobi(
            a in arb_lie(Alphabet::kzb(2), 6, 3),
            b in arb_lie(Alphabet::kzb(2), 6, 3),
            c in arb_lie(Alphabet::kzb(2), 6, 3),
        ) {
            prop_assert!(a.bracket(&a).unwrap().is_zero());
            let ab = a.bracket(&b).unwrap();
            prop_assert_eq!(ab.clone(), b.bracket(&a).unwrap().scale(&qi(-1)));
            let j = a.bracket(&b.bracket(&c).unwrap()).unwrap()
                .add(&b.bracket(&c.bracket(&a).unwrap()).unwrap()).unwrap()
                .add(&c.bracket(&a.bracket(&b).unwrap()).unwrap()).unwrap();
            prop_assert!(j.is_zero());
        }

        #[test]
        fn bracket_filtration_compatible(a in arb_lie(Alphabet::kzb(2), 6, 2), b in arb_lie(Alphabet::kzb(2), 6, 2)) {
            let ab = a.bracket(&b).unwrap();
            if !ab.is_zero() {
                let (da, db, dab) = (a.degrees().unwrap(), b.degrees().unwrap(), ab.degrees().unwrap());
                prop_assert!(dab.w >= da.w + db.w);
                prop_assert!(dab.m >= da.m + db.m);
                prop_assert!(dab.f <= da.f + db.f);
                prop_assert!(dab.depth >= da.depth + db.depth);
            }
        }

        #[test]
        fn projection_is_lie_morphism(a in arb_lie(Alphabet::kzb(3), 6, 3), b in arb_lie(Alphabet::kzb(3), 6, 3)) {
            let lhs = a.bracket(&b).unwrap().project_mod_d2().unwrap();
            let rhs = a.project_mod_d2().unwrap().bracket(&b.project_mod_d2().unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn words_roundtrip(a in arb_lie(Alphabet::kz(2), 8, 4)) {
            let back = LieElt::from_word_poly(a.alphabet, a.cutoff, &a.expand()).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
