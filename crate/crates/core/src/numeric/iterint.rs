//! Iterated integrals of logarithmic 1-forms along polylines by composite
//! Chebyshev quadrature, with mortar-board regularization at tangential
//! endpoints, and Chen transport.
//!
//! Conventions: ∫_γ f_1⋯f_n integrates over t_1 ≤ ⋯ ≤ t_n, so the last
//! letter is outermost. The transport series is G(γ) = Σ_w (∫_γ w)·w and
//! satisfies G(αβ) = G(α)G(β).

use super::bigc::{BigC, CRing};
pub use super::taylor::TForm as Form;
use crate::freelie::{Alphabet, AlphabetKind, Word};
use crate::ncseries::Ncs;
use crate::{Error, Result};
use rug::{Complex, Float};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

const GUARD: u32 = 32;
const SAME: f64 = 1e-40;

/// Tangent vector at an endpoint that sits on a puncture.
#[derive(Debug, Clone, PartialEq)]
pub struct Tangent {
    pub direction: BigC,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathSpec {
    pub vertices: Vec<BigC>,
    pub start: Option<Tangent>,
    pub end: Option<Tangent>,
}

impl PathSpec {
    pub fn polyline(vertices: Vec<BigC>) -> PathSpec {
        PathSpec { vertices, start: None, end: None }
    }

    /// The straight path from ∂/∂t at 0 to −∂/∂t at 1.
    pub fn dch(prec: u32) -> PathSpec {
        PathSpec {
            vertices: vec![BigC::zero(prec), BigC::one(prec)],
            start: Some(Tangent { direction: BigC::one(prec) }),
            end: Some(Tangent { direction: BigC::from_i64(-1, prec) }),
        }
    }

    pub fn reversed(&self) -> PathSpec {
        PathSpec {
            vertices: self.vertices.iter().rev().cloned().collect(),
            start: self.end.clone(),
            end: self.start.clone(),
        }
    }

    /// Path composition αβ (α first); the shared vertex must not be tangential.
    pub fn compose(&self, o: &PathSpec) -> Result<PathSpec> {
        if self.end.is_some() || o.start.is_some() || self.vertices.last().unwrap().dist(&o.vertices[0]) > 1e-30 {
            return Err(Error::InvalidArgument("paths do not compose".into()));
        }
        let mut v = self.vertices.clone();
        v.extend(o.vertices[1..].iter().cloned());
        Ok(PathSpec { vertices: v, start: self.start.clone(), end: o.end.clone() })
    }
}

/// Chebyshev–Lobatto nodes on [−1, 1] and the spectral integration matrix.
struct Cheb {
    nodes: Vec<Float>,
    s: Vec<Vec<Float>>,
}

fn cheb(n: usize, prec: u32) -> Arc<Cheb> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<Cheb>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&(n, prec)) {
        return c.clone();
    }
    let c = Arc::new(build_cheb(n, prec));
    cache.lock().unwrap().insert((n, prec), c.clone());
    c
}

fn build_cheb(n: usize, prec: u32) -> Cheb {
    let wp = prec + 16;
    let pi = Float::with_val(wp, rug::float::Constant::Pi);
    let deg = n - 1;
    // T[k][j] = T_k(x_j), x_j = −cos(πj/deg), k = 0..=n
    let theta: Vec<Float> = (0..n).map(|j| Float::with_val(wp, &pi * j as u32) / deg as u32).collect();
    let nodes: Vec<Float> = theta.iter().map(|t| -Float::with_val(wp, t.cos_ref())).collect();
    let t: Vec<Vec<Float>> = (0..=n)
        .map(|k| {
            theta
                .iter()
                .map(|th| {
                    let c = Float::with_val(wp, Float::with_val(wp, th * k as u32).cos_ref());
                    if k % 2 == 1 {
                        -c
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let mut s = vec![vec![Float::new(wp); n]; n];
    for j in 0..n {
        // interpolant of e_j
        let wj = if j == 0 || j == deg { 0.5 } else { 1.0 };
        let a: Vec<Float> = (0..n)
            .map(|k| {
                let hk = if k == 0 || k == deg { 0.5 } else { 1.0 };
                Float::with_val(wp, &t[k][j] * (2.0 * wj * hk)) / deg as u32
            })
            .collect();
        // antiderivative coefficients
        let mut b = vec![Float::new(wp); n + 1];
        b[1] += &a[0];
        if n > 1 {
            b[2] += Float::with_val(wp, &a[1] / 4u32);
        }
        for k in 2..n {
            b[k + 1] += Float::with_val(wp, &a[k] / (2 * (k + 1)) as u32);
            b[k - 1] -= Float::with_val(wp, &a[k] / (2 * (k - 1)) as u32);
        }
        for i in 0..n {
            let mut acc = Float::new(wp);
            for (k, bk) in b.iter().enumerate() {
                let tm1 = if k % 2 == 0 { 1 } else { -1 };
                acc += Float::with_val(wp, bk * Float::with_val(wp, &t[k][i] - tm1));
            }
            s[i][j] = Float::with_val(prec, acc);
        }
    }
    Cheb { nodes: nodes.into_iter().map(|x| Float::with_val(prec, x)).collect(), s }
}

/// Panels accept length ≤ KAPPA·(distance from their midpoint to the nearest pole).
const KAPPA: f64 = 0.7;

fn node_count(prec: u32) -> usize {
    let r = 2.0 / KAPPA;
    let rho = r + (r * r - 1.0).sqrt();
    ((prec as f64) * std::f64::consts::LN_2 / rho.ln()).ceil() as usize + 4
}

/// Graded panels on the half segment from `a` to `m`, parametrized from `a`
/// so that poles close to `a` stay resolvable.
fn half_panels(a: &BigC, m: &BigC, poles: &[BigC], kappa: f64) -> Result<Vec<(f64, f64)>> {
    let len = m.dist(a);
    let dir = m.sub(a);
    let prec = a.prec();
    let mut out = Vec::new();
    let mut stack = vec![(0.0f64, 1.0f64)];
    while let Some((u, v)) = stack.pop() {
        let mid = a.add(&dir.mul(&BigC::from_f64((u + v) / 2.0, 0.0, prec)));
        let d = poles.iter().map(|p| p.dist(&mid)).fold(f64::INFINITY, f64::min);
        let w = (u + v) / 2.0;
        if (v - u) * len <= kappa * d {
            out.push((u, v));
        } else if w <= u || w >= v || (v - u) * len < 1e-250 {
            return Err(Error::InteriorSingularity(format!("path passes through a pole near {mid}")));
        } else {
            stack.push((w, v));
            stack.push((u, w));
        }
    }
    Ok(out)
}

/// Panels of the segment a → b as ordered pairs of endpoints.
fn panels(a: &BigC, b: &BigC, poles: &[BigC], kappa: f64) -> Result<Vec<(BigC, BigC)>> {
    let prec = a.prec();
    let m = a.add(b).div_i64(2);
    let at = |base: &BigC, s: f64| base.add(&m.sub(base).mul(&BigC::from_f64(s, 0.0, prec)));
    let mut out: Vec<(BigC, BigC)> = half_panels(a, &m, poles, kappa)?.into_iter().map(|(u, v)| (at(a, u), at(a, v))).collect();
    let mut back = half_panels(b, &m, poles, kappa)?;
    back.reverse();
    out.extend(back.into_iter().map(|(u, v)| (at(b, v), at(b, u))));
    Ok(out)
}

/// Words as sequences of form indices; integrals of a prefix-closed family.
type FWord = Vec<usize>;

fn prefix_closure(words: &[FWord]) -> Vec<FWord> {
    let mut set: BTreeSet<FWord> = BTreeSet::new();
    for w in words {
        for k in 1..=w.len() {
            set.insert(w[..k].to_vec());
        }
    }
    let mut v: Vec<FWord> = set.into_iter().collect();
    v.sort_by_key(|w| w.len());
    v
}

/// Plain iterated integrals between the actual (possibly δ-shifted) endpoints.
fn raw_integrals(
    vertices: &[BigC],
    forms: &[Form],
    words: &[FWord],
    kappa: f64,
    wp: u32,
) -> Result<HashMap<FWord, BigC>> {
    let family = prefix_closure(words);
    let index: HashMap<&FWord, usize> = family.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let parent: Vec<Option<usize>> =
        family.iter().map(|w| if w.len() == 1 { None } else { Some(index[&w[..w.len() - 1].to_vec()]) }).collect();
    let used: BTreeSet<usize> = family.iter().map(|w| *w.last().unwrap()).collect();
    let poles: Vec<BigC> = used.iter().map(|&i| forms[i].pole.clone()).collect();
    let n = node_count(wp);
    let ch = cheb(n, wp);
    let mut vals: Vec<BigC> = vec![BigC::zero(wp); family.len()];
    for seg in vertices.windows(2) {
        let (a, b) = (&seg[0], &seg[1]);
        for (u, v) in panels(a, b, &poles, kappa)? {
            let half = v.sub(&u).div_i64(2);
            let mid = u.add(&v).div_i64(2);
            let pts: Vec<BigC> = ch.nodes.iter().map(|x| mid.add(&half.mul_f(x))).collect();
            // f_i(t)·dt/dx at every node
            let fvals: HashMap<usize, Vec<BigC>> = used
                .iter()
                .map(|&i| {
                    let f = &forms[i];
                    let sh = f.scale.mul(&half);
                    (i, pts.iter().map(|t| sh.div(&t.sub(&f.pole))).collect())
                })
                .collect();
            let mut node_vals: Vec<Vec<BigC>> = Vec::with_capacity(family.len());
            for (wi, w) in family.iter().enumerate() {
                let f = &fvals[w.last().unwrap()];
                let integrand: Vec<BigC> = match parent[wi] {
                    None => f.clone(),
                    Some(p) => node_vals[p].iter().zip(f).map(|(x, y)| x.mul(y)).collect(),
                };
                let mut out = Vec::with_capacity(n);
                for i in 0..n {
                    let mut re = Float::with_val(wp, vals[wi].re());
                    let mut im = Float::with_val(wp, vals[wi].im());
                    for (sij, g) in ch.s[i].iter().zip(&integrand) {
                        re += Float::with_val(wp, sij * g.re());
                        im += Float::with_val(wp, sij * g.im());
                    }
                    out.push(BigC(Complex::with_val(wp, (re, im))));
                }
                node_vals.push(out);
            }
            for (wi, nv) in node_vals.into_iter().enumerate() {
                vals[wi] = nv.into_iter().last().unwrap();
            }
        }
    }
    Ok(family.into_iter().zip(vals).collect())
}

/// Endpoint data resolved against the forms.
struct Ends {
    vertices: Vec<BigC>,
    start_anchor: Option<BigC>,
    end_anchor: Option<BigC>,
}

fn resolve(path: &PathSpec, forms: &[Form], word: &[usize], delta: &Float) -> Result<Ends> {
    let wp = delta.prec();
    if path.vertices.len() < 2 {
        return Err(Error::InvalidArgument("a path needs two vertices".into()));
    }
    let on_pole = |p: &BigC| word.iter().any(|&i| forms[i].pole.dist(p) <= SAME);
    let mut vertices: Vec<BigC> = path.vertices.iter().map(|v| v.with_prec(wp)).collect();
    let d = BigC(Complex::with_val(wp, (delta, 0)));
    let last = vertices.len() - 1;
    for v in &vertices[1..last] {
        if on_pole(v) {
            return Err(Error::InteriorSingularity(format!("interior vertex {v} is a pole")));
        }
    }
    let mut start_anchor = None;
    let mut end_anchor = None;
    let s0 = vertices[0].clone();
    if on_pole(&s0) {
        let first_singular = word.first().is_some_and(|&i| forms[i].pole.dist(&s0) <= SAME);
        let dir = match &path.start {
            Some(t) => t.direction.with_prec(wp),
            None if !first_singular => vertices[1].sub(&s0).div(&BigC::from_f64(vertices[1].dist(&s0), 0.0, wp)),
            None => return Err(Error::MissingRegularization),
        };
        vertices[0] = s0.add(&dir.mul(&d));
        start_anchor = Some(s0);
    }
    let e0 = vertices[last].clone();
    if on_pole(&e0) {
        let last_singular = word.last().is_some_and(|&i| forms[i].pole.dist(&e0) <= SAME);
        let dir = match &path.end {
            Some(t) => t.direction.with_prec(wp),
            None if !last_singular => vertices[last - 1].sub(&e0).div(&BigC::from_f64(vertices[last - 1].dist(&e0), 0.0, wp)),
            None => return Err(Error::MissingRegularization),
        };
        vertices[last] = e0.add(&dir.mul(&d));
        end_anchor = Some(e0);
    }
    Ok(Ends { vertices, start_anchor, end_anchor })
}

fn residue(f: &Form, anchor: &Option<BigC>) -> Option<BigC> {
    match anchor {
        Some(a) if f.pole.dist(a) <= SAME => Some(f.scale.clone()),
        _ => None,
    }
}

/// Mortar-board combination of plain integrals into regularized values for
/// every word in `words`.
fn regularize(
    forms: &[Form],
    words: &[FWord],
    ends: &Ends,
    raw: &HashMap<FWord, BigC>,
    delta: &Float,
) -> Vec<BigC> {
    let wp = delta.prec();
    let ld = BigC(Complex::with_val(wp, (Float::with_val(wp, delta.ln_ref()), 0)));
    let powers = |x: &BigC, n: usize| -> Vec<BigC> {
        // x^j / j!
        let mut v = vec![BigC::one(wp)];
        for j in 1..=n {
            v.push(v[j - 1].mul(x).div_i64(j as i64));
        }
        v
    };
    words
        .iter()
        .map(|w| {
            let n = w.len();
            let pa = powers(&ld, n);
            let pb = powers(&ld.neg(), n);
            let mut acc = BigC::zero(wp);
            let mut a = BigC::one(wp);
            for j in 0..=n {
                if j > 0 {
                    match residue(&forms[w[j - 1]], &ends.start_anchor) {
                        Some(r) => a = a.mul(&r),
                        None => break,
                    }
                }
                let mut b = BigC::one(wp);
                for k in 0..=(n - j) {
                    if k > 0 {
                        match residue(&forms[w[n - k]], &ends.end_anchor) {
                            Some(r) => b = b.mul(&r),
                            None => break,
                        }
                    }
                    let inner = if j + k == n { BigC::one(wp) } else { raw[&w[j..n - k].to_vec()].clone() };
                    acc = acc.add(&a.mul(&pa[j]).mul(&inner).mul(&b).mul(&pb[k]));
                }
            }
            acc
        })
        .collect()
}

/// Every contiguous subword, so that regularization finds all it needs.
fn subwords(words: &[FWord]) -> Vec<FWord> {
    let mut set = BTreeSet::new();
    for w in words {
        for i in 0..w.len() {
            set.insert(w[i..].to_vec());
        }
    }
    set.into_iter().collect()
}

/// δ = 2^{16−p}: the neglected O(δ log^n δ) sits far below 2^{−p/2} while
/// the shifted endpoints stay representable at the working precision.
pub fn default_delta(prec: u32) -> Float {
    Float::with_val(prec + GUARD, Float::i_exp(1, 16 - prec as i32))
}

/// Regularized integrals of several words along one path.
pub fn regularized_many(path: &PathSpec, forms: &[Form], words: &[FWord], delta: &Float, kappa: f64) -> Result<Vec<BigC>> {
    let all: Vec<usize> = words.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    // anchors depend only on which poles occur, so resolve against all letters
    let ends = resolve(path, forms, &all, delta)?;
    for w in words {
        if w.is_empty() {
            continue;
        }
        if ends.start_anchor.is_some() && path.start.is_none() && residue(&forms[w[0]], &ends.start_anchor).is_some() {
            return Err(Error::MissingRegularization);
        }
        if ends.end_anchor.is_some() && path.end.is_none() && residue(&forms[*w.last().unwrap()], &ends.end_anchor).is_some() {
            return Err(Error::MissingRegularization);
        }
    }
    let raw = raw_integrals(&ends.vertices, forms, &subwords(words), kappa, delta.prec())?;
    Ok(regularize(forms, words, &ends, &raw, delta))
}

#[derive(Debug, Clone)]
pub struct IterIntResult {
    pub value: BigC,
    /// Ten times the change under halving δ and refining the panels, plus
    /// a rounding floor.
    pub error: f64,
}

/// The (regularized) iterated integral of `word` (indices into `forms`).
pub fn iterint(path: &PathSpec, forms: &[Form], word: &[usize], prec: u32) -> Result<IterIntResult> {
    if word.is_empty() {
        return Err(Error::InvalidArgument("empty word".into()));
    }
    let delta = default_delta(prec);
    let v = regularized_many(path, forms, &[word.to_vec()], &delta, KAPPA)?.pop().unwrap();
    let delta2 = Float::with_val(delta.prec(), &delta / 2u32);
    let v2 = regularized_many(path, forms, &[word.to_vec()], &delta2, KAPPA / 2.0)?.pop().unwrap();
    let floor = 2f64.powi(8 - prec as i32);
    Ok(IterIntResult { error: 10.0 * v.dist(&v2) + floor, value: v.with_prec(prec) })
}

/// Regularized value only, with the default δ.
pub fn regularized_iterint(path: &PathSpec, forms: &[Form], word: &[usize], prec: u32) -> Result<BigC> {
    Ok(regularized_many(path, forms, &[word.to_vec()], &default_delta(prec), KAPPA)?.pop().unwrap().with_prec(prec))
}

/// The second regularization route: plain integrals at several δ, fitted by
/// a polynomial in log δ whose constant term is the regularized value.
pub fn regularized_by_fit(path: &PathSpec, forms: &[Form], word: &[usize], prec: u32) -> Result<BigC> {
    let wp = prec + GUARD;
    let n = word.len();
    let base = prec as i32 / 2 + 8;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 0..=n as i32 {
        let e = base + 24 * i;
        // the shifted endpoints must stay distinct from the poles
        let dp = wp + e as u32;
        let d = Float::with_val(dp, Float::i_exp(1, -e));
        let ends = resolve(path, forms, word, &d)?;
        let raw = raw_integrals(&ends.vertices, forms, &[word.to_vec()], KAPPA, dp)?;
        xs.push(BigC(Complex::with_val(wp, (Float::with_val(wp, d.ln_ref()), 0))));
        ys.push(raw[&word.to_vec()].with_prec(wp));
    }
    // Lagrange interpolation evaluated at log δ = 0
    let mut acc = BigC::zero(wp);
    for i in 0..xs.len() {
        let mut li = BigC::one(wp);
        for j in 0..xs.len() {
            if i != j {
                li = li.mul(&xs[j].div(&xs[j].sub(&xs[i])));
            }
        }
        acc = acc.add(&ys[i].mul(&li));
    }
    Ok(acc.with_prec(prec))
}

/// Forms of the KZ alphabet: letter 0 is dt/t, letter 1+k is dt/(t − ζ^k).
pub fn kz_forms(n: u64, prec: u32) -> Vec<Form> {
    let one = BigC::one(prec);
    let mut v = vec![Form { pole: BigC::zero(prec), scale: one.clone() }];
    for k in 0..n {
        v.push(Form { pole: BigC::root_of_unity(k, n, prec), scale: one.clone() });
    }
    v
}

/// G(γ) = Σ_w (∫_γ w)·w over the KZ alphabet, truncated at the cutoff.
pub fn transport(path: &PathSpec, n: u64, cutoff: u32, prec: u32) -> Result<Ncs<CRing>> {
    let al = Alphabet::kz(n);
    let words = all_words(&al, cutoff, None);
    transport_words(path, n, cutoff, &words, prec)
}

fn all_words(al: &Alphabet, cutoff: u32, max_depth: Option<u32>) -> Vec<Word> {
    let mut out = Vec::new();
    let mut frontier: Vec<Word> = vec![vec![]];
    while let Some(w) = frontier.pop() {
        for l in al.letters() {
            let mut x = w.clone();
            x.push(l);
            let depth = x.iter().filter(|&&c| al.degrees(c).t > 0).count() as u32;
            if al.weight(&x) <= cutoff && max_depth.map_or(true, |d| depth <= d) {
                out.push(x.clone());
                frontier.push(x);
            }
        }
    }
    out.sort();
    out
}

fn transport_words(path: &PathSpec, n: u64, cutoff: u32, words: &[Word], prec: u32) -> Result<Ncs<CRing>> {
    let wp = prec + GUARD;
    let forms = kz_forms(n, wp);
    let fw: Vec<FWord> = words.iter().map(|w| w.iter().map(|&l| l as usize).collect()).collect();
    let vals = regularized_many(path, &forms, &fw, &default_delta(prec), KAPPA)?;
    let ring = CRing { prec };
    let mut out = Ncs::one(ring, Alphabet::kz(n), cutoff);
    for (w, v) in words.iter().zip(vals) {
        out.add_term(w.clone(), v.with_prec(prec));
    }
    Ok(out)
}

/// G(γ) modulo words with two or more ζ-letters, for words of at most
/// `max_len` letters.
pub fn path_series_depth1(path: &PathSpec, n: u64, max_len: u32, prec: u32) -> Result<Ncs<CRing>> {
    let al = Alphabet::kz(n);
    debug_assert_eq!(al.kind, AlphabetKind::Kz);
    let words = all_words(&al, 2 * max_len, Some(1));
    transport_words(path, n, 2 * max_len, &words, prec)
}

/// T(dch) = G(dch^{-1}) modulo D², words of at most `max_len` letters.
pub fn dch_transport_depth1(n: u64, max_len: u32, prec: u32) -> Result<Ncs<CRing>> {
    path_series_depth1(&PathSpec::dch(prec).reversed(), n, max_len, prec)
}

/// Transport for a single matrix-valued form list, used by callers that
/// need BTreeMap output keyed by words.
pub fn word_integrals(path: &PathSpec, forms: &[Form], words: &[FWord], prec: u32) -> Result<BTreeMap<FWord, BigC>> {
    let vals = regularized_many(path, forms, words, &default_delta(prec), KAPPA)?;
    Ok(words.iter().cloned().zip(vals.into_iter().map(|v| v.with_prec(prec))).collect())
}

/// All interleavings of two words, with multiplicity.
pub fn shuffle(a: &[usize], b: &[usize]) -> Vec<FWord> {
    if a.is_empty() {
        return vec![b.to_vec()];
    }
    if b.is_empty() {
        return vec![a.to_vec()];
    }
    let mut out = Vec::new();
    for mut w in shuffle(&a[1..], b) {
        w.insert(0, a[0]);
        out.push(w);
    }
    for mut w in shuffle(a, &b[1..]) {
        w.insert(0, b[0]);
        out.push(w);
    }
    out
}

#[derive(Debug, Clone, Default)]
pub struct ChenReport {
    pub instances: usize,
    pub shuffle: f64,
    pub inversion: f64,
    pub composition: f64,
}

impl ChenReport {
    pub fn max(&self) -> f64 {
        self.shuffle.max(self.inversion).max(self.composition)
    }
}

fn random_path(rng: &mut impl rand::Rng, poles: &[BigC], prec: u32) -> PathSpec {
    let far = |p: &BigC, d: f64| poles.iter().all(|q| q.dist(p) > d);
    loop {
        let k = rng.gen_range(2..=4);
        let v: Vec<BigC> = (0..k).map(|_| BigC::from_f64(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), prec)).collect();
        // keep every segment a fixed distance from the poles
        let ok = v.windows(2).all(|s| (0..=32).all(|i| far(&s[0].add(&s[1].sub(&s[0]).mul(&BigC::from_f64(i as f64 / 32.0, 0.0, prec))), 0.2)));
        if ok {
            return PathSpec::polyline(v);
        }
    }
}

/// Shuffle, inversion and path-composition identities on random polylines
/// and random KZ words, N ∈ {1, 2, 3}; returns the largest residual of each.
pub fn chen_properties(instances: usize, seed: u64, prec: u32) -> Result<ChenReport> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut rep = ChenReport { instances, ..Default::default() };
    for _ in 0..instances {
        let n = rng.gen_range(1..=3u64);
        let forms = kz_forms(n, prec + GUARD);
        let poles: Vec<BigC> = forms.iter().map(|f| f.pole.clone()).collect();
        let path = random_path(&mut rng, &poles, prec);
        let mut word = |len: usize| -> FWord { (0..len).map(|_| rng.gen_range(0..=n as usize)).collect() };
        let (w1, w2, w3) = (word(1), word(2), word(3));
        // shuffle
        let sh = shuffle(&w1, &w2);
        let mut fam = vec![w1.clone(), w2.clone(), w3.clone()];
        fam.extend(sh.iter().cloned());
        let rev3: FWord = w3.iter().rev().copied().collect();
        fam.push(rev3.clone());
        for r in 1..3 {
            fam.push(w3[..r].to_vec());
            fam.push(w3[r..].to_vec());
        }
        let v = word_integrals(&path, &forms, &fam, prec)?;
        let lhs = v[&w1].mul(&v[&w2]);
        let rhs = sh.iter().fold(BigC::zero(prec), |a, w| a.add(&v[w]));
        rep.shuffle = rep.shuffle.max(lhs.dist(&rhs));
        // inversion
        let inv = word_integrals(&path.reversed(), &forms, &[w3.clone()], prec)?;
        let sign = if w3.len() % 2 == 0 { 1 } else { -1 };
        rep.inversion = rep.inversion.max(inv[&w3].dist(&v[&rev3].mul_i64(sign)));
        // composition at a random point of a random segment
        let k = rng.gen_range(0..path.vertices.len() - 1);
        let s = rng.gen_range(0.2..0.8);
        let (a, b) = (&path.vertices[k], &path.vertices[k + 1]);
        let cut = a.add(&b.sub(a).mul(&BigC::from_f64(s, 0.0, prec)));
        let mut va = path.vertices[..=k].to_vec();
        va.push(cut.clone());
        let mut vb = vec![cut];
        vb.extend(path.vertices[k + 1..].iter().cloned());
        let pieces: Vec<FWord> = (0..=3).flat_map(|r| [w3[..r].to_vec(), w3[r..].to_vec()]).filter(|w| !w.is_empty()).collect();
        let ia = word_integrals(&PathSpec::polyline(va), &forms, &pieces, prec)?;
        let ib = word_integrals(&PathSpec::polyline(vb), &forms, &pieces, prec)?;
        let get = |m: &BTreeMap<FWord, BigC>, w: &[usize]| if w.is_empty() { BigC::one(prec) } else { m[&w.to_vec()].clone() };
        let comp = (0..=3).fold(BigC::zero(prec), |acc, r| acc.add(&get(&ia, &w3[..r]).mul(&get(&ib, &w3[r..]))));
        rep.composition = rep.composition.max(comp.dist(&v[&w3]));
    }
    Ok(rep)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::li;
    use crate::Root;
    use rug::ops::Pow;

    fn c(re: f64, im: f64) -> BigC {
        BigC::from_f64(re, im, 128)
    }

    #[test]
    fn cheb_integrates_polynomials() {
        let ch = cheb(12, 128);
        // ∫_{-1}^{x} 3t² dt = x³ + 1
        for (i, x) in ch.nodes.iter().enumerate() {
            let mut acc = Float::new(128);
            for (s, y) in ch.s[i].iter().zip(&ch.nodes) {
                acc += Float::with_val(128, s * Float::with_val(128, y.square_ref())) * 3u32;
            }
            let expect = Float::with_val(128, x.clone().pow(3u32)) + 1u32;
            assert!((acc - expect).abs() < 1e-35);
        }
    }

    #[test]
    fn simple_integrals() {
        let p = 128;
        let forms = vec![Form { pole: c(0.0, 0.0), scale: c(1.0, 0.0) }];
        let path = PathSpec::polyline(vec![c(1.0, 0.0), c(0.0, 2.0), c(-1.0, 0.5)]);
        let v = iterint(&path, &forms, &[0], p).unwrap();
        let expect = c(-1.0, 0.5).ln();
        assert!(v.value.dist(&expect) < 1e-30, "{:?}", v.value);
        let v2 = iterint(&path, &forms, &[0, 0], p).unwrap();
        assert!(v2.value.dist(&expect.mul(&expect).div_i64(2)) < 1e-30);
        assert!(v2.error < 1e-25);
    }

    #[test]
    fn log_variation_example() {
        // ∫ from λ∂/∂z at 0 to Q of dz/z is log Q − log λ
        let p = 128;
        let forms = vec![Form { pole: c(0.0, 0.0), scale: c(1.0, 0.0) }];
        for (lam, q) in [(1.0, 2.0), (2.0, 2.0), (0.5, 3.0)] {
            let path = PathSpec {
                vertices: vec![c(0.0, 0.0), c(q, 0.0)],
                start: Some(Tangent { direction: c(lam, 0.0) }),
                end: None,
            };
            let v = regularized_iterint(&path, &forms, &[0], p).unwrap();
            assert!((v.re_f64() - (q.ln() - lam.ln())).abs() < 1e-15);
        }
        let no_tangent = PathSpec::polyline(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(regularized_iterint(&no_tangent, &forms, &[0], p), Err(Error::MissingRegularization)));
    }

    #[test]
    fn dch_depth_one() {
        let p = 128;
        let t = dch_transport_depth1(2, 3, p).unwrap();
        for k in 0..2u64 {
            for m in 0..=2u32 {
                let mut w = vec![0u8; m as usize];
                w.push(1 + k as u8);
                let got = t.coeff(&w);
                let r = Root::new(k as i64, 2);
                if m == 0 {
                    continue;
                }
                let sign = if m % 2 == 0 { 1 } else { -1 };
                let expect = li(m + 1, r.conj(), p).unwrap().mul_i64(sign);
                assert!(got.dist(&expect) < 1e-12, "m={m} k={k}: {got} vs {expect}");
            }
        }
    }

    #[test]
    fn chen_identities() {
        let r = chen_properties(6, 7, 96).unwrap();
        assert!(r.max() < 1e-15, "{r:?}");
        assert_eq!(shuffle(&[1], &[2, 3]).len(), 3);
    }

    #[test]
    fn refinement_within_estimate() {
        let p = 128;
        let forms = kz_forms(2, p + 32);
        let path = PathSpec::dch(p);
        let w = [0usize, 2];
        let r = iterint(&path, &forms, &w, p).unwrap();
        let delta = Float::with_val(p + 32, default_delta(p) / 4u32);
        let fine = regularized_many(&path, &forms, &[w.to_vec()], &delta, KAPPA / 2.0).unwrap().pop().unwrap();
        assert!(r.value.dist(&fine) < r.error, "{} vs {}", r.value.dist(&fine), r.error);
    }

    #[test]
    fn fit_route_agrees() {
        let p = 128;
        let forms = kz_forms(1, p + 32);
        let path = PathSpec::dch(p);
        for w in [vec![0usize, 1], vec![0, 1, 1]] {
            let a = regularized_iterint(&path, &forms, &w, p).unwrap();
            let b = regularized_by_fit(&path, &forms, &w, p).unwrap();
            assert!(a.dist(&b) < 1e-12, "{w:?}: {a} vs {b}");
        }
    }
}
