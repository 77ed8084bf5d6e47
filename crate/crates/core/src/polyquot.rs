//! The mod-D² model of the KZB polylogarithm quotient.
//!
//! An element is (a, b, f) standing for aX + bY + Σ_k f_k(X,Y)·t_k, where
//! each column f_k is a commutative polynomial: modulo D² the adjoint actions
//! of X and Y on the t-columns commute.

use crate::freelie::{AlphabetKind, LieElt};
use crate::linalg::rref;
use crate::rational::{bern_coeffs, qi};
use crate::ring::{QRing, Ring};
use crate::symbolic::{SymPoly, SymRing};
use crate::{Error, Result, Root, Q};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

/// Commutative polynomial in X, Y keyed by exponents (i, j) of X^i Y^j.
pub type Col<E> = BTreeMap<(u32, u32), E>;

#[derive(Debug, Clone, PartialEq)]
pub struct PolyQuot<R: Ring> {
    pub ring: R,
    pub n: u64,
    /// Columns keep total degree ≤ max_deg.
    pub max_deg: u32,
    pub a: R::E,
    pub b: R::E,
    pub cols: Vec<Col<R::E>>,
}

fn col_add_term<R: Ring>(ring: &R, col: &mut Col<R::E>, key: (u32, u32), c: R::E) {
    if ring.is_zero(&c) {
        return;
    }
    let sum = match col.get(&key) {
        Some(x) => ring.add(x, &c),
        None => c,
    };
    if ring.is_zero(&sum) {
        col.remove(&key);
    } else {
        col.insert(key, sum);
    }
}

impl<R: Ring> PolyQuot<R> {
    pub fn zero(ring: R, n: u64, max_deg: u32) -> Self {
        PolyQuot { a: ring.zero(), b: ring.zero(), cols: vec![Col::new(); n as usize], ring, n, max_deg }
    }

    pub fn x(ring: R, n: u64, max_deg: u32) -> Self {
        let mut p = Self::zero(ring, n, max_deg);
        p.a = p.ring.one();
        p
    }

    pub fn y(ring: R, n: u64, max_deg: u32) -> Self {
        let mut p = Self::zero(ring, n, max_deg);
        p.b = p.ring.one();
        p
    }

    pub fn column_unit(ring: R, n: u64, max_deg: u32, k: u64) -> Self {
        let one = ring.one();
        Self::column_monomial(ring, n, max_deg, k, (0, 0), one)
    }

    pub fn column_monomial(ring: R, n: u64, max_deg: u32, k: u64, exps: (u32, u32), c: R::E) -> Self {
        let mut p = Self::zero(ring, n, max_deg);
        if exps.0 + exps.1 <= max_deg {
            let r = p.ring.clone();
            col_add_term(&r, &mut p.cols[(k % n) as usize], exps, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.a) && self.ring.is_zero(&self.b) && self.cols.iter().all(|c| c.is_empty())
    }

    pub fn is_column_only(&self) -> bool {
        self.ring.is_zero(&self.a) && self.ring.is_zero(&self.b)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.n, self.max_deg), (o.n, o.max_deg), "incompatible mod-D² models");
        let mut out = self.clone();
        out.a = self.ring.add(&self.a, &o.a);
        out.b = self.ring.add(&self.b, &o.b);
        for (k, col) in o.cols.iter().enumerate() {
            for (e, c) in col {
                col_add_term(&self.ring, &mut out.cols[k], *e, c.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &R::E) -> Self {
        let r = &self.ring;
        let mut out = Self::zero(r.clone(), self.n, self.max_deg);
        out.a = r.mul(&self.a, c);
        out.b = r.mul(&self.b, c);
        for (k, col) in self.cols.iter().enumerate() {
            for (e, x) in col {
                col_add_term(r, &mut out.cols[k], *e, r.mul(x, c));
            }
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&self.ring.neg(&self.ring.one())))
    }

    /// (aX + bY)·f truncated at max_deg.
    fn linear_times(&self, a: &R::E, b: &R::E, f: &Col<R::E>) -> Col<R::E> {
        let r = &self.ring;
        let mut out = Col::new();
        for (&(i, j), c) in f {
            if i + j < self.max_deg {
                col_add_term(r, &mut out, (i + 1, j), r.mul(a, c));
                col_add_term(r, &mut out, (i, j + 1), r.mul(b, c));
            }
        }
        out
    }

    /// [(a,b,f),(a',b',f')] = (0, 0, g), g_k = (ab'−a'b) + (aX+bY)f'_k − (a'X+b'Y)f_k.
    pub fn bracket(&self, o: &Self) -> Self {
        assert_eq!((self.n, self.max_deg), (o.n, o.max_deg), "incompatible mod-D² models");
        let r = &self.ring;
        let mut out = Self::zero(r.clone(), self.n, self.max_deg);
        let det = r.sub(&r.mul(&self.a, &o.b), &r.mul(&o.a, &self.b));
        for k in 0..self.n as usize {
            let col = &mut out.cols[k];
            col_add_term(r, col, (0, 0), det.clone());
            for (e, c) in self.linear_times(&self.a, &self.b, &o.cols[k]) {
                col_add_term(r, col, e, c);
            }
            for (e, c) in self.linear_times(&o.a, &o.b, &self.cols[k]) {
                col_add_term(r, col, e, r.neg(&c));
            }
        }
        out
    }

    /// All coordinates (a, b, then columns in (k, i, j) order up to max_deg).
    pub fn coordinates(&self) -> Vec<R::E> {
        let mut v = vec![self.a.clone(), self.b.clone()];
        v.extend(self.column_coordinates());
        v
    }

    pub fn column_coordinates(&self) -> Vec<R::E> {
        let mut v = Vec::new();
        for col in &self.cols {
            for d in 0..=self.max_deg {
                for i in (0..=d).rev() {
                    v.push(col.get(&(i, d - i)).cloned().unwrap_or_else(|| self.ring.zero()));
                }
            }
        }
        v
    }

    pub fn render_col(&self, k: usize) -> String {
        render_col(&self.ring, &self.cols[k])
    }

    pub fn with_ring<S: Ring>(&self, ring: S, f: &dyn Fn(&R::E) -> S::E) -> PolyQuot<S> {
        let mut out = PolyQuot::zero(ring.clone(), self.n, self.max_deg);
        out.a = f(&self.a);
        out.b = f(&self.b);
        for (k, col) in self.cols.iter().enumerate() {
            for (e, c) in col {
                col_add_term(&ring, &mut out.cols[k], *e, f(c));
            }
        }
        out
    }
}

pub fn render_col<R: Ring>(ring: &R, col: &Col<R::E>) -> String {
    if col.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    // descending total degree, then descending X power, for readability
    let mut keys: Vec<&(u32, u32)> = col.keys().collect();
    keys.sort_by_key(|&&(i, j)| (std::cmp::Reverse(i + j), std::cmp::Reverse(i)));
    for &&(i, j) in &keys {
        let c = ring.render(&col[&(i, j)]);
        let mut mono = Vec::new();
        for (v, e) in [("X", i), ("Y", j)] {
            match e {
                0 => {}
                1 => mono.push(v.to_string()),
                _ => mono.push(format!("{v}^{e}")),
            }
        }
        let m = mono.join("*");
        parts.push(match (c.as_str(), m.is_empty()) {
            (_, true) => c,
            ("1", false) => m,
            ("-1", false) => format!("-{m}"),
            _ if c.contains(' ') => format!("({c})*{m}"),
            _ => format!("{c}*{m}"),
        });
    }
    parts.join(" + ")
}

/// An inner derivation ad(u) with u column-only.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerDer<R: Ring> {
    pub u: PolyQuot<R>,
}

impl<R: Ring> InnerDer<R> {
    pub fn new(u: PolyQuot<R>) -> Result<Self> {
        if !u.is_column_only() {
            return Err(Error::InvalidArgument("inner derivation needs a column-only element".into()));
        }
        Ok(InnerDer { u })
    }

    pub fn apply(&self, v: &PolyQuot<R>) -> PolyQuot<R> {
        self.u.bracket(v)
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero()
    }
}

impl InnerDer<QRing> {
    pub fn to_json(&self, m: u32) -> serde_json::Value {
        let mut cols = serde_json::Map::new();
        for k in 0..self.u.n as usize {
            if !self.u.cols[k].is_empty() {
                cols.insert(k.to_string(), self.u.render_col(k).into());
            }
        }
        serde_json::json!({"N": self.u.n, "m": m, "columns": cols})
    }
}

/// ε^∂_{m+1,ζ} ≡ ad(Y^{m−1}(t_ζ + (−1)^{m+1} t_ζ̄)) mod D².
pub fn eps_op(m: u32, r: Root, max_deg: u32) -> Result<InnerDer<QRing>> {
    if m < 2 {
        return Err(Error::BadWeight(m));
    }
    let sign = if m % 2 == 1 { Q::one() } else { -Q::one() };
    let u = PolyQuot::column_monomial(QRing, r.n, max_deg, r.k, (0, m - 1), Q::one())
        .add(&PolyQuot::column_monomial(QRing, r.n, max_deg, r.conj().k, (0, m - 1), sign));
    InnerDer::new(u)
}

/// Images of KZ generators: e0 ↦ (0, 1, Σ_{n≥1} B_n/n! X^{n−1} in every column),
/// e_{ζ^k} ↦ unit column k.
fn kz_generator_image(n: u64, max_deg: u32, l: u8) -> PolyQuot<QRing> {
    if l == 0 {
        let mut p = PolyQuot::y(QRing, n, max_deg);
        let b = bern_coeffs(max_deg as usize + 2);
        for k in 0..n {
            for d in 1..=max_deg + 1 {
                p = p.add(&PolyQuot::column_monomial(QRing, n, max_deg, k, (d - 1, 0), b[d as usize].clone()));
            }
        }
        p
    } else {
        PolyQuot::column_unit(QRing, n, max_deg, (l - 1) as u64)
    }
}

/// Ψ followed by projection mod D², computed directly in the model.
pub fn hain_mod_d2(u: &LieElt, max_deg: u32) -> Result<PolyQuot<QRing>> {
    if u.alphabet.kind != AlphabetKind::Kz {
        return Err(Error::InvalidArgument("hain_mod_d2 needs the KZ alphabet".into()));
    }
    let n = u.alphabet.n;
    let mut memo: HashMap<Vec<u8>, PolyQuot<QRing>> = HashMap::new();
    fn go(w: &[u8], n: u64, d: u32, memo: &mut HashMap<Vec<u8>, PolyQuot<QRing>>) -> PolyQuot<QRing> {
        if let Some(x) = memo.get(w) {
            return x.clone();
        }
        let img = if w.len() == 1 {
            kz_generator_image(n, d, w[0])
        } else {
            let (a, b) = crate::freelie::standard_factorization(w);
            go(&a, n, d, memo).bracket(&go(&b, n, d, memo))
        };
        memo.insert(w.to_vec(), img.clone());
        img
    }
    let mut out = PolyQuot::zero(QRing, n, max_deg);
    for (w, c) in &u.terms {
        out = out.add(&go(w, n, max_deg, &mut memo).scale(c));
    }
    Ok(out)
}

/// h_q = exp(L·Y ∂/∂X): X ↦ X + L·Y on the (X,Y) part and in every column.
pub fn monodromy_hq(v: &PolyQuot<SymRing>) -> PolyQuot<SymRing> {
    let r = SymRing;
    let l = SymPoly::l();
    let mut out = PolyQuot::zero(r, v.n, v.max_deg);
    out.a = v.a.clone();
    out.b = v.b.add(&l.mul(&v.a));
    for (k, col) in v.cols.iter().enumerate() {
        for (&(i, j), c) in col {
            // X^i Y^j ↦ Σ_s C(i,s) X^{i−s} (L Y)^s Y^j
            for s in 0..=i {
                let coef = SymPoly::constant(Q::from_integer(crate::rational::binomial(i, s))).mul(&l.pow(s)).mul(c);
                col_add_term(&r, &mut out.cols[k], (i - s, j + s), coef);
            }
        }
    }
    out
}

/// Basis of the kernel of (h_q − 1) on the degree-≤ max_deg model, with L an
/// indeterminate: the kernel of every L-power component at once.
pub fn hq_invariants(n: u64, max_deg: u32) -> Vec<PolyQuot<QRing>> {
    let basis = model_basis(n, max_deg);
    let images: Vec<Vec<SymPoly>> = basis
        .iter()
        .map(|e| {
            let s = e.with_ring(SymRing, &|q| SymPoly::constant(q.clone()));
            monodromy_hq(&s).sub(&s).coordinates()
        })
        .collect();
    let dim = basis.len();
    let max_l = max_deg + 1;
    // rows: (coordinate, L-power) pairs; columns: basis elements
    let mut rows = Vec::new();
    for c in 0..dim {
        for p in 0..=max_l {
            let row: Vec<Q> = images
                .iter()
                .map(|img| img[c].split_by_l().get(&p).map_or(Q::zero(), |x| x.terms.get(&Vec::new()).cloned().unwrap_or_else(Q::zero)))
                .collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let ns = rref(rows, dim).nullspace();
    ns.into_iter()
        .map(|v| {
            let mut p = PolyQuot::zero(QRing, n, max_deg);
            for (c, e) in v.iter().zip(&basis) {
                if !c.is_zero() {
                    p = p.add(&e.scale(c));
                }
            }
            p
        })
        .collect()
}

/// Coordinate basis of the model, matching [`PolyQuot::coordinates`].
pub fn model_basis(n: u64, max_deg: u32) -> Vec<PolyQuot<QRing>> {
    let mut out = vec![PolyQuot::x(QRing, n, max_deg), PolyQuot::y(QRing, n, max_deg)];
    for k in 0..n {
        for d in 0..=max_deg {
            for i in (0..=d).rev() {
                out.push(PolyQuot::column_monomial(QRing, n, max_deg, k, (i, d - i), Q::one()));
            }
        }
    }
    out
}

/// A splitting of V_{m,ζ} given by its action on X and Y.
#[derive(Debug, Clone)]
pub struct Splitting {
    pub x: PolyQuot<SymRing>,
    pub y: PolyQuot<SymRing>,
}

#[derive(Debug, Clone)]
pub struct VSplit {
    pub m: u32,
    pub root: Root,
    /// X ↦ X − λ X Y^{m−1} t_r, Y ↦ Y − λ Y^m t_r.
    pub single: Splitting,
    /// Pullback of the splittings of V_{m,ζ} ⊕ V_{m,ζ̄} along the diagonal,
    /// with λ_{m,r} and λ_{m,r̄} kept distinct.
    pub paired: Splitting,
    /// `paired` after λ_{m,r̄} ↦ (−1)^{m+1} λ_{m,r} (and λ ↦ 0 when r is
    /// self-conjugate and m even), i.e. modulo (2πi)^m Q.
    pub reduced: Splitting,
    /// c with reduced = 1 + c·λ_{m,r}·ε^∂_{m+1,r}: 1, 1/2, or 0.
    pub factor: Q,
    pub derivation: InnerDer<QRing>,
}

fn single_splitting(m: u32, r: Root, max_deg: u32, lam: &SymPoly) -> Splitting {
    let n = r.n;
    let x = PolyQuot::x(SymRing, n, max_deg).sub(&PolyQuot::column_monomial(SymRing, n, max_deg, r.k, (1, m - 1), lam.clone()));
    let y = PolyQuot::y(SymRing, n, max_deg).sub(&PolyQuot::column_monomial(SymRing, n, max_deg, r.k, (0, m), lam.clone()));
    Splitting { x, y }
}

pub fn vsplit_derivation(m: u32, r: Root, max_deg: u32) -> Result<VSplit> {
    if m < 2 {
        return Err(Error::BadWeight(m));
    }
    if max_deg < m {
        return Err(Error::InvalidArgument(format!("max_deg {max_deg} < m = {m}")));
    }
    let n = r.n;
    let lam = SymPoly::lambda(m, r);
    let single = single_splitting(m, r, max_deg, &lam);
    let self_conj = r.is_self_conjugate();
    let paired = if self_conj {
        single.clone()
    } else {
        let other = single_splitting(m, r.conj(), max_deg, &SymPoly::lambda(m, r.conj()));
        // the two corrections act on different columns, so they add
        Splitting {
            x: single.x.add(&other.x).sub(&PolyQuot::x(SymRing, n, max_deg)),
            y: single.y.add(&other.y).sub(&PolyQuot::y(SymRing, n, max_deg)),
        }
    };
    let sign = if m % 2 == 1 { qi(1) } else { qi(-1) };
    let conj_sym = crate::symbolic::Sym::Lambda { m, k: r.conj().k, n };
    let kill = self_conj && m % 2 == 0;
    let reduce = |p: &PolyQuot<SymRing>| {
        p.with_ring(SymRing, &|c| {
            c.substitute(&|s| {
                if kill && s == conj_sym {
                    SymPoly::zero()
                } else if !self_conj && s == conj_sym {
                    lam.scale(&sign)
                } else {
                    SymPoly::sym(s)
                }
            })
        })
    };
    let reduced = Splitting { x: reduce(&paired.x), y: reduce(&paired.y) };
    let derivation = eps_op(m, r, max_deg)?;
    let factor = if !self_conj {
        qi(1)
    } else if m % 2 == 1 {
        crate::rational::q(1, 2)
    } else {
        qi(0)
    };
    let d = derivation.u.with_ring(SymRing, &|c| SymPoly::constant(c.clone())).scale(&lam.scale(&factor));
    let expect_x = PolyQuot::x(SymRing, n, max_deg).add(&d.bracket(&PolyQuot::x(SymRing, n, max_deg)));
    let expect_y = PolyQuot::y(SymRing, n, max_deg).add(&d.bracket(&PolyQuot::y(SymRing, n, max_deg)));
    if reduced.x != expect_x || reduced.y != expect_y {
        return Err(Error::Consistency(format!("paired splitting for m={m}, {r:?} is not 1 + c·λ·ε^∂")));
    }
    Ok(VSplit { m, root: r, single, paired, reduced, factor, derivation })
}

/// Element of the KZ mod-D² model: c0·e0 + Σ_{k,m} c_{m,k} e0^m·e_{ζ^k}.
#[derive(Debug, Clone, PartialEq)]
pub struct KzQuot<R: Ring> {
    pub ring: R,
    pub n: u64,
    pub e0: R::E,
    /// cols[k][m] = coefficient of ad_{e0}^m(e_{ζ^k}).
    pub cols: Vec<BTreeMap<u32, R::E>>,
}

impl<R: Ring> KzQuot<R> {
    pub fn zero(ring: R, n: u64) -> Self {
        KzQuot { e0: ring.zero(), cols: vec![BTreeMap::new(); n as usize], ring, n }
    }

    pub fn coeff(&self, k: u64, m: u32) -> R::E {
        self.cols[k as usize].get(&m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    fn add_col(&mut self, k: u64, m: u32, c: R::E) {
        let cur = self.coeff(k, m);
        let s = self.ring.add(&cur, &c);
        if self.ring.is_zero(&s) {
            self.cols[k as usize].remove(&m);
        } else {
            self.cols[k as usize].insert(m, s);
        }
    }

    /// The Hain image: e0 ↦ (0, 1, Bernoulli columns), e0^m·e_ζ ↦ Y^m t_ζ.
    pub fn hain_image(&self, max_deg: u32) -> PolyQuot<R> {
        let r = &self.ring;
        let e0img = kz_generator_image(self.n, max_deg, 0).with_ring(r.clone(), &|q| r.from_q(q));
        let mut out = e0img.scale(&self.e0);
        for (k, col) in self.cols.iter().enumerate() {
            for (&m, c) in col {
                out = out.add(&PolyQuot::column_monomial(r.clone(), self.n, max_deg, k as u64, (0, m), c.clone()));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BettiForm {
    /// L·e0 − L Σ_{m≥2} λ_{m,ζ} e0^m·e_ζ.
    Symmetrized,
    /// L·e0 − L²/2·e0·e_1 + L Σ_{m≥2} (−1)^m λ_{m,ζ̄} e0^m·e_ζ (transport along dch,
    /// then half a turn around 1).
    Transported,
}

#[derive(Debug, Clone)]
pub struct BettiVector {
    /// M-weight: −2 for the e0 vector, −2m−2 for L^{m+1} e0^m·e_ζ.
    pub weight: i32,
    pub kz: KzQuot<SymRing>,
    pub hain: PolyQuot<SymRing>,
}

/// Q-Betti generators of the limit MHS at the tangent vector ∂/∂q, in the KZ
/// mod-D² model and under the Hain map.
pub fn betti_basis_cyc(n: u64, m_max: u32, form: BettiForm) -> Result<Vec<BettiVector>> {
    if m_max < 2 {
        return Err(Error::BadWeight(m_max));
    }
    let l = SymPoly::l();
    let max_deg = m_max;
    let mut out = Vec::new();
    let mut v = KzQuot::zero(SymRing, n);
    v.e0 = l.clone();
    if form == BettiForm::Transported {
        v.add_col(0, 1, l.pow(2).scale(&crate::rational::q(-1, 2)));
    }
    for k in 0..n {
        let r = Root { k, n };
        for m in 2..=m_max {
            let c = match form {
                BettiForm::Symmetrized => l.mul(&SymPoly::lambda(m, r)).neg(),
                BettiForm::Transported => {
                    let s = if m % 2 == 0 { qi(1) } else { qi(-1) };
                    l.mul(&SymPoly::lambda(m, r.conj())).scale(&s)
                }
            };
            v.add_col(k, m, c);
        }
    }
    out.push(BettiVector { weight: -2, hain: v.hain_image(max_deg), kz: v });
    for m in 1..=m_max {
        for k in 0..n {
            let mut v = KzQuot::zero(SymRing, n);
            v.add_col(k, m, l.pow(m + 1));
            out.push(BettiVector { weight: -2 * m as i32 - 2, hain: v.hain_image(max_deg), kz: v });
        }
    }
    Ok(out)
}

/// Rank over Q of derivations as vectors of column coefficients.
pub fn depth1_rank(ders: &[InnerDer<QRing>]) -> usize {
    if ders.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Q>> = ders.iter().map(|d| d.u.column_coordinates()).collect();
    let ncols = rows[0].len();
    crate::linalg::rank(&rows, ncols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::{Alphabet, LieElt};
    use crate::rational::q;
    use proptest::prelude::*;

    fn arb_pq(n: u64, d: u32) -> impl Strategy<Value = PolyQuot<QRing>> {
        let dim = model_basis(n, d).len();
        proptest::collection::vec(-3i64..4, dim).prop_map(move |cs| {
            model_basis(n, d).iter().zip(cs).fold(PolyQuot::zero(QRing, n, d), |acc, (e, c)| acc.add(&e.scale(&qi(c))))
        })
    }

    #[test]
    fn eps_op_examples() {
        let e = eps_op(3, Root::new(1, 5), 4).unwrap();
        assert_eq!(e.u.render_col(1), "Y^2");
        assert_eq!(e.u.render_col(4), "Y^2");
        assert!(e.u.cols[0].is_empty());
        assert!(eps_op(2, Root::new(1, 2), 4).unwrap().is_zero());
        assert_eq!(eps_op(3, Root::new(1, 2), 4).unwrap().u.render_col(1), "2*Y^2");
        assert!(eps_op(1, Root::new(1, 2), 4).is_err());
        assert_eq!(
            e.to_json(3).to_string(),
            r#"{"N":5,"m":3,"columns":{"1":"Y^2","4":"Y^2"}}"#
        );
    }

    #[test]
    fn eps_op_is_ad_of_its_element() {
        let e = eps_op(4, Root::new(2, 7), 5).unwrap();
        let x = e.apply(&PolyQuot::x(QRing, 7, 5));
        let y = e.apply(&PolyQuot::y(QRing, 7, 5));
        for k in 0..7 {
            for (&(i, j), c) in &e.u.cols[k] {
                assert_eq!(x.cols[k][&(i + 1, j)], -c.clone());
                assert_eq!(y.cols[k][&(i, j + 1)], -c.clone());
            }
        }
        // column-only elements commute
        let t = PolyQuot::column_unit(QRing, 7, 5, 3);
        assert!(e.apply(&t).is_zero());
    }

    #[test]
    fn hain_mod_d2_examples() {
        let al = Alphabet::kz(3);
        let e0 = LieElt::generator(al, 12, 0);
        let p = hain_mod_d2(&e0, 4).unwrap();
        assert_eq!(p.b, qi(1));
        assert_eq!(p.render_col(2), "-1/720*X^3 + 1/12*X + -1/2");
        let w = LieElt::from_terms(al, 12, [(vec![0, 0, al.ez(1)], qi(1))]).unwrap();
        let p = hain_mod_d2(&w, 4).unwrap();
        assert_eq!(p, PolyQuot::column_monomial(QRing, 3, 4, 1, (0, 2), qi(1)));
        let z = LieElt::generator(al, 12, al.ez(2));
        assert_eq!(hain_mod_d2(&z, 4).unwrap(), PolyQuot::column_unit(QRing, 3, 4, 2));
    }

    #[test]
    fn monodromy_examples() {
        let x = PolyQuot::x(SymRing, 2, 3);
        let h = monodromy_hq(&x);
        assert_eq!(h.a, SymPoly::constant(qi(1)));
        assert_eq!(h.b, SymPoly::l());
        let c = PolyQuot::column_monomial(SymRing, 2, 3, 1, (2, 0), SymPoly::constant(qi(1)));
        let h = monodromy_hq(&c);
        assert_eq!(h.cols[1][&(2, 0)], SymPoly::constant(qi(1)));
        assert_eq!(h.cols[1][&(1, 1)], SymPoly::l().scale(&qi(2)));
        assert_eq!(h.cols[1][&(0, 2)], SymPoly::l().pow(2));
    }

    #[test]
    fn monodromy_of_betti_x_vector_is_a_table_vector() {
        // X^B = X − λ X Y^{m−1} t_ζ; (h_q − 1)X^B = L·Y − L·λ·Y^m t_ζ.
        for (m, r) in [(2, Root::new(1, 3)), (3, Root::new(0, 1)), (4, Root::new(2, 5))] {
            let lam = SymPoly::lambda(m, r);
            let n = r.n;
            let xb = PolyQuot::x(SymRing, n, 6).sub(&PolyQuot::column_monomial(SymRing, n, 6, r.k, (1, m - 1), lam.clone()));
            let lhs = monodromy_hq(&xb).sub(&xb);
            let l = SymPoly::l();
            let rhs = PolyQuot::y(SymRing, n, 6).scale(&l).sub(&PolyQuot::column_monomial(SymRing, n, 6, r.k, (0, m), l.mul(&lam)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn vsplit_examples() {
        let v = vsplit_derivation(2, Root::new(1, 3), 4).unwrap();
        let lam = SymPoly::lambda(2, Root::new(1, 3));
        let expect = PolyQuot::y(SymRing, 3, 4).sub(&PolyQuot::column_monomial(SymRing, 3, 4, 1, (0, 2), lam));
        assert_eq!(v.single.y, expect);
        assert_eq!(v.factor, qi(1));
        let v = vsplit_derivation(4, Root::unit(3), 5).unwrap();
        assert!(v.derivation.is_zero());
        assert_eq!(v.reduced.x, PolyQuot::x(SymRing, 3, 5));
        let v = vsplit_derivation(3, Root::unit(3), 5).unwrap();
        assert_eq!(v.factor, q(1, 2));
        for n in 1..=6u64 {
            for k in 0..n {
                for m in 2..=5 {
                    vsplit_derivation(m, Root::new(k as i64, n), 6).unwrap();
                }
            }
        }
    }

    #[test]
    fn betti_examples() {
        let b = betti_basis_cyc(1, 3, BettiForm::Symmetrized).unwrap();
        let l = SymPoly::l();
        assert_eq!(b[0].weight, -2);
        assert_eq!(b[0].kz.e0, l);
        assert_eq!(b[0].kz.coeff(0, 2), l.mul(&SymPoly::lambda(2, Root::unit(1))).neg());
        assert_eq!(b[1].weight, -4);
        assert_eq!(b[1].kz.coeff(0, 1), l.pow(2));
        assert_eq!(b[1].hain, PolyQuot::column_monomial(SymRing, 1, 3, 0, (0, 1), l.pow(2)));
        let prec = 128;
        let two_pi_i = crate::numeric::BigC::two_pi_i(prec);
        let z2 = b[0].kz.coeff(0, 2).evaluate(prec).unwrap();
        let pi = crate::numeric::BigC::pi(prec);
        let expect = two_pi_i.mul(&pi).mul(&pi).div(&crate::numeric::BigC::from_i64(6, prec)).neg();
        assert!(z2.sub(&expect).abs_f64() < 1e-20);
        assert!(b[0].kz.coeff(0, 3).evaluate(prec).is_ok());
    }

    #[test]
    fn depth1_rank_examples() {
        let ders: Vec<_> = (2..=5)
            .flat_map(|m| crate::roots::primitive_upper_half(5).into_iter().map(move |r| eps_op(m, r, 6).unwrap()))
            .collect();
        assert_eq!(depth1_rank(&ders), 8);
        assert_eq!(depth1_rank(&[eps_op(2, Root::new(1, 2), 4).unwrap()]), 0);
    }

    #[test]
    fn invariants_are_y_and_columns_in_y() {
        for (n, d) in [(1, 3), (2, 4), (3, 3)] {
            let inv = hq_invariants(n, d);
            assert_eq!(inv.len(), 1 + n as usize * (d as usize + 1));
            for v in &inv {
                assert!(v.a.is_zero());
                for col in &v.cols {
                    assert!(col.keys().all(|&(i, _)| i == 0));
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn model_bracket_is_lie(a in arb_pq(2, 5), b in arb_pq(2, 5), c in arb_pq(2, 5)) {
            prop_assert!(a.bracket(&a).is_zero());
            prop_assert_eq!(a.bracket(&b), b.bracket(&a).scale(&qi(-1)));
            let j = a.bracket(&b.bracket(&c)).add(&b.bracket(&c.bracket(&a))).add(&c.bracket(&a.bracket(&b)));
            prop_assert!(j.is_zero());
        }

        #[test]
        fn fused_path_matches_projection(a in crate::freelie::tests::arb_lie(Alphabet::kz(2), 8, 3)) {
            let fused = hain_mod_d2(&a, 5).unwrap();
            let slow = crate::hain::hain_apply(&a, 7).unwrap().project_mod_d2().unwrap();
            prop_assert_eq!(fused, slow);
        }
    }
}
