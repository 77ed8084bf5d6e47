//! Commutative polynomials over Q in the formal symbols L (the Lefschetz
//! period, evaluating to 2πi) and λ_{m,k} (Li_m(e^{2πik/N}) at level N).

use crate::numeric::BigC;
use crate::rational::fmt_q;
use crate::ring::{Domain, Ring};
use crate::{Result, Root, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    L,
    Lambda { m: u32, k: u64, n: u64 },
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::L => write!(f, "L"),
            Sym::Lambda { m, k, n } => write!(f, "λ[{m},{k}/{n}]"),
        }
    }
}

/// Sorted (symbol, exponent) pairs with positive exponents.
pub type Monomial = Vec<(Sym, u32)>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymPoly {
    pub terms: BTreeMap<Monomial, Q>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m: BTreeMap<Sym, u32> = a.iter().copied().collect();
    for &(s, e) in b {
        *m.entry(s).or_insert(0) += e;
    }
    m.into_iter().collect()
}

impl SymPoly {
    pub fn zero() -> SymPoly {
        SymPoly::default()
    }

    pub fn constant(c: Q) -> SymPoly {
        let mut p = SymPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn sym(s: Sym) -> SymPoly {
        SymPoly { terms: BTreeMap::from([(vec![(s, 1)], Q::one())]) }
    }

    pub fn l() -> SymPoly {
        SymPoly::sym(Sym::L)
    }

    pub fn lambda(m: u32, r: Root) -> SymPoly {
        SymPoly::sym(Sym::Lambda { m, k: r.k, n: r.n })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> SymPoly {
        SymPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &SymPoly) -> SymPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(mono_mul(a, b), x * y);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SymPoly {
        (0..e).fold(SymPoly::constant(Q::one()), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &Q) -> SymPoly {
        self.mul(&SymPoly::constant(c.clone()))
    }

    /// Coefficients by power of L, each a polynomial in the remaining symbols.
    pub fn split_by_l(&self) -> BTreeMap<u32, SymPoly> {
        let mut out: BTreeMap<u32, SymPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.iter().find(|(s, _)| *s == Sym::L).map_or(0, |&(_, e)| e);
            let rest: Monomial = m.iter().filter(|(s, _)| *s != Sym::L).copied().collect();
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Substitute every symbol by a polynomial.
    pub fn substitute(&self, f: &dyn Fn(Sym) -> SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            let mut t = SymPoly::constant(c.clone());
            for &(s, e) in m {
                t = t.mul(&f(s).pow(e));
            }
            out = out.add(&t);
        }
        out
    }

    /// Period map: L ↦ 2πi, λ_{m,k} ↦ Li_m(e^{2πik/N}).
    pub fn evaluate(&self, prec: u32) -> Result<BigC> {
        let mut cache: BTreeMap<Sym, BigC> = BTreeMap::new();
        let mut acc = BigC::zero(prec);
        for (m, c) in &self.terms {
            let mut t = BigC::from_q(c, prec);
            for &(s, e) in m {
                if !cache.contains_key(&s) {
                    let v = match s {
                        Sym::L => BigC::two_pi_i(prec),
                        Sym::Lambda { m, k, n } => crate::numeric::li(m, Root { k, n }, prec)?,
                    };
                    cache.insert(s, v);
                }
                t = t.mul(&cache[&s].pow_u(e));
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = fmt_q(c);
                for (sym, e) in m {
                    if *e == 1 {
                        s += &format!("*{sym}");
                    } else {
                        s += &format!("*{sym}^{e}");
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SymRing;

impl Ring for SymRing {
    type E = SymPoly;
    fn zero(&self) -> SymPoly {
        SymPoly::zero()
    }
    fn one(&self) -> SymPoly {
        SymPoly::constant(Q::one())
    }
    fn is_zero(&self, a: &SymPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &SymPoly, b: &SymPoly) -> SymPoly {
        a.add(b)
    }
    fn sub(&self, a: &SymPoly, b: &SymPoly) -> SymPoly {
        a.sub(b)
    }
    fn mul(&self, a: &SymPoly, b: &SymPoly) -> SymPoly {
        a.mul(b)
    }
    fn neg(&self, a: &SymPoly) -> SymPoly {
        a.neg()
    }
    fn from_q(&self, q: &Q) -> SymPoly {
        SymPoly::constant(q.clone())
    }
    fn domain(&self) -> Domain {
        Domain::Symbolic
    }
    fn render(&self, a: &SymPoly) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    #[test]
    fn arithmetic() {
        let l = SymPoly::l();
        let lam = SymPoly::lambda(2, Root::new(1, 3));
        let p = l.add(&lam).pow(2);
        assert_eq!(p.terms.len(), 3);
        assert_eq!(p.sub(&l.pow(2)).sub(&lam.pow(2)), l.mul(&lam).scale(&qi(2)));
        assert_eq!(p.split_by_l()[&1], lam.scale(&qi(2)));
    }

    #[test]
    fn evaluation() {
        let z2 = SymPoly::lambda(2, Root::unit(1)).evaluate(128).unwrap();
        let pi = BigC::pi(128);
        let expect = pi.mul(&pi).div(&BigC::from_i64(6, 128));
        assert!(z2.sub(&expect).abs_f64() < 1e-30);
    }
}
