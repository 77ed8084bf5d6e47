//! Extension classes of Q(0) by Q(m) over Z[μ_N, 1/N], realized as the
//! classes of Li_m(ζ) modulo distribution and conjugation relations, and the
//! Galois heads of the generators σ_{m,ζ}.

use crate::linalg::{rref, Rref};
use crate::polyquot::{eps_op, InnerDer, PolyQuot};
use crate::rational::{fmt_q, q, qi, qpow};
use crate::ring::QRing;
use crate::roots::{euler_phi, pair_representatives, prime_factors, prime_power, primitive_upper_half};
use crate::{Error, Result, Root, Q};
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;

fn check_weight(m: u32) -> Result<()> {
    if m < 2 {
        Err(Error::BadWeight(m))
    } else {
        Ok(())
    }
}

/// Distribution rows for primes ℓ | N, then conjugation rows, over x_0..x_{N−1}.
pub fn relation_matrix(n: u64, m: u32) -> Result<Vec<Vec<Q>>> {
    check_weight(m)?;
    let nu = n as usize;
    let mut rows = Vec::new();
    for l in prime_factors(n) {
        let lm = qpow(&qi(l as i64), m as i64 - 1);
        for b in 0..n / l {
            let mut row = vec![Q::zero(); nu];
            for t in 0..l {
                row[(b + t * n / l) as usize] += &lm;
            }
            row[((b * l) % n) as usize] -= Q::one();
            rows.push(row);
        }
    }
    let sign = if m % 2 == 1 { qi(1) } else { qi(-1) };
    for j in 0..=n / 2 {
        let mut row = vec![Q::zero(); nu];
        row[((n - j) % n) as usize] += Q::one();
        row[j as usize] -= &sign;
        if row.iter().any(|x| !x.is_zero()) {
            rows.push(row);
        }
    }
    Ok(rows)
}

/// The basis residues: primitive upper-half roots for N ≥ 3, k=0 for N=1 and
/// k=1 for N=2 (empty for m even when N ≤ 2).
pub fn basis(n: u64, m: u32) -> Vec<Root> {
    match n {
        1 | 2 if m % 2 == 0 => vec![],
        1 => vec![Root::unit(1)],
        2 => vec![Root::new(1, 2)],
        _ => primitive_upper_half(n),
    }
}

/// Column order used for elimination: non-primitive residues, then primitive
/// lower half, then the basis.
fn column_order(n: u64) -> Vec<u64> {
    let last: Vec<u64> = match n {
        1 => vec![0],
        2 => vec![1],
        _ => primitive_upper_half(n).iter().map(|r| r.k).collect(),
    };
    let mut nonprim = Vec::new();
    let mut lower = Vec::new();
    for k in 0..n {
        if last.contains(&k) {
            continue;
        }
        if Root::new(k as i64, n).classify().is_primitive {
            lower.push(k);
        } else {
            nonprim.push(k);
        }
    }
    nonprim.into_iter().chain(lower).chain(last).collect()
}

struct Reduced {
    order: Vec<u64>,
    rref: Rref,
}

fn reduced_system(n: u64, m: u32) -> Result<Reduced> {
    let order = column_order(n);
    let rows: Vec<Vec<Q>> =
        relation_matrix(n, m)?.into_iter().map(|r| order.iter().map(|&k| r[k as usize].clone()).collect()).collect();
    let rref = rref(rows, n as usize);
    let free: Vec<u64> = rref.free_columns().iter().map(|&c| order[c]).collect();
    let expect: Vec<u64> = basis(n, m).iter().map(|r| r.k).collect();
    if free != expect {
        return Err(Error::Consistency(format!("free variables {free:?} at N={n}, m={m} are not the basis {expect:?}")));
    }
    Ok(Reduced { order, rref })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtClass {
    pub n: u64,
    pub m: u32,
    /// Coordinates keyed by the residue of a basis root.
    pub coords: BTreeMap<u64, Q>,
}

impl ExtClass {
    pub fn zero(n: u64, m: u32) -> ExtClass {
        ExtClass { n, m, coords: BTreeMap::new() }
    }

    pub fn coord(&self, k: u64) -> Q {
        self.coords.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, o: &ExtClass) -> ExtClass {
        assert_eq!((self.n, self.m), (o.n, o.m));
        let mut out = self.clone();
        for (k, c) in &o.coords {
            let s = out.coord(*k) + c;
            if s.is_zero() {
                out.coords.remove(k);
            } else {
                out.coords.insert(*k, s);
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> ExtClass {
        let mut out = ExtClass::zero(self.n, self.m);
        if !c.is_zero() {
            out.coords = self.coords.iter().map(|(k, x)| (*k, x * c)).collect();
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let coords: serde_json::Map<String, Value> =
            self.coords.iter().map(|(k, c)| (Root { k: *k, n: self.n }.label(), fmt_q(c).into())).collect();
        json!({"N": self.n, "m": self.m, "coords": coords})
    }
}

/// The class of Li_m(ζ_N^j) in the primitive basis.
pub fn decompose(n: u64, m: u32, j: u64) -> Result<ExtClass> {
    Ok(decompose_all(n, m)?.swap_remove((j % n) as usize))
}

/// Classes of Li_m(ζ_N^j) for every j = 0..N−1.
pub fn decompose_all(n: u64, m: u32) -> Result<Vec<ExtClass>> {
    let sys = reduced_system(n, m)?;
    let pos: BTreeMap<u64, usize> = sys.order.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    (0..n)
        .map(|j| {
            let mut v = vec![Q::zero(); n as usize];
            v[pos[&j]] = Q::one();
            let r = sys.rref.reduce(&v);
            let mut out = ExtClass::zero(n, m);
            for (c, x) in r.into_iter().enumerate() {
                if !x.is_zero() {
                    if sys.rref.pivots.contains(&c) {
                        return Err(Error::Consistency("reduction left a pivot variable".into()));
                    }
                    out.coords.insert(sys.order[c], x);
                }
            }
            Ok(out)
        })
        .collect()
}

pub fn ext_dim(n: u64, m: u32) -> Result<usize> {
    let sys = reduced_system(n, m)?;
    Ok(sys.rref.free_columns().len())
}

/// The closed-form dimension: φ(N)/2 for N ≥ 3, and for N ≤ 2 one when m is
/// odd and zero otherwise (m ≥ 2).
pub fn ext_dim_formula(n: u64, m: u32) -> usize {
    if n >= 3 {
        euler_phi(n) as usize / 2
    } else {
        (m % 2 == 1) as usize
    }
}

fn check_basis_root(n: u64, m: u32, zeta: Root) -> Result<()> {
    if zeta.n != n || !basis(n, m).contains(&zeta) {
        return Err(Error::NotBasisRoot { k: zeta.k, n });
    }
    Ok(())
}

/// Coordinate of decompose(N, m, j) on the basis vector ζ.
pub fn sigma_coefficient(n: u64, m: u32, zeta: Root, j: u64) -> Result<Q> {
    check_weight(m)?;
    check_basis_root(n, m, zeta)?;
    Ok(decompose(n, m, j)?.coord(zeta.k))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Head {
    pub n: u64,
    pub m: u32,
    pub zeta: Root,
    /// c_η on pair representatives, defining root first then increasing k.
    pub coeffs: Vec<(Root, Q)>,
    /// u = Σ_j s(ζ, j)·Y^{m−1}·t_j as an inner derivation mod D².
    pub derivation: InnerDer<QRing>,
}

impl Head {
    pub fn coeff(&self, eta: Root) -> Option<Q> {
        self.coeffs.iter().find(|(r, _)| *r == eta).map(|(_, c)| c.clone())
    }

    pub fn to_json(&self) -> Value {
        let coeffs: serde_json::Map<String, Value> = self.coeffs.iter().map(|(r, c)| (r.label(), fmt_q(c).into())).collect();
        json!({"zeta": self.zeta.label(), "coeffs": coeffs})
    }

    /// Σ_η c_η ε^∂_{m+1,η}.
    pub fn as_derivation(&self) -> Result<InnerDer<QRing>> {
        let md = self.m - 1;
        let mut u = PolyQuot::zero(QRing, self.n, md);
        for (r, c) in &self.coeffs {
            u = u.add(&eps_op(self.m, *r, md)?.u.scale(c));
        }
        InnerDer::new(u)
    }
}

/// The head of φ(σ_{m,ζ}) in the basis ε^∂_{m+1,η}.
pub fn head(n: u64, m: u32, zeta: Root) -> Result<Head> {
    check_weight(m)?;
    check_basis_root(n, m, zeta)?;
    let s: Vec<Q> = decompose_all(n, m)?.iter().map(|c| c.coord(zeta.k)).collect();
    let md = m - 1;
    let mut u = PolyQuot::zero(QRing, n, md);
    for (j, c) in s.iter().enumerate() {
        u = u.add(&PolyQuot::column_monomial(QRing, n, md, j as u64, (0, md), c.clone()));
    }
    let derivation = InnerDer::new(u)?;
    let mut coeffs = Vec::new();
    let mut rest = Vec::new();
    for rep in pair_representatives(n) {
        let r = rep.root;
        // the defining root may be the larger residue of its pair
        let eta = if r == zeta.conj() && !rep.self_conjugate { zeta } else { r };
        let c = if rep.self_conjugate {
            if m % 2 == 0 {
                continue;
            }
            &s[eta.k as usize] / qi(2)
        } else {
            s[eta.k as usize].clone()
        };
        if eta == zeta {
            coeffs.push((eta, c));
        } else if !c.is_zero() {
            rest.push((eta, c));
        }
    }
    coeffs.extend(rest);
    let h = Head { n, m, zeta, coeffs, derivation };
    if h.as_derivation()? != h.derivation {
        return Err(Error::Consistency(format!("head at N={n}, m={m} does not re-express in the ε basis")));
    }
    if h.coeff(zeta) != Some(if n <= 2 { q(1, 2) } else { qi(1) }) {
        return Err(Error::Consistency("defining coefficient is not normalized".into()));
    }
    if let Some(closed) = closed_form_head(n, m, zeta) {
        if closed.as_derivation()? != h.derivation {
            return Err(Error::Consistency(format!("head at N={n}, m={m} disagrees with the closed form")));
        }
    }
    Ok(h)
}

/// Closed-form heads: prime powers, N=1, N=2 and N=6. Coefficients are given
/// on the literal roots named by the formulas; when m is even some of them
/// multiply a zero derivation.
pub fn closed_form_head(n: u64, m: u32, zeta: Root) -> Option<Head> {
    let e = m as i64 - 1;
    let md = m - 1;
    let mk = |coeffs: Vec<(Root, Q)>| {
        let mut u = PolyQuot::zero(QRing, n, md);
        for (r, c) in &coeffs {
            u = u.add(&eps_op(m, *r, md).ok()?.u.scale(c));
        }
        Some(Head { n, m, zeta, coeffs, derivation: InnerDer::new(u).ok()? })
    };
    match n {
        1 => mk(vec![(zeta, q(1, 2))]),
        2 => mk(vec![(zeta, q(1, 2)), (Root::unit(2), Q::one() / (qi(2) * (qpow(&qi(2), -e) - qi(1))))]),
        6 => {
            let c2 = Q::one() / (qpow(&qi(2), -e) + qpow(&qi(-1), m as i64));
            let c1 = qpow(&qi(6), e) / ((qi(1) - qpow(&qi(3), e)) * (qi(1) - qpow(&qi(2), e)));
            let cm1 = Q::one() / (qpow(&qi(3), -e) - qi(1));
            mk(vec![(zeta, qi(1)), (zeta.pow(2), c2), (Root::unit(6), c1), (zeta.pow(3), cm1)])
        }
        _ => {
            let (p, a) = prime_power(n)?;
            let mut coeffs = Vec::new();
            for k in 0..a {
                coeffs.push((zeta.pow(p.pow(k)), qpow(&qi(p as i64), k as i64 * e)));
            }
            let pe = qpow(&qi(p as i64), e);
            coeffs.push((Root::unit(n), qpow(&qi(n as i64), e) / (qi(1) - pe)));
            mk(coeffs)
        }
    }
}

/// Matrix of heads over the basis roots, rows = ζ, columns = column
/// coefficients of the derivation.
pub fn head_rank(n: u64, m: u32) -> Result<usize> {
    let ders: Vec<InnerDer<QRing>> = basis(n, m).into_iter().map(|z| head(n, m, z).map(|h| h.derivation)).collect::<Result<_>>()?;
    Ok(crate::polyquot::depth1_rank(&ders))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn relation_rows() {
        let r = relation_matrix(2, 3).unwrap();
        assert_eq!(r[0], vec![qi(3), qi(4)]);
        let r = relation_matrix(5, 2).unwrap();
        let conj = r.iter().find(|row| row[4] == qi(1) && row[1] == qi(1)).is_some();
        assert!(conj);
        assert!(relation_matrix(5, 1).is_err());
    }

    #[test]
    fn decompose_examples() {
        let c = decompose(4, 3, 2).unwrap();
        assert_eq!(c.coords, BTreeMap::from([(1, qi(8))]));
        let c = decompose(5, 3, 0).unwrap();
        assert_eq!(c.coords, BTreeMap::from([(1, q(-25, 12)), (2, q(-25, 12))]));
        for n in 3..=12 {
            for z in primitive_upper_half(n) {
                assert_eq!(decompose(n, 3, z.k).unwrap().coords, BTreeMap::from([(z.k, qi(1))]));
            }
        }
        assert_eq!(c.to_json().to_string(), r#"{"N":5,"m":3,"coords":{"k=1":"-25/12","k=2":"-25/12"}}"#);
    }

    #[test]
    fn dims() {
        assert_eq!(ext_dim(7, 4).unwrap(), 3);
        assert_eq!(ext_dim(2, 4).unwrap(), 0);
        assert_eq!(ext_dim(1, 3).unwrap(), 1);
        for n in 1..=30 {
            for m in 2..=6 {
                assert_eq!(ext_dim(n, m).unwrap(), ext_dim_formula(n, m), "N={n} m={m}");
            }
        }
    }

    #[test]
    fn sigma_coefficients() {
        let z = Root::new(1, 5);
        assert_eq!(sigma_coefficient(5, 3, z, 1).unwrap(), qi(1));
        assert_eq!(sigma_coefficient(5, 3, z, 4).unwrap(), qi(1));
        assert_eq!(sigma_coefficient(5, 4, z, 4).unwrap(), qi(-1));
        assert_eq!(sigma_coefficient(5, 3, z, 0).unwrap(), q(-25, 12));
        assert!(matches!(sigma_coefficient(5, 3, Root::new(4, 5), 0), Err(Error::NotBasisRoot { .. })));
    }

    #[test]
    fn head_examples() {
        let h = head(5, 3, Root::new(1, 5)).unwrap();
        assert_eq!(h.to_json().to_string(), r#"{"zeta":"k=1","coeffs":{"k=1":"1","k=0":"-25/24"}}"#);
        let h = head(9, 2, Root::new(1, 9)).unwrap();
        assert_eq!(h.coeff(Root::new(3, 9)), Some(qi(3)));
        assert_eq!(h.coeff(Root::unit(9)), None);
        // the −9/2 on ε^∂_{3,1} multiplies a zero derivation
        let closed = closed_form_head(9, 2, Root::new(1, 9)).unwrap();
        assert_eq!(closed.coeff(Root::unit(9)), Some(q(-9, 2)));
        assert!(eps_op(2, Root::unit(9), 1).unwrap().is_zero());
        let h = head(6, 3, Root::new(1, 6)).unwrap();
        assert_eq!(h.coeff(Root::new(2, 6)), Some(q(-4, 3)));
        assert_eq!(h.coeff(Root::unit(6)), Some(q(3, 2)));
        assert_eq!(h.coeff(Root::new(3, 6)), Some(q(-9, 8)));
        assert_eq!(head(1, 5, Root::unit(1)).unwrap().coeffs, vec![(Root::unit(1), q(1, 2))]);
        let h = head(2, 3, Root::new(1, 2)).unwrap();
        assert_eq!(h.coeff(Root::unit(2)), Some(q(1, 2) / (q(1, 4) - qi(1))));
        let h = head(8, 3, Root::new(1, 8)).unwrap();
        assert_eq!(h.coeff(Root::new(2, 8)), Some(qi(4)));
        assert_eq!(h.coeff(Root::new(4, 8)), Some(qi(16)));
        assert_eq!(h.coeff(Root::unit(8)), Some(q(-64, 3)));
        assert!(head(2, 4, Root::new(1, 2)).is_err());
    }

    #[test]
    fn injectivity() {
        for n in 1..=12 {
            for m in 2..=5 {
                assert_eq!(head_rank(n, m).unwrap(), ext_dim_formula(n, m), "N={n} m={m}");
            }
        }
    }

    #[test]
    fn distribution_sides_agree() {
        // ℓ^{m−1} Σ_{w^ℓ = z} [w] = [z] for composite ℓ too
        for (n, l) in [(12, 4), (12, 6), (8, 4), (9, 9)] {
            for m in 2..=4 {
                let all = decompose_all(n, m).unwrap();
                for b in 0..n / l {
                    let mut lhs = ExtClass::zero(n, m);
                    for t in 0..l {
                        lhs = lhs.add(&all[(b + t * n / l) as usize]);
                    }
                    lhs = lhs.scale(&qpow(&qi(l as i64), m as i64 - 1));
                    assert_eq!(lhs, all[((b * l) % n) as usize]);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn decompose_is_linear_and_idempotent(n in 3u64..16, m in 2u32..6) {
            let all = decompose_all(n, m).unwrap();
            for z in basis(n, m) {
                prop_assert_eq!(&all[z.k as usize].coords, &BTreeMap::from([(z.k, qi(1))]));
            }
            for j in 0..n {
                let back = all[((n - j) % n) as usize].scale(&if m % 2 == 1 { qi(1) } else { qi(-1) });
                prop_assert_eq!(&back, &all[j as usize]);
            }
        }
    }
}
