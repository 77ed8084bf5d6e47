//! Regularized transport between tangential base points on a normal
//! crossing divisor, against transport of the linearized connection, on the
//! toy connection d + A(x,y)dx/x + B(x,y)dy/y with 3×3 nilpotent residues.
//!
//! The connection is the gauge transform by h = I + xV + xyU of the constant
//! one A₀dx/x + B₀dy/y (A₀, B₀ commuting nilpotents), so it is flat and
//! polynomial in x, y. Transport solves T' = −ΩT; regularized transport from
//! λ₀∂/∂y at (x₀,0) to λ₁∂/∂y at (x₁,0) is
//! lim_{y→0} (y/λ₁)^{B(x₁,0)} T_y (y/λ₀)^{−B(x₀,0)}.

use super::bigc::BigC;
use crate::rational::qi;
use crate::{Result, Q};
use num_traits::Zero;
use rug::Float;
use std::collections::BTreeMap;

const GUARD: u32 = 32;

type QMat = [[Q; 3]; 3];
pub type Mat = Vec<Vec<BigC>>;

/// Polynomial 3×3 matrices in x, y keyed by exponents (i, j).
#[derive(Debug, Clone, PartialEq, Default)]
struct PMat(BTreeMap<(u32, u32), QMat>);

fn qzero() -> QMat {
    std::array::from_fn(|_| std::array::from_fn(|_| Q::zero()))
}

fn qid() -> QMat {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { qi(1) } else { Q::zero() }))
}

fn qmul(a: &QMat, b: &QMat) -> QMat {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum()))
}

fn qmat(rows: [[i64; 3]; 3]) -> QMat {
    std::array::from_fn(|i| std::array::from_fn(|j| qi(rows[i][j])))
}

impl PMat {
    fn constant(m: QMat) -> PMat {
        PMat(BTreeMap::from([((0, 0), m)]))
    }

    fn monomial(e: (u32, u32), m: QMat) -> PMat {
        PMat(BTreeMap::from([(e, m)]))
    }

    fn add(&self, o: &PMat) -> PMat {
        let mut out = self.clone();
        for (e, m) in &o.0 {
            let cur = out.0.entry(*e).or_insert_with(qzero);
            for i in 0..3 {
                for j in 0..3 {
                    cur[i][j] += &m[i][j];
                }
            }
        }
        out.0.retain(|_, m| m.iter().flatten().any(|c| !c.is_zero()));
        out
    }

    fn scale(&self, c: &Q) -> PMat {
        PMat(self.0.iter().map(|(e, m)| (*e, std::array::from_fn(|i| std::array::from_fn(|j| &m[i][j] * c)))).collect())
            .add(&PMat::default())
    }

    fn mul(&self, o: &PMat) -> PMat {
        let mut out = PMat::default();
        for (ea, a) in &self.0 {
            for (eb, b) in &o.0 {
                out = out.add(&PMat::monomial((ea.0 + eb.0, ea.1 + eb.1), qmul(a, b)));
            }
        }
        out
    }

    fn dx(&self) -> PMat {
        PMat(self.0.iter().filter(|(e, _)| e.0 > 0).map(|(e, m)| ((e.0 - 1, e.1), m.clone())).collect())
            .scale_by_exp(0)
    }

    fn dy(&self) -> PMat {
        PMat(self.0.iter().filter(|(e, _)| e.1 > 0).map(|(e, m)| ((e.0, e.1 - 1), m.clone())).collect())
            .scale_by_exp(1)
    }

    /// After a derivative, multiply each term by the exponent it came from.
    fn scale_by_exp(&self, var: usize) -> PMat {
        PMat(
            self.0
                .iter()
                .map(|(e, m)| {
                    let k = if var == 0 { e.0 + 1 } else { e.1 + 1 };
                    (*e, std::array::from_fn(|i| std::array::from_fn(|j| &m[i][j] * qi(k as i64))))
                })
                .collect(),
        )
    }

    /// Multiply by x (var 0) or y (var 1).
    fn shift(&self, var: usize) -> PMat {
        PMat(self.0.iter().map(|(e, m)| (if var == 0 { (e.0 + 1, e.1) } else { (e.0, e.1 + 1) }, m.clone())).collect())
    }

    /// Coefficient matrices of the polynomial in x at fixed y.
    fn at_y(&self, y: &BigC, prec: u32) -> Vec<Mat> {
        let deg = self.0.keys().map(|e| e.0).max().unwrap_or(0) as usize;
        let mut out = vec![zero_mat(prec); deg + 1];
        for (e, m) in &self.0 {
            let yp = y.pow_u(e.1);
            for i in 0..3 {
                for j in 0..3 {
                    out[e.0 as usize][i][j] = out[e.0 as usize][i][j].add(&yp.mul_q(&m[i][j]));
                }
            }
        }
        out
    }
}

fn zero_mat(prec: u32) -> Mat {
    vec![vec![BigC::zero(prec); 3]; 3]
}

fn id_mat(prec: u32) -> Mat {
    (0..3).map(|i| (0..3).map(|j| if i == j { BigC::one(prec) } else { BigC::zero(prec) }).collect()).collect()
}

fn mmul(a: &Mat, b: &Mat) -> Mat {
    let prec = a[0][0].prec();
    (0..3)
        .map(|i| (0..3).map(|j| (0..3).fold(BigC::zero(prec), |acc, k| acc.add(&a[i][k].mul(&b[k][j])))).collect())
        .collect()
}

fn madd(a: &Mat, b: &Mat) -> Mat {
    (0..3).map(|i| (0..3).map(|j| a[i][j].add(&b[i][j])).collect()).collect()
}

fn mscale(a: &Mat, c: &BigC) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x.mul(c)).collect()).collect()
}

fn max_abs_diff(a: &Mat, b: &Mat) -> f64 {
    (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| a[i][j].dist(&b[i][j])).fold(0.0, f64::max)
}

/// exp of a nilpotent 3×3 matrix.
fn exp_nil(a: &Mat) -> Mat {
    let prec = a[0][0].prec();
    let a2 = mmul(a, a);
    madd(&madd(&id_mat(prec), a), &mscale(&a2, &BigC::from_q(&crate::rational::q(1, 2), prec)))
}

/// t^{M} = exp(M log t) for nilpotent M and t > 0.
fn power(t: &BigC, m: &Mat) -> Mat {
    exp_nil(&mscale(m, &t.ln()))
}

fn eval_q(m: &QMat, prec: u32) -> Mat {
    m.iter().map(|r| r.iter().map(|c| BigC::from_q(c, prec)).collect()).collect()
}

/// The toy connection: A, B as polynomial matrices, plus its gauge data.
#[derive(Debug, Clone)]
pub struct ToyConnection {
    a0: QMat,
    b0: QMat,
    h: PMat,
    h_inv: PMat,
    a: PMat,
    b: PMat,
}

impl ToyConnection {
    /// Constant commuting nilpotents A₀ = 𝑁, B₀ = 2𝑁 + 3𝑁², gauged by
    /// h = I + xV + xyU when `perturbed`.
    pub fn new(perturbed: bool) -> ToyConnection {
        let n = qmat([[0, 1, 0], [0, 0, 1], [0, 0, 0]]);
        let n2 = qmul(&n, &n);
        let a0 = n.clone();
        let b0: QMat = std::array::from_fn(|i| std::array::from_fn(|j| qi(2) * &n[i][j] + qi(3) * &n2[i][j]));
        let (v, u) = if perturbed {
            (qmat([[0, 0, 1], [0, 0, 0], [0, 0, 0]]), qmat([[0, 2, -1], [0, 0, 3], [0, 0, 0]]))
        } else {
            (qzero(), qzero())
        };
        let nil = PMat::monomial((1, 0), v).add(&PMat::monomial((1, 1), u));
        let h = PMat::constant(qid()).add(&nil);
        let h_inv = PMat::constant(qid()).add(&nil.scale(&qi(-1))).add(&nil.mul(&nil));
        let a = h_inv.mul(&PMat::constant(a0.clone())).mul(&h).add(&h_inv.mul(&h.dx()).shift(0));
        let b = h_inv.mul(&PMat::constant(b0.clone())).mul(&h).add(&h_inv.mul(&h.dy()).shift(1));
        ToyConnection { a0, b0, h, h_inv, a, b }
    }

    fn eval(p: &PMat, x: &BigC, y: &BigC, prec: u32) -> Mat {
        let coeffs = p.at_y(y, prec);
        let mut out = zero_mat(prec);
        for (i, c) in coeffs.iter().enumerate() {
            out = madd(&out, &mscale(c, &x.pow_u(i as u32)));
        }
        out
    }

    /// Transport along y = const from x₀ to x₁ (real, positive) of T' = −(A/x)T,
    /// by Taylor steps of half the distance to x = 0.
    pub fn transport_x(&self, x0: &BigC, x1: &BigC, y: &BigC, prec: u32) -> Mat {
        let wp = prec + GUARD;
        let poly = self.a.at_y(y, wp);
        let mut t = id_mat(wp);
        let mut c = x0.with_prec(wp);
        let target = x1.with_prec(wp);
        let terms = wp as usize + 16;
        loop {
            let rem = target.sub(&c);
            let cap = c.abs_f64() / 2.0;
            let last = rem.abs_f64() <= cap;
            let h = if last { rem } else { BigC::from_f64(cap * rem.re_f64().signum(), 0.0, wp) };
            // P(c+s) = Σ p_k s^k
            let deg = poly.len();
            let mut p: Vec<Mat> = vec![zero_mat(wp); deg];
            for (i, a) in poly.iter().enumerate() {
                for k in 0..=i {
                    let bin = BigC::from_q(&Q::from(crate::rational::binomial(i as u32, k as u32)), wp);
                    p[k] = madd(&p[k], &mscale(a, &bin.mul(&c.pow_u((i - k) as u32))));
                }
            }
            // M_k = −Σ_{i+j=k} p_i (−1)^j / c^{j+1}
            let inv_c = BigC::one(wp).div(&c);
            let mut inv_pows = vec![inv_c.clone()];
            for j in 1..terms {
                inv_pows.push(inv_pows[j - 1].mul(&inv_c).neg());
            }
            let m: Vec<Mat> = (0..terms)
                .map(|k| {
                    let mut acc = zero_mat(wp);
                    for (i, pi) in p.iter().enumerate().take(k + 1) {
                        acc = madd(&acc, &mscale(pi, &inv_pows[k - i]));
                    }
                    mscale(&acc, &BigC::from_i64(-1, wp))
                })
                .collect();
            let mut tk: Vec<Mat> = vec![t.clone()];
            for k in 0..terms - 1 {
                let mut acc = zero_mat(wp);
                for i in 0..=k {
                    acc = madd(&acc, &mmul(&m[i], &tk[k - i]));
                }
                tk.push(mscale(&acc, &BigC::one(wp).div_i64(k as i64 + 1)));
            }
            let mut next = zero_mat(wp);
            let mut hp = BigC::one(wp);
            for c_k in &tk {
                next = madd(&next, &mscale(c_k, &hp));
                hp = hp.mul(&h);
            }
            t = next;
            c = c.add(&h);
            if last {
                break;
            }
        }
        t
    }

    pub fn b_at(&self, x: &BigC, prec: u32) -> Mat {
        Self::eval(&self.b, x, &BigC::zero(prec), prec)
    }

    /// (y/λ₁)^{B(x₁,0)} T_y (y/λ₀)^{−B(x₀,0)} at a small y.
    pub fn regularized(&self, x0: &BigC, x1: &BigC, l0: &BigC, l1: &BigC, y: &BigC, prec: u32) -> Mat {
        let wp = prec + GUARD;
        let t = self.transport_x(x0, x1, y, prec);
        let left = power(&y.div(l1).with_prec(wp), &self.b_at(x1, wp));
        let right = power(&y.div(l0).with_prec(wp), &mscale(&self.b_at(x0, wp), &BigC::from_i64(-1, wp)));
        mmul(&mmul(&left, &t), &right)
    }

    /// Transport of the linearized connection d + A(x,0)dx/x + B(x,0)dv/v:
    /// along x at v = λ₀, then along v at x₁.
    pub fn linearized(&self, x0: &BigC, x1: &BigC, l0: &BigC, l1: &BigC, prec: u32) -> Mat {
        let wp = prec + GUARD;
        let tx = self.transport_x(x0, x1, &BigC::zero(wp), prec);
        let tv = power(&l1.div(l0).with_prec(wp), &mscale(&self.b_at(x1, wp), &BigC::from_i64(-1, wp)));
        mmul(&tv, &tx)
    }

    /// h(x₁,0)^{-1}(x₁/x₀)^{−A₀}(λ₁/λ₀)^{−B₀}h(x₀,0).
    pub fn closed_form(&self, x0: &BigC, x1: &BigC, l0: &BigC, l1: &BigC, prec: u32) -> Mat {
        let wp = prec + GUARD;
        let z = BigC::zero(wp);
        let neg = BigC::from_i64(-1, wp);
        let xa = power(&x1.div(x0).with_prec(wp), &mscale(&eval_q(&self.a0, wp), &neg));
        let lb = power(&l1.div(l0).with_prec(wp), &mscale(&eval_q(&self.b0, wp), &neg));
        let h1 = Self::eval(&self.h_inv, x1, &z, wp);
        let h0 = Self::eval(&self.h, x0, &z, wp);
        mmul(&mmul(&h1, &mmul(&xa, &lb)), &h0)
    }
}

#[derive(Debug, Clone)]
pub struct LinearizedReport {
    /// Constant commuting case: regularized transport vs the closed form.
    pub constant_residual: f64,
    /// Gauged case: regularized transport vs linearized transport.
    pub perturbed_residual: f64,
    /// Gauged case: linearized transport vs the gauge closed form.
    pub closed_form_residual: f64,
    /// Distance between the λ₁ = 1 and λ₁ = 2 transports.
    pub lambda_gap: f64,
}

/// Runs the comparisons between x₀ = 1 and x₁ = 2, λ₀ = 1, λ₁ = 3, with
/// y = 2^{16−p}.
pub fn linearized_transport_check(prec: u32) -> Result<LinearizedReport> {
    let wp = prec + GUARD;
    let x0 = BigC::one(wp);
    let x1 = BigC::from_i64(2, wp);
    let l0 = BigC::one(wp);
    let l1 = BigC::from_i64(3, wp);
    let y = BigC(rug::Complex::with_val(wp, (Float::with_val(wp, Float::i_exp(1, 16 - prec as i32)), 0)));
    let flat = ToyConnection::new(false);
    let constant_residual =
        max_abs_diff(&flat.regularized(&x0, &x1, &l0, &l1, &y, prec), &flat.closed_form(&x0, &x1, &l0, &l1, prec));
    let toy = ToyConnection::new(true);
    let lin = toy.linearized(&x0, &x1, &l0, &l1, prec);
    let perturbed_residual = max_abs_diff(&toy.regularized(&x0, &x1, &l0, &l1, &y, prec), &lin);
    let closed_form_residual = max_abs_diff(&lin, &toy.closed_form(&x0, &x1, &l0, &l1, prec));
    let lambda_gap = max_abs_diff(
        &toy.linearized(&x0, &x1, &l0, &BigC::one(wp), prec),
        &toy.linearized(&x0, &x1, &l0, &BigC::from_i64(2, wp), prec),
    );
    Ok(LinearizedReport { constant_residual, perturbed_residual, closed_form_residual, lambda_gap })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauge_data_is_flat_and_nilpotent() {
        let toy = ToyConnection::new(true);
        // flatness for Ω = A dx/x + B dy/y: y∂_yA − x∂_xB + [B, A] = 0
        let lhs = toy
            .a
            .dy()
            .shift(1)
            .add(&toy.b.dx().shift(0).scale(&qi(-1)))
            .add(&toy.b.mul(&toy.a))
            .add(&toy.a.mul(&toy.b).scale(&qi(-1)));
        assert!(lhs.0.is_empty(), "{lhs:?}");
        assert_ne!(toy.a, PMat::constant(toy.a0.clone()));
    }

    #[test]
    fn check_contracts() {
        let r = linearized_transport_check(128).unwrap();
        assert!(r.constant_residual < 1e-25, "{r:?}");
        assert!(r.perturbed_residual < 1e-10, "{r:?}");
        assert!(r.closed_form_residual < 1e-25, "{r:?}");
        assert!(r.lambda_gap > 1e-2, "{r:?}");
    }
}
