use crate::ring::{Domain, Ring};
use crate::Q;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Integer};
use std::fmt;

pub const DEFAULT_PREC: u32 = 128;

/// A complex number carrying its binary precision.
#[derive(Clone, PartialEq)]
pub struct BigC(pub Complex);

impl fmt::Debug for BigC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

impl fmt::Display for BigC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(30))
    }
}

fn float_str(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix(10, Some(digits))
}

pub(crate) fn rug_int(x: &num_bigint::BigInt) -> Integer {
    Integer::from_str_radix(&x.to_str_radix(16), 16).expect("integer conversion")
}

pub(crate) fn rug_rat(q: &Q) -> rug::Rational {
    rug::Rational::from((rug_int(q.numer()), rug_int(q.denom())))
}

impl BigC {
    pub fn prec(&self) -> u32 {
        self.0.prec().0
    }

    pub fn zero(prec: u32) -> BigC {
        BigC(Complex::new(prec))
    }

    pub fn one(prec: u32) -> BigC {
        BigC::from_i64(1, prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> BigC {
        BigC(Complex::with_val(prec, (n, 0)))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> BigC {
        BigC(Complex::with_val(prec, (re, im)))
    }

    pub fn from_q(q: &Q, prec: u32) -> BigC {
        BigC(Complex::with_val(prec, (rug_rat(q), 0)))
    }

    pub fn from_float(re: Float, im: Float) -> BigC {
        let prec = re.prec().max(im.prec());
        BigC(Complex::with_val(prec, (re, im)))
    }

    pub fn i(prec: u32) -> BigC {
        BigC(Complex::with_val(prec, (0, 1)))
    }

    pub fn pi(prec: u32) -> BigC {
        BigC(Complex::with_val(prec, (Float::with_val(prec, Constant::Pi), 0)))
    }

    pub fn two_pi_i(prec: u32) -> BigC {
        let pi = Float::with_val(prec, Constant::Pi);
        BigC(Complex::with_val(prec, (0, pi * 2u32)))
    }

    /// e^{2πik/N}, computed from the exact angle.
    pub fn root_of_unity(k: u64, n: u64, prec: u32) -> BigC {
        let k = k % n;
        if k == 0 {
            return BigC::one(prec);
        }
        if 2 * k == n {
            return BigC::from_i64(-1, prec);
        }
        if 4 * k == n {
            return BigC::i(prec);
        }
        if 4 * k == 3 * n {
            return BigC::i(prec).neg();
        }
        let theta = Float::with_val(prec + 16, Constant::Pi) * 2u32 * Float::with_val(prec + 16, k) / Float::with_val(prec + 16, n);
        let (s, c) = theta.sin_cos(Float::new(prec + 16));
        BigC(Complex::with_val(prec, (c, s)))
    }

    pub fn with_prec(&self, prec: u32) -> BigC {
        BigC(Complex::with_val(prec, &self.0))
    }

    pub fn add(&self, o: &BigC) -> BigC {
        BigC(Complex::with_val(self.prec(), &self.0 + &o.0))
    }

    pub fn sub(&self, o: &BigC) -> BigC {
        BigC(Complex::with_val(self.prec(), &self.0 - &o.0))
    }

    pub fn mul(&self, o: &BigC) -> BigC {
        BigC(Complex::with_val(self.prec(), &self.0 * &o.0))
    }

    pub fn div(&self, o: &BigC) -> BigC {
        BigC(Complex::with_val(self.prec(), &self.0 / &o.0))
    }

    pub fn neg(&self) -> BigC {
        BigC(Complex::with_val(self.prec(), -&self.0))
    }

    pub fn conj(&self) -> BigC {
        BigC(self.0.clone().conj())
    }

    pub fn mul_q(&self, q: &Q) -> BigC {
        BigC(Complex::with_val(self.prec(), &self.0 * rug_rat(q)))
    }

    pub fn mul_f(&self, x: &Float) -> BigC {
        BigC(Complex::with_val(self.prec(), &self.0 * x))
    }

    pub fn mul_i64(&self, n: i64) -> BigC {
        BigC(Complex::with_val(self.prec(), &self.0 * n))
    }

    pub fn div_i64(&self, n: i64) -> BigC {
        BigC(Complex::with_val(self.prec(), &self.0 / n))
    }

    pub fn pow_u(&self, e: u32) -> BigC {
        BigC(Complex::with_val(self.prec(), (&self.0).pow(e)))
    }

    pub fn pow_i(&self, e: i32) -> BigC {
        BigC(Complex::with_val(self.prec(), (&self.0).pow(e)))
    }

    pub fn exp(&self) -> BigC {
        BigC(self.0.clone().exp())
    }

    /// Principal logarithm.
    pub fn ln(&self) -> BigC {
        BigC(self.0.clone().ln())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.0.abs_ref())
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    pub fn re(&self) -> &Float {
        self.0.real()
    }

    pub fn im(&self) -> &Float {
        self.0.imag()
    }

    pub fn re_f64(&self) -> f64 {
        self.0.real().to_f64()
    }

    pub fn im_f64(&self) -> f64 {
        self.0.imag().to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.real().is_zero() && self.0.imag().is_zero()
    }

    pub fn dist(&self, o: &BigC) -> f64 {
        self.sub(o).abs_f64()
    }

    /// Decimal rendering "re+imi" with the given number of significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let re = float_str(self.re(), digits);
        let im = float_str(self.im(), digits);
        if self.im().is_zero() {
            re
        } else if self.im().is_sign_negative() {
            format!("{re}{im}i")
        } else {
            format!("{re}+{im}i")
        }
    }

    pub fn to_json(&self, digits: usize) -> serde_json::Value {
        serde_json::json!({"re": float_str(self.re(), digits), "im": float_str(self.im(), digits)})
    }
}

/// Complex numbers at a fixed precision as a coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CRing {
    pub prec: u32,
}

impl Ring for CRing {
    type E = BigC;
    fn zero(&self) -> BigC {
        BigC::zero(self.prec)
    }
    fn one(&self) -> BigC {
        BigC::one(self.prec)
    }
    fn is_zero(&self, a: &BigC) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigC, b: &BigC) -> BigC {
        a.add(b)
    }
    fn sub(&self, a: &BigC, b: &BigC) -> BigC {
        a.sub(b)
    }
    fn mul(&self, a: &BigC, b: &BigC) -> BigC {
        a.mul(b)
    }
    fn neg(&self, a: &BigC) -> BigC {
        a.neg()
    }
    fn from_q(&self, q: &Q) -> BigC {
        BigC::from_q(q, self.prec)
    }
    fn domain(&self) -> Domain {
        Domain::Complex
    }
    fn render(&self, a: &BigC) -> String {
        a.to_decimal(20)
    }
}

/// Best rational approximation with denominator ≤ max_den, accepted only if
/// it lies within `tol` of x.
pub fn reconstruct(x: &Float, max_den: u64, tol: &Float) -> Option<Q> {
    let exact = x.to_rational()?;
    let (mut p0, mut q0, mut p1, mut q1) = (Integer::from(0), Integer::from(1), Integer::from(1), Integer::from(0));
    let mut r = exact;
    let mut best = None;
    for _ in 0..200 {
        let (frac, a) = r.fract_floor(Integer::new());
        let p2 = Integer::from(&a * &p1) + &p0;
        let q2 = Integer::from(&a * &q1) + &q0;
        if q2 > max_den {
            break;
        }
        best = Some((p2.clone(), q2.clone()));
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        if frac.is_zero() {
            break;
        }
        r = frac.recip();
    }
    let (p, q) = best?;
    let cand = Q::new(
        num_bigint::BigInt::parse_bytes(p.to_string_radix(16).as_bytes(), 16)?,
        num_bigint::BigInt::parse_bytes(q.to_string_radix(16).as_bytes(), 16)?,
    );
    let diff = Float::with_val(x.prec(), x - rug_rat(&cand)).abs();
    if diff <= *tol {
        Some(cand)
    } else {
        None
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn arithmetic() {
        let p = 128;
        let a = BigC::from_q(&q(1, 3), p);
        let b = a.mul_i64(3);
        assert!(b.sub(&BigC::one(p)).abs_f64() < 1e-37);
        let z = BigC::root_of_unity(1, 5, p);
        assert!(z.pow_u(5).sub(&BigC::one(p)).abs_f64() < 1e-36);
        assert!(BigC::two_pi_i(p).exp().sub(&BigC::one(p)).abs_f64() < 1e-36);
        assert_eq!(BigC::root_of_unity(3, 4, p), BigC::i(p).neg());
        assert!(BigC::i(p).ln().sub(&BigC::pi(p).mul(&BigC::i(p)).div_i64(2)).abs_f64() < 1e-37);
    }

    #[test]
    fn reconstruction() {
        let p = 192;
        let x = BigC::from_q(&q(-25, 24), p);
        let tol = Float::with_val(p, Float::i_exp(1, -150));
        assert_eq!(reconstruct(x.re(), 1_000_000, &tol), Some(q(-25, 24)));
        let pi = BigC::pi(p);
        assert_eq!(reconstruct(pi.re(), 1_000_000, &tol), None);
        let z = BigC::zero(p);
        assert_eq!(reconstruct(z.re(), 10, &tol), Some(q(0, 1)));
    }
}
