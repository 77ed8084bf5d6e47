//! Exact rational helpers and Bernoulli numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::Mutex;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qpow(base: &Q, e: i64) -> Q {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// "num/den" or "num" when the denominator is 1.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n.trim().parse().ok()?, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

static BERNOULLI: Mutex<Vec<Q>> = Mutex::new(Vec::new());

/// Bernoulli number B_n with B_1 = -1/2, the coefficients of x/(e^x - 1).
pub fn bernoulli(n: usize) -> Q {
    let mut table = BERNOULLI.lock().unwrap();
    while table.len() <= n {
        let m = table.len();
        if m == 0 {
            table.push(Q::one());
            continue;
        }
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = Q::zero();
        for (k, b) in table.iter().enumerate() {
            acc += Q::from_integer(binomial(m as u32 + 1, k as u32)) * b;
        }
        table.push(-acc / Q::from_integer(BigInt::from(m + 1)));
    }
    table[n].clone()
}

/// Bernoulli polynomial B_n(x) = sum_k C(n,k) B_k x^{n-k}.
pub fn bernoulli_poly(n: usize, x: &Q) -> Q {
    let mut acc = Q::zero();
    for k in 0..=n {
        acc += Q::from_integer(binomial(n as u32, k as u32)) * bernoulli(k) * qpow(x, (n - k) as i64);
    }
    acc
}

/// Taylor coefficients of x/(e^x - 1): B_n / n!.
pub fn bern_coeffs(len: usize) -> Vec<Q> {
    (0..len)
        .map(|n| bernoulli(n) / Q::from_integer(factorial(n as u32)))
        .collect()
}

/// Taylor coefficients of x/(e^{-x} - 1) = -sum B_n (-x)^n / n!.
pub fn bern_neg_coeffs(len: usize) -> Vec<Q> {
    (0..len)
        .map(|n| {
            let c = bernoulli(n) / Q::from_integer(factorial(n as u32));
            if n % 2 == 0 {
                -c
            } else {
                c
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_numbers() {
        assert_eq!(bernoulli(0), qi(1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), qi(0));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(12), q(-691, 2730));
    }

    #[test]
    fn bernoulli_polynomials() {
        assert_eq!(bernoulli_poly(2, &q(1, 2)), q(-1, 12));
        assert_eq!(bernoulli_poly(3, &q(1, 3)), q(1, 27));
        // B_n(1-x) = (-1)^n B_n(x)
        for n in 0..8 {
            let x = q(2, 7);
            let s = if n % 2 == 0 { qi(1) } else { qi(-1) };
            assert_eq!(bernoulli_poly(n, &(qi(1) - &x)), s * bernoulli_poly(n, &x));
        }
    }

    #[test]
    fn generating_functions_sum_to_minus_x() {
        let a = bern_coeffs(12);
        let b = bern_neg_coeffs(12);
        for n in 0..12 {
            let expect = if n == 1 { qi(-1) } else { qi(0) };
            assert_eq!(&a[n] + &b[n], expect);
        }
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["-25/24", "3", "0", "7/9"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
    }
}
