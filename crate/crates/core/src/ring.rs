//! Coefficient domains shared by series and the mod-D² model.

use crate::rational::fmt_q;
use crate::Q;
use num_traits::{One, Zero};
use std::fmt::Debug;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Domain {
    Rational,
    Complex,
    Symbolic,
}

/// A commutative coefficient ring carried as an explicit value, so that
/// context such as numeric precision travels with the data.
pub trait Ring: Clone + Debug + PartialEq {
    type E: Clone + Debug + PartialEq;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn from_q(&self, q: &Q) -> Self::E;
    fn domain(&self) -> Domain;
    fn render(&self, a: &Self::E) -> String;

    fn mul_q(&self, a: &Self::E, q: &Q) -> Self::E {
        self.mul(a, &self.from_q(q))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct QRing;

impl Ring for QRing {
    type E = Q;
    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn from_q(&self, q: &Q) -> Q {
        q.clone()
    }
    fn domain(&self) -> Domain {
        Domain::Rational
    }
    fn render(&self, a: &Q) -> String {
        fmt_q(a)
    }
}
