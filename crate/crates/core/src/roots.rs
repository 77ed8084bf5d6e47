//! Roots of unity as residues k mod N.

use num_integer::Integer;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Root {
    pub k: u64,
    pub n: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_primitive: bool,
    pub order: u64,
    pub upper_half: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairRep {
    pub root: Root,
    pub self_conjugate: bool,
}

impl Root {
    pub fn new(k: i64, n: u64) -> Root {
        assert!(n >= 1, "level must be positive");
        Root { k: k.rem_euclid(n as i64) as u64, n }
    }

    pub fn unit(n: u64) -> Root {
        Root { k: 0, n }
    }

    pub fn conj(self) -> Root {
        Root::new(-(self.k as i64), self.n)
    }

    pub fn mul(self, other: Root) -> Root {
        assert_eq!(self.n, other.n);
        Root::new((self.k + other.k) as i64, self.n)
    }

    pub fn pow(self, e: u64) -> Root {
        Root { k: ((self.k as u128 * e as u128) % self.n as u128) as u64, n: self.n }
    }

    pub fn is_self_conjugate(self) -> bool {
        self.conj() == self
    }

    pub fn classify(self) -> Classification {
        let g = self.k.gcd(&self.n);
        Classification {
            is_primitive: g == 1,
            order: self.n / g,
            upper_half: self.k > 0 && 2 * self.k < self.n,
        }
    }

    pub fn label(self) -> String {
        format!("k={}", self.k)
    }
}

pub fn classify(r: Root) -> Classification {
    r.classify()
}

/// One representative per conjugate pair (the smaller residue), in increasing k.
pub fn pair_representatives(n: u64) -> Vec<PairRep> {
    (0..n)
        .filter(|&k| 2 * k <= n)
        .map(|k| {
            let root = Root { k, n };
            PairRep { root, self_conjugate: root.is_self_conjugate() }
        })
        .collect()
}

/// Primitive roots with 0 < k < N/2, the basis of the extension groups for N >= 3.
pub fn primitive_upper_half(n: u64) -> Vec<Root> {
    (1..n)
        .map(|k| Root { k, n })
        .filter(|r| {
            let c = r.classify();
            c.is_primitive && c.upper_half
        })
        .collect()
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == vec![n]
}

/// (p, e) with n = p^e, if n is a prime power (n >= 2).
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = prime_factors(n);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let (mut m, mut e) = (n, 0);
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    Some((p, e))
}
