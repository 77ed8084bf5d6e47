//! Exact row reduction over the rationals.

use crate::Q;
use num_traits::Zero;

/// Reduced row echelon form. Pivots are chosen as the first nonzero entry
/// scanning columns left to right, so column order decides which variables
/// end up free.
#[derive(Debug, Clone)]
pub struct Rref {
    pub rows: Vec<Vec<Q>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

pub fn rref(mut rows: Vec<Vec<Q>>, ncols: usize) -> Rref {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Rref { rows, pivots, ncols }
}

pub fn rank(rows: &[Vec<Q>], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).pivots.len()
}

impl Rref {
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Reduce a vector against the row space; zero result means membership.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[c].is_zero() {
                continue;
            }
            let f = v[c].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Basis of the null space {x : rows·x = 0}.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut x = vec![Q::zero(); self.ncols];
                x[f] = Q::from_integer(1.into());
                for (row, &c) in self.rows.iter().zip(&self.pivots) {
                    x[c] = -row[f].clone();
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect()
    }

    #[test]
    fn small_rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let r = rref(a.clone(), 3);
        assert_eq!(r.pivots, vec![0, 1]);
        let ns = r.nullspace();
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot: Q = row.iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
    }

    proptest! {
        #[test]
        fn nullspace_is_annihilated(entries in proptest::collection::vec(-3i64..4, 12)) {
            let a: Vec<Vec<Q>> = entries.chunks(4).map(|c| c.iter().map(|&x| qi(x)).collect()).collect();
            let r = rref(a.clone(), 4);
            let ns = r.nullspace();
            prop_assert_eq!(ns.len() + r.pivots.len(), 4);
            for v in &ns {
                for row in &a {
                    let dot: Q = row.iter().zip(v).map(|(x, y)| x * y).sum();
                    prop_assert!(dot.is_zero());
                }
            }
            for row in &a {
                prop_assert!(r.contains(row));
            }
        }
    }
}
