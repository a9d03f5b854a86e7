//! Double description method over the integers.
//!
//! Given constraint vectors `a_1, ..., a_m` in `Z^n`, [`generators`] returns
//! extreme rays and a lineality basis of the cone `{ f : a_i . f >= 0 }`.
//! Constraints are inserted one at a time. While the current cone still has
//! lineality not annihilated by the new constraint, the lineality space is
//! cut down first; afterwards the usual ray update runs, with adjacency
//! decided combinatorially from the sets of tight constraints. Every vector
//! is kept primitive so intermediate numbers stay small.

use num_traits::{Signed, Zero};

use crate::linalg::{dot, primitive};
use crate::num::Int;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generators {
    /// Extreme rays of the cone modulo its lineality space, sorted.
    pub rays: Vec<Vec<Int>>,
    /// Basis of the lineality space.
    pub lineality: Vec<Vec<Int>>,
}

#[derive(Clone, PartialEq, Eq)]
struct TightSet(Vec<u64>);

impl TightSet {
    fn of(v: &[Int], constraints: &[Vec<Int>]) -> Self {
        let mut bits = vec![0u64; constraints.len().div_ceil(64)];
        for (i, a) in constraints.iter().enumerate() {
            if dot(a, v).is_zero() {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        TightSet(bits)
    }

    fn intersect(&self, other: &Self) -> Self {
        TightSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn contains(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

fn combine(s: &Int, x: &[Int], t: &Int, y: &[Int]) -> Vec<Int> {
    // s*x - t*y
    let v: Vec<Int> = x.iter().zip(y).map(|(xi, yi)| s * xi - t * yi).collect();
    primitive(&v)
}

pub fn generators(n: usize, constraints: &[Vec<Int>]) -> Generators {
    let mut lineality: Vec<Vec<Int>> = (0..n)
        .map(|i| (0..n).map(|j| Int::from((i == j) as i64)).collect())
        .collect();
    let mut rays: Vec<Vec<Int>> = Vec::new();
    let mut processed: Vec<Vec<Int>> = Vec::new();

    for a in constraints {
        debug_assert_eq!(a.len(), n);
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        if let Some(idx) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.remove(idx);
            if dot(a, &l0).is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
            }
            let s = dot(a, &l0);
            lineality = lineality
                .iter()
                .map(|l| combine(&s, l, &dot(a, l), &l0))
                .collect();
            rays = rays
                .iter()
                .map(|r| combine(&s, r, &dot(a, r), &l0))
                .collect();
            rays.push(primitive(&l0));
        } else {
            let tight: Vec<TightSet> = rays.iter().map(|r| TightSet::of(r, &processed)).collect();
            let values: Vec<Int> = rays.iter().map(|r| dot(a, r)).collect();
            let mut next = Vec::new();
            for (r, v) in rays.iter().zip(&values) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            for (i, vi) in values.iter().enumerate() {
                if !vi.is_positive() {
                    continue;
                }
                for (j, vj) in values.iter().enumerate() {
                    if !vj.is_negative() {
                        continue;
                    }
                    let common = tight[i].intersect(&tight[j]);
                    let adjacent =
                        (0..rays.len()).all(|k| k == i || k == j || !tight[k].contains(&common));
                    if adjacent {
                        // vi > 0 > vj, so vi*r_j - vj*r_i is a positive combination on a = 0
                        next.push(combine(vi, &rays[j], vj, &rays[i]));
                    }
                }
            }
            rays = next;
        }
        processed.push(a.clone());
        rays.retain(|r| r.iter().any(|x| !x.is_zero()));
        rays.sort();
        rays.dedup();
    }
    rays.sort();
    Generators { rays, lineality }
}
