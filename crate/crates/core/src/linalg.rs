//! Exact linear algebra over the rationals: inertia of symmetric forms,
//! rank, and small linear solves. No floating point anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::num::{Int, Rat};

/// Counts of positive, negative and zero eigenvalues of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    /// Signature `(1, n - 1)` with no kernel.
    pub fn is_hyperbolic(&self) -> bool {
        self.positive == 1 && self.zero == 0
    }
}

/// Euclidean dot product of integer vectors of equal length.
pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divides a nonzero integer vector by the gcd of its entries.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

fn to_rat_matrix(m: &[Vec<Int>]) -> Vec<Vec<Rat>> {
    m.iter()
        .map(|row| row.iter().cloned().map(BigRational::from_integer).collect())
        .collect()
}

/// Inertia of a symmetric integer matrix via symmetric Gaussian elimination
/// (congruence transforms), which preserves inertia by Sylvester's law.
///
/// A zero diagonal with a nonzero off-diagonal entry `a_ij` is repaired by
/// adding row/column `j` to row/column `i`, making the new diagonal entry
/// `2 a_ij`.
pub fn inertia(gram: &[Vec<Int>]) -> Inertia {
    let n = gram.len();
    let mut a = to_rat_matrix(gram);
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };

    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let off = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero());
                match off {
                    None => {
                        out.zero += n - k;
                        return out;
                    }
                    Some((i, j)) => {
                        // row_i += row_j, then col_i += col_j
                        for c in 0..n {
                            let v = a[j][c].clone();
                            a[i][c] += v;
                        }
                        for r in 0..n {
                            let v = a[r][j].clone();
                            a[r][i] += v;
                        }
                        i
                    }
                }
            }
        };
        if p != k {
            a.swap(p, k);
            for row in a.iter_mut() {
                row.swap(p, k);
            }
        }
        let d = a[k][k].clone();
        if d.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &d;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for r in k..n {
                let v = &f * &a[r][k];
                a[r][i] -= v;
            }
        }
    }
    out
}

/// Row echelon form in place; returns the pivot column of each pivot row.
fn echelon(m: &mut [Vec<Rat>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let lead = m[row][col].clone();
        for c in col..m[row].len() {
            m[row][c] = &m[row][c] / &lead;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..m[r].len() {
                    let v = &f * &m[row][c];
                    m[r][c] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Rank of a list of integer vectors.
pub fn rank(vectors: &[Vec<Int>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let ncols = first.len();
    let mut m = to_rat_matrix(vectors);
    echelon(&mut m, ncols).len()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solve {
    /// Columns independent and the system consistent.
    Unique(Vec<Rat>),
    Inconsistent,
    /// Columns linearly dependent; no unique solution is reported.
    Dependent,
}

/// Solves `sum_j c_j * columns[j] = rhs` exactly.
pub fn solve_columns(columns: &[&[Int]], rhs: &[Int]) -> Solve {
    let n = rhs.len();
    let k = columns.len();
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            columns
                .iter()
                .map(|c| BigRational::from_integer(c[r].clone()))
                .chain(std::iter::once(BigRational::from_integer(rhs[r].clone())))
                .collect()
        })
        .collect();
    let pivots = echelon(&mut m, k + 1);
    if pivots.last() == Some(&k) {
        return Solve::Inconsistent;
    }
    if pivots.len() < k {
        return Solve::Dependent;
    }
    Solve::Unique((0..k).map(|i| m[i][k].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{int, rat};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn inertia_of_small_forms() {
        let h = inertia(&m(&[&[0, 1], &[1, 0]]));
        assert_eq!(
            h,
            Inertia {
                positive: 1,
                negative: 1,
                zero: 0
            }
        );
        assert_eq!(
            inertia(&m(&[&[2]])),
            Inertia {
                positive: 1,
                negative: 0,
                zero: 0
            }
        );
        assert_eq!(
            inertia(&m(&[&[1, 0], &[0, 1]])),
            Inertia {
                positive: 2,
                negative: 0,
                zero: 0
            }
        );
        assert_eq!(
            inertia(&m(&[&[1, 1], &[1, 1]])),
            Inertia {
                positive: 1,
                negative: 0,
                zero: 1
            }
        );
        assert_eq!(
            inertia(&m(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]])),
            Inertia {
                positive: 1,
                negative: 1,
                zero: 1
            }
        );
    }

    #[test]
    fn solve_and_rank() {
        let a = [int(1), int(2)];
        let b = [int(2), int(1)];
        let x = solve_columns(&[&a, &b], &[int(1), int(0)]);
        assert_eq!(x, Solve::Unique(vec![rat(-1, 3), rat(2, 3)]));
        assert_eq!(solve_columns(&[&a], &[int(1), int(0)]), Solve::Inconsistent);
        assert_eq!(
            solve_columns(&[&a, &a], &[int(2), int(4)]),
            Solve::Dependent
        );
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 0]])), 2);
        assert_eq!(primitive(&[int(4), int(-6)]), vec![int(2), int(-3)]);
    }
}
