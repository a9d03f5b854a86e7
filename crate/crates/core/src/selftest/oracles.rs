//! Brute-force reference implementations. Nothing here calls into the cone,
//! exc or destab code paths: cones are given by hand-written inequalities and
//! points are found by scanning boxes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::linalg::Inertia;
use crate::num::{Int, Rat};

/// Characteristic polynomial coefficients `c_0, ..., c_n` (monic, `c_n = 1`)
/// by Faddeev-LeVerrier.
pub fn charpoly(a: &[Vec<Int>]) -> Vec<Rat> {
    let n = a.len();
    let a: Vec<Vec<Rat>> = a
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut c = vec![Rat::zero(); n + 1];
    c[n] = Rat::from_integer(BigInt::from(1));
    let mut m = vec![vec![Rat::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rat::zero();
                for l in 0..n {
                    s += &a[i][l] * &m[l][j];
                }
                if i == j {
                    s += &c[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = Rat::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &m[l][i];
            }
        }
        c[n - k] = -tr / Rat::from_integer(BigInt::from(k));
    }
    c
}

fn sign_changes<'a>(coeffs: impl Iterator<Item = &'a Rat>, flip_odd: bool) -> usize {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for (i, c) in coeffs.enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut pos = c.is_positive();
        if flip_odd && i % 2 == 1 {
            pos = !pos;
        }
        if let Some(prev) = last {
            if prev != pos {
                changes += 1;
            }
        }
        last = Some(pos);
    }
    changes
}

/// Signature of a symmetric matrix from Descartes' rule on its characteristic
/// polynomial; exact because all roots are real.
pub fn signature_by_charpoly(a: &[Vec<Int>]) -> Inertia {
    let c = charpoly(a);
    let zero = c.iter().position(|x| !x.is_zero()).unwrap_or(0);
    Inertia {
        positive: sign_changes(c.iter(), false),
        negative: sign_changes(c.iter(), true),
        zero,
    }
}

pub fn pair(gram: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut s = 0;
    for (i, row) in gram.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            s += a[i] * g * b[j];
        }
    }
    s
}

/// Every integer point of the box `lo[i] <= x[i] <= hi[i]`, in lexicographic order.
pub fn box_points(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for (l, h) in lo.iter().zip(hi) {
        let mut next = Vec::new();
        for prefix in &out {
            for x in *l..=*h {
                let mut p = prefix.clone();
                p.push(x);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

pub fn in_cone(facets: &[Vec<i64>], x: &[i64]) -> bool {
    facets
        .iter()
        .all(|f| f.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() >= 0)
}

/// A cone given by Euclidean inequalities together with a box that contains
/// every cone point of level at most `horizon`.
#[derive(Debug, Clone)]
pub struct BoxedCone {
    pub gram: Vec<Vec<i64>>,
    pub rays: Vec<Vec<i64>>,
    pub facets: Vec<Vec<i64>>,
    pub p: Vec<i64>,
    pub horizon: i64,
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

/// `{H in cone : 1 <= H.P <= horizon, 9 H.P > H.H}`, sorted by (level, lex).
pub fn exc_by_box(c: &BoxedCone) -> Vec<Vec<i64>> {
    let mut out: Vec<(i64, Vec<i64>)> = box_points(&c.lo, &c.hi)
        .into_iter()
        .filter(|h| in_cone(&c.facets, h))
        .filter_map(|h| {
            let l = pair(&c.gram, &h, &c.p);
            let sq = pair(&c.gram, &h, &h);
            (l >= 1 && l <= c.horizon && 9 * l > sq).then_some((l, h))
        })
        .collect();
    out.sort();
    out.into_iter().map(|(_, h)| h).collect()
}

pub fn level_by_box(c: &BoxedCone, level: i64) -> Vec<Vec<i64>> {
    box_points(&c.lo, &c.hi)
        .into_iter()
        .filter(|h| in_cone(&c.facets, h) && pair(&c.gram, h, &c.p) == level)
        .collect()
}

/// Raw destabilizer candidates: `D >= 0` coordinatewise (the effective cone of
/// the built-in surfaces), `C.D < C^2/2`, `D.(C-D) <= e`.
pub fn destab_raw_by_box(gram: &[Vec<i64>], c: &[i64], e: i64) -> Vec<Vec<i64>> {
    let c2 = pair(gram, c, c);
    let n = c.len();
    // for the orthant, C.D < C^2/2 bounds every coordinate by C^2
    let hi = vec![c2.max(0); n];
    box_points(&vec![0; n], &hi)
        .into_iter()
        .filter(|d| {
            let cd = pair(gram, c, d);
            2 * cd < c2 && cd - pair(gram, d, d) <= e
        })
        .collect()
}

/// `h^0(O(a,b))` on `P^1 x P^1`.
pub fn h0_p1p1(a: i64, b: i64) -> i64 {
    if a < 0 || b < 0 {
        0
    } else {
        (a + 1) * (b + 1)
    }
}

/// Largest `h^0` of a line bundle `L ⊠ O(y)` on `E x P^1` with `deg L = x`.
pub fn max_h0_exp1(x: i64, y: i64) -> i64 {
    match (x, y) {
        (x, y) if x < 0 || y < 0 => 0,
        (0, y) => y + 1,
        (x, y) => x * (y + 1),
    }
}

/// `h^0(O(a))` on `P^2`.
pub fn h0_plane(a: i64) -> i64 {
    if a < 0 {
        0
    } else {
        (a + 1) * (a + 2) / 2
    }
}

/// The cones used by the exceptional-set completeness checks.
pub fn standard_cones() -> Vec<(&'static str, BoxedCone)> {
    let p1p1 = vec![vec![0, 1], vec![1, 0]];
    let orthant = |horizon: i64| (vec![0, 0], vec![horizon, horizon]);
    let mut out = Vec::new();
    let (lo, hi) = orthant(25);
    out.push((
        "p1p1 <(1,2),(2,1)>",
        BoxedCone {
            gram: p1p1.clone(),
            rays: vec![vec![1, 2], vec![2, 1]],
            facets: vec![vec![-1, 2], vec![2, -1]],
            p: vec![1, 1],
            horizon: 25,
            lo,
            hi,
        },
    ));
    let (lo, hi) = orthant(22);
    out.push((
        "p1p1 <(1,1)>",
        BoxedCone {
            gram: p1p1.clone(),
            rays: vec![vec![1, 1]],
            facets: vec![vec![1, -1], vec![-1, 1], vec![1, 1]],
            p: vec![1, 1],
            horizon: 22,
            lo,
            hi,
        },
    ));
    let (lo, hi) = orthant(25);
    out.push((
        "p1p1 <(1,1),(1,2)>",
        BoxedCone {
            gram: p1p1.clone(),
            rays: vec![vec![1, 1], vec![1, 2]],
            facets: vec![vec![-1, 1], vec![2, -1]],
            p: vec![1, 1],
            horizon: 25,
            lo,
            hi,
        },
    ));
    let (lo, hi) = orthant(28);
    out.push((
        "p1p1 <(1,3),(3,1)>",
        BoxedCone {
            gram: p1p1,
            rays: vec![vec![1, 3], vec![3, 1]],
            facets: vec![vec![-1, 3], vec![3, -1]],
            p: vec![1, 1],
            horizon: 28,
            lo,
            hi,
        },
    ));
    out.push((
        "rank1 [[2]] <(1)>",
        BoxedCone {
            gram: vec![vec![2]],
            rays: vec![vec![1]],
            facets: vec![vec![1]],
            p: vec![1],
            horizon: 22,
            lo: vec![0],
            hi: vec![11],
        },
    ));
    out.push((
        "diag(1,-1,-1) square pyramid",
        BoxedCone {
            gram: vec![vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]],
            rays: vec![vec![3, 1, 0], vec![3, 0, 1], vec![3, -1, 0], vec![3, 0, -1]],
            facets: vec![
                vec![1, -3, -3],
                vec![1, -3, 3],
                vec![1, 3, -3],
                vec![1, 3, 3],
            ],
            p: vec![1, 0, 0],
            horizon: 15,
            lo: vec![0, -5, -5],
            hi: vec![15, 5, 5],
        },
    ));
    out
}

/// Level bounds `ceil(9/m) - 1` for [`standard_cones`], worked out by hand from
/// the ray minima of `v.v / (v.P)^2`.
pub const STANDARD_LEVEL_BOUNDS: [i64; 6] = [20, 17, 20, 23, 17, 10];
