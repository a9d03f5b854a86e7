//! Enumeration of the exceptional set `Exc_P(N)`: integral classes `H` in a
//! cone `N` with `9 H.P > H.H`.
//!
//! Levels `l = H.P` are scanned from 1. With `m` the slice minimum of the
//! cone, every `H` at level `l` has `H.H >= m l^2`, so no level with
//! `m l >= 9` can contribute and the scan stops at `ceil(9/m) - 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::cone::RationalCone;
use crate::lattice::{DivisorClass, IntersectionLattice};
use crate::num::{self, Int, Rat};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcMember {
    pub class: DivisorClass,
    #[serde(with = "num::int")]
    pub level: Int,
    /// `H.H`
    #[serde(with = "num::int")]
    pub square: Int,
    /// `9 H.P`
    #[serde(with = "num::int")]
    pub nine_hp: Int,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcReport {
    pub members: Vec<ExcMember>,
    #[serde(with = "num::int")]
    pub level_bound: Int,
    #[serde(with = "num::rational")]
    pub slice_min: Rat,
}

impl ExcReport {
    pub fn classes(&self) -> Vec<DivisorClass> {
        self.members.iter().map(|m| m.class.clone()).collect()
    }
}

/// `9 H.P > H.H`, the defining inequality of the exceptional set.
pub fn is_exceptional(
    lattice: &IntersectionLattice,
    h: &DivisorClass,
    p: &DivisorClass,
) -> Result<bool> {
    let hp = lattice.pair(h, p)?;
    let hh = lattice.pair(h, h)?;
    Ok(BigInt::from(9) * hp > hh)
}

/// Largest integer `l` with `m l < 9`.
pub fn level_bound(slice_min: &Rat) -> Int {
    debug_assert!(slice_min.is_positive());
    num::ceil(&(BigRational::from_integer(BigInt::from(9)) / slice_min)) - BigInt::one()
}

pub fn exc_set(cone: &RationalCone, p: &DivisorClass) -> Result<ExcReport> {
    exc_set_with_cut(cone, p, 0)
}

/// [`exc_set`] with the level bound lowered by `cut`. Only the selftest's
/// negative control uses a nonzero cut.
pub fn exc_set_with_cut(cone: &RationalCone, p: &DivisorClass, cut: u32) -> Result<ExcReport> {
    let lattice = cone.lattice().as_ref();
    for v in cone.rays() {
        let vv = lattice.pair(v, v)?;
        if !vv.is_positive() {
            return Err(Error::PossiblyInfinite {
                slice_min: format!("<= 0; ray {v} has self-intersection {vv}"),
            });
        }
    }
    let slice = cone.slice_min_square(p)?;
    if slice.touches_boundary {
        return Err(Error::PossiblyInfinite {
            slice_min: num::render_rat(&slice.value),
        });
    }
    let bound = level_bound(&slice.value) - BigInt::from(cut);
    let mut members = Vec::new();
    let nine = BigInt::from(9);
    let mut level = BigInt::one();
    while level <= bound {
        for h in cone.lattice_points_at_level(p, &level)? {
            let square = lattice.pair(&h, &h)?;
            let nine_hp = &nine * &level;
            if nine_hp > square {
                members.push(ExcMember {
                    class: h,
                    level: level.clone(),
                    square,
                    nine_hp,
                });
            }
        }
        level += 1;
    }
    Ok(ExcReport {
        members,
        level_bound: bound,
        slice_min: slice.value,
    })
}
