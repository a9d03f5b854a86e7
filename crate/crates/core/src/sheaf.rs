//! Chern-character numerics on a surface: discriminant, slope, and the
//! Bogomolov instability trigger.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::lattice::{DivisorClass, IntersectionLattice};
use crate::num::{self, Int, Rat};
use crate::{Error, Result};

/// `(ch0, ch1, ch2)` with `ch2` kept as an exact rational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernCharacter {
    #[serde(with = "num::int")]
    pub ch0: Int,
    pub ch1: DivisorClass,
    #[serde(with = "num::rational")]
    pub ch2: Rat,
}

impl ChernCharacter {
    pub fn new(ch0: Int, ch1: DivisorClass, ch2: Rat) -> Self {
        ChernCharacter { ch0, ch1, ch2 }
    }

    /// Character of the kernel `F` of `O_S^2 -> i_* O_C(Γ)` for a pencil of
    /// degree `e` on `C`: `(2, -C, C.C/2 - e)`.
    pub fn kernel_sheaf(lattice: &IntersectionLattice, c: &DivisorClass, e: &Int) -> Result<Self> {
        let c2 = lattice.square(c)?;
        let ch2 = BigRational::new(c2, BigInt::from(2)) - BigRational::from_integer(e.clone());
        Ok(ChernCharacter {
            ch0: BigInt::from(2),
            ch1: -c,
            ch2,
        })
    }

    /// `2 ch0 ch2 - ch1.ch1`.
    pub fn discriminant(&self, lattice: &IntersectionLattice) -> Result<Rat> {
        let c1sq = lattice.square(&self.ch1)?;
        let two_ch0 = BigRational::from_integer(BigInt::from(2) * &self.ch0);
        Ok(two_ch0 * &self.ch2 - BigRational::from_integer(c1sq))
    }

    /// `mu_H = (ch1.H) / ch0`.
    pub fn slope(&self, lattice: &IntersectionLattice, h: &DivisorClass) -> Result<Rat> {
        if self.ch0.is_zero() {
            return Err(Error::input("slope is undefined for a rank-zero character"));
        }
        let hh = lattice.square(h)?;
        if !hh.is_positive() {
            return Err(Error::input(format!("slope needs H.H > 0, got {hh}")));
        }
        Ok(BigRational::new(
            lattice.pair(&self.ch1, h)?,
            self.ch0.clone(),
        ))
    }

    /// `Δ > 0`: by Bogomolov's inequality the sheaf cannot be μ-semistable
    /// for any ample class.
    pub fn bogomolov_unstable(&self, lattice: &IntersectionLattice) -> Result<bool> {
        Ok(self.discriminant(lattice)?.is_positive())
    }
}

/// Everything the `sheaf` report shows for a curve class and pencil degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafReport {
    pub character: ChernCharacter,
    #[serde(with = "num::rational")]
    pub discriminant: Rat,
    /// Slope with respect to the curve class itself.
    #[serde(with = "num::rational")]
    pub slope_c: Rat,
    pub unstable: bool,
}

pub fn sheaf_report(
    lattice: &IntersectionLattice,
    c: &DivisorClass,
    e: &Int,
) -> Result<SheafReport> {
    let character = ChernCharacter::kernel_sheaf(lattice, c, e)?;
    let discriminant = character.discriminant(lattice)?;
    let slope_c = character.slope(lattice, c)?;
    let unstable = discriminant.is_positive();
    Ok(SheafReport {
        character,
        discriminant,
        slope_c,
        unstable,
    })
}
