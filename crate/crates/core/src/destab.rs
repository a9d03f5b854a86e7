//! Search for the divisor class `D` of a maximal destabilizing line bundle
//! `O(-D)` of the kernel sheaf attached to a basepoint-free pencil `Γ` of
//! degree `e` on a curve `C`.
//!
//! Such a `D` must satisfy
//!   1. `h^0(D) >= 2`,
//!   2. `C.D < C^2 / 2`,
//!   3. `D.(C - D) <= e`,
//!   4. `D|_C - Γ` effective, so in particular `D.C - e >= 0`.
//!
//! Conditions 2 and 3 are numerical and are enumerated exactly, level by level
//! in `C.D` over the model's effective cone. Condition 1 is replaced by the
//! largest `h^0` a class can have on the built-in models. When nothing
//! survives conditions 1-3, no pencil of degree `<= e` exists, i.e.
//! `gon(C) > e`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::RationalCone;
use crate::lattice::DivisorClass;
use crate::model::SurfaceModel;
use crate::num::{self, Int};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DestabilizerQuery {
    pub model: SurfaceModel,
    pub curve: DivisorClass,
    pub e: Int,
    pub search_cone: RationalCone,
}

impl DestabilizerQuery {
    /// Builds a query, rejecting it unless `4e < C^2`.
    ///
    /// `search_cone` defaults to the model's effective cone; every ray must
    /// pair positively with `C` so each level of the search is finite.
    pub fn new(
        model: SurfaceModel,
        curve: DivisorClass,
        e: Int,
        search_cone: Option<RationalCone>,
    ) -> Result<Self> {
        let lattice = model.lattice();
        lattice.check_class(&curve)?;
        if e.is_negative() {
            return Err(Error::input(format!(
                "pencil degree must be nonnegative, got {e}"
            )));
        }
        if model.is_ample(&curve)? == Some(false) {
            return Err(Error::input(format!(
                "curve class {curve} is not ample on {model}"
            )));
        }
        let c2 = lattice.square(&curve)?;
        if BigInt::from(4) * &e >= c2 {
            return Err(Error::Inapplicable {
                e: e.to_string(),
                c2: c2.to_string(),
            });
        }
        let search_cone = match search_cone {
            Some(cone) => cone,
            None => model.effective_cone()?,
        };
        if search_cone.lattice().as_ref() != lattice.as_ref() {
            return Err(Error::input(
                "search cone lives in a different lattice than the model",
            ));
        }
        for v in search_cone.rays() {
            let d = lattice.pair(v, &curve)?;
            if !d.is_positive() {
                return Err(Error::SliceUnbounded {
                    ray: v.to_string(),
                    degree: d.to_string(),
                });
            }
        }
        Ok(DestabilizerQuery {
            model,
            curve,
            e,
            search_cone,
        })
    }

    pub fn from_i64s(model: SurfaceModel, curve: &[i64], e: i64) -> Result<Self> {
        Self::new(model, DivisorClass::from_i64s(curve), BigInt::from(e), None)
    }
}

/// Numerical proxy for `h^0(D) >= 2`: whether some effective divisor in the
/// class can move in a pencil on the model.
pub fn pencil_capable(model: &SurfaceModel, d: &DivisorClass) -> Result<bool> {
    model.lattice().check_class(d)?;
    let x = d.coords();
    if x.iter().any(Signed::is_negative) {
        return Ok(false);
    }
    let one = BigInt::from(1);
    let two = BigInt::from(2);
    match model {
        SurfaceModel::P1xP1 => Ok((&x[0] + &one) * (&x[1] + &one) >= two),
        // h^0(L ⊠ O(y)) = deg(L) (y + 1) for deg L >= 1, and y + 1 for L trivial
        SurfaceModel::ExP1 => Ok(x[1] >= one || x[0] >= two),
        SurfaceModel::Plane
        | SurfaceModel::Rank1 { .. }
        | SurfaceModel::CompleteIntersection { .. } => Ok(x[0] >= one),
        SurfaceModel::Generic(_) => Err(Error::unsupported(
            "pencil capability is only known on built-in models",
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateSet {
    /// All integral `D` in the search cone with `C.D < C^2/2` and `D.(C-D) <= e`.
    pub raw: Vec<DivisorClass>,
    /// `D.C - e` for each raw candidate, in the same order.
    #[serde(with = "num::int_vec")]
    pub residual_degrees: Vec<Int>,
    /// Raw candidates that can move in a pencil (all of them when the filter is unavailable).
    pub pencil_filtered: Vec<DivisorClass>,
    /// Pencil-filtered candidates with `D.C - e >= 0`.
    pub surviving: Vec<DivisorClass>,
    pub pencil_filter_applied: bool,
    #[serde(default)]
    pub warnings: Vec<String>,
}

pub fn enumerate_candidates(q: &DestabilizerQuery) -> Result<CandidateSet> {
    let lattice = q.model.lattice();
    let c2 = lattice.square(&q.curve)?;
    let mut raw = Vec::new();
    let mut residual_degrees = Vec::new();
    let mut level = BigInt::zero();
    while BigInt::from(2) * &level < c2 {
        for d in q.search_cone.lattice_points_at_level(&q.curve, &level)? {
            let dd = lattice.square(&d)?;
            if &level - dd <= q.e {
                residual_degrees.push(&level - &q.e);
                raw.push(d);
            }
        }
        level += 1;
    }
    // lexicographic order overall, residuals carried along
    let mut paired: Vec<(DivisorClass, Int)> = raw.into_iter().zip(residual_degrees).collect();
    paired.sort();
    let (raw, residual_degrees): (Vec<_>, Vec<_>) = paired.into_iter().unzip();

    let mut warnings = Vec::new();
    let (pencil_filtered, pencil_filter_applied) = if q.model.is_builtin() {
        let mut kept = Vec::new();
        for d in &raw {
            if pencil_capable(&q.model, d)? {
                kept.push(d.clone());
            }
        }
        (kept, true)
    } else {
        warnings.push(
            "h^0 >= 2 is not decidable numerically on a generic model; candidates are unfiltered"
                .into(),
        );
        (raw.clone(), false)
    };
    let surviving = pencil_filtered
        .iter()
        .filter(|d| {
            let i = raw
                .binary_search(d)
                .expect("filtered candidates come from raw");
            !residual_degrees[i].is_negative()
        })
        .cloned()
        .collect();
    Ok(CandidateSet {
        raw,
        residual_degrees,
        pencil_filtered,
        surviving,
        pencil_filter_applied,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survivor {
    pub class: DivisorClass,
    /// `D.C - e`, the degree of the effective class `D|_C - Γ`.
    #[serde(with = "num::int")]
    pub residual: Int,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// No destabilizing class exists, so no basepoint-free pencil of degree
    /// `<= e` does either: `gon(C) > e`.
    NoPencil {
        #[serde(with = "num::int")]
        gonality_exceeds: Int,
    },
    /// Candidates remain; no contradiction is claimed.
    Survivors { candidates: Vec<Survivor> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DestabCertificate {
    pub model: String,
    pub curve: DivisorClass,
    #[serde(with = "num::int")]
    pub e: Int,
    #[serde(with = "num::int")]
    pub curve_square: Int,
    pub candidates: CandidateSet,
    pub verdict: Verdict,
}

pub fn contradiction_certificate(q: &DestabilizerQuery) -> Result<DestabCertificate> {
    let candidates = enumerate_candidates(q)?;
    let verdict = if candidates.pencil_filtered.is_empty() {
        Verdict::NoPencil {
            gonality_exceeds: q.e.clone(),
        }
    } else {
        let lattice = q.model.lattice();
        let survivors = candidates
            .surviving
            .iter()
            .map(|d| {
                Ok(Survivor {
                    class: d.clone(),
                    residual: lattice.pair(d, &q.curve)? - &q.e,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Verdict::Survivors {
            candidates: survivors,
        }
    };
    Ok(DestabCertificate {
        model: q.model.name(),
        curve: q.curve.clone(),
        e: q.e.clone(),
        curve_square: q.model.lattice().square(&q.curve)?,
        candidates,
        verdict,
    })
}
