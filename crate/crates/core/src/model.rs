//! Built-in surface models and curve specifications.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::cone::RationalCone;
use crate::lattice::{DivisorClass, IntersectionLattice};
use crate::num::Int;
use crate::{Error, Result};

/// A surface given only through the data the bounds need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericModel {
    pub lattice: Arc<IntersectionLattice>,
    /// Closed subcone asserted to lie in the ample cone.
    pub ample_cone: Option<RationalCone>,
    /// Cone containing every effective class (used as the destabilizer search space).
    pub effective_cone: Option<RationalCone>,
    /// A very ample class, used for projection bounds and the exceptional-set test.
    pub very_ample: Option<DivisorClass>,
    pub irregularity_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceModel {
    /// `P^2` with `NS = Z.O(1)`.
    Plane,
    /// `P^1 x P^1`, classes `(d1, d2)` of bidegree.
    P1xP1,
    /// `E x P^1` with `E` an elliptic curve, classes `x F1 + y F2` written `(x, y)`.
    ExP1,
    /// Picard rank one with `O(1)^2 = d` and `O(1)` very ample.
    Rank1 {
        d: Int,
    },
    /// Complete intersection curve of type `d1 <= ... <= d_{n-1}` in `P^n`,
    /// viewed on the surface cut out by `d2, ..., d_{n-1}`.
    CompleteIntersection {
        degrees: Vec<Int>,
    },
    Generic(GenericModel),
}

fn hyperbolic_plane(canonical: &[i64]) -> IntersectionLattice {
    IntersectionLattice::from_i64s(&[&[0, 1], &[1, 0]], Some(canonical)).expect("hyperbolic plane")
}

impl SurfaceModel {
    pub fn rank1(d: i64) -> Result<Self> {
        Self::rank1_big(BigInt::from(d))
    }

    pub fn rank1_big(d: Int) -> Result<Self> {
        if !d.is_positive() {
            return Err(Error::input(format!(
                "rank-1 model needs O(1)^2 > 0, got {d}"
            )));
        }
        Ok(SurfaceModel::Rank1 { d })
    }

    pub fn complete_intersection(degrees: Vec<Int>) -> Result<Self> {
        if degrees.len() < 2 {
            return Err(Error::input(
                "complete intersection curves need at least two degrees (ambient P^n with n >= 3)",
            ));
        }
        if degrees.iter().any(|d| !d.is_positive()) {
            return Err(Error::input(
                "complete intersection degrees must be positive",
            ));
        }
        if degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::input(
                "complete intersection degrees must be nondecreasing",
            ));
        }
        Ok(SurfaceModel::CompleteIntersection { degrees })
    }

    pub fn name(&self) -> String {
        match self {
            SurfaceModel::Plane => "p2".into(),
            SurfaceModel::P1xP1 => "p1p1".into(),
            SurfaceModel::ExP1 => "exp1".into(),
            SurfaceModel::Rank1 { d } => format!("rank1:{d}"),
            SurfaceModel::CompleteIntersection { degrees } => {
                let ds: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
                format!("ci:{}", ds.join(","))
            }
            SurfaceModel::Generic(_) => "generic".into(),
        }
    }

    /// `O(1)^2` on the surface containing a complete intersection curve.
    fn ci_surface_degree(degrees: &[Int]) -> Int {
        degrees[1..].iter().product()
    }

    pub fn lattice(&self) -> Arc<IntersectionLattice> {
        match self {
            SurfaceModel::Plane => {
                Arc::new(IntersectionLattice::from_i64s(&[&[1]], Some(&[-3])).expect("P2"))
            }
            SurfaceModel::P1xP1 => Arc::new(hyperbolic_plane(&[-2, -2])),
            SurfaceModel::ExP1 => Arc::new(hyperbolic_plane(&[0, -2])),
            SurfaceModel::Rank1 { d } => Arc::new(
                IntersectionLattice::new(vec![vec![d.clone()]], None)
                    .expect("positive rank-1 form"),
            ),
            SurfaceModel::CompleteIntersection { degrees } => {
                // K_S = O(d2 + ... + d_{n-1} - n - 1) on a complete intersection in P^n
                let n = BigInt::from(degrees.len() + 1);
                let k: Int = degrees[1..].iter().sum::<Int>() - n - BigInt::one();
                Arc::new(
                    IntersectionLattice::new(
                        vec![vec![Self::ci_surface_degree(degrees)]],
                        Some(DivisorClass(vec![k])),
                    )
                    .expect("positive rank-1 form"),
                )
            }
            SurfaceModel::Generic(g) => g.lattice.clone(),
        }
    }

    pub fn irregularity_zero(&self) -> bool {
        match self {
            SurfaceModel::ExP1 => false,
            SurfaceModel::Generic(g) => g.irregularity_zero,
            _ => true,
        }
    }

    /// The ample level form of the model: `O(1)` on rank-1 models and `(1,1)`
    /// on the two product surfaces. Very ample except on `E x P^1`.
    pub fn polarization(&self) -> Option<DivisorClass> {
        match self {
            SurfaceModel::Plane
            | SurfaceModel::Rank1 { .. }
            | SurfaceModel::CompleteIntersection { .. } => Some(DivisorClass::from_i64s(&[1])),
            SurfaceModel::P1xP1 | SurfaceModel::ExP1 => Some(DivisorClass::from_i64s(&[1, 1])),
            SurfaceModel::Generic(g) => g.very_ample.clone(),
        }
    }

    /// A very ample class, when the model knows one.
    pub fn very_ample(&self) -> Option<DivisorClass> {
        match self {
            SurfaceModel::ExP1 => None,
            _ => self.polarization(),
        }
    }

    pub fn is_builtin(&self) -> bool {
        !matches!(self, SurfaceModel::Generic(_))
    }

    /// Effective cone: the coordinate quadrant on the product surfaces and
    /// the nonnegative ray on rank-1 models.
    pub fn effective_cone(&self) -> Result<RationalCone> {
        let lattice = self.lattice();
        match self {
            SurfaceModel::P1xP1 | SurfaceModel::ExP1 => RationalCone::from_rays(
                lattice,
                vec![
                    DivisorClass::from_i64s(&[1, 0]),
                    DivisorClass::from_i64s(&[0, 1]),
                ],
            )?
            .facets_from_rays(),
            SurfaceModel::Generic(g) => g.effective_cone.clone().ok_or_else(|| {
                Error::input("generic model needs an effective cone for this operation")
            }),
            _ => RationalCone::from_rays(lattice, vec![DivisorClass::from_i64s(&[1])])?
                .facets_from_rays(),
        }
    }

    /// Numerical ampleness: strictly positive coordinates on built-in models,
    /// membership in the supplied ample cone on generic ones (`None` when the
    /// generic model has no ample cone to check against).
    pub fn is_ample(&self, c: &DivisorClass) -> Result<Option<bool>> {
        self.lattice().check_class(c)?;
        match self {
            SurfaceModel::Generic(g) => match &g.ample_cone {
                Some(cone) => Ok(Some(cone.membership(c)? && !c.is_zero())),
                None => Ok(None),
            },
            _ => Ok(Some(c.coords().iter().all(Signed::is_positive))),
        }
    }
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for SurfaceModel {
    type Err = Error;

    /// Parses `p2`, `p1p1`, `exp1`, `rank1:<d>` and `ci:<d1>,<d2>,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::input(format!("bad integer {t:?} in model {s:?}")))
        };
        match s {
            "p2" | "plane" => Ok(SurfaceModel::Plane),
            "p1p1" => Ok(SurfaceModel::P1xP1),
            "exp1" => Ok(SurfaceModel::ExP1),
            "generic" => Err(Error::input(
                "the generic model is built from a lattice file, not a name",
            )),
            _ => {
                if let Some(d) = s.strip_prefix("rank1:") {
                    SurfaceModel::rank1_big(parse_int(d)?)
                } else if let Some(ds) = s.strip_prefix("ci:") {
                    let degrees = ds.split(',').map(parse_int).collect::<Result<Vec<_>>>()?;
                    SurfaceModel::complete_intersection(degrees)
                } else {
                    Err(Error::input(format!(
                        "unknown model {s:?}; expected p2, p1p1, exp1, rank1:<d>, ci:<d1>,<d2>,... or generic"
                    )))
                }
            }
        }
    }
}

/// A curve class on a surface model together with arithmetic side information.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSpec {
    pub model: SurfaceModel,
    pub class: DivisorClass,
    pub has_rational_point: Option<bool>,
    pub bielliptic: Option<bool>,
}

impl CurveSpec {
    /// Validates the class against the model; for complete intersections the
    /// class must be `(d1)`.
    pub fn new(
        model: SurfaceModel,
        class: DivisorClass,
        has_rational_point: Option<bool>,
        bielliptic: Option<bool>,
    ) -> Result<Self> {
        if let SurfaceModel::CompleteIntersection { degrees } = &model {
            if class.coords() != [degrees[0].clone()] {
                return Err(Error::input(format!(
                    "a complete intersection curve of type {} has class ({}) on its surface, got {class}",
                    model.name(),
                    degrees[0]
                )));
            }
        }
        if model.is_ample(&class)? == Some(false) {
            return Err(Error::input(format!(
                "class {class} is not ample on {}",
                model.name()
            )));
        }
        Ok(CurveSpec {
            model,
            class,
            has_rational_point,
            bielliptic,
        })
    }

    /// Complete intersection curve with its class filled in.
    pub fn complete_intersection(degrees: Vec<Int>) -> Result<Self> {
        let model = SurfaceModel::complete_intersection(degrees)?;
        let class = match &model {
            SurfaceModel::CompleteIntersection { degrees } => {
                DivisorClass(vec![degrees[0].clone()])
            }
            _ => unreachable!(),
        };
        Self::new(model, class, None, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int;

    #[test]
    fn builtin_lattices_are_hyperbolic() {
        for m in [
            SurfaceModel::Plane,
            SurfaceModel::P1xP1,
            SurfaceModel::ExP1,
            SurfaceModel::rank1(3).unwrap(),
            SurfaceModel::complete_intersection(vec![int(9), int(10)]).unwrap(),
        ] {
            assert!(m.lattice().validate_signature().ok, "{m}");
        }
    }

    #[test]
    fn canonical_classes() {
        assert_eq!(
            SurfaceModel::Plane.lattice().canonical(),
            Some(&DivisorClass::from_i64s(&[-3]))
        );
        assert_eq!(
            SurfaceModel::ExP1.lattice().canonical(),
            Some(&DivisorClass::from_i64s(&[0, -2]))
        );
        // quartic surface in P^3 is K3
        let k3 = SurfaceModel::complete_intersection(vec![int(5), int(4)]);
        assert!(k3.is_err());
        let k3 = SurfaceModel::complete_intersection(vec![int(4), int(4)]).unwrap();
        assert_eq!(
            k3.lattice().canonical(),
            Some(&DivisorClass::from_i64s(&[0]))
        );
        // plane curve genus (d-1)(d-2)/2
        let l = SurfaceModel::Plane.lattice();
        assert_eq!(l.genus(&DivisorClass::from_i64s(&[5])).unwrap(), int(6));
    }

    #[test]
    fn parse_names() {
        assert_eq!("p1p1".parse::<SurfaceModel>().unwrap(), SurfaceModel::P1xP1);
        assert_eq!(
            "rank1:2".parse::<SurfaceModel>().unwrap(),
            SurfaceModel::Rank1 { d: int(2) }
        );
        assert_eq!(
            "ci:9,10".parse::<SurfaceModel>().unwrap(),
            SurfaceModel::CompleteIntersection {
                degrees: vec![int(9), int(10)]
            }
        );
        assert!("rank1:0".parse::<SurfaceModel>().is_err());
        assert!("torus".parse::<SurfaceModel>().is_err());
        let m: SurfaceModel = "ci:9,10,11".parse().unwrap();
        assert_eq!(m.name(), "ci:9,10,11");
    }

    #[test]
    fn curve_spec_validation() {
        let c = |v: &[i64]| DivisorClass::from_i64s(v);
        assert!(CurveSpec::new(SurfaceModel::P1xP1, c(&[4, 5]), None, None).is_ok());
        assert!(CurveSpec::new(SurfaceModel::P1xP1, c(&[0, 5]), None, None).is_err());
        assert!(CurveSpec::new(SurfaceModel::P1xP1, c(&[4]), None, None).is_err());
        assert!(CurveSpec::new(
            SurfaceModel::complete_intersection(vec![int(9), int(10)]).unwrap(),
            c(&[8]),
            None,
            None
        )
        .is_err());
        let ci = CurveSpec::complete_intersection(vec![int(9), int(10)]).unwrap();
        assert_eq!(ci.class, c(&[9]));
        assert_eq!(ci.model.lattice().square(&ci.class).unwrap(), int(810));
    }
}
