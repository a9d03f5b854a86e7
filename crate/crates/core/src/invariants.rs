//! Certified intervals for the gonality and the arithmetic degree of
//! irrationality of a curve class on a surface model.
//!
//! Every bound carries a provenance tag naming the result it comes from.
//! The combiner always starts from `ceil(gon/2) <= a.irr <= gon`, then layers
//! on the `min(gon, C^2/9)` lower bound (surfaces with `h^1(O_S) = 0` only),
//! the exceptional-set test, and the exact tables known for each model.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exc;
use crate::lattice::DivisorClass;
use crate::model::{CurveSpec, SurfaceModel};
use crate::num::{self, Int};
use crate::{Error, Result};

/// Provenance tags used in certificates.
pub mod tags {
    pub const RANGE: &str = "eq:range";
    pub const UPPER_BOUND: &str = "eq:upper_bound";
    pub const PROJECTION: &str = "obs:projection";
    pub const NOETHER: &str = "thm:noether";
    pub const DEBARRE_KLASSEN: &str = "thm:debarre_klassen";
    pub const MAIN_Q0: &str = "thm:main_q0";
    pub const MAIN_P1XP1: &str = "thm:main_p1xp1";
    pub const EVERY_VALUE: &str = "thm:every_value";
    pub const EVERY_VALUE_GEOMETRIC: &str = "thm:every_value_geometric";
    pub const MAIN_PIC1: &str = "cor:main_pic1";
    pub const MAIN_CI: &str = "cor:main_ci";
    pub const RANK1_GONALITY: &str = "lem:rank1_gonality";
    pub const CI_GONALITY: &str = "ex:ci_gonality";
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub bound: String,
    #[serde(rename = "ref")]
    pub reference: String,
}

impl Provenance {
    fn new(bound: impl Into<String>, reference: &str) -> Self {
        Provenance {
            bound: bound.into(),
            reference: reference.to_string(),
        }
    }
}

/// Closed integer interval, serialized as `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Int,
    pub hi: Int,
}

impl Interval {
    pub fn new(lo: Int, hi: Int) -> Self {
        Interval { lo, hi }
    }

    pub fn point(v: Int) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        num::int_vec::serialize(&[self.lo.clone(), self.hi.clone()], s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = num::int_vec::deserialize(d)?;
        match <[Int; 2]>::try_from(v) {
            Ok([lo, hi]) => Ok(Interval { lo, hi }),
            Err(v) => Err(D::Error::custom(format!(
                "expected [lo, hi], got {} entries",
                v.len()
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub interval: Interval,
    pub provenance: Vec<Provenance>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub model: String,
    pub class: DivisorClass,
    pub gon: Interval,
    pub airr: Interval,
    /// `a.irr` is pinned: either `a.irr = gon` is certified or the interval is a point.
    pub exact: bool,
    pub airr_equals_gon: bool,
    pub provenance: Vec<Provenance>,
    #[serde(with = "num::opt_int")]
    pub finiteness_threshold: Option<Int>,
    #[serde(default)]
    pub notes: Vec<String>,
}

fn big(v: i64) -> Int {
    BigInt::from(v)
}

fn ceil_half(v: &Int) -> Int {
    num::ceil_div(v, &big(2))
}

/// `(d1, d2)` with `d1 <= d2`.
fn bidegree(class: &DivisorClass) -> (Int, Int) {
    let (a, b) = (class.coords()[0].clone(), class.coords()[1].clone());
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn gon_bounds(spec: &CurveSpec) -> Result<Bounds> {
    let class = &spec.class;
    let mut provenance = Vec::new();
    let mut notes = Vec::new();
    let interval = match &spec.model {
        SurfaceModel::Plane => {
            let d = class.coords()[0].clone();
            if d.is_one() {
                notes.push("a line is rational".into());
                Interval::point(big(1))
            } else {
                match spec.has_rational_point {
                    Some(true) => {
                        provenance.push(Provenance::new(
                            "gon = d - 1 (rational point)",
                            tags::NOETHER,
                        ));
                        Interval::point(d - 1)
                    }
                    Some(false) => {
                        provenance.push(Provenance::new(
                            "gon = d (no rational point)",
                            tags::NOETHER,
                        ));
                        Interval::point(d)
                    }
                    None => {
                        provenance.push(Provenance::new("d - 1 <= gon <= d", tags::NOETHER));
                        notes.push(
                            "rational point unknown; both cases of the plane-curve gonality kept"
                                .into(),
                        );
                        Interval::new(&d - 1, d)
                    }
                }
            }
        }
        SurfaceModel::P1xP1 => {
            let (d1, _) = bidegree(class);
            provenance.push(Provenance::new(
                "gon <= d1 (projection to a ruling)",
                tags::PROJECTION,
            ));
            provenance.push(Provenance::new(
                "gon >= d1 (K_C is (d1-2)-very ample)",
                tags::MAIN_P1XP1,
            ));
            Interval::point(d1)
        }
        SurfaceModel::ExP1 => {
            let gamma = class.coords()[0].clone();
            let alpha = class.coords()[1].clone();
            if gamma < big(4) || big(2) * &alpha < gamma || alpha > gamma {
                return Err(Error::unsupported(format!(
                    "E x P^1 bounds need gamma >= 4 and gamma/2 <= alpha <= gamma, got (gamma, alpha) = ({gamma}, {alpha})"
                )));
            }
            provenance.push(Provenance::new(
                "gon <= gamma (projection to P^1)",
                tags::PROJECTION,
            ));
            provenance.push(Provenance::new(
                "gon >= gamma (no destabilizing class below gamma)",
                tags::EVERY_VALUE_GEOMETRIC,
            ));
            Interval::point(gamma)
        }
        SurfaceModel::Rank1 { d } => {
            let alpha = class.coords()[0].clone();
            let lo = (&alpha - 1) * d;
            let lo = if lo < big(1) { big(1) } else { lo };
            provenance.push(Provenance::new(
                "gon >= (alpha - 1) O(1)^2",
                tags::RANK1_GONALITY,
            ));
            provenance.push(Provenance::new(
                "gon <= P.C with P = O(1)",
                tags::PROJECTION,
            ));
            Interval::new(lo, alpha * d)
        }
        SurfaceModel::CompleteIntersection { degrees } => {
            let deg: Int = degrees.iter().product();
            provenance.push(Provenance::new("gon <= deg C", tags::PROJECTION));
            if degrees[0] >= big(9) && degrees[0] < degrees[1] {
                let lo: Int = (&degrees[0] - 1) * degrees[1..].iter().product::<Int>();
                provenance.push(Provenance::new(
                    "gon >= (d1 - 1) d2 ... d_{n-1}",
                    tags::CI_GONALITY,
                ));
                Interval::new(lo, deg)
            } else {
                if degrees[0] == degrees[1] {
                    notes.push("d1 = d2: no gonality lower bound beyond the trivial one".into());
                } else {
                    notes.push("d1 < 9: only the projection bound is emitted".into());
                }
                Interval::new(big(1), deg)
            }
        }
        SurfaceModel::Generic(g) => {
            let p = g.very_ample.as_ref().ok_or_else(|| {
                Error::unsupported("generic model needs a very ample class for gonality bounds")
            })?;
            let cp = g.lattice.pair(class, p)?;
            if !cp.is_positive() {
                return Err(Error::input(format!(
                    "C.P = {cp} must be positive for a very ample P"
                )));
            }
            provenance.push(Provenance::new("gon <= C.P (projection)", tags::PROJECTION));
            Interval::new(big(1), cp)
        }
    };
    Ok(Bounds {
        interval,
        provenance,
        notes,
    })
}

pub fn airr_bounds(spec: &CurveSpec) -> Result<Bounds> {
    let cert = certify(spec)?;
    Ok(Bounds {
        interval: cert.airr,
        provenance: cert.provenance,
        notes: cert.notes,
    })
}

/// Degree below which `C_K` has finitely many points for every finite `K/k`.
pub fn finiteness_threshold(spec: &CurveSpec) -> Option<Int> {
    match &spec.model {
        SurfaceModel::Rank1 { d } => {
            let alpha = &spec.class.coords()[0];
            (alpha >= &big(9)).then(|| (alpha - 1) * d)
        }
        SurfaceModel::CompleteIntersection { degrees } => (degrees[0] >= big(9)
            && degrees[0] < degrees[1])
            .then(|| (&degrees[0] - 1) * degrees[1..].iter().product::<Int>()),
        _ => None,
    }
}

struct Combiner {
    lo: Int,
    hi: Int,
    equals_gon: bool,
    provenance: Vec<Provenance>,
    notes: Vec<String>,
}

impl Combiner {
    fn raise(&mut self, lo: Int) {
        if lo > self.lo {
            self.lo = lo;
        }
    }

    fn pin(&mut self, value: Int, bound: String, reference: &str) -> Result<()> {
        if value < self.lo || value > self.hi {
            return Err(Error::Internal(format!(
                "exact value {value} from {reference} lies outside [{}, {}]",
                self.lo, self.hi
            )));
        }
        self.lo = value.clone();
        self.hi = value;
        self.provenance.push(Provenance::new(bound, reference));
        Ok(())
    }
}

fn check_bielliptic(spec: &CurveSpec) -> Result<()> {
    if spec.bielliptic != Some(true) {
        return Ok(());
    }
    let lattice = spec.model.lattice();
    if lattice.canonical().is_some() {
        let g = lattice.genus(&spec.class)?;
        if g < big(2) {
            return Err(Error::input(format!(
                "bielliptic flag set on a curve of genus {g}; bielliptic curves have genus >= 2"
            )));
        }
    }
    Ok(())
}

pub fn certify(spec: &CurveSpec) -> Result<BoundCertificate> {
    check_bielliptic(spec)?;
    let gon = gon_bounds(spec)?;
    let lattice = spec.model.lattice();
    let c2 = lattice.square(&spec.class)?;

    let mut comb = Combiner {
        lo: ceil_half(&gon.interval.lo),
        hi: gon.interval.hi.clone(),
        equals_gon: false,
        provenance: gon.provenance.clone(),
        notes: gon.notes.clone(),
    };
    comb.provenance
        .push(Provenance::new("a.irr >= ceil(gon / 2)", tags::RANGE));
    comb.provenance
        .push(Provenance::new("a.irr <= gon", tags::UPPER_BOUND));

    // C²/9 bound and the exceptional-set test, only with h^1(O_S) = 0
    if spec.model.irregularity_zero() {
        match spec.model.is_ample(&spec.class)? {
            Some(true) => {
                let ninth = num::ceil_div(&c2, &big(9));
                let bound = std::cmp::min(gon.interval.lo.clone(), ninth);
                comb.raise(bound.clone());
                comb.provenance.push(Provenance::new(
                    format!("a.irr >= min(gon, ceil(C^2/9)) = {bound}"),
                    tags::MAIN_Q0,
                ));
                if let Some(p) = spec.model.very_ample() {
                    if !exc::is_exceptional(&lattice, &spec.class, &p)? {
                        comb.equals_gon = true;
                        let reference = match spec.model {
                            SurfaceModel::Rank1 { .. } => tags::MAIN_PIC1,
                            SurfaceModel::CompleteIntersection { .. } => tags::MAIN_CI,
                            _ => tags::MAIN_Q0,
                        };
                        comb.provenance.push(Provenance::new(
                            format!("a.irr = gon (9 C.P <= C^2 for P = {p})"),
                            reference,
                        ));
                    }
                }
            }
            Some(false) => {}
            None => comb.notes.push(
                "ampleness of the class is unchecked (no ample cone given); C^2/9 bound skipped"
                    .into(),
            ),
        }
    }

    match &spec.model {
        SurfaceModel::P1xP1 => {
            let (d1, d2) = bidegree(&spec.class);
            let (two, three) = (big(2), big(3));
            let bielliptic_ok = (d1 == three && d2 == three) || (d1 == two && d2 > two);
            if spec.bielliptic == Some(true) && !bielliptic_ok {
                return Err(Error::input(format!(
                    "bielliptic flag contradicts a.irr = {d1} for a ({d1},{d2}) curve"
                )));
            }
            if d1 <= big(1) {
                comb.pin(
                    big(1),
                    "a.irr = 1 (rational curve)".into(),
                    tags::MAIN_P1XP1,
                )?;
            } else if d1 == two && d2 == two {
                comb.pin(
                    big(1),
                    "a.irr = 1 over the algebraic closure (genus 1)".into(),
                    tags::MAIN_P1XP1,
                )?;
                comb.notes
                    .push("(2,2): geometric value; over k this is an elliptic curve".into());
            } else if d1 == three && d2 == three {
                match spec.bielliptic {
                    Some(true) => comb.pin(
                        big(2),
                        "a.irr = 2 (bielliptic genus 4)".into(),
                        tags::MAIN_P1XP1,
                    )?,
                    Some(false) => {
                        comb.pin(
                            big(3),
                            "a.irr = 3 (non-bielliptic genus 4)".into(),
                            tags::MAIN_P1XP1,
                        )?;
                        comb.equals_gon = true;
                    }
                    None => {
                        comb.raise(big(2));
                        comb.notes
                            .push("(3,3): a.irr is 2 or 3; bielliptic flag needed".into());
                    }
                }
                if spec.bielliptic.is_some() {
                    comb.notes
                        .push("(3,3): value over the algebraic closure".into());
                }
            } else {
                comb.pin(d1.clone(), format!("a.irr = gon = {d1}"), tags::MAIN_P1XP1)?;
                comb.equals_gon = true;
            }
        }
        SurfaceModel::ExP1 => {
            let alpha = spec.class.coords()[1].clone();
            comb.pin(
                alpha.clone(),
                format!("a.irr = alpha = {alpha}"),
                tags::EVERY_VALUE,
            )?;
        }
        SurfaceModel::Plane => {
            let d = &spec.class.coords()[0];
            if d >= &big(8) {
                comb.equals_gon = true;
                comb.provenance.push(Provenance::new(
                    "a.irr = gon for plane curves of degree >= 8",
                    tags::DEBARRE_KLASSEN,
                ));
            }
        }
        _ => {}
    }

    if comb.equals_gon {
        comb.raise(gon.interval.lo.clone());
    } else if comb.lo >= gon.interval.hi {
        comb.equals_gon = true;
        comb.notes
            .push("a.irr lower bound meets the gonality upper bound".into());
    }

    if spec.bielliptic == Some(true) && comb.lo > big(2) {
        return Err(Error::input(format!(
            "bielliptic flag contradicts the certified bound a.irr >= {}",
            comb.lo
        )));
    }

    let airr = Interval::new(comb.lo, comb.hi);
    let cert = BoundCertificate {
        model: spec.model.name(),
        class: spec.class.clone(),
        exact: comb.equals_gon || airr.is_point(),
        airr_equals_gon: comb.equals_gon,
        gon: gon.interval,
        airr,
        provenance: comb.provenance,
        finiteness_threshold: finiteness_threshold(spec),
        notes: comb.notes,
    };
    check_certificate(&cert)?;
    Ok(cert)
}

/// Interval-level consistency: `gon_lo <= gon_hi`, `airr_lo <= airr_hi <= gon_hi`
/// and `airr_lo >= ceil(gon_lo / 2)`.
pub fn check_certificate(cert: &BoundCertificate) -> Result<()> {
    let ok = cert.gon.lo <= cert.gon.hi
        && cert.airr.lo <= cert.airr.hi
        && cert.airr.hi <= cert.gon.hi
        && cert.airr.lo >= ceil_half(&cert.gon.lo)
        && cert.gon.lo >= big(1);
    if ok {
        Ok(())
    } else {
        Err(Error::Internal(format!(
            "inconsistent certificate: gon = [{}, {}], a.irr = [{}, {}]",
            cert.gon.lo, cert.gon.hi, cert.airr.lo, cert.airr.hi
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int;

    fn spec(model: SurfaceModel, class: &[i64]) -> CurveSpec {
        CurveSpec::new(model, DivisorClass::from_i64s(class), None, None).unwrap()
    }

    fn has_tag(cert: &BoundCertificate, tag: &str) -> bool {
        cert.provenance.iter().any(|p| p.reference == tag)
    }

    #[test]
    fn gon_examples() {
        let b = gon_bounds(&spec(SurfaceModel::P1xP1, &[4, 5])).unwrap();
        assert_eq!(b.interval, Interval::point(int(4)));
        let b = gon_bounds(&spec(SurfaceModel::ExP1, &[5, 4])).unwrap();
        assert_eq!(b.interval, Interval::point(int(5)));
        let ci = CurveSpec::complete_intersection(vec![int(9), int(10)]).unwrap();
        assert_eq!(
            gon_bounds(&ci).unwrap().interval,
            Interval::new(int(80), int(90))
        );
    }

    #[test]
    fn exp1_outside_the_theorem_is_unsupported() {
        let s = spec(SurfaceModel::ExP1, &[3, 2]);
        assert!(matches!(gon_bounds(&s), Err(Error::Unsupported(_))));
        let s = spec(SurfaceModel::ExP1, &[6, 2]);
        assert!(matches!(certify(&s), Err(Error::Unsupported(_))));
    }

    #[test]
    fn airr_examples() {
        let c = certify(&spec(SurfaceModel::ExP1, &[5, 4])).unwrap();
        assert_eq!(c.airr, Interval::point(int(4)));
        assert!(c.exact);
        assert!(!c.airr_equals_gon);

        let s = CurveSpec::new(
            SurfaceModel::P1xP1,
            DivisorClass::from_i64s(&[3, 3]),
            None,
            Some(true),
        )
        .unwrap();
        assert_eq!(certify(&s).unwrap().airr, Interval::point(int(2)));
        let s = CurveSpec::new(
            SurfaceModel::P1xP1,
            DivisorClass::from_i64s(&[3, 3]),
            None,
            Some(false),
        )
        .unwrap();
        assert_eq!(certify(&s).unwrap().airr, Interval::point(int(3)));
        let c = certify(&spec(SurfaceModel::P1xP1, &[3, 3])).unwrap();
        assert_eq!(c.airr, Interval::new(int(2), int(3)));
        assert!(c.notes.iter().any(|n| n.contains("flag needed")));

        let c = certify(&spec(SurfaceModel::rank1(2).unwrap(), &[10])).unwrap();
        assert_eq!(c.gon, Interval::new(int(18), int(20)));
        assert_eq!(c.airr, Interval::new(int(18), int(20)));
        assert!(c.airr_equals_gon && c.exact);
        assert!(has_tag(&c, tags::MAIN_PIC1));
    }

    #[test]
    fn contradictory_bielliptic_flag() {
        let s = CurveSpec::new(
            SurfaceModel::P1xP1,
            DivisorClass::from_i64s(&[4, 5]),
            None,
            Some(true),
        )
        .unwrap();
        assert!(matches!(certify(&s), Err(Error::Input(_))));
        let s = CurveSpec::new(
            SurfaceModel::P1xP1,
            DivisorClass::from_i64s(&[2, 2]),
            None,
            Some(true),
        )
        .unwrap();
        assert!(matches!(certify(&s), Err(Error::Input(_))));
        let s = CurveSpec::new(
            SurfaceModel::ExP1,
            DivisorClass::from_i64s(&[6, 4]),
            None,
            Some(true),
        )
        .unwrap();
        assert!(matches!(certify(&s), Err(Error::Input(_))));
    }

    #[test]
    fn q0_bound_never_applies_on_exp1() {
        let c = certify(&spec(SurfaceModel::ExP1, &[10, 5])).unwrap();
        assert_eq!(c.airr, Interval::point(int(5)));
        assert!(!has_tag(&c, tags::MAIN_Q0));
    }

    #[test]
    fn plane_curves() {
        let with_point = CurveSpec::new(
            SurfaceModel::Plane,
            DivisorClass::from_i64s(&[8]),
            Some(true),
            None,
        )
        .unwrap();
        let c = certify(&with_point).unwrap();
        assert_eq!(
            (c.gon.clone(), c.airr.clone()),
            (Interval::point(int(7)), Interval::point(int(7)))
        );
        let without = CurveSpec::new(
            SurfaceModel::Plane,
            DivisorClass::from_i64s(&[8]),
            Some(false),
            None,
        )
        .unwrap();
        assert_eq!(certify(&without).unwrap().airr, Interval::point(int(8)));
        let unknown = certify(&spec(SurfaceModel::Plane, &[8])).unwrap();
        assert_eq!(unknown.airr, Interval::new(int(7), int(8)));
        assert!(unknown.airr_equals_gon);
        // degree 5: C² = 25, ceil(25/9) = 3, gon = 4 with a point
        let small = CurveSpec::new(
            SurfaceModel::Plane,
            DivisorClass::from_i64s(&[5]),
            Some(true),
            None,
        )
        .unwrap();
        let c = certify(&small).unwrap();
        assert_eq!(c.airr, Interval::new(int(3), int(4)));
        assert!(!has_tag(&c, tags::DEBARRE_KLASSEN));
    }

    #[test]
    fn finiteness_examples() {
        assert_eq!(
            finiteness_threshold(&spec(SurfaceModel::rank1(2).unwrap(), &[10])),
            Some(int(18))
        );
        let ci = CurveSpec::complete_intersection(vec![int(9), int(10)]).unwrap();
        assert_eq!(finiteness_threshold(&ci), Some(int(80)));
        assert_eq!(
            finiteness_threshold(&spec(SurfaceModel::P1xP1, &[4, 5])),
            None
        );
        assert_eq!(
            finiteness_threshold(&spec(SurfaceModel::rank1(2).unwrap(), &[8])),
            None
        );
    }

    #[test]
    fn ci_fallbacks() {
        let equal = CurveSpec::complete_intersection(vec![int(9), int(9)]).unwrap();
        let c = certify(&equal).unwrap();
        assert_eq!(c.gon, Interval::new(int(1), int(81)));
        assert_eq!(c.finiteness_threshold, None);
        let small = CurveSpec::complete_intersection(vec![int(5), int(6)]).unwrap();
        let c = certify(&small).unwrap();
        assert_eq!(c.gon, Interval::new(int(1), int(30)));
        assert!(!c.notes.is_empty());
    }

    #[test]
    fn certificate_json_shape() {
        let c = certify(&spec(SurfaceModel::P1xP1, &[4, 5])).unwrap();
        let v: serde_json::Value = serde_json::to_value(&c).unwrap();
        assert_eq!(v["gon"], serde_json::json!([4, 4]));
        assert_eq!(v["airr"], serde_json::json!([4, 4]));
        assert_eq!(v["exact"], serde_json::json!(true));
        assert_eq!(v["finiteness_threshold"], serde_json::Value::Null);
        assert!(v["provenance"][0]["ref"].is_string());
        let back: BoundCertificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
    }
}
