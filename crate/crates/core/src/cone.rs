//! Rational polyhedral cones in a Neron-Severi lattice.
//!
//! A cone is stored by its primitive generating rays and, optionally, by
//! facet inequalities `f . x >= 0` (Euclidean dot product on coordinates).
//! The slice `{ x in N : x . P = l }` by an ample level form `P` is a polytope
//! whose vertices are the rays rescaled to level `l`; on that slice `x . x`
//! is concave when the form has signature `(1, rank - 1)`, so its minimum is
//! attained at a vertex.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dd;
use crate::lattice::{DivisorClass, IntersectionLattice};
use crate::linalg::{self, Solve};
use crate::num::{self, Int, Rat};
use crate::{Error, Result};

/// Largest rank at which facets or rays are synthesized by double description.
pub const DEFAULT_MAX_RANK: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCone {
    lattice: Arc<IntersectionLattice>,
    rays: Vec<DivisorClass>,
    facets: Option<Vec<DivisorClass>>,
}

/// Cone JSON object: `{"rays": [[..]..], "facets": [[..]..] | null}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeJson {
    #[serde(default)]
    pub rays: Vec<DivisorClass>,
    #[serde(default)]
    pub facets: Option<Vec<DivisorClass>>,
}

/// Minimum of `H.H` over the slice `{ H in N : H.P = 1 }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceMin {
    pub value: Rat,
    /// The ray attaining the minimum.
    pub argmin: DivisorClass,
    /// Set when `value <= 0`: the cone reaches the boundary of the positive cone.
    pub touches_boundary: bool,
}

fn check_rank_limit(rank: usize, max_rank: usize) -> Result<()> {
    if rank > max_rank {
        return Err(Error::unsupported(format!(
            "double description is limited to rank <= {max_rank}, lattice has rank {rank}"
        )));
    }
    Ok(())
}

fn canonical_rays(
    lattice: &IntersectionLattice,
    rays: Vec<DivisorClass>,
) -> Result<Vec<DivisorClass>> {
    let mut out = Vec::with_capacity(rays.len());
    for r in rays {
        lattice.check_class(&r)?;
        if r.is_zero() {
            return Err(Error::input("cone rays must be nonzero"));
        }
        out.push(r.primitive());
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn canonical_facets(
    lattice: &IntersectionLattice,
    facets: Vec<DivisorClass>,
) -> Result<Vec<DivisorClass>> {
    let mut out = Vec::with_capacity(facets.len());
    for f in facets {
        lattice.check_class(&f)?;
        if !f.is_zero() {
            out.push(f.primitive());
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Nonnegative-combination test: `x` is in the cone spanned by `rays` iff it is
/// a nonnegative combination of some linearly independent subset of them.
fn in_ray_cone(rays: &[DivisorClass], x: &DivisorClass) -> bool {
    if x.is_zero() {
        return true;
    }
    let n = x.len();
    let max_k = n.min(rays.len());
    let mut subset = Vec::with_capacity(max_k);
    fn search(
        rays: &[DivisorClass],
        x: &DivisorClass,
        start: usize,
        max_k: usize,
        subset: &mut Vec<usize>,
    ) -> bool {
        if !subset.is_empty() {
            let cols: Vec<&[Int]> = subset.iter().map(|&i| rays[i].coords()).collect();
            match linalg::solve_columns(&cols, x.coords()) {
                Solve::Unique(sol) if sol.iter().all(|c| !c.is_negative()) => return true,
                Solve::Dependent => return false,
                _ => {}
            }
        }
        if subset.len() == max_k {
            return false;
        }
        for i in start..rays.len() {
            subset.push(i);
            let found = search(rays, x, i + 1, max_k, subset);
            subset.pop();
            if found {
                return true;
            }
        }
        false
    }
    search(rays, x, 0, max_k, &mut subset)
}

impl RationalCone {
    /// Cone generated by `rays`; rays are made primitive and must span a pointed cone.
    pub fn from_rays(lattice: Arc<IntersectionLattice>, rays: Vec<DivisorClass>) -> Result<Self> {
        let rays = canonical_rays(&lattice, rays)?;
        if rays.is_empty() {
            return Err(Error::input("a cone needs at least one ray"));
        }
        for r in &rays {
            if in_ray_cone(&rays, &(-r)) {
                return Err(Error::input(format!(
                    "cone is not pointed: both {r} and its negative are members"
                )));
            }
        }
        Ok(RationalCone {
            lattice,
            rays,
            facets: None,
        })
    }

    /// Cone `{ x : f . x >= 0 }`; rays are synthesized by double description.
    pub fn from_facets(
        lattice: Arc<IntersectionLattice>,
        facets: Vec<DivisorClass>,
        max_rank: usize,
    ) -> Result<Self> {
        let facets = canonical_facets(&lattice, facets)?;
        check_rank_limit(lattice.rank(), max_rank)?;
        let constraints: Vec<Vec<Int>> = facets.iter().map(|f| f.0.clone()).collect();
        let g = dd::generators(lattice.rank(), &constraints);
        if !g.lineality.is_empty() {
            return Err(Error::input(format!(
                "cone is not pointed: facets leave a lineality space of dimension {}",
                g.lineality.len()
            )));
        }
        if g.rays.is_empty() {
            return Err(Error::input("facets cut out only the origin"));
        }
        let rays = g.rays.into_iter().map(DivisorClass).collect();
        Ok(RationalCone {
            lattice,
            rays,
            facets: Some(facets),
        })
    }

    /// Cone from either or both representations; when both are present they
    /// must describe the same cone.
    pub fn from_parts(
        lattice: Arc<IntersectionLattice>,
        rays: Vec<DivisorClass>,
        facets: Option<Vec<DivisorClass>>,
        max_rank: usize,
    ) -> Result<Self> {
        match (rays.is_empty(), facets) {
            (true, None) => Err(Error::input("cone needs rays or facets")),
            (true, Some(f)) => Self::from_facets(lattice, f, max_rank),
            (false, None) => Self::from_rays(lattice, rays),
            (false, Some(f)) => {
                let cone = Self::from_rays(lattice, rays)?;
                let facets = canonical_facets(&cone.lattice, f)?;
                for r in &cone.rays {
                    if let Some(f) = facets
                        .iter()
                        .find(|f| linalg::dot(&f.0, &r.0).is_negative())
                    {
                        return Err(Error::input(format!(
                            "ray {r} violates facet inequality {f} . x >= 0"
                        )));
                    }
                }
                if cone.rank() <= max_rank {
                    let from_facets =
                        Self::from_facets(cone.lattice.clone(), facets.clone(), max_rank)?;
                    for r in &from_facets.rays {
                        if !in_ray_cone(&cone.rays, r) {
                            return Err(Error::input(format!(
                                "facets admit {r}, which is not generated by the rays"
                            )));
                        }
                    }
                }
                Ok(RationalCone {
                    facets: Some(facets),
                    ..cone
                })
            }
        }
    }

    pub fn from_json(
        lattice: Arc<IntersectionLattice>,
        json: ConeJson,
        max_rank: usize,
    ) -> Result<Self> {
        Self::from_parts(lattice, json.rays, json.facets, max_rank)
    }

    pub fn to_json(&self) -> ConeJson {
        ConeJson {
            rays: self.rays.clone(),
            facets: self.facets.clone(),
        }
    }

    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn rays(&self) -> &[DivisorClass] {
        &self.rays
    }

    pub fn facets(&self) -> Option<&[DivisorClass]> {
        self.facets.as_deref()
    }

    /// Membership by nonnegative combination of the rays.
    pub fn contains_by_rays(&self, x: &DivisorClass) -> Result<bool> {
        self.lattice.check_class(x)?;
        Ok(in_ray_cone(&self.rays, x))
    }

    /// Membership by the facet inequalities, when they are known.
    pub fn contains_by_facets(&self, x: &DivisorClass) -> Result<Option<bool>> {
        self.lattice.check_class(x)?;
        Ok(self
            .facets
            .as_ref()
            .map(|fs| fs.iter().all(|f| !linalg::dot(&f.0, &x.0).is_negative())))
    }

    pub fn membership(&self, x: &DivisorClass) -> Result<bool> {
        match self.contains_by_facets(x)? {
            Some(inside) => Ok(inside),
            None => self.contains_by_rays(x),
        }
    }

    /// Copy of this cone with facets computed from the rays.
    pub fn facets_from_rays(&self) -> Result<RationalCone> {
        self.facets_from_rays_with_limit(DEFAULT_MAX_RANK)
    }

    pub fn facets_from_rays_with_limit(&self, max_rank: usize) -> Result<RationalCone> {
        check_rank_limit(self.rank(), max_rank)?;
        let constraints: Vec<Vec<Int>> = self.rays.iter().map(|r| r.0.clone()).collect();
        let g = dd::generators(self.rank(), &constraints);
        let mut facets: Vec<DivisorClass> = g.rays.into_iter().map(DivisorClass).collect();
        for l in g.lineality {
            let l = DivisorClass(l);
            facets.push(-&l);
            facets.push(l);
        }
        facets.sort();
        facets.dedup();
        Ok(RationalCone {
            lattice: self.lattice.clone(),
            rays: self.rays.clone(),
            facets: Some(facets),
        })
    }

    /// Facets if present, otherwise synthesized when the rank permits.
    fn with_facets_if_possible(&self) -> RationalCone {
        if self.facets.is_some() || self.rank() > DEFAULT_MAX_RANK {
            return self.clone();
        }
        self.facets_from_rays().unwrap_or_else(|_| self.clone())
    }

    /// `(v . P)` for every ray, failing if some ray is not strictly positive.
    fn ray_degrees(&self, p: &DivisorClass) -> Result<Vec<Int>> {
        self.lattice.check_class(p)?;
        self.rays
            .iter()
            .map(|v| {
                let d = self.lattice.pair_unchecked(v, p);
                if d.is_positive() {
                    Ok(d)
                } else {
                    Err(Error::SliceUnbounded {
                        ray: v.to_string(),
                        degree: d.to_string(),
                    })
                }
            })
            .collect()
    }

    /// Exact minimum of `H.H` over `{ H in N : H.P = 1 }`, i.e. the least
    /// `(v.v) / (v.P)^2` over the rays.
    pub fn slice_min_square(&self, p: &DivisorClass) -> Result<SliceMin> {
        let report = self.lattice.validate_signature();
        if !report.ok {
            return Err(Error::input(format!(
                "slice minimization needs signature (1, {}), lattice inertia is {:?}",
                self.rank() - 1,
                report.inertia
            )));
        }
        let pp = self.lattice.pair(p, p)?;
        if !pp.is_positive() {
            return Err(Error::input(format!(
                "level form must satisfy P.P > 0, got P.P = {pp}"
            )));
        }
        let degrees = self.ray_degrees(p)?;
        let mut best: Option<(Rat, &DivisorClass)> = None;
        for (v, d) in self.rays.iter().zip(&degrees) {
            let q = BigRational::new(self.lattice.pair_unchecked(v, v), d * d);
            if best.as_ref().is_none_or(|(b, _)| q < *b) {
                best = Some((q, v));
            }
        }
        let (value, argmin) = best.expect("cone has at least one ray");
        Ok(SliceMin {
            touches_boundary: !value.is_positive(),
            value,
            argmin: argmin.clone(),
        })
    }

    /// Vertices of the slice polytope at level `l`: each ray scaled by `l / (v.P)`.
    pub fn slice_vertices(&self, p: &DivisorClass, level: &Int) -> Result<Vec<Vec<Rat>>> {
        let degrees = self.ray_degrees(p)?;
        Ok(self
            .rays
            .iter()
            .zip(&degrees)
            .map(|(v, d)| {
                v.0.iter()
                    .map(|c| BigRational::new(c * level, d.clone()))
                    .collect()
            })
            .collect())
    }

    /// All integral `x` in the cone with `x.P = level`, in lexicographic order.
    pub fn lattice_points_at_level(
        &self,
        p: &DivisorClass,
        level: &Int,
    ) -> Result<Vec<DivisorClass>> {
        if level.is_negative() {
            return Err(Error::input(format!(
                "level must be nonnegative, got {level}"
            )));
        }
        let vertices = self.slice_vertices(p, level)?;
        let n = self.rank();
        if level.is_zero() {
            return Ok(vec![DivisorClass::zero(n)]);
        }
        let lo: Vec<Int> = (0..n)
            .map(|k| {
                vertices
                    .iter()
                    .map(|v| num::floor(&v[k]))
                    .min()
                    .expect("nonempty")
            })
            .collect();
        let hi: Vec<Int> = (0..n)
            .map(|k| {
                vertices
                    .iter()
                    .map(|v| num::ceil(&v[k]))
                    .max()
                    .expect("nonempty")
            })
            .collect();
        let w = self.lattice.dual_form(p)?;
        let pivot = w
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::input("level form is numerically trivial"))?;
        let free: Vec<usize> = (0..n).filter(|&k| k != pivot).collect();

        let cone = self.with_facets_if_possible();
        let mut out = Vec::new();
        let mut x: Vec<Int> = lo.clone();
        'odometer: loop {
            let partial: Int = free.iter().map(|&k| &w[k] * &x[k]).sum();
            let rest = level - partial;
            if (&rest % &w[pivot]).is_zero() {
                let xp = &rest / &w[pivot];
                if xp >= lo[pivot] && xp <= hi[pivot] {
                    let mut cand = x.clone();
                    cand[pivot] = xp;
                    let cand = DivisorClass(cand);
                    if cone.membership(&cand)? {
                        out.push(cand);
                    }
                }
            }
            // advance the free coordinates, last one fastest
            for &k in free.iter().rev() {
                if x[k] < hi[k] {
                    x[k] += BigInt::one();
                    continue 'odometer;
                }
                x[k] = lo[k].clone();
            }
            break;
        }
        out.sort();
        Ok(out)
    }
}
