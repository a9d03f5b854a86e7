//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
//! All thresholds are exact; the only sampled criteria use fixed seeds.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use lowdeg_core::destab::{contradiction_certificate, enumerate_candidates, Verdict};
use lowdeg_core::exc::exc_set;
use lowdeg_core::invariants::{certify, gon_bounds, tags, Interval};
use lowdeg_core::num::int;
use lowdeg_core::selftest::{self, oracles};
use lowdeg_core::{
    ChernCharacter, CurveSpec, DestabilizerQuery, DivisorClass, IntersectionLattice, RationalCone,
    SurfaceModel,
};

type Check = Result<String, String>;

/// Random ample pairs per built-in lattice for the Hodge-index criterion.
const HODGE_SAMPLES: usize = 100_000;
/// Random (C, e) pairs for the discriminant identity.
const DISCRIMINANT_SAMPLES: usize = 1_000;
/// Minimum number of cones in the exceptional-set completeness check.
const MIN_CONES: usize = 5;
/// Extra levels the box oracle scans past the level bound.
const ORACLE_MARGIN: i64 = 5;
/// Wall-clock budget for the E x P^1 grid, in seconds.
const EXP1_GRID_SECONDS: f64 = 1.0;

fn c(v: &[i64]) -> DivisorClass {
    DivisorClass::from_i64s(v)
}

fn cs(vs: &[&[i64]]) -> Vec<DivisorClass> {
    vs.iter().map(|v| c(v)).collect()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn rank_one_threshold() -> Check {
    let expected: Vec<DivisorClass> = (1..=8).map(|a| c(&[a])).collect();
    for d in 1..=3 {
        let lattice = Arc::new(IntersectionLattice::from_i64s(&[&[d]], None).map_err(err)?);
        let cone = RationalCone::from_rays(lattice, vec![c(&[1])]).map_err(err)?;
        let got = exc_set(&cone, &c(&[1])).map_err(err)?.classes();
        if got != expected {
            return Err(format!("[[{d}]]: got {got:?}"));
        }
    }
    Ok("Exc = {1..8} for d = 1, 2, 3".into())
}

fn exc_completeness() -> Check {
    let cones = oracles::standard_cones();
    if cones.len() < MIN_CONES {
        return Err(format!("only {} cones", cones.len()));
    }
    let lattice = Arc::new(IntersectionLattice::from_i64s(&[&[0, 1], &[1, 0]], None).map_err(err)?);
    let cone = RationalCone::from_rays(lattice, cs(&[&[1, 2], &[2, 1]])).map_err(err)?;
    let report = exc_set(&cone, &c(&[1, 1])).map_err(err)?;
    if report.level_bound != int(20) {
        return Err(format!(
            "wedge level bound {} instead of 20",
            report.level_bound
        ));
    }
    let classes = report.classes();
    if !classes.contains(&c(&[6, 12])) || classes.contains(&c(&[7, 14])) {
        return Err("wedge: (6,12) must be a member and (7,14) must not".into());
    }
    let mut total = 0;
    for ((name, bc), bound) in cones.iter().zip(oracles::STANDARD_LEVEL_BOUNDS) {
        let lattice = Arc::new(
            IntersectionLattice::from_gram(
                bc.gram
                    .iter()
                    .map(|r| r.iter().map(|&x| int(x)).collect())
                    .collect(),
                None,
            )
            .map_err(err)?,
        );
        let cone = RationalCone::from_rays(lattice, bc.rays.iter().map(|r| c(r)).collect())
            .map_err(err)?;
        let report = exc_set(&cone, &c(&bc.p)).map_err(err)?;
        if report.level_bound != int(bound) {
            return Err(format!(
                "{name}: level bound {} vs {bound}",
                report.level_bound
            ));
        }
        let mut scan = bc.clone();
        scan.horizon = bound + ORACLE_MARGIN;
        let oracle: Vec<DivisorClass> = oracles::exc_by_box(&scan).iter().map(|h| c(h)).collect();
        if report.classes() != oracle {
            return Err(format!("{name}: library and box oracle differ"));
        }
        total += oracle.len();
    }
    Ok(format!(
        "{} cones, {total} classes, equal to the box scan out to l_max + {ORACLE_MARGIN}",
        cones.len()
    ))
}

fn p1p1_case_analysis() -> Check {
    let q = DestabilizerQuery::from_i64s(SurfaceModel::P1xP1, &[4, 4], 6).map_err(err)?;
    let s = enumerate_candidates(&q).map_err(err)?;
    if s.pencil_filtered != cs(&[&[0, 1], &[1, 0], &[1, 1]]) {
        return Err(format!(
            "(4,4), e = 6: pencil-filtered {:?}",
            s.pencil_filtered
        ));
    }
    let q = DestabilizerQuery::from_i64s(SurfaceModel::P1xP1, &[4, 5], 6).map_err(err)?;
    let s = enumerate_candidates(&q).map_err(err)?;
    if s.pencil_filtered.contains(&c(&[1, 1])) || s.raw.contains(&c(&[1, 1])) {
        return Err(format!("(4,5), e = 6: (1,1) present in {:?}", s.raw));
    }
    Ok("(4,4) e=6 -> {(0,1),(1,0),(1,1)}; (4,5) e=6 has no (1,1)".into())
}

fn exp1_grid() -> Check {
    let start = Instant::now();
    let mut n = 0;
    for gamma in 4..=10i64 {
        for alpha in (gamma + 1) / 2..=gamma {
            let q = DestabilizerQuery::from_i64s(SurfaceModel::ExP1, &[gamma, alpha], gamma - 1)
                .map_err(err)?;
            let cert = contradiction_certificate(&q).map_err(err)?;
            if cert.verdict
                != (Verdict::NoPencil {
                    gonality_exceeds: int(gamma - 1),
                })
            {
                return Err(format!("({gamma},{alpha}): verdict {:?}", cert.verdict));
            }
            let spec =
                CurveSpec::new(SurfaceModel::ExP1, c(&[gamma, alpha]), None, None).map_err(err)?;
            let gon = gon_bounds(&spec).map_err(err)?.interval;
            if gon != Interval::point(int(gamma)) {
                return Err(format!("({gamma},{alpha}): gon {gon:?}"));
            }
            n += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= EXP1_GRID_SECONDS {
        return Err(format!("{n} cases took {secs:.3} s"));
    }
    Ok(format!(
        "{n} cases, gon > gamma - 1 and gon = gamma, {secs:.3} s"
    ))
}

fn discriminant_identity() -> Check {
    let detail = selftest::discriminant(DISCRIMINANT_SAMPLES)?;
    let l = SurfaceModel::P1xP1.lattice();
    // C = (4,5): C^2 = 40, boundary e = 10
    let at = ChernCharacter::kernel_sheaf(&l, &c(&[4, 5]), &int(10)).map_err(err)?;
    let below = ChernCharacter::kernel_sheaf(&l, &c(&[4, 5]), &int(9)).map_err(err)?;
    if at.bogomolov_unstable(&l).map_err(err)? || !below.bogomolov_unstable(&l).map_err(err)? {
        return Err("(4,5): boundary e = C^2/4 misclassified".into());
    }
    Ok(detail)
}

/// The a.irr table over the algebraic closure for `(d1, d2)` curves, `d1 <= d2`.
fn p1p1_airr(d1: i64, d2: i64, bielliptic: Option<bool>) -> i64 {
    match (d1, d2, bielliptic) {
        (1, _, _) => 1,
        (2, 2, _) => 1,
        (2, _, _) => 2,
        (3, 3, Some(true)) => 2,
        (3, 3, _) => 3,
        (d, _, _) => d,
    }
}

fn invariant_tables() -> Check {
    let mut n = 0;
    for d1 in 1..=8 {
        for d2 in d1..=8 {
            let flags: &[Option<bool>] = if (d1, d2) == (3, 3) {
                &[Some(true), Some(false)]
            } else {
                &[None]
            };
            for &flag in flags {
                let spec =
                    CurveSpec::new(SurfaceModel::P1xP1, c(&[d1, d2]), None, flag).map_err(err)?;
                let cert = certify(&spec).map_err(err)?;
                let expected = Interval::point(int(p1p1_airr(d1, d2, flag)));
                if cert.airr != expected {
                    return Err(format!(
                        "({d1},{d2}) bielliptic {flag:?}: airr {:?}",
                        cert.airr
                    ));
                }
                n += 1;
            }
        }
    }
    for gamma in 4..=10 {
        for alpha in (gamma + 1) / 2..=gamma {
            let spec =
                CurveSpec::new(SurfaceModel::ExP1, c(&[gamma, alpha]), None, None).map_err(err)?;
            let cert = certify(&spec).map_err(err)?;
            if cert.gon != Interval::point(int(gamma)) || cert.airr != Interval::point(int(alpha)) {
                return Err(format!(
                    "({gamma},{alpha}): gon {:?}, airr {:?}",
                    cert.gon, cert.airr
                ));
            }
            n += 1;
        }
    }
    Ok(format!("{n} table entries"))
}

fn range_and_combiner() -> Check {
    let detail = selftest::certificate_range()?;
    let spec = CurveSpec::new(SurfaceModel::ExP1, c(&[10, 5]), None, None).map_err(err)?;
    let cert = certify(&spec).map_err(err)?;
    if cert.provenance.iter().any(|p| p.reference == tags::MAIN_Q0) {
        return Err("E x P^1 (10,5) certificate uses the C^2/9 bound".into());
    }
    if cert.airr != Interval::point(int(5)) {
        return Err(format!("E x P^1 (10,5): airr {:?}", cert.airr));
    }
    Ok(format!(
        "{detail}; (10,5) on E x P^1 has airr = 5 with no main_q0 tag"
    ))
}

fn hodge_index() -> Check {
    selftest::hodge_index(HODGE_SAMPLES)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("rank-1 exceptional threshold", rank_one_threshold),
        ("Exc completeness oracle", exc_completeness),
        ("P1xP1 case analysis", p1p1_case_analysis),
        ("ExP1 gonality certificate", exp1_grid),
        ("discriminant identity", discriminant_identity),
        ("invariant tables", invariant_tables),
        ("range and combiner sanity", range_and_combiner),
        ("Hodge-index property", hodge_index),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("[PASS] {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
