//! ASCII tables for terminal output. All numbers are exact.

use lowdeg_core::destab::{DestabCertificate, Verdict};
use lowdeg_core::invariants::Interval;
use lowdeg_core::num::render_rat;
use lowdeg_core::sheaf::SheafReport;
use lowdeg_core::{BoundCertificate, DivisorClass, ExcReport};
use num_bigint::BigInt;

/// Bordered table with a header row.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let rule: String = widths
        .iter()
        .map(|w| format!("+{}", "-".repeat(w + 2)))
        .collect::<String>()
        + "+\n";
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut s = String::new();
        for (cell, w) in cells.zip(&widths) {
            let pad = w - cell.chars().count();
            s.push_str(&format!("| {cell}{} ", " ".repeat(pad)));
        }
        s + "|\n"
    };
    let mut out = rule.clone();
    out.push_str(&line(&mut header.iter().copied()));
    out.push_str(&rule);
    for row in rows {
        out.push_str(&line(&mut row.iter().map(String::as_str)));
    }
    if !rows.is_empty() {
        out.push_str(&rule);
    }
    out
}

fn key_values(rows: &[(&str, String)]) -> String {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|(k, v)| vec![k.to_string(), v.clone()])
        .collect();
    table(&["field", "value"], &rows)
}

fn interval(i: &Interval) -> String {
    if i.is_point() {
        i.lo.to_string()
    } else {
        format!("[{}, {}]", i.lo, i.hi)
    }
}

pub fn certificate(c: &BoundCertificate) -> String {
    let mut out = key_values(&[
        ("model", c.model.clone()),
        ("class", c.class.to_string()),
        ("gon", interval(&c.gon)),
        ("airr", interval(&c.airr)),
        ("exact", c.exact.to_string()),
        ("airr = gon", c.airr_equals_gon.to_string()),
        (
            "finiteness threshold",
            c.finiteness_threshold
                .as_ref()
                .map_or_else(|| "none".to_string(), BigInt::to_string),
        ),
    ]);
    let rows: Vec<Vec<String>> = c
        .provenance
        .iter()
        .map(|p| vec![p.bound.clone(), p.reference.clone()])
        .collect();
    out.push_str(&table(&["bound", "ref"], &rows));
    for n in &c.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out
}

pub fn exc(r: &ExcReport, p: &DivisorClass) -> String {
    let mut out = format!(
        "P = {p}, slice minimum m = {}, level bound {}, {} exceptional classes\n",
        render_rat(&r.slice_min),
        r.level_bound,
        r.members.len()
    );
    let rows: Vec<Vec<String>> = r
        .members
        .iter()
        .map(|m| {
            vec![
                m.class.to_string(),
                m.level.to_string(),
                m.square.to_string(),
                m.nine_hp.to_string(),
            ]
        })
        .collect();
    out.push_str(&table(&["H", "H.P", "H.H", "9 H.P"], &rows));
    out
}

pub fn destab(c: &DestabCertificate) -> String {
    let mut out = format!(
        "model {}, C = {}, C^2 = {}, e = {}\n",
        c.model, c.curve, c.curve_square, c.e
    );
    let s = &c.candidates;
    let rows: Vec<Vec<String>> = s
        .raw
        .iter()
        .zip(&s.residual_degrees)
        .map(|(d, r)| {
            let yes_no = |b: bool| if b { "yes" } else { "no" }.to_string();
            vec![
                d.to_string(),
                r.to_string(),
                yes_no(s.pencil_filtered.contains(d)),
                yes_no(s.surviving.contains(d)),
            ]
        })
        .collect();
    out.push_str(&table(&["D", "D.C - e", "pencil", "survives"], &rows));
    for w in &s.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    match &c.verdict {
        Verdict::NoPencil { gonality_exceeds } => {
            out.push_str(&format!("verdict: gon > {gonality_exceeds}\n"))
        }
        Verdict::Survivors { candidates } => {
            let list: Vec<String> = candidates
                .iter()
                .map(|v| format!("{} (residual degree {})", v.class, v.residual))
                .collect();
            out.push_str(&format!(
                "verdict: no contradiction; pencil candidates remain, surviving: {}\n",
                if list.is_empty() {
                    "none".to_string()
                } else {
                    list.join(", ")
                }
            ));
        }
    }
    out
}

pub fn sheaf(r: &SheafReport, c: &DivisorClass, e: &BigInt) -> String {
    let ch = &r.character;
    key_values(&[
        ("C", c.to_string()),
        ("e", e.to_string()),
        ("ch0", ch.ch0.to_string()),
        ("ch1", ch.ch1.to_string()),
        ("ch2", render_rat(&ch.ch2)),
        ("Delta", render_rat(&r.discriminant)),
        ("mu_C", render_rat(&r.slope_c)),
        (
            "verdict",
            if r.unstable {
                "unstable (Delta > 0)"
            } else {
                "not forced unstable (Delta <= 0)"
            }
            .to_string(),
        ),
    ])
}
