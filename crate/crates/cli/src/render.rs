//! Plain-text view of an [`OutputDocument`].

use std::fmt::Write;

use crate::document::{InputEcho, OutputDocument};

fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let head: Vec<String> = header.iter().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "{}", line(&head));
    let _ = writeln!(out, "{}", widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().join("  "));
    for row in rows {
        let _ = writeln!(out, "{}", line(row));
    }
}

fn set(v: &[usize]) -> String {
    format!("{{{}}}", v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
}

pub fn render_text(doc: &OutputDocument) -> String {
    let mut out = String::new();
    match &doc.input {
        InputEcho::Zip(spec) => {
            let _ = writeln!(out, "datum: rank {} Cartan matrix, q = {}^{}", spec.cartan.len(), spec.q0, spec.e);
        }
        InputEcho::Bt(p) => {
            let _ = writeln!(out, "BT_{}^{{h={}, d={}}} over F_{}", p.n, p.h, p.d, p.p);
        }
        InputEcho::Strata { q } => {
            let q = q.map_or("symbolic".to_string(), |q| q.to_string());
            let _ = writeln!(out, "strata table input, q = {q}");
        }
    }
    if let Some(d) = &doc.datum {
        let _ = writeln!(
            out,
            "|W| = {}, |Omega| = {}, I = {}, J = {}, w1 = {}, w2 = {}, dim G/P = {}",
            d.weyl_order,
            d.omega_order,
            set(&d.parabolic),
            set(&d.j),
            d.w1,
            d.w2,
            d.flag_dimension
        );
        let _ = writeln!(
            out,
            "{} elements of ^I W^, {} theta-orbits, {} strata",
            d.num_elements, d.num_theta_orbits, d.num_strata
        );
    }
    if !doc.elements.is_empty() {
        let _ = writeln!(out);
        let rows: Vec<Vec<String>> = doc
            .elements
            .iter()
            .map(|e| {
                vec![
                    e.element.clone(),
                    e.omega.clone(),
                    e.w_double_prime.clone(),
                    e.y.clone(),
                    e.w_j.clone(),
                    e.ell.to_string(),
                    e.theta_orbit.to_string(),
                ]
            })
            .collect();
        table(&mut out, &["element", "omega", "w''", "y", "w_J", "ell", "orbit"], &rows);
    }
    if !doc.strata.is_empty() {
        let _ = writeln!(out);
        let rows: Vec<Vec<String>> = doc
            .strata
            .iter()
            .map(|s| {
                vec![s.representative.clone(), s.ell.to_string(), s.a.to_string(), s.f.to_string(), s.members.to_string()]
            })
            .collect();
        table(&mut out, &["representative", "ell", "a", "f", "members"], &rows);
    }
    if let Some(z) = &doc.zeta {
        let _ = writeln!(out);
        let _ = writeln!(out, "Z(t) = {}", z.symbolic);
        if let (Some(q), Some(n)) = (z.q, &z.numeric) {
            let _ = writeln!(out, "at q = {q}: Z(t) = {n}");
        }
    }
    if !doc.series.is_empty() {
        let _ = writeln!(out);
        let rows: Vec<Vec<String>> = doc
            .series
            .iter()
            .map(|s| vec![format!("t^{}", s.power), s.symbolic.clone(), s.numeric.clone().unwrap_or_default()])
            .collect();
        table(&mut out, &["power", "coefficient", "numeric"], &rows);
    }
    if !doc.counts.is_empty() {
        let _ = writeln!(out);
        let rows: Vec<Vec<String>> = doc
            .counts
            .iter()
            .map(|c| vec![c.v.to_string(), c.symbolic.clone(), c.numeric.clone().unwrap_or_default()])
            .collect();
        table(&mut out, &["v", "N_v", "numeric"], &rows);
    }
    if !doc.lengths.is_empty() {
        let _ = writeln!(out);
        let rows: Vec<Vec<String>> = doc
            .lengths
            .iter()
            .map(|l| vec![set(&l.i), set(&l.j), l.element.clone(), l.ell.to_string()])
            .collect();
        table(&mut out, &["I", "J", "element", "ell_IJ"], &rows);
    }
    if let Some(o) = &doc.oracle {
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "census over F_{} (h = {}, d = {}): {} modules, |GL_h| = {}, {} classes",
            o.q,
            o.h,
            o.d,
            o.num_objects,
            o.group_order,
            o.classes.len()
        );
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{verdict}: census {} vs strata {}", o.census, o.formula);
    }
    out
}
