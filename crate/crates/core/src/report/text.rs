use std::fmt::Write;

use super::Report;

/// Human-readable report: header, Engel flag, one line per record.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = write!(out, "target: {} ({})", r.target, r.kind);
    if !r.parameters.is_empty() {
        let ps: Vec<String> = r
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let _ = write!(out, " [{}]", ps.join(", "));
    }
    let _ = writeln!(out);
    let suite: Vec<&str> = r.suite.iter().map(|c| c.as_str()).collect();
    let _ = writeln!(
        out,
        "grid: {} samples, tol {:e}; seed {}; suite {}",
        r.grid.samples,
        r.grid.tolerance,
        r.seed,
        suite.join(",")
    );
    let f = &r.flag;
    if !f.d.is_empty() {
        let _ = writeln!(out, "Engel flag W < D < E:");
        if let Some(w) = &f.w {
            let _ = writeln!(out, "  W  = <{w}>");
        }
        let _ = writeln!(out, "  D  = <{}>", f.d.join(", "));
        if let Some(e3) = &f.e3 {
            let _ = writeln!(out, "  E  = D + <{e3}>");
        }
        if let Some(a) = &f.alpha {
            let _ = writeln!(out, "  alpha = {a}");
        }
        if let Some(b) = &f.beta {
            let _ = writeln!(out, "  beta  = {b}");
        }
        if let Some(rb) = &f.reeb {
            let _ = writeln!(out, "  R     = {rb}");
        }
    }
    for rec in &r.records {
        let kind = rec
            .certificate
            .as_ref()
            .map(|c| format!(" [{}]", c.kind.as_str()))
            .unwrap_or_default();
        let _ = write!(out, "{:<9} {}{}", rec.status.as_str(), rec.name, kind);
        if let Some(m) = rec.residual_max {
            let _ = write!(out, " residual {m:e}");
        }
        let _ = writeln!(out);
        for (k, v) in &rec.details {
            let _ = writeln!(out, "            {k}: {v}");
        }
        for n in &rec.notes {
            let _ = writeln!(out, "            note: {n}");
        }
    }
    if let Some(g) = &r.geiges {
        let _ = writeln!(out, "mapping-torus levels ({}):", g.search.variant);
        for l in &g.search.trace {
            let _ = writeln!(
                out,
                "  n={:<3} engel={} JD=D={} passed={}",
                l.n, l.engel, l.j_invariant, l.passed
            );
        }
    }
    if let Some(t) = &r.timings_ms {
        for (k, v) in t {
            let _ = writeln!(out, "time {k}: {v:.1} ms");
        }
    }
    let _ = writeln!(out, "overall: {}", r.status.as_str());
    out
}
