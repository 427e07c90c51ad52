//! Static SVG plot of success rate against k.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::{read_summary, CellSummary};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// `(adversary, solver)` and its `(k, success rate)` points.
pub type Series = ((String, String), Vec<(usize, f64)>);

/// One polyline per `(adversary, solver)`, points sorted by k.
pub fn series(rows: &[CellSummary]) -> Vec<Series> {
    let mut out: Vec<Series> = Vec::new();
    for r in rows {
        let key = (r.adversary.clone(), r.solver.clone());
        match out.iter_mut().find(|(k, _)| *k == key) {
            Some((_, pts)) => pts.push((r.k, r.success_rate)),
            None => out.push((key, vec![(r.k, r.success_rate)])),
        }
    }
    for (_, pts) in &mut out {
        pts.sort_by_key(|&(k, _)| k);
    }
    out
}

pub fn render_svg(rows: &[CellSummary]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::arg("summary has no rows to plot"));
    }
    let lines = series(rows);
    let k_min = rows.iter().map(|r| r.k).min().expect("nonempty") as f64;
    let k_max = rows.iter().map(|r| r.k).max().expect("nonempty") as f64;
    let (lo, hi) = if k_min == k_max { (k_min - 1.0, k_max + 1.0) } else { (k_min, k_max) };
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let x = |k: usize| MARGIN + (k as f64 - lo) / (hi - lo) * plot_w;
    let y = |rate: f64| HEIGHT - MARGIN - rate.clamp(0.0, 1.0) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (x0, y0, x1, y1) = (MARGIN, HEIGHT - MARGIN, WIDTH - MARGIN, MARGIN);
    let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#);
    let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#);
    for tick in 0..=4 {
        let rate = tick as f64 / 4.0;
        let ty = y(rate);
        let _ = writeln!(s, r#"<line x1="{}" y1="{ty}" x2="{x0}" y2="{ty}" stroke="black"/>"#, x0 - 4.0);
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{rate:.2}</text>"#, x0 - 8.0, ty + 4.0);
    }
    let mut ks: Vec<usize> = rows.iter().map(|r| r.k).collect();
    ks.sort_unstable();
    ks.dedup();
    for k in ks {
        let tx = x(k);
        let _ = writeln!(s, r#"<line x1="{tx}" y1="{y0}" x2="{tx}" y2="{}" stroke="black"/>"#, y0 + 4.0);
        let _ = writeln!(s, r#"<text x="{tx}" y="{}" text-anchor="middle">{k}</text>"#, y0 + 18.0);
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">clique size k</text>"#,
        WIDTH / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="15" y="{}" text-anchor="middle" transform="rotate(-90 15 {})">success rate</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );

    for (idx, ((adversary, solver), pts)) in lines.iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        let coords: Vec<String> = pts.iter().map(|&(k, r)| format!("{:.2},{:.2}", x(k), y(r))).collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            coords.join(" ")
        );
        for &(k, r) in pts {
            let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#, x(k), y(r));
        }
        let ly = MARGIN + 16.0 * idx as f64;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{ly}" fill="{color}">{} / {}</text>"#,
            x1 - 150.0,
            escape(adversary),
            escape(solver)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn plot_summary(summary: &Path, out: &Path) -> Result<()> {
    let svg = render_svg(&read_summary(summary)?)?;
    std::fs::write(out, svg).map_err(|e| Error::io(out, e))
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
