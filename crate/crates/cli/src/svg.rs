//! Minimal self-contained SVG line charts. Output depends only on the
//! inputs, so identical data gives identical bytes.

use std::fmt::Write as _;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Line chart with markers, axes with five ticks each, axis labels, a legend
/// and `comment` (typically the config echo) embedded as an XML comment.
pub fn emit_svg(title: &str, x_label: &str, y_label: &str, comment: &str, series: &[Series]) -> Result<String> {
    let finite = |&(x, y): &(f64, f64)| x.is_finite() && y.is_finite();
    let all: Vec<(f64, f64)> = series.iter().flat_map(|s| s.points.iter().copied().filter(finite)).collect();
    if all.is_empty() {
        return Err(CliError::EmptySeries);
    }
    let (x0, x1) = range(all.iter().map(|p| p.0));
    let (y0, y1) = range(all.iter().map(|p| p.1));
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let w = &mut s;
    // Writing to a String cannot fail.
    let _ = writeln!(w, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#);
    let _ = writeln!(w, "<!-- {} -->", comment.replace("--", "- -"));
    let _ = writeln!(w, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(w, r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="15">{}</text>"#, WIDTH / 2.0, escape(title));
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(w, r#"<path d="M{left} {top}V{bottom}H{right}" fill="none" stroke="black"/>"#);
    for i in 0..=4 {
        let t = f64::from(i) / 4.0;
        let (xv, yv) = (x0 + t * (x1 - x0), y0 + t * (y1 - y0));
        let (x, y) = (px(xv), py(yv));
        let _ = writeln!(w, r#"<path d="M{x:.2} {bottom}v5M{left} {y:.2}h-5" stroke="black"/>"#);
        let _ = writeln!(w, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="11">{xv:.4}</text>"#, bottom + 18.0);
        let _ = writeln!(w, r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="11">{yv:.4}</text>"#, left - 8.0, y + 4.0);
    }
    let _ = writeln!(w, r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13">{}</text>"#, WIDTH / 2.0, HEIGHT - 14.0, escape(x_label));
    let _ = writeln!(w, r#"<text x="16" y="{0}" transform="rotate(-90 16 {0})" text-anchor="middle" font-family="sans-serif" font-size="13">{1}</text>"#, HEIGHT / 2.0, escape(y_label));
    for (i, ser) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts: Vec<String> = ser.points.iter().filter(|p| finite(p)).map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        if pts.len() > 1 {
            let _ = writeln!(w, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#, pts.join(" "));
        }
        for p in &pts {
            let (x, y) = p.split_once(',').expect("formatted as x,y");
            let _ = writeln!(w, r#"<circle cx="{x}" cy="{y}" r="3" fill="{color}"/>"#);
        }
        let ly = top + 4.0 + 16.0 * i as f64;
        let _ = writeln!(w, r#"<rect x="{}" y="{:.2}" width="10" height="10" fill="{color}"/>"#, right - 120.0, ly - 9.0);
        let _ = writeln!(w, r#"<text x="{}" y="{ly:.2}" font-family="sans-serif" font-size="11">{}</text>"#, right - 105.0, escape(&ser.name));
    }
    s.push_str("</svg>\n");
    Ok(s)
}
