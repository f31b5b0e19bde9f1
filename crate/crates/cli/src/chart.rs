//! ASCII and SVG renderings of Ext charts in the Adams convention: the
//! horizontal axis is `t - s`, the vertical axis is `s`.

use std::fmt::Write;

use hopf_core::homalg::ExtChart;

use crate::error::{CliError, CliResult};

pub const NO_CLASSES: &str = "(no classes)";

const CELL: i64 = 24;
const MARGIN: i64 = 40;
const DOT_SPREAD: f64 = 5.0;
const DOT_RADIUS: f64 = 2.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartFormat {
    Ascii,
    Svg,
}

/// Columns `x = t - s`: the declared `t` range, widened to every class.
fn x_range(c: &ExtChart) -> CliResult<(i32, i32)> {
    if c.max_t < c.min_t {
        return Err(CliError::Usage(format!("empty chart range: t from {} to {}", c.min_t, c.max_t)));
    }
    let lo = c.entries().map(|(s, t, _)| t - s as i32).fold(c.min_t, i32::min);
    Ok((lo, c.max_t))
}

pub fn emit_chart(c: &ExtChart, format: ChartFormat) -> CliResult<String> {
    let (lo, hi) = x_range(c)?;
    Ok(match format {
        ChartFormat::Ascii => ascii(c, lo, hi),
        ChartFormat::Svg => svg(c, lo, hi),
    })
}

fn ascii(c: &ExtChart, lo: i32, hi: i32) -> String {
    if c.is_zero() {
        return format!("{NO_CLASSES}\n");
    }
    let width = [lo.to_string().len(), hi.to_string().len(), c.entries().map(|e| e.2.to_string().len()).max().unwrap_or(1)]
        .into_iter()
        .max()
        .unwrap_or(1);
    let label = c.max_s.to_string().len();
    let mut out = String::new();
    if !c.note.is_empty() {
        let _ = writeln!(out, "{}", c.note);
    }
    for s in (0..=c.max_s).rev() {
        let _ = write!(out, "{s:>label$} |");
        for x in lo..=hi {
            let d = c.get(s, x + s as i32);
            let cell = if d == 0 { String::from(".") } else { d.to_string() };
            let _ = write!(out, " {cell:>width$}");
        }
        out.push('\n');
    }
    let cols = (hi - lo + 1) as usize;
    let _ = writeln!(out, "{} +{}", " ".repeat(label), "-".repeat(cols * (width + 1)));
    let _ = write!(out, "{}  ", " ".repeat(label));
    for x in lo..=hi {
        let _ = write!(out, " {x:>width$}");
    }
    let _ = writeln!(out, "   x = t - s, y = s");
    out
}

fn svg(c: &ExtChart, lo: i32, hi: i32) -> String {
    let cols = i64::from(hi - lo + 1);
    let rows = c.max_s as i64 + 1;
    let (w, h) = (2 * MARGIN + cols * CELL, 2 * MARGIN + rows * CELL);
    let cx = |x: i32| MARGIN + i64::from(x - lo) * CELL + CELL / 2;
    let cy = |s: usize| MARGIN + (rows - 1 - s as i64) * CELL + CELL / 2;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="monospace" font-size="10">"#
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    if !c.note.is_empty() {
        let _ = writeln!(out, r#"<text x="{MARGIN}" y="{}">{}</text>"#, MARGIN / 2, escape(&c.note));
    }
    let (x0, y0) = (MARGIN, h - MARGIN);
    let _ = writeln!(out, r#"<line x1="{x0}" y1="{y0}" x2="{}" y2="{y0}" stroke="black"/>"#, w - MARGIN);
    let _ = writeln!(out, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{MARGIN}" stroke="black"/>"#);
    for x in lo..=hi {
        let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{x}</text>"#, cx(x), y0 + 14);
    }
    for s in 0..=c.max_s {
        let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{s}</text>"#, x0 - 6, cy(s) + 4);
    }
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">t - s</text>"#, w - MARGIN, h - 6);
    if c.is_zero() {
        let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{NO_CLASSES}</text>"#, w / 2, h / 2);
    }
    for (s, t, d) in c.entries() {
        let x = t - s as i32;
        if x < lo || x > hi {
            continue;
        }
        for k in 0..d {
            let off = (k as f64 - (d as f64 - 1.0) / 2.0) * DOT_SPREAD;
            let _ = writeln!(
                out,
                r#"<circle cx="{:.1}" cy="{}" r="{DOT_RADIUS}" fill="black"/>"#,
                cx(x) as f64 + off,
                cy(s)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
