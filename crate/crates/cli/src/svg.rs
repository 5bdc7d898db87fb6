//! Minimal SVG scatter plots.

use std::fmt::Write as _;

use lle_core::nalgebra::DMatrix;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 32.0;

/// Eight-stop approximation of the viridis colormap.
const RAMP: [(u8, u8, u8); 8] = [
    (68, 1, 84),
    (70, 50, 126),
    (54, 92, 141),
    (39, 127, 142),
    (31, 161, 135),
    (74, 193, 109),
    (160, 218, 57),
    (253, 231, 37),
];

/// Linear interpolation along the ramp, `t` clamped to `[0, 1]`.
pub fn color(t: f64) -> (u8, u8, u8) {
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let pos = t * (RAMP.len() - 1) as f64;
    let lo = (pos.floor() as usize).min(RAMP.len() - 2);
    let f = pos - lo as f64;
    let mix = |a: u8, b: u8| (a as f64 + f * (b as f64 - a as f64)).round() as u8;
    let (a, b) = (RAMP[lo], RAMP[lo + 1]);
    (mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, lo + 0.5)
    }
}

/// Scatter of the first two rows of `y` (`d x N`); with `d = 1` the
/// horizontal axis is the sample index. Points are colored by `shade`.
pub fn scatter(y: &DMatrix<f64>, shade: &[f64], title: &str) -> String {
    let n = y.ncols();
    let xs: Vec<f64> = if y.nrows() >= 2 { y.row(0).iter().copied().collect() } else { (0..n).map(|i| i as f64).collect() };
    let ys: Vec<f64> = if y.nrows() >= 2 { y.row(1).iter().copied().collect() } else { y.row(0).iter().copied().collect() };
    let (x0, x1) = range(xs.iter().copied());
    let (y0, y1) = range(ys.iter().copied());
    let (s0, s1) = range(shade.iter().copied());
    let span = SIZE - 2.0 * MARGIN;
    let px = |v: f64| MARGIN + (v - x0) / (x1 - x0) * span;
    let py = |v: f64| SIZE - MARGIN - (v - y0) / (y1 - y0) * span;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="20" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#, SIZE / 2.0, escape(title));
    let axis = r##"stroke="#444" stroke-width="1""##;
    let _ = writeln!(out, r#"<line x1="{MARGIN}" y1="{b}" x2="{r}" y2="{b}" {axis}/>"#, b = SIZE - MARGIN, r = SIZE - MARGIN);
    let _ = writeln!(out, r#"<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{b}" {axis}/>"#, b = SIZE - MARGIN);
    for i in 0..n {
        let t = shade.get(i).map_or(0.0, |s| (s - s0) / (s1 - s0));
        let (r, g, b) = color(t);
        let _ = writeln!(
            out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="2" fill="#{r:02x}{g:02x}{b:02x}"/>"##,
            px(xs[i]),
            py(ys[i])
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
