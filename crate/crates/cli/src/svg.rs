//! SVG figures of lattice paths.
//!
//! A lattice point `(p, q)` is drawn at `(20 p, -20 q)`: one step is 20
//! user units and the q axis points up on screen.

use std::fmt::Write as _;

use pfh_core::lattice::ConvexPath;

pub const STEP: f64 = 20.0;

/// A polyline in lattice coordinates with a label at its last point.
#[derive(Clone, Debug)]
pub struct Figure {
    pub points: Vec<(f64, f64)>,
    pub label: String,
    pub dashed: bool,
}

impl Figure {
    pub fn from_path(path: &ConvexPath, label: impl Into<String>) -> Self {
        let points = path.vertices().iter().map(|v| (v.p as f64, v.q as f64)).collect();
        Figure { points, label: label.into(), dashed: false }
    }
}

fn screen((p, q): (f64, f64)) -> (f64, f64) {
    (STEP * p, -STEP * q)
}

fn num(x: f64) -> String {
    let r = (x * 1000.0).round() / 1000.0;
    let s = format!("{r:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Grid over the bounding box of all figures (and the origin), then one
/// polyline per figure.
pub fn render_svg(figures: &[Figure]) -> String {
    let all = figures.iter().flat_map(|f| f.points.iter().copied()).chain([(0.0, 0.0)]);
    let (mut p0, mut p1, mut q0, mut q1) = (0f64, 0f64, 0f64, 0f64);
    for (p, q) in all {
        p0 = p0.min(p.floor());
        p1 = p1.max(p.ceil());
        q0 = q0.min(q.floor());
        q1 = q1.max(q.ceil());
    }
    let (p0, p1, q0, q1) = (p0 - 1.0, p1 + 1.0, q0 - 1.0, q1 + 1.0);
    let mut s = String::new();
    let (x, y) = screen((p0, q1));
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        num(x),
        num(y),
        num(STEP * (p1 - p0)),
        num(STEP * (q1 - q0))
    );
    let _ = writeln!(s, r##"<g stroke="#ddd" stroke-width="0.5">"##);
    let mut p = p0;
    while p <= p1 {
        let ((xa, ya), (_, yb)) = (screen((p, q0)), screen((p, q1)));
        let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(xa), num(ya), num(xa), num(yb));
        p += 1.0;
    }
    let mut q = q0;
    while q <= q1 {
        let ((xa, ya), (xb, _)) = (screen((p0, q)), screen((p1, q)));
        let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(xa), num(ya), num(xb), num(ya));
        q += 1.0;
    }
    let _ = writeln!(s, "</g>");
    for f in figures {
        let pts: Vec<String> = f.points.iter().map(|&pt| {
            let (x, y) = screen(pt);
            format!("{},{}", num(x), num(y))
        }).collect();
        let dash = if f.dashed { r#" stroke-dasharray="4 3""# } else { "" };
        let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="black" stroke-width="1.5"{dash}/>"#, pts.join(" "));
        if let Some(&last) = f.points.last() {
            let (x, y) = screen(last);
            let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="10">{}</text>"#, num(x + 4.0), num(y - 4.0), escape(&f.label));
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
