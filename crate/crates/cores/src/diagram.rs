//! Standalone SVG drawings of `A_n`: every point carries its label, is
//! filled with its colour, and is drawn solid when it lies in the ideal.

use std::fmt::Write as _;

use cores_core::lattice::{color, label};
use cores_core::{OrderIdeal, TriangleLattice};

const STEP: f64 = 44.0;
const MARGIN: f64 = 36.0;
const RADIUS: f64 = 15.0;
const COLORS: [&str; 2] = ["#3b6fb6", "#c8453c"];

pub const MAX_DIAGRAM_N: usize = 40;

pub fn render_svg(n: usize, c: u8, ideal: Option<&OrderIdeal>) -> String {
    let side = n.max(1) as f64;
    let width = 2.0 * MARGIN + (side - 1.0) * STEP;
    let height = width + 24.0;
    // (i, j) sits at column i and row j counted from the bottom
    let at = |i: usize, j: usize| (MARGIN + i as f64 * STEP, 24.0 + MARGIN + (side - 1.0 - j as f64) * STEP);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let occupied = ideal.map_or(0, OrderIdeal::len);
    let _ = writeln!(
        svg,
        r#"<text x="{MARGIN}" y="20" font-family="sans-serif" font-size="14">A_{n}, c = {c}, {occupied} occupied</text>"#
    );
    let lattice = TriangleLattice::new(n);
    let _ = writeln!(svg, r##"<g stroke="#999" stroke-width="1">"##);
    for p in lattice.points() {
        let (x, y) = at(p.i, p.j);
        if p.i + p.j + 1 < n {
            let (xr, _) = at(p.i + 1, p.j);
            let (_, yu) = at(p.i, p.j + 1);
            let _ = writeln!(svg, r#"<line x1="{x}" y1="{y}" x2="{xr}" y2="{y}"/>"#);
            let _ = writeln!(svg, r#"<line x1="{x}" y1="{y}" x2="{x}" y2="{yu}"/>"#);
        }
    }
    let _ = writeln!(svg, "</g>");
    for p in lattice.points() {
        let (x, y) = at(p.i, p.j);
        let fill = COLORS[color(c, p) as usize];
        let l = label(n, p).expect("point of A_n");
        let inside = ideal.is_some_and(|s| s.contains(p));
        let (opacity, stroke, text) = if inside { ("1", "#000", "#fff") } else { ("0.25", "none", "#000") };
        let _ = writeln!(
            svg,
            r#"<circle cx="{x}" cy="{y}" r="{RADIUS}" fill="{fill}" fill-opacity="{opacity}" stroke="{stroke}" stroke-width="2"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12" fill="{text}">{l}</text>"#,
            y + 4.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_circle_and_label_per_point() {
        let ideal = OrderIdeal::from_labels(3, &[6, 3, 2, 1]).unwrap();
        let svg = render_svg(3, 1, Some(&ideal));
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<circle").count(), 6);
        assert_eq!(svg.matches(r##"stroke="#000""##).count(), 4);
        for l in [1, 2, 3, 6, 7, 11] {
            assert!(svg.contains(&format!(">{l}</text>")), "{l}");
        }
    }

    #[test]
    fn empty_lattice_is_valid() {
        let svg = render_svg(0, 0, None);
        assert_eq!(svg.matches("<circle").count(), 0);
    }
}
