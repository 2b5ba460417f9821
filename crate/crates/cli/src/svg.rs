//! Static SVG renderings. Output depends only on the inputs.

use std::fmt::Write;

use tilecheck::aabb::Aabb;
use tilecheck::autocorr::PiecewiseLinear1D;
use tilecheck::polybox::PolyBox;
use tilecheck::rational::to_f64;

const SCALE: f64 = 400.0;
const MARGIN: f64 = 10.0;

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.3}" height="{:.3}" viewBox="0 0 {:.3} {:.3}">"#,
        width, height, width, height
    );
}

/// One rectangle per box of a planar set, in the frame of `frame`.
pub fn render_boxes(set: &PolyBox, frame: &Aabb) -> String {
    let (x0, y0) = (to_f64(&frame.lo()[0]), to_f64(&frame.lo()[1]));
    let (x1, y1) = (to_f64(&frame.hi()[0]), to_f64(&frame.hi()[1]));
    let width = (x1 - x0) * SCALE + 2.0 * MARGIN;
    let height = (y1 - y0) * SCALE + 2.0 * MARGIN;
    let mut out = String::new();
    header(&mut out, width, height);
    let _ = writeln!(
        out,
        r##"<rect x="{m:.3}" y="{m:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="#999999" stroke-width="0.5"/>"##,
        width - 2.0 * MARGIN,
        height - 2.0 * MARGIN,
        m = MARGIN
    );
    for b in set.boxes() {
        let bx0 = to_f64(&b.lo()[0]);
        let by1 = to_f64(&b.hi()[1]);
        let w = to_f64(&b.side(0)) * SCALE;
        let h = to_f64(&b.side(1)) * SCALE;
        let x = (bx0 - x0) * SCALE + MARGIN;
        // SVG y grows downwards.
        let y = (y1 - by1) * SCALE + MARGIN;
        let _ = writeln!(
            out,
            r##"<rect x="{x:.3}" y="{y:.3}" width="{w:.3}" height="{h:.3}" fill="#4a7fb5" fill-opacity="0.6" stroke="#1f3f5f" stroke-width="0.5"/>"##
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Polyline graph of a piecewise-linear function.
pub fn render_graph(g: &PiecewiseLinear1D) -> String {
    let xs: Vec<f64> = g.breakpoints().iter().map(to_f64).collect();
    let ys: Vec<f64> = g.values().iter().map(to_f64).collect();
    let (xmin, xmax) = (xs[0], xs[xs.len() - 1]);
    let ymax = ys.iter().cloned().fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let sx = SCALE / (xmax - xmin).max(f64::MIN_POSITIVE);
    let sy = SCALE / 2.0 / ymax;
    let width = SCALE + 2.0 * MARGIN;
    let height = SCALE / 2.0 + 2.0 * MARGIN;
    let mut out = String::new();
    header(&mut out, width, height);
    let base = height - MARGIN;
    let _ = writeln!(
        out,
        r##"<line x1="{m:.3}" y1="{base:.3}" x2="{:.3}" y2="{base:.3}" stroke="#999999" stroke-width="0.5"/>"##,
        width - MARGIN,
        m = MARGIN
    );
    let points: Vec<String> = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| format!("{:.3},{:.3}", (x - xmin) * sx + MARGIN, base - y * sy))
        .collect();
    let _ = writeln!(
        out,
        r##"<polyline points="{}" fill="none" stroke="#b54a4a" stroke-width="1"/>"##,
        points.join(" ")
    );
    out.push_str("</svg>\n");
    out
}
