//! SVG rendering of 2-D curves and normal fans.

use std::fmt::Write;

use tropfactor::division;
use tropfactor::polyhedra::normal_fan;
use tropfactor::{Error, Polyhedron, Polytope, Result, Scalar, TropicalPolynomial};

struct Stroke {
    from: (f64, f64),
    to: (f64, f64),
    dotted: bool,
    label: String,
}

#[derive(Default)]
struct Scene {
    strokes: Vec<Stroke>,
    dots: Vec<(f64, f64)>,
}

fn xy(v: &[Scalar]) -> (f64, f64) {
    (v[0].to_f64(), v[1].to_f64())
}

fn weight_label(w: &Scalar) -> String {
    if w.is_one() {
        String::new()
    } else {
        let j = tropfactor::io::scalar_to_json(w);
        j.as_str().map_or_else(|| j.to_string(), str::to_string)
    }
}

/// Bounded part of a 1-dimensional cell, with unbounded directions cut at
/// `reach` beyond their base point.
fn segment(region: &Polyhedron, reach: f64) -> ((f64, f64), (f64, f64)) {
    let unit = |d: &[Scalar]| {
        let (x, y) = xy(d);
        let n = x.hypot(y);
        (x / n * reach, y / n * reach)
    };
    let v = region.vertices();
    let a = xy(&v[0]);
    if v.len() >= 2 {
        return (a, xy(&v[1]));
    }
    if let Some(r) = region.rays().first() {
        let (dx, dy) = unit(r);
        return (a, (a.0 + dx, a.1 + dy));
    }
    let (dx, dy) = unit(&region.lineality()[0]);
    ((a.0 - dx, a.1 - dy), (a.0 + dx, a.1 + dy))
}

fn extent(points: &[(f64, f64)]) -> f64 {
    let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
    for &(x, y) in points {
        lo = (lo.0.min(x), lo.1.min(y));
        hi = (hi.0.max(x), hi.1.max(y));
    }
    if points.is_empty() {
        1.0
    } else {
        (hi.0 - lo.0).max(hi.1 - lo.1).max(1.0)
    }
}

/// 𝒯(f), with cells outside 𝒱(g) dotted when a divisor is given.
pub fn curve(f: &TropicalPolynomial, divisor: Option<&TropicalPolynomial>) -> Result<String> {
    if f.dim() != 2 {
        return Err(Error::UnsupportedDimension(f.dim()));
    }
    let cx = f.complex();
    let weights = cx.lattice_weights();
    let ext = match divisor {
        Some(g) => Some(division::extend_weights(g, f)?.weights),
        None => None,
    };
    let corners: Vec<(f64, f64)> =
        cx.cells.iter().flat_map(|c| c.region.vertices().iter().map(|v| xy(v))).collect();
    let reach = extent(&corners) * 0.6;
    let mut scene = Scene::default();
    for (k, c) in cx.cells.iter().enumerate() {
        let (from, to) = segment(&c.region, reach);
        let dotted = ext.as_ref().is_some_and(|e| e[k].is_zero());
        scene.strokes.push(Stroke { from, to, dotted, label: weight_label(&weights[k]) });
    }
    scene.dots = cx.ridges.iter().map(|r| xy(&r.point)).collect();
    Ok(render(&scene))
}

/// The normal fan of a polygon as a star of unit rays; a point is a dot.
pub fn polytope_fan(p: &Polytope) -> Result<String> {
    if p.ambient_dim() != 2 {
        return Err(Error::UnsupportedDimension(p.ambient_dim()));
    }
    let mut scene = Scene::default();
    if p.num_vertices() == 1 {
        scene.dots.push(xy(&p.vertices()[0]));
        return Ok(render(&scene));
    }
    let cx = normal_fan(p)?;
    let weights = cx.lattice_weights();
    for (k, c) in cx.cells.iter().enumerate() {
        let (from, to) = segment(&c.region, 1.0);
        scene.strokes.push(Stroke { from, to, dotted: false, label: weight_label(&weights[k]) });
    }
    scene.dots.push((0.0, 0.0));
    Ok(render(&scene))
}

fn render(scene: &Scene) -> String {
    let mut pts: Vec<(f64, f64)> = scene.strokes.iter().flat_map(|s| [s.from, s.to]).collect();
    pts.extend(&scene.dots);
    let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
    for &(x, y) in &pts {
        lo = (lo.0.min(x), lo.1.min(0.0 - y));
        hi = (hi.0.max(x), hi.1.max(0.0 - y));
    }
    let (w, h) = ((hi.0 - lo.0).max(1.0), (hi.1 - lo.1).max(1.0));
    let (mx, my) = (w * 0.1, h * 0.1);
    let stroke = w.max(h) / 200.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.3} {:.3} {:.3} {:.3}">"#,
        lo.0 - mx,
        lo.1 - my,
        w + 2.0 * mx,
        h + 2.0 * my
    );
    for st in &scene.strokes {
        let dash = if st.dotted { format!(r#" stroke-dasharray="{:.3}""#, stroke * 3.0) } else { String::new() };
        let _ = writeln!(
            s,
            r#"  <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black" stroke-width="{:.3}"{dash}/>"#,
            st.from.0, 0.0 - st.from.1, st.to.0, 0.0 - st.to.1, stroke * if st.dotted { 1.0 } else { 2.0 }
        );
        if !st.label.is_empty() {
            let _ = writeln!(
                s,
                r#"  <text x="{:.3}" y="{:.3}" font-size="{:.3}">{}</text>"#,
                (st.from.0 + st.to.0) / 2.0,
                0.0 - (st.from.1 + st.to.1) / 2.0,
                stroke * 12.0,
                st.label
            );
        }
    }
    for &(x, y) in &scene.dots {
        let _ = writeln!(s, r#"  <circle cx="{:.3}" cy="{:.3}" r="{:.3}"/>"#, x, 0.0 - y, stroke * 3.0);
    }
    s.push_str("</svg>\n");
    s
}
