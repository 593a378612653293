//! CSV, JSON and SVG writers. All output is a pure function of its input,
//! so identical runs give byte-identical files.

use serde::Serialize;
use std::fmt::Write as _;
use std::io;
use std::path::Path;

use crate::app::elliptic::AxisPoint;
use crate::geometry::CharacteristicNet;

pub const CSV_HEADER: &str = "alpha,beta,x,y,phi,sigma";

/// 12 significant digits.
fn num(v: f64) -> String {
    format!("{v:.11e}")
}

/// One row per active node, row-major in alpha.
pub fn net_csv(net: &CharacteristicNet) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for n in net.active_nodes() {
        let _ = writeln!(out, "{},{},{},{},{},{}", num(n.alpha), num(n.beta), num(n.x), num(n.y), num(n.phi), num(n.sigma));
    }
    out
}

pub fn profile_csv(profile: &[AxisPoint]) -> String {
    let mut out = String::from("alpha,xi,sigma1,sigma2,delta\n");
    for p in profile {
        let _ = writeln!(out, "{},{},{},{},{}", num(p.alpha), num(p.xi), num(p.sigma1), num(p.sigma2), num(p.delta));
    }
    out
}

#[derive(Serialize)]
struct Envelope<'a, C: Serialize, R: Serialize> {
    version: &'static str,
    problem: &'a str,
    config: &'a C,
    report: &'a R,
}

/// Report wrapped with the crate version and the config it came from.
pub fn report_json<C: Serialize, R: Serialize>(problem: &str, config: &C, report: &R) -> String {
    let env = Envelope { version: env!("CARGO_PKG_VERSION"), problem, config, report };
    let mut s = serde_json::to_string_pretty(&env).expect("reports contain only plain data");
    s.push('\n');
    s
}

struct ViewBox {
    min_x: f64,
    min_y: f64,
    width: f64,
    height: f64,
}

impl ViewBox {
    /// Bounding box of `points` in SVG coordinates (`y` down), padded by 5%.
    fn fit<'a>(points: impl Iterator<Item = &'a [f64; 2]>) -> Self {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            x0 = x0.min(p[0]);
            x1 = x1.max(p[0]);
            y0 = y0.min(-p[1]);
            y1 = y1.max(-p[1]);
        }
        if !x0.is_finite() {
            return Self { min_x: -1.0, min_y: -1.0, width: 2.0, height: 2.0 };
        }
        let pad = 0.05 * (x1 - x0).max(y1 - y0).max(1e-9);
        Self { min_x: x0 - pad, min_y: y0 - pad, width: x1 - x0 + 2.0 * pad, height: y1 - y0 + 2.0 * pad }
    }

    fn stroke(&self) -> f64 {
        0.003 * self.width.max(self.height)
    }
}

fn polyline(out: &mut String, class: &str, pts: &[[f64; 2]]) {
    let coords: Vec<String> = pts.iter().map(|p| format!("{:.6},{:.6}", p[0], -p[1])).collect();
    let _ = writeln!(out, "  <polyline class=\"{class}\" points=\"{}\"/>", coords.join(" "));
}

fn svg_open(out: &mut String, vb: &ViewBox) {
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">",
        vb.min_x, vb.min_y, vb.width, vb.height
    );
}

/// Nets drawn into one picture; alpha-lines and beta-lines get the stroke
/// classes `alpha` and `beta`. Lines with fewer than two active nodes are
/// skipped.
pub fn nets_svg(nets: &[&CharacteristicNet]) -> String {
    let mut lines: Vec<(&str, Vec<[f64; 2]>)> = Vec::new();
    for net in nets {
        for j in 0..net.n_beta {
            lines.push(("alpha", net.alpha_line(j)));
        }
        for i in 0..net.n_alpha {
            lines.push(("beta", net.beta_line(i)));
        }
    }
    lines.retain(|(_, pts)| pts.len() >= 2);
    let vb = ViewBox::fit(lines.iter().flat_map(|(_, p)| p.iter()));
    let mut out = String::new();
    svg_open(&mut out, &vb);
    let w = vb.stroke();
    let _ = writeln!(
        out,
        "  <style>polyline {{ fill: none; stroke-width: {w:.6}; }} .alpha {{ stroke: #b03030; }} .beta {{ stroke: #3050b0; }}</style>"
    );
    for (class, pts) in &lines {
        polyline(&mut out, class, pts);
    }
    out.push_str("</svg>\n");
    out
}

pub fn net_svg(net: &CharacteristicNet) -> String {
    nets_svg(&[net])
}

/// `delta` against `xi`, drawn to scale with the axis origin marked.
pub fn profile_svg(profile: &[AxisPoint]) -> String {
    let pts: Vec<[f64; 2]> = profile.iter().map(|p| [p.xi, p.delta]).collect();
    let vb = ViewBox::fit(pts.iter().chain(std::iter::once(&[pts.first().map_or(0.0, |p| p[0]), 0.0])));
    let mut out = String::new();
    svg_open(&mut out, &vb);
    let w = vb.stroke();
    let _ = writeln!(
        out,
        "  <style>polyline {{ fill: none; stroke-width: {w:.6}; }} .axis {{ stroke: #808080; }} .delta {{ stroke: #202020; }}</style>"
    );
    if let (Some(first), Some(last)) = (pts.first(), pts.last()) {
        polyline(&mut out, "axis", &[[first[0], 0.0], [last[0], 0.0]]);
    }
    if pts.len() >= 2 {
        polyline(&mut out, "delta", &pts);
    }
    out.push_str("</svg>\n");
    out
}

pub fn write(path: &Path, contents: &str) -> io::Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    std::fs::write(path, contents)
}
