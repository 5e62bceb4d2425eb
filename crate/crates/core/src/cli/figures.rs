//! Deterministic SVG plots of `τ_m` against `Γt`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::CliError;
use crate::nonclassicality::{tau_m, transition_time};
use crate::reservoir::ReservoirParams;
use crate::states::StateSpec;

/// Plot area in pixels.
pub const WIDTH: f64 = 640.0;
pub const HEIGHT: f64 = 420.0;
pub const LEFT: f64 = 70.0;
pub const RIGHT: f64 = 20.0;
pub const TOP: f64 = 40.0;
pub const BOTTOM: f64 = 60.0;

/// Horizontal range in `Γt`.
pub const X_MAX: f64 = 2.0;

/// Plotting grid step in `Γt`.
pub const GRID_STEP: f64 = 0.005;

#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub title: String,
    pub gamma_t: Vec<f64>,
    pub tau: Vec<f64>,
    /// Sign change of the depth, in `Γt`.
    pub crossing: Option<f64>,
}

/// `τ_m` on `Γt ∈ [0, 2]`, with the transition time when there is one.
pub fn tau_curve(title: &str, state: &StateSpec, res: &ReservoirParams) -> Result<FigureData, CliError> {
    let n = (X_MAX / GRID_STEP).round() as usize;
    let gamma_t: Vec<f64> = (0..=n).map(|i| i as f64 * GRID_STEP).collect();
    let tau = gamma_t.iter().map(|gt| tau_m(state, res, gt / res.gamma())).collect::<Result<Vec<_>, _>>()?;
    let crossing = transition_time(state, res)?.crossing().map(|t| t * res.gamma());
    Ok(FigureData { title: title.into(), gamma_t, tau, crossing })
}

pub fn figure1() -> Result<FigureData, CliError> {
    let res = ReservoirParams::new(1.0, 1.0, -(2f64.sqrt()))?;
    tau_curve("Thermal state (n = 1), N = 1, M = -sqrt(2)", &StateSpec::thermal(1.0), &res)
}

pub fn figure2() -> Result<FigureData, CliError> {
    let res = ReservoirParams::new(1.0, 2.0, 1.0)?;
    tau_curve("Photon-added thermal state (n = 1), N = 2, M = 1", &StateSpec::photon_added_thermal(1.0), &res)
}

pub fn x_to_px(gamma_t: f64) -> f64 {
    LEFT + gamma_t / X_MAX * (WIDTH - LEFT - RIGHT)
}

pub fn px_to_x(px: f64) -> f64 {
    (px - LEFT) / (WIDTH - LEFT - RIGHT) * X_MAX
}

pub fn y_to_px(tau: f64) -> f64 {
    HEIGHT - BOTTOM - tau * (HEIGHT - TOP - BOTTOM)
}

pub fn render_svg(fig: &FigureData) -> String {
    let mut s = String::new();
    let (x0, x1) = (x_to_px(0.0), x_to_px(X_MAX));
    let (y0, y1) = (y_to_px(0.0), y_to_px(1.0));
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="13">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle">{}</text>"#, WIDTH / 2.0, fig.title);
    let _ = writeln!(s, r#"<g class="axes" stroke="black" stroke-width="1">"#);
    let _ = writeln!(s, r#"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y0:.3}"/>"#);
    let _ = writeln!(s, r#"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x0:.3}" y2="{y1:.3}"/>"#);
    for i in 0..=4 {
        let x = x_to_px(0.5 * i as f64);
        let _ = writeln!(s, r#"<line x1="{x:.3}" y1="{y0:.3}" x2="{x:.3}" y2="{:.3}"/>"#, y0 + 5.0);
    }
    for i in 0..=5 {
        let y = y_to_px(0.2 * i as f64);
        let _ = writeln!(s, r#"<line x1="{:.3}" y1="{y:.3}" x2="{x0:.3}" y2="{y:.3}"/>"#, x0 - 5.0);
    }
    s.push_str("</g>\n");
    for i in 0..=4 {
        let v = 0.5 * i as f64;
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">{v:.1}</text>"#, x_to_px(v), y0 + 20.0);
    }
    for i in 0..=5 {
        let v = 0.2 * i as f64;
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" text-anchor="end">{v:.1}</text>"#, x0 - 8.0, y_to_px(v) + 4.0);
    }
    let _ = writeln!(
        s,
        r#"<text class="xlabel" x="{:.3}" y="{:.3}" text-anchor="middle">Γt</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text class="ylabel" x="20" y="{:.3}" text-anchor="middle" transform="rotate(-90 20 {:.3})">τ_m</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );
    let points: Vec<String> =
        fig.gamma_t.iter().zip(&fig.tau).map(|(gt, tau)| format!("{:.3},{:.3}", x_to_px(*gt), y_to_px(*tau))).collect();
    let _ = writeln!(
        s,
        r#"<polyline class="curve" fill="none" stroke="navy" stroke-width="2" points="{}"/>"#,
        points.join(" ")
    );
    if let Some(c) = fig.crossing {
        let x = x_to_px(c);
        let _ = writeln!(
            s,
            r#"<line class="crossing-guide" x1="{x:.3}" y1="{y0:.3}" x2="{x:.3}" y2="{y1:.3}" stroke="firebrick" stroke-dasharray="4 3"/>"#
        );
        let _ = writeln!(
            s,
            r#"<circle class="crossing" cx="{x:.3}" cy="{y0:.3}" r="4" fill="firebrick" data-gamma-t="{c:.10}"/>"#
        );
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" fill="firebrick">Γt ≈ {c:.2}</text>"#, x + 6.0, y1 + 16.0);
    }
    s.push_str("</svg>\n");
    s
}

/// Writes both figures into `dir`, creating it if needed.
pub fn write_figures(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written = Vec::new();
    for (name, fig) in [("figure1.svg", figure1()?), ("figure2.svg", figure2()?)] {
        let path = dir.join(name);
        std::fs::write(&path, render_svg(&fig)).map_err(|e| CliError::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}

/// `cx` of the crossing marker in a rendered figure.
pub fn crossing_marker_px(svg: &str) -> Option<f64> {
    let line = svg.lines().find(|l| l.contains(r#"class="crossing""#))?;
    let start = line.find("cx=\"")? + 4;
    let end = start + line[start..].find('"')?;
    line[start..end].parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pixel_mapping_round_trips() {
        for gt in [0.0, 0.3, 1.234, 2.0] {
            assert!((px_to_x(x_to_px(gt)) - gt).abs() < 1e-12);
        }
        assert_eq!(y_to_px(0.0), HEIGHT - BOTTOM);
        assert_eq!(y_to_px(1.0), TOP);
    }

    #[test]
    fn rendering_is_deterministic_and_marked() {
        let fig = figure1().unwrap();
        let a = render_svg(&fig);
        assert_eq!(a, render_svg(&figure1().unwrap()));
        let cx = crossing_marker_px(&a).unwrap();
        assert!((px_to_x(cx) - 0.61).abs() < 0.01);
        assert!(a.contains("Γt") && a.contains("τ_m"));
    }
}
