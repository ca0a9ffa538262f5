//! Static SVG frames: the curve outline above a strip coloured by curvature
//! along arclength.

use std::fmt::Write as _;
use std::path::Path;

use curvflow::flow::Trajectory;
use curvflow::SampledCurve;

use crate::error::Result;
use crate::persist::write_file;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;
const STRIP_TOP: f64 = SIZE + 16.0;
const STRIP_HEIGHT: f64 = 28.0;
const HEIGHT: f64 = STRIP_TOP + STRIP_HEIGHT + 40.0;

/// Blue-white-red ramp on `[0, 1]`.
fn ramp(u: f64) -> (u8, u8, u8) {
    let u = u.clamp(0.0, 1.0);
    let lerp = |a: f64, b: f64, s: f64| (a + (b - a) * s).round() as u8;
    let (blue, white, red) = ((59.0, 76.0, 192.0), (242.0, 242.0, 242.0), (180.0, 4.0, 38.0));
    let (from, to, s) = if u < 0.5 { (blue, white, 2.0 * u) } else { (white, red, 2.0 * u - 1.0) };
    (lerp(from.0, to.0, s), lerp(from.1, to.1, s), lerp(from.2, to.2, s))
}

/// One frame as an SVG document.
pub fn frame_svg(curve: &SampledCurve, t: f64) -> Result<String> {
    let g = curve.geometry()?;
    let (lo, hi) = curve.bounding_box();
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let cx = 0.5 * (lo.x + hi.x);
    let cy = 0.5 * (lo.y + hi.y);
    let map = |x: f64, y: f64| (SIZE / 2.0 + (x - cx) * scale, SIZE / 2.0 - (y - cy) * scale);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{HEIGHT}" viewBox="0 0 {SIZE} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{SIZE}" height="{HEIGHT}" fill="white"/>"#);
    let mut path = String::new();
    for (i, p) in curve.points().iter().enumerate() {
        let (x, y) = map(p.x, p.y);
        let _ = write!(path, "{}{x:.3},{y:.3} ", if i == 0 { "M" } else { "L" });
    }
    path.push('Z');
    let _ = writeln!(s, r#"<path d="{path}" fill="none" stroke="black" stroke-width="1.5"/>"#);

    let (k_min, k_max) = (g.k_min(), g.k_max());
    let width = SIZE - 2.0 * MARGIN;
    let total: f64 = g.vertex_lengths.iter().sum();
    let mut x = MARGIN;
    for (k, ds) in g.curvature.iter().zip(&g.vertex_lengths) {
        let w = width * ds / total;
        let u = if k_max > k_min { (k - k_min) / (k_max - k_min) } else { 0.5 };
        let (r, gg, b) = ramp(u);
        let _ = writeln!(
            s,
            r#"<rect x="{x:.3}" y="{STRIP_TOP}" width="{:.3}" height="{STRIP_HEIGHT}" fill="rgb({r},{gg},{b})"/>"#,
            w + 0.05
        );
        x += w;
    }
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{STRIP_TOP}" width="{width}" height="{STRIP_HEIGHT}" fill="none" stroke="black"/>"#
    );
    let label_y = STRIP_TOP + STRIP_HEIGHT + 18.0;
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN}" y="{label_y}">t = {t:.6e}   k in [{k_min:.4e}, {k_max:.4e}]   width = {span:.4e}</text>"#
    );
    s.push_str("</svg>\n");
    Ok(s)
}

/// Writes `count` frames spread evenly over the stored snapshots into `dir/frames`.
pub fn write_frames(dir: &Path, traj: &Trajectory, count: usize) -> Result<usize> {
    let n = traj.snapshots.len();
    if count == 0 || n == 0 {
        return Ok(0);
    }
    let mut picks: Vec<usize> = if count == 1 || n == 1 {
        vec![n - 1]
    } else {
        (0..count)
            .map(|j| ((j * (n - 1)) as f64 / (count - 1) as f64).round() as usize)
            .collect()
    };
    picks.dedup();
    for (j, &i) in picks.iter().enumerate() {
        let snap = &traj.snapshots[i];
        let svg = frame_svg(&snap.state.to_curve()?, snap.t)?;
        write_file(&dir.join(format!("frames/frame_{j:03}.svg")), &svg)?;
    }
    Ok(picks.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use curvflow::presets::Preset;

    #[test]
    fn frame_is_well_formed() {
        let c = Preset::Flower { radius: 1.0, amp: 0.3, modes: 3 }.curve(64).unwrap();
        let svg = frame_svg(&c, 0.25).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<rect").count(), 64 + 2);
        assert!(svg.contains("t = 2.500000e-1"));
    }

    #[test]
    fn ramp_ends() {
        assert_eq!(ramp(0.0), (59, 76, 192));
        assert_eq!(ramp(0.5), (242, 242, 242));
        assert_eq!(ramp(1.0), (180, 4, 38));
    }
}
