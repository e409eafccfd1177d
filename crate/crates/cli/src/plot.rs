//! SVG plots of the three planar projections of the trefoil
//! `t -> (t^3 - 3t, t^4 - 4t^2 - 1, t^5 - 10t)`. This is the only place
//! floating point is used. Coordinates are written with Rust's shortest
//! round-trip formatting, so the output is byte-stable for fixed inputs.

use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};

pub const DOMAIN: (f64, f64) = (-2.1, 2.1);
pub const DEFAULT_SAMPLES: usize = 601;
pub const DEFAULT_SIZE: u32 = 480;
const MIN_SIZE: u32 = 64;
const MARGIN: f64 = 40.0;

pub fn gamma(t: f64) -> [f64; 3] {
    let t2 = t * t;
    [t * (t2 - 3.0), t2 * (t2 - 4.0) - 1.0, t * (t2 * t2 - 10.0)]
}

pub struct Projection {
    pub file: &'static str,
    pub title: &'static str,
    /// Coordinates of the trefoil drawn on the horizontal and vertical axes.
    pub axes: (usize, usize),
    /// `(xmin, xmax, ymin, ymax)`.
    pub window: (f64, f64, f64, f64),
    pub xticks: &'static [i32],
    pub yticks: &'static [i32],
}

pub const PROJECTIONS: [Projection; 3] = [
    Projection {
        file: "trefoil-xy.svg",
        title: "(t^3 - 3t, t^4 - 4t^2 - 1)",
        axes: (0, 1),
        window: (-3.0, 3.0, -5.1, 1.0),
        xticks: &[-3, -2, -1, 0, 1, 2, 3],
        yticks: &[-5, -4, -3, -2, -1, 0, 1],
    },
    Projection {
        file: "trefoil-xz.svg",
        title: "(t^3 - 3t, t^5 - 10t)",
        axes: (0, 2),
        window: (-3.0, 3.0, -15.0, 15.0),
        xticks: &[-3, -2, -1, 0, 1, 2, 3],
        yticks: &[-15, -10, -5, 0, 5, 10, 15],
    },
    Projection {
        file: "trefoil-yz.svg",
        title: "(t^4 - 4t^2 - 1, t^5 - 10t)",
        axes: (1, 2),
        window: (-5.1, 1.0, -15.0, 15.0),
        xticks: &[-5, -4, -3, -2, -1, 0, 1],
        yticks: &[-15, -10, -5, 0, 5, 10, 15],
    },
];

/// `samples` parameters spread evenly over [`DOMAIN`], symmetric about 0 so
/// that an odd count samples `t = 0` exactly.
pub fn parameters(samples: usize) -> Vec<f64> {
    if samples < 2 {
        return vec![DOMAIN.0; samples];
    }
    let n = (samples - 1) as f64;
    (0..samples).map(|i| DOMAIN.1 * (2.0 * i as f64 - n) / n).collect()
}

impl Projection {
    pub fn points(&self, samples: usize) -> Vec<(f64, f64)> {
        parameters(samples)
            .into_iter()
            .map(|t| {
                let g = gamma(t);
                // adding 0.0 turns -0.0 into 0.0 so the printed form is "0"
                (g[self.axes.0] + 0.0, g[self.axes.1] + 0.0)
            })
            .collect()
    }

    /// Pixel coordinates of a point of the window for a plot of side `size`.
    pub fn to_pixels(&self, size: u32, (x, y): (f64, f64)) -> (f64, f64) {
        let inner = f64::from(size.max(MIN_SIZE)) - 2.0 * MARGIN;
        let (x0, x1, y0, y1) = self.window;
        (MARGIN + (x - x0) * inner / (x1 - x0), MARGIN + (y1 - y) * inner / (y1 - y0))
    }

    pub fn svg(&self, size: u32, samples: usize) -> String {
        let size = size.max(MIN_SIZE);
        let margin = MARGIN;
        let inner = f64::from(size) - 2.0 * margin;
        let (x0, x1, y0, y1) = self.window;
        let px = |x: f64| self.to_pixels(size, (x, y0)).0;
        let py = |y: f64| self.to_pixels(size, (x0, y)).1;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        );
        let _ = writeln!(s, "<title>{}</title>", self.title);
        let _ = writeln!(s, r#"<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<clipPath id="window"><rect x="{margin}" y="{margin}" width="{inner}" height="{inner}"/></clipPath>"#
        );
        let _ = writeln!(
            s,
            r#"<rect x="{margin}" y="{margin}" width="{inner}" height="{inner}" fill="none" stroke="black" stroke-width="1"/>"#
        );

        let _ = writeln!(s, r##"<g stroke="#999999" stroke-width="0.5">"##);
        if x0 <= 0.0 && 0.0 <= x1 {
            let _ = writeln!(s, r#"<line x1="{}" y1="{margin}" x2="{}" y2="{}"/>"#, px(0.0), px(0.0), margin + inner);
        }
        if y0 <= 0.0 && 0.0 <= y1 {
            let _ = writeln!(s, r#"<line x1="{margin}" y1="{}" x2="{}" y2="{}"/>"#, py(0.0), margin + inner, py(0.0));
        }
        let _ = writeln!(s, "</g>");

        let _ = writeln!(s, r#"<g font-family="sans-serif" font-size="10" fill="black">"#);
        let base = margin + inner;
        for &k in self.xticks {
            let x = px(f64::from(k));
            let _ = writeln!(s, r#"<line x1="{x}" y1="{base}" x2="{x}" y2="{}" stroke="black"/>"#, base + 4.0);
            let _ = writeln!(s, r#"<text x="{x}" y="{}" text-anchor="middle">{k}</text>"#, base + 16.0);
        }
        for &k in self.yticks {
            let y = py(f64::from(k));
            let _ = writeln!(s, r#"<line x1="{}" y1="{y}" x2="{margin}" y2="{y}" stroke="black"/>"#, margin - 4.0);
            let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{k}</text>"#, margin - 6.0, y + 3.0);
        }
        let _ = writeln!(s, "</g>");

        let pts: Vec<String> = self.points(samples).iter().map(|&(x, y)| format!("{},{}", px(x), py(y))).collect();
        let _ = writeln!(s, r#"<g clip-path="url(#window)">"#);
        let _ = writeln!(
            s,
            r##"<polyline fill="none" stroke="#1f4e9c" stroke-width="1.5" stroke-linejoin="round" points="{}"/>"##,
            pts.join(" ")
        );
        let _ = writeln!(s, "</g>\n</svg>");
        s
    }
}

/// Write the three projections into `dir`, creating it if needed.
pub fn write_all(dir: &Path, size: u32, samples: usize) -> io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    PROJECTIONS
        .iter()
        .map(|p| {
            let path = dir.join(p.file);
            std::fs::write(&path, p.svg(size, samples))?;
            Ok(path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centre_sample_is_exact() {
        let ts = parameters(DEFAULT_SAMPLES);
        assert_eq!(ts[300], 0.0);
        assert_eq!((ts[0], ts[600]), (-2.1, 2.1));
        assert_eq!(PROJECTIONS[0].points(DEFAULT_SAMPLES)[300], (0.0, -1.0));
    }

    #[test]
    fn endpoint_value() {
        let (x, _) = PROJECTIONS[0].points(2)[1];
        assert!((x - 2.961).abs() < 1e-12);
    }

    #[test]
    fn two_samples_give_two_points() {
        let svg = PROJECTIONS[2].svg(200, 2);
        let pts = svg.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
        assert_eq!(pts.split(' ').count(), 2);
    }
}
