//! SVG portrait of a configuration: verticals, inner separatrices and one
//! leaf per canonical region, stroke-keyed by level. Floating point is used
//! for drawing only.

use std::fmt::Write as _;

use crate::foliation::{Boundary, CanonicalRegion, Configuration, LevelBound, SeparatrixId};
use crate::realalg::{rational_to_f64, Rational};

pub const MIN_SAMPLES: usize = 16;

/// Samples farther than this many viewport heights from the origin of the
/// y-range are treated as blow-ups.
const BLOWUP_FACTOR: f64 = 10.0;

/// Levels drawn for a map without vertical separatrices.
const FAN_LEVELS: [f64; 7] = [-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("viewport is empty: need x_min < x_max and y_min < y_max")]
    EmptyViewport,
    #[error("at least {MIN_SAMPLES} samples per curve are required, got {0}")]
    TooFewSamples(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Viewport {
    pub x_min: Rational,
    pub x_max: Rational,
    pub y_min: Rational,
    pub y_max: Rational,
    pub width_px: u32,
    pub height_px: u32,
    pub samples_per_curve: usize,
}

impl Viewport {
    pub fn new(
        x: (Rational, Rational),
        y: (Rational, Rational),
        size: (u32, u32),
        samples: usize,
    ) -> Result<Viewport, RenderError> {
        let vp = Viewport {
            x_min: x.0,
            x_max: x.1,
            y_min: y.0,
            y_max: y.1,
            width_px: size.0,
            height_px: size.1,
            samples_per_curve: samples,
        };
        vp.validate()?;
        Ok(vp)
    }

    pub fn validate(&self) -> Result<(), RenderError> {
        if self.x_min >= self.x_max || self.y_min >= self.y_max || self.width_px == 0 || self.height_px == 0 {
            return Err(RenderError::EmptyViewport);
        }
        if self.samples_per_curve < MIN_SAMPLES {
            return Err(RenderError::TooFewSamples(self.samples_per_curve));
        }
        Ok(())
    }

    /// Two units of margin around the real roots, `y` in `[-8, 8]`.
    pub fn around(conf: &Configuration) -> Viewport {
        let xs: Vec<f64> = conf.roots.iter().map(|z| z.to_f64()).collect();
        let lo = xs.iter().copied().fold(0.0_f64, f64::min).floor() - 2.0;
        let hi = xs.iter().copied().fold(0.0_f64, f64::max).ceil() + 2.0;
        let int = |v: f64| Rational::from_integer((v as i64).into());
        Viewport {
            x_min: int(lo),
            x_max: int(hi),
            y_min: int(-8.0),
            y_max: int(8.0),
            width_px: 800,
            height_px: 600,
            samples_per_curve: 800,
        }
    }

    fn bounds(&self) -> [f64; 4] {
        [&self.x_min, &self.x_max, &self.y_min, &self.y_max].map(rational_to_f64)
    }
}

/// Pixel mapping of a viewport.
struct Frame {
    x: (f64, f64),
    y: (f64, f64),
    w: f64,
    h: f64,
    samples: usize,
}

impl Frame {
    fn new(vp: &Viewport) -> Frame {
        let [x0, x1, y0, y1] = vp.bounds();
        Frame {
            x: (x0, x1),
            y: (y0, y1),
            w: f64::from(vp.width_px),
            h: f64::from(vp.height_px),
            samples: vp.samples_per_curve,
        }
    }

    fn px(&self, x: f64) -> f64 {
        (x - self.x.0) / (self.x.1 - self.x.0) * self.w
    }

    fn py(&self, y: f64) -> f64 {
        (self.y.1 - y) / (self.y.1 - self.y.0) * self.h
    }

    /// Path data for `x ↦ (level - r(x)) / s(x)` over the open interval
    /// `(lo, hi)`, split wherever a sample is dropped.
    fn graph_path(&self, conf: &Configuration, level: f64, lo: f64, hi: f64) -> String {
        let limit = BLOWUP_FACTOR * (self.y.1 - self.y.0);
        let mut d = String::new();
        let mut pen_down = false;
        for k in 0..self.samples {
            let x = self.x.0 + (self.x.1 - self.x.0) * k as f64 / (self.samples - 1) as f64;
            let y = (level - conf.map.r.eval_f64(x)) / conf.map.s.eval_f64(x);
            if x <= lo || x >= hi || !y.is_finite() || y.abs() > limit {
                pen_down = false;
                continue;
            }
            let cmd = if pen_down { 'L' } else { 'M' };
            let _ = write!(d, "{cmd}{:.2} {:.2} ", self.px(x), self.py(y));
            pen_down = true;
        }
        d.trim_end().to_string()
    }
}

/// Index of each distinct level, in increasing order.
struct LevelIndex(Vec<f64>);

impl LevelIndex {
    fn class(&self, level: f64) -> String {
        let i = self.0.iter().position(|l| *l == level).unwrap_or(0);
        format!("level-{i}")
    }
}

/// A level inside the region's interval, for drawing.
fn region_level(region: &CanonicalRegion) -> f64 {
    let f = |b: &LevelBound| match b {
        LevelBound::Value(v) => Some(v.to_f64()),
        _ => None,
    };
    match (f(&region.lower), f(&region.upper)) {
        (Some(a), Some(b)) => (a + b) / 2.0,
        (Some(a), None) => a + 1.0,
        (None, Some(b)) => b - 1.0,
        (None, None) => 0.0,
    }
}

fn strip_bounds(conf: &Configuration, strip: usize) -> (f64, f64) {
    let s = conf.strip(strip);
    let at = |b: Boundary| match b {
        Boundary::Root(j) => conf.roots[j].to_f64(),
        Boundary::MinusInfinity => f64::NEG_INFINITY,
        Boundary::PlusInfinity => f64::INFINITY,
    };
    (at(s.left), at(s.right))
}

fn style(levels: usize) -> String {
    let mut css = String::from(
        "path, line { fill: none; stroke-linecap: round; }\n\
         .vertical { stroke-width: 1.5; stroke-dasharray: 6 4; }\n\
         .separatrix { stroke-width: 2.5; }\n\
         .region { stroke-width: 1; }\n",
    );
    for i in 0..levels {
        let hue = (i * 360) / levels.max(1);
        let _ = writeln!(css, ".level-{i} {{ stroke: hsl({hue}, 70%, 40%); }}");
    }
    css
}

pub fn render_svg(conf: &Configuration, vp: &Viewport) -> Result<String, RenderError> {
    vp.validate()?;
    let frame = Frame::new(vp);
    let mut body = String::new();

    let region_levels: Vec<f64> =
        if conf.k() == 0 { FAN_LEVELS.to_vec() } else { conf.regions.iter().map(region_level).collect() };
    let mut all: Vec<f64> = conf.bifurcation.iter().map(|v| v.to_f64()).chain(region_levels.iter().copied()).collect();
    all.sort_by(f64::total_cmp);
    all.dedup();
    let index = LevelIndex(all);

    for sep in conf.separatrices() {
        let level = sep.level.to_f64();
        let class = index.class(level);
        match sep.id {
            SeparatrixId::Vertical(j) => {
                let x = frame.px(conf.roots[j].to_f64());
                let _ = writeln!(
                    body,
                    r#"<line id="{}" class="vertical {class}" x1="{x:.2}" y1="0" x2="{x:.2}" y2="{:.2}"/>"#,
                    sep.id, frame.h
                );
            }
            SeparatrixId::Inner { strip, .. } => {
                let (lo, hi) = strip_bounds(conf, strip);
                let d = frame.graph_path(conf, level, lo, hi);
                let _ = writeln!(body, r#"<path id="{}" class="separatrix {class}" d="{d}"/>"#, sep.id);
            }
        }
    }
    if conf.k() == 0 {
        for level in &region_levels {
            let d = frame.graph_path(conf, *level, f64::NEG_INFINITY, f64::INFINITY);
            let _ = writeln!(body, r#"<path class="region {}" d="{d}"/>"#, index.class(*level));
        }
    } else {
        for (i, (region, level)) in conf.regions.iter().zip(&region_levels).enumerate() {
            let (lo, hi) = strip_bounds(conf, region.strip);
            let d = frame.graph_path(conf, *level, lo, hi);
            let _ = writeln!(body, r#"<path id="R{i}" class="region {}" d="{d}"/>"#, index.class(*level));
        }
    }

    let (w, h) = (vp.width_px, vp.height_px);
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(svg, "<title>{}</title>", xml_escape(&conf.map.to_string()));
    let _ =
        writeln!(svg, r#"<defs><clipPath id="view"><rect x="0" y="0" width="{w}" height="{h}"/></clipPath></defs>"#);
    let _ = writeln!(svg, "<style>\n{}</style>", style(index.0.len()));
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(svg, r#"<g clip-path="url(#view)">"#);
    svg.push_str(&body);
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_map;
    use crate::foliation::build_configuration;

    fn svg_of(expr: &str) -> String {
        let conf = build_configuration(&parse_map(expr).unwrap()).unwrap();
        render_svg(&conf, &Viewport::around(&conf)).unwrap()
    }

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    #[test]
    fn cubic_counts() {
        let svg = svg_of("x + x^3*y");
        assert_eq!(count(&svg, r#"class="vertical "#), 1);
        assert_eq!(count(&svg, r#"class="separatrix "#), 2);
        assert_eq!(count(&svg, r#"class="region "#), 4);
    }

    #[test]
    fn trivial_map_draws_a_fan() {
        let svg = svg_of("x + y");
        assert_eq!(count(&svg, r#"class="vertical "#), 0);
        assert_eq!(count(&svg, r#"class="separatrix "#), 0);
        assert_eq!(count(&svg, r#"class="region "#), FAN_LEVELS.len());
    }

    #[test]
    fn separatrices_share_the_vertical_level_class() {
        let svg = svg_of("x + x^3*y");
        let classes: Vec<&str> = svg
            .lines()
            .filter(|l| l.starts_with("<line") || l.contains(r#"class="separatrix "#))
            .map(|l| l.split("level-").nth(1).unwrap().split('"').next().unwrap())
            .collect();
        assert!(classes.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn rejects_empty_viewport() {
        let conf = build_configuration(&parse_map("x + x^3*y").unwrap()).unwrap();
        let mut vp = Viewport::around(&conf);
        vp.x_max = vp.x_min.clone();
        assert_eq!(render_svg(&conf, &vp), Err(RenderError::EmptyViewport));
        let mut vp = Viewport::around(&conf);
        vp.samples_per_curve = 4;
        assert_eq!(render_svg(&conf, &vp), Err(RenderError::TooFewSamples(4)));
    }

    #[test]
    fn deterministic() {
        assert_eq!(svg_of("x*(7*x-5)+(x+1)^2*x^2*(x-2)^2*y"), svg_of("x*(7*x-5)+(x+1)^2*x^2*(x-2)^2*y"));
    }
}
