//! SVG drawings of arrangements over Q.
//!
//! The picture lives in an affine chart `w != 0` of the plane. `w = z` is
//! used when no line of the arrangement is the line at infinity and no
//! intersection point lies on it; otherwise the first `w = x + s y + s^2 z`
//! (s = 0, 1, ...) with the same property.

use std::fmt::Write as _;

use num_traits::{ToPrimitive, Zero};

use logarr::arrangement::{intersection_lattice, Arrangement, ProjPoint};
use logarr::field::Rational;
use logarr::{Error, Result};

pub const DEFAULT_WIDTH: u32 = 800;

/// Which affine chart a drawing uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `(x/z, y/z)`
    Z,
    /// `(y/w, z/w)` with `w = x + s y + s^2 z`.
    Moment(i64),
}

impl Chart {
    fn form(self) -> [i64; 3] {
        match self {
            Chart::Z => [0, 0, 1],
            Chart::Moment(s) => [1, s, s * s],
        }
    }

    fn describe(self) -> String {
        match self {
            Chart::Z => "z".to_string(),
            Chart::Moment(s) => format!("x + {s}y + {}z", s * s),
        }
    }

    fn point(self, p: &[Rational; 3]) -> [Rational; 2] {
        let w = dot(self.form(), p);
        match self {
            Chart::Z => [&p[0] / &w, &p[1] / &w],
            Chart::Moment(_) => [&p[1] / &w, &p[2] / &w],
        }
    }

    /// `(alpha, beta, gamma)` with the line `alpha X + beta Y + gamma = 0`
    /// in chart coordinates.
    fn line(self, l: &[Rational; 3]) -> [Rational; 3] {
        match self {
            Chart::Z => l.clone(),
            Chart::Moment(s) => {
                let s = Rational::from_integer(s.into());
                let g = l[0].clone();
                [&l[1] - &g * &s, &l[2] - &g * &s * &s, g]
            }
        }
    }
}

fn dot(w: [i64; 3], p: &[Rational; 3]) -> Rational {
    w.iter()
        .zip(p)
        .map(|(&c, x)| x * Rational::from_integer(c.into()))
        .fold(Rational::zero(), |acc, x| acc + x)
}

fn rational_coords(p: &ProjPoint) -> [Rational; 3] {
    p.elems().clone().map(|e| e[0].clone())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Drawing {
    pub chart: Chart,
    /// Clipped segments in pixel coordinates, one per line.
    pub segments: Vec<Option<[f64; 4]>>,
    /// Centre in pixels and multiplicity of every intersection point.
    pub marks: Vec<([f64; 2], usize)>,
    pub width: u32,
}

pub fn layout(a: &Arrangement, width: u32) -> Result<Drawing> {
    if !a.field().is_rational() {
        return Err(Error::FieldNotReal);
    }
    let lattice = intersection_lattice(a);
    let points: Vec<[Rational; 3]> = lattice.iter().map(|p| rational_coords(&p.point)).collect();
    let lines: Vec<[Rational; 3]> = a.lines().iter().map(rational_coords).collect();
    let chart = choose_chart(&lines, &points);

    let affine: Vec<[f64; 2]> = points.iter().map(|p| chart.point(p).map(|c| to_f64(&c))).collect();
    let chart_lines: Vec<[f64; 3]> = lines.iter().map(|l| chart.line(l).map(|c| to_f64(&c))).collect();
    let frame = frame(&affine, &chart_lines);

    let w = f64::from(width);
    let to_px = |x: f64, y: f64| -> [f64; 2] {
        [(x - frame.x0) / frame.side * w, w - (y - frame.y0) / frame.side * w]
    };
    let segments = chart_lines
        .iter()
        .map(|l| {
            clip(l, &frame).map(|[x1, y1, x2, y2]| {
                let [a, b] = to_px(x1, y1);
                let [c, d] = to_px(x2, y2);
                [a, b, c, d]
            })
        })
        .collect();
    let marks = affine
        .iter()
        .zip(&lattice)
        .map(|(p, lp)| (to_px(p[0], p[1]), lp.multiplicity()))
        .collect();
    Ok(Drawing {
        chart,
        segments,
        marks,
        width,
    })
}

pub fn render_svg(a: &Arrangement, width: u32) -> Result<String> {
    Ok(layout(a, width)?.to_svg())
}

fn choose_chart(lines: &[[Rational; 3]], points: &[[Rational; 3]]) -> Chart {
    let usable = |c: Chart| {
        let w = c.form();
        let is_line = lines.iter().any(|l| {
            // Same projective point as `w`: all 2x2 minors vanish.
            (0..3).all(|i| {
                let j = (i + 1) % 3;
                &l[i] * Rational::from_integer(w[j].into()) == &l[j] * Rational::from_integer(w[i].into())
            })
        });
        !is_line && points.iter().all(|p| !dot(w, p).is_zero())
    };
    std::iter::once(Chart::Z)
        .chain((0..).map(Chart::Moment))
        .find(|&c| usable(c))
        .expect("finitely many charts are excluded")
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(0.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Frame {
    x0: f64,
    y0: f64,
    side: f64,
}

/// A square around every intersection point with a margin of a quarter of
/// the side. Without intersection points the frame is centred on the foot of
/// the perpendicular from the origin to the first line.
fn frame(points: &[[f64; 2]], lines: &[[f64; 3]]) -> Frame {
    let (lo, hi) = if points.is_empty() {
        let [a, b, c] = lines[0];
        let n = a * a + b * b;
        let foot = if n == 0.0 { [0.0, 0.0] } else { [-a * c / n, -b * c / n] };
        (foot, foot)
    } else {
        points.iter().fold(([f64::MAX; 2], [f64::MIN; 2]), |(lo, hi), p| {
            ([lo[0].min(p[0]), lo[1].min(p[1])], [hi[0].max(p[0]), hi[1].max(p[1])])
        })
    };
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let span = if span > 0.0 { span } else { 2.0 };
    let side = span * 1.5;
    Frame {
        x0: (lo[0] + hi[0]) / 2.0 - side / 2.0,
        y0: (lo[1] + hi[1]) / 2.0 - side / 2.0,
        side,
    }
}

/// Liang-Barsky clipping of `a X + b Y + c = 0` to the frame.
fn clip(&[a, b, c]: &[f64; 3], f: &Frame) -> Option<[f64; 4]> {
    let n = a * a + b * b;
    if n == 0.0 {
        return None;
    }
    let (px, py) = (-a * c / n, -b * c / n);
    let (dx, dy) = (-b, a);
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for (p, q) in [
        (-dx, px - f.x0),
        (dx, f.x0 + f.side - px),
        (-dy, py - f.y0),
        (dy, f.y0 + f.side - py),
    ] {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
            continue;
        }
        let r = q / p;
        if p < 0.0 {
            t0 = t0.max(r);
        } else {
            t1 = t1.min(r);
        }
    }
    (t0 < t1).then_some([px + t0 * dx, py + t0 * dy, px + t1 * dx, py + t1 * dy])
}

fn fmt2(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

impl Drawing {
    pub fn to_svg(&self) -> String {
        let w = self.width;
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{w}" viewBox="0 0 {w} {w}">"#
        );
        let _ = writeln!(s, "<desc>affine chart {} != 0</desc>", self.chart.describe());
        let _ = writeln!(s, r#"<rect x="0" y="0" width="{w}" height="{w}" fill="white" stroke="black"/>"#);
        let _ = writeln!(s, r#"<g stroke="black" stroke-width="1.5">"#);
        for (i, seg) in self.segments.iter().enumerate() {
            if let Some([x1, y1, x2, y2]) = seg {
                let _ = writeln!(
                    s,
                    r#"<line id="line-{i}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                    fmt2(*x1),
                    fmt2(*y1),
                    fmt2(*x2),
                    fmt2(*y2)
                );
            }
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, r#"<g fill="red" font-family="sans-serif" font-size="12">"#);
        for ([x, y], h) in &self.marks {
            let r = 2 + h;
            let _ = writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="{r}" data-multiplicity="{h}"/>"#,
                fmt2(*x),
                fmt2(*y)
            );
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}">{h}</text>"#,
                fmt2(x + r as f64 + 2.0),
                fmt2(y - r as f64 - 2.0)
            );
        }
        let _ = writeln!(s, "</g>");
        s.push_str("</svg>\n");
        s
    }
}
