//! Deterministic SVG figures. World coordinates are mapped with the y axis
//! pointing up.

use std::fmt::Write as _;

use alphastab::colorful::Color;
use alphastab::geometry::{ConvexPolygon, DirectedLine, Point2, Side};
use alphastab::stabbing::{Family, FamilyEntry};

const WIDTH: f64 = 800.0;
const PAD: f64 = 0.6;

fn stroke(color: Option<Color>) -> &'static str {
    match color {
        Some(Color::Red) => "#c0392b",
        Some(Color::Green) => "#27ae60",
        Some(Color::Blue) => "#2e6fb0",
        None => "#444444",
    }
}

const LINE_COLORS: [&str; 6] = ["#8e44ad", "#d35400", "#16a085", "#7f8c8d", "#b03a2e", "#1a5276"];

#[derive(Clone, Debug, Default)]
pub struct Figure {
    sets: Vec<(String, ConvexPolygon, Option<Color>)>,
    pieces: Vec<(ConvexPolygon, String, Option<Color>)>,
    lines: Vec<(String, DirectedLine)>,
    points: Vec<(String, Point2)>,
}

impl Figure {
    pub fn new() -> Self {
        Figure::default()
    }

    pub fn from_family(family: &Family) -> Self {
        let mut fig = Figure::new();
        for e in family.entries() {
            fig.sets.push((e.label().to_string(), e.shape().clone(), e.color()));
        }
        fig
    }

    pub fn line(&mut self, name: impl Into<String>, line: DirectedLine) -> &mut Self {
        self.lines.push((name.into(), line));
        self
    }

    pub fn point(&mut self, name: impl Into<String>, p: Point2) -> &mut Self {
        self.points.push((name.into(), p));
        self
    }

    /// Shades both pieces of every entry cut by `line`, annotated with the
    /// value of the entry's functional on each piece.
    pub fn pieces(&mut self, family: &Family, line: &DirectedLine) -> &mut Self {
        for e in family.entries() {
            for side in [Side::Plus, Side::Minus] {
                self.piece(e, line, side);
            }
        }
        self
    }

    fn piece(&mut self, entry: &FamilyEntry, line: &DirectedLine, side: Side) {
        let piece = entry.shape().clip_halfplane(line, side);
        if piece.is_degenerate() {
            return;
        }
        let value = entry.value(&piece);
        let sign = if side == Side::Plus { '+' } else { '-' };
        self.pieces
            .push((piece, format!("{}{sign} {value:.3}", entry.label()), entry.color()));
    }

    fn bounds(&self) -> (f64, f64, f64, f64) {
        let pts = self
            .sets
            .iter()
            .flat_map(|(_, p, _)| p.vertices().iter().copied())
            .chain(self.points.iter().map(|(_, p)| *p));
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in pts {
            x0 = x0.min(p.x);
            y0 = y0.min(p.y);
            x1 = x1.max(p.x);
            y1 = y1.max(p.y);
        }
        if !x0.is_finite() {
            return (-1.0, -1.0, 1.0, 1.0);
        }
        (x0 - PAD, y0 - PAD, x1 + PAD, y1 + PAD)
    }

    pub fn render(&self) -> String {
        let (x0, y0, x1, y1) = self.bounds();
        let scale = WIDTH / (x1 - x0);
        let height = ((y1 - y0) * scale).ceil();
        let tx = |p: Point2| ((p.x - x0) * scale, (y1 - p.y) * scale);
        let path = |poly: &ConvexPolygon| {
            poly.vertices()
                .iter()
                .map(|&p| {
                    let (x, y) = tx(p);
                    format!("{x:.2},{y:.2}")
                })
                .collect::<Vec<_>>()
                .join(" ")
        };

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.0}">"#
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
        for (piece, label, color) in &self.pieces {
            let c = piece.centroid();
            let (cx, cy) = tx(c);
            let _ = writeln!(
                out,
                r#"<polygon points="{}" fill="{}" fill-opacity="0.15" stroke="none"/>"#,
                path(piece),
                stroke(*color)
            );
            let _ = writeln!(
                out,
                r##"<text x="{cx:.2}" y="{cy:.2}" font-size="10" text-anchor="middle" fill="#333333">{}</text>"##,
                escape(label)
            );
        }
        for (label, poly, color) in &self.sets {
            let _ = writeln!(
                out,
                r#"<polygon points="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
                path(poly),
                stroke(*color)
            );
            if let Some(&top) = poly.vertices().iter().max_by(|a, b| a.y.total_cmp(&b.y).then(b.x.total_cmp(&a.x))) {
                let (x, y) = tx(top);
                let _ = writeln!(
                    out,
                    r#"<text x="{:.2}" y="{:.2}" font-size="13" fill="{}">{}</text>"#,
                    x + 3.0 + 18.0 * color.map_or(0.0, |c| c.index() as f64),
                    y - 3.0,
                    stroke(*color),
                    escape(label)
                );
            }
        }
        let frame = ConvexPolygon::rectangle(x0, y0, x1, y1);
        for (i, (name, line)) in self.lines.iter().enumerate() {
            let span = frame.line_parameter_interval(line);
            if span.is_empty() {
                continue;
            }
            let color = LINE_COLORS[i % LINE_COLORS.len()];
            let (ax, ay) = tx(line.point_at(span.lo));
            let (bx, by) = tx(line.point_at(span.hi));
            let _ = writeln!(
                out,
                r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="{color}" stroke-width="1.2" stroke-dasharray="6 3"/>"#
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" font-size="13" font-style="italic" fill="{color}">{}</text>"#,
                bx - 12.0 * line.direction().x.signum(),
                by + 12.0 * line.direction().y.signum(),
                escape(name)
            );
        }
        for (name, p) in &self.points {
            let (x, y) = tx(*p);
            let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="black"/>"#);
            if !name.is_empty() {
                let _ = writeln!(
                    out,
                    r#"<text x="{:.2}" y="{:.2}" font-size="9" fill="black">{}</text>"#,
                    x + 3.0,
                    y + 10.0,
                    escape(name)
                );
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
