use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, DirectedLine, Point2, EPS_GEO};

/// A rectangle with its midline and the two gauge points on it.
///
/// The midline joins the midpoints of the short sides. The gauge points sit
/// at fractions `α` and `1 − α` of the long axis, so every line through one
/// of them that crosses both long sides cuts off exactly the fraction `α`
/// of the area on one side.
#[derive(Clone, Debug, PartialEq)]
pub struct RectangleGauge {
    pub rect: ConvexPolygon,
    /// Directed along the long axis, from `p_minus` towards `p_plus`.
    pub midline: DirectedLine,
    pub p_minus: Point2,
    pub p_plus: Point2,
    pub alpha: f64,
    pub center: Point2,
    /// Unit vector along the long axis.
    pub axis: Point2,
    pub length: f64,
    pub width: f64,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "gauge points need 0 < alpha < 0.5, got {alpha}"
        )));
    }
    Ok(())
}

/// Gauge points of a rectangle. The long axis is taken from the first edge
/// when it is at least as long as the second, else from the second edge.
pub fn gauge_points(rect: &ConvexPolygon, alpha: f64) -> Result<RectangleGauge> {
    check_alpha(alpha)?;
    let v = rect.vertices();
    if v.len() != 4 {
        return Err(Error::NotRectangle(format!("{} vertices", v.len())));
    }
    let e0 = v[1] - v[0];
    let e1 = v[2] - v[1];
    let scale = e0.norm().max(e1.norm()).max(1.0);
    for i in 0..4 {
        let a = v[(i + 1) % 4] - v[i];
        let b = v[(i + 2) % 4] - v[(i + 1) % 4];
        if a.dot(b).abs() > EPS_GEO * scale * scale * 1e3 {
            return Err(Error::NotRectangle(format!("corner {} is not a right angle", (i + 1) % 4)));
        }
    }
    let (long, short) = if e0.norm() >= e1.norm() { (e0, e1) } else { (e1, e0) };
    let center = (v[0] + v[2]) * 0.5;
    let axis = long * (1.0 / long.norm());
    Ok(RectangleGauge::assemble(rect.clone(), center, axis, long.norm(), short.norm(), alpha))
}

impl RectangleGauge {
    fn assemble(rect: ConvexPolygon, center: Point2, axis: Point2, length: f64, width: f64, alpha: f64) -> Self {
        let reach = (0.5 - alpha) * length;
        let p_minus = center - axis * reach;
        let p_plus = center + axis * reach;
        RectangleGauge {
            rect,
            midline: DirectedLine::through(center - axis, center + axis),
            p_minus,
            p_plus,
            alpha,
            center,
            axis,
            length,
            width,
        }
    }

    /// Rectangle with the given center, long-axis direction and side
    /// lengths. The first vertex is the corner at `-length/2` along the axis
    /// and `-width/2` across it, and the first edge runs along the axis.
    pub fn from_axis(center: Point2, axis: Point2, length: f64, width: f64, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(length >= width && width > 0.0) || !length.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "need length >= width > 0, got {length} x {width}"
            )));
        }
        let norm = axis.norm();
        if !(norm > 0.0) {
            return Err(Error::InvalidParameter("zero axis".into()));
        }
        let u = axis * (1.0 / norm);
        let n = Point2::new(-u.y, u.x);
        let (hl, hw) = (0.5 * length, 0.5 * width);
        let rect = ConvexPolygon::new(vec![
            center - u * hl - n * hw,
            center + u * hl - n * hw,
            center + u * hl + n * hw,
            center - u * hl + n * hw,
        ])?;
        Ok(RectangleGauge::assemble(rect, center, u, length, width, alpha))
    }

    /// Rectangle whose gauge points for `alpha` are the given points.
    pub fn from_gauge_points(p_minus: Point2, p_plus: Point2, width: f64, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        let d = p_plus - p_minus;
        let length = d.norm() / (1.0 - 2.0 * alpha);
        RectangleGauge::from_axis((p_minus + p_plus) * 0.5, d, length, width, alpha)
    }

    /// Shrinks both side lengths by `2·epsilon` about the center and adjusts
    /// the threshold so the gauge points stay where they are.
    pub fn shrunk(&self, epsilon: f64) -> Result<Self> {
        let length = self.length - 2.0 * epsilon;
        let width = self.width - 2.0 * epsilon;
        if !(epsilon > 0.0) || !(width > 0.0) || !(length > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "shrink {epsilon} does not fit a {} x {} rectangle",
                self.length, self.width
            )));
        }
        let alpha = (self.alpha * self.length - epsilon) / length;
        if !(alpha > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "shrink {epsilon} swallows the gauge segment of a {} x {} rectangle",
                self.length, self.width
            )));
        }
        RectangleGauge::from_axis(self.center, self.axis, length, width, alpha)
    }

    /// Whether `line` crosses both long sides (and hence no short side
    /// interior) of the rectangle.
    pub fn crosses_long_sides(&self, line: &DirectedLine) -> bool {
        let n = Point2::new(-self.axis.y, self.axis.x);
        let hw = 0.5 * self.width;
        let hl = 0.5 * self.length;
        let across = line.direction().dot(n);
        if across.abs() <= EPS_GEO {
            return false;
        }
        // points where the line meets the two long side lines, in axis coordinates
        [-hw, hw].iter().all(|&c| {
            let target = self.center + n * c;
            let t = (target - line.point_at(0.0)).dot(n) / across;
            let along = (line.point_at(t) - self.center).dot(self.axis);
            along.abs() <= hl + EPS_GEO
        })
    }
}
