use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        Point::new(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Distance from `self` to the closed segment `a`–`b`.
    pub fn distance_to_segment(self, a: Point, b: Point) -> f64 {
        let ab = b - a;
        let len2 = ab.x * ab.x + ab.y * ab.y;
        if len2 == 0.0 {
            return self.distance(a);
        }
        let ap = self - a;
        let t = ((ap.x * ab.x + ap.y * ab.y) / len2).clamp(0.0, 1.0);
        self.distance(a.lerp(b, t))
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

/// Cubic Bézier segment; `p0`/`p3` are anchors, `p1`/`p2` controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BezierSegment {
    pub p0: Point,
    pub p1: Point,
    pub p2: Point,
    pub p3: Point,
}

impl BezierSegment {
    pub const fn new(p0: Point, p1: Point, p2: Point, p3: Point) -> Self {
        Self { p0, p1, p2, p3 }
    }

    /// de Casteljau evaluation.
    pub fn eval(&self, t: f64) -> Point {
        let a = self.p0.lerp(self.p1, t);
        let b = self.p1.lerp(self.p2, t);
        let c = self.p2.lerp(self.p3, t);
        let d = a.lerp(b, t);
        let e = b.lerp(c, t);
        d.lerp(e, t)
    }

    /// First derivative with respect to `t`.
    pub fn derivative(&self, t: f64) -> Point {
        let a = (self.p1 - self.p0) * 3.0;
        let b = (self.p2 - self.p1) * 3.0;
        let c = (self.p3 - self.p2) * 3.0;
        a.lerp(b, t).lerp(b.lerp(c, t), t)
    }

    /// Splits at `t` into two segments covering `[0, t]` and `[t, 1]`.
    pub fn split(&self, t: f64) -> (BezierSegment, BezierSegment) {
        let a = self.p0.lerp(self.p1, t);
        let b = self.p1.lerp(self.p2, t);
        let c = self.p2.lerp(self.p3, t);
        let d = a.lerp(b, t);
        let e = b.lerp(c, t);
        let f = d.lerp(e, t);
        (
            BezierSegment::new(self.p0, a, d, f),
            BezierSegment::new(f, e, c, self.p3),
        )
    }

    /// Largest distance from a control point to the chord `p0`–`p3`.
    pub fn flatness(&self) -> f64 {
        self.p1
            .distance_to_segment(self.p0, self.p3)
            .max(self.p2.distance_to_segment(self.p0, self.p3))
    }

    /// Power-basis coefficients `[c1, c2, c3]` of one coordinate, relative to
    /// the start value: `v(t) = v0 + ((c3 t + c2) t + c1) t`.
    fn coefficients(v0: f64, v1: f64, v2: f64, v3: f64) -> [f64; 3] {
        [
            3.0 * (v1 - v0),
            3.0 * (v2 - 2.0 * v1 + v0),
            v3 - v0 + 3.0 * (v1 - v2),
        ]
    }

    pub(crate) fn x_poly(&self) -> [f64; 3] {
        Self::coefficients(self.p0.x, self.p1.x, self.p2.x, self.p3.x)
    }

    pub(crate) fn y_poly(&self) -> [f64; 3] {
        Self::coefficients(self.p0.y, self.p1.y, self.p2.y, self.p3.y)
    }
}

#[inline]
pub(crate) fn horner(v0: f64, c: &[f64; 3], t: f64) -> f64 {
    v0 + ((c[2] * t + c[1]) * t + c[0]) * t
}

/// Point on `seg` at parameter `t`.
pub fn bezier_point(seg: &BezierSegment, t: f64) -> Point {
    seg.eval(t)
}
