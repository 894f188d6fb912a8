//! Localization regions and the cut segments through them.
//!
//! Boxes are stored as center plus half-extents so that halving a region is
//! a division by two and stays exact in binary floating point.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2<T> {
    pub x1: T,
    pub x2: T,
}

impl<T: Scalar> Point2<T> {
    #[inline]
    pub fn new(x1: T, x2: T) -> Self {
        Point2 { x1, x2 }
    }

    #[inline]
    pub fn zero() -> Self {
        Point2::new(T::zero(), T::zero())
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x1 * other.x1 + self.x2 * other.x2
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x1.hypot(self.x2)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    /// Component along `axis` (`x1` for horizontal, `x2` for vertical).
    #[inline]
    pub fn along(self, axis: Axis) -> T {
        match axis {
            Axis::Horizontal => self.x1,
            Axis::Vertical => self.x2,
        }
    }

    /// Component normal to a segment parallel to `axis`.
    #[inline]
    pub fn normal(self, axis: Axis) -> T {
        match axis {
            Axis::Horizontal => self.x2,
            Axis::Vertical => self.x1,
        }
    }

    pub fn cast<U: Scalar>(self) -> Point2<U> {
        Point2::new(U::lit(self.x1.as_f64()), U::lit(self.x2.as_f64()))
    }
}

impl<T: Scalar> Add for Point2<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Point2::new(self.x1 + o.x1, self.x2 + o.x2)
    }
}

impl<T: Scalar> Sub for Point2<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Point2::new(self.x1 - o.x1, self.x2 - o.x2)
    }
}

impl<T: Scalar> Mul<T> for Point2<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Point2::new(self.x1 * s, self.x2 * s)
    }
}

impl<T: Scalar> Neg for Point2<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Point2::new(-self.x1, -self.x2)
    }
}

/// Direction a cut segment runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    /// Parallel to the `x1` axis; splits into lower and upper halves.
    Horizontal,
    /// Parallel to the `x2` axis; splits into left and right halves.
    Vertical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment<T> {
    pub a: Point2<T>,
    pub b: Point2<T>,
    pub axis: Axis,
}

impl<T: Scalar> Segment<T> {
    /// Builds an axis-parallel segment, validating that `a != b` and that the
    /// endpoints share the fixed coordinate.
    pub fn new(a: Point2<T>, b: Point2<T>, axis: Axis) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::param("segment", "non-finite endpoint"));
        }
        if a == b {
            return Err(Error::param("segment", "degenerate segment"));
        }
        if a.normal(axis) != b.normal(axis) {
            return Err(Error::param("segment", "endpoints are not axis-parallel"));
        }
        Ok(Segment { a, b, axis })
    }

    #[inline]
    pub fn length(&self) -> T {
        (self.b - self.a).norm()
    }

    /// Point at parameter `t` in `[0, 1]`.
    #[inline]
    pub fn at(&self, t: T) -> Point2<T> {
        self.a + (self.b - self.a) * t
    }

    #[inline]
    pub fn midpoint(&self) -> Point2<T> {
        Point2::new(
            (self.a.x1 + self.b.x1) * T::half(),
            (self.a.x2 + self.b.x2) * T::half(),
        )
    }

    /// Coordinate fixed along the segment (`x2` for horizontal cuts).
    #[inline]
    pub fn level(&self) -> T {
        self.a.normal(self.axis)
    }
}

/// Axis-aligned rectangle; a square when both half-extents agree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisBox<T> {
    pub center: Point2<T>,
    pub half_width: T,
    pub half_height: T,
}

impl<T: Scalar> AxisBox<T> {
    pub fn new(center: Point2<T>, half_width: T, half_height: T) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::param("center", "non-finite"));
        }
        if !(half_width > T::zero() && half_width.is_finite()) {
            return Err(Error::param("half_width", "must be positive and finite"));
        }
        if !(half_height > T::zero() && half_height.is_finite()) {
            return Err(Error::param("half_height", "must be positive and finite"));
        }
        Ok(AxisBox {
            center,
            half_width,
            half_height,
        })
    }

    pub fn square(center: Point2<T>, half_side: T) -> Result<Self> {
        Self::new(center, half_side, half_side)
    }

    /// Box `[lo.x1, hi.x1] x [lo.x2, hi.x2]`.
    pub fn from_corners(lo: Point2<T>, hi: Point2<T>) -> Result<Self> {
        let center = Point2::new((lo.x1 + hi.x1) * T::half(), (lo.x2 + hi.x2) * T::half());
        Self::new(
            center,
            (hi.x1 - lo.x1) * T::half(),
            (hi.x2 - lo.x2) * T::half(),
        )
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.half_width == self.half_height
    }

    #[inline]
    pub fn width(&self) -> T {
        self.half_width * T::two()
    }

    #[inline]
    pub fn height(&self) -> T {
        self.half_height * T::two()
    }

    #[inline]
    pub fn lo(&self) -> Point2<T> {
        Point2::new(
            self.center.x1 - self.half_width,
            self.center.x2 - self.half_height,
        )
    }

    #[inline]
    pub fn hi(&self) -> Point2<T> {
        Point2::new(
            self.center.x1 + self.half_width,
            self.center.x2 + self.half_height,
        )
    }

    #[inline]
    pub fn area(&self) -> T {
        self.width() * self.height()
    }

    #[inline]
    pub fn diagonal(&self) -> T {
        self.width().hypot(self.height())
    }

    pub fn contains(&self, p: Point2<T>) -> bool {
        let (lo, hi) = (self.lo(), self.hi());
        p.x1 >= lo.x1 && p.x1 <= hi.x1 && p.x2 >= lo.x2 && p.x2 <= hi.x2
    }

    /// Whether `other` lies inside `self` (closed containment).
    pub fn contains_box(&self, other: &AxisBox<T>) -> bool {
        self.contains(other.lo()) && self.contains(other.hi())
    }

    /// Euclidean projection onto the box.
    pub fn project(&self, p: Point2<T>) -> Point2<T> {
        let (lo, hi) = (self.lo(), self.hi());
        Point2::new(p.x1.max(lo.x1).min(hi.x1), p.x2.max(lo.x2).min(hi.x2))
    }
}

/// Horizontal segment through the center, spanning the full width.
pub fn horizontal_cut<T: Scalar>(b: &AxisBox<T>) -> Segment<T> {
    let c = b.center;
    Segment {
        a: Point2::new(c.x1 - b.half_width, c.x2),
        b: Point2::new(c.x1 + b.half_width, c.x2),
        axis: Axis::Horizontal,
    }
}

/// Vertical segment through the center, spanning the full height.
pub fn vertical_cut<T: Scalar>(b: &AxisBox<T>) -> Segment<T> {
    let c = b.center;
    Segment {
        a: Point2::new(c.x1, c.x2 - b.half_height),
        b: Point2::new(c.x1, c.x2 + b.half_height),
        axis: Axis::Vertical,
    }
}

/// Center cut of `b` along `axis`.
pub fn center_cut<T: Scalar>(b: &AxisBox<T>, axis: Axis) -> Segment<T> {
    match axis {
        Axis::Horizontal => horizontal_cut(b),
        Axis::Vertical => vertical_cut(b),
    }
}

/// Splits `b` along its center cut `seg`. Children come lower/left first.
pub fn split<T: Scalar>(b: &AxisBox<T>, seg: &Segment<T>) -> Result<(AxisBox<T>, AxisBox<T>)> {
    let expected = center_cut(b, seg.axis);
    let reversed = Segment {
        a: expected.b,
        b: expected.a,
        axis: expected.axis,
    };
    if *seg != expected && *seg != reversed {
        return Err(Error::NotACenterCut);
    }
    let c = b.center;
    Ok(match seg.axis {
        Axis::Horizontal => {
            let hh = b.half_height * T::half();
            (
                AxisBox {
                    center: Point2::new(c.x1, c.x2 - hh),
                    half_width: b.half_width,
                    half_height: hh,
                },
                AxisBox {
                    center: Point2::new(c.x1, c.x2 + hh),
                    half_width: b.half_width,
                    half_height: hh,
                },
            )
        }
        Axis::Vertical => {
            let hw = b.half_width * T::half();
            (
                AxisBox {
                    center: Point2::new(c.x1 - hw, c.x2),
                    half_width: hw,
                    half_height: b.half_height,
                },
                AxisBox {
                    center: Point2::new(c.x1 + hw, c.x2),
                    half_width: hw,
                    half_height: b.half_height,
                },
            )
        }
    })
}

/// Which way the two legs of a [`RightTriangle`] run from the right-angle
/// vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Legs along `+x1` and `+x2`.
    PosPos,
    /// Legs along `-x1` and `+x2`.
    NegPos,
    /// Legs along `+x1` and `-x2`.
    PosNeg,
    /// Legs along `-x1` and `-x2`.
    NegNeg,
}

impl Orientation {
    /// Signs `(s1, s2)` of the leg directions.
    pub fn signs<T: Scalar>(self) -> (T, T) {
        let (p, n) = (T::one(), -T::one());
        match self {
            Orientation::PosPos => (p, p),
            Orientation::NegPos => (n, p),
            Orientation::PosNeg => (p, n),
            Orientation::NegNeg => (n, n),
        }
    }
}

/// Isosceles right triangle with axis-parallel legs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RightTriangle<T> {
    pub right_angle_vertex: Point2<T>,
    pub leg: T,
    pub orientation: Orientation,
}

impl<T: Scalar> RightTriangle<T> {
    pub fn new(right_angle_vertex: Point2<T>, leg: T, orientation: Orientation) -> Result<Self> {
        if !right_angle_vertex.is_finite() {
            return Err(Error::param("right_angle_vertex", "non-finite"));
        }
        if !(leg > T::zero() && leg.is_finite()) {
            return Err(Error::param("leg", "must be positive and finite"));
        }
        Ok(RightTriangle {
            right_angle_vertex,
            leg,
            orientation,
        })
    }

    /// Right-angle vertex, end of the `x1` leg, end of the `x2` leg.
    pub fn vertices(&self) -> [Point2<T>; 3] {
        let (s1, s2) = self.orientation.signs::<T>();
        let v = self.right_angle_vertex;
        [
            v,
            Point2::new(v.x1 + s1 * self.leg, v.x2),
            Point2::new(v.x1, v.x2 + s2 * self.leg),
        ]
    }

    pub fn area(&self) -> T {
        self.leg * self.leg * T::half()
    }

    pub fn centroid(&self) -> Point2<T> {
        let [a, b, c] = self.vertices();
        let third = T::one() / T::lit(3.0);
        Point2::new((a.x1 + b.x1 + c.x1) * third, (a.x2 + b.x2 + c.x2) * third)
    }

    /// Smallest axis box containing the triangle (a square of side `leg`).
    pub fn bounding_square(&self) -> AxisBox<T> {
        let (s1, s2) = self.orientation.signs::<T>();
        let h = self.leg * T::half();
        let v = self.right_angle_vertex;
        AxisBox {
            center: Point2::new(v.x1 + s1 * h, v.x2 + s2 * h),
            half_width: h,
            half_height: h,
        }
    }

    pub fn contains(&self, p: Point2<T>) -> bool {
        let (s1, s2) = self.orientation.signs::<T>();
        let u = (p.x1 - self.right_angle_vertex.x1) * s1;
        let w = (p.x2 - self.right_angle_vertex.x2) * s2;
        u >= T::zero() && w >= T::zero() && u + w <= self.leg
    }

    /// Image of the triangle's bounding-square-relative coordinates; used to
    /// map into local `(u, w)` with legs along `+u`, `+w`.
    fn local(&self, p: Point2<T>) -> (T, T) {
        let (s1, s2) = self.orientation.signs::<T>();
        (
            (p.x1 - self.right_angle_vertex.x1) * s1,
            (p.x2 - self.right_angle_vertex.x2) * s2,
        )
    }
}

/// What remains of a triangle after its first midline cut keeps the side
/// containing the right-angle vertex: the parent minus its far half-leg
/// corner triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Trapezoid<T> {
    pub parent: RightTriangle<T>,
}

impl<T: Scalar> Trapezoid<T> {
    /// Vertices in the order right-angle vertex, `x1`-leg midpoint,
    /// hypotenuse midpoint, end of the `x2` leg.
    pub fn vertices(&self) -> [Point2<T>; 4] {
        let (s1, s2) = self.parent.orientation.signs::<T>();
        let v = self.parent.right_angle_vertex;
        let a = self.parent.leg;
        let h = a * T::half();
        [
            v,
            Point2::new(v.x1 + s1 * h, v.x2),
            Point2::new(v.x1 + s1 * h, v.x2 + s2 * h),
            Point2::new(v.x1, v.x2 + s2 * a),
        ]
    }

    pub fn area(&self) -> T {
        self.parent.leg * self.parent.leg * T::lit(0.375)
    }

    pub fn contains(&self, p: Point2<T>) -> bool {
        let (u, _) = self.parent.local(p);
        self.parent.contains(p) && u <= self.parent.leg * T::half()
    }
}

/// Midline cuts of `t`. The first joins the midpoint of the `x1` leg to the
/// midpoint of the hypotenuse (so it runs parallel to `x2`); the second joins
/// the hypotenuse midpoint to the midpoint of the `x2` leg.
pub fn triangle_midline_cuts<T: Scalar>(t: &RightTriangle<T>) -> (Segment<T>, Segment<T>) {
    let (s1, s2) = t.orientation.signs::<T>();
    let v = t.right_angle_vertex;
    let h = t.leg * T::half();
    let leg1_mid = Point2::new(v.x1 + s1 * h, v.x2);
    let hyp_mid = Point2::new(v.x1 + s1 * h, v.x2 + s2 * h);
    let leg2_mid = Point2::new(v.x1, v.x2 + s2 * h);
    (
        Segment {
            a: leg1_mid,
            b: hyp_mid,
            axis: Axis::Vertical,
        },
        Segment {
            a: leg2_mid,
            b: hyp_mid,
            axis: Axis::Horizontal,
        },
    )
}

/// First midline split: the far half-leg triangle (cut off beyond the
/// midline along `x1`) and the trapezoid holding the right-angle vertex.
pub fn triangle_split<T: Scalar>(
    t: &RightTriangle<T>,
    seg: &Segment<T>,
) -> Result<(RightTriangle<T>, Trapezoid<T>)> {
    let (first, _) = triangle_midline_cuts(t);
    if !same_segment(seg, &first) {
        return Err(Error::NotAMidline);
    }
    let far = RightTriangle {
        right_angle_vertex: first.a,
        leg: t.leg * T::half(),
        orientation: t.orientation,
    };
    Ok((far, Trapezoid { parent: *t }))
}

/// Second midline split of a trapezoid: the half-leg triangle beyond the
/// midline along `x2` and the square at the right-angle vertex.
pub fn trapezoid_split<T: Scalar>(
    z: &Trapezoid<T>,
    seg: &Segment<T>,
) -> Result<(RightTriangle<T>, AxisBox<T>)> {
    let (_, second) = triangle_midline_cuts(&z.parent);
    if !same_segment(seg, &second) {
        return Err(Error::NotAMidline);
    }
    let t = &z.parent;
    let h = t.leg * T::half();
    let upper = RightTriangle {
        right_angle_vertex: second.a,
        leg: h,
        orientation: t.orientation,
    };
    let (s1, s2) = t.orientation.signs::<T>();
    let v = t.right_angle_vertex;
    let q = h * T::half();
    let square = AxisBox {
        center: Point2::new(v.x1 + s1 * q, v.x2 + s2 * q),
        half_width: q,
        half_height: q,
    };
    Ok((upper, square))
}

fn same_segment<T: Scalar>(s: &Segment<T>, expected: &Segment<T>) -> bool {
    s.axis == expected.axis
        && ((s.a == expected.a && s.b == expected.b) || (s.a == expected.b && s.b == expected.a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x1: f64, x2: f64) -> Point2<f64> {
        Point2::new(x1, x2)
    }

    #[test]
    fn horizontal_cut_examples() {
        let b = AxisBox::new(p(0.0, 0.0), 1.0, 1.0).unwrap();
        let s = horizontal_cut(&b);
        assert_eq!((s.a, s.b), (p(-1.0, 0.0), p(1.0, 0.0)));

        let b = AxisBox::new(p(-1.0, -1.0), 2.0, 1.0).unwrap();
        let s = horizontal_cut(&b);
        assert_eq!((s.a, s.b), (p(-3.0, -1.0), p(1.0, -1.0)));

        // the [-3, 1]^2 experiment square
        let b = AxisBox::from_corners(p(-3.0, -3.0), p(1.0, 1.0)).unwrap();
        let s = horizontal_cut(&b);
        assert_eq!((s.a, s.b), (p(-3.0, -1.0), p(1.0, -1.0)));
        assert_eq!(s.axis, Axis::Horizontal);
    }

    #[test]
    fn vertical_cut_examples() {
        let b = AxisBox::new(p(0.0, 0.0), 1.0, 0.5).unwrap();
        let s = vertical_cut(&b);
        assert_eq!((s.a, s.b), (p(0.0, -0.5), p(0.0, 0.5)));

        let unit = AxisBox::from_corners(p(0.0, 0.0), p(1.0, 1.0)).unwrap();
        let s = vertical_cut(&unit);
        assert_eq!((s.a, s.b), (p(0.5, 0.0), p(0.5, 1.0)));

        let r = AxisBox::from_corners(p(0.0, 0.5), p(1.0, 1.0)).unwrap();
        let s = vertical_cut(&r);
        assert_eq!((s.a, s.b), (p(0.5, 0.5), p(0.5, 1.0)));
    }

    #[test]
    fn split_unit_square_horizontally() {
        let unit = AxisBox::from_corners(p(0.0, 0.0), p(1.0, 1.0)).unwrap();
        let (lo, hi) = split(&unit, &horizontal_cut(&unit)).unwrap();
        assert_eq!((lo.lo(), lo.hi()), (p(0.0, 0.0), p(1.0, 0.5)));
        assert_eq!((hi.lo(), hi.hi()), (p(0.0, 0.5), p(1.0, 1.0)));
    }

    #[test]
    fn split_diagonals() {
        let r = 3.0_f64;
        let sq = AxisBox::square(p(0.2, -0.7), r / 2.0).unwrap();
        let (a, _) = split(&sq, &horizontal_cut(&sq)).unwrap();
        assert!((a.diagonal() - r * 5f64.sqrt() / 2.0).abs() < 1e-14);
        let (c, _) = split(&a, &vertical_cut(&a)).unwrap();
        assert!(c.is_square());
        assert!((c.diagonal() - r * 2f64.sqrt() / 2.0).abs() < 1e-14);
    }

    #[test]
    fn split_rejects_off_center_segment() {
        let unit = AxisBox::from_corners(p(0.0, 0.0), p(1.0, 1.0)).unwrap();
        let off = Segment::new(p(0.0, 0.25), p(1.0, 0.25), Axis::Horizontal).unwrap();
        assert_eq!(split(&unit, &off), Err(Error::NotACenterCut));
        let wrong_axis = vertical_cut(&AxisBox::square(p(5.0, 5.0), 1.0).unwrap());
        assert!(split(&unit, &wrong_axis).is_err());
    }

    #[test]
    fn invalid_boxes_and_segments() {
        assert!(AxisBox::new(p(0.0, 0.0), 0.0, 1.0).is_err());
        assert!(AxisBox::new(p(0.0, 0.0), 1.0, -1.0).is_err());
        assert!(AxisBox::new(p(f64::NAN, 0.0), 1.0, 1.0).is_err());
        assert!(Segment::new(p(0.0, 0.0), p(0.0, 0.0), Axis::Vertical).is_err());
        assert!(Segment::new(p(0.0, 0.0), p(1.0, 1.0), Axis::Horizontal).is_err());
        assert!(RightTriangle::new(p(0.0, 0.0), 0.0, Orientation::PosPos).is_err());
    }

    #[test]
    fn midline_cuts_of_standard_triangle() {
        let a = 3.0;
        let t = RightTriangle::new(p(0.0, 0.0), a, Orientation::PosPos).unwrap();
        let (c1, c2) = triangle_midline_cuts(&t);
        assert_eq!((c1.a, c1.b), (p(a / 2.0, 0.0), p(a / 2.0, a / 2.0)));
        assert_eq!((c2.a, c2.b), (p(0.0, a / 2.0), p(a / 2.0, a / 2.0)));

        let t2 = RightTriangle::new(p(0.0, 0.0), 2.0, Orientation::PosPos).unwrap();
        let (c1, c2) = triangle_midline_cuts(&t2);
        assert_eq!((c1.a, c1.b), (p(1.0, 0.0), p(1.0, 1.0)));
        assert_eq!((c2.a, c2.b), (p(0.0, 1.0), p(1.0, 1.0)));
    }

    #[test]
    fn midline_lengths_in_every_orientation() {
        for o in [
            Orientation::PosPos,
            Orientation::NegPos,
            Orientation::PosNeg,
            Orientation::NegNeg,
        ] {
            let t = RightTriangle::new(p(0.3, -1.2), 1.7, o).unwrap();
            let (c1, c2) = triangle_midline_cuts(&t);
            assert!((c1.length() - 0.85).abs() < 1e-15);
            assert!((c2.length() - 0.85).abs() < 1e-15);
            assert_eq!(c1.axis, Axis::Vertical);
            assert_eq!(c2.axis, Axis::Horizontal);
        }
    }

    #[test]
    fn triangle_pieces_match_coordinate_geometry() {
        let a = 2.0;
        let t = RightTriangle::new(p(0.0, 0.0), a, Orientation::PosPos).unwrap();
        let (c1, c2) = triangle_midline_cuts(&t);
        let (far, trap) = triangle_split(&t, &c1).unwrap();
        assert_eq!(far.vertices(), [p(1.0, 0.0), p(2.0, 0.0), p(1.0, 1.0)]);
        assert_eq!(far.leg, a / 2.0);
        assert_eq!(
            trap.vertices(),
            [p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 2.0)]
        );
        assert_eq!(far.area() + trap.area(), t.area());

        let (upper, sq) = trapezoid_split(&trap, &c2).unwrap();
        assert_eq!(upper.vertices(), [p(0.0, 1.0), p(1.0, 1.0), p(0.0, 2.0)]);
        assert_eq!((sq.lo(), sq.hi()), (p(0.0, 0.0), p(1.0, 1.0)));
        assert_eq!(upper.area() + sq.area(), trap.area());
        // quarter, quarter, half
        assert_eq!(far.area() * 4.0, t.area());
        assert_eq!(upper.area() * 4.0, t.area());
        assert_eq!(sq.area() * 2.0, t.area());
    }

    #[test]
    fn triangle_split_rejects_foreign_segment() {
        let t = RightTriangle::new(p(0.0, 0.0), 1.0, Orientation::PosPos).unwrap();
        let (_, c2) = triangle_midline_cuts(&t);
        assert_eq!(triangle_split(&t, &c2), Err(Error::NotAMidline));
        let trap = Trapezoid { parent: t };
        let (c1, _) = triangle_midline_cuts(&t);
        assert_eq!(trapezoid_split(&trap, &c1), Err(Error::NotAMidline));
    }

    #[test]
    fn mirrored_triangle_pieces_stay_inside() {
        let t = RightTriangle::new(p(1.0, 1.0), 1.0, Orientation::NegNeg).unwrap();
        let (c1, c2) = triangle_midline_cuts(&t);
        let (far, trap) = triangle_split(&t, &c1).unwrap();
        let (upper, sq) = trapezoid_split(&trap, &c2).unwrap();
        for v in far.vertices().iter().chain(upper.vertices().iter()) {
            assert!(t.contains(*v));
        }
        assert!(t.contains(sq.lo()) && t.contains(sq.center));
        assert_eq!((sq.lo(), sq.hi()), (p(0.5, 0.5), p(1.0, 1.0)));
        assert!(trap.contains(sq.center));
        assert!(!trap.contains(far.centroid()));
    }
}
