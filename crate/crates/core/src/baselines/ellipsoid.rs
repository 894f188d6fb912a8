use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{AxisBox, Point2};
use crate::halving::{IterationRecord, RegionRecord, RunTrace, Solution, StopReason};
use crate::oracle::{CountingOracle, Objective};
use crate::scalar::Scalar;

use super::keep_record;

/// `{x : (x - c)^T P^{-1} (x - c) <= 1}` with `P = [[a, b], [b, d]]`
/// stored as `[a, b, d]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ellipse<T> {
    pub center: Point2<T>,
    pub shape: [T; 3],
}

impl<T: Scalar> Ellipse<T> {
    pub fn new(center: Point2<T>, shape: [T; 3]) -> Result<Self> {
        let e = Ellipse { center, shape };
        if !center.is_finite() || !e.is_spd() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(e)
    }

    pub fn disk(center: Point2<T>, radius: T) -> Result<Self> {
        let r2 = radius * radius;
        Ellipse::new(center, [r2, T::zero(), r2])
    }

    pub fn det(&self) -> T {
        let [a, b, d] = self.shape;
        a * d - b * b
    }

    pub fn is_spd(&self) -> bool {
        let [a, b, d] = self.shape;
        a > T::zero() && d > T::zero() && self.det() > T::zero() && b.is_finite()
    }

    pub fn area(&self) -> T {
        T::lit(std::f64::consts::PI) * self.det().sqrt()
    }

    pub fn contains(&self, p: Point2<T>) -> bool {
        let [a, b, d] = self.shape;
        let u = p - self.center;
        // P^{-1} = [[d, -b], [-b, a]] / det
        let q = (d * u.x1 * u.x1 - T::two() * b * u.x1 * u.x2 + a * u.x2 * u.x2) / self.det();
        q <= T::one()
    }

    /// Minimum-area ellipse containing `{x in E : g . (x - c) <= 0}`.
    pub fn cut(&self, g: Point2<T>) -> Result<Self> {
        let [a, b, d] = self.shape;
        let pg = Point2::new(a * g.x1 + b * g.x2, b * g.x1 + d * g.x2);
        let gpg = g.dot(pg);
        if !(gpg > T::zero()) || !gpg.is_finite() {
            return Err(Error::NotPositiveDefinite);
        }
        let s = gpg.sqrt();
        let center = self.center - pg * (T::one() / (T::lit(3.0) * s));
        let k = T::lit(4.0) / T::lit(3.0);
        let r = T::lit(2.0) / (T::lit(3.0) * gpg);
        let shape = [
            k * (a - r * pg.x1 * pg.x1),
            k * (b - r * pg.x1 * pg.x2),
            k * (d - r * pg.x2 * pg.x2),
        ];
        Ellipse::new(center, shape)
    }
}

impl<T: Copy> From<Ellipse<T>> for RegionRecord<T> {
    fn from(e: Ellipse<T>) -> Self {
        RegionRecord::Ellipse {
            center: e.center,
            shape: e.shape,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EllipsoidOptions<T> {
    /// Stop once the best value is within `eps` of this.
    pub known_minimum: Option<T>,
    /// Cap on total cuts; defaults to `ceil(2 d (d + 1) ln(r L / eps))`
    /// with `d = 2` and `r` the circumscribed radius.
    pub max_cuts: Option<u32>,
}

/// Cut-count bound used when no cap is given.
pub fn ellipsoid_cut_bound<T: Scalar>(radius: T, lipschitz: T, eps: T) -> u32 {
    let v = (T::lit(12.0) * (radius * lipschitz / eps).ln()).ceil();
    v.max(T::one()).to_u32().unwrap_or(u32::MAX)
}

/// Central-cut ellipsoid method started from the square's circumscribed
/// disk. Centers outside the square get a feasibility cut along the most
/// violated box normal, which costs no oracle call. Only objective cuts
/// count as iterations; each one makes a value and a full gradient call.
pub fn ellipsoid_solve<T: Scalar, O: Objective<T> + ?Sized>(
    o: &O,
    square: &AxisBox<T>,
    eps: T,
    opts: &EllipsoidOptions<T>,
) -> Result<Solution<T>> {
    if !(eps > T::zero()) {
        return Err(Error::param("eps", "must be positive"));
    }
    let radius = square.diagonal() * T::half();
    let start = Ellipse::disk(square.center, radius)?;
    let cap = opts
        .max_cuts
        .unwrap_or_else(|| ellipsoid_cut_bound(radius, o.lipschitz(), eps));
    let counting = CountingOracle::new(o);
    let mut e = start;
    let mut best: Option<(Point2<T>, T)> = None;
    let mut records = Vec::new();
    let mut objective_cuts = 0u32;
    let mut stop_reason = StopReason::IterationBudget;
    for _ in 0..cap {
        let c = e.center;
        let normal = if square.contains(c) {
            None
        } else {
            Some(box_normal(square, c))
        };
        let g = match normal {
            Some(n) => n,
            None => {
                let v = counting.value(c)?;
                if best.is_none_or(|(_, bv)| v < bv) {
                    best = Some((c, v));
                }
                if let Some(fs) = opts.known_minimum {
                    if v - fs <= eps {
                        stop_reason = StopReason::TargetGap;
                        break;
                    }
                }
                let g = counting.gradient(c)?;
                if keep_record(objective_cuts as u64) {
                    records.push(IterationRecord {
                        index: objective_cuts,
                        region: e.into(),
                        cuts: Vec::new(),
                        counters: counting.counters(),
                    });
                }
                objective_cuts += 1;
                if g.norm() == T::zero() {
                    stop_reason = StopReason::ZeroGradient;
                    break;
                }
                g
            }
        };
        e = match e.cut(g) {
            Ok(next) => next,
            // roundoff destroyed the shape; start over from the disk
            Err(Error::NotPositiveDefinite) => start,
            Err(other) => return Err(other),
        };
    }
    let (point, value) = match best {
        Some(b) => b,
        None => (square.center, o.value(square.center)?),
    };
    Ok(Solution {
        point,
        value,
        trace: RunTrace {
            method: "ellipsoid".into(),
            epsilon: eps,
            iterations_budget: cap,
            iterations_run: objective_cuts,
            inner_delta: T::zero(),
            grad_delta_cap: T::zero(),
            records,
            final_region: e.into(),
            counters: counting.counters(),
            stop_reason,
        },
    })
}

fn box_normal<T: Scalar>(b: &AxisBox<T>, c: Point2<T>) -> Point2<T> {
    let u = c - b.center;
    let r1 = u.x1.abs() / b.half_width;
    let r2 = u.x2.abs() / b.half_height;
    if r1 >= r2 {
        Point2::new(u.x1.signum(), T::zero())
    } else {
        Point2::new(T::zero(), u.x2.signum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::corpus;

    #[test]
    fn cut_matches_closed_form() {
        // unit disk cut by x1 <= 0: center (-1/3, 0), semi-axes 2/3 and 2/sqrt 3
        let e = Ellipse::disk(Point2::new(0.0f64, 0.0), 1.0).unwrap();
        let n = e.cut(Point2::new(1.0, 0.0)).unwrap();
        assert!((n.center.x1 + 1.0 / 3.0).abs() < 1e-15);
        assert!((n.shape[0] - 4.0 / 9.0).abs() < 1e-15);
        assert!((n.shape[2] - 4.0 / 3.0).abs() < 1e-15);
        let ratio = n.area() / e.area();
        assert!((ratio - 4.0 / (3.0 * 3f64.sqrt())).abs() < 1e-15);
        assert!(ratio <= (-0.25f64).exp());
    }

    #[test]
    fn cut_keeps_half_ellipse() {
        let e = Ellipse::new(Point2::new(0.3, -0.2), [2.0, 0.5, 1.0]).unwrap();
        let g = Point2::new(0.4, -1.3);
        let n = e.cut(g).unwrap();
        for i in 0..200 {
            for j in 0..200 {
                let p = Point2::new(-2.0 + 0.02 * i as f64, -2.0 + 0.02 * j as f64);
                if e.contains(p) && g.dot(p - e.center) <= 0.0 {
                    assert!(n.contains(p), "{p:?}");
                }
            }
        }
    }

    #[test]
    fn rejects_degenerate_shapes() {
        assert!(Ellipse::new(Point2::new(0.0, 0.0), [1.0, 1.0, 1.0]).is_err());
        assert!(Ellipse::new(Point2::new(0.0, 0.0), [-1.0, 0.0, 1.0]).is_err());
        let e = Ellipse::disk(Point2::new(0.0, 0.0), 1.0).unwrap();
        assert!(e.cut(Point2::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn sphere_by_theoretical_bound() {
        let e = corpus::sphere::<f64>();
        let s = ellipsoid_solve(&e.oracle, &e.domain, 1e-6, &EllipsoidOptions::default()).unwrap();
        assert!(s.value <= 1e-6);
    }

    #[test]
    fn quartic_with_known_minimum() {
        let e = corpus::quartic::<f64>();
        let opts = EllipsoidOptions {
            known_minimum: Some(0.0),
            ..Default::default()
        };
        let s = ellipsoid_solve(&e.oracle, &e.domain, 5e-3, &opts).unwrap();
        assert_eq!(s.trace.stop_reason, StopReason::TargetGap);
        assert!(s.value <= 5e-3);
        assert!(e.domain.contains(s.point));
        assert!(s.trace.counters.full_grad_calls >= s.trace.iterations() as u64);
    }

    #[test]
    fn volume_shrinks_at_least_geometrically() {
        let e = corpus::exp_sum::<f64>();
        let s = ellipsoid_solve(&e.oracle, &e.domain, 1e-6, &EllipsoidOptions::default()).unwrap();
        let RegionRecord::Ellipse { shape, .. } = s.trace.records[0].region else {
            panic!()
        };
        let a0 = (shape[0] * shape[2] - shape[1] * shape[1]).sqrt();
        for (k, r) in s.trace.records.iter().enumerate() {
            let RegionRecord::Ellipse { shape, .. } = r.region else {
                panic!()
            };
            let a = (shape[0] * shape[2] - shape[1] * shape[1]).sqrt();
            assert!(
                a <= a0 * (-(k as f64) / 4.0).exp() * (1.0 + 1e-9),
                "cut {k}"
            );
        }
    }

    #[test]
    fn minimizer_stays_inside_under_objective_cuts() {
        let e = corpus::exp_sum::<f64>();
        let mut el = Ellipse::disk(e.domain.center, e.domain.diagonal() / 2.0).unwrap();
        for _ in 0..60 {
            if !e.domain.contains(el.center) {
                break;
            }
            assert!(el.contains(e.minimizer));
            el = el.cut(e.oracle.gradient(el.center).unwrap()).unwrap();
        }
        assert!(el.contains(e.minimizer));
    }
}
