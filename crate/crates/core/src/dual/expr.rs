use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One separable term of an objective or constraint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Term {
    /// `coef * (x[index] - center)^2`
    Quadratic {
        index: usize,
        coef: f64,
        center: f64,
    },
    /// `coef * x[index]`
    Linear {
        index: usize,
        coef: f64,
    },
    Constant {
        value: f64,
    },
    /// `coef * exp(scale * x[index] + shift)`
    Exp {
        index: usize,
        coef: f64,
        scale: f64,
        shift: f64,
    },
}

impl Term {
    fn index(&self) -> Option<usize> {
        match *self {
            Term::Quadratic { index, .. }
            | Term::Linear { index, .. }
            | Term::Exp { index, .. } => Some(index),
            Term::Constant { .. } => None,
        }
    }

    fn value(&self, x: &[f64]) -> f64 {
        match *self {
            Term::Quadratic {
                index,
                coef,
                center,
            } => coef * (x[index] - center).powi(2),
            Term::Linear { index, coef } => coef * x[index],
            Term::Constant { value } => value,
            Term::Exp {
                index,
                coef,
                scale,
                shift,
            } => coef * (scale * x[index] + shift).exp(),
        }
    }

    /// Derivative in its own coordinate.
    fn derivative(&self, t: f64) -> f64 {
        match *self {
            Term::Quadratic { coef, center, .. } => 2.0 * coef * (t - center),
            Term::Linear { coef, .. } => coef,
            Term::Constant { .. } => 0.0,
            Term::Exp {
                coef, scale, shift, ..
            } => coef * scale * (scale * t + shift).exp(),
        }
    }

    /// Second derivative range over `[lo, hi]` in its own coordinate.
    fn curvature(&self, lo: f64, hi: f64) -> (f64, f64) {
        match *self {
            Term::Quadratic { coef, .. } => (2.0 * coef, 2.0 * coef),
            Term::Linear { .. } | Term::Constant { .. } => (0.0, 0.0),
            Term::Exp {
                coef, scale, shift, ..
            } => {
                let a = coef * scale * scale * (scale * lo + shift).exp();
                let b = coef * scale * scale * (scale * hi + shift).exp();
                (a.min(b), a.max(b))
            }
        }
    }

    /// Value range over `[lo, hi]`.
    fn range(&self, lo: f64, hi: f64) -> (f64, f64) {
        match *self {
            Term::Quadratic { coef, center, .. } => {
                let near = center.clamp(lo, hi) - center;
                let far = (lo - center).abs().max((hi - center).abs());
                (coef * near * near, coef * far * far)
            }
            Term::Constant { value } => (value, value),
            _ => {
                let (a, b) = (self.value_at(lo), self.value_at(hi));
                (a.min(b), a.max(b))
            }
        }
    }

    fn value_at(&self, t: f64) -> f64 {
        let i = self.index().unwrap_or(0);
        let mut x = vec![0.0; i + 1];
        x[i] = t;
        self.value(&x)
    }

    fn check(&self, dim: usize) -> Result<()> {
        if let Some(i) = self.index() {
            if i >= dim {
                return Err(Error::MalformedProblem(format!(
                    "term index {i} out of range for dimension {dim}"
                )));
            }
        }
        let finite = match *self {
            Term::Quadratic { coef, center, .. } => coef.is_finite() && center.is_finite(),
            Term::Linear { coef, .. } => coef.is_finite(),
            Term::Constant { value } => value.is_finite(),
            Term::Exp {
                coef, scale, shift, ..
            } => coef.is_finite() && scale.is_finite() && shift.is_finite(),
        };
        if !finite {
            return Err(Error::MalformedProblem("non-finite term parameter".into()));
        }
        let convex = match *self {
            Term::Quadratic { coef, .. } | Term::Exp { coef, .. } => coef >= 0.0,
            _ => true,
        };
        if !convex {
            return Err(Error::MalformedProblem(
                "quadratic and exponential coefficients must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Sum of separable convex terms.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Expr {
    pub terms: Vec<Term>,
}

impl Expr {
    pub fn new(terms: Vec<Term>) -> Self {
        Expr { terms }
    }

    pub fn check(&self, dim: usize) -> Result<()> {
        self.terms.iter().try_for_each(|t| t.check(dim))
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|t| t.value(x)).sum()
    }

    /// Adds `weight * grad` into `out`.
    pub fn add_gradient(&self, x: &[f64], weight: f64, out: &mut [f64]) {
        for t in &self.terms {
            if let Some(i) = t.index() {
                out[i] += weight * t.derivative(x[i]);
            }
        }
    }

    /// Bounds on the value over the box.
    pub fn range(&self, lo: &[f64], hi: &[f64]) -> (f64, f64) {
        self.terms.iter().fold((0.0, 0.0), |(a, b), t| {
            let (l, h) = match t.index() {
                Some(i) => t.range(lo[i], hi[i]),
                None => t.range(0.0, 0.0),
            };
            (a + l, b + h)
        })
    }

    /// Bounds on the diagonal Hessian entries over the box, per coordinate.
    pub fn curvature(&self, lo: &[f64], hi: &[f64]) -> Vec<(f64, f64)> {
        let mut out = vec![(0.0, 0.0); lo.len()];
        for t in &self.terms {
            if let Some(i) = t.index() {
                let (a, b) = t.curvature(lo[i], hi[i]);
                out[i].0 += a;
                out[i].1 += b;
            }
        }
        out
    }

    /// `sup` of the gradient norm over the box. Every term is convex in its
    /// coordinate, so each partial derivative is monotone and peaks at an
    /// endpoint.
    pub fn lipschitz(&self, lo: &[f64], hi: &[f64]) -> f64 {
        let mut dlo = vec![0.0; lo.len()];
        let mut dhi = vec![0.0; lo.len()];
        self.add_gradient(lo, 1.0, &mut dlo);
        self.add_gradient(hi, 1.0, &mut dhi);
        dlo.iter()
            .zip(&dhi)
            .map(|(a, b)| a.abs().max(b.abs()).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Expr {
        Expr::new(vec![
            Term::Quadratic {
                index: 0,
                coef: 1.5,
                center: 0.2,
            },
            Term::Linear {
                index: 1,
                coef: -2.0,
            },
            Term::Exp {
                index: 1,
                coef: 0.5,
                scale: -1.0,
                shift: 0.3,
            },
            Term::Constant { value: 4.0 },
        ])
    }

    #[test]
    fn gradient_matches_differences() {
        let e = sample();
        let x = [0.7, -0.4];
        let mut g = [0.0; 2];
        e.add_gradient(&x, 1.0, &mut g);
        let h = 1e-6;
        for i in 0..2 {
            let mut xp = x;
            let mut xm = x;
            xp[i] += h;
            xm[i] -= h;
            let fd = (e.value(&xp) - e.value(&xm)) / (2.0 * h);
            assert!((fd - g[i]).abs() < 1e-7, "coordinate {i}");
        }
    }

    #[test]
    fn ranges_enclose_grid_values() {
        let e = sample();
        let (lo, hi) = ([-1.0, -2.0], [1.0, 0.5]);
        let (a, b) = e.range(&lo, &hi);
        let l = e.lipschitz(&lo, &hi);
        let mut seen_norm: f64 = 0.0;
        for i in 0..=50 {
            for j in 0..=50 {
                let x = [-1.0 + 2.0 * i as f64 / 50.0, -2.0 + 2.5 * j as f64 / 50.0];
                let v = e.value(&x);
                assert!(a - 1e-12 <= v && v <= b + 1e-12);
                let mut g = [0.0; 2];
                e.add_gradient(&x, 1.0, &mut g);
                seen_norm = seen_norm.max(g[0].hypot(g[1]));
            }
        }
        assert!(seen_norm <= l + 1e-12);
        assert!(seen_norm >= 0.99 * l);
    }

    #[test]
    fn json_shape() {
        let e: Expr = serde_json::from_str(
            r#"[{"type": "quadratic", "index": 0, "coef": 1, "center": 1},
                {"type": "linear", "index": 1, "coef": -1},
                {"type": "constant", "value": 0.5}]"#,
        )
        .unwrap();
        assert_eq!(e.value(&[1.0, 2.0]), -1.5);
    }

    #[test]
    fn rejects_concave_and_out_of_range() {
        let bad = Expr::new(vec![Term::Quadratic {
            index: 0,
            coef: -1.0,
            center: 0.0,
        }]);
        assert!(bad.check(1).is_err());
        let bad = Expr::new(vec![Term::Linear {
            index: 3,
            coef: 1.0,
        }]);
        assert!(bad.check(2).is_err());
    }
}
