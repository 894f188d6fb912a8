//! Convex programs `min f(x)` over a box `Q` subject to `g1(x) <= 0`,
//! `g2(x) <= 0`, solved by maximizing the two-dimensional dual
//! `phi(l) = min_Q f + l1 g1 + l2 g2` with the halving method.
//!
//! The inner minimization is done inexactly by projected gradient. With `f`
//! `mu`-strongly convex, an inner solution `delta_fn`-optimal in value is
//! within `sqrt(2 delta_fn / mu)` of the exact one, so the dual gradient
//! `(g1, g2)(x(l))` is off by at most `M sqrt(2 delta_fn / mu)` where `M`
//! bounds the Lipschitz constant of `(g1, g2)`.
//!
//! Every inner solution is tested against the stopping certificate
//! `|l . g(x)| <= eps` and `max g_i(x) <= eps`; once it holds,
//! `f(x) - f* <= eps + delta_fn`.

use std::cell::RefCell;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{AxisBox, Orientation, Point2, RightTriangle};
use crate::halving::{accuracy_budget, solve, HalvingOptions, RunTrace};
use crate::oracle::Objective;
use crate::triangle::solve_triangle;

mod expr;

pub use expr::{Expr, Term};

/// Cap on projected-gradient iterations per inner solve.
pub const MAX_INNER_ITERATIONS: usize = 200_000;

/// Problem file contents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub dim: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub objective: Expr,
    pub constraints: [Expr; 2],
    /// Strong convexity of the objective. Derived from its terms if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraint_lipschitz: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slater_point: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualProblem {
    spec: ProblemSpec,
    mu: f64,
    m: [f64; 2],
    /// Upper bounds on the diagonal Hessian of f, g1, g2 per coordinate.
    curvature: [Vec<f64>; 3],
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedProblem(msg.into())
}

impl DualProblem {
    pub fn new(spec: ProblemSpec) -> Result<Self> {
        let n = spec.dim;
        if n == 0 {
            return Err(malformed("dimension must be at least 1"));
        }
        if spec.lower.len() != n || spec.upper.len() != n {
            return Err(malformed(format!("box bounds must have {n} entries")));
        }
        for (l, u) in spec.lower.iter().zip(&spec.upper) {
            if !(l.is_finite() && u.is_finite() && l < u) {
                return Err(malformed(format!("bad box side [{l}, {u}]")));
            }
        }
        spec.objective.check(n)?;
        for g in &spec.constraints {
            g.check(n)?;
        }
        let (lo, hi) = (&spec.lower, &spec.upper);
        let fc = spec.objective.curvature(lo, hi);
        let derived_mu = fc.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
        let mu = match spec.mu {
            Some(mu) if !(mu > 0.0 && mu.is_finite()) => {
                return Err(malformed(format!("mu must be positive, got {mu}")))
            }
            Some(mu) if mu > derived_mu * (1.0 + 1e-12) => {
                return Err(malformed(format!(
                    "mu = {mu} exceeds the objective's curvature bound {derived_mu}"
                )))
            }
            Some(mu) => mu,
            None if derived_mu > 0.0 => derived_mu,
            None => return Err(malformed("objective is not strongly convex on the box")),
        };
        let derived_m = [
            spec.constraints[0].lipschitz(lo, hi),
            spec.constraints[1].lipschitz(lo, hi),
        ];
        let m = match spec.constraint_lipschitz {
            Some(m) => {
                for i in 0..2 {
                    if !(m[i] >= derived_m[i] * (1.0 - 1e-12)) || !m[i].is_finite() {
                        return Err(malformed(format!(
                            "constraint_lipschitz[{i}] = {} is below the bound {}",
                            m[i], derived_m[i]
                        )));
                    }
                }
                m
            }
            None => derived_m,
        };
        let upper = |e: &Expr| e.curvature(lo, hi).iter().map(|c| c.1).collect::<Vec<_>>();
        let curvature = [
            upper(&spec.objective),
            upper(&spec.constraints[0]),
            upper(&spec.constraints[1]),
        ];
        let p = DualProblem {
            mu,
            m,
            curvature,
            spec,
        };
        if let Some(s) = &p.spec.slater_point {
            if s.len() != n || !p.in_box(s) {
                return Err(malformed("slater point must lie in the box"));
            }
            let g = p.constraint_values(s);
            if !(g[0] < 0.0 && g[1] < 0.0) {
                return Err(malformed(format!(
                    "slater point is not strictly feasible: g = {g:?}"
                )));
            }
        }
        if let Some(a) = p.spec.dual_bound {
            if !(a > 0.0 && a.is_finite()) {
                return Err(malformed("dual_bound must be positive"));
            }
        }
        Ok(p)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ProblemSpec = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        DualProblem::new(spec)
    }

    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Lipschitz constants `M1`, `M2` of the constraints on the box.
    pub fn constraint_lipschitz(&self) -> [f64; 2] {
        self.m
    }

    /// `sqrt(M1^2 + M2^2)`.
    pub fn combined_lipschitz(&self) -> f64 {
        self.m[0].hypot(self.m[1])
    }

    /// Lipschitz constant of the dual gradient, `M^2 / mu`.
    pub fn dual_grad_lipschitz(&self) -> f64 {
        self.combined_lipschitz().powi(2) / self.mu
    }

    /// Bound on `|phi(l) - phi(l')| / |l - l'|`: the largest norm of
    /// `(g1, g2)` over the box, from interval bounds.
    pub fn dual_lipschitz(&self) -> f64 {
        let (lo, hi) = (&self.spec.lower, &self.spec.upper);
        let sup = |e: &Expr| {
            let (a, b) = e.range(lo, hi);
            a.abs().max(b.abs())
        };
        sup(&self.spec.constraints[0]).hypot(sup(&self.spec.constraints[1]))
    }

    pub fn objective(&self, x: &[f64]) -> f64 {
        self.spec.objective.value(x)
    }

    pub fn constraint_values(&self, x: &[f64]) -> [f64; 2] {
        [
            self.spec.constraints[0].value(x),
            self.spec.constraints[1].value(x),
        ]
    }

    pub fn lagrangian(&self, x: &[f64], lam: [f64; 2]) -> f64 {
        let g = self.constraint_values(x);
        self.objective(x) + lam[0] * g[0] + lam[1] * g[1]
    }

    fn lagrangian_gradient(&self, x: &[f64], lam: [f64; 2], out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        self.spec.objective.add_gradient(x, 1.0, out);
        self.spec.constraints[0].add_gradient(x, lam[0], out);
        self.spec.constraints[1].add_gradient(x, lam[1], out);
    }

    fn lagrangian_smoothness(&self, lam: [f64; 2]) -> f64 {
        let [f, g1, g2] = &self.curvature;
        (0..self.dim())
            .map(|i| f[i] + lam[0] * g1[i] + lam[1] * g2[i])
            .fold(self.mu, f64::max)
    }

    fn in_box(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.spec.lower.iter().zip(&self.spec.upper))
            .all(|(v, (l, u))| l <= v && v <= u)
    }

    fn project(&self, x: &mut [f64]) {
        for (v, (l, u)) in x
            .iter_mut()
            .zip(self.spec.lower.iter().zip(&self.spec.upper))
        {
            *v = v.clamp(*l, *u);
        }
    }

    pub fn box_center(&self) -> Vec<f64> {
        self.spec
            .lower
            .iter()
            .zip(&self.spec.upper)
            .map(|(l, u)| 0.5 * (l + u))
            .collect()
    }

    /// Bound `A >= l1* + l2*`. Taken from the file when given, otherwise
    /// `(f(s) - min_Q f) / min_i(-g_i(s))` at the Slater point `s`.
    pub fn dual_bound(&self) -> Result<f64> {
        if let Some(a) = self.spec.dual_bound {
            return Ok(a);
        }
        let s = self
            .spec
            .slater_point
            .as_ref()
            .ok_or_else(|| malformed("need dual_bound or slater_point"))?;
        let fmin = inner_solve(self, [0.0, 0.0], 1e-10)?;
        let lower = self.objective(&fmin.x) - fmin.gap_bound;
        let g = self.constraint_values(s);
        let slack = (-g[0]).min(-g[1]);
        Ok(((self.objective(s) - lower) / slack).max(f64::MIN_POSITIVE))
    }
}

/// Approximate minimizer of the Lagrangian at a fixed multiplier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InnerSolution {
    pub x: Vec<f64>,
    /// Certified bound on `L(x) - min_Q L`.
    pub gap_bound: f64,
    pub iterations: usize,
}

/// Minimizes `f + l1 g1 + l2 g2` over the box to value accuracy `delta_fn`,
/// starting from the box center.
pub fn inner_solve(p: &DualProblem, lam: [f64; 2], delta_fn: f64) -> Result<InnerSolution> {
    inner_solve_from(p, lam, delta_fn, p.box_center())
}

/// As [`inner_solve`] from a given start. Stops once `|G|^2 / (2 mu)`
/// bounds the gap, where `G` is the gradient mapping of the step taken.
pub fn inner_solve_from(
    p: &DualProblem,
    lam: [f64; 2],
    delta_fn: f64,
    start: Vec<f64>,
) -> Result<InnerSolution> {
    if !(delta_fn > 0.0) {
        return Err(Error::param("delta_fn", "must be positive"));
    }
    if !(lam[0] >= 0.0 && lam[1] >= 0.0 && lam[0].is_finite() && lam[1].is_finite()) {
        return Err(Error::param(
            "lambda",
            format!("must be non-negative, got {lam:?}"),
        ));
    }
    let l = p.lagrangian_smoothness(lam);
    let mut x = start;
    p.project(&mut x);
    let mut g = vec![0.0; p.dim()];
    let mut next = vec![0.0; p.dim()];
    let mut gap = f64::INFINITY;
    for k in 0..MAX_INNER_ITERATIONS {
        p.lagrangian_gradient(&x, lam, &mut g);
        for i in 0..x.len() {
            next[i] = x[i] - g[i] / l;
        }
        p.project(&mut next);
        let step2: f64 = x.iter().zip(&next).map(|(a, b)| (a - b) * (a - b)).sum();
        gap = l * l * step2 / (2.0 * p.mu);
        if !gap.is_finite() {
            return Err(Error::NonFinite {
                what: "lagrangian gradient",
                x1: lam[0],
                x2: lam[1],
            });
        }
        std::mem::swap(&mut x, &mut next);
        if gap <= delta_fn {
            return Ok(InnerSolution {
                x,
                gap_bound: gap,
                iterations: k + 1,
            });
        }
    }
    Err(Error::InnerSolveStalled {
        iterations: MAX_INNER_ITERATIONS,
        gap,
        target: delta_fn,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualEval {
    /// Lagrangian at the inner solution; within `delta_fn` above `phi`.
    pub value: f64,
    /// Constraint values at the inner solution.
    pub grad: [f64; 2],
    pub x: Vec<f64>,
}

pub fn dual_value_and_grad(p: &DualProblem, lam: [f64; 2], delta_fn: f64) -> Result<DualEval> {
    let s = inner_solve(p, lam, delta_fn)?;
    Ok(eval_at(p, lam, s.x))
}

fn eval_at(p: &DualProblem, lam: [f64; 2], x: Vec<f64>) -> DualEval {
    DualEval {
        value: p.lagrangian(&x, lam),
        grad: p.constraint_values(&x),
        x,
    }
}

/// `max(|l . g(x)|, g1(x), g2(x))`; the certificate holds iff this is at
/// most `eps`.
pub fn certificate_residual(p: &DualProblem, lam: [f64; 2], x: &[f64]) -> f64 {
    let g = p.constraint_values(x);
    (lam[0] * g[0] + lam[1] * g[1]).abs().max(g[0]).max(g[1])
}

pub fn certificate(p: &DualProblem, lam: [f64; 2], x: &[f64], eps: f64) -> bool {
    certificate_residual(p, lam, x) <= eps
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualDomain {
    /// `[0, A]^2`
    #[default]
    Square,
    /// `{l >= 0, l1 + l2 <= A}`
    Triangle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Candidate {
    lambda: [f64; 2],
    x: Vec<f64>,
    residual: f64,
}

struct State {
    warm: Vec<f64>,
    best: Option<Candidate>,
    certified: Option<Candidate>,
    solves: u64,
}

/// `-phi` as a two-dimensional objective. Every inner solve is checked
/// against the certificate; the first success requests a stop.
pub struct DualObjective<'p> {
    problem: &'p DualProblem,
    eps: f64,
    delta_fn: f64,
    grad_error: f64,
    state: RefCell<State>,
}

impl<'p> DualObjective<'p> {
    pub fn new(problem: &'p DualProblem, eps: f64, delta_fn: f64) -> Self {
        DualObjective {
            problem,
            eps,
            delta_fn,
            grad_error: problem.combined_lipschitz() * (2.0 * delta_fn / problem.mu).sqrt(),
            state: RefCell::new(State {
                warm: problem.box_center(),
                best: None,
                certified: None,
                solves: 0,
            }),
        }
    }

    fn eval(&self, lam: Point2<f64>) -> Result<DualEval> {
        let lam = [lam.x1.max(0.0), lam.x2.max(0.0)];
        let mut st = self.state.borrow_mut();
        let s = inner_solve_from(self.problem, lam, self.delta_fn, st.warm.clone())?;
        st.solves += 1;
        st.warm.clone_from(&s.x);
        let residual = certificate_residual(self.problem, lam, &s.x);
        if st.best.as_ref().is_none_or(|b| residual < b.residual) {
            st.best = Some(Candidate {
                lambda: lam,
                x: s.x.clone(),
                residual,
            });
        }
        if residual <= self.eps && st.certified.is_none() {
            st.certified = Some(Candidate {
                lambda: lam,
                x: s.x.clone(),
                residual,
            });
        }
        Ok(eval_at(self.problem, lam, s.x))
    }

    pub fn inner_solves(&self) -> u64 {
        self.state.borrow().solves
    }
}

impl Objective<f64> for DualObjective<'_> {
    fn value(&self, lam: Point2<f64>) -> Result<f64> {
        Ok(-self.eval(lam)?.value)
    }

    fn gradient(&self, lam: Point2<f64>) -> Result<Point2<f64>> {
        let e = self.eval(lam)?;
        Ok(Point2::new(-e.grad[0], -e.grad[1]))
    }

    fn lipschitz(&self) -> f64 {
        self.problem.dual_lipschitz()
    }

    fn grad_lipschitz(&self) -> Option<f64> {
        Some(self.problem.dual_grad_lipschitz())
    }

    fn direction_error(&self) -> f64 {
        self.grad_error
    }

    fn stop_requested(&self) -> bool {
        self.state.borrow().certified.is_some()
    }
}

/// Accuracy settings of a dual run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualPlan {
    pub dual_bound: f64,
    /// Accuracy handed to the two-dimensional solver.
    pub outer_eps: f64,
    pub delta_fn: f64,
    pub grad_error: f64,
}

/// Splits the accuracy budget evenly: `2 Delta` takes half, the line
/// searches the other half. `delta_fn` is the inner accuracy giving that
/// `Delta`, and never more than `eps`.
pub fn dual_plan(p: &DualProblem, eps: f64) -> Result<DualPlan> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::param("eps", "must be positive"));
    }
    let a = p.dual_bound()?;
    let l = p.dual_lipschitz();
    if !(l > 0.0) {
        return Err(malformed("constraints are identically zero on the box"));
    }
    let outer_eps = eps.min(0.5 * l * a * std::f64::consts::SQRT_2);
    let rhs = accuracy_budget(l, a, outer_eps)?;
    let m = p.combined_lipschitz();
    let (delta_fn, grad_error) = if m > 0.0 {
        let grad_error = rhs / 4.0;
        let d = 0.5 * p.mu * (grad_error / m).powi(2);
        (d.min(eps), m * (2.0 * d.min(eps) / p.mu).sqrt())
    } else {
        (eps, 0.0)
    };
    Ok(DualPlan {
        dual_bound: a,
        outer_eps,
        delta_fn,
        grad_error,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualSolution {
    pub x: Vec<f64>,
    pub lambda: [f64; 2],
    pub value: f64,
    pub constraint_values: [f64; 2],
    pub certified: bool,
    pub residual: f64,
    pub plan: DualPlan,
    pub inner_solves: u64,
    /// Absent when the certificate already holds at `l = 0`.
    pub trace: Option<RunTrace<f64>>,
}

/// Maximizes the dual over `[0, A]^2` or the triangle `l1 + l2 <= A`.
/// Returns the first certified inner solution, or, when the budget runs
/// out first, the one with the smallest residual (`certified = false`).
pub fn dual_solve(p: &DualProblem, eps: f64, domain: DualDomain) -> Result<DualSolution> {
    let plan = dual_plan(p, eps)?;
    let finish = |c: Candidate, solves: u64, trace: Option<RunTrace<f64>>| {
        let g = p.constraint_values(&c.x);
        DualSolution {
            value: p.objective(&c.x),
            constraint_values: g,
            certified: c.residual <= eps,
            residual: c.residual,
            lambda: c.lambda,
            x: c.x,
            plan,
            inner_solves: solves,
            trace,
        }
    };
    let zero = inner_solve(p, [0.0, 0.0], plan.delta_fn)?;
    let residual = certificate_residual(p, [0.0, 0.0], &zero.x);
    if residual <= eps {
        let c = Candidate {
            lambda: [0.0, 0.0],
            x: zero.x,
            residual,
        };
        return Ok(finish(c, 1, None));
    }

    let obj = DualObjective::new(p, eps, plan.delta_fn);
    let a = plan.dual_bound;
    let opts = HalvingOptions::default();
    let sol = match domain {
        DualDomain::Square => {
            let sq = AxisBox::square(Point2::new(0.5 * a, 0.5 * a), 0.5 * a)?;
            solve(&obj, &sq, plan.outer_eps, &opts)?
        }
        DualDomain::Triangle => {
            let t = RightTriangle::new(Point2::new(0.0, 0.0), a, Orientation::PosPos)?;
            solve_triangle(&obj, &t, plan.outer_eps, &opts)?
        }
    };
    let solves = obj.inner_solves();
    let st = obj.state.into_inner();
    let c = st
        .certified
        .or(st.best)
        .ok_or_else(|| malformed("no inner solution was computed"))?;
    Ok(finish(c, solves + 1, Some(sol.trace)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(index: usize, coef: f64, center: f64) -> Term {
        Term::Quadratic {
            index,
            coef,
            center,
        }
    }

    fn lin(index: usize, coef: f64) -> Term {
        Term::Linear { index, coef }
    }

    fn cst(value: f64) -> Term {
        Term::Constant { value }
    }

    fn toy(c: [f64; 2]) -> DualProblem {
        DualProblem::new(ProblemSpec {
            dim: 2,
            lower: vec![-1.0, -1.0],
            upper: vec![1.0, 1.0],
            objective: Expr::new(vec![quad(0, 1.0, c[0]), quad(1, 1.0, c[1])]),
            constraints: [
                Expr::new(vec![lin(0, 1.0), cst(-0.2)]),
                Expr::new(vec![lin(0, 1.0), lin(1, 1.0), cst(-0.5)]),
            ],
            mu: Some(2.0),
            constraint_lipschitz: None,
            slater_point: Some(vec![0.0, 0.0]),
            dual_bound: None,
        })
        .unwrap()
    }

    fn sq_norm_problem() -> DualProblem {
        DualProblem::new(ProblemSpec {
            dim: 2,
            lower: vec![-2.0, -2.0],
            upper: vec![2.0, 2.0],
            objective: Expr::new(vec![quad(0, 1.0, 0.0), quad(1, 1.0, 0.0)]),
            constraints: [
                Expr::new(vec![lin(0, 1.0), cst(-1.0)]),
                Expr::new(vec![lin(1, 1.0), cst(-1.0)]),
            ],
            mu: None,
            constraint_lipschitz: None,
            slater_point: None,
            dual_bound: Some(4.0),
        })
        .unwrap()
    }

    #[test]
    fn inner_solve_examples() {
        let p = sq_norm_problem();
        assert_eq!(p.mu(), 2.0);
        let s = inner_solve(&p, [0.0, 0.0], 1e-12).unwrap();
        assert_eq!(s.x, vec![0.0, 0.0]);
        let s = inner_solve(&p, [2.0, 0.0], 1e-12).unwrap();
        assert_eq!(s.x, vec![-1.0, 0.0]);
    }

    #[test]
    fn derived_constants() {
        let p = toy([1.0, 1.0]);
        assert_eq!(p.constraint_lipschitz(), [1.0, 2f64.sqrt()]);
        assert!((p.dual_grad_lipschitz() - 1.5).abs() < 1e-15);
        // |g1| <= 1.2, |g2| <= 2.5 on the box
        assert!((p.dual_lipschitz() - 1.2f64.hypot(2.5)).abs() < 1e-15);
        assert!((p.dual_bound().unwrap() - 10.0).abs() < 1e-8);
    }

    #[test]
    fn certificate_examples() {
        let p = toy([1.0, 1.0]);
        assert!(certificate(&p, [0.0, 0.0], &[0.0, 0.0], 1e-3));
        assert!(certificate(&p, [0.2, 1.4], &[0.2, 0.3], 1e-3));
        // feasible but far from complementary
        assert!(!certificate(&p, [50.0, 50.0], &[-1.0, -1.0], 1e-3));
        // complementary but infeasible
        assert!(!certificate(&p, [0.0, 0.0], &[1.0, 1.0], 1e-3));
    }

    #[test]
    fn kkt_point_of_toy() {
        let p = toy([1.0, 1.0]);
        let e = dual_value_and_grad(&p, [0.2, 1.4], 1e-14).unwrap();
        assert!((e.x[0] - 0.2).abs() < 1e-6 && (e.x[1] - 0.3).abs() < 1e-6);
        assert!(e.grad[0].abs() < 1e-6 && e.grad[1].abs() < 1e-6);
        assert!((e.value - 1.13).abs() < 1e-9);
    }

    #[test]
    fn toy_solves_on_both_domains() {
        let p = toy([1.0, 1.0]);
        let eps = 1e-3;
        let mut values = Vec::new();
        for d in [DualDomain::Square, DualDomain::Triangle] {
            let s = dual_solve(&p, eps, d).unwrap();
            assert!(s.certified, "{d:?}");
            assert!(
                s.value - 1.13 <= eps + s.plan.delta_fn,
                "{d:?}: {}",
                s.value
            );
            assert!(s.constraint_values.iter().all(|g| *g <= eps));
            values.push(s.value);
        }
        assert!((values[0] - values[1]).abs() <= 2.0 * eps);
    }

    #[test]
    fn inactive_constraints_certify_at_zero() {
        let p = toy([-0.5, -0.5]);
        let s = dual_solve(&p, 1e-3, DualDomain::Square).unwrap();
        assert!(s.certified);
        assert_eq!(s.lambda, [0.0, 0.0]);
        assert!(s.trace.is_none());
        assert!((s.value).abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_problems() {
        let mut spec = toy([1.0, 1.0]).spec().clone();
        spec.mu = Some(3.0);
        assert!(DualProblem::new(spec.clone()).is_err());
        spec.mu = Some(2.0);
        spec.slater_point = Some(vec![0.5, 0.5]);
        assert!(DualProblem::new(spec.clone()).is_err());
        spec.slater_point = None;
        spec.constraint_lipschitz = Some([0.5, 2.0]);
        assert!(DualProblem::new(spec.clone()).is_err());
        spec.constraint_lipschitz = None;
        spec.lower = vec![1.0, -1.0];
        assert!(DualProblem::new(spec).is_err());
        assert!(DualProblem::from_json("{\"dim\": 2}").is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = toy([1.0, 1.0]);
        let text = serde_json::to_string(p.spec()).unwrap();
        let q = DualProblem::from_json(&text).unwrap();
        assert_eq!(p, q);
    }
}
