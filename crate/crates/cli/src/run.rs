use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use clap::ValueEnum;
use halving::baselines::{
    ellipsoid_solve, gradient_descent_solve, EllipsoidOptions, GradientOptions,
};
use halving::halving::{accuracy_budget, RegionRecord};
use halving::oracle::corpus::{self, CorpusEntry, SharedObjective};
use halving::triangle::solve_triangle;
use halving::{
    solve, AxisBox, HalvingOptions, NoiseMode, Objective, Orientation, PerturbedOracle, Point2,
    RightTriangle, Solution, Trapezoid,
};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Halving,
    Triangle,
    Ellipsoid,
    Gd,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Halving,
        Method::Triangle,
        Method::Ellipsoid,
        Method::Gd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Halving => "halving",
            Method::Triangle => "triangle",
            Method::Ellipsoid => "ellipsoid",
            Method::Gd => "gd",
        }
    }

    /// Gradient descent needs a gradient Lipschitz constant.
    pub fn applies_to(self, e: &CorpusEntry<f64>) -> bool {
        self != Method::Gd || e.oracle.grad_lipschitz().is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Noise {
    Random,
    Adversarial,
}

/// Everything a single corpus run needs besides the method and function.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub eps: f64,
    pub delta: Option<f64>,
    pub grad_error: Option<f64>,
    pub noise: Noise,
    pub seed: u64,
    pub iterations: Option<u32>,
    pub early_stop: bool,
    pub known_minimum: bool,
}

pub fn lookup(id: &str) -> Result<CorpusEntry<f64>> {
    corpus::lookup(id).ok_or_else(|| {
        anyhow!(
            "unknown function id `{id}` (known: {})",
            corpus::IDS.join(", ")
        )
    })
}

pub struct Run {
    pub method: Method,
    pub function: String,
    pub eps: f64,
    pub minimum: f64,
    pub solution: Solution<f64>,
    /// Best value found on a grid over the final region, or at the returned
    /// point if that is lower.
    pub region_best: f64,
    pub wall_ms: f64,
}

impl Run {
    pub fn final_gap(&self) -> f64 {
        self.solution.value - self.minimum
    }

    /// The final region holds nothing within `eps` of the minimum.
    pub fn diverged(&self) -> bool {
        self.region_best - self.minimum > self.eps
    }
}

fn oracle(e: &CorpusEntry<f64>, s: &Settings) -> Result<SharedObjective<f64>> {
    Ok(match s.grad_error {
        Some(cap) => {
            let mode = match s.noise {
                Noise::Random => NoiseMode::Random { seed: s.seed },
                Noise::Adversarial => NoiseMode::Adversarial,
            };
            Arc::new(PerturbedOracle::new(e.oracle.clone(), cap, mode)?)
        }
        None => e.oracle.clone(),
    })
}

/// Half of the square with its right angle at the corner nearest the
/// minimizer in the l1 sense, so the triangle shares the square's minimum.
pub fn corner_triangle(e: &CorpusEntry<f64>) -> Result<RightTriangle<f64>> {
    let (lo, hi, m) = (e.domain.lo(), e.domain.hi(), e.minimizer);
    let left = (m.x1 - lo.x1) <= (hi.x1 - m.x1);
    let low = (m.x2 - lo.x2) <= (hi.x2 - m.x2);
    let (corner, orientation) = match (left, low) {
        (true, true) => (lo, Orientation::PosPos),
        (false, true) => (Point2::new(hi.x1, lo.x2), Orientation::NegPos),
        (true, false) => (Point2::new(lo.x1, hi.x2), Orientation::PosNeg),
        (false, false) => (hi, Orientation::NegNeg),
    };
    Ok(RightTriangle::new(corner, e.domain.width(), orientation)?)
}

pub fn run(e: &CorpusEntry<f64>, method: Method, s: &Settings) -> Result<Run> {
    if !method.applies_to(e) {
        bail!(
            "{} needs a smooth objective; `{}` is not",
            method.name(),
            e.id
        );
    }
    // rejects eps >= L R sqrt 2 the same way for every method
    accuracy_budget(e.oracle.lipschitz(), e.domain.width(), s.eps)?;
    let o = oracle(e, s)?;
    let known = s.known_minimum.then_some(e.minimum);
    let halving_opts = HalvingOptions {
        delta: s.delta,
        iterations: s.iterations,
        small_gradient_stop: s.early_stop,
        ..Default::default()
    };
    let start = Instant::now();
    let solution = match method {
        Method::Halving => solve(&o, &e.domain, s.eps, &halving_opts)?,
        Method::Triangle => solve_triangle(&o, &corner_triangle(e)?, s.eps, &halving_opts)?,
        Method::Ellipsoid => {
            let opts = EllipsoidOptions {
                known_minimum: known,
                max_cuts: s.iterations,
            };
            ellipsoid_solve(&o, &e.domain, s.eps, &opts)?
        }
        Method::Gd => {
            let mut opts = GradientOptions {
                known_minimum: known,
                ..Default::default()
            };
            if let Some(n) = s.iterations {
                opts.max_iter = n.into();
            }
            gradient_descent_solve(&o, &e.domain, s.eps, &opts)?
        }
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let region_best =
        region_best(e.oracle.as_ref(), &solution.trace.final_region)?.min(solution.value);
    Ok(Run {
        method,
        function: e.id.to_string(),
        eps: s.eps,
        minimum: e.minimum,
        solution,
        region_best,
        wall_ms,
    })
}

const GRID: usize = 201;

type Membership = Box<dyn Fn(Point2<f64>) -> bool>;

/// Grid minimum of `f` over a box, triangle or trapezoid region; `inf` for
/// shapes without a grid (ellipses and points).
pub fn region_best(f: &(dyn Objective<f64> + Send + Sync), r: &RegionRecord<f64>) -> Result<f64> {
    let (bounds, inside): (AxisBox<f64>, Membership) = match *r {
        RegionRecord::Box {
            center,
            half_width,
            half_height,
        } => {
            let b = AxisBox::new(center, half_width, half_height)?;
            (b, Box::new(|_| true))
        }
        RegionRecord::Triangle {
            right_angle_vertex,
            leg,
            orientation,
        } => {
            let t = RightTriangle::new(right_angle_vertex, leg, orientation)?;
            (t.bounding_square(), Box::new(move |p| t.contains(p)))
        }
        RegionRecord::Trapezoid {
            right_angle_vertex,
            leg,
            orientation,
        } => {
            let z = Trapezoid {
                parent: RightTriangle::new(right_angle_vertex, leg, orientation)?,
            };
            (z.parent.bounding_square(), Box::new(move |p| z.contains(p)))
        }
        RegionRecord::Ellipse { .. } | RegionRecord::Point { .. } => return Ok(f64::INFINITY),
    };
    let (lo, hi) = (bounds.lo(), bounds.hi());
    let step = |a: f64, b: f64, i: usize| a + (b - a) * i as f64 / (GRID - 1) as f64;
    let mut best = f64::INFINITY;
    for i in 0..GRID {
        for j in 0..GRID {
            let p = Point2::new(step(lo.x1, hi.x1, i), step(lo.x2, hi.x2, j));
            if inside(p) {
                best = best.min(f.value(p)?);
            }
        }
    }
    Ok(best)
}

/// A point standing for a logged region, used for gap-vs-iteration curves.
pub fn representative(r: &RegionRecord<f64>) -> Point2<f64> {
    match *r {
        RegionRecord::Box { center, .. } | RegionRecord::Ellipse { center, .. } => center,
        RegionRecord::Triangle {
            right_angle_vertex,
            leg,
            orientation,
        }
        | RegionRecord::Trapezoid {
            right_angle_vertex,
            leg,
            orientation,
        } => {
            let (s1, s2) = orientation.signs::<f64>();
            let third = leg / 3.0;
            Point2::new(
                right_angle_vertex.x1 + s1 * third,
                right_angle_vertex.x2 + s2 * third,
            )
        }
        RegionRecord::Point { at } => at,
    }
}
