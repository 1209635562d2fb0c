//! Domain types shared by every module: orders, right-hand sides, problem
//! specifications, grids and trajectories.
//!
//! All types here are immutable after construction and cheap to clone
//! (closures are behind `Arc`), so they can be shared freely across the
//! study runners' worker threads.

use crate::error::{Error, Result};
use std::sync::Arc;

/// The pair (alpha, lambda) parameterizing the tempered Caputo derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemperedOrder {
    pub alpha: f64,
    pub lambda: f64,
}

impl TemperedOrder {
    /// Requires 0 < alpha < 1 and lambda >= 0.
    pub fn new(alpha: f64, lambda: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "alpha must lie in (0, 1), got {alpha}"
            )));
        }
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "lambda must be finite and nonnegative, got {lambda}"
            )));
        }
        Ok(Self { alpha, lambda })
    }
}

type EvalFn = dyn Fn(f64, f64) -> f64 + Send + Sync;
type SolutionFn = dyn Fn(f64) -> f64 + Send + Sync;

/// The right-hand side f(t, y), with optional metadata used by the analysis
/// and experiment modules: a Lipschitz estimate in y, the exact solution when
/// one is known, and a sup-norm estimate on the working rectangle.
#[derive(Clone)]
pub struct RhsFunction {
    eval: Arc<EvalFn>,
    pub lipschitz_estimate: Option<f64>,
    pub sup_estimate: Option<f64>,
    exact_solution: Option<Arc<SolutionFn>>,
}

impl RhsFunction {
    pub fn new(eval: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(eval),
            lipschitz_estimate: None,
            sup_estimate: None,
            exact_solution: None,
        }
    }

    pub fn with_lipschitz(mut self, l: f64) -> Self {
        self.lipschitz_estimate = Some(l);
        self
    }

    pub fn with_sup(mut self, s: f64) -> Self {
        self.sup_estimate = Some(s);
        self
    }

    pub fn with_exact_solution(
        mut self,
        exact: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.exact_solution = Some(Arc::new(exact));
        self
    }

    #[inline]
    pub fn eval(&self, t: f64, y: f64) -> f64 {
        (self.eval)(t, y)
    }

    pub fn exact(&self, t: f64) -> Option<f64> {
        self.exact_solution.as_ref().map(|f| f(t))
    }

    pub fn has_exact_solution(&self) -> bool {
        self.exact_solution.is_some()
    }
}

impl std::fmt::Debug for RhsFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RhsFunction")
            .field("lipschitz_estimate", &self.lipschitz_estimate)
            .field("sup_estimate", &self.sup_estimate)
            .field("has_exact_solution", &self.exact_solution.is_some())
            .finish()
    }
}

/// Initial value problem: D^{alpha,lambda} y = f(t, y), y(0) = y0, on [0, horizon].
#[derive(Debug, Clone)]
pub struct IvpSpec {
    pub order: TemperedOrder,
    pub f: RhsFunction,
    pub y0: f64,
    pub horizon: f64,
}

impl IvpSpec {
    pub fn new(order: TemperedOrder, f: RhsFunction, y0: f64, horizon: f64) -> Result<Self> {
        if !(horizon > 0.0) || !horizon.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "horizon must be positive and finite, got {horizon}"
            )));
        }
        if !y0.is_finite() {
            return Err(Error::InvalidArgument(format!("y0 must be finite, got {y0}")));
        }
        Ok(Self { order, f, y0, horizon })
    }
}

/// Terminal value problem: D^{alpha,lambda} y = f(t, y) with the weighted
/// terminal condition e^{lambda a} y(a) = ya, continued to `horizon >= a`.
#[derive(Debug, Clone)]
pub struct TvpSpec {
    pub order: TemperedOrder,
    pub f: RhsFunction,
    /// Terminal time a > 0 where the side condition is imposed.
    pub a: f64,
    /// The weighted terminal value, ya = e^{lambda a} y(a).
    pub ya: f64,
    pub horizon: f64,
}

impl TvpSpec {
    pub fn new(order: TemperedOrder, f: RhsFunction, a: f64, ya: f64, horizon: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "terminal time a must be positive, got {a}"
            )));
        }
        if !(horizon >= a) || !horizon.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "horizon must satisfy horizon >= a, got horizon {horizon} with a {a}"
            )));
        }
        if !ya.is_finite() {
            return Err(Error::InvalidArgument(format!("ya must be finite, got {ya}")));
        }
        Ok(Self { order, f, a, ya, horizon })
    }

    /// The unweighted terminal value y(a) = e^{-lambda a} ya.
    pub fn terminal_value(&self) -> f64 {
        (-self.order.lambda * self.a).exp() * self.ya
    }

    /// Number of steps on [0, horizon] when [0, a] carries `n` steps.
    ///
    /// Both a and horizon must be grid nodes of the common step h = a/n;
    /// combinations where horizon/h is not an integer are rejected.
    pub fn continuation_steps(&self, n: usize) -> Result<usize> {
        let ratio = self.horizon / self.a * n as f64;
        let rounded = ratio.round();
        if (ratio - rounded).abs() > 1e-9 * ratio.max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "horizon {} is not a node of the grid with h = a/{} = {}",
                self.horizon,
                n,
                self.a / n as f64
            )));
        }
        Ok(rounded as usize)
    }
}

/// Uniform grid t_i = i h, i = 0..=count, with t_count = t_end.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformGrid {
    pub step: f64,
    pub count: usize,
}

/// Builds the uniform grid with h = t_end / n.
pub fn build_grid(t_end: f64, n: usize) -> Result<UniformGrid> {
    if !(t_end > 0.0) || !t_end.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "t_end must be positive and finite, got {t_end}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(UniformGrid {
        step: t_end / n as f64,
        count: n,
    })
}

impl UniformGrid {
    #[inline]
    pub fn node(&self, i: usize) -> f64 {
        self.step * i as f64
    }

    pub fn t_end(&self) -> f64 {
        self.node(self.count)
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.count).map(|i| self.node(i))
    }
}

/// A uniform grid together with the solution values at its nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub grid: UniformGrid,
    pub values: Vec<f64>,
}

impl Trajectory {
    pub fn new(grid: UniformGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.count + 1 {
            return Err(Error::InvalidArgument(format!(
                "trajectory needs {} values, got {}",
                grid.count + 1,
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite trajectory value at node {i}"
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn last(&self) -> f64 {
        *self.values.last().unwrap()
    }
}

/// Piecewise-linear read-out: exact at nodes, chord interpolation between them.
pub fn trajectory_value_at(traj: &Trajectory, t: f64) -> Result<f64> {
    let h = traj.grid.step;
    let t_end = traj.grid.t_end();
    if t < 0.0 || t > t_end * (1.0 + 4.0 * f64::EPSILON) {
        return Err(Error::OutOfRange(format!(
            "t = {t} outside the grid range [0, {t_end}]"
        )));
    }
    let i = ((t / h).floor() as usize).min(traj.grid.count - 1);
    let ti = traj.grid.node(i);
    if t == ti {
        return Ok(traj.values[i]);
    }
    if t == traj.grid.node(i + 1) {
        return Ok(traj.values[i + 1]);
    }
    let theta = (t - ti) / h;
    Ok(traj.values[i] + theta * (traj.values[i + 1] - traj.values[i]))
}
