//! The tempered <-> plain-Caputo conjugation, the tempered Riemann-Liouville
//! integral, the L1 derivative discretization, and the Volterra residual that
//! serves as the independent correctness oracle for every solver.
//!
//! The conjugation: with u(s) = e^{lambda s} y(s) and
//! g(s, u) = e^{lambda s} f(s, e^{-lambda s} u), the tempered problem
//! D^{alpha,lambda} y = f(t, y) becomes the plain Caputo problem
//! D^alpha u = g(t, u) with u(0) = y(0), and y(t) = e^{-lambda t} u(t).
//!
//! The tempered integral
//! I^{alpha,lambda}(phi)(t) = (1/Gamma(alpha)) int_0^t e^{-lambda(t-s)} (t-s)^{alpha-1} phi(s) ds
//! is discretized by a product-trapezoidal rule: the exponentially weighted
//! data e^{-lambda(t_k - s)} phi(s) is interpolated linearly from its panel
//! endpoint values and (t_k - s)^{alpha-1} is integrated exactly against that
//! interpolant, so the rule has closed-form weights, is exact for constant
//! weighted data, and degenerates to the standard product trapezoid at
//! lambda = 0.

use crate::core::{IvpSpec, TemperedOrder, Trajectory};
use crate::error::{Error, Result};
use crate::special::gamma;
use std::sync::Arc;

/// Plain Caputo initial value problem D^alpha u = g(t, u), u(0) = u0.
#[derive(Clone)]
pub struct CaputoIvpSpec {
    pub alpha: f64,
    pub g: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    pub u0: f64,
    pub horizon: f64,
}

impl std::fmt::Debug for CaputoIvpSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CaputoIvpSpec")
            .field("alpha", &self.alpha)
            .field("u0", &self.u0)
            .field("horizon", &self.horizon)
            .finish()
    }
}

/// Conjugates a tempered IVP into plain Caputo form:
/// g(s, u) = e^{lambda s} f(s, e^{-lambda s} u), u0 = y0.
pub fn to_caputo(spec: &IvpSpec) -> CaputoIvpSpec {
    let lambda = spec.order.lambda;
    let f = spec.f.clone();
    CaputoIvpSpec {
        alpha: spec.order.alpha,
        g: Arc::new(move |s, u| (lambda * s).exp() * f.eval(s, (-lambda * s).exp() * u)),
        u0: spec.y0,
        horizon: spec.horizon,
    }
}

/// Maps a trajectory of the transformed variable back: y_i = e^{-lambda t_i} u_i.
pub fn from_caputo(u_traj: &Trajectory, lambda: f64) -> Trajectory {
    let values = u_traj
        .values
        .iter()
        .enumerate()
        .map(|(i, &u)| (-lambda * u_traj.grid.node(i)).exp() * u)
        .collect();
    Trajectory {
        grid: u_traj.grid.clone(),
        values,
    }
}

/// Product-trapezoid weights for int_{t_j}^{t_{j+1}} (t_k - s)^{alpha-1} * linear ds
/// on a unit-spaced grid, with m = k - j panels between s and t_k:
/// weight of the left endpoint is h^alpha * A_m, of the right h^alpha * B_m.
fn panel_weights(alpha: f64, m: usize) -> (f64, f64) {
    let m = m as f64;
    let total = (m.powf(alpha) - (m - 1.0).powf(alpha)) / alpha;
    let b = ((m.powf(alpha + 1.0) - (m - 1.0).powf(alpha + 1.0)) / (alpha + 1.0)
        - (m - 1.0).powf(alpha))
        / alpha;
    (total - b, b)
}

/// Tempered Riemann-Liouville integral of the sampled data at node `t_index`.
pub fn tempered_integral(
    samples: &Trajectory,
    order: &TemperedOrder,
    t_index: usize,
) -> Result<f64> {
    let k = t_index;
    if k > samples.grid.count {
        return Err(Error::OutOfRange(format!(
            "t_index {k} exceeds grid count {}",
            samples.grid.count
        )));
    }
    if k == 0 {
        return Ok(0.0);
    }
    let h = samples.grid.step;
    let (alpha, lambda) = (order.alpha, order.lambda);
    let mut acc = 0.0;
    for j in 0..k {
        let m = k - j;
        let (a_w, b_w) = panel_weights(alpha, m);
        let psi_left = (-lambda * (m as f64) * h).exp() * samples.values[j];
        let psi_right = (-lambda * ((m - 1) as f64) * h).exp() * samples.values[j + 1];
        acc += psi_left * a_w + psi_right * b_w;
    }
    Ok(h.powf(alpha) * acc / gamma(alpha))
}

/// L1 discretization of the tempered Caputo derivative at node `t_index`:
/// e^{-lambda t_k} times the L1 backward difference applied to u_i = e^{lambda t_i} y_i.
pub fn tempered_derivative_l1(
    y_traj: &Trajectory,
    order: &TemperedOrder,
    t_index: usize,
) -> Result<f64> {
    let k = t_index;
    if k == 0 {
        return Err(Error::OutOfRange(
            "L1 derivative needs at least one step of history (t_index >= 1)".into(),
        ));
    }
    if k > y_traj.grid.count {
        return Err(Error::OutOfRange(format!(
            "t_index {k} exceeds grid count {}",
            y_traj.grid.count
        )));
    }
    let h = y_traj.grid.step;
    let (alpha, lambda) = (order.alpha, order.lambda);
    let u = |i: usize| (lambda * y_traj.grid.node(i)).exp() * y_traj.values[i];
    let mut acc = 0.0;
    for j in 0..k {
        let m = (k - 1 - j) as f64;
        let b = (m + 1.0).powf(1.0 - alpha) - m.powf(1.0 - alpha);
        acc += b * (u(j + 1) - u(j));
    }
    Ok((-lambda * y_traj.grid.node(k)).exp() * acc * h.powf(-alpha) / gamma(2.0 - alpha))
}

/// Maximum over nodes of |y_k - y0 e^{-lambda t_k} - I^{alpha,lambda}(f(., y(.)))(t_k)|.
///
/// This is the discrete form of the Volterra equation every solution must
/// satisfy; it stays independent of any particular time stepper and is used
/// to cross-check all three of them.
pub fn volterra_residual(y_traj: &Trajectory, spec: &IvpSpec) -> Result<f64> {
    let n = y_traj.grid.count;
    let fv: Vec<f64> = (0..=n)
        .map(|i| spec.f.eval(y_traj.grid.node(i), y_traj.values[i]))
        .collect();
    let f_traj = Trajectory {
        grid: y_traj.grid.clone(),
        values: fv,
    };
    let lambda = spec.order.lambda;
    let mut worst: f64 = 0.0;
    for k in 0..=n {
        let integral = tempered_integral(&f_traj, &spec.order, k)?;
        let r = y_traj.values[k] - spec.y0 * (-lambda * y_traj.grid.node(k)).exp() - integral;
        worst = worst.max(r.abs());
    }
    Ok(worst)
}
