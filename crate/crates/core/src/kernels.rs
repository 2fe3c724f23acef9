//! Connection kernels f on [0,1] and their ratio form r(x) = f(x)/x.
//!
//! Every pair of vertices with weights h_i, h_j is connected independently
//! with probability f(h_i h_j / h_s²). Three classical kernels are built in;
//! arbitrary kernels can be supplied as a table with a declared r(1).

use crate::error::{Error, Result};

const DOMAIN_TOL: f64 = 1e-12;

/// A connection kernel: a map from u ∈ [0,1] to a probability.
#[derive(Debug, Clone, PartialEq)]
pub enum Kernel {
    /// f(u) = min(u, 1)
    ChungLu,
    /// f(u) = 1 − e^{−u}
    PoissonRG,
    /// f(u) = u / (1 + u)
    GeneralizedRG,
    /// Tabulated kernel: sorted (u, f(u)) points on [0,1] plus a declared
    /// value of r at 1. Evaluation is piecewise linear between table points.
    Custom { table: Vec<(f64, f64)>, r1: f64 },
}

impl Kernel {
    /// Parse a CLI/config kernel name.
    pub fn from_name(name: &str) -> Option<Kernel> {
        match name {
            "chung-lu" | "chunglu" => Some(Kernel::ChungLu),
            "poisson" => Some(Kernel::PoissonRG),
            "generalized" => Some(Kernel::GeneralizedRG),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Kernel::ChungLu => "chung-lu",
            Kernel::PoissonRG => "poisson",
            Kernel::GeneralizedRG => "generalized",
            Kernel::Custom { .. } => "custom",
        }
    }

    /// r(1) = f(1), the dense-core connection probability.
    pub fn r1(&self) -> f64 {
        match self {
            Kernel::ChungLu => 1.0,
            Kernel::PoissonRG => 1.0 - (-1.0f64).exp(),
            Kernel::GeneralizedRG => 0.5,
            Kernel::Custom { r1, .. } => *r1,
        }
    }

    fn eval_unchecked(&self, u: f64) -> f64 {
        match self {
            Kernel::ChungLu => u.min(1.0),
            Kernel::PoissonRG => -(-u).exp_m1(),
            Kernel::GeneralizedRG => u / (1.0 + u),
            Kernel::Custom { table, .. } => interp_linear(table, u),
        }
    }
}

fn interp_linear(table: &[(f64, f64)], u: f64) -> f64 {
    if table.is_empty() {
        return 0.0;
    }
    if u <= table[0].0 {
        // extend linearly through the origin below the first point
        let (x0, y0) = table[0];
        if x0 <= 0.0 {
            return y0;
        }
        return y0 * (u / x0);
    }
    if u >= table[table.len() - 1].0 {
        return table[table.len() - 1].1;
    }
    let idx = table.partition_point(|&(x, _)| x <= u);
    let (x0, y0) = table[idx - 1];
    let (x1, y1) = table[idx];
    if x1 == x0 {
        return y0;
    }
    y0 + (y1 - y0) * (u - x0) / (x1 - x0)
}

/// Evaluate f(u). Errors if u is outside [0,1] by more than 1e-12;
/// values within the tolerance are clamped into the domain.
pub fn eval_f(kernel: &Kernel, u: f64) -> Result<f64> {
    if !(-DOMAIN_TOL..=1.0 + DOMAIN_TOL).contains(&u) || u.is_nan() {
        return Err(Error::Domain { value: u });
    }
    Ok(kernel.eval_unchecked(u.clamp(0.0, 1.0)))
}

/// Evaluate r(u) = f(u)/u, with r(0) = 1.
pub fn eval_r(kernel: &Kernel, u: f64) -> Result<f64> {
    if !(-DOMAIN_TOL..=1.0 + DOMAIN_TOL).contains(&u) || u.is_nan() {
        return Err(Error::Domain { value: u });
    }
    let u = u.clamp(0.0, 1.0);
    if u == 0.0 {
        return Ok(1.0);
    }
    Ok(kernel.eval_unchecked(u) / u)
}

/// Report for the shape checks on f (nonnegative, non-decreasing, convex).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Assumption1Report {
    pub nonnegative: bool,
    pub nondecreasing: bool,
    pub convex: bool,
    /// Most negative signed slack seen across all three checks (0 when clean).
    pub worst_violation: f64,
}

/// Report for the ratio-form checks on r (r(0)=1, r non-increasing).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Assumption2Report {
    pub r0_is_one: bool,
    pub r_nonincreasing: bool,
    pub worst_violation: f64,
}

/// Probe f on a uniform grid over [0,1]: f ≥ 0, forward differences ≥ −tol,
/// second differences ≥ −tol, with tol = 1e-9 · grid spacing.
pub fn check_assumption1(kernel: &Kernel, grid_size: usize) -> Assumption1Report {
    assert!(grid_size >= 3, "grid_size must be at least 3");
    let delta = 1.0 / (grid_size - 1) as f64;
    let tol = 1e-9 * delta;
    let values: Vec<f64> = (0..grid_size)
        .map(|i| kernel.eval_unchecked((i as f64 * delta).min(1.0)))
        .collect();

    let mut worst = 0.0f64;
    let mut nonnegative = true;
    let mut nondecreasing = true;
    let mut convex = true;

    for &v in &values {
        if v < -tol {
            nonnegative = false;
        }
        worst = worst.min(v);
    }
    for w in values.windows(2) {
        let diff = w[1] - w[0];
        if diff < -tol {
            nondecreasing = false;
        }
        worst = worst.min(diff);
    }
    for w in values.windows(3) {
        let second = w[2] - 2.0 * w[1] + w[0];
        if second < -tol {
            convex = false;
        }
        worst = worst.min(second);
    }

    Assumption1Report {
        nonnegative,
        nondecreasing,
        convex,
        worst_violation: worst.min(0.0),
    }
}

/// Probe r on a geometric grid spanning [1e-9, 1]: the smallest grid point
/// stands in for the u → 0 limit (checked against 1 within 1e-6), and r must
/// be non-increasing along the grid within 1e-9.
pub fn check_assumption2(kernel: &Kernel, grid_size: usize) -> Assumption2Report {
    assert!(grid_size >= 3, "grid_size must be at least 3");
    let lo = 1e-9f64;
    let ratio = (1.0 / lo).powf(1.0 / (grid_size - 1) as f64);
    let values: Vec<f64> = (0..grid_size)
        .map(|i| {
            let u = (lo * ratio.powi(i as i32)).min(1.0);
            kernel.eval_unchecked(u) / u
        })
        .collect();

    let r0_err = values[0] - 1.0;
    let r0_is_one = r0_err.abs() <= 1e-6;
    let mut worst = if r0_is_one { 0.0 } else { -r0_err.abs() };
    let mut r_nonincreasing = true;
    for w in values.windows(2) {
        let drop = w[0] - w[1]; // should be >= 0
        if drop < -1e-9 {
            r_nonincreasing = false;
        }
        worst = worst.min(drop);
    }

    Assumption2Report {
        r0_is_one,
        r_nonincreasing,
        worst_violation: worst.min(0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_kernel_values() {
        assert_eq!(eval_f(&Kernel::ChungLu, 1.0).unwrap(), 1.0);
        assert_eq!(eval_f(&Kernel::PoissonRG, 0.0).unwrap(), 0.0);
        assert_eq!(eval_f(&Kernel::GeneralizedRG, 1.0).unwrap(), 0.5);
    }

    #[test]
    fn ratio_values() {
        assert_eq!(eval_r(&Kernel::ChungLu, 0.5).unwrap(), 1.0);
        assert_eq!(eval_r(&Kernel::GeneralizedRG, 1.0).unwrap(), 0.5);
        let r = eval_r(&Kernel::PoissonRG, 1.0).unwrap();
        assert!((r - 0.6321205588285577).abs() < 1e-12);
        assert_eq!(eval_r(&Kernel::PoissonRG, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn domain_guard() {
        assert!(eval_f(&Kernel::ChungLu, -1e-3).is_err());
        assert!(eval_f(&Kernel::ChungLu, 1.0 + 1e-3).is_err());
        // within tolerance: clamped, not an error
        assert_eq!(eval_f(&Kernel::ChungLu, 1.0 + 1e-13).unwrap(), 1.0);
    }

    #[test]
    fn assumption1_chung_lu_is_convex() {
        let rep = check_assumption1(&Kernel::ChungLu, 1001);
        assert!(rep.nonnegative && rep.nondecreasing && rep.convex);
    }

    // f''(u) = -e^{-u} < 0 and f''(u) = -2/(1+u)^3 < 0: both kernels are
    // strictly concave in the interior, so the convexity probe must flag them
    // while the other two checks pass.
    #[test]
    fn assumption1_flags_concave_kernels() {
        for kernel in [Kernel::PoissonRG, Kernel::GeneralizedRG] {
            let rep = check_assumption1(&kernel, 1001);
            assert!(rep.nonnegative, "{kernel:?}");
            assert!(rep.nondecreasing, "{kernel:?}");
            assert!(!rep.convex, "{kernel:?}");
            assert!(rep.worst_violation < 0.0);
        }
    }

    #[test]
    fn assumption2_passes_all_classical_kernels() {
        for kernel in [Kernel::ChungLu, Kernel::PoissonRG, Kernel::GeneralizedRG] {
            let rep = check_assumption2(&kernel, 1001);
            assert!(rep.r0_is_one, "{kernel:?}: {rep:?}");
            assert!(rep.r_nonincreasing, "{kernel:?}: {rep:?}");
        }
    }

    #[test]
    fn ratio_times_u_recovers_f() {
        let us = [1e-9, 1e-6, 1e-3, 0.1, 0.25, 0.5, 0.75, 0.99, 1.0];
        for kernel in [Kernel::ChungLu, Kernel::PoissonRG, Kernel::GeneralizedRG] {
            for &u in &us {
                let f = eval_f(&kernel, u).unwrap();
                let r = eval_r(&kernel, u).unwrap();
                let err = (r * u - f).abs();
                assert!(err <= 1e-14 * f.max(1e-300), "{kernel:?} at {u}: {err}");
            }
        }
    }

    #[test]
    fn custom_kernel_interpolates() {
        // table of f(u) = u/2 sampled coarsely
        let table: Vec<(f64, f64)> =
            (0..=10).map(|i| (i as f64 / 10.0, i as f64 / 20.0)).collect();
        let kernel = Kernel::Custom { table, r1: 0.5 };
        assert!((eval_f(&kernel, 0.35).unwrap() - 0.175).abs() < 1e-15);
        assert_eq!(kernel.r1(), 0.5);
        let rep = check_assumption1(&kernel, 101);
        assert!(rep.nonnegative && rep.nondecreasing && rep.convex);
    }
}
