//! Mean-MAD-range ambiguity sets, the extremal three-point weight
//! distribution, MAD/variance conversions and truncated power-law moments.

use crate::bounds;
use crate::error::{Error, Result};
use crate::kernels::Kernel;
use crate::patterns::Pattern;

/// Tolerance below which a slightly negative middle probability is clamped
/// to zero instead of reported infeasible.
const FEASIBILITY_TOL: f64 = 1e-12;

/// Parameters of the ambiguity set P(mu, d) together with the graph scale:
/// weights live on [a, h_c] with mean mu and mean absolute deviation d, the
/// connection probability is f(h_i h_j / h_s²), and the graph has n vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbiguityParams {
    pub a: f64,
    pub mu: f64,
    pub d: f64,
    pub h_c: f64,
    pub h_s: f64,
    pub n: u64,
}

impl AmbiguityParams {
    // `!(x >= y)` deliberately rejects NaN inputs alongside out-of-range ones
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn new(a: f64, mu: f64, d: f64, h_c: f64, h_s: f64, n: u64) -> Result<AmbiguityParams> {
        if !(a >= 0.0 && a < mu && mu < h_c) {
            return Err(Error::PreconditionViolated(format!(
                "require 0 <= a < mu < h_c, got a={a}, mu={mu}, h_c={h_c}"
            )));
        }
        if !(d >= 0.0) {
            return Err(Error::PreconditionViolated(format!("require d >= 0, got d={d}")));
        }
        if !(h_s > 0.0) {
            return Err(Error::PreconditionViolated(format!("require h_s > 0, got h_s={h_s}")));
        }
        if n == 0 {
            return Err(Error::PreconditionViolated("require n >= 1".into()));
        }
        Ok(AmbiguityParams { a, mu, d, h_c, h_s, n })
    }

    /// Canonical scale h_s = h_c = sqrt(mu n).
    pub fn with_sqrt_mu_n_cutoff(a: f64, mu: f64, d: f64, n: u64) -> Result<AmbiguityParams> {
        let h = (mu * n as f64).sqrt();
        AmbiguityParams::new(a, mu, d, h, h, n)
    }

    /// Largest feasible MAD for this (a, mu, h_c): 2(mu-a)(h_c-mu)/(h_c-a).
    pub fn d_max(&self) -> f64 {
        2.0 * (self.mu - self.a) * (self.h_c - self.mu) / (self.h_c - self.a)
    }
}

/// The extremal weight distribution: support {a, mu, h_c} with the
/// closed-form probabilities that meet the mean and MAD constraints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreePointDistribution {
    pub support: (f64, f64, f64),
    pub probs: (f64, f64, f64),
}

impl ThreePointDistribution {
    pub fn mean(&self) -> f64 {
        let (a, m, h) = self.support;
        let (pa, pm, ph) = self.probs;
        pa * a + pm * m + ph * h
    }

    pub fn mad(&self) -> f64 {
        let (a, m, h) = self.support;
        let (pa, _, ph) = self.probs;
        let mu = m;
        pa * (mu - a) + ph * (h - mu)
    }

    pub fn variance(&self) -> f64 {
        let (a, m, h) = self.support;
        let (pa, pm, ph) = self.probs;
        let mu = self.mean();
        pa * (a - mu).powi(2) + pm * (m - mu).powi(2) + ph * (h - mu).powi(2)
    }

    /// k-th raw moment E[h^k].
    pub fn raw_moment(&self, k: u32) -> f64 {
        let (a, m, h) = self.support;
        let (pa, pm, ph) = self.probs;
        pa * a.powi(k as i32) + pm * m.powi(k as i32) + ph * h.powi(k as i32)
    }
}

/// The maximizing three-point distribution: p_a = d/(2(mu-a)),
/// p_hc = d/(2(h_c-mu)), p_mu = 1 - p_a - p_hc.
pub fn three_point(params: &AmbiguityParams) -> Result<ThreePointDistribution> {
    let p_a = params.d / (2.0 * (params.mu - params.a));
    let p_hc = params.d / (2.0 * (params.h_c - params.mu));
    let p_mu = 1.0 - p_a - p_hc;
    if p_mu < -FEASIBILITY_TOL {
        return Err(Error::Infeasible { d: params.d, d_max: params.d_max() });
    }
    Ok(ThreePointDistribution {
        support: (params.a, params.mu, params.h_c),
        probs: (p_a, p_mu.max(0.0), p_hc),
    })
}

/// Variance of a three-point distribution; equals d(h_c - a)/2 when the
/// distribution came out of [`three_point`].
pub fn variance_of_three_point(dist: &ThreePointDistribution) -> f64 {
    dist.variance()
}

/// MAD range compatible with a fixed variance on [a, h_c]:
/// d_min = 2 sigma² / (h_c - a), d_max = sigma.
pub fn mad_bounds_from_variance(sigma2: f64, a: f64, h_c: f64) -> (f64, f64) {
    assert!(sigma2 >= 0.0 && h_c > a);
    (2.0 * sigma2 / (h_c - a), sigma2.sqrt())
}

/// Truncated power law C·h^{-tau} on [h_min, h_c] with its closed-form
/// normalizer and moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawParams {
    pub tau: f64,
    pub h_min: f64,
    pub h_c: f64,
    /// Normalizing constant; 0 in the degenerate h_min = h_c case, where the
    /// distribution is a point mass and the density form does not apply.
    pub c: f64,
    pub mu: f64,
    pub d: f64,
    pub sigma2: f64,
}

/// ∫ h^{p - tau} dh over [lo, hi], with the logarithmic branch when the
/// exponent p + 1 - tau is within 1e-8 of zero.
fn power_integral(p: f64, tau: f64, lo: f64, hi: f64) -> f64 {
    let e = p + 1.0 - tau;
    if e.abs() < 1e-8 {
        (hi / lo).ln()
    } else {
        (hi.powf(e) - lo.powf(e)) / e
    }
}

/// Closed-form normalizer, mean, MAD and variance of the truncated power law.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // `!(h_min > 0)` also rejects NaN
pub fn powerlaw_params(tau: f64, h_c: f64, h_min: f64) -> Result<PowerLawParams> {
    if tau <= 1.0 {
        return Err(Error::ExponentUnsupported { tau });
    }
    if !(h_min > 0.0) || h_c < h_min {
        return Err(Error::PreconditionViolated(format!(
            "require 0 < h_min <= h_c, got h_min={h_min}, h_c={h_c}"
        )));
    }
    if h_c == h_min {
        return Ok(PowerLawParams { tau, h_min, h_c, c: 0.0, mu: h_min, d: 0.0, sigma2: 0.0 });
    }
    let c = 1.0 / power_integral(0.0, tau, h_min, h_c);
    let mu = c * power_integral(1.0, tau, h_min, h_c);
    let m2 = c * power_integral(2.0, tau, h_min, h_c);
    let sigma2 = m2 - mu * mu;
    // E|h - mu| = 2 E[(h - mu)^+] for a continuous distribution
    let d = 2.0 * c * (power_integral(1.0, tau, mu, h_c) - mu * power_integral(0.0, tau, mu, h_c));
    Ok(PowerLawParams { tau, h_min, h_c, c, mu, d, sigma2 })
}

/// Solve the self-consistent cutoff h_c = sqrt(mu(h_c) n) by bisection on
/// mu(h_c)·n - h_c², to relative tolerance 1e-9. Covers both the sparse
/// (tau > 2, mu bounded) and dense (1 < tau < 2, h_c ~ n^{1/tau}) regimes.
pub fn powerlaw_params_matched_cutoff(tau: f64, n: u64, h_min: f64) -> Result<PowerLawParams> {
    if tau <= 1.0 {
        return Err(Error::ExponentUnsupported { tau });
    }
    let nf = n as f64;
    let gap = |h_c: f64| -> Result<f64> {
        Ok(powerlaw_params(tau, h_c, h_min)?.mu * nf - h_c * h_c)
    };
    let mut lo = h_min * (1.0 + 1e-9);
    if gap(lo)? <= 0.0 {
        return Err(Error::PreconditionViolated(format!(
            "no cutoff above h_min={h_min} satisfies h_c^2 = mu n for n={n}"
        )));
    }
    let mut hi = lo * 2.0;
    while gap(hi)? > 0.0 {
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::PreconditionViolated("cutoff solve diverged".into()));
        }
    }
    while (hi - lo) / hi > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if gap(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    powerlaw_params(tau, 0.5 * (lo + hi), h_min)
}

/// Distributions on `grid` with mean mu and MAD d, restricted to the
/// vertices of the feasible polytope (at most three support points each).
/// Probabilities are returned aligned with `grid`.
pub fn feasible_grid_vertices(grid: &[f64], mu: f64, d: f64) -> Vec<Vec<f64>> {
    let m = grid.len();
    let mut out: Vec<Vec<f64>> = Vec::new();
    let mut push = |q: Vec<f64>| {
        let close = |a: &[f64], b: &[f64]| {
            a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-9)
        };
        if !out.iter().any(|seen| close(seen, &q)) {
            out.push(q);
        }
    };

    // single support point: only the degenerate d = 0 case at x = mu
    if d.abs() <= 1e-12 {
        for (i, &x) in grid.iter().enumerate() {
            if (x - mu).abs() <= 1e-12 {
                let mut q = vec![0.0; m];
                q[i] = 1.0;
                push(q);
            }
        }
    }

    // pairs: mass and mean pin the probabilities; MAD must then match
    for i in 0..m {
        for j in (i + 1)..m {
            let (xi, xj) = (grid[i], grid[j]);
            if (xj - xi).abs() < 1e-15 {
                continue;
            }
            let qi = (xj - mu) / (xj - xi);
            let qj = 1.0 - qi;
            if qi < -1e-12 || qj < -1e-12 {
                continue;
            }
            let mad = qi * (xi - mu).abs() + qj * (xj - mu).abs();
            if (mad - d).abs() <= 1e-9 * d.max(1.0) {
                let mut q = vec![0.0; m];
                q[i] = qi.max(0.0);
                q[j] = qj.max(0.0);
                push(q);
            }
        }
    }

    // triples: solve the 3x3 moment system
    for i in 0..m {
        for j in (i + 1)..m {
            for l in (j + 1)..m {
                let xs = [grid[i], grid[j], grid[l]];
                let mat = [
                    [1.0, 1.0, 1.0],
                    [xs[0], xs[1], xs[2]],
                    [(xs[0] - mu).abs(), (xs[1] - mu).abs(), (xs[2] - mu).abs()],
                ];
                let rhs = [1.0, mu, d];
                let Some(q3) = solve3(mat, rhs) else {
                    continue;
                };
                if q3.iter().any(|&q| q < -1e-12) {
                    continue;
                }
                let mut q = vec![0.0; m];
                q[i] = q3[0].max(0.0);
                q[j] = q3[1].max(0.0);
                q[l] = q3[2].max(0.0);
                push(q);
            }
        }
    }
    out
}

#[allow(clippy::needless_range_loop)] // rows of `a` are indexed pairwise
fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&r, &s| {
            a[r][col].abs().partial_cmp(&a[s][col].abs()).unwrap()
        })?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in 0..3 {
            if row != col {
                let factor = a[row][col] / a[col][col];
                for c2 in 0..3 {
                    a[row][c2] -= factor * a[col][c2];
                }
                b[row] -= factor * b[col];
            }
        }
    }
    Some([b[0] / a[0][0], b[1] / a[1][1], b[2] / a[2][2]])
}

/// Finite verification oracle for the three-point maximizer: maximize the
/// exact expected count over all distributions supported on `support_grid`
/// that satisfy the mean and MAD constraints. Searches every polytope vertex
/// plus pairwise mixtures of vertices at `prob_resolution` steps (the
/// objective is not linear in the distribution, so mixtures matter).
pub fn grid_search_optimality_oracle(
    params: &AmbiguityParams,
    pattern: &Pattern,
    kernel: &Kernel,
    support_grid: &[f64],
    prob_resolution: f64,
) -> Result<f64> {
    if pattern.k() > 3 {
        return Err(Error::PreconditionViolated(
            "grid-search oracle is restricted to patterns on at most 3 vertices".into(),
        ));
    }
    if support_grid.len() > 12 {
        return Err(Error::TooLarge("support grid larger than 12 points".into()));
    }
    let contains = |x: f64| support_grid.iter().any(|&g| (g - x).abs() <= 1e-12 * x.abs().max(1.0));
    if !(contains(params.a) && contains(params.mu) && contains(params.h_c)) {
        return Err(Error::PreconditionViolated(
            "support grid must include a, mu and h_c".into(),
        ));
    }
    if support_grid
        .iter()
        .any(|&g| g < params.a - 1e-12 || g > params.h_c + 1e-12 * params.h_c.max(1.0))
    {
        return Err(Error::PreconditionViolated("support grid must lie within [a, h_c]".into()));
    }

    let vertices = feasible_grid_vertices(support_grid, params.mu, params.d);
    if vertices.is_empty() {
        return Err(Error::GridInfeasible);
    }

    let evaluate = |probs: &[f64]| -> Result<f64> {
        bounds::expected_count_discrete(
            support_grid,
            probs,
            pattern,
            kernel,
            params.h_s,
            params.n,
        )
    };

    let mut best = f64::NEG_INFINITY;
    for v in &vertices {
        best = best.max(evaluate(v)?);
    }
    let steps = (1.0 / prob_resolution.clamp(1e-3, 1.0)).round() as usize;
    for i in 0..vertices.len() {
        for j in (i + 1)..vertices.len() {
            for s in 1..steps {
                let lambda = s as f64 / steps as f64;
                let mixed: Vec<f64> = vertices[i]
                    .iter()
                    .zip(&vertices[j])
                    .map(|(&x, &y)| (1.0 - lambda) * x + lambda * y)
                    .collect();
                best = best.max(evaluate(&mixed)?);
            }
        }
    }
    Ok(best)
}
