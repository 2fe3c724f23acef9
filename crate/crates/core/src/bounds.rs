//! The exact tight bound on expected subgraph counts and the asymptotic
//! scaling formulas it converges to: MAD-based, diminishing-d (variance
//! matched) and truncated power-law comparisons.

use crate::ambiguity::{self, AmbiguityParams, PowerLawParams};
use crate::error::{Error, Result};
use crate::kernels::{eval_f, Kernel};
use crate::patterns::{automorphism_count, degree_stats, Pattern};

/// Which formula produced a bound value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    ExactTight,
    AsymptoticMAD,
    AsymptoticVariance,
    PowerLaw,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::ExactTight => "exact-tight",
            Regime::AsymptoticMAD => "asymptotic-mad",
            Regime::AsymptoticVariance => "asymptotic-variance",
            Regime::PowerLaw => "power-law",
        }
    }
}

/// A bound on an expected subgraph count.
#[derive(Debug, Clone)]
pub struct BoundResult {
    /// The bound at the given n (unnormalized).
    pub value: f64,
    pub regime: Regime,
    /// Scale factor the asymptotic formulas are stated against
    /// (e.g. n^k h_c^{-k}); `value / normalization` is the limit constant.
    pub normalization: Option<f64>,
    /// Growth exponent in n, where the formula is a pure power law.
    pub exponent: Option<f64>,
    /// Set when some f-argument exceeded 1 and was clamped (h_c > h_s).
    pub clamped: bool,
    pub warning: Option<String>,
}

impl BoundResult {
    fn exact(value: f64, clamped: bool) -> BoundResult {
        BoundResult {
            value,
            regime: Regime::ExactTight,
            normalization: None,
            exponent: None,
            clamped,
            warning: if clamped {
                Some("correlated regime: f-arguments above 1 clamped (h_c > h_s)".into())
            } else {
                None
            },
        }
    }

    /// The limit constant value / normalization, when a normalization exists.
    pub fn normalized_constant(&self) -> Option<f64> {
        self.normalization.map(|s| self.value / s)
    }
}

struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    fn new() -> KahanSum {
        KahanSum { sum: 0.0, comp: 0.0 }
    }

    fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Expected count of `pattern` in a hidden-variable graph on n vertices with
/// i.i.d. weights on the given finite support: (n^k / Aut(H)) times the sum
/// over all support^k assignments of the probability-weighted edge products.
/// f-arguments above 1 are clamped to f(1); the flag is reported by callers
/// that care. Enumeration is m^k with compensated summation.
pub fn expected_count_discrete(
    support: &[f64],
    probs: &[f64],
    pattern: &Pattern,
    kernel: &Kernel,
    h_s: f64,
    n: u64,
) -> Result<f64> {
    Ok(expected_count_discrete_impl(support, probs, pattern, kernel, h_s, n)?.0)
}

fn expected_count_discrete_impl(
    support: &[f64],
    probs: &[f64],
    pattern: &Pattern,
    kernel: &Kernel,
    h_s: f64,
    n: u64,
) -> Result<(f64, bool)> {
    assert_eq!(support.len(), probs.len());
    let m = support.len();
    let k = pattern.k();
    if (m as f64).powi(k as i32) > 2e7 {
        return Err(Error::TooLarge(format!("{m}^{k} assignments")));
    }

    // f evaluated once per support pair
    let mut pair_f = vec![vec![0.0f64; m]; m];
    let mut clamped = false;
    for i in 0..m {
        for j in 0..m {
            let mut u = support[i] * support[j] / (h_s * h_s);
            if u > 1.0 {
                clamped = true;
                u = 1.0;
            }
            pair_f[i][j] = eval_f(kernel, u)?;
        }
    }

    let edges = pattern.edges();
    let mut digits = vec![0usize; k];
    let mut sum = KahanSum::new();
    loop {
        let mut term = 1.0f64;
        for &d in &digits {
            term *= probs[d];
        }
        if term != 0.0 {
            for &(s, t) in edges {
                term *= pair_f[digits[s]][digits[t]];
            }
            sum.add(term);
        }
        // next assignment in base m
        let mut pos = 0;
        loop {
            if pos == k {
                let aut = automorphism_count(pattern) as f64;
                let scale = (n as f64).powi(k as i32) / aut;
                return Ok((scale * sum.sum, clamped));
            }
            digits[pos] += 1;
            if digits[pos] < m {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// The tight bound: the exact maximum of the expected count over all weight
/// distributions in P(mu, d), attained by the three-point distribution and
/// evaluated by 3^k enumeration.
pub fn tight_bound(pattern: &Pattern, params: &AmbiguityParams, kernel: &Kernel) -> Result<BoundResult> {
    let dist = ambiguity::three_point(params)?;
    let (a, mu, hc) = dist.support;
    let (pa, pm, ph) = dist.probs;
    let (value, clamped) = expected_count_discrete_impl(
        &[a, mu, hc],
        &[pa, pm, ph],
        pattern,
        kernel,
        params.h_s,
        params.n,
    )?;
    Ok(BoundResult::exact(value, clamped))
}

fn factorial(k: usize) -> f64 {
    (1..=k as u64).product::<u64>() as f64
}

/// Moment-route cross-check for cliques in the linear regime where every
/// f-argument stays at or below 1 and the Chung-Lu kernel is the identity:
/// each clique vertex has degree k-1, so the 3^k sum factorizes and
/// tight_bound(K_k) = (n^k / k!) (E[h^{k-1}])^k / h_s^{k(k-1)} exactly.
pub fn moment_identity_bound_cliques(k: usize, params: &AmbiguityParams) -> Result<f64> {
    if !(2..=8).contains(&k) {
        return Err(Error::PatternSize { k });
    }
    let hs2 = params.h_s * params.h_s;
    for (name, arg) in [
        ("a*h_c", params.a * params.h_c),
        ("mu*h_c", params.mu * params.h_c),
        ("h_c^2", params.h_c * params.h_c),
    ] {
        if arg > hs2 * (1.0 + 1e-12) {
            return Err(Error::PreconditionViolated(format!(
                "{name} = {arg} exceeds h_s^2 = {hs2}; moment identity needs all f-arguments <= 1"
            )));
        }
    }
    let dist = ambiguity::three_point(params)?;
    let m = dist.raw_moment(k as u32 - 1);
    let n = params.n as f64;
    let e = (k * (k - 1) / 2) as i32;
    Ok(n.powi(k as i32) / factorial(k) * m.powi(k as i32) / hs2.powi(e))
}

fn require_equal_cutoffs(params: &AmbiguityParams) -> Result<()> {
    if (params.h_s - params.h_c).abs() > 1e-9 * params.h_c.abs().max(1.0) {
        return Err(Error::RegimeViolation(format!(
            "asymptotic formulas assume h_s = h_c, got h_s={}, h_c={}",
            params.h_s, params.h_c
        )));
    }
    Ok(())
}

/// Large-n limit of the tight bound under the ratio-form kernel assumption,
/// normalized by n^k h_c^{-k}. Patterns with minimum degree at least 2 use
/// the core-only limit; degree-1 vertices contribute the mixed factor
/// (d/2)(r(1)-1) + mu each and require k >= 3.
pub fn scaling_mad(pattern: &Pattern, params: &AmbiguityParams, kernel: &Kernel) -> Result<BoundResult> {
    require_equal_cutoffs(params)?;
    let stats = degree_stats(pattern);
    let k = pattern.k();
    let aut = automorphism_count(pattern) as f64;
    let r1 = kernel.r1();
    let (d, mu) = (params.d, params.mu);

    let constant = if stats.n1 == 0 {
        d.powi(k as i32) / (2.0f64.powi(k as i32) * aut) * r1.powi(stats.e_h as i32)
    } else {
        if k < 3 {
            return Err(Error::RegimeViolation(
                "degree-1 asymptotics require patterns on at least 3 vertices".into(),
            ));
        }
        let base = d / 2.0 * (r1 - 1.0) + mu;
        if base < 0.0 {
            return Err(Error::RegimeViolation(format!(
                "(d/2)(r(1)-1) + mu = {base} is negative; the limit formula does not apply"
            )));
        }
        let kk = (k - stats.n1) as i32;
        d.powi(kk) / (aut * 2.0f64.powi(kk))
            * base.powi(stats.n1 as i32)
            * r1.powi((stats.e_h - stats.n1) as i32)
    };

    let n = params.n as f64;
    let normalization = n.powi(k as i32) * params.h_c.powi(-(k as i32));
    Ok(BoundResult {
        value: constant * normalization,
        regime: Regime::AsymptoticMAD,
        normalization: Some(normalization),
        exponent: None,
        clamped: false,
        warning: None,
    })
}

/// The Chung-Lu specialization at h_s = h_c = sqrt(mu n):
/// n^{k/2} d^{k-n1} / (Aut(H) 2^{k-n1} mu^{k/2-n1}).
pub fn scaling_mad_chunglu(pattern: &Pattern, mu: f64, d: f64, n: u64) -> Result<BoundResult> {
    let k = pattern.k();
    if k < 3 {
        return Err(Error::PreconditionViolated(
            "the sqrt(mu n) specialization requires patterns on at least 3 vertices".into(),
        ));
    }
    let stats = degree_stats(pattern);
    let aut = automorphism_count(pattern) as f64;
    let kk = (k - stats.n1) as i32;
    let nf = n as f64;
    let normalization = nf.powf(k as f64 / 2.0);
    let constant =
        d.powi(kk) / (aut * 2.0f64.powi(kk) * mu.powf(k as f64 / 2.0 - stats.n1 as f64));
    Ok(BoundResult {
        value: constant * normalization,
        regime: Regime::AsymptoticMAD,
        normalization: Some(normalization),
        exponent: Some(k as f64 / 2.0),
        clamped: false,
        warning: None,
    })
}

/// Clique limit at h_s = h_c = sqrt(mu n):
/// n^{k/2} d^k r(1)^{k(k-1)/2} / (k! 2^k mu^{k/2}).
/// The derivation needs minimum degree 2, so the single edge k = 2 is out
/// (its true limit is n mu/2, not this formula's k = 2 value).
pub fn clique_bound_mad(k: usize, params: &AmbiguityParams, kernel: &Kernel) -> Result<BoundResult> {
    if !(3..=8).contains(&k) {
        return Err(Error::PatternSize { k });
    }
    require_equal_cutoffs(params)?;
    let sqrt_mu_n = (params.mu * params.n as f64).sqrt();
    if (params.h_c - sqrt_mu_n).abs() > 1e-9 * sqrt_mu_n {
        return Err(Error::RegimeViolation(format!(
            "clique limit assumes h_c = sqrt(mu n) = {sqrt_mu_n}, got h_c = {}",
            params.h_c
        )));
    }
    let nf = params.n as f64;
    let normalization = nf.powf(k as f64 / 2.0);
    let constant = params.d.powi(k as i32) * kernel.r1().powi((k * (k - 1) / 2) as i32)
        / (factorial(k) * 2.0f64.powi(k as i32) * params.mu.powf(k as f64 / 2.0));
    Ok(BoundResult {
        value: constant * normalization,
        regime: Regime::AsymptoticMAD,
        normalization: Some(normalization),
        exponent: Some(k as f64 / 2.0),
        clamped: false,
        warning: None,
    })
}

/// Diminishing-d limit: with d = 2 sigma²/(h_c - a) the extremal graph matches
/// the target variance, and the bound normalized by n^k h_c^{-2k+n1} tends to
/// r(1)^{E33}/Aut · (sigma² r(1) + mu²)^{n21} (sigma² r(1)² + mu²)^{n2-n21}
/// mu^{n1} sigma^{2 n3}.
pub fn scaling_variance(
    pattern: &Pattern,
    mu: f64,
    sigma2: f64,
    h_c: f64,
    n: u64,
    kernel: &Kernel,
) -> Result<BoundResult> {
    let stats = degree_stats(pattern);
    let k = pattern.k();
    let aut = automorphism_count(pattern) as f64;
    let r1 = kernel.r1();
    let constant = r1.powi(stats.e_ge3_ge3 as i32) / aut
        * (sigma2 * r1 + mu * mu).powi(stats.n2_1 as i32)
        * (sigma2 * r1 * r1 + mu * mu).powi((stats.n2 - stats.n2_1) as i32)
        * mu.powi(stats.n1 as i32)
        * sigma2.powi(stats.n_ge3 as i32);
    let nf = n as f64;
    let normalization = nf.powi(k as i32) * h_c.powi(stats.n1 as i32 - 2 * k as i32);
    let warning = if sigma2 / h_c > 0.1 {
        Some(format!(
            "sigma^2/h_c = {:.3} is not small; the diminishing-d regime may not apply",
            sigma2 / h_c
        ))
    } else {
        None
    };
    Ok(BoundResult {
        value: constant * normalization,
        regime: Regime::AsymptoticVariance,
        normalization: Some(normalization),
        exponent: None,
        clamped: false,
        warning,
    })
}

/// Chung-Lu diminishing-d limit at h_c = h_s = sqrt(mu n):
/// n^{s1/2} / (Aut(H) mu^{k - 3 s1/2}) (mu² + sigma²)^{s2} sigma^{2 s3}.
pub fn subgraph_bound_variance_chunglu(
    pattern: &Pattern,
    mu: f64,
    sigma2: f64,
    n: u64,
) -> Result<BoundResult> {
    let stats = degree_stats(pattern);
    let k = pattern.k() as f64;
    let aut = automorphism_count(pattern) as f64;
    let s1 = stats.n1 as f64;
    let nf = n as f64;
    let normalization = nf.powf(s1 / 2.0);
    let constant = (mu * mu + sigma2).powi(stats.n2 as i32) * sigma2.powi(stats.n_ge3 as i32)
        / (aut * mu.powf(k - 1.5 * s1));
    Ok(BoundResult {
        value: constant * normalization,
        regime: Regime::AsymptoticVariance,
        normalization: Some(normalization),
        exponent: Some(s1 / 2.0),
        clamped: false,
        warning: None,
    })
}

/// Leading constant of the power-law clique count under the sqrt(mu n)
/// cutoff: mu^{(k/2)(1-tau)} (C/(k-tau))^k / k!.
pub fn powerlaw_clique_constant(pl: &PowerLawParams, k: usize) -> f64 {
    pl.mu.powf(k as f64 / 2.0 * (1.0 - pl.tau)) * (pl.c / (k as f64 - pl.tau)).powi(k as i32)
        / factorial(k)
}

/// Leading constant of the variance-matched extremal clique bound:
/// mu^{(k/2)(1-tau)} (C/(3-tau))^k / k!. Identical to the power-law constant
/// at k = 3 and strictly above it for k > 3.
pub fn variance_matched_clique_constant(pl: &PowerLawParams, k: usize) -> f64 {
    pl.mu.powf(k as f64 / 2.0 * (1.0 - pl.tau)) * (pl.c / (3.0 - pl.tau)).powi(k as i32)
        / factorial(k)
}

fn check_sparse_exponent(tau: f64) -> Result<()> {
    if !(2.0 < tau && tau < 3.0) {
        return Err(Error::ExponentOutOfRange { tau, lo: 2.0, hi: 3.0 });
    }
    Ok(())
}

/// Expected k-clique count in a power-law random graph with exponent tau in
/// (2,3), cutoff solved self-consistently at h_c = sqrt(mu n):
/// n^{(k/2)(3-tau)} times [`powerlaw_clique_constant`].
pub fn powerlaw_clique_count(k: usize, tau: f64, n: u64) -> Result<BoundResult> {
    check_sparse_exponent(tau)?;
    let pl = ambiguity::powerlaw_params_matched_cutoff(tau, n, 1.0)?;
    Ok(powerlaw_clique_count_with(&pl, k, n))
}

/// Same formula with the power-law constants held fixed by the caller.
pub fn powerlaw_clique_count_with(pl: &PowerLawParams, k: usize, n: u64) -> BoundResult {
    let expo = k as f64 / 2.0 * (3.0 - pl.tau);
    let normalization = (n as f64).powf(expo);
    BoundResult {
        value: powerlaw_clique_constant(pl, k) * normalization,
        regime: Regime::PowerLaw,
        normalization: Some(normalization),
        exponent: Some(expo),
        clamped: false,
        warning: None,
    }
}

/// Dense regime 1 < tau < 2: the clique count scales as n^{k/tau}. The
/// exponent is the contract; the value is reported with unit constant.
pub fn powerlaw_clique_scaling_dense(k: usize, tau: f64, n: u64) -> Result<BoundResult> {
    if !(1.0 < tau && tau < 2.0) {
        return Err(Error::ExponentOutOfRange { tau, lo: 1.0, hi: 2.0 });
    }
    let expo = k as f64 / tau;
    let normalization = (n as f64).powf(expo);
    Ok(BoundResult {
        value: normalization,
        regime: Regime::PowerLaw,
        normalization: Some(normalization),
        exponent: Some(expo),
        clamped: false,
        warning: Some("dense-regime constant is order-only".into()),
    })
}

/// Variance-matched extremal clique bound for tau in (2,3), with
/// sigma² = C/(3-tau) (mu n)^{(3-tau)/2} and d = 2 sigma²/(sqrt(mu n)-1):
/// n^{(k/2)(3-tau)} times [`variance_matched_clique_constant`].
pub fn variance_matched_clique_bound(k: usize, tau: f64, n: u64) -> Result<BoundResult> {
    check_sparse_exponent(tau)?;
    let pl = ambiguity::powerlaw_params_matched_cutoff(tau, n, 1.0)?;
    Ok(variance_matched_clique_bound_with(&pl, k, n))
}

/// Same formula with the power-law constants held fixed by the caller.
pub fn variance_matched_clique_bound_with(pl: &PowerLawParams, k: usize, n: u64) -> BoundResult {
    let expo = k as f64 / 2.0 * (3.0 - pl.tau);
    let normalization = (n as f64).powf(expo);
    BoundResult {
        value: variance_matched_clique_constant(pl, k) * normalization,
        regime: Regime::PowerLaw,
        normalization: Some(normalization),
        exponent: Some(expo),
        clamped: false,
        warning: None,
    }
}
