//! Closed-form single-server quantities.
//!
//! A server delivering packets as a Poisson process of rate `R > 1` against a
//! unit playback drain empties with probability `exp(-rbar(R) * D)` from an
//! initial buffer of `D` packets (infinite file), where `rbar(R)` is the
//! largest root of
//!
//! ```text
//!     gamma(r) = r + R * (exp(-r) - 1).
//! ```
//!
//! `gamma` vanishes at 0, is negative on `(0, rbar)` and strictly positive
//! beyond, which makes bracket-growing plus bisection unconditionally safe.
//! Everything else in this module is arithmetic on top of that root: the
//! two-sided finite-file bounds, the horizon needed to emulate an infinite
//! file, and the feasibility region in `(D, eps)` space.

use crate::error::{Error, Result};

/// `gamma(r) = r + rate * (exp(-r) - 1)`, written with `exp_m1` so the
/// near-zero cancellation does not lose precision.
pub fn gamma(r: f64, rate: f64) -> f64 {
    r + rate * (-r).exp_m1()
}

fn require_supercritical(rate: f64) -> Result<()> {
    if !rate.is_finite() || rate <= 1.0 {
        return Err(Error::SubcriticalRate { rate });
    }
    Ok(())
}

/// Largest root of `gamma(., rate)`, the exponential decay rate of the ruin
/// probability. Bisection to 1e-13 relative width, then one Newton polish.
pub fn largest_root(rate: f64) -> Result<f64> {
    require_supercritical(rate)?;
    // gamma is strictly negative on (0, rbar); grow the upper bracket until
    // it turns positive. rbar < rate always, so this terminates fast.
    let mut hi = 1.0;
    while gamma(hi, rate) <= 0.0 {
        hi *= 2.0;
    }
    let mut lo = 1e-300;
    while hi - lo > 1e-13 * hi {
        let mid = 0.5 * (lo + hi);
        if gamma(mid, rate) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut root = 0.5 * (lo + hi);
    let slope = 1.0 - rate * (-root).exp();
    if slope.abs() > 1e-12 {
        root -= gamma(root, rate) / slope;
    }
    debug_assert!(gamma(root, rate).abs() < 1e-12);
    Ok(root)
}

/// `P(min_t x_t <= 0 | x_0 = d)` for an infinite file: `exp(-rbar(rate) * d)`.
pub fn interruption_prob_infinite(d: f64, rate: f64) -> Result<f64> {
    if !d.is_finite() || d < 0.0 {
        return Err(Error::InvalidParameter { name: "d", value: d });
    }
    Ok((-largest_root(rate)? * d).exp())
}

/// Two-sided bounds on the finite-file interruption probability:
/// `upper = exp(-rbar d)`, `lower = upper - 2 exp(-(rate-1)^2 F / (4(rate+1)))`
/// clamped at zero (the bound can go negative for small files).
pub fn interruption_prob_bounds(d: f64, rate: f64, file_size: f64) -> Result<(f64, f64)> {
    if !(file_size > 0.0) {
        return Err(Error::InvalidParameter { name: "file_size", value: file_size });
    }
    let upper = interruption_prob_infinite(d, rate)?;
    let gap = truncation_gap(rate, file_size);
    Ok(((upper - gap).max(0.0), upper))
}

/// The finite-file gap term `2 exp(-(rate-1)^2 F / (4(rate+1)))`.
pub fn truncation_gap(rate: f64, file_size: f64) -> f64 {
    2.0 * (-(rate - 1.0).powi(2) * file_size / (4.0 * (rate + 1.0))).exp()
}

/// Smallest whole-packet file size whose gap term is at most `tol`, so a
/// finite-horizon simulation approximates the infinite-file probability to
/// within `tol`. `tol >= 2` needs no horizon at all (the gap never exceeds 2).
pub fn truncation_horizon(rate: f64, tol: f64) -> Result<f64> {
    require_supercritical(rate)?;
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidParameter { name: "tol", value: tol });
    }
    let f = 4.0 * (rate + 1.0) / (rate - 1.0).powi(2) * (2.0 / tol).ln();
    Ok(f.max(0.0).ceil())
}

/// The free/costly server pair. Rates are packets per unit time against a
/// playback rate normalized to 1; the free rate must exceed 1 so the free
/// server alone has a positive ruin exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ServerRates {
    r_free: f64,
    r_costly: f64,
}

impl ServerRates {
    pub fn new(r_free: f64, r_costly: f64) -> Result<Self> {
        require_supercritical(r_free)?;
        if !(r_costly > 0.0) || !r_costly.is_finite() {
            return Err(Error::InvalidParameter { name: "r_costly", value: r_costly });
        }
        Ok(Self { r_free, r_costly })
    }

    /// Free-server rate R0.
    pub fn r_free(&self) -> f64 {
        self.r_free
    }

    /// Costly-server rate Rc.
    pub fn r_costly(&self) -> f64 {
        self.r_costly
    }

    /// Merged rate R1 = R0 + Rc when both servers are used.
    pub fn r_both(&self) -> f64 {
        self.r_free + self.r_costly
    }
}

/// Ruin exponents for a rate pair and the constants derived from them.
///
/// `beta = alpha1 / (alpha0 (1 - alpha0/2))` carries the second-order
/// overshoot correction; `theta = alpha1 / alpha0` is its first-order
/// counterpart used by the dynamic-programming candidate. Both appear in
/// delivered formulas, so both are kept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayExponents {
    alpha0: f64,
    alpha1: f64,
    beta: f64,
    theta: f64,
}

impl DecayExponents {
    pub fn for_rates(rates: &ServerRates) -> Result<Self> {
        let alpha0 = largest_root(rates.r_free())?;
        let alpha1 = largest_root(rates.r_both())?;
        if alpha0 >= 2.0 {
            return Err(Error::ExponentOutOfRange { alpha0 });
        }
        Ok(Self {
            alpha0,
            alpha1,
            beta: alpha1 / (alpha0 * (1.0 - alpha0 / 2.0)),
            theta: alpha1 / alpha0,
        })
    }

    /// Free-only ruin exponent `rbar(R0)`.
    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    /// Both-servers ruin exponent `rbar(R1)`.
    pub fn alpha1(&self) -> f64 {
        self.alpha1
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Buffer level `(1/alpha1) ln(beta/eps)` at which the two branches of
    /// the risky design meet.
    pub fn d_bar(&self, eps: f64) -> f64 {
        (self.beta / eps).ln() / self.alpha1
    }
}

/// A quality-of-experience target: start playback with `d` buffered packets
/// and keep the interruption probability at or below `eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QoeTarget {
    d: f64,
    eps: f64,
}

impl QoeTarget {
    pub fn new(d: f64, eps: f64) -> Result<Self> {
        if !d.is_finite() || d < 0.0 {
            return Err(Error::InvalidParameter { name: "d", value: d });
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidParameter { name: "eps", value: eps });
        }
        Ok(Self { d, eps })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

/// Where a target sits relative to the two free-rate/both-rate boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionClass {
    /// `d >= d_max`: the free server alone meets the budget; cost zero.
    FreeOnlySufficient,
    /// `d < d_min`: even both servers forever cannot meet the budget.
    Infeasible,
    /// Between the boundaries: the interesting design region.
    Interior,
}

/// Classification plus the boundary buffers it was judged against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionReport {
    pub class: RegionClass,
    pub d_min: f64,
    pub d_max: f64,
}

/// Classify a target. Boundaries are closed on the favorable side: exactly
/// `d_min` is still (barely) inside the region, exactly `d_max` already needs
/// no costly server.
pub fn classify(target: &QoeTarget, exps: &DecayExponents) -> RegionReport {
    let log_inv_eps = (1.0 / target.eps()).ln();
    let d_min = log_inv_eps / exps.alpha1();
    let d_max = log_inv_eps / exps.alpha0();
    let class = if target.d() >= d_max {
        RegionClass::FreeOnlySufficient
    } else if target.d() < d_min {
        RegionClass::Infeasible
    } else {
        RegionClass::Interior
    };
    RegionReport { class, d_min, d_max }
}
