//! The concentration function ν(n, k) and the predictions built on it.
//!
//! ν(n, k) is the unique positive zero of
//!
//! ```text
//! f(x) = x·ln k + x − (x + 1/2)·ln x − (x − 1)·ln n
//! ```
//!
//! Equivalently `K(ν) = ln k` with `K(x) = (1 + 1/(2x))·ln x + (1 − 1/x)·ln n − 1`,
//! and for k = n, `g(ν̂) = ln n` with `g(x) = (x + 1/2)·ln x − x`. The solver
//! only evaluates `f`; `K` and `g` are exposed so callers can check the root
//! through an independent route.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative bracket width used by [`nu_hat`] and the predictions.
pub const DEFAULT_TOL: f64 = 1e-12;

const MAX_EXPANSIONS: usize = 2048;

/// Bin count `n` and ball count `k`; any finite positive reals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NuQuery {
    n: f64,
    k: f64,
}

impl NuQuery {
    pub fn new(n: f64, k: f64) -> Result<Self> {
        for (name, v) in [("n", n), ("k", k)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be a finite positive number, got {v}"
                )));
            }
        }
        Ok(NuQuery { n, k })
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

fn check_positive(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "x must be positive, got {x}"
        )))
    }
}

fn f_raw(x: f64, ln_n: f64, ln_k: f64) -> f64 {
    x * ln_k + x - (x + 0.5) * x.ln() - (x - 1.0) * ln_n
}

/// `f(x) = x·ln k + x − (x + 1/2)·ln x − (x − 1)·ln n`.
pub fn f_eval(x: f64, q: NuQuery) -> Result<f64> {
    check_positive(x)?;
    Ok(f_raw(x, q.n.ln(), q.k.ln()))
}

/// `K(x) = (1 + 1/(2x))·ln x + (1 − 1/x)·ln n − 1`.
#[allow(non_snake_case)]
pub fn K_eval(x: f64, n: f64) -> Result<f64> {
    check_positive(x)?;
    Ok((1.0 + 0.5 / x) * x.ln() + (1.0 - 1.0 / x) * n.ln() - 1.0)
}

/// `g(x) = (x + 1/2)·ln x − x`.
pub fn g_eval(x: f64) -> Result<f64> {
    check_positive(x)?;
    Ok((x + 0.5) * x.ln() - x)
}

/// ν(n, k) by bracketing and bisection.
///
/// The bracket starts at `[1, 2]`; the upper end doubles until `f < 0` and the
/// lower end halves while `f <= 0` (only possible when n or k is below 1).
/// Bisection stops once the bracket is narrower than `tol·max(1, lo)` and
/// `|f(mid)| <= tol`, or when the bracket can no longer be split in `f64`.
pub fn nu(q: NuQuery, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tol must be positive, got {tol}"
        )));
    }
    let (ln_n, ln_k) = (q.n.ln(), q.k.ln());
    let f = |x: f64| f_raw(x, ln_n, ln_k);

    let mut lo = 1.0_f64;
    let mut steps = 0;
    while f(lo) <= 0.0 {
        if f(lo) == 0.0 {
            return Ok(lo);
        }
        lo *= 0.5;
        steps += 1;
        if steps > MAX_EXPANSIONS || lo == 0.0 {
            return Err(Error::BracketNotFound(steps));
        }
    }
    let mut hi = 2.0 * lo.max(1.0);
    steps = 0;
    while f(hi) >= 0.0 {
        if f(hi) == 0.0 {
            return Ok(hi);
        }
        lo = hi;
        hi *= 2.0;
        steps += 1;
        if steps > MAX_EXPANSIONS || !hi.is_finite() {
            return Err(Error::BracketNotFound(steps));
        }
    }

    loop {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            // bracket exhausted at f64 resolution
            return Ok(if f(lo).abs() <= f(hi).abs() { lo } else { hi });
        }
        let fm = f(mid);
        if fm == 0.0 || (hi - lo <= tol * lo.max(1.0) && fm.abs() <= tol) {
            return Ok(mid);
        }
        if fm > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// ν̂(n) = ν(n, n).
pub fn nu_hat(n: f64) -> Result<f64> {
    nu(NuQuery::new(n, n)?, DEFAULT_TOL)
}

/// A closed interval of integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntInterval {
    pub lo: i64,
    pub hi: i64,
}

impl IntInterval {
    pub fn new(lo: i64, hi: i64) -> Self {
        debug_assert!(lo <= hi);
        IntInterval { lo, hi }
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// Number of integers in the interval.
    pub fn width(&self) -> i64 {
        self.hi - self.lo + 1
    }

    pub fn shifted(self, by: i64) -> Self {
        IntInterval::new(self.lo + by, self.hi + by)
    }
}

/// `[⌊value − ε⌋, ⌊value + ε⌋]`.
pub fn floor_interval(value: f64, eps: f64) -> Result<IntInterval> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be positive, got {eps}"
        )));
    }
    Ok(IntInterval::new(
        (value - eps).floor() as i64,
        (value + eps).floor() as i64,
    ))
}

/// `[⌊ν(n,k) − ε⌋, ⌊ν(n,k) + ε⌋]`, the whp range of the maximum load.
pub fn predicted_interval(n: f64, k: f64, eps: f64) -> Result<IntInterval> {
    floor_interval(nu(NuQuery::new(n, k)?, DEFAULT_TOL)?, eps)
}

/// Density regimes of the two-point theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// `m ≤ n/2 + O(n^{2/3})`
    I,
    /// `m = n/2 + s`, `s = o(n)`, `s³/n² → ∞`
    II,
    /// `m = αn/2`, α in (1, 2)
    III,
    OutOfScope,
}

/// Finite-n stand-ins for the asymptotic regime hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeGates {
    /// `s ≤ o_n_fraction·n` stands in for `s = o(n)`.
    pub o_n_fraction: f64,
    /// Regime III needs `2m/n ∈ (1 + δ₀, 2 − δ₀)`.
    pub delta0: f64,
}

impl Default for RegimeGates {
    fn default() -> Self {
        RegimeGates {
            o_n_fraction: 1.0 / 20.0,
            delta0: 0.05,
        }
    }
}

/// Classifies `(n, m)` given the constant `a` standing in for the implicit
/// constant of `O(n^{2/3})`.
pub fn classify_regime(n: f64, m: f64, a: f64, gates: RegimeGates) -> Regime {
    let s = m - n / 2.0;
    let window = a * n.powf(2.0 / 3.0);
    let alpha = 2.0 * m / n;
    if s <= window {
        Regime::I
    } else if s <= gates.o_n_fraction * n {
        Regime::II
    } else if alpha > 1.0 + gates.delta0 && alpha < 2.0 - gates.delta0 {
        Regime::III
    } else {
        Regime::OutOfScope
    }
}

/// Input of [`two_point`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeSpec {
    pub n: f64,
    pub m: f64,
    pub regime: Regime,
    /// Upper bound on `s/n` accepted for regime II.
    pub o_n_fraction: f64,
}

impl RegimeSpec {
    pub fn new(n: f64, m: f64, regime: Regime) -> Self {
        RegimeSpec {
            n,
            m,
            regime,
            o_n_fraction: RegimeGates::default().o_n_fraction,
        }
    }

    /// `s = m − n/2`.
    pub fn s(&self) -> f64 {
        self.m - self.n / 2.0
    }
}

/// `{h, h + 1}` prediction for the maximum degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoPointPrediction {
    pub h: i64,
    pub interval: IntInterval,
    pub regime: Regime,
}

/// The two-point value `h` for each regime:
///
/// * I: `⌊ν(n, 2m) − 1/3⌋`
/// * II: `max(⌊ν̂(s) + 2/3⌋, ⌊ν̂(n) − 1/3⌋)`
/// * III: `⌊ν̂(n) + 2/3⌋`
pub fn two_point(spec: RegimeSpec) -> Result<TwoPointPrediction> {
    let RegimeSpec { n, m, regime, .. } = spec;
    let bad = |msg: String| Err(Error::InvalidArgument(msg));
    if n.is_nan() || n < 1.0 {
        return bad(format!("n must be at least 1, got {n}"));
    }
    let h = match regime {
        Regime::I => {
            if m.is_nan() || 2.0 * m < 1.0 {
                return bad(format!("regime I needs m >= 1/2, got {m}"));
            }
            (nu(NuQuery::new(n, 2.0 * m)?, DEFAULT_TOL)? - 1.0 / 3.0).floor()
        }
        Regime::II => {
            let s = spec.s();
            if s.is_nan() || s < 1.0 {
                return bad(format!("regime II needs s = m - n/2 >= 1, got {s}"));
            }
            if s > spec.o_n_fraction * n {
                return bad(format!(
                    "regime II needs s = o(n); s = {s} exceeds {} n",
                    spec.o_n_fraction
                ));
            }
            (nu_hat(s)? + 2.0 / 3.0)
                .floor()
                .max((nu_hat(n)? - 1.0 / 3.0).floor())
        }
        Regime::III => {
            let alpha = 2.0 * m / n;
            if !(alpha > 1.0 && alpha < 2.0) {
                return bad(format!("regime III needs 2m/n in (1, 2), got {alpha}"));
            }
            (nu_hat(n)? + 2.0 / 3.0).floor()
        }
        Regime::OutOfScope => return bad("no prediction outside regimes I-III".into()),
    } as i64;
    Ok(TwoPointPrediction {
        h,
        interval: IntInterval::new(h, h + 1),
        regime,
    })
}
