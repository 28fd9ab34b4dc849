//! Process-wide numerical tolerances.
//!
//! Every comparison in the crate goes through these knobs. They are read on
//! each call, so a front end can override them once at start-up (for example
//! from a `--tol` flag) and every module picks the change up.

use std::sync::RwLock;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute part of `|x - y| <= abs + rel * max(|x|, |y|)`.
    pub abs: f64,
    /// Relative part of the same test.
    pub rel: f64,
    /// Divisibility threshold: `g | f` iff `|rem| <= div * |f| * (1 + |g|)`.
    pub div: f64,
    /// Largest admissible `sigma_2 / sigma_1` for a numerically rank-one matrix.
    pub rank: f64,
    /// Residual bound for polished roots, relative to the evaluation scale.
    pub root: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        abs: 1e-9,
        rel: 1e-9,
        div: 1e-8,
        rank: 1e-8,
        root: 1e-8,
    };

    /// Same defaults with the absolute and relative equality knobs replaced.
    pub fn with_eq(self, eps: f64) -> Self {
        Tolerances {
            abs: eps,
            rel: eps,
            ..self
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

static GLOBAL: RwLock<Tolerances> = RwLock::new(Tolerances::DEFAULT);

/// Snapshot of the active tolerances.
pub fn current() -> Tolerances {
    *GLOBAL.read().unwrap_or_else(|e| e.into_inner())
}

pub fn set(t: Tolerances) {
    *GLOBAL.write().unwrap_or_else(|e| e.into_inner()) = t;
}

/// `|x - y| <= abs + rel * max(|x|, |y|)` with the active tolerances.
pub fn approx_eq(x: f64, y: f64) -> bool {
    let t = current();
    (x - y).abs() <= t.abs + t.rel * x.abs().max(y.abs())
}

/// Zero test for a quantity whose natural magnitude is `scale`.
pub fn negligible(x: f64, scale: f64) -> bool {
    let t = current();
    x.abs() <= t.abs + t.rel * scale.abs()
}
