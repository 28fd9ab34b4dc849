//! `*`-powers and the binary forms `Q_d` deciding when a power of a function
//! preserving no slice becomes real.

use std::fmt;

use crate::error::{Error, Result};
use crate::realpoly::RealPoly;
use crate::slicepoly::{SliceClass, SlicePoly};

/// Largest degree whose binomial coefficients fit an `i128`.
pub const MAX_DEGREE: u32 = 120;
/// Agreement of `f_0^2` and `xi^2 f_v^s` after normalizing leading
/// coefficients.
pub const XI_TOL: f64 = 1e-7;

/// `C(d, k)` exactly.
pub fn binomial(d: u32, k: u32) -> i128 {
    if k > d {
        return 0;
    }
    let k = k.min(d - k);
    (0..k).fold(1i128, |acc, i| acc * (d - i) as i128 / (i + 1) as i128)
}

/// `Q_d(x, y) = sum_n (-1)^n C(d, 2n+1) x^(d-2n-1) y^(2n+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    pub degree: u32,
    /// Entry `n` multiplies `x^(d-2n-1) y^(2n+1)`.
    pub coeffs: Vec<i128>,
}

impl BinaryForm {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let d = self.degree as i32;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| {
                let n = n as i32;
                c as f64 * x.powi(d - 2 * n - 1) * y.powi(2 * n + 1)
            })
            .sum()
    }

    /// `Q_d(x, 1)`.
    pub fn dehomogenize(&self) -> RealPoly {
        let d = self.degree as usize;
        let mut c = vec![0.0; d];
        for (n, &a) in self.coeffs.iter().enumerate() {
            c[d - 2 * n - 1] = a as f64;
        }
        RealPoly::new(c)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree as usize;
        let power = |v: &str, e: usize| match e {
            0 => String::new(),
            1 => v.to_string(),
            e => format!("{v}^{e}"),
        };
        for (n, &c) in self.coeffs.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            let mag = c.unsigned_abs();
            match (n, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                _ => write!(f, " {sign} ")?,
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "{}{}", power("x", d - 2 * n - 1), power("y", 2 * n + 1))?;
        }
        Ok(())
    }
}

pub fn qd(d: u32) -> Result<BinaryForm> {
    if !(2..=MAX_DEGREE).contains(&d) {
        return Err(Error::InvalidDegree(d));
    }
    let coeffs = (0..=(d - 1) / 2)
        .map(|n| {
            let c = binomial(d, 2 * n + 1);
            if n % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    Ok(BinaryForm { degree: d, coeffs })
}

/// The nonzero finite roots of `Q_d`, as affine coordinates `x / y`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaSet {
    pub d: u32,
    /// Ascending.
    pub roots: Vec<f64>,
}

impl SigmaSet {
    pub fn expected_len(d: u32) -> usize {
        if d.is_multiple_of(2) {
            d as usize - 2
        } else {
            d as usize - 1
        }
    }
}

pub fn sigma(d: u32) -> Result<SigmaSet> {
    if d < 3 {
        return Err(Error::InvalidDegree(d));
    }
    let mut p = qd(d)?.dehomogenize();
    if d.is_multiple_of(2) {
        // x = 0 is a simple root for even d
        p = RealPoly::new(p.coeffs()[1..].to_vec());
    }
    let rs = p.roots()?;
    if !rs.complex.is_empty() || rs.real.iter().any(|r| r.mult != 1) {
        return Err(Error::RootFindingFailed(format!(
            "Q_{d} should have simple real roots only"
        )));
    }
    let mut roots: Vec<f64> = rs.real.iter().map(|r| r.value).collect();
    roots.sort_by(f64::total_cmp);
    if roots.len() != SigmaSet::expected_len(d) {
        return Err(Error::RootFindingFailed(format!(
            "found {} roots of Q_{d}",
            roots.len()
        )));
    }
    Ok(SigmaSet { d, roots })
}

/// `f^(*d)` by repeated squaring.
pub fn star_power(f: &SlicePoly, d: u32) -> SlicePoly {
    let mut acc = SlicePoly::one();
    let mut base = f.clone();
    let mut e = d;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.star_mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.star_mul(&base);
        }
    }
    acc
}

fn binomial_sum(f0: &RealPoly, fvs: &RealPoly, d: u32, odd: bool) -> RealPoly {
    let shift = odd as u32;
    let top = if odd { (d.max(1) - 1) / 2 } else { d / 2 };
    if odd && d == 0 {
        return RealPoly::zero();
    }
    let mut sum = RealPoly::zero();
    for n in 0..=top {
        let k = 2 * n + shift;
        let c = binomial(d, k) as f64 * if n % 2 == 0 { 1.0 } else { -1.0 };
        sum = &sum + &(&f0.pow(d - k) * &fvs.pow(n)).scale(c);
    }
    sum
}

/// `sum_n (-1)^n C(d, 2n+1) f_0^(d-2n-1) (f_v^s)^n`: the real multiplier of
/// `f_v` in `f^(*d)`.
pub fn power_vector_coefficient(f: &SlicePoly, d: u32) -> RealPoly {
    let fv = f.vector_part();
    binomial_sum(&f.real_part(), &fv.symmetrized(), d, true)
}

/// `f^(*d)` from the binomial expansion in `f_0` and `f_v^s`.
pub fn power_expand(f: &SlicePoly, d: u32) -> SlicePoly {
    let f0 = f.real_part();
    let fv = f.vector_part();
    let fvs = fv.symmetrized();
    let real = binomial_sum(&f0, &fvs, d, false);
    let vec = binomial_sum(&f0, &fvs, d, true);
    &SlicePoly::real(real) + &fv.mul_real(&vec)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PowerVerdict {
    /// `f^(*d)` is real. `xi` is the witness in `Sigma_d` when `f_0` is not
    /// identically zero.
    SlicePreserving { xi: Option<f64> },
    No,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerReport {
    pub verdict: PowerVerdict,
    /// Independent classification of `f^(*d)`.
    pub power_class: SliceClass,
    /// `sqrt(f_v^s)` when the verdict is positive and `f_0` is nonzero.
    pub rho: Option<RealPoly>,
}

fn monic(p: &RealPoly) -> RealPoly {
    p.scale(1.0 / p.lead())
}

/// Whether `f^(*d)` preserves every slice, for `f` preserving no slice.
pub fn power_slice_preserving(f: &SlicePoly, d: u32) -> Result<PowerReport> {
    match f.classify()? {
        SliceClass::NoSlice => {}
        c => {
            return Err(Error::PreconditionViolated(format!(
                "f must preserve no slice, but it preserves {c}"
            )))
        }
    }
    if d > MAX_DEGREE {
        return Err(Error::InvalidDegree(d));
    }
    let f0 = f.real_part();
    let fvs = f.vector_part().symmetrized();
    let mut rho = None;
    let verdict = if f0.is_negligible(f.norm_inf()) {
        // f^(*2) = -f_v^s is real
        if d.is_multiple_of(2) {
            PowerVerdict::SlicePreserving { xi: None }
        } else {
            PowerVerdict::No
        }
    } else if d == 0 {
        PowerVerdict::SlicePreserving { xi: None }
    } else if d <= 2 {
        PowerVerdict::No
    } else {
        let f0s = &f0 * &f0;
        let same_shape = f0s.degree() == fvs.degree() && {
            let diff = &monic(&f0s) - &monic(&fvs);
            diff.norm_inf() <= XI_TOL
        };
        let ratio = f0s.lead() / fvs.lead();
        let xi = same_shape
            .then(|| {
                sigma(d).map(|s| {
                    s.roots
                        .into_iter()
                        .filter(|&x| x > 0.0)
                        .find(|x| (x * x - ratio).abs() <= XI_TOL * ratio)
                })
            })
            .transpose()?
            .flatten();
        match xi {
            Some(x) => {
                let root = fvs.sqrt_if_square()?.ok_or_else(|| {
                    Error::StructureNotFound("f_0^2 = xi^2 f_v^s but f_v^s is not a square".into())
                })?;
                rho = Some(root);
                PowerVerdict::SlicePreserving {
                    xi: Some(x.copysign(f0.lead())),
                }
            }
            None => PowerVerdict::No,
        }
    };
    let power_class = star_power(f, d).classify()?;
    let agrees = matches!(
        (verdict, power_class),
        (PowerVerdict::SlicePreserving { .. }, SliceClass::AllSlices)
            | (PowerVerdict::No, SliceClass::NoSlice)
    );
    if !agrees {
        return Err(Error::StructureNotFound(format!(
            "criterion gives {verdict:?} but f^(*{d}) classifies as {power_class:?}"
        )));
    }
    Ok(PowerReport {
        verdict,
        power_class,
        rho,
    })
}
