//! Real-coefficient polynomials: the ring of slice preserving polynomials.

mod roots;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

pub use roots::{ComplexPair, RealRoot, RootSet};

/// Trailing coefficients below this fraction of the largest one are dropped.
const TRIM_REL: f64 = 1e-14;

/// A polynomial `sum c_n q^n` with real coefficients in ascending order.
///
/// The representation is canonical: the leading coefficient is nonzero, and
/// the zero polynomial has no coefficients at all.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RealPoly {
    coeffs: Vec<f64>,
}

impl RealPoly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        for c in coeffs.iter_mut() {
            // no negative zeros in canonical form
            *c += 0.0;
        }
        let max = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        while let Some(&last) = coeffs.last() {
            if last == 0.0 || last.abs() <= TRIM_REL * max {
                coeffs.pop();
            } else {
                break;
            }
        }
        RealPoly { coeffs }
    }

    pub fn zero() -> Self {
        RealPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1.0)
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// The variable `q`.
    pub fn x() -> Self {
        Self::new(vec![0.0, 1.0])
    }

    pub fn monomial(c: f64, n: usize) -> Self {
        let mut v = vec![0.0; n + 1];
        v[n] = c;
        Self::new(v)
    }

    /// `prod (q - r)` over the given real roots.
    pub fn from_real_roots(roots: &[f64]) -> Self {
        roots.iter().fold(Self::one(), |acc, &r| &acc * &Self::new(vec![-r, 1.0]))
    }

    /// `(q - alpha)^2 + beta^2`.
    pub fn sphere_factor(alpha: f64, beta: f64) -> Self {
        Self::new(vec![alpha * alpha + beta * beta, -2.0 * alpha, 1.0])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> f64 {
        self.coeffs.get(n).copied().unwrap_or(0.0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Zero under the global tolerance, measured against `scale`.
    pub fn is_negligible(&self, scale: f64) -> bool {
        tol::negligible(self.norm_inf(), scale)
    }

    /// Coefficientwise equality under the global tolerance, relative to the
    /// larger of the two norms.
    pub fn approx_eq(&self, other: &RealPoly) -> bool {
        let scale = self.norm_inf().max(other.norm_inf());
        (self - other).is_negligible(scale)
    }

    /// Euclidean inner product of coefficient vectors.
    pub fn coeff_dot(&self, other: &RealPoly) -> f64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn scale(&self, s: f64) -> RealPoly {
        RealPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn deriv(&self) -> RealPoly {
        RealPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * n as f64)
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> RealPoly {
        let mut out = RealPoly::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Multiplies by `q^n`.
    pub fn shift(&self, n: usize) -> RealPoly {
        if self.is_zero() {
            return RealPoly::zero();
        }
        let mut v = vec![0.0; n];
        v.extend_from_slice(&self.coeffs);
        RealPoly::new(v)
    }

    /// Euclidean division `self = divisor * quotient + remainder`.
    pub fn divrem(&self, divisor: &RealPoly) -> Result<(RealPoly, RealPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.lead();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((RealPoly::zero(), self.clone()));
        }
        let qlen = rem.len() - dd;
        let mut quo = vec![0.0; qlen];
        for k in (0..qlen).rev() {
            let c = rem[k + dd] / lead;
            quo[k] = c;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= c * d;
            }
            rem[k + dd] = 0.0;
        }
        rem.truncate(dd);
        Ok((RealPoly::new(quo), RealPoly::new(rem)))
    }

    /// Tolerance-based divisibility `self | f`:
    /// `|rem|_inf <= div * |f|_inf * (1 + |self|_inf)`.
    pub fn divides(&self, f: &RealPoly) -> Result<bool> {
        let (_, rem) = f.divrem(self)?;
        Ok(rem.norm_inf() <= tol::current().div * f.norm_inf() * (1.0 + self.norm_inf()))
    }

    /// `f / self` when the division is exact under the divisibility tolerance.
    pub fn exact_div_of(&self, f: &RealPoly) -> Result<Option<RealPoly>> {
        let (quo, rem) = f.divrem(self)?;
        let ok = rem.norm_inf() <= tol::current().div * f.norm_inf() * (1.0 + self.norm_inf());
        Ok(ok.then_some(quo))
    }

    /// All complex roots, paired and clustered by multiplicity.
    pub fn roots(&self) -> Result<RootSet> {
        roots::find_roots(self)
    }

    /// True iff the polynomial is nonnegative on the real line, which for a
    /// polynomial means every real root has even multiplicity and the sign
    /// away from the roots is positive.
    pub fn nonneg_even_real_zeros(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let rs = self.roots()?;
        if rs.real.iter().any(|r| r.mult % 2 == 1) {
            return Ok(false);
        }
        let xs: Vec<f64> = rs.real.iter().map(|r| r.value).collect();
        let mut samples = Vec::with_capacity(xs.len() + 1);
        match (xs.first(), xs.last()) {
            (Some(&lo), Some(&hi)) => {
                samples.push(lo - 1.0);
                samples.extend(xs.windows(2).map(|w| 0.5 * (w[0] + w[1])));
                samples.push(hi + 1.0);
            }
            _ => samples.push(0.0),
        }
        let eps = tol::current().abs;
        Ok(samples.into_iter().all(|x| {
            let scale: f64 = self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c.abs() * x.abs().powi(n as i32))
                .sum();
            self.eval(x) >= -eps * scale.max(1.0)
        }))
    }

    /// The square root with positive leading coefficient, if `self` is a
    /// perfect square.
    pub fn sqrt_if_square(&self) -> Result<Option<RealPoly>> {
        let deg = self.degree().ok_or(Error::ZeroFunction)?;
        if deg % 2 == 1 || self.lead() <= 0.0 {
            return Ok(None);
        }
        let accept = |s: &RealPoly| {
            let err = (&(s * s) - self).norm_inf();
            err <= tol::current().div * self.norm_inf()
        };
        let s = self.sqrt_by_coefficients();
        if accept(&s) {
            return Ok(Some(s));
        }
        // multiplicity halving through the root finder
        let rs = self.roots()?;
        if rs.real.iter().any(|r| r.mult % 2 == 1) || rs.complex.iter().any(|c| c.mult % 2 == 1) {
            return Ok(None);
        }
        let mut s = RealPoly::constant(self.lead().sqrt());
        for r in &rs.real {
            s = &s * &RealPoly::new(vec![-r.value, 1.0]).pow((r.mult / 2) as u32);
        }
        for c in &rs.complex {
            s = &s * &RealPoly::sphere_factor(c.alpha, c.beta).pow((c.mult / 2) as u32);
        }
        Ok(accept(&s).then_some(s))
    }

    /// Undetermined coefficients from the leading end: the polynomial part of
    /// the formal square root.
    fn sqrt_by_coefficients(&self) -> RealPoly {
        let a = &self.coeffs;
        let n = a.len() / 2;
        let mut s = vec![0.0; n + 1];
        s[n] = a[2 * n].sqrt();
        for k in (n..2 * n).rev() {
            let lo = k - n;
            let mut acc = a[k];
            for i in lo + 1..n {
                acc -= s[i] * s[k - i];
            }
            s[lo] = acc / (2.0 * s[n]);
        }
        RealPoly::new(s)
    }
}

impl Add for &RealPoly {
    type Output = RealPoly;
    fn add(self, o: &RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RealPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &RealPoly {
    type Output = RealPoly;
    fn sub(self, o: &RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RealPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &RealPoly {
    type Output = RealPoly;
    fn mul(self, o: &RealPoly) -> RealPoly {
        if self.is_zero() || o.is_zero() {
            return RealPoly::zero();
        }
        let mut v = vec![0.0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        RealPoly::new(v)
    }
}

impl Neg for &RealPoly {
    type Output = RealPoly;
    fn neg(self) -> RealPoly {
        RealPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RealPoly {
            type Output = RealPoly;
            fn $m(self, o: RealPoly) -> RealPoly {
                (&self).$m(&o)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RealPoly {
    type Output = RealPoly;
    fn neg(self) -> RealPoly {
        -&self
    }
}

impl From<f64> for RealPoly {
    fn from(c: f64) -> Self {
        RealPoly::constant(c)
    }
}

impl fmt::Display for RealPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0.0 { '-' } else { '+' })?;
            } else if c < 0.0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match n {
                0 => write!(f, "{a}")?,
                1 if a == 1.0 => write!(f, "q")?,
                1 => write!(f, "{a}*q")?,
                _ if a == 1.0 => write!(f, "q^{n}")?,
                _ => write!(f, "{a}*q^{n}")?,
            }
        }
        Ok(())
    }
}
