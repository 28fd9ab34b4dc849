//! Zeros of slice regular polynomials.
//!
//! The zero set of `f` is a finite union of real points, isolated non-real
//! points and whole spheres `S_{alpha + I beta}`. Candidates are read off the
//! roots of the symmetrized polynomial `f^s`, which vanishes on the sphere of
//! every zero of `f`. Each candidate sphere is then resolved by peeling
//! factors from the left: spherical factors `(q - alpha)^2 + beta^2` while
//! `f` vanishes on the whole sphere, then linear factors `(q - p)` at the
//! unique zero `p` of the current quotient on that sphere.

use crate::error::{Error, Result};
use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::realpoly::RealPoly;
use crate::slicepoly::SlicePoly;

/// Restriction of `A + J B` below this fraction of the evaluation scale
/// counts as vanishing on the whole sphere.
const SPHERE_TOL: f64 = 1e-7;
/// Remainders of left division by a linear factor at a claimed zero.
const PEEL_TOL: f64 = 1e-6;
/// Admissible drift of `-A B^{-1}` from the unit sphere of `Im H`.
const UNIT_TOL: f64 = 1e-6;
/// Tolerances grow by this multiple of the relative drift that the error in
/// a computed sphere centre causes in `A` and `B`.
const DRIFT_SLACK: f64 = 16.0;
/// Relative agreement required when reassembling a square root.
const ROOT_CHECK: f64 = 1e-8;

/// `f(alpha + J beta) = A + J B` for every unit imaginary `J`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereRestriction {
    pub alpha: f64,
    pub beta: f64,
    pub a: Quaternion,
    pub b: Quaternion,
    /// `sum |a_n| |alpha + i beta|^n`, the natural magnitude of `A` and `B`.
    pub scale: f64,
}

impl SphereRestriction {
    pub fn at(&self, j: ImaginaryUnit) -> Quaternion {
        self.a + j.quaternion() * self.b
    }

    pub fn vanishes(&self) -> bool {
        self.vanishes_within(0.0)
    }

    /// [`vanishes`](Self::vanishes) when `A` and `B` may be off by `drift`
    /// times the scale.
    fn vanishes_within(&self, drift: f64) -> bool {
        let tol = SPHERE_TOL.max(DRIFT_SLACK * drift);
        self.a.norm().max(self.b.norm()) <= tol * self.scale.max(f64::MIN_POSITIVE)
    }

    /// The point `alpha + J beta` with `J = -A B^{-1}`, if `J` is a unit
    /// imaginary quaternion within tolerance.
    pub fn isolated_zero(&self) -> Option<Quaternion> {
        self.isolated_zero_within(0.0)
    }

    fn isolated_zero_within(&self, drift: f64) -> Option<Quaternion> {
        if self.b.norm() <= SPHERE_TOL * self.scale {
            return None;
        }
        let j = -(self.a * self.b.inv().ok()?);
        // errors in A and B reach J amplified by scale / |B|
        let tol = UNIT_TOL.max(DRIFT_SLACK * drift * self.scale / self.b.norm());
        if j.w.abs() > tol || (j.vector_part().norm() - 1.0).abs() > tol {
            return None;
        }
        let j = ImaginaryUnit::new(j).ok()?;
        Some(Quaternion::real(self.alpha) + j.quaternion() * self.beta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealZero {
    pub x: f64,
    pub mult: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsolatedZero {
    pub point: Quaternion,
    pub mult: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SphereZero {
    pub alpha: f64,
    pub beta: f64,
    /// Always even: twice the power of the spherical factor.
    pub spherical_mult: usize,
    pub isolated: Option<IsolatedZero>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ZeroStructure {
    pub origin_mult: usize,
    pub real_zeros: Vec<RealZero>,
    pub spheres: Vec<SphereZero>,
}

impl ZeroStructure {
    /// Half the degree of `f^s`, which equals the degree of `f`.
    pub fn total(&self) -> usize {
        self.origin_mult
            + self.real_zeros.iter().map(|r| r.mult).sum::<usize>()
            + self
                .spheres
                .iter()
                .map(|s| s.spherical_mult + s.isolated.map_or(0, |i| i.mult))
                .sum::<usize>()
    }

    pub fn has_isolated_non_real(&self) -> bool {
        self.spheres.iter().any(|s| s.isolated.is_some())
    }
}

/// `f = [(q - alpha)^2 + beta^2]^m * (q - p_1) * ... * (q - p_n) * g`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereFactorization {
    pub m: usize,
    pub points: Vec<Quaternion>,
    pub g: SlicePoly,
}

impl SphereFactorization {
    /// Multiplies the factors back together.
    pub fn reassemble(&self, alpha: f64, beta: f64) -> SlicePoly {
        let linear = self
            .points
            .iter()
            .rev()
            .fold(self.g.clone(), |acc, &p| linear_factor(p).star_mul(&acc));
        linear.mul_real(&RealPoly::sphere_factor(alpha, beta).pow(self.m as u32))
    }
}

/// `f = q^m R S h` for polynomials without isolated non-real zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Weierstrass {
    pub m: usize,
    /// Monic, vanishing exactly at the nonzero real zeros.
    pub r: RealPoly,
    /// Monic, vanishing exactly on the zero spheres.
    pub s: RealPoly,
    /// A constant for polynomials.
    pub h: SlicePoly,
}

/// `q - p`.
pub fn linear_factor(p: Quaternion) -> SlicePoly {
    &SlicePoly::var() - &SlicePoly::constant(p)
}

pub fn restrict_to_sphere(f: &SlicePoly, alpha: f64, beta: f64) -> Result<SphereRestriction> {
    if beta.is_nan() || beta <= 0.0 {
        return Err(Error::InvalidSphere(beta));
    }
    let radius = alpha.hypot(beta);
    let (mut c, mut d) = (1.0, 0.0);
    let mut a = Quaternion::ZERO;
    let mut b = Quaternion::ZERO;
    let mut scale = 0.0;
    for (n, an) in f.to_right_coefficients().into_iter().enumerate() {
        a += an * c;
        b += an * d;
        scale += an.norm() * radius.powi(n as i32);
        (c, d) = (alpha * c - beta * d, beta * c + alpha * d);
    }
    Ok(SphereRestriction {
        alpha,
        beta,
        a,
        b,
        scale,
    })
}

/// `f = (q - p) * g + r` with constant `r`, which equals `f(p)`.
pub fn left_divide_linear(f: &SlicePoly, p: Quaternion) -> (SlicePoly, Quaternion) {
    let a = f.to_right_coefficients();
    let Some((&top, rest)) = a.split_last() else {
        return (SlicePoly::zero(), Quaternion::ZERO);
    };
    let mut b = vec![Quaternion::ZERO; rest.len()];
    let mut acc = top;
    for k in (0..rest.len()).rev() {
        b[k] = acc;
        acc = rest[k] + p * acc;
    }
    (SlicePoly::from_right_coefficients(&b), acc)
}

/// Scale of `f(p)`: `sum |a_n| |p|^n`.
fn eval_scale(f: &SlicePoly, p: Quaternion) -> f64 {
    let r = p.norm();
    f.to_right_coefficients()
        .iter()
        .enumerate()
        .map(|(n, a)| a.norm() * r.powi(n as i32))
        .sum()
}

fn divide_sphere(f: &SlicePoly, alpha: f64, beta: f64) -> Result<SlicePoly> {
    let s = RealPoly::sphere_factor(alpha, beta);
    let mut out = Vec::with_capacity(4);
    for c in f.components() {
        out.push(c.divrem(&s)?.0);
    }
    Ok(SlicePoly::from_components(out.try_into().expect("four components")))
}

enum Budget {
    /// Peel while the tolerance tests allow.
    Greedy,
    /// Peel exactly this many degrees of `f^s` at the sphere.
    Exact(usize),
}

/// Relative change in `f(p)` when `p` moves by `error`.
fn drift(f: &SlicePoly, p: Quaternion, error: f64) -> f64 {
    f.degree().unwrap_or(0) as f64 * error / (1.0 + p.norm())
}

/// Peels the factors at `S_{alpha + I beta}`; `error` bounds the error in the
/// centre and widens the tolerances accordingly.
fn peel(f: &SlicePoly, alpha: f64, beta: f64, error: f64, budget: Budget) -> Result<SphereFactorization> {
    let d = drift(f, Quaternion::new(alpha, beta, 0.0, 0.0), error);
    let peel_tol = PEEL_TOL.max(DRIFT_SLACK * d);
    let inconsistent = |reason: String| Error::InconsistentSphere {
        alpha,
        beta,
        reason,
    };
    let mut g = f.clone();
    let mut m = 0;
    let mut points = Vec::new();
    let mut left = match budget {
        Budget::Greedy => usize::MAX,
        Budget::Exact(n) => n,
    };
    while left >= 2 && !g.is_zero() {
        if !restrict_to_sphere(&g, alpha, beta)?.vanishes_within(d) {
            break;
        }
        g = divide_sphere(&g, alpha, beta)?;
        m += 1;
        left -= 2;
    }
    while left >= 1 && !g.is_zero() {
        let r = restrict_to_sphere(&g, alpha, beta)?;
        let Some(p) = r.isolated_zero_within(d) else {
            if matches!(budget, Budget::Exact(_)) {
                let j = if r.b.norm() > 0.0 { -(r.a * r.b.inv()?) } else { r.a };
                return Err(inconsistent(format!(
                    "f^s vanishes on the sphere but -A B^-1 = {j} is not a unit"
                )));
            }
            break;
        };
        let (quo, rem) = left_divide_linear(&g, p);
        if rem.norm() > peel_tol * eval_scale(&g, p).max(f64::MIN_POSITIVE) {
            if matches!(budget, Budget::Exact(_)) {
                return Err(inconsistent(format!("remainder {rem} at {p}")));
            }
            break;
        }
        points.push(p);
        g = quo;
        left -= 1;
    }
    if let Budget::Exact(n) = budget {
        if left != 0 {
            return Err(inconsistent(format!(
                "peeled {} of {n} expected factors",
                n - left
            )));
        }
    }
    Ok(SphereFactorization { m, points, g })
}

/// Number of linear factors `(q - x)` that divide `f`, for real `x`.
fn real_multiplicity(f: &SlicePoly, x: f64, error: f64, expected: usize) -> Result<(usize, SlicePoly)> {
    let tol = PEEL_TOL.max(DRIFT_SLACK * drift(f, Quaternion::real(x), error));
    let mut g = f.clone();
    for k in 0..expected {
        let (quo, rem) = left_divide_linear(&g, Quaternion::real(x));
        if rem.norm() > tol * eval_scale(&g, Quaternion::real(x)).max(f64::MIN_POSITIVE) {
            return Err(Error::InconsistentSphere {
                alpha: x,
                beta: 0.0,
                reason: format!("real zero of f^s with multiplicity {} but f has {k}", 2 * expected),
            });
        }
        g = quo;
    }
    Ok((expected, g))
}

pub fn zero_structure(f: &SlicePoly) -> Result<ZeroStructure> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let roots = f.symmetrized().roots()?;
    let mut out = ZeroStructure::default();
    for r in &roots.real {
        if r.mult % 2 == 1 {
            return Err(Error::InconsistentSphere {
                alpha: r.value,
                beta: 0.0,
                reason: format!("real zero of f^s with odd multiplicity {}", r.mult),
            });
        }
        let (k, _) = real_multiplicity(f, r.value, r.error, r.mult / 2)?;
        if r.value == 0.0 {
            out.origin_mult = k;
        } else {
            out.real_zeros.push(RealZero { x: r.value, mult: k });
        }
    }
    for c in &roots.complex {
        let fac = peel(f, c.alpha, c.beta, c.error, Budget::Exact(c.mult))?;
        out.spheres.push(SphereZero {
            alpha: c.alpha,
            beta: c.beta,
            spherical_mult: 2 * fac.m,
            isolated: fac.points.first().map(|&point| IsolatedZero {
                point,
                mult: fac.points.len(),
            }),
        });
    }
    Ok(out)
}

/// Splits off every zero of `f` on the sphere `S_{alpha + I beta}`.
pub fn factor_sphere(f: &SlicePoly, alpha: f64, beta: f64) -> Result<SphereFactorization> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if beta.is_nan() || beta <= 0.0 {
        return Err(Error::InvalidSphere(beta));
    }
    peel(f, alpha, beta, 0.0, Budget::Greedy)
}

pub fn polynomial_weierstrass(f: &SlicePoly) -> Result<Weierstrass> {
    let zs = zero_structure(f)?;
    if zs.has_isolated_non_real() {
        return Err(Error::HasIsolatedNonRealZeros);
    }
    let r = zs
        .real_zeros
        .iter()
        .fold(RealPoly::one(), |acc, z| &acc * &RealPoly::from_real_roots(&[z.x]).pow(z.mult as u32));
    let s = zs.spheres.iter().fold(RealPoly::one(), |acc, z| {
        &acc * &RealPoly::sphere_factor(z.alpha, z.beta).pow((z.spherical_mult / 2) as u32)
    });
    let denom = &(&RealPoly::monomial(1.0, zs.origin_mult) * &r) * &s;
    let mut h = Vec::with_capacity(4);
    for c in f.components() {
        h.push(c.divrem(&denom)?.0);
    }
    Ok(Weierstrass {
        m: zs.origin_mult,
        r,
        s,
        h: SlicePoly::from_components(h.try_into().expect("four components")),
    })
}

/// Some `h` in `S_I0` with `h^s = mu`, built from the roots of `mu` with every
/// linear factor vanishing in the upper half plane of `C_I0`.
pub fn symmetrized_root(mu: &RealPoly, i0: ImaginaryUnit) -> Result<SlicePoly> {
    if mu.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if !mu.nonneg_even_real_zeros()? {
        return Err(Error::NotRepresentable(format!(
            "{mu} is negative somewhere on the real line or has a real zero of odd order"
        )));
    }
    let roots = mu.roots()?;
    let mut h = SlicePoly::constant(Quaternion::real(mu.lead().sqrt()));
    for r in &roots.real {
        h = h.mul_real(&RealPoly::from_real_roots(&[r.value]).pow((r.mult / 2) as u32));
    }
    for c in &roots.complex {
        let p = Quaternion::real(c.alpha) + i0.quaternion() * c.beta;
        for _ in 0..c.mult {
            h = h.star_mul(&linear_factor(p));
        }
    }
    let err = (&h.symmetrized() - mu).norm_inf();
    if err > ROOT_CHECK * mu.norm_inf() {
        return Err(Error::RootFindingFailed(format!(
            "square root check failed with error {err:e}"
        )));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> RealPoly {
        RealPoly::new(c.to_vec())
    }

    fn lin(a: Quaternion) -> SlicePoly {
        linear_factor(a)
    }

    fn sphere01() -> SlicePoly {
        SlicePoly::real(p(&[1.0, 0.0, 1.0]))
    }

    #[test]
    fn restriction_examples() {
        let r = restrict_to_sphere(&sphere01(), 0.0, 1.0).unwrap();
        assert!(r.vanishes());
        let r = restrict_to_sphere(&lin(Quaternion::I), 0.0, 1.0).unwrap();
        assert!(r.a.approx_eq(-Quaternion::I) && r.b.approx_eq(Quaternion::ONE));
        assert_eq!(r.isolated_zero(), Some(Quaternion::I));
        let r = restrict_to_sphere(&lin(Quaternion::real(2.0)), 0.0, 1.0).unwrap();
        assert!(r.a.approx_eq(Quaternion::real(-2.0)) && r.b.approx_eq(Quaternion::ONE));
        assert_eq!(r.isolated_zero(), None);
        assert_eq!(
            restrict_to_sphere(&sphere01(), 0.0, 0.0),
            Err(Error::InvalidSphere(0.0))
        );
    }

    #[test]
    fn restriction_matches_evaluation() {
        let f = lin(Quaternion::I).star_mul(&lin(Quaternion::new(1.0, 0.0, 2.0, -1.0)));
        let r = restrict_to_sphere(&f, 0.5, 1.5).unwrap();
        let third = 1.0 / 3f64.sqrt();
        for j in [
            ImaginaryUnit::I,
            ImaginaryUnit::J,
            ImaginaryUnit::K,
            ImaginaryUnit::from_direction(third, third, third).unwrap(),
        ] {
            let x = Quaternion::real(0.5) + j.quaternion() * 1.5;
            assert!((f.evaluate(x) - r.at(j)).norm() < 1e-12);
        }
    }

    #[test]
    fn left_division_examples() {
        let (g, r) = left_divide_linear(&sphere01(), Quaternion::I);
        assert!(g.approx_eq(&(&SlicePoly::var() + &SlicePoly::constant(Quaternion::I))));
        assert_eq!(r, Quaternion::ZERO);
        let (g, r) = left_divide_linear(&lin(Quaternion::J), Quaternion::I);
        assert_eq!(g, SlicePoly::one());
        assert!(r.approx_eq(Quaternion::new(0.0, 1.0, -1.0, 0.0)));
        let (g, r) = left_divide_linear(&SlicePoly::var(), Quaternion::ZERO);
        assert_eq!((g, r), (SlicePoly::one(), Quaternion::ZERO));
    }

    #[test]
    fn structure_examples() {
        let f = sphere01().star_mul(&lin(Quaternion::J));
        let zs = zero_structure(&f).unwrap();
        assert_eq!(zs.spheres.len(), 1);
        let s = &zs.spheres[0];
        assert_eq!(s.spherical_mult, 2);
        let iso = s.isolated.unwrap();
        assert_eq!(iso.mult, 1);
        assert!(iso.point.approx_eq(Quaternion::J));

        let zs = zero_structure(&SlicePoly::real(p(&[0.0, 0.0, 1.0]))).unwrap();
        assert_eq!(zs.origin_mult, 2);
        assert!(zs.spheres.is_empty() && zs.real_zeros.is_empty());

        let f = lin(Quaternion::I).star_mul(&lin(-Quaternion::I));
        let zs = zero_structure(&f).unwrap();
        assert_eq!(zs.spheres[0].spherical_mult, 2);
        assert_eq!(zs.spheres[0].isolated, None);
        assert_eq!(zero_structure(&SlicePoly::zero()), Err(Error::ZeroFunction));
    }

    #[test]
    fn repeated_isolated_and_real() {
        // (q - i)*(q - i)*(q - 3)^2
        let f = lin(Quaternion::I)
            .star_mul(&lin(Quaternion::I))
            .mul_real(&p(&[-3.0, 1.0]).pow(2));
        let zs = zero_structure(&f).unwrap();
        assert_eq!(zs.real_zeros.len(), 1);
        assert_eq!(zs.real_zeros[0].mult, 2);
        assert_eq!(zs.spheres[0].spherical_mult, 0);
        assert_eq!(zs.spheres[0].isolated.unwrap().mult, 2);
        assert_eq!(zs.total(), 4);
    }

    #[test]
    fn factor_examples() {
        let f = sphere01().pow_real(2).star_mul(&lin(Quaternion::I));
        let fac = factor_sphere(&f, 0.0, 1.0).unwrap();
        assert_eq!(fac.m, 2);
        assert_eq!(fac.points.len(), 1);
        assert!(fac.points[0].approx_eq(Quaternion::I));
        assert!(fac.g.approx_eq(&SlicePoly::one()));

        let f = lin(Quaternion::real(2.0));
        let fac = factor_sphere(&f, 0.0, 1.0).unwrap();
        assert_eq!((fac.m, fac.points.len()), (0, 0));
        assert_eq!(fac.g, f);

        let f = lin(Quaternion::I).star_mul(&lin(Quaternion::J));
        let fac = factor_sphere(&f, 0.0, 1.0).unwrap();
        assert_eq!(fac.m, 0);
        assert_eq!(fac.points.len(), 2);
        assert!(fac.points[0].approx_eq(Quaternion::I));
        assert!(fac.points[1].approx_eq(Quaternion::J));
        assert!(fac.g.approx_eq(&SlicePoly::one()));
        assert!(fac.reassemble(0.0, 1.0).approx_eq(&f));
    }

    #[test]
    fn weierstrass_examples() {
        let rho = &(&RealPoly::monomial(1.0, 2) * &p(&[-1.0, 1.0])) * &p(&[1.0, 0.0, 1.0]);
        let f = SlicePoly::scaled(&rho, Quaternion::K);
        let w = polynomial_weierstrass(&f).unwrap();
        assert_eq!(w.m, 2);
        assert!(w.r.approx_eq(&p(&[-1.0, 1.0])));
        assert!(w.s.approx_eq(&p(&[1.0, 0.0, 1.0])));
        assert!(w.h.approx_eq(&SlicePoly::constant(Quaternion::K)));

        let c = SlicePoly::constant(Quaternion::new(1.0, 2.0, 0.0, 0.0));
        let w = polynomial_weierstrass(&c).unwrap();
        assert_eq!((w.m, w.r.clone(), w.s.clone()), (0, RealPoly::one(), RealPoly::one()));
        assert_eq!(w.h, c);

        assert_eq!(
            polynomial_weierstrass(&lin(Quaternion::I)),
            Err(Error::HasIsolatedNonRealZeros)
        );
    }

    #[test]
    fn symmetrized_root_examples() {
        let mu = p(&[1.0, 0.0, 1.0]);
        let h = symmetrized_root(&mu, ImaginaryUnit::I).unwrap();
        assert!(h.symmetrized().approx_eq(&mu));
        assert!(h.approx_eq(&lin(Quaternion::I)));
        // q + I0 for the opposite unit
        let h = symmetrized_root(&mu, -ImaginaryUnit::I).unwrap();
        assert!(h.approx_eq(&(&SlicePoly::var() + &SlicePoly::constant(Quaternion::I))));

        let h = symmetrized_root(&p(&[0.0, 0.0, 1.0]), ImaginaryUnit::J).unwrap();
        assert!(h.approx_eq(&SlicePoly::var()));
        assert!(matches!(
            symmetrized_root(&RealPoly::x(), ImaginaryUnit::I),
            Err(Error::NotRepresentable(_))
        ));
    }

    impl SlicePoly {
        fn pow_real(&self, n: u32) -> SlicePoly {
            (0..n).fold(SlicePoly::one(), |acc, _| acc.star_mul(self))
        }
    }
}
