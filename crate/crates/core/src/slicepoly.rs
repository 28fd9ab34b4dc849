//! Slice regular polynomials through their four real components.
//!
//! A polynomial `sum q^n a_n` with quaternionic right coefficients is stored
//! as `f_0 + f_1 i + f_2 j + f_3 k` with real polynomials `f_l`. The variable
//! `q` commutes with every real polynomial, so the `*`-product becomes the
//! quaternion multiplication table applied to the components.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::realpoly::RealPoly;
use crate::tol;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SlicePoly {
    c: [RealPoly; 4],
}

/// Which slices `C_J` a polynomial maps into themselves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SliceClass {
    /// Real coefficients: every slice is preserved.
    AllSlices,
    /// Exactly one slice; the axis is sign-normalized by
    /// [`ImaginaryUnit::canonical`].
    OneSlice(ImaginaryUnit),
    NoSlice,
}

impl SliceClass {
    /// Whether `C_axis` is among the preserved slices.
    pub fn preserves(&self, axis: ImaginaryUnit) -> bool {
        match self {
            SliceClass::AllSlices => true,
            SliceClass::OneSlice(u) => u.same_slice(axis),
            SliceClass::NoSlice => false,
        }
    }

    pub fn axis(&self) -> Option<ImaginaryUnit> {
        match self {
            SliceClass::OneSlice(u) => Some(*u),
            _ => None,
        }
    }
}

impl SlicePoly {
    pub fn new(c0: RealPoly, c1: RealPoly, c2: RealPoly, c3: RealPoly) -> Self {
        SlicePoly { c: [c0, c1, c2, c3] }
    }

    pub fn from_components(c: [RealPoly; 4]) -> Self {
        SlicePoly { c }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(RealPoly::one())
    }

    /// The variable `q`.
    pub fn var() -> Self {
        Self::real(RealPoly::x())
    }

    /// A slice preserving polynomial.
    pub fn real(p: RealPoly) -> Self {
        Self::new(p, RealPoly::zero(), RealPoly::zero(), RealPoly::zero())
    }

    pub fn constant(a: Quaternion) -> Self {
        Self::scaled(&RealPoly::one(), a)
    }

    /// `rho a` for real `rho` and a quaternion `a`.
    pub fn scaled(rho: &RealPoly, a: Quaternion) -> Self {
        Self::from_components(a.to_array().map(|x| rho.scale(x)))
    }

    /// `f_0 + f_1 I0`.
    pub fn in_slice(f0: RealPoly, f1: &RealPoly, i0: ImaginaryUnit) -> Self {
        &Self::real(f0) + &Self::scaled(f1, i0.quaternion())
    }

    pub fn components(&self) -> &[RealPoly; 4] {
        &self.c
    }

    pub fn component(&self, l: usize) -> &RealPoly {
        &self.c[l]
    }

    pub fn into_components(self) -> [RealPoly; 4] {
        self.c
    }

    /// Right coefficients `a_n` of `sum q^n a_n`.
    pub fn to_right_coefficients(&self) -> Vec<Quaternion> {
        let len = self.c.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
        (0..len)
            .map(|n| Quaternion::from_array(self.c.each_ref().map(|p| p.coeff(n))))
            .collect()
    }

    pub fn from_right_coefficients(a: &[Quaternion]) -> Self {
        let comp = |l: usize| RealPoly::new(a.iter().map(|q| q.to_array()[l]).collect());
        Self::new(comp(0), comp(1), comp(2), comp(3))
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.iter().filter_map(RealPoly::degree).max()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(RealPoly::is_zero)
    }

    pub fn norm_inf(&self) -> f64 {
        self.c.iter().fold(0.0, |m, p| m.max(p.norm_inf()))
    }

    /// Zero under the global tolerance, measured against `scale`.
    pub fn is_negligible(&self, scale: f64) -> bool {
        tol::negligible(self.norm_inf(), scale)
    }

    /// Componentwise equality relative to the larger of the two norms.
    pub fn approx_eq(&self, other: &SlicePoly) -> bool {
        let scale = self.norm_inf().max(other.norm_inf());
        (self - other).is_negligible(scale)
    }

    /// Largest componentwise difference divided by `max(1, |self|, |other|)`.
    pub fn rel_diff(&self, other: &SlicePoly) -> f64 {
        let scale = self.norm_inf().max(other.norm_inf()).max(1.0);
        (self - other).norm_inf() / scale
    }

    /// Pointwise product with a slice preserving polynomial.
    pub fn mul_real(&self, rho: &RealPoly) -> SlicePoly {
        Self::from_components(self.c.each_ref().map(|p| p * rho))
    }

    pub fn scale(&self, s: f64) -> SlicePoly {
        Self::from_components(self.c.each_ref().map(|p| p.scale(s)))
    }

    pub fn star_mul(&self, g: &SlicePoly) -> SlicePoly {
        let [f0, f1, f2, f3] = &self.c;
        let [g0, g1, g2, g3] = &g.c;
        let c0 = &(&(f0 * g0) - &(f1 * g1)) - &(&(f2 * g2) + &(f3 * g3));
        let c1 = &(&(f0 * g1) + &(g0 * f1)) + &(&(f2 * g3) - &(f3 * g2));
        let c2 = &(&(f0 * g2) + &(g0 * f2)) + &(&(f3 * g1) - &(f1 * g3));
        let c3 = &(&(f0 * g3) + &(g0 * f3)) + &(&(f1 * g2) - &(f2 * g1));
        Self::new(c0, c1, c2, c3)
    }

    pub fn star_conj(&self) -> SlicePoly {
        let [c0, c1, c2, c3] = &self.c;
        Self::new(c0.clone(), -c1, -c2, -c3)
    }

    /// `f^s = f * f^c = f_0^2 + f_1^2 + f_2^2 + f_3^2`.
    pub fn symmetrized(&self) -> RealPoly {
        self.pairing(self)
    }

    /// `f_0`.
    pub fn real_part(&self) -> RealPoly {
        self.c[0].clone()
    }

    /// `f_v = f_1 i + f_2 j + f_3 k`.
    pub fn vector_part(&self) -> SlicePoly {
        let [_, c1, c2, c3] = &self.c;
        Self::new(RealPoly::zero(), c1.clone(), c2.clone(), c3.clone())
    }

    /// `<f, g>_* = (f * g^c)_0`.
    pub fn pairing(&self, g: &SlicePoly) -> RealPoly {
        self.c
            .iter()
            .zip(&g.c)
            .fold(RealPoly::zero(), |acc, (a, b)| &acc + &(a * b))
    }

    /// `(f * g - g * f) / 2`, the cross product of the vector parts.
    pub fn wedge(&self, g: &SlicePoly) -> SlicePoly {
        let [_, f1, f2, f3] = &self.c;
        let [_, g1, g2, g3] = &g.c;
        Self::new(
            RealPoly::zero(),
            &(f2 * g3) - &(f3 * g2),
            &(f3 * g1) - &(f1 * g3),
            &(f1 * g2) - &(f2 * g1),
        )
    }

    /// `H_*(f, g) = f * g^c`.
    pub fn hermitian(&self, g: &SlicePoly) -> SlicePoly {
        self.star_mul(&g.star_conj())
    }

    /// `f(p) = sum p^n a_n`.
    pub fn evaluate(&self, p: Quaternion) -> Quaternion {
        self.to_right_coefficients()
            .iter()
            .rev()
            .fold(Quaternion::ZERO, |acc, &a| a + p * acc)
    }

    /// Coordinates `(f_0, f_1, f_2, f_3)` in an orthonormal basis
    /// `e_1, e_2, e_3` of `Im H`.
    pub fn coords_in(&self, basis: [ImaginaryUnit; 3]) -> [RealPoly; 4] {
        let [_, c1, c2, c3] = &self.c;
        let coord = |e: ImaginaryUnit| {
            let [x, y, z] = e.vector();
            &(&c1.scale(x) + &c2.scale(y)) + &c3.scale(z)
        };
        [self.c[0].clone(), coord(basis[0]), coord(basis[1]), coord(basis[2])]
    }

    /// Inverse of [`SlicePoly::coords_in`].
    pub fn from_coords(basis: [ImaginaryUnit; 3], c: &[RealPoly; 4]) -> SlicePoly {
        basis.iter().zip(&c[1..]).fold(Self::real(c[0].clone()), |acc, (e, p)| {
            &acc + &Self::scaled(p, e.quaternion())
        })
    }

    /// `(f_0, f_1)` with `f = f_0 + f_1 I0`, if `f` lies in `S_I0` under the
    /// global tolerance.
    pub fn slice_parts(&self, i0: ImaginaryUnit) -> Option<(RealPoly, RealPoly)> {
        let [_, c1, c2, c3] = &self.c;
        let [x, y, z] = i0.vector();
        let f1 = &(&c1.scale(x) + &c2.scale(y)) + &c3.scale(z);
        let back = Self::scaled(&f1, i0.quaternion());
        (&self.vector_part() - &back)
            .is_negligible(self.norm_inf())
            .then(|| (self.c[0].clone(), f1))
    }

    pub fn in_slice_of(&self, i0: ImaginaryUnit) -> bool {
        self.slice_parts(i0).is_some()
    }

    pub fn is_real(&self) -> bool {
        self.vector_part().is_negligible(self.norm_inf())
    }

    /// Slice preservation from the rank of the coefficient matrix of
    /// `(f_1, f_2, f_3)`: rank one means `f_v = f_1' I` for a fixed unit `I`.
    pub fn classify(&self) -> Result<SliceClass> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        if self.is_real() {
            return Ok(SliceClass::AllSlices);
        }
        let cols = self.c[1..]
            .iter()
            .map(|p| p.coeffs().len())
            .max()
            .unwrap_or(0);
        let m = DMatrix::from_fn(3, cols, |r, k| self.c[r + 1].coeff(k));
        let svd = m.clone().svd(false, false);
        let sv = &svd.singular_values;
        let top = sv.imax();
        let s1 = sv[top];
        let s2 = (0..sv.len())
            .filter(|&i| i != top)
            .map(|i| sv[i])
            .fold(0.0, f64::max);
        if s2 > tol::current().rank * s1 {
            return Ok(SliceClass::NoSlice);
        }
        // nalgebra's left singular vectors are unreliable on rank-one input,
        // so the axis comes from the dominant column, refined through M M^T
        let col = (0..cols)
            .map(|k| m.column(k).into_owned())
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .expect("nonzero");
        let u = &m * (m.transpose() * &col);
        let resid = (0..cols)
            .map(|k| {
                let c = m.column(k);
                (c - &u * (u.dot(&c) / u.norm_squared())).norm()
            })
            .fold(0.0, f64::max);
        if resid > tol::current().rank * s1 {
            return Ok(SliceClass::NoSlice);
        }
        // rounding noise in coordinates that are zero
        let scale = u.amax();
        let snap = |x: f64| if x.abs() <= 1e-14 * scale { 0.0 } else { x };
        let axis = ImaginaryUnit::from_direction(snap(u[0]), snap(u[1]), snap(u[2]))?;
        Ok(SliceClass::OneSlice(axis.canonical()))
    }

    /// Decides `f * g in S_I0` through the pairings `<f, M * g^c>_*` with `M`
    /// running over an orthonormal completion of `I0`.
    pub fn bilinear_slice_test(&self, g: &SlicePoly, i0: ImaginaryUnit) -> bool {
        let j0 = i0.orthogonal();
        let k0 = i0.quaternion() * j0.quaternion();
        let gc = g.star_conj();
        let scale = self.norm_inf() * g.norm_inf() * (1.0 + self.degree().unwrap_or(0).min(g.degree().unwrap_or(0)) as f64);
        [j0.quaternion(), k0].into_iter().all(|m| {
            let p = self.pairing(&SlicePoly::constant(m).star_mul(&gc));
            p.is_negligible(scale)
        })
    }
}

impl Add for &SlicePoly {
    type Output = SlicePoly;
    fn add(self, o: &SlicePoly) -> SlicePoly {
        SlicePoly::from_components(std::array::from_fn(|l| &self.c[l] + &o.c[l]))
    }
}

impl Sub for &SlicePoly {
    type Output = SlicePoly;
    fn sub(self, o: &SlicePoly) -> SlicePoly {
        SlicePoly::from_components(std::array::from_fn(|l| &self.c[l] - &o.c[l]))
    }
}

/// The `*`-product.
impl Mul for &SlicePoly {
    type Output = SlicePoly;
    fn mul(self, o: &SlicePoly) -> SlicePoly {
        self.star_mul(o)
    }
}

impl Neg for &SlicePoly {
    type Output = SlicePoly;
    fn neg(self) -> SlicePoly {
        SlicePoly::from_components(self.c.each_ref().map(|p| -p))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for SlicePoly {
            type Output = SlicePoly;
            fn $m(self, o: SlicePoly) -> SlicePoly {
                (&self).$m(&o)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for SlicePoly {
    type Output = SlicePoly;
    fn neg(self) -> SlicePoly {
        -&self
    }
}

impl From<RealPoly> for SlicePoly {
    fn from(p: RealPoly) -> Self {
        SlicePoly::real(p)
    }
}

impl From<Quaternion> for SlicePoly {
    fn from(a: Quaternion) -> Self {
        SlicePoly::constant(a)
    }
}

impl fmt::Display for SliceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceClass::AllSlices => write!(f, "every slice"),
            SliceClass::OneSlice(u) => write!(f, "the slice of {u}"),
            SliceClass::NoSlice => write!(f, "no slice"),
        }
    }
}

/// Prints an expression accepted by the command-line parser, for instance
/// `q^2 - 1 + (2*q)*i`.
impl fmt::Display for SlicePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, unit) in ["", "i", "j", "k"].into_iter().enumerate() {
            let p = &self.c[l];
            if p.is_zero() {
                continue;
            }
            if l == 0 {
                write!(f, "{p}")?;
            } else {
                let sep = if first { "" } else { " + " };
                if *p == RealPoly::one() {
                    write!(f, "{sep}{unit}")?;
                } else if *p == RealPoly::constant(-1.0) {
                    write!(f, "{}{unit}", if first { "-" } else { " - " })?;
                } else {
                    write!(f, "{sep}({p})*{unit}")?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> RealPoly {
        RealPoly::new(c.to_vec())
    }

    fn sp(c0: &[f64], c1: &[f64], c2: &[f64], c3: &[f64]) -> SlicePoly {
        SlicePoly::new(p(c0), p(c1), p(c2), p(c3))
    }

    fn q_minus(a: Quaternion) -> SlicePoly {
        &SlicePoly::var() - &SlicePoly::constant(a)
    }

    #[test]
    fn right_coefficients_round_trip() {
        let f = sp(&[0.0, 1.0], &[1.0], &[], &[]);
        assert_eq!(f.to_right_coefficients(), vec![Quaternion::I, Quaternion::ONE]);
        assert_eq!(SlicePoly::zero().to_right_coefficients(), vec![]);
        // (q^2, 2q, 1 - q^2, 0) <-> [j, 2i, 1 - j]
        let g = sp(&[0.0, 0.0, 1.0], &[0.0, 2.0], &[1.0, 0.0, -1.0], &[]);
        let a = vec![
            Quaternion::J,
            Quaternion::new(0.0, 2.0, 0.0, 0.0),
            Quaternion::new(1.0, 0.0, -1.0, 0.0),
        ];
        assert_eq!(g.to_right_coefficients(), a);
        assert_eq!(SlicePoly::from_right_coefficients(&a), g);
    }

    #[test]
    fn star_mul_examples() {
        let prod = q_minus(Quaternion::I).star_mul(&(&SlicePoly::var() + &SlicePoly::constant(Quaternion::I)));
        assert_eq!(prod, SlicePoly::real(p(&[1.0, 0.0, 1.0])));
        let g = sp(&[1.0, 2.0], &[0.0, 3.0], &[4.0], &[0.0, 0.0, 1.0]);
        assert_eq!(SlicePoly::one().star_mul(&g), g);
        // (q - i)*(q - j) = q^2 - q(i + j) + k
        let h = q_minus(Quaternion::I).star_mul(&q_minus(Quaternion::J));
        assert_eq!(h, sp(&[0.0, 0.0, 1.0], &[0.0, -1.0], &[0.0, -1.0], &[1.0]));
    }

    #[test]
    fn conj_symmetrized_parts() {
        let f = &SlicePoly::var() + &SlicePoly::constant(Quaternion::I);
        assert_eq!(f.star_conj(), q_minus(Quaternion::I));
        assert_eq!(f.symmetrized(), p(&[1.0, 0.0, 1.0]));
        let g = sp(&[0.0, 0.0, 1.0], &[0.0, 2.0], &[1.0], &[]);
        assert_eq!(g.vector_part(), sp(&[], &[0.0, 2.0], &[1.0], &[]));
        assert_eq!(g.real_part(), p(&[0.0, 0.0, 1.0]));
    }

    #[test]
    fn pairing_and_wedge() {
        let f = &SlicePoly::var() + &SlicePoly::constant(Quaternion::I);
        assert_eq!(f.pairing(&f), p(&[1.0, 0.0, 1.0]));
        assert!(f.wedge(&f).is_zero());
        let w = SlicePoly::constant(Quaternion::I).wedge(&SlicePoly::constant(Quaternion::J));
        assert_eq!(w, SlicePoly::constant(Quaternion::K));
    }

    #[test]
    fn hermitian_examples() {
        let f = sp(&[1.0, 1.0], &[0.0, 2.0], &[3.0], &[0.0, -1.0]);
        assert_eq!(f.hermitian(&f), SlicePoly::real(f.symmetrized()));
        let a = &SlicePoly::var() + &SlicePoly::constant(Quaternion::I);
        let b = q_minus(Quaternion::I);
        assert_eq!(a.hermitian(&b), sp(&[-1.0, 0.0, 1.0], &[0.0, 2.0], &[], &[]));
        assert_eq!(
            SlicePoly::one().hermitian(&SlicePoly::constant(Quaternion::J)),
            SlicePoly::constant(-Quaternion::J)
        );
    }

    #[test]
    fn evaluate_examples() {
        let sq = SlicePoly::real(p(&[0.0, 0.0, 1.0]));
        let v = sq.evaluate(Quaternion::new(1.0, 1.0, 0.0, 0.0));
        assert!(v.approx_eq(Quaternion::new(0.0, 2.0, 0.0, 0.0)));
        let h = q_minus(Quaternion::I).star_mul(&q_minus(Quaternion::J));
        let v = h.evaluate(Quaternion::real(2.0));
        assert!(v.approx_eq(Quaternion::new(4.0, -2.0, -2.0, 1.0)));
        let f = &SlicePoly::var() + &SlicePoly::constant(Quaternion::I);
        assert!(f.evaluate(Quaternion::I).approx_eq(Quaternion::new(0.0, 2.0, 0.0, 0.0)));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(sp(&[3.0, 1.0, 1.0], &[], &[], &[]).classify(), Ok(SliceClass::AllSlices));
        let f = &SlicePoly::var() + &SlicePoly::constant(Quaternion::I);
        match f.classify().unwrap() {
            SliceClass::OneSlice(u) => assert!(u.quaternion().approx_eq(Quaternion::I)),
            c => panic!("{c:?}"),
        }
        assert_eq!(sp(&[], &[1.0], &[0.0, 1.0], &[]).classify(), Ok(SliceClass::NoSlice));
        assert_eq!(SlicePoly::zero().classify(), Err(Error::ZeroFunction));
        // sign normalization: -2q k lands on +k
        let g = sp(&[1.0], &[], &[], &[0.0, -2.0]);
        assert_eq!(g.classify().unwrap().axis().unwrap().vector(), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn bilinear_examples() {
        let f = &SlicePoly::var() + &SlicePoly::constant(Quaternion::I);
        assert!(f.bilinear_slice_test(&q_minus(Quaternion::I), ImaginaryUnit::I));
        assert!(!f.bilinear_slice_test(&q_minus(Quaternion::J), ImaginaryUnit::I));
        let r = SlicePoly::real(p(&[1.0, 2.0]));
        let unit = ImaginaryUnit::from_direction(1.0, 2.0, -1.0).unwrap();
        assert!(r.bilinear_slice_test(&r, unit));
    }

    #[test]
    fn frame_coordinates_round_trip() {
        let f = sp(&[1.0], &[0.0, 1.0], &[2.0], &[1.0, 1.0]);
        let i0 = ImaginaryUnit::from_direction(1.0, 1.0, 0.0).unwrap();
        let j0 = i0.orthogonal();
        let k0 = ImaginaryUnit::new(i0.quaternion() * j0.quaternion()).unwrap();
        let c = f.coords_in([i0, j0, k0]);
        assert!(SlicePoly::from_coords([i0, j0, k0], &c).approx_eq(&f));
        let g = SlicePoly::in_slice(p(&[1.0, 1.0]), &p(&[0.0, 3.0]), i0);
        let (g0, g1) = g.slice_parts(i0).unwrap();
        assert_eq!(g0, p(&[1.0, 1.0]));
        assert!(g1.approx_eq(&p(&[0.0, 3.0])));
        assert!(f.slice_parts(i0).is_none());
    }

    #[test]
    fn display_is_expression_like() {
        let f = sp(&[-1.0, 0.0, 1.0], &[0.0, 2.0], &[1.0], &[-1.0]);
        assert_eq!(f.to_string(), "q^2 - 1 + (2*q)*i + j - k");
        assert_eq!(sp(&[], &[-1.0], &[], &[]).to_string(), "-i");
        assert_eq!(SlicePoly::zero().to_string(), "0");
    }
}
