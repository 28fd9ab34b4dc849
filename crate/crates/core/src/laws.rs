//! Slice preservation under sums, `*`-products and conjugation `h * f * h^c`.
//!
//! Every existence question is answered by classifying a computed product;
//! the structural characterizations are then built explicitly and checked by
//! reassembly. Solvers return one solution and verify it by conjugating back.

use crate::error::{Error, Result};
use crate::quaternion::{adapted_frame, Frame, ImaginaryUnit, Quaternion};
use crate::realpoly::RealPoly;
use crate::slicepoly::{SliceClass, SlicePoly};
use crate::tol;
use crate::zeros::symmetrized_root;

/// Agreement required between the closed conjugation formula and the direct
/// triple product.
const FORMULA_TOL: f64 = 1e-9;
/// Agreement required when a solver conjugates its answer back.
const SOLVE_TOL: f64 = 1e-7;

/// Sign choice in `(a +- 1) / b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    PlusOne,
    MinusOne,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::PlusOne, Branch::MinusOne];

    /// `(a +- 1) / b`.
    pub fn t(self, frame: &Frame) -> f64 {
        match self {
            Branch::PlusOne => (frame.a + 1.0) / frame.b,
            Branch::MinusOne => (frame.a - 1.0) / frame.b,
        }
    }

    /// `1 - t K0`.
    pub fn left_factor(self, frame: &Frame) -> Quaternion {
        Quaternion::ONE - frame.k0.quaternion() * self.t(frame)
    }

    /// `1 + t K0`.
    pub fn right_factor(self, frame: &Frame) -> Quaternion {
        self.left_factor(frame).conj()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConjugatorForm {
    /// `h = (1 - t K0) * g`.
    Twisted { frame: Frame, branch: Branch },
    /// `h = J0 * g` with `J0` orthogonal to `I0`.
    Orthogonal { j0: ImaginaryUnit },
}

/// Structure of a conjugator `h` taking a one-slice preserving `f` into
/// `S_M0`, with `g` in `S_I0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugationWitness {
    pub i0: ImaginaryUnit,
    pub m0: ImaginaryUnit,
    pub form: ConjugatorForm,
    pub g: SlicePoly,
}

impl ConjugationWitness {
    pub fn reassemble(&self) -> SlicePoly {
        let left = match &self.form {
            ConjugatorForm::Twisted { frame, branch } => branch.left_factor(frame),
            ConjugatorForm::Orthogonal { j0 } => j0.quaternion(),
        };
        SlicePoly::constant(left).star_mul(&self.g)
    }
}

/// `f * h in S_K0` with `K0 = a I0 + b J0 + eps I0 ^ J0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductWitness {
    pub k0: ImaginaryUnit,
    pub a: f64,
    pub b: f64,
    pub eps: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TwistCase {
    /// Both factors already lie in `S_I0`.
    SameSlice,
    /// `f = f~ * K0`, `h = J0 * h~`.
    SameSliceOrthogonal { j0: ImaginaryUnit, k0: ImaginaryUnit },
    /// `f = f~ * (1 + t K0)`, `h = (1 - t K0) * h~`.
    DifferentSlice { frame: Frame, branch: Branch },
}

/// Factors `f`, `h` with `f * h` in `S_I0` and `h * f` in `S_M0`, written
/// through `f~`, `h~` in `S_I0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedPair {
    pub i0: ImaginaryUnit,
    pub m0: ImaginaryUnit,
    pub f_tilde: SlicePoly,
    pub h_tilde: SlicePoly,
    pub case: TwistCase,
    /// `alpha` with `f = alpha I` when `f` itself preserves the slice `C_I`
    /// orthogonal to `I0`.
    pub alpha: Option<(RealPoly, ImaginaryUnit)>,
}

impl TwistedPair {
    pub fn reassemble(&self) -> (SlicePoly, SlicePoly) {
        match &self.case {
            TwistCase::SameSlice => (self.f_tilde.clone(), self.h_tilde.clone()),
            TwistCase::SameSliceOrthogonal { j0, k0 } => (
                self.f_tilde.star_mul(&SlicePoly::constant(k0.quaternion())),
                SlicePoly::constant(j0.quaternion()).star_mul(&self.h_tilde),
            ),
            TwistCase::DifferentSlice { frame, branch } => (
                self.f_tilde
                    .star_mul(&SlicePoly::constant(branch.right_factor(frame))),
                SlicePoly::constant(branch.left_factor(frame)).star_mul(&self.h_tilde),
            ),
        }
    }
}

/// `h * f * h^c`, computed twice: by two `*`-products and by the closed
/// formula in terms of real and vector parts.
pub fn conjugate_by(h: &SlicePoly, f: &SlicePoly) -> Result<SlicePoly> {
    let direct = h.star_mul(f).star_mul(&h.star_conj());
    let closed = conjugate_closed(h, f);
    let err = direct.rel_diff(&closed);
    let scale = h.norm_inf().powi(2) * f.norm_inf();
    if err > FORMULA_TOL * scale.max(1.0) / direct.norm_inf().max(1.0) && err > FORMULA_TOL {
        return Err(Error::FormulaMismatch(err));
    }
    Ok(direct)
}

/// `f_0 h^s + <h_v, f_v> h_v + h_0^2 f_v + 2 h_0 h_v ^ f_v - (h_v ^ f_v) ^ h_v`.
pub fn conjugate_closed(h: &SlicePoly, f: &SlicePoly) -> SlicePoly {
    let (h0, hv) = (h.real_part(), h.vector_part());
    let (f0, fv) = (f.real_part(), f.vector_part());
    let w = hv.wedge(&fv);
    let scalar = SlicePoly::real(&f0 * &h.symmetrized());
    let terms = [
        hv.mul_real(&hv.pairing(&fv)),
        fv.mul_real(&(&h0 * &h0)),
        w.mul_real(&h0.scale(2.0)),
        -w.wedge(&hv),
    ];
    terms.iter().fold(scalar, |acc, t| &acc + t)
}

/// Whether `h * f * h^c = h^c * f * h`, decided by computing both sides.
pub fn commuting_conjugates(f: &SlicePoly, h: &SlicePoly) -> Result<bool> {
    let a = conjugate_by(h, f)?;
    let b = conjugate_by(&h.star_conj(), f)?;
    let scale = h.norm_inf().powi(2) * f.norm_inf();
    Ok((&a - &b).is_negligible(scale))
}

/// `h_0 = 0` or `h_v ^ f_v = 0`: the structural form of
/// [`commuting_conjugates`].
pub fn commuting_predicate(f: &SlicePoly, h: &SlicePoly) -> bool {
    h.real_part().is_negligible(h.norm_inf())
        || h
            .vector_part()
            .wedge(&f.vector_part())
            .is_negligible(h.norm_inf() * f.norm_inf())
}

/// `lambda` with `p = lambda q`, for nonzero `q`.
fn proportional(p: &RealPoly, q: &RealPoly) -> Option<f64> {
    let qq = q.coeff_dot(q);
    if qq == 0.0 {
        return None;
    }
    let lambda = p.coeff_dot(q) / qq;
    let scale = p.norm_inf().max(q.norm_inf() * lambda.abs());
    (p - &q.scale(lambda)).is_negligible(scale).then_some(lambda)
}

/// `(I, f_0, f_1)` with `f = f_0 + f_1 I` and `f` not slice preserving.
fn one_slice_parts(f: &SlicePoly, name: &str) -> Result<(ImaginaryUnit, RealPoly, RealPoly)> {
    match f.classify()? {
        SliceClass::OneSlice(i) => {
            let (f0, f1) = f.slice_parts(i).ok_or_else(|| {
                Error::StructureNotFound(format!("{name} classified into a slice it does not lie in"))
            })?;
            Ok((i, f0, f1))
        }
        c => Err(Error::PreconditionViolated(format!(
            "{name} must preserve exactly one slice, but it preserves {c}"
        ))),
    }
}

fn distinct_slices(
    f: &SlicePoly,
    h: &SlicePoly,
) -> Result<(ImaginaryUnit, RealPoly, RealPoly, ImaginaryUnit, RealPoly, RealPoly)> {
    let (i0, f0, f1) = one_slice_parts(f, "f")?;
    let (j0, h0, h1) = one_slice_parts(h, "h")?;
    if i0.same_slice(j0) {
        return Err(Error::PreconditionViolated(
            "f and h preserve the same slice".into(),
        ));
    }
    Ok((i0, f0, f1, j0, h0, h1))
}

/// The slice `C_K0` preserved by `f + h`, for `f` in `S_I0` and `h` in
/// `S_J0` with distinct slices.
pub fn sum_preserved_slice(f: &SlicePoly, h: &SlicePoly) -> Result<Option<ImaginaryUnit>> {
    let (i0, _, f1, j0, _, h1) = distinct_slices(f, h)?;
    // b f1 = a h1 with a = 1
    let k0 = match proportional(&h1, &f1) {
        Some(b) if b != 0.0 => {
            let v = i0.quaternion() + j0.quaternion() * b;
            Some(ImaginaryUnit::from_direction(v.x, v.y, v.z)?.canonical())
        }
        _ => None,
    };
    let class = (f + h).classify()?;
    match (k0, class) {
        (Some(k), c) if c.preserves(k) && c != SliceClass::AllSlices => Ok(Some(k)),
        (None, SliceClass::NoSlice) => Ok(None),
        (k, c) => Err(Error::StructureNotFound(format!(
            "sum criterion gives {k:?} but f + h classifies as {c:?}"
        ))),
    }
}

/// The slice preserved by `f * h`, for `f` in `S_I0` and `h` in `S_J0` with
/// distinct slices: it exists iff `f_0 / f_1` and `h_0 / h_1` are constants.
pub fn product_preserved_slice(f: &SlicePoly, h: &SlicePoly) -> Result<Option<ProductWitness>> {
    let (i0, f0, f1, j0, h0, h1) = distinct_slices(f, h)?;
    let witness = match (proportional(&f0, &f1), proportional(&h0, &h1)) {
        (Some(lambda), Some(mu)) => {
            let v = i0.quaternion() * mu
                + j0.quaternion() * lambda
                + i0.quaternion().cross(j0.quaternion());
            let mut eps = 1.0 / v.norm();
            let mut k0 = ImaginaryUnit::new(v * eps)?;
            if k0.canonical() != k0 {
                k0 = -k0;
                eps = -eps;
            }
            Some(ProductWitness {
                k0,
                // + 0.0 keeps zero coefficients unsigned
                a: mu * eps + 0.0,
                b: lambda * eps + 0.0,
                eps,
            })
        }
        _ => None,
    };
    let class = f.star_mul(h).classify()?;
    match (witness, class) {
        (Some(w), c) if c.preserves(w.k0) && c != SliceClass::AllSlices => Ok(Some(w)),
        (None, SliceClass::NoSlice) => Ok(None),
        (w, c) => Err(Error::StructureNotFound(format!(
            "product criterion gives {w:?} but f * h classifies as {c:?}"
        ))),
    }
}

pub fn conjugation_classify(h: &SlicePoly, f: &SlicePoly) -> Result<SliceClass> {
    conjugate_by(h, f)?.classify()
}

/// Unit orthogonal to `i0` along the largest coefficient of `p` projected
/// off `i0`; ties go to the higher degree.
fn orthogonal_direction(p: &SlicePoly, i0: ImaginaryUnit) -> Option<ImaginaryUnit> {
    let u = i0.quaternion();
    let mut best: Option<Quaternion> = None;
    for a in p.to_right_coefficients().into_iter().rev() {
        let v = a.vector_part();
        let w = v - u * v.dot(u);
        if best.is_none_or(|b| w.norm() > b.norm() * (1.0 + 1e-9)) {
            best = Some(w);
        }
    }
    let w = best?;
    if w.norm() <= tol::current().abs * p.norm_inf().max(1.0) {
        return None;
    }
    ImaginaryUnit::from_direction(w.x, w.y, w.z).ok()
}

/// The form of `h` when `h * f * h^c` lies in `S_M0`, for `f` in `S_I0`
/// not slice preserving and `h` outside `S_I0`.
pub fn conjugator_structure(
    f: &SlicePoly,
    h: &SlicePoly,
    m0: ImaginaryUnit,
) -> Result<ConjugationWitness> {
    let (i0, _, _) = one_slice_parts(f, "f")?;
    if h.is_zero() || h.in_slice_of(i0) {
        return Err(Error::PreconditionViolated(
            "h must not lie in the slice of f".into(),
        ));
    }
    let class = conjugation_classify(h, f)?;
    if !class.preserves(m0) || class == SliceClass::AllSlices {
        return Err(Error::PreconditionViolated(format!(
            "h * f * h^c preserves {class}, not the slice of {m0}"
        )));
    }
    let witness = |form: ConjugatorForm, g: SlicePoly| ConjugationWitness { i0, m0, form, g };
    if m0.same_slice(i0) {
        let j0 = orthogonal_direction(h, i0)
            .ok_or_else(|| Error::StructureNotFound("h has no part orthogonal to I0".into()))?;
        let g = SlicePoly::constant(-j0.quaternion()).star_mul(h);
        if g.in_slice_of(i0) {
            return Ok(witness(ConjugatorForm::Orthogonal { j0 }, g));
        }
        return Err(Error::StructureNotFound(
            "J0^-1 * h does not lie in S_I0".into(),
        ));
    }
    let frame = adapted_frame(i0, m0, false)?;
    for branch in Branch::BOTH {
        let u = branch.left_factor(&frame);
        let g = SlicePoly::constant(u.inv()?).star_mul(h);
        if g.in_slice_of(i0) {
            return Ok(witness(ConjugatorForm::Twisted { frame, branch }, g));
        }
    }
    Err(Error::StructureNotFound(
        "neither branch of the twisted form reassembles h".into(),
    ))
}

fn exact_div(num: &RealPoly, den: &RealPoly) -> Result<Option<RealPoly>> {
    if num.is_negligible(den.norm_inf()) {
        return Ok(Some(RealPoly::zero()));
    }
    if den.is_zero() {
        return Ok(None);
    }
    den.exact_div_of(num)
}

fn sqrt_or_zero(p: &RealPoly) -> Result<Option<RealPoly>> {
    if p.is_zero() {
        return Ok(Some(RealPoly::zero()));
    }
    p.sqrt_if_square()
}

fn verified(h: SlicePoly, f: &SlicePoly, g: &SlicePoly) -> Result<Option<SlicePoly>> {
    let back = conjugate_by(&h, f)?;
    Ok((back.rel_diff(g) <= SOLVE_TOL).then_some(h))
}

/// `alpha` with `g = alpha f` for real `alpha`.
fn real_quotient(g: &SlicePoly, f: &SlicePoly) -> Result<Option<RealPoly>> {
    let l = (0..4)
        .max_by(|&a, &b| f.component(a).norm_inf().total_cmp(&f.component(b).norm_inf()))
        .expect("four components");
    let Some(alpha) = exact_div(g.component(l), f.component(l))? else {
        return Ok(None);
    };
    Ok(f.mul_real(&alpha).approx_eq(g).then_some(alpha))
}

/// Some `h` in `S_M0` with `h * f * h^c = g`, for `f` in `S_I0`.
pub fn solve_conjugation_h(
    f: &SlicePoly,
    m0: ImaginaryUnit,
    g: &SlicePoly,
) -> Result<Option<SlicePoly>> {
    let i0 = match f.classify()? {
        SliceClass::AllSlices => m0,
        SliceClass::OneSlice(i) => i,
        SliceClass::NoSlice => {
            return Err(Error::PreconditionViolated(
                "f must preserve a slice".into(),
            ))
        }
    };
    if g.is_zero() {
        return Ok(Some(SlicePoly::zero()));
    }
    if i0.same_slice(m0) {
        // h * f * h^c = h^s f
        let Some(alpha) = real_quotient(g, f)? else {
            return Ok(None);
        };
        if alpha.is_zero() || !alpha.nonneg_even_real_zeros()? {
            return Ok(None);
        }
        let h = symmetrized_root(&alpha, m0)?;
        return verified(h, f, g);
    }

    let frame = adapted_frame(i0, m0, false)?;
    let basis = [frame.i0, frame.j0, frame.k0];
    let [f0, f1, _, _] = f.coords_in(basis);
    let [g0, g1, g2, g3] = g.coords_in(basis);
    let (a, b) = (frame.a, frame.b);
    let Some(a1) = exact_div(&g1, &f1)? else { return Ok(None) };
    let Some(a2) = exact_div(&g2, &f1)? else { return Ok(None) };
    let Some(a3) = exact_div(&g3, &f1)? else { return Ok(None) };
    let orthogonal = a.abs() <= tol::current().abs;

    let (h0, h1) = if orthogonal {
        if !a2.is_negligible(g.norm_inf()) {
            return Ok(None);
        }
        let a0 = if f0.is_negligible(f.norm_inf()) {
            if !g0.is_negligible(g.norm_inf()) {
                return Ok(None);
            }
            match sqrt_or_zero(&(&(&a1 * &a1) + &(&a3 * &a3)))? {
                Some(s) => s,
                None => return Ok(None),
            }
        } else {
            match exact_div(&g0, &f0)? {
                Some(q) => q,
                None => return Ok(None),
            }
        };
        let u = (&a0 + &a1).scale(0.5);
        let v = (&a0 - &a1).scale(0.5);
        let (Some(h0), Some(h1)) = (sqrt_or_zero(&u)?, sqrt_or_zero(&v)?) else {
            return Ok(None);
        };
        // sign of h1 from a3 = -2 h0 h1
        let cand = (&h0 * &h1).scale(-2.0);
        let h1 = if (&cand - &a3).norm_inf() <= (&cand + &a3).norm_inf() { h1 } else { -h1 };
        (h0, h1)
    } else {
        let a0 = if f0.is_negligible(f.norm_inf()) {
            if !g0.is_negligible(g.norm_inf()) {
                return Ok(None);
            }
            &a1 + &a2.scale(b / a)
        } else {
            match exact_div(&g0, &f0)? {
                Some(q) => q,
                None => return Ok(None),
            }
        };
        // a (a0 - a1) = b a2 and 2ab a1 a2 = a^2 a3^2 + (2a^2 - 1) a2^2
        let c54 = &(&a0 - &a1).scale(a) - &a2.scale(b);
        let c55 = &(&(&a1 * &a2).scale(2.0 * a * b) - &(&a3 * &a3).scale(a * a))
            - &(&a2 * &a2).scale(2.0 * a * a - 1.0);
        let scale = a0.norm_inf().max(a1.norm_inf()).max(a2.norm_inf()).max(a3.norm_inf());
        if !c54.is_negligible(scale) || !c55.is_negligible(scale * scale) {
            return Ok(None);
        }
        if a2.is_negligible(scale) {
            match sqrt_or_zero(&a1)? {
                Some(h0) => (h0, RealPoly::zero()),
                None => return Ok(None),
            }
        } else {
            let Some(h1) = a2.scale(1.0 / (2.0 * a * b)).sqrt_if_square()? else {
                return Ok(None);
            };
            let Some(h0) = exact_div(&a3, &h1.scale(-2.0 * b))? else {
                return Ok(None);
            };
            (h0, h1)
        }
    };
    verified(SlicePoly::in_slice(h0, &h1, m0), f, g)
}

/// Some `f` in `S_I0` with `h * f * h^c = g`, for `h` in `S_M0` not slice
/// preserving.
pub fn solve_conjugation_f(
    h: &SlicePoly,
    i0: ImaginaryUnit,
    g: &SlicePoly,
) -> Result<Option<SlicePoly>> {
    let (m0, h0, h1) = one_slice_parts(h, "h")?;
    let hs = h.symmetrized();
    if g.is_zero() {
        return Ok(Some(SlicePoly::zero()));
    }
    if i0.same_slice(m0) {
        if !g.in_slice_of(i0) {
            return Ok(None);
        }
        let mut comps = Vec::with_capacity(4);
        for c in g.components() {
            match exact_div(c, &hs)? {
                Some(q) => comps.push(q),
                None => return Ok(None),
            }
        }
        let f = SlicePoly::from_components(comps.try_into().expect("four components"));
        return verified_f(h, f, g);
    }
    let frame = adapted_frame(i0, m0, false)?;
    let basis = [frame.i0, frame.j0, frame.k0];
    let [g0, g1, g2, g3] = g.coords_in(basis);
    let (a, b) = (frame.a, frame.b);
    let Some(f0) = exact_div(&g0, &hs)? else { return Ok(None) };
    let orthogonal = a.abs() <= tol::current().abs;
    let f1 = if orthogonal {
        if !g2.is_negligible(g.norm_inf()) {
            return Ok(None);
        }
        if h0.is_negligible(h.norm_inf()) {
            exact_div(&-&g1, &(&h1 * &h1))?
        } else {
            exact_div(&g3, &(&h0 * &h1).scale(-2.0))?
        }
    } else {
        exact_div(&g2, &(&h1 * &h1).scale(2.0 * a * b))?
    };
    let Some(f1) = f1 else { return Ok(None) };
    verified_f(h, SlicePoly::in_slice(f0, &f1, frame.i0), g)
}

fn verified_f(h: &SlicePoly, f: SlicePoly, g: &SlicePoly) -> Result<Option<SlicePoly>> {
    let back = conjugate_by(h, &f)?;
    Ok((back.rel_diff(g) <= SOLVE_TOL).then_some(f))
}

/// Writes a pair with both `f * h` and `h * f` one-slice preserving through
/// factors in the slice of `f * h`.
pub fn twisted_pair_structure(f: &SlicePoly, h: &SlicePoly) -> Result<TwistedPair> {
    let fh = f.star_mul(h);
    let hf = h.star_mul(f);
    let (SliceClass::OneSlice(i0), SliceClass::OneSlice(m0)) = (fh.classify()?, hf.classify()?)
    else {
        return Err(Error::PreconditionViolated(
            "both f * h and h * f must preserve exactly one slice".into(),
        ));
    };
    let pair = |f_tilde: SlicePoly, h_tilde: SlicePoly, case: TwistCase| TwistedPair {
        i0,
        m0,
        f_tilde,
        h_tilde,
        case,
        alpha: None,
    };
    let mut out = if i0.same_slice(m0) {
        if f.in_slice_of(i0) && h.in_slice_of(i0) {
            pair(f.clone(), h.clone(), TwistCase::SameSlice)
        } else {
            let missing = || Error::StructureNotFound("no part orthogonal to I0".into());
            let k0 = orthogonal_direction(f, i0).ok_or_else(missing)?;
            let j0 = orthogonal_direction(h, i0).ok_or_else(missing)?;
            let f_tilde = f.star_mul(&SlicePoly::constant(-k0.quaternion()));
            let h_tilde = SlicePoly::constant(-j0.quaternion()).star_mul(h);
            if !f_tilde.in_slice_of(i0) || !h_tilde.in_slice_of(i0) {
                return Err(Error::StructureNotFound(
                    "untwisted factors leave S_I0".into(),
                ));
            }
            pair(f_tilde, h_tilde, TwistCase::SameSliceOrthogonal { j0, k0 })
        }
    } else {
        let frame = adapted_frame(i0, m0, false)?;
        let mut found = None;
        for branch in Branch::BOTH {
            let f_tilde = f.star_mul(&SlicePoly::constant(branch.right_factor(&frame).inv()?));
            let h_tilde = SlicePoly::constant(branch.left_factor(&frame).inv()?).star_mul(h);
            if f_tilde.in_slice_of(i0) && h_tilde.in_slice_of(i0) {
                found = Some(pair(f_tilde, h_tilde, TwistCase::DifferentSlice { frame, branch }));
                break;
            }
        }
        found.ok_or_else(|| {
            Error::StructureNotFound("neither branch untwists both factors".into())
        })?
    };
    if let (true, SliceClass::OneSlice(u)) = (i0.same_slice(m0), f.classify()?) {
        if u.dot(i0).abs() <= 1e-9 {
            if let Some((f0, f1)) = f.slice_parts(u) {
                if f0.is_negligible(f.norm_inf()) {
                    out.alpha = Some((f1, u));
                }
            }
        }
    }
    Ok(out)
}
