//! Seeded random generators for the test and benchmark families.
//!
//! Every constructed family carries the structure it was built from, so that
//! tests compare decisions against construction rather than against the code
//! under test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quaternion::{adapted_frame, ImaginaryUnit, Quaternion};
use crate::realpoly::RealPoly;
use crate::slicepoly::SlicePoly;
use crate::zeros::linear_factor;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn coeff<R: Rng>(rng: &mut R) -> f64 {
    rng.random_range(-1.0..1.0)
}

/// A coefficient with `0.25 <= |c| < 1`.
fn sizable<R: Rng>(rng: &mut R) -> f64 {
    let c: f64 = rng.random_range(0.25..1.0);
    if rng.random() {
        c
    } else {
        -c
    }
}

/// Degree exactly `deg`.
pub fn real_poly<R: Rng>(rng: &mut R, deg: usize) -> RealPoly {
    let mut c: Vec<f64> = (0..deg).map(|_| coeff(rng)).collect();
    c.push(sizable(rng));
    RealPoly::new(c)
}

pub fn real_poly_upto<R: Rng>(rng: &mut R, max_deg: usize) -> RealPoly {
    real_poly_between(rng, 0, max_deg)
}

pub fn real_poly_between<R: Rng>(rng: &mut R, min_deg: usize, max_deg: usize) -> RealPoly {
    let d = rng.random_range(min_deg..=max_deg);
    real_poly(rng, d)
}

pub fn quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    Quaternion::new(coeff(rng), coeff(rng), coeff(rng), coeff(rng))
}

pub fn nonzero_quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    loop {
        let a = quaternion(rng);
        if a.norm() > 0.25 {
            return a;
        }
    }
}

pub fn unit<R: Rng>(rng: &mut R) -> ImaginaryUnit {
    loop {
        let (x, y, z) = (coeff(rng), coeff(rng), coeff(rng));
        let r2 = x * x + y * y + z * z;
        if (0.0625..=1.0).contains(&r2) {
            return ImaginaryUnit::from_direction(x, y, z).expect("nonzero direction");
        }
    }
}

/// A unit making an angle of at least `min_angle` radians with the slice of
/// `i0`.
pub fn unit_away_from<R: Rng>(rng: &mut R, i0: ImaginaryUnit, min_angle: f64) -> ImaginaryUnit {
    loop {
        let u = unit(rng);
        if u.dot(i0).abs() <= min_angle.cos() {
            return u;
        }
    }
}

/// A point off the real axis with `|Im p| >= 0.25`.
pub fn nonreal_point<R: Rng>(rng: &mut R) -> Quaternion {
    let v = unit(rng).quaternion() * rng.random_range(0.25..1.5);
    Quaternion::real(rng.random_range(-1.5..1.5)) + v
}

/// Degree at most `max_deg`, every component random.
pub fn slice_poly<R: Rng>(rng: &mut R, max_deg: usize) -> SlicePoly {
    let d = rng.random_range(0..=max_deg);
    let mut a: Vec<Quaternion> = (0..d).map(|_| quaternion(rng)).collect();
    a.push(nonzero_quaternion(rng));
    SlicePoly::from_right_coefficients(&a)
}

/// `f_0 + f_1 I0` with `f_1` of degree exactly `deg1`.
pub fn in_slice<R: Rng>(rng: &mut R, i0: ImaginaryUnit, max_deg0: usize, deg1: usize) -> SlicePoly {
    let f0 = real_poly_upto(rng, max_deg0);
    let f1 = real_poly(rng, deg1);
    SlicePoly::in_slice(f0, &f1, i0)
}

/// A product of linear and spherical factors with known zeros.
#[derive(Debug, Clone)]
pub struct ZeroFamily {
    pub f: SlicePoly,
    /// `(x, k)` for the real zero `x` of multiplicity `k`.
    pub real: Vec<(f64, usize)>,
    /// `(alpha, beta, m, n)`: the sphere carries `m` spherical factors and an
    /// isolated zero of multiplicity `n`.
    pub spheres: Vec<(f64, f64, usize, usize)>,
}

/// Builds a [`ZeroFamily`] of degree at most `max_deg`, factors shuffled.
pub fn zero_family<R: Rng>(rng: &mut R, max_deg: usize) -> ZeroFamily {
    let mut factors: Vec<SlicePoly> = Vec::new();
    let mut real = Vec::new();
    let mut spheres: Vec<(f64, f64, usize, usize)> = Vec::new();
    let mut deg = 0;
    let mut centres: Vec<(f64, f64)> = Vec::new();
    let far = |c: &[(f64, f64)], a: f64, b: f64| c.iter().all(|&(x, y)| (x - a).hypot(y - b) > 0.3);
    while deg < max_deg {
        let room = max_deg - deg;
        if rng.random_bool(0.3) {
            let x: f64 = rng.random_range(-1.5..1.5);
            if !far(&centres, x, 0.0) {
                continue;
            }
            let k = rng.random_range(1..=room.min(2));
            centres.push((x, 0.0));
            real.push((x, k));
            for _ in 0..k {
                factors.push(linear_factor(Quaternion::real(x)));
            }
            deg += k;
        } else {
            let p = nonreal_point(rng);
            let (alpha, beta) = (p.w, p.vector_part().norm());
            if !far(&centres, alpha, beta) {
                continue;
            }
            let m = if room >= 2 { rng.random_range(0..=1) } else { 0 };
            let n_max = (room - 2 * m).min(2);
            let n = if m == 0 { rng.random_range(1..=n_max) } else { rng.random_range(0..=n_max) };
            centres.push((alpha, beta));
            spheres.push((alpha, beta, m, n));
            if m == 1 {
                factors.push(SlicePoly::real(RealPoly::sphere_factor(alpha, beta)));
            }
            for _ in 0..n {
                factors.push(linear_factor(p));
            }
            deg += 2 * m + n;
        }
        if rng.random_bool(0.2) {
            break;
        }
    }
    // shuffle by random keys; reordering moves isolated zeros within their sphere
    let mut keyed: Vec<(u64, SlicePoly)> = factors.into_iter().map(|f| (rng.random(), f)).collect();
    keyed.sort_by_key(|(k, _)| *k);
    let lead = SlicePoly::constant(nonzero_quaternion(rng));
    let f = keyed.into_iter().fold(lead, |acc, (_, g)| acc.star_mul(&g));
    ZeroFamily { f, real, spheres }
}

/// `xi s (1 + q^2) + 2 q s i + (1 - q^2) s j`, with `f_v^s = s^2 (1 + q^2)^2`.
pub fn pythagorean(s: &RealPoly, xi: f64) -> SlicePoly {
    let one_q2 = RealPoly::new(vec![1.0, 0.0, 1.0]);
    SlicePoly::new(
        (&one_q2 * s).scale(xi),
        &RealPoly::new(vec![0.0, 2.0]) * s,
        &RealPoly::new(vec![1.0, 0.0, -1.0]) * s,
        RealPoly::zero(),
    )
}

/// Two distinct slices making at least a tenth of a radian.
fn two_units<R: Rng>(rng: &mut R) -> (ImaginaryUnit, ImaginaryUnit) {
    let i0 = unit(rng);
    (i0, unit_away_from(rng, i0, 0.1))
}

/// `f` in `S_I0`, `h` in `S_J0` with `h_1 = r f_1`, and the expected
/// `K0 ~ I0 + r J0`.
pub fn sum_family<R: Rng>(rng: &mut R) -> (SlicePoly, SlicePoly, ImaginaryUnit) {
    let (i0, j0) = two_units(rng);
    let f1 = real_poly_between(rng, 0, 4);
    let r = sizable(rng) * 2.0;
    let f = SlicePoly::in_slice(real_poly_upto(rng, 4), &f1, i0);
    let h = SlicePoly::in_slice(real_poly_upto(rng, 4), &f1.scale(r), j0);
    let v = i0.quaternion() + j0.quaternion() * r;
    let k0 = ImaginaryUnit::from_direction(v.x, v.y, v.z).expect("independent units");
    (f, h, k0.canonical())
}

/// `f = f_1 (lambda + I0)`, `h = h_1 (mu + J0)`, and the expected
/// `K0 ~ mu I0 + lambda J0 + I0 ^ J0`.
pub fn product_family<R: Rng>(rng: &mut R) -> (SlicePoly, SlicePoly, ImaginaryUnit) {
    let (i0, j0) = two_units(rng);
    let (lambda, mu) = (2.0 * coeff(rng), 2.0 * coeff(rng));
    let f = SlicePoly::scaled(&real_poly_between(rng, 1, 3), Quaternion::real(lambda) + i0.quaternion());
    let h = SlicePoly::scaled(&real_poly_between(rng, 1, 3), Quaternion::real(mu) + j0.quaternion());
    let v = i0.quaternion() * mu + j0.quaternion() * lambda + i0.quaternion().cross(j0.quaternion());
    let k0 = ImaginaryUnit::from_direction(v.x, v.y, v.z).expect("nonzero");
    (f, h, k0.canonical())
}

/// `f` in `S_I0`, `h` in `S_J0` with non-proportional imaginary parts and
/// non-constant ratios `f_0 / f_1`, `h_0 / h_1`.
pub fn generic_pair<R: Rng>(rng: &mut R) -> (SlicePoly, SlicePoly) {
    let (i0, j0) = two_units(rng);
    let f = SlicePoly::in_slice(real_poly(rng, 2), &real_poly(rng, 1), i0);
    let h = SlicePoly::in_slice(real_poly(rng, 1), &real_poly(rng, 2), j0);
    (f, h)
}

/// `h` with `h_0 = 0`.
pub fn purely_vector<R: Rng>(rng: &mut R, max_deg: usize) -> SlicePoly {
    slice_poly(rng, max_deg).vector_part()
}

/// `h` whose vector part is a real multiple of that of `f`.
pub fn parallel_to<R: Rng>(rng: &mut R, f: &SlicePoly, max_deg: usize) -> SlicePoly {
    let sigma = real_poly_upto(rng, max_deg);
    &SlicePoly::real(real_poly(rng, max_deg)) + &f.vector_part().mul_real(&sigma)
}

/// `(h, f, M0)` with `h` in `S_I0` polynomial and `f` built so that
/// `h * f * h^c` lies in `S_M0`: the polynomial conjugation family.
pub fn conjugation_family<R: Rng>(rng: &mut R, orthogonal: bool) -> (SlicePoly, SlicePoly, ImaginaryUnit) {
    let i0 = unit(rng);
    let m0 = if orthogonal {
        let v = i0.orthogonal().quaternion();
        let w = i0.quaternion().cross(v);
        let t: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        ImaginaryUnit::new(v * t.cos() + w * t.sin()).expect("unit")
    } else {
        unit_away_from(rng, i0, 0.1)
    };
    let frame = adapted_frame(i0, m0, false).expect("independent");
    let alpha = real_poly_upto(rng, 1);
    let b0 = real_poly_between(rng, 0, 2);
    let b1 = real_poly_between(rng, 0, 2);
    let h = SlicePoly::in_slice(&alpha * &b0, &(&alpha * &b1), i0);
    let f0 = real_poly_upto(rng, 3);
    let mu = real_poly_upto(rng, 2);
    let diff = &(&b0 * &b0) - &(&b1 * &b1);
    let cross = (&b0 * &b1).scale(-2.0);
    let f = if orthogonal {
        let k0 = i0.quaternion() * m0.quaternion();
        &(&SlicePoly::real(f0) + &SlicePoly::scaled(&(&mu * &diff), m0.quaternion()))
            + &SlicePoly::scaled(&(&mu * &cross), k0)
    } else {
        let norm = &(&b0 * &b0) + &(&b1 * &b1);
        let (a, b) = (frame.a, frame.b);
        let v = [
            RealPoly::zero(),
            (&mu * &norm).scale(a),
            (&mu * &diff).scale(b),
            (&mu * &cross).scale(b),
        ];
        &SlicePoly::real(f0) + &SlicePoly::from_coords([frame.i0, frame.j0, frame.k0], &v)
    };
    (h, f, m0)
}
