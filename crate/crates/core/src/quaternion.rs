//! Quaternion arithmetic and the geometry of imaginary units.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::tol;

/// A quaternion `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub const fn imaginary(x: f64, y: f64, z: f64) -> Self {
        Quaternion::new(0.0, x, y, z)
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// Vector part as a triple.
    pub fn vector(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Vector part as a quaternion.
    pub fn vector_part(self) -> Quaternion {
        Quaternion::imaginary(self.x, self.y, self.z)
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `q^c / |q|^2`.
    pub fn inv(self) -> Result<Self> {
        let n = self.norm_sqr();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj() / n)
    }

    /// Euclidean product of the vector parts.
    pub fn dot(self, other: Quaternion) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Vectorial product of the vector parts.
    pub fn cross(self, other: Quaternion) -> Quaternion {
        Quaternion::imaginary(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn max_abs(self) -> f64 {
        self.w.abs().max(self.x.abs()).max(self.y.abs()).max(self.z.abs())
    }

    /// Componentwise comparison under the global tolerances.
    pub fn approx_eq(self, other: Quaternion) -> bool {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .all(|(&a, b)| tol::approx_eq(a, b))
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    // pq = p0 q0 - <p, q> + p0 q + q0 p + p x q
    fn mul(self, q: Quaternion) -> Quaternion {
        let p = self;
        let cross = p.cross(q);
        Quaternion::new(
            p.w * q.w - p.dot(q),
            p.w * q.x + q.w * p.x + cross.x,
            p.w * q.y + q.w * p.y + cross.y,
            p.w * q.z + q.w * p.z + cross.z,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.w, self.x, self.y, self.z)
    }
}

/// Unit quaternions drifting further than this from the sphere are rejected.
const UNIT_DRIFT: f64 = 1e-6;

/// An element of the sphere `{ q : q^2 = -1 }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImaginaryUnit(Quaternion);

impl ImaginaryUnit {
    pub const I: ImaginaryUnit = ImaginaryUnit(Quaternion::I);
    pub const J: ImaginaryUnit = ImaginaryUnit(Quaternion::J);
    pub const K: ImaginaryUnit = ImaginaryUnit(Quaternion::K);

    /// Accepts a quaternion within `1e-6` of the unit sphere of `Im H` and
    /// renormalizes it.
    pub fn new(q: Quaternion) -> Result<Self> {
        let n = q.vector_part().norm();
        if !q.is_finite() || q.w.abs() > UNIT_DRIFT || (n - 1.0).abs() > UNIT_DRIFT {
            return Err(Error::InvalidUnit(format!("{q}")));
        }
        Ok(ImaginaryUnit(q.vector_part() / n))
    }

    /// Normalizes any nonzero direction of `Im H`.
    pub fn from_direction(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Quaternion::imaginary(x, y, z);
        let n = v.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidUnit(format!("{v}")));
        }
        Ok(ImaginaryUnit(v / n))
    }

    pub fn quaternion(self) -> Quaternion {
        self.0
    }

    pub fn vector(self) -> [f64; 3] {
        self.0.vector()
    }

    pub fn dot(self, other: ImaginaryUnit) -> f64 {
        self.0.dot(other.0)
    }

    /// Representative of `{self, -self}` whose first non-negligible
    /// coordinate is positive.
    pub fn canonical(self) -> Self {
        let lead = self
            .vector()
            .into_iter()
            .find(|c| c.abs() > 1e-9)
            .unwrap_or(1.0);
        let u = if lead < 0.0 { -self } else { self };
        // adding +0 turns a negated zero coordinate back into +0
        ImaginaryUnit(u.0 + Quaternion::ZERO)
    }

    /// `C_self == C_other`, i.e. `other = +-self`.
    pub fn same_slice(self, other: ImaginaryUnit) -> bool {
        self.0.cross(other.0).norm() <= 1e-7
    }

    /// Some unit orthogonal to `self`.
    pub fn orthogonal(self) -> ImaginaryUnit {
        let [x, y, z] = self.vector();
        // cross with the basis vector least aligned with self
        let e = if x.abs() <= y.abs() && x.abs() <= z.abs() {
            Quaternion::I
        } else if y.abs() <= z.abs() {
            Quaternion::J
        } else {
            Quaternion::K
        };
        let c = self.0.cross(e);
        ImaginaryUnit(c / c.norm())
    }
}

impl fmt::Display for ImaginaryUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.vector();
        write!(f, "({x}, {y}, {z})")
    }
}

impl Neg for ImaginaryUnit {
    type Output = ImaginaryUnit;
    fn neg(self) -> ImaginaryUnit {
        ImaginaryUnit(-self.0)
    }
}

impl From<ImaginaryUnit> for Quaternion {
    fn from(u: ImaginaryUnit) -> Quaternion {
        u.0
    }
}

/// Orthonormal basis `I0, J0, K0` of `Im H` adapted to a second unit `M0`,
/// with `K0 = I0 J0` and `M0 = a I0 + b J0`, `b > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub i0: ImaginaryUnit,
    pub j0: ImaginaryUnit,
    pub k0: ImaginaryUnit,
    pub a: f64,
    pub b: f64,
}

impl Frame {
    /// `a I0 + b J0`.
    pub fn m0(&self) -> Quaternion {
        self.i0.quaternion() * self.a + self.j0.quaternion() * self.b
    }

    /// Coordinates of an imaginary quaternion in this basis.
    pub fn coords(&self, v: Quaternion) -> [f64; 3] {
        [v.dot(self.i0.0), v.dot(self.j0.0), v.dot(self.k0.0)]
    }
}

/// Builds the frame with `K0` a positive multiple of `I0 ^ M0` and `J0 = K0 I0`.
///
/// With `positive_a`, the triple is replaced by `(-I0, J0, -K0)` whenever that
/// makes `a` positive; only useful when the slices matter, not the units.
pub fn adapted_frame(i0: ImaginaryUnit, m0: ImaginaryUnit, positive_a: bool) -> Result<Frame> {
    let w = i0.0.cross(m0.0);
    let n = w.norm();
    if n <= 1e-9 {
        return Err(Error::DegenerateFrame);
    }
    let k0 = w / n;
    let j0 = k0 * i0.0;
    let (mut i0q, mut k0q) = (i0.0, k0);
    let mut a = m0.0.dot(i0q);
    let b = m0.0.dot(j0);
    if positive_a && a < 0.0 {
        i0q = -i0q;
        k0q = -k0q;
        a = -a;
    }
    Ok(Frame {
        i0: ImaginaryUnit(i0q),
        j0: ImaginaryUnit(j0.vector_part() / j0.norm()),
        k0: ImaginaryUnit(k0q),
        a,
        b,
    })
}
