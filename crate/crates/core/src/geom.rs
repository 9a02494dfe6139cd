//! Complex-plane and C² algebra.
//!
//! Points of the plane are complex numbers, so the +π/2 rotation `J` is
//! multiplication by `i`. On C² we use the Hermitian product
//! `herm(z, w) = z1·conj(w1) + z2·conj(w2)`, whose real part is the Euclidean
//! metric of R⁴ and whose negated imaginary part is the Kaehler form.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// Complex scalar.
pub type Cplx = Complex64;

/// A point (or vector) of the plane read as a complex number.
pub type PlanePoint = Complex64;

pub const I: Cplx = Cplx::new(0.0, 1.0);

/// +π/2 rotation of the plane.
#[inline]
pub fn jrot(p: PlanePoint) -> PlanePoint {
    Cplx::new(-p.im, p.re)
}

/// Euclidean inner product of two plane vectors.
#[inline]
pub fn dot(a: PlanePoint, b: PlanePoint) -> f64 {
    a.re * b.re + a.im * b.im
}

/// The bracket `⟨a, J b⟩`, equal to `Im(a · conj(b))`.
#[inline]
pub fn bracket_j(a: PlanePoint, b: PlanePoint) -> f64 {
    a.im * b.re - a.re * b.im
}

/// A vector of C² = C × C.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct C2 {
    pub z1: Cplx,
    pub z2: Cplx,
}

impl C2 {
    pub const ZERO: C2 = C2 {
        z1: Cplx::new(0.0, 0.0),
        z2: Cplx::new(0.0, 0.0),
    };

    #[inline]
    pub const fn new(z1: Cplx, z2: Cplx) -> Self {
        Self { z1, z2 }
    }

    /// Coordinates in R⁴, ordered (Re z1, Im z1, Re z2, Im z2).
    #[inline]
    pub fn to_r4(self) -> [f64; 4] {
        [self.z1.re, self.z1.im, self.z2.re, self.z2.im]
    }

    #[inline]
    pub fn from_r4(x: [f64; 4]) -> Self {
        Self::new(Cplx::new(x[0], x[1]), Cplx::new(x[2], x[3]))
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.z1.norm_sqr() + self.z2.norm_sqr()
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    #[inline]
    pub fn scale(self, c: Cplx) -> Self {
        Self::new(self.z1 * c, self.z2 * c)
    }

    pub fn is_finite(self) -> bool {
        self.z1.is_finite() && self.z2.is_finite()
    }
}

/// Hermitian product `z1·conj(w1) + z2·conj(w2)`.
#[inline]
pub fn herm(z: C2, w: C2) -> Cplx {
    z.z1 * w.z1.conj() + z.z2 * w.z2.conj()
}

/// Euclidean metric of R⁴ ≅ C².
#[inline]
pub fn euclid(z: C2, w: C2) -> f64 {
    herm(z, w).re
}

/// Kaehler form `ω(z, w) = ⟨J z, w⟩ = −Im herm(z, w)`.
#[inline]
pub fn kaehler(z: C2, w: C2) -> f64 {
    -herm(z, w).im
}

/// Complex structure of C²: multiplication of both slots by `i`.
#[inline]
pub fn jrot2(v: C2) -> C2 {
    C2::new(jrot(v.z1), jrot(v.z2))
}

impl Add for C2 {
    type Output = C2;
    fn add(self, o: C2) -> C2 {
        C2::new(self.z1 + o.z1, self.z2 + o.z2)
    }
}

impl AddAssign for C2 {
    fn add_assign(&mut self, o: C2) {
        self.z1 += o.z1;
        self.z2 += o.z2;
    }
}

impl Sub for C2 {
    type Output = C2;
    fn sub(self, o: C2) -> C2 {
        C2::new(self.z1 - o.z1, self.z2 - o.z2)
    }
}

impl Neg for C2 {
    type Output = C2;
    fn neg(self) -> C2 {
        C2::new(-self.z1, -self.z2)
    }
}

impl Mul<f64> for C2 {
    type Output = C2;
    fn mul(self, k: f64) -> C2 {
        C2::new(self.z1 * k, self.z2 * k)
    }
}

impl Mul<C2> for f64 {
    type Output = C2;
    fn mul(self, v: C2) -> C2 {
        v * self
    }
}

impl Mul<Cplx> for C2 {
    type Output = C2;
    fn mul(self, c: Cplx) -> C2 {
        self.scale(c)
    }
}

impl Div<f64> for C2 {
    type Output = C2;
    fn div(self, k: f64) -> C2 {
        C2::new(self.z1 / k, self.z2 / k)
    }
}
