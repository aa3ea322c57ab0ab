//! Multi-precision complex numbers on top of MPFR floats.

use std::ops::{AddAssign, Mul, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

/// Default working precision in bits (77 significant decimal digits).
pub const DEFAULT_PREC: u32 = 256;

/// Default tolerance for numeric identity checks.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct HpComplex {
    pub re: Float,
    pub im: Float,
}

impl HpComplex {
    pub fn zero(prec: u32) -> Self {
        Self {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn from_real(prec: u32, x: i64) -> Self {
        Self {
            re: Float::with_val(prec, x),
            im: Float::new(prec),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    /// `exp(2πi·t)` for an angle measured in turns.
    pub fn from_turns(turns: &Float) -> Self {
        let prec = turns.prec();
        let tau = Float::with_val(prec, Constant::Pi) * 2u32;
        let angle = tau * turns;
        let (s, c) = angle.sin_cos(Float::new(prec));
        Self { re: c, im: s }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn scale_int(&mut self, k: i64) {
        self.re *= k;
        self.im *= k;
    }

    pub fn norm_sq(&self) -> Float {
        Float::with_val(
            self.prec(),
            self.re.clone().pow(2u32) + self.im.clone().pow(2u32),
        )
    }

    pub fn abs(&self) -> Float {
        self.norm_sq().sqrt()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl AddAssign<&HpComplex> for HpComplex {
    fn add_assign(&mut self, rhs: &HpComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&HpComplex> for HpComplex {
    fn sub_assign(&mut self, rhs: &HpComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Mul for &HpComplex {
    type Output = HpComplex;
    fn mul(self, rhs: &HpComplex) -> HpComplex {
        let prec = self.prec().max(rhs.prec());
        let re =
            Float::with_val(prec, &self.re * &rhs.re) - Float::with_val(prec, &self.im * &rhs.im);
        let im =
            Float::with_val(prec, &self.re * &rhs.im) + Float::with_val(prec, &self.im * &rhs.re);
        HpComplex { re, im }
    }
}

/// Reduces an angle in turns to `[0, 1)`.
pub fn wrap_turns(t: Float) -> Float {
    let floor = t.clone().floor();
    t - floor
}
