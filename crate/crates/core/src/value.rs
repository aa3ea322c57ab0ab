//! Complex values that are either exact cyclotomic integers or
//! high-precision numerics, with the comparisons the identity checks need.

use std::fmt;

use rug::Float;

use crate::cyclotomic::CyclotomicInteger;
use crate::numeric::{HpComplex, DEFAULT_PREC};

#[derive(Clone, Debug)]
pub enum Value {
    Exact(CyclotomicInteger),
    Numeric(HpComplex),
}

impl Value {
    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn zero_like(&self) -> Value {
        match self {
            Value::Exact(z) => Value::Exact(CyclotomicInteger::zero(z.order())),
            Value::Numeric(z) => Value::Numeric(HpComplex::zero(z.prec())),
        }
    }

    pub fn int_like(&self, n: i64) -> Value {
        match self {
            Value::Exact(z) => Value::Exact(CyclotomicInteger::from_int(z.order(), n)),
            Value::Numeric(z) => Value::Numeric(HpComplex::from_real(z.prec(), n)),
        }
    }

    pub fn to_numeric(&self, prec: u32) -> HpComplex {
        match self {
            Value::Exact(z) => z.to_complex(prec),
            Value::Numeric(z) => z.clone(),
        }
    }

    fn pair(&self, other: &Value) -> Pair {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Pair::Exact(a.clone(), b.clone()),
            _ => {
                let prec = self.prec().max(other.prec());
                Pair::Numeric(self.to_numeric(prec), other.to_numeric(prec))
            }
        }
    }

    fn prec(&self) -> u32 {
        match self {
            Value::Exact(_) => DEFAULT_PREC,
            Value::Numeric(z) => z.prec(),
        }
    }

    pub fn add(&self, other: &Value) -> Value {
        match self.pair(other) {
            Pair::Exact(a, b) => Value::Exact(&a + &b),
            Pair::Numeric(mut a, b) => {
                a += &b;
                Value::Numeric(a)
            }
        }
    }

    pub fn sub(&self, other: &Value) -> Value {
        match self.pair(other) {
            Pair::Exact(a, b) => Value::Exact(&a - &b),
            Pair::Numeric(mut a, b) => {
                a -= &b;
                Value::Numeric(a)
            }
        }
    }

    pub fn mul(&self, other: &Value) -> Value {
        match self.pair(other) {
            Pair::Exact(a, b) => Value::Exact(&a * &b),
            Pair::Numeric(a, b) => Value::Numeric(&a * &b),
        }
    }

    pub fn scale(&self, k: i64) -> Value {
        match self {
            Value::Exact(z) => Value::Exact(z * k),
            Value::Numeric(z) => {
                let mut z = z.clone();
                z.scale_int(k);
                Value::Numeric(z)
            }
        }
    }

    pub fn conj(&self) -> Value {
        match self {
            Value::Exact(z) => Value::Exact(z.conj()),
            Value::Numeric(z) => Value::Numeric(z.conj()),
        }
    }

    /// `|z|²`, still exact in exact mode.
    pub fn norm_sq(&self) -> Value {
        match self {
            Value::Exact(z) => Value::Exact(z.norm_sq()),
            Value::Numeric(z) => {
                let prec = z.prec();
                Value::Numeric(HpComplex {
                    re: z.norm_sq(),
                    im: Float::new(prec),
                })
            }
        }
    }

    /// Zero test: exact reduction in exact mode, `|z| ≤ tol` otherwise.
    pub fn is_zero(&self, tol: f64) -> bool {
        match self {
            Value::Exact(z) => z.is_zero(),
            Value::Numeric(z) => z.abs() <= tol,
        }
    }

    pub fn abs_f64(&self) -> f64 {
        match self {
            Value::Exact(z) => {
                let (re, im) = z.to_complex_f64();
                re.hypot(im)
            }
            Value::Numeric(z) => z.abs().to_f64(),
        }
    }

    /// Real part in double precision.
    pub fn re_f64(&self) -> f64 {
        match self {
            Value::Exact(z) => z.to_complex_f64().0,
            Value::Numeric(z) => z.re.to_f64(),
        }
    }

    /// The value as a rational integer, when it is one (exact mode only).
    pub fn to_integer(&self) -> Option<i64> {
        match self {
            Value::Exact(z) => z.to_integer(),
            Value::Numeric(_) => None,
        }
    }

    /// Sign of the real part of `self` as an ordering against zero.
    ///
    /// Exact values are zero-tested exactly; a nonzero real cyclotomic
    /// integer is then separated from zero by its high-precision value.
    pub fn real_sign(&self, tol: f64) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self {
            Value::Exact(z) => {
                if z.is_zero() {
                    Ordering::Equal
                } else {
                    let re = z.real_value(DEFAULT_PREC);
                    if re > 0 {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    }
                }
            }
            Value::Numeric(z) => {
                if z.re.clone().abs() <= tol {
                    Ordering::Equal
                } else if z.re > 0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }
}

enum Pair {
    Exact(CyclotomicInteger, CyclotomicInteger),
    Numeric(HpComplex, HpComplex),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(z) => write!(f, "{z}"),
            Value::Numeric(z) => {
                let (re, im) = z.to_f64();
                if im == 0.0 {
                    write!(f, "{re:.12e}")
                } else {
                    write!(f, "{re:.12e}{im:+.12e}i")
                }
            }
        }
    }
}
