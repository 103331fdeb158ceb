//! Scalar abstraction shared by every crate of the workspace.
//!
//! All operators are complex matrices; the real component type is generic so
//! the same code runs in single or double precision.  Identity thresholds are
//! calibrated for `f64`.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use std::fmt::{Debug, Display};

/// Real component type of every complex number in the laboratory.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from `f64` literals.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    /// Widening conversion used by reports.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over a [`Real`].
pub type Cx<T> = Complex<T>;

/// Builds a complex number from `f64` parts.
pub fn cx<T: Real>(re: f64, im: f64) -> Cx<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// Complex one.
pub fn one<T: Real>() -> Cx<T> {
    Complex::new(T::one(), T::zero())
}

/// Complex zero.
pub fn zero<T: Real>() -> Cx<T> {
    Complex::new(T::zero(), T::zero())
}

/// Real scalar promoted to a complex number.
pub fn re<T: Real>(v: T) -> Cx<T> {
    Complex::new(v, T::zero())
}

/// Integer power of a complex number, including negative exponents.
///
/// Repeated squaring keeps the rounding error logarithmic in `|k|`.
pub fn ipow<T: Real>(z: Cx<T>, k: i64) -> Cx<T> {
    if k == 0 {
        return one();
    }
    let mut base = if k < 0 { z.inv() } else { z };
    let mut e = k.unsigned_abs();
    let mut acc = one::<T>();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base;
        }
        base = base * base;
        e >>= 1;
    }
    acc
}

/// Converts a complex number to double precision.
pub fn widen<T: Real>(z: Cx<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64_lossy(), z.im.to_f64_lossy())
}

/// Converts a double-precision complex number to the working precision.
pub fn narrow<T: Real>(z: Complex<f64>) -> Cx<T> {
    cx(z.re, z.im)
}

/// Parses a complex number written as `re+imj` (also `re-imj`, `re`, `imj`;
/// `i` is accepted in place of `j`).
pub fn parse_complex(text: &str) -> Result<Complex<f64>, crate::TqError> {
    let t = text.trim();
    t.parse::<Complex<f64>>()
        .map_err(|_| crate::TqError::ConfigInvalid(format!("`{t}` is not a complex number (expected re+imj)")))
        .and_then(|z| {
            if z.re.is_finite() && z.im.is_finite() {
                Ok(z)
            } else {
                Err(crate::TqError::ConfigInvalid(format!("`{t}` is not finite")))
            }
        })
}
