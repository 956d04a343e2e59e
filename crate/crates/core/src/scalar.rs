//! Scalar abstraction: every numerical routine in this crate is generic over a
//! floating-point type implementing [`Real`]. `f64` is the working precision;
//! `f32` instantiations exist mainly to keep the code honest about genericity.

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar usable throughout the crate.
pub trait Real:
    Float + FloatConst + FromPrimitive + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for pulling literal constants into a generic scalar.
#[inline]
pub fn cast<T: Real>(v: f64) -> T {
    T::from_f64(v).expect("literal does not fit in scalar type")
}

/// Lanczos coefficients (g = 7, n = 9), giving ~15 correct digits in f64.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function via the Lanczos approximation, with the reflection formula
/// for arguments below 1/2.
pub fn gamma<T: Real>(x: T) -> T {
    let half = cast::<T>(0.5);
    if x < half {
        // Γ(x) Γ(1−x) = π / sin(πx)
        let pi = T::PI();
        return pi / ((pi * x).sin() * gamma(T::one() - x));
    }
    let x = x - T::one();
    let mut acc = cast::<T>(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc = acc + cast::<T>(c) / (x + cast::<T>(i as f64));
    }
    let t = x + cast::<T>(LANCZOS_G) + half;
    let sqrt_two_pi = (cast::<T>(2.0) * T::PI()).sqrt();
    sqrt_two_pi * t.powf(x + half) * (-t).exp() * acc
}
