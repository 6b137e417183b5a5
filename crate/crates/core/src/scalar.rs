//! Exact scalars.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;

/// The ground field: arbitrary-precision rationals.
pub type Q = BigRational;

/// Gaussian integers, the coefficient ring after specializing a half-integer
/// grading variable at the square root of -1.
pub type Gaussian = Complex<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Powers of the imaginary unit.
pub fn i_pow(e: i64) -> Gaussian {
    match e.rem_euclid(4) {
        0 => Complex::new(1, 0),
        1 => Complex::new(0, 1),
        2 => Complex::new(-1, 0),
        _ => Complex::new(0, -1),
    }
}
