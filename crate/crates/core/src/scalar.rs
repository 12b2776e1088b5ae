//! Exact Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A Gaussian rational number. Both parts are kept in lowest terms by
/// `BigRational`, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussianRational { re: ratio(re.0, re.1), im: ratio(im.0, im.1) }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational { re, im: BigRational::zero() }
    }

    pub fn integer(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Self::real(ratio(num, den))
    }

    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn zero() -> Self {
        GaussianRational::default()
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|²`, always a non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact serialization `p/q+r/s i`, used by the structured reports.
    pub fn to_exact_string(&self) -> String {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        format!("{}{}{} i", fmt_ratio(&self.re), sign, fmt_ratio(&self.im.abs()))
    }

    /// Inverse of [`to_exact_string`](Self::to_exact_string).
    pub fn from_exact_string(s: &str) -> Option<Self> {
        let body = s.trim().strip_suffix(" i")?;
        // the separator is the last sign that is not the leading one
        let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last()?;
        let re = parse_ratio(&body[..split])?;
        let im = parse_ratio(&body[split..])?;
        Some(GaussianRational { re, im })
    }
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn fmt_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.split_once('/') {
        Some((n, d)) => {
            let d = BigInt::from_str(d).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(BigInt::from_str(n).ok()?, d))
        }
        None => Some(BigRational::from_integer(BigInt::from_str(s).ok()?)),
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::real(r)
    }
}

impl fmt::Display for GaussianRational {
    /// Human form: `3/2`, `-i`, `1/2*i`, `(1-2*i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_ratio(&self.re)),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-self.im.clone()).is_one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}*i", fmt_ratio(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                let abs = self.im.abs();
                if abs.is_one() {
                    write!(f, "({}{}i)", fmt_ratio(&self.re), sign)
                } else {
                    write!(f, "({}{}{}*i)", fmt_ratio(&self.re), sign, fmt_ratio(&abs))
                }
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.inv().expect("division by zero Gaussian rational")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::integer(-1));
    }

    #[test]
    fn lowest_terms() {
        let a = GaussianRational::from_parts((2, 4), (-6, -8));
        assert_eq!(a, GaussianRational::from_parts((1, 2), (3, 4)));
        assert_eq!(a.re().denom(), &BigInt::from(2));
    }

    #[test]
    fn inverse() {
        let z = GaussianRational::from_parts((1, 1), (2, 1));
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn exact_string_round_trip() {
        for z in [
            GaussianRational::zero(),
            GaussianRational::i(),
            GaussianRational::from_parts((-1, 2), (-3, 4)),
            GaussianRational::from_parts((5, 1), (1, 3)),
        ] {
            let s = z.to_exact_string();
            assert_eq!(GaussianRational::from_exact_string(&s), Some(z), "{s}");
        }
        assert_eq!(GaussianRational::i().to_exact_string(), "0+1 i");
        assert_eq!(GaussianRational::from_parts((-1, 2), (-3, 4)).to_exact_string(), "-1/2-3/4 i");
    }

    #[test]
    fn display() {
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
        assert_eq!(GaussianRational::from_parts((0, 1), (1, 2)).to_string(), "1/2*i");
        assert_eq!(GaussianRational::from_parts((1, 1), (-2, 1)).to_string(), "(1-2*i)");
    }
}
