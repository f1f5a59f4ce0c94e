//! Gaussian numbers `re + im·i` over an exact real scalar.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{FromPrimitive, One, Signed, Zero};

use crate::error::{Error, Result};

/// Real scalar usable as the component type of [`Gauss`].
///
/// Any exact ordered field with a textual form works; the crate aliases
/// `BigRational` (see [`crate::GaussRat`]), and `Rational64` is handy in
/// tests where overflow cannot happen.
pub trait RealScalar:
    Clone + Eq + Hash + fmt::Debug + fmt::Display + Signed + FromPrimitive + FromStr + Send + Sync + 'static
{
}

impl<T> RealScalar for T where
    T: Clone
        + Eq
        + Hash
        + fmt::Debug
        + fmt::Display
        + Signed
        + FromPrimitive
        + FromStr
        + Send
        + Sync
        + 'static
{
}

/// Coefficient field of a polynomial ring: exact arithmetic plus a conjugation
/// involution.
pub trait Coeff:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn conj(&self) -> Self;
    fn from_i64(v: i64) -> Self;
}

/// Coefficients that contain a square root of −1.
pub trait ImaginaryUnit: Coeff {
    fn imag_unit() -> Self;
}

impl<T> Coeff for num_rational::Ratio<T>
where
    T: num_integer::Integer
        + Clone
        + Signed
        + FromPrimitive
        + Hash
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static,
{
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_i64(v: i64) -> Self {
        num_rational::Ratio::from_integer(T::from_i64(v).expect("integer fits scalar"))
    }
}

/// `re + im·√−1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gauss<T> {
    pub re: T,
    pub im: T,
}

impl<T: RealScalar> Gauss<T> {
    pub fn new(re: T, im: T) -> Self {
        Gauss { re, im }
    }

    pub fn real(re: T) -> Self {
        Gauss { re, im: T::zero() }
    }

    pub fn i() -> Self {
        Gauss { re: T::zero(), im: T::one() }
    }

    pub fn norm_sqr(&self) -> T {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn conjugate(&self) -> Self {
        Gauss { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = self.norm_sqr();
        Some(Gauss { re: self.re.clone() / d.clone(), im: -self.im.clone() / d })
    }
}

impl<T: RealScalar> Zero for Gauss<T> {
    fn zero() -> Self {
        Gauss { re: T::zero(), im: T::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<T: RealScalar> One for Gauss<T> {
    fn one() -> Self {
        Gauss { re: T::one(), im: T::zero() }
    }
}

impl<T: RealScalar> Add for Gauss<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Gauss { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<T: RealScalar> Sub for Gauss<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Gauss { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<T: RealScalar> Neg for Gauss<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Gauss { re: -self.re, im: -self.im }
    }
}

impl<T: RealScalar> Mul for Gauss<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Gauss::real(self.re * o.re);
        }
        Gauss {
            re: self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl<T: RealScalar> Div for Gauss<T> {
    type Output = Self;
    /// Panics on division by zero, like the underlying scalar.
    fn div(self, o: Self) -> Self {
        if o.im.is_zero() {
            return Gauss { re: self.re / o.re.clone(), im: self.im / o.re };
        }
        self * o.inv().expect("division by zero Gaussian number")
    }
}

impl<T: RealScalar> Coeff for Gauss<T> {
    fn conj(&self) -> Self {
        self.conjugate()
    }
    fn from_i64(v: i64) -> Self {
        Gauss::real(T::from_i64(v).expect("integer fits scalar"))
    }
}

impl<T: RealScalar> ImaginaryUnit for Gauss<T> {
    fn imag_unit() -> Self {
        Gauss::i()
    }
}

impl<T: RealScalar> fmt::Display for Gauss<T> {
    /// Canonical text: `a/b`, `c/d*i`, or `a/b+c/d*i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if (-self.im.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{}*i", self.im)
        };
        if self.re.is_zero() {
            write!(f, "{im}")
        } else if im.starts_with('-') {
            write!(f, "{}{}", self.re, im)
        } else {
            write!(f, "{}+{}", self.re, im)
        }
    }
}

impl<T: RealScalar> FromStr for Gauss<T> {
    type Err = Error;

    /// Accepts `a/b`, `a/b+c/d*i`, `a/b-c/d*i`, `c/d*i`, `i`, `-i`.
    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("malformed Gaussian rational `{s}`"));
        if text.is_empty() {
            return Err(bad());
        }
        // split at a sign that is not the leading one
        let split = text
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(p, _)| p)
            .last();
        let (a, b) = match split {
            Some(p) => (&text[..p], Some(&text[p..])),
            None => (text.as_str(), None),
        };
        let parse_real = |t: &str| -> Result<T> {
            let t = t.strip_prefix('+').unwrap_or(t);
            t.parse::<T>().map_err(|_| bad())
        };
        let parse_imag = |t: &str| -> Result<T> {
            let t = t.strip_prefix('+').unwrap_or(t);
            let body = t.strip_suffix('i').ok_or_else(bad)?;
            match body {
                "" => Ok(T::one()),
                "-" => Ok(-T::one()),
                _ => body.strip_suffix('*').ok_or_else(bad)?.parse::<T>().map_err(|_| bad()),
            }
        };
        match b {
            None if a.ends_with('i') => Ok(Gauss { re: T::zero(), im: parse_imag(a)? }),
            None => Ok(Gauss::real(parse_real(a)?)),
            Some(b) => {
                if a.ends_with('i') || !b.ends_with('i') {
                    return Err(bad());
                }
                Ok(Gauss { re: parse_real(a)?, im: parse_imag(b)? })
            }
        }
    }
}
