//! Rational functions kept in lowest terms with a monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::gauss::Coeff;
use super::poly::{gcd, Poly};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction<C> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Coeff> RationalFunction<C> {
    pub fn zero(nvars: usize) -> Self {
        RationalFunction { num: Poly::zero(nvars), den: Poly::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        RationalFunction { num: Poly::one(nvars), den: Poly::one(nvars) }
    }

    pub fn constant(c: C, nvars: usize) -> Self {
        Self::from_poly(Poly::constant(c, nvars))
    }

    pub fn from_i64(k: i64, nvars: usize) -> Self {
        Self::constant(C::from_i64(k), nvars)
    }

    pub fn var(v: usize, nvars: usize) -> Self {
        Self::from_poly(Poly::var(v, nvars))
    }

    pub fn from_poly(num: Poly<C>) -> Self {
        let n = num.nvars();
        RationalFunction { num, den: Poly::one(n) }
    }

    /// `num / den` brought to canonical form.
    pub fn new(num: Poly<C>, den: Poly<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly<C>, den: Poly<C>) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        if let Some(c) = den.constant_value() {
            let inv = C::one() / c;
            return RationalFunction { num: num.scale(&inv), den: Poly::one(n) };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        let inv = C::one() / lc;
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numer(&self) -> &Poly<C> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<C> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(self.nvars())
    }

    pub fn one_like(&self) -> Self {
        Self::one(self.nvars())
    }

    pub fn scale(&self, c: &C) -> Self {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient-rule derivative; conjugate variables are independent.
    pub fn partial(&self, v: usize) -> Self {
        let dn = self.num.partial(v);
        if self.den.is_one() {
            return Self::from_poly(dn);
        }
        let dd = self.den.partial(v);
        if dd.is_zero() {
            return Self::normalized(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalized(num, &self.den * &self.den)
    }

    pub fn conj(&self) -> Self {
        Self::normalized(self.num.conj(), self.den.conj())
    }

    pub fn eval(&self, point: &[C]) -> Result<C> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Largest total exponent of the listed variables in the numerator.
    pub fn degree_in_vars(&self, vars: &[usize]) -> u32 {
        self.num.degree_in_vars(vars)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.num.uses_var(v) || self.den.uses_var(v)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let n = self.num.fmt_with(names);
        if self.den.is_one() {
            return n;
        }
        let n = if self.num.len() > 1 { format!("({n})") } else { n };
        let d = self.den.fmt_with(names);
        if self.den.len() > 1 {
            format!("{n}/({d})")
        } else {
            format!("{n}/{d}")
        }
    }
}

impl<'a, C: Coeff> Add<&'a RationalFunction<C>> for &'a RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn add(self, o: &'a RationalFunction<C>) -> RationalFunction<C> {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RationalFunction::normalized(&self.num + &o.num, self.den.clone());
        }
        if self.den.is_one() {
            return RationalFunction { num: &(&self.num * &o.den) + &o.num, den: o.den.clone() };
        }
        if o.den.is_one() {
            return RationalFunction { num: &self.num + &(&o.num * &self.den), den: self.den.clone() };
        }
        let g = gcd(&self.den, &o.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = o.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&o.num * &a);
        RationalFunction::normalized(num, &self.den * &b)
    }
}

impl<'a, C: Coeff> Sub<&'a RationalFunction<C>> for &'a RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn sub(self, o: &'a RationalFunction<C>) -> RationalFunction<C> {
        self + &(-o)
    }
}

impl<'a, C: Coeff> Mul<&'a RationalFunction<C>> for &'a RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn mul(self, o: &'a RationalFunction<C>) -> RationalFunction<C> {
        if self.is_zero() || o.is_zero() {
            return self.zero_like();
        }
        if self.den.is_one() && o.den.is_one() {
            return RationalFunction { num: &self.num * &o.num, den: self.den.clone() };
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = o.den.div_exact(&g1).expect("gcd divides");
        let n2 = o.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        let inv = C::one() / lc;
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }
}

impl<'a, C: Coeff> Div<&'a RationalFunction<C>> for &'a RationalFunction<C> {
    type Output = RationalFunction<C>;
    /// Panics on a zero divisor; use [`RationalFunction::checked_div`] to get an error.
    fn div(self, o: &'a RationalFunction<C>) -> RationalFunction<C> {
        self.checked_div(o).expect("division by zero rational function")
    }
}

impl<C: Coeff> Neg for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn neg(self) -> RationalFunction<C> {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for RationalFunction<C> {
            type Output = RationalFunction<C>;
            fn $m(self, o: RationalFunction<C>) -> RationalFunction<C> {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<C: Coeff> Neg for RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn neg(self) -> RationalFunction<C> {
        -&self
    }
}

impl<C: Coeff> fmt::Display for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GaussRat;

    type R = RationalFunction<GaussRat>;
    const NV: usize = 2; // w, w̄

    fn w() -> R {
        R::var(0, NV)
    }
    fn wb() -> R {
        R::var(1, NV)
    }
    fn k(v: i64) -> R {
        R::from_i64(v, NV)
    }
    fn norm() -> R {
        &k(1) + &(&w() * &wb())
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&(&k(1) + &w()) + &k(-1), w());
        let n = norm();
        assert!((&(&k(1) / &n) * &n).is_one());
        assert!(matches!(w().checked_div(&R::zero(NV)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn quotient_rule() {
        // d(1/N)/dw̄ = -w/N^2
        let inv = &k(1) / &norm();
        let expect = &(-&w()) / &(&norm() * &norm());
        assert_eq!(inv.partial(1), expect);
        assert_eq!((&w() * &w()).partial(0), &k(2) * &w());
        assert!(wb().partial(0).is_zero());
    }

    #[test]
    fn conjugation() {
        let iw = R::constant(GaussRat::i(), NV);
        assert_eq!((&iw * &w()).conj(), &(-&iw) * &wb());
        assert_eq!(norm().conj(), norm());
    }

    #[test]
    fn lowest_terms() {
        let n = norm();
        let f = &(&n * &w()) / &(&n * &n);
        assert_eq!(f.denom(), n.numer());
        assert_eq!(f.numer(), w().numer());
    }
}
