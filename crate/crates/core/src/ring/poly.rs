//! Sparse multivariate polynomials keyed by exponent vectors.
//!
//! Variables come in conjugate pairs: variable `2p+1` is the formal conjugate
//! of variable `2p`. [`Poly::conj`] swaps every pair and conjugates the
//! coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gauss::Coeff;

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(C::one(), nvars)
    }

    pub fn constant(c: C, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn var(v: usize, nvars: usize) -> Self {
        Self::monomial(C::one(), v, 1, nvars)
    }

    pub fn monomial(c: C, v: usize, e: u16, nvars: usize) -> Self {
        assert!(v < nvars, "variable {v} outside ring of {nvars} variables");
        let mut m = Monomial::one(nvars);
        m.0[v] = e;
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// The same polynomial in a ring with `nvars` variables, the first ones
    /// shared. `None` if a dropped variable is used.
    pub fn with_nvars(&self, nvars: usize) -> Option<Self> {
        let mut out = Self::zero(nvars);
        for (m, c) in &self.terms {
            if m.0.iter().skip(nvars).any(|&e| e > 0) {
                return None;
            }
            let mut k = m.0.clone();
            k.resize(nvars, 0);
            out.terms.insert(Monomial(k), c.clone());
        }
        Some(out)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().degree() == 0)
    }

    pub fn constant_value(&self) -> Option<C> {
        if self.is_zero() {
            Some(C::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// Greatest term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    /// Sum of the exponents of the listed variables, maximised over terms.
    pub fn degree_in_vars(&self, vars: &[usize]) -> u32 {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|&v| m.0[v] as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.0[v] > 0)
    }

    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.uses_var(v)).collect()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_var_pow(&self, v: usize, e: u16) -> Self {
        let mut m = Monomial::one(self.nvars);
        m.0[v] = e;
        self.mul_term(&m, &C::one())
    }

    pub fn partial(&self, v: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e > 0 {
                let mut k = m.clone();
                k.0[v] = e - 1;
                out.add_term(k, c.clone() * C::from_i64(e as i64));
            }
        }
        out
    }

    /// Swaps each conjugate pair of variables and conjugates coefficients.
    pub fn conj(&self) -> Self {
        assert!(self.nvars.is_multiple_of(2), "conjugation needs paired variables");
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut k = m.clone();
                    for p in 0..self.nvars / 2 {
                        k.0.swap(2 * p, 2 * p + 1);
                    }
                    (k, c.conj())
                })
                .collect(),
        }
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars);
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t * point[v].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes constants for a subset of the variables.
    pub fn eval_partial(&self, point: &[Option<C>]) -> Self {
        assert_eq!(point.len(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            let mut k = m.clone();
            for (v, val) in point.iter().enumerate() {
                if let Some(x) = val {
                    for _ in 0..m.0[v] {
                        t = t * x.clone();
                    }
                    k.0[v] = 0;
                }
            }
            out.add_term(k, t);
        }
        out
    }

    /// Coefficients with respect to one variable, keyed by its exponent.
    pub fn coeffs_in(&self, v: usize) -> BTreeMap<u16, Self> {
        let mut out: BTreeMap<u16, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[v];
            let mut k = m.clone();
            k.0[v] = 0;
            out.entry(e).or_insert_with(|| Self::zero(self.nvars)).add_term(k, c.clone());
        }
        out
    }

    fn lc_in(&self, v: usize) -> Self {
        let d = self.degree_in(v);
        self.coeffs_in(v).remove(&d).unwrap_or_else(|| Self::zero(self.nvars))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = C::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&(C::one() / c)));
        }
        let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let m = rm.div(&dm)?;
            let c = rc / dc.clone();
            r = &r - &d.mul_term(&m, &c);
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Pseudo-remainder with respect to variable `v`.
    fn prem(&self, b: &Self, v: usize) -> Self {
        let db = b.degree_in(v);
        let lb = b.lc_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lr = r.lc_in(v);
            r = &(&r * &lb) - &(&lr * b).mul_var_pow(v, dr - db);
        }
        r
    }

    fn content_in(&self, v: usize) -> Self {
        let mut g = Self::zero(self.nvars);
        for c in self.coeffs_in(v).into_values() {
            g = gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    let name = names.get(v).cloned().unwrap_or_else(|| format!("x{v}"));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let cs = c.to_string();
            let compound = cs[1..].contains(['+', '-']);
            let (neg, body) = if !compound && cs.starts_with('-') {
                (true, cs[1..].to_string())
            } else if compound {
                (false, format!("({cs})"))
            } else {
                (false, cs)
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&body);
            } else {
                if body != "1" {
                    out.push_str(&body);
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

/// Monic greatest common divisor (zero only when both inputs are zero).
pub fn gcd<C: Coeff>(a: &Poly<C>, b: &Poly<C>) -> Poly<C> {
    let n = a.nvars;
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(n);
    }
    if a == b {
        return a.monic();
    }
    let va = a.vars_used();
    let vb = b.vars_used();
    // a variable present on one side only divides out through the content
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        return gcd_with_coeffs(b, a, v);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        return gcd_with_coeffs(a, b, v);
    }
    if b.div_exact(a).is_some() {
        return a.monic();
    }
    if a.div_exact(b).is_some() {
        return b.monic();
    }
    let v = *va
        .iter()
        .min_by_key(|&&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("non-constant polynomial uses a variable");
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let c = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = p.prem(&q, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            return c.monic();
        }
        p = q;
        q = r.div_exact(&r.content_in(v)).expect("content divides");
    }
    let pq = q.div_exact(&q.content_in(v)).expect("content divides");
    (&c * &pq).monic()
}

fn gcd_with_coeffs<C: Coeff>(seed: &Poly<C>, other: &Poly<C>, v: usize) -> Poly<C> {
    let mut g = seed.clone();
    for c in other.coeffs_in(v).into_values() {
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

impl<'a, C: Coeff> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, o: &'a Poly<C>) -> Poly<C> {
        assert_eq!(self.nvars, o.nvars, "polynomials from different rings");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a, C: Coeff> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, o: &'a Poly<C>) -> Poly<C> {
        assert_eq!(self.nvars, o.nvars, "polynomials from different rings");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a, C: Coeff> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, o: &'a Poly<C>) -> Poly<C> {
        assert_eq!(self.nvars, o.nvars, "polynomials from different rings");
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl<C: Coeff> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, o: Poly<C>) -> Poly<C> {
        &self + &o
    }
}

impl<C: Coeff> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, o: Poly<C>) -> Poly<C> {
        &self - &o
    }
}

impl<C: Coeff> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, o: Poly<C>) -> Poly<C> {
        &self * &o
    }
}

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Poly<BigRational>;

    fn x(v: usize) -> P {
        P::var(v, 4)
    }

    fn c(k: i64) -> P {
        P::constant(BigRational::from_integer(k.into()), 4)
    }

    #[test]
    fn grlex_leading_term() {
        let p = &(&x(0) * &x(1)) + &(&x(2) * &(&x(2) * &x(2)));
        let (m, _) = p.leading().unwrap();
        assert_eq!(m.0, vec![0, 0, 3, 0]);
    }

    #[test]
    fn exact_division() {
        let a = &x(0) + &c(1);
        let b = &x(1) - &x(2);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.div_exact(&(&x(0) + &c(2))).is_none());
    }

    #[test]
    fn gcd_of_products() {
        let f = &(&x(0) * &x(1)) + &c(1);
        let g = &x(2) + &x(0);
        let h = &x(1) - &c(3);
        let a = &(&f * &g) * &g;
        let b = &(&f * &h) * &g;
        assert_eq!(gcd(&a, &b), (&f * &g).monic());
        assert!(gcd(&g, &h).is_one());
        assert!(gcd(&(&g * &c(3)), &c(0)) == g.monic());
    }

    #[test]
    fn partial_and_conj() {
        // x0^2 x1 -> d/dx0 = 2 x0 x1
        let p = &(&x(0) * &x(0)) * &x(1);
        assert_eq!(p.partial(0), &(&c(2) * &x(0)) * &x(1));
        assert_eq!(p.conj(), &(&x(1) * &x(1)) * &x(0));
        assert_eq!(p.conj().conj(), p);
    }
}
