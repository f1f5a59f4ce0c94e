//! Differential forms and vector fields on a chart `C^n × U_I` with
//! rational-function coefficients.
//!
//! Cotangent generators are indexed by chart variable (`dξ¹, dξ̄¹, …, dw, dw̄`)
//! and a basis monomial is the strictly increasing list of its generators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::grassmann::{Chart, ChartKey};
use crate::{GaussRat, RatFunc};

/// Which local frame of `H^{-1}` a twisted form is written in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FrameKind {
    /// `ρ̄ = σ / N`, the frame compatible with the `(0,1)` structure.
    Adapted,
    /// `σ`, holomorphic along the fibre.
    Holomorphic,
}

/// Sorts a generator list, returning the sign of the sorting permutation,
/// or `None` if a generator repeats.
pub fn sort_generators(gens: &[u16]) -> Option<(Vec<u16>, i8)> {
    let mut v = gens.to_vec();
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChartForm {
    key: ChartKey,
    terms: BTreeMap<Vec<u16>, RatFunc>,
    twist: i32,
    frame: FrameKind,
}

impl ChartForm {
    pub fn zero(chart: &Chart) -> Self {
        Self::zero_for(chart.key())
    }

    pub fn zero_for(key: ChartKey) -> Self {
        ChartForm { key, terms: BTreeMap::new(), twist: 0, frame: FrameKind::Adapted }
    }

    pub fn function(chart: &Chart, f: RatFunc) -> Self {
        let mut out = Self::zero(chart);
        out.add_term(vec![], f);
        out
    }

    /// `d(var v)`.
    pub fn generator(chart: &Chart, v: usize) -> Self {
        let mut out = Self::zero(chart);
        out.add_term(vec![v as u16], RatFunc::one(chart.nvars()));
        out
    }

    pub fn zero_like(&self) -> Self {
        ChartForm { key: self.key.clone(), terms: BTreeMap::new(), twist: self.twist, frame: self.frame }
    }

    pub fn key(&self) -> &ChartKey {
        &self.key
    }

    pub fn nvars(&self) -> usize {
        self.key.nvars()
    }

    pub fn twist(&self) -> i32 {
        self.twist
    }

    pub fn frame(&self) -> FrameKind {
        self.frame
    }

    /// Same coefficients reinterpreted as a section of `H^{-m}` in `frame`.
    pub fn with_twist(mut self, m: i32, frame: FrameKind) -> Self {
        self.twist = m;
        self.frame = frame;
        self
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u16>, RatFunc> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, gens: &[u16]) -> RatFunc {
        self.terms.get(gens).cloned().unwrap_or_else(|| RatFunc::zero(self.nvars()))
    }

    /// Adds `f · d(gens…)` with the generators in any order.
    pub fn add_term(&mut self, gens: Vec<u16>, f: RatFunc) {
        if f.is_zero() {
            return;
        }
        let Some((sorted, sign)) = sort_generators(&gens) else { return };
        let f = if sign < 0 { -f } else { f };
        match self.terms.remove(&sorted) {
            Some(old) => {
                let s = &old + &f;
                if !s.is_zero() {
                    self.terms.insert(sorted, s);
                }
            }
            None => {
                self.terms.insert(sorted, f);
            }
        }
    }

    fn check_same(&self, o: &ChartForm) -> Result<()> {
        if self.key != o.key {
            return Err(Error::ContextMismatch(format!("charts {:?} and {:?}", self.key.base, o.key.base)));
        }
        Ok(())
    }

    fn check_addable(&self, o: &ChartForm) -> Result<()> {
        self.check_same(o)?;
        if o.is_zero() || self.is_zero() {
            return Ok(());
        }
        if self.twist != o.twist || self.frame != o.frame {
            return Err(Error::ContextMismatch(format!(
                "twists {}/{:?} and {}/{:?}",
                self.twist, self.frame, o.twist, o.frame
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &ChartForm) -> Result<ChartForm> {
        self.check_addable(o)?;
        if self.is_zero() {
            return Ok(o.clone());
        }
        let mut out = self.clone();
        for (g, f) in &o.terms {
            out.add_term(g.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, f: &RatFunc) -> ChartForm {
        let mut out = self.zero_like();
        if f.is_zero() {
            return out;
        }
        for (g, c) in &self.terms {
            let p = c * f;
            if !p.is_zero() {
                out.terms.insert(g.clone(), p);
            }
        }
        out
    }

    pub fn scale_c(&self, c: &GaussRat) -> ChartForm {
        let mut out = self.zero_like();
        if num_traits::Zero::is_zero(c) {
            return out;
        }
        for (g, f) in &self.terms {
            out.terms.insert(g.clone(), f.scale(c));
        }
        out
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&RatFunc) -> RatFunc) -> ChartForm {
        let mut out = self.zero_like();
        for (g, c) in &self.terms {
            out.add_term(g.clone(), f(c));
        }
        out
    }

    /// Keeps the terms of total degree `p`.
    pub fn homogeneous_part(&self, p: usize) -> ChartForm {
        let mut out = self.zero_like();
        for (g, c) in self.terms.iter().filter(|(g, _)| g.len() == p) {
            out.terms.insert(g.clone(), c.clone());
        }
        out
    }

    /// Wedge product; twists add.
    pub fn wedge(&self, o: &ChartForm) -> Result<ChartForm> {
        self.check_same(o)?;
        let frame = match (self.twist, o.twist) {
            (0, _) => o.frame,
            (_, 0) => self.frame,
            _ if self.frame == o.frame => self.frame,
            _ => return Err(Error::ContextMismatch("wedge of forms in different frames".into())),
        };
        let mut out = ChartForm { key: self.key.clone(), terms: BTreeMap::new(), twist: self.twist + o.twist, frame };
        for (g1, c1) in &self.terms {
            for (g2, c2) in &o.terms {
                let mut g = g1.clone();
                g.extend_from_slice(g2);
                out.add_term(g, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Interior product `i(v)`.
    pub fn contract(&self, v: &VectorField) -> Result<ChartForm> {
        if self.key != v.key {
            return Err(Error::ContextMismatch("vector field and form on different charts".into()));
        }
        let mut out = self.zero_like();
        for (g, c) in &self.terms {
            for (pos, &x) in g.iter().enumerate() {
                if let Some(vx) = v.comps.get(&x) {
                    let mut rest = g.clone();
                    rest.remove(pos);
                    let t = c * vx;
                    out.add_term(rest, if pos % 2 == 1 { -t } else { t });
                }
            }
        }
        Ok(out)
    }

    /// `Σ_x dx ∧ ∂_x ω`, ignoring any twist.
    pub fn d_coeffs(&self) -> ChartForm {
        let mut out = self.zero_like();
        let nv = self.nvars();
        for (g, c) in &self.terms {
            for x in 0..nv {
                if g.contains(&(x as u16)) || !c.uses_var(x) {
                    continue;
                }
                let mut gg = vec![x as u16];
                gg.extend_from_slice(g);
                out.add_term(gg, c.partial(x));
            }
        }
        out
    }

    pub fn exterior_d(&self) -> Result<ChartForm> {
        if self.twist != 0 {
            return Err(Error::Twisted(self.twist));
        }
        Ok(self.d_coeffs())
    }

    /// Cartan formula `i(v)dω + d(i(v)ω)`.
    pub fn lie_derivative(&self, v: &VectorField) -> Result<ChartForm> {
        if self.twist != 0 {
            return Err(Error::Twisted(self.twist));
        }
        self.lie_coeffs(v)
    }

    /// Untwisted Lie derivative applied regardless of the twist label.
    pub fn lie_coeffs(&self, v: &VectorField) -> Result<ChartForm> {
        let a = self.d_coeffs().contract(v)?;
        let b = self.contract(v)?.d_coeffs();
        a.try_add(&b)
    }

    /// Coefficient conjugation together with `dx ↔ dx̄`.
    pub fn conj(&self) -> ChartForm {
        let mut out = self.zero_like();
        for (g, c) in &self.terms {
            out.add_term(g.iter().map(|&x| x ^ 1).collect(), c.conj());
        }
        out
    }

    pub fn fmt_with(&self, chart: &Chart) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| {
                let coeff = c.fmt_with(chart.names());
                if g.is_empty() {
                    return coeff;
                }
                let gens: Vec<String> = g.iter().map(|&x| chart.differential_name(x as usize)).collect();
                format!("({coeff})*{}", gens.join("^"))
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for ChartForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}){g:?}")?;
        }
        Ok(())
    }
}

/// Panics on chart or twist mismatch; use [`ChartForm::try_add`] for an error.
impl Add for &ChartForm {
    type Output = ChartForm;
    fn add(self, o: &ChartForm) -> ChartForm {
        self.try_add(o).expect("adding incompatible forms")
    }
}

impl Sub for &ChartForm {
    type Output = ChartForm;
    fn sub(self, o: &ChartForm) -> ChartForm {
        self.try_add(&-o).expect("subtracting incompatible forms")
    }
}

impl Neg for &ChartForm {
    type Output = ChartForm;
    fn neg(self) -> ChartForm {
        ChartForm {
            key: self.key.clone(),
            terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect(),
            twist: self.twist,
            frame: self.frame,
        }
    }
}

/// `Σ_x v^x ∂_x` over the chart variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    key: ChartKey,
    comps: BTreeMap<u16, RatFunc>,
}

impl VectorField {
    pub fn zero(chart: &Chart) -> Self {
        VectorField { key: chart.key(), comps: BTreeMap::new() }
    }

    /// `∂/∂(var v)`.
    pub fn coordinate(chart: &Chart, v: usize) -> Self {
        let mut out = Self::zero(chart);
        out.add_comp(v, RatFunc::one(chart.nvars()));
        out
    }

    pub fn key(&self) -> &ChartKey {
        &self.key
    }

    pub fn comps(&self) -> &BTreeMap<u16, RatFunc> {
        &self.comps
    }

    pub fn comp(&self, v: usize) -> RatFunc {
        self.comps.get(&(v as u16)).cloned().unwrap_or_else(|| RatFunc::zero(self.key.nvars()))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn add_comp(&mut self, v: usize, f: RatFunc) {
        if f.is_zero() {
            return;
        }
        let v = v as u16;
        let s = match self.comps.remove(&v) {
            Some(old) => &old + &f,
            None => f,
        };
        if !s.is_zero() {
            self.comps.insert(v, s);
        }
    }

    pub fn try_add(&self, o: &VectorField) -> Result<VectorField> {
        if self.key != o.key {
            return Err(Error::ContextMismatch("vector fields on different charts".into()));
        }
        let mut out = self.clone();
        for (&v, f) in &o.comps {
            out.add_comp(v as usize, f.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, f: &RatFunc) -> VectorField {
        let mut out = VectorField { key: self.key.clone(), comps: BTreeMap::new() };
        for (&v, c) in &self.comps {
            out.add_comp(v as usize, c * f);
        }
        out
    }

    pub fn scale_c(&self, c: &GaussRat) -> VectorField {
        let mut out = VectorField { key: self.key.clone(), comps: BTreeMap::new() };
        for (&v, f) in &self.comps {
            out.add_comp(v as usize, f.scale(c));
        }
        out
    }

    /// `v(f) = Σ v^x ∂_x f`.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero(self.key.nvars());
        for (&x, c) in &self.comps {
            if f.uses_var(x as usize) {
                acc = &acc + &(c * &f.partial(x as usize));
            }
        }
        acc
    }

    /// `[v, u] = v∘u − u∘v`.
    pub fn bracket(&self, u: &VectorField) -> Result<VectorField> {
        if self.key != u.key {
            return Err(Error::ContextMismatch("vector fields on different charts".into()));
        }
        let mut out = VectorField { key: self.key.clone(), comps: BTreeMap::new() };
        for x in 0..self.key.nvars() {
            let a = self.apply(&u.comp(x));
            let b = u.apply(&self.comp(x));
            out.add_comp(x, &a - &b);
        }
        Ok(out)
    }

    /// Coefficient conjugation together with `∂x ↔ ∂x̄`.
    pub fn conj(&self) -> VectorField {
        let mut out = VectorField { key: self.key.clone(), comps: BTreeMap::new() };
        for (&v, f) in &self.comps {
            out.add_comp((v ^ 1) as usize, f.conj());
        }
        out
    }

    /// Divergence `Σ_x ∂_x v^x` restricted to the listed variables.
    pub fn divergence_in(&self, vars: &[usize]) -> RatFunc {
        let mut acc = RatFunc::zero(self.key.nvars());
        for &x in vars {
            if let Some(c) = self.comps.get(&(x as u16)) {
                acc = &acc + &c.partial(x);
            }
        }
        acc
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, o: &VectorField) -> VectorField {
        self.try_add(o).expect("adding vector fields on different charts")
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, o: &VectorField) -> VectorField {
        self.try_add(&-o).expect("subtracting vector fields on different charts")
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        VectorField { key: self.key.clone(), comps: self.comps.iter().map(|(&v, c)| (v, -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Coeff;

    fn setup() -> (Chart, usize, usize) {
        let c = Chart::new(2, 1, &[1]).unwrap();
        let (w, wb) = (c.w_var(0), c.wbar_var(0));
        (c, w, wb)
    }

    fn var(c: &Chart, v: usize) -> RatFunc {
        RatFunc::var(v, c.nvars())
    }

    #[test]
    fn wedge_examples() {
        let (c, w, wb) = setup();
        let dx1 = ChartForm::generator(&c, c.xi_var(1));
        let dxb1 = ChartForm::generator(&c, c.xibar_var(1));
        assert!(dx1.wedge(&dx1).unwrap().is_zero());
        assert_eq!(dx1.wedge(&dxb1).unwrap(), -&dxb1.wedge(&dx1).unwrap());
        let a = ChartForm::generator(&c, w).scale(&var(&c, w));
        let b = ChartForm::generator(&c, wb).scale(&var(&c, wb));
        let expect = ChartForm::generator(&c, w)
            .wedge(&ChartForm::generator(&c, wb))
            .unwrap()
            .scale(&(&var(&c, w) * &var(&c, wb)));
        assert_eq!(a.wedge(&b).unwrap(), expect);
        let other = Chart::new(2, 1, &[2]).unwrap();
        assert!(dx1.wedge(&ChartForm::generator(&other, 0)).is_err());
    }

    #[test]
    fn contract_examples() {
        let (c, w, wb) = setup();
        let dw = ChartForm::generator(&c, w);
        let dwb = ChartForm::generator(&c, wb);
        let dx1 = ChartForm::generator(&c, c.xi_var(1));
        let dw_v = VectorField::coordinate(&c, w);
        assert_eq!(dw.contract(&dw_v).unwrap(), ChartForm::function(&c, RatFunc::one(c.nvars())));
        let f = &var(&c, c.xi_var(2)) + &var(&c, w);
        let om = dw.wedge(&dx1).unwrap().scale(&f);
        assert_eq!(om.contract(&dw_v).unwrap(), dx1.scale(&f));
        let v = VectorField::coordinate(&c, wb).scale(&var(&c, wb));
        assert_eq!(dwb.wedge(&dw).unwrap().contract(&v).unwrap(), dw.scale(&var(&c, wb)));
    }

    #[test]
    fn d_examples() {
        let (c, w, wb) = setup();
        let fw = ChartForm::function(&c, var(&c, w));
        assert_eq!(fw.exterior_d().unwrap(), ChartForm::generator(&c, w));
        let prod = ChartForm::function(&c, &var(&c, w) * &var(&c, wb));
        let expect = &ChartForm::generator(&c, w).scale(&var(&c, wb)) + &ChartForm::generator(&c, wb).scale(&var(&c, w));
        assert_eq!(prod.exterior_d().unwrap(), expect);
        assert!(matches!(fw.with_twist(3, FrameKind::Adapted).exterior_d(), Err(Error::Twisted(3))));
    }

    #[test]
    fn lie_examples() {
        let (c, w, _) = setup();
        let ww = &var(&c, w) * &var(&c, w);
        let v = VectorField::coordinate(&c, w).scale(&var(&c, w));
        let got = ChartForm::function(&c, ww.clone()).lie_derivative(&v).unwrap();
        assert_eq!(got, ChartForm::function(&c, ww.scale(&GaussRat::from_i64(2))));
        let wdw = ChartForm::generator(&c, w).scale(&var(&c, w));
        let dw_v = VectorField::coordinate(&c, w);
        assert_eq!(wdw.lie_derivative(&dw_v).unwrap(), ChartForm::generator(&c, w));
    }

    #[test]
    fn bracket_examples() {
        let (c, w, _) = setup();
        let dw_v = VectorField::coordinate(&c, w);
        let wdw = dw_v.scale(&var(&c, w));
        assert_eq!(dw_v.bracket(&wdw).unwrap(), dw_v);
        let w2 = dw_v.scale(&(&var(&c, w) * &var(&c, w)));
        assert_eq!((-&dw_v).bracket(&w2).unwrap(), wdw.scale_c(&GaussRat::from_i64(-2)));
        assert!(w2.bracket(&w2).unwrap().is_zero());
    }
}
