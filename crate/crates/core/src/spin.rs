//! The spin modules Δ (generators `e_1 … e_{2n}`, basis `θ_I`, `I ⊂ {1..n}`)
//! and Δ′ (generators `e_0 … e_{2n+1}`, `I ⊂ {0..n}`).
//!
//! A generator label is either a "real" label acting by `e_i θ_I = θ_{iI}` or
//! its partner acting by `±√−1 θ_{iI}` (plus sign iff `i ∉ I`). In Δ the
//! partner of `i` is `n+i`; in Δ′ the partner of `i ∈ {0..n}` is `n+1+i`, so
//! `e_{n+1}` pairs with `e_0` and `e_{n+2} … e_{2n+1}` with `e_1 … e_n`.
//!
//! The unitary Lie algebra sits inside the Clifford algebra through the
//! creation and annihilation operators
//! `a†_a = ½(e_a − √−1 e_{n+a})`, `a_b = −½(e_b + √−1 e_{n+b})`;
//! [`unitary_bivector`] is `a†_a a_b − ½δ_ab`, a pure bivector. Its action
//! moves `θ_{bJ}` to `θ_{aJ}` and shifts the diagonal by `−½`,
//! which is the `(Λⁿ)^{−1/2}` twist of `Δ^k ≅ Λ^k ⊗ (Λⁿ)^{−1/2}`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::index::reduce;
use crate::ring::{Coeff, ImaginaryUnit};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SpinShape {
    pub rank: usize,
    /// Δ′ instead of Δ.
    pub extended: bool,
}

impl SpinShape {
    pub fn plain(rank: usize) -> Self {
        SpinShape { rank, extended: false }
    }

    pub fn extended(rank: usize) -> Self {
        SpinShape { rank, extended: true }
    }

    /// Smallest and largest index of the θ basis.
    pub fn index_range(&self) -> (u8, u8) {
        if self.extended {
            (0, self.rank as u8)
        } else {
            (1, self.rank as u8)
        }
    }

    /// All generator labels.
    pub fn labels(&self) -> std::ops::RangeInclusive<usize> {
        if self.extended {
            0..=2 * self.rank + 1
        } else {
            1..=2 * self.rank
        }
    }

    /// Splits a generator label into `(index, imaginary?)`.
    pub fn decode(&self, label: usize) -> Result<(u8, bool)> {
        let n = self.rank;
        let out = || Error::IndexOutOfRange(format!("generator e_{label} for rank {n}"));
        if self.extended {
            match label {
                l if l <= n => Ok((l as u8, false)),
                l if l <= 2 * n + 1 => Ok(((l - n - 1) as u8, true)),
                _ => Err(out()),
            }
        } else {
            match label {
                0 => Err(out()),
                l if l <= n => Ok((l as u8, false)),
                l if l <= 2 * n => Ok(((l - n) as u8, true)),
                _ => Err(out()),
            }
        }
    }

    /// Label of the imaginary partner of index `i`.
    pub fn partner(&self, i: u8) -> usize {
        if self.extended {
            self.rank + 1 + i as usize
        } else {
            self.rank + i as usize
        }
    }
}

/// Element of Δ or Δ′.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Spinor<C> {
    pub shape: SpinShape,
    coeffs: BTreeMap<Vec<u8>, C>,
}

impl<C: Coeff> Spinor<C> {
    pub fn zero(shape: SpinShape) -> Self {
        Spinor { shape, coeffs: BTreeMap::new() }
    }

    pub fn basis(shape: SpinShape, index: &[u8]) -> Result<Self> {
        let mut s = Self::zero(shape);
        s.add_term(index, C::one())?;
        Ok(s)
    }

    /// Adds `c·θ_seq`; `seq` may be unreduced.
    pub fn add_term(&mut self, seq: &[u8], c: C) -> Result<()> {
        let (lo, hi) = self.shape.index_range();
        if let Some(&bad) = seq.iter().find(|&&i| i < lo || i > hi) {
            return Err(Error::IndexOutOfRange(format!("θ index {bad} outside {lo}..={hi}")));
        }
        let r = reduce(seq);
        let c = if r.sign < 0 { -c } else { c };
        self.add_reduced(r.index, c);
        Ok(())
    }

    fn add_reduced(&mut self, key: Vec<u8>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&key) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.coeffs.remove(&key);
                } else {
                    *v = s;
                }
            }
            None => {
                self.coeffs.insert(key, c);
            }
        }
    }

    pub fn coeff(&self, index: &[u8]) -> C {
        self.coeffs.get(index).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &C)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.shape);
        for (k, v) in &self.coeffs {
            out.add_reduced(k.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &o.coeffs {
            out.add_reduced(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-C::one()))
    }
}

/// Formal linear combination of generator words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliffordWord<C> {
    pub terms: Vec<(C, Vec<usize>)>,
}

impl<C: Coeff> CliffordWord<C> {
    pub fn scalar(c: C) -> Self {
        CliffordWord { terms: vec![(c, vec![])] }
    }

    pub fn generator(label: usize) -> Self {
        CliffordWord { terms: vec![(C::one(), vec![label])] }
    }

    pub fn from_terms(terms: Vec<(C, Vec<usize>)>) -> Self {
        CliffordWord { terms }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        CliffordWord { terms }
    }

    pub fn scale(&self, c: &C) -> Self {
        CliffordWord { terms: self.terms.iter().map(|(x, w)| (x.clone() * c.clone(), w.clone())).collect() }
    }

    /// Concatenation product: `(self · o)ψ = self(o ψ)`.
    pub fn mul(&self, o: &Self) -> Self {
        let mut terms = Vec::new();
        for (a, u) in &self.terms {
            for (b, v) in &o.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                terms.push((a.clone() * b.clone(), w));
            }
        }
        CliffordWord { terms }
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self).scale(&-C::one()))
    }

    /// Normal form using `e_u e_u = −1` and `e_u e_v = −e_v e_u`, which are the
    /// same rules as for θ indices.
    pub fn simplify(&self) -> Self {
        let mut acc: BTreeMap<Vec<usize>, C> = BTreeMap::new();
        for (c, w) in &self.terms {
            let seq: Vec<u8> = w.iter().map(|&l| l as u8).collect();
            let r = reduce(&seq);
            let c = if r.sign < 0 { -c.clone() } else { c.clone() };
            let key: Vec<usize> = r.index.iter().map(|&l| l as usize).collect();
            let e = acc.entry(key).or_insert_with(C::zero);
            *e = e.clone() + c;
        }
        CliffordWord { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (c, w)).collect() }
    }

    /// Largest word length with a nonzero coefficient after simplification.
    pub fn max_grade(&self) -> usize {
        self.simplify().terms.iter().map(|(_, w)| w.len()).max().unwrap_or(0)
    }
}

/// `e_m ψ`.
pub fn clifford_act<C: ImaginaryUnit>(label: usize, psi: &Spinor<C>) -> Result<Spinor<C>> {
    let (i, imaginary) = psi.shape.decode(label)?;
    let mut out = Spinor::zero(psi.shape);
    for (idx, c) in &psi.coeffs {
        let mut seq = Vec::with_capacity(idx.len() + 1);
        seq.push(i);
        seq.extend_from_slice(idx);
        let factor = if !imaginary {
            C::one()
        } else if idx.binary_search(&i).is_err() {
            C::imag_unit()
        } else {
            -C::imag_unit()
        };
        out.add_term(&seq, c.clone() * factor)?;
    }
    Ok(out)
}

/// Action of a word, rightmost generator first.
pub fn word_act<C: ImaginaryUnit>(word: &CliffordWord<C>, psi: &Spinor<C>) -> Result<Spinor<C>> {
    let mut out = Spinor::zero(psi.shape);
    for (c, labels) in &word.terms {
        let mut cur = psi.clone();
        for &l in labels.iter().rev() {
            cur = clifford_act(l, &cur)?;
        }
        out = out.add(&cur.scale(c));
    }
    Ok(out)
}

/// Splits a Δ spinor by `|I|`.
pub fn grade_decompose<C: Coeff>(psi: &Spinor<C>) -> Result<BTreeMap<usize, Spinor<C>>> {
    if psi.shape.extended {
        return Err(Error::InvalidArgument("grade decomposition is defined on Δ only".into()));
    }
    let mut parts: BTreeMap<usize, Spinor<C>> = BTreeMap::new();
    for (idx, c) in &psi.coeffs {
        parts.entry(idx.len()).or_insert_with(|| Spinor::zero(psi.shape)).add_reduced(idx.clone(), c.clone());
    }
    Ok(parts)
}

/// Creation operator `a†_a = ½(e_a − √−1 e_{partner(a)})`.
pub fn creation<C: ImaginaryUnit>(shape: SpinShape, a: u8) -> CliffordWord<C> {
    let half = C::one() / C::from_i64(2);
    CliffordWord::from_terms(vec![
        (half.clone(), vec![a as usize]),
        (-(half * C::imag_unit()), vec![shape.partner(a)]),
    ])
}

/// Annihilation operator `a_b = −½(e_b + √−1 e_{partner(b)})`, so that
/// `a_b θ_{bJ} = θ_J` and `{a_b, a†_a} = δ_ab`.
pub fn annihilation<C: ImaginaryUnit>(shape: SpinShape, b: u8) -> CliffordWord<C> {
    let half = -(C::one() / C::from_i64(2));
    CliffordWord::from_terms(vec![(half.clone(), vec![b as usize]), (half * C::imag_unit(), vec![shape.partner(b)])])
}

/// The bivector representing `E^a_b ∈ u(n) ⊗ C` on Δ: `a†_a a_b − ½δ_ab`.
pub fn unitary_bivector<C: ImaginaryUnit>(n: usize, a: u8, b: u8) -> Result<CliffordWord<C>> {
    if a == 0 || b == 0 || a as usize > n || b as usize > n {
        return Err(Error::IndexOutOfRange(format!("unitary generator ({a},{b}) for rank {n}")));
    }
    let shape = SpinShape::plain(n);
    let mut w = creation::<C>(shape, a).mul(&annihilation(shape, b));
    if a == b {
        w = w.add(&CliffordWord::scalar(-(C::one() / C::from_i64(2))));
    }
    Ok(w.simplify())
}

/// `Σ_a e_a e_{n+a}`, the spin image of the complex structure `J`.
pub fn complex_structure_bivector<C: ImaginaryUnit>(n: usize) -> CliffordWord<C> {
    let shape = SpinShape::plain(n);
    CliffordWord::from_terms((1..=n as u8).map(|a| (C::one(), vec![a as usize, shape.partner(a)])).collect())
}

/// `α(t) = 1 + ½(Σ_{i≤n} x^i e_i + Σ_{i≤n} x^{n+i} e_{n+1+i})(√−1 e_0 + e_{n+1})` on Δ′.
pub fn translation_element<C: ImaginaryUnit>(n: usize, t: &[C]) -> Result<CliffordWord<C>> {
    if t.len() != 2 * n {
        return Err(Error::InvalidArgument(format!("translation needs {} real coordinates", 2 * n)));
    }
    let half = C::one() / C::from_i64(2);
    let mut left = Vec::new();
    for i in 1..=n {
        left.push((t[i - 1].clone(), vec![i]));
        left.push((t[n + i - 1].clone(), vec![n + 1 + i]));
    }
    let left = CliffordWord::from_terms(left);
    let right = CliffordWord::from_terms(vec![(C::imag_unit(), vec![0]), (C::one(), vec![n + 1])]);
    Ok(CliffordWord::scalar(C::one()).add(&left.mul(&right).scale(&half)))
}

/// `α(t)ψ` for ψ supported on indices without 0.
pub fn translation_oracle<C: ImaginaryUnit>(t: &[C], psi: &Spinor<C>) -> Result<Spinor<C>> {
    if !psi.shape.extended {
        return Err(Error::InvalidArgument("translation acts on the extended module".into()));
    }
    if psi.terms().any(|(i, _)| i.first() == Some(&0)) {
        return Err(Error::InvalidArgument("ψ must not involve θ_0".into()));
    }
    word_act(&translation_element(psi.shape.rank, t)?, psi)
}

/// Right-hand side of the coordinate transform,
/// `Z^{0J} = √−1(Σ_{j∈J} Z^{jJ} ξ^j + Σ_{j∉J} Z^{jJ} ξ̄^j)`, for every `J ∌ 0`.
///
/// `xi[j-1]` is `ξ^j = x^j + √−1 x^{n+j}`.
pub fn coordinate_transform<C: ImaginaryUnit>(psi: &Spinor<C>, xi: &[C]) -> BTreeMap<Vec<u8>, C> {
    let n = psi.shape.rank;
    let z = |seq: &[u8]| -> C {
        let r = reduce(seq);
        let c = psi.coeff(&r.index);
        if r.sign < 0 {
            -c
        } else {
            c
        }
    };
    let mut out = BTreeMap::new();
    for k in 0..=n {
        for j_set in crate::index::subsequences(n, k).expect("k ≤ n") {
            let mut acc = C::zero();
            for j in 1..=n as u8 {
                let mut seq = vec![j];
                seq.extend_from_slice(&j_set.index);
                let x = if j_set.contains(j) { xi[j as usize - 1].clone() } else { xi[j as usize - 1].conj() };
                acc = acc + z(&seq) * x;
            }
            let v = C::imag_unit() * acc;
            if !v.is_zero() {
                out.insert(j_set.index, v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::subsequences;
    use crate::GaussRat;

    type S = Spinor<GaussRat>;

    fn g(s: &str) -> GaussRat {
        s.parse().unwrap()
    }

    #[test]
    fn action_examples() {
        let sh = SpinShape::plain(2);
        let empty = S::basis(sh, &[]).unwrap();
        let one = S::basis(sh, &[1]).unwrap();
        assert_eq!(clifford_act(1, &empty).unwrap(), one);
        assert_eq!(clifford_act(3, &empty).unwrap(), one.scale(&g("i")));
        assert_eq!(clifford_act(3, &one).unwrap(), empty.scale(&g("i")));
        assert!(clifford_act(5, &empty).is_err());
        assert!(clifford_act(0, &empty).is_err());
    }

    #[test]
    fn word_examples() {
        let sh = SpinShape::plain(2);
        let psi = S::basis(sh, &[2]).unwrap().add(&S::basis(sh, &[1]).unwrap().scale(&g("1/2+i")));
        let sq = CliffordWord::from_terms(vec![(GaussRat::from_i64(1), vec![1, 1])]);
        assert_eq!(word_act(&sq, &psi).unwrap(), psi.scale(&g("-1")));
        let anti = CliffordWord::from_terms(vec![(g("1"), vec![1, 2]), (g("1"), vec![2, 1])]);
        assert!(word_act(&anti, &psi).unwrap().is_zero());
        let w21 = CliffordWord::from_terms(vec![(g("1"), vec![2, 1])]);
        let empty = S::basis(sh, &[]).unwrap();
        assert_eq!(word_act(&w21, &empty).unwrap(), S::basis(sh, &[1, 2]).unwrap().scale(&g("-1")));
    }

    #[test]
    fn grade_examples() {
        let sh = SpinShape::plain(2);
        let a = S::basis(sh, &[1, 2]).unwrap();
        let parts = grade_decompose(&a).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&2], a);
        let b = S::basis(sh, &[]).unwrap().add(&S::basis(sh, &[1]).unwrap());
        let parts = grade_decompose(&b).unwrap();
        assert_eq!(parts[&0], S::basis(sh, &[]).unwrap());
        assert_eq!(parts[&1], S::basis(sh, &[1]).unwrap());
        let w = CliffordWord::from_terms(vec![(g("1"), vec![1, 3])]);
        let one = S::basis(sh, &[1]).unwrap();
        assert_eq!(word_act(&w, &one).unwrap(), one.scale(&g("i")));
        assert!(grade_decompose(&S::zero(SpinShape::extended(2))).is_err());
    }

    #[test]
    fn unitary_bivector_is_pure_bivector() {
        for n in 1..=3usize {
            for a in 1..=n as u8 {
                for b in 1..=n as u8 {
                    let w = unitary_bivector::<GaussRat>(n, a, b).unwrap();
                    assert!(w.terms.iter().all(|(_, l)| l.len() == 2), "{a}{b}: {w:?}");
                }
            }
        }
        let w11 = unitary_bivector::<GaussRat>(2, 1, 1).unwrap();
        let one = S::basis(SpinShape::plain(2), &[1]).unwrap();
        assert_eq!(word_act(&w11, &one).unwrap(), one.scale(&g("1/2")));
    }

    #[test]
    fn unitary_commutator() {
        let n = 2;
        let e = |a, b| unitary_bivector::<GaussRat>(n, a, b).unwrap();
        let lhs = e(1, 2).commutator(&e(2, 1));
        let rhs = e(1, 1).add(&e(2, 2).scale(&g("-1")));
        for k in 0..=n {
            for i in subsequences(n, k).unwrap() {
                let psi = S::basis(SpinShape::plain(n), &i.index).unwrap();
                assert_eq!(word_act(&lhs, &psi).unwrap(), word_act(&rhs, &psi).unwrap());
            }
        }
    }

    #[test]
    fn translation_identity_at_origin() {
        let sh = SpinShape::extended(2);
        let psi = S::basis(sh, &[1]).unwrap().add(&S::basis(sh, &[2]).unwrap().scale(&g("3")));
        let zero = vec![GaussRat::from_i64(0); 4];
        assert_eq!(translation_oracle(&zero, &psi).unwrap(), psi);
        let bad = S::basis(sh, &[0]).unwrap();
        assert!(translation_oracle(&zero, &bad).is_err());
    }
}
