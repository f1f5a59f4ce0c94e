//! Exact Gaussian elimination over any of the crate's fields.

use super::gauss::Coeff;
use super::poly::Poly;
use super::ratfunc::RationalFunction;

/// Commutative ring interface shared by scalars, polynomials and rational
/// functions.
///
/// Polynomials and rational functions need a context (the variable count) to
/// build `0` and `1`, hence the `*_like` constructors instead of
/// `num_traits::Zero`.
pub trait RingElem: Clone + PartialEq {
    fn is_zero_elem(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_elem(&self, o: &Self) -> Self;
    fn sub_elem(&self, o: &Self) -> Self;
    fn mul_elem(&self, o: &Self) -> Self;
}

pub trait FieldElem: RingElem {
    /// Caller guarantees `o` is nonzero.
    fn div_elem(&self, o: &Self) -> Self;
}

impl<C: Coeff> RingElem for C {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        C::zero()
    }
    fn one_like(&self) -> Self {
        C::one()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
}

impl<C: Coeff> FieldElem for C {
    fn div_elem(&self, o: &Self) -> Self {
        self.clone() / o.clone()
    }
}

impl<C: Coeff> RingElem for Poly<C> {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        Poly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        Poly::one(self.nvars())
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
}

impl<C: Coeff> RingElem for RationalFunction<C> {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        RationalFunction::zero_like(self)
    }
    fn one_like(&self) -> Self {
        RationalFunction::one_like(self)
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
}

impl<C: Coeff> FieldElem for RationalFunction<C> {
    fn div_elem(&self, o: &Self) -> Self {
        self / o
    }
}

/// Determinant by Laplace expansion; usable over rings. `one` is returned
/// for the empty matrix.
pub fn determinant_expand<R: RingElem>(m: &[Vec<R>], one: &R) -> R {
    let n = m.len();
    if n == 0 {
        return one.clone();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    // Laplace expansion along the first row
    let mut acc = one.zero_like();
    for c in 0..n {
        if m[0][c].is_zero_elem() {
            continue;
        }
        let minor: Vec<Vec<R>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = m[0][c].mul_elem(&determinant_expand(&minor, one));
        acc = if c % 2 == 0 { acc.add_elem(&term) } else { acc.sub_elem(&term) };
    }
    acc
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce<F: FieldElem>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero_elem()) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.div_elem(&piv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero_elem() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    if !m[r][j].is_zero_elem() {
                        m[i][j] = m[i][j].sub_elem(&f.mul_elem(&m[r][j]));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FieldElem>(m: &[Vec<F>]) -> usize {
    let mut a = m.to_vec();
    row_reduce(&mut a).len()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<F: FieldElem>(m: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    if n == 0 {
        return Some(vec![]);
    }
    let zero = m[0][0].zero_like();
    let one = m[0][0].one_like();
    let mut aug: Vec<Vec<F>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { one.clone() } else { zero.clone() }));
            r
        })
        .collect();
    let piv = row_reduce(&mut aug);
    if piv.len() < n || piv.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the right null space `{x : m x = 0}`.
pub fn kernel<F: FieldElem>(m: &[Vec<F>], cols: usize, zero: &F) -> Vec<Vec<F>> {
    let mut a = m.to_vec();
    let pivots = row_reduce(&mut a);
    let one = zero.one_like();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); cols];
        v[free] = one.clone();
        for (r, &pc) in pivots.iter().enumerate() {
            let x = &a[r][free];
            if !x.is_zero_elem() {
                v[pc] = zero.sub_elem(x);
            }
        }
        basis.push(v);
    }
    basis
}

/// Determinant by elimination.
pub fn determinant<F: FieldElem>(m: &[Vec<F>]) -> Option<F> {
    let n = m.len();
    let first = m.first()?.first()?.clone();
    let mut a = m.to_vec();
    let mut det = first.one_like();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero_elem()) else {
            return Some(first.zero_like());
        };
        if p != c {
            a.swap(p, c);
            det = det.zero_like().sub_elem(&det);
        }
        let piv = a[c][c].clone();
        det = det.mul_elem(&piv);
        for i in c + 1..n {
            if !a[i][c].is_zero_elem() {
                let f = a[i][c].div_elem(&piv);
                for j in c..n {
                    a[i][j] = a[i][j].sub_elem(&f.mul_elem(&a[c][j]));
                }
            }
        }
    }
    Some(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn q(v: i64) -> Rational64 {
        Rational64::from_integer(v)
    }

    #[test]
    fn inverse_and_det() {
        let m = vec![vec![q(2), q(1)], vec![q(5), q(3)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![q(3), q(-1)], vec![q(-5), q(2)]]);
        assert_eq!(determinant(&m), Some(q(1)));
        let s = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(inverse(&s).is_none());
        assert_eq!(rank(&s), 1);
    }

    #[test]
    fn null_space() {
        let m = vec![vec![q(1), q(1), q(0)]];
        let k = kernel(&m, 3, &q(0));
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Rational64 = m[0].iter().zip(v).map(|(a, b)| a * b).sum();
            assert_eq!(s, q(0));
        }
    }
}
