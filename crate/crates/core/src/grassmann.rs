//! Charts `U_I` of the Grassmannian fibre `Z_k ≅ G_{k,n}` and Plücker
//! coordinates as chart polynomials.
//!
//! A chart carries the variables of `C^n × U_I`, interleaved so that each
//! variable's conjugate is its neighbour:
//! `ξ¹, ξ̄¹, …, ξⁿ, ξ̄ⁿ, w_{p₁}, w̄_{p₁}, …` where the fibre coordinates
//! `w_{ij}` (`i ∈ I`, `j ∉ I`) are listed in lexicographic `(i, j)` order.
//!
//! The canonical section of the chart is the `k × n` matrix with an identity
//! block on the columns of `I` and `±w_{ij}` in row `i`, column `j`. The signs
//! are chosen so that the minor identity `w_{ij} = z^{ijI}` holds with `z^{ijI}`
//! read through the θ-reduction of `(i, j, I)`; every `z^J` is then the
//! corresponding `k × k` minor.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::index::{reduce, subsequences, SignedIndex};
use crate::ring::linalg::determinant_expand;
use crate::ring::{Coeff, RingElem};
use crate::{GaussRat, Poly, RatFunc};

/// What a chart variable stands for.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    Xi(u8),
    XiBar(u8),
    W(u8, u8),
    WBar(u8, u8),
}

#[derive(Clone, Debug)]
pub struct Chart {
    n: usize,
    k: usize,
    base: Vec<u8>,
    coords: Vec<(u8, u8)>,
    names: Vec<String>,
    matrix: Vec<Vec<Poly>>,
    z: BTreeMap<Vec<u8>, Poly>,
}

impl Chart {
    pub fn new(n: usize, k: usize, base: &[u8]) -> Result<Self> {
        if n == 0 || n > 9 {
            return Err(Error::InvalidArgument(format!("rank n = {n} outside 1..=9")));
        }
        if k > n {
            return Err(Error::InvalidArgument(format!("k = {k} exceeds n = {n}")));
        }
        let base_idx = SignedIndex::new(base.to_vec())?;
        if base.len() != k {
            return Err(Error::InvalidArgument(format!("chart index {base:?} must have length {k}")));
        }
        if base.iter().any(|&i| i == 0 || i as usize > n) {
            return Err(Error::IndexOutOfRange(format!("chart index {base:?} for n = {n}")));
        }
        let mut coords = Vec::new();
        for &i in base {
            for j in 1..=n as u8 {
                if !base_idx.contains(j) {
                    coords.push((i, j));
                }
            }
        }
        let mut names = Vec::new();
        for a in 1..=n {
            names.push(format!("x{a}"));
            names.push(format!("xb{a}"));
        }
        for (i, j) in &coords {
            names.push(format!("w{i}{j}"));
            names.push(format!("wb{i}{j}"));
        }
        let mut chart = Chart { n, k, base: base.to_vec(), coords, names, matrix: vec![], z: BTreeMap::new() };
        chart.matrix = chart.build_matrix();
        let one = Poly::one(chart.nvars());
        for j in subsequences(n, k)? {
            let minor: Vec<Vec<Poly>> = chart
                .matrix
                .iter()
                .map(|row| j.index.iter().map(|&c| row[c as usize - 1].clone()).collect())
                .collect();
            chart.z.insert(j.index.clone(), determinant_expand(&minor, &one));
        }
        Ok(chart)
    }

    fn build_matrix(&self) -> Vec<Vec<Poly>> {
        let nv = self.nvars();
        let mut m = vec![vec![Poly::zero(nv); self.n]; self.k];
        for (r, &i) in self.base.iter().enumerate() {
            m[r][i as usize - 1] = Poly::one(nv);
        }
        for (p, &(i, j)) in self.coords.iter().enumerate() {
            let row = self.base.iter().position(|&b| b == i).unwrap();
            let mut seq = vec![i, j];
            seq.extend_from_slice(&self.base);
            let red = reduce(&seq);
            // sign of the minor on `red.index` when only entry (row, j) is 1
            let perm: Vec<usize> = red
                .index
                .iter()
                .map(|&c| if c == j { row } else { self.base.iter().position(|&b| b == c).unwrap() })
                .collect();
            let tau = permutation_sign(&perm);
            let sign = red.sign as i64 * tau;
            m[row][j as usize - 1] = Poly::var(self.w_var(p), nv).scale(&GaussRat::from_i64(sign));
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> &[u8] {
        &self.base
    }

    /// Fibre coordinates `(i, j)` in chart order.
    pub fn coords(&self) -> &[(u8, u8)] {
        &self.coords
    }

    /// Complex fibre dimension `k(n−k)`.
    pub fn fibre_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn nvars(&self) -> usize {
        2 * self.n + 2 * self.coords.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn xi_var(&self, a: u8) -> usize {
        2 * (a as usize - 1)
    }

    pub fn xibar_var(&self, a: u8) -> usize {
        2 * (a as usize - 1) + 1
    }

    pub fn w_var(&self, p: usize) -> usize {
        2 * self.n + 2 * p
    }

    pub fn wbar_var(&self, p: usize) -> usize {
        2 * self.n + 2 * p + 1
    }

    /// Position of `w_{ij}` among the fibre coordinates.
    pub fn coord_index(&self, i: u8, j: u8) -> Option<usize> {
        self.coords.iter().position(|&c| c == (i, j))
    }

    pub fn var_kind(&self, v: usize) -> Var {
        if v < 2 * self.n {
            let a = (v / 2 + 1) as u8;
            if v.is_multiple_of(2) {
                Var::Xi(a)
            } else {
                Var::XiBar(a)
            }
        } else {
            let (i, j) = self.coords[(v - 2 * self.n) / 2];
            if v.is_multiple_of(2) {
                Var::W(i, j)
            } else {
                Var::WBar(i, j)
            }
        }
    }

    pub fn base_vars(&self) -> Vec<usize> {
        (0..2 * self.n).collect()
    }

    pub fn fibre_vars(&self) -> Vec<usize> {
        (2 * self.n..self.nvars()).collect()
    }

    /// `k × n` canonical section matrix.
    pub fn chart_matrix(&self) -> &[Vec<Poly>] {
        &self.matrix
    }

    /// `z^{seq}` for any θ-sequence; zero when the reduced length is not `k`.
    pub fn z_seq(&self, seq: &[u8]) -> Poly {
        let r = reduce(seq);
        match self.z.get(&r.index) {
            Some(p) if r.sign < 0 => -p,
            Some(p) => p.clone(),
            None => Poly::zero(self.nvars()),
        }
    }

    /// `z^J = Z^J / Z^I` as a polynomial in the chart coordinates.
    pub fn z_in_chart(&self, j: &SignedIndex) -> Result<Poly> {
        if j.len() != self.k {
            return Err(Error::InvalidArgument(format!("|J| = {} but k = {}", j.len(), self.k)));
        }
        let p = self.z_seq(&j.index);
        Ok(if j.sign < 0 { -p } else { p })
    }

    pub fn z_rat(&self, seq: &[u8]) -> RatFunc {
        RatFunc::from_poly(self.z_seq(seq))
    }

    /// Closed form of `∂z^J/∂w_{ij}`: `−z^{ijJ}` if `i ∉ J`, `j ∈ J`, else 0.
    pub fn dz_dw(&self, j_idx: &SignedIndex, i: u8, j: u8) -> Result<Poly> {
        if j_idx.len() != self.k {
            return Err(Error::InvalidArgument(format!("|J| = {} but k = {}", j_idx.len(), self.k)));
        }
        if self.coord_index(i, j).is_none() {
            return Err(Error::InvalidArgument(format!("w_{i}{j} is not a coordinate of chart {:?}", self.base)));
        }
        if !j_idx.contains(i) && j_idx.contains(j) {
            let mut seq = vec![i, j];
            seq.extend_from_slice(&j_idx.index);
            let p = -&self.z_seq(&seq);
            Ok(if j_idx.sign < 0 { -&p } else { p })
        } else {
            Ok(Poly::zero(self.nvars()))
        }
    }

    /// `N = Σ_J z^J conj(z^J)`.
    pub fn norm_poly(&self) -> Poly {
        let mut acc = Poly::zero(self.nvars());
        for p in self.z.values() {
            acc = &acc + &(p * &p.conj());
        }
        acc
    }

    pub fn norm(&self) -> RatFunc {
        RatFunc::from_poly(self.norm_poly())
    }

    /// All `(J, z^J)` with `|J| = k`.
    pub fn plucker(&self) -> &BTreeMap<Vec<u8>, Poly> {
        &self.z
    }

    pub fn key(&self) -> ChartKey {
        ChartKey { n: self.n, k: self.k, base: self.base.clone() }
    }

    /// Name of the cotangent generator `d(var v)`.
    pub fn differential_name(&self, v: usize) -> String {
        format!("d{}", self.names[v])
    }
}

/// Identity of a chart; forms and vector fields carry it to detect mixing.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ChartKey {
    pub n: usize,
    pub k: usize,
    pub base: Vec<u8>,
}

impl ChartKey {
    pub fn nvars(&self) -> usize {
        2 * self.n + 2 * self.k * (self.n - self.k)
    }
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                s = -s;
            }
        }
    }
    s
}

/// `Z^J` for every `|J| = k` as the `k × k` minors of a `k × n` matrix.
pub fn plucker_minors<R: RingElem>(m: &[Vec<R>], n: usize, one: &R) -> Result<BTreeMap<Vec<u8>, R>> {
    let k = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("matrix rows must have length n".into()));
    }
    let mut out = BTreeMap::new();
    for j in subsequences(n, k)? {
        let minor: Vec<Vec<R>> = m.iter().map(|row| j.index.iter().map(|&c| row[c as usize - 1].clone()).collect()).collect();
        out.insert(j.index, determinant_expand(&minor, one));
    }
    if out.values().all(|v| v.is_zero_elem()) {
        return Err(Error::Degenerate("matrix has rank below k".into()));
    }
    Ok(out)
}

/// Reads `Z^{seq}` from a table of reduced coordinates, zero off the table.
pub fn signed_lookup<R: RingElem>(table: &BTreeMap<Vec<u8>, R>, seq: &[u8], zero: &R) -> R {
    let r = reduce(seq);
    match table.get(&r.index) {
        Some(v) if r.sign < 0 => zero.sub_elem(v),
        Some(v) => v.clone(),
        None => zero.clone(),
    }
}

fn cat(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

/// `Σ_{a∈J∖K} Z^{aJ} Z^{aK}` for `|J| = k+1`, `|K| = k−1` (vanishes identically).
pub fn plucker_identity_2<R: RingElem>(z: impl Fn(&[u8]) -> R, j: &SignedIndex, k: &SignedIndex, zero: &R) -> R {
    let mut acc = zero.clone();
    for &a in j.index.iter().filter(|a| !k.contains(**a)) {
        acc = acc.add_elem(&z(&cat(&[a], &j.index)).mul_elem(&z(&cat(&[a], &k.index))));
    }
    acc
}

/// `Σ_{j∈J∖K} Z^{ajJ}Z^{bjK} + δ(a∉K) Z^J Z^{baK} − δ(a∉J) Z^{baJ} Z^K`
/// for `|J| = |K| = k` (vanishes identically).
pub fn plucker_identity_3<R: RingElem>(
    z: impl Fn(&[u8]) -> R,
    a: u8,
    b: u8,
    j: &SignedIndex,
    k: &SignedIndex,
    zero: &R,
) -> R {
    let mut lhs = zero.clone();
    for &x in j.index.iter().filter(|x| !k.contains(**x)) {
        lhs = lhs.add_elem(&z(&cat(&[a, x], &j.index)).mul_elem(&z(&cat(&[b, x], &k.index))));
    }
    let mut rhs = zero.clone();
    if !k.contains(a) {
        rhs = rhs.sub_elem(&z(&j.index).mul_elem(&z(&cat(&[b, a], &k.index))));
    }
    if !j.contains(a) {
        rhs = rhs.add_elem(&z(&cat(&[b, a], &j.index)).mul_elem(&z(&k.index)));
    }
    lhs.sub_elem(&rhs)
}
