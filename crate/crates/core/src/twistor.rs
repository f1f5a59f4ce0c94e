//! The complex structure of the twistor space `C^n × G_{k,n}` in a chart.
//!
//! Twisted forms are [`ChartForm`]s whose `twist` is the power `m` of the
//! `H^{-1}` frame they are written against. Two frames exist over a chart:
//! the holomorphic frame `σ` with Chern connection `∂N/N`, and the adapted
//! frame `ρ̄ = σ/N` whose connection `−∂̄N/N` is of type `(0,1)`.

use crate::error::{Error, Result};
use crate::forms::{ChartForm, FrameKind, VectorField};
use crate::grassmann::Chart;
use crate::index::{reduce, subsequences, SignedIndex};
use crate::ring::linalg::{determinant, determinant_expand, inverse};
use crate::ring::Coeff;
use crate::spin::{coordinate_transform, translation_oracle, Spinor};
use crate::{GaussRat, Poly, RatFunc};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gamma {
    /// Holomorphic base directions `dξ^a`.
    Alpha,
    /// Antiholomorphic base directions `dξ̄^a`.
    Beta,
}

/// Which of the two equivalent closed forms of a Lie derivative to use.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LieVariant {
    /// Sums over `J ∋ a`.
    Eq1,
    /// Sums over `J ∌ b`.
    Eq2,
    /// Direct computation: `−F̄(N)/N` on the frame and the divergence on `K̄`.
    Flow,
}

#[derive(Clone, Debug)]
pub struct TwistorChart {
    chart: Chart,
    norm: RatFunc,
    adapted_connection: ChartForm,
    holomorphic_connection: ChartForm,
    f: Vec<VectorField>,
    f_bar: Vec<VectorField>,
    horizontal: Vec<ChartForm>,
    projection: Vec<ChartForm>,
    kbar: ChartForm,
}

impl TwistorChart {
    pub fn new(n: usize, k: usize, base: &[u8]) -> Result<Self> {
        Self::from_chart(Chart::new(n, k, base)?)
    }

    pub fn from_chart(chart: Chart) -> Result<Self> {
        let n = chart.n();
        let nv = chart.nvars();
        let norm = chart.norm();
        let mut adapted_connection = ChartForm::zero(&chart);
        let mut holomorphic_connection = ChartForm::zero(&chart);
        for p in 0..chart.fibre_dim() {
            let (w, wb) = (chart.w_var(p), chart.wbar_var(p));
            adapted_connection.add_term(vec![wb as u16], -&(&norm.partial(wb) / &norm));
            holomorphic_connection.add_term(vec![w as u16], &norm.partial(w) / &norm);
        }
        let mut f = Vec::with_capacity(n * n);
        for a in 1..=n as u8 {
            for b in 1..=n as u8 {
                f.push(vector_field_f(&chart, a, b));
            }
        }
        let f_bar = f.iter().map(|v| v.conj()).collect();
        let horizontal = horizontal_frame(&chart);
        let projection = projection_images(&chart, &horizontal)?;
        let mut kbar = ChartForm::function(&chart, RatFunc::one(nv));
        for p in 0..chart.fibre_dim() {
            kbar = kbar.wedge(&ChartForm::generator(&chart, chart.wbar_var(p)))?;
        }
        Ok(TwistorChart { chart, norm, adapted_connection, holomorphic_connection, f, f_bar, horizontal, projection, kbar })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn n(&self) -> usize {
        self.chart.n()
    }

    pub fn k(&self) -> usize {
        self.chart.k()
    }

    pub fn nvars(&self) -> usize {
        self.chart.nvars()
    }

    /// `N = Σ_J |z^J|²`.
    pub fn norm(&self) -> &RatFunc {
        &self.norm
    }

    fn check_ab(&self, a: u8, b: u8) -> Result<()> {
        let n = self.n() as u8;
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::IndexOutOfRange(format!("({a}, {b}) for n = {n}")));
        }
        Ok(())
    }

    /// `F^a_b = −Σ_{i∈I, j∉I} z^{aiI} z^{bjI} ∂/∂w_{ij}`.
    pub fn f_field(&self, a: u8, b: u8) -> Result<&VectorField> {
        self.check_ab(a, b)?;
        Ok(&self.f[(a as usize - 1) * self.n() + b as usize - 1])
    }

    /// Complex conjugate field `F̄^a_b`.
    pub fn f_bar(&self, a: u8, b: u8) -> Result<&VectorField> {
        self.check_ab(a, b)?;
        Ok(&self.f_bar[(a as usize - 1) * self.n() + b as usize - 1])
    }

    /// `z^{seq}` as a rational function.
    pub fn z(&self, seq: &[u8]) -> RatFunc {
        self.chart.z_rat(seq)
    }

    pub fn z_bar(&self, seq: &[u8]) -> RatFunc {
        RatFunc::from_poly(self.chart.z_seq(seq).conj())
    }

    /// Holomorphic coordinate `η^J`: `√−1 Σ_{j∈J} z^{jJ} ξ^j` when `|J| = k+1`,
    /// `√−1 Σ_{j∉J} z^{jJ} ξ̄^j` when `|J| = k−1`.
    pub fn eta(&self, j_idx: &[u8]) -> Result<RatFunc> {
        let c = &self.chart;
        let nv = c.nvars();
        let up = if j_idx.len() == c.k() + 1 {
            true
        } else if j_idx.len() + 1 == c.k() {
            false
        } else {
            return Err(Error::InvalidArgument(format!("|J| = {} must be k ± 1", j_idx.len())));
        };
        let mut acc = Poly::zero(nv);
        for j in 1..=c.n() as u8 {
            if j_idx.contains(&j) != up {
                continue;
            }
            let mut seq = vec![j];
            seq.extend_from_slice(j_idx);
            let x = if up { c.xi_var(j) } else { c.xibar_var(j) };
            acc = &acc + &(&c.z_seq(&seq) * &Poly::var(x, nv));
        }
        Ok(RatFunc::from_poly(acc.scale(&GaussRat::i())))
    }

    /// Generators of the `(1,0)` cotangent ideal: every `dw_{ij}` and every
    /// nonzero `dη^J`.
    pub fn one_zero_ideal(&self) -> Vec<ChartForm> {
        let c = &self.chart;
        let mut out: Vec<ChartForm> = (0..c.fibre_dim()).map(|p| ChartForm::generator(c, c.w_var(p))).collect();
        for len in [c.k() + 1, c.k().wrapping_sub(1)] {
            let Ok(all) = subsequences(c.n(), len) else { continue };
            for j in all {
                let d = ChartForm::function(c, self.eta(&j.index).expect("valid length")).d_coeffs();
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
        out
    }

    /// Horizontal `(1,0)` forms `h_1 … h_n` spanning the ideal modulo `dw`.
    pub fn horizontal_frame(&self) -> &[ChartForm] {
        &self.horizontal
    }

    /// Canonical representative modulo the `(1,0)` ideal: the projection onto
    /// `span{dw̄, h̄}` along `span{dw, h}`, extended multiplicatively.
    pub fn reduce_mod_10(&self, omega: &ChartForm) -> ChartForm {
        let mut out = omega.zero_like();
        for (gens, coeff) in omega.terms() {
            let mut acc = ChartForm::function(&self.chart, coeff.clone());
            for &g in gens {
                acc = acc.wedge(&self.projection[g as usize]).expect("same chart");
                if acc.is_zero() {
                    break;
                }
            }
            out = out.try_add(&acc.with_twist(omega.twist(), omega.frame())).expect("same chart");
        }
        out
    }

    /// `d_α ω = Σ dξ^a ∧ ∂_{ξ^a} ω`, `d_β ω = Σ dξ̄^a ∧ ∂_{ξ̄^a} ω`.
    pub fn project_d_gamma(&self, gamma: Gamma, omega: &ChartForm) -> ChartForm {
        let c = &self.chart;
        let mut out = omega.zero_like();
        for a in 1..=c.n() as u8 {
            let v = match gamma {
                Gamma::Alpha => c.xi_var(a),
                Gamma::Beta => c.xibar_var(a),
            };
            for (gens, coeff) in omega.terms() {
                if !coeff.uses_var(v) {
                    continue;
                }
                let mut g = vec![v as u16];
                g.extend_from_slice(gens);
                out.add_term(g, coeff.partial(v));
            }
        }
        out
    }

    pub fn connection(&self, frame: FrameKind) -> &ChartForm {
        match frame {
            FrameKind::Adapted => &self.adapted_connection,
            FrameKind::Holomorphic => &self.holomorphic_connection,
        }
    }

    /// `d^∇ ω = dω + m·A∧ω` for a section of `H^{-m}` in the form's frame.
    pub fn twisted_d(&self, omega: &ChartForm) -> ChartForm {
        let d = omega.d_coeffs();
        if omega.twist() == 0 {
            return d;
        }
        let conn = self.connection(omega.frame()).scale_c(&GaussRat::from_i64(omega.twist() as i64));
        let extra = conn.wedge(omega).expect("same chart").with_twist(omega.twist(), omega.frame());
        &d + &extra
    }

    /// Rewrites `ω` in the other frame using `σ = N·ρ̄`.
    pub fn frame_convert(&self, omega: &ChartForm, to: FrameKind) -> ChartForm {
        let m = omega.twist();
        if omega.frame() == to || m == 0 {
            return omega.clone().with_twist(m, to);
        }
        let base = match to {
            FrameKind::Holomorphic => self.norm.inv().expect("N is nonzero"),
            FrameKind::Adapted => self.norm.clone(),
        };
        let factor = if m > 0 { base.pow(m as u32) } else { base.inv().expect("N is nonzero").pow((-m) as u32) };
        omega.scale(&factor).with_twist(m, to)
    }

    /// `L_V = i_V d^∇ + d^∇ i_V` on twisted forms.
    pub fn twisted_lie(&self, v: &VectorField, omega: &ChartForm) -> Result<ChartForm> {
        let a = self.twisted_d(omega).contract(v)?;
        let b = self.twisted_d(&omega.contract(v)?);
        a.try_add(&b)
    }

    /// Scalar by which `L_{F̄^a_b}` acts on the adapted frame `ρ̄`.
    pub fn frame_lie_factor(&self, a: u8, b: u8, variant: LieVariant) -> Result<RatFunc> {
        self.check_ab(a, b)?;
        let nv = self.nvars();
        let base = self.chart.base();
        let delta = RatFunc::from_i64((a == b) as i64, nv);
        let with = |first: &[u8]| -> Vec<u8> {
            let mut s = first.to_vec();
            s.extend_from_slice(base);
            s
        };
        let sum_over = |pred: &dyn Fn(&SignedIndex) -> bool, x: u8, y: u8| -> RatFunc {
            let mut acc = RatFunc::zero(nv);
            for j in subsequences(self.n(), self.k()).expect("k ≤ n") {
                if pred(&j) {
                    let mut seq = vec![x, y];
                    seq.extend_from_slice(&j.index);
                    acc = &acc + &(&self.z(&seq) * &self.z_bar(&j.index));
                }
            }
            &acc / &self.norm
        };
        Ok(match variant {
            LieVariant::Eq1 => {
                let mut r = -&delta;
                if !base.contains(&a) {
                    r = &r - &self.z_bar(&with(&[b, a]));
                }
                &r - &sum_over(&|j| j.contains(a), b, a)
            }
            LieVariant::Eq2 => {
                let mut r = delta;
                if base.contains(&b) {
                    r = &r + &self.z_bar(&with(&[a, b]));
                }
                &r + &sum_over(&|j| !j.contains(b), a, b)
            }
            LieVariant::Flow => {
                let fb = self.f_bar(a, b)?;
                -&(&fb.apply(&self.norm) / &self.norm)
            }
        })
    }

    /// Scalar by which `L_{F̄^a_b}` acts on `K̄ = ∧ dw̄` (global order).
    pub fn kbar_lie_factor(&self, a: u8, b: u8, variant: LieVariant) -> Result<RatFunc> {
        self.check_ab(a, b)?;
        let nv = self.nvars();
        let (n, k) = (self.n() as i64, self.k() as i64);
        let base = self.chart.base();
        let delta = (a == b) as i64;
        let with = |x: u8, y: u8| -> Vec<u8> {
            let mut s = vec![x, y];
            s.extend_from_slice(base);
            s
        };
        Ok(match variant {
            LieVariant::Eq1 => {
                let mut r = RatFunc::from_i64((n - k) * delta, nv);
                if !base.contains(&a) {
                    r = &r + &self.z_bar(&with(b, a)).scale(&GaussRat::from_i64(n));
                }
                r
            }
            LieVariant::Eq2 => {
                let mut r = RatFunc::from_i64(-k * delta, nv);
                if base.contains(&b) {
                    r = &r - &self.z_bar(&with(a, b)).scale(&GaussRat::from_i64(n));
                }
                r
            }
            LieVariant::Flow => self.f_bar(a, b)?.divergence_in(&self.chart.fibre_vars()),
        })
    }

    /// Untwisted Lie derivative along `F̄^a_b` plus `m` times the closed
    /// frame factor.
    pub fn lie_f_bar_closed(&self, a: u8, b: u8, omega: &ChartForm, variant: LieVariant) -> Result<ChartForm> {
        let v = self.f_bar(a, b)?;
        let base = omega.lie_coeffs(v)?;
        if omega.twist() == 0 || omega.frame() == FrameKind::Holomorphic {
            return Ok(base);
        }
        let c = self.frame_lie_factor(a, b, variant)?.scale(&GaussRat::from_i64(omega.twist() as i64));
        base.try_add(&omega.scale(&c))
    }

    /// `K̄ = dw̄_{p₁} ∧ … ∧ dw̄_{p_d}` in chart order.
    pub fn kbar(&self) -> &ChartForm {
        &self.kbar
    }

    /// `s̄^{I′} = conj(z^{I′}) · K̄ ⊗ ρ̄^{n+1}` written in this chart.
    pub fn section(&self, i_prime: &[u8]) -> Result<ChartForm> {
        if i_prime.len() != self.k() {
            return Err(Error::InvalidArgument(format!("|I'| = {} but k = {}", i_prime.len(), self.k())));
        }
        Ok(self.kbar.scale(&self.z_bar(i_prime)).with_twist(self.n() as i32 + 1, FrameKind::Adapted))
    }

    /// `L_{F̄^a_b} s̄^{I′}` in this chart.
    ///
    /// `Eq1`/`Eq2` use the closed expressions in `s̄^{I′}` and `s̄^{baI′}`
    /// (resp. `s̄^{abI′}`); `Flow` differentiates `conj(z^{I′})`, the frame
    /// and `K̄` directly.
    pub fn lie_on_section(&self, a: u8, b: u8, i_prime: &[u8], variant: LieVariant) -> Result<ChartForm> {
        self.check_ab(a, b)?;
        let s = self.section(i_prime)?;
        let nv = self.nvars();
        let (n, k) = (self.n() as i64, self.k() as i64);
        let delta = (a == b) as i64;
        let with = |x: u8, y: u8| -> Vec<u8> {
            let mut q = vec![x, y];
            q.extend_from_slice(i_prime);
            q
        };
        let sum_over = |pred: &dyn Fn(&SignedIndex) -> bool, x: u8, y: u8| -> RatFunc {
            let mut acc = RatFunc::zero(nv);
            for j in subsequences(self.n(), self.k()).expect("k ≤ n") {
                if pred(&j) {
                    let mut seq = vec![x, y];
                    seq.extend_from_slice(&j.index);
                    acc = &acc + &(&self.z(&seq) * &self.z_bar(&j.index));
                }
            }
            (&acc / &self.norm).scale(&GaussRat::from_i64(n + 1))
        };
        let kbar_rho = self.kbar.clone().with_twist(n as i32 + 1, FrameKind::Adapted);
        match variant {
            LieVariant::Eq1 => {
                let mut out = s.scale(&(&RatFunc::from_i64(-(k + 1) * delta, nv) - &sum_over(&|j| j.contains(a), b, a)));
                if !i_prime.contains(&a) {
                    out = &out - &kbar_rho.scale(&self.z_bar(&with(b, a)));
                }
                Ok(out)
            }
            LieVariant::Eq2 => {
                let mut out = s.scale(&(&RatFunc::from_i64((n - k + 1) * delta, nv) + &sum_over(&|j| !j.contains(b), a, b)));
                if i_prime.contains(&b) {
                    out = &out + &kbar_rho.scale(&self.z_bar(&with(a, b)));
                }
                Ok(out)
            }
            LieVariant::Flow => {
                let v = self.f_bar(a, b)?;
                let zb = self.z_bar(i_prime);
                let frame = self.frame_lie_factor(a, b, LieVariant::Flow)?.scale(&GaussRat::from_i64(n + 1));
                let kf = self.kbar_lie_factor(a, b, LieVariant::Flow)?;
                let coeff = &v.apply(&zb) + &(&zb * &(&frame + &kf));
                Ok(kbar_rho.scale(&coeff))
            }
        }
    }

    /// Sign `ε` with `K̄^{I′} = ε·conj(z^{I′})^{-n}·K̄^I`, where `K̄^{I′}` is
    /// built from the coordinates of chart `I′` in their own chart order.
    pub fn kbar_transition_sign(&self, i_prime: &[u8]) -> Result<i8> {
        let c = &self.chart;
        let other = Chart::new(c.n(), c.k(), i_prime)?;
        let zi = self.z(i_prime);
        if zi.is_zero() {
            return Err(Error::Degenerate(format!("z^{i_prime:?} vanishes in chart {:?}", c.base())));
        }
        let mut jac = Vec::new();
        for &(i, j) in other.coords() {
            let mut seq = vec![i, j];
            seq.extend_from_slice(i_prime);
            let w_new = &self.z(&seq) / &zi;
            jac.push((0..c.fibre_dim()).map(|p| w_new.partial(c.w_var(p))).collect::<Vec<_>>());
        }
        let det = determinant(&jac).unwrap_or_else(|| RatFunc::one(c.nvars()));
        let ratio = &det * &zi.pow(c.n() as u32);
        match ratio.constant_value() {
            Some(v) if v == GaussRat::from_i64(1) => Ok(1),
            Some(v) if v == GaussRat::from_i64(-1) => Ok(-1),
            _ => Err(Error::Degenerate(format!("Jacobian ratio {ratio} is not ±1"))),
        }
    }
}

fn vector_field_f(c: &Chart, a: u8, b: u8) -> VectorField {
    let mut v = VectorField::zero(c);
    for (p, &(i, j)) in c.coords().iter().enumerate() {
        let mut s1 = vec![a, i];
        s1.extend_from_slice(c.base());
        let mut s2 = vec![b, j];
        s2.extend_from_slice(c.base());
        let coeff = -&(&c.z_seq(&s1) * &c.z_seq(&s2));
        v.add_comp(c.w_var(p), RatFunc::from_poly(coeff));
    }
    v
}

/// `h_r`: horizontal part of `dη^{red(rI)}`, a combination of `dξ` (for
/// `r ∉ I`) or of `dξ̄` (for `r ∈ I`).
fn horizontal_frame(c: &Chart) -> Vec<ChartForm> {
    let nv = c.nvars();
    let base = c.base();
    let i = RatFunc::constant(GaussRat::i(), nv);
    let mut out = Vec::new();
    for r in 1..=c.n() as u8 {
        let up = !base.contains(&r);
        let mut seq = vec![r];
        seq.extend_from_slice(base);
        let j_idx = reduce(&seq).index;
        let mut h = ChartForm::zero(c);
        for x in 1..=c.n() as u8 {
            if j_idx.contains(&x) != up {
                continue;
            }
            let mut s = vec![x];
            s.extend_from_slice(&j_idx);
            let var = if up { c.xi_var(x) } else { c.xibar_var(x) };
            h.add_term(vec![var as u16], &i * &c.z_rat(&s));
        }
        out.push(h);
    }
    out
}

fn projection_images(c: &Chart, horizontal: &[ChartForm]) -> Result<Vec<ChartForm>> {
    let n = c.n();
    let nv = c.nvars();
    let frame: Vec<ChartForm> = horizontal.iter().cloned().chain(horizontal.iter().map(|h| h.conj())).collect();
    let p: Vec<Vec<RatFunc>> = frame.iter().map(|g| (0..2 * n).map(|v| g.coeff(&[v as u16])).collect()).collect();
    let q = inverse(&p).ok_or_else(|| Error::Degenerate("horizontal coframe is singular".into()))?;
    let mut out = Vec::with_capacity(nv);
    for v in 0..2 * n {
        let mut img = ChartForm::zero(c);
        for s in n..2 * n {
            if !q[v][s].is_zero() {
                img = &img + &frame[s].scale(&q[v][s]);
            }
        }
        out.push(img);
    }
    for p in 0..c.fibre_dim() {
        out.push(ChartForm::zero(c));
        out.push(ChartForm::generator(c, c.wbar_var(p)));
    }
    Ok(out)
}

/// Derivative at `t = 0` of the chart coordinates under `M ↦ M(1 + tX)ᵀ`-type
/// flow `M(t) = M + t·M·Xᵀ` with `X = E^b_a`, negated: an independent
/// computation of `F^a_b` from minors.
pub fn gl_action_oracle(c: &Chart, a: u8, b: u8) -> Result<VectorField> {
    let n = c.n();
    if a == 0 || b == 0 || a as usize > n || b as usize > n {
        return Err(Error::IndexOutOfRange(format!("({a}, {b}) for n = {n}")));
    }
    let nv = c.nvars();
    let m = c.chart_matrix();
    // (M Xᵀ)[r][col] = Σ_s M[r][s] X[col][s] with X = E^b_a: only col = b, s = a
    let mx: Vec<Vec<Poly>> = m
        .iter()
        .map(|row| (1..=n).map(|col| if col == b as usize { row[a as usize - 1].clone() } else { Poly::zero(nv) }).collect())
        .collect();
    let one = Poly::one(nv);
    let d_minor = |cols: &[u8]| -> Poly {
        let mut acc = Poly::zero(nv);
        for r in 0..m.len() {
            let sub: Vec<Vec<Poly>> = (0..m.len())
                .map(|rr| {
                    let src = if rr == r { &mx[rr] } else { &m[rr] };
                    cols.iter().map(|&cc| src[cc as usize - 1].clone()).collect()
                })
                .collect();
            acc = &acc + &determinant_expand(&sub, &one);
        }
        acc
    };
    let d_zi = d_minor(c.base());
    let mut v = VectorField::zero(c);
    for (p, &(i, j)) in c.coords().iter().enumerate() {
        let mut seq = vec![i, j];
        seq.extend_from_slice(c.base());
        let r = reduce(&seq);
        let mut dz = d_minor(&r.index);
        if r.sign < 0 {
            dz = -&dz;
        }
        let w = Poly::var(c.w_var(p), nv);
        let dw = &dz - &(&w * &d_zi);
        v.add_comp(c.w_var(p), RatFunc::from_poly(-&dw));
    }
    Ok(v)
}

/// Checks `α(t)ψ` against the coordinate transform for the `θ_{0J}`
/// components.
pub fn check_coordinate_transform(t: &[GaussRat], psi: &Spinor<GaussRat>) -> Result<bool> {
    let n = t.len() / 2;
    let image = translation_oracle(t, psi)?;
    let xi: Vec<GaussRat> = (0..n).map(|j| t[j].clone() + GaussRat::i() * t[n + j].clone()).collect();
    let expect = coordinate_transform(psi, &xi);
    for (idx, c) in image.terms() {
        if idx.first() == Some(&0) {
            let j = idx[1..].to_vec();
            if expect.get(&j) != Some(c) {
                return Ok(false);
            }
        }
    }
    for (j, c) in &expect {
        let mut idx = vec![0u8];
        idx.extend_from_slice(j);
        if &image.coeff(&idx) != c {
            return Ok(false);
        }
    }
    Ok(true)
}
