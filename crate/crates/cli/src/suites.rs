//! Verification suites. Each suite checks a family of identities over
//! exhaustive index ranges or seeded random instances and emits one
//! [`Record`] per instance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistor_core::correspondence::*;
use twistor_core::forms::{ChartForm, VectorField};
use twistor_core::grassmann::{plucker_identity_2, plucker_identity_3, plucker_minors, signed_lookup, Chart};
use twistor_core::index::{subsequences, subsequences_in};
use twistor_core::ring::linalg::rank;
use twistor_core::ring::Coeff;
use twistor_core::spin::*;
use twistor_core::twistor::{check_coordinate_transform, gl_action_oracle, Gamma, LieVariant, TwistorChart};
use twistor_core::{GaussRat, Poly, RatFunc, Rational};

use crate::error::CliError;
use crate::report::{Params, Record, Report};

pub const SUITES: [&str; 7] = ["clifford", "plucker", "vectorfields", "series", "frames", "operators", "theorem"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub n: usize,
    pub k: usize,
    /// Polynomial degree bound for random and basis forms.
    pub degree: u32,
    pub seed: u64,
}

impl SuiteParams {
    /// Degree defaults to 2 for `n ≤ 2` and 1 above.
    pub fn new(n: usize, k: usize, degree: Option<u32>, seed: u64) -> Result<Self, CliError> {
        if n == 0 || n > 9 || k > n {
            return Err(CliError::Shape { n, k });
        }
        let degree = degree.unwrap_or(if n <= 2 { 2 } else { 1 });
        Ok(SuiteParams { n, k, degree, seed })
    }
}

pub fn run_suite(name: &str, p: &SuiteParams) -> Result<Report, CliError> {
    let names: Vec<&'static str> = match name {
        "all" => SUITES.to_vec(),
        _ => match SUITES.iter().find(|s| **s == name) {
            Some(s) => vec![*s],
            None => return Err(CliError::UnknownSuite(name.to_string())),
        },
    };
    let mut report = Report::default();
    for s in names {
        let mut out = Sink { suite: s, p: *p, records: Vec::new() };
        match s {
            "clifford" => clifford(&mut out)?,
            "plucker" => plucker(&mut out)?,
            "vectorfields" => vectorfields(&mut out)?,
            "series" => series(&mut out)?,
            "frames" => frames(&mut out)?,
            "operators" => operators(&mut out)?,
            "theorem" => theorem(&mut out)?,
            _ => unreachable!("suite list is fixed"),
        }
        report.records.extend(out.records);
    }
    Ok(report)
}

struct Sink {
    suite: &'static str,
    p: SuiteParams,
    records: Vec<Record>,
}

impl Sink {
    /// `counterexample == None` records a pass.
    fn push(&mut self, check: &'static str, reference: &'static str, chart: Option<&[u8]>, instance: String, counterexample: Option<String>) {
        self.records.push(Record {
            suite: self.suite,
            check,
            params: Params { n: self.p.n, k: self.p.k, chart: chart.map(|c| c.to_vec()), instance },
            pass: counterexample.is_none(),
            reference,
            counterexample,
        });
    }

    fn rng(&self) -> ChaCha8Rng {
        let tag = SUITES.iter().position(|s| *s == self.suite).unwrap_or(0) as u64 + 1;
        ChaCha8Rng::seed_from_u64(self.p.seed.wrapping_add(tag.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
    }
}

fn int(v: i64) -> GaussRat {
    GaussRat::from_i64(v)
}

fn small_rational(rng: &mut ChaCha8Rng) -> GaussRat {
    let num: i64 = rng.gen_range(-4..=4);
    let den: i64 = rng.gen_range(1..=3);
    int(num) / int(den)
}

fn small_gauss(rng: &mut ChaCha8Rng) -> GaussRat {
    small_rational(rng) + GaussRat::i() * small_rational(rng)
}

/// Sum of three random monomial basis forms with small rational coefficients.
pub fn random_form(rng: &mut ChaCha8Rng, n: usize, k: usize, degree: u32) -> Result<DolbeaultForm, CliError> {
    let basis = monomial_basis(n, k, degree)?;
    let mut f = DolbeaultForm::new(n, k)?;
    for _ in 0..3 {
        let b = &basis[rng.gen_range(0..basis.len())];
        f = f.add(&b.scale(&small_rational(rng)))?;
    }
    Ok(f)
}

/// Human-readable form text, coefficients in `x1, xb1, …`.
pub fn form_text(f: &DolbeaultForm) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let names: Vec<String> = (1..=f.n()).flat_map(|a| [format!("x{a}"), format!("xb{a}")]).collect();
    let parts: Vec<String> = f
        .coeffs()
        .iter()
        .map(|(idx, c)| {
            let d: Vec<String> = idx.iter().map(|i| format!("dxb{i}")).collect();
            if d.is_empty() {
                format!("({})", c.fmt_with(&names))
            } else {
                format!("({})·{}", c.fmt_with(&names), d.join("∧"))
            }
        })
        .collect();
    parts.join(" + ")
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, mut ok: impl FnMut(&T) -> Result<bool, CliError>, show: impl Fn(&T) -> String) -> Result<Option<String>, CliError> {
    for it in items {
        if !ok(&it)? {
            return Ok(Some(show(&it)));
        }
    }
    Ok(None)
}

fn pairs(n: usize) -> Vec<(u8, u8)> {
    (1..=n as u8).flat_map(|a| (1..=n as u8).map(move |b| (a, b))).collect()
}

fn spin_basis(shape: SpinShape) -> Vec<Vec<u8>> {
    let (lo, hi) = shape.index_range();
    (0..=(hi - lo + 1) as usize)
        .flat_map(|len| subsequences_in(lo as usize, hi as usize, len).expect("length in range"))
        .map(|s| s.index)
        .collect()
}

fn clifford(out: &mut Sink) -> Result<(), CliError> {
    let n = out.p.n;
    for shape in [SpinShape::plain(n), SpinShape::extended(n)] {
        let basis = spin_basis(shape);
        let labels: Vec<usize> = shape.labels().collect();
        let (check, module) = if shape.extended { ("clifford_relation_extended", "Δ′") } else { ("clifford_relation", "Δ") };
        for (pos, &u) in labels.iter().enumerate() {
            for &v in &labels[pos..] {
                let cx = first_failure(
                    &basis,
                    |idx| {
                        let psi = Spinor::<GaussRat>::basis(shape, idx)?;
                        let uv = clifford_act(u, &clifford_act(v, &psi)?)?;
                        let vu = clifford_act(v, &clifford_act(u, &psi)?)?;
                        let expect = if u == v { psi.scale(&int(-2)) } else { Spinor::zero(shape) };
                        Ok(uv.add(&vu) == expect)
                    },
                    |idx| format!("θ{idx:?}"),
                )?;
                out.push(check, "Clifford relations e_u e_v + e_v e_u = −2δ_uv", None, format!("{module}: e{u}, e{v}"), cx);
            }
        }
    }

    let shape = SpinShape::plain(n);
    let basis = spin_basis(shape);
    let u = |a: u8, b: u8| unitary_bivector::<GaussRat>(n, a, b);
    for (a, b) in pairs(n) {
        let w = u(a, b)?;
        let cx = first_failure(
            &basis,
            |idx| {
                let image = word_act(&w, &Spinor::basis(shape, idx)?)?;
                Ok(grade_decompose(&image)?.keys().all(|&g| g == idx.len()))
            },
            |idx| format!("θ{idx:?} leaves its grade"),
        )?;
        out.push("grading", "u(n) ⊂ spin(2n) preserves each Δ^k", None, format!("E{a}{b}"), cx);

        let cx = first_failure(
            pairs(n),
            |&(c, d)| {
                let lhs = w.commutator(&u(c, d)?);
                let mut rhs = CliffordWord::scalar(int(0));
                if b == c {
                    rhs = rhs.add(&u(a, d)?);
                }
                if d == a {
                    rhs = rhs.add(&u(c, b)?.scale(&int(-1)));
                }
                for idx in &basis {
                    let psi = Spinor::basis(shape, idx)?;
                    if word_act(&lhs, &psi)? != word_act(&rhs, &psi)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
            |(c, d)| format!("[E{a}{b}, E{c}{d}]"),
        )?;
        out.push("unitary_commutators", "[E^a_b, E^c_d] = δ_bc E^a_d − δ_da E^c_b on Δ", None, format!("E{a}{b}"), cx);
    }

    let mut rng = out.rng();
    let ext = SpinShape::extended(n);
    for s in 0..10 {
        let t: Vec<GaussRat> = (0..2 * n).map(|_| small_rational(&mut rng)).collect();
        let mut psi = Spinor::zero(ext);
        for idx in spin_basis(shape) {
            psi.add_term(&idx, small_gauss(&mut rng))?;
        }
        let ok = check_coordinate_transform(&t, &psi)?;
        let cx = (!ok).then(|| format!("t = {t:?}"));
        out.push("coordinate_transform", "α(t) on Δ′ reproduces the Z^{0J} coordinate transform", None, format!("sample {s}"), cx);
    }
    Ok(())
}

fn plucker(out: &mut Sink) -> Result<(), CliError> {
    let (n, k) = (out.p.n, out.p.k);
    let charts: Vec<Chart> = subsequences(n, k)?.iter().map(|b| Chart::new(n, k, &b.index)).collect::<Result<_, _>>()?;
    let subs = |len: usize| subsequences(n, len).unwrap_or_default();
    for c in &charts {
        let base = Some(c.base());
        let zero = Poly::zero(c.nvars());
        let z = |s: &[u8]| c.z_seq(s);

        let mut cx = None;
        'part1: for j in subs(k) {
            let zj = c.z_in_chart(&j)?;
            for (p, &(a, b)) in c.coords().iter().enumerate() {
                if c.dz_dw(&j, a, b)? != zj.partial(c.w_var(p)) {
                    cx = Some(format!("J={j}, w{a}{b}"));
                    break 'part1;
                }
            }
        }
        out.push("derivative_rule", "Plücker lemma (1): ∂z^J/∂w_ij", base, "all J, (i,j)".into(), cx);

        if k >= 1 && k < n {
            let cases: Vec<_> = subs(k + 1).into_iter().flat_map(|j| subs(k - 1).into_iter().map(move |kk| (j.clone(), kk))).collect();
            let cx = first_failure(cases, |(j, kk)| Ok(plucker_identity_2(z, j, kk, &zero).is_zero()), |(j, kk)| format!("J={j}, K={kk}"))?;
            out.push("quadratic_relation", "Plücker lemma (2): Σ_{a∈J∖K} z^{aJ} z^{aK} = 0", base, "all |J|=k+1, |K|=k−1".into(), cx);
        }

        let mut cases = Vec::new();
        for j in subs(k) {
            for kk in subs(k) {
                for (a, b) in pairs(n) {
                    cases.push((j.clone(), kk.clone(), a, b));
                }
            }
        }
        let cx = first_failure(
            cases,
            |(j, kk, a, b)| Ok(plucker_identity_3(z, *a, *b, j, kk, &zero).is_zero()),
            |(j, kk, a, b)| format!("a={a}, b={b}, J={j}, K={kk}"),
        )?;
        out.push("exchange_relation", "Plücker lemma (3): exchange relation for |J| = |K| = k", base, "all a, b, J, K".into(), cx);
    }

    if k == 0 {
        return Ok(());
    }
    let mut rng = out.rng();
    let one = int(1);
    let zero = int(0);
    let (mut done, mut attempts) = (0, 0);
    while done < 20 && attempts < 200 {
        attempts += 1;
        let m: Vec<Vec<GaussRat>> = (0..k).map(|_| (0..n).map(|_| small_gauss(&mut rng)).collect()).collect();
        let Ok(zs) = plucker_minors(&m, n, &one) else { continue };
        done += 1;
        let mut cx = None;
        'charts: for c in &charts {
            let zi = zs[c.base()].clone();
            if zi == zero {
                continue;
            }
            let mut point = vec![zero.clone(); c.nvars()];
            for (p, &(i, j)) in c.coords().iter().enumerate() {
                let mut seq = vec![i, j];
                seq.extend_from_slice(c.base());
                let w = signed_lookup(&zs, &seq, &zero) / zi.clone();
                point[c.wbar_var(p)] = w.conjugate();
                point[c.w_var(p)] = w;
            }
            for j in subs(k) {
                if c.z_in_chart(&j)?.eval(&point) != zs[&j.index].clone() / zi.clone() {
                    cx = Some(format!("chart {:?}, J={j}", c.base()));
                    break 'charts;
                }
            }
        }
        out.push("minor_oracle", "Plücker coordinates of a k×n matrix are its k×k minors", None, format!("matrix {done}"), cx);
    }
    Ok(())
}

/// `F(X) = Σ X_ab F^a_b`.
fn field_of(t: &TwistorChart, x: &[Vec<i64>]) -> Result<VectorField, CliError> {
    let mut v = VectorField::zero(t.chart());
    for (a, b) in pairs(t.n()) {
        let c = x[a as usize - 1][b as usize - 1];
        if c != 0 {
            v = v.try_add(&t.f_field(a, b)?.scale_c(&int(c)))?;
        }
    }
    Ok(v)
}

fn vectorfields(out: &mut Sink) -> Result<(), CliError> {
    let (n, k) = (out.p.n, out.p.k);
    for base in subsequences(n, k)? {
        let t = TwistorChart::new(n, k, &base.index)?;
        let cx = first_failure(pairs(n), |&(a, b)| Ok(&gl_action_oracle(t.chart(), a, b)? == t.f_field(a, b)?), |(a, b)| format!("F{a}{b}"))?;
        out.push("flow_oracle", "vector field lemma: F^a_b = −Σ z^{aiI} z^{bjI} ∂/∂w_ij", Some(&base.index), "all (a,b)".into(), cx);
    }

    let t = standard_chart(n, k)?;
    let base = t.chart().base().to_vec();
    for (a, b) in pairs(n) {
        let fab = t.f_field(a, b)?;
        let cx = first_failure(
            pairs(n),
            |&(c, d)| {
                let lhs = fab.bracket(t.f_field(c, d)?)?;
                let mut rhs = VectorField::zero(t.chart());
                if a == d {
                    rhs = rhs.try_add(t.f_field(c, b)?)?;
                }
                if c == b {
                    rhs = rhs.try_add(&t.f_field(a, d)?.scale_c(&int(-1)))?;
                }
                Ok(lhs == rhs)
            },
            |(c, d)| format!("[F{a}{b}, F{c}{d}]"),
        )?;
        out.push("bracket", "[F^a_b, F^c_d] = δ^a_d F^c_b − δ^c_b F^a_d", Some(&base), format!("F{a}{b}"), cx);
    }

    let mut rng = out.rng();
    for s in 0..5 {
        let mut mat = || -> Vec<Vec<i64>> { (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect() };
        let (x, y) = (mat(), mat());
        let comm: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|m| x[i][m] * y[m][j] - y[i][m] * x[m][j]).sum()).collect())
            .collect();
        let lhs = field_of(&t, &x)?.bracket(&field_of(&t, &y)?)?;
        let rhs = field_of(&t, &comm)?.scale_c(&int(-1));
        let cx = (lhs != rhs).then(|| format!("X = {x:?}, Y = {y:?}"));
        out.push("anti_homomorphism", "[F(X), F(Y)] = −F([X, Y])", Some(&base), format!("sample {s}"), cx);
    }
    Ok(())
}

fn rational(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Coefficients of `x⁰ … x^max` in the `l`-th derivative of `Σ x^q/(q!)²`,
/// differentiating the truncated series term by term.
fn differentiated_series(l: usize, max: usize) -> Vec<Rational> {
    let mut fact = rational(1);
    let mut c = Vec::new();
    for q in 0..=max + l {
        if q > 0 {
            fact *= rational(q as i64);
        }
        c.push((fact.clone() * fact.clone()).recip());
    }
    for _ in 0..l {
        c = (0..c.len() - 1).map(|q| c[q + 1].clone() * rational(q as i64 + 1)).collect();
    }
    c.truncate(max + 1);
    c
}

fn series(out: &mut Sink) -> Result<(), CliError> {
    const ORDER: usize = 12;
    for l in 0..=6usize {
        let cx = first_failure(
            0..=ORDER,
            |&p| {
                let mut s = rational(l as i64 + 1) * f_series_coeff(l + 1, p) - f_series_coeff(l, p);
                if p >= 1 {
                    s += f_series_coeff(l + 2, p - 1);
                }
                Ok(s == rational(0))
            },
            |p| format!("x^{p}"),
        )?;
        out.push("ode", "F-series lemma: x F^{(l+2)} + (l+1) F^{(l+1)} − F^{(l)} = 0", None, format!("l={l}, orders ≤ {ORDER}"), cx);

        let oracle = differentiated_series(l, ORDER);
        let cx = first_failure(0..=ORDER, |&p| Ok(f_series_coeff(l, p) == oracle[p]), |p| format!("x^{p}"))?;
        out.push("coefficients", "F^{(l)} = Σ x^p/(p!(p+l)!)", None, format!("l={l}, orders ≤ {ORDER}"), cx);
    }

    let (n, k, degree) = (out.p.n, out.p.k, out.p.degree);
    let t = standard_chart(n, k)?;
    let mut rng = out.rng();
    for s in 0..5 {
        let f = random_form(&mut rng, n, k, degree)?;
        let jf = j_map(&t, &f)?;
        for g in [Gamma::Alpha, Gamma::Beta] {
            let mut w = jf.clone();
            for _ in 0..=f.degree() {
                w = d_operator(&t, g, &w);
            }
            let bounded = series_bound(&t, g, &jf) <= f.degree() as usize + 1;
            let terminates = f_series_apply(&t, 0, g, &jf).is_ok();
            let cx = (!(w.is_zero() && bounded && terminates)).then(|| form_text(&f));
            out.push("termination", "D_γ^{d+1} j(f) = 0 for base degree d", Some(t.chart().base()), format!("sample {s}, {g:?}"), cx);
        }
    }
    Ok(())
}

fn frames(out: &mut Sink) -> Result<(), CliError> {
    let (n, k) = (out.p.n, out.p.k);
    let variants = [LieVariant::Eq1, LieVariant::Eq2];
    for base in subsequences(n, k)? {
        let t = TwistorChart::new(n, k, &base.index)?;
        let chart = Some(base.index.as_slice());
        for ip in subsequences(n, k)? {
            if t.z(&ip.index).is_zero() {
                continue;
            }
            let s = t.section(&ip.index)?;
            let cx = first_failure(
                pairs(n),
                |&(a, b)| {
                    let e1 = t.lie_on_section(a, b, &ip.index, LieVariant::Eq1)?;
                    Ok(e1 == t.lie_on_section(a, b, &ip.index, LieVariant::Eq2)?
                        && e1 == t.lie_on_section(a, b, &ip.index, LieVariant::Flow)?
                        && e1 == t.twisted_lie(t.f_bar(a, b)?, &s)?)
                },
                |(a, b)| format!("a={a}, b={b}"),
            )?;
            out.push("lie_on_sections", "Lie derivative on frames lemma: both closed forms and the connection-plus-flow path agree", chart, format!("I′={:?}", ip.index), cx);

            let eps = t.kbar_transition_sign(&ip.index)?;
            let cx = (eps != 1 && eps != -1).then(|| format!("ε = {eps}"));
            out.push("kbar_transition", "K̄^{I′} = ε conj(z^{I′})^{−n} K̄^I with ε = ±1", chart, format!("I′={:?}, ε={eps}", ip.index), cx);
        }

        let cx = first_failure(
            pairs(n),
            |&(a, b)| {
                let frame = t.frame_lie_factor(a, b, LieVariant::Flow)?;
                let kbar = t.kbar_lie_factor(a, b, LieVariant::Flow)?;
                for v in variants {
                    if t.frame_lie_factor(a, b, v)? != frame || t.kbar_lie_factor(a, b, v)? != kbar {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
            |(a, b)| format!("a={a}, b={b}"),
        )?;
        out.push("line_factors", "L_{F̄^a_b} ρ̄ and L_{F̄^a_b} K̄^I: closed factors equal the flow factors", chart, "all (a,b)".into(), cx);

        let gens = t.one_zero_ideal();
        let nv = t.nvars();
        let rows: Vec<Vec<RatFunc>> = gens.iter().map(|g| (0..nv).map(|v| g.coeff(&[v as u16])).collect()).collect();
        let mut problems = Vec::new();
        if rank(&rows) != n + k * (n - k) {
            problems.push(format!("ideal rank {}", rank(&rows)));
        }
        if gens.iter().any(|g| !t.reduce_mod_10(g).is_zero() || t.reduce_mod_10(&g.conj()) != g.conj()) {
            problems.push("projection is not the identity on conjugate generators".into());
        }
        out.push("one_zero_ideal", "(1,0) ideal has rank n + k(n−k) and the reduction is a projection", chart, "generators".into(), (!problems.is_empty()).then(|| problems.join("; ")));
    }
    Ok(())
}

fn operators(out: &mut Sink) -> Result<(), CliError> {
    let (n, k, degree) = (out.p.n, out.p.k, out.p.degree);
    let t = standard_chart(n, k)?;
    let base = t.chart().base().to_vec();
    let chart = Some(base.as_slice());
    let count = if n <= 2 { 10 } else { 3 };
    let mut rng = out.rng();
    let minus_two = int(-2);
    let da = |x: &ChartForm| d_operator(&t, Gamma::Alpha, x);
    let eb = |x: &ChartForm| e_operator_commutator(&t, Gamma::Beta, x);
    for s in 0..count {
        let f = random_form(&mut rng, n, k, degree)?;
        let jf = j_map(&t, &f)?;
        let inputs = [("j(f)", jf.clone()), ("D_α j(f)", da(&jf))];
        let inst = |label: &str| format!("sample {s} on {label}: {}", form_text(&f));

        for (label, w) in &inputs {
            let cx = first_failure(
                [Gamma::Alpha, Gamma::Beta],
                |&g| Ok(e_operator_commutator(&t, g, w) == e_operator_closed(&t, g, w)?),
                |g| format!("{g:?}"),
            )?;
            out.push("e_closed_form", "operator lemma (1): E_γ = [d, D_γ] closed form", chart, inst(label), cx);

            let cx = first_failure(
                [Gamma::Alpha, Gamma::Beta],
                |&g| {
                    let lhs = &e_operator_commutator(&t, g, &d_operator(&t, g, w)) - &d_operator(&t, g, &e_operator_commutator(&t, g, w));
                    Ok(lhs == d_operator(&t, g, &d_gamma(&t, g, w)).scale_c(&minus_two))
                },
                |g| format!("{g:?}"),
            )?;
            out.push("e_d_relation", "[E_γ, D_γ] = −2 D_γ d_γ", chart, inst(label), cx);

            let gc = gamma_operator_commutator(&t, w);
            let cx = (gc != gamma_operator_closed(&t, w)).then(|| "commutator ≠ closed form".to_string());
            out.push("gamma_closed_form", "operator lemma (3): Γ = [E_β, D_α] closed form", chart, inst(label), cx);

            let cx = (gamma_operator_closed(&t, &da(w)) != da(&gc)).then(|| "Γ D_α ≠ D_α Γ".to_string());
            out.push("gamma_commutes", "Γ D_α = D_α Γ", chart, inst(label), cx);
        }

        let mut cases = Vec::new();
        for l in 0..3usize {
            for g in [Gamma::Alpha, Gamma::Beta] {
                cases.push((l, g));
            }
        }
        let cx = first_failure(
            cases,
            |&(l, g)| {
                let lhs = &t.twisted_d(&f_series_apply(&t, l, g, &jf)?) - &f_series_apply(&t, l, g, &t.twisted_d(&jf))?;
                let e = e_operator_commutator(&t, g, &jf);
                let dd = d_operator(&t, g, &d_gamma(&t, g, &jf));
                Ok(lhs == &f_series_apply(&t, l + 1, g, &e)? - &f_series_apply(&t, l + 2, g, &dd)?)
            },
            |(l, g)| format!("l={l}, {g:?}"),
        )?;
        out.push("series_commutator", "operator lemma (2): [d, F^{(l)}(D_γ)] = F^{(l+1)}(D_γ) E_γ − F^{(l+2)}(D_γ) D_γ d_γ", chart, inst("j(f)"), cx);

        let cx = first_failure(
            0..3usize,
            |&l| {
                let lhs = &eb(&f_series_apply(&t, l, Gamma::Alpha, &jf)?) - &f_series_apply(&t, l, Gamma::Alpha, &eb(&jf))?;
                Ok(lhs == f_series_apply(&t, l + 1, Gamma::Alpha, &gamma_operator_commutator(&t, &jf))?)
            },
            |l| format!("l={l}"),
        )?;
        out.push("gamma_series", "[E_β, F^{(l)}(D_α)] = F^{(l+1)}(D_α) Γ", chart, inst("j(f)"), cx);

        let r = expansion_identity_check(&t, &f)?;
        let cx = (!(r.holds && r.vertical_term_vanishes)).then(|| format!("{r:?}"));
        out.push("four_term_expansion", "four-term expansion of d F^{(k)}(D_β) F^{(n−k)}(D_α) on j(f)", chart, inst("j(f)"), cx);

        let r = final_lemma_check(&t, &f)?;
        let cx = (!r.all()).then(|| format!("{r:?}"));
        out.push("final_lemma", "final lemma: (E_γ + c d_γ) j(f) matches ∂̄f and ϑf modulo (1,0)", chart, inst("j(f)"), cx);
    }
    Ok(())
}

fn theorem(out: &mut Sink) -> Result<(), CliError> {
    let (n, k, degree) = (out.p.n, out.p.k, out.p.degree);
    let t = standard_chart(n, k)?;
    let base = t.chart().base().to_vec();
    let chart = Some(base.as_slice());
    const MAIN: &str = "main theorem: f harmonic iff ∂̄𝒜(f) = 0 modulo (1,0)";

    let cmp = theorem_kernel_comparison(&t, degree)?;
    let inst = format!(
        "degree ≤ {degree}: basis {}, harmonic {}, closed {}, joint {}",
        cmp.basis_size, cmp.harmonic_dim, cmp.closed_dim, cmp.joint_dim
    );
    out.push("kernel_comparison", MAIN, chart, inst, (!cmp.agree()).then(|| format!("{cmp:?}")));

    for idx in subsequences(n, k)? {
        let mut f = DolbeaultForm::new(n, k)?;
        f.monomial_term(int(1), &vec![0; n], &vec![0; n], &idx.index)?;
        let same = a_operator(&t, &f)? == j_map(&t, &f)?;
        out.push("constant_forms", "𝒜 restricted to constant forms is j", chart, form_text(&f), (!same).then(|| "𝒜(f) ≠ j(f)".to_string()));
    }

    for f in harmonic_basis(n, k, degree)? {
        let v = theorem_verdict(&t, &f)?;
        let cx = (!(v.harmonic && v.dbar_closed)).then(|| format!("{v:?}"));
        out.push("harmonic_closed", MAIN, chart, form_text(&f), cx);
    }

    for f in monomial_basis(n, k, degree)?.into_iter().filter(|f| !f.is_harmonic()) {
        let v = theorem_verdict(&t, &f)?;
        let cx = v.dbar_closed.then(|| format!("{v:?}"));
        out.push("nonharmonic_not_closed", MAIN, chart, form_text(&f), cx);
    }

    let mut rng = out.rng();
    for _ in 0..3 {
        let f = random_form(&mut rng, n, k, degree)?;
        let v = theorem_verdict(&t, &f)?;
        let cx = (v.harmonic != v.dbar_closed).then(|| format!("{v:?}"));
        out.push("verdict_agreement", MAIN, chart, form_text(&f), cx);
    }
    Ok(())
}
