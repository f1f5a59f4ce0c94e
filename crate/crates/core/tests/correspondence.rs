use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistor_core::correspondence::*;
use twistor_core::forms::ChartForm;
use twistor_core::twistor::{Gamma, TwistorChart};
use twistor_core::GaussRat;

fn random_form(rng: &mut ChaCha8Rng, n: usize, k: usize, degree: u32) -> DolbeaultForm {
    let basis = monomial_basis(n, k, degree).unwrap();
    let mut f = DolbeaultForm::new(n, k).unwrap();
    for _ in 0..3 {
        let b = &basis[rng.gen_range(0..basis.len())];
        let c: GaussRat = format!("{}/{}", rng.gen_range(-4..=4), rng.gen_range(1..=3)).parse().unwrap();
        f = f.add(&b.scale(&c)).unwrap();
    }
    f
}

fn samples(n: usize, k: usize, count: usize, seed: u64) -> Vec<DolbeaultForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_form(&mut rng, n, k, 2)).collect()
}

fn cases() -> Vec<(TwistorChart, Vec<DolbeaultForm>)> {
    vec![
        (standard_chart(2, 1).unwrap(), samples(2, 1, 10, 1)),
        (standard_chart(3, 1).unwrap(), samples(3, 1, 3, 2)),
        (standard_chart(3, 2).unwrap(), samples(3, 2, 3, 3)),
    ]
}

fn inputs(t: &TwistorChart, f: &DolbeaultForm) -> Vec<ChartForm> {
    let jf = j_map(t, f).unwrap();
    let da = d_operator(t, Gamma::Alpha, &jf);
    vec![jf, da]
}

#[test]
fn e_and_gamma_closed_forms() {
    for (t, fs) in cases() {
        for f in &fs {
            for w in inputs(&t, f) {
                for g in [Gamma::Alpha, Gamma::Beta] {
                    assert_eq!(e_operator_commutator(&t, g, &w), e_operator_closed(&t, g, &w).unwrap(), "E {g:?}");
                    // [E_γ, D_γ] = −2 D_γ d_γ
                    let lhs = &e_operator_commutator(&t, g, &d_operator(&t, g, &w)) - &d_operator(&t, g, &e_operator_commutator(&t, g, &w));
                    let rhs = d_operator(&t, g, &d_gamma(&t, g, &w)).scale_c(&"-2".parse::<GaussRat>().unwrap());
                    assert_eq!(lhs, rhs);
                }
                let gc = gamma_operator_commutator(&t, &w);
                assert_eq!(gc, gamma_operator_closed(&t, &w));
                let da = |x: &ChartForm| d_operator(&t, Gamma::Alpha, x);
                assert_eq!(gamma_operator_closed(&t, &da(&w)), da(&gc));
            }
        }
    }
}

#[test]
fn series_commutators() {
    for (t, fs) in cases() {
        for f in &fs {
            let w = j_map(&t, f).unwrap();
            for l in 0..3usize {
                for g in [Gamma::Alpha, Gamma::Beta] {
                    // [d, F^{(l)}(D)] = F^{(l+1)}(D) E − F^{(l+2)}(D) D d_γ
                    let lhs = &t.twisted_d(&f_series_apply(&t, l, g, &w).unwrap()) - &f_series_apply(&t, l, g, &t.twisted_d(&w)).unwrap();
                    let e = e_operator_commutator(&t, g, &w);
                    let dd = d_operator(&t, g, &d_gamma(&t, g, &w));
                    let rhs = &f_series_apply(&t, l + 1, g, &e).unwrap() - &f_series_apply(&t, l + 2, g, &dd).unwrap();
                    assert_eq!(lhs, rhs, "l={l} {g:?}");
                }
                // [E_β, F^{(l)}(D_α)] = F^{(l+1)}(D_α) Γ
                let eb = |x: &ChartForm| e_operator_commutator(&t, Gamma::Beta, x);
                let lhs = &eb(&f_series_apply(&t, l, Gamma::Alpha, &w).unwrap()) - &f_series_apply(&t, l, Gamma::Alpha, &eb(&w)).unwrap();
                let rhs = f_series_apply(&t, l + 1, Gamma::Alpha, &gamma_operator_commutator(&t, &w)).unwrap();
                assert_eq!(lhs, rhs, "l={l}");
            }
        }
    }
}

#[test]
fn four_term_expansion() {
    for (t, fs) in cases() {
        for f in &fs {
            let r = expansion_identity_check(&t, f).unwrap();
            assert!(r.holds && r.vertical_term_vanishes, "{r:?}");
            assert_eq!(r.holds_with_minus_gamma, r.gamma_term_vanishes);
        }
    }
}

#[test]
fn final_lemma() {
    for (t, fs) in cases() {
        for f in &fs {
            let r = final_lemma_check(&t, f).unwrap();
            assert!(r.all(), "{r:?} for {f:?}");
        }
    }
}

#[test]
fn gamma_kills_harmonic_mod_10() {
    for (n, k) in [(2, 1), (3, 1), (3, 2)] {
        let t = standard_chart(n, k).unwrap();
        for f in harmonic_basis(n, k, if n == 2 { 2 } else { 1 }).unwrap() {
            let jf = j_map(&t, &f).unwrap();
            assert!(t.reduce_mod_10(&gamma_operator_commutator(&t, &jf)).is_zero());
        }
    }
}

#[test]
fn theorem_kernels() {
    for (n, k, d) in [(2, 1, 2), (3, 1, 1), (3, 2, 1)] {
        let t = standard_chart(n, k).unwrap();
        let cmp = theorem_kernel_comparison(&t, d).unwrap();
        println!("{n}{k}: {cmp:?}");
        assert!(cmp.agree(), "{cmp:?}");
    }
}
