use proptest::prelude::*;
use twistor_core::forms::{ChartForm, VectorField};
use twistor_core::grassmann::Chart;
use twistor_core::ring::Coeff;
use twistor_core::{GaussRat, RatFunc};

fn chart() -> Chart {
    Chart::new(2, 1, &[1]).unwrap()
}

/// Small polynomial (or `1/N`-scaled) coefficient from a seed list.
fn coeff(c: &Chart, seed: &[i8]) -> RatFunc {
    let nv = c.nvars();
    let mut f = RatFunc::zero(nv);
    for (i, &s) in seed.iter().enumerate() {
        let v = i % nv;
        let t = RatFunc::var(v, nv).scale(&GaussRat::from_i64(s as i64));
        f = &f + &if i % 3 == 0 { &t * &RatFunc::var((v + 1) % nv, nv) } else { t };
    }
    if seed.first().is_some_and(|s| s % 2 == 0) {
        f = &f / &c.norm();
    }
    f
}

fn form_strategy() -> impl Strategy<Value = Vec<(Vec<u16>, Vec<i8>)>> {
    prop::collection::vec((prop::collection::vec(0u16..6, 0..3), prop::collection::vec(-3i8..4, 1..4)), 0..3)
}

fn build(c: &Chart, spec: &[(Vec<u16>, Vec<i8>)]) -> ChartForm {
    let mut f = ChartForm::zero(c);
    for (g, s) in spec {
        f.add_term(g.clone(), coeff(c, s));
    }
    f
}

fn field(c: &Chart, spec: &[(u16, Vec<i8>)]) -> VectorField {
    let mut v = VectorField::zero(c);
    for (x, s) in spec {
        v.add_comp(*x as usize, coeff(c, s));
    }
    v
}

fn field_strategy() -> impl Strategy<Value = Vec<(u16, Vec<i8>)>> {
    prop::collection::vec((0u16..6, prop::collection::vec(-3i8..4, 1..3)), 0..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn wedge_associative_graded(a in form_strategy(), b in form_strategy(), e in form_strategy()) {
        let c = chart();
        let (a, b, e) = (build(&c, &a), build(&c, &b), build(&c, &e));
        prop_assert_eq!(a.wedge(&b).unwrap().wedge(&e).unwrap(), a.wedge(&b.wedge(&e).unwrap()).unwrap());
        for p in 0..3 {
            for q in 0..3 {
                let x = a.homogeneous_part(p);
                let y = b.homogeneous_part(q);
                let xy = x.wedge(&y).unwrap();
                let yx = y.wedge(&x).unwrap();
                prop_assert_eq!(xy, if (p * q) % 2 == 1 { -&yx } else { yx });
            }
        }
    }

    #[test]
    fn contraction_antiderivation(a in form_strategy(), b in form_strategy(), v in field_strategy()) {
        let c = chart();
        let (a, b, v) = (build(&c, &a), build(&c, &b), field(&c, &v));
        prop_assert!(a.contract(&v).unwrap().contract(&v).unwrap().is_zero());
        for p in 0..3 {
            let x = a.homogeneous_part(p);
            let lhs = x.wedge(&b).unwrap().contract(&v).unwrap();
            let t1 = x.contract(&v).unwrap().wedge(&b).unwrap();
            let t2 = x.wedge(&b.contract(&v).unwrap()).unwrap();
            let rhs = if p % 2 == 1 { &t1 - &t2 } else { &t1 + &t2 };
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn d_squared_and_lie_commutes(a in form_strategy(), v in field_strategy()) {
        let c = chart();
        let (a, v) = (build(&c, &a), field(&c, &v));
        let da = a.exterior_d().unwrap();
        prop_assert!(da.exterior_d().unwrap().is_zero());
        prop_assert_eq!(da.lie_derivative(&v).unwrap(), a.lie_derivative(&v).unwrap().exterior_d().unwrap());
    }

    #[test]
    fn lie_of_bracket(a in form_strategy(), v in field_strategy(), u in field_strategy()) {
        let c = chart();
        let (a, v, u) = (build(&c, &a), field(&c, &v), field(&c, &u));
        let lhs = a.lie_derivative(&v.bracket(&u).unwrap()).unwrap();
        let vu = a.lie_derivative(&u).unwrap().lie_derivative(&v).unwrap();
        let uv = a.lie_derivative(&v).unwrap().lie_derivative(&u).unwrap();
        prop_assert_eq!(lhs, &vu - &uv);
    }

    #[test]
    fn lie_derivation(s in prop::collection::vec(-3i8..4, 1..3), a in form_strategy(), v in field_strategy()) {
        let c = chart();
        let f = coeff(&c, &s);
        let (a, v) = (build(&c, &a), field(&c, &v));
        let lhs = a.scale(&f).lie_derivative(&v).unwrap();
        let rhs = &a.scale(&v.apply(&f)) + &a.lie_derivative(&v).unwrap().scale(&f);
        prop_assert_eq!(lhs, rhs);
    }
}
