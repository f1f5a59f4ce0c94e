//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use twistor_cli::document::{from_document, to_document, FormDocument, TermRecord};
use twistor_cli::{parse_form, run_suite, serialize_form, Record, SuiteParams};
use twistor_core::correspondence::{a_operator, j_map, standard_chart, theorem_verdict, twistor_dbar, DolbeaultForm};
use twistor_core::ring::Coeff;
use twistor_core::GaussRat;

/// Name, check, time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

struct Outcome {
    ok: bool,
    detail: String,
}

fn records(suite: &str, n: usize, k: usize, degree: Option<u32>) -> Result<Vec<Record>, String> {
    let p = SuiteParams::new(n, k, degree, 0).map_err(|e| e.to_string())?;
    run_suite(suite, &p).map(|r| r.records).map_err(|e| e.to_string())
}

/// Runs `suite` over `shapes`, keeping the records whose check is in `checks`.
fn collect(suite: &str, shapes: &[(usize, usize, Option<u32>)], checks: &[&str]) -> Result<Vec<Record>, String> {
    let mut out = Vec::new();
    for &(n, k, d) in shapes {
        out.extend(records(suite, n, k, d)?.into_iter().filter(|r| checks.contains(&r.check)));
    }
    Ok(out)
}

fn count(rs: &[Record], check: &str) -> usize {
    rs.iter().filter(|r| r.check == check).count()
}

/// All records pass and each listed check has at least the given number of instances.
fn judge(rs: Result<Vec<Record>, String>, minimum: &[(&str, usize)]) -> Outcome {
    let rs = match rs {
        Ok(rs) => rs,
        Err(e) => return Outcome { ok: false, detail: format!("error: {e}") },
    };
    if let Some(bad) = rs.iter().find(|r| !r.pass) {
        return Outcome { ok: false, detail: format!("{} failed at {:?}: {:?}", bad.check, bad.params, bad.counterexample) };
    }
    for &(check, min) in minimum {
        let c = count(&rs, check);
        if c < min {
            return Outcome { ok: false, detail: format!("only {c} `{check}` instances, need {min}") };
        }
    }
    let mut parts: Vec<String> = minimum.iter().map(|(c, _)| format!("{c} ×{}", count(&rs, c))).collect();
    parts.insert(0, format!("{} checks", rs.len()));
    Outcome { ok: true, detail: parts.join(", ") }
}

fn all_shapes(max_n: usize) -> Vec<(usize, usize, Option<u32>)> {
    (1..=max_n).flat_map(|n| (0..=n).map(move |k| (n, k, None))).collect()
}

fn criterion_1() -> Outcome {
    let shapes: Vec<_> = (1..=4).map(|n| (n, 0, None)).collect();
    let rs = collect("clifford", &shapes, &["clifford_relation", "clifford_relation_extended"]);
    judge(rs, &[("clifford_relation", 1), ("clifford_relation_extended", 1)])
}

fn criterion_2() -> Outcome {
    let shapes: Vec<_> = (1..=3).map(|n| (n, 0, None)).collect();
    judge(collect("clifford", &shapes, &["grading", "unitary_commutators"]), &[("grading", 14)])
}

fn criterion_3() -> Outcome {
    let checks = ["derivative_rule", "quadratic_relation", "exchange_relation", "minor_oracle"];
    judge(collect("plucker", &all_shapes(4), &checks), &[("exchange_relation", 1), ("quadratic_relation", 1), ("minor_oracle", 20)])
}

fn criterion_4() -> Outcome {
    let shapes = [(2, 1, None), (3, 1, None), (3, 2, None)];
    judge(collect("vectorfields", &shapes, &["flow_oracle", "bracket", "anti_homomorphism"]), &[("flow_oracle", 8), ("bracket", 22)])
}

fn criterion_5() -> Outcome {
    judge(collect("series", &[(2, 1, None)], &["ode", "coefficients"]), &[("ode", 7), ("coefficients", 7)])
}

fn criterion_6() -> Outcome {
    let checks = [
        "e_closed_form",
        "e_d_relation",
        "gamma_closed_form",
        "gamma_commutes",
        "series_commutator",
        "gamma_series",
        "four_term_expansion",
    ];
    let small = collect("operators", &[(2, 1, Some(2))], &checks);
    let r = judge(small, &[("four_term_expansion", 10), ("series_commutator", 10), ("gamma_series", 10)]);
    if !r.ok {
        return r;
    }
    let larger = collect("operators", &[(3, 1, Some(2)), (3, 2, Some(2))], &checks);
    let r2 = judge(larger, &[("four_term_expansion", 6), ("series_commutator", 6), ("gamma_series", 6)]);
    Outcome { ok: r2.ok, detail: format!("(2,1): {}; (3,1)+(3,2): {}", r.detail, r2.detail) }
}

fn criterion_7() -> Outcome {
    judge(collect("frames", &all_shapes(3), &["lie_on_sections", "line_factors"]), &[("lie_on_sections", 1)])
}

fn criterion_8() -> Outcome {
    let shapes: Vec<_> = (1..=3).map(|n| (n, 0, None)).collect();
    judge(collect("clifford", &shapes, &["coordinate_transform"]), &[("coordinate_transform", 30)])
}

fn holomorphic_case() -> Result<String, String> {
    let e = |x: twistor_core::Error| x.to_string();
    for n in [2usize, 3] {
        let t = standard_chart(n, 0).map_err(e)?;
        let mut xi = vec![0u16; n];
        xi[0] = 1;
        xi[n - 1] += 1;
        let mut holo = DolbeaultForm::new(n, 0).map_err(e)?;
        holo.monomial_term(GaussRat::from_i64(3), &xi, &vec![0; n], &[]).map_err(e)?;
        let a = a_operator(&t, &holo).map_err(e)?;
        if a != j_map(&t, &holo).map_err(e)? || !twistor_dbar(&t, &a).is_zero() {
            return Err(format!("n={n}: holomorphic f not mapped to a closed f·frame"));
        }
        let mut anti = DolbeaultForm::new(n, 0).map_err(e)?;
        anti.monomial_term(GaussRat::from_i64(1), &vec![0; n], &xi, &[]).map_err(e)?;
        let v = theorem_verdict(&t, &anti).map_err(e)?;
        if v.harmonic || v.dbar_closed {
            return Err(format!("n={n}: antiholomorphic f gives {v:?}"));
        }
    }
    Ok("k=0 holomorphic case ok".into())
}

fn criterion_9() -> Outcome {
    let checks = ["kernel_comparison", "constant_forms", "harmonic_closed", "nonharmonic_not_closed", "verdict_agreement"];
    let r = judge(collect("theorem", &[(2, 1, Some(2))], &checks), &[("harmonic_closed", 8), ("nonharmonic_not_closed", 5), ("constant_forms", 2)]);
    if !r.ok {
        return r;
    }
    let r2 = judge(
        collect("theorem", &[(3, 1, Some(1)), (3, 2, Some(1))], &checks),
        &[("harmonic_closed", 16), ("nonharmonic_not_closed", 5), ("constant_forms", 6)],
    );
    if !r2.ok {
        return r2;
    }
    let r3 = judge(collect("theorem", &[(2, 0, Some(2)), (3, 0, Some(1))], &checks), &[("harmonic_closed", 2)]);
    if !r3.ok {
        return r3;
    }
    match holomorphic_case() {
        Ok(msg) => Outcome { ok: true, detail: format!("(2,1): {}; n=3: {}; {msg}", r.detail, r2.detail) },
        Err(e) => Outcome { ok: false, detail: e },
    }
}

fn criterion_10() -> Outcome {
    let fail = |detail: String| Outcome { ok: false, detail };
    let d = FormDocument {
        n: 2,
        k: 1,
        chart: None,
        terms: vec![
            TermRecord { coeff: "1".into(), xi: vec![0, 1], xibar: vec![0, 0], index: vec![1] },
            TermRecord { coeff: "1/2+1/3*i".into(), xi: vec![0, 0], xibar: vec![1, 0], index: vec![2] },
        ],
    };
    let parsed = match from_document(&d) {
        Ok(p) => p,
        Err(e) => return fail(e.to_string()),
    };
    let text = serialize_form(&parsed.form, None);
    match parse_form(&text) {
        Ok(p) if p == parsed && to_document(&p.form, None) == d => {}
        other => return fail(format!("round trip changed the document: {other:?}")),
    }

    let run = |seed: &str| Command::new(env!("CARGO_BIN_EXE_twistor")).args(["verify", "--suite", "all", "--n", "2", "--k", "1", "--seed", seed]).output();
    let (a, b) = match (run("5"), run("5")) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return fail(e.to_string()),
    };
    if a.status.code() != Some(0) {
        return fail(format!("verify exited with {:?}", a.status.code()));
    }
    if a.stdout != b.stdout {
        return fail("two seeded runs differ".into());
    }
    Outcome { ok: true, detail: format!("round trip ok, verify all exit 0, {} identical report bytes", a.stdout.len()) }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Clifford relations", criterion_1, Some(10)),
        ("grading", criterion_2, None),
        ("Plücker suite", criterion_3, Some(60)),
        ("vector fields", criterion_4, None),
        ("series", criterion_5, None),
        ("operator identities", criterion_6, Some(300)),
        ("frames", criterion_7, None),
        ("coordinate transform", criterion_8, None),
        ("main theorem", criterion_9, Some(300)),
        ("CLI", criterion_10, None),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = f();
        let took = start.elapsed();
        if let Some(secs) = limit {
            if took > Duration::from_secs(*secs) {
                o.ok = false;
                o.detail = format!("{} (over the {secs} s limit)", o.detail);
            }
        }
        if !o.ok {
            failed += 1;
        }
        println!("criterion {:>2} {:<22} {} [{:.2} s] {}", i + 1, name, if o.ok { "PASS" } else { "FAIL" }, took.as_secs_f64(), o.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
