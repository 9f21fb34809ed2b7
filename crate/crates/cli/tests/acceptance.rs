//! Acceptance suite: one PASS/FAIL line per criterion and a summary line.
//!
//! The process exits successfully even when a criterion fails so that the
//! rest of the workspace tests still run; the FAIL line is the result.
//! Set `ACCEPTANCE_STRICT=1` to turn any failure into a nonzero exit.

use std::process::{Command as Proc, ExitCode};
use std::time::Instant;

use derham_core::factor::{build_quotient, split, verify, SplitOptions};
use derham_core::genericity::{is_generic, prepare};
use derham_core::poly::{gcd, rat};
use derham_core::{build_system, count_factors, nullspace, parse, print, Polynomial, VarTable};
use derham_factor::commands::section_count;
use derham_factor::Plane2;
use derham_oracle::{
    corpus, oracle_tuples, random_linear_change, random_polynomial, rng, Instance,
};

const CORPUS_SEED: u64 = 2024;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn xyz() -> VarTable {
    VarTable::new(&["x", "y", "z"]).unwrap()
}

fn p(s: &str) -> Polynomial {
    parse(s, &xyz()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn count(q: &Polynomial) -> Result<usize, String> {
    count_factors(q).map_err(|e| e.to_string())
}

fn at(q: &Polynomial, var: usize, value: i64) -> Polynomial {
    q.evaluate_partial(&[(var, rat(value))]).unwrap()
}

fn umbrella() -> Check {
    let f = p("x^2 - z*y^2");
    let (whole, z1, y1) = (count(&f)?, count(&at(&f, 2, 1))?, count(&at(&f, 1, 1))?);
    ensure((whole, z1, y1) == (1, 2, 1), || {
        format!("counts whole/z=1/y=1 = {whole}/{z1}/{y1}")
    })?;
    Ok("1 / 2 / 1".into())
}

fn affine_surface() -> Check {
    let f = p("x^2*y - x - z");
    let whole = count(&f)?;
    let z0 = at(&f, 2, 0);
    let s0 = count(&z0)?;
    let s1 = count(&at(&f, 2, 1))?;
    ensure((whole, s0, s1) == (1, 2, 1), || {
        format!("counts whole/z=0/z=1 = {whole}/{s0}/{s1}")
    })?;
    let r = split(&z0, SplitOptions::default()).map_err(|e| e.to_string())?;
    let expected = [p("x"), p("x*y - 1")];
    let found = |e: &Polynomial| r.factors.iter().filter(|g| g.is_associate(e)).count() == 1;
    ensure(
        r.factors.len() == 2 && expected.iter().all(found) && r.residual.is_one(),
        || {
            format!(
                "z=0 split gave {:?}",
                r.factors.iter().map(|g| g.to_string()).collect::<Vec<_>>()
            )
        },
    )?;
    Ok("1 / 2 / 1, z=0 splits as x and x*y - 1".into())
}

fn order_sensitivity() -> Check {
    let f = p("x^2*y^2*z^2 + x");
    let gx = is_generic(&f, 0).map_err(|e| e.to_string())?.is_generic;
    let gy = is_generic(&f, 1).map_err(|e| e.to_string())?.is_generic;
    ensure(gx && !gy, || format!("generic in x: {gx}, in y: {gy}"))?;
    Ok("generic in x, not in y".into())
}

fn nullspace_matches_oracle(corpus: &[Instance]) -> Check {
    let mut tuples = 0;
    for (i, inst) in corpus.iter().enumerate() {
        let sys = build_system(&inst.product).map_err(|e| format!("#{i}: {e}"))?;
        let basis = nullspace(&sys).map_err(|e| format!("#{i}: {e}"))?;
        ensure(basis.dim() == inst.count(), || {
            format!("#{i}: dim {} but {} factors", basis.dim(), inst.count())
        })?;
        for t in oracle_tuples(&inst.factors) {
            ensure(sys.contains(&t.parts), || {
                format!(
                    "#{i}: oracle tuple for factor {} not in the kernel",
                    t.factor
                )
            })?;
            tuples += 1;
        }
    }
    Ok(format!(
        "{} instances, {tuples} oracle tuples",
        corpus.len()
    ))
}

fn quotient_dimension(corpus: &[Instance]) -> Check {
    let mut sheared = 0;
    for (i, inst) in corpus.iter().enumerate() {
        let prep = prepare(&inst.product).map_err(|e| format!("#{i}: {e}"))?;
        sheared += prep.change.is_some() as usize;
        let w = &prep.working;
        let g = gcd(w, &w.derivative(prep.variable)).map_err(|e| format!("#{i}: {e}"))?;
        ensure(g.is_constant(), || {
            format!("#{i}: gcd with derivative is {g}")
        })?;
        let basis =
            nullspace(&build_system(w).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let ctx = build_quotient(w, &basis, prep.variable).map_err(|e| format!("#{i}: {e}"))?;
        ensure(ctx.component_classes().len() == inst.count(), || {
            format!(
                "#{i}: quotient dim {} but {} factors",
                ctx.component_classes().len(),
                inst.count()
            )
        })?;
    }
    Ok(format!(
        "{} instances, {sheared} needed a shear",
        corpus.len()
    ))
}

fn idempotent_identities(corpus: &[Instance]) -> Check {
    for (i, inst) in corpus.iter().enumerate() {
        let prep = prepare(&inst.product).map_err(|e| format!("#{i}: {e}"))?;
        let factors: Vec<Polynomial> = match &prep.change {
            Some(t) => inst
                .factors
                .iter()
                .map(|f| f.apply_change(t).unwrap())
                .collect(),
            None => inst.factors.clone(),
        };
        let w = &prep.working;
        let v = prep.variable;
        let dw = w.derivative(v);
        let firsts: Vec<Polynomial> = oracle_tuples(&factors)
            .into_iter()
            .map(|t| t.parts.part(v).clone())
            .collect();
        let sum = firsts
            .iter()
            .fold(Polynomial::zero(w.nvars()), |a, b| &a + b);
        ensure(sum == dw, || {
            format!("#{i}: components do not sum to the derivative")
        })?;
        let nf = |q: &Polynomial| q.normal_form(w).unwrap();
        for (a, ba) in firsts.iter().enumerate() {
            ensure(nf(&(&(ba * ba) - &(&dw * ba))).is_zero(), || {
                format!("#{i}: idempotent identity fails for factor {a}")
            })?;
            for bb in &firsts[a + 1..] {
                ensure(nf(&(ba * bb)).is_zero(), || {
                    format!("#{i}: orthogonality fails for factor {a}")
                })?;
            }
        }
    }
    Ok(format!("{} instances", corpus.len()))
}

fn split_round_trip(corpus: &[Instance]) -> Check {
    let mut runs = 0;
    for seed in [1u64, 2, 3] {
        for (i, inst) in corpus.iter().enumerate() {
            let r = split(
                &inst.product,
                SplitOptions {
                    seed,
                    max_retries: 8,
                },
            )
            .map_err(|e| format!("#{i} seed {seed}: {e}"))?;
            let recovered = inst
                .factors
                .iter()
                .all(|f| r.factors.iter().filter(|g| g.is_associate(f)).count() == 1);
            ensure(
                r.factors.len() == inst.count() && recovered && r.residual.is_one(),
                || {
                    format!(
                        "#{i} seed {seed}: {} of {} factors, residual {}",
                        r.factors.len(),
                        inst.count(),
                        r.residual
                    )
                },
            )?;
            ensure(r.certificate_ok && verify(&inst.product, &r), || {
                format!("#{i} seed {seed}: certificate failed")
            })?;
            runs += 1;
        }
    }
    let q = parse("x^2 + y^2", &VarTable::new(&["x", "y"]).unwrap()).unwrap();
    let r = split(&q, SplitOptions::default()).map_err(|e| e.to_string())?;
    ensure(
        r.count == 2
            && r.factors.is_empty()
            && r.residual.is_associate(&q)
            && r.char_poly.rational_roots().is_empty(),
        || {
            format!(
                "x^2 + y^2: count {}, residual {}, char poly {}",
                r.count,
                r.residual,
                r.char_poly.display("t")
            )
        },
    )?;
    Ok(format!("{runs} complete splits, x^2 + y^2 stays partial"))
}

fn coordinate_invariance(corpus: &[Instance]) -> Check {
    let mut r = rng(CORPUS_SEED + 8);
    let mut checks = 0;
    for (i, inst) in corpus.iter().enumerate() {
        for k in 0..20 {
            let t = random_linear_change(&mut r, inst.nvars);
            let q = inst.product.apply_change(&t).unwrap();
            let c = count(&q).map_err(|e| format!("#{i} change {k}: {e}"))?;
            ensure(c == inst.count(), || {
                format!("#{i} change {k}: count {c}, expected {}", inst.count())
            })?;
            checks += 1;
        }
    }
    Ok(format!("{checks} transformed instances"))
}

fn run_binary(args: &[&str]) -> Vec<u8> {
    Proc::new(env!("CARGO_BIN_EXE_derham-factor"))
        .args(args)
        .output()
        .expect("binary runs")
        .stdout
}

fn round_trip_and_determinism() -> Check {
    let names = ["x", "y", "z", "w"];
    let mut r = rng(CORPUS_SEED + 9);
    for k in 0..1000 {
        let n = 1 + k % 4;
        let vars = VarTable::new(&names[..n]).unwrap();
        let q = random_polynomial(&mut r, n, 8, 6);
        let text = print(&q, &vars).unwrap();
        let back = parse(&text, &vars).map_err(|e| format!("`{text}`: {e}"))?;
        ensure(back == q, || format!("`{text}` reparses as {back}"))?;
    }
    let jobs: [&[&str]; 5] = [
        &["count", "x^2 - z*y^2", "--format", "json"],
        &[
            "factor",
            "x^3 - x*y^2 + x*z - y*z",
            "--format",
            "json",
            "--seed",
            "5",
        ],
        &["factor", "x^2 + y^2", "--format", "json"],
        &[
            "generic",
            "x^2*y^2*z^2 + x",
            "--var",
            "y",
            "--format",
            "json",
        ],
        &[
            "section",
            "x^2*y - x - z",
            "--random-planes",
            "4",
            "--seed",
            "3",
            "--format",
            "json",
        ],
    ];
    for args in jobs {
        let (a, b) = (run_binary(args), run_binary(args));
        ensure(!a.is_empty() && a == b, || {
            format!("output of {args:?} differs between runs")
        })?;
        serde_json::from_slice::<serde_json::Value>(&a).map_err(|e| format!("{args:?}: {e}"))?;
    }
    Ok("1000 parse/print round trips, 5 JSON reports byte-identical".into())
}

fn plane_sections(corpus: &[Instance]) -> Check {
    let mut batches = 0;
    let (mut planes, mut mismatches) = (0usize, 0usize);
    let mut worst = 1.0f64;
    let st = VarTable::new(&["s", "t"]).unwrap();
    for (i, inst) in corpus.iter().enumerate().filter(|(_, c)| c.nvars == 3) {
        let mut r = rng(CORPUS_SEED + 10 + i as u64);
        let mut matched = 0;
        for _ in 0..50 {
            let plane = Plane2::random(&mut r, 3);
            let (q, c) = section_count(&inst.product, &plane);
            if c.as_ref().is_ok_and(|&c| c == inst.count()) {
                matched += 1;
            } else {
                mismatches += 1;
                println!(
                    "    mismatch #{i}: plane {plane}, section {}, count {c:?}, ambient {}",
                    print(&q, &st).unwrap(),
                    inst.count()
                );
            }
            planes += 1;
        }
        worst = worst.min(matched as f64 / 50.0);
        batches += 1;
    }
    ensure(worst >= 0.98, || {
        format!(
            "worst batch matched {:.0}% ({mismatches} mismatches in {planes} planes)",
            worst * 100.0
        )
    })?;
    Ok(format!(
        "{batches} batches of 50, worst batch {:.0}%, {mismatches} mismatches in {planes} planes",
        worst * 100.0
    ))
}

fn main() -> ExitCode {
    let corpus = corpus(CORPUS_SEED);
    let criteria: Vec<Criterion> = vec![
        (
            "counts of the umbrella and its sections",
            Box::new(umbrella),
        ),
        (
            "counts and split of x^2*y - x - z",
            Box::new(affine_surface),
        ),
        (
            "genericity depends on the variable",
            Box::new(order_sensitivity),
        ),
        (
            "kernel dimension and oracle tuples",
            Box::new(|| nullspace_matches_oracle(&corpus)),
        ),
        (
            "squarefree derivative and quotient dimension",
            Box::new(|| quotient_dimension(&corpus)),
        ),
        (
            "idempotent identities mod P",
            Box::new(|| idempotent_identities(&corpus)),
        ),
        (
            "split round trip and partial path",
            Box::new(|| split_round_trip(&corpus)),
        ),
        (
            "count under linear changes",
            Box::new(|| coordinate_invariance(&corpus)),
        ),
        (
            "parse/print and JSON determinism",
            Box::new(round_trip_and_determinism),
        ),
        (
            "plane sections preserve the count",
            Box::new(|| plane_sections(&corpus)),
        ),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.1}s]", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 || std::env::var_os("ACCEPTANCE_STRICT").is_none() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
