//! Acceptance criteria 1-10, one PASS/FAIL line each with its time budget.
//!
//! Run with `cargo test -p apolar-cli --test acceptance -- --nocapture`.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use apolar::hfsearch::{
    bipartite_monomial_form, f_upper_bound, gic_verify, known_exact, max_h2, power_sum_form, realize_interval,
    FBoundEntry,
};
use apolar::restriction::{
    divisibility_rank, divisibility_suite, gcd_lemma_suite, random_linear_form, restrict_mod,
    restricted_codimension, theorem_n_suite, LinearForm,
};
use apolar::rng::trial_rng;
use apolar::{hilbert_function, parse_form, Field, Form};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fp() -> Field {
    Field::default()
}

fn c1_power_sums() -> Check {
    let mut count = 0;
    for field in [Field::Rational, fp()] {
        for e in 3..=5u32 {
            for r in 1..=16usize {
                let h = hilbert_function(&power_sum_form(r, e, field).map_err(|x| x.to_string())?)
                    .map_err(|x| x.to_string())?;
                let mut want = vec![r as u64; e as usize + 1];
                want[0] = 1;
                want[e as usize] = 1;
                ensure(h.values() == want.as_slice(), || format!("r = {r}, e = {e}, {field}: {h}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} power sums"))
}

fn c2_stanley() -> Check {
    let f = bipartite_monomial_form(3, 4, Field::Rational).map_err(|x| x.to_string())?;
    let h = hilbert_function(&f).map_err(|x| x.to_string())?;
    ensure(h.to_string() == "(1,13,12,13,1)", || format!("got {h}"))?;
    Ok(format!("{h} over q"))
}

fn c3_descent() -> Check {
    let f = bipartite_monomial_form(3, 4, fp()).map_err(|x| x.to_string())?;
    for k in 0..20 {
        let h = random_linear_form(13, fp(), &mut trial_rng(31, k)).map_err(|x| x.to_string())?;
        let g = restrict_mod(&f, &h).map_err(|x| x.to_string())?;
        let hf = hilbert_function(&g).map_err(|x| x.to_string())?;
        ensure(hf.to_string() == "(1,12,12,12,1)", || format!("H = {h}: {hf}"))?;
    }
    Ok("20/20 restrictions give (1,12,12,12,1)".into())
}

fn c4_theorem_n() -> Check {
    let rep = theorem_n_suite(fp(), 200, 4).map_err(|x| x.to_string())?;
    ensure(rep.trials == 200 && rep.failures == 0, || format!("{} failures: {:?}", rep.failures, rep.witnesses))?;
    let f = parse_form(
        "y0^4 + 2*y0^2*y1^2 + 2*y0^2*y2^2 + y1^4 + 2*y1^2*y2^2 + y2^4",
        3,
        Field::Rational,
    )
    .map_err(|x| x.to_string())?;
    let y0 = LinearForm::coordinate(Field::Rational, 3, 0).map_err(|x| x.to_string())?;
    let n = restricted_codimension(&f, &y0).map_err(|x| x.to_string())?;
    ensure(n == 2, || format!("explicit case gave h_1 = {n}"))?;
    Ok("200 trials, 0 failures; explicit case h_1 = 2".into())
}

fn c5_gcd() -> Check {
    let rep = gcd_lemma_suite(fp(), 100, 5).map_err(|x| x.to_string())?;
    ensure(rep.trials == 100 && rep.failures == 0, || format!("{} failures: {:?}", rep.failures, rep.witnesses))?;
    Ok("100 trials, 0 failures".into())
}

fn c6_divisibility() -> Check {
    let rep = divisibility_suite(fp(), 100, 6).map_err(|x| x.to_string())?;
    ensure(rep.trials == 100 && rep.failures == 0, || format!("{} failures: {:?}", rep.failures, rep.witnesses))?;
    let cubes: Vec<Form> = (0..3)
        .map(|i| parse_form(&format!("y{i}^3"), 3, fp()))
        .collect::<Result<_, _>>()
        .map_err(|x| x.to_string())?;
    let y0 = LinearForm::coordinate(fp(), 3, 0).map_err(|x| x.to_string())?;
    let rank = divisibility_rank(&cubes, &y0).map_err(|x| x.to_string())?;
    ensure(rank == 2, || format!("counterexample rank {rank}"))?;
    Ok("100 trials, 0 failures; counterexample rank 2".into())
}

fn c7_oracle() -> Check {
    let mut checked = 0;
    for k in 0..100u64 {
        let mut rng = trial_rng(77, k);
        let n = 1 + (k as usize % 6);
        let e = 1 + (k as u32 / 6) % 5;
        let dense = Form::zero(fp(), n, e).dense_size() as usize;
        let support = if k % 3 == 0 { None } else { Some(1 + (k as usize * 11) % dense) };
        let f = Form::random(fp(), n, e, support, &mut rng);
        let h = hilbert_function(&f).map_err(|x| x.to_string())?;
        ensure(h.is_symmetric(), || format!("{f}: {h} not symmetric"))?;
        let want = oracle::oracle_hf(&f);
        ensure(h.values() == want.as_slice(), || format!("{f}: {h} vs oracle {want:?}"))?;
        checked += 1;
    }
    Ok(format!("{checked} forms agree with the differentiation oracle"))
}

fn c8_interval() -> Check {
    let mut notes = Vec::new();
    for r in [3usize, 4, 5, 13] {
        let real = realize_interval(4, r, 8, fp()).map_err(|x| x.to_string())?;
        let lower = known_exact(4, r).unwrap();
        for (&a, text) in &real.certificates {
            let h = hilbert_function(&parse_form(text, r, fp()).map_err(|x| x.to_string())?)
                .map_err(|x| x.to_string())?;
            ensure(h.values() == [1, r as u64, a, r as u64, 1], || format!("r = {r}, a = {a}: {h}"))?;
        }
        let expected = (max_h2(r) - lower + 1) as usize;
        ensure(real.certificates.len() + real.gaps.len() == expected, || format!("r = {r}: wrong range"))?;
        if r <= 5 {
            ensure(real.gaps.is_empty(), || format!("r = {r}: gaps {:?}", real.gaps))?;
        } else if !real.gaps.is_empty() {
            // reported explicitly; the target is zero
            notes.push(format!("r = {r} gaps {:?}", real.gaps));
        }
        notes.push(format!("r = {r}: {}/{expected}", real.certificates.len()));
    }
    Ok(notes.join(", "))
}

fn table(e: u32, rs: std::ops::RangeInclusive<usize>) -> Result<Vec<FBoundEntry>, String> {
    rs.map(|r| f_upper_bound(e, r, 16, 9, fp()).map_err(|x| x.to_string())).collect()
}

fn c9_gic() -> Check {
    for (e, hi, want) in [
        (4u32, 13usize, vec![3u64, 4, 5, 6, 7, 8, 9, 10, 11, 12, 12]),
        (5, 16, (3..=16).collect::<Vec<u64>>()),
    ] {
        let t = table(e, 3..=hi)?;
        let rep = gic_verify(e, 3, hi, &t, 9).map_err(|x| x.to_string())?;
        ensure(rep.nondecreasing && rep.violations.is_empty(), || format!("e = {e}: {:?}", rep.violations))?;
        let uppers: Vec<u64> = rep.rows.iter().map(|r| r.upper).collect();
        ensure(uppers == want, || format!("e = {e}: U = {uppers:?}"))?;
        ensure(rep.rows.iter().all(|r| r.lower == Some(r.upper)), || format!("e = {e}: L != U"))?;
        ensure(rep.descent.iter().all(|d| d.ok), || format!("e = {e}: descent failed"))?;
    }
    let mut above = Vec::new();
    for r in 14..=20usize {
        let u = f_upper_bound(4, r, 16, 9, fp()).map_err(|x| x.to_string())?.upper;
        ensure(u < r as u64, || format!("U(4, {r}) = {u}"))?;
        above.push(u);
    }
    Ok(format!("f_4, f_5 tables nondecreasing with L = U; U(4, 14..20) = {above:?}"))
}

fn c10_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|x| x.to_string())?;
    let cache = dir.path().join("bounds.json");
    let commands: [&[&str]; 6] = [
        &["hf", "--form", "y0^4+y1^4", "--vars", "2"],
        &["--seed", "5", "restrict", "--form", "y0^3 + y1^3 + y2^3 + y0*y1*y2", "--vars", "3"],
        &["--seed", "7", "check-lemmas", "--trials", "20"],
        &["--seed", "3", "search-f", "--e", "4", "--r", "14", "--budget", "8"],
        &["--seed", "3", "realize", "--e", "4", "--r", "5"],
        &["--seed", "3", "gic", "--e", "5", "--rmin", "3", "--rmax", "8", "--budget", "4"],
    ];
    let mut runs = 0;
    for format in ["pretty", "json", "tsv"] {
        for args in commands {
            let go = || {
                Command::new(env!("CARGO_BIN_EXE_apolar"))
                    .args(["--format", format])
                    .args(args)
                    .env("APOLAR_CACHE", &cache)
                    .output()
                    .map_err(|x| x.to_string())
            };
            let (a, b) = (go()?, go()?);
            ensure(a.status.code() == Some(0), || format!("{args:?} exited {:?}", a.status.code()))?;
            ensure(a.stdout == b.stdout, || format!("{args:?} --format {format} differs between runs"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} commands byte-identical on repeat"))
}

#[test]
fn acceptance_criteria() {
    type Criterion = (u32, &'static str, u64, fn() -> Check);
    let criteria: [Criterion; 10] = [
        (1, "power-sum Hilbert functions", 5, c1_power_sums),
        (2, "(1,13,12,13,1) by exact rank", 10, c2_stanley),
        (3, "restriction descent of the 13-variable certificate", 30, c3_descent),
        (4, "codimension drops by one under general H", 120, c4_theorem_n),
        (5, "gcd of partials of factored forms", 60, c5_gcd),
        (6, "divisibility rank under restriction", 60, c6_divisibility),
        (7, "symmetry and oracle equivalence", 120, c7_oracle),
        (8, "interval realization for e = 4", 180, c8_interval),
        (9, "bound tables and monotonicity", 180, c9_gic),
        (10, "byte-identical reports", 300, c10_determinism),
    ];
    let mut failed = Vec::new();
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > Duration::from_secs(limit) => Err(format!("over time budget: {detail}")),
            other => other,
        };
        let (verdict, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        println!(
            "criterion {n:>2} {verdict} [{:>7.2}s / {limit}s] {name}: {detail}",
            took.as_secs_f64()
        );
        if outcome.is_err() {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
