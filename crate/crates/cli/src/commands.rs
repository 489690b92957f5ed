//! Subcommand bodies. Each returns a [`Report`] or an input error.

use std::io::Write;

use apolar::cache;
use apolar::hfsearch::{f_upper_bound, gic_verify, known_exact, realize_interval, FBoundEntry};
use apolar::restriction::{
    divisibility_suite, gcd_lemma_suite, random_linear_form, restrict_mod, theorem_n_suite, LinearForm, TrialReport,
};
use apolar::rng::trial_rng;
use apolar::{codimension, hilbert_function, parse_form, Error, Result};
use serde_json::json;

use crate::report::Report;
use crate::SessionArgs;

fn header(names: &[&str]) -> Vec<String> {
    names.iter().map(|n| n.to_string()).collect()
}

fn strs<const N: usize>(cells: [&dyn ToString; N]) -> Vec<String> {
    cells.iter().map(|c| c.to_string()).collect()
}

pub fn hf(session: &SessionArgs, text: &str, vars: usize) -> Result<Report> {
    let form = parse_form(text, vars, session.field)?;
    let h = hilbert_function(&form)?;
    let mut report = Report::new(
        "hf",
        json!({
            "form": form.to_string(),
            "vars": vars,
            "hilbert_function": h.to_string(),
            "codimension": h.codimension(),
            "symmetric": h.is_symmetric(),
        }),
    );
    report.pretty.push(h.to_string());
    report.tsv.push(header(&["form", "vars", "hilbert_function"]));
    report.tsv.push(strs([&form, &vars, &h]));
    Ok(report)
}

pub fn restrict(session: &SessionArgs, text: &str, vars: usize, h: Option<&str>) -> Result<Report> {
    let form = parse_form(text, vars, session.field)?;
    let h = match h {
        Some(t) => {
            let h = LinearForm::parse(t, session.field)?;
            if h.n_vars() != vars {
                return Err(Error::InvalidInput(format!(
                    "--H has {} coefficients but the ring has {vars} variables",
                    h.n_vars()
                )));
            }
            h
        }
        None => random_linear_form(vars, session.field, &mut trial_rng(session.seed, 0))?,
    };
    let restricted = restrict_mod(&form, &h)?;
    let before = hilbert_function(&form)?;
    let after = if restricted.is_zero() {
        None
    } else {
        Some(hilbert_function(&restricted)?)
    };
    let codim_after = if restricted.is_zero() { 0 } else { codimension(&restricted)? };
    let after_text = after.as_ref().map_or("-".to_string(), ToString::to_string);
    let mut report = Report::new(
        "restrict",
        json!({
            "form": form.to_string(),
            "vars": vars,
            "H": h.to_string(),
            "pivot": h.pivot(),
            "restricted": restricted.to_string(),
            "hilbert_function": before.to_string(),
            "restricted_hilbert_function": after.as_ref().map(ToString::to_string),
            "codimension": before.codimension(),
            "restricted_codimension": codim_after,
        }),
    );
    report.pretty = vec![
        format!("H: {h}"),
        format!("F^H: {restricted}"),
        format!("HF(F): {before}"),
        format!("HF(F^H): {after_text}"),
        format!("codimension: {} -> {codim_after}", before.codimension()),
    ];
    report.tsv = vec![
        strs([&"H", &h]),
        strs([&"restricted", &restricted]),
        strs([&"hilbert_function", &before]),
        strs([&"restricted_hilbert_function", &after_text]),
        strs([&"codimension", &before.codimension()]),
        strs([&"restricted_codimension", &codim_after]),
    ];
    Ok(report)
}

pub fn check_lemmas(session: &SessionArgs, trials: usize) -> Result<Report> {
    let (field, seed) = (session.field, session.seed);
    let suites: Vec<TrialReport> = vec![
        gcd_lemma_suite(field, trials, seed)?,
        divisibility_suite(field, trials, seed)?,
        theorem_n_suite(field, trials, seed)?,
    ];
    let passed = suites.iter().all(TrialReport::passed);
    let mut report = Report::new("check-lemmas", json!({ "suites": suites, "all_passed": passed }));
    report.passed = passed;
    report.tsv.push(header(&["suite", "trials", "failures"]));
    for s in &suites {
        report.pretty.push(format!("{}: {} trials, {} failures", s.suite, s.trials, s.failures));
        for w in &s.witnesses {
            let h = w.h.as_deref().unwrap_or("-");
            report
                .pretty
                .push(format!("  witness: form {} ({} vars), H {h}, observed {}", w.form, w.vars, w.observed));
        }
        report.tsv.push(strs([&s.suite, &s.trials, &s.failures]));
    }
    report.pretty.push(format!("all passed: {passed}"));
    Ok(report)
}

/// Entry fields that go into reports; the timestamp stays in the cache.
fn entry_json(entry: &FBoundEntry) -> serde_json::Value {
    json!({
        "e": entry.e,
        "r": entry.r,
        "upper": entry.upper,
        "exact": entry.exact,
        "known": known_exact(entry.e, entry.r),
        "certificate": entry.certificate,
        "vars": entry.vars,
        "field": entry.field.to_string(),
        "strategy": entry.strategy,
        "seed": entry.seed,
    })
}

fn load_table(session: &SessionArgs, err: &mut dyn Write) -> Result<Vec<FBoundEntry>> {
    let loaded = cache::load_or_empty(&session.cache_path())?;
    for w in &loaded.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    Ok(loaded.entries)
}

/// Merges `fresh` into `table` and rewrites the cache if anything changed.
fn persist(session: &SessionArgs, table: &[FBoundEntry], fresh: &[FBoundEntry]) -> Result<Vec<FBoundEntry>> {
    let merged = cache::merge(table, fresh);
    if merged != table {
        cache::store(&session.cache_path(), &merged)?;
    }
    Ok(merged)
}

pub fn search_f(session: &SessionArgs, e: u32, r: usize, budget: usize, err: &mut dyn Write) -> Result<Report> {
    let table = load_table(session, err)?;
    let found = f_upper_bound(e, r, budget, session.seed, session.field)?;
    let merged = persist(session, &table, std::slice::from_ref(&found))?;
    let best = merged
        .iter()
        .find(|t| t.e == e && t.r == r)
        .expect("merged table holds the new entry's slot");
    let improved = best.certificate == found.certificate && best.upper == found.upper;
    let mut report = Report::new(
        "search-f",
        json!({
            "found": entry_json(&found),
            "best": entry_json(best),
            "best_from_this_search": improved,
        }),
    );
    let exact = if best.exact { " (exact)" } else { "" };
    report.pretty = vec![
        format!("f_{e}({r}) <= {}{exact}", best.upper),
        format!("this search: {} via {}", found.upper, found.strategy),
        format!("certificate ({} vars, {}): {}", best.vars, best.field, best.certificate),
    ];
    report.tsv.push(header(&["e", "r", "upper", "exact", "strategy", "vars", "field", "certificate"]));
    report.tsv.push(strs([&e, &r, &best.upper, &best.exact, &best.strategy, &best.vars, &best.field, &best.certificate]));
    Ok(report)
}

pub fn realize(session: &SessionArgs, e: u32, r: usize) -> Result<Report> {
    let real = realize_interval(e, r, session.seed, session.field)?;
    let mut report = Report::new("realize", serde_json::to_value(&real).map_err(|x| Error::Io(x.to_string()))?);
    report.passed = real.gaps.is_empty();
    report.tsv.push(header(&["h2", "certificate"]));
    for (a, cert) in &real.certificates {
        report.pretty.push(format!("h2 = {a}: {cert}"));
        report.tsv.push(strs([a, cert]));
    }
    let gaps = if real.gaps.is_empty() {
        "none".to_string()
    } else {
        real.gaps.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    };
    report.pretty.push(format!("gaps: {gaps}"));
    report.tsv.push(strs([&"gaps", &gaps]));
    Ok(report)
}

pub fn gic(
    session: &SessionArgs,
    e: u32,
    rmin: usize,
    rmax: usize,
    budget: usize,
    err: &mut dyn Write,
) -> Result<Report> {
    if rmin == 0 || rmin > rmax {
        return Err(Error::InvalidInput(format!("--rmin {rmin} --rmax {rmax} is not a range")));
    }
    let table = load_table(session, err)?;
    let fresh = (rmin..=rmax)
        .filter(|&r| !table.iter().any(|t| t.e == e && t.r == r))
        .map(|r| f_upper_bound(e, r, budget, session.seed, session.field))
        .collect::<Result<Vec<_>>>()?;
    let table = persist(session, &table, &fresh)?;
    let rep = gic_verify(e, rmin, rmax, &table, session.seed)?;

    let mut report = Report::new("gic", serde_json::to_value(&rep).map_err(|x| Error::Io(x.to_string()))?);
    report.passed = rep.nondecreasing;
    report.pretty.push(format!("{:>4} {:>4} {:>4} {:>6} {:>10}  field", "r", "L", "U", "exact", "asymptotic"));
    report.tsv.push(header(&["r", "L", "U", "exact", "asymptotic", "field"]));
    for row in &rep.rows {
        let lower = row.lower.map_or("-".to_string(), |l| l.to_string());
        let asym = format!("{:.2}", row.asymptotic);
        report.pretty.push(format!(
            "{:>4} {:>4} {:>4} {:>6} {:>10}  {}",
            row.r, lower, row.upper, row.exact, asym, row.field
        ));
        report.tsv.push(strs([&row.r, &lower, &row.upper, &row.exact, &asym, &row.field]));
    }
    if rep.rows.iter().any(|row| row.field.modulus() != 0) {
        report.pretty.push("note: certificates marked p:MOD are verified over that prime field only".into());
    }
    report.pretty.push("note: asymptotic column is a growth reference, not a bound".into());
    for d in &rep.descent {
        let after = d.after.as_ref().map_or("-".to_string(), ToString::to_string);
        let verdict = if d.ok { "ok" } else { "FAILED" };
        report.pretty.push(format!("descent r = {}: {} -> {after} {verdict}", d.r, d.before));
    }
    if rep.violations.is_empty() {
        report.pretty.push("violations: none".into());
    }
    for v in &rep.violations {
        report.pretty.push(format!("violation: {v}"));
        report.tsv.push(strs([&"violation", v]));
    }
    report.pretty.push(format!("nondecreasing: {}", rep.nondecreasing));
    report.tsv.push(strs([&"nondecreasing", &rep.nondecreasing]));
    Ok(report)
}
