//! Randomized suites: many independent instances, one seeded stream each.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    check_divisibility_hypotheses, divisibility_rank, gcd_lemma_outcome, random_linear_form,
    restricted_codimension, LinearForm,
};
use crate::apolarity::codimension;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{gcd_forms, parse_form, Form};
use crate::rng::{trial_rng, TrialRng};

/// A failed trial, stored in replayable text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// The form (several forms are separated by `;`).
    pub form: String,
    pub vars: usize,
    #[serde(rename = "H")]
    pub h: Option<String>,
    pub observed: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
}

/// Outcome of a batch of randomized trials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub suite: String,
    pub field: Field,
    pub trials: usize,
    pub failures: usize,
    pub modulus: u64,
    pub seed: u64,
    pub witnesses: Vec<Witness>,
}

impl TrialReport {
    pub(crate) fn from_outcomes(
        suite: &str,
        field: Field,
        seed: u64,
        outcomes: Vec<Option<Witness>>,
    ) -> TrialReport {
        let trials = outcomes.len();
        let witnesses: Vec<Witness> = outcomes.into_iter().flatten().collect();
        TrialReport {
            suite: suite.to_string(),
            field,
            trials,
            failures: witnesses.len(),
            modulus: field.modulus(),
            seed,
            witnesses,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Recomputes every witness; true when each reproduces its observation.
    pub fn replay(&self) -> Result<bool> {
        for w in &self.witnesses {
            let forms = w
                .form
                .split(';')
                .map(|t| parse_form(t, w.vars, self.field))
                .collect::<Result<Vec<_>>>()?;
            let h = w
                .h
                .as_deref()
                .map(|t| LinearForm::parse(t, self.field))
                .transpose()?;
            let reproduced = match (self.suite.as_str(), h) {
                ("theorem-n", Some(h)) => restricted_codimension(&forms[0], &h)?.to_string(),
                ("divisibility", Some(h)) => divisibility_rank(&forms, &h)?.to_string(),
                ("gcd-lemma", None) => gcd_forms(&forms[0].gradient())?.to_string(),
                _ => return Err(Error::InvalidInput(format!("unknown suite {}", self.suite))),
            };
            if reproduced != w.observed {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn run<F>(suite: &str, field: Field, trials: usize, seed: u64, trial: F) -> Result<TrialReport>
where
    F: Fn(&mut TrialRng) -> Result<Option<Witness>> + Sync,
{
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|k| trial(&mut trial_rng(seed, k as u64)))
        .collect::<Result<Vec<_>>>()?;
    Ok(TrialReport::from_outcomes(suite, field, seed, outcomes))
}

/// A random form of degree `e` essential in all `r` variables; dense or
/// supported on a random monomial subset.
pub(crate) fn random_essential_form(field: Field, r: usize, e: u32, dense: bool, rng: &mut TrialRng) -> Form {
    for _ in 0..64 {
        let support = if dense {
            None
        } else {
            let full = Form::zero(field, r, e).dense_size() as usize;
            Some(rng.gen_range(r.min(full)..=(3 * r).min(full)))
        };
        let f = Form::random(field, r, e, support, rng);
        if !f.is_zero() && codimension(&f).ok() == Some(r) {
            return f;
        }
    }
    Form::random(field, r, e, None, rng)
}

/// Random `F` of degree 3..=5 and codimension 3..=10 with random `H`;
/// a failure is any pair with `h_1(F^H) != codim F - 1`.
pub fn theorem_n_suite(field: Field, trials: usize, seed: u64) -> Result<TrialReport> {
    run("theorem-n", field, trials, seed, |rng| {
        let e = rng.gen_range(3..=5);
        let r = rng.gen_range(3..=10);
        let dense = rng.gen_bool(0.5);
        let f = random_essential_form(field, r, e, dense, rng);
        let h = random_linear_form(r, field, rng)?;
        let observed = restricted_codimension(&f, &h)?;
        Ok((observed != r - 1).then(|| Witness {
            form: f.to_string(),
            vars: r,
            h: Some(h.to_string()),
            observed: observed.to_string(),
            expected: Some((r - 1).to_string()),
        }))
    })
}

/// A quadric that is not a product of two linear forms: the rank of its
/// symmetric coefficient matrix (its degree-1 catalecticant) is at least 3.
pub(crate) fn random_irreducible_quadric(field: Field, n: usize, rng: &mut TrialRng) -> Form {
    assert!(n >= 3, "irreducible quadrics need three variables");
    loop {
        let k = rng.gen_range(3..=n * (n + 1) / 2);
        let q = Form::random(field, n, 2, Some(k), rng);
        if !q.is_zero() && codimension(&q).unwrap_or(0) >= 3 {
            return q;
        }
    }
}

fn random_linear(field: Field, n: usize, rng: &mut TrialRng) -> Form {
    loop {
        let k = rng.gen_range(1..=n);
        let l = Form::random(field, n, 1, Some(k), rng);
        if !l.is_zero() {
            return l;
        }
    }
}

/// Distinct random linear and irreducible quadratic factors with
/// `Σ e_j deg p_j <= 8` in at most four variables.
pub(crate) fn random_factorization(field: Field, rng: &mut TrialRng) -> Vec<(Form, u32)> {
    let n = rng.gen_range(2..=4);
    let mut left: u32 = rng.gen_range(2..=8);
    let mut factors: Vec<(Form, u32)> = Vec::new();
    while left > 0 && factors.len() < 4 {
        let quadric = n >= 3 && left >= 2 && rng.gen_bool(0.4);
        let p = if quadric {
            random_irreducible_quadric(field, n, rng)
        } else {
            random_linear(field, n, rng)
        };
        let monic = p.monic();
        if factors.iter().any(|(q, _)| q.monic() == monic) {
            continue;
        }
        let deg = p.degree();
        let e = rng.gen_range(1..=(left / deg).min(3));
        left -= e * deg;
        factors.push((p, e));
    }
    factors
}

/// Checks the gcd-of-partials identity on random factored forms.
pub fn gcd_lemma_suite(field: Field, trials: usize, seed: u64) -> Result<TrialReport> {
    run("gcd-lemma", field, trials, seed, |rng| {
        let factors = random_factorization(field, rng);
        let (ok, product, g) = gcd_lemma_outcome(&factors)?;
        let mut expected = Form::one(field, product.n_vars());
        for (p, e) in &factors {
            expected = expected.mul(&p.pow(e - 1))?;
        }
        Ok((!ok).then(|| Witness {
            form: product.to_string(),
            vars: product.n_vars(),
            h: None,
            observed: g.to_string(),
            expected: Some(expected.monic().to_string()),
        }))
    })
}

/// Random coprime independent tuples `f_0..f_n` (`n` in 2..=4, degree 2..=3)
/// and random `H`; a failure is a rank drop after restriction.
pub fn divisibility_suite(field: Field, trials: usize, seed: u64) -> Result<TrialReport> {
    run("divisibility", field, trials, seed, |rng| {
        let n = rng.gen_range(2..=4);
        let d = rng.gen_range(2..=3);
        let dense = rng.gen_bool(0.5);
        let vars = n + 1;
        let full = Form::zero(field, vars, d).dense_size() as usize;
        let mut forms = Vec::new();
        for attempt in 0..100 {
            forms = (0..vars)
                .map(|_| {
                    let support = (!dense && attempt < 99).then(|| rng.gen_range(2..=full));
                    Form::random(field, vars, d, support, rng)
                })
                .collect();
            if check_divisibility_hypotheses(&forms).is_ok() {
                break;
            }
        }
        let h = random_linear_form(vars, field, rng)?;
        let rank = divisibility_rank(&forms, &h)?;
        Ok((rank != vars).then(|| Witness {
            form: forms.iter().map(Form::to_string).collect::<Vec<_>>().join("; "),
            vars,
            h: Some(h.to_string()),
            observed: rank.to_string(),
            expected: Some(vars.to_string()),
        }))
    })
}
