//! Explicit forms for every admissible `h_2` in a fixed codimension.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{bipartite_seeds, check_socle_degree, exact_range, known_exact, max_h2, padded_form};
use crate::apolarity::{hilbert_function, HilbertFunction};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{binomial, Form, Monomial};
use crate::restriction::random_linear_form;
use crate::rng::{trial_rng, TrialRng};

const WARING_ATTEMPTS: u64 = 8;
const PREFIX_SWEEP: usize = 256;

/// Certificates `a -> F` with `hilbert_function(F) = (1, r, a, .., a, r, 1)`,
/// plus the values of `a` that no strategy reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub e: u32,
    pub r: usize,
    pub field: Field,
    pub seed: u64,
    pub certificates: BTreeMap<u64, String>,
    pub gaps: Vec<u64>,
}

impl Realization {
    /// The certificates, or `RealizationGap` if any value was missed.
    pub fn into_result(self) -> Result<BTreeMap<u64, String>> {
        if self.gaps.is_empty() {
            Ok(self.certificates)
        } else {
            Err(Error::RealizationGap(self.gaps))
        }
    }
}

/// The expected Hilbert function `(1, r, a, .., a, r, 1)`.
fn target(e: u32, r: usize, a: u64) -> HilbertFunction {
    let mut v = vec![a; e as usize + 1];
    v[0] = 1;
    v[e as usize] = 1;
    v[1] = r as u64;
    v[e as usize - 1] = r as u64;
    HilbertFunction::new(v)
}

/// Realizes every `a` in `[f_e(r), C(r+1, 2)]`.
///
/// `a >= r`: `y_0^e + .. + y_{s-1}^e` plus `a - r` further powers of random
/// linear forms in the same `s` variables, padded with `r - s` powers, for
/// the least `s` with `C(s, 2) >= a - r`. `a < r`: a partial bipartite seed
/// whose `h_2` falls short of its codimension by `r - a`, padded. Anything
/// still missing is searched among random forms on graded-lex prefixes.
pub fn realize_interval(e: u32, r: usize, seed: u64, field: Field) -> Result<Realization> {
    check_socle_degree(e)?;
    let top = exact_range(e).unwrap_or(0);
    if r == 0 || r > top {
        return Err(Error::PreconditionViolated(format!(
            "realization needs 1 <= r <= {top} for e = {e}, got r = {r}"
        )));
    }
    let lower = known_exact(e, r).expect("exact value in range");
    let values: Vec<u64> = (lower..=max_h2(r)).collect();
    let seeds = if lower < r as u64 {
        bipartite_seeds(e, r, field)?
    } else {
        Vec::new()
    };
    let found: Vec<Option<Form>> = values
        .par_iter()
        .map(|&a| {
            let mut rng = trial_rng(seed, a);
            if a < r as u64 {
                deficit_seed(&seeds, e, r, a)
            } else {
                waring_padded(e, r, a, field, &mut rng)
            }
        })
        .collect::<Result<_>>()?;
    let mut certificates = BTreeMap::new();
    let mut missing = Vec::new();
    for (&a, f) in values.iter().zip(found) {
        match f {
            Some(f) => {
                certificates.insert(a, f.to_string());
            }
            None => missing.push(a),
        }
    }
    if !missing.is_empty() {
        for (a, f) in prefix_search(e, r, &missing, seed, field)? {
            certificates.insert(a, f.to_string());
        }
    }
    let gaps = values.into_iter().filter(|a| !certificates.contains_key(a)).collect();
    Ok(Realization {
        e,
        r,
        field,
        seed,
        certificates,
        gaps,
    })
}

fn verified(f: Form, e: u32, r: usize, a: u64) -> Result<Option<Form>> {
    Ok((hilbert_function(&f)? == target(e, r, a)).then_some(f))
}

/// Sparsest seed with `n_vars - h_2 = r - a`, padded to codimension `r`.
fn deficit_seed(seeds: &[(Form, HilbertFunction)], e: u32, r: usize, a: u64) -> Result<Option<Form>> {
    let deficit = r as u64 - a;
    let best = seeds
        .iter()
        .filter(|(f, hf)| f.n_vars() <= r && hf.get(2) + deficit == f.n_vars() as u64)
        .min_by_key(|(f, _)| (f.num_terms() + r - f.n_vars(), f.n_vars()));
    match best {
        Some((f, _)) => verified(padded_form(f, r - f.n_vars())?, e, r, a),
        None => Ok(None),
    }
}

fn waring_padded(e: u32, r: usize, a: u64, field: Field, rng: &mut TrialRng) -> Result<Option<Form>> {
    let excess = a - r as u64;
    let s = (1..=r).find(|&s| binomial(s as u64, 2) >= excess).expect("a <= C(r+1, 2)");
    for _ in 0..WARING_ATTEMPTS {
        let mut f = Form::from_terms(
            field,
            s,
            (0..s).map(|i| (Monomial::var_power(s, i, e as u16), field.one())),
        )?;
        for _ in 0..excess {
            let l = random_linear_form(s, field, rng)?.to_form();
            f = f.add(&l.pow(e))?;
        }
        if f.is_zero() {
            continue;
        }
        if let Some(g) = verified(padded_form(&f, r - s)?, e, r, a)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Random coefficients on the first `k` graded-lex monomials plus the power
/// sum, for at most `PREFIX_SWEEP` prefix lengths `k`; keeps the first hit
/// per value.
fn prefix_search(e: u32, r: usize, missing: &[u64], seed: u64, field: Field) -> Result<Vec<(u64, Form)>> {
    let monos = Monomial::all_of_degree(r, e);
    let power: Vec<Monomial> = (0..r).map(|i| Monomial::var_power(r, i, e as u16)).collect();
    let step = monos.len().div_ceil(PREFIX_SWEEP);
    let hits: Vec<Option<(u64, Form)>> = (1..=monos.len())
        .step_by(step)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|k| {
            let mut rng = trial_rng(seed, (1 << 32) + k as u64);
            let terms = monos[..k]
                .iter()
                .chain(&power)
                .map(|m| (m.clone(), field.random_nonzero(&mut rng)));
            let mut f = Form::zero(field, r, e);
            for (m, c) in terms {
                f = f.add(&Form::monomial(field, m, c))?;
            }
            if f.is_zero() {
                return Ok(None);
            }
            let hf = hilbert_function(&f)?;
            let a = hf.get(2);
            Ok((missing.contains(&a) && hf == target(e, r, a)).then_some((a, f)))
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<(u64, Form)> = Vec::new();
    for (a, f) in hits.into_iter().flatten() {
        if out.iter().all(|(b, _)| *b != a) {
            out.push((a, f));
        }
    }
    Ok(out)
}
