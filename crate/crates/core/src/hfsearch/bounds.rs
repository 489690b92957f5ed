//! Certified upper bounds on `f_e(r)` and membership of `(1, r, a, .., r, 1)`
//! among Gorenstein Hilbert functions.

use std::time::{SystemTime, UNIX_EPOCH};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    bipartite_seeds, bipartite_width, check_socle_degree, known_exact, max_h2, padded_form,
    power_sum_form,
};
use crate::apolarity::{codimension, hilbert_function, HilbertFunction};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{parse_form, Form};
use crate::rng::{trial_rng, TrialRng};

/// A verified upper bound `f_e(r) <= upper`, witnessed by `certificate`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FBoundEntry {
    pub e: u32,
    pub r: usize,
    pub upper: u64,
    /// `upper` equals the known exact value of `f_e(r)`.
    pub exact: bool,
    /// Canonical text of a form in `vars` variables.
    pub certificate: String,
    pub vars: usize,
    pub field: Field,
    pub modulus: u64,
    pub seed: u64,
    pub strategy: String,
    /// Seconds since the Unix epoch at creation.
    pub timestamp: u64,
}

impl FBoundEntry {
    /// Builds an entry from a candidate, checking it first.
    pub fn new(e: u32, r: usize, certificate: &Form, seed: u64, strategy: &str) -> Result<FBoundEntry> {
        let hf = hilbert_function(certificate)?;
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        let entry = FBoundEntry {
            e,
            r,
            upper: hf.get(2),
            exact: known_exact(e, r) == Some(hf.get(2)),
            certificate: certificate.to_string(),
            vars: certificate.n_vars(),
            field: certificate.field(),
            modulus: certificate.field().modulus(),
            seed,
            strategy: strategy.to_string(),
            timestamp,
        };
        entry.verify()?;
        Ok(entry)
    }

    /// Recomputes the Hilbert function of the certificate and checks every
    /// recorded number against it.
    pub fn verify(&self) -> Result<HilbertFunction> {
        let bad = |msg: String| Err(Error::InvalidCertificate(msg));
        check_socle_degree(self.e)?;
        if self.modulus != self.field.modulus() {
            return bad(format!("modulus {} does not match field {}", self.modulus, self.field));
        }
        let form = parse_form(&self.certificate, self.vars, self.field)?;
        if form.is_zero() {
            return bad("zero certificate".into());
        }
        let hf = hilbert_function(&form)?;
        if hf.socle_degree() != self.e {
            return bad(format!("socle degree {} instead of {}", hf.socle_degree(), self.e));
        }
        if hf.get(1) != self.r as u64 {
            return bad(format!("codimension {} instead of {}", hf.get(1), self.r));
        }
        if hf.get(2) != self.upper {
            return bad(format!("h_2 = {} instead of {}", hf.get(2), self.upper));
        }
        if self.exact != (known_exact(self.e, self.r) == Some(self.upper)) {
            return bad(format!("exactness flag {} is wrong for f_{}({})", self.exact, self.e, self.r));
        }
        Ok(hf)
    }

    fn size(&self) -> usize {
        self.certificate.len()
    }
}

/// Per `(e, r)`, the entry with the smallest bound; ties keep the shorter
/// certificate, then the earlier entry.
pub fn best_entries(table: &[FBoundEntry]) -> Vec<FBoundEntry> {
    let mut best: std::collections::BTreeMap<(u32, usize), &FBoundEntry> = Default::default();
    for entry in table {
        best.entry((entry.e, entry.r))
            .and_modify(|cur| {
                if (entry.upper, entry.size()) < (cur.upper, cur.size()) {
                    *cur = entry;
                }
            })
            .or_insert(entry);
    }
    best.into_values().cloned().collect()
}

struct Candidate {
    h2: u64,
    terms: usize,
    form: Form,
    strategy: String,
}

impl Candidate {
    /// Portfolio order is the tiebreak after sparsity within a strategy.
    fn key(&self) -> (u64, usize) {
        (self.h2, self.terms)
    }
}

/// Best candidate of one strategy: least `h_2`, then fewest terms, then first.
fn best_of(cands: Vec<Candidate>) -> Option<Candidate> {
    cands.into_iter().reduce(|a, b| if b.key() < a.key() { b } else { a })
}

/// Smallest `h_2` found in codimension `r`, socle degree `e`.
///
/// Strategies run in order: the power sum, padded partial bipartite forms,
/// then `budget` random trials alternating between random bipartite-shaped
/// forms and random sparse forms whose support shrinks trial by trial. A
/// later strategy replaces the incumbent only with a strictly smaller `h_2`.
pub fn f_upper_bound(e: u32, r: usize, budget: usize, seed: u64, field: Field) -> Result<FBoundEntry> {
    check_socle_degree(e)?;
    if r == 0 {
        return Err(Error::PreconditionViolated("codimension r must be at least 1".into()));
    }
    if budget == 0 {
        return Err(Error::BudgetZero);
    }
    let power = power_sum_form(r, e, field)?;
    let mut best = Candidate {
        h2: r as u64,
        terms: power.num_terms(),
        form: power,
        strategy: "power-sum".into(),
    };

    let seeds = bipartite_seeds(e, r, field)?;
    let padded: Vec<Candidate> = seeds
        .into_iter()
        .filter(|(f, _)| f.n_vars() <= r)
        .map(|(f, hf)| {
            let extra = r - f.n_vars();
            let strategy = format!("bipartite({} vars) + {} powers", f.n_vars(), extra);
            Ok(Candidate {
                h2: hf.get(2) + extra as u64,
                terms: f.num_terms() + extra,
                form: padded_form(&f, extra)?,
                strategy,
            })
        })
        .collect::<Result<_>>()?;
    let random: Vec<Candidate> = (0..budget)
        .into_par_iter()
        .map(|k| random_trial(e, r, k, budget, seed, field))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    for stage in [padded, random] {
        if let Some(c) = best_of(stage) {
            if c.h2 < best.h2 {
                best = c;
            }
        }
    }
    FBoundEntry::new(e, r, &best.form, seed, &best.strategy)
}

fn random_trial(e: u32, r: usize, k: usize, budget: usize, seed: u64, field: Field) -> Result<Option<Candidate>> {
    let mut rng = trial_rng(seed, k as u64);
    let (form, strategy) = if k.is_multiple_of(2) && r >= 3 {
        let m = rng.gen_range(2..=(r - 1).min(4));
        let s = rng.gen_range(1..=bipartite_width(m, e).min(r - m));
        let g = random_bipartite(field, m, s, e, &mut rng)?;
        (padded_form(&g, r - m - s)?, format!("random bipartite({m}, {s})"))
    } else {
        let dense = Form::zero(field, r, e).dense_size() as usize;
        // support shrinks linearly from dense to r
        let size = dense - (dense - r) * k / budget;
        (Form::random(field, r, e, Some(size), &mut rng), format!("random sparse({size})"))
    };
    if form.is_zero() || codimension(&form)? != r {
        return Ok(None);
    }
    let hf = hilbert_function(&form)?;
    Ok(Some(Candidate {
        h2: hf.get(2),
        terms: form.num_terms(),
        form,
        strategy,
    }))
}

/// `Σ_{i<s} x_i G_i` with random sparse `G_i` of degree `e - 1` in `m` variables.
fn random_bipartite(field: Field, m: usize, s: usize, e: u32, rng: &mut TrialRng) -> Result<Form> {
    let n = m + s;
    let mut f = Form::zero(field, n, e);
    let dense = Form::zero(field, m, e - 1).dense_size() as usize;
    for i in 0..s {
        let size = rng.gen_range(1..=dense);
        let g = Form::random(field, m, e - 1, Some(size), rng).extend_vars(s);
        let x = Form::var(field, n, m + i)?;
        f = f.add(&g.mul(&x)?)?;
    }
    Ok(f)
}

/// Whether `(1, r, a, .., a, r, 1)` of socle degree `e` is a Gorenstein
/// Hilbert function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Gorenstein,
    NotGorenstein,
    Unknown,
}

/// Classifies `h_2 = a` in codimension `r`.
///
/// Admissible values form the interval `[f_e(r), C(r+1, 2)]`, so `a` is
/// decided when it lies above an upper bound from `table` or below a known
/// exact value. `table` entries are trusted; only those for `(e, r)` are read.
pub fn classify_gorenstein_hf(e: u32, r: usize, a: u64, table: &[FBoundEntry]) -> Result<Classification> {
    use Classification::*;
    if !(3..=5).contains(&e) {
        return Err(Error::UnsupportedSocleDegree(e));
    }
    if r == 0 {
        return Ok(if a == 0 { Gorenstein } else { NotGorenstein });
    }
    if a > max_h2(r) {
        return Ok(NotGorenstein);
    }
    if e == 3 {
        return Ok(if a == r as u64 { Gorenstein } else { NotGorenstein });
    }
    if let Some(lower) = known_exact(e, r) {
        return Ok(if a >= lower { Gorenstein } else { NotGorenstein });
    }
    let upper = table
        .iter()
        .filter(|t| t.e == e && t.r == r)
        .map(|t| t.upper)
        .fold(r as u64, u64::min);
    Ok(if a >= upper { Gorenstein } else { Unknown })
}
