//! Consistency of a bound table with `f_e` being nondecreasing in `r`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{asymptotic_reference, best_entries, check_socle_degree, known_exact, FBoundEntry};
use crate::apolarity::{hilbert_function, HilbertFunction};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::parse_form;
use crate::restriction::{check_descent_hypotheses, random_linear_form, restrict_mod};
use crate::rng::trial_rng;

/// Bounds `lower <= f_e(r) <= upper` for one codimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GicRow {
    pub r: usize,
    /// Known exact value, the only lower bound ever used.
    pub lower: Option<u64>,
    pub upper: u64,
    pub exact: bool,
    /// Field the certificate was verified over.
    pub field: Field,
    pub asymptotic: f64,
}

/// The certificate at codimension `r` restricted by one random `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentCheck {
    pub r: usize,
    #[serde(rename = "H")]
    pub h: String,
    pub before: HilbertFunction,
    pub after: Option<HilbertFunction>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GicReport {
    pub e: u32,
    pub r_lo: usize,
    pub r_hi: usize,
    pub seed: u64,
    pub rows: Vec<GicRow>,
    pub descent: Vec<DescentCheck>,
    pub violations: Vec<String>,
    pub nondecreasing: bool,
}

/// Checks the table on `[r_lo, r_hi]`.
///
/// A violation is a pair `r < r'` with `U(r') < L(r)`, a known exact value
/// not matched by the table, or a failed descent: restricting the certificate
/// `F` of codimension `r` by a random `H` must give codimension `r - 1` and
/// `h_2'` with `L(r-1) <= h_2' <= h_2(F)`.
pub fn gic_verify(e: u32, r_lo: usize, r_hi: usize, table: &[FBoundEntry], seed: u64) -> Result<GicReport> {
    check_socle_degree(e)?;
    if r_lo == 0 || r_lo > r_hi {
        return Err(Error::PreconditionViolated(format!("empty or invalid range [{r_lo}, {r_hi}]")));
    }
    let best = best_entries(table);
    let mut entries = Vec::new();
    let mut missing = Vec::new();
    for r in r_lo..=r_hi {
        match best.iter().find(|t| t.e == e && t.r == r) {
            Some(t) => entries.push(t.clone()),
            None => missing.push(r),
        }
    }
    if !missing.is_empty() {
        return Err(Error::IncompleteTable(missing));
    }
    let rows: Vec<GicRow> = entries
        .iter()
        .map(|t| {
            Ok(GicRow {
                r: t.r,
                lower: known_exact(e, t.r),
                upper: t.upper,
                exact: t.exact,
                field: t.field,
                asymptotic: asymptotic_reference(e, t.r)?,
            })
        })
        .collect::<Result<_>>()?;

    let mut violations = Vec::new();
    for row in &rows {
        if let Some(l) = row.lower {
            if l != row.upper {
                violations.push(format!("r = {}: U = {} differs from exact value {}", row.r, row.upper, l));
            }
            for later in rows.iter().filter(|x| x.r > row.r && x.upper < l) {
                violations.push(format!(
                    "U({}) = {} < L({}) = {}",
                    later.r, later.upper, row.r, l
                ));
            }
        }
    }
    let descent: Vec<DescentCheck> = entries
        .par_iter()
        .map(|t| descent_check(t, seed))
        .collect::<Result<_>>()?;
    for d in descent.iter().filter(|d| !d.ok) {
        let after = d.after.as_ref().map_or("-".to_string(), ToString::to_string);
        violations.push(format!("descent at r = {} by H = {}: {} -> {}", d.r, d.h, d.before, after));
    }
    Ok(GicReport {
        e,
        r_lo,
        r_hi,
        seed,
        rows,
        descent,
        nondecreasing: violations.is_empty(),
        violations,
    })
}

fn descent_check(t: &FBoundEntry, seed: u64) -> Result<DescentCheck> {
    let f = parse_form(&t.certificate, t.vars, t.field)?;
    let before = hilbert_function(&f)?;
    let mut rng = trial_rng(seed, t.r as u64);
    let h = random_linear_form(f.n_vars(), f.field(), &mut rng)?;
    if check_descent_hypotheses(&f).is_err() {
        // codimension below 3 or non-essential variables: nothing to check
        return Ok(DescentCheck {
            r: t.r,
            h: h.to_string(),
            before,
            after: None,
            ok: true,
        });
    }
    let g = restrict_mod(&f, &h)?;
    let after = if g.is_zero() { None } else { Some(hilbert_function(&g)?) };
    let ok = after.as_ref().is_some_and(|a| {
        let h2 = a.get(2);
        before.get(1) == t.r as u64
            && a.get(1) == t.r as u64 - 1
            && h2 <= before.get(2)
            && known_exact(t.e, t.r - 1).is_none_or(|l| l <= h2)
    });
    Ok(DescentCheck {
        r: t.r,
        h: h.to_string(),
        before,
        after,
        ok,
    })
}
