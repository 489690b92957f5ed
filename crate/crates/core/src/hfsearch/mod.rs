//! Gorenstein h-vectors of socle degree 4 and 5: explicit constructions,
//! certified upper bounds on `f_e(r)`, interval realization and the
//! monotonicity check for `f_e`.
//!
//! `f_e(r)` is the least `h_2` of a Gorenstein Hilbert function of socle
//! degree `e` and codimension `r`. Searches only ever produce upper bounds;
//! lower bounds come from the known exact values in [`known_exact`].

mod bounds;
mod gic;
mod realize;

pub use bounds::{classify_gorenstein_hf, best_entries, f_upper_bound, Classification, FBoundEntry};
pub use gic::{gic_verify, DescentCheck, GicReport, GicRow};
pub use realize::{realize_interval, Realization};

use crate::apolarity::{hilbert_function, HilbertFunction};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{binomial, Form, Monomial};

/// `Σ_{i<r} y_i^e` in `r` variables.
pub fn power_sum_form(r: usize, e: u32, field: Field) -> Result<Form> {
    if r == 0 || e < 2 {
        return Err(Error::PreconditionViolated(format!(
            "power sum needs r >= 1 and e >= 2, got r = {r}, e = {e}"
        )));
    }
    Form::from_terms(
        field,
        r,
        (0..r).map(|i| (Monomial::var_power(r, i, e as u16), field.one())),
    )
}

/// Number of degree `e - 1` monomials in `m` variables.
pub fn bipartite_width(m: usize, e: u32) -> usize {
    binomial(m as u64 + u64::from(e) - 2, u64::from(e) - 1) as usize
}

/// `Σ_i x_i M_i` over all degree `e - 1` monomials `M_i` in `y_0..y_{m-1}`.
///
/// Variables `0..m` are the `y`s, variables `m..m+s` the `x`s, with `x_i`
/// paired to the `i`-th monomial in descending graded-lex order.
pub fn bipartite_monomial_form(m: usize, e: u32, field: Field) -> Result<Form> {
    partial_bipartite_form(m, bipartite_width(m, e), e, field)
}

/// The bipartite form truncated to its first `s` monomials.
pub fn partial_bipartite_form(m: usize, s: usize, e: u32, field: Field) -> Result<Form> {
    let width = if m >= 1 && e >= 3 { bipartite_width(m, e) } else { 0 };
    if m == 0 || e < 3 || s == 0 || s > width {
        return Err(Error::PreconditionViolated(format!(
            "bipartite form needs m >= 1, e >= 3, 1 <= s <= {width}; got m = {m}, e = {e}, s = {s}"
        )));
    }
    let n = m + s;
    let monos = Monomial::all_of_degree(m, e - 1);
    let terms = monos.iter().take(s).enumerate().map(|(i, mono)| {
        let mut exps = mono.exps().to_vec();
        exps.resize(n, 0);
        exps[m + i] = 1;
        (Monomial::new(exps), field.one())
    });
    Form::from_terms(field, n, terms)
}

/// `G + Σ_{j<extra} z_j^e` with the `z_j` appended after the variables of `G`.
pub fn padded_form(g: &Form, extra: usize) -> Result<Form> {
    if g.is_zero() {
        return Err(Error::ZeroForm);
    }
    let n = g.n_vars() + extra;
    let e = g.degree() as u16;
    let mut f = g.extend_vars(extra);
    for j in g.n_vars()..n {
        f = f.add(&Form::monomial(g.field(), Monomial::var_power(n, j, e), g.field().one()))?;
    }
    Ok(f)
}

/// Exact `f_e(r)` where it is known: `f_4(r) = r` for `r <= 12`,
/// `f_4(13) = 12`, `f_5(r) = r` for `r <= 16`.
pub fn known_exact(e: u32, r: usize) -> Option<u64> {
    match (e, r) {
        (_, 0) => None,
        (4, 1..=12) | (5, 1..=16) => Some(r as u64),
        (4, 13) => Some(12),
        _ => None,
    }
}

/// Largest `r` with a known exact `f_e(r)`.
pub fn exact_range(e: u32) -> Option<usize> {
    match e {
        4 => Some(13),
        5 => Some(16),
        _ => None,
    }
}

/// `C(r+1, 2)`, the largest possible `h_2` in codimension `r`.
pub fn max_h2(r: usize) -> u64 {
    binomial(r as u64 + 1, 2)
}

/// Asymptotic growth of `f_e(r)`: `(6r)^{2/3}` for `e = 4`,
/// `(24r)^{3/4} / 6` for `e = 5`. An annotation only, never a bound.
pub fn asymptotic_reference(e: u32, r: usize) -> Result<f64> {
    let r = r as f64;
    match e {
        4 => Ok((6.0 * r).powf(2.0 / 3.0)),
        5 => Ok((24.0 * r).powf(0.75) / 6.0),
        _ => Err(Error::UnsupportedSocleDegree(e)),
    }
}

pub(crate) fn check_socle_degree(e: u32) -> Result<()> {
    if e == 4 || e == 5 {
        Ok(())
    } else {
        Err(Error::UnsupportedSocleDegree(e))
    }
}

/// Partial bipartite forms whose codimension equals their number of
/// variables, at most `max_vars` variables each, with their Hilbert functions.
pub(crate) fn bipartite_seeds(e: u32, max_vars: usize, field: Field) -> Result<Vec<(Form, HilbertFunction)>> {
    use rayon::prelude::*;
    let mut shapes = Vec::new();
    for m in 1..max_vars {
        for s in 1..=bipartite_width(m, e).min(max_vars - m) {
            shapes.push((m, s));
        }
    }
    let seeds: Vec<Option<(Form, HilbertFunction)>> = shapes
        .par_iter()
        .map(|&(m, s)| {
            let f = partial_bipartite_form(m, s, e, field)?;
            let hf = hilbert_function(&f)?;
            Ok((hf.codimension() as usize == f.n_vars()).then_some((f, hf)))
        })
        .collect::<Result<_>>()?;
    Ok(seeds.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::trial_rng;

    fn fp() -> Field {
        Field::default()
    }

    fn hf(f: &Form) -> String {
        hilbert_function(f).unwrap().to_string()
    }

    #[test]
    fn power_sums() {
        assert_eq!(hf(&power_sum_form(1, 4, fp()).unwrap()), "(1,1,1,1,1)");
        assert_eq!(hf(&power_sum_form(12, 4, fp()).unwrap()), "(1,12,12,12,1)");
        assert_eq!(hf(&power_sum_form(3, 5, Field::Rational).unwrap()), "(1,3,3,3,3,1)");
        assert!(power_sum_form(0, 4, fp()).is_err());
    }

    #[test]
    fn stanley_form() {
        let f = bipartite_monomial_form(3, 4, Field::Rational).unwrap();
        assert_eq!(f.n_vars(), 13);
        assert_eq!(f.num_terms(), 10);
        assert_eq!(hf(&f), "(1,13,12,13,1)");
        assert_eq!(hf(&bipartite_monomial_form(3, 4, fp()).unwrap()), "(1,13,12,13,1)");
    }

    #[test]
    fn small_bipartite_forms() {
        let f = bipartite_monomial_form(1, 4, fp()).unwrap();
        assert_eq!(f.to_string(), "y0^3*y1");
        assert_eq!(hf(&f), "(1,2,2,2,1)");
        // x_1 y_0^3 + x_2 y_0^2 y_1 + x_3 y_0 y_1^2 + x_4 y_1^3
        let g = bipartite_monomial_form(2, 4, fp()).unwrap();
        assert_eq!(g.n_vars(), 6);
        let h = hilbert_function(&g).unwrap();
        assert!(h.is_symmetric());
        assert_eq!(h.to_string(), "(1,6,6,6,1)");
    }

    #[test]
    fn quintic_bipartite_subset() {
        // 3 y-variables and 14 of the 15 quartic monomials: h_2 <= 10 + 6
        let f = partial_bipartite_form(3, 14, 5, fp()).unwrap();
        let h = hilbert_function(&f).unwrap();
        assert_eq!(h.get(1), 17);
        assert!(h.get(2) <= 16);
    }

    #[test]
    fn padding() {
        let mut rng = trial_rng(3, 0);
        let g = Form::random(fp(), 3, 4, None, &mut rng);
        assert_eq!(hf(&g), "(1,3,6,3,1)");
        assert_eq!(hf(&padded_form(&g, 9).unwrap()), "(1,12,15,12,1)");
        assert_eq!(hf(&padded_form(&g, 0).unwrap()), "(1,3,6,3,1)");
        let s = bipartite_monomial_form(3, 4, fp()).unwrap();
        assert_eq!(hf(&padded_form(&s, 2).unwrap()), "(1,15,14,15,1)");
    }

    #[test]
    fn padding_is_additive() {
        for k in 0..6u64 {
            let mut rng = trial_rng(11, k);
            let n = 2 + (k as usize % 3);
            let e = 3 + (k as u32 % 3);
            let g = Form::random(fp(), n, e, Some(4 + k as usize), &mut rng);
            let before = hilbert_function(&g).unwrap();
            for extra in [0, 1, 4, 10] {
                let after = hilbert_function(&padded_form(&g, extra).unwrap()).unwrap();
                for i in 1..e as usize {
                    assert_eq!(after.get(i), before.get(i) + extra as u64);
                }
            }
        }
    }

    #[test]
    fn known_values() {
        assert_eq!(known_exact(4, 3), Some(3));
        assert_eq!(known_exact(4, 12), Some(12));
        assert_eq!(known_exact(4, 13), Some(12));
        assert_eq!(known_exact(4, 14), None);
        assert_eq!(known_exact(5, 16), Some(16));
        assert_eq!(known_exact(5, 17), None);
        assert_eq!(known_exact(3, 5), None);
    }

    #[test]
    fn asymptotics() {
        assert!((asymptotic_reference(4, 36).unwrap() - 36.0).abs() < 1e-9);
        assert!((asymptotic_reference(5, 54).unwrap() - 36.0).abs() < 1e-9);
        // 78^(2/3) = 18.2556..
        assert!((asymptotic_reference(4, 13).unwrap() - 18.255_612).abs() < 1e-6);
        assert!(asymptotic_reference(6, 3).is_err());
    }
}
