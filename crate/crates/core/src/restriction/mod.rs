//! Restriction of forms modulo a linear form, `F ↦ F^H`, and checks of the
//! statements behind the codimension descent.
//!
//! Restricting to the hyperplane `H = 0` substitutes the pivot variable by a
//! linear combination of the others. The result lives in a ring with the
//! pivot variable deleted; the remaining variables keep their relative order.

mod suites;

use std::fmt;

use rand::Rng;
use rayon::prelude::*;

use crate::apolarity::{codimension, span_dimension};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::{gcd_forms, Form, Monomial};
use crate::rng::trial_rng;

pub use suites::{divisibility_suite, gcd_lemma_suite, theorem_n_suite, TrialReport, Witness};

/// `H = α_0 y_0 + ... + α_{n-1} y_{n-1}`, not all zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<Scalar>,
    pivot: usize,
}

impl LinearForm {
    /// Pivot defaults to the last index with a nonzero coefficient.
    pub fn new(coeffs: Vec<Scalar>) -> Result<LinearForm> {
        let pivot = coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidInput("linear form is zero".into()))?;
        let field = coeffs[pivot].field();
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::MixedFields);
        }
        Ok(LinearForm { coeffs, pivot })
    }

    /// Parses `"a0,a1,..."`.
    pub fn parse(text: &str, field: Field) -> Result<LinearForm> {
        let coeffs = text
            .split(',')
            .map(|t| field.parse_scalar(t))
            .collect::<Result<Vec<_>>>()?;
        LinearForm::new(coeffs)
    }

    /// The variable `y_i`.
    pub fn coordinate(field: Field, n_vars: usize, i: usize) -> Result<LinearForm> {
        if i >= n_vars {
            return Err(Error::IndexOutOfRange { index: i, n_vars });
        }
        let mut coeffs = vec![field.zero(); n_vars];
        coeffs[i] = field.one();
        LinearForm::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn n_vars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn field(&self) -> Field {
        self.coeffs[self.pivot].field()
    }

    pub fn to_form(&self) -> Form {
        Form::linear(self.field(), &self.coeffs)
    }

    /// Same hyperplane, eliminating `pivot` instead.
    pub fn with_pivot(&self, pivot: usize) -> Result<LinearForm> {
        match self.coeffs.get(pivot) {
            Some(c) if !c.is_zero() => Ok(LinearForm {
                coeffs: self.coeffs.clone(),
                pivot,
            }),
            Some(_) => Err(Error::InvalidInput(format!(
                "coefficient of y{pivot} is zero"
            ))),
            None => Err(Error::IndexOutOfRange {
                index: pivot,
                n_vars: self.n_vars(),
            }),
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(Scalar::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Uniform random nonzero coefficient vector (resampled until nonzero).
pub fn random_linear_form<R: Rng + ?Sized>(n_vars: usize, field: Field, rng: &mut R) -> Result<LinearForm> {
    if n_vars == 0 {
        return Err(Error::InvalidInput("linear form needs at least one variable".into()));
    }
    loop {
        let coeffs: Vec<Scalar> = (0..n_vars).map(|_| field.random(rng)).collect();
        if let Ok(h) = LinearForm::new(coeffs) {
            return Ok(h);
        }
    }
}

/// `F^H`: substitutes `y_p = -α_p^{-1} Σ_{i≠p} α_i y_i` where `p = H.pivot()`.
pub fn restrict_mod(form: &Form, h: &LinearForm) -> Result<Form> {
    if form.n_vars() != h.n_vars() || form.field() != h.field() {
        return Err(Error::MixedRings);
    }
    let field = form.field();
    let n = form.n_vars();
    let p = h.pivot();
    let scale = h.coeffs[p].inv()?.neg();
    let sub: Vec<Scalar> = (0..n)
        .filter(|&i| i != p)
        .map(|i| &h.coeffs[i] * &scale)
        .collect();
    let target = Form::linear(field, &sub);
    // Group by the pivot exponent: F = Σ_k G_k y_p^k, F^H = Σ_k G_k L^k.
    let mut groups: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); form.degree() as usize + 1];
    for (m, c) in form.terms() {
        groups[m.exp(p) as usize].push((m.without_var(p), c.clone()));
    }
    let mut out = Form::zero(field, n - 1, form.degree());
    let mut power = Form::one(field, n - 1);
    for (k, group) in groups.into_iter().enumerate() {
        if k > 0 {
            power = power.mul(&target)?;
        }
        if group.is_empty() {
            continue;
        }
        let g = Form::from_terms(field, n - 1, group)?;
        out = out.add(&g.mul(&power)?)?;
    }
    Ok(out)
}

/// `h_1(F^H)`, counting the zero restriction as codimension 0.
pub fn restricted_codimension(form: &Form, h: &LinearForm) -> Result<usize> {
    let r = restrict_mod(form, h)?;
    if r.is_zero() {
        Ok(0)
    } else {
        codimension(&r)
    }
}

/// Standing hypotheses for the codimension descent: `deg F >= 3` and
/// `F` essential in all of its `n + 1 >= 3` variables.
pub fn check_descent_hypotheses(form: &Form) -> Result<()> {
    if form.is_zero() {
        return Err(Error::HypothesisViolated("form is zero".into()));
    }
    if form.degree() < 3 {
        return Err(Error::HypothesisViolated(format!(
            "socle degree {} < 3",
            form.degree()
        )));
    }
    let c = codimension(form)?;
    if c < 3 || c != form.n_vars() {
        return Err(Error::HypothesisViolated(format!(
            "codimension {c} must equal the variable count {} and be at least 3",
            form.n_vars()
        )));
    }
    Ok(())
}

/// Samples `trials` random `H` and records every `H` with `h_1(F^H) < n`.
pub fn theorem_n_check(form: &Form, trials: usize, seed: u64) -> Result<TrialReport> {
    check_descent_hypotheses(form)?;
    let n = form.n_vars() - 1;
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = trial_rng(seed, k as u64);
            let h = random_linear_form(form.n_vars(), form.field(), &mut rng)?;
            let observed = restricted_codimension(form, &h)?;
            Ok((observed != n).then(|| Witness {
                form: form.to_string(),
                vars: form.n_vars(),
                h: Some(h.to_string()),
                observed: observed.to_string(),
                expected: None,
            }))
        })
        .collect::<Result<Vec<Option<Witness>>>>()?;
    Ok(TrialReport::from_outcomes("theorem-n", form.field(), seed, outcomes))
}

/// Rank of `{f_i^H}` for `n + 1` independent coprime forms of degree `d > 1`
/// in `n + 1 >= 3` variables.
pub fn divisibility_rank(forms: &[Form], h: &LinearForm) -> Result<usize> {
    check_divisibility_hypotheses(forms)?;
    let restricted = forms
        .iter()
        .map(|f| restrict_mod(f, h))
        .collect::<Result<Vec<_>>>()?;
    span_dimension(&restricted)
}

pub(crate) fn check_divisibility_hypotheses(forms: &[Form]) -> Result<()> {
    let fail = |what: &str| Err(Error::PreconditionViolated(what.into()));
    let Some(first) = forms.first() else {
        return fail("n < 2: no forms given");
    };
    if forms.len() < 3 {
        return fail("n < 2: need at least three forms");
    }
    if forms.iter().any(|f| !f.same_ring(first)) {
        return Err(Error::MixedRings);
    }
    if forms.len() != first.n_vars() {
        return fail("count: need n + 1 forms in n + 1 variables");
    }
    if forms.iter().any(|f| f.is_zero() || f.degree() != first.degree()) || first.degree() < 2 {
        return fail("degree: forms must share one degree d > 1");
    }
    if span_dimension(forms)? != forms.len() {
        return fail("independence: forms are linearly dependent");
    }
    let g = gcd_forms(forms)?;
    if g.degree() > 0 {
        return Err(Error::PreconditionViolated(format!("gcd: gcd is {g}, not 1")));
    }
    Ok(())
}

/// True iff `gcd(∂_0 F, ..., ∂_n F) = Π p_j^{e_j - 1}` up to a scalar,
/// where `F = Π p_j^{e_j}`.
pub fn gcd_lemma_check(factors: &[(Form, u32)]) -> Result<bool> {
    Ok(gcd_lemma_outcome(factors)?.0)
}

/// The verdict together with `F` and the computed gcd.
pub(crate) fn gcd_lemma_outcome(factors: &[(Form, u32)]) -> Result<(bool, Form, Form)> {
    let (first, _) = factors.first().ok_or(Error::EmptyFactorList)?;
    let field = first.field();
    let n = first.n_vars();
    let mut product = Form::one(field, n);
    let mut expected = Form::one(field, n);
    for (p, e) in factors {
        if !p.same_ring(first) {
            return Err(Error::MixedRings);
        }
        if p.is_zero() || p.degree() == 0 || *e == 0 {
            return Err(Error::PreconditionViolated(
                "factors must be nonconstant with positive multiplicity".into(),
            ));
        }
        product = product.mul(&p.pow(*e))?;
        expected = expected.mul(&p.pow(e - 1))?;
    }
    if !field.supports_degree(product.degree()) {
        return Err(Error::PreconditionViolated(format!(
            "characteristic must exceed the degree {}",
            product.degree()
        )));
    }
    let g = gcd_forms(&product.gradient())?;
    Ok((g == expected.monic(), product, g))
}
