use std::collections::BTreeMap;
use std::fmt;

use rand::seq::index::sample;
use rand::Rng;

use super::monomial::{binomial, Monomial};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// A homogeneous polynomial in `y_0, ..., y_{n-1}` with exact coefficients.
///
/// Every stored monomial has total degree exactly `degree` and no stored
/// coefficient is zero. The zero form keeps whatever degree it was built with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    field: Field,
    n_vars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Form {
    pub fn zero(field: Field, n_vars: usize, degree: u32) -> Form {
        Form {
            field,
            n_vars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The constant form `c`.
    pub fn constant(c: Scalar, n_vars: usize) -> Form {
        let mut f = Form::zero(c.field(), n_vars, 0);
        f.add_term(Monomial::one(n_vars), c);
        f
    }

    pub fn one(field: Field, n_vars: usize) -> Form {
        Form::constant(field.one(), n_vars)
    }

    /// `y_i` in a ring with `n_vars` variables.
    pub fn var(field: Field, n_vars: usize, i: usize) -> Result<Form> {
        if i >= n_vars {
            return Err(Error::IndexOutOfRange { index: i, n_vars });
        }
        Ok(Form::monomial(field, Monomial::var_power(n_vars, i, 1), field.one()))
    }

    pub fn monomial(field: Field, m: Monomial, c: Scalar) -> Form {
        let mut f = Form::zero(field, m.n_vars(), m.degree());
        f.add_term(m, c);
        f
    }

    /// The linear form `sum_i coeffs[i] y_i`.
    pub fn linear(field: Field, coeffs: &[Scalar]) -> Form {
        let n = coeffs.len();
        let mut f = Form::zero(field, n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(Monomial::var_power(n, i, 1), c.clone());
        }
        f
    }

    /// Builds a form from terms, merging repeated monomials.
    pub fn from_terms<I>(field: Field, n_vars: usize, terms: I) -> Result<Form>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut degree = None;
        let mut f = Form::zero(field, n_vars, 0);
        for (m, c) in terms {
            if m.n_vars() != n_vars {
                return Err(Error::MixedRings);
            }
            if c.field() != field {
                return Err(Error::MixedFields);
            }
            match degree {
                None => {
                    degree = Some(m.degree());
                    f.degree = m.degree();
                }
                Some(d) if d != m.degree() => {
                    return Err(Error::NotHomogeneous {
                        first: d,
                        other: m.degree(),
                    })
                }
                _ => {}
            }
            f.add_term(m, c);
        }
        Ok(f)
    }

    /// Adds `c*m` in place; `m` must have the form's degree.
    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.degree(), self.degree);
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Indices of variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.n_vars)
            .filter(|&i| self.terms.keys().any(|m| m.exp(i) > 0))
            .collect()
    }

    pub fn same_ring(&self, other: &Form) -> bool {
        self.field == other.field && self.n_vars == other.n_vars
    }

    fn check_ring(&self, other: &Form) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        self.check_ring(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::NotHomogeneous {
                first: self.degree,
                other: other.degree,
            });
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        self.map_coefficients(|c| c.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero(self.field, self.n_vars, self.degree);
        }
        self.map_coefficients(|x| x * c)
    }

    fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Form {
        Form {
            field: self.field,
            n_vars: self.n_vars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Form) -> Result<Form> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Form) -> Form {
        let mut acc: std::collections::HashMap<Monomial, Scalar> = std::collections::HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Form {
            field: self.field,
            n_vars: self.n_vars,
            degree: self.degree + other.degree,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Form {
        let mut acc = Form::one(self.field, self.n_vars);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Formal partial derivative with respect to `y_i`.
    pub fn partial(&self, i: usize) -> Result<Form> {
        if i >= self.n_vars {
            return Err(Error::IndexOutOfRange {
                index: i,
                n_vars: self.n_vars,
            });
        }
        let mut out = Form::zero(self.field, self.n_vars, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let coef = c * &self.field.from_u64(u64::from(e));
            out.add_term(m.with_exp(i, e - 1), coef);
        }
        Ok(out)
    }

    /// All first partials `(d_0 F, ..., d_{n-1} F)`.
    pub fn gradient(&self) -> Vec<Form> {
        (0..self.n_vars)
            .map(|i| self.partial(i).expect("index in range"))
            .collect()
    }

    /// Scales so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Form {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("stored coefficients are nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Re-embeds into a ring with `n_vars` variables, sending `y_j` to `y_{map[j]}`.
    pub fn remap(&self, n_vars: usize, map: &[usize]) -> Result<Form> {
        if map.len() != self.n_vars {
            return Err(Error::MixedRings);
        }
        if let Some(&bad) = map.iter().find(|&&j| j >= n_vars) {
            return Err(Error::IndexOutOfRange { index: bad, n_vars });
        }
        let mut out = Form::zero(self.field, n_vars, self.degree);
        for (m, c) in &self.terms {
            out.add_term(m.remap(n_vars, map), c.clone());
        }
        Ok(out)
    }

    /// The same form viewed in a ring with `extra` more (unused) variables.
    pub fn extend_vars(&self, extra: usize) -> Form {
        let map: Vec<usize> = (0..self.n_vars).collect();
        self.remap(self.n_vars + extra, &map)
            .expect("identity map fits")
    }

    /// Exact division by a nonzero form, `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Form) -> Result<Option<Form>> {
        self.check_ring(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.inv()?;
        let qdeg = match self.degree.checked_sub(divisor.degree) {
            Some(d) => d,
            None if self.is_zero() => 0,
            None => return Ok(None),
        };
        let mut rem = self.clone();
        let mut quot = Form::zero(self.field, self.n_vars, qdeg);
        while let Some((m, c)) = rem.leading_term() {
            let Some(t) = lm.quotient_of(m) else {
                return Ok(None);
            };
            let coef = c * &lc_inv;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&t), (dc * &coef).neg());
            }
            quot.add_term(t, coef);
        }
        Ok(Some(quot))
    }

    /// Uniformly random coefficients on a uniformly random set of `support`
    /// monomials (all monomials when `support` is `None` or too large).
    pub fn random<R: Rng + ?Sized>(
        field: Field,
        n_vars: usize,
        degree: u32,
        support: Option<usize>,
        rng: &mut R,
    ) -> Form {
        let all = Monomial::all_of_degree(n_vars, degree);
        let k = support.unwrap_or(all.len()).min(all.len());
        let mut idx = sample(rng, all.len(), k).into_vec();
        idx.sort_unstable();
        let mut f = Form::zero(field, n_vars, degree);
        for i in idx {
            f.add_term(all[i].clone(), field.random_nonzero(rng));
        }
        f
    }

    /// Number of monomials of this form's degree in its ring.
    pub fn dense_size(&self) -> u64 {
        binomial(
            self.n_vars as u64 + u64::from(self.degree) - 1,
            u64::from(self.degree),
        )
    }
}

impl fmt::Display for Form {
    /// Canonical text: descending graded-lex, unit coefficients suppressed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let mag = if negative { c.neg() } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("y{i}")
                    } else {
                        format!("y{i}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
