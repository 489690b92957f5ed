//! Greatest common divisors of forms.
//!
//! Inputs are dehomogenized with respect to one variable, the gcd of the
//! affine images is computed by the recursive content / primitive-part
//! scheme with a subresultant remainder sequence in the main variable, and
//! the result is homogenized again. Powers of the dehomogenizing variable
//! are split off beforehand since they are invisible to the affine gcd.

use std::collections::{BTreeMap, HashMap};

use super::form::Form;
use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Sparse, not necessarily homogeneous polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly {
    field: Field,
    n_vars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    fn zero(field: Field, n_vars: usize) -> Poly {
        Poly {
            field,
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    fn constant(c: Scalar, n_vars: usize) -> Poly {
        let mut p = Poly::zero(c.field(), n_vars);
        p.add_term(Monomial::one(n_vars), c);
        p
    }

    fn one(field: Field, n_vars: usize) -> Poly {
        Poly::constant(field.one(), n_vars)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
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

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    fn degree_in(&self, v: usize) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    fn vars(&self) -> Vec<usize> {
        (0..self.n_vars)
            .filter(|&i| self.terms.keys().any(|m| m.exp(i) > 0))
            .collect()
    }

    fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field, self.n_vars);
        }
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.terms.len() * 2);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        let s = o.get() + &c;
                        *o.get_mut() = s;
                    }
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                }
            }
        }
        Poly {
            field: self.field,
            n_vars: self.n_vars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.field, self.n_vars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    fn scale(&self, c: &Scalar) -> Poly {
        Poly {
            field: self.field,
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x * c))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    /// Multiplies by `y_v^k`.
    fn shift(&self, v: usize, k: u16) -> Poly {
        Poly {
            field: self.field,
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.with_exp(v, m.exp(v) + k), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.leading()?;
        let lc_inv = lc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.field, self.n_vars);
        while let Some((m, c)) = rem.leading() {
            let t = lm.quotient_of(m)?;
            let coef = c * &lc_inv;
            for (dm, dc) in &d.terms {
                rem.add_term(dm.mul(&t), (dc * &coef).neg());
            }
            quot.add_term(t, coef);
        }
        Some(quot)
    }

    /// Coefficients in `y_v`: entry `k` multiplies `y_v^k` and is free of `y_v`.
    fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Poly::zero(self.field, self.n_vars); deg + 1];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize].add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    fn lead_coeff_in(&self, v: usize) -> Poly {
        let deg = self.degree_in(v);
        let mut out = Poly::zero(self.field, self.n_vars);
        for (m, c) in &self.terms {
            if m.exp(v) == deg {
                out.add_term(m.with_exp(v, 0), c.clone());
            }
        }
        out
    }

    fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
        }
    }
}

fn content_in(p: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero(p.field, p.n_vars);
    for c in p.coeffs_in(v).into_iter().filter(|c| !c.is_zero()) {
        g = gcd(&g, &c);
        if g.is_constant() {
            return Poly::one(p.field, p.n_vars);
        }
    }
    g
}

fn primitive_part_in(p: &Poly, v: usize) -> Poly {
    let c = content_in(p, v);
    p.exact_div(&c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` as polynomials in `y_v`.
fn pseudo_rem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v);
    let lb = b.lead_coeff_in(v);
    let mut r = a.clone();
    let mut steps = 0u32;
    let total = u32::from(a.degree_in(v)) - u32::from(db) + 1;
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.lead_coeff_in(v);
        r = r.mul(&lb).sub(&b.mul(&lr).shift(v, dr - db));
        steps += 1;
    }
    r.mul(&lb.pow(total - steps))
}

/// gcd of two polynomials that are primitive in `y_v` with positive `y_v`-degree.
fn subresultant_gcd(a: &Poly, b: &Poly, v: usize) -> Poly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut g = Poly::one(a.field, a.n_vars);
    let mut h = Poly::one(a.field, a.n_vars);
    loop {
        let delta = u32::from(a.degree_in(v) - b.degree_in(v));
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            return primitive_part_in(&b, v);
        }
        if r.degree_in(v) == 0 {
            return Poly::one(a.field, a.n_vars);
        }
        let divisor = g.mul(&h.pow(delta));
        a = b;
        b = r.exact_div(&divisor).expect("subresultant division is exact");
        g = a.lead_coeff_in(v);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant division is exact"),
        };
    }
}

/// Monic gcd of two polynomials (zero only when both are zero).
fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.field, a.n_vars);
    }
    let va = a.vars();
    let vb = b.vars();
    // A variable missing from one side cannot occur in the gcd.
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        return gcd(&content_in(a, v), b);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        return gcd(a, &content_in(b, v));
    }
    let v = *va
        .iter()
        .min_by_key(|&&v| (a.degree_in(v).max(b.degree_in(v)), v))
        .expect("nonconstant");
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    c.mul(&subresultant_gcd(&pa, &pb, v)).monic()
}

/// Monic gcd of a list of forms (graded-lex leading coefficient 1).
///
/// The gcd of a single form is that form made monic.
pub fn gcd_forms(forms: &[Form]) -> Result<Form> {
    let first = forms.first().ok_or(Error::AllZero)?;
    if forms.iter().any(|f| !f.same_ring(first)) {
        return Err(Error::MixedRings);
    }
    let nonzero: Vec<&Form> = forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::AllZero);
    }
    let field = first.field();
    let n = first.n_vars();
    if nonzero.len() == 1 {
        return Ok(nonzero[0].monic());
    }
    if n == 0 || nonzero.iter().any(|f| f.degree() == 0) {
        return Ok(Form::one(field, n));
    }
    // Dehomogenize with respect to the variable of largest exponent.
    let v = (0..n)
        .max_by_key(|&i| {
            (
                nonzero
                    .iter()
                    .flat_map(|f| f.terms().map(move |(m, _)| m.exp(i)))
                    .max()
                    .unwrap_or(0),
                std::cmp::Reverse(i),
            )
        })
        .expect("n > 0");
    let mut v_power = u16::MAX;
    let mut g = Poly::zero(field, n);
    for f in nonzero {
        let low = f.terms().map(|(m, _)| m.exp(v)).min().unwrap_or(0);
        v_power = v_power.min(low);
        let mut p = Poly::zero(field, n);
        for (m, c) in f.terms() {
            p.add_term(m.with_exp(v, 0), c.clone());
        }
        g = gcd(&g, &p);
        if g.is_constant() && v_power == 0 {
            break;
        }
    }
    // Homogenize.
    let top = g.terms.keys().map(Monomial::degree).max().unwrap_or(0);
    let mut out = Form::zero(field, n, top + u32::from(v_power));
    for (m, c) in &g.terms {
        let lift = (top - m.degree()) as u16 + v_power;
        out.add_term(m.with_exp(v, lift), c.clone());
    }
    Ok(out.monic())
}
