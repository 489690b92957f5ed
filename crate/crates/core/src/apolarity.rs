//! Catalecticant matrices and Hilbert functions of apolar algebras.
//!
//! A degree-`i` monomial operator `x^D` acts on `S = k[y_0, ..., y_{n-1}]` by
//! iterated partial differentiation. For a form `F` of degree `e` the
//! catalecticant in degree `i` records, row by row, the coefficients of
//! `x^D ∘ F`; its rank is `h_i` of the Gorenstein algebra `R / Ann(F)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg;
use crate::poly::{Form, Monomial};

/// `x^D ∘ F`: the partial derivative of `F` prescribed by the exponents of `D`.
pub fn apply_operator(op: &Monomial, form: &Form) -> Result<Form> {
    if op.n_vars() != form.n_vars() {
        return Err(Error::MixedRings);
    }
    let field = form.field();
    let Some(degree) = form.degree().checked_sub(op.degree()) else {
        return Ok(Form::zero(field, form.n_vars(), 0));
    };
    let terms = form.terms().filter_map(|(m, c)| {
        let rest = op.quotient_of(m)?;
        Some((rest, c * &field.from_u64(m.falling_factorial(op))))
    });
    let out = Form::from_terms(field, form.n_vars(), terms)?;
    Ok(if out.is_zero() {
        Form::zero(field, form.n_vars(), degree)
    } else {
        out
    })
}

/// Operators of degree `i` against monomials of degree `e - i`.
#[derive(Clone, Debug)]
pub struct CatalecticantMatrix {
    field: Field,
    source_degree: u32,
    form_degree: u32,
    rows: Vec<Monomial>,
    cols: Vec<Monomial>,
    entries: Vec<Scalar>,
}

impl CatalecticantMatrix {
    pub fn source_degree(&self) -> u32 {
        self.source_degree
    }

    pub fn form_degree(&self) -> u32 {
        self.form_degree
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    /// Row labels (operators), descending graded-lex.
    pub fn row_monomials(&self) -> &[Monomial] {
        &self.rows
    }

    /// Column labels, descending graded-lex.
    pub fn col_monomials(&self) -> &[Monomial] {
        &self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.cols.len() + col]
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.field, self.rows.len(), self.cols.len(), &self.entries)
    }
}

/// The degree-`i` catalecticant of `form`.
pub fn catalecticant(form: &Form, i: u32) -> Result<CatalecticantMatrix> {
    let e = form.degree();
    if i > e {
        return Err(Error::DegreeOutOfRange { degree: i, max: e });
    }
    let n = form.n_vars();
    let field = form.field();
    let rows = Monomial::all_of_degree(n, i);
    let cols = Monomial::all_of_degree(n, e - i);
    let row_index: HashMap<&Monomial, usize> = rows.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let col_index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut entries = vec![field.zero(); rows.len() * cols.len()];
    for (m, c) in form.terms() {
        for d in divisors_of_degree(m, i) {
            let rest = d.quotient_of(m).expect("divisor");
            let r = row_index[&d];
            let k = col_index[&rest];
            entries[r * cols.len() + k] = c * &field.from_u64(m.falling_factorial(&d));
        }
    }
    Ok(CatalecticantMatrix {
        field,
        source_degree: i,
        form_degree: e,
        rows,
        cols,
        entries,
    })
}

fn divisors_of_degree(m: &Monomial, d: u32) -> Vec<Monomial> {
    fn rec(exps: &[u16], at: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if at == exps.len() {
            if left == 0 {
                out.push(Monomial::new(cur.clone()));
            }
            return;
        }
        let cap = u32::from(exps[at]).min(left);
        for e in 0..=cap {
            cur.push(e as u16);
            rec(exps, at + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m.exps(), 0, d, &mut Vec::with_capacity(m.n_vars()), &mut out);
    out
}

/// The h-vector `(h_0, ..., h_e)` of an apolar algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct HilbertFunction(Vec<u64>);

impl HilbertFunction {
    pub fn new(values: Vec<u64>) -> HilbertFunction {
        HilbertFunction(values)
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn socle_degree(&self) -> u32 {
        self.0.len().saturating_sub(1) as u32
    }

    /// `h_i`, zero outside `0..=e`.
    pub fn get(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// `h_1`.
    pub fn codimension(&self) -> u64 {
        self.get(1)
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for HilbertFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<HilbertFunction> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidInput(format!("bad h-vector {s:?}")))?;
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidInput(format!("bad h-vector entry {t:?}")))
            })
            .collect::<Result<Vec<u64>>>()
            .map(HilbertFunction)
    }
}

impl TryFrom<String> for HilbertFunction {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<HilbertFunction> for String {
    fn from(h: HilbertFunction) -> String {
        h.to_string()
    }
}

/// Differentiation loses information once the characteristic divides a
/// falling factorial of some exponent.
fn check_characteristic(form: &Form) -> Result<()> {
    if form.field().supports_degree(form.degree()) {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!(
            "characteristic {} does not exceed the degree {}",
            form.field().modulus(),
            form.degree()
        )))
    }
}

/// `h_i = rank catalecticant(F, i)` for `i = 0..=deg F`.
///
/// Ranks are computed for `i <= e/2` and mirrored: the degree `i` and
/// `e - i` catalecticants are transposes up to nonzero row and column scalings.
pub fn hilbert_function(form: &Form) -> Result<HilbertFunction> {
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    check_characteristic(form)?;
    let e = form.degree();
    let half: Vec<u64> = (0..=e / 2)
        .into_par_iter()
        .map(|i| catalecticant(form, i).map(|c| c.rank() as u64))
        .collect::<Result<Vec<u64>>>()?;
    let values = (0..=e)
        .map(|i| half[i.min(e - i) as usize])
        .collect();
    Ok(HilbertFunction(values))
}

/// Number of essential variables: the dimension of the span of the first partials.
pub fn codimension(form: &Form) -> Result<usize> {
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    if form.degree() == 0 {
        return Ok(0);
    }
    check_characteristic(form)?;
    Ok(catalecticant(form, 1)?.rank())
}

/// Dimension of the span of forms sharing one ring and one degree.
pub fn span_dimension(forms: &[Form]) -> Result<usize> {
    let Some(first) = forms.first() else {
        return Ok(0);
    };
    let field = first.field();
    let degree = forms.iter().find(|f| !f.is_zero()).map_or(0, Form::degree);
    for f in forms {
        if !f.same_ring(first) {
            return Err(Error::MixedRings);
        }
        if !f.is_zero() && f.degree() != degree {
            return Err(Error::NotHomogeneous {
                first: degree,
                other: f.degree(),
            });
        }
    }
    let mut cols: Vec<&Monomial> = forms.iter().flat_map(|f| f.terms().map(|(m, _)| m)).collect();
    cols.sort_unstable();
    cols.dedup();
    let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let mut entries = vec![field.zero(); forms.len() * cols.len()];
    for (r, f) in forms.iter().enumerate() {
        for (m, c) in f.terms() {
            entries[r * cols.len() + index[m]] = c.clone();
        }
    }
    Ok(linalg::rank(field, forms.len(), cols.len(), &entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_form;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(text: &str, n: usize) -> Form {
        parse_form(text, n, Field::Rational).unwrap()
    }

    fn mono(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn operator_examples() {
        assert_eq!(apply_operator(&mono(&[1]), &q("y0^4", 1)).unwrap(), q("4*y0^3", 1));
        assert_eq!(
            apply_operator(&mono(&[1, 1]), &q("y0^2*y1^2", 2)).unwrap(),
            q("4*y0*y1", 2)
        );
        assert!(apply_operator(&mono(&[5]), &q("y0^4", 1)).unwrap().is_zero());
        assert_eq!(
            apply_operator(&mono(&[1, 0, 0]), &q("y0", 2)),
            Err(Error::MixedRings)
        );
    }

    #[test]
    fn cubic_catalecticants() {
        let f = q("y0^3 + y1^3", 2);
        let c1 = catalecticant(&f, 1).unwrap();
        assert_eq!((c1.n_rows(), c1.n_cols()), (2, 3));
        assert_eq!(c1.rank(), 2);
        let c2 = catalecticant(&f, 2).unwrap();
        assert_eq!((c2.n_rows(), c2.n_cols()), (3, 2));
        assert_eq!(c2.rank(), 2);
        // rows x0^2, x0x1, x1^2 give 6y0, 0, 6y1
        assert_eq!(c2.entry(0, 0), &Field::Rational.from_i64(6));
        assert!(c2.entry(1, 0).is_zero() && c2.entry(1, 1).is_zero());
        assert_eq!(c2.entry(2, 1), &Field::Rational.from_i64(6));
        assert_eq!(
            catalecticant(&f, 4).unwrap_err(),
            Error::DegreeOutOfRange { degree: 4, max: 3 }
        );
    }

    #[test]
    fn entries_are_operator_coefficients() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = Form::random(Field::default(), 3, 4, Some(9), &mut rng);
        let c = catalecticant(&f, 2).unwrap();
        for (r, d) in c.row_monomials().iter().enumerate() {
            let g = apply_operator(d, &f).unwrap();
            for (k, m) in c.col_monomials().iter().enumerate() {
                let expected = g.coefficient(m).cloned().unwrap_or_else(|| f.field().zero());
                assert_eq!(c.entry(r, k), &expected);
            }
        }
    }

    #[test]
    fn random_ternary_quartic_has_rank_six() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        for _ in 0..20 {
            let f = Form::random(Field::default(), 3, 4, None, &mut rng);
            assert_eq!(catalecticant(&f, 2).unwrap().rank(), 6);
        }
    }

    #[test]
    fn single_variable_power() {
        assert_eq!(hilbert_function(&q("y0^4", 1)).unwrap().to_string(), "(1,1,1,1,1)");
    }

    #[test]
    fn degree_must_stay_below_characteristic() {
        let f7 = Field::prime(7).unwrap();
        let ok = crate::poly::parse_form("y0^6 + y1^6", 2, f7).unwrap();
        assert_eq!(hilbert_function(&ok).unwrap().to_string(), "(1,2,2,2,2,2,1)");
        let bad = crate::poly::parse_form("y0^7 + y1^7", 2, f7).unwrap();
        assert!(matches!(hilbert_function(&bad), Err(Error::PreconditionViolated(_))));
        assert!(matches!(codimension(&bad), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn thirteen_fourth_powers() {
        let text: Vec<String> = (0..13).map(|i| format!("y{i}^4")).collect();
        let f = parse_form(&text.join(" + "), 13, Field::Rational).unwrap();
        assert_eq!(hilbert_function(&f).unwrap().to_string(), "(1,13,13,13,1)");
    }

    #[test]
    fn generic_ternary_quintic() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let f = Form::random(Field::default(), 3, 5, None, &mut rng);
            assert_eq!(hilbert_function(&f).unwrap().to_string(), "(1,3,6,6,3,1)");
        }
    }

    #[test]
    fn codimension_examples() {
        let f = q("y0 + y1", 2).pow(4);
        assert_eq!(codimension(&f).unwrap(), 1);
        assert_eq!(codimension(&q("y0^4 + y1^4 + y2^4", 3)).unwrap(), 3);
        assert_eq!(codimension(&q("y0^2*y1^2", 3)).unwrap(), 2);
        assert_eq!(codimension(&Form::zero(Field::Rational, 2, 3)), Err(Error::ZeroForm));
        assert_eq!(hilbert_function(&Form::zero(Field::Rational, 2, 3)), Err(Error::ZeroForm));
    }

    #[test]
    fn span_of_partials() {
        let f = q("y0^2*y1^2", 3);
        assert_eq!(span_dimension(&f.gradient()).unwrap(), 2);
        assert_eq!(span_dimension(&[]).unwrap(), 0);
        assert!(span_dimension(&[q("y0", 2), q("y0^2", 2)]).is_err());
    }

    #[test]
    fn h_vector_text() {
        let h: HilbertFunction = "(1,13,12,13,1)".parse().unwrap();
        assert_eq!(h.values(), &[1, 13, 12, 13, 1]);
        assert_eq!(h.to_string(), "(1,13,12,13,1)");
        assert!(h.is_symmetric());
        assert!("1,2".parse::<HilbertFunction>().is_err());
    }

    proptest! {
        #[test]
        fn cubics_have_shape_r_r(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rand::Rng::gen_range(&mut rng, 1..7);
            let k = rand::Rng::gen_range(&mut rng, 1..15);
            let f = Form::random(Field::default(), n, 3, Some(k), &mut rng);
            let h = hilbert_function(&f).unwrap();
            let r = codimension(&f).unwrap() as u64;
            prop_assert_eq!(h.values(), &[1, r, r, 1]);
            prop_assert!(r <= n as u64);
        }

        #[test]
        fn rank_ignores_row_and_column_order(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = Form::random(Field::default(), 4, 4, Some(10), &mut rng);
            let c = catalecticant(&f, 2).unwrap();
            let mut rows: Vec<usize> = (0..c.n_rows()).collect();
            let mut cols: Vec<usize> = (0..c.n_cols()).collect();
            rand::seq::SliceRandom::shuffle(rows.as_mut_slice(), &mut rng);
            rand::seq::SliceRandom::shuffle(cols.as_mut_slice(), &mut rng);
            let permuted: Vec<Scalar> = rows
                .iter()
                .flat_map(|&r| cols.iter().map(move |&k| (r, k)))
                .map(|(r, k)| c.entry(r, k).clone())
                .collect();
            prop_assert_eq!(
                linalg::rank(f.field(), c.n_rows(), c.n_cols(), &permuted),
                c.rank()
            );
        }
    }
}
