//! Text grammar for forms.
//!
//! ```text
//! form   ::= ['+' | '-'] term (('+' | '-') term)*
//! term   ::= coef ['*' factor ('*' factor)*] | factor ('*' factor)*
//! factor ::= 'y' index ['^' exponent]
//! coef   ::= integer | integer '/' integer
//! ```
//!
//! Whitespace is ignored and the Unicode minus sign is accepted for `-`.

use num_bigint::BigInt;
use num_traits::One;

use super::form::Form;
use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let chars = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Cursor { chars, at: 0, text }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars
            .get(self.at)
            .map(|&(p, _)| p)
            .unwrap_or(self.text.len())
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.at += 1;
        c
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> Result<BigInt> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.at += 1;
        }
        if s.is_empty() {
            return self.error("expected digits");
        }
        Ok(s.parse().expect("ascii digits"))
    }

    fn small(&mut self, what: &str) -> Result<usize> {
        let pos = self.pos();
        let n = self.digits()?;
        usize::try_from(n).map_err(|_| Error::Syntax {
            pos,
            msg: format!("{what} too large"),
        })
    }
}

fn is_minus(c: char) -> bool {
    c == '-' || c == '\u{2212}'
}

/// Parses `text` as a homogeneous form in `n_vars` variables over `field`.
pub fn parse_form(text: &str, n_vars: usize, field: Field) -> Result<Form> {
    let mut cur = Cursor::new(text);
    let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
    let mut degree: Option<u32> = None;
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            Some('+') => {
                cur.bump();
            }
            Some(c) if is_minus(c) => {
                cur.bump();
                negative = true;
            }
            None if first => return cur.error("empty form"),
            None => break,
            _ if first => {}
            Some(c) => return cur.error(format!("expected '+' or '-', found {c:?}")),
        }
        first = false;
        let (m, mut c) = parse_term(&mut cur, n_vars, field)?;
        if negative {
            c = c.neg();
        }
        match degree {
            None => degree = Some(m.degree()),
            Some(d) if d != m.degree() => {
                return Err(Error::NotHomogeneous {
                    first: d,
                    other: m.degree(),
                })
            }
            _ => {}
        }
        terms.push((m, c));
        if cur.peek().is_none() {
            break;
        }
    }
    let d = degree.unwrap_or(0);
    let mut f = Form::from_terms(field, n_vars, terms)?;
    if f.is_zero() {
        f = Form::zero(field, n_vars, d);
    }
    Ok(f)
}

fn parse_term(cur: &mut Cursor<'_>, n_vars: usize, field: Field) -> Result<(Monomial, Scalar)> {
    let mut exps = vec![0u16; n_vars];
    let mut coef = field.one();
    let mut expect_factor = true;
    if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        let num = cur.digits()?;
        let den = if cur.peek() == Some('/') {
            cur.bump();
            cur.digits()?
        } else {
            BigInt::one()
        };
        coef = field.from_ratio(&num, &den).map_err(|e| match e {
            Error::DivisionByZero => Error::Syntax {
                pos: cur.pos(),
                msg: "zero denominator".into(),
            },
            other => other,
        })?;
        if cur.peek() == Some('*') {
            cur.bump();
        } else {
            expect_factor = false;
        }
    }
    while expect_factor {
        match cur.peek() {
            Some('y') => {
                cur.bump();
            }
            Some(c) => return cur.error(format!("expected variable, found {c:?}")),
            None => return cur.error("expected variable"),
        }
        let index = cur.small("variable index")?;
        if index >= n_vars {
            return Err(Error::UnknownVariable { index, n_vars });
        }
        let mut e = 1usize;
        if cur.peek() == Some('^') {
            cur.bump();
            e = cur.small("exponent")?;
        }
        let e = u16::try_from(e).map_err(|_| Error::Syntax {
            pos: cur.pos(),
            msg: "exponent too large".into(),
        })?;
        exps[index] += e;
        if cur.peek() == Some('*') {
            cur.bump();
        } else {
            expect_factor = false;
        }
    }
    Ok((Monomial::new(exps), coef))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn reads_power_sum() {
        let f = parse_form("y0^4 + y1^4", 2, q()).unwrap();
        assert_eq!(f.degree(), 4);
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.to_string(), "y0^4 + y1^4");
    }

    #[test]
    fn reads_coefficients() {
        let f = parse_form("3*y0^2*y1 - y1^3", 2, q()).unwrap();
        assert_eq!(f.degree(), 3);
        let c = |e: Vec<u16>| f.coefficient(&Monomial::new(e)).cloned().unwrap();
        assert_eq!(c(vec![2, 1]), q().from_i64(3));
        assert_eq!(c(vec![0, 3]), q().from_i64(-1));
    }

    #[test]
    fn rejects_inhomogeneous() {
        assert_eq!(
            parse_form("y0^2 + y1", 2, q()),
            Err(Error::NotHomogeneous { first: 2, other: 1 })
        );
    }

    #[test]
    fn rejects_unknown_variable() {
        assert_eq!(
            parse_form("y0 + y2", 2, q()),
            Err(Error::UnknownVariable { index: 2, n_vars: 2 })
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_form("y0^2 + * y1^2", 2, q()) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_form("", 2, q()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_form("y0 y1", 2, q()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_form("1/0*y0", 2, q()), Err(Error::Syntax { .. })));
    }

    #[test]
    fn unicode_minus_and_whitespace() {
        let f = parse_form(" -  y0 * y1 \u{2212} 1/2*y1^2 ", 2, q()).unwrap();
        assert_eq!(f.to_string(), "-y0*y1 - 1/2*y1^2");
    }

    #[test]
    fn cancellation_gives_zero_with_degree() {
        let f = parse_form("y0^2 - y0^2", 2, q()).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.degree(), 2);
        assert_eq!(f.to_string(), "0");
    }

    #[test]
    fn prime_field_residues() {
        let p = Field::prime(7).unwrap();
        let f = parse_form("-y0 + 9*y1", 2, p).unwrap();
        assert_eq!(f.to_string(), "6*y0 + 2*y1");
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(seed in any::<u64>(), n in 1usize..5, d in 0u32..5, rational in any::<bool>()) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let field = if rational { Field::Rational } else { Field::default() };
            let support = rand::Rng::gen_range(&mut rng, 1..6);
            let mut f = Form::random(field, n, d, Some(support), &mut rng);
            if rational {
                f = f.scale(&field.parse_scalar("-3/7").unwrap());
            }
            let text = f.to_string();
            let g = parse_form(&text, n, field).unwrap();
            prop_assert_eq!(&g, &f);
            prop_assert_eq!(g.to_string(), text);
        }
    }
}
