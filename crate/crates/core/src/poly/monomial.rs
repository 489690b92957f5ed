use std::cmp::Ordering;

/// Exponent vector over `y_0, ..., y_{n-1}` with its total degree cached.
///
/// Ordering is graded lexicographic with `y_0 > y_1 > ...`: higher total
/// degree first, then the exponent vectors compared left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Monomial {
        let degree = exps.iter().map(|&e| u32::from(e)).sum();
        Monomial { exps, degree }
    }

    pub fn one(n_vars: usize) -> Monomial {
        Monomial {
            exps: vec![0; n_vars],
            degree: 0,
        }
    }

    /// `y_i^power`.
    pub fn var_power(n_vars: usize, i: usize, power: u16) -> Monomial {
        let mut exps = vec![0; n_vars];
        exps[i] = power;
        Monomial::new(exps)
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn n_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n_vars(), other.n_vars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
            degree: other.degree - self.degree,
        })
    }

    /// Copy with exponent `i` replaced.
    pub fn with_exp(&self, i: usize, e: u16) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] = e;
        Monomial::new(exps)
    }

    /// Copy with variable `i` deleted from the exponent vector.
    pub fn without_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.remove(i);
        Monomial::new(exps)
    }

    /// Re-embeds into `n_vars` variables, sending `y_j` to `y_{map[j]}`.
    pub fn remap(&self, n_vars: usize, map: &[usize]) -> Monomial {
        let mut exps = vec![0; n_vars];
        for (j, &e) in self.exps.iter().enumerate() {
            exps[map[j]] += e;
        }
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    /// All monomials of total degree `degree` in `n_vars` variables, in
    /// descending graded-lex order.
    pub fn all_of_degree(n_vars: usize, degree: u32) -> Vec<Monomial> {
        fn rec(prefix: &mut Vec<u16>, left: u32, slots: usize, out: &mut Vec<Monomial>) {
            if slots == 1 {
                prefix.push(left as u16);
                out.push(Monomial::new(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e as u16);
                rec(prefix, left - e, slots - 1, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n_vars == 0 {
            if degree == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(&mut Vec::with_capacity(n_vars), degree, n_vars, &mut out);
        out
    }

    /// `prod_j exps[j]! / (exps[j] - sub[j])!`, the scalar produced by
    /// applying the differential operator `sub` to `self`.
    pub fn falling_factorial(&self, sub: &Monomial) -> u64 {
        let mut acc: u64 = 1;
        for (&a, &d) in self.exps.iter().zip(&sub.exps) {
            for k in 0..d {
                acc *= u64::from(a - k);
            }
        }
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `C(n, k)` as a `u64`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
