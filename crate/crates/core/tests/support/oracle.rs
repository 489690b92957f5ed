//! Independent Hilbert-function oracle: `h_i` is the dimension of the span
//! of all order-`i` partial derivatives, built by differentiating a basis one
//! variable at a time and reducing mod p by hand. Shares no code with the
//! catalecticant path beyond `Form::gradient`.

use std::collections::BTreeMap;

use apolar::Form;

const P: u64 = 2_147_483_647;

type Vector = BTreeMap<Vec<u16>, u64>;

fn to_vector(f: &Form) -> Vector {
    f.terms()
        .map(|(m, c)| (m.exps().to_vec(), c.residue().unwrap()))
        .collect()
}

fn inv(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % P, P - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % P;
        }
        base = base * base % P;
        exp >>= 1;
    }
    acc
}

/// Echelon basis keyed by pivot monomial; returns the reduced forms kept.
fn basis(forms: Vec<Form>) -> Vec<Form> {
    let mut pivots: Vec<(Vec<u16>, Vector)> = Vec::new();
    let mut kept = Vec::new();
    for f in forms {
        let mut v = to_vector(&f);
        for (key, row) in &pivots {
            if let Some(&c) = v.get(key) {
                for (k, &x) in row {
                    let e = v.entry(k.clone()).or_insert(0);
                    *e = (*e + P - c * x % P) % P;
                }
                v.retain(|_, x| *x != 0);
            }
        }
        if let Some((key, &lead)) = v.iter().next().map(|(k, x)| (k.clone(), x)) {
            let scale = inv(lead);
            let row: Vector = v.into_iter().map(|(k, x)| (k, x * scale % P)).collect();
            // keep earlier rows reduced against the new pivot
            for (_, old) in pivots.iter_mut() {
                if let Some(&c) = old.get(&key) {
                    for (k, &x) in &row {
                        let e = old.entry(k.clone()).or_insert(0);
                        *e = (*e + P - c * x % P) % P;
                    }
                    old.retain(|_, x| *x != 0);
                }
            }
            pivots.push((key, row));
            kept.push(f);
        }
    }
    kept
}

/// `h_0, .., h_e` by repeated differentiation.
pub fn oracle_hf(f: &Form) -> Vec<u64> {
    let e = f.degree();
    let mut level = vec![f.clone()];
    let mut out = Vec::new();
    for i in 0..=e {
        level = basis(level);
        out.push(level.len() as u64);
        if i == e {
            break;
        }
        level = level
            .iter()
            .flat_map(|g| g.gradient())
            .filter(|g| !g.is_zero())
            .collect();
    }
    out
}
