//! Exact rank kernels: plain elimination over GF(p), fraction-free
//! (Bareiss) elimination over the integers for rational matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::{inv_mod, Field, Scalar};

/// Rank of a dense matrix over GF(p), `p < 2^32`. Entries must be reduced.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..n_cols {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p);
        let pivot_row: Vec<(usize, u64)> = rows[rank]
            .iter()
            .enumerate()
            .skip(col)
            .filter(|(_, &v)| v != 0)
            .map(|(j, &v)| (j, v * inv % p))
            .collect();
        for row in rows[rank + 1..].iter_mut() {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for &(j, v) in &pivot_row {
                row[j] = (row[j] + p - factor * v % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of an integer matrix by fraction-free Gaussian elimination.
///
/// After `k` pivots every remaining entry is a `(k+1)`-minor of the input,
/// so each division by the previous pivot is exact.
pub fn rank_bareiss(mut rows: Vec<Vec<BigInt>>) -> usize {
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..n_cols {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[col];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[col]);
            for j in col + 1..n_cols {
                let mut v = pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                if !v.is_zero() {
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = rows[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank of a dense row-major matrix of field elements.
///
/// Zero rows and columns are discarded first and elimination runs on the
/// orientation with fewer rows.
pub fn rank(field: Field, n_rows: usize, n_cols: usize, entries: &[Scalar]) -> usize {
    assert_eq!(entries.len(), n_rows * n_cols);
    let live_rows: Vec<usize> = (0..n_rows)
        .filter(|&r| entries[r * n_cols..(r + 1) * n_cols].iter().any(|x| !x.is_zero()))
        .collect();
    let live_cols: Vec<usize> = (0..n_cols)
        .filter(|&c| live_rows.iter().any(|&r| !entries[r * n_cols + c].is_zero()))
        .collect();
    if live_rows.is_empty() {
        return 0;
    }
    let (outer, inner, transposed) = if live_rows.len() <= live_cols.len() {
        (&live_rows, &live_cols, false)
    } else {
        (&live_cols, &live_rows, true)
    };
    let at = |o: usize, i: usize| {
        if transposed {
            &entries[i * n_cols + o]
        } else {
            &entries[o * n_cols + i]
        }
    };
    match field {
        Field::Prime(p) => {
            let rows = outer
                .iter()
                .map(|&o| {
                    inner
                        .iter()
                        .map(|&i| at(o, i).residue().expect("prime-field entry"))
                        .collect()
                })
                .collect();
            rank_mod_p(rows, p)
        }
        Field::Rational => {
            let rows = outer
                .iter()
                .map(|&o| {
                    let ratios: Vec<(BigInt, BigInt)> =
                        inner.iter().map(|&i| at(o, i).to_ratio()).collect();
                    let lcm = ratios
                        .iter()
                        .fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
                    ratios
                        .into_iter()
                        .map(|(n, d)| n * (&lcm / d))
                        .collect()
                })
                .collect();
            rank_bareiss(rows)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn bareiss_small_cases() {
        assert_eq!(rank_bareiss(ints(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_bareiss(ints(&[&[0, 1, 2], &[1, 0, 3], &[1, 1, 5]])), 2);
        assert_eq!(rank_bareiss(ints(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]])), 3);
        assert_eq!(rank_bareiss(ints(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn mod_p_detects_characteristic() {
        // det = 7, singular mod 7 only
        let m = vec![vec![2, 1], vec![1, 4]];
        assert_eq!(rank_mod_p(m.clone(), 7), 1);
        assert_eq!(rank_mod_p(m, 11), 2);
    }

    #[test]
    fn rational_entries() {
        let q = Field::Rational;
        let e: Vec<Scalar> = ["1/2", "1/3", "3", "2"]
            .iter()
            .map(|s| q.parse_scalar(s).unwrap())
            .collect();
        assert_eq!(rank(q, 2, 2, &e), 1);
    }

    /// Brute-force rank over GF(p): largest k with a nonzero k-minor.
    fn minor_rank(m: &[Vec<i64>], p: i64) -> usize {
        fn det(m: &[Vec<i64>], p: i64) -> i64 {
            let n = m.len();
            if n == 0 {
                return 1;
            }
            let mut acc = 0;
            for c in 0..n {
                let sub: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { p - 1 };
                acc = (acc + sign * m[0][c] % p * det(&sub, p)) % p;
            }
            acc
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let rows = m.len();
        let cols = m[0].len();
        for k in (1..=rows.min(cols)).rev() {
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let sub: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                    if det(&sub, p) % p != 0 {
                        return k;
                    }
                }
            }
        }
        0
    }

    proptest! {
        #[test]
        fn ranks_agree_with_minors(m in proptest::collection::vec(proptest::collection::vec(0i64..4, 4), 1..5)) {
            let p = 13u64;
            let expected = minor_rank(&m, p as i64);
            let rows: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect();
            prop_assert_eq!(rank_mod_p(rows, p), expected);
            // small entries: integer rank equals rank mod a prime above all minors
            let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            prop_assert_eq!(rank_bareiss(big), minor_rank(&m, 1_000_003));
        }

        #[test]
        fn orientation_independent(m in proptest::collection::vec(proptest::collection::vec(-3i64..4, 6), 1..8)) {
            let q = Field::Rational;
            let r = m.len();
            let flat: Vec<Scalar> = m.iter().flatten().map(|&x| q.from_i64(x)).collect();
            let tflat: Vec<Scalar> = (0..6).flat_map(|c| m.iter().map(move |row| q.from_i64(row[c]))).collect();
            prop_assert_eq!(rank(q, r, 6, &flat), rank(q, 6, r, &tflat));
        }
    }
}
