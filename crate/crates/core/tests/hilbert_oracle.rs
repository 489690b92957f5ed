//! Catalecticant ranks against the repeated-differentiation oracle.

mod support;

use apolar::rng::trial_rng;
use apolar::{hilbert_function, Field, Form};
use proptest::prelude::*;
use support::oracle::oracle_hf;

#[test]
fn oracle_matches_on_known_forms() {
    let fp = Field::default();
    let f = apolar::parse_form("y0^4 + y1^4 + y2^4", 3, fp).unwrap();
    assert_eq!(oracle_hf(&f), vec![1, 3, 3, 3, 1]);
    let g = apolar::hfsearch::bipartite_monomial_form(3, 4, fp).unwrap();
    assert_eq!(oracle_hf(&g), vec![1, 13, 12, 13, 1]);
}

#[test]
fn hundred_random_forms_agree() {
    let fp = Field::default();
    for k in 0..100u64 {
        let mut rng = trial_rng(2024, k);
        let n = 1 + (k as usize % 6);
        let e = 1 + (k as u32 / 6) % 5;
        let dense = Form::zero(fp, n, e).dense_size() as usize;
        let support = 1 + (k as usize * 7) % dense;
        let f = Form::random(fp, n, e, Some(support), &mut rng);
        let hf = hilbert_function(&f).unwrap();
        assert!(hf.is_symmetric(), "{f}: {hf}");
        assert_eq!(hf.values(), oracle_hf(&f).as_slice(), "{f}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn catalecticant_equals_oracle(seed in any::<u64>(), n in 1usize..=4, e in 2u32..=5, sparse in 1usize..=12) {
        let fp = Field::default();
        let mut rng = trial_rng(seed, 0);
        let f = Form::random(fp, n, e, Some(sparse), &mut rng);
        let hf = hilbert_function(&f).unwrap();
        prop_assert!(hf.is_symmetric());
        let expected = oracle_hf(&f);
        prop_assert_eq!(hf.values(), expected.as_slice());
    }
}
