//! Property-based invariants across the group, metric and cocycle
//! layers.

use std::sync::Arc;

use proptest::prelude::*;

use cocycle_core::{
    parse_group_spec, GroupElement, LengthFunction, ModelRef, ScaleParams, SparseFunction, Word,
};

fn word_strategy(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, prop::bool::ANY), 0..max_len).prop_map(|tokens| {
        Word::new(
            tokens
                .into_iter()
                .map(|(i, s)| (i, if s { 1 } else { -1 }))
                .collect(),
        )
    })
}

fn models() -> Vec<ModelRef> {
    ["free:2", "zd:3", "heis3"]
        .iter()
        .map(|s| Arc::new(parse_group_spec(s).unwrap()))
        .collect()
}

proptest! {
    #[test]
    fn group_axioms_hold_on_words(
        wa in word_strategy(2, 10),
        wb in word_strategy(2, 10),
        wc in word_strategy(2, 10),
    ) {
        for model in models() {
            let a = model.eval_word(&wa).unwrap();
            let b = model.eval_word(&wb).unwrap();
            let c = model.eval_word(&wc).unwrap();
            let e = model.identity();
            prop_assert_eq!(
                model.mul(&model.mul(&a, &b).unwrap(), &c).unwrap(),
                model.mul(&a, &model.mul(&b, &c).unwrap()).unwrap()
            );
            prop_assert_eq!(model.mul(&a, &e).unwrap(), a.clone());
            prop_assert_eq!(model.mul(&e, &a).unwrap(), a.clone());
            prop_assert_eq!(model.mul(&a, &model.inv(&a).unwrap()).unwrap(), e);
        }
    }

    #[test]
    fn free_words_stay_reduced(w in word_strategy(2, 16)) {
        let f2 = Arc::new(parse_group_spec("free:2").unwrap());
        match f2.eval_word(&w).unwrap() {
            GroupElement::Free(letters) => {
                prop_assert!(letters.windows(2).all(|p| p[0] != -p[1]));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn length_axioms_on_z3(
        a in prop::array::uniform3(-30i64..30),
        b in prop::array::uniform3(-30i64..30),
    ) {
        let z3 = Arc::new(parse_group_spec("zd:3").unwrap());
        let lf = LengthFunction::new(z3.clone());
        let g = GroupElement::Zd(a.to_vec());
        let h = GroupElement::Zd(b.to_vec());
        let lg = lf.length(&g).unwrap();
        prop_assert_eq!(lg == 0, g == z3.identity());
        prop_assert_eq!(lg, lf.length(&z3.inv(&g).unwrap()).unwrap());
        let gh = z3.mul(&g, &h).unwrap();
        prop_assert!(lf.length(&gh).unwrap() <= lg + lf.length(&h).unwrap());
        // left-invariance of the induced metric
        let k = GroupElement::Zd([7, -2, 5].to_vec());
        prop_assert_eq!(
            lf.distance(&g, &h).unwrap(),
            lf.distance(&z3.mul(&k, &g).unwrap(), &z3.mul(&k, &h).unwrap()).unwrap()
        );
    }

    #[test]
    fn translation_composes_and_preserves_norms(
        wa in word_strategy(2, 6),
        wb in word_strategy(2, 6),
        entries in prop::collection::vec((word_strategy(2, 4), -5.0f64..5.0), 1..6),
        p in 1.0f64..20.0,
    ) {
        let f2 = Arc::new(parse_group_spec("free:2").unwrap());
        let g1 = f2.eval_word(&wa).unwrap();
        let g2 = f2.eval_word(&wb).unwrap();
        let f = SparseFunction::from_entries(
            f2.clone(),
            entries
                .into_iter()
                .map(|(w, v)| (f2.eval_word(&w).unwrap(), v)),
        )
        .unwrap();

        // π(γ₁)π(γ₂)f = π(γ₁γ₂)f
        let two = f.translate(&g2).unwrap().translate(&g1).unwrap();
        let one = f.translate(&f2.mul(&g1, &g2).unwrap()).unwrap();
        prop_assert_eq!(&two, &one);

        // isometry for every ℓ^p
        let before = f.lp_norm(p).unwrap();
        let after = two.lp_norm(p).unwrap();
        prop_assert!((before - after).abs() <= 1e-12 * before.max(1.0));
    }

    #[test]
    fn lp_norm_is_monotone_in_p(
        values in prop::collection::vec(-2.0f64..2.0, 1..8),
        p in 1.0f64..10.0,
        dq in 0.1f64..10.0,
    ) {
        let z1 = Arc::new(parse_group_spec("zd:1").unwrap());
        let f = SparseFunction::from_entries(
            z1,
            values
                .iter()
                .enumerate()
                .map(|(i, &v)| (GroupElement::Zd(vec![i as i64]), v)),
        )
        .unwrap();
        // on counting measure ‖f‖_q ≤ ‖f‖_p for p ≤ q
        let lo = f.lp_norm(p + dq).unwrap();
        let hi = f.lp_norm(p).unwrap();
        prop_assert!(lo <= hi * (1.0 + 1e-12) + 1e-300, "{lo} > {hi}");
    }

    #[test]
    fn mixed_norm_never_decreases_with_truncation(
        w in word_strategy(2, 8),
        n_max in 1u32..5,
    ) {
        let f2 = Arc::new(parse_group_spec("free:2").unwrap());
        let lf = LengthFunction::new(f2.clone());
        let params = ScaleParams::new(1);
        let gamma = f2.eval_word(&w).unwrap();
        let short = cocycle_core::cocycle_vector(&lf, &params, &gamma, n_max).unwrap();
        let long = cocycle_core::cocycle_vector(&lf, &params, &gamma, n_max + 1).unwrap();
        prop_assert!(long.mixed_norm_sq >= short.mixed_norm_sq);
        // the stored sum matches a recomputation from the blocks
        let resum: f64 = long.blocks.iter().map(|b| b.norm_2n * b.norm_2n).sum();
        prop_assert!((long.mixed_norm_sq - resum).abs() <= 1e-12 * resum.max(1.0));
    }
}
