//! Independent oracles for the derived expected values.
//!
//! Everything here recomputes a quantity through a second route that
//! shares no code with the implementation it checks: reduced words by
//! depth-first enumeration instead of metric BFS, balls by brute-force
//! product enumeration, block values by direct formula evaluation
//! instead of sparse translate/subtract arithmetic.

use std::collections::BTreeSet;
use std::sync::Arc;

use cocycle_core::{
    cocycle_block, parse_group_spec, tent, GroupElement, LengthFunction, ModelRef, ScaleParams,
};

/// Counts reduced words of length ≤ radius in the free group of the
/// given rank via the sphere recursion: a word of length ℓ ≥ 1 extends
/// to 2r−1 words of length ℓ+1 (anything but the cancelling letter).
/// The explicit enumeration below confirms it element by element.
fn free_ball_cardinality_oracle(rank: i16, radius: u32) -> u64 {
    let mut total = 1u64;
    let mut sphere = 2 * rank as u64;
    for _ in 1..=radius {
        total += sphere;
        sphere *= 2 * rank as u64 - 1;
    }
    total
}

/// Enumerates every reduced word of length ≤ radius explicitly.
fn free_ball_elements_oracle(rank: i16, radius: u32) -> BTreeSet<Vec<i16>> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<Vec<i16>> = vec![Vec::new()];
    while let Some(word) = stack.pop() {
        if word.len() as u32 >= radius {
            out.insert(word);
            continue;
        }
        for letter in (-rank..=rank).filter(|&l| l != 0) {
            if word.last() == Some(&-letter) {
                continue;
            }
            let mut next = word.clone();
            next.push(letter);
            stack.push(next);
        }
        out.insert(word);
    }
    out
}

/// `#{x ∈ ℤ^d : Σ|x_i| ≤ R}` by brute force over the box `[-R, R]^d`.
fn zd_ball_cardinality_oracle(dim: usize, radius: i64) -> u64 {
    fn rec(coords: &mut Vec<i64>, dim: usize, radius: i64, count: &mut u64) {
        if coords.len() == dim {
            if coords.iter().map(|c| c.abs()).sum::<i64>() <= radius {
                *count += 1;
            }
            return;
        }
        for c in -radius..=radius {
            coords.push(c);
            rec(coords, dim, radius, count);
            coords.pop();
        }
    }
    let mut count = 0;
    rec(&mut Vec::new(), dim, radius, &mut count);
    count
}

/// All products of at most `radius` generators, by exhaustive word
/// enumeration over the symmetric generator set.
fn ball_by_products_oracle(model: &ModelRef, radius: u32) -> BTreeSet<GroupElement> {
    let mut out = BTreeSet::from([model.identity()]);
    let mut frontier = vec![model.identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for g in &frontier {
            for s in model.generators() {
                next.push(model.mul(g, s).unwrap());
            }
        }
        for g in &next {
            out.insert(g.clone());
        }
        frontier = next; // keep duplicates: oracle stays a plain word walk
    }
    out
}

fn lf(spec: &str) -> LengthFunction {
    LengthFunction::new(Arc::new(parse_group_spec(spec).unwrap()))
}

#[test]
fn free_ball_cardinalities_match_dfs_oracle() {
    let f2 = lf("free:2");
    let e = f2.model().identity();
    for r in 0..=6u32 {
        let ball = f2.ball(&e, r).unwrap();
        assert_eq!(ball.cardinality(), free_ball_cardinality_oracle(2, r));
        let words: BTreeSet<Vec<i16>> = ball
            .elements
            .iter()
            .map(|g| match g {
                GroupElement::Free(w) => w.clone(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(words, free_ball_elements_oracle(2, r));
    }
    // rank 2, radius 2: 1 + 4 + 12 = 17
    assert_eq!(f2.ball(&e, 2).unwrap().cardinality(), 17);

    let f3 = lf("free:3");
    for r in 0..=4u32 {
        assert_eq!(
            f3.ball(&f3.model().identity(), r).unwrap().cardinality(),
            free_ball_cardinality_oracle(3, r)
        );
    }
}

#[test]
fn zd_ball_cardinalities_match_brute_force() {
    for dim in 1..=3usize {
        let l = lf(&format!("zd:{dim}"));
        let e = l.model().identity();
        for r in 0..=4i64 {
            assert_eq!(
                l.ball(&e, r as u32).unwrap().cardinality(),
                zd_ball_cardinality_oracle(dim, r),
                "dim {dim} radius {r}"
            );
        }
    }
}

#[test]
fn bfs_balls_match_product_enumeration() {
    for spec in ["heis3", "free:2", "zd:2"] {
        let l = lf(spec);
        let model = l.model().clone();
        for r in 0..=4u32 {
            let bfs = l.ball(&model.identity(), r).unwrap();
            let oracle = ball_by_products_oracle(&model, r);
            assert_eq!(bfs.elements, oracle, "{spec} radius {r}");
        }
    }
}

#[test]
fn finite_table_balls_match_product_enumeration() {
    let table =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/s3.table"))
            .unwrap();
    let model = Arc::new(cocycle_core::GroupModel::finite_from_str("s3", &table).unwrap());
    let l = LengthFunction::new(model.clone());
    for r in 0..=3u32 {
        let bfs = l.ball(&model.identity(), r).unwrap();
        assert_eq!(bfs.elements, ball_by_products_oracle(&model, r));
    }
    // diameter two: identity, three involutions and r, r2 at distance ≤ 2
    assert_eq!(l.ball(&model.identity(), 1).unwrap().cardinality(), 4);
    assert_eq!(l.ball(&model.identity(), 2).unwrap().cardinality(), 6);
}

/// Direct formula evaluation of `b_n(γ)(x) = φⁿ(γ⁻¹x) − φⁿ(x)` without
/// any sparse-function arithmetic.
fn block_value_oracle(
    l: &LengthFunction,
    params: &ScaleParams,
    n: u32,
    gamma: &GroupElement,
    x: &GroupElement,
) -> f64 {
    let tent_at = |g: &GroupElement| -> f64 {
        let d = l.length(g).unwrap();
        if d < n as u64 {
            let s = params.scale(n as u64).unwrap();
            1.0 / s - d as f64 / (n as f64 * s)
        } else {
            0.0
        }
    };
    let model = l.model();
    let shifted = model.mul(&model.inv(gamma).unwrap(), x).unwrap();
    tent_at(&shifted) - tent_at(x)
}

#[test]
fn block_entries_match_direct_formula() {
    for (spec, words) in [
        ("zd:1", vec!["(5)", "(2)", "(-3)", "1"]),
        ("free:2", vec!["a b", "a a a a a", "b^-1 a b", "1"]),
    ] {
        let l = lf(spec);
        let model = l.model().clone();
        let params = ScaleParams::new(1);
        for word in words {
            let gamma = model.eval_word(&model.parse_word(word).unwrap()).unwrap();
            for n in 1..=4u32 {
                let block = cocycle_block(&l, &params, n, &gamma).unwrap();
                // every stored entry matches the formula…
                for (x, v) in block.values.iter() {
                    let want = block_value_oracle(&l, &params, n, &gamma, x);
                    assert!(
                        (v - want).abs() <= 1e-12,
                        "{spec} n={n} gamma={word} x={}: {v} vs {want}",
                        model.display(x)
                    );
                }
                // …and the formula vanishes wherever nothing is stored
                for probe in l.ball(&model.identity(), n + 2).unwrap().elements.iter() {
                    if block.values.value(probe) == 0.0 {
                        let want = block_value_oracle(&l, &params, n, &gamma, probe);
                        assert!(
                            want.abs() <= 1e-12,
                            "{spec} n={n} gamma={word}: missing entry at {}",
                            model.display(probe)
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn large_block_index_survives_underflow() {
    // at n = 150 the tent values raised to the 300th power vanish in
    // naive double arithmetic; the renormalized norm must still satisfy
    // both proved bounds
    let l = lf("zd:1");
    let params = ScaleParams::new(1);
    let n = 150u32;
    let gamma = GroupElement::Zd(vec![301]); // d = 301 > 2n
    let block = cocycle_block(&l, &params, n, &gamma).unwrap();
    assert_eq!(block.values.support_size(), 2 * 299);

    // direct powers underflow to zero — the hazard is real
    let naive: f64 = block.values.iter().map(|(_, v)| v.abs().powf(300.0)).sum();
    assert_eq!(naive, 0.0);

    let scale = params.scale(n as u64).unwrap();
    let lower = 2f64.powf(1.0 / 300.0) / scale;
    assert!(
        block.norm_2n >= lower - 1e-12,
        "norm {} below lower bound {lower}",
        block.norm_2n
    );
    // growth of ℤ certified far enough for the c′ chain
    let growth = l.growth_constant(n).unwrap();
    let c_prime = 2f64.sqrt() * (growth.a / 2.0).exp();
    let upper = c_prime * 301.0 * params.slope(n as u64).unwrap();
    assert!(
        block.norm_2n <= upper + 1e-12,
        "norm {} above upper bound {upper}",
        block.norm_2n
    );
}

#[test]
fn tent_values_match_direct_formula() {
    let l = lf("free:2");
    let params = ScaleParams::new(2);
    for n in 1..=5u32 {
        let t = tent(&l, &params, n).unwrap();
        let s = params.scale(n as u64).unwrap();
        for (x, v) in t.iter() {
            let d = l.length(x).unwrap();
            assert!(d < n as u64);
            let want = 1.0 / s - d as f64 / (n as f64 * s);
            assert!(
                (v - want).abs() <= 1e-15,
                "tent value {v} vs formula {want}"
            );
        }
        // support is exactly B(e, n−1)
        assert_eq!(
            t.support_size() as u64,
            l.ball(&l.model().identity(), n - 1).unwrap().cardinality()
        );
    }
}
