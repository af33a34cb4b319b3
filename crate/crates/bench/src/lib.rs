//! Shared setup for the benchmark targets.

use std::sync::Arc;

use cocycle_core::{parse_group_spec, GroupElement, LengthFunction};

pub fn length_function(spec: &str) -> LengthFunction {
    LengthFunction::new(Arc::new(parse_group_spec(spec).unwrap()))
}

/// The j-th power of the first declared generator.
pub fn generator_power(lf: &LengthFunction, j: u32) -> GroupElement {
    let m = lf.model();
    let g = m.declared_generators()[0].clone();
    let mut cur = m.identity();
    for _ in 0..j {
        cur = m.mul(&cur, &g).unwrap();
    }
    cur
}
