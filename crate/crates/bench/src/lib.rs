//! Shared fixtures for the benchmarks.

use spbw_core::{Algebra, CoeffElem, NCPolynomial};

/// `(D1 + x1 D2 + x2)^k` in the diffusion algebra (`catalog::diffusion`).
pub fn diffusion_power(alg: &Algebra, k: u32) -> NCPolynomial {
    let base = &(&alg.var(0) + &alg.var(1).left_scale(&CoeffElem::generator(0)))
        + &alg.constant(CoeffElem::generator(1));
    let mut out = alg.one();
    for _ in 0..k {
        out = &out * &base;
    }
    out
}

/// Cyclic-n style generators over the variables of `alg`.
pub fn cyclic_ideal(alg: &Algebra) -> Vec<NCPolynomial> {
    let n = alg.nvars();
    let mut gens = Vec::new();
    for d in 1..n {
        let mut g = alg.zero();
        for i in 0..n {
            let mut m = alg.one();
            for j in 0..d {
                m = &m * &alg.var((i + j) % n);
            }
            g = &g + &m;
        }
        gens.push(g);
    }
    let mut last = alg.one();
    for i in 0..n {
        last = &last * &alg.var(i);
    }
    gens.push(&last - &alg.one());
    gens
}
