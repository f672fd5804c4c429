use std::time::Instant;

use itertools::Itertools;
use spbw_core::catalog;
use spbw_core::{Algebra, CoeffElem, ExponentVector};

fn grid(n: usize) -> Vec<ExponentVector> {
    (0..n)
        .map(|_| 0..=2u32)
        .multi_cartesian_product()
        .map(ExponentVector::new)
        .collect()
}

/// Checks both identities over every `θ, γ, β` with entries `≤ 2` and every
/// coefficient generator; returns the number of equalities checked.
fn check(alg: &Algebra) -> usize {
    let pres = alg.presentation();
    let exps = grid(alg.nvars());
    let mut gens: Vec<CoeffElem> = (0..alg.ring().ngens()).map(CoeffElem::generator).collect();
    gens.push(CoeffElem::from_ratio(7, 5));
    let mut checks = 0;
    for theta in &exps {
        for gamma in &exps {
            let c_tg = alg.structure_constant(theta, gamma);
            for c in &gens {
                let lhs = &pres.sigma_alpha(theta, &pres.sigma_alpha(gamma, c)) * &c_tg;
                let rhs = &c_tg * &pres.sigma_alpha(&theta.add(gamma), c);
                assert_eq!(lhs, rhs, "θ={theta:?} γ={gamma:?} c={c:?}");
                checks += 1;
            }
            for beta in &exps {
                let lhs = &pres.sigma_alpha(theta, &alg.structure_constant(gamma, beta))
                    * &alg.structure_constant(theta, &gamma.add(beta));
                let rhs = &c_tg * &alg.structure_constant(&theta.add(gamma), beta);
                assert_eq!(lhs, rhs, "θ={theta:?} γ={gamma:?} β={beta:?}");
                checks += 1;
            }
        }
    }
    checks
}

#[test]
fn identities_hold_on_the_grid() {
    let start = Instant::now();
    let d = check(&catalog::diffusion());
    eprintln!("diffusion: {d} checks in {:?}", start.elapsed());
    let r = check(&catalog::r_algebra());
    eprintln!("r-algebra: {r} checks in {:?}", start.elapsed());
    assert!(d + r >= 700);
}

#[test]
fn constants_are_units_for_bijective_presentations() {
    for alg in [
        catalog::diffusion(),
        catalog::r_algebra(),
        catalog::quantum_plane(),
    ] {
        for a in grid(alg.nvars()) {
            for b in grid(alg.nvars()) {
                let c = alg.structure_constant(&a, &b);
                assert!(alg.ring().unit_inverse(&c).is_some(), "{a:?} {b:?}: {c:?}");
            }
        }
    }
}
