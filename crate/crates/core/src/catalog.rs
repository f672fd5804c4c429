//! Standard presentations used throughout the tests, benches and examples.

use crate::coeffring::{CoeffElem, CoeffRing};
use crate::groebner::ScriptedSolver;
use crate::order::{MonomialOrder, OrderKind};
use crate::poly::{Algebra, NCPolynomial};
use crate::presentation::{Presentation, PresentationBuilder, Relation, SkewDerivation, TwistMap};

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn scaled_generator(p: i64, q: i64) -> CoeffElem {
    &CoeffElem::from_ratio(p, q) * &CoeffElem::generator(0)
}

/// `σ(x) = (p/q) x` on a one-generator ring.
fn rescaling(p: i64, q: i64) -> TwistMap {
    TwistMap {
        images: vec![scaled_generator(p, q)],
        inverse: Some(vec![scaled_generator(q, p)]),
    }
}

/// Diffusion algebra over `ℚ[x1, x2]`: `D2 D1 = 2 D1 D2 + x2 D1 - x1 D2`.
pub fn diffusion_presentation() -> Presentation {
    let ring = CoeffRing::polynomial(names(&["x1", "x2"]));
    PresentationBuilder::new(ring, names(&["D1", "D2"]))
        .relation(
            0,
            1,
            Relation {
                constant: CoeffElem::from_int(2),
                tail: vec![
                    (CoeffElem::generator(1), Some(0)),
                    (-CoeffElem::generator(0), Some(1)),
                ],
            },
        )
        .expect("i < j")
        .build()
}

pub fn diffusion() -> Algebra {
    Algebra::with_deglex(diffusion_presentation()).expect("valid")
}

/// The algebra on `y, z, w` over `ℚ[x]` with `q = 2/3`, `μ = 1/2`:
///
/// ```text
/// yx = 3/2 xy   zx = 2 xz   wx = 2/3 xw
/// zy = 2/3 yz   wz = 2/3 zw   wy = yw - 5/6 xz
/// ```
///
/// These rules are not confluent on `w y x` unless `μ = 1`; see
/// [`Algebra::overlap_defects`].
pub fn r_algebra_presentation() -> Presentation {
    r_algebra_presentation_with((2, 3), (1, 2))
}

/// The same family for arbitrary nonzero `q = q.0/q.1` and `μ = μ.0/μ.1`:
/// `yx = q⁻¹xy`, `zx = μ⁻¹xz`, `wx = qxw`, `zy = qyz`, `wz = qzw`,
/// `wy = yw + (q - q⁻¹)xz`.
pub fn r_algebra_presentation_with(q: (i64, i64), mu: (i64, i64)) -> Presentation {
    let ring = CoeffRing::polynomial(names(&["x"]));
    let qc = CoeffElem::from_ratio(q.0, q.1);
    let tail = &(&qc - &CoeffElem::from_ratio(q.1, q.0)) * &CoeffElem::generator(0);
    PresentationBuilder::new(ring, names(&["y", "z", "w"]))
        .sigma(0, rescaling(q.1, q.0))
        .sigma(1, rescaling(mu.1, mu.0))
        .sigma(2, rescaling(q.0, q.1))
        .relation(
            0,
            1,
            Relation {
                constant: qc.clone(),
                tail: vec![],
            },
        )
        .and_then(|b| {
            b.relation(
                1,
                2,
                Relation {
                    constant: qc.clone(),
                    tail: vec![],
                },
            )
        })
        .and_then(|b| {
            b.relation(
                0,
                2,
                Relation {
                    constant: CoeffElem::one(),
                    tail: vec![(tail, Some(1))],
                },
            )
        })
        .expect("i < j")
        .build()
}

pub fn r_algebra() -> Algebra {
    Algebra::with_deglex(r_algebra_presentation()).expect("valid")
}

/// Quantum plane over `ℚ`: `yx = 2/3 xy`.
pub fn quantum_plane_presentation() -> Presentation {
    PresentationBuilder::new(CoeffRing::rationals(), names(&["x", "y"]))
        .relation(
            0,
            1,
            Relation {
                constant: CoeffElem::from_ratio(2, 3),
                tail: vec![],
            },
        )
        .expect("i < j")
        .build()
}

pub fn quantum_plane() -> Algebra {
    Algebra::with_deglex(quantum_plane_presentation()).expect("valid")
}

/// Additive analogue of the Weyl algebra over `ℚ[x]`: `yx = 2/3 xy + 1`.
pub fn additive_weyl_presentation() -> Presentation {
    let ring = CoeffRing::polynomial(names(&["x"]));
    PresentationBuilder::new(ring, names(&["y"]))
        .sigma(0, rescaling(2, 3))
        .delta(
            0,
            SkewDerivation {
                images: vec![CoeffElem::one()],
            },
        )
        .build()
}

pub fn additive_weyl() -> Algebra {
    Algebra::with_deglex(additive_weyl_presentation()).expect("valid")
}

/// First Weyl algebra with field coefficients: `xt = tx + 1`.
pub fn weyl_presentation() -> Presentation {
    PresentationBuilder::new(CoeffRing::rationals(), names(&["t", "x"]))
        .relation(
            0,
            1,
            Relation {
                constant: CoeffElem::one(),
                tail: vec![(CoeffElem::one(), None)],
            },
        )
        .expect("i < j")
        .build()
}

pub fn weyl() -> Algebra {
    Algebra::with_deglex(weyl_presentation()).expect("valid")
}

/// Commutative polynomial ring `ℚ[vars]`.
pub fn commutative_presentation(vars: &[&str]) -> Presentation {
    PresentationBuilder::new(CoeffRing::rationals(), names(vars)).build()
}

pub fn commutative(vars: &[&str]) -> Algebra {
    Algebra::with_deglex(commutative_presentation(vars)).expect("valid")
}

pub fn commutative_with(vars: &[&str], kind: OrderKind) -> Algebra {
    Algebra::new(
        commutative_presentation(vars),
        MonomialOrder::new(kind, vars.len()),
    )
    .expect("valid")
}

/// The dividend and divisors of the standard diffusion division example:
/// `f = x1 x2² D1² D2 + x1² x2 D2` by `(x1 x2 D1 D2, x2 D1, x1 D2)`.
pub fn diffusion_division_data() -> (NCPolynomial, Vec<NCPolynomial>) {
    let alg = diffusion();
    let (x1, x2) = (CoeffElem::generator(0), CoeffElem::generator(1));
    let (d1, d2) = (alg.var(0), alg.var(1));
    let f =
        &(&(&d1 * &d1) * &d2).left_scale(&(&x1 * &x2.pow(2))) + &d2.left_scale(&(&x1.pow(2) * &x2));
    let divisors = vec![
        (&d1 * &d2).left_scale(&(&x1 * &x2)),
        d1.left_scale(&x2),
        d2.left_scale(&x1),
    ];
    (f, divisors)
}

/// Coefficient choices that reproduce the hand computation of the diffusion
/// division example. Both non-unique steps solve
/// `target = r1·x1x2 + r2·2x2 + r3·x1`:
///
/// ```text
/// x1 x2²       = 3x2·x1x2 - ½x1x2·2x2 - x2²·x1
/// -½ x1² x2²   = 3x1x2·x1x2 - x1²x2·2x2 - 3/2 x1x2²·x1
/// ```
///
/// All other steps have a single usable divisor and fall through to the
/// ring's membership test.
pub fn diffusion_division_solver() -> ScriptedSolver {
    let (x1, x2) = (CoeffElem::generator(0), CoeffElem::generator(1));
    let q = CoeffElem::from_ratio;
    let scalars = vec![&x1 * &x2, &q(2, 1) * &x2, x1.clone()];
    ScriptedSolver::new()
        .with(
            &x1 * &x2.pow(2),
            scalars.clone(),
            vec![&q(3, 1) * &x2, &q(-1, 2) * &(&x1 * &x2), -x2.pow(2)],
        )
        .and_then(|s| {
            s.with(
                &q(-1, 2) * &(&x1.pow(2) * &x2.pow(2)),
                scalars,
                vec![
                    &q(3, 1) * &(&x1 * &x2),
                    -(&x1.pow(2) * &x2),
                    &q(-3, 2) * &(&x1 * &x2.pow(2)),
                ],
            )
        })
        .expect("both choices solve their equations")
}
