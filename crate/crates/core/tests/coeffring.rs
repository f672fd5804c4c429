mod common;

use common::oracle::{self, P};
use common::{rng, small_coeff};
use rand::Rng;
use spbw_core::catalog;
use spbw_core::{
    CoeffElem, CoeffRing, ModuleScheme, ModuleSpace, ModuleVector, NCPolynomial, Term,
};

fn qxy() -> CoeffRing {
    CoeffRing::polynomial(vec!["x".into(), "y".into()])
}

fn combine(coeffs: &[CoeffElem], gens: &[CoeffElem]) -> CoeffElem {
    coeffs
        .iter()
        .zip(gens)
        .fold(CoeffElem::zero(), |acc, (a, b)| &acc + &(a * b))
}

#[test]
fn random_certificates_and_syzygies() {
    let ring = qxy();
    let mut r = rng(11);
    let mut members = 0;
    for case in 0..200 {
        let s = r.gen_range(1..=4);
        let gens: Vec<CoeffElem> = (0..s).map(|_| small_coeff(&mut r, 2, 3, 3)).collect();
        let a = if case % 2 == 0 {
            let mult: Vec<CoeffElem> = (0..s).map(|_| small_coeff(&mut r, 2, 2, 2)).collect();
            combine(&mult, &gens)
        } else {
            small_coeff(&mut r, 2, 3, 3)
        };

        let cert = ring.divide_member(&a, &gens).unwrap();
        let basis = oracle::groebner(&gens.iter().map(|g| P::from_coeff(g, 2)).collect::<Vec<_>>());
        let in_ideal = oracle::normal_form(&P::from_coeff(&a, 2), &basis).is_zero();
        assert_eq!(
            cert.is_some(),
            in_ideal,
            "case {case}: membership of {a:?} in {gens:?}"
        );
        if let Some(c) = cert {
            members += 1;
            assert_eq!(c.len(), gens.len());
            assert_eq!(combine(&c, &gens), a, "case {case}");
        }

        let syz = ring.syzygy_generators(&gens).unwrap();
        for t in syz.iter() {
            assert_eq!(t.len(), gens.len());
            assert!(combine(t, &gens).is_zero(), "case {case}: {t:?}");
        }
    }
    assert!(members >= 100);
}

#[test]
fn field_certificates_and_syzygies() {
    let ring = CoeffRing::rationals();
    let mut r = rng(12);
    for _ in 0..200 {
        let s = r.gen_range(1..=4);
        let gens: Vec<CoeffElem> = (0..s)
            .map(|_| {
                if r.gen_bool(0.3) {
                    CoeffElem::zero()
                } else {
                    small_coeff(&mut r, 0, 1, 0)
                }
            })
            .collect();
        let a = small_coeff(&mut r, 0, 1, 0);
        let cert = ring.divide_member(&a, &gens).unwrap();
        assert_eq!(cert.is_some(), gens.iter().any(|g| !g.is_zero()));
        if let Some(c) = cert {
            assert_eq!(combine(&c, &gens), a);
        }
        let syz = ring.syzygy_generators(&gens).unwrap();
        let nonzero = gens.iter().filter(|g| !g.is_zero()).count();
        assert_eq!(syz.len(), s - nonzero.min(1));
        for t in syz.iter() {
            assert!(combine(t, &gens).is_zero());
        }
    }
}

/// For monomial generators the syzygy module is spanned by the pairwise
/// lcm syzygies; compare both spans with module membership over `ℚ[x,y]`.
#[test]
fn monomial_syzygies_span_the_lcm_syzygies() {
    let ring = qxy();
    let alg = catalog::commutative(&["x", "y"]);
    let mut r = rng(13);
    let as_poly = |c: &CoeffElem| {
        NCPolynomial::from_terms(
            &alg,
            c.terms().map(|(e, q)| {
                let mut v = e.to_vec();
                v.resize(2, 0);
                Term::new(CoeffElem::from_rational(q.clone()), v.into())
            }),
        )
    };
    for case in 0..40 {
        let s = r.gen_range(2..=4);
        let exps: Vec<Vec<u32>> = (0..s)
            .map(|_| common::random_exponents(&mut r, 2, 3))
            .collect();
        let gens: Vec<CoeffElem> = exps
            .iter()
            .map(|e| CoeffElem::monomial(common::small_rational(&mut r), e.clone()))
            .collect();
        let computed = ring.syzygy_generators(&gens).unwrap();

        let mut pairwise: Vec<Vec<CoeffElem>> = Vec::new();
        for i in 0..s {
            for j in i + 1..s {
                let l: Vec<u32> = (0..2).map(|k| exps[i][k].max(exps[j][k])).collect();
                let mi: Vec<u32> = (0..2).map(|k| l[k] - exps[i][k]).collect();
                let mj: Vec<u32> = (0..2).map(|k| l[k] - exps[j][k]).collect();
                let ci = gens[i].leading_coefficient().unwrap().clone();
                let cj = gens[j].leading_coefficient().unwrap().clone();
                let mut t = vec![CoeffElem::zero(); s];
                t[i] = CoeffElem::monomial(cj, mi);
                t[j] = -CoeffElem::monomial(ci, mj);
                pairwise.push(t);
            }
        }

        let space = ModuleSpace::new(&alg, s, ModuleScheme::Top).unwrap();
        let to_vec = |t: &Vec<CoeffElem>| {
            ModuleVector::from_components(&space, &t.iter().map(as_poly).collect::<Vec<_>>())
                .unwrap()
        };
        let span_contains = |gens: &[Vec<CoeffElem>], targets: &[Vec<CoeffElem>]| {
            let vs: Vec<ModuleVector> = gens.iter().map(to_vec).filter(|v| !v.is_zero()).collect();
            if vs.is_empty() {
                return targets.iter().all(|t| t.iter().all(|c| c.is_zero()));
            }
            let gb = spbw_core::mod_buchberger(&vs, &spbw_core::BuchbergerOptions::pairs_only())
                .unwrap()
                .basis;
            targets.iter().all(|t| {
                spbw_core::mod_divide(&to_vec(t), &gb)
                    .unwrap()
                    .remainder
                    .is_zero()
            })
        };
        let computed: Vec<Vec<CoeffElem>> = computed.iter().cloned().collect();
        for t in &computed {
            assert!(combine(t, &gens).is_zero());
        }
        assert!(span_contains(&computed, &pairwise), "case {case}: {exps:?}");
        assert!(span_contains(&pairwise, &computed), "case {case}: {exps:?}");
    }
}
