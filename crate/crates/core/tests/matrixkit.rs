mod common;

use common::{random_poly, rng, small_rational};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use spbw_core::catalog;
use spbw_core::{
    complete_unimodular_unit_entry, extract_free_basis, idempotent_diagonalize_division,
    is_idempotent_transpose, is_unimodular_column, left_independent, left_inverse, Algebra, Error,
    MatrixOverA, NCPolynomial,
};

/// A random product of elementary row operations together with its inverse.
fn elementary_pair(
    r: &mut impl Rng,
    alg: &Algebra,
    n: usize,
    ops: usize,
) -> (MatrixOverA, MatrixOverA) {
    let mut u = MatrixOverA::identity(alg, n);
    let mut u_inv = MatrixOverA::identity(alg, n);
    if n < 2 {
        return (u, u_inv);
    }
    for _ in 0..ops {
        let i = r.gen_range(0..n);
        let mut j = r.gen_range(0..n);
        while j == i {
            j = r.gen_range(0..n);
        }
        let a = random_poly(r, alg, 2, 1, 0);
        let mut e = MatrixOverA::identity(alg, n);
        e.set(i, j, a.clone());
        let mut e_inv = MatrixOverA::identity(alg, n);
        e_inv.set(i, j, -a);
        u = e.mul(&u).unwrap();
        u_inv = u_inv.mul(&e_inv).unwrap();
    }
    (u, u_inv)
}

fn first_columns(m: &MatrixOverA, s: usize) -> MatrixOverA {
    let rows: Vec<Vec<NCPolynomial>> = m
        .to_rows()
        .into_iter()
        .map(|row| row[..s].to_vec())
        .collect();
    MatrixOverA::from_rows(m.algebra(), rows).unwrap()
}

#[test]
fn planted_left_inverses() {
    let algebras = [
        catalog::weyl(),
        catalog::commutative(&["x", "y"]),
        catalog::quantum_plane(),
    ];
    let mut r = rng(0x11);
    let mut found = 0;
    for case in 0..500 {
        let alg = &algebras[case % algebras.len()];
        let n = r.gen_range(1..=3);
        let s = r.gen_range(1..=n);
        let (e, _) = elementary_pair(&mut r, alg, n, 2);
        let f = first_columns(&e, s);
        let x = left_inverse(&f)
            .unwrap()
            .unwrap_or_else(|| panic!("case {case}: planted inverse of {f:?} not found"));
        assert!(x.mul(&f).unwrap().is_identity(), "case {case}");
        found += 1;
    }
    assert_eq!(found, 500);
}

#[test]
fn random_columns_unimodularity_agrees_with_left_inverse() {
    let alg = catalog::weyl();
    let mut r = rng(0x12);
    let mut unimodular = 0;
    for case in 0..150 {
        let n = r.gen_range(1..=3);
        let entries: Vec<NCPolynomial> =
            (0..n).map(|_| random_poly(&mut r, &alg, 2, 2, 0)).collect();
        if entries.iter().all(NCPolynomial::is_zero) {
            continue;
        }
        let v = MatrixOverA::column(&alg, entries.clone()).unwrap();
        let u = is_unimodular_column(&v).unwrap();
        let l = left_inverse(&v).unwrap();
        assert_eq!(u.unimodular, l.is_some(), "case {case}: {v:?}");
        if let Some(cert) = u.certificate {
            unimodular += 1;
            let row = MatrixOverA::from_rows(&alg, vec![cert]).unwrap();
            assert!(row.mul(&v).unwrap().is_identity());
        }
    }
    assert!(unimodular > 0);
}

#[test]
fn weyl_column_certificate() {
    let alg = catalog::weyl();
    let (t, x) = (alg.var(0), alg.var(1));
    let v = MatrixOverA::column(&alg, vec![t.clone(), x.clone()]).unwrap();
    let u = is_unimodular_column(&v).unwrap();
    assert!(u.unimodular);
    let cert = u.certificate.unwrap();
    assert_eq!(cert, vec![x.clone(), -&t]);
    assert_eq!(&(&cert[0] * &t) + &(&cert[1] * &x), alg.one());
    assert!(matches!(
        complete_unimodular_unit_entry(&v),
        Err(Error::StabilityNotDecided(_))
    ));
}

#[test]
fn non_unimodular_examples() {
    let alg = catalog::commutative(&["x", "y"]);
    let v = MatrixOverA::column(&alg, vec![alg.var(0), alg.var(1)]).unwrap();
    assert!(!is_unimodular_column(&v).unwrap().unimodular);
    let alg = catalog::commutative(&["x"]);
    let v = MatrixOverA::column(&alg, vec![alg.var(0)]).unwrap();
    assert!(left_inverse(&v).unwrap().is_none());
    assert!(matches!(
        left_inverse(&MatrixOverA::from_rows(&alg, vec![vec![alg.one(), alg.one()]]).unwrap()),
        Err(Error::Shape(_))
    ));
}

#[test]
fn unit_entry_completion() {
    let alg = catalog::diffusion();
    let mut r = rng(0x13);
    for _ in 0..30 {
        let n = r.gen_range(1..=3);
        let mut entries: Vec<NCPolynomial> =
            (0..n).map(|_| random_poly(&mut r, &alg, 2, 2, 1)).collect();
        let k = r.gen_range(0..n);
        entries[k] = alg.constant(spbw_core::CoeffElem::from_rational(small_rational(&mut r)));
        let v = MatrixOverA::column(&alg, entries).unwrap();
        let u = complete_unimodular_unit_entry(&v).unwrap();
        let mut e1 = MatrixOverA::zeros(&alg, n, 1);
        e1.set(0, 0, alg.one());
        assert_eq!(u.mul(&v).unwrap(), e1);
        assert!(left_inverse(&u).unwrap().is_some());
    }
    let f = alg.var(0);
    let v = MatrixOverA::column(&alg, vec![alg.one(), f.clone()]).unwrap();
    let u = complete_unimodular_unit_entry(&v).unwrap();
    assert_eq!(
        u.to_rows(),
        vec![vec![alg.one(), alg.zero()], vec![-&f, alg.one()]]
    );
}

type Q = Vec<Vec<BigRational>>;

fn q_mul(a: &Q, b: &Q) -> Q {
    let (n, m, p) = (a.len(), b.len(), b[0].len());
    (0..n)
        .map(|i| {
            (0..p)
                .map(|j| (0..m).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Rank by Gaussian elimination.
fn rank(m: &Q) -> usize {
    let mut m = m.clone();
    let (rows, cols) = (m.len(), m[0].len());
    let mut rk = 0;
    for c in 0..cols {
        let Some(p) = (rk..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rk, p);
        for i in 0..rows {
            if i != rk && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rk][c];
                for j in 0..cols {
                    let v = &f * &m[rk][j];
                    m[i][j] -= v;
                }
            }
        }
        rk += 1;
    }
    rk
}

#[test]
fn random_idempotents_diagonalize() {
    let alg = catalog::commutative(&["x"]);
    let mut r = rng(0x14);
    for case in 0..200 {
        let s = r.gen_range(1..=4);
        // P = product of rational elementary matrices
        let mut p: Q = (0..s)
            .map(|i| {
                (0..s)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut p_inv = p.clone();
        for _ in 0..4 {
            if s < 2 {
                break;
            }
            let i = r.gen_range(0..s);
            let j = (i + r.gen_range(1..s)) % s;
            let a = small_rational(&mut r);
            let mut e = (0..s)
                .map(|k| {
                    (0..s)
                        .map(|l| {
                            if k == l {
                                BigRational::one()
                            } else {
                                BigRational::zero()
                            }
                        })
                        .collect()
                })
                .collect::<Q>();
            let mut e_inv = e.clone();
            e[i][j] = a.clone();
            e_inv[i][j] = -a;
            p = q_mul(&e, &p);
            p_inv = q_mul(&p_inv, &e_inv);
        }
        let d: Q = (0..s)
            .map(|i| {
                (0..s)
                    .map(|j| {
                        if i == j && r.gen_bool(0.5) {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let f = q_mul(&q_mul(&p, &d), &p_inv);
        let fm = MatrixOverA::from_rationals(&alg, &f).unwrap();
        let diag = idempotent_diagonalize_division(&fm).unwrap();
        assert_eq!(diag.rank, rank(&f), "case {case}");
        let conj = diag
            .u
            .mul(&fm)
            .unwrap()
            .mul(&diag.u_inv)
            .unwrap()
            .as_rationals()
            .unwrap();
        for i in 0..s {
            for j in 0..s {
                let expected = i == j && i >= s - diag.rank;
                assert_eq!(
                    conj[i][j],
                    if expected {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                );
            }
        }
        assert!(diag.u.mul(&diag.u_inv).unwrap().is_identity());
    }
}

#[test]
fn diagonalization_examples() {
    let alg = catalog::commutative(&["x"]);
    let q = |rows: &[&[i64]]| -> MatrixOverA {
        let m: Q = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| BigRational::from_integer(v.into()))
                    .collect()
            })
            .collect();
        MatrixOverA::from_rationals(&alg, &m).unwrap()
    };
    let f = q(&[&[1, 1], &[0, 0]]);
    let d = idempotent_diagonalize_division(&f).unwrap();
    assert_eq!(d.rank, 1);
    assert_eq!(
        d.u.mul(&f).unwrap().mul(&d.u_inv).unwrap(),
        q(&[&[0, 0], &[0, 1]])
    );

    let d = idempotent_diagonalize_division(&MatrixOverA::identity(&alg, 3)).unwrap();
    assert_eq!((d.rank, d.u.is_identity()), (3, true));
    let d = idempotent_diagonalize_division(&MatrixOverA::zeros(&alg, 2, 2)).unwrap();
    assert_eq!((d.rank, d.u.is_identity()), (0, true));
    assert!(matches!(
        idempotent_diagonalize_division(&q(&[&[0, 1], &[0, 0]])),
        Err(Error::NotIdempotent(_))
    ));
    assert!(is_idempotent_transpose(&q(&[&[1, 0], &[1, 0]])).unwrap());
}

#[test]
fn planted_free_bases() {
    let algebras = [
        catalog::commutative(&["x"]),
        catalog::commutative(&["x", "y"]),
    ];
    let mut r = rng(0x15);
    for case in 0..60 {
        let alg = &algebras[case % 2];
        let n = r.gen_range(2..=3);
        let s = r.gen_range(1..n);
        let (u, u_inv) = elementary_pair(&mut r, alg, n, 2);
        let g1 = first_columns(&u_inv, s).transpose();
        let basis = extract_free_basis(&g1, &u).unwrap();
        assert_eq!(basis.len(), n - s);
        for c in &basis {
            let row = MatrixOverA::from_rows(alg, vec![c.clone()]).unwrap();
            let image = row.mul(&g1.transpose()).unwrap();
            assert!(
                image.to_rows()[0].iter().all(NCPolynomial::is_zero),
                "case {case}"
            );
        }
        assert!(left_independent(alg, &basis).unwrap(), "case {case}");
    }
}

#[test]
fn free_basis_examples() {
    let alg = catalog::commutative(&["x"]);
    let (o, z) = (alg.one(), alg.zero());
    let g1 = MatrixOverA::from_rows(&alg, vec![vec![z.clone(), o.clone()]]).unwrap();
    let u = MatrixOverA::from_rows(
        &alg,
        vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]],
    )
    .unwrap();
    assert_eq!(
        extract_free_basis(&g1, &u).unwrap(),
        vec![vec![o.clone(), z.clone()]]
    );

    let ident = MatrixOverA::identity(&alg, 2);
    assert!(extract_free_basis(&ident, &ident).unwrap().is_empty());

    let d = catalog::diffusion();
    let g1 = MatrixOverA::from_rows(&d, vec![vec![d.one(), d.zero(), d.zero()]]).unwrap();
    let basis = extract_free_basis(&g1, &MatrixOverA::identity(&d, 3)).unwrap();
    assert_eq!(
        basis,
        vec![
            vec![d.zero(), d.one(), d.zero()],
            vec![d.zero(), d.zero(), d.one()]
        ]
    );

    let bad = MatrixOverA::from_rows(
        &alg,
        vec![vec![o.clone(), o.clone()], vec![z.clone(), o.clone()]],
    )
    .unwrap();
    assert!(matches!(
        extract_free_basis(&g1_of(&alg), &bad),
        Err(Error::Verification(_))
    ));
}

fn g1_of(alg: &Algebra) -> MatrixOverA {
    MatrixOverA::from_rows(alg, vec![vec![alg.zero(), alg.one()]]).unwrap()
}

#[test]
fn dependent_vectors_are_detected() {
    let alg = catalog::weyl();
    let (t, x) = (alg.var(0), alg.var(1));
    let v1 = vec![t.clone(), x.clone()];
    let v2 = vec![&x * &t, &x * &x];
    assert!(!left_independent(&alg, &[v1.clone(), v2]).unwrap());
    assert!(left_independent(&alg, &[v1, vec![alg.zero(), alg.one()]]).unwrap());
}
