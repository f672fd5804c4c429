//! Textbook commutative Buchberger over ℚ with deglex, written independently of
//! the engine so it can serve as a reference.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use spbw_core::{CoeffElem, NCPolynomial};

pub type Exp = Vec<u32>;

/// Sparse polynomial, terms kept sorted descending by deglex.
#[derive(Clone, Debug, PartialEq)]
pub struct P {
    pub n: usize,
    pub terms: Vec<(Exp, BigRational)>,
}

pub fn deglex(a: &Exp, b: &Exp) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl P {
    pub fn from_map(n: usize, map: BTreeMap<Exp, BigRational>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| deglex(&b.0, &a.0));
        P { n, terms }
    }

    pub fn from_terms(n: usize, ts: impl IntoIterator<Item = (Exp, BigRational)>) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in ts {
            let slot = map.entry(e).or_insert_with(BigRational::zero);
            *slot += c;
        }
        Self::from_map(n, map)
    }

    pub fn from_coeff(c: &CoeffElem, n: usize) -> Self {
        Self::from_terms(
            n,
            c.terms().map(|(e, q)| {
                let mut v = e.to_vec();
                v.resize(n, 0);
                (v, q.clone())
            }),
        )
    }

    /// Only meaningful for polynomials over `ℚ` in a commutative algebra.
    pub fn from_nc(f: &NCPolynomial) -> Self {
        let n = f.algebra().nvars();
        Self::from_terms(
            n,
            f.terms().iter().map(|t| {
                (
                    t.exp.as_slice().to_vec(),
                    t.coeff.as_constant().expect("rational coefficient"),
                )
            }),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &(Exp, BigRational) {
        &self.terms[0]
    }

    /// `self - c * t^e * g`.
    pub fn sub_mul(&self, c: &BigRational, e: &Exp, g: &P) -> P {
        let mut map: BTreeMap<Exp, BigRational> = self.terms.iter().cloned().collect();
        for (ge, gc) in &g.terms {
            let key: Exp = ge.iter().zip(e).map(|(a, b)| a + b).collect();
            let slot = map.entry(key).or_insert_with(BigRational::zero);
            *slot -= c * gc;
        }
        P::from_map(self.n, map)
    }

    pub fn monic(&self) -> P {
        if self.is_zero() {
            return self.clone();
        }
        let inv = BigRational::one() / &self.lead().1;
        P {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * &inv))
                .collect(),
        }
    }
}

fn divides(a: &Exp, b: &Exp) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn diff(b: &Exp, a: &Exp) -> Exp {
    b.iter().zip(a).map(|(y, x)| y - x).collect()
}

fn lcm(a: &Exp, b: &Exp) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Full normal form of `f` by `g` (every term reduced).
pub fn normal_form(f: &P, g: &[P]) -> P {
    let mut rem = Vec::new();
    let mut cur = f.clone();
    'outer: while !cur.is_zero() {
        let (e, c) = cur.lead().clone();
        for h in g.iter().filter(|h| !h.is_zero()) {
            let (he, hc) = h.lead();
            if divides(he, &e) {
                cur = cur.sub_mul(&(&c / hc), &diff(&e, he), h);
                continue 'outer;
            }
        }
        rem.push((e.clone(), c.clone()));
        cur.terms.remove(0);
    }
    P::from_terms(f.n, rem)
}

fn s_poly(f: &P, g: &P) -> P {
    let (fe, fc) = f.lead();
    let (ge, gc) = g.lead();
    let l = lcm(fe, ge);
    let zero = P {
        n: f.n,
        terms: vec![],
    };
    let a = zero.sub_mul(&-(BigRational::one() / fc), &diff(&l, fe), f);
    a.sub_mul(&(BigRational::one() / gc), &diff(&l, ge), g)
}

/// Reduced Gröbner basis, monic and sorted by descending leading monomial.
pub fn groebner(gens: &[P]) -> Vec<P> {
    let mut g: Vec<P> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let r = normal_form(&s_poly(&g[i], &g[j]), &g);
        if !r.is_zero() {
            let k = g.len();
            g.push(r);
            for i in 0..k {
                pairs.push((i, k));
            }
        }
    }
    // minimalize, then reduce
    let mut min: Vec<P> = Vec::new();
    for (k, p) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(l, q)| {
            l != k && divides(&q.lead().0, &p.lead().0) && (q.lead().0 != p.lead().0 || l < k)
        });
        if !redundant {
            min.push(p.monic());
        }
    }
    let mut out = Vec::new();
    for k in 0..min.len() {
        let others: Vec<P> = min
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, p)| p.clone())
            .collect();
        out.push(normal_form(&min[k], &others).monic());
    }
    out.sort_by(|a, b| deglex(&b.lead().0, &a.lead().0));
    out
}

/// Minimal generators of the monomial ideal spanned by `exps`, sorted.
pub fn staircase(exps: &[Exp]) -> Vec<Exp> {
    let mut out: Vec<Exp> = Vec::new();
    for (k, e) in exps.iter().enumerate() {
        let redundant = exps
            .iter()
            .enumerate()
            .any(|(l, d)| l != k && divides(d, e) && (d != e || l < k));
        if !redundant {
            out.push(e.clone());
        }
    }
    out.sort();
    out
}
