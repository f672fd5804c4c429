//! Exact elements of the coefficient ring: commutative polynomials with rational
//! coefficients. The rational field is the case with no generators.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative monomial `t^a`, stored with trailing zero exponents trimmed so
/// that the representation does not depend on the number of declared generators.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub(crate) struct CMono(Vec<u32>);

impl CMono {
    pub(crate) fn one() -> Self {
        CMono(Vec::new())
    }

    pub(crate) fn from_exponents(mut v: Vec<u32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        CMono(v)
    }

    pub(crate) fn generator(k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = 1;
        CMono(v)
    }

    pub(crate) fn get(&self, k: usize) -> u32 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub(crate) fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub(crate) fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub(crate) fn mul(&self, other: &CMono) -> CMono {
        let len = self.0.len().max(other.0.len());
        CMono((0..len).map(|k| self.get(k) + other.get(k)).collect())
    }

    /// Degree-lexicographic comparison with `t_1 > t_2 > ...`.
    pub(crate) fn cmp_deglex(&self, other: &CMono) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let len = self.0.len().max(other.0.len());
            for k in 0..len {
                match self.get(k).cmp(&other.get(k)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

/// An element of `ℚ[t_1, ..., t_m]` in canonical form: monomials sorted strictly
/// descending under deglex, no zero coefficients. Zero is the empty sum.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CoeffElem {
    terms: Vec<(CMono, BigRational)>,
}

impl CoeffElem {
    pub fn zero() -> Self {
        CoeffElem { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            CoeffElem {
                terms: vec![(CMono::one(), q)],
            }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q` as a constant. Panics if `q == 0`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// The generator `t_{k+1}` (zero-based `k`).
    pub fn generator(k: usize) -> Self {
        CoeffElem {
            terms: vec![(CMono::generator(k), BigRational::one())],
        }
    }

    /// `q * t^exps`.
    pub fn monomial(q: BigRational, exps: Vec<u32>) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        CoeffElem {
            terms: vec![(CMono::from_exponents(exps), q)],
        }
    }

    pub(crate) fn from_terms(raw: impl IntoIterator<Item = (CMono, BigRational)>) -> Self {
        let mut acc: HashMap<CMono, BigRational> = HashMap::new();
        for (m, q) in raw {
            if q.is_zero() {
                continue;
            }
            let slot = acc.entry(m).or_insert_with(BigRational::zero);
            *slot += q;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, q)| !q.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp_deglex(&a.0));
        CoeffElem { terms }
    }

    pub(crate) fn raw_terms(&self) -> &[(CMono, BigRational)] {
        &self.terms
    }

    /// Terms as `(exponents, coefficient)`, descending under deglex.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(m, q)| (m.exponents(), q))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The rational value if the element is constant (zero included).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, q)] if m.is_one() => Some(q.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.first().map(|(_, q)| q)
    }

    /// Number of generator slots the element touches.
    pub fn support_width(&self) -> usize {
        self.terms
            .iter()
            .map(|(m, _)| m.exponents().len())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, q: &BigRational) -> CoeffElem {
        if q.is_zero() {
            return Self::zero();
        }
        CoeffElem {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> CoeffElem {
        let mut acc = CoeffElem::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Ring homomorphism `t_k ↦ images[k]`, fixing rationals.
    pub fn substitute(&self, images: &[CoeffElem]) -> CoeffElem {
        if self.is_constant() {
            return self.clone();
        }
        let mut out = CoeffElem::zero();
        for (m, q) in &self.terms {
            let mut t = CoeffElem::from_rational(q.clone());
            for (k, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &images[k].pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Render with the given generator names (`t1, t2, ...` beyond the list).
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, q)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = q.abs();
            let mono = render_cmono(m, names);
            if mono.is_empty() {
                out.push_str(&render_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&render_rational(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    /// True when the leading coefficient is negative.
    pub fn is_negative_leading(&self) -> bool {
        self.terms.first().is_some_and(|(_, q)| q.is_negative())
    }
}

pub(crate) fn render_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn render_cmono(m: &CMono, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (k, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = names
            .get(k)
            .cloned()
            .unwrap_or_else(|| format!("t{}", k + 1));
        if e == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

fn merge(a: &CoeffElem, b: &CoeffElem, negate_b: bool) -> CoeffElem {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let ord = match (a.terms.get(i), b.terms.get(j)) {
            (Some(x), Some(y)) => x.0.cmp_deglex(&y.0),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (m, q) = &b.terms[j];
                out.push((m.clone(), if negate_b { -q } else { q.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let q = if negate_b {
                    &a.terms[i].1 - &b.terms[j].1
                } else {
                    &a.terms[i].1 + &b.terms[j].1
                };
                if !q.is_zero() {
                    out.push((a.terms[i].0.clone(), q));
                }
                i += 1;
                j += 1;
            }
        }
    }
    CoeffElem { terms: out }
}

impl Add for &CoeffElem {
    type Output = CoeffElem;
    fn add(self, rhs: &CoeffElem) -> CoeffElem {
        merge(self, rhs, false)
    }
}

impl Sub for &CoeffElem {
    type Output = CoeffElem;
    fn sub(self, rhs: &CoeffElem) -> CoeffElem {
        merge(self, rhs, true)
    }
}

impl Neg for &CoeffElem {
    type Output = CoeffElem;
    fn neg(self) -> CoeffElem {
        CoeffElem {
            terms: self.terms.iter().map(|(m, q)| (m.clone(), -q)).collect(),
        }
    }
}

impl Mul for &CoeffElem {
    type Output = CoeffElem;
    fn mul(self, rhs: &CoeffElem) -> CoeffElem {
        if self.is_zero() || rhs.is_zero() {
            return CoeffElem::zero();
        }
        if let Some(q) = self.as_constant() {
            return rhs.scale(&q);
        }
        if let Some(q) = rhs.as_constant() {
            return self.scale(&q);
        }
        CoeffElem::from_terms(
            self.terms
                .iter()
                .flat_map(|(m, a)| rhs.terms.iter().map(move |(n, b)| (m.mul(n), a * b))),
        )
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for CoeffElem {
            type Output = CoeffElem;
            fn $f(self, rhs: CoeffElem) -> CoeffElem {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&CoeffElem> for CoeffElem {
            type Output = CoeffElem;
            fn $f(self, rhs: &CoeffElem) -> CoeffElem {
                (&self).$f(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for CoeffElem {
    type Output = CoeffElem;
    fn neg(self) -> CoeffElem {
        -&self
    }
}

impl fmt::Debug for CoeffElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

impl fmt::Display for CoeffElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}
