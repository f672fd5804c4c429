//! Coefficient rings with decidable left-ideal membership and computable
//! syzygies: `ℚ` and `ℚ[t_1, ..., t_m]`.
//!
//! The polynomial ring runs on the engine itself, as the skew PBW extension of
//! `ℚ` with `σ = id`, `δ = 0` and commuting variables.

mod elem;

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

pub use elem::CoeffElem;
pub(crate) use elem::{render_rational, CMono};

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::modules::{LiftBasis, LiftMode};
use crate::poly::{Algebra, NCPolynomial, Term};
use crate::presentation::PresentationBuilder;

/// Generators of the left syzygy module of a tuple `(r_1, ..., r_s)`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SyzygyGenerators {
    pub tuples: Vec<Vec<CoeffElem>>,
}

impl SyzygyGenerators {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<CoeffElem>> {
        self.tuples.iter()
    }
}

struct RingInner {
    gens: Vec<String>,
    /// The commutative polynomial ring as an algebra over `ℚ`; absent for `ℚ`.
    engine: Option<Algebra>,
}

#[derive(Clone)]
pub struct CoeffRing(Arc<RingInner>);

impl fmt::Debug for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.gens.is_empty() {
            write!(f, "QQ")
        } else {
            write!(f, "QQ[{}]", self.0.gens.join(", "))
        }
    }
}

impl CoeffRing {
    pub fn rationals() -> Self {
        CoeffRing(Arc::new(RingInner {
            gens: Vec::new(),
            engine: None,
        }))
    }

    /// `ℚ[gens]`; an empty list gives `ℚ`.
    pub fn polynomial(gens: Vec<String>) -> Self {
        if gens.is_empty() {
            return Self::rationals();
        }
        let pres = PresentationBuilder::new(Self::rationals(), gens.clone()).build();
        let engine = Algebra::with_deglex(pres).expect("commutative presentation is valid");
        CoeffRing(Arc::new(RingInner {
            gens,
            engine: Some(engine),
        }))
    }

    pub fn ngens(&self) -> usize {
        self.0.gens.len()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.0.gens
    }

    pub fn is_field(&self) -> bool {
        self.0.gens.is_empty()
    }

    /// The generator `t_{k+1}`.
    pub fn gen(&self, k: usize) -> Result<CoeffElem> {
        if k >= self.ngens() {
            return Err(Error::IndexOutOfRange {
                index: k + 1,
                len: self.ngens(),
            });
        }
        Ok(CoeffElem::generator(k))
    }

    /// True when `c` only involves declared generators.
    pub fn contains(&self, c: &CoeffElem) -> bool {
        c.support_width() <= self.ngens()
    }

    pub fn render(&self, c: &CoeffElem) -> String {
        c.render(&self.0.gens)
    }

    pub fn unit_inverse(&self, r: &CoeffElem) -> Option<CoeffElem> {
        let q = r.as_constant()?;
        if q.is_zero() {
            None
        } else {
            Some(CoeffElem::from_rational(q.recip()))
        }
    }

    /// A certificate `(b_1, ..., b_s)` with `a = Σ b_i r_i`, or `None` if `a` is
    /// not in the ideal generated by `gens`.
    pub fn divide_member(
        &self,
        a: &CoeffElem,
        gens: &[CoeffElem],
    ) -> Result<Option<Vec<CoeffElem>>> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if a.is_zero() {
            return Ok(Some(vec![CoeffElem::zero(); gens.len()]));
        }
        match &self.0.engine {
            None => Ok(field_divide(a, gens)),
            Some(engine) => {
                let basis = self.lift_basis(engine, gens)?;
                let target = vec![self.to_engine(engine, a)];
                Ok(basis
                    .lift(&target)?
                    .map(|cert| cert.iter().map(|p| self.engine_to_coeff(p)).collect()))
            }
        }
    }

    pub fn syzygy_generators(&self, gens: &[CoeffElem]) -> Result<SyzygyGenerators> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        match &self.0.engine {
            None => Ok(field_syzygies(gens)),
            Some(engine) => {
                let basis = self.lift_basis(engine, gens)?;
                let tuples = basis
                    .syzygies()
                    .into_iter()
                    .map(|row| row.iter().map(|p| self.engine_to_coeff(p)).collect())
                    .collect();
                Ok(SyzygyGenerators { tuples })
            }
        }
    }

    fn lift_basis(&self, engine: &Algebra, gens: &[CoeffElem]) -> Result<LiftBasis> {
        let rows = gens
            .iter()
            .map(|g| vec![self.to_engine(engine, g)])
            .collect();
        LiftBasis::new(engine, 1, rows, LiftMode::Schreyer)
    }

    fn to_engine(&self, engine: &Algebra, c: &CoeffElem) -> NCPolynomial {
        let m = self.ngens();
        NCPolynomial::from_terms(
            engine,
            c.raw_terms().iter().map(|(mono, q)| {
                let mut exps = mono.exponents().to_vec();
                exps.resize(m, 0);
                Term::new(
                    CoeffElem::from_rational(q.clone()),
                    ExponentVector::new(exps),
                )
            }),
        )
    }

    fn engine_to_coeff(&self, p: &NCPolynomial) -> CoeffElem {
        CoeffElem::from_terms(p.terms().iter().map(|t| {
            let q = t
                .coeff
                .as_constant()
                .expect("engine coefficients are rational");
            (CMono::from_exponents(t.exp.as_slice().to_vec()), q)
        }))
    }
}

/// Over a field: `b_p = a / r_p` at the leftmost nonzero `r_p`.
fn field_divide(a: &CoeffElem, gens: &[CoeffElem]) -> Option<Vec<CoeffElem>> {
    let qa = a.as_constant()?;
    let p = gens.iter().position(|g| !g.is_zero())?;
    let rp = gens[p].as_constant()?;
    let mut out = vec![CoeffElem::zero(); gens.len()];
    out[p] = CoeffElem::from_rational(qa / rp);
    Some(out)
}

/// Over a field: with the leftmost nonzero pivot `p`, the tuples
/// `r_j e_p - r_p e_j` for nonzero `r_j` and `e_j` for zero `r_j`.
fn field_syzygies(gens: &[CoeffElem]) -> SyzygyGenerators {
    let s = gens.len();
    let unit = |j: usize| {
        let mut v = vec![CoeffElem::zero(); s];
        v[j] = CoeffElem::one();
        v
    };
    let Some(p) = gens.iter().position(|g| !g.is_zero()) else {
        return SyzygyGenerators {
            tuples: (0..s).map(unit).collect(),
        };
    };
    let mut tuples = Vec::new();
    for j in 0..s {
        if j == p {
            continue;
        }
        if gens[j].is_zero() {
            tuples.push(unit(j));
        } else {
            let mut v = vec![CoeffElem::zero(); s];
            v[p] = gens[j].clone();
            v[j] = -&gens[p];
            tuples.push(v);
        }
    }
    SyzygyGenerators { tuples }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn x(k: usize) -> CoeffElem {
        CoeffElem::generator(k)
    }

    fn q(p: i64, d: i64) -> CoeffElem {
        CoeffElem::from_ratio(p, d)
    }

    fn combine(b: &[CoeffElem], g: &[CoeffElem]) -> CoeffElem {
        b.iter()
            .zip(g)
            .fold(CoeffElem::zero(), |acc, (bi, gi)| &acc + &(bi * gi))
    }

    #[test]
    fn field_membership() {
        let r = CoeffRing::rationals();
        let gens = [CoeffElem::from_int(2), CoeffElem::from_int(3)];
        let b = r.divide_member(&CoeffElem::one(), &gens).unwrap().unwrap();
        assert_eq!(b, vec![q(1, 2), CoeffElem::zero()]);
        let zero = r.divide_member(&CoeffElem::zero(), &gens).unwrap().unwrap();
        assert!(zero.iter().all(CoeffElem::is_zero));
        assert!(r
            .divide_member(&CoeffElem::one(), &[CoeffElem::zero()])
            .unwrap()
            .is_none());
        assert_eq!(
            r.divide_member(&CoeffElem::one(), &[]),
            Err(Error::EmptyGenerators)
        );
    }

    #[test]
    fn field_syzygy() {
        let r = CoeffRing::rationals();
        let s = r
            .syzygy_generators(&[CoeffElem::from_int(2), CoeffElem::from_int(3)])
            .unwrap();
        assert_eq!(
            s.tuples,
            vec![vec![CoeffElem::from_int(3), CoeffElem::from_int(-2)]]
        );
    }

    #[test]
    fn polynomial_membership() {
        let r = CoeffRing::polynomial(vec!["x1".into(), "x2".into()]);
        let gens = [&x(0) * &x(1), CoeffElem::from_int(2) * x(1), x(0)];
        let a = &x(0) * &x(1).pow(2);
        let b = r.divide_member(&a, &gens).unwrap().unwrap();
        assert_eq!(combine(&b, &gens), a);

        assert!(r
            .divide_member(&CoeffElem::one(), &[x(0), x(1)])
            .unwrap()
            .is_none());
        let b = r
            .divide_member(&x(0), &[&x(0) + &x(1), x(1)])
            .unwrap()
            .unwrap();
        assert_eq!(combine(&b, &[&x(0) + &x(1), x(1)]), x(0));
    }

    #[test]
    fn polynomial_syzygies() {
        let r = CoeffRing::polynomial(vec!["x".into()]);
        let gens = [
            x(0).scale(&BigRational::new(4.into(), 3.into())),
            x(0).pow(2).scale(&BigRational::new(9.into(), 4.into())),
        ];
        let s = r.syzygy_generators(&gens).unwrap();
        assert_eq!(s.len(), 1);
        let t = &s.tuples[0];
        assert!(combine(t, &gens).is_zero());
        // proportional to (3/4 x, -4/9)
        let ratio = t[1].as_constant().unwrap() / BigRational::new((-4).into(), 9.into());
        assert_eq!(
            t[0],
            x(0).scale(&(BigRational::new(3.into(), 4.into()) * ratio))
        );

        assert!(r.syzygy_generators(&[x(0)]).unwrap().is_empty());
    }

    #[test]
    fn units() {
        let r = CoeffRing::polynomial(vec!["x".into()]);
        assert_eq!(r.unit_inverse(&q(-4, 9)), Some(q(-9, 4)));
        assert_eq!(r.unit_inverse(&x(0)), None);
        assert_eq!(CoeffRing::rationals().unit_inverse(&q(2, 3)), Some(q(3, 2)));
        assert_eq!(r.unit_inverse(&CoeffElem::zero()), None);
    }
}
