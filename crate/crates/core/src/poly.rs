//! PBW normal-form arithmetic.
//!
//! Every element of `A` has a unique expansion `Σ c_k x^{α_k}` with coefficients
//! on the left. Products are brought to normal form by rewriting
//! `x_i r → σ_i(r) x_i + δ_i(r)` and `x_i x_j → c_ji x_j x_i + d_ji` (`j < i`),
//! always at the leftmost violation: a variable is pushed into a standard
//! monomial from the left, so the only violation is between it and the first
//! variable of that monomial.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use crate::coeffring::{CoeffElem, CoeffRing};
use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::order::MonomialOrder;
use crate::presentation::{validate, Presentation, ValidationReport};

/// A coefficient on the left of a standard monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: CoeffElem,
    pub exp: ExponentVector,
}

impl Term {
    pub fn new(coeff: CoeffElem, exp: ExponentVector) -> Self {
        Term { coeff, exp }
    }
}

/// Unsorted accumulator of terms, keyed by exponent.
#[derive(Default)]
pub(crate) struct TermAcc(HashMap<ExponentVector, CoeffElem>);

impl TermAcc {
    pub(crate) fn add(&mut self, exp: &ExponentVector, c: CoeffElem) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(exp) {
            Some(slot) => *slot = &*slot + &c,
            None => {
                self.0.insert(exp.clone(), c);
            }
        }
    }

    pub(crate) fn into_sorted(self, order: &MonomialOrder) -> Vec<Term> {
        let mut terms: Vec<Term> = self
            .0
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exp, coeff)| Term { coeff, exp })
            .collect();
        terms.sort_by(|a, b| order.compare(&b.exp, &a.exp));
        terms
    }
}

type TermCache<K> = RwLock<HashMap<K, Arc<Vec<Term>>>>;

struct AlgebraInner {
    pres: Presentation,
    order: MonomialOrder,
    report: ValidationReport,
    derivations: bool,
    /// `x_i · x^β`
    var_mono: TermCache<(usize, ExponentVector)>,
    /// `x^α · x^β`
    mono_mono: TermCache<(ExponentVector, ExponentVector)>,
}

/// A validated presentation together with the active monomial order.
///
/// Cheap to clone. The normal-form caches are shared between clones and are
/// filled idempotently, so an `Algebra` can be used from several threads.
#[derive(Clone)]
pub struct Algebra(Arc<AlgebraInner>);

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("vars", &self.0.pres.var_names())
            .field("coeffs", &self.0.pres.ring().gen_names())
            .field("order", &self.0.order)
            .finish()
    }
}

impl Algebra {
    /// Validates `pres` and attaches `order`.
    pub fn new(pres: Presentation, order: MonomialOrder) -> Result<Self> {
        if order.nvars() != pres.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "order on {} variables for a presentation with {}",
                order.nvars(),
                pres.nvars()
            )));
        }
        let report = validate(&pres);
        if !report.is_valid() {
            let msgs: Vec<String> = report.failures.iter().map(|f| f.to_string()).collect();
            return Err(Error::InvalidPresentation(msgs.join("; ")));
        }
        let derivations = pres.has_derivations();
        Ok(Algebra(Arc::new(AlgebraInner {
            pres,
            order,
            report,
            derivations,
            var_mono: RwLock::new(HashMap::new()),
            mono_mono: RwLock::new(HashMap::new()),
        })))
    }

    /// Deglex with the variables ranked in declaration order.
    pub fn with_deglex(pres: Presentation) -> Result<Self> {
        let n = pres.nvars();
        Self::new(pres, MonomialOrder::deglex(n))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.0.pres
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn ring(&self) -> &CoeffRing {
        self.0.pres.ring()
    }

    pub fn nvars(&self) -> usize {
        self.0.pres.nvars()
    }

    pub fn validation(&self) -> &ValidationReport {
        &self.0.report
    }

    pub fn ptr_eq(&self, other: &Algebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// The same presentation under another order (fresh caches).
    pub fn with_order(&self, order: MonomialOrder) -> Result<Algebra> {
        Algebra::new(self.0.pres.clone(), order)
    }

    pub fn zero(&self) -> NCPolynomial {
        NCPolynomial::zero(self)
    }

    pub fn one(&self) -> NCPolynomial {
        NCPolynomial::one(self)
    }

    pub fn var(&self, i: usize) -> NCPolynomial {
        NCPolynomial::variable(self, i)
    }

    pub fn constant(&self, c: CoeffElem) -> NCPolynomial {
        NCPolynomial::constant(self, c)
    }

    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        self.0.order.compare(a, b)
    }

    /// Normal form of `x_i · x^β`.
    pub(crate) fn var_times_monomial(&self, i: usize, beta: &ExponentVector) -> Arc<Vec<Term>> {
        let key = (i, beta.clone());
        if let Some(hit) = self.0.var_mono.read().unwrap().get(&key) {
            return hit.clone();
        }
        let computed = Arc::new(self.compute_var_times_monomial(i, beta));
        self.0
            .var_mono
            .write()
            .unwrap()
            .entry(key)
            .or_insert(computed)
            .clone()
    }

    fn compute_var_times_monomial(&self, i: usize, beta: &ExponentVector) -> Vec<Term> {
        let n = self.nvars();
        match beta.first_support() {
            Some(j) if j < i => {
                // x_i x_j x^rest = c_ji x_j (x_i x^rest) + d_ji x^rest
                let rel = self.0.pres.relation(j, i);
                let rest = beta.decremented(j);
                let inner = self.var_times_monomial(i, &rest);
                let mut acc = TermAcc::default();
                for t in self.var_times_terms(j, &inner) {
                    acc.add(&t.exp, &rel.constant * &t.coeff);
                }
                for (c, v) in &rel.tail {
                    if c.is_zero() {
                        continue;
                    }
                    match v {
                        None => acc.add(&rest, c.clone()),
                        Some(k) => {
                            for t in self.var_times_monomial(*k, &rest).iter() {
                                acc.add(&t.exp, c * &t.coeff);
                            }
                        }
                    }
                }
                acc.into_sorted(&self.0.order)
            }
            _ => {
                debug_assert_eq!(beta.len(), n);
                vec![Term::new(CoeffElem::one(), beta.incremented(i))]
            }
        }
    }

    /// `x_i · Σ d x^β = Σ σ_i(d) (x_i x^β) + δ_i(d) x^β`.
    fn var_times_terms(&self, i: usize, terms: &[Term]) -> Vec<Term> {
        let pres = &self.0.pres;
        let mut acc = TermAcc::default();
        for t in terms {
            let sd = pres.sigma(i, &t.coeff);
            for u in self.var_times_monomial(i, &t.exp).iter() {
                acc.add(&u.exp, &sd * &u.coeff);
            }
            if self.0.derivations {
                acc.add(&t.exp, pres.delta(i, &t.coeff));
            }
        }
        acc.into_sorted(&self.0.order)
    }

    /// `x^α · g` for a list of terms.
    fn monomial_times_terms(&self, alpha: &ExponentVector, terms: &[Term]) -> Vec<Term> {
        let mut cur = terms.to_vec();
        for i in (0..self.nvars()).rev() {
            for _ in 0..alpha[i] {
                cur = self.var_times_terms(i, &cur);
            }
        }
        cur
    }

    /// Normal form of `x^α · x^β`, memoized.
    pub(crate) fn monomial_product(
        &self,
        alpha: &ExponentVector,
        beta: &ExponentVector,
    ) -> Arc<Vec<Term>> {
        if alpha.is_zero() {
            return Arc::new(vec![Term::new(CoeffElem::one(), beta.clone())]);
        }
        let key = (alpha.clone(), beta.clone());
        if let Some(hit) = self.0.mono_mono.read().unwrap().get(&key) {
            return hit.clone();
        }
        let computed = Arc::new(
            self.monomial_times_terms(alpha, &[Term::new(CoeffElem::one(), beta.clone())]),
        );
        self.0
            .mono_mono
            .write()
            .unwrap()
            .entry(key)
            .or_insert(computed)
            .clone()
    }

    /// Adds `(c x^α)(d x^β)` into `acc`, keyed through `emit`.
    pub(crate) fn term_product(
        &self,
        c: &CoeffElem,
        alpha: &ExponentVector,
        d: &CoeffElem,
        beta: &ExponentVector,
        mut emit: impl FnMut(&ExponentVector, CoeffElem),
    ) {
        if c.is_zero() || d.is_zero() {
            return;
        }
        if !self.0.derivations {
            // x^α d = σ^α(d) x^α when every δ_i vanishes
            let coef = c * &self.0.pres.sigma_alpha(alpha, d);
            for t in self.monomial_product(alpha, beta).iter() {
                emit(&t.exp, &coef * &t.coeff);
            }
        } else {
            let prod = self.monomial_times_terms(alpha, &[Term::new(d.clone(), beta.clone())]);
            for t in prod {
                emit(&t.exp, c * &t.coeff);
            }
        }
    }

    /// `c_{α,β}` and `p_{α,β}` with `x^α x^β = c_{α,β} x^{α+β} + p_{α,β}`.
    pub fn structure_constants(
        &self,
        alpha: &ExponentVector,
        beta: &ExponentVector,
    ) -> (CoeffElem, NCPolynomial) {
        let target = alpha.add(beta);
        let prod = self.monomial_product(alpha, beta);
        let mut c = CoeffElem::zero();
        let mut tail = Vec::new();
        for t in prod.iter() {
            if t.exp == target {
                c = t.coeff.clone();
            } else {
                tail.push(t.clone());
            }
        }
        (
            c,
            NCPolynomial {
                alg: self.clone(),
                terms: tail,
            },
        )
    }

    /// The leading scalar `c_{α,β}` alone.
    pub fn structure_constant(&self, alpha: &ExponentVector, beta: &ExponentVector) -> CoeffElem {
        let target = alpha.add(beta);
        self.monomial_product(alpha, beta)
            .iter()
            .find(|t| t.exp == target)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(CoeffElem::zero)
    }

    /// Overlaps `x_k x_j x_i` (`k > j > i`) and `x_j x_i t` (`t` a coefficient
    /// generator) whose two bracketings disagree, with the difference
    /// `(ab)c - a(bc)`. Empty exactly when the rewriting rules are confluent on
    /// these words, which is what associativity of the product needs.
    pub fn overlap_defects(&self) -> Vec<(String, NCPolynomial)> {
        let n = self.nvars();
        let names = self.0.pres.var_names();
        let mut out = Vec::new();
        let mut check = |label: String, a: &NCPolynomial, b: &NCPolynomial, c: &NCPolynomial| {
            let diff = &(&(a * b) * c) - &(a * &(b * c));
            if !diff.is_zero() {
                out.push((label, diff));
            }
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let label = format!("{}*{}*{}", names[k], names[j], names[i]);
                    check(label, &self.var(k), &self.var(j), &self.var(i));
                }
                for (t, gen) in self.ring().gen_names().iter().enumerate() {
                    let label = format!("{}*{}*{}", names[j], names[i], gen);
                    let c = self.constant(CoeffElem::generator(t));
                    check(label, &self.var(j), &self.var(i), &c);
                }
            }
        }
        out
    }

    pub fn render_monomial(&self, exp: &ExponentVector) -> String {
        let names = self.0.pres.var_names();
        let mut parts = Vec::new();
        for (i, &e) in exp.as_slice().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }

    pub fn render_coeff(&self, c: &CoeffElem) -> String {
        self.ring().render(c)
    }

    /// Renders `coeff * monomial` as a summand; returns `(negative, text)`.
    pub(crate) fn render_summand(&self, coeff: &CoeffElem, mono: &str) -> (bool, String) {
        let negative = coeff.is_negative_leading();
        let abs = if negative { -coeff } else { coeff.clone() };
        let text = match abs.as_constant() {
            Some(q) => {
                let qs = crate::coeffring::render_rational(&q);
                if mono.is_empty() {
                    qs
                } else if abs.is_one() {
                    mono.to_string()
                } else {
                    format!("{qs}*{mono}")
                }
            }
            None => {
                let cs = format!("({})", self.render_coeff(&abs));
                if mono.is_empty() {
                    cs
                } else {
                    format!("{cs}*{mono}")
                }
            }
        };
        (negative, text)
    }
}

/// An element of `A` in PBW normal form: terms sorted strictly descending under
/// the algebra's order, no zero coefficients.
#[derive(Clone)]
pub struct NCPolynomial {
    alg: Algebra,
    terms: Vec<Term>,
}

/// `(lm, lc, lt)`; the zero polynomial yields the sentinel `(None, 0, None)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeadingData {
    pub monomial: Option<ExponentVector>,
    pub coeff: CoeffElem,
    pub term: Option<Term>,
}

impl NCPolynomial {
    pub fn zero(alg: &Algebra) -> Self {
        NCPolynomial {
            alg: alg.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(alg: &Algebra) -> Self {
        Self::constant(alg, CoeffElem::one())
    }

    pub fn constant(alg: &Algebra, c: CoeffElem) -> Self {
        Self::monomial(alg, c, ExponentVector::zero(alg.nvars()))
    }

    pub fn variable(alg: &Algebra, i: usize) -> Self {
        Self::monomial(alg, CoeffElem::one(), ExponentVector::unit(alg.nvars(), i))
    }

    pub fn monomial(alg: &Algebra, c: CoeffElem, exp: ExponentVector) -> Self {
        assert_eq!(exp.len(), alg.nvars(), "exponent length");
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![Term::new(c, exp)]
        };
        NCPolynomial {
            alg: alg.clone(),
            terms,
        }
    }

    /// Canonicalizes an arbitrary list of terms (merging duplicates).
    pub fn from_terms(alg: &Algebra, terms: impl IntoIterator<Item = Term>) -> Self {
        let mut acc = TermAcc::default();
        for t in terms {
            acc.add(&t.exp, t.coeff);
        }
        NCPolynomial {
            alg: alg.clone(),
            terms: acc.into_sorted(alg.order()),
        }
    }

    pub(crate) fn from_sorted(alg: &Algebra, terms: Vec<Term>) -> Self {
        NCPolynomial {
            alg: alg.clone(),
            terms,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree in the variables; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.exp.degree()).max()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&ExponentVector> {
        self.terms.first().map(|t| &t.exp)
    }

    pub fn leading_coeff(&self) -> Option<&CoeffElem> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn leading_data(&self) -> LeadingData {
        match self.terms.first() {
            None => LeadingData {
                monomial: None,
                coeff: CoeffElem::zero(),
                term: None,
            },
            Some(t) => LeadingData {
                monomial: Some(t.exp.clone()),
                coeff: t.coeff.clone(),
                term: Some(t.clone()),
            },
        }
    }

    /// The constant part if the polynomial has degree 0 (zero included).
    pub fn as_coefficient(&self) -> Option<CoeffElem> {
        match self.terms.as_slice() {
            [] => Some(CoeffElem::zero()),
            [t] if t.exp.is_zero() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.alg.ptr_eq(&other.alg) {
            Ok(())
        } else {
            Err(Error::MixedAlgebras)
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> NCPolynomial {
        let order = self.alg.order();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => order.compare(&x.exp, &y.exp),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let t = &b[j];
                    let c = if negate { -&t.coeff } else { t.coeff.clone() };
                    out.push(Term::new(c, t.exp.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].coeff - &b[j].coeff
                    } else {
                        &a[i].coeff + &b[j].coeff
                    };
                    if !c.is_zero() {
                        out.push(Term::new(c, a[i].exp.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        NCPolynomial::from_sorted(&self.alg, out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let mut acc = TermAcc::default();
        for s in &self.terms {
            for t in &other.terms {
                self.alg
                    .term_product(&s.coeff, &s.exp, &t.coeff, &t.exp, |e, c| acc.add(e, c));
            }
        }
        Ok(NCPolynomial::from_sorted(
            &self.alg,
            acc.into_sorted(self.alg.order()),
        ))
    }

    /// `r · f`: multiplies every coefficient on the left by `r`.
    pub fn left_scale(&self, r: &CoeffElem) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let c = r * &t.coeff;
                (!c.is_zero()).then(|| Term::new(c, t.exp.clone()))
            })
            .collect();
        NCPolynomial::from_sorted(&self.alg, terms)
    }

    /// `c x^γ · f`.
    pub fn shifted(&self, c: &CoeffElem, gamma: &ExponentVector) -> Self {
        let mut acc = TermAcc::default();
        for t in &self.terms {
            self.alg
                .term_product(c, gamma, &t.coeff, &t.exp, |e, v| acc.add(e, v));
        }
        NCPolynomial::from_sorted(&self.alg, acc.into_sorted(self.alg.order()))
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let mono = self.alg.render_monomial(&t.exp);
            let (neg, text) = self.alg.render_summand(&t.coeff, &mono);
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&text);
        }
        out
    }
}

impl PartialEq for NCPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.alg.ptr_eq(&other.alg) && self.terms == other.terms
    }
}

impl fmt::Debug for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

// Operator forms panic on operands from different algebras; the `checked_*`
// methods report that as an error instead.
impl Add for &NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, rhs: &NCPolynomial) -> NCPolynomial {
        self.checked_add(rhs)
            .expect("operands from the same algebra")
    }
}

impl Sub for &NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, rhs: &NCPolynomial) -> NCPolynomial {
        self.checked_sub(rhs)
            .expect("operands from the same algebra")
    }
}

impl Mul for &NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, rhs: &NCPolynomial) -> NCPolynomial {
        self.checked_mul(rhs)
            .expect("operands from the same algebra")
    }
}

impl Neg for &NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        self.left_scale(&CoeffElem::from_int(-1))
    }
}

impl Add for NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, rhs: NCPolynomial) -> NCPolynomial {
        &self + &rhs
    }
}

impl Sub for NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, rhs: NCPolynomial) -> NCPolynomial {
        &self - &rhs
    }
}

impl Mul for NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, rhs: NCPolynomial) -> NCPolynomial {
        &self * &rhs
    }
}

impl Neg for NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        -&self
    }
}
