//! Free left modules `A^m`, their elements, and the module versions of division
//! and Buchberger's algorithm.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use crate::coeffring::CoeffElem;
use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::groebner::{
    bf_set, buchberger, divide, BFData, BuchbergerOptions, DivisionResult, GbElement, GbOutput,
    Lead,
};
use crate::order::{ModuleOrder, ModuleScheme};
use crate::poly::{Algebra, NCPolynomial, Term};

struct SpaceInner {
    alg: Algebra,
    rank: usize,
    order: ModuleOrder,
}

/// `A^m` together with a module order.
#[derive(Clone)]
pub struct ModuleSpace(Arc<SpaceInner>);

impl fmt::Debug for ModuleSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleSpace")
            .field("rank", &self.0.rank)
            .field("order", &self.0.order)
            .finish()
    }
}

impl ModuleSpace {
    pub fn new(alg: &Algebra, rank: usize, scheme: ModuleScheme) -> Result<Self> {
        if rank == 0 {
            return Err(Error::DimensionMismatch("module of rank 0".into()));
        }
        Ok(Self::with_order(
            alg,
            rank,
            ModuleOrder::new(alg.order().clone(), scheme),
        ))
    }

    /// Position-first order with `e_1` dominant; used for lifts and syzygies.
    pub(crate) fn position_over_term(alg: &Algebra, rank: usize) -> Self {
        Self::with_order(
            alg,
            rank,
            ModuleOrder::position_over_term(alg.order().clone()),
        )
    }

    fn with_order(alg: &Algebra, rank: usize, order: ModuleOrder) -> Self {
        ModuleSpace(Arc::new(SpaceInner {
            alg: alg.clone(),
            rank,
            order,
        }))
    }

    pub fn algebra(&self) -> &Algebra {
        &self.0.alg
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.0.order
    }

    pub fn same(&self, other: &ModuleSpace) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.alg.ptr_eq(&other.0.alg)
                && self.0.rank == other.0.rank
                && self.0.order == other.0.order)
    }

    pub fn zero(&self) -> ModuleVector {
        ModuleVector {
            space: self.clone(),
            terms: Vec::new(),
        }
    }

    /// The standard basis vector `e_{i+1}`.
    pub fn unit(&self, i: usize) -> ModuleVector {
        assert!(i < self.rank(), "component out of range");
        ModuleVector {
            space: self.clone(),
            terms: vec![MTerm {
                coeff: CoeffElem::one(),
                exp: ExponentVector::zero(self.0.alg.nvars()),
                index: i,
            }],
        }
    }

    fn sort(&self, acc: HashMap<(ExponentVector, usize), CoeffElem>) -> Vec<MTerm> {
        let mut terms: Vec<MTerm> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((exp, index), coeff)| MTerm { coeff, exp, index })
            .collect();
        terms.sort_by(|a, b| self.0.order.compare((&b.exp, b.index), (&a.exp, a.index)));
        terms
    }
}

/// `coeff · x^exp · e_{index+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MTerm {
    pub coeff: CoeffElem,
    pub exp: ExponentVector,
    pub index: usize,
}

/// An element of `A^m` as one list of terms sorted descending by the module order.
#[derive(Clone)]
pub struct ModuleVector {
    space: ModuleSpace,
    terms: Vec<MTerm>,
}

fn add_into(
    acc: &mut HashMap<(ExponentVector, usize), CoeffElem>,
    exp: &ExponentVector,
    index: usize,
    c: CoeffElem,
) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&(exp.clone(), index)) {
        Some(slot) => *slot = &*slot + &c,
        None => {
            acc.insert((exp.clone(), index), c);
        }
    }
}

impl ModuleVector {
    pub fn from_components(space: &ModuleSpace, comps: &[NCPolynomial]) -> Result<Self> {
        if comps.len() != space.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{} components for a module of rank {}",
                comps.len(),
                space.rank()
            )));
        }
        let mut acc = HashMap::new();
        for (i, p) in comps.iter().enumerate() {
            if !p.algebra().ptr_eq(space.algebra()) {
                return Err(Error::MixedAlgebras);
            }
            for t in p.terms() {
                add_into(&mut acc, &t.exp, i, t.coeff.clone());
            }
        }
        Ok(ModuleVector {
            space: space.clone(),
            terms: space.sort(acc),
        })
    }

    pub fn from_terms(space: &ModuleSpace, terms: impl IntoIterator<Item = MTerm>) -> Self {
        let mut acc = HashMap::new();
        for t in terms {
            assert!(t.index < space.rank(), "component out of range");
            add_into(&mut acc, &t.exp, t.index, t.coeff);
        }
        ModuleVector {
            space: space.clone(),
            terms: space.sort(acc),
        }
    }

    pub fn space(&self) -> &ModuleSpace {
        &self.space
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    pub fn terms(&self) -> &[MTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&MTerm> {
        self.terms.first()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.exp.degree()).max()
    }

    pub fn component(&self, i: usize) -> NCPolynomial {
        let alg = self.space.algebra();
        NCPolynomial::from_terms(
            alg,
            self.terms
                .iter()
                .filter(|t| t.index == i)
                .map(|t| Term::new(t.coeff.clone(), t.exp.clone())),
        )
    }

    pub fn components(&self) -> Vec<NCPolynomial> {
        (0..self.rank()).map(|i| self.component(i)).collect()
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let order = self.space.order();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => order.compare((&x.exp, x.index), (&y.exp, y.index)),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let mut t = b[j].clone();
                    if negate {
                        t.coeff = -&t.coeff;
                    }
                    out.push(t);
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].coeff - &b[j].coeff
                    } else {
                        &a[i].coeff + &b[j].coeff
                    };
                    if !c.is_zero() {
                        out.push(MTerm {
                            coeff: c,
                            exp: a[i].exp.clone(),
                            index: a[i].index,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        ModuleVector {
            space: self.space.clone(),
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if !self.space.same(&other.space) {
            return Err(Error::MixedAlgebras);
        }
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        if !self.space.same(&other.space) {
            return Err(Error::MixedAlgebras);
        }
        Ok(self.merge(other, true))
    }

    pub fn left_scale(&self, r: &CoeffElem) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let c = r * &t.coeff;
                (!c.is_zero()).then(|| MTerm {
                    coeff: c,
                    exp: t.exp.clone(),
                    index: t.index,
                })
            })
            .collect();
        ModuleVector {
            space: self.space.clone(),
            terms,
        }
    }

    /// `c x^γ · self`.
    pub fn shifted(&self, c: &CoeffElem, gamma: &ExponentVector) -> Self {
        let alg = self.space.algebra();
        let mut acc = HashMap::new();
        for t in &self.terms {
            alg.term_product(c, gamma, &t.coeff, &t.exp, |e, v| {
                add_into(&mut acc, e, t.index, v)
            });
        }
        ModuleVector {
            space: self.space.clone(),
            terms: self.space.sort(acc),
        }
    }

    /// `f · self`.
    pub fn left_mul(&self, f: &NCPolynomial) -> Result<Self> {
        if !f.algebra().ptr_eq(self.space.algebra()) {
            return Err(Error::MixedAlgebras);
        }
        let alg = self.space.algebra();
        let mut acc = HashMap::new();
        for s in f.terms() {
            for t in &self.terms {
                alg.term_product(&s.coeff, &s.exp, &t.coeff, &t.exp, |e, v| {
                    add_into(&mut acc, e, t.index, v)
                });
            }
        }
        Ok(ModuleVector {
            space: self.space.clone(),
            terms: self.space.sort(acc),
        })
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let alg = self.space.algebra();
        let mut out = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let mono = alg.render_monomial(&t.exp);
            let basis = if mono.is_empty() {
                format!("e{}", t.index + 1)
            } else {
                format!("{mono}*e{}", t.index + 1)
            };
            let (neg, text) = alg.render_summand(&t.coeff, &basis);
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

impl PartialEq for ModuleVector {
    fn eq(&self, other: &Self) -> bool {
        self.space.same(&other.space) && self.terms == other.terms
    }
}

impl fmt::Debug for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl GbElement for ModuleVector {
    fn algebra(&self) -> &Algebra {
        self.space.algebra()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> Option<Lead<'_>> {
        self.terms.first().map(|t| Lead {
            exp: &t.exp,
            index: t.index,
            coeff: &t.coeff,
        })
    }

    fn cmp_lead(&self, other: &Self) -> Ordering {
        match (self.terms.first(), other.terms.first()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => self
                .space
                .order()
                .compare((&a.exp, a.index), (&b.exp, b.index)),
        }
    }

    fn shifted(&self, c: &CoeffElem, gamma: &ExponentVector) -> Self {
        ModuleVector::shifted(self, c, gamma)
    }

    fn plus(&self, other: &Self) -> Self {
        self.checked_add(other)
            .expect("vectors from the same module")
    }

    fn minus(&self, other: &Self) -> Self {
        self.checked_sub(other)
            .expect("vectors from the same module")
    }

    fn zero_like(&self) -> Self {
        self.space.zero()
    }

    fn degree(&self) -> Option<u32> {
        ModuleVector::degree(self)
    }

    fn same_space(&self, other: &Self) -> bool {
        self.space.same(&other.space)
    }

    fn render(&self) -> String {
        ModuleVector::render(self)
    }
}

pub fn mod_divide(
    v: &ModuleVector,
    divisors: &[ModuleVector],
) -> Result<DivisionResult<ModuleVector>> {
    divide(v, divisors)
}

/// `None` when the leading components of the subset differ.
pub fn mod_bf_set(basis: &[ModuleVector], subset: &[usize]) -> Result<Option<BFData>> {
    bf_set(basis, subset)
}

pub fn mod_buchberger(
    gens: &[ModuleVector],
    opts: &BuchbergerOptions,
) -> Result<GbOutput<ModuleVector>> {
    buchberger(gens, opts)
}

/// How much of the tagged module a [`LiftBasis`] computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum LiftMode {
    /// Only rows with a nonzero data part are kept; syzygies are the tag parts
    /// of the combinations whose data part reduces to zero.
    Schreyer,
    /// A Gröbner basis of the whole tagged module.
    Full,
}

/// A Gröbner basis of the rows `(F_j | e_j)` of `A^{k+s}` under the
/// position-first order, from which left combinations `Σ X_j F_j = target`
/// and the syzygies of the `F_j` are read off.
pub(crate) struct LiftBasis {
    data: usize,
    tags: usize,
    space: ModuleSpace,
    basis: Vec<ModuleVector>,
    syzygies: Vec<ModuleVector>,
}

impl LiftBasis {
    pub(crate) fn new(
        alg: &Algebra,
        data: usize,
        rows: Vec<Vec<NCPolynomial>>,
        mode: LiftMode,
    ) -> Result<Self> {
        let tags = rows.len();
        if tags == 0 {
            return Err(Error::EmptyGenerators);
        }
        let space = ModuleSpace::position_over_term(alg, data + tags);
        let mut gens = Vec::with_capacity(tags);
        for (j, row) in rows.into_iter().enumerate() {
            if row.len() != data {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} where {data} was expected",
                    row.len()
                )));
            }
            let mut comps = row;
            comps.extend((0..tags).map(|i| {
                if i == j {
                    NCPolynomial::one(alg)
                } else {
                    NCPolynomial::zero(alg)
                }
            }));
            gens.push(ModuleVector::from_components(&space, &comps)?);
        }
        let cap = if alg.ring().is_field() { Some(2) } else { None };
        let mut lb = LiftBasis {
            data,
            tags,
            space,
            basis: Vec::new(),
            syzygies: Vec::new(),
        };
        match mode {
            LiftMode::Full => {
                let opts = BuchbergerOptions {
                    max_subset_size: cap,
                    ..BuchbergerOptions::default()
                };
                let basis = buchberger(&gens, &opts)?.basis;
                let (syz, basis) = basis.into_iter().partition(|g| lb.is_syzygy(g));
                lb.basis = basis;
                lb.syzygies = syz;
            }
            LiftMode::Schreyer => lb.tagged_buchberger(gens, cap)?,
        }
        Ok(lb)
    }

    fn is_syzygy(&self, v: &ModuleVector) -> bool {
        v.leading_term().is_some_and(|t| t.index >= self.data)
    }

    fn tagged_buchberger(&mut self, gens: Vec<ModuleVector>, cap: Option<usize>) -> Result<()> {
        for g in gens {
            if self.is_syzygy(&g) {
                self.syzygies.push(g);
            } else {
                self.basis.push(g);
            }
        }
        let mut old = 0;
        while old < self.basis.len() {
            let len = self.basis.len();
            let top = cap.unwrap_or(len).min(len);
            for k in 1..=top {
                for subset in (0..len).combinations(k) {
                    if *subset.last().expect("k >= 1") < old {
                        continue;
                    }
                    let Some(bf) = bf_set(&self.basis, &subset)? else {
                        continue;
                    };
                    for b in bf.generators.iter() {
                        let combo = bf.combination(&self.basis, b);
                        if combo.is_zero() {
                            continue;
                        }
                        let rem = divide(&combo, &self.basis)?.remainder;
                        if rem.is_zero() {
                            continue;
                        }
                        if self.is_syzygy(&rem) {
                            self.syzygies.push(rem);
                        } else {
                            self.basis.push(rem);
                        }
                    }
                }
            }
            old = len;
        }
        Ok(())
    }

    /// `X` with `Σ X_j F_j = target`, if one exists.
    pub(crate) fn lift(&self, target: &[NCPolynomial]) -> Result<Option<Vec<NCPolynomial>>> {
        let alg = self.space.algebra();
        let mut comps = target.to_vec();
        comps.extend((0..self.tags).map(|_| NCPolynomial::zero(alg)));
        let v = ModuleVector::from_components(&self.space, &comps)?;
        if v.is_zero() {
            return Ok(Some(vec![NCPolynomial::zero(alg); self.tags]));
        }
        if self.basis.is_empty() {
            return Ok(None);
        }
        let rem = divide(&v, &self.basis)?.remainder;
        if rem.leading_term().is_some_and(|t| t.index < self.data) {
            return Ok(None);
        }
        Ok(Some(
            (0..self.tags)
                .map(|i| -&rem.component(self.data + i))
                .collect(),
        ))
    }

    /// Generators of `{X : Σ X_j F_j = 0}`.
    pub(crate) fn syzygies(&self) -> Vec<Vec<NCPolynomial>> {
        self.syzygies
            .iter()
            .map(|g| (0..self.tags).map(|i| g.component(self.data + i)).collect())
            .collect()
    }
}
