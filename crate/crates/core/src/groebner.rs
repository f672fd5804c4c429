//! Reduction, division, `B_F` sets and Buchberger's algorithm.
//!
//! Everything here is generic over [`GbElement`] so that left ideals
//! (`NCPolynomial`) and submodules of `A^m` (`ModuleVector`) share one code path.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;

use crate::coeffring::{CoeffElem, CoeffRing, SyzygyGenerators};
use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::poly::{Algebra, NCPolynomial, Term};

/// Leading term data of a nonzero element; `index` is the zero-based
/// component (always 0 for polynomials).
#[derive(Clone, Copy, Debug)]
pub struct Lead<'a> {
    pub exp: &'a ExponentVector,
    pub index: usize,
    pub coeff: &'a CoeffElem,
}

pub trait GbElement: Clone + fmt::Debug + PartialEq {
    fn algebra(&self) -> &Algebra;
    fn is_zero(&self) -> bool;
    fn lead(&self) -> Option<Lead<'_>>;
    /// Compares leading monomials; zero is below everything.
    fn cmp_lead(&self, other: &Self) -> Ordering;
    /// `c x^γ · self`.
    fn shifted(&self, c: &CoeffElem, gamma: &ExponentVector) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn zero_like(&self) -> Self;
    /// Total degree in the variables; `None` for zero.
    fn degree(&self) -> Option<u32>;
    fn same_space(&self, other: &Self) -> bool;
    fn render(&self) -> String;
}

impl GbElement for NCPolynomial {
    fn algebra(&self) -> &Algebra {
        NCPolynomial::algebra(self)
    }

    fn is_zero(&self) -> bool {
        NCPolynomial::is_zero(self)
    }

    fn lead(&self) -> Option<Lead<'_>> {
        self.leading_term().map(|t| Lead {
            exp: &t.exp,
            index: 0,
            coeff: &t.coeff,
        })
    }

    fn cmp_lead(&self, other: &Self) -> Ordering {
        match (self.leading_monomial(), other.leading_monomial()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => self.algebra().compare(a, b),
        }
    }

    fn shifted(&self, c: &CoeffElem, gamma: &ExponentVector) -> Self {
        NCPolynomial::shifted(self, c, gamma)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn zero_like(&self) -> Self {
        NCPolynomial::zero(self.algebra())
    }

    fn degree(&self) -> Option<u32> {
        NCPolynomial::degree(self)
    }

    fn same_space(&self, other: &Self) -> bool {
        self.algebra().ptr_eq(other.algebra())
    }

    fn render(&self) -> String {
        NCPolynomial::render(self)
    }
}

/// Solves `target = Σ r_j scalars_j` in the coefficient ring.
pub trait CoefficientSolver {
    fn solve(
        &self,
        ring: &CoeffRing,
        target: &CoeffElem,
        scalars: &[CoeffElem],
    ) -> Result<Option<Vec<CoeffElem>>>;
}

/// The ring's own membership test.
#[derive(Clone, Copy, Debug, Default)]
pub struct MembershipSolver;

impl CoefficientSolver for MembershipSolver {
    fn solve(
        &self,
        ring: &CoeffRing,
        target: &CoeffElem,
        scalars: &[CoeffElem],
    ) -> Result<Option<Vec<CoeffElem>>> {
        ring.divide_member(target, scalars)
    }
}

/// A table of prescribed solutions, consulted before the ring's membership
/// test. Lets a division reproduce a particular sequence of coefficient
/// choices; every entry is checked when it is added.
#[derive(Clone, Debug, Default)]
pub struct ScriptedSolver {
    entries: Vec<(CoeffElem, Vec<CoeffElem>, Vec<CoeffElem>)>,
}

impl ScriptedSolver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Use `solution` whenever the equation is `target = Σ r_j scalars_j`.
    /// Fails if `solution` does not satisfy it.
    pub fn with(
        mut self,
        target: CoeffElem,
        scalars: Vec<CoeffElem>,
        solution: Vec<CoeffElem>,
    ) -> Result<Self> {
        if solution.len() != scalars.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} scalars",
                solution.len(),
                scalars.len()
            )));
        }
        let sum = solution
            .iter()
            .zip(&scalars)
            .fold(CoeffElem::zero(), |acc, (r, s)| &acc + &(r * s));
        if sum != target {
            return Err(Error::Verification(format!(
                "scripted solution does not reach {target}"
            )));
        }
        self.entries.push((target, scalars, solution));
        Ok(self)
    }
}

impl CoefficientSolver for ScriptedSolver {
    fn solve(
        &self,
        ring: &CoeffRing,
        target: &CoeffElem,
        scalars: &[CoeffElem],
    ) -> Result<Option<Vec<CoeffElem>>> {
        for (t, s, sol) in &self.entries {
            if t == target && s.as_slice() == scalars {
                return Ok(Some(sol.clone()));
            }
        }
        ring.divide_member(target, scalars)
    }
}

/// One summand `coeff · x^shift · f_divisor` of a reduction step.
#[derive(Clone, Debug, PartialEq)]
pub struct StepTerm {
    pub divisor: usize,
    pub coeff: CoeffElem,
    pub shift: ExponentVector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivisionStep<E> {
    /// Leading exponent and component of the element before the step.
    pub lead: ExponentVector,
    pub index: usize,
    pub used: Vec<StepTerm>,
    /// The element after the step.
    pub remainder: E,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivisionResult<E> {
    pub quotients: Vec<NCPolynomial>,
    pub remainder: E,
    pub trace: Vec<DivisionStep<E>>,
}

fn check_divisors<E: GbElement>(f: Option<&E>, divisors: &[E]) -> Result<()> {
    if divisors.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    for (k, g) in divisors.iter().enumerate() {
        if g.is_zero() {
            return Err(Error::ZeroDivisor(k + 1));
        }
        if !g.same_space(&divisors[0]) {
            return Err(Error::MixedAlgebras);
        }
    }
    if let Some(f) = f {
        if !f.same_space(&divisors[0]) {
            return Err(Error::MixedAlgebras);
        }
    }
    Ok(())
}

/// One top-reduction of `h` by `divisors`, or `None` if `h` is reduced.
fn reduction_step<E: GbElement>(
    h: &E,
    divisors: &[E],
    solver: &dyn CoefficientSolver,
) -> Result<Option<(E, Vec<StepTerm>)>> {
    let Some(lead) = h.lead() else {
        return Ok(None);
    };
    let alg = h.algebra();
    let pres = alg.presentation();
    let mut idx = Vec::new();
    let mut shifts = Vec::new();
    let mut scalars = Vec::new();
    for (j, f) in divisors.iter().enumerate() {
        let fl = f.lead().expect("divisors are nonzero");
        if fl.index != lead.index {
            continue;
        }
        if let Some(alpha) = lead.exp.checked_sub(fl.exp) {
            let s = &pres.sigma_alpha(&alpha, fl.coeff) * &alg.structure_constant(&alpha, fl.exp);
            idx.push(j);
            shifts.push(alpha);
            scalars.push(s);
        }
    }
    if idx.is_empty() {
        return Ok(None);
    }
    let Some(r) = solver.solve(alg.ring(), lead.coeff, &scalars)? else {
        return Ok(None);
    };
    let mut next = h.clone();
    let mut used = Vec::new();
    for ((j, alpha), rj) in idx.into_iter().zip(shifts).zip(r) {
        if rj.is_zero() {
            continue;
        }
        next = next.minus(&divisors[j].shifted(&rj, &alpha));
        used.push(StepTerm {
            divisor: j,
            coeff: rj,
            shift: alpha,
        });
    }
    if next.cmp_lead(h) != Ordering::Less {
        return Err(Error::Verification(format!(
            "reduction did not lower the leading monomial of {}",
            h.render()
        )));
    }
    Ok(Some((next, used)))
}

/// One reduction step of `f` by `divisors`; `None` when `f` is reduced.
pub fn reduce_once<E: GbElement>(f: &E, divisors: &[E]) -> Result<Option<E>> {
    check_divisors(Some(f), divisors)?;
    Ok(reduction_step(f, divisors, &MembershipSolver)?.map(|(h, _)| h))
}

pub fn divide<E: GbElement>(f: &E, divisors: &[E]) -> Result<DivisionResult<E>> {
    divide_with(f, divisors, &MembershipSolver, false)
}

/// The division algorithm with an explicit coefficient solver. Reduction stops
/// as soon as the leading term can no longer be cancelled; the rest of the
/// element is returned untouched as the remainder.
pub fn divide_with<E: GbElement>(
    f: &E,
    divisors: &[E],
    solver: &dyn CoefficientSolver,
    record_trace: bool,
) -> Result<DivisionResult<E>> {
    check_divisors(Some(f), divisors)?;
    let alg = f.algebra().clone();
    let mut qterms: Vec<Vec<Term>> = vec![Vec::new(); divisors.len()];
    let mut trace = Vec::new();
    let mut h = f.clone();
    loop {
        let lead = h.lead().map(|l| (l.exp.clone(), l.index));
        let Some((next, used)) = reduction_step(&h, divisors, solver)? else {
            break;
        };
        for st in &used {
            qterms[st.divisor].push(Term::new(st.coeff.clone(), st.shift.clone()));
        }
        if record_trace {
            let (exp, index) = lead.expect("reduced a nonzero element");
            trace.push(DivisionStep {
                lead: exp,
                index,
                used,
                remainder: next.clone(),
            });
        }
        h = next;
    }
    Ok(DivisionResult {
        quotients: qterms
            .into_iter()
            .map(|ts| NCPolynomial::from_terms(&alg, ts))
            .collect(),
        remainder: h,
        trace,
    })
}

/// The data of a `B_F` set for a subset of a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BFData {
    pub subset: Vec<usize>,
    /// Common leading component.
    pub index: usize,
    /// Exponent of `X_F`.
    pub lcm: ExponentVector,
    /// `γ_i` with `γ_i + β_i = exp(X_F)`.
    pub offsets: Vec<ExponentVector>,
    /// `σ^{γ_i}(lc(g_i)) c_{γ_i, β_i}`.
    pub scalars: Vec<CoeffElem>,
    pub generators: SyzygyGenerators,
}

impl BFData {
    /// `Σ b_i x^{γ_i} g_i`.
    pub fn combination<E: GbElement>(&self, basis: &[E], b: &[CoeffElem]) -> E {
        let mut acc = basis[self.subset[0]].zero_like();
        for ((&k, gamma), bi) in self.subset.iter().zip(&self.offsets).zip(b) {
            if !bi.is_zero() {
                acc = acc.plus(&basis[k].shifted(bi, gamma));
            }
        }
        acc
    }
}

/// `B_F` for `F = {basis[k] : k ∈ subset}`; `None` when the leading components
/// differ (`X_F = 0`).
pub fn bf_set<E: GbElement>(basis: &[E], subset: &[usize]) -> Result<Option<BFData>> {
    if subset.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let mut leads = Vec::with_capacity(subset.len());
    for &k in subset {
        let g = basis.get(k).ok_or(Error::IndexOutOfRange {
            index: k + 1,
            len: basis.len(),
        })?;
        leads.push(g.lead().ok_or(Error::ZeroDivisor(k + 1))?);
    }
    let index = leads[0].index;
    if leads.iter().any(|l| l.index != index) {
        return Ok(None);
    }
    let alg = basis[subset[0]].algebra();
    let pres = alg.presentation();
    let lcm = leads[1..]
        .iter()
        .fold(leads[0].exp.clone(), |acc, l| acc.lcm(l.exp));
    let mut offsets = Vec::with_capacity(leads.len());
    let mut scalars = Vec::with_capacity(leads.len());
    for l in &leads {
        let gamma = lcm.checked_sub(l.exp).expect("lcm is a multiple");
        scalars.push(&pres.sigma_alpha(&gamma, l.coeff) * &alg.structure_constant(&gamma, l.exp));
        offsets.push(gamma);
    }
    let generators = alg.ring().syzygy_generators(&scalars)?;
    Ok(Some(BFData {
        subset: subset.to_vec(),
        index,
        lcm,
        offsets,
        scalars,
        generators,
    }))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuchbergerOptions {
    /// Largest subset size enumerated; `None` means all subsets.
    pub max_subset_size: Option<usize>,
    pub max_basis: Option<usize>,
    pub max_degree: Option<u32>,
    pub interreduce: bool,
}

impl BuchbergerOptions {
    /// Pairs and singletons only; complete when the coefficients form a field.
    pub fn pairs_only() -> Self {
        BuchbergerOptions {
            max_subset_size: Some(2),
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GbOutput<E> {
    pub basis: Vec<E>,
    pub rounds: usize,
    pub subsets_examined: usize,
    pub reductions: usize,
}

fn check_generators<E: GbElement>(gens: &[E]) -> Result<()> {
    check_divisors(None, gens)
}

/// Buchberger's algorithm. Each round enumerates the subsets of the basis that
/// contain an element added in the previous round, by increasing size and then
/// lexicographically; nonzero remainders are appended immediately and used by
/// later reductions of the same round.
pub fn buchberger<E: GbElement>(gens: &[E], opts: &BuchbergerOptions) -> Result<GbOutput<E>> {
    check_generators(gens)?;
    let mut basis: Vec<E> = gens.to_vec();
    let mut old = 0;
    let mut rounds = 0;
    let mut subsets_examined = 0;
    let mut reductions = 0;
    while old < basis.len() {
        rounds += 1;
        let len = basis.len();
        let cap = opts.max_subset_size.unwrap_or(len).min(len);
        for k in 1..=cap {
            for subset in (0..len).combinations(k) {
                if *subset.last().expect("k >= 1") < old {
                    continue;
                }
                let Some(bf) = bf_set(&basis, &subset)? else {
                    continue;
                };
                subsets_examined += 1;
                for b in bf.generators.iter() {
                    let combo = bf.combination(&basis, b);
                    if combo.is_zero() {
                        continue;
                    }
                    reductions += 1;
                    let rem = divide(&combo, &basis)?.remainder;
                    if rem.is_zero() {
                        continue;
                    }
                    if let (Some(max), Some(d)) = (opts.max_degree, rem.degree()) {
                        if d > max {
                            return Err(Error::ResourceGuard(format!(
                                "remainder of degree {d} exceeds --max-degree {max}"
                            )));
                        }
                    }
                    basis.push(rem);
                    if let Some(max) = opts.max_basis {
                        if basis.len() > max {
                            return Err(Error::ResourceGuard(format!(
                                "basis grew beyond --max-basis {max}"
                            )));
                        }
                    }
                }
            }
        }
        old = len;
    }
    if opts.interreduce {
        basis = interreduce(basis)?;
    }
    Ok(GbOutput {
        basis,
        rounds,
        subsets_examined,
        reductions,
    })
}

/// Drops, in basis order, every element whose leading term is reducible by the
/// elements still kept.
pub fn interreduce<E: GbElement>(basis: Vec<E>) -> Result<Vec<E>> {
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        let others: Vec<E> = (0..basis.len())
            .filter(|&j| j != i && keep[j])
            .map(|j| basis[j].clone())
            .collect();
        if others.is_empty() {
            continue;
        }
        if reduction_step(&basis[i], &others, &MembershipSolver)?.is_some() {
            keep[i] = false;
        }
    }
    Ok(basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CriterionReport {
    pub subsets: usize,
    pub combinations: usize,
    /// Subsets with a `B_F` combination that does not reduce to zero.
    pub failures: Vec<Vec<usize>>,
}

impl CriterionReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that every `B_F` combination over subsets of size `<= max_subset`
/// reduces to zero by `basis`.
pub fn check_criterion<E: GbElement>(basis: &[E], max_subset: usize) -> Result<CriterionReport> {
    check_generators(basis)?;
    let mut report = CriterionReport::default();
    for k in 1..=max_subset.min(basis.len()) {
        for subset in (0..basis.len()).combinations(k) {
            let Some(bf) = bf_set(basis, &subset)? else {
                continue;
            };
            report.subsets += 1;
            let mut ok = true;
            for b in bf.generators.iter() {
                report.combinations += 1;
                let combo = bf.combination(basis, b);
                if !divide(&combo, basis)?.remainder.is_zero() {
                    ok = false;
                }
            }
            if !ok {
                report.failures.push(subset);
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Membership {
    pub member: bool,
    pub quotients: Vec<NCPolynomial>,
}

/// Membership in the left ideal (or submodule) generated by a Gröbner basis.
pub fn is_member<E: GbElement>(f: &E, basis: &[E]) -> Result<Membership> {
    let res = divide(f, basis)?;
    Ok(Membership {
        member: res.remainder.is_zero(),
        quotients: res.quotients,
    })
}

/// `Σ q_i g_i`.
pub fn recombine<E: GbElement>(quotients: &[NCPolynomial], gens: &[E]) -> Result<E> {
    if quotients.len() != gens.len() || gens.is_empty() {
        return Err(Error::DimensionMismatch(format!(
            "{} quotients for {} generators",
            quotients.len(),
            gens.len()
        )));
    }
    let mut acc = gens[0].zero_like();
    for (q, g) in quotients.iter().zip(gens) {
        for t in q.terms() {
            acc = acc.plus(&g.shifted(&t.coeff, &t.exp));
        }
    }
    Ok(acc)
}
