//! Skew PBW extensions `A = σ(R)⟨x_1, ..., x_n⟩` given by generator data.
//!
//! The commutation rules are
//!
//! ```text
//! x_i r   = σ_i(r) x_i + δ_i(r)
//! x_j x_i = c_ij x_i x_j + d_ij        (i < j, d_ij ∈ R + R x_1 + ... + R x_n)
//! ```
//!
//! `σ_i` and `δ_i` are specified on the coefficient generators and extended as a
//! ring endomorphism and a `σ_i`-derivation. Bijectivity of `σ_i` is certified by
//! user-supplied inverse images.

use std::fmt;

use crate::coeffring::{CoeffElem, CoeffRing};
use crate::error::{Error, Result};
use crate::exponent::ExponentVector;

/// Images of the coefficient generators under `σ_i`, with the images under `σ_i⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistMap {
    pub images: Vec<CoeffElem>,
    pub inverse: Option<Vec<CoeffElem>>,
}

impl TwistMap {
    pub fn identity(m: usize) -> Self {
        let ids: Vec<_> = (0..m).map(CoeffElem::generator).collect();
        TwistMap {
            images: ids.clone(),
            inverse: Some(ids),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(k, img)| *img == CoeffElem::generator(k))
    }
}

/// Images `δ_i(t_k)` of the coefficient generators.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewDerivation {
    pub images: Vec<CoeffElem>,
}

impl SkewDerivation {
    pub fn zero(m: usize) -> Self {
        SkewDerivation {
            images: vec![CoeffElem::zero(); m],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(CoeffElem::is_zero)
    }
}

/// `x_j x_i = constant · x_i x_j + Σ tail`, where each tail entry is a
/// coefficient times either `1` (`None`) or a single variable.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub constant: CoeffElem,
    pub tail: Vec<(CoeffElem, Option<usize>)>,
}

impl Relation {
    pub fn commuting() -> Self {
        Relation {
            constant: CoeffElem::one(),
            tail: Vec::new(),
        }
    }

    pub fn tail_is_zero(&self) -> bool {
        self.tail.iter().all(|(c, _)| c.is_zero())
    }
}

#[derive(Clone, Debug)]
pub struct Presentation {
    ring: CoeffRing,
    var_names: Vec<String>,
    sigma: Vec<TwistMap>,
    delta: Vec<SkewDerivation>,
    /// Upper-triangular pairs `(i, j)`, `i < j`, in row-major order.
    relations: Vec<Relation>,
    quasi_commutative: bool,
}

/// Builds a presentation; unspecified data defaults to `σ = id`, `δ = 0`,
/// `c_ij = 1`, `d_ij = 0`.
#[derive(Clone, Debug)]
pub struct PresentationBuilder {
    inner: Presentation,
}

impl PresentationBuilder {
    pub fn new(ring: CoeffRing, var_names: Vec<String>) -> Self {
        let n = var_names.len();
        let m = ring.ngens();
        PresentationBuilder {
            inner: Presentation {
                ring,
                sigma: vec![TwistMap::identity(m); n],
                delta: vec![SkewDerivation::zero(m); n],
                relations: vec![Relation::commuting(); n * n.saturating_sub(1) / 2],
                var_names,
                quasi_commutative: true,
            },
        }
    }

    pub fn nvars(&self) -> usize {
        self.inner.var_names.len()
    }

    pub fn sigma(mut self, var: usize, map: TwistMap) -> Self {
        self.inner.sigma[var] = map;
        self
    }

    pub fn delta(mut self, var: usize, der: SkewDerivation) -> Self {
        self.inner.delta[var] = der;
        self
    }

    /// Sets `x_j x_i = constant · x_i x_j + tail` for `i < j`.
    pub fn relation(mut self, i: usize, j: usize, rel: Relation) -> Result<Self> {
        self.set_relation(i, j, rel)?;
        Ok(self)
    }

    pub fn set_sigma(&mut self, var: usize, map: TwistMap) {
        self.inner.sigma[var] = map;
    }

    pub fn set_delta(&mut self, var: usize, der: SkewDerivation) {
        self.inner.delta[var] = der;
    }

    pub fn set_relation(&mut self, i: usize, j: usize, rel: Relation) -> Result<()> {
        let n = self.nvars();
        if i >= j || j >= n {
            return Err(Error::InvalidPresentation(format!(
                "relation must be x_j x_i with j > i (got i = {}, j = {})",
                i + 1,
                j + 1
            )));
        }
        self.inner.relations[pair_index(n, i, j)] = rel;
        Ok(())
    }

    /// Returns the (unvalidated) presentation.
    pub fn build(mut self) -> Presentation {
        self.inner.quasi_commutative = self.inner.compute_quasi_commutative();
        self.inner
    }
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    // rows i = 0..n-1 hold n-1-i entries
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// A failed axiom found by [`validate`].
#[derive(Clone, Debug, PartialEq)]
pub enum AxiomFailure {
    ConstantNotUnit { i: usize, j: usize },
    MissingInverse { var: usize },
    InverseMismatch { var: usize, generator: usize },
    Leibniz { var: usize, k: usize, l: usize },
    TailDegree { i: usize, j: usize },
    UnknownGenerator { context: String },
    Arity { context: String },
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomFailure::ConstantNotUnit { i, j } => {
                write!(f, "constant not a unit in relation x{}x{}", j + 1, i + 1)
            }
            AxiomFailure::MissingInverse { var } => {
                write!(
                    f,
                    "sigma of variable {} has no inverse certificate",
                    var + 1
                )
            }
            AxiomFailure::InverseMismatch { var, generator } => write!(
                f,
                "sigma of variable {} is not inverted on generator {}",
                var + 1,
                generator + 1
            ),
            AxiomFailure::Leibniz { var, k, l } => write!(
                f,
                "delta of variable {} violates the sigma-Leibniz rule on generators {} and {}",
                var + 1,
                k + 1,
                l + 1
            ),
            AxiomFailure::TailDegree { i, j } => write!(
                f,
                "tail of relation x{}x{} has degree > 1 or an unknown variable",
                j + 1,
                i + 1
            ),
            AxiomFailure::UnknownGenerator { context } => {
                write!(f, "unknown coefficient generator in {context}")
            }
            AxiomFailure::Arity { context } => write!(f, "wrong number of images in {context}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub failures: Vec<AxiomFailure>,
    pub quasi_commutative: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    /// Valid presentations are bijective by construction of the checks.
    pub fn is_bijective(&self) -> bool {
        self.is_valid()
    }
}

/// Checks the local axioms of a bijective skew PBW extension and reports each
/// failure. Global consistency (the PBW basis property) is not decidable from
/// the data and is not checked.
pub fn validate(p: &Presentation) -> ValidationReport {
    let mut failures = Vec::new();
    let m = p.ring.ngens();
    let n = p.nvars();
    let within = |c: &CoeffElem| c.support_width() <= m;

    for i in 0..n {
        let s = &p.sigma[i];
        if s.images.len() != m {
            failures.push(AxiomFailure::Arity {
                context: format!("sigma of variable {}", i + 1),
            });
            continue;
        }
        if !s.images.iter().all(within) {
            failures.push(AxiomFailure::UnknownGenerator {
                context: format!("sigma of variable {}", i + 1),
            });
            continue;
        }
        match &s.inverse {
            None => failures.push(AxiomFailure::MissingInverse { var: i }),
            Some(inv) if inv.len() != m || !inv.iter().all(within) => {
                failures.push(AxiomFailure::Arity {
                    context: format!("inverse of sigma of variable {}", i + 1),
                })
            }
            Some(inv) => {
                for k in 0..m {
                    let t = CoeffElem::generator(k);
                    let there_and_back = inv[k].substitute(&s.images);
                    let back_and_there = s.images[k].substitute(inv);
                    if there_and_back != t || back_and_there != t {
                        failures.push(AxiomFailure::InverseMismatch {
                            var: i,
                            generator: k,
                        });
                    }
                }
            }
        }
        let d = &p.delta[i];
        if d.images.len() != m {
            failures.push(AxiomFailure::Arity {
                context: format!("delta of variable {}", i + 1),
            });
            continue;
        }
        if !d.images.iter().all(within) {
            failures.push(AxiomFailure::UnknownGenerator {
                context: format!("delta of variable {}", i + 1),
            });
            continue;
        }
        // δ(t_k t_l) must not depend on the factor order.
        for k in 0..m {
            for l in (k + 1)..m {
                let tk = CoeffElem::generator(k);
                let tl = CoeffElem::generator(l);
                let lhs = &(&s.images[k] * &d.images[l]) + &(&d.images[k] * &tl);
                let rhs = &(&s.images[l] * &d.images[k]) + &(&d.images[l] * &tk);
                if lhs != rhs {
                    failures.push(AxiomFailure::Leibniz { var: i, k, l });
                }
            }
        }
    }

    for i in 0..n {
        for j in (i + 1)..n {
            let rel = p.relation(i, j);
            if !within(&rel.constant) {
                failures.push(AxiomFailure::UnknownGenerator {
                    context: format!("relation x{}x{}", j + 1, i + 1),
                });
            } else if p.ring.unit_inverse(&rel.constant).is_none() {
                failures.push(AxiomFailure::ConstantNotUnit { i, j });
            }
            if rel
                .tail
                .iter()
                .any(|(c, v)| !within(c) || v.is_some_and(|v| v >= n))
            {
                failures.push(AxiomFailure::TailDegree { i, j });
            }
        }
    }

    ValidationReport {
        failures,
        quasi_commutative: p.compute_quasi_commutative(),
    }
}

impl Presentation {
    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn twist(&self, var: usize) -> &TwistMap {
        &self.sigma[var]
    }

    pub fn derivation(&self, var: usize) -> &SkewDerivation {
        &self.delta[var]
    }

    /// The relation for `x_j x_i`, `i < j`.
    pub fn relation(&self, i: usize, j: usize) -> &Relation {
        &self.relations[pair_index(self.nvars(), i, j)]
    }

    pub fn is_quasi_commutative(&self) -> bool {
        self.quasi_commutative
    }

    pub fn has_derivations(&self) -> bool {
        self.delta.iter().any(|d| !d.is_zero())
    }

    fn compute_quasi_commutative(&self) -> bool {
        self.delta.iter().all(SkewDerivation::is_zero)
            && self.relations.iter().all(Relation::tail_is_zero)
    }

    /// True when every `σ_i` is the identity (the coefficients commute with the variables).
    pub fn sigma_is_identity(&self) -> bool {
        self.sigma.iter().all(TwistMap::is_identity)
    }

    pub fn sigma(&self, var: usize, r: &CoeffElem) -> CoeffElem {
        if r.is_constant() {
            return r.clone();
        }
        r.substitute(&self.sigma[var].images)
    }

    /// `δ_i(r)`, extended from the generator images by the `σ_i`-Leibniz rule.
    pub fn delta(&self, var: usize, r: &CoeffElem) -> CoeffElem {
        let d = &self.delta[var];
        if d.is_zero() || r.is_constant() {
            return CoeffElem::zero();
        }
        let mut out = CoeffElem::zero();
        for (mono, q) in r.raw_terms() {
            let term = self.delta_monomial(var, mono.exponents());
            out = &out + &term.scale(q);
        }
        out
    }

    fn delta_monomial(&self, var: usize, exps: &[u32]) -> CoeffElem {
        let Some(k) = exps.iter().position(|&e| e > 0) else {
            return CoeffElem::zero();
        };
        let mut rest = exps.to_vec();
        rest[k] -= 1;
        let rest_elem = CoeffElem::monomial(num_traits::One::one(), rest.clone());
        // δ(t_k u) = σ(t_k) δ(u) + δ(t_k) u
        let first = &self.sigma[var].images[k] * &self.delta_monomial(var, &rest);
        let second = &self.delta[var].images[k] * &rest_elem;
        &first + &second
    }

    /// `σ^α(r) = σ_1^{α_1} ∘ ... ∘ σ_n^{α_n} (r)`; `σ_n` is applied first.
    pub fn sigma_alpha(&self, alpha: &ExponentVector, r: &CoeffElem) -> CoeffElem {
        if r.is_constant() {
            return r.clone();
        }
        let mut out = r.clone();
        for i in (0..self.nvars()).rev() {
            for _ in 0..alpha[i] {
                out = self.sigma(i, &out);
            }
        }
        out
    }

    /// The quasi-commutative extension with the same `σ_i` and `c_ij` and all
    /// derivations and tails removed.
    pub fn associated_quasicommutative(&self) -> Presentation {
        let m = self.ring.ngens();
        Presentation {
            ring: self.ring.clone(),
            var_names: self.var_names.clone(),
            sigma: self.sigma.clone(),
            delta: vec![SkewDerivation::zero(m); self.nvars()],
            relations: self
                .relations
                .iter()
                .map(|r| Relation {
                    constant: r.constant.clone(),
                    tail: Vec::new(),
                })
                .collect(),
            quasi_commutative: true,
        }
    }

    /// Structural equality of the defining data (ignores caches in the ring).
    pub fn same_data(&self, other: &Presentation) -> bool {
        self.ring.gen_names() == other.ring.gen_names()
            && self.var_names == other.var_names
            && self.sigma == other.sigma
            && self.delta == other.delta
            && self.relations.len() == other.relations.len()
            && self.relations.iter().zip(&other.relations).all(|(a, b)| {
                a.constant == b.constant && {
                    let clean = |r: &Relation| {
                        let mut t: Vec<_> = r
                            .tail
                            .iter()
                            .filter(|(c, _)| !c.is_zero())
                            .cloned()
                            .collect();
                        t.sort_by_key(|(_, v)| *v);
                        t
                    };
                    clean(a) == clean(b)
                }
            })
    }
}
