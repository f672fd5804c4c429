//! Monomial orders on `Mon(A)` and module orders on `Mon(A^m)`.
//!
//! Only degree-compatible orders are admitted: the division algorithm relies on
//! them for termination.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// Total degree, then the leftmost (highest precedence) larger exponent wins.
    Deglex,
    /// Total degree, then the rightmost (lowest precedence) smaller exponent wins.
    Degrevlex,
}

/// A degree-compatible monomial order together with a variable precedence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    /// `precedence[k]` is the variable index ranked `k`-th highest.
    precedence: Vec<usize>,
}

impl MonomialOrder {
    /// Order with variables ranked in declaration order `x_1 > x_2 > ... > x_n`.
    pub fn new(kind: OrderKind, n: usize) -> Self {
        MonomialOrder {
            kind,
            precedence: (0..n).collect(),
        }
    }

    pub fn deglex(n: usize) -> Self {
        Self::new(OrderKind::Deglex, n)
    }

    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; precedence.len()];
        for &p in &precedence {
            if p >= seen.len() || seen[p] {
                return Err(Error::InvalidOrder(format!(
                    "variable precedence {precedence:?} is not a permutation"
                )));
            }
            seen[p] = true;
        }
        Ok(MonomialOrder { kind, precedence })
    }

    /// Parses an order kind name. Plain `lex` is rejected: it is not degree compatible.
    pub fn parse_kind(name: &str) -> Result<OrderKind> {
        match name {
            "deglex" => Ok(OrderKind::Deglex),
            "degrevlex" => Ok(OrderKind::Degrevlex),
            "lex" => Err(Error::InvalidOrder(
                "lex is not degree compatible; use deglex or degrevlex".into(),
            )),
            other => Err(Error::InvalidOrder(format!(
                "unknown monomial order `{other}`"
            ))),
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        debug_assert_eq!(a.len(), self.precedence.len());
        debug_assert_eq!(b.len(), self.precedence.len());
        let by_degree = a.degree().cmp(&b.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        match self.kind {
            OrderKind::Deglex => {
                for &v in &self.precedence {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Degrevlex => {
                for &v in self.precedence.iter().rev() {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        ord => return ord.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Checked comparison that reports a dimension mismatch instead of panicking.
    pub fn try_compare(&self, a: &ExponentVector, b: &ExponentVector) -> Result<Ordering> {
        let n = self.precedence.len();
        if a.len() != n || b.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "exponents of length {} and {} compared under an order on {n} variables",
                a.len(),
                b.len()
            )));
        }
        Ok(self.compare(a, b))
    }
}

/// Tie-breaking scheme on module monomials `X e_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleScheme {
    /// Term over position, larger index wins ties (`e_m > ... > e_1`).
    Top,
    /// Term over position, smaller index wins ties (`e_1 > ... > e_m`).
    TopRev,
}

impl ModuleScheme {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "top" => Ok(ModuleScheme::Top),
            "toprev" => Ok(ModuleScheme::TopRev),
            "pot" | "potrev" => Err(Error::InvalidOrder(format!(
                "{name} is not degree compatible; use top or toprev"
            ))),
            other => Err(Error::InvalidOrder(format!(
                "unknown module order `{other}`"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ModuleScheme::Top => "top",
            ModuleScheme::TopRev => "toprev",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Scheme {
    Term(ModuleScheme),
    /// Position first, smaller index dominant. Used only for the internal
    /// lift/syzygy computations where the data components must dominate the tags.
    Position,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleOrder {
    base: MonomialOrder,
    scheme: Scheme,
}

impl ModuleOrder {
    pub fn new(base: MonomialOrder, scheme: ModuleScheme) -> Self {
        ModuleOrder {
            base,
            scheme: Scheme::Term(scheme),
        }
    }

    pub(crate) fn position_over_term(base: MonomialOrder) -> Self {
        ModuleOrder {
            base,
            scheme: Scheme::Position,
        }
    }

    pub fn base(&self) -> &MonomialOrder {
        &self.base
    }

    /// The public scheme; `None` for the internal position-first order.
    pub fn scheme(&self) -> Option<ModuleScheme> {
        match self.scheme {
            Scheme::Term(s) => Some(s),
            Scheme::Position => None,
        }
    }

    /// Compares `a e_i` with `b e_j` (zero-based component indices).
    pub fn compare(&self, a: (&ExponentVector, usize), b: (&ExponentVector, usize)) -> Ordering {
        match self.scheme {
            Scheme::Term(s) => {
                let by_term = self.base.compare(a.0, b.0);
                if by_term != Ordering::Equal {
                    return by_term;
                }
                match s {
                    ModuleScheme::Top => a.1.cmp(&b.1),
                    ModuleScheme::TopRev => b.1.cmp(&a.1),
                }
            }
            Scheme::Position => b.1.cmp(&a.1).then_with(|| self.base.compare(a.0, b.0)),
        }
    }

    /// Checked comparison for user-facing callers with one-based indices in `1..=m`.
    pub fn module_compare(
        &self,
        m: usize,
        a: (&ExponentVector, usize),
        b: (&ExponentVector, usize),
    ) -> Result<Ordering> {
        for idx in [a.1, b.1] {
            if idx == 0 || idx > m {
                return Err(Error::IndexOutOfRange { index: idx, len: m });
            }
        }
        self.base.try_compare(a.0, b.0)?;
        Ok(self.compare((a.0, a.1 - 1), (b.0, b.1 - 1)))
    }
}
