//! Syntax tree of a `.spbw` file.
//!
//! Every node carries a [`Span`]; spans compare equal unconditionally so that
//! trees parsed from differently formatted text can be compared directly.

use num_rational::BigRational;

/// Byte range in the source text.
#[derive(Clone, Copy, Debug, Default, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    /// Nonnegative literal; signs are separate nodes.
    Num(BigRational),
    Name(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
pub enum RingDecl {
    Rationals,
    Polynomial(Vec<Ident>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderDecl {
    pub kind: Ident,
    /// Empty means declaration order.
    pub precedence: Vec<Ident>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Header {
    pub ring: RingDecl,
    pub vars: Vec<Ident>,
    pub order: OrderDecl,
    pub module_order: Option<Ident>,
}

/// `generator -> image`.
#[derive(Clone, Debug, PartialEq)]
pub struct MapEntry {
    pub generator: Ident,
    pub image: Expr,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Poly(Expr),
    /// A column `[f1 ; ... ; fm]`.
    Vector(Vec<Expr>),
    /// Rows of `Fᵀ`, i.e. the columns of `F`.
    Matrix(Vec<Vec<Expr>>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Validate,
    Mul(Vec<Ident>),
    Divide { f: Ident, by: Vec<Ident> },
    Gb(Vec<Ident>),
    ModGb(Vec<Ident>),
    Linv(Ident),
    Unimod(Ident),
    IdemDiag(Ident),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Mul(_) => "mul",
            Command::Divide { .. } => "divide",
            Command::Gb(_) => "gb",
            Command::ModGb(_) => "modgb",
            Command::Linv(_) => "linv",
            Command::Unimod(_) => "unimod",
            Command::IdemDiag(_) => "idem-diag",
        }
    }
}

pub const COMMANDS: [&str; 8] = [
    "validate",
    "mul",
    "divide",
    "gb",
    "modgb",
    "linv",
    "unimod",
    "idem-diag",
];

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Sigma {
        var: Ident,
        images: Vec<MapEntry>,
        inverse: Option<Vec<MapEntry>>,
        span: Span,
    },
    Delta {
        var: Ident,
        images: Vec<MapEntry>,
        span: Span,
    },
    /// `left.0 * left.1 = rhs`, i.e. `x_j * x_i`.
    Relation {
        left: (Ident, Ident),
        rhs: Expr,
        span: Span,
    },
    Let {
        name: Ident,
        value: Value,
        span: Span,
    },
    /// A prescribed coefficient solution `target = Σ solution_k scalars_k`.
    Choose {
        target: Expr,
        scalars: Vec<Expr>,
        solution: Vec<Expr>,
        span: Span,
    },
    Command {
        command: Command,
        span: Span,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct File {
    pub header: Header,
    pub items: Vec<Item>,
}

impl File {
    pub fn commands(&self) -> impl Iterator<Item = (&Command, Span)> {
        self.items.iter().filter_map(|it| match it {
            Item::Command { command, span } => Some((command, *span)),
            _ => None,
        })
    }
}
