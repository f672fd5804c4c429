//! Turns a parsed file into a presentation, an algebra and named values.

use std::collections::HashMap;

use spbw_core::{
    Algebra, CoeffElem, CoeffRing, ExponentVector, ModuleScheme, MonomialOrder, NCPolynomial,
    Presentation, PresentationBuilder, Relation, ScriptedSolver, SkewDerivation, TwistMap,
};

use crate::ast::*;
use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Symbol {
    Generator(usize),
    Var(usize),
    Def(usize),
}

#[derive(Clone, Debug)]
pub enum Evaluated {
    Poly(NCPolynomial),
    Vector(Vec<NCPolynomial>),
    /// Columns of `F`, as written.
    Matrix(Vec<Vec<NCPolynomial>>),
}

impl Evaluated {
    pub fn kind(&self) -> &'static str {
        match self {
            Evaluated::Poly(_) => "a polynomial",
            Evaluated::Vector(_) => "a vector",
            Evaluated::Matrix(_) => "a matrix",
        }
    }
}

/// Command-line overrides of the header.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub order: Option<OrderDecl>,
    pub module_order: Option<String>,
}

pub struct Session {
    pub file: File,
    pub ring: CoeffRing,
    pub presentation: Presentation,
    pub order: MonomialOrder,
    pub module_scheme: ModuleScheme,
    symbols: HashMap<String, Symbol>,
    /// Definition names in source order, with their items.
    defs: Vec<(Ident, Value)>,
    chooses: Vec<(Expr, Vec<Expr>, Vec<Expr>, Span)>,
}

pub struct Evaluation {
    pub algebra: Algebra,
    pub values: HashMap<String, Evaluated>,
    pub solver: ScriptedSolver,
}

fn declare(symbols: &mut HashMap<String, Symbol>, id: &Ident, sym: Symbol) -> CliResult<()> {
    if symbols.contains_key(&id.name) {
        return Err(CliError::input(
            format!("`{}` is already declared", id.name),
            id.span,
        ));
    }
    symbols.insert(id.name.clone(), sym);
    Ok(())
}

fn var_index(symbols: &HashMap<String, Symbol>, id: &Ident) -> CliResult<usize> {
    match symbols.get(&id.name) {
        Some(Symbol::Var(i)) => Ok(*i),
        Some(_) => Err(CliError::input(
            format!("`{}` is not a variable", id.name),
            id.span,
        )),
        None => Err(CliError::input(
            format!("undeclared variable `{}`", id.name),
            id.span,
        )),
    }
}

fn gen_index(symbols: &HashMap<String, Symbol>, id: &Ident) -> CliResult<usize> {
    match symbols.get(&id.name) {
        Some(Symbol::Generator(k)) => Ok(*k),
        Some(_) => Err(CliError::input(
            format!("`{}` is not a coefficient generator", id.name),
            id.span,
        )),
        None => Err(CliError::input(
            format!("undeclared coefficient generator `{}`", id.name),
            id.span,
        )),
    }
}

/// Evaluates an expression in the coefficient ring.
fn eval_coeff(symbols: &HashMap<String, Symbol>, e: &Expr) -> CliResult<CoeffElem> {
    Ok(match &e.kind {
        ExprKind::Num(q) => CoeffElem::from_rational(q.clone()),
        ExprKind::Name(n) => match symbols.get(n) {
            Some(Symbol::Generator(k)) => CoeffElem::generator(*k),
            Some(_) => {
                return Err(CliError::input(
                    format!("`{n}` is not a coefficient"),
                    e.span,
                ))
            }
            None => {
                return Err(CliError::input(
                    format!("undeclared identifier `{n}`"),
                    e.span,
                ))
            }
        },
        ExprKind::Neg(a) => -eval_coeff(symbols, a)?,
        ExprKind::Add(a, b) => &eval_coeff(symbols, a)? + &eval_coeff(symbols, b)?,
        ExprKind::Sub(a, b) => &eval_coeff(symbols, a)? - &eval_coeff(symbols, b)?,
        ExprKind::Mul(a, b) => &eval_coeff(symbols, a)? * &eval_coeff(symbols, b)?,
        ExprKind::Pow(a, n) => eval_coeff(symbols, a)?.pow(*n),
    })
}

/// Every name in `e` resolves; with `ring_only`, only coefficient generators
/// are allowed.
fn resolve(symbols: &HashMap<String, Symbol>, e: &Expr, ring_only: bool) -> CliResult<()> {
    match &e.kind {
        ExprKind::Num(_) => Ok(()),
        ExprKind::Name(n) => match symbols.get(n) {
            None => Err(CliError::input(
                format!("undeclared identifier `{n}`"),
                e.span,
            )),
            Some(Symbol::Generator(_)) => Ok(()),
            Some(_) if ring_only => Err(CliError::input(
                format!("`{n}` is not a coefficient"),
                e.span,
            )),
            Some(_) => Ok(()),
        },
        ExprKind::Neg(a) | ExprKind::Pow(a, _) => resolve(symbols, a, ring_only),
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) => {
            resolve(symbols, a, ring_only)?;
            resolve(symbols, b, ring_only)
        }
    }
}

fn mentions_var(symbols: &HashMap<String, Symbol>, e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Num(_) => false,
        ExprKind::Name(n) => matches!(symbols.get(n), Some(Symbol::Var(_))),
        ExprKind::Neg(a) | ExprKind::Pow(a, _) => mentions_var(symbols, a),
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) => {
            mentions_var(symbols, a) || mentions_var(symbols, b)
        }
    }
}

fn flatten_product<'a>(e: &'a Expr, out: &mut Vec<&'a Expr>) {
    if let ExprKind::Mul(a, b) = &e.kind {
        flatten_product(a, out);
        flatten_product(b, out);
    } else {
        out.push(e);
    }
}

/// Relation right-hand sides are read as standard-form data: in every product
/// the coefficient factors come first and the variables follow in
/// declaration order.
fn check_standard_form(symbols: &HashMap<String, Symbol>, e: &Expr) -> CliResult<()> {
    match &e.kind {
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
            check_standard_form(symbols, a)?;
            check_standard_form(symbols, b)
        }
        ExprKind::Neg(a) => check_standard_form(symbols, a),
        _ => {
            let mut factors = Vec::new();
            flatten_product(e, &mut factors);
            let mut last_var: Option<usize> = None;
            for f in factors {
                if !mentions_var(symbols, f) {
                    if last_var.is_some() {
                        return Err(CliError::input(
                            "coefficients must precede the variables in a relation",
                            f.span,
                        ));
                    }
                    continue;
                }
                let var = match &f.kind {
                    ExprKind::Name(n) => symbols.get(n),
                    ExprKind::Pow(b, _) => match &b.kind {
                        ExprKind::Name(n) => symbols.get(n),
                        _ => None,
                    },
                    _ => None,
                };
                let Some(Symbol::Var(i)) = var else {
                    return Err(CliError::input(
                        "relation terms must be a coefficient times a standard monomial",
                        f.span,
                    ));
                };
                if last_var.is_some_and(|l| l > *i) {
                    return Err(CliError::input(
                        "variables in a relation term must follow the declaration order",
                        f.span,
                    ));
                }
                last_var = Some(*i);
            }
            Ok(())
        }
    }
}

/// Evaluates an expression in `alg`, with definitions from `values`.
fn eval_poly(
    alg: &Algebra,
    symbols: &HashMap<String, Symbol>,
    values: &HashMap<String, Evaluated>,
    e: &Expr,
) -> CliResult<NCPolynomial> {
    let rec = |x: &Expr| eval_poly(alg, symbols, values, x);
    let wrap = |r: spbw_core::Result<NCPolynomial>| r.map_err(|err| CliError::from(err).at(e.span));
    Ok(match &e.kind {
        ExprKind::Num(q) => NCPolynomial::constant(alg, CoeffElem::from_rational(q.clone())),
        ExprKind::Name(n) => match symbols.get(n) {
            Some(Symbol::Generator(k)) => NCPolynomial::constant(alg, CoeffElem::generator(*k)),
            Some(Symbol::Var(i)) => NCPolynomial::variable(alg, *i),
            Some(Symbol::Def(_)) => match values.get(n) {
                Some(Evaluated::Poly(p)) => p.clone(),
                Some(other) => {
                    return Err(CliError::input(
                        format!("`{n}` is {}, not a polynomial", other.kind()),
                        e.span,
                    ))
                }
                None => {
                    return Err(CliError::input(
                        format!("`{n}` is used before its definition"),
                        e.span,
                    ))
                }
            },
            None => {
                return Err(CliError::input(
                    format!("undeclared identifier `{n}`"),
                    e.span,
                ))
            }
        },
        ExprKind::Neg(a) => -&rec(a)?,
        ExprKind::Add(a, b) => wrap(rec(a)?.checked_add(&rec(b)?))?,
        ExprKind::Sub(a, b) => wrap(rec(a)?.checked_sub(&rec(b)?))?,
        ExprKind::Mul(a, b) => wrap(rec(a)?.checked_mul(&rec(b)?))?,
        ExprKind::Pow(a, n) => {
            let base = rec(a)?;
            let mut acc = NCPolynomial::one(alg);
            for _ in 0..*n {
                acc = wrap(acc.checked_mul(&base))?;
            }
            acc
        }
    })
}

fn twist_images(
    symbols: &HashMap<String, Symbol>,
    m: usize,
    entries: &[MapEntry],
    default: impl Fn(usize) -> CoeffElem,
) -> CliResult<Vec<CoeffElem>> {
    let mut images: Vec<Option<CoeffElem>> = vec![None; m];
    for entry in entries {
        let k = gen_index(symbols, &entry.generator)?;
        if images[k].is_some() {
            return Err(CliError::input(
                format!("`{}` is mapped twice", entry.generator.name),
                entry.generator.span,
            ));
        }
        images[k] = Some(eval_coeff(symbols, &entry.image)?);
    }
    Ok(images
        .into_iter()
        .enumerate()
        .map(|(k, img)| img.unwrap_or_else(|| default(k)))
        .collect())
}

pub fn resolve_order(vars: &[Ident], decl: &OrderDecl) -> CliResult<MonomialOrder> {
    let kind = MonomialOrder::parse_kind(&decl.kind.name)
        .map_err(|e| CliError::from(e).at(decl.kind.span))?;
    if decl.precedence.is_empty() {
        return Ok(MonomialOrder::new(kind, vars.len()));
    }
    let mut prec = Vec::new();
    for id in &decl.precedence {
        match vars.iter().position(|v| v.name == id.name) {
            Some(i) => prec.push(i),
            None => {
                return Err(CliError::input(
                    format!("undeclared variable `{}` in order clause", id.name),
                    id.span,
                ))
            }
        }
    }
    if prec.len() != vars.len() {
        return Err(CliError::input(
            "the order clause must rank every variable",
            decl.kind.span,
        ));
    }
    MonomialOrder::with_precedence(kind, prec).map_err(|e| CliError::from(e).at(decl.kind.span))
}

impl Session {
    pub fn new(file: File, overrides: &Overrides) -> CliResult<Self> {
        let h = &file.header;
        let mut symbols = HashMap::new();
        let gens: Vec<Ident> = match &h.ring {
            RingDecl::Rationals => Vec::new(),
            RingDecl::Polynomial(g) => g.clone(),
        };
        for (k, g) in gens.iter().enumerate() {
            declare(&mut symbols, g, Symbol::Generator(k))?;
        }
        for (i, v) in h.vars.iter().enumerate() {
            declare(&mut symbols, v, Symbol::Var(i))?;
        }
        let ring = if gens.is_empty() {
            CoeffRing::rationals()
        } else {
            CoeffRing::polynomial(gens.iter().map(|g| g.name.clone()).collect())
        };
        let m = ring.ngens();
        let n = h.vars.len();
        let var_names: Vec<String> = h.vars.iter().map(|v| v.name.clone()).collect();

        let mut builder = PresentationBuilder::new(ring.clone(), var_names.clone());
        let provisional =
            Algebra::with_deglex(PresentationBuilder::new(ring.clone(), var_names).build())?;
        let mut seen_sigma = vec![false; n];
        let mut seen_delta = vec![false; n];
        let mut seen_rel = HashMap::new();
        let mut defs = Vec::new();
        let mut chooses = Vec::new();
        for item in &file.items {
            match item {
                Item::Sigma {
                    var,
                    images,
                    inverse,
                    span,
                } => {
                    let i = var_index(&symbols, var)?;
                    if std::mem::replace(&mut seen_sigma[i], true) {
                        return Err(CliError::input(
                            format!("second sigma for `{}`", var.name),
                            *span,
                        ));
                    }
                    let imgs = twist_images(&symbols, m, images, CoeffElem::generator)?;
                    let inv = match inverse {
                        Some(entries) => {
                            Some(twist_images(&symbols, m, entries, CoeffElem::generator)?)
                        }
                        None if images.is_empty() => Some(imgs.clone()),
                        None => None,
                    };
                    builder.set_sigma(
                        i,
                        TwistMap {
                            images: imgs,
                            inverse: inv,
                        },
                    );
                }
                Item::Delta { var, images, span } => {
                    let i = var_index(&symbols, var)?;
                    if std::mem::replace(&mut seen_delta[i], true) {
                        return Err(CliError::input(
                            format!("second delta for `{}`", var.name),
                            *span,
                        ));
                    }
                    let imgs = twist_images(&symbols, m, images, |_| CoeffElem::zero())?;
                    builder.set_delta(i, SkewDerivation { images: imgs });
                }
                Item::Relation { left, rhs, span } => {
                    let j = var_index(&symbols, &left.0)?;
                    let i = var_index(&symbols, &left.1)?;
                    if j <= i {
                        return Err(CliError::input(
                            "left side must be x_j x_i with j > i",
                            left.0.span.join(left.1.span),
                        ));
                    }
                    if seen_rel.insert((i, j), ()).is_some() {
                        return Err(CliError::input(
                            format!("second relation for {}*{}", left.0.name, left.1.name),
                            *span,
                        ));
                    }
                    check_standard_form(&symbols, rhs)?;
                    let p = eval_poly(&provisional, &symbols, &HashMap::new(), rhs)?;
                    builder.set_relation(i, j, relation_data(&p, i, j, n, rhs.span)?)?;
                }
                Item::Let { name, value, .. } => {
                    let exprs: Vec<&Expr> = match value {
                        Value::Poly(e) => vec![e],
                        Value::Vector(es) => es.iter().collect(),
                        Value::Matrix(rows) => rows.iter().flatten().collect(),
                    };
                    for e in exprs {
                        resolve(&symbols, e, false)?;
                    }
                    declare(&mut symbols, name, Symbol::Def(defs.len()))?;
                    defs.push((name.clone(), value.clone()));
                }
                Item::Choose {
                    target,
                    scalars,
                    solution,
                    span,
                } => {
                    for e in std::iter::once(target).chain(scalars).chain(solution) {
                        resolve(&symbols, e, true)?;
                    }
                    chooses.push((target.clone(), scalars.clone(), solution.clone(), *span));
                }
                Item::Command { command, .. } => check_command_names(&symbols, command)?,
            }
        }
        let presentation = builder.build();
        let order = resolve_order(&h.vars, overrides.order.as_ref().unwrap_or(&h.order))?;
        let scheme_name = overrides
            .module_order
            .clone()
            .or_else(|| h.module_order.as_ref().map(|m| m.name.clone()))
            .unwrap_or_else(|| "top".to_string());
        let module_scheme = ModuleScheme::parse(&scheme_name).map_err(|e| {
            let err = CliError::from(e);
            match &h.module_order {
                Some(id) if overrides.module_order.is_none() => err.at(id.span),
                _ => err,
            }
        })?;
        Ok(Session {
            file,
            ring,
            presentation,
            order,
            module_scheme,
            symbols,
            defs,
            chooses,
        })
    }

    pub fn check_command(&self, cmd: &Command) -> CliResult<()> {
        check_command_names(&self.symbols, cmd)
    }

    /// Builds the algebra (which validates the presentation) and evaluates
    /// every definition and prescribed solution.
    pub fn evaluate(&self) -> CliResult<Evaluation> {
        let algebra = Algebra::new(self.presentation.clone(), self.order.clone())?;
        let mut values = HashMap::new();
        for (name, value) in &self.defs {
            let ev = match value {
                Value::Poly(e) => Evaluated::Poly(eval_poly(&algebra, &self.symbols, &values, e)?),
                Value::Vector(es) => Evaluated::Vector(
                    es.iter()
                        .map(|e| eval_poly(&algebra, &self.symbols, &values, e))
                        .collect::<CliResult<_>>()?,
                ),
                Value::Matrix(rows) => {
                    let width = rows[0].len();
                    if let Some(bad) = rows.iter().find(|r| r.len() != width) {
                        return Err(CliError::input(
                            format!("matrix rows have lengths {width} and {}", bad.len()),
                            bad[0].span.join(bad[bad.len() - 1].span),
                        ));
                    }
                    Evaluated::Matrix(
                        rows.iter()
                            .map(|r| {
                                r.iter()
                                    .map(|e| eval_poly(&algebra, &self.symbols, &values, e))
                                    .collect::<CliResult<Vec<_>>>()
                            })
                            .collect::<CliResult<_>>()?,
                    )
                }
            };
            values.insert(name.name.clone(), ev);
        }
        let mut solver = ScriptedSolver::new();
        for (target, scalars, solution, span) in &self.chooses {
            if scalars.len() != solution.len() {
                return Err(CliError::input(
                    format!(
                        "{} scalars but {} coefficients",
                        scalars.len(),
                        solution.len()
                    ),
                    *span,
                ));
            }
            let coeffs = |es: &[Expr]| {
                es.iter()
                    .map(|e| eval_coeff(&self.symbols, e))
                    .collect::<CliResult<Vec<_>>>()
            };
            solver = solver
                .with(
                    eval_coeff(&self.symbols, target)?,
                    coeffs(scalars)?,
                    coeffs(solution)?,
                )
                .map_err(|e| CliError::input(e.to_string(), *span))?;
        }
        Ok(Evaluation {
            algebra,
            values,
            solver,
        })
    }
}

fn check_command_names(symbols: &HashMap<String, Symbol>, cmd: &Command) -> CliResult<()> {
    let names: Vec<&Ident> = match cmd {
        Command::Validate => vec![],
        Command::Mul(a) | Command::Gb(a) | Command::ModGb(a) => a.iter().collect(),
        Command::Divide { f, by } => std::iter::once(f).chain(by).collect(),
        Command::Linv(a) | Command::Unimod(a) | Command::IdemDiag(a) => vec![a],
    };
    for id in names {
        match symbols.get(&id.name) {
            Some(Symbol::Def(_)) => {}
            Some(_) => {
                return Err(CliError::input(
                    format!(
                        "`{}` is not a definition; commands take `let` names",
                        id.name
                    ),
                    id.span,
                ))
            }
            None => {
                return Err(CliError::input(
                    format!("undeclared identifier `{}`", id.name),
                    id.span,
                ))
            }
        }
    }
    Ok(())
}

/// Splits `c·x_i x_j + (terms of degree ≤ 1)`.
fn relation_data(
    p: &NCPolynomial,
    i: usize,
    j: usize,
    n: usize,
    span: Span,
) -> CliResult<Relation> {
    let mut quad = vec![0u32; n];
    quad[i] = 1;
    quad[j] = 1;
    let quad = ExponentVector::new(quad);
    let mut constant = CoeffElem::zero();
    let mut tail = Vec::new();
    for t in p.terms() {
        let exps = t.exp.as_slice();
        let deg: u32 = exps.iter().sum();
        if t.exp == quad {
            constant = t.coeff.clone();
        } else if deg == 0 {
            tail.push((t.coeff.clone(), None));
        } else if deg == 1 {
            let k = exps.iter().position(|&e| e == 1).expect("degree one");
            tail.push((t.coeff.clone(), Some(k)));
        } else {
            return Err(CliError::input(
                "right side must be c*x_i*x_j plus terms of degree at most 1",
                span,
            ));
        }
    }
    Ok(Relation { constant, tail })
}
