//! Command execution and the text report.

use std::fmt::Write as _;

use spbw_core::{
    buchberger, check_criterion, divide_with, idempotent_diagonalize_division,
    is_unimodular_column, left_inverse, mod_buchberger, recombine, validate, Algebra,
    BuchbergerOptions, DivisionResult, GbElement, GbOutput, MatrixOverA, ModuleSpace, ModuleVector,
    NCPolynomial,
};

use crate::ast::{Command, Ident};
use crate::error::{CliError, CliResult};
use crate::eval::{Evaluated, Evaluation, Overrides, Session};
use crate::parser::parse;
use crate::render::render_command;

pub const REPORT_HEADER: &str = "# spbw-report v1";

/// Criterion check depth printed after `gb` and `modgb`.
const CRITERION_SUBSETS: usize = 3;

#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub trace: bool,
    pub pairs_only: bool,
    pub max_degree: Option<u32>,
    pub max_basis: Option<usize>,
    pub overrides: Overrides,
}

impl Flags {
    fn gb_options(&self) -> BuchbergerOptions {
        let mut opts = if self.pairs_only {
            BuchbergerOptions::pairs_only()
        } else {
            BuchbergerOptions::default()
        };
        opts.max_degree = self.max_degree;
        opts.max_basis = self.max_basis;
        opts
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

/// Parses `src` and runs `commands`, or the file's own command block when
/// `commands` is `None`.
pub fn run_source(src: &str, commands: Option<&[Command]>, flags: &Flags) -> Outcome {
    let mut out = String::new();
    out.push_str(REPORT_HEADER);
    out.push('\n');
    let fail = |mut out: String, e: CliError, src: &str| {
        let _ = writeln!(out, "error: {}", e.render(src));
        Outcome {
            code: e.class.exit_code(),
            report: out,
        }
    };
    let file = match parse(src) {
        Ok(f) => f,
        Err(e) => return fail(out, e, src),
    };
    let session = match Session::new(file, &flags.overrides) {
        Ok(s) => s,
        Err(e) => return fail(out, e, src),
    };
    write_header(&session, &mut out);
    let external = commands.is_some();
    let list: Vec<Command> = match commands {
        Some(c) => c.to_vec(),
        None => session.file.commands().map(|(c, _)| c.clone()).collect(),
    };
    if list.is_empty() {
        out.push_str("\n(no commands)\n");
        return Outcome {
            code: 0,
            report: out,
        };
    }
    let mut evaluation: Option<Evaluation> = None;
    for cmd in &list {
        let _ = writeln!(out, "\n> {}", render_command(cmd));
        // Spans of a command given on the command line do not point into the file.
        let local = |e: CliError| if external { strip_span(e) } else { e };
        let mut result = if external {
            session.check_command(cmd).map_err(strip_span)
        } else {
            Ok(())
        };
        if result.is_ok() && !matches!(cmd, Command::Validate) && evaluation.is_none() {
            result = session.evaluate().map(|ev| evaluation = Some(ev));
        }
        let result = result.and_then(|_| {
            execute(&session, evaluation.as_ref(), cmd, flags, &mut out).map_err(local)
        });
        if let Err(e) = result {
            return fail(out, e, src);
        }
    }
    Outcome {
        code: 0,
        report: out,
    }
}

fn strip_span(mut e: CliError) -> CliError {
    e.span = None;
    e
}

fn write_header(s: &Session, out: &mut String) {
    let h = &s.file.header;
    let gens = s.ring.gen_names();
    if gens.is_empty() {
        out.push_str("coeff QQ\n");
    } else {
        let _ = writeln!(out, "coeff QQ[{}]", gens.join(", "));
    }
    let vars: Vec<&str> = h.vars.iter().map(|v| v.name.as_str()).collect();
    let _ = writeln!(out, "vars {}", vars.join(", "));
    let names = s.presentation.var_names();
    let prec: Vec<&str> = s
        .order
        .precedence()
        .iter()
        .map(|&i| names[i].as_str())
        .collect();
    let kind = match s.order.kind() {
        spbw_core::OrderKind::Deglex => "deglex",
        spbw_core::OrderKind::Degrevlex => "degrevlex",
    };
    let _ = writeln!(out, "order {kind} {}", prec.join(" > "));
    let _ = writeln!(out, "module_order {}", s.module_scheme.name());
}

fn lookup<'a>(ev: &'a Evaluation, id: &Ident) -> CliResult<&'a Evaluated> {
    ev.values
        .get(&id.name)
        .ok_or_else(|| CliError::input(format!("undeclared identifier `{}`", id.name), id.span))
}

fn poly<'a>(ev: &'a Evaluation, id: &Ident) -> CliResult<&'a NCPolynomial> {
    match lookup(ev, id)? {
        Evaluated::Poly(p) => Ok(p),
        other => Err(CliError::input(
            format!("`{}` is {}, expected a polynomial", id.name, other.kind()),
            id.span,
        )),
    }
}

fn vectors(
    ev: &Evaluation,
    ids: &[&Ident],
    scheme: spbw_core::ModuleScheme,
) -> CliResult<Vec<ModuleVector>> {
    let mut comps = Vec::new();
    for id in ids {
        match lookup(ev, id)? {
            Evaluated::Vector(v) => comps.push(v),
            other => {
                return Err(CliError::input(
                    format!("`{}` is {}, expected a vector", id.name, other.kind()),
                    id.span,
                ))
            }
        }
    }
    let rank = comps[0].len();
    if let Some((id, v)) = ids.iter().zip(&comps).find(|(_, v)| v.len() != rank) {
        return Err(CliError::input(
            format!("`{}` has {} entries, expected {rank}", id.name, v.len()),
            id.span,
        ));
    }
    let space = ModuleSpace::new(&ev.algebra, rank, scheme)?;
    comps
        .into_iter()
        .map(|c| ModuleVector::from_components(&space, c).map_err(CliError::from))
        .collect()
}

/// `F` from a matrix literal (its columns) or a vector (a single column).
fn matrix(ev: &Evaluation, id: &Ident) -> CliResult<MatrixOverA> {
    let alg = &ev.algebra;
    let m = match lookup(ev, id)? {
        Evaluated::Matrix(cols) => MatrixOverA::from_rows(alg, cols.clone())?.transpose(),
        Evaluated::Vector(v) => {
            MatrixOverA::from_rows(alg, v.iter().map(|e| vec![e.clone()]).collect())?
        }
        Evaluated::Poly(_) => {
            return Err(CliError::input(
                format!("`{}` is a polynomial, expected a matrix", id.name),
                id.span,
            ))
        }
    };
    Ok(m)
}

fn columns(m: &MatrixOverA) -> String {
    m.transpose().render()
}

fn execute(
    session: &Session,
    ev: Option<&Evaluation>,
    cmd: &Command,
    flags: &Flags,
    out: &mut String,
) -> CliResult<()> {
    if let Command::Validate = cmd {
        return run_validate(session, out);
    }
    let ev = ev.expect("evaluated before every command but validate");
    match cmd {
        Command::Validate => unreachable!("handled above"),
        Command::Mul(args) => {
            let mut acc = poly(ev, &args[0])?.clone();
            for a in &args[1..] {
                acc = acc.checked_mul(poly(ev, a)?)?;
            }
            let names: Vec<&str> = args.iter().map(|a| a.name.as_str()).collect();
            let _ = writeln!(out, "{} = {}", names.join("*"), acc.render());
            Ok(())
        }
        Command::Divide { f, by } => {
            if let Evaluated::Vector(_) = lookup(ev, f)? {
                let ids: Vec<&Ident> = std::iter::once(f).chain(by).collect();
                let vs = vectors(ev, &ids, session.module_scheme)?;
                let res = divide_with(&vs[0], &vs[1..], &ev.solver, flags.trace)?;
                report_division(&vs[0], &vs[1..], &res, &f.name, flags.trace, true, out)
            } else {
                let target = poly(ev, f)?.clone();
                let divisors: Vec<NCPolynomial> = by
                    .iter()
                    .map(|d| poly(ev, d).cloned())
                    .collect::<CliResult<_>>()?;
                let res = divide_with(&target, &divisors, &ev.solver, flags.trace)?;
                report_division(&target, &divisors, &res, &f.name, flags.trace, false, out)
            }
        }
        Command::Gb(args) => {
            let gens: Vec<NCPolynomial> = args
                .iter()
                .map(|a| poly(ev, a).cloned())
                .collect::<CliResult<_>>()?;
            let res = buchberger(&gens, &flags.gb_options())?;
            report_basis(&res, "g", out)
        }
        Command::ModGb(args) => {
            let ids: Vec<&Ident> = args.iter().collect();
            let gens = vectors(ev, &ids, session.module_scheme)?;
            let res = mod_buchberger(&gens, &flags.gb_options())?;
            report_basis(&res, "g", out)
        }
        Command::Linv(id) => {
            let f = matrix(ev, id)?;
            let _ = writeln!(
                out,
                "F: {}x{}, columns {}",
                f.nrows(),
                f.ncols(),
                columns(&f)
            );
            match left_inverse(&f)? {
                Some(x) => {
                    let _ = writeln!(out, "left inverse X: columns {}", columns(&x));
                    check(x.mul(&f)?.is_identity(), "X F = I", out)
                }
                None => {
                    out.push_str("left inverse: none\n");
                    Err(CliError::math("F has no left inverse"))
                }
            }
        }
        Command::Unimod(id) => {
            let v = matrix(ev, id)?;
            if v.ncols() != 1 {
                return Err(CliError::input(
                    format!("`{}` is not a column ({} columns)", id.name, v.ncols()),
                    id.span,
                ));
            }
            let u = is_unimodular_column(&v)?;
            match u.certificate {
                Some(c) if u.unimodular => {
                    let row = MatrixOverA::from_rows(&ev.algebra, vec![c.clone()])?;
                    let cells: Vec<String> = c.iter().map(NCPolynomial::render).collect();
                    let _ = writeln!(
                        out,
                        "unimodular: yes\ncertificate c = [{}]",
                        cells.join(", ")
                    );
                    check(row.mul(&v)?.is_identity(), "c v = 1", out)
                }
                _ => {
                    out.push_str("unimodular: no\n");
                    Err(CliError::math(
                        "the entries do not generate the unit left ideal",
                    ))
                }
            }
        }
        Command::IdemDiag(id) => {
            let f = matrix(ev, id)?;
            let d = idempotent_diagonalize_division(&f)?;
            let conj = d.u.mul(&f)?.mul(&d.u_inv)?;
            let _ = writeln!(out, "rank: {}", d.rank);
            let _ = writeln!(out, "U: columns {}", columns(&d.u));
            let _ = writeln!(out, "U^-1: columns {}", columns(&d.u_inv));
            let _ = writeln!(out, "U F U^-1: columns {}", columns(&conj));
            check(d.u.mul(&d.u_inv)?.is_identity(), "U U^-1 = I", out)
        }
    }
}

fn check(ok: bool, what: &str, out: &mut String) -> CliResult<()> {
    if ok {
        let _ = writeln!(out, "check: {what} verified");
        Ok(())
    } else {
        let _ = writeln!(out, "check: {what} FAILED");
        Err(CliError::math(format!("verification of {what} failed")))
    }
}

fn run_validate(session: &Session, out: &mut String) -> CliResult<()> {
    let report = validate(&session.presentation);
    let yes = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(out, "valid: {}", yes(report.is_valid()));
    let _ = writeln!(out, "bijective: {}", yes(report.is_bijective()));
    let _ = writeln!(out, "quasi-commutative: {}", yes(report.quasi_commutative));
    for f in &report.failures {
        let _ = writeln!(out, "failure: {f}");
    }
    if !report.is_valid() {
        return Err(CliError::math("presentation fails the axioms"));
    }
    let alg = Algebra::new(session.presentation.clone(), session.order.clone())?;
    let defects = alg.overlap_defects();
    if defects.is_empty() {
        out.push_str("overlaps: confluent\n");
    }
    for (label, d) in defects {
        let _ = writeln!(
            out,
            "warning: overlap {label} is ambiguous, difference {}",
            d.render()
        );
    }
    Ok(())
}

fn render_step_terms<E: GbElement>(res: &DivisionResult<E>, k: usize, alg: &Algebra) -> String {
    let step = &res.trace[k];
    step.used
        .iter()
        .map(|t| {
            let mono = alg.render_monomial(&t.shift);
            let c = alg.render_coeff(&t.coeff);
            if mono.is_empty() {
                format!("({c})*f{}", t.divisor + 1)
            } else {
                format!("({c})*{mono}*f{}", t.divisor + 1)
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn report_division<E: GbElement>(
    f: &E,
    divisors: &[E],
    res: &DivisionResult<E>,
    name: &str,
    trace: bool,
    module: bool,
    out: &mut String,
) -> CliResult<()> {
    let alg = f.algebra();
    if trace {
        for (k, step) in res.trace.iter().enumerate() {
            let mut lead = alg.render_monomial(&step.lead);
            if lead.is_empty() {
                lead = "1".into();
            }
            let pos = if module {
                format!("*e{}", step.index + 1)
            } else {
                String::new()
            };
            let _ = writeln!(
                out,
                "step {}: lead {lead}{pos} | subtract {} | remainder {}",
                k + 1,
                render_step_terms(res, k, alg),
                step.remainder.render()
            );
        }
    }
    for (i, q) in res.quotients.iter().enumerate() {
        let _ = writeln!(out, "q{} = {}", i + 1, q.render());
    }
    let _ = writeln!(out, "h = {}", res.remainder.render());
    let sum = recombine(&res.quotients, divisors)?.plus(&res.remainder);
    check(sum == *f, &format!("{name} = sum q_i f_i + h"), out)
}

fn report_basis<E: GbElement>(res: &GbOutput<E>, prefix: &str, out: &mut String) -> CliResult<()> {
    for (i, g) in res.basis.iter().enumerate() {
        let _ = writeln!(out, "{prefix}{} = {}", i + 1, g.render());
    }
    let _ = writeln!(out, "size: {}", res.basis.len());
    let _ = writeln!(out, "rounds: {}", res.rounds);
    let _ = writeln!(out, "subsets examined: {}", res.subsets_examined);
    let _ = writeln!(out, "reductions: {}", res.reductions);
    let crit = check_criterion(&res.basis, CRITERION_SUBSETS)?;
    let _ = writeln!(
        out,
        "criterion (subsets of size <= {CRITERION_SUBSETS}): {} subsets, {} combinations, {}",
        crit.subsets,
        crit.combinations,
        if crit.holds() {
            "all reduce to 0"
        } else {
            "FAILED"
        }
    );
    if crit.holds() {
        Ok(())
    } else {
        Err(CliError::math(format!(
            "criterion fails on subsets {:?}",
            crit.failures
        )))
    }
}
