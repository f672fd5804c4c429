//! Canonical text for a parsed file. `parse(render(f))` equals `f`.

use num_traits::One;

use crate::ast::*;

// Binding strength of each syntactic level.
const SUM: u8 = 0;
const TERM: u8 = 1;
const FACTOR: u8 = 2;
const PRIMARY: u8 = 3;

fn level(e: &Expr) -> u8 {
    match e.kind {
        ExprKind::Add(..) | ExprKind::Sub(..) | ExprKind::Neg(_) => SUM,
        ExprKind::Mul(..) => TERM,
        ExprKind::Pow(..) => FACTOR,
        ExprKind::Num(_) | ExprKind::Name(_) => PRIMARY,
    }
}

fn at(e: &Expr, need: u8, out: &mut String) {
    if level(e) < need {
        out.push('(');
        write_expr(e, out);
        out.push(')');
    } else {
        write_expr(e, out);
    }
}

fn write_expr(e: &Expr, out: &mut String) {
    match &e.kind {
        ExprKind::Num(q) => {
            if q.denom().is_one() {
                out.push_str(&q.numer().to_string());
            } else {
                out.push_str(&format!("{}/{}", q.numer(), q.denom()));
            }
        }
        ExprKind::Name(n) => out.push_str(n),
        ExprKind::Neg(t) => {
            out.push('-');
            at(t, TERM, out);
        }
        ExprKind::Add(l, r) | ExprKind::Sub(l, r) => {
            at(l, SUM, out);
            out.push_str(if matches!(e.kind, ExprKind::Add(..)) {
                " + "
            } else {
                " - "
            });
            at(r, TERM, out);
        }
        ExprKind::Mul(l, r) => {
            at(l, TERM, out);
            out.push('*');
            at(r, FACTOR, out);
        }
        ExprKind::Pow(b, n) => {
            at(b, PRIMARY, out);
            out.push_str(&format!("^{n}"));
        }
    }
}

pub fn render_expr(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(e, &mut out);
    out
}

fn ids(v: &[Ident], sep: &str) -> String {
    v.iter()
        .map(|i| i.name.as_str())
        .collect::<Vec<_>>()
        .join(sep)
}

fn exprs(v: &[Expr]) -> String {
    v.iter().map(render_expr).collect::<Vec<_>>().join(", ")
}

fn maps(v: &[MapEntry]) -> String {
    v.iter()
        .map(|m| format!("{} -> {}", m.generator.name, render_expr(&m.image)))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn render_order(o: &OrderDecl) -> String {
    if o.precedence.is_empty() {
        o.kind.name.clone()
    } else {
        format!("{} {}", o.kind.name, ids(&o.precedence, " > "))
    }
}

pub fn render_value(v: &Value) -> String {
    match v {
        Value::Poly(e) => render_expr(e),
        Value::Vector(es) => format!(
            "[{}]",
            es.iter().map(render_expr).collect::<Vec<_>>().join(" ; ")
        ),
        Value::Matrix(rows) => format!(
            "[{}]",
            rows.iter()
                .map(|r| format!("[{}]", exprs(r)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    }
}

pub fn render_command(c: &Command) -> String {
    match c {
        Command::Validate => "validate".into(),
        Command::Mul(a) => format!("mul {}", ids(a, " ")),
        Command::Divide { f, by } => format!("divide {} by {}", f.name, ids(by, " ")),
        Command::Gb(a) => format!("gb {}", ids(a, " ")),
        Command::ModGb(a) => format!("modgb {}", ids(a, " ")),
        Command::Linv(a) => format!("linv {}", a.name),
        Command::Unimod(a) => format!("unimod {}", a.name),
        Command::IdemDiag(a) => format!("idem-diag {}", a.name),
    }
}

fn render_item(item: &Item) -> String {
    match item {
        Item::Sigma {
            var,
            images,
            inverse,
            ..
        } => {
            let mut s = format!("sigma {}:", var.name);
            if !images.is_empty() {
                s.push(' ');
                s.push_str(&maps(images));
            }
            if let Some(inv) = inverse {
                s.push_str(" ; inverse");
                if !inv.is_empty() {
                    s.push(' ');
                    s.push_str(&maps(inv));
                }
            }
            s
        }
        Item::Delta { var, images, .. } => {
            let mut s = format!("delta {}:", var.name);
            if !images.is_empty() {
                s.push(' ');
                s.push_str(&maps(images));
            }
            s
        }
        Item::Relation { left, rhs, .. } => {
            format!(
                "relation {}*{} = {}",
                left.0.name,
                left.1.name,
                render_expr(rhs)
            )
        }
        Item::Let { name, value, .. } => format!("let {} = {}", name.name, render_value(value)),
        Item::Choose {
            target,
            scalars,
            solution,
            ..
        } => format!(
            "choose {} over {} -> {}",
            render_expr(target),
            exprs(scalars),
            exprs(solution)
        ),
        Item::Command { command, .. } => render_command(command),
    }
}

fn group(item: &Item) -> u8 {
    match item {
        Item::Sigma { .. } | Item::Delta { .. } | Item::Relation { .. } => 0,
        Item::Let { .. } | Item::Choose { .. } => 1,
        Item::Command { .. } => 2,
    }
}

/// Header, then the items in source order; a blank line separates runs of
/// presentation data, definitions and commands.
pub fn render_file(f: &File) -> String {
    let h = &f.header;
    let mut out = String::new();
    match &h.ring {
        RingDecl::Rationals => out.push_str("coeff QQ\n"),
        RingDecl::Polynomial(g) => out.push_str(&format!("coeff QQ[{}]\n", ids(g, ", "))),
    }
    out.push_str(&format!("vars {}\n", ids(&h.vars, ", ")));
    out.push_str(&format!("order {}\n", render_order(&h.order)));
    if let Some(m) = &h.module_order {
        out.push_str(&format!("module_order {}\n", m.name));
    }
    let mut last = None;
    for item in &f.items {
        let g = group(item);
        if last != Some(g) {
            out.push('\n');
            last = Some(g);
        }
        out.push_str(&render_item(item));
        out.push('\n');
    }
    out
}
