//! Lexer and recursive-descent parser for `.spbw` files.
//!
//! Statements are line oriented; newlines inside brackets or parentheses are
//! ignored, so matrices may span several lines. `#` starts a comment.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::ast::*;
use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(BigRational),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Eq,
    Arrow,
    Gt,
    Newline,
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Num(q) => format!("number `{q}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Colon => "`:`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::Gt => "`>`".into(),
        Tok::Newline => "end of line".into(),
        Tok::Eof => "end of file".into(),
    }
}

/// Words that cannot name a definition.
pub const RESERVED: [&str; 13] = [
    "coeff",
    "vars",
    "order",
    "module_order",
    "sigma",
    "delta",
    "relation",
    "let",
    "choose",
    "by",
    "over",
    "inverse",
    "QQ",
];

fn lex(src: &str) -> CliResult<Vec<(Tok, Span)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            b'\n' => {
                i += 1;
                if depth == 0 {
                    out.push((Tok::Newline, Span::new(start, i)));
                }
                continue;
            }
            b' ' | b'\t' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = src[start..i].parse().expect("digits");
                let mut den = BigInt::from(1);
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    let d0 = i + 1;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    den = src[d0..i].parse().expect("digits");
                    if den.is_zero() {
                        return Err(CliError::input("zero denominator", Span::new(start, i)));
                    }
                }
                out.push((Tok::Num(BigRational::new(num, den)), Span::new(start, i)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                if &src[start..i] == "idem" && src[i..].starts_with("-diag") {
                    let after = i + "-diag".len();
                    if !bytes
                        .get(after)
                        .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
                    {
                        i = after;
                    }
                }
                out.push((Tok::Ident(src[start..i].to_string()), Span::new(start, i)));
                continue;
            }
            _ => {}
        }
        let (tok, len) = match c {
            b'-' if bytes.get(i + 1) == Some(&b'>') => (Tok::Arrow, 2),
            b'+' => (Tok::Plus, 1),
            b'-' => (Tok::Minus, 1),
            b'*' => (Tok::Star, 1),
            b'^' => (Tok::Caret, 1),
            b'(' => (Tok::LParen, 1),
            b')' => (Tok::RParen, 1),
            b'[' => (Tok::LBracket, 1),
            b']' => (Tok::RBracket, 1),
            b',' => (Tok::Comma, 1),
            b';' => (Tok::Semi, 1),
            b':' => (Tok::Colon, 1),
            b'=' => (Tok::Eq, 1),
            b'>' => (Tok::Gt, 1),
            _ => {
                let ch = src[i..].chars().next().expect("in bounds");
                return Err(CliError::input(
                    format!("unexpected character `{ch}`"),
                    Span::new(i, i + ch.len_utf8()),
                ));
            }
        };
        match tok {
            Tok::LParen | Tok::LBracket => depth += 1,
            Tok::RParen | Tok::RBracket => depth = depth.saturating_sub(1),
            _ => {}
        }
        i += len;
        out.push((tok, Span::new(start, i)));
    }
    out.push((Tok::Eof, Span::new(src.len(), src.len())));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected<T>(&self, wanted: &str) -> CliResult<T> {
        Err(CliError::input(
            format!("expected {wanted}, found {}", describe(self.peek())),
            self.span(),
        ))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> CliResult<Span> {
        if self.peek() == t {
            Ok(self.bump().1)
        } else {
            self.unexpected(&describe(t))
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn expect_word(&mut self, w: &str) -> CliResult<Span> {
        if self.is_word(w) {
            Ok(self.bump().1)
        } else {
            self.unexpected(&format!("`{w}`"))
        }
    }

    fn ident(&mut self) -> CliResult<Ident> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let span = self.bump().1;
                Ok(Ident { name, span })
            }
            _ => self.unexpected("an identifier"),
        }
    }

    /// An identifier that may name a definition.
    fn name(&mut self) -> CliResult<Ident> {
        let id = self.ident()?;
        if RESERVED.contains(&id.name.as_str()) {
            return Err(CliError::input(
                format!("`{}` is a reserved word", id.name),
                id.span,
            ));
        }
        Ok(id)
    }

    fn skip_newlines(&mut self) {
        while self.eat(&Tok::Newline) {}
    }

    fn end_of_statement(&mut self) -> CliResult<()> {
        match self.peek() {
            Tok::Newline => {
                self.skip_newlines();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => self.unexpected("end of line"),
        }
    }

    fn ident_list(&mut self) -> CliResult<Vec<Ident>> {
        let mut ids = vec![self.name()?];
        while self.eat(&Tok::Comma) {
            ids.push(self.name()?);
        }
        Ok(ids)
    }

    fn file(&mut self) -> CliResult<File> {
        self.skip_newlines();
        let header = self.header()?;
        let mut items = Vec::new();
        while *self.peek() != Tok::Eof {
            items.push(self.item()?);
        }
        Ok(File { header, items })
    }

    fn header(&mut self) -> CliResult<Header> {
        self.expect_word("coeff")?;
        self.expect_word("QQ")?;
        let ring = if self.eat(&Tok::LBracket) {
            let gens = self.ident_list()?;
            self.expect(&Tok::RBracket)?;
            RingDecl::Polynomial(gens)
        } else {
            RingDecl::Rationals
        };
        self.end_of_statement()?;
        self.expect_word("vars")?;
        let vars = self.ident_list()?;
        self.end_of_statement()?;
        self.expect_word("order")?;
        let order = self.order_decl()?;
        self.end_of_statement()?;
        let module_order = if self.is_word("module_order") {
            self.bump();
            let id = self.ident()?;
            self.end_of_statement()?;
            Some(id)
        } else {
            None
        };
        Ok(Header {
            ring,
            vars,
            order,
            module_order,
        })
    }

    fn order_decl(&mut self) -> CliResult<OrderDecl> {
        let kind = self.ident()?;
        let mut precedence = Vec::new();
        if matches!(self.peek(), Tok::Ident(_)) {
            precedence.push(self.ident()?);
            while self.eat(&Tok::Gt) {
                precedence.push(self.ident()?);
            }
        }
        Ok(OrderDecl { kind, precedence })
    }

    fn item(&mut self) -> CliResult<Item> {
        let start = self.span();
        let word = match self.peek() {
            Tok::Ident(w) => w.clone(),
            _ => return self.unexpected("a statement"),
        };
        let item = match word.as_str() {
            "sigma" => {
                self.bump();
                let var = self.ident()?;
                self.expect(&Tok::Colon)?;
                let images = self.map_entries()?;
                let inverse = if self.eat(&Tok::Semi) {
                    self.expect_word("inverse")?;
                    Some(self.map_entries()?)
                } else {
                    None
                };
                Item::Sigma {
                    var,
                    images,
                    inverse,
                    span: start.join(self.prev_span()),
                }
            }
            "delta" => {
                self.bump();
                let var = self.ident()?;
                self.expect(&Tok::Colon)?;
                let images = self.map_entries()?;
                Item::Delta {
                    var,
                    images,
                    span: start.join(self.prev_span()),
                }
            }
            "relation" => {
                self.bump();
                let xj = self.ident()?;
                self.expect(&Tok::Star)?;
                let xi = self.ident()?;
                self.expect(&Tok::Eq)?;
                let rhs = self.expr()?;
                Item::Relation {
                    left: (xj, xi),
                    rhs,
                    span: start.join(self.prev_span()),
                }
            }
            "let" => {
                self.bump();
                let name = self.name()?;
                self.expect(&Tok::Eq)?;
                let value = self.value()?;
                Item::Let {
                    name,
                    value,
                    span: start.join(self.prev_span()),
                }
            }
            "choose" => {
                self.bump();
                let target = self.expr()?;
                self.expect_word("over")?;
                let scalars = self.expr_list()?;
                self.expect(&Tok::Arrow)?;
                let solution = self.expr_list()?;
                Item::Choose {
                    target,
                    scalars,
                    solution,
                    span: start.join(self.prev_span()),
                }
            }
            w if COMMANDS.contains(&w) => {
                let command = self.command()?;
                Item::Command {
                    command,
                    span: start.join(self.prev_span()),
                }
            }
            "coeff" | "vars" | "order" | "module_order" => {
                return Err(CliError::input(
                    format!("`{word}` belongs in the header at the top of the file"),
                    start,
                ))
            }
            _ => {
                return Err(CliError::input(
                    format!("unknown statement `{word}`"),
                    start,
                ))
            }
        };
        self.end_of_statement()?;
        Ok(item)
    }

    fn command(&mut self) -> CliResult<Command> {
        let (tok, span) = self.bump();
        let Tok::Ident(word) = tok else {
            unreachable!("caller checked for a command word")
        };
        let cmd = match word.as_str() {
            "validate" => Command::Validate,
            "mul" => {
                let args = self.names()?;
                if args.len() < 2 {
                    return Err(CliError::input("mul needs at least two operands", span));
                }
                Command::Mul(args)
            }
            "divide" => {
                let f = self.name()?;
                self.expect_word("by")?;
                let by = self.names()?;
                if by.is_empty() {
                    return self.unexpected("at least one divisor");
                }
                Command::Divide { f, by }
            }
            "gb" => Command::Gb(self.nonempty_names()?),
            "modgb" => Command::ModGb(self.nonempty_names()?),
            "linv" => Command::Linv(self.name()?),
            "unimod" => Command::Unimod(self.name()?),
            "idem-diag" => Command::IdemDiag(self.name()?),
            _ => unreachable!("caller checked for a command word"),
        };
        Ok(cmd)
    }

    fn names(&mut self) -> CliResult<Vec<Ident>> {
        let mut out = Vec::new();
        while matches!(self.peek(), Tok::Ident(_)) {
            out.push(self.name()?);
        }
        Ok(out)
    }

    fn nonempty_names(&mut self) -> CliResult<Vec<Ident>> {
        let out = self.names()?;
        if out.is_empty() {
            return self.unexpected("at least one generator");
        }
        Ok(out)
    }

    fn map_entries(&mut self) -> CliResult<Vec<MapEntry>> {
        let mut out = Vec::new();
        if !matches!(self.peek(), Tok::Ident(_)) || self.is_word("inverse") {
            return Ok(out);
        }
        loop {
            let generator = self.ident()?;
            self.expect(&Tok::Arrow)?;
            let image = self.expr()?;
            out.push(MapEntry { generator, image });
            if !self.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }

    fn expr_list(&mut self) -> CliResult<Vec<Expr>> {
        let mut out = vec![self.expr()?];
        while self.eat(&Tok::Comma) {
            out.push(self.expr()?);
        }
        Ok(out)
    }

    fn value(&mut self) -> CliResult<Value> {
        if *self.peek() != Tok::LBracket {
            return Ok(Value::Poly(self.expr()?));
        }
        self.bump();
        if *self.peek() == Tok::LBracket {
            let mut rows = Vec::new();
            loop {
                self.expect(&Tok::LBracket)?;
                rows.push(self.expr_list()?);
                self.expect(&Tok::RBracket)?;
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(&Tok::RBracket)?;
            Ok(Value::Matrix(rows))
        } else {
            let mut entries = vec![self.expr()?];
            while self.eat(&Tok::Semi) {
                entries.push(self.expr()?);
            }
            self.expect(&Tok::RBracket)?;
            Ok(Value::Vector(entries))
        }
    }

    fn expr(&mut self) -> CliResult<Expr> {
        let start = self.span();
        let mut lhs = match self.peek() {
            Tok::Minus => {
                self.bump();
                let t = self.term()?;
                Expr {
                    span: start.join(t.span),
                    kind: ExprKind::Neg(Box::new(t)),
                }
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            let sub = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.join(rhs.span);
            let kind = if sub {
                ExprKind::Sub(Box::new(lhs), Box::new(rhs))
            } else {
                ExprKind::Add(Box::new(lhs), Box::new(rhs))
            };
            lhs = Expr { kind, span };
        }
    }

    fn term(&mut self) -> CliResult<Expr> {
        let mut lhs = self.factor()?;
        while self.eat(&Tok::Star) {
            let rhs = self.factor()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr {
                kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> CliResult<Expr> {
        let mut base = self.primary()?;
        while self.eat(&Tok::Caret) {
            let (tok, span) = self.bump();
            let e = match tok {
                Tok::Num(q) if q.is_integer() => u32::try_from(q.to_integer())
                    .map_err(|_| CliError::input("exponent too large", span))?,
                _ => {
                    return Err(CliError::input(
                        format!(
                            "expected a nonnegative integer exponent, found {}",
                            describe(&tok)
                        ),
                        span,
                    ))
                }
            };
            let span = base.span.join(span);
            base = Expr {
                kind: ExprKind::Pow(Box::new(base), e),
                span,
            };
        }
        Ok(base)
    }

    fn primary(&mut self) -> CliResult<Expr> {
        match self.peek().clone() {
            Tok::Num(q) => {
                let span = self.bump().1;
                Ok(Expr {
                    kind: ExprKind::Num(q),
                    span,
                })
            }
            Tok::Ident(_) => {
                let id = self.name()?;
                Ok(Expr {
                    kind: ExprKind::Name(id.name),
                    span: id.span,
                })
            }
            Tok::LParen => {
                let open = self.bump().1;
                let mut e = self.expr()?;
                let close = self.expect(&Tok::RParen)?;
                e.span = open.join(close);
                Ok(e)
            }
            _ => self.unexpected("a number, a name or `(`"),
        }
    }
}

pub fn parse(src: &str) -> CliResult<File> {
    let toks = lex(src)?;
    Parser { toks, pos: 0 }.file()
}

/// Parses a single command line such as `divide f by f1 f2`.
pub fn parse_command(src: &str) -> CliResult<Command> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    p.skip_newlines();
    match p.peek() {
        Tok::Ident(w) if COMMANDS.contains(&w.as_str()) => {}
        _ => return p.unexpected("a command"),
    }
    let cmd = p.command()?;
    p.skip_newlines();
    if *p.peek() != Tok::Eof {
        return p.unexpected("end of command");
    }
    Ok(cmd)
}

/// Parses an order clause such as `deglex D1 > D2`.
pub fn parse_order(src: &str) -> CliResult<OrderDecl> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let decl = p.order_decl()?;
    if *p.peek() != Tok::Eof {
        return p.unexpected("end of order clause");
    }
    Ok(decl)
}
