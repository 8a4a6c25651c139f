//! Concrete text syntax: a lexer, recursive-descent parsers and canonical
//! printers for diagrams, sequents, formulas, proofs and algebra specs.
//!
//! ```text
//! sequent := ctx "|-" ctx          ctx := ε | diagram ("," diagram)*
//! diagram := or ("->" diagram)?    or := and ("v" or)?    and := atom ("&" and)?
//! atom    := "+" ID | "-" ID | TRUE | FALSE | "(" diagram ")"
//!          | venn{contours: IDS; shaded: ZONES}
//!          | euler{contours: IDS; zones: ZONES}
//!          | ev{contours: IDS; zones: ZONES; shaded: ZONES}
//! ZONE    := "<" IDS ">"           (the in-set; the out-set is implied)
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{ContourName, ContourSet, Diagram, DiagramError, Kind, Sequent, UnitaryDiagram, Zone};
use crate::formula::Formula;
use crate::heyting::{AlgebraError, FinitePoset, HeytingAlgebra};
use crate::proof::{Aux, DiagProof, RuleName};

/// A region of the input text. Offsets are in bytes; line and column are
/// 1-based and refer to `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{span}: expected {}, found {found}", expected.join(" or "))]
    Syntax { span: SourceSpan, expected: Vec<String>, found: String },
    #[error("{span}: {source}")]
    Diagram { span: SourceSpan, source: DiagramError },
    #[error("{span}: {message}")]
    Invalid { span: SourceSpan, message: String },
}

impl ParseError {
    pub fn span(&self) -> SourceSpan {
        match self {
            ParseError::Syntax { span, .. } | ParseError::Diagram { span, .. } | ParseError::Invalid { span, .. } => *span,
        }
    }

    /// Expected tokens, for syntax errors.
    pub fn expected(&self) -> &[String] {
        match self {
            ParseError::Syntax { expected, .. } => expected,
            _ => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(usize),
    Str(String),
    Plus,
    Minus,
    Arrow,
    Turnstile,
    Comma,
    Amp,
    Tilde,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Colon,
    Semi,
    Lt,
    Gt,
    At,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::Number(n) => return write!(f, "`{n}`"),
            Tok::Str(_) => "a string",
            Tok::Plus => "`+`",
            Tok::Minus => "`-`",
            Tok::Arrow => "`->`",
            Tok::Turnstile => "`|-`",
            Tok::Comma => "`,`",
            Tok::Amp => "`&`",
            Tok::Tilde => "`~`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::Colon => "`:`",
            Tok::Semi => "`;`",
            Tok::Lt => "`<`",
            Tok::Gt => "`>`",
            Tok::At => "`@`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let (mut i, mut line, mut line_start) = (0usize, 1usize, 0usize);
    let span = |start: usize, end: usize, line: usize, line_start: usize| SourceSpan {
        start,
        end,
        line,
        column: src[line_start..start].chars().count() + 1,
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c == b'\n' {
            i += 1;
            line += 1;
            line_start = i;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let single = match c {
            b'+' => Some(Tok::Plus),
            b',' => Some(Tok::Comma),
            b'&' => Some(Tok::Amp),
            b'~' => Some(Tok::Tilde),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'{' => Some(Tok::LBrace),
            b'}' => Some(Tok::RBrace),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b':' => Some(Tok::Colon),
            b';' => Some(Tok::Semi),
            b'<' => Some(Tok::Lt),
            b'>' => Some(Tok::Gt),
            b'@' => Some(Tok::At),
            _ => None,
        };
        if let Some(t) = single {
            i += 1;
            out.push((t, span(start, i, line, line_start)));
            continue;
        }
        match c {
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                out.push((Tok::Arrow, span(start, i, line, line_start)));
            }
            b'-' => {
                i += 1;
                out.push((Tok::Minus, span(start, i, line, line_start)));
            }
            b'|' if bytes.get(i + 1) == Some(&b'-') => {
                i += 2;
                out.push((Tok::Turnstile, span(start, i, line, line_start)));
            }
            b'"' => {
                let (l, ls) = (line, line_start);
                i += 1;
                let mut s = String::new();
                loop {
                    let Some(ch) = src[i..].chars().next() else {
                        return Err(ParseError::Syntax {
                            span: span(start, i, l, ls),
                            expected: vec!["`\"`".into()],
                            found: "end of input".into(),
                        });
                    };
                    i += ch.len_utf8();
                    match ch {
                        '"' => break,
                        '\\' => {
                            let esc = src[i..].chars().next().unwrap_or('\\');
                            i += esc.len_utf8();
                            s.push(esc);
                        }
                        '\n' => {
                            line += 1;
                            line_start = i;
                            s.push(ch);
                        }
                        _ => s.push(ch),
                    }
                }
                out.push((Tok::Str(s), span(start, i, l, ls)));
            }
            _ if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let sp = span(start, i, line, line_start);
                let n = src[start..i].parse().map_err(|_| ParseError::Invalid {
                    span: sp,
                    message: format!("number `{}` is too large", &src[start..i]),
                })?;
                out.push((Tok::Number(n), sp));
            }
            _ if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), span(start, i, line, line_start)));
            }
            _ => {
                let ch = src[i..].chars().next().expect("in bounds");
                return Err(ParseError::Syntax {
                    span: span(start, start + ch.len_utf8(), line, line_start),
                    expected: vec!["a token".into()],
                    found: format!("`{ch}`"),
                });
            }
        }
    }
    out.push((Tok::Eof, span(src.len(), src.len(), line, line_start)));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

/// A contour field value or a list of zone in-sets, with spans.
enum Field {
    Names(Vec<(String, SourceSpan)>),
    Zones(Vec<(Vec<(String, SourceSpan)>, SourceSpan)>),
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Self { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            span: self.span(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<SourceSpan, ParseError> {
        if *self.peek() == t {
            Ok(self.bump().1)
        } else {
            self.error(&[&t.to_string()])
        }
    }

    fn ident(&mut self) -> Result<(String, SourceSpan), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let sp = self.bump().1;
                Ok((s, sp))
            }
            _ => self.error(&["an identifier"]),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error(&["end of input"])
        }
    }

    fn is_or(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == "v")
    }

    fn sequent(&mut self) -> Result<Sequent, ParseError> {
        let ante = if *self.peek() == Tok::Turnstile { Vec::new() } else { self.context()? };
        if *self.peek() != Tok::Turnstile {
            let mut expected = vec!["`|-`", "`,`", "`&`", "`v`", "`->`"];
            if ante.is_empty() {
                expected.push("a diagram");
            }
            return self.error(&expected);
        }
        self.bump();
        let succ = if *self.peek() == Tok::Eof { Vec::new() } else { self.context()? };
        Ok(Sequent::new(ante, succ))
    }

    fn context(&mut self) -> Result<Vec<Diagram>, ParseError> {
        let mut out = vec![self.diagram()?];
        while self.eat(&Tok::Comma) {
            out.push(self.diagram()?);
        }
        Ok(out)
    }

    fn diagram(&mut self) -> Result<Diagram, ParseError> {
        let l = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            return Ok(Diagram::implies(l, self.diagram()?));
        }
        Ok(l)
    }

    fn disjunction(&mut self) -> Result<Diagram, ParseError> {
        let l = self.conjunction()?;
        if self.is_or() {
            self.bump();
            return Ok(Diagram::or(l, self.disjunction()?));
        }
        Ok(l)
    }

    fn conjunction(&mut self) -> Result<Diagram, ParseError> {
        let l = self.atom()?;
        if self.eat(&Tok::Amp) {
            return Ok(Diagram::and(l, self.conjunction()?));
        }
        Ok(l)
    }

    fn atom(&mut self) -> Result<Diagram, ParseError> {
        const EXPECTED: &[&str] = &["`+`", "`-`", "`(`", "`TRUE`", "`FALSE`", "`venn`", "`euler`", "`ev`"];
        match self.peek().clone() {
            Tok::Plus | Tok::Minus => {
                let positive = self.bump().0 == Tok::Plus;
                let (name, sp) = self.ident()?;
                let c = ContourName::new(&name).map_err(|source| ParseError::Diagram { span: sp, source })?;
                Ok(Diagram::literal(&c, positive))
            }
            Tok::LParen => {
                self.bump();
                let d = self.diagram()?;
                self.expect(Tok::RParen)?;
                Ok(d)
            }
            Tok::Ident(s) if s == "TRUE" => {
                self.bump();
                Ok(Diagram::top())
            }
            Tok::Ident(s) if s == "FALSE" => {
                self.bump();
                Ok(Diagram::bottom())
            }
            Tok::Ident(s) if matches!(s.as_str(), "venn" | "euler" | "ev") => {
                let start = self.bump().1;
                self.unitary(&s, start).map(Diagram::from)
            }
            _ => self.error(EXPECTED),
        }
    }

    fn names_until_field_end(&mut self) -> Vec<(String, SourceSpan)> {
        let mut out = Vec::new();
        while let Tok::Ident(s) = self.peek().clone() {
            let sp = self.bump().1;
            out.push((s, sp));
        }
        out
    }

    fn zones(&mut self) -> Result<Vec<(Vec<(String, SourceSpan)>, SourceSpan)>, ParseError> {
        let mut out = Vec::new();
        while *self.peek() == Tok::Lt {
            let start = self.bump().1;
            let names = self.names_until_field_end();
            if *self.peek() != Tok::Gt {
                return self.error(&["an identifier", "`>`"]);
            }
            let end = self.bump().1;
            out.push((names, SourceSpan { end: end.end, ..start }));
        }
        Ok(out)
    }

    fn unitary(&mut self, kind: &str, start: SourceSpan) -> Result<UnitaryDiagram, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut fields: Vec<(String, SourceSpan, Field)> = Vec::new();
        while *self.peek() != Tok::RBrace {
            let (name, sp) = self.ident()?;
            self.expect(Tok::Colon)?;
            let value = match name.as_str() {
                "contours" => Field::Names(self.names_until_field_end()),
                "zones" | "shaded" => Field::Zones(self.zones()?),
                _ => {
                    return Err(ParseError::Syntax {
                        span: sp,
                        expected: vec!["`contours`".into(), "`zones`".into(), "`shaded`".into()],
                        found: format!("`{name}`"),
                    })
                }
            };
            if fields.iter().any(|(n, _, _)| *n == name) {
                return Err(ParseError::Invalid { span: sp, message: format!("field `{name}` given twice") });
            }
            fields.push((name, sp, value));
            if !self.eat(&Tok::Semi) && *self.peek() != Tok::RBrace {
                return self.error(&["`;`", "`}`"]);
            }
        }
        let end = self.bump().1;
        let whole = SourceSpan { end: end.end, ..start };
        build_unitary(kind, fields, whole)
    }
}

fn build_unitary(
    kind: &str,
    fields: Vec<(String, SourceSpan, Field)>,
    whole: SourceSpan,
) -> Result<UnitaryDiagram, ParseError> {
    let diag_err = |span: SourceSpan| move |source: DiagramError| ParseError::Diagram { span, source };
    let mut contours = ContourSet::new();
    let mut zones = None;
    let mut shaded = None;
    for (name, sp, value) in &fields {
        match (name.as_str(), value) {
            ("contours", Field::Names(names)) => {
                for (n, nsp) in names {
                    let c = ContourName::new(n).map_err(diag_err(*nsp))?;
                    if !contours.insert(c) {
                        return Err(ParseError::Invalid { span: *nsp, message: format!("duplicate contour `{n}`") });
                    }
                }
            }
            ("zones", Field::Zones(z)) => zones = Some((z, *sp)),
            ("shaded", Field::Zones(z)) => shaded = Some((z, *sp)),
            _ => unreachable!("field kinds follow their names"),
        }
    }
    if !fields.iter().any(|(n, _, _)| n == "contours") {
        return Err(ParseError::Invalid { span: whole, message: "missing field `contours`".into() });
    }
    let resolve = |list: &[(Vec<(String, SourceSpan)>, SourceSpan)]| -> Result<BTreeSet<Zone>, ParseError> {
        let mut out = BTreeSet::new();
        for (names, zsp) in list {
            let mut in_set = ContourSet::new();
            for (n, nsp) in names {
                for c in split_juxtaposed(n, &contours).ok_or_else(|| ParseError::Invalid {
                    span: *nsp,
                    message: format!("zone mentions undeclared contour `{n}`"),
                })? {
                    in_set.insert(c);
                }
            }
            out.insert(Zone::inside(&contours, in_set).map_err(diag_err(*zsp))?);
        }
        Ok(out)
    };
    let missing_field = |f: &str| ParseError::Invalid { span: whole, message: format!("missing field `{f}`") };
    let unexpected = |sp: SourceSpan, f: &str, k: &str| ParseError::Invalid {
        span: sp,
        message: format!("field `{f}` is not allowed in a {k} diagram"),
    };
    match kind {
        "venn" => {
            if let Some((_, sp)) = zones {
                return Err(unexpected(sp, "zones", "Venn"));
            }
            let (s, _) = shaded.ok_or_else(|| missing_field("shaded"))?;
            UnitaryDiagram::venn(contours.clone(), resolve(s)?).map_err(diag_err(whole))
        }
        "euler" => {
            if let Some((_, sp)) = shaded {
                return Err(ParseError::Diagram { span: sp, source: DiagramError::ShadedPureEuler });
            }
            let (z, _) = zones.ok_or_else(|| missing_field("zones"))?;
            UnitaryDiagram::pure_euler(contours.clone(), resolve(z)?).map_err(diag_err(whole))
        }
        _ => {
            let (z, _) = zones.ok_or_else(|| missing_field("zones"))?;
            let (s, _) = shaded.ok_or_else(|| missing_field("shaded"))?;
            UnitaryDiagram::euler_venn(contours.clone(), resolve(z)?, resolve(s)?).map_err(diag_err(whole))
        }
    }
}

/// A zone token names one declared contour; failing that, a token whose
/// characters are all declared contours names each of them (`<ab>`).
fn split_juxtaposed(token: &str, contours: &ContourSet) -> Option<Vec<ContourName>> {
    if let Some(c) = contours.iter().find(|c| c.as_str() == token) {
        return Some(vec![c.clone()]);
    }
    token
        .chars()
        .map(|ch| contours.iter().find(|c| c.as_str().len() == ch.len_utf8() && c.as_str().starts_with(ch)).cloned())
        .collect()
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text)?;
    let s = p.sequent()?;
    p.finish()?;
    Ok(s)
}

pub fn parse_diagram(text: &str) -> Result<Diagram, ParseError> {
    let mut p = Parser::new(text)?;
    let d = p.diagram()?;
    p.finish()?;
    Ok(d)
}

/// Parses formulas written with `F`, `T`, `~`, `&`, `v` and `->`.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    fn imp(p: &mut Parser) -> Result<Formula, ParseError> {
        let l = or(p)?;
        if p.eat(&Tok::Arrow) {
            return Ok(Formula::implies(l, imp(p)?));
        }
        Ok(l)
    }
    fn or(p: &mut Parser) -> Result<Formula, ParseError> {
        let l = and(p)?;
        if p.is_or() {
            p.bump();
            return Ok(Formula::or(l, or(p)?));
        }
        Ok(l)
    }
    fn and(p: &mut Parser) -> Result<Formula, ParseError> {
        let l = unary(p)?;
        if p.eat(&Tok::Amp) {
            return Ok(Formula::and(l, and(p)?));
        }
        Ok(l)
    }
    fn unary(p: &mut Parser) -> Result<Formula, ParseError> {
        match p.peek().clone() {
            Tok::Tilde => {
                p.bump();
                Ok(Formula::not(unary(p)?))
            }
            Tok::LParen => {
                p.bump();
                let f = imp(p)?;
                p.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(s) if s == "F" => {
                p.bump();
                Ok(Formula::Bottom)
            }
            Tok::Ident(s) if s == "T" => {
                p.bump();
                Ok(Formula::top())
            }
            Tok::Ident(s) => {
                let sp = p.bump().1;
                let c = ContourName::new(&s).map_err(|source| ParseError::Diagram { span: sp, source })?;
                Ok(Formula::var(&c))
            }
            _ => p.error(&["a variable", "`F`", "`T`", "`~`", "`(`"]),
        }
    }
    let mut p = Parser::new(text)?;
    let f = imp(&mut p)?;
    p.finish()?;
    Ok(f)
}

fn names(cs: impl IntoIterator<Item = impl fmt::Display>) -> String {
    cs.into_iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn print_zone(z: &Zone) -> String {
    format!("<{}>", names(z.in_set()))
}

fn print_zones<'a>(zs: impl IntoIterator<Item = &'a Zone>) -> String {
    zs.into_iter().map(print_zone).collect::<Vec<_>>().join(" ")
}

fn field(name: &str, value: String) -> String {
    if value.is_empty() {
        format!("{name}:")
    } else {
        format!("{name}: {value}")
    }
}

pub fn print_unitary(u: &UnitaryDiagram) -> String {
    if u.is_top() {
        return "TRUE".into();
    }
    if u.is_bottom() {
        return "FALSE".into();
    }
    if let Some((c, positive)) = u.as_literal() {
        return format!("{}{c}", if positive { '+' } else { '-' });
    }
    let contours = field("contours", names(u.contours()));
    match u.kind() {
        Kind::Venn => format!("venn{{{contours}; {}}}", field("shaded", print_zones(u.shaded_zones()))),
        Kind::PureEuler => format!("euler{{{contours}; {}}}", field("zones", print_zones(u.visible_zones()))),
        Kind::EulerVenn => format!(
            "ev{{{contours}; {}; {}}}",
            field("zones", print_zones(u.visible_zones())),
            field("shaded", print_zones(u.shaded_zones()))
        ),
    }
}

fn diagram_prec(d: &Diagram) -> u8 {
    match d {
        Diagram::Implies(..) => 1,
        Diagram::Or(..) => 2,
        Diagram::And(..) => 3,
        Diagram::Unitary(_) => 4,
    }
}

fn write_diagram(d: &Diagram, out: &mut String) {
    let child = |g: &Diagram, parens: bool, out: &mut String| {
        if parens {
            out.push('(');
            write_diagram(g, out);
            out.push(')');
        } else {
            write_diagram(g, out);
        }
    };
    let (l, r, op) = match d {
        Diagram::Unitary(u) => return out.push_str(&print_unitary(u)),
        Diagram::And(l, r) => (l, r, " & "),
        Diagram::Or(l, r) => (l, r, " v "),
        Diagram::Implies(l, r) => (l, r, " -> "),
    };
    let p = diagram_prec(d);
    child(l, diagram_prec(l) <= p, out);
    out.push_str(op);
    child(r, diagram_prec(r) < p, out);
}

pub fn print_diagram(d: &Diagram) -> String {
    let mut s = String::new();
    write_diagram(d, &mut s);
    s
}

pub fn print_sequent(s: &Sequent) -> String {
    let side = |xs: &[Diagram]| xs.iter().map(print_diagram).collect::<Vec<_>>().join(", ");
    let (l, r) = (side(s.antecedent()), side(s.succedent()));
    match (l.is_empty(), r.is_empty()) {
        (true, true) => "|-".into(),
        (true, false) => format!("|- {r}"),
        (false, true) => format!("{l} |-"),
        (false, false) => format!("{l} |- {r}"),
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        if ch == '"' || ch == '\\' {
            out.push('\\');
        }
        out.push(ch);
    }
    out.push('"');
    out
}

fn write_proof(p: &DiagProof, indent: usize, out: &mut String) {
    out.push_str(&"  ".repeat(indent));
    out.push('(');
    out.push_str(p.rule.name());
    out.push(' ');
    out.push_str(&quote(&print_sequent(&p.conclusion)));
    if let Some(i) = p.principal {
        out.push_str(&format!(" @{i}"));
    }
    match &p.aux {
        Aux::None => {}
        Aux::Cover(a, b) => out.push_str(&format!(" [{}] [{}]", print_zones(a), print_zones(b))),
        Aux::Contours(cs) => out.push_str(&format!(" {{{}}}", names(cs))),
    }
    for q in &p.premises {
        out.push('\n');
        write_proof(q, indent + 1, out);
    }
    out.push(')');
}

/// The proof file format: `(RULE "conclusion" @principal aux premise*)`,
/// where `aux` is `[zones] [zones]` for a cover or `{contours}` for a
/// reduction.
pub fn print_proof(p: &DiagProof) -> String {
    let mut s = String::new();
    write_proof(p, 0, &mut s);
    s
}

fn parse_proof_node(p: &mut Parser) -> Result<DiagProof, ParseError> {
    p.expect(Tok::LParen)?;
    let (name, name_span) = p.ident()?;
    let rule = RuleName::from_name(&name)
        .ok_or_else(|| ParseError::Invalid { span: name_span, message: format!("unknown rule `{name}`") })?;
    let (text, text_span) = match p.peek().clone() {
        Tok::Str(s) => (s, p.bump().1),
        _ => return p.error(&["a quoted sequent"]),
    };
    let conclusion = parse_sequent(&text)
        .map_err(|e| ParseError::Invalid { span: text_span, message: format!("in conclusion: {e}") })?;
    let mut principal = None;
    if p.eat(&Tok::At) {
        match p.peek().clone() {
            Tok::Number(n) => {
                p.bump();
                principal = Some(n);
            }
            _ => return p.error(&["a principal index"]),
        }
    }
    let mut aux = Aux::None;
    if *p.peek() == Tok::LBracket {
        let aux_span = p.span();
        let mut parts = Vec::new();
        for _ in 0..2 {
            p.expect(Tok::LBracket)?;
            let zones = p.zones()?;
            p.expect(Tok::RBracket)?;
            parts.push(zones);
        }
        let contours = principal_contours(rule, &conclusion, principal).ok_or_else(|| ParseError::Invalid {
            span: aux_span,
            message: "zone data needs a unitary principal diagram".into(),
        })?;
        let mut sets = Vec::new();
        for part in parts {
            let mut set = BTreeSet::new();
            for (names, zsp) in part {
                let mut in_set = ContourSet::new();
                for (n, nsp) in names {
                    let found = split_juxtaposed(&n, &contours).ok_or_else(|| ParseError::Invalid {
                        span: nsp,
                        message: format!("zone mentions contour `{n}` absent from the principal diagram"),
                    })?;
                    in_set.extend(found);
                }
                set.insert(Zone::inside(&contours, in_set).map_err(|source| ParseError::Diagram { span: zsp, source })?);
            }
            sets.push(set);
        }
        let b = sets.pop().expect("two parts");
        let a = sets.pop().expect("two parts");
        aux = Aux::Cover(a, b);
    } else if p.eat(&Tok::LBrace) {
        let mut cs = Vec::new();
        for (n, sp) in p.names_until_field_end() {
            cs.push(ContourName::new(&n).map_err(|source| ParseError::Diagram { span: sp, source })?);
        }
        p.expect(Tok::RBrace)?;
        aux = Aux::Contours(cs);
    }
    let mut premises = Vec::new();
    while *p.peek() == Tok::LParen {
        premises.push(parse_proof_node(p)?);
    }
    if *p.peek() != Tok::RParen {
        return p.error(&["`(`", "`)`"]);
    }
    p.bump();
    Ok(DiagProof { rule, conclusion, principal, aux, premises })
}

fn principal_contours(rule: RuleName, s: &Sequent, principal: Option<usize>) -> Option<ContourSet> {
    let d = s.side(rule.side()?).get(principal?)?;
    Some(d.as_unitary()?.contours().clone())
}

pub fn parse_proof(text: &str) -> Result<DiagProof, ParseError> {
    let mut p = Parser::new(text)?;
    let proof = parse_proof_node(&mut p)?;
    p.finish()?;
    Ok(proof)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("bad algebra spec `{spec}`: {reason}")]
    Syntax { spec: String, reason: String },
    #[error("poset file {path}: line {line}: {reason}")]
    PosetFile { path: String, line: usize, reason: String },
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A textual description of a finite Heyting algebra: `chain:N`,
/// `poset:N:i<j,...`, `upsets:FILE` or `prod:A*B*...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraSpec {
    Chain(usize),
    Poset(FinitePoset),
    Upsets(PathBuf),
    Product(Vec<AlgebraSpec>),
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (a, b) = pair.split_once('<').ok_or_else(|| format!("expected `i<j`, found `{pair}`"))?;
            let a = a.trim().parse().map_err(|_| format!("bad element `{a}`"))?;
            let b = b.trim().parse().map_err(|_| format!("bad element `{b}`"))?;
            Ok((a, b))
        })
        .collect()
}

/// Reads an edge list with one `i<j` per line. `#` starts a comment; a
/// bare number sets the size, which otherwise is one more than the largest
/// element mentioned.
pub fn parse_poset_file(text: &str, path: &str) -> Result<FinitePoset, SpecError> {
    let mut pairs = Vec::new();
    let mut size = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |reason: String| SpecError::PosetFile { path: path.into(), line: i + 1, reason };
        if let Ok(n) = line.parse::<usize>() {
            size = Some(n);
            continue;
        }
        pairs.extend(parse_pairs(line).map_err(err)?);
    }
    let size = size.unwrap_or_else(|| pairs.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0));
    Ok(FinitePoset::from_pairs(size, &pairs)?)
}

impl AlgebraSpec {
    fn parse_factor(text: &str) -> Result<AlgebraSpec, SpecError> {
        let err = |reason: &str| SpecError::Syntax { spec: text.into(), reason: reason.into() };
        let (kind, rest) = text.split_once(':').ok_or_else(|| err("expected `kind:...`"))?;
        match kind {
            "chain" => rest.trim().parse().map(AlgebraSpec::Chain).map_err(|_| err("chain needs a size")),
            "poset" => {
                let (n, pairs) = rest.split_once(':').unwrap_or((rest, ""));
                let n = n.trim().parse().map_err(|_| err("poset needs a size"))?;
                let pairs = parse_pairs(pairs).map_err(|r| err(&r))?;
                Ok(AlgebraSpec::Poset(FinitePoset::from_pairs(n, &pairs)?))
            }
            "upsets" if !rest.is_empty() => Ok(AlgebraSpec::Upsets(PathBuf::from(rest))),
            "upsets" => Err(err("upsets needs a file name")),
            _ => Err(err("unknown algebra kind")),
        }
    }

    pub fn build(&self) -> Result<HeytingAlgebra, SpecError> {
        match self {
            AlgebraSpec::Chain(n) => Ok(HeytingAlgebra::chain(*n)?),
            AlgebraSpec::Poset(p) => Ok(HeytingAlgebra::upset_algebra(p)?),
            AlgebraSpec::Upsets(path) => {
                let shown = path.display().to_string();
                let text = std::fs::read_to_string(path)
                    .map_err(|e| SpecError::Io { path: shown.clone(), reason: e.to_string() })?;
                Ok(HeytingAlgebra::upset_algebra(&parse_poset_file(&text, &shown)?)?)
            }
            AlgebraSpec::Product(factors) => {
                let mut built = factors.iter().map(AlgebraSpec::build);
                let first = built.next().expect("products have factors")?;
                built.try_fold(first, |acc, f| Ok(HeytingAlgebra::product(&acc, &f?)?))
            }
        }
    }
}

impl FromStr for AlgebraSpec {
    type Err = SpecError;

    fn from_str(text: &str) -> Result<Self, SpecError> {
        let text = text.trim();
        match text.strip_prefix("prod:") {
            Some(rest) => {
                let factors = rest.split('*').map(|f| AlgebraSpec::parse_factor(f.trim())).collect::<Result<Vec<_>, _>>()?;
                if factors.len() < 2 {
                    return Err(SpecError::Syntax { spec: text.into(), reason: "a product needs two factors".into() });
                }
                Ok(AlgebraSpec::Product(factors))
            }
            None => AlgebraSpec::parse_factor(text),
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::Chain(n) => write!(f, "chain:{n}"),
            AlgebraSpec::Poset(p) => write!(f, "poset:{p}"),
            AlgebraSpec::Upsets(path) => write!(f, "upsets:{}", path.display()),
            AlgebraSpec::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|x| x.to_string()).collect();
                write!(f, "prod:{}", parts.join("*"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLES: [&str; 3] = [
        "+a v -a |- venn{contours: a; shaded: <a> <>}",
        "ev{contours: a c; zones: <> <a> <c>; shaded: <c>} |- ev{contours: a b c; zones: <> <b> <c> <ab>; shaded: <c>}",
        "euler{contours: a b; zones: <> <b> <a b>}, +a |- +b",
    ];

    #[test]
    fn round_trips() {
        for text in EXAMPLES {
            let s = parse_sequent(text).unwrap();
            let printed = print_sequent(&s);
            assert_eq!(parse_sequent(&printed).unwrap(), s, "{printed}");
            assert_eq!(print_sequent(&parse_sequent(&printed).unwrap()), printed);
        }
        assert_eq!(
            print_sequent(&parse_sequent(EXAMPLES[0]).unwrap()),
            "+a v -a |- venn{contours: a; shaded: <> <a>}"
        );
    }

    #[test]
    fn juxtaposed_zone_names() {
        let d = parse_diagram("euler{contours: a b c; zones: <> <b> <c> <ab>}").unwrap();
        assert_eq!(d, parse_diagram("euler{contours: a b c; zones: <> <b> <c> <a b>}").unwrap());
        // a declared name wins over splitting
        let d = parse_diagram("euler{contours: a b ab; zones: <ab>}").unwrap();
        assert_eq!(d.as_unitary().unwrap().visible_zones().iter().next().unwrap().in_set().len(), 1);
    }

    #[test]
    fn shaded_pure_euler_is_rejected() {
        let e = parse_diagram("euler{contours: a; shaded: <a>}").unwrap_err();
        assert!(matches!(e, ParseError::Diagram { source: DiagramError::ShadedPureEuler, .. }));
    }

    #[test]
    fn errors_carry_spans() {
        let e = parse_sequent("+a |-\n  +b &").unwrap_err();
        assert_eq!(e.span().line, 2);
        assert!(!e.expected().is_empty());
        assert!(matches!(parse_sequent("venn{contours: a a; shaded:} |-"), Err(ParseError::Invalid { .. })));
        assert!(parse_sequent("venn{contours: a; shaded: <b>} |-").is_err());
        assert!(parse_sequent("+a").is_err());
    }

    #[test]
    fn precedence() {
        let d = parse_diagram("+a -> +b -> +c").unwrap();
        assert!(matches!(&d, Diagram::Implies(_, r) if matches!(**r, Diagram::Implies(..))));
        let d = parse_diagram("+a & +b v +c").unwrap();
        assert!(matches!(d, Diagram::Or(..)));
        for text in ["(+a -> +b) -> +c", "(+a v +b) & +c", "+a v (+b -> FALSE)", "((+a & +b) & +c)"] {
            let d = parse_diagram(text).unwrap();
            assert_eq!(parse_diagram(&print_diagram(&d)).unwrap(), d);
        }
        assert_eq!(print_diagram(&parse_diagram("((+a & +b) & +c)").unwrap()), "(+a & +b) & +c");
    }

    #[test]
    fn empty_sides_and_constants() {
        let s = parse_sequent("|-").unwrap();
        assert_eq!(print_sequent(&s), "|-");
        let s = parse_sequent("FALSE |- TRUE, euler{contours:; zones:}").unwrap();
        assert_eq!(parse_sequent(&print_sequent(&s)).unwrap(), s);
        assert_eq!(parse_diagram("venn{contours:; shaded: <>}").unwrap(), Diagram::top());
    }

    #[test]
    fn formulas() {
        let f = parse_formula("~a & b -> c v F").unwrap();
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        assert_eq!(parse_formula("T").unwrap(), Formula::top());
    }

    #[test]
    fn proof_files_round_trip() {
        let p = DiagProof {
            rule: RuleName::SepR,
            conclusion: parse_sequent("+a v -a |- venn{contours: a; shaded: <a> <>}").unwrap(),
            principal: Some(0),
            aux: Aux::Cover(
                [Zone::inside(&crate::diagram::contour_set("a").unwrap(), ContourSet::new()).unwrap()].into(),
                [Zone::inside(&crate::diagram::contour_set("a").unwrap(), crate::diagram::contour_set("a").unwrap()).unwrap()]
                    .into(),
            ),
            premises: vec![DiagProof::leaf(RuleName::Axiom, parse_sequent("+a |- +a").unwrap())],
        };
        let text = print_proof(&p);
        assert_eq!(parse_proof(&text).unwrap(), p);
        assert_eq!(parse_proof(&text.replace('\n', " ")).unwrap(), p);
        let r = DiagProof { aux: Aux::Contours(vec![ContourName::new("a").unwrap()]), rule: RuleName::ReduceL, ..p };
        assert_eq!(parse_proof(&print_proof(&r)).unwrap(), r);
        assert!(parse_proof("(Frobnicate \"|-\")").is_err());
    }

    #[test]
    fn algebra_specs() {
        for text in ["chain:3", "poset:3:0<1,0<2", "prod:chain:2*chain:3", "prod:chain:2*poset:2:*chain:2"] {
            let spec: AlgebraSpec = text.parse().unwrap();
            let again: AlgebraSpec = spec.to_string().parse().unwrap();
            assert_eq!(again, spec);
            spec.build().unwrap();
        }
        assert_eq!("prod:chain:2*chain:3".parse::<AlgebraSpec>().unwrap().build().unwrap().size(), 6);
        assert!("chain:x".parse::<AlgebraSpec>().is_err());
        let p = parse_poset_file("# diamond\n4\n0<1\n0<2\n1<3\n2<3\n", "mem").unwrap();
        assert_eq!(p.size(), 4);
    }
}
