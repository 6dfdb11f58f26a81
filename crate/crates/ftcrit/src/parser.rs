//! The fault-tree description language (FTDL): a line-oriented text format
//! for declaring basic events and the top gate.
//!
//! ```text
//! # comment
//! event x1 rate 18e-3 "Vehicle Failure"
//! event x2 rate 1.347e-4 "Human Factor"
//! top OR(x1, x2)
//! ```
//!
//! Grammar:
//!
//! ```text
//! file       := (event_decl NEWLINE)* top_decl
//! event_decl := "event" ID "rate" NUMBER STRING
//! top_decl   := "top" gate
//! gate       := ("AND"|"OR"|"NAND"|"NOR"|"XOR"|"NOT") "(" [gate ("," gate)*] ")" | ID
//! ```
//!
//! IDs are case-sensitive `[A-Za-z_][A-Za-z0-9_]*`; `#` starts a line
//! comment; strings are double-quoted with `\"`, `\\`, and `\n` escapes.
//! NOT takes
//! exactly one child, XOR exactly two, NAND/NOR at least one; AND/OR accept
//! any number. A gate may span lines inside its parentheses. Input may use LF
//! or CRLF line endings; canonical output uses LF.
//!
//! NAND desugars to `NOT(AND(children))`, NOR to `NOT(OR(children))` and XOR
//! to `OR(AND(NOT a, b), AND(a, NOT b))`; serialization emits the desugared
//! core form, so these spellings are one-way sugar.

use std::collections::HashMap;
use std::fmt;

use crate::error::Error;
use crate::model::{BasicEvent, FaultTree, Gate};

/// Classification of a parse failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    Semantic,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Lexical => "lexical",
            ParseErrorKind::Syntax => "syntax",
            ParseErrorKind::Semantic => "semantic",
        })
    }
}

/// A located parse failure. `line` and `column` are 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    fn new(pos: Pos, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        Self {
            line: pos.line,
            column: pos.column,
            kind,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}: {}",
            self.line, self.column, self.kind, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    KwEvent,
    KwRate,
    KwTop,
    KwAnd,
    KwOr,
    KwNand,
    KwNor,
    KwXor,
    KwNot,
    Ident(String),
    Number(f64),
    Str(String),
    LParen,
    RParen,
    Comma,
    Newline,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::KwEvent => "`event`".into(),
            Tok::KwRate => "`rate`".into(),
            Tok::KwTop => "`top`".into(),
            Tok::KwAnd => "`AND`".into(),
            Tok::KwOr => "`OR`".into(),
            Tok::KwNand => "`NAND`".into(),
            Tok::KwNor => "`NOR`".into(),
            Tok::KwXor => "`XOR`".into(),
            Tok::KwNot => "`NOT`".into(),
            Tok::Ident(id) => format!("identifier `{id}`"),
            Tok::Number(_) => "number".into(),
            Tok::Str(_) => "string".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            chars: src.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn next_token(&mut self) -> Result<(Pos, Tok), ParseError> {
        loop {
            let pos = self.pos();
            let Some(&c) = self.chars.peek() else {
                return Ok((pos, Tok::Eof));
            };
            match c {
                ' ' | '\t' => {
                    self.bump();
                }
                '\r' => {
                    self.bump();
                    if self.chars.peek() == Some(&'\n') {
                        self.bump();
                        return Ok((pos, Tok::Newline));
                    }
                    return Err(ParseError::new(
                        pos,
                        ParseErrorKind::Lexical,
                        "stray carriage return without line feed",
                    ));
                }
                '\n' => {
                    self.bump();
                    return Ok((pos, Tok::Newline));
                }
                '#' => {
                    while matches!(self.chars.peek(), Some(&c) if c != '\n') {
                        self.bump();
                    }
                }
                '(' => {
                    self.bump();
                    return Ok((pos, Tok::LParen));
                }
                ')' => {
                    self.bump();
                    return Ok((pos, Tok::RParen));
                }
                ',' => {
                    self.bump();
                    return Ok((pos, Tok::Comma));
                }
                '"' => return self.string(pos),
                c if c.is_ascii_alphabetic() || c == '_' => return Ok(self.word(pos)),
                c if c.is_ascii_digit() || c == '-' => return self.number(pos),
                other => {
                    return Err(ParseError::new(
                        pos,
                        ParseErrorKind::Lexical,
                        format!("unexpected character `{other}`"),
                    ))
                }
            }
        }
    }

    fn word(&mut self, pos: Pos) -> (Pos, Tok) {
        let mut s = String::new();
        while matches!(self.chars.peek(), Some(&c) if c.is_ascii_alphanumeric() || c == '_') {
            s.push(self.bump().unwrap());
        }
        let tok = match s.as_str() {
            "event" => Tok::KwEvent,
            "rate" => Tok::KwRate,
            "top" => Tok::KwTop,
            "AND" => Tok::KwAnd,
            "OR" => Tok::KwOr,
            "NAND" => Tok::KwNand,
            "NOR" => Tok::KwNor,
            "XOR" => Tok::KwXor,
            "NOT" => Tok::KwNot,
            _ => Tok::Ident(s),
        };
        (pos, tok)
    }

    // Decimal or scientific literal. A leading `-` is accepted lexically so
    // that negative rates surface as semantic (not lexical) errors.
    fn number(&mut self, pos: Pos) -> Result<(Pos, Tok), ParseError> {
        let mut s = String::new();
        if self.chars.peek() == Some(&'-') {
            s.push(self.bump().unwrap());
        }
        let digits = |lex: &mut Self, s: &mut String| {
            let mut any = false;
            while matches!(lex.chars.peek(), Some(&c) if c.is_ascii_digit()) {
                s.push(lex.bump().unwrap());
                any = true;
            }
            any
        };
        if !digits(self, &mut s) {
            return Err(ParseError::new(
                pos,
                ParseErrorKind::Lexical,
                format!("malformed number `{s}`"),
            ));
        }
        if self.chars.peek() == Some(&'.') {
            s.push(self.bump().unwrap());
            if !digits(self, &mut s) {
                return Err(ParseError::new(
                    pos,
                    ParseErrorKind::Lexical,
                    format!("malformed number `{s}`: digits required after `.`"),
                ));
            }
        }
        if matches!(self.chars.peek(), Some(&('e' | 'E'))) {
            s.push(self.bump().unwrap());
            if matches!(self.chars.peek(), Some(&('+' | '-'))) {
                s.push(self.bump().unwrap());
            }
            if !digits(self, &mut s) {
                return Err(ParseError::new(
                    pos,
                    ParseErrorKind::Lexical,
                    format!("malformed number `{s}`: digits required in exponent"),
                ));
            }
        }
        let value: f64 = s.parse().map_err(|_| {
            ParseError::new(
                pos,
                ParseErrorKind::Lexical,
                format!("malformed number `{s}`"),
            )
        })?;
        Ok((pos, Tok::Number(value)))
    }

    fn string(&mut self, pos: Pos) -> Result<(Pos, Tok), ParseError> {
        self.bump(); // opening quote
        let mut s = String::new();
        loop {
            match self.chars.peek() {
                None | Some(&'\n') => {
                    return Err(ParseError::new(
                        pos,
                        ParseErrorKind::Lexical,
                        "unterminated string",
                    ))
                }
                Some(&'"') => {
                    self.bump();
                    return Ok((pos, Tok::Str(s)));
                }
                Some(&'\\') => {
                    self.bump();
                    match self.chars.peek() {
                        Some(&'"') => {
                            self.bump();
                            s.push('"');
                        }
                        Some(&'\\') => {
                            self.bump();
                            s.push('\\');
                        }
                        Some(&'n') => {
                            self.bump();
                            s.push('\n');
                        }
                        other => {
                            let msg = match other {
                                Some(c) => format!("unsupported escape `\\{c}`"),
                                None => "unterminated string".into(),
                            };
                            return Err(ParseError::new(pos, ParseErrorKind::Lexical, msg));
                        }
                    }
                }
                Some(_) => s.push(self.bump().unwrap()),
            }
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    lookahead: Option<(Pos, Tok)>,
    // first occurrence of each atom id in the gate expression, for locating
    // dangling-reference errors
    atom_pos: HashMap<String, Pos>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            lexer: Lexer::new(src),
            lookahead: None,
            atom_pos: HashMap::new(),
        }
    }

    fn peek(&mut self) -> Result<&(Pos, Tok), ParseError> {
        if self.lookahead.is_none() {
            self.lookahead = Some(self.lexer.next_token()?);
        }
        Ok(self.lookahead.as_ref().unwrap())
    }

    fn advance(&mut self) -> Result<(Pos, Tok), ParseError> {
        match self.lookahead.take() {
            Some(t) => Ok(t),
            None => self.lexer.next_token(),
        }
    }

    fn unexpected<T>(&self, pos: Pos, tok: &Tok, wanted: &str) -> Result<T, ParseError> {
        Err(ParseError::new(
            pos,
            ParseErrorKind::Syntax,
            format!("expected {wanted}, found {}", tok.describe()),
        ))
    }

    fn skip_newlines(&mut self) -> Result<(), ParseError> {
        while matches!(self.peek()?.1, Tok::Newline) {
            self.advance()?;
        }
        Ok(())
    }

    fn file(&mut self) -> Result<FaultTree, ParseError> {
        struct Decl {
            label: String,
            rate: f64,
            id_pos: Pos,
            rate_pos: Pos,
        }
        let mut decls: Vec<(String, Decl)> = Vec::new();
        let top_pos;
        loop {
            self.skip_newlines()?;
            let (pos, tok) = self.advance()?;
            match tok {
                Tok::KwEvent => {
                    let (id_pos, id_tok) = self.advance()?;
                    let Tok::Ident(id) = id_tok else {
                        return self.unexpected(id_pos, &id_tok, "event identifier");
                    };
                    let (p, t) = self.advance()?;
                    if t != Tok::KwRate {
                        return self.unexpected(p, &t, "`rate`");
                    }
                    let (rate_pos, rate_tok) = self.advance()?;
                    let Tok::Number(rate) = rate_tok else {
                        return self.unexpected(rate_pos, &rate_tok, "failure rate");
                    };
                    let (p, t) = self.advance()?;
                    let Tok::Str(label) = t else {
                        return self.unexpected(p, &t, "quoted label");
                    };
                    let (p, t) = self.advance()?;
                    if !matches!(t, Tok::Newline | Tok::Eof) {
                        return self.unexpected(p, &t, "end of line");
                    }
                    if decls.iter().any(|(other, _)| *other == id) {
                        return Err(ParseError::new(
                            id_pos,
                            ParseErrorKind::Semantic,
                            format!("duplicate event id `{id}`"),
                        ));
                    }
                    decls.push((
                        id,
                        Decl {
                            label,
                            rate,
                            id_pos,
                            rate_pos,
                        },
                    ));
                }
                Tok::KwTop => {
                    top_pos = pos;
                    break;
                }
                other => {
                    return self.unexpected(pos, &other, "`event` or `top` declaration");
                }
            }
        }

        let top = self.gate()?;
        self.skip_newlines()?;
        let (pos, tok) = self.advance()?;
        if tok != Tok::Eof {
            return self.unexpected(pos, &tok, "end of input");
        }

        let mut events = Vec::with_capacity(decls.len());
        let mut decl_pos = HashMap::new();
        for (id, decl) in decls {
            let event = BasicEvent::new(id.clone(), decl.label, decl.rate).map_err(|e| {
                let pos = match e {
                    Error::NegativeRate(_) => decl.rate_pos,
                    _ => decl.id_pos,
                };
                ParseError::new(pos, ParseErrorKind::Semantic, e.to_string())
            })?;
            decl_pos.insert(id, decl.id_pos);
            events.push(event);
        }

        FaultTree::new(events, top).map_err(|e| {
            let pos = match &e {
                Error::DanglingReference(id) => self.atom_pos.get(id).copied().unwrap_or(top_pos),
                Error::UnusedEvent(id) => decl_pos.get(id).copied().unwrap_or(top_pos),
                _ => top_pos,
            };
            ParseError::new(pos, ParseErrorKind::Semantic, e.to_string())
        })
    }

    fn gate(&mut self) -> Result<Gate, ParseError> {
        self.skip_newlines()?;
        let (pos, tok) = self.advance()?;
        let kind = match tok {
            Tok::Ident(id) => {
                self.atom_pos.entry(id.clone()).or_insert(pos);
                return Ok(Gate::Atomic(id));
            }
            Tok::KwAnd | Tok::KwOr | Tok::KwNand | Tok::KwNor | Tok::KwXor | Tok::KwNot => tok,
            other => return self.unexpected(pos, &other, "gate or event identifier"),
        };

        self.skip_newlines()?;
        let (p, t) = self.advance()?;
        if t != Tok::LParen {
            return self.unexpected(p, &t, "`(`");
        }
        let mut children = Vec::new();
        self.skip_newlines()?;
        if matches!(self.peek()?.1, Tok::RParen) {
            self.advance()?;
        } else {
            loop {
                children.push(self.gate()?);
                self.skip_newlines()?;
                let (p, t) = self.advance()?;
                match t {
                    Tok::Comma => self.skip_newlines()?,
                    Tok::RParen => break,
                    other => return self.unexpected(p, &other, "`,` or `)`"),
                }
            }
        }

        let arity_error = |msg: &str| {
            Err(ParseError::new(
                pos,
                ParseErrorKind::Syntax,
                msg.to_string(),
            ))
        };
        match kind {
            Tok::KwAnd => Ok(Gate::And(children)),
            Tok::KwOr => Ok(Gate::Or(children)),
            Tok::KwNot => {
                if children.len() != 1 {
                    return arity_error("NOT takes exactly one child");
                }
                Ok(!children.pop().unwrap())
            }
            Tok::KwXor => {
                if children.len() != 2 {
                    return arity_error("XOR takes exactly two children");
                }
                let b = children.pop().unwrap();
                let a = children.pop().unwrap();
                Ok(Gate::xor(a, b))
            }
            Tok::KwNand => {
                if children.is_empty() {
                    return arity_error("NAND takes at least one child");
                }
                Ok(!Gate::And(children))
            }
            Tok::KwNor => {
                if children.is_empty() {
                    return arity_error("NOR takes at least one child");
                }
                Ok(Gate::nor(children))
            }
            _ => unreachable!(),
        }
    }
}

/// Parses FTDL source into a validated [`FaultTree`].
///
/// Any input that does not match the grammar yields a located [`ParseError`];
/// model validation failures surface as `Semantic` errors at the offending
/// declaration or reference.
pub fn parse_ftdl(source: &str) -> Result<FaultTree, ParseError> {
    Parser::new(source).file()
}

fn format_rate(rate: f64) -> String {
    if rate == 0.0 {
        "0".to_string()
    } else if (1e-4..1e6).contains(&rate) {
        format!("{rate}")
    } else {
        format!("{rate:e}")
    }
}

fn escape_label(label: &str) -> String {
    let mut out = String::with_capacity(label.len());
    for c in label.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            other => out.push(other),
        }
    }
    out
}

fn write_gate(gate: &Gate, out: &mut String) {
    match gate {
        Gate::And(cs) | Gate::Or(cs) => {
            out.push_str(if matches!(gate, Gate::And(_)) {
                "AND("
            } else {
                "OR("
            });
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_gate(c, out);
            }
            out.push(')');
        }
        Gate::Not(c) => {
            out.push_str("NOT(");
            write_gate(c, out);
            out.push(')');
        }
        Gate::Atomic(id) => out.push_str(id),
    }
}

// XOR desugars one-way, so serialization flags the recognizable pattern.
fn contains_xor_pattern(gate: &Gate) -> bool {
    let is_pattern = |gate: &Gate| -> bool {
        let Gate::Or(cs) = gate else { return false };
        let [Gate::And(l), Gate::And(r)] = cs.as_slice() else {
            return false;
        };
        let ([Gate::Not(na), b], [a, Gate::Not(nb)]) = (l.as_slice(), r.as_slice()) else {
            return false;
        };
        na.as_ref() == a && nb.as_ref() == b
    };
    if is_pattern(gate) {
        return true;
    }
    match gate {
        Gate::And(cs) | Gate::Or(cs) => cs.iter().any(contains_xor_pattern),
        Gate::Not(c) => contains_xor_pattern(c),
        Gate::Atomic(_) => false,
    }
}

/// Serializes a tree to canonical FTDL: one event per line in declaration
/// order, then the top gate in desugared core form (AND/OR/NOT), LF endings.
/// `parse_ftdl(serialize_ftdl(t))` is structurally equal to `t`.
pub fn serialize_ftdl(tree: &FaultTree) -> String {
    let mut out = String::new();
    for ev in tree.events() {
        out.push_str(&format!(
            "event {} rate {} \"{}\"\n",
            ev.id(),
            format_rate(ev.rate()),
            escape_label(ev.label())
        ));
    }
    if contains_xor_pattern(tree.top()) {
        out.push_str("# note: XOR sugar stored desugared as OR(AND(NOT a, b), AND(a, NOT b))\n");
    }
    out.push_str("top ");
    write_gate(tree.top(), &mut out);
    out.push('\n');
    out
}
