//! Surface syntax for formulas.
//!
//! ```text
//! formula  := disj [ "->" formula | "<->" formula ]
//! disj     := conj { "|" conj }
//! conj     := unary { "&" unary }
//! unary    := ("~" | "!") unary | quant | atom | "(" formula ")"
//! quant    := "E" var "." formula | "A" var "." formula
//!           | ("exists" | "forall" | "E" | "A") var { "," var } "." formula
//!           | "Q[" name "]" var "." formula
//!           | "Q[" name "]" "(" var { "," var } ")" "[" formula { ";" formula } "]"
//! atom     := "true" | "false" | "P_" symbol "(" term ")"
//!           | "BIT(" term "," term ")" | "PLUS(" term "," term "," term ")"
//!           | term ("=" | "!=" | "<" | "<=" | ">" | ">=") term
//!           | term "+" term "=" term
//! term     := var | "min" | "max"
//! var      := [a-z][a-z0-9_']*
//! ```
//!
//! Quantifier bodies extend as far right as possible. A bound variable that
//! shadows an enclosing bound variable is renamed to a fresh name.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::alphabet::Alphabet;
use crate::error::Error;
use crate::formula::{Formula, Lindstrom, Term};
use crate::language::{LanguageRef, NamedLanguage};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the source text.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.position, self.message)
    }
}

impl core::error::Error for ParseError {}

/// Languages addressable as `Q[name]`. Built-in names (`Maj`, `Dyck2`,
/// `Eq01`, `Add`) resolve without being registered.
#[derive(Debug, Clone, Default)]
pub struct LanguageEnv {
    languages: BTreeMap<String, LanguageRef>,
}

impl LanguageEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: &str, language: LanguageRef) -> &mut Self {
        self.languages.insert(name.to_string(), language);
        self
    }

    pub fn get(&self, name: &str) -> Option<LanguageRef> {
        self.languages
            .get(name)
            .cloned()
            .or_else(|| NamedLanguage::from_name(name).map(LanguageRef::Named))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.languages.keys().map(String::as_str)
    }
}

/// Parses `text`, rejecting letter atoms whose symbol is not in `sigma`.
pub fn parse_formula(text: &str, sigma: &Alphabet) -> Result<Formula, Error> {
    parse_formula_with(text, Some(sigma), &LanguageEnv::new())
}

/// Parses with user-defined languages; `sigma = None` accepts any letter.
pub fn parse_formula_with(text: &str, sigma: Option<&Alphabet>, env: &LanguageEnv) -> Result<Formula, Error> {
    let tokens = lex(text)?;
    let identifiers = tokens
        .iter()
        .filter_map(|t| match &t.kind {
            Tok::Ident(s) => Some(s.clone()),
            _ => None,
        })
        .collect();
    let mut p = Parser { tokens, pos: 0, end: text.len(), sigma, env, scope: Vec::new(), identifiers };
    let f = p.formula()?;
    if let Some(t) = p.tokens.get(p.pos) {
        return Err(p.error_at(t.start, format!("unexpected {}", t.kind)));
    }
    Ok(f)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Letter(char),
    Lang(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Dot,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Letter(c) => write!(f, "`P_{c}`"),
            Tok::Lang(s) => write!(f, "`Q[{s}]`"),
            other => {
                let s = match other {
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBracket => "[",
                    Tok::RBracket => "]",
                    Tok::Comma => ",",
                    Tok::Semi => ";",
                    Tok::Dot => ".",
                    Tok::Not => "~",
                    Tok::And => "&",
                    Tok::Or => "|",
                    Tok::Implies => "->",
                    Tok::Iff => "<->",
                    Tok::Eq => "=",
                    Tok::Ne => "!=",
                    Tok::Lt => "<",
                    Tok::Le => "<=",
                    Tok::Gt => ">",
                    Tok::Ge => ">=",
                    Tok::Plus => "+",
                    _ => unreachable!(),
                };
                write!(f, "`{s}`")
            }
        }
    }
}

struct Token {
    kind: Tok,
    start: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, Error> {
    let err = |position: usize, message: String| Error::Parse(ParseError { position, message });
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let rest = &text[start..];
        let (kind, len) = if let Some(after) = rest.strip_prefix("P_") {
            let letter = after.chars().next().filter(|c| !c.is_whitespace()).ok_or_else(|| {
                err(start, "expected a symbol after `P_`".to_string())
            })?;
            (Tok::Letter(letter), 2 + letter.len_utf8())
        } else if let Some(after) = rest.strip_prefix("Q[") {
            let close = after.find(']').ok_or_else(|| err(start, "unterminated `Q[`".to_string()))?;
            let name = after[..close].trim();
            if name.is_empty() {
                return Err(err(start, "empty language name".to_string()));
            }
            (Tok::Lang(name.to_string()), 2 + close + 1)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let len = rest
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_' || ch == '\''))
                .unwrap_or(rest.len());
            (Tok::Ident(rest[..len].to_string()), len)
        } else {
            let two = rest.get(..2).unwrap_or("");
            let three = rest.get(..3).unwrap_or("");
            match (three, two, c) {
                ("<->", _, _) => (Tok::Iff, 3),
                (_, "->", _) => (Tok::Implies, 2),
                (_, "!=", _) => (Tok::Ne, 2),
                (_, "<=", _) => (Tok::Le, 2),
                (_, ">=", _) => (Tok::Ge, 2),
                (_, _, '(') => (Tok::LParen, 1),
                (_, _, ')') => (Tok::RParen, 1),
                (_, _, '[') => (Tok::LBracket, 1),
                (_, _, ']') => (Tok::RBracket, 1),
                (_, _, ',') => (Tok::Comma, 1),
                (_, _, ';') => (Tok::Semi, 1),
                (_, _, '.') => (Tok::Dot, 1),
                (_, _, '~') | (_, _, '!') => (Tok::Not, 1),
                (_, _, '&') => (Tok::And, 1),
                (_, _, '|') => (Tok::Or, 1),
                (_, _, '=') => (Tok::Eq, 1),
                (_, _, '<') => (Tok::Lt, 1),
                (_, _, '>') => (Tok::Gt, 1),
                (_, _, '+') => (Tok::Plus, 1),
                _ => return Err(err(start, format!("unexpected character `{c}`"))),
            }
        };
        out.push(Token { kind, start });
        while chars.peek().is_some_and(|&(i, _)| i < start + len) {
            chars.next();
        }
    }
    Ok(out)
}

const RESERVED: [&str; 8] = ["min", "max", "true", "false", "exists", "forall", "BIT", "PLUS"];

fn is_var(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' || c == '\'')
        && !RESERVED.contains(&s)
}

enum Quant {
    Exists,
    Forall,
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
    sigma: Option<&'a Alphabet>,
    env: &'a LanguageEnv,
    // (source name, bound name), innermost last
    scope: Vec<(String, String)>,
    identifiers: BTreeSet<String>,
}

impl Parser<'_> {
    fn error_at(&self, position: usize, message: String) -> Error {
        Error::Parse(ParseError { position, message })
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.start)
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.tokens.get(self.pos + 1).map(|t| &t.kind)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), Error> {
        if self.eat(&tok) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |t| format!("{t}"));
            Err(self.error_at(self.here(), format!("expected {tok}, found {found}")))
        }
    }

    fn formula(&mut self) -> Result<Formula, Error> {
        let left = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let right = self.formula()?;
            return Ok(Formula::implies(left, right));
        }
        if self.eat(&Tok::Iff) {
            let right = self.formula()?;
            return Ok(Formula::or(alloc::vec![
                Formula::and(alloc::vec![left.clone(), right.clone()]),
                Formula::and(alloc::vec![Formula::not(left), Formula::not(right)]),
            ]));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, Error> {
        let mut parts = alloc::vec![self.conjunction()?];
        while self.eat(&Tok::Or) {
            parts.push(self.conjunction()?);
        }
        Ok(Formula::or(parts))
    }

    fn conjunction(&mut self) -> Result<Formula, Error> {
        let mut parts = alloc::vec![self.unary()?];
        while self.eat(&Tok::And) {
            parts.push(self.unary()?);
        }
        Ok(Formula::and(parts))
    }

    fn unary(&mut self) -> Result<Formula, Error> {
        let start = self.here();
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Lang(name)) => {
                self.pos += 1;
                self.lindstrom(&name, start)
            }
            Some(Tok::Ident(word)) => {
                if let Some((q, vars)) = self.quantifier_head(&word)? {
                    return self.quantified(q, vars);
                }
                self.atom()
            }
            Some(_) => self.atom(),
            None => Err(self.error_at(start, "unexpected end of input".to_string())),
        }
    }

    /// Recognizes `Ex.`, `E x, y.`, `exists x.` and the universal forms.
    /// Leaves the position untouched when the identifier is not a quantifier.
    fn quantifier_head(&mut self, word: &str) -> Result<Option<(Quant, Vec<(String, usize)>)>, Error> {
        let kind = |c: char| match c {
            'E' => Some(Quant::Exists),
            'A' => Some(Quant::Forall),
            _ => None,
        };
        let start = self.here();
        let keyword = match word {
            "E" | "exists" | "Exists" => Some(Quant::Exists),
            "A" | "All" | "forall" | "Forall" => Some(Quant::Forall),
            _ => None,
        };
        if let Some(q) = keyword {
            if !matches!(self.peek2(), Some(Tok::Ident(v)) if is_var(v)) {
                return Ok(None);
            }
            self.pos += 1;
            let vars = self.var_list()?;
            self.expect(Tok::Dot)?;
            return Ok(Some((q, vars)));
        }
        let mut chars = word.chars();
        let Some(q) = chars.next().and_then(kind) else { return Ok(None) };
        let var = chars.as_str();
        if !is_var(var) || !matches!(self.peek2(), Some(Tok::Dot) | Some(Tok::Comma)) {
            return Ok(None);
        }
        self.pos += 1;
        let mut vars = alloc::vec![(var.to_string(), start + 1)];
        if self.eat(&Tok::Comma) {
            vars.extend(self.var_list()?);
        }
        self.expect(Tok::Dot)?;
        Ok(Some((q, vars)))
    }

    fn var_list(&mut self) -> Result<Vec<(String, usize)>, Error> {
        let mut vars = Vec::new();
        loop {
            let at = self.here();
            match self.peek().cloned() {
                Some(Tok::Ident(v)) if is_var(&v) => {
                    self.pos += 1;
                    vars.push((v, at));
                }
                _ => return Err(self.error_at(at, "expected a variable name".to_string())),
            }
            if !self.eat(&Tok::Comma) {
                return Ok(vars);
            }
        }
    }

    fn bind(&mut self, vars: &[(String, usize)]) -> Result<Vec<String>, Error> {
        let mut bound = Vec::with_capacity(vars.len());
        for (i, (v, at)) in vars.iter().enumerate() {
            if vars[..i].iter().any(|(w, _)| w == v) {
                return Err(self.error_at(*at, format!("variable `{v}` bound twice in one tuple")));
            }
            let clash = self.scope.iter().any(|(_, b)| b == v);
            let name = if clash { self.fresh(v) } else { v.clone() };
            self.identifiers.insert(name.clone());
            self.scope.push((v.clone(), name.clone()));
            bound.push(name);
        }
        Ok(bound)
    }

    fn fresh(&self, base: &str) -> String {
        let mut name = format!("{base}'");
        while self.identifiers.contains(&name) || self.scope.iter().any(|(_, b)| *b == name) {
            name.push('\'');
        }
        name
    }

    fn unbind(&mut self, n: usize) {
        self.scope.truncate(self.scope.len() - n);
    }

    fn quantified(&mut self, q: Quant, vars: Vec<(String, usize)>) -> Result<Formula, Error> {
        let bound = self.bind(&vars)?;
        let body = self.formula();
        self.unbind(bound.len());
        let mut f = body?;
        for v in bound.iter().rev() {
            f = match q {
                Quant::Exists => Formula::Exists(v.clone(), Box::new(f)),
                Quant::Forall => Formula::Forall(v.clone(), Box::new(f)),
            };
        }
        Ok(f)
    }

    fn lindstrom(&mut self, name: &str, start: usize) -> Result<Formula, Error> {
        let language = self
            .env
            .get(name)
            .ok_or_else(|| self.error_at(start, format!("unknown language `{name}`")))?;
        let expected = language.alphabet().len() - 1;
        let (vars, tuple) = if self.eat(&Tok::LParen) {
            let vars = self.var_list()?;
            self.expect(Tok::RParen)?;
            (vars, true)
        } else {
            let vars = self.var_list()?;
            if vars.len() != 1 {
                return Err(self.error_at(start, "a tuple quantifier needs `(x, y)[...]`".to_string()));
            }
            self.expect(Tok::Dot)?;
            (vars, false)
        };
        let bound = self.bind(&vars)?;
        let bodies = if tuple {
            self.bracketed_bodies()
        } else {
            self.formula().map(|f| alloc::vec![f])
        };
        self.unbind(bound.len());
        let bodies = bodies?;
        if bodies.len() != expected {
            return Err(Error::BodyCount { language: language.name(), expected, found: bodies.len() });
        }
        Ok(Formula::Lindstrom(Box::new(Lindstrom { language, vars: bound, bodies })))
    }

    fn bracketed_bodies(&mut self) -> Result<Vec<Formula>, Error> {
        self.expect(Tok::LBracket)?;
        let mut bodies = alloc::vec![self.formula()?];
        while self.eat(&Tok::Semi) {
            bodies.push(self.formula()?);
        }
        self.expect(Tok::RBracket)?;
        Ok(bodies)
    }

    fn term(&mut self) -> Result<Term, Error> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Ident(s)) if s == "min" => {
                self.pos += 1;
                Ok(Term::Min)
            }
            Some(Tok::Ident(s)) if s == "max" => {
                self.pos += 1;
                Ok(Term::Max)
            }
            Some(Tok::Ident(s)) if is_var(&s) => {
                self.pos += 1;
                let resolved = self
                    .scope
                    .iter()
                    .rev()
                    .find(|(src, _)| *src == s)
                    .map_or(s, |(_, b)| b.clone());
                Ok(Term::Var(resolved))
            }
            Some(t) => Err(self.error_at(at, format!("expected a term, found {t}"))),
            None => Err(self.error_at(at, "expected a term, found end of input".to_string())),
        }
    }

    fn atom(&mut self) -> Result<Formula, Error> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Ident(s)) if s == "true" => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Some(Tok::Ident(s)) if s == "false" => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Some(Tok::Ident(s)) if s == "BIT" || s == "PLUS" => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let mut args = alloc::vec![self.term()?];
                while self.eat(&Tok::Comma) {
                    args.push(self.term()?);
                }
                self.expect(Tok::RParen)?;
                let arity = if s == "BIT" { 2 } else { 3 };
                if args.len() != arity {
                    return Err(self.error_at(at, format!("`{s}` takes {arity} arguments")));
                }
                let mut args = args.into_iter();
                let mut next = || args.next().expect("arity checked");
                Ok(if s == "BIT" {
                    Formula::Bit(next(), next())
                } else {
                    Formula::Plus(next(), next(), next())
                })
            }
            Some(Tok::Letter(c)) => {
                self.pos += 1;
                if let Some(sigma) = self.sigma {
                    if !sigma.contains(c) {
                        return Err(Error::UnknownSymbol(c));
                    }
                }
                self.expect(Tok::LParen)?;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Formula::Letter(c, t))
            }
            Some(Tok::Ident(_)) => self.relation(),
            Some(t) => Err(self.error_at(at, format!("unexpected {t}"))),
            None => Err(self.error_at(at, "unexpected end of input".to_string())),
        }
    }

    fn relation(&mut self) -> Result<Formula, Error> {
        let left = self.term()?;
        let at = self.here();
        let op = self.peek().cloned();
        self.pos += 1;
        match op {
            Some(Tok::Plus) => {
                let right = self.term()?;
                self.expect(Tok::Eq)?;
                let sum = self.term()?;
                Ok(Formula::Plus(left, right, sum))
            }
            Some(Tok::Eq) => Ok(Formula::Eq(left, self.term()?)),
            Some(Tok::Ne) => Ok(Formula::not(Formula::Eq(left, self.term()?))),
            Some(Tok::Lt) => Ok(Formula::Lt(left, self.term()?)),
            Some(Tok::Le) => Ok(Formula::le(left, self.term()?)),
            Some(Tok::Gt) => Ok(Formula::Lt(self.term()?, left)),
            Some(Tok::Ge) => {
                let right = self.term()?;
                Ok(Formula::le(right, left))
            }
            _ => {
                self.pos -= 1;
                Err(self.error_at(at, "expected a relation after the term".to_string()))
            }
        }
    }
}
