//! The `eval` query language.
//!
//! ```text
//! expr := set | elem | pred
//! set  := "polar(" set ")" | "dpolar(" set ")" | "ideal(" elem ")"
//!       | "mstar(" set ")" | "val(" elem ")" | "{" elem ("," elem)* "}"
//!       | "primes()" | "minprimes()" | "basis()" | "rad()"
//! elem := label | "meet(" elem "," elem ")" | "join(" elem "," elem ")"
//! pred := "is(" class ")" | "consistent()" | "projectable()"
//! ```
//!
//! A keyword is a function only when `(` follows it; otherwise it is read as
//! an element label. `val`, `primes` and `minprimes` yield families of sets.

use std::fmt;

use thiserror::Error;

use latkit_core::classes::{classify, is_consistent, ClassError, ClassId};
use latkit_core::ideals::{enumerate_primes, m_star, minimal_primes, principal_ideal, value_spectrum, values, IdealSet};
use latkit_core::polars::{double_polar_set, find_basis, is_projectable, polar_set};
use latkit_core::{ElemSet, FiniteLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("type mismatch: {function} expects {expected}, got {found}")]
    TypeMismatch {
        function: &'static str,
        expected: Kind,
        found: Kind,
    },
    #[error("{function}: {message}")]
    Domain { function: &'static str, message: String },
    #[error("{function}: lattice is not decomposable")]
    NotDecomposable { function: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Element,
    Set,
    Family,
    Bool,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Element => "an element",
            Kind::Set => "a set",
            Kind::Family => "a family of sets",
            Kind::Bool => "a truth value",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Func {
    Polar,
    DPolar,
    Ideal,
    MStar,
    Val,
    Primes,
    MinPrimes,
    Basis,
    Rad,
    Meet,
    Join,
    Is,
    Consistent,
    Projectable,
}

impl Func {
    fn from_keyword(word: &str) -> Option<Self> {
        Some(match word {
            "polar" => Func::Polar,
            "dpolar" => Func::DPolar,
            "ideal" => Func::Ideal,
            "mstar" => Func::MStar,
            "val" => Func::Val,
            "primes" => Func::Primes,
            "minprimes" => Func::MinPrimes,
            "basis" => Func::Basis,
            "rad" => Func::Rad,
            "meet" => Func::Meet,
            "join" => Func::Join,
            "is" => Func::Is,
            "consistent" => Func::Consistent,
            "projectable" => Func::Projectable,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Func::Polar => "polar",
            Func::DPolar => "dpolar",
            Func::Ideal => "ideal",
            Func::MStar => "mstar",
            Func::Val => "val",
            Func::Primes => "primes",
            Func::MinPrimes => "minprimes",
            Func::Basis => "basis",
            Func::Rad => "rad",
            Func::Meet => "meet",
            Func::Join => "join",
            Func::Is => "is",
            Func::Consistent => "consistent",
            Func::Projectable => "projectable",
        }
    }

    fn arity(self) -> usize {
        match self {
            Func::Primes | Func::MinPrimes | Func::Basis | Func::Rad | Func::Consistent | Func::Projectable => 0,
            Func::Meet | Func::Join => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Label(String),
    SetLiteral(Vec<Expr>),
    Is(ClassId),
    Call(FuncCall),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuncCall {
    func: Func,
    args: Vec<Expr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Word(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Word(w) => write!(f, "`{w}`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::LBrace => f.write_str("`{`"),
            Token::RBrace => f.write_str("`}`"),
            Token::Comma => f.write_str("`,`"),
            Token::End => f.write_str("end of input"),
        }
    }
}

fn is_word_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '(' | ')' | '{' | '}' | ',')
}

/// Tokens with their 1-based starting columns.
fn tokenize(src: &str) -> Vec<(Token, usize)> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Token::LParen,
            ')' => Token::RParen,
            '{' => Token::LBrace,
            '}' => Token::RBrace,
            ',' => Token::Comma,
            _ => {
                let start = i;
                while i < chars.len() && is_word_char(chars[i]) {
                    i += 1;
                }
                out.push((Token::Word(chars[start..i].iter().collect()), col));
                continue;
            }
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Token::End, chars.len() + 1));
    out
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn peek2(&self) -> &Token {
        &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)].0
    }

    fn column(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn error(&self, message: impl Into<String>) -> QueryError {
        QueryError::Parse {
            column: self.column(),
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Token) -> Result<(), QueryError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {want}, found {}", self.peek())))
        }
    }

    fn expr(&mut self) -> Result<Expr, QueryError> {
        match self.peek().clone() {
            Token::LBrace => {
                self.bump();
                let mut items = vec![self.expr()?];
                while *self.peek() == Token::Comma {
                    self.bump();
                    items.push(self.expr()?);
                }
                self.expect(Token::RBrace)?;
                Ok(Expr::SetLiteral(items))
            }
            Token::Word(w) => {
                let func = match Func::from_keyword(&w) {
                    Some(f) if *self.peek2() == Token::LParen => f,
                    _ => {
                        self.bump();
                        return Ok(Expr::Label(w));
                    }
                };
                self.bump();
                self.bump();
                if func == Func::Is {
                    let class = match self.peek().clone() {
                        Token::Word(name) => name
                            .parse::<ClassId>()
                            .map_err(|e| self.error(e))?,
                        other => return Err(self.error(format!("expected a class name, found {other}"))),
                    };
                    self.bump();
                    self.expect(Token::RParen)?;
                    return Ok(Expr::Is(class));
                }
                let mut args = Vec::new();
                for i in 0..func.arity() {
                    if i > 0 {
                        self.expect(Token::Comma)?;
                    }
                    args.push(self.expr()?);
                }
                self.expect(Token::RParen)?;
                Ok(Expr::Call(FuncCall { func, args }))
            }
            other => Err(self.error(format!("expected an expression, found {other}"))),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, QueryError> {
    let mut p = Parser {
        tokens: tokenize(src),
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Token::End {
        return Err(p.error(format!("unexpected {}", p.peek())));
    }
    Ok(e)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Element(usize),
    Set(ElemSet),
    Family(Vec<ElemSet>),
    Bool(bool),
}

impl Value {
    pub fn kind(&self) -> Kind {
        match self {
            Value::Element(_) => Kind::Element,
            Value::Set(_) => Kind::Set,
            Value::Family(_) => Kind::Family,
            Value::Bool(_) => Kind::Bool,
        }
    }

    /// Elements print as labels, sets as `{x, y}` in element order, families
    /// one set per line in canonical set order.
    pub fn render(&self, lattice: &FiniteLattice) -> String {
        match self {
            Value::Element(x) => lattice.label(*x).to_string(),
            Value::Set(s) => lattice.format_set(*s),
            Value::Family(f) if f.is_empty() => "(none)".to_string(),
            Value::Family(f) => f
                .iter()
                .map(|s| lattice.format_set(*s))
                .collect::<Vec<_>>()
                .join("\n"),
            Value::Bool(b) => b.to_string(),
        }
    }
}

fn family(sets: Vec<IdealSet>) -> Value {
    let mut f: Vec<ElemSet> = sets.into_iter().map(IdealSet::members).collect();
    f.sort();
    Value::Family(f)
}

fn class_error(function: &'static str, e: ClassError) -> QueryError {
    match e {
        ClassError::NotDecomposable(_) => QueryError::NotDecomposable { function },
        other => QueryError::Domain {
            function,
            message: other.to_string(),
        },
    }
}

fn domain(function: &'static str, e: impl fmt::Display) -> QueryError {
    QueryError::Domain {
        function,
        message: e.to_string(),
    }
}

pub fn evaluate(lattice: &FiniteLattice, expr: &Expr) -> Result<Value, QueryError> {
    match expr {
        Expr::Label(l) => lattice
            .index_of(l)
            .map(Value::Element)
            .ok_or_else(|| QueryError::UnknownElement(l.clone())),
        Expr::SetLiteral(items) => {
            let mut s = ElemSet::EMPTY;
            for item in items {
                match evaluate(lattice, item)? {
                    Value::Element(x) => s.insert(x),
                    other => {
                        return Err(QueryError::TypeMismatch {
                            function: "{...}",
                            expected: Kind::Element,
                            found: other.kind(),
                        })
                    }
                }
            }
            Ok(Value::Set(s))
        }
        Expr::Is(class) => {
            let report = classify(lattice).map_err(|e| class_error("is", e))?;
            report
                .member(*class)
                .map(Value::Bool)
                .map_err(|e| class_error("is", e))
        }
        Expr::Call(call) => call_function(lattice, call),
    }
}

fn call_function(lattice: &FiniteLattice, call: &FuncCall) -> Result<Value, QueryError> {
    let name = call.func.name();
    let args = call
        .args
        .iter()
        .map(|a| evaluate(lattice, a))
        .collect::<Result<Vec<_>, _>>()?;
    let mismatch = |expected: Kind, found: &Value| QueryError::TypeMismatch {
        function: name,
        expected,
        found: found.kind(),
    };
    let element = |v: &Value| match v {
        Value::Element(x) => Ok(*x),
        other => Err(mismatch(Kind::Element, other)),
    };
    let set = |v: &Value| match v {
        Value::Set(s) => Ok(*s),
        other => Err(mismatch(Kind::Set, other)),
    };
    Ok(match call.func {
        Func::Polar => Value::Set(polar_set(lattice, set(&args[0])?)),
        Func::DPolar => Value::Set(double_polar_set(lattice, set(&args[0])?)),
        Func::Ideal => {
            let ideal = principal_ideal(lattice, element(&args[0])?).map_err(|e| domain(name, e))?;
            Value::Set(ideal.members())
        }
        Func::MStar => {
            let m = IdealSet::new(lattice, set(&args[0])?).map_err(|e| domain(name, e))?;
            Value::Set(m_star(lattice, m).map_err(|e| domain(name, e))?.members())
        }
        Func::Val => family(values(lattice, element(&args[0])?).map_err(|e| domain(name, e))?),
        Func::Primes => family(enumerate_primes(lattice)),
        Func::MinPrimes => family(minimal_primes(lattice)),
        Func::Basis => match find_basis(lattice).map_err(|e| domain(name, e))? {
            Some(b) => Value::Set(b.into_iter().fold(ElemSet::EMPTY, ElemSet::with)),
            None => return Err(domain(name, "the lattice has no basis")),
        },
        Func::Rad => Value::Set(
            value_spectrum(lattice)
                .map_err(|e| domain(name, e))?
                .radical
                .members(),
        ),
        Func::Meet => Value::Element(lattice.meet(element(&args[0])?, element(&args[1])?)),
        Func::Join => Value::Element(lattice.join(element(&args[0])?, element(&args[1])?)),
        Func::Consistent => Value::Bool(is_consistent(lattice).map_err(|e| class_error(name, e))?.0),
        Func::Projectable => Value::Bool(is_projectable(lattice).map_err(|e| domain(name, e))?.0),
        Func::Is => unreachable!("is() is parsed into Expr::Is"),
    })
}

/// Parses, evaluates and renders `src` against `lattice`.
pub fn eval(lattice: &FiniteLattice, src: &str) -> Result<String, QueryError> {
    let expr = parse(src)?;
    Ok(evaluate(lattice, &expr)?.render(lattice))
}
