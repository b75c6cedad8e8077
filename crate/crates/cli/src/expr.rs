//! The Appell-group calculator grammar:
//!
//! ```text
//! expr    := term ('+' term)*
//! term    := factor ('*' factor)*
//! factor  := primary ('^' integer)?
//! primary := family | 'identity' | 'inv' '(' expr ')' | '(' expr ')'
//! family  := 'bernoulli' | 'euler' | 'genocchi' | 'hermite'
//! ```
//!
//! `+` adds determining functions, `*` is the Appell convolution, `inv`
//! and negative powers invert (rejected on degenerate operands).

use pqcalc::families::{family_sequence, FamilyKind};
use pqcalc::{AppellSequence, Error, PQContext};

#[derive(Debug, PartialEq)]
pub enum ExprError {
    /// Malformed input: unknown token, bad syntax.
    Parse(String),
    /// Structurally valid but mathematically undefined.
    Domain(String),
}

impl std::fmt::Display for ExprError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExprError::Parse(msg) => write!(f, "parse error: {msg}"),
            ExprError::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Int(i64),
    Star,
    Plus,
    Caret,
    Open,
    Close,
}

fn tokenize(input: &str) -> Result<Vec<Token>, ExprError> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '*' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            '(' => {
                chars.next();
                tokens.push(Token::Open);
            }
            ')' => {
                chars.next();
                tokens.push(Token::Close);
            }
            'a'..='z' | 'A'..='Z' => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphabetic() {
                        ident.push(c.to_ascii_lowercase());
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Ident(ident));
            }
            '-' | '0'..='9' => {
                let mut num = String::new();
                num.push(c);
                chars.next();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        num.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let value = num
                    .parse()
                    .map_err(|_| ExprError::Parse(format!("bad integer {num:?}")))?;
                tokens.push(Token::Int(value));
            }
            other => return Err(ExprError::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    ctx: &'a PQContext,
    order: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_close(&mut self) -> Result<(), ExprError> {
        match self.next() {
            Some(Token::Close) => Ok(()),
            other => Err(ExprError::Parse(format!("expected ')', got {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<AppellSequence, ExprError> {
        let mut acc = self.term()?;
        while self.peek() == Some(&Token::Plus) {
            self.next();
            let rhs = self.term()?;
            acc = acc.add(&rhs).map_err(domain)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<AppellSequence, ExprError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.next();
            let rhs = self.factor()?;
            acc = acc.convolve(&rhs).map_err(domain)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<AppellSequence, ExprError> {
        let base = self.primary()?;
        if self.peek() == Some(&Token::Caret) {
            self.next();
            match self.next() {
                Some(Token::Int(k)) => base.power(k).map_err(domain),
                other => Err(ExprError::Parse(format!(
                    "expected integer exponent, got {other:?}"
                ))),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<AppellSequence, ExprError> {
        match self.next() {
            Some(Token::Ident(name)) if name == "inv" => {
                match self.next() {
                    Some(Token::Open) => {}
                    other => {
                        return Err(ExprError::Parse(format!(
                            "expected '(' after inv, got {other:?}"
                        )))
                    }
                }
                let inner = self.expr()?;
                self.expect_close()?;
                inner.inverse().map_err(domain)
            }
            Some(Token::Ident(name)) if name == "identity" || name == "i" => {
                Ok(AppellSequence::identity(self.ctx, self.order))
            }
            Some(Token::Ident(name)) => match name.parse::<FamilyKind>() {
                Ok(kind) => Ok(family_sequence(kind, self.ctx, self.order)),
                Err(_) => Err(ExprError::Parse(format!("unknown sequence {name:?}"))),
            },
            Some(Token::Open) => {
                let inner = self.expr()?;
                self.expect_close()?;
                Ok(inner)
            }
            other => Err(ExprError::Parse(format!(
                "expected a sequence, got {other:?}"
            ))),
        }
    }
}

fn domain(e: Error) -> ExprError {
    match e {
        Error::DegenerateSequence(op) => ExprError::Domain(format!(
            "{op} is undefined for a degenerate sequence (a_0 = 0)"
        )),
        other => ExprError::Domain(other.to_string()),
    }
}

/// Evaluates an Appell-group expression over the given context, with
/// all sequences built to the given order.
pub fn eval(input: &str, ctx: &PQContext, order: usize) -> Result<AppellSequence, ExprError> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(ExprError::Parse("empty expression".into()));
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        ctx,
        order,
    };
    let result = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(ExprError::Parse(format!(
            "trailing input at token {}",
            parser.pos
        )));
    }
    Ok(result)
}
