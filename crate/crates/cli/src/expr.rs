//! Bound expressions: closed forms over the scenario parameters.
//!
//! Grammar: `+ - * /`, parentheses, unary minus, decimal literals, the
//! constant `e`, the functions `sqrt`, `ceil`, `floor`, and the variables
//! n, k, r, m, t supplied by the scenario.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, PartialEq)]
pub struct ExprError(pub String);

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bound expression error: {}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
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
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '-' => {
                chars.next();
                tokens.push(Token::Minus);
            }
            '*' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '/' => {
                chars.next();
                tokens.push(Token::Slash);
            }
            '(' => {
                chars.next();
                tokens.push(Token::Open);
            }
            ')' => {
                chars.next();
                tokens.push(Token::Close);
            }
            c if c.is_ascii_digit() || c == '.' => {
                let mut text = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() || d == '.' {
                        text.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let value: f64 = text
                    .parse()
                    .map_err(|_| ExprError(format!("bad number {text:?}")))?;
                tokens.push(Token::Number(value));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut text = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        text.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Ident(text));
            }
            other => return Err(ExprError(format!("unexpected character {other:?}"))),
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    vars: &'a BTreeMap<&'static str, f64>,
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

    fn expr(&mut self) -> Result<f64, ExprError> {
        let mut value = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                Token::Plus => {
                    self.next();
                    value += self.term()?;
                }
                Token::Minus => {
                    self.next();
                    value -= self.term()?;
                }
                _ => break,
            }
        }
        Ok(value)
    }

    fn term(&mut self) -> Result<f64, ExprError> {
        let mut value = self.unary()?;
        while let Some(op) = self.peek() {
            match op {
                Token::Star => {
                    self.next();
                    value *= self.unary()?;
                }
                Token::Slash => {
                    self.next();
                    value /= self.unary()?;
                }
                _ => break,
            }
        }
        Ok(value)
    }

    fn unary(&mut self) -> Result<f64, ExprError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.next();
            return Ok(-self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<f64, ExprError> {
        match self.next() {
            Some(Token::Number(v)) => Ok(v),
            Some(Token::Open) => {
                let value = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(value),
                    _ => Err(ExprError("missing )".into())),
                }
            }
            Some(Token::Ident(name)) => match name.as_str() {
                "sqrt" | "ceil" | "floor" => {
                    match self.next() {
                        Some(Token::Open) => {}
                        _ => return Err(ExprError(format!("{name} needs parentheses"))),
                    }
                    let arg = self.expr()?;
                    match self.next() {
                        Some(Token::Close) => {}
                        _ => return Err(ExprError("missing )".into())),
                    }
                    Ok(match name.as_str() {
                        "sqrt" => arg.sqrt(),
                        "ceil" => arg.ceil(),
                        _ => arg.floor(),
                    })
                }
                "e" => Ok(std::f64::consts::E),
                var => self
                    .vars
                    .get(var)
                    .copied()
                    .ok_or_else(|| ExprError(format!("unknown variable {var:?}"))),
            },
            Some(t) => Err(ExprError(format!("unexpected token {t:?}"))),
            None => Err(ExprError("unexpected end of expression".into())),
        }
    }
}

/// Evaluates a bound expression against the scenario variables.
pub fn eval(input: &str, vars: &BTreeMap<&'static str, f64>) -> Result<f64, ExprError> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(ExprError("empty expression".into()));
    }
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        vars,
    };
    let value = parser.expr()?;
    if parser.pos != tokens.len() {
        return Err(ExprError(format!("trailing input in {input:?}")));
    }
    if !value.is_finite() {
        return Err(ExprError(format!("{input:?} is not finite")));
    }
    Ok(value)
}
