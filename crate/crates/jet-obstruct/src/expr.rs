//! Parser for element expressions.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '(' expr ')' | '-' factor | rational | generator
//! rational := integer ['/' integer]
//! ```
//!
//! Products are wedge products; rational literals act by scaling.  The
//! same grammar is used by `.dga` files and by CLI flags, and
//! `GeneratorSet::format_element` produces strings this parser accepts.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::model::GeneratorSet;
use crate::monomial::Monomial;
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Open,
    Close,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\r' | '\n' => {
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
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Number(digits.parse().unwrap()));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Ident(name));
            }
            other => {
                return Err(Error::Expr { msg: format!("unexpected character `{other}`") });
            }
        }
    }
    Ok(tokens)
}

struct Parser<'g> {
    gens: &'g GeneratorSet,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'g> Parser<'g> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Element> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                -&self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc += &self.term()?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.bump();
            let rhs = self.factor()?;
            acc = self.gens.wedge(&acc, &rhs)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Element> {
        match self.bump() {
            Some(Token::Minus) => Ok(-&self.factor()?),
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(Error::Expr { msg: "missing `)`".into() }),
                }
            }
            Some(Token::Number(n)) => {
                let denom = if self.peek() == Some(&Token::Slash) {
                    self.bump();
                    match self.bump() {
                        Some(Token::Number(d)) if !d.is_zero() => d,
                        Some(Token::Number(_)) => {
                            return Err(Error::Expr { msg: "division by zero".into() })
                        }
                        _ => return Err(Error::Expr { msg: "expected denominator".into() }),
                    }
                } else {
                    BigInt::from(1)
                };
                let c = Rational::new(n, denom);
                Ok(self.gens.element([(Monomial::UNIT, c)]))
            }
            Some(Token::Ident(name)) => match self.gens.index_of(&name) {
                Some(ix) => Ok(self.gens.generator_element(ix)),
                None => Err(Error::UnknownGenerator { name }),
            },
            Some(tok) => Err(Error::Expr { msg: format!("unexpected token {tok:?}") }),
            None => Err(Error::Expr { msg: "unexpected end of expression".into() }),
        }
    }
}

pub fn parse_element(gens: &GeneratorSet, input: &str) -> Result<Element> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(Error::Expr { msg: "empty expression".into() });
    }
    let mut p = Parser { gens, tokens, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Expr { msg: format!("trailing input at token {}", p.pos) });
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn gens() -> GeneratorSet {
        GeneratorSet::new("t", &[("A", 1), ("B", 1), ("C", 1), ("T", 1)]).unwrap()
    }

    #[test]
    fn parses_the_grammar() {
        let g = gens();
        let e = parse_element(&g, "A*C + B*T").unwrap();
        assert_eq!(g.format_element(&e), "A*C + B*T");
        let e = parse_element(&g, "-1/2*A*B + 3*C").unwrap();
        assert_eq!(g.format_element(&e), "-1/2*A*B + 3*C");
        let e = parse_element(&g, "(A + B)*(A + B)").unwrap();
        assert!(e.is_zero());
        let e = parse_element(&g, "2*(A - B)*T").unwrap();
        assert_eq!(g.format_element(&e), "2*A*T - 2*B*T");
        let e = parse_element(&g, "7/2").unwrap();
        assert_eq!(e.coefficient(crate::monomial::Monomial::UNIT), rat(7, 2));
        assert_eq!(parse_element(&g, "0").unwrap(), g.zero());
    }

    #[test]
    fn anticommutativity_through_the_parser() {
        let g = gens();
        let ba = parse_element(&g, "B*A").unwrap();
        let ab = parse_element(&g, "A*B").unwrap();
        assert_eq!(ba, ab.scaled(&rat_int(-1)));
    }

    #[test]
    fn format_parse_round_trip() {
        let g = gens();
        for s in ["0", "1", "-A", "A*C + B*T", "-1/2*A*B + 3*C*T - T", "2/3 + A*B*C*T"] {
            let e = parse_element(&g, s).unwrap();
            let printed = g.format_element(&e);
            let reparsed = parse_element(&g, &printed).unwrap();
            assert_eq!(e, reparsed, "round trip through `{printed}`");
        }
    }

    #[test]
    fn rejects_garbage() {
        let g = gens();
        assert!(parse_element(&g, "").is_err());
        assert!(parse_element(&g, "A +").is_err());
        assert!(parse_element(&g, "Q").is_err());
        assert!(parse_element(&g, "1/0").is_err());
        assert!(parse_element(&g, "(A").is_err());
        assert!(parse_element(&g, "A B").is_err());
    }
}
