use num_bigint::BigInt;
use num_traits::Zero;

use super::{Expr, Func, SyntaxError};
use crate::valuation::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
    Invalid,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn lex(text: &str) -> Vec<Token> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                tokens.push(Token {
                    tok: Tok::Int(text[start..i].parse().expect("digits")),
                    offset: start,
                });
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push(Token {
                    tok: Tok::Name(text[start..i].to_string()),
                    offset: start,
                });
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            _ => Tok::Invalid,
        };
        tokens.push(Token { tok, offset: start });
        if matches!(tokens.last().map(|t| &t.tok), Some(Tok::Invalid)) {
            // nothing after an invalid character is ever examined
            return tokens;
        }
        i += 1;
    }
    tokens.push(Token {
        tok: Tok::End,
        offset: text.len(),
    });
    tokens
}

const ATOM_START: &[&str] = &["integer", "function name", "`(`", "`-`"];

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn peek_at(&self, ahead: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + ahead).map(|t| &t.tok)
    }

    fn bump(&mut self) -> Token {
        let t = self.peek().clone();
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), SyntaxError> {
        if self.peek().tok == tok {
            self.pos += 1;
            Ok(())
        } else {
            Err(SyntaxError::new(self.peek().offset, &[name]))
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        let token = self.peek().clone();
        match token.tok {
            Tok::Int(n) => {
                self.bump();
                if self.peek().tok == Tok::Slash && matches!(self.peek_at(1), Some(Tok::Int(_))) {
                    self.bump();
                    let den_tok = self.bump();
                    let Tok::Int(d) = den_tok.tok else {
                        unreachable!()
                    };
                    if d.is_zero() {
                        return Err(SyntaxError::new(den_tok.offset, &["nonzero denominator"]));
                    }
                    return Ok(Expr::Lit(Rational::new(n, d)));
                }
                Ok(Expr::Lit(Rational::from_integer(n)))
            }
            Tok::Name(name) => {
                let Some(func) = Func::from_name(&name) else {
                    let names: Vec<&str> = Func::ALL.iter().map(|f| f.name()).collect();
                    return Err(SyntaxError::new(token.offset, &names));
                };
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let mut args = vec![self.expr()?];
                while args.len() < func.arity() {
                    self.expect(Tok::Comma, "`,`")?;
                    args.push(self.expr()?);
                }
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Call(func, args))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(SyntaxError::new(token.offset, ATOM_START)),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, SyntaxError> {
    let mut parser = Parser {
        tokens: lex(text),
        pos: 0,
    };
    let expr = parser.expr()?;
    let next = parser.peek();
    if next.tok != Tok::End {
        return Err(SyntaxError::new(next.offset, &["operator", "end of input"]));
    }
    Ok(expr)
}
