//! Precedence-climbing parser for the expression grammar.
//!
//! Operators, loosest to tightest: `+ -` < `^` < `.` < `_| |_` < `*` <
//! unary `- ~`. Adjacent atoms multiply with the Clifford product, grade
//! projection is written `<expr>_k` or as an `_k` suffix on an atom, and
//! parentheses group freely.

use super::ast::Expr;
use crate::algebra::{BladeIndex, Multivector};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Dot,
    LContract,
    RContract,
    Tilde,
    LParen,
    RParen,
    Lt,
    Gt,
    GradeSuffix(usize),
    Number(f64),
    Blade(u16),
    Var,
    Eof,
}

#[derive(Debug, Clone, Copy)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn lex(text: &str, dim: usize) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0usize;
    while pos < bytes.len() {
        let c = bytes[pos];
        let offset = pos;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'X' => {
                tokens.push(Token { tok: Tok::Var, offset });
                pos += 1;
            }
            b'e' => {
                pos += 1;
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == start {
                    return Err(Error::parse(offset, "unknown identifier (expected `e` followed by blade digits)"));
                }
                let idx = BladeIndex::from_digits(&text[start..pos], dim).map_err(|e| match e {
                    Error::Parse { message, .. } => Error::parse(start, message),
                    other => other,
                })?;
                tokens.push(Token {
                    tok: Tok::Blade(idx.bits()),
                    offset,
                });
            }
            b'0'..=b'9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                // a decimal point must be glued to digits on both sides
                if pos + 1 < bytes.len() && bytes[pos] == b'.' && bytes[pos + 1].is_ascii_digit() {
                    pos += 1;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                }
                let value: f64 = text[offset..pos]
                    .parse()
                    .map_err(|_| Error::parse(offset, "invalid number"))?;
                tokens.push(Token {
                    tok: Tok::Number(value),
                    offset,
                });
            }
            b'+' => {
                tokens.push(Token { tok: Tok::Plus, offset });
                pos += 1;
            }
            b'-' => {
                tokens.push(Token { tok: Tok::Minus, offset });
                pos += 1;
            }
            b'*' => {
                tokens.push(Token { tok: Tok::Star, offset });
                pos += 1;
            }
            b'^' => {
                tokens.push(Token { tok: Tok::Caret, offset });
                pos += 1;
            }
            b'.' => {
                tokens.push(Token { tok: Tok::Dot, offset });
                pos += 1;
            }
            b'~' => {
                tokens.push(Token { tok: Tok::Tilde, offset });
                pos += 1;
            }
            b'(' => {
                tokens.push(Token { tok: Tok::LParen, offset });
                pos += 1;
            }
            b')' => {
                tokens.push(Token { tok: Tok::RParen, offset });
                pos += 1;
            }
            b'<' => {
                tokens.push(Token { tok: Tok::Lt, offset });
                pos += 1;
            }
            b'>' => {
                tokens.push(Token { tok: Tok::Gt, offset });
                pos += 1;
            }
            b'_' => {
                if pos + 1 < bytes.len() && bytes[pos + 1] == b'|' {
                    tokens.push(Token {
                        tok: Tok::LContract,
                        offset,
                    });
                    pos += 2;
                } else if pos + 1 < bytes.len() && bytes[pos + 1].is_ascii_digit() {
                    let k = (bytes[pos + 1] - b'0') as usize;
                    tokens.push(Token {
                        tok: Tok::GradeSuffix(k),
                        offset,
                    });
                    pos += 2;
                } else {
                    return Err(Error::parse(offset, "expected `|` or a grade digit after `_`"));
                }
            }
            b'|' => {
                if pos + 1 < bytes.len() && bytes[pos + 1] == b'_' {
                    tokens.push(Token {
                        tok: Tok::RContract,
                        offset,
                    });
                    pos += 2;
                } else {
                    return Err(Error::parse(offset, "expected `_` after `|`"));
                }
            }
            _ => {
                return Err(Error::parse(
                    offset,
                    format!("unexpected character `{}`", &text[pos..pos + 1]),
                ));
            }
        }
    }
    tokens.push(Token {
        tok: Tok::Eof,
        offset: text.len(),
    });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    dim: usize,
}

const BP_ADD: u8 = 10;
const BP_WEDGE: u8 = 20;
const BP_DOT: u8 = 30;
const BP_CONTRACT: u8 = 40;
const BP_CLIFFORD: u8 = 50;

impl Parser {
    fn peek(&self) -> Token {
        self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos];
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        let t = self.bump();
        if t.tok == tok {
            Ok(())
        } else {
            Err(Error::parse(t.offset, format!("expected {what}")))
        }
    }

    /// True when the upcoming token can begin a factor, which makes
    /// juxtaposition an implicit Clifford product (`X X` reads as `X * X`).
    fn starts_factor(&self) -> bool {
        matches!(
            self.peek().tok,
            Tok::Var | Tok::Number(_) | Tok::Blade(_) | Tok::LParen | Tok::Lt | Tok::Tilde
        )
    }

    fn parse_expr(&mut self, min_bp: u8) -> Result<Expr> {
        let mut lhs = self.parse_factor()?;
        loop {
            let (bp, tok) = match self.peek().tok {
                Tok::Plus => (BP_ADD, Some(Tok::Plus)),
                Tok::Minus => (BP_ADD, Some(Tok::Minus)),
                Tok::Caret => (BP_WEDGE, Some(Tok::Caret)),
                Tok::Dot => (BP_DOT, Some(Tok::Dot)),
                Tok::LContract => (BP_CONTRACT, Some(Tok::LContract)),
                Tok::RContract => (BP_CONTRACT, Some(Tok::RContract)),
                Tok::Star => (BP_CLIFFORD, Some(Tok::Star)),
                _ if self.starts_factor() => (BP_CLIFFORD, None),
                _ => break,
            };
            if bp < min_bp {
                break;
            }
            if tok.is_some() {
                self.bump();
            }
            let rhs = self.parse_expr(bp + 1)?;
            lhs = match tok {
                Some(Tok::Plus) => Expr::add(lhs, rhs),
                Some(Tok::Minus) => Expr::add(lhs, Expr::neg(rhs)),
                Some(Tok::Caret) => Expr::wedge(lhs, rhs),
                Some(Tok::Dot) => Expr::scalar_prod(lhs, rhs),
                Some(Tok::LContract) => Expr::lcontract(lhs, rhs),
                Some(Tok::RContract) => Expr::rcontract(lhs, rhs),
                Some(Tok::Star) | None => Expr::clifford(lhs, rhs),
                _ => unreachable!(),
            };
        }
        Ok(lhs)
    }

    fn parse_factor(&mut self) -> Result<Expr> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(Expr::neg(self.parse_projected_atom()?))
            }
            Tok::Tilde => {
                self.bump();
                Ok(Expr::reverse(self.parse_projected_atom()?))
            }
            _ => self.parse_projected_atom(),
        }
    }

    fn parse_projected_atom(&mut self) -> Result<Expr> {
        let atom = self.parse_atom()?;
        if let Tok::GradeSuffix(k) = self.peek().tok {
            let offset = self.bump().offset;
            self.check_grade(k, offset)?;
            return Ok(Expr::grade_proj(k, atom));
        }
        Ok(atom)
    }

    fn parse_atom(&mut self) -> Result<Expr> {
        let t = self.bump();
        match t.tok {
            Tok::Var => Ok(Expr::Var),
            Tok::Number(v) => Ok(Expr::constant(
                Multivector::scalar(self.dim, v).expect("dim validated by lexer"),
            )),
            Tok::Blade(bits) => {
                let idx = BladeIndex::new(bits, self.dim).expect("lexer validated digits");
                Ok(Expr::constant(Multivector::basis_blade(idx)))
            }
            Tok::LParen => {
                let e = self.parse_expr(0)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Lt => {
                let e = self.parse_expr(0)?;
                self.expect(Tok::Gt, "`>`")?;
                match self.bump() {
                    Token {
                        tok: Tok::GradeSuffix(k),
                        offset,
                    } => {
                        self.check_grade(k, offset)?;
                        Ok(Expr::grade_proj(k, e))
                    }
                    Token { offset, .. } => {
                        Err(Error::parse(offset, "expected `_` and a grade digit after `>`"))
                    }
                }
            }
            Tok::Eof => Err(Error::parse(t.offset, "expected expression, found end of input")),
            _ => Err(Error::parse(t.offset, "expected expression")),
        }
    }

    fn check_grade(&self, k: usize, offset: usize) -> Result<()> {
        if k > self.dim {
            Err(Error::parse(
                offset,
                format!("grade digit {k} out of range for dimension {}", self.dim),
            ))
        } else {
            Ok(())
        }
    }
}

/// Parses an expression over a dimension-`dim` algebra.
pub fn parse(text: &str, dim: usize) -> Result<Expr> {
    crate::algebra::Multivector::zero(dim)?; // validates dim
    let tokens = lex(text, dim)?;
    let mut parser = Parser { tokens, pos: 0, dim };
    let e = parser.parse_expr(0)?;
    let t = parser.peek();
    if t.tok != Tok::Eof {
        return Err(Error::parse(t.offset, "unexpected trailing input"));
    }
    Ok(e)
}
