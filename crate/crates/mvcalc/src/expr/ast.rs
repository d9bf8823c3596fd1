//! Abstract syntax trees and their canonical text form.

use std::fmt;

use crate::algebra::Multivector;
use crate::error::{Error, Result};

/// A multivector function of one p-vector variable `X`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// The p-vector variable.
    Var,
    /// A constant multivector.
    Const(Multivector),
    Add(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    ScalarMul(f64, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    Clifford(Box<Expr>, Box<Expr>),
    ScalarProd(Box<Expr>, Box<Expr>),
    LContract(Box<Expr>, Box<Expr>),
    RContract(Box<Expr>, Box<Expr>),
    GradeProj(usize, Box<Expr>),
    Reverse(Box<Expr>),
    /// `outer(inner(X))`; inner must have a homogeneous output grade.
    Compose { outer: Box<Expr>, inner: Box<Expr> },
}

impl Expr {
    pub fn constant(mv: Multivector) -> Expr {
        Expr::Const(mv)
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }

    pub fn scalar_mul(k: f64, a: Expr) -> Expr {
        Expr::ScalarMul(k, Box::new(a))
    }

    pub fn wedge(a: Expr, b: Expr) -> Expr {
        Expr::Wedge(Box::new(a), Box::new(b))
    }

    pub fn clifford(a: Expr, b: Expr) -> Expr {
        Expr::Clifford(Box::new(a), Box::new(b))
    }

    pub fn scalar_prod(a: Expr, b: Expr) -> Expr {
        Expr::ScalarProd(Box::new(a), Box::new(b))
    }

    pub fn lcontract(a: Expr, b: Expr) -> Expr {
        Expr::LContract(Box::new(a), Box::new(b))
    }

    pub fn rcontract(a: Expr, b: Expr) -> Expr {
        Expr::RContract(Box::new(a), Box::new(b))
    }

    pub fn grade_proj(k: usize, a: Expr) -> Expr {
        Expr::GradeProj(k, Box::new(a))
    }

    pub fn reverse(a: Expr) -> Expr {
        Expr::Reverse(Box::new(a))
    }
}

/// Builds `outer(inner(X))` for a variable of grade `p`, checking that the
/// inner function has a homogeneous output grade and that the outer
/// function is well-typed at that grade.
pub fn compose(outer: Expr, inner: Expr, p: usize, dim: usize) -> Result<Expr> {
    let q = super::output_grades(&inner, p, dim)?
        .as_homogeneous()
        .ok_or(Error::MixedGrade {
            context: "compose inner function",
        })?;
    super::output_grades(&outer, q, dim)?;
    Ok(Expr::Compose {
        outer: Box::new(outer),
        inner: Box::new(inner),
    })
}

// Binding powers; larger binds tighter. Unary operators apply to atoms, so
// they never need precedence handling of their own.
const BP_ADD: u8 = 10;
const BP_WEDGE: u8 = 20;
const BP_DOT: u8 = 30;
const BP_CONTRACT: u8 = 40;
const BP_CLIFFORD: u8 = 50;

struct Printer<'a> {
    var: &'a str,
}

impl<'a> Printer<'a> {
    fn write(&self, e: &Expr, min_bp: u8, out: &mut String) {
        match e {
            Expr::Var => out.push_str(self.var),
            Expr::Const(mv) => self.write_const(mv, out),
            Expr::GradeProj(k, inner) => {
                out.push('<');
                self.write(inner, 0, out);
                out.push_str(&format!(">_{k}"));
            }
            Expr::Neg(x) => {
                out.push('-');
                self.write_atom(x, out);
            }
            Expr::Reverse(x) => {
                out.push('~');
                self.write_atom(x, out);
            }
            Expr::Add(a, b) => {
                let parens = min_bp > BP_ADD;
                if parens {
                    out.push('(');
                }
                self.write(a, BP_ADD, out);
                if let Expr::Neg(c) = &**b {
                    out.push_str(" - ");
                    self.write(c, BP_ADD + 1, out);
                } else {
                    out.push_str(" + ");
                    self.write(b, BP_ADD + 1, out);
                }
                if parens {
                    out.push(')');
                }
            }
            Expr::Wedge(a, b) => self.write_binary(a, " ^ ", b, BP_WEDGE, min_bp, out),
            Expr::ScalarProd(a, b) => self.write_binary(a, " . ", b, BP_DOT, min_bp, out),
            Expr::LContract(a, b) => self.write_binary(a, " _| ", b, BP_CONTRACT, min_bp, out),
            Expr::RContract(a, b) => self.write_binary(a, " |_ ", b, BP_CONTRACT, min_bp, out),
            Expr::Clifford(a, b) => self.write_binary(a, " * ", b, BP_CLIFFORD, min_bp, out),
            Expr::ScalarMul(k, x) => {
                let parens = min_bp > BP_CLIFFORD;
                if parens {
                    out.push('(');
                }
                if *k >= 0.0 {
                    out.push_str(&format!("{k}"));
                } else {
                    out.push_str(&format!("({k})"));
                }
                out.push_str(" * ");
                self.write(x, BP_CLIFFORD + 1, out);
                if parens {
                    out.push(')');
                }
            }
            Expr::Compose { outer, inner } => {
                // No surface syntax for composition; print by substitution.
                let mut inner_text = String::new();
                self.write_atom(inner, &mut inner_text);
                let sub = Printer { var: &inner_text };
                sub.write(outer, min_bp, out);
            }
        }
    }

    fn write_binary(&self, a: &Expr, op: &str, b: &Expr, bp: u8, min_bp: u8, out: &mut String) {
        let parens = min_bp > bp;
        if parens {
            out.push('(');
        }
        self.write(a, bp, out);
        out.push_str(op);
        self.write(b, bp + 1, out);
        if parens {
            out.push(')');
        }
    }

    fn write_atom(&self, e: &Expr, out: &mut String) {
        let atomic = matches!(e, Expr::Var | Expr::GradeProj(..))
            || matches!(e, Expr::Const(mv) if const_is_atom(mv));
        if atomic {
            self.write(e, u8::MAX, out);
        } else {
            out.push('(');
            self.write(e, 0, out);
            out.push(')');
        }
    }

    fn write_const(&self, mv: &Multivector, out: &mut String) {
        if const_is_atom(mv) {
            if mv.is_zero() {
                out.push('0');
            } else if let Some(c) = scalar_value(mv) {
                out.push_str(&format!("{c}"));
            } else {
                out.push_str(&mv.to_literal());
            }
        } else {
            // General constants fall back to the parenthesized literal form,
            // which reparses to a semantically equal expression.
            out.push('(');
            out.push_str(&mv.to_literal());
            out.push(')');
        }
    }
}

fn scalar_value(mv: &Multivector) -> Option<f64> {
    if mv.is_homogeneous(0) {
        Some(mv.coeffs()[0])
    } else {
        None
    }
}

/// Constants expressible as a single grammar atom: zero, a nonnegative
/// scalar, or a coefficient-1 basis blade.
fn const_is_atom(mv: &Multivector) -> bool {
    if mv.is_zero() {
        return true;
    }
    if let Some(c) = scalar_value(mv) {
        return c >= 0.0 && !c.is_sign_negative();
    }
    let nonzero: Vec<f64> = mv.coeffs().iter().copied().filter(|&c| c != 0.0).collect();
    nonzero == [1.0]
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        Printer { var: "X" }.write(self, 0, &mut out);
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn mv(text: &str, dim: usize) -> Multivector {
        Multivector::parse_literal(text, dim).unwrap()
    }

    #[test]
    fn printing_respects_precedence() {
        let e = Expr::wedge(
            Expr::Var,
            Expr::clifford(Expr::Var, Expr::constant(mv("e2", 3))),
        );
        assert_eq!(e.to_string(), "X ^ X * e2");
        assert_eq!(parse(&e.to_string(), 3).unwrap(), e);

        let e = Expr::clifford(
            Expr::wedge(Expr::Var, Expr::Var),
            Expr::constant(mv("e2", 3)),
        );
        assert_eq!(e.to_string(), "(X ^ X) * e2");
        assert_eq!(parse(&e.to_string(), 3).unwrap(), e);
    }

    #[test]
    fn subtraction_and_unary_print_forms() {
        let e = Expr::add(Expr::Var, Expr::neg(Expr::constant(mv("e1", 3))));
        assert_eq!(e.to_string(), "X - e1");
        assert_eq!(parse(&e.to_string(), 3).unwrap(), e);

        let e = Expr::neg(Expr::neg(Expr::Var));
        assert_eq!(e.to_string(), "-(-X)");
        assert_eq!(parse(&e.to_string(), 3).unwrap(), e);

        let e = Expr::reverse(Expr::wedge(Expr::Var, Expr::Var));
        assert_eq!(e.to_string(), "~(X ^ X)");
        assert_eq!(parse(&e.to_string(), 3).unwrap(), e);
    }

    #[test]
    fn grade_projection_prints_bracket_form() {
        let e = Expr::grade_proj(0, Expr::clifford(Expr::Var, Expr::Var));
        assert_eq!(e.to_string(), "<X * X>_0");
        assert_eq!(parse(&e.to_string(), 3).unwrap(), e);
    }

    #[test]
    fn compose_prints_by_substitution() {
        let outer = Expr::scalar_prod(Expr::Var, Expr::Var);
        let inner = Expr::wedge(Expr::Var, Expr::constant(mv("e2", 3)));
        let e = compose(outer, inner, 1, 3).unwrap();
        assert_eq!(e.to_string(), "(X ^ e2) . (X ^ e2)");
    }

    #[test]
    fn general_constants_fall_back_to_literals() {
        let e = Expr::wedge(Expr::Var, Expr::constant(mv("1 + 2 e1", 3)));
        assert_eq!(e.to_string(), "X ^ (1 + 2 e1)");
    }

    #[test]
    fn compose_rejects_mixed_inner() {
        let inner = Expr::clifford(Expr::Var, Expr::Var); // grades {0,2} at p=1
        let outer = Expr::Var;
        assert!(matches!(
            compose(outer, inner, 1, 3),
            Err(Error::MixedGrade { .. })
        ));
    }

    #[test]
    fn compose_identity() {
        let e = compose(Expr::Var, Expr::Var, 1, 3).unwrap();
        let x = mv("e1 + 2 e2", 3);
        assert_eq!(crate::expr::eval(&e, &x, 1).unwrap(), x);
    }
}
