//! Evaluation of expressions, plain and dual-coefficient.
//!
//! Dual evaluation carries a pair (value, deriv) through every node with
//! the nilpotent-tag rule (a + eps a')(b + eps b') = ab + eps(a'b + ab').
//! All expression nodes are polynomial in the variable, so the deriv
//! channel is the exact directional derivative, not an approximation.

use super::ast::Expr;
use crate::algebra::Multivector;
use crate::error::{Error, Result};

/// Value + derivative pair for forward-mode evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct DualMultivector {
    value: Multivector,
    deriv: Multivector,
}

impl DualMultivector {
    pub fn new(value: Multivector, deriv: Multivector) -> Result<Self> {
        if value.dim() != deriv.dim() {
            return Err(Error::DimMismatch {
                left: value.dim(),
                right: deriv.dim(),
            });
        }
        Ok(DualMultivector { value, deriv })
    }

    /// Lifts a constant: zero derivative.
    pub fn constant(value: Multivector) -> Self {
        let deriv = Multivector::zero(value.dim()).expect("dim already validated");
        DualMultivector { value, deriv }
    }

    pub fn value(&self) -> &Multivector {
        &self.value
    }

    pub fn deriv(&self) -> &Multivector {
        &self.deriv
    }

    pub fn into_parts(self) -> (Multivector, Multivector) {
        (self.value, self.deriv)
    }

    fn lift2(
        &self,
        other: &Self,
        op: impl Fn(&Multivector, &Multivector) -> Result<Multivector>,
    ) -> Result<Self> {
        let value = op(&self.value, &other.value)?;
        let deriv = op(&self.deriv, &other.value)?.add(&op(&self.value, &other.deriv)?)?;
        Ok(DualMultivector { value, deriv })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(DualMultivector {
            value: self.value.add(&other.value)?,
            deriv: self.deriv.add(&other.deriv)?,
        })
    }

    pub fn neg(&self) -> Self {
        DualMultivector {
            value: self.value.neg(),
            deriv: self.deriv.neg(),
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        DualMultivector {
            value: self.value.scale(k),
            deriv: self.deriv.scale(k),
        }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.lift2(other, Multivector::wedge)
    }

    pub fn clifford(&self, other: &Self) -> Result<Self> {
        self.lift2(other, Multivector::clifford)
    }

    pub fn left_contract(&self, other: &Self) -> Result<Self> {
        self.lift2(other, Multivector::left_contract)
    }

    pub fn right_contract(&self, other: &Self) -> Result<Self> {
        self.lift2(other, Multivector::right_contract)
    }

    pub fn scalar_product(&self, other: &Self) -> Result<Self> {
        let dim = self.value.dim();
        let value = Multivector::scalar(dim, self.value.scalar_product(&other.value)?)?;
        let deriv = Multivector::scalar(
            dim,
            self.deriv.scalar_product(&other.value)? + self.value.scalar_product(&other.deriv)?,
        )?;
        Ok(DualMultivector { value, deriv })
    }

    pub fn grade_project(&self, k: usize) -> Result<Self> {
        Ok(DualMultivector {
            value: self.value.grade_project(k)?,
            deriv: self.deriv.grade_project(k)?,
        })
    }

    pub fn reverse(&self) -> Self {
        DualMultivector {
            value: self.value.reverse(),
            deriv: self.deriv.reverse(),
        }
    }
}

/// Carrier of an evaluation: either a plain multivector or a dual pair.
/// Both walks execute the same node-by-node arithmetic, which keeps the
/// value channel of a dual evaluation bit-identical to a plain one.
pub(crate) trait CalcValue: Sized + Clone {
    fn from_const(c: &Multivector) -> Self;
    fn value(&self) -> &Multivector;
    fn add(&self, other: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn scale(&self, k: f64) -> Self;
    fn wedge(&self, other: &Self) -> Result<Self>;
    fn clifford(&self, other: &Self) -> Result<Self>;
    fn scalar_product(&self, other: &Self) -> Result<Self>;
    fn left_contract(&self, other: &Self) -> Result<Self>;
    fn right_contract(&self, other: &Self) -> Result<Self>;
    fn grade_project(&self, k: usize) -> Result<Self>;
    fn reverse(&self) -> Self;
}

impl CalcValue for Multivector {
    fn from_const(c: &Multivector) -> Self {
        c.clone()
    }

    fn value(&self) -> &Multivector {
        self
    }

    fn add(&self, other: &Self) -> Result<Self> {
        Multivector::add(self, other)
    }

    fn neg(&self) -> Self {
        Multivector::neg(self)
    }

    fn scale(&self, k: f64) -> Self {
        Multivector::scale(self, k)
    }

    fn wedge(&self, other: &Self) -> Result<Self> {
        Multivector::wedge(self, other)
    }

    fn clifford(&self, other: &Self) -> Result<Self> {
        Multivector::clifford(self, other)
    }

    fn scalar_product(&self, other: &Self) -> Result<Self> {
        Multivector::scalar(self.dim(), Multivector::scalar_product(self, other)?)
    }

    fn left_contract(&self, other: &Self) -> Result<Self> {
        Multivector::left_contract(self, other)
    }

    fn right_contract(&self, other: &Self) -> Result<Self> {
        Multivector::right_contract(self, other)
    }

    fn grade_project(&self, k: usize) -> Result<Self> {
        Multivector::grade_project(self, k)
    }

    fn reverse(&self) -> Self {
        Multivector::reverse(self)
    }
}

impl CalcValue for DualMultivector {
    fn from_const(c: &Multivector) -> Self {
        DualMultivector::constant(c.clone())
    }

    fn value(&self) -> &Multivector {
        DualMultivector::value(self)
    }

    fn add(&self, other: &Self) -> Result<Self> {
        DualMultivector::add(self, other)
    }

    fn neg(&self) -> Self {
        DualMultivector::neg(self)
    }

    fn scale(&self, k: f64) -> Self {
        DualMultivector::scale(self, k)
    }

    fn wedge(&self, other: &Self) -> Result<Self> {
        DualMultivector::wedge(self, other)
    }

    fn clifford(&self, other: &Self) -> Result<Self> {
        DualMultivector::clifford(self, other)
    }

    fn scalar_product(&self, other: &Self) -> Result<Self> {
        DualMultivector::scalar_product(self, other)
    }

    fn left_contract(&self, other: &Self) -> Result<Self> {
        DualMultivector::left_contract(self, other)
    }

    fn right_contract(&self, other: &Self) -> Result<Self> {
        DualMultivector::right_contract(self, other)
    }

    fn grade_project(&self, k: usize) -> Result<Self> {
        DualMultivector::grade_project(self, k)
    }

    fn reverse(&self) -> Self {
        DualMultivector::reverse(self)
    }
}

fn eval_with<V: CalcValue>(e: &Expr, var: &V, var_grade: usize, dim: usize) -> Result<V> {
    match e {
        Expr::Var => Ok(var.clone()),
        Expr::Const(c) => {
            if c.dim() != dim {
                return Err(Error::DimMismatch {
                    left: c.dim(),
                    right: dim,
                });
            }
            Ok(V::from_const(c))
        }
        Expr::Add(a, b) => eval_with(a, var, var_grade, dim)?.add(&eval_with(b, var, var_grade, dim)?),
        Expr::Neg(a) => Ok(eval_with(a, var, var_grade, dim)?.neg()),
        Expr::ScalarMul(k, a) => Ok(eval_with(a, var, var_grade, dim)?.scale(*k)),
        Expr::Wedge(a, b) => {
            eval_with(a, var, var_grade, dim)?.wedge(&eval_with(b, var, var_grade, dim)?)
        }
        Expr::Clifford(a, b) => {
            eval_with(a, var, var_grade, dim)?.clifford(&eval_with(b, var, var_grade, dim)?)
        }
        Expr::ScalarProd(a, b) => {
            eval_with(a, var, var_grade, dim)?.scalar_product(&eval_with(b, var, var_grade, dim)?)
        }
        Expr::LContract(a, b) => {
            eval_with(a, var, var_grade, dim)?.left_contract(&eval_with(b, var, var_grade, dim)?)
        }
        Expr::RContract(a, b) => {
            eval_with(a, var, var_grade, dim)?.right_contract(&eval_with(b, var, var_grade, dim)?)
        }
        Expr::GradeProj(k, a) => eval_with(a, var, var_grade, dim)?.grade_project(*k),
        Expr::Reverse(a) => Ok(eval_with(a, var, var_grade, dim)?.reverse()),
        Expr::Compose { outer, inner } => {
            let q = super::output_grades(inner, var_grade, dim)?
                .as_homogeneous()
                .ok_or(Error::MixedGrade {
                    context: "compose inner function",
                })?;
            let inner_value = eval_with(inner, var, var_grade, dim)?;
            if !inner_value.value().is_homogeneous(q) {
                return Err(Error::NotHomogeneous { expected: q });
            }
            eval_with(outer, &inner_value, q, dim)
        }
    }
}

/// Evaluates `e` at the grade-`p` point `x`.
pub fn eval(e: &Expr, x: &Multivector, p: usize) -> Result<Multivector> {
    if !x.is_homogeneous(p) {
        return Err(Error::NotHomogeneous { expected: p });
    }
    eval_with(e, x, p, x.dim())
}

/// Evaluates `e` at `x0` carrying the direction `a`: the result holds
/// F(x0) and the exact directional derivative F'_a(x0).
pub fn eval_dual(e: &Expr, x0: &Multivector, a: &Multivector, p: usize) -> Result<DualMultivector> {
    if x0.dim() != a.dim() {
        return Err(Error::DimMismatch {
            left: x0.dim(),
            right: a.dim(),
        });
    }
    for point in [x0, a] {
        if !point.is_homogeneous(p) {
            return Err(Error::NotHomogeneous { expected: p });
        }
    }
    let var = DualMultivector::new(x0.clone(), a.clone())?;
    eval_with(e, &var, p, x0.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn mv(text: &str, dim: usize) -> Multivector {
        Multivector::parse_literal(text, dim).unwrap()
    }

    #[test]
    fn eval_examples() {
        let x = mv("e1 + 2 e2", 3);
        assert_eq!(eval(&Expr::Var, &x, 1).unwrap(), x);

        let e = parse("X . X", 3).unwrap();
        assert_eq!(eval(&e, &x, 1).unwrap(), mv("5", 3));

        // (X ^ e2) . e12 at X = 3e1: (3 e12) . e12 = 3 via the product table
        let e = parse("(X ^ e2) . e12", 3).unwrap();
        assert_eq!(eval(&e, &mv("3 e1", 3), 1).unwrap(), mv("3", 3));
    }

    #[test]
    fn eval_rejects_inhomogeneous_point() {
        let e = parse("X", 3).unwrap();
        assert!(matches!(
            eval(&e, &mv("1 + e1", 3), 1),
            Err(Error::NotHomogeneous { expected: 1 })
        ));
    }

    #[test]
    fn eval_rejects_foreign_constants() {
        let e = Expr::wedge(Expr::Var, Expr::constant(mv("e1", 2)));
        assert!(matches!(
            eval(&e, &mv("e1", 3), 1),
            Err(Error::DimMismatch { .. })
        ));
    }

    #[test]
    fn dual_identity_and_square() {
        let x0 = mv("e1 + 2 e2", 3);
        let a = mv("e1", 3);

        let d = eval_dual(&Expr::Var, &x0, &a, 1).unwrap();
        assert_eq!(d.value(), &x0);
        assert_eq!(d.deriv(), &a);

        // X . X: deriv = 2 A . X0 = 2
        let e = parse("X . X", 3).unwrap();
        let d = eval_dual(&e, &x0, &a, 1).unwrap();
        assert_eq!(d.deriv(), &mv("2", 3));

        // X X: deriv = A X0 + X0 A = 2 (A . X0) = 2
        let e = parse("X X", 3).unwrap();
        let d = eval_dual(&e, &x0, &a, 1).unwrap();
        assert!(d.deriv().max_coeff_diff(&mv("2", 3)) < 1e-15);
    }

    #[test]
    fn dual_value_channel_matches_plain_eval() {
        let e = parse("(X ^ e2) . (X ^ e2) + <X X>_0 - ~X _| e12", 3).unwrap();
        let x0 = mv("0.5 e1 - 1.25 e2 + 2 e3", 3);
        let a = mv("e1 - e3", 3);
        let d = eval_dual(&e, &x0, &a, 1).unwrap();
        assert_eq!(d.value(), &eval(&e, &x0, 1).unwrap());
    }

    #[test]
    fn compose_evaluates_outer_at_inner_value() {
        // Y . Y after X ^ e2, at X = e1: (e12) . (e12) = 1
        let outer = parse("X . X", 3).unwrap();
        let inner = parse("X ^ e2", 3).unwrap();
        let e = crate::expr::compose(outer.clone(), inner.clone(), 1, 3).unwrap();
        assert_eq!(eval(&e, &mv("e1", 3), 1).unwrap(), mv("1", 3));

        let via_steps = eval(&outer, &eval(&inner, &mv("e1", 3), 1).unwrap(), 2).unwrap();
        assert_eq!(eval(&e, &mv("e1", 3), 1).unwrap(), via_steps);
    }

    #[test]
    fn compose_with_mixed_inner_fails_at_eval_too() {
        let e = Expr::Compose {
            outer: Box::new(Expr::Var),
            inner: Box::new(parse("X X", 3).unwrap()),
        };
        assert!(matches!(
            eval(&e, &mv("e1", 3), 1),
            Err(Error::MixedGrade { .. })
        ));
    }
}
