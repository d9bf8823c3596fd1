//! Expression language for multivector functions of one p-vector variable.
//!
//! Every expressible function is polynomial in the variable (no division,
//! no transcendental scalars), so it is differentiable everywhere and the
//! dual-coefficient evaluator in [`eval`] produces exact derivatives.

mod ast;
mod eval;
mod parse;
mod signature;

pub use ast::{compose, Expr};
pub use eval::{eval, eval_dual, DualMultivector};
pub use parse::parse;
pub use signature::{infer_signature, FuncSignature, OutputGrade};

pub(crate) use signature::output_grades;
