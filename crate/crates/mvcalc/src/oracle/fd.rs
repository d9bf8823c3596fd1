//! Finite-difference ground truth for directional derivatives.
//!
//! Central differences at steps h and h/2 combined by one Richardson level:
//! D(h) = (F(X0+hA) - F(X0-hA)) / 2h has error c2 h^2 + c4 h^4 + ...,
//! so (4 D(h/2) - D(h)) / 3 cancels the h^2 term. Every expressible
//! function is polynomial, which makes the extrapolated value nearly exact
//! and a sharp cross-check for the dual-evaluation path.

use crate::algebra::{Extensor, Multivector};
use crate::error::{Error, Result};
use crate::expr::{eval, Expr};

/// Step size balancing truncation against rounding for central differences,
/// scaled by the magnitudes of the point and the direction.
pub fn fd_step(x0_norm: f64, a_norm: f64) -> f64 {
    x0_norm.max(1.0) * f64::EPSILON.cbrt() / a_norm.max(1.0)
}

fn central(f: &Expr, x0: &Multivector, a: &Multivector, p: usize, h: f64) -> Result<Multivector> {
    let plus = eval(f, &x0.add(&a.scale(h))?, p)?;
    let minus = eval(f, &x0.add(&a.scale(-h))?, p)?;
    Ok(plus.sub(&minus)?.scale(1.0 / (2.0 * h)))
}

/// Richardson-extrapolated central difference for F'_A(X0).
pub fn fd_extrapolated(f: &Expr, x0: &Multivector, a: &Multivector, p: usize) -> Result<Multivector> {
    if a.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let h = fd_step(x0.norm(), a.norm());
    let d_h = central(f, x0, a, p, h)?;
    let d_half = central(f, x0, a, p, h / 2.0)?;
    d_half.scale(4.0 / 3.0).sub(&d_h.scale(1.0 / 3.0))
}

/// Differential extensor assembled from finite differences instead of dual
/// evaluation; the independent route for uniqueness checks.
pub fn fd_extensor(f: &Expr, x0: &Multivector, p: usize, q: usize) -> Result<Extensor> {
    if !x0.is_homogeneous(p) {
        return Err(Error::NotHomogeneous { expected: p });
    }
    Extensor::from_images(x0.dim(), p, q, |blade| {
        let direction = Multivector::basis_blade(blade);
        // drop float residue on the off-grade coordinates so the column
        // extraction stays well-typed
        fd_extrapolated(f, x0, &direction, p)?.grade_project(q)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{eval_dual, parse};

    fn mv(text: &str, dim: usize) -> Multivector {
        Multivector::parse_literal(text, dim).unwrap()
    }

    #[test]
    fn linear_functions_have_no_truncation_error() {
        let f = parse("X", 3).unwrap();
        let x0 = mv("e1 + 2 e2", 3);
        let a = mv("e2 - 0.5 e3", 3);
        let d = fd_extrapolated(&f, &x0, &a, 1).unwrap();
        assert!(d.max_coeff_diff(&a) < 1e-10);
    }

    #[test]
    fn quadratic_example() {
        let f = parse("X . X", 3).unwrap();
        let d = fd_extrapolated(&f, &mv("e1 + 2 e2", 3), &mv("e1", 3), 1).unwrap();
        assert!(d.max_coeff_diff(&mv("2", 3)) < 1e-10);
    }

    #[test]
    fn zero_direction_is_rejected() {
        let f = parse("X", 3).unwrap();
        assert!(matches!(
            fd_extrapolated(&f, &mv("e1", 3), &Multivector::zero(3).unwrap(), 1),
            Err(Error::ZeroDirection)
        ));
    }

    #[test]
    fn agrees_with_dual_on_a_cubic() {
        let f = parse("(X . X) * X ^ e3 + <X X e1>_1", 3).unwrap();
        let x0 = mv("0.4 e1 - 1.1 e2 + 0.8 e3", 3);
        let a = mv("e1 + 0.3 e2", 3);
        let fd = fd_extrapolated(&f, &x0, &a, 1).unwrap();
        let dual = eval_dual(&f, &x0, &a, 1).unwrap();
        let err = fd.sub(dual.deriv()).unwrap().norm() / dual.deriv().norm().max(1.0);
        assert!(err < 1e-8, "relative error {err}");
    }
}
