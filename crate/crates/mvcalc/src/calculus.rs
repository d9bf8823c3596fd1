//! Directional derivatives, differential extensors, remainder diagnostics,
//! curve derivatives, and the four generalized derivative operators.

use crate::algebra::{ordered_blades, Extensor, Frame, Multivector};
use crate::error::{Error, Result};
use crate::expr::{eval, eval_dual, Expr};
use crate::oracle::fd_extrapolated;

/// The four derivative-like operators built from blade-wise directional
/// derivatives: curl (wedge), scalar divergence (scalar product), left
/// contracted divergence, and gradient (Clifford product).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivKind {
    Curl,
    ScalarDiv,
    LeftDiv,
    Gradient,
}

impl DerivKind {
    pub const ALL: [DerivKind; 4] = [
        DerivKind::Curl,
        DerivKind::ScalarDiv,
        DerivKind::LeftDiv,
        DerivKind::Gradient,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DerivKind::Curl => "curl",
            DerivKind::ScalarDiv => "div",
            DerivKind::LeftDiv => "ldiv",
            DerivKind::Gradient => "grad",
        }
    }

    pub fn from_name(name: &str) -> Option<DerivKind> {
        match name {
            "curl" => Some(DerivKind::Curl),
            "div" => Some(DerivKind::ScalarDiv),
            "ldiv" => Some(DerivKind::LeftDiv),
            "grad" => Some(DerivKind::Gradient),
            _ => None,
        }
    }
}

/// How a directional derivative is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffMethod {
    /// Exact forward-mode (dual-coefficient) evaluation.
    Dual,
    /// Richardson-extrapolated central differences from the oracle module.
    Fd,
}

/// Normalized differentiability defect sampled over shrinking steps:
/// ratio(h) = ||F(X0 + hA) - F(X0) - f(hA)|| / ||hA||.
#[derive(Debug, Clone, PartialEq)]
pub struct RemainderProfile {
    steps: Vec<(f64, f64)>,
}

impl RemainderProfile {
    pub fn steps(&self) -> &[(f64, f64)] {
        &self.steps
    }

    /// Least-squares slope of log(ratio) against log(h), skipping steps
    /// whose ratio vanishes (identically linear functions).
    pub fn loglog_slope(&self) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .steps
            .iter()
            .filter(|(_, r)| *r > 0.0)
            .map(|(h, r)| (h.ln(), r.ln()))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let n = pts.len() as f64;
        let (sx, sy): (f64, f64) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
        let (sxx, sxy): (f64, f64) = pts
            .iter()
            .fold((0.0, 0.0), |(a, b), (x, y)| (a + x * x, b + x * y));
        let denom = n * sxx - sx * sx;
        if denom == 0.0 {
            return None;
        }
        Some((n * sxy - sx * sy) / denom)
    }
}

/// The A-directional derivative F'_A(X0).
pub fn directional_derivative(
    f: &Expr,
    x0: &Multivector,
    a: &Multivector,
    p: usize,
    method: DiffMethod,
) -> Result<Multivector> {
    match method {
        DiffMethod::Dual => Ok(eval_dual(f, x0, a, p)?.into_parts().1),
        DiffMethod::Fd => fd_extrapolated(f, x0, a, p),
    }
}

/// Assembles the differential of a (p,q)-function at `x0` column-wise: the
/// image of each ordered basis p-blade is its directional derivative, and
/// linearity in the direction extends the map to all p-vectors.
pub fn differential_extensor(f: &Expr, x0: &Multivector, p: usize, q: usize) -> Result<Extensor> {
    require_output_grade(f, p, q, x0.dim())?;
    if !x0.is_homogeneous(p) {
        return Err(Error::NotHomogeneous { expected: p });
    }
    Extensor::from_images(x0.dim(), p, q, |blade| {
        let direction = Multivector::basis_blade(blade);
        directional_derivative(f, x0, &direction, p, DiffMethod::Dual)
    })
}

/// Checks that `f` is a (p,q)-function; identically zero output passes for
/// any q.
fn require_output_grade(f: &Expr, p: usize, q: usize, dim: usize) -> Result<()> {
    let set = crate::expr::output_grades(f, p, dim)?;
    if set.is_empty() || set.as_homogeneous() == Some(q) {
        Ok(())
    } else {
        Err(Error::MixedGrade {
            context: "differential extensor of a non-(p,q)-function",
        })
    }
}

/// The homogeneous output grade of `f` at input grade `p`.
pub fn output_grade(f: &Expr, p: usize, dim: usize) -> Result<usize> {
    crate::expr::output_grades(f, p, dim)?
        .as_homogeneous()
        .ok_or(Error::MixedGrade {
            context: "function output is mixed-grade",
        })
}

/// Samples the normalized remainder at h0, h0/2, ..., h0/2^(count-1).
pub fn remainder_profile(
    f: &Expr,
    x0: &Multivector,
    a: &Multivector,
    p: usize,
    h0: f64,
    count: usize,
) -> Result<RemainderProfile> {
    if a.is_zero() {
        return Err(Error::ZeroDirection);
    }
    if count < 3 {
        return Err(Error::InsufficientSteps { count });
    }
    if !(h0 > 0.0) {
        return Err(Error::InsufficientSteps { count: 0 });
    }
    let q = output_grade(f, p, x0.dim())?;
    let differential = differential_extensor(f, x0, p, q)?;
    let f_x0 = eval(f, x0, p)?;
    let mut steps = Vec::with_capacity(count);
    let mut h = h0;
    for _ in 0..count {
        let step = a.scale(h);
        let moved = eval(f, &x0.add(&step)?, p)?;
        let predicted = f_x0.add(&differential.apply(&step)?)?;
        let ratio = moved.sub(&predicted)?.norm() / step.norm();
        steps.push((h, ratio));
        h /= 2.0;
    }
    Ok(RemainderProfile { steps })
}

/// Derivative X'(lambda0) of a curve (an expression over a grade-0
/// variable). The alpha-directional derivative follows by scaling:
/// X'_alpha = X' * alpha.
pub fn curve_derivative(x: &Expr, lambda0: f64, dim: usize) -> Result<Multivector> {
    let point = Multivector::scalar(dim, lambda0)?;
    let unit = Multivector::scalar(dim, 1.0)?;
    Ok(eval_dual(x, &point, &unit, 0)?.into_parts().1)
}

/// One of the four derivative operators at `x0`: the sum over strictly
/// increasing index sets J of e^J * F'_{e_J}(x0), with * given by `kind`.
/// Summing ordered index sets absorbs the 1/p! of the all-tuples form, and
/// the result does not depend on the choice of frame.
pub fn derivative_operator(
    f: &Expr,
    x0: &Multivector,
    p: usize,
    kind: DerivKind,
    frame: &Frame,
) -> Result<Multivector> {
    blade_sum(f, x0, p, frame, |reciprocal, deriv| match kind {
        DerivKind::Curl => reciprocal.wedge(deriv),
        DerivKind::ScalarDiv => {
            Multivector::scalar(reciprocal.dim(), reciprocal.scalar_product(deriv)?)
        }
        DerivKind::LeftDiv => reciprocal.left_contract(deriv),
        DerivKind::Gradient => reciprocal.clifford(deriv),
    })
}

/// The A-directional derivative operator realized through a frame:
/// sum over ordered J of (A . e^J) F'_{e_J}(x0). Agrees with
/// `directional_derivative` for every frame.
pub fn a_dot_del(
    f: &Expr,
    x0: &Multivector,
    a: &Multivector,
    p: usize,
    frame: &Frame,
) -> Result<Multivector> {
    if !a.is_homogeneous(p) {
        return Err(Error::NotHomogeneous { expected: p });
    }
    blade_sum(f, x0, p, frame, |reciprocal, deriv| {
        Ok(deriv.scale(a.scalar_product(reciprocal)?))
    })
}

fn blade_sum(
    f: &Expr,
    x0: &Multivector,
    p: usize,
    frame: &Frame,
    combine: impl Fn(&Multivector, &Multivector) -> Result<Multivector>,
) -> Result<Multivector> {
    let dim = x0.dim();
    if frame.dim() != dim {
        return Err(Error::DimMismatch {
            left: frame.dim(),
            right: dim,
        });
    }
    if !x0.is_homogeneous(p) {
        return Err(Error::NotHomogeneous { expected: p });
    }
    let mut sum = Multivector::zero(dim)?;
    // fixed blade order keeps the reduction bit-deterministic
    for idx in ordered_blades(dim, p) {
        let direct = frame.direct_blade(idx)?;
        let reciprocal = frame.reciprocal_blade(idx)?;
        let deriv = directional_derivative(f, x0, &direct, p, DiffMethod::Dual)?;
        sum = sum.add(&combine(&reciprocal, &deriv)?)?;
    }
    Ok(sum)
}

/// A bound M with ||f(X)|| <= M ||X||: the Frobenius norm of the
/// coefficient matrix (not claimed tight).
pub fn extensor_norm_bound(f: &Extensor) -> f64 {
    f.frobenius_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn mv(text: &str, dim: usize) -> Multivector {
        Multivector::parse_literal(text, dim).unwrap()
    }

    #[test]
    fn directional_derivative_examples() {
        let x0 = mv("e1 + 2 e2", 3);
        let a = mv("e2 - e3", 3);

        // identity
        let d = directional_derivative(&parse("X", 3).unwrap(), &x0, &a, 1, DiffMethod::Dual)
            .unwrap();
        assert_eq!(d, a);

        // X ^ B is linear in X
        let d = directional_derivative(
            &parse("X ^ e3", 3).unwrap(),
            &x0,
            &a,
            1,
            DiffMethod::Dual,
        )
        .unwrap();
        assert_eq!(d, a.wedge(&mv("e3", 3)).unwrap());

        // Clifford square at X0 = e1 + 2e2 in direction e1 is the scalar 2
        let d = directional_derivative(
            &parse("X X", 3).unwrap(),
            &mv("e1 + 2 e2", 3),
            &mv("e1", 3),
            1,
            DiffMethod::Dual,
        )
        .unwrap();
        assert!(d.max_coeff_diff(&mv("2", 3)) < 1e-15);

        // fd agrees on the quadratic example
        let d_fd = directional_derivative(
            &parse("X X", 3).unwrap(),
            &mv("e1 + 2 e2", 3),
            &mv("e1", 3),
            1,
            DiffMethod::Fd,
        )
        .unwrap();
        assert!(d_fd.max_coeff_diff(&mv("2", 3)) < 1e-9);
    }

    #[test]
    fn differential_extensor_examples() {
        // identity function: 3x3 identity matrix
        let id = differential_extensor(&parse("X", 3).unwrap(), &mv("e1", 3), 1, 1).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_eq!(id.matrix()[(i, j)], expect);
            }
        }

        // A -> A ^ e3 as a (1,2)-extensor; columns derived by evaluating the
        // wedge on e1, e2, e3 (rows ordered e12, e13, e23)
        let w = differential_extensor(&parse("X ^ e3", 3).unwrap(), &mv("e1", 3), 1, 2).unwrap();
        let e3 = mv("e3", 3);
        for (col, blade) in ordered_blades(3, 1).into_iter().enumerate() {
            let image = Multivector::basis_blade(blade).wedge(&e3).unwrap();
            for (row, out_blade) in ordered_blades(3, 2).into_iter().enumerate() {
                assert_eq!(w.matrix()[(row, col)], image.coeff(out_blade));
            }
        }

        // mixed output is rejected
        assert!(matches!(
            differential_extensor(&parse("X X", 3).unwrap(), &mv("e1", 3), 1, 0),
            Err(Error::MixedGrade { .. })
        ));
    }

    #[test]
    fn extensor_reproduces_directional_derivatives() {
        let f = parse("<X X>_2 + X ^ e3", 3).unwrap();
        let x0 = mv("0.3 e1 - 0.7 e2 + e3", 3);
        let ext = differential_extensor(&f, &x0, 1, 2).unwrap();
        let dirs = [
            mv("e1", 3),
            mv("e1 - 2 e2", 3),
            mv("0.5 e1 + 0.25 e2 - e3", 3),
        ];
        for a in dirs {
            let via_ext = ext.apply(&a).unwrap();
            let direct = directional_derivative(&f, &x0, &a, 1, DiffMethod::Dual).unwrap();
            assert!(via_ext.max_coeff_diff(&direct) < 1e-12);
        }
    }

    #[test]
    fn remainder_profile_examples() {
        let x0 = mv("e1 + 2 e2", 3);
        let a = mv("e1", 3);

        // linear functions have identically zero remainder
        let lin = parse("X ^ e3", 3).unwrap();
        let prof = remainder_profile(&lin, &x0, &a, 1, 0.5, 5).unwrap();
        for &(_, ratio) in prof.steps() {
            assert_eq!(ratio, 0.0);
        }

        // Clifford square: remainder is h^2 A A, so ratio = h ||AA|| / ||A|| = h
        // for the unit direction e1. X X is mixed-grade as an expression, so
        // project to the scalar part, which carries the whole value for
        // vector inputs.
        let quad = parse("X X", 3).unwrap();
        assert!(remainder_profile(&quad, &x0, &a, 1, 0.5, 6).is_err());
        let quad = parse("<X X>_0", 3).unwrap();
        let prof = remainder_profile(&quad, &x0, &a, 1, 0.5, 6).unwrap();
        let mut h = 0.5;
        for &(step, ratio) in prof.steps() {
            assert_eq!(step, h);
            assert!((ratio - h).abs() < 1e-12, "ratio {ratio} at h {h}");
            h /= 2.0;
        }
        let slope = prof.loglog_slope().unwrap();
        assert!((slope - 1.0).abs() < 1e-9);

        assert!(matches!(
            remainder_profile(&quad, &x0, &a, 1, 0.5, 2),
            Err(Error::InsufficientSteps { count: 2 })
        ));
        assert!(matches!(
            remainder_profile(&quad, &x0, &Multivector::zero(3).unwrap(), 1, 0.5, 6),
            Err(Error::ZeroDirection)
        ));
    }

    #[test]
    fn curve_derivative_examples() {
        // X(lambda) = lambda e1 + lambda^2 e12
        let curve = parse("X * e1 + X X e12", 3).unwrap();
        assert_eq!(curve_derivative(&curve, 0.0, 3).unwrap(), mv("e1", 3));
        assert_eq!(
            curve_derivative(&curve, 1.0, 3).unwrap(),
            mv("e1 + 2 e12", 3)
        );

        let constant = parse("e12", 3).unwrap();
        assert!(curve_derivative(&constant, 0.7, 3).unwrap().is_zero());

        // alpha-scaling: X'_alpha(1) with alpha = 2 doubles the derivative
        let scaled = curve_derivative(&curve, 1.0, 3).unwrap().scale(2.0);
        assert_eq!(scaled, mv("2 e1 + 4 e12", 3));
    }

    #[test]
    fn operator_closed_forms_orthonormal() {
        let frame = Frame::orthonormal(3).unwrap();
        let x0 = mv("0.5 e1 - e2 + 2 e3", 3);
        let id = parse("X", 3).unwrap();

        let grad = derivative_operator(&id, &x0, 1, DerivKind::Gradient, &frame).unwrap();
        assert!(grad.max_coeff_diff(&mv("3", 3)) < 1e-12);
        let div = derivative_operator(&id, &x0, 1, DerivKind::ScalarDiv, &frame).unwrap();
        assert!(div.max_coeff_diff(&mv("3", 3)) < 1e-12);
        let curl = derivative_operator(&id, &x0, 1, DerivKind::Curl, &frame).unwrap();
        assert!(curl.norm() < 1e-12);

        // gradient of X . X at X0 is 2 X0
        let sq = parse("X . X", 3).unwrap();
        let grad = derivative_operator(&sq, &x0, 1, DerivKind::Gradient, &frame).unwrap();
        assert!(grad.max_coeff_diff(&x0.scale(2.0)) < 1e-12);

        // constants have all-zero operators
        let c = parse("e12", 3).unwrap();
        for kind in DerivKind::ALL {
            let out = derivative_operator(&c, &x0, 1, kind, &frame).unwrap();
            assert!(out.is_zero());
        }
    }

    #[test]
    fn a_dot_del_matches_directional() {
        let frame = Frame::from_basis(
            3,
            &[
                vec![1.0, 0.4, 0.0],
                vec![-0.2, 0.9, 0.3],
                vec![0.1, 0.0, 1.1],
            ],
        )
        .unwrap();
        let f = parse("<X X>_0 * e1 + X", 3).unwrap();
        let x0 = mv("0.5 e1 - e2 + 2 e3", 3);
        let a = mv("e1 + 0.5 e3", 3);

        let via_frame = a_dot_del(&f, &x0, &a, 1, &frame).unwrap();
        let direct = directional_derivative(&f, &x0, &a, 1, DiffMethod::Dual).unwrap();
        assert!(via_frame.max_coeff_diff(&direct) < 1e-12);

        // identity: A . del X = A
        let via_frame = a_dot_del(&parse("X", 3).unwrap(), &x0, &a, 1, &frame).unwrap();
        assert!(via_frame.max_coeff_diff(&a) < 1e-12);
    }

    #[test]
    fn norm_bound_examples() {
        assert_eq!(
            extensor_norm_bound(&Extensor::zeros(3, 1, 1).unwrap()),
            0.0
        );
        let id = differential_extensor(&parse("X", 3).unwrap(), &mv("e1", 3), 1, 1).unwrap();
        assert!((extensor_norm_bound(&id) - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn frame_dim_mismatch() {
        let frame = Frame::orthonormal(2).unwrap();
        let f = parse("X", 3).unwrap();
        assert!(matches!(
            derivative_operator(&f, &mv("e1", 3), 1, DerivKind::Gradient, &frame),
            Err(Error::DimMismatch { .. })
        ));
    }
}
