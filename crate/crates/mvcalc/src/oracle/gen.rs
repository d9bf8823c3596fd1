//! Seeded random generators for multivectors, frames, extensors, and
//! polynomial expressions.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{binomial, Extensor, Frame, Multivector};
use crate::error::{Error, Result};
use crate::expr::{output_grades, Expr};

/// Configuration shared by the generators and the verification harness.
#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    /// Inclusive range of algebra dimensions to draw from (max 8).
    pub dim_range: (usize, usize),
    /// Inclusive range of variable grades; clamped to the drawn dimension.
    pub grade_range: (usize, usize),
    /// Cap on the polynomial degree of generated expressions (max 4).
    pub max_degree: usize,
    /// Coefficients are drawn uniformly from this interval.
    pub coeff_range: (f64, f64),
    /// Number of verification trials to run.
    pub trials: usize,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            dim_range: (2, 4),
            grade_range: (1, 2),
            max_degree: 3,
            coeff_range: (-2.0, 2.0),
            trials: 100,
            seed: 0,
        }
    }
}

impl GenConfig {
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

pub fn sample_dim(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> usize {
    rng.random_range(cfg.dim_range.0..=cfg.dim_range.1)
}

pub fn sample_grade(rng: &mut ChaCha8Rng, cfg: &GenConfig, dim: usize) -> usize {
    let lo = cfg.grade_range.0.min(dim);
    let hi = cfg.grade_range.1.min(dim);
    rng.random_range(lo..=hi)
}

fn sample_coeff(rng: &mut ChaCha8Rng, range: (f64, f64)) -> f64 {
    rng.random_range(range.0..=range.1)
}

/// Homogeneous grade-`grade` multivector with uniform coefficients.
pub fn gen_multivector(
    rng: &mut ChaCha8Rng,
    dim: usize,
    grade: usize,
    range: (f64, f64),
) -> Result<Multivector> {
    if grade > dim {
        return Err(Error::GradeOutOfRange { grade, dim });
    }
    let mut mv = Multivector::zero(dim)?;
    for blade in crate::algebra::ordered_blades(dim, grade) {
        mv.set_coeff(blade, sample_coeff(rng, range));
    }
    Ok(mv)
}

/// Nonzero variant for use as a direction.
pub fn gen_nonzero_multivector(
    rng: &mut ChaCha8Rng,
    dim: usize,
    grade: usize,
    range: (f64, f64),
) -> Result<Multivector> {
    loop {
        let mv = gen_multivector(rng, dim, grade, range)?;
        if mv.norm() > 1e-3 {
            return Ok(mv);
        }
    }
}

/// Random invertible frame. Rejection keeps the smallest singular value
/// away from zero so reciprocal blades stay well-conditioned.
pub fn gen_frame(rng: &mut ChaCha8Rng, dim: usize) -> Result<Frame> {
    loop {
        let rows: Vec<Vec<f64>> = (0..dim)
            .map(|_| (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect())
            .collect();
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        let m = DMatrix::from_row_slice(dim, dim, &flat);
        let sv = m.singular_values();
        if sv.min() >= 0.2 {
            return Frame::from_basis(dim, &rows);
        }
    }
}

/// Random (p,q)-extensor with uniform matrix entries.
pub fn gen_extensor(
    rng: &mut ChaCha8Rng,
    dim: usize,
    p: usize,
    q: usize,
    range: (f64, f64),
) -> Result<Extensor> {
    let m = DMatrix::from_fn(binomial(dim, q), binomial(dim, p), |_, _| {
        sample_coeff(rng, range)
    });
    Extensor::new(dim, p, q, m)
}

/// Random polynomial expression in a grade-`p` variable, built from the
/// variable, constants, the four products, sums, and unary nodes, capped at
/// `max_degree` and depth 6. With `homogeneous_q` a grade projection is
/// appended so the result is a (p,q)-function.
pub fn gen_poly_expr(
    rng: &mut ChaCha8Rng,
    cfg: &GenConfig,
    dim: usize,
    p: usize,
    homogeneous_q: Option<usize>,
) -> Result<Expr> {
    if p > dim {
        return Err(Error::GradeOutOfRange { grade: p, dim });
    }
    if let Some(q) = homogeneous_q {
        if q > dim {
            return Err(Error::GradeOutOfRange { grade: q, dim });
        }
        // retry until the projected grade is actually reachable, so the
        // generated (p,q)-function is not identically zero (a valid but
        // powerless test instance); give up after a bounded scan
        for _ in 0..100 {
            let body = gen_node(rng, cfg, dim, cfg.max_degree, 5);
            let e = Expr::grade_proj(q, body);
            let set = output_grades(&e, p, dim)?;
            if set.as_homogeneous() == Some(q) && !set.is_empty() {
                return Ok(e);
            }
        }
        let fallback = Expr::grade_proj(q, gen_node(rng, cfg, dim, cfg.max_degree, 5));
        output_grades(&fallback, p, dim)?;
        Ok(fallback)
    } else {
        let e = gen_node(rng, cfg, dim, cfg.max_degree, 5);
        output_grades(&e, p, dim)?;
        Ok(e)
    }
}

fn gen_node(rng: &mut ChaCha8Rng, cfg: &GenConfig, dim: usize, degree: usize, depth: usize) -> Expr {
    if depth == 0 || degree == 0 {
        return gen_leaf(rng, cfg, dim, degree);
    }
    match rng.random_range(0..10u32) {
        // the four products, equally weighted
        0..=3 => {
            let left_degree = rng.random_range(0..=degree);
            let a = gen_node(rng, cfg, dim, left_degree, depth - 1);
            let b = gen_node(rng, cfg, dim, degree - left_degree, depth - 1);
            match rng.random_range(0..4u32) {
                0 => Expr::wedge(a, b),
                1 => Expr::clifford(a, b),
                2 => Expr::scalar_prod(a, b),
                _ => Expr::lcontract(a, b),
            }
        }
        4..=5 => Expr::add(
            gen_node(rng, cfg, dim, degree, depth - 1),
            gen_node(rng, cfg, dim, degree, depth - 1),
        ),
        6 => Expr::neg(gen_node(rng, cfg, dim, degree, depth - 1)),
        7 => Expr::scalar_mul(
            sample_coeff(rng, cfg.coeff_range),
            gen_node(rng, cfg, dim, degree, depth - 1),
        ),
        8 => Expr::reverse(gen_node(rng, cfg, dim, degree, depth - 1)),
        _ => {
            let k = rng.random_range(0..=dim);
            Expr::grade_proj(k, gen_node(rng, cfg, dim, degree, depth - 1))
        }
    }
}

fn gen_leaf(rng: &mut ChaCha8Rng, cfg: &GenConfig, dim: usize, degree: usize) -> Expr {
    if degree >= 1 && rng.random_range(0..10u32) < 6 {
        return Expr::Var;
    }
    let grade = rng.random_range(0..=dim);
    let mv = gen_multivector(rng, dim, grade, cfg.coeff_range).expect("grade <= dim");
    Expr::constant(mv)
}

/// Random affine expression c0 + L(X) with L linear in the variable.
pub fn gen_affine_expr(rng: &mut ChaCha8Rng, cfg: &GenConfig, dim: usize) -> Expr {
    let grade = rng.random_range(0..=dim);
    let c = Expr::constant(gen_multivector(rng, dim, grade, cfg.coeff_range).expect("valid grade"));
    Expr::add(c, gen_linear_term(rng, cfg, dim))
}

fn gen_linear_term(rng: &mut ChaCha8Rng, cfg: &GenConfig, dim: usize) -> Expr {
    let grade = rng.random_range(0..=dim);
    let c = Expr::constant(gen_multivector(rng, dim, grade, cfg.coeff_range).expect("valid grade"));
    match rng.random_range(0..4u32) {
        0 => Expr::wedge(Expr::Var, c),
        1 => Expr::clifford(c, Expr::Var),
        2 => Expr::clifford(Expr::Var, c),
        _ => Expr::lcontract(c, Expr::Var),
    }
}

/// Random expression of exact degree 2: a product of two affine factors
/// plus an affine part.
pub fn gen_quadratic_expr(rng: &mut ChaCha8Rng, cfg: &GenConfig, dim: usize) -> Expr {
    let f1 = gen_affine_expr(rng, cfg, dim);
    let f2 = gen_affine_expr(rng, cfg, dim);
    let quad = match rng.random_range(0..4u32) {
        0 => Expr::wedge(f1, f2),
        1 => Expr::clifford(f1, f2),
        2 => Expr::scalar_prod(f1, f2),
        _ => Expr::lcontract(f1, f2),
    };
    Expr::add(quad, gen_affine_expr(rng, cfg, dim))
}

/// One-shot deterministic generators keyed entirely by the config seed.
pub fn random_multivector(cfg: &GenConfig, grade: usize) -> Result<Multivector> {
    let mut rng = cfg.rng();
    let dim = sample_dim(&mut rng, cfg);
    gen_multivector(&mut rng, dim, grade, cfg.coeff_range)
}

pub fn random_poly_expr(cfg: &GenConfig, p: usize, homogeneous_q: Option<usize>) -> Result<Expr> {
    let mut rng = cfg.rng();
    let dim = sample_dim(&mut rng, cfg);
    gen_poly_expr(&mut rng, cfg, dim, p, homogeneous_q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::infer_signature;

    #[test]
    fn multivector_generation_is_seeded() {
        let cfg = GenConfig {
            seed: 42,
            ..GenConfig::default()
        };
        let a = random_multivector(&cfg, 1).unwrap();
        let b = random_multivector(&cfg, 1).unwrap();
        assert_eq!(a, b);
        assert!(a.is_homogeneous(1));

        let cfg = GenConfig {
            dim_range: (3, 3),
            ..cfg
        };
        let scalar = random_multivector(&cfg, 0).unwrap();
        assert!(scalar.is_homogeneous(0));
        assert!(scalar.coeffs()[0].abs() <= 2.0);
        let pseudo = random_multivector(&cfg, 3).unwrap();
        assert!(pseudo.is_homogeneous(3));
        assert_eq!(
            pseudo.coeffs().iter().filter(|&&c| c != 0.0).count() <= 1,
            true
        );
        assert!(random_multivector(&cfg, 4).is_err());
    }

    #[test]
    fn generated_expressions_are_well_typed() {
        let cfg = GenConfig::default();
        let mut rng = cfg.rng();
        for _ in 0..200 {
            let dim = sample_dim(&mut rng, &cfg);
            let p = sample_grade(&mut rng, &cfg, dim);
            let e = gen_poly_expr(&mut rng, &cfg, dim, p, None).unwrap();
            infer_signature(&e, p, dim).unwrap();
        }
    }

    #[test]
    fn homogeneous_request_is_respected() {
        let cfg = GenConfig::default();
        let mut rng = cfg.rng();
        for _ in 0..50 {
            let dim = sample_dim(&mut rng, &cfg);
            let p = sample_grade(&mut rng, &cfg, dim);
            let q = rng.random_range(0..=dim);
            let e = gen_poly_expr(&mut rng, &cfg, dim, p, Some(q)).unwrap();
            let sig = infer_signature(&e, p, dim).unwrap();
            assert_eq!(sig.output, crate::expr::OutputGrade::Homogeneous(q));
        }
    }

    #[test]
    fn frames_are_well_conditioned() {
        let cfg = GenConfig::default();
        let mut rng = cfg.rng();
        for _ in 0..20 {
            let frame = gen_frame(&mut rng, 3).unwrap();
            for i in 1..=3 {
                for j in 1..=3 {
                    let d = frame
                        .reciprocal_vector(i)
                        .unwrap()
                        .scalar_product(&frame.direct_vector(j).unwrap())
                        .unwrap();
                    let target = if i == j { 1.0 } else { 0.0 };
                    assert!((d - target).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn same_seed_same_expression() {
        let cfg = GenConfig {
            seed: 7,
            ..GenConfig::default()
        };
        let a = random_poly_expr(&cfg, 1, Some(0)).unwrap();
        let b = random_poly_expr(&cfg, 1, Some(0)).unwrap();
        assert_eq!(a, b);
    }
}
