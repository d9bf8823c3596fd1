//! Named verification rules: each one executes a derivation identity on
//! seeded random instances and returns one report per checked route.
//!
//! The sum, product, chain, and linearity rules each run twice: once with
//! directional derivatives taken by dual evaluation, and once routed
//! through the frame-realized `a_dot_del` operator (reported with an
//! `/a-dot-del` suffix). `product-rcontract` is a convention-dependent
//! extra beyond the paired-contraction product rule; it is part of `all`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::fd::fd_extrapolated;
use super::gen::{
    gen_affine_expr, gen_frame, gen_nonzero_multivector, gen_poly_expr, gen_quadratic_expr,
    sample_dim, sample_grade, GenConfig,
};
use super::verify::{error_metrics, verify_identity, VerifyReport};
use crate::algebra::{Frame, Multivector};
use crate::calculus::{
    a_dot_del, curve_derivative, derivative_operator, differential_extensor,
    directional_derivative, output_grade, remainder_profile, DerivKind, DiffMethod,
};
use crate::error::{Error, Result};
use crate::expr::{eval, Expr};

pub const RULES: &[&str] = &[
    "linearity",
    "sum",
    "product-wedge",
    "product-scalar",
    "product-lcontract",
    "product-rcontract",
    "product-clifford",
    "chain",
    "chain-scalar-curve",
    "chain-curve",
    "frame-independence",
    "operator-equality",
    "remainder-decay",
    "extensor-bound",
];

/// Tolerance each rule is verified at unless overridden.
pub fn default_tol(rule: &str) -> f64 {
    match rule {
        "linearity" | "sum" => 1e-12,
        "chain" => 1e-9,
        "chain-scalar-curve" | "chain-curve" => 1e-10,
        "frame-independence" => 1e-8,
        "operator-equality" => 1e-10,
        // slope band half-width around 1 for the quadratic decay check
        "remainder-decay" => 0.1,
        // rounding slack on the Frobenius bound
        "extensor-bound" => 1e-12,
        _ if rule.starts_with("product-") => 1e-10,
        _ => 1e-10,
    }
}

/// Runs one named rule, or every rule for `"all"`.
pub fn run_rule(rule: &str, cfg: &GenConfig, tol: Option<f64>) -> Result<Vec<VerifyReport>> {
    if rule == "all" {
        let mut reports = Vec::new();
        for name in RULES {
            reports.extend(run_rule(name, cfg, tol)?);
        }
        return Ok(reports);
    }
    if !RULES.contains(&rule) {
        return Err(Error::UnknownRule {
            name: rule.to_string(),
        });
    }
    let tol = tol.unwrap_or_else(|| default_tol(rule));
    Ok(match rule {
        "linearity" => rule_linearity(cfg, tol),
        "sum" => rule_sum(cfg, tol),
        "product-wedge" => rule_product(cfg, tol, "product-wedge", Multivector::wedge),
        "product-scalar" => rule_product(cfg, tol, "product-scalar", |a, b| {
            Multivector::scalar(a.dim(), a.scalar_product(b)?)
        }),
        "product-lcontract" => {
            rule_product(cfg, tol, "product-lcontract", Multivector::left_contract)
        }
        "product-rcontract" => {
            rule_product(cfg, tol, "product-rcontract", Multivector::right_contract)
        }
        "product-clifford" => rule_product(cfg, tol, "product-clifford", Multivector::clifford),
        "chain" => rule_chain(cfg, tol),
        "chain-scalar-curve" => rule_chain_scalar_curve(cfg, tol),
        "chain-curve" => rule_chain_curve(cfg, tol),
        "frame-independence" => rule_frame_independence(cfg, tol),
        "operator-equality" => rule_operator_equality(cfg, tol),
        "remainder-decay" => rule_remainder_decay(cfg, tol),
        "extensor-bound" => rule_extensor_bound(cfg, tol),
        _ => unreachable!("rule membership checked above"),
    })
}

struct PointTrial {
    f: Expr,
    x0: Multivector,
    a: Multivector,
    p: usize,
    frame: Frame,
}

fn gen_point_trial(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> PointTrial {
    let dim = sample_dim(rng, cfg);
    let p = sample_grade(rng, cfg, dim);
    PointTrial {
        f: gen_poly_expr(rng, cfg, dim, p, None).expect("grades validated"),
        x0: gen_nonzero_multivector(rng, dim, p, cfg.coeff_range).expect("grade <= dim"),
        a: gen_nonzero_multivector(rng, dim, p, cfg.coeff_range).expect("grade <= dim"),
        p,
        frame: gen_frame(rng, dim).expect("dim validated"),
    }
}

fn rule_linearity(cfg: &GenConfig, tol: f64) -> Vec<VerifyReport> {
    struct Trial {
        base: PointTrial,
        b: Multivector,
        alpha: f64,
        beta: f64,
    }
    let generate = |rng: &mut ChaCha8Rng| {
        let base = gen_point_trial(rng, cfg);
        let b = gen_nonzero_multivector(rng, base.x0.dim(), base.p, cfg.coeff_range)
            .expect("grade <= dim");
        Trial {
            base,
            b,
            alpha: rng.random_range(-2.0..=2.0),
            beta: rng.random_range(-2.0..=2.0),
        }
    };
    let combo = |t: &Trial| t.base.a.scale(t.alpha).add(&t.b.scale(t.beta));
    let dual = verify_identity(
        "linearity",
        cfg,
        tol,
        generate,
        |t| directional_derivative(&t.base.f, &t.base.x0, &combo(t)?, t.base.p, DiffMethod::Dual),
        |t| {
            let da =
                directional_derivative(&t.base.f, &t.base.x0, &t.base.a, t.base.p, DiffMethod::Dual)?;
            let db = directional_derivative(&t.base.f, &t.base.x0, &t.b, t.base.p, DiffMethod::Dual)?;
            da.scale(t.alpha).add(&db.scale(t.beta))
        },
    );
    let operator = verify_identity(
        "linearity/a-dot-del",
        cfg,
        tol,
        generate,
        |t| a_dot_del(&t.base.f, &t.base.x0, &combo(t)?, t.base.p, &t.base.frame),
        |t| {
            let da = a_dot_del(&t.base.f, &t.base.x0, &t.base.a, t.base.p, &t.base.frame)?;
            let db = a_dot_del(&t.base.f, &t.base.x0, &t.b, t.base.p, &t.base.frame)?;
            da.scale(t.alpha).add(&db.scale(t.beta))
        },
    );
    vec![dual, operator]
}

fn rule_sum(cfg: &GenConfig, tol: f64) -> Vec<VerifyReport> {
    struct Trial {
        base: PointTrial,
        g: Expr,
    }
    let generate = |rng: &mut ChaCha8Rng| {
        let base = gen_point_trial(rng, cfg);
        let g = gen_poly_expr(rng, cfg, base.x0.dim(), base.p, None).expect("grades validated");
        Trial { base, g }
    };
    let dual = verify_identity(
        "sum",
        cfg,
        tol,
        generate,
        |t| {
            let sum = Expr::add(t.base.f.clone(), t.g.clone());
            directional_derivative(&sum, &t.base.x0, &t.base.a, t.base.p, DiffMethod::Dual)
        },
        |t| {
            let df =
                directional_derivative(&t.base.f, &t.base.x0, &t.base.a, t.base.p, DiffMethod::Dual)?;
            let dg = directional_derivative(&t.g, &t.base.x0, &t.base.a, t.base.p, DiffMethod::Dual)?;
            df.add(&dg)
        },
    );
    let operator = verify_identity(
        "sum/a-dot-del",
        cfg,
        tol,
        generate,
        |t| {
            let sum = Expr::add(t.base.f.clone(), t.g.clone());
            a_dot_del(&sum, &t.base.x0, &t.base.a, t.base.p, &t.base.frame)
        },
        |t| {
            let df = a_dot_del(&t.base.f, &t.base.x0, &t.base.a, t.base.p, &t.base.frame)?;
            let dg = a_dot_del(&t.g, &t.base.x0, &t.base.a, t.base.p, &t.base.frame)?;
            df.add(&dg)
        },
    );
    vec![dual, operator]
}

fn rule_product(
    cfg: &GenConfig,
    tol: f64,
    name: &str,
    op: impl Fn(&Multivector, &Multivector) -> Result<Multivector> + Copy,
) -> Vec<VerifyReport> {
    struct Trial {
        base: PointTrial,
        g: Expr,
    }
    let generate = |rng: &mut ChaCha8Rng| {
        let base = gen_point_trial(rng, cfg);
        let g = gen_poly_expr(rng, cfg, base.x0.dim(), base.p, None).expect("grades validated");
        Trial { base, g }
    };
    let product_expr = |t: &Trial| -> Expr {
        let f = t.base.f.clone();
        let g = t.g.clone();
        match name {
            "product-wedge" => Expr::wedge(f, g),
            "product-scalar" => Expr::scalar_prod(f, g),
            "product-lcontract" => Expr::lcontract(f, g),
            "product-rcontract" => Expr::rcontract(f, g),
            _ => Expr::clifford(f, g),
        }
    };
    let leibniz = |df: &Multivector,
                   g0: &Multivector,
                   f0: &Multivector,
                   dg: &Multivector|
     -> Result<Multivector> { op(df, g0)?.add(&op(f0, dg)?) };
    let dual = verify_identity(
        name,
        cfg,
        tol,
        generate,
        |t| {
            directional_derivative(&product_expr(t), &t.base.x0, &t.base.a, t.base.p, DiffMethod::Dual)
        },
        |t| {
            let f0 = eval(&t.base.f, &t.base.x0, t.base.p)?;
            let g0 = eval(&t.g, &t.base.x0, t.base.p)?;
            let df =
                directional_derivative(&t.base.f, &t.base.x0, &t.base.a, t.base.p, DiffMethod::Dual)?;
            let dg = directional_derivative(&t.g, &t.base.x0, &t.base.a, t.base.p, DiffMethod::Dual)?;
            leibniz(&df, &g0, &f0, &dg)
        },
    );
    let operator = verify_identity(
        &format!("{name}/a-dot-del"),
        cfg,
        tol,
        generate,
        |t| a_dot_del(&product_expr(t), &t.base.x0, &t.base.a, t.base.p, &t.base.frame),
        |t| {
            let f0 = eval(&t.base.f, &t.base.x0, t.base.p)?;
            let g0 = eval(&t.g, &t.base.x0, t.base.p)?;
            let df = a_dot_del(&t.base.f, &t.base.x0, &t.base.a, t.base.p, &t.base.frame)?;
            let dg = a_dot_del(&t.g, &t.base.x0, &t.base.a, t.base.p, &t.base.frame)?;
            leibniz(&df, &g0, &f0, &dg)
        },
    );
    vec![dual, operator]
}

fn rule_chain(cfg: &GenConfig, tol: f64) -> Vec<VerifyReport> {
    struct Trial {
        inner: Expr,
        outer: Expr,
        x0: Multivector,
        a: Multivector,
        p: usize,
        q: usize,
        r: usize,
        frame: Frame,
    }
    let generate = |rng: &mut ChaCha8Rng| {
        let dim = sample_dim(rng, cfg);
        let p = sample_grade(rng, cfg, dim);
        let q = rng.random_range(0..=dim);
        let r = rng.random_range(0..=dim);
        Trial {
            inner: gen_poly_expr(rng, cfg, dim, p, Some(q)).expect("grades validated"),
            outer: gen_poly_expr(rng, cfg, dim, q, Some(r)).expect("grades validated"),
            x0: gen_nonzero_multivector(rng, dim, p, cfg.coeff_range).expect("grade <= dim"),
            a: gen_nonzero_multivector(rng, dim, p, cfg.coeff_range).expect("grade <= dim"),
            p,
            q,
            r,
            frame: gen_frame(rng, dim).expect("dim validated"),
        }
    };
    let composed = |t: &Trial| Expr::Compose {
        outer: Box::new(t.outer.clone()),
        inner: Box::new(t.inner.clone()),
    };
    let dual = verify_identity(
        "chain",
        cfg,
        tol,
        generate,
        |t| directional_derivative(&composed(t), &t.x0, &t.a, t.p, DiffMethod::Dual),
        |t| {
            let g0 = eval(&t.inner, &t.x0, t.p)?;
            let dg = directional_derivative(&t.inner, &t.x0, &t.a, t.p, DiffMethod::Dual)?;
            let f_at_g0 = differential_extensor(&t.outer, &g0, t.q, t.r)?;
            f_at_g0.apply(&dg)
        },
    );
    let operator = verify_identity(
        "chain/a-dot-del",
        cfg,
        tol,
        generate,
        |t| a_dot_del(&composed(t), &t.x0, &t.a, t.p, &t.frame),
        |t| {
            let g0 = eval(&t.inner, &t.x0, t.p)?;
            let dg = a_dot_del(&t.inner, &t.x0, &t.a, t.p, &t.frame)?;
            if dg.is_zero() {
                return Multivector::zero(g0.dim());
            }
            a_dot_del(&t.outer, &g0, &dg.grade_project(t.q)?, t.q, &t.frame)
        },
    );
    vec![dual, operator]
}

fn rule_chain_scalar_curve(cfg: &GenConfig, tol: f64) -> Vec<VerifyReport> {
    struct Trial {
        phi: Expr,
        curve: Expr,
        x0: Multivector,
        a: Multivector,
        p: usize,
    }
    let generate = |rng: &mut ChaCha8Rng| {
        let dim = sample_dim(rng, cfg);
        let p = sample_grade(rng, cfg, dim);
        let r = rng.random_range(0..=dim);
        Trial {
            phi: gen_poly_expr(rng, cfg, dim, p, Some(0)).expect("grades validated"),
            curve: gen_poly_expr(rng, cfg, dim, 0, Some(r)).expect("grades validated"),
            x0: gen_nonzero_multivector(rng, dim, p, cfg.coeff_range).expect("grade <= dim"),
            a: gen_nonzero_multivector(rng, dim, p, cfg.coeff_range).expect("grade <= dim"),
            p,
        }
    };
    vec![verify_identity(
        "chain-scalar-curve",
        cfg,
        tol,
        generate,
        |t| {
            let composed = Expr::Compose {
                outer: Box::new(t.curve.clone()),
                inner: Box::new(t.phi.clone()),
            };
            directional_derivative(&composed, &t.x0, &t.a, t.p, DiffMethod::Dual)
        },
        |t| {
            let phi0 = eval(&t.phi, &t.x0, t.p)?.coeffs()[0];
            let dphi =
                directional_derivative(&t.phi, &t.x0, &t.a, t.p, DiffMethod::Dual)?.coeffs()[0];
            Ok(curve_derivative(&t.curve, phi0, t.x0.dim())?.scale(dphi))
        },
    )]
}

fn rule_chain_curve(cfg: &GenConfig, tol: f64) -> Vec<VerifyReport> {
    struct Trial {
        curve: Expr,
        f: Expr,
        lambda0: f64,
        q: usize,
        dim: usize,
    }
    let generate = |rng: &mut ChaCha8Rng| {
        let dim = sample_dim(rng, cfg);
        let q = sample_grade(rng, cfg, dim);
        let r = rng.random_range(0..=dim);
        Trial {
            curve: gen_poly_expr(rng, cfg, dim, 0, Some(q)).expect("grades validated"),
            f: gen_poly_expr(rng, cfg, dim, q, Some(r)).expect("grades validated"),
            lambda0: rng.random_range(-1.5..=1.5),
            q,
            dim,
        }
    };
    vec![verify_identity(
        "chain-curve",
        cfg,
        tol,
        generate,
        |t| {
            let composed = Expr::Compose {
                outer: Box::new(t.f.clone()),
                inner: Box::new(t.curve.clone()),
            };
            curve_derivative(&composed, t.lambda0, t.dim)
        },
        |t| {
            let at = eval(&t.curve, &Multivector::scalar(t.dim, t.lambda0)?, 0)?;
            let velocity = curve_derivative(&t.curve, t.lambda0, t.dim)?;
            Ok(
                crate::expr::eval_dual(&t.f, &at.grade_project(t.q)?, &velocity.grade_project(t.q)?, t.q)?
                    .into_parts()
                    .1,
            )
        },
    )]
}

fn rule_frame_independence(cfg: &GenConfig, tol: f64) -> Vec<VerifyReport> {
    const FRAMES_PER_TRIAL: usize = 10;
    let mut rng = cfg.rng();
    let mut report = VerifyReport::new("frame-independence", cfg.seed);
    for _ in 0..cfg.trials {
        let t = gen_point_trial(&mut rng, cfg);
        let dim = t.x0.dim();
        let orthonormal = Frame::orthonormal(dim).expect("dim validated");
        let mut worst_abs = 0.0f64;
        let mut worst_rel = 0.0f64;
        let mut ok = true;
        for _ in 0..FRAMES_PER_TRIAL {
            let frame = gen_frame(&mut rng, dim).expect("dim validated");
            for kind in DerivKind::ALL {
                let reference = derivative_operator(&t.f, &t.x0, t.p, kind, &orthonormal);
                let skewed = derivative_operator(&t.f, &t.x0, t.p, kind, &frame);
                match (reference, skewed) {
                    (Ok(reference), Ok(skewed)) => {
                        let (abs, rel) = error_metrics(&skewed, &reference);
                        worst_abs = worst_abs.max(abs);
                        worst_rel = worst_rel.max(rel);
                        if !(rel <= tol) {
                            ok = false;
                        }
                    }
                    _ => ok = false,
                }
            }
        }
        report.trials += 1;
        report.max_abs_error = report.max_abs_error.max(worst_abs);
        report.max_rel_error = report.max_rel_error.max(worst_rel);
        if !ok {
            report.failures += 1;
        }
    }
    vec![report]
}

fn rule_operator_equality(cfg: &GenConfig, tol: f64) -> Vec<VerifyReport> {
    struct Trial {
        base: PointTrial,
        orthonormal: bool,
    }
    let mut counter = 0usize;
    let generate = move |rng: &mut ChaCha8Rng| {
        let base = gen_point_trial(rng, cfg);
        counter += 1;
        Trial {
            base,
            // keep a sprinkling of orthonormal frames among the random ones
            orthonormal: counter % 20 == 0,
        }
    };
    vec![verify_identity(
        "operator-equality",
        cfg,
        tol,
        generate,
        |t| {
            let frame = if t.orthonormal {
                Frame::orthonormal(t.base.x0.dim())?
            } else {
                t.base.frame.clone()
            };
            a_dot_del(&t.base.f, &t.base.x0, &t.base.a, t.base.p, &frame)
        },
        |t| directional_derivative(&t.base.f, &t.base.x0, &t.base.a, t.base.p, DiffMethod::Dual),
    )]
}

fn rule_remainder_decay(cfg: &GenConfig, tol: f64) -> Vec<VerifyReport> {
    const H0: f64 = 0.5;
    const COUNT: usize = 7;
    const LINEAR_CEILING: f64 = 1e-12;

    let mut rng = cfg.rng();
    let mut quad_report = VerifyReport::new("remainder-decay", cfg.seed);
    for _ in 0..cfg.trials {
        // redraw until the quadratic term is visible at the largest step
        let mut profile = None;
        for _ in 0..100 {
            let dim = sample_dim(&mut rng, cfg);
            let p = sample_grade(&mut rng, cfg, dim);
            let f = gen_quadratic_expr(&mut rng, cfg, dim);
            let Some(q) = pick_output_grade(&mut rng, &f, p, dim) else {
                continue;
            };
            let f = Expr::grade_proj(q, f);
            let x0 = gen_nonzero_multivector(&mut rng, dim, p, cfg.coeff_range).expect("grade ok");
            let a = gen_nonzero_multivector(&mut rng, dim, p, cfg.coeff_range).expect("grade ok");
            if let Ok(prof) = remainder_profile(&f, &x0, &a, p, H0, COUNT) {
                if prof.steps()[0].1 >= 1e-6 {
                    profile = Some(prof);
                    break;
                }
            }
        }
        let Some(profile) = profile else {
            quad_report.record_failure();
            continue;
        };
        match profile.loglog_slope() {
            Some(slope) => quad_report.record((slope - 1.0).abs(), (slope - 1.0).abs(), tol),
            None => quad_report.record_failure(),
        }
    }

    let mut lin_report = VerifyReport::new("remainder-decay/linear", cfg.seed);
    for _ in 0..cfg.trials {
        let dim = sample_dim(&mut rng, cfg);
        let p = sample_grade(&mut rng, cfg, dim);
        let f = gen_affine_expr(&mut rng, cfg, dim);
        let Some(q) = pick_output_grade(&mut rng, &f, p, dim) else {
            lin_report.record(0.0, 0.0, LINEAR_CEILING);
            continue;
        };
        let f = Expr::grade_proj(q, f);
        let x0 = gen_nonzero_multivector(&mut rng, dim, p, cfg.coeff_range).expect("grade ok");
        let a = gen_nonzero_multivector(&mut rng, dim, p, cfg.coeff_range).expect("grade ok");
        match remainder_profile(&f, &x0, &a, p, H0, COUNT) {
            Ok(prof) => {
                let worst = prof.steps().iter().map(|&(_, r)| r).fold(0.0, f64::max);
                lin_report.record(worst, worst, LINEAR_CEILING);
            }
            Err(_) => lin_report.record_failure(),
        }
    }
    vec![quad_report, lin_report]
}

/// Picks one grade the expression can produce at input grade `p`.
fn pick_output_grade(rng: &mut ChaCha8Rng, f: &Expr, p: usize, dim: usize) -> Option<usize> {
    let grades: Vec<usize> = crate::expr::output_grades(f, p, dim).ok()?.grades().collect();
    if grades.is_empty() {
        return None;
    }
    Some(grades[rng.random_range(0..grades.len())])
}

fn rule_extensor_bound(cfg: &GenConfig, tol: f64) -> Vec<VerifyReport> {
    const INPUTS_PER_EXTENSOR: usize = 100;
    let mut rng = cfg.rng();
    let mut report = VerifyReport::new("extensor-bound", cfg.seed);
    for _ in 0..cfg.trials {
        let dim = sample_dim(&mut rng, cfg);
        let p = rng.random_range(0..=dim);
        let q = rng.random_range(0..=dim);
        let ext = super::gen::gen_extensor(&mut rng, dim, p, q, cfg.coeff_range)
            .expect("grades validated");
        let bound = crate::calculus::extensor_norm_bound(&ext);
        let mut worst_excess = 0.0f64;
        let mut ok = true;
        for _ in 0..INPUTS_PER_EXTENSOR {
            let x = super::gen::gen_multivector(&mut rng, dim, p, cfg.coeff_range)
                .expect("grade <= dim");
            let image_norm = match ext.apply(&x) {
                Ok(y) => y.norm(),
                Err(_) => {
                    ok = false;
                    continue;
                }
            };
            let allowed = bound * x.norm();
            let excess = (image_norm - allowed) / allowed.max(1.0);
            worst_excess = worst_excess.max(excess);
            if excess > tol {
                ok = false;
            }
        }
        report.trials += 1;
        report.max_abs_error = report.max_abs_error.max(worst_excess.max(0.0));
        report.max_rel_error = report.max_rel_error.max(worst_excess.max(0.0));
        if !ok {
            report.failures += 1;
        }
    }
    vec![report]
}

/// Cross-validation of the two derivative routes (dual evaluation against
/// extrapolated finite differences) on random polynomial expressions.
pub fn dual_vs_fd(cfg: &GenConfig, tol: f64) -> VerifyReport {
    verify_identity(
        "dual-vs-fd",
        cfg,
        tol,
        |rng| gen_point_trial(rng, cfg),
        |t| directional_derivative(&t.f, &t.x0, &t.a, t.p, DiffMethod::Dual),
        |t| fd_extrapolated(&t.f, &t.x0, &t.a, t.p),
    )
}

/// Uniqueness of the differential: the dual-assembled and fd-assembled
/// extensors of random (p,q)-functions must agree entry-wise.
pub fn extensor_uniqueness(cfg: &GenConfig, tol: f64) -> VerifyReport {
    let mut rng = cfg.rng();
    let mut report = VerifyReport::new("extensor-uniqueness", cfg.seed);
    for _ in 0..cfg.trials {
        let dim = sample_dim(&mut rng, cfg);
        let p = sample_grade(&mut rng, cfg, dim);
        let q = rng.random_range(0..=dim);
        let f = gen_poly_expr(&mut rng, cfg, dim, p, Some(q)).expect("grades validated");
        let x0 = gen_nonzero_multivector(&mut rng, dim, p, cfg.coeff_range).expect("grade ok");
        let via_dual = differential_extensor(&f, &x0, p, q);
        let via_fd = super::fd::fd_extensor(&f, &x0, p, q);
        match (via_dual, via_fd) {
            (Ok(a), Ok(b)) => {
                let abs = a.max_entry_diff(&b);
                let scale = b.matrix().amax().max(1.0);
                report.record(abs, abs / scale, tol);
            }
            _ => report.record_failure(),
        }
    }
    report
}
