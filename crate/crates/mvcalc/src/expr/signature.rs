//! Grade arithmetic: which output grades an expression can produce.

use std::fmt;

use super::ast::Expr;
use crate::error::{Error, Result};

/// Set of grades (0..=dim) an expression may produce, as a bitset. The
/// analysis is structural: cancellations can only shrink the true set, so a
/// singleton here guarantees a homogeneous output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct GradeSet(u16);

impl GradeSet {
    pub const EMPTY: GradeSet = GradeSet(0);

    pub fn single(k: usize) -> GradeSet {
        GradeSet(1 << k)
    }

    pub fn from_bits(bits: u16) -> GradeSet {
        GradeSet(bits)
    }

    pub fn union(self, other: GradeSet) -> GradeSet {
        GradeSet(self.0 | other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, k: usize) -> bool {
        self.0 >> k & 1 == 1
    }

    pub fn grades(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..16).filter(move |k| bits >> k & 1 == 1)
    }

    /// `Some(q)` when the set pins a homogeneous grade. The empty set (an
    /// identically zero function) counts as grade 0.
    pub fn as_homogeneous(self) -> Option<usize> {
        if self.0 == 0 {
            return Some(0);
        }
        if self.0.count_ones() == 1 {
            return Some(self.0.trailing_zeros() as usize);
        }
        None
    }
}

/// Output grade of a (p,q)-function: homogeneous q or mixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputGrade {
    Homogeneous(usize),
    Mixed,
}

impl fmt::Display for OutputGrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutputGrade::Homogeneous(q) => write!(f, "{q}"),
            OutputGrade::Mixed => write!(f, "mixed"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuncSignature {
    pub input_grade: usize,
    pub output: OutputGrade,
}

/// Computes the signature of `e` as a function of a grade-`p` variable.
pub fn infer_signature(e: &Expr, p: usize, dim: usize) -> Result<FuncSignature> {
    let set = output_grades(e, p, dim)?;
    let output = match set.as_homogeneous() {
        Some(q) => OutputGrade::Homogeneous(q),
        None => OutputGrade::Mixed,
    };
    Ok(FuncSignature {
        input_grade: p,
        output,
    })
}

pub(crate) fn output_grades(e: &Expr, p: usize, dim: usize) -> Result<GradeSet> {
    if p > dim {
        return Err(Error::GradeOutOfRange { grade: p, dim });
    }
    grades(e, p, dim)
}

fn grades(e: &Expr, p: usize, dim: usize) -> Result<GradeSet> {
    Ok(match e {
        Expr::Var => GradeSet::single(p),
        Expr::Const(mv) => {
            if mv.dim() != dim {
                return Err(Error::DimMismatch {
                    left: mv.dim(),
                    right: dim,
                });
            }
            GradeSet::from_bits(mv.grades_present())
        }
        Expr::Add(a, b) => grades(a, p, dim)?.union(grades(b, p, dim)?),
        Expr::Neg(a) | Expr::ScalarMul(_, a) | Expr::Reverse(a) => grades(a, p, dim)?,
        Expr::Wedge(a, b) => {
            let (ga, gb) = (grades(a, p, dim)?, grades(b, p, dim)?);
            let mut out = GradeSet::EMPTY;
            for j in ga.grades() {
                for k in gb.grades() {
                    if j + k <= dim {
                        out = out.union(GradeSet::single(j + k));
                    }
                }
            }
            out
        }
        Expr::Clifford(a, b) => {
            let (ga, gb) = (grades(a, p, dim)?, grades(b, p, dim)?);
            let mut out = GradeSet::EMPTY;
            for j in ga.grades() {
                for k in gb.grades() {
                    // grade j+k-2m where m factors are shared; the union of
                    // factors must still fit in dim
                    let m_lo = (j + k).saturating_sub(dim);
                    for m in m_lo..=j.min(k) {
                        out = out.union(GradeSet::single(j + k - 2 * m));
                    }
                }
            }
            out
        }
        Expr::ScalarProd(a, b) => {
            let (ga, gb) = (grades(a, p, dim)?, grades(b, p, dim)?);
            // blades of different grade are orthogonal
            if ga.grades().any(|j| gb.contains(j)) {
                GradeSet::single(0)
            } else {
                GradeSet::EMPTY
            }
        }
        Expr::LContract(a, b) => {
            let (ga, gb) = (grades(a, p, dim)?, grades(b, p, dim)?);
            let mut out = GradeSet::EMPTY;
            for j in ga.grades() {
                for k in gb.grades() {
                    if j <= k {
                        out = out.union(GradeSet::single(k - j));
                    }
                }
            }
            out
        }
        Expr::RContract(a, b) => {
            let (ga, gb) = (grades(a, p, dim)?, grades(b, p, dim)?);
            let mut out = GradeSet::EMPTY;
            for j in ga.grades() {
                for k in gb.grades() {
                    if k <= j {
                        out = out.union(GradeSet::single(j - k));
                    }
                }
            }
            out
        }
        Expr::GradeProj(k, a) => {
            if *k > dim {
                return Err(Error::GradeOutOfRange { grade: *k, dim });
            }
            let ga = grades(a, p, dim)?;
            if ga.contains(*k) {
                GradeSet::single(*k)
            } else {
                GradeSet::EMPTY
            }
        }
        Expr::Compose { outer, inner } => {
            let q = grades(inner, p, dim)?
                .as_homogeneous()
                .ok_or(Error::MixedGrade {
                    context: "compose inner function",
                })?;
            grades(outer, q, dim)?
        }
    })
}
