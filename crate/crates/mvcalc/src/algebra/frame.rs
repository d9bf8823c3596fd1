//! Reciprocal basis pairs for the derivative-operator sums.
//!
//! A frame holds a basis {e_k} of V (rows, expressed in the orthonormal
//! computational frame), its Gram matrix, and the reciprocal basis {e^k}
//! with e^i . e_j = delta^i_j. Reciprocal p-blades are built factor-wise in
//! the same ascending index order as the direct blades.

use nalgebra::DMatrix;

use super::blade::{check_dim, BladeIndex};
use super::multivector::Multivector;
use crate::error::{Error, Result};

const SINGULAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    dim: usize,
    basis: DMatrix<f64>,
    gram: DMatrix<f64>,
    reciprocal: DMatrix<f64>,
}

impl Frame {
    /// The orthonormal computational frame, which is self-reciprocal.
    pub fn orthonormal(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Frame {
            dim,
            basis: DMatrix::identity(dim, dim),
            gram: DMatrix::identity(dim, dim),
            reciprocal: DMatrix::identity(dim, dim),
        })
    }

    /// Builds the frame for the basis given as `dim` rows of `dim` components.
    /// Fails when |det| <= 1e-12.
    pub fn from_basis(dim: usize, rows: &[Vec<f64>]) -> Result<Self> {
        check_dim(dim)?;
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimMismatch {
                left: rows.len(),
                right: dim,
            });
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        let basis = DMatrix::from_row_slice(dim, dim, &flat);
        let det = basis.determinant();
        if det.abs() <= SINGULAR_TOL {
            return Err(Error::SingularBasis { abs_det: det.abs() });
        }
        let inverse = basis
            .clone()
            .try_inverse()
            .ok_or(Error::SingularBasis { abs_det: det.abs() })?;
        let gram = &basis * basis.transpose();
        // Rows r^i of the reciprocal satisfy R B^T = I, i.e. R = (B^-1)^T.
        let reciprocal = inverse.transpose();
        Ok(Frame {
            dim,
            basis,
            gram,
            reciprocal,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| self.basis.row(i).iter().copied().collect())
            .collect()
    }

    pub fn reciprocal_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| self.reciprocal.row(i).iter().copied().collect())
            .collect()
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    /// Direct basis vector e_k as a multivector, 1-based.
    pub fn direct_vector(&self, k: usize) -> Result<Multivector> {
        self.row_vector(&self.basis, k)
    }

    /// Reciprocal basis vector e^k as a multivector, 1-based.
    pub fn reciprocal_vector(&self, k: usize) -> Result<Multivector> {
        self.row_vector(&self.reciprocal, k)
    }

    fn row_vector(&self, m: &DMatrix<f64>, k: usize) -> Result<Multivector> {
        if k == 0 || k > self.dim {
            return Err(Error::GradeOutOfRange {
                grade: k,
                dim: self.dim,
            });
        }
        let comps: Vec<f64> = m.row(k - 1).iter().copied().collect();
        Multivector::from_vector(self.dim, &comps)
    }

    /// Direct p-blade e_J = e_{j1} ^ ... ^ e_{jp} over the ascending factors
    /// of `idx`; the empty index gives the scalar 1.
    pub fn direct_blade(&self, idx: BladeIndex) -> Result<Multivector> {
        self.blade_from(&self.basis, idx)
    }

    /// Reciprocal p-blade e^J built in the same factor order as e_J.
    pub fn reciprocal_blade(&self, idx: BladeIndex) -> Result<Multivector> {
        self.blade_from(&self.reciprocal, idx)
    }

    fn blade_from(&self, m: &DMatrix<f64>, idx: BladeIndex) -> Result<Multivector> {
        if idx.dim() != self.dim {
            return Err(Error::DimMismatch {
                left: idx.dim(),
                right: self.dim,
            });
        }
        let mut out = Multivector::scalar(self.dim, 1.0)?;
        for k in idx.factors() {
            out = out.wedge(&self.row_vector(m, k)?)?;
        }
        Ok(out)
    }
}

/// Variance of a coordinate expansion relative to a frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordKind {
    /// Coefficients A_J = A . e_J; A rebuilds as sum A_J e^J.
    Covariant,
    /// Coefficients A^J = A . e^J; A rebuilds as sum A^J e_J.
    Contravariant,
}

/// Builds the reciprocal frame of the given basis rows.
pub fn reciprocal_basis(dim: usize, rows: &[Vec<f64>]) -> Result<Frame> {
    Frame::from_basis(dim, rows)
}

/// Coefficients of the p-vector `a` on the ordered p-blades of `frame`.
pub fn coordinates(
    a: &Multivector,
    frame: &Frame,
    p: usize,
    kind: CoordKind,
) -> Result<Vec<f64>> {
    if !a.is_homogeneous(p) {
        return Err(Error::NotHomogeneous { expected: p });
    }
    super::blade::ordered_blades(frame.dim(), p)
        .into_iter()
        .map(|idx| {
            let blade = match kind {
                CoordKind::Covariant => frame.direct_blade(idx)?,
                CoordKind::Contravariant => frame.reciprocal_blade(idx)?,
            };
            a.scalar_product(&blade)
        })
        .collect()
}

/// Rebuilds the p-vector whose `kind` coordinates in `frame` are `coords`.
pub fn from_coordinates(
    coords: &[f64],
    frame: &Frame,
    p: usize,
    kind: CoordKind,
) -> Result<Multivector> {
    let blades = super::blade::ordered_blades(frame.dim(), p);
    if coords.len() != blades.len() {
        return Err(Error::DimMismatch {
            left: coords.len(),
            right: blades.len(),
        });
    }
    let mut out = Multivector::zero(frame.dim())?;
    for (idx, &c) in blades.into_iter().zip(coords) {
        // covariant coordinates pair with reciprocal blades and vice versa
        let blade = match kind {
            CoordKind::Covariant => frame.reciprocal_blade(idx)?,
            CoordKind::Contravariant => frame.direct_blade(idx)?,
        };
        out = out.add(&blade.scale(c))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthonormal_is_self_reciprocal() {
        let f = Frame::orthonormal(3).unwrap();
        assert_eq!(f.basis_rows(), f.reciprocal_rows());
        for i in 1..=3 {
            for j in 1..=3 {
                let d = f
                    .reciprocal_vector(i)
                    .unwrap()
                    .scalar_product(&f.direct_vector(j).unwrap())
                    .unwrap();
                assert_eq!(d, if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn skew_frame_reciprocal() {
        // e1=(1,0), e2=(1,1): B^-1 = [[1,0],[-1,1]], so e^1=(1,-1), e^2=(0,1).
        let f = Frame::from_basis(2, &[vec![1.0, 0.0], vec![1.0, 1.0]]).unwrap();
        let recip = f.reciprocal_rows();
        assert!((recip[0][0] - 1.0).abs() < 1e-12);
        assert!((recip[0][1] + 1.0).abs() < 1e-12);
        assert!(recip[1][0].abs() < 1e-12);
        assert!((recip[1][1] - 1.0).abs() < 1e-12);
        assert!((f.gram()[(0, 0)] - 1.0).abs() < 1e-12);
        assert!((f.gram()[(0, 1)] - 1.0).abs() < 1e-12);
        assert!((f.gram()[(1, 1)] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn delta_property_holds_for_skewed_bases() {
        let rows = vec![
            vec![1.0, 0.2, -0.3],
            vec![0.5, 1.1, 0.0],
            vec![-0.4, 0.3, 0.9],
        ];
        let f = Frame::from_basis(3, &rows).unwrap();
        for i in 1..=3 {
            for j in 1..=3 {
                let d = f
                    .reciprocal_vector(i)
                    .unwrap()
                    .scalar_product(&f.direct_vector(j).unwrap())
                    .unwrap();
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((d - target).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn reciprocity_is_an_involution() {
        let rows = vec![
            vec![1.0, 0.2, -0.3],
            vec![0.5, 1.1, 0.0],
            vec![-0.4, 0.3, 0.9],
        ];
        let f = Frame::from_basis(3, &rows).unwrap();
        let back = Frame::from_basis(3, &f.reciprocal_rows()).unwrap();
        for (orig, rec) in rows.iter().zip(back.reciprocal_rows()) {
            for (a, b) in orig.iter().zip(rec) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn singular_basis_is_rejected() {
        let rows = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(matches!(
            Frame::from_basis(2, &rows),
            Err(Error::SingularBasis { .. })
        ));
    }

    #[test]
    fn coordinates_examples() {
        // e12 in the orthonormal frame has coefficient 1 on blade {1,2}.
        let f = Frame::orthonormal(3).unwrap();
        let e12 = Multivector::parse_literal("e12", 3).unwrap();
        let coords = coordinates(&e12, &f, 2, CoordKind::Covariant).unwrap();
        assert_eq!(coords, vec![1.0, 0.0, 0.0]);

        // covariant coords of 2e1+3e2 in the skew frame: (A.e_1, A.e_2) = (2, 5)
        let skew = Frame::from_basis(2, &[vec![1.0, 0.0], vec![1.0, 1.0]]).unwrap();
        let a = Multivector::parse_literal("2 e1 + 3 e2", 2).unwrap();
        let cov = coordinates(&a, &skew, 1, CoordKind::Covariant).unwrap();
        assert!((cov[0] - 2.0).abs() < 1e-12);
        assert!((cov[1] - 5.0).abs() < 1e-12);
        let rebuilt = from_coordinates(&cov, &skew, 1, CoordKind::Covariant).unwrap();
        assert!(rebuilt.max_coeff_diff(&a) < 1e-12);

        let contra = coordinates(&a, &skew, 1, CoordKind::Contravariant).unwrap();
        let rebuilt = from_coordinates(&contra, &skew, 1, CoordKind::Contravariant).unwrap();
        assert!(rebuilt.max_coeff_diff(&a) < 1e-12);

        let mixed = Multivector::parse_literal("1 + e1", 2).unwrap();
        assert!(coordinates(&mixed, &skew, 1, CoordKind::Covariant).is_err());
    }
}
