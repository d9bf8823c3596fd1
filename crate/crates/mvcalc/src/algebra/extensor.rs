//! (p,q)-extensors: linear maps from p-vectors to q-vectors stored as a
//! coefficient matrix over the ordered basis blades.

use nalgebra::{DMatrix, DVector};

use super::blade::{binomial, check_dim, ordered_blades, BladeIndex};
use super::multivector::Multivector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Extensor {
    dim: usize,
    p: usize,
    q: usize,
    /// C(n,q) x C(n,p); column J holds the image of the input blade e_J.
    matrix: DMatrix<f64>,
}

impl Extensor {
    pub fn new(dim: usize, p: usize, q: usize, matrix: DMatrix<f64>) -> Result<Self> {
        check_dim(dim)?;
        for grade in [p, q] {
            if grade > dim {
                return Err(Error::GradeOutOfRange { grade, dim });
            }
        }
        let (rows, cols) = (binomial(dim, q), binomial(dim, p));
        if matrix.nrows() != rows || matrix.ncols() != cols {
            return Err(Error::DimMismatch {
                left: matrix.nrows() * matrix.ncols(),
                right: rows * cols,
            });
        }
        Ok(Extensor { dim, p, q, matrix })
    }

    pub fn zeros(dim: usize, p: usize, q: usize) -> Result<Self> {
        let m = DMatrix::zeros(binomial(dim, q), binomial(dim, p));
        Extensor::new(dim, p, q, m)
    }

    /// Assembles the extensor whose value on each ordered input blade e_J is
    /// `image(e_J)`; every image must be a q-vector.
    pub fn from_images(
        dim: usize,
        p: usize,
        q: usize,
        mut image: impl FnMut(BladeIndex) -> Result<Multivector>,
    ) -> Result<Self> {
        let mut ext = Extensor::zeros(dim, p, q)?;
        let out_blades = ordered_blades(dim, q);
        for (col, in_blade) in ordered_blades(dim, p).into_iter().enumerate() {
            let img = image(in_blade)?;
            if img.dim() != dim {
                return Err(Error::DimMismatch {
                    left: img.dim(),
                    right: dim,
                });
            }
            if !img.is_homogeneous(q) {
                return Err(Error::NotHomogeneous { expected: q });
            }
            for (row, out_blade) in out_blades.iter().enumerate() {
                ext.matrix[(row, col)] = img.coeff(*out_blade);
            }
        }
        Ok(ext)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn input_grade(&self) -> usize {
        self.p
    }

    pub fn output_grade(&self) -> usize {
        self.q
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn input_blades(&self) -> Vec<BladeIndex> {
        ordered_blades(self.dim, self.p)
    }

    pub fn output_blades(&self) -> Vec<BladeIndex> {
        ordered_blades(self.dim, self.q)
    }

    /// Applies the linear map to a p-vector, producing a q-vector.
    pub fn apply(&self, x: &Multivector) -> Result<Multivector> {
        if x.dim() != self.dim {
            return Err(Error::DimMismatch {
                left: x.dim(),
                right: self.dim,
            });
        }
        if !x.is_homogeneous(self.p) {
            return Err(Error::NotHomogeneous { expected: self.p });
        }
        let coords = DVector::from_iterator(
            self.matrix.ncols(),
            self.input_blades().into_iter().map(|b| x.coeff(b)),
        );
        let image = &self.matrix * coords;
        let mut out = Multivector::zero(self.dim)?;
        for (row, blade) in self.output_blades().into_iter().enumerate() {
            out.set_coeff(blade, image[row]);
        }
        Ok(out)
    }

    /// Frobenius norm of the coefficient matrix; a bound M with
    /// ||f(X)|| <= M ||X|| by Cauchy-Schwarz on the coefficient vectors.
    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.norm()
    }

    pub fn max_entry_diff(&self, other: &Extensor) -> f64 {
        if self.matrix.shape() != other.matrix.shape() {
            return f64::INFINITY;
        }
        (&self.matrix - &other.matrix).abs().max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_is_the_stored_matrix_action() {
        // p=1, q=2, n=3: the map A -> A ^ e3 has images e1->e13, e2->e23, e3->0.
        let e3 = Multivector::basis_vector(3, 3).unwrap();
        let ext =
            Extensor::from_images(3, 1, 2, |b| Multivector::basis_blade(b).wedge(&e3)).unwrap();
        let a = Multivector::parse_literal("2 e1 - e2", 3).unwrap();
        let img = ext.apply(&a).unwrap();
        let expect = a.wedge(&e3).unwrap();
        assert!(img.max_coeff_diff(&expect) < 1e-15);
        assert_eq!(ext.matrix()[(1, 0)], 1.0); // e1 -> e13
        assert_eq!(ext.matrix()[(2, 1)], 1.0); // e2 -> e23
        assert_eq!(ext.matrix().column(2).amax(), 0.0); // e3 -> 0
    }

    #[test]
    fn identity_extensor_norm() {
        let id = Extensor::from_images(3, 1, 1, |b| Ok(Multivector::basis_blade(b))).unwrap();
        assert!((id.frobenius_norm() - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(Extensor::zeros(3, 1, 1).unwrap().frobenius_norm(), 0.0);
    }

    #[test]
    fn apply_rejects_wrong_grade() {
        let id = Extensor::from_images(3, 1, 1, |b| Ok(Multivector::basis_blade(b))).unwrap();
        let bivec = Multivector::parse_literal("e12", 3).unwrap();
        assert!(matches!(
            id.apply(&bivec),
            Err(Error::NotHomogeneous { expected: 1 })
        ));
    }

    #[test]
    fn from_images_rejects_mixed_output() {
        let res = Extensor::from_images(3, 1, 1, |b| {
            Multivector::basis_blade(b).add(&Multivector::scalar(3, 1.0)?)
        });
        assert!(matches!(res, Err(Error::NotHomogeneous { .. })));
    }
}
