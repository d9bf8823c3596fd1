//! Dense multivectors over the euclidean Clifford algebra of R^n, n <= 8.
//!
//! A multivector stores all 2^n coefficients indexed by blade bitmask. The
//! metric is euclidean with a fixed orthonormal computational frame, so the
//! scalar product `A . B = <reverse(A) B>_0` reduces to the coefficient dot
//! product and is positive-definite on every grade (the unit tests derive
//! this from the product table rather than assuming it).

use std::fmt;

use serde_json::{Map, Value};

use super::blade::{check_dim, reorder_sign, reverse_sign, BladeIndex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    dim: usize,
    coeffs: Vec<f64>,
}

impl Multivector {
    /// The zero multivector of an n-dimensional algebra.
    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Multivector {
            dim,
            coeffs: vec![0.0; 1 << dim],
        })
    }

    pub fn scalar(dim: usize, value: f64) -> Result<Self> {
        let mut mv = Multivector::zero(dim)?;
        mv.coeffs[0] = value;
        Ok(mv)
    }

    /// Basis vector `e_k`, 1-based.
    pub fn basis_vector(dim: usize, k: usize) -> Result<Self> {
        check_dim(dim)?;
        if k == 0 || k > dim {
            return Err(Error::GradeOutOfRange { grade: k, dim });
        }
        let mut mv = Multivector::zero(dim)?;
        mv.coeffs[1 << (k - 1)] = 1.0;
        Ok(mv)
    }

    /// Unit canonical basis blade for the given index.
    pub fn basis_blade(idx: BladeIndex) -> Self {
        let mut mv = Multivector::zero(idx.dim()).expect("BladeIndex keeps dim valid");
        mv.coeffs[idx.bits() as usize] = 1.0;
        mv
    }

    /// Grade-1 multivector from components in the orthonormal frame.
    pub fn from_vector(dim: usize, components: &[f64]) -> Result<Self> {
        check_dim(dim)?;
        if components.len() != dim {
            return Err(Error::DimMismatch {
                left: components.len(),
                right: dim,
            });
        }
        let mut mv = Multivector::zero(dim)?;
        for (k, &c) in components.iter().enumerate() {
            mv.coeffs[1 << k] = c;
        }
        Ok(mv)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, idx: BladeIndex) -> f64 {
        self.coeffs[idx.bits() as usize]
    }

    pub(crate) fn coeff_bits(&self, bits: u16) -> f64 {
        self.coeffs[bits as usize]
    }

    pub fn set_coeff(&mut self, idx: BladeIndex, value: f64) {
        self.coeffs[idx.bits() as usize] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    /// True when every nonzero coefficient sits on a grade-`k` blade.
    /// The zero multivector is homogeneous of every grade.
    pub fn is_homogeneous(&self, grade: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0.0 || i.count_ones() as usize == grade)
    }

    /// Bitset of grades carrying a nonzero coefficient.
    pub fn grades_present(&self) -> u16 {
        let mut set = 0u16;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0.0 {
                set |= 1 << i.count_ones();
            }
        }
        set
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Multivector { dim: self.dim, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Multivector { dim: self.dim, coeffs })
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    pub fn scale(&self, k: f64) -> Self {
        Multivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(f64) -> f64) -> Self {
        Multivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|&c| f(c)).collect(),
        }
    }

    /// Clifford (geometric) product.
    pub fn clifford(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut out = Multivector::zero(self.dim)?;
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                if y == 0.0 {
                    continue;
                }
                out.coeffs[i ^ j] += reorder_sign(i as u16, j as u16) * x * y;
            }
        }
        Ok(out)
    }

    /// Exterior (wedge) product: the disjoint-factor part of the Clifford product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut out = Multivector::zero(self.dim)?;
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                if y == 0.0 || i & j != 0 {
                    continue;
                }
                out.coeffs[i | j] += reorder_sign(i as u16, j as u16) * x * y;
            }
        }
        Ok(out)
    }

    /// Left contraction: on homogeneous A_r, B_s the grade-(s-r) part of AB,
    /// zero when r > s. Blade-wise this keeps the terms with the left factor
    /// set contained in the right.
    pub fn left_contract(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut out = Multivector::zero(self.dim)?;
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                if y == 0.0 || i & j != i {
                    continue;
                }
                out.coeffs[i ^ j] += reorder_sign(i as u16, j as u16) * x * y;
            }
        }
        Ok(out)
    }

    /// Right contraction: mirror of `left_contract`, zero when s > r.
    pub fn right_contract(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut out = Multivector::zero(self.dim)?;
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                if y == 0.0 || i & j != j {
                    continue;
                }
                out.coeffs[i ^ j] += reorder_sign(i as u16, j as u16) * x * y;
            }
        }
        Ok(out)
    }

    /// Scalar product `<reverse(A) B>_0`. With the euclidean metric this is
    /// the plain coefficient dot product; see the derivation test below.
    pub fn scalar_product(&self, other: &Self) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum())
    }

    /// Keeps the grade-`k` coefficients, zeroing the rest.
    pub fn grade_project(&self, grade: usize) -> Result<Self> {
        if grade > self.dim {
            return Err(Error::GradeOutOfRange { grade, dim: self.dim });
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| if i.count_ones() as usize == grade { c } else { 0.0 })
            .collect();
        Ok(Multivector { dim: self.dim, coeffs })
    }

    /// Reversion: sign (-1)^(k(k-1)/2) on each grade-k component.
    pub fn reverse(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c * reverse_sign(i.count_ones() as usize))
            .collect();
        Multivector { dim: self.dim, coeffs }
    }

    /// Norm `sqrt(A . A)`; a true norm because the scalar product is
    /// positive-definite.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Largest absolute coefficient difference; `inf` on dimension mismatch.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Parses the multivector literal syntax, e.g. `"1 + 2 e1 - 3 e12"`.
    pub fn parse_literal(text: &str, dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let mut mv = Multivector::zero(dim)?;
        let bytes = text.as_bytes();
        let mut pos = 0usize;
        let mut first_term = true;

        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };

        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(Error::parse(pos, "empty multivector literal"));
        }
        while pos < bytes.len() {
            let mut sign = 1.0;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1.0;
                }
                pos += 1;
                skip_ws(&mut pos);
            } else if !first_term {
                return Err(Error::parse(pos, "expected `+` or `-` between terms"));
            }
            first_term = false;

            // number part
            let mut coeff = 1.0;
            let mut have_number = false;
            if pos < bytes.len() && bytes[pos].is_ascii_digit() {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos + 1 < bytes.len() && bytes[pos] == b'.' && bytes[pos + 1].is_ascii_digit() {
                    pos += 1;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                }
                coeff = text[start..pos]
                    .parse()
                    .map_err(|_| Error::parse(start, "invalid number"))?;
                have_number = true;
                skip_ws(&mut pos);
            }

            // blade part
            let mut bits = 0u16;
            let mut have_blade = false;
            if pos < bytes.len() && bytes[pos] == b'e' {
                let start = pos;
                pos += 1;
                let digit_start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == digit_start {
                    return Err(Error::parse(start, "expected digits after `e`"));
                }
                let idx = BladeIndex::from_digits(&text[digit_start..pos], dim).map_err(|e| {
                    match e {
                        Error::Parse { message, .. } => Error::parse(digit_start, message),
                        other => other,
                    }
                })?;
                bits = idx.bits();
                have_blade = true;
                skip_ws(&mut pos);
            }

            if !have_number && !have_blade {
                return Err(Error::parse(pos, "expected a number or basis blade"));
            }
            mv.coeffs[bits as usize] += sign * coeff;
        }
        Ok(mv)
    }

    /// Renders the literal syntax; `Display` delegates here.
    pub fn to_literal(&self) -> String {
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c < 0.0 {
                    out.push('-');
                }
            } else if c < 0.0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let idx = BladeIndex::new(i as u16, self.dim).expect("coeff index in range");
            if i == 0 {
                out.push_str(&format!("{mag}"));
            } else if mag == 1.0 {
                out.push_str(&idx.label());
            } else {
                out.push_str(&format!("{mag} {}", idx.label()));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// JSON form `{"dim":3,"coeffs":{"":1.0,"1":2.0,"12":-3.0}}`; zero
    /// coefficients are omitted.
    pub fn to_json(&self) -> Value {
        let mut coeffs = Map::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let idx = BladeIndex::new(i as u16, self.dim).expect("coeff index in range");
            coeffs.insert(idx.digits(), Value::from(c));
        }
        let mut obj = Map::new();
        obj.insert("dim".to_string(), Value::from(self.dim));
        obj.insert("coeffs".to_string(), Value::Object(coeffs));
        Value::Object(obj)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::parse(0, "expected a JSON object"))?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::parse(0, "missing integer field `dim`"))? as usize;
        let mut mv = Multivector::zero(dim)?;
        let coeffs = obj
            .get("coeffs")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::parse(0, "missing object field `coeffs`"))?;
        for (key, val) in coeffs {
            let idx = BladeIndex::from_digits(key, dim)?;
            let c = val
                .as_f64()
                .ok_or_else(|| Error::parse(0, format!("coefficient `{key}` is not a number")))?;
            mv.coeffs[idx.bits() as usize] += c;
        }
        Ok(mv)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_literal())
    }
}
