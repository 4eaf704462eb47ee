//! Fixed-size (2×2 and 3×3) exact matrices.
//!
//! Entries are stored as canonical representatives of the matrix ring, so
//! structural equality is exact equality. Eigenvalues are never formed;
//! everything goes through the characteristic-polynomial invariants.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;
use thiserror::Error;

use crate::arith::{ArithError, ExactScalar, Ring};
use crate::wire::{big_to_number, number_to_big, RingWire};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrices live in different rings ({0} vs {1})")]
    RingMismatch(Ring, Ring),
    #[error("dimension mismatch ({0} vs {1})")]
    DimMismatch(usize, usize),
    #[error("unsupported dimension {0}; only 2 and 3 are supported")]
    UnsupportedDim(usize),
    #[error("matrix rows are not square")]
    NotSquare,
    #[error("matrix is not invertible over {0}")]
    NotInvertible(Ring),
    #[error("matrix entry {0} is not an integer")]
    BadEntry(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Trace, sum of principal 2×2 minors, and determinant.
///
/// For dimension 2 `second_sym` coincides with the determinant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharPolyInvariants {
    pub trace: ExactScalar,
    pub second_sym: ExactScalar,
    pub det: ExactScalar,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquareMatrix {
    ring: Ring,
    dim: usize,
    entries: Vec<BigInt>,
}

impl SquareMatrix {
    pub fn from_rows<T: Into<BigInt> + Clone>(
        ring: Ring,
        rows: &[Vec<T>],
    ) -> Result<Self, MatrixError> {
        let dim = rows.len();
        if dim != 2 && dim != 3 {
            return Err(MatrixError::UnsupportedDim(dim));
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(MatrixError::NotSquare);
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|v| ring.reduce(v.clone().into()))
            .collect();
        Ok(SquareMatrix { ring, dim, entries })
    }

    /// Row-major entries; panics on a bad shape. Meant for literals.
    pub fn from_i64(ring: Ring, dim: usize, entries: &[i64]) -> Self {
        assert!(dim == 2 || dim == 3, "unsupported dimension {dim}");
        assert_eq!(entries.len(), dim * dim, "wrong entry count");
        SquareMatrix {
            ring,
            dim,
            entries: entries
                .iter()
                .map(|&v| ring.reduce(BigInt::from(v)))
                .collect(),
        }
    }

    pub(crate) fn from_raw(ring: Ring, dim: usize, entries: Vec<BigInt>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        SquareMatrix {
            ring,
            dim,
            entries: entries.into_iter().map(|v| ring.reduce(v)).collect(),
        }
    }

    pub fn identity(ring: Ring, dim: usize) -> Self {
        Self::scalar(&ring.one(), dim)
    }

    pub fn zero(ring: Ring, dim: usize) -> Self {
        Self::scalar(&ring.zero(), dim)
    }

    pub fn scalar(c: &ExactScalar, dim: usize) -> Self {
        assert!(dim == 2 || dim == 3, "unsupported dimension {dim}");
        let mut entries = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = c.value().clone();
        }
        SquareMatrix {
            ring: c.ring(),
            dim,
            entries,
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn raw_entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> ExactScalar {
        ExactScalar::new(self.ring, self.at(row, col).clone())
    }

    fn at(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .chunks(self.dim)
            .map(<[BigInt]>::to_vec)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.ring, self.dim)
    }

    /// `Some(c)` when the matrix equals `c·E`.
    pub fn as_scalar(&self) -> Option<ExactScalar> {
        let c = self.at(0, 0);
        let scalar = (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let v = self.at(i, j);
                if i == j {
                    v == c
                } else {
                    v.is_zero()
                }
            })
        });
        scalar.then(|| ExactScalar::new(self.ring, c.clone()))
    }

    fn check_compatible(&self, other: &SquareMatrix) -> Result<(), MatrixError> {
        if self.ring != other.ring {
            return Err(MatrixError::RingMismatch(self.ring, other.ring));
        }
        if self.dim != other.dim {
            return Err(MatrixError::DimMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &SquareMatrix) -> Result<SquareMatrix, MatrixError> {
        self.check_compatible(other)?;
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for k in 0..n {
                    acc += self.at(i, k) * other.at(k, j);
                }
                entries.push(acc);
            }
        }
        Ok(SquareMatrix::from_raw(self.ring, n, entries))
    }

    pub fn try_add(&self, other: &SquareMatrix) -> Result<SquareMatrix, MatrixError> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(SquareMatrix::from_raw(self.ring, self.dim, entries))
    }

    pub fn scale(&self, c: &ExactScalar) -> SquareMatrix {
        assert_eq!(self.ring, c.ring(), "ring mismatch in scaling");
        let entries = self.entries.iter().map(|a| a * c.value()).collect();
        SquareMatrix::from_raw(self.ring, self.dim, entries)
    }

    /// Exact division of every entry; `None` if some quotient does not exist
    /// in the ring.
    pub fn checked_div_scalar(&self, c: &ExactScalar) -> Option<SquareMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|a| {
                ExactScalar::new(self.ring, a.clone())
                    .checked_div(c)
                    .map(ExactScalar::into_value)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(SquareMatrix::from_raw(self.ring, self.dim, entries))
    }

    /// `X^n` by repeated squaring; `X^0 = E`.
    pub fn power(&self, mut n: u64) -> SquareMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.ring, self.dim);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn trace(&self) -> ExactScalar {
        let t = (0..self.dim).map(|i| self.at(i, i)).sum::<BigInt>();
        ExactScalar::new(self.ring, t)
    }

    fn minor2(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> BigInt {
        self.at(r0, c0) * self.at(r1, c1) - self.at(r0, c1) * self.at(r1, c0)
    }

    /// Cofactor expansion along the first row.
    pub fn det(&self) -> ExactScalar {
        let d = match self.dim {
            2 => self.minor2(0, 1, 0, 1),
            _ => {
                self.at(0, 0) * self.minor2(1, 2, 1, 2) - self.at(0, 1) * self.minor2(1, 2, 0, 2)
                    + self.at(0, 2) * self.minor2(1, 2, 0, 1)
            }
        };
        ExactScalar::new(self.ring, d)
    }

    pub fn invariants(&self) -> CharPolyInvariants {
        let second_sym = match self.dim {
            2 => self.det(),
            _ => ExactScalar::new(
                self.ring,
                self.minor2(0, 1, 0, 1) + self.minor2(0, 2, 0, 2) + self.minor2(1, 2, 1, 2),
            ),
        };
        CharPolyInvariants {
            trace: self.trace(),
            second_sym,
            det: self.det(),
        }
    }

    fn adjugate(&self) -> SquareMatrix {
        let entries = match self.dim {
            2 => vec![
                self.at(1, 1).clone(),
                -self.at(0, 1),
                -self.at(1, 0),
                self.at(0, 0).clone(),
            ],
            _ => {
                let mut out = Vec::with_capacity(9);
                // adj[i][j] = (-1)^(i+j) * minor(j, i)
                for i in 0..3 {
                    for j in 0..3 {
                        let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
                        let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
                        let m = self.minor2(rows[0], rows[1], cols[0], cols[1]);
                        out.push(if (i + j) % 2 == 0 { m } else { -m });
                    }
                }
                out
            }
        };
        SquareMatrix::from_raw(self.ring, self.dim, entries)
    }

    /// Inverse via the adjugate. Over ℤ only unimodular matrices qualify.
    pub fn inverse(&self) -> Result<SquareMatrix, MatrixError> {
        let det_inv = self
            .det()
            .inverse()
            .ok_or(MatrixError::NotInvertible(self.ring))?;
        Ok(self.adjugate().scale(&det_inv))
    }

    /// `[x, y] = x·y·x⁻¹·y⁻¹`.
    pub fn commutator(&self, other: &SquareMatrix) -> Result<SquareMatrix, MatrixError> {
        self.check_compatible(other)?;
        let xi = self.inverse()?;
        let yi = other.inverse()?;
        Ok(&(&(self * other) * &xi) * &yi)
    }

    /// `g·self·g⁻¹`.
    pub fn conjugate_by(&self, g: &SquareMatrix) -> Result<SquareMatrix, MatrixError> {
        self.check_compatible(g)?;
        Ok(&(g * self) * &g.inverse()?)
    }
}

// Operator forms panic on mismatched operands; `multiply`/`try_add` report
// the mismatch instead.
impl<'a> Mul<&'a SquareMatrix> for &'a SquareMatrix {
    type Output = SquareMatrix;
    fn mul(self, rhs: &'a SquareMatrix) -> SquareMatrix {
        self.multiply(rhs).expect("incompatible matrix product")
    }
}

impl<'a> Add<&'a SquareMatrix> for &'a SquareMatrix {
    type Output = SquareMatrix;
    fn add(self, rhs: &'a SquareMatrix) -> SquareMatrix {
        self.try_add(rhs).expect("incompatible matrix sum")
    }
}

impl<'a> Sub<&'a SquareMatrix> for &'a SquareMatrix {
    type Output = SquareMatrix;
    fn sub(self, rhs: &'a SquareMatrix) -> SquareMatrix {
        self + &(-rhs)
    }
}

impl Neg for &SquareMatrix {
    type Output = SquareMatrix;
    fn neg(self) -> SquareMatrix {
        SquareMatrix::from_raw(
            self.ring,
            self.dim,
            self.entries.iter().map(|a| -a).collect(),
        )
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.dim).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixWire {
    ring: RingWire,
    rows: Vec<Vec<Number>>,
}

impl Serialize for SquareMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixWire {
            ring: self.ring.into(),
            rows: self.rows_as_numbers(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SquareMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(deserializer)?;
        let ring = Ring::try_from(wire.ring).map_err(serde::de::Error::custom)?;
        let rows = wire
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|n| number_to_big(n).ok_or_else(|| MatrixError::BadEntry(n.to_string())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        SquareMatrix::from_rows(ring, &rows).map_err(serde::de::Error::custom)
    }
}

impl SquareMatrix {
    /// Rows as JSON numbers, used by report payloads.
    pub fn rows_as_numbers(&self) -> Vec<Vec<Number>> {
        self.entries
            .chunks(self.dim)
            .map(|row| row.iter().map(big_to_number).collect())
            .collect()
    }

    /// Parse the `{"ring": ..., "rows": [...]}` text form.
    pub fn from_json(text: &str) -> Result<SquareMatrix, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization cannot fail")
    }
}

impl CharPolyInvariants {
    /// Characteristic polynomial coefficients, ascending degree.
    pub fn char_poly(&self, dim: usize) -> Vec<ExactScalar> {
        let ring = self.trace.ring();
        match dim {
            2 => vec![self.det.clone(), -&self.trace, ring.one()],
            _ => vec![
                -&self.det,
                self.second_sym.clone(),
                -&self.trace,
                ring.one(),
            ],
        }
    }
}

pub(crate) fn is_unit(v: &ExactScalar) -> bool {
    v.is_one() || (-v).is_one()
}
