//! Dense matrices over [`Scalar`] and the two determinant kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{Field, Scalar, ScalarMode};
use crate::error::{Error, Result};

/// Row-major matrix of uniformly-moded scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::OutOfRange("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: bad.len(),
            });
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix from a generic field grid.
    pub fn from_field_rows<F: Field>(rows: &[Vec<F>]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().cloned().map(Field::into_scalar).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize, mode: ScalarMode) -> Result<Self> {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    Scalar::one(mode)
                } else {
                    Scalar::zero(mode)
                }
            })
            .collect();
        Matrix::new(n, n, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// The common mode of all entries.
    pub fn mode(&self) -> Result<ScalarMode> {
        let first = self.entries[0].mode();
        match self.entries.iter().find(|e| e.mode() != first) {
            Some(e) => Err(Error::MixedModes(first, e.mode())),
            None => Ok(first),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mode = self.mode()?;
        let other_mode = other.mode()?;
        if mode != other_mode {
            return Err(Error::MixedModes(mode, other_mode));
        }
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Scalar::zero(mode);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j))?)?;
                }
                out.push(acc);
            }
        }
        Matrix::new(self.rows, other.cols, out)
    }

    /// Exact entries as a rational grid, or `None` in float mode.
    pub fn to_exact_rows(&self) -> Option<Vec<Vec<BigRational>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|s| s.as_exact().cloned()).collect())
            .collect()
    }

    pub fn to_float_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::to_f64).collect())
            .collect()
    }

    /// Determinant: Bareiss elimination in exact mode, partial-pivot LU in
    /// float mode.
    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        match self.mode()? {
            ScalarMode::Exact => {
                let rows = self.to_exact_rows().expect("mode checked");
                Ok(Scalar::Exact(bareiss_rational(&rows)))
            }
            ScalarMode::Float => Ok(Scalar::Float(lu_det(&self.to_float_rows()))),
        }
    }
}

/// Determinant of generic rows; callers guarantee squareness.
pub fn det_rows<F: Field>(rows: &[Vec<F>]) -> F {
    F::determinant(rows)
}

/// Product of Euclidean row norms, the Hadamard bound on |det|.
pub fn row_norm_product<F: Field>(rows: &[Vec<F>]) -> f64 {
    rows.iter()
        .map(|r| r.iter().map(|x| x.to_f64().powi(2)).sum::<f64>().sqrt())
        .product()
}

/// Fraction-free elimination. Each row is scaled to integers by the lcm of
/// its denominators, the integer determinant is computed with Bareiss'
/// exact-division recurrence, and the scaling is divided back out.
pub(crate) fn bareiss_rational(rows: &[Vec<BigRational>]) -> BigRational {
    let n = rows.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            scale *= &l;
            row.iter()
                .map(|q| q.numer() * (&l / q.denom()))
                .collect()
        })
        .collect();
    let det = bareiss_int(&mut a);
    BigRational::new(det, scale)
}

pub(crate) fn bareiss_int(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

pub(crate) fn lu_det(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let mut det = 1.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .expect("nonempty range");
        if a[p][k] == 0.0 {
            return 0.0;
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k];
        det *= pivot;
        for i in k + 1..n {
            let factor = a[i][k] / pivot;
            if factor != 0.0 {
                for j in k + 1..n {
                    a[i][j] -= factor * a[k][j];
                }
            }
        }
    }
    det
}

/// The scalar `c` with `v_1 ∧ ⋯ ∧ v_n = c · (b_1 ∧ ⋯ ∧ b_n)`, i.e. the
/// determinant of the change-of-coordinates matrix.
pub fn wedge_coeff(vectors: &[Vec<Scalar>], basis: &[Vec<Scalar>]) -> Result<Scalar> {
    let n = basis.len();
    if vectors.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: vectors.len(),
        });
    }
    for v in vectors.iter().chain(basis) {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    let vm = Matrix::from_rows(vectors.to_vec())?;
    let bm = Matrix::from_rows(basis.to_vec())?;
    let db = bm.det()?;
    let singular = match &db {
        Scalar::Exact(q) => q.is_zero(),
        Scalar::Float(x) => x.is_negligible(row_norm_product(&bm.to_float_rows())),
    };
    if singular {
        return Err(Error::SingularBasis);
    }
    vm.det()?.div(&db)
}

/// Rank of a list of rational rows by Gaussian elimination.
pub fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let head = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &head[c];
            for (x, h) in row.iter_mut().zip(&head).skip(c) {
                *x -= &f * h;
            }
        }
        rank += 1;
    }
    rank
}
