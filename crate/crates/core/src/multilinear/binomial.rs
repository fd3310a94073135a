//! Extended binomial coefficients and the binomial determinants that
//! evaluate wedge factors of Veronese flags.
//!
//! Both closed forms below are transcribed literally, including their sign
//! prefactors. Those prefactors do not always agree with the brute-force
//! determinant, so [`ClosedFormCheck`] records magnitude and sign agreement
//! separately instead of normalizing either side.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// `n! / (p! (n-p)!)` for `0 <= p <= n`, and `0` for every other pair of
/// integers (including negative `n`).
pub fn ext_binomial(n: i64, p: i64) -> BigInt {
    if p < 0 || n < 0 || p > n {
        return BigInt::zero();
    }
    let p = p.min(n - p);
    let mut acc = BigInt::one();
    for i in 0..p {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn factorial(m: i64) -> Result<BigInt> {
    if m < 0 {
        return Err(Error::OutOfRange(format!("factorial of negative argument {m}")));
    }
    Ok((1..=m).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)))
}

/// `a! (a+1)! ⋯ (a+len-1)!`
fn factorial_run(a: i64, len: i64) -> Result<BigInt> {
    (0..len).try_fold(BigInt::one(), |acc, i| Ok(acc * factorial(a + i)?))
}

fn sign_from_triangular(m: i64) -> i64 {
    if (m * (m + 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn exact_matrix(size: usize, entry: impl Fn(i64, i64) -> BigInt) -> Result<Matrix> {
    let mut entries = Vec::with_capacity(size * size);
    for i in 0..size as i64 {
        for j in 0..size as i64 {
            entries.push(Scalar::Exact(BigRational::from_integer(entry(i, j))));
        }
    }
    Matrix::new(size, size, entries)
}

fn check_rhombus(n: i64, k: i64, l: i64) -> Result<()> {
    if n < 0 || l < 0 {
        return Err(Error::OutOfRange(format!("rhombus needs n, l >= 0 (n={n}, l={l})")));
    }
    if k < 0 || k > n {
        return Err(Error::OutOfRange(format!("rhombus needs 0 <= k <= n (k={k}, n={n})")));
    }
    Ok(())
}

/// Determinant of the `(l+1)×(l+1)` Pascal rhombus whose (0-indexed) entry
/// at row `i`, column `j` is `binom(n+i+j, k+j)`.
pub fn rhombus_det_bruteforce(n: i64, k: i64, l: i64) -> Result<Scalar> {
    check_rhombus(n, k, l)?;
    exact_matrix((l + 1) as usize, |i, j| ext_binomial(n + i + j, k + j))?.det()
}

/// Closed form for the rhombus determinant:
/// `(-1)^{l(l+1)/2} 1!⋯l! · n!⋯(n+l)! / (k!⋯(k+l)! (n-k)!⋯(n-k+l)!)`.
pub fn rhombus_det_formula(n: i64, k: i64, l: i64) -> Result<Scalar> {
    check_rhombus(n, k, l)?;
    let num = factorial_run(1, l)? * factorial_run(n, l + 1)?;
    let den = factorial_run(k, l + 1)? * factorial_run(n - k, l + 1)?;
    let value = BigRational::new(num, den) * BigRational::from_integer(sign_from_triangular(l).into());
    Ok(Scalar::Exact(value))
}

/// Determinant of the `q×q` band matrix whose (0-indexed) entry at row `i`,
/// column `j` is `binom(p+r, p+i-j)`.
pub fn band_det_bruteforce(p: i64, q: i64, r: i64) -> Result<Scalar> {
    if p < 0 || r < 0 || q < 1 {
        return Err(Error::OutOfRange(format!(
            "band needs p, r >= 0 and q >= 1 (p={p}, q={q}, r={r})"
        )));
    }
    exact_matrix(q as usize, |i, j| ext_binomial(p + r, p + i - j))?.det()
}

/// Closed form for the band determinant with `p + q + r = n`:
/// `(-1)^{(q-1)q/2} (n-q)!⋯(n-1)! 1!⋯(q-1)! / ((n-r-q)!⋯(n-r-1)! r!⋯(r+q-1)!)`.
pub fn band_det_formula(n: i64, p: i64, q: i64, r: i64) -> Result<Scalar> {
    if p + q + r != n {
        return Err(Error::OutOfRange(format!("p+q+r = {} != n = {n}", p + q + r)));
    }
    if p < 0 || r < 0 || q < 1 {
        return Err(Error::OutOfRange(format!(
            "band needs p, r >= 0 and q >= 1 (p={p}, q={q}, r={r})"
        )));
    }
    let num = factorial_run(n - q, q)? * factorial_run(1, q - 1)?;
    let den = factorial_run(n - r - q, q)? * factorial_run(r, q)?;
    let value =
        BigRational::new(num, den) * BigRational::from_integer(sign_from_triangular(q - 1).into());
    Ok(Scalar::Exact(value))
}

/// Comparison of a closed form against its brute-force determinant.
#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormCheck {
    pub params: Vec<i64>,
    pub bruteforce: Scalar,
    pub formula: Scalar,
    pub abs_equal: bool,
    pub sign_equal: bool,
}

impl ClosedFormCheck {
    fn new(params: Vec<i64>, bruteforce: Scalar, formula: Scalar) -> Self {
        let (b, f) = match (&bruteforce, &formula) {
            (Scalar::Exact(b), Scalar::Exact(f)) => (b.clone(), f.clone()),
            _ => unreachable!("binomial determinants are exact"),
        };
        ClosedFormCheck {
            params,
            abs_equal: b.abs() == f.abs(),
            sign_equal: b.signum() == f.signum(),
            bruteforce,
            formula,
        }
    }
}

pub fn compare_rhombus(n: i64, k: i64, l: i64) -> Result<ClosedFormCheck> {
    Ok(ClosedFormCheck::new(
        vec![n, k, l],
        rhombus_det_bruteforce(n, k, l)?,
        rhombus_det_formula(n, k, l)?,
    ))
}

pub fn compare_band(p: i64, q: i64, r: i64) -> Result<ClosedFormCheck> {
    Ok(ClosedFormCheck::new(
        vec![p, q, r],
        band_det_bruteforce(p, q, r)?,
        band_det_formula(p + q + r, p, q, r)?,
    ))
}
