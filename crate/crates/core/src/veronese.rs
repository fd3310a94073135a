//! The irreducible representation `PSL_2 → PSL_n` and the Veronese flag
//! curve, both in the monomial basis `b_i = X^{n-i} Y^{i-1}`.

use crate::error::{Error, Result};
use crate::flags::Flag;
use crate::hyperbolic::{axis_data, Mobius, ProjPoint};
use crate::multilinear::{det_rows, ext_binomial, Field, Matrix};

/// Coefficients of `(αX + βY)^s (γX + δY)^t` in the basis
/// `X^{s+t}, X^{s+t-1}Y, …, Y^{s+t}`.
fn binary_form_product<F: Field>(l: (&F, &F), s: usize, m: (&F, &F), t: usize) -> Vec<F> {
    let power = |(a, b): (&F, &F), e: usize| -> Vec<F> {
        (0..=e)
            .map(|k| {
                let mut c = F::from_bigint(&ext_binomial(e as i64, k as i64));
                for _ in 0..e - k {
                    c = c * a.clone();
                }
                for _ in 0..k {
                    c = c * b.clone();
                }
                c
            })
            .collect()
    };
    let (u, v) = (power(l, s), power(m, t));
    let mut out = vec![F::zero(); s + t + 1];
    for (i, ui) in u.iter().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            out[i + j] = out[i + j].clone() + ui.clone() * vj.clone();
        }
    }
    out
}

/// The matrix of `Sym^{n-1}(A)` together with the 2×2 matrix it came from.
#[derive(Debug, Clone)]
pub struct SymPowerMatrix<F> {
    n: usize,
    rows: Vec<Vec<F>>,
    source: Mobius<F>,
}

impl<F: Field> SymPowerMatrix<F> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn source(&self) -> &Mobius<F> {
        &self.source
    }

    pub fn matrix(&self) -> Result<Matrix> {
        Matrix::from_field_rows(&self.rows)
    }

    pub fn det(&self) -> F {
        det_rows(&self.rows)
    }

    /// Product of the underlying matrices.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(F::zero(), |acc, k| {
                            acc + self.rows[i][k].clone() * other.rows[k][j].clone()
                        })
                    })
                    .collect()
            })
            .collect();
        SymPowerMatrix { n, rows, source: self.source.compose(&other.source) }
    }

    /// `log λ_k/λ_{k+1}` for `k = 1..n-1`. The eigenvalues of `ι_n(A)` are
    /// `λ^{n-1}, λ^{n-3}, …, λ^{1-n}` for the top eigenvalue `λ` of `A`, so
    /// every ratio is the translation length of `A`.
    pub fn length_spectrum(&self) -> Result<Vec<f64>> {
        let l = axis_data(&self.source)?.length;
        Ok(vec![l; self.n - 1])
    }
}

/// `Sym^{n-1}(A)`: column `j` holds the coefficients of
/// `(a11 X + a21 Y)^{n-j} (a12 X + a22 Y)^{j-1}`.
pub fn irrep_n<F: Field>(a: &Mobius<F>, n: usize) -> Result<SymPowerMatrix<F>> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("irrep_n needs n >= 2, got {n}")));
    }
    let [[a11, a12], [a21, a22]] = a.entries();
    let cols: Vec<Vec<F>> = (1..=n)
        .map(|j| binary_form_product((a11, a21), n - j, (a12, a22), j - 1))
        .collect();
    let rows = (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect();
    Ok(SymPowerMatrix { n, rows, source: a.clone() })
}

/// The osculating flag of the Veronese curve at `[a:b]`. With
/// `L = aX + bY` and `Z = −bX + aY`, basis vector `d` is `L^{n-d} Z^{d-1}`,
/// so level `d` is the set of forms divisible by `L^{n-d}`.
pub fn veronese_flag<F: Field>(p: &ProjPoint<F>, n: usize) -> Result<Flag<F>> {
    if n < 1 {
        return Err(Error::OutOfRange("veronese_flag needs n >= 1".into()));
    }
    let (a, b) = p.coords();
    let nb = -b.clone();
    let basis = (1..=n)
        .map(|d| binary_form_product((a, b), n - d, (&nb, a), d - 1))
        .collect();
    Flag::new(basis)
}
