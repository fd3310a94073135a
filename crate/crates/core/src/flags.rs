//! Complete flags in `R^n` and their projective invariants.
//!
//! A flag is stored as an ordered basis `(v_1, …, v_n)`; its level `d` is
//! `span(v_1, …, v_d)`. A wedge factor such as `e^a ∧ f^b ∧ g^c` (with
//! `a + b + c = n`) is the determinant of the matrix whose rows are the first
//! `a` basis vectors of `E`, then the first `b` of `F`, then the first `c` of
//! `G`. Blocks with exponent zero contribute no rows. The identification
//! `∧^n R^n ≅ R` is the standard-basis determinant; every ratio below has the
//! same number of factors of each flag upstairs and downstairs, so neither
//! that choice nor the choice of basis inside each level matters.

use crate::error::{Error, Result};
use crate::multilinear::{det_rows, row_norm_product, Field};

#[derive(Debug, Clone, PartialEq)]
pub struct Flag<F> {
    basis: Vec<Vec<F>>,
}

impl<F: Field> Flag<F> {
    /// Builds a flag from `n` linearly independent vectors in `R^n`.
    pub fn new(basis: Vec<Vec<F>>) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::OutOfRange("flag dimension must be positive".into()));
        }
        if let Some(v) = basis.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        let det = det_rows(&basis);
        if det.is_negligible(row_norm_product(&basis)) {
            return Err(Error::SingularBasis);
        }
        Ok(Flag { basis })
    }

    /// The coordinate flag `span(e_1) ⊂ span(e_1, e_2) ⊂ ⋯`.
    pub fn standard(n: usize) -> Self {
        Flag {
            basis: (0..n)
                .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
                .collect(),
        }
    }

    /// The opposite coordinate flag `span(e_n) ⊂ span(e_n, e_{n-1}) ⊂ ⋯`.
    pub fn reversed_standard(n: usize) -> Self {
        Flag {
            basis: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if j == n - 1 - i { F::one() } else { F::zero() })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    /// Basis of level `d`.
    pub fn level(&self, d: usize) -> &[Vec<F>] {
        &self.basis[..d]
    }

    /// Image of the flag under the linear map with matrix `a` (acting on
    /// column vectors).
    pub fn transform(&self, a: &[Vec<F>]) -> Self {
        let n = self.dim();
        let basis = self
            .basis
            .iter()
            .map(|v| {
                (0..n)
                    .map(|i| {
                        (0..n).fold(F::zero(), |acc, k| acc + a[i][k].clone() * v[k].clone())
                    })
                    .collect()
            })
            .collect();
        Flag { basis }
    }

    /// Multiplies basis vector `d` (0-indexed) by `c`. Levels are unchanged.
    pub fn rescale(&self, d: usize, c: F) -> Self {
        let mut basis = self.basis.clone();
        for x in basis[d].iter_mut() {
            *x = x.clone() * c.clone();
        }
        Flag { basis }
    }
}

/// A wedge factor `F_1^{k_1} ∧ ⋯ ∧ F_m^{k_m}` with `Σ k_i = n`, together with
/// the Hadamard scale used for float zero tests.
fn wedge<F: Field>(blocks: &[(&Flag<F>, usize)]) -> (F, f64) {
    let rows: Vec<Vec<F>> = blocks
        .iter()
        .flat_map(|(flag, k)| flag.level(*k).iter().cloned())
        .collect();
    (det_rows(&rows), row_norm_product(&rows))
}

fn check_dims<F: Field>(flags: &[&Flag<F>]) -> Result<usize> {
    let n = flags[0].dim();
    match flags.iter().find(|f| f.dim() != n) {
        Some(f) => Err(Error::DimensionMismatch {
            expected: n,
            found: f.dim(),
        }),
        None => Ok(n),
    }
}

/// All `k`-tuples of nonnegative integers summing to `n`.
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return vec![vec![n]];
    }
    (0..=n)
        .flat_map(|first| {
            compositions(n - first, k - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Whether every choice of levels with dimensions summing to `n` is in
/// direct sum, i.e. every wedge of leading blocks is nonzero.
pub fn is_generic<F: Field>(flags: &[Flag<F>]) -> Result<bool> {
    if flags.is_empty() {
        return Ok(true);
    }
    let refs: Vec<&Flag<F>> = flags.iter().collect();
    let n = check_dims(&refs)?;
    Ok(compositions(n, flags.len()).iter().all(|dims| {
        let blocks: Vec<(&Flag<F>, usize)> = refs.iter().copied().zip(dims.iter().copied()).collect();
        let (w, scale) = wedge(&blocks);
        !w.is_negligible(scale)
    }))
}

fn nonzero_factor<F: Field>(blocks: &[(&Flag<F>, usize)], what: &str) -> Result<F> {
    let (w, scale) = wedge(blocks);
    if w.is_negligible(scale) {
        let dims: Vec<usize> = blocks.iter().map(|b| b.1).collect();
        return Err(Error::NonGeneric(format!("{what} factor {dims:?} vanishes")));
    }
    Ok(w)
}

/// The `(p,q,r)` triple ratio
///
/// ```text
///   e^{p+1}∧f^q∧g^{r-1} · e^p∧f^{q-1}∧g^{r+1} · e^{p-1}∧f^{q+1}∧g^r
///   ----------------------------------------------------------------
///   e^{p-1}∧f^q∧g^{r+1} · e^p∧f^{q+1}∧g^{r-1} · e^{p+1}∧f^{q-1}∧g^r
/// ```
pub fn triple_ratio<F: Field>(
    e: &Flag<F>,
    f: &Flag<F>,
    g: &Flag<F>,
    p: usize,
    q: usize,
    r: usize,
) -> Result<F> {
    let n = check_dims(&[e, f, g])?;
    if p == 0 || q == 0 || r == 0 || p + q + r != n {
        return Err(Error::OutOfRange(format!(
            "triple ratio needs p,q,r >= 1 with p+q+r = {n}, got ({p},{q},{r})"
        )));
    }
    let factor = |a: usize, b: usize, c: usize| nonzero_factor(&[(e, a), (f, b), (g, c)], "triple ratio");
    let num = factor(p + 1, q, r - 1)? * factor(p, q - 1, r + 1)? * factor(p - 1, q + 1, r)?;
    let den = factor(p - 1, q, r + 1)? * factor(p, q + 1, r - 1)? * factor(p + 1, q - 1, r)?;
    Ok(num / den)
}

/// The `p`-th double ratio
///
/// ```text
///        e^p∧f^{n-p-1}∧g^1 · e^{p-1}∧f^{n-p}∧g'^1
///   −  --------------------------------------------
///        e^p∧f^{n-p-1}∧g'^1 · e^{p-1}∧f^{n-p}∧g^1
/// ```
pub fn double_ratio<F: Field>(
    e: &Flag<F>,
    f: &Flag<F>,
    g: &Flag<F>,
    gp: &Flag<F>,
    p: usize,
) -> Result<F> {
    let n = check_dims(&[e, f, g, gp])?;
    if p == 0 || p >= n {
        return Err(Error::OutOfRange(format!("double ratio index {p} not in 1..{n}")));
    }
    let factor = |a: usize, b: usize, last: &Flag<F>| {
        nonzero_factor(&[(e, a), (f, b), (last, 1)], "double ratio")
    };
    let num = factor(p, n - p - 1, g)? * factor(p - 1, n - p, gp)?;
    let den = factor(p, n - p - 1, gp)? * factor(p - 1, n - p, g)?;
    Ok(-(num / den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_flag, random_unimodular, rng_from_seed};
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    type Q = BigRational;

    /// Determinant by cofactor expansion; the oracle for wedge factors.
    fn cofactor_det(rows: &[Vec<Q>]) -> Q {
        let n = rows.len();
        if n == 0 {
            return Q::one();
        }
        let mut acc = Q::zero();
        for j in 0..n {
            if rows[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Q>> = rows[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = rows[0][j].clone() * cofactor_det(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    fn oracle_factor(blocks: &[(&Flag<Q>, usize)]) -> Q {
        let rows: Vec<Vec<Q>> = blocks
            .iter()
            .flat_map(|(f, k)| f.basis()[..*k].to_vec())
            .collect();
        cofactor_det(&rows)
    }

    fn oracle_triple(e: &Flag<Q>, f: &Flag<Q>, g: &Flag<Q>, p: usize, q: usize, r: usize) -> Q {
        let t = |a, b, c| oracle_factor(&[(e, a), (f, b), (g, c)]);
        (t(p + 1, q, r - 1) * t(p, q - 1, r + 1) * t(p - 1, q + 1, r))
            / (t(p - 1, q, r + 1) * t(p, q + 1, r - 1) * t(p + 1, q - 1, r))
    }

    fn oracle_double(e: &Flag<Q>, f: &Flag<Q>, g: &Flag<Q>, gp: &Flag<Q>, p: usize) -> Q {
        let n = e.dim();
        let t = |a, b, last: &Flag<Q>| oracle_factor(&[(e, a), (f, b), (last, 1)]);
        -(t(p, n - p - 1, g) * t(p - 1, n - p, gp)) / (t(p, n - p - 1, gp) * t(p - 1, n - p, g))
    }

    fn generic_flags(seed: u64, n: usize, k: usize) -> Vec<Flag<Q>> {
        let mut rng = rng_from_seed(seed);
        loop {
            let flags: Vec<Flag<Q>> = (0..k).map(|_| random_flag(&mut rng, n)).collect();
            if is_generic(&flags).unwrap() {
                return flags;
            }
        }
    }

    fn triples(n: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for p in 1..n {
            for q in 1..n - p {
                out.push((p, q, n - p - q));
            }
        }
        out
    }

    #[test]
    fn genericity_of_coordinate_flags() {
        let s = Flag::<Q>::standard(3);
        let r = Flag::<Q>::reversed_standard(3);
        assert!(is_generic(&[s.clone(), r]).unwrap());
        assert!(!is_generic(&[s.clone(), s]).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Flag::<Q>::standard(3);
        let b = Flag::<Q>::standard(4);
        assert!(matches!(is_generic(&[a.clone(), b.clone()]), Err(Error::DimensionMismatch { .. })));
        assert!(triple_ratio(&a, &a, &b, 1, 1, 1).is_err());
    }

    #[test]
    fn singular_basis_rejected() {
        let v = vec![Q::one(), Q::zero()];
        assert!(matches!(Flag::new(vec![v.clone(), v]), Err(Error::SingularBasis)));
    }

    #[test]
    fn bad_indices() {
        let f = generic_flags(1, 4, 3);
        assert!(triple_ratio(&f[0], &f[1], &f[2], 1, 1, 1).is_err());
        assert!(triple_ratio(&f[0], &f[1], &f[2], 0, 2, 2).is_err());
        let g = generic_flags(2, 3, 4);
        assert!(double_ratio(&g[0], &g[1], &g[2], &g[3], 0).is_err());
        assert!(double_ratio(&g[0], &g[1], &g[2], &g[3], 3).is_err());
    }

    #[test]
    fn non_generic_triple_ratio_errors() {
        let s = Flag::<Q>::standard(3);
        let r = Flag::<Q>::reversed_standard(3);
        assert!(matches!(triple_ratio(&s, &s, &r, 1, 1, 1), Err(Error::NonGeneric(_))));
    }

    #[test]
    fn ratios_match_minor_expansion_oracle() {
        for seed in 0..10 {
            let f = generic_flags(seed, 4, 3);
            for (p, q, r) in triples(4) {
                assert_eq!(
                    triple_ratio(&f[0], &f[1], &f[2], p, q, r).unwrap(),
                    oracle_triple(&f[0], &f[1], &f[2], p, q, r)
                );
            }
            let g = generic_flags(100 + seed, 3, 4);
            for p in 1..3 {
                assert_eq!(
                    double_ratio(&g[0], &g[1], &g[2], &g[3], p).unwrap(),
                    oracle_double(&g[0], &g[1], &g[2], &g[3], p)
                );
            }
        }
    }

    #[test]
    fn permutation_law() {
        let mut count = 0;
        for n in 3..=5 {
            for seed in 0..40 {
                let f = generic_flags(1000 * n as u64 + seed, n, 3);
                let (e, ff, g) = (&f[0], &f[1], &f[2]);
                for (p, q, r) in triples(n) {
                    let t = triple_ratio(e, ff, g, p, q, r).unwrap();
                    assert_eq!(t, triple_ratio(ff, g, e, q, r, p).unwrap());
                    assert_eq!(t, triple_ratio(ff, e, g, q, p, r).unwrap().recip());
                }
                count += 1;
            }
        }
        assert!(count >= 100);
    }

    #[test]
    fn invariance_under_unimodular_maps() {
        let mut rng = rng_from_seed(77);
        for n in 3..=5 {
            for seed in 0..5 {
                let f = generic_flags(50 + seed, n, 4);
                let a = random_unimodular(&mut rng, n);
                let g: Vec<Flag<Q>> = f.iter().map(|x| x.transform(&a)).collect();
                for (p, q, r) in triples(n) {
                    assert_eq!(
                        triple_ratio(&f[0], &f[1], &f[2], p, q, r).unwrap(),
                        triple_ratio(&g[0], &g[1], &g[2], p, q, r).unwrap()
                    );
                }
                for p in 1..n {
                    assert_eq!(
                        double_ratio(&f[0], &f[1], &f[2], &f[3], p).unwrap(),
                        double_ratio(&g[0], &g[1], &g[2], &g[3], p).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn basis_rescaling_invariance() {
        let f = generic_flags(9, 4, 4);
        let c = Q::new(7.into(), (-3).into());
        for which in 0..4 {
            for d in 0..4 {
                let mut g = f.clone();
                g[which] = g[which].rescale(d, c.clone());
                for (p, q, r) in triples(4) {
                    assert_eq!(
                        triple_ratio(&f[0], &f[1], &f[2], p, q, r).unwrap(),
                        triple_ratio(&g[0], &g[1], &g[2], p, q, r).unwrap()
                    );
                }
                for p in 1..4 {
                    assert_eq!(
                        double_ratio(&f[0], &f[1], &f[2], &f[3], p).unwrap(),
                        double_ratio(&g[0], &g[1], &g[2], &g[3], p).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn float_mode_agrees_with_exact() {
        use crate::multilinear::Field as _;
        for seed in 0..10 {
            let f = generic_flags(300 + seed, 4, 4);
            let fl: Vec<Flag<f64>> = f
                .iter()
                .map(|x| {
                    Flag::new(x.basis().iter().map(|v| v.iter().map(|q| q.to_f64()).collect()).collect())
                        .unwrap()
                })
                .collect();
            for (p, q, r) in triples(4) {
                let ex = triple_ratio(&f[0], &f[1], &f[2], p, q, r).unwrap().to_f64();
                let fv = triple_ratio(&fl[0], &fl[1], &fl[2], p, q, r).unwrap();
                assert!(((fv - ex) / ex).abs() < 1e-9);
            }
            for p in 1..4 {
                let ex = double_ratio(&f[0], &f[1], &f[2], &f[3], p).unwrap().to_f64();
                let fv = double_ratio(&fl[0], &fl[1], &fl[2], &fl[3], p).unwrap();
                assert!(((fv - ex) / ex).abs() < 1e-9);
            }
        }
    }
}
