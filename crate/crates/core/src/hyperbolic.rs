//! Boundary geometry of the upper half-plane.
//!
//! Points of `RP^1` are homogeneous pairs `[x0 : x1]` with `∞ = [1:0]` and
//! `x = [x:1]`. Möbius maps are 2×2 matrices taken up to scale. In float
//! mode [`Mobius::normalized`] rescales to `|det| = 1`; exact matrices are
//! left unscaled because the square root is not rational.

use crate::error::{Error, Result};
use crate::multilinear::Field;

#[derive(Debug, Clone)]
pub struct ProjPoint<F> {
    x0: F,
    x1: F,
}

impl<F: Field> ProjPoint<F> {
    pub fn new(x0: F, x1: F) -> Result<Self> {
        if x0.is_zero() && x1.is_zero() {
            return Err(Error::Degenerate("[0:0] is not a point of RP^1".into()));
        }
        Ok(ProjPoint { x0, x1 })
    }

    pub fn infinity() -> Self {
        ProjPoint { x0: F::one(), x1: F::zero() }
    }

    pub fn finite(x: F) -> Self {
        ProjPoint { x0: x, x1: F::one() }
    }

    pub fn coords(&self) -> (&F, &F) {
        (&self.x0, &self.x1)
    }

    pub fn is_infinity(&self) -> bool {
        self.x1.is_negligible(self.norm())
    }

    fn norm(&self) -> f64 {
        self.x0.to_f64().hypot(self.x1.to_f64())
    }

    /// `x0·y1 − x1·y0`.
    pub fn wedge(&self, other: &Self) -> F {
        self.x0.clone() * other.x1.clone() - self.x1.clone() * other.x0.clone()
    }

    fn wedge_checked(&self, other: &Self) -> Option<F> {
        let w = self.wedge(other);
        (!w.is_negligible(self.norm() * other.norm())).then_some(w)
    }

    /// Projective equality by cross-multiplication.
    pub fn proj_eq(&self, other: &Self) -> bool {
        self.wedge(other).is_negligible(self.norm() * other.norm())
    }

    /// Whether `(a, b, c)` are distinct and in clockwise cyclic order, where
    /// increasing real numbers run counterclockwise.
    pub fn is_clockwise(a: &Self, b: &Self, c: &Self) -> bool {
        let s = a.wedge(b).signum_i32() * b.wedge(c).signum_i32() * c.wedge(a).signum_i32();
        s < 0
    }

    /// The affine coordinate, with `∞ ↦ +∞`; sorting by this key lists
    /// points counterclockwise starting just after `∞`.
    pub fn circle_key(&self) -> f64 {
        if self.x1.is_zero() {
            f64::INFINITY
        } else {
            (self.x0.clone() / self.x1.clone()).to_f64()
        }
    }

    /// Representative `[x:1]` or `[1:0]`.
    pub fn normalize(&self) -> Self {
        if self.x1.is_zero() {
            Self::infinity()
        } else {
            Self::finite(self.x0.clone() / self.x1.clone())
        }
    }

    pub fn to_float(&self) -> ProjPoint<f64> {
        ProjPoint { x0: self.x0.to_f64(), x1: self.x1.to_f64() }
    }

    /// Unit representative with a sign fixed by the first nonzero
    /// coordinate; suitable for float comparisons.
    pub fn normalize_float(&self) -> (f64, f64) {
        let (a, b) = (self.x0.to_f64(), self.x1.to_f64());
        let n = a.hypot(b);
        let s = if b > 0.0 || (b == 0.0 && a > 0.0) { n } else { -n };
        (a / s, b / s)
    }
}

/// `z(a,b,c,d) = ((d∧a)(b∧c)) / ((d∧c)(b∧a))`, the homogeneous form of
/// `(d−a)(b−c) / ((d−c)(b−a))`.
pub fn cross_ratio<F: Field>(
    a: &ProjPoint<F>,
    b: &ProjPoint<F>,
    c: &ProjPoint<F>,
    d: &ProjPoint<F>,
) -> Result<F> {
    let dc = d.wedge_checked(c);
    let ba = b.wedge_checked(a);
    match (dc, ba) {
        (Some(dc), Some(ba)) => Ok(d.wedge(a) * b.wedge(c) / (dc * ba)),
        _ => Err(Error::Degenerate("cross ratio with d = c or b = a".into())),
    }
}

/// The point `d` with `z(a, b, c, d) = r`.
pub fn fourth_point<F: Field>(
    a: &ProjPoint<F>,
    b: &ProjPoint<F>,
    c: &ProjPoint<F>,
    r: F,
) -> Result<ProjPoint<F>> {
    let (Some(bc), Some(ba)) = (b.wedge_checked(c), b.wedge_checked(a)) else {
        return Err(Error::Degenerate("fourth point needs b distinct from a and c".into()));
    };
    // d ∧ (k·a − r·c) = 0 with k = (b∧c)/(b∧a).
    let k = bc / ba;
    ProjPoint::new(
        k.clone() * a.x0.clone() - r.clone() * c.x0.clone(),
        k * a.x1.clone() - r * c.x1.clone(),
    )
}

/// Shear `log(−1/z(y, z^r, x, z^l))` between the triangles `(x, y, z^l)` and
/// `(x, y, z^r)` sharing the edge `xy`.
pub fn shear_from_quadruple<F: Field>(
    y: &ProjPoint<F>,
    zr: &ProjPoint<F>,
    x: &ProjPoint<F>,
    zl: &ProjPoint<F>,
) -> Result<f64> {
    let z = cross_ratio(y, zr, x, zl)?;
    if z.signum_i32() >= 0 {
        return Err(Error::Degenerate(format!(
            "cross ratio {} is not negative; z^l and z^r are on the same side",
            z.to_f64()
        )));
    }
    Ok((-1.0 / z.to_f64()).ln())
}

/// A 2×2 matrix up to nonzero scale, acting by `[x0:x1] ↦ M·(x0, x1)^T`.
#[derive(Debug, Clone)]
pub struct Mobius<F> {
    m: [[F; 2]; 2],
}

impl<F: Field> Mobius<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Result<Self> {
        let m = Mobius { m: [[a, b], [c, d]] };
        if m.det().is_negligible(m.norm_sq()) {
            return Err(Error::Degenerate("singular Möbius matrix".into()));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Mobius { m: [[F::one(), F::zero()], [F::zero(), F::one()]] }
    }

    pub fn entries(&self) -> &[[F; 2]; 2] {
        &self.m
    }

    fn norm_sq(&self) -> f64 {
        self.m.iter().flatten().map(|x| x.to_f64().powi(2)).sum()
    }

    pub fn det(&self) -> F {
        let [[a, b], [c, d]] = &self.m;
        a.clone() * d.clone() - b.clone() * c.clone()
    }

    pub fn trace(&self) -> F {
        self.m[0][0].clone() + self.m[1][1].clone()
    }

    pub fn is_orientation_preserving(&self) -> bool {
        self.det().signum_i32() > 0
    }

    pub fn apply(&self, p: &ProjPoint<F>) -> ProjPoint<F> {
        let [[a, b], [c, d]] = &self.m;
        ProjPoint {
            x0: a.clone() * p.x0.clone() + b.clone() * p.x1.clone(),
            x1: c.clone() * p.x0.clone() + d.clone() * p.x1.clone(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let e = |i: usize, j: usize| {
            self.m[i][0].clone() * other.m[0][j].clone() + self.m[i][1].clone() * other.m[1][j].clone()
        };
        Mobius { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn inverse(&self) -> Self {
        let [[a, b], [c, d]] = &self.m;
        let det = self.det();
        Mobius {
            m: [
                [d.clone() / det.clone(), -b.clone() / det.clone()],
                [-c.clone() / det.clone(), a.clone() / det],
            ],
        }
    }

    /// Equality up to a nonzero scalar.
    pub fn proj_eq(&self, other: &Self) -> bool {
        let a: Vec<F> = self.m.iter().flatten().cloned().collect();
        let b: Vec<F> = other.m.iter().flatten().cloned().collect();
        let scale = (self.norm_sq() * other.norm_sq()).sqrt();
        (0..4).all(|i| {
            (i + 1..4).all(|j| {
                (a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone()).is_negligible(scale)
            })
        })
    }

    /// The map sending `a ↦ ∞`, `b ↦ 1`, `c ↦ 0`. It reverses orientation
    /// when `(a, b, c)` is counterclockwise.
    pub fn to_standard(a: &ProjPoint<F>, b: &ProjPoint<F>, c: &ProjPoint<F>) -> Result<Self> {
        if a.proj_eq(b) || b.proj_eq(c) || a.proj_eq(c) {
            return Err(Error::Degenerate("three-point normalization needs distinct points".into()));
        }
        let ba = b.wedge(a);
        let bc = b.wedge(c);
        Mobius::new(
            ba.clone() * c.x1.clone(),
            -(ba * c.x0.clone()),
            bc.clone() * a.x1.clone(),
            -(bc * a.x0.clone()),
        )
    }

    /// The unique map sending `src[i] ↦ dst[i]`.
    pub fn from_three_points(src: [&ProjPoint<F>; 3], dst: [&ProjPoint<F>; 3]) -> Result<Self> {
        let s = Self::to_standard(src[0], src[1], src[2])?;
        let d = Self::to_standard(dst[0], dst[1], dst[2])?;
        Ok(d.inverse().compose(&s))
    }

    pub fn to_float(&self) -> Mobius<f64> {
        let e = |i: usize, j: usize| self.m[i][j].to_f64();
        Mobius { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }
}

impl Mobius<f64> {
    /// Rescaled to `|det| = 1`.
    pub fn normalized(&self) -> Self {
        let s = self.det().abs().sqrt();
        let e = |i: usize, j: usize| self.m[i][j] / s;
        Mobius { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn diagonal(t: f64) -> Self {
        Mobius { m: [[t.exp(), 0.0], [0.0, (-t).exp()]] }
    }
}

/// Fixed points and translation length of a hyperbolic element.
#[derive(Debug, Clone)]
pub struct AxisData {
    pub attracting: ProjPoint<f64>,
    pub repelling: ProjPoint<f64>,
    pub length: f64,
}

/// Threshold beyond `|tr| = 2` for an element to count as hyperbolic.
pub const HYPERBOLIC_TRACE_EPS: f64 = 1e-12;

pub fn axis_data<F: Field>(m: &Mobius<F>) -> Result<AxisData> {
    let m = m.to_float();
    if m.det() <= 0.0 {
        return Err(Error::Degenerate("axis of an orientation-reversing map".into()));
    }
    let m = m.normalized();
    let tr = m.trace();
    if tr.abs() <= 2.0 + HYPERBOLIC_TRACE_EPS {
        return Err(Error::NotHyperbolic { trace: tr });
    }
    let disc = (tr * tr - 4.0).sqrt();
    let (big, small) = if tr > 0.0 {
        ((tr + disc) / 2.0, (tr - disc) / 2.0)
    } else {
        ((tr - disc) / 2.0, (tr + disc) / 2.0)
    };
    let [[a, b], [c, d]] = m.m;
    let eigvec = |lambda: f64| -> Result<ProjPoint<f64>> {
        // Rows of M − λI are (a−λ, b) and (c, d−λ); use the larger one.
        let r1 = (a - lambda, b);
        let r2 = (c, d - lambda);
        let r = if r1.0.hypot(r1.1) >= r2.0.hypot(r2.1) { r1 } else { r2 };
        ProjPoint::new(-r.1, r.0)
    };
    Ok(AxisData {
        attracting: eigvec(big)?,
        repelling: eigvec(small)?,
        length: 2.0 * (tr.abs() / 2.0).acosh(),
    })
}

/// The map conjugate to `diag(e^t, e^{-t})` under the normalization sending
/// `attracting ↦ ∞` and `repelling ↦ 0`. Its translation length is `2|t|`.
pub fn twist_map(attracting: &ProjPoint<f64>, repelling: &ProjPoint<f64>, t: f64) -> Result<Mobius<f64>> {
    if attracting.proj_eq(repelling) {
        return Err(Error::Degenerate("twist axis endpoints coincide".into()));
    }
    // Columns of N^{-1} are the two fixed points.
    let n_inv = Mobius::new(attracting.x0, repelling.x0, attracting.x1, repelling.x1)?;
    Ok(n_inv.compose(&Mobius::diagonal(t)).compose(&n_inv.inverse()).normalized())
}
