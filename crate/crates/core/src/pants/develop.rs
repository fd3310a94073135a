//! Developing a sheared pair of pants into the upper half-plane.

use crate::error::{Error, Result};
use crate::hyperbolic::{axis_data, fourth_point, shear_from_quadruple, Mobius, ProjPoint};

use super::lamination::{end_sum, shear_violations, FanStep, PantsLamination, PantsShearing};

type Point = ProjPoint<f64>;

/// A lift of one of the two ideal triangles; `pos[k]` is the vertex at
/// corner `k`.
#[derive(Debug, Clone)]
pub struct Lift {
    pub triangle: usize,
    pub pos: [Point; 3],
}

/// The quadruple of a lifted leaf: `y` is its repelling end, `x` its
/// attracting end, and `zl`, `zr` the far vertices of the triangles on its
/// left and right.
#[derive(Debug, Clone)]
pub struct LeafQuadruple {
    pub x: Point,
    pub y: Point,
    pub zl: Point,
    pub zr: Point,
}

impl LeafQuadruple {
    /// `log(−1/z(y, z^r, x, z^l))`.
    pub fn shear(&self) -> Result<f64> {
        shear_from_quadruple(&self.y, &self.zr, &self.x, &self.zl)
    }
}

/// The walk around one boundary and its deck transformation.
#[derive(Debug, Clone)]
pub struct BoundaryDevelopment {
    /// Fan steps paired with the lift sitting at that step.
    pub fan: Vec<(FanStep, Lift)>,
    /// Common vertex of the fan; a fixed point of `holonomy`.
    pub vertex: Point,
    /// The other fixed point of `holonomy`.
    pub other: Point,
    /// Maps the starting lift to the lift reached after one turn.
    pub holonomy: Mobius<f64>,
    pub length: f64,
    pub end_sum: f64,
}

#[derive(Debug, Clone)]
pub struct DevelopedPants {
    pub lamination: PantsLamination,
    pub shears: PantsShearing,
    /// One lift per triangle; `lifts[0]` is the base triangle.
    pub lifts: [Lift; 2],
    pub boundaries: [BoundaryDevelopment; 3],
    pub leaves: [LeafQuadruple; 3],
}

/// Crosses side `s` of `lift`. The new triangle's far vertex `d` satisfies
/// `z(b, c, a, d) = −e^{−σ}` with `a → b` the crossed side and `c` the old
/// far vertex.
fn cross(lam: &PantsLamination, shears: &PantsShearing, lift: &Lift, s: usize) -> Result<Lift> {
    let (t2, s2, leaf) = lam.gluing(lift.triangle, s);
    let a = &lift.pos[s];
    let b = &lift.pos[(s + 1) % 3];
    let c = &lift.pos[(s + 2) % 3];
    let d = fourth_point(b, c, a, -(-shears[leaf]).exp())?;
    let mut pos = [a.clone(), a.clone(), a.clone()];
    pos[(s2 + 1) % 3] = a.clone();
    pos[s2] = b.clone();
    pos[(s2 + 2) % 3] = d;
    Ok(Lift { triangle: t2, pos })
}

/// Develops with the base triangle `T0` at `(0, 1, ∞)`.
pub fn develop_pants(lam: &PantsLamination, shears: &PantsShearing) -> Result<DevelopedPants> {
    develop_pants_from(
        lam,
        shears,
        [ProjPoint::finite(0.0), ProjPoint::finite(1.0), ProjPoint::infinity()],
    )
}

/// Develops with the base triangle `T0` at the given counterclockwise triple.
pub fn develop_pants_from(
    lam: &PantsLamination,
    shears: &PantsShearing,
    base: [Point; 3],
) -> Result<DevelopedPants> {
    let v = shear_violations(lam, shears);
    if !v.is_empty() {
        return Err(Error::InvalidShears(v.join("; ")));
    }
    if ProjPoint::is_clockwise(&base[0], &base[1], &base[2]) {
        return Err(Error::Degenerate("base triangle must be counterclockwise".into()));
    }
    let t0 = Lift { triangle: 0, pos: base };
    let side_to_t1 = (0..3)
        .find(|&s| lam.gluing(0, s).0 == 1)
        .expect("T0 borders T1");
    let t1 = cross(lam, shears, &t0, side_to_t1)?;
    let lifts = [t0, t1];

    let develop_boundary = |b: usize| -> Result<BoundaryDevelopment> {
        let steps = lam.fan(b);
        let start = lifts[steps[0].triangle].clone();
        let mut cur = start.clone();
        let mut fan = Vec::with_capacity(steps.len());
        for step in steps {
            debug_assert_eq!(cur.triangle, step.triangle);
            let next = cross(lam, shears, &cur, step.corner)?;
            fan.push((step, cur));
            cur = next;
        }
        let holonomy = Mobius::from_three_points(
            [&start.pos[0], &start.pos[1], &start.pos[2]],
            [&cur.pos[0], &cur.pos[1], &cur.pos[2]],
        )?
        .normalized();
        let axis = axis_data(&holonomy)?;
        let vertex = start.pos[fan[0].0.corner].clone();
        let other = if axis.attracting.proj_eq(&vertex) {
            axis.repelling
        } else {
            axis.attracting
        };
        Ok(BoundaryDevelopment {
            fan,
            vertex,
            other,
            holonomy,
            length: axis.length,
            end_sum: end_sum(lam, shears, b),
        })
    };
    let boundaries = [develop_boundary(0)?, develop_boundary(1)?, develop_boundary(2)?];

    let leaf_quadruple = |leaf: usize| -> Result<LeafQuadruple> {
        let (t, s) = lam.reference_side(leaf);
        let l = &lifts[t];
        let n = cross(lam, shears, l, s)?;
        let a = l.pos[s].clone();
        let b = l.pos[(s + 1) % 3].clone();
        let c = l.pos[(s + 2) % 3].clone();
        let d = n.pos[(lam.gluing(t, s).1 + 2) % 3].clone();
        // The lift `l` lies to the left of its side a → b.
        Ok(if lam.leaf_orientations()[leaf] > 0 {
            LeafQuadruple { y: a, x: b, zl: c, zr: d }
        } else {
            LeafQuadruple { y: b, x: a, zl: d, zr: c }
        })
    };
    let leaves = [leaf_quadruple(0)?, leaf_quadruple(1)?, leaf_quadruple(2)?];

    Ok(DevelopedPants {
        lamination: lam.clone(),
        shears: *shears,
        lifts,
        boundaries,
        leaves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::cross_ratio;
    use crate::pants::lamination::shears_for_lengths as shears_for;

    fn lams() -> Vec<PantsLamination> {
        let mut out = Vec::new();
        for signs in [[1, 1, 1], [-1, -1, -1], [1, -1, 1], [-1, 1, 1]] {
            out.push(PantsLamination::type_i(signs));
            for i in 0..3 {
                out.push(PantsLamination::type_ii(i, signs).unwrap());
            }
        }
        out
    }

    #[test]
    fn symmetric_type_i_lengths() {
        let lam = PantsLamination::type_i([1; 3]);
        let d = develop_pants(&lam, &[0.7; 3]).unwrap();
        for b in &d.boundaries {
            assert!((b.length - 1.4).abs() < 1e-12);
        }
    }

    #[test]
    fn lengths_and_fixed_points_match_shear_sums() {
        for lam in lams() {
            let s = shears_for(&lam, [1.1, 0.6, 2.3]);
            let d = develop_pants(&lam, &s).unwrap();
            for (b, bd) in d.boundaries.iter().enumerate() {
                assert!((bd.length - bd.end_sum.abs()).abs() < 1e-9, "{lam:?} {b}");
                let ax = axis_data(&bd.holonomy).unwrap();
                let vertex_repels = ax.repelling.proj_eq(&bd.vertex);
                assert!(vertex_repels || ax.attracting.proj_eq(&bd.vertex));
                assert_eq!(vertex_repels, bd.end_sum > 0.0);
            }
        }
    }

    #[test]
    fn shears_round_trip() {
        for lam in lams() {
            let s = shears_for(&lam, [0.4, 1.7, 0.9]);
            let d = develop_pants(&lam, &s).unwrap();
            for (e, q) in d.leaves.iter().enumerate() {
                assert!((q.shear().unwrap() - s[e]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn leaf_orientation_only_relabels() {
        let lam = PantsLamination::type_i([1; 3]);
        let s = [0.3, 0.8, 1.1];
        let a = develop_pants(&lam, &s).unwrap();
        let flipped = lam.clone().with_leaf_orientations([-1, 1, -1]).unwrap();
        let b = develop_pants(&flipped, &s).unwrap();
        for e in 0..3 {
            let (p, q) = (&a.leaves[e], &b.leaves[e]);
            if e == 1 {
                assert!(p.x.proj_eq(&q.x) && p.zl.proj_eq(&q.zl));
            } else {
                assert!(p.x.proj_eq(&q.y) && p.y.proj_eq(&q.x));
                assert!(p.zl.proj_eq(&q.zr) && p.zr.proj_eq(&q.zl));
            }
            assert!((p.shear().unwrap() - q.shear().unwrap()).abs() < 1e-12);
        }
        for (ba, bb) in a.boundaries.iter().zip(&b.boundaries) {
            assert!(ba.holonomy.proj_eq(&bb.holonomy));
        }
    }

    #[test]
    fn base_chart_change_preserves_cross_ratios() {
        let lam = PantsLamination::type_ii(2, [1, -1, 1]).unwrap();
        let s = shears_for(&lam, [1.0, 0.5, 0.8]);
        let a = develop_pants(&lam, &s).unwrap();
        let base = [ProjPoint::finite(-3.0), ProjPoint::finite(0.25), ProjPoint::finite(7.0)];
        let b = develop_pants_from(&lam, &s, base).unwrap();
        for (p, q) in a.leaves.iter().zip(&b.leaves) {
            let za = cross_ratio(&p.x, &p.y, &p.zl, &p.zr).unwrap();
            let zb = cross_ratio(&q.x, &q.y, &q.zl, &q.zr).unwrap();
            assert!((za - zb).abs() < 1e-9 * za.abs().max(1.0));
        }
        for (p, q) in a.boundaries.iter().zip(&b.boundaries) {
            assert!((p.length - q.length).abs() < 1e-9);
        }
    }

    #[test]
    fn invalid_shears_rejected() {
        let lam = PantsLamination::type_i([1; 3]);
        assert!(matches!(develop_pants(&lam, &[1.0, -2.0, 1.0]), Err(Error::InvalidShears(_))));
    }
}
