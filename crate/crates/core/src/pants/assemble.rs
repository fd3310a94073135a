//! Gluing developed pants along the decomposing curves.
//!
//! Each curve gets its own chart in which its lift runs from `x = 0`
//! (repelling) to `y = ∞` (attracting). The pants on the left of the curve
//! is placed with its short-arc vertex `z^l` at `−1`, the pants on the right
//! with `z^r` at `+1`, and a twist `t` then moves the left side by
//! `diag(e^t, e^{−t})`. The gluing invariant is therefore `2t` plus the
//! untwisted value, which is `0`.

use crate::error::{Error, Result};
use crate::hyperbolic::{cross_ratio, Mobius, ProjPoint};

use super::develop::{develop_pants, DevelopedPants};
use super::lamination::PantsShearing;
use super::surface::{SurfaceSpec, SurfaceTopology};

type Point = ProjPoint<f64>;

/// Relative tolerance for matching boundary lengths across a curve.
pub const LENGTH_RTOL: f64 = 1e-9;

/// One side of a glued curve.
#[derive(Debug, Clone)]
pub struct CurveSide {
    pub pants: usize,
    pub boundary: usize,
    /// Maps the pants chart to the curve chart (before twisting).
    pub chart: Mobius<f64>,
    /// Short-arc vertex in the pants chart.
    pub z: Point,
    /// Whether the pants' fan vertex lands on `y = ∞`.
    pub vertex_at_y: bool,
}

#[derive(Debug, Clone)]
pub struct CurveGluing {
    pub id: String,
    pub left: CurveSide,
    pub right: CurveSide,
    pub twist: f64,
    pub length: f64,
}

/// The quadruple `(x, y, z^l, z^r)` of a lifted curve in its chart.
#[derive(Debug, Clone)]
pub struct GluingQuadruple {
    pub x: Point,
    pub y: Point,
    pub zl: Point,
    pub zr: Point,
}

impl GluingQuadruple {
    /// `z(y, z^r, x, z^l)`.
    pub fn cross_ratio(&self) -> Result<f64> {
        cross_ratio(&self.y, &self.zr, &self.x, &self.zl)
    }

    /// `log(−1/z(y, z^r, x, z^l))`.
    pub fn invariant(&self) -> Result<f64> {
        crate::hyperbolic::shear_from_quadruple(&self.y, &self.zr, &self.x, &self.zl)
    }
}

impl CurveGluing {
    /// Pants chart of the left side to the curve chart, twist included.
    pub fn left_map(&self) -> Mobius<f64> {
        Mobius::diagonal(self.twist).compose(&self.left.chart)
    }

    pub fn right_map(&self) -> Mobius<f64> {
        self.right.chart.clone()
    }

    pub fn quadruple(&self) -> GluingQuadruple {
        GluingQuadruple {
            x: ProjPoint::finite(0.0),
            y: ProjPoint::infinity(),
            zl: self.left_map().apply(&self.left.z),
            zr: self.right_map().apply(&self.right.z),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DevelopedSurface {
    pub topology: SurfaceTopology,
    pub pants: Vec<DevelopedPants>,
    pub curves: Vec<CurveGluing>,
}

impl DevelopedSurface {
    pub fn curve(&self, id: &str) -> Result<&CurveGluing> {
        Ok(&self.curves[self.topology.curve_index(id)?])
    }

    /// Deck transformation of a curve in its chart, read off the right side.
    pub fn curve_holonomy(&self, ci: usize) -> Mobius<f64> {
        let c = &self.curves[ci];
        let g = &self.pants[c.right.pants].boundaries[c.right.boundary].holonomy;
        c.right.chart.compose(g).compose(&c.right.chart.inverse()).normalized()
    }

    /// Deck transformation of a curve read off the left side.
    pub fn curve_holonomy_left(&self, ci: usize) -> Mobius<f64> {
        let c = &self.curves[ci];
        let m = c.left_map();
        let g = &self.pants[c.left.pants].boundaries[c.left.boundary].holonomy;
        m.compose(g).compose(&m.inverse()).normalized()
    }

    pub fn shears(&self) -> Vec<PantsShearing> {
        self.pants.iter().map(|p| p.shears).collect()
    }

    pub fn twists(&self) -> Vec<f64> {
        self.curves.iter().map(|c| c.twist).collect()
    }
}

/// Places one side of a curve: the fan vertex and the other fixed point go to
/// `{0, ∞}` and the short-arc vertex to `target`, by an orientation
/// preserving map.
fn place_side(
    dp: &DevelopedPants,
    pants: usize,
    boundary: usize,
    triangle: usize,
    target: f64,
) -> Result<CurveSide> {
    let bd = &dp.boundaries[boundary];
    let (v, w) = (&bd.vertex, &bd.other);
    let (step, lift) = bd
        .fan
        .iter()
        .find(|(step, _)| step.triangle == triangle)
        .ok_or_else(|| {
            Error::Schema(format!("triangle T{triangle} does not reach boundary {}", boundary + 1))
        })?;
    let corner = step.corner;
    let u1 = &lift.pos[(corner + 1) % 3];
    let u2 = &lift.pos[(corner + 2) % 3];
    // The short-arc vertex is the far vertex nearer to the fan vertex: the
    // end, other than v, of the side through v that faces the curve.
    let probe = Mobius::to_standard(w, u1, v)?;
    let z = if probe.apply(u2).circle_key().abs() > 1.0 { u1 } else { u2 };
    let zero = ProjPoint::finite(0.0);
    let inf = ProjPoint::infinity();
    let t = ProjPoint::finite(target);
    let at_x = Mobius::from_three_points([v, w, z], [&zero, &inf, &t])?;
    let (chart, vertex_at_y) = if at_x.is_orientation_preserving() {
        (at_x, false)
    } else {
        (Mobius::from_three_points([w, v, z], [&zero, &inf, &t])?, true)
    };
    Ok(CurveSide { pants, boundary, chart: chart.normalized(), z: z.clone(), vertex_at_y })
}

/// Develops every pants and glues them with the given twists.
pub fn assemble_surface(
    topology: &SurfaceTopology,
    shears: &[PantsShearing],
    twists: &[f64],
) -> Result<DevelopedSurface> {
    if shears.len() != topology.pants.len() {
        return Err(Error::DimensionMismatch { expected: topology.pants.len(), found: shears.len() });
    }
    if twists.len() != topology.curves.len() {
        return Err(Error::DimensionMismatch { expected: topology.curves.len(), found: twists.len() });
    }
    let pants = topology
        .pants
        .iter()
        .zip(shears)
        .map(|(p, s)| {
            develop_pants(&p.lamination, s).map_err(|e| match e {
                Error::InvalidShears(m) => Error::InvalidShears(format!("pants {}: {m}", p.id)),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let curves = topology
        .curves
        .iter()
        .zip(twists)
        .map(|(c, &twist)| {
            let [(lp, lb), (rp, rb)] = c.ends;
            let left_len = pants[lp].boundaries[lb].length;
            let right_len = pants[rp].boundaries[rb].length;
            if (left_len - right_len).abs() > LENGTH_RTOL * left_len.max(right_len) {
                return Err(Error::LengthMismatch { curve: c.id.clone(), left: left_len, right: right_len });
            }
            Ok(CurveGluing {
                id: c.id.clone(),
                left: place_side(&pants[lp], lp, lb, c.short_arc[0], -1.0)?,
                right: place_side(&pants[rp], rp, rb, c.short_arc[1], 1.0)?,
                twist,
                length: 0.5 * (left_len + right_len),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DevelopedSurface { topology: topology.clone(), pants, curves })
}

/// Assembles a surface from its JSON description, which must carry shears.
pub fn assemble_from_spec(spec: &SurfaceSpec) -> Result<DevelopedSurface> {
    let topology = spec.topology()?;
    let shears = topology.shears_from_map(&spec.shears)?;
    let twists = topology.curve_values(&spec.twists)?;
    assemble_surface(&topology, &shears, &twists)
}

/// The same surface with the twist along `curve` increased by `t`.
pub fn twist_deform(ds: &DevelopedSurface, curve: &str, t: f64) -> Result<DevelopedSurface> {
    let ci = ds.topology.curve_index(curve)?;
    let mut out = ds.clone();
    out.curves[ci].twist += t;
    Ok(out)
}

/// The twist increment after which the gluing invariant of `curve` equals
/// `target_w`, i.e. `z(y, z^r, x, z^l) = −e^{−target_w}`.
///
/// In the curve chart a twist by `t` sends `z^l` to `e^{2t} z^l`, and
/// `z(∞, z^r, 0, z^l) = z^r / z^l`, so `e^{2t} = z^r / (z^l r)`.
pub fn solve_twist(ds: &DevelopedSurface, curve: &str, target_w: f64) -> Result<f64> {
    let q = ds.curve(curve)?.quadruple();
    let zl = q.zl.circle_key();
    let zr = q.zr.circle_key();
    if !zl.is_finite() || !zr.is_finite() || zl == 0.0 || zr == 0.0 {
        return Err(Error::Degenerate(format!("curve {curve}: short-arc vertex on the axis")));
    }
    let r = -(-target_w).exp();
    let e2t = zr / (zl * r);
    if e2t <= 0.0 {
        return Err(Error::Degenerate(format!("curve {curve}: z^l and z^r on the same side")));
    }
    Ok(0.5 * e2t.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::axis_data;

    fn mixed() -> DevelopedSurface {
        assemble_from_spec(&SurfaceSpec::genus_two_mixed()).unwrap()
    }

    #[test]
    fn genus_two_assembles() {
        let ds = assemble_from_spec(&SurfaceSpec::genus_two()).unwrap();
        for c in &ds.curves {
            assert!((c.length - 1.0).abs() < 1e-12);
            assert!(c.quadruple().invariant().unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let spec = SurfaceSpec::genus_two();
        let t = spec.topology().unwrap();
        let err = assemble_surface(&t, &[[1.0; 3], [2.0; 3]], &[0.0; 3]).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { .. }));
    }

    #[test]
    fn charts_are_orientation_preserving_and_place_the_axis() {
        for ds in [mixed(), assemble_from_spec(&SurfaceSpec::genus_two()).unwrap()] {
            for (ci, c) in ds.curves.iter().enumerate() {
                for (side, target) in [(&c.left, -1.0), (&c.right, 1.0)] {
                    assert!(side.chart.is_orientation_preserving());
                    assert!((side.chart.apply(&side.z).circle_key() - target).abs() < 1e-12);
                    let bd = &ds.pants[side.pants].boundaries[side.boundary];
                    let v = side.chart.apply(&bd.vertex);
                    assert_eq!(v.is_infinity(), side.vertex_at_y);
                    // Every triangle of the fan lies on the pants' side.
                    for (step, lift) in &bd.fan {
                        for k in 1..3 {
                            let u = side.chart.apply(&lift.pos[(step.corner + k) % 3]).circle_key();
                            assert!(u * target > 0.0);
                        }
                    }
                }
                let l = axis_data(&ds.curve_holonomy(ci)).unwrap();
                let r = axis_data(&ds.curve_holonomy_left(ci)).unwrap();
                assert!((l.length - c.length).abs() < 1e-9);
                assert!((r.length - c.length).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn spiral_direction_follows_sign_and_side() {
        // Right side: positive spiraling runs toward y. Left side: negative.
        for ds in [mixed(), assemble_from_spec(&SurfaceSpec::genus_two()).unwrap()] {
            for c in &ds.curves {
                let sign = |s: &CurveSide| ds.pants[s.pants].lamination.spiral_signs()[s.boundary];
                assert_eq!(c.right.vertex_at_y, sign(&c.right) > 0);
                assert_eq!(c.left.vertex_at_y, sign(&c.left) < 0);
            }
        }
    }

    #[test]
    fn twist_moves_only_the_left_vertex() {
        let ds = mixed();
        let t = 0.35;
        let tw = twist_deform(&ds, "C1", t).unwrap();
        let (a, b) = (ds.curves[0].quadruple(), tw.curves[0].quadruple());
        assert!((b.zl.circle_key() - (2.0 * t).exp() * a.zl.circle_key()).abs() < 1e-12);
        assert!(a.zr.proj_eq(&b.zr));
        let dw = b.invariant().unwrap() - a.invariant().unwrap();
        assert!((dw - 2.0 * t).abs() < 1e-12);
        for ci in 1..3 {
            let (p, q) = (ds.curves[ci].quadruple(), tw.curves[ci].quadruple());
            assert!((p.cross_ratio().unwrap() - q.cross_ratio().unwrap()).abs() < 1e-9);
        }
        assert!(matches!(twist_deform(&ds, "C9", 1.0), Err(Error::UnknownCurve(_))));
    }

    #[test]
    fn twists_compose() {
        let ds = mixed();
        let a = twist_deform(&twist_deform(&ds, "C2", 0.2).unwrap(), "C2", 0.2).unwrap();
        let b = twist_deform(&ds, "C2", 0.4).unwrap();
        assert!(a.curves[1].left_map().proj_eq(&b.curves[1].left_map()));
        let z = twist_deform(&ds, "C3", 0.0).unwrap();
        assert_eq!(z.curves[2].quadruple().invariant().unwrap(), ds.curves[2].quadruple().invariant().unwrap());
    }

    #[test]
    fn solve_twist_hits_target() {
        let ds = mixed();
        for c in ["C1", "C2", "C3"] {
            let w0 = ds.curve(c).unwrap().quadruple().invariant().unwrap();
            assert!(solve_twist(&ds, c, w0).unwrap().abs() < 1e-12);
            for target in [-1.3, 0.0, 0.7, 4.0] {
                let t = solve_twist(&ds, c, target).unwrap();
                let moved = twist_deform(&ds, c, t).unwrap();
                let w = moved.curve(c).unwrap().quadruple().invariant().unwrap();
                assert!((w - target).abs() < 1e-9);
                let back = solve_twist(&moved, c, w0).unwrap();
                assert!((back + t).abs() < 1e-9);
            }
        }
    }
}
