//! Triangle, shearing and gluing invariants of a developed surface, read
//! through the Veronese flags of the developed ideal points.

use crate::error::{Error, Result};
use crate::flags::{double_ratio, triple_ratio};
use crate::hyperbolic::{Mobius, ProjPoint};
use crate::multilinear::Field;
use crate::pants::DevelopedSurface;
use crate::veronese::veronese_flag;

use super::vector::{BDLayout, BDVector, Coord};

/// `T_pqr` of the Veronese flags at `(v0, v1, v2)`.
pub fn veronese_triple_ratio<F: Field>(
    v: [&ProjPoint<F>; 3],
    [p, q, r]: [usize; 3],
    n: usize,
) -> Result<F> {
    let f = |x: &ProjPoint<F>| veronese_flag(x, n);
    triple_ratio(&f(v[0])?, &f(v[1])?, &f(v[2])?, p, q, r)
}

/// `D_p` of the Veronese flags at `(x, y, z^l, z^r)`.
pub fn veronese_double_ratio<F: Field>(
    [x, y, zl, zr]: [&ProjPoint<F>; 4],
    p: usize,
    n: usize,
) -> Result<F> {
    let f = |a: &ProjPoint<F>| veronese_flag(a, n);
    double_ratio(&f(x)?, &f(y)?, &f(zl)?, &f(zr)?, p)
}

type Point = ProjPoint<f64>;

/// Moves a quadruple to `x = 0`, `y = ∞`, `z^l z^r = −1`. Ratios of
/// Veronese wedge factors are invariant under `PGL_2`, and this chart keeps
/// the four directions as far apart as the cross ratio allows, which the
/// double-precision determinants need for large `n`.
fn balanced_quadruple(x: &Point, y: &Point, zl: &Point, zr: &Point) -> Result<[Point; 4]> {
    let w = Mobius::to_standard(y, zr, x)?.apply(zl).circle_key();
    if !w.is_finite() || w == 0.0 {
        return Err(Error::Degenerate("quadruple has coincident points".into()));
    }
    let s = w.abs().sqrt();
    Ok([ProjPoint::finite(0.0), ProjPoint::infinity(), ProjPoint::finite(w / s), ProjPoint::finite(1.0 / s)])
}

/// Moves a triangle to the equilateral position with the same orientation.
fn balanced_triple(a: &Point, b: &Point, c: &Point) -> Result<[Point; 3]> {
    let r = 3f64.sqrt().recip();
    let mut t = [ProjPoint::infinity(), ProjPoint::finite(r), ProjPoint::finite(-r)];
    if ProjPoint::is_clockwise(a, b, c) != ProjPoint::is_clockwise(&t[0], &t[1], &t[2]) {
        t.swap(1, 2);
    }
    let m = Mobius::from_three_points([a, b, c], [&t[0], &t[1], &t[2]])?;
    Ok([m.apply(a), m.apply(b), m.apply(c)])
}

fn log_positive(x: f64, what: &str) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x.ln())
    } else {
        Err(Error::Degenerate(format!("{what}: ratio {x} has no real logarithm")))
    }
}

fn split_triangle(ds: &DevelopedSurface, triangle: usize) -> Result<(usize, usize)> {
    let (pi, t) = (triangle / 2, triangle % 2);
    if pi >= ds.pants.len() {
        return Err(Error::OutOfRange(format!("triangle index {triangle}")));
    }
    Ok((pi, t))
}

/// `τ_pqr` at the corner `v0` of a triangle (global index `2·pants + t`),
/// reading its vertices in clockwise order starting at `v0`.
pub fn triangle_invariant(
    ds: &DevelopedSurface,
    triangle: usize,
    v0: usize,
    pqr: [usize; 3],
    n: usize,
) -> Result<f64> {
    let (pi, t) = split_triangle(ds, triangle)?;
    if v0 > 2 {
        return Err(Error::OutOfRange(format!("corner {v0}")));
    }
    let pos = &ds.pants[pi].lifts[t].pos;
    // Lifts are stored counterclockwise.
    let pts = balanced_triple(&pos[v0], &pos[(v0 + 2) % 3], &pos[(v0 + 1) % 3])?;
    let what = format!("triangle {}", ds.topology.pants[pi].id);
    log_positive(veronese_triple_ratio([&pts[0], &pts[1], &pts[2]], pqr, n)?, &what)
}

/// `σ_p` of a leaf (global index `3·pants + e`).
pub fn shearing_invariant(ds: &DevelopedSurface, leaf: usize, p: usize, n: usize) -> Result<f64> {
    let (pi, e) = (leaf / 3, leaf % 3);
    let q = ds
        .pants
        .get(pi)
        .map(|d| &d.leaves[e])
        .ok_or_else(|| Error::OutOfRange(format!("leaf index {leaf}")))?;
    let pts = balanced_quadruple(&q.x, &q.y, &q.zl, &q.zr)?;
    let what = format!("leaf {}", ds.topology.pants[pi].lamination.leaf_names()[e]);
    log_positive(veronese_double_ratio([&pts[0], &pts[1], &pts[2], &pts[3]], p, n)?, &what)
}

/// `θ_p` of a decomposing curve at its short-arc quadruple.
pub fn gluing_invariant(ds: &DevelopedSurface, curve: usize, p: usize, n: usize) -> Result<f64> {
    let c = ds
        .curves
        .get(curve)
        .ok_or_else(|| Error::OutOfRange(format!("curve index {curve}")))?;
    let q = c.quadruple();
    let pts = balanced_quadruple(&q.x, &q.y, &q.zl, &q.zr)?;
    log_positive(veronese_double_ratio([&pts[0], &pts[1], &pts[2], &pts[3]], p, n)?, &c.id)
}

/// Every invariant of the surface, with triangle invariants read at
/// corner 0.
pub fn bd_vector(ds: &DevelopedSurface, n: usize) -> Result<BDVector> {
    let layout = BDLayout::new(&ds.topology, n)?;
    let values = layout
        .coords()
        .iter()
        .map(|c| match *c {
            Coord::Tau { triangle, pqr } => triangle_invariant(ds, triangle, 0, pqr, n),
            Coord::Sigma { leaf, p } => shearing_invariant(ds, leaf, p, n),
            Coord::Theta { curve, p } => gluing_invariant(ds, curve, p, n),
        })
        .collect::<Result<Vec<_>>>()?;
    BDVector::new(layout, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bd::vector::{expected_len, interior_triples};
    use crate::pants::{assemble_from_spec, SurfaceSpec};
    use crate::sampling::{clockwise_triple, rng_from_seed};
    use num_rational::BigRational;
    use num_traits::One;

    fn mixed() -> DevelopedSurface {
        assemble_from_spec(&SurfaceSpec::genus_two_mixed()).unwrap()
    }

    #[test]
    fn genus_two_has_twenty_two_coordinates() {
        let ds = assemble_from_spec(&SurfaceSpec::genus_two()).unwrap();
        let v = bd_vector(&ds, 3).unwrap();
        assert_eq!(v.len(), 22);
        assert_eq!(expected_len(2, 3), 22);
        for n in 2..=6 {
            assert_eq!(bd_vector(&ds, n).unwrap().len(), expected_len(2, n));
        }
    }

    #[test]
    fn n_two_has_only_classical_coordinates() {
        let ds = mixed();
        let v = bd_vector(&ds, 2).unwrap();
        assert!(v.tau_block().is_empty());
        for (leaf, s) in ds.shears().iter().flatten().enumerate() {
            assert!((v.get(&Coord::Sigma { leaf, p: 1 }).unwrap() - s).abs() < 1e-9);
        }
        for (curve, c) in ds.curves.iter().enumerate() {
            let w = c.quadruple().invariant().unwrap();
            assert!((v.get(&Coord::Theta { curve, p: 1 }).unwrap() - w).abs() < 1e-9);
        }
    }

    #[test]
    fn fuchsian_triangle_invariants_vanish_at_every_corner() {
        let ds = mixed();
        for n in 3..=6 {
            for triangle in 0..4 {
                for v0 in 0..3 {
                    for pqr in interior_triples(n) {
                        let t = triangle_invariant(&ds, triangle, v0, pqr, n).unwrap();
                        assert!(t.abs() < 1e-9, "n={n} T{triangle} v{v0} {pqr:?}: {t}");
                    }
                }
            }
        }
    }

    #[test]
    fn shears_and_gluings_are_index_independent() {
        let ds = mixed();
        for n in 3..=5 {
            let v = bd_vector(&ds, n).unwrap();
            for (leaf, s) in ds.shears().iter().flatten().enumerate() {
                for p in 1..n {
                    assert!((v.get(&Coord::Sigma { leaf, p }).unwrap() - s).abs() < 1e-9);
                }
            }
            for curve in 0..3 {
                let w = v.get(&Coord::Theta { curve, p: 1 }).unwrap();
                for p in 2..n {
                    assert!((v.get(&Coord::Theta { curve, p }).unwrap() - w).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn exact_triple_ratio_is_one_on_rational_points() {
        let mut rng = rng_from_seed(11);
        for _ in 0..20 {
            let t = clockwise_triple(&mut rng);
            for n in 3..=5 {
                for pqr in interior_triples(n) {
                    let x = veronese_triple_ratio([&t[0], &t[1], &t[2]], pqr, n).unwrap();
                    assert_eq!(x, BigRational::one());
                }
            }
        }
    }

    #[test]
    fn csv_and_json_cover_every_coordinate() {
        let ds = mixed();
        let v = bd_vector(&ds, 3).unwrap();
        let mut buf = Vec::new();
        v.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 23);
        assert!(text.lines().nth(1).unwrap().starts_with("tau,P1/T0,\"1,1,1\","));
        let j = v.to_json();
        assert_eq!(j["entries"].as_array().unwrap().len(), 22);
    }
}
