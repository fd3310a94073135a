//! Closed-leaf sums `R_p`, `L_p` and the conditions built from them.
//!
//! Around a decomposing curve `C`, each side contributes a fan of triangle
//! corners and leaf ends spiraling onto `C`. `R_p` (right side) and `L_p`
//! (left side) add up the shearing invariants of those leaf ends, with the
//! index flipped to `n − p` for ends oriented away from `C`, together with
//! the triangle invariants `τ_{p q r}` read at the corner on `C`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multilinear::rank_rational;
use crate::pants::{DevelopedSurface, SurfaceTopology};
use crate::veronese::irrep_n;

use super::vector::{expected_len, BDLayout, BDVector, Coord};

/// Absolute tolerance for the closed-leaf equalities and the slice test.
pub const BD_ATOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Which reading of a fan triangle enters the sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VertexConvention {
    /// `τ_{pqr}` at the corner on the lift of `C`, vertices clockwise.
    #[default]
    SpiralCorner,
    /// Same corner with the vertices read counterclockwise, i.e.
    /// `τ_{pqr} ↦ −τ_{prq}`.
    Counterclockwise,
}

/// `τ_{abc}` at stored corner `c` as a signed corner-0 coordinate.
fn tau_at_corner(
    triangle: usize,
    corner: usize,
    [a, b, c]: [usize; 3],
    conv: VertexConvention,
) -> (Coord, f64) {
    let ([a, b, c], sign) = match conv {
        VertexConvention::SpiralCorner => ([a, b, c], 1.0),
        VertexConvention::Counterclockwise => ([a, c, b], -1.0),
    };
    // Clockwise from corner 0 the corners come as 0, 2, 1.
    let pqr = match corner {
        0 => [a, b, c],
        2 => [c, a, b],
        _ => [b, c, a],
    };
    (Coord::Tau { triangle, pqr }, sign)
}

/// The signed coordinates summed in `R_p` or `L_p` of curve `ci`.
pub fn closed_leaf_terms(
    topology: &SurfaceTopology,
    ci: usize,
    p: usize,
    n: usize,
    side: Side,
    conv: VertexConvention,
) -> Result<Vec<(Coord, f64)>> {
    let curve = topology
        .curves
        .get(ci)
        .ok_or_else(|| Error::OutOfRange(format!("curve index {ci}")))?;
    if p == 0 || p >= n {
        return Err(Error::OutOfRange(format!("closed-leaf index {p} not in 1..{n}")));
    }
    let slot = match side {
        Side::Left => curve.ends[0],
        Side::Right => curve.ends[1],
    };
    let (pi, b) = slot;
    let lam = &topology.pants[pi].lamination;
    let sign = lam.spiral_signs()[b];
    let along = match side {
        Side::Right => sign > 0,
        Side::Left => sign < 0,
    };
    let k = if along { p } else { n - p };
    let outer = match (side, along) {
        (Side::Right, true) | (Side::Left, false) => 1.0,
        _ => -1.0,
    };
    let mut terms = Vec::new();
    for step in lam.fan(b) {
        let leaf = 3 * pi + step.leaf;
        let idx = if step.toward_boundary { k } else { n - k };
        terms.push((Coord::Sigma { leaf, p: idx }, outer));
        for q in 1..n - k {
            let (c, s) = tau_at_corner(2 * pi + step.triangle, step.corner, [k, q, n - k - q], conv);
            terms.push((c, outer * s));
        }
    }
    Ok(terms)
}

pub fn closed_leaf_sum(
    v: &BDVector,
    topology: &SurfaceTopology,
    ci: usize,
    p: usize,
    side: Side,
    conv: VertexConvention,
) -> Result<f64> {
    check_layout(v, topology)?;
    closed_leaf_terms(topology, ci, p, v.n(), side, conv)?
        .iter()
        .map(|(c, s)| Ok(s * v.get(c)?))
        .sum()
}

fn check_layout(v: &BDVector, topology: &SurfaceTopology) -> Result<()> {
    let expected = BDLayout::new(topology, v.n())?;
    if *v.layout() != expected {
        return Err(Error::DimensionMismatch { expected: expected.len(), found: v.len() });
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosedLeafEntry {
    pub curve: String,
    pub p: usize,
    pub right: f64,
    pub left: f64,
    /// `log λ_p/λ_{p+1}` of the curve's holonomy, when known.
    pub length: Option<f64>,
}

impl ClosedLeafEntry {
    /// Largest pairwise difference among `R_p`, `L_p` and `l_p`.
    pub fn spread(&self) -> f64 {
        let mut d = (self.right - self.left).abs();
        if let Some(l) = self.length {
            d = d.max((self.right - l).abs()).max((self.left - l).abs());
        }
        d
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosedLeafReport {
    pub entries: Vec<ClosedLeafEntry>,
}

impl ClosedLeafReport {
    pub fn max_spread(&self) -> f64 {
        self.entries.iter().map(ClosedLeafEntry::spread).fold(0.0, f64::max)
    }
}

fn report(
    v: &BDVector,
    topology: &SurfaceTopology,
    conv: VertexConvention,
    lengths: Option<&[Vec<f64>]>,
) -> Result<ClosedLeafReport> {
    let mut entries = Vec::new();
    for (ci, c) in topology.curves.iter().enumerate() {
        for p in 1..v.n() {
            entries.push(ClosedLeafEntry {
                curve: c.id.clone(),
                p,
                right: closed_leaf_sum(v, topology, ci, p, Side::Right, conv)?,
                left: closed_leaf_sum(v, topology, ci, p, Side::Left, conv)?,
                length: lengths.map(|l| l[ci][p - 1]),
            });
        }
    }
    Ok(ClosedLeafReport { entries })
}

/// `R_p`, `L_p` and the eigenvalue gaps `l_p` of `ι_n` of every curve
/// holonomy.
pub fn closed_leaf_report(
    v: &BDVector,
    ds: &DevelopedSurface,
    conv: VertexConvention,
) -> Result<ClosedLeafReport> {
    let lengths = (0..ds.curves.len())
        .map(|ci| irrep_n(&ds.curve_holonomy(ci), v.n())?.length_spectrum())
        .collect::<Result<Vec<_>>>()?;
    report(v, &ds.topology, conv, Some(&lengths))
}

#[derive(Debug, Clone, Serialize)]
pub struct PolytopeReport {
    pub member: bool,
    pub violations: Vec<String>,
}

/// `R_p(C) = L_p(C) > 0` for every curve and index.
pub fn polytope_membership(
    v: &BDVector,
    topology: &SurfaceTopology,
    conv: VertexConvention,
) -> Result<PolytopeReport> {
    let r = report(v, topology, conv, None)?;
    let mut violations = Vec::new();
    for e in &r.entries {
        if (e.right - e.left).abs() > BD_ATOL {
            violations.push(format!(
                "{} p={}: R_p = {} differs from L_p = {}",
                e.curve, e.p, e.right, e.left
            ));
        }
        if e.right <= 0.0 {
            violations.push(format!("{} p={}: R_p = {} is not positive", e.curve, e.p, e.right));
        }
    }
    Ok(PolytopeReport { member: violations.is_empty(), violations })
}

/// Vanishing triangle block and index-independent shearing and gluing
/// blocks.
pub fn slice_membership(v: &BDVector) -> bool {
    if v.tau_block().iter().any(|t| t.abs() > BD_ATOL) {
        return false;
    }
    let mut groups: BTreeMap<(u8, usize), (f64, f64)> = BTreeMap::new();
    for (c, x) in v.layout().coords().iter().zip(v.values()) {
        let key = match *c {
            Coord::Tau { .. } => continue,
            Coord::Sigma { leaf, .. } => (0, leaf),
            Coord::Theta { curve, .. } => (1, curve),
        };
        let g = groups.entry(key).or_insert((*x, *x));
        g.0 = g.0.min(*x);
        g.1 = g.1.max(*x);
    }
    groups.values().all(|(lo, hi)| hi - lo <= BD_ATOL)
}

/// Integer bookkeeping of the closed-leaf constraints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionAudit {
    pub n: usize,
    pub abs_euler_characteristic: usize,
    /// Number of coordinates.
    pub coordinates: usize,
    /// Rank of the equalities `R_p = L_p`.
    pub closed_leaf_rank: usize,
    pub polytope_dimension: usize,
    /// One shear per leaf and one gluing value per curve.
    pub slice_parameters: usize,
    /// Rank of the equalities restricted to the slice.
    pub slice_constraint_rank: usize,
    pub slice_dimension: usize,
}

pub fn dimension_audit(
    topology: &SurfaceTopology,
    n: usize,
    conv: VertexConvention,
) -> Result<DimensionAudit> {
    let layout = BDLayout::new(topology, n)?;
    let nleaves = layout.leaf_ids.len();
    let slice_parameters = nleaves + layout.curve_ids.len();
    let mut full = Vec::new();
    let mut slice = Vec::new();
    for ci in 0..topology.curves.len() {
        for p in 1..n {
            let mut row = vec![BigRational::zero(); layout.len()];
            let mut srow = vec![BigRational::zero(); slice_parameters];
            for (side, w) in [(Side::Right, 1i64), (Side::Left, -1)] {
                for (c, s) in closed_leaf_terms(topology, ci, p, n, side, conv)? {
                    let coef = BigRational::from_integer((w * s as i64).into());
                    row[layout.index(&c)?] += &coef;
                    match c {
                        Coord::Sigma { leaf, .. } => srow[leaf] += &coef,
                        Coord::Theta { curve, .. } => srow[nleaves + curve] += &coef,
                        Coord::Tau { .. } => {}
                    }
                }
            }
            full.push(row);
            slice.push(srow);
        }
    }
    let coordinates = layout.len();
    debug_assert_eq!(coordinates, expected_len(topology.abs_euler_characteristic(), n));
    let closed_leaf_rank = rank_rational(&full);
    let slice_constraint_rank = rank_rational(&slice);
    Ok(DimensionAudit {
        n,
        abs_euler_characteristic: topology.abs_euler_characteristic(),
        coordinates,
        closed_leaf_rank,
        polytope_dimension: coordinates - closed_leaf_rank,
        slice_parameters,
        slice_constraint_rank,
        slice_dimension: slice_parameters - slice_constraint_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bd::bd_vector;
    use crate::pants::{assemble_from_spec, SurfaceSpec};

    fn surfaces() -> Vec<DevelopedSurface> {
        [SurfaceSpec::genus_two(), SurfaceSpec::genus_two_mixed()]
            .iter()
            .map(|s| assemble_from_spec(s).unwrap())
            .collect()
    }

    #[test]
    fn fuchsian_sums_equal_lengths() {
        for ds in surfaces() {
            for n in 2..=5 {
                let v = bd_vector(&ds, n).unwrap();
                for conv in [VertexConvention::SpiralCorner, VertexConvention::Counterclockwise] {
                    let r = closed_leaf_report(&v, &ds, conv).unwrap();
                    assert_eq!(r.entries.len(), 3 * (n - 1));
                    assert!(r.max_spread() < 1e-9, "n={n}: {r:?}");
                    for (e, c) in r.entries.iter().zip(ds.curves.iter().flat_map(|c| vec![c; n - 1])) {
                        assert!((e.right - c.length).abs() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn polytope_and_slice_accept_fuchsian_vectors() {
        for ds in surfaces() {
            let v = bd_vector(&ds, 4).unwrap();
            let r = polytope_membership(&v, &ds.topology, VertexConvention::default()).unwrap();
            assert!(r.member, "{:?}", r.violations);
            assert!(slice_membership(&v));
        }
    }

    #[test]
    fn negated_shears_and_zero_vector_rejected() {
        let ds = &surfaces()[0];
        let v = bd_vector(ds, 3).unwrap();
        let mut neg = v.clone();
        let c = Coord::Sigma { leaf: 0, p: 1 };
        neg.set(&c, -v.get(&c).unwrap()).unwrap();
        let r = polytope_membership(&neg, &ds.topology, VertexConvention::default()).unwrap();
        assert!(!r.member);
        assert!(r.violations.iter().any(|s| s.contains("C1")));
        let zero = BDVector::zeros(v.layout().clone());
        let r = polytope_membership(&zero, &ds.topology, VertexConvention::default()).unwrap();
        assert!(!r.member && r.violations.iter().all(|s| s.contains("not positive")));
    }

    #[test]
    fn slice_rejects_perturbed_triangle() {
        let ds = &surfaces()[1];
        let mut v = bd_vector(ds, 3).unwrap();
        let c = Coord::Tau { triangle: 2, pqr: [1, 1, 1] };
        v.set(&c, 0.1).unwrap();
        assert!(!slice_membership(&v));
        assert!(slice_membership(&bd_vector(ds, 2).unwrap()));
    }

    #[test]
    fn slice_sums_reduce_to_signed_shear_sums() {
        let ds = &surfaces()[1];
        let layout = BDLayout::new(&ds.topology, 4).unwrap();
        let mut v = BDVector::zeros(layout);
        for (leaf, s) in ds.shears().iter().flatten().enumerate() {
            for p in 1..4 {
                v.set(&Coord::Sigma { leaf, p }, *s).unwrap();
            }
        }
        for ci in 0..3 {
            let r1 = closed_leaf_sum(&v, &ds.topology, ci, 1, Side::Right, VertexConvention::default());
            for p in 2..4 {
                let rp = closed_leaf_sum(&v, &ds.topology, ci, p, Side::Right, VertexConvention::default());
                assert!((rp.unwrap() - r1.as_ref().unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn genus_two_dimension_count() {
        for spec in [SurfaceSpec::genus_two(), SurfaceSpec::genus_two_mixed()] {
            let topo = spec.topology().unwrap();
            for conv in [VertexConvention::SpiralCorner, VertexConvention::Counterclockwise] {
                let a = dimension_audit(&topo, 3, conv).unwrap();
                assert_eq!(
                    (a.coordinates, a.closed_leaf_rank, a.polytope_dimension),
                    (22, 6, 16)
                );
                assert_eq!((a.slice_parameters, a.slice_constraint_rank, a.slice_dimension), (9, 3, 6));
                // (2g − 2)(n² − 1)
                assert_eq!(a.polytope_dimension, 2 * 8);
            }
            for n in 2..=6 {
                let a = dimension_audit(&topo, n, VertexConvention::default()).unwrap();
                assert_eq!(a.polytope_dimension, 2 * (n * n - 1), "n={n}");
            }
        }
    }

    #[test]
    fn wrong_layout_is_rejected() {
        let ds = &surfaces()[0];
        let other = SurfaceSpec::genus_two_mixed().topology().unwrap();
        let v = bd_vector(ds, 3).unwrap();
        assert!(matches!(
            polytope_membership(&v, &other, VertexConvention::default()),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
