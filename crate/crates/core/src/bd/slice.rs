//! The slice of vanishing triangle invariants and index-free shearing and
//! gluing invariants, and its realization by hyperbolic surfaces.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pants::{
    assemble_surface, shear_violations, shears_for_lengths, solve_twist, twist_deform,
    DevelopedSurface, PantsShearing, ShearMap, SurfaceSpec, SurfaceTopology,
};
use crate::sampling::SampleRng;

use super::closed_leaf::{polytope_membership, VertexConvention};
use super::vector::{BDLayout, BDVector, Coord};

/// One shear per leaf (pants order) and one gluing value per curve.
#[derive(Debug, Clone, PartialEq)]
pub struct SlicePoint {
    pub shears: Vec<PantsShearing>,
    pub gluing: Vec<f64>,
}

/// JSON form of a slice point together with its surface.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceInput {
    pub surface: SurfaceSpec,
    pub shears: ShearMap,
    pub gluing: BTreeMap<String, f64>,
}

impl SliceInput {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))
    }

    /// The topology and the slice point; every curve needs a gluing value.
    pub fn resolve(&self) -> Result<(SurfaceTopology, SlicePoint)> {
        let topology = self.surface.topology()?;
        let shears = topology.shears_from_map(&self.shears)?;
        for c in &topology.curves {
            if !self.gluing.contains_key(&c.id) {
                return Err(Error::Schema(format!("no gluing value for curve {}", c.id)));
            }
        }
        let gluing = topology.curve_values(&self.gluing)?;
        Ok((topology, SlicePoint { shears, gluing }))
    }

    pub fn new(surface: &SurfaceSpec, topology: &SurfaceTopology, sp: &SlicePoint) -> Self {
        SliceInput {
            surface: surface.clone(),
            shears: topology.shears_to_map(&sp.shears),
            gluing: topology.curves.iter().map(|c| c.id.clone()).zip(sp.gluing.iter().copied()).collect(),
        }
    }
}

impl SlicePoint {
    /// The vector with `τ ≡ 0`, `σ_p ≡ z` and `θ_p ≡ w`.
    pub fn to_bd_vector(&self, topology: &SurfaceTopology, n: usize) -> Result<BDVector> {
        let layout = BDLayout::new(topology, n)?;
        if self.shears.len() != topology.pants.len() || self.gluing.len() != topology.curves.len() {
            return Err(Error::DimensionMismatch {
                expected: topology.pants.len() + topology.curves.len(),
                found: self.shears.len() + self.gluing.len(),
            });
        }
        let leaf_values: Vec<f64> = self.shears.iter().flatten().copied().collect();
        let values = layout
            .coords()
            .iter()
            .map(|c| match *c {
                Coord::Tau { .. } => 0.0,
                Coord::Sigma { leaf, .. } => leaf_values[leaf],
                Coord::Theta { curve, .. } => self.gluing[curve],
            })
            .collect();
        BDVector::new(layout, values)
    }

    /// The slice point of a developed surface.
    pub fn read(ds: &DevelopedSurface) -> Result<Self> {
        let gluing = ds
            .curves
            .iter()
            .map(|c| c.quadruple().invariant())
            .collect::<Result<Vec<_>>>()?;
        Ok(SlicePoint { shears: ds.shears(), gluing })
    }
}

/// Builds the surface whose coordinates are the given slice point: develops
/// each pants from its shears, glues with zero twist, then twists every
/// curve until its gluing invariant is the requested value.
pub fn realize_slice(sp: &SlicePoint, topology: &SurfaceTopology) -> Result<DevelopedSurface> {
    let mut problems = Vec::new();
    for (p, s) in topology.pants.iter().zip(&sp.shears) {
        for v in shear_violations(&p.lamination, s) {
            problems.push(format!("pants {}: {v}", p.id));
        }
    }
    if problems.is_empty() {
        let r = polytope_membership(&sp.to_bd_vector(topology, 2)?, topology, VertexConvention::default())?;
        problems = r.violations;
    }
    if !problems.is_empty() {
        return Err(Error::Polytope(problems.join("; ")));
    }
    let mut ds = assemble_surface(topology, &sp.shears, &vec![0.0; topology.curves.len()])?;
    for (c, w) in topology.curves.iter().zip(&sp.gluing) {
        let t = solve_twist(&ds, &c.id, *w)?;
        ds = twist_deform(&ds, &c.id, t)?;
    }
    Ok(ds)
}

/// `|θ(C) − w(C)|` per curve, measured on the realized surface.
pub fn twist_residuals(ds: &DevelopedSurface, sp: &SlicePoint) -> Result<Vec<f64>> {
    ds.curves
        .iter()
        .zip(&sp.gluing)
        .map(|(c, w)| Ok((c.quadruple().invariant()? - w).abs()))
        .collect()
}

/// Curve lengths uniform in `[0.3, 2.5]`, gluing values uniform in
/// `[−2, 2]`, and the shears realizing those lengths.
pub fn random_slice_point(rng: &mut SampleRng, topology: &SurfaceTopology) -> SlicePoint {
    let lengths: Vec<f64> = topology.curves.iter().map(|_| rng.gen_range(0.3..2.5)).collect();
    let gluing = topology.curves.iter().map(|_| rng.gen_range(-2.0..2.0)).collect();
    let shears = topology
        .pants
        .iter()
        .enumerate()
        .map(|(pi, p)| {
            let len = [0, 1, 2].map(|b| lengths[topology.curve_at((pi, b)).0]);
            shears_for_lengths(&p.lamination, len)
        })
        .collect();
    SlicePoint { shears, gluing }
}
