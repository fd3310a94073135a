//! Maximal laminations of a pair of pants and their shear ranges.
//!
//! Boundaries are indexed `0, 1, 2` internally and labelled `1, 2, 3` in
//! names and JSON. Each pants is cut into two ideal triangles `T0`, `T1`
//! stored counterclockwise by the boundary at each corner; side `s` of a
//! triangle runs from corner `s` to corner `s + 1`.
//!
//! Type I (leaves `B12`, `B23`, `B31`): `T0 = (1, 2, 3)`, `T1 = (1, 3, 2)`.
//! Type II with distinguished boundary `i` and `j = i+1`, `k = i+2`
//! (leaves `Bii`, `Bij`, `Bik`): `T0 = (i, j, i)`, `T1 = (i, k, i)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LaminationType {
    I,
    II,
}

/// Where a triangle side is glued: `(triangle, side, leaf)`.
pub type SideGluing = (usize, usize, usize);

#[derive(Debug, Clone, PartialEq)]
pub struct PantsLamination {
    kind: LaminationType,
    /// Distinguished boundary of a type II lamination.
    distinguished: usize,
    spiral_signs: [i8; 3],
    leaf_orientations: [i8; 3],
}

/// One step of the walk around a boundary: the corner of a triangle sitting
/// at the boundary and the leaf crossed when leaving it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FanStep {
    pub triangle: usize,
    pub corner: usize,
    pub leaf: usize,
    /// Whether the crossed leaf's orientation points into the boundary.
    pub toward_boundary: bool,
}

fn check_sign(v: i8, what: &str) -> Result<()> {
    if v == 1 || v == -1 {
        Ok(())
    } else {
        Err(Error::Schema(format!("{what} must be +1 or -1, got {v}")))
    }
}

impl PantsLamination {
    pub fn new(
        kind: LaminationType,
        distinguished: usize,
        spiral_signs: [i8; 3],
        leaf_orientations: [i8; 3],
    ) -> Result<Self> {
        if distinguished > 2 {
            return Err(Error::Schema(format!(
                "distinguished boundary {} is not one of 1, 2, 3",
                distinguished + 1
            )));
        }
        for s in spiral_signs {
            check_sign(s, "spiral sign")?;
        }
        for o in leaf_orientations {
            check_sign(o, "leaf orientation")?;
        }
        Ok(PantsLamination { kind, distinguished, spiral_signs, leaf_orientations })
    }

    pub fn type_i(spiral_signs: [i8; 3]) -> Self {
        PantsLamination {
            kind: LaminationType::I,
            distinguished: 0,
            spiral_signs,
            leaf_orientations: [1; 3],
        }
    }

    pub fn type_ii(distinguished: usize, spiral_signs: [i8; 3]) -> Result<Self> {
        Self::new(LaminationType::II, distinguished, spiral_signs, [1; 3])
    }

    pub fn kind(&self) -> LaminationType {
        self.kind
    }

    pub fn distinguished(&self) -> usize {
        self.distinguished
    }

    pub fn spiral_signs(&self) -> [i8; 3] {
        self.spiral_signs
    }

    pub fn leaf_orientations(&self) -> [i8; 3] {
        self.leaf_orientations
    }

    pub fn with_leaf_orientations(mut self, o: [i8; 3]) -> Result<Self> {
        for v in o {
            check_sign(v, "leaf orientation")?;
        }
        self.leaf_orientations = o;
        Ok(self)
    }

    /// The two boundaries joined by each leaf.
    pub fn leaf_ends(&self, leaf: usize) -> (usize, usize) {
        match self.kind {
            LaminationType::I => (leaf, (leaf + 1) % 3),
            LaminationType::II => {
                let i = self.distinguished;
                (i, (i + leaf) % 3)
            }
        }
    }

    /// Canonical leaf names, in leaf order.
    pub fn leaf_names(&self) -> [String; 3] {
        [0, 1, 2].map(|e| {
            let (a, b) = self.leaf_ends(e);
            format!("B{}{}", a + 1, b + 1)
        })
    }

    pub fn leaf_index(&self, name: &str) -> Result<usize> {
        self.leaf_names()
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| {
                Error::LabelMismatch(format!(
                    "leaf {name} is not one of {:?}",
                    self.leaf_names()
                ))
            })
    }

    /// Boundary at each corner of each triangle.
    pub fn corners(&self) -> [[usize; 3]; 2] {
        match self.kind {
            LaminationType::I => [[0, 1, 2], [0, 2, 1]],
            LaminationType::II => {
                let i = self.distinguished;
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                [[i, j, i], [i, k, i]]
            }
        }
    }

    /// Partner of side `s` of triangle `t`.
    pub fn gluing(&self, t: usize, s: usize) -> SideGluing {
        match self.kind {
            // T0 side s is glued to the T1 side with reversed endpoints.
            LaminationType::I => match (t, s) {
                (0, 0) => (1, 2, 0),
                (0, 1) => (1, 1, 1),
                (0, 2) => (1, 0, 2),
                (1, 0) => (0, 2, 2),
                (1, 1) => (0, 1, 1),
                (1, 2) => (0, 0, 0),
                _ => unreachable!("triangle side out of range"),
            },
            LaminationType::II => match (t, s) {
                (0, 0) => (0, 1, 1),
                (0, 1) => (0, 0, 1),
                (1, 0) => (1, 1, 2),
                (1, 1) => (1, 0, 2),
                (0, 2) => (1, 2, 0),
                (1, 2) => (0, 2, 0),
                _ => unreachable!("triangle side out of range"),
            },
        }
    }

    /// The side that defines a leaf's positive orientation: the first
    /// `(triangle, side)` carrying it. A positively oriented leaf runs along
    /// this side, so that the side's triangle lies on its left.
    pub fn reference_side(&self, leaf: usize) -> (usize, usize) {
        (0..2)
            .flat_map(|t| (0..3).map(move |s| (t, s)))
            .find(|&(t, s)| self.gluing(t, s).2 == leaf)
            .expect("every leaf borders some triangle")
    }

    /// Sign of the leaf orientation relative to the direction of side `s` of
    /// triangle `t`.
    pub fn orientation_along(&self, t: usize, s: usize) -> i8 {
        let leaf = self.gluing(t, s).2;
        let o = self.leaf_orientations[leaf];
        if self.reference_side(leaf) == (t, s) {
            o
        } else {
            -o
        }
    }

    /// The first corner (in triangle, then corner order) at a boundary.
    pub fn first_corner(&self, boundary: usize) -> (usize, usize) {
        let c = self.corners();
        (0..2)
            .flat_map(|t| (0..3).map(move |k| (t, k)))
            .find(|&(t, k)| c[t][k] == boundary)
            .expect("every boundary has a corner")
    }

    /// Corners at `boundary` in the order met by repeatedly crossing the
    /// side leaving the current corner, starting from [`first_corner`].
    ///
    /// [`first_corner`]: Self::first_corner
    pub fn fan(&self, boundary: usize) -> Vec<FanStep> {
        let start = self.first_corner(boundary);
        let (mut t, mut c) = start;
        let mut out = Vec::new();
        loop {
            let (t2, s2, leaf) = self.gluing(t, c);
            // Side c leaves the boundary vertex, so the leaf points toward
            // the boundary when its orientation opposes the side.
            let toward_boundary = self.orientation_along(t, c) < 0;
            out.push(FanStep { triangle: t, corner: c, leaf, toward_boundary });
            t = t2;
            c = (s2 + 1) % 3;
            if (t, c) == start {
                return out;
            }
        }
    }

    /// Whether triangle `t` has a corner at `boundary`.
    pub fn has_corner(&self, t: usize, boundary: usize) -> bool {
        self.corners()[t].contains(&boundary)
    }
}

/// Shears of the three leaves, in leaf order.
pub type PantsShearing = [f64; 3];

/// Sum of shears over the leaf ends at `boundary` (a leaf with both ends at
/// the boundary counts twice).
pub fn end_sum(lam: &PantsLamination, s: &PantsShearing, boundary: usize) -> f64 {
    lam.fan(boundary).iter().map(|f| s[f.leaf]).sum()
}

/// Per boundary `i`: `sgn(C_i) · (end-counted shear sum) > 0`. For type I
/// this reads `sgn(C_i)(x_ij + x_ik) > 0`.
pub fn shear_violations(lam: &PantsLamination, s: &PantsShearing) -> Vec<String> {
    let mut out = Vec::new();
    if s.iter().any(|x| !x.is_finite()) {
        out.push("shears must be finite".to_string());
        return out;
    }
    for b in 0..3 {
        let sum = end_sum(lam, s, b);
        let sign = f64::from(lam.spiral_signs[b]);
        if sign * sum <= 0.0 {
            out.push(format!(
                "boundary {}: sgn {:+} times shear sum {} is not positive",
                b + 1,
                lam.spiral_signs[b],
                sum
            ));
        }
    }
    out
}

pub fn validate_shears(lam: &PantsLamination, s: &PantsShearing) -> bool {
    shear_violations(lam, s).is_empty()
}

/// Boundary lengths `|end_sum|` after validating the shears.
pub fn boundary_lengths(lam: &PantsLamination, s: &PantsShearing) -> Result<[f64; 3]> {
    let v = shear_violations(lam, s);
    if !v.is_empty() {
        return Err(Error::InvalidShears(v.join("; ")));
    }
    Ok([0, 1, 2].map(|b| end_sum(lam, s, b).abs()))
}

/// The shears whose signed end sums are `sgn(C_b) · len[b]`.
pub fn shears_for_lengths(lam: &PantsLamination, len: [f64; 3]) -> PantsShearing {
    let s = lam.spiral_signs().map(f64::from);
    let l = [s[0] * len[0], s[1] * len[1], s[2] * len[2]];
    match lam.kind() {
        LaminationType::I => [
            (l[0] + l[1] - l[2]) / 2.0,
            (l[1] + l[2] - l[0]) / 2.0,
            (l[2] + l[0] - l[1]) / 2.0,
        ],
        LaminationType::II => {
            let i = lam.distinguished();
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            [(l[i] - l[j] - l[k]) / 2.0, l[j], l[k]]
        }
    }
}
