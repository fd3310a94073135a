//! JSON description of a closed surface glued from pants, and its
//! validated combinatorial form.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::lamination::{LaminationType, PantsLamination, PantsShearing};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PantsSpec {
    pub id: String,
    #[serde(rename = "type")]
    pub kind: LaminationType,
    /// Distinguished boundary label (1, 2 or 3); type II only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinguished: Option<usize>,
    /// Spiral sign per boundary label.
    pub spiral_signs: BTreeMap<String, i8>,
    /// Orientation per leaf name; missing leaves default to +1.
    #[serde(default)]
    pub leaf_orientations: BTreeMap<String, i8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShortArcSpec {
    pub left_triangle: String,
    pub right_triangle: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub id: String,
    /// `[pants id, boundary label]` on the left, then on the right.
    pub ends: [(String, usize); 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub short_arc: Option<ShortArcSpec>,
}

/// Shears keyed by pants id, then leaf name.
pub type ShearMap = BTreeMap<String, BTreeMap<String, f64>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub genus: usize,
    pub pants: Vec<PantsSpec>,
    pub curves: Vec<CurveSpec>,
    #[serde(default)]
    pub shears: ShearMap,
    /// Twist parameter per curve id; missing curves default to 0.
    #[serde(default)]
    pub twists: BTreeMap<String, f64>,
}

const GENUS_TWO: &str = include_str!("../../data/genus2.json");
const GENUS_TWO_MIXED: &str = include_str!("../../data/genus2_mixed.json");

impl SurfaceSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Two type I pants sharing all three curves, all shears 1/2.
    pub fn genus_two() -> Self {
        Self::from_json(GENUS_TWO).expect("bundled surface parses")
    }

    /// A type I and a type II pants sharing all three curves, with mixed
    /// spiral signs, leaf orientations and twists.
    pub fn genus_two_mixed() -> Self {
        Self::from_json(GENUS_TWO_MIXED).expect("bundled surface parses")
    }

    pub fn topology(&self) -> Result<SurfaceTopology> {
        SurfaceTopology::from_spec(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PantsInfo {
    pub id: String,
    pub lamination: PantsLamination,
}

/// A pants boundary: `(pants index, boundary index)`.
pub type Slot = (usize, usize);

#[derive(Debug, Clone, PartialEq)]
pub struct CurveInfo {
    pub id: String,
    /// Left end, then right end.
    pub ends: [Slot; 2],
    /// Triangle hosting the short-arc endpoint on the left and right.
    pub short_arc: [usize; 2],
}

/// Validated gluing data.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceTopology {
    pub genus: usize,
    pub pants: Vec<PantsInfo>,
    pub curves: Vec<CurveInfo>,
}

fn boundary_index(label: usize, ctx: &str) -> Result<usize> {
    if (1..=3).contains(&label) {
        Ok(label - 1)
    } else {
        Err(Error::Schema(format!("{ctx}: boundary label {label} is not 1, 2 or 3")))
    }
}

fn triangle_index(name: &str, ctx: &str) -> Result<usize> {
    match name {
        "T0" => Ok(0),
        "T1" => Ok(1),
        _ => Err(Error::Schema(format!("{ctx}: triangle {name} is not T0 or T1"))),
    }
}

fn lamination_from_spec(p: &PantsSpec) -> Result<PantsLamination> {
    let ctx = format!("pants {}", p.id);
    let distinguished = match (p.kind, p.distinguished) {
        (LaminationType::I, None) => 0,
        (LaminationType::I, Some(_)) => {
            return Err(Error::Schema(format!("{ctx}: type I takes no distinguished boundary")))
        }
        (LaminationType::II, Some(d)) => boundary_index(d, &ctx)?,
        (LaminationType::II, None) => {
            return Err(Error::Schema(format!("{ctx}: type II needs a distinguished boundary")))
        }
    };
    let mut signs = [0i8; 3];
    for (k, v) in &p.spiral_signs {
        let label: usize = k
            .parse()
            .map_err(|_| Error::Schema(format!("{ctx}: spiral sign key {k} is not a boundary label")))?;
        signs[boundary_index(label, &ctx)?] = *v;
    }
    if let Some(b) = signs.iter().position(|&s| s == 0) {
        return Err(Error::Schema(format!("{ctx}: missing spiral sign for boundary {}", b + 1)));
    }
    let lam = PantsLamination::new(p.kind, distinguished, signs, [1; 3])
        .map_err(|e| Error::Schema(format!("{ctx}: {e}")))?;
    let mut orient = [1i8; 3];
    for (name, v) in &p.leaf_orientations {
        orient[lam.leaf_index(name).map_err(|e| Error::Schema(format!("{ctx}: {e}")))?] = *v;
    }
    lam.with_leaf_orientations(orient)
        .map_err(|e| Error::Schema(format!("{ctx}: {e}")))
}

impl SurfaceTopology {
    pub fn from_spec(spec: &SurfaceSpec) -> Result<Self> {
        if spec.genus < 2 {
            return Err(Error::Schema(format!("genus must be at least 2, got {}", spec.genus)));
        }
        let chi = 2 * spec.genus - 2;
        if spec.pants.len() != chi {
            return Err(Error::Schema(format!(
                "genus {} needs {chi} pants, found {}",
                spec.genus,
                spec.pants.len()
            )));
        }
        if spec.curves.len() != 3 * chi / 2 {
            return Err(Error::Schema(format!(
                "genus {} needs {} curves, found {}",
                spec.genus,
                3 * chi / 2,
                spec.curves.len()
            )));
        }
        let mut pants = Vec::with_capacity(chi);
        let mut ids = BTreeSet::new();
        for p in &spec.pants {
            if !ids.insert(p.id.as_str()) {
                return Err(Error::Schema(format!("duplicate pants id {}", p.id)));
            }
            pants.push(PantsInfo { id: p.id.clone(), lamination: lamination_from_spec(p)? });
        }
        let mut used: BTreeMap<Slot, String> = BTreeMap::new();
        let mut curve_ids = BTreeSet::new();
        let mut curves = Vec::with_capacity(spec.curves.len());
        for c in &spec.curves {
            if !curve_ids.insert(c.id.as_str()) {
                return Err(Error::Schema(format!("duplicate curve id {}", c.id)));
            }
            let mut ends = [(0, 0); 2];
            for (k, (pid, label)) in c.ends.iter().enumerate() {
                let ctx = format!("curve {}", c.id);
                let pi = pants.iter().position(|p| &p.id == pid).ok_or_else(|| {
                    Error::Schema(format!("{ctx}: unknown pants {pid}"))
                })?;
                let slot = (pi, boundary_index(*label, &ctx)?);
                if let Some(other) = used.insert(slot, c.id.clone()) {
                    return Err(Error::Schema(format!(
                        "slot {pid}:{label} is glued by both {other} and {}",
                        c.id
                    )));
                }
                ends[k] = slot;
            }
            let short_arc = match &c.short_arc {
                Some(sa) => [
                    triangle_index(&sa.left_triangle, &c.id)?,
                    triangle_index(&sa.right_triangle, &c.id)?,
                ],
                None => [0, 1].map(|k| {
                    let (pi, b) = ends[k];
                    pants[pi].lamination.first_corner(b).0
                }),
            };
            for k in 0..2 {
                let (pi, b) = ends[k];
                if !pants[pi].lamination.has_corner(short_arc[k], b) {
                    return Err(Error::Schema(format!(
                        "curve {}: triangle T{} of {} does not spiral to boundary {}",
                        c.id,
                        short_arc[k],
                        pants[pi].id,
                        b + 1
                    )));
                }
            }
            curves.push(CurveInfo { id: c.id.clone(), ends, short_arc });
        }
        for (pi, p) in pants.iter().enumerate() {
            for b in 0..3 {
                if !used.contains_key(&(pi, b)) {
                    return Err(Error::Schema(format!("slot {}:{} is not glued", p.id, b + 1)));
                }
            }
        }
        Ok(SurfaceTopology { genus: spec.genus, pants, curves })
    }

    /// `|χ(S)|`, which is also the number of pants.
    pub fn abs_euler_characteristic(&self) -> usize {
        2 * self.genus - 2
    }

    pub fn pants_index(&self, id: &str) -> Result<usize> {
        self.pants
            .iter()
            .position(|p| p.id == id)
            .ok_or_else(|| Error::LabelMismatch(format!("unknown pants {id}")))
    }

    pub fn curve_index(&self, id: &str) -> Result<usize> {
        self.curves
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| Error::UnknownCurve(id.to_string()))
    }

    /// The curve glued to a pants boundary, and whether the pants is on its
    /// right.
    pub fn curve_at(&self, slot: Slot) -> (usize, bool) {
        for (ci, c) in self.curves.iter().enumerate() {
            if c.ends[1] == slot {
                return (ci, true);
            }
            if c.ends[0] == slot {
                return (ci, false);
            }
        }
        unreachable!("validated topology glues every slot")
    }

    /// Shears in pants order; every leaf must be given.
    pub fn shears_from_map(&self, map: &ShearMap) -> Result<Vec<PantsShearing>> {
        for id in map.keys() {
            self.pants_index(id)?;
        }
        self.pants
            .iter()
            .map(|p| {
                let m = map
                    .get(&p.id)
                    .ok_or_else(|| Error::LabelMismatch(format!("no shears for pants {}", p.id)))?;
                let mut s = [f64::NAN; 3];
                for (name, v) in m {
                    s[p.lamination.leaf_index(name)?] = *v;
                }
                if let Some(e) = s.iter().position(|v| v.is_nan()) {
                    return Err(Error::LabelMismatch(format!(
                        "pants {}: missing shear for {}",
                        p.id,
                        p.lamination.leaf_names()[e]
                    )));
                }
                Ok(s)
            })
            .collect()
    }

    pub fn shears_to_map(&self, shears: &[PantsShearing]) -> ShearMap {
        self.pants
            .iter()
            .zip(shears)
            .map(|(p, s)| {
                let names = p.lamination.leaf_names();
                (p.id.clone(), names.into_iter().zip(s.iter().copied()).collect())
            })
            .collect()
    }

    /// Per-curve values in curve order; missing curves default to 0.
    pub fn curve_values(&self, map: &BTreeMap<String, f64>) -> Result<Vec<f64>> {
        for id in map.keys() {
            self.curve_index(id)?;
        }
        Ok(self.curves.iter().map(|c| map.get(&c.id).copied().unwrap_or(0.0)).collect())
    }
}
