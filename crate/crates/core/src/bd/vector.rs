//! The coordinate vector and its layout.

use std::str::FromStr;

use serde_json::{json, Number, Value};

use crate::error::{Error, Result};
use crate::multilinear::format_f64;
use crate::pants::SurfaceTopology;

/// One coordinate of the vector. Indices into the triangle, leaf and curve
/// lists follow [`BDLayout`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coord {
    Tau { triangle: usize, pqr: [usize; 3] },
    Sigma { leaf: usize, p: usize },
    Theta { curve: usize, p: usize },
}

/// Interior lattice points `p, q, r >= 1`, `p + q + r = n`, in lexicographic
/// order.
pub fn interior_triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for p in 1..n {
        for q in 1..n - p {
            let r = n - p - q;
            if r >= 1 {
                out.push([p, q, r]);
            }
        }
    }
    out
}

/// `N = (3|χ|/2)(n−1) + 3|χ|(n−1) + 2|χ|·C(n−1, 2)`.
pub fn expected_len(abs_chi: usize, n: usize) -> usize {
    let m = n - 1;
    3 * abs_chi / 2 * m + 3 * abs_chi * m + 2 * abs_chi * (m * m.saturating_sub(1) / 2)
}

/// Ordering of coordinates: triangles `P/T0, P/T1` in pants order, then the
/// leaves of each pants, then the curves.
#[derive(Debug, Clone, PartialEq)]
pub struct BDLayout {
    pub n: usize,
    pub triangle_ids: Vec<String>,
    pub leaf_ids: Vec<String>,
    pub curve_ids: Vec<String>,
    triples: Vec<[usize; 3]>,
}

impl BDLayout {
    pub fn new(topology: &SurfaceTopology, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfRange(format!("n must be at least 2, got {n}")));
        }
        let mut triangle_ids = Vec::new();
        let mut leaf_ids = Vec::new();
        for p in &topology.pants {
            triangle_ids.push(format!("{}/T0", p.id));
            triangle_ids.push(format!("{}/T1", p.id));
            for name in p.lamination.leaf_names() {
                leaf_ids.push(format!("{}/{}", p.id, name));
            }
        }
        let curve_ids = topology.curves.iter().map(|c| c.id.clone()).collect();
        Ok(BDLayout { n, triangle_ids, leaf_ids, curve_ids, triples: interior_triples(n) })
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        let m = self.n - 1;
        self.triangle_ids.len() * self.triples.len() + (self.leaf_ids.len() + self.curve_ids.len()) * m
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn tau_len(&self) -> usize {
        self.triangle_ids.len() * self.triples.len()
    }

    pub fn index(&self, c: &Coord) -> Result<usize> {
        let m = self.n - 1;
        let bad = || Error::OutOfRange(format!("coordinate {c:?} outside the layout"));
        match *c {
            Coord::Tau { triangle, pqr } => {
                let k = self.triples.iter().position(|t| *t == pqr).ok_or_else(bad)?;
                if triangle >= self.triangle_ids.len() {
                    return Err(bad());
                }
                Ok(triangle * self.triples.len() + k)
            }
            Coord::Sigma { leaf, p } => {
                if leaf >= self.leaf_ids.len() || p == 0 || p > m {
                    return Err(bad());
                }
                Ok(self.tau_len() + leaf * m + p - 1)
            }
            Coord::Theta { curve, p } => {
                if curve >= self.curve_ids.len() || p == 0 || p > m {
                    return Err(bad());
                }
                Ok(self.tau_len() + self.leaf_ids.len() * m + curve * m + p - 1)
            }
        }
    }

    /// Every coordinate, in storage order.
    pub fn coords(&self) -> Vec<Coord> {
        let m = self.n - 1;
        let mut out = Vec::with_capacity(self.len());
        for triangle in 0..self.triangle_ids.len() {
            out.extend(self.triples.iter().map(|&pqr| Coord::Tau { triangle, pqr }));
        }
        for leaf in 0..self.leaf_ids.len() {
            out.extend((1..=m).map(|p| Coord::Sigma { leaf, p }));
        }
        for curve in 0..self.curve_ids.len() {
            out.extend((1..=m).map(|p| Coord::Theta { curve, p }));
        }
        out
    }

    /// `(block, object id, indices)` of a coordinate, as written to CSV.
    pub fn describe(&self, c: &Coord) -> (&'static str, &str, String) {
        match *c {
            Coord::Tau { triangle, pqr: [p, q, r] } => {
                ("tau", &self.triangle_ids[triangle], format!("{p},{q},{r}"))
            }
            Coord::Sigma { leaf, p } => ("sigma", &self.leaf_ids[leaf], p.to_string()),
            Coord::Theta { curve, p } => ("theta", &self.curve_ids[curve], p.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BDVector {
    layout: BDLayout,
    values: Vec<f64>,
}

impl BDVector {
    pub fn new(layout: BDLayout, values: Vec<f64>) -> Result<Self> {
        if values.len() != layout.len() {
            return Err(Error::DimensionMismatch { expected: layout.len(), found: values.len() });
        }
        Ok(BDVector { layout, values })
    }

    pub fn zeros(layout: BDLayout) -> Self {
        let values = vec![0.0; layout.len()];
        BDVector { layout, values }
    }

    pub fn layout(&self) -> &BDLayout {
        &self.layout
    }

    pub fn n(&self) -> usize {
        self.layout.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, c: &Coord) -> Result<f64> {
        Ok(self.values[self.layout.index(c)?])
    }

    pub fn set(&mut self, c: &Coord, v: f64) -> Result<()> {
        let i = self.layout.index(c)?;
        self.values[i] = v;
        Ok(())
    }

    pub fn tau_block(&self) -> &[f64] {
        &self.values[..self.layout.tau_len()]
    }

    /// Largest coordinatewise difference; errors if the layouts differ.
    pub fn max_deviation(&self, other: &BDVector) -> Result<f64> {
        if self.layout != other.layout {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .layout
            .coords()
            .iter()
            .zip(&self.values)
            .map(|(c, v)| {
                let (block, id, idx) = self.layout.describe(c);
                json!({"block": block, "id": id, "indices": idx, "value": json_f64(*v)})
            })
            .collect();
        json!({"n": self.layout.n, "len": self.len(), "entries": rows})
    }

    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["block", "id", "indices", "value"])?;
        for (c, v) in self.layout.coords().iter().zip(&self.values) {
            let (block, id, idx) = self.layout.describe(c);
            out.write_record([block, id, &idx, &format_f64(*v)])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// A JSON number printed with 17 significant digits; non-finite values
/// become `null`.
pub fn json_f64(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Number::from_str(&format_f64(x)).map(Value::Number).unwrap_or(Value::Null)
}
