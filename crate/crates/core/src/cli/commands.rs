//! The `invariants` and `realize` commands.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::bd::{
    bd_vector, closed_leaf_report, dimension_audit, json_f64, polytope_membership, realize_slice,
    slice_membership, twist_residuals, BDVector, ClosedLeafReport, PolytopeReport, SliceInput,
    VertexConvention, BD_ATOL,
};
use crate::error::Result;
use crate::hyperbolic::ProjPoint;
use crate::pants::{assemble_from_spec, DevelopedSurface, SurfaceSpec};

/// Paths written by a command and whether its checks held.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub files: Vec<PathBuf>,
    pub summary: Vec<String>,
    pub passed: bool,
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn write_outputs(prefix: &Path, report: &Value, v: &BDVector) -> Result<Vec<PathBuf>> {
    let json_path = with_suffix(prefix, "json");
    let csv_path = with_suffix(prefix, "csv");
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    fs::write(&json_path, text)?;
    v.write_csv(fs::File::create(&csv_path)?)?;
    Ok(vec![json_path, csv_path])
}

fn point_json(p: &ProjPoint<f64>) -> Value {
    let (a, b) = p.normalize_float();
    json!([json_f64(a), json_f64(b)])
}

fn closed_leaf_json(r: &ClosedLeafReport) -> Value {
    Value::Array(
        r.entries
            .iter()
            .map(|e| {
                json!({
                    "curve": e.curve,
                    "p": e.p,
                    "R": json_f64(e.right),
                    "L": json_f64(e.left),
                    "length": e.length.map_or(Value::Null, json_f64),
                    "spread": json_f64(e.spread()),
                })
            })
            .collect(),
    )
}

fn polytope_json(r: &PolytopeReport) -> Value {
    json!({"member": r.member, "violations": r.violations})
}

fn surface_json(ds: &DevelopedSurface) -> Value {
    let pants: Vec<Value> = ds
        .pants
        .iter()
        .zip(&ds.topology.pants)
        .map(|(dp, info)| {
            let names = info.lamination.leaf_names();
            let leaves: Vec<Value> = dp
                .leaves
                .iter()
                .zip(&names)
                .zip(&dp.shears)
                .map(|((q, name), s)| {
                    json!({
                        "id": name,
                        "shear": json_f64(*s),
                        "x": point_json(&q.x),
                        "y": point_json(&q.y),
                        "zl": point_json(&q.zl),
                        "zr": point_json(&q.zr),
                    })
                })
                .collect();
            let triangles: Vec<Value> = dp
                .lifts
                .iter()
                .map(|l| {
                    json!({
                        "id": format!("T{}", l.triangle),
                        "vertices": l.pos.iter().map(point_json).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({"id": info.id, "leaves": leaves, "triangles": triangles})
        })
        .collect();
    let curves: Vec<Value> = ds
        .curves
        .iter()
        .map(|c| {
            let q = c.quadruple();
            json!({
                "id": c.id,
                "length": json_f64(c.length),
                "twist": json_f64(c.twist),
                "gluing_invariant": q.invariant().map_or(Value::Null, json_f64),
                "x": point_json(&q.x),
                "y": point_json(&q.y),
                "zl": point_json(&q.zl),
                "zr": point_json(&q.zr),
            })
        })
        .collect();
    json!({"genus": ds.topology.genus, "pants": pants, "curves": curves})
}

/// Computes every invariant of the surface described by `input`.
pub fn cmd_invariants(input: &Path, n: usize, out: &Path, conv: VertexConvention) -> Result<CommandOutput> {
    let spec = SurfaceSpec::from_json(&fs::read_to_string(input)?)?;
    let ds = assemble_from_spec(&spec)?;
    let v = bd_vector(&ds, n)?;
    let closed = closed_leaf_report(&v, &ds, conv)?;
    let polytope = polytope_membership(&v, &ds.topology, conv)?;
    let slice = slice_membership(&v);
    let audit = dimension_audit(&ds.topology, n, conv)?;
    let spread = closed.max_spread();
    let report = json!({
        "n": n,
        "coordinates": v.len(),
        "bd_vector": v.to_json(),
        "closed_leaf": closed_leaf_json(&closed),
        "closed_leaf_max_spread": json_f64(spread),
        "polytope": polytope_json(&polytope),
        "slice_member": slice,
        "dimensions": audit,
        "surface": surface_json(&ds),
    });
    let files = write_outputs(out, &report, &v)?;
    Ok(CommandOutput {
        files,
        summary: vec![
            format!("coordinates: {}", v.len()),
            format!("polytope member: {}", polytope.member),
            format!("slice member: {slice}"),
            format!("closed-leaf max spread: {}", crate::multilinear::format_f64(spread)),
        ],
        passed: polytope.member && slice && spread <= BD_ATOL,
    })
}

/// Realizes a slice point and reports the round trip.
pub fn cmd_realize(input: &Path, n: usize, out: &Path) -> Result<CommandOutput> {
    let slice_input = SliceInput::from_json(&fs::read_to_string(input)?)?;
    let (topology, sp) = slice_input.resolve()?;
    let target = sp.to_bd_vector(&topology, n)?;
    let ds = realize_slice(&sp, &topology)?;
    let v = bd_vector(&ds, n)?;
    let deviation = v.max_deviation(&target)?;
    let residuals = twist_residuals(&ds, &sp)?;
    let worst_residual = residuals.iter().copied().fold(0.0, f64::max);
    let report = json!({
        "n": n,
        "max_deviation": json_f64(deviation),
        "twist_residuals": topology
            .curves
            .iter()
            .zip(&residuals)
            .map(|(c, r)| (c.id.clone(), json_f64(*r)))
            .collect::<serde_json::Map<_, _>>(),
        "bd_vector": v.to_json(),
        "surface": surface_json(&ds),
    });
    let files = write_outputs(out, &report, &v)?;
    Ok(CommandOutput {
        files,
        summary: vec![
            format!("coordinates: {}", v.len()),
            format!("max round-trip deviation: {}", crate::multilinear::format_f64(deviation)),
            format!("max twist residual: {}", crate::multilinear::format_f64(worst_residual)),
        ],
        passed: deviation < BD_ATOL && worst_residual < BD_ATOL,
    })
}
