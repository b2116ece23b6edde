//! FOLD (JSON) import and export.
//!
//! FOLD counts valley folds as positive, so exported fold angles are the
//! negation of this crate's mountain-positive angles.

use serde_json::{json, Map, Number, Value};
use thiserror::Error;

use crate::construct::{FaceEntry, FaceMap, Mode, SquarePos};
use crate::pattern::{CreasePattern, FoldAngle, GridPoint, ValidationReport};
use crate::polycube::{Dir, Face};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FoldExportOptions {
    /// Also emit the paper boundary as `B` edges.
    pub include_border: bool,
}

/// A parsed FOLD frame with the crate's extra fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldDocument {
    pub pattern: CreasePattern,
    pub face_map: Option<FaceMap>,
    pub mode: Option<Mode>,
}

#[derive(Debug, Error)]
pub enum FoldParseError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("missing or malformed field {0}")]
    Field(&'static str),
    #[error("vertex {0} is not on the half-unit lattice")]
    OffLattice(usize),
    #[error("edge {index}: {message}")]
    Edge { index: usize, message: String },
    #[error("pattern is not a tetrakis pattern ({} bad creases)", .0.offending.len())]
    NotTetrakis(ValidationReport),
}

fn half_number(doubled: i32) -> Value {
    if doubled % 2 == 0 {
        Value::Number(Number::from(doubled / 2))
    } else {
        Value::Number(Number::from_f64(f64::from(doubled) / 2.0).expect("finite"))
    }
}

fn face_map_json(fm: &FaceMap) -> Value {
    let entries: Vec<Value> = fm
        .entries
        .iter()
        .map(|(f, e)| {
            json!({
                "face": f.to_string(),
                "row": e.square.row,
                "col": e.square.col,
                "u": e.u_dir.name(),
                "v": e.v_dir.name(),
            })
        })
        .collect();
    json!({ "entries": entries, "seamed": fm.seamed.map(|g| g.to_string()) })
}

/// Serialize a pattern as a FOLD frame. Vertices are sorted by doubled
/// coordinates; edges follow the pattern's canonical order.
pub fn export_fold(c: &CreasePattern, fm: Option<&FaceMap>, mode: Option<Mode>, opts: FoldExportOptions) -> String {
    let mut segments: Vec<(GridPoint, GridPoint, Option<FoldAngle>)> =
        c.creases().map(|cr| (cr.a, cr.b, Some(cr.angle))).collect();
    if opts.include_border {
        let (w, h) = (c.umax(), c.vmax());
        for u in 0..w {
            segments.push((GridPoint::new(u, 0), GridPoint::new(u + 1, 0), None));
            segments.push((GridPoint::new(u, h), GridPoint::new(u + 1, h), None));
        }
        for v in 0..h {
            segments.push((GridPoint::new(0, v), GridPoint::new(0, v + 1), None));
            segments.push((GridPoint::new(w, v), GridPoint::new(w, v + 1), None));
        }
    }
    let mut verts: Vec<GridPoint> = segments.iter().flat_map(|s| [s.0, s.1]).collect();
    verts.sort();
    verts.dedup();
    let index = |p: GridPoint| verts.binary_search(&p).expect("vertex listed");

    let mut doc = Map::new();
    doc.insert("file_spec".into(), json!(1.1));
    doc.insert("file_creator".into(), json!("boxpleat"));
    doc.insert("file_classes".into(), json!(["singleModel"]));
    doc.insert("frame_classes".into(), json!(["creasePattern"]));
    doc.insert("frame_attributes".into(), json!(["2D"]));
    doc.insert(
        "vertices_coords".into(),
        Value::Array(verts.iter().map(|p| Value::Array(vec![half_number(p.u), half_number(p.v)])).collect()),
    );
    doc.insert(
        "edges_vertices".into(),
        Value::Array(segments.iter().map(|s| json!([index(s.0), index(s.1)])).collect()),
    );
    doc.insert(
        "edges_assignment".into(),
        Value::Array(
            segments
                .iter()
                .map(|s| match s.2 {
                    None => json!("B"),
                    Some(a) if a.degrees() > 0 => json!("M"),
                    Some(_) => json!("V"),
                })
                .collect(),
        ),
    );
    doc.insert(
        "edges_foldAngle".into(),
        Value::Array(segments.iter().map(|s| json!(-s.2.map_or(0, FoldAngle::degrees))).collect()),
    );
    doc.insert("boxpleat:width".into(), json!(c.width()));
    doc.insert("boxpleat:height".into(), json!(c.height()));
    if let Some(m) = mode {
        doc.insert("boxpleat:mode".into(), json!(m.name()));
    }
    if let Some(fm) = fm {
        doc.insert("boxpleat:faceMap".into(), face_map_json(fm));
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json values serialize");
    s.push('\n');
    s
}

fn parse_face_map(v: &Value) -> Result<FaceMap, FoldParseError> {
    let bad = || FoldParseError::Field("boxpleat:faceMap");
    let mut fm = FaceMap::default();
    for e in v.get("entries").and_then(Value::as_array).ok_or_else(bad)? {
        let face = e.get("face").and_then(Value::as_str).and_then(Face::parse).ok_or_else(bad)?;
        let int = |k: &str| e.get(k).and_then(Value::as_i64).map(|x| x as i32).ok_or_else(bad);
        let dir = |k: &str| e.get(k).and_then(Value::as_str).and_then(Dir::parse).ok_or_else(bad);
        fm.entries.insert(face, FaceEntry { square: SquarePos::new(int("row")?, int("col")?), u_dir: dir("u")?, v_dir: dir("v")? });
    }
    fm.seamed = match v.get("seamed") {
        None | Some(Value::Null) => None,
        Some(s) => Some(s.as_str().and_then(Face::parse).ok_or_else(bad)?),
    };
    Ok(fm)
}

/// Parse a FOLD frame back into a pattern. Long collinear edges are split
/// into minimal tetrakis edges; `B` and `F` edges are dropped.
pub fn parse_fold(text: &str) -> Result<FoldDocument, FoldParseError> {
    let doc: Value = serde_json::from_str(text)?;
    let coords = doc.get("vertices_coords").and_then(Value::as_array).ok_or(FoldParseError::Field("vertices_coords"))?;
    let mut verts = Vec::with_capacity(coords.len());
    for (i, c) in coords.iter().enumerate() {
        let xy = c.as_array().filter(|a| a.len() >= 2).ok_or(FoldParseError::Field("vertices_coords"))?;
        let mut d = [0i32; 2];
        for k in 0..2 {
            let x = xy[k].as_f64().ok_or(FoldParseError::Field("vertices_coords"))? * 2.0;
            if x.fract() != 0.0 || x.abs() > 1e9 {
                return Err(FoldParseError::OffLattice(i));
            }
            d[k] = x as i32;
        }
        verts.push(GridPoint::new(d[0], d[1]));
    }
    let edges = doc.get("edges_vertices").and_then(Value::as_array).ok_or(FoldParseError::Field("edges_vertices"))?;
    let assignment = doc.get("edges_assignment").and_then(Value::as_array);
    let angles = doc.get("edges_foldAngle").and_then(Value::as_array);

    let dim = |k: &'static str, f: fn(&GridPoint) -> i32| -> Result<i32, FoldParseError> {
        match doc.get(k) {
            Some(v) => v.as_i64().map(|x| x as i32).ok_or(FoldParseError::Field(k)),
            None => Ok((verts.iter().map(f).max().unwrap_or(2) + 1) / 2),
        }
    };
    let width = dim("boxpleat:width", |p| p.u)?.max(1);
    let height = dim("boxpleat:height", |p| p.v)?.max(1);
    let mut pattern = CreasePattern::new(width, height);

    for (index, e) in edges.iter().enumerate() {
        let pair = e.as_array().filter(|a| a.len() == 2).ok_or(FoldParseError::Field("edges_vertices"))?;
        let vi = |k: usize| -> Result<GridPoint, FoldParseError> {
            pair[k]
                .as_u64()
                .and_then(|i| verts.get(i as usize).copied())
                .ok_or(FoldParseError::Edge { index, message: "bad vertex index".into() })
        };
        let (p, q) = (vi(0)?, vi(1)?);
        let letter = assignment.and_then(|a| a.get(index)).and_then(Value::as_str).unwrap_or("U");
        if matches!(letter, "B" | "F") {
            continue;
        }
        let deg = match angles.and_then(|a| a.get(index)).and_then(Value::as_f64) {
            Some(fold) => -fold,
            None => match letter {
                "M" => 180.0,
                "V" => -180.0,
                _ => return Err(FoldParseError::Edge { index, message: format!("no fold angle for assignment {letter:?}") }),
            },
        };
        let angle = FoldAngle::from_degrees(deg as i32)
            .filter(|_| deg.fract() == 0.0)
            .ok_or(FoldParseError::Edge { index, message: format!("angle {deg} is not a lattice angle") })?;
        let (du, dv) = (q.u - p.u, q.v - p.v);
        if !(du == 0 || dv == 0 || du.abs() == dv.abs()) {
            return Err(FoldParseError::Edge { index, message: "edge is not horizontal, vertical or diagonal".into() });
        }
        let steps = du.abs().max(dv.abs());
        let (su, sv) = (du.signum(), dv.signum());
        for s in 0..steps {
            let a = GridPoint::new(p.u + s * su, p.v + s * sv);
            let b = GridPoint::new(a.u + su, a.v + sv);
            pattern.insert_unchecked(a, b, angle);
        }
    }
    let report = pattern.validate_tetrakis();
    if !report.is_valid() {
        return Err(FoldParseError::NotTetrakis(report));
    }
    let face_map = doc.get("boxpleat:faceMap").map(parse_face_map).transpose()?;
    let mode = match doc.get("boxpleat:mode").and_then(Value::as_str) {
        Some(s) => Some(s.parse().map_err(|_| FoldParseError::Field("boxpleat:mode"))?),
        None => None,
    };
    Ok(FoldDocument { pattern, face_map, mode })
}
