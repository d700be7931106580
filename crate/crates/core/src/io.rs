//! JSON formats for forms, cells, stars and reports. Rationals are written
//! as `"p/q"` strings; integer entries may also be given as JSON numbers.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::catalog::NamedCone;
use crate::delaunay::{DelaunayCell, DelaunayStar};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, LatticeVector, QuadraticForm, Rational};
use crate::faces::{classify_type, FaceOrbits, KFace};
use crate::generation::{GenerationReport, Nilpotency};
use crate::verify::FusionReport;

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn form_rows(form: &QuadraticForm) -> Vec<Vec<String>> {
    form.to_rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect()
}

fn entry(v: &Value, i: usize, j: usize) -> Result<Rational> {
    let at = || format!("entry ({}, {})", i + 1, j + 1);
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| Error::Parse(format!("{}: {e}", at()))),
        Value::Number(n) => n
            .as_i64()
            .map(|x| Rational::from_integer(x.into()))
            .ok_or_else(|| Error::Parse(format!("{}: {n} is not an integer", at()))),
        other => Err(Error::Parse(format!("{}: expected a rational, found {other}", at()))),
    }
}

fn form_from_value(v: &Value) -> Result<QuadraticForm> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("a form is a list of rows".into()))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse(format!("row {} is not a list", i + 1)))?;
        out.push(row.iter().enumerate().map(|(j, x)| entry(x, i, j)).collect::<Result<Vec<_>>>()?);
    }
    QuadraticForm::from_rows(out)
}

/// A form as a JSON matrix of `"p/q"` strings.
pub fn form_to_json(form: &QuadraticForm) -> String {
    to_pretty(&form_rows(form))
}

pub fn form_from_json(text: &str) -> Result<QuadraticForm> {
    let v: Value = serde_json::from_str(text).map_err(parse_err)?;
    form_from_value(&v)
}

#[derive(Serialize, Deserialize)]
struct CellRecord {
    vertices: Vec<Vec<i64>>,
}

impl From<&DelaunayCell> for CellRecord {
    fn from(c: &DelaunayCell) -> Self {
        Self {
            vertices: c.vertices.iter().map(|v| v.0.clone()).collect(),
        }
    }
}

fn cell_from_record(r: CellRecord) -> Result<DelaunayCell> {
    let Some(g) = r.vertices.first().map(Vec::len) else {
        return Err(Error::Parse("a cell needs at least one vertex".into()));
    };
    if let Some(v) = r.vertices.iter().find(|v| v.len() != g) {
        return Err(Error::DimensionMismatch {
            expected: g,
            found: v.len(),
        });
    }
    Ok(DelaunayCell::new(r.vertices.into_iter().map(LatticeVector).collect()))
}

/// `{"vertices": [[...], ...]}` with sorted vertices.
pub fn cell_to_json(cell: &DelaunayCell) -> String {
    to_pretty(&CellRecord::from(cell))
}

pub fn cell_from_json(text: &str) -> Result<DelaunayCell> {
    cell_from_record(serde_json::from_str(text).map_err(parse_err)?)
}

/// A list of cells, given either as a bare list or as `{"cells": [...]}`.
pub fn cells_from_json(text: &str) -> Result<Vec<DelaunayCell>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Cells {
        Bare(Vec<CellRecord>),
        Wrapped { cells: Vec<CellRecord> },
    }
    let cells = match serde_json::from_str(text).map_err(parse_err)? {
        Cells::Bare(c) => c,
        Cells::Wrapped { cells } => cells,
    };
    cells.into_iter().map(cell_from_record).collect()
}

pub fn cells_to_json(cells: &[DelaunayCell]) -> String {
    to_pretty(&cells.iter().map(CellRecord::from).collect::<Vec<_>>())
}

#[derive(Serialize, Deserialize)]
struct StarRecord {
    form: Value,
    cells: Vec<CellRecord>,
    orbit_reps: Vec<CellRecord>,
}

/// `{"form", "cells", "orbit_reps"}`; with `mod_translation` the cells are
/// the orbit representatives only.
pub fn star_to_json(star: &DelaunayStar, mod_translation: bool) -> String {
    let mut cells: Vec<&DelaunayCell> = if mod_translation {
        star.orbit_reps.iter().collect()
    } else {
        star.cells.iter().collect()
    };
    cells.sort();
    let mut reps: Vec<&DelaunayCell> = star.orbit_reps.iter().collect();
    reps.sort();
    to_pretty(&StarRecord {
        form: serde_json::to_value(form_rows(&star.form)).expect("serializable"),
        cells: cells.into_iter().map(CellRecord::from).collect(),
        orbit_reps: reps.into_iter().map(CellRecord::from).collect(),
    })
}

/// Reads a star file. Centers are not stored; they are recomputed from the
/// form.
pub fn star_from_json(text: &str) -> Result<DelaunayStar> {
    let r: StarRecord = serde_json::from_str(text).map_err(parse_err)?;
    let form = form_from_value(&r.form)?;
    let load = |cs: Vec<CellRecord>| -> Result<Vec<DelaunayCell>> {
        cs.into_iter()
            .map(|c| DelaunayCell::with_form(&form, cell_from_record(c)?.vertices))
            .collect()
    };
    let cells = load(r.cells)?;
    let orbit_reps = load(r.orbit_reps)?;
    Ok(DelaunayStar {
        form,
        cells,
        orbit_reps,
    })
}

#[derive(Serialize, Deserialize)]
struct GenerationRecord {
    totally_generating: bool,
    witness: Option<Vec<i64>>,
    pieces: Vec<CellRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    simplicially_generating: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    failure: Option<String>,
    nilpotency: Nilpotency,
}

pub fn generation_to_json(report: &GenerationReport) -> String {
    to_pretty(&GenerationRecord {
        totally_generating: report.totally_generating,
        witness: report.witness.as_ref().map(|w| w.0.clone()),
        pieces: report.pieces.iter().map(CellRecord::from).collect(),
        simplicially_generating: report.simplicially_generating,
        failure: report.failure.clone(),
        nilpotency: report.nilpotency(),
    })
}

pub fn generation_from_json(text: &str) -> Result<GenerationReport> {
    let r: GenerationRecord = serde_json::from_str(text).map_err(parse_err)?;
    Ok(GenerationReport {
        totally_generating: r.totally_generating,
        witness: r.witness.map(LatticeVector),
        pieces: r.pieces.into_iter().map(cell_from_record).collect::<Result<_>>()?,
        simplicially_generating: r.simplicially_generating,
        failure: r.failure,
    })
}

/// One facet of the perfect cone in a face report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRecord {
    /// `[p, q, "+"]` for `(y_p + y_q)^2`, `"-"` for the difference.
    pub dropped: Vec<(usize, usize, String)>,
    pub shape: String,
    pub orbit: String,
    #[serde(rename = "type")]
    pub voronoi_type: String,
}

pub fn face_records(faces: &[KFace], orbits: &FaceOrbits) -> Vec<FaceRecord> {
    faces
        .iter()
        .map(|f| FaceRecord {
            dropped: f.dropped.iter().map(|s| (s.p, s.q, s.sign().to_string())).collect(),
            shape: f.shape().to_string(),
            orbit: orbits
                .orbit_of(&f.dropped)
                .map_or_else(|| "none".into(), |o| o.to_string()),
            voronoi_type: classify_type(f, orbits).map_or_else(|| "none".into(), |t| t.to_string()),
        })
        .collect()
}

pub fn faces_to_json(records: &[FaceRecord]) -> String {
    to_pretty(&records)
}

pub fn faces_from_json(text: &str) -> Result<Vec<FaceRecord>> {
    serde_json::from_str(text).map_err(parse_err)
}

#[derive(Serialize)]
struct FusionRecord {
    coarse: CellRecord,
    pieces: Vec<CellRecord>,
}

#[derive(Serialize)]
struct FusionReportRecord {
    coarse_cone: String,
    fine_cone: String,
    fusions: Vec<FusionRecord>,
    unchanged: Vec<CellRecord>,
    volume_conserved: bool,
    problems: Vec<String>,
}

pub fn fusion_to_json(report: &FusionReport) -> String {
    to_pretty(&FusionReportRecord {
        coarse_cone: report.coarse_cone.clone(),
        fine_cone: report.fine_cone.clone(),
        fusions: report
            .fusions
            .iter()
            .map(|f| FusionRecord {
                coarse: (&f.coarse).into(),
                pieces: f.pieces.iter().map(CellRecord::from).collect(),
            })
            .collect(),
        unchanged: report.unchanged.iter().map(CellRecord::from).collect(),
        volume_conserved: report.volume_conserved,
        problems: report.problems.clone(),
    })
}

#[derive(Serialize)]
struct GeneratorRecord {
    label: String,
    matrix: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct ConeRecord {
    name: String,
    rank: usize,
    dimension: usize,
    voronoi: bool,
    generators: Vec<GeneratorRecord>,
}

/// A catalog entry with labeled generators.
pub fn cone_to_json(cone: &NamedCone) -> String {
    to_pretty(&ConeRecord {
        name: cone.name.clone(),
        rank: cone.rank,
        dimension: cone.dimension(),
        voronoi: cone.voronoi,
        generators: cone
            .labels
            .iter()
            .zip(&cone.generators)
            .map(|(l, g)| GeneratorRecord {
                label: l.clone(),
                matrix: form_rows(g),
            })
            .collect(),
    })
}

/// Any serializable report, pretty printed with a trailing newline.
pub fn report_to_json<T: Serialize>(value: &T) -> String {
    to_pretty(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::delaunay_star;
    use crate::exact::ratio;

    #[test]
    fn form_accepts_integers_and_fractions() {
        let f = form_from_json(r#"[[2, "-1/2"], ["-1/2", "3"]]"#).unwrap();
        assert_eq!(f.entry(0, 1), &ratio(-1, 2));
        assert_eq!(form_from_json(&form_to_json(&f)).unwrap(), f);
        assert!(form_from_json("[[1, 2.5], [2.5, 1]]").is_err());
        assert!(form_from_json("[[1, 2], [3, 1]]").is_err());
        let e = form_from_json("[[1, 0],\n [0 1]]").unwrap_err().to_string();
        assert!(e.contains("line 2"), "{e}");
    }

    #[test]
    fn star_round_trip() {
        let star = delaunay_star(&QuadraticForm::from_i64(&[&[2, -1], &[-1, 2]])).unwrap();
        let text = star_to_json(&star, false);
        let back = star_from_json(&text).unwrap();
        assert_eq!(star_to_json(&back, false), text);
        assert_eq!(back.cells.len(), 6);
    }

    #[test]
    fn cells_in_both_shapes() {
        let a = cells_from_json(r#"[{"vertices": [[0, 0], [1, 0], [0, 1]]}]"#).unwrap();
        let b = cells_from_json(r#"{"cells": [{"vertices": [[1, 0], [0, 0], [0, 1]]}]}"#).unwrap();
        assert_eq!(a, b);
        assert!(cells_from_json(r#"[{"vertices": [[0, 0], [1]]}]"#).is_err());
    }
}
