//! Curve, CNF and script file formats.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use frechet_edit_core::hardness::SatInstance;
use frechet_edit_core::script::{EditOp, EditScript};
use frechet_edit_core::{Curve, Point};
use serde::{Deserialize, Serialize};

/// A malformed input file. `line` is 1-based; 0 when no line applies.
#[derive(Debug, thiserror::Error)]
#[error("{}:{line}: {msg}", path.display())]
pub struct FormatError {
    pub path: PathBuf,
    pub line: usize,
    pub msg: String,
}

fn bad(path: &Path, line: usize, msg: impl Into<String>) -> FormatError {
    FormatError {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveJson {
    dim: usize,
    vertices: Vec<Vec<f64>>,
}

/// Reads a curve; `.json` files use the JSON format, everything else CSV.
pub fn read_curve(path: &Path) -> Result<Curve, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(path, 0, e.to_string()))?;
    if path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
    {
        parse_curve_json(&text, path)
    } else {
        parse_curve_csv(&text, path)
    }
}

/// One vertex per line, comma-separated. Blank lines and `#` comments are skipped.
pub fn parse_curve_csv(text: &str, path: &Path) -> Result<Curve, FormatError> {
    let mut verts = Vec::new();
    let mut dim = None;
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let coords = body
            .split(',')
            .map(|f| {
                let f = f.trim();
                f.parse::<f64>()
                    .map_err(|_| bad(path, line, format!("not a number: {f:?}")))
            })
            .collect::<Result<Vec<f64>, _>>()?;
        verts.push(vertex(coords, &mut dim, path, line)?);
    }
    finish(verts, path)
}

pub fn parse_curve_json(text: &str, path: &Path) -> Result<Curve, FormatError> {
    let doc: CurveJson =
        serde_json::from_str(text).map_err(|e| bad(path, e.line(), e.to_string()))?;
    if doc.dim == 0 {
        return Err(bad(path, 0, "dim must be positive"));
    }
    let mut dim = Some(doc.dim);
    let mut verts = Vec::with_capacity(doc.vertices.len());
    for (i, v) in doc.vertices.into_iter().enumerate() {
        let line = json_line(text, i);
        verts.push(vertex(v, &mut dim, path, line)?);
    }
    finish(verts, path)
}

// Line of the i-th vertex array in a JSON curve file.
fn json_line(text: &str, i: usize) -> usize {
    let Some(start) = text.find("\"vertices\"") else {
        return 0;
    };
    let mut depth = 0usize;
    let mut seen = 0usize;
    let mut line = 1 + text[..start].matches('\n').count();
    for ch in text[start..].chars() {
        match ch {
            '\n' => line += 1,
            '[' => {
                depth += 1;
                if depth == 2 {
                    if seen == i {
                        return line;
                    }
                    seen += 1;
                }
            }
            ']' => depth = depth.saturating_sub(1),
            _ => {}
        }
    }
    0
}

fn vertex(
    coords: Vec<f64>,
    dim: &mut Option<usize>,
    path: &Path,
    line: usize,
) -> Result<Point, FormatError> {
    match *dim {
        Some(d) if d != coords.len() => {
            return Err(bad(
                path,
                line,
                format!("expected {d} coordinates, found {}", coords.len()),
            ));
        }
        None if coords.is_empty() => return Err(bad(path, line, "vertex without coordinates")),
        _ => *dim = Some(coords.len()),
    }
    Point::try_new(coords).map_err(|e| bad(path, line, e.to_string()))
}

fn finish(verts: Vec<Point>, path: &Path) -> Result<Curve, FormatError> {
    if verts.is_empty() {
        return Err(bad(path, 0, "curve has no vertices"));
    }
    Curve::new(verts).map_err(|e| bad(path, 0, e.to_string()))
}

/// CSV text of a curve, one vertex per line.
pub fn curve_csv(c: &Curve) -> String {
    let mut out = String::new();
    for p in c.vertices() {
        let row: Vec<String> = p.coords().iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

/// DIMACS CNF with exactly three literals per clause.
pub fn parse_cnf(text: &str, path: &Path) -> Result<SatInstance, FormatError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut pending: Vec<i32> = Vec::new();
    let mut pending_line = 0;
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('c') || body.starts_with('%') {
            continue;
        }
        if body.starts_with('p') {
            if header.is_some() {
                return Err(bad(path, line, "second problem line"));
            }
            let f: Vec<&str> = body.split_whitespace().collect();
            if f.len() != 4 || f[0] != "p" || f[1] != "cnf" {
                return Err(bad(path, line, "expected `p cnf <vars> <clauses>`"));
            }
            let v = f[2]
                .parse()
                .map_err(|_| bad(path, line, "bad variable count"))?;
            let c = f[3]
                .parse()
                .map_err(|_| bad(path, line, "bad clause count"))?;
            header = Some((v, c, line));
            continue;
        }
        let Some((v, _, _)) = header else {
            return Err(bad(path, line, "clause before the problem line"));
        };
        for tok in body.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| bad(path, line, format!("bad literal {tok:?}")))?;
            if pending.is_empty() {
                pending_line = line;
            }
            if lit == 0 {
                if pending.len() != 3 {
                    return Err(bad(
                        path,
                        pending_line,
                        format!("clause has {} literals, need 3", pending.len()),
                    ));
                }
                clauses.push([pending[0], pending[1], pending[2]]);
                pending.clear();
            } else {
                if lit.unsigned_abs() as usize > v {
                    return Err(bad(
                        path,
                        line,
                        format!("literal {lit} exceeds {v} variables"),
                    ));
                }
                pending.push(lit);
            }
        }
    }
    let Some((v, c, hline)) = header else {
        return Err(bad(path, 0, "missing `p cnf` line"));
    };
    if !pending.is_empty() {
        return Err(bad(path, pending_line, "clause not terminated by 0"));
    }
    if clauses.len() != c {
        return Err(bad(
            path,
            hline,
            format!("header declares {c} clauses, found {}", clauses.len()),
        ));
    }
    SatInstance::new(v, clauses).map_err(|e| bad(path, hline, e.to_string()))
}

pub fn read_cnf(path: &Path) -> Result<SatInstance, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(path, 0, e.to_string()))?;
    parse_cnf(&text, path)
}

/// One edit in a JSON script. `index` is the deleted vertex for deletes and
/// the insertion position (number of original vertices before it) for inserts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScriptOp {
    pub op: String,
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coords: Option<Vec<f64>>,
}

pub fn script_json(s: &EditScript) -> Vec<ScriptOp> {
    s.ops
        .iter()
        .map(|op| match op {
            EditOp::Delete { index } => ScriptOp {
                op: "delete".into(),
                index: *index,
                coords: None,
            },
            EditOp::Insert { position, point } => ScriptOp {
                op: "insert".into(),
                index: *position,
                coords: Some(point.coords().to_vec()),
            },
        })
        .collect()
}

pub fn script_from_json(ops: &[ScriptOp]) -> anyhow::Result<EditScript> {
    let ops = ops
        .iter()
        .map(|o| match (o.op.as_str(), &o.coords) {
            ("delete", None) => Ok(EditOp::Delete { index: o.index }),
            ("insert", Some(c)) => Ok(EditOp::Insert {
                position: o.index,
                point: Point::try_new(c.clone())?,
            }),
            _ => anyhow::bail!("malformed script entry {o:?}"),
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(EditScript { ops })
}
