//! Text formats for networks, point clouds, diagrams, curves and complexes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::Value;
use toponet_core::filtration::BettiCurve;
use toponet_core::network::{Hypergraph, PointCloud};
use toponet_core::simplicial::{FilteredComplex, SimplicialComplex};
use toponet_core::summaries::{ImageWeight, PersistenceImage};
use toponet_core::{Convention, PersistenceDiagram, PersistencePair, WeightedNetwork};

use crate::error::{Error, Result};
use crate::fmt::g17;

/// Symmetry tolerance applied when reading dense matrices.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NetworkFormat {
    /// `p` lines of `p` comma-separated weights.
    Dense,
    /// `i<TAB>j<TAB>w` lines with 0-based indices.
    EdgeList,
    /// Edge list if the first data line contains a tab, dense otherwise.
    #[default]
    Auto,
}

pub fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(path.display().to_string(), e))
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(path.display().to_string(), e))
}

/// Non-empty lines that are not `#` comments, with 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_field(src: &str, line: usize, column: usize, field: &str) -> Result<f64> {
    let t = field.trim();
    t.parse::<f64>().map_err(|_| Error::Parse {
        file: src.to_string(),
        line,
        column,
        msg: format!("cannot parse {t:?} as a number"),
    })
}

fn parse_index(src: &str, line: usize, column: usize, field: &str) -> Result<usize> {
    let t = field.trim();
    t.parse::<usize>().map_err(|_| Error::Parse {
        file: src.to_string(),
        line,
        column,
        msg: format!("cannot parse {t:?} as a node index"),
    })
}

/// Rows of comma-separated numbers, all of the same width.
pub fn parse_table(src: &str, text: &str) -> Result<(usize, Vec<f64>)> {
    let mut width = None;
    let mut data = Vec::new();
    for (line, l) in data_lines(text) {
        let fields: Vec<&str> = l.split(',').collect();
        match width {
            None => width = Some(fields.len()),
            Some(w) if w != fields.len() => {
                return Err(Error::Parse {
                    file: src.to_string(),
                    line,
                    column: fields.len().min(w) + 1,
                    msg: format!("expected {w} fields, found {}", fields.len()),
                })
            }
            _ => {}
        }
        for (c, f) in fields.iter().enumerate() {
            data.push(parse_field(src, line, c + 1, f)?);
        }
    }
    Ok((width.unwrap_or(0), data))
}

/// Square comma-separated matrix, returned row-major with its order.
pub fn parse_square(src: &str, text: &str) -> Result<(usize, Vec<f64>)> {
    let (p, data) = parse_table(src, text)?;
    if p == 0 {
        return Err(Error::Data(format!("{src}: no data")));
    }
    if data.len() != p * p {
        return Err(Error::Data(format!(
            "{src}: expected {p} rows of {p} fields, found {} rows",
            data.len() / p
        )));
    }
    Ok((p, data))
}

pub fn parse_dense(src: &str, text: &str) -> Result<WeightedNetwork> {
    let (p, data) = parse_square(src, text)?;
    WeightedNetwork::from_dense_with_tolerance(p, &data, SYMMETRY_TOLERANCE)
        .map_err(|e| Error::Data(format!("{src}: {e}")))
}

/// Edge list; the node count is `nodes` if given, else one past the largest
/// index.
pub fn parse_edge_list(src: &str, text: &str, nodes: Option<usize>) -> Result<WeightedNetwork> {
    let mut edges = Vec::new();
    let mut seen = std::collections::HashMap::new();
    for (line, l) in data_lines(text) {
        let fields: Vec<&str> = l.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                file: src.to_string(),
                line,
                column: 1,
                msg: format!("expected 3 tab-separated fields, found {}", fields.len()),
            });
        }
        let i = parse_index(src, line, 1, fields[0])?;
        let j = parse_index(src, line, 2, fields[1])?;
        let w = parse_field(src, line, 3, fields[2])?;
        if let Some(first) = seen.insert((i.min(j), i.max(j)), line) {
            return Err(Error::Parse {
                file: src.to_string(),
                line,
                column: 1,
                msg: format!("duplicate edge ({i}, {j}), first given on line {first}"),
            });
        }
        edges.push((i, j, w));
    }
    let p = nodes.unwrap_or_else(|| edges.iter().map(|e| e.0.max(e.1) + 1).max().unwrap_or(0));
    WeightedNetwork::from_edges(p, edges).map_err(|e| Error::Data(format!("{src}: {e}")))
}

pub fn parse_network(
    src: &str,
    text: &str,
    format: NetworkFormat,
    nodes: Option<usize>,
) -> Result<WeightedNetwork> {
    let format = match format {
        NetworkFormat::Auto => match data_lines(text).next() {
            Some((_, l)) if l.contains('\t') => NetworkFormat::EdgeList,
            _ => NetworkFormat::Dense,
        },
        f => f,
    };
    match format {
        NetworkFormat::EdgeList => parse_edge_list(src, text, nodes),
        _ => parse_dense(src, text),
    }
}

pub fn load_network(
    path: &Path,
    format: NetworkFormat,
    nodes: Option<usize>,
    convention: Convention,
) -> Result<WeightedNetwork> {
    let text = read_to_string(path)?;
    Ok(parse_network(&path.display().to_string(), &text, format, nodes)?.with_convention(convention))
}

pub fn write_dense(net: &WeightedNetwork) -> String {
    let p = net.p();
    let mut out = String::new();
    for i in 0..p {
        let row: Vec<String> = (0..p).map(|j| g17(net.weight(i, j))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_edge_list(net: &WeightedNetwork) -> String {
    let mut out = String::new();
    for e in net.edges() {
        let _ = writeln!(out, "{}\t{}\t{}", e.i, e.j, g17(e.w));
    }
    out
}

/// One point per line, coordinates separated by commas.
pub fn parse_points(src: &str, text: &str) -> Result<PointCloud> {
    let (dim, coords) = parse_table(src, text)?;
    PointCloud::new(dim, coords).map_err(|e| Error::Data(format!("{src}: {e}")))
}

/// Numbers separated by commas or newlines.
pub fn parse_signal(src: &str, text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (line, l) in data_lines(text) {
        for (c, f) in l.split(',').enumerate() {
            out.push(parse_field(src, line, c + 1, f)?);
        }
    }
    Ok(out)
}

/// Vertices by rows, hyperedges by columns, 0/1 entries.
pub fn parse_incidence(src: &str, text: &str) -> Result<Hypergraph> {
    let (m, data) = parse_table(src, text)?;
    let n = data.len().checked_div(m).unwrap_or(0);
    let mut cells = Vec::with_capacity(data.len());
    for (k, &x) in data.iter().enumerate() {
        if x != 0.0 && x != 1.0 {
            return Err(Error::Data(format!(
                "{src}: entry ({}, {}) = {x} is not 0 or 1",
                k / m,
                k % m
            )));
        }
        cells.push(x as u8);
    }
    Hypergraph::new(n, m, &cells).map_err(|e| Error::Data(format!("{src}: {e}")))
}

/// `epsilon,betti` rows. The first row holds from `-inf`; each later row
/// gives the value on the open interval from its epsilon to the next.
pub fn write_betti_curve(curve: &BettiCurve) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "-inf,{}", curve.initial());
    for (x, v) in curve.breakpoints().iter().zip(&curve.values()[1..]) {
        let _ = writeln!(out, "{},{v}", g17(*x));
    }
    out
}

/// `epsilon,betti` sampled at the given points.
pub fn write_betti_samples(curve: &BettiCurve, grid: &[f64]) -> String {
    let mut out = String::new();
    for &x in grid {
        let _ = writeln!(out, "{},{}", g17(x), curve.at(x));
    }
    out
}

fn json_number(x: f64) -> String {
    if x.is_finite() {
        g17(x)
    } else {
        format!("\"{}\"", g17(x))
    }
}

/// `{"dim":k,"points":[[b,d],...]}` on one line. Infinite values are
/// written as the strings `"inf"` and `"-inf"`.
pub fn write_diagram(pd: &PersistenceDiagram) -> String {
    let pts: Vec<String> = pd
        .points
        .iter()
        .map(|x| format!("[{},{}]", json_number(x.birth), json_number(x.death)))
        .collect();
    format!("{{\"dim\":{},\"points\":[{}]}}", pd.dim, pts.join(","))
}

fn value_f64(v: &Value) -> Option<f64> {
    match v {
        Value::Number(n) => n.as_f64(),
        Value::String(s) => match s.as_str() {
            "inf" => Some(f64::INFINITY),
            "-inf" => Some(f64::NEG_INFINITY),
            _ => None,
        },
        _ => None,
    }
}

pub fn parse_diagram_value(src: &str, v: &Value) -> Result<PersistenceDiagram> {
    let bad = |what: &str| Error::Data(format!("{src}: diagram {what}"));
    let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("lacks an integer \"dim\""))?;
    let pts = v.get("points").and_then(Value::as_array).ok_or_else(|| bad("lacks \"points\""))?;
    let mut points = Vec::with_capacity(pts.len());
    for p in pts {
        let pair = p.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("point is not a pair"))?;
        let b = value_f64(&pair[0]).ok_or_else(|| bad("birth is not a number"))?;
        let d = value_f64(&pair[1]).ok_or_else(|| bad("death is not a number"))?;
        points.push(PersistencePair::new(b, d));
    }
    Ok(PersistenceDiagram::new(dim as usize, points))
}

/// Diagrams, one JSON object per line.
pub fn parse_diagrams(src: &str, text: &str) -> Result<Vec<PersistenceDiagram>> {
    let mut out = Vec::new();
    for (line, l) in data_lines(text) {
        let v: Value = serde_json::from_str(l).map_err(|e| Error::Parse {
            file: src.to_string(),
            line,
            column: e.column(),
            msg: e.to_string(),
        })?;
        out.push(parse_diagram_value(src, &v)?);
    }
    Ok(out)
}

/// One-line `#` header with grid metadata, then `ny` rows of `nx` values.
/// Row `r` is the `r`-th death band counted from `y_min`.
pub fn write_image(img: &PersistenceImage) -> String {
    let g = &img.grid;
    let weight = match img.weight {
        ImageWeight::Uniform => "uniform",
        ImageWeight::Linear => "linear",
        ImageWeight::Exponential => "exponential",
    };
    let mut out = format!(
        "# x_min={},x_max={},y_min={},y_max={},nx={},ny={},sigma={},weight={weight}\n",
        g17(g.x_min),
        g17(g.x_max),
        g17(g.y_min),
        g17(g.y_max),
        g.nx,
        g.ny,
        g17(img.sigma)
    );
    for r in 0..g.ny {
        let row: Vec<String> = (0..g.nx).map(|c| g17(img.pixel(r, c))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// `dim,v0 v1 ...,time` lines in filtration order.
pub fn write_complex(fc: &FilteredComplex) -> String {
    let mut entries: Vec<(usize, &[usize], f64)> = fc.entries().collect();
    entries.sort_by(|a, b| a.2.total_cmp(&b.2).then(a.0.cmp(&b.0)));
    let mut out = String::new();
    for (dim, s, t) in entries {
        let verts: Vec<String> = s.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{dim},{},{}", verts.join(" "), g17(t));
    }
    out
}

pub fn parse_complex(src: &str, text: &str) -> Result<FilteredComplex> {
    let mut items = Vec::new();
    for (line, l) in data_lines(text) {
        let fields: Vec<&str> = l.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                file: src.to_string(),
                line,
                column: 1,
                msg: "expected dim,vertices,time".into(),
            });
        }
        let dim = parse_index(src, line, 1, fields[0])?;
        let verts = fields[1]
            .split_whitespace()
            .map(|v| parse_index(src, line, 2, v))
            .collect::<Result<Vec<usize>>>()?;
        if verts.len() != dim + 1 {
            return Err(Error::Parse {
                file: src.to_string(),
                line,
                column: 2,
                msg: format!("a {dim}-simplex needs {} vertices", dim + 1),
            });
        }
        let t = parse_field(src, line, 3, fields[2])?;
        items.push((verts, t));
    }
    FilteredComplex::from_simplices(items).map_err(|e| Error::Data(format!("{src}: {e}")))
}

/// Unfiltered complex: every simplex at time 0.
pub fn parse_plain_complex(src: &str, text: &str) -> Result<SimplicialComplex> {
    Ok(parse_complex(src, text)?.sublevel(f64::INFINITY))
}

/// Square distance matrix with a header row of labels.
pub fn write_distance_matrix(labels: &[String], values: &[f64]) -> String {
    let n = labels.len();
    let mut out = labels.join(",");
    out.push('\n');
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| g17(values[i * n + j])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_distance_matrix(src: &str, text: &str) -> Result<(Vec<String>, Vec<f64>)> {
    let mut lines = data_lines(text);
    let (_, header) = lines.next().ok_or_else(|| Error::Data(format!("{src}: empty")))?;
    let labels: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    let rest: Vec<&str> = lines.map(|(_, l)| l).collect();
    let (n, data) = parse_square(src, &rest.join("\n"))?;
    if n != labels.len() {
        return Err(Error::Data(format!("{src}: {} labels for a {n}×{n} matrix", labels.len())));
    }
    Ok((labels, data))
}
