//! Coefficient triangles as centred text, plain PGM, SVG or JSON.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use crate::fib::{binomial_rows, binomial_rows_mod, fibonomial_rows, fibonomial_rows_mod};
use crate::{Error, Natural, Result, EXACT_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriangleKind {
    Binomial,
    Fibonomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Pgm,
    Svg,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    pub rows: u64,
    /// `None` renders exact values (ascii and json only).
    pub modulus: Option<u64>,
    pub kind: TriangleKind,
    pub format: Format,
    /// Ascii glyph per residue, indexed by residue; must cover `0..modulus`.
    pub palette: Option<Vec<String>>,
    /// Exact renders are refused beyond this many rows.
    pub exact_cap: u64,
}

impl RenderSpec {
    pub fn new(kind: TriangleKind, rows: u64, modulus: Option<u64>, format: Format) -> Self {
        RenderSpec { rows, modulus, kind, format, palette: None, exact_cap: EXACT_CAP }
    }
}

enum Cells {
    Exact(Vec<Vec<Natural>>),
    Residues(u64, Vec<Vec<u64>>),
}

fn cells(spec: &RenderSpec) -> Result<Cells> {
    let rows = spec.rows as usize;
    Ok(match (spec.kind, spec.modulus) {
        (TriangleKind::Fibonomial, Some(m)) => {
            Cells::Residues(m, fibonomial_rows_mod(m)?.take(rows).map(|r| r.entries).collect())
        }
        (TriangleKind::Binomial, Some(m)) => {
            Cells::Residues(m, binomial_rows_mod(m)?.take(rows).map(|r| r.entries).collect())
        }
        (TriangleKind::Fibonomial, None) => Cells::Exact(fibonomial_rows().take(rows).map(|r| r.entries).collect()),
        (TriangleKind::Binomial, None) => Cells::Exact(binomial_rows().take(rows).map(|r| r.entries).collect()),
    })
}

pub fn render(spec: &RenderSpec) -> Result<String> {
    if spec.rows == 0 {
        return Err(Error::Precondition("a triangle needs at least one row".into()));
    }
    if spec.modulus.is_none() {
        if spec.rows > spec.exact_cap {
            return Err(Error::CapExceeded { n: spec.rows, cap: spec.exact_cap });
        }
        if matches!(spec.format, Format::Pgm | Format::Svg) {
            return Err(Error::Precondition("image formats need a modulus".into()));
        }
    }
    let cells = cells(spec)?;
    match spec.format {
        Format::Ascii => ascii(&cells, spec.palette.as_deref()),
        Format::Json => Ok(json_doc(spec, &cells)),
        Format::Pgm | Format::Svg => {
            let Cells::Residues(m, rows) = &cells else { unreachable!() };
            Ok(if spec.format == Format::Pgm { pgm(*m, rows) } else { svg(*m, rows) })
        }
    }
}

fn labels(cells: &Cells, palette: Option<&[String]>) -> Result<Vec<Vec<String>>> {
    match (cells, palette) {
        (Cells::Exact(rows), _) => Ok(rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect()),
        (Cells::Residues(_, rows), None) => {
            Ok(rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect())
        }
        (Cells::Residues(m, rows), Some(glyphs)) => {
            if (glyphs.len() as u64) < *m {
                return Err(Error::Precondition(format!("palette has {} glyphs, modulus {m} needs {m}", glyphs.len())));
            }
            Ok(rows.iter().map(|r| r.iter().map(|&v| glyphs[v as usize].clone()).collect()).collect())
        }
    }
}

/// Entries right-aligned in cells of the widest label's width. Cells sit on
/// an even stride so each row can be shifted by exactly half a stride.
fn ascii(cells: &Cells, palette: Option<&[String]>) -> Result<String> {
    let labels = labels(cells, palette)?;
    let width = labels.iter().flatten().map(|l| l.chars().count()).max().unwrap_or(1);
    let stride = if width % 2 == 1 { width + 1 } else { width + 2 };
    let gap = " ".repeat(stride - width);
    let count = labels.len();
    let mut out = String::new();
    for (n, row) in labels.iter().enumerate() {
        let mut line = " ".repeat((count - 1 - n) * stride / 2);
        let body: Vec<String> = row.iter().map(|l| format!("{l:>width$}")).collect();
        line.push_str(&body.join(&gap));
        out.push_str(line.trim_end());
        out.push('\n');
    }
    Ok(out)
}

fn json_doc(spec: &RenderSpec, cells: &Cells) -> String {
    let rows = match cells {
        Cells::Exact(rows) => json!(rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()),
        Cells::Residues(_, rows) => json!(rows),
    };
    let doc = json!({ "kind": spec.kind, "modulus": spec.modulus, "rows": rows });
    format!("{doc}\n")
}

/// Plain (P2) graymap, one pixel per `(n, k)`, `k` across. Residue `r` maps
/// to `255 r / (m - 1)`; cells outside the triangle are white.
fn pgm(m: u64, rows: &[Vec<u64>]) -> String {
    let size = rows.len();
    let mut out = format!("P2\n{size} {size}\n255\n");
    for row in rows {
        let levels = (0..size).map(|k| match row.get(k) {
            Some(&r) => (255 * r as u128 / (m - 1) as u128).to_string(),
            None => "255".to_owned(),
        });
        // Plain PNM lines stay within 70 characters.
        let mut line = String::new();
        for level in levels {
            if !line.is_empty() && line.len() + 1 + level.len() > 70 {
                out.push_str(&line);
                out.push('\n');
                line.clear();
            }
            if !line.is_empty() {
                line.push(' ');
            }
            line.push_str(&level);
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

const VIRIDIS: [(u8, u8, u8); 5] = [(0x44, 0x01, 0x54), (0x3b, 0x52, 0x8b), (0x21, 0x91, 0x8c), (0x5e, 0xc9, 0x62), (0xfd, 0xe7, 0x25)];

/// Colour for a nonzero residue, spread over the viridis ramp.
fn viridis(r: u64, m: u64) -> String {
    let t = if m <= 2 { 0.0 } else { (r - 1) as f64 / (m - 2) as f64 };
    let x = t * (VIRIDIS.len() - 1) as f64;
    let i = (x.floor() as usize).min(VIRIDIS.len() - 2);
    let f = x - i as f64;
    let lerp = |a: u8, b: u8| (a as f64 + (b as f64 - a as f64) * f).round() as u8;
    let (a, b) = (VIRIDIS[i], VIRIDIS[i + 1]);
    format!("#{:02x}{:02x}{:02x}", lerp(a.0, b.0), lerp(a.1, b.1), lerp(a.2, b.2))
}

/// Centred triangle of unit squares; zero residues are left out.
fn svg(m: u64, rows: &[Vec<u64>]) -> String {
    const CELL: u64 = 10;
    let size = rows.len() as u64 * CELL;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(out, r#"<rect width="{size}" height="{size}" fill="white"/>"#);
    let count = rows.len() as u64;
    for (n, row) in rows.iter().enumerate() {
        let indent = (count - 1 - n as u64) * CELL / 2;
        for (k, &r) in row.iter().enumerate() {
            if r == 0 {
                continue;
            }
            let x = indent + k as u64 * CELL;
            let y = n as u64 * CELL;
            let _ = writeln!(out, r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{}"/>"#, viridis(r, m));
        }
    }
    out.push_str("</svg>\n");
    out
}
