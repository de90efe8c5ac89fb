//! TRI and OFF surface files.
//!
//! TRI is the native format: a header `TRI <V> <F>`, then `F` lines
//! `a b c` of 0-based vertex ids separated by single spaces. Lines starting
//! with `#` are comments and the file must end with a newline. OFF is read
//! only; coordinates are skipped.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::complex::{SurfaceError, Triangle, TriangulatedSurface};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Tri,
    Off,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "tri" => Ok(Format::Tri),
            "off" => Ok(Format::Off),
            other => Err(format!(
                "unknown surface format '{other}' (expected tri or off)"
            )),
        }
    }
}

impl Format {
    /// Guesses the format from a file extension, defaulting to TRI.
    pub fn from_path(path: &std::path::Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("off") => Format::Off,
            _ => Format::Tri,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("surface is invalid: {0}")]
    Validation(#[from] SurfaceError),
    #[error("{0} is not supported for writing")]
    Unsupported(&'static str),
}

fn parse_error(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_surface(
    bytes: &[u8],
    format: Format,
    boundary_allowed: bool,
) -> Result<TriangulatedSurface, IoError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let line = 1 + bytes[..e.valid_up_to()]
            .iter()
            .filter(|&&b| b == b'\n')
            .count();
        parse_error(line, "file is not valid UTF-8")
    })?;
    let (vertex_count, triangles) = match format {
        Format::Tri => parse_tri(text)?,
        Format::Off => parse_off(text)?,
    };
    Ok(TriangulatedSurface::new(
        vertex_count,
        triangles,
        boundary_allowed,
    )?)
}

pub fn write_surface(s: &TriangulatedSurface, format: Format) -> Result<Vec<u8>, IoError> {
    match format {
        Format::Tri => Ok(write_tri(s).into_bytes()),
        Format::Off => Err(IoError::Unsupported("OFF")),
    }
}

pub fn write_tri(s: &TriangulatedSurface) -> String {
    let mut out = String::with_capacity(16 + 12 * s.triangle_count());
    writeln!(out, "TRI {} {}", s.vertex_count(), s.triangle_count()).expect("writing to a string");
    for [a, b, c] in s.triangles() {
        writeln!(out, "{a} {b} {c}").expect("writing to a string");
    }
    out
}

fn strict_number(field: &str, line: usize) -> Result<usize, IoError> {
    let canonical = !field.is_empty()
        && field.bytes().all(|b| b.is_ascii_digit())
        && (field == "0" || !field.starts_with('0'));
    if !canonical {
        return Err(parse_error(
            line,
            format!("'{field}' is not a decimal vertex id"),
        ));
    }
    field
        .parse()
        .map_err(|_| parse_error(line, format!("'{field}' is out of range")))
}

fn split_fields(content: &str, line: usize, expected: usize) -> Result<Vec<&str>, IoError> {
    let fields: Vec<&str> = content.split(' ').collect();
    if fields.len() != expected || fields.iter().any(|f| f.is_empty()) {
        return Err(parse_error(
            line,
            format!("expected {expected} fields separated by single spaces"),
        ));
    }
    Ok(fields)
}

fn parse_tri(text: &str) -> Result<(usize, Vec<Triangle>), IoError> {
    if !text.ends_with('\n') {
        let line = text.lines().count().max(1);
        return Err(parse_error(line, "missing trailing newline"));
    }
    let mut lines = text
        .split_terminator('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.starts_with('#'));
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing TRI header"))?;
    let fields = split_fields(header, header_line, 3)?;
    if fields[0] != "TRI" {
        return Err(parse_error(header_line, "header must start with 'TRI'"));
    }
    let vertex_count = strict_number(fields[1], header_line)?;
    let facet_count = strict_number(fields[2], header_line)?;
    let mut triangles = Vec::with_capacity(facet_count);
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        if triangles.len() == facet_count {
            return Err(parse_error(
                line,
                format!("more than {facet_count} triangles"),
            ));
        }
        let f = split_fields(content, line, 3)?;
        let t = [
            strict_number(f[0], line)?,
            strict_number(f[1], line)?,
            strict_number(f[2], line)?,
        ];
        if let Some(&v) = t.iter().find(|&&v| v >= vertex_count) {
            return Err(parse_error(
                line,
                format!("vertex {v} out of range for {vertex_count} vertices"),
            ));
        }
        triangles.push(t);
    }
    if triangles.len() != facet_count {
        return Err(parse_error(
            last_line + 1,
            format!(
                "expected {facet_count} triangles, found {}",
                triangles.len()
            ),
        ));
    }
    Ok((vertex_count, triangles))
}

fn parse_off(text: &str) -> Result<(usize, Vec<Triangle>), IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first_line, first) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing OFF header"))?;
    let mut header_rest = first
        .strip_prefix("OFF")
        .ok_or_else(|| parse_error(first_line, "header must start with 'OFF'"))?
        .trim()
        .to_string();
    let mut counts_line = first_line;
    if header_rest.is_empty() {
        let (l, c) = lines
            .next()
            .ok_or_else(|| parse_error(first_line + 1, "missing element counts"))?;
        counts_line = l;
        header_rest = c.to_string();
    }
    let counts: Vec<&str> = header_rest.split_whitespace().collect();
    if counts.len() < 2 {
        return Err(parse_error(counts_line, "expected vertex and face counts"));
    }
    let parse_count = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| parse_error(counts_line, format!("'{s}' is not a count")))
    };
    let vertex_count = parse_count(counts[0])?;
    let face_count = parse_count(counts[1])?;
    let mut last = counts_line;
    for _ in 0..vertex_count {
        let (line, content) = lines
            .next()
            .ok_or_else(|| parse_error(last + 1, "file ends inside the vertex list"))?;
        last = line;
        if content
            .split_whitespace()
            .any(|x| x.parse::<f64>().is_err())
        {
            return Err(parse_error(line, "vertex coordinates must be numbers"));
        }
    }
    let mut triangles = Vec::with_capacity(face_count);
    for _ in 0..face_count {
        let (line, content) = lines
            .next()
            .ok_or_else(|| parse_error(last + 1, "file ends inside the face list"))?;
        last = line;
        let fields: Vec<&str> = content.split_whitespace().collect();
        let ids: Result<Vec<usize>, _> = fields.iter().map(|f| f.parse::<usize>()).collect();
        let ids = ids.map_err(|_| parse_error(line, "face entries must be vertex ids"))?;
        // A face line is `n v1 .. vn`, optionally followed by colour values.
        match ids.first() {
            Some(3) if ids.len() >= 4 => {}
            Some(n) => {
                return Err(parse_error(
                    line,
                    format!("only triangular faces are supported, got {n}"),
                ))
            }
            None => return Err(parse_error(line, "empty face")),
        }
        let t = [ids[1], ids[2], ids[3]];
        if let Some(&v) = t.iter().find(|&&v| v >= vertex_count) {
            return Err(parse_error(line, format!("vertex {v} out of range")));
        }
        triangles.push(t);
    }
    Ok((vertex_count, triangles))
}
