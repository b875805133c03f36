//! The plain-text complex format.
//!
//! ```text
//! n=7
//! 01,02,03,04,05,06,12,13,14,15,23,24,35,46
//! ```
//!
//! The first line gives the ground set size, the second lists faces as digit
//! strings separated by commas. The listed faces are closed downward; the
//! token `empty` stands for the empty face, and a blank or missing second
//! line is the empty family. Serialization writes maximal faces only, in
//! ascending mask order.

use downset_core::{Complex, Face, MAX_VERTICES};
use thiserror::Error;

/// Digit notation allows vertices 0 through 9.
pub const TEXT_MAX_VERTICES: u8 = 10;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Parses one face in digit notation; `empty` is the empty face.
pub fn parse_face(token: &str, n: u8) -> Result<Face, String> {
    let token = token.trim();
    if token == "empty" {
        return Ok(Face::EMPTY);
    }
    if token.is_empty() {
        return Err("empty face token".into());
    }
    let mut bits = 0u16;
    for ch in token.chars() {
        let v = ch
            .to_digit(10)
            .ok_or_else(|| format!("`{ch}` is not a vertex digit"))? as u8;
        if v >= n {
            return Err(format!("vertex {v} outside the ground set of size {n}"));
        }
        if bits & (1 << v) != 0 {
            return Err(format!("vertex {v} repeated in `{token}`"));
        }
        bits |= 1 << v;
    }
    Face::from_vertices((0..TEXT_MAX_VERTICES).filter(|v| bits & (1 << v) != 0))
        .map_err(|e| e.to_string())
}

pub fn parse_complex(text: &str) -> Result<Complex, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (hl, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing `n=<int>` header"))?;
    let n: u8 = header
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| err(hl, format!("expected `n=<int>`, found `{header}`")))?;
    if n > TEXT_MAX_VERTICES {
        return Err(err(
            hl,
            format!("n={n} exceeds the digit notation limit {TEXT_MAX_VERTICES}"),
        ));
    }
    if n > MAX_VERTICES {
        return Err(err(
            hl,
            format!("n={n} exceeds the supported ground set size {MAX_VERTICES}"),
        ));
    }
    let (fl, faces_line) = lines.next().unwrap_or((hl + 1, ""));
    if let Some((extra, l)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(err(extra, format!("unexpected content `{l}`")));
    }
    let faces = if faces_line.is_empty() {
        Vec::new()
    } else {
        faces_line
            .split(',')
            .map(|t| parse_face(t, n).map_err(|m| err(fl, m)))
            .collect::<Result<Vec<_>, _>>()?
    };
    Complex::closure_of(&faces, n).map_err(|e| err(fl, e.to_string()))
}

pub fn format_face(f: Face) -> String {
    if f.is_empty() {
        "empty".to_string()
    } else {
        f.to_string()
    }
}

pub fn format_faces(faces: &[Face]) -> String {
    faces
        .iter()
        .map(|&f| format_face(f))
        .collect::<Vec<_>>()
        .join(",")
}

/// The maximal-face line alone.
pub fn faces_line(c: &Complex) -> String {
    format_faces(&c.maximal_faces())
}

pub fn serialize_complex(c: &Complex) -> String {
    format!("n={}\n{}\n", c.n(), faces_line(c))
}
