//! On-disk cache of vertex balls and coset enumerations.
//!
//! One text file per key. The first line is a versioned header; a file whose
//! header does not match, or which fails to parse, is rebuilt. Files are
//! written to a temporary name and renamed, so readers never see a partial
//! file.

use std::fs;
use std::path::{Path, PathBuf};

use gl_group::{GroupElement, Mat};
use local_field::{FieldElement, FpPoly, Q};

use crate::enumerate::{enumerate_ball, CosetEnumeration};
use crate::tree::{ball, Vertex};
use crate::HaarError;

pub const FORMAT: &str = "haar-cache-v1";

fn header(kind: &str, fields: &str) -> String {
    format!("{FORMAT} {kind} {fields} code={}", env!("CARGO_PKG_VERSION"))
}

fn encode_poly(f: &FpPoly) -> String {
    if f.is_zero() {
        return "-".into();
    }
    f.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn decode_poly(p: u8, s: &str) -> Option<FpPoly> {
    if s == "-" {
        return Some(FpPoly::zero(p));
    }
    let c: Option<Vec<u8>> = s.split(',').map(|d| d.parse().ok()).collect();
    Some(FpPoly::from_coeffs(p, c?))
}

pub fn encode_element(x: &FieldElement) -> String {
    format!("{}/{}", encode_poly(x.num()), encode_poly(x.den()))
}

pub fn decode_element(p: u8, s: &str) -> Option<FieldElement> {
    let (n, d) = s.split_once('/')?;
    let den = decode_poly(p, d)?;
    if den.is_zero() {
        return None;
    }
    Some(FieldElement::new(decode_poly(p, n)?, den))
}

fn write_atomic(path: &Path, body: &str) -> Result<(), HaarError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| HaarError::Cache(e.to_string()))?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, body).map_err(|e| HaarError::Cache(e.to_string()))?;
    fs::rename(&tmp, path).map_err(|e| HaarError::Cache(e.to_string()))
}

/// Body lines after a matching header, or None.
fn read_body(path: &Path, expected: &str) -> Option<Vec<String>> {
    let text = fs::read_to_string(path).ok()?;
    let mut lines = text.lines();
    if lines.next()? != expected {
        return None;
    }
    let body: Vec<String> = lines.map(str::to_owned).collect();
    (body.last().map(String::as_str) == Some("end")).then(|| body[..body.len() - 1].to_vec())
}

pub fn ball_path(dir: &Path, p: u8, radius: i64) -> PathBuf {
    dir.join(format!("ball_n2_l{p}_r{radius}.txt"))
}

/// The vertex ball of the given radius, from the cache when possible.
pub fn ball_cached(dir: &Path, p: u8, radius: i64) -> Result<Vec<Vertex>, HaarError> {
    let path = ball_path(dir, p, radius);
    let head = header("ball", &format!("n=2 ell={p} radius={radius}"));
    if let Some(body) = read_body(&path, &head) {
        let parsed: Option<Vec<Vertex>> = body
            .iter()
            .map(|line| {
                let (a, b) = line.split_once(' ')?;
                Some(Vertex { a: a.parse().ok()?, b: decode_element(p, b)? })
            })
            .collect();
        if let Some(v) = parsed {
            return Ok(v);
        }
    }
    let vertices = ball(p, radius);
    let mut body = head;
    for v in &vertices {
        body.push_str(&format!("\n{} {}", v.a, encode_element(&v.b)));
    }
    body.push_str("\nend\n");
    write_atomic(&path, &body)?;
    Ok(vertices)
}

pub fn enumeration_path(dir: &Path, p: u8, i: i64, j: i64, adjoint: bool) -> PathBuf {
    dir.join(format!("cosets_n2_l{p}_i{i}_j{j}_{}.txt", if adjoint { "ad" } else { "g" }))
}

/// enumerate_ball with the cache keyed by (n, l, i, j, adjoint).
pub fn enumeration_cached(dir: &Path, p: u8, i: i64, j: i64, adjoint: bool) -> Result<CosetEnumeration, HaarError> {
    let path = enumeration_path(dir, p, i, j, adjoint);
    let head = header("cosets", &format!("n=2 ell={p} i={i} j={j} adjoint={adjoint}"));
    if let Some(body) = read_body(&path, &head) {
        if let Some(e) = parse_enumeration(p, i, j, adjoint, &body) {
            return Ok(e);
        }
    }
    let e = enumerate_ball(p, 2, i, j, adjoint)?;
    let mut body = format!("{head}\nweight {}", e.weight);
    for g in &e.reps {
        let cells: Vec<String> = g.entries().iter().map(encode_element).collect();
        body.push_str(&format!("\n{}", cells.join(" ")));
    }
    body.push_str("\nend\n");
    write_atomic(&path, &body)?;
    Ok(e)
}

fn parse_enumeration(p: u8, i: i64, j: i64, adjoint: bool, body: &[String]) -> Option<CosetEnumeration> {
    let weight: Q = body.first()?.strip_prefix("weight ")?.parse().ok()?;
    let reps: Option<Vec<GroupElement>> = body[1..]
        .iter()
        .map(|line| {
            let e: Option<Vec<FieldElement>> = line.split(' ').map(|s| decode_element(p, s)).collect();
            let e = e?;
            if e.len() != 4 {
                return None;
            }
            GroupElement::new(Mat::from_rows(vec![e[..2].to_vec(), e[2..].to_vec()])).ok()
        })
        .collect();
    Some(CosetEnumeration { ell: p, i, j, adjoint, reps: reps?, weight })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_codec_round_trips() {
        let p = 3;
        for x in [FieldElement::zero(p), FieldElement::laurent(p, -2, &[1, 2, 0, 1]), FieldElement::t_pow(p, 4).inv()] {
            assert_eq!(decode_element(p, &encode_element(&x)).unwrap(), x);
        }
    }

    #[test]
    fn corrupt_files_are_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let first = ball_cached(dir.path(), 2, 3).unwrap();
        let path = ball_path(dir.path(), 2, 3);
        assert_eq!(ball_cached(dir.path(), 2, 3).unwrap(), first);
        fs::write(&path, "garbage").unwrap();
        assert_eq!(ball_cached(dir.path(), 2, 3).unwrap(), first);
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replace("end\n", "")).unwrap();
        assert_eq!(ball_cached(dir.path(), 2, 3).unwrap(), first);
        let e = enumeration_cached(dir.path(), 2, 1, 1, true).unwrap();
        assert_eq!(enumeration_cached(dir.path(), 2, 1, 1, true).unwrap(), e);
    }
}
