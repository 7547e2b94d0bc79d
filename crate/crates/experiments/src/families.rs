//! Fixed scan families with controlled ov growth.

use gl_group::{companion, GroupElement, Mat};
use local_field::FieldElement;
use poly_lab::MonicPoly;

use crate::ExperimentError;

/// Which generator a family point came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// companion(X^2 + X + t^-(2k+1)): ramified, odd determinant valuation.
    RamifiedOdd,
    /// 1 + t^k y0 with y0 the companion of an irreducible quadratic over F_l.
    Unramified,
    /// companion(X^2 + t^k X + u), k >= 1, with u a unit.
    TraceShift,
    /// diag((1 + t) t^-k, 1).
    SplitDiagonal,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::RamifiedOdd => "ramified_odd",
            Family::Unramified => "unramified",
            Family::TraceShift => "trace_shift",
            Family::SplitDiagonal => "split_diag",
        }
    }

    pub fn elliptic() -> [Family; 3] {
        [Family::RamifiedOdd, Family::Unramified, Family::TraceShift]
    }
}

/// Constant term of X^2 + c0 irreducible over F_l (l odd), or of X^2 + X + c0 for l = 2.
fn residue_irreducible(p: u8) -> (i64, i64) {
    match p {
        2 => (1, 1),
        _ => {
            let squares: Vec<i64> = (1..p as i64).map(|a| a * a % p as i64).collect();
            let c0 = (1..p as i64).find(|c| !squares.contains(&((p as i64 - c) % p as i64))).expect("l odd has a nonsquare");
            (0, c0)
        }
    }
}

fn monic(p: u8, c0: FieldElement, c1: FieldElement) -> MonicPoly {
    MonicPoly::from_lower(p, vec![c0, c1])
}

/// Point k of a family over F_l((t)).
pub fn member(family: Family, p: u8, k: i64) -> Result<GroupElement, ExperimentError> {
    let m = match family {
        Family::RamifiedOdd => companion(&monic(p, FieldElement::t_pow(p, -(2 * k + 1)), FieldElement::one(p))),
        Family::Unramified => {
            let (b, c) = residue_irreducible(p);
            let y0 = companion(&monic(p, FieldElement::from_int(p, c), FieldElement::from_int(p, b)));
            Mat::identity(p, 2).add(&y0.scale(&FieldElement::t_pow(p, k)))
        }
        Family::TraceShift => {
            if k < 1 {
                return Err(ExperimentError::EmptyFamily(family.label(), k));
            }
            let u = match p {
                2 => FieldElement::one(p),
                _ => FieldElement::from_int(p, residue_irreducible(p).1),
            };
            companion(&monic(p, u, FieldElement::t_pow(p, k)))
        }
        Family::SplitDiagonal => Mat::diag(&[FieldElement::laurent(p, -k, &[1, 1]), FieldElement::one(p)]),
    };
    Ok(GroupElement::new(m)?)
}

/// The k range a family is defined on, clipped to 0..=k_max.
pub fn k_range(family: Family, k_max: i64) -> std::ops::RangeInclusive<i64> {
    match family {
        Family::TraceShift => 1..=k_max.max(0) + 1,
        _ => 0..=k_max,
    }
}

/// A family member together with its regular semisimple ov.
#[derive(Clone, Debug)]
pub struct ScanPoint {
    pub family: Family,
    pub k: i64,
    pub x: GroupElement,
    pub ov: i64,
}

pub fn scan_points(families: &[Family], p: u8, k_max: i64) -> Result<Vec<ScanPoint>, ExperimentError> {
    let mut out = Vec::new();
    for &family in families {
        for k in k_range(family, k_max) {
            let x = member(family, p, k)?;
            let ov = gl_group::ov_grss(&x)?;
            out.push(ScanPoint { family, k, x, ov });
        }
    }
    Ok(out)
}
