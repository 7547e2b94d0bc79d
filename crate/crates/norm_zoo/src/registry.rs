//! Named norms and their exact evaluators.

use std::fmt;

use gl_group::{
    centralizer_norm, char_poly, is_elliptic_poly, norm_g, ov_adjoint, ov_grss, ov_quotient, Composition,
    GroupElement,
};
use local_field::{FieldElement, NormValue};
use poly_lab::{c_norm_exponent, c_rss_norm_exponent, resultant, s_norms, MonicPoly, PairSpace, Poly, SNorms};

use crate::NormError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    F,
    Fk,
    C,
    CRss,
    G,
    GRss,
    GAd,
    GModA,
    S,
    SEl,
    SUnits,
    ComRss,
    LambdaProduct,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::F => "F",
            Domain::Fk => "F^k",
            Domain::C => "C",
            Domain::CRss => "C^rss",
            Domain::G => "G",
            Domain::GRss => "G^rss",
            Domain::GAd => "G^ad",
            Domain::GModA => "G/A",
            Domain::S => "S",
            Domain::SEl => "S^el",
            Domain::SUnits => "S^x",
            Domain::ComRss => "Com^rss",
            Domain::LambdaProduct => "lambda-product",
        })
    }
}

/// A point of one of the domains. Group quotients are represented by any
/// coset representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Scalar(FieldElement),
    Vector(Vec<FieldElement>),
    Poly(MonicPoly),
    Group(GroupElement),
    Quotient(GroupElement, Composition),
    Pair(MonicPoly, Poly),
    Pairs(Vec<(MonicPoly, Poly)>),
    Commuting(GroupElement, GroupElement),
}

impl Point {
    pub fn prime(&self) -> u8 {
        match self {
            Point::Scalar(x) => x.prime(),
            Point::Vector(v) => v.first().map_or(2, FieldElement::prime),
            Point::Poly(f) | Point::Pair(f, _) => f.prime(),
            Point::Group(g) | Point::Quotient(g, _) | Point::Commuting(g, _) => g.prime(),
            Point::Pairs(v) => v.first().map_or(2, |(f, _)| f.prime()),
        }
    }
}

type EvalFn = fn(&Point) -> Result<i64, NormError>;

/// A named norm: `eval` returns the exponent e of the value l^e.
#[derive(Clone, Copy)]
pub struct NormEvaluator {
    pub name: &'static str,
    pub domain: Domain,
    eval: EvalFn,
}

impl fmt::Debug for NormEvaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormEvaluator({} on {})", self.name, self.domain)
    }
}

impl NormEvaluator {
    pub fn eval(&self, point: &Point) -> Result<NormValue, NormError> {
        Ok(NormValue::from_int_exponent(point.prime(), self.exponent(point)?))
    }

    pub fn exponent(&self, point: &Point) -> Result<i64, NormError> {
        (self.eval)(point)
    }

    pub fn lookup(name: &str) -> Result<&'static NormEvaluator, NormError> {
        REGISTRY.iter().find(|e| e.name == name).ok_or_else(|| NormError::UnknownNorm(name.to_string()))
    }
}

/// Evaluate the named norm at a point.
pub fn eval_norm(name: &str, point: &Point) -> Result<NormValue, NormError> {
    NormEvaluator::lookup(name)?.eval(point)
}

macro_rules! norm {
    ($name:expr, $dom:ident, $f:expr) => {
        NormEvaluator { name: $name, domain: Domain::$dom, eval: $f }
    };
}

pub static REGISTRY: &[NormEvaluator] = &[
    norm!("F", F, |p| match p {
        Point::Scalar(x) => Ok(x.norm_exponent()),
        _ => Err(NormError::DomainMismatch(Domain::F)),
    }),
    norm!("F^k", Fk, |p| match p {
        Point::Vector(v) => Ok(v.iter().map(FieldElement::norm_exponent).max().unwrap_or(0)),
        _ => Err(NormError::DomainMismatch(Domain::Fk)),
    }),
    norm!("C", C, |p| Ok(c_norm_exponent(poly(p, Domain::C)?)?)),
    norm!("C^rss", CRss, |p| crss(poly(p, Domain::CRss)?)),
    norm!("G", G, |p| Ok(group_norm(group(p, Domain::G)?))),
    norm!("G^rss", GRss, |p| grss(group(p, Domain::GRss)?)),
    norm!("G^ad", GAd, |p| Ok(ov_adjoint(group(p, Domain::GAd)?))),
    norm!("G/A", GModA, |p| match p {
        Point::Quotient(x, a) if a.n() == x.dim() => Ok(ov_quotient(x, a)),
        _ => Err(NormError::DomainMismatch(Domain::GModA)),
    }),
    norm!("p*C^rss", GRss, |p| crss(&char_poly(group(p, Domain::GRss)?))),
    norm!("S", S, |p| pair_norms(p, Domain::S).map(|s| exp(s.standard))),
    norm!("S'", S, |p| pair_norms(p, Domain::S).map(|s| exp(s.primed))),
    norm!("S^R", S, |p| pair_norms(p, Domain::S).map(|s| exp(s.r_part))),
    norm!("S^el", SEl, |p| pair_norms(p, Domain::SEl).map(|s| exp(s.standard))),
    norm!("S^el'", SEl, |p| pair_norms(p, Domain::SEl).map(|s| exp(s.primed))),
    norm!("S^el_R", SEl, |p| pair_norms(p, Domain::SEl).map(|s| exp(s.r_part))),
    norm!("res*F", S, |p| match p {
        Point::Pair(f, g) if !g.is_zero() => Ok(resultant(f, g)?.norm_exponent()),
        Point::Pair(_, _) => Ok(0),
        _ => Err(NormError::DomainMismatch(Domain::S)),
    }),
    norm!("S^x", SUnits, |p| pair_norms(p, Domain::SUnits).map(|s| exp(s.standard))),
    norm!("S^x'", SUnits, |p| pair_norms(p, Domain::SUnits).map(|s| exp(s.primed))),
    norm!("S^x_lambda", LambdaProduct, |p| lambda(p, |s| s.standard)),
    norm!("S^x_lambda'", LambdaProduct, |p| lambda(p, |s| s.primed)),
    norm!("Com^rss", ComRss, |p| {
        let (x, y) = commuting(p)?;
        Ok(grss(x)?.max(group_norm(y)))
    }),
    norm!("Com^rss'", ComRss, |p| {
        let (x, y) = commuting(p)?;
        Ok(grss(x)?.max(exp(centralizer_norm(x, y)?)))
    }),
    norm!("Com^R", ComRss, |p| {
        let (x, y) = commuting(p)?;
        Ok(exp(centralizer_norm(x, y)?))
    }),
];

fn exp(v: NormValue) -> i64 {
    v.exponent().to_integer() as i64
}

fn poly(p: &Point, d: Domain) -> Result<&MonicPoly, NormError> {
    match p {
        Point::Poly(f) => Ok(f),
        _ => Err(NormError::DomainMismatch(d)),
    }
}

fn group(p: &Point, d: Domain) -> Result<&GroupElement, NormError> {
    match p {
        Point::Group(g) => Ok(g),
        _ => Err(NormError::DomainMismatch(d)),
    }
}

fn group_norm(g: &GroupElement) -> i64 {
    exp(norm_g(g))
}

fn crss(f: &MonicPoly) -> Result<i64, NormError> {
    c_rss_norm_exponent(f).map_err(|e| match e {
        poly_lab::PolyError::Inseparable => NormError::NotRegularSemisimple,
        e => e.into(),
    })
}

fn grss(x: &GroupElement) -> Result<i64, NormError> {
    ov_grss(x).map_err(|e| match e {
        gl_group::GroupError::NotRegularSemisimple => NormError::NotRegularSemisimple,
        e => e.into(),
    })
}

fn commuting(p: &Point) -> Result<(&GroupElement, &GroupElement), NormError> {
    match p {
        Point::Commuting(x, y) if x.dim() == y.dim() => {
            if x.matrix().mul(y) != y.matrix().mul(x) {
                return Err(NormError::DomainMismatch(Domain::ComRss));
            }
            Ok((x, y))
        }
        _ => Err(NormError::DomainMismatch(Domain::ComRss)),
    }
}

fn space_of(d: Domain) -> PairSpace {
    if d == Domain::SUnits || d == Domain::LambdaProduct {
        PairSpace::Units
    } else {
        PairSpace::Plain
    }
}

fn checked_pair(f: &MonicPoly, g: &Poly, d: Domain) -> Result<SNorms, NormError> {
    if g.degree().is_some_and(|k| k >= f.deg()) {
        return Err(NormError::DomainMismatch(d));
    }
    if d == Domain::SEl && !is_elliptic_poly(f)? {
        return Err(NormError::DomainMismatch(d));
    }
    s_norms(f, g, space_of(d)).map_err(|e| match e {
        poly_lab::PolyError::NotCoprime => NormError::NotCoprime,
        poly_lab::PolyError::Inseparable => NormError::NotRegularSemisimple,
        e => e.into(),
    })
}

fn pair_norms(p: &Point, d: Domain) -> Result<SNorms, NormError> {
    match p {
        Point::Pair(f, g) => checked_pair(f, g, d),
        _ => Err(NormError::DomainMismatch(d)),
    }
}

fn lambda(p: &Point, pick: fn(SNorms) -> NormValue) -> Result<i64, NormError> {
    let Point::Pairs(pairs) = p else {
        return Err(NormError::DomainMismatch(Domain::LambdaProduct));
    };
    if pairs.is_empty() {
        return Err(NormError::DomainMismatch(Domain::LambdaProduct));
    }
    let mut e = 0;
    for (f, g) in pairs {
        e = e.max(exp(pick(checked_pair(f, g, Domain::LambdaProduct)?)));
    }
    Ok(e)
}
