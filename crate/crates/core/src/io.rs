//! JSON input and output formats. Rationals are written as `"p/q"` or `"p"`.

use serde::{Deserialize, Serialize};

use crate::arrangements::ResidualArrangement;
use crate::canonical::CanonicalForm;
use crate::error::{Error, Result};
use crate::linalg::{parse_rational, Rational, Vector};
use crate::poly::{LinForm, Polynomial};
use crate::polytope::{PointedCone, VPolytope};
use crate::triangulation::Triangulation;

/// An entry that may be written as a JSON integer or as a rational string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum RawRational {
    Int(i64),
    Text(String),
}

impl RawRational {
    fn value(&self) -> Result<Rational> {
        match self {
            RawRational::Int(n) => Ok(Rational::from_integer((*n).into())),
            RawRational::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    dimension: usize,
    #[serde(default)]
    vertices: Option<Vec<Vec<RawRational>>>,
    #[serde(default)]
    rays: Option<Vec<Vec<RawRational>>>,
}

/// A parsed input file: either a polytope or a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Polytope(VPolytope),
    Cone(PointedCone),
}

fn rows(dim: usize, raw: &[Vec<RawRational>]) -> Result<Vec<Vector>> {
    raw.iter()
        .map(|r| {
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.len(),
                });
            }
            r.iter().map(RawRational::value).collect()
        })
        .collect()
}

/// Parses JSON text without validating geometry.
pub fn parse_input_rows(text: &str) -> Result<(usize, Vec<Vector>, bool)> {
    let raw: RawInput = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    match (&raw.vertices, &raw.rays) {
        (Some(v), None) => Ok((raw.dimension, rows(raw.dimension, v)?, false)),
        (None, Some(r)) => Ok((raw.dimension, rows(raw.dimension, r)?, true)),
        _ => Err(Error::Parse(
            "expected exactly one of `vertices` or `rays`".into(),
        )),
    }
}

/// Parses a polytope file `{"dimension", "vertices"}` or a cone file
/// `{"dimension", "rays"}`.
pub fn parse_input(text: &str) -> Result<Input> {
    let (dim, rows, is_cone) = parse_input_rows(text)?;
    if is_cone {
        Ok(Input::Cone(PointedCone::new(dim, rows)?))
    } else {
        Ok(Input::Polytope(VPolytope::new(dim, rows)?))
    }
}

fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

#[derive(Debug, Serialize)]
pub struct PolytopeJson {
    pub dimension: usize,
    pub vertices: Vec<Vec<String>>,
}

impl From<&VPolytope> for PolytopeJson {
    fn from(p: &VPolytope) -> Self {
        Self {
            dimension: p.dim(),
            vertices: p.vertices().iter().map(|v| rational_strings(v)).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ConeJson {
    pub dimension: usize,
    pub rays: Vec<Vec<serde_json::Value>>,
}

impl From<&PointedCone> for ConeJson {
    fn from(c: &PointedCone) -> Self {
        // rays are primitive integer vectors
        let ray = |v: &Vector| -> Vec<serde_json::Value> {
            v.iter()
                .map(|x| match i64::try_from(x.to_integer()) {
                    Ok(n) => serde_json::Value::from(n),
                    Err(_) => serde_json::Value::from(x.to_string()),
                })
                .collect()
        };
        Self {
            dimension: c.dim(),
            rays: c.rays().iter().map(ray).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Serialize)]
pub struct PolynomialJson {
    pub vars: usize,
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

impl From<&Polynomial> for PolynomialJson {
    fn from(p: &Polynomial) -> Self {
        Self {
            vars: p.nvars(),
            degree: p.degree(),
            terms: p
                .terms()
                .map(|(e, c)| TermJson {
                    exp: e.0.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LinFormJson {
    pub constant: String,
    pub coeffs: Vec<String>,
}

impl From<&LinForm> for LinFormJson {
    fn from(f: &LinForm) -> Self {
        Self {
            constant: f.constant.to_string(),
            coeffs: rational_strings(&f.coeffs),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CanonicalFormJson {
    pub numerator: PolynomialJson,
    pub denominator_factors: Vec<LinFormJson>,
    pub calibration_scalar: String,
}

impl From<&CanonicalForm> for CanonicalFormJson {
    fn from(f: &CanonicalForm) -> Self {
        Self {
            numerator: (&f.numerator).into(),
            denominator_factors: f.denominator_factors.iter().map(Into::into).collect(),
            calibration_scalar: f.calibration_scalar.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TriangulationJson {
    pub simplices: Vec<Vec<usize>>,
}

impl From<&Triangulation> for TriangulationJson {
    fn from(t: &Triangulation) -> Self {
        Self {
            simplices: t.simplices().to_vec(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SubspaceJson {
    pub codim: usize,
    pub basis: Vec<Vec<String>>,
    pub from_hyperplanes: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct ResidualJson {
    pub hyperplanes: Vec<Vec<String>>,
    pub residual: Vec<SubspaceJson>,
    pub simple: bool,
}

impl ResidualJson {
    pub fn new(r: &ResidualArrangement, simple: bool) -> Self {
        Self {
            hyperplanes: r
                .hyperplanes
                .iter()
                .map(|h| rational_strings(&h.normal))
                .collect(),
            residual: r
                .subspaces
                .iter()
                .map(|s| SubspaceJson {
                    codim: s.codim,
                    basis: s.basis.iter().map(|b| rational_strings(b)).collect(),
                    from_hyperplanes: s.from_hyperplanes.clone(),
                })
                .collect(),
            simple,
        }
    }
}
