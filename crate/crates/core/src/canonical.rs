//! Canonical forms of polytopes as factored rational functions.
//!
//! For a full-dimensional `P` with the origin inside, the canonical form is
//! `adj_{P∨}(x) / Π_F (1 - v_F·x)`, where the `v_F` are the vertices of
//! `P∨`. Its value at an interior point also equals `vol((P - x)∨)`; that
//! volume is computed here by an independent route and used to pin the
//! overall scalar.

use num::{Signed, Zero};

use crate::adjoint::adjoint_polytope;
use crate::error::{Error, Result};
use crate::linalg::{dot, rat, scale, Rational, Vector};
use crate::poly::{LinForm, Polynomial};
use crate::polytope::{dual_polytope, facet_enumeration, VPolytope};
use crate::triangulation::{polytope_volume, simplex_volume, triangulate_polytope};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Normalized adjoint of the dual, in `x1..xm`.
    pub numerator: Polynomial,
    /// One factor `1 - v_F·x` per facet, in facet order.
    pub denominator_factors: Vec<LinForm>,
    /// `λ` such that `λ · numerator / Π factors` is the canonical function.
    pub calibration_scalar: Rational,
}

impl CanonicalForm {
    /// Value of the calibrated rational function at `x`.
    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational> {
        let den = self.denominator_at(x)?;
        if den.is_zero() {
            return Err(Error::PointNotInterior);
        }
        Ok(&self.calibration_scalar * self.numerator.evaluate(x)? / den)
    }

    pub fn denominator_at(&self, x: &[Rational]) -> Result<Rational> {
        self.denominator_factors
            .iter()
            .map(|f| f.evaluate(x))
            .product()
    }

    /// The degree of the numerator's homogenization, `#facets - m - 1`.
    pub fn numerator_degree(&self) -> usize {
        self.denominator_factors.len() - self.numerator.nvars() - 1
    }
}

fn normalized_facets(p: &VPolytope) -> Result<Vec<Vector>> {
    facet_enumeration(p)?
        .normalized()
        .ok_or(Error::OriginNotInterior)
}

pub fn canonical_form(p: &VPolytope, seed: u64) -> Result<CanonicalForm> {
    let v_f = normalized_facets(p)?;
    let dual = VPolytope::new(p.dim(), v_f.clone())?;
    let numerator = adjoint_polytope(&dual, seed)?.polynomial;
    let denominator_factors: Vec<LinForm> = v_f.iter().map(|v| LinForm::one_minus(v)).collect();
    let mut form = CanonicalForm {
        numerator,
        denominator_factors,
        calibration_scalar: rat(1),
    };
    let c = p.centroid();
    let target = canonical_form_value_oracle(p, &c)?;
    form.calibration_scalar = target * form.denominator_at(&c)? / form.numerator.evaluate(&c)?;
    Ok(form)
}

fn require_interior(p: &VPolytope, x: &[Rational]) -> Result<()> {
    if x.len() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: x.len(),
        });
    }
    if p.contains_strictly(x)? {
        Ok(())
    } else {
        Err(Error::PointNotInterior)
    }
}

/// `vol((P - x)∨)` by translating, dualizing and triangulating.
pub fn canonical_form_value_oracle(p: &VPolytope, x: &[Rational]) -> Result<Rational> {
    require_interior(p, x)?;
    let shifted = p.translate(x);
    polytope_volume(&dual_polytope(&shifted)?)
}

/// Vertices `u_F = v_F / (1 - v_F·x)` of `(P - x)∨`, in facet order.
pub fn dilated_dual_vertices(p: &VPolytope, x: &[Rational]) -> Result<Vec<Vector>> {
    let v_f = normalized_facets(p)?;
    v_f.iter()
        .map(|v| {
            let s = rat(1) - dot(v, x);
            if !s.is_positive() {
                return Err(Error::PointNotInterior);
            }
            Ok(scale(v, &s.recip()))
        })
        .collect()
}

/// `Σ_σ vol(σ) / Π_{v ∈ σ} (1 - v·x)` over a triangulation of `P∨`.
pub fn simplex_sum(p: &VPolytope, x: &[Rational], seed: u64) -> Result<Rational> {
    let dual = dual_polytope(p)?;
    let t = triangulate_polytope(&dual, seed)?;
    let verts = dual.vertices();
    t.simplices()
        .iter()
        .map(|s| {
            let simplex: Vec<Vector> = s.iter().map(|&i| verts[i].clone()).collect();
            let denom: Rational = simplex.iter().map(|v| rat(1) - dot(v, x)).product();
            Ok(simplex_volume(&simplex)? / denom)
        })
        .sum()
}

pub fn simplex_sum_identity_check(p: &VPolytope, x: &[Rational], seed: u64) -> Result<bool> {
    Ok(simplex_sum(p, x, seed)? == canonical_form_value_oracle(p, x)?)
}
