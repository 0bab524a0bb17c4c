//! Adjoint polynomials of pointed cones and of polytopes.
//!
//! For a cone with rays `V` and a triangulation `T` using only those rays,
//!
//! ```text
//! adj_C(x) = Σ_{S ∈ T} |det S| · Π_{v ∈ V \ S} (v · x)
//! ```
//!
//! Each ray occurs exactly once in every summand (in the determinant or in
//! the product), so with fixed primitive representatives the sum itself,
//! not just its class up to scalars, is independent of the triangulation.
//! The polytope version uses simplex volumes and the factors `1 - v·x`.

mod recursion;

pub use recursion::{
    adjoint_via_facet_recursion, adjoint_via_facet_recursion_auto,
    adjoint_via_facet_recursion_multi, FloatCoeffs,
};

use crate::error::Result;
use crate::linalg::{rat, Rational, Vector};
use crate::poly::{product_of_linforms, LinForm, Polynomial};
use crate::polytope::{PointedCone, VPolytope};
use crate::triangulation::{
    parallelepiped_volume, simplex_volume, triangulate, triangulate_polytope, Triangulation,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointResult {
    /// Content-normalized with positive leading coefficient.
    pub polynomial: Polynomial,
    /// The unnormalized sum for the stored representatives.
    pub raw: Polynomial,
    pub seed: u64,
    /// Homogeneous degree `|V| - dim`.
    pub degree: usize,
    pub triangulation: Triangulation,
}

/// Triangulation sum over arbitrary (not necessarily primitive) generators.
pub fn cone_adjoint_sum(gens: &[Vector], dim: usize, t: &Triangulation) -> Result<Polynomial> {
    let mut total = Polynomial::zero(dim);
    for s in t.simplices() {
        let rays: Vec<Vector> = s.iter().map(|&i| gens[i].clone()).collect();
        let a_s = parallelepiped_volume(&rays)?;
        let rest: Vec<LinForm> = (0..gens.len())
            .filter(|i| !s.contains(i))
            .map(|i| LinForm::homogeneous(gens[i].clone()))
            .collect();
        total = &total + &product_of_linforms(dim, &rest)?.scale(&a_s);
    }
    Ok(total)
}

pub fn adjoint_cone(c: &PointedCone, seed: u64) -> AdjointResult {
    let t = triangulate(c, seed);
    let raw = cone_adjoint_sum(c.rays(), c.dim(), &t).expect("triangulation of a valid cone");
    AdjointResult {
        polynomial: raw.normalized(),
        raw,
        seed,
        degree: c.rays().len() - c.dim(),
        triangulation: t,
    }
}

/// `Σ_σ vol(σ) Π_{v ∉ σ} (1 - v·x)` over a triangulation of `p`.
pub fn polytope_adjoint_sum(p: &VPolytope, t: &Triangulation) -> Result<Polynomial> {
    let m = p.dim();
    let verts = p.vertices();
    let mut total = Polynomial::zero(m);
    for s in t.simplices() {
        let simplex: Vec<Vector> = s.iter().map(|&i| verts[i].clone()).collect();
        let vol = simplex_volume(&simplex)?;
        let rest: Vec<LinForm> = (0..verts.len())
            .filter(|i| !s.contains(i))
            .map(|i| LinForm::one_minus(&verts[i]))
            .collect();
        total = &total + &product_of_linforms(m, &rest)?.scale(&vol);
    }
    Ok(total)
}

/// Affine adjoint in `x1..xm`. Its homogenization agrees up to a positive
/// scalar with the cone adjoint of `cone_over(p)` after `x -> (x0, -x)`.
pub fn adjoint_polytope(p: &VPolytope, seed: u64) -> Result<AdjointResult> {
    let t = triangulate_polytope(p, seed)?;
    let raw = polytope_adjoint_sum(p, &t)?;
    Ok(AdjointResult {
        polynomial: raw.normalized(),
        raw,
        seed,
        degree: p.vertices().len() - p.dim() - 1,
        triangulation: t,
    })
}

/// The chart sign flip `x -> (x0, -x1, ..., -xm)` relating the two
/// conventions.
pub fn flip_chart_signs(p: &Polynomial) -> Polynomial {
    let s: Vec<Rational> = (0..p.nvars())
        .map(|i| if i == 0 { rat(1) } else { rat(-1) })
        .collect();
    p.scale_variables(&s)
}
