//! Supporting and residual hyperplane arrangements of a pointed cone.
//!
//! The supporting arrangement has one hyperplane per facet. Its flats are
//! the linear subspaces cut out by subsets of those hyperplanes; a flat is
//! residual when it contains no nonzero face of the cone. Since every
//! nonzero face contains an extreme ray, and a subspace contains a face iff
//! it contains the face's rays, the test reduces to "contains no ray".

use std::collections::{BTreeSet, HashSet, VecDeque};

use itertools::Itertools;
use num::Zero;

use crate::adjoint::adjoint_cone;
use crate::error::{Error, Result};
use crate::linalg::{
    canonical_span_basis, dot, orthogonal_complement, primitive, rank_of, rat, Matrix, Rational,
    Vector,
};
use crate::poly::{max_coefficient_distance, normalize_max_abs, Exponent, Polynomial};
use crate::polytope::{cone_over, dual_cone, PointedCone, VPolytope};

/// A linear hyperplane `{x : n·x = 0}` with the cone on the side `n·x ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub normal: Vector,
}

impl Hyperplane {
    pub fn contains(&self, x: &[Rational]) -> bool {
        dot(&self.normal, x).is_zero()
    }
}

/// A nonzero intersection of supporting hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace {
    /// Independent spanning vectors.
    pub basis: Vec<Vector>,
    pub codim: usize,
    /// Indices of every supporting hyperplane containing the subspace.
    pub from_hyperplanes: Vec<usize>,
}

impl LinearSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        let n = x.len();
        let mut rows = self.basis.clone();
        rows.push(x.to_vec());
        rank_of(&rows, n) == self.basis.len()
    }

    /// Whether `self ⊆ other`.
    pub fn is_contained_in(&self, other: &LinearSubspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Whether the two subspaces meet only at the origin.
    pub fn meets_trivially(&self, other: &LinearSubspace) -> bool {
        let Some(n) = self.basis.first().map(Vec::len) else {
            return true;
        };
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        rank_of(&rows, n) == self.dim() + other.dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualArrangement {
    pub hyperplanes: Vec<Hyperplane>,
    /// Maximal residual flats, ordered by codimension then hyperplane indices.
    pub subspaces: Vec<LinearSubspace>,
}

impl ResidualArrangement {
    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }
}

pub fn supporting_arrangement(c: &PointedCone) -> Vec<Hyperplane> {
    c.facet_normals()
        .iter()
        .map(|n| Hyperplane { normal: n.clone() })
        .collect()
}

/// All hyperplane indices whose normal lies in the span of `normals`.
fn closure(normals: &[Vector], subset: &BTreeSet<usize>, dim: usize) -> BTreeSet<usize> {
    let span: Vec<Vector> = subset.iter().map(|&i| normals[i].clone()).collect();
    let r = rank_of(&span, dim);
    (0..normals.len())
        .filter(|i| {
            subset.contains(i) || {
                let mut rows = span.clone();
                rows.push(normals[*i].clone());
                rank_of(&rows, dim) == r
            }
        })
        .collect()
}

pub fn residual_arrangement(c: &PointedCone) -> ResidualArrangement {
    let dim = c.dim();
    let hyperplanes = supporting_arrangement(c);
    let normals: Vec<Vector> = hyperplanes.iter().map(|h| h.normal.clone()).collect();
    let rays = c.rays();

    // Flats are keyed by their closed hyperplane set; smaller flats are
    // reached by adding one hyperplane outside the closure.
    let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
    let mut queue: VecDeque<BTreeSet<usize>> = VecDeque::new();
    let mut residual: Vec<BTreeSet<usize>> = Vec::new();
    for i in 0..normals.len() {
        let flat = closure(&normals, &BTreeSet::from([i]), dim);
        if seen.insert(flat.clone()) {
            queue.push_back(flat);
        }
    }
    while let Some(flat) = queue.pop_front() {
        let span: Vec<Vector> = flat.iter().map(|&i| normals[i].clone()).collect();
        if rank_of(&span, dim) == dim {
            continue;
        }
        let has_ray = rays
            .iter()
            .any(|r| flat.iter().all(|&i| dot(&normals[i], r).is_zero()));
        if !has_ray {
            residual.push(flat);
            continue;
        }
        for j in 0..normals.len() {
            if flat.contains(&j) {
                continue;
            }
            let mut bigger = flat.clone();
            bigger.insert(j);
            let next = closure(&normals, &bigger, dim);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }

    // A flat is contained in another iff its closed set is a superset.
    let maximal: Vec<&BTreeSet<usize>> = residual
        .iter()
        .filter(|a| !residual.iter().any(|b| b != *a && b.is_subset(a)))
        .collect();
    let mut subspaces: Vec<LinearSubspace> = maximal
        .into_iter()
        .map(|flat| {
            let span: Vec<Vector> = flat.iter().map(|&i| normals[i].clone()).collect();
            let key = canonical_span_basis(&span, dim);
            let basis = orthogonal_complement(&key, dim)
                .iter()
                .map(|b| primitive(b).expect("nullspace vectors are nonzero"))
                .collect();
            LinearSubspace {
                codim: key.len(),
                basis,
                from_hyperplanes: flat.iter().copied().collect(),
            }
        })
        .collect();
    subspaces.sort_by(|a, b| (a.codim, &a.from_hyperplanes).cmp(&(b.codim, &b.from_hyperplanes)));
    ResidualArrangement {
        hyperplanes,
        subspaces,
    }
}

/// At most `dim - 1` supporting hyperplanes through any nonzero point.
pub fn is_simple(c: &PointedCone) -> bool {
    let dim = c.dim();
    let normals = c.facet_normals();
    normals.len() < dim
        || normals.iter().combinations(dim).all(|s| {
            let rows: Vec<Vector> = s.into_iter().cloned().collect();
            rank_of(&rows, dim) == dim
        })
}

/// Whether `p` restricts to zero on every subspace of the arrangement.
pub fn vanishes_on(p: &Polynomial, arrangement: &ResidualArrangement) -> Result<bool> {
    for r in &arrangement.subspaces {
        if !p.restrict_to_subspace(&r.basis)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Restricts `adj_C` to each member of the residual arrangement of `C∨`.
pub fn check_adjoint_vanishes(c: &PointedCone, seed: u64) -> Result<bool> {
    let adj = adjoint_cone(c, seed).polynomial;
    vanishes_on(&adj, &residual_arrangement(&dual_cone(c)?))
}

fn monomials(nvars: usize, degree: usize) -> Vec<Exponent> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(Exponent(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(nvars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(nvars, degree as u32, &mut Vec::new(), &mut out);
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Basis of the degree-`(d - dim)` forms vanishing on the residual
/// arrangement of `c`, where `d` is the number of facets. Each generator is
/// normalized.
pub fn minimal_degree_vanishing_space(c: &PointedCone) -> Result<Vec<Polynomial>> {
    let dim = c.dim();
    let d = c.facet_normals().len();
    let degree = d - dim;
    let arrangement = residual_arrangement(c);
    let monos = monomials(dim, degree);
    let restricted: Vec<Vec<Polynomial>> = monos
        .iter()
        .map(|e| {
            let m = Polynomial::from_terms(dim, [(e.0.clone(), rat(1))]);
            arrangement
                .subspaces
                .iter()
                .map(|r| m.restrict_to_subspace(&r.basis))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    // One equation per (subspace, restricted monomial); unknowns are the
    // coefficients of `monos`.
    let mut rows: Vec<Vector> = Vec::new();
    for (k, r) in arrangement.subspaces.iter().enumerate() {
        let targets: BTreeSet<Exponent> = restricted
            .iter()
            .flat_map(|per| per[k].terms().map(|(e, _)| e.clone()).collect::<Vec<_>>())
            .collect();
        debug_assert!(targets.iter().all(|e| e.0.len() == r.dim()));
        for t in targets {
            rows.push(restricted.iter().map(|per| per[k].coeff(&t.0)).collect());
        }
    }
    let system = if rows.is_empty() {
        Matrix::empty(monos.len())
    } else {
        Matrix::new(rows)?
    };
    Ok(system
        .nullspace_basis()
        .into_iter()
        .map(|v| Polynomial::from_terms(dim, monos.iter().map(|e| e.0.clone()).zip(v)).normalized())
        .collect())
}

/// Distances from each family member's normalized `adj_{C∨}` to the target's.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationReport {
    pub distances: Vec<f64>,
    pub limit_coefficients: Vec<(Exponent, f64)>,
    pub converged: bool,
}

fn dual_adjoint_coefficients(p: &VPolytope) -> Result<std::collections::BTreeMap<Exponent, f64>> {
    let dual = dual_cone(&cone_over(p)?)?;
    Ok(normalize_max_abs(
        &adjoint_cone(&dual, 0).polynomial.to_f64_coeffs(),
    ))
}

/// Checks that the family's normalized dual-cone adjoints shrink
/// monotonically toward the target's and end within `tolerance`.
pub fn perturbation_limit_check(
    family: &[VPolytope],
    target: &VPolytope,
    tolerance: f64,
) -> Result<PerturbationReport> {
    let goal = dual_adjoint_coefficients(target)?;
    let mut distances = Vec::with_capacity(family.len());
    let mut last = None;
    for p in family {
        if !is_simple(&cone_over(p)?) {
            return Err(Error::NotSimple);
        }
        let coeffs = dual_adjoint_coefficients(p)?;
        distances.push(max_coefficient_distance(&coeffs, &goal));
        last = Some(coeffs);
    }
    let monotone = distances.windows(2).all(|w| w[1] <= w[0]);
    let converged = monotone && distances.last().is_some_and(|&d| d < tolerance);
    Ok(PerturbationReport {
        distances,
        limit_coefficients: last.unwrap_or_default().into_iter().collect(),
        converged,
    })
}
