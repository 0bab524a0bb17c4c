//! Placing triangulations that use only the given rays, and exact volumes.

use std::collections::HashMap;

use num::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::linalg::{dot, orthogonal_complement, rank_of, rat, sub, Matrix, Rational, Vector};
use crate::polytope::{cone_facet_normals, PointedCone, VPolytope};

/// Simplicial cones over index sets of the input generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    dim: usize,
    simplices: Vec<Vec<usize>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationDefect {
    #[error("simplex {0} does not have dim distinct valid indices")]
    Malformed(usize),
    #[error("simplex {0} is degenerate")]
    Degenerate(usize),
    #[error("a facet is shared by more than two simplices")]
    OverShared,
    #[error("two simplices sharing a facet lie on the same side of it")]
    SameSide,
    #[error("an unshared facet is not on the boundary of the cone")]
    InteriorBoundary,
    #[error("generic interior point covered {0} times")]
    Coverage(usize),
    #[error("ray {0} is not used by any simplex")]
    UnusedRay(usize),
}

impl Triangulation {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    /// Checks cover, face-to-face intersections and that only the given
    /// rays are used. Interior facets must be shared by exactly two
    /// simplices lying on opposite sides, unshared facets must lie on the
    /// cone's boundary, and a generic interior point must be covered once.
    pub fn verify(&self, gens: &[Vector]) -> std::result::Result<(), TriangulationDefect> {
        let d = self.dim;
        for (k, s) in self.simplices.iter().enumerate() {
            let mut sorted = s.clone();
            sorted.dedup();
            if s.len() != d || sorted.len() != d || s.iter().any(|&i| i >= gens.len()) {
                return Err(TriangulationDefect::Malformed(k));
            }
            if rank_of(&rows(gens, s), d) != d {
                return Err(TriangulationDefect::Degenerate(k));
            }
        }
        if let Some(i) = (0..gens.len()).find(|i| !self.simplices.iter().any(|s| s.contains(i))) {
            return Err(TriangulationDefect::UnusedRay(i));
        }
        let cone_normals = cone_facet_normals(gens, d);
        for (facet, opposite) in facet_map(&self.simplices) {
            let n = facet_normal(gens, &facet, d);
            match opposite.as_slice() {
                [_] => {
                    let on_boundary = cone_normals
                        .iter()
                        .any(|c| facet.iter().all(|&i| dot(c, &gens[i]).is_zero()));
                    if !on_boundary {
                        return Err(TriangulationDefect::InteriorBoundary);
                    }
                }
                [a, b] => {
                    let sa = dot(&n, &gens[*a]);
                    let sb = dot(&n, &gens[*b]);
                    if (sa * sb).is_positive() {
                        return Err(TriangulationDefect::SameSide);
                    }
                }
                _ => return Err(TriangulationDefect::OverShared),
            }
        }
        let count = self.generic_cover_count(gens);
        if count != 1 {
            return Err(TriangulationDefect::Coverage(count));
        }
        Ok(())
    }

    fn generic_cover_count(&self, gens: &[Vector]) -> usize {
        let d = self.dim;
        let mats: Vec<Matrix> = self
            .simplices
            .iter()
            .map(|s| {
                Matrix::new(rows(gens, s))
                    .expect("rows share dim")
                    .transpose()
            })
            .collect();
        'weights: for attempt in 1..64i64 {
            let mut g = vec![rat(0); d];
            for (i, r) in gens.iter().enumerate() {
                let w = rat(1 + ((i as i64 + 1) * (i as i64 + attempt * 7 + 3)) % 97);
                for (gj, rj) in g.iter_mut().zip(r) {
                    *gj += &w * rj;
                }
            }
            let mut count = 0;
            for m in &mats {
                let coords = m.solve(&g).expect("square").expect("invertible");
                if coords.iter().any(Zero::is_zero) {
                    continue 'weights;
                }
                if coords.iter().all(Signed::is_positive) {
                    count += 1;
                }
            }
            return count;
        }
        0
    }
}

fn rows(gens: &[Vector], idx: &[usize]) -> Vec<Vector> {
    idx.iter().map(|&i| gens[i].clone()).collect()
}

fn facet_normal(gens: &[Vector], facet: &[usize], dim: usize) -> Vector {
    orthogonal_complement(&rows(gens, facet), dim)
        .pop()
        .expect("facet of a simplex spans a hyperplane")
}

/// Facets (sorted index sets) mapped to the opposite vertex of every
/// simplex containing them.
fn facet_map(simplices: &[Vec<usize>]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut map: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut order = Vec::new();
    for s in simplices {
        for (k, &opp) in s.iter().enumerate() {
            let mut f: Vec<usize> = s
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &i)| i)
                .collect();
            f.sort_unstable();
            let e = map.entry(f.clone()).or_default();
            if e.is_empty() {
                order.push(f);
            }
            e.push(opp);
        }
    }
    order
        .into_iter()
        .map(|f| {
            let o = map.remove(&f).unwrap_or_default();
            (f, o)
        })
        .collect()
}

/// Seeded permutation of `0..n`.
pub fn insertion_order(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

/// Placing triangulation inserting the generators in `order`. The
/// generators must be the extreme rays of a full-dimensional pointed cone.
pub fn placing_triangulation(gens: &[Vector], dim: usize, order: &[usize]) -> Triangulation {
    let mut first: Vec<usize> = Vec::new();
    let mut rest = Vec::new();
    for &i in order {
        let mut trial = rows(gens, &first);
        trial.push(gens[i].clone());
        if first.len() < dim && rank_of(&trial, dim) == first.len() + 1 {
            first.push(i);
        } else {
            rest.push(i);
        }
    }
    first.sort_unstable();
    let mut simplices = vec![first];
    for r in rest {
        let mut added = Vec::new();
        for (facet, opposite) in facet_map(&simplices) {
            if opposite.len() != 1 {
                continue;
            }
            let mut n = facet_normal(gens, &facet, dim);
            if dot(&n, &gens[opposite[0]]).is_negative() {
                n = n.iter().map(|x| -x).collect();
            }
            if dot(&n, &gens[r]).is_negative() {
                let mut s = facet;
                s.push(r);
                s.sort_unstable();
                added.push(s);
            }
        }
        simplices.extend(added);
    }
    Triangulation { dim, simplices }
}

pub fn triangulate(c: &PointedCone, seed: u64) -> Triangulation {
    placing_triangulation(c.rays(), c.dim(), &insertion_order(c.rays().len(), seed))
}

/// Triangulation of the cone over `p`, indexed by vertex order of `p`.
pub fn triangulate_polytope(p: &VPolytope, seed: u64) -> Result<Triangulation> {
    if !p.is_full_dimensional() {
        return Err(not_full(p));
    }
    let gens = p.homogenized_vertices();
    Ok(placing_triangulation(
        &gens,
        p.dim() + 1,
        &insertion_order(gens.len(), seed),
    ))
}

fn not_full(p: &VPolytope) -> Error {
    let diffs: Vec<Vector> = p
        .vertices()
        .iter()
        .map(|v| sub(v, &p.vertices()[0]))
        .collect();
    Error::NotFullDimensional {
        rank: rank_of(&diffs, p.dim()),
        dim: p.dim(),
    }
}

/// `|det|` of `d` vectors in `R^d`.
pub fn parallelepiped_volume(rays: &[Vector]) -> Result<Rational> {
    let d = rays.len();
    if let Some(r) = rays.iter().find(|r| r.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: r.len(),
        });
    }
    Ok(Matrix::new(rays.to_vec())?.det()?.abs())
}

/// Euclidean volume of the simplex on `m + 1` points of `R^m`.
pub fn simplex_volume(vertices: &[Vector]) -> Result<Rational> {
    let Some((v0, rest)) = vertices.split_first() else {
        return Err(Error::Empty);
    };
    let m = rest.len();
    if let Some(v) = vertices.iter().find(|v| v.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: v.len(),
        });
    }
    let edges: Vec<Vector> = rest.iter().map(|v| sub(v, v0)).collect();
    let det = if m == 0 {
        rat(1)
    } else {
        Matrix::new(edges)?.det()?
    };
    if det.is_zero() {
        return Err(Error::DegenerateSimplex);
    }
    let fact: i64 = (1..=m as i64).product();
    Ok(det.abs() / rat(fact))
}

pub fn polytope_volume(p: &VPolytope) -> Result<Rational> {
    polytope_volume_with_seed(p, 0)
}

pub fn polytope_volume_with_seed(p: &VPolytope, seed: u64) -> Result<Rational> {
    let t = triangulate_polytope(p, seed)?;
    t.simplices()
        .iter()
        .map(|s| simplex_volume(&rows(p.vertices(), s)))
        .sum()
}
