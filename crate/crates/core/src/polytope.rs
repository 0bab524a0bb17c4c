//! Pointed cones and polytopes in V- and H-representation.
//!
//! Conversions are brute force over generator subsets: a facet of a
//! full-dimensional cone in `R^d` is spanned by `d - 1` independent rays that
//! all other rays lie weakly on one side of. Rays and normals are stored as
//! primitive integer vectors so every derived polynomial is deterministic.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    dot, is_zero_vector, orthogonal_complement, primitive, rank_of, rat, scale, sub, Matrix,
    Rational, Vector,
};

/// Primitive inward normals of the facets of the cone generated by `gens`,
/// which must span `R^dim`. Order follows subset enumeration.
pub(crate) fn cone_facet_normals(gens: &[Vector], dim: usize) -> Vec<Vector> {
    // Positive rescaling keeps every sign test; integer entries keep the
    // elimination below cheap.
    let scaled: Vec<Vector> = gens
        .iter()
        .map(|g| primitive(g).unwrap_or_else(|_| g.clone()))
        .collect();
    let gens = &scaled;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for subset in (0..gens.len()).combinations(dim - 1) {
        let rows: Vec<Vector> = subset.iter().map(|&i| gens[i].clone()).collect();
        let kernel = orthogonal_complement(&rows, dim);
        if kernel.len() != 1 {
            continue;
        }
        let mut n = primitive(&kernel[0]).expect("kernel vector is nonzero");
        let signs: Vec<Rational> = gens.iter().map(|g| dot(&n, g)).collect();
        if signs.iter().all(|s| !s.is_positive()) {
            n = n.iter().map(|x| -x).collect();
        } else if signs.iter().any(Signed::is_negative) {
            continue;
        }
        if seen.insert(n.clone()) {
            out.push(n);
        }
    }
    out
}

/// Index sets of generators lying on each facet.
fn incidences(gens: &[Vector], normals: &[Vector]) -> Vec<BTreeSet<usize>> {
    normals
        .iter()
        .map(|n| {
            gens.iter()
                .enumerate()
                .filter(|(_, g)| dot(n, g).is_zero())
                .map(|(i, _)| i)
                .collect()
        })
        .collect()
}

/// A full-dimensional pointed polyhedral cone given by its extreme rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedCone {
    dim: usize,
    rays: Vec<Vector>,
    facets: Vec<Vector>,
}

impl PointedCone {
    /// Builds a cone from generators that must all be extreme. Generators
    /// are replaced by their primitive integer representatives.
    pub fn new(dim: usize, rays: Vec<Vector>) -> Result<Self> {
        let rays = Self::normalize_rays(dim, rays)?;
        let mut seen = HashSet::new();
        for (i, r) in rays.iter().enumerate() {
            if !seen.insert(r.clone()) {
                return Err(Error::NotExtreme(i));
            }
        }
        let cone = Self::from_distinct_rays(dim, rays)?;
        if let Some(i) = (0..cone.rays.len()).find(|&i| !cone.is_extreme(i)) {
            return Err(Error::NotExtreme(i));
        }
        Ok(cone)
    }

    /// Like [`PointedCone::new`] but drops duplicate and non-extreme
    /// generators instead of rejecting them.
    pub fn from_generators(dim: usize, gens: Vec<Vector>) -> Result<Self> {
        let rays: Vec<Vector> = Self::normalize_rays(dim, gens)?
            .into_iter()
            .unique()
            .collect();
        let cone = Self::from_distinct_rays(dim, rays)?;
        let keep: Vec<Vector> = (0..cone.rays.len())
            .filter(|&i| cone.is_extreme(i))
            .map(|i| cone.rays[i].clone())
            .collect();
        Ok(Self {
            dim,
            rays: keep,
            facets: cone.facets,
        })
    }

    pub fn from_i64(rays: &[&[i64]]) -> Result<Self> {
        let dim = rays.first().map_or(0, |r| r.len());
        Self::new(dim, rays.iter().map(|r| crate::linalg::vector(r)).collect())
    }

    fn normalize_rays(dim: usize, rays: Vec<Vector>) -> Result<Vec<Vector>> {
        if rays.is_empty() {
            return Err(Error::Empty);
        }
        rays.iter()
            .map(|r| {
                if r.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: r.len(),
                    });
                }
                primitive(r)
            })
            .collect()
    }

    fn from_distinct_rays(dim: usize, rays: Vec<Vector>) -> Result<Self> {
        let rank = rank_of(&rays, dim);
        if rank != dim {
            return Err(Error::NotFullDimensional { rank, dim });
        }
        let facets = cone_facet_normals(&rays, dim);
        if rank_of(&facets, dim) != dim {
            return Err(Error::NotPointed);
        }
        Ok(Self { dim, rays, facets })
    }

    fn is_extreme(&self, i: usize) -> bool {
        let active: Vec<Vector> = self
            .facets
            .iter()
            .filter(|n| dot(n, &self.rays[i]).is_zero())
            .cloned()
            .collect();
        rank_of(&active, self.dim) == self.dim - 1
    }

    /// Ambient dimension `m + 1`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    /// Primitive inward facet normals.
    pub fn facet_normals(&self) -> &[Vector] {
        &self.facets
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim
    }

    /// Ray indices lying on each facet, in facet order.
    pub fn facet_incidences(&self) -> Vec<BTreeSet<usize>> {
        incidences(&self.rays, &self.facets)
    }

    /// Whether `x` lies in the interior of the cone.
    pub fn contains_strictly(&self, x: &[Rational]) -> bool {
        self.facets.iter().all(|n| dot(n, x).is_positive())
    }

    pub fn face_lattice(&self) -> FaceLattice {
        FaceLattice::build(&self.rays, &self.facet_incidences(), self.dim, 0)
    }
}

/// A polytope as the convex hull of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Vector>,
    full_dimensional: bool,
}

impl VPolytope {
    /// Every listed point must be a vertex of the hull.
    pub fn new(dim: usize, vertices: Vec<Vector>) -> Result<Self> {
        Self::check_points(dim, &vertices)?;
        let mut seen = HashSet::new();
        if let Some(i) = vertices.iter().position(|v| !seen.insert(v)) {
            return Err(Error::NotExtreme(i));
        }
        let mask = vertex_mask(&vertices, dim);
        if let Some(i) = mask.iter().position(|&v| !v) {
            return Err(Error::NotExtreme(i));
        }
        Ok(Self::unchecked(dim, vertices))
    }

    /// The convex hull of `points`, keeping only its vertices.
    pub fn convex_hull(dim: usize, points: Vec<Vector>) -> Result<Self> {
        Self::check_points(dim, &points)?;
        let points: Vec<Vector> = points.into_iter().unique().collect();
        let mask = vertex_mask(&points, dim);
        let vertices = points
            .into_iter()
            .zip(mask)
            .filter(|(_, keep)| *keep)
            .map(|(p, _)| p)
            .collect();
        Ok(Self::unchecked(dim, vertices))
    }

    pub fn from_i64(points: &[&[i64]]) -> Result<Self> {
        let dim = points.first().map_or(0, |r| r.len());
        Self::new(
            dim,
            points.iter().map(|p| crate::linalg::vector(p)).collect(),
        )
    }

    fn check_points(dim: usize, points: &[Vector]) -> Result<()> {
        if points.is_empty() {
            return Err(Error::Empty);
        }
        match points.iter().find(|p| p.len() != dim) {
            Some(p) => Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            }),
            None => Ok(()),
        }
    }

    fn unchecked(dim: usize, vertices: Vec<Vector>) -> Self {
        let diffs: Vec<Vector> = vertices.iter().map(|v| sub(v, &vertices[0])).collect();
        let full_dimensional = rank_of(&diffs, dim) == dim;
        Self {
            dim,
            vertices,
            full_dimensional,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.full_dimensional
    }

    pub fn require_full_dimensional(&self) -> Result<()> {
        if self.full_dimensional {
            Ok(())
        } else {
            let diffs: Vec<Vector> = self
                .vertices
                .iter()
                .map(|v| sub(v, &self.vertices[0]))
                .collect();
            Err(Error::NotFullDimensional {
                rank: rank_of(&diffs, self.dim),
                dim: self.dim,
            })
        }
    }

    /// Homogenized vertices `(1, v)`.
    pub fn homogenized_vertices(&self) -> Vec<Vector> {
        self.vertices.iter().map(|v| homogenize_point(v)).collect()
    }

    pub fn centroid(&self) -> Vector {
        let n = rat(self.vertices.len() as i64);
        let mut c = vec![rat(0); self.dim];
        for v in &self.vertices {
            for (ci, vi) in c.iter_mut().zip(v) {
                *ci += vi;
            }
        }
        c.iter().map(|x| x / &n).collect()
    }

    pub fn translate(&self, shift: &[Rational]) -> Self {
        Self {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| sub(v, shift)).collect(),
            full_dimensional: self.full_dimensional,
        }
    }

    /// Whether `x` lies strictly inside the (full-dimensional) polytope.
    pub fn contains_strictly(&self, x: &[Rational]) -> Result<bool> {
        let h = facet_enumeration(self)?;
        Ok(h.facets().iter().all(|f| dot(&f.normal, x) < f.offset))
    }

    pub fn face_lattice(&self) -> Result<FaceLattice> {
        let cone = cone_over(self)?;
        Ok(FaceLattice::build(
            cone.rays(),
            &cone.facet_incidences(),
            cone.dim(),
            -1,
        ))
    }
}

pub fn homogenize_point(v: &[Rational]) -> Vector {
    std::iter::once(rat(1)).chain(v.iter().cloned()).collect()
}

/// Which of the (distinct) points are vertices of their convex hull. Works
/// in a coordinate chart of the affine hull, so lower-dimensional point sets
/// are handled too.
fn vertex_mask(points: &[Vector], dim: usize) -> Vec<bool> {
    if points.len() == 1 {
        return vec![true];
    }
    let diffs: Vec<Vector> = points.iter().map(|p| sub(p, &points[0])).collect();
    let (_, chart) = Matrix::new(diffs)
        .map(|m| m.rref())
        .unwrap_or_else(|_| (Matrix::empty(dim), Vec::new()));
    let k = chart.len();
    if k == 0 {
        // all points coincide
        return (0..points.len()).map(|i| i == 0).collect();
    }
    let gens: Vec<Vector> = points
        .iter()
        .map(|p| homogenize_point(&chart.iter().map(|&c| p[c].clone()).collect::<Vector>()))
        .collect();
    let normals = cone_facet_normals(&gens, k + 1);
    gens.iter()
        .map(|g| {
            let active: Vec<Vector> = normals
                .iter()
                .filter(|n| dot(n, g).is_zero())
                .cloned()
                .collect();
            rank_of(&active, k + 1) == k
        })
        .collect()
}

/// The inequality `normal · y <= offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vector,
    pub offset: Rational,
}

impl Facet {
    pub fn new(normal: Vector, offset: Rational) -> Self {
        Self { normal, offset }
    }

    /// `v_F` with `v_F · y <= 1`, defined when the offset is positive.
    pub fn normalized(&self) -> Option<Vector> {
        self.offset
            .is_positive()
            .then(|| scale(&self.normal, &self.offset.recip()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    facets: Vec<Facet>,
}

impl HPolytope {
    /// Irredundancy is not checked here; see [`HPolytope::is_irredundant`].
    pub fn new(dim: usize, facets: Vec<Facet>) -> Result<Self> {
        if let Some(f) = facets.iter().find(|f| f.normal.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: f.normal.len(),
            });
        }
        if facets.iter().any(|f| is_zero_vector(&f.normal)) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { dim, facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// All `v_F`, if every offset is positive (origin strictly inside).
    pub fn normalized(&self) -> Option<Vec<Vector>> {
        self.facets.iter().map(Facet::normalized).collect()
    }

    pub fn is_bounded(&self) -> bool {
        let normals: Vec<Vector> = self.facets.iter().map(|f| f.normal.clone()).collect();
        if rank_of(&normals, self.dim) < self.dim {
            return false;
        }
        // The recession cone is pointed; it is trivial iff it has no
        // extreme ray, and extreme rays have dim - 1 independent tight rows.
        for subset in (0..normals.len()).combinations(self.dim - 1) {
            let rows: Vec<Vector> = subset.iter().map(|&i| normals[i].clone()).collect();
            let kernel = orthogonal_complement(&rows, self.dim);
            if kernel.len() != 1 {
                continue;
            }
            let y = &kernel[0];
            let dots: Vec<Rational> = normals.iter().map(|n| dot(n, y)).collect();
            if dots.iter().all(|d| !d.is_positive()) || dots.iter().all(|d| !d.is_negative()) {
                return false;
            }
        }
        true
    }

    /// Each inequality is tight on `dim` affinely independent vertices.
    pub fn is_irredundant(&self) -> Result<bool> {
        let p = vertex_enumeration(self)?;
        let mut seen = HashSet::new();
        for f in &self.facets {
            let tight: Vec<Vector> = p
                .vertices()
                .iter()
                .filter(|v| dot(&f.normal, v) == f.offset)
                .map(|v| homogenize_point(v))
                .collect();
            if rank_of(&tight, self.dim + 1) != self.dim {
                return Ok(false);
            }
            let mut key = vec![f.offset.clone()];
            key.extend(f.normal.iter().cloned());
            if !seen.insert(primitive(&key)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Cone over `p`: the rays `(1, v)` in primitive form.
pub fn cone_over(p: &VPolytope) -> Result<PointedCone> {
    PointedCone::new(p.dim + 1, p.homogenized_vertices())
}

/// Facets of a full-dimensional polytope, with primitive integer data.
pub fn facet_enumeration(p: &VPolytope) -> Result<HPolytope> {
    p.require_full_dimensional()?;
    let normals = cone_facet_normals(&p.homogenized_vertices(), p.dim + 1);
    let facets = normals
        .into_iter()
        .map(|n| Facet::new(n[1..].iter().map(|x| -x).collect(), n[0].clone()))
        .collect();
    HPolytope::new(p.dim, facets)
}

pub fn vertex_enumeration(h: &HPolytope) -> Result<VPolytope> {
    if !h.is_bounded() {
        return Err(Error::Unbounded);
    }
    let mut seen = HashSet::new();
    let mut vertices = Vec::new();
    for subset in (0..h.facets.len()).combinations(h.dim) {
        let rows: Vec<Vector> = subset.iter().map(|&i| h.facets[i].normal.clone()).collect();
        let a = Matrix::new(rows)?;
        if a.rank() != h.dim {
            continue;
        }
        let b: Vector = subset.iter().map(|&i| h.facets[i].offset.clone()).collect();
        let Some(y) = a.solve(&b)? else { continue };
        if h.facets.iter().all(|f| dot(&f.normal, &y) <= f.offset) && seen.insert(y.clone()) {
            vertices.push(y);
        }
    }
    if vertices.is_empty() {
        return Err(Error::Empty);
    }
    VPolytope::new(h.dim, vertices)
}

/// `P∨ = {y : x·y <= 1 for all x in P}`; its vertices are the `v_F`.
pub fn dual_polytope(p: &VPolytope) -> Result<VPolytope> {
    let h = facet_enumeration(p)?;
    let vertices = h.normalized().ok_or(Error::OriginNotInterior)?;
    VPolytope::new(p.dim, vertices)
}

/// `C∨ = {x : x·y >= 0 for all y in C}`, generated by the inward facet
/// normals of `C`. For a cone over a polytope `P` with the origin inside,
/// the `x0 = 1` slice of the dual cone is `-P∨`, not `P∨`.
pub fn dual_cone(c: &PointedCone) -> Result<PointedCone> {
    PointedCone::new(c.dim, c.facets.clone())
}

/// Translate by minus the vertex centroid; returns the shift that was
/// subtracted.
pub fn translate_to_origin_interior(p: &VPolytope) -> (VPolytope, Vector) {
    let c = p.centroid();
    (p.translate(&c), c)
}

/// A face given by the indices of the generators (vertices or rays) on it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub dim: i64,
    pub vertices: Vec<usize>,
}

/// All faces, sorted by dimension and then by vertex set, with cover
/// relations (`covers[i]` lists faces of dimension one more containing face
/// `i`). For cones the apex is the face with no rays, of dimension 0; for
/// polytopes the empty face has dimension -1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    faces: Vec<Face>,
    covers: Vec<Vec<usize>>,
}

impl FaceLattice {
    fn build(gens: &[Vector], facets: &[BTreeSet<usize>], dim: usize, shift: i64) -> Self {
        let full: BTreeSet<usize> = (0..gens.len()).collect();
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut queue = vec![full.clone()];
        found.insert(full);
        while let Some(face) = queue.pop() {
            for f in facets {
                let g: BTreeSet<usize> = face.intersection(f).copied().collect();
                if found.insert(g.clone()) {
                    queue.push(g);
                }
            }
        }
        let mut faces: Vec<Face> = found
            .into_iter()
            .map(|s| {
                let rows: Vec<Vector> = s.iter().map(|&i| gens[i].clone()).collect();
                Face {
                    dim: rank_of(&rows, dim) as i64 + shift,
                    vertices: s.into_iter().collect(),
                }
            })
            .collect();
        faces.sort();
        let covers = faces
            .iter()
            .map(|f| {
                faces
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| {
                        g.dim == f.dim + 1 && f.vertices.iter().all(|v| g.vertices.contains(v))
                    })
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        Self { faces, covers }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    pub fn faces_of_dim(&self, dim: i64) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == dim)
    }

    /// Number of faces in each dimension, from the lowest upward.
    pub fn f_vector(&self) -> Vec<usize> {
        let lo = self.faces.first().map_or(0, |f| f.dim);
        let hi = self.faces.last().map_or(-1, |f| f.dim);
        (lo..=hi).map(|d| self.faces_of_dim(d).count()).collect()
    }
}
