//! Floating-point adjoint via the facet recursion
//!
//! ```text
//! L(x) adj_C(x) = Σ_F L(n_F) adj_F(x) Π_{v ∈ V(C) \ V(F)} (v · x)
//! ```
//!
//! with unit rays and unit inward normals. Faces are taken from the exact
//! face lattice. On a face `F` spanning `W`, `L` is replaced by `L ∘ proj_W`,
//! which agrees with `L` on the normals of `F`'s facets and makes the
//! identity hold on all of `R^d`. Two-dimensional faces are the base case.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::to_f64;
use crate::poly::Exponent;
use crate::polytope::{Face, PointedCone};

pub type FloatCoeffs = BTreeMap<Exponent, f64>;

const EPS: f64 = 1e-12;

fn fdot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn unit(v: &[f64]) -> Vec<f64> {
    let n = fdot(v, v).sqrt();
    v.iter().map(|x| x / n).collect()
}

/// Orthonormal basis of the span of `vs` (modified Gram-Schmidt).
fn orthonormal_basis(vs: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for q in &basis {
            let c = fdot(&w, q);
            for (wi, qi) in w.iter_mut().zip(q) {
                *wi -= c * qi;
            }
        }
        let n = fdot(&w, &w).sqrt();
        if n > 1e-9 {
            basis.push(w.iter().map(|x| x / n).collect());
        }
    }
    basis
}

fn project(v: &[f64], basis: &[Vec<f64>]) -> Vec<f64> {
    let mut out = vec![0.0; v.len()];
    for q in basis {
        let c = fdot(v, q);
        for (o, qi) in out.iter_mut().zip(q) {
            *o += c * qi;
        }
    }
    out
}

fn add_into(acc: &mut FloatCoeffs, p: &FloatCoeffs, s: f64) {
    for (e, c) in p {
        *acc.entry(e.clone()).or_insert(0.0) += s * c;
    }
}

fn mul(a: &FloatCoeffs, b: &FloatCoeffs) -> FloatCoeffs {
    let mut out = FloatCoeffs::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let e = Exponent(e1.0.iter().zip(&e2.0).map(|(x, y)| x + y).collect());
            *out.entry(e).or_insert(0.0) += c1 * c2;
        }
    }
    out
}

fn linear(coeffs: &[f64]) -> FloatCoeffs {
    let n = coeffs.len();
    coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| (Exponent((0..n).map(|j| (i == j) as u32).collect()), c))
        .collect()
}

fn constant(n: usize, c: f64) -> FloatCoeffs {
    [(Exponent(vec![0; n]), c)].into_iter().collect()
}

/// Exact division by the linear form `l·x`, dividing out the variable with
/// the largest coefficient. The remainder is discarded.
fn divide_by_linear(p: &FloatCoeffs, l: &[f64]) -> FloatCoeffs {
    let (j, lj) = l
        .iter()
        .copied()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .expect("nonempty form");
    let mut rem = p.clone();
    let mut q = FloatCoeffs::new();
    loop {
        let next = rem
            .iter()
            .filter(|(e, _)| e.0[j] > 0)
            .max_by_key(|(e, _)| e.0[j])
            .map(|(e, c)| (e.clone(), *c));
        let Some((e, c)) = next else { break };
        let mut qe = e.0.clone();
        qe[j] -= 1;
        let qc = c / lj;
        rem.remove(&e);
        for (i, &li) in l.iter().enumerate() {
            if i == j || li == 0.0 {
                continue;
            }
            let mut ee = qe.clone();
            ee[i] += 1;
            *rem.entry(Exponent(ee)).or_insert(0.0) -= qc * li;
        }
        *q.entry(Exponent(qe)).or_insert(0.0) += qc;
    }
    q
}

struct Recursion<'a> {
    dim: usize,
    rays: Vec<Vec<f64>>,
    faces: &'a [Face],
    ell: Vec<f64>,
    memo: HashMap<Vec<usize>, FloatCoeffs>,
}

impl Recursion<'_> {
    fn adjoint(&mut self, face: &Face) -> Result<FloatCoeffs> {
        if let Some(p) = self.memo.get(&face.vertices) {
            return Ok(p.clone());
        }
        let k = face.dim as usize;
        let own: Vec<Vec<f64>> = face
            .vertices
            .iter()
            .map(|&i| self.rays[i].clone())
            .collect();
        let result = if k <= 1 {
            constant(self.dim, 1.0)
        } else if k == 2 {
            // area of the parallelogram on two unit rays
            let c = fdot(&own[0], &own[1]);
            constant(self.dim, (1.0 - c * c).max(0.0).sqrt())
        } else {
            let span = orthonormal_basis(&own);
            let ell_w = project(&self.ell, &span);
            if fdot(&ell_w, &ell_w).sqrt() < EPS {
                return Err(Error::DegenerateLinearForm);
            }
            let subfaces: Vec<Face> = self
                .faces
                .iter()
                .filter(|g| {
                    g.dim == face.dim - 1 && g.vertices.iter().all(|v| face.vertices.contains(v))
                })
                .cloned()
                .collect();
            let mut sum = FloatCoeffs::new();
            let mut any = false;
            for g in &subfaces {
                let g_rays: Vec<Vec<f64>> =
                    g.vertices.iter().map(|&i| self.rays[i].clone()).collect();
                let g_span = orthonormal_basis(&g_rays);
                let outside = face
                    .vertices
                    .iter()
                    .find(|v| !g.vertices.contains(v))
                    .expect("facet is a proper face");
                let r = &self.rays[*outside];
                let pr = project(r, &g_span);
                let normal = unit(&r.iter().zip(&pr).map(|(a, b)| a - b).collect::<Vec<_>>());
                let weight = fdot(&ell_w, &normal);
                if weight.abs() < EPS {
                    continue;
                }
                any = true;
                let mut term = self.adjoint(g)?;
                for v in face.vertices.iter().filter(|v| !g.vertices.contains(v)) {
                    term = mul(&term, &linear(&self.rays[*v]));
                }
                add_into(&mut sum, &term, weight);
            }
            if !any {
                return Err(Error::DegenerateLinearForm);
            }
            divide_by_linear(&sum, &ell_w)
        };
        self.memo.insert(face.vertices.clone(), result.clone());
        Ok(result)
    }
}

/// Adjoint of `c` with unit rays, computed by the facet recursion with the
/// linear function `x -> ell·x`.
pub fn adjoint_via_facet_recursion(c: &PointedCone, ell: &[f64]) -> Result<FloatCoeffs> {
    if ell.len() != c.dim() {
        return Err(Error::DimensionMismatch {
            expected: c.dim(),
            found: ell.len(),
        });
    }
    let lattice = c.face_lattice();
    let rays = c
        .rays()
        .iter()
        .map(|r| unit(&r.iter().map(to_f64).collect::<Vec<_>>()))
        .collect();
    let top = lattice.faces().last().expect("full cone is a face").clone();
    let mut rec = Recursion {
        dim: c.dim(),
        rays,
        faces: lattice.faces(),
        ell: ell.to_vec(),
        memo: HashMap::new(),
    };
    let out = rec.adjoint(&top)?;
    Ok(out.into_iter().filter(|(_, c)| *c != 0.0).collect())
}

/// Tries the sum of coordinates first, then seeded random integer forms.
/// Returns the coefficients and the form that was used.
pub fn adjoint_via_facet_recursion_auto(
    c: &PointedCone,
    seed: u64,
) -> Result<(FloatCoeffs, Vec<f64>)> {
    let mut ell = vec![1.0; c.dim()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        match adjoint_via_facet_recursion(c, &ell) {
            Ok(p) => return Ok((p, ell)),
            Err(Error::DegenerateLinearForm) => {
                ell = (0..c.dim()).map(|_| rng.gen_range(-9..=9) as f64).collect();
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegenerateLinearForm)
}

/// Runs the recursion for `count` distinct linear forms: the sum of
/// coordinates, then seeded random integer forms, skipping degenerate ones.
pub fn adjoint_via_facet_recursion_multi(
    c: &PointedCone,
    seed: u64,
    count: usize,
) -> Result<Vec<(FloatCoeffs, Vec<f64>)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(FloatCoeffs, Vec<f64>)> = Vec::new();
    let mut ell = vec![1.0; c.dim()];
    for _ in 0..32 * count.max(1) {
        if out.len() == count {
            break;
        }
        if !out.iter().any(|(_, l)| *l == ell) {
            match adjoint_via_facet_recursion(c, &ell) {
                Ok(p) => out.push((p, ell.clone())),
                Err(Error::DegenerateLinearForm) => {}
                Err(e) => return Err(e),
            }
        }
        ell = (0..c.dim()).map(|_| rng.gen_range(-9..=9) as f64).collect();
    }
    if out.len() < count {
        return Err(Error::DegenerateLinearForm);
    }
    Ok(out)
}
