#![allow(dead_code)]

use polyadjoint::arrangements::is_simple;
use polyadjoint::linalg::{rat, ratio, Rational, Vector};
use polyadjoint::polytope::{
    cone_over, dual_polytope, translate_to_origin_interior, vertex_enumeration, Facet, HPolytope,
    VPolytope,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn segment() -> VPolytope {
    VPolytope::from_i64(&[&[-1], &[1]]).unwrap()
}

pub fn square() -> VPolytope {
    VPolytope::from_i64(&[&[1, 1], &[-1, 1], &[-1, -1], &[1, -1]]).unwrap()
}

pub fn pentagon() -> VPolytope {
    VPolytope::from_i64(&[&[1, 1], &[-1, 1], &[2, 0], &[-1, -1], &[0, -2]]).unwrap()
}

pub fn regular_cube() -> VPolytope {
    VPolytope::new(
        3,
        (0..8)
            .map(|i| {
                (0..3)
                    .map(|k| rat(if i >> k & 1 == 1 { 1 } else { -1 }))
                    .collect()
            })
            .collect(),
    )
    .unwrap()
}

/// A rational point on the unit circle, `((1 - t^2), 2t) / (1 + t^2)`.
fn circle_point(t: &Rational) -> Vector {
    let d = rat(1) + t * t;
    vec![(rat(1) - t * t) / &d, (rat(2) * t) / &d]
}

/// Convex `n`-gon inscribed in the unit circle with the origin inside.
pub fn random_ngon(n: usize, seed: u64) -> VPolytope {
    let mut r = rng(seed);
    loop {
        let mut ts: Vec<Rational> = Vec::new();
        while ts.len() < n {
            let t = ratio(r.gen_range(-40..=40), r.gen_range(1..=12));
            if !ts.contains(&t) {
                ts.push(t);
            }
        }
        let pts: Vec<Vector> = ts.iter().map(circle_point).collect();
        if let Ok(p) = VPolytope::new(2, pts) {
            if dual_polytope(&p).is_ok() {
                return p;
            }
        }
    }
}

/// The cube `|y_k| ≤ 1` with facet `±e_k·y ≤ 1` tilted by `eps` times
/// `plus[k]` or `minus[k]`.
pub fn tilted_cube(eps: &Rational, plus: &[[i64; 3]; 3], minus: &[[i64; 3]; 3]) -> VPolytope {
    let mut facets = Vec::new();
    for k in 0..3 {
        for (s, tilt) in [(1, &plus[k]), (-1, &minus[k])] {
            let a: Vector = (0..3)
                .map(|j| rat(if j == k { s } else { 0 }) + eps * rat(tilt[j]))
                .collect();
            facets.push(Facet::new(a, rat(1)));
        }
    }
    vertex_enumeration(&HPolytope::new(3, facets).unwrap()).unwrap()
}

pub const TILT_A: ([[i64; 3]; 3], [[i64; 3]; 3]) = (
    [[0, 1, 2], [2, 0, 1], [1, 2, 0]],
    [[0, -3, 1], [1, 0, -2], [-1, 3, 0]],
);

pub const TILT_B: ([[i64; 3]; 3], [[i64; 3]; 3]) = (
    [[0, -2, 1], [1, 0, 3], [-2, -1, 0]],
    [[0, 1, 1], [-3, 0, 1], [2, -2, 0]],
);

/// A generic perturbation of the regular cube: 8 vertices, simple arrangement.
pub fn generic_cube() -> VPolytope {
    let p = tilted_cube(&ratio(1, 10), &TILT_A.0, &TILT_A.1);
    assert_eq!(p.vertices().len(), 8);
    assert!(is_simple(&cone_over(&p).unwrap()));
    p
}

/// A random nondegenerate simplex in `R^m` translated to its vertex centroid.
pub fn random_simplex(m: usize, seed: u64) -> VPolytope {
    let mut r = rng(seed);
    loop {
        let pts: Vec<Vector> = (0..=m)
            .map(|_| (0..m).map(|_| rat(r.gen_range(-10..=10))).collect())
            .collect();
        if let Ok(p) = VPolytope::new(m, pts) {
            if p.is_full_dimensional() {
                return translate_to_origin_interior(&p).0;
            }
        }
    }
}

/// The instance list shared by the property criteria.
pub fn instances() -> Vec<(&'static str, VPolytope)> {
    vec![
        ("segment", segment()),
        ("square", square()),
        ("pentagon", pentagon()),
        ("random 4-gon", random_ngon(4, 11)),
        ("random 5-gon", random_ngon(5, 12)),
        ("random 6-gon", random_ngon(6, 13)),
        ("generic 3-cube", generic_cube()),
        ("random 3-simplex", random_simplex(3, 14)),
    ]
}
