//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num::{Signed, Zero};
use polyadjoint::adjoint::{
    adjoint_cone, adjoint_polytope, adjoint_via_facet_recursion_multi, flip_chart_signs,
};
use polyadjoint::arrangements::{
    check_adjoint_vanishes, is_simple, minimal_degree_vanishing_space, perturbation_limit_check,
    residual_arrangement, vanishes_on,
};
use polyadjoint::canonical::{canonical_form, canonical_form_value_oracle, dilated_dual_vertices};
use polyadjoint::io::PolynomialJson;
use polyadjoint::linalg::{dot, rat, ratio, vector, Rational, Vector};
use polyadjoint::poly::{max_coefficient_distance, normalize_max_abs, Polynomial};
use polyadjoint::polytope::{
    cone_over, dual_cone, dual_polytope, facet_enumeration, PointedCone, VPolytope,
};
use polyadjoint::triangulation::{simplex_volume, triangulate_polytope};
use polyadjoint::verify::random_interior_points;

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn pentagon_conic() -> Polynomial {
    Polynomial::from_terms(
        3,
        [
            (vec![2, 0, 0], ratio(3, 2)),
            (vec![1, 1, 0], ratio(1, 4)),
            (vec![0, 2, 0], ratio(-1, 8)),
            (vec![1, 0, 1], ratio(-1, 4)),
            (vec![0, 1, 1], ratio(-1, 4)),
            (vec![0, 0, 2], ratio(-1, 8)),
        ],
    )
}

fn positive_multiple(a: &Polynomial, b: &Polynomial) -> Result<Rational, String> {
    match a.equal_up_to_scalar(b) {
        Some(l) if l.is_positive() => Ok(l),
        Some(l) => Err(format!("scalar {l} is not positive")),
        None => Err(format!("{a} is not proportional to {b}")),
    }
}

/// The cone whose adjoint is the canonical-form numerator of `p`.
fn numerator_cone(p: &VPolytope) -> PointedCone {
    dual_cone(&cone_over(p).unwrap()).unwrap()
}

fn pentagon_adjoint() -> Result<Polynomial, String> {
    let q = pentagon();
    let qd = dual_polytope(&q).map_err(|e| e.to_string())?;
    // Dual-cone convention, equal to the cone over the reflected dual.
    let a = adjoint_cone(&numerator_cone(&q), 0).raw;
    positive_multiple(&a, &pentagon_conic())?;
    // Polytope convention in the x0 = 1 chart: exact equality.
    let affine = adjoint_polytope(&qd, 0).map_err(|e| e.to_string())?.raw;
    ensure(
        affine.homogenize_to(2) == pentagon_conic(),
        "polytope adjoint differs",
    )?;
    // The cone over Q∨ itself gives the conic after x -> (x0, -x).
    let literal = adjoint_cone(&cone_over(&qd).unwrap(), 0).raw;
    positive_multiple(&flip_chart_signs(&literal), &pentagon_conic())?;
    Ok(a)
}

fn c1() -> Outcome {
    let a = pentagon_adjoint()?;
    let l = positive_multiple(&a, &pentagon_conic())?;
    Ok(format!("adjoint = {l} * ({})", pentagon_conic()))
}

fn c2() -> Outcome {
    let a = pentagon_adjoint()?;
    let pts = [
        vector(&[1, 3, 1]),
        vector(&[1, -1, 3]),
        vector(&[1, -3, 1]),
        vector(&[1, -1, -3]),
        vector(&[0, 1, -1]),
    ];
    for p in &pts {
        let v = a.evaluate(p).map_err(|e| e.to_string())?;
        ensure(v.is_zero(), format!("value {v} at {p:?}"))?;
    }
    Ok("zero at the five residual points".into())
}

fn c3() -> Outcome {
    let reg = cone_over(&regular_cube()).unwrap();
    let r = residual_arrangement(&reg);
    ensure(
        r.len() == 3,
        format!("regular cube: {} residual subspaces", r.len()),
    )?;
    for s in &r.subspaces {
        ensure(
            s.dim() == 2,
            "regular cube: residual member is not a projective line",
        )?;
        ensure(s.basis.iter().all(|b| b[0].is_zero()), "line not in x0 = 0")?;
    }
    ensure(!is_simple(&reg), "regular cube reported simple")?;
    let x0sq = Polynomial::from_terms(4, [(vec![2, 0, 0, 0], rat(1))]);
    positive_multiple(&adjoint_cone(&dual_cone(&reg).unwrap(), 0).raw, &x0sq)?;

    let gen = cone_over(&generic_cube()).unwrap();
    let r = residual_arrangement(&gen);
    ensure(
        r.len() == 3,
        format!("generic cube: {} residual subspaces", r.len()),
    )?;
    for (i, a) in r.subspaces.iter().enumerate() {
        ensure(a.dim() == 2, "generic cube: residual member is not a line")?;
        for b in &r.subspaces[i + 1..] {
            ensure(a.meets_trivially(b), "generic cube: lines meet")?;
        }
    }
    ensure(is_simple(&gen), "generic cube not simple")?;
    let space = minimal_degree_vanishing_space(&gen).map_err(|e| e.to_string())?;
    ensure(
        space.len() == 1,
        format!("vanishing space dimension {}", space.len()),
    )?;
    let adj = adjoint_cone(&dual_cone(&gen).unwrap(), 0).raw;
    ensure(
        space[0].equal_up_to_scalar(&adj).is_some(),
        "quadric differs from adjoint",
    )?;
    Ok(
        "regular: 3 lines in x0 = 0, not simple, x0^2; generic: 3 skew lines, unique quadric"
            .into(),
    )
}

fn c4() -> Outcome {
    let mut total = 0;
    for (i, (name, p)) in instances().into_iter().enumerate() {
        let f = canonical_form(&p, 0).map_err(|e| format!("{name}: {e}"))?;
        for x in random_interior_points(&p, 20, 100 + i as u64) {
            let got = f.evaluate(&x).map_err(|e| e.to_string())?;
            let want = canonical_form_value_oracle(&p, &x).map_err(|e| e.to_string())?;
            ensure(got == want, format!("{name}: {got} != {want} at {x:?}"))?;
            total += 1;
        }
    }
    Ok(format!("{total} points, exact equality"))
}

fn json_bytes(p: &Polynomial) -> String {
    serde_json::to_string(&PolynomialJson::from(p)).unwrap()
}

fn c5() -> Outcome {
    let mut count = 0;
    for (name, p) in instances() {
        let k = numerator_cone(&p);
        let c = cone_over(&p).unwrap();
        let first = (
            json_bytes(&adjoint_cone(&k, 0).polynomial),
            json_bytes(&adjoint_cone(&c, 0).polynomial),
            json_bytes(&adjoint_polytope(&p, 0).unwrap().polynomial),
        );
        for seed in 1..6 {
            let next = (
                json_bytes(&adjoint_cone(&k, seed).polynomial),
                json_bytes(&adjoint_cone(&c, seed).polynomial),
                json_bytes(&adjoint_polytope(&p, seed).unwrap().polynomial),
            );
            ensure(next == first, format!("{name}: seed {seed} differs"))?;
            count += 1;
        }
    }
    Ok(format!("{count} seed comparisons identical"))
}

fn c6() -> Outcome {
    let mut cones: Vec<(String, PointedCone)> = Vec::new();
    for (name, p) in instances() {
        cones.push((format!("{name} cone"), cone_over(&p).unwrap()));
        cones.push((format!("{name} dual cone"), numerator_cone(&p)));
    }
    cones.push((
        "orthant".into(),
        PointedCone::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap(),
    ));
    let mut constant = 0;
    for (name, c) in &cones {
        let a = adjoint_cone(c, 0);
        let want = c.rays().len() - c.dim();
        ensure(
            a.raw.is_homogeneous() && a.raw.degree() == want && a.degree == want,
            format!("{name}: degree {} expected {want}", a.raw.degree()),
        )?;
        if want == 0 {
            constant += 1;
        }
    }
    ensure(constant >= 2, "no simplicial instance")?;
    Ok(format!(
        "{} cones, {constant} with constant adjoint",
        cones.len()
    ))
}

fn c7() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for (name, p) in instances() {
        if !(2..=3).contains(&p.dim()) {
            continue;
        }
        for c in [cone_over(&p).unwrap(), numerator_cone(&p)] {
            let exact = normalize_max_abs(&adjoint_cone(&c, 0).polynomial.to_f64_coeffs());
            let runs =
                adjoint_via_facet_recursion_multi(&c, 5, 2).map_err(|e| format!("{name}: {e}"))?;
            ensure(runs[0].1 != runs[1].1, "linear forms coincide")?;
            for (approx, ell) in &runs {
                let d = max_coefficient_distance(&normalize_max_abs(approx), &exact);
                ensure(
                    d <= 1e-9,
                    format!("{name}: distance {d:e} with L = {ell:?}"),
                )?;
                worst = worst.max(d);
                n += 1;
            }
        }
    }
    Ok(format!("{n} runs, max distance {worst:.2e}"))
}

fn check_dilation(p: &VPolytope, x: &[Rational]) -> Result<(), String> {
    let v: Vec<Vector> = facet_enumeration(p).unwrap().normalized().unwrap();
    let u = dilated_dual_vertices(p, x).map_err(|e| e.to_string())?;
    let factor: Rational = v.iter().map(|vf| (rat(1) - dot(vf, x)).recip()).product();
    let lhs = simplex_volume(&u).map_err(|e| e.to_string())?;
    let rhs = simplex_volume(&v).map_err(|e| e.to_string())? * factor;
    ensure(lhs == rhs, format!("{lhs} != {rhs}"))
}

fn c8() -> Outcome {
    let mut n = 0;
    for m in 1..=4 {
        for seed in 0..6 {
            let p = random_simplex(m, 1000 + 10 * m as u64 + seed);
            for x in random_interior_points(&p, 5, seed) {
                check_dilation(&p, &x)?;
                n += 1;
            }
        }
    }
    // Also on each simplex of a triangulation of a non-simplex dual.
    for (name, p) in instances() {
        let dual = dual_polytope(&p).unwrap();
        let t = triangulate_polytope(&dual, 0).unwrap();
        for x in random_interior_points(&p, 3, 7) {
            for s in t.simplices() {
                let verts: Vec<Vector> = s.iter().map(|&i| dual.vertices()[i].clone()).collect();
                let scale: Vec<Rational> = verts.iter().map(|v| rat(1) - dot(v, &x)).collect();
                let dilated: Vec<Vector> = verts
                    .iter()
                    .zip(&scale)
                    .map(|(v, s)| v.iter().map(|c| c / s).collect())
                    .collect();
                let factor: Rational = scale.iter().map(|s| s.recip()).product();
                let lhs = simplex_volume(&dilated).map_err(|e| e.to_string())?;
                let rhs = simplex_volume(&verts).map_err(|e| e.to_string())? * factor;
                ensure(lhs == rhs, format!("{name}: {lhs} != {rhs}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} simplices, exact"))
}

fn c9() -> Outcome {
    let mut subspaces = 0;
    let mut extra = vec![("regular 3-cube", regular_cube())];
    extra.extend(instances());
    for (name, p) in extra {
        let c = cone_over(&p).unwrap();
        let k = numerator_cone(&p);
        let r = residual_arrangement(&c);
        let adj = adjoint_cone(&k, 0).polynomial;
        for s in &r.subspaces {
            let res = adj
                .restrict_to_subspace(&s.basis)
                .map_err(|e| e.to_string())?;
            ensure(
                res.is_zero(),
                format!("{name}: restriction {res} is nonzero"),
            )?;
        }
        ensure(vanishes_on(&adj, &r).unwrap(), name)?;
        ensure(
            check_adjoint_vanishes(&k, 0).unwrap(),
            format!("{name}: dual check"),
        )?;
        ensure(
            check_adjoint_vanishes(&c, 0).unwrap(),
            format!("{name}: primal check"),
        )?;
        subspaces += r.len();
    }
    Ok(format!(
        "{subspaces} residual subspaces, all restrictions zero"
    ))
}

fn c10() -> Outcome {
    let target = regular_cube();
    let family = |tilt: &([[i64; 3]; 3], [[i64; 3]; 3])| -> Vec<VPolytope> {
        [10, 100, 1000]
            .iter()
            .map(|&t| tilted_cube(&ratio(1, t), &tilt.0, &tilt.1))
            .collect()
    };
    let a = perturbation_limit_check(&family(&TILT_A), &target, 1e-2).map_err(|e| e.to_string())?;
    let b = perturbation_limit_check(&family(&TILT_B), &target, 1e-2).map_err(|e| e.to_string())?;
    for (label, rep) in [("A", &a), ("B", &b)] {
        let d = &rep.distances;
        ensure(
            d.windows(2).all(|w| w[1] < w[0]),
            format!("family {label}: {d:?} not decreasing"),
        )?;
        ensure(rep.converged, format!("family {label}: {d:?}"))?;
    }
    let la = a.limit_coefficients.iter().cloned().collect();
    let lb = b.limit_coefficients.iter().cloned().collect();
    let mutual = max_coefficient_distance(&la, &lb);
    ensure(mutual < 1e-2, format!("mutual distance {mutual:e}"))?;
    Ok(format!(
        "A {:.1e}/{:.1e}/{:.1e}, B {:.1e}/{:.1e}/{:.1e}, mutual {mutual:.1e}",
        a.distances[0],
        a.distances[1],
        a.distances[2],
        b.distances[0],
        b.distances[1],
        b.distances[2]
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 pentagon adjoint", c1, 1),
        ("2 pentagon vanishing", c2, 1),
        ("3 cube examples", c3, 10),
        ("4 canonical-form oracle equality", c4, 30),
        ("5 triangulation independence", c5, 10),
        ("6 degree formula", c6, 10),
        ("7 facet recursion", c7, 10),
        ("8 dilation identity", c8, 5),
        ("9 residual vanishing", c9, 10),
        ("10 perturbation convergence", c10, 10),
    ];
    let mut failed = 0;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| {
            if elapsed > Duration::from_secs(limit) {
                Err(format!("took {elapsed:.2?}, limit {limit} s"))
            } else {
                Ok(detail)
            }
        });
        match result {
            Ok(detail) => println!("PASS criterion {name} ({elapsed:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} ({elapsed:.2?}): {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
