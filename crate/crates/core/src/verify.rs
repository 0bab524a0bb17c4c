//! The verification suite run by `polyadjoint verify`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adjoint::{adjoint_cone, adjoint_via_facet_recursion_multi};
use crate::arrangements::{
    is_simple, minimal_degree_vanishing_space, residual_arrangement, vanishes_on,
};
use crate::canonical::{canonical_form, canonical_form_value_oracle, CanonicalForm};
use crate::error::Result;
use crate::linalg::{rat, Rational, Vector};
use crate::poly::{max_coefficient_distance, normalize_max_abs, Polynomial};
use crate::polytope::{cone_over, dual_cone, PointedCone, VPolytope};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, ok: bool, detail: String) -> Self {
        Self {
            name,
            status: if ok { Status::Pass } else { Status::Fail },
            detail,
        }
    }

    fn skipped(name: &'static str, detail: &str) -> Self {
        Self {
            name,
            status: Status::Skipped,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub points: usize,
    pub tolerance: f64,
    /// Perturbs the canonical-form numerator after calibration. Test fixture.
    pub corrupt_numerator: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            seed: 0,
            points: 20,
            tolerance: 1e-9,
            corrupt_numerator: false,
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.status != Status::Fail)
}

/// Random rational points with all barycentric weights positive.
pub fn random_interior_points(p: &VPolytope, n: usize, seed: u64) -> Vec<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let verts = p.vertices();
    (0..n)
        .map(|_| {
            let w: Vec<i64> = verts.iter().map(|_| rng.gen_range(1..=20)).collect();
            let total = rat(w.iter().sum());
            (0..p.dim())
                .map(|j| {
                    verts
                        .iter()
                        .zip(&w)
                        .map(|(v, &wi)| &v[j] * rat(wi))
                        .sum::<Rational>()
                        / &total
                })
                .collect()
        })
        .collect()
}

/// Checks on the adjoint of `k`, which must vanish on the residual
/// arrangement of `k∨`.
fn cone_checks(k: &PointedCone, opts: &Options) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let base = adjoint_cone(k, opts.seed);
    let expected = k.rays().len() - k.dim();
    out.push(Check::new(
        "degree",
        base.degree == expected && base.raw.is_homogeneous() && base.raw.degree() == expected,
        format!("degree {} = |V| - dim = {}", base.raw.degree(), expected),
    ));

    let mut same = true;
    let mut valid = true;
    for s in opts.seed..opts.seed + 5 {
        let a = adjoint_cone(k, s);
        valid &= a.triangulation.verify(k.rays()).is_ok();
        same &= a.polynomial == base.polynomial && a.raw == base.raw;
    }
    out.push(Check::new(
        "triangulation-independence",
        same && valid,
        format!("seeds {}..{}", opts.seed, opts.seed + 5),
    ));

    let other = dual_cone(k)?;
    let arrangement = residual_arrangement(&other);
    out.push(Check::new(
        "vanishing",
        vanishes_on(&base.polynomial, &arrangement)?,
        format!("{} residual subspaces", arrangement.len()),
    ));

    if is_simple(&other) {
        let space = minimal_degree_vanishing_space(&other)?;
        out.push(Check::new(
            "uniqueness",
            space.len() == 1 && space[0] == base.polynomial,
            format!("vanishing space has dimension {}", space.len()),
        ));
    } else {
        out.push(Check::skipped("uniqueness", "arrangement is not simple"));
    }

    let exact = normalize_max_abs(&base.polynomial.to_f64_coeffs());
    let runs = adjoint_via_facet_recursion_multi(k, opts.seed, 2)?;
    let worst = runs
        .iter()
        .map(|(approx, _)| max_coefficient_distance(&normalize_max_abs(approx), &exact))
        .fold(0.0, f64::max);
    out.push(Check::new(
        "recursion",
        worst <= opts.tolerance,
        format!("max distance {worst:.3e} over {} linear forms", runs.len()),
    ));
    Ok(out)
}

pub fn corrupt(form: &CanonicalForm) -> CanonicalForm {
    let mut bad = form.clone();
    bad.numerator = &bad.numerator + &Polynomial::one(bad.numerator.nvars());
    bad
}

/// Full suite for a polytope with the origin in its interior. The adjoint
/// checked is that of the dual of the cone over `p`.
pub fn verify_polytope(p: &VPolytope, opts: &Options) -> Result<Vec<Check>> {
    let k = dual_cone(&cone_over(p)?)?;
    let mut out = cone_checks(&k, opts)?;
    let mut form = canonical_form(p, opts.seed)?;
    if opts.corrupt_numerator {
        form = corrupt(&form);
    }
    let points = random_interior_points(p, opts.points, opts.seed);
    let mut mismatches = 0;
    for x in &points {
        if form.evaluate(x)? != canonical_form_value_oracle(p, x)? {
            mismatches += 1;
        }
    }
    out.push(Check::new(
        "oracle",
        mismatches == 0,
        format!("{mismatches} of {} points disagree", points.len()),
    ));
    Ok(out)
}

/// Suite for a cone file; the adjoint checked is that of the cone itself.
pub fn verify_cone(c: &PointedCone, opts: &Options) -> Result<Vec<Check>> {
    let mut out = cone_checks(c, opts)?;
    out.push(Check::skipped("oracle", "input is a cone"));
    Ok(out)
}
