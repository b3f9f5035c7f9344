//! Self-check suites behind the `verify` CLI command.
//!
//! Each check pins one identity of the library to a numeric threshold and
//! reports the worst residual it saw. Exact checks carry a zero threshold:
//! those identities cancel term by term in floating point, and any nonzero
//! residual means a structural regression, not rounding. Thresholds of the
//! inexact checks scale with the `tolerance` factor (1.0 = the pinned
//! defaults).

use crate::algebra::{
    cross3, expm, inner_product, isometry_residual, quadric_residual, Mat4, Quadric, QuadricKind,
    Vec4,
};
use crate::curve::Curve4;
use crate::groups::{
    infinitesimal_generator, one_param_jet, one_param_matrix, two_param_matrix, verify_closed_form,
    RotationPair,
};
use crate::killing::{
    bracket, bracket_table, generator, is_closed_subalgebra, killing_field, lie_derivative_metric,
    GeneratorId, KillingCoefficients,
};
use crate::surface::{curvature_report, moving_frame, SurfaceSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::{self, Write};

/// One named residual against its threshold.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
}

impl Check {
    fn new(name: &str, residual: f64, threshold: f64) -> Check {
        Check {
            name: name.to_string(),
            residual,
            threshold,
        }
    }

    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual <= self.threshold
    }
}

fn rand_vec(rng: &mut ChaCha8Rng) -> Vec4 {
    Vec4([
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
    ])
}

/// Ambient linear algebra: ternary products, determinant pairing, the power
/// series exponential, quadric membership.
pub fn algebra_suite(tolerance: f64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut checks = Vec::new();

    let anchor = cross3(Vec4::basis(2), Vec4::basis(3), Vec4::basis(4));
    let expect = Vec4([-1.0, 0.0, 0.0, 0.0]);
    checks.push(Check::new(
        "ternary product anchor",
        (anchor - expect).max_abs(),
        0.0,
    ));

    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (x, y, z, w) = (
            rand_vec(&mut rng),
            rand_vec(&mut rng),
            rand_vec(&mut rng),
            rand_vec(&mut rng),
        );
        let lhs = inner_product(cross3(x, y, z), w);
        let rhs = Mat4::from_rows([w, x, y, z]).det();
        worst = worst.max((lhs - rhs).abs() / 1.0f64.max(rhs.abs()));
    }
    checks.push(Check::new(
        "ternary product pairs with the determinant",
        worst,
        1e-10 * tolerance,
    ));

    let mut rot = Mat4::ZERO;
    rot.0[0][1] = 1.0;
    rot.0[1][0] = -1.0;
    let theta: f64 = 0.73;
    let series = expm(&(rot * theta), 1e-13).expect("series converges");
    let mut closed = Mat4::IDENTITY;
    closed.0[0][0] = theta.cos();
    closed.0[0][1] = theta.sin();
    closed.0[1][0] = -theta.sin();
    closed.0[1][1] = theta.cos();
    checks.push(Check::new(
        "power series exponential of a rotation block",
        (series - closed).max_abs(),
        1e-12 * tolerance,
    ));

    let mut boost = Mat4::IDENTITY;
    let phi: f64 = 1.2;
    boost.0[0][0] = phi.cosh();
    boost.0[0][2] = phi.sinh();
    boost.0[2][0] = phi.sinh();
    boost.0[2][2] = phi.cosh();
    checks.push(Check::new(
        "hyperbolic block preserves the ambient product",
        isometry_residual(&boost),
        1e-12 * tolerance,
    ));

    let sphere =
        Quadric::new(QuadricKind::PseudoSphere, Vec4::ZERO, 2.0).expect("radius is positive");
    let on_sphere = Vec4([1.0, 0.0, 2.0, 1.0]);
    let r = quadric_residual(on_sphere, &sphere);
    checks.push(Check::new(
        "quadric membership residual",
        r.defect.abs(),
        1e-12 * tolerance,
    ));

    checks
}

/// Symmetry generators: metric compatibility, structure constants, Jacobi,
/// closed subalgebras. All exact.
pub fn killing_suite(_tolerance: f64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut checks = Vec::new();

    let mut worst = 0.0f64;
    for id in GeneratorId::ALL {
        worst = worst.max(lie_derivative_metric(&generator(id)).max_abs());
    }
    checks.push(Check::new(
        "six generators preserve the metric exactly",
        worst,
        0.0,
    ));

    let mut worst = 0.0f64;
    for _ in 0..100 {
        let co = KillingCoefficients {
            a: rng.random_range(-5.0..5.0),
            b: rng.random_range(-5.0..5.0),
            c: rng.random_range(-5.0..5.0),
            d: rng.random_range(-5.0..5.0),
            e: rng.random_range(-5.0..5.0),
            f: rng.random_range(-5.0..5.0),
        };
        worst = worst.max(lie_derivative_metric(&killing_field(&co)).max_abs());
    }
    checks.push(Check::new(
        "random symmetry combinations preserve the metric exactly",
        worst,
        0.0,
    ));

    let table = bracket_table().expect("basis brackets classify against the basis");
    let mut mismatches = 0.0;
    for (i, a) in GeneratorId::ALL.into_iter().enumerate() {
        for (j, b) in GeneratorId::ALL.into_iter().enumerate() {
            let m = bracket(&generator(a), &generator(b)).matrix;
            let residual = match table[i][j] {
                crate::killing::BracketEntry::Zero => m.max_abs(),
                crate::killing::BracketEntry::Plus(c) => (m - generator(c).matrix).max_abs(),
                crate::killing::BracketEntry::Minus(c) => (m + generator(c).matrix).max_abs(),
            };
            if residual != 0.0 {
                mismatches += 1.0;
            }
        }
    }
    checks.push(Check::new(
        "bracket table matches the computed brackets",
        mismatches,
        0.0,
    ));

    let mut worst = 0.0f64;
    for a in GeneratorId::ALL {
        for b in GeneratorId::ALL {
            for c in GeneratorId::ALL {
                let (fa, fb, fc) = (generator(a), generator(b), generator(c));
                let cyc = bracket(&bracket(&fa, &fb), &fc).matrix
                    + bracket(&bracket(&fb, &fc), &fa).matrix
                    + bracket(&bracket(&fc, &fa), &fb).matrix;
                worst = worst.max(cyc.max_abs());
            }
        }
    }
    checks.push(Check::new("Jacobi identity over all triples", worst, 0.0));

    let mut bad = 0.0;
    for (i, a) in GeneratorId::ALL.into_iter().enumerate() {
        for b in GeneratorId::ALL.into_iter().skip(i + 1) {
            let closed = is_closed_subalgebra(&[a, b]).expect("set is nonempty");
            let expected = matches!(
                (a, b),
                (GeneratorId::O1, GeneratorId::O4)
                    | (GeneratorId::O2, GeneratorId::O3)
                    | (GeneratorId::O5, GeneratorId::O6)
            );
            if closed != expected {
                bad += 1.0;
            }
        }
    }
    checks.push(Check::new(
        "exactly three closed two element subalgebras",
        bad,
        0.0,
    ));

    checks
}

/// One and two parameter subgroup matrices against the power series,
/// isometry and group law residuals.
pub fn groups_suite(tolerance: f64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let mut checks = Vec::new();

    let mut worst = 0.0f64;
    for id in GeneratorId::ALL {
        for k in 0..25 {
            let p = if k == 0 {
                -3.0
            } else if k == 1 {
                3.0
            } else {
                rng.random_range(-3.0..3.0)
            };
            worst = worst.max(verify_closed_form(id, p, 1e-10).expect("series converges"));
        }
    }
    checks.push(Check::new(
        "closed one parameter forms match the power series",
        worst,
        1e-10 * tolerance,
    ));

    let mut worst_iso = 0.0f64;
    let mut worst_law = 0.0f64;
    let mut worst_comm = 0.0f64;
    for pair in RotationPair::ALL {
        let (ga, gb) = pair.generators();
        for _ in 0..40 {
            let p1 = rng.random_range(-2.5..2.5);
            let p2 = rng.random_range(-2.5..2.5);
            let q1 = rng.random_range(-2.5..2.5);
            let m = two_param_matrix(pair, p1, p2);
            let scale = 1.0f64.max(m.max_abs() * m.max_abs());
            worst_iso = worst_iso.max(isometry_residual(&m) / scale);

            let law =
                one_param_matrix(ga, p1) * one_param_matrix(ga, q1) - one_param_matrix(ga, p1 + q1);
            worst_law = worst_law.max(law.max_abs() / 1.0f64.max(p1.abs() + q1.abs()).exp());

            let ab = one_param_matrix(ga, p1) * one_param_matrix(gb, p2);
            let ba = one_param_matrix(gb, p2) * one_param_matrix(ga, p1);
            worst_comm = worst_comm.max((ab - ba).max_abs() / scale);
        }
    }
    checks.push(Check::new(
        "subgroup matrices preserve the ambient product",
        worst_iso,
        1e-12 * tolerance,
    ));
    checks.push(Check::new(
        "one parameter group law",
        worst_law,
        1e-12 * tolerance,
    ));
    checks.push(Check::new(
        "commuting pair factors exchange",
        worst_comm,
        1e-13 * tolerance,
    ));

    let mut worst = 0.0f64;
    for id in GeneratorId::ALL {
        let jet = one_param_jet(id, crate::jet::Jet2::variable(0.0));
        let gen = infinitesimal_generator(id);
        for (row, gen_row) in jet.iter().zip(gen.0.iter()) {
            for (entry, g) in row.iter().zip(gen_row.iter()) {
                worst = worst.max((entry.d1 - g).abs());
            }
        }
    }
    checks.push(Check::new(
        "flow derivative at zero equals the generator",
        worst,
        0.0,
    ));

    checks
}

/// The three standard restricted configurations with parameter boxes inside
/// their reduction regime.
pub fn standard_configs() -> Vec<(SurfaceSpec, [f64; 2], [f64; 2])> {
    use crate::curve::ScalarMap;
    let mk = |pair, curve: &str, r1: &str, r2: &str| {
        SurfaceSpec::new(
            pair,
            Curve4::builtin(curve).expect("builtin exists"),
            ScalarMap::parse(r1, None).expect("reparam parses"),
            ScalarMap::parse(r2, None).expect("reparam parses"),
            true,
        )
        .expect("curve is restricted for this pair")
    };
    vec![
        (
            mk(
                RotationPair::Pair14,
                "cosh14",
                "0.8*t + 0.1*t^2",
                "1.1*t - 0.07*t^2",
            ),
            [-1.0, 1.0],
            [1.0, 2.2],
        ),
        (
            mk(
                RotationPair::Pair23,
                "ex2",
                "0.7*t + 0.15*t^2",
                "1.2*t - 0.1*t^2",
            ),
            [-1.0, 1.0],
            [0.4, 1.8],
        ),
        (
            mk(
                RotationPair::Pair56,
                "cosh56",
                "3*t + 0.2*t^2",
                "0.8*t + 0.1*t^3",
            ),
            [-0.7, 0.7],
            [1.1, 2.0],
        ),
    ]
}

/// Surface road agreement: closed formulas against the projection oracle,
/// the flat patch, frame orthonormality, curve jets against finite
/// differences, and invariance under subgroup shifts.
pub fn surfaces_suite(tolerance: f64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let mut checks = Vec::new();
    let configs = standard_configs();

    let anchors: [(usize, f64, f64, f64, f64); 3] = [
        (0, 0.4, 1.3, 0.4746811584803398, 0.24973429402073288),
        (1, 0.3, 0.9, 0.35300325943249405, 0.040169132124747584),
        (2, 0.25, 1.5, 19.637097414184147, 50.67281221177727),
    ];
    let mut worst = 0.0f64;
    for (idx, t, s, gauss, h2) in anchors {
        let r = curvature_report(&configs[idx].0, t, s).expect("anchor point is regular");
        worst = worst
            .max((r.gauss_oracle - gauss).abs() / gauss.abs())
            .max((r.mean_norm_sq - h2).abs() / h2.abs());
    }
    checks.push(Check::new(
        "pinned curvature anchors reproduce",
        worst,
        1e-9 * tolerance,
    ));

    let mut worst_h = 0.0f64;
    let mut worst_mean = 0.0f64;
    let mut worst_gauss = 0.0f64;
    let mut worst_frame = 0.0f64;
    for (spec, tbox, sbox) in &configs {
        for _ in 0..20 {
            let t = rng.random_range(tbox[0]..tbox[1]);
            let s = rng.random_range(sbox[0]..sbox[1]);
            let r = curvature_report(spec, t, s).expect("box stays regular");
            worst_h = worst_h.max(r.h_residual);
            worst_mean = worst_mean.max(r.mean_residual);
            worst_gauss = worst_gauss.max(r.gauss_residual);
            let fr = moving_frame(spec, t, s).expect("box stays regular");
            for i in 0..4 {
                for j in 0..4 {
                    let want = if i == j { f64::from(fr.eps[i]) } else { 0.0 };
                    worst_frame = worst_frame.max((inner_product(fr.e[i], fr.e[j]) - want).abs());
                }
            }
        }
    }
    checks.push(Check::new(
        "closed coefficients match the projections",
        worst_h,
        1e-6 * tolerance,
    ));
    checks.push(Check::new(
        "closed mean curvature matches the projections",
        worst_mean,
        1e-6 * tolerance,
    ));
    checks.push(Check::new(
        "closed curvature scalar matches the projections",
        worst_gauss,
        1e-6 * tolerance,
    ));
    checks.push(Check::new(
        "adapted frames are orthonormal",
        worst_frame,
        1e-9 * tolerance,
    ));

    let flat = SurfaceSpec::standard(
        RotationPair::Pair14,
        Curve4::builtin("lin14").expect("builtin exists"),
    )
    .expect("lin14 is restricted for pair 14");
    let mut worst = 0.0f64;
    for i in 0..7 {
        for j in 0..7 {
            let t = -1.2 + 0.4 * f64::from(i);
            let s = 0.2 + 0.3 * f64::from(j);
            for s in [s, -s] {
                let r = curvature_report(&flat, t, s).expect("flat patch is regular off s = 0");
                worst = worst
                    .max(r.gauss_oracle.abs())
                    .max(r.gauss_closed.abs())
                    .max(r.mean_oracle.max_abs())
                    .max(r.mean_closed.max_abs())
                    .max(r.h_oracle.max_abs())
                    .max(r.h_closed.max_abs());
            }
        }
    }
    checks.push(Check::new(
        "cone patch over the linear profile is flat",
        worst,
        1e-9 * tolerance,
    ));

    let mut worst = 0.0f64;
    for name in Curve4::builtin_names() {
        let curve = Curve4::builtin(name).expect("builtin exists");
        for _ in 0..10 {
            let s = rng.random_range(-2.0..2.0);
            worst = worst.max(curve.fd_check(s, 1e-5).expect("whole line domain"));
        }
    }
    checks.push(Check::new(
        "curve jets agree with finite differences",
        worst,
        1e-6 * tolerance,
    ));

    let mut worst = 0.0f64;
    for (spec, tbox, sbox) in &configs {
        for _ in 0..6 {
            let t = rng.random_range(tbox[0]..tbox[1]);
            let s = rng.random_range(sbox[0]..sbox[1]);
            let base = curvature_report(spec, t, s).expect("box stays regular");
            let d1 = rng.random_range(-0.4..0.4);
            let d2 = rng.random_range(-0.4..0.4);
            let shifted = SurfaceSpec {
                pair: spec.pair,
                curve: spec.curve.clone(),
                reparam1: spec.reparam1.shifted(d1),
                reparam2: spec.reparam2.shifted(d2),
                restricted: spec.restricted,
            };
            let moved = curvature_report(&shifted, t, s).expect("shift keeps the box regular");
            let scale_m = 1.0f64.max(base.metric.e.abs()).max(base.metric.g.abs());
            worst = worst
                .max((moved.metric.e - base.metric.e).abs() / scale_m)
                .max((moved.metric.f - base.metric.f).abs() / scale_m)
                .max((moved.metric.g - base.metric.g).abs() / scale_m);
            let scale_h = 1.0f64.max(base.h_closed.max_abs());
            for (a, b) in moved
                .h_closed
                .as_array()
                .into_iter()
                .zip(base.h_closed.as_array())
            {
                worst = worst.max((a - b).abs() / scale_h);
            }
            worst = worst.max(
                (moved.gauss_oracle - base.gauss_oracle).abs()
                    / 1.0f64.max(base.gauss_oracle.abs()),
            );
            worst = worst.max(
                (moved.mean_norm_sq - base.mean_norm_sq).abs()
                    / 1.0f64.max(base.mean_norm_sq.abs()),
            );
        }
    }
    checks.push(Check::new(
        "invariants survive subgroup shifts",
        worst,
        1e-9 * tolerance,
    ));

    checks
}

pub const SUITE_NAMES: [&str; 4] = ["algebra", "killing", "groups", "surfaces"];

pub fn suite_by_name(name: &str, tolerance: f64) -> Option<Vec<Check>> {
    match name {
        "algebra" => Some(algebra_suite(tolerance)),
        "killing" => Some(killing_suite(tolerance)),
        "groups" => Some(groups_suite(tolerance)),
        "surfaces" => Some(surfaces_suite(tolerance)),
        _ => None,
    }
}

pub fn all_suites(tolerance: f64) -> Vec<(&'static str, Vec<Check>)> {
    SUITE_NAMES
        .into_iter()
        .map(|n| (n, suite_by_name(n, tolerance).expect("name is known")))
        .collect()
}

/// Print one line per check and a summary; returns whether everything
/// passed.
pub fn render(w: &mut dyn Write, suites: &[(&str, Vec<Check>)]) -> io::Result<bool> {
    let mut all = true;
    let mut total = 0;
    writeln!(
        w,
        "{:<58} {:>12} {:>12} {:>7}",
        "check", "residual", "threshold", "status"
    )?;
    for (suite, checks) in suites {
        writeln!(w, "[{suite}]")?;
        for c in checks {
            let ok = c.passed();
            all &= ok;
            total += 1;
            writeln!(
                w,
                "  {:<56} {:>12.3e} {:>12.3e} {:>7}",
                c.name,
                c.residual,
                c.threshold,
                if ok { "pass" } else { "FAIL" }
            )?;
        }
    }
    writeln!(
        w,
        "{} checks, {}",
        total,
        if all {
            "all passed"
        } else {
            "FAILURES PRESENT"
        }
    )?;
    Ok(all)
}
