//! Acceptance suite: one test per gate criterion, each printing a PASS/FAIL
//! line (`cargo test -p coamoeba-cli --test acceptance -- --nocapture`).

use std::time::Instant;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coamoeba::angle::TAU;
use coamoeba::coamoeba::{
    classify_localization, glue_coamoeba, line_coamoeba_membership, triangle_area,
    LocalizationLabel,
};
use coamoeba::lattice::RatVec;
use coamoeba::mirror::{
    deform_exponent, deformed_polynomial, mirror_polynomial, tropical_mirror, DeformationContext,
};
use coamoeba::newton::{lower_hull_subdivision, LiftedPointSet};
use coamoeba::poly::{ComplexPolynomial2, PolynomialOverSeries};
use coamoeba::puiseux::PuiseuxSeries;
use coamoeba::sampler::{
    complement_components, ft_family, raster_hausdorff, sample_coamoeba, SampleConfig, TorusRaster,
};
use coamoeba::tropical::{balancing_check, corner_locus_2d, duality_check, TropicalPolynomial};
use coamoeba::LatticePoint;

const PI: f64 = std::f64::consts::PI;

fn report(criterion: usize, name: &str, ok: bool, detail: &str) {
    println!(
        "acceptance {criterion} ({name}): {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} ({name}) failed: {detail}");
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn one() -> PuiseuxSeries {
    PuiseuxSeries::constant(Complex64::new(1.0, 0.0))
}

fn pt(c: &[i64]) -> LatticePoint {
    LatticePoint::from_i64s(c)
}

fn series_poly(terms: Vec<(LatticePoint, PuiseuxSeries)>) -> PolynomialOverSeries {
    PolynomialOverSeries::new(2, terms).expect("test polynomial")
}

fn model_of(f: &PolynomialOverSeries) -> coamoeba::coamoeba::CoamoebaModel {
    let lift = LiftedPointSet::new(f.order_lift()).expect("lift");
    let sub = lower_hull_subdivision(&lift).expect("subdivision");
    glue_coamoeba(f, &sub).expect("glued model")
}

#[test]
fn criterion_1_line_coamoeba_area() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let samples = 1_000_000u32;
    let mut hits = 0u32;
    for _ in 0..samples {
        let theta = [rng.gen::<f64>() * TAU, rng.gen::<f64>() * TAU];
        if line_coamoeba_membership(&theta, false).unwrap() {
            hits += 1;
        }
    }
    let fraction = hits as f64 / samples as f64;
    let elapsed = start.elapsed();
    let ok = (fraction - 0.25).abs() < 0.02 && elapsed.as_secs_f64() < 5.0;
    report(
        1,
        "line coamoeba area",
        ok,
        &format!("fraction {fraction:.5} over 1e6 samples in {elapsed:?}"),
    );
}

#[test]
fn criterion_2_simplex_covering_counts() {
    // f1 = w^3 z^2 + w z^3 + 1 and f2 = w^2 z^2 + z + w.
    let f1 = series_poly(vec![
        (pt(&[2, 3]), one()),
        (pt(&[3, 1]), one()),
        (pt(&[0, 0]), one()),
    ]);
    let f2 = series_poly(vec![
        (pt(&[2, 2]), one()),
        (pt(&[1, 0]), one()),
        (pt(&[0, 1]), one()),
    ]);
    let m1 = model_of(&f1);
    let m2 = model_of(&f2);
    let p1 = &m1.pieces[0];
    let p2 = &m2.pieces[0];

    // The transport matrices must invert to the printed fractions
    // (1/7)[[3,-1],[-2,3]] and (1/3)[[1,1],[-2,1]]: check det·I products.
    let mul = |a: &Vec<Vec<i64>>, b: [[i64; 2]; 2]| -> [[i64; 2]; 2] {
        let mut out = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    };
    let id7 = mul(&p1.matrix_t, [[3, -1], [-2, 3]]);
    let id3 = mul(&p2.matrix_t, [[1, 1], [-2, 1]]);

    let t1 = p1.polygons_2d();
    let t2 = p2.polygons_2d();
    let area1: f64 = t1.iter().map(triangle_area).sum();
    let area2: f64 = t2.iter().map(triangle_area).sum();
    let target = PI * PI;

    let ok = p1.det == 7
        && p2.det == 3
        && id7 == [[7, 0], [0, 7]]
        && id3 == [[3, 0], [0, 3]]
        && t1.len() == 14
        && t2.len() == 6
        && (area1 - target).abs() < 1e-6
        && (area2 - target).abs() < 1e-6;
    report(
        2,
        "simplex covering counts",
        ok,
        &format!(
            "det f1 = {} ({} triangles, union area {area1:.9}), det f2 = {} ({} triangles, union area {area2:.9}); the union of the preimage triangles of a degree-d covering has area π² = {target:.9}",
            p1.det,
            t1.len(),
            p2.det,
            t2.len()
        ),
    );
}

// Squared distance from a point to the curve's 1-skeleton. This is only a
// filter for choosing clearly-off-curve grid points, so float arithmetic
// with a conservative margin is enough; the maximizer assertions themselves
// run in exact rationals.
fn distance2_to_curve(curve: &coamoeba::tropical::TropicalCurve, x: &[f64; 2]) -> Option<f64> {
    use coamoeba::lattice::rat_to_f64;
    fn seg_dist2(a: [f64; 2], b: [f64; 2], x: &[f64; 2], clamp_top: bool) -> f64 {
        let dx = [b[0] - a[0], b[1] - a[1]];
        let px = [x[0] - a[0], x[1] - a[1]];
        let dd = dx[0] * dx[0] + dx[1] * dx[1];
        let mut t = if dd == 0.0 {
            0.0
        } else {
            (px[0] * dx[0] + px[1] * dx[1]) / dd
        };
        t = t.max(0.0);
        if clamp_top {
            t = t.min(1.0);
        }
        let ex = px[0] - t * dx[0];
        let ey = px[1] - t * dx[1];
        ex * ex + ey * ey
    }
    let vf = |v: &RatVec| [rat_to_f64(&v[0]), rat_to_f64(&v[1])];
    let mut best: Option<f64> = None;
    let mut push = |d: f64| {
        if best.is_none_or(|b| d < b) {
            best = Some(d);
        }
    };
    for e in &curve.edges {
        push(seg_dist2(
            vf(&curve.vertices[e.from]),
            vf(&curve.vertices[e.to]),
            x,
            true,
        ));
    }
    for r in &curve.rays {
        let base = vf(&curve.vertices[r.base]);
        let d = r.direction.to_i64s().unwrap();
        // A long segment stands in for the ray; grid points live in [-8,8]².
        let far = [base[0] + d[0] as f64 * 64.0, base[1] + d[1] as f64 * 64.0];
        push(seg_dist2(base, far, x, true));
    }
    for l in &curve.lines {
        let n = l.normal.to_i64s().unwrap();
        let v = n[0] as f64 * x[0] + n[1] as f64 * x[1] - rat_to_f64(&l.offset);
        let nn = (n[0] * n[0] + n[1] * n[1]) as f64;
        push(v * v / nn);
    }
    best
}

#[test]
fn criterion_3_kapranov_property_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut instances = 0usize;
    while instances < 200 {
        let term_count = rng.gen_range(2..=12usize);
        let mut terms: Vec<(LatticePoint, BigRational)> = Vec::new();
        for _ in 0..term_count {
            let alpha = pt(&[rng.gen_range(0..=6i64), rng.gen_range(0..=6i64)]);
            if terms.iter().any(|(p, _)| *p == alpha) {
                continue;
            }
            let c = rat(rng.gen_range(-12..=12i64), rng.gen_range(1..=4i64));
            terms.push((alpha, c));
        }
        if terms.len() < 2 {
            continue;
        }
        instances += 1;
        let p = TropicalPolynomial::new(2, terms);
        let curve = corner_locus_2d(&p).expect("at least two terms");
        assert!(
            duality_check(&curve, &curve.subdivision),
            "duality failed on instance {instances}"
        );
        assert!(
            balancing_check(&curve),
            "balancing failed on instance {instances}"
        );

        // Emitted curve points carry at least two maximizers.
        let mut on_curve: Vec<RatVec> = curve.vertices.clone();
        for e in &curve.edges {
            on_curve.push(
                curve.vertices[e.from]
                    .iter()
                    .zip(&curve.vertices[e.to])
                    .map(|(a, b)| (a + b) / rat(2, 1))
                    .collect(),
            );
        }
        for r in &curve.rays {
            for k in [1i64, 3] {
                on_curve.push(
                    curve.vertices[r.base]
                        .iter()
                        .zip(r.direction.coords())
                        .map(|(a, d)| a + BigRational::from(d.clone()) * rat(k, 1))
                        .collect(),
                );
            }
        }
        for l in &curve.lines {
            // A point on the line: offset·n/|n|².
            let n = l.normal.to_rat();
            let nn = &n[0] * &n[0] + &n[1] * &n[1];
            on_curve.push(vec![&l.offset * &n[0] / &nn, &l.offset * &n[1] / &nn]);
        }
        for x in &on_curve {
            assert!(
                p.maximizer_set(x).len() >= 2,
                "instance {instances}: curve point with a unique maximizer"
            );
        }

        // Off-curve grid points (farther than the unit grid step, with a
        // conservative float margin) have exactly one maximizer.
        for gx in -8..=8i64 {
            for gy in -8..=8i64 {
                if let Some(d2) = distance2_to_curve(&curve, &[gx as f64, gy as f64]) {
                    if d2 <= 1.1 {
                        continue;
                    }
                }
                let x: RatVec = vec![rat(gx, 1), rat(gy, 1)];
                assert_eq!(
                    p.maximizer_set(&x).len(),
                    1,
                    "instance {instances}: off-curve grid point {gx},{gy} with several maximizers"
                );
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = elapsed.as_secs_f64() < 60.0;
    report(
        3,
        "Kapranov property suite",
        ok,
        &format!("200 random instances checked in {elapsed:?}"),
    );
}

#[test]
fn criterion_4_mirror_properties() {
    // Parabola-type deformation: triangle (0,0),(2,0),(0,1) with the extra
    // point (1,0) of order -1/2, vertex orders zero.
    let f = series_poly(vec![
        (pt(&[0, 0]), one()),
        (pt(&[2, 0]), one()),
        (pt(&[0, 1]), one()),
        (
            pt(&[1, 0]),
            PuiseuxSeries::monomial(rat(-1, 2), Complex64::new(1.0, 0.0)),
        ),
    ]);

    // Branch continuity at u = 0 is exact.
    let ctx = DeformationContext::from_parts(
        pt(&[1, 0]),
        Complex64::new(1.0, 0.0),
        rat(-1, 2),
        rat(0, 1),
    )
    .unwrap();
    let from_plus = deform_exponent(&ctx, &rat(0, 1)).unwrap();
    let continuity = from_plus == rat(0, 1);

    // Trivial dual subdivision across the mirror range.
    let mut trivial = true;
    for k in 0..=8 {
        let u = rat(-k, 9);
        let fu = deformed_polynomial(&f, &u).unwrap();
        let sub = lower_hull_subdivision(&LiftedPointSet::new(fu.order_lift()).unwrap()).unwrap();
        trivial &= sub.cells.len() == 1;
    }

    // Mirror involution is exact.
    let involution = mirror_polynomial(&mirror_polynomial(&f)) == f;

    // At u = 0 the mirror curve is the point reflection of the deformed fan.
    let f0 = deformed_polynomial(&f, &rat(0, 1)).unwrap();
    let fan = corner_locus_2d(&TropicalPolynomial::from_series_polynomial(&f0)).unwrap();
    let mirror = tropical_mirror(&f, &rat(0, 1)).unwrap();
    let mut fan_vertices: Vec<RatVec> = fan
        .vertices
        .iter()
        .map(|v| v.iter().map(|x| -x).collect())
        .collect();
    fan_vertices.sort();
    let mut mirror_vertices = mirror.vertices.clone();
    mirror_vertices.sort();
    let mut fan_rays: Vec<Vec<i64>> = fan
        .rays
        .iter()
        .map(|r| r.direction.neg().to_i64s().unwrap())
        .collect();
    fan_rays.sort();
    let mut mirror_rays: Vec<Vec<i64>> = mirror
        .rays
        .iter()
        .map(|r| r.direction.to_i64s().unwrap())
        .collect();
    mirror_rays.sort();
    let reflection = fan_vertices == mirror_vertices && fan_rays == mirror_rays;

    let ok = continuity && trivial && involution && reflection;
    report(
        4,
        "mirror properties",
        ok,
        &format!(
            "continuity {continuity}, trivial subdivision {trivial}, involution {involution}, reflection at u=0 {reflection}"
        ),
    );
}

#[test]
fn criterion_5_localization_classification() {
    // Square example with a generic inner phase: the two pieces overlap
    // across the inner codual line.
    let square = series_poly(vec![
        (pt(&[0, 0]), one()),
        (pt(&[1, 0]), one()),
        (pt(&[0, 1]), one()),
        (
            pt(&[1, 1]),
            PuiseuxSeries::monomial(rat(1, 1), Complex64::new(0.0, 1.0)),
        ),
    ]);
    let model = model_of(&square);
    let inner = model
        .codual_lines
        .iter()
        .position(|l| !l.external)
        .expect("inner line");
    let comps = classify_localization(&model, inner, 1024).unwrap();
    let inner_ok = !comps.is_empty() && comps.iter().all(|c| c.label == LocalizationLabel::FullDim);

    // Lone standard simplex: only discrete touches, at codual intersections.
    let simplex = series_poly(vec![
        (pt(&[0, 0]), one()),
        (pt(&[1, 0]), one()),
        (pt(&[0, 1]), one()),
    ]);
    let lone = model_of(&simplex);
    let mut lone_ok = true;
    for idx in 0..lone.codual_lines.len() {
        let comps = classify_localization(&lone, idx, 1024).unwrap();
        lone_ok &= !comps.is_empty()
            && comps
                .iter()
                .all(|c| c.label == LocalizationLabel::Discrete && c.near_intersection);
    }

    let ok = inner_ok && lone_ok;
    report(
        5,
        "localization classification",
        ok,
        &format!("inner line engulfed: {inner_ok}; lone simplex discrete at codual intersections: {lone_ok}"),
    );
}

fn quad_example(alpha: f64) -> ComplexPolynomial2 {
    ComplexPolynomial2::from_i64_terms(&[
        ((0, 1), Complex64::from_polar(1.0, alpha)),
        ((1, 0), Complex64::new(1.0, 0.0)),
        ((1, 2), Complex64::new(1.0, 0.0)),
        ((3, 1), Complex64::new(1.0, 0.0)),
    ])
}

#[test]
fn criterion_6_component_counts() {
    // The quadrilateral (1,0),(0,1),(1,2),(3,1): a generic complex rotation
    // of one coefficient realizes all 6 complement components (the lattice
    // point count of the polygon); real signs realize 5. Note the rotation
    // angle must avoid π/2: substituting (z,w) -> (-iz,-w) carries the
    // α = π/2 curve onto the real one, so its coamoeba is a torus translate
    // of the α = 0 coamoeba and has the same count.
    let cfg = SampleConfig {
        raster_size: 1024,
        modulus_count: 768,
        argument_count: 768,
        log_modulus_range: (-6.0, 6.0),
        threads: 4,
        ..SampleConfig::default()
    };

    let t0 = Instant::now();
    let complex_raster = sample_coamoeba(&quad_example(1.0), &cfg).unwrap();
    let complex_count = complement_components(&complex_raster);
    let complex_time = t0.elapsed();

    let t1 = Instant::now();
    let real_raster = sample_coamoeba(&quad_example(0.0), &cfg).unwrap();
    let real_count = complement_components(&real_raster);
    let real_time = t1.elapsed();

    let ok = complex_count == 6
        && real_count == 5
        && complex_time.as_secs_f64() < 120.0
        && real_time.as_secs_f64() < 120.0;
    report(
        6,
        "component counts",
        ok,
        &format!(
            "complex rotation: {complex_count} components in {complex_time:?}; real signs: {real_count} components in {real_time:?}"
        ),
    );
}

#[test]
fn criterion_7_degeneration_trend() {
    // Scaled square polynomial 1 + z + w + e·zw and its complex tropical
    // limit model 1 + z + w + t^{-1} zw.
    let f_c = ComplexPolynomial2::from_i64_terms(&[
        ((0, 0), Complex64::new(1.0, 0.0)),
        ((1, 0), Complex64::new(1.0, 0.0)),
        ((0, 1), Complex64::new(1.0, 0.0)),
        ((1, 1), Complex64::new(1.0f64.exp(), 0.0)),
    ]);
    let f_k = series_poly(vec![
        (pt(&[0, 0]), one()),
        (pt(&[1, 0]), one()),
        (pt(&[0, 1]), one()),
        (
            pt(&[1, 1]),
            PuiseuxSeries::monomial(rat(-1, 1), Complex64::new(1.0, 0.0)),
        ),
    ]);
    let model = model_of(&f_k);

    let r = 128usize;
    let mut exact = TorusRaster::new(r);
    let line_tol = TAU / r as f64;
    for j in 0..r {
        for i in 0..r {
            let c = exact.center(i, j);
            if model.closed_membership(&c, line_tol) {
                exact.set(i, j, true);
            }
        }
    }

    let cell = TAU / r as f64;
    let mut distances = Vec::new();
    let mut last_count = 0usize;
    for t in [(-1.0f64).exp(), 0.2, 0.1, 0.05] {
        let ft = ft_family(&f_c, t).unwrap();
        let cfg = SampleConfig {
            raster_size: r,
            modulus_count: 1024,
            argument_count: 1024,
            log_modulus_range: (-9.0, 9.0),
            threads: 4,
            ..SampleConfig::default()
        };
        let sampled = sample_coamoeba(&ft, &cfg).unwrap();
        distances.push(raster_hausdorff(&sampled, &exact).unwrap());
        last_count = complement_components(&sampled);
    }
    let monotone = distances.windows(2).all(|w| w[1] <= w[0] + cell);
    let counts_agree = last_count == complement_components(&exact);
    let ok = monotone && counts_agree;
    report(
        7,
        "degeneration trend",
        ok,
        &format!(
            "Hausdorff distances {:?} (cell {cell:.4}), complement counts at t=0.05: sampled {last_count} vs exact {}",
            distances
                .iter()
                .map(|d| format!("{d:.4}"))
                .collect::<Vec<_>>(),
            complement_components(&exact)
        ),
    );
}

#[test]
fn criterion_8_reflection_identity() {
    // w = z² - 2z + λ and w = 1/(z² - 2z + λ) at λ = 1 + i.
    let lambda = Complex64::new(1.0, 1.0);
    let direct = ComplexPolynomial2::new(vec![
        (pt(&[0, 1]), Complex64::new(1.0, 0.0)),
        (pt(&[2, 0]), Complex64::new(-1.0, 0.0)),
        (pt(&[1, 0]), Complex64::new(2.0, 0.0)),
        (pt(&[0, 0]), -lambda),
    ])
    .unwrap();
    let reciprocal = ComplexPolynomial2::new(vec![
        (pt(&[2, 1]), Complex64::new(1.0, 0.0)),
        (pt(&[1, 1]), Complex64::new(-2.0, 0.0)),
        (pt(&[0, 1]), lambda),
        (pt(&[0, 0]), Complex64::new(-1.0, 0.0)),
    ])
    .unwrap();
    let cfg = SampleConfig {
        raster_size: 256,
        modulus_count: 768,
        argument_count: 768,
        threads: 4,
        ..SampleConfig::default()
    };
    let a = sample_coamoeba(&direct, &cfg).unwrap();
    let b = sample_coamoeba(&reciprocal, &cfg).unwrap();
    let agreement = a.agreement(&b.reflect_theta2()).unwrap();
    let ok = agreement >= 0.99;
    report(
        8,
        "reflection identity",
        ok,
        &format!("cell agreement {agreement:.4} under (θ1, θ2) ↦ (θ1, 2π - θ2)"),
    );
}

#[test]
fn criterion_9_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_coam");
    let dir = std::env::temp_dir().join("coam-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let poly = dir.join("line.json");
    std::fs::write(
        &poly,
        r#"{
  "variables": 2,
  "field": "complex",
  "terms": [
    {"exponent": [0, 0], "coefficient": {"re": 1.0, "im": 0.0}},
    {"exponent": [1, 0], "coefficient": {"re": 1.0, "im": 0.0}},
    {"exponent": [0, 1], "coefficient": {"re": 1.0, "im": 0.0}}
  ]
}
"#,
    )
    .unwrap();

    let run = |threads: usize, tag: &str| -> (Vec<u8>, Vec<u8>) {
        let pgm = dir.join(format!("line-{tag}.pgm"));
        let summary = dir.join(format!("line-{tag}.json"));
        let status = std::process::Command::new(bin)
            .args([
                "sample",
                "--in",
                poly.to_str().unwrap(),
                "--raster",
                "256",
                "--moduli",
                "256",
                "--args",
                "256",
                "--seed",
                "11",
                "--threads",
                &threads.to_string(),
                "--out",
                pgm.to_str().unwrap(),
                "--summary",
                summary.to_str().unwrap(),
            ])
            .status()
            .expect("run coam");
        assert!(status.success());
        (
            std::fs::read(&pgm).unwrap(),
            std::fs::read(&summary).unwrap(),
        )
    };
    let (pgm1, sum1) = run(1, "t1");
    let (pgm8, sum8) = run(8, "t8");
    let (pgm1b, sum1b) = run(1, "t1b");

    // SVG artifacts are byte-identical across invocations too.
    let svg = |tag: &str| -> Vec<u8> {
        let out = dir.join(format!("line-{tag}.svg"));
        let model = dir.join(format!("model-{tag}.json"));
        let status = std::process::Command::new(bin)
            .args([
                "coamoeba",
                "--in",
                poly.to_str().unwrap(),
                "--out",
                model.to_str().unwrap(),
                "--render",
                out.to_str().unwrap(),
            ])
            .status()
            .expect("run coam");
        assert!(status.success());
        std::fs::read(&out).unwrap()
    };
    let svg1 = svg("s1");
    let svg2 = svg("s2");

    let ok = pgm1 == pgm8 && sum1 == sum8 && pgm1 == pgm1b && sum1 == sum1b && svg1 == svg2;
    report(
        9,
        "CLI determinism",
        ok,
        &format!(
            "PGM bytes equal across --threads 1/8 and reruns: {}; SVG bytes equal: {}",
            pgm1 == pgm8 && pgm1 == pgm1b,
            svg1 == svg2
        ),
    );
}
