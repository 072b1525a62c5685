//! Acceptance suite: ten end-to-end criteria covering the axiom checker,
//! certificate soundness and algebra, envelope soundness, metrization
//! transfer, strong generation, both defeat engines, properness, and the
//! CLI contract. Every check is exact (zero tolerance); the two
//! wall-clock bounds are asserted in-process.
//!
//! Run with `cargo test -p coarse-cli --test acceptance`; each criterion
//! is one test that prints its own pass line.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use coarse_cli::spec::SpecDocument;
use coarse_core::{
    cert_compose, cert_diagonal, cert_inverse, cert_union, certify_ball, certify_box,
    certify_lattice_envelope, check_pseudometric_axioms, compose, defeat_lattice, defeat_product,
    envelope, envelope_soundness_check, invert, properness_check, strongly_generates_check,
    subset_on_window, unite, verify_certificate, BoundCertificate, BoundProfile, CheckOptions,
    CoarseError, Distance, Entourage, MetricIndex, Point, Pseudometric, PseudometricFamily,
    Rational, Window,
};

fn opts() -> CheckOptions {
    CheckOptions::with_budget(500_000_000)
}

fn rational(rng: &mut ChaCha8Rng, max_numer: i64) -> Rational {
    let den = rng.gen_range(1..=4i64);
    let num = rng.gen_range(1..=max_numer * den);
    Rational::new(num, den)
}

fn profile(rng: &mut ChaCha8Rng, max_index: u64, max_numer: i64) -> BoundProfile {
    let entries = (0..rng.gen_range(0..4usize))
        .map(|_| (rng.gen_range(1..=max_index), rational(rng, max_numer)))
        .collect();
    BoundProfile::new(entries, rational(rng, max_numer)).unwrap()
}

// == criterion 1: pseudometric axiom suite =================================

/// Squared stripe distance: symmetric and zero on the diagonal, but the
/// triangle inequality fails (e.g. 1 -> 2 -> 3 on the second coordinate).
struct SquaredStripe;

impl Distance for SquaredStripe {
    fn distance(&self, x: &Point, y: &Point) -> Result<Rational, CoarseError> {
        let (_, b) = x.as_lattice()?;
        let (_, b2) = y.as_lattice()?;
        let d = Rational::from(b.abs_diff(b2));
        Ok(&d * &d)
    }
}

#[test]
fn criterion_01_pseudometric_axiom_suite() {
    let start = Instant::now();
    let options = opts();

    let lattice_window = Window::lattice_box(12, 12);
    let mut lattice_metrics = vec![
        Pseudometric::LatticeF0,
        Pseudometric::Discrete,
        Pseudometric::SumWithDiscrete(Box::new(Pseudometric::LatticeF0)),
    ];
    lattice_metrics.extend((1..=5).map(Pseudometric::LatticeFn));
    for d in &lattice_metrics {
        let report = check_pseudometric_axioms(d, &lattice_window, &options).unwrap();
        assert!(report.is_pass(), "{:?}: {}", d, report.first_violation_summary());
    }

    let values = vec![
        Rational::zero(),
        Rational::new(1, 2),
        Rational::one(),
        Rational::new(3, 2),
        Rational::from(2u64),
        Rational::from(3u64),
    ];
    let grid = Window::vector_grid(3, values).unwrap();
    let mut vector_metrics = vec![
        Pseudometric::Discrete,
        Pseudometric::SumWithDiscrete(Box::new(Pseudometric::CoordinateAbs(1))),
    ];
    vector_metrics.extend((1..=5).map(Pseudometric::CoordinateAbs));
    for d in &vector_metrics {
        let report = check_pseudometric_axioms(d, &grid, &options).unwrap();
        assert!(report.is_pass(), "{:?}: {}", d, report.first_violation_summary());
    }

    // a deliberately broken distance is caught with a concrete triple
    let report =
        check_pseudometric_axioms(&SquaredStripe, &Window::lattice_box(2, 4), &options).unwrap();
    assert!(!report.is_pass());
    let triple = report.violations.iter().find_map(|v| match v {
        coarse_core::Violation::Axiom {
            axiom: coarse_core::AxiomKind::Triangle,
            points,
            values,
        } => Some((points.clone(), values.clone())),
        _ => None,
    });
    let (points, values) = triple.expect("triangle violation with witness triple");
    assert_eq!(points.len(), 3);
    assert_eq!(values.len(), 3);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, bound is 10 s");
    println!("criterion 01 (pseudometric axiom suite, {elapsed:?}): pass");
}

// == criterion 2: certificate soundness for the envelope formula ===========

#[test]
fn criterion_02_lattice_envelope_certificates_verify() {
    let options = opts();
    let window = Window::lattice_box(40, 40);
    let family = PseudometricFamily::lattice(40);

    // the worked instance: box size 3, all stripes 1
    let stripes = BoundProfile::uniform(Rational::one()).unwrap();
    let c = certify_lattice_envelope(3, &stripes).unwrap();
    assert_eq!(*c.bound(&MetricIndex::Num(0)), Rational::from(16u64));
    for n in [1u64, 2, 17, 40] {
        assert_eq!(*c.bound(&MetricIndex::Num(n)), Rational::from(7u64));
    }
    let e = Entourage::lattice_envelope(3, stripes).unwrap();
    let report = verify_certificate(&e, &c, &family, &window, &options).unwrap();
    assert!(report.is_pass(), "{}", report.first_violation_summary());

    let mut rng = ChaCha8Rng::seed_from_u64(0x0b5e55ed);
    for trial in 0..50 {
        let m = rng.gen_range(1..=5u64);
        let stripes = profile(&mut rng, 40, 10);
        let e = Entourage::lattice_envelope(m, stripes.clone()).unwrap();
        let c = certify_lattice_envelope(m, &stripes).unwrap();
        let report = verify_certificate(&e, &c, &family, &window, &options).unwrap();
        assert!(
            report.is_pass(),
            "trial {trial} (m = {m}): {}",
            report.first_violation_summary()
        );
    }
    println!("criterion 02 (envelope certificate soundness, 50 random + pinned): pass");
}

// == criteria 3 and 5 share the certified-pair scenarios ===================

struct Scenario {
    family: PseudometricFamily,
    window: Window,
    left: (Entourage, BoundCertificate),
    right: (Entourage, BoundCertificate),
}

fn scenario(rng: &mut ChaCha8Rng, trial: usize) -> Scenario {
    match trial % 3 {
        // two balls around one pseudometric
        0 => {
            let metric = match rng.gen_range(0..3) {
                0 => Pseudometric::LatticeF0,
                1 => Pseudometric::LatticeFn(rng.gen_range(1..=4)),
                _ => Pseudometric::Discrete,
            };
            let ball = |rng: &mut ChaCha8Rng, metric: &Pseudometric| {
                let r = rational(rng, 8);
                (
                    Entourage::metric_ball(metric.clone(), r.clone()),
                    certify_ball(metric, &r).unwrap(),
                )
            };
            Scenario {
                family: PseudometricFamily::single(metric.clone()),
                window: Window::lattice_box(6, 6),
                left: ball(rng, &metric),
                right: ball(rng, &metric),
            }
        }
        // two product boxes over the coordinate family
        1 => {
            let box_pair = |rng: &mut ChaCha8Rng| {
                let bounds = profile(rng, 3, 5);
                (
                    Entourage::product_box(3, bounds.clone()).unwrap(),
                    certify_box(3, &bounds).unwrap(),
                )
            };
            let values = vec![
                Rational::zero(),
                Rational::new(1, 2),
                Rational::one(),
                Rational::from(2u64),
            ];
            Scenario {
                family: PseudometricFamily::coordinate(3),
                window: Window::vector_grid(3, values).unwrap(),
                left: box_pair(rng),
                right: box_pair(rng),
            }
        }
        // two lattice envelopes over the lattice family
        _ => {
            let env_pair = |rng: &mut ChaCha8Rng| {
                let m = rng.gen_range(1..=3u64);
                let stripes = profile(rng, 6, 5);
                (
                    Entourage::lattice_envelope(m, stripes.clone()).unwrap(),
                    certify_lattice_envelope(m, &stripes).unwrap(),
                )
            };
            Scenario {
                family: PseudometricFamily::lattice(6),
                window: Window::lattice_box(6, 6),
                left: env_pair(rng),
                right: env_pair(rng),
            }
        }
    }
}

#[test]
fn criterion_03_certificate_algebra_soundness() {
    let options = opts();
    let mut rng = ChaCha8Rng::seed_from_u64(0xa19eb7a);
    for trial in 0..100 {
        let s = scenario(&mut rng, trial);
        let (e, ce) = &s.left;
        let (f, cf) = &s.right;

        let union = unite(vec![e.clone(), f.clone()]);
        let report =
            verify_certificate(&union, &cert_union(ce, cf), &s.family, &s.window, &options)
                .unwrap();
        assert!(report.is_pass(), "trial {trial} union: {}", report.first_violation_summary());

        let composed = compose(e.clone(), f.clone());
        let report = verify_certificate(
            &composed,
            &cert_compose(ce, cf),
            &s.family,
            &s.window,
            &options,
        )
        .unwrap();
        assert!(report.is_pass(), "trial {trial} compose: {}", report.first_violation_summary());

        let report = verify_certificate(
            &invert(e.clone()),
            &cert_inverse(ce),
            &s.family,
            &s.window,
            &options,
        )
        .unwrap();
        assert!(report.is_pass(), "trial {trial} inverse: {}", report.first_violation_summary());

        let diagonal = Entourage::diagonal_on(&s.window).unwrap();
        let report =
            verify_certificate(&diagonal, &cert_diagonal(), &s.family, &s.window, &options)
                .unwrap();
        assert!(report.is_pass(), "trial {trial} diagonal: {}", report.first_violation_summary());
    }
    println!("criterion 03 (certificate algebra on 100 random certified pairs): pass");
}

// == criterion 4: envelope soundness ========================================

#[test]
fn criterion_04_envelope_soundness() {
    let options = opts();

    // worked example
    let c = BoundCertificate::new(
        [
            (MetricIndex::Num(0), Rational::from(4u64)),
            (MetricIndex::Num(1), Rational::from(2u64)),
            (MetricIndex::Num(2), Rational::from(7u64)),
            (MetricIndex::Num(3), Rational::one()),
        ]
        .into_iter()
        .collect(),
        Rational::one(),
    )
    .unwrap();
    let env = envelope(&c).unwrap();
    assert_eq!(env.m, 7);
    assert_eq!(*env.stripes.bound(1), Rational::from(2u64));
    assert_eq!(*env.stripes.bound(2), Rational::from(7u64));
    assert_eq!(*env.stripes.bound(3), Rational::one());
    assert_eq!(*env.stripes.default_bound(), Rational::one());
    let report = envelope_soundness_check(
        &c,
        &env,
        &PseudometricFamily::lattice(30),
        &Window::lattice_box(30, 30),
        &options,
    )
    .unwrap();
    assert!(report.is_pass(), "{}", report.first_violation_summary());

    // random certificates
    let window = Window::lattice_box(20, 20);
    let family = PseudometricFamily::lattice(20);
    let mut rng = ChaCha8Rng::seed_from_u64(0xe57e10e);
    for trial in 0..100 {
        let entries: BTreeMap<MetricIndex, Rational> = (0..rng.gen_range(0..5usize))
            .map(|_| (MetricIndex::Num(rng.gen_range(0..=8u64)), rational(&mut rng, 12)))
            .collect();
        let c = BoundCertificate::new(entries, rational(&mut rng, 6)).unwrap();
        let env = envelope(&c).unwrap();
        let report = envelope_soundness_check(&c, &env, &family, &window, &options).unwrap();
        assert!(
            report.is_pass(),
            "trial {trial}, cert {c:?}: {}",
            report.first_violation_summary()
        );
    }
    println!("criterion 04 (envelope soundness, 100 random + worked example): pass");
}

// == criterion 5: metrization equivalence ===================================

#[test]
fn criterion_05_metrization_transfer() {
    let options = opts();
    let mut rng = ChaCha8Rng::seed_from_u64(0x3e7a1e);
    for trial in 0..100 {
        let s = scenario(&mut rng, trial);
        let metrized = s.family.metrize();
        for (e, c) in [&s.left, &s.right] {
            let base = verify_certificate(e, c, &s.family, &s.window, &options).unwrap();
            assert!(base.is_pass(), "trial {trial}: {}", base.first_violation_summary());

            // bounds + 1 over the metrized family
            let lifted = c.plus_one();
            let up = verify_certificate(e, &lifted, &metrized, &s.window, &options).unwrap();
            assert!(up.is_pass(), "trial {trial} lift: {}", up.first_violation_summary());

            // and any metrized certificate transfers back verbatim
            let down = verify_certificate(e, &lifted, &s.family, &s.window, &options).unwrap();
            assert!(down.is_pass(), "trial {trial} back: {}", down.first_violation_summary());
        }
    }
    println!("criterion 05 (metrization transfers, 100 random certified entourages): pass");
}

// == criterion 6: single-metric strong generation ===========================

#[test]
fn criterion_06_single_metric_generation() {
    let options = opts();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e6e6);
    for trial in 0..50 {
        let (metric, window) = match trial % 3 {
            0 => (
                Pseudometric::LatticeF0,
                Window::lattice_box(8, 8),
            ),
            1 => (
                Pseudometric::LatticeFn(rng.gen_range(1..=3)),
                Window::lattice_box(8, 8),
            ),
            _ => (
                Pseudometric::CoordinateAbs(rng.gen_range(1..=2)),
                Window::vector_grid(
                    2,
                    vec![
                        Rational::zero(),
                        Rational::new(1, 2),
                        Rational::one(),
                        Rational::from(2u64),
                        Rational::from(3u64),
                    ],
                )
                .unwrap(),
            ),
        };
        let radius = rational(&mut rng, 10);
        let probe = Entourage::metric_ball(metric.clone(), radius.clone());
        let certificate = certify_ball(&metric, &radius).unwrap();
        let candidates: Vec<Entourage> = (1..=10u64)
            .map(|n| Entourage::metric_ball(metric.clone(), Rational::from(n)))
            .collect();

        let report = strongly_generates_check(
            &candidates,
            &[(probe.clone(), certificate)],
            &PseudometricFamily::single(metric.clone()),
            &window,
            &options,
        )
        .unwrap();
        assert!(report.is_pass(), "trial {trial}: {}", report.first_violation_summary());

        // and specifically the ball at the bound's ceiling contains it
        let ceiling = Entourage::metric_ball(metric, Rational::from(radius.ceil_nat().unwrap()));
        assert!(subset_on_window(&probe, &ceiling, &window, &options)
            .unwrap()
            .holds());
    }
    println!("criterion 06 (single-metric strong generation, 50 random probes): pass");
}

// == criterion 7: lattice defeat ============================================

#[test]
fn criterion_07_lattice_defeat() {
    let start = Instant::now();
    let options = opts();
    let window = Window::lattice_box(25, 25);
    let candidates: Vec<(Entourage, BoundCertificate)> = (1..=10u64)
        .map(|m| {
            let stripes = BoundProfile::uniform(Rational::from(m)).unwrap();
            (
                Entourage::lattice_envelope(m, stripes.clone()).unwrap(),
                certify_lattice_envelope(m, &stripes).unwrap(),
            )
        })
        .collect();

    let report = defeat_lattice(&candidates, &window, &options).unwrap();
    assert!(report.all_verified);
    assert_eq!(report.witnesses.len(), 10);
    for (i, w) in report.witnesses.iter().enumerate() {
        let m = (i + 1) as u64;
        assert_eq!(w.candidate, i + 1);
        assert_eq!(
            w.pair,
            (Point::lattice(m, 2 * m + 2), Point::lattice(m, m + 1)),
            "witness {m}"
        );
        assert!(w.in_escapee && w.not_in_candidate, "witness {m} unverified");
    }

    // the escapee itself is a certified member of the structure
    let escapee_report = verify_certificate(
        &report.escapee,
        &report.escapee_certificate,
        &PseudometricFamily::lattice(25),
        &window,
        &options,
    )
    .unwrap();
    assert!(escapee_report.is_pass(), "{}", escapee_report.first_violation_summary());

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, bound is 5 s");
    println!("criterion 07 (lattice defeat of 10 candidates, {elapsed:?}): pass");
}

// == criterion 8: product defeat ============================================

#[test]
fn criterion_08_product_defeat() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8d8d8);
    for trial in 0..20 {
        let candidates: Vec<BoundCertificate> = (0..20)
            .map(|_| {
                let entries: BTreeMap<MetricIndex, Rational> = (1..=20u64)
                    .map(|n| (MetricIndex::Num(n), rational(&mut rng, 9)))
                    .collect();
                BoundCertificate::new(entries, rational(&mut rng, 9)).unwrap()
            })
            .collect();
        let report = defeat_product(&candidates, 20).unwrap();
        assert!(report.all_verified, "trial {trial}");
        assert_eq!(report.witnesses.len(), 20);

        // explicit re-check: the single pair violates candidate m exactly
        // at coordinate m
        let (origin, far) = &report.witnesses[0].pair;
        assert!(report.escapee.contains((origin, far), None).unwrap());
        for (i, c) in candidates.iter().enumerate() {
            let m = (i + 1) as u64;
            let d = Pseudometric::CoordinateAbs(m);
            let value = d.eval(origin, far).unwrap();
            assert!(value > *c.bound(&MetricIndex::Num(m)), "trial {trial}, coordinate {m}");
        }
    }
    println!("criterion 08 (product defeat, 20 random diagonal profiles at k = 20): pass");
}

// == criterion 9: properness ================================================

#[test]
fn criterion_09_properness() {
    let options = opts();
    let window = Window::lattice_box(50, 50);
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a9a9);
    for trial in 0..50 {
        let env = coarse_core::Envelope {
            m: rng.gen_range(1..=8),
            stripes: profile(&mut rng, 10, 10),
        };
        let base = Point::lattice(rng.gen_range(1..=50), rng.gen_range(1..=50));
        let report = properness_check(&env, &base, &window, &options).unwrap();
        assert!(
            report.is_pass(),
            "trial {trial}, base {base}, envelope {env:?}: {}",
            report.first_violation_summary()
        );
    }
    println!("criterion 09 (properness of 50 random envelope sections): pass");
}

// == criterion 10: the CLI contract =========================================

const CORPUS: &[(&str, &str, i32)] = &[
    ("verify", "verify_pass.json", 0),
    ("verify", "verify_vacuous.json", 0),
    ("verify", "verify_fail.json", 1),
    ("axioms", "axioms_lattice.json", 0),
    ("axioms", "axioms_vector.json", 0),
    ("envelope", "envelope_pass.json", 0),
    ("proper", "proper_pass.json", 0),
    ("defeat", "defeat_lattice.json", 0),
    ("defeat", "defeat_product.json", 0),
    ("generates", "generates_pass.json", 0),
    ("generates", "generates_fail.json", 1),
    ("verify", "parse_error.json", 2),
    ("verify", "validation_error.json", 2),
    ("verify", "budget_overflow.json", 3),
];

#[test]
fn criterion_10_cli_contract() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    assert!(CORPUS.len() >= 12);
    for (subcommand, name, expected) in CORPUS {
        let path = dir.join(name);
        let run = || {
            std::process::Command::new(env!("CARGO_BIN_EXE_coarse"))
                .arg(subcommand)
                .arg("--spec")
                .arg(&path)
                .output()
                .expect("binary runs")
        };
        let first = run();
        assert_eq!(
            first.status.code(),
            Some(*expected),
            "{name}: stderr = {}",
            String::from_utf8_lossy(&first.stderr)
        );
        let second = run();
        assert_eq!(first.stdout, second.stdout, "{name} not deterministic");

        // every parseable spec round-trips through its own serialization
        if *expected <= 1 {
            let text = std::fs::read_to_string(&path).unwrap();
            let parsed = SpecDocument::parse(&text).unwrap();
            let reparsed = SpecDocument::parse(&parsed.to_json()).unwrap();
            assert_eq!(parsed, reparsed, "{name} round-trip");
        }
    }
    println!(
        "criterion 10 (CLI exit codes, determinism and round-trip on {} specs): pass",
        CORPUS.len()
    );
}
