//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! All randomness is seeded so reruns see the same samples.

use std::f64::consts::{FRAC_PI_4, PI, TAU};
use std::process::ExitCode;
use std::time::Instant;

use polspin::beam::{AnglesSpec, JonesSpec};
use polspin::{parse_train, serialize_train, BeamSpec, TrainDocument};
use polspin_core::linalg::{
    self, rotation_about, Mat2, BASIS_CHANGE, BASIS_CHANGE_INV, SIGMA1, SIGMA2, SIGMA3,
};
use polspin_core::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

type Check = Result<String, String>;
type Criterion = Box<dyn FnOnce(&mut StdRng) -> Check>;

fn verdict(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn unit_spinor(rng: &mut StdRng) -> Spinor2 {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        if let Some(s) = Spinor2::new(c(v[0], v[1]), c(v[2], v[3])).normalized() {
            return s;
        }
    }
}

fn su2(rng: &mut StdRng) -> Mat2 {
    let s = unit_spinor(rng);
    Mat2::new(s.c1, -s.c2.conj(), s.c2, s.c1.conj())
}

fn unit_vector(rng: &mut StdRng) -> Vec3 {
    loop {
        let v: Vec3 = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = linalg::norm(v);
        if n > 1e-6 {
            return linalg::scale3(v, 1.0 / n);
        }
    }
}

/// Valid Stokes vector with `s0` spread over four decades and any degree of polarization.
fn stokes(rng: &mut StdRng) -> StokesVector {
    let s0 = 10f64.powf(rng.random_range(-2.0..2.0));
    let p = s0 * rng.random_range(0.0..=1.0);
    let [x, y, z] = linalg::scale3(unit_vector(rng), p);
    StokesVector::new(s0, x, y, z)
}

fn unitary_element(rng: &mut StdRng) -> FilterElement {
    let a = rng.random_range(-PI..PI);
    let b = rng.random_range(-PI..PI);
    match rng.random_range(0..5) {
        0 => FilterElement::PhaseShifter {
            delta1: a,
            delta2: b,
        },
        1 => FilterElement::Rotator { alpha: a },
        2 => FilterElement::Gyrotropic {
            delta1: a,
            delta2: b,
        },
        3 => FilterElement::QuarterWave { axis_angle: a },
        _ => FilterElement::HalfWave { axis_angle: a },
    }
}

fn any_element(rng: &mut StdRng) -> FilterElement {
    if rng.random_bool(0.25) {
        FilterElement::Attenuator {
            eta1: rng.random_range(0.0..3.0),
            eta2: rng.random_range(0.0..3.0),
        }
    } else {
        unitary_element(rng)
    }
}

fn rotation_of(action: MatrixAction) -> Option<Mat3> {
    match action {
        MatrixAction::PoincareRotation { axis, angle } => Some(rotation_about(axis, angle)),
        MatrixAction::ConformalMap { .. } => None,
    }
}

fn vec_diff(a: Vec3, b: Vec3) -> f64 {
    (0..3).map(|i| (a[i] - b[i]).abs()).fold(0.0, f64::max)
}

fn criterion_1() -> Check {
    let pairs = [(SIGMA1, SIGMA3), (SIGMA2, SIGMA1), (SIGMA3, SIGMA2)];
    let worst = pairs
        .iter()
        .map(|(from, to)| (BASIS_CHANGE * *from * BASIS_CHANGE_INV).max_abs_diff(to))
        .fold(0.0, f64::max);
    let flags = basis_permutation_check();
    verdict(
        worst <= 1e-15 && flags.iter().all(|f| *f),
        format!("max err {worst:e}"),
    )
}

fn criterion_2(rng: &mut StdRng) -> Check {
    let mut worst_frame = 0.0f64;
    let mut worst_r = 0.0f64;
    let mut left_handed = 0;
    for _ in 0..10_000 {
        let s = unit_spinor(rng);
        let f = poincare_frame(&s);
        let v = [f.r, f.m_re, f.m_im];
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                worst_frame = worst_frame.max((linalg::dot(v[i], v[j]) - want).abs());
            }
        }
        worst_frame = worst_frame.max(vec_diff(linalg::cross(f.r, f.m_re), f.m_im));
        if linalg::dot(linalg::cross(f.r, f.m_re), f.m_im) < 0.0 {
            left_handed += 1;
        }
        let a = angles_from_spinor(&s);
        let oracle = [
            a.theta.sin() * a.phi.cos(),
            a.theta.sin() * a.phi.sin(),
            a.theta.cos(),
        ];
        worst_r = worst_r.max(vec_diff(f.r, oracle));
    }
    verdict(
        worst_frame < 1e-12 && worst_r < 1e-12 && left_handed == 0,
        format!("frame err {worst_frame:e}, r vs angles {worst_r:e}"),
    )
}

fn criterion_3(rng: &mut StdRng) -> Check {
    let mut worst = 0.0f64;
    let mut worst_neg = 0.0f64;
    for _ in 0..1000 {
        let (q1, q2) = (su2(rng), su2(rng));
        let (Ok(a1), Ok(a2), Ok(a12), Ok(aneg)) = (
            su2_to_so3(&q1),
            su2_to_so3(&q2),
            su2_to_so3(&(q1 * q2)),
            su2_to_so3(&-q1),
        ) else {
            return Err("su2_to_so3 rejected an SU(2) sample".into());
        };
        worst = worst.max(linalg::mat3_max_abs_diff(&a12, &linalg::mat3_mul(&a1, &a2)));
        worst_neg = worst_neg.max(linalg::mat3_max_abs_diff(&aneg, &a1));
    }
    verdict(
        worst < 1e-12 && worst_neg < 1e-12,
        format!("product err {worst:e}, a(-Q) err {worst_neg:e}"),
    )
}

fn criterion_4() -> Check {
    let x = [1.0, 0.0, 0.0];
    let z = [0.0, 0.0, 1.0];
    let mut worst = 0.0f64;
    let grid = (0..100).map(|k| -PI + TAU * (k as f64 + 0.5) / 100.0);
    for d in grid {
        let cases = [
            (
                FilterElement::PhaseShifter {
                    delta1: 0.0,
                    delta2: d,
                },
                rotation_about(x, -d),
            ),
            (
                FilterElement::Rotator { alpha: 0.5 * d },
                rotation_about(z, -d),
            ),
            (
                FilterElement::Gyrotropic {
                    delta1: 0.0,
                    delta2: d,
                },
                rotation_about(z, -d),
            ),
        ];
        for (e, want) in cases {
            let Some(got) = rotation_of(classify(&e)) else {
                return Err(format!("{e:?} classified as a boost"));
            };
            let Ok(a) = su2_to_so3(&matrix_circular(&e).m) else {
                return Err(format!("{e:?} is not in SU(2)"));
            };
            worst = worst.max(linalg::mat3_max_abs_diff(&got, &want));
            worst = worst.max(linalg::mat3_max_abs_diff(&a, &want));
        }
    }

    let x_linear = wave_from_jones(&JonesAmpPhase {
        a1: 1.0,
        a2: 0.0,
        phi1: 0.0,
        phi2: 0.0,
    })
    .map_err(|e| e.to_string())?;
    let out = apply(
        &FilterElement::QuarterWave {
            axis_angle: FRAC_PI_4,
        },
        &x_linear,
    )
    .map_err(|e| e.to_string())?;
    let rz_err = (poincare_frame(&out.spinor()).r[2].abs() - 1.0).abs();

    let mut hwp_err = 0.0f64;
    for k in 0..100 {
        let a = -PI + TAU * k as f64 / 100.0;
        for basis in [Basis::Circular, Basis::Linear] {
            let q = filters::matrix_in(&FilterElement::QuarterWave { axis_angle: a }, basis).full();
            let h = filters::matrix_in(&FilterElement::HalfWave { axis_angle: a }, basis).full();
            hwp_err = hwp_err.max(h.max_abs_diff(&(q * q)));
        }
    }
    verdict(
        worst < 1e-10 && rz_err < 1e-12 && hwp_err < 1e-14,
        format!("rotation err {worst:e}, QWP |r_z| err {rz_err:e}, HWP-QWP² err {hwp_err:e}"),
    )
}

fn criterion_5(rng: &mut StdRng) -> Check {
    let mut worst = 0.0f64;
    let mut worst_s = 0.0f64;
    for _ in 0..1000 {
        let (eta1, eta2) = (rng.random_range(0.0..=3.0), rng.random_range(0.0..=3.0));
        let mut s = stokes(rng);
        s = s.scaled(1.0 / s.s0.max(1.0));
        let e = FilterElement::Attenuator { eta1, eta2 };
        let cm = coherency_from_stokes(&s).map_err(|e| e.to_string())?;
        let got = stokes_from_coherency(&apply_filter_to_coherency(&e, &cm));
        let (k, eta) = ((-(eta1 + eta2)).exp(), eta2 - eta1);
        let (ch, sh) = (eta.cosh(), eta.sinh());
        let want = StokesVector::new(
            k * (s.s0 * ch + s.s1 * sh),
            k * (s.s1 * ch + s.s0 * sh),
            k * s.s2,
            k * s.s3,
        );
        worst = worst.max(got.max_abs_diff(&want));
        worst_s = worst_s.max((got.purity_invariant() - k * k * s.purity_invariant()).abs());
    }
    verdict(
        worst < 1e-12 && worst_s < 1e-12,
        format!("boost err {worst:e}, S err {worst_s:e}"),
    )
}

fn criterion_6(rng: &mut StdRng) -> Check {
    let mut worst = 0.0f64;
    let mut worst_ctil = 0.0f64;
    for _ in 0..10_000 {
        let s = stokes(rng);
        let cm = coherency_from_stokes(&s).map_err(|e| e.to_string())?;
        let m = cm.matrix();
        let big_s = s.purity_invariant();
        let norm = s.s0 * s.s0;
        worst = worst
            .max((m.det().re - big_s / 4.0).abs() / norm)
            .max(m.det().im.abs() / norm)
            .max((m.trace().re - s.s0).abs() / s.s0)
            .max(((m * m).trace().re - (norm - big_s / 2.0)).abs() / norm);

        let ctil = Mat2::new(
            c(s.s0 + s.s1, 0.0),
            c(s.s2, -s.s3),
            c(s.s2, s.s3),
            c(s.s0 - s.s1, 0.0),
        )
        .scaled_re(0.5);
        let via_u = BASIS_CHANGE * m * BASIS_CHANGE.adjoint();
        let via_basis = cm.in_basis(Basis::Linear).matrix();
        worst_ctil = worst_ctil
            .max(via_u.max_abs_diff(&ctil) / s.s0)
            .max(via_basis.max_abs_diff(&ctil) / s.s0);
    }
    verdict(
        worst < 1e-12 && worst_ctil < 1e-12,
        format!("identities rel err {worst:e}, linear-basis entries rel err {worst_ctil:e}"),
    )
}

fn criterion_7(rng: &mut StdRng) -> Check {
    let mut antipodal = 0.0f64;
    for _ in 0..1000 {
        let s = stokes(rng);
        if s.polarized_flux() < 1e-6 * s.s0 {
            continue;
        }
        let d = eig_decompose(&coherency_from_stokes(&s).map_err(|e| e.to_string())?);
        antipodal = antipodal.max(vec_diff(d.point_minus, linalg::scale3(d.point_plus, -1.0)));
        antipodal = antipodal.max(vec_diff(
            d.point_plus,
            linalg::scale3(s.vector(), 1.0 / s.polarized_flux()),
        ));
    }

    let mut covariance = 0.0f64;
    for _ in 0..100 {
        let train: Vec<FilterElement> = (0..rng.random_range(1..=3))
            .map(|_| unitary_element(rng))
            .collect();
        let f = compose(&train, Basis::Circular).map_err(|e| e.to_string())?;
        let a = su2_to_so3(&f.m).map_err(|e| e.to_string())?;
        let mut s = stokes(rng);
        while s.polarized_flux() < 0.1 * s.s0 {
            s = stokes(rng);
        }
        let cm = coherency_from_stokes(&s).map_err(|e| e.to_string())?;
        let moved = train
            .iter()
            .fold(cm, |acc, e| apply_filter_to_coherency(e, &acc));
        let (before, after) = (eig_decompose(&cm), eig_decompose(&moved));
        covariance = covariance
            .max(vec_diff(
                after.point_plus,
                linalg::mat3_mul_vec(&a, before.point_plus),
            ))
            .max(vec_diff(
                after.point_minus,
                linalg::mat3_mul_vec(&a, before.point_minus),
            ));
    }

    let mut pure_err = 0.0f64;
    for _ in 0..1000 {
        let o = unit_spinor(rng);
        let s0 = 10f64.powf(rng.random_range(-2.0..2.0));
        let d = eig_decompose(&CoherencyMatrix::pure(s0, &o));
        pure_err = pure_err
            .max((d.lambda_plus - s0).abs() / s0)
            .max(d.lambda_minus.abs() / s0)
            .max(vec_diff(d.point_plus, poincare_frame(&o).r));
    }
    verdict(
        antipodal < 1e-10 && covariance < 1e-10 && pure_err < 1e-10,
        format!("antipodality {antipodal:e}, covariance {covariance:e}, pure states {pure_err:e}"),
    )
}

fn criterion_8(rng: &mut StdRng) -> Check {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let a = AngleSet::new(
            rng.random_range(0.0..=PI),
            rng.random_range(0.0..TAU),
            rng.random_range(0.0..TAU),
        )
        .map_err(|e| e.to_string())?;
        let amp = rng.random_range(0.1..2.0);
        let w = WaveState::from_angles(amp, &a).map_err(|e| e.to_string())?;
        let (omega, k) = (rng.random_range(0.5..3.0), rng.random_range(0.5..3.0));
        let (ch, sh) = ((0.5 * a.theta).cos(), (0.5 * a.theta).sin());
        for i in 0..100 {
            for j in 0..100 {
                let (t, z) = (i as f64 * 0.05, j as f64 * 0.05);
                let base = omega * t - k * z + 0.5 * a.chi;
                let (plus, minus) = (base + 0.5 * a.phi, base - 0.5 * a.phi);
                let ex = amp * (ch * plus.cos() + sh * minus.cos());
                let ey = amp * (ch * plus.sin() - sh * minus.sin());
                let (gx, gy) = field_sample(&w, omega, k, t, z);
                worst = worst.max((gx - ex).abs()).max((gy - ey).abs());
            }
        }
    }
    verdict(worst < 1e-12, format!("max err {worst:e}"))
}

fn criterion_9(rng: &mut StdRng) -> Check {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let train: Vec<FilterElement> = (0..rng.random_range(1..=5))
            .map(|_| any_element(rng))
            .collect();
        let s = stokes(rng);
        let cm = coherency_from_stokes(&s).map_err(|e| e.to_string())?;
        for basis in [Basis::Circular, Basis::Linear] {
            let m = mueller_of_train(&train, basis).map_err(|e| e.to_string())?;
            let start = cm.in_basis(basis);
            let via_c = stokes_from_coherency(
                &train
                    .iter()
                    .fold(start, |acc, e| apply_filter_to_coherency(e, &acc)),
            );
            worst = worst.max(m.apply(&s).max_abs_diff(&via_c) / s.s0);
        }
    }
    verdict(worst < 1e-10, format!("max rel err {worst:e}"))
}

fn random_value(rng: &mut StdRng) -> f64 {
    if rng.random_bool(0.2) {
        f64::from_bits(
            rng.random::<u64>() & !(0x7ff << 52) | (rng.random_range(900..1100u64) << 52),
        )
    } else {
        rng.random_range(-10.0..10.0)
    }
}

fn random_document(rng: &mut StdRng) -> TrainDocument {
    let beams = (0..rng.random_range(0..3))
        .map(|_| match rng.random_range(0..3) {
            0 => BeamSpec::Angles(AnglesSpec {
                theta: rng.random_range(0.0..=PI),
                phi: rng.random_range(0.0..TAU),
                chi: rng.random_range(0.0..TAU),
                amp: rng.random_range(1e-3..1e3),
            }),
            1 => BeamSpec::Stokes(stokes(rng).to_array()),
            _ => BeamSpec::Jones(JonesSpec {
                a1: rng.random_range(1e-3..10.0),
                a2: rng.random_range(0.0..10.0),
                phi1: random_value(rng),
                phi2: random_value(rng),
            }),
        })
        .collect();
    let elements = (0..rng.random_range(0..10))
        .map(|_| {
            let (a, b) = (random_value(rng), random_value(rng));
            match rng.random_range(0..6) {
                0 => FilterElement::PhaseShifter {
                    delta1: a,
                    delta2: b,
                },
                1 => FilterElement::Rotator { alpha: a },
                2 => FilterElement::Gyrotropic {
                    delta1: a,
                    delta2: b,
                },
                3 => FilterElement::QuarterWave { axis_angle: a },
                4 => FilterElement::HalfWave { axis_angle: a },
                _ => FilterElement::Attenuator {
                    eta1: a.abs().min(50.0),
                    eta2: b.abs().min(50.0),
                },
            }
        })
        .collect();
    TrainDocument::new(beams, elements)
}

const BAD_LINES: [&str; 12] = [
    "frobnicate x=1",
    "qwp axis=0 axis=1",
    "shifter d1=1",
    "rotate alpha=inf",
    "hwp axis=1e999",
    "beam angles theta=4 phi=0 chi=0 amp=1",
    "beam stokes s0=1 s1=2 s2=0 s3=0",
    "beam jones a1=0 a2=0 phi1=0 phi2=0",
    "atten e1=-0.5 e2=0",
    "gyro d1=1 d2=2 d3=3",
    "rotate 0.5",
    "beam laser power=1",
];

fn criterion_10(rng: &mut StdRng) -> Check {
    let mut mismatches = 0;
    for _ in 0..100 {
        let doc = random_document(rng);
        let parsed = parse_train(serialize_train(&doc).as_bytes());
        if !parsed.diagnostics.is_empty() || parsed.document != doc {
            mismatches += 1;
        }
    }

    let mut recovery_failures = 0;
    for _ in 0..100 {
        let good = random_document(rng);
        let mut lines: Vec<String> = serialize_train(&good).lines().map(str::to_owned).collect();
        let mut bad_at = Vec::new();
        for _ in 0..rng.random_range(1..5) {
            let pos = rng.random_range(0..=lines.len());
            lines.insert(
                pos,
                BAD_LINES[rng.random_range(0..BAD_LINES.len())].to_owned(),
            );
            bad_at.iter_mut().for_each(|p: &mut usize| {
                if *p >= pos {
                    *p += 1
                }
            });
            bad_at.push(pos);
        }
        let ending = if rng.random_bool(0.5) { "\r\n" } else { "\n" };
        let parsed = parse_train(lines.join(ending).as_bytes());
        let mut error_lines: Vec<usize> = parsed.errors().map(|d| d.line - 1).collect();
        bad_at.sort_unstable();
        error_lines.sort_unstable();
        if error_lines != bad_at || parsed.document != good {
            recovery_failures += 1;
        }
    }
    verdict(
        mismatches == 0 && recovery_failures == 0,
        format!(
            "round-trip mismatches {mismatches}/100, recovery failures {recovery_failures}/100"
        ),
    )
}

fn main() -> ExitCode {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let criteria: [(&str, Criterion); 10] = [
        (
            "basis change permutes the Pauli matrices",
            Box::new(|_| criterion_1()),
        ),
        ("Poincaré triad of 10^4 spinors", Box::new(criterion_2)),
        ("SU(2) to SO(3) homomorphism", Box::new(criterion_3)),
        ("filter geometry", Box::new(|_| criterion_4())),
        ("attenuator as Lorentz boost", Box::new(criterion_5)),
        ("coherency identities", Box::new(criterion_6)),
        ("eigen-decomposition", Box::new(criterion_7)),
        ("field complex vs trigonometric form", Box::new(criterion_8)),
        ("Mueller vs coherency route", Box::new(criterion_9)),
        ("train file round-trip and recovery", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let (tag, detail) = match run(&mut rng) {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "[{tag}] {:>2}. {name}: {detail} ({:.2?})",
            i + 1,
            t.elapsed()
        );
    }
    let elapsed = started.elapsed();
    let in_budget = elapsed.as_secs_f64() < 60.0;
    println!(
        "[{}] total runtime {:.2?} (budget 60 s)",
        if in_budget { "PASS" } else { "FAIL" },
        elapsed
    );
    if failed == 0 && in_budget {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
