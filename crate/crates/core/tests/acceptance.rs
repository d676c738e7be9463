//! End-to-end acceptance runs. Each test writes one `PASS` or `FAIL` line.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use common::{hermite, loglog_slope, report, sine, DegenerateFixture};
use mhd_enclose::assembly::{
    assemble_schur, assemble_schur_derivative, assemble_strong_pair, SchurOperator,
    SlabBlockOperator,
};
use mhd_enclose::discretization::{Boundary, ProductBasis};
use mhd_enclose::enclosure::{
    cylinder_enclosure, inverse_residuals, schur_enclosure, zm_direct_enclosure, zm_enclosure,
    Enclosure, SchurProblem, SchurSettings,
};
use mhd_enclose::linalg::{cholesky, eig_generalized, eig_hermitian, HermitianMatrix};
use mhd_enclose::models::{
    exact_cylinder_spectrum, exact_slab21_spectrum, CylinderProfile, ModelSpec, SlabProfile,
};
use mhd_enclose::Complex64;
use rand::{Rng, SeedableRng};

const TOL_QUAD: f64 = 1e-14;
const TOL_EIG: f64 = 1e-12;

fn verdict(name: &str, ok: bool, detail: &str) {
    report(&format!(
        "{} {name}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    ));
}

fn slab_scan(m: usize) -> (f64, f64, usize) {
    let t = (m as f64 * PI).powi(2);
    (t + 1.0, t + 4.0, 300_000)
}

fn run_schur(
    profile: &SlabProfile,
    basis: &mhd_enclose::discretization::BasisTable,
    m: usize,
    scan: (f64, f64, usize),
) -> Enclosure {
    let pb = SchurProblem::new(profile, basis);
    schur_enclosure(&pb, m, scan, &SchurSettings::default(), TOL_QUAD).unwrap()
}

/// Reference (lower, upper) for n = 5, 10, 20, 40 and m = 1..5.
const GRADED_REFERENCE: [(usize, [(f64, f64); 5]); 4] = [
    (
        5,
        [
            (12.35038099, 12.35047799),
            (41.91063750, 41.91065300),
            (91.24746613, 91.24747057),
            (160.33057817, 160.33058480),
            (249.15507400, 249.15519069),
        ],
    ),
    (
        10,
        [
            (12.35042524, 12.35047592),
            (41.91064418, 41.91065224),
            (91.24746778, 91.24747031),
            (160.33058158, 160.33058264),
            (249.15507913, 249.15507976),
        ],
    ),
    (
        20,
        [
            (12.35044946, 12.35047563),
            (41.91064796, 41.91065214),
            (91.24746895, 91.24747026),
            (160.33058204, 160.33058262),
            (249.15507943, 249.15507973),
        ],
    ),
    (
        40,
        [
            (12.35046228, 12.35047559),
            (41.91065001, 41.91065213),
            (91.24746958, 91.24747026),
            (160.33058231, 160.33058261),
            (249.15507957, 249.15507973),
        ],
    ),
];

#[test]
fn graded_slab_reference_widths() {
    let start = Instant::now();
    let prof = SlabProfile::graded_benchmark();
    let mut bad = Vec::new();
    let mut worst_ratio: f64 = 0.0;
    for (n, row) in GRADED_REFERENCE {
        let basis = sine(n);
        for (i, (plo, phi)) in row.iter().enumerate() {
            let m = i + 1;
            let enc = run_schur(&prof, &basis, m, slab_scan(m));
            let overlap = enc.lower <= *phi && *plo <= enc.upper;
            let ratio = enc.width() / (phi - plo);
            worst_ratio = worst_ratio.max(ratio);
            report(&format!(
                "  n={n:2} m={m}: [{:.10}, {:.10}] reference [{plo:.8}, {phi:.8}] width ratio {ratio:.3}",
                enc.lower, enc.upper
            ));
            if !overlap || ratio > 2.0 {
                bad.push(format!("n={n} m={m}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = bad.is_empty();
    verdict(
        "graded slab reference widths",
        ok,
        &format!("20 runs, worst width ratio {worst_ratio:.3}, failures {bad:?}, {secs:.1}s"),
    );
    assert!(ok);
}

fn lower_branch_interval(m: usize) -> (f64, f64) {
    let l = |k: usize| exact_slab21_spectrum(k).0;
    let a = if m == 1 { 0.2 } else { 0.5 * (l(m - 1) + l(m)) };
    (a, 0.5 * (l(m) + l(m + 1)))
}

#[test]
fn certification_constant_slab() {
    let start = Instant::now();
    let prof = SlabProfile::constant_benchmark();
    let bases = [
        ("sine n=30", sine(30), sine(30)),
        (
            "hermite r=3 h=1/32",
            hermite(3, 32, Boundary::Dirichlet),
            hermite(3, 32, Boundary::Free),
        ),
    ];
    let mut runs = 0;
    let mut violations = Vec::new();
    for (label, u, y) in &bases {
        for m in 1..=3 {
            // Schur route: m-th eigenvalue above d = 1
            let t = 2.0 * (m as f64 * PI).powi(2);
            let enc = run_schur(&prof, u, m, (t, t + 3.0, 300_000));
            let (lo_branch, hi_branch) = exact_slab21_spectrum(m);
            runs += 1;
            if !enc.certifies(hi_branch) {
                violations.push(format!("{label} schur m={m}"));
            }
            report(&format!(
                "  {label} schur m={m}: [{:.12}, {:.12}] exact {hi_branch:.12}",
                enc.lower, enc.upper
            ));
            // direct route on the block operator: m-th eigenvalue below 1/2
            let basis = ProductBasis::new(vec![u, y, y]).unwrap();
            let op = SlabBlockOperator { profile: &prof };
            let enc =
                zm_direct_enclosure(&op, &basis, m, lower_branch_interval(m), TOL_EIG, TOL_QUAD)
                    .unwrap();
            runs += 1;
            if !enc.certifies(lo_branch) {
                violations.push(format!("{label} direct m={m}"));
            }
            report(&format!(
                "  {label} direct m={m}: [{:.12}, {:.12}] exact {lo_branch:.12}",
                enc.lower, enc.upper
            ));
        }
    }
    let ok = violations.is_empty();
    verdict(
        "certification against the constant slab",
        ok,
        &format!(
            "{runs} runs, violations {violations:?}, {:.1}s",
            start.elapsed().as_secs_f64()
        ),
    );
    assert!(ok);
}

#[test]
fn cylinder_reference_widths() {
    let start = Instant::now();
    let prof = CylinderProfile::uniform_field_benchmark();
    let rows = [
        (1, 1251, (3.0, 20.0), 4.38995771667, 4.3903962 - 4.3895445),
        (2, 1430, (20.0, 60.0), 29.4242820473, 29.424656 - 29.423873),
        (3, 2001, (60.0, 100.0), 73.8686971063, 73.869378 - 73.868030),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (m, ne, interval, exact, reference) in rows {
        let u = hermite(3, ne, Boundary::Dirichlet);
        let basis = ProductBasis::new(vec![&u, &u]).unwrap();
        let enc = cylinder_enclosure(&prof, &basis, m, interval, TOL_EIG, TOL_QUAD).unwrap();
        let oracle = exact_cylinder_spectrum(m);
        let good = enc.contains(exact) && enc.contains(oracle) && enc.width() <= 2.0 * reference;
        ok &= good;
        report(&format!(
            "  m={m} dof={}: [{:.10}, {:.10}] width {:.3e} (reference {reference:.3e})",
            enc.dof,
            enc.lower,
            enc.upper,
            enc.width()
        ));
        notes.push(format!(
            "m={m} width/reference={:.2}",
            enc.width() / reference
        ));
    }
    verdict(
        "cylinder reference widths",
        ok,
        &format!(
            "{}, {:.1}s",
            notes.join(", "),
            start.elapsed().as_secs_f64()
        ),
    );
    assert!(ok);
}

#[test]
fn slab_convergence_rates() {
    let start = Instant::now();
    let prof = SlabProfile::constant_benchmark();
    let exact = exact_slab21_spectrum(1).1;
    let elements = [8usize, 12, 16, 24, 32, 48];
    let t = 2.0 * PI * PI;
    let mut hs = Vec::new();
    let mut up = Vec::new();
    let mut down = Vec::new();
    let mut hs_lo = Vec::new();
    let floor = 10.0 * TOL_QUAD.max(TOL_EIG) * exact;
    for ne in elements {
        let basis = hermite(3, ne, Boundary::Dirichlet);
        let enc = run_schur(&prof, &basis, 1, (t, t + 3.0, 300_000));
        assert!(enc.contains(exact));
        let h = 1.0 / ne as f64;
        let (eu, el) = (enc.upper - exact, exact - enc.lower);
        report(&format!(
            "  h=1/{ne}: upper gap {eu:.3e}, lower gap {el:.3e}"
        ));
        if eu > floor {
            hs.push(h);
            up.push(eu);
        }
        if el > floor {
            hs_lo.push(h);
            down.push(el);
        }
    }
    let su = loglog_slope(&hs, &up);
    let sl = loglog_slope(&hs_lo, &down);
    let ok =
        hs.len() >= 3 && hs_lo.len() >= 3 && (su - 6.0).abs() <= 0.7 && (sl - 4.0).abs() <= 0.7;
    verdict(
        "slab convergence rates",
        ok,
        &format!(
            "upper slope {su:.3} ({} pts), lower slope {sl:.3} ({} pts), {:.1}s",
            hs.len(),
            hs_lo.len(),
            start.elapsed().as_secs_f64()
        ),
    );
    assert!(ok);
}

#[test]
fn cylinder_convergence_rates() {
    let start = Instant::now();
    let prof = CylinderProfile::uniform_field_benchmark();
    let exact = exact_cylinder_spectrum(1);
    let mut ok = true;
    let mut notes = Vec::new();
    for order in [3usize, 5] {
        let mut hs = Vec::new();
        let mut widths = Vec::new();
        for ne in [16usize, 32, 64, 128] {
            let u = hermite(order, ne, Boundary::Dirichlet);
            let basis = ProductBasis::new(vec![&u, &u]).unwrap();
            let enc = cylinder_enclosure(&prof, &basis, 1, (3.0, 20.0), TOL_EIG, TOL_QUAD).unwrap();
            ok &= enc.contains(exact);
            report(&format!("  r={order} h=1/{ne}: width {:.4e}", enc.width()));
            hs.push(1.0 / ne as f64);
            widths.push(enc.width());
        }
        let s = loglog_slope(&hs, &widths);
        ok &= (s - 1.0).abs() <= 0.4;
        notes.push(format!("r={order} slope {s:.3}"));
    }
    verdict(
        "cylinder convergence rates",
        ok,
        &format!(
            "{}, {:.1}s",
            notes.join(", "),
            start.elapsed().as_secs_f64()
        ),
    );
    assert!(ok);
}

#[test]
fn nonconvergence_fixture() {
    let l1 = exact_slab21_spectrum(1).0;
    let fx = DegenerateFixture::new(200);
    let (pa, pb) = fx.pairs();
    let res = inverse_residuals(&pa, &pb, 1e-14).unwrap();
    let (lower, upper) = zm_enclosure(&res).unwrap();
    let tau_plus_limit = l1 / (l1 * l1 + 1.0);
    let d = l1 - fx.b;
    let tau_minus_limit = d / (d * d + 1.0);
    let width_limit = (fx.a + 1.0 / tau_plus_limit) - (fx.b + 1.0 / tau_minus_limit);
    let tau_ok = (res.tau_plus - tau_plus_limit).abs() <= 1e-3;
    let width_ok = ((upper - lower) - width_limit).abs() <= 1e-3;
    let ok = tau_ok && width_ok;
    verdict(
        "non-convergence fixture",
        ok,
        &format!(
            "n=200 tau+ {:.6} (target {tau_plus_limit:.6}), tau- {:.6} (target {tau_minus_limit:.6}), \
             width {:.6} (target {width_limit:.6})",
            res.tau_plus,
            res.tau_minus,
            upper - lower
        ),
    );
    assert!(ok);
}

fn random_hermitian(rng: &mut rand::rngs::StdRng, n: usize) -> HermitianMatrix {
    let entries: Vec<(f64, f64)> = (0..n * n)
        .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    HermitianMatrix::from_fn(n, |i, j| {
        let (a, b) = entries[i.min(j) * n + i.max(j)];
        if i == j {
            Complex64::new(a, 0.0)
        } else if i < j {
            Complex64::new(a, b)
        } else {
            Complex64::new(a, -b)
        }
    })
}

#[test]
fn property_suites() {
    let start = Instant::now();
    let mut failures: Vec<String> = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };

    // linear algebra on random matrices
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let n = rng.gen_range(1..=50);
        let a = random_hermitian(&mut rng, n);
        let e = eig_hermitian(&a).unwrap();
        let mut ok = e.values.windows(2).all(|w| w[0] <= w[1]);
        for k in 0..n {
            let x = e.vector(k);
            let ax = a.matvec(x);
            let r: f64 = ax
                .iter()
                .zip(x)
                .map(|(u, v)| (u - v * e.values[k]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            ok &= r <= 1e-10 * a.max_abs().max(1.0) * n as f64;
        }
        let spd = a
            .add_scaled(-(e.values[0] - 1.0), &HermitianMatrix::identity(n))
            .unwrap();
        ok &= cholesky(&spd).is_ok();
        check("random hermitian eigen/cholesky", ok);
    }

    // weak-strong consistency and block symmetry
    for prof in [
        SlabProfile::constant_benchmark(),
        SlabProfile::graded_benchmark(),
    ] {
        let u = hermite(5, 8, Boundary::Dirichlet);
        let y = hermite(5, 8, Boundary::Free);
        let weak = assemble_schur(&prof, &u, 3.1).unwrap();
        let op = SchurOperator {
            profile: &prof,
            mu: 3.1,
        };
        let pair = assemble_strong_pair(&op, &ProductBasis::single(&u), 0.0).unwrap();
        let diff = weak.add_scaled(-1.0, &pair.p1).unwrap().max_abs();
        check("weak-strong consistency", diff <= 1e-9 * weak.max_abs());
        let block = ProductBasis::new(vec![&u, &y, &y]).unwrap();
        let bp = assemble_strong_pair(&SlabBlockOperator { profile: &prof }, &block, 0.0).unwrap();
        check("adjoint identity", bp.p1.construction_asymmetry() < 1e-10);
    }

    // sign invariants
    let prof21 = SlabProfile::constant_benchmark();
    for ne in [8usize, 16] {
        let u = hermite(3, ne, Boundary::Dirichlet);
        let y = hermite(3, ne, Boundary::Free);
        let basis = ProductBasis::new(vec![&u, &y, &y]).unwrap();
        let enc = zm_direct_enclosure(
            &SlabBlockOperator { profile: &prof21 },
            &basis,
            1,
            (0.2, 0.477),
            TOL_EIG,
            TOL_QUAD,
        )
        .unwrap();
        check(
            "tau signs",
            enc.diagnostics.tau_plus.unwrap() > 0.0 && enc.diagnostics.tau_minus.unwrap() < 0.0,
        );
    }

    // positivity, monotonicity and derivative of the Schur family
    for name in ["slab21", "slab22"] {
        let model = ModelSpec::by_name(name).unwrap();
        let prof = model.slab_profile().unwrap();
        let d = model.d.unwrap();
        let basis = sine(16);
        let pb = SchurProblem::new(prof, &basis);
        let mut prev: Option<Vec<f64>> = None;
        for i in 1..10 {
            let mu = d + (PI * PI - d) * i as f64 / 10.0;
            let s = pb.matrix(mu).unwrap();
            let e = eig_generalized(&s, pb.mass()).unwrap();
            check("schur positivity", e.values[0] >= PI * PI - mu - 1e-8);
            if let Some(p) = &prev {
                check(
                    "mu monotonicity",
                    e.values.iter().zip(p).all(|(a, b)| *a <= b + 1e-10),
                );
            }
            prev = Some(e.values.clone());
        }
        let (mu, h) = (d + 2.0, 1e-5);
        let fd = pb
            .matrix(mu + h)
            .unwrap()
            .add_scaled(-1.0, &pb.matrix(mu - h).unwrap())
            .unwrap();
        let ds = assemble_schur_derivative(prof, &basis, mu).unwrap();
        let err = fd.add_scaled(-2.0 * h, &ds).unwrap().max_abs() / (2.0 * h);
        check("schur derivative", err <= 1e-6);
    }

    // essential bands of the graded slab
    let model = ModelSpec::by_name("slab22").unwrap();
    let want = [(7.0 / 64.0, 0.25), (3.0 / 8.0, 7.0 / 8.0)];
    for (band, (lo, hi)) in model.bands.iter().zip(want) {
        check(
            "band endpoints",
            (band.lo - lo).abs() <= 1e-10 && (band.hi - hi).abs() <= 1e-10,
        );
    }

    let ok = failures.is_empty();
    verdict(
        "property suites",
        ok,
        &format!(
            "failures {failures:?}, {:.1}s",
            start.elapsed().as_secs_f64()
        ),
    );
    assert!(ok);
}
