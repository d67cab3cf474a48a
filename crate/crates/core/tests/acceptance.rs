//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rieszkit_core::analysis::{
    alpha_threshold_p4, check_symbol_nonnegativity, crossover_alpha, evaluate_bounds,
    monotonicity_scan, BoundFamily,
};
use rieszkit_core::closed_form::closed_form_coeff;
use rieszkit_core::coefficients::expand_generating_function;
use rieszkit_core::convergence::ConvergenceReport;
use rieszkit_core::problem::builtin_problem;
use rieszkit_core::riesz::example1_convergence;
use rieszkit_core::scheme::{assemble, convergence_study, Scheme};
use rieszkit_core::stability::{amplification_factor, stability_scan, AmplificationQuery};

use common::{manufactured_residual, naive_step, sample};

struct Block {
    alpha: f64,
    errors: &'static [f64],
    /// Spatial orders for the operator studies, or flattened (temporal, spatial) pairs.
    orders: &'static [f64],
}

const fn b(alpha: f64, errors: &'static [f64], orders: &'static [f64]) -> Block {
    Block {
        alpha,
        errors,
        orders,
    }
}

const REF_P2: [Block; 4] = [
    b(0.2, &[2.381267e-4, 5.900964e-5, 1.460639e-5, 3.628491e-6, 9.039358e-7], &[2.0127, 2.0144, 2.0092, 2.0051]),
    b(0.4, &[7.097814e-4, 1.696639e-4, 4.123703e-5, 1.014980e-5, 2.516782e-6], &[2.0647, 2.0407, 2.0225, 2.0118]),
    b(0.6, &[1.638369e-3, 3.728453e-4, 8.824023e-5, 2.141683e-5, 5.272483e-6], &[2.1356, 2.0791, 2.0427, 2.0222]),
    b(0.8, &[3.782418e-3, 7.826735e-4, 1.747182e-4, 4.102708e-5, 9.923174e-6], &[2.2728, 2.1634, 2.0904, 2.0477]),
];
const REF_P3: [Block; 4] = [
    b(0.2, &[3.146678e-7, 1.576085e-7, 7.991483e-8, 4.501080e-8, 2.761993e-8], &[1.7052, 2.3608, 2.5726, 2.6786]),
    b(0.4, &[4.349687e-6, 1.491902e-6, 6.709309e-7, 3.560502e-7, 2.108270e-7], &[2.6391, 2.7779, 2.8394, 2.8742]),
    b(0.6, &[2.194879e-5, 6.996810e-6, 3.050074e-6, 1.590859e-6, 9.316704e-7], &[2.8196, 2.8861, 2.9169, 2.9347]),
    b(0.8, &[1.067572e-4, 3.282279e-5, 1.407258e-5, 7.270149e-6, 4.231299e-6], &[2.9088, 2.9439, 2.9598, 2.9688]),
];
const REF_P4: [Block; 4] = [
    b(0.2, &[3.254967e-6, 1.421712e-6, 7.061638e-7, 3.863551e-7, 2.279637e-7], &[3.7121, 3.8381, 3.9123, 3.9509]),
    b(0.4, &[1.307893e-5, 5.433994e-6, 2.610192e-6, 1.395202e-6, 8.089264e-7], &[3.9362, 4.0217, 4.0635, 4.0821]),
    b(0.6, &[4.165885e-5, 1.647646e-5, 7.642179e-6, 3.980841e-6, 2.261840e-6], &[4.1569, 4.2137, 4.2309, 4.2336]),
    b(0.8, &[1.466022e-4, 5.460563e-5, 2.420431e-5, 1.216174e-5, 6.707129e-6], &[4.4258, 4.4625, 4.4647, 4.4568]),
];
const REF_P5: [Block; 3] = [
    b(0.4, &[8.731739e-10, 3.348011e-10, 1.473288e-10, 7.232096e-11, 3.867341e-11], &[4.2959, 4.5023, 4.6160, 4.6877]),
    b(0.6, &[5.385482e-9, 1.900398e-9, 7.985621e-10, 3.806168e-10, 1.994064e-10], &[4.6680, 4.7554, 4.8071, 4.8412]),
    b(0.8, &[3.005433e-8, 1.023908e-8, 4.211445e-9, 1.978515e-9, 1.025811e-9], &[4.8256, 4.8727, 4.9008, 4.9192]),
];
const REF_P6: [Block; 4] = [
    b(0.2, &[3.783855e-8, 2.310553e-9, 4.258651e-11, 6.690552e-13, 1.035841e-14], &[4.0335, 5.7617, 5.9921, 6.0133]),
    b(0.4, &[3.116503e-7, 1.031745e-8, 1.651582e-10, 2.418476e-12, 3.582209e-14], &[4.9168, 5.9651, 6.0936, 6.0771]),
    b(0.6, &[1.564617e-6, 3.647148e-8, 5.062291e-10, 6.799919e-12, 9.539537e-14], &[5.4229, 6.1708, 6.2181, 6.1555]),
    b(0.8, &[8.311643e-6, 1.432632e-7, 1.663072e-9, 1.942938e-11, 2.433601e-13], &[5.8584, 6.4287, 6.4195, 6.3190]),
];
const REF_ORDER2: [Block; 6] = [
    b(0.2, &[2.581219e-5, 6.217660e-6, 1.536085e-6, 3.844480e-7], &[2.0536, 2.0171, 1.9984]),
    b(0.3, &[2.514418e-5, 6.061411e-6, 1.498825e-6, 3.755193e-7], &[2.0525, 2.0158, 1.9969]),
    b(0.4, &[2.416676e-5, 5.842791e-6, 1.448271e-6, 3.636282e-7], &[2.0483, 2.0123, 1.9938]),
    b(0.5, &[2.270557e-5, 5.532646e-6, 1.379247e-6, 3.477777e-7], &[2.0370, 2.0041, 1.9876]),
    b(0.6, &[2.043415e-5, 5.079755e-6, 1.283408e-6, 3.264917e-7], &[2.0082, 1.9848, 1.9749]),
    b(0.7, &[1.664449e-5, 4.378341e-6, 1.145019e-6, 2.972789e-7], &[1.9266, 1.9350, 1.9455]),
];
const REF_ORDER4: [Block; 6] = [
    b(0.2, &[1.151043e-4, 4.361384e-6, 2.346706e-7, 2.036847e-8], &[2.3610, 4.7220, 2.1081, 4.2161, 1.7631, 3.5262]),
    b(0.3, &[1.128702e-4, 4.362181e-6, 2.461975e-7, 2.396154e-8], &[2.3468, 4.6935, 2.0736, 4.1472, 1.6805, 3.3610]),
    b(0.4, &[1.088961e-4, 4.433621e-6, 2.870612e-7, 2.910816e-8], &[2.3091, 4.6183, 1.9746, 3.9491, 1.6509, 3.3019]),
    b(0.5, &[1.018053e-4, 4.654112e-6, 3.607253e-7, 3.674011e-8], &[2.2256, 4.4512, 1.8447, 3.6895, 1.6478, 3.2955]),
    b(0.6, &[8.897936e-5, 5.201584e-6, 4.980729e-7, 4.862623e-8], &[2.0482, 4.0964, 1.6923, 3.3845, 1.6783, 3.3566]),
    b(0.7, &[6.521192e-5, 6.540139e-6, 7.724068e-7, 6.867979e-8], &[1.6588, 3.3177, 1.5410, 3.0819, 1.7457, 3.4914]),
];
const REF_ORDER6: [Block; 6] = [
    b(0.2, &[1.360207e-7, 2.071201e-9, 3.348089e-11, 5.235085e-13], &[2.0124, 6.0372, 1.9837, 5.9510, 1.9997, 5.9990]),
    b(0.3, &[1.356431e-7, 2.092867e-9, 3.254863e-11, 4.855887e-13], &[2.0061, 6.0182, 2.0022, 6.0067, 2.0222, 6.0667]),
    b(0.4, &[1.348600e-7, 2.146379e-9, 2.972961e-11, 3.852828e-13], &[1.9911, 5.9734, 2.0580, 6.1739, 2.0899, 6.2698]),
    b(0.5, &[1.335205e-7, 2.246228e-9, 2.200601e-11, 2.816274e-13], &[1.9645, 5.8934, 2.2245, 6.6735, 2.0960, 6.2880]),
    b(0.6, &[1.322258e-7, 2.372915e-9, 1.827817e-11, 4.506292e-13], &[1.9334, 5.8002, 2.3401, 7.0204, 1.7807, 5.3420]),
    b(0.7, &[1.357968e-7, 3.805230e-9, 6.671019e-11, 1.819328e-12], &[1.7191, 5.1573, 1.9446, 5.8339, 1.7321, 5.1964]),
];

/// Collects the failures of one criterion.
#[derive(Default)]
struct Check {
    failures: Vec<String>,
    checked: usize,
}

impl Check {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn rel(&mut self, label: &str, got: f64, want: f64, tol: f64) {
        let r = (got - want).abs() / want.abs();
        self.expect(r <= tol, || {
            format!("{label}: {got:.6e} vs {want:.6e} ({:.1}%)", 100.0 * r)
        });
    }

    fn within_factor(&mut self, label: &str, got: f64, want: f64, factor: f64) {
        let q = got / want;
        self.expect(q <= factor && q >= 1.0 / factor, || {
            format!("{label}: {got:.3e} vs {want:.3e} (x{q:.2})")
        });
    }

    fn abs(&mut self, label: &str, got: f64, want: f64, tol: f64) {
        self.expect((got - want).abs() <= tol, || {
            format!("{label}: {got:.4} vs {want:.4}")
        });
    }
}

fn spatial_orders(r: &ConvergenceReport) -> Vec<f64> {
    r.rows.iter().filter_map(|row| row.spatial_order).collect()
}

fn temporal_orders(r: &ConvergenceReport) -> Vec<f64> {
    r.rows.iter().filter_map(|row| row.temporal_order).collect()
}

fn operator_study(c: &mut Check, name: &str, p: usize, steps: &[f64], blocks: &[Block], err_tol: f64, orders: bool) {
    for blk in blocks {
        let rep = example1_convergence(p, blk.alpha, steps).unwrap();
        for (i, (row, want)) in rep.rows.iter().zip(blk.errors).enumerate() {
            c.rel(&format!("{name} a={} h=1/{}", blk.alpha, (1.0 / steps[i]).round()), row.error, *want, err_tol);
        }
        if orders {
            for (i, (got, want)) in spatial_orders(&rep).iter().zip(blk.orders).enumerate() {
                c.abs(&format!("{name} a={} order#{}", blk.alpha, i + 1), *got, *want, 0.02);
            }
        }
    }
}

fn inv(ms: &[u32]) -> Vec<f64> {
    ms.iter().map(|m| 1.0 / *m as f64).collect()
}

fn criterion1() -> Check {
    let mut c = Check::default();
    let t = Instant::now();
    operator_study(&mut c, "p2", 2, &inv(&[20, 40, 80, 160, 320]), &REF_P2, 0.02, true);
    let el = t.elapsed().as_secs_f64();
    c.expect(el < 1.0, || format!("runtime {el:.2}s"));
    c
}

fn criterion2() -> Check {
    let mut c = Check::default();
    let t = Instant::now();
    operator_study(&mut c, "p3", 3, &inv(&[40, 60, 80, 100, 120]), &REF_P3, 0.02, true);
    operator_study(&mut c, "p4", 4, &inv(&[20, 25, 30, 35, 40]), &REF_P4, 0.02, true);
    let el = t.elapsed().as_secs_f64();
    c.expect(el < 2.0, || format!("runtime {el:.2}s"));
    c
}

fn criterion3() -> Check {
    let mut c = Check::default();
    let steps = inv(&[80, 100, 120, 140, 160]);
    operator_study(&mut c, "p5", 5, &steps, &REF_P5, 0.05, false);
    let rep = example1_convergence(5, 0.2, &steps).unwrap();
    let last = *spatial_orders(&rep).last().unwrap();
    c.expect((last - 5.0).abs() <= 0.35, || format!("p5 a=0.2 order at h=1/160: {last:.4}"));
    c
}

fn criterion4() -> Check {
    let mut c = Check::default();
    let steps = inv(&[20, 40, 80, 160, 320]);
    for blk in &REF_P6 {
        let rep = example1_convergence(6, blk.alpha, &steps).unwrap();
        for (i, (row, want)) in rep.rows.iter().zip(blk.errors).enumerate() {
            let label = format!("p6 a={} h=1/{}", blk.alpha, (1.0 / steps[i]).round());
            if *want >= 1e-11 {
                c.rel(&label, row.error, *want, 0.05);
            } else if *want < 1e-12 {
                c.within_factor(&label, row.error, *want, 10.0);
            }
        }
        let got = spatial_orders(&rep);
        for i in 0..got.len() {
            if blk.errors[i] > 1e-12 && blk.errors[i + 1] > 1e-12 {
                c.abs(&format!("p6 a={} order#{}", blk.alpha, i + 1), got[i], blk.orders[i], 0.1);
            }
        }
    }
    c
}

fn scheme_study(
    c: &mut Check,
    name: &str,
    scheme: Scheme,
    problem: &str,
    ladder: &[(usize, usize)],
    blocks: &[Block],
    small: f64,
    err_tol: f64,
    order_tol: f64,
    paired_orders: bool,
) {
    for blk in blocks {
        let spec = builtin_problem(problem, blk.alpha).unwrap();
        let rep = convergence_study(scheme, &spec, ladder).unwrap();
        for (i, (row, want)) in rep.rows.iter().zip(blk.errors).enumerate() {
            let label = format!("{name} a={} M={}", blk.alpha, ladder[i].0);
            if *want >= small {
                c.rel(&label, row.error, *want, err_tol);
            } else {
                c.within_factor(&label, row.error, *want, 10.0);
            }
        }
        let (tt, ss) = (temporal_orders(&rep), spatial_orders(&rep));
        for i in 0..tt.len() {
            let (wt, ws) = if paired_orders {
                (blk.orders[2 * i], blk.orders[2 * i + 1])
            } else {
                (blk.orders[i], blk.orders[i])
            };
            c.abs(&format!("{name} a={} temporal#{}", blk.alpha, i + 1), tt[i], wt, order_tol);
            c.abs(&format!("{name} a={} spatial#{}", blk.alpha, i + 1), ss[i], ws, order_tol);
        }
    }
}

fn criterion5() -> Check {
    let mut c = Check::default();
    let t = Instant::now();
    let ladder = [(10, 10), (20, 20), (40, 40), (80, 80)];
    scheme_study(&mut c, "order2", Scheme::Order2, "example2", &ladder, &REF_ORDER2, 0.0, 0.02, 0.02, false);
    let el = t.elapsed().as_secs_f64();
    c.expect(el < 5.0, || format!("runtime {el:.2}s"));
    c
}

fn criterion6() -> Check {
    let mut c = Check::default();
    let t = Instant::now();
    let ladder = [(4, 4), (8, 16), (16, 64), (32, 256)];
    scheme_study(&mut c, "order4", Scheme::Order4, "example2", &ladder, &REF_ORDER4, 0.0, 0.05, 0.05, true);
    let el = t.elapsed().as_secs_f64();
    c.expect(el < 10.0, || format!("runtime {el:.2}s"));
    c
}

fn criterion7() -> Check {
    let mut c = Check::default();
    let t = Instant::now();
    let ladder = [(8, 8), (16, 64), (32, 512), (64, 4096)];
    scheme_study(&mut c, "order6", Scheme::Order6, "example3", &ladder, &REF_ORDER6, 1e-12, 0.05, 0.1, true);
    let el = t.elapsed().as_secs_f64();
    c.expect(el < 60.0, || format!("runtime {el:.2}s"));
    c
}

fn alpha_grid_0_2() -> Vec<f64> {
    (1..=9)
        .map(|k| k as f64 / 10.0)
        .chain((11..=19).map(|k| k as f64 / 10.0))
        .collect()
}

fn criterion8() -> Check {
    let mut c = Check::default();
    let grid = alpha_grid_0_2();
    for p in 2..=6 {
        for &alpha in &grid {
            let t = expand_generating_function(p, alpha, 60).unwrap();
            let mut worst: f64 = 0.0;
            for ell in 0..=60 {
                worst = worst.max((closed_form_coeff(p, alpha, ell).unwrap() - t.values()[ell]).abs());
            }
            c.expect(worst < 1e-10, || format!("route p={p} a={alpha}: {worst:.2e}"));
        }
    }
    for p in 1..=6 {
        for &alpha in &grid {
            let sums = expand_generating_function(p, alpha, 2000).unwrap().partial_sums();
            let s = sums[2000].abs();
            c.expect(s < 1e-3, || format!("zero-sum p={p} a={alpha}: |S_2000| = {s:.2e}"));
            let dec = sums[200..].windows(2).all(|w| w[1].abs() <= w[0].abs());
            c.expect(dec, || format!("zero-sum p={p} a={alpha}: |S_L| not decreasing past 200"));
        }
    }
    for &alpha in &grid {
        let t = expand_generating_function(2, alpha, 500).unwrap();
        let v = t.values();
        if alpha < 1.0 {
            c.expect(v[4..].iter().all(|w| *w < 0.0), || format!("th.1 sign a={alpha}"));
        } else {
            c.expect(v[5..].iter().all(|w| *w > 0.0), || format!("th.1 sign a={alpha}"));
        }
    }
    let claims = [(2, 4, 5), (3, 4, 7), (4, 7, 12), (5, 12, 16)];
    for (p, below, above) in claims {
        for &alpha in &grid {
            let claim = if alpha < 1.0 { below } else { above };
            match monotonicity_scan(p, alpha, 500) {
                Ok(t) => c.expect(t.start <= claim, || {
                    format!("tail p={p} a={alpha}: starts at {} > {claim}", t.start)
                }),
                Err(e) => c.expect(false, || format!("tail p={p} a={alpha}: {e}")),
            }
        }
    }
    c
}

fn criterion9() -> Check {
    let mut c = Check::default();
    let thr = alpha_threshold_p4();
    c.abs("p4 threshold", thr, 0.8439, 1e-4);
    for k in 1..=19 {
        let alpha = 0.05 * k as f64;
        for p in [2, 3, 5, 6] {
            let chk = check_symbol_nonnegativity(p, alpha, 4096).unwrap();
            c.expect(chk.holds, || {
                format!("symbol p={p} a={alpha:.2}: min {:.3e} at theta {:.3}", chk.min.value, chk.min.theta)
            });
        }
        if alpha <= thr {
            let chk = check_symbol_nonnegativity(4, alpha, 4096).unwrap();
            c.expect(chk.holds, || format!("symbol p=4 a={alpha:.2}: min {:.3e}", chk.min.value));
        }
    }
    let chk = check_symbol_nonnegativity(4, thr - 1e-4, 4096).unwrap();
    c.expect(chk.holds, || format!("symbol p=4 at threshold: min {:.3e}", chk.min.value));
    for fam in BoundFamily::ALL {
        for k in 1..=19 {
            let alpha = 0.05 * k as f64;
            for ell in fam.min_index()..=100 {
                let r = evaluate_bounds(fam, alpha, ell).unwrap();
                c.expect(r.holds, || format!("{fam} a={alpha:.2} l={ell}"));
            }
        }
    }
    c.abs("th.6 l=3", crossover_alpha(3), 0.0267, 1e-3);
    c.abs("th.6 l=4", crossover_alpha(4), 0.7551, 1e-3);
    c
}

fn criterion10() -> Check {
    let mut c = Check::default();
    let steps = [1e-3, 1e-2, 1e-1, 1.0];
    for scheme in Scheme::ALL {
        for k in 1..=8 {
            let alpha = k as f64 / 10.0;
            if scheme == Scheme::Order4 && alpha > alpha_threshold_p4() {
                continue;
            }
            for &h in &steps {
                for &tau in &steps {
                    let r = stability_scan(scheme, alpha, h, tau, 1.0, 1.0, 1.0, 4096).unwrap();
                    c.expect(r.pass, || {
                        format!(
                            "{scheme} a={alpha} h={h} tau={tau}: max|xi| = {:.6} at theta {:.3}",
                            r.max_abs, r.argmax_theta
                        )
                    });
                }
            }
            let q = AmplificationQuery {
                scheme,
                alpha,
                h: 0.1,
                tau: 0.1,
                d1: 1.0,
                d2: 1.0,
                d_alpha: 1.0,
                theta: 0.0,
            };
            let xi = amplification_factor(&q);
            c.expect(xi.re == 1.0 && xi.im == 0.0, || format!("{scheme} a={alpha}: xi(0) = {xi}"));
        }
    }
    c
}

fn criterion11() -> Check {
    let mut c = Check::default();
    for (scheme, problem) in [
        (Scheme::Order2, "example2"),
        (Scheme::Order4, "example2"),
        (Scheme::Order6, "example3"),
    ] {
        for alpha in [0.2, 0.5, 0.8] {
            let spec = builtin_problem(problem, alpha).unwrap();
            for (m, tau) in [(10usize, 0.1), (13, 0.01)] {
                let (u, _) = sample(&spec, m, 0.3);
                let (_, s) = sample(&spec, m, 0.3 + tau / 2.0);
                let got = assemble(scheme, &spec, m, tau).unwrap().step(&u, &s).unwrap();
                let want = naive_step(scheme, &spec, m, tau, &u, &s);
                let d = got.iter().zip(&want).fold(0.0f64, |a, (x, y)| a.max((x - y).abs()));
                c.expect(d < 1e-13, || format!("one step {scheme} a={alpha} M={m}: {d:.2e}"));
            }
        }
    }
    // (scheme, problem, predicted factor, rungs (M, τ))
    let studies: [(Scheme, &str, f64, [(usize, f64); 3]); 3] = [
        (Scheme::Order2, "example2", 4.0, [(32, 1.0 / 64.0), (64, 1.0 / 128.0), (128, 1.0 / 256.0)]),
        (Scheme::Order4, "example2", 16.0, [(128, 1.0 / 8192.0), (256, 1.0 / 32768.0), (512, 1.0 / 131072.0)]),
        (Scheme::Order6, "example3", 64.0, [(32, 1.0 / 16384.0), (64, 1.0 / 131072.0), (128, 1.0 / 1048576.0)]),
    ];
    for (scheme, problem, factor, rungs) in studies {
        for alpha in [0.3, 0.7] {
            let spec = builtin_problem(problem, alpha).unwrap();
            let r: Vec<f64> = rungs
                .iter()
                .map(|&(m, tau)| manufactured_residual(scheme, &spec, m, tau, 0))
                .collect();
            for (i, w) in r.windows(2).enumerate() {
                let q = w[0] / w[1];
                c.expect((q / factor - 1.0).abs() <= 0.2, || {
                    format!(
                        "residual {scheme} a={alpha} M={}->{}: ratio {q:.2}, predicted {factor}",
                        rungs[i].0,
                        rungs[i + 1].0
                    )
                });
            }
        }
    }
    c
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("order-2 operator errors", criterion1),
        ("order-3 and order-4 operator errors", criterion2),
        ("order-5 operator errors", criterion3),
        ("order-6 operator errors", criterion4),
        ("order2 scheme errors", criterion5),
        ("order4 scheme errors", criterion6),
        ("order6 scheme errors", criterion7),
        ("coefficient properties", criterion8),
        ("symbols and bounds", criterion9),
        ("stability scans", criterion10),
        ("oracle equivalence and residual orders", criterion11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let chk = run();
        let el = t.elapsed().as_secs_f64();
        let status = if chk.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {:>2}: {name} ({} checks, {} failed, {el:.2}s)",
            i + 1,
            chk.checked,
            chk.failures.len()
        );
        for f in chk.failures.iter().take(60) {
            println!("      {f}");
        }
        if chk.failures.len() > 60 {
            println!("      ... {} more", chk.failures.len() - 60);
        }
        if !chk.failures.is_empty() {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
