//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so every line is printed; the process fails if any criterion
//! fails.

use std::process::ExitCode;

use ctqw::amplitudes::{half_line_q, infinite_line_q, q0, q_l, AmplitudeKernel};
use ctqw::bessel::bessel_j;
use ctqw::catalog::{self, appendix_ids, make_entry, CatalogEntry, Status};
use ctqw::cli::oracle_strata;
use ctqw::jacobi::{lanczos, vertex_state};
use ctqw::oracle::Oracle;
use ctqw::stieltjes::{spectral_measure, stieltjes_cf, stieltjes_poles};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn grid(t_max: f64, samples: usize) -> Vec<f64> {
    (0..samples).map(|j| t_max * j as f64 / (samples - 1) as f64).collect()
}

fn e(rate: f64, t: f64) -> Complex64 {
    Complex64::from_polar(1.0, -rate * t)
}

fn max_over<F: Fn(f64) -> f64>(times: &[f64], f: F) -> f64 {
    times.iter().map(|&t| f(t)).fold(0.0, f64::max)
}

struct Outcome {
    pass: bool,
    summary: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, summary: impl Into<String>) -> Self {
        Outcome {
            pass,
            summary: summary.into(),
            notes: Vec::new(),
        }
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}

fn entry(spec: &str) -> CatalogEntry {
    make_entry(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

/// Petersen q_0, q_1, q_2 against the printed expansions.
fn petersen_closed_forms() -> Outcome {
    let tol = 1e-10;
    let p = entry("petersen").pipeline().unwrap();
    let times = grid(10.0, 201);
    let s3 = 3f64.sqrt();
    let s6 = 6f64.sqrt();
    let printed_q0 = |t: f64| (e(1.0, t) * 5.0 + e(-2.0, t) * 4.0 + e(3.0, t)) / 10.0;
    let printed_q1 = |t: f64| (e(1.0, t) * 0.5 - e(-2.0, t) * 0.8 + e(3.0, t) * 0.3) / s3;
    let printed_q2 = |t: f64| (-e(1.0, t) + e(-2.0, t) * 0.4 + e(3.0, t) * 0.4) / s6;
    let err = |l: usize, f: &dyn Fn(f64) -> Complex64| {
        max_over(&times, |t| (q_l(&p.measure, &p.jacobi, l, t).unwrap() - f(t)).norm())
    };
    let (e0, e1, e2) = (err(0, &printed_q0), err(1, &printed_q1), err(2, &printed_q2));
    // (1/sqrt 6)(-d^2/dt^2 - 3) q_0 differentiated term by term
    let operator_q2 = |t: f64| {
        p.measure
            .nodes()
            .iter()
            .zip(p.measure.weights())
            .map(|(&x, &w)| e(x, t) * (w * (x * x - 3.0)))
            .sum::<Complex64>()
            / s6
    };
    let e2_op = err(2, &operator_q2);
    Outcome::new(
        e0 < tol && e1 < tol && e2 < tol,
        format!("max |q0 err| {e0:.2e}, |q1 err| {e1:.2e}, |q2 err| {e2:.2e} (tol {tol:.0e})"),
    )
    .note(format!(
        "printed q2 has q2(0) = {:.4}, not 0; the operator form (1/sqrt6)(-d2/dt2 - 3)q0 matches to {e2_op:.2e}",
        printed_q2(0.0).re
    ))
}

fn complete_graphs() -> Outcome {
    let tol = 1e-10;
    let times = grid(10.0, 201);
    let mut worst = (0.0f64, 0usize);
    for n in 2..=50usize {
        let p = entry(&format!("complete:{n}")).pipeline().unwrap();
        let nf = n as f64;
        let want0 = |t: f64| (e(nf - 1.0, t) + e(-1.0, t) * (nf - 1.0)) / nf;
        let want1 = |t: f64| (e(nf - 1.0, t) - e(-1.0, t)) * ((nf - 1.0).sqrt() / nf);
        let err = max_over(&times, |t| {
            let a = (q0(&p.measure, t) - want0(t)).norm();
            let b = (q_l(&p.measure, &p.jacobi, 1, t).unwrap() - want1(t)).norm();
            a.max(b)
        });
        if err > worst.0 {
            worst = (err, n);
        }
    }
    Outcome::new(
        worst.0 < tol,
        format!("n = 2..50, max error {:.2e} at n = {} (tol {tol:.0e})", worst.0, worst.1),
    )
}

fn dihedral_srg() -> Outcome {
    let times = grid(10.0, 201);
    let (mut amp, mut res) = (0.0f64, 0.0f64);
    for m in 2..=10usize {
        let p = entry(&format!("dihedral_srg:{m}")).pipeline().unwrap();
        let mf = m as f64;
        amp = amp.max(max_over(&times, |t| {
            (q0(&p.measure, t) - (mf - 1.0 + (mf * t).cos()) / mf).norm()
        }));
        let want_nodes = [-mf, 0.0, mf];
        let want_weights = [0.5 / mf, (mf - 1.0) / mf, 0.5 / mf];
        if p.measure.len() != 3 {
            res = f64::INFINITY;
            continue;
        }
        for i in 0..3 {
            res = res.max((p.measure.weights()[i] - want_weights[i]).abs());
            res = res.max((p.measure.nodes()[i] - want_nodes[i]).abs());
        }
    }
    Outcome::new(
        amp < 1e-10 && res < 1e-12,
        format!("m = 2..10, q0 error {amp:.2e} (tol 1e-10), residue error {res:.2e} (tol 1e-12)"),
    )
}

/// The printed two-exponential expression for J(n,2).
fn johnson_printed_q0(n: usize, t: f64) -> Complex64 {
    let nf = n as f64;
    let root = ((nf - 2.0) * (nf + 6.0)).sqrt() / 2.0;
    let c = ((nf - 2.0) / (nf + 6.0)).sqrt();
    e((nf - 2.0) / 2.0, t) * Complex64::new((root * t).cos(), c * (root * t).sin())
}

fn johnson_d2() -> Outcome {
    let tol = 1e-9;
    let times = grid(10.0, 201);
    let (mut err, mut trunc, mut oracle) = (0.0f64, 0.0f64, 0.0f64);
    for n in 4..=12usize {
        let e_ = entry(&format!("johnson:{n},2"));
        let p = e_.pipeline().unwrap();
        err = err.max(max_over(&times, |t| (q0(&p.measure, t) - johnson_printed_q0(n, t)).norm()));
        let shallow = spectral_measure(&p.jacobi.truncate(1).unwrap()).unwrap();
        trunc = trunc.max(max_over(&times, |t| (q0(&shallow, t) - johnson_printed_q0(n, t)).norm()));
        let o = Oracle::new(e_.graph.as_ref().unwrap()).unwrap();
        oracle = oracle.max(max_over(&times, |t| {
            let (q, _) = oracle_strata(&o, 0, &p, t).unwrap();
            (q[0] - q0(&p.measure, t)).norm()
        }));
    }
    Outcome::new(err < tol, format!("n = 4..12, max error {err:.2e} (tol {tol:.0e})"))
        .note(format!(
            "the printed form equals the depth-1 truncation (2 atoms) to {trunc:.2e}; J(n,2) has 3 distinct eigenvalues 2(n-2), n-4, -2"
        ))
        .note(format!("full three-atom pipeline vs oracle: {oracle:.2e}"))
}

fn oracle_equivalence() -> Outcome {
    let tol = 1e-8;
    let times = grid(10.0, 201);
    let mut cases: Vec<(String, usize)> = Vec::new();
    cases.extend((2..=16).map(|n| (format!("complete:{n}"), 0)));
    cases.extend((3..=24).map(|n| (format!("cycle:{n}"), 0)));
    cases.push(("petersen".into(), 0));
    cases.extend((4..=12).map(|n| (format!("johnson:{n},2"), 0)));
    cases.extend((2..=20).map(|n| (format!("path:{n}"), 0)));
    cases.extend((3..=20).map(|n| (format!("path:{n}"), 1)));
    cases.extend((1..=6).map(|n| (format!("glued_trees:{n}"), 0)));
    cases.push(("hamming:3,3".into(), 0));
    let mut worst = (0.0f64, String::new());
    for (spec, origin) in &cases {
        let en = entry(spec).with_origin(*origin).unwrap();
        let p = en.pipeline().unwrap();
        let o = Oracle::new(en.graph.as_ref().unwrap()).unwrap();
        let kernel = AmplitudeKernel::new(&p.measure, &p.jacobi).unwrap();
        let err = max_over(&times, |t| {
            let (q, _) = oracle_strata(&o, *origin, &p, t).unwrap();
            q.iter()
                .zip(kernel.eval(t))
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max)
        });
        if err >= worst.0 {
            worst = (err, format!("{spec} origin {origin}"));
        }
    }
    Outcome::new(
        worst.0 < tol,
        format!(
            "{} graphs, max stratum discrepancy {:.2e} on {} (tol {tol:.0e})",
            cases.len(),
            worst.0,
            worst.1
        ),
    )
}

fn appendix_rows() -> Outcome {
    let tol = 1e-9;
    let times = grid(10.0, 201);
    let mut pass = true;
    let mut parts = Vec::new();
    let mut notes = Vec::new();
    for id in ["icosahedron", "pappus", "desargues", "dodecahedron", "h33"] {
        let en = entry(&format!("appendix:{id}"));
        let p = en.pipeline().unwrap();
        let cf = en.closed_form_q0.as_ref().unwrap();
        let err = max_over(&times, |t| (cf.eval(t) - q0(&p.measure, t)).norm());
        if err < tol {
            parts.push(format!("{id} {err:.1e}"));
            continue;
        }
        let o = Oracle::new(en.graph.as_ref().unwrap()).unwrap();
        let oracle_err = max_over(&times, |t| (o.amplitudes(0, t)[0] - q0(&p.measure, t)).norm());
        let confirmed = oracle_err < 1e-8 && en.status == Status::PaperTypoSuspect;
        pass &= confirmed;
        parts.push(format!("{id} {err:.1e} flagged"));
        notes.push(format!(
            "{id}: tabulated form off by {err:.2e}; pipeline vs oracle {oracle_err:.2e}; catalog status {}",
            en.status
        ));
    }
    let mut out = Outcome::new(pass, format!("{} (tol {tol:.0e})", parts.join(", ")));
    out.notes = notes;
    out
}

/// Every family at a few sizes plus every tabulated row.
fn corpus() -> Vec<CatalogEntry> {
    let mut specs: Vec<String> = Vec::new();
    specs.extend((2..=12).map(|n| format!("complete:{n}")));
    specs.extend((3..=16).map(|n| format!("cycle:{n}")));
    specs.push("petersen".into());
    specs.extend((4..=12).map(|n| format!("johnson:{n},2")));
    specs.extend(["johnson:6,3", "johnson:8,4", "johnson:20,5"].map(String::from));
    specs.extend(["srg:10,3,0,1", "srg:16,6,2,2", "srg:27,10,1,5"].map(String::from));
    specs.extend((2..=10).map(|m| format!("dihedral_srg:{m}")));
    specs.extend(["hamming:3,3", "hamming:3,4", "hamming:2,5", "hamming:6,2"].map(String::from));
    specs.extend((2..=20).map(|n| format!("path:{n}")));
    specs.extend((1..=6).map(|n| format!("glued_trees:{n}")));
    for m in ["1", "3/2", "2"] {
        specs.extend([3, 8, 20].map(|n| format!("tchebichef1:{n},{m}")));
        specs.extend([3, 8, 20].map(|n| format!("tchebichef2:{n},{m}")));
    }
    specs.extend(appendix_ids().into_iter().map(|id| format!("appendix:{id}")));
    let mut entries: Vec<CatalogEntry> = specs.iter().map(|s| entry(s)).collect();
    entries.extend((3..=20).map(|n| catalog::path(n).unwrap().with_origin(1).unwrap()));
    entries
}

fn conservation(corpus: &[CatalogEntry]) -> Outcome {
    let tol = 1e-10;
    let kernels: Vec<AmplitudeKernel> = corpus
        .iter()
        .map(|en| {
            let p = en.pipeline().unwrap();
            AmplitudeKernel::new(&p.measure, &p.jacobi).unwrap()
        })
        .collect();
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let k = rng.gen_range(0..kernels.len());
        let t = rng.gen_range(-50.0..50.0);
        let defect = (kernels[k].eval(t).iter().map(Complex64::norm_sqr).sum::<f64>() - 1.0).abs();
        worst = worst.max(defect);
    }
    Outcome::new(
        worst < tol,
        format!("10000 draws over {} entries, max defect {worst:.2e} (tol {tol:.0e})", corpus.len()),
    )
}

fn stieltjes_identity(corpus: &[CatalogEntry]) -> Outcome {
    let tol = 1e-10;
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let mut worst = 0.0f64;
    for en in corpus {
        let p = en.pipeline().unwrap();
        let lo = p.measure.nodes()[0] - 2.0;
        let hi = p.measure.nodes()[p.measure.len() - 1] + 2.0;
        for _ in 0..100 {
            let im = rng.gen_range(0.1..5.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let z = Complex64::new(rng.gen_range(lo..hi), im);
            let cf = stieltjes_cf(&p.jacobi, z).unwrap();
            let poles = stieltjes_poles(&p.measure, z).unwrap();
            worst = worst.max((cf - poles).norm() / (1.0 + cf.norm()));
        }
    }
    Outcome::new(
        worst < tol,
        format!("100 points x {} entries, max relative gap {worst:.2e} (tol {tol:.0e})", corpus.len()),
    )
}

fn bessel_limits() -> Outcome {
    let tol = 1e-6;
    let times = grid(5.0, 101);
    let path = entry("path:200").pipeline().unwrap();
    let cycle = entry("cycle:400").pipeline().unwrap();
    let j = |n: u32, x: f64| bessel_j(n, x).unwrap();
    let path0 = max_over(&times, |t| (q0(&path.measure, t) - (j(0, 2.0 * t) + j(2, 2.0 * t))).norm());
    let cycle0 = max_over(&times, |t| (q0(&cycle.measure, t) - j(0, 2.0 * t)).norm());
    let kernel = AmplitudeKernel::new(&path.measure, &path.jacobi).unwrap();
    let (mut printed, mut conjugate) = (0.0f64, 0.0f64);
    for &t in &times {
        let q = kernel.eval(t);
        for l in 0..=5u32 {
            let bessel = j(l, 2.0 * t) + j(l + 2, 2.0 * t);
            printed = printed.max((q[l as usize] - I.powu(l) * bessel).norm());
            conjugate = conjugate.max((q[l as usize] - half_line_q(l, t, 1.0).unwrap()).norm());
        }
    }
    let cyc_kernel = AmplitudeKernel::new(&cycle.measure, &cycle.jacobi).unwrap();
    let line = max_over(&times, |t| {
        let q = cyc_kernel.eval(t);
        (0..=5u32)
            .map(|l| (q[l as usize] - infinite_line_q(l, t).unwrap()).norm())
            .fold(0.0, f64::max)
    });
    Outcome::new(
        path0 < tol && cycle0 < tol && printed < tol,
        format!(
            "P_200 q0 {path0:.2e}, C_400 q0 {cycle0:.2e}, P_200 q_l vs i^l(J_l+J_l+2) {printed:.2e} (tol {tol:.0e})"
        ),
    )
    .note(format!(
        "under exp(-iAt), q_l = (-i)^l (J_l + J_l+2)(2t); that form matches P_200 to {conjugate:.2e} for l <= 5"
    ))
    .note(format!(
        "C_400 strata vs J_0(2t) (l = 0) and sqrt2 (-i)^l J_l(2t) (l >= 1): {line:.2e}"
    ))
}

/// The tabulated path pattern: `omega_{2i} = i/(i+1)`, `omega_{2i-1} =
/// (i+1)/i`, with the last entry replaced by `1/k` when `n = 2k`.
fn printed_path_omega(n: usize) -> Vec<f64> {
    let len = if n % 2 == 0 { n - 1 } else { n - 2 };
    let mut w: Vec<f64> = (1..=len)
        .map(|j| {
            let i = (j + 1) / 2;
            if j % 2 == 0 {
                i as f64 / (i as f64 + 1.0)
            } else {
                (i as f64 + 1.0) / i as f64
            }
        })
        .collect();
    if n % 2 == 0 {
        w[len - 1] = 2.0 / n as f64;
    }
    w
}

fn lanczos_path() -> Outcome {
    let times = grid(10.0, 201);
    let (mut omega_err, mut amp_err) = (0.0f64, 0.0f64);
    let mut lengths_ok = true;
    for n in 4..=20usize {
        let en = catalog::path(n).unwrap().with_origin(1).unwrap();
        let g = en.graph.as_ref().unwrap();
        let jc = lanczos(g, &vertex_state(n, 1)).unwrap();
        let want = printed_path_omega(n);
        if jc.omega().len() != want.len() {
            lengths_ok = false;
            continue;
        }
        for (a, b) in jc.omega().iter().zip(&want) {
            omega_err = omega_err.max((a - b).abs());
        }
        assert!(jc.alpha().iter().all(|a| a.abs() < 1e-12));
        let m = spectral_measure(&jc).unwrap();
        let o = Oracle::new(g).unwrap();
        amp_err = amp_err.max(max_over(&times, |t| (o.amplitudes(1, t)[1] - q0(&m, t)).norm()));
    }
    Outcome::new(
        lengths_ok && omega_err < 1e-12 && amp_err < 1e-8,
        format!(
            "n = 4..20, omega error {omega_err:.2e} (tol 1e-12), q0 vs oracle {amp_err:.2e} (tol 1e-8){}",
            if lengths_ok { "" } else { ", Krylov length mismatch" }
        ),
    )
    .note("Krylov dimension is n for even n and n - 1 for odd n, where vertex 1 has no weight on the eigenvalue 0")
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("Petersen closed forms", Box::new(petersen_closed_forms)),
        ("complete graphs", Box::new(complete_graphs)),
        ("dihedral SRG(2m,m,0,m)", Box::new(dihedral_srg)),
        ("Johnson d=2", Box::new(johnson_d2)),
        ("oracle equivalence", Box::new(oracle_equivalence)),
        ("tabulated distance-regular rows", Box::new(appendix_rows)),
        ("conservation", Box::new(|| conservation(&corpus))),
        ("Stieltjes continued fraction vs poles", Box::new(|| stieltjes_identity(&corpus))),
        ("Bessel limits", Box::new(bessel_limits)),
        ("Lanczos on the path from its second vertex", Box::new(lanczos_path)),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let out = run();
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {:>2}: {title}: {}", k + 1, out.summary);
        for n in &out.notes {
            println!("      note: {n}");
        }
        if !out.pass {
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
