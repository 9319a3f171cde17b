use ctqw::amplitudes::q0;
use ctqw::catalog::{appendix_ids, make_entry, Status};
use ctqw::jacobi::{jacobi_from_strata, lanczos, qd_from_intersection_array, vertex_state};
use ctqw::oracle::Oracle;

fn times() -> Vec<f64> {
    (0..201).map(|j| j as f64 * 0.05).collect()
}

#[test]
fn status_flags_match_numerics() {
    for id in appendix_ids() {
        let e = make_entry(&format!("appendix:{id}")).unwrap();
        let p = e.pipeline().unwrap();
        let cf = e.closed_form_q0.as_ref().unwrap();
        let err = times()
            .iter()
            .map(|&t| (cf.eval(t) - q0(&p.measure, t)).norm())
            .fold(0.0, f64::max);
        match e.status {
            Status::Verified => assert!(err < 1e-9, "{id}: {err}"),
            Status::PaperTypoSuspect => {
                assert!(err > 1e-3, "{id} agrees after all");
                let oracle = Oracle::new(e.graph.as_ref().unwrap()).unwrap();
                let oracle_err = times()
                    .iter()
                    .map(|&t| (oracle.amplitudes(0, t)[0] - q0(&p.measure, t)).norm())
                    .fold(0.0, f64::max);
                assert!(oracle_err < 1e-8, "{id}: oracle {oracle_err}");
            }
            Status::UnverifiedArrayOnly => {
                assert!(err > 1e-3, "{id} agrees after all");
                assert!(e.graph.is_none());
            }
        }
        if e.status == Status::Verified {
            if let Some(g) = &e.graph {
                let oracle = Oracle::new(g).unwrap();
                for &t in &times() {
                    assert!((oracle.amplitudes(0, t)[0] - cf.eval(t)).norm() < 1e-8, "{id}");
                }
            }
        }
    }
}

#[test]
fn tabulated_closed_forms_start_at_one_when_verified() {
    for id in appendix_ids() {
        let e = make_entry(&format!("appendix:{id}")).unwrap();
        if e.status == Status::Verified {
            let at0 = e.closed_form_q0.unwrap().eval(0.0);
            assert!((at0.re - 1.0).abs() < 1e-14 && at0.im.abs() < 1e-14, "{id}");
        }
    }
}

#[test]
fn three_routes_to_jacobi_agree() {
    let mut specs: Vec<String> = vec!["petersen".into(), "hamming:3,3".into(), "hamming:3,4".into()];
    specs.extend((2..=9).map(|n| format!("complete:{n}")));
    specs.extend((3..=14).map(|n| format!("cycle:{n}")));
    specs.extend((4..=10).map(|n| format!("johnson:{n},2")));
    specs.extend(["johnson:8,4", "johnson:9,3"].map(String::from));
    specs.extend((2..=8).map(|m| format!("dihedral_srg:{m}")));
    specs.extend(
        ["icosahedron", "line-petersen", "pappus", "desargues", "dodecahedron", "j84"]
            .map(|id| format!("appendix:{id}")),
    );
    for spec in specs {
        let e = make_entry(&spec).unwrap();
        let g = e.graph.as_ref().unwrap();
        let from_array = qd_from_intersection_array(e.intersection_array.as_ref().unwrap());
        let from_strata = jacobi_from_strata(g, &g.stratify(0).unwrap()).unwrap();
        let from_lanczos = lanczos(g, &vertex_state(g.n(), 0)).unwrap();
        assert_eq!(from_array.max_abs_diff(&from_strata), Some(0.0), "{spec}");
        let d = from_array.max_abs_diff(&from_lanczos).unwrap_or(f64::INFINITY);
        assert!(d < 1e-12, "{spec}: lanczos differs by {d}");
    }
}

#[test]
fn shell_sizes_round_trip() {
    for id in appendix_ids() {
        let e = make_entry(&format!("appendix:{id}")).unwrap();
        let ia = e.intersection_array.unwrap();
        let kappa = ia.shell_sizes();
        for i in 1..kappa.len() {
            assert_eq!(kappa[i] * ia.c()[i - 1] as u64, kappa[i - 1] * ia.b()[i - 1] as u64, "{id}");
        }
    }
}
