use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "ctqw.h"

int main(void) {
    CtqwWalk *walk = NULL;
    if (ctqw_walk_from_catalog("petersen", &walk) != CTQW_STATUS_OK) return 1;
    size_t strata = 0;
    ctqw_walk_strata(walk, &strata);
    double re[3], im[3];
    if (strata != 3) return 2;
    if (ctqw_walk_amplitudes(walk, 0.5, re, im, strata) != CTQW_STATUS_OK) return 3;
    double total = 0.0;
    for (size_t l = 0; l < strata; ++l) total += re[l] * re[l] + im[l] * im[l];
    if (fabs(total - 1.0) > 1e-12) return 4;
    ctqw_walk_free(walk);

    CtqwGraph *g = NULL;
    size_t edges[] = {0, 1, 1, 2};
    if (ctqw_graph_new(2, edges, 2, &g) != CTQW_STATUS_INVALID_GRAPH) return 5;
    if (ctqw_last_error()[0] == '\0') return 6;
    printf("%.6f\n", re[0]);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // tests run from <target>/<profile>/deps
    std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_staticlib() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libctqw_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let work = tempfile::tempdir().unwrap();
    let src = work.path().join("smoke.c");
    let exe = work.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .expect("C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let q0: f64 = String::from_utf8(out.stdout).unwrap().trim().parse().unwrap();
    let want = (5.0 * 0.5f64.cos() + 4.0 * 1.0f64.cos() + 1.5f64.cos()) / 10.0;
    assert!((q0 - want).abs() < 1e-6);
}

#[test]
fn header_is_current() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/ctqw.h")).unwrap();
    for name in [
        "ctqw_graph_new",
        "ctqw_graph_parse",
        "ctqw_graph_from_catalog",
        "ctqw_oracle_amplitudes",
        "ctqw_walk_new",
        "ctqw_walk_from_jacobi",
        "ctqw_walk_amplitudes",
        "ctqw_walk_stieltjes",
        "ctqw_last_error",
        "CTQW_STATUS_LENGTH_MISMATCH",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
