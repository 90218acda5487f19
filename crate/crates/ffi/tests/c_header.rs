//! Compiles and runs a C program against the generated header and the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include "hookschur.h"

int main(void) {
    HsComplex *c = NULL;
    if (hs_complex_build(4, 2, 2, &c) != HS_STATUS_OK) return 10;
    size_t h0 = 0, h1 = 0;
    hs_complex_cohomology_dim(c, 0, &h0);
    hs_complex_cohomology_dim(c, 1, &h1);
    char *json = NULL;
    if (hs_complex_report_json(c, &json) != HS_STATUS_OK) return 11;
    hs_string_free(json);
    hs_complex_free(c);
    if (hs_complex_build(3, 2, 2, &c) != HS_STATUS_INVALID) return 12;
    printf("%zu %zu %s\n", h0, h1, hs_last_error());
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // .../target/<profile>/deps/c_header-<hash>
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/hookschur.h")).unwrap();
    for name in [
        "typedef struct HsComplex HsComplex;",
        "HS_STATUS_SIZE_LIMIT = 3",
        "hs_complex_build(",
        "hs_complex_free(",
        "hs_complex_report_json(",
        "hs_string_free(",
        "hs_last_error(",
        "hs_binomial_mod_p(",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

#[test]
fn c_program_links_and_runs() {
    let lib = target_dir().join("libhookschur_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let bin = dir.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler named cc");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("3 1 p must divide m"), "{stdout}");
}
