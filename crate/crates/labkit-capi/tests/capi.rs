//! Exercises the C ABI through the exported symbols and checks the generated
//! header.

use labkit_capi::*;
use std::ffi::{CStr, CString};

const SO3_JSON: &str = r#"{
  "name": "so3",
  "dim": 3,
  "generators": ["X1", "X2", "X3"],
  "brackets": [
    {"i": 0, "j": 1, "terms": [{"k": 2, "c": "1"}]},
    {"i": 1, "j": 2, "terms": [{"k": 0, "c": "1"}]},
    {"i": 0, "j": 2, "terms": [{"k": 1, "c": "-1"}]}
  ]
}"#;

fn cstring(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(ptr: *mut std::ffi::c_char) -> String {
    assert!(!ptr.is_null());
    let s = CStr::from_ptr(ptr).to_string_lossy().into_owned();
    labkit_string_free(ptr);
    s
}

unsafe fn last_error() -> String {
    let ptr = labkit_last_error();
    if ptr.is_null() {
        String::new()
    } else {
        take_string(ptr)
    }
}

#[test]
fn algebra_lifecycle_and_checks() {
    unsafe {
        let alg = labkit_algebra_from_json(cstring(SO3_JSON).as_ptr());
        assert!(!alg.is_null(), "{}", last_error());
        assert_eq!(labkit_algebra_dim(alg), 3);
        assert_eq!(labkit_algebra_validate(alg), LabkitStatus::Ok);

        let mut count = 0u32;
        assert_eq!(
            labkit_algebra_invariant_count(alg, 42, &mut count),
            LabkitStatus::Ok
        );
        assert_eq!(count, 1);

        let cas = labkit_poly_parse(alg, cstring("x0^2+x1^2+x2^2").as_ptr());
        assert!(!cas.is_null());
        assert_eq!(labkit_is_invariant(alg, cas), 1);
        assert_eq!(labkit_poly_term_count(cas), 3);

        let g = labkit_poly_parse(alg, cstring("x2").as_ptr());
        let pb = labkit_berezin_bracket(alg, cas, g);
        assert_eq!(labkit_poly_is_zero(pb), 1);
        assert_eq!(take_string(labkit_poly_to_string(pb)), "0");

        let f = labkit_poly_parse(alg, cstring("x0*x1").as_ptr());
        let sym = take_string(labkit_symmetrize_to_string(alg, f));
        assert_eq!(sym, "X0 X1 - (1/2)*X2");

        let cert = take_string(labkit_certify_commuting_json(
            alg,
            cstring("x0^2").as_ptr(),
            cstring("x1^2").as_ptr(),
            8,
        ));
        let v: serde_json::Value = serde_json::from_str(&cert).unwrap();
        assert_eq!(v["verdict"], "CertifiedNonCommuting");

        labkit_poly_free(cas);
        labkit_poly_free(g);
        labkit_poly_free(pb);
        labkit_poly_free(f);
        labkit_algebra_free(alg);
    }
}

#[test]
fn error_paths_report_details() {
    unsafe {
        // malformed JSON: null result plus an error message
        let bad = labkit_algebra_from_json(cstring("{ nope").as_ptr());
        assert!(bad.is_null());
        assert!(!last_error().is_empty());

        // null pointers are caught
        assert_eq!(
            labkit_algebra_validate(std::ptr::null()),
            LabkitStatus::NullPointer
        );
        assert_eq!(labkit_poly_is_zero(std::ptr::null()), -1);

        // grammar errors surface through the error slot
        let alg = labkit_algebra_from_json(cstring(SO3_JSON).as_ptr());
        let poly = labkit_poly_parse(alg, cstring("x9 + *").as_ptr());
        assert!(poly.is_null());
        assert!(last_error().contains("x9"));
        labkit_algebra_free(alg);
    }
}

#[test]
fn chain_round_trip() {
    unsafe {
        let chain_json =
            format!(r#"{{"algebra": {SO3_JSON}, "sub_rows": [["0","0","1"]], "l_prime": 0}}"#);
        let chain = labkit_chain_from_json(cstring(&chain_json).as_ptr());
        assert!(!chain.is_null(), "{}", last_error());

        assert_eq!(labkit_scalar_check(chain, cstring("x0^2+x1^2").as_ptr()), 1);
        assert_eq!(labkit_scalar_check(chain, cstring("x0").as_ptr()), 0);

        let report = take_string(labkit_mlp_count_json(chain, 7));
        let v: serde_json::Value = serde_json::from_str(&report).unwrap();
        assert_eq!(v["dim_g"], 3);
        assert_eq!(v["dim_h"], 1);
        assert_eq!(v["n_missing"], 0);
        labkit_chain_free(chain);
    }
}

/// Compile and run a small C program against the generated header and the
/// static library. Skipped when no C compiler is on the path.
#[test]
fn c_program_links_and_runs() {
    use std::process::Command;

    let cc = ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok());
    let Some(cc) = cc else {
        eprintln!("skipping: no C compiler found");
        return;
    };
    // target/debug from the test executable's location (target/debug/deps/..)
    let exe = std::env::current_exe().unwrap();
    let debug_dir = exe.parent().unwrap().parent().unwrap();
    let staticlib = debug_dir.join("liblabkit_capi.a");
    assert!(staticlib.exists(), "staticlib not built at {staticlib:?}");
    let include_dir = concat!(env!("CARGO_MANIFEST_DIR"), "/include");

    let workdir = std::env::temp_dir().join(format!("labkit_capi_c_{}", std::process::id()));
    std::fs::create_dir_all(&workdir).unwrap();
    let c_src = workdir.join("demo.c");
    std::fs::write(
        &c_src,
        r#"
#include <stdio.h>
#include <string.h>
#include "labkit.h"

static const char *SO3 =
  "{\"name\":\"so3\",\"dim\":3,\"generators\":[\"X1\",\"X2\",\"X3\"],"
  "\"brackets\":[{\"i\":0,\"j\":1,\"terms\":[{\"k\":2,\"c\":\"1\"}]},"
  "{\"i\":1,\"j\":2,\"terms\":[{\"k\":0,\"c\":\"1\"}]},"
  "{\"i\":0,\"j\":2,\"terms\":[{\"k\":1,\"c\":\"-1\"}]}]}";

int main(void) {
    LabkitAlgebra *alg = labkit_algebra_from_json(SO3);
    if (!alg) return 1;
    if (labkit_algebra_dim(alg) != 3) return 2;
    if (labkit_algebra_validate(alg) != LABKIT_STATUS_OK) return 3;
    uint32_t count = 0;
    if (labkit_algebra_invariant_count(alg, 42, &count) != LABKIT_STATUS_OK) return 4;
    if (count != 1) return 5;
    LabkitPoly *cas = labkit_poly_parse(alg, "x0^2+x1^2+x2^2");
    LabkitPoly *z = labkit_poly_parse(alg, "x2");
    if (!cas || !z) return 6;
    LabkitPoly *pb = labkit_berezin_bracket(alg, cas, z);
    if (labkit_poly_is_zero(pb) != 1) return 7;
    char *sym = labkit_symmetrize_to_string(alg, cas);
    if (!sym || strlen(sym) == 0) return 8;
    printf("symmetrized casimir: %s\n", sym);
    labkit_string_free(sym);
    labkit_poly_free(pb);
    labkit_poly_free(z);
    labkit_poly_free(cas);
    labkit_algebra_free(alg);
    return 0;
}
"#,
    )
    .unwrap();

    let exe_out = workdir.join("demo");
    let compile = Command::new(cc)
        .arg(&c_src)
        .arg(&staticlib)
        .args(["-I", include_dir])
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe_out)
        .output()
        .expect("compiler runs");
    assert!(
        compile.status.success(),
        "compile failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );
    let run = Command::new(&exe_out).output().expect("demo runs");
    assert_eq!(
        run.status.code(),
        Some(0),
        "demo exited {:?}: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stdout)
    );
    assert!(
        String::from_utf8_lossy(&run.stdout).contains("symmetrized casimir: X2 X2 + X1 X1 + X0 X0")
    );
}

#[test]
fn generated_header_covers_the_surface() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/labkit.h"))
        .expect("header generated by the build script");
    for needle in [
        "typedef struct LabkitAlgebra LabkitAlgebra;",
        "typedef struct LabkitChain LabkitChain;",
        "typedef struct LabkitPoly LabkitPoly;",
        "labkit_algebra_from_json",
        "labkit_berezin_bracket",
        "labkit_certify_commuting_json",
        "labkit_sp6_verify_json",
        "labkit_string_free",
        "LabkitStatus",
    ] {
        assert!(header.contains(needle), "header misses `{needle}`");
    }
}
