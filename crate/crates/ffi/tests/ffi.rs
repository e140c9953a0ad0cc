use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use moduli_census_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    let v = CStr::from_ptr(s).to_str().unwrap().to_owned();
    mc_string_free(s);
    v
}

fn last_error() -> String {
    let p = mc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn elliptic_census_handle() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(mc_field_new(3, &mut k), McStatus::Ok);
        assert_eq!((mc_field_order(k), mc_field_characteristic(k)), (3, 3));
        let mut c = ptr::null_mut();
        assert_eq!(mc_elliptic_census_new(k, &mut c), McStatus::Ok);
        assert_eq!(mc_elliptic_census_len(c), 8);

        let mut s = ptr::null_mut();
        assert_eq!(mc_elliptic_census_sigma(c, 10, &mut s), McStatus::Ok);
        assert_eq!(take(s), "253");
        assert_eq!(mc_elliptic_census_total_mass(c, &mut s), McStatus::Ok);
        assert_eq!(take(s), "3");

        let mut mass_sixths = 0;
        for i in 0..8 {
            let (mut n1, mut aut) = (0i64, 0u32);
            assert_eq!(mc_elliptic_census_class(c, i, &mut n1, &mut aut), McStatus::Ok);
            assert!((1..=7).contains(&n1));
            mass_sixths += 6 / aut;
        }
        assert_eq!(mass_sixths, 18);
        let (mut n1, mut aut) = (0i64, 0u32);
        assert_eq!(mc_elliptic_census_class(c, 8, &mut n1, &mut aut), McStatus::Usage);
        assert!(last_error().contains("out of range"));

        mc_elliptic_census_free(c);
        mc_field_free(k);
    }
}

#[test]
fn m1n_over_f2() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(mc_field_new(2, &mut k), McStatus::Ok);
        let mut c = ptr::null_mut();
        assert_eq!(mc_elliptic_census_new(k, &mut c), McStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(mc_m1n(c, 3, &mut s), McStatus::Ok);
        assert_eq!(take(s), "7");
        assert_eq!(mc_m1n(c, 0, &mut s), McStatus::Usage);
        mc_elliptic_census_free(c);
        mc_field_free(k);
    }
}

#[test]
fn trace_engines() {
    unsafe {
        let mut e = ptr::null_mut();
        assert_eq!(mc_trace_engine_new(3, &mut e), McStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(mc_trace_degree2(e, 8, 8, &mut s), McStatus::Ok);
        assert_eq!(take(s), "-6408");
        assert_eq!(mc_sigma_ab(e, 1, 0, &mut s), McStatus::Ok);
        take(s);
        mc_trace_engine_free(e);

        assert_eq!(mc_trace_engine_new(9, &mut e), McStatus::Usage);
        assert_eq!(mc_trace_engine_new(49, &mut e), McStatus::Usage);

        let mut store = ptr::null_mut();
        assert_eq!(mc_sigma_abc_store_new(ptr::null(), &mut store), McStatus::Ok);
        assert!(mc_sigma_abc_store_len(store) > 0);
        assert_eq!(mc_trace_engine_new(2, &mut e), McStatus::Ok);
        assert_eq!(mc_trace_degree3(e, store, 4, 2, 8, &mut s), McStatus::Ok);
        assert_eq!(take(s), "9504");
        mc_trace_engine_free(e);
        mc_sigma_abc_store_free(store);

        let text = CString::new("3 10 6 4 1031912\n").unwrap();
        assert_eq!(mc_sigma_abc_store_new(text.as_ptr(), &mut store), McStatus::Ok);
        assert_eq!(mc_sigma_abc_store_len(store), 1);
        mc_sigma_abc_store_free(store);
        let bad = CString::new("3 10 6\n").unwrap();
        assert_ne!(mc_sigma_abc_store_new(bad.as_ptr(), &mut store), McStatus::Ok);
    }
}

#[test]
fn errors_and_nulls() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(mc_field_new(6, &mut k), McStatus::Usage);
        assert!(k.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(mc_field_new(3, ptr::null_mut()), McStatus::NullPointer);
        let mut s = ptr::null_mut();
        assert_eq!(mc_elliptic_census_sigma(ptr::null(), 2, &mut s), McStatus::NullPointer);
        assert_eq!(mc_elliptic_census_len(ptr::null()), 0);
        assert_eq!(mc_field_order(ptr::null()), 0);
        mc_field_free(ptr::null_mut());
        mc_string_free(ptr::null_mut());
        let bytes = [0xffu8, 0];
        let mut store = ptr::null_mut();
        assert_eq!(mc_sigma_abc_store_new(bytes.as_ptr().cast(), &mut store), McStatus::InvalidUtf8);
    }
    assert_eq!(mc_verify_criterion(1), McStatus::Ok);
    assert_eq!(mc_verify_criterion(11), McStatus::Usage);
}

fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_is_generated() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/moduli_census.h")).unwrap();
    for name in [
        "MC_STATUS_CAPACITY = 3",
        "typedef struct McEllipticCensus McEllipticCensus;",
        "const char *mc_last_error(void);",
        "enum McStatus mc_trace_degree2(",
        "void mc_string_free(char *s);",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

#[test]
fn c_program_links_against_staticlib() {
    let lib = artifact_dir().join("libmoduli_census_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "moduli_census.h"

int main(void) {
    McField *k = NULL;
    McEllipticCensus *c = NULL;
    char *s = NULL;
    if (mc_field_new(7, &k) != MC_STATUS_OK) return 10;
    if (mc_elliptic_census_new(k, &c) != MC_STATUS_OK) return 11;
    if (mc_elliptic_census_sigma(c, 16, &s) != MC_STATUS_OK) return 12;
    printf("%s\n", s);
    mc_string_free(s);
    if (mc_elliptic_census_total_mass(c, &s) != MC_STATUS_OK) return 13;
    printf("%s\n", s);
    mc_string_free(s);
    mc_elliptic_census_free(c);
    mc_field_free(k);
    if (mc_field_new(10, &k) != MC_STATUS_USAGE) return 14;
    printf("%s\n", mc_last_error() ? "error set" : "no error");
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "3225993\n7\nerror set\n");
}
