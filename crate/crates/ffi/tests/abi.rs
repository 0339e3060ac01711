use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use symtwist_ffi::*;

fn take_string(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { symtwist_string_free(s) };
    out
}

fn last_error() -> String {
    let e = symtwist_last_error();
    assert!(!e.is_null());
    unsafe { CStr::from_ptr(e) }.to_str().unwrap().to_string()
}

fn perm(text: &str, degree: usize) -> *mut SymtwistPermutation {
    let c = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { symtwist_perm_parse(c.as_ptr(), degree, &mut p) }, SymtwistStatus::Ok);
    p
}

#[test]
fn permutation_round_trip() {
    let p = perm("(1,2,3,4,5)", 0);
    let q = perm("(1,5)(2,4)", 5);
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(symtwist_perm_compose(p, q, &mut r), SymtwistStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(symtwist_perm_to_string(r, &mut s), SymtwistStatus::Ok);
        assert_eq!(take_string(s), "(2,5)(3,4)");
        let mut order = 0;
        assert_eq!(symtwist_perm_order(p, &mut order), SymtwistStatus::Ok);
        assert_eq!(order, 5);
        let mut inv = ptr::null_mut();
        assert_eq!(symtwist_perm_inverse(p, &mut inv), SymtwistStatus::Ok);
        assert_eq!(symtwist_perm_to_string(inv, &mut s), SymtwistStatus::Ok);
        assert_eq!(take_string(s), "(1,5,4,3,2)");
        assert_eq!(symtwist_perm_degree(inv), 5);
        for h in [p, q, r, inv] {
            symtwist_perm_free(h);
        }
    }
}

#[test]
fn error_codes() {
    let bad = CString::new("[1,1]").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { symtwist_perm_parse(bad.as_ptr(), 0, &mut p) }, SymtwistStatus::Parse);
    assert!(p.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { symtwist_perm_parse(ptr::null(), 0, &mut p) }, SymtwistStatus::NullPointer);

    let a = perm("(1,2)", 3);
    let b = perm("(1,2)", 4);
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { symtwist_perm_compose(a, b, &mut r) }, SymtwistStatus::DegreeMismatch);
    unsafe {
        symtwist_perm_free(a);
        symtwist_perm_free(b);
        symtwist_perm_free(ptr::null_mut());
        symtwist_string_free(ptr::null_mut());
    }

    let big = CString::new("id:11").unwrap();
    let mut alpha = ptr::null_mut();
    let mut count = 0;
    unsafe {
        assert_eq!(symtwist_automorphism_parse(big.as_ptr(), &mut alpha), SymtwistStatus::Ok);
        assert_eq!(symtwist_twisted_count(alpha, &mut count), SymtwistStatus::OutOfRange);
        symtwist_automorphism_free(alpha);
    }
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { symtwist_fibers_search_json(3, true, 1, &mut s) }, SymtwistStatus::OutOfRange);
}

#[test]
fn group_computations() {
    let spec = CString::new("outer6:p1:o23456").unwrap();
    let mut alpha = ptr::null_mut();
    let mut count = 0;
    unsafe {
        assert_eq!(symtwist_automorphism_parse(spec.as_ptr(), &mut alpha), SymtwistStatus::Ok);
        assert_eq!(symtwist_twisted_count(alpha, &mut count), SymtwistStatus::Ok);
        assert_eq!(count, 36);
        let t = perm("(1,2)", 6);
        let mut image = ptr::null_mut();
        assert_eq!(symtwist_automorphism_apply(alpha, t, &mut image), SymtwistStatus::Ok);
        let mut s = ptr::null_mut();
        symtwist_perm_to_string(image, &mut s);
        assert_eq!(take_string(s), "(1,2)(3,4)(5,6)");
        symtwist_automorphism_to_string(alpha, &mut s);
        assert_eq!(take_string(s), "outer6:p1:o23456");
        symtwist_perm_free(t);
        symtwist_perm_free(image);
        symtwist_automorphism_free(alpha);

        let mut max = 0;
        assert_eq!(symtwist_outer_s6_max(&mut max), SymtwistStatus::Ok);
        assert_eq!(max, 36);

        let mut s = ptr::null_mut();
        assert_eq!(symtwist_total_degree_sum(6, &mut s), SymtwistStatus::Ok);
        assert_eq!(take_string(s), "76");
        let lambda = CString::new("[4,2,1]").unwrap();
        assert_eq!(symtwist_degree(lambda.as_ptr(), &mut s), SymtwistStatus::Ok);
        assert_eq!(take_string(s), "35");
        assert_eq!(symtwist_fibers_search_json(4, true, 1, &mut s), SymtwistStatus::Ok);
        let json = take_string(s);
        assert!(json.contains("\"layers\":[3,6]"), "{json}");
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/symtwist.h")).unwrap();
    for name in [
        "symtwist_last_error",
        "symtwist_string_free",
        "symtwist_perm_parse",
        "symtwist_perm_compose",
        "symtwist_automorphism_parse",
        "symtwist_twisted_count",
        "symtwist_fibers_search_json",
        "typedef struct SymtwistPermutation SymtwistPermutation",
        "SYMTWIST_STATUS_OUT_OF_RANGE = 5",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

/// Compiles a C program against the header and static library when a C
/// compiler and the archive are present.
#[test]
fn c_program_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let archive = profile_dir.join("libsymtwist_ffi.a");
    let Ok(cc) = which_cc() else {
        println!("no C compiler; skipped");
        return;
    };
    if !archive.exists() {
        println!("{} not built; skipped", archive.display());
        return;
    }
    let dir = scratch_dir();
    let src = dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"#include "symtwist.h"
#include <stdio.h>
int main(void) {
    SymtwistAutomorphism *a = NULL;
    uint64_t count = 0;
    if (symtwist_automorphism_parse("id:6", &a) != SYMTWIST_STATUS_OK) return 1;
    if (symtwist_twisted_count(a, &count) != SYMTWIST_STATUS_OK) return 2;
    symtwist_automorphism_free(a);
    SymtwistPermutation *p = NULL;
    if (symtwist_perm_parse("[1,1]", 0, &p) != SYMTWIST_STATUS_PARSE) return 3;
    printf("%llu\n", (unsigned long long)count);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.join("smoke");
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "76\n");
    let _ = std::fs::remove_dir_all(&dir);
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .ok_or(())
}

fn scratch_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("symtwist-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
