use std::ffi::{c_char, CStr, CString};
use std::process::Command;
use std::ptr;

use heckekernel_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    hk_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(hk_last_error()).to_str().unwrap().to_string()
}

#[test]
fn quadratic_relation_through_handles() {
    unsafe {
        let mut alg = ptr::null_mut();
        assert_eq!(hk_algebra_new_preset(cs("A1-sc").as_ptr(), ptr::null(), &mut alg), HK_OK);
        let mut rank = 0;
        assert_eq!(hk_algebra_rank(alg, &mut rank), HK_OK);
        assert_eq!(rank, 1);
        let mut s = ptr::null_mut();
        assert_eq!(hk_element_parse(alg, cs(r#"[{w:"s1"}]"#).as_ptr(), &mut s), HK_OK);
        let mut sq = ptr::null_mut();
        assert_eq!(hk_element_mul(alg, s, s, &mut sq), HK_OK);
        let mut json = ptr::null_mut();
        assert_eq!(hk_element_to_json(alg, sq, &mut json), HK_OK);
        let pairs: Vec<(String, String)> = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(pairs.len(), 2);
        assert!(pairs.iter().any(|(w, _)| w == "e"));
        let mut tr = ptr::null_mut();
        assert_eq!(hk_element_trace(alg, sq, &mut tr), HK_OK);
        assert_eq!(take(tr), "1");
        hk_element_free(sq);
        hk_element_free(s);
        hk_algebra_free(alg);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut alg = ptr::null_mut();
        assert_eq!(hk_algebra_new_preset(ptr::null(), ptr::null(), &mut alg), HK_ERR_NULL);
        assert_eq!(hk_algebra_new_preset(cs("E8").as_ptr(), ptr::null(), &mut alg), HK_ERR_INVALID);
        assert!(alg.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(hk_algebra_new_preset(cs("A2").as_ptr(), cs("{oops").as_ptr(), &mut alg), HK_ERR_PARSE);
        assert_eq!(hk_algebra_new_preset(cs("A2").as_ptr(), cs(r#"{"s":0}"#).as_ptr(), &mut alg), HK_ERR_INVALID);
        assert_eq!(
            hk_algebra_new_datum(cs(r#"{"rank":1,"roots":[[2]],"coroots":[[2]],"simple":[0]}"#).as_ptr(), ptr::null(), &mut alg),
            HK_ERR_INVALID
        );
        assert_eq!(hk_algebra_new_preset(cs("A2").as_ptr(), ptr::null(), &mut alg), HK_OK);
        assert!(last_error().is_empty());
        let mut e = ptr::null_mut();
        assert_eq!(hk_element_parse(alg, cs(r#"[{w:"s9"}]"#).as_ptr(), &mut e), HK_ERR_PARSE);
        let (re, im) = ([1.0, 1.0], [0.0, 0.0]);
        let (mut zr, mut zi) = (0.0, 0.0);
        // α(t) = 1 is a pole of c
        assert_eq!(hk_cfun_eval(alg, 2.0, re.as_ptr(), im.as_ptr(), 2, &mut zr, &mut zi), HK_ERR_NUMERIC);
        assert_eq!(hk_cfun_eval(alg, 2.0, re.as_ptr(), im.as_ptr(), 1, &mut zr, &mut zi), HK_ERR_INVALID);
        assert_eq!(hk_algebra_rank(ptr::null(), ptr::null_mut()), HK_ERR_NULL);
        hk_algebra_free(alg);
        hk_algebra_free(ptr::null_mut());
        hk_string_free(ptr::null_mut());
    }
}

#[test]
fn cfun_and_residual_points() {
    unsafe {
        let mut alg = ptr::null_mut();
        assert_eq!(hk_algebra_new_preset(cs("A1-sc").as_ptr(), ptr::null(), &mut alg), HK_OK);
        // t = 2: α(t) = 4, c = (1 − 1/8) / (1 − 1/4)
        let (re, im) = ([2.0], [0.0]);
        let (mut zr, mut zi) = (0.0, 0.0);
        assert_eq!(hk_cfun_eval(alg, 2.0, re.as_ptr(), im.as_ptr(), 1, &mut zr, &mut zi), HK_OK);
        assert!((zr - 7.0 / 6.0).abs() < 1e-14 && zi.abs() < 1e-14);
        let mut json = ptr::null_mut();
        assert_eq!(hk_residual_points(alg, &mut json), HK_OK);
        let pts: Vec<String> = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(pts.len(), 2);
        hk_algebra_free(alg);
    }
}

#[test]
fn jobs_run_in_process() {
    unsafe {
        let mut out = ptr::null_mut();
        let mut exit = -1;
        let cfg = cs(r#"{preset:"A1-sc", cmd:"residual"}"#);
        assert_eq!(hk_run_job(cfg.as_ptr(), cs("json").as_ptr(), &mut out, &mut exit), HK_OK);
        assert_eq!(exit, 0);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["title"], "residual");
        let bad = cs(r#"{datum:{rank:1, roots:[[2]], coroots:[[2]], simple:[0]}, cmd:"validate"}"#);
        assert_eq!(hk_run_job(bad.as_ptr(), ptr::null(), &mut out, &mut exit), HK_OK);
        assert_eq!(exit, 2);
        hk_string_free(out);
        let none = cs(r#"{preset:"A2", cmd:"plancherel"}"#);
        assert_eq!(hk_run_job(none.as_ptr(), ptr::null(), &mut out, &mut exit), HK_ERR_UNSUPPORTED);
        assert_eq!(exit, 4);
        assert!(out.is_null());
    }
}

#[test]
fn header_declares_the_api() {
    let h = include_str!("../include/heckekernel.h");
    for sym in ["hk_algebra_new_preset", "hk_element_mul", "hk_run_job", "hk_last_error", "HK_ERR_PANIC 6", "typedef struct HkAlgebra HkAlgebra"] {
        assert!(h.contains(sym), "{sym}");
    }
}

/// Compile and run a C program against the static library and header.
#[test]
fn c_program_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let target = exe.parent().unwrap().parent().unwrap();
    let lib = target.join("libheckekernel_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let dir = env!("CARGO_MANIFEST_DIR");
    let bin = std::env::temp_dir().join(format!("hk-smoke-{}", std::process::id()));
    let st = Command::new("cc")
        .args([&format!("{dir}/tests/c/smoke.c"), "-I", &format!("{dir}/include"), "-o"])
        .arg(&bin)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(st.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"e\""));
    assert!(text.contains("error: "));
}
