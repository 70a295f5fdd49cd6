use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use ffh_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { ffh_string_free(s) };
    out
}

fn last_error() -> String {
    let p = ffh_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn transform_round_trip() {
    let mut t = ptr::null_mut();
    let seed = c("z^4");
    assert_eq!(unsafe { ffh_transform_new(seed.as_ptr(), 3, 3, 0, 0, true, &mut t) }, FfhStatus::Ok);
    assert!(ffh_last_error().is_null());

    let (mut kind, mut degree) = (FfhClassKind::Zero, 0);
    assert_eq!(unsafe { ffh_transform_classification(t, &mut kind, &mut degree) }, FfhStatus::Ok);
    assert_eq!((kind, degree), (FfhClassKind::Homogeneous, 2));

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ffh_transform_to_string(t, &mut s) }, FfhStatus::Ok);
    assert_eq!(take(s), "(rho^2 - r^2) + (2/3*r*rho)*wn");

    let (mut rat, mut pi) = (ptr::null_mut(), 7);
    assert_eq!(unsafe { ffh_transform_normalization(t, &mut rat, &mut pi) }, FfhStatus::Ok);
    assert_eq!((take(rat), pi), ("16".to_string(), 0));

    let (mut m, mut n) = (0.0, 0.0);
    assert_eq!(unsafe { ffh_transform_eval(t, 2.0, 1.0, &mut m, &mut n) }, FfhStatus::Ok);
    assert_eq!((m, n), (-3.0, 4.0 / 3.0));

    let mut passed = false;
    assert_eq!(unsafe { ffh_transform_verify(t, &mut passed) }, FfhStatus::Ok);
    assert!(passed);
    unsafe { ffh_transform_free(t) };
}

#[test]
fn error_codes() {
    let mut t = ptr::null_mut();
    let bad = c("z^-1");
    assert_eq!(unsafe { ffh_transform_new(bad.as_ptr(), 3, 3, 0, 0, true, &mut t) }, FfhStatus::Parse);
    assert!(last_error().contains("negative exponent"));
    assert!(t.is_null());

    let seed = c("z");
    assert_eq!(
        unsafe { ffh_transform_new(seed.as_ptr(), 3, 4, 0, 0, true, &mut t) },
        FfhStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { ffh_transform_new(ptr::null(), 3, 3, 0, 0, true, &mut t) },
        FfhStatus::NullPointer
    );
    assert_eq!(
        unsafe { ffh_transform_new(seed.as_ptr(), 3, 3, 0, 0, true, ptr::null_mut()) },
        FfhStatus::NullPointer
    );
    let (mut kind, mut degree) = (FfhClassKind::Zero, 0);
    assert_eq!(
        unsafe { ffh_transform_classification(ptr::null(), &mut kind, &mut degree) },
        FfhStatus::NullPointer
    );
    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { ffh_transform_new(invalid.as_ptr().cast(), 3, 3, 0, 0, true, &mut t) },
        FfhStatus::InvalidUtf8
    );
    unsafe { ffh_transform_free(ptr::null_mut()) };
    unsafe { ffh_string_free(ptr::null_mut()) };
}

#[test]
fn classify_and_numeric() {
    let (mut kind, mut degree) = (FfhClassKind::Zero, 0);
    assert_eq!(unsafe { ffh_classify_power(7, 1, 0, 3, 3, &mut kind, &mut degree) }, FfhStatus::Ok);
    assert_eq!((kind, degree), (FfhClassKind::Homogeneous, 4));

    let seed = c("1/(1 + z^2)");
    let (mut m, mut n) = (0.0, 0.0);
    assert_eq!(
        unsafe { ffh_transform_numeric(seed.as_ptr(), 3, 3, 0, 0, 0.5, 2.0, 0, &mut m, &mut n) },
        FfhStatus::Ok
    );
    assert!(m.is_finite() && n.is_finite() && m != 0.0);
    assert_eq!(
        unsafe { ffh_transform_numeric(seed.as_ptr(), 3, 3, 0, 0, 0.5, 0.5, 0, &mut m, &mut n) },
        FfhStatus::Numeric
    );
}

fn header_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include")
}

fn cc() -> String {
    std::env::var("CC").unwrap_or_else(|_| "cc".into())
}

#[test]
fn header_compiles() {
    for std in ["-std=c99", "-std=c11"] {
        let status = Command::new(cc())
            .args([std, "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
            .arg(header_dir().join("ffh.h"))
            .status()
            .expect("C compiler available");
        assert!(status.success(), "{std}");
    }
}

#[test]
fn c_program_links_and_runs() {
    // target/<profile>/deps/abi-* -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libffh_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let bin = tmp.join("ffh_smoke");
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/c/smoke.c");
    let status = Command::new(cc())
        .arg("-I")
        .arg(header_dir())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("1 2 (rho^2 - r^2) + (2/3*r*rho)*wn 1"));
    assert!(lines.next().unwrap().contains("negative exponent"));
}
