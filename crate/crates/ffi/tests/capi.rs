use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use lambda_skeletons_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { ls_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ls_last_error()) }.to_str().unwrap().to_owned()
}

fn parse(family: LsFamily, repr: LsRepr, text: &str) -> Result<*mut LsTerm, LsStatus> {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    match unsafe { ls_term_parse(family, repr, c.as_ptr(), &mut out) } {
        LsStatus::Ok => Ok(out),
        s => Err(s),
    }
}

#[test]
fn parse_convert_print() {
    let t = parse(LsFamily::Closable, LsRepr::Base, "l(a(v,l(v)))").unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { ls_term_convert(t, -1, &mut c) }, LsStatus::Ok);
    assert_eq!(take_string(unsafe { ls_term_to_string(c) }), "cl(a(v,l(v)))");
    let (mut s111, mut s012) = (0usize, 0usize);
    assert_eq!(unsafe { ls_term_sizes(c, &mut s111, &mut s012) }, LsStatus::Ok);
    assert_eq!((s111, s012), (5, 4));
    unsafe {
        ls_term_free(c);
        ls_term_free(t);
    }
}

#[test]
fn errors_carry_status_and_message() {
    assert_eq!(parse(LsFamily::Motzkin, LsRepr::Base, "l(x)"), Err(LsStatus::ParseError));
    assert!(last_error().contains("byte 2"));

    let t = parse(LsFamily::Ucs, LsRepr::Base, "l(a(l(v),v))").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ls_term_convert(t, -1, &mut out) }, LsStatus::NotInFamily);
    assert!(last_error().starts_with("NotUcs"));
    assert!(out.is_null());
    unsafe { ls_term_free(t) };

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ls_count(LsFamily::Closable, 1, -1, &mut s) }, LsStatus::InvalidSize);
    assert_eq!(unsafe { ls_count(LsFamily::Open, 3, -1, &mut s) }, LsStatus::InvalidArgument);
    assert_eq!(
        unsafe { ls_term_parse(LsFamily::Lmt, LsRepr::Base, ptr::null(), &mut ptr::null_mut()) },
        LsStatus::NullPointer
    );
}

#[test]
fn lambda_term_queries() {
    let t = parse(LsFamily::Lmt, LsRepr::Base, "lam(app(var(1),lam(var(1))))").unwrap();
    let mut m = 0u64;
    assert_eq!(unsafe { ls_minimal_openness(t, &mut m) }, LsStatus::Ok);
    assert_eq!(m, 1);
    let mut count = ptr::null_mut();
    assert_eq!(unsafe { ls_count_labelings(t, 0, &mut count) }, LsStatus::Ok);
    assert_eq!(take_string(count), "2");
    let mut open = ptr::null_mut();
    assert_eq!(unsafe { ls_term_convert(t, -1, &mut open) }, LsStatus::Ok);
    assert_eq!(take_string(unsafe { ls_term_to_string(open) }), "open(1,lam(app(var(1),lam(var(1)))))");
    unsafe {
        ls_term_free(open);
        ls_term_free(t);
    }
}

#[test]
fn count_and_enumerate() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ls_count(LsFamily::Motzkin, 8, -1, &mut s) }, LsStatus::Ok);
    assert_eq!(take_string(s), "127");
    assert_eq!(unsafe { ls_count(LsFamily::Open, 4, 0, &mut s) }, LsStatus::Ok);
    assert_eq!(take_string(s), "4");
    assert_eq!(
        unsafe { ls_enumerate(LsFamily::Closable, LsRepr::Structured, 4, -1, &mut s) },
        LsStatus::Ok
    );
    assert_eq!(take_string(s), "cl(l(l(v)))\ncl(a(v,v))\n");
}

#[test]
fn sampling_is_seeded() {
    let draw = |seed| {
        let rng = ls_rng_new(seed);
        let mut out = Vec::new();
        for _ in 0..20 {
            let mut t = ptr::null_mut();
            let status = unsafe {
                ls_sample(rng, LsFamily::Open, LsRepr::Base, LsStrategy::Default, 6, 100, 1, &mut t)
            };
            assert_eq!(status, LsStatus::Ok);
            out.push(take_string(unsafe { ls_term_to_string(t) }));
            unsafe { ls_term_free(t) };
        }
        unsafe { ls_rng_free(rng) };
        out
    };
    assert_eq!(draw(42), draw(42));
    assert_ne!(draw(42), draw(43));
}

#[test]
fn check_reports_json() {
    let name = CString::new("prop2").unwrap();
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { ls_check(name.as_ptr(), 7, 5, 1, 42, &mut json) }, LsStatus::Ok);
    let report = take_string(json);
    assert!(report.contains(r#""suite":"prop2""#));
    assert!(report.contains(r#""pass":true"#));
    let bogus = CString::new("bogus").unwrap();
    assert_eq!(
        unsafe { ls_check(bogus.as_ptr(), 7, 5, 1, 42, &mut json) },
        LsStatus::InvalidArgument
    );
}

#[test]
fn header_declares_every_export() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/lambda_skeletons.h");
    let text = std::fs::read_to_string(header).unwrap();
    for f in [
        "ls_last_error",
        "ls_string_free",
        "ls_term_parse",
        "ls_term_free",
        "ls_term_to_string",
        "ls_term_sizes",
        "ls_term_convert",
        "ls_minimal_openness",
        "ls_count_labelings",
        "ls_count",
        "ls_enumerate",
        "ls_rng_new",
        "ls_rng_free",
        "ls_sample",
        "ls_check",
    ] {
        assert!(text.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(text.contains("typedef struct LsTerm LsTerm;"));
}

/// Compiles `examples/smoke.c` against the header and static library when a
/// C compiler is available.
#[test]
fn c_program_links_and_runs() {
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("liblambda_skeletons_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library at {} or no C compiler", lib.display());
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ls_smoke");
    let status = Command::new("cc")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("examples/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        stdout,
        "cl(a(v,l(v)))\nNotClosable: binder-free path from the root to the leaf at /right\n127\n"
    );
}
