use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use scoregame_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn parse(text: &str) -> *mut SgGame {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sg_game_parse(cstr(text).as_ptr(), &mut out) }, SgStatus::Ok);
    assert!(!out.is_null());
    out
}

fn take(s: *mut c_char) -> String {
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { sg_string_free(s) };
    owned
}

fn printed(g: *const SgGame) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sg_game_print(g, SgStyle::Compact, &mut s) }, SgStatus::Ok);
    take(s)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sg_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn parse_print_free() {
    let g = parse("{0|1|2}");
    assert_eq!(printed(g), "{0|1|2}");
    let mut full = ptr::null_mut();
    assert_eq!(unsafe { sg_game_print(g, SgStyle::Full, &mut full) }, SgStatus::Ok);
    assert_eq!(take(full), "{{.|0|.}|1|{.|2|.}}");
    unsafe { sg_game_free(g) };
    unsafe { sg_game_free(ptr::null_mut()) };
    unsafe { sg_string_free(ptr::null_mut()) };
}

#[test]
fn errors_set_status_and_message() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sg_game_parse(cstr("{.|.}").as_ptr(), &mut out) }, SgStatus::ParseError);
    assert!(out.is_null());
    assert!(last_error().contains("3..4"), "{}", last_error());
    assert_eq!(unsafe { sg_game_parse(ptr::null(), &mut out) }, SgStatus::NullPointer);
    let bytes = [0xffu8, 0];
    assert_eq!(unsafe { sg_game_parse(bytes.as_ptr().cast(), &mut out) }, SgStatus::InvalidUtf8);
    assert_eq!(unsafe { sg_game_parse(cstr("0").as_ptr(), ptr::null_mut()) }, SgStatus::NullPointer);
    assert_eq!(unsafe { sg_tf_to_game(cstr("TXF").as_ptr(), &mut out) }, SgStatus::ParseError);
    let mut u = ptr::null_mut();
    assert_eq!(unsafe { sg_universe_new(2, 2, cstr("").as_ptr(), 3, &mut u) }, SgStatus::InvalidArgument);
    assert_eq!(unsafe { sg_universe_new(6, 3, cstr("0,1").as_ptr(), 0, &mut u) }, SgStatus::UniverseError);
    assert!(u.is_null());
}

#[test]
fn evaluation() {
    let g = parse("{1|0|0}");
    let (mut l, mut r) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { sg_game_final_scores(g, &mut l, &mut r) }, SgStatus::Ok);
    assert_eq!((take(l), take(r)), ("1".to_string(), "0".to_string()));
    let mut o = SgOutcome::Tie;
    assert_eq!(unsafe { sg_game_outcome(g, &mut o) }, SgStatus::Ok);
    assert_eq!(o, SgOutcome::Left);
    unsafe { sg_game_free(g) };

    let mut half = ptr::null_mut();
    assert_eq!(unsafe { sg_game_leaf(cstr("-3/2").as_ptr(), &mut half) }, SgStatus::Ok);
    assert_eq!(printed(half), "-3/2");
    unsafe { sg_game_free(half) };
}

#[test]
fn algebra() {
    let (a, b) = (parse("{1|0|.}"), parse("{.|0|-1}"));
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sg_game_sum(a, b, &mut s) }, SgStatus::Ok);
    assert_eq!(printed(s), "{{.|1|0}|0|{0|-1|.}}");
    let mut n = ptr::null_mut();
    assert_eq!(unsafe { sg_game_negate(a, &mut n) }, SgStatus::Ok);
    let mut same = false;
    assert_eq!(unsafe { sg_game_identical(n, b, &mut same) }, SgStatus::Ok);
    assert!(same);
    assert_eq!(printed(n), "{.|0|-1}");
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { sg_game_clone(a, &mut c) }, SgStatus::Ok);
    assert_eq!(unsafe { sg_game_identical(a, c, &mut same) }, SgStatus::Ok);
    assert!(same);
    for g in [a, b, s, n, c] {
        unsafe { sg_game_free(g) };
    }
}

#[test]
fn comparison_and_canonical_form() {
    let mut u = ptr::null_mut();
    assert_eq!(unsafe { sg_universe_default(&mut u) }, SgStatus::Ok);
    let mut size = 0;
    assert_eq!(unsafe { sg_universe_size(u, &mut size) }, SgStatus::Ok);
    assert_eq!(size, 780);

    let (g, h) = (parse("{1|1|1}"), parse("{1|0|1}"));
    let mut verdict = SgVerdict::Unrefuted;
    let mut text = ptr::null_mut();
    let mut witness = ptr::null_mut();
    let status = unsafe { sg_compare(u, SgRelation::Equal, g, h, &mut verdict, &mut text, &mut witness) };
    assert_eq!(status, SgStatus::Ok);
    assert_eq!(verdict, SgVerdict::Proved);
    assert_eq!(take(text), "Proved(Equivalent)");
    assert!(witness.is_null());
    let mut equiv = false;
    assert_eq!(unsafe { sg_game_equivalent(g, h, &mut equiv) }, SgStatus::Ok);
    assert!(equiv);

    let (zero, one) = (parse("0"), parse("1"));
    let status = unsafe { sg_compare(u, SgRelation::GreaterEqual, zero, one, &mut verdict, &mut text, &mut witness) };
    assert_eq!(status, SgStatus::Ok);
    assert_eq!(verdict, SgVerdict::Refuted);
    assert_eq!(take(text), "Refuted(X=0, O=L_>)");
    assert_eq!(printed(witness), "0");
    unsafe { sg_game_free(witness) };

    let two = parse("{{3|0|4},{3|1|4}|0|.}");
    let mut canon = ptr::null_mut();
    let mut steps = 0;
    assert_eq!(unsafe { sg_canonicalize(u, two, SgMode::Sound, 0, &mut canon, &mut steps) }, SgStatus::Ok);
    assert_eq!(printed(canon), "{{3|0|4}|0|.}");
    assert_eq!(steps, 1);

    let mut small = ptr::null_mut();
    assert_eq!(unsafe { sg_universe_new(1, 1, cstr("-1, 0, 1").as_ptr(), 0, &mut small) }, SgStatus::Ok);
    assert_eq!(unsafe { sg_universe_size(small, &mut size) }, SgStatus::Ok);
    assert_eq!(size, 48);

    for x in [g, h, zero, one, two, canon] {
        unsafe { sg_game_free(x) };
    }
    unsafe { sg_universe_free(u) };
    unsafe { sg_universe_free(small) };
}

#[test]
fn figure_game_from_strip() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { sg_tf_to_game(cstr("TBF").as_ptr(), &mut g) }, SgStatus::Ok);
    assert_eq!(printed(g), "{{.|0|{-1|-1|.}}|0|{{.|1|1}|0|.}}");
    unsafe { sg_game_free(g) };
}

#[test]
fn header_is_current_and_c_links() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(crate_dir.join("include/scoregame.h")).unwrap();
    for name in ["sg_game_parse", "sg_compare", "sg_canonicalize", "sg_last_error", "SG_STATUS_PARSE_ERROR"] {
        assert!(header.contains(name), "{name} missing from header");
    }
    // target/<profile>/deps/api-* -> target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libscoregame_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let exe = profile_dir.join("scoregame_smoke");
    let status = Command::new("cc")
        .arg(crate_dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success(), "C smoke test failed to compile");
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
