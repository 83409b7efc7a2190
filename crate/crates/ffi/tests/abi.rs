use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use mdcckit_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(mdcc_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn named(name: &str) -> *mut MdccState {
    let name = CString::new(name).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { mdcc_state_named(name.as_ptr(), &mut s) },
        MdccStatus::Ok
    );
    assert!(!s.is_null());
    s
}

fn measures(s: *const MdccState, sender: u32, discord: bool) -> MdccMeasures {
    let mut m = MdccMeasures::default();
    assert_eq!(
        unsafe { mdcc_state_measures(s, sender, discord, false, &mut m) },
        MdccStatus::Ok
    );
    m
}

#[test]
fn named_ghz_measures() {
    let s = named("ghz");
    let m = measures(s, 0, true);
    assert!((m.ggm - 0.5).abs() < 1e-12);
    assert!((m.tangle - 1.0).abs() < 1e-10);
    assert!((m.discord_score - 1.0).abs() < 1e-6);
    assert!(m.c_adv.abs() < 1e-12);
    assert_eq!(m.best_receiver, -1);
    unsafe { mdcc_state_free(s) };
}

#[test]
fn mdcc_family_saturates() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { mdcc_state_mdcc(0.5, &mut s) }, MdccStatus::Ok);
    let m = measures(s, 0, false);
    assert!(m.discord_score.is_nan());
    assert!((m.ggm - 0.1).abs() < 1e-12);
    assert!(m.ggm_slack.abs() < 1e-10);
    assert!(m.tangle_slack.abs() < 1e-9);
    assert_eq!(m.best_receiver, 2);
    let mut margin = f64::NAN;
    assert_eq!(
        unsafe { mdcc_state_theorem_margin(s, &mut margin) },
        MdccStatus::Ok
    );
    assert!(margin.abs() < 1e-9);
    unsafe { mdcc_state_free(s) };
}

#[test]
fn amplitudes_round_trip_and_normalize() {
    let re = [2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    let im = [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2.0];
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { mdcc_state_from_amplitudes(re.as_ptr(), im.as_ptr(), &mut s) },
        MdccStatus::Ok
    );
    let (mut r, mut i) = ([0.0; 8], [0.0; 8]);
    assert_eq!(
        unsafe { mdcc_state_amplitudes(s, r.as_mut_ptr(), i.as_mut_ptr()) },
        MdccStatus::Ok
    );
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((r[0] - h).abs() < 1e-15 && (i[7] - h).abs() < 1e-15);
    assert!((measures(s, 1, false).tangle - 1.0).abs() < 1e-10);
    unsafe { mdcc_state_free(s) };

    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { mdcc_state_from_amplitudes(re.as_ptr(), ptr::null(), &mut s) },
        MdccStatus::Ok
    );
    assert!(measures(s, 0, true).ggm.abs() < 1e-12);
    unsafe { mdcc_state_free(s) };
}

#[test]
fn errors_are_reported() {
    let mut s = ptr::null_mut();
    let zeros = [0.0; 8];
    assert_eq!(
        unsafe { mdcc_state_from_amplitudes(zeros.as_ptr(), ptr::null(), &mut s) },
        MdccStatus::InvalidArgument
    );
    assert!(s.is_null());
    assert!(!last_error().is_empty());

    let bad = CString::new("cluster").unwrap();
    assert_eq!(
        unsafe { mdcc_state_named(bad.as_ptr(), &mut s) },
        MdccStatus::InvalidArgument
    );
    assert!(last_error().contains("cluster"));

    assert_eq!(
        unsafe { mdcc_state_mdcc(f64::NAN, &mut s) },
        MdccStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { mdcc_state_named(ptr::null(), &mut s) },
        MdccStatus::NullPointer
    );
    assert_eq!(
        unsafe { mdcc_state_mdcc(0.5, ptr::null_mut()) },
        MdccStatus::NullPointer
    );

    let ghz = named("ghz");
    assert!(last_error().is_empty());
    let mut m = MdccMeasures::default();
    assert_eq!(
        unsafe { mdcc_state_measures(ghz, 3, false, false, &mut m) },
        MdccStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { mdcc_state_measures(ptr::null(), 0, false, false, &mut m) },
        MdccStatus::NullPointer
    );
    unsafe {
        mdcc_state_free(ghz);
        mdcc_state_free(ptr::null_mut());
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(mdcc_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/mdcckit.h");
    let text = std::fs::read_to_string(header).unwrap();
    for sym in [
        "mdcc_last_error",
        "mdcc_version",
        "mdcc_state_from_amplitudes",
        "mdcc_state_mdcc",
        "mdcc_state_named",
        "mdcc_state_free",
        "mdcc_state_amplitudes",
        "mdcc_state_measures",
        "mdcc_state_theorem_margin",
        "typedef struct MdccState MdccState",
        "MDCC_STATUS_INVALID_ARGUMENT = 2",
    ] {
        assert!(text.contains(sym), "header lacks {sym}");
    }
}

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.parent()?.join("libmdcckit_ffi.a");
    lib.exists().then_some(lib)
}

const C_PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "mdcckit.h"

int main(void) {
    MdccState *s = NULL;
    if (mdcc_state_named("w", &s) != MDCC_STATUS_OK) return 10;
    MdccMeasures m;
    if (mdcc_state_measures(s, 0, true, false, &m) != MDCC_STATUS_OK) return 11;
    mdcc_state_free(s);
    if (fabs(m.ggm - 1.0 / 3.0) > 1e-12) return 12;
    if (fabs(m.tangle) > 1e-8) return 13;
    if (!(m.discord_score < 0.0)) return 14;
    if (mdcc_state_named("nope", &s) != MDCC_STATUS_INVALID_ARGUMENT) return 15;
    printf("%.12f\n", m.ggm);
    return 0;
}
"#;

#[test]
fn c_program_links_against_static_library() {
    let Some(lib) = static_lib() else {
        eprintln!("static library not built alongside tests; skipping C link check");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping C link check");
        return;
    }
    let dir = tempfile_dir();
    let src = dir.join("main.c");
    let bin = dir.join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "0.333333333333"
    );
    let _ = std::fs::remove_dir_all(dir);
}

fn tempfile_dir() -> PathBuf {
    let dir =
        PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("c-link-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
