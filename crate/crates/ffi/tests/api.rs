use std::ffi::{c_char, CStr, CString};
use std::ptr;

use heyde_ffi::*;
use serde_json::Value;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> Value {
    let v = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
    heyde_string_free(s);
    v
}

unsafe fn last_error() -> String {
    let p = heyde_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn profile_handle() {
    unsafe {
        let mut p = ptr::null_mut();
        let json = c(r#"{"primes":{"2":"inf"}}"#);
        assert_eq!(heyde_profile_from_json(json.as_ptr(), &mut p), HeydeStatus::Ok);
        let mut aut = true;
        assert_eq!(heyde_profile_is_automorphism(p, 3, &mut aut), HeydeStatus::Ok);
        assert!(!aut);
        assert_eq!(heyde_profile_is_automorphism(p, -1, &mut aut), HeydeStatus::Ok);
        assert!(aut);
        assert_eq!(heyde_profile_is_automorphism(p, 0, &mut aut), HeydeStatus::ZeroMultiplier);
        assert!(last_error().contains("multiplication by 0"));
        let mut adm = true;
        assert_eq!(heyde_profile_admissible(p, &mut adm), HeydeStatus::Ok);
        assert!(!adm);
        heyde_profile_free(p);
    }
}

#[test]
fn charfn_handle() {
    unsafe {
        let mut f = ptr::null_mut();
        let json = c(r#"{"host":{"kind":"prufer","p":2},"kind":"torsionExtension","order":2,"table":["1","1/3"]}"#);
        assert_eq!(heyde_charfn_from_json(json.as_ptr(), &mut f), HeydeStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(heyde_charfn_classify(f, &mut out), HeydeStatus::Ok);
        assert_eq!(take(out)["tag"], "OUTSIDE");
        let y = c("1/2");
        assert_eq!(heyde_charfn_eval(f, y.as_ptr(), &mut out), HeydeStatus::Ok);
        assert_eq!(take(out)["text"], "1/3");
        let y = c("1/4");
        assert_eq!(heyde_charfn_eval(f, y.as_ptr(), &mut out), HeydeStatus::Ok);
        assert_eq!(take(out)["text"], "0");
        let bad = c("1/3");
        assert_eq!(heyde_charfn_eval(f, bad.as_ptr(), &mut out), HeydeStatus::NotInHost);
        heyde_charfn_free(f);
    }
}

#[test]
fn run_json_commands() {
    unsafe {
        let mut out = ptr::null_mut();
        let (cmd, cfg) = (c("construct"), c(r#"{"name":"two-torsion","q":3}"#));
        assert_eq!(heyde_run_json(cmd.as_ptr(), cfg.as_ptr(), &mut out), HeydeStatus::Ok);
        let construction = take(out);
        assert_eq!(construction["expectedClass1"], "OUTSIDE");

        let cfg = c(&serde_json::json!({"construction": construction.to_string()}).to_string());
        let cmd = c("verify");
        assert_eq!(heyde_run_json(cmd.as_ptr(), cfg.as_ptr(), &mut out), HeydeStatus::Ok);
        assert_eq!(take(out)["status"], "VERIFIED");

        let cfg = c(r#"{"name":"two-torsion-unchecked","q":5}"#);
        let cmd = c("construct");
        assert_eq!(heyde_run_json(cmd.as_ptr(), cfg.as_ptr(), &mut out), HeydeStatus::Ok);
        let control = take(out);
        let cfg = c(&serde_json::json!({"construction": control.to_string()}).to_string());
        let cmd = c("verify");
        assert_eq!(heyde_run_json(cmd.as_ptr(), cfg.as_ptr(), &mut out), HeydeStatus::Unexpected);
        assert_eq!(take(out)["status"], "VIOLATED");
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut out = ptr::null_mut();
        let cmd = c("nope");
        let cfg = c("{}");
        assert_eq!(heyde_run_json(cmd.as_ptr(), cfg.as_ptr(), &mut out), HeydeStatus::InvalidArgument);
        assert!(last_error().contains("nope"));
        let bad = c("{not json");
        let cmd = c("aut");
        assert_eq!(heyde_run_json(cmd.as_ptr(), bad.as_ptr(), &mut out), HeydeStatus::Parse);
        assert_eq!(heyde_run_json(ptr::null(), bad.as_ptr(), &mut out), HeydeStatus::NullPointer);
        let cfg = c(r#"{"name":"two-torsion","q":5}"#);
        let cmd = c("construct");
        assert_eq!(heyde_run_json(cmd.as_ptr(), cfg.as_ptr(), &mut out), HeydeStatus::Hypothesis);

        let ok = c(r#"{"profile":"{\"primes\":{\"2\":\"inf\"}}","n":-1}"#);
        assert_eq!(heyde_run_json(cmd.as_ptr(), c("{}").as_ptr(), &mut out), HeydeStatus::InvalidArgument);
        let cmd = c("aut");
        assert_eq!(heyde_run_json(cmd.as_ptr(), ok.as_ptr(), &mut out), HeydeStatus::Ok);
        assert!(heyde_last_error_message().is_null());
        assert_eq!(take(out)["isAut"], true);

        heyde_string_free(ptr::null_mut());
        heyde_profile_free(ptr::null_mut());
        heyde_charfn_free(ptr::null_mut());
    }
}
