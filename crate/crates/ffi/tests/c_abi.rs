use std::ffi::{CStr, CString};
use std::ptr;

use solweights_ffi::*;

fn last_error() -> String {
    let p = sw_last_error_message();
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { sw_string_free(p) };
    s
}

#[test]
fn group_round_trip() {
    let spec = CString::new("A7").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { sw_group_from_spec(spec.as_ptr(), &mut g) }, SwStatus::Ok);
    let mut n = 0u64;
    assert_eq!(unsafe { sw_group_order(g, &mut n) }, SwStatus::Ok);
    assert_eq!(n, 2520);
    assert_eq!(unsafe { sw_defect_zero_count(g, &mut n) }, SwStatus::Ok);
    assert_eq!(n, 0);
    unsafe { sw_group_free(g) };
}

#[test]
fn dihedral_has_four_blocks() {
    let spec = CString::new("dih(C3xC3)").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { sw_group_from_spec(spec.as_ptr(), &mut g) }, SwStatus::Ok);
    let mut n = 0u64;
    assert_eq!(unsafe { sw_defect_zero_count(g, &mut n) }, SwStatus::Ok);
    assert_eq!(n, 4);
    unsafe { sw_group_free(g) };
}

#[test]
fn weights() {
    let mut n = 0u64;
    for sys in ["F", "H"] {
        let s = CString::new(sys).unwrap();
        for l in [0, 1] {
            assert_eq!(unsafe { sw_weight_count(s.as_ptr(), l, &mut n) }, SwStatus::Ok);
            assert_eq!(n, 12);
        }
    }
    let k = CString::new("K").unwrap();
    assert_eq!(unsafe { sw_weight_count(k.as_ptr(), 0, &mut n) }, SwStatus::InvalidArgument);
}

#[test]
fn errors() {
    let bad = CString::new("Q7").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { sw_group_from_spec(bad.as_ptr(), &mut g) }, SwStatus::UnknownSpec);
    assert!(g.is_null());
    assert!(last_error().contains("Q7"));
    assert_eq!(unsafe { sw_group_from_spec(ptr::null(), &mut g) }, SwStatus::NullPointer);
    let mut n = 0u64;
    assert_eq!(unsafe { sw_group_order(ptr::null(), &mut n) }, SwStatus::NullPointer);
    unsafe { sw_group_free(ptr::null_mut()) };
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/solweights.h")).unwrap();
    for f in ["sw_group_from_spec", "sw_group_order", "sw_defect_zero_count", "sw_weight_count", "sw_group_free", "sw_last_error_message", "sw_string_free", "SwStatus_Ok"] {
        assert!(h.contains(f), "{f} missing from header");
    }
}
