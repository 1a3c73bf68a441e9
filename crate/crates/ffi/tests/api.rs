use std::ffi::{CStr, CString};
use std::ptr;

use bmrel_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(bm_last_error()) }.to_string_lossy().into_owned()
}

fn read_string(f: impl Fn(*mut std::ffi::c_char, usize, *mut usize) -> BmStatus) -> String {
    let mut needed = 0usize;
    assert_eq!(f(ptr::null_mut(), 0, &mut needed), BmStatus::BmBufferTooSmall);
    let mut buf = vec![0 as std::ffi::c_char; needed];
    assert_eq!(f(buf.as_mut_ptr(), buf.len(), &mut needed), BmStatus::BmOk, "{}", last_error());
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap().to_owned()
}

#[test]
fn counts() {
    let mut n = 0u64;
    unsafe {
        assert_eq!(bm_count_relations(2, 2, 1, &mut n), BmStatus::BmOk);
        assert_eq!(n, 541);
        assert_eq!(bm_count_relations(1, 3, 3, &mut n), BmStatus::BmOk);
        assert_eq!(n, 105);
        assert_eq!(bm_count_relations(0, 2, 1, &mut n), BmStatus::BmInvalidArgument);
        assert!(!last_error().is_empty());
        assert_eq!(bm_count_relations(1, 1, 1, ptr::null_mut()), BmStatus::BmInvalidArgument);
        assert_eq!(bm_kimberley_count(9, &mut n), BmStatus::BmOk);
        assert_eq!(n, 654729075);
        assert_eq!(bm_kimberley_count(17, &mut n), BmStatus::BmOverflow);
    }
}

#[test]
fn relation_sets() {
    unsafe {
        let mut base = ptr::null_mut();
        assert_eq!(bm_relations_enumerate(1, 1, 1, &mut base), BmStatus::BmOk);
        assert_eq!(bm_relations_len(base), 3);
        let mut next = ptr::null_mut();
        assert_eq!(bm_relations_build_level(base, 2, &mut next), BmStatus::BmOk);
        assert_eq!(bm_relations_len(next), 15);
        let (mut a, mut b) = (0, 0);
        assert_eq!(bm_relations_ambient(next, &mut a, &mut b), BmStatus::BmOk);
        assert_eq!((a, b), (1, 2));
        let first = read_string(|buf, cap, needed| bm_relations_line(next, 0, buf, cap, needed));
        assert_eq!(first.split("; ").count(), 2);
        assert_eq!(bm_relations_line(next, 15, ptr::null_mut(), 0, ptr::null_mut()), BmStatus::BmInvalidArgument);

        let text = read_string(|buf, cap, needed| bm_relations_serialize(next, buf, cap, needed));
        assert!(text.starts_with("#bm α=1 β=2 count=15\n"));
        let c = CString::new(text.clone()).unwrap();
        assert_eq!(bm_verify_level(c.as_ptr()), BmStatus::BmOk);
        let mut parsed = ptr::null_mut();
        assert_eq!(bm_relations_parse(c.as_ptr(), &mut parsed), BmStatus::BmOk);
        assert_eq!(read_string(|buf, cap, needed| bm_relations_serialize(parsed, buf, cap, needed)), text);

        let tampered = CString::new(text.replace("count=15", "count=16")).unwrap();
        assert_eq!(bm_verify_level(tampered.as_ptr()), BmStatus::BmCorrupt);
        assert!(last_error().contains("15"));

        let mut two = ptr::null_mut();
        assert_eq!(bm_relations_enumerate(2, 2, 1, &mut two), BmStatus::BmOk);
        assert_eq!(bm_relations_build_level(two, 1, &mut next), BmStatus::BmUnsupported);

        bm_relations_free(base);
        bm_relations_free(parsed);
        bm_relations_free(two);
        bm_relations_free(ptr::null_mut());
    }
}

#[test]
fn presentations() {
    unsafe {
        let name = CString::new("gamma30").unwrap();
        let mut p = ptr::null_mut();
        assert_eq!(bm_presentation_preset(name.as_ptr(), &mut p), BmStatus::BmOk);
        let word = CString::new("a1 a1 b1 a1 b2 A1").unwrap();
        assert_eq!(read_string(|buf, cap, needed| bm_normal_form(p, word.as_ptr(), buf, cap, needed)), "");
        let bad = CString::new("a1 x7").unwrap();
        let mut buf = [0 as std::ffi::c_char; 8];
        assert_eq!(bm_normal_form(p, bad.as_ptr(), buf.as_mut_ptr(), 8, ptr::null_mut()), BmStatus::BmParseError);
        assert_eq!(read_string(|buf, cap, needed| bm_abelianization(p, buf, cap, needed)), "Z^1 ⊕ Z/2 ⊕ Z/4");
        let (mut rank, mut len) = (0, 0);
        let mut torsion = [0u64; 4];
        assert_eq!(bm_abelian_invariants(p, &mut rank, torsion.as_mut_ptr(), 4, &mut len), BmStatus::BmOk);
        assert_eq!((rank, &torsion[..len]), (1, &[2u64, 4][..]));
        assert_eq!(bm_abelian_invariants(p, &mut rank, torsion.as_mut_ptr(), 1, &mut len), BmStatus::BmBufferTooSmall);
        bm_presentation_free(p);

        let relators = CString::new("acac^{-1}, adad^{-1}, bcb^{-1}c, bdb^{-1}d").unwrap();
        assert_eq!(bm_presentation_parse(relators.as_ptr(), &mut p), BmStatus::BmOk);
        assert_eq!(read_string(|buf, cap, needed| bm_abelianization(p, buf, cap, needed)), "Z^1 ⊕ Z/2 ⊕ Z/2 ⊕ Z/2");
        bm_presentation_free(p);

        let mut set = ptr::null_mut();
        assert_eq!(bm_relations_enumerate(1, 1, 1, &mut set), BmStatus::BmOk);
        assert_eq!(bm_presentation_from_set(set, 2, &mut p), BmStatus::BmOk);
        bm_presentation_free(p);
        assert_eq!(bm_presentation_from_set(set, 3, &mut p), BmStatus::BmInvalidArgument);
        bm_relations_free(set);

        let unknown = CString::new("gamma99").unwrap();
        assert_eq!(bm_presentation_preset(unknown.as_ptr(), &mut p), BmStatus::BmParseError);
        assert_eq!(bm_presentation_preset(ptr::null(), &mut p), BmStatus::BmInvalidArgument);
    }
}

#[test]
fn certificates() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/");
    for file in ["gamma4_gamma30.cert", "gamma5_gamma10.cert"] {
        let text = std::fs::read_to_string(format!("{dir}{file}")).unwrap();
        let c = CString::new(text.clone()).unwrap();
        assert_eq!(unsafe { bm_check_isomorphism(c.as_ptr()) }, BmStatus::BmOk, "{}", last_error());
        let broken = CString::new(text.replacen("bwd a = ", "bwd a = a1 ", 1)).unwrap();
        assert_eq!(unsafe { bm_check_isomorphism(broken.as_ptr()) }, BmStatus::BmNotVerified);
        assert!(!last_error().is_empty());
    }
}
