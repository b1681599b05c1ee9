use std::ffi::CStr;
use std::ptr;

use tpnil_ffi::*;

#[test]
fn homology_handle() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(tpnil_homology_new(2, 2, &mut h), TpnilStatus::Ok);
        assert_eq!(tpnil_homology_num_degrees(h), 3);
        let (mut rank, mut len, mut d, mut cells) = (9usize, 0usize, 0u64, 0usize);
        assert_eq!(tpnil_homology_rank(h, 1, &mut rank), TpnilStatus::Ok);
        assert_eq!(tpnil_homology_torsion_len(h, 1, &mut len), TpnilStatus::Ok);
        assert_eq!(tpnil_homology_torsion(h, 1, 0, &mut d), TpnilStatus::Ok);
        assert_eq!(tpnil_homology_basis_size(h, 2, &mut cells), TpnilStatus::Ok);
        assert_eq!((rank, len, d, cells), (0, 1, 2, 1));
        assert_eq!(tpnil_homology_torsion(h, 1, 1, &mut d), TpnilStatus::OutOfRange);
        assert_eq!(tpnil_homology_rank(h, 3, &mut rank), TpnilStatus::OutOfRange);
        assert_eq!(tpnil_homology_rank(h, 0, ptr::null_mut()), TpnilStatus::NullPointer);

        let json = tpnil_homology_to_json(h);
        assert!(!json.is_null());
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["basis_sizes"], serde_json::json!([0, 1, 1]));
        tpnil_string_free(json);
        tpnil_homology_free(h);
    }
}

#[test]
fn invalid_arguments_set_last_error() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(tpnil_homology_new(1, 2, &mut h), TpnilStatus::InvalidArgument);
        assert!(h.is_null());
        let msg = CStr::from_ptr(tpnil_last_error()).to_str().unwrap();
        assert!(msg.contains("at least 2"), "{msg}");
        assert_eq!(tpnil_homology_new(2, 2, ptr::null_mut()), TpnilStatus::NullPointer);

        let mut r = ptr::null_mut();
        assert_eq!(tpnil_tp_new(9, 3, 1, 10, &mut r), TpnilStatus::InvalidArgument);
        assert!(CStr::from_ptr(tpnil_last_error())
            .to_str()
            .unwrap()
            .contains("not a prime"));
        let mut m = false;
        assert_eq!(tpnil_verify_weight_piece(3, 6, &mut m), TpnilStatus::InvalidArgument);
        tpnil_homology_free(ptr::null_mut());
        tpnil_tp_free(ptr::null_mut());
        tpnil_string_free(ptr::null_mut());
    }
}

#[test]
fn tp_handle() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(tpnil_tp_new(2, 3, 1, 10, &mut r), TpnilStatus::Ok);
        assert_eq!(tpnil_tp_num_factors(r), 10);
        let mut exps = Vec::new();
        for idx in 0..10 {
            let (mut w, mut e, mut mult) = (0u64, 0u32, false);
            assert_eq!(tpnil_tp_factor(r, idx, &mut w, &mut e, &mut mult), TpnilStatus::Ok);
            assert_eq!(w, idx as u64 + 1);
            assert_eq!(mult, w % 3 == 0);
            exps.push(e);
        }
        assert_eq!(exps, vec![0, 1, 0, 2, 0, 0, 0, 3, 0, 1]);
        let (mut integral, mut inverted) = (true, true);
        assert_eq!(tpnil_tp_verdicts(r, &mut integral, &mut inverted), TpnilStatus::Ok);
        assert!(!integral && !inverted);
        let json = tpnil_tp_to_json(r);
        let report: tpnil::TpReport = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(report.exponents(), exps);
        tpnil_string_free(json);
        tpnil_tp_free(r);

        let mut r = ptr::null_mut();
        assert_eq!(tpnil_tp_new(2, 3, 2, 10, &mut r), TpnilStatus::Ok);
        assert_eq!(tpnil_tp_num_factors(r), 0);
        tpnil_tp_free(r);
    }
}

#[test]
fn verdicts_and_valuations() {
    unsafe {
        let (mut integral, mut inverted, mut sup) = (true, false, 0i64);
        assert_eq!(
            tpnil_verdict(2, 8, &mut integral, &mut inverted, &mut sup),
            TpnilStatus::Ok
        );
        assert_eq!((integral, inverted, sup), (false, true, 3));
        assert_eq!(
            tpnil_verdict(3, 6, &mut integral, &mut inverted, &mut sup),
            TpnilStatus::Ok
        );
        assert_eq!((integral, inverted, sup), (false, false, -1));
        let mut v = 0u32;
        assert_eq!(tpnil_p_adic_valuation(5, 50, &mut v), TpnilStatus::Ok);
        assert_eq!(v, 2);
        assert_eq!(tpnil_p_adic_valuation(5, 0, &mut v), TpnilStatus::InvalidArgument);
        assert_eq!(
            CStr::from_ptr(tpnil_version()).to_str().unwrap(),
            env!("CARGO_PKG_VERSION")
        );
    }
}
