use std::ffi::{CStr, CString};
use std::ptr;

use resq_ffi::*;

fn generate(family: ResqFamily, a: usize, b: usize) -> *mut ResqGraph {
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { resq_graph_generate(family, a, b, &mut g) },
        ResqStatus::Ok
    );
    g
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(resq_last_error_message()) }
        .to_str()
        .unwrap()
        .to_string()
}

#[test]
fn k2_resistance_laplacian() {
    let g = generate(ResqFamily::Complete, 2, 0);
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(
            resq_matrix_compute(g, ResqMatrixKind::ResistanceLaplacian, &mut m),
            ResqStatus::Ok
        );
        assert_eq!(resq_matrix_order(m), 2);
        let mut buf = [0.0; 4];
        assert_eq!(resq_matrix_copy(m, buf.as_mut_ptr(), 4), ResqStatus::Ok);
        for (a, b) in buf.iter().zip([1.0, -1.0, -1.0, 1.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        let mut x = 0.0;
        assert_eq!(resq_matrix_get(m, 0, 1, &mut x), ResqStatus::Ok);
        assert!((x + 1.0).abs() < 1e-12);
        assert_eq!(resq_matrix_get(m, 2, 0, &mut x), ResqStatus::OutOfRange);
        assert!(last_error().contains("outside"));
        resq_matrix_free(m);
        resq_graph_free(g);
    }
}

#[test]
fn complete_bipartite_spectrum() {
    let g = generate(ResqFamily::CompleteBipartite, 2, 3);
    unsafe {
        assert_eq!(resq_graph_vertex_count(g), 5);
        assert_eq!(resq_graph_edge_count(g), 6);
        let mut s = ptr::null_mut();
        assert_eq!(
            resq_spectrum_compute(g, ResqMatrixKind::ResistanceLaplacian, &mut s),
            ResqStatus::Ok
        );
        let n = resq_spectrum_len(s);
        let mut buf = vec![0.0; n];
        assert_eq!(resq_spectrum_copy(s, buf.as_mut_ptr(), n), ResqStatus::Ok);
        let expected = resq::closed_forms::bipartite_rl_spectrum(2, 3).unwrap();
        assert!(resq::spectral::max_positional_diff(&buf, &expected.values).unwrap() < 1e-9);
        assert_eq!(
            resq_spectrum_copy(s, buf.as_mut_ptr(), n - 1),
            ResqStatus::BufferTooSmall
        );
        resq_spectrum_free(s);
        resq_graph_free(g);
    }
}

#[test]
fn energy_of_complete_graph() {
    for n in 2..=10 {
        let g = generate(ResqFamily::Complete, n, 0);
        let mut e = ResqEnergy::default();
        unsafe {
            assert_eq!(resq_energy(g, &mut e), ResqStatus::Ok);
            resq_graph_free(g);
        }
        assert_eq!(e.n, n);
        assert!((e.le_r - 4.0 * (1.0 - 1.0 / n as f64)).abs() < 1e-9);
        assert!((e.le_r - e.e_r).abs() < 1e-8);
        assert!(e.bounds_satisfied);
    }
}

#[test]
fn parse_and_edges_agree() {
    let text = CString::new("4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let edges: [usize; 8] = [0, 1, 1, 2, 2, 3, 3, 0];
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(resq_graph_parse(text.as_ptr(), &mut a), ResqStatus::Ok);
        assert_eq!(
            resq_graph_from_edges(4, edges.as_ptr(), 4, &mut b),
            ResqStatus::Ok
        );
        let (mut ea, mut eb) = (ResqEnergy::default(), ResqEnergy::default());
        assert_eq!(resq_energy(a, &mut ea), ResqStatus::Ok);
        assert_eq!(resq_energy(b, &mut eb), ResqStatus::Ok);
        assert_eq!(ea, eb);
        resq_graph_free(a);
        resq_graph_free(b);
    }
}

#[test]
fn error_codes() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(
            resq_graph_generate(ResqFamily::Cycle, 2, 0, &mut g),
            ResqStatus::InvalidArgument
        );
        assert!(g.is_null());
        assert!(!last_error().is_empty());

        let bad = CString::new("3\n0 0\n").unwrap();
        assert_eq!(
            resq_graph_parse(bad.as_ptr(), &mut g),
            ResqStatus::ParseError
        );
        assert_eq!(
            resq_graph_parse(ptr::null(), &mut g),
            ResqStatus::NullPointer
        );
        let invalid = [0x33u8, 0x0a, 0xff, 0x00];
        assert_eq!(
            resq_graph_parse(invalid.as_ptr().cast(), &mut g),
            ResqStatus::InvalidUtf8
        );

        let split = CString::new("4\n0 1\n2 3\n").unwrap();
        assert_eq!(resq_graph_parse(split.as_ptr(), &mut g), ResqStatus::Ok);
        let mut m = ptr::null_mut();
        assert_eq!(
            resq_matrix_compute(g, ResqMatrixKind::Resistance, &mut m),
            ResqStatus::Disconnected
        );
        assert!(m.is_null());
        let mut e = ResqEnergy::default();
        assert_eq!(resq_energy(ptr::null(), &mut e), ResqStatus::NullPointer);
        resq_graph_free(g);

        assert_eq!(resq_graph_vertex_count(ptr::null()), 0);
        resq_graph_free(ptr::null_mut());
        resq_matrix_free(ptr::null_mut());
        resq_spectrum_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_api() {
    let header = include_str!("../include/resq.h");
    for name in [
        "typedef struct ResqGraph ResqGraph;",
        "typedef struct ResqMatrix ResqMatrix;",
        "typedef struct ResqSpectrum ResqSpectrum;",
        "RESQ_STATUS_DISCONNECTED = 5",
        "resq_graph_parse(",
        "resq_matrix_copy(",
        "resq_spectrum_compute(",
        "resq_energy(",
        "resq_last_error_message(",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
