use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use mapgen_ffi::*;

fn graph6(text: &str) -> *mut MapgenGraph {
    let text = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    let status = unsafe { mapgen_graph_from_graph6(text.as_ptr(), &mut g) };
    assert_eq!(status, MapgenStatus::Ok);
    g
}

fn last_error() -> String {
    let p = mapgen_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn k4_genus_one_has_two_maps() {
    let g = graph6("C~");
    unsafe {
        assert_eq!(mapgen_graph_order(g), 4);
        assert_eq!(mapgen_graph_size(g), 6);
        let mut r = ptr::null_mut();
        let status = mapgen_enumerate(
            g,
            MapgenTargetKind::Genus as u32,
            1,
            MapgenMode::Incremental as u32,
            0,
            &mut r,
        );
        assert_eq!(status, MapgenStatus::Ok);
        assert_eq!(mapgen_result_count(r), 2);
        let first = CStr::from_ptr(mapgen_result_record(r, 0)).to_str().unwrap();
        let map = mapgen::Map::from_rotation_code(first).unwrap();
        assert_eq!(map.genus().unwrap(), 1);
        assert!(mapgen_result_record(r, 2).is_null());
        mapgen_result_free(r);
        mapgen_graph_free(g);
    }
}

#[test]
fn limit_and_modes() {
    let g = graph6("C~");
    for mode in [MapgenMode::Final, MapgenMode::List, MapgenMode::Exhaustive] {
        let mut r = ptr::null_mut();
        let status = unsafe { mapgen_enumerate(g, 0, 1, mode as u32, 1, &mut r) };
        assert_eq!(status, MapgenStatus::Ok);
        assert_eq!(unsafe { mapgen_result_count(r) }, 1);
        unsafe { mapgen_result_free(r) };
    }
    unsafe { mapgen_graph_free(g) };
}

#[test]
fn counts() {
    let g = graph6("E~~w"); // K6
    unsafe {
        let mut order = 0;
        assert_eq!(
            mapgen_automorphism_count(g, 1_000_000, &mut order),
            MapgenStatus::Ok
        );
        assert_eq!(order, 720);
        assert_eq!(
            mapgen_automorphism_count(g, 10, &mut order),
            MapgenStatus::Resource
        );
        let mut text = ptr::null_mut();
        assert_eq!(mapgen_total_embedding_count(g, &mut text), MapgenStatus::Ok);
        assert_eq!(CStr::from_ptr(text).to_str().unwrap(), "95551488");
        mapgen_string_free(text);
        mapgen_graph_free(g);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        let bad = CString::new("C!").unwrap();
        assert_eq!(
            mapgen_graph_from_graph6(bad.as_ptr(), &mut g),
            MapgenStatus::Parse
        );
        assert!(g.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(
            mapgen_graph_from_graph6(ptr::null(), &mut g),
            MapgenStatus::NullPointer
        );

        let edges = [0u32, 0];
        assert_eq!(
            mapgen_graph_from_edges(2, edges.as_ptr(), 1, &mut g),
            MapgenStatus::Domain
        );
        assert!(last_error().contains("self-loop"));

        // two disjoint edges: not connected
        let edges = [0u32, 1, 2, 3];
        assert_eq!(
            mapgen_graph_from_edges(4, edges.as_ptr(), 2, &mut g),
            MapgenStatus::Ok
        );
        let mut r = ptr::null_mut();
        assert_eq!(
            mapgen_enumerate(g, 0, 0, 0, 0, &mut r),
            MapgenStatus::Domain
        );
        assert_eq!(
            mapgen_enumerate(g, 0, 0, 9, 0, &mut r),
            MapgenStatus::Domain
        );
        assert_eq!(
            mapgen_enumerate(ptr::null(), 0, 0, 0, 0, &mut r),
            MapgenStatus::NullPointer
        );
        assert!(r.is_null());
        mapgen_graph_free(g);

        // null handles are tolerated by the accessors and destructors
        assert_eq!(mapgen_result_count(ptr::null()), 0);
        mapgen_graph_free(ptr::null_mut());
        mapgen_result_free(ptr::null_mut());
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(mapgen_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// Compiles the C example against the generated header and static library.
#[test]
fn c_example_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap();
    let lib = profile_dir.join("libmapgen_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let out = tempfile::tempdir().unwrap();
    let bin = out.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("examples/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&bin).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.starts_with("2\n4\n1: "));
    assert!(text.contains("total 8\n"));
}
