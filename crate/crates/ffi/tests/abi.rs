//! Exercises the C ABI from the Rust side (ownership, status codes,
//! error paths) and, when a C compiler is available, compiles and runs a
//! real C client against the shared library.

use qtoric_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn last_error() -> String {
    unsafe {
        CStr::from_ptr(qtoric_last_error_message())
            .to_string_lossy()
            .into_owned()
    }
}

fn example_handle(name: &str) -> *mut qtoric_fan {
    let name = CString::new(name).unwrap();
    let mut fan: *mut qtoric_fan = ptr::null_mut();
    let status = unsafe { qtoric_fan_example(name.as_ptr(), 0, 0, &mut fan) };
    assert_eq!(status, qtoric_status::QTORIC_OK, "{}", last_error());
    assert!(!fan.is_null());
    fan
}

#[test]
fn parse_report_and_free() {
    let fan = example_handle("blp-cxp1");
    // Round-trip the document through the handle.
    let mut json: *mut libc::c_char = ptr::null_mut();
    let status = unsafe { qtoric_fan_to_json(fan, &mut json) };
    assert_eq!(status, qtoric_status::QTORIC_OK);
    let text = unsafe { CStr::from_ptr(json).to_str().unwrap().to_owned() };
    unsafe { qtoric_string_free(json) };

    let ctext = CString::new(text).unwrap();
    let mut fan2: *mut qtoric_fan = ptr::null_mut();
    let status = unsafe { qtoric_fan_parse(ctext.as_ptr(), &mut fan2) };
    assert_eq!(status, qtoric_status::QTORIC_OK);

    // Symplectic cohomology through the typed entry point.
    let v = [1i64, 1];
    let mut dim = usize::MAX;
    let status = unsafe { qtoric_symplectic_dim(fan2, v.as_ptr(), v.len(), &mut dim) };
    assert_eq!(status, qtoric_status::QTORIC_OK, "{}", last_error());
    assert_eq!(dim, 0);

    let mut qdim = 0usize;
    let status = unsafe { qtoric_quantum_dim(fan2, &mut qdim) };
    assert_eq!(status, qtoric_status::QTORIC_OK);
    assert_eq!(qdim, 3);

    // Generic report runner.
    let req = CString::new(r#"{"command":"filtration","v":[1,1]}"#).unwrap();
    let mut out: *mut libc::c_char = ptr::null_mut();
    let status = unsafe { qtoric_report(fan2, req.as_ptr(), &mut out) };
    assert_eq!(status, qtoric_status::QTORIC_OK, "{}", last_error());
    let report = unsafe { CStr::from_ptr(out).to_str().unwrap().to_owned() };
    unsafe { qtoric_string_free(out) };
    assert!(report.contains("\"chain_dims\""));
    let parsed: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(parsed["results"]["n_v"], serde_json::json!(2));

    unsafe {
        qtoric_fan_free(fan);
        qtoric_fan_free(fan2);
    }
}

#[test]
fn error_paths() {
    // Null arguments.
    let status = unsafe { qtoric_fan_parse(ptr::null(), ptr::null_mut()) };
    assert_eq!(status, qtoric_status::QTORIC_ERR_NULL_ARGUMENT);

    // Bad JSON is an input error with a message.
    let bad = CString::new("{ nope").unwrap();
    let mut fan: *mut qtoric_fan = ptr::null_mut();
    let status = unsafe { qtoric_fan_parse(bad.as_ptr(), &mut fan) };
    assert_eq!(status, qtoric_status::QTORIC_ERR_INPUT);
    assert!(last_error().contains("SyntaxError"));

    // Domain error: boundary cocharacter.
    let fan = example_handle("blp-cxp1");
    let v = [0i64, 1];
    let mut dim = 0usize;
    let status = unsafe { qtoric_symplectic_dim(fan, v.as_ptr(), v.len(), &mut dim) };
    assert_eq!(status, qtoric_status::QTORIC_ERR_DOMAIN);
    assert!(last_error().contains("NotContracting"));

    // Unknown example name.
    let name = CString::new("not-a-fan").unwrap();
    let mut f2: *mut qtoric_fan = ptr::null_mut();
    let status = unsafe { qtoric_fan_example(name.as_ptr(), 0, 0, &mut f2) };
    assert_eq!(status, qtoric_status::QTORIC_ERR_INPUT);

    // Rescale works without a fan handle.
    let req = CString::new(
        r#"{"command":"rescale","weights":[[1,2],[2,1],[1,1]],"v":[1,1],"vp":[1,0]}"#,
    )
    .unwrap();
    let mut out: *mut libc::c_char = ptr::null_mut();
    let status = unsafe { qtoric_report(ptr::null(), req.as_ptr(), &mut out) };
    assert_eq!(status, qtoric_status::QTORIC_OK, "{}", last_error());
    let text = unsafe { CStr::from_ptr(out).to_str().unwrap().to_owned() };
    unsafe { qtoric_string_free(out) };
    assert!(text.contains("3/2"));

    unsafe { qtoric_fan_free(fan) };
}

#[test]
fn c_client_smoke() {
    // Compile and run a genuine C program against the cdylib.
    if std::process::Command::new("cc").arg("--version").output().is_err() {
        eprintln!("cc not available; skipping C client smoke test");
        return;
    }
    let exe = std::env::current_exe().unwrap();
    let debug_dir = exe
        .parent()
        .unwrap() // deps/
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = debug_dir.join("libqtoric_ffi.so");
    assert!(lib.exists(), "cdylib missing at {}", lib.display());
    let manifest = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    let src = manifest.join("examples/quantum_dim.c");
    let out_dir = std::env::temp_dir().join("qtoric-ffi-smoke");
    std::fs::create_dir_all(&out_dir).unwrap();
    let bin = out_dir.join("quantum_dim");
    let compile = std::process::Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg("-L")
        .arg(&debug_dir)
        .arg("-lqtoric_ffi")
        .arg("-o")
        .arg(&bin)
        .output()
        .expect("cc runs");
    assert!(
        compile.status.success(),
        "compile failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );
    let run = std::process::Command::new(&bin)
        .env("LD_LIBRARY_PATH", &debug_dir)
        .output()
        .expect("client runs");
    assert!(
        run.status.success(),
        "client failed: {}",
        String::from_utf8_lossy(&run.stderr)
    );
    let out = String::from_utf8_lossy(&run.stdout);
    assert!(out.contains("quantum dim = 3"), "output: {out}");
    assert!(out.contains("symplectic dim = 0"), "output: {out}");
}
