//! Compiles and runs the C example against the generated header and the
//! staticlib, proving the ABI is consumable from plain C.

use std::path::PathBuf;
use std::process::Command;

fn target_debug_dir() -> PathBuf {
    // .../target/debug/deps/c_abi-xxxx -> .../target/debug
    let mut dir = std::env::current_exe().expect("test binary path");
    dir.pop();
    if dir.ends_with("deps") {
        dir.pop();
    }
    dir
}

#[test]
fn c_demo_builds_and_runs() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler on PATH");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let staticlib = target_debug_dir().join("libcff_ffi.a");
    if !staticlib.exists() {
        // `cargo test` does not always produce the staticlib artifact.
        let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
        let status = Command::new(cargo)
            .args(["build", "-p", "cff-ffi"])
            .current_dir(&manifest)
            .status()
            .expect("cargo build runs");
        assert!(status.success(), "building the staticlib failed");
    }
    assert!(staticlib.exists(), "missing {staticlib:?}");

    let out_dir = tempfile::tempdir().expect("temp dir");
    let exe = out_dir.path().join("cff_demo");
    let status = Command::new("cc")
        .arg(manifest.join("examples/demo.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&staticlib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("cc runs");
    assert!(status.success(), "compiling demo.c failed");

    let output = Command::new(&exe).output().expect("demo runs");
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(output.status.success(), "demo exited nonzero: {stdout}");
    assert!(stdout.contains("value at n=50: 10"), "{stdout}");
    assert!(stdout.contains("T(50) = 10 * 5"), "{stdout}");
}
