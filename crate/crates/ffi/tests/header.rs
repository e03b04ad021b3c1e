use std::path::PathBuf;
use std::process::Command;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(root().join("include/siegel_padic.h")).unwrap();
    for sym in [
        "typedef struct SpPAdic SpPAdic;",
        "SP_STATUS_POLE = 3",
        "sp_last_error",
        "sp_kl_eval",
        "sp_eis_family_coeff",
        "sp_ordinary_projector",
        "sp_model_free",
    ] {
        assert!(h.contains(sym), "missing {sym}");
    }
}

/// Compiles tests/smoke.c against the static library when a C compiler is present.
#[test]
fn c_program_links() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libsiegel_padic_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let out = std::env::temp_dir().join(format!("sp-smoke-{}", std::process::id()));
    let status = Command::new("cc")
        .arg(root().join("tests/smoke.c"))
        .arg("-I")
        .arg(root().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
