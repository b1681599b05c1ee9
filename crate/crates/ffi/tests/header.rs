use std::path::{Path, PathBuf};
use std::process::Command;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(crate_dir().join("include/tpnil.h")).unwrap();
    for item in [
        "typedef struct TpnilHomology TpnilHomology;",
        "typedef struct TpnilTpReport TpnilTpReport;",
        "TPNIL_STATUS_OK = 0",
        "TPNIL_STATUS_INVALID_ARGUMENT = 1",
        "tpnil_homology_new(uint32_t k, uint64_t i, struct TpnilHomology **out)",
        "tpnil_tp_new(",
        "tpnil_verdict(",
        "void tpnil_string_free(char *s);",
        "const char *tpnil_last_error(void);",
    ] {
        assert!(header.contains(item), "header lacks {item}");
    }
}

fn static_lib() -> Option<PathBuf> {
    // target/<profile>/deps/<test binary> -> target/<profile>/libtpnil_ffi.a
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.parent()?.join("libtpnil_ffi.a");
    lib.exists().then_some(lib)
}

fn compile_and_run(cc: &Path, lib: &Path, dir: &Path) -> std::process::Output {
    let src = dir.join("smoke.c");
    std::fs::write(&src, include_str!("smoke.c")).unwrap();
    let exe = dir.join("smoke");
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("compiler runs");
    assert!(status.success(), "C smoke test failed to compile");
    Command::new(&exe).output().unwrap()
}

#[test]
fn c_program_links_against_static_library() {
    let Some(lib) = static_lib() else {
        eprintln!("skipping: static library not built alongside the test binary");
        return;
    };
    let cc = PathBuf::from(std::env::var("CC").unwrap_or_else(|_| "cc".into()));
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let out = compile_and_run(&cc, &lib, dir.path());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "smoke test failed: {stdout}");
    assert_eq!(
        stdout,
        "H1 torsion 2\nexponents 0 1 0 2 0 0 0 3 0 1\nverdict 0 1 3\nerror ok\n"
    );
}
