use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "gaugesplit.h"

int main(void) {
    GsSpec *spec = NULL;
    if (gs_spec_new("Z*Z/3", 1, true, &spec) != GS_STATUS_OK) return 1;
    char *text = NULL;
    if (gs_decompose(spec, "SU(2)", 2, 1, false, &text) != GS_STATUS_OK) return 2;
    puts(text);
    gs_string_free(text);
    gs_spec_free(spec);
    GsSpec *bad = NULL;
    if (gs_spec_new("Z/2", 1, true, &bad) != GS_STATUS_VALIDATION) return 3;
    puts(gs_last_error());
    return 0;
}
"#;

fn profile_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let mut build = Command::new(cargo);
    build.args(["build", "-p", "gaugesplit-ffi", "--lib"]);
    if profile_dir().ends_with("release") {
        build.arg("--release");
    }
    assert!(build.status().unwrap().success());
    let lib = profile_dir().join("libgaugesplit_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let dir = std::env::temp_dir().join(format!("gaugesplit-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("client.c");
    let exe = dir.join("client");
    std::fs::write(&src, PROGRAM).unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "S(M #_1 S^2xS^2) = S^5 v S^4 v P^4(3) v S^3 v S^3 v S^3 v P^3(3) v S^2; \
         G_2(M) x (O^2G)^{2} = G_2(S^4) x O^3G x O^3G{3} x O^2G x O^2G x O^2G x O^2G{3} x O^1G\n\
         even torsion prime\n"
    );
}
