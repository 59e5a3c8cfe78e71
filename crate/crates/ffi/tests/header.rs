//! The generated header must compile as C.

use std::path::Path;
use std::process::Command;

fn compiles(compiler: &str, lang: &str) -> Option<bool> {
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    std::fs::write(
        &src,
        "#include \"ssing.h\"\n\
         int probe(void) {\n\
           SsingMatrix m;\n\
           SsingStatus s = ssing_transfer_matrix((SsingComplex){0.0, 0.0}, 1.0, 1.0, &m);\n\
           return s == SSING_STATUS_OK;\n\
         }\n",
    )
    .unwrap();
    let status = Command::new(compiler)
        .args(["-x", lang, "-std=c11", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status()
        .ok()?;
    Some(status.success())
}

#[test]
fn header_is_valid_c() {
    match compiles("cc", "c") {
        Some(ok) => assert!(ok),
        None => eprintln!("no C compiler; skipped"),
    }
}
