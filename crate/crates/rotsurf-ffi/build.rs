use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").expect("cargo sets this"));
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let header = crate_dir.join("include").join("rotsurf.h");
    cbindgen::generate(&crate_dir)
        .expect("C header generation")
        .write_to_file(header);
}
