fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_language(cbindgen::Language::C)
        .with_include_guard("HOPFCYC_H")
        .with_cpp_compat(true)
        .generate()
        .expect("unable to generate C header")
        .write_to_file(std::path::Path::new(&crate_dir).join("include/hopfcyc.h"));
    println!("cargo:rerun-if-changed=src/lib.rs");
}
