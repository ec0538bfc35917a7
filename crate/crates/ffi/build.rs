fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    let mut enumeration = cbindgen::EnumConfig::default();
    enumeration.prefix_with_name = true;
    let config = cbindgen::Config {
        enumeration,
        language: cbindgen::Language::C,
        header: Some("/* C interface for the homalg toolkit. */".into()),
        include_guard: Some("HOMALG_H".into()),
        cpp_compat: true,
        documentation: true,
        ..Default::default()
    };
    match cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
    {
        Ok(bindings) => {
            bindings.write_to_file(format!("{crate_dir}/include/homalg.h"));
        }
        Err(e) => println!("cargo:warning=header generation skipped: {e}"),
    }
    println!("cargo:rerun-if-changed=src/lib.rs");
}
