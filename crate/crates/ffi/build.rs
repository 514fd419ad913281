fn main() {
    #[cfg(feature = "headers")]
    {
        let dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
        let config = cbindgen::Config::from_file(format!("{dir}/cbindgen.toml")).unwrap();
        cbindgen::generate_with_config(&dir, config)
            .expect("cbindgen failed")
            .write_to_file(format!("{dir}/include/momfit.h"));
    }
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}
