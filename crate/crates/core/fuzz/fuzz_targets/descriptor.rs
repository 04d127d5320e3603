#![no_main]

use hopf_galois::descriptor::AlgebraDescriptor;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(desc) = AlgebraDescriptor::from_json(text) else { return };
    // keep each run fast; validation is cubic in the basis size
    if desc.basis.len() > 16 || desc.group.torsion.iter().any(|&n| n > 64) {
        return;
    }
    if let Ok(loaded) = desc.build() {
        let again = AlgebraDescriptor::from_algebra(&loaded.algebra, loaded.factor.as_ref(), loaded.name.clone());
        let reloaded = AlgebraDescriptor::from_json(&again.to_json()).expect("canonical descriptor parses");
        assert_eq!(reloaded.build().expect("canonical descriptor builds").algebra, loaded.algebra);
    }
});
