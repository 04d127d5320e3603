#![no_main]

use hopf_galois::scalar::parse_scalar;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = parse_scalar(text) {
        // printing is canonical, so it must parse back to the same value
        let again = parse_scalar(&s.to_string()).expect("printed scalar parses");
        assert_eq!(again, s);
    }
});
