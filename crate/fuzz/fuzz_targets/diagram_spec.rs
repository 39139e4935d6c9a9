#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(spec) = std::str::from_utf8(data) {
        if spec.len() > 64 {
            return;
        }
        // must reject or build, never panic
        let _ = heapcrys::dynkin::DynkinDiagram::from_spec(spec);
    }
});
