#![no_main]

use libfuzzer_sys::fuzz_target;
use relbat_core::{parse_network, write_network, BatOptions, StateVector};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(net) = parse_network(text) else {
        return;
    };
    let written = write_network(&net);
    let again = parse_network(&written).expect("written network must parse");
    assert_eq!(net, again);
    assert_eq!(written, write_network(&again));

    // Small inputs also go through the engine.
    if net.arc_count() <= 12 {
        let r = relbat_core::bat_reliability(&net, &BatOptions::default()).unwrap();
        assert!((0.0..=1.0 + 1e-12).contains(&r.reliability));
        let ones = StateVector::ones(net.arc_count()).unwrap();
        let all_on = relbat_core::is_connected(&net, &ones).unwrap();
        assert_eq!(all_on, r.bounds.is_some());
    }
});
