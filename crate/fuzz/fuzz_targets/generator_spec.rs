#![no_main]

use libfuzzer_sys::fuzz_target;
use relbat::Generator;
use relbat_core::{parse_network, write_network};

/// Keeps generation cheap; the parser itself is exercised on every input.
fn small(g: &Generator) -> bool {
    match *g {
        Generator::Fig1 | Generator::Fig2 | Generator::Bridge4 { .. } => true,
        Generator::Chain { len, .. } => len <= 1000,
        Generator::Grid { rows, cols, .. } => rows * cols <= 400,
        Generator::Complete { n, .. } => n <= 30,
        Generator::Random { n, m, .. } => n <= 64 && m <= 1000,
    }
}

fuzz_target!(|data: &[u8]| {
    let Ok(spec) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(gen) = spec.parse::<Generator>() else {
        return;
    };
    let label = gen.label();
    assert_eq!(label.parse::<Generator>().as_ref(), Ok(&gen));
    if small(&gen) {
        let net = gen.generate();
        assert_eq!(net, gen.generate());
        assert_eq!(parse_network(&write_network(&net)).unwrap(), net);
    }
});
