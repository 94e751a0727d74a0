#![no_main]

use libfuzzer_sys::fuzz_target;
use pierce_core::io::parse_edge_list;
use pierce_core::{Instance, Point, Tree};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(pairs) = parse_edge_list(text) else { return };
    // Feed small lists through tree validation over a fixed point set.
    let n = 8;
    let inst = Instance::new((0..n).map(|k| Point::new(k as f64, (k * k % 5) as f64)).collect()).unwrap();
    if pairs.iter().all(|&(a, b)| a < n && b < n) {
        let edges = pairs.iter().map(|&(a, b)| inst.edge(a, b)).collect();
        let _ = Tree::from_edges(n, edges);
    }
});
