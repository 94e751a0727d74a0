#![no_main]

use libfuzzer_sys::fuzz_target;
use pierce_core::fingerhut::center_ratio_check;
use pierce_core::io::parse_instance_bytes;
use pierce_core::{max_spanning_tree, verify_max_tree, verify_piercing, Tolerance};

fuzz_target!(|data: &[u8]| {
    let Ok(inst) = parse_instance_bytes(data) else { return };
    if inst.len() > 512 {
        return;
    }
    let tol = Tolerance::default();
    let report = verify_piercing(&inst, &tol, 0);
    assert_eq!(report.tree.edges.len(), inst.len() - 1);
    let _ = center_ratio_check(&inst, 0);
    let _ = verify_max_tree(&inst, &max_spanning_tree(&inst), &tol);
});
