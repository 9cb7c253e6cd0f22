//! Large-sample frontier behavior: near zero intra-bath tangle the observed
//! system-bath tangle approaches the trivial bound of 1.

use spinbath_core::sampler::frontier_scan;

#[test]
fn lowest_bin_approaches_maximal_tangle_at_a_million_samples() {
    let bins = frontier_scan(2, 1_000_000, 2024).unwrap();
    let first = bins.first().expect("lowest bin populated");
    assert!(first.center < 4.0 / 100.0);
    assert_eq!(first.bound, 1.0);
    assert!(
        first.max_tau_sb >= 0.9,
        "low-tangle bin only reached {}",
        first.max_tau_sb
    );
    for bin in &bins {
        assert!(bin.max_tau_sb <= bin.bound + 1e-9);
    }
}
