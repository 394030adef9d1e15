//! Builds every rooted 4-valent map with n vertices from its rotation
//! system, sorts them by genus and counts Eulerian orientations by the
//! number of alternating vertices.
//!
//!     cargo run --release --example brute_force_maps -- 4
//!     cargo run --release --example brute_force_maps -- 5 --allow-slow

use eo_theta::coeffring::GammaPoly;
use eo_theta::genfun::GenFunBundle;
use eo_theta::maps::{all_quartic_maps, count_eo_gamma, planar_quartic_count, EnumLimits};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(3);
    let limits = if args.iter().any(|a| a == "--allow-slow") {
        EnumLimits::allow_slow()
    } else {
        EnumLimits::default()
    };
    let q = GenFunBundle::new(&GammaPoly::gamma(), n as i64 + 1)
        .expect("symbolic bundle")
        .gf_t;
    for m in 1..=n {
        let maps = all_quartic_maps(m, limits).unwrap_or_else(|e| panic!("{e}"));
        let mut by_genus = std::collections::BTreeMap::new();
        for map in &maps {
            *by_genus.entry(map.genus()).or_insert(0usize) += 1;
        }
        let eo = count_eo_gamma(m, 0, limits).expect("within cap");
        let expected = q.coeff(m as i64).expect("below order");
        println!(
            "n = {m}: {} maps by genus {by_genus:?} (planar formula {}), EO = {eo} [{}]",
            maps.len(),
            planar_quartic_count(m as u32),
            if eo == expected {
                "matches Q"
            } else {
                "MISMATCH"
            }
        );
    }
}
