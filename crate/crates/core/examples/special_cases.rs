//! Identity suites at γ = 1, 0, −1 and (1+√5)/2 (levels N = 3, 4, 6, 5):
//! eta quotients, Hauptmoduln, ₂F₁ series, lattice sums and ODEs in h.
//!
//!     cargo run --release --example special_cases -- 40 3 4 6 5

use eo_theta::modular::{verify_case, SUPPORTED_CASES};

fn main() {
    let mut args = std::env::args().skip(1);
    let order: i64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(30);
    let mut cases: Vec<u32> = args.filter_map(|s| s.parse().ok()).collect();
    if cases.is_empty() {
        cases = SUPPORTED_CASES.to_vec();
    }
    for n in cases {
        let rep = verify_case(n, order).unwrap_or_else(|e| panic!("case {n}: {e}"));
        println!("N = {n}, gamma = {}", rep.gamma);
        for id in &rep.identities {
            println!(
                "  [{}] {} (zero below q^{})",
                if id.pass { "PASS" } else { "FAIL" },
                id.identity_name,
                id.residual_valuation
            );
        }
    }
}
