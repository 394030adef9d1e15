//! Finds the polynomial P with P(R, S) = 0 at a special weight by an exact
//! kernel computation over ℚ or ℚ(√5), then rechecks it at doubled order.
//!
//!     cargo run --release --example polynomial_relation -- 6
//!     cargo run --release --example polynomial_relation -- 5

use eo_theta::modular::{case_relation, default_relation_box, FIVE_NEWTON_POLYGON};

fn main() {
    let n: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);
    let (max_r, max_s) = default_relation_box(n).unwrap_or_else(|e| panic!("{e}"));
    let rep = case_relation(n, None, max_r, max_s).unwrap_or_else(|e| panic!("{e}"));
    println!("gamma = {}, deg_R <= {max_r}, deg_S <= {max_s}", rep.gamma);
    println!("P(R,S) = {}", rep.display);
    println!("vanishes below q^{}", rep.certified_order);
    println!(
        "doubled-order recheck: zero below q^{} [{}]",
        rep.recheck.residual_valuation,
        if rep.recheck.pass { "PASS" } else { "FAIL" }
    );
    if n == 5 {
        println!("Newton polygon points: {FIVE_NEWTON_POLYGON:?}");
    }
}
