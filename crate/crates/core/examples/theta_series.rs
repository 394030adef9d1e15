//! Stripped theta series and their derivatives in α, over ℚ[γ].
//!
//!     cargo run --example theta_series -- 8

use eo_theta::coeffring::{GammaPoly, Rational};
use eo_theta::theta::{cheb_p, cheb_q, reduced_theta, ThetaKind, ThetaSet};

fn main() {
    let order: i64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(8);

    println!("sine multipliers P_n and cosine multipliers Q_n:");
    for n in 0..4 {
        println!(
            "  P_{n} = {:<24} Q_{n} = {}",
            cheb_p(n).to_string(),
            cheb_q(n)
        );
    }

    let th = ThetaSet::new(&GammaPoly::gamma(), order);
    println!("\nseries in q (the common factor 2 q^(1/8) trig(alpha) removed):");
    for (name, s) in [
        ("S0", &th.s0),
        ("S2", &th.s2),
        ("C1", &th.c1),
        ("C3", &th.c3),
        ("Z1", &th.z1),
        ("Z3", &th.z3),
    ] {
        println!("  {name} = {s}");
    }

    // at gamma = 1 the sine series collapses to prod(1 - q^(3n))
    let s0 = reduced_theta(ThetaKind::Sine, 0, &Rational::from(1), order).expect("even k");
    println!("\nS0 at gamma = 1: {s0}");
}
