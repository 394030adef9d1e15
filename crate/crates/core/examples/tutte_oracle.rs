//! Solves the Tutte equations for W and H slice by slice in ℚ[ω, ω⁻¹] and
//! compares C(t) = H(0,0) with 1 + Q(t, γ) under γ = ω² + ω⁻².
//!
//!     cargo run --example tutte_oracle -- 12

use eo_theta::coeffring::{omega_to_gamma, GammaPoly};
use eo_theta::genfun::GenFunBundle;
use eo_theta::tutte::{c_of_t, compare_with, iterate_wh};

fn main() {
    let k: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(10);
    let start = std::time::Instant::now();
    let slices = iterate_wh(k).expect("back-substitution holds");
    let c = c_of_t(&slices).expect("both formulas for C agree");
    println!("solved to t^{k} in {:.2?}", start.elapsed());
    for e in 0..=k.min(5) as i64 {
        let coeff = c.coeff(e).expect("below order");
        let in_gamma = omega_to_gamma(&coeff).expect("even in omega");
        println!("  [t^{e}] C = {coeff}  =  {in_gamma}");
    }
    let bundle = GenFunBundle::new(&GammaPoly::gamma(), k as i64 + 1).expect("symbolic bundle");
    let rep = compare_with(&c, &bundle).expect("comparison");
    match rep.first_mismatch {
        None => println!("C(t) = 1 + Q(t) through t^{}", rep.order),
        Some(m) => println!("mismatch at t^{m}"),
    }
}
