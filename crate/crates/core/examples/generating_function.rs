//! The generating function Q(t, γ) and the series it is built from, either
//! symbolically in γ or at a chosen weight.
//!
//!     cargo run --example generating_function -- symbolic 6
//!     cargo run --example generating_function -- 2/5 10
//!     cargo run --example generating_function -- golden-ratio 6

use eo_theta::coeffring::Ring;
use eo_theta::genfun::{AnyBundle, GammaMode, GenFunBundle};

fn show<C: Ring>(b: &GenFunBundle<C>) {
    for name in [
        "t(q)", "R(q)", "q(t)", "R(t)", "q(R)", "t(R)", "Ahat(q)", "S(q)", "Q(t)",
    ] {
        println!("{name:>8} = {}", b.select(name).expect("known selector"));
    }
}

fn main() {
    let mut args = std::env::args().skip(1);
    let mode: GammaMode = args
        .next()
        .unwrap_or_else(|| "symbolic".into())
        .parse()
        .unwrap_or_else(|e| panic!("{e}"));
    let order: i64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(6);
    println!("gamma = {mode}, order {order}\n");
    match AnyBundle::new(&mode, order).expect("valid gamma and order") {
        AnyBundle::Symbolic(b) => show(&b),
        AnyBundle::Rational(b) => show(&b),
        AnyBundle::Golden(b) => show(&b),
    }
}
