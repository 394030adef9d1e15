//! Residuals of d²t/dR² = S t, of the Â equation with T = (dS/dR)/S, and of
//! dt/dR = Â, each reported as the first q-exponent where it is nonzero.
//!
//!     cargo run --example ode_check -- 30 symbolic 1 0 -1 2/5 golden-ratio

use eo_theta::coeffring::Ring;
use eo_theta::genfun::{AnyBundle, GammaMode, GenFunBundle};
use eo_theta::powerseries::TruncSeries;

fn first_nonzero<C: Ring>(s: &TruncSeries<C>) -> String {
    s.true_valuation()
        .map_or(format!("O(q^{})", s.order()), |v| format!("q^{v}"))
}

fn report<C: Ring>(b: &GenFunBundle<C>) -> String {
    format!(
        "t-ODE {}, A-ODE {}, dt/dR - A {}",
        first_nonzero(&b.check_ode_t().expect("t-ODE")),
        first_nonzero(&b.check_ode_a().expect("A-ODE")),
        first_nonzero(&b.check_dt_dr().expect("dt/dR")),
    )
}

fn main() {
    let mut args = std::env::args().skip(1);
    let order: i64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);
    let mut gammas: Vec<String> = args.collect();
    if gammas.is_empty() {
        gammas = vec!["symbolic".into(), "1".into(), "2/5".into()];
    }
    for g in gammas {
        let mode: GammaMode = g.parse().unwrap_or_else(|e| panic!("{e}"));
        let line = match AnyBundle::new(&mode, order).expect("valid gamma") {
            AnyBundle::Symbolic(b) => report(&b),
            AnyBundle::Rational(b) => report(&b),
            AnyBundle::Golden(b) => report(&b),
        };
        println!("gamma = {mode:>12}: {line}");
    }
}
