//! Drives the command-line front end in-process and prints each output
//! format; the `eo-theta` binary is a thin wrapper around the same call.
//!
//!     cargo run --example cli_report

use eo_theta::cli::run;

fn main() {
    for args in [
        &[
            "coeffs", "--series", "t(q)", "--gamma", "symbolic", "--order", "3",
        ][..],
        &[
            "coeffs", "--series", "Q", "--gamma", "1", "--order", "5", "--output", "csv",
        ],
        &[
            "verify", "--ode", "--gamma", "2/5", "--order", "30", "--output", "text",
        ],
        &["enumerate", "--vertices", "2"],
        &["verify", "--case", "7"],
    ] {
        let out = run(std::iter::once("eo-theta").chain(args.iter().copied()));
        println!("$ eo-theta {}  (exit {})", args.join(" "), out.code);
        print!("{}{}", out.stdout, out.stderr);
        println!();
    }
}
