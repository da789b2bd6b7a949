//! Brute-force check of the predicted maximizers for small m, printed as a
//! CSV table. Usage: `cargo run --release --example verify_theorem -- [max_m]`.

use qspex::verify::{emit_csv, Verifier};

fn main() {
    let max_m: usize = std::env::args()
        .nth(1)
        .map_or(8, |a| a.parse().expect("a number"));
    let verifier = Verifier::new(max_m, None).unwrap();
    let mut reports = Vec::new();
    for beta in 1..=4 {
        for m in beta..=max_m {
            reports.push(verifier.verify(m, beta).unwrap());
        }
    }
    print!("{}", emit_csv(&reports));
    let failed = reports.iter().filter(|r| !r.passed()).count();
    eprintln!("{} reports, {failed} failed", reports.len());
}
