//! Isomorph-free enumeration of graphs with m edges and a given matching
//! number. Usage: `cargo run --example enumerate -- [m] [beta]`.

use qspex::matching::matching_number;
use qspex::search::{enumerate_graphs, EnumerationQuery, SearchConfig};
use qspex::spectral::q_radius;

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("a number"));
    let m = args.next().unwrap_or(4);
    let beta = args.next().unwrap_or(2);
    let cfg = SearchConfig::default();
    let exact = enumerate_graphs(&EnumerationQuery::exact(m, beta), &cfg).unwrap();
    println!(
        "{} classes with {m} edges and matching number {beta}",
        exact.len()
    );
    for g in &exact {
        println!("  {g:<12} n = {:>2}  q = {:.6}", g.n(), q_radius(g).q);
    }
    let wider = enumerate_graphs(&EnumerationQuery::at_least(m, beta), &cfg).unwrap();
    let larger = wider.iter().filter(|g| matching_number(g) > beta).count();
    println!(
        "{} classes with matching number at least {beta} ({larger} strictly larger)",
        wider.len()
    );
}
