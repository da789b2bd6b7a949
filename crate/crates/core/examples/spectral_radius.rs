//! q(G), the principal eigenvector and the eigen-equation residual for a few
//! small graphs, including a disconnected one.

use qspex::family::build_h;
use qspex::graph::Graph;
use qspex::spectral::{eigen_equation_check, q_radius, rayleigh_sum};

fn main() {
    let graphs = [
        ("K_1,5", Graph::star(5).unwrap()),
        ("K4", Graph::complete(4).unwrap()),
        ("C5", Graph::cycle(5).unwrap()),
        ("H1", build_h(1).unwrap()),
        (
            "K3 + K2",
            Graph::complete(3)
                .unwrap()
                .disjoint_union(&Graph::complete(2).unwrap())
                .unwrap(),
        ),
    ];
    for (name, g) in &graphs {
        let s = q_radius(g);
        let rayleigh = rayleigh_sum(g, &s.x).unwrap();
        println!(
            "{name:<8} q = {:.9}  rayleigh = {:.9}  residual = {:.1e}  max pointwise = {:.1e}",
            s.q,
            rayleigh,
            s.residual,
            eigen_equation_check(g, &s)
        );
        let x: Vec<String> = s.x.iter().map(|v| format!("{v:.4}")).collect();
        println!("         x = [{}]", x.join(", "));
    }
    println!("3 + sqrt(5) = {:.9}", 3.0 + 5f64.sqrt());
}
