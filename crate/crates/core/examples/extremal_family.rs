//! Predicted maximizers S_{a,b,c} + d K2 for a range of (m, beta), with their
//! spectral radii.

use qspex::family::{extremal_beta1, extremal_params, predicted_extremal};
use qspex::spectral::q_radius;

fn main() {
    let (q, graphs) = extremal_beta1(3).unwrap();
    let names: Vec<String> = graphs.iter().map(|g| g.to_string()).collect();
    println!("m = 3, beta = 1: q = {q}, maximizers {names:?}");
    for beta in 2..=4 {
        for m in beta..=3 * beta + 1 {
            let p = extremal_params(m, beta).unwrap();
            let g = predicted_extremal(m, beta).unwrap();
            println!(
                "m = {m:>2}, beta = {beta}: (a,b,c,d) = ({},{},{},{})  q = {:.6}  {g}",
                p.a,
                p.b,
                p.c,
                p.d,
                q_radius(&g).q
            );
        }
    }
}
