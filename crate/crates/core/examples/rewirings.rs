//! The three q-increasing moves: edge rotation, Kelmans-type swap and pendant
//! collapse.

use qspex::family::{build_h, build_s};
use qspex::spectral::q_radius;
use qspex::transform::{kelmans_swap, pendant_collapse, rotate};

fn main() {
    // S_{2,1,0}: center 0, leaves 1 and 2, path 0-3-4
    let g = build_s(2, 1, 0).unwrap();
    let x = q_radius(&g).x;
    let r = rotate(&g, &x, (3, 4), (0, 4)).unwrap();
    println!(
        "rotate 34 -> 04: {} -> {}  q {:.6} -> {:.6}",
        g, r.graph, r.q_before, r.q_after
    );

    // S_{1,2,0}: two pendant paths 0-2-3 and 0-4-5
    let g = build_s(1, 2, 0).unwrap();
    let x = q_radius(&g).x;
    let r = kelmans_swap(&g, &x, (3, 2), (5, 4)).unwrap();
    println!(
        "swap (3,2),(5,4): q {:.6} -> {:.6}  {:?}",
        r.q_before, r.q_after, r.certificate
    );

    let h1 = build_h(1).unwrap();
    let r = pendant_collapse(&h1, 1, &[(0, 3)]).unwrap();
    println!(
        "collapse H1 at 1: q {:.6} -> {:.6}  result {}",
        r.q_before, r.q_after, r.graph
    );

    match rotate(&h1, &q_radius(&h1).x, (0, 1), (0, 2)) {
        Ok(r) => println!("rotation accepted, gain {:.3e}", r.delta()),
        Err(e) => println!("rotation rejected: {e}"),
    }
}
