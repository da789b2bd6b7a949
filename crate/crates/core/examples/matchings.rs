//! Matching number, every maximum matching, and the extremal matching with its
//! proper ordering and edge partition.

use qspex::family::{build_h, build_s};
use qspex::matching::{
    all_maximum_matchings, edge_partition, extremal_matching, matching_number, proper_ordering,
};
use qspex::spectral::q_radius;

fn main() {
    for (name, g) in [
        ("S_2,0,1", build_s(2, 0, 1).unwrap()),
        ("H1", build_h(1).unwrap()),
    ] {
        let s = q_radius(&g);
        println!("{name}: beta = {}", matching_number(&g));
        for m in all_maximum_matchings(&g).unwrap() {
            println!(
                "  maximum matching {:?} weight {:.6}",
                m.edges(),
                m.weight(&s.x)
            );
        }
        let best = extremal_matching(&g, &s.x).unwrap();
        let om = proper_ordering(&best, &s.x);
        let parts = edge_partition(&g, &om);
        println!("  extremal {:?}", best.edges());
        println!("  ordered (u_i, v_i) {:?}, v_1 = {:?}", om.pairs(), om.v1());
        println!("  E1 {:?}  E2 {:?}", parts.e1, parts.e2);
    }
}
