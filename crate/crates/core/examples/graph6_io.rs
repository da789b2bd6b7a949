//! Reading and writing graph6, and canonical forms for isomorphism testing.

use qspex::graph::{canonical_form, from_graph6, is_isomorphic, to_graph6, Graph};

fn main() {
    let petersen = Graph::from_edges(
        10,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (0, 4),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
            (5, 7),
            (7, 9),
            (6, 9),
            (6, 8),
            (5, 8),
        ],
    )
    .unwrap();
    let text = to_graph6(&petersen);
    println!("Petersen graph6: {text}");
    let back = from_graph6(&text).unwrap();
    assert_eq!(back, petersen);

    let shuffled = petersen.permute(&[3, 7, 0, 9, 1, 5, 2, 8, 6, 4]);
    println!("relabeled:       {shuffled}");
    println!("canonical:       {}", canonical_form(&petersen));
    println!("isomorphic:      {}", is_isomorphic(&petersen, &shuffled));

    for bad in ["", "A", "~??", "A`"] {
        println!("{bad:?}: {}", from_graph6(bad).unwrap_err());
    }
}
