//! Steepest ascent from a few starting graphs. Each step is the best rotation
//! or swap that keeps the matching number in range.
//!
//! The path on eight vertices stops at H4 (q = 5.9452), a local maximum of the
//! move pool that lies below the predicted maximizer for (7, 3).

use qspex::graph::Graph;
use qspex::search::{hill_climb, EnumerationQuery};

fn main() {
    let starts = [
        (Graph::cycle(5).unwrap(), EnumerationQuery::at_least(5, 2)),
        (Graph::path(8).unwrap(), EnumerationQuery::at_least(7, 3)),
        (Graph::cycle(8).unwrap(), EnumerationQuery::at_least(8, 3)),
    ];
    let h4 = qspex::family::build_h(4).unwrap();
    for (start, query) in starts {
        let trace = hill_climb(&start, &query, 50).unwrap();
        println!(
            "start {} (m = {}, beta >= {}), q = {:.6}",
            start, query.m, query.beta, trace.q_start
        );
        for step in &trace.steps {
            println!(
                "  {:?}: {} q = {:.6}",
                step.kind, step.result.graph, step.result.q_after
            );
        }
        println!(
            "  end {} q = {:.6}, predicted maximizer: {}",
            trace.end, trace.q_end, trace.converged_to_prediction
        );
        if qspex::graph::is_isomorphic(&trace.end.normalize(), &h4) {
            println!("  (stuck at H4)");
        }
    }
}
