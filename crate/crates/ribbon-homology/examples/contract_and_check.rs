//! Contract edges of stable ribbon graphs and watch the boundary square
//! to zero.
//!
//! Contracting a non-loop edge merges two vertices (splicing their
//! cycles); contracting a loop inside one cycle splits the cycle in two;
//! contracting a loop joining two cycles of the same vertex merges them
//! and raises the genus defect. Empty arcs turn into boundary defects.
//! The boundary operator is the signed sum of all edge contractions, and
//! it squares to zero.

use ribbon_homology::contraction::{boundary, boundary_of_graph, contract_edge, ContractionOutcome};
use ribbon_homology::graph::{theta_graph, twisted_theta_graph};

fn main() {
    let theta = theta_graph();
    println!("theta graph: {}", theta.to_record());
    println!("surface type: {:?}", theta.recover_g_n().unwrap());

    // Contract each edge by its representative half-edge and describe
    // the outcome.
    for &e in &theta.orientation {
        match contract_edge(&theta, e) {
            ContractionOutcome::Contracted(h, sign) => {
                println!(
                    "  contract edge {e}: sign {sign:+}, vertices {} -> {}, record {}",
                    theta.vertices.len(),
                    h.vertices.len(),
                    h.to_record()
                );
            }
            ContractionOutcome::NonContractible => {
                println!("  contract edge {e}: not contractible");
            }
        }
    }

    // The full boundary chain of the twisted variant, and its square.
    let twisted = twisted_theta_graph();
    let d1 = boundary_of_graph(&twisted);
    println!("\ntwisted theta boundary has {} canonical terms:", d1.terms.len());
    for (class, coeff) in &d1.terms {
        println!("  {coeff} * {}", class.encoding);
    }
    let d2 = boundary(&d1);
    println!("boundary of the boundary: {d2}");
    assert!(d2.is_zero());

    // Surface invariance: every contraction preserves (g, n).
    let gn = twisted.recover_g_n().unwrap();
    for &e in &twisted.orientation {
        if let ContractionOutcome::Contracted(h, _) = contract_edge(&twisted, e) {
            assert_eq!(h.recover_g_n().unwrap(), gn);
        }
    }
    println!("every contraction preserves (g,n) = {gn:?}");
}
