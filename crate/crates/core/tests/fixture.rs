//! The published ten-node Erdős–Rényi sample: exact characteristic
//! polynomials of the graph and of all its node-deleted subgraphs.

use num_bigint::BigInt;
use spectramark::centrality::centrality_report;
use spectramark::spectral::{char_poly_exact, node_deleted_dets, IntPolynomial};
use spectramark::{decompose, parse_graph, Graph, GraphFormat};

mod common;

use common::{C_A, C_DELETED, FIXTURE_EDGES};

fn fixture() -> Graph {
    parse_graph(FIXTURE_EDGES, GraphFormat::EdgeList).unwrap()
}

#[test]
fn degree_vector() {
    assert_eq!(fixture().degrees(), vec![3, 3, 1, 4, 2, 2, 1, 2, 2, 2]);
}

#[test]
fn characteristic_polynomial_is_exact() {
    assert_eq!(char_poly_exact(&fixture()).unwrap(), IntPolynomial::from_i64(&C_A));
}

#[test]
fn every_node_deleted_polynomial_is_exact() {
    let g = fixture();
    for (j, expected) in C_DELETED.iter().enumerate() {
        let sub = g.delete_node(j + 1).unwrap();
        assert_eq!(char_poly_exact(&sub).unwrap(), IntPolynomial::from_i64(expected), "node {}", j + 1);
    }
}

#[test]
fn deleted_polynomials_sum_to_minus_derivative() {
    let g = fixture();
    let sum: IntPolynomial = (1..=10).map(|j| char_poly_exact(&g.delete_node(j).unwrap()).unwrap()).sum();
    let derivative = char_poly_exact(&g).unwrap().derivative();
    assert_eq!(sum, -&derivative);
    assert_eq!(sum.coeff(0), BigInt::from(-4));
    assert_eq!(sum.coeff(1), BigInt::from(-54));
}

#[test]
fn deleted_polynomials_share_a_sign_at_each_eigenvalue() {
    let g = fixture();
    let dec = decompose(&g).unwrap();
    assert!(dec.all_simple());
    for k in 1..=10 {
        let dets = node_deleted_dets(&g, dec.eigenvalue(k));
        let cp = dec.char_poly_derivative_at(k).unwrap();
        let scale = dets.iter().fold(0.0f64, |a, d| a.max(d.abs()));
        for d in dets {
            // a vanishing determinant is a zero component, not a sign change
            assert!(d * cp <= 1e-9 * scale * cp.abs(), "k = {k}: {d} vs c' = {cp}");
        }
    }
}

#[test]
fn minimum_degree_nodes_are_least_important_at_the_principal_frequency() {
    let g = fixture();
    let dec = decompose(&g).unwrap();
    let report = centrality_report(&g, &dec).unwrap();
    for j in [3, 7] {
        let principal = report.value(j, 1);
        let smallest = (1..=10).map(|k| report.value(j, k)).fold(f64::INFINITY, f64::min);
        assert_eq!(principal, smallest, "node {j}");
    }
}
