//! Property tests over arbitrary small graphs.

use proptest::prelude::*;
use spectramark::bounds::{bound_suite, si_profile};
use spectramark::centrality::{centrality_report, eigensolver_squares};
use spectramark::report::CheckReport;
use spectramark::verify::{centrality_checks, spectral_checks};
use spectramark::weights::{
    complement_coupling_of, generic_spacing_fraction, identity_suite, spacing_extremes, weight_profile, DEFAULT_M_MAX,
};
use spectramark::{decompose, parse_graph, Graph, GraphFormat};

/// Identities that hold for every orthonormal eigenbasis, whatever the signs.
const FLIP_INVARIANT: [&str; 12] = [
    "norm_w",
    "norm_phi",
    "s_x_sum_w",
    "s_x_sum_phi",
    "s_x2_w_phi",
    "u_expansion",
    "w_dot_rows",
    "phi_dot_vectors",
    "w_lambda_phi_d",
    "phi_am_phi",
    "closed_walks_power_sum",
    "total_walks_weighted",
];

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut idx = 0;
    for i in 1..=n {
        for j in (i + 1)..=n {
            if bits[idx] {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn arb_graph_with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn assert_passes(r: &CheckReport) -> Result<(), TestCaseError> {
    let failures = r.failures();
    prop_assert!(failures.is_empty(), "{:?}", failures);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn deleting_a_node_lowers_neighbor_degrees(g in arb_graph(10), pick in any::<prop::sample::Index>()) {
        prop_assume!(g.n() >= 2);
        let j = pick.index(g.n()) + 1;
        let sub = g.delete_node(j).unwrap();
        let mut idx = 0;
        for i in (1..=g.n()).filter(|&i| i != j) {
            idx += 1;
            let drop = usize::from(g.adjacent(i, j));
            prop_assert_eq!(sub.degree(idx), g.degree(i) - drop);
        }
    }

    #[test]
    fn complement_degrees(g in arb_graph(10)) {
        let c = g.complement();
        for i in 1..=g.n() {
            prop_assert_eq!(c.degree(i), g.n() - 1 - g.degree(i));
        }
    }

    #[test]
    fn text_formats_round_trip(g in arb_graph(10)) {
        let a = parse_graph(&g.to_edge_list(), GraphFormat::EdgeList).unwrap();
        let b = parse_graph(&g.to_adjacency_text(), GraphFormat::AdjacencyMatrix).unwrap();
        prop_assert_eq!(a.adjacency(), g.adjacency());
        prop_assert_eq!(b.adjacency(), g.adjacency());
    }

    #[test]
    fn spectral_and_centrality_identities(g in arb_graph(11)) {
        let dec = decompose(&g).unwrap();
        assert_passes(&spectral_checks(&g, &dec).unwrap())?;
        let report = centrality_report(&g, &dec).unwrap();
        assert_passes(&centrality_checks(&g, &dec, &report, 1e-8).unwrap())?;
    }

    #[test]
    fn centrality_matrix_is_doubly_stochastic_and_annihilates_lambda(g in arb_graph(11)) {
        let dec = decompose(&g).unwrap();
        let y = centrality_report(&g, &dec).unwrap().y().clone();
        for j in 0..g.n() {
            prop_assert!((y.row(j).sum() - 1.0).abs() <= 1e-7);
            prop_assert!((y.column(j).sum() - 1.0).abs() <= 1e-7);
        }
        let annihilated = &y * dec.eigenvalues();
        prop_assert!(annihilated.amax() <= 1e-6 * dec.lambda_max().abs().max(1.0));
    }

    #[test]
    fn centrality_matrix_follows_relabeling((g, perm) in arb_graph_with_perm(10)) {
        let h = g.permuted(&perm).unwrap();
        let y = eigensolver_squares(&decompose(&g).unwrap());
        let yh = eigensolver_squares(&decompose(&h).unwrap());
        for (i, &p) in perm.iter().enumerate() {
            for k in 0..g.n() {
                prop_assert!((yh[(i, k)] - y[(p - 1, k)]).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn weights_follow_relabeling((g, perm) in arb_graph_with_perm(10)) {
        let dec = decompose(&g).unwrap();
        let h = g.permuted(&perm).unwrap();
        let dh = decompose(&h).unwrap();
        prop_assume!(dec.all_simple());
        let p = weight_profile(&g, &dec, DEFAULT_M_MAX).unwrap();
        let ph = weight_profile(&h, &dh, DEFAULT_M_MAX).unwrap();
        for k in 0..g.n() {
            prop_assert!((p.w[k].abs() - ph.w[k].abs()).abs() <= 1e-9);
        }
        // the sign canon pins every vector whose weight is clearly nonzero
        prop_assume!(p.w.iter().all(|w| w.abs() > 1e-6));
        for (i, &q) in perm.iter().enumerate() {
            prop_assert!((ph.phi[i] - p.phi[q - 1]).abs() <= 1e-9);
        }
    }

    #[test]
    fn sign_flips_keep_basis_free_identities(g in arb_graph(10), flips in proptest::collection::vec(any::<bool>(), 10)) {
        let dec = decompose(&g).unwrap();
        let flipped = dec.with_sign_flips(&flips[..g.n()]).unwrap();
        let p = weight_profile(&g, &flipped, DEFAULT_M_MAX).unwrap();
        let suite = identity_suite(&g, &flipped, &p);
        for name in FLIP_INVARIANT {
            for e in suite.named(name) {
                prop_assert!(e.pass || e.skipped.is_some(), "{:?}", e);
            }
        }
        prop_assert_eq!(eigensolver_squares(&flipped), eigensolver_squares(&dec));
    }

    #[test]
    fn weight_identities(g in arb_graph(11)) {
        let dec = decompose(&g).unwrap();
        let p = weight_profile(&g, &dec, DEFAULT_M_MAX).unwrap();
        assert_passes(&identity_suite(&g, &dec, &p))?;
        let n = g.n() as f64;
        let phi_min = p.phi.iter().copied().fold(f64::INFINITY, f64::min);
        prop_assert!(p.s_x / n >= phi_min - 1e-9 && phi_min >= -n.sqrt() - 1e-9);
        if g.num_links() > 0 {
            prop_assert!(p.phi.iter().any(|&v| v >= -1e-9) && p.phi.iter().any(|&v| v <= 1e-9));
        }
    }

    #[test]
    fn bound_suite_holds_without_isolated_nodes(g in arb_graph(11)) {
        prop_assume!(!g.has_isolated_node());
        let dec = decompose(&g).unwrap();
        let p = weight_profile(&g, &dec, DEFAULT_M_MAX).unwrap();
        assert_passes(&bound_suite(&g, &dec, &p).unwrap())?;
        let si = si_profile(&g, &dec).unwrap();
        let d_min = g.degrees().into_iter().min().unwrap() as f64;
        prop_assert!(si.min_lambda_sq <= d_min + 1e-9);
        for s in &si.s {
            prop_assert!(*s >= -1e-9 && *s <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn complement_sum_rules(g in arb_graph(10)) {
        prop_assume!(g.n() >= 2);
        let dec = decompose(&g).unwrap();
        let c = complement_coupling_of(&g, &dec).unwrap();
        assert_passes(&c.checks)?;
    }

    #[test]
    fn spacing_fraction_lies_between_extreme_gaps(
        raw in proptest::collection::vec(-10.0f64..10.0, 2..40),
        weights in proptest::collection::vec(0.0f64..5.0, 40),
    ) {
        let mut b = raw.clone();
        b.sort_by(|x, y| y.total_cmp(x));
        let a = &weights[..b.len()];
        prop_assume!(a[..b.len() - 1].iter().any(|&v| v > 1e-6));
        let f = generic_spacing_fraction(a, &b).unwrap();
        let (lo, hi) = spacing_extremes(&b);
        let tol = 1e-9 * (1.0 + hi.abs());
        prop_assert!(lo - tol <= f && f <= hi + tol, "{} <= {} <= {}", lo, f, hi);
    }
}
