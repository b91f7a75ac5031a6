//! Size-dependent behavior: the uniform spacing fraction shrinks like
//! `1/√N`, and closed-walk fractions approach the principal component.

use spectramark::corpus::{er_corpus, CorpusSpec};
use spectramark::spectral::adjacency_power;
use spectramark::weights::{spacing_bounds, weight_profile};
use spectramark::{decompose, generate, GraphKind};

const SEEDS: [u64; 3] = [1, 2, 3];

#[test]
fn uniform_spacing_fraction_scales_like_inverse_sqrt_n() {
    for n in [16usize, 64, 256] {
        for seed in SEEDS {
            let g = generate(GraphKind::ErdosRenyi { n, p: 0.3 }, seed).unwrap();
            let dec = decompose(&g).unwrap();
            let p = weight_profile(&g, &dec, 2).unwrap();
            let report = spacing_bounds(&g, &p).unwrap();
            let limit = 4.0 / (n as f64).sqrt();
            assert!(report.f_u <= limit, "N = {n}, seed {seed}: f_u = {} > {limit}", report.f_u);
            assert!(report.checks.all_pass(), "{:?}", report.checks.failures());
        }
    }
}

#[test]
fn long_closed_walks_concentrate_on_the_principal_vector() {
    let graphs = er_corpus(&CorpusSpec::connected_er(60, 31)).unwrap();
    let mut tested = 0;
    for g in &graphs {
        let dec = decompose(g).unwrap();
        let l1 = dec.eigenvalue(1);
        if l1 <= dec.eigenvalue(2).max(dec.eigenvalue(g.n()).abs()) + 1e-9 {
            continue;
        }
        let a16 = adjacency_power(g, 16).unwrap();
        let w16 = a16.trace() as f64;
        for j in 1..=g.n() {
            let ratio = a16.get(j, j) as f64 / w16;
            let principal = dec.component(j, 1).powi(2);
            assert!((ratio - principal).abs() <= 0.05, "N = {}, j = {j}: {ratio} vs {principal}", g.n());
        }
        tested += 1;
    }
    assert!(tested >= 50);
}
