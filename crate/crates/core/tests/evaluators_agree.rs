//! The three independent evaluators (modular data, plat recoupling and the
//! braid trace) against the Kauffman state sum, through the public API.

use levelrank::hecke::closed_braid_invariant;
use levelrank::hyperbolic::{borromean_invariant, link_value, whitehead_invariant};
use levelrank::oracle::{braid_closure, builtin_braids, builtin_diagram, fundamental_invariant};
use levelrank::torus::{unknot_normalized_value, LinkInstance, Topology};
use levelrank::{Complex64, SpinLabel, TheoryParams, YoungDiagram};

fn p(n: u32, k: u32) -> TheoryParams {
    TheoryParams::new(n, k).unwrap()
}

#[test]
fn braid_trace_matches_state_sum_at_rank_two() {
    for k in 2..=7 {
        for (name, word, strands) in builtin_braids() {
            let from_braid = closed_braid_invariant(&word, strands, p(2, k)).unwrap();
            let from_pd = fundamental_invariant(&braid_closure(&word, strands).unwrap(), p(2, k)).unwrap();
            assert!((from_braid - from_pd).norm() < 1e-9, "{name} k={k}: {from_braid} vs {from_pd}");
        }
    }
}

#[test]
fn builtin_codes_match_their_braids_up_to_mirror() {
    for k in 3..=6 {
        for (name, word, strands) in builtin_braids() {
            let code = fundamental_invariant(&builtin_diagram(name).unwrap(), p(2, k)).unwrap();
            let braid = closed_braid_invariant(&word, strands, p(2, k)).unwrap();
            let same = (code - braid).norm() < 1e-9 || (code - braid.conj()).norm() < 1e-9;
            assert!(same, "{name} k={k}: {code} vs {braid}");
        }
    }
}

#[test]
fn plat_values_match_state_sum_modulus() {
    let half = SpinLabel::HALF;
    for k in 3..=8 {
        let params = p(2, k);
        let w = whitehead_invariant(half, half, params).unwrap().value;
        let b = borromean_invariant(half, half, half, params).unwrap().value;
        let ow = fundamental_invariant(&builtin_diagram("whitehead").unwrap(), params).unwrap();
        let ob = fundamental_invariant(&builtin_diagram("borromean").unwrap(), params).unwrap();
        assert!((w.norm() - ow.norm()).abs() < 1e-9, "k={k}");
        assert!((b.norm() - ob.norm()).abs() < 1e-9, "k={k}");
    }
}

#[test]
fn torus_family_matches_state_sum() {
    for k in 2..=6 {
        let params = p(2, k);
        for (topology, diagram) in [(Topology::Hopf, "hopf"), (Topology::SixThreeThree, "633")] {
            let colors = vec![YoungDiagram::row(1); topology.components()];
            let link = LinkInstance::new(topology, colors).unwrap();
            let modular = unknot_normalized_value(&link, params).unwrap();
            let oracle = fundamental_invariant(&builtin_diagram(diagram).unwrap(), params).unwrap();
            assert!((modular.norm() - oracle.norm()).abs() < 1e-9, "{diagram} k={k}: {modular} vs {oracle}");
        }
    }
}

#[test]
fn frozen_hyperbolic_values() {
    let fundamental = |t: Topology| {
        let c = t.components();
        LinkInstance::new(t, vec![YoungDiagram::row(1); c]).unwrap()
    };
    let cases = [
        (Topology::Whitehead, 3, Complex64::new(-1.427051, -1.314328)),
        (Topology::Whitehead, 4, Complex64::new(0.0, -1.732051)),
        (Topology::Whitehead, 6, Complex64::new(2.0, -std::f64::consts::SQRT_2)),
        (Topology::Borromean, 2, Complex64::new(-2.0 * 2f64.sqrt(), 0.0)),
        (Topology::Borromean, 3, Complex64::new(-0.763932, 0.0)),
    ];
    for (topology, k, expected) in cases {
        let link = fundamental(topology.clone());
        let su2 = link_value(&link, p(2, k)).unwrap().value;
        assert!((su2 - expected).norm() < 1e-6, "{topology} k={k}: {su2}");
        // Rank two at level K against rank K at level two with the same colors.
        let dual = link_value(&link, p(k, 2)).unwrap().value;
        assert!((su2 - dual.conj()).norm() < 1e-9, "{topology} k={k}: {dual}");
    }
}
