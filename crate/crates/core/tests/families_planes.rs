use gcg::families::{graph_of, Kind};
use gcg::planes::{
    self, config_from_graph, hilbert_by_monomials, hilbert_function, LineNumbering, Span,
};
use gcg::{
    ab_decomposition, edge_connectivity, prism_graph, standard_graph, tilde_graph, Part,
    PlaneConfig,
};
use proptest::prelude::*;

/// The span table of the first chain in genus 2n+1, typed from the table
/// rather than computed.
fn first_chain_spans_n3() -> Vec<(usize, Span)> {
    vec![
        (1, Span::lines(1, 8)),
        (4, Span::point_line(1, 7)),
        (5, Span::point_line(1, 6)),
        (6, Span::point_line(5, 2)),
        (7, Span::point_line(5, 3)),
        (11, Span::lines(4, 5)),
    ]
}

#[test]
fn families_are_three_edge_connected() {
    for g in 7..=30 {
        let s = standard_graph(g).unwrap();
        assert_eq!(edge_connectivity(&s), 3, "G{g}");
        assert_eq!(s.genus(), g);
    }
    for m in 3..=12 {
        assert_eq!(edge_connectivity(&prism_graph(m).unwrap()), 3);
    }
    for g in [7, 8] {
        let t = tilde_graph(g).unwrap();
        assert_eq!(t.genus(), g);
        assert_eq!(edge_connectivity(&t), 3);
    }
}

#[test]
fn unsupported_requests_are_errors() {
    assert!(standard_graph(6).is_err());
    assert!(tilde_graph(9).is_err());
    assert!(prism_graph(2).is_err());
    assert!(graph_of(Kind::Prism, 6).is_ok());
}

#[test]
fn decompositions_are_two_paths_with_g_plus_one_crossings() {
    for g in 7..=30 {
        let s = standard_graph(g).unwrap();
        let d = ab_decomposition(g).unwrap();
        d.check(&s).unwrap();
        assert_eq!(d.part(Part::A).len(), g - 1);
        assert_eq!(d.part(Part::B).len(), g - 1);
        assert_eq!(d.crossing_edges(&s).len(), g + 1, "G{g}");
    }
}

#[test]
fn g7_parts_and_neighbours() {
    let s = standard_graph(7).unwrap();
    let mut n1: Vec<usize> = s.neighbors(0).iter().map(|v| v + 1).collect();
    n1.sort_unstable();
    assert_eq!(n1, vec![2, 3, 4]);
    let d = ab_decomposition(7).unwrap();
    let a: Vec<usize> = d.part_a.iter().map(|v| v + 1).collect();
    let mut sorted = a.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, vec![1, 4, 5, 6, 7, 11]);
}

#[test]
fn prism_over_pentagon_is_genus_six() {
    let p = prism_graph(5).unwrap();
    assert_eq!(p.genus(), 6);
    assert_eq!(p.vertex_count(), 10);
    let mut sizes: Vec<usize> = (0..p.faces().len())
        .map(|f| p.faces().walk(f).len())
        .collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![4, 4, 4, 4, 4, 5, 5]);
}

#[test]
fn k3_hilbert_polynomial() {
    for g in 7..=20u64 {
        let c = config_from_graph(&standard_graph(g as usize).unwrap()).unwrap();
        assert_eq!(c.f_vector()[0], g + 1);
        for d in 1..=6 {
            assert_eq!(hilbert_function(&c, d), (g - 1) * d * d + 2, "g={g} d={d}");
        }
    }
}

#[test]
fn monomial_oracle_agrees() {
    for g in 7..=9 {
        let c = config_from_graph(&standard_graph(g).unwrap()).unwrap();
        for d in 0..=4 {
            assert_eq!(
                hilbert_by_monomials(&c, d),
                hilbert_function(&c, d as u64),
                "g={g} d={d}"
            );
        }
    }
}

#[test]
fn scrolls_and_double_curve() {
    for g in 7..=20u64 {
        let s = standard_graph(g as usize).unwrap();
        let c = config_from_graph(&s).unwrap();
        let d = ab_decomposition(g as usize).unwrap();
        let a = planes::chain_config(&c, &d, Part::A).unwrap();
        let b = planes::chain_config(&c, &d, Part::B).unwrap();
        let curve = planes::double_curve(&a, &b).unwrap();
        assert_eq!(curve.facets().len() as u64, g + 1);
        for deg in 1..=6 {
            let scroll = ((g - 1) * deg * deg + (g + 1) * deg + 2) / 2;
            assert_eq!(hilbert_function(&a, deg), scroll);
            assert_eq!(hilbert_function(&b, deg), scroll);
            assert_eq!(hilbert_function(&curve, deg), (g + 1) * deg);
        }
    }
}

#[test]
fn g7_span_table_matches_tabulated_spans() {
    let s = standard_graph(7).unwrap();
    let c = config_from_graph(&s).unwrap();
    let d = ab_decomposition(7).unwrap();
    let a = planes::chain_config(&c, &d, Part::A).unwrap();
    let b = planes::chain_config(&c, &d, Part::B).unwrap();
    let curve = planes::double_curve(&a, &b).unwrap();
    let numbering = LineNumbering::for_chain(&curve, &a).unwrap();
    let labels: Vec<usize> = d.part_a.iter().map(|v| v + 1).collect();
    let table = planes::span_table(&a, &labels, &numbering).unwrap();
    let mut got: Vec<(usize, Span)> = table.rows.iter().map(|r| (r.plane, r.span)).collect();
    got.sort();
    assert_eq!(got, first_chain_spans_n3());
    assert_eq!(format!("{}", Span::point_line(1, 7)), "p1, ℓ7");
}

#[test]
fn two_edge_connected_graphs_are_refused() {
    // two diamonds side by side, tips joined across the top and bottom;
    // rotations read off the drawing
    let edges = vec![
        [0, 1],
        [0, 2],
        [1, 2],
        [1, 3],
        [2, 3],
        [0, 4],
        [3, 7],
        [4, 5],
        [4, 6],
        [5, 6],
        [5, 7],
        [6, 7],
    ];
    let rotation = vec![
        vec![5, 0, 1],
        vec![2, 0, 3],
        vec![1, 2, 4],
        vec![6, 4, 3],
        vec![5, 7, 8],
        vec![9, 7, 10],
        vec![8, 9, 11],
        vec![11, 10, 6],
    ];
    let g = gcg::TrivalentPlanarGraph::new(edges, rotation).unwrap();
    assert_eq!(edge_connectivity(&g), 2);
    assert!(config_from_graph(&g).is_err());
}

#[test]
fn dual_graph_inverts_the_configuration() {
    for g in [7, 10, 13] {
        let s = standard_graph(g).unwrap();
        let c = config_from_graph(&s).unwrap();
        let back = planes::dual_graph(&c).unwrap();
        assert_eq!(back.genus(), g);
        assert_eq!(config_from_graph(&back).unwrap().f_vector(), c.f_vector());
    }
}

#[test]
fn config_json_round_trip() {
    let c = config_from_graph(&standard_graph(8).unwrap()).unwrap();
    let text = serde_json::to_string(&c.to_file()).unwrap();
    assert_eq!(PlaneConfig::from_json(&text).unwrap(), c);
}

fn simplex_boundary(n: usize) -> PlaneConfig {
    // boundary of the n-simplex on points 1..=n+1
    let pts: Vec<usize> = (1..=n + 1).collect();
    let facets = (1..=n + 1)
        .map(|skip| pts.iter().copied().filter(|&p| p != skip).collect())
        .collect();
    PlaneConfig::new(n, pts, facets).unwrap()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hilbert_of_simplex_boundary(n in 2usize..=5, d in 0u64..=5) {
        // full polynomial ring minus the single top monomial multiples
        let c = simplex_boundary(n);
        let ambient = binomial(d + n as u64, n as u64);
        let top = if d > n as u64 { binomial(d - 1, n as u64) } else { 0 };
        prop_assert_eq!(hilbert_function(&c, d), ambient - top);
        prop_assert_eq!(hilbert_by_monomials(&c, d as usize), ambient - top);
    }

    #[test]
    fn subchains_of_a_chain_are_chains(g in 7usize..=16, start in 0usize..4, len in 2usize..5) {
        let s = standard_graph(g).unwrap();
        let c = config_from_graph(&s).unwrap();
        let d = ab_decomposition(g).unwrap();
        let a = planes::chain_config(&c, &d, Part::A).unwrap();
        let end = (start + len).min(a.facets().len());
        let idx: Vec<usize> = (start..end).collect();
        prop_assert!(planes::check_chain(&a.sub_config(&idx)).is_ok());
    }
}
