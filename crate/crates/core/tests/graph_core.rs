use gcg::connectivity::{edge_connectivity_of, max_flow};
use gcg::cycles::{check_cycle, cycle_basis_with_outer, divergence};
use gcg::graph::{CheckKind, GraphData};
use gcg::{cycle_basis, edge_connectivity, standard_graph, validate, TrivalentPlanarGraph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn k4() -> TrivalentPlanarGraph {
    let edges = vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
    // planar rotation: outer triangle 1,2,3 around centre 0
    let rotation = vec![vec![0, 1, 2], vec![0, 4, 3], vec![1, 3, 5], vec![2, 5, 4]];
    TrivalentPlanarGraph::new(edges, rotation).unwrap()
}

/// Smallest edge cut over all vertex bipartitions.
fn brute_min_cut(n: usize, edges: &[[usize; 2]]) -> usize {
    (1u32..(1 << (n - 1)))
        .map(|mask| {
            edges
                .iter()
                .filter(|[u, v]| ((mask >> u) & 1) != ((mask >> v) & 1))
                .count()
        })
        .min()
        .unwrap()
}

fn relabel(graph: &TrivalentPlanarGraph, perm: &[usize]) -> GraphData {
    let mut data = graph.to_data();
    let mut rotation = vec![Vec::new(); perm.len()];
    for (v, r) in data.rotation.iter().enumerate() {
        rotation[perm[v]] = r.clone();
    }
    data.edges = data
        .edges
        .iter()
        .map(|&[u, v]| [perm[u], perm[v]])
        .collect();
    data.rotation = rotation;
    data
}

#[test]
fn g7_counts() {
    let g = standard_graph(7).unwrap();
    assert_eq!(g.vertex_count(), 12);
    assert_eq!(g.edge_count(), 18);
    assert_eq!(g.faces().len(), 8);
    assert_eq!(g.genus(), 7);
    assert!(validate(&g.to_data()).is_valid());
}

#[test]
fn k4_is_genus_three() {
    let g = k4();
    assert_eq!(g.genus(), 3);
    assert_eq!(g.faces().len(), 4);
    assert_eq!(edge_connectivity(&g), 3);
    for f in 0..4 {
        assert_eq!(g.faces().walk(f).len(), 3);
    }
}

#[test]
fn family_faces_satisfy_euler() {
    for genus in 7..=20 {
        let g = standard_graph(genus).unwrap();
        let (v, e, f) = (
            g.vertex_count() as i64,
            g.edge_count() as i64,
            g.faces().len() as i64,
        );
        assert_eq!(v - e + f, 2, "g={genus}");
        assert_eq!(f as usize, genus + 1);
        let darts: usize = g.faces().walks().iter().map(Vec::len).sum();
        assert_eq!(darts, 2 * g.edge_count());
    }
}

#[test]
fn validation_rejects_bad_data() {
    let good = k4().to_data();

    let mut wrong_genus = good.clone();
    wrong_genus.declared_genus = Some(4);
    let r = validate(&wrong_genus);
    assert!(!r.passed(CheckKind::Genus));

    // swapping two entries at one vertex makes the rotation non-planar
    let mut twisted = good.clone();
    twisted.rotation[0].swap(0, 1);
    twisted.rotation[1].swap(0, 1);
    let r = validate(&twisted);
    assert!(!r.passed(CheckKind::Planar), "{r}");

    let mut doubled = good.clone();
    doubled.edges[5] = [0, 1];
    assert!(!validate(&doubled).passed(CheckKind::Simple));
}

#[test]
fn json_round_trip() {
    let g = standard_graph(9).unwrap();
    let back = TrivalentPlanarGraph::from_json(&g.to_json()).unwrap();
    assert_eq!(back.edges(), g.edges());
    for v in 0..g.vertex_count() {
        assert_eq!(back.rotation(v), g.rotation(v));
    }
}

#[test]
fn json_rejects_shape_errors() {
    assert!(TrivalentPlanarGraph::from_json("{").is_err());
    let bad = r#"{"edges":[[1,5]],"genus":0,"rotation":{},"vertices":2}"#;
    assert!(TrivalentPlanarGraph::from_json(bad).is_err());
}

#[test]
fn max_flow_against_brute_force_on_families() {
    for genus in 4..=8 {
        let g = gcg::prism_graph(genus - 1).unwrap();
        let n = g.vertex_count();
        if n > 14 {
            continue;
        }
        assert_eq!(edge_connectivity(&g), brute_min_cut(n, g.edges()));
    }
    let g = standard_graph(7).unwrap();
    assert_eq!(edge_connectivity(&g), brute_min_cut(12, g.edges()));
    assert_eq!(max_flow(12, g.edges(), 0, 11), 3);
}

#[test]
fn cycle_basis_is_a_basis() {
    for genus in 7..=14 {
        let g = standard_graph(genus).unwrap();
        let b = cycle_basis(&g);
        assert_eq!(b.len(), genus);
        assert_eq!(b.rank(), genus);
        for v in &b.vectors {
            assert!(divergence(&g, v).iter().all(|&x| x == 0));
            check_cycle(&g, v).unwrap();
        }
    }
}

#[test]
fn omitted_face_is_sum_of_the_others() {
    let g = standard_graph(8).unwrap();
    let b = cycle_basis_with_outer(&g, 3).unwrap();
    let total: Vec<i64> = (0..g.edge_count())
        .map(|e| b.vectors.iter().map(|v| v[e]).sum())
        .collect();
    let outer = g.faces().boundary(3, g.edges());
    assert!(total.iter().zip(&outer).all(|(a, b)| a + b == 0));
}

fn small_cubic(n: usize, seed: u64) -> Vec<[usize; 2]> {
    // random multigraph-free cubic graphs by pairing half-edges with retries
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| [v, v, v]).collect();
        stubs.shuffle(&mut rng);
        let mut edges: Vec<[usize; 2]> = stubs
            .chunks(2)
            .map(|c| [c[0].min(c[1]), c[0].max(c[1])])
            .collect();
        edges.sort_unstable();
        let simple = edges.iter().all(|[u, v]| u != v) && edges.windows(2).all(|w| w[0] != w[1]);
        if simple {
            return edges;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabelled_family_graphs_stay_valid(genus in 7usize..=14, seed in any::<u64>()) {
        let g = standard_graph(genus).unwrap();
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let data = relabel(&g, &perm);
        prop_assert!(validate(&data).is_valid());
        let h = TrivalentPlanarGraph::from_data(data).unwrap();
        prop_assert_eq!(h.faces().len(), g.faces().len());
        prop_assert_eq!(edge_connectivity(&h), 3);
    }

    #[test]
    fn flow_connectivity_matches_min_cut(half in 2usize..=7, seed in any::<u64>()) {
        let n = 2 * half;
        let edges = small_cubic(n, seed);
        prop_assert_eq!(edge_connectivity_of(n, &edges), brute_min_cut(n, &edges));
    }
}
