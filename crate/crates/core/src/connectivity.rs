//! Edge connectivity by unit-capacity max flow.
//!
//! These work on plain edge lists so they also apply to the non-trivalent
//! graphs used in tests.

use std::collections::VecDeque;

use crate::graph::TrivalentPlanarGraph;

pub fn component_count(n: usize, edges: &[[usize; 2]]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut count = n;
    for &[u, v] in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

/// Maximum number of edge-disjoint paths from `s` to `t`. Each undirected
/// edge is a pair of opposite arcs of capacity one.
pub fn max_flow(n: usize, edges: &[[usize; 2]], s: usize, t: usize) -> usize {
    // arc 2e runs u -> v, arc 2e+1 runs v -> u
    let mut adj = vec![Vec::new(); n];
    for (e, &[u, v]) in edges.iter().enumerate() {
        if u == v {
            continue;
        }
        adj[u].push(2 * e);
        adj[v].push(2 * e + 1);
    }
    let head = |a: usize| {
        let [u, v] = edges[a / 2];
        if a.is_multiple_of(2) {
            v
        } else {
            u
        }
    };
    // net flow on each edge in the u -> v direction, in {-1, 0, 1}
    let mut flow = vec![0i8; edges.len()];
    let residual = |flow: &[i8], a: usize| {
        let f = flow[a / 2];
        if a.is_multiple_of(2) {
            f < 1
        } else {
            f > -1
        }
    };
    let mut total = 0;
    loop {
        let mut pred = vec![usize::MAX; n];
        let mut visited = vec![false; n];
        visited[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &a in &adj[x] {
                let y = head(a);
                if !visited[y] && residual(&flow, a) {
                    visited[y] = true;
                    pred[y] = a;
                    queue.push_back(y);
                }
            }
        }
        if !visited[t] {
            return total;
        }
        let mut y = t;
        while y != s {
            let a = pred[y];
            flow[a / 2] += if a % 2 == 0 { 1 } else { -1 };
            let [u, v] = edges[a / 2];
            y = if a % 2 == 0 { u } else { v };
        }
        total += 1;
    }
}

/// Global minimum edge cut: min over t of maxflow(0, t).
/// Disconnected graphs give 0; fewer than two vertices give 0.
pub fn edge_connectivity_of(n: usize, edges: &[[usize; 2]]) -> usize {
    if n < 2 {
        return 0;
    }
    (1..n).map(|t| max_flow(n, edges, 0, t)).min().unwrap_or(0)
}

pub fn edge_connectivity(graph: &TrivalentPlanarGraph) -> usize {
    edge_connectivity_of(graph.vertex_count(), graph.edges())
}
