//! Explicit graph families: the standard ring graphs, their A/B chain
//! decompositions, prisms, and the two tilde graphs rebuilt from
//! degeneration data.
//!
//! Constructors take 1-based vertex numbers in their formulas and store
//! them 0-based.

use serde::Serialize;
use thiserror::Error;

use crate::degeneration::{self, DegenerationError};
use crate::graph::{GraphError, TrivalentPlanarGraph};
use crate::planes::{self, PlaneError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error(
        "standard graphs start at genus 7 (got {0}); use prism_graph or tilde_graph below that"
    )]
    UnsupportedGenus(usize),
    #[error("prism needs at least 3 rungs (got {0})")]
    PrismTooSmall(usize),
    #[error("tilde graphs exist for genus 7 and 8 only (got {0})")]
    NoTildeGraph(usize),
    #[error("decomposition part {part:?} is not a path: v{from} and v{to} are not adjacent")]
    NotAPath { part: Part, from: usize, to: usize },
    #[error("decomposition does not partition the vertices")]
    NotAPartition,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Degeneration(#[from] DegenerationError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Part {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Standard,
    Prism,
    Tilde,
}

/// Two vertex paths covering the graph. Vertices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainDecomposition {
    pub genus: usize,
    pub part_a: Vec<usize>,
    pub part_b: Vec<usize>,
}

impl ChainDecomposition {
    pub fn part(&self, part: Part) -> &[usize] {
        match part {
            Part::A => &self.part_a,
            Part::B => &self.part_b,
        }
    }

    /// 0 for A, 1 for B, indexed by vertex.
    pub fn colors(&self) -> Vec<u8> {
        let n = self.part_a.len() + self.part_b.len();
        let mut c = vec![0u8; n];
        for &v in &self.part_b {
            c[v] = 1;
        }
        c
    }

    /// Edges with one end in each part.
    pub fn crossing_edges(&self, graph: &TrivalentPlanarGraph) -> Vec<usize> {
        let colors = self.colors();
        (0..graph.edge_count())
            .filter(|&e| {
                let [u, v] = graph.edge(e);
                colors[u] != colors[v]
            })
            .collect()
    }

    pub fn check(&self, graph: &TrivalentPlanarGraph) -> Result<(), FamilyError> {
        let mut seen = vec![false; graph.vertex_count()];
        for &v in self.part_a.iter().chain(&self.part_b) {
            if v >= seen.len() || seen[v] {
                return Err(FamilyError::NotAPartition);
            }
            seen[v] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(FamilyError::NotAPartition);
        }
        for part in [Part::A, Part::B] {
            for w in self.part(part).windows(2) {
                if !graph.is_adjacent(w[0], w[1]) {
                    return Err(FamilyError::NotAPath {
                        part,
                        from: w[0] + 1,
                        to: w[1] + 1,
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Side {
    Outward,
    Next,
    Inward,
    Prev,
}

/// Concentric rings drawn counterclockwise. Each vertex orders its edges
/// outward, next, inward, previous, which is counterclockwise.
struct Rings {
    edges: Vec<[usize; 2]>,
    slots: Vec<Vec<(Side, usize)>>,
}

impl Rings {
    fn new(vertices: usize) -> Self {
        Rings {
            edges: Vec::new(),
            slots: vec![Vec::new(); vertices],
        }
    }

    fn add(&mut self, u: usize, v: usize, su: Side, sv: Side) {
        let e = self.edges.len();
        self.edges.push([u - 1, v - 1]);
        self.slots[u - 1].push((su, e));
        self.slots[v - 1].push((sv, e));
    }

    fn ring(&mut self, vs: &[usize]) {
        for i in 0..vs.len() {
            self.add(vs[i], vs[(i + 1) % vs.len()], Side::Next, Side::Prev);
        }
    }

    fn build(mut self) -> Result<TrivalentPlanarGraph, GraphError> {
        let rotation = self
            .slots
            .iter_mut()
            .map(|s| {
                s.sort();
                s.iter().map(|&(_, e)| e).collect()
            })
            .collect();
        TrivalentPlanarGraph::new(self.edges, rotation)
    }
}

/// The genus-g member of the standard family, g >= 7.
///
/// Odd g = 2n+1: rings v1..vn, v_{n+1}..v_{3n}, v_{3n+1}..v_{4n}, spokes
/// v_i – v_{n+2i-1} (i <= n) and v_i – v_{2i-5n} (i > 3n).
///
/// Even g = 2n+2: the genus 2n+1 graph with a new vertex on the inner edge
/// v1 v_n and another on the edge v_a v_{a+1}, a = floor((n+1)/2), joined by
/// a chord. The new vertices are v_{n+1} and v_{n+2}; the old vertices
/// above v_n shift up by two.
pub fn standard_graph(g: usize) -> Result<TrivalentPlanarGraph, FamilyError> {
    if g < 7 {
        return Err(FamilyError::UnsupportedGenus(g));
    }
    let mut r = Rings::new(2 * g - 2);
    if g % 2 == 1 {
        let n = (g - 1) / 2;
        r.ring(&(1..=n).collect::<Vec<_>>());
        r.ring(&(n + 1..=3 * n).collect::<Vec<_>>());
        r.ring(&(3 * n + 1..=4 * n).collect::<Vec<_>>());
        for i in 1..=n {
            r.add(i, n + 2 * i - 1, Side::Outward, Side::Inward);
        }
        for i in 3 * n + 1..=4 * n {
            r.add(2 * i - 5 * n, i, Side::Outward, Side::Inward);
        }
    } else {
        let n = (g - 2) / 2;
        let a = n.div_ceil(2);
        let mut inner: Vec<usize> = (1..=a).collect();
        inner.push(n + 2);
        inner.extend(a + 1..=n);
        inner.push(n + 1);
        r.ring(&inner);
        r.ring(&(n + 3..=3 * n + 2).collect::<Vec<_>>());
        r.ring(&(3 * n + 3..=4 * n + 2).collect::<Vec<_>>());
        r.add(n + 1, n + 2, Side::Inward, Side::Inward);
        for i in 1..=n {
            r.add(i, n + 2 * i + 1, Side::Outward, Side::Inward);
        }
        for i in 3 * n + 1..=4 * n {
            r.add(2 * i - 5 * n + 2, i + 2, Side::Outward, Side::Inward);
        }
    }
    Ok(r.build()?)
}

/// The two paths of the standard graph, as listed for odd and even genus.
pub fn ab_decomposition(g: usize) -> Result<ChainDecomposition, FamilyError> {
    let graph = standard_graph(g)?;
    let (part_a, part_b): (Vec<usize>, Vec<usize>) = if g % 2 == 1 {
        let n = (g - 1) / 2;
        let a = [vec![1], (n + 1..=3 * n - 2).collect(), vec![4 * n - 1]].concat();
        let b = [
            (2..=n).collect(),
            vec![3 * n - 1, 3 * n, 4 * n],
            (3 * n + 1..=4 * n - 2).collect::<Vec<_>>(),
        ]
        .concat();
        (a, b)
    } else {
        let n = (g - 2) / 2;
        let lo = n.div_ceil(2);
        let hi = (n + 3) / 2;
        let a = [vec![n + 1, 1], (n + 3..=3 * n).collect(), vec![4 * n + 1]].concat();
        let b = [
            (2..=lo).collect(),
            vec![n + 2],
            (hi..=n).collect(),
            vec![3 * n + 1, 3 * n + 2, 4 * n + 2],
            (3 * n + 3..=4 * n).collect::<Vec<_>>(),
        ]
        .concat();
        (a, b)
    };
    let decomp = ChainDecomposition {
        genus: g,
        part_a: part_a.into_iter().map(|v| v - 1).collect(),
        part_b: part_b.into_iter().map(|v| v - 1).collect(),
    };
    decomp.check(&graph)?;
    Ok(decomp)
}

/// Two m-cycles (v1..vm inside, v_{m+1}..v_{2m} outside) joined by rungs
/// v_i – v_{m+i}. Genus m + 1.
pub fn prism_graph(m: usize) -> Result<TrivalentPlanarGraph, FamilyError> {
    if m < 3 {
        return Err(FamilyError::PrismTooSmall(m));
    }
    let mut r = Rings::new(2 * m);
    r.ring(&(1..=m).collect::<Vec<_>>());
    r.ring(&(m + 1..=2 * m).collect::<Vec<_>>());
    for i in 1..=m {
        r.add(i, m + i, Side::Outward, Side::Inward);
    }
    Ok(r.build()?)
}

/// The graph dual to the union of the two limit chains of the tilde data.
/// Vertices 1..g-1 are the planes of the first chain, the rest the second.
pub fn tilde_graph(g: usize) -> Result<TrivalentPlanarGraph, FamilyError> {
    let data = degeneration::tilde_data(g)?;
    let union = degeneration::limit_union(&data)?;
    Ok(planes::dual_graph(&union)?)
}

pub fn graph_of(kind: Kind, g: usize) -> Result<TrivalentPlanarGraph, FamilyError> {
    match kind {
        Kind::Standard => standard_graph(g),
        Kind::Prism => {
            if g < 4 {
                return Err(FamilyError::PrismTooSmall(g.saturating_sub(1)));
            }
            prism_graph(g - 1)
        }
        Kind::Tilde => {
            if g != 7 && g != 8 {
                return Err(FamilyError::NoTildeGraph(g));
            }
            tilde_graph(g)
        }
    }
}
