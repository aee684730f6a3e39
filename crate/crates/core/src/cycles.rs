//! Integer cycle space of an embedded graph.

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact::{bareiss_rank, Matrix};
use crate::graph::TrivalentPlanarGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("outer face {face} out of range (graph has {faces} faces)")]
    BadOuterFace { face: usize, faces: usize },
    #[error("vector has nonzero divergence {value} at v{vertex}")]
    NotACycle { vertex: usize, value: i64 },
    #[error("vector has length {found}, expected {expected}")]
    WrongLength { found: usize, expected: usize },
}

/// g face-boundary cycles. Entries are indexed by edge, with each edge
/// oriented from its lower to its higher vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBasis {
    pub vectors: Vec<Vec<i64>>,
    pub outer_face: usize,
}

impl CycleBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn rank(&self) -> usize {
        if self.vectors.is_empty() {
            return 0;
        }
        let m = Matrix::from_rows(
            self.vectors
                .iter()
                .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("equal lengths");
        bareiss_rank(&m).expect("integer elimination is exact")
    }
}

/// Default basis: all face boundaries except the highest-indexed face.
pub fn cycle_basis(graph: &TrivalentPlanarGraph) -> CycleBasis {
    cycle_basis_with_outer(graph, graph.faces().len() - 1).expect("last face exists")
}

pub fn cycle_basis_with_outer(
    graph: &TrivalentPlanarGraph,
    outer: usize,
) -> Result<CycleBasis, CycleError> {
    let faces = graph.faces();
    if outer >= faces.len() {
        return Err(CycleError::BadOuterFace {
            face: outer,
            faces: faces.len(),
        });
    }
    let vectors = (0..faces.len())
        .filter(|&f| f != outer)
        .map(|f| faces.boundary(f, graph.edges()))
        .collect();
    Ok(CycleBasis {
        vectors,
        outer_face: outer,
    })
}

/// Net flow into each vertex: sum over incident edges of the entry, signed
/// +1 when the edge points into the vertex.
pub fn divergence(graph: &TrivalentPlanarGraph, vector: &[i64]) -> Vec<i64> {
    let mut div = vec![0; graph.vertex_count()];
    for (e, &x) in vector.iter().enumerate() {
        let (lo, hi) = graph.oriented(e);
        div[hi] += x;
        div[lo] -= x;
    }
    div
}

pub fn check_cycle(graph: &TrivalentPlanarGraph, vector: &[i64]) -> Result<(), CycleError> {
    if vector.len() != graph.edge_count() {
        return Err(CycleError::WrongLength {
            found: vector.len(),
            expected: graph.edge_count(),
        });
    }
    match divergence(graph, vector)
        .iter()
        .enumerate()
        .find(|(_, &d)| d != 0)
    {
        Some((v, &d)) => Err(CycleError::NotACycle {
            vertex: v + 1,
            value: d,
        }),
        None => Ok(()),
    }
}
