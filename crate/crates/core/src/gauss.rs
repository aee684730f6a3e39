//! The Gaussian map of a graph curve as an exact integer matrix.
//!
//! Each vertex is a rational curve with its three nodes at z = 0, 1, ∞
//! (in rotation order unless shuffled). A section of the dualizing sheaf is
//! a cycle: on a component it restricts to `(r0/z + r1/(z-1)) dz`, where the
//! residue at a branch is the cycle entry, signed +1 if the edge points into
//! the vertex.
//!
//! Target rows come in two blocks.
//!
//! * One row per component. The Wronskian of two such forms has its cubic
//!   poles cancel and equals `(r0 r1' - r0' r1) (dz)^3 / (z^2 (z-1)^2)`.
//! * One row per node, for the torsion of Ω¹ there. In the local model
//!   `xy = 0` write a section as `f·η` with `η = dx/x` on one branch and
//!   `-dy/y` on the other, `f = a + a1 x + b1 y + ...`. The class of
//!   `f dg - g df` on the torsion line is `2 (a1 d1 - b1 c1)`, the residues
//!   dropping out. Here `a1` is the next coefficient μ of `x·s/dx` on the
//!   first branch and `b1 = -μ` on the second, so the entry is
//!   `-2 (μ_u(s) μ_v(t) - μ_v(s) μ_u(t))` with u the tail and v the head of
//!   the edge. At z = 0, 1, ∞ the next coefficient is `-r1`, `r0`, `-r1`.
//!
//! Other local coordinates change μ by multiples of the residue, which
//! amounts to row operations; [`convention_shuffle`] exercises this.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cycles::{cycle_basis, cycle_basis_with_outer, CycleError};
use crate::exact::{bareiss_rank, modular_rank, random_primes, ExactError, Matrix};
use crate::graph::TrivalentPlanarGraph;
use crate::SCHEMA;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaussError {
    #[error("rank backends disagree: {0}")]
    BackendDisagreement(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error("target dimension audit failed: {nodal} rows against 5g-5 = {smooth}")]
    TargetAudit { nodal: usize, smooth: usize },
}

/// Node positions on each component: `slots[v][0]` is the edge at z = 0,
/// `[1]` at z = 1, `[2]` at z = ∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    pub slots: Vec<[usize; 3]>,
    /// Tail of each edge; cycle entries count flow from tail to head.
    pub tails: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
}

impl CurveModel {
    pub fn components(&self) -> usize {
        self.slots.len()
    }

    pub fn nodes(&self) -> usize {
        self.edges.len()
    }

    pub fn position(&self, v: usize, e: usize) -> usize {
        self.slots[v]
            .iter()
            .position(|&x| x == e)
            .expect("edge at vertex")
    }

    pub fn head(&self, e: usize) -> usize {
        let [a, b] = self.edges[e];
        if a == self.tails[e] {
            b
        } else {
            a
        }
    }
}

/// Positions from rotation order, edges oriented low to high.
pub fn curve_model(graph: &TrivalentPlanarGraph) -> CurveModel {
    CurveModel {
        slots: (0..graph.vertex_count())
            .map(|v| graph.rotation(v))
            .collect(),
        tails: (0..graph.edge_count())
            .map(|e| graph.oriented(e).0)
            .collect(),
        edges: graph.edges().to_vec(),
    }
}

/// Residues of one section at z = 0, 1, ∞ on every component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSection {
    pub cycle: Vec<i64>,
    pub residues: Vec<[i64; 3]>,
}

impl OmegaSection {
    pub fn r0(&self, v: usize) -> i64 {
        self.residues[v][0]
    }

    pub fn r1(&self, v: usize) -> i64 {
        self.residues[v][1]
    }

    /// Next coefficient of `x·s/dx` at the node in slot `pos`.
    pub fn mu(&self, v: usize, pos: usize) -> i64 {
        match pos {
            0 | 2 => -self.r1(v),
            _ => self.r0(v),
        }
    }
}

/// Restricts a cycle (entries relative to the model's edge tails).
pub fn omega_restrictions(model: &CurveModel, cycle: &[i64]) -> Result<OmegaSection, CycleError> {
    if cycle.len() != model.nodes() {
        return Err(CycleError::WrongLength {
            found: cycle.len(),
            expected: model.nodes(),
        });
    }
    let mut residues = vec![[0i64; 3]; model.components()];
    for (v, slots) in model.slots.iter().enumerate() {
        for (pos, &e) in slots.iter().enumerate() {
            let sign = if model.head(e) == v { 1 } else { -1 };
            residues[v][pos] = sign * cycle[e];
        }
        let sum: i64 = residues[v].iter().sum();
        if sum != 0 {
            return Err(CycleError::NotACycle {
                vertex: v + 1,
                value: sum,
            });
        }
    }
    Ok(OmegaSection {
        cycle: cycle.to_vec(),
        residues,
    })
}

pub fn wronskian_component(s: &OmegaSection, t: &OmegaSection, v: usize) -> i64 {
    s.r0(v) * t.r1(v) - t.r0(v) * s.r1(v)
}

pub fn torsion_component(model: &CurveModel, s: &OmegaSection, t: &OmegaSection, e: usize) -> i64 {
    let u = model.tails[e];
    let v = model.head(e);
    let (pu, pv) = (model.position(u, e), model.position(v, e));
    -2 * (s.mu(u, pu) * t.mu(v, pv) - s.mu(v, pv) * t.mu(u, pu))
}

/// Image of `s ∧ t`: component rows in vertex order, then node rows in edge
/// order.
pub fn phi(model: &CurveModel, s: &OmegaSection, t: &OmegaSection) -> Vec<i64> {
    (0..model.components())
        .map(|v| wronskian_component(s, t, v))
        .chain((0..model.nodes()).map(|e| torsion_component(model, s, t, e)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianMatrix<T> {
    pub genus: usize,
    pub matrix: Matrix<T>,
    /// Basis index pairs (i < j) labelling the columns.
    pub columns: Vec<(usize, usize)>,
}

impl<T> GaussianMatrix<T> {
    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn domain_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn row_labels(&self) -> Vec<String> {
        let comps = 2 * self.genus - 2;
        (0..self.matrix.rows())
            .map(|r| {
                if r < comps {
                    format!("v{}", r + 1)
                } else {
                    format!("e{}", r - comps)
                }
            })
            .collect()
    }
}

impl<T: ToString> GaussianMatrix<T> {
    /// Dense CSV: a header of column pair labels, then one row per target
    /// basis element.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row");
        for (i, j) in &self.columns {
            out.push_str(&format!(",w{}_{}", i + 1, j + 1));
        }
        out.push('\n');
        for (r, label) in self.row_labels().iter().enumerate() {
            out.push_str(label);
            for x in self.matrix.row(r) {
                out.push(',');
                out.push_str(&x.to_string());
            }
            out.push('\n');
        }
        out
    }
}

fn assemble<T: Clone + Zero + FromPrimitive>(
    genus: usize,
    model: &CurveModel,
    basis: &[Vec<i64>],
) -> Result<GaussianMatrix<T>, GaussError> {
    let sections = basis
        .iter()
        .map(|c| omega_restrictions(model, c))
        .collect::<Result<Vec<_>, _>>()?;
    let columns: Vec<(usize, usize)> = (0..basis.len()).tuple_combinations().collect();
    let rows = model.components() + model.nodes();
    let cols: Vec<Vec<T>> = columns
        .iter()
        .map(|&(i, j)| {
            phi(model, &sections[i], &sections[j])
                .into_iter()
                .map(|x| T::from_i64(x).expect("entry fits scalar"))
                .collect()
        })
        .collect();
    Ok(GaussianMatrix {
        genus,
        matrix: Matrix::from_columns(cols, rows)?,
        columns,
    })
}

/// The matrix in default conventions: rotation-order positions, low-to-high
/// edges, face basis without the last face.
pub fn gaussian_matrix<T: Clone + Zero + FromPrimitive>(
    graph: &TrivalentPlanarGraph,
) -> GaussianMatrix<T> {
    let model = curve_model(graph);
    let basis = cycle_basis(graph);
    assemble(graph.genus(), &model, &basis.vectors).expect("face boundaries are cycles")
}

/// Rebuilds the matrix under random legal changes of convention: node
/// positions permuted per component, edges reversed, a different omitted
/// face, and a random unimodular change of cycle basis.
pub fn convention_shuffle<T: Clone + Zero + FromPrimitive>(
    graph: &TrivalentPlanarGraph,
    seed: u64,
) -> GaussianMatrix<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut model = curve_model(graph);
    for slots in model.slots.iter_mut() {
        slots.shuffle(&mut rng);
    }
    let flips: Vec<bool> = (0..graph.edge_count()).map(|_| rng.gen_bool(0.5)).collect();
    for (e, &f) in flips.iter().enumerate() {
        if f {
            model.tails[e] = graph.oriented(e).1;
        }
    }
    let outer = rng.gen_range(0..graph.faces().len());
    let mut basis = cycle_basis_with_outer(graph, outer)
        .expect("face in range")
        .vectors;
    let g = basis.len();
    if g >= 2 {
        for _ in 0..3 * g {
            let i = rng.gen_range(0..g);
            let mut j = rng.gen_range(0..g - 1);
            if j >= i {
                j += 1;
            }
            let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
            let add = basis[j].clone();
            for (x, y) in basis[i].iter_mut().zip(add) {
                *x += c * y;
            }
        }
        basis.shuffle(&mut rng);
    }
    for v in basis.iter_mut() {
        for (e, &f) in flips.iter().enumerate() {
            if f {
                v[e] = -v[e];
            }
        }
    }
    assemble(graph.genus(), &model, &basis).expect("unimodular images of cycles are cycles")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetDimension {
    pub components: usize,
    pub nodes: usize,
    pub total: usize,
    pub smooth: usize,
}

/// (2g-2) component rows plus (3g-3) node rows, audited against
/// h0(ω^3) = 5g - 5 for a smooth curve.
pub fn target_dimension(graph: &TrivalentPlanarGraph) -> Result<TargetDimension, GaussError> {
    let g = graph.genus();
    let t = TargetDimension {
        components: graph.vertex_count(),
        nodes: graph.edge_count(),
        total: graph.vertex_count() + graph.edge_count(),
        smooth: 5 * g - 5,
    };
    if t.total != t.smooth {
        return Err(GaussError::TargetAudit {
            nodal: t.total,
            smooth: t.smooth,
        });
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Backend {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorankCertificate {
    pub backends: Vec<Backend>,
    pub corank: usize,
    pub domain_dim: usize,
    pub genus: usize,
    pub rank: usize,
    pub schema: &'static str,
    pub target_dim: usize,
}

impl CorankCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Rank by Bareiss over the scalar type and modulo each prime. Any
/// disagreement is an error.
pub fn corank_with_primes<T>(
    m: &GaussianMatrix<T>,
    primes: &[u64],
) -> Result<CorankCertificate, GaussError>
where
    T: Clone + Integer + Signed + FromPrimitive + ToPrimitive,
{
    // eliminate along the shorter side
    let mat = if m.matrix.rows() > m.matrix.cols() {
        m.matrix.transpose()
    } else {
        m.matrix.clone()
    };
    let exact = bareiss_rank(&mat)?;
    let mut backends = vec![Backend {
        kind: "bareiss",
        prime: None,
        rank: exact,
    }];
    for &p in primes {
        backends.push(Backend {
            kind: "modular",
            prime: Some(p),
            rank: modular_rank(&mat, p)?,
        });
    }
    if let Some(b) = backends.iter().find(|b| b.rank != exact) {
        return Err(GaussError::BackendDisagreement(format!(
            "bareiss rank {exact}, modulo {} rank {}",
            b.prime.unwrap_or(0),
            b.rank
        )));
    }
    Ok(CorankCertificate {
        backends,
        corank: m.target_dim() - exact,
        domain_dim: m.domain_dim(),
        genus: m.genus,
        rank: exact,
        schema: SCHEMA,
        target_dim: m.target_dim(),
    })
}

/// Certificate with two primes drawn from (2^30, 2^31) by `seed`.
pub fn corank(m: &GaussianMatrix<BigInt>, seed: u64) -> Result<CorankCertificate, GaussError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes = random_primes(&mut rng, 2);
    corank_with_primes(m, &primes)
}

/// Matrix and certificate for a graph in default conventions.
pub fn graph_corank(
    graph: &TrivalentPlanarGraph,
    seed: u64,
) -> Result<CorankCertificate, GaussError> {
    target_dimension(graph)?;
    corank(&gaussian_matrix::<BigInt>(graph), seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn section(residues: Vec<[i64; 3]>) -> OmegaSection {
        OmegaSection {
            cycle: Vec::new(),
            residues,
        }
    }

    #[test]
    fn wronskian_of_basic_forms() {
        // dz/z against dz/(z-1)
        let s = section(vec![[1, 0, -1]]);
        let t = section(vec![[0, 1, -1]]);
        assert_eq!(wronskian_component(&s, &t, 0), 1);
        assert_eq!(wronskian_component(&s, &s, 0), 0);
        let s = section(vec![[2, 0, -2]]);
        let t = section(vec![[0, 3, -3]]);
        assert_eq!(wronskian_component(&s, &t, 0), 6);
    }

    #[test]
    fn mu_by_position() {
        let s = section(vec![[2, 5, -7]]);
        assert_eq!(s.mu(0, 0), -5);
        assert_eq!(s.mu(0, 1), 2);
        assert_eq!(s.mu(0, 2), -5);
    }
}
