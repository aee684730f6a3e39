//! Unions of coordinate planes and lines as pure simplicial complexes.
//!
//! A facet `{a, b, c}` stands for the plane spanned by coordinate points
//! `a`, `b`, `c`. The Hilbert function of such a union is a binomial sum over
//! the f-vector of the complex.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_integer::binomial;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectivity::edge_connectivity;
use crate::families::{ChainDecomposition, Part};
use crate::graph::TrivalentPlanarGraph;
use crate::SCHEMA;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error("graph is only {0}-edge-connected; plane intersections would not follow edges")]
    NotThreeEdgeConnected(usize),
    #[error("v{0} does not touch three different faces")]
    RepeatedFace(usize),
    #[error("facet {facet:?} repeats a label or uses a label outside the point set")]
    BadFacet { facet: Vec<usize> },
    #[error("facets have mixed sizes")]
    NotPure,
    #[error("chain broken between planes {0} and {1}: {2}")]
    ChainBroken(usize, usize, String),
    #[error("double curve is not a single cycle through all points: {0}")]
    NotACycle(String),
    #[error("plane {plane} is not spanned by lines or a point and a line of the double curve")]
    NoSpan { plane: usize },
    #[error("side {side:?} lies on {count} triangles, expected 2")]
    NotASurface { side: [usize; 2], count: usize },
    #[error("triangles cannot be oriented consistently")]
    NotOrientable,
    #[error("dual graph: {0}")]
    Dual(String),
    #[error("invalid JSON: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneConfig {
    ambient: usize,
    points: Vec<usize>,
    facets: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigFile {
    pub ambient: usize,
    pub facets: Vec<Vec<usize>>,
    pub points: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
}

impl PlaneConfig {
    /// Facets keep their order (facet i usually stands for vertex i) but
    /// each facet's labels are sorted.
    pub fn new(
        ambient: usize,
        points: Vec<usize>,
        facets: Vec<Vec<usize>>,
    ) -> Result<Self, PlaneError> {
        let point_set: BTreeSet<usize> = points.iter().copied().collect();
        let mut sorted = Vec::with_capacity(facets.len());
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != f.len() || s.iter().any(|x| !point_set.contains(x)) {
                return Err(PlaneError::BadFacet { facet: f });
            }
            sorted.push(s);
        }
        if sorted.iter().map(Vec::len).unique().count() > 1 {
            return Err(PlaneError::NotPure);
        }
        let mut points = points;
        points.sort_unstable();
        points.dedup();
        Ok(PlaneConfig {
            ambient,
            points,
            facets: sorted,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn facet(&self, i: usize) -> &[usize] {
        &self.facets[i]
    }

    pub fn dimension(&self) -> Option<usize> {
        self.facets.first().map(|f| f.len() - 1)
    }

    /// Face counts by size: entry i is the number of faces with i + 1 labels.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in &self.facets {
            for r in 1..=f.len() {
                for c in f.iter().copied().combinations(r) {
                    faces.insert(c);
                }
            }
        }
        let top = self.facets.iter().map(Vec::len).max().unwrap_or(0);
        let mut fv = vec![0u64; top];
        for f in faces {
            fv[f.len() - 1] += 1;
        }
        fv
    }

    /// Labels shared by each pair of facets (i < j).
    pub fn pairwise_intersections(&self) -> Vec<((usize, usize), usize)> {
        (0..self.facets.len())
            .tuple_combinations()
            .map(|(i, j)| ((i, j), shared(&self.facets[i], &self.facets[j])))
            .collect()
    }

    pub fn sub_config(&self, facets: &[usize]) -> PlaneConfig {
        let fs: Vec<Vec<usize>> = facets.iter().map(|&i| self.facets[i].clone()).collect();
        let points: BTreeSet<usize> = fs.iter().flatten().copied().collect();
        PlaneConfig {
            ambient: self.ambient,
            points: points.into_iter().collect(),
            facets: fs,
        }
    }

    pub fn to_file(&self) -> ConfigFile {
        ConfigFile {
            ambient: self.ambient,
            facets: self.facets.clone(),
            points: self.points.clone(),
            schema: Some(SCHEMA.to_string()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, PlaneError> {
        let f: ConfigFile =
            serde_json::from_str(text).map_err(|e| PlaneError::Json(e.to_string()))?;
        PlaneConfig::new(f.ambient, f.points, f.facets)
    }
}

fn shared(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

/// One plane per vertex, spanned by the vertex's three faces. Points are the
/// face indices 0..=g.
pub fn config_from_graph(graph: &TrivalentPlanarGraph) -> Result<PlaneConfig, PlaneError> {
    let c = edge_connectivity(graph);
    if c < 3 {
        return Err(PlaneError::NotThreeEdgeConnected(c));
    }
    let mut facets = Vec::with_capacity(graph.vertex_count());
    for v in 0..graph.vertex_count() {
        let f = graph.vertex_faces(v);
        if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
            return Err(PlaneError::RepeatedFace(v + 1));
        }
        facets.push(f.to_vec());
    }
    PlaneConfig::new(graph.genus(), (0..graph.faces().len()).collect(), facets)
}

/// H(d) from the f-vector: H(0) = 1 and H(d) = sum_i f_{i-1} C(d-1, i-1).
pub fn hilbert_function(config: &PlaneConfig, d: u64) -> u64 {
    if d == 0 {
        return 1;
    }
    config
        .f_vector()
        .iter()
        .enumerate()
        .map(|(i, &f)| f * binomial(d - 1, i as u64))
        .sum()
}

/// Brute-force count of degree-d monomials whose support is a face.
/// Exponential in d; meant as an independent check at small sizes.
pub fn hilbert_by_monomials(config: &PlaneConfig, d: usize) -> u64 {
    if d == 0 {
        return 1;
    }
    let facet_sets: Vec<BTreeSet<usize>> = config
        .facets
        .iter()
        .map(|f| f.iter().copied().collect())
        .collect();
    config
        .points
        .iter()
        .copied()
        .combinations_with_replacement(d)
        .filter(|m| {
            let support: BTreeSet<usize> = m.iter().copied().collect();
            facet_sets.iter().any(|f| support.is_subset(f))
        })
        .count() as u64
}

/// Planes of one part of a decomposition, in path order.
pub fn chain_config(
    s_g: &PlaneConfig,
    decomp: &ChainDecomposition,
    part: Part,
) -> Result<PlaneConfig, PlaneError> {
    let order = decomp.part(part);
    let chain = s_g.sub_config(order);
    check_chain(&chain)?;
    Ok(chain)
}

/// Consecutive facets share a line, other pairs share at most a point.
pub fn check_chain(chain: &PlaneConfig) -> Result<(), PlaneError> {
    for ((i, j), s) in chain.pairwise_intersections() {
        let consecutive = j == i + 1;
        if consecutive && s != 2 {
            return Err(PlaneError::ChainBroken(
                i,
                j,
                format!("share {s} labels, expected 2"),
            ));
        }
        if !consecutive && s > 1 {
            return Err(PlaneError::ChainBroken(
                i,
                j,
                format!("non-consecutive planes share {s} labels"),
            ));
        }
    }
    Ok(())
}

/// Lines lying on a plane of each configuration. For the two chains of a
/// decomposition this is a cycle of g + 1 lines.
pub fn double_curve(a: &PlaneConfig, b: &PlaneConfig) -> Result<PlaneConfig, PlaneError> {
    let sides = |c: &PlaneConfig| -> BTreeSet<Vec<usize>> {
        c.facets
            .iter()
            .flat_map(|f| f.iter().copied().combinations(2))
            .collect()
    };
    let lines: Vec<Vec<usize>> = sides(a).intersection(&sides(b)).cloned().collect();
    let points: BTreeSet<usize> = a.points.iter().chain(&b.points).copied().collect();
    let curve = PlaneConfig::new(a.ambient, points.into_iter().collect(), lines)?;
    cycle_order(&curve)?;
    Ok(curve)
}

/// Walks a 1-dimensional complex that must be one cycle through every point.
/// Returns the points in cycle order starting at the smallest label.
pub fn cycle_order(curve: &PlaneConfig) -> Result<Vec<usize>, PlaneError> {
    let mut nbrs: BTreeMap<usize, Vec<usize>> =
        curve.points.iter().map(|&p| (p, Vec::new())).collect();
    for l in &curve.facets {
        if l.len() != 2 {
            return Err(PlaneError::NotACycle("facet is not a line".into()));
        }
        nbrs.get_mut(&l[0]).unwrap().push(l[1]);
        nbrs.get_mut(&l[1]).unwrap().push(l[0]);
    }
    if let Some((p, n)) = nbrs.iter().find(|(_, n)| n.len() != 2) {
        return Err(PlaneError::NotACycle(format!(
            "point {p} lies on {} lines",
            n.len()
        )));
    }
    let start = *curve
        .points
        .first()
        .ok_or(PlaneError::NotACycle("no points".into()))?;
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = nbrs[&start].iter().copied().min().unwrap();
    while cur != start {
        order.push(cur);
        let n = &nbrs[&cur];
        let next = if n[0] == prev { n[1] } else { n[0] };
        prev = cur;
        cur = next;
    }
    if order.len() != curve.points.len() {
        return Err(PlaneError::NotACycle(format!(
            "cycle through {} of {} points",
            order.len(),
            curve.points.len()
        )));
    }
    Ok(order)
}

/// How a plane is spanned, in the line/point vocabulary of a numbered cycle
/// of lines. Line and point indices are 1-based; `p_j` is `l_j ∩ l_{j+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "span", rename_all = "snake_case")]
pub enum Span {
    Lines { first: usize, second: usize },
    PointLine { point: usize, line: usize },
}

impl Span {
    pub fn lines(a: usize, b: usize) -> Span {
        Span::Lines {
            first: a.min(b),
            second: a.max(b),
        }
    }

    pub fn point_line(point: usize, line: usize) -> Span {
        Span::PointLine { point, line }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Span::Lines { first, second } => write!(f, "ℓ{first}, ℓ{second}"),
            Span::PointLine { point, line } => write!(f, "p{point}, ℓ{line}"),
        }
    }
}

/// A cyclic numbering `l_1..l_m` of the lines of a double curve.
/// `points[j-1]` is the label of `p_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineNumbering {
    points: Vec<usize>,
}

impl LineNumbering {
    /// `cycle` lists the point labels around the cycle; `l_1` is the line
    /// from the last point to the first, so `p_j = cycle[j-1]`.
    pub fn from_cycle(cycle: Vec<usize>) -> Self {
        LineNumbering { points: cycle }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Label of `p_j`, j in 1..=m.
    pub fn point(&self, j: usize) -> usize {
        self.points[j - 1]
    }

    /// 1-based index of the point with this label.
    pub fn point_index(&self, label: usize) -> Option<usize> {
        self.points.iter().position(|&p| p == label).map(|i| i + 1)
    }

    /// Point labels `{p_{j-1}, p_j}` of line `l_j`.
    pub fn line(&self, j: usize) -> [usize; 2] {
        let m = self.points.len();
        [self.points[(j + m - 2) % m], self.points[j - 1]]
    }

    /// 1-based index of the line through two labels, if it is a line.
    pub fn line_index(&self, a: usize, b: usize) -> Option<usize> {
        let (i, j) = (self.point_index(a)?, self.point_index(b)?);
        let m = self.points.len();
        if j == i % m + 1 {
            Some(j)
        } else if i == j % m + 1 {
            Some(i)
        } else {
            None
        }
    }

    /// The numbering used for a chain: `l_{m}` is the line of the first
    /// plane that meets the line of the second plane, `l_1` is the first
    /// plane's other line, and numbering continues from `l_m` to `l_1`.
    /// Ties go to the lower face index.
    pub fn for_chain(curve: &PlaneConfig, chain: &PlaneConfig) -> Result<Self, PlaneError> {
        let order = cycle_order(curve)?;
        let m = order.len();
        let lines_in = |f: &[usize]| -> Vec<[usize; 2]> {
            curve
                .facets
                .iter()
                .filter(|l| l.iter().all(|x| f.contains(x)))
                .map(|l| [l[0], l[1]])
                .collect()
        };
        let first = lines_in(chain.facet(0));
        if first.len() != 2 || chain.facets.len() < 2 {
            return Err(PlaneError::NoSpan { plane: 0 });
        }
        let second = lines_in(chain.facet(1));
        let meets = |l: &[usize; 2]| second.iter().any(|s| s.iter().any(|x| l.contains(x)));
        let mut candidates: Vec<&[usize; 2]> = first.iter().filter(|l| meets(l)).collect();
        if candidates.is_empty() {
            candidates = first.iter().collect();
        }
        candidates.sort();
        let last = *candidates[0];
        let one = if first[0] == last { first[1] } else { first[0] };
        // p_m = last ∩ l_1, p_1 = the other end of l_1
        let p_m = last
            .iter()
            .copied()
            .find(|x| one.contains(x))
            .ok_or(PlaneError::NoSpan { plane: 0 })?;
        let p_1 = if one[0] == p_m { one[1] } else { one[0] };
        let pos = |x: usize| order.iter().position(|&y| y == x).unwrap();
        let step = if order[(pos(p_m) + 1) % m] == p_1 {
            1
        } else {
            m - 1
        };
        let points: Vec<usize> = (0..m).map(|i| order[(pos(p_1) + i * step) % m]).collect();
        Ok(LineNumbering { points })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanRow {
    pub plane: usize,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanTable {
    pub rows: Vec<SpanRow>,
}

impl fmt::Display for SpanTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>6}  span", "plane")?;
        for r in &self.rows {
            writeln!(f, "{:>6}  {}", r.plane, r.span)?;
        }
        Ok(())
    }
}

/// Expresses each chain plane through the numbered lines. `plane_labels`
/// names the planes (vertex numbers for graph chains).
pub fn span_table(
    chain: &PlaneConfig,
    plane_labels: &[usize],
    numbering: &LineNumbering,
) -> Result<SpanTable, PlaneError> {
    let mut rows = Vec::with_capacity(chain.facets.len());
    for (i, f) in chain.facets.iter().enumerate() {
        let lines: Vec<usize> = f
            .iter()
            .copied()
            .tuple_combinations()
            .filter_map(|(a, b)| numbering.line_index(a, b))
            .collect();
        let span =
            match lines.as_slice() {
                [a, b] => Span::lines(*a, *b),
                [l] => {
                    let on_line = numbering.line(*l);
                    let other = f.iter().copied().find(|x| !on_line.contains(x)).ok_or(
                        PlaneError::NoSpan {
                            plane: plane_labels[i],
                        },
                    )?;
                    let p = numbering.point_index(other).ok_or(PlaneError::NoSpan {
                        plane: plane_labels[i],
                    })?;
                    Span::point_line(p, *l)
                }
                _ => {
                    return Err(PlaneError::NoSpan {
                        plane: plane_labels[i],
                    })
                }
            };
        rows.push(SpanRow {
            plane: plane_labels[i],
            span,
        });
    }
    Ok(SpanTable { rows })
}

/// Rebuilds the embedded trivalent graph dual to a triangulated sphere.
///
/// Facet i becomes vertex i. Triangles are oriented consistently by
/// breadth-first search; the rotation at a triangle (a, b, c) lists the edges
/// across sides ab, bc, ca.
pub fn dual_graph(config: &PlaneConfig) -> Result<TrivalentPlanarGraph, PlaneError> {
    let n = config.facets.len();
    let mut side_owners: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
    for (i, f) in config.facets.iter().enumerate() {
        if f.len() != 3 {
            return Err(PlaneError::NotPure);
        }
        for (a, b) in f.iter().copied().tuple_combinations() {
            side_owners.entry([a, b]).or_default().push(i);
        }
    }
    for (side, owners) in &side_owners {
        if owners.len() != 2 {
            return Err(PlaneError::NotASurface {
                side: *side,
                count: owners.len(),
            });
        }
    }

    let mut oriented: Vec<Option<[usize; 3]>> = vec![None; n];
    if n == 0 {
        return Err(PlaneError::Dual("no facets".into()));
    }
    let f0 = &config.facets[0];
    oriented[0] = Some([f0[0], f0[1], f0[2]]);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let t = oriented[i].unwrap();
        for s in 0..3 {
            let (a, b) = (t[s], t[(s + 1) % 3]);
            let key = [a.min(b), a.max(b)];
            let j = side_owners[&key].iter().copied().find(|&x| x != i).unwrap();
            let c = config.facets[j]
                .iter()
                .copied()
                .find(|x| *x != a && *x != b)
                .unwrap();
            // the neighbour runs the shared side the other way: (b, a, c)
            let want = [b, a, c];
            match oriented[j] {
                None => {
                    oriented[j] = Some(want);
                    queue.push_back(j);
                }
                Some(o) => {
                    if !same_cyclic(o, want) {
                        return Err(PlaneError::NotOrientable);
                    }
                }
            }
        }
    }
    if oriented.iter().any(Option::is_none) {
        return Err(PlaneError::Dual(
            "facets are not connected through sides".into(),
        ));
    }

    let mut edge_of: BTreeMap<[usize; 2], usize> = BTreeMap::new();
    let mut edges = Vec::new();
    for (side, owners) in &side_owners {
        let (u, v) = (owners[0].min(owners[1]), owners[0].max(owners[1]));
        edge_of.insert(*side, edges.len());
        edges.push([u, v]);
    }
    // number edges by endpoint pair rather than by side
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&e| edges[e]);
    let mut renumber = vec![0; edges.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }
    let sorted_edges: Vec<[usize; 2]> = order.iter().map(|&e| edges[e]).collect();
    let rotation: Vec<Vec<usize>> = oriented
        .iter()
        .map(|t| {
            let t = t.unwrap();
            (0..3)
                .map(|s| {
                    let (a, b) = (t[s], t[(s + 1) % 3]);
                    renumber[edge_of[&[a.min(b), a.max(b)]]]
                })
                .collect()
        })
        .collect();
    TrivalentPlanarGraph::new(sorted_edges, rotation).map_err(|e| PlaneError::Dual(e.to_string()))
}

fn same_cyclic(a: [usize; 3], b: [usize; 3]) -> bool {
    (0..3).any(|r| (0..3).all(|i| a[(i + r) % 3] == b[i]))
}
