//! Trivalent planar graphs with a supplied rotation system.
//!
//! Vertices are 0-based internally. The JSON file format and all text
//! output use 1-based labels `v1..v_{2g-2}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectivity;
use crate::faces::FaceSet;
use crate::SCHEMA;

/// Input or shape problems: the data cannot even be read as a graph.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeError {
    #[error("edge {edge} has endpoint {vertex} outside 1..={vertices}")]
    EndpointOutOfRange {
        edge: usize,
        vertex: usize,
        vertices: usize,
    },
    #[error("rotation key {0:?} is not a vertex label")]
    BadRotationKey(String),
    #[error("rotation missing for vertex v{0}")]
    MissingRotation(usize),
    #[error("rotation at v{vertex} names edge {edge}, but there are only {edges} edges")]
    RotationEdgeOutOfRange {
        vertex: usize,
        edge: usize,
        edges: usize,
    },
    #[error("rotation at v{vertex} names edge {edge}, which is not incident to it")]
    RotationMismatch { vertex: usize, edge: usize },
    #[error("invalid JSON: {0}")]
    Json(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("graph failed validation: {}", .0.failures().join("; "))]
    Invalid(ValidationReport),
}

/// Raw candidate data, possibly invalid. 0-based vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphData {
    pub vertex_count: usize,
    pub edges: Vec<[usize; 2]>,
    pub rotation: Vec<Vec<usize>>,
    pub declared_genus: Option<usize>,
}

/// On-disk graph format. Fields are declared in key order so output is
/// sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub edges: Vec<[usize; 2]>,
    pub genus: usize,
    pub rotation: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub vertices: usize,
}

impl GraphData {
    pub fn from_file(file: &GraphFile) -> Result<Self, ShapeError> {
        let n = file.vertices;
        let mut edges = Vec::with_capacity(file.edges.len());
        for (e, &[u, v]) in file.edges.iter().enumerate() {
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(ShapeError::EndpointOutOfRange {
                        edge: e,
                        vertex: x,
                        vertices: n,
                    });
                }
            }
            edges.push([u - 1, v - 1]);
        }
        let mut rotation: Vec<Option<Vec<usize>>> = vec![None; n];
        for (key, rot) in &file.rotation {
            let v: usize = key
                .trim_start_matches('v')
                .parse()
                .map_err(|_| ShapeError::BadRotationKey(key.clone()))?;
            if v == 0 || v > n {
                return Err(ShapeError::BadRotationKey(key.clone()));
            }
            rotation[v - 1] = Some(rot.clone());
        }
        let rotation = rotation
            .into_iter()
            .enumerate()
            .map(|(v, r)| r.ok_or(ShapeError::MissingRotation(v + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        let data = GraphData {
            vertex_count: n,
            edges,
            rotation,
            declared_genus: Some(file.genus),
        };
        data.check_shape()?;
        Ok(data)
    }

    pub fn from_json(text: &str) -> Result<Self, ShapeError> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| ShapeError::Json(e.to_string()))?;
        Self::from_file(&file)
    }

    fn check_shape(&self) -> Result<(), ShapeError> {
        for (v, rot) in self.rotation.iter().enumerate() {
            for &e in rot {
                if e >= self.edges.len() {
                    return Err(ShapeError::RotationEdgeOutOfRange {
                        vertex: v + 1,
                        edge: e,
                        edges: self.edges.len(),
                    });
                }
                if !self.edges[e].contains(&v) {
                    return Err(ShapeError::RotationMismatch {
                        vertex: v + 1,
                        edge: e,
                    });
                }
            }
        }
        Ok(())
    }

    fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (e, &[u, v]) in self.edges.iter().enumerate() {
            inc[u].push(e);
            if v != u {
                inc[v].push(e);
            }
        }
        inc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Simple,
    Trivalent,
    Connected,
    EdgeCount,
    Genus,
    Rotation,
    Planar,
    DistinctAdjacentFaces,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckKind::Simple => "simple",
            CheckKind::Trivalent => "trivalent",
            CheckKind::Connected => "connected",
            CheckKind::EdgeCount => "edge count 2|E| = 3|V|",
            CheckKind::Genus => "genus",
            CheckKind::Rotation => "rotation",
            CheckKind::Planar => "planar (Euler)",
            CheckKind::DistinctAdjacentFaces => "distinct adjacent faces",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub detail: String,
    pub kind: CheckKind,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub genus: Option<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn passed(&self, kind: CheckKind) -> bool {
        self.checks.iter().any(|c| c.kind == kind && c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.kind, c.detail))
            .collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "{mark} {:<24} {}", c.kind.to_string(), c.detail)?;
        }
        Ok(())
    }
}

/// Validates candidate data. Shape problems were already rejected when the
/// data was built from a file; everything here is a semantic check.
pub fn validate(data: &GraphData) -> ValidationReport {
    let n = data.vertex_count;
    let m = data.edges.len();
    let inc = data.incidence();
    let mut checks = Vec::new();
    let mut push = |kind, passed, detail: String| {
        checks.push(Check {
            detail,
            kind,
            passed,
        })
    };

    let loops: Vec<usize> = (0..m)
        .filter(|&e| data.edges[e][0] == data.edges[e][1])
        .collect();
    let mut seen = BTreeSet::new();
    let repeats: Vec<usize> = (0..m)
        .filter(|&e| {
            let [u, v] = data.edges[e];
            !seen.insert((u.min(v), u.max(v)))
        })
        .collect();
    push(
        CheckKind::Simple,
        loops.is_empty() && repeats.is_empty(),
        if loops.is_empty() && repeats.is_empty() {
            "no loops or repeated edges".into()
        } else {
            format!("loop edges {loops:?}, repeated edges {repeats:?}")
        },
    );

    let bad_degree: Vec<String> = (0..n)
        .filter(|&v| inc[v].len() != 3)
        .map(|v| format!("v{} has degree {}", v + 1, inc[v].len()))
        .collect();
    push(
        CheckKind::Trivalent,
        bad_degree.is_empty(),
        if bad_degree.is_empty() {
            "every vertex has degree 3".into()
        } else {
            bad_degree.join(", ")
        },
    );

    let connected = n > 0 && connectivity::component_count(n, &data.edges) == 1;
    push(
        CheckKind::Connected,
        connected,
        if connected {
            "one component".into()
        } else {
            "disconnected".into()
        },
    );

    push(
        CheckKind::EdgeCount,
        2 * m == 3 * n,
        format!("|V| = {n}, |E| = {m}"),
    );

    let genus = if n.is_multiple_of(2) && n >= 4 && 2 * m == 3 * n {
        Some(n / 2 + 1)
    } else {
        None
    };
    let genus_ok = match (genus, data.declared_genus) {
        (Some(g), Some(d)) => g == d,
        (Some(_), None) => true,
        _ => false,
    };
    push(
        CheckKind::Genus,
        genus_ok,
        match (genus, data.declared_genus) {
            (Some(g), Some(d)) if g != d => format!("counts give genus {g}, declared {d}"),
            (Some(g), _) => format!("g = {g}"),
            (None, _) => "no integer g >= 3 with |V| = 2g-2 and |E| = 3g-3".into(),
        },
    );

    let rot_bad: Vec<String> = (0..n)
        .filter(|&v| {
            let mut a = data.rotation[v].clone();
            let mut b = inc[v].clone();
            a.sort_unstable();
            b.sort_unstable();
            a != b || a.len() != 3
        })
        .map(|v| format!("v{}", v + 1))
        .collect();
    let rot_ok = rot_bad.is_empty() && data.rotation.len() == n;
    push(
        CheckKind::Rotation,
        rot_ok,
        if rot_ok {
            "each rotation lists the 3 incident edges once".into()
        } else {
            format!("bad rotation at {}", rot_bad.join(", "))
        },
    );

    let faces = if rot_ok && loops.is_empty() {
        FaceSet::trace(&data.edges, &data.rotation).ok()
    } else {
        None
    };
    match &faces {
        Some(f) => {
            let expected = (m + 2).checked_sub(n);
            let planar = connected && expected == Some(f.len());
            push(
                CheckKind::Planar,
                planar,
                format!(
                    "{} faces, Euler predicts {}",
                    f.len(),
                    m as i64 - n as i64 + 2
                ),
            );
            let bad: Vec<String> = (0..n)
                .filter(|&v| {
                    let fs = f.vertex_faces(v, &data.edges, &data.rotation[v]);
                    fs.iter().collect::<BTreeSet<_>>().len() != fs.len()
                })
                .map(|v| format!("v{}", v + 1))
                .collect();
            push(
                CheckKind::DistinctAdjacentFaces,
                bad.is_empty(),
                if bad.is_empty() {
                    "three different faces at every vertex".into()
                } else {
                    format!("repeated face at {}", bad.join(", "))
                },
            );
        }
        None => {
            push(
                CheckKind::Planar,
                false,
                "skipped: rotation not well formed".into(),
            );
            push(
                CheckKind::DistinctAdjacentFaces,
                false,
                "skipped: rotation not well formed".into(),
            );
        }
    }

    ValidationReport { checks, genus }
}

/// A validated trivalent graph with planar rotation system and its faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivalentPlanarGraph {
    edges: Vec<[usize; 2]>,
    rotation: Vec<[usize; 3]>,
    genus: usize,
    faces: FaceSet,
}

impl TrivalentPlanarGraph {
    /// Builds and validates. `rotation[v]` is the counterclockwise order of
    /// edges at `v`.
    pub fn new(edges: Vec<[usize; 2]>, rotation: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let data = GraphData {
            vertex_count: rotation.len(),
            edges,
            rotation,
            declared_genus: None,
        };
        Self::from_data(data)
    }

    pub fn from_data(data: GraphData) -> Result<Self, GraphError> {
        for &[u, v] in &data.edges {
            for x in [u, v] {
                if x >= data.vertex_count {
                    return Err(ShapeError::EndpointOutOfRange {
                        edge: 0,
                        vertex: x + 1,
                        vertices: data.vertex_count,
                    }
                    .into());
                }
            }
        }
        if data.rotation.len() != data.vertex_count {
            return Err(ShapeError::MissingRotation(data.rotation.len() + 1).into());
        }
        data.check_shape()?;
        let report = validate(&data);
        if !report.is_valid() {
            return Err(GraphError::Invalid(report));
        }
        let faces = FaceSet::trace(&data.edges, &data.rotation).expect("validated rotation");
        Ok(TrivalentPlanarGraph {
            genus: report.genus.expect("validated genus"),
            rotation: data.rotation.iter().map(|r| [r[0], r[1], r[2]]).collect(),
            edges: data.edges,
            faces,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        Self::from_data(GraphData::from_json(text)?)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    /// Endpoints ordered low to high.
    pub fn oriented(&self, e: usize) -> (usize, usize) {
        let [u, v] = self.edges[e];
        (u.min(v), u.max(v))
    }

    pub fn rotation(&self, v: usize) -> [usize; 3] {
        self.rotation[v]
    }

    pub fn faces(&self) -> &FaceSet {
        &self.faces
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Neighbours of `v` in rotation order.
    pub fn neighbors(&self, v: usize) -> [usize; 3] {
        self.rotation[v].map(|e| self.other_end(e, v))
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.rotation[u]
            .iter()
            .copied()
            .find(|&e| self.other_end(e, u) == v)
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    /// The three faces around `v`, in rotation order.
    pub fn vertex_faces(&self, v: usize) -> [usize; 3] {
        let f = self.faces.vertex_faces(v, &self.edges, &self.rotation[v]);
        [f[0], f[1], f[2]]
    }

    pub fn to_data(&self) -> GraphData {
        GraphData {
            vertex_count: self.vertex_count(),
            edges: self.edges.clone(),
            rotation: self.rotation.iter().map(|r| r.to_vec()).collect(),
            declared_genus: Some(self.genus),
        }
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            edges: self.edges.iter().map(|&[u, v]| [u + 1, v + 1]).collect(),
            genus: self.genus,
            rotation: self
                .rotation
                .iter()
                .enumerate()
                .map(|(v, r)| ((v + 1).to_string(), r.to_vec()))
                .collect(),
            schema: Some(SCHEMA.to_string()),
            vertices: self.vertex_count(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("graph serializes")
    }

    /// Graphviz export. Faces are listed as comments.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        writeln!(s, "graph G{} {{", self.genus).unwrap();
        writeln!(
            s,
            "  // genus {}, {} vertices, {} edges, {} faces",
            self.genus,
            self.vertex_count(),
            self.edge_count(),
            self.faces.len()
        )
        .unwrap();
        for f in 0..self.faces.len() {
            let vs: Vec<String> = self
                .faces
                .vertices(f, &self.edges)
                .iter()
                .map(|v| format!("v{}", v + 1))
                .collect();
            writeln!(s, "  // face {f}: {}", vs.join(" ")).unwrap();
        }
        for v in 0..self.vertex_count() {
            writeln!(s, "  v{};", v + 1).unwrap();
        }
        for (e, &[u, v]) in self.edges.iter().enumerate() {
            let [l, r] = self.faces.edge_faces(e);
            writeln!(s, "  v{} -- v{}; // e{e}, faces {l} {r}", u + 1, v + 1).unwrap();
        }
        s.push_str("}\n");
        s
    }
}
