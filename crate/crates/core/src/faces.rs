//! Face extraction from a rotation system.

use serde::Serialize;
use thiserror::Error;

/// An edge traversed in one direction. `forward` means from `edges[e][0]`
/// to `edges[e][1]` as stored, which need not be low to high.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dart {
    pub edge: usize,
    pub forward: bool,
}

impl Dart {
    pub fn index(self) -> usize {
        2 * self.edge + usize::from(!self.forward)
    }

    pub fn tail(self, edges: &[[usize; 2]]) -> usize {
        let [u, v] = edges[self.edge];
        if self.forward {
            u
        } else {
            v
        }
    }

    pub fn head(self, edges: &[[usize; 2]]) -> usize {
        let [u, v] = edges[self.edge];
        if self.forward {
            v
        } else {
            u
        }
    }

    /// +1 when the dart runs from the lower to the higher vertex index.
    pub fn sign(self, edges: &[[usize; 2]]) -> i64 {
        if self.tail(edges) < self.head(edges) {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FaceError {
    #[error("rotation at vertex {vertex} is not a permutation of its incident edges")]
    NotAPermutation { vertex: usize },
    #[error("rotation lists {vertices} vertices but the graph has {expected}")]
    WrongVertexCount { vertices: usize, expected: usize },
}

/// Closed walks of a rotation system, indexed in order of discovery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    walks: Vec<Vec<Dart>>,
    dart_face: Vec<usize>,
}

impl FaceSet {
    /// Traces the faces of an embedded graph.
    ///
    /// Entering vertex `h` along edge `e`, the walk leaves along the successor
    /// of `e` in the rotation at `h`. Faces are numbered by their first dart
    /// in the order edge 0 forward, edge 0 backward, edge 1 forward, ...
    pub fn trace(edges: &[[usize; 2]], rotation: &[Vec<usize>]) -> Result<Self, FaceError> {
        let n = rotation.len();
        let mut incident = vec![Vec::new(); n];
        for (e, &[u, v]) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(FaceError::WrongVertexCount {
                    vertices: n,
                    expected: u.max(v) + 1,
                });
            }
            incident[u].push(e);
            incident[v].push(e);
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut a = rot.clone();
            let mut b = incident[v].clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Err(FaceError::NotAPermutation { vertex: v });
            }
        }

        let unset = usize::MAX;
        let mut dart_face = vec![unset; 2 * edges.len()];
        let mut walks = Vec::new();
        for e in 0..edges.len() {
            for forward in [true, false] {
                let start = Dart { edge: e, forward };
                if dart_face[start.index()] != unset {
                    continue;
                }
                let face = walks.len();
                let mut walk = Vec::new();
                let mut cur = start;
                while dart_face[cur.index()] == unset {
                    dart_face[cur.index()] = face;
                    walk.push(cur);
                    let h = cur.head(edges);
                    let rot = &rotation[h];
                    let i = rot
                        .iter()
                        .position(|&x| x == cur.edge)
                        .expect("rotation checked");
                    let next = rot[(i + 1) % rot.len()];
                    // a loop edge would be ambiguous here; simple graphs never hit it
                    cur = Dart {
                        edge: next,
                        forward: edges[next][0] == h,
                    };
                }
                walks.push(walk);
            }
        }
        Ok(FaceSet { walks, dart_face })
    }

    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }

    pub fn walk(&self, face: usize) -> &[Dart] {
        &self.walks[face]
    }

    pub fn walks(&self) -> &[Vec<Dart>] {
        &self.walks
    }

    pub fn face_of(&self, dart: Dart) -> usize {
        self.dart_face[dart.index()]
    }

    /// Faces on the left and right of an edge: the faces of its forward and
    /// backward darts.
    pub fn edge_faces(&self, edge: usize) -> [usize; 2] {
        [
            self.face_of(Dart {
                edge,
                forward: true,
            }),
            self.face_of(Dart {
                edge,
                forward: false,
            }),
        ]
    }

    /// Faces at the corners of `v`: one per dart leaving `v`, in rotation order.
    pub fn vertex_faces(&self, v: usize, edges: &[[usize; 2]], rotation: &[usize]) -> Vec<usize> {
        rotation
            .iter()
            .map(|&e| {
                self.face_of(Dart {
                    edge: e,
                    forward: edges[e][0] == v,
                })
            })
            .collect()
    }

    /// Signed edge vector of a face boundary, low-to-high orientation.
    pub fn boundary(&self, face: usize, edges: &[[usize; 2]]) -> Vec<i64> {
        let mut vec = vec![0i64; edges.len()];
        for d in &self.walks[face] {
            vec[d.edge] += d.sign(edges);
        }
        vec
    }

    /// Vertex sequence of a face walk, starting at the tail of its first dart.
    pub fn vertices(&self, face: usize, edges: &[[usize; 2]]) -> Vec<usize> {
        self.walks[face].iter().map(|d| d.tail(edges)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // K4 with vertex 0 in the centre of triangle 1,2,3
    fn k4() -> (Vec<[usize; 2]>, Vec<Vec<usize>>) {
        let edges = vec![[0, 1], [0, 2], [0, 3], [1, 2], [2, 3], [1, 3]];
        let rotation = vec![vec![0, 1, 2], vec![0, 5, 3], vec![1, 3, 4], vec![2, 4, 5]];
        (edges, rotation)
    }

    #[test]
    fn k4_has_four_triangles() {
        let (edges, rot) = k4();
        let f = FaceSet::trace(&edges, &rot).unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.walks().iter().all(|w| w.len() == 3));
    }

    #[test]
    fn every_dart_in_exactly_one_walk() {
        let (edges, rot) = k4();
        let f = FaceSet::trace(&edges, &rot).unwrap();
        let mut seen = vec![0; 2 * edges.len()];
        for w in f.walks() {
            for d in w {
                seen[d.index()] += 1;
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn boundaries_sum_to_zero() {
        let (edges, rot) = k4();
        let f = FaceSet::trace(&edges, &rot).unwrap();
        let mut total = vec![0; edges.len()];
        for i in 0..f.len() {
            for (t, b) in total.iter_mut().zip(f.boundary(i, &edges)) {
                *t += b;
            }
        }
        assert!(total.iter().all(|&x| x == 0));
    }

    #[test]
    fn rotation_with_foreign_edge_rejected() {
        let (edges, mut rot) = k4();
        rot[0] = vec![0, 1, 3];
        assert_eq!(
            FaceSet::trace(&edges, &rot),
            Err(FaceError::NotAPermutation { vertex: 0 })
        );
    }

    #[test]
    fn nonplanar_rotation_gives_fewer_faces() {
        let (edges, mut rot) = k4();
        rot[0] = vec![0, 2, 1];
        let f = FaceSet::trace(&edges, &rot).unwrap();
        assert_eq!(f.len(), 2);
    }
}
