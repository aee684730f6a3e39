//! Straight-line SVG drawings.
//!
//! The largest face is pinned to a circle and every other vertex sits at the
//! average of its neighbours (Tutte's barycentric layout), which is planar
//! for 3-connected graphs.

use std::fmt::Write as _;

use gcg::{ChainDecomposition, TrivalentPlanarGraph};

const SIZE: f64 = 600.0;
const RADIUS: f64 = 260.0;

fn layout(graph: &TrivalentPlanarGraph) -> (Vec<(f64, f64)>, usize) {
    let faces = graph.faces();
    let outer = (0..faces.len())
        .max_by_key(|&f| (faces.walk(f).len(), std::cmp::Reverse(f)))
        .unwrap_or(0);
    let ring = faces.vertices(outer, graph.edges());
    let c = SIZE / 2.0;
    let mut pos = vec![(c, c); graph.vertex_count()];
    let mut pinned = vec![false; graph.vertex_count()];
    for (i, &v) in ring.iter().enumerate() {
        let a = std::f64::consts::TAU * i as f64 / ring.len() as f64;
        pos[v] = (c + RADIUS * a.cos(), c - RADIUS * a.sin());
        pinned[v] = true;
    }
    for _ in 0..4000 {
        for v in 0..graph.vertex_count() {
            if pinned[v] {
                continue;
            }
            let n = graph.neighbors(v);
            let (sx, sy) = n
                .iter()
                .fold((0.0, 0.0), |(x, y), &w| (x + pos[w].0, y + pos[w].1));
            pos[v] = (sx / 3.0, sy / 3.0);
        }
    }
    (pos, outer)
}

/// Renders the graph. With a decomposition, vertices are coloured by part,
/// crossing edges are dashed, and a dotted curve runs through the crossing
/// edges face by face.
pub fn export_svg(graph: &TrivalentPlanarGraph, decomp: Option<&ChainDecomposition>) -> String {
    let (pos, outer) = layout(graph);
    let colors = decomp.map(|d| d.colors());
    let crossing: Vec<usize> = decomp.map(|d| d.crossing_edges(graph)).unwrap_or_default();
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(s, "<title>genus {} graph</title>", graph.genus()).unwrap();
    s.push_str(
        "<style>line{stroke:#333;stroke-width:2}line.crossing{stroke-dasharray:6 4}\
         circle{stroke:#111;fill:#fff}circle.a{fill:#d62728}circle.b{fill:#1f77b4}\
         path.cut{fill:none;stroke:#2ca02c;stroke-width:1.5;stroke-dasharray:2 3}\
         text{font:11px sans-serif;text-anchor:middle}</style>\n",
    );
    for (e, &[u, v]) in graph.edges().iter().enumerate() {
        let class = if crossing.contains(&e) {
            r#" class="crossing""#
        } else {
            ""
        };
        writeln!(
            s,
            r#"<line{class} x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            pos[u].0, pos[u].1, pos[v].0, pos[v].1
        )
        .unwrap();
    }
    if !crossing.is_empty() {
        if let Some(d) = cut_path(graph, &crossing, &pos, outer) {
            writeln!(s, r#"<path class="cut" d="{d}"/>"#).unwrap();
        }
    }
    for (v, &(x, y)) in pos.iter().enumerate() {
        let class = match &colors {
            Some(c) if c[v] == 0 => r#" class="a""#,
            Some(_) => r#" class="b""#,
            None => "",
        };
        writeln!(s, r#"<circle{class} cx="{x:.2}" cy="{y:.2}" r="9"/>"#).unwrap();
        writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}">{}</text>"#,
            y - 12.0,
            v + 1
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

/// Each face holds exactly two crossing edges; chaining them gives a closed
/// curve. Segments in the outer face detour around the drawing.
fn cut_path(
    graph: &TrivalentPlanarGraph,
    crossing: &[usize],
    pos: &[(f64, f64)],
    outer: usize,
) -> Option<String> {
    let faces = graph.faces();
    let mid = |e: usize| {
        let [u, v] = graph.edge(e);
        ((pos[u].0 + pos[v].0) / 2.0, (pos[u].1 + pos[v].1) / 2.0)
    };
    let in_face = |f: usize| -> Vec<usize> {
        crossing
            .iter()
            .copied()
            .filter(|&e| faces.edge_faces(e).contains(&f))
            .collect()
    };
    let start = crossing[0];
    let mut e = start;
    let mut f = faces.edge_faces(e)[0];
    let (x0, y0) = mid(e);
    let mut d = format!("M{x0:.2},{y0:.2}");
    for _ in 0..crossing.len() {
        let both = in_face(f);
        if both.len() != 2 {
            return None;
        }
        let next = if both[0] == e { both[1] } else { both[0] };
        let (x, y) = mid(next);
        if f == outer {
            let c = SIZE / 2.0;
            let r = RADIUS + 24.0;
            let push = |(px, py): (f64, f64)| {
                let a = (py - c).atan2(px - c);
                (c + r * a.cos(), c + r * a.sin())
            };
            let (ax, ay) = push(mid(e));
            let (bx, by) = push((x, y));
            write!(
                d,
                " L{ax:.2},{ay:.2} A{r:.2},{r:.2} 0 0 1 {bx:.2},{by:.2} L{x:.2},{y:.2}"
            )
            .unwrap();
        } else {
            write!(d, " L{x:.2},{y:.2}").unwrap();
        }
        let fs = faces.edge_faces(next);
        f = if fs[0] == f { fs[1] } else { fs[0] };
        e = next;
        if e == start {
            break;
        }
    }
    d.push_str(" Z");
    Some(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_has_four_nodes() {
        let edges = vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
        let rotation = vec![vec![0, 1, 2], vec![0, 4, 3], vec![1, 3, 5], vec![2, 5, 4]];
        let g = TrivalentPlanarGraph::new(edges, rotation).unwrap();
        let svg = export_svg(&g, None);
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches("<line").count(), 6);
        assert!(!svg.contains("class=\"cut\""));
    }
}
