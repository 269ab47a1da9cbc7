//! Canonical vertex ordering for small labeled multigraphs.
//!
//! Two isomorphic graphs (same vertex labels, same labeled/directed edge
//! structure) canonicalize to byte-identical serializations, which gives
//! duplicate detection a stable key and makes encoding bit-counts a
//! function of the isomorphism class rather than of construction order.
//!
//! The search greedily minimizes, position by position, a per-vertex row
//! code (vertex label, then the edge cells back to every earlier position),
//! branching on ties. Exact up to [`EXACT_LIMIT`] vertices; beyond that a
//! deterministic heuristic order is used, which is stable for a given graph
//! but no longer isomorphism-invariant.

use crate::graph::{GraphBuilder, Label, LabeledGraph};

/// Largest vertex count for which the exact minimal ordering is computed.
pub const EXACT_LIMIT: usize = 16;

/// Edge orientation relative to an ordered vertex pair (earlier, later).
fn dir_class(src: usize, dst: usize, directed: bool, earlier: usize, later: usize) -> u8 {
    if !directed {
        0
    } else if src == earlier && dst == later {
        1
    } else {
        2
    }
}

/// Sorted code for the edge cell between `a` (earlier) and `b` (later or
/// equal, for self-loops), as (label index, direction class) pairs.
fn cell_code(g: &LabeledGraph, a: usize, b: usize) -> Vec<(usize, u8)> {
    let mut cell: Vec<(usize, u8)> = g
        .incident_edges(b)
        .iter()
        .map(|&e| g.edge(e))
        .filter(|e| (e.src == a && e.dst == b) || (e.src == b && e.dst == a))
        .filter(|e| a != b || e.src == e.dst)
        .filter(|e| a == b || e.src != e.dst)
        .map(|e| {
            let label = g.label_index(&e.label).expect("label in table");
            (label, dir_class(e.src, e.dst, e.directed, a, b))
        })
        .collect();
    cell.sort_unstable();
    cell
}

/// Row code of candidate vertex `v` when placed after `prefix`.
fn row_code(g: &LabeledGraph, prefix: &[usize], v: usize) -> Vec<(usize, u8)> {
    let mut code = vec![(g.label_index(&g.vertex(v).label).expect("label"), 3u8)];
    for &p in prefix {
        code.push((usize::MAX, 4)); // cell separator
        code.extend(cell_code(g, p, v));
    }
    code.push((usize::MAX, 4));
    code.extend(cell_code(g, v, v));
    code
}

fn search(
    g: &LabeledGraph,
    prefix: &mut Vec<usize>,
    used: &mut Vec<bool>,
    code: &mut Vec<(usize, u8)>,
    best: &mut Option<(Vec<(usize, u8)>, Vec<usize>)>,
) {
    let n = g.vertex_count();
    if prefix.len() == n {
        let better = match best {
            None => true,
            Some((bc, _)) => code.as_slice() < bc.as_slice(),
        };
        if better {
            *best = Some((code.clone(), prefix.clone()));
        }
        return;
    }
    // Keep only candidates attaining the minimal row code at this position.
    let mut min_code: Option<Vec<(usize, u8)>> = None;
    let mut ties: Vec<usize> = Vec::new();
    for v in 0..n {
        if used[v] {
            continue;
        }
        let rc = row_code(g, prefix, v);
        match &min_code {
            None => {
                min_code = Some(rc);
                ties = vec![v];
            }
            Some(mc) => {
                if rc < *mc {
                    min_code = Some(rc);
                    ties = vec![v];
                } else if rc == *mc {
                    ties.push(v);
                }
            }
        }
    }
    let rc = min_code.expect("at least one unused vertex");
    // A longer minimal prefix can never beat a shorter lexicographically
    // smaller one, so once best is set we only need tie exploration.
    let mark = code.len();
    code.extend_from_slice(&rc);
    for v in ties {
        prefix.push(v);
        used[v] = true;
        search(g, prefix, used, code, best);
        used[v] = false;
        prefix.pop();
    }
    code.truncate(mark);
}

fn heuristic_order(g: &LabeledGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by(|&a, &b| {
        g.vertex(a)
            .label
            .cmp(&g.vertex(b).label)
            .then(g.degree(b).cmp(&g.degree(a)))
            .then(a.cmp(&b))
    });
    order
}

/// Rebuild `g` with vertices in canonical order and external ids reassigned
/// to `0..n-1`. Returns the canonical graph and the map from canonical
/// position to original vertex index.
pub fn canonical_form(g: &LabeledGraph) -> (LabeledGraph, Vec<usize>) {
    let n = g.vertex_count();
    let order = if n == 0 {
        Vec::new()
    } else if n <= EXACT_LIMIT {
        let mut best = None;
        search(
            g,
            &mut Vec::with_capacity(n),
            &mut vec![false; n],
            &mut Vec::new(),
            &mut best,
        );
        best.expect("nonempty graph").1
    } else {
        heuristic_order(g)
    };

    let mut pos_of = vec![0usize; n];
    for (pos, &old) in order.iter().enumerate() {
        pos_of[old] = pos;
    }
    let mut builder = GraphBuilder::new();
    for (pos, &old) in order.iter().enumerate() {
        builder
            .add_vertex(pos as i64, g.vertex(old).label.clone())
            .expect("fresh ids");
    }
    let mut new_edges: Vec<(usize, usize, Label, bool)> = g
        .edges()
        .iter()
        .map(|e| (pos_of[e.src], pos_of[e.dst], e.label.clone(), e.directed))
        .collect();
    new_edges.sort_by(|a, b| {
        let ka = (a.0.min(a.1), a.0.max(a.1), &a.2, a.3, a.0);
        let kb = (b.0.min(b.1), b.0.max(b.1), &b.2, b.3, b.0);
        ka.cmp(&kb)
    });
    for (src, dst, label, directed) in new_edges {
        builder
            .add_edge_by_index(src, dst, label, directed)
            .expect("valid endpoints");
    }
    (builder.build(), order)
}

/// Canonical serialization, usable as an isomorphism-class key for graphs
/// within [`EXACT_LIMIT`].
pub fn canonical_key(g: &LabeledGraph) -> String {
    crate::graph::serialize_graph(&canonical_form(g).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    #[test]
    fn isomorphic_orderings_share_a_key() {
        let a = parse_graph("v 1 a\nv 2 b\nv 3 c\nu 1 2 x\nu 2 3 y").unwrap();
        let b = parse_graph("v 9 c\nv 7 b\nv 5 a\nu 7 5 x\nu 9 7 y").unwrap();
        assert_eq!(canonical_key(&a), canonical_key(&b));
    }

    #[test]
    fn direction_distinguishes() {
        let a = parse_graph("v 1 a\nv 2 a\nd 1 2 x").unwrap();
        let b = parse_graph("v 1 a\nv 2 a\nu 1 2 x").unwrap();
        assert_ne!(canonical_key(&a), canonical_key(&b));
    }

    #[test]
    fn parallel_edges_counted() {
        let a = parse_graph("v 1 a\nv 2 a\nu 1 2 x\nu 1 2 x").unwrap();
        let b = parse_graph("v 1 a\nv 2 a\nu 1 2 x").unwrap();
        assert_ne!(canonical_key(&a), canonical_key(&b));
    }

    #[test]
    fn self_loops_participate() {
        let a = parse_graph("v 1 a\nv 2 a\nu 1 1 x").unwrap();
        let b = parse_graph("v 1 a\nv 2 a\nu 2 2 x").unwrap();
        assert_eq!(canonical_key(&a), canonical_key(&b));
    }

    #[test]
    fn perm_maps_canonical_to_original() {
        let g = parse_graph("v 4 b\nv 8 a\nu 4 8 x").unwrap();
        let (canon, order) = canonical_form(&g);
        for (pos, &old) in order.iter().enumerate() {
            assert_eq!(canon.vertex(pos).label, g.vertex(old).label);
        }
    }
}
