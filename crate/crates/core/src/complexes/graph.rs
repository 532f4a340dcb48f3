//! Metric graphs (vertex links) with edge lengths in units of π/3.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;

/// Edge lengths are integer multiples of π/3, so a full turn is 6.
pub const FULL_TURN: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightedEdge {
    pub a: usize,
    pub b: usize,
    pub weight: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricGraph {
    pub node_count: usize,
    pub edges: Vec<WeightedEdge>,
}

impl MetricGraph {
    /// Normalises each edge to `a < b` and sorts. Loops and repeated edges
    /// are kept out by the callers.
    pub fn new(node_count: usize, edges: impl IntoIterator<Item = (usize, usize, u32)>) -> Self {
        let mut edges: Vec<WeightedEdge> = edges
            .into_iter()
            .map(|(a, b, weight)| {
                assert!(a < node_count && b < node_count && a != b, "bad edge {a}-{b}");
                assert!(weight > 0, "nonpositive weight");
                WeightedEdge { a: a.min(b), b: a.max(b), weight }
            })
            .collect();
        edges.sort();
        edges.dedup();
        MetricGraph { node_count, edges }
    }

    /// Every edge with unit weight.
    pub fn unit(node_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        MetricGraph::new(node_count, edges.into_iter().map(|(a, b)| (a, b, 1)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let mut adj = vec![Vec::new(); self.node_count];
        for e in &self.edges {
            adj[e.a].push((e.b, e.weight));
            adj[e.b].push((e.a, e.weight));
        }
        for list in &mut adj {
            list.sort();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency().iter().map(Vec::len).collect()
    }

    /// `Some(d)` when every node has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let degrees = self.degrees();
        let first = *degrees.first()?;
        degrees.iter().all(|&d| d == first).then_some(first)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let (a, b) = (a.min(b), a.max(b));
        self.edges.iter().any(|e| e.a == a && e.b == b)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_without(None)
    }

    fn connected_without(&self, removed: Option<usize>) -> bool {
        let adj = self.adjacency();
        let Some(start) = (0..self.node_count).find(|&n| Some(n) != removed) else {
            return true;
        };
        let mut seen = vec![false; self.node_count];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(n) = stack.pop() {
            for &(m, _) in &adj[n] {
                if !seen[m] && Some(m) != removed {
                    seen[m] = true;
                    stack.push(m);
                }
            }
        }
        (0..self.node_count).all(|n| seen[n] || Some(n) == removed)
    }

    /// Connected, and still connected after deleting any single node.
    pub fn is_biconnected(&self) -> bool {
        self.node_count >= 3
            && self.is_connected()
            && (0..self.node_count).all(|n| self.connected_without(Some(n)))
    }

    /// Sizes of the two colour classes, if the graph is bipartite.
    pub fn bipartition(&self) -> Option<(usize, usize)> {
        let adj = self.adjacency();
        let mut colour: Vec<Option<bool>> = vec![None; self.node_count];
        for start in 0..self.node_count {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut stack = vec![start];
            while let Some(n) = stack.pop() {
                let c = colour[n].unwrap();
                for &(m, _) in &adj[n] {
                    match colour[m] {
                        None => {
                            colour[m] = Some(!c);
                            stack.push(m);
                        }
                        Some(d) if d == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let ones = colour.iter().filter(|c| **c == Some(true)).count();
        Some((self.node_count - ones, ones))
    }

    /// `self` with the given edges removed (given as node pairs).
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> MetricGraph {
        let gone = |e: &WeightedEdge| {
            removed.iter().any(|&(a, b)| (a.min(b), a.max(b)) == (e.a, e.b))
        };
        MetricGraph {
            node_count: self.node_count,
            edges: self.edges.iter().filter(|e| !gone(e)).copied().collect(),
        }
    }

    /// Is every edge of `self` an edge of `other` (same node numbering)?
    pub fn is_subgraph_of(&self, other: &MetricGraph) -> bool {
        self.node_count == other.node_count
            && self.edges.iter().all(|e| other.edges.binary_search(e).is_ok())
    }
}

/// Outcome of the CAT(1) link condition: no simple loop shorter than 2π.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Cat1 {
    /// `min_cycle` is `None` for a forest.
    Pass { min_cycle: Option<u32> },
    Fail { length: u32, witness: Vec<usize> },
}

impl Cat1 {
    pub fn passed(&self) -> bool {
        matches!(self, Cat1::Pass { .. })
    }

    pub fn min_cycle(&self) -> Option<u32> {
        match self {
            Cat1::Pass { min_cycle } => *min_cycle,
            Cat1::Fail { length, .. } => Some(*length),
        }
    }
}

/// Shortest path from `from` to `to` avoiding the edge `skip`, as
/// `(length, nodes)`.
fn shortest_path_avoiding(
    adj: &[Vec<(usize, u32)>],
    from: usize,
    to: usize,
    skip: (usize, usize),
) -> Option<(u32, Vec<usize>)> {
    let mut dist = vec![u32::MAX; adj.len()];
    let mut prev = vec![usize::MAX; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[from] = 0;
    heap.push(Reverse((0u32, from)));
    while let Some(Reverse((d, n))) = heap.pop() {
        if d > dist[n] {
            continue;
        }
        if n == to {
            break;
        }
        for &(m, w) in &adj[n] {
            if (n.min(m), n.max(m)) == skip {
                continue;
            }
            if d + w < dist[m] {
                dist[m] = d + w;
                prev[m] = n;
                heap.push(Reverse((d + w, m)));
            }
        }
    }
    if dist[to] == u32::MAX {
        return None;
    }
    let mut path = vec![to];
    while *path.last().unwrap() != from {
        path.push(prev[*path.last().unwrap()]);
    }
    path.reverse();
    Some((dist[to], path))
}

/// The shortest simple cycle: for each edge, its weight plus the shortest
/// path joining its endpoints without it. Passes iff that is at least 2π.
pub fn cat1_check(g: &MetricGraph) -> Cat1 {
    let adj = g.adjacency();
    let mut best: Option<(u32, Vec<usize>)> = None;
    for e in &g.edges {
        let Some((d, path)) = shortest_path_avoiding(&adj, e.a, e.b, (e.a, e.b)) else {
            continue;
        };
        let length = d + e.weight;
        if best.as_ref().is_none_or(|(b, _)| length < *b) {
            best = Some((length, path));
        }
    }
    match best {
        Some((length, witness)) if length < FULL_TURN => Cat1::Fail { length, witness },
        other => Cat1::Pass { min_cycle: other.map(|(l, _)| l) },
    }
}

/// Degree refinement: each round hashes a node's colour together with the
/// sorted colours of its neighbours. The history is an isomorphism
/// invariant, so it can be compared across graphs.
fn comparable_colours(g: &MetricGraph, rounds: usize) -> Vec<Vec<u64>> {
    let adj = g.adjacency();
    let mut labels: Vec<Vec<u64>> = vec![Vec::new(); g.node_count];
    let mut current: Vec<u64> = vec![0; g.node_count];
    for _ in 0..rounds {
        let next: Vec<u64> = (0..g.node_count)
            .map(|n| {
                let mut s: Vec<(u64, u32)> = adj[n].iter().map(|&(m, w)| (current[m], w)).collect();
                s.sort();
                // an order-independent but deterministic fingerprint
                let mut h: u64 = current[n].wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ s.len() as u64;
                for (c, w) in s {
                    h = h.rotate_left(7) ^ c.wrapping_add(w as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9);
                }
                h
            })
            .collect();
        for (l, c) in labels.iter_mut().zip(&next) {
            l.push(*c);
        }
        current = next;
    }
    labels
}

/// An isomorphism `g → h` as a node map, found by backtracking over
/// refinement classes.
pub fn isomorphism(g: &MetricGraph, h: &MetricGraph) -> Option<Vec<usize>> {
    if g.node_count != h.node_count || g.edge_count() != h.edge_count() {
        return None;
    }
    let rounds = 4;
    let cg = comparable_colours(g, rounds);
    let ch = comparable_colours(h, rounds);
    let mut sorted_g = cg.clone();
    let mut sorted_h = ch.clone();
    sorted_g.sort();
    sorted_h.sort();
    if sorted_g != sorted_h {
        return None;
    }
    let weight = |graph: &MetricGraph| {
        let mut m = vec![vec![0u32; graph.node_count]; graph.node_count];
        for e in &graph.edges {
            m[e.a][e.b] = e.weight;
            m[e.b][e.a] = e.weight;
        }
        m
    };
    let (wg, wh) = (weight(g), weight(h));
    // visit g's nodes in BFS order so each new node has a mapped neighbour
    let adj = g.adjacency();
    let mut order = Vec::with_capacity(g.node_count);
    let mut placed = vec![false; g.node_count];
    for start in 0..g.node_count {
        if placed[start] {
            continue;
        }
        placed[start] = true;
        order.push(start);
        let mut head = order.len() - 1;
        while head < order.len() {
            let n = order[head];
            head += 1;
            for &(m, _) in &adj[n] {
                if !placed[m] {
                    placed[m] = true;
                    order.push(m);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; g.node_count];
    let mut used = vec![false; h.node_count];
    fn extend(
        depth: usize,
        order: &[usize],
        map: &mut [usize],
        used: &mut [bool],
        cg: &[Vec<u64>],
        ch: &[Vec<u64>],
        wg: &[Vec<u32>],
        wh: &[Vec<u32>],
    ) -> bool {
        let Some(&n) = order.get(depth) else {
            return true;
        };
        for cand in 0..used.len() {
            if used[cand] || cg[n] != ch[cand] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&p| wg[n][p] == wh[cand][map[p]]);
            if !consistent {
                continue;
            }
            map[n] = cand;
            used[cand] = true;
            if extend(depth + 1, order, map, used, cg, ch, wg, wh) {
                return true;
            }
            used[cand] = false;
        }
        map[n] = usize::MAX;
        false
    }
    extend(0, &order, &mut map, &mut used, &cg, &ch, &wg, &wh).then_some(map)
}

pub fn isomorphic(g: &MetricGraph, h: &MetricGraph) -> bool {
    isomorphism(g, h).is_some()
}

/// The generalised Petersen graph `GP(n, k)`: outer cycle `i ~ i+1`,
/// spokes `i ~ n+i`, inner star `n+i ~ n+(i+k)`.
pub fn generalized_petersen(n: usize, k: usize) -> MetricGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, n + i));
        edges.push((n + i, n + (i + k) % n));
    }
    MetricGraph::unit(2 * n, edges)
}

/// The Möbius–Kantor graph `GP(8, 3)`.
pub fn mobius_kantor() -> MetricGraph {
    generalized_petersen(8, 3)
}

/// 1-skeleton of the `d`-cube: bit strings differing in one place.
pub fn hypercube(d: u32) -> MetricGraph {
    let n = 1usize << d;
    let edges = (0..n).flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b)))).filter(|(a, b)| a < b);
    MetricGraph::unit(n, edges)
}

/// Two branch nodes joined by arcs with the given edge counts.
pub fn theta_graph(arcs: &[usize]) -> MetricGraph {
    let mut edges = Vec::new();
    let mut next = 2;
    for &len in arcs {
        let mut prev = 0;
        for _ in 1..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    MetricGraph::unit(next, edges)
}

pub fn cycle_graph(n: usize) -> MetricGraph {
    MetricGraph::unit(n, (0..n).map(|i| (i, (i + 1) % n)))
}
