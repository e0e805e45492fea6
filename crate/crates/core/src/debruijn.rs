//! De Bruijn graphs over a finite alphabet, with edge removal and
//! Eulerian paths.
//!
//! Order-m graph: vertices are the length-m words, edges the length-(m+1)
//! words. Both are stored as base-alpha integer codes, most significant
//! letter first. The edge coded `e` runs from `e / alpha` (drop last letter)
//! to `e % alpha^m` (drop first letter), so walks spell overlapping words.

use crate::alphabet::Alphabet;
use crate::coverage::encode_word;
use crate::error::{Error, PathIssue, Result};

/// Upper bound on the edge count alpha^(m+1).
pub const DEFAULT_EDGE_LIMIT: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Out,
    In,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeBruijnGraph {
    alphabet: Alphabet,
    m: usize,
    /// alpha^m
    vertices: u64,
    removed: Vec<bool>,
    live_edges: u64,
}

impl DeBruijnGraph {
    pub fn build(alphabet: Alphabet, m: usize) -> Result<Self> {
        Self::build_with_limit(alphabet, m, DEFAULT_EDGE_LIMIT)
    }

    pub fn build_with_limit(alphabet: Alphabet, m: usize, limit: u64) -> Result<Self> {
        let edges = alphabet.pow(m + 1).filter(|&e| e <= limit);
        let Some(edges) = edges else {
            return Err(Error::TooLarge {
                what: "edge count",
                need: (alphabet.size() as u128).pow(m as u32 + 1),
                limit: limit as u128,
            });
        };
        Ok(DeBruijnGraph {
            alphabet,
            m,
            vertices: edges / alphabet.size() as u64,
            removed: vec![false; edges as usize],
            live_edges: edges,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn vertex_count(&self) -> u64 {
        self.vertices
    }

    /// Total edges, removed or not: alpha^(m+1).
    pub fn edge_count(&self) -> u64 {
        self.removed.len() as u64
    }

    pub fn live_edge_count(&self) -> u64 {
        self.live_edges
    }

    pub fn is_live(&self, edge: u64) -> bool {
        !self.removed[edge as usize]
    }

    pub fn edge_source(&self, edge: u64) -> u64 {
        edge / self.alphabet.size() as u64
    }

    pub fn edge_target(&self, edge: u64) -> u64 {
        edge % self.vertices.max(1)
    }

    fn check_vertex(&self, v: u64) -> Result<()> {
        if v < self.vertices {
            Ok(())
        } else {
            Err(Error::BadVertex(v))
        }
    }

    /// Live edges at `v`, ascending by code. Out-edges append a letter,
    /// in-edges prepend one.
    pub fn edges_at(&self, v: u64, dir: Direction) -> Result<Vec<u64>> {
        self.check_vertex(v)?;
        let alpha = self.alphabet.size() as u64;
        let edges: Vec<u64> = match dir {
            Direction::Out => (0..alpha).map(|x| v * alpha + x).collect(),
            Direction::In => (0..alpha).map(|x| x * self.vertices + v).collect(),
        };
        Ok(edges.into_iter().filter(|&e| self.is_live(e)).collect())
    }

    /// Neighbor vertices of `v` along live edges, ascending.
    pub fn neighbors(&self, v: u64, dir: Direction) -> Result<Vec<u64>> {
        Ok(self
            .edges_at(v, dir)?
            .into_iter()
            .map(|e| match dir {
                Direction::Out => self.edge_target(e),
                Direction::In => self.edge_source(e),
            })
            .collect())
    }

    pub fn out_degree(&self, v: u64) -> Result<usize> {
        Ok(self.edges_at(v, Direction::Out)?.len())
    }

    pub fn in_degree(&self, v: u64) -> Result<usize> {
        Ok(self.edges_at(v, Direction::In)?.len())
    }

    /// Copy of the graph with the given length-(m+1) words removed as edges.
    /// Removing an already removed edge is a no-op.
    pub fn remove_edges<W: AsRef<[u8]>>(&self, words: impl IntoIterator<Item = W>) -> Result<Self> {
        let mut g = self.clone();
        for w in words {
            let w = w.as_ref();
            if w.len() != self.m + 1 {
                return Err(Error::BadEdgeWord {
                    expected: self.m + 1,
                    got: w.len(),
                });
            }
            for &x in w {
                if !self.alphabet.contains(x) {
                    return Err(Error::BadLetter {
                        letter: x,
                        alpha: self.alphabet.size() as usize,
                    });
                }
            }
            let e = encode_word(w, self.alphabet) as usize;
            if !g.removed[e] {
                g.removed[e] = true;
                g.live_edges -= 1;
            }
        }
        Ok(g)
    }

    /// Copy with the given edge codes removed.
    pub fn remove_edge_codes(&self, codes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut g = self.clone();
        for e in codes {
            if e >= self.edge_count() {
                return Err(Error::BadEdgeWord {
                    expected: self.m + 1,
                    got: usize::MAX,
                });
            }
            if !g.removed[e as usize] {
                g.removed[e as usize] = true;
                g.live_edges -= 1;
            }
        }
        Ok(g)
    }

    /// Eulerian path over the live edges from `start` to `end`.
    ///
    /// Requires the degree conditions to match the requested endpoints:
    /// either start = end with every vertex balanced, or start has one more
    /// out-edge than in-edges, end the reverse, and everything else balanced.
    /// All live edges must lie in one weakly connected component. When
    /// several edges are available the one with the smallest final letter is
    /// taken first, which makes the result deterministic.
    pub fn eulerian_path(&self, start: u64, end: u64) -> Result<EdgeWalk> {
        self.check_vertex(start)?;
        self.check_vertex(end)?;
        if self.live_edges == 0 {
            return Err(Error::EmptyWalk);
        }
        let alpha = self.alphabet.size() as u64;
        let nv = self.vertices as usize;

        // Degree conditions relative to the requested endpoints.
        let mut balance = vec![0i64; nv];
        for e in 0..self.edge_count() {
            if self.is_live(e) {
                balance[self.edge_source(e) as usize] += 1;
                balance[self.edge_target(e) as usize] -= 1;
            }
        }
        let mut want = vec![0i64; nv];
        if start != end {
            want[start as usize] = 1;
            want[end as usize] = -1;
        }
        if balance != want {
            return Err(Error::NoEulerianPath(PathIssue::DegreeImbalance));
        }
        if start == end && self.edges_at(start, Direction::Out)?.is_empty() {
            // A closed walk must actually leave its base vertex.
            return Err(Error::NoEulerianPath(PathIssue::Disconnected));
        }

        // Weak connectivity over vertices that touch a live edge.
        let mut touched = vec![false; nv];
        for e in 0..self.edge_count() {
            if self.is_live(e) {
                touched[self.edge_source(e) as usize] = true;
                touched[self.edge_target(e) as usize] = true;
            }
        }
        let mut seen = vec![false; nv];
        let mut queue = std::collections::VecDeque::from([start]);
        seen[start as usize] = true;
        while let Some(v) = queue.pop_front() {
            for u in self
                .neighbors(v, Direction::Out)?
                .into_iter()
                .chain(self.neighbors(v, Direction::In)?)
            {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    queue.push_back(u);
                }
            }
        }
        if touched.iter().zip(&seen).any(|(&t, &s)| t && !s) {
            return Err(Error::NoEulerianPath(PathIssue::Disconnected));
        }

        // Iterative Hierholzer. cursor[v] is the next letter to try on v's
        // out-edges; edges come off the vertex stack in reverse path order.
        let mut cursor = vec![0u8; nv];
        let mut used = self.removed.clone();
        let mut vstack: Vec<(u64, Option<u64>)> = vec![(start, None)];
        let mut rev_edges: Vec<u64> = Vec::with_capacity(self.live_edges as usize);
        while let Some(&(v, _)) = vstack.last() {
            let mut advanced = false;
            while (cursor[v as usize] as u64) < alpha {
                let e = v * alpha + cursor[v as usize] as u64;
                cursor[v as usize] += 1;
                if !used[e as usize] {
                    used[e as usize] = true;
                    vstack.push((self.edge_target(e), Some(e)));
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                let (_, via) = vstack.pop().expect("stack non-empty");
                if let Some(e) = via {
                    rev_edges.push(e);
                }
            }
        }
        debug_assert_eq!(rev_edges.len() as u64, self.live_edges);
        rev_edges.reverse();
        debug_assert_eq!(self.edge_target(*rev_edges.last().expect("non-empty")), end);
        Ok(EdgeWalk {
            alphabet: self.alphabet,
            m: self.m,
            start,
            end,
            edges: rev_edges,
        })
    }
}

/// A walk listed as consecutive edge codes; each edge's source is the
/// previous edge's target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeWalk {
    alphabet: Alphabet,
    m: usize,
    start: u64,
    end: u64,
    edges: Vec<u64>,
}

impl EdgeWalk {
    /// Builds a walk from explicit edge codes, checking consecutiveness.
    pub fn from_edges(alphabet: Alphabet, m: usize, edges: Vec<u64>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::EmptyWalk);
        }
        let g = DeBruijnGraph::build(alphabet, m)?;
        for e in &edges {
            if *e >= g.edge_count() {
                return Err(Error::BadEdgeWord {
                    expected: m + 1,
                    got: usize::MAX,
                });
            }
        }
        for pair in edges.windows(2) {
            if g.edge_target(pair[0]) != g.edge_source(pair[1]) {
                return Err(Error::OpenWalk);
            }
        }
        Ok(EdgeWalk {
            alphabet,
            m,
            start: g.edge_source(edges[0]),
            end: g.edge_target(*edges.last().unwrap()),
            edges,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn end(&self) -> u64 {
        self.end
    }

    pub fn edges(&self) -> &[u64] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.start == self.end
    }

    /// Final letter of each edge, in walk order.
    pub fn edge_letters(&self) -> Vec<u8> {
        let alpha = self.alphabet.size() as u64;
        self.edges.iter().map(|&e| (e % alpha) as u8).collect()
    }
}

/// Spells the word a walk traces out.
///
/// Linear: the m letters of the start vertex followed by each edge's final
/// letter. Cyclic: only the final letters, and the walk must be closed.
pub fn word_from_walk(walk: &EdgeWalk, cyclic: bool) -> Result<Vec<u8>> {
    if walk.is_empty() {
        return Err(Error::EmptyWalk);
    }
    if cyclic {
        if !walk.is_closed() {
            return Err(Error::OpenWalk);
        }
        return Ok(walk.edge_letters());
    }
    let mut word = crate::coverage::decode_word(walk.start, walk.m, walk.alphabet);
    word.extend(walk.edge_letters());
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverage::is_universal;
    use crate::word::PartialWord;

    #[test]
    fn degrees_and_counts() {
        // Every vertex has alpha out-edges and alpha in-edges; there are
        // alpha^(m+1) edges in total.
        for alpha in 2..=3usize {
            let a = Alphabet::new(alpha).unwrap();
            for m in 0..=3 {
                let g = DeBruijnGraph::build(a, m).unwrap();
                assert_eq!(g.vertex_count(), (alpha as u64).pow(m as u32));
                assert_eq!(g.edge_count(), (alpha as u64).pow(m as u32 + 1));
                assert_eq!(g.live_edge_count(), g.edge_count());
                for v in 0..g.vertex_count() {
                    assert_eq!(g.out_degree(v).unwrap(), alpha);
                    assert_eq!(g.in_degree(v).unwrap(), alpha);
                }
            }
        }
    }

    #[test]
    fn neighbor_codes() {
        let g = DeBruijnGraph::build(Alphabet::BINARY, 2).unwrap();
        // Vertex 01 has out-edges 010, 011 and in-edges 001, 101.
        assert_eq!(g.edges_at(0b01, Direction::Out).unwrap(), vec![0b010, 0b011]);
        assert_eq!(g.edges_at(0b01, Direction::In).unwrap(), vec![0b001, 0b101]);
        assert_eq!(g.neighbors(0b01, Direction::Out).unwrap(), vec![0b10, 0b11]);
        assert_eq!(g.neighbors(0b00, Direction::In).unwrap(), vec![0b00, 0b10]);
        assert_eq!(g.edge_source(0b011), 0b01);
        assert_eq!(g.edge_target(0b011), 0b11);
        assert!(matches!(
            g.neighbors(4, Direction::Out),
            Err(Error::BadVertex(4))
        ));
    }

    #[test]
    fn out_neighborhoods_are_shared_by_alpha_vertices() {
        // Vertices differing only in their first letter have the same
        // out-neighborhood, so each vertex shares it with alpha-1 others
        // (and symmetrically for in-neighborhoods).
        for alpha in 2..=3usize {
            let a = Alphabet::new(alpha).unwrap();
            let g = DeBruijnGraph::build(a, 2).unwrap();
            for v in 0..g.vertex_count() {
                let outs = g.neighbors(v, Direction::Out).unwrap();
                let same_out = (0..g.vertex_count())
                    .filter(|&u| u != v && g.neighbors(u, Direction::Out).unwrap() == outs)
                    .count();
                assert_eq!(same_out, alpha - 1);
                let ins = g.neighbors(v, Direction::In).unwrap();
                let same_in = (0..g.vertex_count())
                    .filter(|&u| u != v && g.neighbors(u, Direction::In).unwrap() == ins)
                    .count();
                assert_eq!(same_in, alpha - 1);
            }
        }
    }

    #[test]
    fn next_order_is_the_line_graph() {
        // Edges of order m are vertices of order m+1; codes line up so that
        // u -> v in order m+1 exactly when edge u ends where edge v starts.
        for alpha in 2..=3usize {
            let a = Alphabet::new(alpha).unwrap();
            for m in 0..=3 {
                let g = DeBruijnGraph::build(a, m).unwrap();
                let h = DeBruijnGraph::build(a, m + 1).unwrap();
                assert_eq!(h.vertex_count(), g.edge_count());
                for u in 0..h.vertex_count() {
                    for v in h.neighbors(u, Direction::Out).unwrap() {
                        assert_eq!(g.edge_target(u), g.edge_source(v));
                    }
                }
            }
        }
    }

    #[test]
    fn remove_edges_by_word() {
        let g = DeBruijnGraph::build(Alphabet::BINARY, 1).unwrap();
        let h = g.remove_edges([[0u8, 1], [0, 1]]).unwrap();
        assert_eq!(h.live_edge_count(), 3);
        assert!(!h.is_live(0b01));
        assert_eq!(h.edges_at(0, Direction::Out).unwrap(), vec![0b00]);
        assert!(matches!(
            g.remove_edges([[0u8, 1, 0]]),
            Err(Error::BadEdgeWord {
                expected: 2,
                got: 3
            })
        ));
        assert!(matches!(
            g.remove_edges([[0u8, 7]]),
            Err(Error::BadLetter { letter: 7, .. })
        ));
        // Original untouched.
        assert_eq!(g.live_edge_count(), 4);
    }

    #[test]
    fn eulerian_circuit_order_one() {
        let g = DeBruijnGraph::build(Alphabet::BINARY, 1).unwrap();
        let walk = g.eulerian_path(0, 0).unwrap();
        assert_eq!(walk.len(), 4);
        assert!(walk.is_closed());
        assert_eq!(walk.start(), 0);
        // Smallest-letter-first tiebreak: 00, 01, 10, 11 is not a walk;
        // the deterministic result is 00, 01, 11, 10.
        assert_eq!(walk.edges(), &[0b00, 0b01, 0b11, 0b10]);
        let word = word_from_walk(&walk, false).unwrap();
        assert_eq!(word, vec![0, 0, 1, 1, 0]);
        // A closed walk may be requested from any vertex on it.
        let from_one = g.eulerian_path(1, 1).unwrap();
        assert_eq!(from_one.start(), 1);
        assert!(from_one.is_closed());
        assert_eq!(from_one.len(), 4);
    }

    #[test]
    fn eulerian_words_are_universal() {
        for alpha in 2..=3usize {
            let a = Alphabet::new(alpha).unwrap();
            let max_n = if alpha == 2 { 6 } else { 4 };
            for n in 1..=max_n {
                let g = DeBruijnGraph::build(a, n - 1).unwrap();
                let walk = g.eulerian_path(0, 0).unwrap();
                let linear = word_from_walk(&walk, false).unwrap();
                assert_eq!(linear.len(), alpha.pow(n as u32) + n - 1);
                let w = PartialWord::from_letters(&linear, a).unwrap();
                assert!(is_universal(&w, n, false).unwrap(), "alpha={alpha} n={n}");
                let cyclic = word_from_walk(&walk, true).unwrap();
                let w = PartialWord::from_letters(&cyclic, a).unwrap();
                assert!(is_universal(&w, n, true).unwrap(), "alpha={alpha} n={n} cyclic");
            }
        }
    }

    #[test]
    fn open_path_runs_between_the_unbalanced_vertices() {
        // Remove 01: vertex 1 gains an extra out-edge, vertex 0 an extra in.
        let g = DeBruijnGraph::build(Alphabet::BINARY, 1)
            .unwrap()
            .remove_edges([[0u8, 1]])
            .unwrap();
        let walk = g.eulerian_path(1, 0).unwrap();
        assert_eq!(walk.start(), 1);
        assert_eq!(walk.end(), 0);
        assert!(!walk.is_closed());
        assert_eq!(walk.edges(), &[0b11, 0b10, 0b00]);
        assert_eq!(word_from_walk(&walk, false).unwrap(), vec![1, 1, 0, 0]);
        assert!(matches!(word_from_walk(&walk, true), Err(Error::OpenWalk)));
        // Requesting the wrong endpoints is a degree mismatch.
        assert!(matches!(
            g.eulerian_path(0, 1),
            Err(Error::NoEulerianPath(PathIssue::DegreeImbalance))
        ));
        assert!(matches!(
            g.eulerian_path(1, 1),
            Err(Error::NoEulerianPath(PathIssue::DegreeImbalance))
        ));
    }

    #[test]
    fn path_through_removed_prefix_edges() {
        // Removing 000, 100, 001 isolates vertex 00 and forces a 5-edge
        // path from 01 to 10.
        let g = DeBruijnGraph::build(Alphabet::BINARY, 2)
            .unwrap()
            .remove_edges([[0u8, 0, 0], [1, 0, 0], [0, 0, 1]])
            .unwrap();
        let walk = g.eulerian_path(0b01, 0b10).unwrap();
        assert_eq!(walk.len(), 5);
        assert_eq!(walk.start(), 0b01);
        assert_eq!(walk.end(), 0b10);
    }

    #[test]
    fn detects_degree_imbalance() {
        // Removing both out-edges of vertex 10 leaves it two edges short.
        let g = DeBruijnGraph::build(Alphabet::BINARY, 2)
            .unwrap()
            .remove_edges([[1u8, 0, 0], [1, 0, 1]])
            .unwrap();
        assert!(matches!(
            g.eulerian_path(0b10, 0b01),
            Err(Error::NoEulerianPath(PathIssue::DegreeImbalance))
        ));
        assert!(matches!(
            g.eulerian_path(0, 0),
            Err(Error::NoEulerianPath(PathIssue::DegreeImbalance))
        ));
    }

    #[test]
    fn detects_disconnection() {
        // Only the two self-loops remain: balanced but in two components.
        let g = DeBruijnGraph::build(Alphabet::BINARY, 1)
            .unwrap()
            .remove_edges([[0u8, 1], [1, 0]])
            .unwrap();
        assert!(matches!(
            g.eulerian_path(0, 0),
            Err(Error::NoEulerianPath(PathIssue::Disconnected))
        ));
    }

    #[test]
    fn empty_graph_has_no_walk() {
        let g = DeBruijnGraph::build(Alphabet::BINARY, 0).unwrap();
        let g = g.remove_edges([[0u8], [1]]).unwrap();
        assert!(matches!(g.eulerian_path(0, 0), Err(Error::EmptyWalk)));
    }

    #[test]
    fn walk_from_edges_validates() {
        let a = Alphabet::BINARY;
        assert!(matches!(
            EdgeWalk::from_edges(a, 1, vec![]),
            Err(Error::EmptyWalk)
        ));
        // 00 ends at 0, 11 starts at 1: not consecutive.
        assert!(matches!(
            EdgeWalk::from_edges(a, 1, vec![0b00, 0b11]),
            Err(Error::OpenWalk)
        ));
        let walk = EdgeWalk::from_edges(a, 1, vec![0b01, 0b11, 0b10]).unwrap();
        assert_eq!(walk.start(), 0);
        assert_eq!(walk.end(), 0);
        assert!(walk.is_closed());
        assert_eq!(word_from_walk(&walk, true).unwrap(), vec![1, 1, 0]);
    }

    #[test]
    fn build_respects_limit() {
        assert!(matches!(
            DeBruijnGraph::build_with_limit(Alphabet::BINARY, 10, 1 << 10),
            Err(Error::TooLarge { .. })
        ));
        assert!(DeBruijnGraph::build_with_limit(Alphabet::BINARY, 9, 1 << 10).is_ok());
    }

    #[test]
    fn order_zero_graph() {
        // One vertex, alpha self-loop edges.
        let a = Alphabet::new(3).unwrap();
        let g = DeBruijnGraph::build(a, 0).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 3);
        let walk = g.eulerian_path(0, 0).unwrap();
        assert_eq!(word_from_walk(&walk, false).unwrap(), vec![0, 1, 2]);
    }
}
