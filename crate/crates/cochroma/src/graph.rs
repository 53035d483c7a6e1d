//! Weighted graphs and the enumerations the symmetric-function formulas
//! consume: complements, joins, contractions, stable-set partitions and
//! covers, acyclic orientations with their source components, and a
//! brute-force canonical form for collecting isomorphic terms.
//!
//! Vertices carry string ids and positive integer weights. The order of the
//! vertex list is *the* fixed vertex order: source-component decompositions
//! depend on it (the resulting CSFs do not, which is tested).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::GraphError;
use crate::partition::Partition;

/// Hard cap for the brute-force canonical form.
pub const CANONICAL_BOUND: usize = 10;

/// Vertex subsets are bitmasks over vertex indices; 16 vertices is far above
/// every bound in this crate.
pub type VertexMask = u16;

#[derive(Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    ids: Vec<String>,
    weights: Vec<u32>,
    /// Adjacency bitmask per vertex.
    adj: Vec<VertexMask>,
}

/// An orientation of a host graph's edges: `edges[i]` directed from
/// `tails[i]` to `heads[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub arcs: Vec<(usize, usize)>,
}

/// Canonical key: equal iff the graphs are isomorphic as weighted graphs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalKey {
    weights: Vec<u32>,
    adj_bits: Vec<u64>,
}

impl WeightedGraph {
    pub fn new(
        vertices: Vec<(String, u32)>,
        edges: &[(String, String)],
    ) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for (id, w) in &vertices {
            if id.is_empty() || !seen.insert(id.clone()) {
                return Err(GraphError::BadVertexId(id.clone()));
            }
            if *w == 0 {
                return Err(GraphError::ZeroWeight(id.clone()));
            }
        }
        let ids: Vec<String> = vertices.iter().map(|(id, _)| id.clone()).collect();
        let weights: Vec<u32> = vertices.iter().map(|&(_, w)| w).collect();
        let index: BTreeMap<&str, usize> =
            ids.iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect();
        let mut adj = vec![0 as VertexMask; ids.len()];
        for (a, b) in edges {
            let i = *index.get(a.as_str()).ok_or_else(|| GraphError::UnknownVertex(a.clone()))?;
            let j = *index.get(b.as_str()).ok_or_else(|| GraphError::UnknownVertex(b.clone()))?;
            if i == j {
                return Err(GraphError::SelfLoop(a.clone()));
            }
            if adj[i] & (1 << j) != 0 {
                return Err(GraphError::DuplicateEdge(a.clone(), b.clone()));
            }
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Ok(WeightedGraph { ids, weights, adj })
    }

    /// Convenience constructor with ids `v0, v1, …` from index pairs.
    pub fn from_indices(weights: &[u32], edges: &[(usize, usize)]) -> Self {
        let vertices: Vec<(String, u32)> =
            weights.iter().enumerate().map(|(i, &w)| (format!("v{}", i), w)).collect();
        let named: Vec<(String, String)> =
            edges.iter().map(|&(i, j)| (format!("v{}", i), format!("v{}", j))).collect();
        WeightedGraph::new(vertices, &named).expect("index-built graph must be valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn total_weight(&self) -> u32 {
        self.weights.iter().sum()
    }

    pub fn full_mask(&self) -> VertexMask {
        if self.ids.is_empty() {
            0
        } else {
            (1 << self.ids.len()) - 1
        }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i] & (1 << j) != 0
    }

    pub fn neighbors_mask(&self, v: usize) -> VertexMask {
        self.adj[v]
    }

    /// Edges as index pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.ids.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    /// Sum of weights over a vertex mask.
    pub fn mask_weight(&self, mask: VertexMask) -> u32 {
        (0..self.ids.len()).filter(|&v| mask & (1 << v) != 0).map(|v| self.weights[v]).sum()
    }

    // ------------------------------------------------------------------
    // Constructions
    // ------------------------------------------------------------------

    /// Same weighted vertices, complemented edge set.
    pub fn complement(&self) -> WeightedGraph {
        let n = self.ids.len();
        let full = self.full_mask();
        let adj = (0..n)
            .map(|v| (full & !self.adj[v]) & !(1 << v))
            .collect();
        WeightedGraph { ids: self.ids.clone(), weights: self.weights.clone(), adj }
    }

    /// Renames ids of `other` that collide with `self` by appending `_2`
    /// (repeatedly until free).
    fn merged_vertices(&self, other: &WeightedGraph) -> Vec<(String, u32)> {
        let mut taken: BTreeSet<String> = self.ids.iter().cloned().collect();
        let mut vertices: Vec<(String, u32)> =
            self.ids.iter().cloned().zip(self.weights.iter().copied()).collect();
        for (id, &w) in other.ids.iter().zip(other.weights.iter()) {
            let mut name = id.clone();
            while taken.contains(&name) {
                name.push_str("_2");
            }
            taken.insert(name.clone());
            vertices.push((name, w));
        }
        vertices
    }

    pub fn disjoint_union(&self, other: &WeightedGraph) -> WeightedGraph {
        let vertices = self.merged_vertices(other);
        let n1 = self.ids.len();
        let mut edges = Vec::new();
        for (i, j) in self.edges() {
            edges.push((vertices[i].0.clone(), vertices[j].0.clone()));
        }
        for (i, j) in other.edges() {
            edges.push((vertices[n1 + i].0.clone(), vertices[n1 + j].0.clone()));
        }
        WeightedGraph::new(vertices, &edges).expect("disjoint union of valid graphs")
    }

    /// Join: disjoint union plus all cross edges.
    pub fn join(&self, other: &WeightedGraph) -> WeightedGraph {
        let vertices = self.merged_vertices(other);
        let n1 = self.ids.len();
        let mut edges = Vec::new();
        for (i, j) in self.edges() {
            edges.push((vertices[i].0.clone(), vertices[j].0.clone()));
        }
        for (i, j) in other.edges() {
            edges.push((vertices[n1 + i].0.clone(), vertices[n1 + j].0.clone()));
        }
        for i in 0..n1 {
            for j in 0..other.ids.len() {
                edges.push((vertices[i].0.clone(), vertices[n1 + j].0.clone()));
            }
        }
        WeightedGraph::new(vertices, &edges).expect("join of valid graphs")
    }

    /// Induced subgraph on a vertex mask, keeping the vertex order.
    pub fn induced(&self, mask: VertexMask) -> WeightedGraph {
        let keep: Vec<usize> = (0..self.ids.len()).filter(|&v| mask & (1 << v) != 0).collect();
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let ids = keep.iter().map(|&v| self.ids[v].clone()).collect();
        let weights = keep.iter().map(|&v| self.weights[v]).collect();
        let mut adj = vec![0 as VertexMask; keep.len()];
        for (new_i, &old_i) in keep.iter().enumerate() {
            for &old_j in &keep {
                if old_j != old_i && self.has_edge(old_i, old_j) {
                    adj[new_i] |= 1 << pos[&old_j];
                }
            }
        }
        WeightedGraph { ids, weights, adj }
    }

    /// Induced subgraph by ids.
    pub fn induced_by_ids(&self, sub: &[&str]) -> Result<WeightedGraph, GraphError> {
        let mut mask: VertexMask = 0;
        for id in sub {
            let v = self.index_of(id).ok_or_else(|| GraphError::UnknownVertex(id.to_string()))?;
            mask |= 1 << v;
        }
        Ok(self.induced(mask))
    }

    fn edge_indices(&self, a: &str, b: &str) -> Result<(usize, usize), GraphError> {
        let i = self.index_of(a).ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
        let j = self.index_of(b).ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
        if !self.has_edge(i, j) {
            return Err(GraphError::EdgeNotFound(a.to_string(), b.to_string()));
        }
        Ok((i, j))
    }

    pub fn delete_edge(&self, a: &str, b: &str) -> Result<WeightedGraph, GraphError> {
        let (i, j) = self.edge_indices(a, b)?;
        Ok(self.delete_edge_idx(i, j))
    }

    pub fn delete_edge_idx(&self, i: usize, j: usize) -> WeightedGraph {
        let mut g = self.clone();
        g.adj[i] &= !(1 << j);
        g.adj[j] &= !(1 << i);
        g
    }

    /// Contracts an edge: endpoints merge into one vertex at the earlier
    /// endpoint's position, weights added, neighborhoods unioned without
    /// multi-edges. The merged id is the concatenation of the endpoint ids
    /// (suffixed with `_2` if that collides).
    pub fn contract_edge(&self, a: &str, b: &str) -> Result<WeightedGraph, GraphError> {
        let (i, j) = self.edge_indices(a, b)?;
        Ok(self.contract_edge_idx(i, j))
    }

    pub fn contract_edge_idx(&self, i: usize, j: usize) -> WeightedGraph {
        debug_assert!(self.has_edge(i, j));
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let mut merged_id = format!("{}{}", self.ids[i], self.ids[j]);
        while self.ids.iter().enumerate().any(|(v, id)| v != lo && v != hi && *id == merged_id) {
            merged_id.push_str("_2");
        }
        let mut vertices = Vec::new();
        for v in 0..self.ids.len() {
            if v == lo {
                vertices.push((merged_id.clone(), self.weights[i] + self.weights[j]));
            } else if v != hi {
                vertices.push((self.ids[v].clone(), self.weights[v]));
            }
        }
        let mut edges = Vec::new();
        for (u, v) in self.edges() {
            if (u, v) == (lo, hi) {
                continue;
            }
            let name = |x: usize| {
                if x == lo || x == hi {
                    merged_id.clone()
                } else {
                    self.ids[x].clone()
                }
            };
            let e = (name(u), name(v));
            if !edges.contains(&e) && !edges.contains(&(e.1.clone(), e.0.clone())) {
                edges.push(e);
            }
        }
        WeightedGraph::new(vertices, &edges).expect("contraction of valid graph")
    }

    // ------------------------------------------------------------------
    // Stable sets
    // ------------------------------------------------------------------

    pub fn is_stable(&self, mask: VertexMask) -> bool {
        (0..self.ids.len())
            .filter(|&v| mask & (1 << v) != 0)
            .all(|v| self.adj[v] & mask == 0)
    }

    /// All nonempty stable sets, as masks, ascending.
    pub fn stable_sets(&self) -> Vec<VertexMask> {
        let full = self.full_mask() as u32;
        (1..=full).map(|m| m as VertexMask).filter(|&m| self.is_stable(m)).collect()
    }

    /// For each partition λ, the number of unordered partitions of the vertex
    /// set into stable sets whose weight multiset is λ. This is the full
    /// augmented-monomial profile of the graph in one pass.
    pub fn stable_partition_profile(&self) -> BTreeMap<Partition, u64> {
        let mut profile = BTreeMap::new();
        let n = self.ids.len();
        if n == 0 {
            profile.insert(Partition::empty(), 1);
            return profile;
        }
        let mut blocks: Vec<VertexMask> = Vec::new();
        self.stable_partition_rec(0, &mut blocks, &mut profile);
        profile
    }

    fn stable_partition_rec(
        &self,
        v: usize,
        blocks: &mut Vec<VertexMask>,
        profile: &mut BTreeMap<Partition, u64>,
    ) {
        if v == self.ids.len() {
            let parts = blocks.iter().map(|&b| self.mask_weight(b)).collect::<Vec<_>>();
            let lambda = Partition::from_parts(parts).expect("block weights positive");
            *profile.entry(lambda).or_insert(0) += 1;
            return;
        }
        let bit = 1 << v;
        // Restricted growth: v joins an existing block or opens a new one.
        for k in 0..blocks.len() {
            if self.adj[v] & blocks[k] == 0 {
                blocks[k] |= bit;
                self.stable_partition_rec(v + 1, blocks, profile);
                blocks[k] &= !bit;
            }
        }
        blocks.push(bit);
        self.stable_partition_rec(v + 1, blocks, profile);
        blocks.pop();
    }

    /// `St_λ(G)`: stable-set partitions with weight multiset λ. Zero whenever
    /// `|λ| ≠ weight(G)`.
    pub fn stable_set_partition_count(&self, lambda: &Partition) -> u64 {
        if lambda.size() != self.total_weight() {
            return 0;
        }
        self.stable_partition_profile().get(lambda).copied().unwrap_or(0)
    }

    /// Multiset of λ(C) over all covers of the vertex set by sets of distinct
    /// nonempty stable sets. Finite but exponential in the number of stable
    /// sets, hence the guard.
    pub fn stable_set_covers(&self) -> Result<BTreeMap<Partition, u64>, GraphError> {
        let mut out = BTreeMap::new();
        if self.ids.is_empty() {
            out.insert(Partition::empty(), 1);
            return Ok(out);
        }
        let sets = self.stable_sets();
        if self.ids.len() > 6 || sets.len() > 22 {
            return Err(GraphError::SizeBound {
                op: "stable_set_covers",
                detail: format!("{} vertices, {} stable sets", self.ids.len(), sets.len()),
            });
        }
        let weights: Vec<u32> = sets.iter().map(|&m| self.mask_weight(m)).collect();
        let full = self.full_mask();
        let mut chosen: Vec<u32> = Vec::new();
        fn rec(
            idx: usize,
            covered: VertexMask,
            sets: &[VertexMask],
            weights: &[u32],
            full: VertexMask,
            chosen: &mut Vec<u32>,
            out: &mut BTreeMap<Partition, u64>,
        ) {
            if idx == sets.len() {
                if covered == full {
                    let lambda = Partition::from_parts(chosen.iter().copied())
                        .expect("stable set weights positive");
                    *out.entry(lambda).or_insert(0) += 1;
                }
                return;
            }
            // Prune: remaining sets cannot finish the cover.
            let mut reach = covered;
            for &s in &sets[idx..] {
                reach |= s;
            }
            if reach != full {
                return;
            }
            rec(idx + 1, covered, sets, weights, full, chosen, out);
            chosen.push(weights[idx]);
            rec(idx + 1, covered | sets[idx], sets, weights, full, chosen, out);
            chosen.pop();
        }
        rec(0, 0, &sets, &weights, full, &mut chosen, &mut out);
        Ok(out)
    }

    // ------------------------------------------------------------------
    // Orientations
    // ------------------------------------------------------------------

    /// All acyclic orientations, by backtracking over edges with incremental
    /// cycle detection.
    pub fn acyclic_orientations(&self) -> Vec<Orientation> {
        let edges = self.edges();
        let mut out = Vec::new();
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        let mut dir_adj = vec![0 as VertexMask; self.ids.len()];
        self.ao_rec(&edges, 0, &mut arcs, &mut dir_adj, &mut out);
        out
    }

    pub fn count_acyclic_orientations(&self) -> u64 {
        self.acyclic_orientations().len() as u64
    }

    fn ao_rec(
        &self,
        edges: &[(usize, usize)],
        k: usize,
        arcs: &mut Vec<(usize, usize)>,
        dir_adj: &mut Vec<VertexMask>,
        out: &mut Vec<Orientation>,
    ) {
        if k == edges.len() {
            out.push(Orientation { arcs: arcs.clone() });
            return;
        }
        let (i, j) = edges[k];
        for (from, to) in [(i, j), (j, i)] {
            if !reaches(dir_adj, to, from) {
                dir_adj[from] |= 1 << to;
                arcs.push((from, to));
                self.ao_rec(edges, k + 1, arcs, dir_adj, out);
                arcs.pop();
                dir_adj[from] &= !(1 << to);
            }
        }
    }

    /// Source components of an acyclic orientation under a vertex order
    /// (a permutation of `0..n`):
    /// take the first unused vertex as the source of a new component, add all
    /// unused vertices reachable from it by directed paths, repeat.
    /// Blocks are returned in creation order.
    pub fn source_components(
        &self,
        orientation: &Orientation,
        order: &[usize],
    ) -> Result<Vec<VertexMask>, GraphError> {
        let n = self.ids.len();
        let mut dir_adj = vec![0 as VertexMask; n];
        for &(u, v) in &orientation.arcs {
            dir_adj[u] |= 1 << v;
            if reaches(&dir_adj, v, u) {
                return Err(GraphError::CyclicOrientation);
            }
        }
        let mut used: VertexMask = 0;
        let mut components = Vec::new();
        for &start in order {
            if used & (1 << start) != 0 {
                continue;
            }
            let mut comp: VertexMask = 1 << start;
            used |= 1 << start;
            // Grow by directed reachability through unused vertices.
            loop {
                let mut grew = false;
                for v in 0..n {
                    if comp & (1 << v) != 0 {
                        let fresh = dir_adj[v] & !used;
                        if fresh != 0 {
                            comp |= fresh;
                            used |= fresh;
                            grew = true;
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            components.push(comp);
        }
        Ok(components)
    }

    /// λ(γ): sorted weights of the source components.
    pub fn orientation_type(
        &self,
        orientation: &Orientation,
        order: &[usize],
    ) -> Result<Partition, GraphError> {
        let comps = self.source_components(orientation, order)?;
        Ok(Partition::from_parts(comps.iter().map(|&c| self.mask_weight(c)))
            .expect("component weights positive"))
    }

    // ------------------------------------------------------------------
    // Counts and keys
    // ------------------------------------------------------------------

    /// `(#P₃, #K₃)`: not-necessarily-induced 3-vertex paths and triangles.
    pub fn count_paths3_triangles(&self) -> (u64, u64) {
        let n = self.ids.len();
        let mut p3 = 0u64;
        for mid in 0..n {
            let d = self.adj[mid].count_ones() as u64;
            p3 += d * d.saturating_sub(1) / 2;
        }
        let mut k3 = 0u64;
        for i in 0..n {
            for j in (i + 1)..n {
                if !self.has_edge(i, j) {
                    continue;
                }
                for k in (j + 1)..n {
                    if self.has_edge(i, k) && self.has_edge(j, k) {
                        k3 += 1;
                    }
                }
            }
        }
        (p3, k3)
    }

    pub fn is_connected(&self) -> bool {
        self.mask_is_connected(self.full_mask())
    }

    /// Whether the induced subgraph on `mask` is connected (empty masks count
    /// as not connected; single vertices as connected).
    pub fn mask_is_connected(&self, mask: VertexMask) -> bool {
        if mask == 0 {
            return false;
        }
        let start = mask.trailing_zeros() as usize;
        let mut seen: VertexMask = 1 << start;
        loop {
            let mut grew = false;
            for v in 0..self.ids.len() {
                if seen & (1 << v) != 0 {
                    let fresh = (self.adj[v] & mask) & !seen;
                    if fresh != 0 {
                        seen |= fresh;
                        grew = true;
                    }
                }
            }
            if !grew {
                return seen == mask;
            }
        }
    }

    pub fn has_triangle(&self) -> bool {
        self.count_paths3_triangles().1 > 0
    }

    pub fn is_unweighted(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// Canonical key under weighted-graph isomorphism, by minimizing the
    /// adjacency encoding over weight-compatible vertex permutations.
    pub fn canonical_key(&self) -> Result<CanonicalKey, GraphError> {
        let n = self.ids.len();
        if n > CANONICAL_BOUND {
            return Err(GraphError::SizeBound {
                op: "canonical_key",
                detail: format!("{} vertices > {}", n, CANONICAL_BOUND),
            });
        }
        // Target slots sorted by weight descending; vertices may only land on
        // slots of equal weight.
        let mut slots: Vec<usize> = (0..n).collect();
        slots.sort_by(|&a, &b| self.weights[b].cmp(&self.weights[a]));
        let sorted_weights: Vec<u32> = slots.iter().map(|&v| self.weights[v]).collect();

        // Group slot ranges with equal weight.
        let mut groups: Vec<(usize, usize)> = Vec::new(); // [start, end)
        let mut start = 0;
        for i in 1..=n {
            if i == n || sorted_weights[i] != sorted_weights[start] {
                groups.push((start, i));
                start = i;
            }
        }

        let mut best: Option<[u64; 2]> = None;
        // perm[slot] = original vertex assigned to that slot
        let mut perm: Vec<usize> = slots.clone();
        permute_groups(&mut perm, &groups, 0, &mut |perm| {
            let enc = encode_adjacency(self, perm);
            if best.map_or(true, |b| enc < b) {
                best = Some(enc);
            }
        });
        let bits = best.unwrap_or([0, 0]);
        Ok(CanonicalKey { weights: sorted_weights, adj_bits: vec![bits[0], bits[1]] })
    }
}

/// Bit (i, j), i < j, packed row-major; 10 vertices fit in two words.
fn encode_adjacency(g: &WeightedGraph, perm: &[usize]) -> [u64; 2] {
    let n = perm.len();
    let mut bits = [0u64; 2];
    for i in 0..n {
        for j in (i + 1)..n {
            if g.has_edge(perm[i], perm[j]) {
                let pos = i * n + j;
                bits[pos / 64] |= 1 << (pos % 64);
            }
        }
    }
    bits
}

fn permute_groups(
    perm: &mut Vec<usize>,
    groups: &[(usize, usize)],
    g: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if g == groups.len() {
        f(perm);
        return;
    }
    let (lo, hi) = groups[g];
    permute_range(perm, lo, hi, groups, g, f);
}

fn permute_range(
    perm: &mut Vec<usize>,
    lo: usize,
    hi: usize,
    groups: &[(usize, usize)],
    g: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if lo + 1 >= hi {
        permute_groups(perm, groups, g + 1, f);
        return;
    }
    for i in lo..hi {
        perm.swap(lo, i);
        permute_range(perm, lo + 1, hi, groups, g, f);
        perm.swap(lo, i);
    }
}

fn reaches(dir_adj: &[VertexMask], from: usize, target: usize) -> bool {
    let mut seen: VertexMask = 1 << from;
    loop {
        let mut grew = false;
        for v in 0..dir_adj.len() {
            if seen & (1 << v) != 0 {
                let fresh = dir_adj[v] & !seen;
                if fresh != 0 {
                    seen |= fresh;
                    grew = true;
                }
            }
        }
        if seen & (1 << target) != 0 {
            return true;
        }
        if !grew {
            return false;
        }
    }
}

// ----------------------------------------------------------------------
// Named constructions
// ----------------------------------------------------------------------

/// The special graph families indexed by a partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialKind {
    Clique,
    Edgeless,
    CompleteMultipartite,
    Path,
    Star,
    Cycle,
}

/// Builds a named graph for a partition:
/// cliques and edgeless graphs have `ℓ(λ)` vertices weighted by the parts;
/// the complete multipartite graph is unweighted with parts of sizes `λᵢ`;
/// paths, stars, and cycles require all-ones λ (cycles need ≥ 3 parts).
pub fn special_graph(kind: SpecialKind, lambda: &Partition) -> Result<WeightedGraph, GraphError> {
    let bad = |detail: String| GraphError::BadConstruction { kind: "special_graph", detail };
    let n = lambda.len();
    match kind {
        SpecialKind::Clique | SpecialKind::Edgeless => {
            let mut edges = Vec::new();
            if kind == SpecialKind::Clique {
                for i in 0..n {
                    for j in (i + 1)..n {
                        edges.push((i, j));
                    }
                }
            }
            Ok(WeightedGraph::from_indices(lambda.parts(), &edges))
        }
        SpecialKind::CompleteMultipartite => {
            let mut part_of = Vec::new();
            for (pi, &p) in lambda.parts().iter().enumerate() {
                for _ in 0..p {
                    part_of.push(pi);
                }
            }
            let total = part_of.len();
            let mut edges = Vec::new();
            for i in 0..total {
                for j in (i + 1)..total {
                    if part_of[i] != part_of[j] {
                        edges.push((i, j));
                    }
                }
            }
            Ok(WeightedGraph::from_indices(&vec![1; total], &edges))
        }
        SpecialKind::Path | SpecialKind::Star | SpecialKind::Cycle => {
            if lambda.parts().iter().any(|&p| p != 1) {
                return Err(bad(format!("{:?} requires an all-ones partition", kind)));
            }
            if kind == SpecialKind::Cycle && n < 3 {
                return Err(bad("cycle needs at least 3 vertices".into()));
            }
            let edges: Vec<(usize, usize)> = match kind {
                SpecialKind::Path => (1..n).map(|i| (i - 1, i)).collect(),
                SpecialKind::Star => (1..n).map(|i| (0, i)).collect(),
                SpecialKind::Cycle => (0..n).map(|i| (i, (i + 1) % n)).collect(),
                _ => unreachable!(),
            };
            Ok(WeightedGraph::from_indices(&vec![1; n], &edges))
        }
    }
}

/// The binary-expansion clique-path family: vertices are the terms of the
/// binary expansion of `n` in descending order; vertices adjacent when
/// consecutive in that order, or when both weights lie in a common block of
/// `b`. Blocks must have ≥ 3 elements, consist of consecutive powers of two,
/// and (unless `allow_overlap`) be pairwise disjoint.
pub fn binary_clique_graph(
    n: u64,
    b: &[BTreeSet<u64>],
    allow_overlap: bool,
) -> Result<WeightedGraph, GraphError> {
    let bad = |detail: String| GraphError::BadConstruction { kind: "binary_clique_graph", detail };
    if n == 0 {
        return Err(bad("n must be positive".into()));
    }
    for (k, block) in b.iter().enumerate() {
        if block.len() < 3 {
            return Err(bad(format!("block {} has fewer than 3 elements", k)));
        }
        let elems: Vec<u64> = block.iter().copied().collect();
        for &e in &elems {
            if !e.is_power_of_two() {
                return Err(bad(format!("{} is not a power of 2", e)));
            }
        }
        for w in elems.windows(2) {
            if w[1] != w[0] * 2 {
                return Err(bad(format!("block {} is not consecutive powers of 2", k)));
            }
        }
        if !allow_overlap {
            for later in &b[k + 1..] {
                if block.intersection(later).next().is_some() {
                    return Err(bad("blocks overlap".into()));
                }
            }
        }
    }
    // Binary terms, descending.
    let mut terms: Vec<u64> = (0..64).rev().filter(|&i| n & (1 << i) != 0).map(|i| 1u64 << i).collect();
    terms.dedup();
    let vertices: Vec<(String, u32)> =
        terms.iter().map(|&t| (t.to_string(), t as u32)).collect();
    let mut edges = Vec::new();
    for i in 0..terms.len() {
        for j in (i + 1)..terms.len() {
            let consecutive = j == i + 1;
            let same_block = b.iter().any(|blk| blk.contains(&terms[i]) && blk.contains(&terms[j]));
            if consecutive || same_block {
                edges.push((vertices[i].0.clone(), vertices[j].0.clone()));
            }
        }
    }
    WeightedGraph::new(vertices, &edges)
}

// ----------------------------------------------------------------------
// Enumeration helpers (used by the verification suites)
// ----------------------------------------------------------------------

/// All unweighted graphs on exactly `n` vertices, one per isomorphism class.
pub fn enumerate_unweighted(n: usize) -> Vec<WeightedGraph> {
    assert!(n <= 7, "enumeration meant for desk scale");
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for bits in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(k, _)| bits & (1 << k) != 0)
            .map(|(_, &e)| e)
            .collect();
        let g = WeightedGraph::from_indices(&vec![1; n], &edges);
        let key = g.canonical_key().expect("within canonical bound");
        if seen.insert(key) {
            out.push(g);
        }
    }
    out
}

/// All weighted graphs on exactly `n` vertices with weights in
/// `1..=max_weight`, one per isomorphism class.
pub fn enumerate_weighted(n: usize, max_weight: u32) -> Vec<WeightedGraph> {
    let shapes = enumerate_unweighted(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for shape in &shapes {
        let edges = shape.edges();
        let mut weights = vec![1u32; n];
        loop {
            let g = WeightedGraph::from_indices(&weights, &edges);
            let key = g.canonical_key().expect("within canonical bound");
            if seen.insert(key) {
                out.push(g);
            }
            // odometer over weight assignments
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                if weights[i] < max_weight {
                    weights[i] += 1;
                    break;
                }
                weights[i] = 1;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    out
}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightedGraph{{")?;
        for v in 0..self.ids.len() {
            if v > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", self.ids[v], self.weights[v])?;
        }
        write!(f, "; ")?;
        for (k, (i, j)) in self.edges().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}-{}", self.ids[i], self.ids[j])?;
        }
        write!(f, "}}")
    }
}
