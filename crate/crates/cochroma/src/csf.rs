//! Chromatic symmetric functions of weighted graphs.
//!
//! Two independent routes compute the same function:
//!
//! * the stable-partition route: `[m̃_λ] X_G` is the number of partitions of
//!   the vertex set into stable sets with weight multiset λ;
//! * the orientation route: `X_G = (−1)^{|V|} Σ_γ (−1)^{ℓ(λ(γ))} p_{λ(γ)}`
//!   over acyclic orientations γ, where λ(γ) collects source-component
//!   weights under the fixed vertex order.
//!
//! A brute-force coloring oracle backs both. The module also carries the
//! graph-level Hopf data: the splitting coproduct, formal graph sums, and
//! the two antipode formulas (the signed set-partition sum and the
//! flat/orientation cancellation-free sum).

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{CsfError, GraphError};
use crate::graph::{CanonicalKey, VertexMask, WeightedGraph};
use crate::partition::Partition;
use crate::scalar::{rat_int, Rational};
use crate::series::{Algebra, Basis, Series, TensorSeries};

/// CSF of a weighted graph in the requested basis, over `Lambda`.
///
/// The power-sum basis is computed by the orientation route; every other
/// basis comes from the stable-partition route (converted as needed), so the
/// two paths stay independently testable.
pub fn csf(g: &WeightedGraph, basis: Basis) -> Result<Series, CsfError> {
    match basis {
        Basis::P => {
            let order: Vec<usize> = (0..g.vertex_count()).collect();
            Ok(csf_via_orientations(g, &order)?)
        }
        _ => Ok(csf_via_stable_partitions(g).convert(basis)?),
    }
}

/// Stable-partition route: the m̃-expansion read straight off the profile.
pub fn csf_via_stable_partitions(g: &WeightedGraph) -> Series {
    let mut s = Series::zero(Basis::MTilde, Algebra::Lambda);
    for (lambda, count) in g.stable_partition_profile() {
        s.add_term(lambda, rat_int(count as i64));
    }
    s
}

/// Orientation route: signed sum of `p_{λ(γ)}` over acyclic orientations,
/// with source components taken under `order`.
pub fn csf_via_orientations(g: &WeightedGraph, order: &[usize]) -> Result<Series, GraphError> {
    let n = g.vertex_count() as i32;
    let mut s = Series::zero(Basis::P, Algebra::Lambda);
    for orientation in g.acyclic_orientations() {
        let lambda = g.orientation_type(&orientation, order)?;
        let sign = if (n - lambda.len() as i32) % 2 == 0 { 1 } else { -1 };
        s.add_term(lambda, rat_int(sign));
    }
    Ok(s)
}

/// Whether the stable-partition route and the orientation route produce the
/// same symmetric function, compared faithfully through the polynomial image
/// in `|V|` variables (every term on either side has at most `|V|` parts, so
/// that image is injective regardless of total weight).
pub fn routes_agree(g: &WeightedGraph) -> Result<bool, CsfError> {
    let n = g.vertex_count();
    let order: Vec<usize> = (0..n).collect();
    let via_p = csf_via_orientations(g, &order)?;
    let via_st = csf_via_stable_partitions(g);
    Ok(via_p.monomial_image(n) == via_st.monomial_image(n))
}

/// Direct evaluation: enumerate all proper colorings with colors `1..=|V|`
/// and read the monomial-basis coefficients off the exact exponent vectors.
/// `|V|` colors suffice because no monomial of `X_G` uses more distinct
/// variables than there are vertices.
pub fn csf_oracle(g: &WeightedGraph) -> Result<Series, CsfError> {
    let n = g.vertex_count();
    if n > 7 {
        return Err(CsfError::Graph(GraphError::SizeBound {
            op: "csf_oracle",
            detail: format!("{} vertices > 7", n),
        }));
    }
    let mut s = Series::zero(Basis::M, Algebra::Lambda);
    if n == 0 {
        s.add_term(Partition::empty(), Rational::one());
        return Ok(s);
    }
    let mut coloring = vec![0usize; n];
    let mut color_weight = vec![0u32; n];
    color_rec(g, 0, &mut coloring, &mut color_weight, &mut s);
    Ok(s)
}

fn color_rec(
    g: &WeightedGraph,
    v: usize,
    coloring: &mut Vec<usize>,
    color_weight: &mut Vec<u32>,
    s: &mut Series,
) {
    let n = g.vertex_count();
    if v == n {
        // Coefficient of m_λ counts colorings whose weight-per-color vector
        // is exactly (λ₁, …, λ_ℓ, 0, …) on colors (1, 2, …).
        let mut ok = true;
        for k in 1..n {
            if color_weight[k] > color_weight[k - 1] {
                ok = false;
                break;
            }
        }
        if ok {
            let parts: Vec<u32> = color_weight.iter().copied().filter(|&w| w > 0).collect();
            s.add_term(Partition::of(&parts), Rational::one());
        }
        return;
    }
    for c in 0..n {
        if (0..v).any(|u| g.has_edge(u, v) && coloring[u] == c) {
            continue;
        }
        coloring[v] = c;
        color_weight[c] += g.weight(v);
        color_rec(g, v + 1, coloring, color_weight, s);
        color_weight[c] -= g.weight(v);
    }
}

// ----------------------------------------------------------------------
// Formal sums of graphs
// ----------------------------------------------------------------------

/// A formal ℚ-linear combination of weighted graphs, collected up to
/// isomorphism by canonical key.
#[derive(Clone, Debug)]
pub struct GraphSum {
    terms: BTreeMap<CanonicalKey, (WeightedGraph, Rational)>,
}

impl GraphSum {
    pub fn new() -> GraphSum {
        GraphSum { terms: BTreeMap::new() }
    }

    pub fn add(&mut self, g: WeightedGraph, coef: Rational) -> Result<(), GraphError> {
        if coef.is_zero() {
            return Ok(());
        }
        let key = g.canonical_key()?;
        let entry = self.terms.entry(key.clone()).or_insert_with(|| (g, Rational::zero()));
        entry.1 += coef;
        if entry.1.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn coeff(&self, g: &WeightedGraph) -> Result<Rational, GraphError> {
        Ok(self.terms.get(&g.canonical_key()?).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeightedGraph, &Rational)> {
        self.terms.values().map(|(g, c)| (g, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Default for GraphSum {
    fn default() -> Self {
        GraphSum::new()
    }
}

impl PartialEq for GraphSum {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .all(|(k, (_, c))| other.terms.get(k).map(|(_, c2)| c2) == Some(c))
    }
}

/// Linear extension of `G ↦ X_G` to formal sums.
pub fn csf_of_graphsum(s: &GraphSum, basis: Basis) -> Result<Series, CsfError> {
    let mut out = Series::zero(basis, Algebra::Lambda);
    for (g, c) in s.terms() {
        out = out.add(&csf(g, basis)?.scale(c)).map_err(CsfError::Symfunc)?;
    }
    Ok(out)
}

/// The splitting coproduct at the graph level: all `2^|V|` ordered splits
/// `(G|_S, G|_T)` with `S ⊔ T = V(G)`.
pub fn wgraphs_coproduct(g: &WeightedGraph) -> Vec<(WeightedGraph, WeightedGraph)> {
    let full = g.full_mask();
    let mut out = Vec::new();
    let mut s: u32 = 0;
    loop {
        out.push((g.induced(s as VertexMask), g.induced(full & !(s as VertexMask))));
        if s as VertexMask == full {
            break;
        }
        s += 1;
    }
    out
}

/// Pushes the graph coproduct through the CSF into a tensor of series:
/// `Σ X_{G|_S} ⊗ X_{G|_T}`.
pub fn wgraphs_coproduct_csf(g: &WeightedGraph, basis: Basis) -> Result<TensorSeries, CsfError> {
    let mut out = TensorSeries::zero(basis, Algebra::Lambda);
    for (left, right) in wgraphs_coproduct(g) {
        let ls = csf(&left, basis)?;
        let rs = csf(&right, basis)?;
        for (l, cl) in ls.terms() {
            for (r, cr) in rs.terms() {
                out.add_term(l.clone(), r.clone(), cl * cr);
            }
        }
    }
    Ok(out)
}

/// Antipode by the signed set-partition sum: over unordered partitions
/// `{S₁, …, S_ℓ}` of the vertex set, the term `(−1)^ℓ ℓ! · G|_{S₁} ⊔ … ⊔ G|_{S_ℓ}`.
pub fn antipode_schmitt(g: &WeightedGraph) -> Result<GraphSum, CsfError> {
    let n = g.vertex_count();
    if n > 7 {
        return Err(CsfError::Graph(GraphError::SizeBound {
            op: "antipode_schmitt",
            detail: format!("{} vertices > 7", n),
        }));
    }
    let mut out = GraphSum::new();
    if n == 0 {
        out.add(g.clone(), Rational::one()).map_err(CsfError::Graph)?;
        return Ok(out);
    }
    let mut result: Result<(), GraphError> = Ok(());
    for_each_set_partition(n, &mut |blocks| {
        if result.is_err() {
            return;
        }
        let l = blocks.len();
        let mut graph = g.induced(blocks[0]);
        for &b in &blocks[1..] {
            graph = graph.disjoint_union(&g.induced(b));
        }
        let mut coef = crate::scalar::factorial_rat(l as u64);
        if l % 2 == 1 {
            coef = -coef;
        }
        result = out.add(graph, coef);
    });
    result.map_err(CsfError::Graph)?;
    Ok(out)
}

/// Antipode by the cancellation-free flat sum: over flats `F` (edge sets
/// closed under paths), the term `(−1)^{κ(V,F)} |AO(G/F)| · (V, F)`.
pub fn antipode_humpert_martin(g: &WeightedGraph) -> Result<GraphSum, CsfError> {
    let n = g.vertex_count();
    if n > 7 {
        return Err(CsfError::Graph(GraphError::SizeBound {
            op: "antipode_humpert_martin",
            detail: format!("{} vertices > 7", n),
        }));
    }
    let mut out = GraphSum::new();
    if n == 0 {
        out.add(g.clone(), Rational::one()).map_err(CsfError::Graph)?;
        return Ok(out);
    }
    // Flats correspond to vertex partitions whose blocks induce connected
    // subgraphs; the flat is the set of all edges inside blocks.
    let mut result: Result<(), GraphError> = Ok(());
    for_each_set_partition(n, &mut |blocks| {
        if result.is_err() {
            return;
        }
        if !blocks.iter().all(|&b| g.mask_is_connected(b)) {
            return;
        }
        let kappa = blocks.len();
        // G_{V,F}: spanning subgraph keeping exactly the in-block edges.
        let mut flat_graph = g.clone();
        for (i, j) in g.edges() {
            let same_block = blocks.iter().any(|&b| b & (1 << i) != 0 && b & (1 << j) != 0);
            if !same_block {
                flat_graph = flat_graph.delete_edge_idx(i, j);
            }
        }
        // G/F: contract each block to a vertex of summed weight, connect
        // blocks joined by any edge of G.
        let weights: Vec<u32> = blocks.iter().map(|&b| g.mask_weight(b)).collect();
        let mut edges = Vec::new();
        for a in 0..kappa {
            for b in (a + 1)..kappa {
                let connected = g.edges().iter().any(|&(i, j)| {
                    (blocks[a] & (1 << i) != 0 && blocks[b] & (1 << j) != 0)
                        || (blocks[b] & (1 << i) != 0 && blocks[a] & (1 << j) != 0)
                });
                if connected {
                    edges.push((a, b));
                }
            }
        }
        let contracted = WeightedGraph::from_indices(&weights, &edges);
        let ao = contracted.count_acyclic_orientations();
        let mut coef = rat_int(ao as i64);
        if kappa % 2 == 1 {
            coef = -coef;
        }
        result = out.add(flat_graph, coef);
    });
    result.map_err(CsfError::Graph)?;
    Ok(out)
}

/// Calls `f` on every unordered set partition of `{0, …, n−1}` into nonempty
/// blocks, each block a bitmask, via restricted-growth recursion.
pub fn for_each_set_partition(n: usize, f: &mut impl FnMut(&[VertexMask])) {
    let mut blocks: Vec<VertexMask> = Vec::new();
    fn rec(v: usize, n: usize, blocks: &mut Vec<VertexMask>, f: &mut impl FnMut(&[VertexMask])) {
        if v == n {
            f(blocks);
            return;
        }
        let bit = 1 << v;
        for k in 0..blocks.len() {
            blocks[k] |= bit;
            rec(v + 1, n, blocks, f);
            blocks[k] &= !bit;
        }
        blocks.push(bit);
        rec(v + 1, n, blocks, f);
        blocks.pop();
    }
    rec(0, n, &mut blocks, f);
}

/// Report for the contraction–deletion identity and its complement form.
#[derive(Clone, Debug)]
pub struct ContractionDeletionReport {
    /// `X_G = X_{G∖e} − X_{G/e}` in Lambda.
    pub deletion_contraction: bool,
    /// `X_{complement(G∖e)} = X_{complement(G)} − X_{complement(G/e)}`.
    pub complement_relation: bool,
}

impl ContractionDeletionReport {
    pub fn passed(&self) -> bool {
        self.deletion_contraction && self.complement_relation
    }
}

/// Checks both contraction–deletion identities for one edge.
pub fn contraction_deletion_check(
    g: &WeightedGraph,
    a: &str,
    b: &str,
) -> Result<ContractionDeletionReport, CsfError> {
    let deleted = g.delete_edge(a, b).map_err(CsfError::Graph)?;
    let contracted = g.contract_edge(a, b).map_err(CsfError::Graph)?;

    let x_g = csf(g, Basis::P)?;
    let x_del = csf(&deleted, Basis::P)?;
    let x_con = csf(&contracted, Basis::P)?;
    let deletion_contraction =
        x_g.compare(&x_del.sub(&x_con).map_err(CsfError::Symfunc)?).equal;

    let xc_g = csf(&g.complement(), Basis::MTilde)?;
    let xc_del = csf(&deleted.complement(), Basis::MTilde)?;
    let xc_con = csf(&contracted.complement(), Basis::MTilde)?;
    let complement_relation =
        xc_del.compare(&xc_g.sub(&xc_con).map_err(CsfError::Symfunc)?).equal;

    Ok(ContractionDeletionReport { deletion_contraction, complement_relation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_unweighted, enumerate_weighted, special_graph, SpecialKind};
    use crate::series::hopf_axiom_check;

    fn p_el(parts: &[u32]) -> Series {
        Series::basis_element(Basis::P, Partition::of(parts))
    }

    fn paw() -> WeightedGraph {
        // triangle a,b,c with pendant d on a
        WeightedGraph::from_indices(&[1, 1, 1, 1], &[(0, 1), (0, 2), (1, 2), (0, 3)])
    }

    #[test]
    fn single_vertex_is_power_sum() {
        for n in 1..=5 {
            let g = special_graph(SpecialKind::Clique, &Partition::of(&[n])).unwrap();
            assert_eq!(csf(&g, Basis::P).unwrap(), p_el(&[n]));
        }
    }

    #[test]
    fn clique_is_scaled_elementary() {
        // X_{K_n} = n! e_n
        for n in 1..=5u32 {
            let g = special_graph(SpecialKind::Clique, &Partition::of(&vec![1; n as usize])).unwrap();
            let e = csf(&g, Basis::E).unwrap();
            let expected = Series::basis_element(Basis::E, Partition::of(&[n]))
                .scale(&crate::scalar::factorial_rat(n as u64));
            assert_eq!(e, expected);
        }
    }

    #[test]
    fn paw_power_sum_expansion() {
        let x = csf(&paw(), Basis::P).unwrap();
        let expected = p_el(&[1, 1, 1, 1])
            .sub(&p_el(&[2, 1, 1]).scale(&rat_int(4)))
            .unwrap()
            .add(&p_el(&[2, 2]))
            .unwrap()
            .add(&p_el(&[3, 1]).scale(&rat_int(4)))
            .unwrap()
            .sub(&p_el(&[4]).scale(&rat_int(2)))
            .unwrap();
        assert_eq!(x, expected);
    }

    #[test]
    fn oracle_fixtures() {
        // K_2 → m̃_(1,1), i.e. 2 m_(1,1)
        let k2 = special_graph(SpecialKind::Clique, &Partition::of(&[1, 1])).unwrap();
        let m = csf_oracle(&k2).unwrap();
        assert_eq!(m.coeff(&Partition::of(&[1, 1])), rat_int(2));
        assert_eq!(m.num_terms(), 1);

        // path-3 → m̃_(1,1,1) + m̃_(2,1)
        let p3 = special_graph(SpecialKind::Path, &Partition::of(&[1, 1, 1])).unwrap();
        let mt = csf_oracle(&p3).unwrap().convert(Basis::MTilde).unwrap();
        assert_eq!(mt.coeff(&Partition::of(&[1, 1, 1])), rat_int(1));
        assert_eq!(mt.coeff(&Partition::of(&[2, 1])), rat_int(1));
        assert_eq!(mt.num_terms(), 2);

        // edgeless weighted (2,1): oracle equals p_2·p_1 = m̃_3 + m̃_(2,1)
        let e = special_graph(SpecialKind::Edgeless, &Partition::of(&[2, 1])).unwrap();
        let via_oracle = csf_oracle(&e).unwrap().convert(Basis::MTilde).unwrap();
        let via_mult = p_el(&[2]).multiply(&p_el(&[1])).unwrap().convert(Basis::MTilde).unwrap();
        assert_eq!(via_oracle, via_mult);
        assert_eq!(via_oracle.coeff(&Partition::of(&[3])), rat_int(1));
        assert_eq!(via_oracle.coeff(&Partition::of(&[2, 1])), rat_int(1));
    }

    #[test]
    fn routes_agree_on_unweighted_up_to_5() {
        for n in 0..=5 {
            for g in enumerate_unweighted(n) {
                let via_p = csf(&g, Basis::P).unwrap();
                let via_st = csf_via_stable_partitions(&g).convert(Basis::P).unwrap();
                assert_eq!(via_p, via_st, "route mismatch on {:?}", g);
            }
        }
    }

    #[test]
    fn routes_agree_on_weighted() {
        // total weight exceeds the conversion bound here, so the comparison
        // goes through the |V|-variable image
        for g in enumerate_weighted(4, 3) {
            assert!(routes_agree(&g).unwrap(), "route mismatch on {:?}", g);
        }
    }

    #[test]
    fn routes_agree_on_random_six_vertex_graphs() {
        // 200 deterministic 6-vertex graphs via an xorshift stream.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let bits = next();
            let pairs: Vec<(usize, usize)> =
                (0..6).flat_map(|i| ((i + 1)..6).map(move |j| (i, j))).collect();
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(k, _)| bits & (1 << k) != 0)
                .map(|(_, &e)| e)
                .collect();
            let g = WeightedGraph::from_indices(&[1; 6], &edges);
            let via_p = csf(&g, Basis::P).unwrap();
            let via_st = csf_via_stable_partitions(&g).convert(Basis::P).unwrap();
            assert_eq!(via_p, via_st, "route mismatch on {:?}", g);
        }
    }

    #[test]
    fn oracle_agrees_with_routes() {
        for n in 0..=4 {
            for g in enumerate_unweighted(n) {
                let m = csf(&g, Basis::M).unwrap();
                assert_eq!(m, csf_oracle(&g).unwrap(), "oracle mismatch on {:?}", g);
            }
        }
        for g in enumerate_weighted(3, 3) {
            let m = csf(&g, Basis::M).unwrap();
            assert_eq!(m, csf_oracle(&g).unwrap(), "oracle mismatch on {:?}", g);
        }
    }

    #[test]
    fn csf_multiplies_over_disjoint_unions_and_joins() {
        for g in enumerate_unweighted(3) {
            for h in enumerate_unweighted(2) {
                // Lambda: disjoint unions
                let lhs = csf(&g.disjoint_union(&h), Basis::P).unwrap();
                let rhs = csf(&g, Basis::P).unwrap().multiply(&csf(&h, Basis::P).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                // LambdaTilde: complements multiply over joins
                let cu = csf(&g.disjoint_union(&h).complement(), Basis::MTilde)
                    .unwrap()
                    .into_algebra(Algebra::LambdaTilde)
                    .unwrap();
                let cg = csf(&g.complement(), Basis::MTilde)
                    .unwrap()
                    .into_algebra(Algebra::LambdaTilde)
                    .unwrap();
                let ch = csf(&h.complement(), Basis::MTilde)
                    .unwrap()
                    .into_algebra(Algebra::LambdaTilde)
                    .unwrap();
                assert_eq!(cu, cg.multiply(&ch).unwrap());
            }
        }
    }

    #[test]
    fn wgraphs_coproduct_matches_series_coproduct() {
        let k2 = special_graph(SpecialKind::Clique, &Partition::of(&[1, 1])).unwrap();
        let splits = wgraphs_coproduct(&k2);
        assert_eq!(splits.len(), 4);

        for n in 0..=4 {
            for g in enumerate_unweighted(n) {
                let via_graph = wgraphs_coproduct_csf(&g, Basis::P).unwrap();
                let via_series = csf(&g, Basis::P).unwrap().coproduct().unwrap();
                let a: BTreeMap<_, _> =
                    via_graph.terms().map(|(k, c)| (k.clone(), c.clone())).collect();
                let b: BTreeMap<_, _> =
                    via_series.terms().map(|(k, c)| (k.clone(), c.clone())).collect();
                assert_eq!(a, b, "coproduct mismatch on {:?}", g);
            }
        }
    }

    #[test]
    fn counit_through_coproduct() {
        // (ε⊗ε)Δ = ε: only a split with both sides empty contributes, which
        // exists exactly when the graph itself is empty.
        let eps = |g: &WeightedGraph| csf(g, Basis::P).unwrap().counit();
        let empty = WeightedGraph::from_indices(&[], &[]);
        for g in [paw(), empty] {
            let total: Rational =
                wgraphs_coproduct(&g).iter().map(|(l, r)| eps(l) * eps(r)).sum();
            assert_eq!(total, eps(&g));
            let survivors = wgraphs_coproduct(&g)
                .iter()
                .filter(|(l, r)| l.vertex_count() == 0 && r.vertex_count() == 0)
                .count();
            assert_eq!(survivors, if g.vertex_count() == 0 { 1 } else { 0 });
        }
    }

    #[test]
    fn schmitt_fixtures() {
        let k1 = special_graph(SpecialKind::Clique, &Partition::of(&[1])).unwrap();
        let s = antipode_schmitt(&k1).unwrap();
        assert_eq!(s.coeff(&k1).unwrap(), rat_int(-1));
        assert_eq!(s.num_terms(), 1);

        let k2 = special_graph(SpecialKind::Clique, &Partition::of(&[1, 1])).unwrap();
        let s = antipode_schmitt(&k2).unwrap();
        assert_eq!(s.coeff(&k2).unwrap(), rat_int(-1));
        let two_iso = special_graph(SpecialKind::Edgeless, &Partition::of(&[1, 1])).unwrap();
        assert_eq!(s.coeff(&two_iso).unwrap(), rat_int(2));
        // CSF-level check: csf(S(K2)) = p_(1,1) + p_2 = S(csf(K2))
        let lhs = csf_of_graphsum(&s, Basis::P).unwrap();
        assert_eq!(lhs, p_el(&[1, 1]).add(&p_el(&[2])).unwrap());
        assert_eq!(lhs, csf(&k2, Basis::P).unwrap().antipode().unwrap());

        // edgeless weighted graphs map to (−1)^ℓ p_λ
        let lam = Partition::of(&[3, 2]);
        let e = special_graph(SpecialKind::Edgeless, &lam).unwrap();
        let s = csf_of_graphsum(&antipode_schmitt(&e).unwrap(), Basis::P).unwrap();
        assert_eq!(s, p_el(&[3, 2]));
    }

    #[test]
    fn humpert_martin_fixtures() {
        let k1 = special_graph(SpecialKind::Clique, &Partition::of(&[1])).unwrap();
        let s = antipode_humpert_martin(&k1).unwrap();
        assert_eq!(s.coeff(&k1).unwrap(), rat_int(-1));

        let k2 = special_graph(SpecialKind::Clique, &Partition::of(&[1, 1])).unwrap();
        let s = antipode_humpert_martin(&k2).unwrap();
        let two_iso = special_graph(SpecialKind::Edgeless, &Partition::of(&[1, 1])).unwrap();
        assert_eq!(s.coeff(&two_iso).unwrap(), rat_int(2));
        assert_eq!(s.coeff(&k2).unwrap(), rat_int(-1));

        // K_3 agrees with the set-partition formula after collection
        let k3 = special_graph(SpecialKind::Clique, &Partition::of(&[1, 1, 1])).unwrap();
        assert_eq!(antipode_humpert_martin(&k3).unwrap(), antipode_schmitt(&k3).unwrap());
    }

    #[test]
    fn antipode_triple_agreement_small() {
        for n in 0..=4 {
            for g in enumerate_unweighted(n) {
                let via_schmitt = csf_of_graphsum(&antipode_schmitt(&g).unwrap(), Basis::P).unwrap();
                let via_hm =
                    csf_of_graphsum(&antipode_humpert_martin(&g).unwrap(), Basis::P).unwrap();
                let direct = csf(&g, Basis::P).unwrap().antipode().unwrap();
                assert_eq!(via_schmitt, direct, "set-partition antipode vs S on {:?}", g);
                assert_eq!(via_hm, direct, "flat antipode vs S on {:?}", g);
            }
        }
    }

    #[test]
    fn csf_of_graphsum_fixtures() {
        let k1 = special_graph(SpecialKind::Clique, &Partition::of(&[1])).unwrap();
        let mut s = GraphSum::new();
        s.add(k1.clone(), rat_int(2)).unwrap();
        assert_eq!(csf_of_graphsum(&s, Basis::P).unwrap(), p_el(&[1]).scale(&rat_int(2)));

        let k2 = special_graph(SpecialKind::Clique, &Partition::of(&[1, 1])).unwrap();
        let two_iso = special_graph(SpecialKind::Edgeless, &Partition::of(&[1, 1])).unwrap();
        let mut s = GraphSum::new();
        s.add(k2, rat_int(1)).unwrap();
        s.add(two_iso, rat_int(-1)).unwrap();
        assert_eq!(csf_of_graphsum(&s, Basis::P).unwrap(), p_el(&[2]).scale(&rat_int(-1)));

        assert_eq!(csf_of_graphsum(&GraphSum::new(), Basis::P).unwrap().num_terms(), 0);
    }

    #[test]
    fn contraction_deletion_fixtures() {
        let k2 = special_graph(SpecialKind::Clique, &Partition::of(&[1, 1])).unwrap();
        assert!(contraction_deletion_check(&k2, "v0", "v1").unwrap().passed());
        let k3 = special_graph(SpecialKind::Clique, &Partition::of(&[1, 1, 1])).unwrap();
        assert!(contraction_deletion_check(&k3, "v0", "v2").unwrap().passed());
    }

    #[test]
    fn coefficient_identities_for_unweighted_graphs() {
        // [p_(3,1^{n−3})] X_G = #P₃ − #K₃ and [m̃_(3,1^{n−3})] X_Ḡ = #K₃
        for n in 3..=5 {
            for g in enumerate_unweighted(n) {
                let (p3, k3) = g.count_paths3_triangles();
                let mut parts = vec![1u32; n - 3];
                parts.push(3);
                let lambda = Partition::of(&parts);
                let x = csf(&g, Basis::P).unwrap();
                assert_eq!(x.coeff(&lambda), rat_int(p3 as i64 - k3 as i64), "on {:?}", g);
                let xc = csf(&g.complement(), Basis::MTilde).unwrap();
                assert_eq!(xc.coeff(&lambda), rat_int(k3 as i64), "on {:?}", g);
            }
        }
    }

    #[test]
    fn hopf_axioms_hold_on_csf_elements() {
        for g in enumerate_unweighted(4) {
            let f = csf(&g, Basis::P).unwrap();
            assert!(hopf_axiom_check(&f).unwrap().passed(), "Lambda axioms on {:?}", g);
            let ft = csf(&g, Basis::MTilde)
                .unwrap()
                .into_algebra(Algebra::LambdaTilde)
                .unwrap();
            assert!(hopf_axiom_check(&ft).unwrap().passed(), "LambdaTilde axioms on {:?}", g);
        }
    }

    #[test]
    fn orientation_route_is_vertex_order_invariant() {
        let orders: [Vec<usize>; 4] =
            [vec![0, 1, 2, 3], vec![3, 1, 0, 2], vec![2, 3, 1, 0], vec![1, 0, 3, 2]];
        for g in enumerate_unweighted(4) {
            let base = csf_via_orientations(&g, &orders[0]).unwrap();
            for order in &orders[1..] {
                assert_eq!(csf_via_orientations(&g, order).unwrap(), base, "order dep on {:?}", g);
            }
        }
    }
}
