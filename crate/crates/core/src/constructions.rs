//! Explicit Stanley decompositions for powers of edge ideals, assembled
//! from small pieces with [`StanleyDecomposition::tensor`], `shift`,
//! `free_extend` and `concat`.
//!
//! Every assembled piece is verified before it is used. Base cases that
//! have no explicit formula are produced by the partition search at a target
//! that is known to be reachable; a failed search there is reported as
//! [`Error::Contradiction`].

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::monomial::Multidegree;
use crate::sdepth::{decomposition_at_guaranteed_target, search_partition, CharacteristicPoset, SearchOutcome};
use crate::stanley::{ModulePresentation, StanleyDecomposition, StanleySpace};

fn complement(n: usize, vertices: &[usize]) -> Vec<usize> {
    (0..n).filter(|v| !vertices.contains(v)).collect()
}

/// Components of `g` that carry an edge, in the order the power
/// construction prefers them: trees first, then non-bipartite components,
/// then the rest; smaller components first within each class.
pub fn preferred_components(g: &Graph) -> Vec<Vec<usize>> {
    let class = |c: &Vec<usize>| {
        if g.is_tree(c).unwrap_or(false) {
            0
        } else if !g.is_bipartite_on(c) {
            1
        } else {
            2
        }
    };
    let mut comps: Vec<Vec<usize>> = g.components().into_iter().filter(|c| c.len() > 1).collect();
    comps.sort_by_key(|c| (class(c), c.len(), c[0]));
    comps
}

/// Decomposition of `I^k / I^{k+1}` with Stanley depth at least the number
/// of bipartite components.
///
/// Isolated vertices are split off as free variables. A connected bipartite
/// graph is a base case, as is a graph without bipartite components.
/// Otherwise, with `L` the edge ideal of the smallest bipartite component
/// and `J` that of the rest, the layer is the direct sum over `s + t = k` of
/// `L^s J^t / (L^{s+1} J^t + L^s J^{t+1})`, each of which is the tensor
/// product of a layer of `L` and a layer of `J`.
pub fn decompose_layer(g: &Graph, k: u32, budget: u64) -> Result<StanleyDecomposition> {
    let n = g.n();
    let module = ModulePresentation::layer(&g.edge_ideal(), k)?;
    let core = complement(n, &g.isolated_vertices());
    if core.is_empty() {
        let spaces = if k == 0 { vec![StanleySpace::new(Multidegree::zero(n), (0..n).collect())] } else { vec![] };
        return StanleyDecomposition::new(module, spaces);
    }
    if core.len() == n {
        return layer_without_isolated(g, k, budget);
    }
    let d = layer_without_isolated(&g.induced(&core), k, budget)?.free_extend(&core, n)?;
    d.ensure_valid("layer with isolated vertices")?;
    Ok(d)
}

fn layer_without_isolated(g: &Graph, k: u32, budget: u64) -> Result<StanleyDecomposition> {
    let module = ModulePresentation::layer(&g.edge_ideal(), k)?;
    let comps = g.components();
    let mut bipartite: Vec<Vec<usize>> = comps.iter().filter(|c| g.is_bipartite_on(c)).cloned().collect();
    bipartite.sort_by_key(|c| (c.len(), c[0]));

    if bipartite.is_empty() {
        return decomposition_at_guaranteed_target(&module, 0, budget, "layer, no bipartite component");
    }
    if comps.len() == 1 {
        return decomposition_at_guaranteed_target(&module, 1, budget, "layer of a connected bipartite graph");
    }

    let first = &bipartite[0];
    let rest = complement(g.n(), first);
    let (g1, g2) = (g.induced(first), g.induced(&rest));
    let mut parts = Vec::with_capacity(k as usize + 1);
    for s in 0..=k {
        let left = layer_without_isolated(&g1, s, budget)?;
        let right = layer_without_isolated(&g2, k - s, budget)?;
        let piece = left.tensor(first, &right, &rest)?;
        piece.ensure_valid("layer summand")?;
        parts.push(piece.spaces);
    }
    let d = StanleyDecomposition::concat(module, parts)?;
    d.ensure_valid("layer")?;
    Ok(d)
}

/// Decomposition of `S/I^k` (`k >= 1`) as the disjoint union of the layers
/// `I^j / I^{j+1}` for `j < k`.
pub fn decompose_s_mod_power(g: &Graph, k: u32, budget: u64) -> Result<StanleyDecomposition> {
    if k == 0 {
        return Err(Error::Input("S/I^0 is the zero module".into()));
    }
    let module = ModulePresentation::quotient_power(&g.edge_ideal(), k)?;
    let parts = (0..k).map(|j| decompose_layer(g, j, budget).map(|d| d.spaces)).collect::<Result<Vec<_>>>()?;
    let d = StanleyDecomposition::concat(module, parts)?;
    d.ensure_valid("S/I^k")?;
    Ok(d)
}

/// Decomposition of `I(G)^k` with Stanley depth at least 2 for a tree `G`
/// with at least one edge.
///
/// With a leaf `v1` attached to `v2`, the recursion uses
/// `I^k = (I^k ∩ K[x ≠ x1]) ⊕ x1 (I^k : x1)` and
/// `(I^k : x1) = ((I^k : x1) ∩ K[x ≠ x2]) ⊕ x2 I^{k-1}`, where the first
/// summand of the colon is `I(G \ {v1, v2})^k` with `x1` free.
pub fn decompose_power_tree(g: &Graph, k: u32, budget: u64) -> Result<StanleyDecomposition> {
    if !g.is_tree_graph() || !g.has_edges() {
        return Err(Error::Input(format!("expected a tree with at least one edge, got {g}")));
    }
    if k == 0 {
        return Err(Error::Input("power construction needs k >= 1".into()));
    }
    let n = g.n();
    let ideal = g.edge_ideal();
    let module = ModulePresentation::ideal_power(&ideal, k)?;
    if n == 2 {
        let d = StanleyDecomposition::new(module, vec![StanleySpace::new(Multidegree::new(vec![k, k]), vec![0, 1])])?;
        return Ok(d);
    }
    if k == 1 {
        return decomposition_at_guaranteed_target(&module, 2, budget, "edge ideal of a tree");
    }

    let leaf = g.find_leaf().expect("a tree with an edge has a leaf");
    let stem = *g.neighbors(leaf).iter().next().expect("a leaf has a neighbour");

    // I^k ∩ S', S' without x_leaf.
    let without_leaf = complement(n, &[leaf]);
    let restricted = decompose_power_tree(&g.induced(&without_leaf), k, budget)?.embed_spaces(&without_leaf, n);

    // (I^k : x_leaf) = (I(G')^k with x_leaf free) ⊕ x_stem I^{k-1}.
    let colon = ideal.power(k)?.colon(&Multidegree::unit(n, leaf))?;
    let mut colon_parts = Vec::with_capacity(2);
    let without_stem = complement(n, &[stem]);
    let h = g.induced(&without_stem);
    if h.has_edges() {
        colon_parts.push(decompose_power_general(&h, k, budget)?.embed_spaces(&without_stem, n));
    }
    let lower_power = decompose_power_tree(g, k - 1, budget)?.shift(&Multidegree::unit(n, stem))?;
    lower_power.ensure_valid("x_stem I^(k-1)")?;
    colon_parts.push(lower_power.spaces);
    let colon_dec = StanleyDecomposition::concat(ModulePresentation::ideal(&colon), colon_parts)?;
    colon_dec.ensure_valid("leaf colon ideal")?;
    let shifted = colon_dec.shift(&Multidegree::unit(n, leaf))?;

    let d = StanleyDecomposition::concat(module, [restricted, shifted.spaces])?;
    d.ensure_valid("tree power")?;
    Ok(d)
}

/// Decomposition of `I(H)^l` for a connected graph `H` with an edge: the
/// tree construction for trees, otherwise the best of a search at target 2
/// and a guaranteed search at target 1.
fn decompose_component_power(h: &Graph, l: u32, budget: u64) -> Result<StanleyDecomposition> {
    if h.is_tree_graph() {
        return decompose_power_tree(h, l, budget);
    }
    let module = ModulePresentation::ideal_power(&h.edge_ideal(), l)?;
    let poset = CharacteristicPoset::new(&module)?;
    if let SearchOutcome::Found(p) = search_partition(&poset, 2, budget).outcome {
        return poset.partition_to_decomposition(&p);
    }
    decomposition_at_guaranteed_target(&module, 1, budget, "power of a connected edge ideal")
}

/// Decomposition of `I(G)^k` (`k >= 1`, `G` with an edge).
///
/// With `H` the first of [`preferred_components`], `L = I(H)` and `J` the
/// edge ideal of `G \ V(H)`, the filtration `F_l = Σ_{t <= l} L^t J^{k-t}`
/// has `F_0 = J^k` and `F_l \ F_{l-1} = L^l J^{k-l} \ L^l J^{k-l+1}`, which is
/// the tensor product of `L^l` with the layer `J^{k-l} / J^{k-l+1}`.
pub fn decompose_power_general(g: &Graph, k: u32, budget: u64) -> Result<StanleyDecomposition> {
    if !g.has_edges() {
        return Err(Error::Input("I^k is zero for an edgeless graph".into()));
    }
    if k == 0 {
        return Err(Error::Input("power construction needs k >= 1".into()));
    }
    let n = g.n();
    let module = ModulePresentation::ideal_power(&g.edge_ideal(), k)?;
    let comp = preferred_components(g).swap_remove(0);
    let rest = complement(n, &comp);
    let h = g.induced(&comp);
    if rest.is_empty() {
        return decompose_component_power(&h, k, budget);
    }
    let r = g.induced(&rest);
    if !r.has_edges() {
        let d = decompose_component_power(&h, k, budget)?.free_extend(&comp, n)?;
        d.ensure_valid("power with isolated vertices")?;
        return Ok(d);
    }

    let mut parts = Vec::with_capacity(k as usize + 1);
    let base = decompose_power_general(&r, k, budget)?.free_extend(&rest, n)?;
    base.ensure_valid("J^k")?;
    parts.push(base.spaces);
    for l in 1..=k {
        let left = decompose_component_power(&h, l, budget)?;
        let right = decompose_layer(&r, k - l, budget)?;
        let piece = left.tensor(&comp, &right, &rest)?;
        piece.ensure_valid("filtration quotient")?;
        parts.push(piece.spaces);
    }
    let d = StanleyDecomposition::concat(module, parts)?;
    d.ensure_valid("power")?;
    Ok(d)
}
