//! Closed-form lower bounds for edge-ideal powers and the checks that
//! compare them against the oracles.
//!
//! Every bound here is a function of `p`, the number of bipartite
//! components (isolated vertices included), and of the component structure.
//! Checks produce a [`BoundReport`]; a `fails` verdict always carries the
//! module and the oracle transcript that refute the claim.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constructions::preferred_components;
use crate::depth::{depth_by_trung, depth_exact};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sdepth::{sdepth_exact, SdepthResult};
use crate::stanley::ModulePresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleKind {
    /// `S/I^k`
    SModPower,
    /// `I^k`
    Power,
    /// `I^k / I^{k+1}`
    Layer,
}

impl ModuleKind {
    pub const ALL: [ModuleKind; 3] = [ModuleKind::SModPower, ModuleKind::Power, ModuleKind::Layer];

    pub fn module(self, g: &Graph, k: u32) -> Result<ModulePresentation> {
        let i = g.edge_ideal();
        match self {
            ModuleKind::SModPower => ModulePresentation::quotient_power(&i, k),
            ModuleKind::Power => ModulePresentation::ideal_power(&i, k),
            ModuleKind::Layer => ModulePresentation::layer(&i, k),
        }
    }
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModuleKind::SModPower => "s-mod-power",
            ModuleKind::Power => "power",
            ModuleKind::Layer => "layer",
        })
    }
}

impl FromStr for ModuleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s-mod-power" => Ok(ModuleKind::SModPower),
            "power" => Ok(ModuleKind::Power),
            "layer" => Ok(ModuleKind::Layer),
            _ => Err(Error::Input(format!("unknown module kind {s:?} (expected s-mod-power, power or layer)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
    /// Open-question vocabulary: the oracle supports the question...
    EvidenceFor,
    /// ...or refutes it with an exact value.
    Counterexample,
}

impl Verdict {
    /// `Fails` and `Counterexample` are the refuting verdicts.
    pub fn is_refutation(self) -> bool {
        matches!(self, Verdict::Fails | Verdict::Counterexample)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
            Verdict::EvidenceFor => "evidence-for",
            Verdict::Counterexample => "counterexample",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub graph: Graph,
    pub k: u32,
    pub kind: ModuleKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleValue {
    pub value: usize,
    pub exact: bool,
    pub nodes: u64,
}

impl From<&SdepthResult> for OracleValue {
    fn from(r: &SdepthResult) -> Self {
        OracleValue { value: r.value, exact: r.exact, nodes: r.nodes }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub module: ModulePresentation,
    pub transcript: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub claim: String,
    pub instance: Instance,
    /// Whether a theorem guarantees `holds`; a refutation of such a claim
    /// means a bug somewhere.
    pub theorem_backed: bool,
    pub bound: Option<usize>,
    pub depth: Option<usize>,
    /// `"koszul"`, `"trung"` or `"trung+1"` (for `I^k`, via the depth lemma).
    pub depth_source: Option<String>,
    pub sdepth: Option<OracleValue>,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl BoundReport {
    fn new(claim: &str, g: &Graph, k: u32, kind: ModuleKind, theorem_backed: bool) -> Self {
        BoundReport {
            claim: claim.to_string(),
            instance: Instance { graph: g.clone(), k, kind },
            theorem_backed,
            bound: None,
            depth: None,
            depth_source: None,
            sdepth: None,
            verdict: Verdict::Inconclusive,
            witness: None,
        }
    }

    fn refute(&mut self, module: ModulePresentation, transcript: String) {
        self.verdict = Verdict::Fails;
        self.witness = Some(Witness { module, transcript });
    }

    /// A refutation of a theorem-backed claim.
    pub fn is_contradiction(&self) -> bool {
        self.theorem_backed && self.verdict.is_refutation()
    }
}

fn transcript(r: &SdepthResult, against: &str, bound: usize) -> String {
    format!("sdepth search: value {} ({}) after {} nodes; {against} {bound}", r.value, r.flag(), r.nodes)
}

/// `ℓ(I(G)) = n - p`.
pub fn analytic_spread_edge(g: &Graph) -> usize {
    g.n() - g.bipartite_component_count()
}

/// `sdepth(I^k / I^{k+1}) >= p` for every `k >= 0`.
pub fn lower_sdepth_quotient_layers(g: &Graph) -> usize {
    g.bipartite_component_count()
}

/// `sdepth(S / I^k) >= p` for every `k >= 1`.
pub fn lower_sdepth_s_mod_power(g: &Graph) -> usize {
    g.bipartite_component_count()
}

/// Best bound `base(H) + h(H)` over components `H` with an edge, where
/// `base` is 2 for trees and 1 otherwise and `h(H)` counts the bipartite
/// components of `G \ V(H)`. This is `p + 1` when `G` has a non-bipartite
/// component or a tree component with an edge, and `p` otherwise.
///
/// Connected bipartite non-trees get `base = 1`: whether 2 holds there is
/// open, and an open question is not a bound.
pub fn lower_sdepth_power(g: &Graph, k: u32) -> Result<usize> {
    if !g.has_edges() {
        return Err(Error::Input("I^k is zero for an edgeless graph".into()));
    }
    if k == 0 {
        return Err(Error::Input("power bound needs k >= 1".into()));
    }
    let best = preferred_components(g)
        .iter()
        .map(|c| {
            let base = if g.is_tree(c).unwrap_or(false) { 2 } else { 1 };
            let rest: Vec<usize> = (0..g.n()).filter(|v| !c.contains(v)).collect();
            base + g.induced(&rest).bipartite_component_count()
        })
        .max()
        .expect("a graph with an edge has a component with an edge");
    Ok(best)
}

/// Whether `G` has a non-bipartite component or a tree component with an
/// edge; for these graphs `sdepth(I^k) >= p + 1`.
pub fn has_power_bonus(g: &Graph) -> bool {
    g.components().iter().any(|c| c.len() > 1 && (!g.is_bipartite_on(c) || g.is_tree(c).unwrap_or(false)))
}

/// The theorem-backed lower bound on `sdepth` for `kind`.
pub fn lower_bound(kind: ModuleKind, g: &Graph, k: u32) -> Result<usize> {
    match kind {
        ModuleKind::SModPower => Ok(lower_sdepth_s_mod_power(g)),
        ModuleKind::Power => lower_sdepth_power(g, k),
        ModuleKind::Layer => Ok(lower_sdepth_quotient_layers(g)),
    }
}

fn bound_claim(kind: ModuleKind) -> &'static str {
    match kind {
        ModuleKind::SModPower => "s-mod-power-sdepth-ge-p",
        ModuleKind::Power => "power-sdepth-bound",
        ModuleKind::Layer => "layer-sdepth-ge-p",
    }
}

/// Compare the exact oracle against [`lower_bound`].
pub fn check_lower_bound(kind: ModuleKind, g: &Graph, k: u32, budget: u64) -> Result<BoundReport> {
    let module = kind.module(g, k)?;
    let bound = lower_bound(kind, g, k)?;
    let r = sdepth_exact(&module, budget)?;
    let mut report = BoundReport::new(bound_claim(kind), g, k, kind, true);
    report.bound = Some(bound);
    report.sdepth = Some((&r).into());
    if r.value >= bound {
        report.verdict = Verdict::Holds;
    } else if r.exact {
        report.refute(module, transcript(&r, "bound", bound));
    }
    Ok(report)
}

/// Depth of the module, by the closed form when one applies.
pub fn depth_of(kind: ModuleKind, g: &Graph, k: u32) -> Result<(usize, &'static str)> {
    let module = kind.module(g, k)?;
    if module.is_zero() {
        return Err(Error::ZeroModule);
    }
    // depth(I^k) = depth(S/I^k) + 1 because depth(S/I^k) < n for I != 0.
    match (kind, depth_by_trung(g, k)) {
        (ModuleKind::SModPower, Some(d)) => Ok((d, "trung")),
        (ModuleKind::Power, Some(d)) => Ok((d + 1, "trung+1")),
        _ => Ok((depth_exact(&module)?, "koszul")),
    }
}

/// Whether a theorem guarantees `depth <= sdepth` for this instance:
/// `S/I^k` for `k >= n - 1`, and `I^k` for `k >= n - 1` when `G` has a
/// non-bipartite or tree component.
pub fn stanley_inequality_is_theorem(kind: ModuleKind, g: &Graph, k: u32) -> bool {
    let large = k >= 1 && k as usize + 1 >= g.n();
    match kind {
        ModuleKind::SModPower => large,
        ModuleKind::Power => large && g.has_edges() && has_power_bonus(g),
        ModuleKind::Layer => false,
    }
}

/// Stanley's inequality `depth M <= sdepth M` for `M` of the given kind.
/// The theorem bound is tried first; the exact oracle runs only when the
/// bound alone does not reach the depth.
pub fn stanley_verdict(kind: ModuleKind, g: &Graph, k: u32, budget: u64) -> Result<BoundReport> {
    let (depth, source) = depth_of(kind, g, k)?;
    let bound = lower_bound(kind, g, k)?;
    let mut report = BoundReport::new("stanley-inequality", g, k, kind, stanley_inequality_is_theorem(kind, g, k));
    report.bound = Some(bound);
    report.depth = Some(depth);
    report.depth_source = Some(source.to_string());
    if bound >= depth {
        report.verdict = Verdict::Holds;
        return Ok(report);
    }
    let module = kind.module(g, k)?;
    let r = sdepth_exact(&module, budget)?;
    report.sdepth = Some((&r).into());
    if r.value >= depth {
        report.verdict = Verdict::Holds;
    } else if r.exact {
        report.refute(module, transcript(&r, "depth", depth));
    }
    Ok(report)
}

/// `sdepth(S/I^k) >= n - ℓ(I)` for edge-ideal powers, which the quotient
/// bound settles since `n - ℓ(I) = p`. With `cross_check` the exact oracle
/// is run as well and can refute.
pub fn conjecture_check_s_mod(g: &Graph, k: u32, cross_check: Option<u64>) -> Result<BoundReport> {
    if k == 0 {
        return Err(Error::Input("S/I^0 is the zero module".into()));
    }
    let target = g.n() - analytic_spread_edge(g);
    let mut report = BoundReport::new("s-mod-sdepth-ge-n-minus-spread", g, k, ModuleKind::SModPower, true);
    report.bound = Some(target);
    report.verdict = Verdict::Holds;
    if let Some(budget) = cross_check {
        let module = ModuleKind::SModPower.module(g, k)?;
        let r = sdepth_exact(&module, budget)?;
        report.sdepth = Some((&r).into());
        if r.exact && r.value < target {
            report.refute(module, transcript(&r, "n - spread", target));
        }
    }
    Ok(report)
}

/// Is `sdepth(I(G)^k) >= 2` for connected bipartite `G`? Only `k = 1` is
/// known; the verdict is phrased as evidence, never as a bound.
pub fn question_experiment(g: &Graph, k: u32, budget: u64) -> Result<BoundReport> {
    if !g.has_edges() || g.components().len() != 1 || !g.is_bipartite() {
        return Err(Error::Input(format!("expected a connected bipartite graph with an edge, got {g}")));
    }
    if k == 0 {
        return Err(Error::Input("question concerns k >= 1".into()));
    }
    let module = ModuleKind::Power.module(g, k)?;
    let r = sdepth_exact(&module, budget)?;
    let mut report = BoundReport::new("question-power-sdepth-ge-2", g, k, ModuleKind::Power, false);
    report.bound = Some(2);
    report.sdepth = Some((&r).into());
    report.verdict = if r.value >= 2 {
        Verdict::EvidenceFor
    } else if r.exact {
        report.witness = Some(Witness { module, transcript: transcript(&r, "target", 2) });
        Verdict::Counterexample
    } else {
        Verdict::Inconclusive
    };
    Ok(report)
}

/// `depth(I^k/I^{k+1}) >= min(depth(S/I^{k+1}), depth(S/I^k) + 1)`, from
/// the sequence `0 -> I^k/I^{k+1} -> S/I^{k+1} -> S/I^k -> 0`. Returns the
/// three depths, or `None` when one of the modules is zero.
pub fn depth_lemma_triple(g: &Graph, k: u32) -> Result<Option<(usize, usize, usize)>> {
    let i = g.edge_ideal();
    let layer = ModulePresentation::layer(&i, k)?;
    let next = ModulePresentation::quotient_power(&i, k + 1)?;
    let cur = ModulePresentation::quotient_power(&i, k)?;
    if k == 0 || layer.is_zero() || cur.is_zero() {
        return Ok(None);
    }
    Ok(Some((depth_exact(&layer)?, depth_exact(&next)?, depth_exact(&cur)?)))
}

/// Every claim that applies to `(g, k)`, skipping instances whose module is
/// zero. Used by the sweep harness.
pub fn claims_for(g: &Graph, k: u32, budget: u64) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    let layer_nonzero = k == 0 || g.has_edges();
    if layer_nonzero {
        out.push(check_lower_bound(ModuleKind::Layer, g, k, budget)?);
    }
    if k >= 1 {
        out.push(check_lower_bound(ModuleKind::SModPower, g, k, budget)?);
        out.push(conjecture_check_s_mod(g, k, Some(budget))?);
        out.push(stanley_verdict(ModuleKind::SModPower, g, k, budget)?);
        if g.has_edges() {
            out.push(check_lower_bound(ModuleKind::Power, g, k, budget)?);
            out.push(stanley_verdict(ModuleKind::Power, g, k, budget)?);
        }
    }
    Ok(out)
}
