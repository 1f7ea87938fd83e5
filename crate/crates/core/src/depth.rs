//! Depth of `J/I` from Koszul homology, computed one multidegree at a time.
//!
//! `depth M = n - max{i : H_i(x_1..x_n; M) != 0}`. In multidegree `a` the
//! Koszul complex has a basis of variable subsets `T` with `|T| = i` such that
//! `x^{a - e_T}` is a basis monomial of `M`, and the differential sends `T` to
//! `Σ ±(T \ {j})`. Tor of `J/I` is supported on lcms of generators, so the
//! scan over `[0, D]` with `D` the generator corner is complete.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::grid::Grid;
use crate::linalg;
use crate::monomial::Multidegree;
use crate::stanley::ModulePresentation;

/// Total Koszul homology rank per homological degree `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub ranks: Vec<u64>,
}

impl HomologyProfile {
    pub fn n(&self) -> usize {
        self.ranks.len() - 1
    }

    /// `None` for the zero module.
    pub fn depth(&self) -> Option<usize> {
        self.ranks.iter().rposition(|&r| r > 0).map(|top| self.n() - top)
    }
}

/// Subsets of `0..n` of size `i`, as sorted index lists, in lexicographic
/// order.
fn subsets(n: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for j in start..=n - left {
            cur.push(j);
            rec(j + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if i <= n {
        rec(0, n, i, &mut Vec::new(), &mut out);
    }
    out
}

/// Basis of the degree-`a` strand in homological degree `i`.
fn chain_basis(module: &ModulePresentation, a: &Multidegree, i: usize) -> Vec<Vec<usize>> {
    subsets(a.len(), i)
        .into_iter()
        .filter(|t| {
            if t.iter().any(|&j| a[j] == 0) {
                return false;
            }
            let mut e = a.exponents().to_vec();
            for &j in t {
                e[j] -= 1;
            }
            module.contains(&Multidegree::new(e))
        })
        .collect()
}

/// Rank of `∂_i : K_i(a) -> K_{i-1}(a)`.
fn boundary_rank(source: &[Vec<usize>], target: &[Vec<usize>]) -> Result<usize> {
    if source.is_empty() || target.is_empty() {
        return Ok(0);
    }
    let rows: Vec<Vec<i64>> = source
        .iter()
        .map(|t| {
            let mut row = vec![0i64; target.len()];
            for (pos, j) in t.iter().enumerate() {
                let face: Vec<usize> = t.iter().copied().filter(|x| x != j).collect();
                if let Ok(r) = target.binary_search(&face) {
                    row[r] = if pos % 2 == 0 { 1 } else { -1 };
                }
            }
            row
        })
        .collect();
    linalg::rank(&rows)
}

/// Per-degree ranks `dim H_i(a)` for all `i` at once.
fn ranks_at(module: &ModulePresentation, a: &Multidegree) -> Result<Vec<u64>> {
    let n = a.len();
    let bases: Vec<Vec<Vec<usize>>> = (0..=n).map(|i| chain_basis(module, a, i)).collect();
    let mut boundary = vec![0usize; n + 2];
    for i in 1..=n {
        boundary[i] = boundary_rank(&bases[i], &bases[i - 1])?;
    }
    Ok((0..=n).map(|i| (bases[i].len() - boundary[i] - boundary[i + 1]) as u64).collect())
}

/// `dim H_i(x; M)_a` over a field of characteristic zero.
pub fn koszul_rank(module: &ModulePresentation, a: &Multidegree, i: usize) -> Result<u64> {
    a.check_len(module.n())?;
    if i > module.n() {
        return Ok(0);
    }
    Ok(ranks_at(module, a)?[i])
}

/// Total Koszul homology ranks over the generator box.
pub fn homology_profile(module: &ModulePresentation) -> Result<HomologyProfile> {
    let n = module.n();
    let grid = Grid::new(module.generator_corner());
    let per_degree: Vec<Vec<u64>> =
        (0..grid.len()).into_par_iter().map(|idx| ranks_at(module, &grid.multidegree(idx))).collect::<Result<_>>()?;
    let mut ranks = vec![0u64; n + 1];
    for r in per_degree {
        for (acc, x) in ranks.iter_mut().zip(r) {
            *acc += x;
        }
    }
    Ok(HomologyProfile { ranks })
}

/// Nonzero Koszul ranks by multidegree, for debugging output.
pub fn rank_table(module: &ModulePresentation) -> Result<Vec<(Multidegree, Vec<u64>)>> {
    let grid = Grid::new(module.generator_corner());
    let mut out = Vec::new();
    for idx in 0..grid.len() {
        let a = grid.multidegree(idx);
        let r = ranks_at(module, &a)?;
        if r.iter().any(|&x| x > 0) {
            out.push((a, r));
        }
    }
    Ok(out)
}

pub fn depth_exact(module: &ModulePresentation) -> Result<usize> {
    if module.is_zero() {
        return Err(Error::ZeroModule);
    }
    homology_profile(module)?.depth().ok_or(Error::ZeroModule)
}

/// The closed form `depth(S/I(G)^k) = p` for `k >= n - 1`; no claim below
/// that range.
pub fn depth_by_trung(g: &Graph, k: u32) -> Option<usize> {
    if k >= 1 && k as usize + 1 >= g.n() {
        Some(g.bipartite_component_count())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialIdeal;

    fn md(v: &[u32]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    #[test]
    fn subsets_enumerate_lexicographically() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn free_module() {
        let s = ModulePresentation::free(3);
        assert_eq!(koszul_rank(&s, &md(&[0, 0, 0]), 0).unwrap(), 1);
        for i in 1..=3 {
            assert_eq!(koszul_rank(&s, &md(&[0, 0, 0]), i).unwrap(), 0);
        }
        assert_eq!(depth_exact(&s).unwrap(), 3);
    }

    #[test]
    fn quotient_by_x1x2() {
        let m = ModulePresentation::quotient(&MonomialIdeal::principal(md(&[1, 1])));
        assert_eq!(koszul_rank(&m, &md(&[1, 1]), 1).unwrap(), 1);
        assert_eq!(koszul_rank(&m, &md(&[1, 1]), 2).unwrap(), 0);
        assert_eq!(depth_exact(&m).unwrap(), 1);
    }

    #[test]
    fn ranks_vanish_above_the_generator_corner() {
        let m = ModulePresentation::quotient(&MonomialIdeal::principal(md(&[1, 1])));
        for a in [[2, 1], [1, 2], [3, 3], [2, 0]] {
            for i in 0..=2 {
                assert_eq!(koszul_rank(&m, &md(&a), i).unwrap(), 0, "{a:?} {i}");
            }
        }
    }

    #[test]
    fn triangle_square_has_depth_zero() {
        let c3 = Graph::cycle(3).unwrap();
        let m = ModulePresentation::quotient_power(&c3.edge_ideal(), 2).unwrap();
        assert_eq!(depth_exact(&m).unwrap(), 0);
    }

    #[test]
    fn maximal_ideal_quotient() {
        // S/m = K has depth 0 and H_n in degree (1,..,1).
        let m = ModulePresentation::quotient(&MonomialIdeal::variables(3, &[0, 1, 2]).unwrap());
        let p = homology_profile(&m).unwrap();
        assert_eq!(p.ranks, vec![1, 3, 3, 1]);
        assert_eq!(p.depth(), Some(0));
    }

    #[test]
    fn zero_module_has_no_depth() {
        let zero = ModulePresentation::quotient(&MonomialIdeal::unit(2));
        assert_eq!(depth_exact(&zero).unwrap_err(), Error::ZeroModule);
    }

    #[test]
    fn trung_shortcut() {
        assert_eq!(depth_by_trung(&Graph::cycle(3).unwrap(), 2), Some(0));
        assert_eq!(depth_by_trung(&Graph::path(2), 1), Some(1));
        assert_eq!(depth_by_trung(&Graph::cycle(4).unwrap(), 2), None);
        assert_eq!(depth_by_trung(&Graph::path(2), 0), None);
    }
}
