//! Multigraded modules `J/I`, Stanley spaces and decompositions, the
//! combinators used to assemble decompositions, and the box verifier.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::monomial::{write_monomial, MonomialIdeal, Multidegree};

/// The module `upper / lower` for monomial ideals `lower ⊆ upper`. Its
/// `K`-basis is the set of monomials in `upper` but not in `lower`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ModuleWire", into = "ModuleWire")]
pub struct ModulePresentation {
    lower: MonomialIdeal,
    upper: MonomialIdeal,
}

#[derive(Serialize, Deserialize)]
struct ModuleWire {
    n: usize,
    lower_gens: Vec<Vec<u32>>,
    upper_gens: Vec<Vec<u32>>,
}

impl TryFrom<ModuleWire> for ModulePresentation {
    type Error = Error;

    fn try_from(w: ModuleWire) -> Result<Self> {
        let ideal =
            |gens: Vec<Vec<u32>>| MonomialIdeal::minimalize(gens.into_iter().map(Multidegree::new).collect(), w.n);
        ModulePresentation::new(ideal(w.lower_gens)?, ideal(w.upper_gens)?)
    }
}

impl From<ModulePresentation> for ModuleWire {
    fn from(m: ModulePresentation) -> Self {
        let gens = |i: &MonomialIdeal| i.gens().iter().map(|g| g.exponents().to_vec()).collect();
        ModuleWire { n: m.n(), lower_gens: gens(&m.lower), upper_gens: gens(&m.upper) }
    }
}

impl ModulePresentation {
    pub fn new(lower: MonomialIdeal, upper: MonomialIdeal) -> Result<Self> {
        if !lower.is_subset_of(&upper)? {
            return Err(Error::Input(format!("lower ideal {lower} is not contained in {upper}")));
        }
        Ok(ModulePresentation { lower, upper })
    }

    /// `S/I`.
    pub fn quotient(i: &MonomialIdeal) -> Self {
        ModulePresentation { lower: i.clone(), upper: MonomialIdeal::unit(i.ambient_n()) }
    }

    /// The ideal `I` as a module.
    pub fn ideal(i: &MonomialIdeal) -> Self {
        ModulePresentation { lower: MonomialIdeal::zero(i.ambient_n()), upper: i.clone() }
    }

    /// The free module `S` in `n` variables.
    pub fn free(n: usize) -> Self {
        ModulePresentation { lower: MonomialIdeal::zero(n), upper: MonomialIdeal::unit(n) }
    }

    /// `I^k / I^{k+1}`.
    pub fn layer(i: &MonomialIdeal, k: u32) -> Result<Self> {
        Ok(ModulePresentation { lower: i.power(k + 1)?, upper: i.power(k)? })
    }

    /// `S / I^k`.
    pub fn quotient_power(i: &MonomialIdeal, k: u32) -> Result<Self> {
        Ok(Self::quotient(&i.power(k)?))
    }

    /// `I^k`.
    pub fn ideal_power(i: &MonomialIdeal, k: u32) -> Result<Self> {
        Ok(Self::ideal(&i.power(k)?))
    }

    pub fn n(&self) -> usize {
        self.upper.ambient_n()
    }

    pub fn lower(&self) -> &MonomialIdeal {
        &self.lower
    }

    pub fn upper(&self) -> &MonomialIdeal {
        &self.upper
    }

    /// Whether `upper ⊆ lower`, i.e. the module has no basis monomials.
    pub fn is_zero(&self) -> bool {
        self.upper.gens().iter().all(|g| self.lower.contains_unchecked(g))
    }

    pub fn contains(&self, a: &Multidegree) -> bool {
        self.upper.contains_unchecked(a) && !self.lower.contains_unchecked(a)
    }

    /// All basis monomials `a <= corner`.
    pub fn basis_in_box(&self, corner: &Multidegree) -> Result<Vec<Multidegree>> {
        corner.check_len(self.n())?;
        let grid = Grid::new(corner.exponents().to_vec());
        let mut out = Vec::new();
        for idx in 0..grid.len() {
            let a = grid.multidegree(idx);
            if self.contains(&a) {
                out.push(a);
            }
        }
        Ok(out)
    }

    /// Componentwise maximum exponent over the generators of both ideals.
    pub fn generator_corner(&self) -> Vec<u32> {
        self.lower.max_exponents().into_iter().zip(self.upper.max_exponents()).map(|(a, b)| a.max(b)).collect()
    }

    /// `x^m · upper / x^m · lower`.
    pub fn shift(&self, m: &Multidegree) -> Result<Self> {
        Ok(ModulePresentation { lower: self.lower.shift(m)?, upper: self.upper.shift(m)? })
    }

    /// Extension of scalars to `n` variables, coordinate `i` going to
    /// `vars[i]`.
    pub fn extend(&self, vars: &[usize], n: usize) -> Result<Self> {
        Ok(ModulePresentation { lower: self.lower.extend(vars, n)?, upper: self.upper.extend(vars, n)? })
    }
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.upper, self.lower)
    }
}

/// The Stanley space `x^u K[Z]`: all `a` with `a_j = u_j` off `Z` and
/// `a_j >= u_j` on `Z`. `vars` is sorted and 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StanleySpace {
    pub u: Multidegree,
    pub vars: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SpaceWire {
    u: Vec<u32>,
    #[serde(rename = "Z")]
    z: Vec<usize>,
}

impl Serialize for StanleySpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpaceWire { u: self.u.exponents().to_vec(), z: self.vars.iter().map(|j| j + 1).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for StanleySpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = SpaceWire::deserialize(d)?;
        if w.z.contains(&0) {
            return Err(serde::de::Error::custom("variable indices in Z start at 1"));
        }
        Ok(StanleySpace::new(Multidegree::new(w.u), w.z.into_iter().map(|j| j - 1).collect()))
    }
}

impl StanleySpace {
    pub fn new(u: Multidegree, mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        StanleySpace { u, vars }
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn contains(&self, a: &Multidegree) -> bool {
        (0..a.len()).all(|j| if self.vars.binary_search(&j).is_ok() { a[j] >= self.u[j] } else { a[j] == self.u[j] })
    }

    fn check(&self, n: usize) -> Result<()> {
        self.u.check_len(n)?;
        match self.vars.iter().find(|&&j| j >= n) {
            Some(&j) => Err(Error::VariableOutOfRange { index: j, n }),
            None => Ok(()),
        }
    }

    /// Coordinates placed at `vars` in `n` variables; no new free variables.
    pub fn embed(&self, vars: &[usize], n: usize) -> StanleySpace {
        StanleySpace::new(self.u.embed(vars, n), self.vars.iter().map(|&j| vars[j]).collect())
    }
}

impl fmt::Display for StanleySpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, &self.u)?;
        write!(f, "·K[")?;
        for (i, j) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "x{}", j + 1)?;
        }
        write!(f, "]")
    }
}

/// A candidate Stanley decomposition of `module`. Validity is never assumed:
/// check it with [`StanleyDecomposition::verify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StanleyDecomposition {
    pub module: ModulePresentation,
    pub spaces: Vec<StanleySpace>,
}

/// Why a decomposition was rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Violation {
    /// A space covers a monomial outside the module.
    CoveredOutsideModule,
    /// A basis monomial lies in no space.
    Uncovered,
    /// A monomial lies in two or more spaces.
    DoubleCovered,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Violation::CoveredOutsideModule => "covered but not in module",
            Violation::Uncovered => "uncovered",
            Violation::DoubleCovered => "double-covered",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub sdepth: Option<usize>,
    pub witness: Option<Multidegree>,
    pub violation: Option<Violation>,
}

impl StanleyDecomposition {
    pub fn new(module: ModulePresentation, spaces: Vec<StanleySpace>) -> Result<Self> {
        for s in &spaces {
            s.check(module.n())?;
        }
        Ok(StanleyDecomposition { module, spaces })
    }

    /// The minimum space dimension; `None` for the empty decomposition.
    pub fn sdepth(&self) -> Option<usize> {
        self.spaces.iter().map(StanleySpace::dim).min()
    }

    /// The verification box corner: one past every generator exponent and
    /// every space corner.
    pub fn verification_corner(&self) -> Vec<u32> {
        let mut corner = self.module.generator_corner();
        for s in &self.spaces {
            for (c, &e) in corner.iter_mut().zip(s.u.exponents()) {
                *c = (*c).max(e);
            }
        }
        corner.iter().map(|c| c + 1).collect()
    }

    /// Checks on the box `[0, B]` that the spaces are pairwise disjoint and
    /// cover exactly the module's basis.
    ///
    /// Every membership predicate involved (in `upper`, in `lower`, in a
    /// space) is constant in coordinate `j` once `a_j` exceeds the largest
    /// threshold in that coordinate, so agreement on the box implies
    /// agreement everywhere.
    pub fn verify(&self) -> Result<VerificationReport> {
        let n = self.module.n();
        for s in &self.spaces {
            s.check(n)?;
        }
        let grid = Grid::new(self.verification_corner());
        let mut counts = vec![0u32; grid.len()];
        for s in &self.spaces {
            let hi: Vec<u32> =
                (0..n).map(|j| if s.vars.binary_search(&j).is_ok() { u32::MAX } else { s.u[j] }).collect();
            grid.for_each_in(s.u.exponents(), &hi, |i| counts[i] = counts[i].saturating_add(1));
        }
        for (idx, &count) in counts.iter().enumerate() {
            let a = grid.multidegree(idx);
            let violation = match (self.module.contains(&a), count) {
                (true, 1) | (false, 0) => None,
                (true, 0) => Some(Violation::Uncovered),
                (false, _) => Some(Violation::CoveredOutsideModule),
                (true, _) => Some(Violation::DoubleCovered),
            };
            if let Some(v) = violation {
                return Ok(VerificationReport { valid: false, sdepth: None, witness: Some(a), violation: Some(v) });
            }
        }
        Ok(VerificationReport { valid: true, sdepth: self.sdepth(), witness: None, violation: None })
    }

    /// [`verify`](Self::verify), turning a rejection into an error.
    pub fn ensure_valid(&self, context: &str) -> Result<()> {
        let report = self.verify()?;
        if report.valid {
            Ok(())
        } else {
            Err(Error::InvalidCertificate(format!(
                "{context}: {} at {} for module {}",
                report.violation.expect("invalid report has a violation"),
                report.witness.expect("invalid report has a witness"),
                self.module
            )))
        }
    }

    /// Tensor product over disjoint variable sets. `self` lives in the
    /// variables `vars` and `other` in `other_vars`; together they must be a
    /// partition of `0..n` for `n = vars.len() + other_vars.len()`.
    ///
    /// For `J1/I1 ⊗ J2/I2` the result presents `J1 J2 / (I1 J2 + J1 I2)` and
    /// has spaces `x^{u+u'} K[Z ∪ Z']`.
    pub fn tensor(
        &self,
        vars: &[usize],
        other: &StanleyDecomposition,
        other_vars: &[usize],
    ) -> Result<StanleyDecomposition> {
        let n = vars.len() + other_vars.len();
        if self.module.n() != vars.len() || other.module.n() != other_vars.len() {
            return Err(Error::Input("tensor: variable maps do not match module sizes".into()));
        }
        let mut seen = vec![false; n];
        for &j in vars.iter().chain(other_vars) {
            if j >= n {
                return Err(Error::VariableOutOfRange { index: j, n });
            }
            if std::mem::replace(&mut seen[j], true) {
                return Err(Error::Input(format!("tensor: variable x{} is shared", j + 1)));
            }
        }
        let a = self.module.extend(vars, n)?;
        let b = other.module.extend(other_vars, n)?;
        let upper = a.upper.product(&b.upper)?;
        let lower = a.lower.product(&b.upper)?.sum(&a.upper.product(&b.lower)?)?;
        let module = ModulePresentation::new(lower, upper)?;

        let left: Vec<StanleySpace> = self.spaces.iter().map(|s| s.embed(vars, n)).collect();
        let right: Vec<StanleySpace> = other.spaces.iter().map(|s| s.embed(other_vars, n)).collect();
        let mut spaces = Vec::with_capacity(left.len() * right.len());
        for s in &left {
            for t in &right {
                let mut z = s.vars.clone();
                z.extend(&t.vars);
                spaces.push(StanleySpace::new(s.u.checked_add(&t.u)?, z));
            }
        }
        Ok(StanleyDecomposition { module, spaces })
    }

    /// Multiply every space and the module by `x^m`.
    pub fn shift(&self, m: &Multidegree) -> Result<StanleyDecomposition> {
        let spaces = self
            .spaces
            .iter()
            .map(|s| Ok(StanleySpace { u: s.u.checked_add(m)?, vars: s.vars.clone() }))
            .collect::<Result<Vec<_>>>()?;
        Ok(StanleyDecomposition { module: self.module.shift(m)?, spaces })
    }

    /// Move into `n` variables (coordinate `i` to `vars[i]`) and make every
    /// other variable free: the decomposition of `M ⊗ K[W]`.
    pub fn free_extend(&self, vars: &[usize], n: usize) -> Result<StanleyDecomposition> {
        let module = self.module.extend(vars, n)?;
        let fresh: Vec<usize> = (0..n).filter(|j| !vars.contains(j)).collect();
        let spaces = self
            .spaces
            .iter()
            .map(|s| {
                let mut e = s.embed(vars, n);
                e.vars.extend(&fresh);
                StanleySpace::new(e.u, e.vars)
            })
            .collect();
        Ok(StanleyDecomposition { module, spaces })
    }

    /// Spaces moved into `n` variables with no new free variables. The
    /// result is a piece of some larger decomposition, not a decomposition of
    /// an `S`-module on its own.
    pub fn embed_spaces(&self, vars: &[usize], n: usize) -> Vec<StanleySpace> {
        self.spaces.iter().map(|s| s.embed(vars, n)).collect()
    }

    /// Concatenate pieces against a target module. Directness is not
    /// checked here; verify the result.
    pub fn concat(
        target: ModulePresentation,
        parts: impl IntoIterator<Item = Vec<StanleySpace>>,
    ) -> Result<StanleyDecomposition> {
        StanleyDecomposition::new(target, parts.into_iter().flatten().collect())
    }
}
