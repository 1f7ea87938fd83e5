//! Monomials as exponent vectors and monomial ideals given by their minimal
//! generating sets.
//!
//! Every ideal is kept in canonical form: minimal generators, sorted
//! lexicographically. Two ideals are equal exactly when their canonical forms
//! agree, so `==` on [`MonomialIdeal`] is ideal equality.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of a monomial `x^a` in a fixed number of variables.
///
/// The derived ordering is lexicographic; divisibility is the componentwise
/// order exposed through [`Multidegree::divides`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(Vec<u32>);

impl Multidegree {
    pub fn new(exponents: Vec<u32>) -> Self {
        Multidegree(exponents)
    }

    pub fn zero(n: usize) -> Self {
        Multidegree(vec![0; n])
    }

    /// The variable `x_j` (0-based).
    pub fn unit(n: usize, j: usize) -> Self {
        let mut e = vec![0; n];
        e[j] = 1;
        Multidegree(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn into_exponents(self) -> Vec<u32> {
        self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    /// Variables with a positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&j| self.0[j] > 0).collect()
    }

    /// `x^self | x^other`, i.e. `self <= other` componentwise.
    pub fn divides(&self, other: &Multidegree) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: n, got: self.len() })
        }
    }

    /// Product of monomials.
    pub fn checked_add(&self, other: &Multidegree) -> Result<Multidegree> {
        other.check_len(self.len())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Multidegree)
    }

    /// Least common multiple.
    pub fn lcm(&self, other: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// `x^self / gcd(x^self, x^other)`.
    pub fn quotient_by_gcd(&self, other: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a - a.min(b)).collect())
    }

    /// Projection onto the listed variables.
    pub fn project(&self, vars: &[usize]) -> Multidegree {
        Multidegree(vars.iter().map(|&j| self.0[j]).collect())
    }

    /// Inverse of [`Multidegree::project`]: place coordinate `i` at `vars[i]`
    /// in a vector of length `n`, zero elsewhere.
    pub fn embed(&self, vars: &[usize], n: usize) -> Multidegree {
        debug_assert_eq!(self.len(), vars.len());
        let mut e = vec![0; n];
        for (i, &j) in vars.iter().enumerate() {
            e[j] = self.0[i];
        }
        Multidegree(e)
    }
}

impl std::ops::Index<usize> for Multidegree {
    type Output = u32;

    fn index(&self, j: usize) -> &u32 {
        &self.0[j]
    }
}

impl From<Vec<u32>> for Multidegree {
    fn from(v: Vec<u32>) -> Self {
        Multidegree(v)
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A monomial ideal of `K[x_1, ..., x_n]`, stored as its minimal generating
/// set in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IdealWire", into = "IdealWire")]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Multidegree>,
}

#[derive(Serialize, Deserialize)]
struct IdealWire {
    n: usize,
    gens: Vec<Vec<u32>>,
}

impl TryFrom<IdealWire> for MonomialIdeal {
    type Error = Error;

    fn try_from(w: IdealWire) -> Result<Self> {
        MonomialIdeal::minimalize(w.gens.into_iter().map(Multidegree).collect(), w.n)
    }
}

impl From<MonomialIdeal> for IdealWire {
    fn from(i: MonomialIdeal) -> Self {
        IdealWire { n: i.n, gens: i.gens.into_iter().map(Multidegree::into_exponents).collect() }
    }
}

impl MonomialIdeal {
    /// Reduce an arbitrary generating set to the minimal one.
    pub fn minimalize(gens: Vec<Multidegree>, n: usize) -> Result<Self> {
        for g in &gens {
            g.check_len(n)?;
        }
        Ok(Self::minimalize_unchecked(gens, n))
    }

    fn minimalize_unchecked(mut gens: Vec<Multidegree>, n: usize) -> Self {
        // A divisor has total degree at most that of its multiple, so after
        // this sort every candidate only needs checking against kept ones.
        gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        gens.dedup();
        let mut kept: Vec<Multidegree> = Vec::with_capacity(gens.len());
        for g in gens {
            if !kept.iter().any(|k| k.divides(&g)) {
                kept.push(g);
            }
        }
        kept.sort();
        MonomialIdeal { n, gens: kept }
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal { n, gens: vec![Multidegree::zero(n)] }
    }

    pub fn principal(m: Multidegree) -> Self {
        MonomialIdeal { n: m.len(), gens: vec![m] }
    }

    /// The ideal generated by the listed variables (0-based).
    pub fn variables(n: usize, vars: &[usize]) -> Result<Self> {
        let gens = vars
            .iter()
            .map(|&j| if j < n { Ok(Multidegree::unit(n, j)) } else { Err(Error::VariableOutOfRange { index: j, n }) })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::minimalize_unchecked(gens, n))
    }

    pub fn ambient_n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Multidegree] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].exponents().iter().all(|&e| e == 0)
    }

    fn check_same(&self, other: &MonomialIdeal) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: self.n, got: other.n })
        }
    }

    pub fn contains(&self, a: &Multidegree) -> Result<bool> {
        a.check_len(self.n)?;
        Ok(self.contains_unchecked(a))
    }

    /// Membership without the length check, for hot loops whose inputs are
    /// already validated.
    pub(crate) fn contains_unchecked(&self, a: &Multidegree) -> bool {
        self.gens.iter().any(|g| g.divides(a))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.gens.iter().all(|g| other.contains_unchecked(g)))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_same(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::minimalize_unchecked(gens, self.n))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_same(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.checked_add(b)?);
            }
        }
        Ok(Self::minimalize_unchecked(gens, self.n))
    }

    pub fn power(&self, k: u32) -> Result<Self> {
        let mut acc = MonomialIdeal::unit(self.n);
        for _ in 0..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_same(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        Ok(Self::minimalize_unchecked(gens, self.n))
    }

    /// The colon ideal `(self : x^m)`.
    pub fn colon(&self, m: &Multidegree) -> Result<Self> {
        m.check_len(self.n)?;
        let gens = self.gens.iter().map(|g| g.quotient_by_gcd(m)).collect();
        Ok(Self::minimalize_unchecked(gens, self.n))
    }

    /// Multiply every generator by `x^m`.
    pub fn shift(&self, m: &Multidegree) -> Result<Self> {
        m.check_len(self.n)?;
        let gens = self.gens.iter().map(|g| g.checked_add(m)).collect::<Result<Vec<_>>>()?;
        // Shifting preserves minimality and relative order.
        Ok(MonomialIdeal { n: self.n, gens })
    }

    /// `self ∩ K[vars]`, as an ideal in the variables `vars` (in the listed
    /// order).
    pub fn restrict(&self, vars: &[usize]) -> Result<Self> {
        for &j in vars {
            if j >= self.n {
                return Err(Error::VariableOutOfRange { index: j, n: self.n });
            }
        }
        let inside = |g: &Multidegree| g.support().iter().all(|j| vars.contains(j));
        let gens = self.gens.iter().filter(|g| inside(g)).map(|g| g.project(vars)).collect();
        Ok(Self::minimalize_unchecked(gens, vars.len()))
    }

    /// Extension of an ideal over the variables `vars` to `K[x_1..x_n]`.
    pub fn extend(&self, vars: &[usize], n: usize) -> Result<Self> {
        if vars.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: vars.len() });
        }
        if let Some(&j) = vars.iter().find(|&&j| j >= n) {
            return Err(Error::VariableOutOfRange { index: j, n });
        }
        let gens = self.gens.iter().map(|g| g.embed(vars, n)).collect();
        Ok(Self::minimalize_unchecked(gens, n))
    }

    /// Componentwise maximum exponent over the generators.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.n];
        for g in &self.gens {
            for (o, &e) in out.iter_mut().zip(g.exponents()) {
                *o = (*o).max(e);
            }
        }
        out
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write_monomial(f, g)?;
        }
        write!(f, ")")
    }
}

pub(crate) fn write_monomial(f: &mut impl fmt::Write, m: &Multidegree) -> fmt::Result {
    let mut any = false;
    for (j, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => {
                write!(f, "x{}", j + 1)?;
                any = true;
            }
            _ => {
                write!(f, "x{}^{}", j + 1, e)?;
                any = true;
            }
        }
    }
    if !any {
        write!(f, "1")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(v: &[u32]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::minimalize(gens.iter().map(|g| md(g)).collect(), n).unwrap()
    }

    fn p3() -> MonomialIdeal {
        ideal(3, &[&[1, 1, 0], &[0, 1, 1]])
    }

    fn gens_of(i: &MonomialIdeal) -> Vec<Vec<u32>> {
        i.gens().iter().map(|g| g.exponents().to_vec()).collect()
    }

    #[test]
    fn minimalize_drops_multiples() {
        assert_eq!(gens_of(&ideal(2, &[&[1, 1], &[2, 1]])), vec![vec![1, 1]]);
        assert!(ideal(2, &[]).is_zero());
        let sq = ideal(3, &[&[2, 2, 0], &[1, 2, 1], &[1, 2, 1], &[0, 2, 2]]);
        assert_eq!(gens_of(&sq), vec![vec![0, 2, 2], vec![1, 2, 1], vec![2, 2, 0]]);
    }

    #[test]
    fn minimalize_rejects_bad_length() {
        let err = MonomialIdeal::minimalize(vec![md(&[1, 0, 0])], 2).unwrap_err();
        assert_eq!(err, Error::LengthMismatch { expected: 2, got: 3 });
    }

    #[test]
    fn membership() {
        let i = ideal(2, &[&[1, 1]]);
        assert!(i.contains(&md(&[1, 1])).unwrap());
        assert!(!i.contains(&md(&[5, 0])).unwrap());
        assert!(p3().power(2).unwrap().contains(&md(&[1, 2, 1])).unwrap());
        assert!(i.contains(&md(&[1])).is_err());
    }

    #[test]
    fn powers_and_products() {
        assert_eq!(gens_of(&p3().power(2).unwrap()), vec![vec![0, 2, 2], vec![1, 2, 1], vec![2, 2, 0]]);
        assert!(p3().power(0).unwrap().is_unit());
        let x1 = MonomialIdeal::variables(2, &[0]).unwrap();
        let x2 = MonomialIdeal::variables(2, &[1]).unwrap();
        assert_eq!(x1.product(&x2).unwrap(), ideal(2, &[&[1, 1]]));
    }

    #[test]
    fn intersections() {
        let x1 = MonomialIdeal::variables(2, &[0]).unwrap();
        let x2 = MonomialIdeal::variables(2, &[1]).unwrap();
        assert_eq!(x1.intersect(&x2).unwrap(), ideal(2, &[&[1, 1]]));
        assert_eq!(p3().intersect(&MonomialIdeal::unit(3)).unwrap(), p3());

        let l = ideal(4, &[&[1, 1, 0, 0]]);
        let j = ideal(4, &[&[0, 0, 1, 1]]);
        let l2j = l.power(2).unwrap().product(&j).unwrap();
        let lj2 = l.product(&j.power(2).unwrap()).unwrap();
        let expected = l.power(2).unwrap().product(&j.power(2).unwrap()).unwrap();
        assert_eq!(l2j.intersect(&lj2).unwrap(), expected);
        assert_eq!(gens_of(&expected), vec![vec![2, 2, 2, 2]]);
    }

    #[test]
    fn colons() {
        let x2 = Multidegree::unit(3, 1);
        assert_eq!(p3().colon(&x2).unwrap(), MonomialIdeal::variables(3, &[0, 2]).unwrap());
        assert_eq!(
            gens_of(&p3().power(2).unwrap().colon(&x2).unwrap()),
            vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 0]]
        );
        assert_eq!(p3().colon(&Multidegree::zero(3)).unwrap(), p3());
    }

    #[test]
    fn restrict_and_extend() {
        assert_eq!(gens_of(&p3().restrict(&[1, 2]).unwrap()), vec![vec![1, 1]]);
        assert!(ideal(2, &[&[1, 1]]).restrict(&[1]).unwrap().is_zero());
        assert_eq!(gens_of(&p3().power(2).unwrap().restrict(&[1, 2]).unwrap()), vec![vec![2, 2]]);

        let e = ideal(2, &[&[1, 1]]).extend(&[1, 2], 3).unwrap();
        assert_eq!(gens_of(&e), vec![vec![0, 1, 1]]);
        assert!(MonomialIdeal::zero(2).extend(&[0, 1], 3).unwrap().is_zero());
        assert_eq!(e.restrict(&[1, 2]).unwrap(), ideal(2, &[&[1, 1]]));
        assert!(p3().restrict(&[3]).is_err());
    }

    #[test]
    fn overflow_is_an_error() {
        let big = MonomialIdeal::principal(md(&[u32::MAX]));
        assert_eq!(big.product(&big).unwrap_err(), Error::Overflow);
    }

    #[test]
    fn json_sorts_generators() {
        let i: MonomialIdeal = serde_json::from_str(r#"{"n":3,"gens":[[1,1,0],[0,1,1],[1,1,1]]}"#).unwrap();
        assert_eq!(serde_json::to_string(&i).unwrap(), r#"{"n":3,"gens":[[0,1,1],[1,1,0]]}"#);
        assert!(serde_json::from_str::<MonomialIdeal>(r#"{"n":2,"gens":[[1]]}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p3().power(2).unwrap().to_string(), "(x2^2x3^2, x1x2^2x3, x1^2x2^2)");
        assert_eq!(MonomialIdeal::zero(2).to_string(), "(0)");
        assert_eq!(MonomialIdeal::unit(2).to_string(), "(1)");
    }
}
