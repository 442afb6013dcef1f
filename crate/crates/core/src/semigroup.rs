//! Numerical semigroups.
//!
//! A numerical semigroup `S` is a cofinite submonoid of the non-negative
//! integers. It stands for the one-dimensional ring `k[[t^s : s in S]]`: the
//! maximal ideal is `S \ {0}`, the multiplicity is the smallest generator and
//! the embedding dimension is the number of minimal generators.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::RelativeIdeal;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<i64>,
    frobenius: i64,
    /// `members[n]` for `0 <= n <= frobenius + 1`.
    members: Vec<bool>,
    genus: usize,
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `raw`, reducing to minimal generators.
    pub fn new(raw: &[i64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if let Some(&bad) = raw.iter().find(|&&g| g <= 0) {
            return Err(Error::NonPositiveGenerator(bad));
        }
        let g = raw.iter().copied().fold(0, gcd);
        if g != 1 {
            return Err(Error::NonCofinite(g));
        }

        let max = *raw.iter().max().unwrap();
        let bound = (2 * max * max) as usize;
        let mut reach = vec![false; bound + 1];
        reach[0] = true;
        for n in 1..=bound {
            reach[n] = raw.iter().any(|&g| n as i64 >= g && reach[n - g as usize]);
        }
        let frobenius = (0..=bound).rev().find(|&n| !reach[n]).map_or(-1, |n| n as i64);
        reach.truncate((frobenius + 2) as usize);
        Ok(Self::from_members(reach))
    }

    /// The semigroup of all non-negative integers (a regular ring).
    pub fn naturals() -> Self {
        Self::from_members(vec![true])
    }

    /// Builds a semigroup from its gap set. The caller guarantees that the
    /// complement of `gaps` in the non-negative integers is additively closed.
    pub(crate) fn from_gaps(gaps: &[i64]) -> Self {
        let frobenius = gaps.iter().copied().max().unwrap_or(-1);
        let mut members = vec![true; (frobenius + 2) as usize];
        for &g in gaps {
            members[g as usize] = false;
        }
        Self::from_members(members)
    }

    /// `members` covers `[0, frobenius + 1]` with the last entry `true`.
    fn from_members(members: Vec<bool>) -> Self {
        let frobenius = members.len() as i64 - 2;
        let genus = members.iter().filter(|&&m| !m).count();
        let mut s = NumericalSemigroup {
            generators: Vec::new(),
            frobenius,
            members,
            genus,
        };
        s.generators = s.compute_minimal_generators();
        s
    }

    fn compute_minimal_generators(&self) -> Vec<i64> {
        let m = (1..).find(|&n| self.contains(n)).unwrap();
        let top = (self.frobenius + m).max(m);
        (m..=top)
            .filter(|&x| self.contains(x))
            .filter(|&x| !(m..=x / 2).any(|y| self.contains(y) && self.contains(x - y)))
            .collect()
    }

    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    /// Largest integer not in `S`; `-1` for the naturals.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    /// Least `c` with `c + N` inside `S`.
    pub fn conductor(&self) -> i64 {
        self.frobenius + 1
    }

    pub fn multiplicity(&self) -> i64 {
        self.generators[0]
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            false
        } else if n > self.frobenius {
            true
        } else {
            self.members[n as usize]
        }
    }

    pub fn is_naturals(&self) -> bool {
        self.frobenius < 0
    }

    pub fn gaps(&self) -> Vec<i64> {
        (1..=self.frobenius).filter(|&n| !self.contains(n)).collect()
    }

    /// Elements of `S` in `[0, bound]`.
    pub fn elements_upto(&self, bound: i64) -> Vec<i64> {
        (0..=bound).filter(|&n| self.contains(n)).collect()
    }

    /// Least element of `S` in each residue class modulo `m`, indexed by residue.
    pub fn apery(&self, m: i64) -> Result<Vec<i64>> {
        if m <= 0 || !self.contains(m) {
            return Err(Error::BadAperyModulus(m));
        }
        Ok((0..m)
            .map(|i| (0..).map(|k| i + k * m).find(|&n| self.contains(n)).unwrap())
            .collect())
    }

    /// `z in S <=> F - z not in S` for all integers `z`; equivalently the ring is Gorenstein.
    pub fn is_symmetric(&self) -> bool {
        2 * self.genus as i64 == self.frobenius + 1
    }

    /// Complete intersection test via recursive gluing decompositions.
    ///
    /// `S` is a complete intersection iff it is the naturals or its minimal
    /// generators split as `A1 ∪ A2` with `d1 = gcd(A1)`, `d2 = gcd(A2)`,
    /// `d2 ∈ <A1/d1>`, `d1 ∈ <A2/d2>` and both `<A1/d1>`, `<A2/d2>` complete
    /// intersections.
    pub fn is_complete_intersection(&self) -> bool {
        self.is_symmetric() && glued_complete_intersection(&self.generators)
    }

    /// The maximal ideal `S \ {0}` as a relative ideal.
    pub fn maximal_ideal(self: &Arc<Self>) -> RelativeIdeal {
        RelativeIdeal::new(self, self.generators())
            .expect("generator list is nonempty")
    }

    /// The ring itself as a relative ideal.
    pub fn unit_ideal(self: &Arc<Self>) -> RelativeIdeal {
        RelativeIdeal::new(self, &[0]).expect("nonempty")
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Membership of `n` in the monoid generated by `gens` (no cofiniteness needed).
fn in_monoid(gens: &[i64], n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let mut reach = vec![false; n as usize + 1];
    reach[0] = true;
    for k in 1..=n as usize {
        reach[k] = gens.iter().any(|&g| k as i64 >= g && reach[k - g as usize]);
    }
    reach[n as usize]
}

/// `gens` is a minimal generating set with gcd 1.
fn glued_complete_intersection(gens: &[i64]) -> bool {
    let k = gens.len();
    if k == 1 {
        return true;
    }
    // Fixing gens[0] in the first part enumerates each unordered split once.
    for mask in 0u32..(1 << (k - 1)) {
        let first: Vec<i64> = std::iter::once(gens[0])
            .chain((1..k).filter(|i| mask & (1 << (i - 1)) != 0).map(|i| gens[i]))
            .collect();
        let second: Vec<i64> = (1..k)
            .filter(|i| mask & (1 << (i - 1)) == 0)
            .map(|i| gens[i])
            .collect();
        if second.is_empty() {
            continue;
        }
        let d1 = first.iter().copied().fold(0, gcd);
        let d2 = second.iter().copied().fold(0, gcd);
        let reduced1: Vec<i64> = first.iter().map(|g| g / d1).collect();
        let reduced2: Vec<i64> = second.iter().map(|g| g / d2).collect();
        if in_monoid(&reduced1, d2)
            && in_monoid(&reduced2, d1)
            && glued_complete_intersection(&reduced1)
            && glued_complete_intersection(&reduced2)
        {
            return true;
        }
    }
    false
}

/// Smallest `n <= nmax` with a monomial `a` in the maximal ideal such that
/// `a + M^n = M^{n+1}` and `trace ⊆ M^n`, returned as `(n, a)`.
pub fn min_mult_witness(
    semigroup: &Arc<NumericalSemigroup>,
    trace: &RelativeIdeal,
    nmax: usize,
) -> Option<(usize, i64)> {
    let maximal = semigroup.maximal_ideal();
    let mut power = maximal.clone();
    for n in 1..=nmax {
        let next = power.product(&maximal).ok()?;
        if trace.is_subset_of(&power) {
            // a + M^n has least element a + n·e while M^{n+1} starts at (n+1)·e,
            // so the multiplicity is the only candidate.
            let a = semigroup.multiplicity();
            if power.shift(a) == next {
                return Some((n, a));
            }
        }
        power = next;
    }
    None
}
