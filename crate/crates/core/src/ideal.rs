//! Monomial fractional ideals as S-closed subsets of the integers.
//!
//! A relative ideal `E` is a bounded-below set with `E + S ⊆ E`. It models the
//! fractional ideal spanned by the monomials `t^z`, `z ∈ E`. Every element of
//! the total quotient ring used by the operations below is a monomial, so
//! `H(A, B) = {α : αA ⊆ B}` becomes the colon `{z : z + A ⊆ B}`.
//!
//! Isomorphism of monomial ideals is translation: if `F = αE` then the value
//! set of `αE` is `v(α) + E`, and a monomial ideal is determined by its value
//! set, so `F = v(α) + E`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

#[derive(Clone)]
pub struct RelativeIdeal {
    ambient: Arc<NumericalSemigroup>,
    gens: Vec<i64>,
    min: i64,
    conductor: i64,
    /// Membership for `[min, conductor)`.
    window: Vec<bool>,
}

pub(crate) fn same_ambient(a: &Arc<NumericalSemigroup>, b: &Arc<NumericalSemigroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl RelativeIdeal {
    /// The ideal generated by the monomials `t^g`, `g ∈ gens`.
    pub fn new(ambient: &Arc<NumericalSemigroup>, gens: &[i64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let minimal: Vec<i64> = sorted
            .iter()
            .copied()
            .filter(|&g| !sorted.iter().any(|&h| h != g && ambient.contains(g - h)))
            .collect();

        let min = minimal[0];
        let top = min + ambient.conductor();
        let window: Vec<bool> = (min..top)
            .map(|z| minimal.iter().any(|&g| ambient.contains(z - g)))
            .collect();
        let ideal = Self::from_window(ambient, min, window);
        debug_assert_eq!(ideal.gens, minimal);
        Ok(ideal)
    }

    /// Builds the ideal whose membership on `[lo, lo + window.len())` is
    /// `window`, with everything below `lo` absent and everything above present.
    /// The caller guarantees S-closure.
    pub(crate) fn from_window(ambient: &Arc<NumericalSemigroup>, lo: i64, window: Vec<bool>) -> Self {
        let first = window.iter().position(|&b| b).unwrap_or(window.len());
        let last_gap = window.iter().rposition(|&b| !b).map_or(first, |i| i + 1);
        let min = lo + first as i64;
        let conductor = lo + last_gap.max(first) as i64;
        let window = window[first..last_gap.max(first)].to_vec();
        let mut ideal = RelativeIdeal {
            ambient: Arc::clone(ambient),
            gens: Vec::new(),
            min,
            conductor,
            window,
        };
        let top = conductor + ambient.multiplicity();
        ideal.gens = (min..top)
            .filter(|&z| ideal.contains(z))
            .filter(|&z| ambient.generators().iter().all(|&s| !ideal.contains(z - s)))
            .collect();
        ideal
    }

    fn from_predicate(
        ambient: &Arc<NumericalSemigroup>,
        lo: i64,
        hi: i64,
        pred: impl Fn(i64) -> bool,
    ) -> Self {
        let window = (lo..hi.max(lo)).map(pred).collect();
        Self::from_window(ambient, lo, window)
    }

    pub fn ambient(&self) -> &Arc<NumericalSemigroup> {
        &self.ambient
    }

    pub fn generators(&self) -> &[i64] {
        &self.gens
    }

    pub fn min(&self) -> i64 {
        self.min
    }

    pub fn max_generator(&self) -> i64 {
        *self.gens.last().unwrap()
    }

    /// Least `c` with `c + N ⊆ E`.
    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    pub fn contains(&self, z: i64) -> bool {
        if z < self.min {
            false
        } else if z >= self.conductor {
            true
        } else {
            self.window[(z - self.min) as usize]
        }
    }

    /// `E ∩ (-∞, bound]` in increasing order.
    pub fn elements_upto(&self, bound: i64) -> Vec<i64> {
        (self.min..=bound).filter(|&z| self.contains(z)).collect()
    }

    /// Minimal number of generators.
    pub fn nu(&self) -> usize {
        self.gens.len()
    }

    /// `|E \ (M + E)|` counted directly from the set; agrees with [`Self::nu`]
    /// by Nakayama's lemma.
    pub fn nu_nakayama(&self) -> usize {
        let top = self.conductor + self.ambient.multiplicity();
        (self.min..top)
            .filter(|&z| self.contains(z))
            .filter(|&z| {
                !(1..=z - self.min).any(|m| self.ambient.contains(m) && self.contains(z - m))
            })
            .count()
    }

    pub fn is_principal(&self) -> bool {
        self.gens.len() == 1
    }

    /// Whether `E ⊆ S`, i.e. the ideal is an ideal of the ring itself.
    pub fn is_integral(&self) -> bool {
        self.gens.iter().all(|&g| self.ambient.contains(g))
    }

    fn check_ambient(&self, other: &RelativeIdeal) -> Result<()> {
        if same_ambient(&self.ambient, &other.ambient) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn is_subset_of(&self, other: &RelativeIdeal) -> bool {
        self.gens.iter().all(|&g| other.contains(g))
    }

    /// `c + E`.
    pub fn shift(&self, c: i64) -> RelativeIdeal {
        RelativeIdeal {
            ambient: Arc::clone(&self.ambient),
            gens: self.gens.iter().map(|g| g + c).collect(),
            min: self.min + c,
            conductor: self.conductor + c,
            window: self.window.clone(),
        }
    }

    /// The translate with least element 0.
    pub fn normalized(&self) -> RelativeIdeal {
        self.shift(-self.min)
    }

    /// `E·F`.
    pub fn product(&self, other: &RelativeIdeal) -> Result<RelativeIdeal> {
        self.check_ambient(other)?;
        let sums: Vec<i64> = self
            .gens
            .iter()
            .flat_map(|e| other.gens.iter().map(move |f| e + f))
            .collect();
        RelativeIdeal::new(&self.ambient, &sums)
    }

    /// `E + F` as ideals (set union).
    pub fn sum(&self, other: &RelativeIdeal) -> Result<RelativeIdeal> {
        self.check_ambient(other)?;
        let all: Vec<i64> = self.gens.iter().chain(&other.gens).copied().collect();
        RelativeIdeal::new(&self.ambient, &all)
    }

    pub fn intersect(&self, other: &RelativeIdeal) -> Result<RelativeIdeal> {
        self.check_ambient(other)?;
        let lo = self.min.max(other.min);
        let hi = self.conductor.max(other.conductor);
        Ok(Self::from_predicate(&self.ambient, lo, hi, |z| {
            self.contains(z) && other.contains(z)
        }))
    }

    /// `(E : F) = {z : z + F ⊆ E}`; this is `H(F, E)`.
    ///
    /// Testing the generators of `F` suffices because `E` is S-closed. Every
    /// `z >= c(E) - min(F)` lies in the colon, which bounds the scan.
    pub fn colon(&self, other: &RelativeIdeal) -> Result<RelativeIdeal> {
        self.check_ambient(other)?;
        let lo = self.min - other.max_generator();
        let hi = self.conductor - other.min;
        Ok(Self::from_predicate(&self.ambient, lo, hi, |z| {
            other.gens.iter().all(|&f| self.contains(z + f))
        }))
    }

    /// `E* = E^{-1} = (S : E)`.
    pub fn dual(&self) -> RelativeIdeal {
        self.ambient
            .unit_ideal()
            .colon(self)
            .expect("same ambient")
    }

    /// `tr(E) = E·E^{-1}`, an ideal of the ring.
    pub fn trace(&self) -> RelativeIdeal {
        self.product(&self.dual()).expect("same ambient")
    }

    /// `End(E) = (E : E)`, an over-semigroup of the ambient.
    pub fn end_ring(&self) -> NumericalSemigroup {
        let endo = self.colon(self).expect("same ambient");
        debug_assert_eq!(endo.min, 0);
        let first_positive = (1..).find(|&z| endo.contains(z)).unwrap();
        let top = endo.conductor.max(1) + first_positive;
        let elems: Vec<i64> = (1..=top).filter(|&z| endo.contains(z)).collect();
        NumericalSemigroup::new(&elems).expect("over-semigroup of a numerical semigroup")
    }

    /// `λ(E / F)`; `F` must be contained in `E`.
    pub fn quotient_length(&self, sub: &RelativeIdeal) -> Result<usize> {
        self.check_ambient(sub)?;
        if !sub.is_subset_of(self) {
            return Err(Error::NotASubmodule);
        }
        let hi = self.conductor.max(sub.conductor);
        Ok((self.min..hi)
            .filter(|&z| self.contains(z) && !sub.contains(z))
            .count())
    }

    /// The `c` with `other = c + self`, if any.
    pub fn shift_iso(&self, other: &RelativeIdeal) -> Option<i64> {
        if !same_ambient(&self.ambient, &other.ambient) || self.gens.len() != other.gens.len() {
            return None;
        }
        let c = other.gens[0] - self.gens[0];
        self.gens
            .iter()
            .zip(&other.gens)
            .all(|(a, b)| b - a == c)
            .then_some(c)
    }
}

/// Visits every S-closed set `base ∪ X` with `X ⊆ candidates`.
///
/// `candidates` must be disjoint from `base`, and for every candidate `c` and
/// generator `s`, `c + s` must be in `base` or be a candidate. Candidates are
/// decided from the top down, so including `c` only needs its successors
/// `c + s` to be present already. The visitor receives the included
/// candidates in increasing order and returns `false` to stop early.
pub(crate) fn for_each_closed_extension(
    semigroup: &NumericalSemigroup,
    base: impl Fn(i64) -> bool,
    candidates: &[i64],
    mut visit: impl FnMut(&[i64]) -> bool,
) {
    let mut sorted = candidates.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut chosen = vec![false; sorted.len()];
    let index = |z: i64| sorted.binary_search_by(|c| z.cmp(c)).ok();

    fn recurse(
        pos: usize,
        sorted: &[i64],
        chosen: &mut Vec<bool>,
        ok_to_include: &dyn Fn(usize, &[bool]) -> bool,
        visit: &mut dyn FnMut(&[i64]) -> bool,
    ) -> bool {
        if pos == sorted.len() {
            let mut set: Vec<i64> = sorted
                .iter()
                .zip(chosen.iter())
                .filter(|(_, &c)| c)
                .map(|(&z, _)| z)
                .collect();
            set.reverse();
            return visit(&set);
        }
        if !recurse(pos + 1, sorted, chosen, ok_to_include, visit) {
            return false;
        }
        if ok_to_include(pos, chosen) {
            chosen[pos] = true;
            let go_on = recurse(pos + 1, sorted, chosen, ok_to_include, visit);
            chosen[pos] = false;
            return go_on;
        }
        true
    }

    let ok_to_include = |pos: usize, chosen: &[bool]| {
        let c = sorted[pos];
        semigroup.generators().iter().all(|&s| {
            let up = c + s;
            base(up) || index(up).is_some_and(|k| chosen[k])
        })
    };
    recurse(0, &sorted, &mut chosen, &ok_to_include, &mut visit);
}

impl PartialEq for RelativeIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && same_ambient(&self.ambient, &other.ambient)
    }
}

impl Eq for RelativeIdeal {}

impl fmt::Debug for RelativeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.ambient)
    }
}

impl fmt::Display for RelativeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}
