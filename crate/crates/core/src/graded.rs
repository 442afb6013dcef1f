//! Finite-length graded modules `E/F` and the tensor/Hom lengths built on them.
//!
//! A [`ShiftModule`] has at most one basis element per degree and the
//! monomial `t^s` either shifts a basis element or kills it. Tensor lengths
//! are computed as identification classes of basis pairs with a zero sink:
//! every relation `t^s x ⊗ y = x ⊗ t^s y` has coefficients ±1, and the ring is
//! generated by the monomials over the minimal semigroup generators. Hom
//! lengths are computed independently by exact rational linear algebra.
//!
//! All modules are treated as modules over the ambient ring. For modules
//! killed by a common ideal `I` this coincides with the `R/I` structure.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{same_ambient, RelativeIdeal};
use crate::linalg;
use crate::semigroup::NumericalSemigroup;
use crate::union_find::UnionFind;

#[derive(Debug, Clone)]
pub struct ShiftModule {
    numerator: RelativeIdeal,
    denominator: RelativeIdeal,
    basis: Vec<i64>,
}

impl ShiftModule {
    /// `E/F` with basis the degrees of `E \ F`.
    pub fn quotient(numerator: &RelativeIdeal, denominator: &RelativeIdeal) -> Result<Self> {
        if !same_ambient(numerator.ambient(), denominator.ambient()) {
            return Err(Error::AmbientMismatch);
        }
        if !denominator.is_subset_of(numerator) {
            return Err(Error::NotASubmodule);
        }
        let hi = numerator.conductor().max(denominator.conductor());
        let basis = (numerator.min()..hi)
            .filter(|&z| numerator.contains(z) && !denominator.contains(z))
            .collect();
        Ok(ShiftModule {
            numerator: numerator.clone(),
            denominator: denominator.clone(),
            basis,
        })
    }

    pub fn ambient(&self) -> &Arc<NumericalSemigroup> {
        self.numerator.ambient()
    }

    pub fn numerator(&self) -> &RelativeIdeal {
        &self.numerator
    }

    pub fn denominator(&self) -> &RelativeIdeal {
        &self.denominator
    }

    pub fn basis(&self) -> &[i64] {
        &self.basis
    }

    pub fn length(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn index_of(&self, degree: i64) -> Option<usize> {
        self.basis.binary_search(&degree).ok()
    }

    /// Index of `t^s · [basis[i]]`, or `None` when the product is zero.
    fn act(&self, s: i64, i: usize) -> Option<usize> {
        self.index_of(self.basis[i] + s)
    }

    /// `ann(E/F) = (F : E) ∩ S`.
    pub fn annihilator(&self) -> RelativeIdeal {
        let colon = self.denominator.colon(&self.numerator).expect("same ambient");
        colon
            .intersect(&self.ambient().unit_ideal())
            .expect("same ambient")
    }

    /// Number of basis degrees killed by every generator.
    pub fn socle_dim(&self) -> usize {
        let gens = self.ambient().generators();
        (0..self.basis.len())
            .filter(|&i| gens.iter().all(|&s| self.act(s, i).is_none()))
            .count()
    }
}

/// `R/I`.
pub fn residue_ring(ideal: &RelativeIdeal) -> Result<ShiftModule> {
    ShiftModule::quotient(&ideal.ambient().unit_ideal(), ideal)
}

/// `ω_{R/I} = Ext¹(R/I, R) ≅ I*/R`.
pub fn canonical_module(ideal: &RelativeIdeal) -> Result<ShiftModule> {
    ShiftModule::quotient(&ideal.dual(), &ideal.ambient().unit_ideal())
}

/// `I/I²`.
pub fn conormal_module(ideal: &RelativeIdeal) -> Result<ShiftModule> {
    ShiftModule::quotient(ideal, &ideal.product(ideal)?)
}

/// Cohen–Macaulay type of `R/I`, the socle dimension of the artinian quotient.
/// Zero for the unit ideal.
pub fn cm_type(ideal: &RelativeIdeal) -> Result<usize> {
    Ok(residue_ring(ideal)?.socle_dim())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCount {
    pub degree: i64,
    /// Basis pairs (or monomial pairs) of this total degree.
    pub symbols: usize,
    /// Classes not merged with zero.
    pub components: usize,
    /// Contribution to the torsion submodule in this degree.
    pub torsion: usize,
}

/// Degrees `(bound, top]` were scanned and each had a single class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationWindow {
    pub bound: i64,
    pub top: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDiagnostics {
    pub per_degree: Vec<DegreeCount>,
    /// Symbols identified with zero (finite modules only).
    pub zero_class_size: usize,
    /// `λ(M ⊗ N)` when finite.
    pub total_length: Option<usize>,
    pub torsion_length: usize,
    pub window: Option<StabilizationWindow>,
}

/// Tensor product of two finite-length modules by identification classes.
pub fn tensor_diagnostics(m: &ShiftModule, n: &ShiftModule) -> Result<TensorDiagnostics> {
    if !same_ambient(m.ambient(), n.ambient()) {
        return Err(Error::AmbientMismatch);
    }
    let (lm, ln) = (m.length(), n.length());
    let zero = lm * ln;
    let symbol = |i: usize, j: usize| i * ln + j;
    let mut uf = UnionFind::new(zero + 1);
    for i in 0..lm {
        for j in 0..ln {
            for &s in m.ambient().generators() {
                let left = m.act(s, i).map_or(zero, |k| symbol(k, j));
                let right = n.act(s, j).map_or(zero, |l| symbol(i, l));
                uf.union(left, right);
            }
        }
    }

    let mut by_degree: BTreeMap<i64, DegreeCount> = BTreeMap::new();
    for i in 0..lm {
        for j in 0..ln {
            let x = symbol(i, j);
            let degree = m.basis[i] + n.basis[j];
            let entry = by_degree.entry(degree).or_insert(DegreeCount {
                degree,
                symbols: 0,
                components: 0,
                torsion: 0,
            });
            entry.symbols += 1;
            if uf.find(x) == x && !uf.same(x, zero) {
                entry.components += 1;
                entry.torsion += 1;
            }
        }
    }
    let per_degree: Vec<DegreeCount> = by_degree.into_values().collect();
    let total: usize = per_degree.iter().map(|d| d.components).sum();
    Ok(TensorDiagnostics {
        per_degree,
        zero_class_size: uf.set_size(zero) - 1,
        total_length: Some(total),
        torsion_length: total,
        window: None,
    })
}

/// `λ(M ⊗ N)`.
pub fn tensor_length(m: &ShiftModule, n: &ShiftModule) -> Result<usize> {
    Ok(tensor_diagnostics(m, n)?.total_length.unwrap_or(0))
}

/// `λ(Hom(M, N))`, summed over degrees of homogeneous maps.
///
/// A degree-`d` map sends `[a]` to `c_a [a + d]`; commuting with each generator
/// gives one linear equation per target basis element.
pub fn hom_length(m: &ShiftModule, n: &ShiftModule) -> Result<usize> {
    if !same_ambient(m.ambient(), n.ambient()) {
        return Err(Error::AmbientMismatch);
    }
    if m.is_zero() || n.is_zero() {
        return Ok(0);
    }
    let gens = m.ambient().generators();
    let lo = n.basis[0] - m.basis[m.length() - 1];
    let hi = n.basis[n.length() - 1] - m.basis[0];
    let mut total = 0;
    for d in lo..=hi {
        // Variables: source indices whose image degree is a basis degree of N.
        let vars: Vec<usize> = (0..m.length())
            .filter(|&i| n.index_of(m.basis[i] + d).is_some())
            .collect();
        if vars.is_empty() {
            continue;
        }
        let var_of = |i: usize| vars.binary_search(&i).ok();
        let mut rows = Vec::new();
        for i in 0..m.length() {
            for &s in gens {
                let target = m.basis[i] + s + d;
                if n.index_of(target).is_none() {
                    continue;
                }
                let mut row = vec![Rational64::zero(); vars.len()];
                // φ(t^s [a]) = c_{a+s} [a+s+d]
                if let Some(v) = m.act(s, i).and_then(var_of) {
                    row[v] += Rational64::one();
                }
                // t^s φ([a]) = c_a [a+d+s]
                if let Some(v) = var_of(i) {
                    row[v] -= Rational64::one();
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        total += vars.len() - linalg::rank(rows, vars.len());
    }
    Ok(total)
}

/// Torsion in `I ⊗_R J` for monomial ideals.
///
/// `I ⊗ J` surjects onto `IJ` with torsion kernel. In degree `d` the
/// monomial pairs `(a, d - a)` with `a ∈ I`, `d - a ∈ J` are identified along
/// `a ~ a + s` for generators `s`, so the torsion in degree `d` is the number
/// of components minus one (the image in `IJ`). Both ideals are translated to
/// start at 0; degrees past `D = c(S) + c(I) + c(J) + max gen I + max gen J`
/// carry a single component, which is re-checked on a window above `D`.
pub fn ideal_tensor_torsion(e: &RelativeIdeal, f: &RelativeIdeal) -> Result<TensorDiagnostics> {
    if !same_ambient(e.ambient(), f.ambient()) {
        return Err(Error::AmbientMismatch);
    }
    let s = e.ambient();
    let (e, f) = (e.normalized(), f.normalized());
    let bound = s.conductor()
        + e.conductor()
        + f.conductor()
        + e.max_generator()
        + f.max_generator();
    let top = bound + *s.generators().last().unwrap() + s.multiplicity();

    let mut per_degree = Vec::new();
    let mut torsion_length = 0;
    for d in 0..=top {
        let width = d as usize + 1;
        let node: Vec<bool> = (0..=d).map(|a| e.contains(a) && f.contains(d - a)).collect();
        let mut uf = UnionFind::new(width);
        for a in 0..width {
            if !node[a] {
                continue;
            }
            for &g in s.generators() {
                let b = a + g as usize;
                if b < width && node[b] {
                    uf.union(a, b);
                }
            }
        }
        let symbols = node.iter().filter(|&&x| x).count();
        let components = (0..width).filter(|&a| node[a] && uf.find(a) == a).count();
        let torsion = components.saturating_sub(1);
        if torsion > 0 && d > bound {
            return Err(Error::BoundExceeded { degree: d, bound });
        }
        torsion_length += torsion;
        per_degree.push(DegreeCount {
            degree: d,
            symbols,
            components,
            torsion,
        });
    }
    Ok(TensorDiagnostics {
        per_degree,
        zero_class_size: 0,
        total_length: None,
        torsion_length,
        window: Some(StabilizationWindow { bound, top }),
    })
}
