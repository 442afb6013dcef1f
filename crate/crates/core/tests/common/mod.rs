//! Brute-force reference implementations over explicit finite sets.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;
use num_traits::{One, Zero};

/// A numerical semigroup as an explicit membership test up to its conductor.
#[derive(Clone, Debug)]
pub struct Sg {
    pub gens: Vec<i64>,
    pub conductor: i64,
    table: Vec<bool>,
}

impl Sg {
    pub fn new(gens: &[i64]) -> Sg {
        let max = *gens.iter().max().unwrap();
        let bound = 2 * max * max + 2;
        let mut reach = vec![false; bound as usize + 1];
        reach[0] = true;
        for n in 1..=bound as usize {
            reach[n] = gens.iter().any(|&g| n as i64 >= g && reach[n - g as usize]);
        }
        let conductor = (0..=bound).rev().find(|&n| !reach[n as usize]).map_or(0, |f| f + 1);
        reach.truncate(conductor as usize + 1);
        Sg { gens: gens.to_vec(), conductor, table: reach }
    }

    pub fn has(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        if n >= self.conductor {
            return true;
        }
        self.table[n as usize]
    }

    pub fn gaps(&self) -> Vec<i64> {
        (0..self.conductor).filter(|&n| !self.has(n)).collect()
    }

    pub fn multiplicity(&self) -> i64 {
        (1..).find(|&n| self.has(n)).unwrap()
    }
}

/// A fractional ideal as the set of its elements in `[lo, hi)`, everything at
/// or above `hi` belonging to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub elems: BTreeSet<i64>,
    pub hi: i64,
}

pub const PAD: i64 = 64;

impl Ideal {
    pub fn generated(s: &Sg, gens: &[i64]) -> Ideal {
        let lo = *gens.iter().min().unwrap();
        let hi = lo + s.conductor + PAD;
        let elems = (lo..hi)
            .filter(|&z| gens.iter().any(|&g| s.has(z - g)))
            .collect();
        Ideal { elems, hi }.tidy()
    }

    fn tidy(mut self) -> Ideal {
        while self.elems.contains(&(self.hi - 1)) {
            self.elems.remove(&(self.hi - 1));
            self.hi -= 1;
        }
        self
    }

    pub fn has(&self, z: i64) -> bool {
        z >= self.hi || self.elems.contains(&z)
    }

    pub fn min(&self) -> i64 {
        self.elems.iter().next().copied().unwrap_or(self.hi)
    }

    pub fn gens(&self, s: &Sg) -> Vec<i64> {
        let top = self.hi + s.multiplicity() + s.conductor;
        (self.min()..top)
            .filter(|&z| self.has(z))
            .filter(|&z| !(1..=z - self.min()).any(|t| s.has(t) && self.has(z - t)))
            .collect()
    }

    pub fn colon(&self, other: &Ideal, s: &Sg) -> Ideal {
        let span = self.hi - other.min() + 1;
        let lo = self.min() - other.hi - s.conductor - 2;
        let og: Vec<i64> = (other.min()..other.hi + self.hi - self.min() + s.conductor + 1)
            .filter(|&z| other.has(z))
            .collect();
        let elems: BTreeSet<i64> = (lo..span)
            .filter(|&z| og.iter().all(|&b| self.has(z + b)))
            .collect();
        Ideal { elems, hi: span }.tidy()
    }

    pub fn product(&self, other: &Ideal, s: &Sg) -> Ideal {
        let g = self.gens(s);
        let h = other.gens(s);
        let sums: Vec<i64> = g.iter().flat_map(|a| h.iter().map(move |b| a + b)).collect();
        Ideal::generated(s, &sums)
    }

    pub fn intersect(&self, other: &Ideal) -> Ideal {
        let hi = self.hi.max(other.hi);
        let lo = self.min().min(other.min());
        let elems = (lo..hi).filter(|&z| self.has(z) && other.has(z)).collect();
        Ideal { elems, hi }.tidy()
    }

    /// `|self \ sub|`.
    pub fn colength(&self, sub: &Ideal) -> usize {
        let hi = self.hi.max(sub.hi);
        (self.min()..hi).filter(|&z| self.has(z) && !sub.has(z)).count()
    }

    pub fn basis_minus(&self, sub: &Ideal) -> Vec<i64> {
        let hi = self.hi.max(sub.hi);
        (self.min()..hi).filter(|&z| self.has(z) && !sub.has(z)).collect()
    }
}

pub fn ring(s: &Sg) -> Ideal {
    Ideal::generated(s, &[0])
}

pub fn dual(s: &Sg, e: &Ideal) -> Ideal {
    ring(s).colon(e, s)
}

fn rank(mut rows: Vec<Vec<Rational64>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c];
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c] / pivot;
                for k in c..ncols {
                    let v = rows[r][k] * f;
                    rows[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Positive semigroup elements up to `bound`.
fn positive(s: &Sg, bound: i64) -> Vec<i64> {
    (1..=bound).filter(|&t| s.has(t)).collect()
}

/// `λ(A ⊗_R B)` for finite-length monomial modules given by their degree
/// bases; `t·x` is zero once it leaves the basis. Per degree: symbols minus
/// the rank of the relations `(t·x)⊗y − x⊗(t·y)`.
pub fn tensor_length(s: &Sg, basis_a: &[i64], basis_b: &[i64]) -> usize {
    let a: BTreeSet<i64> = basis_a.iter().copied().collect();
    let b: BTreeSet<i64> = basis_b.iter().copied().collect();
    let mut syms: BTreeMap<i64, Vec<(i64, i64)>> = BTreeMap::new();
    for &x in &a {
        for &y in &b {
            syms.entry(x + y).or_default().push((x, y));
        }
    }
    let span = a.iter().chain(&b).map(|z| z.abs()).max().unwrap_or(0) * 3 + 2;
    let ts = positive(s, span);
    let mut total = 0;
    for (&d, list) in &syms {
        let idx: BTreeMap<(i64, i64), usize> = list.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut rows = Vec::new();
        for &x in &a {
            for &t in &ts {
                let y = d - x - t;
                if !b.contains(&y) {
                    continue;
                }
                let mut row = vec![Rational64::zero(); list.len()];
                if let Some(&i) = idx.get(&(x + t, y)) {
                    row[i] += Rational64::one();
                }
                if let Some(&j) = idx.get(&(x, y + t)) {
                    row[j] -= Rational64::one();
                }
                rows.push(row);
            }
        }
        total += list.len() - rank(rows);
    }
    total
}

/// Torsion length of `E ⊗ F` for fractional ideals, degree by degree:
/// `dim (E⊗F)_d − 1` over degrees in `E + F`.
pub fn ideal_tensor_torsion(s: &Sg, e: &Ideal, f: &Ideal, top: i64) -> usize {
    let lo = e.min() + f.min();
    let mut total = 0;
    for d in lo..=top {
        let syms: Vec<(i64, i64)> = (e.min()..=d - f.min())
            .filter(|&x| e.has(x) && f.has(d - x))
            .map(|x| (x, d - x))
            .collect();
        if syms.is_empty() {
            continue;
        }
        let idx: BTreeMap<(i64, i64), usize> = syms.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut rows = Vec::new();
        for &(x, y) in &syms {
            // Generator steps suffice: longer steps chain through valid symbols.
            for &t in &s.gens {
                if e.has(x - t) && idx.contains_key(&(x - t, y + t)) {
                    let mut row = vec![Rational64::zero(); syms.len()];
                    row[idx[&(x, y)]] += Rational64::one();
                    row[idx[&(x - t, y + t)]] -= Rational64::one();
                    rows.push(row);
                }
            }
        }
        total += syms.len() - rank(rows) - 1;
    }
    total
}

/// `λ(End/R) + λ((I/I²) ⊗ ω) − λ(R/I)` with `ω = I*/R`.
pub fn ext1_length(s: &Sg, i: &Ideal) -> i64 {
    let r = ring(s);
    let end = i.colon(i, s);
    let i2 = i.product(i, s);
    let omega = dual(s, i).basis_minus(&r);
    let conormal = i.basis_minus(&i2);
    end.colength(&r) as i64 + tensor_length(s, &conormal, &omega) as i64 - r.colength(i) as i64
}

/// Counts of numerical semigroups by genus, from all gap sets.
pub fn semigroup_counts(max_genus: usize) -> Vec<usize> {
    let mut counts = vec![0; max_genus + 1];
    let width = (2 * max_genus).max(1) as u32;
    for mask in 0u64..(1u64 << width) {
        let gaps: BTreeSet<i64> = (0..width).filter(|b| mask >> b & 1 == 1).map(|b| b as i64 + 1).collect();
        if gaps.len() > max_genus {
            continue;
        }
        let closed = (1..=2 * width as i64).all(|x| {
            gaps.contains(&x) || (1..=2 * width as i64).all(|y| gaps.contains(&y) || !gaps.contains(&(x + y)))
        });
        if closed {
            counts[gaps.len()] += 1;
        }
    }
    counts
}

/// Closed subsets of the gaps: sets `E ⊇ S` inside the naturals with `E + S ⊆ E`.
pub fn ideal_class_count(s: &Sg) -> usize {
    let gaps = s.gaps();
    (0u64..1 << gaps.len())
        .filter(|mask| {
            let chosen: Vec<i64> = (0..gaps.len()).filter(|b| mask >> b & 1 == 1).map(|b| gaps[b]).collect();
            chosen.iter().all(|&x| {
                gaps.iter()
                    .all(|&g| chosen.contains(&g) || !s.has(g - x) || g == x)
            })
        })
        .count()
}
