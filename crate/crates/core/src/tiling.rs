//! Tiles, subsets of `Z_M`, and the basic tiling and period checks.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numth;

/// A finite set of non-negative integers with minimum 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct TileSet {
    elements: Vec<usize>,
}

impl TileSet {
    /// Sorts the input; rejects empty sets, duplicates and a nonzero minimum.
    pub fn new(mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        check_distinct(&elements)?;
        match elements.first() {
            None => Err(Error::EmptySet),
            Some(&0) => Ok(TileSet { elements }),
            Some(&m) => Err(Error::TileMissingZero(m)),
        }
    }

    /// `{0, 1, ..., n-1}`.
    pub fn interval(n: usize) -> Result<Self> {
        TileSet::new((0..n).collect())
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn diameter(&self) -> usize {
        *self.elements.last().expect("tile is nonempty")
    }

    /// All tiles `A` with `0 in A` and `max A <= d`, in lexicographic order.
    pub fn all_within(d: usize) -> Vec<TileSet> {
        let mut out: Vec<TileSet> = (0u64..1 << d)
            .map(|bits| {
                let mut e = vec![0];
                e.extend((1..=d).filter(|i| bits >> (i - 1) & 1 == 1));
                TileSet { elements: e }
            })
            .collect();
        out.sort();
        out
    }
}

fn check_distinct<T: Copy + PartialEq + ToPrimitive>(sorted: &[T]) -> Result<()> {
    match sorted.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(Error::DuplicateElement(w[0].to_i64().unwrap_or(i64::MAX))),
        None => Ok(()),
    }
}

/// Translate a nonempty integer set so that its minimum is 0.
pub fn normalize_tile(raw: &[i64]) -> Result<TileSet> {
    let min = *raw.iter().min().ok_or(Error::EmptySet)?;
    let mut shifted: Vec<i64> = raw.iter().map(|&x| x - min).collect();
    shifted.sort_unstable();
    check_distinct(&shifted)?;
    TileSet::new(shifted.into_iter().map(|x| x as usize).collect())
}

/// A subset of `Z_M`, stored as ascending residues.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicSet {
    modulus: usize,
    elements: Vec<usize>,
}

impl CyclicSet {
    /// Reduces every element mod `modulus`; two elements with the same
    /// residue are rejected.
    pub fn new(modulus: usize, elements: impl IntoIterator<Item = i64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        let m = modulus as i64;
        let mut reduced: Vec<i64> = elements.into_iter().map(|x| x.rem_euclid(m)).collect();
        reduced.sort_unstable();
        check_distinct(&reduced)?;
        Ok(CyclicSet {
            modulus,
            elements: reduced.into_iter().map(|x| x as usize).collect(),
        })
    }

    /// Trusted constructor for residues already reduced, sorted and distinct.
    pub(crate) fn from_sorted(modulus: usize, elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements.last().is_none_or(|&x| x < modulus));
        CyclicSet { modulus, elements }
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn shifted(&self, by: usize) -> CyclicSet {
        let mut e: Vec<usize> = self.elements.iter().map(|&x| (x + by) % self.modulus).collect();
        e.sort_unstable();
        CyclicSet::from_sorted(self.modulus, e)
    }

    fn indicator(&self) -> Vec<bool> {
        let mut bits = vec![false; self.modulus];
        for &x in &self.elements {
            bits[x] = true;
        }
        bits
    }

    /// Is `self + t == self (mod M)`?
    pub fn has_period(&self, t: usize) -> bool {
        let bits = self.indicator();
        let m = self.modulus;
        self.elements.iter().all(|&x| bits[(x + t) % m])
    }

    /// Least `t >= 1` with `self + t == self`; `M` when nothing smaller works.
    /// Always a divisor of `M`. The empty set and the full group have period 1.
    pub fn least_period(&self) -> usize {
        let bits = self.indicator();
        let m = self.modulus;
        for t in numth::divisors(m).expect("modulus is positive") {
            if self.elements.iter().all(|&x| bits[(x + t) % m]) {
                return t;
            }
        }
        unreachable!("t = M is always a period")
    }

    pub fn is_periodic(&self) -> bool {
        self.least_period() < self.modulus
    }
}

pub fn least_period_cyclic(set: &CyclicSet) -> usize {
    set.least_period()
}

pub fn is_periodic_mod(set: &CyclicSet) -> bool {
    set.is_periodic()
}

/// First residue not covered exactly once, with its cover count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoverageWitness {
    pub residue: usize,
    pub count: usize,
}

/// Cover counts of `a + b mod M` over `a in tile`, `b in complement`.
pub fn cyclic_cover_counts(tile: &TileSet, complement: &CyclicSet) -> Vec<usize> {
    let m = complement.modulus();
    let mut counts = vec![0usize; m];
    for &a in tile.elements() {
        for &b in complement.elements() {
            counts[(a + b) % m] += 1;
        }
    }
    counts
}

pub fn first_bad_cell(counts: &[usize]) -> Option<CoverageWitness> {
    counts
        .iter()
        .enumerate()
        .find(|&(_, &c)| c != 1)
        .map(|(residue, &count)| CoverageWitness { residue, count })
}

/// `A ⊕ B' = Z_M`: every residue has exactly one representation `a + b`.
pub fn verify_cyclic_tiling(tile: &TileSet, complement: &CyclicSet) -> bool {
    let m = complement.modulus();
    if tile.len() * complement.len() != m {
        return false;
    }
    let mut covered = vec![false; m];
    for &a in tile.elements() {
        for &b in complement.elements() {
            let cell = &mut covered[(a + b) % m];
            if *cell {
                return false;
            }
            *cell = true;
        }
    }
    true
}

/// Checks `A ⊕ (B' + MZ)` on the integer window `[0, window)` directly,
/// enumerating the translates `b' + kM` that can reach the window.
pub fn verify_z_tiling_window(tile: &TileSet, complement: &CyclicSet, window: usize) -> Result<bool> {
    let m = complement.modulus();
    if window < m {
        return Err(Error::WindowTooSmall { window, modulus: m });
    }
    let d = tile.diameter() as i64;
    let w = window as i64;
    let mi = m as i64;
    let mut counts = vec![0u32; window];
    for &r in complement.elements() {
        // smallest b = r + kM with b >= -d
        let mut b = r as i64 - ((r as i64 + d) / mi) * mi;
        while b < w {
            for &a in tile.elements() {
                let x = a as i64 + b;
                if (0..w).contains(&x) {
                    counts[x as usize] += 1;
                }
            }
            b += mi;
        }
    }
    Ok(counts.iter().all(|&c| c == 1))
}

/// A tiling `A ⊕ B' = Z_M`, checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicTiling {
    tile: TileSet,
    complement: CyclicSet,
}

impl CyclicTiling {
    pub fn new(tile: TileSet, complement: CyclicSet) -> Result<Self> {
        let counts = cyclic_cover_counts(&tile, &complement);
        match first_bad_cell(&counts) {
            Some(w) => Err(Error::NotATiling { residue: w.residue, count: w.count }),
            None => Ok(CyclicTiling { tile, complement }),
        }
    }

    pub fn tile(&self) -> &TileSet {
        &self.tile
    }

    pub fn complement(&self) -> &CyclicSet {
        &self.complement
    }

    pub fn modulus(&self) -> usize {
        self.complement.modulus()
    }

    pub fn least_period(&self) -> usize {
        self.complement.least_period()
    }
}

/// Canonical JSON form of a cyclic tiling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicTilingJson {
    #[serde(alias = "M")]
    pub modulus: usize,
    pub tile: Vec<i64>,
    pub complement: Vec<i64>,
}

impl From<&CyclicTiling> for CyclicTilingJson {
    fn from(t: &CyclicTiling) -> Self {
        CyclicTilingJson {
            modulus: t.modulus(),
            tile: t.tile.elements().iter().map(|&x| x as i64).collect(),
            complement: t.complement.elements().iter().map(|&x| x as i64).collect(),
        }
    }
}

/// A candidate tiling `A ⊕ B = [n]` of the interval `{0, ..., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalTiling {
    n: usize,
    a: Vec<usize>,
    b: Vec<usize>,
}

impl IntervalTiling {
    /// Sorts both sides; rejects duplicates. Whether it tiles is a separate
    /// question, see [`verify_interval_tiling`].
    pub fn new(n: usize, mut a: Vec<usize>, mut b: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        a.sort_unstable();
        b.sort_unstable();
        check_distinct(&a)?;
        check_distinct(&b)?;
        Ok(IntervalTiling { n, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn max_a(&self) -> usize {
        self.a.last().copied().unwrap_or(0)
    }

    pub fn max_b(&self) -> usize {
        self.b.last().copied().unwrap_or(0)
    }

    /// Cover counts on `[n]`, plus the number of sums landing outside it.
    pub fn cover_counts(&self) -> (Vec<usize>, usize) {
        let mut counts = vec![0usize; self.n];
        let mut outside = 0;
        for &a in &self.a {
            for &b in &self.b {
                match counts.get_mut(a + b) {
                    Some(c) => *c += 1,
                    None => outside += 1,
                }
            }
        }
        (counts, outside)
    }
}

/// The multiset `{a + b}` is exactly `[n]`.
pub fn verify_interval_tiling(t: &IntervalTiling) -> bool {
    let (counts, outside) = t.cover_counts();
    outside == 0 && counts.iter().all(|&c| c == 1)
}
