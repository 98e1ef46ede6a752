//! Exhaustive search for the largest least period of a tiling of `Z` by a
//! tile of diameter at most `D`.

use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;

use crate::certify::Certifier;
use crate::error::{Error, Result};
use crate::numth;
use crate::tiling::{CyclicSet, TileSet};

pub const DEFAULT_GUARD: usize = 8;

/// Calls `visit` with every `B'` (ascending residues) such that
/// `A ⊕ B' = Z_M`. Each step covers the least uncovered residue `g`, trying
/// the translates `b = g - a` in ascending order of `b`.
pub fn for_each_complement<F>(tile: &TileSet, modulus: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let m = modulus;
    if m == 0 || m % tile.len() != 0 {
        return ControlFlow::Continue(());
    }
    let mut residues: Vec<usize> = tile.elements().iter().map(|&a| a % m).collect();
    residues.sort_unstable();
    if residues.windows(2).any(|w| w[0] == w[1]) {
        return ControlFlow::Continue(());
    }

    struct Dfs<'a, F> {
        m: usize,
        residues: &'a [usize],
        covered: Vec<bool>,
        chosen: Vec<usize>,
        visit: F,
    }

    impl<F: FnMut(&[usize]) -> ControlFlow<()>> Dfs<'_, F> {
        fn run(&mut self, from: usize) -> ControlFlow<()> {
            let Some(g) = (from..self.m).find(|&x| !self.covered[x]) else {
                let mut b = self.chosen.clone();
                b.sort_unstable();
                return (self.visit)(&b);
            };
            let mut options: Vec<usize> = self.residues.iter().map(|&a| (g + self.m - a) % self.m).collect();
            options.sort_unstable();
            for b in options {
                if self.residues.iter().any(|&a| self.covered[(a + b) % self.m]) {
                    continue;
                }
                for &a in self.residues {
                    self.covered[(a + b) % self.m] = true;
                }
                self.chosen.push(b);
                let flow = self.run(g + 1);
                self.chosen.pop();
                for &a in self.residues {
                    self.covered[(a + b) % self.m] = false;
                }
                flow?;
            }
            ControlFlow::Continue(())
        }
    }

    let mut dfs = Dfs { m, residues: &residues, covered: vec![false; m], chosen: Vec::new(), visit: &mut visit };
    dfs.run(0)
}

/// All complements of `tile` mod `modulus`, in lexicographic order.
pub fn enumerate_complements(tile: &TileSet, modulus: usize) -> Vec<CyclicSet> {
    let mut out = Vec::new();
    let _ = for_each_complement(tile, modulus, |b| {
        out.push(CyclicSet::from_sorted(modulus, b.to_vec()));
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

/// Lexicographically least complement with least period exactly `modulus`.
pub fn least_nonperiodic_complement(tile: &TileSet, modulus: usize) -> Option<CyclicSet> {
    let mut best: Option<Vec<usize>> = None;
    let _ = for_each_complement(tile, modulus, |b| {
        if best.as_deref().is_none_or(|cur| b < cur) {
            let set = CyclicSet::from_sorted(modulus, b.to_vec());
            if set.least_period() == modulus {
                best = Some(b.to_vec());
            }
        }
        ControlFlow::Continue(())
    });
    best.map(|b| CyclicSet::from_sorted(modulus, b))
}

fn max_nonperiodic_in(tile: &TileSet, moduli: impl Iterator<Item = usize>) -> Option<(usize, CyclicSet)> {
    moduli
        .filter_map(|m| least_nonperiodic_complement(tile, m).map(|b| (m, b)))
        .next()
}

/// Largest `M <= cap` among the certificate candidates at which `tile` has a
/// non-periodic complement, with the lexicographically least such complement.
pub fn max_nonperiodic_modulus(
    certifier: &mut Certifier,
    tile: &TileSet,
    cap: usize,
) -> Result<Option<(usize, CyclicSet)>> {
    let candidates = certifier.nonperiodic_modulus_candidates(tile, cap)?;
    Ok(max_nonperiodic_in(tile, candidates.into_iter().rev()))
}

/// Same as [`max_nonperiodic_modulus`] but tries every `M <= cap`.
pub fn max_nonperiodic_modulus_unpruned(tile: &TileSet, cap: usize) -> Option<(usize, CyclicSet)> {
    max_nonperiodic_in(tile, (1..=cap).rev())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest modulus tried; `None` means `2^D`, which makes the answer exact.
    pub cap: Option<usize>,
    /// Restrict moduli to the certificate candidates.
    pub pruned: bool,
    pub guard: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { cap: None, pruned: true, guard: DEFAULT_GUARD }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchWitness {
    pub diameter: usize,
    pub value: usize,
    pub tile: TileSet,
    pub complement: CyclicSet,
    /// `false` when the cap was below `2^D`, so `value` is only a lower bound.
    pub exact: bool,
}

impl SearchWitness {
    pub fn modulus(&self) -> usize {
        self.complement.modulus()
    }
}

#[derive(Serialize)]
struct WitnessJson<'a> {
    #[serde(rename = "D")]
    diameter: usize,
    value: usize,
    tile: &'a [usize],
    modulus: usize,
    complement: &'a [usize],
    exact: bool,
}

impl Serialize for SearchWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WitnessJson {
            diameter: self.diameter,
            value: self.value,
            tile: self.tile.elements(),
            modulus: self.modulus(),
            complement: self.complement.elements(),
            exact: self.exact,
        }
        .serialize(s)
    }
}

fn check_guard(d: usize, opts: &SearchOptions) -> Result<()> {
    if d == 0 {
        return Err(Error::ZeroArgument);
    }
    if d > opts.guard {
        return Err(Error::GuardExceeded { requested: d, limit: opts.guard });
    }
    Ok(())
}

/// Largest least period over all tiles `A ⊆ {0..D}` with `0 ∈ A` and all
/// moduli up to the cap. Ties go to the lexicographically least tile.
pub fn compute_t(d: usize, opts: &SearchOptions) -> Result<SearchWitness> {
    check_guard(d, opts)?;
    let newman = numth::checked_pow2::<usize>(d).ok_or(Error::GuardExceeded { requested: d, limit: 63 })?;
    let cap = opts.cap.unwrap_or(newman);
    if cap == 0 {
        return Err(Error::ZeroArgument);
    }
    let found = TileSet::all_within(d)
        .into_par_iter()
        .map_init(Certifier::new, |cert, tile| {
            let hit = if opts.pruned {
                max_nonperiodic_modulus(cert, &tile, cap)?
            } else {
                max_nonperiodic_modulus_unpruned(&tile, cap)
            };
            Ok(hit.map(|(m, b)| (m, tile, b)))
        })
        .collect::<Result<Vec<_>>>()?;
    let (value, tile, complement) = found
        .into_iter()
        .flatten()
        .min_by(|x, y| y.0.cmp(&x.0).then_with(|| x.1.cmp(&y.1)).then_with(|| x.2.cmp(&y.2)))
        .ok_or_else(|| Error::Internal(format!("no tiling found for D = {d}, cap = {cap}")))?;
    Ok(SearchWitness { diameter: d, value, tile, complement, exact: cap >= newman })
}

/// One row per `D = 1..=d_max`.
pub fn emit_table(d_max: usize, opts: &SearchOptions) -> Result<Vec<SearchWitness>> {
    check_guard(d_max, opts)?;
    let rows = (1..=d_max).map(|d| compute_t(d, opts)).collect::<Result<Vec<_>>>()?;
    if let Some(w) = rows.windows(2).find(|w| w[1].exact && w[0].value > w[1].value) {
        return Err(Error::Internal(format!("table decreases at D = {}", w[1].diameter)));
    }
    Ok(rows)
}
