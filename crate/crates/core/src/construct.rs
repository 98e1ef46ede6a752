//! Tilings of `Z_M` with a non-periodic complement and `M` quadratic in the
//! tile diameter.
//!
//! Work in `Q = Z_3p × Z_5q × Z_2` with `p, q > 5` distinct primes. The tile is
//! the 3×5 rectangle in the `k = 0` layer. The standard lattice complement
//! generated by `(3,0,0)`, `(0,5,0)`, `(0,0,1)` is broken in two places: in the
//! lower layer the row of translates at `b = 5` is shifted by `(1,0,0)`, and in
//! the upper layer the column at `a = 3` is shifted by `(0,1,0)`. The
//! isomorphism `ψ(i,j,k) = 10q·i + 6p·j + 15pq·k mod 30pq` carries everything
//! to `Z_30pq`, with the rectangle landing inside `{0, ..., 24p + 20q}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numth;
use crate::tiling::{CyclicSet, CyclicTiling, TileSet};

/// Smallest diameter for which [`choose_primes`] finds a pair: `24·7 + 20·11`.
pub const QUADRATIC_THRESHOLD: usize = 388;

/// An element `(i, j, k)` of `Z_3p × Z_5q × Z_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl GroupElement {
    pub fn new(i: usize, j: usize, k: usize) -> Self {
        GroupElement { i, j, k }
    }

    pub fn add(self, other: Self, p: usize, q: usize) -> Self {
        GroupElement {
            i: (self.i + other.i) % (3 * p),
            j: (self.j + other.j) % (5 * q),
            k: (self.k + other.k) % 2,
        }
    }
}

/// Exact diameter of `ψ(rectangle)`.
pub fn image_diameter(p: usize, q: usize) -> usize {
    24 * p + 20 * q
}

/// Distinct primes `p, q > 5` maximizing `pq` subject to `24p + 20q <= d`;
/// ties go to the smaller `p`.
pub fn choose_primes(d: usize) -> Option<(usize, usize)> {
    if d < QUADRATIC_THRESHOLD {
        return None;
    }
    let table = numth::primes_up_to(d / 20);
    let primes: Vec<usize> = table.primes().iter().copied().filter(|&x| x > 5).collect();
    let mut best: Option<(usize, usize)> = None;
    for &p in &primes {
        for &q in &primes {
            if p == q || image_diameter(p, q) > d {
                continue;
            }
            let better = match best {
                None => true,
                Some((bp, bq)) => p * q > bp * bq || (p * q == bp * bq && p < bp),
            };
            if better {
                best = Some((p, q));
            }
        }
    }
    best
}

/// `{(i, j, 0) : i < 3, j < 5}`.
pub fn build_rectangle(_p: usize, _q: usize) -> Vec<GroupElement> {
    let mut out = Vec::with_capacity(15);
    for i in 0..3 {
        for j in 0..5 {
            out.push(GroupElement::new(i, j, 0));
        }
    }
    out
}

/// The complement `L ∪ U` of the rectangle, `2pq` elements, sorted.
pub fn build_complement(p: usize, q: usize) -> Vec<GroupElement> {
    let mut out = Vec::with_capacity(2 * p * q);
    // lower layer: the translates with b = 5 move one step along x
    for b in (0..5 * q).step_by(5) {
        let shift = usize::from(b == 5);
        for a in (0..3 * p).step_by(3) {
            out.push(GroupElement::new(a + shift, b, 0));
        }
    }
    // upper layer: the translates with a = 3 move one step along y
    for a in (0..3 * p).step_by(3) {
        let shift = usize::from(a == 3);
        for b in (0..5 * q).step_by(5) {
            out.push(GroupElement::new(a, b + shift, 1));
        }
    }
    out.sort_unstable();
    out
}

/// `ψ(i, j, k) = 10q·i + 6p·j + 15pq·k mod 30pq`.
pub fn psi(p: usize, q: usize, g: GroupElement) -> usize {
    let m = 30 * p * q;
    (g.i * 10 * q + g.j * 6 * p + g.k * 15 * p * q) % m
}

fn check_psi_bijective(p: usize, q: usize) -> Result<()> {
    let m = 30 * p * q;
    let mut seen = vec![false; m];
    for i in 0..3 * p {
        for j in 0..5 * q {
            for k in 0..2 {
                let x = psi(p, q, GroupElement::new(i, j, k));
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::Internal(format!("ψ is not injective at {x} (p={p}, q={q})")));
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub p: usize,
    pub q: usize,
    pub rectangle: Vec<GroupElement>,
    pub lattice_complement: Vec<GroupElement>,
    pub tiling: CyclicTiling,
}

impl Construction {
    pub fn modulus(&self) -> usize {
        self.tiling.modulus()
    }

    pub fn tile(&self) -> &TileSet {
        self.tiling.tile()
    }

    pub fn complement(&self) -> &CyclicSet {
        self.tiling.complement()
    }
}

/// Builds the quadratic construction for diameter budget `d`, re-checking
/// every postcondition. `Ok(None)` below [`QUADRATIC_THRESHOLD`].
pub fn construct_long_period(d: usize) -> Result<Option<Construction>> {
    let Some((p, q)) = choose_primes(d) else {
        return Ok(None);
    };
    let m = 30 * p * q;
    check_psi_bijective(p, q)?;
    let rectangle = build_rectangle(p, q);
    let lattice_complement = build_complement(p, q);
    if lattice_complement.len() != 2 * p * q {
        return Err(Error::Internal("complement has wrong size".into()));
    }
    let tile = TileSet::new(rectangle.iter().map(|&g| psi(p, q, g)).collect())?;
    let complement = CyclicSet::new(m, lattice_complement.iter().map(|&g| psi(p, q, g) as i64))?;
    if tile.len() != 15 || tile.diameter() != image_diameter(p, q) || tile.diameter() > d {
        return Err(Error::Internal(format!("unexpected tile image {:?}", tile.elements())));
    }
    let tiling = CyclicTiling::new(tile, complement)
        .map_err(|e| Error::Internal(format!("construction does not tile: {e}")))?;
    let period = tiling.least_period();
    if period != m {
        return Err(Error::Internal(format!("complement has period {period} < {m}")));
    }
    Ok(Some(Construction { p, q, rectangle, lattice_complement, tiling }))
}

/// `{0, D} ⊕ {0, ..., D-1} = Z_2D`, least period `2D`.
pub fn construct_fallback(d: usize) -> Result<CyclicTiling> {
    if d == 0 {
        return Err(Error::ZeroArgument);
    }
    let tile = TileSet::new(vec![0, d])?;
    let complement = CyclicSet::new(2 * d, 0..d as i64)?;
    CyclicTiling::new(tile, complement)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Quadratic,
    Fallback,
}

#[derive(Debug, Clone)]
pub struct BestConstruction {
    pub diameter: usize,
    pub mode: Mode,
    pub primes: Option<(usize, usize)>,
    pub tiling: CyclicTiling,
    pub least_period: usize,
}

/// The quadratic construction when it beats `2D`, otherwise the fallback.
pub fn construct_best(d: usize) -> Result<BestConstruction> {
    let fallback = construct_fallback(d)?;
    let fallback_period = fallback.least_period();
    if let Some(c) = construct_long_period(d)? {
        let period = c.tiling.least_period();
        if period > fallback_period {
            return Ok(BestConstruction {
                diameter: d,
                mode: Mode::Quadratic,
                primes: Some((c.p, c.q)),
                least_period: period,
                tiling: c.tiling,
            });
        }
    }
    Ok(BestConstruction {
        diameter: d,
        mode: Mode::Fallback,
        primes: None,
        least_period: fallback_period,
        tiling: fallback,
    })
}

/// Wire form of a construction result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionJson {
    #[serde(rename = "D")]
    pub diameter: usize,
    pub p: Option<usize>,
    pub q: Option<usize>,
    #[serde(rename = "M")]
    pub modulus: usize,
    pub tile: Vec<usize>,
    pub complement: Vec<usize>,
    pub least_period: usize,
    pub mode: Mode,
}

impl From<&BestConstruction> for ConstructionJson {
    fn from(b: &BestConstruction) -> Self {
        ConstructionJson {
            diameter: b.diameter,
            p: b.primes.map(|x| x.0),
            q: b.primes.map(|x| x.1),
            modulus: b.tiling.modulus(),
            tile: b.tiling.tile().elements().to_vec(),
            complement: b.tiling.complement().elements().to_vec(),
            least_period: b.least_period,
            mode: b.mode,
        }
    }
}
