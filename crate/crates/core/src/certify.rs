//! Cyclotomic period certificates.
//!
//! If `A ⊕ B = Z_M` then every `Φ_d` with `d | M`, `d > 1` divides `A(x)` or
//! `B(x)`. A shift `t` is a period of `B` as soon as every such `Φ_d` that
//! divides `A(x)` also divides `x^t - 1`, i.e. `d | t`. The lcm of those `d`
//! is therefore a period of every complement of `A` mod `M`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::numth;
use crate::poly::{mask_poly, CyclotomicCache};
use crate::tiling::TileSet;
use crate::IntPoly;

/// A 128-bit quantity that may have overflowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Bounded {
    Value(u128),
    Overflow,
}

impl Bounded {
    pub fn from_checked(v: Option<u128>) -> Self {
        v.map_or(Bounded::Overflow, Bounded::Value)
    }

    pub fn value(self) -> Option<u128> {
        match self {
            Bounded::Value(v) => Some(v),
            Bounded::Overflow => None,
        }
    }
}

impl Serialize for Bounded {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Bounded::Value(v) => s.serialize_u128(*v),
            Bounded::Overflow => s.serialize_str("overflow"),
        }
    }
}

impl std::fmt::Display for Bounded {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Bounded::Value(v) => write!(f, "{v}"),
            Bounded::Overflow => write!(f, "overflow"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub tile: TileSet,
    /// Every `s > 1` with `Φ_s | A(x)`, ascending.
    pub s_list: Vec<usize>,
    /// `sum φ(s)` over `s_list`; never exceeds the diameter.
    pub phi_sum: usize,
    /// lcm of `s_list` (1 when empty): the operative period bound.
    pub t_lcm: Bounded,
    /// Product of `s_list`.
    pub t_prod: Bounded,
    /// `2^D`.
    pub newman_cap: Bounded,
}

impl Certificate {
    pub fn k(&self) -> usize {
        self.s_list.len()
    }
}

/// Holds the cyclotomic memo table used by the certificate operations.
/// One per thread; it is cheap to create.
#[derive(Debug, Default, Clone)]
pub struct Certifier {
    cache: CyclotomicCache<i64>,
}

impl Certifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn divisor_set(&mut self, tile: &TileSet) -> Result<Vec<usize>> {
        self.cache.divisor_set(tile)
    }

    pub fn certificate(&mut self, tile: &TileSet) -> Result<Certificate> {
        let s_list = self.divisor_set(tile)?;
        let phi_sum = s_list.iter().map(|&s| numth::euler_phi(s)).sum::<Result<usize>>()?;
        let wide = || s_list.iter().map(|&s| s as u128);
        Ok(Certificate {
            tile: tile.clone(),
            phi_sum,
            t_lcm: Bounded::from_checked(numth::checked_lcm_all(wide())),
            t_prod: Bounded::from_checked(numth::checked_product(wide())),
            newman_cap: Bounded::from_checked(numth::checked_pow2(tile.diameter())),
            s_list,
        })
    }

    /// lcm of the `d | M`, `d > 1` with `Φ_d | A(x)`; 1 if there are none.
    /// Every complement of `tile` mod `modulus` is invariant under this shift.
    pub fn forced_period(&mut self, tile: &TileSet, modulus: usize) -> Result<usize> {
        let mask: IntPoly = mask_poly(tile);
        let diameter = tile.diameter();
        let mut t = 1usize;
        for d in numth::divisors(modulus)? {
            if d > 1 && numth::euler_phi(d)? <= diameter && self.cache.divides(d, &mask)? {
                t = numth::checked_lcm(t, d).expect("lcm of divisors of M divides M");
            }
        }
        Ok(t)
    }

    /// Moduli `M <= cap` at which `tile` could have a non-periodic complement:
    /// `M` equals the lcm of the elements of `S_A` dividing it, and `|A|`
    /// divides `M`.
    pub fn nonperiodic_modulus_candidates(&mut self, tile: &TileSet, cap: usize) -> Result<Vec<usize>> {
        let s_list = self.divisor_set(tile)?;
        Ok(candidates_from_divisor_set(&s_list, tile.len(), cap))
    }
}

pub(crate) fn candidates_from_divisor_set(s_list: &[usize], tile_len: usize, cap: usize) -> Vec<usize> {
    let mut lcms = BTreeSet::from([1usize]);
    for &s in s_list {
        let next: Vec<usize> = lcms
            .iter()
            .filter_map(|&l| numth::checked_lcm(l, s))
            .filter(|&l| l <= cap)
            .collect();
        lcms.extend(next);
    }
    lcms.into_iter()
        .filter(|&m| m <= cap && m % tile_len == 0)
        .filter(|&m| {
            let dividing = s_list.iter().copied().filter(|&s| m % s == 0);
            numth::checked_lcm_all(dividing) == Some(m)
        })
        .collect()
}

pub fn certificate(tile: &TileSet) -> Result<Certificate> {
    Certifier::new().certificate(tile)
}

pub fn forced_period(tile: &TileSet, modulus: usize) -> Result<usize> {
    Certifier::new().forced_period(tile, modulus)
}

pub fn nonperiodic_modulus_candidates(tile: &TileSet, cap: usize) -> Result<Vec<usize>> {
    Certifier::new().nonperiodic_modulus_candidates(tile, cap)
}

/// Largest diameter for which [`report_bounds`] scans every tile.
pub const BOUNDS_SCAN_LIMIT: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    #[serde(rename = "D")]
    pub diameter: usize,
    /// `2D`, realized by `{0, D} ⊕ [D] = Z_2D`.
    pub lower: usize,
    pub newman_cap: Bounded,
    /// Max of `t_lcm` over all tiles in `{0..D}`; `None` for partial reports.
    pub max_t_lcm: Option<u128>,
    pub argmax_tile: Option<TileSet>,
    pub partial: bool,
    pub asymptotic: &'static str,
}

/// Effective bounds on the largest least period of a tiling by a tile of
/// diameter at most `d`.
pub fn report_bounds(d: usize) -> Result<BoundsReport> {
    let asymptotic = "upper bound of order C*exp(C*sqrt(D)*log(D)*sqrt(log(log(D)))), constants unspecified";
    let mut report = BoundsReport {
        diameter: d,
        lower: 2 * d,
        newman_cap: Bounded::from_checked(numth::checked_pow2(d)),
        max_t_lcm: None,
        argmax_tile: None,
        partial: true,
        asymptotic,
    };
    if d > BOUNDS_SCAN_LIMIT {
        return Ok(report);
    }
    let best = TileSet::all_within(d)
        .into_par_iter()
        .map_init(Certifier::new, |c, tile| {
            let cert = c.certificate(&tile)?;
            Ok((cert.t_lcm.value().expect("small diameter"), tile))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        // larger lcm first, then lexicographically least tile
        .min_by(|x, y| y.0.cmp(&x.0).then_with(|| x.1.cmp(&y.1)));
    if let Some((l, tile)) = best {
        report.max_t_lcm = Some(l);
        report.argmax_tile = Some(tile);
    }
    report.partial = false;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tile(e: &[usize]) -> TileSet {
        TileSet::new(e.to_vec()).unwrap()
    }

    #[test]
    fn certificate_examples() {
        let c = certificate(&tile(&[0, 1])).unwrap();
        assert_eq!(c.s_list, vec![2]);
        assert_eq!((c.phi_sum, c.t_prod, c.t_lcm, c.newman_cap),
            (1, Bounded::Value(2), Bounded::Value(2), Bounded::Value(2)));

        let c = certificate(&tile(&[0, 3])).unwrap();
        assert_eq!(c.s_list, vec![2, 6]);
        assert_eq!((c.phi_sum, c.t_prod, c.t_lcm, c.newman_cap),
            (3, Bounded::Value(12), Bounded::Value(6), Bounded::Value(8)));

        let c = certificate(&tile(&[0])).unwrap();
        assert!(c.s_list.is_empty());
        assert_eq!((c.phi_sum, c.t_prod, c.t_lcm, c.newman_cap),
            (0, Bounded::Value(1), Bounded::Value(1), Bounded::Value(1)));
    }

    #[test]
    fn newman_cap_overflows_to_marker() {
        let c = certificate(&tile(&[0, 130])).unwrap();
        assert_eq!(c.newman_cap, Bounded::Overflow);
        assert_eq!(serde_json::to_string(&c.newman_cap).unwrap(), "\"overflow\"");
        assert_eq!(serde_json::to_string(&Bounded::Value(7)).unwrap(), "7");
        // 1 + x^130: Φ_s for the s | 260 with s not dividing 130
        assert_eq!(c.s_list, vec![4, 20, 52, 260]);
    }

    #[test]
    fn forced_period_examples() {
        assert_eq!(forced_period(&tile(&[0, 1]), 4).unwrap(), 2);
        assert_eq!(forced_period(&tile(&[0, 2]), 4).unwrap(), 4);
        assert_eq!(forced_period(&tile(&[0]), 5).unwrap(), 1);
        assert_eq!(forced_period(&tile(&[0, 3]), 6).unwrap(), 6);
    }

    #[test]
    fn candidate_examples() {
        assert_eq!(nonperiodic_modulus_candidates(&tile(&[0, 2]), 100).unwrap(), vec![4]);
        assert_eq!(nonperiodic_modulus_candidates(&tile(&[0, 3]), 100).unwrap(), vec![2, 6]);
        assert!(nonperiodic_modulus_candidates(&tile(&[0, 1, 3]), 100).unwrap().is_empty());
        assert_eq!(nonperiodic_modulus_candidates(&tile(&[0]), 100).unwrap(), vec![1]);
        assert_eq!(nonperiodic_modulus_candidates(&tile(&[0, 3]), 5).unwrap(), vec![2]);
    }

    #[test]
    fn bounds_examples() {
        for (d, max_lcm) in [(1, 2u128), (2, 4), (3, 6)] {
            let r = report_bounds(d).unwrap();
            assert_eq!(r.lower, 2 * d);
            assert_eq!(r.newman_cap, Bounded::Value(1 << d));
            assert_eq!(r.max_t_lcm, Some(max_lcm));
            assert!(!r.partial);
        }
        assert_eq!(report_bounds(3).unwrap().argmax_tile, Some(tile(&[0, 3])));
        let r = report_bounds(BOUNDS_SCAN_LIMIT + 1).unwrap();
        assert!(r.partial);
        assert_eq!(r.max_t_lcm, None);
    }

    #[test]
    fn certificate_algebra_small_tiles() {
        let mut c = Certifier::new();
        for t in TileSet::all_within(8) {
            let cert = c.certificate(&t).unwrap();
            let lcm = cert.t_lcm.value().unwrap();
            let prod = cert.t_prod.value().unwrap();
            assert_eq!(prod % lcm, 0);
            assert!(cert.phi_sum <= t.diameter());
            assert!(cert.k() <= cert.phi_sum);
            for m in 1..=40 {
                assert_eq!(m % c.forced_period(&t, m).unwrap(), 0);
            }
        }
    }
}
