//! Dense polynomials over a signed integer ring, mask polynomials of tiles
//! and cyclotomic polynomials.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{Num, Signed};

use crate::error::{Error, Result};
use crate::numth;
use crate::tiling::TileSet;

/// Coefficient ring for [`Poly`].
pub trait Coeff: Num + Signed + Clone + PartialOrd + fmt::Debug {}

impl<T: Num + Signed + Clone + PartialOrd + fmt::Debug> Coeff for T {}

/// `coeffs[i]` is the coefficient of `x^i`. Trailing zeros are trimmed, so
/// the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = T::one();
        Poly { coeffs }
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[0] = coeffs[0].clone() - T::one();
        coeffs[n] = coeffs[n].clone() + T::one();
        Poly::new(coeffs)
    }

    /// Sum of `x^e` over the given exponents (repeats add up).
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exponents: I) -> Self {
        let mut coeffs: Vec<T> = Vec::new();
        for e in exponents {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, T::zero());
            }
            coeffs[e] = coeffs[e].clone() + T::one();
        }
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn max_abs_coeff(&self) -> T {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    /// Exact division by a monic polynomial: `self = divisor * q + r` with
    /// `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if !divisor.is_monic() {
            return Err(Error::NotMonic);
        }
        let dq = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dq {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); rem.len() - dq];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dq].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * d.clone();
            }
            quot[i] = c;
        }
        rem.truncate(dq);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn is_divisible_by(&self, divisor: &Self) -> Result<bool> {
        Ok(self.divrem(divisor)?.1.is_zero())
    }
}

impl<T: Coeff> Add for &Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &Poly<T>, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(T::zero);
        Poly::new((0..n).map(|i| get(self, i) + get(rhs, i)).collect())
    }
}

impl<T: Coeff> Sub for &Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &Poly<T>, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(T::zero);
        Poly::new((0..n).map(|i| get(self, i) - get(rhs, i)).collect())
    }
}

impl<T: Coeff> Mul for &Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: Self) -> Poly<T> {
        Poly::mul(self, rhs)
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            if !mag.is_one() || i == 0 {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// The mask polynomial `sum_{a in A} x^a`.
pub fn mask_poly<T: Coeff>(tile: &TileSet) -> Poly<T> {
    Poly::from_exponents(tile.elements().iter().copied())
}

/// Memo table of cyclotomic polynomials. Each `Φ_n` is obtained by exact
/// division of `x^n - 1` by `Φ_d` for the proper divisors `d` of `n`.
#[derive(Debug, Clone, Default)]
pub struct CyclotomicCache<T> {
    table: HashMap<usize, Poly<T>>,
}

impl<T: Coeff> CyclotomicCache<T> {
    pub fn new() -> Self {
        CyclotomicCache { table: HashMap::new() }
    }

    pub fn get(&mut self, n: usize) -> Result<&Poly<T>> {
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        if !self.table.contains_key(&n) {
            let mut poly = Poly::x_pow_minus_one(n);
            for d in numth::divisors(n)? {
                if d == n {
                    break;
                }
                let phi_d = self.get(d)?;
                let (q, r) = poly.divrem(phi_d)?;
                if !r.is_zero() {
                    return Err(Error::Internal(format!("Φ_{d} does not divide x^{n}-1")));
                }
                poly = q;
            }
            self.table.insert(n, poly);
        }
        Ok(&self.table[&n])
    }

    /// Does `Φ_s` divide `p` over the integers?
    pub fn divides(&mut self, s: usize, p: &Poly<T>) -> Result<bool> {
        let phi = self.get(s)?;
        p.is_divisible_by(phi)
    }

    /// All `s > 1` with `Φ_s | A(x)`, ascending. The scan covers `2..=2D²+1`
    /// restricted to `φ(s) <= D`, which is exhaustive since `φ(s) >= sqrt(s/2)`.
    pub fn divisor_set(&mut self, tile: &TileSet) -> Result<Vec<usize>> {
        let diameter = tile.diameter();
        if diameter == 0 {
            return Ok(Vec::new());
        }
        let mask: Poly<T> = mask_poly(tile);
        let limit = 2 * diameter * diameter + 1;
        let phi = numth::phi_table(limit);
        let mut out = Vec::new();
        for s in 2..=limit {
            if phi[s] <= diameter && self.divides(s, &mask)? {
                out.push(s);
            }
        }
        Ok(out)
    }
}

pub fn cyclotomic<T: Coeff>(n: usize) -> Result<Poly<T>> {
    CyclotomicCache::new().get(n).cloned()
}

pub fn divides_cyclotomic<T: Coeff>(s: usize, p: &Poly<T>) -> Result<bool> {
    CyclotomicCache::new().divides(s, p)
}

pub fn cyclotomic_divisor_set(tile: &TileSet) -> Result<Vec<usize>> {
    CyclotomicCache::<i64>::new().divisor_set(tile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntPoly;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        Poly::new(c.to_vec())
    }

    fn tile(e: &[usize]) -> TileSet {
        TileSet::new(e.to_vec()).unwrap()
    }

    #[test]
    fn trims_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs(), &[1, 2]);
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[3]).degree(), Some(0));
        assert_eq!(IntPoly::x_pow_minus_one(3).coeffs(), &[-1, 0, 0, 1]);
        assert_eq!(IntPoly::x_pow_minus_one(0), IntPoly::zero());
    }

    #[test]
    fn mask_examples() {
        assert_eq!(mask_poly::<i64>(&tile(&[0])), p(&[1]));
        assert_eq!(mask_poly::<i64>(&tile(&[0, 1, 3])), p(&[1, 1, 0, 1]));
        assert_eq!(mask_poly::<i64>(&tile(&[0, 2])), p(&[1, 0, 1]));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
        assert_eq!(&p(&[1, 1]) * &IntPoly::zero(), IntPoly::zero());
        assert_eq!(&p(&[1, 1]) * &p(&[1, 0, 1]), p(&[1, 1, 1, 1]));
    }

    #[test]
    fn divrem_examples() {
        assert_eq!(
            p(&[-1, 0, 1]).divrem(&p(&[-1, 1])).unwrap(),
            (p(&[1, 1]), IntPoly::zero())
        );
        assert_eq!(
            p(&[1, 0, 0, 1]).divrem(&p(&[1, 1])).unwrap(),
            (p(&[1, -1, 1]), IntPoly::zero())
        );
        assert_eq!(p(&[1, 0, 1]).divrem(&p(&[1, 1])).unwrap(), (p(&[-1, 1]), p(&[2])));
        assert_eq!(p(&[1, 1]).divrem(&p(&[1, 2])), Err(Error::NotMonic));
        assert_eq!(p(&[1, 1]).divrem(&IntPoly::zero()), Err(Error::NotMonic));
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic::<i64>(1).unwrap(), p(&[-1, 1]));
        assert_eq!(cyclotomic::<i64>(2).unwrap(), p(&[1, 1]));
        assert_eq!(cyclotomic::<i64>(12).unwrap(), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic::<i64>(8).unwrap(), p(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic::<i64>(0), Err(Error::ZeroArgument));
        assert_eq!(cyclotomic::<i64>(12).unwrap().to_string(), "x^4 - x^2 + 1");
    }

    #[test]
    fn divides_cyclotomic_examples() {
        assert!(divides_cyclotomic(2, &p(&[1, 1])).unwrap());
        assert!(!divides_cyclotomic(3, &p(&[1, 1])).unwrap());
        assert!(divides_cyclotomic(8, &p(&[1, 0, 0, 0, 1])).unwrap());
    }

    #[test]
    fn divisor_set_examples() {
        assert_eq!(cyclotomic_divisor_set(&tile(&[0, 1])).unwrap(), vec![2]);
        assert_eq!(cyclotomic_divisor_set(&tile(&[0, 3])).unwrap(), vec![2, 6]);
        assert!(cyclotomic_divisor_set(&tile(&[0, 1, 3])).unwrap().is_empty());
        assert!(cyclotomic_divisor_set(&tile(&[0])).unwrap().is_empty());
        // 1 + x + ... + x^11 = prod of Φ_d over d | 12, d > 1
        let interval: Vec<usize> = (0..12).collect();
        assert_eq!(
            cyclotomic_divisor_set(&tile(&interval)).unwrap(),
            vec![2, 3, 4, 6, 12]
        );
    }

    #[test]
    fn divisor_products_give_x_n_minus_one() {
        let mut cache = CyclotomicCache::<i64>::new();
        for n in 1..=200usize {
            let mut prod = IntPoly::one();
            for d in numth::divisors(n).unwrap() {
                prod = &prod * cache.get(d).unwrap();
            }
            assert_eq!(prod, IntPoly::x_pow_minus_one(n), "n = {n}");
        }
    }

    #[test]
    fn cyclotomic_degree_is_phi() {
        let mut cache = CyclotomicCache::<i64>::new();
        for n in 1..=100usize {
            let phi = numth::euler_phi(n).unwrap();
            let c = cache.get(n).unwrap();
            assert_eq!(c.degree(), Some(phi));
            assert!(c.is_monic());
        }
    }

    #[test]
    fn wide_and_narrow_rings_agree() {
        let mut narrow = CyclotomicCache::<i32>::new();
        let mut wide = CyclotomicCache::<i128>::new();
        for n in 1..=120usize {
            let a: Vec<i128> = narrow.get(n).unwrap().coeffs().iter().map(|&c| c as i128).collect();
            assert_eq!(a.as_slice(), wide.get(n).unwrap().coeffs());
        }
    }

    #[test]
    fn phi_sum_bounded_by_diameter() {
        let mut cache = CyclotomicCache::<i64>::new();
        for bits in 0u32..(1 << 12) {
            let mut elems = vec![0usize];
            elems.extend((1..=12).filter(|i| bits >> (i - 1) & 1 == 1));
            let t = tile(&elems);
            let s = cache.divisor_set(&t).unwrap();
            let phi_sum: usize = s.iter().map(|&x| numth::euler_phi(x).unwrap()).sum();
            assert!(phi_sum <= t.diameter(), "{elems:?}");
        }
    }

    proptest! {
        #[test]
        fn divrem_reconstructs(
            num in prop::collection::vec(-50i64..50, 0..12),
            den_low in prop::collection::vec(-50i64..50, 0..6),
        ) {
            let pp = p(&num);
            let mut d = den_low.clone();
            d.push(1);
            let q = p(&d);
            let (quot, rem) = pp.divrem(&q).unwrap();
            prop_assert!(rem.degree().map_or(true, |r| r < q.degree().unwrap()));
            prop_assert_eq!(&(&quot * &q) + &rem, pp);
        }
    }
}
