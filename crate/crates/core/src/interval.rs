//! Tilings of intervals `A ⊕ B = [n]`.
//!
//! Every such tiling with `n > 1` factors as `{A, B} = {mE ⊕ [m], mD}` for
//! some `m >= 2` dividing `n`, where `E ⊕ D = [n/m]`. Recursing on `E ⊕ D`
//! shows that the side with the larger maximum is periodic mod `n`, and hence
//! that a tiling of `[n]` with `n > 2·diam(A)` restricts to a tiling of a
//! shorter interval.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numth;
use crate::tiling::{first_bad_cell, verify_interval_tiling, CyclicSet, IntervalTiling};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    A,
    B,
}

/// `{A, B} = {m·E ⊕ [m], m·D}` with `E ⊕ D = [n/m]`; `scaled_side` names the
/// side equal to `m·E ⊕ [m]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LongDecomposition {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "E")]
    pub e: Vec<usize>,
    #[serde(rename = "D")]
    pub dset: Vec<usize>,
    pub scaled_side: Side,
}

impl LongDecomposition {
    /// `(A, B)` rebuilt from the factors.
    pub fn reconstruct(&self) -> (Vec<usize>, Vec<usize>) {
        let m = self.m;
        let mut spread: Vec<usize> = self.e.iter().flat_map(|&e| (0..m).map(move |r| m * e + r)).collect();
        spread.sort_unstable();
        let scaled: Vec<usize> = self.dset.iter().map(|&d| m * d).collect();
        match self.scaled_side {
            Side::A => (spread, scaled),
            Side::B => (scaled, spread),
        }
    }

    /// The tiling `E ⊕ D = [n/m]`, oriented so that its `A` side is the
    /// factor coming from the parent's `A`.
    pub fn child_tiling(&self) -> IntervalTiling {
        let (a, b) = match self.scaled_side {
            Side::A => (self.e.clone(), self.dset.clone()),
            Side::B => (self.dset.clone(), self.e.clone()),
        };
        IntervalTiling::new(self.n / self.m, a, b).expect("factors are sets")
    }
}

fn require_tiling(t: &IntervalTiling) -> Result<()> {
    if verify_interval_tiling(t) {
        return Ok(());
    }
    let (counts, _) = t.cover_counts();
    let w = first_bad_cell(&counts);
    Err(match w {
        Some(w) => Error::NotATiling { residue: w.residue, count: w.count },
        // every cell of [n] is covered once but some sum overshoots
        None => Error::NotATiling { residue: t.max_a() + t.max_b(), count: 1 },
    })
}

/// Try `spread = m·E ⊕ [m]` and `scaled = m·D`.
fn try_factor(spread: &[usize], scaled: &[usize], m: usize, n: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    if scaled.iter().any(|&x| x % m != 0) {
        return None;
    }
    let dset: Vec<usize> = scaled.iter().map(|&x| x / m).collect();
    let e: Vec<usize> = spread.iter().filter(|&&x| x % m == 0).map(|&x| x / m).collect();
    if e.len() * m != spread.len() {
        return None;
    }
    let rebuilt = e.iter().flat_map(|&v| (0..m).map(move |r| m * v + r));
    if !rebuilt.eq(spread.iter().copied()) {
        return None;
    }
    let child = IntervalTiling::new(n / m, e.clone(), dset.clone()).ok()?;
    verify_interval_tiling(&child).then_some((e, dset))
}

/// Factor an interval tiling, scanning `m` from the largest divisor of `n`
/// downwards.
pub fn long_decompose(t: &IntervalTiling) -> Result<LongDecomposition> {
    let n = t.n();
    if n <= 1 {
        return Err(Error::IntervalTooShort(n));
    }
    require_tiling(t)?;
    for m in numth::divisors(n)?.into_iter().rev().filter(|&m| m >= 2) {
        for side in [Side::A, Side::B] {
            let (spread, scaled) = match side {
                Side::A => (t.a(), t.b()),
                Side::B => (t.b(), t.a()),
            };
            if let Some((e, dset)) = try_factor(spread, scaled, m, n) {
                return Ok(LongDecomposition { n, m, e, dset, scaled_side: side });
            }
        }
    }
    Err(Error::Internal(format!("no factorization found for {t:?}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionTree {
    #[serde(flatten)]
    pub node: LongDecomposition,
    pub child: Option<Box<DecompositionTree>>,
}

impl DecompositionTree {
    pub fn depth(&self) -> usize {
        1 + self.child.as_ref().map_or(0, |c| c.depth())
    }

    pub fn m_values(&self) -> Vec<usize> {
        let mut out = vec![self.node.m];
        if let Some(c) = &self.child {
            out.extend(c.m_values());
        }
        out
    }
}

/// Full recursion down to `[1]`; `None` for the trivial tiling of `[1]`.
pub fn decomposition_tree(t: &IntervalTiling) -> Result<Option<DecompositionTree>> {
    if t.n() == 1 {
        require_tiling(t)?;
        return Ok(None);
    }
    let node = long_decompose(t)?;
    let child = decomposition_tree(&node.child_tiling())?.map(Box::new);
    Ok(Some(DecompositionTree { node, child }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DichotomyReport {
    pub n: usize,
    pub max_a: usize,
    pub max_b: usize,
    pub larger: Side,
    /// Least period mod `n` of the larger side, by direct scan.
    pub period: usize,
    /// `m·t` read off the decomposition tree.
    pub tree_period: usize,
    pub tree_period_verified: bool,
}

fn tree_period(tree: &DecompositionTree) -> usize {
    match &tree.child {
        None => 1,
        Some(c) => tree.node.m * tree_period(c),
    }
}

/// For `n > 1` the two maxima differ and the side with the larger one is
/// periodic mod `n`.
pub fn check_max_dichotomy(t: &IntervalTiling) -> Result<DichotomyReport> {
    let tree = decomposition_tree(t)?.ok_or(Error::IntervalTooShort(t.n()))?;
    let n = t.n();
    let (max_a, max_b) = (t.max_a(), t.max_b());
    let (larger, side) = match max_a.cmp(&max_b) {
        std::cmp::Ordering::Greater => (Side::A, t.a()),
        std::cmp::Ordering::Less => (Side::B, t.b()),
        std::cmp::Ordering::Equal => {
            return Err(Error::Internal(format!("equal maxima in {t:?}")));
        }
    };
    let set = CyclicSet::new(n, side.iter().map(|&x| x as i64))?;
    let period = set.least_period();
    if period >= n {
        return Err(Error::Internal(format!("larger side of {t:?} is not periodic")));
    }
    let tp = tree_period(&tree);
    Ok(DichotomyReport {
        n,
        max_a,
        max_b,
        larger,
        period,
        tree_period: tp,
        tree_period_verified: tp < n && set.has_period(tp),
    })
}

/// For `n > 2·diam(A)`: a proper divisor `t` of `n` with
/// `A ⊕ (B ∩ [t]) = [t]`, together with `B ∩ [t]`.
pub fn extract_subtiling(t: &IntervalTiling) -> Result<(usize, Vec<usize>)> {
    require_tiling(t)?;
    let n = t.n();
    let diameter = t.max_a();
    if n <= 2 * diameter {
        return Err(Error::IntervalHypothesis { n, diameter });
    }
    let b = CyclicSet::new(n, t.b().iter().map(|&x| x as i64))?;
    for period in numth::divisors(n)?.into_iter().filter(|&p| p < n && b.has_period(p)) {
        let head: Vec<usize> = t.b().iter().copied().filter(|&x| x < period).collect();
        let sub = IntervalTiling::new(period, t.a().to_vec(), head.clone())?;
        if verify_interval_tiling(&sub) {
            return Ok((period, head));
        }
    }
    Err(Error::Internal(format!("no sub-tiling found for {t:?}")))
}

/// Every tiling `A ⊕ B = [n]`, ordered by `A` then `B`.
///
/// Cells are decided left to right. Once `A ∩ [x+1]` is fixed, the number of
/// representations of `x` is known, which forces whether `x ∈ B`.
pub fn enumerate_interval_tilings(n: usize) -> Vec<IntervalTiling> {
    struct State {
        n: usize,
        in_a: Vec<bool>,
        a: Vec<usize>,
        b: Vec<usize>,
        out: Vec<IntervalTiling>,
    }

    fn reps(s: &State, x: usize) -> usize {
        s.b.iter().filter(|&&b| b <= x && s.in_a[x - b]).count()
    }

    fn step(s: &mut State, x: usize) {
        if x == s.n {
            let t = IntervalTiling::new(s.n, s.a.clone(), s.b.clone()).expect("sets");
            if verify_interval_tiling(&t) {
                s.out.push(t);
            }
            return;
        }
        let max_b = *s.b.last().expect("0 in B");
        for take in [false, true] {
            if take && x + max_b >= s.n {
                continue;
            }
            s.in_a[x] = take;
            if take {
                s.a.push(x);
            }
            match reps(s, x) {
                0 => {
                    let max_a = *s.a.last().expect("0 in A");
                    if x + max_a < s.n {
                        s.b.push(x);
                        step(s, x + 1);
                        s.b.pop();
                    }
                }
                1 => step(s, x + 1),
                _ => {}
            }
            if take {
                s.a.pop();
            }
            s.in_a[x] = false;
        }
    }

    if n == 0 {
        return Vec::new();
    }
    let mut s = State { n, in_a: vec![false; n], a: vec![0], b: vec![0], out: Vec::new() };
    s.in_a[0] = true;
    step(&mut s, 1);
    s.out.sort();
    s.out
}
