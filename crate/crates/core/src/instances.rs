//! Hard-instance distributions built from nested block swaps, plus the
//! index-tree utilities (LCA levels, bad-event detection) used to study
//! them.
//!
//! Arrays of length `n = 2^k` are viewed as leaves of an ordered binary
//! tree; a `j`-block is a contiguous, aligned run of `2^j` indices. The
//! two-scale family starts from the identity, swaps the halves of every
//! `j1`-block, and then applies `j2`-level half-swaps according to per-block
//! coins; the depth-`h` family recurses the same idea through a vector of
//! strictly decreasing scales. Every sampler returns its coin outcomes so
//! tests can rebuild the array without re-deriving randomness.

use crate::rng::RandomSource;
use crate::{Error, Result};

/// Distribution selector for the block-swap families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    D0,
    D1,
}

/// Strictly decreasing scale levels `j1 > j2 > ... > jh`.
///
/// With `strict` set, the constructor enforces the wide gaps
/// `j_{i+1} <= j_i - log2(h+2) - (4h+4)` (and the matching headroom below
/// `log2 n`); those force astronomically large `n`, so desk-scale work uses
/// `strict = false`, which only requires strict decrease. The distance law
/// of the `D1` family is exact regardless of the scales.
#[derive(Debug, Clone)]
pub struct ScaleVector {
    scales: Vec<u32>,
    pub strict: bool,
}

impl ScaleVector {
    pub fn new(scales: Vec<u32>, strict: bool) -> Result<Self> {
        if scales.len() < 2 {
            return Err(Error::invalid("need at least two scales (h >= 2)"));
        }
        if scales.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::invalid("scales must strictly decrease"));
        }
        if *scales.last().unwrap() == 0 {
            return Err(Error::invalid("scales must be at least 1"));
        }
        let sv = ScaleVector { scales, strict };
        if sv.strict {
            let h = sv.h() as f64;
            let gap = (h + 2.0).log2() + 4.0 * h + 4.0;
            for w in sv.scales.windows(2) {
                if (w[1] as f64) > w[0] as f64 - gap {
                    return Err(Error::invalid(format!(
                        "strict mode requires scale gaps of at least {gap:.2}"
                    )));
                }
            }
        }
        Ok(sv)
    }

    pub fn h(&self) -> usize {
        self.scales.len()
    }

    pub fn scales(&self) -> &[u32] {
        &self.scales
    }

    /// Check the scales against a concrete array length.
    pub fn validate_for(&self, n: usize) -> Result<()> {
        if !n.is_power_of_two() || n < 2 {
            return Err(Error::invalid(format!("n = {n} must be a power of two")));
        }
        let log_n = n.trailing_zeros();
        if self.scales[0] > log_n {
            return Err(Error::invalid(format!(
                "top scale {} exceeds log2(n) = {log_n}",
                self.scales[0]
            )));
        }
        if self.strict {
            let h = self.h() as f64;
            let headroom = (h + 2.0).log2() + 4.0 * h + 4.0;
            if self.scales[0] as f64 > log_n as f64 - headroom {
                return Err(Error::invalid(format!(
                    "strict mode requires j1 <= log2(n) - {headroom:.2}"
                )));
            }
        }
        Ok(())
    }
}

/// The `ordinal`-th block of size `2^level` (0-based ordinal).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockRef {
    pub level: u32,
    pub ordinal: usize,
}

impl BlockRef {
    /// Index span of the block, half-open.
    pub fn index_range(&self) -> std::ops::Range<usize> {
        let size = 1usize << self.level;
        self.ordinal * size..(self.ordinal + 1) * size
    }
}

/// Coin outcomes of a sampler run, mirroring the recursive construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelTree {
    /// Two-scale base case: one coin per top-level block.
    Base { coins: Vec<bool> },
    /// Deeper recursion: per top-level block, the block coin plus the label
    /// trees of its two halves.
    Node { blocks: Vec<BlockLabels> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockLabels {
    pub coin: bool,
    pub left: LabelTree,
    pub right: LabelTree,
}

impl LabelTree {
    /// Coins in canonical draw order: blocks left to right; within a block,
    /// the block coin, then the left subtree, then the right subtree.
    pub fn flatten(&self) -> Vec<bool> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<bool>) {
        match self {
            LabelTree::Base { coins } => out.extend_from_slice(coins),
            LabelTree::Node { blocks } => {
                for b in blocks {
                    out.push(b.coin);
                    b.left.collect(out);
                    b.right.collect(out);
                }
            }
        }
    }
}

/// Sub-variants a block's halves are sampled from, given the block coin.
///
/// `D0` blocks are 00 (coin false) or 11 (coin true); `D1` blocks are 01
/// (coin false) or 10 (coin true).
fn half_variants(variant: Variant, coin: bool) -> (Variant, Variant) {
    match (variant, coin) {
        (Variant::D0, false) => (Variant::D0, Variant::D0),
        (Variant::D0, true) => (Variant::D1, Variant::D1),
        (Variant::D1, false) => (Variant::D0, Variant::D1),
        (Variant::D1, true) => (Variant::D1, Variant::D0),
    }
}

/// Swap the values between the left and right halves of every aligned
/// `2^level`-block of the slice.
fn swap_block_halves(values: &mut [f64], level: u32) {
    let size = 1usize << level;
    let half = size / 2;
    for block in values.chunks_exact_mut(size) {
        let (l, r) = block.split_at_mut(half);
        l.swap_with_slice(r);
    }
}

fn fill(
    values: &mut [f64],
    scales: &[u32],
    variant: Variant,
    coin: &mut dyn FnMut() -> bool,
) -> LabelTree {
    let j1 = scales[0];
    let size = 1usize << j1;
    swap_block_halves(values, j1);
    if scales.len() == 2 {
        let j2 = scales[1];
        let mut coins = Vec::with_capacity(values.len() / size);
        for block in values.chunks_exact_mut(size) {
            let c = coin();
            coins.push(c);
            match variant {
                Variant::D0 => {
                    if c {
                        swap_block_halves(block, j2);
                    }
                }
                Variant::D1 => {
                    let half = size / 2;
                    if !c {
                        swap_block_halves(&mut block[..half], j2);
                    } else {
                        swap_block_halves(&mut block[half..], j2);
                    }
                }
            }
        }
        LabelTree::Base { coins }
    } else {
        let mut blocks = Vec::with_capacity(values.len() / size);
        for block in values.chunks_exact_mut(size) {
            let c = coin();
            let (vl, vr) = half_variants(variant, c);
            let half = size / 2;
            let (l, r) = block.split_at_mut(half);
            let left = fill(l, &scales[1..], vl, coin);
            let right = fill(r, &scales[1..], vr, coin);
            blocks.push(BlockLabels {
                coin: c,
                left,
                right,
            });
        }
        LabelTree::Node { blocks }
    }
}

fn identity(n: usize) -> Vec<f64> {
    (1..=n).map(|u| u as f64).collect()
}

/// Sample the two-scale family. Returns the array and the per-block coins.
///
/// For `D0`, a block coin of `true` swaps the halves of every `j2`-block in
/// the whole `j1`-block; `false` leaves it alone. For `D1`, `false` applies
/// the `j2`-swaps in the left half only, `true` in the right half only.
pub fn sample_d(
    n: usize,
    variant: Variant,
    scales: &ScaleVector,
    rng: &mut RandomSource,
) -> Result<(Vec<f64>, Vec<bool>)> {
    if scales.h() != 2 {
        return Err(Error::invalid("sample_d requires exactly two scales"));
    }
    scales.validate_for(n)?;
    let mut values = identity(n);
    let tree = fill(&mut values, scales.scales(), variant, &mut || rng.coin());
    match tree {
        LabelTree::Base { coins } => Ok((values, coins)),
        LabelTree::Node { .. } => unreachable!(),
    }
}

/// Sample the depth-`h` recursive family; `h = 2` coincides with
/// [`sample_d`] draw for draw.
pub fn sample_dh(
    n: usize,
    variant: Variant,
    scales: &ScaleVector,
    rng: &mut RandomSource,
) -> Result<(Vec<f64>, LabelTree)> {
    scales.validate_for(n)?;
    let mut values = identity(n);
    let tree = fill(&mut values, scales.scales(), variant, &mut || rng.coin());
    Ok((values, tree))
}

/// Rebuild the array a sampler produced from its recorded labels.
pub fn rebuild(n: usize, variant: Variant, scales: &ScaleVector, labels: &LabelTree) -> Result<Vec<f64>> {
    scales.validate_for(n)?;
    let flat = labels.flatten();
    let mut pos = 0usize;
    let mut values = identity(n);
    let tree = fill(&mut values, scales.scales(), variant, &mut || {
        let c = flat[pos];
        pos += 1;
        c
    });
    if pos != flat.len() {
        return Err(Error::invalid("label count does not match the construction"));
    }
    debug_assert_eq!(tree.flatten(), flat);
    Ok(values)
}

/// Level of the lowest common ancestor of leaves `u != v` (0-based) in the
/// ordered binary index tree over `[0, n)`: the bit length of `u ^ v`.
pub fn lca_level(u: usize, v: usize, n: usize) -> Result<u32> {
    if !n.is_power_of_two() {
        return Err(Error::invalid("n must be a power of two"));
    }
    if u == v {
        return Err(Error::invalid("lca_level requires distinct leaves"));
    }
    if u >= n || v >= n {
        return Err(Error::invalid("leaf outside [0, n)"));
    }
    Ok(usize::BITS - (u ^ v).leading_zeros())
}

/// Whether the query set contains four indices `w < x < y < z` in one
/// `j1`-block with `LCA(w,x)` and `LCA(y,z)` at level `j2` and `LCA(x,y)`
/// at level `j1`. Brute force over same-block query groups.
pub fn detect_bad_event(queries: &[usize], j1: u32, j2: u32, n: usize) -> bool {
    assert!(j2 < j1, "requires j2 < j1");
    let mut sorted: Vec<usize> = queries.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut start = 0;
    while start < sorted.len() {
        let block = sorted[start] >> j1;
        let mut end = start;
        while end < sorted.len() && sorted[end] >> j1 == block {
            end += 1;
        }
        let group = &sorted[start..end];
        if group.len() >= 4 && group_has_bad_quadruple(group, j1, j2, n) {
            return true;
        }
        start = end;
    }
    false
}

fn group_has_bad_quadruple(group: &[usize], j1: u32, j2: u32, n: usize) -> bool {
    let level = |a: usize, b: usize| lca_level(a, b, n).unwrap();
    let g = group.len();
    for a in 0..g {
        for b in (a + 1)..g {
            if level(group[a], group[b]) != j2 {
                continue;
            }
            for c in (b + 1)..g {
                if level(group[b], group[c]) != j1 {
                    continue;
                }
                for d in (c + 1)..g {
                    if level(group[c], group[d]) == j2 {
                        return true;
                    }
                }
            }
        }
    }
    false
}
