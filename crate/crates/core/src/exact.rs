//! Exact, polynomial-time ground-truth computations.
//!
//! LIS here always means the longest *nondecreasing* subsequence; patience
//! sorting therefore places each value on the first pile whose top is
//! strictly larger. [`lis_exact_quadratic`] is the independent O(n^2)
//! reference the fast path is checked against.

/// Length of the longest nondecreasing subsequence, O(n log n).
pub fn lis_exact(values: &[f64]) -> usize {
    let mut tails: Vec<f64> = Vec::new();
    for &v in values {
        // First pile top strictly greater than v; ties extend to the right.
        let pos = tails.partition_point(|&t| t <= v);
        if pos == tails.len() {
            tails.push(v);
        } else {
            tails[pos] = v;
        }
    }
    tails.len()
}

/// O(n^2) dynamic-programming reference for [`lis_exact`].
pub fn lis_exact_quadratic(values: &[f64]) -> usize {
    let n = values.len();
    let mut best = vec![0usize; n];
    let mut ans = 0;
    for i in 0..n {
        best[i] = 1;
        for j in 0..i {
            if values[j] <= values[i] {
                best[i] = best[i].max(best[j] + 1);
            }
        }
        ans = ans.max(best[i]);
    }
    ans
}

/// Index set of one longest nondecreasing subsequence.
///
/// The particular LIS is deterministic (leftmost placements); structural
/// tests only rely on it being *a* fixed LIS.
pub fn lis_indices(values: &[f64]) -> Vec<usize> {
    if values.is_empty() {
        return Vec::new();
    }
    let mut pile_tops: Vec<f64> = Vec::new();
    let mut pile_top_idx: Vec<usize> = Vec::new();
    let mut prev = vec![usize::MAX; values.len()];
    for (i, &v) in values.iter().enumerate() {
        let pos = pile_tops.partition_point(|&t| t <= v);
        if pos > 0 {
            prev[i] = pile_top_idx[pos - 1];
        }
        if pos == pile_tops.len() {
            pile_tops.push(v);
            pile_top_idx.push(i);
        } else {
            pile_tops[pos] = v;
            pile_top_idx[pos] = i;
        }
    }
    let mut out = Vec::with_capacity(pile_tops.len());
    let mut cur = *pile_top_idx.last().unwrap();
    while cur != usize::MAX {
        out.push(cur);
        cur = prev[cur];
    }
    out.reverse();
    out
}

/// Minimum number of positions whose values must change to make the array
/// monotone: `n - lis_exact`.
pub fn distance_to_monotonicity(values: &[f64]) -> usize {
    values.len() - lis_exact(values)
}

use crate::oracle::ErasedArray;

/// Whether some completion of the array is monotone, i.e. the nonerased
/// values are nondecreasing in index order (gaps interpolate with reals).
pub fn is_completable_monotone(array: &ErasedArray) -> bool {
    let mut last = f64::NEG_INFINITY;
    for i in 0..array.len() {
        if let Some(v) = array.value(i) {
            if v < last {
                return false;
            }
            last = v;
        }
    }
    true
}

/// Minimum over completions of the distance to monotonicity.
///
/// Erased positions can always join the LIS of the best completion, so the
/// closed form is `#nonerased - lis_exact(nonerased subsequence)`.
pub fn erased_distance(array: &ErasedArray) -> usize {
    let nonerased = array.nonerased_values();
    nonerased.len() - lis_exact(&nonerased)
}

/// Number of elements of `s` that are gamma-deserted in `[0, n)`: elements
/// lying in some interval where `s` has density below `gamma`.
///
/// Element `i` is deserted iff some interval `[a, b]` containing `i` has
/// `|S n [a,b]| < gamma * (b - a + 1)`. With prefix counts `P` and
/// `f(x) = P[x] - gamma * x` this is exactly
/// `min_{x > i} f(x) < max_{a <= i} f(a)`, which one pass computes. The
/// comparison runs in integer arithmetic on the exact binary expansion of
/// `gamma`, so boundary-tight intervals never flip on rounding; the
/// literal all-intervals scan is kept as a test oracle.
pub fn count_deserted(s: &[usize], n: usize, gamma: f64) -> usize {
    assert!(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0, 1)");
    let mut member = vec![false; n];
    for &i in s {
        assert!(i < n, "set element {i} outside [0, {n})");
        member[i] = true;
    }
    // gamma = sig / 2^neg_exp exactly; f(x) scaled by 2^neg_exp stays
    // integral: F(x) = P[x] << neg_exp - sig * x.
    let (sig, neg_exp) = decompose_fraction(gamma);
    assert!(
        (n as u128).leading_zeros() as i64 - 1 >= neg_exp as i64,
        "gamma too small for exact arithmetic at this n"
    );
    let mut f = vec![0i128; n + 1];
    for i in 0..n {
        f[i + 1] = f[i] + ((member[i] as i128) << neg_exp) - sig as i128;
    }
    let mut count = 0usize;
    let mut suffix_min = vec![0i128; n + 1];
    suffix_min[n] = f[n];
    for i in (0..n).rev() {
        suffix_min[i] = suffix_min[i + 1].min(f[i]);
    }
    let mut prefix_max = f[0];
    for i in 0..n {
        prefix_max = prefix_max.max(f[i]);
        if member[i] && suffix_min[i + 1] < prefix_max {
            count += 1;
        }
    }
    count
}

/// Exact test of `count < gamma * len` for the f64 value of `gamma`.
pub fn density_below(count: usize, len: usize, gamma: f64) -> bool {
    let (sig, neg_exp) = decompose_fraction(gamma);
    ((count as u128) << neg_exp) < sig as u128 * len as u128
}

/// Exact representation of `x` in `(0, 1)` as `sig / 2^neg_exp`, reduced.
fn decompose_fraction(x: f64) -> (u64, u32) {
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mut sig, exp) = if raw_exp == 0 {
        (frac, -1074i64)
    } else {
        (frac | (1u64 << 52), raw_exp - 1075)
    };
    let trailing = sig.trailing_zeros().min((-exp) as u32);
    sig >>= trailing;
    let neg_exp = (-exp) as u32 - trailing;
    (sig, neg_exp)
}
