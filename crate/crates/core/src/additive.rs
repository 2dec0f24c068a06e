//! Additive-error LIS estimation parameterized by the number of distinct
//! values.
//!
//! The array is cut into `t = ceil(4r/eps)` subarrays; each is sampled at
//! `s` uniform independent indices, the values whose sample frequency
//! clears `eps/4 - delta/2` (with `delta = eps/8`) become the subarray's
//! typical values, and a dynamic program picks one typical value per chosen
//! subarray, nondecreasing across subarrays, maximizing the summed
//! frequencies. The best score scaled by the subarray length estimates the
//! LIS within an additive `eps * n`.
//!
//! Everything after the sampling step is pure post-processing, so the same
//! machinery also runs sample-based over points somebody else drew
//! ([`estimate_lis_presampled`]); that mode backs the chain estimators of
//! the multiplicative algorithm, where points may carry
//! [`QueryAnswer::OutOfRange`] for values outside a box. Such points count
//! toward sample sizes but can never become typical.

use crate::oracle::{QueryAnswer, QueryOracle};
use crate::report::{AdditiveDiagnostics, Diagnostics, EstimateReport};
use crate::rng::RandomSource;

/// Uniform index sample of one subarray together with the query answers.
#[derive(Debug, Clone)]
pub struct SubarraySample {
    pub subarray_index: usize,
    pub indices: Vec<usize>,
    pub answers: Vec<QueryAnswer>,
}

/// Values of one subarray whose sample frequency cleared the threshold,
/// sorted ascending, with their frequencies.
#[derive(Debug, Clone)]
pub struct TypicalValueSet {
    pub subarray_index: usize,
    pub values: Vec<f64>,
    pub densities: Vec<f64>,
}

/// A nondecreasing choice of one typical value per selected subarray.
#[derive(Debug, Clone)]
pub struct PseudoSolution {
    pub support: Vec<usize>,
    pub values: Vec<f64>,
    pub score: f64,
}

/// Sample-based estimation failed because some subarray of the view
/// received fewer points than the concentration bound needs.
#[derive(Debug, Clone, thiserror::Error)]
#[error("subarray {subarray} of the view got {got} points, need {need}")]
pub struct InsufficientSample {
    pub subarray: usize,
    pub got: usize,
    pub need: usize,
}

/// Per-subarray sample size. The default follows the stated
/// `(1/delta^2) ln(6 t r)`; strict mode uses the larger
/// `(12/delta^2) ln(12 t r)` that the Hoeffding argument spells out.
pub fn sample_size(t: usize, r: usize, delta: f64, paper_strict: bool) -> usize {
    let tr = (t as f64) * (r as f64);
    let s = if paper_strict {
        (12.0 / (delta * delta)) * (12.0 * tr).ln()
    } else {
        (1.0 / (delta * delta)) * (6.0 * tr).ln()
    };
    (s.ceil() as usize).max(1)
}

/// Subarray boundaries: `t` contiguous intervals of (floor-)equal length.
fn subarray_bounds(n: usize, t: usize) -> Vec<usize> {
    (0..=t).map(|i| i * n / t).collect()
}

fn bucket_of(bounds: &[usize], rel_index: usize) -> usize {
    debug_assert!(rel_index < *bounds.last().unwrap());
    bounds.partition_point(|&b| b <= rel_index) - 1
}

/// All values whose frequency in the sample reaches `threshold`.
pub fn find_typical(sample: &SubarraySample, threshold: f64) -> TypicalValueSet {
    assert!(!sample.answers.is_empty(), "empty sample");
    assert!(threshold > 0.0 && threshold < 1.0);
    let mut vals: Vec<f64> = sample
        .answers
        .iter()
        .filter_map(|a| a.value())
        .collect();
    vals.sort_by(f64::total_cmp);
    let denom = sample.answers.len() as f64;
    let mut values = Vec::new();
    let mut densities = Vec::new();
    let mut i = 0;
    while i < vals.len() {
        let mut j = i;
        while j < vals.len() && vals[j] == vals[i] {
            j += 1;
        }
        let den = (j - i) as f64 / denom;
        if den >= threshold {
            values.push(vals[i]);
            densities.push(den);
        }
        i = j;
    }
    TypicalValueSet {
        subarray_index: sample.subarray_index,
        values,
        densities,
    }
}

/// Maximum-score pseudo-solution over the given typical-value sets, by
/// dynamic programming over the globally sorted value list.
///
/// Ties break toward smaller values, then smaller supports; the tie rule
/// never affects the score and only pins reconstruction down.
pub fn best_pseudo_solution(typicals: &[TypicalValueSet]) -> PseudoSolution {
    let mut all_values: Vec<f64> = typicals.iter().flat_map(|t| t.values.clone()).collect();
    all_values.sort_by(f64::total_cmp);
    all_values.dedup();
    let k = all_values.len();
    let t = typicals.len();
    if k == 0 || t == 0 {
        return PseudoSolution {
            support: vec![],
            values: vec![],
            score: 0.0,
        };
    }

    // dp[v]: best score with the last chosen value <= all_values[v];
    // nondecreasing in v. Choices record how each cell was reached.
    const SKIP: u8 = 0; // subarray not in the support
    const TAKE: u8 = 1; // subarray takes all_values[v]
    const INHERIT: u8 = 2; // value slack: drop to v-1
    let mut dp = vec![0.0f64; k];
    let mut choice = vec![0u8; t * k];
    for (i, ts) in typicals.iter().enumerate() {
        let mut den = vec![0.0f64; k];
        for (v, d) in ts.values.iter().zip(&ts.densities) {
            let pos = all_values.partition_point(|x| x.total_cmp(v).is_lt());
            den[pos] = *d;
        }
        let row = &mut choice[i * k..(i + 1) * k];
        let mut ndp = vec![0.0f64; k];
        for v in 0..k {
            let skip = dp[v];
            let take = if den[v] > 0.0 { dp[v] + den[v] } else { f64::MIN };
            let (mut best, mut ch) = (skip, SKIP);
            if take > best {
                best = take;
                ch = TAKE;
            }
            if v > 0 && ndp[v - 1] >= best {
                best = ndp[v - 1];
                ch = INHERIT;
            }
            ndp[v] = best;
            row[v] = ch;
        }
        dp = ndp;
    }

    // Walk back from the top-right cell.
    let mut support = Vec::new();
    let mut values = Vec::new();
    let mut v = k - 1;
    let mut i = t;
    while i > 0 {
        match choice[(i - 1) * k + v] {
            INHERIT => {
                v -= 1;
            }
            TAKE => {
                support.push(i - 1);
                values.push(all_values[v]);
                i -= 1;
            }
            _ => {
                i -= 1;
            }
        }
    }
    support.reverse();
    values.reverse();
    PseudoSolution {
        support,
        values,
        score: dp[k - 1],
    }
}

/// Knobs for the additive estimator.
#[derive(Debug, Clone, Copy, Default)]
pub struct AdditiveParams {
    /// Use the conservative sample size spelled out by the concentration
    /// argument instead of the stated one.
    pub paper_strict: bool,
}

/// Additive `eps * n` LIS estimation with `t * s` uniform nonadaptive
/// queries. `r` is the caller's bound on the number of distinct values;
/// when it is wrong the estimate carries no guarantee.
///
/// When `4r/eps` exceeds the view length, sampling would cost more than
/// reading everything, so the estimator queries each index once and solves
/// exactly instead.
pub fn estimate_lis_additive(
    oracle: &QueryOracle,
    r: usize,
    eps: f64,
    params: AdditiveParams,
    rng: &mut RandomSource,
) -> EstimateReport {
    assert!(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
    assert!(r >= 1, "r must be positive");
    let n = oracle.view_len();
    let base = oracle.view_start();
    let t_raw = (4.0 * r as f64 / eps).ceil() as usize;

    if t_raw > n {
        // Exact fallback: one query per index.
        let values: Vec<f64> = (0..n)
            .filter_map(|i| oracle.query(base + i).value())
            .collect();
        let estimate = crate::exact::lis_exact(&values) as f64;
        return EstimateReport {
            estimate,
            query_count: n as u64,
            seed: rng.seed(),
            params: echo_params(n, r, eps, n, 1),
            diagnostics: Diagnostics::Additive(AdditiveDiagnostics {
                t: n,
                s: 1,
                exact_fallback: true,
            }),
            ground_truth: None,
        };
    }

    let t = t_raw;
    let delta = eps / 8.0;
    let s = sample_size(t, r, delta, params.paper_strict);
    let bounds = subarray_bounds(n, t);
    let threshold = eps / 4.0 - delta / 2.0;

    let mut typicals = Vec::with_capacity(t);
    for i in 0..t {
        let (lo, hi) = (bounds[i], bounds[i + 1]);
        let mut indices = Vec::with_capacity(s);
        let mut answers = Vec::with_capacity(s);
        for _ in 0..s {
            let idx = lo + rng.index(hi - lo);
            indices.push(base + idx);
            answers.push(oracle.query(base + idx));
        }
        typicals.push(find_typical(
            &SubarraySample {
                subarray_index: i,
                indices,
                answers,
            },
            threshold,
        ));
    }
    let best = best_pseudo_solution(&typicals);
    let estimate = best.score * n as f64 / t as f64;
    EstimateReport {
        estimate,
        query_count: (t * s) as u64,
        seed: rng.seed(),
        params: echo_params(n, r, eps, t, s),
        diagnostics: Diagnostics::Additive(AdditiveDiagnostics {
            t,
            s,
            exact_fallback: false,
        }),
        ground_truth: None,
    }
}

fn echo_params(n: usize, r: usize, eps: f64, t: usize, s: usize) -> Vec<(String, String)> {
    vec![
        ("n".into(), n.to_string()),
        ("r".into(), r.to_string()),
        ("epsilon".into(), eps.to_string()),
        ("t".into(), t.to_string()),
        ("s".into(), s.to_string()),
    ]
}

/// Sample-based variant: estimate from points someone else drew uniformly
/// and independently over a view of `view_len` indices (`points` carry
/// view-relative indices). Buckets the points into the view's subarrays,
/// verifies each bucket clears the concentration bound, truncates buckets
/// to equal size, and then proceeds exactly as the query-based path.
pub fn estimate_lis_presampled(
    points: &[(usize, QueryAnswer)],
    view_len: usize,
    r: usize,
    eps: f64,
    paper_strict: bool,
) -> Result<f64, InsufficientSample> {
    assert!(eps > 0.0 && eps < 1.0);
    assert!(view_len > 0);
    let t = ((4.0 * r as f64 / eps).ceil() as usize).min(view_len).max(1);
    let delta = eps / 8.0;
    let need = sample_size(t, r, delta, paper_strict);
    let bounds = subarray_bounds(view_len, t);

    let mut buckets: Vec<Vec<QueryAnswer>> = vec![Vec::new(); t];
    for &(rel, ans) in points {
        buckets[bucket_of(&bounds, rel)].push(ans);
    }
    let mut min_size = usize::MAX;
    for (i, b) in buckets.iter().enumerate() {
        if b.len() < need {
            return Err(InsufficientSample {
                subarray: i,
                got: b.len(),
                need,
            });
        }
        min_size = min_size.min(b.len());
    }
    let threshold = eps / 4.0 - delta / 2.0;
    let typicals: Vec<TypicalValueSet> = buckets
        .into_iter()
        .enumerate()
        .map(|(i, mut answers)| {
            answers.truncate(min_size);
            find_typical(
                &SubarraySample {
                    subarray_index: i,
                    indices: Vec::new(),
                    answers,
                },
                threshold,
            )
        })
        .collect();
    let best = best_pseudo_solution(&typicals);
    Ok(best.score * view_len as f64 / t as f64)
}
