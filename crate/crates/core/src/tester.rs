//! Nonadaptive erasure-resilient monotonicity tester.
//!
//! A single run samples a search point `s`, walks a randomized binary
//! search toward `s` (querying every pivot), queries a window of
//! `ceil(20/eps)` indices on each side of `s`, and rejects iff two
//! nonerased queried values violate monotonicity. The queried index
//! sequence is a function of the seed alone, so the tester is nonadaptive;
//! it never rejects a completable-monotone array.
//!
//! [`er_test`] amplifies the run `ceil(120/eps^2)` times, capping each run
//! at `10 * (3 * log2(n) + 40/eps)` queries; a capped run accepts, which
//! preserves one-sided error.

use crate::oracle::{QueryAnswer, QueryOracle};
use crate::rng::RandomSource;

/// Verdict of a tester invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct TesterVerdict {
    pub decision: Decision,
    pub queries_used: u64,
    /// Present on rejection: indices `(u, v)` with `u < v`, both nonerased,
    /// and the queried value at `u` strictly larger than at `v`.
    pub witness: Option<(usize, usize)>,
    /// Whether any run halted at its query cap.
    pub capped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Accept,
    Reject,
}

/// Number of repetitions [`er_test`] performs.
pub fn amplification_rounds(epsilon: f64) -> u64 {
    (120.0 / (epsilon * epsilon)).ceil() as u64
}

/// Per-run query cap used by [`er_test`]: `10 * (b * log2(n) + 40/eps)`
/// with `b = 3` standing in for the expected random-BST depth constant.
pub fn single_run_query_cap(n: usize, epsilon: f64) -> u64 {
    (10.0 * (3.0 * (n as f64).log2() + 40.0 / epsilon)).floor() as u64
}

/// One tester run. `cap` bounds its query count; when the cap is reached
/// the run halts and accepts.
pub fn er_test_single(
    oracle: &QueryOracle,
    epsilon: f64,
    cap: Option<u64>,
    rng: &mut RandomSource,
) -> TesterVerdict {
    assert!(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
    let n = oracle.view_len();
    let base = oracle.view_start();
    let cap = cap.unwrap_or(u64::MAX);
    let mut used = 0u64;
    let mut seen: Vec<(usize, f64)> = Vec::new();
    let mut capped = false;

    // Query helper: enforces the cap, collects nonerased values.
    let ask = |i: usize, used: &mut u64, seen: &mut Vec<(usize, f64)>| -> bool {
        if *used >= cap {
            return false;
        }
        *used += 1;
        if let QueryAnswer::Value(v) = oracle.query(base + i) {
            seen.push((i, v));
        }
        true
    };

    let s = rng.index(n);
    if !ask(s, &mut used, &mut seen) {
        capped = true;
    }

    // Randomized binary search toward s; every pivot is queried. The
    // interval update keeps the paper's rule: on `s <= p` move to [lo, p],
    // otherwise to [p, hi]; the loop ends when the pivot hits s.
    if !capped {
        let (mut lo, mut hi) = (0usize, n - 1);
        loop {
            let p = lo + rng.index(hi - lo + 1);
            if !ask(p, &mut used, &mut seen) {
                capped = true;
                break;
            }
            if p == s {
                break;
            }
            if s <= p {
                hi = p;
            } else {
                lo = p;
            }
        }
    }

    // Window of ceil(20/eps) indices on each side of s, clipped at the
    // array ends; s itself was already queried as the final pivot.
    if !capped {
        let w = (20.0 / epsilon).ceil() as usize;
        let left = s.saturating_sub(w);
        let right = (s + w).min(n - 1);
        for i in left..=right {
            if i == s {
                continue;
            }
            if !ask(i, &mut used, &mut seen) {
                capped = true;
                break;
            }
        }
    }

    // A capped run halts and accepts; this keeps the error one-sided.
    if capped {
        return TesterVerdict {
            decision: Decision::Accept,
            queries_used: used,
            witness: None,
            capped: true,
        };
    }

    // Nonadaptive evaluation: all queries were generated above without
    // reading any answer; now look for a violation among nonerased values.
    seen.sort_by_key(|&(i, _)| i);
    let mut best: Option<(usize, f64)> = None;
    let mut witness = None;
    for &(i, v) in &seen {
        if let Some((bi, bv)) = best {
            if v < bv {
                witness = Some((base + bi, base + i));
                break;
            }
        }
        if best.map_or(true, |(_, bv)| v > bv) {
            best = Some((i, v));
        }
    }

    TesterVerdict {
        decision: if witness.is_some() {
            Decision::Reject
        } else {
            Decision::Accept
        },
        queries_used: used,
        witness,
        capped,
    }
}

/// Amplified tester: repeats the single run `ceil(120/eps^2)` times with
/// the per-run cap and rejects iff some run rejects. Query counts
/// aggregate over the executed runs.
pub fn er_test(oracle: &QueryOracle, epsilon: f64, rng: &mut RandomSource) -> TesterVerdict {
    let rounds = amplification_rounds(epsilon);
    let cap = single_run_query_cap(oracle.view_len(), epsilon);
    let mut total = 0u64;
    let mut any_capped = false;
    for _ in 0..rounds {
        let verdict = er_test_single(oracle, epsilon, Some(cap), rng);
        total += verdict.queries_used;
        any_capped |= verdict.capped;
        if verdict.decision == Decision::Reject {
            return TesterVerdict {
                decision: Decision::Reject,
                queries_used: total,
                witness: verdict.witness,
                capped: any_capped,
            };
        }
    }
    TesterVerdict {
        decision: Decision::Accept,
        queries_used: total,
        witness: None,
        capped: any_capped,
    }
}
