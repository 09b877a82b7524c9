//! Freeness predicates, interlacing-family checks and the exhaustive
//! minimality search.
//!
//! A graph is right-free for `N > 0` when no eigenvalue lies in `(0, N]`,
//! i.e. the count of eigenvalues above `N` equals the closed-form count of
//! eigenvalues above 0. It is left-free for `M < -1` when no eigenvalue lies
//! in `[M, -1)`: the count above `M` equals the closed-form count of
//! eigenvalues `>= -1` and `M` itself is not an eigenvalue. Both predicates
//! are O(r) through the spine fast path.
//!
//! The search enumerates every part sequence componentwise below a base
//! cotree (same depth, `a_i >= 1`, deepest part `>= 2`) and reports the free
//! ones other than the base. The lattice is sharded into contiguous index
//! ranges scanned by plain threads; results merge into lexicographic order,
//! so the report does not depend on the worker count.

use crate::cotree::{Cotree, NodeKind};
use crate::diagonalize::{count_triple_fast, inertia_closed_form, left_closed_form};
use crate::scalar::Scalar;
use num_bigint::{BigInt, Sign};
use serde::Serialize;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;
use thiserror::Error;

/// The eigenvalue-free interval being certified: `(0, N]` or `[M, -1)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "side", content = "bound", rename_all = "lowercase")]
pub enum FreeInterval {
    Right(Scalar),
    Left(Scalar),
}

impl FreeInterval {
    pub fn is_free(&self, c: &Cotree) -> bool {
        match self {
            FreeInterval::Right(n) => is_right_free(c, n),
            FreeInterval::Left(m) => is_left_free(c, m),
        }
    }
}

/// No eigenvalue in `(0, N]`: the count above `N` still equals the inertia
/// count above zero.
pub fn is_right_free(c: &Cotree, n: &Scalar) -> bool {
    debug_assert!(n.is_positive());
    count_triple_fast(c, n).greater == inertia_closed_form(c).greater
}

/// No eigenvalue in `[M, -1)`: the count above `M` equals the count of
/// eigenvalues `>= -1`, and `M` itself is not an eigenvalue.
pub fn is_left_free(c: &Cotree, m: &Scalar) -> bool {
    debug_assert!(*m < Scalar::from_integer(-1));
    let t = count_triple_fast(c, m);
    t.greater == left_closed_form(c) && t.equal == 0
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("extension check requires base <= ext componentwise at equal depth")]
    NotAnExtension,
    #[error("extension check requires an interval-free base")]
    BaseNotFree,
}

/// Freeness of an extension of a free base. Interlacing guarantees the
/// result is `true`; a `false` return would falsify that guarantee and is
/// reported on stderr before being returned.
pub fn check_family_extension(
    base: &Cotree,
    ext: &Cotree,
    interval: &FreeInterval,
) -> Result<bool, ExtensionError> {
    if !base.leq(ext) {
        return Err(ExtensionError::NotAnExtension);
    }
    if !interval.is_free(base) {
        return Err(ExtensionError::BaseNotFree);
    }
    let free = interval.is_free(ext);
    if !free {
        eprintln!(
            "FALSIFICATION: extension {ext} of free base {base} is not free for {interval:?}"
        );
    }
    Ok(free)
}

/// Outcome of an exhaustive scan of the sub-lattice below a base cotree.
#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub base: Cotree,
    pub interval: FreeInterval,
    pub base_free: bool,
    /// Product of all parts: the unconstrained candidate count.
    pub lattice_unconstrained: u128,
    /// Product over the first `r-1` parts times `a_r - 1`: candidates whose
    /// deepest part respects `a_r >= 2`.
    pub lattice_constrained: u128,
    pub examined: u128,
    /// Free candidates strictly below the base, lexicographically sorted.
    pub counterexamples: Vec<Cotree>,
    pub complete: bool,
    pub workers: usize,
    pub wall_seconds: f64,
}

impl SearchReport {
    /// Equality of everything a rerun must reproduce; wall time and worker
    /// count are execution details.
    pub fn same_results(&self, other: &SearchReport) -> bool {
        self.base == other.base
            && self.interval == other.interval
            && self.base_free == other.base_free
            && self.lattice_unconstrained == other.lattice_unconstrained
            && self.lattice_constrained == other.lattice_constrained
            && self.examined == other.examined
            && self.counterexamples == other.counterexamples
            && self.complete == other.complete
    }
}

/// Incremental evaluator for the lattice scan.
///
/// Every candidate is decided by the signs of its `r` spine outputs alone:
/// the batch permanents are strictly negative for a right interval (they do
/// not touch the `greater` count) and strictly positive for a left one
/// (where they cancel against the `n - r` term of the reference), so both
/// predicates reduce to "exactly `target` positive spine outputs", with the
/// left case additionally forbidding zero outputs. Spine evaluation consumes
/// parts from the deepest level towards the root, so candidates are indexed
/// with the deepest part as the most significant digit and the per-depth
/// intermediate states are reused across candidates sharing a suffix.
/// Positive and zero tallies only ever grow along the spine, which allows
/// whole prefix blocks to be skipped once a tally disqualifies every
/// completion.
struct SpineScanner {
    /// Spine outputs that must be positive: `|union| (+1 when r is odd)`.
    target: u64,
    /// Left intervals also require that no spine output be zero.
    forbid_zero: bool,
    /// `radices[d-1]` = number of admissible parts at depth `d`.
    radices: Vec<u64>,
    /// `offsets[d-1]` = smallest admissible part at depth `d` (2 at depth r).
    offsets: Vec<u64>,
    /// `strides[d-1]` = indexes sharing all digits at depths `>= d`.
    strides: Vec<u128>,
    /// `own[d-1][k]` = specialized remaining value at depth `d` for part
    /// `offsets[d-1] + k`.
    own: Vec<Vec<Frac>>,
    /// `states[r-d]` = (carried value, positives, zeros) after depth `d`.
    states: Vec<(Option<Frac>, u64, u64)>,
    digits: Vec<u64>,
}

/// Unreduced fraction. The spine recurrence composes values over a common
/// denominator that cancels exactly, so carrying raw numerator/denominator
/// pairs avoids every gcd normalization; bit sizes grow additively with the
/// depth, which is what keeps the scan per-candidate cost flat.
#[derive(Clone)]
struct Frac {
    num: BigInt,
    den: BigInt,
}

fn int_sign(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Plus => 1,
        Sign::NoSign => 0,
        Sign::Minus => -1,
    }
}

impl Frac {
    fn from_scalar(s: &Scalar) -> Frac {
        Frac {
            num: s.numer().clone(),
            den: s.denom().clone(),
        }
    }

    fn one() -> Frac {
        Frac {
            num: BigInt::from(1),
            den: BigInt::from(1),
        }
    }

    fn zero() -> Frac {
        Frac {
            num: BigInt::from(0),
            den: BigInt::from(1),
        }
    }

    fn sign(&self) -> i8 {
        int_sign(&self.num) * int_sign(&self.den)
    }

    fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn is_zero(&self) -> bool {
        use num_traits::Zero as _;
        self.num.is_zero()
    }
}

/// One spine reduction on raw fractions: tallies the permanent signs and
/// returns the carried value. Mirrors the pairwise subcases exactly.
fn spine_pair_raw(
    kind: NodeKind,
    alpha: &Frac,
    beta: &Frac,
    pos: &mut u64,
    zero: &mut u64,
) -> Option<Frac> {
    use num_traits::Zero as _;
    let cross = &alpha.num * &beta.den + &beta.num * &alpha.den;
    let common = &alpha.den * &beta.den;
    match kind {
        NodeKind::Join => {
            let perm_num = cross - (&common << 1);
            if !perm_num.is_zero() {
                tally_sign(pos, zero, int_sign(&perm_num) * int_sign(&common));
                let rem_num = &alpha.num * &beta.num - common;
                Some(Frac {
                    num: rem_num,
                    den: perm_num,
                })
            } else if beta.is_one() {
                *zero += 1;
                Some(Frac::one())
            } else {
                // Permanents 1 and -(1-beta)^2, the latter strictly negative.
                *pos += 1;
                None
            }
        }
        NodeKind::Union => {
            if !cross.is_zero() {
                tally_sign(pos, zero, int_sign(&cross) * int_sign(&common));
                Some(Frac {
                    num: &alpha.num * &beta.num,
                    den: cross,
                })
            } else if beta.is_zero() {
                *zero += 1;
                Some(Frac::zero())
            } else {
                // Permanents beta and -beta: exactly one positive.
                *pos += 1;
                None
            }
        }
    }
}

/// Specialized remaining value of a node with `m` identical leaves at `x`.
fn batch_remaining(kind: NodeKind, m: u64, x: &Scalar) -> Scalar {
    match kind {
        NodeKind::Join => {
            if *x == Scalar::one() {
                Scalar::one()
            } else {
                (x + &Scalar::from(m - 1)) / Scalar::from(m)
            }
        }
        NodeKind::Union => {
            if x.is_zero() {
                Scalar::zero()
            } else {
                x / &Scalar::from(m)
            }
        }
    }
}

fn tally_sign(pos: &mut u64, zero: &mut u64, sign: i8) {
    match sign {
        1 => *pos += 1,
        0 => *zero += 1,
        _ => {}
    }
}

impl SpineScanner {
    fn new(base: &[u64], interval: &FreeInterval) -> Self {
        let r = base.len();
        let (shift, forbid_zero) = match interval {
            FreeInterval::Right(n) => (-n, false),
            FreeInterval::Left(m) => (-m, true),
        };
        let target = r as u64 / 2 + (r as u64) % 2;
        let mut radices: Vec<u64> = base.to_vec();
        radices[r - 1] = base[r - 1] - 1;
        let mut offsets = vec![1u64; r];
        offsets[r - 1] = 2;
        let mut strides = vec![1u128; r];
        for d in 1..r {
            strides[d] = strides[d - 1].saturating_mul(radices[d - 1] as u128);
        }
        let own = (1..=r)
            .map(|d| {
                (0..radices[d - 1])
                    .map(|k| {
                        Frac::from_scalar(&batch_remaining(
                            NodeKind::at_depth(d),
                            offsets[d - 1] + k,
                            &shift,
                        ))
                    })
                    .collect()
            })
            .collect();
        SpineScanner {
            target,
            forbid_zero,
            radices,
            offsets,
            strides,
            own,
            states: vec![(None, 0, 0); r],
            digits: vec![0; r],
        }
    }

    fn total(&self) -> u128 {
        self.strides[self.radices.len() - 1].saturating_mul(*self.radices.last().unwrap() as u128)
    }

    fn candidate_parts(&self) -> Vec<u64> {
        self.digits
            .iter()
            .zip(&self.offsets)
            .map(|(digit, offset)| digit + offset)
            .collect()
    }

    /// Recomputes the state after depth `d` (2 <= d <= r) from the state
    /// after depth `d + 1`. Returns false when no completion of the current
    /// prefix can satisfy the predicate: the tallies only grow towards the
    /// root, so an overshoot, a forbidden zero, or an unreachable target is
    /// final for the whole block of shallower digits.
    fn step_is_alive(&mut self, d: usize) -> bool {
        let r = self.radices.len();
        let own = &self.own[d - 1][self.digits[d - 1] as usize];
        let state = if d == r {
            (Some(own.clone()), 0, 0)
        } else {
            let (carried, mut pos, mut zero) = self.states[r - d - 1].clone();
            match carried {
                None => (Some(own.clone()), pos, zero),
                Some(alpha) => {
                    let rem =
                        spine_pair_raw(NodeKind::at_depth(d), &alpha, own, &mut pos, &mut zero);
                    (rem, pos, zero)
                }
            }
        };
        let (_, pos, zero) = &state;
        let remaining_outputs = 2 * (d as u64 - 1) + 1;
        let alive = *pos <= self.target
            && !(self.forbid_zero && *zero > 0)
            && *pos + remaining_outputs >= self.target;
        self.states[r - d] = state;
        alive
    }

    /// Decides the fully specified candidate from the cached state after
    /// depth 2, finishing the root join step by signs alone — the carried
    /// fraction is never materialized here.
    fn leaf_is_free(&self) -> bool {
        use num_traits::Zero as _;
        let r = self.radices.len();
        let own = &self.own[0][self.digits[0] as usize];
        let mut pos = 0;
        let mut zero = 0;
        let carried = if r == 1 {
            None
        } else {
            let (carried, p, z) = &self.states[r - 2];
            pos = *p;
            zero = *z;
            carried.as_ref()
        };
        match carried {
            None => tally_sign(&mut pos, &mut zero, own.sign()),
            Some(alpha) => {
                let common = &alpha.den * &own.den;
                let gap_num =
                    &alpha.num * &own.den + &own.num * &alpha.den - (&common << 1);
                if !gap_num.is_zero() {
                    // Join branch a: permanent alpha+beta-2, remaining
                    // (alpha*beta - 1)/(alpha+beta-2).
                    let gap_sign = int_sign(&gap_num) * int_sign(&common);
                    tally_sign(&mut pos, &mut zero, gap_sign);
                    let rem_num_sign = int_sign(&(&alpha.num * &own.num - common));
                    tally_sign(&mut pos, &mut zero, rem_num_sign * int_sign(&gap_num));
                } else if own.is_one() {
                    // Join branch b: permanent 0, remaining 1.
                    zero += 1;
                    pos += 1;
                } else {
                    // Join branch c: permanents 1 and -(1-beta)^2.
                    pos += 1;
                }
            }
        }
        pos == self.target && !(self.forbid_zero && zero > 0)
    }

    /// Positions the scanner at `index`, reusing the states above the
    /// deepest digit that changed. Returns the depth whose whole digit
    /// block is disqualified, if any.
    fn seek(&mut self, index: u128, force_full: bool) -> Option<usize> {
        let r = self.radices.len();
        let mut rest = index;
        let mut deepest_changed = if force_full { r } else { 0 };
        for d in 1..=r {
            let digit = (rest % self.radices[d - 1] as u128) as u64;
            rest /= self.radices[d - 1] as u128;
            if self.digits[d - 1] != digit {
                deepest_changed = deepest_changed.max(d);
                self.digits[d - 1] = digit;
            }
        }
        for d in (2..=deepest_changed.min(r)).rev() {
            if !self.step_is_alive(d) {
                return Some(d);
            }
        }
        None
    }
}

pub fn minimality_search(base: &Cotree, interval: &FreeInterval, workers: usize) -> SearchReport {
    minimality_search_with(base, interval, workers, None, None)
}

/// Full search with optional cooperative cancellation and a progress hook
/// called with (candidates examined so far, total).
pub fn minimality_search_with(
    base: &Cotree,
    interval: &FreeInterval,
    workers: usize,
    cancel: Option<&AtomicBool>,
    progress: Option<&(dyn Fn(u128, u128) + Sync)>,
) -> SearchReport {
    const PROGRESS_BATCH: u64 = 1 << 14;
    const CANCEL_MASK: u64 = 0xFFF;

    let started = Instant::now();
    let workers = workers.max(1);
    let parts = base.parts();

    let lattice_unconstrained = parts
        .iter()
        .fold(1u128, |acc, &a| acc.saturating_mul(a as u128));
    let total = SpineScanner::new(parts, interval).total();
    let base_free = interval.is_free(base);

    let done_counter = AtomicU64::new(0);
    // Workers pull aligned index blocks from a shared cursor; pruning makes
    // per-index cost uneven, so fixed per-worker ranges would not balance.
    let cursor = std::sync::Mutex::new(0u128);
    const DISPENSE_BLOCK: u128 = 1 << 14;

    let results: Vec<(u128, Vec<Vec<u64>>, bool)> = std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(workers);
        for _ in 0..workers {
            let done_counter = &done_counter;
            let cursor = &cursor;
            let base_parts = parts;
            handles.push(scope.spawn(move || {
                let mut scanner = SpineScanner::new(base_parts, interval);
                let mut examined: u128 = 0;
                let mut hits: Vec<Vec<u64>> = Vec::new();
                let mut since_flush: u64 = 0;
                let mut completed = true;
                'blocks: loop {
                    let start = {
                        let mut cur = cursor.lock().expect("cursor lock");
                        if *cur >= total {
                            break 'blocks;
                        }
                        let start = *cur;
                        *cur = (start + DISPENSE_BLOCK).min(total);
                        start
                    };
                    let end = (start + DISPENSE_BLOCK).min(total);
                    let mut index = start;
                    let mut force_full = true;
                    while index < end {
                        if since_flush & CANCEL_MASK == 0 {
                            if let Some(flag) = cancel {
                                if flag.load(Ordering::Relaxed) {
                                    completed = false;
                                    break 'blocks;
                                }
                            }
                        }
                        if let Some(dead_depth) = scanner.seek(index, force_full) {
                            // The whole block sharing digits at depths >= the
                            // dead one is decided; credit and skip it.
                            let stride = scanner.strides[dead_depth - 1];
                            let block_left = stride - index % stride;
                            let credited = block_left.min(end - index);
                            examined += credited;
                            since_flush = since_flush
                                .saturating_add(credited.min(u64::MAX as u128) as u64);
                            index += block_left;
                            force_full = true;
                        } else {
                            force_full = false;
                            examined += 1;
                            since_flush += 1;
                            if scanner.leaf_is_free() {
                                let candidate = scanner.candidate_parts();
                                if candidate != base_parts {
                                    hits.push(candidate);
                                }
                            }
                            index += 1;
                        }
                        if since_flush >= PROGRESS_BATCH {
                            let done = done_counter.fetch_add(since_flush, Ordering::Relaxed)
                                + since_flush;
                            since_flush = 0;
                            if let Some(report) = progress {
                                report(done as u128, total);
                            }
                        }
                    }
                }
                done_counter.fetch_add(since_flush, Ordering::Relaxed);
                (examined, hits, completed)
            }));
        }
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker"))
            .collect()
    });

    let mut examined: u128 = 0;
    let mut complete = true;
    let mut all_hits: Vec<Vec<u64>> = Vec::new();
    for (count, hits, completed) in results {
        examined += count;
        complete &= completed;
        all_hits.extend(hits);
    }
    all_hits.sort();
    let counterexamples = all_hits
        .into_iter()
        .map(|parts| Cotree::new(parts).expect("lattice candidate is a valid cotree"))
        .collect();

    SearchReport {
        base: base.clone(),
        interval: interval.clone(),
        base_free,
        lattice_unconstrained,
        lattice_constrained: total,
        examined,
        counterexamples,
        complete,
        workers,
        wall_seconds: started.elapsed().as_secs_f64(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{rfi, ChoicePolicy};

    fn ct(parts: &[u64]) -> Cotree {
        Cotree::new(parts.to_vec()).unwrap()
    }

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    /// Plain nested enumeration deciding every candidate with the public
    /// predicates; the incremental scanner must find exactly these.
    fn naive_counterexamples(base: &Cotree, interval: &FreeInterval) -> Vec<Cotree> {
        let parts = base.parts();
        let r = parts.len();
        let mut candidate: Vec<u64> = vec![1; r];
        candidate[r - 1] = 2;
        let mut out = Vec::new();
        loop {
            let c = Cotree::new(candidate.clone()).unwrap();
            if c != *base && interval.is_free(&c) {
                out.push(c);
            }
            let mut d = 0;
            loop {
                if d == r {
                    out.sort_by(|a, b| a.parts().cmp(b.parts()));
                    return out;
                }
                candidate[d] += 1;
                if candidate[d] <= parts[d] {
                    break;
                }
                candidate[d] = if d == r - 1 { 2 } else { 1 };
                d += 1;
            }
        }
    }

    #[test]
    fn scanner_matches_naive_enumeration() {
        let cases = [
            (vec![3u64, 4, 2, 5], FreeInterval::Right(s("1.7"))),
            (vec![3, 4, 2, 5], FreeInterval::Left(s("-2.6"))),
            (vec![2, 3, 4], FreeInterval::Right(s("0.2"))),
            (vec![5, 2, 3], FreeInterval::Right(s("2.3"))),
            (vec![4, 3], FreeInterval::Left(s("-1.31"))),
            (vec![6], FreeInterval::Right(s("0.9"))),
            (vec![2, 1, 3, 1, 4], FreeInterval::Left(s("-4.1"))),
        ];
        for (parts, interval) in cases {
            let base = ct(&parts);
            let expected = naive_counterexamples(&base, &interval);
            let report = minimality_search(&base, &interval, 3);
            assert_eq!(
                report.counterexamples, expected,
                "base {base}, interval {interval:?}"
            );
            assert_eq!(report.examined, report.lattice_constrained, "{base}");
        }
    }

    #[test]
    fn right_freeness_examples() {
        let c = ct(&[6, 44, 6, 36, 5, 2]);
        assert!(is_right_free(&c, &s("4.8")));
        assert!(!is_right_free(&c, &s("4.81")));
        for parts in [vec![2u64], vec![2, 3, 4], vec![1, 1, 2], vec![7, 1, 3]] {
            assert!(is_right_free(&Cotree::new(parts).unwrap(), &s("0.2")));
        }
    }

    #[test]
    fn left_freeness_examples() {
        let c = ct(&[11, 4, 46, 3, 35, 2, 2]);
        assert!(is_left_free(&c, &s("-3.3")));
        assert!(!is_left_free(&c, &s("-3.31")));
        assert!(is_left_free(&ct(&[2]), &s("-1.2")));
    }

    #[test]
    fn extension_check_examples() {
        let base = ct(&[6, 44, 6, 36, 5, 2]);
        let interval = FreeInterval::Right(s("4.8"));
        let ext = ct(&[7, 44, 6, 36, 6, 2]);
        assert_eq!(check_family_extension(&base, &ext, &interval), Ok(true));
        assert_eq!(check_family_extension(&base, &base, &interval), Ok(true));
        assert_eq!(
            check_family_extension(&base, &ct(&[5, 44, 6, 36, 5, 2]), &interval),
            Err(ExtensionError::NotAnExtension)
        );
        assert_eq!(
            check_family_extension(&ct(&[2, 2]), &ct(&[2, 2]), &FreeInterval::Right(s("10"))),
            Err(ExtensionError::BaseNotFree)
        );
    }

    #[test]
    fn search_reports_vacuous_base() {
        // Base not free; the 2 candidates (1,2) and (2,2) are scanned anyway.
        let report = minimality_search(&ct(&[2, 2]), &FreeInterval::Right(s("10")), 1);
        assert!(!report.base_free);
        assert_eq!(report.lattice_unconstrained, 4);
        assert_eq!(report.lattice_constrained, 2);
        assert_eq!(report.examined, 2);
        assert!(report.counterexamples.is_empty());
        assert!(report.complete);
    }

    #[test]
    fn search_when_every_candidate_is_free() {
        // (0, 0.2] is inside the always-free band, so everything below the
        // base is a counterexample except the base itself.
        let base = ct(&[2, 3, 4]);
        let report = minimality_search(&base, &FreeInterval::Right(s("0.2")), 1);
        assert!(report.base_free);
        assert_eq!(report.lattice_constrained, 2 * 3 * 3);
        assert_eq!(report.examined, 18);
        assert_eq!(report.counterexamples.len(), 17);
        for cand in &report.counterexamples {
            assert!(cand.leq(&base));
            assert_ne!(cand, &base);
        }
        let mut sorted = report.counterexamples.clone();
        sorted.sort_by(|a, b| a.parts().cmp(b.parts()));
        assert_eq!(sorted, report.counterexamples, "lexicographic order");
    }

    #[test]
    fn search_is_deterministic_across_worker_counts() {
        let base = ct(&[2, 3, 4]);
        let interval = FreeInterval::Right(s("0.2"));
        let one = minimality_search(&base, &interval, 1);
        let many = minimality_search(&base, &interval, 4);
        assert!(one.same_results(&many));
        assert_eq!(many.workers, 4);
    }

    #[test]
    fn search_finds_the_initial_graph_minimal_at_the_critical_bound() {
        let n = s("0.20710678118654752");
        let (base, _) = rfi(&n, 7, &ChoicePolicy::Initial).unwrap();
        let report = minimality_search(&base, &FreeInterval::Right(n), 2);
        assert_eq!(report.lattice_constrained, 1);
        assert_eq!(report.examined, 1);
        assert!(report.counterexamples.is_empty());
    }

    #[test]
    fn search_cancellation_flags_incomplete() {
        let flag = AtomicBool::new(true);
        let report = minimality_search_with(
            &ct(&[4, 10, 4, 5, 3]),
            &FreeInterval::Right(s("1.5")),
            2,
            Some(&flag),
            None,
        );
        assert!(!report.complete);
        assert!(report.examined < report.lattice_constrained);
    }

    #[test]
    fn left_search_small() {
        use crate::generate::lfi;
        let (base, _) = lfi(&s("-1.5"), 3, &ChoicePolicy::Initial).unwrap();
        let interval = FreeInterval::Left(s("-1.5"));
        let report = minimality_search(&base, &interval, 2);
        assert!(report.base_free);
        assert!(report.complete);
        assert_eq!(
            report.examined,
            report.lattice_constrained,
            "full lattice scanned"
        );
        for cand in &report.counterexamples {
            assert!(is_left_free(cand, &s("-1.5")));
        }
    }

    #[test]
    fn report_serializes() {
        let report = minimality_search(&ct(&[2, 2]), &FreeInterval::Right(s("10")), 1);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["base"]["parts"], serde_json::json!([2, 2]));
        assert_eq!(json["interval"]["side"], "right");
        assert_eq!(json["examined"], 2);
    }
}
