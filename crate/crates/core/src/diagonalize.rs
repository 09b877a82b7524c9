//! Congruence diagonalization of `A(G) + xI` evaluated directly on the
//! cotree, in O(n) exact rational operations.
//!
//! The algorithm runs in two phases. First every node's identical-valued
//! leaves are batch-processed (specialization): a node with `m` leaves of
//! value `y` emits `m-1` permanent diagonal entries in closed form and one
//! remaining value. Second, the remaining values are folded along the path
//! from the deepest node to the root (the spine): at each node the value
//! carried from below pairs with the node's own remaining value, emitting a
//! permanent entry and a new carried value, until a single final entry is
//! left. Processing order is fixed — deepest node first, identical-valued
//! leaves first within a node — so traces are reproducible.
//!
//! By Sylvester's law, the sign counts of the output diagonal equal the
//! eigenvalue counts of `G` relative to `a = -x`: running with `x = -a`
//! yields the triple (#eigenvalues > a, multiplicity of a, #eigenvalues < a).

use crate::cotree::{Cotree, NodeKind};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Eigenvalue counts relative to a reference value: greater / equal / less.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTriple {
    pub greater: u64,
    pub equal: u64,
    pub less: u64,
}

impl CountTriple {
    pub fn total(&self) -> u64 {
        self.greater + self.equal + self.less
    }
}

impl fmt::Display for CountTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.greater, self.equal, self.less)
    }
}

/// Which branch of the pairwise reduction fired. Join nodes use the 1x
/// branches, union nodes the 2x branches; `b`/`c` are the degenerate sums
/// alpha + beta = 2 (join) and alpha + beta = 0 (union).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subcase {
    #[serde(rename = "1a")]
    JoinA,
    #[serde(rename = "1b")]
    JoinB,
    #[serde(rename = "1c")]
    JoinC,
    #[serde(rename = "2a")]
    UnionA,
    #[serde(rename = "2b")]
    UnionB,
    #[serde(rename = "2c")]
    UnionC,
}

impl fmt::Display for Subcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            Subcase::JoinA => "1a",
            Subcase::JoinB => "1b",
            Subcase::JoinC => "1c",
            Subcase::UnionA => "2a",
            Subcase::UnionB => "2b",
            Subcase::UnionC => "2c",
        };
        f.write_str(tag)
    }
}

/// One pairwise reduction: the permanent values fixed at this step and the
/// value that remains in play (absent when the degenerate `c` branches
/// retire both leaves).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub depth: usize,
    pub subcase: Subcase,
    pub permanent: Vec<Scalar>,
    pub remaining: Option<Scalar>,
}

/// Serializes trace steps as JSON lines, one step per line.
pub fn trace_to_json_lines(steps: &[TraceStep]) -> String {
    steps
        .iter()
        .map(|s| serde_json::to_string(s).expect("trace step serializes"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Full output of a diagonalization run.
#[derive(Clone, Debug)]
pub struct DiagOutcome {
    pub diagonal: Vec<Scalar>,
    pub positive: u64,
    pub zero: u64,
    pub negative: u64,
    pub trace: Option<Vec<TraceStep>>,
}

impl DiagOutcome {
    fn from_diagonal(diagonal: Vec<Scalar>, trace: Option<Vec<TraceStep>>) -> Self {
        let mut positive = 0;
        let mut zero = 0;
        let mut negative = 0;
        for d in &diagonal {
            match d.signum() {
                1 => positive += 1,
                0 => zero += 1,
                _ => negative += 1,
            }
        }
        DiagOutcome {
            diagonal,
            positive,
            zero,
            negative,
            trace,
        }
    }

    /// Sign counts read as eigenvalue counts relative to `a = -x`.
    pub fn counts(&self) -> CountTriple {
        CountTriple {
            greater: self.positive,
            equal: self.zero,
            less: self.negative,
        }
    }
}

/// Per-depth result of batch-processing identical leaves: `permanents[d-1]`
/// and `remaining[d-1]` belong to the node at depth `d`.
#[derive(Clone, Debug)]
pub struct SpecializedLeaves {
    pub permanents: Vec<Vec<Scalar>>,
    pub remaining: Vec<Scalar>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ThetaError {
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
    #[error("graph has no eigenvalue smaller than -1")]
    NoEigenvalueBelowMinusOne,
}

/// Batch-processes `m` leaves of identical value `y` under one node,
/// emitting `m-1` permanents and the remaining value. Join nodes with
/// `y = 1` and union nodes with `y = 0` take the degenerate `b` branch
/// (all permanents zero, remaining value unchanged); everything else is
/// `m-1` iterations of the `a` branch in closed form.
fn batch_node(
    kind: NodeKind,
    depth: usize,
    m: u64,
    y: &Scalar,
    mut sink: impl FnMut(Scalar),
    mut trace: Option<&mut Vec<TraceStep>>,
) -> Scalar {
    let one = Scalar::one();
    match kind {
        NodeKind::Join => {
            if *y == one {
                for _ in 1..m {
                    sink(Scalar::zero());
                    if let Some(t) = trace.as_deref_mut() {
                        t.push(TraceStep {
                            depth,
                            subcase: Subcase::JoinB,
                            permanent: vec![Scalar::zero()],
                            remaining: Some(one.clone()),
                        });
                    }
                }
                return one;
            }
            let y_minus_1 = y - &one;
            for j in 1..m {
                let perm = Scalar::from_ratio(j as i64 + 1, j as i64) * &y_minus_1;
                if let Some(t) = trace.as_deref_mut() {
                    let rem = (y + Scalar::from(j)) / Scalar::from(j + 1);
                    t.push(TraceStep {
                        depth,
                        subcase: Subcase::JoinA,
                        permanent: vec![perm.clone()],
                        remaining: Some(rem),
                    });
                }
                sink(perm);
            }
            (y + Scalar::from(m - 1)) / Scalar::from(m)
        }
        NodeKind::Union => {
            if y.is_zero() {
                for _ in 1..m {
                    sink(Scalar::zero());
                    if let Some(t) = trace.as_deref_mut() {
                        t.push(TraceStep {
                            depth,
                            subcase: Subcase::UnionB,
                            permanent: vec![Scalar::zero()],
                            remaining: Some(Scalar::zero()),
                        });
                    }
                }
                return Scalar::zero();
            }
            for j in 1..m {
                let perm = Scalar::from_ratio(j as i64 + 1, j as i64) * y;
                if let Some(t) = trace.as_deref_mut() {
                    let rem = y / Scalar::from(j + 1);
                    t.push(TraceStep {
                        depth,
                        subcase: Subcase::UnionA,
                        permanent: vec![perm.clone()],
                        remaining: Some(rem),
                    });
                }
                sink(perm);
            }
            y / Scalar::from(m)
        }
    }
}

/// One pairwise reduction of the carried value `alpha` against the node's
/// own value `beta`. Returns the subcase taken, the permanents emitted and
/// the value that stays in play.
pub(crate) fn pair_step(
    kind: NodeKind,
    alpha: Scalar,
    beta: Scalar,
) -> (Subcase, Vec<Scalar>, Option<Scalar>) {
    match kind {
        NodeKind::Join => {
            let sum = &alpha + &beta;
            let two = Scalar::from_integer(2);
            if sum != two {
                let denom = &sum - &two;
                let rem = (&(&alpha * &beta) - &Scalar::one()) / &denom;
                (Subcase::JoinA, vec![denom], Some(rem))
            } else if beta == Scalar::one() {
                (Subcase::JoinB, vec![Scalar::zero()], Some(Scalar::one()))
            } else {
                let gap = &Scalar::one() - &beta;
                let neg_sq = -(&gap * &gap);
                (Subcase::JoinC, vec![Scalar::one(), neg_sq], None)
            }
        }
        NodeKind::Union => {
            let sum = &alpha + &beta;
            if !sum.is_zero() {
                let rem = (&alpha * &beta) / &sum;
                (Subcase::UnionA, vec![sum], Some(rem))
            } else if beta.is_zero() {
                (Subcase::UnionB, vec![Scalar::zero()], Some(Scalar::zero()))
            } else {
                let neg = -&beta;
                (Subcase::UnionC, vec![beta, neg], None)
            }
        }
    }
}

/// Phase one alone: batch-processes every node's leaves at initial value
/// `x`, yielding per-depth permanents and remaining values. Degenerate
/// initial values (1 at joins, 0 at unions) are handled by the pairwise
/// `b` branches, so this is total.
pub fn specialize_leaves(c: &Cotree, x: &Scalar) -> SpecializedLeaves {
    let r = c.depth();
    let mut permanents = vec![Vec::new(); r];
    let mut remaining = Vec::with_capacity(r);
    for depth in 1..=r {
        let m = c.parts()[depth - 1];
        let mut bucket = Vec::with_capacity(m.saturating_sub(1) as usize);
        let rem = batch_node(c.kind_at(depth), depth, m, x, |p| bucket.push(p), None);
        permanents[depth - 1] = bucket;
        remaining.push(rem);
    }
    SpecializedLeaves {
        permanents,
        remaining,
    }
}

fn diagonalize_impl(c: &Cotree, x: &Scalar, want_trace: bool) -> DiagOutcome {
    let r = c.depth();
    let n = c.vertex_count() as usize;
    let mut diagonal = Vec::with_capacity(n);
    let mut trace = if want_trace { Some(Vec::new()) } else { None };

    // Specialization, deepest node first.
    let mut remaining = vec![Scalar::zero(); r];
    for depth in (1..=r).rev() {
        let m = c.parts()[depth - 1];
        remaining[depth - 1] = batch_node(
            c.kind_at(depth),
            depth,
            m,
            x,
            |p| diagonal.push(p),
            trace.as_mut(),
        );
    }

    // Spine: relocate the carried value to the next shallower node.
    let mut iter = remaining.into_iter().rev();
    let mut carried = iter.next();
    let mut depth = r;
    for own in iter {
        depth -= 1;
        carried = match carried {
            None => Some(own),
            Some(alpha) => {
                let (subcase, perms, rem) = pair_step(c.kind_at(depth), alpha, own);
                if let Some(t) = trace.as_mut() {
                    t.push(TraceStep {
                        depth,
                        subcase,
                        permanent: perms.clone(),
                        remaining: rem.clone(),
                    });
                }
                diagonal.extend(perms);
                rem
            }
        };
    }
    if let Some(last) = carried {
        diagonal.push(last);
    }
    debug_assert_eq!(diagonal.len(), n);
    DiagOutcome::from_diagonal(diagonal, trace)
}

/// Diagonal matrix congruent to `A(G) + xI`, as the multiset of diagonal
/// values with sign counts.
pub fn diagonalize_full(c: &Cotree, x: &Scalar) -> DiagOutcome {
    diagonalize_impl(c, x, false)
}

/// Same as [`diagonalize_full`] but records the per-step trace.
pub fn diagonalize_traced(c: &Cotree, x: &Scalar) -> DiagOutcome {
    diagonalize_impl(c, x, true)
}

/// Eigenvalue counts of `G` relative to `a`, by diagonalizing `A - aI` and
/// counting diagonal signs.
pub fn count_triple(c: &Cotree, a: &Scalar) -> CountTriple {
    diagonalize_full(c, &-a).counts()
}

/// Spine-only evaluation of [`count_triple`]: the batch permanents of every
/// node have analytically known signs (the sign of `x - 1` at joins and of
/// `x` at unions), so only the `r` spine values are materialized. Identical
/// to the full run by construction; the equivalence is property-tested.
pub fn count_triple_fast(c: &Cotree, a: &Scalar) -> CountTriple {
    count_fast_on_parts(c.parts(), a)
}

/// Raw-parts variant of [`count_triple_fast`] for enumeration loops that
/// never materialize a [`Cotree`].
pub(crate) fn count_fast_on_parts(parts: &[u64], a: &Scalar) -> CountTriple {
    let x = -a;
    let r = parts.len();
    let mut positive = 0u64;
    let mut zero = 0u64;
    let mut negative = 0u64;
    let mut tally = |sig: i8, weight: u64| match sig {
        1 => positive += weight,
        0 => zero += weight,
        _ => negative += weight,
    };

    let mut remaining = Vec::with_capacity(r);
    for depth in 1..=r {
        let m = parts[depth - 1];
        match NodeKind::at_depth(depth) {
            NodeKind::Join => {
                if x == Scalar::one() {
                    tally(0, m - 1);
                    remaining.push(Scalar::one());
                } else {
                    tally((&x - &Scalar::one()).signum(), m - 1);
                    remaining.push((&x + Scalar::from(m - 1)) / Scalar::from(m));
                }
            }
            NodeKind::Union => {
                if x.is_zero() {
                    tally(0, m - 1);
                    remaining.push(Scalar::zero());
                } else {
                    tally(x.signum(), m - 1);
                    remaining.push(&x / Scalar::from(m));
                }
            }
        }
    }

    let mut iter = remaining.into_iter().rev();
    let mut carried = iter.next();
    let mut depth = r;
    for own in iter {
        depth -= 1;
        carried = match carried {
            None => Some(own),
            Some(alpha) => {
                let (_, perms, rem) = pair_step(NodeKind::at_depth(depth), alpha, own);
                for p in &perms {
                    tally(p.signum(), 1);
                }
                rem
            }
        };
    }
    if let Some(last) = carried {
        tally(last.signum(), 1);
    }

    CountTriple {
        greater: positive,
        equal: zero,
        less: negative,
    }
}

/// Inertia (counts relative to 0) in closed form from the part sequence.
pub fn inertia_closed_form(c: &Cotree) -> CountTriple {
    let odd_sum: u64 = c
        .parts()
        .iter()
        .enumerate()
        .filter(|(i, _)| (i + 1) % 2 == 1)
        .map(|(_, &a)| a)
        .sum();
    let even_excess: u64 = c
        .parts()
        .iter()
        .enumerate()
        .filter(|(i, _)| (i + 1) % 2 == 0)
        .map(|(_, &a)| a - 1)
        .sum();
    let unions = c.union_count();
    if c.depth() % 2 == 1 {
        CountTriple {
            greater: unions + 1,
            equal: even_excess,
            less: odd_sum - 1,
        }
    } else {
        CountTriple {
            greater: unions,
            equal: even_excess,
            less: odd_sum,
        }
    }
}

/// Multiplicity of the eigenvalue -1: one less than the leaf count of every
/// join node, summed.
pub fn mult_minus_one(c: &Cotree) -> u64 {
    c.parts()
        .iter()
        .enumerate()
        .filter(|(i, _)| (i + 1) % 2 == 1)
        .map(|(_, &a)| a - 1)
        .sum()
}

/// Number of eigenvalues `>= -1`, i.e. the multiplicity of -1 plus the
/// inertia counts at and above zero: `(n-r) + |union| (+1 when r is odd)`.
pub fn left_closed_form(c: &Cotree) -> u64 {
    let n = c.vertex_count();
    let r = c.depth() as u64;
    (n - r) + c.union_count() + if c.depth() % 2 == 1 { 1 } else { 0 }
}

fn bisection_cap(n: u64, tol: &Scalar) -> usize {
    let mut cap = 2usize;
    let mut width = Scalar::from(n) / tol.clone();
    let one = Scalar::one();
    let two = Scalar::from_integer(2);
    while width > one {
        width = width / two.clone();
        cap += 1;
    }
    cap
}

/// Smallest eigenvalue greater than 0, within `tol`.
///
/// Bisects `a` over `(0, n]` on the count predicate "no eigenvalue lies in
/// `(0, a]`". Midpoints are dyadic; when a midpoint is itself the smallest
/// positive eigenvalue it is returned exactly.
pub fn bisect_theta_plus(c: &Cotree, tol: &Scalar) -> Result<Scalar, ThetaError> {
    if !tol.is_positive() {
        return Err(ThetaError::NonPositiveTolerance);
    }
    let pos0 = inertia_closed_form(c).greater;
    debug_assert!(pos0 >= 1, "connected threshold has a positive eigenvalue");
    let n = c.vertex_count();
    let mut lo = Scalar::zero();
    let mut hi = Scalar::from(n);
    let two = Scalar::from_integer(2);
    for _ in 0..bisection_cap(n, tol) {
        if &(&hi - &lo) <= tol {
            break;
        }
        let mid = (&lo + &hi) / &two;
        let t = count_triple_fast(c, &mid);
        if t.equal > 0 && t.greater + t.equal == pos0 {
            return Ok(mid);
        }
        if t.greater == pos0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Largest eigenvalue smaller than -1, within `tol`.
///
/// Errors when no such eigenvalue exists (e.g. the complete graph on two
/// vertices, whose spectrum is {1, -1}).
pub fn bisect_theta_minus(c: &Cotree, tol: &Scalar) -> Result<Scalar, ThetaError> {
    if !tol.is_positive() {
        return Err(ThetaError::NonPositiveTolerance);
    }
    let below = count_triple_fast(c, &Scalar::from_integer(-1)).less;
    if below == 0 {
        return Err(ThetaError::NoEigenvalueBelowMinusOne);
    }
    let n = c.vertex_count();
    let mut lo = -Scalar::from(n);
    let mut hi = Scalar::from_integer(-1);
    let two = Scalar::from_integer(2);
    for _ in 0..bisection_cap(n, tol) {
        if &(&hi - &lo) <= tol {
            break;
        }
        let mid = (&lo + &hi) / &two;
        let t = count_triple_fast(c, &mid);
        if t.equal > 0 && t.less + t.equal == below {
            return Ok(mid);
        }
        if t.less == below {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(lo)
}
