//! Free-interval generators.
//!
//! Both generators pick leaf counts level by level, from the deepest node to
//! the root, so that every value the congruence recurrence produces lands on
//! a controlled side of zero (right case) or of the unit band (left case).
//! The right generator yields a cotree whose graph has no eigenvalue in
//! `(0, N]`; the left generator avoids `[M, -1)`. Choosing the smallest
//! admissible count at every level — one more than the floor of the strict
//! bound — gives the initial cotree; an explicit policy may pick anything
//! strictly above the bounds.

use crate::cotree::{Cotree, NodeKind};
use crate::scalar::Scalar;
use serde::Serialize;
use thiserror::Error;

/// Per-level leaf-count selection rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChoicePolicy {
    /// Smallest admissible integer at every level: `1 + floor(bound)`.
    Initial,
    /// Explicit counts in cotree order `(a_1, ..., a_r)`; each must strictly
    /// exceed the bound computed at its level.
    Explicit(Vec<u64>),
}

/// One generator level: the strict lower bound at that depth, the count
/// chosen, the remaining value carried to the next level, and the permanent
/// diagonal value fixed here (absent at the deepest level).
#[derive(Clone, Debug, Serialize)]
pub struct TraceLevel {
    pub depth: usize,
    pub kind: NodeKind,
    pub bound: Scalar,
    pub chosen: u64,
    pub remaining: Scalar,
    pub permanent: Option<Scalar>,
}

/// Per-level record of a generator run, deepest level first.
#[derive(Clone, Debug, Serialize)]
pub struct GenTrace {
    pub levels: Vec<TraceLevel>,
}

impl GenTrace {
    /// Sign ladder of the right generator: remaining values are positive
    /// after join levels and negative after union levels; permanents are
    /// negative at joins, positive at unions.
    pub fn right_ladder_ok(&self) -> bool {
        self.levels.iter().all(|lv| {
            let rem_ok = match lv.kind {
                NodeKind::Join => lv.remaining.is_positive(),
                NodeKind::Union => lv.remaining.is_negative(),
            };
            let perm_ok = lv.permanent.as_ref().is_none_or(|p| match lv.kind {
                NodeKind::Join => p.is_negative(),
                NodeKind::Union => p.is_positive(),
            });
            rem_ok && perm_ok
        })
    }

    /// Band ladder of the left generator: remaining values exceed 1 after
    /// join levels and sit strictly inside (0, 1) after union levels;
    /// permanents are negative at joins and exceed 1 at unions.
    pub fn left_ladder_ok(&self) -> bool {
        let one = Scalar::one();
        self.levels.iter().all(|lv| {
            let rem_ok = match lv.kind {
                NodeKind::Join => lv.remaining > one,
                NodeKind::Union => lv.remaining.is_positive() && lv.remaining < one,
            };
            let perm_ok = lv.permanent.as_ref().is_none_or(|p| match lv.kind {
                NodeKind::Join => p.is_negative(),
                NodeKind::Union => *p > one,
            });
            rem_ok && perm_ok
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PoleError {
    #[error("join map pole: x + y = 2")]
    Join,
    #[error("union map pole: x + y = 0")]
    Union,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("right interval bound must be positive, got {0}")]
    NonPositiveN(Scalar),
    #[error("left interval bound must be less than -1, got {0}")]
    NotBelowMinusOne(Scalar),
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("explicit policy lists {got} levels, expected {expected}")]
    PolicyLength { expected: usize, got: usize },
    #[error("choice a{depth} = {chosen} does not strictly exceed its bound {bound}")]
    PolicyBound {
        depth: usize,
        chosen: u64,
        bound: Scalar,
    },
    #[error("the admissible choice at depth {depth} does not fit in 64 bits")]
    ChoiceOverflow { depth: usize },
}

/// Join recurrence map `(x, y) -> (xy - 1)/(x + y - 2)`: the remaining value
/// when two leaves of values x and y meet under a join node.
pub fn join_map(x: &Scalar, y: &Scalar) -> Result<Scalar, PoleError> {
    let denom = &(x + y) - &Scalar::from_integer(2);
    if denom.is_zero() {
        return Err(PoleError::Join);
    }
    Ok((&(x * y) - &Scalar::one()) / denom)
}

/// Union recurrence map `(x, y) -> xy/(x + y)`.
pub fn union_map(x: &Scalar, y: &Scalar) -> Result<Scalar, PoleError> {
    let denom = x + y;
    if denom.is_zero() {
        return Err(PoleError::Union);
    }
    Ok(&(x * y) / &denom)
}

fn choose(policy: &ChoicePolicy, depth: usize, bound: &Scalar) -> Result<u64, GenError> {
    match policy {
        ChoicePolicy::Initial => u64::try_from(bound.floor_plus_one())
            .map_err(|_| GenError::ChoiceOverflow { depth }),
        ChoicePolicy::Explicit(choices) => {
            let chosen = choices[depth - 1];
            if &Scalar::from(chosen) > bound {
                Ok(chosen)
            } else {
                Err(GenError::PolicyBound {
                    depth,
                    chosen,
                    bound: bound.clone(),
                })
            }
        }
    }
}

fn check_policy_length(policy: &ChoicePolicy, r: usize) -> Result<(), GenError> {
    if let ChoicePolicy::Explicit(choices) = policy {
        if choices.len() != r {
            return Err(GenError::PolicyLength {
                expected: r,
                got: choices.len(),
            });
        }
    }
    Ok(())
}

/// Right free-interval generator: a depth-`r` cotree whose graph has no
/// eigenvalue in `(0, N]`.
pub fn rfi(n: &Scalar, r: usize, policy: &ChoicePolicy) -> Result<(Cotree, GenTrace), GenError> {
    if !n.is_positive() {
        return Err(GenError::NonPositiveN(n.clone()));
    }
    if r == 0 {
        return Err(GenError::ZeroDepth);
    }
    check_policy_length(policy, r)?;

    let one = Scalar::one();
    let n_plus_1 = n + &one;
    let mut parts = vec![0u64; r];
    let mut levels = Vec::with_capacity(r);

    let bound = if r % 2 == 1 { n_plus_1.clone() } else { one.clone() };
    let chosen = choose(policy, r, &bound)?;
    let count = Scalar::from(chosen);
    let mut carried = if r % 2 == 1 {
        &one - &(&n_plus_1 / &count)
    } else {
        -&(n / &count)
    };
    parts[r - 1] = chosen;
    levels.push(TraceLevel {
        depth: r,
        kind: NodeKind::at_depth(r),
        bound,
        chosen,
        remaining: carried.clone(),
        permanent: None,
    });

    for depth in (1..r).rev() {
        let kind = NodeKind::at_depth(depth);
        let (bound, chosen, permanent, next);
        match kind {
            NodeKind::Join => {
                bound = &n_plus_1 / &(&one - &carried.recip());
                chosen = choose(policy, depth, &bound)?;
                let own = &one - &(&n_plus_1 / &Scalar::from(chosen));
                permanent = &(&carried - &one) - &(&n_plus_1 / &Scalar::from(chosen));
                next = join_map(&carried, &own).expect("strict bound excludes the pole");
            }
            NodeKind::Union => {
                bound = n / &carried;
                chosen = choose(policy, depth, &bound)?;
                let own = -&(n / &Scalar::from(chosen));
                permanent = &carried + &own;
                next = union_map(&carried, &own).expect("strict bound excludes the pole");
            }
        }
        parts[depth - 1] = chosen;
        levels.push(TraceLevel {
            depth,
            kind,
            bound,
            chosen,
            remaining: next.clone(),
            permanent: Some(permanent),
        });
        carried = next;
    }

    let cotree = Cotree::new(parts).expect("generated parts satisfy the invariants");
    Ok((cotree, GenTrace { levels }))
}

/// Left free-interval generator: a depth-`r` cotree whose graph has no
/// eigenvalue in `[M, -1)`.
pub fn lfi(m: &Scalar, r: usize, policy: &ChoicePolicy) -> Result<(Cotree, GenTrace), GenError> {
    if *m >= Scalar::from_integer(-1) {
        return Err(GenError::NotBelowMinusOne(m.clone()));
    }
    if r == 0 {
        return Err(GenError::ZeroDepth);
    }
    check_policy_length(policy, r)?;

    let one = Scalar::one();
    let m_plus_1 = m + &one;
    let neg_m = -m;
    let mut parts = vec![0u64; r];
    let mut levels = Vec::with_capacity(r);

    let bound = if r % 2 == 1 { one.clone() } else { neg_m.clone() };
    let chosen = choose(policy, r, &bound)?;
    let count = Scalar::from(chosen);
    let mut carried = if r % 2 == 1 {
        &one - &(&m_plus_1 / &count)
    } else {
        &neg_m / &count
    };
    parts[r - 1] = chosen;
    levels.push(TraceLevel {
        depth: r,
        kind: NodeKind::at_depth(r),
        bound,
        chosen,
        remaining: carried.clone(),
        permanent: None,
    });

    for depth in (1..r).rev() {
        let kind = NodeKind::at_depth(depth);
        let (bound, chosen, permanent, next);
        match kind {
            NodeKind::Join => {
                bound = &(&neg_m - &one) / &(&one - &carried);
                chosen = choose(policy, depth, &bound)?;
                let own = &one - &(&m_plus_1 / &Scalar::from(chosen));
                permanent = &(&carried - &one) - &(&m_plus_1 / &Scalar::from(chosen));
                next = join_map(&carried, &own).expect("strict bound excludes the pole");
            }
            NodeKind::Union => {
                bound = &neg_m + &(m / &carried);
                chosen = choose(policy, depth, &bound)?;
                let own = &neg_m / &Scalar::from(chosen);
                permanent = &carried + &own;
                next = union_map(&carried, &own).expect("strict bound excludes the pole");
            }
        }
        parts[depth - 1] = chosen;
        levels.push(TraceLevel {
            depth,
            kind,
            bound,
            chosen,
            remaining: next.clone(),
            permanent: Some(permanent),
        });
        carried = next;
    }

    let cotree = Cotree::new(parts).expect("generated parts satisfy the invariants");
    Ok((cotree, GenTrace { levels }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    fn parts_of(result: &(Cotree, GenTrace)) -> &[u64] {
        result.0.parts()
    }

    #[test]
    fn map_examples() {
        assert_eq!(join_map(&s("0"), &s("0")).unwrap(), s("1/2"));
        assert_eq!(join_map(&s("-1"), &s("0")).unwrap(), s("1/3"));
        assert_eq!(join_map(&s("1"), &s("1")), Err(PoleError::Join));
        assert_eq!(union_map(&s("1/2"), &s("-1/3")).unwrap(), s("-1"));
        assert_eq!(union_map(&s("1"), &s("1")).unwrap(), s("1/2"));
        assert_eq!(union_map(&s("1"), &s("-1")), Err(PoleError::Union));
    }

    #[test]
    fn right_generator_regressions() {
        let cases = [
            ("4.8", 5, vec![5u64, 145, 5, 145, 6]),
            ("4.8", 6, vec![6, 44, 6, 36, 5, 2]),
            ("2.3", 7, vec![3, 14, 3, 16, 3, 14, 4]),
        ];
        for (n, r, expected) in cases {
            let out = rfi(&s(n), r, &ChoicePolicy::Initial).unwrap();
            assert_eq!(parts_of(&out), expected.as_slice(), "rfi({n},{r})");
            assert!(out.1.right_ladder_ok(), "ladder for rfi({n},{r})");
        }
    }

    #[test]
    fn right_generator_at_the_critical_bound() {
        // 17-digit truncation of (-1+sqrt 2)/2.
        let n = s("0.20710678118654752");
        let out = rfi(&n, 7, &ChoicePolicy::Initial).unwrap();
        assert_eq!(parts_of(&out), &[1, 1, 1, 1, 1, 1, 2]);
    }

    #[test]
    fn left_generator_regressions() {
        let out = lfi(&s("-3.3"), 7, &ChoicePolicy::Initial).unwrap();
        assert_eq!(parts_of(&out), &[11, 4, 46, 3, 35, 2, 2]);
        assert!(out.1.left_ladder_ok());

        let out = lfi(&s("-1.5"), 1, &ChoicePolicy::Initial).unwrap();
        assert_eq!(parts_of(&out), &[2]);

        // 17-digit truncation of (-1-sqrt 2)/2.
        let m = s("-1.20710678118654752");
        let out = lfi(&m, 7, &ChoicePolicy::Initial).unwrap();
        assert_eq!(parts_of(&out), &[1, 1, 1, 1, 1, 1, 2]);
    }

    #[test]
    fn trace_carries_bounds_and_choices() {
        let (_, trace) = rfi(&s("4.8"), 5, &ChoicePolicy::Initial).unwrap();
        assert_eq!(trace.levels.len(), 5);
        let top = &trace.levels[0];
        assert_eq!(top.depth, 5);
        assert_eq!(top.bound, s("29/5"));
        assert_eq!(top.chosen, 6);
        assert_eq!(top.remaining, s("1/30"));
        assert!(top.permanent.is_none());
        let next = &trace.levels[1];
        assert_eq!(next.depth, 4);
        assert_eq!(next.bound, s("144"));
        assert_eq!(next.chosen, 145);
        assert_eq!(next.remaining, s("-24/5"));
        assert!(next.permanent.as_ref().unwrap().is_positive());
    }

    #[test]
    fn explicit_policy_reproduces_and_validates() {
        let initial = rfi(&s("4.8"), 5, &ChoicePolicy::Initial).unwrap().0;
        let explicit = ChoicePolicy::Explicit(initial.parts().to_vec());
        let again = rfi(&s("4.8"), 5, &explicit).unwrap().0;
        assert_eq!(again, initial);

        // Dropping the deepest count below its bound must fail.
        let mut bad = initial.parts().to_vec();
        bad[4] = 5;
        match rfi(&s("4.8"), 5, &ChoicePolicy::Explicit(bad)) {
            Err(GenError::PolicyBound { depth: 5, chosen: 5, .. }) => {}
            other => panic!("expected PolicyBound, got {other:?}"),
        }

        let wider = ChoicePolicy::Explicit(vec![6, 150, 7, 200, 8]);
        let (cotree, trace) = rfi(&s("4.8"), 5, &wider).unwrap();
        assert!(initial.leq(&cotree));
        assert!(trace.right_ladder_ok());
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            rfi(&s("-1"), 3, &ChoicePolicy::Initial),
            Err(GenError::NonPositiveN(_))
        ));
        assert!(matches!(
            lfi(&s("-0.5"), 3, &ChoicePolicy::Initial),
            Err(GenError::NotBelowMinusOne(_))
        ));
        assert!(matches!(
            lfi(&s("-1"), 3, &ChoicePolicy::Initial),
            Err(GenError::NotBelowMinusOne(_))
        ));
        assert!(matches!(
            rfi(&s("2"), 0, &ChoicePolicy::Initial),
            Err(GenError::ZeroDepth)
        ));
        assert!(matches!(
            rfi(&s("2"), 3, &ChoicePolicy::Explicit(vec![4, 4])),
            Err(GenError::PolicyLength { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn gen_trace_serializes() {
        let (_, trace) = rfi(&s("2.3"), 3, &ChoicePolicy::Initial).unwrap();
        let json = serde_json::to_value(&trace).unwrap();
        let levels = json["levels"].as_array().unwrap();
        assert_eq!(levels.len(), 3);
        assert_eq!(levels[0]["depth"], 3);
        assert!(levels[0]["bound"]["num"].is_string());
    }
}
