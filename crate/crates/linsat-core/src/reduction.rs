//! Gadget reduction from singleton acceptance sets to uniform size-`r` sets,
//! with exact accounting of how many derived constraints any assignment
//! satisfies.
//!
//! Each singleton constraint `L_i(x) = b_i` expands into one constraint
//! `L_i(x) in S` for every size-`r` subset `S` of `F_q` containing `b_i` —
//! `C(q-1, r-1)` of them. An assignment that satisfies the original
//! constraint satisfies all of its derived constraints; one that misses it
//! satisfies exactly `C(q-2, r-2)`, because the derived set must contain both
//! `b_i` and the attained value. The satisfied fraction of the expanded
//! instance is therefore the affine function
//! `mu * (q-r)/(q-1) + (r-1)/(q-1)` of the fraction `mu` of original
//! constraints hit exactly, which [`verify_reduction`] checks in integers
//! with zero tolerance.

use crate::gf::{FieldElement, FieldSpec};
use crate::instance::{Assignment, Constraint, Instance, InstanceError};
use crate::Rat;
use itertools::Itertools;
use thiserror::Error;

/// Guard against materializing absurdly large expanded instances.
pub const MAX_REDUCED_CONSTRAINTS: u128 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReductionError {
    #[error("acceptance-set size r={r} must satisfy 1 <= r <= q-1 for q={q}")]
    RangeError { r: usize, q: u32 },
    #[error("{name}={value} outside its valid range")]
    FractionRange { name: &'static str, value: Rat },
    #[error("constraint {index} has acceptance-set size {size}, expected 1")]
    NotSingleton { index: usize, size: usize },
    #[error("instances do not form a reduction pair: {0}")]
    MismatchedInstances(String),
    #[error("expanded instance would have {m_prime} constraints (limit {MAX_REDUCED_CONSTRAINTS})")]
    TooLarge { m_prime: u128 },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Per-assignment bookkeeping for the reduction law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    /// Fraction of original constraints satisfied exactly.
    pub mu: Rat,
    /// `|A| * C(q-1, r-1) + (m - |A|) * C(q-2, r-2)`.
    pub predicted_satisfied: u64,
    /// Satisfied count from evaluating the expanded instance.
    pub actual_satisfied: u64,
    /// `m * C(q-1, r-1)`.
    pub m_prime: u64,
}

impl ReductionReport {
    /// The exact law the reduction guarantees for every assignment.
    pub fn law_holds(&self) -> bool {
        self.predicted_satisfied == self.actual_satisfied
    }
}

/// Exact binomial coefficient, with `C(a, b) = 0` whenever `b < 0`, `a < 0`,
/// or `b > a` — so `C(q-2, r-2)` vanishes at `r = 1` without special-casing.
pub fn binomial(a: i64, b: i64) -> u128 {
    if b < 0 || a < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b) as u128;
    let a = a as u128;
    let mut acc: u128 = 1;
    for i in 1..=b {
        acc = acc
            .checked_mul(a - b + i)
            .expect("binomial coefficient overflows u128")
            / i;
    }
    acc
}

fn checked_binomial(a: i64, b: i64) -> Option<u128> {
    if b < 0 || a < 0 || b > a {
        return Some(0);
    }
    let b = b.min(a - b) as u128;
    let a = a as u128;
    let mut acc: u128 = 1;
    for i in 1..=b {
        acc = acc.checked_mul(a - b + i)? / i;
    }
    Some(acc)
}

fn check_range(q: u32, r: usize) -> Result<(), ReductionError> {
    if q < 2 || r == 0 || r > (q - 1) as usize {
        Err(ReductionError::RangeError { r, q })
    } else {
        Ok(())
    }
}

/// All size-`r` subsets of `F_q` containing `b`, each sorted, in
/// lexicographic order of their sorted encodings. There are exactly
/// `C(q-1, r-1)` of them.
pub fn r_subsets_containing(
    spec: &FieldSpec,
    b: FieldElement,
    r: usize,
) -> Result<Vec<Vec<FieldElement>>, ReductionError> {
    check_range(spec.q(), r)?;
    let count = checked_binomial(i64::from(spec.q()) - 1, r as i64 - 1)
        .filter(|&c| c <= MAX_REDUCED_CONSTRAINTS)
        .ok_or(ReductionError::TooLarge { m_prime: u128::MAX })?;
    let others: Vec<FieldElement> = spec.elements().filter(|e| *e != b).collect();
    let mut subsets: Vec<Vec<FieldElement>> = others
        .into_iter()
        .combinations(r - 1)
        .map(|mut s| {
            s.push(b);
            s.sort_unstable();
            s
        })
        .collect();
    subsets.sort_unstable();
    debug_assert_eq!(subsets.len() as u128, count);
    Ok(subsets)
}

/// Expands a singleton-set instance into one with uniform acceptance-set
/// size `r`. Output constraints are ordered by (original index, subset rank);
/// `r = 1` is the identity.
pub fn reduce(inst: &Instance, r: usize) -> Result<Instance, ReductionError> {
    let q = inst.spec().q();
    check_range(q, r)?;
    for (index, row) in inst.rows().iter().enumerate() {
        if row.accept().len() != 1 {
            return Err(ReductionError::NotSingleton {
                index,
                size: row.accept().len(),
            });
        }
    }
    let per_constraint = checked_binomial(i64::from(q) - 1, r as i64 - 1)
        .ok_or(ReductionError::TooLarge { m_prime: u128::MAX })?;
    let m_prime = per_constraint * inst.m() as u128;
    if m_prime > MAX_REDUCED_CONSTRAINTS {
        return Err(ReductionError::TooLarge { m_prime });
    }

    let mut rows = Vec::with_capacity(m_prime as usize);
    for row in inst.rows() {
        let b = row.accept()[0];
        for subset in r_subsets_containing(inst.spec(), b, r)? {
            rows.push(Constraint::new(row.coeffs().to_vec(), subset));
        }
    }
    Ok(Instance::new(inst.spec().clone(), inst.n(), rows)?)
}

/// The satisfied fraction of the expanded instance as a function of the
/// original hit fraction: `mu * (q-r)/(q-1) + (r-1)/(q-1)`.
pub fn predicted_fraction(mu: Rat, q: u32, r: usize) -> Result<Rat, ReductionError> {
    check_range(q, r)?;
    if mu < Rat::from_integer(0) || mu > Rat::from_integer(1) {
        return Err(ReductionError::FractionRange { name: "mu", value: mu });
    }
    let q = i64::from(q);
    let r = r as i64;
    Ok(mu * Rat::new(q - r, q - 1) + Rat::new(r - 1, q - 1))
}

/// Upper bound on the expanded instance's satisfiable fraction when no
/// assignment hits more than a `(1/q + epsilon)`-fraction of the original
/// constraints: `r/q + epsilon * (q-r)/(q-1)`. Never exceeds
/// `r/q + epsilon`.
pub fn soundness_bound(epsilon: Rat, q: u32, r: usize) -> Result<Rat, ReductionError> {
    check_range(q, r)?;
    if epsilon < Rat::from_integer(0) {
        return Err(ReductionError::FractionRange {
            name: "epsilon",
            value: epsilon,
        });
    }
    let q = i64::from(q);
    let r = r as i64;
    Ok(Rat::new(r, q) + epsilon * Rat::new(q - r, q - 1))
}

/// Evaluates one assignment against both sides of a reduction pair and
/// reports predicted versus actual satisfied counts in exact integers.
pub fn verify_reduction(
    original: &Instance,
    reduced: &Instance,
    x: &Assignment,
) -> Result<ReductionReport, ReductionError> {
    if original.spec() != reduced.spec() {
        return Err(ReductionError::MismatchedInstances(
            "field orders differ".into(),
        ));
    }
    if original.n() != reduced.n() {
        return Err(ReductionError::MismatchedInstances(
            "variable counts differ".into(),
        ));
    }
    if original.uniform_acceptance_size() != Some(1) {
        return Err(ReductionError::MismatchedInstances(
            "original instance must have singleton acceptance sets".into(),
        ));
    }
    let r = reduced.uniform_acceptance_size().ok_or_else(|| {
        ReductionError::MismatchedInstances("reduced instance is not uniform".into())
    })?;
    let q = i64::from(original.spec().q());
    let per_satisfied = binomial(q - 1, r as i64 - 1);
    let per_unsatisfied = binomial(q - 2, r as i64 - 2);
    let m = original.m() as u128;
    let m_prime = m * per_satisfied;
    if reduced.m() as u128 != m_prime {
        return Err(ReductionError::MismatchedInstances(format!(
            "expected {} constraints in the reduced instance, found {}",
            m_prime,
            reduced.m()
        )));
    }

    let hits = original.evaluate(x)?.satisfied() as u128;
    let actual = reduced.evaluate(x)?.satisfied() as u128;
    let predicted = hits * per_satisfied + (m - hits) * per_unsatisfied;
    Ok(ReductionReport {
        mu: Rat::new(hits as i64, m as i64),
        predicted_satisfied: predicted as u64,
        actual_satisfied: actual as u64,
        m_prime: m_prime as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{self, GenConfig, Kind};

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(8, 0), 1);
        assert_eq!(binomial(0, 1), 0);
        assert_eq!(binomial(5, -1), 0);
        assert_eq!(binomial(-1, 0), 0);
        assert_eq!(binomial(52, 26), 495_918_532_948_104);
    }

    #[test]
    fn subsets_containing_examples() {
        let f3 = FieldSpec::from_order(3).unwrap();
        let subs = r_subsets_containing(&f3, f3.elem(1), 2).unwrap();
        assert_eq!(
            subs,
            vec![
                vec![f3.elem(0), f3.elem(1)],
                vec![f3.elem(1), f3.elem(2)],
            ]
        );

        let f7 = FieldSpec::from_order(7).unwrap();
        let subs = r_subsets_containing(&f7, f7.elem(4), 1).unwrap();
        assert_eq!(subs, vec![vec![f7.elem(4)]]);

        let f5 = FieldSpec::from_order(5).unwrap();
        let subs = r_subsets_containing(&f5, f5.elem(0), 2).unwrap();
        assert_eq!(subs.len(), 4);
        for s in &subs {
            assert!(s.contains(&f5.elem(0)));
            assert_eq!(s.len(), 2);
        }
    }

    #[test]
    fn subsets_are_lexicographically_sorted_and_distinct() {
        let f8 = FieldSpec::from_order(8).unwrap();
        for b in 0..8 {
            for r in 1..8 {
                let subs = r_subsets_containing(&f8, f8.elem(b), r).unwrap();
                assert_eq!(subs.len() as u128, binomial(7, r as i64 - 1));
                for w in subs.windows(2) {
                    assert!(w[0] < w[1]);
                }
            }
        }
    }

    fn singleton_instance(q: u32, seed: u64, n: usize, m: usize) -> Instance {
        let cfg = GenConfig::new(q, n, m, 1, seed, Kind::Random);
        generators::random(&cfg).unwrap()
    }

    #[test]
    fn reduce_r1_is_identity() {
        let inst = singleton_instance(5, 3, 3, 4);
        let out = reduce(&inst, 1).unwrap();
        assert_eq!(out, inst);
    }

    #[test]
    fn reduce_size_law() {
        let inst = singleton_instance(3, 9, 2, 4);
        let out = reduce(&inst, 2).unwrap();
        assert_eq!(out.m(), 8); // 4 * C(2, 1)
        assert_eq!(out.uniform_acceptance_size(), Some(2));
        assert_eq!(out.n(), inst.n());

        for (q, r) in [(4u32, 2usize), (5, 3), (7, 4), (8, 5)] {
            let inst = singleton_instance(q, 17, 2, 3);
            let out = reduce(&inst, r).unwrap();
            let expected = 3 * binomial(i64::from(q) - 1, r as i64 - 1) as usize;
            assert_eq!(out.m(), expected);
        }
    }

    #[test]
    fn reduce_rejects_non_singleton() {
        let cfg = GenConfig::new(5, 3, 4, 2, 1, Kind::Random);
        let inst = generators::random(&cfg).unwrap();
        assert!(matches!(
            reduce(&inst, 3),
            Err(ReductionError::NotSingleton { index: 0, size: 2 })
        ));
    }

    #[test]
    fn reduce_rejects_bad_r() {
        let inst = singleton_instance(5, 3, 3, 4);
        assert!(matches!(reduce(&inst, 0), Err(ReductionError::RangeError { .. })));
        assert!(matches!(reduce(&inst, 5), Err(ReductionError::RangeError { .. })));
    }

    #[test]
    fn predicted_fraction_endpoints() {
        for q in [2u32, 3, 5, 9] {
            for r in 1..q as usize {
                let one = predicted_fraction(Rat::from_integer(1), q, r).unwrap();
                assert_eq!(one, Rat::from_integer(1));
                let zero = predicted_fraction(Rat::from_integer(0), q, r).unwrap();
                assert_eq!(zero, Rat::new(r as i64 - 1, i64::from(q) - 1));
                let mid = predicted_fraction(Rat::new(1, i64::from(q)), q, r).unwrap();
                assert_eq!(mid, Rat::new(r as i64, i64::from(q)));
            }
        }
    }

    #[test]
    fn predicted_fraction_is_affine_nondecreasing() {
        for q in [3u32, 5, 8] {
            for r in 1..q as usize {
                let mut prev = predicted_fraction(Rat::from_integer(0), q, r).unwrap();
                for k in 1..=10 {
                    let cur = predicted_fraction(Rat::new(k, 10), q, r).unwrap();
                    assert!(cur >= prev);
                    prev = cur;
                }
            }
        }
    }

    #[test]
    fn predicted_fraction_range_checks() {
        assert!(matches!(
            predicted_fraction(Rat::new(3, 2), 5, 2),
            Err(ReductionError::FractionRange { .. })
        ));
        assert!(matches!(
            predicted_fraction(Rat::new(1, 2), 5, 0),
            Err(ReductionError::RangeError { .. })
        ));
    }

    #[test]
    fn soundness_bound_values() {
        assert_eq!(
            soundness_bound(Rat::from_integer(0), 5, 2).unwrap(),
            Rat::new(2, 5)
        );
        assert_eq!(
            soundness_bound(Rat::new(1, 10), 3, 2).unwrap(),
            Rat::new(2, 3) + Rat::new(1, 20)
        );
        for q in [2u32, 3, 4, 5, 7, 8, 9] {
            for r in 1..q as usize {
                for eps in [Rat::from_integer(0), Rat::new(1, 100), Rat::new(1, 10)] {
                    let bound = soundness_bound(eps, q, r).unwrap();
                    assert!(bound <= Rat::new(r as i64, i64::from(q)) + eps);
                }
            }
        }
    }

    /// Brute-force oracle: count satisfied derived constraints per original
    /// row directly from the subset list, bypassing `Instance::evaluate`.
    fn direct_count(inst: &Instance, r: usize, values: &[FieldElement]) -> u64 {
        let spec = inst.spec();
        let mut total = 0;
        for row in inst.rows() {
            let mut lhs = FieldElement::ZERO;
            for (c, x) in row.coeffs().iter().zip(values) {
                lhs = spec.add(lhs, spec.mul(*c, *x));
            }
            let b = row.accept()[0];
            for subset in r_subsets_containing(spec, b, r).unwrap() {
                if subset.contains(&lhs) {
                    total += 1;
                }
            }
        }
        total
    }

    #[test]
    fn per_constraint_law_by_direct_counting() {
        let f5 = FieldSpec::from_order(5).unwrap();
        for r in 1..5usize {
            for b in 0..5 {
                for attained in 0..5 {
                    let hits = r_subsets_containing(&f5, f5.elem(b), r)
                        .unwrap()
                        .iter()
                        .filter(|s| s.contains(&f5.elem(attained)))
                        .count() as u128;
                    let expected = if attained == b {
                        binomial(4, r as i64 - 1)
                    } else {
                        binomial(3, r as i64 - 2)
                    };
                    assert_eq!(hits, expected, "q=5 r={} b={} v={}", r, b, attained);
                }
            }
        }
    }

    #[test]
    fn exhaustive_law_small_instance() {
        // q=3, r=2, n=3, m=4: check every assignment
        let inst = singleton_instance(3, 21, 3, 4);
        let reduced = reduce(&inst, 2).unwrap();
        let spec = inst.spec().clone();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let x = Assignment::new(vec![spec.elem(a), spec.elem(b), spec.elem(c)]);
                    let report = verify_reduction(&inst, &reduced, &x).unwrap();
                    assert!(report.law_holds(), "law fails at {:?}: {:?}", (a, b, c), report);
                    assert_eq!(
                        report.actual_satisfied,
                        direct_count(&inst, 2, x.values()),
                        "evaluate disagrees with direct counting"
                    );
                }
            }
        }
    }

    #[test]
    fn verify_reduction_endpoint_counts() {
        // planted instance with r=1 so the planted assignment hits everything
        let mut cfg = GenConfig::new(5, 3, 6, 1, 13, Kind::Planted);
        cfg.planted_sat_fraction = Rat::from_integer(1);
        let (inst, x) = generators::planted(&cfg).unwrap();
        let reduced = reduce(&inst, 3).unwrap();
        let report = verify_reduction(&inst, &reduced, &x).unwrap();
        assert_eq!(report.mu, Rat::from_integer(1));
        assert_eq!(report.actual_satisfied, report.m_prime);
        assert!(report.law_holds());
    }

    #[test]
    fn verify_reduction_none_satisfied_endpoint() {
        // every row demands x1 = 1, so the zero assignment misses all of them
        let f5 = FieldSpec::from_order(5).unwrap();
        let rows = vec![Constraint::new(vec![f5.one(), f5.zero()], vec![f5.one()]); 4];
        let inst = Instance::new(f5.clone(), 2, rows).unwrap();
        let x = Assignment::new(vec![f5.zero(), f5.zero()]);
        for r in 1..5usize {
            let reduced = reduce(&inst, r).unwrap();
            let report = verify_reduction(&inst, &reduced, &x).unwrap();
            assert_eq!(report.mu, Rat::from_integer(0));
            assert_eq!(
                u128::from(report.actual_satisfied),
                4 * binomial(3, r as i64 - 2)
            );
            assert!(report.law_holds());
        }
    }

    #[test]
    fn optimum_of_expanded_instance_follows_the_law() {
        // the law is monotone in the hit count, so both optima line up
        use crate::solvers::brute_force;
        for seed in [3u64, 14, 62] {
            let inst = singleton_instance(3, seed, 3, 4);
            let opt = brute_force(&inst).unwrap().eval.satisfied() as u128;
            for r in [1usize, 2] {
                let reduced = reduce(&inst, r).unwrap();
                let opt_reduced = brute_force(&reduced).unwrap().eval.satisfied() as u128;
                let expected = opt * binomial(2, r as i64 - 1)
                    + (4 - opt) * binomial(1, r as i64 - 2);
                assert_eq!(opt_reduced, expected, "seed={} r={}", seed, r);
            }
        }
    }

    #[test]
    fn verify_reduction_rejects_mismatch() {
        let inst = singleton_instance(3, 2, 2, 3);
        let other = singleton_instance(3, 2, 2, 4);
        let spec = inst.spec().clone();
        let x = Assignment::new(vec![spec.zero(), spec.zero()]);
        assert!(matches!(
            verify_reduction(&inst, &other, &x),
            Err(ReductionError::MismatchedInstances(_))
        ));
    }
}
