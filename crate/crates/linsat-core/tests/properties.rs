//! Property tests: format round-trips and the reduction law on randomly
//! drawn instances and assignments.

use linsat_core::{
    generators::{self, GenConfig, Kind},
    reduction::{reduce, verify_reduction},
    Assignment, FieldElement, Instance, Rat,
};
use proptest::prelude::*;

const PRIME_POWERS: &[u32] = &[2, 3, 4, 5, 7, 8, 9];

fn gen_config_strategy() -> impl Strategy<Value = GenConfig> {
    (0usize..PRIME_POWERS.len(), 1usize..=6, 1usize..=8, any::<u64>()).prop_flat_map(
        |(qi, n, m, seed)| {
            let q = PRIME_POWERS[qi];
            (1usize..q as usize).prop_map(move |r| GenConfig::new(q, n, m, r, seed, Kind::Random))
        },
    )
}

proptest! {
    #[test]
    fn serialize_parse_round_trip(cfg in gen_config_strategy()) {
        let inst = generators::random(&cfg).unwrap();
        let text = inst.serialize();
        let back = Instance::parse(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(back.serialize(), text);
    }

    #[test]
    fn evaluation_is_exact_and_bounded(cfg in gen_config_strategy(), xs in proptest::collection::vec(0u32..16, 1..=6)) {
        let inst = generators::random(&cfg).unwrap();
        let values: Vec<FieldElement> = xs
            .iter()
            .cycle()
            .take(inst.n())
            .map(|&v| inst.spec().elem(v % inst.spec().q()))
            .collect();
        let eval = inst.evaluate(&Assignment::new(values)).unwrap();
        prop_assert!(eval.satisfied() <= inst.m());
        prop_assert!(eval.ratio() >= Rat::from_integer(0));
        prop_assert!(eval.ratio() <= Rat::from_integer(1));
        let recount = eval.mask().iter().filter(|&&b| b).count();
        prop_assert_eq!(recount, eval.satisfied());
    }

    #[test]
    fn reduction_law_on_random_pairs(
        qi in 0usize..PRIME_POWERS.len(),
        n in 1usize..=3,
        m in 1usize..=4,
        seed in any::<u64>(),
        xs in proptest::collection::vec(0u32..16, 3),
    ) {
        let q = PRIME_POWERS[qi];
        let cfg = GenConfig::new(q, n, m, 1, seed, Kind::Random);
        let inst = generators::random(&cfg).unwrap();
        let values: Vec<FieldElement> = xs[..n].iter().map(|&v| inst.spec().elem(v % q)).collect();
        let x = Assignment::new(values);
        for r in 1..q as usize {
            let reduced = reduce(&inst, r).unwrap();
            prop_assert_eq!(reduced.m(), m * linsat_core::binomial(i64::from(q) - 1, r as i64 - 1) as usize);
            let report = verify_reduction(&inst, &reduced, &x).unwrap();
            prop_assert!(report.law_holds(), "predicted {} != actual {}", report.predicted_satisfied, report.actual_satisfied);
        }
    }
}
