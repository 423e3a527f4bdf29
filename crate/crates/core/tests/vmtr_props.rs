mod common;

use num_rational::Ratio;
use proptest::prelude::*;

use common::*;
use topoforge::eval::evaluate_plan;
use topoforge::instance::synth_instance;
use topoforge::mtr::SearchConfig;
use topoforge::plan::DesignPlan;
use topoforge::vmtr::{
    design_vmtr, min_multiplier_cover, perturbations, simplest_between, FeasibleInterval, LambdaPlacement, Side,
    VmtrConfig,
};
use topoforge::Multiplier;

fn intervals() -> impl Strategy<Value = Vec<RawInterval>> {
    prop::collection::vec((0i64..40, prop::option::weighted(0.85, 0i64..12)), 0..=12)
        .prop_map(|v| v.into_iter().map(|(lo, w)| (lo, w.map(|w| lo + w))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn cover_is_minimum_and_complete(raw in intervals()) {
        let ivs: Vec<FeasibleInterval> = raw
            .iter()
            .enumerate()
            .map(|(i, &(lo, hi))| FeasibleInterval {
                demand: i,
                lambda_min: Ratio::from_integer(lo as i128),
                lambda_max: hi.map(|h| Ratio::from_integer(h as i128)),
            })
            .collect();
        let stabs = min_multiplier_cover(&ivs);
        prop_assert_eq!(stabs.len(), brute_stabbing(&raw));
        let mut seen: Vec<usize> = stabs.iter().flat_map(|s| s.demands.clone()).collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..ivs.len()).collect::<Vec<_>>());
        for s in &stabs {
            prop_assert_eq!(s.demands[0], s.owner);
            for &d in &s.demands {
                prop_assert!(ivs[d].contains(&s.lambda));
            }
        }
    }

    #[test]
    fn simplest_fraction_lies_strictly_between(a in 0i128..500, b in 1i128..500, c in 1i128..500, d in 1i128..500) {
        let x = Multiplier::new(a, b);
        let y = x + Multiplier::new(c, d * 7);
        let s = simplest_between(x, y);
        prop_assert!(x < s && s < y);
        // no fraction with a smaller denominator fits
        for q in 1..*s.denom() {
            let p = (x * Multiplier::from_integer(q)).floor() + Multiplier::from_integer(1);
            prop_assert!(p / Multiplier::from_integer(q) >= y);
        }
    }

    #[test]
    fn perturbations_start_at_lambda_and_stay_nonnegative(p in 0i128..1000, q in 1i128..1000) {
        let lam = Multiplier::new(p, q);
        let seq: Vec<Multiplier> = perturbations(lam, [Side::Right, Side::Left]).collect();
        prop_assert_eq!(seq[0], lam);
        prop_assert!(seq.iter().all(|m| *m >= Multiplier::from_integer(0)));
        prop_assert!(seq[1] > lam);
        prop_assert!(seq.len() <= 129);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn vmtr_plans_serve_every_demand(seed in 0u64..60, midpoint in any::<bool>()) {
        let Ok(inst) = synth_instance(9, 0.45, seed) else { return Ok(()) };
        let cfg = VmtrConfig {
            placement: if midpoint { LambdaPlacement::Midpoint } else { LambdaPlacement::Max },
            mtr: SearchConfig { max_iterations: 10, ..SearchConfig::default() },
        };
        let plan = design_vmtr(&inst.network, &inst.metrics, &inst.demands, &cfg).unwrap();
        let dp = DesignPlan::from_vmtr(&plan);
        let ev = evaluate_plan(&inst, &dp).unwrap();
        prop_assert_eq!(ev.robustness.len(), inst.demands.len());
        for r in &ev.robustness {
            prop_assert!(r.ratios.iter().all(|&x| x <= 1.0));
        }
        prop_assert!(plan.demoted.iter().all(|d| plan.discarded_to_mtr.contains(d)));
    }
}
