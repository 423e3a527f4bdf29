mod common;

use num_rational::Ratio;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use topoforge::csp::{consumption, exact_csp, larac, tamcra, DEFAULT_K_PATHS};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn exact_matches_enumeration(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (net, ms) = random_graph(&mut rng, 8, 0.35);
        if let Some(k) = random_demand(&mut rng, &net, &ms, 0) {
            let got = exact_csp(&net, &ms, &k);
            let want = brute_csp(&net, &ms, &k);
            prop_assert_eq!(got.is_some(), want.is_some());
            if let Some(p) = got {
                prop_assert!(is_simple_path(&net, &p));
                prop_assert!(k.admits(&consumption(&ms, &p)));
                prop_assert_eq!(Some(sums(&ms, &p.arcs).0), want);
            }
        }
    }

    #[test]
    fn tamcra_is_sound(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (net, ms) = random_graph(&mut rng, 8, 0.35);
        if let Some(k) = random_demand(&mut rng, &net, &ms, 0) {
            if let Some(p) = tamcra(&net, &ms, &k, DEFAULT_K_PATHS) {
                prop_assert!(is_simple_path(&net, &p));
                prop_assert!(k.admits(&consumption(&ms, &p)));
            }
            // with one label per node TAMCRA may miss paths, never invent them
            if brute_csp(&net, &ms, &k).is_none() {
                prop_assert!(tamcra(&net, &ms, &k, 1).is_none());
            }
        }
    }

    #[test]
    fn larac_dual_bounds_optimum(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (net, ms) = random_graph(&mut rng, 8, 0.35);
        let Some(k) = random_demand(&mut rng, &net, &ms, 0) else { return Ok(()) };
        let bound = k.bounds[1];
        let paths: Vec<(u64, u64)> = simple_paths(&net, k.src, k.dst).iter().map(|p| sums(&ms, p)).collect();
        let opt = paths.iter().filter(|p| p.1 <= bound).map(|p| p.0).min();
        let r = larac(&net, &ms, 0, 1, bound, k.src, k.dst).unwrap();
        prop_assert_eq!(r.feasible, opt.is_some());
        prop_assert_eq!(r.lambda_star.is_some(), opt.is_some());
        if let (Some(opt), Some(lam)) = (opt, r.lambda_star) {
            let dual = paths
                .iter()
                .map(|&(c, d)| Ratio::from_integer(c as i128) + lam * Ratio::from_integer(d as i128 - bound as i128))
                .min()
                .unwrap();
            prop_assert!(dual <= Ratio::from_integer(opt as i128));
            let (c, d) = sums(&ms, &r.path.unwrap().arcs);
            prop_assert!(d <= bound && c >= opt);
        }
    }
}
