use linksim::fading::{ew_fit, pointing_geometry, selection_cdf, EwLink, SrParams};
use linksim::outage::{analytic_outage, build_link_budget, outage_from_budget, outage_series_options};
use linksim::scenario::{LinkMode, ScenarioConfig, ShadowingPreset};
use proptest::prelude::*;

fn op(s: &ScenarioConfig) -> f64 {
    analytic_outage(s).unwrap().op
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ew_cdf_is_a_cdf(sigma_i2 in 0.005f64..1.5, x in 0.0f64..6.0, dx in 0.0f64..2.0) {
        let p = ew_fit(sigma_i2).unwrap();
        let (a, b) = (p.cdf(x), p.cdf(x + dx));
        prop_assert!((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b));
        prop_assert!(a <= b);
    }

    #[test]
    fn sr_cdf_is_a_cdf(k in 0usize..3, z in 0.0f64..20.0, dz in 0.0f64..5.0) {
        let sh = [ShadowingPreset::HEAVY, ShadowingPreset::AVERAGE, ShadowingPreset::LIGHT][k];
        let p = SrParams::new(sh.m, sh.b, sh.omega).unwrap();
        let (a, b) = (p.cdf_normalized(z), p.cdf_normalized(z + dz));
        prop_assert!((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b));
        prop_assert!(a <= b + 1e-15);
    }

    #[test]
    fn pointing_cdf_is_a_cdf(theta in 1e-4f64..2e-3, jitter in 0.02f64..0.5, u in 0.0f64..1.2, du in 0.0f64..0.5) {
        let p = pointing_geometry(theta, 1e3, 0.075, jitter);
        prop_assert!(p.a0 > 0.0 && p.a0 <= 1.0 && p.g > 0.0);
        let (a, b) = (p.cdf(u * p.a0), p.cdf((u + du) * p.a0));
        prop_assert!((0.0..=1.0).contains(&a) && a <= b);
    }

    #[test]
    fn selection_never_hurts(sigma_i2 in 0.01f64..1.0, gamma in 0.01f64..4.0, n in 1usize..8) {
        let link = EwLink { avg_snr: 1.0, path_gain: 1.0, params: ew_fit(sigma_i2).unwrap() };
        let fewer = selection_cdf(gamma, &vec![link; n]);
        let more = selection_cdf(gamma, &vec![link; n + 1]);
        prop_assert!(more <= fewer);
    }

    #[test]
    fn outage_monotone_in_power(p in 2005.0f64..2035.0, dp in 0.0f64..5.0) {
        let s = ScenarioConfig::default();
        prop_assert!(op(&s.at_power(p + dp)) <= op(&s.at_power(p)));
    }

    #[test]
    fn outage_monotone_in_threshold(p in 2005.0f64..2035.0, th in 0.0f64..12.0, dth in 0.0f64..3.0) {
        let mut s = ScenarioConfig::default().at_power(p);
        s.radio.snr_threshold_db = th;
        let low = op(&s);
        s.radio.snr_threshold_db = th + dth;
        prop_assert!(low <= op(&s));
    }

    #[test]
    fn outage_monotone_in_relays(p in 2005.0f64..2035.0, n in 1u32..10) {
        let mut s = ScenarioConfig::default().at_power(p);
        s.n_haps = n;
        let fewer = op(&s);
        s.n_haps = n + 1;
        prop_assert!(op(&s) <= fewer);
    }

    #[test]
    fn hybrid_never_worse_than_either_branch(p in 1990.0f64..2060.0, rain in 0.0f64..30.0) {
        let mut s = ScenarioConfig::default().at_power(p);
        s.weather.rain_rate_mm_per_h = rain;
        let b = build_link_budget(&s).unwrap();
        let at = |mode| {
            let mut b = b.clone();
            b.link_mode = mode;
            outage_from_budget(&b, outage_series_options()).unwrap().op
        };
        let hybrid = at(LinkMode::Hybrid);
        prop_assert!(hybrid <= at(LinkMode::FsoOnly).min(at(LinkMode::RfOnly)));
    }
}
