use proptest::prelude::*;
use softcs_core::journey::{enumerate_journeys, JourneySolution};
use softcs_testkit::oracle::{self, PlainJourney};
use softcs_testkit::{gen, rng};

fn plain(j: &JourneySolution) -> PlainJourney {
    PlainJourney {
        routes: j.routes().map(|r| r.0.clone()).collect(),
        stations: j.legs.iter().map(|l| l.charged_at.clone()).collect(),
        time: j.cost.time.finite().unwrap(),
        energy: j.cost.energy.finite().unwrap(),
        final_soc: j.final_soc,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn journeys_match_brute_force(seed in any::<u64>()) {
        let inst = gen::journey(&mut rng(seed), 5, 3);
        let got = enumerate_journeys(&inst.network, &inst.appointments, &inst.stations, inst.initial_soc, &inst.policy).unwrap();
        let mut got: Vec<_> = got.iter().map(plain).collect();
        got.sort();
        prop_assert_eq!(got, oracle::journeys(&inst.network, &inst.appointments, &inst.stations, inst.initial_soc, &inst.policy));
    }

    #[test]
    fn every_journey_passes_its_self_check(seed in any::<u64>()) {
        let inst = gen::journey(&mut rng(seed), 5, 4);
        for j in enumerate_journeys(&inst.network, &inst.appointments, &inst.stations, inst.initial_soc, &inst.policy).unwrap() {
            let checked = j.check(&inst.network, &inst.appointments, &inst.stations, inst.initial_soc, &inst.policy);
            prop_assert!(checked.is_ok(), "{:?}", checked);
            for (i, leg) in j.legs.iter().enumerate() {
                prop_assert!(leg.arrival <= inst.appointments[i + 1].start);
                prop_assert!(leg.soc_at_arrival >= inst.policy.threshold);
            }
        }
    }

    #[test]
    fn more_charge_never_loses_direct_options(seed in any::<u64>(), extra in 0u64..10) {
        let inst = gen::journey(&mut rng(seed), 5, 2);
        let run = |soc| enumerate_journeys(&inst.network, &inst.appointments, &inst.stations, soc, &inst.policy).unwrap();
        let direct = |js: Vec<JourneySolution>| -> Vec<_> {
            js.into_iter().filter(|j| j.legs[0].charged_at.is_none()).map(|j| j.legs[0].trip.clone()).collect()
        };
        let low = direct(run(inst.initial_soc));
        let high = direct(run(inst.initial_soc + extra));
        for t in &low {
            prop_assert!(high.contains(t));
        }
    }
}
