use proptest::prelude::*;
use softcs_core::semiring::instance_catalog;
use softcs_core::softcon::{laws, Assignment, Name, SoftConstraint};
use softcs_testkit::{gen, oracle, rng};

fn holds(check: Result<Option<bool>, softcs_core::softcon::ConstraintError>) -> bool {
    check.unwrap() != Some(false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn hide_perm_fuse(seed in any::<u64>()) {
        let mut r = rng(seed);
        for &k in instance_catalog() {
            let d = gen::domain(&mut r, 3);
            let pool = 4;
            let c = gen::constraint(&mut r, k, &d, pool, 3);
            let e = gen::constraint(&mut r, k, &d, pool, 3);
            let (x, y) = (gen::name(&mut r, pool), gen::name(&mut r, pool));
            let (rho, sigma) = (gen::permutation(&mut r, pool), gen::permutation(&mut r, pool));

            prop_assert!(holds(laws::fuse(&x, &y, &c)));
            prop_assert!(holds(laws::hide_unit(&x, k, &d)));
            prop_assert!(holds(laws::hide_commutes(&x, &y, &c)));
            prop_assert!(holds(laws::hide_combine(&x, &c, &e)));
            prop_assert!(holds(laws::hide_sum(&x, &c, &e)));
            prop_assert!(holds(laws::hide_rename(&x, &y, &c)));
            prop_assert!(holds(laws::perm_constants(&rho, k, &d)));
            prop_assert!(holds(laws::perm_combine(&rho, &c, &e)));
            prop_assert!(holds(laws::perm_sum(&rho, &c, &e)));
            prop_assert!(holds(laws::perm_hide(&rho, &x, &c)));
            prop_assert!(holds(laws::perm_action(&rho, &sigma, &c)));
            prop_assert!(holds(laws::perm_support(&rho, &c)));
        }
    }

    #[test]
    fn eval_ignores_names_outside_support(seed in any::<u64>()) {
        let mut r = rng(seed);
        for &k in instance_catalog() {
            let d = gen::domain(&mut r, 3);
            let c = gen::constraint(&mut r, k, &d, 4, 3);
            let all: Vec<Name> = gen::NAMES.iter().map(|n| Name::from(*n)).collect();
            for row in oracle::assignments(&all[..5], d.values()) {
                let full: Assignment = row.iter().cloned().collect();
                let support = c.support();
                let restricted: Assignment = row
                    .iter()
                    .filter(|(n, _)| support.contains(n) || c.declared_support().contains(n))
                    .cloned()
                    .collect();
                prop_assert_eq!(c.eval(&full).unwrap(), c.eval(&restricted).unwrap());
            }
        }
    }

    #[test]
    fn minimal_support_is_exact(seed in any::<u64>()) {
        let mut r = rng(seed);
        for &k in instance_catalog() {
            let d = gen::domain(&mut r, 3);
            let c = gen::constraint(&mut r, k, &d, 4, 3);
            let m = c.minimize();
            prop_assert!(c.equivalent(&m).unwrap());
            prop_assert_eq!(m.declared_support().iter().cloned().collect::<std::collections::BTreeSet<_>>(), c.support());
            // a name outside the support is invisible to hiding
            for n in gen::NAMES {
                let n = Name::from(n);
                if !c.support().contains(&n) {
                    prop_assert!(c.hide(&n).equivalent(&c).unwrap());
                }
            }
        }
    }
}

#[test]
fn combine_requires_matching_semirings() {
    let d = softcs_core::Domain::new(["a"]).unwrap();
    let a = SoftConstraint::unit(softcs_core::SemiringKind::Csp, d.clone());
    let b = SoftConstraint::unit(softcs_core::SemiringKind::Wcsp, d);
    assert!(a.combine(&b).is_err());
    assert!(a.csum(&b).is_err());
}
