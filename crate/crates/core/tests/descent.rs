use num_integer::Integer;
use perfiso_core::descent::{
    branch_inputs, branch_odd_case, case_split, coprimality_claim_check, descend_even_branch,
    identities, lift_to_1_10_9, reduce_case2, CaseSplit,
};
use perfiso_core::quartic::eval_form;
use perfiso_core::{ExactInt, Execution, QuarticForm};

fn int(v: i64) -> ExactInt {
    ExactInt::from(v)
}

fn grid(lo: i64, hi: i64) -> impl Iterator<Item = (ExactInt, ExactInt)> {
    (lo..=hi).flat_map(move |a| (lo..=hi).map(move |b| (int(a), int(b))))
}

#[test]
fn lift_identity_on_full_grid() {
    assert!(grid(-100, 100).all(|(a, b)| identities::lift(&a, &b)));
}

#[test]
fn case2_scaling_on_full_grid() {
    assert!(grid(-50, 50).all(|(x1, y)| identities::case2_scaling(&x1, &y)));
}

#[test]
fn gcd_quotient_coprime_on_full_grid() {
    let mut coprime = 0;
    for (a, b) in grid(1, 200) {
        if a.gcd(&b) == int(1) {
            coprime += 1;
            assert!(identities::gcd_quotient_coprime(&a, &b), "({a}, {b})");
        }
    }
    assert!(coprime > 20_000);
}

#[test]
fn decomposition_on_full_grid() {
    assert!(grid(-50, 50).all(|(x, y)| identities::decomposition(&x, &y)));
}

#[test]
fn odd_branch_identity_on_full_grid() {
    assert!(grid(-100, 100).all(|(x, y)| identities::odd_branch(&x, &y)));
}

#[test]
fn identities_reject_a_perturbed_form() {
    // guard against an identity checker that is trivially true
    let x = int(2);
    let y = int(1);
    let wrong = eval_form(&QuarticForm::new(1, 10, 8), &x, &y);
    assert_ne!(wrong, eval_form(&QuarticForm::lifted(), &x, &y));
}

#[test]
fn branch_preconditions_are_vacuous_to_500() {
    let inputs = branch_inputs(500, Execution::Parallel).unwrap();
    assert!(inputs.even_branch.is_empty());
    assert!(inputs.odd_branch.is_empty());

    // independent scan: nothing in the box is a square of the lifted form at all
    let mut admissible = 0u64;
    for x in 1..=500i128 {
        for y in (3..=500i128).step_by(3) {
            if x.gcd(&y) != 1 {
                continue;
            }
            admissible += 1;
            let v = x.pow(4) + 10 * x * x * y * y + 9 * y.pow(4);
            let r = num_integer::Roots::sqrt(&v);
            assert_ne!(r * r, v, "({x}, {y})");
        }
    }
    assert!(admissible > 30_000);
}

#[test]
fn branches_reject_non_solutions_with_step_names() {
    let e = descend_even_branch(&int(2), &int(3), &int(5)).unwrap_err();
    assert!(e.step().unwrap().contains("precondition"), "{e}");
    let e = branch_odd_case(&int(1), &int(6), &int(5)).unwrap_err();
    assert!(e.step().unwrap().contains("precondition"), "{e}");
}

#[test]
fn lift_maps_isosceles_roots_onto_the_lifted_form() {
    for a in -30i64..=30 {
        for b in -30i64..=30 {
            let (a, b) = (int(a), int(b));
            let v = eval_form(&QuarticForm::isosceles(), &a, &b);
            if v < int(0) {
                continue;
            }
            let g = num_integer::Roots::sqrt(&v);
            if &g * &g == v {
                let s = lift_to_1_10_9(&a, &b, &g).unwrap();
                assert!(s.satisfies(&QuarticForm::lifted()));
            } else {
                assert!(lift_to_1_10_9(&a, &b, &g).is_err());
            }
        }
    }
}

#[test]
fn case_split_and_claim_cover_admissible_pairs() {
    for x in 1..=120i64 {
        for y in 1..=120i64 {
            if x.gcd(&y) != 1 {
                continue;
            }
            let split = case_split(&int(x), &int(y)).unwrap();
            match (x % 3 == 0, y % 3 == 0) {
                (_, true) => assert_eq!(split, CaseSplit::DivYBy3),
                (true, false) => assert_eq!(split, CaseSplit::DivXBy3),
                _ => assert_eq!(split, CaseSplit::Mod3Contradiction),
            }
            if y % 3 == 0 && (x + y) % 2 == 1 {
                assert_eq!(
                    coprimality_claim_check(&int(x), &int(y)).unwrap().gcd,
                    int(1)
                );
            }
        }
    }
}

#[test]
fn case2_reduction_rejects_fake_triples() {
    let e = reduce_case2(&int(3), &int(1), &int(5)).unwrap_err();
    assert_eq!(e.step(), Some("case2-scaling"));
    let e = reduce_case2(&int(2), &int(1), &int(5)).unwrap_err();
    assert_eq!(e.step(), Some("case2-scaling"));
}
