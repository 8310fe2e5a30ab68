use proptest::prelude::*;
use qalg_core::nakayama::{nakayama_t2_composed, restriction_difference, tau_phi_formula};
use qalg_core::verify::lemma_truncation;
use qalg_core::{
    automorphism_suite, check_conditions, complete, compare_frobenius, fixtures, frobenius_nakayama, nakayama_a,
    nakayama_dual, nakayama_t2, verify_lemmas, AlgebraKind, FrobeniusBranch, GaussianRational, Matrix, Params,
};

fn small() -> impl Strategy<Value = GaussianRational> {
    (-3i64..=3, 1i64..=2).prop_map(|(a, b)| GaussianRational::from_ratio(a, b))
}

fn nonzero() -> impl Strategy<Value = GaussianRational> {
    small().prop_filter("nonzero", |x| !num_traits::Zero::is_zero(x))
}

/// `q = 1`, `s = n`, `C = u v^T - v u^T`: rank at most two.
fn rank_two_params() -> impl Strategy<Value = Params> {
    (2usize..=4).prop_flat_map(|n| {
        (prop::collection::vec(small(), n), prop::collection::vec(small(), n)).prop_filter_map(
            "invertible I - C",
            move |(u, v)| {
                let mut c = Matrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        c[(i, j)] = &(&u[i] * &v[j]) - &(&v[i] * &u[j]);
                    }
                }
                let ones: Vec<Vec<i64>> = vec![vec![1; n]; n];
                let rows: Vec<&[i64]> = ones.iter().map(Vec::as_slice).collect();
                let p = Params::new(n, n, Matrix::from_i64(&rows), c).ok()?;
                check_conditions(&p).all_hold().then_some(p)
            },
        )
    })
}

fn example_family() -> impl Strategy<Value = Params> {
    prop_oneof![
        nonzero().prop_map(fixtures::ex2_1_with),
        (small(), nonzero()).prop_map(|(a, b)| fixtures::ex2_2_with(a, b)),
        (small(), nonzero()).prop_map(|(a, b)| fixtures::ex2_3_with(a, b)),
        small().prop_map(fixtures::ex2_4a_with),
    ]
}

fn check_maps(p: &Params) -> Result<(), TestCaseError> {
    let n = p.n();
    let a = nakayama_a(p).unwrap();
    let dual = nakayama_dual(p).unwrap();
    let sign = if n.is_multiple_of(2) { GaussianRational::from(1) } else { GaussianRational::from(-1) };
    prop_assert_eq!(dual.matrix(), &a.matrix().transpose().scale(&sign));
    prop_assert_eq!(nakayama_t2(p).unwrap(), nakayama_t2_composed(p).unwrap());
    prop_assert_eq!(nakayama_t2(p).unwrap().compose(&tau_phi_formula(p).unwrap()), dual.clone());
    prop_assert_eq!(restriction_difference(p).unwrap(), None);
    let rs = complete(&qalg_core::build(p, AlgebraKind::Dual), n + 2).unwrap();
    let nu = frobenius_nakayama(&rs).unwrap();
    prop_assert_eq!(compare_frobenius(&dual, &nu), Some(FrobeniusBranch::SignTwist));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rank_two_family(p in rank_two_params()) {
        check_maps(&p)?;
        prop_assert!(automorphism_suite(&p, lemma_truncation(p.n())).unwrap().all_pass());
    }

    #[test]
    fn example_families(p in example_family()) {
        prop_assume!(check_conditions(&p).all_hold());
        check_maps(&p)?;
        prop_assert!(verify_lemmas(&p, lemma_truncation(p.n())).unwrap().all_pass());
    }
}
