use std::collections::HashSet;

use ntarp::bounds::{covering_number_bound, regularized_incomplete_beta};
use ntarp::tarp::{self, best_threshold, dichotomy_chain, empirical_error, Classifier, Dichotomy};
use ntarp::{Dataset, Label};
use proptest::prelude::*;

fn label(b: bool) -> Label {
    if b {
        Label::Pos
    } else {
        Label::Neg
    }
}

fn stump_errors(z: &[f64], y: &[Label], tau: f64, s: f64) -> usize {
    z.iter()
        .zip(y)
        .filter(|(v, l)| s * if **v >= tau { 1.0 } else { -1.0 } != l.as_f64())
        .count()
}

fn brute_force_threshold(z: &[f64], y: &[Label]) -> usize {
    let mut cuts: Vec<f64> = z.to_vec();
    cuts.push(f64::NEG_INFINITY);
    cuts.push(f64::INFINITY);
    cuts.iter()
        .flat_map(|&t| [stump_errors(z, y, t, 1.0), stump_errors(z, y, t, -1.0)])
        .min()
        .unwrap()
}

/// Composite Simpson for `I_x(a, b)` after `t = sin²θ`, which turns the
/// integrand into `2 sin^{2a−1}θ cos^{2b−1}θ`, smooth for `a, b >= 1/2`.
fn beta_by_quadrature(x: f64, a: f64, b: f64) -> f64 {
    let f = |th: f64| 2.0 * th.sin().powf(2.0 * a - 1.0) * th.cos().powf(2.0 * b - 1.0);
    let simpson = |hi: f64| {
        let m = 20_000;
        let h = hi / m as f64;
        let mut s = f(0.0) + f(hi);
        for j in 1..m {
            s += if j % 2 == 1 { 4.0 } else { 2.0 } * f(j as f64 * h);
        }
        s * h / 3.0
    };
    simpson(x.sqrt().asin()) / simpson(std::f64::consts::FRAC_PI_2)
}

#[test]
fn incomplete_beta_matches_quadrature() {
    let shapes = [0.5, 1.0, 1.5, 2.0, 5.0];
    for i in 0..=14 {
        let x = 0.01 + 0.07 * i as f64;
        for &a in &shapes {
            for &b in &shapes {
                let got = regularized_incomplete_beta(x, a, b).unwrap();
                let want = beta_by_quadrature(x, a, b);
                assert!(
                    (got - want).abs() < 1e-9,
                    "I_{x}({a},{b}) = {got}, quadrature {want}"
                );
            }
        }
    }
}

/// Smallest number of balls `{v : hamming(v, c) <= i}` with centres in the
/// set itself that cover the set, by exhaustive search over subsets.
fn min_cover(set: &[Dichotomy], i: usize) -> usize {
    let m = set.len();
    let masks: Vec<u32> = set
        .iter()
        .map(|c| {
            set.iter()
                .enumerate()
                .filter(|(_, v)| c.hamming(v) <= i)
                .fold(0u32, |acc, (j, _)| acc | (1 << j))
        })
        .collect();
    let full = (1u32 << m) - 1;
    (1u32..=full)
        .filter(|sel| {
            (0..m)
                .filter(|j| sel & (1 << j) != 0)
                .fold(0, |acc, j| acc | masks[j])
                == full
        })
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

#[test]
fn covering_numbers_match_exhaustive_cover() {
    for n in 1..=7usize {
        let rows: Vec<Vec<f64>> = (0..n).map(|j| vec![j as f64]).collect();
        let data = Dataset::new(rows, vec![Label::Pos; n]).unwrap();
        let mut set: Vec<Dichotomy> = Vec::new();
        for s in [Label::Pos, Label::Neg] {
            for d in dichotomy_chain(&[1.0], &data, s).unwrap() {
                if !set.contains(&d) {
                    set.push(d);
                }
            }
        }
        assert_eq!(set.len(), 2 * n);
        for i in 1..=n {
            let want = min_cover(&set, i);
            let got = covering_number_bound(n as u64, i as u64).unwrap();
            assert_eq!(got as usize, want, "N = {n}, i = {i}");
        }
    }
}

fn dataset_strategy(max_n: usize, dim: usize) -> impl Strategy<Value = Dataset> {
    (2..=max_n).prop_flat_map(move |n| {
        (
            prop::collection::vec(prop::collection::vec(-4i32..=4, dim), n),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(rows, labels)| {
                Dataset::new(
                    rows.into_iter()
                        .map(|r| r.into_iter().map(|v| v as f64 * 0.5).collect())
                        .collect(),
                    labels.into_iter().map(label).collect(),
                )
                .unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn threshold_matches_brute_force(
        pairs in prop::collection::vec((-5i32..=5, any::<bool>()), 1..20)
    ) {
        let z: Vec<f64> = pairs.iter().map(|p| p.0 as f64).collect();
        let y: Vec<Label> = pairs.iter().map(|p| label(p.1)).collect();
        let fit = best_threshold(&z, &y).unwrap();
        prop_assert_eq!(fit.errors, brute_force_threshold(&z, &y));
        prop_assert_eq!(stump_errors(&z, &y, fit.threshold, fit.orientation.as_f64()), fit.errors);
    }

    #[test]
    fn fit_reports_its_own_training_error(data in dataset_strategy(15, 3), k in 1usize..=2, seed in any::<u64>()) {
        let model = tarp::fit(&data, k, 40, seed).unwrap();
        let recomputed = empirical_error(&model, &data).unwrap();
        prop_assert_eq!(recomputed, model.train_error());
        prop_assert_eq!(model.per_projection_errors.len(), 40);
        let best = *model.per_projection_errors.iter().min().unwrap() as usize;
        prop_assert_eq!(model.stump.error_count, best);
        prop_assert_eq!(model.per_projection_errors[model.best_index] as usize, best);
    }

    #[test]
    fn more_projections_never_hurt(data in dataset_strategy(12, 2), seed in any::<u64>(), n in 1usize..60) {
        let small = tarp::fit(&data, 1, n, seed).unwrap();
        let large = tarp::fit(&data, 1, n + 1100, seed).unwrap();
        prop_assert!(large.stump.error_count <= small.stump.error_count);
        prop_assert_eq!(&large.per_projection_errors[..n], &small.per_projection_errors[..]);
        if large.best_index < n {
            prop_assert_eq!(&large.stump, &small.stump);
        }
    }

    #[test]
    fn joint_rescaling_keeps_predictions(data in dataset_strategy(10, 2), seed in any::<u64>(), e in -6i32..=6) {
        let model = tarp::fit(&data, 2, 25, seed).unwrap();
        let mut scaled = model.clone();
        let c = 2f64.powi(e);
        scaled.stump.direction.iter_mut().for_each(|v| *v *= c);
        scaled.stump.threshold *= c;
        for x in data.rows() {
            prop_assert_eq!(model.predict(x).unwrap(), scaled.predict(x).unwrap());
        }
    }
}

#[test]
fn separable_line_reaches_zero_with_order_one() {
    let rows: Vec<Vec<f64>> = (0..12)
        .map(|j| vec![(j as f64 * 0.7).cos() * 2.0, (j as f64 * 1.3).sin() * 2.0])
        .collect();
    let labels = rows
        .iter()
        .map(|r| Label::of_value(r[0] - 0.5 * r[1] - 0.1))
        .collect();
    let data = Dataset::new(rows, labels).unwrap();
    let model = tarp::fit(&data, 1, 20_000, 3).unwrap();
    assert_eq!(model.stump.error_count, 0);
}

#[test]
fn chain_union_has_two_n_members_for_distinct_projections() {
    let rows: Vec<Vec<f64>> = (0..9)
        .map(|j| vec![j as f64, (j * j) as f64 * 0.1])
        .collect();
    let data = Dataset::new(rows, vec![Label::Neg; 9]).unwrap();
    let dir = [0.6, 0.8];
    let mut union = HashSet::new();
    for s in [Label::Pos, Label::Neg] {
        let chain = dichotomy_chain(&dir, &data, s).unwrap();
        assert_eq!(chain.len(), 10);
        union.extend(chain.into_iter().map(|d| d.0));
    }
    assert_eq!(union.len(), 18);
}
