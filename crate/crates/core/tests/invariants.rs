use std::f64::consts::TAU;

use proptest::prelude::*;
use weylab::estimators::{window_stats, windowed_average, PairEstimates, PairOrbit};
use weylab::factors::{domination_check, lift_metric};
use weylab::fixed::{ratio_to_f64, WindowMean};
use weylab::relations::{classify_pair, eps_delta_scan, weyl_value, ScanConfig};
use weylab::systems::registry::{parse_point, DynPoint, SystemId};
use weylab::systems::{
    ex61_factor, sturmian_chain, thue_morse_chain, Branch, DyadicInteger, Interval61, IntervalPoint, Level, Odometer,
    Rotation, RotationPoint, ShellPoint, Shells62, Side, Sturmian, SturmianPoint, ThueMorse, ThueMorsePoint,
    ToeplitzPoint,
};
use weylab::{FolnerSchedule, FolnerWindow, FunctionFamily, GroupElement, System, Tolerances};

fn dyadic() -> impl Strategy<Value = DyadicInteger> {
    prop_oneof![
        (-200i64..200).prop_map(DyadicInteger::from_i64),
        (-500i64..500, 1i64..40).prop_map(|(p, q)| DyadicInteger::from_fraction(p, 2 * q + 1).unwrap()),
    ]
}

fn tm_point() -> impl Strategy<Value = ThueMorsePoint> {
    (dyadic(), any::<bool>(), 0u8..=1).prop_map(|(z, primed, b)| ThueMorse::point(z, primed, b))
}

fn sturmian_point() -> impl Strategy<Value = SturmianPoint> {
    (any::<u64>(), any::<bool>()).prop_map(|(p, r)| SturmianPoint::new(p, if r { Side::Right } else { Side::Left }))
}

fn interval_point() -> impl Strategy<Value = IntervalPoint> {
    (0.0f64..=1.0, any::<bool>(), -20i64..20).prop_map(|(y, hat, steps)| IntervalPoint {
        steps,
        ..IntervalPoint::new(y, if hat { Branch::Hat } else { Branch::Check })
    })
}

fn shell_point() -> impl Strategy<Value = ShellPoint> {
    (prop_oneof![Just(Level::Limit), (1u32..=8).prop_map(Level::Finite)], 0.0f64..TAU, -20i64..20)
        .prop_map(|(level, a, steps)| ShellPoint { steps, ..ShellPoint::new(level, a) })
}

fn small_window() -> impl Strategy<Value = FolnerWindow> {
    (-50i64..50, 0i64..120).prop_map(|(lo, len)| FolnerWindow::new(lo, lo + len).unwrap())
}

/// Plain mean of the orbit distances, for comparison with the exact sums.
fn naive_mean<S: System>(sys: &S, x: &S::Point, y: &S::Point, w: &FolnerWindow) -> f64 {
    let s: f64 = w.iter().map(|g| sys.dist(&sys.act(x, GroupElement(g)), &sys.act(y, GroupElement(g)))).sum();
    s / w.len() as f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn estimates_are_symmetric_tm(x in tm_point(), y in tm_point()) {
        let sched = FolnerSchedule::symmetric(6).unwrap();
        prop_assert_eq!(
            PairEstimates::compute(&ThueMorse, &x, &y, &sched),
            PairEstimates::compute(&ThueMorse, &y, &x, &sched)
        );
    }

    #[test]
    fn estimates_are_symmetric_interval(x in interval_point(), y in interval_point()) {
        let sched = FolnerSchedule::one_sided(6).unwrap();
        prop_assert_eq!(
            PairEstimates::compute(&Interval61, &x, &y, &sched),
            PairEstimates::compute(&Interval61, &y, &x, &sched)
        );
    }

    #[test]
    fn window_mean_lies_between_min_and_max(x in shell_point(), y in shell_point(), w in small_window()) {
        let s = window_stats(&Shells62, &x, &y, &w);
        prop_assert!(s.mean.cmp_distance(s.min).is_ge());
        prop_assert!(s.mean.cmp_distance(s.max).is_le());
        prop_assert!(s.min <= s.max);
    }

    #[test]
    fn exact_mean_agrees_with_float_mean(x in sturmian_point(), y in sturmian_point(), w in small_window()) {
        let exact = windowed_average(&Sturmian, &x, &y, &w).value();
        let naive = naive_mean(&Sturmian, &x, &y, &w);
        prop_assert!((exact - naive).abs() <= 1e-12, "{} vs {}", exact, naive);
    }

    #[test]
    fn weyl_dominates_besicovitch(x in sturmian_point(), y in sturmian_point()) {
        for sched in FolnerSchedule::families(7).unwrap() {
            let e = PairEstimates::compute(&Sturmian, &x, &y, &sched);
            prop_assert!(e.weyl.value >= e.besicovitch.value);
            for (w, b) in e.weyl.per_window.iter().zip(&e.besicovitch.per_window) {
                prop_assert!(w.value >= b.value);
            }
            prop_assert!(e.check.value <= e.hat.value);
        }
    }

    #[test]
    fn window_average_triangle_odometer(a in dyadic(), b in dyadic(), c in dyadic(), w in small_window()) {
        let xy = windowed_average(&Odometer, &a, &b, &w).value();
        let yz = windowed_average(&Odometer, &b, &c, &w).value();
        let xz = windowed_average(&Odometer, &a, &c, &w).value();
        prop_assert!(xz <= xy + yz);
    }

    #[test]
    fn window_average_triangle_shells(a in shell_point(), b in shell_point(), c in shell_point(), w in small_window()) {
        let xy = windowed_average(&Shells62, &a, &b, &w).value();
        let yz = windowed_average(&Shells62, &b, &c, &w).value();
        let xz = windowed_average(&Shells62, &a, &c, &w).value();
        prop_assert!(xz <= xy + yz + 1e-12);
    }

    #[test]
    fn translation_consistency(x in tm_point(), y in tm_point(), w in small_window(), g in -80i64..80) {
        let g = GroupElement(g);
        let moved = windowed_average(&ThueMorse, &ThueMorse.act(&x, g), &ThueMorse.act(&y, g), &w);
        let shifted = windowed_average(&ThueMorse, &x, &y, &w.translate(g.0));
        prop_assert_eq!(moved, shifted);
    }

    #[test]
    fn action_is_additive(x in interval_point(), g in -40i64..40, h in -40i64..40) {
        let two = Interval61.act(&Interval61.act(&x, GroupElement(g)), GroupElement(h));
        prop_assert_eq!(two, Interval61.act(&x, GroupElement(g + h)));
    }

    #[test]
    fn verdicts_respect_lattice(x in interval_point(), y in interval_point()) {
        let sched = FolnerSchedule::one_sided(7).unwrap();
        let v = classify_pair(&Interval61, &x, &y, None, &Tolerances::default(), &sched).unwrap();
        prop_assert!(v.respects_lattice());
    }

    #[test]
    fn domination_has_nonnegative_slack(
        a in any::<u64>(), b in any::<u64>(), c in -1.0f64..1.0, half in 0u64..30, m in 1usize..=3
    ) {
        let fam_f = FunctionFamily::new()
            .push(|p: &RotationPoint| (TAU * p.to_f64()).cos())
            .push(|p: &RotationPoint| (TAU * p.to_f64()).sin())
            .push(|p: &RotationPoint| p.to_f64());
        let fam_h = FunctionFamily::new()
            .push(move |p: &RotationPoint| (TAU * p.to_f64() + c).cos())
            .push(move |p: &RotationPoint| c * (TAU * p.to_f64()).sin())
            .push(move |p: &RotationPoint| (c * p.to_f64()).exp() - 1.0);
        let d = domination_check(
            &Rotation::golden(), &RotationPoint(a), &RotationPoint(b), &fam_f, &fam_h,
            &FolnerWindow::symmetric(half), m,
        ).unwrap();
        prop_assert!(d.holds);
        prop_assert!(d.slack >= 0.0);
    }

    #[test]
    fn lifted_metric_dominates_target(x in tm_point(), y in tm_point()) {
        let chain = thue_morse_chain();
        let sched = FolnerSchedule::symmetric(6).unwrap();
        let up = weyl_value(&lift_metric(&chain.phi), &x, &y, &sched);
        let down = weyl_value(chain.phi.target(), &chain.phi.apply(&x), &chain.phi.apply(&y), &sched);
        prop_assert!(down <= up);
    }

    #[test]
    fn lifted_interval_dominates_base(x in interval_point(), y in interval_point()) {
        let pi = ex61_factor();
        let sched = FolnerSchedule::one_sided(6).unwrap();
        let up = weyl_value(&lift_metric(&pi), &x, &y, &sched);
        let down = weyl_value(pi.target(), &pi.apply(&x), &pi.apply(&y), &sched);
        prop_assert!(down <= up);
    }

    #[test]
    fn tm_chain_composes(x in tm_point(), g in -300i64..300) {
        let chain = thue_morse_chain();
        prop_assert_eq!(chain.psi.apply(&chain.phi.apply(&x)), chain.pi.apply(&x));
        let gs = [GroupElement(g)];
        prop_assert!(chain.phi.is_equivariant_on(std::slice::from_ref(&x), &gs));
        prop_assert!(chain.pi.is_equivariant_on(std::slice::from_ref(&x), &gs));
        prop_assert!(chain.psi.is_equivariant_on(&[chain.phi.apply(&x)], &gs));
    }

    #[test]
    fn sturmian_chain_composes(x in sturmian_point(), g in -300i64..300) {
        let chain = sturmian_chain();
        prop_assert_eq!(chain.psi.apply(&chain.phi.apply(&x)), chain.pi.apply(&x));
        prop_assert!(chain.phi.is_equivariant_on(std::slice::from_ref(&x), &[GroupElement(g)]));
    }

    #[test]
    fn negation_differs_everywhere(x in tm_point(), lo in -500i64..500) {
        let (a, b) = (x.coordinates(lo, lo + 64), x.negation().coordinates(lo, lo + 64));
        prop_assert!(a.iter().zip(&b).all(|(p, q)| p != q));
    }

    #[test]
    fn tm_differences_give_toeplitz(x in tm_point(), lo in -500i64..500) {
        let xs = x.coordinates(lo, lo + 65);
        let base: &ToeplitzPoint = x.base();
        prop_assert_eq!(ThueMorsePoint::differences(&xs), base.coordinates(lo, lo + 64));
    }

    #[test]
    fn dyadic_arithmetic(a in dyadic(), b in dyadic(), g in -1000i64..1000) {
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.add(&a.neg()), DyadicInteger::zero());
        prop_assert_eq!(a.add_i64(g), a.add(&DyadicInteger::from_i64(g)));
        let shown = a.to_string();
        prop_assert_eq!(shown.parse::<DyadicInteger>().unwrap(), a);
    }

    #[test]
    fn dyadic_integers_match_i64(n in -1_000_000i64..1_000_000, m in -1_000_000i64..1_000_000) {
        let sum = DyadicInteger::from_i64(n).add(&DyadicInteger::from_i64(m));
        prop_assert_eq!(sum.to_i64(), Some(n + m));
    }

    #[test]
    fn ratio_is_correctly_rounded(num in 0u64..u64::MAX, den in 1u64..u64::MAX) {
        let got = ratio_to_f64(u128::from(num), u128::from(den), 0);
        let want = num as f64 / den as f64;
        // both operands are exact only below 2^53; otherwise compare to one ulp
        if num < (1 << 53) && den < (1 << 53) {
            prop_assert_eq!(got, want);
        } else {
            prop_assert!((got - want).abs() <= 2.0 * f64::EPSILON * want.max(f64::MIN_POSITIVE));
        }
    }

    #[test]
    fn window_means_add(ds in proptest::collection::vec(0.0f64..=1.0, 2..50), split in 1usize..50) {
        let k = split.min(ds.len() - 1);
        let (left, right) = (WindowMean::from_distances(&ds[..k]), WindowMean::from_distances(&ds[k..]));
        prop_assert_eq!(left.sum() + right.sum(), WindowMean::from_distances(&ds).sum());
        let joined = left.checked_add(&right);
        if 2 * k == ds.len() {
            prop_assert_eq!(joined.map(|m| m.sum()), Some(left.sum() + right.sum()));
        } else {
            prop_assert_eq!(joined, None);
        }
    }

    #[test]
    fn scan_matches_definition(
        rows in proptest::collection::vec((0.0f64..=1.0, 0.0f64..=1.0), 0..30),
        modulus in 0.1f64..2.0,
    ) {
        let (dists, values): (Vec<f64>, Vec<f64>) = rows.iter().copied().unzip();
        let scan = ScanConfig { delta_modulus: modulus, ..ScanConfig::default() };
        let got = eps_delta_scan(&dists, &values, &scan);
        let mut want = 0;
        for &eps in &scan.eps_grid {
            want += rows.iter().filter(|(d, v)| *d < modulus * eps && *v > eps).count();
        }
        prop_assert_eq!(got.len(), want);
    }

    #[test]
    fn registry_round_trip(x in prop_oneof![
        tm_point().prop_map(DynPoint::ThueMorse),
        sturmian_point().prop_map(DynPoint::Sturmian),
        interval_point().prop_map(DynPoint::Interval),
        shell_point().prop_map(DynPoint::Shell),
        dyadic().prop_map(DynPoint::Odometer),
        any::<u64>().prop_map(|p| DynPoint::Rotation(RotationPoint(p))),
    ]) {
        let back = parse_point(x.system(), &x.to_string()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn orbit_buffer_matches_pointwise(x in sturmian_point(), y in sturmian_point(), lo in -100i64..100) {
        let orbit = PairOrbit::new(&Sturmian, &x, &y, lo, lo + 40);
        for k in lo..=lo + 40 {
            let g = GroupElement(k);
            prop_assert_eq!(orbit.distance(k), Sturmian.dist(&Sturmian.act(&x, g), &Sturmian.act(&y, g)));
        }
    }
}

#[test]
fn system_ids_parse() {
    for id in SystemId::ALL {
        assert_eq!(id.as_str().parse::<SystemId>().unwrap(), id);
    }
}
