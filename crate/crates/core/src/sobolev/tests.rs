use super::*;
use crate::fourier::{forward_transform, random_band_limited, s_p_norm, AmplitudeLaw, ENorm};
use crate::group::{make_group, GroupElement, GroupSpec};
use alloc::vec;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn z2() -> Group {
    make_group(&GroupSpec::Cyclic { n: 2 }).unwrap()
}

#[test]
fn canonical_weights() {
    let circle = make_group(&GroupSpec::Circle { band: 3 }).unwrap();
    let w = WeightSequence::canonical(&circle);
    assert_eq!(w.get(&Label::Character(-3)), Some(3.0));
    assert_eq!(w.get(&Label::Character(0)), Some(0.0));
    let su2 = make_group(&GroupSpec::su2(2)).unwrap();
    let w = WeightSequence::canonical(&su2);
    assert_eq!(w.get(&Label::Spin(2)), Some(2.0_f64.sqrt()));
    assert_eq!(w.get(&Label::Spin(4)), Some(6.0_f64.sqrt()));
    let z = make_group(&GroupSpec::Cyclic { n: 5 }).unwrap();
    assert!(WeightSequence::canonical(&z)
        .entries()
        .iter()
        .all(|e| e.1 == 0.0));
}

#[test]
fn weight_table_errors() {
    let g = z2();
    assert_eq!(
        WeightSequence::from_table(g.window(), [("0", 0.0)]),
        Err(Error::MissingWeight("1".into()))
    );
    assert!(matches!(
        WeightSequence::from_table(g.window(), [("0", 0.0), ("1", -1.0)]),
        Err(Error::InvalidWeight { .. })
    ));
    assert!(matches!(
        WeightSequence::from_table(g.window(), [("0", 0.0), ("7", 1.0)]),
        Err(Error::UnknownLabel(_))
    ));
    let coef = random_band_limited(1, &g, 1, AmplitudeLaw::Gaussian);
    let other = WeightSequence::zero(make_group(&GroupSpec::Cyclic { n: 3 }).unwrap().window());
    assert!(h_s_norm(&coef, &WeightSequence::zero(g.window()), -0.5).is_err());
    // Z3 weights cover labels 0..2, so a Z2 window is covered; the reverse is not.
    assert!(h_s_norm(&coef, &other, 1.0).is_ok());
    let z3c = random_band_limited(
        1,
        &make_group(&GroupSpec::Cyclic { n: 3 }).unwrap(),
        1,
        AmplitudeLaw::Gaussian,
    );
    assert_eq!(
        h_s_norm(&z3c, &WeightSequence::zero(g.window()), 1.0),
        Err(Error::MissingWeight("2".into()))
    );
}

#[test]
fn h_s_norm_examples() {
    // Trivial block only, gamma(trivial) = 0: the norm is ||v|| for every s.
    let g = make_group(&GroupSpec::Cyclic { n: 4 }).unwrap();
    let v = [c(3.0, 0.0), c(0.0, -4.0)];
    let mut coef = FourierCoefficients::zeros(g.window(), 2, ENorm::EUCLIDEAN);
    coef.entry_mut(0, 0, 0).copy_from_slice(&v);
    let zero = WeightSequence::zero(g.window());
    for s in [0.0, 0.5, 1.0, 7.0] {
        assert!((h_s_norm(&coef, &zero, s).unwrap() - 5.0).abs() < 1e-15);
    }

    // Single chi_1 block, gamma(chi_1) = 1, s = 2: ((1 + 1)^2 ||v||^2)^(1/2) = 2 ||v||.
    let mut coef = FourierCoefficients::zeros(g.window(), 2, ENorm::EUCLIDEAN);
    coef.entry_mut(1, 0, 0).copy_from_slice(&v);
    let gamma =
        WeightSequence::from_table(g.window(), [("0", 0.0), ("1", 1.0), ("2", 0.0), ("3", 0.0)])
            .unwrap();
    assert!((h_s_norm(&coef, &gamma, 2.0).unwrap() - 10.0).abs() < 1e-14);
}

#[test]
fn h_zero_is_s2_norm_bitwise() {
    for spec in [
        GroupSpec::S3,
        GroupSpec::Circle { band: 6 },
        GroupSpec::su2(3),
    ] {
        let g = make_group(&spec).unwrap();
        let gamma = WeightSequence::canonical(&g);
        for seed in 0..10 {
            let coef = random_band_limited(seed, &g, 3, AmplitudeLaw::Gaussian);
            assert_eq!(
                h_s_norm(&coef, &gamma, 0.0).unwrap().to_bits(),
                s_p_norm(&coef, 2.0).unwrap().to_bits()
            );
        }
    }
}

#[test]
fn l_p_norm_examples() {
    let circle = make_group(&GroupSpec::Circle { band: 4 }).unwrap();
    let v = vec![c(1.0, 2.0), c(-2.0, 0.0)];
    let k = ENorm::EUCLIDEAN.norm(&v);
    let f = VectorFunction::from_fn(&circle, 2, ENorm::EUCLIDEAN, |_| v.clone()).unwrap();
    for p in [1.0, 1.5, 2.0, 3.0, 10.0] {
        assert!((l_p_norm(&f, &circle, p).unwrap() - k).abs() < 1e-14);
    }
    let chi = VectorFunction::from_fn(&circle, 1, ENorm::EUCLIDEAN, |x| {
        let GroupElement::Angle(t) = x else { panic!() };
        vec![C64::from_polar(1.0, *t)]
    })
    .unwrap();
    assert!((l_p_norm(&chi, &circle, 2.0).unwrap() - 1.0).abs() < 1e-14);
    assert!(matches!(
        l_p_norm(&chi, &circle, 0.5),
        Err(Error::InvalidExponent(_))
    ));
    assert!(matches!(
        l_p_norm(&chi, &circle, f64::INFINITY),
        Err(Error::InvalidExponent(_))
    ));
}

#[test]
fn l2_matches_s2_on_random_functions() {
    let g = make_group(&GroupSpec::su2(3)).unwrap();
    for seed in 0..5 {
        let coef = random_band_limited(seed, &g, 3, AmplitudeLaw::Gaussian);
        let f = VectorFunction::spectral(coef.clone());
        let l2 = l_p_norm(&f, &g, 2.0).unwrap();
        assert!((l2 - s_p_norm(&coef, 2.0).unwrap()).abs() <= 1e-9 * (1.0 + l2));
    }
}

#[test]
fn sup_norm_examples() {
    let g = make_group(&GroupSpec::Circle { band: 3 }).unwrap();
    let v = vec![c(0.0, 1.0)];
    let constant = VectorFunction::from_fn(&g, 1, ENorm::EUCLIDEAN, |_| v.clone()).unwrap();
    assert_eq!(sup_norm(&constant, &g, 0, 0).unwrap(), 1.0);

    // (1 + e^{ix}): two nonzero coefficients, sup 2 at x = 0.
    let mut coef = FourierCoefficients::zeros(g.window(), 1, ENorm::EUCLIDEAN);
    coef.entry_mut(0, 0, 0)[0] = c(1.0, 0.0);
    let one = g.window().position(&Label::Character(1)).unwrap();
    coef.entry_mut(one, 0, 0)[0] = c(1.0, 0.0);
    let f = VectorFunction::spectral(coef);
    let sup = sup_norm(&f, &g, DEFAULT_EXTRA_SAMPLES, 3).unwrap();
    assert!((2.0 - 1e-3..=2.0 + 1e-12).contains(&sup), "{sup}");

    // Finite group: every element is a node, so the sup is exact.
    let z = make_group(&GroupSpec::Cyclic { n: 6 }).unwrap();
    let f = VectorFunction::from_fn(&z, 1, ENorm::EUCLIDEAN, |x| {
        let GroupElement::Finite(i) = x else { panic!() };
        vec![c(*i as f64, 0.0)]
    })
    .unwrap();
    assert_eq!(sup_norm(&f, &z, 0, 0).unwrap(), 5.0);
}

/// Direct two-term and three-term sums for the constants, written out by hand.
#[test]
fn constant_examples() {
    let g = z2();
    let zero = WeightSequence::zero(g.window());
    for s in [0.0, 1.0, 3.5] {
        let k = embedding_constant_c(&zero, s, g.window()).unwrap();
        assert!((k.value - 2.0_f64.sqrt()).abs() < 1e-15);
        assert_eq!(k.verdict, Verdict::FiniteDual);
    }
    let gamma = WeightSequence::from_table(g.window(), [("0", 0.0), ("1", 1.0)]).unwrap();
    let k = embedding_constant_c(&gamma, 1.0, g.window()).unwrap();
    assert!((k.value - 1.224_744_871_391_589).abs() < 1e-12);

    let su2 = make_group(&GroupSpec::su2(1)).unwrap();
    let gamma = WeightSequence::canonical(&su2);
    let k = embedding_constant_c(&gamma, 2.0, su2.window()).unwrap();
    assert!((k.value - 2.0).abs() < 1e-12);

    let gamma = WeightSequence::from_table(g.window(), [("0", 0.0), ("1", 1.0)]).unwrap();
    let lq = lq_bound_constant(&gamma, 2.0, 1.0, g.window()).unwrap();
    assert!((lq - 1.25_f64.powf(0.25)).abs() < 1e-12);
    assert!((lq - 1.0574).abs() < 1e-4);
    let trivial_only = make_group(&GroupSpec::Cyclic { n: 1 }).unwrap();
    let lq = lq_bound_constant(
        &WeightSequence::zero(trivial_only.window()),
        3.0,
        1.0,
        trivial_only.window(),
    )
    .unwrap();
    assert_eq!(lq, 1.0);
}

#[test]
fn lq_constant_is_power_of_c() {
    let g = make_group(&GroupSpec::su2(5)).unwrap();
    let gamma = WeightSequence::canonical(&g);
    for (s, t) in [(1.0, 2.0), (1.0, 3.0), (0.5, 2.0), (0.2, 4.5)] {
        let lq = lq_bound_constant(&gamma, t, s, g.window()).unwrap();
        let c = embedding_constant_c(&gamma, t, g.window()).unwrap().value;
        assert!((lq - c.powf(s / t)).abs() <= 1e-12 * lq);
    }
    assert!(lq_bound_constant(&gamma, 1.0, 1.0, g.window()).is_err());
    assert!(lq_bound_constant(&gamma, 2.0, 0.0, g.window()).is_err());
}

#[test]
fn exponent_examples() {
    let p = exponents(1.0, 2.0).unwrap();
    assert!((p.alpha_conj - 4.0).abs() < 1e-15 && (p.alpha - 4.0 / 3.0).abs() < 1e-15);
    let p = exponents(1.0, 3.0).unwrap();
    assert!((p.alpha_conj - 3.0).abs() < 1e-15 && (p.alpha - 1.5).abs() < 1e-15);
    assert!(matches!(
        exponents(2.0, 2.0),
        Err(Error::InvalidPair { .. })
    ));
    assert!(matches!(
        exponents(3.0, 2.0),
        Err(Error::InvalidPair { .. })
    ));
    assert!(matches!(
        exponents(0.0, 2.0),
        Err(Error::InvalidPair { .. })
    ));
}

#[test]
fn summability_verdicts_on_su2() {
    let g = make_group(&GroupSpec::su2(20)).unwrap();
    let w = g.window();
    let zero = WeightSequence::zero(w);
    let canon = WeightSequence::canonical(&g);

    let rep = summability_check(&zero, 1.0, w).unwrap();
    assert_eq!(rep.verdict, Verdict::Diverging);
    assert!(rep.ratios.iter().all(|&r| r > 1.0));

    // d^3 / (1 + j(j+1))^s ~ 8 j^(3 - 2s): constant-order at s = 3/2,
    // harmonic at s = 2, summable beyond.
    assert_eq!(
        summability_check(&canon, 1.5, w).unwrap().verdict,
        Verdict::Diverging
    );
    assert_eq!(
        summability_check(&canon, 2.0, w).unwrap().verdict,
        Verdict::Diverging
    );
    let rep = summability_check(&canon, 3.0, w).unwrap();
    assert_eq!(rep.verdict, Verdict::PlausiblySummable);
    assert!((rep.decay_exponent.unwrap() - 3.0).abs() < 0.3);
    assert_eq!(
        summability_check(&canon, 4.0, w).unwrap().verdict,
        Verdict::PlausiblySummable
    );

    // Independent direct sum of the band terms.
    let rep = summability_check(&canon, 3.0, w).unwrap();
    for (b, t) in rep.bands.iter().zip(&rep.terms) {
        let j = *b as f64 / 2.0;
        let d = 2.0 * j + 1.0;
        let expect = d * d * d / (1.0 + j * (j + 1.0)).powi(3);
        assert!((t - expect).abs() <= 1e-13 * expect);
    }
    assert!(
        (rep.partial_sums.last().unwrap()
            - embedding_constant_c(&canon, 3.0, w).unwrap().value.powi(2))
        .abs()
            < 1e-12
    );
}

#[test]
fn summability_on_circle_and_short_windows() {
    let g = make_group(&GroupSpec::Circle { band: 30 }).unwrap();
    let canon = WeightSequence::canonical(&g);
    // (1 + n^2)^(-s) summable iff 2s > 1.
    assert_eq!(
        summability_check(&canon, 0.5, g.window()).unwrap().verdict,
        Verdict::Diverging
    );
    assert_eq!(
        summability_check(&canon, 1.0, g.window()).unwrap().verdict,
        Verdict::PlausiblySummable
    );
    let tiny = make_group(&GroupSpec::Circle { band: 0 }).unwrap();
    assert_eq!(
        summability_check(&WeightSequence::zero(tiny.window()), 1.0, tiny.window())
            .unwrap()
            .verdict,
        Verdict::Inconclusive
    );
    let su2 = make_group(&GroupSpec::su2(1)).unwrap();
    assert_eq!(
        summability_check(&WeightSequence::zero(su2.window()), 1.0, su2.window())
            .unwrap()
            .verdict,
        Verdict::Diverging
    );
}

#[test]
fn embedding_constant_nonincreasing_in_s() {
    let g = make_group(&GroupSpec::su2(4)).unwrap();
    let canon = WeightSequence::canonical(&g);
    let mut last = f64::INFINITY;
    for k in 0..40 {
        let s = k as f64 * 0.25;
        let v = embedding_constant_c(&canon, s, g.window()).unwrap().value;
        assert!(v <= last);
        last = v;
    }
}

fn su2_group() -> &'static Group {
    use std::sync::OnceLock;
    static G: OnceLock<Group> = OnceLock::new();
    G.get_or_init(|| make_group(&GroupSpec::su2(3)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn h_s_norm_monotone_in_s(seed in 0u64..10_000, s in 0.0f64..4.0, dt in 0.0f64..4.0) {
        let g = su2_group();
        let gamma = WeightSequence::canonical(g);
        let coef = random_band_limited(seed, g, 2, AmplitudeLaw::Gaussian);
        let lo = h_s_norm(&coef, &gamma, s).unwrap();
        let hi = h_s_norm(&coef, &gamma, s + dt).unwrap();
        prop_assert!(lo <= hi + 1e-12);
    }

    #[test]
    fn h_s_norm_is_homogeneous(seed in 0u64..10_000, s in 0.0f64..3.0, re in -5.0f64..5.0, im in -5.0f64..5.0) {
        let g = su2_group();
        let gamma = WeightSequence::canonical(g);
        let coef = random_band_limited(seed, g, 2, AmplitudeLaw::Gaussian);
        let a = C64::new(re, im);
        let lhs = h_s_norm(&coef.scaled(a), &gamma, s).unwrap();
        let rhs = a.norm() * h_s_norm(&coef, &gamma, s).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs));
    }

    #[test]
    fn l2_below_h_s(seed in 0u64..10_000, s in 0.0f64..3.0) {
        let g = su2_group();
        let gamma = WeightSequence::canonical(g);
        let coef = random_band_limited(seed, g, 2, AmplitudeLaw::Gaussian);
        let f = VectorFunction::spectral(coef.clone());
        let l2 = l_p_norm(&f, g, 2.0).unwrap();
        prop_assert!(l2 <= h_s_norm(&coef, &gamma, s).unwrap() * (1.0 + 1e-9));
        let back = forward_transform(&f, g).unwrap();
        prop_assert!((s_p_norm(&back, 2.0).unwrap() - l2).abs() <= 1e-9 * (1.0 + l2));
    }
}
