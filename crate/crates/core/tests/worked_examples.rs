//! Worked transform examples and transform algebra, through the public API only.

use proptest::prelude::*;
use sobolev_core::fourier::{
    forward_transform, inverse_transform, random_band_limited, AmplitudeLaw, ENorm,
    FourierCoefficients, VectorFunction,
};
use sobolev_core::group::{make_group, Group, GroupSpec};
use sobolev_core::C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn only_block(coeffs: &FourierCoefficients, r: usize, i: usize, j: usize, v: &[C64]) -> f64 {
    let mut worst = 0.0_f64;
    for rr in 0..coeffs.window().len() {
        let d = coeffs.window().irreps()[rr].dim;
        for ii in 0..d {
            for jj in 0..d {
                let got = coeffs.entry(rr, ii, jj);
                let want = if (rr, ii, jj) == (r, i, j) {
                    v.to_vec()
                } else {
                    vec![C64::new(0.0, 0.0); v.len()]
                };
                worst = worst.max(max_diff(got, &want));
            }
        }
    }
    worst
}

#[test]
fn constant_on_z4_lives_on_the_trivial_irrep() {
    let g = make_group(&GroupSpec::Cyclic { n: 4 }).unwrap();
    let v = [c(1.0, 0.0), c(0.0, 2.0)];
    let f = VectorFunction::from_fn(&g, 2, ENorm::EUCLIDEAN, |_| v.to_vec()).unwrap();
    let coeffs = forward_transform(&f, &g).unwrap();
    let trivial = g.window().find("0").unwrap();
    assert!(only_block(&coeffs, trivial, 0, 0, &v) < 1e-15);
}

#[test]
fn su2_matrix_coefficient_picks_out_half_of_v() {
    let g = make_group(&GroupSpec::Su2 {
        band: 2.0,
        half_integers: true,
    })
    .unwrap();
    let half = g.window().find("1/2").unwrap();
    let label = g.window().irreps()[half].label.clone();
    let v = [c(2.0, -1.0), c(0.5, 0.25), c(0.0, -3.0)];
    let f = VectorFunction::from_fn(&g, 3, ENorm::EUCLIDEAN, |x| {
        let u = g.matrix_coefficient(&label, 1, 1, x).unwrap();
        v.iter().map(|z| z * u).collect()
    })
    .unwrap();
    let coeffs = forward_transform(&f, &g).unwrap();
    let expected: Vec<C64> = v.iter().map(|z| z / 2.0).collect();
    assert!(only_block(&coeffs, half, 0, 0, &expected) < 1e-12);
}

fn group(idx: usize) -> Group {
    let spec = [
        GroupSpec::Cyclic { n: 6 },
        GroupSpec::S3,
        GroupSpec::Circle { band: 5 },
        GroupSpec::su2(2),
    ][idx]
        .clone();
    make_group(&spec).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn forward_transform_is_linear(idx in 0usize..4, s1 in any::<u64>(), s2 in any::<u64>(),
                                   a in (-3.0..3.0f64, -3.0..3.0f64), b in (-3.0..3.0f64, -3.0..3.0f64)) {
        let g = group(idx);
        let (a, b) = (c(a.0, a.1), c(b.0, b.1));
        let x = random_band_limited(s1, &g, 2, AmplitudeLaw::Gaussian);
        let y = random_band_limited(s2, &g, 2, AmplitudeLaw::Gaussian);
        let sx = VectorFunction::spectral(x.clone()).samples(&g).unwrap().into_owned();
        let sy = VectorFunction::spectral(y.clone()).samples(&g).unwrap().into_owned();
        let mix: Vec<C64> = sx.iter().zip(&sy).map(|(p, q)| a * p + b * q).collect();
        let f = VectorFunction::sampled(2, ENorm::EUCLIDEAN, mix).unwrap();
        let got = forward_transform(&f, &g).unwrap();
        let want = x.combine(a, &y, b).unwrap();
        let scale = 1.0 + want.as_flat().iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(max_diff(got.as_flat(), want.as_flat()) <= 1e-11 * scale);
    }

    #[test]
    fn transform_inverts_the_series(idx in 0usize..4, seed in any::<u64>()) {
        let g = group(idx);
        let x = random_band_limited(seed, &g, 3, AmplitudeLaw::Gaussian);
        let back = forward_transform(&inverse_transform(&x, &g).unwrap(), &g).unwrap();
        let scale = 1.0 + x.as_flat().iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(max_diff(back.as_flat(), x.as_flat()) <= 1e-11 * scale);
    }
}
