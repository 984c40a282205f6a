mod common;

use std::cmp::Ordering;

use common::{int, rat};
use linlike::realalg::{
    compare, image_value, isolate_real_roots, side_sign, sign_at, AlgReal, Rational, Side, Sign, UniPoly,
};
use num::{Signed, Zero};
use proptest::prelude::*;

/// Product of `(d x - n)^m` over the planted roots `n/d`.
fn planted(roots: &[(i64, i64, usize)]) -> UniPoly {
    roots.iter().fold(UniPoly::one(), |acc, &(n, d, m)| (0..m).fold(acc, |acc, _| &acc * &UniPoly::from_ints(&[-n, d])))
}

/// Distinct planted roots with multiplicity, found by exact evaluation at
/// every point of a rational grid.
fn sweep_roots(p: &UniPoly, bound: i64, den: i64) -> Vec<(Rational, usize)> {
    (-bound * den..=bound * den)
        .map(|k| rat(k, den))
        .filter(|x| p.eval(x).is_zero())
        .map(|x| {
            let mut m = 0;
            let mut q = p.clone();
            while q.eval(&x).is_zero() {
                q = q.derivative();
                m += 1;
            }
            (x, m)
        })
        .collect()
}

fn planted_roots() -> impl Strategy<Value = Vec<(i64, i64, usize)>> {
    prop::collection::vec((-12i64..=12, prop::sample::select(vec![1i64, 2, 3, 4]), 1usize..=3), 1..=4)
        .prop_filter("degree at most 8", |v| v.iter().map(|r| r.2).sum::<usize>() <= 8)
}

/// Roots of random quadratics and cubics with small integer coefficients.
fn algebraic_set(coeffs: &[Vec<i64>]) -> Vec<AlgReal> {
    coeffs.iter().filter_map(|c| isolate_real_roots(&UniPoly::from_ints(c)).ok()).flatten().map(|(z, _)| z).collect()
}

fn small_poly(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 3..=max_len).prop_filter("nonzero lead", |v| *v.last().unwrap() != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn isolation_finds_planted_roots(roots in planted_roots()) {
        let p = planted(&roots);
        let found = isolate_real_roots(&p).unwrap();
        let expected = sweep_roots(&p, 12, 12);
        prop_assert_eq!(found.len(), expected.len());
        for ((z, m), (x, mx)) in found.iter().zip(&expected) {
            prop_assert_eq!(z.as_rational(), Some(x));
            prop_assert_eq!(*m, *mx);
        }
    }

    #[test]
    fn order_axioms(coeffs in prop::collection::vec(small_poly(4), 6..=10)) {
        let zs: Vec<AlgReal> = algebraic_set(&coeffs).into_iter().take(20).collect();
        let n = zs.len();
        let floats: Vec<f64> = zs.iter().map(AlgReal::to_f64).collect();
        let cmp: Vec<Vec<Ordering>> = zs.iter().map(|a| zs.iter().map(|b| compare(a, b)).collect()).collect();
        for i in 0..n {
            prop_assert_eq!(cmp[i][i], Ordering::Equal);
            for j in 0..n {
                prop_assert_eq!(cmp[i][j], cmp[j][i].reverse());
                let (fa, fb) = (floats[i], floats[j]);
                if (fa - fb).abs() > 1e-9 {
                    prop_assert_eq!(cmp[i][j], fa.partial_cmp(&fb).unwrap());
                }
                for k in 0..n {
                    if cmp[i][j] != Ordering::Greater && cmp[j][k] != Ordering::Greater {
                        prop_assert_ne!(cmp[i][k], Ordering::Greater);
                    }
                    if cmp[i][j] == Ordering::Equal && cmp[j][k] == Ordering::Equal {
                        prop_assert_eq!(cmp[i][k], Ordering::Equal);
                    }
                }
            }
        }
    }

    #[test]
    fn side_sign_matches_nearby_evaluation(p in small_poly(6), n in -20i64..=20, d in 1i64..=4) {
        let p = UniPoly::from_ints(&p);
        let z = rat(n, d);
        let eps = Rational::new(1.into(), num::BigInt::from(1u64 << 40));
        let near = |x: Rational| Sign::of(&p.eval(&x));
        let za = AlgReal::from_rational(z.clone());
        prop_assert_eq!(side_sign(&p, &za, Side::Right).unwrap(), near(&z + &eps));
        prop_assert_eq!(side_sign(&p, &za, Side::Left).unwrap(), near(&z - &eps));
    }

    #[test]
    fn side_signs_agree_off_zeros(p in small_poly(6), q in small_poly(4)) {
        let p = UniPoly::from_ints(&p);
        for z in algebraic_set(&[q]) {
            let s = sign_at(&p, &z);
            if s != Sign::Zero {
                prop_assert_eq!(side_sign(&p, &z, Side::Left).unwrap(), s);
                prop_assert_eq!(side_sign(&p, &z, Side::Right).unwrap(), s);
            }
        }
    }

    #[test]
    fn image_of_rational_is_substitution(r in small_poly(6), n in -20i64..=20, d in 1i64..=5) {
        let r = UniPoly::from_ints(&r);
        let z = rat(n, d);
        let direct = r.coeffs().iter().rev().fold(Rational::zero(), |acc, c| acc * &z + c);
        let image = image_value(&r, &AlgReal::from_rational(z));
        prop_assert_eq!(compare(&image, &AlgReal::from_rational(direct)), Ordering::Equal);
    }

    #[test]
    fn image_of_algebraic_matches_float(r in small_poly(5), q in small_poly(4)) {
        let r = UniPoly::from_ints(&r);
        for z in algebraic_set(&[q]) {
            let image = image_value(&r, &z);
            let expect = r.eval_f64(z.to_f64());
            prop_assert!((image.to_f64() - expect).abs() <= 1e-6 * expect.abs().max(1.0));
        }
    }
}

#[test]
fn boundary_values_of_the_quadratic() {
    let r = UniPoly::from_ints(&[0, -5, 7]);
    assert_eq!(image_value(&r, &AlgReal::from_int(2)).as_rational(), Some(&int(18)));
    assert_eq!(image_value(&r, &AlgReal::from_int(-1)).as_rational(), Some(&int(12)));
    assert_eq!(image_value(&r, &AlgReal::from_int(0)).as_rational(), Some(&int(0)));
}

#[test]
fn sqrt2_sits_between_rationals() {
    let roots = isolate_real_roots(&UniPoly::from_ints(&[-2, 0, 1])).unwrap();
    let sqrt2 = &roots[1].0;
    assert_eq!(compare(sqrt2, &AlgReal::from_rational(rat(141, 100))), Ordering::Greater);
    assert_eq!(compare(sqrt2, &AlgReal::from_rational(rat(142, 100))), Ordering::Less);
    assert!(roots[0].0.to_f64().is_sign_negative() && roots[0].0.to_f64().abs() > 1.41);
    assert!(!sqrt2.is_rational() && sqrt2.to_f64().is_positive());
}
