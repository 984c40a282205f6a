mod common;

use std::collections::BTreeSet;

use common::{random_rational_map, random_valid_map, rat, rng, Planted};
use linlike::equivalence::{transform_tokens, Transformation};
use linlike::expr::LinearLikeMap;
use linlike::foliation::{build_configuration, StripToken};
use linlike::realalg::{AlgReal, Rational, Sign, UniPoly};
use num::{BigInt, One};

const MAPS: u64 = 256;

fn eps() -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << 30)
}

/// Sign of the leaf at level `c` evaluated just inside the strip at `x`.
fn leaf_sign(m: &LinearLikeMap, c: &Rational, x: &Rational) -> Sign {
    let y = (c - m.r.eval(x)) / m.s.eval(x);
    Sign::of(&y)
}

/// Token signs from exact evaluation next to the planted zeros.
fn expected_tokens(p: &Planted) -> Vec<StripToken> {
    let m = &p.map;
    let a: Vec<&Rational> = p.zeros.iter().map(|z| &z.0).collect();
    let c: Vec<Rational> = a.iter().map(|x| m.r.eval(x)).collect();
    let k = a.len();
    let e = eps();
    let mut out = vec![StripToken::LeftInfinite(leaf_sign(m, &c[0], &(a[0] - &e)))];
    for i in 1..k {
        let (l, r) = (&(a[i - 1] + &e), &(a[i] - &e));
        out.push(if c[i - 1] == c[i] {
            StripToken::BoundedEqual { a: leaf_sign(m, &c[i], l), b: leaf_sign(m, &c[i], r) }
        } else {
            StripToken::BoundedDistinct {
                aa: leaf_sign(m, &c[i - 1], l),
                ab: leaf_sign(m, &c[i - 1], r),
                ba: leaf_sign(m, &c[i], l),
                bb: leaf_sign(m, &c[i], r),
            }
        });
    }
    out.push(StripToken::RightInfinite(leaf_sign(m, &c[k - 1], &(a[k - 1] + &e))));
    out
}

#[test]
fn tokens_match_nearby_evaluation() {
    let mut g = rng(11);
    let mut checked = 0;
    while checked < MAPS {
        let p = random_rational_map(&mut g, 3);
        if p.zeros.is_empty() || p.conf.k() != p.zeros.len() {
            continue;
        }
        assert_eq!(p.conf.tokens, expected_tokens(&p), "{}", p.map);
        checked += 1;
    }
}

#[test]
fn token_functoriality() {
    let mut g = rng(12);
    for _ in 0..MAPS {
        let p = random_valid_map(&mut g, true);
        let flips = [
            (p.map.reflect_x(), Transformation::HFlip),
            (p.map.reflect_y(), Transformation::VFlip),
            (p.map.rotate(), Transformation::Rotation),
        ];
        for (image, t) in flips {
            let q = build_configuration(&image).unwrap();
            assert_eq!(q.tokens, transform_tokens(&p.conf.tokens, t), "{} under {t}", p.map);
        }
    }
}

#[test]
fn region_counts_per_strip() {
    let mut g = rng(13);
    for _ in 0..MAPS {
        let c = random_valid_map(&mut g, true).conf;
        if c.k() == 0 {
            assert_eq!(c.regions.len(), 1);
            assert!(c.tokens.is_empty() && c.bifurcation.is_empty());
            continue;
        }
        for (i, token) in c.tokens.iter().enumerate() {
            let expect = match token {
                StripToken::BoundedDistinct { .. } => 3,
                _ => 2,
            };
            assert_eq!(c.regions_in(i).count(), expect, "{} strip {i}", c.map);
            let sets: BTreeSet<_> = c.regions_in(i).map(|r| r.boundary.clone()).collect();
            assert_eq!(sets.len(), expect, "boundary sets in strip {i} of {}", c.map);
        }
    }
}

#[test]
fn cross_signs_are_opposite() {
    let mut g = rng(14);
    let (mut same_as_end, mut opposite_to_end) = (0, 0);
    for _ in 0..MAPS {
        for token in random_valid_map(&mut g, true).conf.tokens {
            if let StripToken::BoundedDistinct { aa, ab, ba, .. } = token {
                assert_eq!(ab, -ba);
                if ab == aa {
                    same_as_end += 1;
                } else {
                    opposite_to_end += 1;
                }
            }
        }
    }
    // Both relations between the cross sign and the end sign occur.
    assert!(same_as_end > 0 && opposite_to_end > 0);
}

#[test]
fn fiber_counts_jump_exactly_on_bifurcation_values() {
    let mut g = rng(15);
    for _ in 0..MAPS {
        let p = random_rational_map(&mut g, 3);
        let c = &p.conf;
        let direct = |level: &Rational| c.k() + 1 + p.zeros.iter().filter(|(a, _)| &p.map.r.eval(a) == level).count();
        let values: Vec<Rational> = c.bifurcation.iter().map(|v| v.as_rational().unwrap().clone()).collect();
        let mut probes = vec![rat(-1000, 1), rat(1000, 1)];
        probes.extend(values.windows(2).map(|w| (&w[0] + &w[1]) / rat(2, 1)));
        probes.extend(values.iter().flat_map(|v| [v - rat(1, 7), v + rat(1, 7)]));
        for level in probes.iter().filter(|q| !values.contains(q)) {
            let n = c.fiber_component_count(&AlgReal::from_rational(level.clone()));
            assert_eq!(n, c.k() + 1, "{} at {level}", c.map);
            assert_eq!(n, direct(level));
        }
        for level in &values {
            let n = c.fiber_component_count(&AlgReal::from_rational(level.clone()));
            assert!(n > c.k() + 1);
            assert_eq!(n, direct(level));
        }
    }
}

#[test]
fn bifurcation_set_is_sorted_image_of_zeros() {
    let mut g = rng(16);
    for _ in 0..MAPS {
        let p = random_rational_map(&mut g, 3);
        let mut expect: Vec<Rational> = p.zeros.iter().map(|(a, _)| p.map.r.eval(a)).collect();
        expect.sort();
        expect.dedup();
        let got: Vec<Rational> = p.conf.bifurcation.iter().map(|v| v.as_rational().unwrap().clone()).collect();
        assert_eq!(got, expect);
    }
}

#[test]
fn trivial_configurations_are_canonical() {
    let r = UniPoly::from_ints(&[1, -2, 0, 5]);
    let positive = build_configuration(&LinearLikeMap::new(r.clone(), UniPoly::from_ints(&[2, 0, 1]))).unwrap();
    let negative = build_configuration(&LinearLikeMap::new(r, UniPoly::from_ints(&[-3]))).unwrap();
    for c in [&positive, &negative] {
        assert!(c.is_trivial());
        assert!(c.tokens.is_empty() && c.bifurcation.is_empty());
        assert_eq!(c.regions.len(), 1);
        assert!(c.regions[0].boundary.is_empty());
    }
    assert_eq!(positive.regions, negative.regions);
}
