mod common;

use common::{random_valid_map, rat, rng};
use linlike::equivalence::{decide, transform_tokens, EquivalenceVerdict, Transformation};
use linlike::foliation::build_configuration;
use linlike::realalg::{compare, AlgReal};
use rand::Rng;

const MAPS: u64 = 200;

fn all_true(v: &EquivalenceVerdict) -> bool {
    v.foliation_o && v.foliation_top && v.function_o && v.function_top
}

/// Pairs as a sorted set.
fn normalized(pairs: &[(AlgReal, AlgReal)]) -> Vec<(AlgReal, AlgReal)> {
    let mut v = pairs.to_vec();
    v.sort();
    v.dedup();
    v
}

fn hierarchy_holds(v: &EquivalenceVerdict) -> bool {
    (!v.function_o || (v.function_top && v.foliation_o))
        && (!v.function_top || v.foliation_top)
        && (!v.foliation_o || v.foliation_top)
}

#[test]
fn reflexive_with_identity_witness() {
    let mut g = rng(21);
    for _ in 0..MAPS {
        let c = random_valid_map(&mut g, true).conf;
        let v = decide(&c, &c);
        assert!(all_true(&v), "{}", c.map);
        let w = v.witness().unwrap();
        assert_eq!(w.transformation, Transformation::Identity);
        assert!(w.sigma.pairs.iter().all(|(a, b)| compare(a, b).is_eq()));
    }
}

#[test]
fn symmetric() {
    let mut g = rng(22);
    for _ in 0..MAPS {
        let p = random_valid_map(&mut g, true);
        let q = match g.gen_range(0..4) {
            0 => random_valid_map(&mut g, true).map,
            1 => p.map.reflect_x(),
            2 => p.map.affine_image(&rat(-2, 1), &rat(1, 1)),
            _ => p.map.shift_rescale(&rat(1, 2), &rat(-1, 1)),
        };
        let q = build_configuration(&q).unwrap();
        let (pq, qp) = (decide(&p.conf, &q), decide(&q, &p.conf));
        assert_eq!(pq.verdicts(), qp.verdicts(), "{} vs {}", p.map, q.map);
        if let (Some(a), Some(b)) = (pq.witness(), qp.witness()) {
            if a.transformation == b.transformation {
                assert_eq!(normalized(&a.sigma.inverse().pairs), normalized(&b.sigma.pairs));
            }
        }
    }
}

#[test]
fn coordinate_changes_are_sound() {
    let mut g = rng(23);
    for _ in 0..MAPS {
        let p = random_valid_map(&mut g, true);
        let c = rat(g.gen_range(-6..=6), g.gen_range(1..=3));
        let lambda = rat(g.gen_range(1..=9), g.gen_range(1..=4));
        let alpha = rat(g.gen_range(1..=9), g.gen_range(1..=4));
        let beta = rat(g.gen_range(-9..=9), g.gen_range(1..=4));
        for q in [p.map.shift_rescale(&c, &lambda), p.map.affine_image(&alpha, &beta)] {
            let q = build_configuration(&q).unwrap();
            assert!(all_true(&decide(&p.conf, &q)), "{} vs {}", p.map, q.map);
        }
    }
}

#[test]
fn flips_and_negation_are_topological_equivalences() {
    let mut g = rng(24);
    for _ in 0..MAPS {
        let p = random_valid_map(&mut g, true);
        for q in [p.map.reflect_x(), p.map.reflect_y(), p.map.rotate(), p.map.affine_image(&rat(-1, 1), &rat(0, 1))] {
            let q = build_configuration(&q).unwrap();
            let v = decide(&p.conf, &q);
            assert!(v.function_top && v.foliation_top, "{} vs {}", p.map, q.map);
        }
    }
}

#[test]
fn verdict_hierarchy() {
    let mut g = rng(25);
    let mut seen = [0usize; 2];
    for _ in 0..4 * MAPS {
        let p = random_valid_map(&mut g, true);
        let q = match g.gen_range(0..5) {
            0 => p.map.reflect_x(),
            1 => p.map.reflect_y(),
            2 => p.map.affine_image(&rat(-1, 1), &rat(g.gen_range(-3..=3), 1)),
            _ => random_valid_map(&mut g, true).map,
        };
        let q = build_configuration(&q).unwrap();
        let v = decide(&p.conf, &q);
        assert!(hierarchy_holds(&v), "{} vs {}: {:?}", p.map, q.map, v.verdicts());
        seen[usize::from(all_true(&v))] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn klein_group_on_tokens() {
    let mut g = rng(26);
    for _ in 0..MAPS {
        let tokens = random_valid_map(&mut g, true).conf.tokens;
        for t in Transformation::ALL {
            assert_eq!(transform_tokens(&transform_tokens(&tokens, t), t), tokens);
            for u in Transformation::ALL {
                assert_eq!(transform_tokens(&transform_tokens(&tokens, u), t), transform_tokens(&tokens, t.compose(u)));
            }
        }
    }
}
