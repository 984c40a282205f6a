#![allow(dead_code)]

use linlike::expr::{parse_map, LinearLikeMap};
use linlike::foliation::{build_configuration, Configuration};
use linlike::realalg::{Rational, UniPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EQ1_P: &str = "x*(7*x-5)+(x+1)^2*x^2*(x-2)^2*y";
pub const EQ1_Q: &str = "2*x*(4*x-5)+(x+1)^2*x^2*(x-2)^2*y";
pub const CUBIC: &str = "x + x^3*y";
pub const CUBIC_NEG: &str = "-x - x^3*y";
pub const DECREASING_P: &str = "x*(3-2*x)+(x-1)^2*x^2*y";
pub const DECREASING_Q: &str = "(x-1)*(2*x-1)-(x-1)^2*x^2*y";
pub const MIRROR_P: &str = "x+(x+1)^2*x^2*(x-1)^2*y";
pub const MIRROR_Q: &str = "-x+(x+1)^2*x^2*(x-1)^2*y";
pub const TRIVIAL_P: &str = "x + y";
pub const TRIVIAL_Q: &str = "-5*x^3 + x + (2 + x^2)*y";
pub const DISTINCT_STRIP: &str = "x*(2-x^2)+(x-1)^2*(x+1)^2*y";
pub const EQUAL_CYCLIC: &str = "x*(x-1)+x^2*(x-1)^2*y";
pub const EQUAL_SEPARATING: &str = "x*(1-2*x)*(x-1)+x^2*(x-1)^2*y";

pub fn conf(expr: &str) -> Configuration {
    build_configuration(&parse_map(expr).unwrap()).unwrap()
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `s` with planted zeros of multiplicity 2 or 3; with `irrational`, a
/// squared `x^2 - 2` factor may be added.
fn random_s(rng: &mut ChaCha8Rng, irrational: bool) -> (UniPoly, Vec<(Rational, usize)>) {
    let k = rng.gen_range(0..=3);
    let mut roots: Vec<Rational> = (0..k).map(|_| rat(rng.gen_range(-8..=8), 2)).collect();
    roots.sort();
    roots.dedup();
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let mut s = UniPoly::constant(int(sign * rng.gen_range(1..=3)));
    let mut planted = Vec::new();
    for a in roots {
        let m = rng.gen_range(2..=3);
        for _ in 0..m {
            s = &s * &UniPoly::linear_root(&a);
        }
        planted.push((a, m));
    }
    if irrational && rng.gen_bool(0.25) {
        let q = UniPoly::from_ints(&[-2, 0, 1]);
        s = &(&s * &q) * &q;
    }
    if rng.gen_bool(0.2) {
        s = &s * &UniPoly::from_ints(&[1, 0, 1]);
    }
    (s, planted)
}

fn random_r(rng: &mut ChaCha8Rng) -> UniPoly {
    let n = rng.gen_range(2..=5);
    UniPoly::from_ints(&(0..n).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>())
}

/// A valid map with its planted rational zeros of `s`.
pub struct Planted {
    pub map: LinearLikeMap,
    pub conf: Configuration,
    pub zeros: Vec<(Rational, usize)>,
}

pub fn random_valid_map(rng: &mut ChaCha8Rng, irrational: bool) -> Planted {
    loop {
        let (s, zeros) = random_s(rng, irrational);
        let map = LinearLikeMap::new(random_r(rng), s);
        if let Ok(conf) = build_configuration(&map) {
            return Planted { map, conf, zeros };
        }
    }
}

/// Valid map with only rational zeros of `s`, at most `max_k` of them.
pub fn random_rational_map(rng: &mut ChaCha8Rng, max_k: usize) -> Planted {
    loop {
        let p = random_valid_map(rng, false);
        if p.conf.k() <= max_k && p.conf.roots.iter().chain(&p.conf.boundary_values).all(|z| z.is_rational()) {
            return p;
        }
    }
}
