//! Seeded generators for the randomized verification batteries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polynomial::{monomials_of_degree, MultiPoly};
use crate::scalar::{rat, Rational, Scalar};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// p/q with |p| ≤ 5, 1 ≤ q ≤ 4.
pub fn small_rational(r: &mut TestRng) -> Rational {
    rat(r.gen_range(-5..=5), r.gen_range(1..=4))
}

/// Nonnegative multiplicity value with denominator ≤ 4 and value ≤ 2.
pub fn multiplicity_value(r: &mut TestRng) -> Rational {
    rat(r.gen_range(0..=8), r.gen_range(1..=4))
}

pub fn direction<S: Scalar>(r: &mut TestRng, dim: usize) -> Vec<S> {
    loop {
        let v: Vec<Rational> = (0..dim).map(|_| small_rational(r)).collect();
        if v.iter().any(|c| *c != rat(0, 1)) {
            return v.iter().map(S::from_rational).collect();
        }
    }
}

/// Random polynomial with up to `terms` monomials of total degree ≤ `max_degree`.
pub fn polynomial<S: Scalar>(r: &mut TestRng, dim: usize, max_degree: usize, terms: usize) -> MultiPoly<S> {
    let mut p = MultiPoly::zero(dim);
    for _ in 0..terms {
        let d = r.gen_range(0..=max_degree);
        let monos = monomials_of_degree(dim, d);
        let m = monos[r.gen_range(0..monos.len())].clone();
        p.add_term(m, S::from_rational(&small_rational(r)));
    }
    p
}

/// Random homogeneous polynomial of degree `n`.
pub fn homogeneous<S: Scalar>(r: &mut TestRng, dim: usize, n: usize, terms: usize) -> MultiPoly<S> {
    let monos = monomials_of_degree(dim, n);
    let mut p = MultiPoly::zero(dim);
    while p.is_zero() {
        for _ in 0..terms {
            let m = monos[r.gen_range(0..monos.len())].clone();
            p.add_term(m, S::from_rational(&small_rational(r)));
        }
    }
    p
}

/// Uniform point in the closed unit ball of ℝ^dim.
pub fn ball_point(r: &mut TestRng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| r.gen_range(-1.0..=1.0)).collect();
        if v.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
            return v;
        }
    }
}

/// Uniform point on the unit sphere of ℝ^dim.
pub fn sphere_point(r: &mut TestRng, dim: usize) -> Vec<f64> {
    loop {
        let v = ball_point(r, dim);
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            return v.iter().map(|x| x / n).collect();
        }
    }
}
