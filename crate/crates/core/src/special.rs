//! Special functions used in rank one: ₁F₁, normalized Bessel j_α, Laguerre.

use std::cell::RefCell;
use std::collections::HashMap;

use num_complex::Complex64;
use statrs::function::gamma::gamma;

use crate::quadrature::{gauss_jacobi, GaussRule};

/// |z| above which ₁F₁ switches to its large-argument expansion.
pub const HYP1F1_ASYMPTOTIC_RADIUS: f64 = 30.0;
/// Largest |z| − Re z for which the Kummer series is summed directly.
const SERIES_CANCELLATION_LIMIT: f64 = 8.0;
const INTEGRAL_NODES: usize = 64;

/// (a)_n.
pub fn pochhammer(a: f64, n: usize) -> f64 {
    (0..n).map(|j| a + j as f64).product()
}

/// Kummer series Σ (a)_n/(b)_n zⁿ/n!, stopped when the term ratio falls
/// below 1e-16 of the partial sum.
pub fn hyp1f1_series(a: f64, b: f64, z: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..10_000 {
        let nf = n as f64;
        term *= z * ((a + nf) / ((b + nf) * (nf + 1.0)));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && nf > z.norm() {
            break;
        }
        if term.norm() == 0.0 {
            break;
        }
    }
    sum
}

thread_local! {
    static JACOBI_CACHE: RefCell<HashMap<(u64, u64, usize), GaussRule>> = RefCell::new(HashMap::new());
}

fn cached_jacobi(n: usize, alpha: f64, beta: f64) -> GaussRule {
    JACOBI_CACHE.with(|c| {
        c.borrow_mut()
            .entry((alpha.to_bits(), beta.to_bits(), n))
            .or_insert_with(|| gauss_jacobi(n, alpha, beta))
            .clone()
    })
}

/// e^{−z}₁F₁(a;b;z) from the Euler integral
/// B(a,b−a)⁻¹∫₀¹ e^{z(t−1)} t^{a−1}(1−t)^{b−a−1}dt (requires b > a > 0).
fn hyp1f1_integral_scaled(a: f64, b: f64, z: Complex64) -> Complex64 {
    let n = INTEGRAL_NODES.max(20 * ((z.norm() / 20.0).ceil() as usize + 2));
    let rule = cached_jacobi(n, b - a - 1.0, a - 1.0);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut mass = 0.0;
    for (s, w) in rule.nodes.iter().zip(&rule.weights) {
        let t = (1.0 + s) / 2.0;
        acc += (z * (t - 1.0)).exp() * *w;
        mass += w;
    }
    acc / mass
}

/// Large-|z| expansion of e^{−z}₁F₁(a;b;z), valid for Re z ≥ 0:
/// Γ(b)[z^{a−b}/Γ(a) Σ (1−a)_s(b−a)_s/s! z^{−s}
///      + e^{−z}e^{±iπa}z^{−a}/Γ(b−a) Σ (a)_s(a−b+1)_s/s! (−z)^{−s}],
/// upper sign for Im z ≥ 0. Each sum is cut at its smallest term.
pub fn hyp1f1_asymptotic_scaled(a: f64, b: f64, z: Complex64) -> Complex64 {
    let sum = |p: f64, q: f64, w: Complex64| -> Complex64 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut acc = term;
        let mut prev = f64::INFINITY;
        for s in 0..500 {
            let sf = s as f64;
            let next = term * ((p + sf) * (q + sf) / (sf + 1.0)) / w;
            let size = next.norm();
            if size >= prev || size <= 1e-18 * acc.norm() {
                if size <= 1e-18 * acc.norm() {
                    acc += next;
                }
                break;
            }
            prev = size;
            term = next;
            acc += term;
        }
        acc
    };
    let gb = gamma(b);
    let mut out = Complex64::new(0.0, 0.0);
    if !(a <= 0.0 && a.fract() == 0.0) {
        out += z.powc(Complex64::new(a - b, 0.0)) * sum(1.0 - a, b - a, z) / gamma(a);
    }
    let c = b - a;
    if !(c <= 0.0 && c.fract() == 0.0) {
        let sign = if z.im >= 0.0 { 1.0 } else { -1.0 };
        let phase = Complex64::from_polar(1.0, sign * std::f64::consts::PI * a);
        out += (-z).exp() * phase * z.powc(Complex64::new(-a, 0.0)) * sum(a, a - b + 1.0, -z) / gamma(c);
    }
    out * gb
}

/// e^{−z}₁F₁(a;b;z) for Re z ≥ 0, choosing series, Euler integral or the
/// asymptotic expansion by the size of z.
pub fn hyp1f1_scaled(a: f64, b: f64, z: Complex64) -> Complex64 {
    if a == 0.0 {
        return (-z).exp();
    }
    if a == b {
        return Complex64::new(1.0, 0.0);
    }
    let r = z.norm();
    if r > HYP1F1_ASYMPTOTIC_RADIUS {
        return hyp1f1_asymptotic_scaled(a, b, z);
    }
    if r - z.re <= SERIES_CANCELLATION_LIMIT || a <= 0.0 || b - a <= 0.0 {
        return hyp1f1_series(a, b, z) * (-z).exp();
    }
    hyp1f1_integral_scaled(a, b, z)
}

/// ₁F₁(a;b;z) for b > 0; negative real parts go through Kummer's
/// transformation ₁F₁(a;b;z) = e^z ₁F₁(b−a;b;−z).
pub fn hyp1f1(a: f64, b: f64, z: Complex64) -> Complex64 {
    if z.re >= 0.0 {
        z.exp() * hyp1f1_scaled(a, b, z)
    } else {
        hyp1f1_scaled(b - a, b, -z)
    }
}

/// Rank-one kernel E_k(x,y) with z = xy, as (m, s) with E_k = m·e^s.
/// E_k(z) = e^z ₁F₁(k;2k+1;−2z) = e^{−z}₁F₁(k+1;2k+1;2z).
pub fn rank_one_kernel_split(k: f64, z: Complex64) -> (Complex64, Complex64) {
    if z.re >= 0.0 {
        (hyp1f1_scaled(k + 1.0, 2.0 * k + 1.0, 2.0 * z), z)
    } else {
        (hyp1f1_scaled(k, 2.0 * k + 1.0, -2.0 * z), -z)
    }
}

pub fn rank_one_kernel(k: f64, z: Complex64) -> Complex64 {
    let (m, s) = rank_one_kernel_split(k, z);
    m * s.exp()
}

/// Normalized Bessel j_α(z) = Σ (−z²/4)ⁿ/(n!(α+1)_n).
pub fn bessel_j_normalized(alpha: f64, z: Complex64) -> Complex64 {
    let w = -z * z / 4.0;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..10_000 {
        let nf = n as f64;
        term *= w / ((nf + 1.0) * (alpha + 1.0 + nf));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm().max(1e-300) && nf * nf > w.norm() {
            break;
        }
    }
    sum
}

/// Generalized Laguerre L_n^α(x) by the three-term recurrence.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + alpha - x) * cur - (jf + alpha) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Physicists' Hermite polynomial Ĥ_n(x).
pub fn hermite_physicists(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for j in 1..n {
        let next = 2.0 * x * cur - 2.0 * j as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn elementary_cases() {
        // ₁F₁(a;a;z) = e^z
        for z in [c(0.3, 0.0), c(-2.0, 1.0), c(5.0, -3.0), c(0.0, 20.0)] {
            let v = hyp1f1(1.5, 1.5, z);
            assert!((v - z.exp()).norm() <= 1e-12 * z.exp().norm().max(1.0), "{z}: {v}");
        }
        // ₁F₁(1;2;z) = (e^z − 1)/z
        for z in [c(0.7, 0.0), c(-4.0, 0.0), c(0.0, 12.0), c(3.0, 9.0), c(45.0, 0.0), c(0.0, 50.0)] {
            let exact = (z.exp() - 1.0) / z;
            let v = hyp1f1(1.0, 2.0, z);
            assert!((v - exact).norm() <= 1e-10 * exact.norm(), "{z}: {v} vs {exact}");
        }
    }

    #[test]
    fn regimes_overlap() {
        for k in [0.25, 0.5, 1.0, 1.5] {
            let (a, b) = (k, 2.0 * k + 1.0);
            for r in [25.0, 28.0, 31.0, 35.0] {
                for arg in [0.0, 0.4, 1.0, std::f64::consts::FRAC_PI_2, -1.2] {
                    let z = Complex64::from_polar(r, arg);
                    let asy = hyp1f1_asymptotic_scaled(a, b, z);
                    let direct = if r - z.re <= SERIES_CANCELLATION_LIMIT {
                        hyp1f1_series(a, b, z) * (-z).exp()
                    } else {
                        hyp1f1_integral_scaled(a, b, z)
                    };
                    assert!((asy - direct).norm() <= 1e-8 * direct.norm(), "k={k} z={z}: {asy} vs {direct}");
                }
            }
        }
    }

    #[test]
    fn rank_one_kernel_k_zero_is_exponential() {
        for z in [c(1.3, 0.0), c(-40.0, 0.0), c(0.0, 7.0)] {
            let v = rank_one_kernel(0.0, z);
            assert!((v - z.exp()).norm() <= 1e-12 * z.exp().norm().max(1.0));
        }
    }

    #[test]
    fn bessel_half_integer() {
        // j_{1/2}(z) = sin z / z
        for x in [0.3, 2.0, 7.5] {
            let v = bessel_j_normalized(0.5, c(x, 0.0));
            assert!((v.re - x.sin() / x).abs() < 1e-13);
        }
        // j_{−1/2}(z) = cos z
        assert!((bessel_j_normalized(-0.5, c(1.1, 0.0)).re - 1.1f64.cos()).abs() < 1e-14);
    }

    #[test]
    fn laguerre_values() {
        // L_2^α(x) = ((x² − 2(α+2)x + (α+1)(α+2))/2
        let (a, x) = (0.5, 1.7);
        let exact = (x * x - 2.0 * (a + 2.0) * x + (a + 1.0) * (a + 2.0)) / 2.0;
        assert!((laguerre(2, a, x) - exact).abs() < 1e-14);
        assert_eq!(hermite_physicists(3, 2.0), 8.0 * 8.0 - 12.0 * 2.0);
    }
}
