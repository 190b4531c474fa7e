//! Gauss rules for the measures w_k(x)e^{−|x|²/2}dx and w_k(x)dx.
//!
//! One-dimensional rules come from three-term recurrences by Golub–Welsch.
//! Rank-two rules use signed polar coordinates r ∈ ℝ, θ ∈ [θ₀, θ₀+π) on the
//! span of the roots: the radial factor |r|^{2γ+1}e^{−r²/2} is a generalized
//! Hermite weight, and on each arc between two reflecting lines the angular
//! factor behaves like a Jacobi weight with exponents 2k at both ends, so the
//! algebraic endpoint singularities of w_k are integrated exactly.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use statrs::function::gamma::{gamma, ln_gamma};

use crate::dunkl_calculus::{apply_t_axis, exp_half_neg_delta, fischer_pair};
use crate::error::{DunklError, Result};
use crate::polynomial::{monomials_of_degree, MultiPoly};
use crate::report::CheckOutcome;
use crate::root_system::{RootSystemContext, RootSystemKind};
use crate::scalar::{Rational, Scalar};

/// One-dimensional Gauss rule.
#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Golub–Welsch: nodes are the eigenvalues of the Jacobi matrix with diagonal
/// `alpha` and off-diagonal √β_j (j = 1..n−1); weights are μ₀ times the squared
/// first eigenvector components.
pub fn golub_welsch(alpha: &[f64], beta: &[f64], mu0: f64) -> GaussRule {
    let n = alpha.len();
    let mut j = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        j[(i, i)] = alpha[i];
        if i + 1 < n {
            let b = beta[i + 1].sqrt();
            j[(i, i + 1)] = b;
            j[(i + 1, i)] = b;
        }
    }
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    GaussRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// Gauss rule for |x|^{2μ}e^{−x²/2} on ℝ: α_n = 0, β_n = n + 2μ[n odd],
/// μ₀ = 2^{μ+1/2}Γ(μ+1/2).
pub fn generalized_hermite(n: usize, mu: f64) -> GaussRule {
    let alpha = vec![0.0; n];
    let beta: Vec<f64> = (0..n)
        .map(|j| j as f64 + if j % 2 == 1 { 2.0 * mu } else { 0.0 })
        .collect();
    let mu0 = 2f64.powf(mu + 0.5) * gamma(mu + 0.5);
    golub_welsch(&alpha, &beta, mu0)
}

/// Gauss–Jacobi rule for (1−t)^a(1+t)^b on [−1, 1].
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> GaussRule {
    let ab = a + b;
    let alpha: Vec<f64> = (0..n)
        .map(|j| {
            if j == 0 {
                (b - a) / (ab + 2.0)
            } else {
                let s = 2.0 * j as f64 + ab;
                (b * b - a * a) / (s * (s + 2.0))
            }
        })
        .collect();
    let beta: Vec<f64> = (0..n)
        .map(|j| match j {
            0 => 0.0,
            1 => 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab)),
            _ => {
                let jf = j as f64;
                let s = 2.0 * jf + ab;
                4.0 * jf * (jf + a) * (jf + b) * (jf + ab) / (s * s * (s + 1.0) * (s - 1.0))
            }
        })
        .collect();
    let mu0 = ((ab + 1.0) * 2f64.ln() + ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(ab + 2.0)).exp();
    golub_welsch(&alpha, &beta, mu0)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Measure {
    /// w_k(x)e^{−|x|²/2}dx on ℝ^N.
    GaussianWk,
    /// w_k(x)dx on the ball of radius L.
    LebesgueWkTruncated(f64),
    /// (1−t)^a(1+t)^b dt on [−1, 1].
    Jacobi { a: f64, b: f64 },
}

/// Nodes and positive weights; the weights already contain the full measure,
/// so ∫ f dμ ≈ Σ w_i f(x_i).
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub measure: Measure,
    /// Human-readable accuracy statement.
    pub accuracy: String,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Σ w_i f(x_i); a non-finite integrand value is an error naming the node.
    pub fn integrate(&self, f: impl Fn(&[f64]) -> Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, (x, w)) in self.nodes.iter().zip(&self.weights).enumerate() {
            let v = f(x);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(DunklError::NonFinite {
                    index: i,
                    detail: format!("f({x:?}) = {v}"),
                });
            }
            acc += v * *w;
        }
        Ok(acc)
    }

    pub fn integrate_real(&self, f: impl Fn(&[f64]) -> f64) -> Result<f64> {
        Ok(self.integrate(|x| Complex64::new(f(x), 0.0))?.re)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let dim = self.nodes.first().map_or(0, Vec::len);
        let head: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
        s.push_str(&format!("{},weight\n", head.join(",")));
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let xs: Vec<String> = x.iter().map(|v| format!("{v:.17e}")).collect();
            s.push_str(&format!("{},{w:.17e}\n", xs.join(",")));
        }
        s
    }
}

/// The Jacobi weight as a rule on [−1, 1].
pub fn jacobi_rule(n: usize, a: f64, b: f64) -> QuadratureRule {
    let g = gauss_jacobi(n, a, b);
    QuadratureRule {
        nodes: g.nodes.iter().map(|t| vec![*t]).collect(),
        weights: g.weights,
        measure: Measure::Jacobi { a, b },
        accuracy: format!("exact for polynomials of degree ≤ {}", 2 * n - 1),
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Orthonormal basis of span(R) followed by one of its complement.
fn adapted_basis<S: Scalar>(ctx: &RootSystemContext<S>) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let n = ctx.dim();
    let mut span: Vec<Vec<f64>> = Vec::new();
    let gs = |basis: &[Vec<f64>], v: &[f64]| -> Option<Vec<f64>> {
        let mut w = v.to_vec();
        for b in basis {
            let c = dot(b, &w);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= c * bi;
            }
        }
        let norm = dot(&w, &w).sqrt();
        (norm > 1e-9).then(|| w.iter().map(|x| x / norm).collect())
    };
    for pr in ctx.positive() {
        if let Some(u) = gs(&span, &pr.root.normalized_f64()) {
            span.push(u);
        }
    }
    let mut all = span.clone();
    let mut comp = Vec::new();
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        if let Some(u) = gs(&all, &e) {
            all.push(u.clone());
            comp.push(u);
        }
    }
    (span, comp)
}

/// Rule for w_k(x)e^{−|x|²/2}dx. `nodes` is the count per one-dimensional
/// factor. Rank one: generalized Hermite; rank two: polar product rule;
/// rank three (N ≤ 3): tensor Gauss–Hermite with w_k as an integrand factor.
pub fn gaussian_wk_rule<S: Scalar>(ctx: &RootSystemContext<S>, nodes: usize) -> Result<QuadratureRule> {
    let n = ctx.dim();
    if n > 3 {
        return Err(DunklError::Unsupported(format!(
            "quadrature in dimension {n} (at most 3 supported)"
        )));
    }
    let (span, comp) = adapted_basis(ctx);
    let hermite = generalized_hermite(nodes, 0.0);
    // complement factor: tensor Gauss–Hermite for e^{−|s|²/2}
    let mut comp_pts: Vec<(Vec<f64>, f64)> = vec![(vec![0.0; n], 1.0)];
    for u in &comp {
        let mut next = Vec::new();
        for (p, w) in &comp_pts {
            for (s, ws) in hermite.nodes.iter().zip(&hermite.weights) {
                let q: Vec<f64> = p.iter().zip(u).map(|(a, b)| a + s * b).collect();
                next.push((q, w * ws));
            }
        }
        comp_pts = next;
    }
    let gamma_k = ctx.gamma_f64();
    let span_pts: Vec<(Vec<f64>, f64)> = match span.len() {
        1 => {
            // w_k = Π over the single positive root |⟨α,x⟩|^{2k}, |α|² = 2
            let pr = &ctx.positive()[0];
            let k = pr.k_rational.to_f64();
            let g = generalized_hermite(nodes, k);
            let factor = 2f64.powf(k);
            g.nodes
                .iter()
                .zip(&g.weights)
                .map(|(s, w)| (span[0].iter().map(|u| u * s).collect(), w * factor))
                .collect()
        }
        2 => {
            let radial = generalized_hermite(nodes, gamma_k + 0.5);
            polar_points(ctx, &span, &radial, nodes)
        }
        _ => {
            let mut pts = Vec::new();
            let mut grid: Vec<(Vec<f64>, f64)> = vec![(vec![0.0; n], 1.0)];
            for u in &span {
                let mut next = Vec::new();
                for (p, w) in &grid {
                    for (s, ws) in hermite.nodes.iter().zip(&hermite.weights) {
                        let q: Vec<f64> = p.iter().zip(u).map(|(a, b)| a + s * b).collect();
                        next.push((q, w * ws));
                    }
                }
                grid = next;
            }
            for (x, w) in grid {
                let wk = ctx.weight_w_k(&x);
                pts.push((x, w * wk));
            }
            pts
        }
    };
    let mut out_nodes = Vec::with_capacity(span_pts.len() * comp_pts.len());
    let mut out_weights = Vec::with_capacity(span_pts.len() * comp_pts.len());
    for (xs, ws) in &span_pts {
        for (xc, wc) in &comp_pts {
            out_nodes.push(xs.iter().zip(xc).map(|(a, b)| a + b).collect());
            out_weights.push(ws * wc);
        }
    }
    let accuracy = match span.len() {
        1 => format!("exact for polynomials of degree ≤ {}", 2 * nodes - 1),
        2 => format!("radial part exact to degree {}; angular Gauss–Jacobi per chamber arc", 2 * nodes - 1),
        _ => "tensor Gauss–Hermite with w_k as integrand factor (algebraic accuracy for non-integer k)".into(),
    };
    Ok(QuadratureRule {
        nodes: out_nodes,
        weights: out_weights,
        measure: Measure::GaussianWk,
        accuracy,
    })
}

/// Angles (mod π) of the reflecting lines inside the span plane, with the
/// multiplicity of the root vanishing there.
fn wall_angles<S: Scalar>(ctx: &RootSystemContext<S>, span: &[Vec<f64>]) -> Vec<(f64, f64)> {
    let pi = std::f64::consts::PI;
    let mut walls: Vec<(f64, f64)> = ctx
        .positive()
        .iter()
        .map(|pr| {
            let a = pr.root.normalized_f64();
            let phi = dot(&a, &span[1]).atan2(dot(&a, &span[0]));
            ((phi + pi / 2.0).rem_euclid(pi), pr.k_rational.to_f64())
        })
        .collect();
    walls.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    walls
}

fn polar_points<S: Scalar>(
    ctx: &RootSystemContext<S>,
    span: &[Vec<f64>],
    radial: &GaussRule,
    nodes: usize,
) -> Vec<(Vec<f64>, f64)> {
    let pi = std::f64::consts::PI;
    let walls = wall_angles(ctx, span);
    let dirs: Vec<(Vec<f64>, f64)> = ctx
        .positive()
        .iter()
        .map(|pr| (pr.root.normalized_f64(), pr.k_rational.to_f64()))
        .collect();
    let m = walls.len();
    let mut out = Vec::new();
    for j in 0..m {
        let (ta, ka) = walls[j];
        let (tb, kb) = if j + 1 < m { walls[j + 1] } else { (walls[0].0 + pi, walls[0].1) };
        let (ea, eb) = (2.0 * ka, 2.0 * kb);
        let g = gauss_jacobi(nodes, eb, ea);
        let half = (tb - ta) / 2.0;
        for (t, w) in g.nodes.iter().zip(&g.weights) {
            let theta = ta + half * (1.0 + t);
            let e: Vec<f64> = span[0]
                .iter()
                .zip(&span[1])
                .map(|(u, v)| theta.cos() * u + theta.sin() * v)
                .collect();
            // W(θ) divided by the Jacobi weight it is integrated against
            let mut wt = 1.0;
            for (a, k) in &dirs {
                if *k != 0.0 {
                    wt *= dot(a, &e).abs().powf(2.0 * k);
                }
            }
            let jac = (1.0 - t).powf(eb) * (1.0 + t).powf(ea);
            let ang_w = w * half * wt / jac;
            for (r, wr) in radial.nodes.iter().zip(&radial.weights) {
                out.push((e.iter().map(|c| c * r).collect(), ang_w * wr));
            }
        }
    }
    out
}

/// Rule for w_k(x)dx on the ball |x| ≤ L (rank one only): Gauss–Jacobi with
/// weight x^{2k} on each half line segment.
pub fn lebesgue_wk_rule<S: Scalar>(ctx: &RootSystemContext<S>, radius: f64, nodes: usize) -> Result<QuadratureRule> {
    if ctx.dim() != 1 {
        return Err(DunklError::Unsupported(
            "truncated Lebesgue rules are implemented in rank one".into(),
        ));
    }
    let k = ctx.positive()[0].k_rational.to_f64();
    let g = gauss_jacobi(nodes, 0.0, 2.0 * k);
    let scale = (radius / 2.0).powf(2.0 * k + 1.0) * 2f64.powf(k);
    let mut pts = Vec::with_capacity(2 * nodes);
    let mut wts = Vec::with_capacity(2 * nodes);
    for sign in [-1.0, 1.0] {
        for (t, w) in g.nodes.iter().zip(&g.weights) {
            pts.push(vec![sign * radius * (1.0 + t) / 2.0]);
            wts.push(w * scale);
        }
    }
    Ok(QuadratureRule {
        nodes: pts,
        weights: wts,
        measure: Measure::LebesgueWkTruncated(radius),
        accuracy: format!("Gauss–Jacobi on [0, {radius}] per half line, {nodes} nodes"),
    })
}

/// Closed forms of c_k = ∫ e^{−|x|²/2}w_k(x)dx where available: rank one
/// 2^{2k+1/2}Γ(k+1/2); a single multiplicity value on A, B, I_2(n) by the
/// Macdonald–Mehta product (2π)^{N/2} Π_j Γ(1+d_j k)/Γ(1+k).
pub fn c_k_closed_form<S: Scalar>(ctx: &RootSystemContext<S>) -> Option<f64> {
    let ks: Vec<f64> = ctx.multiplicity().values().iter().map(Scalar::to_f64).collect();
    let n = ctx.dim();
    let kind = ctx.system().kind();
    if kind == RootSystemKind::RankOne {
        let k = ks[0];
        return Some(2f64.powf(2.0 * k + 0.5) * gamma(k + 0.5));
    }
    if ks.iter().any(|v| (v - ks[0]).abs() > 0.0) {
        return None;
    }
    let k = ks[0];
    let degrees: Vec<usize> = match kind {
        RootSystemKind::A => (2..=n).collect(),
        RootSystemKind::B => (1..=n).map(|j| 2 * j).collect(),
        RootSystemKind::Dihedral(m) => vec![2, m],
        _ => return None,
    };
    let log: f64 = degrees
        .iter()
        .map(|&d| ln_gamma(1.0 + d as f64 * k) - ln_gamma(1.0 + k))
        .sum();
    Some((2.0 * std::f64::consts::PI).powf(n as f64 / 2.0) * log.exp())
}

/// Rank-one self-test: ∫x^{2m}|x|^{2μ}e^{−x²/2} = 2^{m+μ+1/2}Γ(m+μ+1/2).
pub fn check_generalized_hermite_moments(mu: f64, nodes: usize, max_m: usize) -> CheckOutcome {
    let g = generalized_hermite(nodes, mu);
    let mut worst = 0.0f64;
    for m in 0..=max_m {
        let q: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * x.powi(2 * m as i32)).sum();
        let exact = ((m as f64 + mu + 0.5) * 2f64.ln() + ln_gamma(m as f64 + mu + 0.5)).exp();
        worst = worst.max((q / exact - 1.0).abs());
        let odd: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * x.powi(2 * m as i32 + 1)).sum();
        worst = worst.max(odd.abs() / exact);
    }
    CheckOutcome::numeric(
        "hermite-moments",
        "∫x^{2m}|x|^{2μ}e^{−x²/2}dx = 2^{m+μ+1/2}Γ(m+μ+1/2)",
        worst,
        1e-12,
        format!("μ = {mu}, m ≤ {max_m}, {nodes} nodes"),
    )
}

/// c_k by quadrature against the closed form, when one exists.
pub fn check_c_k<S: Scalar>(ctx: &RootSystemContext<S>, rule: &QuadratureRule) -> CheckOutcome {
    let q = rule.total_mass();
    match c_k_closed_form(ctx) {
        Some(c) => CheckOutcome::numeric(
            "c_k",
            "c_k = ∫e^{−|x|²/2}w_k dx (closed form)",
            (q / c - 1.0).abs(),
            1e-10,
            format!("quadrature {q:.15e}, closed form {c:.15e}"),
        ),
        None => CheckOutcome::flag("c_k", "c_k = ∫e^{−|x|²/2}w_k dx", q > 0.0, format!("quadrature {q:.15e} (no closed form)")),
    }
}

/// [p,q]_k = c_k^{−1}∫ e^{−Δ_k/2}p · e^{−Δ_k/2}q · e^{−|x|²/2}w_k dx for all
/// monomial pairs up to `cap`.
pub fn check_macdonald(ctx: &RootSystemContext<Rational>, rule: &QuadratureRule, cap: usize) -> Result<CheckOutcome> {
    let dim = ctx.dim();
    let monos: Vec<MultiPoly<Rational>> = (0..=cap)
        .flat_map(|n| monomials_of_degree(dim, n))
        .map(|m| MultiPoly::monomial(m, Rational::from_integer(1.into())))
        .collect();
    let c_k = rule.total_mass();
    let values: Vec<Vec<f64>> = monos
        .iter()
        .map(|p| {
            let e = exp_half_neg_delta(ctx, p)?.to_f64();
            Ok(rule.nodes.iter().map(|x| e.eval_f64(x)).collect())
        })
        .collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    let mut witness = String::new();
    for i in 0..monos.len() {
        for j in i..monos.len() {
            let exact = fischer_pair(ctx, &monos[i], &monos[j])?.to_f64();
            let integral: f64 = rule
                .weights
                .iter()
                .zip(values[i].iter().zip(&values[j]))
                .map(|(w, (a, b))| w * a * b)
                .sum::<f64>()
                / c_k;
            // relative error, absolute 1e-10 at exact zeros (scaled to 1e-8)
            let err = if exact == 0.0 {
                integral.abs() * 100.0
            } else {
                ((integral - exact) / exact).abs()
            };
            if err > worst {
                worst = err;
                witness = format!("p = {:?}, q = {:?}: exact {exact:.12e}, quadrature {integral:.12e}", monos[i], monos[j]);
            }
        }
    }
    Ok(CheckOutcome::numeric(
        "macdonald",
        "[p,q]_k = c_k⁻¹∫e^{−Δ_k/2}p·e^{−Δ_k/2}q dμ_k",
        worst,
        1e-8,
        format!("{} monomials up to degree {cap}; worst {witness}", monos.len()),
    ))
}

/// ∫ T_ξf · g w_k = −∫ f · T_ξg w_k for f = p e^{−|x|²/4}, g = q e^{−|x|²/4},
/// using T_ξ f = e^{−|x|²/4}(T_ξ p − ⟨ξ,x⟩p/2).
pub fn check_antisymmetry<S: Scalar>(
    ctx: &RootSystemContext<S>,
    rule: &QuadratureRule,
    pairs: &[(MultiPoly<S>, MultiPoly<S>)],
) -> Result<CheckOutcome> {
    let dim = ctx.dim();
    let half = S::from_ratio(1, 2);
    let mut worst = 0.0f64;
    for (p, q) in pairs {
        for i in 0..dim {
            let xi = MultiPoly::var(dim, i).scale(&half);
            let tp = apply_t_axis(ctx, i, p)?.sub(&xi.mul(p)).to_f64();
            let tq = apply_t_axis(ctx, i, q)?.sub(&xi.mul(q)).to_f64();
            let (pf, qf) = (p.to_f64(), q.to_f64());
            let lhs = rule.integrate_real(|x| tp.eval_f64(x) * qf.eval_f64(x))?;
            let rhs = -rule.integrate_real(|x| pf.eval_f64(x) * tq.eval_f64(x))?;
            let scale = lhs.abs().max(rhs.abs()).max(1.0);
            worst = worst.max((lhs - rhs).abs() / scale);
        }
    }
    Ok(CheckOutcome::numeric(
        "antisymmetry",
        "∫T_ξf·g w_k = −∫f·T_ξg w_k",
        worst,
        1e-8,
        format!("{} pairs × {dim} directions", pairs.len()),
    ))
}

/// Doubling the node count changes the integral of `f` by less than `tol`.
pub fn check_node_doubling<S: Scalar>(
    ctx: &RootSystemContext<S>,
    nodes: usize,
    f: impl Fn(&[f64]) -> f64,
    tol: f64,
) -> Result<CheckOutcome> {
    let a = gaussian_wk_rule(ctx, nodes)?.integrate_real(&f)?;
    let b = gaussian_wk_rule(ctx, 2 * nodes)?.integrate_real(&f)?;
    Ok(CheckOutcome::numeric(
        "node-doubling",
        "quadrature convergence under node doubling",
        (a - b).abs() / b.abs().max(1.0),
        tol,
        format!("{nodes} vs {} nodes: {a:.15e} / {b:.15e}", 2 * nodes),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{ExactContext, FloatContext, RootSystem};
    use crate::scalar::{rat, rat_int};

    #[test]
    fn hermite_rule_basics() {
        let g = generalized_hermite(40, 0.0);
        let mass: f64 = g.weights.iter().sum();
        assert!((mass - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-12);
        assert!(g.weights.iter().all(|w| *w > 0.0));
        for mu in [0.0, 0.25, 0.5, 1.0, 1.5] {
            assert!(check_generalized_hermite_moments(mu, 40, 10).pass);
        }
    }

    #[test]
    fn jacobi_mass_and_moment() {
        let (a, b) = (-0.5, 0.5);
        let g = gauss_jacobi(30, a, b);
        let mass: f64 = g.weights.iter().sum();
        // ∫(1−t)^{-1/2}(1+t)^{1/2} = π
        assert!((mass - std::f64::consts::PI).abs() < 1e-12);
        let m1: f64 = g.nodes.iter().zip(&g.weights).map(|(t, w)| t * w).sum();
        // first moment (b−a)/(a+b+2) μ₀
        assert!((m1 - std::f64::consts::PI * 0.5).abs() < 1e-12);
    }

    #[test]
    fn rank_one_c_k() {
        let ctx = ExactContext::new(RootSystem::standard(RootSystemKind::RankOne, 1).unwrap(), &[rat_int(1)]).unwrap();
        let rule = gaussian_wk_rule(&ctx, 40).unwrap();
        let c = 2.0 * (2.0 * std::f64::consts::PI).sqrt();
        assert!((rule.total_mass() - c).abs() < 1e-12);
        assert!(check_c_k(&ctx, &rule).pass);
        let odd = rule.integrate_real(|x| x[0].powi(3)).unwrap();
        assert!(odd.abs() < 1e-12);
    }

    #[test]
    fn rank_two_c_k_matches_mehta() {
        for (kind, n) in [(RootSystemKind::B, 2), (RootSystemKind::A, 3)] {
            let ctx = FloatContext::new(RootSystem::standard(kind, n).unwrap(), &[rat(1, 2)]).unwrap();
            let rule = gaussian_wk_rule(&ctx, 30).unwrap();
            assert!(check_c_k(&ctx, &rule).pass, "{kind:?}: {:?}", check_c_k(&ctx, &rule));
        }
        let ctx = FloatContext::new(RootSystem::standard(RootSystemKind::Dihedral(5), 5).unwrap(), &[rat(1, 3)]).unwrap();
        let rule = gaussian_wk_rule(&ctx, 30).unwrap();
        assert!(check_c_k(&ctx, &rule).pass);
    }

    #[test]
    fn lebesgue_rule_mass() {
        let ctx = ExactContext::new(RootSystem::standard(RootSystemKind::RankOne, 1).unwrap(), &[rat(1, 2)]).unwrap();
        let rule = lebesgue_wk_rule(&ctx, 2.0, 20).unwrap();
        // ∫_{-2}^{2} √2 |x| dx = 4√2
        assert!((rule.total_mass() - 4.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn macdonald_rank_one() {
        let ctx = ExactContext::new(RootSystem::standard(RootSystemKind::RankOne, 1).unwrap(), &[rat(1, 2)]).unwrap();
        let rule = gaussian_wk_rule(&ctx, 40).unwrap();
        let c = check_macdonald(&ctx, &rule, 5).unwrap();
        assert!(c.pass, "{c:?}");
    }
}
