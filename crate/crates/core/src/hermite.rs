//! Generalized Hermite polynomials H_ν = e^{−Δ_k/2}φ_ν.
//!
//! The φ_ν come from Gram–Schmidt under [·,·]_k within each 𝒫_n, starting
//! from the monomials in graded lex order (x₁ⁿ first). Vectors are kept
//! unnormalized with exact squared norms s_ν, so every identity that assumes
//! an orthonormal basis carries an explicit 1/s_ν here.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dunkl_calculus::{apply_delta_k, apply_p_of_t, apply_t_axis, exp_half_neg_delta, fischer_pair};
use crate::error::{DunklError, Result};
use crate::kernel::KernelFn;
use crate::linalg::{rank, Matrix};
use crate::polynomial::{homogeneous_dimension, monomials_of_degree, Monomial, MultiPoly};
use crate::quadrature::QuadratureRule;
use crate::report::CheckOutcome;
use crate::root_system::RootSystemContext;
use crate::scalar::{Rational, Scalar};
use crate::special::laguerre;

#[derive(Clone, Debug)]
pub struct HermiteEntry<S: Scalar> {
    /// Leading monomial of the Gram–Schmidt step.
    pub nu: Monomial,
    pub phi: MultiPoly<S>,
    /// s_ν = [φ_ν, φ_ν]_k.
    pub norm_sq: S,
    pub h: MultiPoly<S>,
}

#[derive(Clone, Debug)]
pub struct HermiteSystem<S: Scalar> {
    ctx: RootSystemContext<S>,
    degrees: Vec<Vec<HermiteEntry<S>>>,
}

impl<S: Scalar> HermiteSystem<S> {
    pub fn build(ctx: &RootSystemContext<S>, cap: usize) -> Result<Self> {
        let degrees = (0..=cap).map(|n| build_degree(ctx, n)).collect::<Result<_>>()?;
        Ok(HermiteSystem { ctx: ctx.clone(), degrees })
    }

    pub fn context(&self) -> &RootSystemContext<S> {
        &self.ctx
    }

    pub fn cap(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degree(&self, n: usize) -> &[HermiteEntry<S>] {
        &self.degrees[n]
    }

    pub fn entries(&self) -> impl Iterator<Item = &HermiteEntry<S>> {
        self.degrees.iter().flatten()
    }

    pub fn find(&self, nu: &Monomial) -> Option<&HermiteEntry<S>> {
        self.degrees.get(nu.degree())?.iter().find(|e| &e.nu == nu)
    }
}

fn build_degree<S: Scalar>(ctx: &RootSystemContext<S>, n: usize) -> Result<Vec<HermiteEntry<S>>> {
    let dim = ctx.dim();
    let monos = monomials_of_degree(dim, n);
    let d = monos.len();
    let polys: Vec<MultiPoly<S>> = monos.iter().map(|m| MultiPoly::monomial(m.clone(), S::one())).collect();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|a| (a..d).map(move |b| (a, b))).collect();
    let values: Vec<S> = pairs
        .par_iter()
        .map(|&(a, b)| fischer_pair(ctx, &polys[a], &polys[b]))
        .collect::<Result<_>>()?;
    let mut gram = Matrix::zeros(d, d);
    for (&(a, b), v) in pairs.iter().zip(values) {
        gram[(a, b)] = v.clone();
        gram[(b, a)] = v;
    }
    let form = |u: &[S], v: &[S]| -> S {
        let gv = gram.apply(v);
        u.iter().zip(&gv).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    };
    let mut coeffs: Vec<Vec<S>> = Vec::with_capacity(d);
    let mut norms: Vec<S> = Vec::with_capacity(d);
    for j in 0..d {
        let mut c = vec![S::zero(); d];
        c[j] = S::one();
        for i in 0..j {
            let proj = form(&c, &coeffs[i]) / norms[i].clone();
            if !proj.is_zero() {
                for (cj, ci) in c.iter_mut().zip(&coeffs[i]) {
                    *cj = cj.clone() - proj.clone() * ci.clone();
                }
            }
        }
        let s = form(&c, &c);
        if s.negligible(1.0) {
            return Err(DunklError::ZeroNorm(format!("{:?}", monos[j])));
        }
        coeffs.push(c);
        norms.push(s);
    }
    coeffs
        .into_par_iter()
        .zip(norms)
        .enumerate()
        .map(|(j, (c, s))| {
            let phi = MultiPoly::from_terms(dim, monos.iter().cloned().zip(c))?;
            let h = exp_half_neg_delta(ctx, &phi)?;
            Ok(HermiteEntry {
                nu: monos[j].clone(),
                phi,
                norm_sq: s,
                h,
            })
        })
        .collect()
}

fn is_zero_poly<S: Scalar>(p: &MultiPoly<S>, scale: f64) -> bool {
    if S::EXACT {
        p.is_zero()
    } else {
        p.chop(scale).is_zero()
    }
}

/// [φ_μ, φ_ν]_k = 0 for μ ≠ ν and s_ν > 0, recomputed directly.
pub fn check_orthogonality<S: Scalar>(sys: &HermiteSystem<S>) -> Result<CheckOutcome> {
    let ctx = sys.context();
    let mut fail = None;
    let mut checked = 0;
    for n in 0..=sys.cap() {
        let entries = sys.degree(n);
        for (a, ea) in entries.iter().enumerate() {
            if ea.norm_sq.to_f64() <= 0.0 {
                fail = Some(format!("s_{:?} = {:?} is not positive", ea.nu, ea.norm_sq));
            }
            for eb in &entries[a + 1..] {
                let v = fischer_pair(ctx, &ea.phi, &eb.phi)?;
                checked += 1;
                let ok = if S::EXACT { v.is_zero() } else { v.negligible(ea.norm_sq.to_f64()) };
                if !ok && fail.is_none() {
                    fail = Some(format!("[φ_{:?}, φ_{:?}]_k = {:?}", ea.nu, eb.nu, v));
                }
            }
        }
    }
    Ok(CheckOutcome::exact("hermite-orthogonality", "[φ_μ,φ_ν]_k = 0 (μ ≠ ν), s_ν > 0", fail, checked))
}

/// (−Δ_k + ρ)H_ν = |ν|H_ν, equivalently (−Δ_k + |x|²/4)h_ν = (|ν|+γ+N/2)h_ν.
pub fn check_eigen_equations<S: Scalar>(sys: &HermiteSystem<S>) -> Result<CheckOutcome> {
    let ctx = sys.context();
    let mut fail = None;
    let mut checked = 0;
    for e in sys.entries() {
        let n = e.nu.degree();
        let lhs = e.h.euler().sub(&apply_delta_k(ctx, &e.h)?);
        let diff = lhs.sub(&e.h.scale(&S::from_i64(n as i64)));
        checked += 1;
        if !is_zero_poly(&diff, e.h.max_abs_coeff()) {
            fail = Some(format!("ν = {:?}", e.nu.exponents()));
            break;
        }
    }
    let shift = ctx.gamma_f64() + ctx.dim() as f64 / 2.0;
    let mut c = CheckOutcome::exact("hermite-eigen", "(−Δ_k + ρ)H_ν = |ν|H_ν", fail, checked);
    if c.pass {
        c.detail = format!("{checked} cases exact; h_ν eigenvalues |ν| + {shift}");
    }
    Ok(c)
}

/// H_ν(−x) = (−1)^{|ν|}H_ν(x).
pub fn check_parity<S: Scalar>(sys: &HermiteSystem<S>) -> CheckOutcome {
    let dim = sys.context().dim();
    let mut minus = Matrix::identity(dim);
    for i in 0..dim {
        minus[(i, i)] = -S::one();
    }
    let mut fail = None;
    let mut checked = 0;
    for e in sys.entries() {
        let sign = if e.nu.degree() % 2 == 0 { S::one() } else { -S::one() };
        let diff = e.h.compose_linear(&minus).sub(&e.h.scale(&sign));
        checked += 1;
        if !is_zero_poly(&diff, e.h.max_abs_coeff()) {
            fail = Some(format!("ν = {:?}", e.nu.exponents()));
            break;
        }
    }
    CheckOutcome::exact("hermite-parity", "H_ν(−x) = (−1)^{|ν|}H_ν(x)", fail, checked)
}

/// span{H_ν : |ν| = n} has dimension dim 𝒫_n.
pub fn check_dimension<S: Scalar>(sys: &HermiteSystem<S>) -> CheckOutcome {
    let dim = sys.context().dim();
    let mut fail = None;
    for n in 0..=sys.cap() {
        let monos: Vec<Monomial> = (0..=n).flat_map(|j| monomials_of_degree(dim, j)).collect();
        let entries = sys.degree(n);
        let mut m = Matrix::zeros(monos.len(), entries.len());
        for (j, e) in entries.iter().enumerate() {
            for (i, mono) in monos.iter().enumerate() {
                m[(i, j)] = e.h.coeff(mono);
            }
        }
        let r = rank(&m);
        let expect = homogeneous_dimension(dim, n);
        if r != expect {
            fail = Some(format!("degree {n}: rank {r}, dim 𝒫_n = {expect}"));
            break;
        }
    }
    CheckOutcome::exact("hermite-dimension", "dim span{H_ν : |ν| = n} = dim 𝒫_n", fail, sys.cap() + 1)
}

/// D^μ 1 with D_i = T_i − x_i, i.e. e^{|x|²/2}T^μ e^{−|x|²/2}.
fn shifted_power<S: Scalar>(
    ctx: &RootSystemContext<S>,
    m: &Monomial,
    cache: &mut HashMap<Monomial, MultiPoly<S>>,
) -> Result<MultiPoly<S>> {
    if let Some(v) = cache.get(m) {
        return Ok(v.clone());
    }
    let i = m.exponents().iter().rposition(|&e| e > 0).expect("constant monomial is cached");
    let prev = shifted_power(ctx, &m.lower(i).unwrap(), cache)?;
    let xi = MultiPoly::var(ctx.dim(), i);
    let v = apply_t_axis(ctx, i, &prev)?.sub(&xi.mul(&prev));
    cache.insert(m.clone(), v.clone());
    Ok(v)
}

/// H_ν = (−1)^{|ν|}e^{|x|²/2}φ_ν(T)e^{−|x|²/2}, as a polynomial identity:
/// the Gaussian is G-invariant, so T_i(e^{−|x|²/2}q) = e^{−|x|²/2}(T_i − x_i)q.
pub fn check_rodrigues<S: Scalar>(sys: &HermiteSystem<S>) -> Result<CheckOutcome> {
    let ctx = sys.context();
    let dim = ctx.dim();
    let mut cache = HashMap::new();
    cache.insert(Monomial::one(dim), MultiPoly::one(dim));
    let mut fail = None;
    let mut checked = 0;
    for e in sys.entries() {
        let mut rhs = MultiPoly::zero(dim);
        for (m, c) in e.phi.terms() {
            rhs = rhs.add(&shifted_power(ctx, m, &mut cache)?.scale(c));
        }
        if e.nu.degree() % 2 == 1 {
            rhs = rhs.neg();
        }
        checked += 1;
        if !is_zero_poly(&e.h.sub(&rhs), e.h.max_abs_coeff()) {
            fail = Some(format!("ν = {:?}", e.nu.exponents()));
            break;
        }
    }
    Ok(CheckOutcome::exact(
        "rodrigues",
        "H_ν = (−1)^{|ν|}e^{|x|²/2}φ_ν(T)e^{−|x|²/2}",
        fail,
        checked,
    ))
}

/// Weak Rodrigues form: ∫H_ν p dm_k = c_k⁻¹∫ e^{−|x|²/2}(φ_ν(T)p) w_k dx for
/// monomials p up to `cap`.
pub fn check_rodrigues_weak<S: Scalar>(sys: &HermiteSystem<S>, rule: &QuadratureRule, cap: usize) -> Result<CheckOutcome> {
    let ctx = sys.context();
    let dim = ctx.dim();
    let c_k = rule.total_mass();
    let monos: Vec<MultiPoly<S>> = (0..=cap)
        .flat_map(|n| monomials_of_degree(dim, n))
        .map(|m| MultiPoly::monomial(m, S::one()))
        .collect();
    let mut worst = 0.0f64;
    let mut witness = String::new();
    for e in sys.entries() {
        let hf = e.h.to_f64();
        for p in &monos {
            let pf = p.to_f64();
            let lhs = rule.integrate_real(|x| hf.eval_f64(x) * pf.eval_f64(x))? / c_k;
            let q = apply_p_of_t(ctx, &e.phi, p)?.to_f64();
            let rhs = rule.integrate_real(|x| q.eval_f64(x))? / c_k;
            let err = (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0);
            if err > worst {
                worst = err;
                witness = format!("ν = {:?}, p = {p:?}", e.nu.exponents());
            }
        }
    }
    Ok(CheckOutcome::numeric(
        "rodrigues-weak",
        "∫H_ν p dm_k = c_k⁻¹∫e^{−|x|²/2}φ_ν(T)p w_k",
        worst,
        1e-7,
        format!("monomials p up to degree {cap}; worst {witness}"),
    ))
}

/// ∫H_μ H_ν dm_k = δ_{μν}s_ν with dm_k = c_k⁻¹e^{−|x|²/2}w_k dx.
pub fn check_quadrature_orthogonality<S: Scalar>(sys: &HermiteSystem<S>, rule: &QuadratureRule) -> Result<CheckOutcome> {
    let c_k = rule.total_mass();
    let entries: Vec<&HermiteEntry<S>> = sys.entries().collect();
    let values: Vec<Vec<f64>> = entries
        .par_iter()
        .map(|e| {
            let h = e.h.to_f64();
            rule.nodes.iter().map(|x| h.eval_f64(x)).collect()
        })
        .collect();
    let norms: Vec<f64> = entries.iter().map(|e| e.norm_sq.to_f64()).collect();
    let mut worst = 0.0f64;
    let mut witness = String::new();
    for a in 0..entries.len() {
        for b in a..entries.len() {
            let integral: f64 = rule
                .weights
                .iter()
                .zip(values[a].iter().zip(&values[b]))
                .map(|(w, (u, v))| w * u * v)
                .sum::<f64>()
                / c_k;
            let target = if a == b { norms[a] } else { 0.0 };
            let err = (integral - target).abs() / (norms[a] * norms[b]).sqrt();
            if err > worst {
                worst = err;
                witness = format!("μ = {:?}, ν = {:?}", entries[a].nu.exponents(), entries[b].nu.exponents());
            }
        }
    }
    Ok(CheckOutcome::numeric(
        "hermite-quadrature-orthogonality",
        "∫H_μH_ν dm_k = δ_{μν}s_ν",
        worst,
        1e-7,
        format!("{} polynomials; worst {witness}", entries.len()),
    ))
}

fn exact_point(x: &[f64]) -> Vec<Rational> {
    x.iter().map(|v| Rational::from_f64(*v)).collect()
}

fn eval_at<S: Scalar>(p: &MultiPoly<S>, x: &[f64]) -> f64 {
    if S::EXACT {
        let q: Vec<S> = exact_point(x).iter().map(S::from_rational).collect();
        p.eval(&q).map(|v| v.to_f64()).unwrap_or(f64::NAN)
    } else {
        p.to_f64().eval_f64(x)
    }
}

/// e^{−|y|²/2}E_k(x,y) = Σ_ν H_ν(x)φ_ν(y)/s_ν, truncated at the system's cap.
pub fn check_generating<S: Scalar>(sys: &HermiteSystem<S>, ev: &dyn KernelFn, x: &[f64], y: &[f64]) -> Result<CheckOutcome> {
    let mut lhs = 0.0;
    for e in sys.entries() {
        lhs += eval_at(&e.h, x) * eval_at(&e.phi, y) / e.norm_sq.to_f64();
    }
    let y2: f64 = y.iter().map(|v| v * v).sum();
    let rhs = (-y2 / 2.0).exp() * ev.eval_e_real(x, y)?;
    Ok(CheckOutcome::numeric(
        "hermite-generating",
        "e^{−|y|²/2}E_k(x,y) = Σ H_ν(x)φ_ν(y)/s_ν",
        (lhs - rhs).abs() / rhs.abs().max(1.0),
        1e-8,
        format!("x = {x:?}, y = {y:?}, |ν| ≤ {}: {lhs:.15e} vs {rhs:.15e}", sys.cap()),
    ))
}

/// Σ H_ν(x)H_ν(y)r^{|ν|}/s_ν =
/// (1−r²)^{−γ−N/2} exp(−r²(|x|²+|y|²)/(2(1−r²))) E_k(rx/(1−r²), y).
pub fn check_mehler<S: Scalar>(sys: &HermiteSystem<S>, ev: &dyn KernelFn, x: &[f64], y: &[f64], r: f64) -> Result<CheckOutcome> {
    let ctx = sys.context();
    let mut lhs = 0.0;
    for e in sys.entries() {
        lhs += eval_at(&e.h, x) * eval_at(&e.h, y) * r.powi(e.nu.degree() as i32) / e.norm_sq.to_f64();
    }
    let s = 1.0 - r * r;
    let n2 = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>();
    let xs: Vec<f64> = x.iter().map(|v| r * v / s).collect();
    let rhs = s.powf(-(ctx.gamma_f64() + ctx.dim() as f64 / 2.0))
        * (-(r * r) * (n2(x) + n2(y)) / (2.0 * s)).exp()
        * ev.eval_e_real(&xs, y)?;
    Ok(CheckOutcome::numeric(
        "mehler",
        "Σ H_ν(x)H_ν(y)r^{|ν|}/s_ν = Mehler kernel",
        (lhs - rhs).abs() / rhs.abs().max(1.0),
        1e-8,
        format!(
            "x = {x:?}, y = {y:?}, r = {r}, |ν| ≤ {} (r^cap = {:.1e}): {lhs:.15e} vs {rhs:.15e}",
            sys.cap(),
            r.powi(sys.cap() as i32)
        ),
    ))
}

/// Rank one: H_{2n} ∝ L_n^{k−1/2}(x²/2) and H_{2n+1} ∝ x L_n^{k+1/2}(x²/2).
pub fn check_rank_one_laguerre(sys: &HermiteSystem<Rational>, k: f64) -> CheckOutcome {
    let pts: Vec<f64> = (1..=12).map(|j| 0.37 * j as f64 - 2.1).collect();
    let mut worst = 0.0f64;
    let mut witness = String::new();
    for e in sys.entries() {
        let n = e.nu.degree();
        let oracle = |x: f64| {
            if n % 2 == 0 {
                laguerre(n / 2, k - 0.5, x * x / 2.0)
            } else {
                x * laguerre(n / 2, k + 0.5, x * x / 2.0)
            }
        };
        let h: Vec<f64> = pts.iter().map(|&x| eval_at(&e.h, &[x])).collect();
        let l: Vec<f64> = pts.iter().map(|&x| oracle(x)).collect();
        let c = h.iter().zip(&l).map(|(a, b)| a * b).sum::<f64>() / l.iter().map(|b| b * b).sum::<f64>();
        let scale = h.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let err = h.iter().zip(&l).map(|(a, b)| (a - c * b).abs()).fold(0.0, f64::max) / scale;
        if err > worst {
            worst = err;
            witness = format!("n = {n}");
        }
    }
    CheckOutcome::numeric(
        "hermite-laguerre",
        "H_{2n} ∝ L_n^{k−1/2}(x²/2), H_{2n+1} ∝ xL_n^{k+1/2}(x²/2)",
        worst,
        1e-10,
        format!("k = {k}, n ≤ {}; worst {witness}", sys.cap()),
    )
}

/// Transform eigenfunctions in rank one: ψ_ν(x) = e^{−|x|²/2}H_ν(√2x).
pub fn hermite_function<S: Scalar>(entry: &HermiteEntry<S>, x: &[f64]) -> f64 {
    let xs: Vec<f64> = x.iter().map(|v| v * std::f64::consts::SQRT_2).collect();
    let x2: f64 = x.iter().map(|v| v * v).sum();
    (-x2 / 2.0).exp() * entry.h.to_f64().eval_f64(&xs)
}

/// (−i)^n.
pub fn minus_i_pow(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::RankOneKernel;
    use crate::quadrature::gaussian_wk_rule;
    use crate::root_system::{ExactContext, RootSystem, RootSystemKind};
    use crate::scalar::{rat, rat_int};

    fn rank_one(k: Rational) -> ExactContext {
        ExactContext::new(RootSystem::standard(RootSystemKind::RankOne, 1).unwrap(), &[k]).unwrap()
    }

    #[test]
    fn rank_one_structure() {
        let ctx = rank_one(rat(1, 2));
        let sys = HermiteSystem::build(&ctx, 8).unwrap();
        assert_eq!(sys.degree(0)[0].h, MultiPoly::one(1));
        // s_1 = [x,x]_k = 1 + 2k
        assert_eq!(sys.degree(1)[0].norm_sq, rat_int(2));
        assert!(check_orthogonality(&sys).unwrap().pass);
        assert!(check_eigen_equations(&sys).unwrap().pass);
        assert!(check_parity(&sys).pass);
        assert!(check_dimension(&sys).pass);
        assert!(check_rodrigues(&sys).unwrap().pass);
        assert!(check_rank_one_laguerre(&sys, 0.5).pass);
    }

    #[test]
    fn k_zero_matches_classical_hermite() {
        let ctx = rank_one(rat_int(0));
        let sys = HermiteSystem::build(&ctx, 6).unwrap();
        for e in sys.entries() {
            let n = e.nu.degree();
            for x in [0.3, -1.1, 2.0] {
                // x^n-normalized: H_n(x) = 2^{−n/2}Ĥ_n(x/√2)
                let expected = 2f64.powf(-(n as f64) / 2.0) * crate::special::hermite_physicists(n, x / 2f64.sqrt());
                let got = e.h.to_f64().eval_f64(&[x]);
                assert!((got - expected).abs() < 1e-12 * expected.abs().max(1.0));
            }
        }
    }

    #[test]
    fn b2_quadrature_and_rodrigues() {
        let ctx = ExactContext::new(RootSystem::standard(RootSystemKind::B, 2).unwrap(), &[rat(1, 2)]).unwrap();
        let sys = HermiteSystem::build(&ctx, 4).unwrap();
        assert!(check_orthogonality(&sys).unwrap().pass);
        assert!(check_eigen_equations(&sys).unwrap().pass);
        assert!(check_rodrigues(&sys).unwrap().pass);
        let rule = gaussian_wk_rule(&ctx, 24).unwrap();
        let c = check_quadrature_orthogonality(&sys, &rule).unwrap();
        assert!(c.pass, "{c:?}");
        let w = check_rodrigues_weak(&sys, &rule, 3).unwrap();
        assert!(w.pass, "{w:?}");
    }

    #[test]
    fn generating_and_mehler_rank_one() {
        let ctx = rank_one(rat(1, 2));
        let sys = HermiteSystem::build(&ctx, 30).unwrap();
        let ev = RankOneKernel::new(0.5);
        let g = check_generating(&sys, &ev, &[0.7], &[-0.4]).unwrap();
        assert!(g.pass, "{g:?}");
        let m = check_mehler(&sys, &ev, &[0.7], &[-0.4], 0.5).unwrap();
        assert!(m.pass, "{m:?}");
    }
}
