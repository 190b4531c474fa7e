//! Dunkl transform, generalized translation and the heat kernel.
//!
//! Integrals run over truncated Lebesgue rules for w_k(x)dx on [−L, L], so
//! this module works in rank one, where E_k has a closed form valid for any
//! argument size.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{DunklError, Result};
use crate::hermite::{hermite_function, minus_i_pow, HermiteSystem};
use crate::kernel::{KernelFn, RankOneKernel};
use crate::quadrature::{c_k_closed_form, lebesgue_wk_rule, QuadratureRule};
use crate::random::TestRng;
use crate::report::CheckOutcome;
use crate::root_system::RootSystemContext;
use crate::scalar::Scalar;

use rand::Rng;

pub const DEFAULT_RADIUS: f64 = 10.0;
pub const DEFAULT_NODES: usize = 160;
/// Integrand size tolerated at the truncation boundary.
pub const BOUNDARY_TOLERANCE: f64 = 1e-10;

/// A real or complex function of one point.
pub type PointFn<'a> = dyn Fn(&[f64]) -> Complex64 + Sync + 'a;

#[derive(Clone, Debug)]
pub struct TransformValue {
    pub value: Complex64,
    /// max |f|·w_k over the outer 5% of the truncated domain.
    pub boundary: f64,
}

/// Rank-one transform plan: f̂(ξ) = c_k⁻¹∫ f(x)E_k(−iξ,x)w_k(x)dx.
#[derive(Clone, Debug)]
pub struct TransformPlan {
    pub k: f64,
    pub c_k: f64,
    pub radius: f64,
    rule: QuadratureRule,
    kernel: RankOneKernel,
}

fn require_rank_one<S: Scalar>(ctx: &RootSystemContext<S>) -> Result<f64> {
    if ctx.dim() != 1 || ctx.positive().len() != 1 {
        return Err(DunklError::Unsupported(
            "transform and heat quadrature are implemented in rank one".into(),
        ));
    }
    Ok(ctx.positive()[0].k_rational.to_f64())
}

impl TransformPlan {
    pub fn new<S: Scalar>(ctx: &RootSystemContext<S>, radius: f64, nodes: usize) -> Result<Self> {
        let k = require_rank_one(ctx)?;
        Ok(TransformPlan {
            k,
            c_k: c_k_closed_form(ctx).expect("rank one has a closed form"),
            radius,
            rule: lebesgue_wk_rule(ctx, radius, nodes)?,
            kernel: RankOneKernel::new(k),
        })
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    pub fn kernel(&self) -> &RankOneKernel {
        &self.kernel
    }

    /// E_k(ix, ξ) for real x, ξ; `sign` = −1 gives E_k(−ix, ξ).
    pub fn e_imag(&self, sign: f64, x: f64, xi: f64) -> Complex64 {
        crate::special::rank_one_kernel(self.k, Complex64::new(0.0, sign * x * xi))
    }

    pub fn boundary(&self, values: &[Complex64]) -> f64 {
        let cut = 0.95 * self.radius;
        self.rule
            .nodes
            .iter()
            .zip(values)
            .filter(|(x, _)| x[0].abs() >= cut)
            .map(|(x, v)| v.norm() * 2f64.powf(self.k) * x[0].abs().powf(2.0 * self.k))
            .fold(0.0, f64::max)
    }

    /// f sampled at the rule nodes.
    pub fn sample(&self, f: &PointFn) -> Vec<Complex64> {
        self.rule.nodes.iter().map(|x| f(x)).collect()
    }

    /// Transform from node samples, at one frequency; `sign` = −1 is the
    /// forward transform, +1 the inverse.
    pub fn apply_sampled(&self, samples: &[Complex64], xi: f64, sign: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((x, w), f) in self.rule.nodes.iter().zip(&self.rule.weights).zip(samples) {
            acc += f * self.e_imag(sign, xi, x[0]) * *w;
        }
        acc / self.c_k
    }

    pub fn transform(&self, f: &PointFn, xi: f64) -> Result<TransformValue> {
        let samples = self.sample(f);
        if let Some(i) = samples.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(DunklError::NonFinite {
                index: i,
                detail: format!("f({:?})", self.rule.nodes[i]),
            });
        }
        Ok(TransformValue {
            value: self.apply_sampled(&samples, xi, -1.0),
            boundary: self.boundary(&samples),
        })
    }

    /// Forward transform evaluated at every node, for norms and inversion.
    pub fn transform_at_nodes(&self, samples: &[Complex64]) -> Vec<Complex64> {
        self.rule.nodes.par_iter().map(|xi| self.apply_sampled(samples, xi[0], -1.0)).collect()
    }

    /// ∫|f|²w_k from node samples.
    pub fn norm_sq(&self, samples: &[Complex64]) -> f64 {
        samples.iter().zip(&self.rule.weights).map(|(v, w)| v.norm_sqr() * w).sum()
    }

    /// τ_y f(x) = c_k⁻¹∫ f̂(ξ)E_k(ix,ξ)E_k(iy,ξ)w_k(ξ)dξ with f̂ given.
    pub fn translate(&self, fhat: &PointFn, y: f64, x: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (xi, w) in self.rule.nodes.iter().zip(&self.rule.weights) {
            acc += fhat(xi) * self.e_imag(1.0, x, xi[0]) * self.e_imag(1.0, y, xi[0]) * *w;
        }
        acc / self.c_k
    }
}

/// Γ_k(t,x,y) = (2t)^{−γ−N/2}c_k⁻¹ e^{−(|x|²+|y|²)/4t} E_k(x/√(2t), y/√(2t)).
pub struct HeatKernel<'a> {
    pub gamma: f64,
    pub dim: usize,
    pub c_k: f64,
    kernel: &'a dyn KernelFn,
    rank_one_k: Option<f64>,
}

impl<'a> HeatKernel<'a> {
    /// Rank one uses the closed-form kernel split, so any t > 0 works; other
    /// systems evaluate the series and fail outside its radius.
    pub fn new<S: Scalar>(ctx: &RootSystemContext<S>, kernel: &'a dyn KernelFn, c_k: f64) -> Self {
        let rank_one_k = (ctx.dim() == 1 && ctx.positive().len() == 1).then(|| ctx.positive()[0].k_rational.to_f64());
        HeatKernel {
            gamma: ctx.gamma_f64(),
            dim: ctx.dim(),
            c_k,
            kernel,
            rank_one_k,
        }
    }

    fn prefactor(&self, t: f64) -> f64 {
        (2.0 * t).powf(-(self.gamma + self.dim as f64 / 2.0)) / self.c_k
    }

    /// F_k(x,t) = Γ_k(t,0,x).
    pub fn fundamental(&self, x: &[f64], t: f64) -> f64 {
        let x2: f64 = x.iter().map(|v| v * v).sum();
        self.prefactor(t) * (-x2 / (4.0 * t)).exp()
    }

    pub fn eval(&self, t: f64, x: &[f64], y: &[f64]) -> Result<f64> {
        if t <= 0.0 {
            return Err(DunklError::Config(format!("heat kernel needs t > 0, got {t}")));
        }
        let s = (2.0 * t).sqrt();
        let x2: f64 = x.iter().map(|v| v * v).sum();
        let y2: f64 = y.iter().map(|v| v * v).sum();
        let exponent = -(x2 + y2) / (4.0 * t);
        if let Some(k) = self.rank_one_k {
            let z = Complex64::new(x[0] * y[0] / (2.0 * t), 0.0);
            let (m, sh) = crate::special::rank_one_kernel_split(k, z);
            return Ok(self.prefactor(t) * m.re * (exponent + sh.re).exp());
        }
        let xs: Vec<f64> = x.iter().map(|v| v / s).collect();
        let ys: Vec<f64> = y.iter().map(|v| v / s).collect();
        Ok(self.prefactor(t) * exponent.exp() * self.kernel.eval_e_real(&xs, &ys)?)
    }

    /// (2t)^{−γ−N/2}c_k⁻¹ max_g e^{−|gx−y|²/4t}.
    pub fn gaussian_bound(&self, t: f64, x: &[f64], y: &[f64]) -> f64 {
        let best = self
            .kernel
            .group_matrices()
            .iter()
            .map(|g| {
                let gx = g.apply(x);
                let d2: f64 = gx.iter().zip(y).map(|(a, b)| (a - b).powi(2)).sum();
                (-d2 / (4.0 * t)).exp()
            })
            .fold(0.0, f64::max);
        self.prefactor(t) * best
    }
}

/// Half-width L that holds Γ_k(t,x,·) for t ≤ `t_max`, |x| ≤ `reach`.
pub fn heat_radius(reach: f64, t_max: f64) -> f64 {
    (reach + 12.0 * t_max.sqrt()).max(8.0)
}

/// Rule on [−L, L] wide enough for Γ_k(t,x,·) with |x| ≤ `reach`.
pub fn heat_rule<S: Scalar>(ctx: &RootSystemContext<S>, reach: f64, t_max: f64, nodes: usize) -> Result<QuadratureRule> {
    lebesgue_wk_rule(ctx, heat_radius(reach, t_max), nodes)
}

/// Numeric Dunkl Laplacian of a function: central differences for Δ and ∇
/// with step h, reflection terms 2Σk(α)δ_α evaluated pointwise.
pub fn numeric_dunkl_laplacian<S: Scalar>(ctx: &RootSystemContext<S>, f: &dyn Fn(&[f64]) -> f64, x: &[f64], h: f64) -> f64 {
    let n = x.len();
    let fx = f(x);
    let mut lap = 0.0;
    let mut grad = vec![0.0; n];
    for i in 0..n {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[i] += h;
        xm[i] -= h;
        let (fp, fm) = (f(&xp), f(&xm));
        lap += (fp - 2.0 * fx + fm) / (h * h);
        grad[i] = (fp - fm) / (2.0 * h);
    }
    let mut refl = 0.0;
    for pr in ctx.positive() {
        let k = pr.k_rational.to_f64();
        if k == 0.0 {
            continue;
        }
        let a: Vec<f64> = pr.root.coords().iter().map(Scalar::to_f64).collect();
        let a2: f64 = a.iter().map(|v| v * v).sum();
        let ax: f64 = a.iter().zip(x).map(|(u, v)| u * v).sum();
        let sx: Vec<f64> = x.iter().zip(&a).map(|(v, u)| v - 2.0 * ax / a2 * u).collect();
        let da: f64 = grad.iter().zip(&a).map(|(g, u)| g * u).sum();
        refl += 2.0 * k * (da / ax - a2 / 2.0 * (fx - f(&sx)) / (ax * ax));
    }
    lap + refl
}

fn gaussian(x: &[f64]) -> Complex64 {
    Complex64::new((-x[0] * x[0] / 2.0).exp(), 0.0)
}

/// Gaussian fixed point, F_k transform, and the k = 0 Fourier values.
pub fn check_transform_examples(plan: &TransformPlan, xis: &[f64], t: f64) -> Result<Vec<CheckOutcome>> {
    let mut g_err = 0.0f64;
    let mut f_err = 0.0f64;
    let mut boundary = 0.0f64;
    let fk = |x: &[f64]| Complex64::new((-x[0] * x[0] / (4.0 * t)).exp() * (2.0 * t).powf(-(plan.k + 0.5)) / plan.c_k, 0.0);
    for &xi in xis {
        let g = plan.transform(&gaussian, xi)?;
        boundary = boundary.max(g.boundary);
        g_err = g_err.max((g.value - Complex64::new((-xi * xi / 2.0).exp(), 0.0)).norm());
        let f = plan.transform(&fk, xi)?;
        boundary = boundary.max(f.boundary);
        f_err = f_err.max((f.value - Complex64::new((-t * xi * xi).exp() / plan.c_k, 0.0)).norm() * plan.c_k);
    }
    let detail = format!("k = {}, {} frequencies, boundary {boundary:.1e}", plan.k, xis.len());
    let mut out = vec![
        CheckOutcome::numeric("transform-gaussian", "(e^{−|x|²/2})^ = e^{−|ξ|²/2}", g_err, 1e-6, detail.clone()),
        CheckOutcome::numeric("transform-fundamental", "F̂_k(ξ,t) = c_k⁻¹e^{−t|ξ|²}", f_err, 1e-6, detail.clone()),
    ];
    out.push(CheckOutcome::flag(
        "transform-boundary",
        "truncated domain holds the integrand mass",
        boundary <= BOUNDARY_TOLERANCE,
        format!("boundary size {boundary:.2e}"),
    ));
    Ok(out)
}

/// The Gaussian-damped test battery used for isometry and inversion.
pub fn test_battery() -> Vec<(String, Box<PointFn<'static>>)> {
    let damped = |name: &str, p: fn(f64) -> f64| -> (String, Box<PointFn<'static>>) {
        (
            format!("({name})e^{{−x²/2}}"),
            Box::new(move |x: &[f64]| Complex64::new(p(x[0]) * (-x[0] * x[0] / 2.0).exp(), 0.0)),
        )
    };
    vec![
        damped("1", |_| 1.0),
        damped("x", |x| x),
        damped("x²", |x| x * x),
        damped("x³", |x| x * x * x),
        damped("x⁴ − 1", |x| x.powi(4) - 1.0),
        damped("1 + x", |x| 1.0 + x),
        damped("x − x³/2", |x| x - x * x * x / 2.0),
        damped("2x² − x", |x| 2.0 * x * x - x),
        damped("(1 + x)³", |x| (1.0 + x).powi(3)),
        ("e^{−x²}".into(), Box::new(|x: &[f64]| Complex64::new((-x[0] * x[0]).exp(), 0.0))),
    ]
}

/// ‖f̂‖ = ‖f‖ in L²(w_k) and (f̂)^∨ = f at sample points.
pub fn check_plancherel_inversion(plan: &TransformPlan, battery: &[(String, Box<PointFn<'static>>)], points: &[f64]) -> Vec<CheckOutcome> {
    let mut iso = 0.0f64;
    let mut inv = 0.0f64;
    let mut iso_w = String::new();
    let mut inv_w = String::new();
    for (name, f) in battery {
        let samples = plan.sample(f.as_ref());
        let fhat = plan.transform_at_nodes(&samples);
        let (a, b) = (plan.norm_sq(&samples), plan.norm_sq(&fhat));
        let e = (a - b).abs() / a;
        if e > iso {
            iso = e;
            iso_w = format!("{name}: ‖f‖² = {a:.12e}, ‖f̂‖² = {b:.12e}");
        }
        let scale = samples.iter().fold(0.0f64, |m, v| m.max(v.norm()));
        for &x in points {
            let back = plan.apply_sampled(&fhat, x, 1.0);
            let e = (back - f(&[x])).norm() / scale;
            if e > inv {
                inv = e;
                inv_w = format!("{name} at x = {x}");
            }
        }
    }
    vec![
        CheckOutcome::numeric("plancherel", "‖f̂^k‖ = ‖f‖ in L²(w_k)", iso, 1e-5, format!("{} functions; worst {iso_w}", battery.len())),
        CheckOutcome::numeric(
            "inversion",
            "(f̂^k)^∨ = f",
            inv,
            1e-5,
            format!("{} functions × {} points; worst {inv_w}", battery.len(), points.len()),
        ),
    ]
}

/// ψ_ν(x) = e^{−x²/2}H_ν(√2x) satisfies ψ̂_ν = (−i)^{|ν|}ψ_ν.
pub fn check_transform_eigenfunctions<S: Scalar>(sys: &HermiteSystem<S>, plan: &TransformPlan, xis: &[f64]) -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    let mut witness = String::new();
    for e in sys.entries() {
        let f = |x: &[f64]| Complex64::new(hermite_function(e, x), 0.0);
        let samples = plan.sample(&f);
        let scale = samples.iter().fold(0.0f64, |m, v| m.max(v.norm()));
        for &xi in xis {
            let lhs = plan.apply_sampled(&samples, xi, -1.0);
            let rhs = minus_i_pow(e.nu.degree()) * hermite_function(e, &[xi]);
            let err = (lhs - rhs).norm() / scale;
            if err > worst {
                worst = err;
                witness = format!("ν = {}, ξ = {xi}", e.nu.degree());
            }
        }
    }
    Ok(CheckOutcome::numeric(
        "hermite-transform",
        "ψ̂_ν = (−i)^{|ν|}ψ_ν",
        worst,
        1e-6,
        format!("|ν| ≤ {}; worst {witness}", sys.cap()),
    ))
}

/// τ_0f = f, τ_yf(x) = τ_xf(y), τ_{−y}F_k(·,t)(x) = Γ_k(t,x,y), and
/// τ_yf(x) = f(x+y) when k = 0.
pub fn check_translation(plan: &TransformPlan, hk: &HeatKernel, pairs: &[(f64, f64)], t: f64) -> Result<Vec<CheckOutcome>> {
    let ghat = |xi: &[f64]| Complex64::new((-xi[0] * xi[0] / 2.0).exp(), 0.0);
    let g = |x: f64| (-x * x / 2.0).exp();
    let fhat = |xi: &[f64]| Complex64::new((-t * xi[0] * xi[0]).exp() / plan.c_k, 0.0);
    let mut id = 0.0f64;
    let mut sym = 0.0f64;
    let mut heat = 0.0f64;
    let mut classical = 0.0f64;
    for &(x, y) in pairs {
        id = id.max((plan.translate(&ghat, 0.0, x) - g(x)).norm());
        let a = plan.translate(&ghat, y, x);
        let b = plan.translate(&ghat, x, y);
        sym = sym.max((a - b).norm());
        if plan.k == 0.0 {
            classical = classical.max((a.re - g(x + y)).abs());
        }
        let tau = plan.translate(&fhat, -y, x);
        let gk = hk.eval(t, &[x], &[y])?;
        heat = heat.max((tau.re - gk).abs() / gk.abs().max(1.0));
    }
    let detail = format!("k = {}, {} pairs", plan.k, pairs.len());
    let mut out = vec![
        CheckOutcome::numeric("translation-identity", "τ_0 f = f", id, 1e-6, detail.clone()),
        CheckOutcome::numeric("translation-symmetry", "τ_y f(x) = τ_x f(y)", sym, 1e-6, detail.clone()),
        CheckOutcome::numeric("translation-heat", "τ_{−y}F_k(·,t)(x) = Γ_k(t,x,y)", heat, 1e-6, format!("{detail}, t = {t}")),
    ];
    if plan.k == 0.0 {
        out.push(CheckOutcome::numeric("translation-classical", "τ_y f(x) = f(x+y) for k = 0", classical, 1e-6, detail));
    }
    Ok(out)
}

fn integrate_heat(rule: &QuadratureRule, f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let mut acc = 0.0;
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        acc += f(x[0])? * w;
    }
    Ok(acc)
}

/// ∫Γ_k(t,x,y)w_k(y)dy = 1.
pub fn check_mass<S: Scalar>(ctx: &RootSystemContext<S>, hk: &HeatKernel, xs: &[f64], ts: &[f64], nodes: usize) -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    let mut witness = String::new();
    for &t in ts {
        for &x in xs {
            let rule = heat_rule(ctx, x.abs(), t, nodes)?;
            let m = integrate_heat(&rule, |y| hk.eval(t, &[x], &[y]))?;
            if (m - 1.0).abs() > worst {
                worst = (m - 1.0).abs();
                witness = format!("t = {t}, x = {x}: mass {m:.12}");
            }
        }
    }
    Ok(CheckOutcome::numeric("heat-mass", "∫Γ_k(t,x,y)w_k(y)dy = 1", worst, 1e-6, witness))
}

/// H(t)|·|²(x) = |x|² + 2(N + 2γ)t, the second moment tending to |x|² as t ↓ 0.
pub fn check_moment_continuity<S: Scalar>(ctx: &RootSystemContext<S>, hk: &HeatKernel, x: f64, ts: &[f64], nodes: usize) -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    let growth = 2.0 * (hk.dim as f64 + 2.0 * hk.gamma);
    for &t in ts {
        let rule = heat_rule(ctx, x.abs(), t, nodes)?;
        let m = integrate_heat(&rule, |y| Ok(hk.eval(t, &[x], &[y])? * y * y))?;
        worst = worst.max((m - x * x - growth * t).abs());
    }
    Ok(CheckOutcome::numeric(
        "heat-moment",
        "∫Γ_k(t,x,y)|y|²w_k dy = |x|² + 2(N+2γ)t",
        worst,
        1e-6,
        format!("x = {x}, t ∈ {ts:?}"),
    ))
}

/// Random (t, s, x, y) with t, s ∈ [0.2, 2], |x|, |y| ≤ 2.
pub fn semigroup_samples(rng: &mut TestRng, count: usize) -> Vec<(f64, f64, f64, f64)> {
    (0..count)
        .map(|_| {
            (
                rng.gen_range(0.2..=2.0),
                rng.gen_range(0.2..=2.0),
                rng.gen_range(-2.0..=2.0),
                rng.gen_range(-2.0..=2.0),
            )
        })
        .collect()
}

/// Γ_k(t+s,x,y) = ∫Γ_k(t,x,z)Γ_k(s,y,z)w_k(z)dz.
pub fn check_semigroup<S: Scalar>(ctx: &RootSystemContext<S>, hk: &HeatKernel, samples: &[(f64, f64, f64, f64)], nodes: usize) -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    let mut witness = String::new();
    for &(t, s, x, y) in samples {
        let rule = heat_rule(ctx, x.abs().max(y.abs()), t.max(s), nodes)?;
        let lhs = hk.eval(t + s, &[x], &[y])?;
        let rhs = integrate_heat(&rule, |z| Ok(hk.eval(t, &[x], &[z])? * hk.eval(s, &[y], &[z])?))?;
        let e = (lhs - rhs).abs() / lhs.abs().max(1e-3);
        if e > worst {
            worst = e;
            witness = format!("(t,s,x,y) = ({t:.4},{s:.4},{x:.4},{y:.4}): {lhs:.12e} vs {rhs:.12e}");
        }
    }
    Ok(CheckOutcome::numeric(
        "heat-semigroup",
        "Γ_k(t+s,x,y) = ∫Γ_k(t,x,z)Γ_k(s,y,z)w_k(z)dz",
        worst,
        1e-6,
        format!("{} tuples; worst {witness}", samples.len()),
    ))
}

/// Finite-difference steps of the heat-equation residual.
pub const PDE_SPACE_STEP: f64 = 1e-4;
pub const PDE_TIME_STEP_FACTOR: f64 = 1e-3;

/// ∂_tΓ_k(t,·,y) = Δ_kΓ_k(t,·,y) at sample points, 5-point time differences
/// with step 1e-3·t, central space differences with step 1e-4.
pub fn check_heat_equation<S: Scalar>(ctx: &RootSystemContext<S>, hk: &HeatKernel, samples: &[(f64, f64, f64)]) -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    let mut witness = String::new();
    for &(t, x, y) in samples {
        let h = PDE_TIME_STEP_FACTOR * t;
        let u = |tt: f64| hk.eval(tt, &[x], &[y]);
        let dt = (-u(t + 2.0 * h)? + 8.0 * u(t + h)? - 8.0 * u(t - h)? + u(t - 2.0 * h)?) / (12.0 * h);
        let f = |p: &[f64]| hk.eval(t, p, &[y]).unwrap_or(f64::NAN);
        let lap = numeric_dunkl_laplacian(ctx, &f, &[x], PDE_SPACE_STEP);
        let r = (lap - dt).abs();
        if !(r <= worst) {
            worst = r;
            witness = format!("(t,x,y) = ({t},{x},{y}): Δ_k u = {lap:.8e}, ∂_t u = {dt:.8e}");
        }
    }
    Ok(CheckOutcome::numeric(
        "heat-equation",
        "Δ_k u = ∂_t u for u = Γ_k(·,·,y)",
        worst,
        1e-4,
        format!("steps h_x = {PDE_SPACE_STEP}, h_t = {PDE_TIME_STEP_FACTOR}·t; worst {witness}"),
    ))
}

/// Γ_k > 0 and Γ_k ≤ (2t)^{−γ−N/2}c_k⁻¹max_g e^{−|gx−y|²/4t}, plus x ↔ y symmetry.
pub fn check_gaussian_bound(hk: &HeatKernel, samples: &[(f64, f64, f64)]) -> Result<Vec<CheckOutcome>> {
    let mut pos = true;
    let mut worst_ratio = 0.0f64;
    let mut sym = 0.0f64;
    for &(t, x, y) in samples {
        let v = hk.eval(t, &[x], &[y])?;
        pos &= v > 0.0;
        worst_ratio = worst_ratio.max(v / hk.gaussian_bound(t, &[x], &[y]));
        sym = sym.max((v - hk.eval(t, &[y], &[x])?).abs() / v.abs().max(1e-300));
    }
    let detail = format!("{} samples", samples.len());
    Ok(vec![
        CheckOutcome::flag("heat-positivity", "Γ_k(t,x,y) > 0", pos, detail.clone()),
        CheckOutcome::numeric(
            "heat-gaussian-bound",
            "Γ_k ≤ (2t)^{−γ−N/2}c_k⁻¹ max_g e^{−|gx−y|²/4t}",
            (worst_ratio - 1.0).max(0.0),
            1e-12,
            format!("{detail}; max ratio {worst_ratio:.6}"),
        ),
        CheckOutcome::numeric("heat-symmetry", "Γ_k(t,x,y) = Γ_k(t,y,x)", sym, 1e-12, detail),
    ])
}

/// c_k·(Γ_k(t,x,·))^(ξ) = E_k(−ix,ξ)e^{−t|ξ|²}.
pub fn check_markov_transform(plan: &TransformPlan, hk: &HeatKernel, cases: &[(f64, f64)], xis: &[f64]) -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    let mut boundary = 0.0f64;
    for &(t, x) in cases {
        let f = |y: &[f64]| Complex64::new(hk.eval(t, &[x], y).unwrap_or(f64::NAN), 0.0);
        let samples = plan.sample(&f);
        boundary = boundary.max(plan.boundary(&samples));
        for &xi in xis {
            let lhs = plan.apply_sampled(&samples, xi, -1.0) * plan.c_k;
            let rhs = plan.e_imag(-1.0, x, xi) * (-t * xi * xi).exp();
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(CheckOutcome::numeric(
        "heat-markov-transform",
        "c_k(Γ_k(t,x,·))^(ξ) = E_k(−ix,ξ)e^{−t|ξ|²}",
        worst,
        1e-6,
        format!(
            "{} (t,x) cases × {} frequencies on [−{:.3}, {:.3}], boundary {boundary:.1e}",
            cases.len(),
            xis.len(),
            plan.radius,
            plan.radius
        ),
    ))
}

/// max_y |H(t)f(y)| ≤ max|f| for positive f.
pub fn check_contraction<S: Scalar>(ctx: &RootSystemContext<S>, hk: &HeatKernel, t: f64, ys: &[f64], nodes: usize) -> Result<CheckOutcome> {
    let tests: Vec<(&str, fn(f64) -> f64, f64)> = vec![
        ("e^{−z²}", |z| (-z * z).exp(), 1.0),
        ("1/(1+z²)", |z| 1.0 / (1.0 + z * z), 1.0),
        ("z²e^{−z²}", |z| z * z * (-z * z).exp(), (-1.0f64).exp()),
    ];
    let mut worst = f64::NEG_INFINITY;
    for (_, f, sup) in &tests {
        for &y in ys {
            let rule = heat_rule(ctx, y.abs(), t, nodes)?;
            let v = integrate_heat(&rule, |z| Ok(hk.eval(t, &[y], &[z])? * f(z)))?;
            worst = worst.max(v.abs() - sup);
        }
    }
    Ok(CheckOutcome::numeric(
        "heat-contraction",
        "sup|H(t)f| ≤ sup|f|",
        worst.max(0.0),
        1e-8,
        format!("t = {t}, {} functions × {} points", tests.len(), ys.len()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::root_system::{ExactContext, RootSystem, RootSystemKind};
    use crate::scalar::{rat, rat_int, Rational};

    fn rank_one(k: Rational) -> ExactContext {
        ExactContext::new(RootSystem::standard(RootSystemKind::RankOne, 1).unwrap(), &[k]).unwrap()
    }

    #[test]
    fn transform_examples() {
        for k in [rat_int(0), rat(1, 2), rat_int(1)] {
            let ctx = rank_one(k);
            let plan = TransformPlan::new(&ctx, DEFAULT_RADIUS, DEFAULT_NODES).unwrap();
            for c in check_transform_examples(&plan, &[0.0, 0.7, 1.5, 3.0], 0.5).unwrap() {
                assert!(c.pass, "{c:?}");
            }
        }
    }

    #[test]
    fn classical_fourier_of_odd_gaussian() {
        let ctx = rank_one(rat_int(0));
        let plan = TransformPlan::new(&ctx, DEFAULT_RADIUS, DEFAULT_NODES).unwrap();
        let f = |x: &[f64]| Complex64::new(x[0] * (-x[0] * x[0] / 2.0).exp(), 0.0);
        let xi = 1.3;
        let v = plan.transform(&f, xi).unwrap().value;
        let exact = Complex64::new(0.0, -xi * (-xi * xi / 2.0).exp());
        assert!((v - exact).norm() < 1e-10);
    }

    #[test]
    fn heat_basics() {
        let ctx = rank_one(rat(1, 2));
        let ker = RankOneKernel::new(0.5);
        let hk = HeatKernel::new(&ctx, &ker, c_k_closed_form(&ctx).unwrap());
        assert!((hk.eval(0.7, &[0.0], &[1.1]).unwrap() - hk.fundamental(&[1.1], 0.7)).abs() < 1e-14);
        let mass = check_mass(&ctx, &hk, &[0.0, 0.5, 1.3], &[0.25, 1.0], DEFAULT_NODES).unwrap();
        assert!(mass.pass, "{mass:?}");
        let mut r = random::rng(1);
        let sg = check_semigroup(&ctx, &hk, &semigroup_samples(&mut r, 3), DEFAULT_NODES).unwrap();
        assert!(sg.pass, "{sg:?}");
        let pde = check_heat_equation(&ctx, &hk, &[(0.5, 0.7, 0.3), (1.5, -1.2, 0.9)]).unwrap();
        assert!(pde.pass, "{pde:?}");
        let m = check_moment_continuity(&ctx, &hk, 0.8, &[1.0, 0.5, 0.2], DEFAULT_NODES).unwrap();
        assert!(m.pass, "{m:?}");
    }

    #[test]
    fn k_zero_heat_is_gaussian() {
        let ctx = rank_one(rat_int(0));
        let ker = RankOneKernel::new(0.0);
        let hk = HeatKernel::new(&ctx, &ker, c_k_closed_form(&ctx).unwrap());
        let (t, x, y): (f64, f64, f64) = (0.6, 0.4, -1.0);
        let g = (-(x - y) * (x - y) / (4.0 * t)).exp() / (4.0 * std::f64::consts::PI * t).sqrt();
        assert!((hk.eval(t, &[x], &[y]).unwrap() - g).abs() < 1e-14);
    }

    #[test]
    fn translation_and_markov() {
        for k in [rat_int(0), rat(1, 2)] {
            let ctx = rank_one(k);
            let plan = TransformPlan::new(&ctx, DEFAULT_RADIUS, DEFAULT_NODES).unwrap();
            let hk = HeatKernel::new(&ctx, plan.kernel(), plan.c_k);
            for c in check_translation(&plan, &hk, &[(0.5, 0.3), (-1.0, 0.8)], 0.5).unwrap() {
                assert!(c.pass, "{c:?}");
            }
            let m = check_markov_transform(&plan, &hk, &[(0.5, 0.7), (1.0, -1.2)], &[0.4, 1.7]).unwrap();
            assert!(m.pass, "{m:?}");
        }
    }
}
