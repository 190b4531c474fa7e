//! Rank-one large-argument behaviour of E_k and the short-time heat ratio.
//!
//! With z = xy, E_k is evaluated in split form m·e^s so that the factors
//! e^{−z} in the probes cancel analytically instead of in floating point.

use num_complex::Complex64;
use statrs::function::gamma::gamma;

use crate::error::{DunklError, Result};
use crate::quadrature::{c_k_closed_form, lebesgue_wk_rule};
use crate::report::CheckOutcome;
use crate::root_system::RootSystemContext;
use crate::scalar::Scalar;
use crate::special::rank_one_kernel_split;

/// Radius and node count of the rule used for the quadrature value of c_k.
const C_K_RADIUS: f64 = 14.0;
const C_K_NODES: usize = 120;

#[derive(Clone, Debug)]
pub struct AsymptoticProbe {
    pub k: f64,
    pub gamma: f64,
    pub c_k: f64,
    pub c_0: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeRow {
    /// Ray parameter t, arc radius |z|, or heat time t.
    pub t: f64,
    pub value: Complex64,
    pub target: Complex64,
    pub error: f64,
}

/// Worst deviation on one arc |z| = radius.
#[derive(Clone, Debug, PartialEq)]
pub struct ArcRow {
    pub radius: f64,
    pub max_error: f64,
    pub worst_arg: f64,
}

/// Γ(2k+1)/(2^k Γ(k+1)), the real-axis limit of (zw)^k e^{−zw}E_k(z,w).
pub fn example_constant(k: f64) -> f64 {
    gamma(2.0 * k + 1.0) / (2f64.powf(k) * gamma(k + 1.0))
}

/// c_k = ∫ e^{−x²/2} 2^k|x|^{2k} dx by Gauss–Jacobi quadrature on [−L, L].
pub fn c_k_quadrature<S: Scalar>(ctx: &RootSystemContext<S>) -> Result<f64> {
    let rule = lebesgue_wk_rule(ctx, C_K_RADIUS, C_K_NODES)?;
    rule.integrate_real(|x| (-x[0] * x[0] / 2.0).exp())
}

impl AsymptoticProbe {
    pub fn new<S: Scalar>(ctx: &RootSystemContext<S>) -> Result<Self> {
        if ctx.dim() != 1 || ctx.positive().len() != 1 {
            return Err(DunklError::Unsupported(
                "asymptotic probes are implemented in rank one".into(),
            ));
        }
        let k = ctx.positive()[0].k_rational.to_f64();
        Ok(AsymptoticProbe {
            k,
            gamma: ctx.gamma_f64(),
            c_k: c_k_closed_form(ctx).expect("rank one has a closed form"),
            c_0: (2.0 * std::f64::consts::PI).sqrt(),
        })
    }

    /// Same probe with c_k taken from quadrature instead of the Γ formula.
    pub fn with_quadrature_c_k<S: Scalar>(ctx: &RootSystemContext<S>) -> Result<Self> {
        let mut p = Self::new(ctx)?;
        p.c_k = c_k_quadrature(ctx)?;
        Ok(p)
    }

    pub fn w_k(&self, x: f64) -> f64 {
        if self.k == 0.0 {
            1.0
        } else {
            2f64.powf(self.k) * x.abs().powf(2.0 * self.k)
        }
    }

    /// v_e = i^{−γ}c_k/c_0.
    pub fn v_e(&self) -> Complex64 {
        Complex64::from_polar(self.c_k / self.c_0, -self.gamma * std::f64::consts::FRAC_PI_2)
    }

    /// v_e/√(w_k(x)w_k(y)).
    pub fn ray_target(&self, x: f64, y: f64) -> Complex64 {
        self.v_e() / (self.w_k(x) * self.w_k(y)).sqrt()
    }

    /// i^γ v_e/√(w_k(x)w_k(y)), a positive real.
    pub fn half_plane_target(&self, x: f64, y: f64) -> Complex64 {
        Complex64::from_polar(1.0, self.gamma * std::f64::consts::FRAC_PI_2) * self.ray_target(x, y)
    }

    /// z^γ e^{−zxy}E_k(zx, y).
    pub fn scaled_kernel(&self, z: Complex64, x: f64, y: f64) -> Complex64 {
        let arg = z * (x * y);
        let (m, s) = rank_one_kernel_split(self.k, arg);
        z.powf(self.gamma) * m * (s - arg).exp()
    }

    /// t^γ e^{−itxy}E_k(itx, y) for each t.
    pub fn ray_limit_probe(&self, x: f64, y: f64, ts: &[f64]) -> Result<Vec<ProbeRow>> {
        self.require_same_chamber(x, y)?;
        let target = self.ray_target(x, y);
        ts.iter()
            .map(|&t| {
                let arg = Complex64::new(0.0, t * x * y);
                let (m, s) = rank_one_kernel_split(self.k, arg);
                let value = t.powf(self.gamma) * m * (s - arg).exp();
                finite_row(t, value, target)
            })
            .collect()
    }

    /// Sample each arc |z| = r at `samples` arguments in [−π/2+0.1, π/2−0.1].
    pub fn half_plane_limit_probe(&self, x: f64, y: f64, radii: &[f64], samples: usize) -> Result<Vec<ArcRow>> {
        self.require_same_chamber(x, y)?;
        let target = self.half_plane_target(x, y);
        let lo = -std::f64::consts::FRAC_PI_2 + 0.1;
        let hi = std::f64::consts::FRAC_PI_2 - 0.1;
        radii
            .iter()
            .map(|&r| {
                let mut worst = ArcRow { radius: r, max_error: 0.0, worst_arg: lo };
                for j in 0..samples.max(2) {
                    let arg = lo + (hi - lo) * j as f64 / (samples.max(2) - 1) as f64;
                    let v = self.scaled_kernel(Complex64::from_polar(r, arg), x, y);
                    let e = (v - target).norm();
                    if !e.is_finite() {
                        return Err(DunklError::Numerical(format!("non-finite kernel at |z| = {r}, arg {arg}")));
                    }
                    if e > worst.max_error {
                        worst.max_error = e;
                        worst.worst_arg = arg;
                    }
                }
                Ok(worst)
            })
            .collect()
    }

    /// √(w_k(x)w_k(y)) Γ_k(t,x,y)/Γ_0(t,x,y) for each t.
    pub fn short_time_heat_ratio(&self, x: f64, y: f64, ts: &[f64]) -> Result<Vec<ProbeRow>> {
        let one = Complex64::new(1.0, 0.0);
        ts.iter()
            .map(|&t| {
                if t <= 0.0 {
                    return Err(DunklError::Config(format!("heat ratio needs t > 0, got {t}")));
                }
                let z = x * y / (2.0 * t);
                let (m, s) = rank_one_kernel_split(self.k, Complex64::new(z, 0.0));
                let pre = (self.w_k(x) * self.w_k(y)).sqrt() * (2.0 * t).powf(-self.gamma) * self.c_0 / self.c_k;
                finite_row(t, pre * m * (s.re - z).exp(), one)
            })
            .collect()
    }

    fn require_same_chamber(&self, x: f64, y: f64) -> Result<()> {
        if x * y > 0.0 {
            Ok(())
        } else {
            Err(DunklError::Config(format!("x = {x} and y = {y} must lie in the same open chamber")))
        }
    }
}

fn finite_row(t: f64, value: Complex64, target: Complex64) -> Result<ProbeRow> {
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(DunklError::Numerical(format!("non-finite probe value at t = {t}")));
    }
    Ok(ProbeRow { t, value, target, error: (value - target).norm() })
}

pub fn rows_to_csv(rows: &[ProbeRow]) -> String {
    let mut s = String::from("t,value_re,value_im,target_re,target_im,error\n");
    for r in rows {
        s.push_str(&format!(
            "{:e},{:.17e},{:.17e},{:.17e},{:.17e},{:.6e}\n",
            r.t, r.value.re, r.value.im, r.target.re, r.target.im, r.error
        ));
    }
    s
}

pub fn arcs_to_csv(rows: &[ArcRow]) -> String {
    let mut s = String::from("radius,max_error,worst_arg\n");
    for r in rows {
        s.push_str(&format!("{:e},{:.6e},{:.6}\n", r.radius, r.max_error, r.worst_arg));
    }
    s
}

fn sci(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|e| format!("{e:.3e}")).collect();
    format!("[{}]", parts.join(", "))
}

fn strictly_decreasing(errors: &[f64]) -> bool {
    errors.windows(2).all(|w| w[1] < w[0])
}

/// The real-axis constant against c_k/(2^k c_0), with c_k from quadrature.
pub fn check_constants<S: Scalar>(ctx: &RootSystemContext<S>) -> Result<CheckOutcome> {
    let quad = AsymptoticProbe::with_quadrature_c_k(ctx)?;
    let closed = AsymptoticProbe::new(ctx)?;
    let example = example_constant(quad.k);
    let via_v_e = (Complex64::from_polar(1.0, quad.gamma * std::f64::consts::FRAC_PI_2) * quad.v_e()).re
        / 2f64.powf(quad.k);
    let via_closed = closed.c_k / closed.c_0 / 2f64.powf(closed.k);
    let err = ((example - via_v_e).abs() / example).max((example - via_closed).abs() / example);
    Ok(CheckOutcome::numeric(
        "asymptotics.constant",
        "Γ(2k+1)/(2^kΓ(k+1)) = i^γ v_e/2^k with v_e = i^{−γ}c_k/c_0",
        err,
        1e-8,
        format!("k = {}: example {example:.15}, quadrature route {via_v_e:.15}, Γ route {via_closed:.15}", quad.k),
    ))
}

pub fn check_ray(probe: &AsymptoticProbe, x: f64, y: f64, ts: &[f64]) -> Result<CheckOutcome> {
    let rows = probe.ray_limit_probe(x, y, ts)?;
    let errors: Vec<f64> = rows.iter().map(|r| r.error).collect();
    Ok(CheckOutcome::flag(
        "asymptotics.ray",
        "t^γ e^{−itxy}E_k(itx,y) → v_e/√(w_k(x)w_k(y)) with decreasing error",
        strictly_decreasing(&errors),
        format!("k = {}, errors {} at t = {ts:?}", probe.k, sci(&errors)),
    ))
}

pub fn check_half_plane(probe: &AsymptoticProbe, x: f64, y: f64, radii: &[f64], samples: usize) -> Result<CheckOutcome> {
    let rows = probe.half_plane_limit_probe(x, y, radii, samples)?;
    let errors: Vec<f64> = rows.iter().map(|r| r.max_error).collect();
    Ok(CheckOutcome::flag(
        "asymptotics.half_plane",
        "z^γ e^{−zxy}E_k(zx,y) → i^γ v_e/√(w_k(x)w_k(y)) on arcs in the right half plane",
        strictly_decreasing(&errors),
        format!("k = {}, arc maxima {} at |z| = {radii:?}", probe.k, sci(&errors)),
    ))
}

/// Ratio within `tol` of 1 at the last t, with errors decreasing along `ts`.
pub fn check_heat_ratio(probe: &AsymptoticProbe, x: f64, y: f64, ts: &[f64], tol: f64) -> Result<Vec<CheckOutcome>> {
    let rows = probe.short_time_heat_ratio(x, y, ts)?;
    let errors: Vec<f64> = rows.iter().map(|r| r.error).collect();
    let last = *errors.last().unwrap_or(&f64::INFINITY);
    Ok(vec![
        CheckOutcome::numeric(
            "asymptotics.heat_ratio",
            "√(w_k(x)w_k(y))Γ_k(t,x,y)/Γ_0(t,x,y) → 1 as t ↓ 0",
            last,
            tol,
            format!("k = {}, x = {x}, y = {y}, t = {:?}", probe.k, ts.last()),
        ),
        CheckOutcome::flag(
            "asymptotics.heat_ratio_monotone",
            "heat ratio error decreases as t decreases",
            strictly_decreasing(&errors),
            format!("errors {} at t = {ts:?}", sci(&errors)),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{ExactContext, RootSystem, RootSystemKind};
    use crate::scalar::{rat, rat_int, Rational};

    fn rank_one(k: Rational) -> ExactContext {
        ExactContext::new(RootSystem::standard(RootSystemKind::RankOne, 1).unwrap(), &[k]).unwrap()
    }

    #[test]
    fn constants_agree() {
        for k in [rat(1, 4), rat(1, 2), rat_int(1), rat(3, 2)] {
            let c = check_constants(&rank_one(k)).unwrap();
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn k_zero_is_trivial() {
        let p = AsymptoticProbe::new(&rank_one(rat_int(0))).unwrap();
        for r in p.ray_limit_probe(1.0, 2.0, &[5.0, 50.0]).unwrap() {
            assert!(r.error < 1e-14, "{r:?}");
        }
        for r in p.short_time_heat_ratio(1.0, -1.0, &[0.1, 0.01]).unwrap() {
            assert!(r.error < 1e-12, "{r:?}");
        }
    }

    #[test]
    fn ray_matches_high_precision_values() {
        // t^k e^{−2it}₁F₁(k+1;2k+1;2it) at 40 digits
        let reference = [
            (rat(1, 2), [
                (0.56173730703966862, -0.56180942061209912),
                (0.56297931527312073, -0.56403745048623993),
                (0.56431471193550326, -0.56480827690056556),
                (0.56483907515720781, -0.56385570157531032),
            ]),
            (rat_int(1), [
                (0.0013768112771231607, -1.0050636564110976),
                (0.0025640616249649704, -1.00436648648607),
                (0.0038132408466063399, -1.0021272983990979),
                (0.0018101593915218654, -0.99888253793975372),
            ]),
        ];
        let ts = [50.0, 100.0, 200.0, 400.0];
        for (k, values) in reference {
            let p = AsymptoticProbe::new(&rank_one(k)).unwrap();
            let rows = p.ray_limit_probe(1.0, 1.0, &ts).unwrap();
            for (r, (re, im)) in rows.iter().zip(values) {
                assert!((r.value - Complex64::new(re, im)).norm() < 1e-10, "{r:?}");
            }
        }
        // k = 1/2: the e^{−2itxy} term makes the error rise from t = 200 to 400
        let p = AsymptoticProbe::new(&rank_one(rat(1, 2))).unwrap();
        assert!(!check_ray(&p, 1.0, 1.0, &ts).unwrap().pass);
        let p = AsymptoticProbe::new(&rank_one(rat_int(1))).unwrap();
        assert!(check_ray(&p, 1.0, 1.0, &ts).unwrap().pass);
    }

    #[test]
    fn arcs_converge() {
        for k in [rat(1, 2), rat_int(1), rat(3, 2)] {
            let p = AsymptoticProbe::new(&rank_one(k)).unwrap();
            let c = check_half_plane(&p, 1.0, 1.0, &[50.0, 100.0, 200.0], 41).unwrap();
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn heat_ratio_tends_to_one() {
        let p = AsymptoticProbe::new(&rank_one(rat(1, 2))).unwrap();
        for c in check_heat_ratio(&p, 1.0, 1.0, &[1e-1, 1e-2, 1e-3], 5e-2).unwrap() {
            assert!(c.pass, "{c:?}");
        }
        // opposite chambers stay away from 1
        let rows = p.short_time_heat_ratio(1.0, -1.0, &[1e-2]).unwrap();
        assert!(rows[0].error > 0.5, "{rows:?}");
    }
}
