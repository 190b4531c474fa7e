use num_complex::Complex64;
use serde_json::json;

use dunkl::asymptotics::{self, AsymptoticProbe};
use dunkl::dunkl_calculus::{fischer_pair, OperatorExpr};
use dunkl::hermite::HermiteSystem;
use dunkl::intertwiner::IntertwinerTable;
use dunkl::kernel::{KernelFn, RankOneKernel, SeriesKernel};
use dunkl::polynomial::{Monomial, MultiPoly};
use dunkl::quadrature::{c_k_closed_form, gaussian_wk_rule, lebesgue_wk_rule, QuadratureRule};
use dunkl::root_system::{ExactContext, FloatContext};
use dunkl::scalar::{format_rational, parse_rational, Rational};
use dunkl::transform_heat::{self as th, HeatKernel, TransformPlan};
use dunkl::verify::{self, GroupSpec, Suite, VerifyConfig};
use dunkl::{DunklError, Result};

use crate::output::Output;
use crate::{AsymptMode, Global, MeasureArg};

pub struct Setup {
    pub group: GroupSpec,
    pub k: Vec<Rational>,
    pub explicit_group: bool,
    pub explicit_k: bool,
}

pub fn parse_list<T>(text: &str, f: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    text.split(',').map(|s| f(s.trim())).collect()
}

pub fn parse_f64(s: &str) -> Result<f64> {
    if s.contains('/') {
        return Ok(dunkl::scalar::rational_to_f64(&parse_rational(s)?));
    }
    s.parse().map_err(|_| DunklError::Parse(format!("not a number: {s:?}")))
}

impl Setup {
    pub fn from_global(g: &Global) -> Result<Self> {
        let (group, explicit_group) = match (&g.group, &g.r#type) {
            (Some(_), Some(_)) => return Err(DunklError::Config("give either --group or --type, not both".into())),
            (Some(name), None) => (GroupSpec::parse(name)?, true),
            (None, Some(t)) => (GroupSpec::from_type(t, g.dim)?, true),
            (None, None) => (GroupSpec::RANK_ONE, false),
        };
        let (k, explicit_k) = match &g.k {
            Some(text) => (parse_list(text, parse_rational)?, true),
            None => (vec![dunkl::scalar::rat(1, 2)], false),
        };
        dunkl::root_system::MultiplicityFunction::new(k.clone())?;
        Ok(Setup { group, k, explicit_group, explicit_k })
    }

    pub fn exact(&self) -> Result<ExactContext> {
        if !self.group.exact() {
            return Err(DunklError::Config(format!(
                "{} has irrational roots; this command needs exact arithmetic",
                self.group
            )));
        }
        self.group.context(&self.k)
    }

    pub fn float(&self) -> Result<FloatContext> {
        self.group.context(&self.k)
    }

    fn rank_one_exact(&self) -> Result<ExactContext> {
        if !self.group.is_rank_one() {
            return Err(DunklError::Config(format!("this command runs in rank one only, got {}", self.group)));
        }
        self.exact()
    }

    fn label(&self) -> String {
        let ks: Vec<String> = self.k.iter().map(format_rational).collect();
        format!("{}, k = ({})", self.group, ks.join(", "))
    }
}

fn poly_out(name: &str, setup: &Setup, p: &MultiPoly<Rational>) -> Output {
    let text = p.to_text();
    Output::new(
        json!({ "group": setup.label(), name: text, "terms": p.to_json() }),
        text,
    )
}

pub fn group(setup: &Setup) -> Result<Output> {
    let ctx = setup.float()?;
    let info = if setup.group.exact() { setup.exact()?.info() } else { ctx.info() };
    let c_k = c_k_closed_form(&ctx);
    let mut text = format!(
        "{} in R^{}: rank {}, {} roots, |W| = {}, gamma = {}\n",
        info.kind, info.dim, info.rank, info.roots, info.order, info.gamma
    );
    for o in &info.orbits {
        text.push_str(&format!("orbit of {} ({} roots): k = {}\n", o.representative, o.size, o.k));
    }
    text.push_str(&format!("chamber walls: {}\n", info.chamber_walls.join(" ")));
    if let Some(c) = c_k {
        text.push_str(&format!("c_k = {c:.15e}"));
    }
    Ok(Output::new(json!({ "group": info, "c_k": c_k }), text))
}

pub fn apply(setup: &Setup, op: &str, poly: &str) -> Result<Output> {
    let ctx = setup.exact()?;
    let p = MultiPoly::parse(poly, ctx.dim())?;
    let expr = OperatorExpr::parse(op, &ctx)?;
    Ok(poly_out("result", setup, &expr.apply(&ctx, &p)?))
}

pub fn pair(setup: &Setup, p: &str, q: &str) -> Result<Output> {
    let ctx = setup.exact()?;
    let (p, q) = (MultiPoly::parse(p, ctx.dim())?, MultiPoly::parse(q, ctx.dim())?);
    let v = format_rational(&fischer_pair(&ctx, &p, &q)?);
    Ok(Output::new(json!({ "group": setup.label(), "value": v }), v.clone()))
}

pub fn intertwine(setup: &Setup, poly: &str) -> Result<Output> {
    let ctx = setup.exact()?;
    let p = MultiPoly::parse(poly, ctx.dim())?;
    let table = IntertwinerTable::build(&ctx, p.degree().unwrap_or(0).max(1))?;
    Ok(poly_out("result", setup, &table.apply(&p)?))
}

fn rule_for(setup: &Setup, measure: MeasureArg, radius: f64, nodes: usize) -> Result<QuadratureRule> {
    let ctx = setup.float()?;
    match measure {
        MeasureArg::Gaussian => gaussian_wk_rule(&ctx, nodes),
        MeasureArg::Lebesgue => lebesgue_wk_rule(&ctx, radius, nodes),
    }
}

/// With a polynomial: ∫p dμ with a node-doubling error estimate. Without:
/// the rule itself.
pub fn integrate(setup: &Setup, measure: MeasureArg, radius: f64, nodes: usize, poly: Option<&str>) -> Result<Output> {
    let rule = rule_for(setup, measure, radius, nodes)?;
    let Some(poly) = poly else {
        let json = json!({
            "group": setup.label(),
            "accuracy": rule.accuracy,
            "nodes": rule.nodes,
            "weights": rule.weights,
            "total_mass": rule.total_mass(),
        });
        let text = format!("{} nodes ({}), total mass {:.15e}", rule.len(), rule.accuracy, rule.total_mass());
        return Ok(Output::new(json, text).with_csv(rule.to_csv()));
    };
    let p = MultiPoly::<Rational>::parse(poly, setup.group.context::<f64>(&setup.k)?.dim())?.to_f64();
    let value = rule.integrate_real(|x| p.eval_f64(x))?;
    let fine = rule_for(setup, measure, radius, 2 * nodes)?.integrate_real(|x| p.eval_f64(x))?;
    let estimate = (fine - value).abs();
    Ok(Output::new(
        json!({ "group": setup.label(), "value": value, "error_estimate": estimate, "accuracy": rule.accuracy }),
        format!("{value:.15e} (node doubling changes it by {estimate:.2e})"),
    ))
}

pub fn kernel(setup: &Setup, truncation: usize, x: &[f64], y: &[f64], imag: bool, bessel: bool) -> Result<Output> {
    let ctx = setup.float()?;
    if x.len() != ctx.dim() || y.len() != ctx.dim() {
        return Err(DunklError::DimensionMismatch { expected: ctx.dim(), got: x.len().min(y.len()) });
    }
    let yc: Vec<Complex64> = y
        .iter()
        .map(|&v| if imag { Complex64::new(0.0, v) } else { Complex64::new(v, 0.0) })
        .collect();
    let ev: Box<dyn KernelFn> = if setup.group.is_rank_one() {
        Box::new(RankOneKernel::new(dunkl::scalar::rational_to_f64(&setup.k[0])))
    } else {
        Box::new(SeriesKernel::new(&ctx, truncation)?)
    };
    let v = if bessel { ev.eval_j(x, &yc)? } else { ev.eval_e(x, &yc)? };
    let name = if bessel { "J_k" } else { "E_k" };
    Ok(Output::new(
        json!({
            "group": setup.label(),
            "function": name,
            "re": v.value.re,
            "im": v.value.im,
            "tail_bound": v.tail_bound,
            "terms": v.terms,
        }),
        format!("{name} = {} {:+}i (tail bound {:.2e}, {} terms)", v.value.re, v.value.im, v.tail_bound, v.terms),
    ))
}

pub fn hermite(setup: &Setup, nu: &[u16]) -> Result<Output> {
    let ctx = setup.exact()?;
    if nu.len() != ctx.dim() {
        return Err(DunklError::DimensionMismatch { expected: ctx.dim(), got: nu.len() });
    }
    let m = Monomial::from_exponents(nu);
    let sys = HermiteSystem::build(&ctx, m.degree())?;
    let e = sys.find(&m).ok_or_else(|| DunklError::Config(format!("no Hermite polynomial for ν = {nu:?}")))?;
    let json = json!({
        "group": setup.label(),
        "nu": nu,
        "phi": e.phi.to_text(),
        "norm_sq": format_rational(&e.norm_sq),
        "H": e.h.to_text(),
    });
    let text = format!("phi = {}\n[phi, phi]_k = {}\nH = {}", e.phi.to_text(), format_rational(&e.norm_sq), e.h.to_text());
    Ok(Output::new(json, text))
}

pub fn transform(setup: &Setup, nodes: usize, radius: f64, function: &str, xis: &[f64]) -> Result<Output> {
    let ctx = setup.rank_one_exact()?;
    let plan = TransformPlan::new(&ctx, radius, nodes)?;
    let battery = th::test_battery();
    let (name, f): (String, Box<th::PointFn<'static>>) = match function {
        "gaussian" => ("e^{−x²/2}".into(), Box::new(|x: &[f64]| Complex64::new((-x[0] * x[0] / 2.0).exp(), 0.0))),
        other => {
            let idx: usize = other
                .strip_prefix("battery:")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| DunklError::Config(format!("unknown function {other:?}; use gaussian or battery:N")))?;
            let n = battery.len();
            battery
                .into_iter()
                .nth(idx)
                .ok_or_else(|| DunklError::Config(format!("battery has {n} functions")))?
        }
    };
    let mut rows = Vec::new();
    let mut csv = String::from("xi,re,im,boundary\n");
    let mut text = format!("transform of {name}, {}\n", setup.label());
    for &xi in xis {
        let v = plan.transform(f.as_ref(), xi)?;
        csv.push_str(&format!("{xi},{:.17e},{:.17e},{:.3e}\n", v.value.re, v.value.im, v.boundary));
        text.push_str(&format!("xi = {xi}: {} {:+}i (boundary {:.1e})\n", v.value.re, v.value.im, v.boundary));
        rows.push(json!({ "xi": xi, "re": v.value.re, "im": v.value.im, "boundary": v.boundary }));
    }
    Ok(Output::new(json!({ "group": setup.label(), "function": name, "values": rows }), text).with_csv(csv))
}

pub fn heat(setup: &Setup, nodes: usize, t: f64, x: f64, y: Option<f64>, mass: bool) -> Result<Output> {
    let ctx = setup.rank_one_exact()?;
    let c_k = c_k_closed_form(&ctx).expect("rank one");
    let ker = RankOneKernel::new(dunkl::scalar::rational_to_f64(&setup.k[0]));
    let hk = HeatKernel::new(&ctx, &ker, c_k);
    if mass {
        let rule = th::heat_rule(&ctx, x.abs(), t, nodes)?;
        let m = rule.integrate_real(|z| hk.eval(t, &[x], z).unwrap_or(f64::NAN))?;
        let tol = 1e-6;
        let pass = (m - 1.0).abs() <= tol;
        return Ok(Output::new(
            json!({ "value": m, "tolerance": tol, "pass": pass }),
            format!("mass {m:.12} (tolerance {tol:e}): {}", if pass { "pass" } else { "fail" }),
        )
        .with_pass(pass));
    }
    let y = y.ok_or_else(|| DunklError::Config("heat needs --y (or --mass)".into()))?;
    let v = hk.eval(t, &[x], &[y])?;
    let bound = hk.gaussian_bound(t, &[x], &[y]);
    Ok(Output::new(
        json!({ "group": setup.label(), "t": t, "x": x, "y": y, "value": v, "gaussian_bound": bound }),
        format!("Gamma_k({t}, {x}, {y}) = {v:.15e} (Gaussian bound {bound:.6e})"),
    ))
}

pub fn asympt(setup: &Setup, mode: AsymptMode, x: f64, y: f64, ts: &[f64]) -> Result<Output> {
    let ctx = setup.rank_one_exact()?;
    let probe = AsymptoticProbe::new(&ctx)?;
    let (rows, csv) = match mode {
        AsymptMode::Ray => {
            let r = probe.ray_limit_probe(x, y, ts)?;
            let c = asymptotics::rows_to_csv(&r);
            (r, c)
        }
        AsymptMode::Heat => {
            let r = probe.short_time_heat_ratio(x, y, ts)?;
            let c = asymptotics::rows_to_csv(&r);
            (r, c)
        }
        AsymptMode::Halfplane => {
            let arcs = probe.half_plane_limit_probe(x, y, ts, 41)?;
            let csv = asymptotics::arcs_to_csv(&arcs);
            let json = json!({
                "group": setup.label(),
                "mode": "halfplane",
                "target": probe.half_plane_target(x, y).re,
                "arcs": arcs.iter().map(|a| json!({"radius": a.radius, "max_error": a.max_error, "worst_arg": a.worst_arg})).collect::<Vec<_>>(),
            });
            return Ok(Output::new(json, csv.clone()).with_csv(csv));
        }
    };
    let json = json!({
        "group": setup.label(),
        "mode": format!("{mode:?}").to_lowercase(),
        "rows": rows.iter().map(|r| json!({
            "t": r.t, "re": r.value.re, "im": r.value.im,
            "target_re": r.target.re, "target_im": r.target.im, "error": r.error,
        })).collect::<Vec<_>>(),
    });
    Ok(Output::new(json, csv.clone()).with_csv(csv))
}

pub fn verify(setup: &Setup, g: &Global, suite: &str) -> Result<Output> {
    let suite: Suite = suite.parse()?;
    let cfg = VerifyConfig {
        seed: g.seed,
        max_degree: g.max_degree,
        truncation: g.truncation,
        nodes: g.nodes,
        group: setup.explicit_group.then_some(setup.group),
        k: setup.explicit_k.then(|| setup.k.clone()),
    };
    let reports = verify::run_suite(suite, &cfg)?;
    Ok(Output::from_reports(&reports, g.seed))
}
