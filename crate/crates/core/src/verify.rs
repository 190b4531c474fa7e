//! Named verification suites. Every suite is a deterministic function of
//! its configuration and seed.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::asymptotics::{self, AsymptoticProbe};
use crate::dunkl_calculus as dc;
use crate::error::{DunklError, Result};
use crate::hermite::{self, HermiteSystem};
use crate::intertwiner::{self, IntertwinerTable};
use crate::kernel::{self, RankOneKernel, SeriesKernel};
use crate::quadrature::{self, c_k_closed_form, gaussian_wk_rule};
use crate::random::{self, TestRng};
use crate::report::{CheckOutcome, Report};
use crate::root_system::{RootSystem, RootSystemContext, RootSystemKind};
use crate::scalar::{format_rational, rat, rat_int, Rational, Scalar};
use crate::transform_heat::{self as th, HeatKernel, TransformPlan};

/// A standard root system: `kind` plus the ambient size (N for A/B).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub kind: RootSystemKind,
    pub size: usize,
}

impl GroupSpec {
    pub const fn new(kind: RootSystemKind, size: usize) -> Self {
        GroupSpec { kind, size }
    }

    pub const RANK_ONE: GroupSpec = GroupSpec::new(RootSystemKind::RankOne, 1);
    pub const A2: GroupSpec = GroupSpec::new(RootSystemKind::A, 3);
    pub const A3: GroupSpec = GroupSpec::new(RootSystemKind::A, 4);
    pub const B2: GroupSpec = GroupSpec::new(RootSystemKind::B, 2);
    pub const I2_5: GroupSpec = GroupSpec::new(RootSystemKind::Dihedral(5), 2);

    /// From a type letter and ambient dimension, e.g. ("A", 3) for A_2.
    pub fn from_type(kind: &str, dim: Option<usize>) -> Result<Self> {
        let need = |d: Option<usize>| d.ok_or_else(|| DunklError::Config(format!("type {kind} needs --dim")));
        match kind.trim().to_ascii_uppercase().as_str() {
            "A1" | "RANK1" | "RANK-ONE" | "Z2" => Ok(Self::RANK_ONE),
            "A" => Ok(Self::new(RootSystemKind::A, need(dim)?)),
            "B" => Ok(Self::new(RootSystemKind::B, need(dim)?)),
            "I2" | "I" => Ok(Self::new(RootSystemKind::Dihedral(need(dim)?), 2)),
            _ => Self::parse(kind),
        }
    }

    /// Rank notation: "A1", "A2", "B3", "I2(5)".
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().to_ascii_uppercase().replace('_', "");
        if matches!(t.as_str(), "A1" | "RANK1" | "RANK-ONE") {
            return Ok(Self::RANK_ONE);
        }
        if let Some(rest) = t.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let n = rest.parse().map_err(|_| DunklError::Parse(format!("bad dihedral order in {text:?}")))?;
            return Ok(Self::new(RootSystemKind::Dihedral(n), 2));
        }
        let (head, rank) = t.split_at(1.min(t.len()));
        let rank: usize = rank.parse().map_err(|_| DunklError::Parse(format!("unknown group {text:?}")))?;
        match head {
            "A" if rank >= 1 => Ok(Self::new(RootSystemKind::A, rank + 1)),
            "B" if rank >= 2 => Ok(Self::new(RootSystemKind::B, rank)),
            _ => Err(DunklError::Parse(format!("unknown group {text:?}"))),
        }
    }

    pub fn label(&self) -> String {
        match self.kind {
            RootSystemKind::RankOne => "A1".into(),
            RootSystemKind::A => format!("A{}", self.size - 1),
            RootSystemKind::B => format!("B{}", self.size),
            RootSystemKind::Dihedral(n) => format!("I2({n})"),
            RootSystemKind::Custom => "custom".into(),
        }
    }

    /// Whether the roots have rational coordinates.
    pub fn exact(&self) -> bool {
        !matches!(self.kind, RootSystemKind::Dihedral(n) if n != 4)
    }

    pub fn is_rank_one(&self) -> bool {
        self.kind == RootSystemKind::RankOne
    }

    pub fn context<S: Scalar>(&self, k: &[Rational]) -> Result<RootSystemContext<S>> {
        RootSystemContext::new(RootSystem::standard(self.kind, self.size)?, k)
    }

    /// Number of conjugacy classes of roots (independent multiplicity values).
    pub fn orbit_count(&self) -> Result<usize> {
        Ok(self.context::<f64>(&[rat_int(0)])?.orbits().len())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Operators,
    Intertwiner,
    Kernel,
    Macdonald,
    Hermite,
    Transform,
    Heat,
    Asymptotics,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Operators,
        Suite::Intertwiner,
        Suite::Kernel,
        Suite::Macdonald,
        Suite::Hermite,
        Suite::Transform,
        Suite::Heat,
        Suite::Asymptotics,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Operators => "operators",
            Suite::Intertwiner => "intertwiner",
            Suite::Kernel => "kernel",
            Suite::Macdonald => "macdonald",
            Suite::Hermite => "hermite",
            Suite::Transform => "transform",
            Suite::Heat => "heat",
            Suite::Asymptotics => "asymptotics",
            Suite::All => "all",
        }
    }

    fn rank_one_only(&self) -> bool {
        matches!(self, Suite::Transform | Suite::Heat | Suite::Asymptotics)
    }
}

impl FromStr for Suite {
    type Err = DunklError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain([Suite::All].iter())
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| DunklError::Config(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Degree cap for the exact polynomial identities.
    pub max_degree: usize,
    /// Series truncation M for numeric kernels.
    pub truncation: usize,
    /// Node count per half line for transform and heat rules.
    pub nodes: usize,
    /// Restrict the suite to one group; otherwise the default battery.
    pub group: Option<GroupSpec>,
    /// Fixed multiplicity values; otherwise drawn from the seed.
    pub k: Option<Vec<Rational>>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 7,
            max_degree: 6,
            truncation: kernel::DEFAULT_TRUNCATION,
            nodes: th::DEFAULT_NODES,
            group: None,
            k: None,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self, suite: Suite) -> Result<()> {
        if self.max_degree == 0 || self.truncation == 0 || self.nodes == 0 {
            return Err(DunklError::Config("degree caps, truncation and node counts must be ≥ 1".into()));
        }
        if let Some(k) = &self.k {
            crate::root_system::MultiplicityFunction::new(k.clone())?;
        }
        if let Some(g) = self.group {
            let n = g.orbit_count()?;
            if let Some(k) = &self.k {
                if k.len() != 1 && k.len() != n {
                    return Err(DunklError::Config(format!("{g} has {n} root orbits, got {} multiplicity values", k.len())));
                }
            }
            let rank_one_suites: Vec<Suite> = match suite {
                Suite::All => Suite::EACH.to_vec(),
                s => vec![s],
            };
            if !g.is_rank_one() && rank_one_suites.iter().any(|s| s.rank_one_only()) && suite != Suite::All {
                return Err(DunklError::Config(format!("suite {} runs in rank one only, got {g}", suite.name())));
            }
        }
        Ok(())
    }

    fn groups(&self, defaults: &[GroupSpec]) -> Vec<GroupSpec> {
        match self.group {
            Some(g) => vec![g],
            None => defaults.to_vec(),
        }
    }

    /// `count` multiplicity vectors for `g`: the configured one, or random.
    fn multiplicities(&self, g: GroupSpec, rng: &mut TestRng, count: usize) -> Result<Vec<Vec<Rational>>> {
        if let Some(k) = &self.k {
            return Ok(vec![k.clone()]);
        }
        let n = g.orbit_count()?;
        Ok((0..count).map(|_| (0..n).map(|_| random::multiplicity_value(rng)).collect()).collect())
    }

    fn fixed_or(&self, defaults: &[Rational]) -> Vec<Rational> {
        match &self.k {
            Some(k) => vec![k[0].clone()],
            None => defaults.to_vec(),
        }
    }
}

fn k_label(k: &[Rational]) -> String {
    let parts: Vec<String> = k.iter().map(format_rational).collect();
    format!("k = ({})", parts.join(", "))
}

fn suite_rng(cfg: &VerifyConfig, suite: Suite) -> TestRng {
    random::rng(cfg.seed ^ ((Suite::EACH.iter().position(|s| *s == suite).unwrap_or(0) as u64 + 1) * 0x9e37_79b9))
}

/// Runs a suite; `All` runs each suite in turn.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<Report>> {
    cfg.validate(suite)?;
    if suite == Suite::All {
        let mut out = Vec::new();
        for s in Suite::EACH {
            if s.rank_one_only() && cfg.group.is_some_and(|g| !g.is_rank_one()) {
                continue;
            }
            out.extend(run_suite(s, cfg)?);
        }
        return Ok(out);
    }
    let mut rng = suite_rng(cfg, suite);
    match suite {
        Suite::Operators => operators(cfg, &mut rng),
        Suite::Intertwiner => intertwiner(cfg, &mut rng),
        Suite::Kernel => kernel_suite(cfg, &mut rng),
        Suite::Macdonald => macdonald(cfg),
        Suite::Hermite => hermite_suite(cfg),
        Suite::Transform => transform(cfg),
        Suite::Heat => heat(cfg, &mut rng),
        Suite::Asymptotics => asymptotics_suite(cfg),
        Suite::All => unreachable!(),
    }
}

fn operators_for<S: Scalar>(ctx: &RootSystemContext<S>, cfg: &VerifyConfig, rng: &mut TestRng, report: &mut Report) {
    let cap = cfg.max_degree;
    let pairs = dc::random_direction_pairs::<S>(rng, ctx.dim(), 5);
    report.push(dc::check_commutativity(ctx, &pairs, cap));
    report.push(dc::check_equivariance(ctx, rng, 10, cap));
    report.push(dc::check_product_rule(ctx, rng, 10, cap));
    report.push(dc::check_laplacian_form(ctx, cap));
    report.push(dc::check_delta_invariance(ctx, cap));
    report.checks.extend(dc::check_pairing(ctx, rng, 10, cap.min(4)));
    report.checks.extend(dc::check_sl2(ctx, cap));
    report.push(dc::check_commutator_xi_delta(ctx, cap));
    report.push(dc::check_minimum_principle(ctx, rng, 10));
}

fn operators(cfg: &VerifyConfig, rng: &mut TestRng) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for g in cfg.groups(&[GroupSpec::A2, GroupSpec::A3, GroupSpec::B2, GroupSpec::I2_5]) {
        for k in cfg.multiplicities(g, rng, 3)? {
            let mut report = Report::new("operators", format!("{g}, {}", k_label(&k)));
            if g.exact() {
                operators_for(&g.context::<Rational>(&k)?, cfg, rng, &mut report);
            } else {
                operators_for(&g.context::<f64>(&k)?, cfg, rng, &mut report);
            }
            out.push(report);
        }
    }
    Ok(out)
}

fn intertwiner(cfg: &VerifyConfig, rng: &mut TestRng) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for g in cfg.groups(&[GroupSpec::A2, GroupSpec::B2, GroupSpec::RANK_ONE]) {
        if !g.exact() {
            return Err(DunklError::Config(format!("the intertwiner suite needs rational roots, got {g}")));
        }
        for k in cfg.multiplicities(g, rng, 1)? {
            let ctx = g.context::<Rational>(&k)?;
            let mut report = Report::new("intertwiner", format!("{g}, {}", k_label(&k)));
            let cap = if g.is_rank_one() { cfg.max_degree.max(12) } else { cfg.max_degree };
            let table = IntertwinerTable::build(&ctx, cap)?;
            report.push(intertwiner::check_intertwining(&table, &ctx));
            report.push(intertwiner::check_normalization(&table, &ctx));
            report.push(intertwiner::check_pairing_transport(&table, &ctx, cap.min(5)));
            report.push(intertwiner::check_equivariance_v(&table, &ctx, cap.min(5)));
            if g.is_rank_one() {
                report.push(intertwiner::check_rank_one_closed_form(&table, &k[0]));
                report.push(intertwiner::check_rank_one_integral(&table, &k[0], 60));
            }
            report.checks.extend(intertwiner::check_positivity_grid(&table, rng, 100, 1000));
            out.push(report);
        }
    }
    Ok(out)
}

fn kernel_suite(cfg: &VerifyConfig, rng: &mut TestRng) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let exact_groups: Vec<GroupSpec> = cfg.groups(&[GroupSpec::A2, GroupSpec::B2]).into_iter().filter(|g| g.exact()).collect();
    for g in exact_groups {
        for k in cfg.multiplicities(g, rng, 1)? {
            let ctx = g.context::<Rational>(&k)?;
            let mut report = Report::new("kernel", format!("{g}, {}, exact", k_label(&k)));
            let cap = cfg.max_degree.max(8);
            let ev = SeriesKernel::new(&ctx, cap)?;
            let y: Vec<Rational> = random::direction(rng, ctx.dim());
            report.push(kernel::check_degree_shift(&ev, &y, cap));
            report.push(kernel::check_component_symmetry(&ev, cap));
            report.push(kernel::check_bessel_system(&ev, &y, cap.min(6)));
            out.push(report);
        }
    }
    for g in cfg.groups(&[GroupSpec::RANK_ONE, GroupSpec::A2]) {
        for k in cfg.multiplicities(g, rng, 1)? {
            let ctx = g.context::<f64>(&k)?;
            let mut report = Report::new("kernel", format!("{g}, {}, truncation {}", k_label(&k), cfg.truncation));
            let ev = SeriesKernel::new(&ctx, cfg.truncation)?;
            let pairs = kernel::sample_pairs(rng, ctx.dim(), 1000, 1.2);
            report.checks.extend(result_checks("kernel-symmetries", kernel::check_symmetries(&ev, &pairs[..50])));
            report.checks.extend(result_checks("kernel-bounds", kernel::check_bound_and_positivity(&ev, &pairs)));
            if g.is_rank_one() {
                let kf = k[0].to_f64();
                report.push(CheckOutcome::from_result(
                    "kernel-rank-one",
                    "series E_k = closed form",
                    kernel::check_rank_one_closed_form(&ev, kf, 1.5, 9),
                ));
                let c_k = c_k_closed_form(&ctx).expect("rank one");
                let rule = gaussian_wk_rule(&ctx, 60)?;
                let mut rp = vec![(vec![0.0], vec![0.0])];
                rp.extend(kernel::sample_pairs(rng, 1, 9, 1.5));
                report.push(CheckOutcome::from_result(
                    "reproducing",
                    "reproducing identity of E_k",
                    kernel::check_reproducing(&RankOneKernel::new(kf), &rule, c_k, &rp),
                ));
            }
            out.push(report);
        }
    }
    Ok(out)
}

fn result_checks(name: &str, r: Result<Vec<CheckOutcome>>) -> Vec<CheckOutcome> {
    r.unwrap_or_else(|e| vec![CheckOutcome::flag(name, name, false, format!("error: {e}"))])
}

fn macdonald(cfg: &VerifyConfig) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let targets: Vec<(GroupSpec, Vec<Rational>, usize)> = match cfg.group {
        Some(g) => vec![(g, cfg.k.clone().unwrap_or_else(|| vec![rat(1, 2)]), 30)],
        None => {
            let mut t: Vec<(GroupSpec, Vec<Rational>, usize)> = cfg
                .fixed_or(&[rat(1, 4), rat(1, 2), rat(3, 2)])
                .into_iter()
                .map(|k| (GroupSpec::RANK_ONE, vec![k], 40))
                .collect();
            t.push((GroupSpec::B2, vec![rat(1, 2), rat(1, 2)], 30));
            t
        }
    };
    for (g, k, nodes) in targets {
        if !g.exact() {
            return Err(DunklError::Config(format!("the Macdonald suite needs rational roots, got {g}")));
        }
        let ctx = g.context::<Rational>(&k)?;
        let mut report = Report::new("macdonald", format!("{g}, {}, {nodes} nodes", k_label(&k)));
        let rule = gaussian_wk_rule(&ctx, nodes)?;
        report.push(quadrature::check_c_k(&ctx, &rule));
        report.push(CheckOutcome::from_result(
            "macdonald",
            "[p,q]_k = c_k⁻¹∫e^{−Δ_k/2}p e^{−Δ_k/2}q e^{−|x|²/2}w_k",
            quadrature::check_macdonald(&ctx, &rule, cfg.max_degree.min(5)),
        ));
        let mut rng = random::rng(cfg.seed);
        let pairs: Vec<_> = (0..4)
            .map(|_| (random::polynomial(&mut rng, ctx.dim(), 3, 3), random::polynomial(&mut rng, ctx.dim(), 3, 3)))
            .collect();
        report.push(CheckOutcome::from_result(
            "antisymmetry",
            "T_ξ is skew on L²(w_k)",
            quadrature::check_antisymmetry(&ctx, &rule, &pairs),
        ));
        out.push(report);
    }
    Ok(out)
}

fn hermite_suite(cfg: &VerifyConfig) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let cap = cfg.max_degree;
    let targets: Vec<(GroupSpec, Vec<Rational>)> = match cfg.group {
        Some(g) => vec![(g, cfg.k.clone().unwrap_or_else(|| vec![rat(1, 2)]))],
        None => vec![
            (GroupSpec::A2, vec![rat(1, 2)]),
            (GroupSpec::B2, vec![rat(1, 2), rat_int(1)]),
            (GroupSpec::RANK_ONE, vec![rat(1, 2)]),
        ],
    };
    for (g, k) in targets {
        if !g.exact() {
            return Err(DunklError::Config(format!("the Hermite suite needs rational roots, got {g}")));
        }
        let ctx = g.context::<Rational>(&k)?;
        let mut report = Report::new("hermite", format!("{g}, {}, |ν| ≤ {cap}", k_label(&k)));
        let sys = HermiteSystem::build(&ctx, cap)?;
        report.push(CheckOutcome::from_result("hermite-orthogonality", "[φ_ν, φ_μ]_k = 0", hermite::check_orthogonality(&sys)));
        report.push(CheckOutcome::from_result("hermite-eigen", "(−Δ_k + ρ)H_ν = |ν|H_ν", hermite::check_eigen_equations(&sys)));
        report.push(hermite::check_parity(&sys));
        report.push(hermite::check_dimension(&sys));
        report.push(CheckOutcome::from_result("hermite-rodrigues", "Rodrigues formula", hermite::check_rodrigues(&sys)));
        if ctx.dim() <= 2 {
            let rule = gaussian_wk_rule(&ctx, if g.is_rank_one() { 60 } else { 30 })?;
            report.push(CheckOutcome::from_result(
                "hermite-quadrature",
                "∫H_νH_μ dm_k = δ",
                hermite::check_quadrature_orthogonality(&sys, &rule),
            ));
            report.push(CheckOutcome::from_result(
                "hermite-rodrigues-weak",
                "∫H_ν p dm_k = c_k⁻¹∫e^{−|x|²/2}φ_ν(T)p w_k",
                hermite::check_rodrigues_weak(&sys, &rule, cap.min(4)),
            ));
        }
        if g.is_rank_one() {
            let kf = k[0].to_f64();
            report.push(hermite::check_rank_one_laguerre(&sys, kf));
            let long = HermiteSystem::build(&ctx, 30)?;
            let ev = RankOneKernel::new(kf);
            report.push(CheckOutcome::from_result(
                "hermite-generating",
                "generating function of H_ν",
                hermite::check_generating(&long, &ev, &[0.7], &[-0.4]),
            ));
            report.push(CheckOutcome::from_result(
                "hermite-mehler",
                "Mehler formula",
                hermite::check_mehler(&long, &ev, &[0.7], &[-0.4], 0.5),
            ));
            let plan = TransformPlan::new(&ctx, th::DEFAULT_RADIUS, cfg.nodes)?;
            report.push(CheckOutcome::from_result(
                "hermite-transform",
                "ψ̂_ν = (−i)^{|ν|}ψ_ν",
                th::check_transform_eigenfunctions(&sys, &plan, &[0.0, 0.6, 1.3, 2.4]),
            ));
        }
        out.push(report);
    }
    Ok(out)
}

fn rank_one_ks(cfg: &VerifyConfig, defaults: &[Rational]) -> Result<Vec<Rational>> {
    if cfg.group.is_some_and(|g| !g.is_rank_one()) {
        return Err(DunklError::Config("this suite runs in rank one only".into()));
    }
    Ok(cfg.fixed_or(defaults))
}

fn transform(cfg: &VerifyConfig) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for k in rank_one_ks(cfg, &[rat_int(0), rat(1, 2), rat_int(1)])? {
        let ctx = GroupSpec::RANK_ONE.context::<Rational>(std::slice::from_ref(&k))?;
        let mut report = Report::new("transform", format!("A1, {}, {} nodes", k_label(std::slice::from_ref(&k)), cfg.nodes));
        let plan = TransformPlan::new(&ctx, th::DEFAULT_RADIUS, cfg.nodes)?;
        report.checks.extend(result_checks("transform-examples", th::check_transform_examples(&plan, &[0.0, 0.7, 1.5, 3.0], 0.5)));
        report.checks.extend(th::check_plancherel_inversion(&plan, &th::test_battery(), &[-1.7, -0.4, 0.0, 0.9, 2.2]));
        let hk = HeatKernel::new(&ctx, plan.kernel(), plan.c_k);
        report.checks.extend(result_checks("translation", th::check_translation(&plan, &hk, &[(0.5, 0.3), (-1.0, 0.8), (1.4, -0.6)], 0.5)));
        out.push(report);
    }
    Ok(out)
}

fn heat(cfg: &VerifyConfig, rng: &mut TestRng) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for k in rank_one_ks(cfg, &[rat(1, 2), rat_int(1)])? {
        let ctx = GroupSpec::RANK_ONE.context::<Rational>(std::slice::from_ref(&k))?;
        let mut report = Report::new("heat", format!("A1, {}, t ∈ [0.2, 2]", k_label(std::slice::from_ref(&k))));
        let plan = TransformPlan::new(&ctx, th::DEFAULT_RADIUS, cfg.nodes)?;
        let hk = HeatKernel::new(&ctx, plan.kernel(), plan.c_k);
        let nodes = cfg.nodes;
        report.push(CheckOutcome::from_result(
            "heat-mass",
            "∫Γ_k(t,x,y)w_k(y)dy = 1",
            th::check_mass(&ctx, &hk, &[0.0, 0.5, -1.3, 2.0], &[0.2, 0.7, 2.0], nodes),
        ));
        report.push(CheckOutcome::from_result(
            "heat-semigroup",
            "Γ_k(t+s,x,y) = ∫Γ_k(t,x,z)Γ_k(s,y,z)w_k(z)dz",
            th::check_semigroup(&ctx, &hk, &th::semigroup_samples(rng, 6), nodes),
        ));
        let samples: Vec<(f64, f64, f64)> = (0..40)
            .map(|_| (rng.gen_range(0.2..=2.0), rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0)))
            .collect();
        report.push(CheckOutcome::from_result(
            "heat-pde",
            "∂_tΓ_k = Δ_kΓ_k",
            th::check_heat_equation(&ctx, &hk, &samples[..8]),
        ));
        report.checks.extend(result_checks("heat-bound", th::check_gaussian_bound(&hk, &samples)));
        let cases = [(0.2, 0.5), (1.0, -1.2), (2.0, 0.3)];
        let wide = TransformPlan::new(&ctx, th::heat_radius(1.2, 2.0), nodes)?;
        report.push(CheckOutcome::from_result(
            "heat-markov-transform",
            "c_k(Γ_k(t,x,·))^(ξ) = E_k(−ix,ξ)e^{−t|ξ|²}",
            th::check_markov_transform(&wide, &hk, &cases, &[0.0, 0.4, 1.7]),
        ));
        report.push(CheckOutcome::from_result(
            "heat-contraction",
            "sup|H(t)f| ≤ sup|f|",
            th::check_contraction(&ctx, &hk, 0.5, &[0.0, 0.8, -1.5], nodes),
        ));
        report.push(CheckOutcome::from_result(
            "heat-moment",
            "∫Γ_k(t,x,y)|y|²w_k dy = |x|² + 2(N+2γ)t",
            th::check_moment_continuity(&ctx, &hk, 0.8, &[2.0, 1.0, 0.5, 0.2], nodes),
        ));
        out.push(report);
    }
    Ok(out)
}

/// Ray parameters, arc radii and heat times used by the asymptotics suite.
pub const RAY_TIMES: [f64; 4] = [50.0, 100.0, 200.0, 400.0];
pub const ARC_RADII: [f64; 3] = [50.0, 100.0, 200.0];
pub const HEAT_TIMES: [f64; 3] = [1e-1, 1e-2, 1e-3];
pub const HEAT_RATIO_TOLERANCE: f64 = 5e-2;

fn asymptotics_suite(cfg: &VerifyConfig) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for k in rank_one_ks(cfg, &[rat(1, 4), rat(1, 2), rat_int(1), rat(3, 2)])? {
        let ctx = GroupSpec::RANK_ONE.context::<Rational>(std::slice::from_ref(&k))?;
        let mut report = Report::new("asymptotics", format!("A1, {}, x = y = 1", k_label(std::slice::from_ref(&k))));
        report.push(CheckOutcome::from_result(
            "asymptotics.constant",
            "limit constant two ways",
            asymptotics::check_constants(&ctx),
        ));
        if !ctx.is_k_zero() {
            let probe = AsymptoticProbe::new(&ctx)?;
            report.push(CheckOutcome::from_result("asymptotics.ray", "ray limit", asymptotics::check_ray(&probe, 1.0, 1.0, &RAY_TIMES)));
            report.push(CheckOutcome::from_result(
                "asymptotics.half_plane",
                "half-plane limit",
                asymptotics::check_half_plane(&probe, 1.0, 1.0, &ARC_RADII, 41),
            ));
            report.checks.extend(result_checks(
                "asymptotics.heat_ratio",
                asymptotics::check_heat_ratio(&probe, 1.0, 1.0, &HEAT_TIMES, HEAT_RATIO_TOLERANCE),
            ));
        }
        out.push(report);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_groups() {
        assert_eq!(GroupSpec::parse("A2").unwrap(), GroupSpec::A2);
        assert_eq!(GroupSpec::parse("b2").unwrap(), GroupSpec::B2);
        assert_eq!(GroupSpec::parse("I2(5)").unwrap(), GroupSpec::I2_5);
        assert_eq!(GroupSpec::parse("A1").unwrap(), GroupSpec::RANK_ONE);
        assert_eq!(GroupSpec::from_type("A", Some(4)).unwrap(), GroupSpec::A3);
        assert!(GroupSpec::parse("Q7").is_err());
        assert_eq!(GroupSpec::B2.orbit_count().unwrap(), 2);
        assert_eq!("heat".parse::<Suite>().unwrap(), Suite::Heat);
    }

    #[test]
    fn negative_k_is_config_error() {
        let cfg = VerifyConfig { k: Some(vec![rat(-1, 2)]), ..VerifyConfig::default() };
        assert!(run_suite(Suite::All, &cfg).unwrap_err().is_config());
    }

    #[test]
    fn deterministic_reports() {
        let cfg = VerifyConfig { group: Some(GroupSpec::B2), max_degree: 3, ..VerifyConfig::default() };
        let a = run_suite(Suite::Operators, &cfg).unwrap();
        let b = run_suite(Suite::Operators, &cfg).unwrap();
        let text = |r: &[Report]| r.iter().map(Report::to_text).collect::<String>();
        assert_eq!(text(&a), text(&b));
        assert!(a.iter().all(Report::passed), "{}", text(&a));
    }
}
