//! The Dunkl kernel E_k and the k-Bessel function J_k.
//!
//! The series evaluator stores E_k^{(n)}(x,y) = Σ K_n[μ][ν] x^μ y^ν for
//! n ≤ M, where K_n is read off the intertwiner table. Complex arguments are
//! allowed in y only.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dunkl_calculus::{apply_p_of_t, apply_t_axis, invariant_polynomials};
use crate::error::{DunklError, Result};
use crate::intertwiner::{Construction, IntertwinerTable};
use crate::linalg::Matrix;
use crate::polynomial::MultiPoly;
use crate::quadrature::QuadratureRule;
use crate::random::{self, TestRng};
use crate::report::CheckOutcome;
use crate::root_system::RootSystemContext;
use crate::scalar::{Rational, Scalar};
use crate::special::{hyp1f1, rank_one_kernel, rank_one_kernel_split};

pub const DEFAULT_TRUNCATION: usize = 40;
/// Tail bound an evaluation must meet before it is accepted.
pub const TAIL_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelValue {
    pub value: Complex64,
    /// Upper bound for the neglected part of the series (0 for closed forms).
    pub tail_bound: f64,
    /// Number of homogeneous components summed.
    pub terms: usize,
}

/// Anything that evaluates E_k for real x and complex y.
pub trait KernelFn: Sync {
    fn dim(&self) -> usize;
    fn eval_e(&self, x: &[f64], y: &[Complex64]) -> Result<KernelValue>;
    /// Group elements as f64 matrices, identity first.
    fn group_matrices(&self) -> &[Matrix<f64>];

    /// J_k(x,y) = |G|⁻¹ Σ_g E_k(gx, y).
    fn eval_j(&self, x: &[f64], y: &[Complex64]) -> Result<KernelValue> {
        let group = self.group_matrices();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut tail = 0.0f64;
        let mut terms = 0;
        for g in group {
            let v = self.eval_e(&g.apply(x), y)?;
            acc += v.value;
            tail = tail.max(v.tail_bound);
            terms = terms.max(v.terms);
        }
        Ok(KernelValue {
            value: acc / group.len() as f64,
            tail_bound: tail,
            terms,
        })
    }

    fn eval_e_real(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        let yc: Vec<Complex64> = y.iter().map(|v| Complex64::new(*v, 0.0)).collect();
        Ok(self.eval_e(x, &yc)?.value.re)
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// e^r r^{n+1}/(n+1)!, the tail bound after the degree-n component.
pub fn tail_bound(r: f64, n: usize) -> f64 {
    let mut log = r;
    for j in 1..=n + 1 {
        log += (r / j as f64).ln();
    }
    if r == 0.0 {
        0.0
    } else {
        log.exp()
    }
}

/// Smallest M whose tail bound at |x||y| = r is at most `tol`.
pub fn truncation_for(r: f64, tol: f64) -> usize {
    (0..10_000).find(|&m| tail_bound(r, m) <= tol).unwrap_or(10_000)
}

/// Largest r accepted by truncation M.
pub fn radius_for(m: usize) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    while tail_bound(hi, m) <= TAIL_TOLERANCE {
        hi *= 2.0;
    }
    for _ in 0..60 {
        let mid = (lo + hi) / 2.0;
        if tail_bound(mid, m) <= TAIL_TOLERANCE {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Power-series evaluator for any root system.
#[derive(Clone, Debug)]
pub struct SeriesKernel<S: Scalar> {
    ctx: RootSystemContext<S>,
    table: IntertwinerTable<S>,
    truncation: usize,
    exponents: Vec<Vec<Vec<u16>>>,
    coeffs: Vec<Matrix<f64>>,
    group: Vec<Matrix<f64>>,
}

impl<S: Scalar> SeriesKernel<S> {
    /// Exact backends use the stacked construction, f64 the Euler one.
    pub fn new(ctx: &RootSystemContext<S>, truncation: usize) -> Result<Self> {
        let construction = if S::EXACT { Construction::Stacked } else { Construction::Euler };
        let table = IntertwinerTable::build_with(ctx, truncation, construction)?;
        Self::from_table(ctx, table, truncation)
    }

    pub fn from_table(ctx: &RootSystemContext<S>, table: IntertwinerTable<S>, truncation: usize) -> Result<Self> {
        if table.cap() < truncation {
            return Err(DunklError::DegreeOverflow {
                degree: truncation,
                cap: table.cap(),
            });
        }
        let exponents = (0..=truncation)
            .map(|n| table.basis(n).iter().map(|m| m.exponents().to_vec()).collect())
            .collect();
        let coeffs = (0..=truncation).map(|n| table.kernel_coefficients(n).to_f64()).collect();
        let group = ctx.group().iter().map(|g| g.matrix.to_f64()).collect();
        Ok(SeriesKernel {
            ctx: ctx.clone(),
            table,
            truncation,
            exponents,
            coeffs,
            group,
        })
    }

    pub fn context(&self) -> &RootSystemContext<S> {
        &self.ctx
    }

    pub fn table(&self) -> &IntertwinerTable<S> {
        &self.table
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn radius(&self) -> f64 {
        radius_for(self.truncation)
    }

    /// E_k^{(n)}(·, y) as an exact polynomial in x.
    pub fn homogeneous_component(&self, n: usize, y: &[S]) -> MultiPoly<S> {
        let k = self.table.kernel_coefficients(n);
        let basis = self.table.basis(n);
        let yv: Vec<S> = basis.iter().map(|m| m.eval(y)).collect();
        let mut p = MultiPoly::zero(self.ctx.dim());
        for (i, mu) in basis.iter().enumerate() {
            let mut c = S::zero();
            for (j, v) in yv.iter().enumerate() {
                if !k[(i, j)].is_zero() {
                    c = c + k[(i, j)].clone() * v.clone();
                }
            }
            p.add_term(mu.clone(), c);
        }
        p
    }

    /// Σ_{n ≤ m} E_k^{(n)}(·, y).
    pub fn truncated_series(&self, m: usize, y: &[S]) -> MultiPoly<S> {
        (0..=m).fold(MultiPoly::zero(self.ctx.dim()), |acc, n| acc.add(&self.homogeneous_component(n, y)))
    }
}

fn powers_real(x: &[f64], m: usize) -> Vec<Vec<f64>> {
    x.iter()
        .map(|&v| {
            let mut p = Vec::with_capacity(m + 1);
            let mut acc = 1.0;
            for _ in 0..=m {
                p.push(acc);
                acc *= v;
            }
            p
        })
        .collect()
}

fn powers_complex(y: &[Complex64], m: usize) -> Vec<Vec<Complex64>> {
    y.iter()
        .map(|&v| {
            let mut p = Vec::with_capacity(m + 1);
            let mut acc = Complex64::new(1.0, 0.0);
            for _ in 0..=m {
                p.push(acc);
                acc *= v;
            }
            p
        })
        .collect()
}

impl<S: Scalar> KernelFn for SeriesKernel<S> {
    fn dim(&self) -> usize {
        self.ctx.dim()
    }

    fn group_matrices(&self) -> &[Matrix<f64>] {
        &self.group
    }

    fn eval_e(&self, x: &[f64], y: &[Complex64]) -> Result<KernelValue> {
        let dim = self.ctx.dim();
        if x.len() != dim || y.len() != dim {
            return Err(DunklError::DimensionMismatch {
                expected: dim,
                got: if x.len() != dim { x.len() } else { y.len() },
            });
        }
        let ynorm = y.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        let r = norm(x) * ynorm;
        let m = self.truncation;
        let bound = tail_bound(r, m);
        if bound > TAIL_TOLERANCE {
            return Err(DunklError::Truncation {
                product: r,
                radius: self.radius(),
                truncation: m,
                suggested: truncation_for(r, TAIL_TOLERANCE),
            });
        }
        let n_eff = truncation_for(r, 1e-17).min(m);
        let xp = powers_real(x, n_eff);
        let yp = powers_complex(y, n_eff);
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 0..=n_eff {
            let ex = &self.exponents[n];
            let xm: Vec<f64> = ex.iter().map(|e| e.iter().enumerate().map(|(i, &p)| xp[i][p as usize]).product()).collect();
            let ym: Vec<Complex64> = ex
                .iter()
                .map(|e| e.iter().enumerate().fold(Complex64::new(1.0, 0.0), |a, (i, &p)| a * yp[i][p as usize]))
                .collect();
            let k = &self.coeffs[n];
            let d = ex.len();
            for i in 0..d {
                if xm[i] == 0.0 {
                    continue;
                }
                let row = k.row(i);
                let mut s = Complex64::new(0.0, 0.0);
                for j in 0..d {
                    if row[j] != 0.0 {
                        s += ym[j] * row[j];
                    }
                }
                acc += s * xm[i];
            }
        }
        Ok(KernelValue {
            value: acc,
            tail_bound: tail_bound(r, n_eff),
            terms: n_eff + 1,
        })
    }
}

/// Rank-one closed form E_k(x,y) = e^{xy}₁F₁(k;2k+1;−2xy).
#[derive(Clone, Debug)]
pub struct RankOneKernel {
    pub k: f64,
    group: Vec<Matrix<f64>>,
}

impl RankOneKernel {
    pub fn new(k: f64) -> Self {
        RankOneKernel {
            k,
            group: vec![Matrix::from_rows(vec![vec![1.0]]), Matrix::from_rows(vec![vec![-1.0]])],
        }
    }

    /// (m, s) with E_k(x,y) = m·e^s, for overflow-free products.
    pub fn split(&self, x: f64, y: Complex64) -> (Complex64, Complex64) {
        rank_one_kernel_split(self.k, y * x)
    }
}

impl KernelFn for RankOneKernel {
    fn dim(&self) -> usize {
        1
    }

    fn group_matrices(&self) -> &[Matrix<f64>] {
        &self.group
    }

    fn eval_e(&self, x: &[f64], y: &[Complex64]) -> Result<KernelValue> {
        if x.len() != 1 || y.len() != 1 {
            return Err(DunklError::DimensionMismatch { expected: 1, got: x.len().max(y.len()) });
        }
        Ok(KernelValue {
            value: rank_one_kernel(self.k, y[0] * x[0]),
            tail_bound: 0.0,
            terms: 0,
        })
    }
}

/// T_i E_k^{(n)}(·,y) = y_i E_k^{(n−1)}(·,y) for all n ≤ cap and all axes.
pub fn check_degree_shift<S: Scalar>(ev: &SeriesKernel<S>, y: &[S], cap: usize) -> CheckOutcome {
    let ctx = ev.context();
    let cap = cap.min(ev.truncation());
    let comps: Vec<MultiPoly<S>> = (0..=cap).map(|n| ev.homogeneous_component(n, y)).collect();
    let mut fail = None;
    let mut checked = 0;
    'outer: for n in 1..=cap {
        for i in 0..ctx.dim() {
            let lhs = match apply_t_axis(ctx, i, &comps[n]) {
                Ok(p) => p,
                Err(e) => {
                    fail = Some(format!("n = {n}, axis {i}: {e}"));
                    break 'outer;
                }
            };
            let rhs = comps[n - 1].scale(&y[i]);
            checked += 1;
            let diff = lhs.sub(&rhs);
            let ok = if S::EXACT { diff.is_zero() } else { diff.chop(comps[n].max_abs_coeff().max(1.0)).is_zero() };
            if !ok {
                fail = Some(format!("n = {n}, ξ = e{}: residual {}", i + 1, diff.to_f64().max_abs_coeff()));
                break 'outer;
            }
        }
    }
    CheckOutcome::exact("degree-shift", "T_ξE^{(n)}(·,y) = ⟨ξ,y⟩E^{(n−1)}(·,y)", fail, checked)
}

/// E^{(n)}(x,y) = E^{(n)}(y,x): each coefficient block K_n is symmetric.
pub fn check_component_symmetry<S: Scalar>(ev: &SeriesKernel<S>, cap: usize) -> CheckOutcome {
    let mut fail = None;
    let cap = cap.min(ev.truncation());
    for n in 0..=cap {
        let k = ev.table().kernel_coefficients(n);
        let ok = if S::EXACT { k == k.transpose() } else { k.approx_eq(&k.transpose()) };
        if !ok {
            fail = Some(format!("degree {n}"));
            break;
        }
    }
    CheckOutcome::exact("component-symmetry", "E^{(n)}(x,y) = E^{(n)}(y,x)", fail, cap + 1)
}

/// p(T) Σ_{n≤M} E^{(n)}(·,y) = p(y) Σ_{n≤M−deg p} E^{(n)}(·,y) for homogeneous
/// invariant generators p.
pub fn check_bessel_system<S: Scalar>(ev: &SeriesKernel<S>, y: &[S], cap: usize) -> CheckOutcome {
    let ctx = ev.context();
    let cap = cap.min(ev.truncation());
    let full = ev.truncated_series(cap, y);
    let mut fail = None;
    let gens: Vec<MultiPoly<S>> = invariant_polynomials(ctx, 4).into_iter().filter(|p| p.degree().unwrap_or(0) > 0).collect();
    for p in &gens {
        let d = p.degree().unwrap_or(0);
        if d > cap {
            continue;
        }
        let lhs = match apply_p_of_t(ctx, p, &full) {
            Ok(v) => v,
            Err(e) => {
                fail = Some(format!("{e}"));
                break;
            }
        };
        let py = match p.eval(y) {
            Ok(v) => v,
            Err(e) => {
                fail = Some(format!("{e}"));
                break;
            }
        };
        let rhs = ev.truncated_series(cap - d, y).scale(&py);
        let diff = lhs.sub(&rhs);
        let ok = if S::EXACT { diff.is_zero() } else { diff.chop(full.max_abs_coeff().max(1.0)).is_zero() };
        if !ok {
            fail = Some(format!("generator of degree {d} with {} terms", p.num_terms()));
            break;
        }
    }
    CheckOutcome::exact("bessel-system", "p(T)E_k(·,y) = p(y)E_k(·,y), p ∈ Π^G", fail, gens.len())
}

fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

fn cvec(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|x| Complex64::new(*x, 0.0)).collect()
}

/// Random real pairs with |x|, |y| ≤ `radius`.
pub fn sample_pairs(rng: &mut TestRng, dim: usize, count: usize, radius: f64) -> Vec<(Vec<f64>, Vec<f64>)> {
    (0..count)
        .map(|_| {
            let x: Vec<f64> = random::ball_point(rng, dim).iter().map(|v| v * radius).collect();
            let y: Vec<f64> = random::ball_point(rng, dim).iter().map(|v| v * radius).collect();
            (x, y)
        })
        .collect()
}

/// Symmetry, homogeneity, invariance and conjugation of E_k.
pub fn check_symmetries(ev: &dyn KernelFn, pairs: &[(Vec<f64>, Vec<f64>)]) -> Result<Vec<CheckOutcome>> {
    let group = ev.group_matrices();
    let mut sym = 0.0f64;
    let mut hom = 0.0f64;
    let mut inv = 0.0f64;
    let mut conj = 0.0f64;
    for (idx, (x, y)) in pairs.iter().enumerate() {
        let e = ev.eval_e(x, &cvec(y))?.value;
        sym = sym.max(rel_err(e, ev.eval_e(y, &cvec(x))?.value));
        let lambda = 0.5 + (idx % 5) as f64 * 0.1 - 0.3;
        let lx: Vec<f64> = x.iter().map(|v| v * lambda).collect();
        let ly: Vec<f64> = y.iter().map(|v| v * lambda).collect();
        hom = hom.max(rel_err(ev.eval_e(&lx, &cvec(y))?.value, ev.eval_e(x, &cvec(&ly))?.value));
        let g = &group[idx % group.len()];
        inv = inv.max(rel_err(ev.eval_e(&g.apply(x), &cvec(&g.apply(y)))?.value, e));
        let yc: Vec<Complex64> = y.iter().enumerate().map(|(i, v)| Complex64::new(*v, 0.3 * (i as f64 + 1.0))).collect();
        let ycc: Vec<Complex64> = yc.iter().map(|v| v.conj()).collect();
        conj = conj.max(rel_err(ev.eval_e(x, &ycc)?.value, ev.eval_e(x, &yc)?.value.conj()));
    }
    let detail = format!("{} sample pairs", pairs.len());
    Ok(vec![
        CheckOutcome::numeric("kernel-symmetry", "E_k(x,y) = E_k(y,x)", sym, 1e-10, detail.clone()),
        CheckOutcome::numeric("kernel-homogeneity", "E_k(λx,y) = E_k(x,λy)", hom, 1e-10, detail.clone()),
        CheckOutcome::numeric("kernel-invariance", "E_k(gx,gy) = E_k(x,y)", inv, 1e-10, detail.clone()),
        CheckOutcome::numeric("kernel-conjugation", "E_k(x,ȳ) = conj E_k(x,y)", conj, 1e-10, detail),
    ])
}

/// |E_k(−ix,y)| ≤ 1 and E_k(x,y) > 0 on real pairs.
pub fn check_bound_and_positivity(ev: &dyn KernelFn, pairs: &[(Vec<f64>, Vec<f64>)]) -> Result<Vec<CheckOutcome>> {
    let results: Vec<Result<(f64, f64)>> = pairs
        .par_iter()
        .map(|(x, y)| {
            // E_k(−ix, y) = E_k(x, −iy)
            let yi: Vec<Complex64> = y.iter().map(|v| Complex64::new(0.0, -v)).collect();
            let m = ev.eval_e(x, &yi)?.value.norm();
            let e = ev.eval_e_real(x, y)?;
            Ok((m, e))
        })
        .collect();
    let mut worst_mod = 0.0f64;
    let mut min_val = f64::INFINITY;
    let mut witness = String::new();
    for (r, (x, y)) in results.into_iter().zip(pairs) {
        let (m, e) = r?;
        worst_mod = worst_mod.max(m);
        if e < min_val {
            min_val = e;
            witness = format!("x = {x:?}, y = {y:?}");
        }
    }
    Ok(vec![
        CheckOutcome::numeric(
            "kernel-bound",
            "|E_k(−ix,y)| ≤ 1",
            (worst_mod - 1.0).max(0.0),
            1e-9,
            format!("max |E_k(−ix,y)| = {worst_mod:.15} over {} pairs", pairs.len()),
        ),
        CheckOutcome::flag(
            "kernel-positivity",
            "E_k(x,y) > 0 for real x, y",
            min_val > 0.0,
            format!("min E_k = {min_val:.6e} at {witness}"),
        ),
    ])
}

/// ∫E_k(x,y)E_k(x,z)e^{−|x|²/2}w_k dx = c_k e^{(|y|²+|z|²)/2}E_k(y,z).
pub fn check_reproducing(ev: &dyn KernelFn, rule: &QuadratureRule, c_k: f64, pairs: &[(Vec<f64>, Vec<f64>)]) -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    let mut witness = String::new();
    for (y, z) in pairs {
        let (yc, zc) = (cvec(y), cvec(z));
        let lhs = rule.integrate(|x| {
            match (ev.eval_e(x, &yc), ev.eval_e(x, &zc)) {
                (Ok(a), Ok(b)) => a.value * b.value,
                _ => Complex64::new(f64::NAN, 0.0),
            }
        })?;
        let n2 = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>();
        let rhs = c_k * ((n2(y) + n2(z)) / 2.0).exp() * ev.eval_e(y, &zc)?.value;
        let err = (lhs - rhs).norm() / rhs.norm();
        if err > worst {
            worst = err;
            witness = format!("y = {y:?}, z = {z:?}: {:.12e} vs {:.12e}", lhs.re, rhs.re);
        }
    }
    Ok(CheckOutcome::numeric(
        "reproducing",
        "∫E_k(x,y)E_k(x,z)dμ_k = c_k e^{(|y|²+|z|²)/2}E_k(y,z)",
        worst,
        1e-6,
        format!("{} pairs; worst {witness}", pairs.len()),
    ))
}

/// Series evaluator against the rank-one closed form on a square grid.
pub fn check_rank_one_closed_form(ev: &dyn KernelFn, k: f64, half_width: f64, points: usize) -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    let step = 2.0 * half_width / (points - 1) as f64;
    for i in 0..points {
        for j in 0..points {
            let x = -half_width + i as f64 * step;
            let y = -half_width + j as f64 * step;
            let series = ev.eval_e(&[x], &[Complex64::new(y, 0.0)])?.value;
            let closed = Complex64::new((x * y).exp(), 0.0) * hyp1f1(k, 2.0 * k + 1.0, Complex64::new(-2.0 * x * y, 0.0));
            worst = worst.max((series - closed).norm() / closed.norm().max(1.0));
        }
    }
    Ok(CheckOutcome::numeric(
        "kernel-closed-form",
        "E_k(x,y) = e^{xy}₁F₁(k;2k+1;−2xy) in rank one",
        worst,
        1e-10,
        format!("k = {k}, {points}×{points} grid on [−{half_width}, {half_width}]²"),
    ))
}

/// Exact helper for reports: y as rationals.
pub fn rational_point(y: &[f64]) -> Vec<Rational> {
    y.iter().map(|v| Rational::from_f64(*v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{c_k_closed_form, gaussian_wk_rule};
    use crate::root_system::{ExactContext, FloatContext, RootSystem, RootSystemKind};
    use crate::scalar::{rat, rat_int};
    use crate::special::bessel_j_normalized;

    fn rank_one(k: Rational) -> ExactContext {
        ExactContext::new(RootSystem::standard(RootSystemKind::RankOne, 1).unwrap(), &[k]).unwrap()
    }

    #[test]
    fn k_zero_is_exponential() {
        let ctx = FloatContext::new(RootSystem::standard(RootSystemKind::B, 2).unwrap(), &[rat_int(0)]).unwrap();
        let ev = SeriesKernel::new(&ctx, 40).unwrap();
        for (x, y) in [([1.0, 0.5], [0.7, -1.2]), ([1.5, 1.0], [1.0, 0.3])] {
            let e = ev.eval_e_real(&x, &y).unwrap();
            let exact = (x[0] * y[0] + x[1] * y[1]).exp();
            assert!((e - exact).abs() < 1e-12 * exact);
        }
    }

    #[test]
    fn at_origin_is_one() {
        let ctx = FloatContext::new(RootSystem::standard(RootSystemKind::A, 3).unwrap(), &[rat(1, 2)]).unwrap();
        let ev = SeriesKernel::new(&ctx, 10).unwrap();
        let v = ev.eval_e(&[0.0; 3], &[Complex64::new(1.0, 2.0); 3]).unwrap();
        assert_eq!(v.value, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn rank_one_matches_closed_form_and_bessel() {
        let ctx = rank_one(rat(1, 2));
        let ev = SeriesKernel::new(&ctx, 40).unwrap();
        assert!(check_rank_one_closed_form(&ev, 0.5, 1.5, 9).unwrap().pass);
        let (x, y) = (0.8, 1.3);
        let j = ev.eval_j(&[x], &[Complex64::new(y, 0.0)]).unwrap().value;
        let b = bessel_j_normalized(0.0, Complex64::new(0.0, x * y));
        assert!((j - b).norm() < 1e-12);
    }

    #[test]
    fn truncation_error_suggests_m() {
        let ctx = rank_one(rat(1, 2));
        let ev = SeriesKernel::new(&ctx, 10).unwrap();
        match ev.eval_e(&[3.0], &[Complex64::new(3.0, 0.0)]) {
            Err(DunklError::Truncation { suggested, .. }) => assert!(suggested > 10),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exact_identities_b2() {
        let ctx = ExactContext::new(RootSystem::standard(RootSystemKind::B, 2).unwrap(), &[rat(1, 2), rat_int(1)]).unwrap();
        let ev = SeriesKernel::new(&ctx, 6).unwrap();
        let y = vec![rat(1, 2), rat(-2, 3)];
        assert!(check_degree_shift(&ev, &y, 6).pass);
        assert!(check_component_symmetry(&ev, 6).pass);
        let b = check_bessel_system(&ev, &y, 6);
        assert!(b.pass, "{b:?}");
    }

    #[test]
    fn numeric_identities() {
        let ctx = FloatContext::new(RootSystem::standard(RootSystemKind::A, 3).unwrap(), &[rat_int(1)]).unwrap();
        let ev = SeriesKernel::new(&ctx, 30).unwrap();
        let mut r = random::rng(3);
        let pairs = sample_pairs(&mut r, 3, 20, 1.2);
        for c in check_symmetries(&ev, &pairs).unwrap() {
            assert!(c.pass, "{c:?}");
        }
        for c in check_bound_and_positivity(&ev, &pairs).unwrap() {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn reproducing_rank_one() {
        let k = 0.5;
        let ctx = rank_one(rat(1, 2));
        let rule = gaussian_wk_rule(&ctx, 60).unwrap();
        let c = c_k_closed_form(&ctx).unwrap();
        let ev = RankOneKernel::new(k);
        let pairs = vec![(vec![0.0], vec![0.0]), (vec![1.0], vec![0.5]), (vec![-1.5], vec![1.2])];
        let out = check_reproducing(&ev, &rule, c, &pairs).unwrap();
        assert!(out.pass, "{out:?}");
    }
}
