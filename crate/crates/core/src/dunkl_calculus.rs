//! Dunkl operators acting exactly on polynomials.
//!
//! T_ξ p = ∂_ξ p + Σ_{α∈R_+} k(α)⟨α,ξ⟩ (p − p∘σ_α)/⟨α,x⟩, with the quotient
//! computed by exact division. Δ_k is Σ T_i² over the standard basis.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{DunklError, Result};
use crate::linalg::Matrix;
use crate::polynomial::{monomials_of_degree, Monomial, MultiPoly};
use crate::random::{self, TestRng};
use crate::report::CheckOutcome;
use crate::root_system::RootSystemContext;
use crate::scalar::{Rational, Scalar};

/// (p − p∘σ_α)/⟨α,x⟩ for every positive root (zero where k(α) = 0).
fn difference_quotients<S: Scalar>(ctx: &RootSystemContext<S>, p: &MultiPoly<S>) -> Result<Vec<Option<MultiPoly<S>>>> {
    let scale = p.max_abs_coeff();
    ctx.positive()
        .iter()
        .map(|pr| {
            if pr.k.is_zero() {
                return Ok(None);
            }
            let diff = p.sub(&p.compose_linear(&pr.reflection)).chop(scale);
            if diff.is_zero() {
                return Ok(None);
            }
            diff.divide_by_linear(pr.root.coords()).map(Some)
        })
        .collect()
}

/// T_ξ p.
pub fn apply_t<S: Scalar>(ctx: &RootSystemContext<S>, xi: &[S], p: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    check_dim(ctx, p)?;
    if xi.len() != ctx.dim() {
        return Err(DunklError::DimensionMismatch {
            expected: ctx.dim(),
            got: xi.len(),
        });
    }
    let mut out = p.partial(xi);
    for (pr, q) in ctx.positive().iter().zip(difference_quotients(ctx, p)?) {
        if let Some(q) = q {
            let c = pr.k.clone() * pr.root.pair(xi);
            if !c.is_zero() {
                out = out.add(&q.scale(&c));
            }
        }
    }
    Ok(out)
}

/// T_i p = T_{e_i} p.
pub fn apply_t_axis<S: Scalar>(ctx: &RootSystemContext<S>, i: usize, p: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    Ok(dunkl_gradient_with(ctx, p, Some(i))?.swap_remove(0))
}

/// (T_1 p, …, T_N p), sharing the difference quotients.
pub fn dunkl_gradient<S: Scalar>(ctx: &RootSystemContext<S>, p: &MultiPoly<S>) -> Result<Vec<MultiPoly<S>>> {
    dunkl_gradient_with(ctx, p, None)
}

fn dunkl_gradient_with<S: Scalar>(
    ctx: &RootSystemContext<S>,
    p: &MultiPoly<S>,
    only: Option<usize>,
) -> Result<Vec<MultiPoly<S>>> {
    check_dim(ctx, p)?;
    let quotients = difference_quotients(ctx, p)?;
    let axes: Vec<usize> = match only {
        Some(i) => vec![i],
        None => (0..ctx.dim()).collect(),
    };
    Ok(axes
        .into_iter()
        .map(|i| {
            let mut out = p.partial_axis(i);
            for (pr, q) in ctx.positive().iter().zip(&quotients) {
                if let Some(q) = q {
                    let a = &pr.root.coords()[i];
                    if !a.is_zero() {
                        out = out.add(&q.scale(&(pr.k.clone() * a.clone())));
                    }
                }
            }
            out
        })
        .collect())
}

/// Δ_k p = Σ_i T_i² p.
pub fn apply_delta_k<S: Scalar>(ctx: &RootSystemContext<S>, p: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    let grad = dunkl_gradient(ctx, p)?;
    let mut out = MultiPoly::zero(ctx.dim());
    for (i, g) in grad.iter().enumerate() {
        out = out.add(&apply_t_axis(ctx, i, g)?);
    }
    Ok(out)
}

/// p(T) q: each x_i replaced by T_i, monomials expanded by memoized
/// repeated application.
pub fn apply_p_of_t<S: Scalar>(ctx: &RootSystemContext<S>, p: &MultiPoly<S>, q: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    check_dim(ctx, p)?;
    let mut cache: HashMap<Monomial, MultiPoly<S>> = HashMap::new();
    cache.insert(Monomial::one(ctx.dim()), q.clone());
    let mut out = MultiPoly::zero(ctx.dim());
    for (m, c) in p.terms() {
        let v = t_power(ctx, m, &mut cache)?;
        out = out.add(&v.scale(c));
    }
    Ok(out)
}

fn t_power<S: Scalar>(
    ctx: &RootSystemContext<S>,
    m: &Monomial,
    cache: &mut HashMap<Monomial, MultiPoly<S>>,
) -> Result<MultiPoly<S>> {
    if let Some(v) = cache.get(m) {
        return Ok(v.clone());
    }
    let i = m
        .exponents()
        .iter()
        .rposition(|&e| e > 0)
        .expect("constant monomial is cached");
    let prev = t_power(ctx, &m.lower(i).unwrap(), cache)?;
    let v = if prev.is_zero() {
        prev
    } else {
        apply_t_axis(ctx, i, &prev)?
    };
    cache.insert(m.clone(), v.clone());
    Ok(v)
}

/// [p,q]_k = (p(T)q)(0). Only equal-degree components contribute.
pub fn fischer_pair<S: Scalar>(ctx: &RootSystemContext<S>, p: &MultiPoly<S>, q: &MultiPoly<S>) -> Result<S> {
    check_dim(ctx, q)?;
    let mut acc = S::zero();
    for slice in p.homogeneous_slices() {
        let qn = q.homogeneous_part(slice.degree);
        if qn.is_zero() {
            continue;
        }
        let v = apply_p_of_t(ctx, &slice.poly, &qn)?;
        acc = acc + v.coeff(&Monomial::one(ctx.dim()));
    }
    Ok(acc)
}

/// e^{sign·Δ_k/2} p = Σ_j (sign/2)^j/j! Δ_k^j p (a finite sum on polynomials).
pub fn exp_half_delta<S: Scalar>(ctx: &RootSystemContext<S>, p: &MultiPoly<S>, sign: i64) -> Result<MultiPoly<S>> {
    let half = S::from_ratio(sign.signum(), 2);
    let mut term = p.clone();
    let mut out = p.clone();
    let mut j = 0i64;
    loop {
        j += 1;
        term = apply_delta_k(ctx, &term)?;
        if term.is_zero() {
            break;
        }
        term = term.scale(&(half.clone() / S::from_i64(j)));
        out = out.add(&term);
    }
    Ok(out)
}

/// e^{−Δ_k/2} p.
pub fn exp_half_neg_delta<S: Scalar>(ctx: &RootSystemContext<S>, p: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    exp_half_delta(ctx, p, -1)
}

/// The sl(2) triple E = |x|²/2, F = −Δ_k/2, H = ρ + γ + N/2.
pub fn sl2_e<S: Scalar>(ctx: &RootSystemContext<S>, p: &MultiPoly<S>) -> MultiPoly<S> {
    MultiPoly::norm_squared(ctx.dim()).mul(p).scale(&S::from_ratio(1, 2))
}

pub fn sl2_f<S: Scalar>(ctx: &RootSystemContext<S>, p: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    Ok(apply_delta_k(ctx, p)?.scale(&S::from_ratio(-1, 2)))
}

pub fn sl2_h<S: Scalar>(ctx: &RootSystemContext<S>, p: &MultiPoly<S>) -> MultiPoly<S> {
    p.euler().add(&p.scale(&h_shift(ctx)))
}

fn h_shift<S: Scalar>(ctx: &RootSystemContext<S>) -> S {
    S::from_rational(&(ctx.gamma().clone() + Rational::new((ctx.dim() as i64).into(), 2.into())))
}

/// Composable linear operator on polynomials.
#[derive(Clone, Debug)]
pub enum OperatorExpr<S: Scalar> {
    Identity,
    T(Vec<S>),
    DeltaK,
    PofT(MultiPoly<S>),
    /// e^{±Δ_k/2}; the payload is the sign.
    ExpHalfDeltaK(i64),
    Euler,
    MultiplyBy(MultiPoly<S>),
    GroupAct(Matrix<S>),
    /// Applied right to left, like composition of maps.
    Compose(Vec<OperatorExpr<S>>),
    Scale(S),
    Sum(Vec<OperatorExpr<S>>),
}

impl<S: Scalar> OperatorExpr<S> {
    pub fn apply(&self, ctx: &RootSystemContext<S>, p: &MultiPoly<S>) -> Result<MultiPoly<S>> {
        Ok(match self {
            OperatorExpr::Identity => p.clone(),
            OperatorExpr::T(xi) => apply_t(ctx, xi, p)?,
            OperatorExpr::DeltaK => apply_delta_k(ctx, p)?,
            OperatorExpr::PofT(q) => apply_p_of_t(ctx, q, p)?,
            OperatorExpr::ExpHalfDeltaK(sign) => exp_half_delta(ctx, p, *sign)?,
            OperatorExpr::Euler => p.euler(),
            OperatorExpr::MultiplyBy(q) => q.mul(p),
            OperatorExpr::GroupAct(g) => p.act(g),
            OperatorExpr::Compose(ops) => {
                let mut v = p.clone();
                for op in ops.iter().rev() {
                    v = op.apply(ctx, &v)?;
                }
                v
            }
            OperatorExpr::Scale(c) => p.scale(c),
            OperatorExpr::Sum(ops) => {
                let mut v = MultiPoly::zero(p.dim());
                for op in ops {
                    v = v.add(&op.apply(ctx, p)?);
                }
                v
            }
        })
    }
}

impl OperatorExpr<Rational> {
    /// Parses `op1 * op2 * …` (composition, rightmost first) where each factor
    /// is one of `T(e2)`, `T(1,-1/2,0)`, `Delta`, `exp(-Delta/2)`,
    /// `exp(+Delta/2)`, `Euler`, `H`, `E`, `F`, `P(<poly>)` for p(T),
    /// `M(<poly>)` for multiplication, or `id`.
    pub fn parse(text: &str, ctx: &RootSystemContext<Rational>) -> Result<Self> {
        let dim = ctx.dim();
        let factors = split_top_level(text, '*');
        let mut ops = Vec::new();
        for f in factors {
            let f = f.trim();
            let inner = |prefix: &str| -> Option<&str> {
                f.strip_prefix(prefix).and_then(|r| r.strip_suffix(')'))
            };
            let op = if f == "id" || f == "1" {
                OperatorExpr::Identity
            } else if f == "Delta" || f == "Delta_k" {
                OperatorExpr::DeltaK
            } else if f == "exp(-Delta/2)" {
                OperatorExpr::ExpHalfDeltaK(-1)
            } else if f == "exp(+Delta/2)" || f == "exp(Delta/2)" {
                OperatorExpr::ExpHalfDeltaK(1)
            } else if f == "Euler" || f == "rho" {
                OperatorExpr::Euler
            } else if f == "E" {
                OperatorExpr::MultiplyBy(MultiPoly::norm_squared(dim).scale(&Rational::new(1.into(), 2.into())))
            } else if f == "F" {
                OperatorExpr::Compose(vec![
                    OperatorExpr::Scale(Rational::new((-1).into(), 2.into())),
                    OperatorExpr::DeltaK,
                ])
            } else if f == "H" {
                OperatorExpr::Sum(vec![OperatorExpr::Euler, OperatorExpr::Scale(h_shift(ctx))])
            } else if let Some(arg) = inner("T(") {
                OperatorExpr::T(parse_direction(arg, dim)?)
            } else if let Some(arg) = inner("P(") {
                OperatorExpr::PofT(MultiPoly::parse(arg, dim)?)
            } else if let Some(arg) = inner("M(") {
                OperatorExpr::MultiplyBy(MultiPoly::parse(arg, dim)?)
            } else {
                return Err(DunklError::Parse(format!("unknown operator '{f}'")));
            };
            ops.push(op);
        }
        Ok(match ops.len() {
            0 => return Err(DunklError::Parse("empty operator".into())),
            1 => ops.pop().unwrap(),
            _ => OperatorExpr::Compose(ops),
        })
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// `e3` or a comma-separated rational vector.
pub fn parse_direction(arg: &str, dim: usize) -> Result<Vec<Rational>> {
    let arg = arg.trim();
    if let Some(idx) = arg.strip_prefix('e') {
        let i: usize = idx
            .parse()
            .map_err(|_| DunklError::Parse(format!("bad basis vector '{arg}'")))?;
        if i == 0 || i > dim {
            return Err(DunklError::Parse(format!("basis index {i} out of range 1..={dim}")));
        }
        let mut v = vec![Rational::from_integer(0.into()); dim];
        v[i - 1] = Rational::from_integer(1.into());
        return Ok(v);
    }
    let v = arg
        .split(',')
        .map(crate::scalar::parse_rational)
        .collect::<Result<Vec<_>>>()?;
    if v.len() != dim {
        return Err(DunklError::DimensionMismatch {
            expected: dim,
            got: v.len(),
        });
    }
    Ok(v)
}

fn check_dim<S: Scalar>(ctx: &RootSystemContext<S>, p: &MultiPoly<S>) -> Result<()> {
    if p.dim() != ctx.dim() {
        return Err(DunklError::DimensionMismatch {
            expected: ctx.dim(),
            got: p.dim(),
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// identity checks

/// Compares two polynomials: exact equality for rationals, relative 1e-9 for
/// floats. Returns the scaled discrepancy on failure.
fn mismatch<S: Scalar>(lhs: &MultiPoly<S>, rhs: &MultiPoly<S>) -> Option<f64> {
    if lhs.approx_eq(rhs) {
        None
    } else {
        let scale = lhs.max_abs_coeff().max(rhs.max_abs_coeff()).max(1.0);
        Some(lhs.sub(rhs).max_abs_coeff() / scale)
    }
}

/// Runs `case` over all monomials of degree ≤ cap in parallel; the first
/// failing monomial (in basis order) is reported.
fn over_monomials<S: Scalar>(
    dim: usize,
    cap: usize,
    case: impl Fn(&MultiPoly<S>) -> Result<Option<String>> + Sync,
) -> (Option<String>, usize) {
    let monos: Vec<Monomial> = (0..=cap).flat_map(|n| monomials_of_degree(dim, n)).collect();
    let results: Vec<Option<String>> = monos
        .par_iter()
        .map(|m| {
            let p = MultiPoly::monomial(m.clone(), S::one());
            match case(&p) {
                Ok(None) => None,
                Ok(Some(msg)) => Some(format!("at {m:?}: {msg}")),
                Err(e) => Some(format!("at {m:?}: {e}")),
            }
        })
        .collect();
    (results.into_iter().flatten().next(), monos.len())
}

fn describe<S: Scalar>(l: &MultiPoly<S>, r: &MultiPoly<S>) -> Option<String> {
    mismatch(l, r).map(|e| format!("lhs {l:?} != rhs {r:?} (rel {e:.2e})"))
}

/// T_ξ T_η p = T_η T_ξ p on all monomials up to `cap`.
pub fn check_commutativity<S: Scalar>(ctx: &RootSystemContext<S>, pairs: &[(Vec<S>, Vec<S>)], cap: usize) -> CheckOutcome {
    let (fail, n) = over_monomials(ctx.dim(), cap, |p| {
        for (xi, eta) in pairs {
            let l = apply_t(ctx, xi, &apply_t(ctx, eta, p)?)?;
            let r = apply_t(ctx, eta, &apply_t(ctx, xi, p)?)?;
            if let Some(m) = describe(&l, &r) {
                return Ok(Some(m));
            }
        }
        Ok(None)
    });
    CheckOutcome::exact(
        "commutativity",
        "T_ξ T_η = T_η T_ξ",
        fail,
        n * pairs.len(),
    )
}

/// g ∘ T_ξ ∘ g⁻¹ = T_{gξ} for random (g, ξ, p).
pub fn check_equivariance<S: Scalar>(ctx: &RootSystemContext<S>, rng: &mut TestRng, count: usize, max_degree: usize) -> CheckOutcome {
    use rand::Rng;
    let mut fail = None;
    for _ in 0..count {
        let g = &ctx.group()[rng.gen_range(0..ctx.group().len())];
        let xi: Vec<S> = random::direction(rng, ctx.dim());
        let p: MultiPoly<S> = random::polynomial(rng, ctx.dim(), max_degree, 4);
        let run = || -> Result<Option<String>> {
            let ginv = g.inverse();
            let l = apply_t(ctx, &xi, &p.act(&ginv.matrix))?.act(&g.matrix);
            let r = apply_t(ctx, &g.apply(&xi), &p)?;
            Ok(describe(&l, &r))
        };
        if let Some(m) = run().unwrap_or_else(|e| Some(e.to_string())) {
            fail = Some(format!("p = {p:?}: {m}"));
            break;
        }
    }
    CheckOutcome::exact("equivariance", "g∘T_ξ∘g⁻¹ = T_{gξ}", fail, count)
}

/// G-invariant polynomials: 1, |x|², and group averages of low-degree
/// monomials.
pub fn invariant_polynomials<S: Scalar>(ctx: &RootSystemContext<S>, max_degree: usize) -> Vec<MultiPoly<S>> {
    let dim = ctx.dim();
    let mut out = vec![MultiPoly::one(dim), MultiPoly::norm_squared(dim)];
    let order = S::from_i64(ctx.group().len() as i64);
    for n in 3..=max_degree {
        for m in monomials_of_degree(dim, n) {
            let p = MultiPoly::monomial(m, S::one());
            let mut avg = MultiPoly::zero(dim);
            for g in ctx.group() {
                avg = avg.add(&p.act(&g.matrix));
            }
            let avg = avg.scale(&(S::one() / order.clone()));
            if !avg.chop(1.0).is_zero() && !out.iter().any(|q| q.approx_eq(&avg)) {
                out.push(avg);
                break;
            }
        }
    }
    out
}

/// T_ξ(fg) = T_ξ(f) g + f T_ξ(g) for G-invariant f.
pub fn check_product_rule<S: Scalar>(ctx: &RootSystemContext<S>, rng: &mut TestRng, count: usize, max_degree: usize) -> CheckOutcome {
    let invariants = invariant_polynomials(ctx, 4);
    let mut fail = None;
    let mut cases = 0;
    'outer: for f in &invariants {
        for _ in 0..count {
            let g: MultiPoly<S> = random::polynomial(rng, ctx.dim(), max_degree, 4);
            let xi: Vec<S> = random::direction(rng, ctx.dim());
            let run = || -> Result<Option<String>> {
                let l = apply_t(ctx, &xi, &f.mul(&g))?;
                let r = apply_t(ctx, &xi, f)?.mul(&g).add(&f.mul(&apply_t(ctx, &xi, &g)?));
                Ok(describe(&l, &r))
            };
            cases += 1;
            if let Some(m) = run().unwrap_or_else(|e| Some(e.to_string())) {
                fail = Some(format!("f = {f:?}, g = {g:?}: {m}"));
                break 'outer;
            }
        }
    }
    CheckOutcome::exact("product-rule", "T_ξ(fg) = T_ξ(f)g + fT_ξ(g), f invariant", fail, cases)
}

/// δ_α f = ⟨∇f,α⟩/⟨α,x⟩ − (|α|²/2)(f − f∘σ_α)/⟨α,x⟩², computed as one exact
/// quotient by ⟨α,x⟩².
pub fn delta_alpha<S: Scalar>(ctx: &RootSystemContext<S>, root_index: usize, f: &MultiPoly<S>) -> Result<MultiPoly<S>> {
    let pr = &ctx.positive()[root_index];
    let alpha = pr.root.coords();
    let lin = MultiPoly::linear(alpha);
    let num = lin
        .mul(&f.partial(alpha))
        .sub(&f.sub(&f.compose_linear(&pr.reflection)).scale(&(pr.root.norm_sq().clone() / S::from_i64(2))));
    num.chop(f.max_abs_coeff())
        .divide_by_linear(alpha)?
        .divide_by_linear(alpha)
}

/// Σ T_i² = Δ + 2 Σ k(α) δ_α.
pub fn check_laplacian_form<S: Scalar>(ctx: &RootSystemContext<S>, cap: usize) -> CheckOutcome {
    let (fail, n) = over_monomials(ctx.dim(), cap, |p| {
        let l = apply_delta_k(ctx, p)?;
        let mut r = p.laplacian();
        for (i, pr) in ctx.positive().iter().enumerate() {
            if pr.k.is_zero() {
                continue;
            }
            r = r.add(&delta_alpha(ctx, i, p)?.scale(&(S::from_i64(2) * pr.k.clone())));
        }
        Ok(describe(&l, &r))
    });
    CheckOutcome::exact("laplacian-form", "Σ T_i² = Δ + 2Σ k(α)δ_α", fail, n)
}

/// g ∘ Δ_k = Δ_k ∘ g for every group element.
pub fn check_delta_invariance<S: Scalar>(ctx: &RootSystemContext<S>, cap: usize) -> CheckOutcome {
    let (fail, n) = over_monomials(ctx.dim(), cap, |p| {
        let dp = apply_delta_k(ctx, p)?;
        for g in ctx.group() {
            let l = dp.act(&g.matrix);
            let r = apply_delta_k(ctx, &p.act(&g.matrix))?;
            if let Some(m) = describe(&l, &r) {
                return Ok(Some(m));
            }
        }
        Ok(None)
    });
    CheckOutcome::exact("laplacian-invariance", "g∘Δ_k = Δ_k∘g", fail, n * ctx.group().len())
}

/// [x_i p, q]_k = [p, T_i q]_k, symmetry [p,q]_k = [q,p]_k, and
/// [g·p, g·q]_k = [p,q]_k on random pairs.
pub fn check_pairing<S: Scalar>(ctx: &RootSystemContext<S>, rng: &mut TestRng, count: usize, max_degree: usize) -> Vec<CheckOutcome> {
    use rand::Rng;
    let dim = ctx.dim();
    let mut adj = None;
    let mut sym = None;
    let mut inv = None;
    let eq = |a: &S, b: &S| a.approx_eq(b, a.to_f64().abs().max(b.to_f64().abs()));
    for _ in 0..count {
        let p: MultiPoly<S> = random::polynomial(rng, dim, max_degree, 4);
        let q: MultiPoly<S> = random::polynomial(rng, dim, max_degree + 1, 5);
        let i = rng.gen_range(0..dim);
        let g = ctx.group()[rng.gen_range(0..ctx.group().len())].clone();
        let run = || -> Result<[Option<String>; 3]> {
            let xp = MultiPoly::var(dim, i).mul(&p);
            let a = fischer_pair(ctx, &xp, &q)?;
            let b = fischer_pair(ctx, &p, &apply_t_axis(ctx, i, &q)?)?;
            let pq = fischer_pair(ctx, &p, &q)?;
            let qp = fischer_pair(ctx, &q, &p)?;
            let gpq = fischer_pair(ctx, &p.act(&g.matrix), &q.act(&g.matrix))?;
            Ok([
                (!eq(&a, &b)).then(|| format!("i={i}, p={p:?}, q={q:?}: {a} vs {b}")),
                (!eq(&pq, &qp)).then(|| format!("p={p:?}, q={q:?}: {pq} vs {qp}")),
                (!eq(&pq, &gpq)).then(|| format!("p={p:?}, q={q:?}: {pq} vs {gpq}")),
            ])
        };
        match run() {
            Ok([a, s, g]) => {
                adj = adj.or(a);
                sym = sym.or(s);
                inv = inv.or(g);
            }
            Err(e) => adj = adj.or(Some(e.to_string())),
        }
    }
    vec![
        CheckOutcome::exact("pairing-adjoint", "[x_i p, q]_k = [p, T_i q]_k", adj, count),
        CheckOutcome::exact("pairing-symmetric", "[p,q]_k = [q,p]_k", sym, count),
        CheckOutcome::exact("pairing-invariant", "[g·p, g·q]_k = [p,q]_k", inv, count),
    ]
}

/// [H,E] = 2E, [H,F] = −2F, [E,F] = H on all monomials up to `cap`.
pub fn check_sl2<S: Scalar>(ctx: &RootSystemContext<S>, cap: usize) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let (f1, n) = over_monomials(ctx.dim(), cap, |p| {
        let l = sl2_h(ctx, &sl2_e(ctx, p)).sub(&sl2_e(ctx, &sl2_h(ctx, p)));
        Ok(describe(&l, &sl2_e(ctx, p).scale(&S::from_i64(2))))
    });
    out.push(CheckOutcome::exact("sl2-HE", "[H,E] = 2E", f1, n));
    let (f2, n) = over_monomials(ctx.dim(), cap, |p| {
        let l = sl2_h(ctx, &sl2_f(ctx, p)?).sub(&sl2_f(ctx, &sl2_h(ctx, p))?);
        Ok(describe(&l, &sl2_f(ctx, p)?.scale(&S::from_i64(-2))))
    });
    out.push(CheckOutcome::exact("sl2-HF", "[H,F] = -2F", f2, n));
    let (f3, n) = over_monomials(ctx.dim(), cap, |p| {
        let l = sl2_e(ctx, &sl2_f(ctx, p)?).sub(&sl2_f(ctx, &sl2_e(ctx, p))?);
        Ok(describe(&l, &sl2_h(ctx, p)))
    });
    out.push(CheckOutcome::exact("sl2-EF", "[E,F] = H", f3, n));
    out
}

/// [x_i, Δ_k/2] = −T_i on all monomials up to `cap`.
pub fn check_commutator_xi_delta<S: Scalar>(ctx: &RootSystemContext<S>, cap: usize) -> CheckOutcome {
    let dim = ctx.dim();
    let half = S::from_ratio(1, 2);
    let (fail, n) = over_monomials(dim, cap, |p| {
        let dp = apply_delta_k(ctx, p)?;
        for i in 0..dim {
            let xi = MultiPoly::var(dim, i);
            let l = xi
                .mul(&dp)
                .sub(&apply_delta_k(ctx, &xi.mul(p))?)
                .scale(&half);
            let r = apply_t_axis(ctx, i, p)?.neg();
            if let Some(m) = describe(&l, &r) {
                return Ok(Some(format!("i = {}: {m}", i + 1)));
            }
        }
        Ok(None)
    });
    CheckOutcome::exact("commutator-x-delta", "[x_i, Δ_k/2] = -T_i", fail, n * dim)
}

/// For p = q²|x − x₀|² ≥ 0 with p(x₀) = 0 at a regular point x₀:
/// Δ_k p(x₀) ≥ 0.
pub fn check_minimum_principle<S: Scalar>(ctx: &RootSystemContext<S>, rng: &mut TestRng, count: usize) -> CheckOutcome {
    let dim = ctx.dim();
    let mut worst = f64::INFINITY;
    let mut witness = String::new();
    let mut error = None;
    let mut done = 0;
    while done < count {
        let x0: Vec<S> = random::direction(rng, dim);
        if ctx.positive().iter().any(|pr| pr.root.pair(&x0).is_zero()) {
            continue;
        }
        let q: MultiPoly<S> = random::polynomial(rng, dim, 2, 3);
        let mut dist = MultiPoly::zero(dim);
        for (i, c) in x0.iter().enumerate() {
            let d = MultiPoly::var(dim, i).sub(&MultiPoly::constant(dim, c.clone()));
            dist = dist.add(&d.mul(&d));
        }
        let p = q.mul(&q).mul(&dist);
        match apply_delta_k(ctx, &p).and_then(|d| d.eval(&x0)) {
            Ok(v) => {
                let v = v.to_f64();
                if v < worst {
                    worst = v;
                    witness = format!("x0 = {:?}, q = {q:?}", x0.iter().map(|c| c.to_string()).collect::<Vec<_>>());
                }
            }
            Err(e) => error = Some(e.to_string()),
        }
        done += 1;
    }
    let pass = error.is_none() && worst >= -1e-12;
    CheckOutcome::flag(
        "minimum-principle",
        "p ≥ 0, p(x₀) = 0 ⇒ Δ_k p(x₀) ≥ 0",
        pass,
        error.unwrap_or_else(|| format!("{count} points, min Δ_k p(x₀) = {worst:.3e} ({witness})")),
    )
}

/// Direction pairs for the commutativity battery.
pub fn random_direction_pairs<S: Scalar>(rng: &mut TestRng, dim: usize, count: usize) -> Vec<(Vec<S>, Vec<S>)> {
    (0..count)
        .map(|_| (random::direction(rng, dim), random::direction(rng, dim)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{ExactContext, RootSystem, RootSystemKind};
    use crate::scalar::{rat, rat_int};

    fn rank_one(k: Rational) -> ExactContext {
        ExactContext::new(RootSystem::standard(RootSystemKind::RankOne, 1).unwrap(), &[k]).unwrap()
    }

    fn x_pow(n: u16) -> MultiPoly<Rational> {
        MultiPoly::monomial(Monomial::from_exponents(&[n]), rat_int(1))
    }

    #[test]
    fn rank_one_t_examples() {
        let k = rat(3, 7);
        let ctx = rank_one(k.clone());
        let one = [rat_int(1)];
        let t1 = apply_t(&ctx, &one, &x_pow(1)).unwrap();
        assert_eq!(t1, MultiPoly::constant(1, rat_int(1) + rat_int(2) * k.clone()));
        assert_eq!(apply_t(&ctx, &one, &x_pow(2)).unwrap(), x_pow(1).scale(&rat_int(2)));
        let t3 = apply_t(&ctx, &one, &x_pow(3)).unwrap();
        assert_eq!(t3, x_pow(2).scale(&(rat_int(3) + rat_int(2) * k)));
    }

    #[test]
    fn rank_one_laplacian_and_pairing() {
        let k = rat(1, 2);
        let ctx = rank_one(k.clone());
        let two_k1 = rat_int(1) + rat_int(2) * k;
        assert_eq!(
            apply_delta_k(&ctx, &x_pow(2)).unwrap(),
            MultiPoly::constant(1, rat_int(2) * two_k1.clone())
        );
        assert_eq!(fischer_pair(&ctx, &x_pow(1), &x_pow(1)).unwrap(), two_k1.clone());
        assert_eq!(fischer_pair(&ctx, &x_pow(2), &x_pow(2)).unwrap(), rat_int(2) * two_k1.clone());
        assert_eq!(fischer_pair(&ctx, &x_pow(2), &x_pow(3)).unwrap(), rat_int(0));
        let e = exp_half_neg_delta(&ctx, &x_pow(2)).unwrap();
        assert_eq!(e, x_pow(2).sub(&MultiPoly::constant(1, two_k1)));
        assert_eq!(exp_half_delta(&ctx, &e, 1).unwrap(), x_pow(2));
    }

    #[test]
    fn classical_laplacian_at_k_zero() {
        let ctx = ExactContext::new(RootSystem::standard(RootSystemKind::A, 3).unwrap(), &[rat_int(0)]).unwrap();
        let r2 = MultiPoly::norm_squared(3);
        assert_eq!(apply_delta_k(&ctx, &r2).unwrap(), MultiPoly::constant(3, rat_int(6)));
        assert_eq!(apply_p_of_t(&ctx, &r2, &r2.mul(&r2)).unwrap(), apply_delta_k(&ctx, &r2.mul(&r2)).unwrap());
    }

    #[test]
    fn p_of_t_generators() {
        let ctx = ExactContext::new(RootSystem::standard(RootSystemKind::B, 2).unwrap(), &[rat(1, 2), rat_int(1)]).unwrap();
        let q = MultiPoly::parse("x1^3 x2 - 2 x2^2 + x1", 2).unwrap();
        let x1 = MultiPoly::var(2, 0);
        assert_eq!(apply_p_of_t(&ctx, &x1, &q).unwrap(), apply_t_axis(&ctx, 0, &q).unwrap());
        assert_eq!(
            apply_p_of_t(&ctx, &MultiPoly::norm_squared(2), &q).unwrap(),
            apply_delta_k(&ctx, &q).unwrap()
        );
        assert_eq!(apply_p_of_t(&ctx, &MultiPoly::one(2), &q).unwrap(), q);
    }

    #[test]
    fn sl2_on_constants() {
        let ctx = ExactContext::new(RootSystem::standard(RootSystemKind::A, 3).unwrap(), &[rat_int(1)]).unwrap();
        let one = MultiPoly::one(3);
        let ef = sl2_e(&ctx, &sl2_f(&ctx, &one).unwrap()).sub(&sl2_f(&ctx, &sl2_e(&ctx, &one)).unwrap());
        assert_eq!(ef, MultiPoly::constant(3, rat_int(3) + rat(3, 2)));
        for c in check_sl2(&ctx, 3) {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn rank_one_commutator_example() {
        let ctx = rank_one(rat(2, 3));
        assert!(check_commutator_xi_delta(&ctx, 5).pass);
        let x = x_pow(1);
        let l = x
            .mul(&apply_delta_k(&ctx, &x).unwrap())
            .sub(&apply_delta_k(&ctx, &x.mul(&x)).unwrap())
            .scale(&rat(1, 2));
        assert_eq!(l, MultiPoly::constant(1, -(rat_int(1) + rat(4, 3))));
    }

    #[test]
    fn operator_parse() {
        let ctx = ExactContext::new(RootSystem::standard(RootSystemKind::A, 3).unwrap(), &[rat(1, 2)]).unwrap();
        let p = MultiPoly::parse("x1^3", 3).unwrap();
        let op = OperatorExpr::parse("T(e1)", &ctx).unwrap();
        assert_eq!(op.apply(&ctx, &p).unwrap(), apply_t_axis(&ctx, 0, &p).unwrap());
        let op = OperatorExpr::parse("T(e1) * T(0,1,-1)", &ctx).unwrap();
        let direct = apply_t_axis(&ctx, 0, &apply_t(&ctx, &[rat_int(0), rat_int(1), rat_int(-1)], &p).unwrap()).unwrap();
        assert_eq!(op.apply(&ctx, &p).unwrap(), direct);
        assert!(OperatorExpr::parse("Q", &ctx).is_err());
        let op = OperatorExpr::parse("P(x1^2 + x2^2 + x3^2)", &ctx).unwrap();
        assert_eq!(op.apply(&ctx, &p).unwrap(), apply_delta_k(&ctx, &p).unwrap());
    }
}
