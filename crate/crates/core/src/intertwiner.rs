//! The intertwining operator V_k, built degree by degree.
//!
//! In degree n the image V_k q of every basis monomial q is the unique
//! solution in 𝒫_n of T_i(V_k q) = V_k(∂_i q), i = 1..N, whose right sides
//! are known from degree n − 1. The stacked system has N·dim 𝒫_{n−1} rows and
//! dim 𝒫_n unknowns; it is solved once per degree with all monomials as
//! right-hand sides, and every equation outside the pivot rows is checked.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::dunkl_calculus::{apply_t_axis, dunkl_gradient, fischer_pair};
use crate::error::{DunklError, Result};
use crate::linalg::{solve_full_column_rank, solve_square_f64, Matrix, SolveOutcome};
use crate::polynomial::{monomials_of_degree, Monomial, MultiPoly};
use crate::random::{self, TestRng};
use crate::report::CheckOutcome;
use crate::root_system::RootSystemContext;
use crate::scalar::{rat, Rational, Scalar};

/// How the per-degree systems are formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// T_i V_k q = V_k ∂_i q for all i (overdetermined, full column rank).
    Stacked,
    /// (n + Σ k(α)(1 − σ_α)) V_k q = Σ_i x_i V_k(∂_i q), the Euler form of
    /// the same equations (square, used for long f64 tables).
    Euler,
}

#[derive(Clone, Debug)]
pub struct IntertwinerTable<S> {
    dim: usize,
    construction: Construction,
    bases: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    /// `matrices[n]` has column j equal to the coefficients of V_k(bases[n][j]).
    matrices: Vec<Matrix<S>>,
}

impl<S: Scalar> IntertwinerTable<S> {
    pub fn build(ctx: &RootSystemContext<S>, cap: usize) -> Result<Self> {
        Self::build_with(ctx, cap, Construction::Stacked)
    }

    pub fn build_with(ctx: &RootSystemContext<S>, cap: usize, construction: Construction) -> Result<Self> {
        let dim = ctx.dim();
        let basis0 = vec![Monomial::one(dim)];
        let mut table = IntertwinerTable {
            dim,
            construction,
            index: vec![index_of(&basis0)],
            bases: vec![basis0],
            matrices: vec![Matrix::identity(1)],
        };
        table.extend(ctx, cap)?;
        Ok(table)
    }

    pub fn cap(&self) -> usize {
        self.matrices.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn basis(&self, n: usize) -> &[Monomial] {
        &self.bases[n]
    }

    pub fn matrix(&self, n: usize) -> &Matrix<S> {
        &self.matrices[n]
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m.degree())?.get(m).copied()
    }

    /// Adds degrees up to `cap`, reusing the ones already present.
    pub fn extend(&mut self, ctx: &RootSystemContext<S>, cap: usize) -> Result<()> {
        if ctx.dim() != self.dim {
            return Err(DunklError::DimensionMismatch {
                expected: self.dim,
                got: ctx.dim(),
            });
        }
        for n in self.matrices.len()..=cap {
            let basis = monomials_of_degree(self.dim, n);
            let m = match self.construction {
                Construction::Stacked => self.solve_stacked(ctx, n, &basis)?,
                Construction::Euler => self.solve_euler(ctx, n, &basis)?,
            };
            self.index.push(index_of(&basis));
            self.bases.push(basis);
            self.matrices.push(m);
        }
        Ok(())
    }

    /// V_k applied to x^{ν}, as a coefficient column in degree |ν|.
    fn column(&self, m: &Monomial) -> Vec<S> {
        let n = m.degree();
        self.matrices[n].column(self.index[n][m])
    }

    fn solve_stacked(&self, ctx: &RootSystemContext<S>, n: usize, basis: &[Monomial]) -> Result<Matrix<S>> {
        let dim = self.dim;
        let prev = &self.index[n - 1];
        let rows = dim * self.bases[n - 1].len();
        let d = basis.len();
        // column j of L holds (T_1 b_j, …, T_N b_j)
        let columns: Vec<Vec<MultiPoly<S>>> = basis
            .par_iter()
            .map(|b| dunkl_gradient(ctx, &MultiPoly::monomial(b.clone(), S::one())))
            .collect::<Result<_>>()?;
        let mut l = Matrix::zeros(rows, d);
        for (j, grad) in columns.iter().enumerate() {
            for (i, g) in grad.iter().enumerate() {
                for (m, c) in g.terms() {
                    l[(i * prev.len() + prev[m], j)] = c.clone();
                }
            }
        }
        let mut rhs = Matrix::zeros(rows, d);
        for (j, b) in basis.iter().enumerate() {
            for i in 0..dim {
                let e = b.exponents()[i];
                if e == 0 {
                    continue;
                }
                let lower = b.lower(i).unwrap();
                let col = self.column(&lower);
                let ef = S::from_i64(e as i64);
                for (r, v) in col.into_iter().enumerate() {
                    if !v.is_zero() {
                        rhs[(i * prev.len() + r, j)] = ef.clone() * v;
                    }
                }
            }
        }
        match solve_full_column_rank(&l, &rhs) {
            SolveOutcome::Solved(x) => Ok(x),
            SolveOutcome::RankDeficient { rank } => Err(DunklError::Singular {
                degree: n,
                rank,
                unknowns: d,
            }),
            SolveOutcome::Inconsistent { residual } => Err(DunklError::Inconsistent {
                degree: n,
                residual: format!("{residual:.3e}"),
            }),
        }
    }

    fn solve_euler(&self, ctx: &RootSystemContext<S>, n: usize, basis: &[Monomial]) -> Result<Matrix<S>> {
        let d = basis.len();
        let idx = index_of(basis);
        // A = n·I + Σ k(α)(I − S_α), S_α the matrix of p ↦ p∘σ_α
        let mut a: Matrix<S> = Matrix::identity(d);
        let mut diag = S::from_i64(n as i64);
        for pr in ctx.positive() {
            diag = diag + pr.k.clone();
        }
        for j in 0..d {
            a[(j, j)] = diag.clone();
        }
        for pr in ctx.positive() {
            if pr.k.is_zero() {
                continue;
            }
            for (j, b) in basis.iter().enumerate() {
                let img = MultiPoly::monomial(b.clone(), S::one()).compose_linear(&pr.reflection);
                for (m, c) in img.terms() {
                    let r = idx[m];
                    a[(r, j)] = a[(r, j)].clone() - pr.k.clone() * c.clone();
                }
            }
        }
        let prev_basis = &self.bases[n - 1];
        let mut rhs: Matrix<S> = Matrix::zeros(d, d);
        for (j, b) in basis.iter().enumerate() {
            for i in 0..self.dim {
                let e = b.exponents()[i];
                if e == 0 {
                    continue;
                }
                let col = self.column(&b.lower(i).unwrap());
                let ef = S::from_i64(e as i64);
                for (r, v) in col.into_iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let target = idx[&prev_basis[r].raise(i)];
                    rhs[(target, j)] = rhs[(target, j)].clone() + ef.clone() * v;
                }
            }
        }
        if S::EXACT {
            match solve_full_column_rank(&a, &rhs) {
                SolveOutcome::Solved(x) => Ok(x),
                SolveOutcome::RankDeficient { rank } => Err(DunklError::Singular {
                    degree: n,
                    rank,
                    unknowns: d,
                }),
                SolveOutcome::Inconsistent { residual } => Err(DunklError::Inconsistent {
                    degree: n,
                    residual: format!("{residual:.3e}"),
                }),
            }
        } else {
            let x = solve_square_f64(&a.to_f64(), &rhs.to_f64()).ok_or(DunklError::Singular {
                degree: n,
                rank: 0,
                unknowns: d,
            })?;
            let mut out = Matrix::zeros(d, d);
            for i in 0..d {
                for j in 0..d {
                    out[(i, j)] = S::from_f64(x[(i, j)]);
                }
            }
            Ok(out)
        }
    }

    /// V_k p, slice by slice.
    pub fn apply(&self, p: &MultiPoly<S>) -> Result<MultiPoly<S>> {
        if p.dim() != self.dim {
            return Err(DunklError::DimensionMismatch {
                expected: self.dim,
                got: p.dim(),
            });
        }
        let mut out = MultiPoly::zero(self.dim);
        for (m, c) in p.terms() {
            let n = m.degree();
            if n > self.cap() {
                return Err(DunklError::DegreeOverflow { degree: n, cap: self.cap() });
            }
            for (r, v) in self.column(m).into_iter().enumerate() {
                if !v.is_zero() {
                    out.add_term(self.bases[n][r].clone(), c.clone() * v);
                }
            }
        }
        Ok(out)
    }

    /// Degree-n kernel coefficients K[μ][ν] = (V_n)_{μν}/ν!, so that
    /// E^{(n)}(x,y) = Σ K[μ][ν] x^μ y^ν.
    pub fn kernel_coefficients(&self, n: usize) -> Matrix<S> {
        let v = &self.matrices[n];
        let d = v.rows();
        let mut k = Matrix::zeros(d, d);
        for (j, nu) in self.bases[n].iter().enumerate() {
            let f = S::from_rational(&Rational::from_integer(nu.factorial()));
            for i in 0..d {
                if !v[(i, j)].is_zero() {
                    k[(i, j)] = v[(i, j)].clone() / f.clone();
                }
            }
        }
        k
    }
}

fn index_of(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

/// Rank-one closed form: V_k x^m = c_m x^m with c_{2n} = (1/2)_n/(k+1/2)_n and
/// c_{2n+1} = (1/2)_{n+1}/(k+1/2)_{n+1}.
pub fn rank_one_coefficient(k: &Rational, m: usize) -> Rational {
    let n = if m % 2 == 0 { m / 2 } else { m / 2 + 1 };
    let half = rat(1, 2);
    let mut c = rat(1, 1);
    for j in 0..n {
        let j = rat(j as i64, 1);
        c = c * (half.clone() + j.clone()) / (k.clone() + half.clone() + j);
    }
    c
}

/// [p,q]_0 = Σ_ν ν! p_ν q_ν.
pub fn classical_pair<S: Scalar>(p: &MultiPoly<S>, q: &MultiPoly<S>) -> S {
    let mut acc = S::zero();
    for (m, c) in p.terms() {
        let d = q.coeff(m);
        if !d.is_zero() {
            acc = acc + c.clone() * d * S::from_rational(&Rational::from_integer(m.factorial()));
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// checks

/// Recomputes T_i(V_k q) − V_k(∂_i q) for every basis monomial and axis.
pub fn check_intertwining<S: Scalar>(table: &IntertwinerTable<S>, ctx: &RootSystemContext<S>) -> CheckOutcome {
    let dim = table.dim();
    let monos: Vec<Monomial> = (1..=table.cap()).flat_map(|n| table.basis(n).to_vec()).collect();
    let fails: Vec<Option<String>> = monos
        .par_iter()
        .map(|m| {
            let q = MultiPoly::monomial(m.clone(), S::one());
            let run = || -> Result<Option<String>> {
                let vq = table.apply(&q)?;
                if vq.homogeneous_part(m.degree()).num_terms() != vq.num_terms() {
                    return Ok(Some(format!("V_k {m:?} is not homogeneous")));
                }
                for i in 0..dim {
                    let l = apply_t_axis(ctx, i, &vq)?;
                    let r = table.apply(&q.partial_axis(i))?;
                    if !l.approx_eq(&r) {
                        return Ok(Some(format!("q = {m:?}, i = {}", i + 1)));
                    }
                }
                Ok(None)
            };
            run().unwrap_or_else(|e| Some(e.to_string()))
        })
        .collect();
    CheckOutcome::exact(
        "intertwining",
        "T_i V_k q = V_k ∂_i q",
        fails.into_iter().flatten().next(),
        monos.len() * dim,
    )
}

/// V_k(1) = 1 and V_k is the identity at k = 0.
pub fn check_normalization<S: Scalar>(table: &IntertwinerTable<S>, ctx: &RootSystemContext<S>) -> CheckOutcome {
    let one = MultiPoly::one(table.dim());
    let mut fail = None;
    if table.apply(&one).map(|v| v != one).unwrap_or(true) {
        fail = Some("V_k(1) != 1".to_string());
    }
    if ctx.is_k_zero() {
        for n in 0..=table.cap() {
            if !table.matrix(n).approx_eq(&Matrix::identity(table.basis(n).len())) {
                fail = Some(format!("k = 0 but V is not the identity in degree {n}"));
                break;
            }
        }
    }
    CheckOutcome::exact("normalization", "V_k|𝒫_0 = id", fail, 1)
}

/// [V_k p, q]_k = [p, q]_0 on all monomial pairs of equal degree (pairs of
/// different degree vanish on both sides by homogeneity).
pub fn check_pairing_transport<S: Scalar>(table: &IntertwinerTable<S>, ctx: &RootSystemContext<S>, cap: usize) -> CheckOutcome {
    let cap = cap.min(table.cap());
    let pairs: Vec<(Monomial, Monomial)> = (0..=cap)
        .flat_map(|n| {
            let b = table.basis(n).to_vec();
            let b2 = b.clone();
            b.into_iter()
                .flat_map(move |p| b2.clone().into_iter().map(move |q| (p.clone(), q)))
        })
        .collect();
    let fails: Vec<Option<String>> = pairs
        .par_iter()
        .map(|(pm, qm)| {
            let p = MultiPoly::monomial(pm.clone(), S::one());
            let q = MultiPoly::monomial(qm.clone(), S::one());
            let run = || -> Result<Option<String>> {
                let l = fischer_pair(ctx, &table.apply(&p)?, &q)?;
                let r = classical_pair(&p, &q);
                Ok((!l.approx_eq(&r, r.to_f64().abs().max(1.0))).then(|| format!("p = {pm:?}, q = {qm:?}: {l} vs {r}")))
            };
            run().unwrap_or_else(|e| Some(e.to_string()))
        })
        .collect();
    CheckOutcome::exact(
        "pairing-transport",
        "[V_k p, q]_k = [p, q]_0",
        fails.into_iter().flatten().next(),
        pairs.len(),
    )
}

/// g⁻¹(V_k(g·p)) = V_k p for every group element and basis monomial.
pub fn check_equivariance_v<S: Scalar>(table: &IntertwinerTable<S>, ctx: &RootSystemContext<S>, cap: usize) -> CheckOutcome {
    let cap = cap.min(table.cap());
    let monos: Vec<Monomial> = (0..=cap).flat_map(|n| table.basis(n).to_vec()).collect();
    let fails: Vec<Option<String>> = monos
        .par_iter()
        .map(|m| {
            let p = MultiPoly::monomial(m.clone(), S::one());
            let run = || -> Result<Option<String>> {
                let vp = table.apply(&p)?;
                for g in ctx.group() {
                    let l = table.apply(&p.act(&g.matrix))?.act(&g.inverse().matrix);
                    if !l.approx_eq(&vp) {
                        return Ok(Some(format!("p = {m:?}, g = {:?}", g.matrix)));
                    }
                }
                Ok(None)
            };
            run().unwrap_or_else(|e| Some(e.to_string()))
        })
        .collect();
    CheckOutcome::exact(
        "equivariance-V",
        "g⁻¹∘V_k∘g = V_k",
        fails.into_iter().flatten().next(),
        monos.len() * ctx.group().len(),
    )
}

/// Rank-one table against the Pochhammer closed form, exactly.
pub fn check_rank_one_closed_form(table: &IntertwinerTable<Rational>, k: &Rational) -> CheckOutcome {
    let mut fail = None;
    for m in 0..=table.cap() {
        let x = MultiPoly::monomial(Monomial::from_exponents(&[m as u16]), rat(1, 1));
        let expected = x.scale(&rank_one_coefficient(k, m));
        match table.apply(&x) {
            Ok(v) if v == expected => {}
            Ok(v) => {
                fail = Some(format!("x^{m}: {v:?} vs {expected:?}"));
                break;
            }
            Err(e) => {
                fail = Some(e.to_string());
                break;
            }
        }
    }
    CheckOutcome::exact(
        "rank-one-closed-form",
        "V_k x^{2n} = (1/2)_n/(k+1/2)_n x^{2n}, odd analogue",
        fail,
        table.cap() + 1,
    )
}

/// Sample points: half uniform in the unit ball, half on the unit sphere
/// (where homogeneous polynomials attain their maxima on the ball).
pub fn ball_samples(rng: &mut TestRng, dim: usize, count: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|i| {
            if i % 2 == 0 {
                random::ball_point(rng, dim)
            } else {
                random::sphere_point(rng, dim)
            }
        })
        .collect()
}

/// Positivity of V_k on sums of squares, and ‖V_k p‖ ≤ ‖p‖ on the sampled
/// ball for homogeneous p. Numerical sampling, not a proof.
pub fn check_positivity_grid(
    table: &IntertwinerTable<Rational>,
    rng: &mut TestRng,
    polys: usize,
    samples: usize,
) -> Vec<CheckOutcome> {
    let dim = table.dim();
    let points = ball_samples(rng, dim, samples);
    let max_deg = table.cap().min(6);
    let half = (max_deg / 2).max(1);
    let mut worst = f64::INFINITY;
    let mut witness = String::new();
    let mut error = None;
    for _ in 0..polys {
        let mut p = MultiPoly::zero(dim);
        for _ in 0..3 {
            let q: MultiPoly<Rational> = random::polynomial(rng, dim, half, 3);
            p = p.add(&q.mul(&q));
        }
        let vp = match table.apply(&p) {
            Ok(v) => v.to_f64(),
            Err(e) => {
                error = Some(e.to_string());
                break;
            }
        };
        for x in &points {
            let v = vp.eval_f64(x);
            if v < worst {
                worst = v;
                witness = format!("p = {p:?} at {x:?}");
            }
        }
    }
    let positivity = CheckOutcome::flag(
        "positivity-V",
        "p ≥ 0 ⇒ V_k p ≥ 0",
        error.is_none() && worst >= -1e-10,
        error.clone().unwrap_or_else(|| {
            format!("{polys} sums of squares × {samples} points, min V_k p = {worst:.3e} ({witness})")
        }),
    );
    let mut excess = f64::NEG_INFINITY;
    let mut witness = String::new();
    for _ in 0..50 {
        let n = {
            use rand::Rng;
            rng.gen_range(1..=max_deg)
        };
        let p: MultiPoly<Rational> = random::homogeneous(rng, dim, n, 4);
        let Ok(vp) = table.apply(&p) else { continue };
        let (pf, vf) = (p.to_f64(), vp.to_f64());
        let pmax = points.iter().map(|x| pf.eval_f64(x).abs()).fold(0.0, f64::max);
        let vmax = points.iter().map(|x| vf.eval_f64(x).abs()).fold(0.0, f64::max);
        if vmax - pmax > excess {
            excess = vmax - pmax;
            witness = format!("p = {p:?}: max|V_k p| = {vmax:.6}, max|p| = {pmax:.6}");
        }
    }
    let bound = CheckOutcome::flag(
        "norm-bound-V",
        "‖V_k p‖_∞,B ≤ ‖p‖_∞,B",
        excess <= 1e-9,
        format!("50 homogeneous polynomials, worst excess {excess:.3e} ({witness})"),
    );
    vec![positivity, bound]
}

/// Rank-one integral representation V_k p(x) = c_k ∫ p(tx)(1−t)^{k−1}(1+t)^k dt
/// (k > 0) by Gauss–Jacobi quadrature, against the table for p = x^m.
pub fn check_rank_one_integral(table: &IntertwinerTable<Rational>, k: &Rational, nodes: usize) -> CheckOutcome {
    let kf = k.to_f64();
    if kf <= 0.0 {
        return CheckOutcome::flag("rank-one-integral", "Jacobi integral form of V_k", true, "k = 0: V = id".into());
    }
    let rule = crate::quadrature::gauss_jacobi(nodes, kf - 1.0, kf);
    let total: f64 = rule.weights.iter().sum();
    let mut worst = 0.0f64;
    let top = table.cap().min(10);
    for m in 0..=top {
        let integral: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(t, w)| w * t.powi(m as i32))
            .sum::<f64>()
            / total;
        let x = MultiPoly::monomial(Monomial::from_exponents(&[m as u16]), rat(1, 1));
        let table_value = table
            .apply(&x)
            .map(|v| v.coeff(&Monomial::from_exponents(&[m as u16])).to_f64())
            .unwrap_or(f64::NAN);
        worst = worst.max((integral - table_value).abs());
    }
    CheckOutcome::numeric(
        "rank-one-integral",
        "V_k p(x) = c∫p(tx)(1−t)^{k−1}(1+t)^k dt",
        worst,
        1e-10,
        format!("x^m, m ≤ {top}, {nodes} Gauss–Jacobi nodes"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{ExactContext, FloatContext, RootSystem, RootSystemKind};
    use crate::scalar::rat_int;

    #[test]
    fn rank_one_examples() {
        let k = rat(2, 5);
        let ctx = ExactContext::new(RootSystem::standard(RootSystemKind::RankOne, 1).unwrap(), &[k.clone()]).unwrap();
        let t = IntertwinerTable::build(&ctx, 12).unwrap();
        let x2 = MultiPoly::parse("x1^2", 1).unwrap();
        let denom = rat_int(2) * k.clone() + rat_int(1);
        assert_eq!(t.apply(&x2).unwrap(), x2.scale(&(rat_int(1) / denom.clone())));
        let x1 = MultiPoly::var(1, 0);
        assert_eq!(t.apply(&x1).unwrap(), x1.scale(&(rat_int(1) / denom)));
        let x3 = MultiPoly::parse("x1^3", 1).unwrap();
        let c3 = rat(3, 4) / ((k.clone() + rat(1, 2)) * (k.clone() + rat(3, 2)));
        assert_eq!(t.apply(&x3).unwrap(), x3.scale(&c3));
        assert!(check_rank_one_closed_form(&t, &k).pass);
        assert!(t.apply(&MultiPoly::parse("x1^13", 1).unwrap()).is_err());
    }

    #[test]
    fn k_zero_is_identity() {
        let ctx = ExactContext::new(RootSystem::standard(RootSystemKind::B, 2).unwrap(), &[rat_int(0)]).unwrap();
        let t = IntertwinerTable::build(&ctx, 4).unwrap();
        assert!(check_normalization(&t, &ctx).pass);
    }

    #[test]
    fn constructions_agree() {
        let ctx = ExactContext::new(RootSystem::standard(RootSystemKind::B, 2).unwrap(), &[rat(1, 2), rat_int(1)]).unwrap();
        let a = IntertwinerTable::build_with(&ctx, 5, Construction::Stacked).unwrap();
        let b = IntertwinerTable::build_with(&ctx, 5, Construction::Euler).unwrap();
        for n in 0..=5 {
            assert_eq!(a.matrix(n), b.matrix(n));
        }
        assert!(check_intertwining(&a, &ctx).pass);
        let fctx = FloatContext::new(RootSystem::standard(RootSystemKind::B, 2).unwrap(), &[rat(1, 2), rat_int(1)]).unwrap();
        let f = IntertwinerTable::build_with(&fctx, 5, Construction::Euler).unwrap();
        assert!(f.matrix(5).approx_eq(&a.matrix(5).to_f64()));
        assert!(check_intertwining(&f, &fctx).pass);
    }

    #[test]
    fn extension_reuses_lower_degrees() {
        let ctx = ExactContext::new(RootSystem::standard(RootSystemKind::A, 3).unwrap(), &[rat(1, 3)]).unwrap();
        let mut t = IntertwinerTable::build(&ctx, 2).unwrap();
        let m2 = t.matrix(2).clone();
        t.extend(&ctx, 4).unwrap();
        assert_eq!(t.matrix(2), &m2);
        assert_eq!(t.cap(), 4);
        assert!(check_intertwining(&t, &ctx).pass);
        assert!(check_pairing_transport(&t, &ctx, 3).pass);
        assert!(check_equivariance_v(&t, &ctx, 3).pass);
    }
}
