//! Sparse multivariate polynomials over a [`Scalar`] field.
//!
//! Terms are kept in graded lexicographic order: lower total degree first,
//! and within one degree `x1^n` precedes `x1^(n-1) x2`, and so on. That order
//! is the basis order used by the intertwiner tables and the Gram–Schmidt
//! construction of Hermite systems.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{DunklError, Result};
use crate::linalg::Matrix;
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u16; 4]>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(SmallVec::from_elem(0, dim))
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(dim: usize, i: usize) -> Self {
        let mut m = Self::one(dim);
        m.0[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / x_i`, if `x_i` divides the monomial.
    pub fn lower(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.0[i] -= 1;
        Some(m)
    }

    pub fn raise(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.0[i] += 1;
        m
    }

    /// ν! = ∏ ν_i!
    pub fn factorial(&self) -> num_bigint::BigInt {
        let mut f = num_bigint::BigInt::from(1);
        for &e in self.0.iter() {
            for j in 2..=e as u64 {
                f *= j;
            }
        }
        f
    }

    pub fn eval<S: Scalar>(&self, x: &[S]) -> S {
        let mut acc = S::one();
        for (xi, &e) in x.iter().zip(self.0.iter()) {
            if e > 0 {
                acc = acc * xi.pow_u(e as u32);
            }
        }
        acc
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(x)
            .map(|(&e, &xi)| f64::powi(xi, e as i32))
            .product()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", monomial_text(self))
    }
}

fn monomial_text(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

/// All monomials of total degree `n` in `dim` variables, in basis order.
pub fn monomials_of_degree(dim: usize, n: usize) -> Vec<Monomial> {
    fn rec(dim: usize, left: usize, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if prefix.len() == dim - 1 {
            prefix.push(left as u16);
            out.push(Monomial::from_exponents(prefix));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e as u16);
            rec(dim, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        return out;
    }
    rec(dim, n, &mut Vec::with_capacity(dim), &mut out);
    out
}

/// dim 𝒫_n = C(n + N - 1, N - 1).
pub fn homogeneous_dimension(dim: usize, n: usize) -> usize {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for j in 1..dim {
        num *= (n + j) as u128;
        den *= j as u128;
    }
    (num / den) as usize
}

#[derive(Clone, PartialEq)]
pub struct MultiPoly<S> {
    dim: usize,
    terms: BTreeMap<Monomial, S>,
}

pub type ExactPoly = MultiPoly<Rational>;

impl<S: Scalar> MultiPoly<S> {
    pub fn zero(dim: usize) -> Self {
        MultiPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, S::one())
    }

    pub fn constant(dim: usize, c: S) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(Monomial::one(dim), c);
        p
    }

    pub fn var(dim: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(dim, i), S::one())
    }

    pub fn monomial(m: Monomial, c: S) -> Self {
        let mut p = Self::zero(m.dim());
        p.add_term(m, c);
        p
    }

    /// The linear form ⟨a, x⟩.
    pub fn linear(a: &[S]) -> Self {
        let dim = a.len();
        let mut p = Self::zero(dim);
        for (i, c) in a.iter().enumerate() {
            p.add_term(Monomial::var(dim, i), c.clone());
        }
        p
    }

    /// |x|² = Σ x_i².
    pub fn norm_squared(dim: usize) -> Self {
        let mut p = Self::zero(dim);
        for i in 0..dim {
            let mut m = Monomial::one(dim);
            m.0[i] = 2;
            p.add_term(m, S::one());
        }
        p
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Monomial, S)>) -> Result<Self> {
        let mut p = Self::zero(dim);
        for (m, c) in terms {
            if m.dim() != dim {
                return Err(DunklError::DimensionMismatch {
                    expected: dim,
                    got: m.dim(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        MultiPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_dim(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_dim(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_dim(other);
        let mut out = Self::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &S) -> Self {
        let mut out = Self::zero(self.dim);
        for (ma, ca) in &self.terms {
            out.add_term(ma.mul(m), ca.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.dim);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn check_dim(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
    }

    pub fn eval(&self, x: &[S]) -> Result<S> {
        if x.len() != self.dim {
            return Err(DunklError::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        // powers of each coordinate are shared across terms
        let max_exp: Vec<u16> = (0..self.dim)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<S>> = x
            .iter()
            .zip(&max_exp)
            .map(|(xi, &e)| {
                let mut v = Vec::with_capacity(e as usize + 1);
                v.push(S::one());
                for j in 1..=e as usize {
                    let next = v[j - 1].clone() * xi.clone();
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t * powers[i][e as usize].clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Evaluation in double precision with the coefficients rounded once.
    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        self.terms
            .iter()
            .map(|(m, c)| c.to_f64() * m.eval_f64(x))
            .sum()
    }

    /// ∂_i p.
    pub fn partial_axis(&self, i: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            if let Some(lower) = m.lower(i) {
                out.add_term(lower, c.clone() * S::from_i64(m.0[i] as i64));
            }
        }
        out
    }

    /// Directional derivative ∂_ξ p.
    pub fn partial(&self, xi: &[S]) -> Self {
        assert_eq!(xi.len(), self.dim);
        let mut out = Self::zero(self.dim);
        for (i, a) in xi.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            out = out.add(&self.partial_axis(i).scale(a));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.dim).map(|i| self.partial_axis(i)).collect()
    }

    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for i in 0..self.dim {
            out = out.add(&self.partial_axis(i).partial_axis(i));
        }
        out
    }

    /// Euler operator ρ = Σ x_i ∂_i, which multiplies 𝒫_n by n.
    pub fn euler(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * S::from_i64(m.degree() as i64));
        }
        out
    }

    pub fn homogeneous_part(&self, n: usize) -> Self {
        MultiPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Graded decomposition p = Σ p_n, nonzero slices only.
    pub fn homogeneous_slices(&self) -> Vec<HomogeneousSlice<S>> {
        let mut slices: BTreeMap<usize, MultiPoly<S>> = BTreeMap::new();
        for (m, c) in &self.terms {
            slices
                .entry(m.degree())
                .or_insert_with(|| MultiPoly::zero(self.dim))
                .add_term(m.clone(), c.clone());
        }
        slices
            .into_iter()
            .map(|(degree, poly)| HomogeneousSlice { degree, poly })
            .collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// p(Mx) for a square matrix M.
    pub fn compose_linear(&self, m: &Matrix<S>) -> Self {
        assert_eq!(m.rows(), self.dim);
        assert_eq!(m.cols(), self.dim);
        if let Some(perm) = m.as_signed_permutation() {
            return self.compose_signed_permutation(&perm);
        }
        let forms: Vec<MultiPoly<S>> = (0..self.dim)
            .map(|i| MultiPoly::linear(m.row(i)))
            .collect();
        let mut powers: Vec<Vec<MultiPoly<S>>> =
            forms.iter().map(|_| vec![MultiPoly::one(self.dim)]).collect();
        let mut out = Self::zero(self.dim);
        for (mono, c) in &self.terms {
            let mut t = MultiPoly::constant(self.dim, c.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&forms[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// (g·p)(x) = p(g⁻¹x) for orthogonal g, so g⁻¹ = gᵀ.
    pub fn act(&self, g: &Matrix<S>) -> Self {
        self.compose_linear(&g.transpose())
    }

    /// Drops coefficients negligible relative to `scale` (no-op for exact
    /// scalars unless a coefficient is exactly zero).
    pub fn chop(&self, scale: f64) -> Self {
        let mut out = self.clone();
        out.terms.retain(|_, c| !c.negligible(scale));
        out
    }

    /// (Mx)_i = sign_i · x_{col_i}.
    fn compose_signed_permutation(&self, perm: &[(usize, bool)]) -> Self {
        let mut out = Self::zero(self.dim);
        for (mono, c) in &self.terms {
            let mut new = Monomial::one(self.dim);
            let mut negative = false;
            for (i, &e) in mono.0.iter().enumerate() {
                let (col, neg) = perm[i];
                new.0[col] += e;
                if neg && e % 2 == 1 {
                    negative = !negative;
                }
            }
            let v = if negative { -c.clone() } else { c.clone() };
            out.add_term(new, v);
        }
        out
    }

    /// Exact quotient of `self` by the linear form ⟨α, x⟩.
    ///
    /// Synthetic division in the variable where α has its largest coefficient;
    /// a nonzero remainder means `self` does not vanish on the hyperplane
    /// α^⊥ and is reported as [`DunklError::NotDivisible`].
    pub fn divide_by_linear(&self, alpha: &[S]) -> Result<Self> {
        assert_eq!(alpha.len(), self.dim);
        let (j, lead) = alpha
            .iter()
            .enumerate()
            .max_by(|a, b| {
                a.1.to_f64()
                    .abs()
                    .partial_cmp(&b.1.to_f64().abs())
                    .unwrap_or(Ordering::Equal)
            })
            .map(|(j, a)| (j, a.clone()))
            .expect("nonempty root");
        if lead.is_zero() {
            return Err(DunklError::NotDivisible("zero linear form".into()));
        }
        let scale = self
            .terms
            .values()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max);
        let mut rem = self.clone();
        let mut quot = Self::zero(self.dim);
        // eliminate x_j from the highest power down
        loop {
            let next = rem
                .terms
                .iter()
                .filter(|(m, _)| m.0[j] > 0)
                .max_by(|(a, _), (b, _)| a.0[j].cmp(&b.0[j]).then_with(|| a.cmp(b)))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = next else { break };
            let q_mono = m.lower(j).unwrap();
            let q_coef = c / lead.clone();
            for (i, a) in alpha.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                rem.add_term(q_mono.raise(i), -(q_coef.clone() * a.clone()));
            }
            // the leading term must cancel exactly, also in floating point
            rem.terms.remove(&m);
            quot.add_term(q_mono, q_coef);
        }
        if rem.terms.values().any(|c| !c.negligible(scale)) {
            return Err(DunklError::NotDivisible(format!(
                "remainder has {} nonzero terms",
                rem.terms.len()
            )));
        }
        Ok(quot)
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MultiPoly<T> {
        let mut out = MultiPoly::zero(self.dim);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn to_f64(&self) -> MultiPoly<f64> {
        self.map_coeffs(Scalar::to_f64)
    }

    /// Largest coefficient magnitude, in double precision.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Equality up to the backend tolerance (exact for rationals).
    pub fn approx_eq(&self, other: &Self) -> bool {
        let diff = self.sub(other);
        let scale = self.max_abs_coeff().max(other.max_abs_coeff());
        diff.terms.values().all(|c| c.negligible(scale))
    }

    /// Polynomial text with the coefficient printed before each monomial,
    /// e.g. `3/2 x1^2 x3 - 1 x2`.
    pub fn to_text_with(&self, fmt_coeff: impl Fn(&S) -> (bool, String)) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        // highest degree first reads naturally
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let (negative, mag) = fmt_coeff(c);
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&mag);
            if m.degree() > 0 {
                out.push(' ');
                out.push_str(&monomial_text(m));
            }
        }
        out
    }
}

impl MultiPoly<Rational> {
    pub fn to_text(&self) -> String {
        self.to_text_with(|c| {
            let neg = c < &Rational::from_integer(0.into());
            let mag = if neg { -c.clone() } else { c.clone() };
            (neg, format_rational(&mag))
        })
    }

    /// Parses the text form. Variables are `x1 … xN`; coefficients are
    /// rationals `p/q`, integers or decimals; factors may be separated by
    /// spaces or `*`.
    pub fn parse(text: &str, dim: usize) -> Result<Self> {
        parse_poly(text, dim)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    exp: m.0.iter().copied().collect(),
                    coef: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson, dim: usize) -> Result<Self> {
        let mut p = Self::zero(dim);
        for t in &json.terms {
            if t.exp.len() != dim {
                return Err(DunklError::DimensionMismatch {
                    expected: dim,
                    got: t.exp.len(),
                });
            }
            p.add_term(Monomial::from_exponents(&t.exp), parse_rational(&t.coef)?);
        }
        Ok(p)
    }

    /// Exact evaluation at a double-precision point (each coordinate is
    /// converted to the rational it represents), rounded once at the end.
    pub fn eval_exact_at_f64(&self, x: &[f64]) -> Result<f64> {
        let xs = x
            .iter()
            .map(|&v| {
                Rational::from_float(v)
                    .ok_or_else(|| DunklError::Numerical(format!("non-finite coordinate {v}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.eval(&xs)?.to_f64())
    }
}

impl MultiPoly<f64> {
    pub fn to_text(&self) -> String {
        self.to_text_with(|c| (*c < 0.0, format!("{}", c.abs())))
    }
}

impl<S: Scalar> fmt::Debug for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_text_with(|c| {
            let neg = c.to_f64() < 0.0;
            let mag = if neg { -c.clone() } else { c.clone() };
            (neg, mag.to_string())
        });
        write!(f, "{s}")
    }
}

#[derive(Clone, PartialEq)]
pub struct HomogeneousSlice<S> {
    pub degree: usize,
    pub poly: MultiPoly<S>,
}

impl<S: Scalar> fmt::Debug for HomogeneousSlice<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {}] {:?}", self.degree, self.poly)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u16>,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<TermJson>,
}

fn parse_poly(text: &str, dim: usize) -> Result<ExactPoly> {
    let err = |msg: String| DunklError::Parse(format!("{msg} in polynomial '{text}'"));
    let cleaned = text.replace('*', " ");
    // split into signed terms at top-level +/- (not inside exponents)
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut prev_nonspace: Option<char> = None;
    for ch in cleaned.chars() {
        let is_sign = ch == '+' || ch == '-';
        let after_caret = prev_nonspace == Some('^');
        if is_sign && !after_caret {
            if !current.trim().is_empty() {
                terms.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if ch == '-' {
                negative = !negative;
            }
        } else {
            current.push(ch);
        }
        if !ch.is_whitespace() {
            prev_nonspace = Some(ch);
        }
    }
    if !current.trim().is_empty() {
        terms.push((negative, current));
    } else if terms.is_empty() {
        return Err(err("empty expression".into()));
    }

    let mut poly = ExactPoly::zero(dim);
    for (neg, body) in terms {
        let mut coef = Rational::from_integer(1.into());
        let mut mono = Monomial::one(dim);
        for factor in body.split_whitespace() {
            if let Some(rest) = factor.strip_prefix('x') {
                let (idx, exp) = match rest.split_once('^') {
                    Some((i, e)) => (i, e),
                    None => (rest, "1"),
                };
                let i: usize = idx
                    .parse()
                    .map_err(|_| err(format!("bad variable '{factor}'")))?;
                let e: u16 = exp
                    .parse()
                    .map_err(|_| err(format!("bad exponent '{factor}'")))?;
                if i == 0 || i > dim {
                    return Err(err(format!("variable x{i} outside 1..={dim}")));
                }
                mono.0[i - 1] += e;
            } else {
                coef *= parse_rational(factor).map_err(|_| err(format!("bad factor '{factor}'")))?;
            }
        }
        if neg {
            coef = -coef;
        }
        poly.add_term(mono, coef);
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn p(s: &str, dim: usize) -> ExactPoly {
        ExactPoly::parse(s, dim).unwrap()
    }

    #[test]
    fn basis_order_and_dimension() {
        let m = monomials_of_degree(3, 2);
        let exps: Vec<Vec<u16>> = m.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(
            exps,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        for n in 0..8 {
            assert_eq!(monomials_of_degree(3, n).len(), homogeneous_dimension(3, n));
        }
        let mut sorted = m.clone();
        sorted.sort();
        assert_eq!(sorted, m);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(
            p("x1^2 + x2", 2).eval(&[rat_int(2), rat_int(3)]).unwrap(),
            rat_int(7)
        );
        assert_eq!(ExactPoly::zero(2).eval(&[rat_int(5), rat_int(1)]).unwrap(), rat_int(0));
        assert_eq!(
            p("x1 x2", 2).eval(&[rat(1, 2), rat(1, 3)]).unwrap(),
            rat(1, 6)
        );
        assert!(p("x1", 2).eval(&[rat_int(1)]).is_err());
    }

    #[test]
    fn partial_examples() {
        assert_eq!(p("x1^2", 2).partial(&[rat_int(1), rat_int(0)]), p("2 x1", 2));
        assert_eq!(p("x1 x2", 2).partial(&[rat_int(1), rat_int(1)]), p("x1 + x2", 2));
        assert!(p("7/3", 2).partial(&[rat_int(1), rat_int(2)]).is_zero());
    }

    #[test]
    fn division_examples() {
        let alpha = [rat_int(1), rat_int(-1)];
        let q = p("x1^2 - x2^2", 2).divide_by_linear(&alpha).unwrap();
        assert_eq!(q, p("x1 + x2", 2));
        let lin = ExactPoly::linear(&alpha);
        assert_eq!(lin.divide_by_linear(&alpha).unwrap(), ExactPoly::one(2));
        assert!(matches!(
            p("x1", 2).divide_by_linear(&alpha),
            Err(DunklError::NotDivisible(_))
        ));
    }

    #[test]
    fn text_round_trip_and_format() {
        let q = p("3/2 x1^2 x3 - 1 x2", 3);
        assert_eq!(q.to_text(), "3/2 x1^2 x3 - 1 x2");
        assert_eq!(p(&q.to_text(), 3), q);
        assert_eq!(p("-x1*x2 + 0.5", 2).to_text(), "-1 x1 x2 + 1/2");
        assert_eq!(ExactPoly::zero(2).to_text(), "0");
        assert!(ExactPoly::parse("x3", 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let q = p("3/2 x1^2 x3 - 1 x2", 3);
        let js = serde_json::to_string(&q.to_json()).unwrap();
        assert!(js.contains("\"coef\":\"3/2\""));
        let back: PolyJson = serde_json::from_str(&js).unwrap();
        assert_eq!(ExactPoly::from_json(&back, 3).unwrap(), q);
    }

    #[test]
    fn compose_with_reflection() {
        // σ for α = e1 - e2 swaps coordinates
        let swap = Matrix::from_rows(vec![vec![rat_int(0), rat_int(1)], vec![rat_int(1), rat_int(0)]]);
        assert_eq!(p("x1^2 x2", 2).compose_linear(&swap), p("x1 x2^2", 2));
        // a non-permutation orthogonal-like map takes the general path
        let m = Matrix::from_rows(vec![vec![rat(3, 5), rat(4, 5)], vec![rat(4, 5), rat(-3, 5)]]);
        let r2 = ExactPoly::norm_squared(2);
        assert_eq!(r2.compose_linear(&m), r2);
    }

    #[test]
    fn float_backend_division() {
        let s = 2f64.sqrt();
        let alpha = [1.0 / s, 1.0 / s];
        let lin = MultiPoly::<f64>::linear(&alpha);
        let q = MultiPoly::<f64>::var(2, 0).add(&MultiPoly::constant(2, 3.0));
        let back = lin.mul(&q).divide_by_linear(&alpha).unwrap();
        assert!(back.approx_eq(&q));
    }
}
