//! Root systems, the finite reflection groups they generate, and
//! multiplicity functions.
//!
//! Roots are stored with their original coordinates and squared norm. Every
//! operator built on top (reflections, Dunkl difference terms) is invariant
//! under rescaling a root, so the exact backend never needs √2; the
//! normalization ⟨α,α⟩ = 2 enters only where it changes values, namely the
//! weight `w_k` and the scale-invariant form of the Laplacian reflection term.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{DunklError, Result};
use crate::linalg::{rank, Matrix};
use crate::scalar::{format_rational, parse_rational, rat, Rational, Scalar, ScalarKey};

pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootSystemKind {
    /// A_1 acting on ℝ: R = {±α} with ⟨α,α⟩ = 2, σ(x) = -x.
    RankOne,
    /// A_{N-1} in ℝ^N: ±(e_i - e_j).
    A,
    /// B_N in ℝ^N: ±e_i, ±e_i ± e_j.
    B,
    /// I_2(n) in ℝ²: 2n unit vectors at angles jπ/n.
    Dihedral(usize),
    Custom,
}

impl fmt::Display for RootSystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootSystemKind::RankOne => write!(f, "rank-one"),
            RootSystemKind::A => write!(f, "A"),
            RootSystemKind::B => write!(f, "B"),
            RootSystemKind::Dihedral(n) => write!(f, "I2({n})"),
            RootSystemKind::Custom => write!(f, "custom"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Root<S> {
    coords: Vec<S>,
    norm_sq: S,
}

impl<S: Scalar> Root<S> {
    pub fn new(coords: Vec<S>) -> Result<Self> {
        let norm_sq = dot(&coords, &coords);
        if norm_sq.is_zero() {
            return Err(DunklError::Config("zero vector is not a root".into()));
        }
        Ok(Root { coords, norm_sq })
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn norm_sq(&self) -> &S {
        &self.norm_sq
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn neg(&self) -> Self {
        Root {
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
            norm_sq: self.norm_sq.clone(),
        }
    }

    /// ⟨α, x⟩
    pub fn pair(&self, x: &[S]) -> S {
        dot(&self.coords, x)
    }

    /// The root rescaled to squared norm 2, in double precision.
    pub fn normalized_f64(&self) -> Vec<f64> {
        let s = (2.0 / self.norm_sq.to_f64()).sqrt();
        self.coords.iter().map(|c| c.to_f64() * s).collect()
    }

    /// σ_α = I - 2αα^T/|α|².
    pub fn reflection_matrix(&self) -> Matrix<S> {
        let n = self.dim();
        let two = S::from_i64(2);
        let mut m: Matrix<S> = Matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                let v = m[(i, j)].clone()
                    - two.clone() * self.coords[i].clone() * self.coords[j].clone()
                        / self.norm_sq.clone();
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn key(&self) -> Vec<ScalarKey> {
        self.coords.iter().map(Scalar::key).collect()
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| a.approx_eq(b, 1.0))
    }

    fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            if a.approx_eq(b, 1.0) {
                continue;
            }
            return a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal);
        }
        std::cmp::Ordering::Equal
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// σ_α(x) = x - 2⟨α,x⟩/|α|² · α.
pub fn reflect<S: Scalar>(alpha: &Root<S>, x: &[S]) -> Vec<S> {
    let f = S::from_i64(2) * alpha.pair(x) / alpha.norm_sq.clone();
    x.iter()
        .zip(&alpha.coords)
        .map(|(xi, ai)| xi.clone() - f.clone() * ai.clone())
        .collect()
}

#[derive(Clone, Debug)]
pub struct RootSystem<S> {
    kind: RootSystemKind,
    dim: usize,
    roots: Vec<Root<S>>,
    positive: Vec<usize>,
    rank: usize,
}

impl<S: Scalar> RootSystem<S> {
    /// Builds a standard root system. `size` is N for A/B (ambient ℝ^N), n for
    /// I_2(n), ignored for rank one.
    pub fn standard(kind: RootSystemKind, size: usize) -> Result<Self> {
        let roots: Vec<Vec<S>> = match kind {
            RootSystemKind::RankOne => vec![vec![S::one()]],
            RootSystemKind::A => {
                if size < 2 {
                    return Err(DunklError::Config(format!("type A needs N >= 2, got {size}")));
                }
                let mut r = Vec::new();
                for i in 0..size {
                    for j in (i + 1)..size {
                        r.push(unit_combo(size, &[(i, 1), (j, -1)]));
                    }
                }
                r
            }
            RootSystemKind::B => {
                if size < 2 {
                    return Err(DunklError::Config(format!("type B needs N >= 2, got {size}")));
                }
                let mut r: Vec<Vec<S>> = (0..size).map(|i| unit_combo(size, &[(i, 1)])).collect();
                for i in 0..size {
                    for j in (i + 1)..size {
                        r.push(unit_combo(size, &[(i, 1), (j, -1)]));
                        r.push(unit_combo(size, &[(i, 1), (j, 1)]));
                    }
                }
                r
            }
            RootSystemKind::Dihedral(n) => {
                if n < 3 {
                    return Err(DunklError::Config(format!("I2(n) needs n >= 3, got {n}")));
                }
                if n == 4 {
                    vec![
                        unit_combo(2, &[(0, 1)]),
                        unit_combo(2, &[(0, 1), (1, 1)]),
                        unit_combo(2, &[(1, 1)]),
                        unit_combo(2, &[(0, -1), (1, 1)]),
                    ]
                } else if S::EXACT {
                    return Err(DunklError::Unsupported(format!(
                        "I2({n}) has irrational roots; use the float backend"
                    )));
                } else {
                    (0..n)
                        .map(|j| {
                            let th = std::f64::consts::PI * j as f64 / n as f64;
                            vec![S::from_f64(th.cos()), S::from_f64(th.sin())]
                        })
                        .collect()
                }
            }
            RootSystemKind::Custom => {
                return Err(DunklError::Config(
                    "custom root systems are built from a descriptor".into(),
                ))
            }
        };
        let roots = roots
            .into_iter()
            .map(Root::new)
            .collect::<Result<Vec<_>>>()?;
        Self::from_roots(kind, roots)
    }

    /// Closes the given vectors under ± and all reflections, checks
    /// reducedness, and selects the positive subsystem.
    pub fn from_roots(kind: RootSystemKind, seeds: Vec<Root<S>>) -> Result<Self> {
        let dim = seeds
            .first()
            .map(Root::dim)
            .ok_or_else(|| DunklError::Config("empty root list".into()))?;
        if seeds.iter().any(|r| r.dim() != dim) {
            return Err(DunklError::Config("roots of different dimensions".into()));
        }
        let mut roots: Vec<Root<S>> = Vec::new();
        let mut queue: VecDeque<Root<S>> = VecDeque::new();
        for s in seeds {
            queue.push_back(s.neg());
            queue.push_back(s);
        }
        while let Some(r) = queue.pop_front() {
            if roots.iter().any(|q| q.approx_eq(&r)) {
                continue;
            }
            roots.push(r);
            if roots.len() > 10_000 {
                return Err(DunklError::Config("root closure does not terminate".into()));
            }
            let last = roots.last().unwrap().clone();
            for q in roots.clone() {
                queue.push_back(Root::new(reflect(&q, &last.coords))?);
                queue.push_back(Root::new(reflect(&last, &q.coords))?);
            }
        }
        // reducedness: R ∩ ℝα = {±α}
        for (i, a) in roots.iter().enumerate() {
            for b in roots.iter().skip(i + 1) {
                let c = dot(&a.coords, &b.coords);
                let parallel = (c.clone() * c.clone())
                    .approx_eq(&(a.norm_sq.clone() * b.norm_sq.clone()), 1.0);
                if parallel && !a.approx_eq(&b.neg()) {
                    return Err(DunklError::Config(
                        "root system is not reduced (parallel roots of different length)".into(),
                    ));
                }
            }
        }
        let u = generic_vector::<S>(dim);
        let mut positive = Vec::new();
        for (i, r) in roots.iter().enumerate() {
            let v = r.pair(&u);
            if v.negligible(1e-3) && v.to_f64().abs() < 1e-12 {
                return Err(DunklError::Config(
                    "root orthogonal to the generic chamber vector".into(),
                ));
            }
            if v.to_f64() > 0.0 {
                positive.push(i);
            }
        }
        let rk = {
            let m = Matrix::from_rows(roots.iter().map(|r| r.coords.clone()).collect());
            rank(&m)
        };
        Ok(RootSystem {
            kind,
            dim,
            roots,
            positive,
            rank: rk,
        })
    }

    pub fn kind(&self) -> RootSystemKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Root<S>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root<S>> {
        self.positive.iter().map(move |&i| &self.roots[i])
    }

    pub fn positive_indices(&self) -> &[usize] {
        &self.positive
    }

    pub fn index_of(&self, r: &Root<S>) -> Option<usize> {
        self.roots.iter().position(|q| q.approx_eq(r))
    }

    /// σ_α(R) = R for every root α.
    pub fn check_closed(&self) -> bool {
        self.roots.iter().all(|a| {
            self.roots.iter().all(|b| {
                Root::new(reflect(a, &b.coords))
                    .map(|r| self.index_of(&r).is_some())
                    .unwrap_or(false)
            })
        })
    }

    /// Simple roots: positive roots whose reflection permutes the other
    /// positive roots.
    pub fn simple_roots(&self) -> Vec<&Root<S>> {
        self.positive_roots()
            .filter(|a| {
                self.positive_roots().filter(|b| !b.approx_eq(a)).all(|b| {
                    let img = Root::new(reflect(a, &b.coords)).unwrap();
                    self.index_of(&img)
                        .map(|i| self.positive.contains(&i))
                        .unwrap_or(false)
                })
            })
            .collect()
    }
}

fn unit_combo<S: Scalar>(n: usize, entries: &[(usize, i64)]) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    for &(i, c) in entries {
        v[i] = S::from_i64(c);
    }
    v
}

/// u = (1, 1+ε, 1+2ε, …) with ε = 10^{-4}.
fn generic_vector<S: Scalar>(dim: usize) -> Vec<S> {
    (0..dim)
        .map(|i| S::from_rational(&(rat(1, 1) + rat(i as i64, 10_000))))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement<S> {
    pub matrix: Matrix<S>,
    pub word_length: usize,
}

impl<S: Scalar> GroupElement<S> {
    pub fn identity(dim: usize) -> Self {
        GroupElement {
            matrix: Matrix::identity(dim),
            word_length: 0,
        }
    }

    pub fn inverse(&self) -> Self {
        GroupElement {
            matrix: self.matrix.transpose(),
            word_length: self.word_length,
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        GroupElement {
            matrix: self.matrix.mul(&other.matrix),
            word_length: self.word_length + other.word_length,
        }
    }

    pub fn apply(&self, x: &[S]) -> Vec<S> {
        self.matrix.apply(x)
    }

    pub fn apply_f64(&self, x: &[f64]) -> Vec<f64> {
        let n = self.matrix.rows();
        (0..n)
            .map(|i| {
                self.matrix
                    .row(i)
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a.to_f64() * b)
                    .sum()
            })
            .collect()
    }

    pub fn is_orthogonal(&self) -> bool {
        let p = self.matrix.transpose().mul(&self.matrix);
        p.approx_eq(&Matrix::identity(self.matrix.rows()))
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.matrix.approx_eq(&other.matrix)
    }
}

/// Closure of the reflections {σ_α} under multiplication, breadth first so
/// `word_length` is the reflection length.
pub fn generate_group<S: Scalar>(system: &RootSystem<S>, cap: usize) -> Result<Vec<GroupElement<S>>> {
    let gens: Vec<GroupElement<S>> = system
        .positive_roots()
        .map(|r| GroupElement {
            matrix: r.reflection_matrix(),
            word_length: 1,
        })
        .collect();
    let mut elements = vec![GroupElement::identity(system.dim())];
    let mut seen: HashSet<Vec<ScalarKey>> = HashSet::new();
    if S::EXACT {
        seen.insert(matrix_key(&elements[0].matrix));
    }
    let mut frontier = 0;
    while frontier < elements.len() {
        let g = elements[frontier].clone();
        frontier += 1;
        for s in &gens {
            let h = g.compose(s);
            let fresh = if S::EXACT {
                seen.insert(matrix_key(&h.matrix))
            } else {
                !elements.iter().any(|e| e.approx_eq(&h))
            };
            if fresh {
                elements.push(h);
                if elements.len() > cap {
                    return Err(DunklError::GroupTooLarge { cap });
                }
            }
        }
    }
    Ok(elements)
}

fn matrix_key<S: Scalar>(m: &Matrix<S>) -> Vec<ScalarKey> {
    m.data().iter().map(Scalar::key).collect()
}

/// An orbit of roots under G; identified by its lexicographically minimal
/// member.
#[derive(Clone, Debug)]
pub struct RootOrbit {
    pub id: usize,
    pub members: Vec<usize>,
    pub norm_sq: f64,
}

/// Orbits of R under G, ordered by (squared norm, minimal root): for B_N the
/// short roots ±e_i come first.
pub fn root_orbits<S: Scalar>(system: &RootSystem<S>, group: &[GroupElement<S>]) -> Vec<RootOrbit> {
    let n = system.roots().len();
    let mut assigned = vec![false; n];
    let mut orbits = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let mut members = Vec::new();
        for g in group {
            let img = Root::new(g.apply(system.roots()[i].coords())).unwrap();
            let j = system.index_of(&img).expect("group permutes roots");
            if !assigned[j] {
                assigned[j] = true;
                members.push(j);
            }
        }
        members.sort_unstable();
        let id = *members
            .iter()
            .min_by(|&&a, &&b| system.roots()[a].lex_cmp(&system.roots()[b]))
            .unwrap();
        orbits.push(RootOrbit {
            id,
            members,
            norm_sq: system.roots()[i].norm_sq().to_f64(),
        });
    }
    orbits.sort_by(|a, b| {
        a.norm_sq
            .partial_cmp(&b.norm_sq)
            .unwrap()
            .then_with(|| system.roots()[a.id].lex_cmp(&system.roots()[b.id]))
    });
    orbits
}

/// G-invariant, nonnegative multiplicity function: one value per root orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicityFunction {
    values: Vec<Rational>,
}

impl MultiplicityFunction {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| **v < Rational::from_integer(0.into())) {
            return Err(DunklError::Config(format!(
                "multiplicity values must be >= 0, got {}",
                format_rational(v)
            )));
        }
        Ok(MultiplicityFunction { values })
    }

    /// Builds the orbit-wise function from per-root values, rejecting
    /// assignments that differ inside one orbit. Roots missing from the map
    /// take the value of their orbit.
    pub fn from_root_values(orbits: &[RootOrbit], per_root: &HashMap<usize, Rational>) -> Result<Self> {
        let mut values = Vec::with_capacity(orbits.len());
        for orbit in orbits {
            let mut value: Option<&Rational> = None;
            for m in &orbit.members {
                if let Some(v) = per_root.get(m) {
                    match value {
                        Some(prev) if prev != v => {
                            return Err(DunklError::NonInvariantMultiplicity {
                                orbit: format!("root #{}", orbit.id),
                                detail: format!("{} vs {}", format_rational(prev), format_rational(v)),
                            })
                        }
                        _ => value = Some(v),
                    }
                }
            }
            let v = value.ok_or_else(|| {
                DunklError::Config(format!("no multiplicity given for orbit of root #{}", orbit.id))
            })?;
            values.push(v.clone());
        }
        Self::new(values)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// A root system together with its group, orbits, and multiplicity.
#[derive(Clone, Debug)]
pub struct RootSystemContext<S> {
    system: RootSystem<S>,
    group: Vec<GroupElement<S>>,
    orbits: Vec<RootOrbit>,
    orbit_of_root: Vec<usize>,
    mult: MultiplicityFunction,
    gamma: Rational,
    positive: Vec<PositiveRootData<S>>,
}

/// Per positive root data used by the operators.
#[derive(Clone, Debug)]
pub struct PositiveRootData<S> {
    pub root: Root<S>,
    pub reflection: Matrix<S>,
    pub k: S,
    pub k_rational: Rational,
}

pub type ExactContext = RootSystemContext<Rational>;
pub type FloatContext = RootSystemContext<f64>;

impl<S: Scalar> RootSystemContext<S> {
    pub fn new(system: RootSystem<S>, k: &[Rational]) -> Result<Self> {
        Self::with_cap(system, k, DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(system: RootSystem<S>, k: &[Rational], cap: usize) -> Result<Self> {
        let group = generate_group(&system, cap)?;
        let orbits = root_orbits(&system, &group);
        let values: Vec<Rational> = match k.len() {
            n if n == orbits.len() => k.to_vec(),
            1 => vec![k[0].clone(); orbits.len()],
            n => {
                return Err(DunklError::Config(format!(
                    "{} root orbits need {} multiplicity values (or one shared value), got {n}",
                    system.kind(),
                    orbits.len()
                )))
            }
        };
        let mult = MultiplicityFunction::new(values)?;
        Self::assemble(system, group, orbits, mult)
    }

    pub fn with_multiplicity(system: RootSystem<S>, mult: MultiplicityFunction) -> Result<Self> {
        let group = generate_group(&system, DEFAULT_GROUP_CAP)?;
        let orbits = root_orbits(&system, &group);
        if mult.values.len() != orbits.len() {
            return Err(DunklError::Config("multiplicity does not match orbit count".into()));
        }
        Self::assemble(system, group, orbits, mult)
    }

    fn assemble(
        system: RootSystem<S>,
        group: Vec<GroupElement<S>>,
        orbits: Vec<RootOrbit>,
        mult: MultiplicityFunction,
    ) -> Result<Self> {
        let mut orbit_of_root = vec![0; system.roots().len()];
        for (o, orbit) in orbits.iter().enumerate() {
            for &m in &orbit.members {
                orbit_of_root[m] = o;
            }
        }
        let mut gamma = Rational::from_integer(0.into());
        let mut positive = Vec::new();
        for &i in system.positive_indices() {
            let kq = mult.values[orbit_of_root[i]].clone();
            gamma += &kq;
            let root = system.roots()[i].clone();
            positive.push(PositiveRootData {
                reflection: root.reflection_matrix(),
                k: S::from_rational(&kq),
                k_rational: kq,
                root,
            });
        }
        Ok(RootSystemContext {
            system,
            group,
            orbits,
            orbit_of_root,
            mult,
            gamma,
            positive,
        })
    }

    pub fn system(&self) -> &RootSystem<S> {
        &self.system
    }

    pub fn dim(&self) -> usize {
        self.system.dim()
    }

    pub fn group(&self) -> &[GroupElement<S>] {
        &self.group
    }

    pub fn orbits(&self) -> &[RootOrbit] {
        &self.orbits
    }

    pub fn multiplicity(&self) -> &MultiplicityFunction {
        &self.mult
    }

    /// k(α) for the root with index `i` in `system().roots()`.
    pub fn k_of_root(&self, i: usize) -> &Rational {
        &self.mult.values[self.orbit_of_root[i]]
    }

    /// γ = Σ_{α∈R_+} k(α).
    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn gamma_f64(&self) -> f64 {
        self.gamma.to_f64()
    }

    pub fn positive(&self) -> &[PositiveRootData<S>] {
        &self.positive
    }

    pub fn is_k_zero(&self) -> bool {
        self.mult.values.iter().all(|v| *v == Rational::from_integer(0.into()))
    }

    /// The same system with a different multiplicity, reusing the group.
    pub fn with_k(&self, k: &[Rational]) -> Result<Self> {
        let values: Vec<Rational> = if k.len() == 1 {
            vec![k[0].clone(); self.orbits.len()]
        } else {
            k.to_vec()
        };
        if values.len() != self.orbits.len() {
            return Err(DunklError::Config("multiplicity does not match orbit count".into()));
        }
        let mult = MultiplicityFunction::new(values)?;
        Self::assemble(self.system.clone(), self.group.clone(), self.orbits.clone(), mult)
    }

    /// w_k(x) = ∏_{α∈R_+} |⟨α,x⟩|^{2k(α)} with roots normalized to ⟨α,α⟩ = 2.
    pub fn weight_w_k(&self, x: &[f64]) -> f64 {
        self.positive
            .iter()
            .map(|p| {
                let a = p.root.normalized_f64();
                let v: f64 = a.iter().zip(x).map(|(u, v)| u * v).sum();
                let k = p.k_rational.to_f64();
                if k == 0.0 {
                    1.0
                } else {
                    v.abs().powf(2.0 * k)
                }
            })
            .product()
    }

    /// Returns gα after asserting g σ_α g⁻¹ = σ_{gα} and gα ∈ R.
    pub fn check_conjugation(&self, g: &GroupElement<S>, alpha: &Root<S>) -> Result<Root<S>> {
        let galpha = Root::new(g.apply(alpha.coords()))?;
        if self.system.index_of(&galpha).is_none() {
            return Err(DunklError::Numerical("gα is not a root".into()));
        }
        let lhs = g
            .matrix
            .mul(&alpha.reflection_matrix())
            .mul(&g.inverse().matrix);
        if !lhs.approx_eq(&galpha.reflection_matrix()) {
            return Err(DunklError::Numerical(
                "g σ_α g⁻¹ differs from σ_{gα}".into(),
            ));
        }
        Ok(galpha)
    }

    /// Human-readable summary: order, orbits, γ, and the chamber walls.
    pub fn info(&self) -> GroupInfo {
        let fmt_root = |r: &Root<S>| -> String {
            let parts: Vec<String> = r.coords().iter().map(|c| c.to_string()).collect();
            format!("({})", parts.join(","))
        };
        GroupInfo {
            kind: self.system.kind().to_string(),
            dim: self.dim(),
            rank: self.system.rank(),
            roots: self.system.roots().len(),
            order: self.group.len(),
            gamma: format_rational(&self.gamma),
            orbits: self
                .orbits
                .iter()
                .zip(&self.mult.values)
                .map(|(o, k)| OrbitInfo {
                    representative: fmt_root(&self.system.roots()[o.id]),
                    size: o.members.len(),
                    k: format_rational(k),
                })
                .collect(),
            chamber_walls: self.system.simple_roots().into_iter().map(fmt_root).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupInfo {
    pub kind: String,
    pub dim: usize,
    pub rank: usize,
    pub roots: usize,
    pub order: usize,
    pub gamma: String,
    pub orbits: Vec<OrbitInfo>,
    /// Simple roots α: the chamber is {x : ⟨α,x⟩ > 0 for all of them}.
    pub chamber_walls: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitInfo {
    pub representative: String,
    pub size: usize,
    pub k: String,
}

/// JSON descriptor for custom rational root systems:
/// `{"roots": [["1","-1","0"], ...], "multiplicity": {"1,-1,0": "1/2"}}`.
/// Multiplicity keys are comma-separated coordinates of any root in the
/// orbit.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CustomRootSystemJson {
    pub roots: Vec<Vec<String>>,
    #[serde(default)]
    pub multiplicity: BTreeMap<String, String>,
}

impl CustomRootSystemJson {
    pub fn build(&self) -> Result<ExactContext> {
        let seeds = self
            .roots
            .iter()
            .map(|r| {
                let coords = r
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?;
                Root::new(coords)
            })
            .collect::<Result<Vec<_>>>()?;
        let system = RootSystem::from_roots(RootSystemKind::Custom, seeds)?;
        let group = generate_group(&system, DEFAULT_GROUP_CAP)?;
        let orbits = root_orbits(&system, &group);
        let mut per_root = HashMap::new();
        for (key, value) in &self.multiplicity {
            let coords = key
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?;
            let root = Root::new(coords)?;
            let idx = system
                .index_of(&root)
                .ok_or_else(|| DunklError::Config(format!("'{key}' is not a root")))?;
            per_root.insert(idx, parse_rational(value)?);
        }
        // spread each given value over its orbit before validating
        let mut expanded = HashMap::new();
        for orbit in &orbits {
            for m in &orbit.members {
                if let Some(v) = per_root.get(m) {
                    for n in &orbit.members {
                        if let Some(prev) = expanded.get(n) {
                            if prev != v {
                                return Err(DunklError::NonInvariantMultiplicity {
                                    orbit: format!("root #{}", orbit.id),
                                    detail: format!(
                                        "{} vs {}",
                                        format_rational(prev),
                                        format_rational(v)
                                    ),
                                });
                            }
                        }
                        expanded.insert(*n, v.clone());
                    }
                }
            }
        }
        let mult = MultiplicityFunction::from_root_values(&orbits, &expanded)?;
        RootSystemContext::assemble(system, group, orbits, mult)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_int, Rational};

    fn exact(kind: RootSystemKind, n: usize) -> RootSystem<Rational> {
        RootSystem::standard(kind, n).unwrap()
    }

    #[test]
    fn standard_sizes() {
        let a3 = exact(RootSystemKind::A, 3);
        assert_eq!(a3.roots().len(), 6);
        assert_eq!(a3.rank(), 2);
        assert_eq!(generate_group(&a3, DEFAULT_GROUP_CAP).unwrap().len(), 6);
        let b2 = exact(RootSystemKind::B, 2);
        assert_eq!(b2.roots().len(), 8);
        let ctx = ExactContext::new(b2, &[rat(1, 2), rat_int(1)]).unwrap();
        assert_eq!(ctx.group().len(), 8);
        assert_eq!(ctx.orbits().len(), 2);
        // short orbit first
        assert_eq!(ctx.orbits()[0].norm_sq, 1.0);
        assert_eq!(*ctx.gamma(), rat(1, 2) * rat_int(2) + rat_int(2));
        let a2 = exact(RootSystemKind::A, 2);
        assert_eq!(a2.roots().len(), 2);
        assert_eq!(a2.rank(), 1);
    }

    #[test]
    fn b3_and_single_pair() {
        let b3 = exact(RootSystemKind::B, 3);
        assert_eq!(generate_group(&b3, DEFAULT_GROUP_CAP).unwrap().len(), 48);
        let one = exact(RootSystemKind::RankOne, 1);
        assert_eq!(generate_group(&one, DEFAULT_GROUP_CAP).unwrap().len(), 2);
        assert!(matches!(
            generate_group(&b3, 10),
            Err(DunklError::GroupTooLarge { cap: 10 })
        ));
    }

    #[test]
    fn reflect_examples() {
        let alpha = Root::new(vec![rat_int(1), rat_int(-1)]).unwrap();
        assert_eq!(reflect(&alpha, &[rat_int(1), rat_int(0)]), vec![rat_int(0), rat_int(1)]);
        assert_eq!(reflect(&alpha, &[rat_int(2), rat_int(2)]), vec![rat_int(2), rat_int(2)]);
        assert_eq!(reflect(&alpha, alpha.coords()), alpha.neg().coords().to_vec());
        // float path with a normalized root
        let s = 0.5f64.sqrt();
        let af = Root::new(vec![s, -s]).unwrap();
        let y = reflect(&af, &[1.0, 0.0]);
        assert!((y[0]).abs() < 1e-15 && (y[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn conjugation_examples() {
        let ctx = ExactContext::new(exact(RootSystemKind::A, 3), &[rat_int(1)]).unwrap();
        let e12 = Root::new(vec![rat_int(1), rat_int(-1), rat_int(0)]).unwrap();
        let e23 = Root::new(vec![rat_int(0), rat_int(1), rat_int(-1)]).unwrap();
        let id = GroupElement::identity(3);
        assert_eq!(ctx.check_conjugation(&id, &e23).unwrap(), e23);
        let s = GroupElement {
            matrix: e12.reflection_matrix(),
            word_length: 1,
        };
        assert_eq!(ctx.check_conjugation(&s, &e12).unwrap(), e12.neg());
        assert_eq!(e12.neg().reflection_matrix(), e12.reflection_matrix());
        let img = ctx.check_conjugation(&s, &e23).unwrap();
        assert_eq!(img.coords(), &[rat_int(1), rat_int(0), rat_int(-1)]);
    }

    #[test]
    fn rank_one_weight() {
        let ctx = ExactContext::new(exact(RootSystemKind::RankOne, 1), &[rat(3, 4)]).unwrap();
        let x: f64 = -1.7;
        let expected = 2f64.powf(0.75) * x.abs().powf(1.5);
        assert!((ctx.weight_w_k(&[x]) - expected).abs() < 1e-14);
        assert_eq!(ctx.weight_w_k(&[0.0]), 0.0);
    }

    #[test]
    fn dihedral_needs_float_backend() {
        assert!(RootSystem::<Rational>::standard(RootSystemKind::Dihedral(5), 5).is_err());
        let i5 = RootSystem::<f64>::standard(RootSystemKind::Dihedral(5), 5).unwrap();
        let ctx = FloatContext::new(i5, &[rat_int(1)]).unwrap();
        assert_eq!(ctx.group().len(), 10);
        assert_eq!(ctx.orbits().len(), 1);
        let i6 = RootSystem::<f64>::standard(RootSystemKind::Dihedral(6), 6).unwrap();
        let ctx6 = FloatContext::new(i6, &[rat_int(1), rat(1, 2)]).unwrap();
        assert_eq!(ctx6.group().len(), 12);
        assert_eq!(ctx6.orbits().len(), 2);
    }

    #[test]
    fn rejects_negative_and_mismatched_k() {
        let b2 = exact(RootSystemKind::B, 2);
        assert!(ExactContext::new(b2.clone(), &[rat(-1, 2), rat_int(1)]).is_err());
        assert!(ExactContext::new(b2, &[rat_int(1), rat_int(1), rat_int(1)]).is_err());
    }

    #[test]
    fn custom_descriptor() {
        let js = r#"{"roots": [["1","-1","0"], ["0","1","-1"]], "multiplicity": {"1,0,-1": "1/2"}}"#;
        let desc: CustomRootSystemJson = serde_json::from_str(js).unwrap();
        let ctx = desc.build().unwrap();
        assert_eq!(ctx.system().roots().len(), 6);
        assert_eq!(ctx.group().len(), 6);
        assert_eq!(*ctx.gamma(), rat(3, 2));

        let bad = r#"{"roots": [["1","0"], ["0","1"]], "multiplicity": {"1,0": "1", "0,1": "2"}}"#;
        let desc: CustomRootSystemJson = serde_json::from_str(bad).unwrap();
        // ±e1 and ±e2 lie in different orbits of Z2 × Z2, so this is fine
        assert!(desc.build().is_ok());
        let bad = r#"{"roots": [["1","0"], ["1","1"]], "multiplicity": {"1,0": "1", "0,1": "2"}}"#;
        let desc: CustomRootSystemJson = serde_json::from_str(bad).unwrap();
        assert!(matches!(
            desc.build(),
            Err(DunklError::NonInvariantMultiplicity { .. })
        ));
    }

    #[test]
    fn info_lists_chamber() {
        let ctx = ExactContext::new(exact(RootSystemKind::B, 3), &[rat(1, 2), rat_int(1)]).unwrap();
        let info = ctx.info();
        assert_eq!(info.order, 48);
        assert_eq!(info.chamber_walls.len(), 3);
        assert_eq!(info.gamma, "15/2");
    }
}
