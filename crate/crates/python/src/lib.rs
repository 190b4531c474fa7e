use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use dunkl::asymptotics::AsymptoticProbe;
use dunkl::dunkl_calculus::{fischer_pair, OperatorExpr};
use dunkl::hermite::HermiteSystem;
use dunkl::intertwiner::IntertwinerTable;
use dunkl::kernel::{KernelFn, RankOneKernel, SeriesKernel};
use dunkl::polynomial::{Monomial, MultiPoly};
use dunkl::quadrature::{c_k_closed_form, gaussian_wk_rule, lebesgue_wk_rule};
use dunkl::root_system::{ExactContext, FloatContext};
use dunkl::scalar::{format_rational, parse_rational, Rational};
use dunkl::transform_heat::{HeatKernel, TransformPlan, DEFAULT_NODES, DEFAULT_RADIUS};
use dunkl::verify::{self, GroupSpec, Suite, VerifyConfig};
use dunkl::DunklError;

fn to_py(e: DunklError) -> PyErr {
    let msg = format!("[{}] {e}", e.origin());
    if e.is_config() || matches!(e, DunklError::Unsupported(_) | DunklError::DimensionMismatch { .. }) {
        PyValueError::new_err(msg)
    } else {
        PyRuntimeError::new_err(msg)
    }
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn parse_k(k: &str) -> PyResult<Vec<Rational>> {
    k.split(',').map(|s| parse_rational(s.trim())).collect::<dunkl::Result<_>>().map_err(to_py)
}

/// A root system with a multiplicity function, e.g. `RootSystem("B2", "1/2,1")`.
#[pyclass(frozen)]
struct RootSystem {
    spec: GroupSpec,
    k: Vec<Rational>,
    float: FloatContext,
    exact: Option<ExactContext>,
}

impl RootSystem {
    fn exact(&self) -> PyResult<&ExactContext> {
        self.exact
            .as_ref()
            .ok_or_else(|| PyValueError::new_err(format!("{} has irrational roots; exact operations are unavailable", self.spec)))
    }

    fn rank_one_k(&self) -> PyResult<f64> {
        if !self.spec.is_rank_one() {
            return Err(PyValueError::new_err("this operation runs in rank one only"));
        }
        Ok(dunkl::scalar::rational_to_f64(&self.k[0]))
    }
}

#[pymethods]
impl RootSystem {
    #[new]
    #[pyo3(signature = (group, k = "1/2"))]
    fn new(group: &str, k: &str) -> PyResult<Self> {
        let spec = GroupSpec::parse(group).map_err(to_py)?;
        let k = parse_k(k)?;
        let float = spec.context::<f64>(&k).map_err(to_py)?;
        let exact = if spec.exact() { Some(spec.context::<Rational>(&k).map_err(to_py)?) } else { None };
        Ok(RootSystem { spec, k, float, exact })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.float.dim()
    }

    #[getter]
    fn order(&self) -> usize {
        self.float.group().len()
    }

    /// γ = Σ_{α∈R₊} k(α), as an exact rational string.
    #[getter]
    fn gamma(&self) -> String {
        format_rational(self.float.gamma())
    }

    #[getter]
    fn k(&self) -> Vec<String> {
        self.k.iter().map(format_rational).collect()
    }

    /// c_k = ∫e^{−|x|²/2}w_k(x)dx when a closed form is known.
    fn c_k(&self) -> Option<f64> {
        c_k_closed_form(&self.float)
    }

    fn weight(&self, x: Vec<f64>) -> f64 {
        self.float.weight_w_k(&x)
    }

    fn info<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let info = match &self.exact {
            Some(c) => c.info(),
            None => self.float.info(),
        };
        json_to_py(py, &serde_json::to_value(info).expect("serializable"))
    }

    /// Applies an operator expression ("T(e1)", "Delta", "exp(-Delta/2)", ...)
    /// to a polynomial in x1..xN; returns the exact result as text.
    fn apply(&self, op: &str, poly: &str) -> PyResult<String> {
        let ctx = self.exact()?;
        let p = MultiPoly::parse(poly, ctx.dim()).map_err(to_py)?;
        let expr = OperatorExpr::parse(op, ctx).map_err(to_py)?;
        Ok(expr.apply(ctx, &p).map_err(to_py)?.to_text())
    }

    /// [p, q]_k = (p(T)q)(0) as an exact rational string.
    fn pair(&self, p: &str, q: &str) -> PyResult<String> {
        let ctx = self.exact()?;
        let p = MultiPoly::parse(p, ctx.dim()).map_err(to_py)?;
        let q = MultiPoly::parse(q, ctx.dim()).map_err(to_py)?;
        Ok(format_rational(&fischer_pair(ctx, &p, &q).map_err(to_py)?))
    }

    fn intertwine(&self, poly: &str) -> PyResult<String> {
        let ctx = self.exact()?;
        let p = MultiPoly::parse(poly, ctx.dim()).map_err(to_py)?;
        let table = IntertwinerTable::build(ctx, p.degree().unwrap_or(0).max(1)).map_err(to_py)?;
        Ok(table.apply(&p).map_err(to_py)?.to_text())
    }

    /// (φ_ν, [φ_ν, φ_ν]_k, H_ν) for the multi-index ν.
    fn hermite(&self, nu: Vec<u16>) -> PyResult<(String, String, String)> {
        let ctx = self.exact()?;
        if nu.len() != ctx.dim() {
            return Err(PyValueError::new_err(format!("ν needs {} entries", ctx.dim())));
        }
        let m = Monomial::from_exponents(&nu);
        let sys = HermiteSystem::build(ctx, m.degree()).map_err(to_py)?;
        let e = sys.find(&m).ok_or_else(|| PyValueError::new_err("no Hermite polynomial for this index"))?;
        Ok((e.phi.to_text(), format_rational(&e.norm_sq), e.h.to_text()))
    }

    /// E_k(x, y), or E_k(x, iy) with `imag=True`.
    #[pyo3(signature = (x, y, imag = false, truncation = 40))]
    fn kernel(&self, x: Vec<f64>, y: Vec<f64>, imag: bool, truncation: usize) -> PyResult<Complex64> {
        let yc: Vec<Complex64> = y
            .iter()
            .map(|&v| if imag { Complex64::new(0.0, v) } else { Complex64::new(v, 0.0) })
            .collect();
        let ev: Box<dyn KernelFn> = if self.spec.is_rank_one() {
            Box::new(RankOneKernel::new(dunkl::scalar::rational_to_f64(&self.k[0])))
        } else {
            Box::new(SeriesKernel::new(&self.float, truncation).map_err(to_py)?)
        };
        Ok(ev.eval_e(&x, &yc).map_err(to_py)?.value)
    }

    /// Nodes and weights of the Gaussian rule for e^{−|x|²/2}w_k, or of the
    /// truncated Lebesgue rule for w_k on [−radius, radius] (rank one).
    #[pyo3(signature = (nodes = 40, measure = "gaussian", radius = 10.0))]
    fn quadrature(&self, nodes: usize, measure: &str, radius: f64) -> PyResult<(Vec<Vec<f64>>, Vec<f64>)> {
        let rule = match measure {
            "gaussian" => gaussian_wk_rule(&self.float, nodes),
            "lebesgue" => lebesgue_wk_rule(&self.float, radius, nodes),
            other => return Err(PyValueError::new_err(format!("unknown measure {other:?}"))),
        }
        .map_err(to_py)?;
        Ok((rule.nodes, rule.weights))
    }

    /// Rank-one heat kernel Γ_k(t, x, y).
    fn heat_kernel(&self, t: f64, x: f64, y: f64) -> PyResult<f64> {
        let k = self.rank_one_k()?;
        let ker = RankOneKernel::new(k);
        let hk = HeatKernel::new(&self.float, &ker, c_k_closed_form(&self.float).expect("rank one"));
        hk.eval(t, &[x], &[y]).map_err(to_py)
    }

    /// Rank-one Dunkl transform of e^{−x²/2}·p(x) for a polynomial p.
    #[pyo3(signature = (xi, poly = "1", nodes = DEFAULT_NODES))]
    fn transform(&self, xi: f64, poly: &str, nodes: usize) -> PyResult<(Complex64, f64)> {
        self.rank_one_k()?;
        let p = MultiPoly::<Rational>::parse(poly, 1).map_err(to_py)?.to_f64();
        let plan = TransformPlan::new(&self.float, DEFAULT_RADIUS, nodes).map_err(to_py)?;
        let f = move |x: &[f64]| Complex64::new(p.eval_f64(x) * (-x[0] * x[0] / 2.0).exp(), 0.0);
        let v = plan.transform(&f, xi).map_err(to_py)?;
        Ok((v.value, v.boundary))
    }

    /// Rows (t, value, error) of t^γ e^{−itxy}E_k(itx, y) against its limit.
    fn ray_probe(&self, x: f64, y: f64, ts: Vec<f64>) -> PyResult<Vec<(f64, Complex64, f64)>> {
        self.rank_one_k()?;
        let probe = AsymptoticProbe::new(&self.float).map_err(to_py)?;
        let rows = probe.ray_limit_probe(x, y, &ts).map_err(to_py)?;
        Ok(rows.into_iter().map(|r| (r.t, r.value, r.error)).collect())
    }

    fn __repr__(&self) -> String {
        format!("RootSystem({:?}, {:?})", self.spec.label(), self.k().join(","))
    }
}

/// Runs a verification suite and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (suite = "all", seed = 7, group = None, k = None, max_degree = 6))]
fn run_verify<'py>(
    py: Python<'py>,
    suite: &str,
    seed: u64,
    group: Option<&str>,
    k: Option<&str>,
    max_degree: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().map_err(to_py)?;
    let cfg = VerifyConfig {
        seed,
        max_degree,
        group: group.map(GroupSpec::parse).transpose().map_err(to_py)?,
        k: k.map(parse_k).transpose()?,
        ..VerifyConfig::default()
    };
    let reports = py.detach(|| verify::run_suite(suite, &cfg)).map_err(to_py)?;
    let pass = reports.iter().all(|r| r.passed());
    json_to_py(py, &serde_json::json!({ "seed": seed, "pass": pass, "reports": reports }))
}

#[pymodule]
fn pydunkl(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<RootSystem>()?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
