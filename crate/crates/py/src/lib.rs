//! Python bindings: the recursive field towers, order/bound tables, the
//! verification suite, integer factoring with a budget, and the Voloch
//! comparison, exposed as the `fieldtower` extension module.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fieldtower::orderengine::{
    self, bound_cubic, bound_quadratic, group_order_factored, multiplicative_order,
    DEFAULT_FACTOR_BUDGET,
};
use fieldtower::render;
use fieldtower::report::{self, CheckStatus};
use fieldtower::voloch;
use fieldtower::{make_field, Tower as CoreTower, TowerKind};

fn err(e: fieldtower::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_kind(kind: &str) -> PyResult<TowerKind> {
    match kind {
        "quadratic" => Ok(TowerKind::Quadratic),
        "cubic" => Ok(TowerKind::Cubic),
        other => Err(PyValueError::new_err(format!(
            "kind must be \"quadratic\" or \"cubic\", got {other:?}"
        ))),
    }
}

fn cell_dict<'py>(py: Python<'py>, c: &report::TableCell) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("value", c.value.clone())?;
    d.set_item("log2", &c.log2)?;
    d.set_item("exact", c.exact)?;
    Ok(d)
}

fn row_dict<'py>(py: Python<'py>, r: &report::TableRow) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("n", r.n)?;
    d.set_item("group", cell_dict(py, &r.group)?)?;
    d.set_item("gen", cell_dict(py, &r.gen)?)?;
    d.set_item("marked", cell_dict(py, &r.marked)?)?;
    d.set_item("bound", cell_dict(py, &r.bound)?)?;
    d.set_item("exceptional", r.exceptional)?;
    Ok(d)
}

/// A recursive field tower over GF(p^m) with its marked high-order
/// elements.
#[pyclass(name = "Tower")]
struct PyTower {
    inner: CoreTower,
}

impl PyTower {
    fn ensure_height(&mut self, n: u32) -> PyResult<()> {
        if self.inner.height() < n as usize {
            self.inner = self.inner.extend_to(n as usize).map_err(err)?;
        }
        Ok(())
    }
}

#[pymethods]
impl PyTower {
    /// Build a tower over GF(p^m). `modulus` and `starter` are coefficient
    /// lists (constant term first); omitting `starter` picks the smallest
    /// valid starting element.
    #[new]
    #[pyo3(signature = (p, m=1, kind="quadratic", modulus=None, starter=None))]
    fn new(
        p: u64,
        m: usize,
        kind: &str,
        modulus: Option<Vec<u64>>,
        starter: Option<Vec<u64>>,
    ) -> PyResult<Self> {
        let kind = parse_kind(kind)?;
        let field = make_field(p, m, modulus).map_err(err)?;
        let start = match starter {
            Some(c) => Some(field.element_from_coeffs(&c).map_err(err)?),
            None => None,
        };
        let inner = CoreTower::build(kind, field, start).map_err(err)?;
        Ok(PyTower { inner })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.base().p()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.base().m()
    }

    /// Base field size q = p^m.
    #[getter]
    fn q(&self) -> BigUint {
        self.inner.base().q().clone()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().name()
    }

    /// Extension step: 2 for the quadratic tower, 3 for the cubic one.
    #[getter]
    fn ell(&self) -> u64 {
        self.inner.kind().ell()
    }

    /// Size of the level-`n` field, q^(ell^n).
    fn field_size(&mut self, n: u32) -> PyResult<BigUint> {
        self.ensure_height(n)?;
        Ok(self.inner.field_size(n as usize))
    }

    /// Exact multiplicative order of the level-`n` generator, as
    /// `(order, exact)`. When the factoring budget runs out, `order` is a
    /// certified divisor of the true order and `exact` is False.
    #[pyo3(signature = (n, budget=DEFAULT_FACTOR_BUDGET))]
    fn generator_order(&mut self, n: u32, budget: u64) -> PyResult<(BigUint, bool)> {
        self.ensure_height(n)?;
        let g = group_order_factored(self.inner.base().q(), self.inner.kind().ell(), n, budget);
        let r = multiplicative_order(&self.inner, &self.inner.gen_at(n as usize), &g).map_err(err)?;
        Ok((r.order, r.exact))
    }

    /// Exact multiplicative order of the level-`n` marked element
    /// (gen^ell - 1), as `(order, exact)`.
    #[pyo3(signature = (n, budget=DEFAULT_FACTOR_BUDGET))]
    fn marked_order(&mut self, n: u32, budget: u64) -> PyResult<(BigUint, bool)> {
        self.ensure_height(n)?;
        let g = group_order_factored(self.inner.base().q(), self.inner.kind().ell(), n, budget);
        let r =
            multiplicative_order(&self.inner, &self.inner.marked_at(n as usize), &g).map_err(err)?;
        Ok((r.order, r.exact))
    }

    /// Theorem lower bound at level `n`:
    /// `{"exponent", "bound", "exceptional"}`.
    fn bound<'py>(&mut self, py: Python<'py>, n: u32) -> PyResult<Bound<'py, PyDict>> {
        self.ensure_height(n)?;
        let b = match self.inner.kind() {
            TowerKind::Quadratic => bound_quadratic(&self.inner, n),
            TowerKind::Cubic => bound_cubic(self.inner.base().q(), n),
        };
        let d = PyDict::new(py);
        d.set_item("exponent", b.exponent)?;
        d.set_item("bound", b.bound)?;
        d.set_item("exceptional", b.exceptional)?;
        Ok(d)
    }

    /// Order/bound table for levels 1..=n_max, one dict per row.
    #[pyo3(signature = (n_max, budget=DEFAULT_FACTOR_BUDGET, parallel=false))]
    fn table<'py>(
        &mut self,
        py: Python<'py>,
        n_max: u32,
        budget: u64,
        parallel: bool,
    ) -> PyResult<Vec<Bound<'py, PyDict>>> {
        self.ensure_height(n_max)?;
        let rows = report::table_rows(&self.inner, n_max, budget, parallel).map_err(err)?;
        rows.iter().map(|r| row_dict(py, r)).collect()
    }

    /// The same table rendered as CSV
    /// (`n,log2_group,log2_gen,log2_marked,log2_bound`).
    #[pyo3(signature = (n_max, budget=DEFAULT_FACTOR_BUDGET))]
    fn csv(&mut self, n_max: u32, budget: u64) -> PyResult<String> {
        self.ensure_height(n_max)?;
        let rows = report::table_rows(&self.inner, n_max, budget, false).map_err(err)?;
        Ok(report::rows_to_csv(&rows))
    }

    /// Norm identity at level `n` dropping `j` levels: the relative norm
    /// of the marked element equals a known scalar times the marked
    /// element below.
    fn norm_identity(&mut self, n: u32, j: u32) -> PyResult<bool> {
        self.ensure_height(n)?;
        report::norm_identity_holds(&self.inner, n, j).map_err(err)
    }

    /// Run the degree/norm/theorem verification suite up to `n_max`.
    /// Returns `(passed, lines)` where each line is
    /// `(status, name, detail)` with status one of "PASS"/"WARN"/"FAIL".
    #[pyo3(signature = (n_max, budget=DEFAULT_FACTOR_BUDGET, strict=false))]
    fn verify(
        &mut self,
        n_max: u32,
        budget: u64,
        strict: bool,
    ) -> PyResult<(bool, Vec<(String, String, String)>)> {
        self.ensure_height(n_max)?;
        let lines = report::verify_suite(&self.inner, n_max, budget).map_err(err)?;
        let passed = report::suite_passed(&lines, strict);
        let out = lines
            .into_iter()
            .map(|l| {
                let status = match l.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Warn => "WARN",
                    CheckStatus::Fail => "FAIL",
                };
                (status.to_string(), l.name, l.detail)
            })
            .collect();
        Ok((passed, out))
    }

    fn __repr__(&self) -> String {
        format!(
            "Tower(p={}, m={}, kind=\"{}\", height={})",
            self.inner.base().p(),
            self.inner.base().m(),
            self.inner.kind().name(),
            self.inner.height()
        )
    }
}

/// Factor `n` under an iteration budget. Returns
/// `{"factors": [(prime, exponent), ...], "cofactor", "complete"}`;
/// `cofactor` collects what the budget could not split.
#[pyfunction]
#[pyo3(signature = (n, budget=DEFAULT_FACTOR_BUDGET))]
fn factor<'py>(py: Python<'py>, n: BigUint, budget: u64) -> PyResult<Bound<'py, PyDict>> {
    let f = orderengine::factor_integer(&n, budget);
    let d = PyDict::new(py);
    d.set_item("factors", f.factors)?;
    d.set_item("cofactor", f.cofactor)?;
    d.set_item("complete", f.complete)?;
    Ok(d)
}

/// log2 of the Voloch-style lower bound on the order of `a - 1` for an
/// element `a` of degree `d` and low order, with parameters
/// `0 < epsilon <= 1`, `0 <= eta < 1`. The boundary values need
/// `bypass=True`.
#[pyfunction]
#[pyo3(signature = (d, epsilon=1.0, eta=0.0, bypass=true))]
fn voloch_bound(d: u64, epsilon: f64, eta: f64, bypass: bool) -> PyResult<f64> {
    voloch::voloch_bound(d, epsilon, eta, bypass)
        .map(|(_, log2)| log2)
        .map_err(err)
}

/// Compare the quadratic-tower bound against the Voloch bound for levels
/// 1..=n_max, where `ord` is the 2-adic valuation of q - 1. Returns
/// `{"rows": [{"n", "tower_log2", "voloch_log2", "tower_dominates"}],
///   "crossover"}` with `crossover` the last level the tower dominates.
#[pyfunction]
#[pyo3(signature = (ord, epsilon=1.0, eta=0.0, bypass=true, n_max=16))]
fn crossover<'py>(
    py: Python<'py>,
    ord: u32,
    epsilon: f64,
    eta: f64,
    bypass: bool,
    n_max: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let t = voloch::crossover_compare(ord, epsilon, eta, bypass, n_max).map_err(err)?;
    let rows: Vec<_> = t
        .rows
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("n", r.n)?;
            d.set_item("tower_log2", r.tower_log2)?;
            d.set_item("voloch_log2", r.voloch_log2)?;
            d.set_item("tower_dominates", r.tower_dominates)?;
            Ok(d)
        })
        .collect::<PyResult<_>>()?;
    let d = PyDict::new(py);
    d.set_item("rows", rows)?;
    d.set_item("crossover", t.crossover)?;
    Ok(d)
}

/// Render log2 of a positive integer the way the reference tables do:
/// a 10-bit significand rounded to three significant figures.
#[pyfunction]
fn render_log2(n: BigUint) -> String {
    render::render_log2(&n)
}

#[pymodule(name = "fieldtower")]
fn module_init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTower>()?;
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add_function(wrap_pyfunction!(voloch_bound, m)?)?;
    m.add_function(wrap_pyfunction!(crossover, m)?)?;
    m.add_function(wrap_pyfunction!(render_log2, m)?)?;
    m.add("DEFAULT_FACTOR_BUDGET", DEFAULT_FACTOR_BUDGET)?;
    Ok(())
}
