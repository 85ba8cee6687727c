//! Python bindings: thin wrappers over the atom, stack, and potential types.
//! Enum-like choices are strings matching the CLI config words; all numbers
//! are SI. Bad inputs raise ValueError, quadrature failures RuntimeError.

use std::path::PathBuf;

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use cpshield::constants::{
    C_LIGHT, DEGENERACY_DEFAULT, D_LAYER_DEFAULT, EV, GAMMA_HOP_DEFAULT, GOLD_GAMMA_E,
    GOLD_OMEGA_PE, HBAR, V_FERMI_DEFAULT,
};
use cpshield::{
    fresnel_substrate, load_atom_fixture, nonresonant_potential, polarizability_imag,
    resonant_potential, sheet_alpha, stack_reflection, total_potential, AtomModel, LayerStack,
    Mode, QuadratureSpec, SheetResponse, SubstrateModel, SweepAxis, Transition,
};

fn to_py(e: cpshield::Error) -> PyErr {
    use cpshield::Error::*;
    match e {
        Domain(_) | InvalidInput(_) | FixtureParse { .. } => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn parse_mode(word: &str) -> PyResult<Mode> {
    match word {
        "retarded" => Ok(Mode::RetardedKernel),
        "nonretarded" => Ok(Mode::FullyNonretarded),
        other => Err(PyValueError::new_err(format!(
            "mode must be retarded or nonretarded, got {other:?}"
        ))),
    }
}

/// Atomic transition data loaded from a fixture file or given inline.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Atom {
    inner: AtomModel,
}

#[pymethods]
impl Atom {
    #[new]
    fn new(name: &str, state: &str, transitions: Vec<(f64, f64)>) -> PyResult<Self> {
        let transitions = transitions
            .into_iter()
            .map(|(omega, d2)| Transition { omega, d2 })
            .collect();
        let inner = AtomModel::new(name, state, transitions).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_fixture(path: PathBuf) -> PyResult<Self> {
        let file = std::fs::File::open(&path)?;
        let inner = load_atom_fixture(file).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn state(&self) -> &str {
        self.inner.state()
    }

    /// Transitions as (omega rad/s, dipole^2 C^2 m^2) pairs.
    fn transitions(&self) -> Vec<(f64, f64)> {
        self.inner
            .transitions()
            .iter()
            .map(|t| (t.omega, t.d2))
            .collect()
    }

    /// Isotropic polarizability on the imaginary axis, C^2 m^2 / J.
    fn polarizability_imag(&self, xi: f64) -> f64 {
        polarizability_imag(&self.inner, xi)
    }

    fn __repr__(&self) -> String {
        format!(
            "Atom({} {}, {} transitions)",
            self.inner.name(),
            self.inner.state(),
            self.inner.transitions().len()
        )
    }
}

/// In-plane response model of the conducting sheet.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Sheet {
    inner: SheetResponse,
}

#[pymethods]
impl Sheet {
    #[staticmethod]
    #[pyo3(signature = (v_fermi=V_FERMI_DEFAULT, degeneracy=DEGENERACY_DEFAULT))]
    fn undoped(v_fermi: f64, degeneracy: f64) -> PyResult<Self> {
        let inner = SheetResponse::undoped(v_fermi, degeneracy).map_err(to_py)?;
        Ok(Self { inner })
    }

    /// Doped sheet with carrier density `doping` per m^2.
    #[staticmethod]
    #[pyo3(signature = (doping, v_fermi=V_FERMI_DEFAULT, degeneracy=DEGENERACY_DEFAULT))]
    fn doped(doping: f64, v_fermi: f64, degeneracy: f64) -> PyResult<Self> {
        let inner = SheetResponse::doped(doping, v_fermi, degeneracy).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (gamma_hop=GAMMA_HOP_DEFAULT, d_layer=D_LAYER_DEFAULT, v_fermi=V_FERMI_DEFAULT))]
    fn bilayer(gamma_hop: f64, d_layer: f64, v_fermi: f64) -> PyResult<Self> {
        let inner = SheetResponse::bilayer(gamma_hop, d_layer, v_fermi).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn perfect() -> Self {
        Self {
            inner: SheetResponse::perfect(),
        }
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind_name()
    }

    /// Dimensionless sheet polarizability alpha(k, i xi).
    fn alpha(&self, k: f64, xi: f64) -> PyResult<f64> {
        sheet_alpha(&self.inner, k, xi).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Sheet({})", self.inner.kind_name())
    }
}

/// Half-space below the gap.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Substrate {
    inner: SubstrateModel,
}

#[pymethods]
impl Substrate {
    #[staticmethod]
    fn vacuum() -> Self {
        Self {
            inner: SubstrateModel::Vacuum,
        }
    }

    #[staticmethod]
    fn perfect_conductor() -> Self {
        Self {
            inner: SubstrateModel::PerfectConductor,
        }
    }

    #[staticmethod]
    fn gold() -> Self {
        Self {
            inner: SubstrateModel::gold(),
        }
    }

    #[staticmethod]
    fn drude(omega_pe: f64, gamma_e: f64) -> PyResult<Self> {
        let inner = SubstrateModel::drude(omega_pe, gamma_e).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind_name()
    }

    /// Bare-substrate Fresnel pair (r_tm, r_te) at (k, i xi).
    fn fresnel(&self, k: f64, xi: f64) -> PyResult<(f64, f64)> {
        let r = fresnel_substrate(&self.inner, k, xi).map_err(to_py)?;
        Ok((r.r_tm, r.r_te))
    }

    fn __repr__(&self) -> String {
        format!("Substrate({})", self.inner.kind_name())
    }
}

/// Optional sheet suspended a gap above a substrate.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Stack {
    inner: LayerStack,
}

#[pymethods]
impl Stack {
    #[new]
    #[pyo3(signature = (sheet=None, gap=0.0, substrate=None))]
    fn new(sheet: Option<&Sheet>, gap: f64, substrate: Option<&Substrate>) -> PyResult<Self> {
        let substrate = substrate.map_or(SubstrateModel::Vacuum, |s| s.inner.clone());
        let inner = LayerStack::new(sheet.map(|s| s.inner.clone()), gap, substrate).map_err(to_py)?;
        Ok(Self { inner })
    }

    /// Composite reflection pair (r_tm, r_te) at (k, i xi).
    fn reflection(&self, k: f64, xi: f64) -> PyResult<(f64, f64)> {
        let r = stack_reflection(&self.inner, k, xi).map_err(to_py)?;
        Ok((r.r_tm, r.r_te))
    }

    #[getter]
    fn gap(&self) -> f64 {
        self.inner.gap_d()
    }

    fn __repr__(&self) -> String {
        format!(
            "Stack(sheet={}, gap={:e}, substrate={})",
            self.inner.sheet().map_or("none", |s| s.kind_name()),
            self.inner.gap_d(),
            self.inner.substrate().kind_name()
        )
    }
}

/// Potential split into its parts; rates in rad/s, energy in joules.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct PotentialResult {
    #[pyo3(get)]
    u_over_hbar: f64,
    #[pyo3(get)]
    u_joule: f64,
    #[pyo3(get)]
    nonresonant: f64,
    #[pyo3(get)]
    resonant: f64,
    #[pyo3(get)]
    err_estimate: f64,
}

impl From<cpshield::PotentialResult> for PotentialResult {
    fn from(r: cpshield::PotentialResult) -> Self {
        Self {
            u_over_hbar: r.u_over_hbar,
            u_joule: r.u_joule,
            nonresonant: r.nonresonant,
            resonant: r.resonant,
            err_estimate: r.err_estimate,
        }
    }
}

#[pymethods]
impl PotentialResult {
    fn __repr__(&self) -> String {
        format!(
            "PotentialResult(u_over_hbar={:e}, nonresonant={:e}, resonant={:e}, err={:e})",
            self.u_over_hbar, self.nonresonant, self.resonant, self.err_estimate
        )
    }
}

/// One evaluation request: an atom at height `z_a` above a stack.
#[pyclass]
struct Scenario {
    inner: cpshield::Scenario,
}

#[pymethods]
impl Scenario {
    #[new]
    #[pyo3(signature = (atom, stack, z_a, mode="retarded", rel_tol=None, max_refinements=None))]
    fn new(
        atom: &Atom,
        stack: &Stack,
        z_a: f64,
        mode: &str,
        rel_tol: Option<f64>,
        max_refinements: Option<usize>,
    ) -> PyResult<Self> {
        let mut quad = QuadratureSpec::default();
        if let Some(t) = rel_tol {
            quad.rel_tol = t;
        }
        if let Some(n) = max_refinements {
            quad.max_refinements = n;
        }
        let inner = cpshield::Scenario::new(atom.inner.clone(), stack.inner.clone(), z_a)
            .map_err(to_py)?
            .with_quad(quad)
            .with_mode(parse_mode(mode)?);
        inner.validate().map_err(to_py)?;
        Ok(Self { inner })
    }

    fn total(&self) -> PyResult<PotentialResult> {
        total_potential(&self.inner).map(Into::into).map_err(to_py)
    }

    fn nonresonant(&self) -> PyResult<PotentialResult> {
        nonresonant_potential(&self.inner)
            .map(Into::into)
            .map_err(to_py)
    }

    fn resonant(&self) -> PyResult<PotentialResult> {
        resonant_potential(&self.inner)
            .map(Into::into)
            .map_err(to_py)
    }

    #[getter]
    fn z_a(&self) -> f64 {
        self.inner.z_a
    }

    fn __repr__(&self) -> String {
        format!(
            "Scenario({} {} at z_a={:e})",
            self.inner.atom.name(),
            self.inner.atom.state(),
            self.inner.z_a
        )
    }
}

/// One sweep point; `result` is None and `error` set when the row failed.
#[pyclass]
struct SweepPoint {
    #[pyo3(get)]
    axis_value: f64,
    #[pyo3(get)]
    result: Option<PotentialResult>,
    #[pyo3(get)]
    ratio: Option<f64>,
    #[pyo3(get)]
    error: Option<String>,
}

#[pymethods]
impl SweepPoint {
    fn __repr__(&self) -> String {
        match (&self.result, &self.error) {
            (Some(r), _) => format!(
                "SweepPoint({:e} -> {:e})",
                self.axis_value, r.u_over_hbar
            ),
            (None, Some(e)) => format!("SweepPoint({:e} failed: {e})", self.axis_value),
            (None, None) => format!("SweepPoint({:e})", self.axis_value),
        }
    }
}

/// Evaluate `scenario` over a grid of one axis: "z_a", "gap", or "doping".
#[pyfunction]
fn sweep(scenario: &Scenario, axis: &str, grid: Vec<f64>) -> PyResult<Vec<SweepPoint>> {
    let axis = match axis {
        "z_a" => SweepAxis::AtomHeight,
        "gap" => SweepAxis::GapWidth,
        "doping" => SweepAxis::Doping,
        other => {
            return Err(PyValueError::new_err(format!(
                "axis must be z_a, gap, or doping, got {other:?}"
            )))
        }
    };
    let rows = cpshield::sweep(&scenario.inner, axis, &grid).map_err(to_py)?;
    Ok(rows
        .into_iter()
        .map(|row| match row.result {
            Ok(r) => SweepPoint {
                axis_value: row.axis_value,
                result: Some(r.into()),
                ratio: row.ratio,
                error: None,
            },
            Err(e) => SweepPoint {
                axis_value: row.axis_value,
                result: None,
                ratio: None,
                error: Some(e.to_string()),
            },
        })
        .collect())
}

/// Composite-over-alone potential ratio for a sheet at `gap` above `substrate`.
#[pyfunction]
fn shielding_ratio(
    atom: &Atom,
    sheet: &Sheet,
    substrate: &Substrate,
    z_a: f64,
    gap: f64,
) -> PyResult<f64> {
    cpshield::shielding_ratio(&atom.inner, &sheet.inner, &substrate.inner, z_a, gap)
        .map_err(to_py)
}

/// Undoped-sheet density response chi(k, i xi), 1/(J m^2).
#[pyfunction]
#[pyo3(signature = (k, xi, v_fermi=V_FERMI_DEFAULT, degeneracy=DEGENERACY_DEFAULT))]
fn chi_undoped(k: f64, xi: f64, v_fermi: f64, degeneracy: f64) -> PyResult<f64> {
    cpshield::chi_undoped(k, xi, v_fermi, degeneracy).map_err(to_py)
}

/// Doped-sheet density response chi(k, i xi), 1/(J m^2).
#[pyfunction]
#[pyo3(signature = (k, xi, doping, v_fermi=V_FERMI_DEFAULT, degeneracy=DEGENERACY_DEFAULT))]
fn chi_doped(k: f64, xi: f64, doping: f64, v_fermi: f64, degeneracy: f64) -> PyResult<f64> {
    cpshield::chi_doped(k, xi, doping, v_fermi, degeneracy).map_err(to_py)
}

/// Dimensionless doped-response kernel f(k_tilde, i xi_tilde).
#[pyfunction]
fn f_doped(k_tilde: f64, xi_tilde: f64) -> Complex64 {
    cpshield::f_doped(k_tilde, xi_tilde)
}

/// Bilayer in-plane conductivity at real frequency, siemens.
#[pyfunction]
#[pyo3(signature = (omega, gamma_hop=GAMMA_HOP_DEFAULT))]
fn bilayer_sigma_xx(omega: f64, gamma_hop: f64) -> PyResult<f64> {
    cpshield::bilayer_sigma_xx(omega, gamma_hop).map_err(to_py)
}

/// Bilayer out-of-plane conductivity at real frequency, siemens.
#[pyfunction]
#[pyo3(signature = (omega, gamma_hop=GAMMA_HOP_DEFAULT, d_layer=D_LAYER_DEFAULT, v_fermi=V_FERMI_DEFAULT))]
fn bilayer_sigma_zz(omega: f64, gamma_hop: f64, d_layer: f64, v_fermi: f64) -> PyResult<f64> {
    cpshield::bilayer_sigma_zz(omega, gamma_hop, d_layer, v_fermi).map_err(to_py)
}

#[pymodule]
fn cpshield_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Atom>()?;
    m.add_class::<Sheet>()?;
    m.add_class::<Substrate>()?;
    m.add_class::<Stack>()?;
    m.add_class::<Scenario>()?;
    m.add_class::<PotentialResult>()?;
    m.add_class::<SweepPoint>()?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(shielding_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(chi_undoped, m)?)?;
    m.add_function(wrap_pyfunction!(chi_doped, m)?)?;
    m.add_function(wrap_pyfunction!(f_doped, m)?)?;
    m.add_function(wrap_pyfunction!(bilayer_sigma_xx, m)?)?;
    m.add_function(wrap_pyfunction!(bilayer_sigma_zz, m)?)?;
    m.add("HBAR", HBAR)?;
    m.add("C_LIGHT", C_LIGHT)?;
    m.add("EV", EV)?;
    m.add("V_FERMI_DEFAULT", V_FERMI_DEFAULT)?;
    m.add("DEGENERACY_DEFAULT", DEGENERACY_DEFAULT)?;
    m.add("GAMMA_HOP_DEFAULT", GAMMA_HOP_DEFAULT)?;
    m.add("D_LAYER_DEFAULT", D_LAYER_DEFAULT)?;
    m.add("GOLD_OMEGA_PE", GOLD_OMEGA_PE)?;
    m.add("GOLD_GAMMA_E", GOLD_GAMMA_E)?;
    Ok(())
}
