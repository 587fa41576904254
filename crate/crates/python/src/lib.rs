//! Python bindings: abelian groups and their homomorphisms, pointed sets,
//! the snake lemma, cohomology of complexes and axiom checks.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;

use exactcat::axioms::{verify_exhaustive, verify_sampled, Axiom, ExhaustiveConfig, Outcome};
use exactcat::chain::AdmissibleComplex;
use exactcat::engine::exact::check_long_exact_auto;
use exactcat::engine::snake::{snake as run_snake, SnakeDiagram};
use exactcat::gen::FgabGen;
use exactcat::{AbMorphism, Category, CategoryExt, DeflationClass, Fgab, FpAbelianGroup, IntMatrix, PointedMap, PointedSets};

create_exception!(exactcat, HypothesisError, PyValueError, "The input violates a hypothesis of the construction.");
create_exception!(exactcat, ConclusionError, PyValueError, "A construction produced data failing its own check.");

fn to_py(e: exactcat::Error) -> PyErr {
    match e {
        exactcat::Error::Hypothesis(_) | exactcat::Error::Precondition(_) => HypothesisError::new_err(e.to_string()),
        exactcat::Error::Conclusion(_) => ConclusionError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn matrix_from_rows(rows: usize, cols: usize, data: Vec<Vec<BigInt>>) -> PyResult<IntMatrix> {
    if rows > 0 && data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err(format!("expected a {rows}x{cols} matrix")));
    }
    Ok(IntMatrix::from_vec(rows, cols, data.into_iter().flatten().collect()))
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i)).collect()
}

/// A finitely presented abelian group `Z^gens / colspan(relations)`.
#[pyclass(name = "Group", module = "exactcat", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
struct PyGroup(FpAbelianGroup);

#[pymethods]
impl PyGroup {
    /// `relations` is a list of `gens` rows of equal length.
    #[new]
    #[pyo3(signature = (gens, relations = Vec::new()))]
    fn new(gens: usize, relations: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let cols = relations.first().map_or(0, |r| r.len());
        let m = matrix_from_rows(gens, cols, relations)?;
        FpAbelianGroup::new(gens, m).map(PyGroup).map_err(to_py)
    }

    #[staticmethod]
    fn free(rank: usize) -> Self {
        PyGroup(FpAbelianGroup::free(rank))
    }

    #[staticmethod]
    fn cyclic(n: i64) -> Self {
        PyGroup(FpAbelianGroup::cyclic(n))
    }

    #[staticmethod]
    fn zero() -> Self {
        PyGroup(FpAbelianGroup::zero())
    }

    #[getter]
    fn gens(&self) -> usize {
        self.0.gens()
    }

    #[getter]
    fn relations(&self) -> Vec<Vec<BigInt>> {
        matrix_rows(self.0.relations())
    }

    /// `(free_rank, [d1, d2, ...])` with `d1 | d2 | ...`.
    fn invariants(&self) -> (usize, Vec<BigInt>) {
        let inv = self.0.invariants();
        (inv.free_rank, inv.torsion)
    }

    fn is_trivial(&self) -> bool {
        self.0.is_trivial()
    }

    fn identity(&self) -> PyMorphism {
        PyMorphism(Fgab.identity(&self.0))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Group({})", self.0)
    }
}

/// A homomorphism given by a matrix on generators.
#[pyclass(name = "Morphism", module = "exactcat", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMorphism(AbMorphism);

#[pymethods]
impl PyMorphism {
    /// `matrix` has one row per generator of the target.
    #[new]
    fn new(source: &PyGroup, target: &PyGroup, matrix: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let m = matrix_from_rows(target.0.gens(), source.0.gens(), matrix)?;
        AbMorphism::new(source.0.clone(), target.0.clone(), m).map(PyMorphism).map_err(to_py)
    }

    #[getter]
    fn source(&self) -> PyGroup {
        PyGroup(self.0.source().clone())
    }

    #[getter]
    fn target(&self) -> PyGroup {
        PyGroup(self.0.target().clone())
    }

    #[getter]
    fn matrix(&self) -> Vec<Vec<BigInt>> {
        matrix_rows(self.0.matrix())
    }

    /// `self ∘ other`.
    fn compose(&self, other: &PyMorphism) -> PyResult<PyMorphism> {
        Fgab.compose(&self.0, &other.0).map(PyMorphism).map_err(to_py)
    }

    fn __matmul__(&self, other: &PyMorphism) -> PyResult<PyMorphism> {
        self.compose(other)
    }

    fn __eq__(&self, other: &PyMorphism) -> bool {
        Fgab.equal(&self.0, &other.0)
    }

    fn is_zero(&self) -> bool {
        Fgab.is_zero(&self.0)
    }

    fn is_iso(&self) -> bool {
        Fgab.is_iso(&self.0)
    }

    fn is_deflation(&self) -> bool {
        Fgab.is_deflation(&self.0)
    }

    fn is_inflation(&self) -> bool {
        Fgab.is_inflation(&self.0)
    }

    /// The inclusion of the kernel.
    fn kernel(&self) -> PyResult<PyMorphism> {
        Fgab.kernel(&self.0).map(|k| PyMorphism(k.inclusion)).map_err(to_py)
    }

    /// The projection onto the cokernel.
    fn cokernel(&self) -> PyResult<PyMorphism> {
        Fgab.cokernel(&self.0).map(|c| PyMorphism(c.projection)).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Morphism({} -> {}, {:?})", self.0.source(), self.0.target(), matrix_rows(self.0.matrix()))
    }
}

/// A map of finite pointed sets `{0, ..., n-1}` based at 0.
#[pyclass(name = "PointedMap", module = "exactcat", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
struct PyPointedMap(PointedMap);

const POINTED: PointedSets = PointedSets { class: DeflationClass::KernelCollapse };

#[pymethods]
impl PyPointedMap {
    #[new]
    fn new(source: usize, target: usize, table: Vec<usize>) -> PyResult<Self> {
        POINTED.map(source, target, &table).map(PyPointedMap).map_err(to_py)
    }

    #[getter]
    fn source(&self) -> usize {
        self.0.source().size()
    }

    #[getter]
    fn target(&self) -> usize {
        self.0.target().size()
    }

    #[getter]
    fn table(&self) -> Vec<usize> {
        self.0.table().to_vec()
    }

    fn compose(&self, other: &PyPointedMap) -> PyResult<PyPointedMap> {
        POINTED.compose(&self.0, &other.0).map(PyPointedMap).map_err(to_py)
    }

    fn is_deflation(&self) -> bool {
        POINTED.is_deflation(&self.0)
    }

    fn is_inflation(&self) -> bool {
        POINTED.is_inflation(&self.0)
    }

    fn kernel(&self) -> PyResult<PyPointedMap> {
        POINTED.kernel(&self.0).map(|k| PyPointedMap(k.inclusion)).map_err(to_py)
    }

    fn cokernel(&self) -> PyResult<PyPointedMap> {
        POINTED.cokernel(&self.0).map(|c| PyPointedMap(c.projection)).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("PointedMap({:?})", self.0)
    }
}

/// The six-term sequence `K1 -> K2 -> K3 -> C1 -> C2 -> C3`.
#[pyclass(name = "SnakeResult", module = "exactcat", frozen, get_all)]
struct PySnakeResult {
    kernels: Vec<PyGroup>,
    cokernels: Vec<PyGroup>,
    psi1: PyMorphism,
    psi2: PyMorphism,
    delta: PyMorphism,
    psi1_prime: PyMorphism,
    psi2_prime: PyMorphism,
    exact: bool,
    verified: bool,
}

/// Snake lemma on short exact rows `(phi1, phi2)` and `(phi1', phi2')` with
/// verticals `f1, f2, f3`.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn snake(
    phi1: &PyMorphism,
    phi2: &PyMorphism,
    phi1_prime: &PyMorphism,
    phi2_prime: &PyMorphism,
    f1: &PyMorphism,
    f2: &PyMorphism,
    f3: &PyMorphism,
) -> PyResult<PySnakeResult> {
    let d = SnakeDiagram::new(
        &Fgab,
        (phi1.0.clone(), phi2.0.clone()),
        (phi1_prime.0.clone(), phi2_prime.0.clone()),
        [f1.0.clone(), f2.0.clone(), f3.0.clone()],
    )
    .map_err(to_py)?;
    let r = run_snake(&Fgab, &d).map_err(to_py)?;
    Ok(PySnakeResult {
        kernels: r.kernels.iter().map(|k| PyGroup(k.object.clone())).collect(),
        cokernels: r.cokernels.iter().map(|c| PyGroup(c.object.clone())).collect(),
        psi1: PyMorphism(r.psi1.clone()),
        psi2: PyMorphism(r.psi2.clone()),
        delta: PyMorphism(r.delta.clone()),
        psi1_prime: PyMorphism(r.psi1_prime.clone()),
        psi2_prime: PyMorphism(r.psi2_prime.clone()),
        exact: r.exactness.is_exact(),
        verified: r.is_verified(),
    })
}

/// `H^lo, ..., H^hi` of `A_lo -> ... -> A_hi`.
#[pyfunction]
#[pyo3(signature = (differentials, lo = 0))]
fn cohomology(differentials: Vec<PyRef<'_, PyMorphism>>, lo: i64) -> PyResult<Vec<PyGroup>> {
    if differentials.is_empty() {
        return Err(PyIndexError::new_err("a complex needs at least one differential"));
    }
    let ds: Vec<AbMorphism> = differentials.iter().map(|d| d.0.clone()).collect();
    let c = AdmissibleComplex::new(&Fgab, lo, &ds).map_err(to_py)?;
    (c.lo..=c.hi())
        .map(|i| {
            let h = c.cohomology(&Fgab, i).map_err(to_py)?;
            if !h.is_verified() {
                return Err(ConclusionError::new_err(format!("H^{i}: the two constructions disagree")));
            }
            Ok(PyGroup(h.object().clone()))
        })
        .collect()
}

/// Whether `A0 -> A1 -> ... -> An` is exact at each interior object.
#[pyfunction]
fn is_exact(sequence: Vec<PyRef<'_, PyMorphism>>) -> PyResult<bool> {
    let seq: Vec<AbMorphism> = sequence.iter().map(|m| m.0.clone()).collect();
    check_long_exact_auto(&Fgab, &seq).map(|v| v.is_exact()).map_err(to_py)
}

/// Per axiom `(name, outcome, detail)`. Pointed sets are checked
/// exhaustively up to `max_size`, abelian groups on `samples` random cases.
#[pyfunction]
#[pyo3(signature = (instance = "pointed-sets", max_size = 4, samples = 500, seed = 0, all_surjections = false))]
fn axioms(
    instance: &str,
    max_size: usize,
    samples: u64,
    seed: u64,
    all_surjections: bool,
) -> PyResult<Vec<(String, String, String)>> {
    let report = match instance {
        "pointed-sets" => {
            let class = if all_surjections { DeflationClass::AllSurjections } else { DeflationClass::KernelCollapse };
            let cfg = ExhaustiveConfig { max_size, ..ExhaustiveConfig::default() };
            verify_exhaustive(&PointedSets::new(class), &Axiom::ALL, &cfg).map_err(to_py)?
        }
        "fgab" => verify_sampled(&Fgab, &mut FgabGen::new(seed), &Axiom::ALL, samples),
        other => return Err(PyValueError::new_err(format!("unknown instance {other:?}"))),
    };
    Ok(report
        .reports
        .iter()
        .map(|r| {
            let detail = match &r.outcome {
                Outcome::Pass => String::new(),
                Outcome::Fail { counterexample, .. } => counterexample.clone(),
                Outcome::Inconclusive { reason } => reason.clone(),
            };
            (r.axiom.name().to_string(), r.outcome.label().to_string(), detail)
        })
        .collect())
}

#[pymodule]
#[pyo3(name = "exactcat")]
fn exactcat_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyMorphism>()?;
    m.add_class::<PyPointedMap>()?;
    m.add_class::<PySnakeResult>()?;
    m.add_function(wrap_pyfunction!(snake, m)?)?;
    m.add_function(wrap_pyfunction!(cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(is_exact, m)?)?;
    m.add_function(wrap_pyfunction!(axioms, m)?)?;
    m.add("HypothesisError", m.py().get_type::<HypothesisError>())?;
    m.add("ConclusionError", m.py().get_type::<ConclusionError>())?;
    Ok(())
}
