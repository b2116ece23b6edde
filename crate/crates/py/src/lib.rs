//! Python bindings. Reports and stats cross the boundary as plain dicts.

use ::boxpleat::construct::{compile as compile_polycube, paper_size as size_for, CompileResult, FaceMap, Mode};
use ::boxpleat::foldsim::{evaluate, verify as verify_state};
use ::boxpleat::io::{export_fold, export_obj, export_svg, parse_fold, FoldExportOptions, ObjOptions, SvgOptions};
use ::boxpleat::pattern::CreasePattern as Pattern;
use ::boxpleat::polycube::{parse_polycube, Cell, Face, Polycube as Cubes};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_mode(mode: &str) -> PyResult<Mode> {
    mode.parse().map_err(|_| PyValueError::new_err(format!("unknown mode {mode:?}")))
}

fn to_py<'py>(py: Python<'py>, v: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Polycube", module = "boxpleat", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPolycube {
    inner: Cubes,
}

#[pymethods]
impl PyPolycube {
    /// Parse the text format: one `x y z` cell per line, `#` comments.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyPolycube { inner: parse_polycube(text).map_err(value_error)?.polycube })
    }

    #[staticmethod]
    fn from_cells(cells: Vec<(i32, i32, i32)>) -> PyResult<Self> {
        let inner = Cubes::new(cells.into_iter().map(|(x, y, z)| Cell::new(x, y, z))).map_err(value_error)?;
        Ok(PyPolycube { inner })
    }

    fn cells(&self) -> Vec<(i32, i32, i32)> {
        self.inner.cells().iter().map(|c| (c.x, c.y, c.z)).collect()
    }

    /// Boundary faces as "x y z dir" strings.
    fn boundary_faces(&self) -> Vec<String> {
        self.inner.surface_and_interior().0.iter().map(Face::to_string).collect()
    }

    fn interior_face_count(&self) -> usize {
        self.inner.surface_and_interior().1.len()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Polycube(n={})", self.inner.len())
    }
}

#[pyclass(name = "CreasePattern", module = "boxpleat", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCreasePattern {
    inner: Pattern,
    face_map: Option<FaceMap>,
    mode: Option<Mode>,
}

#[pymethods]
impl PyCreasePattern {
    #[staticmethod]
    fn from_fold(text: &str) -> PyResult<Self> {
        let doc = parse_fold(text).map_err(value_error)?;
        Ok(PyCreasePattern { inner: doc.pattern, face_map: doc.face_map, mode: doc.mode })
    }

    #[getter]
    fn width(&self) -> i32 {
        self.inner.width()
    }

    #[getter]
    fn height(&self) -> i32 {
        self.inner.height()
    }

    /// Creases as `((u0, v0), (u1, v1), degrees)` in doubled coordinates.
    fn creases(&self) -> Vec<((i32, i32), (i32, i32), i32)> {
        self.inner.creases().map(|c| ((c.a.u, c.a.v), (c.b.u, c.b.v), c.angle.degrees())).collect()
    }

    #[pyo3(signature = (border = false))]
    fn to_fold(&self, border: bool) -> String {
        export_fold(&self.inner, self.face_map.as_ref(), self.mode, FoldExportOptions { include_border: border })
    }

    #[pyo3(signature = (scale = 40))]
    fn to_svg(&self, scale: u32) -> String {
        export_svg(&self.inner, SvgOptions { scale: scale.max(1) })
    }

    #[pyo3(signature = (epsilon = 0.01))]
    fn to_obj(&self, epsilon: f64) -> PyResult<String> {
        let fs = evaluate(&self.inner).map_err(value_error)?;
        Ok(export_obj(&fs, ObjOptions { epsilon }))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("CreasePattern({}x{}, creases={})", self.inner.width(), self.inner.height(), self.inner.len())
    }
}

#[pyclass(name = "CompileResult", module = "boxpleat", frozen, skip_from_py_object)]
struct PyCompileResult {
    inner: CompileResult,
}

#[pymethods]
impl PyCompileResult {
    #[getter]
    fn pattern(&self) -> PyCreasePattern {
        PyCreasePattern {
            inner: self.inner.pattern.clone(),
            face_map: Some(self.inner.face_map.clone()),
            mode: Some(self.inner.mode),
        }
    }

    #[getter]
    fn mode(&self) -> &'static str {
        self.inner.mode.name()
    }

    #[getter]
    fn stats<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.stats)
    }

    #[getter]
    fn report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.report)
    }

    #[getter]
    fn passed(&self) -> bool {
        self.inner.report.passed()
    }

    fn __repr__(&self) -> String {
        let s = &self.inner.stats;
        format!("CompileResult(mode={}, {}x{}, creases={})", s.mode.name(), s.width, s.height, s.nontrivial_crease_count)
    }
}

/// Compile a polycube. `seam` is a boundary face like "0 0 0 -z" and is
/// only used by "rect-seam".
#[pyfunction]
#[pyo3(signature = (polycube, mode = "square", seam = None))]
fn compile(polycube: &PyPolycube, mode: &str, seam: Option<&str>) -> PyResult<PyCompileResult> {
    let seam = seam.map(|s| Face::parse(s).ok_or_else(|| PyValueError::new_err(format!("bad seam face {s:?}")))).transpose()?;
    let inner = compile_polycube(&polycube.inner, parse_mode(mode)?, seam).map_err(value_error)?;
    Ok(PyCompileResult { inner })
}

#[pyfunction]
fn paper_size(n: usize, mode: &str) -> PyResult<(i32, i32)> {
    Ok(size_for(n, parse_mode(mode)?))
}

/// Fold `pattern` and check it against `polycube`. Returns the report dict.
#[pyfunction]
#[pyo3(signature = (pattern, polycube, mode = None))]
fn verify<'py>(
    py: Python<'py>,
    pattern: &PyCreasePattern,
    polycube: &PyPolycube,
    mode: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let fs = evaluate(&pattern.inner).map_err(value_error)?;
    let fm = pattern.face_map.clone().unwrap_or_default();
    let mode = match mode {
        Some(m) => parse_mode(m)?,
        None => pattern.mode.unwrap_or(if fm.seamed.is_some() { Mode::RectSeam } else { Mode::Square }),
    };
    let report = verify_state(&fs, &polycube.inner, &fm, mode);
    let out = to_py(py, &report)?;
    out.set_item("passed", report.passed())?;
    Ok(out)
}

#[pymodule(name = "boxpleat")]
fn boxpleat_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolycube>()?;
    m.add_class::<PyCreasePattern>()?;
    m.add_class::<PyCompileResult>()?;
    m.add_function(wrap_pyfunction!(compile, m)?)?;
    m.add_function(wrap_pyfunction!(paper_size, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("MODES", ["rect-seam", "rect-seamless", "square"])?;
    Ok(())
}
