use std::ffi::CString;

use pyo3::prelude::*;
use pyo3::wrap_pymodule;

#[test]
fn python_smoke_script_runs_embedded() {
    Python::initialize();
    Python::attach(|py| -> PyResult<()> {
        let module = wrap_pymodule!(pyoctgroup::pyoctgroup)(py);
        py.import("sys")?.getattr("modules")?.set_item("pyoctgroup", module)?;
        let script = CString::new(include_str!("../../../python/smoke_test.py")).unwrap();
        py.run(&script, None, None)
    })
    .unwrap();
}
