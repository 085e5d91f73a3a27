use pyo3::prelude::*;
use pyo3::ffi::c_str;

use mubforge::mubforge as module;

#[test]
fn module_runs_inside_an_embedded_interpreter() {
    pyo3::append_to_inittab!(module);
    Python::attach(|py| {
        py.run(
            c_str!(
                r#"
import mubforge
s = mubforge.canonical_complete_set(3)
assert len(s) == 9 and s.is_complete()
u = mubforge.build_unextendible_set(s, [0, 1, 2, 3, 4])
assert len(u) == 5 and u.extendibility_check() == []
assert str(mubforge.PauliOperator("YZ") * mubforge.PauliOperator("ZX")) == "-XY"
try:
    mubforge.PauliOperator("Q")
except ValueError:
    pass
else:
    raise AssertionError
"#
            ),
            None,
            None,
        )
        .unwrap();
    });
}
