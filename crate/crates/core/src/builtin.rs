//! Fixed class sets used as named examples and fixtures.

use crate::class::{ClassSet, CommutingClass};
use crate::error::{Error, Result};

pub const BUILTIN_NAMES: [&str; 3] = ["paper-d4-strong", "paper-d8-strong", "paper-d4-weak"];

fn set(n: usize, listing: &[&[&str]]) -> ClassSet {
    let classes = listing
        .iter()
        .map(|elems| CommutingClass::from_element_strings(elems).expect("fixture is a class"))
        .collect();
    ClassSet::new(n, classes).expect("fixture classes are disjoint")
}

/// Weakly unextendible two-qubit triple built from Y-, mixed and X/Z-type classes.
pub fn weak_d4_triple() -> ClassSet {
    set(2, &[&["YY", "IY", "YI"], &["YZ", "ZX", "XY"], &["XI", "IZ", "XZ"]])
}

/// Its alternate partition into three classes, one operator from each original.
pub fn weak_d4_alternate() -> ClassSet {
    set(2, &[&["YY", "ZX", "XZ"], &["IY", "XY", "XI"], &["YI", "YZ", "IZ"]])
}

/// Two-qubit triple with no common unbiased vector.
pub fn strong_d4_triple() -> ClassSet {
    set(2, &[&["YY", "IY", "YI"], &["YZ", "XX", "ZY"], &["ZI", "IZ", "ZZ"]])
}

/// Three-qubit five-class set with no common unbiased vector.
pub fn strong_d8_set() -> ClassSet {
    set(
        3,
        &[
            &["IIY", "YYI", "YYY", "IYY", "YII", "IYI", "YIY"],
            &["IXI", "XIX", "XXX", "IXX", "IIX", "XII", "XXI"],
            &["ZII", "IZZ", "ZZZ", "IIZ", "IZI", "ZIZ", "ZZI"],
            &["IZX", "YZI", "YIX", "ZYY", "XYZ", "ZXZ", "XXY"],
            &["XIZ", "XYI", "IYZ", "ZXX", "YZX", "YXY", "ZZY"],
        ],
    )
}

/// Second partition of the operators of [`strong_d8_set`].
pub fn d8_alternate_partition() -> ClassSet {
    set(
        3,
        &[
            &["IIY", "YYI", "YYY", "XXI", "ZZI", "XXY", "ZZY"],
            &["IXI", "XIX", "XXX", "ZIZ", "ZXZ", "YXY", "YIY"],
            &["ZII", "IZZ", "ZZZ", "ZYY", "ZXX", "IYY", "IXX"],
            &["IZX", "YZI", "YIX", "YZX", "YII", "IIX", "IZI"],
            &["XIZ", "XYI", "IYZ", "IYI", "XII", "IIZ", "XYZ"],
        ],
    )
}

pub fn builtin(name: &str) -> Result<ClassSet> {
    match name {
        "paper-d4-strong" => Ok(strong_d4_triple()),
        "paper-d8-strong" => Ok(strong_d8_set()),
        "paper-d4-weak" => Ok(weak_d4_triple()),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}
