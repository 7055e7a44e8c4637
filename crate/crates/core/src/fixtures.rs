//! Bundled example geometries, shared by tests, benches and the CLI.
//!
//! | name | content |
//! |------|---------|
//! | `g1` | one point on one line |
//! | `dg4` | two points, `h0` and `h3` through both, `h1` through `p0`, `h2` through `p1` |
//! | `nf7` | 7 points, 6 lines: a triangle with its medians, with exact medial coordinates |
//! | `pappus_sub` | Pappus configuration without the line through `p6 p7 p8` |
//! | `pappus` | full Pappus configuration with an exact rational realization |
//! | `fano` | Fano plane |
//! | `triangle` | 3 points, 3 lines |

use crate::geometry::{
    parse_document, parse_geometry, parse_normals, IncidenceGeometry, NormalAssignment, PointConfiguration,
};

pub const G1_JSON: &str = include_str!("../fixtures/g1.json");
pub const DG4_JSON: &str = include_str!("../fixtures/dg4.json");
pub const NF7_JSON: &str = include_str!("../fixtures/nf7.json");
pub const MEDIAL_NORMALS_JSON: &str = include_str!("../fixtures/medial_normals.json");
pub const PAPPUS_SUB_JSON: &str = include_str!("../fixtures/pappus_sub.json");
pub const PAPPUS_SUB_DEGENERATE_JSON: &str = include_str!("../fixtures/pappus_sub_degenerate.json");
pub const PAPPUS_JSON: &str = include_str!("../fixtures/pappus.json");
pub const FANO_JSON: &str = include_str!("../fixtures/fano.json");
pub const TRIANGLE_JSON: &str = include_str!("../fixtures/triangle.json");

fn load(text: &str) -> IncidenceGeometry {
    parse_geometry(text).expect("bundled fixture parses")
}

fn coordinates(text: &str) -> PointConfiguration {
    parse_document(text)
        .expect("bundled fixture parses")
        .coordinates
        .expect("fixture carries coordinates")
}

pub fn g1() -> IncidenceGeometry {
    load(G1_JSON)
}

pub fn dg4() -> IncidenceGeometry {
    load(DG4_JSON)
}

pub fn nf7() -> IncidenceGeometry {
    load(NF7_JSON)
}

pub fn pappus_sub() -> IncidenceGeometry {
    load(PAPPUS_SUB_JSON)
}

pub fn pappus() -> IncidenceGeometry {
    load(PAPPUS_JSON)
}

pub fn fano() -> IncidenceGeometry {
    load(FANO_JSON)
}

pub fn triangle() -> IncidenceGeometry {
    load(TRIANGLE_JSON)
}

/// Triangle `p6 p2 p0` with midpoints `p4 p5 p1` and centroid `p3`.
pub fn medial_coordinates() -> PointConfiguration {
    coordinates(NF7_JSON)
}

pub fn medial_normals() -> NormalAssignment {
    parse_normals(MEDIAL_NORMALS_JSON).expect("bundled fixture parses")
}

/// Exact Pappus realization: `p0 p1 p2` on `y = 0`, `p3 p4 p5` on
/// `y = -2 - x/4`, and `p6 p7 p8` the cross-joins.
pub fn pappus_coordinates() -> PointConfiguration {
    coordinates(PAPPUS_JSON)
}

/// Pappus sub-geometry with `p0 = p1`, `p3 = p4`, `p7 = p8`.
pub fn pappus_sub_degenerate_coordinates() -> PointConfiguration {
    coordinates(PAPPUS_SUB_DEGENERATE_JSON)
}

/// All bundled geometries by name.
pub fn all() -> Vec<(&'static str, IncidenceGeometry)> {
    vec![
        ("g1", g1()),
        ("dg4", dg4()),
        ("nf7", nf7()),
        ("pappus_sub", pappus_sub()),
        ("pappus", pappus()),
        ("fano", fano()),
        ("triangle", triangle()),
    ]
}
