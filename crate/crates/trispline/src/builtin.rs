//! Built-in example meshes in TETMESH text form.
//!
//! The vertex order fixes the numbering of the interior edges (spokes to the
//! central vertex) under the default lexicographic ordering, with the bottom
//! apex first, the equator in cyclic order, and the top apex last.

/// Names accepted by `builtin(name)`.
pub const NAMES: [&str; 3] = ["clough-tocher", "octahedron-regular", "octahedron-generic"];

pub fn builtin(name: &str) -> Option<String> {
    match name {
        "clough-tocher" => Some(clough_tocher()),
        "octahedron-regular" => Some(octahedron_regular()),
        "octahedron-generic" => Some(octahedron_generic()),
        _ => None,
    }
}

/// Unit tetrahedron split about its centroid into four subtetrahedra.
pub fn clough_tocher() -> String {
    "\
tetmesh 1
# unit tetrahedron split about the interior point (1/4, 1/4, 1/4)
vertices 5
0 0 0
1 0 0
0 1 0
0 0 1
1/4 1/4 1/4
tets 4
0 1 2 4
0 1 3 4
0 2 3 4
1 2 3 4
"
    .to_string()
}

/// Regular octahedron subdivided into eight tetrahedra by a symmetric
/// central vertex. Exactly three distinct planes pass through the center.
pub fn octahedron_regular() -> String {
    "\
tetmesh 1
# octahedron with apexes 0 (bottom) and 5 (top), equator 1-2-3-4, center 6
vertices 7
0 0 -1
1 0 0
0 1 0
-1 0 0
0 -1 0
0 0 1
0 0 0
tets 8
0 1 2 6
0 2 3 6
0 3 4 6
0 1 4 6
1 2 5 6
2 3 5 6
3 4 5 6
1 4 5 6
"
    .to_string()
}

/// Rationally perturbed octahedron with an interior central vertex.
///
/// No four of the seven vertices are coplanar (verified exactly by the test
/// suite), so the twelve triangles through the center span twelve distinct
/// planes and every spoke sees four distinct incident planes. Denominators
/// are powers of two to keep the integer plane coefficients small.
pub fn octahedron_generic() -> String {
    "\
tetmesh 1
# perturbed octahedron: no four vertices coplanar, center strictly inside
vertices 7
3/64 -1/32 -1
1 1/64 1/32
-1/32 1 3/64
-1 5/64 -1/32
1/32 -1 5/64
-3/64 1/32 1
1/64 -3/64 1/32
tets 8
0 1 2 6
0 2 3 6
0 3 4 6
0 1 4 6
1 2 5 6
2 3 5 6
3 4 5 6
1 4 5 6
"
    .to_string()
}
