//! Tetrahedral partitions: parsing, face lattice construction, interior /
//! boundary classification, and topological sanity diagnostics.
//!
//! Faces of every dimension are keyed by their sorted vertex-index tuples and
//! stored in lexicographic order of those keys; all downstream numbering
//! derives from this order, so identical input text always yields identical
//! tables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::forms::{Point3, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MeshError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("tet {tet} has vertex index {index} out of range (mesh has {vertices} vertices)")]
    IndexOutOfRange {
        tet: usize,
        index: usize,
        vertices: usize,
    },
    #[error("tet {tet} has repeated vertex indices")]
    RepeatedVertex { tet: usize },
    #[error("tets {first} and {second} share the same vertex set")]
    DuplicateTet { first: usize, second: usize },
    #[error("tet {tet} is degenerate: its vertices are coplanar")]
    DegenerateTet { tet: usize },
    #[error("triangle ({a}, {b}, {c}) lies in {count} tets; a pseudomanifold allows at most 2")]
    NonPseudomanifold {
        a: usize,
        b: usize,
        c: usize,
        count: usize,
    },
}

/// A pure 3-dimensional simplicial complex: exact rational vertex
/// coordinates plus tetrahedra given by vertex indices.
#[derive(Clone, Debug)]
pub struct SimplicialComplex3 {
    vertices: Vec<Point3>,
    tets: Vec<[usize; 4]>,
}

impl SimplicialComplex3 {
    /// Validates and stores the complex. Tet vertex indices are sorted so
    /// each tet is canonically keyed.
    pub fn new(vertices: Vec<Point3>, tets: Vec<[usize; 4]>) -> Result<Self, MeshError> {
        let mut canonical: Vec<[usize; 4]> = Vec::with_capacity(tets.len());
        let mut seen: BTreeMap<[usize; 4], usize> = BTreeMap::new();
        for (i, tet) in tets.iter().enumerate() {
            for &v in tet {
                if v >= vertices.len() {
                    return Err(MeshError::IndexOutOfRange {
                        tet: i,
                        index: v,
                        vertices: vertices.len(),
                    });
                }
            }
            let mut key = *tet;
            key.sort_unstable();
            if key.windows(2).any(|w| w[0] == w[1]) {
                return Err(MeshError::RepeatedVertex { tet: i });
            }
            if let Some(&first) = seen.get(&key) {
                return Err(MeshError::DuplicateTet { first, second: i });
            }
            seen.insert(key, i);
            if tet_volume_determinant(&vertices, &key).is_zero() {
                return Err(MeshError::DegenerateTet { tet: i });
            }
            canonical.push(key);
        }
        Ok(Self {
            vertices,
            tets: canonical,
        })
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point3 {
        &self.vertices[i]
    }

    pub fn tets(&self) -> &[[usize; 4]] {
        &self.tets
    }
}

/// Signed triple-product determinant of the edge vectors of a tet; zero
/// exactly when the four vertices are coplanar.
fn tet_volume_determinant(vertices: &[Point3], tet: &[usize; 4]) -> Rational {
    let p0 = &vertices[tet[0]];
    let rows: Vec<Vec<Rational>> = (1..4)
        .map(|j| {
            let p = &vertices[tet[j]];
            (0..3).map(|i| &p[i] - &p0[i]).collect()
        })
        .collect();
    det3(&rows)
}

fn det3(m: &[Vec<Rational>]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Parses the TETMESH text format.
///
/// ```text
/// tetmesh 1
/// vertices N
/// <N lines: three rationals, each `int` or `int/int`>
/// tets M
/// <M lines: four zero-based vertex indices>
/// ```
///
/// `#` starts a comment running to end of line; blank lines are ignored.
/// Coordinates are parsed exactly, with no floating point involved.
pub fn parse_mesh(text: &str) -> Result<SimplicialComplex3, MeshError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, line)| {
            let content = line.split('#').next().unwrap_or("").trim();
            (i + 1, content)
        })
        .filter(|(_, content)| !content.is_empty());

    let mut next = |what: &str| -> Result<(usize, &str), MeshError> {
        lines.next().ok_or_else(|| MeshError::Syntax {
            line: text.lines().count() + 1,
            message: format!("unexpected end of file, expected {what}"),
        })
    };

    let (line_no, header) = next("header `tetmesh 1`")?;
    if header != "tetmesh 1" {
        return Err(MeshError::Syntax {
            line: line_no,
            message: format!("expected header `tetmesh 1`, found `{header}`"),
        });
    }

    let (line_no, decl) = next("`vertices N`")?;
    let vertex_count = parse_count(decl, "vertices", line_no)?;
    let mut vertices = Vec::with_capacity(vertex_count);
    for _ in 0..vertex_count {
        let (line_no, line) = next("a vertex line")?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(MeshError::Syntax {
                line: line_no,
                message: format!("expected 3 coordinates, found {}", fields.len()),
            });
        }
        let mut coords = Vec::with_capacity(3);
        for field in fields {
            coords.push(parse_rational(field, line_no)?);
        }
        vertices.push([coords[0].clone(), coords[1].clone(), coords[2].clone()]);
    }

    let (line_no, decl) = next("`tets M`")?;
    let tet_count = parse_count(decl, "tets", line_no)?;
    let mut tets = Vec::with_capacity(tet_count);
    for _ in 0..tet_count {
        let (line_no, line) = next("a tet line")?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(MeshError::Syntax {
                line: line_no,
                message: format!("expected 4 vertex indices, found {}", fields.len()),
            });
        }
        let mut tet = [0usize; 4];
        for (slot, field) in tet.iter_mut().zip(fields) {
            *slot = field.parse().map_err(|_| MeshError::Syntax {
                line: line_no,
                message: format!("invalid vertex index `{field}`"),
            })?;
        }
        tets.push(tet);
    }

    if let Some((line_no, content)) = lines.next() {
        return Err(MeshError::Syntax {
            line: line_no,
            message: format!("trailing content `{content}`"),
        });
    }

    SimplicialComplex3::new(vertices, tets)
}

fn parse_count(decl: &str, keyword: &str, line: usize) -> Result<usize, MeshError> {
    let mut parts = decl.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(n), None) if k == keyword => n.parse().map_err(|_| MeshError::Syntax {
            line,
            message: format!("invalid count `{n}`"),
        }),
        _ => Err(MeshError::Syntax {
            line,
            message: format!("expected `{keyword} N`, found `{decl}`"),
        }),
    }
}

fn parse_rational(field: &str, line: usize) -> Result<Rational, MeshError> {
    let bad = || MeshError::Syntax {
        line,
        message: format!("invalid rational `{field}`"),
    };
    match field.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.parse().map_err(|_| bad())?;
            let den: BigInt = den.parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(MeshError::Syntax {
                    line,
                    message: format!("zero denominator in `{field}`"),
                });
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            let num: BigInt = field.parse().map_err(|_| bad())?;
            Ok(BigRational::from(num))
        }
    }
}

/// Face lattice of a complex: deduplicated triangles, edges and vertices in
/// lexicographic key order, incidence maps, and interior classification.
#[derive(Clone, Debug)]
pub struct FaceTables {
    triangles: Vec<[usize; 3]>,
    edges: Vec<[usize; 2]>,
    vertices: Vec<usize>,
    triangle_tets: Vec<Vec<usize>>,
    edge_triangles: Vec<Vec<usize>>,
    vertex_edges: Vec<Vec<usize>>,
    vertex_triangles: Vec<Vec<usize>>,
    triangle_interior: Vec<bool>,
    edge_interior: Vec<bool>,
    vertex_interior: Vec<bool>,
    /// `f[i]` = number of i-dimensional faces.
    f: [usize; 4],
    /// `f0[i]` = number of interior i-dimensional faces.
    f0: [usize; 4],
    tet_count: usize,
}

impl FaceTables {
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    /// Vertex indices that actually occur in some tet, ascending.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn triangle_tets(&self, t: usize) -> &[usize] {
        &self.triangle_tets[t]
    }

    pub fn edge_triangles(&self, e: usize) -> &[usize] {
        &self.edge_triangles[e]
    }

    pub fn vertex_edges(&self, v: usize) -> &[usize] {
        &self.vertex_edges[v]
    }

    /// Triangles containing the vertex at position `v` of `vertices()`.
    pub fn vertex_triangles(&self, v: usize) -> &[usize] {
        &self.vertex_triangles[v]
    }

    pub fn is_triangle_interior(&self, t: usize) -> bool {
        self.triangle_interior[t]
    }

    pub fn is_edge_interior(&self, e: usize) -> bool {
        self.edge_interior[e]
    }

    pub fn is_vertex_interior(&self, v: usize) -> bool {
        self.vertex_interior[v]
    }

    pub fn f(&self, dim: usize) -> usize {
        self.f[dim]
    }

    pub fn f0(&self, dim: usize) -> usize {
        self.f0[dim]
    }

    pub fn tet_count(&self) -> usize {
        self.tet_count
    }

    /// Interior triangle ids in lexicographic key order.
    pub fn interior_triangles(&self) -> Vec<usize> {
        (0..self.triangles.len())
            .filter(|&t| self.triangle_interior[t])
            .collect()
    }

    /// Interior edge ids in lexicographic key order.
    pub fn interior_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edge_interior[e])
            .collect()
    }

    /// Positions (into `vertices()`) of interior vertices, ascending.
    pub fn interior_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.vertex_interior[v])
            .collect()
    }

    /// The two edges of `triangle` other than `edge`.
    pub fn other_edges_of_triangle(&self, triangle: usize, edge: usize) -> [usize; 2] {
        let tri_edges = self.triangle_edge_ids(triangle);
        let mut out = [usize::MAX; 2];
        let mut n = 0;
        for e in tri_edges {
            if e != edge {
                out[n] = e;
                n += 1;
            }
        }
        debug_assert_eq!(n, 2, "edge must belong to the triangle");
        out
    }

    /// Edge ids of the three edges of a triangle.
    pub fn triangle_edge_ids(&self, triangle: usize) -> [usize; 3] {
        let [a, b, c] = self.triangles[triangle];
        [
            self.edge_id([a, b]).expect("triangle edge present"),
            self.edge_id([a, c]).expect("triangle edge present"),
            self.edge_id([b, c]).expect("triangle edge present"),
        ]
    }

    pub fn edge_id(&self, key: [usize; 2]) -> Option<usize> {
        self.edges.binary_search(&key).ok()
    }

    pub fn vertex_position(&self, vertex: usize) -> Option<usize> {
        self.vertices.binary_search(&vertex).ok()
    }
}

/// Enumerates all faces of the complex, classifies them as interior or
/// boundary, and populates the incidence maps and `f`/`f0` counts.
///
/// A triangle is interior iff it lies in exactly two tets; an edge or vertex
/// is interior iff it is contained in no boundary triangle.
pub fn build_face_tables(complex: &SimplicialComplex3) -> Result<FaceTables, MeshError> {
    let mut triangle_map: BTreeMap<[usize; 3], Vec<usize>> = BTreeMap::new();
    let mut edge_set: BTreeSet<[usize; 2]> = BTreeSet::new();
    let mut vertex_set: BTreeSet<usize> = BTreeSet::new();

    for (ti, tet) in complex.tets().iter().enumerate() {
        for skip in 0..4 {
            let mut tri = [0usize; 3];
            let mut n = 0;
            for (i, &v) in tet.iter().enumerate() {
                if i != skip {
                    tri[n] = v;
                    n += 1;
                }
            }
            triangle_map.entry(tri).or_default().push(ti);
        }
        for i in 0..4 {
            vertex_set.insert(tet[i]);
            for j in i + 1..4 {
                edge_set.insert([tet[i], tet[j]]);
            }
        }
    }

    let triangles: Vec<[usize; 3]> = triangle_map.keys().copied().collect();
    let triangle_tets: Vec<Vec<usize>> = triangle_map.values().cloned().collect();
    for (tri, tets) in triangles.iter().zip(&triangle_tets) {
        if tets.len() > 2 {
            return Err(MeshError::NonPseudomanifold {
                a: tri[0],
                b: tri[1],
                c: tri[2],
                count: tets.len(),
            });
        }
    }
    let triangle_interior: Vec<bool> = triangle_tets.iter().map(|t| t.len() == 2).collect();

    let edges: Vec<[usize; 2]> = edge_set.into_iter().collect();
    let vertices: Vec<usize> = vertex_set.into_iter().collect();

    let mut edge_triangles = vec![Vec::new(); edges.len()];
    let mut boundary_touch_edge = vec![false; edges.len()];
    let mut boundary_touch_vertex = vec![false; vertices.len()];
    let mut vertex_triangles = vec![Vec::new(); vertices.len()];
    for (ti, tri) in triangles.iter().enumerate() {
        let boundary = !triangle_interior[ti];
        for i in 0..3 {
            let vp = vertices.binary_search(&tri[i]).expect("vertex listed");
            vertex_triangles[vp].push(ti);
            if boundary {
                boundary_touch_vertex[vp] = true;
            }
            for j in i + 1..3 {
                let e = edges.binary_search(&[tri[i], tri[j]]).expect("edge listed");
                edge_triangles[e].push(ti);
                if boundary {
                    boundary_touch_edge[e] = true;
                }
            }
        }
    }
    for tris in &mut edge_triangles {
        tris.sort_unstable();
        tris.dedup();
    }

    let edge_interior: Vec<bool> = boundary_touch_edge.iter().map(|&b| !b).collect();
    let vertex_interior: Vec<bool> = boundary_touch_vertex.iter().map(|&b| !b).collect();

    let mut vertex_edges = vec![Vec::new(); vertices.len()];
    for (ei, edge) in edges.iter().enumerate() {
        for &v in edge {
            let vp = vertices.binary_search(&v).expect("vertex listed");
            vertex_edges[vp].push(ei);
        }
    }

    let f = [
        vertices.len(),
        edges.len(),
        triangles.len(),
        complex.tets().len(),
    ];
    let f0 = [
        vertex_interior.iter().filter(|&&b| b).count(),
        edge_interior.iter().filter(|&&b| b).count(),
        triangle_interior.iter().filter(|&&b| b).count(),
        complex.tets().len(),
    ];

    Ok(FaceTables {
        triangles,
        edges,
        vertices,
        triangle_tets,
        edge_triangles,
        vertex_edges,
        vertex_triangles,
        triangle_interior,
        edge_interior,
        vertex_interior,
        f,
        f0,
        tet_count: complex.tets().len(),
    })
}

/// Interior edge ids in order of first appearance while scanning the tets
/// in input order (each tet's six edges in local index order).
pub fn input_edge_ordering(complex: &SimplicialComplex3, tables: &FaceTables) -> Vec<usize> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for tet in complex.tets() {
        for i in 0..4 {
            for j in i + 1..4 {
                if let Some(e) = tables.edge_id([tet[i], tet[j]]) {
                    if tables.is_edge_interior(e) && seen.insert(e) {
                        out.push(e);
                    }
                }
            }
        }
    }
    out
}

/// Interior vertex positions in order of first appearance while scanning
/// the tets in input order.
pub fn input_vertex_ordering(complex: &SimplicialComplex3, tables: &FaceTables) -> Vec<usize> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for tet in complex.tets() {
        for &v in tet {
            if let Some(vp) = tables.vertex_position(v) {
                if tables.is_vertex_interior(vp) && seen.insert(vp) {
                    out.push(vp);
                }
            }
        }
    }
    out
}

/// Diagnostics for the hypothesis that the support of the complex is a
/// 3-ball. These are necessary conditions only; failures produce warnings
/// downstream rather than aborting, since the bound formulas still evaluate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallDiagnostics {
    /// `f0 − f1 + f2 − f3`; a ball has Euler characteristic 1.
    pub euler_characteristic: i64,
    pub euler_ok: bool,
    /// Every boundary edge lies in exactly two boundary triangles.
    pub boundary_edges_closed: bool,
    /// Around every boundary vertex the boundary triangles form one cycle.
    pub boundary_links_connected: bool,
    /// The boundary triangle adjacency graph is connected.
    pub boundary_connected: bool,
}

impl BallDiagnostics {
    pub fn pass(&self) -> bool {
        self.euler_ok
            && self.boundary_edges_closed
            && self.boundary_links_connected
            && self.boundary_connected
    }
}

impl fmt::Display for BallDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "euler={} ({}), boundary closed={}, vertex links={}, boundary connected={} => {}",
            self.euler_characteristic,
            if self.euler_ok { "ok" } else { "expected 1" },
            self.boundary_edges_closed,
            self.boundary_links_connected,
            self.boundary_connected,
            if self.pass() { "pass" } else { "FAIL" }
        )
    }
}

/// Checks the necessary conditions used in place of a full homotopy test:
/// Euler characteristic 1 and a closed, connected boundary surface with
/// single-cycle vertex links.
pub fn check_ball_hypothesis(tables: &FaceTables) -> BallDiagnostics {
    let euler = tables.f(0) as i64 - tables.f(1) as i64 + tables.f(2) as i64 - tables.f(3) as i64;

    let boundary_tris: Vec<usize> = (0..tables.triangles().len())
        .filter(|&t| !tables.is_triangle_interior(t))
        .collect();

    // Count boundary triangles per boundary edge.
    let mut boundary_edge_tris: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &t in &boundary_tris {
        for e in tables.triangle_edge_ids(t) {
            boundary_edge_tris.entry(e).or_default().push(t);
        }
    }
    let boundary_edges_closed = boundary_edge_tris.values().all(|tris| tris.len() == 2);

    // Vertex links: boundary triangles around a boundary vertex must form a
    // single edge-connected component (two fans meeting only at the vertex
    // indicate a pinch point even when every edge is closed).
    let mut boundary_links_connected = true;
    for (vp, &v) in tables.vertices().iter().enumerate() {
        let star: Vec<usize> = tables
            .vertex_triangles(vp)
            .iter()
            .copied()
            .filter(|&t| !tables.is_triangle_interior(t))
            .collect();
        if star.is_empty() {
            continue;
        }
        let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &t in &star {
            for e in tables.triangle_edge_ids(t) {
                if tables.edges()[e].contains(&v) {
                    adjacency.entry(e).or_default().push(t);
                }
            }
        }
        if !connected_by_shared_keys(&star, &adjacency) {
            boundary_links_connected = false;
        }
    }

    // Global connectivity of the boundary surface.
    let mut tri_adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (&e, tris) in &boundary_edge_tris {
        tri_adjacency.insert(e, tris.clone());
    }
    let boundary_connected =
        boundary_tris.is_empty() || connected_by_shared_keys(&boundary_tris, &tri_adjacency);

    BallDiagnostics {
        euler_characteristic: euler,
        euler_ok: euler == 1,
        boundary_edges_closed,
        boundary_links_connected,
        boundary_connected,
    }
}

/// True if the given triangles form one component when two triangles are
/// adjacent whenever they appear under a common key.
fn connected_by_shared_keys(tris: &[usize], groups: &BTreeMap<usize, Vec<usize>>) -> bool {
    if tris.is_empty() {
        return true;
    }
    let mut visited: BTreeSet<usize> = BTreeSet::new();
    let mut stack = vec![tris[0]];
    while let Some(t) = stack.pop() {
        if !visited.insert(t) {
            continue;
        }
        for members in groups.values() {
            if members.contains(&t) {
                for &other in members {
                    if !visited.contains(&other) {
                        stack.push(other);
                    }
                }
            }
        }
    }
    tris.iter().all(|t| visited.contains(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    const SINGLE_TET: &str = "tetmesh 1\nvertices 4\n0 0 0\n1 0 0\n0 1 0\n0 0 1\ntets 1\n0 1 2 3\n";

    #[test]
    fn parses_single_tet() {
        let complex = parse_mesh(SINGLE_TET).unwrap();
        assert_eq!(complex.vertices().len(), 4);
        assert_eq!(complex.tets().len(), 1);
    }

    #[test]
    fn parses_clough_tocher_with_rationals_and_comments() {
        let text = "# unit tetrahedron split about its centroid\n\
                    tetmesh 1\n\
                    vertices 5\n\
                    0 0 0\n1 0 0\n0 1 0\n0 0 1\n\
                    1/4 1/4 1/4  # interior point\n\
                    tets 4\n\
                    0 1 2 4\n0 1 3 4\n0 2 3 4\n1 2 3 4\n";
        let complex = parse_mesh(text).unwrap();
        assert_eq!(complex.vertices().len(), 5);
        assert_eq!(complex.tets().len(), 4);
    }

    #[test]
    fn coplanar_tet_rejected() {
        let text = "tetmesh 1\nvertices 4\n0 0 0\n1 0 0\n0 1 0\n1 1 0\ntets 1\n0 1 2 3\n";
        assert_eq!(
            parse_mesh(text).unwrap_err(),
            MeshError::DegenerateTet { tet: 0 }
        );
    }

    #[test]
    fn duplicate_tet_rejected() {
        let text = "tetmesh 1\nvertices 4\n0 0 0\n1 0 0\n0 1 0\n0 0 1\ntets 2\n0 1 2 3\n3 2 1 0\n";
        assert_eq!(
            parse_mesh(text).unwrap_err(),
            MeshError::DuplicateTet {
                first: 0,
                second: 1
            }
        );
    }

    #[test]
    fn out_of_range_index_rejected() {
        let text = "tetmesh 1\nvertices 4\n0 0 0\n1 0 0\n0 1 0\n0 0 1\ntets 1\n0 1 2 7\n";
        assert!(matches!(
            parse_mesh(text).unwrap_err(),
            MeshError::IndexOutOfRange { index: 7, .. }
        ));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let text = "tetmesh 1\nvertices 1\n0 0\ntets 0\n";
        assert_eq!(
            parse_mesh(text).unwrap_err(),
            MeshError::Syntax {
                line: 3,
                message: "expected 3 coordinates, found 2".into()
            }
        );
        let text = "tetmesh 2\n";
        assert!(matches!(
            parse_mesh(text).unwrap_err(),
            MeshError::Syntax { line: 1, .. }
        ));
        let text = "tetmesh 1\nvertices 1\n1/0 0 0\ntets 0\n";
        assert!(matches!(
            parse_mesh(text).unwrap_err(),
            MeshError::Syntax { line: 3, .. }
        ));
    }

    #[test]
    fn single_tet_face_counts() {
        let complex = parse_mesh(SINGLE_TET).unwrap();
        let tables = build_face_tables(&complex).unwrap();
        assert_eq!(
            [tables.f(0), tables.f(1), tables.f(2), tables.f(3)],
            [4, 6, 4, 1]
        );
        assert_eq!(
            [tables.f0(0), tables.f0(1), tables.f0(2), tables.f0(3)],
            [0, 0, 0, 1]
        );
    }

    #[test]
    fn clough_tocher_face_counts() {
        let complex = parse_mesh(&builtin::clough_tocher()).unwrap();
        let tables = build_face_tables(&complex).unwrap();
        assert_eq!(
            [tables.f(0), tables.f(1), tables.f(2), tables.f(3)],
            [5, 10, 10, 4]
        );
        assert_eq!(
            [tables.f0(0), tables.f0(1), tables.f0(2), tables.f0(3)],
            [1, 4, 6, 4]
        );
    }

    #[test]
    fn octahedron_face_counts() {
        let complex = parse_mesh(&builtin::octahedron_regular()).unwrap();
        let tables = build_face_tables(&complex).unwrap();
        assert_eq!(
            [tables.f(0), tables.f(1), tables.f(2), tables.f(3)],
            [7, 18, 20, 8]
        );
        assert_eq!(
            [tables.f0(0), tables.f0(1), tables.f0(2), tables.f0(3)],
            [1, 6, 12, 8]
        );
    }

    #[test]
    fn face_enumeration_covers_all_tet_subfaces() {
        let complex = parse_mesh(&builtin::octahedron_regular()).unwrap();
        let tables = build_face_tables(&complex).unwrap();
        for tet in complex.tets() {
            for i in 0..4 {
                assert!(tables.vertices().binary_search(&tet[i]).is_ok());
                for j in i + 1..4 {
                    assert!(tables.edge_id([tet[i], tet[j]]).is_some());
                }
            }
        }
        // Interior + boundary partition each face set.
        assert_eq!(
            tables.f(2),
            tables.f0(2)
                + (0..tables.triangles().len())
                    .filter(|&t| !tables.is_triangle_interior(t))
                    .count()
        );
    }

    #[test]
    fn triangle_in_three_tets_rejected() {
        // Three tets glued along the same triangle (0,1,2).
        let text = "tetmesh 1\nvertices 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n0 0 -1\n1 1 1\n\
                    tets 3\n0 1 2 3\n0 1 2 4\n0 1 2 5\n";
        let complex = parse_mesh(text).unwrap();
        assert!(matches!(
            build_face_tables(&complex).unwrap_err(),
            MeshError::NonPseudomanifold { count: 3, .. }
        ));
    }

    #[test]
    fn ball_diagnostics_pass_for_builtins() {
        for text in [
            builtin::clough_tocher(),
            builtin::octahedron_regular(),
            builtin::octahedron_generic(),
        ] {
            let complex = parse_mesh(&text).unwrap();
            let tables = build_face_tables(&complex).unwrap();
            let diag = check_ball_hypothesis(&tables);
            assert_eq!(diag.euler_characteristic, 1);
            assert!(diag.pass(), "diagnostics failed: {diag}");
        }
    }

    #[test]
    fn pinched_point_fails_boundary_surface_check() {
        // Two tets sharing exactly one vertex. The Euler characteristic is
        // still 1 and every boundary edge closes up, but the link of the
        // shared vertex is two disjoint fans.
        let text = "tetmesh 1\nvertices 7\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n-1 0 0\n0 -1 0\n0 0 -1\n\
                    tets 2\n0 1 2 3\n0 4 5 6\n";
        let complex = parse_mesh(text).unwrap();
        let tables = build_face_tables(&complex).unwrap();
        let diag = check_ball_hypothesis(&tables);
        assert_eq!(diag.euler_characteristic, 1);
        assert!(diag.boundary_edges_closed);
        assert!(!diag.boundary_links_connected);
        assert!(!diag.pass());
    }

    #[test]
    fn tables_are_deterministic() {
        let text = builtin::octahedron_generic();
        let a = build_face_tables(&parse_mesh(&text).unwrap()).unwrap();
        let b = build_face_tables(&parse_mesh(&text).unwrap()).unwrap();
        assert_eq!(a.triangles(), b.triangles());
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.interior_edges(), b.interior_edges());
    }
}
