//! Degree-by-degree homology of the chain complex of ideals attached to the
//! interior faces: per-face graded bases, signed boundary matrices relative
//! to the boundary complex, and the dimensions of `H0`, `H1`, `H2`.
//!
//! `H2` is the kernel of the triangle-to-edge map and controls the spline
//! space; vanishing of `H0` and `H1` through a degree certifies the
//! free-case dimension formula through that degree.

use num_traits::Zero;

use crate::forms::{
    binom, form_power_times_monomial, LinearForm, MonomialBasis, Rational, RationalMatrix,
};
use crate::mesh::FaceTables;

/// Graded degree-`k` slice of the chain complex: a row basis for every
/// interior-face ideal piece plus the two assembled boundary matrices.
pub struct GradedChainSlice {
    pub r: u32,
    pub k: u32,
    /// Interior triangle ids, and a row basis of each ideal piece.
    pub triangles: Vec<usize>,
    pub triangle_bases: Vec<RationalMatrix>,
    /// Interior edge ids, and a row basis of each ideal piece.
    pub edges: Vec<usize>,
    pub edge_bases: Vec<RationalMatrix>,
    /// Interior vertex positions, and a row basis of each ideal piece.
    pub vertices: Vec<usize>,
    pub vertex_bases: Vec<RationalMatrix>,
    /// Triangle basis vectors mapped into the interior-edge blocks.
    d2: RationalMatrix,
    /// Edge basis vectors mapped into the interior-vertex blocks.
    d1: RationalMatrix,
    rank_d1: std::sync::OnceLock<usize>,
    rank_d2: std::sync::OnceLock<usize>,
}

impl GradedChainSlice {
    pub fn triangle_dim_sum(&self) -> usize {
        self.triangle_bases.iter().map(RationalMatrix::rows).sum()
    }

    pub fn edge_dim_sum(&self) -> usize {
        self.edge_bases.iter().map(RationalMatrix::rows).sum()
    }

    pub fn vertex_dim_sum(&self) -> usize {
        self.vertex_bases.iter().map(RationalMatrix::rows).sum()
    }

    pub fn rank_d1(&self) -> usize {
        *self.rank_d1.get_or_init(|| self.d1.rank())
    }

    pub fn rank_d2(&self) -> usize {
        *self.rank_d2.get_or_init(|| self.d2.rank())
    }

    /// Exact check that the composite boundary map vanishes on every
    /// assembled triangle basis vector.
    pub fn boundary_square_is_zero(&self, tables: &FaceTables) -> bool {
        let n = MonomialBasis::new(self.k, 4).len();
        let vertex_block: std::collections::HashMap<usize, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        for row in 0..self.d2.rows() {
            let mut image = vec![Rational::zero(); self.vertices.len() * n];
            for (block, &edge) in self.edges.iter().enumerate() {
                let [a, b] = tables.edges()[edge];
                for (vertex, sign) in [(b, 1i32), (a, -1i32)] {
                    let vpos = tables.vertex_position(vertex).expect("endpoint known");
                    let Some(&vblock) = vertex_block.get(&vpos) else {
                        continue;
                    };
                    for c in 0..n {
                        let value = self.d2.at(row, block * n + c);
                        if value.is_zero() {
                            continue;
                        }
                        let target = &mut image[vblock * n + c];
                        if sign > 0 {
                            *target += value;
                        } else {
                            *target -= value;
                        }
                    }
                }
            }
            if image.iter().any(|v| !v.is_zero()) {
                return false;
            }
        }
        true
    }
}

/// Spanning rows of the degree-`k` piece of the ideal generated by the
/// `(r+1)`-st powers of the given triangle forms.
fn ideal_spanning_rows(
    forms: &[LinearForm],
    triangle_ids: &[usize],
    r: u32,
    k: u32,
    basis: &MonomialBasis,
) -> Vec<Vec<Rational>> {
    if k < r + 1 {
        return Vec::new();
    }
    let multipliers = MonomialBasis::new(k - r - 1, 4);
    let mut rows = Vec::with_capacity(triangle_ids.len() * multipliers.len());
    for &t in triangle_ids {
        for m in multipliers.iter() {
            rows.push(
                form_power_times_monomial(&forms[t], r + 1, m, basis)
                    .expect("degrees align by construction"),
            );
        }
    }
    rows
}

/// Reduces spanning rows to a row basis (a subset of the original rows).
fn row_basis(rows: Vec<Vec<Rational>>, cols: usize) -> RationalMatrix {
    if rows.is_empty() {
        return RationalMatrix::zeros(0, cols);
    }
    let matrix = RationalMatrix::from_rows(rows);
    let picked = matrix.independent_rows();
    RationalMatrix::from_rows(picked.iter().map(|&i| matrix.row(i).to_vec()).collect())
}

/// Signed interior-edge incidence of a sorted triangle `(a, b, c)`:
/// `+(b,c) − (a,c) + (a,b)`, with boundary edges dropped (the complex is
/// taken relative to the boundary).
fn triangle_incidence(tables: &FaceTables, triangle: usize) -> Vec<(usize, i32)> {
    let [a, b, c] = tables.triangles()[triangle];
    [([b, c], 1), ([a, c], -1), ([a, b], 1)]
        .into_iter()
        .filter_map(|(key, sign)| {
            let e = tables.edge_id(key).expect("triangle edge exists");
            tables.is_edge_interior(e).then_some((e, sign))
        })
        .collect()
}

/// Assembles the degree-`k` slice: bases of every interior-face ideal piece
/// and the boundary matrices between them.
pub fn assemble_slice(
    tables: &FaceTables,
    forms: &[LinearForm],
    r: u32,
    k: u32,
) -> GradedChainSlice {
    let basis = MonomialBasis::new(k, 4);
    let n = basis.len();

    let triangles = tables.interior_triangles();
    let edges = tables.interior_edges();
    let vertices = tables.interior_vertices();

    // Triangle pieces: multiples of a single form power are already
    // independent, so the spanning set is the basis.
    let triangle_bases: Vec<RationalMatrix> = triangles
        .iter()
        .map(|&t| {
            let rows = ideal_spanning_rows(forms, &[t], r, k, &basis);
            if rows.is_empty() {
                RationalMatrix::zeros(0, n)
            } else {
                RationalMatrix::from_rows(rows)
            }
        })
        .collect();

    let edge_bases: Vec<RationalMatrix> = edges
        .iter()
        .map(|&e| {
            let incident: Vec<usize> = tables
                .edge_triangles(e)
                .iter()
                .copied()
                .filter(|&t| tables.is_triangle_interior(t))
                .collect();
            row_basis(ideal_spanning_rows(forms, &incident, r, k, &basis), n)
        })
        .collect();

    let vertex_bases: Vec<RationalMatrix> = vertices
        .iter()
        .map(|&v| {
            let incident: Vec<usize> = tables
                .vertex_triangles(v)
                .iter()
                .copied()
                .filter(|&t| tables.is_triangle_interior(t))
                .collect();
            row_basis(ideal_spanning_rows(forms, &incident, r, k, &basis), n)
        })
        .collect();

    let incidences: Vec<Vec<(usize, i32)>> = triangles
        .iter()
        .map(|&t| triangle_incidence(tables, t))
        .collect();

    // d2: each triangle basis vector lands, with signs, in the blocks of the
    // interior edges of its triangle.
    let edge_block: std::collections::HashMap<usize, usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let d2_rows: usize = triangle_bases.iter().map(RationalMatrix::rows).sum();
    let mut d2 = RationalMatrix::zeros(d2_rows, edges.len() * n);
    let mut row = 0;
    for (ti, tbasis) in triangle_bases.iter().enumerate() {
        for local in 0..tbasis.rows() {
            for &(edge, sign) in &incidences[ti] {
                let block = edge_block[&edge];
                for c in 0..n {
                    let value = tbasis.at(local, c);
                    if value.is_zero() {
                        continue;
                    }
                    let signed = if sign > 0 {
                        value.clone()
                    } else {
                        -value.clone()
                    };
                    d2.set(row, block * n + c, signed);
                }
            }
            row += 1;
        }
    }

    // d1: each edge basis vector lands at +(second vertex) −(first vertex),
    // skipping boundary vertices.
    let vertex_block: std::collections::HashMap<usize, usize> =
        vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let d1_rows: usize = edge_bases.iter().map(RationalMatrix::rows).sum();
    let mut d1 = RationalMatrix::zeros(d1_rows, vertices.len() * n);
    let mut row = 0;
    for (ei, ebasis) in edge_bases.iter().enumerate() {
        let [a, b] = tables.edges()[edges[ei]];
        for local in 0..ebasis.rows() {
            for (vertex, sign) in [(b, 1i32), (a, -1i32)] {
                let vpos = tables.vertex_position(vertex).expect("endpoint known");
                let Some(&block) = vertex_block.get(&vpos) else {
                    continue;
                };
                for c in 0..n {
                    let value = ebasis.at(local, c);
                    if value.is_zero() {
                        continue;
                    }
                    let signed = if sign > 0 {
                        value.clone()
                    } else {
                        -value.clone()
                    };
                    d1.set(row, block * n + c, signed);
                }
            }
            row += 1;
        }
    }

    GradedChainSlice {
        r,
        k,
        triangles,
        triangle_bases,
        edges,
        edge_bases,
        vertices,
        vertex_bases,
        d2,
        d1,
        rank_d1: std::sync::OnceLock::new(),
        rank_d2: std::sync::OnceLock::new(),
    }
}

/// Dimensions `(h0, h1, h2)` of the homology of the slice:
/// `h0 = Σ dim J(γ)_k − rank ∂1`, `h1 = Σ dim J(τ)_k − rank ∂1 − rank ∂2`,
/// `h2 = Σ dim J(σ)_k − rank ∂2`.
pub fn homology_dims(slice: &GradedChainSlice) -> (usize, usize, usize) {
    let rank_d1 = slice.rank_d1();
    let rank_d2 = slice.rank_d2();
    let h0 = slice.vertex_dim_sum() - rank_d1;
    let h1 = slice.edge_dim_sum() - rank_d1 - rank_d2;
    let h2 = slice.triangle_dim_sum() - rank_d2;
    (h0, h1, h2)
}

/// Spline space dimension read off a slice: `C(k+3,3) + dim H2`.
pub fn spline_dim_for_slice(slice: &GradedChainSlice) -> usize {
    let (_, _, h2) = homology_dims(slice);
    binom(i64::from(slice.k) + 3, 3) as usize + h2
}

/// Dimension of the degree-`k` spline space through the chain complex:
/// `C(k+3,3) + dim H2`.
pub fn spline_dim_via_h2(tables: &FaceTables, forms: &[LinearForm], r: u32, k: u32) -> usize {
    let slice = assemble_slice(tables, forms, r, k);
    spline_dim_for_slice(&slice)
}

/// Result of checking the Euler-characteristic identity against an
/// independently computed dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerCheck {
    pub pass: bool,
    /// `identity value − oracle value`; zero exactly when the two pipelines
    /// agree.
    pub residual: i64,
}

/// Verifies `dim = Σ_i (−1)^i Σ_{β} dim(R/J(β))_k + h1 − h0` against the
/// supplied dimension, returning pass/fail and the integer residual.
pub fn euler_identity_check(
    tables: &FaceTables,
    forms: &[LinearForm],
    r: u32,
    k: u32,
    oracle_dim: usize,
) -> EulerCheck {
    let slice = assemble_slice(tables, forms, r, k);
    euler_identity_for_slice(tables, &slice, oracle_dim)
}

/// Slice-based form of [`euler_identity_check`] so callers can reuse an
/// assembled slice and its cached boundary ranks.
pub fn euler_identity_for_slice(
    tables: &FaceTables,
    slice: &GradedChainSlice,
    oracle_dim: usize,
) -> EulerCheck {
    let (h0, h1, _) = homology_dims(slice);
    let n = binom(i64::from(slice.k) + 3, 3);

    // Alternating sum of dim (R/J(β))_k over interior faces, by descending
    // face dimension; the tet ideals are zero.
    let mut identity = tables.f(3) as i64 * n;
    for basis in &slice.triangle_bases {
        identity -= n - basis.rows() as i64;
    }
    for basis in &slice.edge_bases {
        identity += n - basis.rows() as i64;
    }
    for basis in &slice.vertex_bases {
        identity -= n - basis.rows() as i64;
    }
    identity += h1 as i64 - h0 as i64;

    let residual = identity - oracle_dim as i64;
    EulerCheck {
        pass: residual == 0,
        residual,
    }
}

/// Upper estimate for `dim H0` under a vertex numbering:
/// `Σ_γ (dim J(γ)_k − dim J̃(γ)_k)`, where the reduced ideal uses only
/// triangles containing an edge from the vertex to the boundary or to an
/// earlier-numbered interior vertex. An estimate of zero certifies `h0 = 0`
/// without computing any boundary rank.
pub fn h0_upper_estimate(
    tables: &FaceTables,
    forms: &[LinearForm],
    r: u32,
    k: u32,
    vertex_ordering: &[usize],
) -> usize {
    let basis = MonomialBasis::new(k, 4);
    let n = basis.len();
    let rank_of: std::collections::HashMap<usize, usize> = vertex_ordering
        .iter()
        .enumerate()
        .map(|(pos, &v)| (v, pos))
        .collect();

    let mut estimate = 0;
    for (pos, &vpos) in vertex_ordering.iter().enumerate() {
        let vertex_id = tables.vertices()[vpos];
        let full: Vec<usize> = tables
            .vertex_triangles(vpos)
            .iter()
            .copied()
            .filter(|&t| tables.is_triangle_interior(t))
            .collect();
        let mut reduced: Vec<usize> = Vec::new();
        for &e in tables.vertex_edges(vpos) {
            if !tables.is_edge_interior(e) {
                continue;
            }
            let [a, b] = tables.edges()[e];
            let other = if a == vertex_id { b } else { a };
            let other_pos = tables.vertex_position(other).expect("endpoint known");
            let qualifies = !tables.is_vertex_interior(other_pos)
                || rank_of.get(&other_pos).is_some_and(|&p| p < pos);
            if qualifies {
                for &t in tables.edge_triangles(e) {
                    if tables.is_triangle_interior(t) && !reduced.contains(&t) {
                        reduced.push(t);
                    }
                }
            }
        }
        let full_dim = row_basis(ideal_spanning_rows(forms, &full, r, k, &basis), n).rows();
        let reduced_dim = row_basis(ideal_spanning_rows(forms, &reduced, r, k, &basis), n).rows();
        estimate += full_dim - reduced_dim;
    }
    estimate
}
