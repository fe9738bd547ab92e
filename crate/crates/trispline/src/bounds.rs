//! The three dimension bounds for a fixed smoothness `r` and degree `k`:
//! an ordered upper bound driven by restricted per-edge plane counts, an
//! upper bound valid in the free case, and an ordered lower bound, plus a
//! search over candidate orderings since bound tightness depends on the
//! numbering chosen for interior edges and vertices.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::forms::{binom, distinct_forms, LinearForm};
use crate::ideals::{edge_ideal_dim_closed, froberg_sum, resolution_data, ResolutionData};
use crate::mesh::FaceTables;

/// Per-interior-edge data under a chosen numbering: `s` counts all distinct
/// planes of incident interior triangles, `s_tilde` only those of triangles
/// whose other two edges are on the boundary or carry a smaller index.
#[derive(Clone, Debug)]
pub struct EdgeProfile {
    /// Edge id in the face tables.
    pub edge: usize,
    /// 1-based position in the numbering.
    pub index: usize,
    pub s: u32,
    pub s_tilde: u32,
    pub res_s: ResolutionData,
    /// `None` when `s_tilde = 0`; such an edge contributes nothing.
    pub res_s_tilde: Option<ResolutionData>,
}

/// Per-interior-vertex data under a chosen numbering: `t` counts all
/// distinct planes through the vertex, `t_tilde` only those of triangles
/// containing an edge that connects the vertex to the boundary or to an
/// earlier-numbered interior vertex; `zeta = min(3, t_tilde)`.
#[derive(Clone, Debug)]
pub struct VertexProfile {
    /// Position of the vertex in `FaceTables::vertices()`.
    pub vertex: usize,
    /// 1-based position in the numbering.
    pub index: usize,
    pub t: u32,
    pub t_tilde: u32,
    pub zeta: u32,
}

/// Whether the free-case bound has been certified by homology vanishing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreenessStatus {
    Unknown,
    /// `H0` and `H1` vanish in every degree up to the given one.
    FreeThrough(u32),
}

impl fmt::Display for FreenessStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Unknown => write!(f, "unconfirmed"),
            Self::FreeThrough(k) => write!(f, "free through degree {k}"),
        }
    }
}

/// Bounds for one `(r, k)` together with the orderings that achieved them.
#[derive(Clone, Debug)]
pub struct BoundResult {
    pub r: u32,
    pub k: u32,
    pub lower: i64,
    pub upper_ordered: i64,
    pub upper_free: i64,
    pub freeness: FreenessStatus,
    pub edge_ordering: Vec<usize>,
    pub vertex_ordering: Vec<usize>,
}

fn assert_permutation(ordering: &[usize], expected: &[usize], what: &str) {
    let given: HashSet<usize> = ordering.iter().copied().collect();
    let wanted: HashSet<usize> = expected.iter().copied().collect();
    assert!(
        given.len() == ordering.len() && given == wanted,
        "ordering must be a permutation of the interior {what}"
    );
}

/// Distinct planes of the interior triangles incident to each interior edge,
/// indexed by edge id. Independent of any ordering.
pub fn edge_plane_counts(tables: &FaceTables, forms: &[LinearForm]) -> Vec<(usize, u32)> {
    tables
        .interior_edges()
        .into_iter()
        .map(|e| {
            let incident: Vec<LinearForm> = tables
                .edge_triangles(e)
                .iter()
                .filter(|&&t| tables.is_triangle_interior(t))
                .map(|&t| forms[t].clone())
                .collect();
            (e, distinct_forms(&incident).len() as u32)
        })
        .collect()
}

/// Distinct planes of the interior triangles through each interior vertex,
/// indexed by vertex position. Independent of any ordering.
pub fn vertex_plane_counts(tables: &FaceTables, forms: &[LinearForm]) -> Vec<(usize, u32)> {
    tables
        .interior_vertices()
        .into_iter()
        .map(|v| {
            let incident: Vec<LinearForm> = tables
                .vertex_triangles(v)
                .iter()
                .filter(|&&t| tables.is_triangle_interior(t))
                .map(|&t| forms[t].clone())
                .collect();
            (v, distinct_forms(&incident).len() as u32)
        })
        .collect()
}

/// Builds the per-edge profiles for the given numbering of the interior
/// edges (a permutation of `FaceTables::interior_edges()`; the position in
/// the slice is the index `i` of the numbering).
pub fn edge_profiles(
    tables: &FaceTables,
    forms: &[LinearForm],
    r: u32,
    ordering: &[usize],
) -> Vec<EdgeProfile> {
    assert_permutation(ordering, &tables.interior_edges(), "edges");
    let rank_of: HashMap<usize, usize> = ordering
        .iter()
        .enumerate()
        .map(|(pos, &e)| (e, pos))
        .collect();

    ordering
        .iter()
        .enumerate()
        .map(|(pos, &edge)| {
            let mut all = Vec::new();
            let mut qualifying = Vec::new();
            for &t in tables.edge_triangles(edge) {
                if !tables.is_triangle_interior(t) {
                    continue;
                }
                all.push(forms[t].clone());
                let qualifies = tables.other_edges_of_triangle(t, edge).iter().all(|&o| {
                    !tables.is_edge_interior(o) || rank_of.get(&o).is_some_and(|&p| p < pos)
                });
                if qualifies {
                    qualifying.push(forms[t].clone());
                }
            }
            let s = distinct_forms(&all).len() as u32;
            let s_tilde = distinct_forms(&qualifying).len() as u32;
            debug_assert!(s_tilde <= s);
            EdgeProfile {
                edge,
                index: pos + 1,
                s,
                s_tilde,
                res_s: resolution_data(s, r).expect("interior edges see at least one plane"),
                res_s_tilde: resolution_data(s_tilde, r).ok(),
            }
        })
        .collect()
}

/// Builds the per-vertex profiles for the given numbering of the interior
/// vertices (a permutation of `FaceTables::interior_vertices()`).
pub fn vertex_profiles(
    tables: &FaceTables,
    forms: &[LinearForm],
    ordering: &[usize],
) -> Vec<VertexProfile> {
    assert_permutation(ordering, &tables.interior_vertices(), "vertices");
    let rank_of: HashMap<usize, usize> = ordering
        .iter()
        .enumerate()
        .map(|(pos, &v)| (v, pos))
        .collect();

    ordering
        .iter()
        .enumerate()
        .map(|(pos, &vpos)| {
            let all: Vec<LinearForm> = tables
                .vertex_triangles(vpos)
                .iter()
                .filter(|&&t| tables.is_triangle_interior(t))
                .map(|&t| forms[t].clone())
                .collect();
            let reduced = reduced_star_forms(tables, forms, vpos, |other_pos| {
                rank_of.get(&other_pos).is_some_and(|&p| p < pos)
            });
            let t = distinct_forms(&all).len() as u32;
            let t_tilde = distinct_forms(&reduced).len() as u32;
            debug_assert!(t_tilde <= t);
            VertexProfile {
                vertex: vpos,
                index: pos + 1,
                t,
                t_tilde,
                zeta: t_tilde.min(3),
            }
        })
        .collect()
}

/// Forms of the interior triangles containing an edge of the reduced star of
/// the vertex at `vpos`: interior edges to a boundary vertex, or to an
/// interior vertex accepted by `earlier`.
fn reduced_star_forms(
    tables: &FaceTables,
    forms: &[LinearForm],
    vpos: usize,
    earlier: impl Fn(usize) -> bool,
) -> Vec<LinearForm> {
    let vertex_id = tables.vertices()[vpos];
    let mut out = Vec::new();
    for &e in tables.vertex_edges(vpos) {
        if !tables.is_edge_interior(e) {
            continue;
        }
        let [a, b] = tables.edges()[e];
        let other = if a == vertex_id { b } else { a };
        let other_pos = tables
            .vertex_position(other)
            .expect("edge endpoint is a mesh vertex");
        if !tables.is_vertex_interior(other_pos) || earlier(other_pos) {
            for &t in tables.edge_triangles(e) {
                if tables.is_triangle_interior(t) {
                    out.push(forms[t].clone());
                }
            }
        }
    }
    out
}

/// Contribution of one edge to the subtracted sum of the ordered upper
/// bound; zero when no incident triangle qualifies.
fn restricted_edge_term(s_tilde: u32, r: u32, k: u32) -> i64 {
    if s_tilde == 0 {
        0
    } else {
        edge_ideal_dim_closed(s_tilde, r, k)
    }
}

/// Ordered upper bound:
/// `C(k+3,3) + f0_2·C(k+2−r,3) − Σ_i [s̃_i·C(k+2−r,3) − b̃_i·C(k+3−Ω̃_i,3) − ã_i·C(k+2−Ω̃_i,3)]`.
///
/// Valid for every numbering of the interior edges; tighter numberings give
/// smaller values. With no interior edges the bound is
/// `C(k+3,3) + f0_2·C(k+2−r,3)`.
pub fn upper_bound(
    tables: &FaceTables,
    forms: &[LinearForm],
    r: u32,
    k: u32,
    ordering: &[usize],
) -> i64 {
    let profiles = edge_profiles(tables, forms, r, ordering);
    let k_i = i64::from(k);
    let base = binom(k_i + 3, 3) + tables.f0(2) as i64 * binom(k_i + 2 - i64::from(r), 3);
    let subtracted: i64 = profiles
        .iter()
        .map(|p| restricted_edge_term(p.s_tilde, r, k))
        .sum();
    base - subtracted
}

/// Upper bound valid when the spline module is free (`H0 = H1 = 0`): the
/// alternating sum of the local ideal dimensions, with the vertex terms
/// approximated from below by Fröberg prefix sums at the full plane counts
/// `t_i`. Always computable; only a certified bound once homology confirms
/// freeness through the degree of interest.
pub fn upper_bound_free(tables: &FaceTables, forms: &[LinearForm], r: u32, k: u32) -> i64 {
    let k_i = i64::from(k);
    let mut value = binom(k_i + 3, 3) + tables.f0(2) as i64 * binom(k_i + 2 - i64::from(r), 3);
    for (_, s) in edge_plane_counts(tables, forms) {
        value -= edge_ideal_dim_closed(s, r, k);
    }
    value += tables.f0(0) as i64 * binom(k_i + 3, 3);
    for (_, t) in vertex_plane_counts(tables, forms) {
        value -= froberg_sum(t, r + 1, k);
    }
    value
}

/// Ordered lower bound: `C(k+3,3)` plus the positive part of the remaining
/// alternating sum, with the vertex terms using `ζ_i = min(3, t̃_i)` from the
/// given numbering of the interior vertices.
pub fn lower_bound(
    tables: &FaceTables,
    forms: &[LinearForm],
    r: u32,
    k: u32,
    vertex_ordering: &[usize],
) -> i64 {
    let profiles = vertex_profiles(tables, forms, vertex_ordering);
    let k_i = i64::from(k);
    let mut bracket = tables.f0(2) as i64 * binom(k_i + 2 - i64::from(r), 3);
    for (_, s) in edge_plane_counts(tables, forms) {
        bracket -= edge_ideal_dim_closed(s, r, k);
    }
    bracket += tables.f0(0) as i64 * binom(k_i + 3, 3);
    for p in &profiles {
        bracket -= froberg_sum(p.zeta, r + 1, k);
    }
    binom(k_i + 3, 3) + bracket.max(0)
}

/// Advances to the next permutation in lexicographic order; false once the
/// sequence has wrapped around.
fn next_permutation(seq: &mut [usize]) -> bool {
    if seq.len() < 2 {
        return false;
    }
    let mut i = seq.len() - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = seq.len() - 1;
    while seq[j] <= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

/// At most this many items are searched exhaustively (8! = 40320).
const EXHAUSTIVE_LIMIT: usize = 8;

/// Picks the ordering minimizing `eval` (after negation this also maximizes).
/// Exhaustive in lexicographic order for small sets, so ties resolve to the
/// lexicographically smallest ordering; otherwise evaluates the supplied
/// seeds plus seeded random shuffles, `budget` orderings in total.
fn best_ordering(
    items: Vec<usize>,
    seeds: Vec<Vec<usize>>,
    budget: usize,
    mut eval: impl FnMut(&[usize]) -> i64,
) -> (i64, Vec<usize>) {
    if items.len() <= EXHAUSTIVE_LIMIT {
        let mut current = items.clone();
        let mut best_value = eval(&current);
        let mut best = current.clone();
        while next_permutation(&mut current) {
            let value = eval(&current);
            if value < best_value {
                best_value = value;
                best = current.clone();
            }
        }
        return (best_value, best);
    }
    let mut best: Option<(i64, Vec<usize>)> = None;
    let mut consider = |candidate: &[usize], value: i64| {
        let replace = match &best {
            None => true,
            Some((bv, bo)) => value < *bv || (value == *bv && candidate < bo.as_slice()),
        };
        if replace {
            best = Some((value, candidate.to_vec()));
        }
    };
    let mut used = 0;
    for seed in seeds.iter().take(budget) {
        consider(seed, eval(seed));
        used += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e75);
    let mut current = items;
    while used < budget {
        current.shuffle(&mut rng);
        consider(&current, eval(&current));
        used += 1;
    }
    best.expect("budget >= 1 guarantees at least one candidate")
}

/// Greedy edge ordering: repeatedly appends the edge whose restricted term
/// is largest given the prefix placed so far (ties to the smallest id).
fn greedy_edge_ordering(tables: &FaceTables, forms: &[LinearForm], r: u32, k: u32) -> Vec<usize> {
    let mut placed: Vec<usize> = Vec::new();
    let mut placed_set: HashSet<usize> = HashSet::new();
    let mut remaining = tables.interior_edges();
    while !remaining.is_empty() {
        let mut best: Option<(i64, usize)> = None;
        for &e in &remaining {
            let mut qualifying = Vec::new();
            for &t in tables.edge_triangles(e) {
                if !tables.is_triangle_interior(t) {
                    continue;
                }
                let ok = tables
                    .other_edges_of_triangle(t, e)
                    .iter()
                    .all(|&o| !tables.is_edge_interior(o) || placed_set.contains(&o));
                if ok {
                    qualifying.push(forms[t].clone());
                }
            }
            let s_tilde = distinct_forms(&qualifying).len() as u32;
            let term = restricted_edge_term(s_tilde, r, k);
            if best.is_none_or(|(bt, be)| term > bt || (term == bt && e < be)) {
                best = Some((term, e));
            }
        }
        let (_, e) = best.expect("remaining edges nonempty");
        remaining.retain(|&x| x != e);
        placed.push(e);
        placed_set.insert(e);
    }
    placed
}

/// Greedy vertex ordering: repeatedly appends the vertex with the largest
/// reduced plane count given the prefix (ties to the smallest position).
fn greedy_vertex_ordering(tables: &FaceTables, forms: &[LinearForm]) -> Vec<usize> {
    let mut placed: Vec<usize> = Vec::new();
    let mut placed_set: HashSet<usize> = HashSet::new();
    let mut remaining = tables.interior_vertices();
    while !remaining.is_empty() {
        let mut best: Option<(u32, usize)> = None;
        for &vpos in &remaining {
            let reduced =
                reduced_star_forms(tables, forms, vpos, |other| placed_set.contains(&other));
            let zeta = (distinct_forms(&reduced).len() as u32).min(3);
            if best.is_none_or(|(bz, bv)| zeta > bz || (zeta == bz && vpos < bv)) {
                best = Some((zeta, vpos));
            }
        }
        let (_, vpos) = best.expect("remaining vertices nonempty");
        remaining.retain(|&x| x != vpos);
        placed.push(vpos);
        placed_set.insert(vpos);
    }
    placed
}

/// Searches candidate orderings for the tightest ordered upper and lower
/// bounds: exhaustive when at most eight interior edges (resp. vertices)
/// exist, otherwise greedy plus the lexicographic ordering plus seeded
/// random restarts within `budget` evaluations. Ties break toward the
/// lexicographically smallest ordering.
pub fn search_orderings(
    tables: &FaceTables,
    forms: &[LinearForm],
    r: u32,
    k: u32,
    budget: usize,
) -> BoundResult {
    assert!(budget >= 1, "budget must be at least 1");

    let edge_seeds = vec![
        greedy_edge_ordering(tables, forms, r, k),
        tables.interior_edges(),
    ];
    let (upper_ordered, edge_ordering) =
        best_ordering(tables.interior_edges(), edge_seeds, budget, |ordering| {
            upper_bound(tables, forms, r, k, ordering)
        });

    let vertex_seeds = vec![
        greedy_vertex_ordering(tables, forms),
        tables.interior_vertices(),
    ];
    // Negated so the shared minimizer maximizes the lower bound.
    let (neg_lower, vertex_ordering) = best_ordering(
        tables.interior_vertices(),
        vertex_seeds,
        budget,
        |ordering| -lower_bound(tables, forms, r, k, ordering),
    );

    let result = BoundResult {
        r,
        k,
        lower: -neg_lower,
        upper_ordered,
        upper_free: upper_bound_free(tables, forms, r, k),
        freeness: FreenessStatus::Unknown,
        edge_ordering,
        vertex_ordering,
    };
    debug_assert!(result.lower <= result.upper_ordered);
    result
}
