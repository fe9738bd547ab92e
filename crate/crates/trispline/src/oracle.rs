//! Ground-truth spline space dimension by exact linear algebra on the
//! defining smoothness conditions, independent of the chain-complex
//! pipeline.
//!
//! Unknowns are one polynomial of degree ≤ `k` in three variables per tet
//! plus one cofactor of degree ≤ `k − r − 1` per interior triangle; each
//! interior triangle contributes the coefficient-wise equations
//! `f_T − f_T' − ℓ^{r+1}·g = 0`, where `ℓ` is the affine plane equation of
//! the triangle. Since `ℓ^{r+1}·g = 0` forces `g = 0`, the solution space
//! projects injectively onto the splines and the dimension is the nullity
//! of the full system.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::forms::{LinearForm, Rational, RationalMatrix};
use crate::mesh::FaceTables;

/// Ordered basis of the monomials of total degree at most `max_degree` in
/// three variables: ascending by degree, graded-lex within a degree.
struct AffineBasis {
    exponents: Vec<[u32; 3]>,
    positions: HashMap<[u32; 3], usize>,
}

impl AffineBasis {
    fn new(max_degree: i64) -> Self {
        let mut exponents = Vec::new();
        if max_degree >= 0 {
            for degree in 0..=max_degree as u32 {
                for i in (0..=degree).rev() {
                    for j in (0..=degree - i).rev() {
                        exponents.push([i, j, degree - i - j]);
                    }
                }
            }
        }
        let positions = exponents.iter().enumerate().map(|(p, &e)| (e, p)).collect();
        Self {
            exponents,
            positions,
        }
    }

    fn len(&self) -> usize {
        self.exponents.len()
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

/// Terms of `(a·x + b·y + c·z + d)^power`, the dehomogenization at `w = 1`
/// of the given form, as exponent/coefficient pairs.
fn affine_power_terms(form: &LinearForm, power: u32) -> Vec<([u32; 3], BigInt)> {
    let coeffs = form.coeffs();
    let power_factorial = factorial(power);
    let mut terms = Vec::new();
    for i in 0..=power {
        for j in 0..=power - i {
            for l in 0..=power - i - j {
                let m = power - i - j - l;
                let mut coeff = power_factorial.clone();
                for part in [i, j, l, m] {
                    coeff /= factorial(part);
                }
                for (idx, e) in [(0, i), (1, j), (2, l), (3, m)] {
                    if e > 0 {
                        if coeffs[idx].is_zero() {
                            coeff = BigInt::zero();
                            break;
                        }
                        coeff *= coeffs[idx].pow(e);
                    }
                }
                if !coeff.is_zero() {
                    terms.push(([i, j, l], coeff));
                }
            }
        }
    }
    terms
}

/// Exact rational constraint system for the smoothness conditions.
pub struct SmoothnessSystem {
    pub matrix: RationalMatrix,
    pub unknowns: usize,
    /// Coefficients per tet polynomial, `C(k+3,3)`.
    pub poly_block: usize,
    /// Coefficients per cofactor, `C(k−r+2,3)` (zero when `k ≤ r`).
    pub cofactor_block: usize,
    /// First column of the cofactor blocks.
    pub cofactor_offset: usize,
}

/// Assembles the smoothness constraints: for every interior triangle, with
/// its two tets taken in ascending index order, the coefficient-wise
/// equations of `f_T − f_T' − ℓ^{r+1}·g_σ = 0` in degree ≤ `k`.
pub fn build_system(tables: &FaceTables, forms: &[LinearForm], r: u32, k: u32) -> SmoothnessSystem {
    let poly_basis = AffineBasis::new(i64::from(k));
    let cof_basis = AffineBasis::new(i64::from(k) - i64::from(r) - 1);
    let b = poly_basis.len();
    let g = cof_basis.len();

    let interior: Vec<usize> = tables.interior_triangles();
    let tet_count = tables.tet_count();
    let cofactor_offset = tet_count * b;
    let unknowns = cofactor_offset + interior.len() * g;

    let mut matrix = RationalMatrix::zeros(interior.len() * b, unknowns);
    for (si, &t) in interior.iter().enumerate() {
        let tets = tables.triangle_tets(t);
        debug_assert_eq!(tets.len(), 2);
        let (t1, t2) = (tets[0].min(tets[1]), tets[0].max(tets[1]));
        let row_off = si * b;
        for q in 0..b {
            matrix.set(row_off + q, t1 * b + q, Rational::one());
            matrix.set(row_off + q, t2 * b + q, -Rational::one());
        }
        if g > 0 {
            let pow = affine_power_terms(&forms[t], r + 1);
            for (mu_idx, mu) in cof_basis.exponents.iter().enumerate() {
                let col = cofactor_offset + si * g + mu_idx;
                for (exp, coeff) in &pow {
                    let target = [exp[0] + mu[0], exp[1] + mu[1], exp[2] + mu[2]];
                    let q = poly_basis.positions[&target];
                    let previous = matrix.at(row_off + q, col).clone();
                    matrix.set(
                        row_off + q,
                        col,
                        previous - BigRational::from(coeff.clone()),
                    );
                }
            }
        }
    }

    SmoothnessSystem {
        matrix,
        unknowns,
        poly_block: b,
        cofactor_block: g,
        cofactor_offset,
    }
}

/// Dimension of the degree-`k` spline space with global smoothness `r`:
/// the nullity of the full constraint system.
pub fn spline_dim(tables: &FaceTables, forms: &[LinearForm], r: u32, k: u32) -> usize {
    let system = build_system(tables, forms, r, k);
    system.unknowns - system.matrix.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::forms::binom;
    use crate::forms::triangle_planes;
    use crate::mesh::{build_face_tables, parse_mesh};

    fn setup(text: &str) -> (FaceTables, Vec<LinearForm>) {
        let complex = parse_mesh(text).unwrap();
        let tables = build_face_tables(&complex).unwrap();
        let forms = triangle_planes(&complex, &tables);
        (tables, forms)
    }

    const SINGLE_TET: &str = "tetmesh 1\nvertices 4\n0 0 0\n1 0 0\n0 1 0\n0 0 1\ntets 1\n0 1 2 3\n";

    #[test]
    fn single_tet_has_empty_system() {
        let (tables, forms) = setup(SINGLE_TET);
        for r in 0..=2u32 {
            for k in 0..=4u32 {
                assert_eq!(
                    spline_dim(&tables, &forms, r, k),
                    binom(i64::from(k) + 3, 3) as usize
                );
            }
        }
    }

    #[test]
    fn two_tets_continuous_linears() {
        // Two tets glued along the triangle in the plane z = 0; continuous
        // piecewise linear functions are determined by the five vertex
        // values.
        let text = "tetmesh 1\nvertices 5\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n0 0 -1\n\
                    tets 2\n0 1 2 3\n0 1 2 4\n";
        let (tables, forms) = setup(text);
        assert_eq!(spline_dim(&tables, &forms, 0, 1), 5);
    }

    #[test]
    fn clough_tocher_r1_low_degrees() {
        let (tables, forms) = setup(&builtin::clough_tocher());
        assert_eq!(spline_dim(&tables, &forms, 1, 0), 1);
        assert_eq!(spline_dim(&tables, &forms, 1, 1), 4);
        assert_eq!(spline_dim(&tables, &forms, 1, 2), 10);
        assert_eq!(spline_dim(&tables, &forms, 1, 3), 20);
    }

    #[test]
    fn regular_octahedron_matches_closed_form_spot_checks() {
        let (tables, forms) = setup(&builtin::octahedron_regular());
        assert_eq!(spline_dim(&tables, &forms, 1, 3), 32);
        for (r, k) in [(0u32, 1u32), (0, 2), (1, 2), (2, 3)] {
            let (r_i, k_i) = (i64::from(r), i64::from(k));
            let expected = binom(k_i + 3, 3)
                + 3 * binom(k_i + 2 - r_i, 3)
                + 3 * binom(k_i + 1 - 2 * r_i, 3)
                + binom(k_i - 3 * r_i, 3);
            assert_eq!(
                spline_dim(&tables, &forms, r, k) as i64,
                expected,
                "r={r} k={k}"
            );
        }
    }

    #[test]
    fn degree_at_most_r_forces_global_polynomials() {
        for text in [builtin::clough_tocher(), builtin::octahedron_generic()] {
            let (tables, forms) = setup(&text);
            for r in 0..=2u32 {
                for k in 0..=r {
                    assert_eq!(
                        spline_dim(&tables, &forms, r, k),
                        binom(i64::from(k) + 3, 3) as usize
                    );
                }
            }
        }
    }

    #[test]
    fn monotone_in_degree_and_smoothness() {
        let (tables, forms) = setup(&builtin::clough_tocher());
        let mut previous = 0;
        for k in 0..=4u32 {
            let dim = spline_dim(&tables, &forms, 1, k);
            assert!(dim >= previous, "k={k}");
            assert!(dim >= binom(i64::from(k) + 3, 3) as usize);
            previous = dim;
        }
        for k in 2..=4u32 {
            assert!(
                spline_dim(&tables, &forms, 1, k) >= spline_dim(&tables, &forms, 2, k),
                "k={k}"
            );
        }
    }

    #[test]
    fn splitting_a_tet_never_shrinks_the_space() {
        let (single_tables, single_forms) = setup(SINGLE_TET);
        let (ct_tables, ct_forms) = setup(&builtin::clough_tocher());
        for r in 0..=2u32 {
            for k in 0..=4u32 {
                assert!(
                    spline_dim(&ct_tables, &ct_forms, r, k)
                        >= spline_dim(&single_tables, &single_forms, r, k),
                    "r={r} k={k}"
                );
            }
        }
    }

    #[test]
    fn cofactor_columns_have_full_rank() {
        // A solution with all tet polynomials zero forces every cofactor to
        // zero, which is exactly full column rank of the cofactor blocks.
        let (tables, forms) = setup(&builtin::clough_tocher());
        for (r, k) in [(1u32, 3u32), (2, 4)] {
            let system = build_system(&tables, &forms, r, k);
            let g_cols = system.unknowns - system.cofactor_offset;
            let rows: Vec<Vec<Rational>> = (0..system.matrix.rows())
                .map(|row| {
                    (system.cofactor_offset..system.unknowns)
                        .map(|c| system.matrix.at(row, c).clone())
                        .collect()
                })
                .collect();
            let submatrix = RationalMatrix::from_rows(rows);
            assert_eq!(submatrix.rank(), g_cols, "r={r} k={k}");
        }
    }

    #[test]
    fn agrees_with_chain_complex_route_spot_checks() {
        use crate::homology::spline_dim_via_h2;
        for text in [builtin::clough_tocher(), builtin::octahedron_regular()] {
            let (tables, forms) = setup(&text);
            for r in 0..=1u32 {
                for k in 0..=3u32 {
                    assert_eq!(
                        spline_dim(&tables, &forms, r, k),
                        spline_dim_via_h2(&tables, &forms, r, k),
                        "r={r} k={k}"
                    );
                }
            }
        }
    }
}
