//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (visible with `--nocapture`) and asserting the full set of
//! expected values exactly.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trispline::bounds::{lower_bound, upper_bound, upper_bound_free};
use trispline::builtin;
use trispline::forms::{binom, triangle_planes, LinearForm};
use trispline::homology::{
    assemble_slice, euler_identity_for_slice, homology_dims, spline_dim_for_slice,
};
use trispline::ideals::{
    edge_ideal_dim_closed, expected_e, froberg_f, ideal_dim_rank, ideal_dim_rank_in_vars,
};
use trispline::mesh::{build_face_tables, parse_mesh, FaceTables};
use trispline::oracle::spline_dim;

struct Criterion {
    label: &'static str,
    limit_seconds: Option<f64>,
    started: Instant,
    failures: Vec<String>,
}

impl Criterion {
    fn new(label: &'static str, limit_seconds: Option<f64>) -> Self {
        Self {
            label,
            limit_seconds,
            started: Instant::now(),
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(detail());
        }
    }

    fn finish(mut self) {
        let elapsed = self.started.elapsed().as_secs_f64();
        if let Some(limit) = self.limit_seconds {
            self.check(elapsed < limit, || {
                format!("runtime {elapsed:.1}s exceeded the {limit:.0}s limit")
            });
        }
        if self.failures.is_empty() {
            println!("{}: PASS ({elapsed:.1}s)", self.label);
        } else {
            println!(
                "{}: FAIL ({} issue(s), {elapsed:.1}s)",
                self.label,
                self.failures.len()
            );
            panic!("{} failed:\n  {}", self.label, self.failures.join("\n  "));
        }
    }
}

fn setup(text: &str) -> (FaceTables, Vec<LinearForm>) {
    let complex = parse_mesh(text).unwrap();
    let tables = build_face_tables(&complex).unwrap();
    let forms = triangle_planes(&complex, &tables);
    (tables, forms)
}

#[test]
fn criterion_1_regular_octahedron_closed_form() {
    let mut c = Criterion::new("criterion 1 (regular octahedron closed form)", Some(120.0));
    let (tables, forms) = setup(&builtin::octahedron_regular());
    for r in 0..=2u32 {
        for k in 0..=6u32 {
            let (r_i, k_i) = (i64::from(r), i64::from(k));
            let expected = binom(k_i + 3, 3)
                + 3 * binom(k_i + 2 - r_i, 3)
                + 3 * binom(k_i + 1 - 2 * r_i, 3)
                + binom(k_i - 3 * r_i, 3);
            let got = spline_dim(&tables, &forms, r, k) as i64;
            c.check(got == expected, || {
                format!("r={r} k={k}: oracle {got} != closed form {expected}")
            });
        }
    }
    c.finish();
}

#[test]
fn criterion_2_clough_tocher_r1_exact() {
    let mut c = Criterion::new(
        "criterion 2 (Clough-Tocher r=1 exact dimension)",
        Some(120.0),
    );
    let (tables, forms) = setup(&builtin::clough_tocher());
    let edge_ordering = tables.interior_edges();
    let vertex_ordering = tables.interior_vertices();
    for k in 0..=6u32 {
        let k_i = i64::from(k);
        let exact = if k == 0 {
            1
        } else {
            2 * binom(k_i + 3, 3) - 6 * binom(k_i + 1, 3) + 8 * binom(k_i, 3) - 4
        };
        let oracle = spline_dim(&tables, &forms, 1, k) as i64;
        c.check(oracle == exact, || {
            format!("k={k}: oracle {oracle} != exact dimension {exact}")
        });

        let upper = upper_bound(&tables, &forms, 1, k, &edge_ordering);
        let upper_expected = binom(k_i + 3, 3) + binom(k_i - 1, 3) + 2 * binom(k_i, 3);
        c.check(upper == upper_expected, || {
            format!("k={k}: ordered upper {upper} != {upper_expected}")
        });

        let lower = lower_bound(&tables, &forms, 1, k, &vertex_ordering);
        let bracket =
            -3 * binom(k_i + 1, 3) + 8 * binom(k_i, 3) - 3 * binom(k_i - 1, 3) + binom(k_i - 3, 3);
        let lower_expected = binom(k_i + 3, 3) + bracket.max(0);
        c.check(lower == lower_expected, || {
            format!("k={k}: lower {lower} != {lower_expected}")
        });
    }
    c.finish();
}

#[test]
fn criterion_3_clough_tocher_r2_table() {
    let mut c = Criterion::new("criterion 3 (Clough-Tocher r=2 table)", Some(600.0));
    let (tables, forms) = setup(&builtin::clough_tocher());
    let vertex_ordering = tables.interior_vertices();

    let published_lower: [i64; 9] = [4, 10, 20, 35, 56, 84, 123, 187, 282];
    let published_upper: [i64; 9] = [4, 10, 20, 36, 58, 90, 136, 200, 286];

    let closed_form_start = Instant::now();
    for (i, (&pl, &pu)) in published_lower.iter().zip(&published_upper).enumerate() {
        let k = i as u32 + 1;
        let lower = lower_bound(&tables, &forms, 2, k, &vertex_ordering);
        c.check(lower == pl, || {
            format!("k={k}: lower bound {lower} != published {pl}")
        });
        let upper = upper_bound_free(&tables, &forms, 2, k);
        c.check(upper == pu, || {
            format!("k={k}: free upper bound {upper} != published {pu}")
        });
    }
    let closed_form_elapsed = closed_form_start.elapsed().as_secs_f64();
    c.check(closed_form_elapsed < 1.0, || {
        format!("closed forms took {closed_form_elapsed:.2}s, limit 1s")
    });

    for (i, (&pl, &pu)) in published_lower.iter().zip(&published_upper).enumerate() {
        let k = i as u32 + 1;
        let oracle = spline_dim(&tables, &forms, 2, k) as i64;
        c.check(pl <= oracle && oracle <= pu, || {
            format!("k={k}: oracle {oracle} outside published sandwich [{pl}, {pu}]")
        });
    }
    c.finish();
}

#[test]
fn criterion_4_generic_octahedron() {
    let mut c = Criterion::new("criterion 4 (generic octahedron)", Some(300.0));
    let (tables, forms) = setup(&builtin::octahedron_generic());

    let edge_ordering = tables.interior_edges();
    for k in 0..=6u32 {
        let k_i = i64::from(k);
        let expected =
            binom(k_i + 3, 3) + binom(k_i + 1, 3) + 4 * binom(k_i, 3) + 2 * binom(k_i - 1, 3);
        let upper = upper_bound(&tables, &forms, 1, k, &edge_ordering);
        c.check(upper == expected, || {
            format!("k={k}: ordered upper {upper} != published {expected}")
        });
    }

    for k in 0..=6u32 {
        let slice = assemble_slice(&tables, &forms, 1, k);
        let (h0, h1, _) = homology_dims(&slice);
        c.check(h0 == 0, || format!("r=1 k={k}: h0 = {h0}, expected 0"));
        c.check(h1 == 0, || format!("r=1 k={k}: h1 = {h1}, expected 0"));
    }

    let mut saw_positive_h1 = false;
    for k in 0..=6u32 {
        let slice = assemble_slice(&tables, &forms, 2, k);
        let (_, h1, _) = homology_dims(&slice);
        saw_positive_h1 |= h1 > 0;
    }
    c.check(saw_positive_h1, || {
        "r=2: h1 vanished for every k <= 6, expected a positive value".to_string()
    });
    c.finish();
}

#[test]
fn criterion_5_edge_ideal_equivalence() {
    let mut c = Criterion::new("criterion 5 (edge ideal closed form vs rank)", Some(60.0));
    let mut cases = 0;
    for s in 2..=8u32 {
        let forms: Vec<LinearForm> = (0..s)
            .map(|j| LinearForm::from_i64([1, i64::from(j), 0, 0]).unwrap())
            .collect();
        for r in 0..=3u32 {
            for k in 0..=8u32 {
                cases += 1;
                let closed = edge_ideal_dim_closed(s, r, k);
                let rank = ideal_dim_rank(&forms, r + 1, k) as i64;
                c.check(closed == rank, || {
                    format!("s={s} r={r} k={k}: closed {closed} != rank {rank}")
                });
            }
        }
    }
    c.check(cases == 252, || format!("expected 252 cases, ran {cases}"));
    c.finish();
}

#[test]
fn criterion_6_froberg_chain() {
    let mut c = Criterion::new(
        "criterion 6 (Froberg chain on random form sets)",
        Some(120.0),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(0xF20B);
    for set_index in 0..50 {
        let t = rng.gen_range(1..=8usize);
        let mut forms: Vec<LinearForm> = Vec::new();
        while forms.len() < t {
            let coeffs = [
                rng.gen_range(-9i64..=9),
                rng.gen_range(-9i64..=9),
                rng.gen_range(-9i64..=9),
                0,
            ];
            if coeffs[..3].iter().all(|&x| x == 0) {
                continue;
            }
            let form = LinearForm::from_i64(coeffs).unwrap();
            if !forms.contains(&form) {
                forms.push(form);
            }
        }
        for r in 0..=2u32 {
            for i in 0..=8u32 {
                let quotient =
                    binom(i64::from(i) + 2, 2) - ideal_dim_rank_in_vars(&forms, r + 1, i, 3) as i64;
                let f = froberg_f(t as u32, r + 1, i);
                let e = expected_e(t as u32, r, i);
                c.check(quotient >= f, || {
                    format!("set {set_index} t={t} r={r} i={i}: quotient {quotient} < F {f}")
                });
                c.check(f >= e, || {
                    format!("set {set_index} t={t} r={r} i={i}: F {f} < E {e}")
                });
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_7_cross_pipeline_identity() {
    let mut c = Criterion::new(
        "criterion 7 (constraint oracle vs chain complex)",
        Some(600.0),
    );
    for (name, text) in [
        ("clough-tocher", builtin::clough_tocher()),
        ("octahedron-regular", builtin::octahedron_regular()),
        ("octahedron-generic", builtin::octahedron_generic()),
    ] {
        let (tables, forms) = setup(&text);
        for r in 0..=2u32 {
            for k in 0..=6u32 {
                let oracle = spline_dim(&tables, &forms, r, k);
                let slice = assemble_slice(&tables, &forms, r, k);
                let via_h2 = spline_dim_for_slice(&slice);
                c.check(oracle == via_h2, || {
                    format!("{name} r={r} k={k}: oracle {oracle} != chain complex {via_h2}")
                });
                let euler = euler_identity_for_slice(&tables, &slice, oracle);
                c.check(euler.pass, || {
                    format!(
                        "{name} r={r} k={k}: Euler identity residual {}",
                        euler.residual
                    )
                });
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_8_property_suite() {
    let mut c = Criterion::new("criterion 8 (property suite)", None);

    // Binomial convention.
    for u in -3..3i64 {
        c.check(binom(u, 3) == 0, || format!("binom({u}, 3) != 0"));
    }
    c.check(binom(3, 3) == 1, || "binom(3,3) != 1".to_string());

    let meshes = [
        ("clough-tocher", builtin::clough_tocher()),
        ("octahedron-regular", builtin::octahedron_regular()),
        ("octahedron-generic", builtin::octahedron_generic()),
    ];

    // Boundary maps compose to zero on every assembled slice.
    for (name, text) in &meshes {
        let (tables, forms) = setup(text);
        for r in 0..=2u32 {
            for k in [2u32, 3, 5] {
                let slice = assemble_slice(&tables, &forms, r, k);
                c.check(slice.boundary_square_is_zero(&tables), || {
                    format!("{name} r={r} k={k}: d1 o d2 != 0")
                });
            }
        }
    }

    // Sandwich: lower <= oracle <= ordered upper, for the lexicographic,
    // reversed, and one rotated ordering; and oracle = C(k+3,3) for k <= r.
    // When h0 and h1 vanish through k the free-case value is an upper bound
    // as well.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5A4D);
    for (name, text) in &meshes {
        let (tables, forms) = setup(text);
        for r in 0..=3u32 {
            let mut free_so_far = true;
            for k in 0..=5u32 {
                let oracle = spline_dim(&tables, &forms, r, k) as i64;
                if k <= r {
                    c.check(oracle == binom(i64::from(k) + 3, 3), || {
                        format!("{name} r={r} k={k}: oracle {oracle} != full space")
                    });
                }
                let lower = lower_bound(&tables, &forms, r, k, &tables.interior_vertices());
                c.check(lower <= oracle, || {
                    format!("{name} r={r} k={k}: lower {lower} > oracle {oracle}")
                });
                let (h0, h1, _) = homology_dims(&assemble_slice(&tables, &forms, r, k));
                free_so_far &= h0 == 0 && h1 == 0;
                if free_so_far {
                    let free_value = upper_bound_free(&tables, &forms, r, k);
                    c.check(oracle <= free_value, || {
                        format!(
                            "{name} r={r} k={k}: oracle {oracle} > confirmed free bound {free_value}"
                        )
                    });
                }
                let mut orderings = vec![tables.interior_edges()];
                let mut reversed = tables.interior_edges();
                reversed.reverse();
                orderings.push(reversed);
                let mut shuffled = tables.interior_edges();
                for i in (1..shuffled.len()).rev() {
                    shuffled.swap(i, rng.gen_range(0..=i));
                }
                orderings.push(shuffled);
                for ordering in orderings {
                    let upper = upper_bound(&tables, &forms, r, k, &ordering);
                    c.check(oracle <= upper, || {
                        format!(
                            "{name} r={r} k={k}: oracle {oracle} > upper {upper} for ordering {ordering:?}"
                        )
                    });
                }
            }
        }
    }
    c.finish();
}
