//! Exact symbolic substrate: primitive integer linear forms in four
//! variables, graded monomial bases, multinomial expansion of powers of
//! forms, and rank computations on matrices of arbitrary-precision
//! rationals.
//!
//! Everything here is exact; no floating point is used anywhere.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

/// A point of the domain with exact rational coordinates.
pub type Point3 = [Rational; 3];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormsError {
    /// The three points of a triangle lie on a common line.
    #[error("collinear points do not span a unique plane")]
    CollinearPoints,
    /// A linear form must have at least one nonzero coefficient.
    #[error("all coefficients of the linear form are zero")]
    ZeroForm,
    /// Power plus monomial degree must match the basis degree.
    #[error("degree mismatch: power {power} + monomial degree {monomial} != basis degree {basis}")]
    DegreeMismatch {
        power: u32,
        monomial: u32,
        basis: u32,
    },
}

/// Binomial coefficient `C(u, m)` with the convention that the value is
/// zero whenever `u < m`, including negative `u`.
pub fn binom(u: i64, m: u32) -> i64 {
    let m = i64::from(m);
    if u < m {
        return 0;
    }
    let m = m.min(u - m);
    let mut result: i128 = 1;
    for j in 0..m {
        result = result * i128::from(u - j) / i128::from(j + 1);
    }
    i64::try_from(result).expect("binomial coefficient overflows i64")
}

/// Primitive integer homogeneous linear form `a·x + b·y + c·z + d·w`.
///
/// The stored representative is canonical: the coefficient gcd is 1 and the
/// first nonzero coefficient is positive. Two forms therefore compare equal
/// exactly when they vanish on the same hyperplane, which makes counting
/// "different planes" a plain equality test.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: [BigInt; 4],
}

impl LinearForm {
    /// Canonicalizes the coefficient tuple. Fails on the zero form.
    pub fn new(coeffs: [BigInt; 4]) -> Result<Self, FormsError> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(FormsError::ZeroForm);
        }
        let mut g = BigInt::zero();
        for c in &coeffs {
            g = g.gcd(c);
        }
        let mut coeffs = coeffs.map(|c| c / &g);
        let leading_negative = coeffs
            .iter()
            .find(|c| !c.is_zero())
            .map(Signed::is_negative)
            .unwrap_or(false);
        if leading_negative {
            coeffs = coeffs.map(|c| -c);
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64(coeffs: [i64; 4]) -> Result<Self, FormsError> {
        Self::new(coeffs.map(BigInt::from))
    }

    pub fn coeffs(&self) -> &[BigInt; 4] {
        &self.coeffs
    }

    /// True when the form involves only the first `vars` variables.
    pub fn supported_on(&self, vars: usize) -> bool {
        self.coeffs[vars..].iter().all(Zero::is_zero)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["x", "y", "z", "w"];
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(NAMES) {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}")?;
            }
            write!(f, "{name}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearForm({self})")
    }
}

/// Canonical homogeneous linear form vanishing on the embedded plane of the
/// triangle with vertices `p0`, `p1`, `p2`.
///
/// The form vanishes at `(p, 1)` for every point `p` of that plane, i.e. it
/// is the homogenization (fourth variable `w`) of the affine plane equation.
pub fn plane_of_triangle(p0: &Point3, p1: &Point3, p2: &Point3) -> Result<LinearForm, FormsError> {
    let u: Vec<Rational> = (0..3).map(|i| &p1[i] - &p0[i]).collect();
    let v: Vec<Rational> = (0..3).map(|i| &p2[i] - &p0[i]).collect();
    let normal = [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ];
    if normal.iter().all(Zero::is_zero) {
        return Err(FormsError::CollinearPoints);
    }
    let offset = -(&normal[0] * &p0[0] + &normal[1] * &p0[1] + &normal[2] * &p0[2]);
    let rationals = [
        normal[0].clone(),
        normal[1].clone(),
        normal[2].clone(),
        offset,
    ];
    let mut denom_lcm = BigInt::one();
    for r in &rationals {
        denom_lcm = denom_lcm.lcm(r.denom());
    }
    let coeffs = rationals.map(|r| (r * BigRational::from(denom_lcm.clone())).to_integer());
    LinearForm::new(coeffs)
}

/// Removes duplicate canonical representatives, keeping first occurrences in
/// input order. Since forms are canonical this is exactly "count different
/// planes".
pub fn distinct_forms(forms: &[LinearForm]) -> Vec<LinearForm> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for form in forms {
        if seen.insert(form.clone()) {
            out.push(form.clone());
        }
    }
    out
}

/// Canonical plane form for every triangle of the face tables, indexed by
/// triangle id.
pub fn triangle_planes(
    complex: &crate::mesh::SimplicialComplex3,
    tables: &crate::mesh::FaceTables,
) -> Vec<LinearForm> {
    tables
        .triangles()
        .iter()
        .map(|&[a, b, c]| {
            plane_of_triangle(complex.vertex(a), complex.vertex(b), complex.vertex(c))
                .expect("mesh validation guarantees non-degenerate triangles")
        })
        .collect()
}

/// Ordered list of all exponent tuples of total degree exactly `degree` in
/// `vars` variables, in graded-lex order with the first variable largest.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    degree: u32,
    vars: usize,
    exponents: Vec<Vec<u32>>,
    positions: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn new(degree: u32, vars: usize) -> Self {
        assert!((2..=4).contains(&vars), "vars must be 2, 3 or 4");
        let mut exponents = Vec::new();
        let mut current = vec![0u32; vars];
        Self::fill(&mut exponents, &mut current, 0, degree);
        let positions = exponents
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Self {
            degree,
            vars,
            exponents,
            positions,
        }
    }

    fn fill(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
        if pos + 1 == current.len() {
            current[pos] = remaining;
            out.push(current.clone());
            return;
        }
        for e in (0..=remaining).rev() {
            current[pos] = e;
            Self::fill(out, current, pos + 1, remaining - e);
        }
        current[pos] = 0;
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponent(&self, i: usize) -> &[u32] {
        &self.exponents[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.exponents.iter().map(Vec::as_slice)
    }

    pub fn position(&self, exponent: &[u32]) -> Option<usize> {
        self.positions.get(exponent).copied()
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

/// Exact coefficient vector of `form^power · x^monomial` in `basis`.
///
/// Requires `power + deg(monomial) = basis.degree()` and a form supported on
/// the basis variables. Expansion is by the multinomial theorem, so all
/// coefficients are integers (represented as rationals for matrix use).
pub fn form_power_times_monomial(
    form: &LinearForm,
    power: u32,
    monomial: &[u32],
    basis: &MonomialBasis,
) -> Result<Vec<Rational>, FormsError> {
    assert_eq!(monomial.len(), basis.vars(), "monomial arity mismatch");
    assert!(
        form.supported_on(basis.vars()),
        "form involves variables outside the basis"
    );
    let mono_degree: u32 = monomial.iter().sum();
    if power + mono_degree != basis.degree() {
        return Err(FormsError::DegreeMismatch {
            power,
            monomial: mono_degree,
            basis: basis.degree(),
        });
    }
    let mut out = vec![Rational::zero(); basis.len()];
    let alpha_basis = MonomialBasis::new(power, basis.vars());
    let d_factorial = factorial(power);
    for alpha in alpha_basis.iter() {
        let mut coeff = d_factorial.clone();
        let mut skip = false;
        for (i, &a) in alpha.iter().enumerate() {
            if a > 0 && form.coeffs()[i].is_zero() {
                skip = true;
                break;
            }
            coeff /= factorial(a);
            coeff *= form.coeffs()[i].pow(a);
        }
        if skip || coeff.is_zero() {
            continue;
        }
        let target: Vec<u32> = alpha.iter().zip(monomial).map(|(&a, &m)| a + m).collect();
        let pos = basis
            .position(&target)
            .expect("product monomial lies in the basis by degree count");
        out[pos] += Rational::from(coeff);
    }
    Ok(out)
}

/// Dense matrix over arbitrary-precision rationals with exact rank.
#[derive(Clone, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c).clone());
            }
        }
        out
    }

    /// Exact rank by fraction-free row elimination over the integers.
    pub fn rank(&self) -> usize {
        let mut echelon = Echelon::new(self.cols);
        let mut rank = 0;
        for r in 0..self.rows {
            if echelon.insert(row_to_integers(self.row(r))) {
                rank += 1;
            }
        }
        rank
    }

    /// `cols − rank`, the dimension of the right kernel.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Indices of a maximal linearly independent subset of the rows, chosen
    /// greedily from the top. The selected original rows form a basis of the
    /// row space.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut echelon = Echelon::new(self.cols);
        let mut picked = Vec::new();
        for r in 0..self.rows {
            if echelon.insert(row_to_integers(self.row(r))) {
                picked.push(r);
            }
        }
        picked
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let entries: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", entries.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Clears denominators and content so the row is a primitive integer vector.
fn row_to_integers(row: &[Rational]) -> Vec<BigInt> {
    let mut denom_lcm = BigInt::one();
    for v in row {
        if !v.is_zero() {
            denom_lcm = denom_lcm.lcm(v.denom());
        }
    }
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|v| (v.numer() * &denom_lcm) / v.denom())
        .collect();
    reduce_content(&mut out);
    out
}

fn reduce_content(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        *v /= &g;
    }
}

/// Incremental integer row-echelon accumulator.
///
/// Rows are kept primitive; elimination uses cross-multiplication only, so
/// every intermediate value is an integer. Each stored row has zeros at the
/// lead columns of all rows stored before it, which makes one reduction pass
/// in insertion order a complete membership test for the row space.
struct Echelon {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
    leads: Vec<usize>,
}

impl Echelon {
    fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            leads: Vec::new(),
        }
    }

    /// Reduces `row` against the accumulated rows; stores the remainder if it
    /// is nonzero. Returns true when the row enlarged the span.
    ///
    /// The combination is `row := p·row − f·e` over the whole width, where
    /// `p` is the pivot of `e` and `f` the entry of `row` at that lead, so
    /// entries in columns before the lead (where `e` vanishes) are scaled
    /// along with the rest.
    fn insert(&mut self, mut row: Vec<BigInt>) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        for (e, &lead) in self.rows.iter().zip(&self.leads) {
            if row[lead].is_zero() {
                continue;
            }
            let p = e[lead].clone();
            let f = std::mem::replace(&mut row[lead], BigInt::zero());
            for c in 0..self.cols {
                if c == lead {
                    continue;
                }
                if e[c].is_zero() {
                    if !row[c].is_zero() {
                        row[c] = &row[c] * &p;
                    }
                } else {
                    row[c] = &row[c] * &p - &f * &e[c];
                }
            }
            reduce_content(&mut row);
        }
        match row.iter().position(|v| !v.is_zero()) {
            Some(lead) => {
                self.rows.push(row);
                self.leads.push(lead);
                true
            }
            None => false,
        }
    }
}
