//! Exact rational scalars, vectors and matrices.
//!
//! Everything here works over `BigRational`; there is no floating point
//! anywhere in the crate. Rank and kernel computations clear denominators
//! row by row and eliminate over the integers, removing row content after
//! every step so entries stay small.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision fraction, always stored reduced with a
/// positive denominator.
pub type Rational = BigRational;

/// A vector of exact rationals.
pub type RVector = Vec<Rational>;

/// Shorthand for the rational `num/den`.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer-valued rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn rvec(values: &[i64]) -> RVector {
    values.iter().map(|&v| int(v)).collect()
}

/// Parses the canonical text form `p/q` (or `p` when `q = 1`).
///
/// Accepts an optional leading `-` and unreduced input such as `2/4`, which
/// is reduced. Rejects whitespace, `+` signs and zero denominators.
pub fn parse_rational(text: &str) -> Result<Rational> {
    fn digits(s: &str) -> Option<BigInt> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        BigInt::parse_bytes(s.as_bytes(), 10)
    }

    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (digits(n).ok_or_else(bad)?, digits(d).ok_or_else(bad)?),
        None => (digits(body).ok_or_else(bad)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    let num = if negative { -num } else { num };
    Ok(Rational::new(num, den))
}

/// Canonical text form of a rational: `p/q`, with `/q` omitted when `q = 1`.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> RVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> RVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rational], t: &Rational) -> RVector {
    a.iter().map(|x| x * t).collect()
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[RVector]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().cloned());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<RVector> = rows.iter().map(|r| rvec(r)).collect();
        Self::from_rows(cols, &rows).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<RVector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Computes `self · v`.
    pub fn mul_vec(&self, v: &[Rational]) -> Result<RVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    /// Computes `vᵀ · self` (a row vector times the matrix).
    pub fn left_mul_vec(&self, v: &[Rational]) -> Result<RVector> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(self.row(i)) {
                *o += vi * m;
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let row = other.left_mul_vec(self.row(i))?;
            for (j, x) in row.into_iter().enumerate() {
                out[(i, j)] = x;
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, t: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * t).collect(),
        }
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        f.debug_struct("RationalMatrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("entries", &rows)
            .finish()
    }
}

/// Scales a rational row to a primitive integer row with the same kernel.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(ints)
}

fn make_primitive(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
    row
}

/// `target ← target·pivot_row[col] − pivot_row·target[col]`, then content removed.
fn eliminate(target: &mut Vec<BigInt>, pivot_row: &[BigInt], col: usize) {
    if target[col].is_zero() {
        return;
    }
    let a = pivot_row[col].clone();
    let b = target[col].clone();
    let g = a.gcd(&b);
    let (a, b) = (&a / &g, &b / &g);
    for (t, p) in target.iter_mut().zip(pivot_row) {
        *t = &*t * &a - p * &b;
    }
    let reduced = make_primitive(std::mem::take(target));
    *target = reduced;
}

/// Integer row-echelon form: rows with distinct pivots, each row zero left
/// of its pivot, sorted by pivot column.
struct Echelon {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    fn new() -> Self {
        Self { rows: Vec::new() }
    }

    /// Reduces `row` against the basis and inserts it if it is independent.
    fn insert(&mut self, mut row: Vec<BigInt>) -> bool {
        for (col, basis_row) in &self.rows {
            eliminate(&mut row, basis_row, *col);
        }
        match row.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(col) => {
                let at = self.rows.partition_point(|(c, _)| *c < col);
                self.rows.insert(at, (col, row));
                true
            }
        }
    }

    /// Clears every pivot column above its pivot (reduced echelon form).
    fn reduce(&mut self) {
        for k in (0..self.rows.len()).rev() {
            let (col, pivot_row) = self.rows[k].clone();
            for (_, row) in self.rows[..k].iter_mut() {
                eliminate(row, &pivot_row, col);
            }
        }
    }

    fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }
}

fn echelon_of(m: &RationalMatrix) -> Echelon {
    let mut ech = Echelon::new();
    for i in 0..m.rows() {
        ech.insert(integer_row(m.row(i)));
    }
    ech
}

/// Exact row rank.
pub fn rank(m: &RationalMatrix) -> usize {
    echelon_of(m).rows.len()
}

/// Basis of the right null space `{v : m·v = 0}`.
///
/// One vector per non-pivot column, each scaled to a primitive integer
/// vector whose first nonzero entry is positive.
pub fn kernel(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    let mut ech = echelon_of(m);
    ech.reduce();
    let pivots = ech.pivots();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();

    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols()];
            v[f] = Rational::one();
            for (p, row) in &ech.rows {
                v[*p] = -Rational::new(row[f].clone(), row[*p].clone());
            }
            normalize_integer_vector(&v)
        })
        .collect()
}

/// Scales a nonzero rational vector to primitive integers with the first
/// nonzero entry positive.
pub fn normalize_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let mut ints = integer_row(v);
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.sign() == Sign::Minus {
            for x in ints.iter_mut() {
                *x = -&*x;
            }
        }
    }
    ints
}

/// Result of an exact linear solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    /// A particular solution; `free_dims` is the dimension of the solution
    /// set (zero when the solution is unique).
    Consistent {
        x: RVector,
        free_dims: usize,
    },
    Inconsistent,
}

impl LinearSolution {
    pub fn unique(&self) -> Option<&RVector> {
        match self {
            LinearSolution::Consistent { x, free_dims: 0 } => Some(x),
            _ => None,
        }
    }
}

/// Solves `m·x = rhs`, setting free variables to zero.
pub fn solve(m: &RationalMatrix, rhs: &[Rational]) -> Result<LinearSolution> {
    if rhs.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: rhs.len(),
        });
    }
    let cols = m.cols();
    let mut ech = Echelon::new();
    for i in 0..m.rows() {
        let mut row = m.row(i).to_vec();
        row.push(rhs[i].clone());
        ech.insert(integer_row(&row));
    }
    if ech.rows.iter().any(|(c, _)| *c == cols) {
        return Ok(LinearSolution::Inconsistent);
    }
    ech.reduce();
    let mut x = vec![Rational::zero(); cols];
    for (p, row) in &ech.rows {
        x[*p] = Rational::new(row[cols].clone(), row[*p].clone());
    }
    Ok(LinearSolution::Consistent {
        x,
        free_dims: cols - ech.rows.len(),
    })
}

/// Inverse of a square matrix, or `None` if it is singular.
pub fn inverse(m: &RationalMatrix) -> Result<Option<RationalMatrix>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let n = m.rows();
    let mut out = RationalMatrix::zeros(n, n);
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        let Some(col) = solve(m, &e)?.unique().cloned() else {
            return Ok(None);
        };
        for (i, x) in col.into_iter().enumerate() {
            out[(i, j)] = x;
        }
    }
    Ok(Some(out))
}

/// Exact determinant by rational Gaussian elimination with row swaps.
pub fn determinant(m: &RationalMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.to_rows();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    Ok(det)
}

/// Leading principal minors `det(m[..k, ..k])` for `k = 1..=n`.
pub fn leading_principal_minors(m: &RationalMatrix) -> Result<Vec<Rational>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    (1..=m.rows())
        .map(|k| {
            let data = (0..k).flat_map(|i| m.row(i)[..k].iter().cloned()).collect();
            determinant(&RationalMatrix::new(k, k, data)?)
        })
        .collect()
}

/// Sylvester's criterion, evaluated exactly.
///
/// Symmetric Gaussian elimination without row exchanges produces pivots
/// `d_k = det_k / det_{k-1}`, so all leading minors are positive exactly
/// when every pivot is.
pub fn is_positive_definite(m: &RationalMatrix) -> Result<bool> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = m.rows();
    let mut a = m.to_rows();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return Ok(false);
        }
        let pivot = a[k][k].clone();
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let factor = &a[r][k] / &pivot;
            for c in k..n {
                let delta = &factor * &a[k][c];
                a[r][c] -= delta;
            }
        }
    }
    Ok(true)
}

/// `⌊√x⌋` for a nonnegative integer.
pub fn isqrt_floor(x: &BigInt) -> Result<BigInt> {
    if x.is_negative() {
        return Err(Error::NegativeInput);
    }
    Ok(x.sqrt())
}

/// Symmetric rational matrix used as the metric `q(x) = xᵀQx`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    matrix: RationalMatrix,
}

impl QuadraticForm {
    pub fn new(matrix: RationalMatrix) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Self { matrix })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: RationalMatrix::identity(n),
        }
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        Self {
            matrix: RationalMatrix::diagonal(entries),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn bilinear(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            acc += ui * dot(self.matrix.row(i), v);
        }
        acc
    }

    pub fn eval(&self, v: &[Rational]) -> Rational {
        self.bilinear(v, v)
    }

    /// `q(u − v)`.
    pub fn distance_sq(&self, u: &[Rational], v: &[Rational]) -> Rational {
        self.eval(&sub(u, v))
    }

    pub fn is_positive_definite(&self) -> bool {
        is_positive_definite(&self.matrix).expect("form is symmetric")
    }

    pub fn scaled(&self, t: &Rational) -> Self {
        Self {
            matrix: self.matrix.scaled(t),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RationalMatrix::identity(3)), 3);
        assert_eq!(rank(&RationalMatrix::from_i64_rows(&[&[1, 1]])), 1);
        assert_eq!(
            rank(&RationalMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]])),
            1
        );
        assert_eq!(rank(&RationalMatrix::zeros(2, 3)), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&RationalMatrix::identity(3)).is_empty());
        assert_eq!(
            kernel(&RationalMatrix::from_i64_rows(&[&[1, 1]])),
            vec![big(&[1, -1])]
        );
        let k = kernel(&RationalMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]));
        assert_eq!(k, vec![big(&[2, -1, 0]), big(&[3, 0, -1])]);
    }

    #[test]
    fn kernel_of_rational_entries_is_primitive() {
        let m = RationalMatrix::new(1, 2, vec![rat(1, 2), rat(-1, 3)]).unwrap();
        assert_eq!(kernel(&m), vec![big(&[2, 3])]);
    }

    #[test]
    fn solve_examples() {
        let id = RationalMatrix::identity(2);
        assert_eq!(
            solve(&id, &rvec(&[1, 2])).unwrap().unique(),
            Some(&rvec(&[1, 2]))
        );

        let m = RationalMatrix::from_i64_rows(&[&[1, 1]]);
        match solve(&m, &rvec(&[1])).unwrap() {
            LinearSolution::Consistent { x, free_dims } => {
                assert_eq!(free_dims, 1);
                assert_eq!(&x[0] + &x[1], int(1));
            }
            LinearSolution::Inconsistent => panic!("consistent system"),
        }

        let m = RationalMatrix::from_i64_rows(&[&[1], &[1]]);
        assert_eq!(
            solve(&m, &rvec(&[1, 2])).unwrap(),
            LinearSolution::Inconsistent
        );
        assert!(matches!(
            solve(&m, &rvec(&[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn positive_definite_examples() {
        for n in 1..6 {
            assert!(is_positive_definite(&RationalMatrix::identity(n)).unwrap());
        }
        let mut diag = vec![int(1); 5];
        diag.push(rat(3, 4));
        assert!(is_positive_definite(&RationalMatrix::diagonal(&diag)).unwrap());
        assert!(
            !is_positive_definite(&RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 1]])).unwrap()
        );
        assert_eq!(
            is_positive_definite(&RationalMatrix::from_i64_rows(&[&[1, 2], &[0, 1]])),
            Err(Error::NotSymmetric)
        );
        assert_eq!(
            determinant(&RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 1]])).unwrap(),
            int(-3)
        );
    }

    #[test]
    fn positive_semidefinite_is_rejected() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert!(!is_positive_definite(&m).unwrap());
    }

    #[test]
    fn isqrt_examples() {
        for (x, r) in [(0, 0), (16, 4), (17, 4), (1, 1), (3, 1)] {
            assert_eq!(isqrt_floor(&BigInt::from(x)).unwrap(), BigInt::from(r));
        }
        assert_eq!(isqrt_floor(&BigInt::from(-1)), Err(Error::NegativeInput));
    }

    #[test]
    fn rational_text_format() {
        assert_eq!(format_rational(&rat(-1, 3)), "-1/3");
        assert_eq!(format_rational(&int(2)), "2");
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(parse_rational("-1/3").unwrap(), rat(-1, 3));
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("0").unwrap(), int(0));
        for bad in [
            "", "-", "1/", "/2", "1/0", "+1", " 1", "1.5", "1/-2", "a", "--1",
        ] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-4i64..5, 1i64..4), r * c).prop_map(move |cells| {
                let data = cells.into_iter().map(|(n, d)| rat(n, d)).collect();
                RationalMatrix::new(r, c, data).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_annihilation(m in small_matrix()) {
            let k = kernel(&m);
            prop_assert_eq!(rank(&m) + k.len(), m.cols());
            for v in &k {
                let v: RVector = v.iter().cloned().map(Rational::from_integer).collect();
                prop_assert!(m.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
                let first = v.iter().find(|x| !x.is_zero()).unwrap();
                prop_assert!(first.is_positive());
            }
        }

        #[test]
        fn solve_reproduces_rhs(m in small_matrix(), seed in proptest::collection::vec(-3i64..4, 6)) {
            // rhs chosen in the column space so the system is consistent
            let x0: RVector = seed[..m.cols()].iter().map(|&v| int(v)).collect();
            let rhs = m.mul_vec(&x0).unwrap();
            match solve(&m, &rhs).unwrap() {
                LinearSolution::Consistent { x, free_dims } => {
                    prop_assert_eq!(m.mul_vec(&x).unwrap(), rhs);
                    prop_assert_eq!(free_dims, m.cols() - rank(&m));
                }
                LinearSolution::Inconsistent => prop_assert!(false, "consistent system flagged"),
            }
        }

        #[test]
        fn isqrt_brackets(x in 0u64..10_000_000u64) {
            let r = isqrt_floor(&BigInt::from(x)).unwrap();
            let x = BigInt::from(x);
            prop_assert!(&r * &r <= x);
            prop_assert!((&r + 1u32) * (&r + 1u32) > x);
        }

        #[test]
        fn minors_positive_implies_grid_positive(
            n in 2usize..4,
            cells in proptest::collection::vec((-6i64..7, 1i64..4), 9),
        ) {
            let mut m = RationalMatrix::zeros(n, n);
            let mut it = cells.into_iter();
            for i in 0..n {
                for j in i..n {
                    let (p, q) = it.next().unwrap();
                    m[(i, j)] = rat(p, q);
                    m[(j, i)] = rat(p, q);
                }
            }
            let pd = is_positive_definite(&m).unwrap();
            let minors = leading_principal_minors(&m).unwrap();
            prop_assert_eq!(pd, minors.iter().all(|d| d.is_positive()));
            if pd {
                let form = QuadraticForm::new(m).unwrap();
                let range: Vec<i64> = (-5..=5).collect();
                let mut v = vec![0i64; n];
                let total = range.len().pow(n as u32);
                for code in 0..total {
                    let mut c = code;
                    for slot in v.iter_mut() {
                        *slot = range[c % range.len()];
                        c /= range.len();
                    }
                    if v.iter().all(|&x| x == 0) {
                        continue;
                    }
                    prop_assert!(form.eval(&rvec(&v)).is_positive());
                }
            }
        }
    }
}
