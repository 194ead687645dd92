//! Lattices given by a rational basis, membership, and exhaustive
//! enumeration of lattice points in a closed ball of a quadratic form.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{self, sub, QuadraticForm, RVector, Rational, RationalMatrix};

/// Default cap on enumeration tree nodes.
pub const DEFAULT_MAX_NODES: u64 = 100_000_000;

/// Full-rank lattice in `Q^n`, spanned by the rows of `basis`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    basis: RationalMatrix,
    inverse: RationalMatrix,
}

impl Lattice {
    pub fn new(basis: RationalMatrix) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::DimensionMismatch {
                expected: basis.cols(),
                found: basis.rows(),
            });
        }
        if basis.rows() == 0 {
            return Err(Error::InvalidDimension(
                "lattice dimension must be at least 1".into(),
            ));
        }
        let inverse = exactlin::inverse(&basis)?.ok_or(Error::SingularBasis)?;
        Ok(Self { basis, inverse })
    }

    pub fn from_rows(rows: &[RVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::new(RationalMatrix::from_rows(cols, rows)?)
    }

    /// The integer lattice `Z^n`.
    pub fn integer(n: usize) -> Self {
        Self::new(RationalMatrix::identity(n)).expect("identity basis")
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    /// Coordinates `y` with `v = Σ y_i b_i`.
    pub fn coordinates(&self, v: &[Rational]) -> Result<RVector> {
        self.inverse.left_mul_vec(v)
    }

    /// The point `Σ x_i b_i`.
    pub fn point(&self, coords: &[Rational]) -> Result<RVector> {
        self.basis.left_mul_vec(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.coordinates(v)?.iter().all(|y| y.is_integer()))
    }

    /// Gram matrix `B Q Bᵀ` of the basis under `form`.
    pub fn gram(&self, form: &QuadraticForm) -> Result<RationalMatrix> {
        if form.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: form.dim(),
            });
        }
        self.basis.mul(form.matrix())?.mul(&self.basis.transpose())
    }
}

pub fn membership(lattice: &Lattice, v: &[Rational]) -> Result<bool> {
    lattice.contains(v)
}

/// Closed ball `{x : q(x − c) ≤ r²}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallQuery {
    pub form: QuadraticForm,
    pub center: RVector,
    pub radius_sq: Rational,
}

impl BallQuery {
    pub fn new(form: QuadraticForm, center: RVector, radius_sq: Rational) -> Result<Self> {
        if center.len() != form.dim() {
            return Err(Error::DimensionMismatch {
                expected: form.dim(),
                found: center.len(),
            });
        }
        Ok(Self {
            form,
            center,
            radius_sq,
        })
    }
}

/// A lattice point found in a ball together with its exact `q(v − c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallPoint {
    pub point: RVector,
    pub value: Rational,
}

fn lex_cmp(a: &[Rational], b: &[Rational]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn sort_points(points: &mut [BallPoint]) {
    points.sort_by(|a, b| lex_cmp(&a.point, &b.point));
}

fn check_query(lattice: &Lattice, query: &BallQuery) -> Result<()> {
    if query.form.dim() != lattice.dim() {
        return Err(Error::DimensionMismatch {
            expected: lattice.dim(),
            found: query.form.dim(),
        });
    }
    if !query.form.is_positive_definite() {
        return Err(Error::IndefiniteForm);
    }
    Ok(())
}

/// Triangular decomposition `q(y) = Σ d_i (y_i + Σ_{j>i} μ_ij y_j)²` of a
/// positive-definite Gram matrix.
struct Triangular {
    diag: Vec<Rational>,
    mu: Vec<Vec<Rational>>,
}

impl Triangular {
    fn new(gram: &RationalMatrix) -> Self {
        let k = gram.rows();
        let mut a = gram.to_rows();
        for i in 0..k {
            for j in i + 1..k {
                a[j][i] = a[i][j].clone();
                a[i][j] = &a[i][j] / &a[i][i];
            }
            for l in i + 1..k {
                for j in l..k {
                    let delta = &a[l][i] * &a[i][j];
                    a[l][j] -= delta;
                }
            }
        }
        let diag = (0..k).map(|i| a[i][i].clone()).collect();
        let mu = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if j > i {
                            a[i][j].clone()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self { diag, mu }
    }
}

fn floor(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

fn ceil(x: &Rational) -> BigInt {
    -(-x.numer()).div_floor(x.denom())
}

/// Integers `x` with `d (x − t)² ≤ budget`, as an inclusive range.
fn admissible_range(d: &Rational, t: &Rational, budget: &Rational) -> Option<(BigInt, BigInt)> {
    if budget.is_negative() {
        return None;
    }
    let reach_sq = budget / d;
    let reach = exactlin::isqrt_floor(&floor(&reach_sq)).expect("nonnegative") + 1u32;
    let reach = Rational::from_integer(reach);
    let fits = |x: &BigInt| {
        let diff = Rational::from_integer(x.clone()) - t;
        d * &diff * &diff <= *budget
    };
    let mut lo = floor(&(t - &reach));
    let mut hi = ceil(&(t + &reach));
    while lo <= hi && !fits(&lo) {
        lo += 1u32;
    }
    while hi >= lo && !fits(&hi) {
        hi -= 1u32;
    }
    (lo <= hi).then_some((lo, hi))
}

struct Enumerator<'a> {
    tri: Triangular,
    center: RVector,
    radius_sq: &'a Rational,
    coords: Vec<BigInt>,
    nodes: u64,
    max_nodes: u64,
    found: Vec<(Vec<BigInt>, Rational)>,
}

impl Enumerator<'_> {
    fn descend(&mut self, level: usize, budget: Rational) -> Result<()> {
        let k = self.center.len();
        let mut t = self.center[level].clone();
        for j in level + 1..k {
            let offset = Rational::from_integer(self.coords[j].clone()) - &self.center[j];
            t -= &self.tri.mu[level][j] * offset;
        }
        let d = self.tri.diag[level].clone();
        let Some((lo, hi)) = admissible_range(&d, &t, &budget) else {
            return Ok(());
        };
        let mut x = lo;
        while x <= hi {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::EnumerationLimit {
                    limit: self.max_nodes,
                });
            }
            let diff = Rational::from_integer(x.clone()) - &t;
            let rest = &budget - &d * &diff * &diff;
            self.coords[level] = x.clone();
            if level == 0 {
                let value = self.radius_sq - &rest;
                self.found.push((self.coords.clone(), value));
            } else {
                self.descend(level - 1, rest)?;
            }
            x += 1u32;
        }
        Ok(())
    }
}

/// All lattice points `v` with `q(v − c) ≤ r²`, sorted lexicographically,
/// using the default node cap.
pub fn enumerate_in_ball(lattice: &Lattice, query: &BallQuery) -> Result<Vec<BallPoint>> {
    enumerate_in_ball_with_limit(lattice, query, DEFAULT_MAX_NODES)
}

/// Fincke–Pohst style enumeration over the basis coordinates.
///
/// Works entirely in exact arithmetic: per-level ranges come from an exact
/// integer square root followed by an exact membership test on the interval
/// ends, so the output is provably complete. Fails with
/// [`Error::EnumerationLimit`] rather than return a partial answer.
pub fn enumerate_in_ball_with_limit(
    lattice: &Lattice,
    query: &BallQuery,
    max_nodes: u64,
) -> Result<Vec<BallPoint>> {
    check_query(lattice, query)?;
    if query.radius_sq.is_negative() {
        return Ok(Vec::new());
    }
    let gram = lattice.gram(&query.form)?;
    let k = lattice.dim();
    let mut state = Enumerator {
        tri: Triangular::new(&gram),
        center: lattice.coordinates(&query.center)?,
        radius_sq: &query.radius_sq,
        coords: vec![BigInt::zero(); k],
        nodes: 0,
        max_nodes,
        found: Vec::new(),
    };
    state.descend(k - 1, query.radius_sq.clone())?;

    let mut points = state
        .found
        .into_iter()
        .map(|(coords, value)| {
            let coords: RVector = coords.into_iter().map(Rational::from_integer).collect();
            Ok(BallPoint {
                point: lattice.point(&coords)?,
                value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    sort_points(&mut points);
    Ok(points)
}

/// Test oracle: tries every coefficient vector in `[−box_bound, box_bound]^n`.
pub fn enumerate_brute_force(
    lattice: &Lattice,
    query: &BallQuery,
    box_bound: u32,
) -> Vec<BallPoint> {
    let k = lattice.dim();
    if query.form.dim() != k || query.center.len() != k {
        return Vec::new();
    }
    let side = 2 * box_bound as i64 + 1;
    let total = side.checked_pow(k as u32).expect("box too large");
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let coords: RVector = (0..k)
            .map(|_| {
                let digit = c % side;
                c /= side;
                Rational::from_integer(BigInt::from(digit - box_bound as i64))
            })
            .collect();
        let point: RVector = (0..k)
            .map(|col| {
                coords
                    .iter()
                    .enumerate()
                    .map(|(row, x)| x * &lattice.basis()[(row, col)])
                    .sum()
            })
            .collect();
        let value = query.form.eval(&sub(&point, &query.center));
        if value <= query.radius_sq {
            out.push(BallPoint { point, value });
        }
    }
    sort_points(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int, rat, rvec};

    fn z2_query(center: RVector, r2: Rational) -> BallQuery {
        BallQuery::new(QuadraticForm::identity(2), center, r2).unwrap()
    }

    #[test]
    fn unit_disc_in_z2() {
        let l = Lattice::integer(2);
        let q = z2_query(rvec(&[0, 0]), int(1));
        let pts: Vec<RVector> = enumerate_in_ball(&l, &q)
            .unwrap()
            .into_iter()
            .map(|p| p.point)
            .collect();
        assert_eq!(
            pts,
            vec![
                rvec(&[-1, 0]),
                rvec(&[0, -1]),
                rvec(&[0, 0]),
                rvec(&[0, 1]),
                rvec(&[1, 0])
            ]
        );
        let brute: Vec<RVector> = enumerate_brute_force(&l, &q, 3)
            .into_iter()
            .map(|p| p.point)
            .collect();
        assert_eq!(pts, brute);
    }

    #[test]
    fn small_ball_around_half_point_is_empty() {
        let l = Lattice::integer(2);
        let q = z2_query(vec![rat(1, 2), rat(1, 2)], rat(1, 4));
        assert!(enumerate_in_ball(&l, &q).unwrap().is_empty());
        let q = z2_query(vec![rat(1, 2), rat(1, 2)], int(-1));
        assert!(enumerate_in_ball(&l, &q).unwrap().is_empty());
        assert!(enumerate_brute_force(&l, &q, 3).is_empty());
    }

    #[test]
    fn boundary_points_included_with_exact_values() {
        let l = Lattice::integer(2);
        let q = z2_query(vec![rat(1, 2), rat(1, 2)], rat(1, 2));
        let pts = enumerate_in_ball(&l, &q).unwrap();
        assert_eq!(pts.len(), 4);
        assert!(pts.iter().all(|p| p.value == rat(1, 2)));
    }

    #[test]
    fn indefinite_form_rejected() {
        let l = Lattice::integer(2);
        let form = QuadraticForm::diagonal(&[int(1), int(-1)]);
        let q = BallQuery::new(form, rvec(&[0, 0]), int(1)).unwrap();
        assert_eq!(enumerate_in_ball(&l, &q), Err(Error::IndefiniteForm));
    }

    #[test]
    fn node_limit_is_an_error() {
        let l = Lattice::integer(3);
        let q = BallQuery::new(QuadraticForm::identity(3), rvec(&[0, 0, 0]), int(100)).unwrap();
        assert_eq!(
            enumerate_in_ball_with_limit(&l, &q, 50),
            Err(Error::EnumerationLimit { limit: 50 })
        );
    }

    #[test]
    fn membership_basics() {
        let l = Lattice::from_rows(&[rvec(&[1, 1]), rvec(&[1, -1])]).unwrap();
        assert!(membership(&l, &rvec(&[0, 0])).unwrap());
        assert!(membership(&l, &rvec(&[2, 0])).unwrap());
        assert!(!membership(&l, &rvec(&[1, 0])).unwrap());
        assert!(membership(&l, &rvec(&[1])).is_err());
    }

    #[test]
    fn singular_basis_rejected() {
        assert_eq!(
            Lattice::from_rows(&[rvec(&[1, 2]), rvec(&[2, 4])]),
            Err(Error::SingularBasis)
        );
    }

    #[test]
    fn admissible_range_is_tight() {
        // 3 (x − 1/3)² ≤ 4  ⇔  x ∈ [1/3 − 2/√3, 1/3 + 2/√3] ≈ [−0.82, 1.49]
        let r = admissible_range(&int(3), &rat(1, 3), &int(4)).unwrap();
        assert_eq!(r, (BigInt::from(0), BigInt::from(1)));
        assert_eq!(admissible_range(&int(1), &rat(1, 2), &rat(1, 5)), None);
        assert_eq!(
            admissible_range(&int(1), &rat(1, 2), &rat(1, 4)),
            Some((BigInt::from(0), BigInt::from(1)))
        );
    }
}
