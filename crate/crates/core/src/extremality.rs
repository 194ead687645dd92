//! Extremality via inscribed quadrics.
//!
//! A quadric `xᵀQx + bᵀx + s = 0` passes through every vertex exactly when
//! `(Q, b, s)` lies in the kernel of the condition matrix built here. Every
//! metric for which the vertex set is inscribed in a sphere gives such a
//! triple, so the polytope is extreme when that kernel is one-dimensional
//! and spanned by a positive-definite `Q`.

use num_traits::Zero;

use crate::constructions::DelaunayInstance;
use crate::delaunay::{self, affine_rank};
use crate::error::{Error, Result};
use crate::exactlin::{self, QuadraticForm, RVector, Rational, RationalMatrix};

/// Number of unknowns `(Q, b, s)` in dimension `n`.
pub fn unknown_count(n: usize) -> usize {
    n * (n + 1) / 2 + n + 1
}

/// One row per vertex; columns are the upper triangle of `Q` (row-major,
/// off-diagonal entries with coefficient `2 v_i v_j`), then `b`, then `s`.
pub fn condition_matrix(vertices: &[RVector], n: usize) -> Result<RationalMatrix> {
    if let Some(v) = vertices.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    let rank = affine_rank(vertices);
    if rank < n + 1 {
        return Err(Error::Degenerate {
            rank,
            needed: n + 1,
        });
    }
    let two = Rational::from_integer(2.into());
    let rows: Vec<RVector> = vertices
        .iter()
        .map(|v| {
            let mut row = Vec::with_capacity(unknown_count(n));
            for i in 0..n {
                row.push(&v[i] * &v[i]);
                for j in i + 1..n {
                    row.push(&two * &v[i] * &v[j]);
                }
            }
            row.extend(v.iter().cloned());
            row.push(Rational::from_integer(1.into()));
            row
        })
        .collect();
    RationalMatrix::from_rows(unknown_count(n), &rows)
}

/// A quadric `xᵀQx + bᵀx + s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricTriple {
    pub q: RationalMatrix,
    pub b: RVector,
    pub s: Rational,
}

impl QuadricTriple {
    /// Unpacks a vector in the column layout of [`condition_matrix`].
    pub fn from_unknowns(x: &[Rational], n: usize) -> Self {
        assert_eq!(x.len(), unknown_count(n));
        let mut q = RationalMatrix::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                q[(i, j)] = x[k].clone();
                q[(j, i)] = x[k].clone();
                k += 1;
            }
        }
        let b = x[k..k + n].to_vec();
        let s = x[k + n].clone();
        Self { q, b, s }
    }

    pub fn to_unknowns(&self) -> RVector {
        let n = self.b.len();
        let mut out = Vec::with_capacity(unknown_count(n));
        for i in 0..n {
            for j in i..n {
                out.push(self.q[(i, j)].clone());
            }
        }
        out.extend(self.b.iter().cloned());
        out.push(self.s.clone());
        out
    }

    /// The sphere `q(x − c) = r²` written as a quadric.
    pub fn from_sphere(form: &QuadraticForm, center: &[Rational], radius_sq: &Rational) -> Self {
        let qc = form.matrix().mul_vec(center).expect("center matches form");
        let b = qc
            .iter()
            .map(|x| -x * Rational::from_integer(2.into()))
            .collect();
        let s = form.eval(center) - radius_sq;
        Self {
            q: form.matrix().clone(),
            b,
            s,
        }
    }

    pub fn eval(&self, v: &[Rational]) -> Rational {
        let qv = self.q.mul_vec(v).expect("dimension");
        exactlin::dot(v, &qv) + exactlin::dot(&self.b, v) + &self.s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalityCertificate {
    pub kernel_dim: usize,
    pub kernel_basis: Vec<QuadricTriple>,
    /// `Q` of the unique kernel triple scaled so `Q[0][0] = 1`; only when
    /// `kernel_dim = 1`.
    pub recovered_form: Option<QuadraticForm>,
    pub is_extreme: bool,
}

/// Kernel of the condition matrix, without checking Delaunay-ness.
pub fn kernel_certificate(vertices: &[RVector], n: usize) -> Result<ExtremalityCertificate> {
    let m = condition_matrix(vertices, n)?;
    let kernel_basis: Vec<QuadricTriple> = exactlin::kernel(&m)
        .into_iter()
        .map(|v| {
            let v: RVector = v.into_iter().map(Rational::from_integer).collect();
            QuadricTriple::from_unknowns(&v, n)
        })
        .collect();
    let kernel_dim = kernel_basis.len();

    let recovered_form = match kernel_basis.as_slice() {
        [only] if !only.q[(0, 0)].is_zero() => {
            let lead = only.q[(0, 0)].clone();
            Some(QuadraticForm::new(
                only.q.scaled(&(Rational::from_integer(1.into()) / lead)),
            )?)
        }
        _ => None,
    };
    let is_extreme = kernel_dim == 1
        && recovered_form
            .as_ref()
            .is_some_and(QuadraticForm::is_positive_definite);

    Ok(ExtremalityCertificate {
        kernel_dim,
        kernel_basis,
        recovered_form,
        is_extreme,
    })
}

pub fn certify_extreme(inst: &DelaunayInstance) -> Result<ExtremalityCertificate> {
    certify_extreme_with_limit(inst, crate::lattice::DEFAULT_MAX_NODES)
}

/// Verifies the empty sphere first; extremality of a non-Delaunay vertex
/// set is rejected with [`Error::NotDelaunay`].
pub fn certify_extreme_with_limit(
    inst: &DelaunayInstance,
    max_nodes: u64,
) -> Result<ExtremalityCertificate> {
    let sphere = delaunay::verify_delaunay_with_limit(inst, max_nodes)?;
    if !sphere.is_verified() {
        let reason = sphere.witness.map_or(
            "vertex set differs from the lattice points on the sphere",
            |w| w.kind.as_str(),
        );
        return Err(Error::NotDelaunay(reason.to_string()));
    }
    kernel_certificate(&inst.vertices, inst.dim())
}

/// Independent kernel-dimension check used to cross-examine
/// [`kernel_certificate`].
pub mod oracle {
    use num_traits::{One, Zero};

    use crate::exactlin::{RVector, Rational};

    /// Monomials in the order `1, x_1..x_n, x_i x_j (i ≤ j)`, i.e. reversed
    /// relative to the main condition matrix, with no factor 2 on the cross
    /// terms (a column scaling, which leaves the kernel dimension unchanged).
    fn monomial_row(v: &[Rational]) -> RVector {
        let mut row = vec![Rational::one()];
        row.extend(v.iter().cloned());
        for i in 0..v.len() {
            for j in i..v.len() {
                row.push(&v[i] * &v[j]);
            }
        }
        row
    }

    /// Columns minus rank, by plain rational elimination that scans columns
    /// from the right and pivots on the last nonzero row.
    pub fn kernel_dim_oracle(vertices: &[RVector], dim: usize) -> usize {
        let mut rows: Vec<RVector> = vertices.iter().map(|v| monomial_row(v)).collect();
        let cols = 1 + dim + dim * (dim + 1) / 2;
        let mut rank = 0;
        let mut live: Vec<usize> = (0..rows.len()).collect();
        for col in (0..cols).rev() {
            let Some(pos) = live.iter().rposition(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            let p = live.remove(pos);
            rank += 1;
            let pivot_row = rows[p].clone();
            for &r in &live {
                if rows[r][col].is_zero() {
                    continue;
                }
                let factor = &rows[r][col] / &pivot_row[col];
                for c in 0..cols {
                    let delta = &factor * &pivot_row[c];
                    rows[r][c] -= delta;
                }
            }
        }
        cols - rank
    }
}

#[cfg(test)]
mod tests {
    use super::oracle::kernel_dim_oracle;
    use super::*;
    use crate::constructions::{
        construct_cross_polytope, construct_half_cube, construct_pn, construct_segment, pn_form,
    };
    use crate::exactlin::{int, rat, rvec};

    fn rows_as_strings(m: &RationalMatrix) -> Vec<Vec<String>> {
        m.to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect()
    }

    #[test]
    fn segment_condition_matrix() {
        let m = condition_matrix(&[rvec(&[0]), rvec(&[1])], 1).unwrap();
        assert_eq!(
            rows_as_strings(&m),
            vec![vec!["0", "0", "1"], vec!["1", "1", "1"]]
        );
    }

    #[test]
    fn matrix_shapes() {
        let sq = [rvec(&[0, 0]), rvec(&[0, 1]), rvec(&[1, 0]), rvec(&[1, 1])];
        let m = condition_matrix(&sq, 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 6));
        let p6 = construct_pn(6).unwrap();
        let m = condition_matrix(&p6.vertices, 6).unwrap();
        assert_eq!((m.rows(), m.cols()), (27, 28));
        assert!(matches!(
            condition_matrix(&[rvec(&[0, 0]), rvec(&[1, 1])], 2),
            Err(Error::Degenerate { .. })
        ));
    }

    #[test]
    fn segment_is_extreme() {
        let cert = certify_extreme(&construct_segment()).unwrap();
        assert_eq!(cert.kernel_dim, 1);
        assert!(cert.is_extreme);
        assert_eq!(cert.recovered_form.unwrap(), QuadraticForm::identity(1));
    }

    #[test]
    fn p6_is_extreme_with_expected_form() {
        let p6 = construct_pn(6).unwrap();
        let cert = certify_extreme(&p6).unwrap();
        assert_eq!(cert.kernel_dim, 1);
        assert!(cert.is_extreme);
        let mut diag = vec![int(1); 5];
        diag.push(rat(3, 4));
        assert_eq!(cert.recovered_form.unwrap(), QuadraticForm::diagonal(&diag));
        assert_eq!(kernel_dim_oracle(&p6.vertices, 6), 1);
    }

    #[test]
    fn controls_are_not_extreme() {
        let h5 = construct_half_cube(5).unwrap();
        let cert = certify_extreme(&h5).unwrap();
        assert_eq!(cert.kernel_dim, 5);
        assert!(!cert.is_extreme);
        assert!(cert.recovered_form.is_none());
        assert_eq!(kernel_dim_oracle(&h5.vertices, 5), 5);

        let c4 = construct_cross_polytope(4).unwrap();
        let cert = certify_extreme(&c4).unwrap();
        assert_eq!(cert.kernel_dim, kernel_dim_oracle(&c4.vertices, 4));
        assert_eq!(cert.kernel_dim, 7);
        assert!(!cert.is_extreme);
    }

    #[test]
    fn kernel_triples_vanish_on_vertices() {
        for inst in [
            construct_pn(6).unwrap(),
            construct_half_cube(5).unwrap(),
            construct_cross_polytope(4).unwrap(),
        ] {
            let cert = kernel_certificate(&inst.vertices, inst.dim()).unwrap();
            for t in &cert.kernel_basis {
                assert!(inst.vertices.iter().all(|v| t.eval(v).is_zero()));
            }
        }
    }

    #[test]
    fn sphere_triple_is_in_kernel_for_p6() {
        let p6 = construct_pn(6).unwrap();
        let (c, r2) = crate::delaunay::pn_expected_sphere(6);
        let t = QuadricTriple::from_sphere(&pn_form(6), &c, &r2);
        assert!(p6.vertices.iter().all(|v| t.eval(v).is_zero()));
        let m = condition_matrix(&p6.vertices, 6).unwrap();
        assert!(m
            .mul_vec(&t.to_unknowns())
            .unwrap()
            .iter()
            .all(Zero::is_zero));
    }

    #[test]
    fn non_delaunay_rejected() {
        let mut p6 = construct_pn(6).unwrap();
        p6.vertices[0][0] += int(1);
        assert!(matches!(certify_extreme(&p6), Err(Error::NotDelaunay(_))));
    }
}
