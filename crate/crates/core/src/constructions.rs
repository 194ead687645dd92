//! Concrete lattices and polytopes: the root lattice `D_m`, its half-cube
//! and cross-polytope Delaunay cells, and the three-layer polytope `P_n`
//! over the lattice `L_n`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{int, rat, QuadraticForm, RVector, Rational};
use crate::lattice::Lattice;

/// A vertex set together with its ambient lattice and metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelaunayInstance {
    pub label: String,
    pub form: QuadraticForm,
    pub lattice: Lattice,
    pub vertices: Vec<RVector>,
}

impl DelaunayInstance {
    /// Checks shapes, positive definiteness of the form and that vertices
    /// are distinct. Lattice membership and affine rank are claims checked
    /// by the verifiers, not preconditions of construction.
    pub fn new(
        label: impl Into<String>,
        form: QuadraticForm,
        lattice: Lattice,
        vertices: Vec<RVector>,
    ) -> Result<Self> {
        let dim = lattice.dim();
        if form.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: form.dim(),
            });
        }
        if vertices.is_empty() {
            return Err(Error::InvalidDimension("instance has no vertices".into()));
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
        }
        let mut sorted: Vec<&RVector> = vertices.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse("duplicate vertex".into()));
        }
        if !form.is_positive_definite() {
            return Err(Error::IndefiniteForm);
        }
        Ok(Self {
            label: label.into(),
            form,
            lattice,
            vertices,
        })
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }
}

fn unit(n: usize, i: usize) -> RVector {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// Basis `{e_1 + e_2} ∪ {e_i − e_{i+1}}` of `D_m`.
pub fn standard_d_lattice(m: usize) -> Result<Lattice> {
    if m < 2 {
        return Err(Error::InvalidDimension(format!(
            "D_m needs m >= 2, got {m}"
        )));
    }
    let mut rows = Vec::with_capacity(m);
    let mut first = unit(m, 0);
    first[1] = int(1);
    rows.push(first);
    for i in 0..m - 1 {
        let mut r = unit(m, i);
        r[i + 1] = int(-1);
        rows.push(r);
    }
    Lattice::from_rows(&rows)
}

/// `L_n`: `D_{n−1} × {0}` together with `g = (1/2, …, 1/2, 1)`.
pub fn l_n_lattice(n: usize) -> Result<Lattice> {
    if n < 3 {
        return Err(Error::InvalidDimension(format!(
            "L_n needs n >= 3, got {n}"
        )));
    }
    let d = standard_d_lattice(n - 1)?;
    let mut rows: Vec<RVector> = d
        .basis()
        .to_rows()
        .into_iter()
        .map(|mut r| {
            r.push(Rational::zero());
            r
        })
        .collect();
    rows.push(apex(n));
    Lattice::from_rows(&rows)
}

/// `diag(1, …, 1, (n−3)/4)`.
pub fn pn_form(n: usize) -> QuadraticForm {
    let mut diag = vec![int(1); n - 1];
    diag.push(rat(n as i64 - 3, 4));
    QuadraticForm::diagonal(&diag)
}

/// Even-weight 0/1 vectors of length `m` in lexicographic order.
fn even_weight_vectors(m: usize) -> Vec<RVector> {
    (0u64..1 << m)
        .filter(|code| code.count_ones() % 2 == 0)
        .map(|code| {
            (0..m)
                .map(|i| int(((code >> (m - 1 - i)) & 1) as i64))
                .collect()
        })
        .collect()
}

pub fn construct_half_cube(m: usize) -> Result<DelaunayInstance> {
    if m < 2 {
        return Err(Error::InvalidDimension(format!(
            "half-cube needs m >= 2, got {m}"
        )));
    }
    if m > 30 {
        return Err(Error::InvalidDimension(format!(
            "half-cube dimension {m} is too large"
        )));
    }
    DelaunayInstance::new(
        format!("half-cube 1/2 H_{m}"),
        QuadraticForm::identity(m),
        standard_d_lattice(m)?,
        even_weight_vectors(m),
    )
}

pub fn construct_cross_polytope(m: usize) -> Result<DelaunayInstance> {
    if m < 2 {
        return Err(Error::InvalidDimension(format!(
            "cross-polytope needs m >= 2, got {m}"
        )));
    }
    let e1 = unit(m, 0);
    let mut vertices = Vec::with_capacity(2 * m);
    for i in 0..m {
        let mut plus = e1.clone();
        plus[i] += int(1);
        let mut minus = e1.clone();
        minus[i] -= int(1);
        vertices.push(plus);
        vertices.push(minus);
    }
    DelaunayInstance::new(
        format!("cross-polytope C_{m}"),
        QuadraticForm::identity(m),
        standard_d_lattice(m)?,
        vertices,
    )
}

/// The unit segment `[0, 1]` in `Z`.
pub fn construct_segment() -> DelaunayInstance {
    DelaunayInstance::new(
        "segment",
        QuadraticForm::identity(1),
        Lattice::integer(1),
        vec![vec![int(0)], vec![int(1)]],
    )
    .expect("segment is well formed")
}

/// Apex `V = (1/2, …, 1/2, 1)`.
pub fn apex(n: usize) -> RVector {
    let mut v = vec![rat(1, 2); n - 1];
    v.push(int(1));
    v
}

/// Middle layer `(x, 0)` with `x ∈ ½H_{n−1}`, lexicographic.
pub fn half_cube_layer(n: usize) -> Vec<RVector> {
    even_weight_vectors(n - 1)
        .into_iter()
        .map(|mut x| {
            x.push(Rational::zero());
            x
        })
        .collect()
}

/// Bottom layer `V_{j,±} = (1/2, …, 1/2, −1) ± e_j`, ordered `V_{1,+}, V_{1,−}, …`.
pub fn third_layer(n: usize) -> Vec<RVector> {
    let mut base = vec![rat(1, 2); n - 1];
    base.push(int(-1));
    let mut out = Vec::with_capacity(2 * (n - 1));
    for j in 0..n - 1 {
        let mut plus = base.clone();
        plus[j] += int(1);
        let mut minus = base.clone();
        minus[j] -= int(1);
        out.push(plus);
        out.push(minus);
    }
    out
}

/// Number of vertices of `P_n`: `1 + 2^{n−2} + 2(n−1)`.
pub fn pn_vertex_count(n: usize) -> BigInt {
    BigInt::one() + (BigInt::one() << (n - 2)) + BigInt::from(2 * (n - 1))
}

pub fn construct_pn(n: usize) -> Result<DelaunayInstance> {
    if n % 2 == 1 {
        return Err(Error::InvalidDimension(format!(
            "P_n requires even n (the third layer lies in L_n if and only if n is even), got {n}"
        )));
    }
    if n < 6 {
        return Err(Error::InvalidDimension(format!(
            "P_n requires n >= 6, got {n}"
        )));
    }
    if n > 30 {
        return Err(Error::InvalidDimension(format!(
            "P_n dimension {n} is too large"
        )));
    }
    let mut vertices = vec![apex(n)];
    vertices.extend(half_cube_layer(n));
    vertices.extend(third_layer(n));
    DelaunayInstance::new(format!("P_{n}"), pn_form(n), l_n_lattice(n)?, vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rvec;
    use crate::lattice::membership;

    #[test]
    fn half_cube_vertices() {
        let h3 = construct_half_cube(3).unwrap();
        assert_eq!(
            h3.vertices,
            vec![
                rvec(&[0, 0, 0]),
                rvec(&[0, 1, 1]),
                rvec(&[1, 0, 1]),
                rvec(&[1, 1, 0])
            ]
        );
        assert_eq!(construct_half_cube(5).unwrap().vertices.len(), 16);
        assert_eq!(
            construct_half_cube(2).unwrap().vertices,
            vec![rvec(&[0, 0]), rvec(&[1, 1])]
        );
        assert!(construct_half_cube(1).is_err());
    }

    #[test]
    fn cross_polytope_vertices() {
        let c2 = construct_cross_polytope(2).unwrap();
        let mut got = c2.vertices.clone();
        got.sort();
        let mut want = vec![rvec(&[0, 0]), rvec(&[2, 0]), rvec(&[1, 1]), rvec(&[1, -1])];
        want.sort();
        assert_eq!(got, want);
        let c3 = construct_cross_polytope(3).unwrap();
        assert_eq!(c3.vertices.len(), 6);
        for m in 2..7 {
            let c = construct_cross_polytope(m).unwrap();
            let e1 = unit(m, 0);
            assert!(c
                .vertices
                .iter()
                .all(|v| c.form.distance_sq(v, &e1) == int(1)));
        }
        assert!(construct_cross_polytope(1).is_err());
    }

    #[test]
    fn pn_counts_and_parity() {
        assert_eq!(construct_pn(6).unwrap().vertices.len(), 27);
        assert_eq!(construct_pn(8).unwrap().vertices.len(), 79);
        for n in (6..=14).step_by(2) {
            let p = construct_pn(n).unwrap();
            assert_eq!(BigInt::from(p.vertices.len()), pn_vertex_count(n));
        }
        for n in [3, 4, 5, 7, 9] {
            assert!(construct_pn(n).is_err());
        }
        let err = construct_pn(7).unwrap_err().to_string();
        assert!(err.contains("even"), "{err}");
    }

    #[test]
    fn d_lattice_membership_characterization() {
        let d3 = standard_d_lattice(3).unwrap();
        assert!(membership(&d3, &rvec(&[1, 1, 0])).unwrap());
        assert!(!membership(&d3, &rvec(&[1, 0, 0])).unwrap());
        let d4 = standard_d_lattice(4).unwrap();
        for code in 0..6561u32 {
            let mut c = code;
            let v: Vec<i64> = (0..4)
                .map(|_| {
                    let d = (c % 9) as i64 - 4;
                    c /= 9;
                    d
                })
                .collect();
            let even = v.iter().sum::<i64>() % 2 == 0;
            assert_eq!(membership(&d4, &rvec(&v)).unwrap(), even);
        }
        let half = vec![rat(1, 2), int(0), int(0)];
        assert!(!membership(&d3, &half).unwrap());
    }

    #[test]
    fn l_n_membership() {
        let l6 = l_n_lattice(6).unwrap();
        assert!(membership(&l6, &apex(6)).unwrap());
        assert!(!membership(&l6, &rvec(&[1, 0, 0, 0, 0, 0])).unwrap());
        let v1_plus = vec![
            rat(3, 2),
            rat(1, 2),
            rat(1, 2),
            rat(1, 2),
            rat(1, 2),
            int(-1),
        ];
        assert!(membership(&l6, &v1_plus).unwrap());
        let l7 = l_n_lattice(7).unwrap();
        let v1_plus_7 = vec![
            rat(3, 2),
            rat(1, 2),
            rat(1, 2),
            rat(1, 2),
            rat(1, 2),
            rat(1, 2),
            int(-1),
        ];
        assert!(!membership(&l7, &v1_plus_7).unwrap());
        assert!(l_n_lattice(2).is_err());
    }

    #[test]
    fn third_layer_in_l_n_iff_even() {
        for n in 3..=13 {
            let l = l_n_lattice(n).unwrap();
            let all_in = third_layer(n).iter().all(|v| membership(&l, v).unwrap());
            let none_in = third_layer(n).iter().all(|v| !membership(&l, v).unwrap());
            if n % 2 == 0 {
                assert!(all_in, "n = {n}");
            } else {
                assert!(none_in, "n = {n}");
            }
        }
    }

    #[test]
    fn pn_vertices_in_lattice_and_distances() {
        for n in (6..=12).step_by(2) {
            let p = construct_pn(n).unwrap();
            assert!(p
                .vertices
                .iter()
                .all(|v| membership(&p.lattice, v).unwrap()));
            let v = &p.vertices[0];
            let layer = half_cube_layer(n);
            for w in &layer {
                assert_eq!(p.form.distance_sq(v, w), rat(n as i64 - 2, 2));
            }
            // adjacent half-cube vertices differ in exactly two coordinates
            for a in &layer {
                for b in &layer {
                    let hamming = a.iter().zip(b).filter(|(x, y)| x != y).count();
                    if hamming == 2 {
                        assert_eq!(p.form.distance_sq(a, b), int(2));
                    }
                }
            }
        }
    }
}
