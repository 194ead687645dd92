//! Circumscribed spheres and empty-sphere certificates.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::constructions::DelaunayInstance;
use crate::error::{Error, Result};
use crate::exactlin::{self, sub, QuadraticForm, RVector, Rational, RationalMatrix};
use crate::lattice::{self, BallQuery};

/// Affine rank of a point set: rank of the differences to the first point, plus one.
pub fn affine_rank(points: &[RVector]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let diffs: Vec<RVector> = points[1..].iter().map(|p| sub(p, first)).collect();
    if diffs.is_empty() {
        return 1;
    }
    let m = RationalMatrix::from_rows(first.len(), &diffs).expect("points share a dimension");
    exactlin::rank(&m) + 1
}

/// Indices of `dim + 1` affinely independent points, chosen greedily in order.
fn affine_basis(points: &[RVector], dim: usize) -> Result<Vec<usize>> {
    let mut chosen = vec![0];
    let mut diffs: Vec<RVector> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        if chosen.len() == dim + 1 {
            break;
        }
        diffs.push(sub(p, &points[0]));
        let m = RationalMatrix::from_rows(dim, &diffs)?;
        if exactlin::rank(&m) == diffs.len() {
            chosen.push(i);
        } else {
            diffs.pop();
        }
    }
    if chosen.len() < dim + 1 {
        return Err(Error::Degenerate {
            rank: chosen.len(),
            needed: dim + 1,
        });
    }
    Ok(chosen)
}

/// Center and squared radius of the sphere through the affine basis picked
/// from `vertices`; other vertices are not checked.
fn sphere_through_basis(vertices: &[RVector], form: &QuadraticForm) -> Result<(RVector, Rational)> {
    let dim = form.dim();
    if let Some(v) = vertices.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: v.len(),
        });
    }
    if vertices.is_empty() {
        return Err(Error::Degenerate {
            rank: 0,
            needed: dim + 1,
        });
    }
    let basis = affine_basis(vertices, dim)?;
    let v0 = &vertices[basis[0]];
    let q0 = form.eval(v0);
    // q(v − c) = q(v0 − c)  ⇔  2 (v − v0)ᵀ Q c = q(v) − q(v0)
    let mut rows = Vec::with_capacity(dim);
    let mut rhs = Vec::with_capacity(dim);
    for &i in &basis[1..] {
        let v = &vertices[i];
        let d = sub(v, v0);
        let row = form.matrix().left_mul_vec(&d)?;
        rows.push(
            row.into_iter()
                .map(|x| x * Rational::from_integer(2.into()))
                .collect(),
        );
        rhs.push(form.eval(v) - &q0);
    }
    let m = RationalMatrix::from_rows(dim, &rows)?;
    let center = exactlin::solve(&m, &rhs)?
        .unique()
        .cloned()
        .ok_or(Error::Degenerate {
            rank: basis.len(),
            needed: dim + 1,
        })?;
    let radius_sq = form.distance_sq(v0, &center);
    Ok((center, radius_sq))
}

/// Unique `(c, r²)` with `q(v − c) = r²` for every vertex.
pub fn circumcenter(vertices: &[RVector], form: &QuadraticForm) -> Result<(RVector, Rational)> {
    let (center, radius_sq) = sphere_through_basis(vertices, form)?;
    if let Some(index) = vertices
        .iter()
        .position(|v| form.distance_sq(v, &center) != radius_sq)
    {
        return Err(Error::NotCospherical { index });
    }
    Ok((center, radius_sq))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateStatus {
    Verified,
    Refuted,
}

/// Why a candidate was refuted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// Lattice point strictly inside the sphere.
    Interior,
    /// Lattice point on the sphere that is not a declared vertex.
    ExtraOnSphere,
    /// Declared vertex off the sphere through the others.
    OffSphereVertex,
    /// Declared vertex outside the lattice.
    NonLatticeVertex,
}

impl WitnessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessKind::Interior => "interior lattice point",
            WitnessKind::ExtraOnSphere => "lattice point on sphere is not a vertex",
            WitnessKind::OffSphereVertex => "vertex not on the circumscribed sphere",
            WitnessKind::NonLatticeVertex => "vertex not in lattice",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        [
            WitnessKind::Interior,
            WitnessKind::ExtraOnSphere,
            WitnessKind::OffSphereVertex,
            WitnessKind::NonLatticeVertex,
        ]
        .into_iter()
        .find(|k| k.as_str() == text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub point: RVector,
    pub kind: WitnessKind,
}

/// Outcome of an empty-sphere check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereCertificate {
    pub center: RVector,
    pub radius_sq: Rational,
    pub status: CertificateStatus,
    pub witness: Option<Witness>,
    /// Lattice points with `q(v − c) = r²`.
    pub on_sphere_count: usize,
}

impl SphereCertificate {
    pub fn is_verified(&self) -> bool {
        self.status == CertificateStatus::Verified
    }
}

pub fn verify_delaunay(inst: &DelaunayInstance) -> Result<SphereCertificate> {
    verify_delaunay_with_limit(inst, lattice::DEFAULT_MAX_NODES)
}

/// Enumerates the closed circumscribed ball and checks that the lattice
/// points on it are exactly the declared vertices and none lie inside.
pub fn verify_delaunay_with_limit(
    inst: &DelaunayInstance,
    max_nodes: u64,
) -> Result<SphereCertificate> {
    let (center, radius_sq) = sphere_through_basis(&inst.vertices, &inst.form)?;

    let mut early_witness = None;
    for v in &inst.vertices {
        if !inst.lattice.contains(v)? {
            early_witness = Some(Witness {
                point: v.clone(),
                kind: WitnessKind::NonLatticeVertex,
            });
            break;
        }
    }
    if early_witness.is_none() {
        early_witness = inst
            .vertices
            .iter()
            .find(|v| inst.form.distance_sq(v, &center) != radius_sq)
            .map(|v| Witness {
                point: v.clone(),
                kind: WitnessKind::OffSphereVertex,
            });
    }

    let query = BallQuery::new(inst.form.clone(), center.clone(), radius_sq.clone())?;
    let points = lattice::enumerate_in_ball_with_limit(&inst.lattice, &query, max_nodes)?;
    let on_sphere_count = points.iter().filter(|p| p.value == radius_sq).count();

    let witness = early_witness.or_else(|| {
        let vertex_set: BTreeSet<&RVector> = inst.vertices.iter().collect();
        points.iter().find_map(|p| {
            if p.value < radius_sq {
                Some(Witness {
                    point: p.point.clone(),
                    kind: WitnessKind::Interior,
                })
            } else if !vertex_set.contains(&p.point) {
                Some(Witness {
                    point: p.point.clone(),
                    kind: WitnessKind::ExtraOnSphere,
                })
            } else {
                None
            }
        })
    });

    let status = if witness.is_none() && on_sphere_count == inst.vertices.len() {
        CertificateStatus::Verified
    } else {
        CertificateStatus::Refuted
    };
    Ok(SphereCertificate {
        center,
        radius_sq,
        status,
        witness,
        on_sphere_count,
    })
}

/// `(center, r²)` predicted for `P_n`: `((1/2, …, 1/2, −1/(n−3)), (n−2)²/(4(n−3)))`.
pub fn pn_expected_sphere(n: usize) -> (RVector, Rational) {
    let n = n as i64;
    let mut center = vec![Rational::new(1.into(), 2.into()); (n - 1) as usize];
    center.push(Rational::new((-1).into(), (n - 3).into()));
    let radius_sq = Rational::new(((n - 2) * (n - 2)).into(), (4 * (n - 3)).into());
    (center, radius_sq)
}

/// The center `(0, …, 0, −1/(n−3))` and `r² = (n−2)²/(n−3)` as literally
/// stated alongside the construction; they do not satisfy the sphere
/// equations and are kept for comparison only.
pub fn pn_stated_sphere(n: usize) -> (RVector, Rational) {
    let n = n as i64;
    let mut center = vec![Rational::zero(); (n - 1) as usize];
    center.push(Rational::new((-1).into(), (n - 3).into()));
    let radius_sq = Rational::new(((n - 2) * (n - 2)).into(), (n - 3).into());
    (center, radius_sq)
}
