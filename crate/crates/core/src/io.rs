//! JSON file formats. Rationals are written as `"p/q"` strings (`"p"` when
//! the denominator is 1); every reader validates its input fully.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::constructions::DelaunayInstance;
use crate::delaunay::{CertificateStatus, SphereCertificate, Witness, WitnessKind};
use crate::error::{Error, Result};
use crate::exactlin::{
    format_rational, parse_rational, QuadraticForm, RVector, Rational, RationalMatrix,
};
use crate::extremality::{ExtremalityCertificate, QuadricTriple};
use crate::lattice::Lattice;
use crate::symmetry::{Permutation, SymmetryReport};

/// Largest dimension accepted from files.
pub const MAX_FILE_DIM: usize = 64;
/// Longest rational literal accepted from files.
pub const MAX_RATIONAL_LEN: usize = 512;

fn read_rational(text: &str) -> Result<Rational> {
    if text.len() > MAX_RATIONAL_LEN {
        return Err(Error::Parse("rational literal too long".into()));
    }
    parse_rational(text)
}

fn write_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn read_vec(v: &[String], dim: usize) -> Result<RVector> {
    if v.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: v.len(),
        });
    }
    v.iter().map(|s| read_rational(s)).collect()
}

fn write_matrix(m: &RationalMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| write_vec(r)).collect()
}

fn read_square(rows: &[Vec<String>], dim: usize) -> Result<RationalMatrix> {
    if rows.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: rows.len(),
        });
    }
    let rows = rows
        .iter()
        .map(|r| read_vec(r, dim))
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_rows(dim, &rows)
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_FILE_DIM {
        return Err(Error::InvalidDimension(format!(
            "dimension {dim} outside 1..={MAX_FILE_DIM}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
}

impl LatticeFile {
    pub fn from_lattice(l: &Lattice) -> Self {
        Self {
            dim: l.dim(),
            basis: write_matrix(l.basis()),
        }
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        check_dim(self.dim)?;
        Lattice::new(read_square(&self.basis, self.dim)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub label: String,
    pub dim: usize,
    pub form: Vec<Vec<String>>,
    pub lattice: LatticeFile,
    pub vertices: Vec<Vec<String>>,
}

impl InstanceFile {
    pub fn from_instance(inst: &DelaunayInstance) -> Self {
        Self {
            label: inst.label.clone(),
            dim: inst.dim(),
            form: write_matrix(inst.form.matrix()),
            lattice: LatticeFile::from_lattice(&inst.lattice),
            vertices: inst.vertices.iter().map(|v| write_vec(v)).collect(),
        }
    }

    pub fn to_instance(&self) -> Result<DelaunayInstance> {
        check_dim(self.dim)?;
        if self.lattice.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: self.lattice.dim,
            });
        }
        let form = QuadraticForm::new(read_square(&self.form, self.dim)?)?;
        let lattice = self.lattice.to_lattice()?;
        let vertices = self
            .vertices
            .iter()
            .map(|v| read_vec(v, self.dim))
            .collect::<Result<Vec<_>>>()?;
        DelaunayInstance::new(self.label.clone(), form, lattice, vertices)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereCertificateFile {
    pub center: Vec<String>,
    pub radius_sq: String,
    pub status: String,
    pub witness: Option<Vec<String>>,
    pub reason: Option<String>,
    pub on_sphere_count: usize,
}

impl SphereCertificateFile {
    pub fn from_certificate(c: &SphereCertificate) -> Self {
        Self {
            center: write_vec(&c.center),
            radius_sq: format_rational(&c.radius_sq),
            status: match c.status {
                CertificateStatus::Verified => "verified",
                CertificateStatus::Refuted => "refuted",
            }
            .into(),
            witness: c.witness.as_ref().map(|w| write_vec(&w.point)),
            reason: c.witness.as_ref().map(|w| w.kind.as_str().to_string()),
            on_sphere_count: c.on_sphere_count,
        }
    }

    pub fn to_certificate(&self) -> Result<SphereCertificate> {
        let dim = self.center.len();
        check_dim(dim)?;
        let status = match self.status.as_str() {
            "verified" => CertificateStatus::Verified,
            "refuted" => CertificateStatus::Refuted,
            other => return Err(Error::Parse(format!("unknown status {other:?}"))),
        };
        let witness = match (&self.witness, &self.reason) {
            (None, None) => None,
            (Some(point), Some(reason)) => Some(Witness {
                point: read_vec(point, dim)?,
                kind: WitnessKind::parse(reason)
                    .ok_or_else(|| Error::Parse(format!("unknown witness reason {reason:?}")))?,
            }),
            _ => {
                return Err(Error::Parse(
                    "witness and reason must appear together".into(),
                ))
            }
        };
        if status == CertificateStatus::Verified && witness.is_some() {
            return Err(Error::Parse(
                "verified certificate carries a witness".into(),
            ));
        }
        Ok(SphereCertificate {
            center: read_vec(&self.center, dim)?,
            radius_sq: read_rational(&self.radius_sq)?,
            status,
            witness,
            on_sphere_count: self.on_sphere_count,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadricFile {
    #[serde(rename = "Q")]
    pub q: Vec<Vec<String>>,
    pub b: Vec<String>,
    pub s: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtremalityCertificateFile {
    pub kernel_dim: usize,
    pub is_extreme: bool,
    pub kernel_basis: Vec<QuadricFile>,
    pub recovered_form: Option<Vec<Vec<String>>>,
}

impl ExtremalityCertificateFile {
    pub fn from_certificate(c: &ExtremalityCertificate) -> Self {
        Self {
            kernel_dim: c.kernel_dim,
            is_extreme: c.is_extreme,
            kernel_basis: c
                .kernel_basis
                .iter()
                .map(|t| QuadricFile {
                    q: write_matrix(&t.q),
                    b: write_vec(&t.b),
                    s: format_rational(&t.s),
                })
                .collect(),
            recovered_form: c.recovered_form.as_ref().map(|f| write_matrix(f.matrix())),
        }
    }

    pub fn to_certificate(&self) -> Result<ExtremalityCertificate> {
        if self.kernel_dim != self.kernel_basis.len() {
            return Err(Error::Parse(format!(
                "kernel_dim {} but {} basis triples",
                self.kernel_dim,
                self.kernel_basis.len()
            )));
        }
        let mut dim = None;
        let kernel_basis = self
            .kernel_basis
            .iter()
            .map(|t| {
                let n = *dim.get_or_insert(t.b.len());
                check_dim(n)?;
                let q = read_square(&t.q, n)?;
                if !q.is_symmetric() {
                    return Err(Error::NotSymmetric);
                }
                Ok(QuadricTriple {
                    q,
                    b: read_vec(&t.b, n)?,
                    s: read_rational(&t.s)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let recovered_form = match &self.recovered_form {
            None => None,
            Some(rows) => {
                let n = dim.unwrap_or(rows.len());
                check_dim(n)?;
                Some(QuadraticForm::new(read_square(rows, n)?)?)
            }
        };
        Ok(ExtremalityCertificate {
            kernel_dim: self.kernel_dim,
            kernel_basis,
            recovered_form,
            is_extreme: self.is_extreme,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetryReportFile {
    pub group_order: String,
    pub orbit_count: usize,
    pub orbits: Vec<Vec<usize>>,
    pub generators: Vec<Vec<usize>>,
}

impl SymmetryReportFile {
    pub fn from_report(r: &SymmetryReport) -> Self {
        Self {
            group_order: r.group_order.to_string(),
            orbit_count: r.orbit_count,
            orbits: r.orbits.clone(),
            generators: r.generators.iter().map(Permutation::images).collect(),
        }
    }

    pub fn to_report(&self) -> Result<SymmetryReport> {
        if self.group_order.is_empty()
            || self.group_order.len() > MAX_RATIONAL_LEN
            || !self.group_order.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(Error::Parse(format!(
                "invalid group order {:?}",
                self.group_order
            )));
        }
        let group_order: BigUint = self
            .group_order
            .parse()
            .map_err(|_| Error::Parse(format!("invalid group order {:?}", self.group_order)))?;
        if self.orbit_count != self.orbits.len() {
            return Err(Error::Parse("orbit_count does not match orbits".into()));
        }
        let degree: usize = self.orbits.iter().map(Vec::len).sum();
        let mut seen = vec![false; degree];
        for &p in self.orbits.iter().flatten() {
            if p >= degree || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Parse(
                    "orbits do not partition the vertex indices".into(),
                ));
            }
        }
        let generators = self
            .generators
            .iter()
            .map(|g| {
                if g.len() != degree {
                    return Err(Error::MalformedPermutation(format!(
                        "generator of degree {} for {degree} vertices",
                        g.len()
                    )));
                }
                Permutation::from_images(g.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SymmetryReport {
            generators,
            group_order,
            orbit_count: self.orbit_count,
            orbits: self.orbits.clone(),
        })
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file types always serialize");
    s.push('\n');
    s
}

pub fn parse_lattice(text: &str) -> Result<Lattice> {
    serde_json::from_str::<LatticeFile>(text)?.to_lattice()
}

pub fn parse_instance(text: &str) -> Result<DelaunayInstance> {
    serde_json::from_str::<InstanceFile>(text)?.to_instance()
}

pub fn parse_sphere_certificate(text: &str) -> Result<SphereCertificate> {
    serde_json::from_str::<SphereCertificateFile>(text)?.to_certificate()
}

pub fn parse_extremality_certificate(text: &str) -> Result<ExtremalityCertificate> {
    serde_json::from_str::<ExtremalityCertificateFile>(text)?.to_certificate()
}

pub fn parse_symmetry_report(text: &str) -> Result<SymmetryReport> {
    serde_json::from_str::<SymmetryReportFile>(text)?.to_report()
}

pub fn instance_json(inst: &DelaunayInstance) -> String {
    to_json(&InstanceFile::from_instance(inst))
}

pub fn lattice_json(l: &Lattice) -> String {
    to_json(&LatticeFile::from_lattice(l))
}

pub fn sphere_certificate_json(c: &SphereCertificate) -> String {
    to_json(&SphereCertificateFile::from_certificate(c))
}

pub fn extremality_certificate_json(c: &ExtremalityCertificate) -> String {
    to_json(&ExtremalityCertificateFile::from_certificate(c))
}

pub fn symmetry_report_json(r: &SymmetryReport) -> String {
    to_json(&SymmetryReportFile::from_report(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{construct_half_cube, construct_pn, l_n_lattice};

    #[test]
    fn lattice_file_shape() {
        let l = l_n_lattice(6).unwrap();
        let text = lattice_json(&l);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["dim"], 6);
        assert_eq!(
            v["basis"][5],
            serde_json::json!(["1/2", "1/2", "1/2", "1/2", "1/2", "1"])
        );
        assert_eq!(parse_lattice(&text).unwrap(), l);
    }

    #[test]
    fn instance_round_trip() {
        let p6 = construct_pn(6).unwrap();
        let text = instance_json(&p6);
        assert_eq!(parse_instance(&text).unwrap(), p6);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["form"][5][5], "3/4");
        assert_eq!(v["label"], "P_6");
    }

    #[test]
    fn malformed_instances_rejected() {
        let h = construct_half_cube(3).unwrap();
        let good = InstanceFile::from_instance(&h);

        let mut bad = good.clone();
        bad.vertices[0].pop();
        assert!(bad.to_instance().is_err());

        let mut bad = good.clone();
        bad.form[0][1] = "1".into();
        assert_eq!(bad.to_instance(), Err(Error::NotSymmetric));

        let mut bad = good.clone();
        bad.form[0][0] = "-1".into();
        assert_eq!(bad.to_instance(), Err(Error::IndefiniteForm));

        let mut bad = good.clone();
        bad.lattice.basis[1] = bad.lattice.basis[0].clone();
        assert_eq!(bad.to_instance(), Err(Error::SingularBasis));

        let mut bad = good.clone();
        bad.vertices[1] = bad.vertices[0].clone();
        assert!(bad.to_instance().is_err());

        let mut bad = good;
        bad.dim = 1000;
        assert!(bad.to_instance().is_err());

        assert!(parse_instance("{").is_err());
        assert!(parse_instance("{\"label\":\"x\"}").is_err());
    }

    #[test]
    fn symmetry_report_validation() {
        let good = SymmetryReportFile {
            group_order: "2".into(),
            orbit_count: 1,
            orbits: vec![vec![0, 1]],
            generators: vec![vec![1, 0]],
        };
        assert!(good.to_report().is_ok());
        let mut bad = good.clone();
        bad.generators = vec![vec![1, 1]];
        assert!(bad.to_report().is_err());
        let mut bad = good.clone();
        bad.group_order = "-2".into();
        assert!(bad.to_report().is_err());
        let mut bad = good;
        bad.orbits = vec![vec![0, 0]];
        assert!(bad.to_report().is_err());
    }
}
