//! One-shot reproduction of the `P_n` results: construction, empty sphere,
//! extremality and symmetry, with every expected value checked exactly.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::constructions::{construct_pn, pn_form, pn_vertex_count};
use crate::delaunay::{pn_expected_sphere, pn_stated_sphere, verify_delaunay_with_limit};
use crate::error::{Error, Result};
use crate::exactlin::format_rational;
use crate::extremality::kernel_certificate;
use crate::io::{ExtremalityCertificateFile, SphereCertificateFile, SymmetryReportFile};
use crate::symmetry::automorphisms;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// Everything the `report` command computes. Stage outputs are `None` when
/// an earlier stage failed; `error` then holds the failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PnReport {
    pub n: usize,
    pub label: String,
    pub vertex_count: Option<usize>,
    pub expected_vertex_count: String,
    pub delaunay: Option<SphereCertificateFile>,
    pub expected_center: Vec<String>,
    pub expected_radius_sq: String,
    /// Center `(0, …, 0, −1/(n−3))` and radius `(n−2)/√(n−3)` in the form
    /// they are usually quoted, kept for comparison.
    pub quoted_center: Vec<String>,
    pub quoted_radius_sq: String,
    pub quoted_sphere_matches: Option<bool>,
    pub extremality: Option<ExtremalityCertificateFile>,
    pub expected_form: Vec<Vec<String>>,
    pub symmetry: Option<SymmetryReportFile>,
    pub expected_group_order: String,
    pub expected_orbit_count: usize,
    pub checks: Vec<Check>,
    pub all_passed: bool,
    pub error: Option<String>,
}

fn factorial(k: usize) -> BigUint {
    (1..=k).map(BigUint::from).product()
}

/// `51840` for `n = 6`, otherwise `(n−1)!·2^{n−2}`.
pub fn pn_expected_group_order(n: usize) -> BigUint {
    if n == 6 {
        BigUint::from(51840u32)
    } else {
        factorial(n - 1) * (BigUint::one() << (n - 2))
    }
}

pub fn pn_expected_orbit_count(n: usize) -> usize {
    if n == 6 {
        1
    } else {
        3
    }
}

/// Runs the whole pipeline; stage errors are recorded in the report rather
/// than returned.
pub fn run_pn_report(n: usize, max_nodes: u64) -> PnReport {
    let (center, radius_sq) = pn_expected_sphere(n.max(4));
    let (quoted_center, quoted_radius_sq) = pn_stated_sphere(n.max(4));
    let mut report = PnReport {
        n,
        label: format!("P_{n}"),
        vertex_count: None,
        expected_vertex_count: pn_vertex_count(n.max(2)).to_string(),
        delaunay: None,
        expected_center: center.iter().map(format_rational).collect(),
        expected_radius_sq: format_rational(&radius_sq),
        quoted_center: quoted_center.iter().map(format_rational).collect(),
        quoted_radius_sq: format_rational(&quoted_radius_sq),
        quoted_sphere_matches: None,
        extremality: None,
        expected_form: pn_form(n.max(1))
            .matrix()
            .to_rows()
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect(),
        symmetry: None,
        expected_group_order: pn_expected_group_order(n.max(2)).to_string(),
        expected_orbit_count: pn_expected_orbit_count(n),
        checks: Vec::new(),
        all_passed: false,
        error: None,
    };
    if let Err(e) = fill(&mut report, n, max_nodes) {
        report.error = Some(e.to_string());
        report.all_passed = false;
    } else {
        report.all_passed = report.checks.iter().all(|c| c.passed);
    }
    report
}

fn fill(report: &mut PnReport, n: usize, max_nodes: u64) -> Result<()> {
    let inst = construct_pn(n)?;
    let mut check = |name: &str, passed: bool| {
        report.checks.push(Check {
            name: name.to_string(),
            passed,
        })
    };

    let count = inst.vertices.len();
    check(
        "vertex count is 1 + 2^(n-2) + 2(n-1)",
        pn_vertex_count(n) == count.into(),
    );
    report.vertex_count = Some(count);

    let sphere = verify_delaunay_with_limit(&inst, max_nodes)?;
    let (center, radius_sq) = pn_expected_sphere(n);
    let (quoted_center, quoted_radius_sq) = pn_stated_sphere(n);
    report.checks.push(Check {
        name: "(i) empty sphere verified".into(),
        passed: sphere.is_verified(),
    });
    report.checks.push(Check {
        name: "(i) lattice points on the sphere equal the vertices".into(),
        passed: sphere.on_sphere_count == count,
    });
    report.checks.push(Check {
        name: "(ii) center is (1/2, ..., 1/2, -1/(n-3))".into(),
        passed: sphere.center == center,
    });
    report.checks.push(Check {
        name: "(ii) r^2 is (n-2)^2 / (4(n-3))".into(),
        passed: sphere.radius_sq == radius_sq,
    });
    report.quoted_sphere_matches =
        Some(sphere.center == quoted_center && sphere.radius_sq == quoted_radius_sq);
    report.delaunay = Some(SphereCertificateFile::from_certificate(&sphere));
    if !sphere.is_verified() {
        return Err(Error::NotDelaunay(
            sphere
                .witness
                .map_or("on-sphere count differs from vertex count", |w| {
                    w.kind.as_str()
                })
                .into(),
        ));
    }

    let ext = kernel_certificate(&inst.vertices, n)?;
    report.checks.push(Check {
        name: "(i) quadric kernel has dimension 1".into(),
        passed: ext.kernel_dim == 1,
    });
    report.checks.push(Check {
        name: "(i) extreme".into(),
        passed: ext.is_extreme,
    });
    report.checks.push(Check {
        name: "(i) recovered form is diag(1, ..., 1, (n-3)/4)".into(),
        passed: ext.recovered_form.as_ref() == Some(&pn_form(n)),
    });
    report.extremality = Some(ExtremalityCertificateFile::from_certificate(&ext));

    let sym = automorphisms(&inst);
    report.checks.push(Check {
        name: "(iii) group order".into(),
        passed: sym.group_order == pn_expected_group_order(n),
    });
    report.checks.push(Check {
        name: "(iii) orbit count".into(),
        passed: sym.orbit_count == pn_expected_orbit_count(n),
    });
    if n > 6 {
        let mut sizes: Vec<usize> = sym.orbits.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        let mut want = vec![1, 1usize << (n - 2), 2 * (n - 1)];
        want.sort_unstable();
        report.checks.push(Check {
            name: "(iii) orbits are the three layers".into(),
            passed: sizes == want,
        });
    }
    report.symmetry = Some(SymmetryReportFile::from_report(&sym));
    Ok(())
}

fn tuple(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

/// Human-readable summary, numbered (i)/(ii)/(iii).
pub fn render_text(r: &PnReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} (n = {})", r.label, r.n);
    if let Some(c) = r.vertex_count {
        let _ = writeln!(
            out,
            "  vertices: {c} (expected {})",
            r.expected_vertex_count
        );
    }
    if let Some(d) = &r.delaunay {
        let _ = writeln!(
            out,
            "(i)   empty sphere: {}, {} lattice points on the sphere",
            d.status, d.on_sphere_count
        );
        if let (Some(w), Some(reason)) = (&d.witness, &d.reason) {
            let _ = writeln!(out, "      witness {}: {reason}", tuple(w));
        }
    }
    if let Some(e) = &r.extremality {
        let _ = writeln!(
            out,
            "      quadric kernel dimension {}: {}",
            e.kernel_dim,
            if e.is_extreme {
                "extreme"
            } else {
                "not extreme"
            }
        );
        if let Some(f) = &e.recovered_form {
            let diag: Vec<String> = (0..f.len()).map(|i| f[i][i].clone()).collect();
            let diagonal = (0..f.len()).all(|i| (0..f.len()).all(|j| i == j || f[i][j] == "0"));
            if diagonal {
                let _ = writeln!(out, "      recovered form diag{}", tuple(&diag));
            } else {
                let _ = writeln!(out, "      recovered form {f:?}");
            }
        }
    }
    if let Some(d) = &r.delaunay {
        let _ = writeln!(out, "(ii)  center {}", tuple(&d.center));
        let _ = writeln!(out, "      r^2 = {}", d.radius_sq);
        let _ = writeln!(
            out,
            "      quoted center {} with r^2 = {}: {}",
            tuple(&r.quoted_center),
            r.quoted_radius_sq,
            match r.quoted_sphere_matches {
                Some(true) => "matches",
                Some(false) => "MISMATCH with the computed sphere",
                None => "not compared",
            }
        );
    }
    if let Some(s) = &r.symmetry {
        let sizes: Vec<String> = s.orbits.iter().map(|o| o.len().to_string()).collect();
        let _ = writeln!(
            out,
            "(iii) isometry group order {} (expected {}), {} orbit(s) of sizes {}",
            s.group_order,
            r.expected_group_order,
            s.orbit_count,
            tuple(&sizes)
        );
    }
    for c in &r.checks {
        let _ = writeln!(
            out,
            "  [{}] {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name
        );
    }
    if let Some(e) = &r.error {
        let _ = writeln!(out, "  error: {e}");
    }
    let _ = writeln!(
        out,
        "  overall: {}",
        if r.all_passed { "PASS" } else { "FAIL" }
    );
    out
}

pub fn parse_report(text: &str) -> Result<PnReport> {
    let report: PnReport = serde_json::from_str(text)?;
    if let Some(d) = &report.delaunay {
        d.to_certificate()?;
    }
    if let Some(e) = &report.extremality {
        e.to_certificate()?;
    }
    if let Some(s) = &report.symmetry {
        s.to_report()?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DEFAULT_MAX_NODES;

    #[test]
    fn expected_orders() {
        assert_eq!(pn_expected_group_order(6), BigUint::from(51840u32));
        assert_eq!(pn_expected_group_order(8), BigUint::from(322_560u32));
        assert_eq!(pn_expected_group_order(10), BigUint::from(92_897_280u32));
    }

    #[test]
    fn p6_report_passes() {
        let r = run_pn_report(6, DEFAULT_MAX_NODES);
        assert!(r.all_passed, "{}", render_text(&r));
        assert_eq!(r.quoted_sphere_matches, Some(false));
        assert_eq!(r.symmetry.as_ref().unwrap().group_order, "51840");
        let text = render_text(&r);
        assert!(text.contains("diag(1, 1, 1, 1, 1, 3/4)"), "{text}");
        let json = crate::io::to_json(&r);
        assert_eq!(parse_report(&json).unwrap(), r);
    }

    #[test]
    fn odd_dimension_report_is_partial() {
        let r = run_pn_report(7, DEFAULT_MAX_NODES);
        assert!(!r.all_passed);
        assert!(r.error.as_deref().unwrap().contains("even"));
        assert!(r.delaunay.is_none());
    }

    #[test]
    fn node_limit_surfaces_as_error() {
        let r = run_pn_report(6, 10);
        assert!(!r.all_passed);
        assert!(r.error.unwrap().contains("node limit"));
        assert_eq!(r.vertex_count, Some(27));
    }
}
