//! Text and JSON rendering of command outcomes.

use std::fmt::Write as _;

use samelson_core::scalar::{format_rational, GaussianRational};
use samelson_core::verify::{J_SQUARED, NIJENHUIS};
use samelson_core::{ComplexStructure, Element, LieAlgebra, RootDatum, VerificationItem, VerificationReport};
use serde::Serialize;

/// Everything a command produced, successful or not.
#[derive(Debug)]
pub struct Outcome {
    pub command: &'static str,
    pub algebra: LieAlgebra,
    pub datum: Option<RootDatum>,
    pub structure: Option<Placed>,
    pub report: VerificationReport,
    pub error: Option<String>,
}

/// A structure together with the tower level it acts on (0 = the base).
#[derive(Debug)]
pub struct Placed {
    pub level: usize,
    pub j: ComplexStructure,
}

impl Outcome {
    pub fn new(command: &'static str, algebra: LieAlgebra) -> Self {
        Self {
            command,
            algebra,
            datum: None,
            structure: None,
            report: VerificationReport::new(),
            error: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.report.overall()
    }
}

#[derive(Serialize)]
struct Complex {
    re: String,
    im: String,
}

impl From<&GaussianRational> for Complex {
    fn from(z: &GaussianRational) -> Self {
        Self {
            re: format_rational(&z.re),
            im: format_rational(&z.im),
        }
    }
}

#[derive(Serialize)]
struct RootJson {
    values: Vec<Complex>,
    vector: Vec<Complex>,
}

#[derive(Serialize)]
struct CertificateJson {
    labels: Vec<usize>,
    residual: Vec<Complex>,
}

#[derive(Serialize)]
struct CheckJson {
    name: String,
    passed: bool,
    detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateJson>,
}

#[derive(Serialize)]
struct ReportJson {
    command: &'static str,
    name: String,
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    torus: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    regular_element: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    roots: Option<Vec<RootJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    j_matrix: Option<Vec<Vec<String>>>,
    checks: Vec<CheckJson>,
    overall: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn strings(x: &Element) -> Vec<String> {
    x.coords().iter().map(format_rational).collect()
}

fn check_json(item: &VerificationItem) -> CheckJson {
    CheckJson {
        name: item.name.clone(),
        passed: item.passed,
        detail: item.detail.clone(),
        certificate: item.certificate.as_ref().map(|c| CertificateJson {
            labels: c.labels.clone(),
            residual: c.residual.iter().map(Complex::from).collect(),
        }),
    }
}

/// Deterministic JSON: fixed key order, exact rational strings.
pub fn to_json(o: &Outcome) -> String {
    let report = ReportJson {
        command: o.command,
        name: o.algebra.name().to_string(),
        dim: o.algebra.dim(),
        torus: o.datum.as_ref().map(|d| d.torus().iter().map(strings).collect()),
        regular_element: o.datum.as_ref().map(|d| strings(d.regular_element())),
        roots: o.datum.as_ref().map(|d| {
            d.roots()
                .iter()
                .zip(d.root_vectors())
                .map(|(r, e)| RootJson {
                    values: r.values.iter().map(Complex::from).collect(),
                    vector: e.coords().iter().map(Complex::from).collect(),
                })
                .collect()
        }),
        mode: o.structure.as_ref().map(|p| p.j.provenance().to_string()),
        level: o.structure.as_ref().map(|p| p.level),
        j_matrix: o.structure.as_ref().map(|p| {
            p.j.matrix()
                .to_rows()
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect()
        }),
        checks: o.report.items.iter().map(check_json).collect(),
        overall: o.passed(),
        error: o.error.clone(),
    };
    let mut s = serde_json::to_string_pretty(&report).expect("serializable");
    s.push('\n');
    s
}

fn display_name(name: &str) -> &str {
    match name {
        J_SQUARED => "J^2 = -id",
        NIJENHUIS => "N_J = 0",
        other => other,
    }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Basis label at a tower level: `e_i` on the base, `e_i^c`/`e_i^v` on the
/// first tangent level, plain `e_i` above that.
fn labeller(level: usize, base_dim: usize) -> impl Fn(usize) -> String {
    move |k| match level {
        1 if k < base_dim => format!("e_{}^c", k + 1),
        1 => format!("e_{}^v", k + 1 - base_dim),
        _ => format!("e_{}", k + 1),
    }
}

pub fn to_text(o: &Outcome) -> String {
    let mut s = String::new();
    let g = &o.algebra;
    let _ = writeln!(s, "algebra: {} (dim {})", g.name(), g.dim());
    if let Some(d) = &o.datum {
        let _ = writeln!(s, "torus (rank {}):", d.rank());
        for (i, h) in d.torus().iter().enumerate() {
            let _ = writeln!(s, "  H_{} = {h}", i + 1);
        }
        let _ = writeln!(s, "regular element: H_0 = {}", d.regular_element());
        let _ = writeln!(s, "positive roots ({}):", d.roots().len());
        for (a, (r, e)) in d.roots().iter().zip(d.root_vectors()).enumerate() {
            let _ = writeln!(s, "  alpha_{} = {r}    E_{} = {e}", a + 1, a + 1);
        }
    }
    if let Some(p) = &o.structure {
        let j = &p.j;
        let _ = writeln!(
            s,
            "structure: {} on {} (level {}, dim {})",
            j.provenance(),
            j.algebra().name(),
            p.level,
            j.dim()
        );
        let rows = j.matrix().to_rows();
        let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(format_rational).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let _ = writeln!(s, "J matrix (column k is the image of basis vector k):");
        for row in &cells {
            let body: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            let _ = writeln!(s, "  [ {} ]", body.join(" "));
        }
        let label = labeller(p.level, g.dim());
        let _ = writeln!(s, "J action:");
        for c in 0..j.dim() {
            let image = Element::new(j.matrix().column(c));
            let _ = writeln!(s, "  J {} = {}", label(c), image.render(&label));
        }
    }
    let _ = writeln!(s, "checks:");
    for item in &o.report.items {
        let _ = writeln!(s, "  {}: {} ({})", display_name(&item.name), verdict(item.passed), item.detail);
        if let Some(c) = &item.certificate {
            let labels: Vec<String> = c.labels.iter().map(ToString::to_string).collect();
            let residual: Vec<String> = c.residual.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                s,
                "    certificate: labels ({}), residual [{}]",
                labels.join(", "),
                residual.join(", ")
            );
        }
    }
    let _ = writeln!(s, "overall: {}", verdict(o.passed()));
    s
}
