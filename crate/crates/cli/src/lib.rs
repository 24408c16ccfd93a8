//! Front end shared by the `tdz` binary and its tests: parse a JSON request,
//! dispatch it to `tdz-core`, and build the JSON response.

pub mod wire;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use tdz_core::cert::{operator_norm, CertificationReport, OperatorMatrix, Tolerances, Tri, Verdict};
use tdz_core::compose_lp::{self, CompositionOperatorSpec};
use tdz_core::disk::{self, CirclePolynomial};
use tdz_core::hardy::{self, PolySymbol};
use tdz_core::linf::{self, ZeroClass};
use tdz_core::mult::{self, MultOperatorSpec};
use tdz_core::Error;

pub use wire::{parse_request, Mode, Request, Subject};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNVERIFIED: i32 = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub zd: bool,
    /// `null` when the question is not settled.
    pub left_zd: Option<bool>,
    pub right_zd: Option<bool>,
    pub tdz: bool,
    pub regular: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_class: Option<ZeroClass>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: OperatorMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionReport {
    pub n: usize,
    pub matrices: Vec<NamedMatrix>,
    pub checks: Value,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Response {
    pub kind: String,
    pub mode: Mode,
    pub verdict: Verdict,
    pub summary: Summary,
    /// Per-kind facts behind the verdict (zero sets, spectra, map properties, ...).
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub details: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<CertificationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<SectionReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorResponse {
    pub error: String,
    pub message: String,
}

/// Result of one invocation: the JSON document to print and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub document: Value,
    pub exit_code: i32,
}

impl Outcome {
    fn failure(kind: &str, message: String, exit_code: i32) -> Self {
        Outcome {
            document: serde_json::to_value(ErrorResponse { error: kind.into(), message }).expect("plain data"),
            exit_code,
        }
    }
}

fn tri(t: Tri) -> Option<bool> {
    match t {
        Tri::Yes => Some(true),
        Tri::No => Some(false),
        Tri::NotApplicable => None,
    }
}

fn summarize(v: &Verdict, zero_class: Option<ZeroClass>) -> Summary {
    Summary {
        zd: v.is_zero_divisor(),
        left_zd: tri(v.left_zero_divisor),
        right_zd: tri(v.right_zero_divisor),
        tdz: v.is_tdz,
        regular: v.is_regular,
        zero_class,
    }
}

fn error_kind(e: &Error) -> (&'static str, i32) {
    match e {
        Error::Input(_) => ("input", EXIT_INPUT),
        Error::Degenerate(_) => ("degenerate", EXIT_INPUT),
        Error::InvalidSymbol(_) => ("invalid_symbol", EXIT_INPUT),
        Error::SectionTooSmall { .. } => ("section_too_small", EXIT_INPUT),
        Error::UnsupportedProduct(_) => ("unsupported_product", EXIT_INPUT),
        Error::CompositionUnrepresentable(_) => ("composition_unrepresentable", EXIT_INPUT),
        Error::NotARoot { .. } => ("not_a_root", EXIT_INPUT),
        Error::CertificateMalformed(_) => ("certificate_malformed", EXIT_UNVERIFIED),
        Error::Numeric { .. } => ("numeric", EXIT_INTERNAL),
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("plain data")
}

/// Parses and runs a request document.
pub fn run_text(text: &str, overrides: &Overrides) -> Outcome {
    match parse_request(text) {
        Ok(mut req) => {
            overrides.apply(&mut req.tolerances);
            run(&req)
        }
        Err(msg) => Outcome::failure("input", msg, EXIT_INPUT),
    }
}

/// Tolerance settings given on the command line; they win over the request's own.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub eps_norm: Option<f64>,
    pub n_witness: Option<usize>,
}

impl Overrides {
    fn apply(&self, tol: &mut Tolerances) {
        if let Some(e) = self.eps_norm {
            tol.eps_norm = e;
        }
        if let Some(n) = self.n_witness {
            tol.n_witness = n;
        }
    }
}

pub fn run(req: &Request) -> Outcome {
    if let Err(e) = req.tolerances.validate() {
        return Outcome::failure("input", e.to_string(), EXIT_INPUT);
    }
    match execute(req) {
        Ok(resp) => {
            let failed = resp.report.as_ref().is_some_and(|r| !r.passes)
                || resp.section.as_ref().is_some_and(|s| !s.passes);
            Outcome {
                document: to_value(&resp),
                exit_code: if failed { EXIT_UNVERIFIED } else { EXIT_OK },
            }
        }
        Err(Failure::Core(e)) => {
            let (kind, code) = error_kind(&e);
            Outcome::failure(kind, e.to_string(), code)
        }
        Err(Failure::Unsupported(msg)) => Outcome::failure("unsupported", msg, EXIT_INPUT),
    }
}

enum Failure {
    Core(Error),
    Unsupported(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn section_size(req: &Request) -> Result<usize, Failure> {
    match req.n {
        Some(n) if n >= 1 => Ok(n),
        Some(_) => Err(Error::Input("section size must be at least 1".into()).into()),
        None => Err(Error::Input("section mode needs \"n\"".into()).into()),
    }
}

fn execute(req: &Request) -> Result<Response, Failure> {
    let tol = &req.tolerances;
    let mut resp = match &req.subject {
        Subject::Disk { coeffs } => {
            let p = CirclePolynomial::new(wire::complexes(coeffs))?;
            let verdict = disk::decide_tdz_disk(&p, tol)?;
            let details = to_value(&disk::circle_zeros(&p, tol)?);
            let report = match req.mode {
                Mode::Analyze => None,
                Mode::Certify => Some(disk::certify_disk(&p, &verdict, tol)?),
                Mode::Section => {
                    return Err(Failure::Unsupported(
                        "finite sections are defined for operators, not for disk-algebra elements".into(),
                    ))
                }
            };
            response(req, verdict, None, details, report)
        }
        Subject::Linf(w) => {
            let f = w.build()?;
            if req.mode == Mode::Section {
                return Err(Failure::Unsupported(
                    "finite sections are defined for operators; use \"operator\": \"mult\"".into(),
                ));
            }
            let verdict = linf::analyze_linf(&f, tol)?;
            let spectrum = linf::spectrum_mult(&f, tol);
            let details = json!({ "stats": linf::essential_stats(&f, tol), "spectrum": spectrum });
            let report = match req.mode {
                Mode::Certify => Some(linf::certify_linf(&f, &verdict, tol)?),
                _ => None,
            };
            response(req, verdict, Some(spectrum.zero_class), details, report)
        }
        Subject::Mult { p, h } => {
            let op = MultOperatorSpec::new(h.build()?, *p)?;
            let verdict = mult::analyze_mult(&op, tol)?;
            let spectrum = linf::spectrum_mult(&op.h, tol);
            let details = json!({ "stats": linf::essential_stats(&op.h, tol), "spectrum": spectrum });
            let zero_class = Some(spectrum.zero_class);
            match req.mode {
                Mode::Analyze => response(req, verdict, zero_class, details, None),
                Mode::Certify => {
                    let report = mult::certify_mult(&op, &verdict, tol)?;
                    response(req, verdict, zero_class, details, Some(report))
                }
                Mode::Section => {
                    let mut r = response(req, verdict, zero_class, details, None);
                    r.section = Some(mult_section(&op, section_size(req)?, tol)?);
                    r
                }
            }
        }
        Subject::ComposeLp { p, phi } => {
            let spec = CompositionOperatorSpec::new(phi.clone(), *p)?;
            let verdict = compose_lp::divisor_status(&spec)?;
            let details = json!({
                "properties": compose_lp::map_properties(phi),
                "norm": compose_lp::composition_norm(&spec),
                "rn_derivative": compose_lp::rn_derivative(phi),
            });
            match req.mode {
                Mode::Analyze => response(req, verdict, None, details, None),
                Mode::Certify => {
                    let report = compose_lp::certify_compose(&spec, &verdict, tol)?;
                    response(req, verdict, None, details, Some(report))
                }
                Mode::Section => {
                    let section = compose_section(&spec, &verdict, section_size(req)?, tol)?;
                    let mut r = response(req, verdict, None, details, None);
                    r.section = Some(section);
                    r
                }
            }
        }
        Subject::ComposeHardy { symbol, order } => {
            let phi = PolySymbol::new(CirclePolynomial::new(wire::complexes(&symbol.coeffs))?, tol)?;
            let verdict = hardy::analyze_hardy(&phi, *order, tol)?;
            let details = json!({ "sup_on_circle": phi.sup_on_circle(), "order": order });
            match req.mode {
                Mode::Analyze => response(req, verdict, None, details, None),
                Mode::Certify => {
                    let report = hardy::certify_hardy(&phi, *order, &verdict, tol)?;
                    response(req, verdict, None, details, Some(report))
                }
                Mode::Section => {
                    let n = req.n.unwrap_or(*order);
                    let section = hardy_section(&phi, &verdict, n, tol)?;
                    let mut r = response(req, verdict, None, details, None);
                    r.section = Some(section);
                    r
                }
            }
        }
    };
    resp.mode = req.mode.clone();
    Ok(resp)
}

fn response(
    req: &Request,
    verdict: Verdict,
    zero_class: Option<ZeroClass>,
    details: Value,
    report: Option<CertificationReport>,
) -> Response {
    Response {
        kind: req.subject.kind().into(),
        mode: req.mode.clone(),
        summary: summarize(&verdict, zero_class),
        verdict,
        details,
        report,
        section: None,
    }
}

fn mult_section(op: &MultOperatorSpec, n: usize, tol: &Tolerances) -> Result<SectionReport, Failure> {
    let m = mult::finite_section_mult(op, n)?;
    let norm = operator_norm(&m, tol)?;
    let ess_sup = linf::essential_stats(&op.h, tol).ess_sup;
    Ok(SectionReport {
        n,
        passes: norm <= ess_sup + tol.eps_norm,
        checks: json!({ "section_norm": norm, "ess_sup": ess_sup }),
        matrices: vec![NamedMatrix { name: "M_h".into(), matrix: m }],
    })
}

fn compose_section(
    spec: &CompositionOperatorSpec,
    verdict: &Verdict,
    n: usize,
    tol: &Tolerances,
) -> Result<SectionReport, Failure> {
    let c = compose_lp::finite_section_composition(spec, n)?;
    let adjoint = compose_lp::adjoint_rn_check(spec, n, tol)?;
    let mut passes = adjoint.identity_holds && adjoint.routes_agree;
    let mut matrices = vec![NamedMatrix { name: "C_phi".into(), matrix: c }];
    let mut annihilators = Vec::new();
    for (ann, side) in verdict.annihilators() {
        let (t, prod) = compose_lp::annihilator_product(spec, ann, side, n)?;
        passes &= prod.is_exact_zero();
        annihilators.push(json!({ "annihilator": ann, "side": side, "product_zero": prod.is_exact_zero() }));
        matrices.push(NamedMatrix { name: format!("T ({side:?})").to_lowercase(), matrix: t });
    }
    Ok(SectionReport {
        n,
        matrices,
        checks: json!({ "adjoint": adjoint, "annihilators": annihilators }),
        passes,
    })
}

fn hardy_section(
    phi: &PolySymbol,
    verdict: &Verdict,
    n: usize,
    tol: &Tolerances,
) -> Result<SectionReport, Failure> {
    let c = hardy::composition_matrix(phi, n)?;
    let singular = c.singular_values()?;
    let rank_deficient = hardy::right_zero_divisor_finite(&c, tol)?;
    let mut passes = true;
    let mut matrices = vec![NamedMatrix { name: "C_phi".into(), matrix: c.clone() }];
    let mut annihilators = Vec::new();
    for (ann, side) in verdict.annihilators() {
        let t = hardy::annihilator_matrix(ann, n)?;
        let prod = match side {
            tdz_core::cert::Side::Left => c.mul(&t)?,
            tdz_core::cert::Side::Right => t.mul(&c)?,
        };
        passes &= prod.is_exact_zero();
        annihilators.push(json!({ "annihilator": ann, "side": side, "product_zero": prod.is_exact_zero() }));
        matrices.push(NamedMatrix { name: format!("T ({side:?})").to_lowercase(), matrix: t });
    }
    if let Some(s) = rank_deficient {
        let residual = operator_norm(&s.mul(&c)?, tol)?;
        passes &= residual <= tol.eps_norm * operator_norm(&c, tol)?.max(f64::MIN_POSITIVE);
        matrices.push(NamedMatrix { name: "S (range annihilator)".into(), matrix: s });
    }
    Ok(SectionReport {
        n,
        matrices,
        checks: json!({
            "smallest_singular_value": singular.last(),
            "largest_singular_value": singular.first(),
            "annihilators": annihilators,
        }),
        passes,
    })
}

/// Renders the response document, compact or indented.
pub fn render(outcome: &Outcome, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(&outcome.document).expect("plain data")
    } else {
        serde_json::to_string(&outcome.document).expect("plain data")
    }
}

pub fn parse_response(text: &str) -> serde_json::Result<Response> {
    serde_json::from_str(text)
}
