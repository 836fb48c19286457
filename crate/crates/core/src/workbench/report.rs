use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::input::{
    format_vector, parse_vector, AlgebraData, Analysis, BuildFailure, ModuleKind, WorkbenchInput,
};
use super::WorkbenchError;
use crate::algebra::{Algebra, Bimodule, EnvelopingAlgebra};
use crate::cohomology::{
    h1, h2, right_translate, separating_idempotent, CohomologyError, IdentityFamily,
};
use crate::decomposition::{
    conjugate_complements, nilpotent_inverse, radical, wedderburn_decompose, DecompositionError,
};
use crate::linalg::sparse::to_dense;
use crate::linalg::{Field, FieldElement, Subspace};

pub const REPORT_VERSION: &str = concat!("metalg ", env!("CARGO_PKG_VERSION"));

type Vector = Vec<String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum VerifyOutcome {
    Metagroup {
        order: usize,
        psi: Vec<usize>,
        associative: bool,
        /// Triples `(a, b, c)` with `t₃(a, b, c) ≠ e`.
        nontrivial_associators: usize,
        /// The distinct associator values that occur.
        associator_values: Vec<usize>,
    },
    Structure {
        dimension: usize,
        associative: bool,
        commutative: bool,
    },
    Violation {
        axiom: String,
    },
    Error {
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residual {
    pub family: IdentityFamily,
    pub checked: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum IdempotentOutcome {
    Certified {
        /// Coordinates in the basis `a ⊗ b°` of `A^e`.
        b: Vector,
        freedom: usize,
        /// `p(b_x) = b·b_x`, the splitting of `μ`.
        p: Vec<Vector>,
        residuals: Vec<Residual>,
    },
    NotSeparable {
        h1_kernel_dimension: usize,
        /// A derivation into `ker μ` that is not inner.
        witness: Option<Vector>,
    },
    Error {
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyGroup {
    pub module: ModuleKind,
    pub degree: usize,
    pub module_dimension: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
    pub representatives: Vec<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CohomologyOutcome {
    Computed { groups: Vec<CohomologyGroup> },
    Error { message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DecomposeOutcome {
    Split {
        radical: Vec<Vector>,
        index: usize,
        cross_checked: bool,
        complement: Vec<Vector>,
        /// Number of square-zero stages the construction ran.
        stages: usize,
    },
    Obstructed {
        level: usize,
        phi: Vector,
    },
    Error {
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ConjugateOutcome {
    Conjugated {
        radical: Vec<Vector>,
        b: Vec<Vector>,
        c: Vec<Vector>,
        v: Vector,
        right_inverse: Vector,
        left_inverse: Vector,
    },
    NotInner {
        w: Vec<Vector>,
    },
    Error {
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "analysis", content = "result", rename_all = "lowercase")]
pub enum Entry {
    Verify(VerifyOutcome),
    Idempotent(IdempotentOutcome),
    Cohomology(CohomologyOutcome),
    Decompose(DecomposeOutcome),
    Conjugate(ConjugateOutcome),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Ok,
    Negative,
    Error,
    Violation,
}

impl Entry {
    pub fn analysis(&self) -> Analysis {
        match self {
            Entry::Verify(_) => Analysis::Verify,
            Entry::Idempotent(_) => Analysis::Idempotent,
            Entry::Cohomology(_) => Analysis::Cohomology,
            Entry::Decompose(_) => Analysis::Decompose,
            Entry::Conjugate(_) => Analysis::Conjugate,
        }
    }

    pub fn severity(&self) -> Severity {
        match self {
            Entry::Verify(VerifyOutcome::Violation { .. }) => Severity::Violation,
            Entry::Verify(VerifyOutcome::Error { .. })
            | Entry::Idempotent(IdempotentOutcome::Error { .. })
            | Entry::Cohomology(CohomologyOutcome::Error { .. })
            | Entry::Decompose(DecomposeOutcome::Error { .. })
            | Entry::Conjugate(ConjugateOutcome::Error { .. }) => Severity::Error,
            Entry::Idempotent(IdempotentOutcome::NotSeparable { .. })
            | Entry::Decompose(DecomposeOutcome::Obstructed { .. })
            | Entry::Conjugate(ConjugateOutcome::NotInner { .. }) => Severity::Negative,
            _ => Severity::Ok,
        }
    }
}

/// Everything that must be reproducible bit for bit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Results {
    pub field: String,
    pub algebra: AlgebraData,
    pub dimension: Option<usize>,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    /// SHA-256 of the compact JSON form of `document`.
    pub digest: String,
    pub document: WorkbenchInput,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: f64,
    pub analyses_ms: Vec<(Analysis, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub input: InputEcho,
    pub results: Results,
    /// SHA-256 of the compact JSON form of `results`.
    pub results_digest: String,
    pub timing: Timing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = WorkbenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" | "structured" => Ok(Format::Json),
            other => Err(WorkbenchError::Validation(format!(
                "unknown format `{other}`"
            ))),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn digest_of<T: Serialize>(value: &T) -> String {
    sha256_hex(
        serde_json::to_string(value)
            .expect("report values serialize")
            .as_bytes(),
    )
}

fn vectors(v: &[Vec<FieldElement>]) -> Vec<Vector> {
    v.iter().map(|x| format_vector(x)).collect()
}

pub(crate) fn module_for(
    kind: ModuleKind,
    a: &Algebra,
    env: &mut Option<EnvelopingAlgebra>,
) -> Result<Bimodule, WorkbenchError> {
    if kind == ModuleKind::Regular {
        return Ok(Bimodule::regular(a));
    }
    if env.is_none() {
        *env =
            Some(EnvelopingAlgebra::new(a).map_err(|e| WorkbenchError::Validation(e.to_string()))?);
    }
    let env = env.as_ref().expect("just built");
    match kind {
        ModuleKind::Enveloping => Ok(env.module().clone()),
        _ => env
            .kernel_module()
            .map_err(|e| WorkbenchError::Validation(e.to_string())),
    }
}

pub(crate) fn verify_outcome(
    data: &AlgebraData,
    algebra: &Result<Algebra, String>,
) -> VerifyOutcome {
    if let Some(m) = data.metagroup() {
        return match m {
            Ok(m) => {
                let n = m.len();
                let mut values = std::collections::BTreeSet::new();
                let mut nontrivial = 0;
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            let t = m.associator(a, b, c);
                            values.insert(t);
                            if t != m.unit() {
                                nontrivial += 1;
                            }
                        }
                    }
                }
                VerifyOutcome::Metagroup {
                    order: n,
                    psi: m.psi().to_vec(),
                    associative: nontrivial == 0,
                    nontrivial_associators: nontrivial,
                    associator_values: values.into_iter().collect(),
                }
            }
            Err(e) => VerifyOutcome::Violation {
                axiom: e.to_string(),
            },
        };
    }
    match algebra {
        Ok(a) => match a.check_twisted_associativity() {
            Ok(()) => VerifyOutcome::Structure {
                dimension: a.dim(),
                associative: a.is_associative(),
                commutative: a.is_commutative(),
            },
            Err(e) => VerifyOutcome::Violation {
                axiom: e.to_string(),
            },
        },
        Err(e) => VerifyOutcome::Error { message: e.clone() },
    }
}

fn idempotent_entry(a: &Algebra) -> IdempotentOutcome {
    let env = match EnvelopingAlgebra::new(a) {
        Ok(env) => env,
        Err(e) => {
            return IdempotentOutcome::Error {
                message: e.to_string(),
            }
        }
    };
    match separating_idempotent(&env) {
        Ok(cert) => IdempotentOutcome::Certified {
            p: (0..a.dim())
                .map(|x| {
                    format_vector(&to_dense(
                        &right_translate(&env, &cert.b, x),
                        env.dim(),
                        a.field(),
                    ))
                })
                .collect(),
            b: format_vector(&cert.b),
            freedom: cert.freedom,
            residuals: cert
                .residuals
                .iter()
                .map(|r| Residual {
                    family: r.family,
                    checked: r.checked,
                    failed: r.failed,
                })
                .collect(),
        },
        Err(CohomologyError::NotSeparable) => match env.kernel_module() {
            Ok(kernel) => {
                let h = h1(a, &kernel);
                IdempotentOutcome::NotSeparable {
                    h1_kernel_dimension: h.dim_h(),
                    witness: h.representatives.first().map(|r| format_vector(r)),
                }
            }
            Err(e) => IdempotentOutcome::Error {
                message: e.to_string(),
            },
        },
        Err(e) => IdempotentOutcome::Error {
            message: e.to_string(),
        },
    }
}

fn cohomology_entry(a: &Algebra, modules: &[ModuleKind], degrees: &[usize]) -> CohomologyOutcome {
    let mut env = None;
    let mut groups = Vec::new();
    for &kind in modules {
        let m = match module_for(kind, a, &mut env) {
            Ok(m) => m,
            Err(e) => {
                return CohomologyOutcome::Error {
                    message: e.to_string(),
                }
            }
        };
        for &degree in degrees {
            let r = if degree == 1 { h1(a, &m) } else { h2(a, &m) };
            groups.push(CohomologyGroup {
                module: kind,
                degree,
                module_dimension: m.dim(),
                dim_z: r.dim_z(),
                dim_b: r.dim_b(),
                dim_h: r.dim_h(),
                representatives: vectors(&r.representatives),
            });
        }
    }
    CohomologyOutcome::Computed { groups }
}

fn decompose_entry(a: &Algebra) -> DecomposeOutcome {
    match wedderburn_decompose(a) {
        Ok(res) => DecomposeOutcome::Split {
            radical: vectors(&res.radical.ideal.basis_dense()),
            index: res.radical.index,
            cross_checked: res.radical.cross_checked,
            complement: vectors(&res.complement.basis_dense()),
            stages: res.trail.len(),
        },
        Err(DecompositionError::Obstructed { level, phi }) => DecomposeOutcome::Obstructed {
            level,
            phi: format_vector(&phi.values),
        },
        Err(e) => DecomposeOutcome::Error {
            message: e.to_string(),
        },
    }
}

/// The default second complement: `C = (1 − v₀)⁻¹ B (1 − v₀)` for `v₀` the
/// sum of the radical basis.
fn default_complements(a: &Algebra) -> Result<(Subspace, Subspace), DecompositionError> {
    let dec = wedderburn_decompose(a)?;
    let field = a.field();
    let n = a.dim();
    let mut v0 = vec![field.zero(); n];
    for j in dec.radical.ideal.basis_dense() {
        for (r, c) in j.iter().enumerate() {
            v0[r] += c;
        }
    }
    let (right, _) = nilpotent_inverse(a, &v0)?;
    let one_minus: Vec<FieldElement> = a.unit().iter().zip(&v0).map(|(u, v)| u - v).collect();
    let c: Vec<Vec<FieldElement>> = dec
        .complement
        .basis_dense()
        .iter()
        .map(|d| a.multiply(&a.multiply(&right, d), &one_minus))
        .collect();
    let c = Subspace::from_vectors(field, n, &c);
    Ok((dec.complement, c))
}

fn conjugate_entry(a: &Algebra, input: &WorkbenchInput) -> ConjugateOutcome {
    let field = a.field();
    let n = a.dim();
    let pair = match &input.conjugate {
        Some(spec) => {
            let parse = |vs: &[Vec<String>]| -> Result<Subspace, WorkbenchError> {
                let v = vs
                    .iter()
                    .map(|t| parse_vector(field, n, t))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Subspace::from_vectors(field, n, &v))
            };
            match (parse(&spec.b), parse(&spec.c)) {
                (Ok(b), Ok(c)) => Ok((b, c)),
                (Err(e), _) | (_, Err(e)) => {
                    return ConjugateOutcome::Error {
                        message: e.to_string(),
                    }
                }
            }
        }
        None => default_complements(a),
    };
    let (b, c) = match pair {
        Ok(p) => p,
        Err(e) => {
            return ConjugateOutcome::Error {
                message: e.to_string(),
            }
        }
    };
    let rad = match radical(a) {
        Ok(r) => r,
        Err(e) => {
            return ConjugateOutcome::Error {
                message: e.to_string(),
            }
        }
    };
    match conjugate_complements(a, &b, &c) {
        Ok(res) => ConjugateOutcome::Conjugated {
            radical: vectors(&rad.ideal.basis_dense()),
            b: vectors(&b.basis_dense()),
            c: vectors(&c.basis_dense()),
            v: format_vector(&res.v),
            right_inverse: format_vector(&res.right_inverse),
            left_inverse: format_vector(&res.left_inverse),
        },
        Err(DecompositionError::NotInner { w }) => ConjugateOutcome::NotInner { w: vectors(&w) },
        Err(e) => ConjugateOutcome::Error {
            message: e.to_string(),
        },
    }
}

/// Runs every requested analysis. `base` resolves relative file references.
pub fn run_analysis(input: &WorkbenchInput, base: Option<&Path>) -> Result<Report, WorkbenchError> {
    input.validate()?;
    let start = Instant::now();
    let field: Field = input.field()?;
    let data = input.resolve(base)?;
    let algebra = data.build(field).map_err(|f| match f {
        BuildFailure::Axiom(e) => format!("metagroup fails verification: {e}"),
        BuildFailure::Other(e) => e.to_string(),
    });
    let mut analyses = input.analyses.clone();
    analyses.sort();
    analyses.dedup();
    let mut entries = Vec::new();
    let mut timings = Vec::new();
    for analysis in analyses {
        let t = Instant::now();
        let entry = match (analysis, &algebra) {
            (Analysis::Verify, _) => Entry::Verify(verify_outcome(&data, &algebra)),
            (Analysis::Idempotent, Ok(a)) => Entry::Idempotent(idempotent_entry(a)),
            (Analysis::Cohomology, Ok(a)) => {
                Entry::Cohomology(cohomology_entry(a, &input.modules, &input.degrees))
            }
            (Analysis::Decompose, Ok(a)) => Entry::Decompose(decompose_entry(a)),
            (Analysis::Conjugate, Ok(a)) => Entry::Conjugate(conjugate_entry(a, input)),
            (Analysis::Idempotent, Err(e)) => {
                Entry::Idempotent(IdempotentOutcome::Error { message: e.clone() })
            }
            (Analysis::Cohomology, Err(e)) => {
                Entry::Cohomology(CohomologyOutcome::Error { message: e.clone() })
            }
            (Analysis::Decompose, Err(e)) => {
                Entry::Decompose(DecomposeOutcome::Error { message: e.clone() })
            }
            (Analysis::Conjugate, Err(e)) => {
                Entry::Conjugate(ConjugateOutcome::Error { message: e.clone() })
            }
        };
        timings.push((analysis, t.elapsed().as_secs_f64() * 1e3));
        entries.push(entry);
    }
    let results = Results {
        field: field.to_string(),
        algebra: data,
        dimension: algebra.as_ref().ok().map(|a| a.dim()),
        entries,
    };
    Ok(Report {
        version: REPORT_VERSION.to_string(),
        input: InputEcho {
            digest: digest_of(input),
            document: input.clone(),
        },
        results_digest: digest_of(&results),
        results,
        timing: Timing {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
            analyses_ms: timings,
        },
    })
}

impl Report {
    pub fn severity(&self) -> Severity {
        self.results
            .entries
            .iter()
            .map(|e| e.severity())
            .max()
            .unwrap_or(Severity::Ok)
    }
}

fn write_vectors(out: &mut String, name: &str, vs: &[Vector]) {
    out.push_str(&format!("  {name}:\n"));
    for v in vs {
        out.push_str(&format!("    [{}]\n", v.join(", ")));
    }
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Text => emit_text(report),
    }
}

fn emit_text(report: &Report) -> String {
    let r = &report.results;
    let mut out = String::new();
    out.push_str(&format!("{}\n", report.version));
    if let Some(name) = &report.input.document.name {
        out.push_str(&format!("input: {name}\n"));
    }
    out.push_str(&format!("input digest: {}\n", report.input.digest));
    out.push_str(&format!("field: {}\n", r.field));
    match r.dimension {
        Some(d) => out.push_str(&format!("dimension: {d}\n")),
        None => out.push_str("dimension: unavailable\n"),
    }
    for entry in &r.entries {
        out.push_str(&format!(
            "\n[{}]\n",
            serde_json::to_value(entry.analysis())
                .unwrap()
                .as_str()
                .unwrap()
        ));
        match entry {
            Entry::Verify(v) => match v {
                VerifyOutcome::Metagroup { order, psi, associative, nontrivial_associators, associator_values } => {
                    out.push_str(&format!(
                        "  metagroup of order {order}, psi = {psi:?}, associative: {associative}\n  nontrivial associators: {nontrivial_associators}, values: {associator_values:?}\n"
                    ));
                }
                VerifyOutcome::Structure { dimension, associative, commutative } => out.push_str(&format!(
                    "  algebra of dimension {dimension}, associative: {associative}, commutative: {commutative}\n"
                )),
                VerifyOutcome::Violation { axiom } => out.push_str(&format!("  VIOLATION: {axiom}\n")),
                VerifyOutcome::Error { message } => out.push_str(&format!("  error: {message}\n")),
            },
            Entry::Idempotent(i) => match i {
                IdempotentOutcome::Certified { b, freedom, residuals, .. } => {
                    out.push_str(&format!("  separable; certificate b = [{}]\n", b.join(", ")));
                    out.push_str(&format!("  solution family dimension: {freedom}\n"));
                    for res in residuals {
                        out.push_str(&format!("  {:?}: {} checked, {} failed\n", res.family, res.checked, res.failed));
                    }
                }
                IdempotentOutcome::NotSeparable { h1_kernel_dimension, witness } => {
                    out.push_str(&format!("  NOT SEPARABLE; dim H1(A, ker mu) = {h1_kernel_dimension}\n"));
                    if let Some(w) = witness {
                        out.push_str(&format!("  outer derivation: [{}]\n", w.join(", ")));
                    }
                }
                IdempotentOutcome::Error { message } => out.push_str(&format!("  error: {message}\n")),
            },
            Entry::Cohomology(c) => match c {
                CohomologyOutcome::Computed { groups } => {
                    for g in groups {
                        out.push_str(&format!(
                            "  H{}(A, {:?}) [module dim {}]: dim Z = {}, dim B = {}, dim H = {}\n",
                            g.degree, g.module, g.module_dimension, g.dim_z, g.dim_b, g.dim_h
                        ));
                    }
                }
                CohomologyOutcome::Error { message } => out.push_str(&format!("  error: {message}\n")),
            },
            Entry::Decompose(d) => match d {
                DecomposeOutcome::Split { radical, index, complement, stages, cross_checked } => {
                    out.push_str(&format!(
                        "  dim J = {}, nilpotency index {index}, stages {stages}, cross-checked: {cross_checked}\n",
                        radical.len()
                    ));
                    write_vectors(&mut out, "radical", radical);
                    write_vectors(&mut out, "complement", complement);
                }
                DecomposeOutcome::Obstructed { level, .. } => {
                    out.push_str(&format!("  OBSTRUCTED at level {level}\n"))
                }
                DecomposeOutcome::Error { message } => out.push_str(&format!("  error: {message}\n")),
            },
            Entry::Conjugate(c) => match c {
                ConjugateOutcome::Conjugated { v, right_inverse, left_inverse, .. } => {
                    out.push_str(&format!("  v = [{}]\n", v.join(", ")));
                    out.push_str(&format!("  right inverse of 1 - v = [{}]\n", right_inverse.join(", ")));
                    out.push_str(&format!("  left inverse of 1 - v = [{}]\n", left_inverse.join(", ")));
                }
                ConjugateOutcome::NotInner { .. } => out.push_str("  NOT INNER: complements are not conjugate\n"),
                ConjugateOutcome::Error { message } => out.push_str(&format!("  error: {message}\n")),
            },
        }
    }
    out.push_str(&format!("\nresults digest: {}\n", report.results_digest));
    out.push_str(&format!("time: {:.1} ms\n", report.timing.total_ms));
    out
}
