use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::WorkbenchError;
use crate::algebra::{build_metagroup_algebra, Algebra, PsiEmbedding};
use crate::linalg::{Field, FieldElement};
use crate::metagroup::{
    cayley_dickson_tower, cyclic_group_table, direct_product_table, verify_metagroup,
    DoublingSigns, MetagroupError, MetagroupTable,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Analysis {
    Verify,
    Idempotent,
    Cohomology,
    Decompose,
    Conjugate,
}

impl Analysis {
    pub const ALL: [Analysis; 5] = [
        Analysis::Verify,
        Analysis::Idempotent,
        Analysis::Cohomology,
        Analysis::Decompose,
        Analysis::Conjugate,
    ];
}

/// Coefficient modules for the cohomology analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    /// `A` over itself.
    Regular,
    /// `A^e` with the twisted outer actions.
    Enveloping,
    /// `ker μ ⊂ A^e`.
    Kernel,
}

impl std::str::FromStr for ModuleKind {
    type Err = WorkbenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "regular" => Ok(ModuleKind::Regular),
            "enveloping" => Ok(ModuleKind::Enveloping),
            "kernel" => Ok(ModuleKind::Kernel),
            other => Err(WorkbenchError::Validation(format!(
                "unknown module `{other}`"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Doubling {
    pub levels: usize,
    #[serde(default)]
    pub signs: [bool; 3],
}

/// The `[metagroup]` table. Exactly one of an inline table, `file`,
/// `cayley_dickson` or `cyclic` must be given.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetagroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cayley_dickson: Option<Doubling>,
    /// Orders of cyclic factors of an abelian group, e.g. `[2, 2]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<Vec<usize>>,
}

/// Raw structure constants: `products` lists `[i, j, k, c]` meaning the
/// coefficient of `b_k` in `b_i b_j` is `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureSpec {
    pub labels: Vec<String>,
    pub unit: Vec<String>,
    pub products: Vec<(usize, usize, usize, String)>,
}

/// Explicit complements for the conjugacy analysis, as spanning vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjugateSpec {
    pub b: Vec<Vec<String>>,
    pub c: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkbenchInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: String,
    pub analyses: Vec<Analysis>,
    #[serde(default = "default_modules")]
    pub modules: Vec<ModuleKind>,
    #[serde(default = "default_degrees")]
    pub degrees: Vec<usize>,
    /// Pairs `[ψ, value]` fixing the scalar image of elements of `Ψ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Vec<(usize, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metagroup: Option<MetagroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<StructureSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugate: Option<ConjugateSpec>,
}

fn default_modules() -> Vec<ModuleKind> {
    vec![
        ModuleKind::Regular,
        ModuleKind::Enveloping,
        ModuleKind::Kernel,
    ]
}

fn default_degrees() -> Vec<usize> {
    vec![1, 2]
}

/// A metagroup file: the inline fields of `[metagroup]` at top level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetagroupFile {
    #[serde(default)]
    pub n: Option<usize>,
    pub unit: usize,
    pub psi: Vec<usize>,
    pub product: Vec<Vec<usize>>,
    #[serde(default)]
    pub names: Option<Vec<String>>,
}

/// The resolved algebra source, as carried by reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AlgebraData {
    Metagroup {
        unit: usize,
        psi: Vec<usize>,
        product: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        embedding: Option<Vec<(usize, String)>>,
    },
    Structure(StructureSpec),
}

pub fn parse_field(text: &str) -> Result<Field, WorkbenchError> {
    text.parse::<Field>()
        .map_err(|e| WorkbenchError::Validation(format!("field `{text}`: {e}")))
}

pub fn parse_scalar(field: Field, text: &str) -> Result<FieldElement, WorkbenchError> {
    field
        .parse(text)
        .map_err(|e| WorkbenchError::Validation(e.to_string()))
}

pub fn parse_vector(
    field: Field,
    dim: usize,
    texts: &[String],
) -> Result<Vec<FieldElement>, WorkbenchError> {
    if texts.len() != dim {
        return Err(WorkbenchError::Validation(format!(
            "vector of length {} in dimension {dim}",
            texts.len()
        )));
    }
    texts.iter().map(|t| parse_scalar(field, t)).collect()
}

pub fn format_vector(v: &[FieldElement]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

/// Parses a TOML document; errors carry the line and column of the problem.
pub fn parse_input(document: &str) -> Result<WorkbenchInput, WorkbenchError> {
    let input: WorkbenchInput =
        toml::from_str(document).map_err(|e| WorkbenchError::Parse(e.to_string()))?;
    input.validate()?;
    Ok(input)
}

impl WorkbenchInput {
    pub fn validate(&self) -> Result<(), WorkbenchError> {
        parse_field(&self.field)?;
        if self.analyses.is_empty() {
            return Err(WorkbenchError::Validation(
                "analyses: at least one analysis is required".into(),
            ));
        }
        if self.degrees.iter().any(|d| !(1..=2).contains(d)) {
            return Err(WorkbenchError::Validation(
                "degrees: only 1 and 2 are supported".into(),
            ));
        }
        match (&self.metagroup, &self.algebra) {
            (Some(m), None) => m.validate(),
            (None, Some(_)) => {
                if self.embedding.is_some() {
                    return Err(WorkbenchError::Validation(
                        "embedding: only meaningful with [metagroup]".into(),
                    ));
                }
                Ok(())
            }
            (Some(_), Some(_)) => Err(WorkbenchError::Validation(
                "give either [metagroup] or [algebra], not both".into(),
            )),
            (None, None) => Err(WorkbenchError::Validation(
                "missing algebra source: [metagroup] or [algebra]".into(),
            )),
        }
    }

    pub fn field(&self) -> Result<Field, WorkbenchError> {
        parse_field(&self.field)
    }

    /// Resolves file references and recipes into explicit data. `base` is the
    /// directory against which `file` paths are resolved.
    pub fn resolve(&self, base: Option<&Path>) -> Result<AlgebraData, WorkbenchError> {
        if let Some(s) = &self.algebra {
            return Ok(AlgebraData::Structure(s.clone()));
        }
        let spec = self.metagroup.as_ref().expect("validated");
        let (unit, psi, product, names) = if let Some(path) = &spec.file {
            let path = match base {
                Some(b) if path.is_relative() => b.join(path),
                _ => path.clone(),
            };
            let text = std::fs::read_to_string(&path)
                .map_err(|e| WorkbenchError::Parse(format!("{}: {e}", path.display())))?;
            let file: MetagroupFile = toml::from_str(&text)
                .map_err(|e| WorkbenchError::Parse(format!("{}: {e}", path.display())))?;
            check_order(file.n, &file.product)?;
            (file.unit, file.psi, file.product, file.names)
        } else if let Some(d) = &spec.cayley_dickson {
            let m = cayley_dickson_tower(d.levels, DoublingSigns::from_flags(d.signs))
                .map_err(|e| WorkbenchError::Validation(format!("cayley_dickson: {e}")))?;
            (
                m.unit(),
                m.psi().to_vec(),
                m.product_rows(),
                m.names().map(|n| n.to_vec()),
            )
        } else if let Some(orders) = &spec.cyclic {
            let mut table = cyclic_group_table(1);
            for &k in orders {
                table = direct_product_table(&table, &cyclic_group_table(k));
            }
            (0, vec![0], table, None)
        } else {
            check_order(spec.n, spec.product.as_ref().expect("validated"))?;
            (
                spec.unit.expect("validated"),
                spec.psi.clone().expect("validated"),
                spec.product.clone().expect("validated"),
                spec.names.clone(),
            )
        };
        Ok(AlgebraData::Metagroup {
            unit,
            psi,
            product,
            names,
            embedding: self.embedding.clone(),
        })
    }
}

fn check_order(n: Option<usize>, product: &[Vec<usize>]) -> Result<(), WorkbenchError> {
    match n {
        Some(n) if n != product.len() => Err(WorkbenchError::Validation(format!(
            "metagroup: n = {n} but product has {} rows",
            product.len()
        ))),
        _ => Ok(()),
    }
}

impl MetagroupSpec {
    fn validate(&self) -> Result<(), WorkbenchError> {
        let inline = self.product.is_some();
        let sources = [
            inline,
            self.file.is_some(),
            self.cayley_dickson.is_some(),
            self.cyclic.is_some(),
        ];
        if sources.iter().filter(|s| **s).count() != 1 {
            return Err(WorkbenchError::Validation(
                "metagroup: give exactly one of product, file, cayley_dickson, cyclic".into(),
            ));
        }
        let inline_fields =
            self.unit.is_some() || self.psi.is_some() || self.names.is_some() || self.n.is_some();
        if inline && (self.unit.is_none() || self.psi.is_none()) {
            return Err(WorkbenchError::Validation(
                "metagroup: inline tables need unit and psi".into(),
            ));
        }
        if !inline && inline_fields {
            return Err(WorkbenchError::Validation(
                "metagroup: n, unit, psi, names belong to inline tables".into(),
            ));
        }
        if let Some(orders) = &self.cyclic {
            if orders.is_empty() || orders.contains(&0) {
                return Err(WorkbenchError::Validation(
                    "metagroup.cyclic: orders must be positive".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Why an algebra could not be built from its data.
#[derive(Debug)]
pub enum BuildFailure {
    Axiom(MetagroupError),
    Other(WorkbenchError),
}

impl AlgebraData {
    pub fn metagroup(&self) -> Option<Result<MetagroupTable, MetagroupError>> {
        match self {
            AlgebraData::Metagroup {
                unit,
                psi,
                product,
                names,
                ..
            } => {
                let m = verify_metagroup(product, *unit, psi);
                Some(match (m, names) {
                    (Ok(m), Some(n)) => m.with_names(n.clone()),
                    (m, _) => m,
                })
            }
            AlgebraData::Structure(_) => None,
        }
    }

    pub fn build(&self, field: Field) -> Result<Algebra, BuildFailure> {
        let other = |e: String| BuildFailure::Other(WorkbenchError::Validation(e));
        match self {
            AlgebraData::Metagroup { embedding, .. } => {
                let m = Arc::new(
                    self.metagroup()
                        .expect("metagroup data")
                        .map_err(BuildFailure::Axiom)?,
                );
                let emb = match embedding {
                    Some(pairs) => {
                        let parsed = pairs
                            .iter()
                            .map(|(g, v)| parse_scalar(field, v).map(|v| (*g, v)))
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(BuildFailure::Other)?;
                        PsiEmbedding::new(&m, field, &parsed)
                    }
                    None => PsiEmbedding::standard(&m, field),
                }
                .map_err(|e| other(format!("embedding: {e}")))?;
                build_metagroup_algebra(m, field, emb).map_err(|e| other(e.to_string()))
            }
            AlgebraData::Structure(s) => {
                let n = s.labels.len();
                let unit = parse_vector(field, n, &s.unit).map_err(BuildFailure::Other)?;
                let mut dense = vec![vec![field.zero(); n]; n * n];
                for (i, j, k, c) in &s.products {
                    if *i >= n || *j >= n || *k >= n {
                        return Err(other(format!(
                            "algebra.products: index out of range in [{i}, {j}, {k}]"
                        )));
                    }
                    let c = parse_scalar(field, c).map_err(BuildFailure::Other)?;
                    dense[i * n + j][*k] += &c;
                }
                let table = dense
                    .iter()
                    .map(|v| crate::linalg::sparse::from_dense(v))
                    .collect();
                Algebra::from_structure(field, s.labels.clone(), table, unit)
                    .map_err(|e| other(e.to_string()))
            }
        }
    }
}

/// Structure constants of an algebra in the `[algebra]` grammar.
pub fn structure_spec(a: &Algebra) -> StructureSpec {
    let n = a.dim();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in a.product_of_basis(i, j) {
                products.push((i, j, *k, c.to_string()));
            }
        }
    }
    StructureSpec {
        labels: a.labels().to_vec(),
        unit: format_vector(a.unit()),
        products,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z2: &str = r#"
field = "q"
analyses = ["idempotent"]

[metagroup]
unit = 0
psi = [0]
product = [[0, 1], [1, 0]]
"#;

    #[test]
    fn minimal_document_parses() {
        let input = parse_input(Z2).unwrap();
        assert_eq!(input.analyses, vec![Analysis::Idempotent]);
        assert_eq!(input.modules, default_modules());
        let a = input
            .resolve(None)
            .unwrap()
            .build(Field::Rational)
            .ok()
            .unwrap();
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn composite_modulus_is_rejected() {
        let doc = Z2.replace("\"q\"", "\"gf:4\"");
        assert!(matches!(
            parse_input(&doc),
            Err(WorkbenchError::Validation(_))
        ));
    }

    #[test]
    fn empty_analysis_list_is_rejected() {
        let doc = Z2.replace("[\"idempotent\"]", "[]");
        assert!(matches!(
            parse_input(&doc),
            Err(WorkbenchError::Validation(_))
        ));
    }

    #[test]
    fn syntax_errors_report_a_line() {
        let err = parse_input("field = \"q\"\nanalyses = [\"verify\"\n").unwrap_err();
        match err {
            WorkbenchError::Parse(msg) => assert!(msg.contains("line"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let doc = format!("{Z2}\nbogus = 1\n");
        assert!(parse_input(&doc).is_err());
    }

    #[test]
    fn doubling_recipe_builds_the_octonions() {
        let doc = "field = \"q\"\nanalyses = [\"verify\"]\n[metagroup]\ncayley_dickson = { levels = 3 }\n";
        let input = parse_input(doc).unwrap();
        let data = input.resolve(None).unwrap();
        assert_eq!(data.metagroup().unwrap().unwrap().len(), 16);
        assert_eq!(data.build(Field::Rational).ok().unwrap().dim(), 8);
    }

    #[test]
    fn structure_spec_round_trips() {
        let a = crate::constructions::square_zero_extension(Field::Rational)
            .unwrap()
            .algebra;
        let data = AlgebraData::Structure(structure_spec(&a));
        let b = data.build(Field::Rational).ok().unwrap();
        assert_eq!(structure_spec(&b), structure_spec(&a));
    }
}
