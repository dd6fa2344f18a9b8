use serde::Serialize;

use cokahler::contact::StructureVerdict;

/// One verified statement. `asserted` checks decide the exit status;
/// the others are reported for information.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: &'static str,
    pub invariant: &'static str,
    pub holds: bool,
    pub asserted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn passes(&self) -> bool {
        self.holds || !self.asserted
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BettiSection {
    pub full: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_eta: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_one: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basic: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentitySection {
    pub d_squared: bool,
    pub cartan: bool,
    pub iota_squared: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_d_eta: Option<bool>,
    pub leibniz: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DEtaSection {
    pub equals_lie_derivative: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_difference: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InducedRecord {
    pub degree: usize,
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub kernel: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerbitskySection {
    pub eta_parallel: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parallel_witness: Option<String>,
    pub status: &'static str,
    pub kernel_betti: Vec<usize>,
    pub full_betti: Vec<usize>,
    pub degrees: Vec<InducedRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingSection {
    pub omega_eta_dims: Vec<usize>,
    pub omega_one_dims: Vec<usize>,
    pub omega_two_dims: Vec<usize>,
    pub omega_one_is_basic: bool,
    pub betti_eta: Vec<usize>,
    pub betti_one: Vec<usize>,
    pub dims_add: bool,
    pub class_map_iso: Vec<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzRecord {
    pub degree: usize,
    pub rank: usize,
    pub iso: bool,
    pub matrix: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub kernel: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzSection {
    pub n: usize,
    pub degrees: Vec<LefschetzRecord>,
    pub volume_class_nonzero: bool,
    pub components_ok: bool,
    pub preserves_closed_and_exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleRecord {
    pub classes: [String; 3],
    pub value: String,
    pub value_class: Vec<String>,
    pub indeterminacy_dim: usize,
    pub vanishes: bool,
    /// Whether reversing the pivot order gives the same verdict.
    pub pivot_invariant: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MasseySection {
    pub h1: usize,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tested: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub triples: Vec<TripleRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorRecord {
    pub name: String,
    pub degree: usize,
    pub d: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorSplitSection {
    pub omega_eta_generators: Vec<usize>,
    pub omega_one_generators: Vec<usize>,
    pub counts_match: bool,
    pub omega_eta_betti: Vec<usize>,
    pub tensor_betti: Vec<usize>,
    pub betti_match: bool,
    pub both_minimal: bool,
    pub cochain_iso: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalSection {
    pub max_degree: usize,
    pub generator_counts: Vec<usize>,
    pub generators: Vec<GeneratorRecord>,
    pub minimal: bool,
    pub betti: Vec<usize>,
    pub quasi_isomorphic_through_cap: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tensor_split: Option<TensorSplitSection>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MappingTorusSection {
    pub order: u32,
    pub matrix: Vec<Vec<String>>,
    pub fibre_betti: Vec<usize>,
    pub invariant_dims: Vec<usize>,
    pub invariant_betti: Vec<usize>,
    pub betti: Vec<usize>,
    pub kunneth: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kahler_isometry: Option<bool>,
    pub massey: &'static str,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ModelReport {
    pub name: String,
    pub dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<StructureVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<BettiSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identities: Option<IdentitySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_eta: Option<DEtaSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verbitsky: Option<VerbitskySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splitting: Option<SplittingSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lefschetz: Option<LefschetzSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub massey: Option<MasseySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_model: Option<MinimalSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mapping_torus: Option<MappingTorusSection>,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ModelReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(CheckRecord::passes)
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub models: Vec<ModelReport>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, mut models: Vec<ModelReport>) -> Self {
        models.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = models.iter().all(ModelReport::passes);
        Self { command: command.into(), models, passed }
    }

    pub fn model(&self, name: &str) -> Option<&ModelReport> {
        self.models.iter().find(|m| m.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report is serializable");
        out.push('\n');
        out
    }
}
