//! Component schema shared by every other module.
//!
//! A quantum component is described by the tuple `(Q_in, Q_out, Q_anc, U, P)`:
//! its input and output qubit registers, the ancillas it needs, the kind of
//! transformation it applies and the parameters that shape it. The types here
//! are plain immutable values.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// The seven functional responsibilities a primitive can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunctionalCategory {
    StatePreparation,
    EntanglementGeneration,
    OracleConstruction,
    AmplitudeAmplification,
    BasisTransformation,
    PhaseEstimation,
    VariationalAnsatz,
}

impl FunctionalCategory {
    pub const ALL: [FunctionalCategory; 7] = [
        FunctionalCategory::StatePreparation,
        FunctionalCategory::EntanglementGeneration,
        FunctionalCategory::OracleConstruction,
        FunctionalCategory::AmplitudeAmplification,
        FunctionalCategory::BasisTransformation,
        FunctionalCategory::PhaseEstimation,
        FunctionalCategory::VariationalAnsatz,
    ];

    pub fn label(self) -> &'static str {
        match self {
            FunctionalCategory::StatePreparation => "State Preparation",
            FunctionalCategory::EntanglementGeneration => "Entanglement Generation",
            FunctionalCategory::OracleConstruction => "Oracle Construction",
            FunctionalCategory::AmplitudeAmplification => "Amplitude Amplification",
            FunctionalCategory::BasisTransformation => "Basis Transformation",
            FunctionalCategory::PhaseEstimation => "Phase Estimation",
            FunctionalCategory::VariationalAnsatz => "Variational Ansatz",
        }
    }

    pub fn abbreviation(self) -> &'static str {
        match self {
            FunctionalCategory::StatePreparation => "SP",
            FunctionalCategory::EntanglementGeneration => "EG",
            FunctionalCategory::OracleConstruction => "OC",
            FunctionalCategory::AmplitudeAmplification => "AA",
            FunctionalCategory::BasisTransformation => "BT",
            FunctionalCategory::PhaseEstimation => "PE",
            FunctionalCategory::VariationalAnsatz => "VA",
        }
    }
}

impl fmt::Display for FunctionalCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Catalog grouping: one of the seven categories, or the auxiliary block of
/// single gates, measurement and ancilla bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    Functional(FunctionalCategory),
    Auxiliary,
}

impl Category {
    pub fn functional(self) -> Option<FunctionalCategory> {
        match self {
            Category::Functional(c) => Some(c),
            Category::Auxiliary => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Category::Functional(c) => c.label(),
            Category::Auxiliary => "Auxiliary Operations",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// How frequently a primitive shows up in an algorithm family.
///
/// Ordered so that `Essential > FrequentlyUsed > SometimesUsed > NotUsed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UsageLevel {
    NotUsed,
    SometimesUsed,
    FrequentlyUsed,
    Essential,
}

impl UsageLevel {
    pub fn code(self) -> &'static str {
        match self {
            UsageLevel::Essential => "ES",
            UsageLevel::FrequentlyUsed => "FU",
            UsageLevel::SometimesUsed => "SU",
            UsageLevel::NotUsed => "NU",
        }
    }
}

impl fmt::Display for UsageLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for UsageLevel {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "ES" => Ok(UsageLevel::Essential),
            "FU" => Ok(UsageLevel::FrequentlyUsed),
            "SU" => Ok(UsageLevel::SometimesUsed),
            "NU" => Ok(UsageLevel::NotUsed),
            _ => Err(ModelError::UnknownName(s.to_string())),
        }
    }
}

/// The five algorithm families of the usage heatmap, in column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Grover,
    Shor,
    Vqe,
    Qaoa,
    Simulation,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [Algorithm::Grover, Algorithm::Shor, Algorithm::Vqe, Algorithm::Qaoa, Algorithm::Simulation];

    pub fn column(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Algorithm::Grover => "Grover",
            Algorithm::Shor => "Shor",
            Algorithm::Vqe => "VQE",
            Algorithm::Qaoa => "QAOA",
            Algorithm::Simulation => "Sim",
        }
    }

    /// The application family an algorithm column belongs to.
    pub fn scope(self) -> ScopeFamily {
        match self {
            Algorithm::Grover => ScopeFamily::Search,
            Algorithm::Shor => ScopeFamily::Periodicity,
            Algorithm::Vqe | Algorithm::Qaoa => ScopeFamily::Variational,
            Algorithm::Simulation => ScopeFamily::Simulation,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Algorithm {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "grover" => Ok(Algorithm::Grover),
            "shor" => Ok(Algorithm::Shor),
            "vqe" => Ok(Algorithm::Vqe),
            "qaoa" => Ok(Algorithm::Qaoa),
            "sim" | "simulation" => Ok(Algorithm::Simulation),
            _ => Err(ModelError::UnknownName(s.to_string())),
        }
    }
}

/// Degree of parameterization of a single parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParameterKind {
    Fixed,
    Structural,
    Variational,
    ProblemDependent,
}

impl ParameterKind {
    pub fn label(self) -> &'static str {
        match self {
            ParameterKind::Fixed => "fixed",
            ParameterKind::Structural => "structural",
            ParameterKind::Variational => "variational",
            ParameterKind::ProblemDependent => "problem_dependent",
        }
    }
}

impl fmt::Display for ParameterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// What a parameter value ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueDomain {
    Angle,
    QubitCount,
    Graph,
    MarkedStates,
    RealCoefficient,
    Integer,
    Label,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Parameter {
    pub name: String,
    pub kind: ParameterKind,
    pub domain: ValueDomain,
}

impl Parameter {
    pub fn new(name: impl Into<String>, kind: ParameterKind, domain: ValueDomain) -> Self {
        Parameter { name: name.into(), kind, domain }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AncillaPolicy {
    None,
    Optional,
    Required,
}

impl AncillaPolicy {
    pub fn label(self) -> &'static str {
        match self {
            AncillaPolicy::None => "none",
            AncillaPolicy::Optional => "optional",
            AncillaPolicy::Required => "required",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitaryKind {
    Fixed,
    Reflection,
    Fourier,
    Controlled,
    Parameterized,
    ProblemDependent,
    Measurement,
}

impl UnitaryKind {
    pub fn label(self) -> &'static str {
        match self {
            UnitaryKind::Fixed => "fixed",
            UnitaryKind::Reflection => "reflection",
            UnitaryKind::Fourier => "fourier",
            UnitaryKind::Controlled => "controlled",
            UnitaryKind::Parameterized => "parameterized",
            UnitaryKind::ProblemDependent => "problem_dependent",
            UnitaryKind::Measurement => "measurement",
        }
    }
}

/// A qubit register on one side of a module, with free-form role tags
/// (`control`, `target`, `problem`, `phase-register`, ...).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QubitRegister {
    pub count: usize,
    pub roles: Vec<String>,
}

impl QubitRegister {
    pub fn new(count: usize) -> Self {
        QubitRegister { count, roles: Vec::new() }
    }

    pub fn with_role(mut self, role: impl Into<String>) -> Self {
        self.roles.push(role.into());
        self
    }
}

impl From<usize> for QubitRegister {
    fn from(count: usize) -> Self {
        QubitRegister::new(count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AncillaSpec {
    pub count: usize,
    pub policy: AncillaPolicy,
}

impl AncillaSpec {
    pub const NONE: AncillaSpec = AncillaSpec { count: 0, policy: AncillaPolicy::None };

    pub fn new(count: usize, policy: AncillaPolicy) -> Self {
        AncillaSpec { count, policy }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unitary module must preserve register width: {q_in} input qubits but {q_out} output qubits")]
    WidthMismatch { q_in: usize, q_out: usize },
    #[error("ancilla policy `none` does not allow {count} ancilla qubits")]
    AncillaPolicyViolation { count: usize },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("unitary modules are reversible; profile marks unitary but not reversible")]
    UnitaryNotReversible,
}

/// Validated module interface. Build with [`make_module_interface`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleInterface {
    q_in: QubitRegister,
    q_out: QubitRegister,
    q_anc: AncillaSpec,
    unitary_kind: UnitaryKind,
    params: Vec<Parameter>,
    classical_out: usize,
}

pub fn make_module_interface(
    q_in: impl Into<QubitRegister>,
    q_out: impl Into<QubitRegister>,
    q_anc: AncillaSpec,
    unitary_kind: UnitaryKind,
    params: Vec<Parameter>,
) -> Result<ModuleInterface, ModelError> {
    let q_in = q_in.into();
    let q_out = q_out.into();
    if unitary_kind != UnitaryKind::Measurement && q_in.count != q_out.count {
        return Err(ModelError::WidthMismatch { q_in: q_in.count, q_out: q_out.count });
    }
    if q_anc.policy == AncillaPolicy::None && q_anc.count > 0 {
        return Err(ModelError::AncillaPolicyViolation { count: q_anc.count });
    }
    Ok(ModuleInterface { q_in, q_out, q_anc, unitary_kind, params, classical_out: 0 })
}

impl ModuleInterface {
    pub fn q_in(&self) -> &QubitRegister {
        &self.q_in
    }

    pub fn q_out(&self) -> &QubitRegister {
        &self.q_out
    }

    pub fn q_anc(&self) -> AncillaSpec {
        self.q_anc
    }

    pub fn unitary_kind(&self) -> UnitaryKind {
        self.unitary_kind
    }

    pub fn params(&self) -> &[Parameter] {
        &self.params
    }

    /// Classical output bits. Kept apart from the qubit registers so that no-cloning
    /// checks only ever look at quantum ports.
    pub fn classical_out(&self) -> usize {
        self.classical_out
    }

    pub fn with_classical_out(mut self, bits: usize) -> Self {
        self.classical_out = bits;
        self
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary_kind != UnitaryKind::Measurement
    }

    /// Most permissive kind among the parameters, `Fixed` when there are none.
    pub fn dominant_parameter_kind(&self) -> ParameterKind {
        dominant_kind(self.params.iter().map(|p| p.kind))
    }
}

pub(crate) fn dominant_kind(kinds: impl Iterator<Item = ParameterKind>) -> ParameterKind {
    let mut seen = [false; 4];
    for k in kinds {
        seen[k as usize] = true;
    }
    if seen[ParameterKind::Variational as usize] {
        ParameterKind::Variational
    } else if seen[ParameterKind::ProblemDependent as usize] {
        ParameterKind::ProblemDependent
    } else if seen[ParameterKind::Structural as usize] {
        ParameterKind::Structural
    } else {
        ParameterKind::Fixed
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InformationFlow {
    Local,
    Global,
    Hierarchical,
    FeedForward,
    QuantumClassicalLoop,
}

impl InformationFlow {
    pub fn label(self) -> &'static str {
        match self {
            InformationFlow::Local => "local",
            InformationFlow::Global => "global",
            InformationFlow::Hierarchical => "hierarchical",
            InformationFlow::FeedForward => "feed_forward",
            InformationFlow::QuantumClassicalLoop => "quantum_classical_loop",
        }
    }
}

/// Per-category interface template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryTemplate {
    pub category: FunctionalCategory,
    pub input: &'static str,
    pub output: &'static str,
    pub ancilla: AncillaPolicy,
    pub unitary_kind: UnitaryKind,
    pub parameter_kind: ParameterKind,
    pub flow_description: &'static str,
    pub flow: InformationFlow,
}

pub fn category_template(category: FunctionalCategory) -> CategoryTemplate {
    use FunctionalCategory::*;
    let (input, output, ancilla, unitary_kind, parameter_kind, flow_description, flow) = match category {
        StatePreparation => (
            "null or basis state",
            "prepared quantum state",
            AncillaPolicy::Optional,
            UnitaryKind::Fixed,
            ParameterKind::Structural,
            "local -> global",
            InformationFlow::Local,
        ),
        EntanglementGeneration => (
            "independent qubits",
            "correlated qubits",
            AncillaPolicy::Optional,
            UnitaryKind::Fixed,
            ParameterKind::Structural,
            "global",
            InformationFlow::Global,
        ),
        OracleConstruction => (
            "problem register",
            "marked states",
            AncillaPolicy::Required,
            UnitaryKind::ProblemDependent,
            ParameterKind::ProblemDependent,
            "encoded in problem",
            InformationFlow::Local,
        ),
        AmplitudeAmplification => (
            "superposed state",
            "amplitude-reshaped state",
            AncillaPolicy::Optional,
            UnitaryKind::Reflection,
            ParameterKind::Structural,
            "global interference",
            InformationFlow::Global,
        ),
        BasisTransformation => (
            "computational basis state",
            "phase/frequency basis state",
            AncillaPolicy::None,
            UnitaryKind::Fourier,
            ParameterKind::Fixed,
            "global spectral transformation",
            InformationFlow::Global,
        ),
        PhaseEstimation => (
            "eigenstate and control register",
            "measured phase register",
            AncillaPolicy::Required,
            UnitaryKind::Controlled,
            ParameterKind::Fixed,
            "control -> target",
            InformationFlow::FeedForward,
        ),
        VariationalAnsatz => (
            "parameterized quantum state",
            "parameterized quantum state",
            AncillaPolicy::Optional,
            UnitaryKind::Parameterized,
            ParameterKind::Variational,
            "quantum-classical loop",
            InformationFlow::QuantumClassicalLoop,
        ),
    };
    CategoryTemplate { category, input, output, ancilla, unitary_kind, parameter_kind, flow_description, flow }
}

/// Position in the five-level composition hierarchy, from atomic gates (1)
/// to complete algorithms with classical control (5).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbstractionLevel(u8);

impl AbstractionLevel {
    pub const ATOMIC_GATE: AbstractionLevel = AbstractionLevel(1);
    pub const ELEMENTARY: AbstractionLevel = AbstractionLevel(2);
    pub const COMPOSITE: AbstractionLevel = AbstractionLevel(3);
    pub const BLOCK: AbstractionLevel = AbstractionLevel(4);
    pub const ALGORITHM: AbstractionLevel = AbstractionLevel(5);

    pub fn new(level: u8) -> Option<Self> {
        (1..=5).contains(&level).then_some(AbstractionLevel(level))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn granularity(self) -> Granularity {
        match self.0 {
            1 | 2 => Granularity::Atomic,
            3 => Granularity::Composite,
            4 => Granularity::Block,
            _ => Granularity::Algorithm,
        }
    }
}

impl fmt::Display for AbstractionLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Granularity {
    Atomic,
    Composite,
    Block,
    Algorithm,
}

impl Granularity {
    pub fn label(self) -> &'static str {
        match self {
            Granularity::Atomic => "atomic",
            Granularity::Composite => "composite",
            Granularity::Block => "block",
            Granularity::Algorithm => "algorithm",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScopeFamily {
    Universal,
    Search,
    Periodicity,
    Variational,
    Simulation,
}

impl ScopeFamily {
    pub fn label(self) -> &'static str {
        match self {
            ScopeFamily::Universal => "universal",
            ScopeFamily::Search => "search",
            ScopeFamily::Periodicity => "periodicity",
            ScopeFamily::Variational => "variational",
            ScopeFamily::Simulation => "simulation",
        }
    }
}

impl FromStr for ScopeFamily {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "universal" => Ok(ScopeFamily::Universal),
            "search" => Ok(ScopeFamily::Search),
            "periodicity" => Ok(ScopeFamily::Periodicity),
            "variational" => Ok(ScopeFamily::Variational),
            "simulation" => Ok(ScopeFamily::Simulation),
            other => Err(ModelError::UnknownName(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReusePattern {
    Direct,
    Parametric,
    Contextual,
    Hierarchical,
}

impl ReusePattern {
    pub fn label(self) -> &'static str {
        match self {
            ReusePattern::Direct => "direct",
            ReusePattern::Parametric => "parametric",
            ReusePattern::Contextual => "contextual",
            ReusePattern::Hierarchical => "hierarchical",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HardwareBinding {
    Agnostic,
    TechnologySpecific,
}

impl HardwareBinding {
    pub fn label(self) -> &'static str {
        match self {
            HardwareBinding::Agnostic => "agnostic",
            HardwareBinding::TechnologySpecific => "technology_specific",
        }
    }
}

/// Gate-level cost of a concrete circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityMetrics {
    pub gate_count: usize,
    pub two_qubit_count: usize,
    pub depth: usize,
    pub qubit_count: usize,
    pub ancilla_count: usize,
    pub classical_preprocessing: String,
}

/// The nine nonfunctional dimensions of a component or circuit.
///
/// `complexity` and `nisq_suitable` are `None` only for descriptor-level
/// profiles of primitives that have no circuit lowering.
#[derive(Debug, Clone, PartialEq)]
pub struct NfrProfile {
    pub granularity: Granularity,
    pub parameterization: ParameterKind,
    pub algorithm_scope: Vec<ScopeFamily>,
    pub complexity: Option<ComplexityMetrics>,
    pub reversible: bool,
    pub unitary: bool,
    pub information_flow: InformationFlow,
    pub nisq_suitable: Option<bool>,
    /// Error-sensitivity score `depth * (1 + two_qubit_count)` behind `nisq_suitable`.
    pub error_sensitivity: Option<f64>,
    pub reuse_pattern: ReusePattern,
    pub hardware_binding: HardwareBinding,
}

impl NfrProfile {
    pub fn check(&self) -> Result<(), ModelError> {
        if self.unitary && !self.reversible {
            return Err(ModelError::UnitaryNotReversible);
        }
        Ok(())
    }

    pub fn is_complete(&self) -> bool {
        self.complexity.is_some() && self.nisq_suitable.is_some()
    }
}

/// The nine dimensions, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    Granularity,
    Parameterization,
    AlgorithmScope,
    Complexity,
    Reversibility,
    InformationFlow,
    ErrorSensitivity,
    ReusePattern,
    HardwareBinding,
}

impl Dimension {
    pub const ALL: [Dimension; 9] = [
        Dimension::Granularity,
        Dimension::Parameterization,
        Dimension::AlgorithmScope,
        Dimension::Complexity,
        Dimension::Reversibility,
        Dimension::InformationFlow,
        Dimension::ErrorSensitivity,
        Dimension::ReusePattern,
        Dimension::HardwareBinding,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Dimension::Granularity => "granularity",
            Dimension::Parameterization => "parameterization",
            Dimension::AlgorithmScope => "algorithm_scope",
            Dimension::Complexity => "complexity",
            Dimension::Reversibility => "reversibility",
            Dimension::InformationFlow => "information_flow",
            Dimension::ErrorSensitivity => "error_sensitivity",
            Dimension::ReusePattern => "reuse_pattern",
            Dimension::HardwareBinding => "hardware_binding",
        }
    }
}
