//! The 34-primitive catalog: descriptors, usage heatmap and lowerings.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::classify::{ClassificationAttributes, Criterion};
use crate::model::{
    category_template, make_module_interface, AbstractionLevel, Algorithm, AncillaPolicy, AncillaSpec, Category,
    FunctionalCategory, ModuleInterface, Parameter, ParameterKind, QubitRegister, UnitaryKind, UsageLevel, ValueDomain,
};

pub mod lowering;
mod params;

pub use lowering::{lower, lower_parametric, sized_params};
pub use params::{ParamValue, Params};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown primitive `{0}`")]
    UnknownPrimitive(String),
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("primitive #{id} `{name}` has no circuit lowering")]
    NotLowerable { id: u8, name: &'static str },
    #[error("primitive #{id} `{name}` has no variational parameters")]
    NotParametric { id: u8, name: &'static str },
    #[error("bad parameters: {0}")]
    BadParams(String),
}

/// Catalog row number, 1 through 34.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimitiveId(u8);

impl PrimitiveId {
    pub const COUNT: u8 = 34;

    pub fn new(id: u8) -> Result<Self, CatalogError> {
        if (1..=Self::COUNT).contains(&id) {
            Ok(PrimitiveId(id))
        } else {
            Err(CatalogError::UnknownPrimitive(id.to_string()))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = PrimitiveId> {
        (1..=Self::COUNT).map(PrimitiveId)
    }
}

impl fmt::Display for PrimitiveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Table-level circuit complexity class of a category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComplexityClass {
    pub label: &'static str,
    /// Growth laws the class admits.
    pub models: &'static [GrowthModel],
    /// Whether the class counts algorithm iterations rather than gates.
    pub counts_iterations: bool,
}

/// A growth law in a register size `n` (or in `N = 2^n` for `SqrtStates`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GrowthModel {
    Constant,
    Linear,
    NLogN,
    Quadratic,
    SqrtStates,
}

impl GrowthModel {
    pub fn label(self) -> &'static str {
        match self {
            GrowthModel::Constant => "O(1)",
            GrowthModel::Linear => "O(n)",
            GrowthModel::NLogN => "O(n log n)",
            GrowthModel::Quadratic => "O(n^2)",
            GrowthModel::SqrtStates => "O(sqrt(N))",
        }
    }

    /// Predicted `f(n2) / f(n1)`.
    pub fn ratio(self, n1: usize, n2: usize) -> f64 {
        let (a, b) = (n1 as f64, n2 as f64);
        match self {
            GrowthModel::Constant => 1.0,
            GrowthModel::Linear => b / a,
            GrowthModel::NLogN => (b * b.log2()) / (a * a.log2()),
            GrowthModel::Quadratic => (b / a).powi(2),
            GrowthModel::SqrtStates => 2f64.powf((b - a) / 2.0),
        }
    }
}

const SP_CLASS: ComplexityClass =
    ComplexityClass { label: "O(1) to O(n)", models: &[GrowthModel::Constant, GrowthModel::Linear], counts_iterations: false };
const EG_CLASS: ComplexityClass =
    ComplexityClass { label: "O(n) to O(n+|E|)", models: &[GrowthModel::Linear], counts_iterations: false };
const AA_CLASS: ComplexityClass =
    ComplexityClass { label: "O(sqrt(N)) iterations; O(n) gates", models: &[GrowthModel::SqrtStates], counts_iterations: true };
const BT_CLASS: ComplexityClass = ComplexityClass {
    label: "O(n^2), O(n log n)",
    models: &[GrowthModel::Quadratic, GrowthModel::NLogN],
    counts_iterations: false,
};
const OC_CLASS: ComplexityClass = ComplexityClass {
    label: "polynomial in input size",
    models: &[GrowthModel::Linear, GrowthModel::Quadratic],
    counts_iterations: false,
};
const PE_CLASS: ComplexityClass =
    ComplexityClass { label: "O(n^2)", models: &[GrowthModel::Quadratic], counts_iterations: false };
const VA_CLASS: ComplexityClass =
    ComplexityClass { label: "O(n) to O(n^2)", models: &[GrowthModel::Linear, GrowthModel::Quadratic], counts_iterations: false };
const AUX_CLASS: ComplexityClass =
    ComplexityClass { label: "O(1) per gate", models: &[GrowthModel::Constant, GrowthModel::Linear], counts_iterations: false };

pub fn complexity_class(category: Category) -> ComplexityClass {
    match category {
        Category::Functional(FunctionalCategory::StatePreparation) => SP_CLASS,
        Category::Functional(FunctionalCategory::EntanglementGeneration) => EG_CLASS,
        Category::Functional(FunctionalCategory::AmplitudeAmplification) => AA_CLASS,
        Category::Functional(FunctionalCategory::BasisTransformation) => BT_CLASS,
        Category::Functional(FunctionalCategory::OracleConstruction) => OC_CLASS,
        Category::Functional(FunctionalCategory::PhaseEstimation) => PE_CLASS,
        Category::Functional(FunctionalCategory::VariationalAnsatz) => VA_CLASS,
        Category::Auxiliary => AUX_CLASS,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrimitiveDescriptor {
    pub id: PrimitiveId,
    /// Row label exactly as it appears in the heatmap.
    pub name: &'static str,
    /// Identifier used in manifests.
    pub ident: &'static str,
    pub category: Category,
    /// Usage per algorithm column, indexed by [`Algorithm::column`].
    pub usage: [UsageLevel; 5],
    pub complexity_class: ComplexityClass,
    pub attributes: ClassificationAttributes,
    pub parameters: Vec<Parameter>,
    /// Admissible abstraction levels, inclusive.
    pub levels: (AbstractionLevel, AbstractionLevel),
    pub lowerable: bool,
    /// Whether an unwired quantum input is allowed (fresh |0...0> qubits).
    pub input_optional: bool,
    /// Encodes the structure of a specific problem family.
    pub problem_inspired: bool,
}

impl PrimitiveDescriptor {
    pub fn usage(&self, algorithm: Algorithm) -> UsageLevel {
        self.usage[algorithm.column()]
    }

    pub fn default_level(&self) -> AbstractionLevel {
        self.levels.0
    }

    pub fn admits_level(&self, level: AbstractionLevel) -> bool {
        self.levels.0 <= level && level <= self.levels.1
    }

    pub fn unitary_kind(&self) -> UnitaryKind {
        match (self.category, self.id.get()) {
            (Category::Auxiliary, 33) => UnitaryKind::Measurement,
            (Category::Auxiliary, 31) => UnitaryKind::Controlled,
            (Category::Auxiliary, _) => UnitaryKind::Fixed,
            (_, 14) => UnitaryKind::Measurement,
            (Category::Functional(c), _) => category_template(c).unitary_kind,
        }
    }

    /// Whether the primitive is a unitary transformation (all but measurement
    /// and the damping channel).
    pub fn is_unitary(&self) -> bool {
        !matches!(self.id.get(), 14 | 33)
    }

    pub fn ancilla_policy(&self) -> AncillaPolicy {
        match (self.category, self.id.get()) {
            (_, 19 | 21 | 22 | 23 | 24 | 34) => AncillaPolicy::Required,
            (_, 15..=17) => AncillaPolicy::None,
            (Category::Auxiliary, _) => AncillaPolicy::None,
            _ => AncillaPolicy::Optional,
        }
    }

    /// Concrete interface for an instance with the given parameters.
    pub fn interface(&self, params: &Params) -> Result<ModuleInterface, CatalogError> {
        let (data, required, scratch, clbits) = if self.lowerable {
            let c = lower(self.id, params)?;
            let l = c.layout();
            (l.data, l.required, l.scratch, c.classical_bits())
        } else {
            (params.usize_or("n", 1)?, 0, 0, 0)
        };
        let policy = self.ancilla_policy();
        let ancillas = if policy == AncillaPolicy::None { 0 } else { required + scratch };
        let input = match self.category {
            Category::Functional(FunctionalCategory::OracleConstruction) => QubitRegister::new(data).with_role("problem"),
            Category::Functional(FunctionalCategory::PhaseEstimation) => QubitRegister::new(data).with_role("target"),
            _ => QubitRegister::new(data),
        };
        make_module_interface(input, data, AncillaSpec::new(ancillas, policy), self.unitary_kind(), self.parameters.clone())
            .map(|m| m.with_classical_out(clbits))
            .map_err(|e| CatalogError::BadParams(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Filter {
    All,
    Category(Category),
    MinUsage { algorithm: Algorithm, min: UsageLevel },
}

fn usage_row(codes: &str) -> [UsageLevel; 5] {
    let mut row = [UsageLevel::NotUsed; 5];
    let mut parts = codes.split_whitespace();
    for cell in row.iter_mut() {
        *cell = parts.next().and_then(|c| c.parse().ok()).expect("five usage codes");
    }
    row
}

fn p(name: &str, kind: ParameterKind, domain: ValueDomain) -> Parameter {
    Parameter::new(name, kind, domain)
}

fn build_catalog() -> Vec<PrimitiveDescriptor> {
    use FunctionalCategory::*;
    use ParameterKind::{Fixed, ProblemDependent as Prob, Structural as St, Variational as Var};
    use ValueDomain::*;

    let lv = |lo: u8, hi: u8| (AbstractionLevel::new(lo).unwrap(), AbstractionLevel::new(hi).unwrap());
    let n = || p("n", St, QubitCount);

    struct Row {
        id: u8,
        name: &'static str,
        ident: &'static str,
        category: Category,
        usage: &'static str,
        params: Vec<Parameter>,
        levels: (AbstractionLevel, AbstractionLevel),
        lowerable: bool,
        input_optional: bool,
        problem_inspired: bool,
    }
    let f = Category::Functional;
    let row = |id, name, ident, category, usage, params, levels| Row {
        id,
        name,
        ident,
        category,
        usage,
        params,
        levels,
        lowerable: true,
        input_optional: false,
        problem_inspired: false,
    };

    let mut rows = vec![
        row(
            1,
            "Basis States",
            "BasisStates",
            f(StatePreparation),
            "ES ES ES ES ES",
            vec![n(), p("state", St, Integer)],
            lv(2, 3),
        ),
        row(2, "Superposition (H)", "Superposition", f(StatePreparation), "ES ES ES ES ES", vec![n()], lv(2, 3)),
        row(
            3,
            "Arbitrary States",
            "ArbitraryStates",
            f(StatePreparation),
            "ES ES ES ES ES",
            vec![p("theta", Var, Angle), p("phi", Var, Angle), p("lambda", Var, Angle)],
            lv(2, 3),
        ),
        row(4, "Bell States", "BellStates", f(StatePreparation), "ES ES ES ES ES", vec![p("variant", St, Label)], lv(2, 3)),
        row(5, "GHZ States", "GhzStates", f(StatePreparation), "SU SU SU SU ES", vec![n()], lv(2, 3)),
        row(
            6,
            "Cluster States",
            "ClusterStates",
            f(StatePreparation),
            "NU NU NU NU ES",
            vec![n(), p("edges", St, Graph)],
            lv(2, 3),
        ),
        row(
            7,
            "Bell State Circuits",
            "BellStateCircuits",
            f(EntanglementGeneration),
            "FU FU FU FU FU",
            vec![p("variant", St, Label)],
            lv(2, 3),
        ),
        row(8, "GHZ State Circuits", "GhzStateCircuits", f(EntanglementGeneration), "FU FU FU FU FU", vec![n()], lv(2, 3)),
        row(9, "W State Circuits", "WStateCircuits", f(EntanglementGeneration), "FU FU FU FU FU", vec![n()], lv(2, 3)),
        row(
            10,
            "Cluster State Circuits",
            "ClusterStateCircuits",
            f(EntanglementGeneration),
            "NU NU NU NU FU",
            vec![n(), p("edges", St, Graph)],
            lv(2, 3),
        ),
        row(
            11,
            "Grover Operator",
            "GroverOperator",
            f(AmplitudeAmplification),
            "ES NU NU NU NU",
            vec![n(), p("marked", Prob, MarkedStates), p("iterations", St, Integer)],
            lv(3, 3),
        ),
        row(12, "Diffusion Operator", "DiffusionOperator", f(AmplitudeAmplification), "ES NU NU NU NU", vec![n()], lv(3, 3)),
        row(
            13,
            "Reflection Operators",
            "ReflectionOperators",
            f(AmplitudeAmplification),
            "ES NU NU NU NU",
            vec![n(), p("state", St, Integer)],
            lv(3, 3),
        ),
        Row {
            lowerable: false,
            ..row(
                14,
                "Amplitude Damping",
                "AmplitudeDamping",
                f(AmplitudeAmplification),
                "NU NU NU NU NU",
                vec![p("gamma", Fixed, RealCoefficient)],
                lv(3, 3),
            )
        },
        row(15, "Standard QFT", "StandardQft", f(BasisTransformation), "NU ES NU NU SU", vec![n()], lv(3, 3)),
        row(16, "Inverse QFT", "InverseQft", f(BasisTransformation), "NU ES NU NU SU", vec![n()], lv(3, 3)),
        row(
            17,
            "Approximate QFT",
            "ApproximateQft",
            f(BasisTransformation),
            "NU ES NU NU SU",
            vec![n(), p("cutoff", St, Integer)],
            lv(3, 3),
        ),
        row(
            18,
            "Phase Oracles",
            "PhaseOracles",
            f(OracleConstruction),
            "ES ES NU NU NU",
            vec![n(), p("marked", Prob, MarkedStates)],
            lv(2, 3),
        ),
        row(
            19,
            "Bit-Flip Oracles",
            "BitFlipOracles",
            f(OracleConstruction),
            "ES NU NU NU NU",
            vec![n(), p("marked", Prob, MarkedStates)],
            lv(2, 3),
        ),
        row(
            20,
            "Arithmetic Oracles",
            "ArithmeticOracles",
            f(OracleConstruction),
            "NU ES NU NU NU",
            vec![p("a", Prob, Integer), p("modulus", Prob, Integer), p("power", St, Integer)],
            lv(2, 3),
        ),
        row(
            21,
            "Boolean Oracles",
            "BooleanOracles",
            f(OracleConstruction),
            "ES NU NU NU NU",
            vec![n(), p("table", Prob, MarkedStates)],
            lv(2, 3),
        ),
        row(
            22,
            "Standard QPE",
            "StandardQpe",
            f(PhaseEstimation),
            "NU ES NU NU SU",
            vec![
                p("t", St, QubitCount),
                p("phase", Fixed, RealCoefficient),
                p("a", Fixed, Integer),
                p("modulus", Fixed, Integer),
            ],
            lv(4, 4),
        ),
        row(
            23,
            "Iterative QPE",
            "IterativeQpe",
            f(PhaseEstimation),
            "NU ES NU NU SU",
            vec![
                p("t", St, QubitCount),
                p("round", St, Integer),
                p("bits", St, MarkedStates),
                p("phase", Fixed, RealCoefficient),
                p("a", Fixed, Integer),
                p("modulus", Fixed, Integer),
            ],
            lv(4, 4),
        ),
        Row {
            lowerable: false,
            ..row(24, "Bayesian QPE", "BayesianQpe", f(PhaseEstimation), "NU ES NU NU SU", vec![p("t", St, QubitCount)], lv(4, 4))
        },
        Row {
            input_optional: true,
            ..row(
                25,
                "Hardware-Efficient Ansatz",
                "HardwareEfficientAnsatz",
                f(VariationalAnsatz),
                "NU NU ES ES NU",
                vec![n(), p("layers", St, Integer), p("theta", Var, Angle)],
                lv(3, 3),
            )
        },
        Row {
            input_optional: true,
            problem_inspired: true,
            ..row(
                26,
                "Problem-Inspired Ansatz",
                "ProblemInspiredAnsatz",
                f(VariationalAnsatz),
                "NU NU ES ES NU",
                vec![
                    n(),
                    p("edges", Prob, Graph),
                    p("weights", Prob, RealCoefficient),
                    p("p", St, Integer),
                    p("theta", Var, Angle),
                ],
                lv(3, 3),
            )
        },
        Row {
            input_optional: true,
            problem_inspired: true,
            ..row(
                27,
                "UCCSD Ansatz",
                "UccsdAnsatz",
                f(VariationalAnsatz),
                "NU NU ES NU NU",
                vec![n(), p("theta", Var, Angle)],
                lv(3, 3),
            )
        },
        Row {
            input_optional: true,
            ..row(
                28,
                "Heuristic Ansatz",
                "HeuristicAnsatz",
                f(VariationalAnsatz),
                "NU NU ES ES NU",
                vec![
                    n(),
                    p("layers", St, Integer),
                    p("rotations", St, Label),
                    p("entangler", St, Label),
                    p("gate", St, Label),
                    p("theta", Var, Angle),
                ],
                lv(3, 3),
            )
        },
        Row {
            input_optional: true,
            problem_inspired: true,
            ..row(
                29,
                "Hamiltonian Ansatz",
                "HamiltonianAnsatz",
                f(VariationalAnsatz),
                "NU NU ES NU ES",
                vec![
                    n(),
                    p("steps", St, Integer),
                    p("j", Prob, RealCoefficient),
                    p("h", Prob, RealCoefficient),
                    p("dt", St, RealCoefficient),
                    p("theta", Var, Angle),
                ],
                lv(3, 3),
            )
        },
        row(30, "SWAP Gates", "SwapGates", Category::Auxiliary, "SU SU SU SU SU", vec![], lv(1, 2)),
        row(
            31,
            "Controlled Operations",
            "ControlledOperations",
            Category::Auxiliary,
            "ES ES ES ES ES",
            vec![p("gate", St, Label), p("theta", Fixed, Angle)],
            lv(1, 2),
        ),
        row(32, "Toffoli Gates", "ToffoliGates", Category::Auxiliary, "ES SU SU SU SU", vec![], lv(1, 2)),
        row(33, "Measurement", "Measurement", Category::Auxiliary, "ES ES ES ES ES", vec![n()], lv(1, 2)),
        Row {
            input_optional: true,
            ..row(
                34,
                "Ancilla Management",
                "AncillaManagement",
                Category::Auxiliary,
                "SU SU SU SU SU",
                vec![n(), p("ancillas", St, QubitCount)],
                lv(1, 2),
            )
        },
    ];
    for r in rows.iter_mut() {
        if matches!(r.category, Category::Functional(StatePreparation | EntanglementGeneration)) {
            r.input_optional = true;
        }
    }

    rows.into_iter()
        .map(|r| {
            let attributes = match r.category.functional() {
                Some(c) => ClassificationAttributes::only(Criterion::for_category(c)),
                None => ClassificationAttributes::default(),
            };
            PrimitiveDescriptor {
                id: PrimitiveId(r.id),
                name: r.name,
                ident: r.ident,
                category: r.category,
                usage: usage_row(r.usage),
                complexity_class: complexity_class(r.category),
                attributes,
                parameters: r.params,
                levels: r.levels,
                lowerable: r.lowerable,
                input_optional: r.input_optional,
                problem_inspired: r.problem_inspired,
            }
        })
        .collect()
}

/// The shipped catalog, in id order.
pub fn catalog() -> &'static [PrimitiveDescriptor] {
    static CATALOG: OnceLock<Vec<PrimitiveDescriptor>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

pub fn descriptor(id: PrimitiveId) -> &'static PrimitiveDescriptor {
    &catalog()[id.get() as usize - 1]
}

pub fn descriptor_by_number(id: u8) -> Result<&'static PrimitiveDescriptor, CatalogError> {
    PrimitiveId::new(id).map(descriptor)
}

/// Looks up a primitive by manifest identifier, row label or number.
pub fn find(name: &str) -> Result<&'static PrimitiveDescriptor, CatalogError> {
    if let Ok(id) = name.parse::<u8>() {
        return descriptor_by_number(id);
    }
    catalog().iter().find(|d| d.ident == name || d.name == name).ok_or_else(|| CatalogError::UnknownPrimitive(name.to_string()))
}

pub fn list_primitives(filter: Filter) -> Vec<&'static PrimitiveDescriptor> {
    catalog()
        .iter()
        .filter(|d| match filter {
            Filter::All => true,
            Filter::Category(c) => d.category == c,
            Filter::MinUsage { algorithm, min } => d.usage(algorithm) >= min,
        })
        .collect()
}

pub fn usage(primitive: u8, algorithm: &str) -> Result<UsageLevel, CatalogError> {
    let d = descriptor_by_number(primitive)?;
    let algorithm: Algorithm = algorithm.parse().map_err(|_| CatalogError::UnknownAlgorithm(algorithm.to_string()))?;
    Ok(d.usage(algorithm))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thirty_four_unique_rows() {
        let all = catalog();
        assert_eq!(all.len(), 34);
        for (i, d) in all.iter().enumerate() {
            assert_eq!(d.id.get() as usize, i + 1);
        }
        let mut names: Vec<_> = all.iter().map(|d| d.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 34);
        let mut idents: Vec<_> = all.iter().map(|d| d.ident).collect();
        idents.sort();
        idents.dedup();
        assert_eq!(idents.len(), 34);
    }

    #[test]
    fn filters() {
        assert_eq!(list_primitives(Filter::All).len(), 34);
        let va: Vec<u8> = list_primitives(Filter::Category(Category::Functional(FunctionalCategory::VariationalAnsatz)))
            .iter()
            .map(|d| d.id.get())
            .collect();
        assert_eq!(va, vec![25, 26, 27, 28, 29]);

        let grover: Vec<&str> = list_primitives(Filter::MinUsage { algorithm: Algorithm::Grover, min: UsageLevel::Essential })
            .iter()
            .map(|d| d.name)
            .collect();
        assert!(grover.contains(&"Grover Operator"));
        assert!(grover.contains(&"Diffusion Operator"));
        assert!(grover.contains(&"Phase Oracles"));
        assert!(!grover.contains(&"Standard QFT"));
    }

    #[test]
    fn usage_cells() {
        assert_eq!(usage(11, "Grover").unwrap(), UsageLevel::Essential);
        assert_eq!(usage(11, "Shor").unwrap(), UsageLevel::NotUsed);
        assert_eq!(usage(30, "VQE").unwrap(), UsageLevel::SometimesUsed);
        assert!(matches!(usage(35, "VQE"), Err(CatalogError::UnknownPrimitive(_))));
        assert!(matches!(usage(1, "Deutsch"), Err(CatalogError::UnknownAlgorithm(_))));
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(find("StandardQft").unwrap().id.get(), 15);
        assert_eq!(find("Standard QFT").unwrap().id.get(), 15);
        assert_eq!(find("15").unwrap().id.get(), 15);
        assert!(matches!(find("QFTX"), Err(CatalogError::UnknownPrimitive(_))));
    }

    #[test]
    fn growth_ratios() {
        assert_eq!(GrowthModel::Quadratic.ratio(8, 16), 4.0);
        assert_eq!(GrowthModel::Linear.ratio(8, 16), 2.0);
        assert!((GrowthModel::SqrtStates.ratio(4, 6) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn instance_interfaces() {
        let oracle = find("BitFlipOracles").unwrap();
        let m = oracle.interface(&Params::new().with("n", 4usize).with("marked", vec![3usize])).unwrap();
        assert_eq!(m.q_in().count, 4);
        assert_eq!(m.q_anc().policy, AncillaPolicy::Required);
        assert!(m.q_anc().count >= 1);

        let qft = find("StandardQft").unwrap();
        let m = qft.interface(&Params::new().with("n", 3usize)).unwrap();
        assert_eq!(m.q_anc(), AncillaSpec::NONE);
        assert_eq!(m.unitary_kind(), UnitaryKind::Fourier);

        let meas = find("Measurement").unwrap();
        let m = meas.interface(&Params::new().with("n", 2usize)).unwrap();
        assert_eq!(m.unitary_kind(), UnitaryKind::Measurement);
        assert_eq!(m.classical_out(), 2);
    }
}
