//! Nonfunctional profiles, reuse tiers, complexity fits and trade-off reports.

use std::fmt;
use std::str::FromStr;

use crate::catalog::{
    self, lower, lowering::optimal_grover_iterations, sized_params, CatalogError, GrowthModel, Params, PrimitiveDescriptor,
    PrimitiveId,
};
use crate::circuit::GateCircuit;
use crate::compose::{Architecture, Body, ComposeError};
use crate::model::{
    category_template, AbstractionLevel, Category, ComplexityMetrics, Dimension, Granularity, HardwareBinding, InformationFlow,
    NfrProfile, ParameterKind, ReusePattern, ScopeFamily, UsageLevel,
};

pub const DEFAULT_NISQ_THRESHOLD: f64 = 200.0;
/// Allowed relative deviation of a measured growth ratio from the predicted one.
pub const RATIO_TOLERANCE: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HardwareEra {
    Nisq,
    FaultTolerant,
}

impl HardwareEra {
    pub fn label(self) -> &'static str {
        match self {
            HardwareEra::Nisq => "nisq",
            HardwareEra::FaultTolerant => "ft",
        }
    }
}

impl FromStr for HardwareEra {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "nisq" => Ok(HardwareEra::Nisq),
            "ft" | "fault-tolerant" | "fault_tolerant" => Ok(HardwareEra::FaultTolerant),
            other => Err(format!("unknown context `{other}` (nisq, ft)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Context {
    pub era: HardwareEra,
    pub nisq_threshold: f64,
    /// Problem family the options target; `None` takes any family both share.
    pub problem: Option<ScopeFamily>,
}

impl Default for Context {
    fn default() -> Self {
        Context { era: HardwareEra::Nisq, nisq_threshold: DEFAULT_NISQ_THRESHOLD, problem: None }
    }
}

impl Context {
    pub fn new(era: HardwareEra) -> Self {
        Context { era, ..Context::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReuseTier {
    Universal,
    CrossAlgorithm,
    AlgorithmSpecific,
}

impl ReuseTier {
    pub fn label(self) -> &'static str {
        match self {
            ReuseTier::Universal => "universal",
            ReuseTier::CrossAlgorithm => "cross_algorithm",
            ReuseTier::AlgorithmSpecific => "algorithm_specific",
        }
    }
}

impl fmt::Display for ReuseTier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Tier from a usage row: ES/FU in every column is universal, in two or
/// more is cross-algorithm, otherwise algorithm-specific.
pub fn tier_of_row(row: &[UsageLevel]) -> ReuseTier {
    let heavy = row.iter().filter(|u| **u >= UsageLevel::FrequentlyUsed).count();
    if heavy == row.len() {
        ReuseTier::Universal
    } else if heavy >= 2 {
        ReuseTier::CrossAlgorithm
    } else {
        ReuseTier::AlgorithmSpecific
    }
}

pub fn reuse_tier(number: u8) -> Result<ReuseTier, CatalogError> {
    Ok(tier_of_row(&catalog::descriptor_by_number(number)?.usage))
}

/// Tier the narrative description of reuse assigns, for entries it names.
pub fn described_tier(number: u8) -> Option<ReuseTier> {
    match number {
        30 | 31 | 33 => Some(ReuseTier::Universal),
        2 | 7..=11 | 13 | 15..=17 | 22..=24 => Some(ReuseTier::CrossAlgorithm),
        12 | 20 | 26 | 27 => Some(ReuseTier::AlgorithmSpecific),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TierReport {
    pub id: u8,
    pub name: &'static str,
    pub tier: ReuseTier,
    pub described: Option<ReuseTier>,
}

impl TierReport {
    pub fn disagrees(&self) -> bool {
        self.described.is_some_and(|d| d != self.tier)
    }

    pub fn note(&self) -> Option<String> {
        let d = self.described.filter(|d| *d != self.tier)?;
        Some(format!(
            "usage row gives {} but the narrative groups `{}` with {} components; the usage-row tier is reported",
            self.tier, self.name, d
        ))
    }
}

pub fn tier_report(number: u8) -> Result<TierReport, CatalogError> {
    let d = catalog::descriptor_by_number(number)?;
    Ok(TierReport { id: number, name: d.name, tier: tier_of_row(&d.usage), described: described_tier(number) })
}

pub fn circuit_metrics(circuit: &GateCircuit, note: &str) -> ComplexityMetrics {
    let counts = circuit.gate_counts();
    ComplexityMetrics {
        gate_count: counts.total,
        two_qubit_count: counts.two_qubit,
        depth: circuit.depth(),
        qubit_count: circuit.width(),
        ancilla_count: circuit.ancilla_count(),
        classical_preprocessing: note.to_string(),
    }
}

pub fn error_sensitivity(m: &ComplexityMetrics) -> f64 {
    m.depth as f64 * (1.0 + m.two_qubit_count as f64)
}

fn preprocessing_note(d: &PrimitiveDescriptor) -> &'static str {
    use crate::model::FunctionalCategory::*;
    match d.category.functional() {
        Some(OracleConstruction) => "problem encoding into a reversible predicate",
        Some(VariationalAnsatz) => "classical optimizer loop over parameters",
        Some(PhaseEstimation) => "controlled-power synthesis; classical post-processing of readout",
        Some(AmplitudeAmplification) => "iteration count from the number of marked states",
        Some(StatePreparation) if d.id.get() == 3 => "amplitude-tree angle computation",
        _ => "none",
    }
}

fn scope_of(d: &PrimitiveDescriptor) -> Vec<ScopeFamily> {
    if tier_of_row(&d.usage) == ReuseTier::Universal {
        return vec![ScopeFamily::Universal];
    }
    let pick = |min: UsageLevel| -> Vec<ScopeFamily> {
        let mut s: Vec<ScopeFamily> =
            crate::model::Algorithm::ALL.iter().filter(|a| d.usage(**a) >= min).map(|a| a.scope()).collect();
        s.sort();
        s.dedup();
        s
    };
    let heavy = pick(UsageLevel::FrequentlyUsed);
    if heavy.is_empty() {
        pick(UsageLevel::SometimesUsed)
    } else {
        heavy
    }
}

fn flow_of(d: &PrimitiveDescriptor) -> InformationFlow {
    match d.category {
        Category::Functional(f) => category_template(f).flow,
        Category::Auxiliary => match d.id.get() {
            33 => InformationFlow::FeedForward,
            31 | 32 => InformationFlow::Hierarchical,
            _ => InformationFlow::Local,
        },
    }
}

fn reuse_pattern(parameterization: ParameterKind, level: AbstractionLevel) -> ReusePattern {
    match parameterization {
        ParameterKind::Variational => ReusePattern::Parametric,
        ParameterKind::ProblemDependent => ReusePattern::Contextual,
        _ if level >= AbstractionLevel::BLOCK => ReusePattern::Hierarchical,
        _ => ReusePattern::Direct,
    }
}

fn binding_of(d: &PrimitiveDescriptor) -> HardwareBinding {
    // the hardware-efficient layout follows native gates and connectivity
    if d.id.get() == 25 {
        HardwareBinding::TechnologySpecific
    } else {
        HardwareBinding::Agnostic
    }
}

fn with_metrics(mut p: NfrProfile, m: ComplexityMetrics, ctx: &Context) -> NfrProfile {
    let s = error_sensitivity(&m);
    p.nisq_suitable = Some(s <= ctx.nisq_threshold);
    p.error_sensitivity = Some(s);
    p.complexity = Some(m);
    p
}

/// Profile of a primitive instance. Non-lowerable primitives get the
/// descriptor-level dimensions with no complexity or NISQ verdict.
pub fn primitive_profile(id: PrimitiveId, params: &Params, ctx: &Context) -> Result<NfrProfile, CatalogError> {
    let d = catalog::descriptor(id);
    let interface = d.interface(params)?;
    let parameterization = interface.dominant_parameter_kind();
    let level = d.default_level();
    let base = NfrProfile {
        granularity: level.granularity(),
        parameterization,
        algorithm_scope: scope_of(d),
        complexity: None,
        reversible: d.is_unitary(),
        unitary: d.is_unitary(),
        information_flow: flow_of(d),
        nisq_suitable: None,
        error_sensitivity: None,
        reuse_pattern: reuse_pattern(parameterization, level),
        hardware_binding: binding_of(d),
    };
    if !d.lowerable {
        return Ok(base);
    }
    let c = lower(id, params)?;
    let unitary = d.is_unitary() && !c.has_measurements();
    let p = NfrProfile { reversible: unitary, unitary, ..base };
    Ok(with_metrics(p, circuit_metrics(&c, preprocessing_note(d)), ctx))
}

/// Profile of a whole architecture from its flattened circuit.
pub fn architecture_profile(arch: &Architecture, ctx: &Context) -> Result<NfrProfile, ComposeError> {
    let flat = arch.flatten()?;
    let inl = arch.inlined();
    let prims: Vec<&PrimitiveDescriptor> = inl.components().iter().filter_map(|c| c.descriptor()).collect();
    let has_controller = inl.components().iter().any(|c| matches!(c.body, Body::Controller(_)));
    let mut kinds: Vec<ParameterKind> = Vec::new();
    for c in inl.components() {
        if let Some(d) = c.descriptor() {
            kinds.push(d.interface(&c.params)?.dominant_parameter_kind());
        }
    }
    let parameterization = [ParameterKind::Variational, ParameterKind::ProblemDependent, ParameterKind::Structural]
        .into_iter()
        .find(|k| kinds.contains(k))
        .unwrap_or(ParameterKind::Fixed);
    let mut scope: Vec<ScopeFamily> = prims.iter().flat_map(|d| scope_of(d)).filter(|s| *s != ScopeFamily::Universal).collect();
    scope.sort();
    scope.dedup();
    if scope.is_empty() {
        scope.push(ScopeFamily::Universal);
    }
    let unitary = !flat.circuit.has_measurements() && prims.iter().all(|d| d.is_unitary());
    let flow = if has_controller {
        InformationFlow::QuantumClassicalLoop
    } else if prims.len() > 1 {
        InformationFlow::Hierarchical
    } else {
        prims.first().map(|d| flow_of(d)).unwrap_or(InformationFlow::Local)
    };
    let note = if has_controller { "classical optimizer loop over parameters" } else { "none" };
    let p = NfrProfile {
        granularity: if arch.level() >= AbstractionLevel::ALGORITHM {
            Granularity::Algorithm
        } else {
            arch.level().granularity()
        },
        parameterization,
        algorithm_scope: scope,
        complexity: None,
        reversible: unitary,
        unitary,
        information_flow: flow,
        nisq_suitable: None,
        error_sensitivity: None,
        reuse_pattern: ReusePattern::Hierarchical,
        hardware_binding: if prims.iter().any(|d| binding_of(d) == HardwareBinding::TechnologySpecific) {
            HardwareBinding::TechnologySpecific
        } else {
            HardwareBinding::Agnostic
        },
    };
    Ok(with_metrics(p, circuit_metrics(&flat.circuit, note), ctx))
}

/// Measured growth of one primitive against its complexity class.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityFit {
    pub id: u8,
    pub class_label: &'static str,
    /// Counting iterations instead of gates.
    pub iterations: bool,
    pub sizes: Vec<usize>,
    pub counts: Vec<usize>,
    /// Ratio of the counts at the two largest sizes.
    pub measured_ratio: f64,
    /// `(model, predicted ratio, fits)` for each model of the class.
    pub models: Vec<(GrowthModel, f64, bool)>,
    pub consistent: bool,
}

impl ComplexityFit {
    pub fn matched(&self) -> Option<GrowthModel> {
        self.models.iter().find(|m| m.2).map(|m| m.0)
    }
}

pub fn ratio_fits(measured: f64, predicted: f64) -> bool {
    (measured - predicted).abs() <= RATIO_TOLERANCE * predicted
}

/// Counts at each size and the ratio test at the largest pair.
pub fn complexity_check(number: u8, sizes: &[usize]) -> Result<ComplexityFit, CatalogError> {
    let d = catalog::descriptor_by_number(number)?;
    if !d.lowerable {
        return Err(CatalogError::NotLowerable { id: number, name: d.name });
    }
    if sizes.len() < 2 {
        return Err(CatalogError::BadParams("complexity check needs at least two sizes".into()));
    }
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let iterations = d.complexity_class.counts_iterations;
    let counts = sizes
        .iter()
        .map(|&n| {
            if iterations {
                Ok(optimal_grover_iterations(n, 1))
            } else {
                lower(d.id, &sized_params(d.id, n)).map(|c| c.gate_counts().total)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let k = sizes.len();
    let (n1, n2) = (sizes[k - 2], sizes[k - 1]);
    let measured_ratio = counts[k - 1] as f64 / counts[k - 2].max(1) as f64;
    let models: Vec<(GrowthModel, f64, bool)> = d
        .complexity_class
        .models
        .iter()
        .map(|&m| {
            let r = m.ratio(n1, n2);
            (m, r, ratio_fits(measured_ratio, r))
        })
        .collect();
    let consistent = models.iter().any(|m| m.2);
    Ok(ComplexityFit {
        id: number,
        class_label: d.complexity_class.label,
        iterations,
        sizes,
        counts,
        measured_ratio,
        models,
        consistent,
    })
}

/// One side of a comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffOption {
    pub label: String,
    pub profile: NfrProfile,
    pub problem_inspired: bool,
}

impl TradeoffOption {
    pub fn primitive(number: u8, params: &Params, ctx: &Context) -> Result<Self, CatalogError> {
        let d = catalog::descriptor_by_number(number)?;
        Ok(TradeoffOption {
            label: format!("{} ({})", d.ident, params),
            profile: primitive_profile(d.id, params, ctx)?,
            problem_inspired: d.problem_inspired,
        })
    }

    fn cost(&self) -> Option<(usize, usize, usize)> {
        self.profile.complexity.as_ref().map(|m| (m.depth * m.two_qubit_count, m.depth, m.two_qubit_count))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Same,
    FavorsA,
    FavorsB,
    /// Differs with no preferred side.
    Differs,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Same => "same",
            Verdict::FavorsA => "favors_a",
            Verdict::FavorsB => "favors_b",
            Verdict::Differs => "differs",
        }
    }

    fn flip(self) -> Self {
        match self {
            Verdict::FavorsA => Verdict::FavorsB,
            Verdict::FavorsB => Verdict::FavorsA,
            v => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionRow {
    pub dimension: Dimension,
    pub a: String,
    pub b: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Recommendation {
    A,
    B,
    Tie,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffReport {
    pub context: Context,
    pub a: TradeoffOption,
    pub b: TradeoffOption,
    pub rows: Vec<DimensionRow>,
    pub recommendation: Recommendation,
    pub rationale: Vec<String>,
}

impl TradeoffReport {
    pub fn recommended(&self) -> Option<&TradeoffOption> {
        match self.recommendation {
            Recommendation::A => Some(&self.a),
            Recommendation::B => Some(&self.b),
            Recommendation::Tie => None,
        }
    }
}

pub fn dimension_value(p: &NfrProfile, dim: Dimension) -> String {
    match dim {
        Dimension::Granularity => p.granularity.label().into(),
        Dimension::Parameterization => p.parameterization.label().into(),
        Dimension::AlgorithmScope => p.algorithm_scope.iter().map(|s| s.label()).collect::<Vec<_>>().join(","),
        Dimension::Complexity => match &p.complexity {
            Some(m) => format!(
                "gates={} two_qubit={} depth={} qubits={} ancillas={}",
                m.gate_count, m.two_qubit_count, m.depth, m.qubit_count, m.ancilla_count
            ),
            None => "unknown".into(),
        },
        Dimension::Reversibility => format!("reversible={} unitary={}", p.reversible, p.unitary),
        Dimension::InformationFlow => p.information_flow.label().into(),
        Dimension::ErrorSensitivity => match (p.error_sensitivity, p.nisq_suitable) {
            (Some(s), Some(ok)) => format!("score={s} nisq_suitable={ok}"),
            _ => "unknown".into(),
        },
        Dimension::ReusePattern => p.reuse_pattern.label().into(),
        Dimension::HardwareBinding => p.hardware_binding.label().into(),
    }
}

fn smaller<T: PartialOrd>(a: T, b: T) -> Verdict {
    if a < b {
        Verdict::FavorsA
    } else if b < a {
        Verdict::FavorsB
    } else {
        Verdict::Same
    }
}

fn row_verdict(a: &TradeoffOption, b: &TradeoffOption, dim: Dimension, ctx: &Context) -> Verdict {
    let (va, vb) = (dimension_value(&a.profile, dim), dimension_value(&b.profile, dim));
    if va == vb {
        return Verdict::Same;
    }
    match dim {
        Dimension::Complexity => match (a.cost(), b.cost()) {
            (Some(ca), Some(cb)) => match smaller((ca.1, ca.2), (cb.1, cb.2)) {
                Verdict::Same => Verdict::Differs,
                v => v,
            },
            _ => Verdict::Differs,
        },
        Dimension::ErrorSensitivity => match (a.profile.error_sensitivity, b.profile.error_sensitivity) {
            (Some(x), Some(y)) => smaller(x, y),
            _ => Verdict::Differs,
        },
        Dimension::HardwareBinding if ctx.era == HardwareEra::FaultTolerant => {
            if a.profile.hardware_binding == HardwareBinding::Agnostic {
                Verdict::FavorsA
            } else {
                Verdict::FavorsB
            }
        }
        _ => Verdict::Differs,
    }
}

fn shared_family(a: &TradeoffOption, b: &TradeoffOption, ctx: &Context) -> Option<ScopeFamily> {
    ctx.problem.or_else(|| a.profile.algorithm_scope.iter().find(|s| b.profile.algorithm_scope.contains(s)).copied())
}

/// Dimension-by-dimension comparison and a recommendation.
///
/// Under NISQ the option with the smaller `depth * two_qubit_count` wins.
/// Under fault tolerance a problem-inspired option whose scope covers the
/// problem family wins; otherwise the NISQ cost decides.
pub fn compare(a: &TradeoffOption, b: &TradeoffOption, ctx: &Context) -> TradeoffReport {
    let rows = Dimension::ALL
        .iter()
        .map(|&dim| DimensionRow {
            dimension: dim,
            a: dimension_value(&a.profile, dim),
            b: dimension_value(&b.profile, dim),
            verdict: row_verdict(a, b, dim, ctx),
        })
        .collect();
    let mut rationale = Vec::new();
    let by_cost = |rationale: &mut Vec<String>| match (a.cost(), b.cost()) {
        (Some(ca), Some(cb)) => {
            rationale.push(format!(
                "complexity: depth x two-qubit count is {} ({} x {}) for `{}` and {} ({} x {}) for `{}`",
                ca.0, ca.1, ca.2, a.label, cb.0, cb.1, cb.2, b.label
            ));
            let v = smaller(ca.0, cb.0);
            let (win, lose) = match v {
                Verdict::FavorsA => (a, b),
                Verdict::FavorsB => (b, a),
                _ => return Recommendation::Tie,
            };
            rationale.push(format!("complexity: `{}` has higher computational complexity", lose.label));
            rationale.push(format!("error_sensitivity: the shallower `{}` suits noisy hardware", win.label));
            if v == Verdict::FavorsA {
                Recommendation::A
            } else {
                Recommendation::B
            }
        }
        _ => {
            rationale.push("complexity: unknown for at least one option".into());
            Recommendation::Tie
        }
    };
    let recommendation = match ctx.era {
        HardwareEra::Nisq => by_cost(&mut rationale),
        HardwareEra::FaultTolerant => {
            let family = shared_family(a, b, ctx);
            let fits = |o: &TradeoffOption| o.problem_inspired && family.is_some_and(|f| o.profile.algorithm_scope.contains(&f));
            match (fits(a), fits(b)) {
                (true, false) | (false, true) => {
                    let (win, rec) = if fits(a) { (a, Recommendation::A) } else { (b, Recommendation::B) };
                    rationale.push(format!(
                        "algorithm_scope: `{}` encodes {} problem structure, and fault-tolerant hardware absorbs its depth",
                        win.label,
                        family.map(|f| f.label()).unwrap_or("the")
                    ));
                    rec
                }
                _ => by_cost(&mut rationale),
            }
        }
    };
    TradeoffReport { context: *ctx, a: a.clone(), b: b.clone(), rows, recommendation, rationale }
}

impl Recommendation {
    pub fn label(self) -> &'static str {
        match self {
            Recommendation::A => "a",
            Recommendation::B => "b",
            Recommendation::Tie => "tie",
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Recommendation::A => Recommendation::B,
            Recommendation::B => Recommendation::A,
            Recommendation::Tie => Recommendation::Tie,
        }
    }
}

impl DimensionRow {
    /// The same row with the options swapped.
    pub fn swapped(&self) -> Self {
        DimensionRow { dimension: self.dimension, a: self.b.clone(), b: self.a.clone(), verdict: self.verdict.flip() }
    }
}

/// The two ansatz options of the variational design example: hardware
/// efficient (n=4, two layers) and a 4-qubit UCCSD-style circuit.
pub fn ansatz_options(ctx: &Context) -> Result<(TradeoffOption, TradeoffOption), CatalogError> {
    let a = TradeoffOption::primitive(25, &Params::new().with("n", 4usize).with("layers", 2usize), ctx)?;
    let b = TradeoffOption::primitive(27, &Params::new().with("n", 4usize), ctx)?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(n: u8) -> PrimitiveId {
        PrimitiveId::new(n).unwrap()
    }

    #[test]
    fn tiers() {
        assert_eq!(reuse_tier(31).unwrap(), ReuseTier::Universal);
        assert_eq!(reuse_tier(15).unwrap(), ReuseTier::AlgorithmSpecific);
        assert_eq!(reuse_tier(25).unwrap(), ReuseTier::CrossAlgorithm);
        assert!(tier_report(15).unwrap().disagrees());
        assert!(!tier_report(31).unwrap().disagrees());
    }

    #[test]
    fn qft_profile() {
        let p = primitive_profile(id(15), &Params::new().with("n", 5usize), &Context::default()).unwrap();
        assert_eq!(p.complexity.as_ref().unwrap().gate_count, 5 + 10 + 2);
        assert_eq!(p.information_flow, InformationFlow::Global);
        assert!(p.reversible && p.unitary);
    }

    #[test]
    fn measurement_profile() {
        let p = primitive_profile(id(33), &Params::new().with("n", 2usize), &Context::default()).unwrap();
        assert!(!p.unitary && !p.reversible);
    }

    #[test]
    fn hea_profile() {
        let p = primitive_profile(id(25), &Params::new().with("n", 4usize).with("layers", 2usize), &Context::default()).unwrap();
        assert_eq!(p.parameterization, ParameterKind::Variational);
        assert_eq!(p.information_flow, InformationFlow::QuantumClassicalLoop);
        assert_eq!(p.nisq_suitable, Some(true));
    }

    #[test]
    fn non_lowerable_profile_is_partial() {
        let p = primitive_profile(id(24), &Params::new(), &Context::default()).unwrap();
        assert!(p.complexity.is_none() && !p.is_complete());
    }

    #[test]
    fn complexity_fits() {
        let q = complexity_check(15, &[4, 8, 16]).unwrap();
        assert_eq!(q.counts, vec![12, 40, 144]);
        assert_eq!(q.matched(), Some(GrowthModel::Quadratic));
        let g = complexity_check(8, &[4, 8, 16]).unwrap();
        assert_eq!(g.counts, vec![4, 8, 16]);
        assert!(g.consistent);
        let s = complexity_check(11, &[2, 3, 4, 5, 6]).unwrap();
        assert_eq!(s.counts, vec![1, 2, 3, 4, 6]);
        assert!(s.consistent);
    }

    #[test]
    fn ansatz_tradeoff() {
        let nisq = Context::new(HardwareEra::Nisq);
        let (a, b) = ansatz_options(&nisq).unwrap();
        let r = compare(&a, &b, &nisq);
        assert_eq!(r.recommendation, Recommendation::A);
        assert_eq!(r.rows.len(), 9);
        assert!(r.rationale.iter().any(|l| l.contains("higher computational complexity") && l.contains("UccsdAnsatz")));
        assert_eq!(compare(&b, &a, &nisq).recommendation, Recommendation::B);
        assert_eq!(compare(&a, &a, &nisq).recommendation, Recommendation::Tie);
        let ft = Context::new(HardwareEra::FaultTolerant);
        assert_eq!(compare(&a, &b, &ft).recommendation, Recommendation::B);
        assert_eq!(compare(&b, &a, &ft).recommendation, Recommendation::A);
    }
}
