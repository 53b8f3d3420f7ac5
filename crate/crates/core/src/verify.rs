//! Full invariant suite over a rational parameter grid and seeded random
//! algebras. Subjects are evaluated in parallel; results are aggregated in
//! population order so output is deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curvature::{analyze, curvature_template_check, CurvatureReport, EinsteinLabel};
use crate::families::{
    construct_class_family, construct_example, expected_curvature, parameter_relations,
    random_lie_algebra, structured_patterns, ExampleSpec, ExpectedCurvature, FamilySpec,
    RelationStatus,
};
use crate::lie::LieAlgebra;
use crate::scalar::{Rational, Scalar, Tolerance};
use crate::structure::{
    check_f_symmetries, classify, compute_f_closed_form, compute_f_oracle, special_structures,
    BasicClass, ClassDecomposition,
};
use crate::tensor::{indices4, Tensor2};

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub grid: Vec<Rational>,
    pub seeds: u64,
    pub base_seed: u64,
    pub bound: u32,
    /// Perturbs one tabulated value so the harness must fail.
    pub corrupt_reference: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            grid: default_grid(),
            seeds: 100,
            base_seed: 0,
            bound: 6,
            corrupt_reference: false,
        }
    }
}

pub fn default_grid() -> Vec<Rational> {
    [(-2, 1), (-1, 1), (-1, 2), (1, 2), (1, 1), (2, 1)]
        .into_iter()
        .map(|(n, d)| Rational::from_ratio(n, d))
        .collect()
}

/// Parameter pairs always checked for the example family.
pub fn example_pairs() -> Vec<(Rational, Rational)> {
    [(1, 3), (2, -1), (1, 0), (0, 1)]
        .into_iter()
        .map(|(a, b)| (Rational::from_int(a), Rational::from_int(b)))
        .collect()
}

/// Sign and vanishing claims about the curvature of the class families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Claim {
    OnlyF1Kaehler,
    F1FlatIffEqualSquares,
    F8F9SameCurvature,
    F4F11PhiKilledCurvature,
    F4F11VanishingStarRicci,
    F4F8F9PositiveScalar,
    F1F11PositiveScalarCondition,
    F5NegativeScalar,
    F1F11NegativeScalarCondition,
    VanishingStarScalar,
    F11VanishingStarScalarIffProductZero,
    F11StarScalarSign,
    F1FlatXiSections,
    F4PositiveXiSections,
    F5F8F9NegativeXiSections,
    F1HolomorphicZeroIffFlat,
    F4F11FlatHolomorphicSection,
    HolomorphicSignF5F8F9,
    F1HolomorphicSign,
}

impl Claim {
    pub const ALL: [Claim; 19] = [
        Claim::OnlyF1Kaehler,
        Claim::F1FlatIffEqualSquares,
        Claim::F8F9SameCurvature,
        Claim::F4F11PhiKilledCurvature,
        Claim::F4F11VanishingStarRicci,
        Claim::F4F8F9PositiveScalar,
        Claim::F1F11PositiveScalarCondition,
        Claim::F5NegativeScalar,
        Claim::F1F11NegativeScalarCondition,
        Claim::VanishingStarScalar,
        Claim::F11VanishingStarScalarIffProductZero,
        Claim::F11StarScalarSign,
        Claim::F1FlatXiSections,
        Claim::F4PositiveXiSections,
        Claim::F5F8F9NegativeXiSections,
        Claim::F1HolomorphicZeroIffFlat,
        Claim::F4F11FlatHolomorphicSection,
        Claim::HolomorphicSignF5F8F9,
        Claim::F1HolomorphicSign,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::OnlyF1Kaehler => "only F1 has a Kaehler curvature tensor",
            Claim::F1FlatIffEqualSquares => "F1 flat iff alpha^2 = beta^2",
            Claim::F8F9SameCurvature => "F8 and F9 have curvature of the same form",
            Claim::F4F11PhiKilledCurvature => "F4, F11: R(x,y,phi z,phi w) = 0",
            Claim::F4F11VanishingStarRicci => "F4, F11: rho* = 0",
            Claim::F4F8F9PositiveScalar => "F4, F8, F9: tau > 0",
            Claim::F1F11PositiveScalarCondition => "F1 (F11): tau > 0 iff alpha^2 > beta^2 (<)",
            Claim::F5NegativeScalar => "F5: tau < 0",
            Claim::F1F11NegativeScalarCondition => "F1 (F11): tau < 0 iff alpha^2 < beta^2 (>)",
            Claim::VanishingStarScalar => "F1, F4, F5, F8, F9: tau* = 0",
            Claim::F11VanishingStarScalarIffProductZero => "F11: tau* = 0 iff alpha beta = 0",
            Claim::F11StarScalarSign => "F11: tau* > 0 iff alpha beta < 0, tau* < 0 iff alpha beta > 0",
            Claim::F1FlatXiSections => "F1: k01 = k02 = 0",
            Claim::F4PositiveXiSections => "F4: k01, k02 > 0",
            Claim::F5F8F9NegativeXiSections => "F5, F8, F9: k01, k02 < 0",
            Claim::F1HolomorphicZeroIffFlat => "F1: k12 = 0 iff flat",
            Claim::F4F11FlatHolomorphicSection => "F4, F11: k12 = 0",
            Claim::HolomorphicSignF5F8F9 => "F8, F9: k12 > 0; F5: k12 < 0",
            Claim::F1HolomorphicSign => "F1: k12 > 0 iff alpha^2 > beta^2, k12 < 0 iff alpha^2 < beta^2",
        }
    }

    /// Claims whose intended reading is unclear; these are reported, not
    /// enforced.
    pub fn is_ambiguous(self) -> bool {
        self == Claim::OnlyF1Kaehler
    }

    fn classes(self) -> &'static [BasicClass] {
        use BasicClass::*;
        match self {
            Claim::OnlyF1Kaehler => &[F1, F4, F5, F8, F9, F10, F11],
            Claim::F1FlatIffEqualSquares
            | Claim::F1FlatXiSections
            | Claim::F1HolomorphicZeroIffFlat
            | Claim::F1HolomorphicSign => &[F1],
            Claim::F8F9SameCurvature => &[F8],
            Claim::F4F11PhiKilledCurvature
            | Claim::F4F11VanishingStarRicci
            | Claim::F4F11FlatHolomorphicSection => &[F4, F11],
            Claim::F4F8F9PositiveScalar => &[F4, F8, F9],
            Claim::F1F11PositiveScalarCondition | Claim::F1F11NegativeScalarCondition => &[F1, F11],
            Claim::F5NegativeScalar => &[F5],
            Claim::VanishingStarScalar => &[F1, F4, F5, F8, F9],
            Claim::F11VanishingStarScalarIffProductZero | Claim::F11StarScalarSign => &[F11],
            Claim::F4PositiveXiSections => &[F4],
            Claim::F5F8F9NegativeXiSections | Claim::HolomorphicSignF5F8F9 => &[F5, F8, F9],
        }
    }

    pub fn applies_to(self, class: BasicClass) -> bool {
        self.classes().contains(&class)
    }

    /// Evaluates the claim on one non-degenerate family member. `peer` is
    /// the F9 member with the same `α` when the claim compares F8 with F9.
    pub fn holds(
        self,
        spec: &FamilySpec<Rational>,
        rep: &CurvatureReport<Rational>,
        peer: Option<&CurvatureReport<Rational>>,
    ) -> bool {
        let a2 = spec.alpha.clone() * spec.alpha.clone();
        let b2 = spec.beta.clone() * spec.beta.clone();
        let ab = spec.alpha.clone() * spec.beta.clone();
        let k = &rep.sectional;
        let flat = rep.r.max_abs().is_zero();
        let class = spec.class;
        let iff = |a: bool, b: bool| a == b;
        match self {
            Claim::OnlyF1Kaehler => iff(rep.kaehler_defect.is_zero(), class == BasicClass::F1),
            Claim::F1FlatIffEqualSquares => iff(flat, a2 == b2),
            Claim::F8F9SameCurvature => peer.is_some_and(|p| p.r == rep.r),
            Claim::F4F11PhiKilledCurvature => rep.phi_killed_defect.is_zero(),
            Claim::F4F11VanishingStarRicci => rep.rho_star.max_abs().is_zero(),
            Claim::F4F8F9PositiveScalar => rep.tau.is_positive(),
            Claim::F1F11PositiveScalarCondition => match class {
                BasicClass::F1 => iff(rep.tau.is_positive(), a2 > b2),
                _ => iff(rep.tau.is_positive(), a2 < b2),
            },
            Claim::F5NegativeScalar => rep.tau.is_negative(),
            Claim::F1F11NegativeScalarCondition => match class {
                BasicClass::F1 => iff(rep.tau.is_negative(), a2 < b2),
                _ => iff(rep.tau.is_negative(), a2 > b2),
            },
            Claim::VanishingStarScalar => rep.tau_star.is_zero(),
            Claim::F11VanishingStarScalarIffProductZero => iff(rep.tau_star.is_zero(), ab.is_zero()),
            Claim::F11StarScalarSign => {
                iff(rep.tau_star.is_positive(), ab.is_negative())
                    && iff(rep.tau_star.is_negative(), ab.is_positive())
            }
            Claim::F1FlatXiSections => k.k01.is_zero() && k.k02.is_zero(),
            Claim::F4PositiveXiSections => k.k01.is_positive() && k.k02.is_positive(),
            Claim::F5F8F9NegativeXiSections => k.k01.is_negative() && k.k02.is_negative(),
            Claim::F1HolomorphicZeroIffFlat => iff(k.k12.is_zero(), flat),
            Claim::F4F11FlatHolomorphicSection => k.k12.is_zero(),
            Claim::HolomorphicSignF5F8F9 => match class {
                BasicClass::F5 => k.k12.is_negative(),
                _ => k.k12.is_positive(),
            },
            Claim::F1HolomorphicSign => {
                iff(k.k12.is_positive(), a2 > b2) && iff(k.k12.is_negative(), a2 < b2)
            }
        }
    }
}

/// Named invariant checks, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CheckId {
    ConnectionIdentities,
    CurvatureSymmetries,
    FIdentities,
    OracleEquivalence,
    DecompositionCompleteness,
    FamilyMembership,
    CurvatureIdentity,
    CurvatureTable,
    ExampleFamily,
    Claim(Claim),
    SpecialStructureRoutes,
    KillingMetricWitness,
    CurvatureTemplates,
    RicciTemplates,
    EinsteinLabels,
    ParameterRelations,
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckId::ConnectionIdentities => f.write_str("connection torsion-free and metric"),
            CheckId::CurvatureSymmetries => f.write_str("curvature symmetries and Bianchi"),
            CheckId::FIdentities => f.write_str("F symmetry identities"),
            CheckId::OracleEquivalence => f.write_str("F closed form = F via connection"),
            CheckId::DecompositionCompleteness => f.write_str("sum of class components = F"),
            CheckId::FamilyMembership => f.write_str("family membership"),
            CheckId::CurvatureIdentity => f.write_str("R = -g^(rho - tau/4 g)"),
            CheckId::CurvatureTable => f.write_str("tabulated family curvature"),
            CheckId::ExampleFamily => f.write_str("example family values"),
            CheckId::Claim(c) => write!(f, "claim: {}", c.name()),
            CheckId::SpecialStructureRoutes => f.write_str("special structures, both routes agree"),
            CheckId::KillingMetricWitness => f.write_str("Killing metric witness"),
            CheckId::CurvatureTemplates => f.write_str("curvature templates"),
            CheckId::RicciTemplates => f.write_str("Ricci templates"),
            CheckId::EinsteinLabels => f.write_str("Einstein labels"),
            CheckId::ParameterRelations => f.write_str("parameter relations"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: CheckId,
    pub name: String,
    pub evaluated: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NoteKind {
    DocumentedDiscrepancy,
    Ambiguity,
}

impl fmt::Display for NoteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoteKind::DocumentedDiscrepancy => "documented-discrepancy",
            NoteKind::Ambiguity => "ambiguity",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Note {
    pub kind: NoteKind,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub subjects: usize,
    pub checks: Vec<CheckOutcome>,
    pub notes: Vec<Note>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn check(&self, id: CheckId) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn first_failure(&self) -> Option<(&CheckOutcome, &str)> {
        self.checks
            .iter()
            .find_map(|c| c.first_failure.as_deref().map(|f| (c, f)))
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "subjects: {}", self.subjects)?;
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            write!(f, "{status}  {} ({}/{} ok)", c.name, c.evaluated - c.failures, c.evaluated)?;
            if let Some(first) = &c.first_failure {
                write!(f, "\n      first failure: {first}")?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "{}: {}", n.kind, n.text)?;
        }
        let verdict = if self.passed() { "all checks passed" } else { "verification FAILED" };
        write!(f, "{verdict}")
    }
}

/// One algebra in the test population.
#[derive(Clone, Debug)]
enum Subject {
    Family(FamilySpec<Rational>),
    Example(ExampleSpec<Rational>),
    Random(u64),
    Pattern(String, LieAlgebra<Rational>),
}

impl Subject {
    fn label(&self) -> String {
        match self {
            Subject::Family(s) if s.class.has_beta() => {
                format!("{}(alpha={}, beta={})", s.class, s.alpha, s.beta)
            }
            Subject::Family(s) => format!("{}(alpha={})", s.class, s.alpha),
            Subject::Example(e) => format!("example(a1={}, a2={})", e.a1, e.a2),
            Subject::Random(seed) => format!("random(seed={seed})"),
            Subject::Pattern(name, _) => format!("pattern {name}"),
        }
    }
}

fn population(cfg: &VerifyConfig) -> Vec<Subject> {
    let mut out = Vec::new();
    for class in BasicClass::SUMMANDS {
        for a in &cfg.grid {
            let betas = if class.has_beta() { cfg.grid.clone() } else { vec![Rational::zero()] };
            for b in betas {
                let spec = FamilySpec::new(class, a.clone(), b).expect("grid specs are valid");
                out.push(Subject::Family(spec));
            }
        }
    }
    let mut pairs = example_pairs();
    for a1 in &cfg.grid {
        for a2 in &cfg.grid {
            pairs.push((a1.clone(), a2.clone()));
        }
    }
    out.extend(pairs.into_iter().map(|(a1, a2)| Subject::Example(ExampleSpec { a1, a2 })));
    out.extend((0..cfg.seeds).map(|i| Subject::Random(cfg.base_seed.wrapping_add(i))));
    out.extend(structured_patterns().into_iter().map(|(n, a)| Subject::Pattern(n, a)));
    out
}

type Outcome = Result<(), String>;

#[derive(Default)]
struct Evaluation {
    records: Vec<(CheckId, Outcome)>,
    notes: Vec<(NoteKey, String)>,
    /// For F1 members: (Kaehler defect is zero, R is zero).
    kaehler: Option<(bool, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum NoteKey {
    Relation(BasicClass, &'static str),
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn compare_table(
    rep: &CurvatureReport<Rational>,
    exp: &ExpectedCurvature<Rational>,
) -> Outcome {
    for [i, j, k, l] in indices4() {
        let (c, e) = (&rep.r[(i, j, k, l)], &exp.r[(i, j, k, l)]);
        if c != e {
            return Err(format!("R_{i}{j}{k}{l} computed {c}, tabulated {e}"));
        }
    }
    let tensors: [(&str, &Tensor2<Rational>, &Tensor2<Rational>); 2] =
        [("rho", &rep.rho, &exp.rho), ("rho*", &rep.rho_star, &exp.rho_star)];
    for (name, c, e) in tensors {
        for ((i, j), v) in c.entries() {
            if *v != e[(i, j)] {
                return Err(format!("{name}_{i}{j} computed {v}, tabulated {}", e[(i, j)]));
            }
        }
    }
    let scalars = [
        ("tau", &rep.tau, &exp.tau),
        ("tau*", &rep.tau_star, &exp.tau_star),
        ("k01", &rep.sectional.k01, &exp.sectional.k01),
        ("k02", &rep.sectional.k02, &exp.sectional.k02),
        ("k12", &rep.sectional.k12, &exp.sectional.k12),
    ];
    for (name, c, e) in scalars {
        if c != e {
            return Err(format!("{name} computed {c}, tabulated {e}"));
        }
    }
    Ok(())
}

fn expected_labels(class: BasicClass) -> Option<EinsteinLabel> {
    match class {
        BasicClass::F1 => Some(EinsteinLabel::PhiEinstein),
        BasicClass::F4 => Some(EinsteinLabel::EtaEinstein),
        BasicClass::F5 => Some(EinsteinLabel::Einstein),
        BasicClass::F8 | BasicClass::F9 => Some(EinsteinLabel::VEinstein),
        _ => None,
    }
}

fn common_checks(
    alg: &LieAlgebra<Rational>,
    decomp: &ClassDecomposition<Rational>,
    rep: &CurvatureReport<Rational>,
    tol: &Tolerance,
) -> Vec<(CheckId, Outcome)> {
    let closed = compute_f_closed_form(alg);
    let oracle = compute_f_oracle(alg);
    let fsym = check_f_symmetries(&closed);
    let flags = special_structures(alg, tol);
    vec![
        (
            CheckId::ConnectionIdentities,
            ensure(
                rep.connection.torsion_defect(alg).is_zero() && rep.connection.metric_defect().is_zero(),
                || "connection is not torsion-free and metric".into(),
            ),
        ),
        (
            CheckId::CurvatureSymmetries,
            ensure(rep.symmetry_defect.max().is_zero(), || {
                format!("curvature-like defect {}", rep.symmetry_defect.max())
            }),
        ),
        (
            CheckId::FIdentities,
            ensure(
                fsym.max().is_zero()
                    && decomp.components.values().all(|c| check_f_symmetries(c).max().is_zero()),
                || format!("F identity defect {}", fsym.max()),
            ),
        ),
        (
            CheckId::OracleEquivalence,
            ensure(closed == oracle, || {
                let bad = closed
                    .0
                    .entries()
                    .find(|(idx, v)| **v != oracle.0[(idx[0], idx[1], idx[2])])
                    .map(|(idx, v)| {
                        format!(
                            "F_{}{}{} closed form {v}, via connection {}",
                            idx[0], idx[1], idx[2], oracle.0[(idx[0], idx[1], idx[2])]
                        )
                    });
                bad.unwrap_or_default()
            }),
        ),
        (
            CheckId::DecompositionCompleteness,
            ensure(decomp.sum() == closed, || "sum of class components differs from F".into()),
        ),
        (
            CheckId::CurvatureIdentity,
            ensure(rep.r3_defect.is_zero(), || format!("defect {}", rep.r3_defect)),
        ),
        (
            CheckId::SpecialStructureRoutes,
            ensure(flags.all_agree(), || {
                let bad: Vec<_> = flags
                    .named()
                    .iter()
                    .filter(|(_, r)| !r.agree())
                    .map(|(n, r)| format!("{n}: direct {}, by class {}", r.direct, r.by_class))
                    .collect();
                bad.join("; ")
            }),
        ),
    ]
}

fn evaluate_family(
    spec: &FamilySpec<Rational>,
    cfg: &VerifyConfig,
    tol: &Tolerance,
) -> Evaluation {
    let alg = construct_class_family(spec).expect("valid spec");
    let decomp = classify(&alg, tol);
    let rep = analyze(&alg, tol);
    let mut records = common_checks(&alg, &decomp, &rep, tol);
    let mut notes = Vec::new();
    let mut kaehler = None;
    let degenerate = spec.is_degenerate();
    let class = spec.class;

    let want = if degenerate { BasicClass::F0 } else { class };
    records.push((
        CheckId::FamilyMembership,
        ensure(decomp.membership.len() == 1 && decomp.membership.contains(&want), || {
            format!("membership {}, expected {{{want}}}", decomp.membership_label())
        }),
    ));

    let mut expected = expected_curvature(spec).expect("valid spec");
    if cfg.corrupt_reference && class == BasicClass::F5 {
        expected.tau = expected.tau + Rational::from_int(1);
    }
    records.push((CheckId::CurvatureTable, compare_table(&rep, &expected)));

    if degenerate {
        return Evaluation { records, notes, kaehler };
    }

    let peer = (class == BasicClass::F8).then(|| {
        let s = FamilySpec::new(BasicClass::F9, spec.alpha.clone(), Rational::zero()).expect("valid");
        analyze(&construct_class_family(&s).expect("valid"), tol)
    });
    for claim in Claim::ALL {
        if !claim.applies_to(class) {
            continue;
        }
        let ok = claim.holds(spec, &rep, peer.as_ref());
        if claim.is_ambiguous() {
            if class == BasicClass::F1 {
                kaehler = Some((rep.kaehler_defect.is_zero(), rep.r.max_abs().is_zero()));
            }
            continue;
        }
        records.push((
            CheckId::Claim(claim),
            ensure(ok, || {
                format!(
                    "tau {}, tau* {}, k = ({}, {}, {}), max|rho*| {}, phi-killed defect {}",
                    rep.tau,
                    rep.tau_star,
                    rep.sectional.k01,
                    rep.sectional.k02,
                    rep.sectional.k12,
                    rep.rho_star.max_abs(),
                    rep.phi_killed_defect
                )
            }),
        ));
    }

    match curvature_template_check(&decomp, &rep) {
        Ok(t) => {
            records.push((
                CheckId::CurvatureTemplates,
                ensure(t.curvature.is_zero(), || format!("max |R - template| = {}", t.curvature)),
            ));
            records.push((
                CheckId::RicciTemplates,
                ensure(t.ricci.is_zero(), || format!("max |rho - template| = {}", t.ricci)),
            ));
        }
        Err(e) => {
            records.push((CheckId::CurvatureTemplates, Err(e.to_string())));
        }
    }

    if let Some(label) = expected_labels(class) {
        records.push((
            CheckId::EinsteinLabels,
            ensure(rep.einstein.has(label), || {
                let got: Vec<_> = rep.einstein.labels.iter().map(ToString::to_string).collect();
                format!("expected {label}, got [{}]", got.join(", "))
            }),
        ));
    }

    for rel in parameter_relations(spec, &decomp.params) {
        match rel.status {
            RelationStatus::Agrees => records.push((CheckId::ParameterRelations, Ok(()))),
            RelationStatus::SignFlipped => {
                records.push((CheckId::ParameterRelations, Ok(())));
                notes.push((
                    NoteKey::Relation(class, rel.parameter),
                    format!(
                        "{class}: stated {} predicts {} = {} but the family has {}; the recovered relation has the opposite sign",
                        rel.stated, rel.parameter, rel.predicted, rel.actual
                    ),
                ));
            }
            RelationStatus::Mismatch => records.push((
                CheckId::ParameterRelations,
                Err(format!(
                    "stated {} predicts {}, family has {}",
                    rel.stated, rel.predicted, rel.actual
                )),
            )),
        }
    }
    Evaluation { records, notes, kaehler }
}

fn evaluate_example(spec: &ExampleSpec<Rational>, tol: &Tolerance) -> Evaluation {
    let alg = construct_example(spec);
    let decomp = classify(&alg, tol);
    let rep = analyze(&alg, tol);
    let mut records = common_checks(&alg, &decomp, &rep, tol);
    let (a1, a2) = (spec.a1.clone(), spec.a2.clone());
    let f = compute_f_closed_form(&alg);
    let two = Rational::from_int(2);
    let four = Rational::from_int(4);
    let a1sq = a1.clone() * a1.clone();

    let mut problems = Vec::new();
    let mut want = |ok: bool, what: String| {
        if !ok {
            problems.push(what);
        }
    };
    want(*f.get(0, 1, 1) == -two.clone() * a2.clone(), format!("F_011 = {}", f.get(0, 1, 1)));
    want(*f.get(1, 0, 2) == a1, format!("F_102 = {}", f.get(1, 0, 2)));
    want(decomp.params.mu == a1, format!("mu = {}", decomp.params.mu));
    want(decomp.params.nu == -two.clone() * a2.clone(), format!("nu = {}", decomp.params.nu));
    want(
        decomp
            .membership
            .iter()
            .all(|c| matches!(c, BasicClass::F9 | BasicClass::F10 | BasicClass::F0)),
        format!("membership {}", decomp.membership_label()),
    );
    want(rep.rho[(0, 0)] == -two.clone() * a1sq.clone(), format!("rho_00 = {}", rep.rho[(0, 0)]));
    want(rep.tau == -two.clone() * a1sq, format!("tau = {}", rep.tau));
    want(
        rep.tau_star == -four * a1.clone() * a2.clone(),
        format!("tau* = {}", rep.tau_star),
    );
    let mu = decomp.params.mu.clone();
    let nu = decomp.params.nu.clone();
    want(rep.tau_star == two * mu * nu, format!("tau* = {} != 2 mu nu", rep.tau_star));
    match &rep.einstein.complex {
        Some(c) => {
            want(c.lambda.is_zero(), format!("lambda_e = {}", c.lambda));
            want(c.mu == -rep.tau_star.half(), format!("mu_e = {}", c.mu));
            want(
                c.nu == rep.tau.clone() + rep.tau_star.half(),
                format!("nu_e = {}", c.nu),
            );
        }
        None => want(false, "not eta-complex-Einstein".into()),
    }
    if a2.is_zero() && !a1.is_zero() {
        match curvature_template_check(&decomp, &rep) {
            Ok(t) if t.class == BasicClass::F9 => {
                want(t.curvature.is_zero(), format!("F9 template defect {}", t.curvature))
            }
            other => want(false, format!("F9 template unavailable: {other:?}")),
        }
    }
    if a1.is_zero() {
        want(rep.r.max_abs().is_zero(), "R != 0 with a1 = 0".into());
    }
    records.push((
        CheckId::ExampleFamily,
        if problems.is_empty() { Ok(()) } else { Err(problems.join("; ")) },
    ));
    Evaluation { records, ..Evaluation::default() }
}

fn evaluate_algebra(alg: &LieAlgebra<Rational>, tol: &Tolerance, witness: bool) -> Evaluation {
    let decomp = classify(alg, tol);
    let rep = analyze(alg, tol);
    let mut records = common_checks(alg, &decomp, &rep, tol);
    if witness {
        let flags = special_structures(alg, tol);
        let p = &decomp.params;
        records.push((
            CheckId::KillingMetricWitness,
            ensure(
                flags.g_killing.direct
                    && flags.g_killing.by_class
                    && p.lambda.twice() == -p.nu.clone(),
                || format!("g-Killing {:?}, lambda {}, nu {}", flags.g_killing, p.lambda, p.nu),
            ),
        ));
    }
    Evaluation { records, ..Evaluation::default() }
}

fn evaluate(subject: &Subject, cfg: &VerifyConfig, tol: &Tolerance) -> Evaluation {
    match subject {
        Subject::Family(spec) => evaluate_family(spec, cfg, tol),
        Subject::Example(spec) => evaluate_example(spec, tol),
        Subject::Random(seed) => match random_lie_algebra(*seed, cfg.bound) {
            Ok(alg) => evaluate_algebra(&alg, tol, false),
            Err(e) => Evaluation {
                records: vec![(CheckId::OracleEquivalence, Err(e.to_string()))],
                ..Evaluation::default()
            },
        },
        Subject::Pattern(name, alg) => evaluate_algebra(alg, tol, name == "g-killing"),
    }
}

/// Runs every check on the population described by `cfg`.
pub fn run(cfg: &VerifyConfig) -> VerifyReport {
    let tol = Tolerance::new(0.0).expect("zero is a valid tolerance");
    let subjects = population(cfg);
    let evaluations: Vec<(String, Evaluation)> = subjects
        .par_iter()
        .map(|s| (s.label(), evaluate(s, cfg, &tol)))
        .collect();

    let mut outcomes: BTreeMap<CheckId, CheckOutcome> = BTreeMap::new();
    let mut relation_notes: BTreeMap<NoteKey, (String, usize)> = BTreeMap::new();
    let (mut f1_members, mut kaehler_zero, mut kaehler_zero_curved) = (0, 0, 0);
    for (label, ev) in &evaluations {
        for (id, res) in &ev.records {
            let entry = outcomes.entry(*id).or_insert_with(|| CheckOutcome {
                id: *id,
                name: id.to_string(),
                evaluated: 0,
                failures: 0,
                first_failure: None,
            });
            entry.evaluated += 1;
            if let Err(msg) = res {
                entry.failures += 1;
                entry.first_failure.get_or_insert_with(|| format!("{label}: {msg}"));
            }
        }
        for (key, text) in &ev.notes {
            relation_notes
                .entry(key.clone())
                .or_insert_with(|| (format!("{label}: {text}"), 0))
                .1 += 1;
        }
        if let Some((zero, flat)) = ev.kaehler {
            f1_members += 1;
            kaehler_zero += usize::from(zero);
            kaehler_zero_curved += usize::from(zero && !flat);
        }
    }

    let mut notes: Vec<Note> = relation_notes
        .into_values()
        .map(|(text, n)| Note {
            kind: NoteKind::DocumentedDiscrepancy,
            text: format!("{text} (observed on {n} grid points)"),
        })
        .collect();
    if f1_members > 0 {
        notes.push(Note {
            kind: NoteKind::Ambiguity,
            text: format!(
                "'{}' not enforced: R(x,y,phi z,phi w) = -R(x,y,z,w) holds on {kaehler_zero} of {f1_members} F1 members, {kaehler_zero_curved} of them non-flat",
                Claim::OnlyF1Kaehler.name(),
            ),
        });
    }
    notes.push(Note {
        kind: NoteKind::Ambiguity,
        text: format!(
            "'{}' is read without its 'for alpha != beta' qualifier",
            Claim::F11VanishingStarScalarIffProductZero.name()
        ),
    });

    VerifyReport {
        subjects: evaluations.len(),
        checks: outcomes.into_values().collect(),
        notes,
    }
}
