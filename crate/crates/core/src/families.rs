//! Named algebras: one family per basic class, the two-parameter example
//! family, seeded random algebras and the published curvature tables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::lie::{jacobi_close, FreeCoefficients, LieAlgebra, StructureConstants};
use crate::scalar::{Rational, Scalar, Tolerance};
use crate::structure::{BasicClass, ClassParams};
use crate::tensor::{zero_vector, Tensor2, Tensor4};
use crate::curvature::SectionalCurvatures;
use crate::Error;

pub const MAX_DRAWS: usize = 1000;

/// One algebra of a basic-class family.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec<T> {
    pub class: BasicClass,
    pub alpha: T,
    pub beta: T,
}

impl<T: Scalar> FamilySpec<T> {
    pub fn new(class: BasicClass, alpha: T, beta: T) -> Result<Self, Error> {
        let spec = FamilySpec { class, alpha, beta };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.class == BasicClass::F0 {
            return Err(Error::InvalidSpec("F0 has no family; use the abelian algebra".into()));
        }
        if !self.class.has_beta() && !self.beta.is_zero() {
            return Err(Error::InvalidSpec(format!(
                "{} takes a single parameter, got beta = {}",
                self.class, self.beta
            )));
        }
        Ok(())
    }

    /// Whether all parameters vanish, giving the abelian algebra.
    pub fn is_degenerate(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }
}

/// The algebra whose only nonzero class component is `spec.class`.
pub fn construct_class_family<T: Scalar>(spec: &FamilySpec<T>) -> Result<LieAlgebra<T>, Error> {
    spec.validate()?;
    let a = spec.alpha.clone();
    let b = spec.beta.clone();
    let z = T::zero;
    let (e01, e02, e12) = match spec.class {
        BasicClass::F1 => (zero_vector(), zero_vector(), [z(), a, b]),
        BasicClass::F4 => ([z(), z(), a.clone()], [z(), -a, z()], zero_vector()),
        BasicClass::F5 => ([z(), a.clone(), z()], [z(), z(), a], zero_vector()),
        BasicClass::F8 => (
            [z(), z(), a.clone()],
            [z(), a.clone(), z()],
            [-a.twice(), z(), z()],
        ),
        BasicClass::F9 => ([z(), a.clone(), z()], [z(), z(), -a], zero_vector()),
        BasicClass::F10 => ([z(), z(), a.clone()], [z(), a, z()], zero_vector()),
        BasicClass::F11 => ([a, z(), z()], [b, z(), z()], zero_vector()),
        BasicClass::F0 => unreachable!("rejected by validate"),
    };
    Ok(LieAlgebra::new_unchecked(StructureConstants::from_brackets(e01, e02, e12)))
}

/// Parameters of the two-parameter example family.
#[derive(Clone, Debug, PartialEq)]
pub struct ExampleSpec<T> {
    pub a1: T,
    pub a2: T,
}

/// `[E0,E1] = −a1E1 − a2E2`, `[E0,E2] = −a2E1 + a1E2`, `[E1,E2] = 0`.
pub fn construct_example<T: Scalar>(spec: &ExampleSpec<T>) -> LieAlgebra<T> {
    let (a1, a2) = (spec.a1.clone(), spec.a2.clone());
    LieAlgebra::new_unchecked(StructureConstants::from_brackets(
        [T::zero(), -a1.clone(), -a2.clone()],
        [T::zero(), -a2, a1],
        zero_vector(),
    ))
}

fn draw(rng: &mut ChaCha8Rng, bound: u32) -> Rational {
    let b = i64::from(bound);
    let numer = rng.gen_range(-b..=b);
    let denom = rng.gen_range(1..=b.max(1));
    Rational::from_ratio(numer, denom)
}

/// A Lie algebra from six seeded free coefficients with numerators in
/// `[−bound, bound]` and denominators in `[1, bound]`, closed under Jacobi.
pub fn random_lie_algebra(seed: u64, bound: u32) -> Result<LieAlgebra<Rational>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_DRAWS {
        let free = FreeCoefficients {
            c1_12: draw(&mut rng, bound),
            c2_12: draw(&mut rng, bound),
            c1_01: draw(&mut rng, bound),
            c2_02: draw(&mut rng, bound),
            c0_01: draw(&mut rng, bound),
            c0_02: draw(&mut rng, bound),
        };
        match jacobi_close(&free) {
            Ok(alg) => return Ok(alg),
            Err(Error::ZeroDenominator(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ExhaustedRetries(MAX_DRAWS))
}

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn checked(e01: [i64; 3], e02: [i64; 3], e12: [i64; 3]) -> LieAlgebra<Rational> {
    let c = StructureConstants::from_brackets(e01.map(q), e02.map(q), e12.map(q));
    LieAlgebra::new(c, &Tolerance::default()).expect("pattern satisfies Jacobi")
}

/// Hand-picked algebras the closure formula cannot produce.
pub fn structured_patterns() -> Vec<(String, LieAlgebra<Rational>)> {
    let mut out = vec![
        ("abelian".to_string(), LieAlgebra::abelian()),
        ("heisenberg".to_string(), checked([0, 0, 0], [0, 0, 0], [1, 0, 0])),
        ("g-killing".to_string(), checked([0, 0, -2], [0, -2, 0], [2, 0, 0])),
        ("gtilde-killing".to_string(), checked([0, -1, 0], [0, 0, 1], [1, 0, 0])),
        ("abelian-phi".to_string(), checked([0, 0, 0], [0, 0, 0], [2, 1, -1])),
        ("example(1,3)".to_string(), construct_example(&ExampleSpec { a1: q(1), a2: q(3) })),
    ];
    for class in BasicClass::SUMMANDS {
        let beta = if class.has_beta() { q(2) } else { q(0) };
        let spec = FamilySpec::new(class, q(1), beta).expect("valid");
        out.push((format!("{class}(1,{})", spec.beta), construct_class_family(&spec).expect("valid")));
    }
    out
}

/// Tabulated curvature of a family, with every unlisted entry zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedCurvature<T> {
    pub r: Tensor4<T>,
    pub rho: Tensor2<T>,
    pub rho_star: Tensor2<T>,
    pub tau: T,
    pub tau_star: T,
    pub sectional: SectionalCurvatures<T>,
}

impl<T: Scalar> ExpectedCurvature<T> {
    fn zero() -> Self {
        ExpectedCurvature {
            r: Tensor4::zeros(),
            rho: Tensor2::zeros(),
            rho_star: Tensor2::zeros(),
            tau: T::zero(),
            tau_star: T::zero(),
            sectional: SectionalCurvatures {
                k01: T::zero(),
                k02: T::zero(),
                k12: T::zero(),
            },
        }
    }

    /// Sets `R_ijkl` and every entry related to it by the curvature
    /// symmetries.
    fn set_r(&mut self, [i, j, k, l]: [usize; 4], v: T) {
        for ([a, b, c, d], sign) in [
            ([i, j, k, l], 1),
            ([j, i, k, l], -1),
            ([i, j, l, k], -1),
            ([j, i, l, k], 1),
        ] {
            let w = if sign > 0 { v.clone() } else { -v.clone() };
            self.r[(a, b, c, d)] = w.clone();
            self.r[(c, d, a, b)] = w;
        }
    }

    fn set_sym(t: &mut Tensor2<T>, i: usize, j: usize, v: T) {
        t[(j, i)] = v.clone();
        t[(i, j)] = v;
    }
}

/// The published curvature row of a family evaluated at `(α, β)`.
pub fn expected_curvature<T: Scalar>(spec: &FamilySpec<T>) -> Result<ExpectedCurvature<T>, Error> {
    spec.validate()?;
    let a2 = spec.alpha.clone() * spec.alpha.clone();
    let b2 = spec.beta.clone() * spec.beta.clone();
    let ab = spec.alpha.clone() * spec.beta.clone();
    let n = |k: i64, v: &T| T::from_int(k) * v.clone();
    let mut e = ExpectedCurvature::zero();
    match spec.class {
        BasicClass::F1 => {
            let d = a2 - b2;
            e.set_r([1, 2, 1, 2], d.clone());
            e.rho[(1, 1)] = d.clone();
            e.rho[(2, 2)] = -d.clone();
            ExpectedCurvature::set_sym(&mut e.rho_star, 1, 2, d.clone());
            e.tau = n(2, &d);
            e.sectional.k12 = d;
        }
        BasicClass::F4 => {
            e.set_r([0, 1, 0, 1], -a2.clone());
            e.set_r([0, 2, 0, 2], a2.clone());
            e.rho[(0, 0)] = n(2, &a2);
            e.rho[(1, 1)] = a2.clone();
            e.rho[(2, 2)] = -a2.clone();
            e.tau = n(4, &a2);
            e.sectional.k01 = a2.clone();
            e.sectional.k02 = a2;
        }
        BasicClass::F5 => {
            let m = -a2;
            e.set_r([0, 1, 0, 1], -m.clone());
            e.set_r([0, 2, 0, 2], m.clone());
            e.set_r([1, 2, 1, 2], m.clone());
            e.rho[(0, 0)] = n(2, &m);
            e.rho[(1, 1)] = n(2, &m);
            e.rho[(2, 2)] = n(-2, &m);
            ExpectedCurvature::set_sym(&mut e.rho_star, 1, 2, m.clone());
            e.tau = n(6, &m);
            e.sectional = SectionalCurvatures {
                k01: m.clone(),
                k02: m.clone(),
                k12: m,
            };
        }
        BasicClass::F8 | BasicClass::F9 => {
            e.set_r([0, 1, 0, 1], a2.clone());
            e.set_r([0, 2, 0, 2], -a2.clone());
            e.set_r([1, 2, 1, 2], a2.clone());
            e.rho[(0, 0)] = n(-2, &a2);
            ExpectedCurvature::set_sym(&mut e.rho_star, 1, 2, a2.clone());
            e.tau = n(-2, &a2);
            e.sectional = SectionalCurvatures {
                k01: -a2.clone(),
                k02: -a2.clone(),
                k12: a2,
            };
        }
        BasicClass::F10 => {}
        BasicClass::F11 => {
            e.set_r([0, 1, 0, 1], a2.clone());
            e.set_r([0, 2, 0, 2], b2.clone());
            e.set_r([0, 1, 2, 0], -ab.clone());
            e.rho[(1, 1)] = -a2.clone();
            e.rho[(2, 2)] = -b2.clone();
            ExpectedCurvature::set_sym(&mut e.rho, 1, 2, -ab.clone());
            let d = b2.clone() - a2.clone();
            e.rho[(0, 0)] = d.clone();
            e.tau = n(2, &d);
            e.tau_star = n(-2, &ab);
            e.sectional.k01 = -a2;
            e.sectional.k02 = b2;
        }
        BasicClass::F0 => unreachable!("rejected by validate"),
    }
    Ok(e)
}

/// Outcome of comparing a recovered family parameter with a stated
/// parameter relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelationStatus {
    Agrees,
    SignFlipped,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParameterRelation<T> {
    pub class: BasicClass,
    /// `"alpha"` or `"beta"`.
    pub parameter: &'static str,
    /// Human-readable form of the stated relation.
    pub stated: &'static str,
    /// The family parameter actually used.
    pub actual: T,
    /// The value the stated relation predicts from the class parameters.
    pub predicted: T,
    pub status: RelationStatus,
}

/// Stated relations between family parameters and class parameters.
pub fn parameter_relations<T: Scalar>(
    spec: &FamilySpec<T>,
    params: &ClassParams<T>,
) -> Vec<ParameterRelation<T>> {
    let half = |v: &T| v.half();
    let rows: Vec<(&'static str, &'static str, T, T)> = match spec.class {
        BasicClass::F1 => vec![
            ("alpha", "alpha = theta1/2", spec.alpha.clone(), half(&params.theta1)),
            ("beta", "beta = theta2/2", spec.beta.clone(), half(&params.theta2)),
        ],
        BasicClass::F4 => vec![("alpha", "alpha = theta0/2", spec.alpha.clone(), half(&params.theta0))],
        BasicClass::F5 => vec![(
            "alpha",
            "alpha = -theta*0/2",
            spec.alpha.clone(),
            -half(&params.theta_star0),
        )],
        BasicClass::F8 => vec![("alpha", "alpha = -lambda", spec.alpha.clone(), -params.lambda.clone())],
        BasicClass::F9 => vec![("alpha", "alpha = -mu", spec.alpha.clone(), -params.mu.clone())],
        BasicClass::F10 => vec![("alpha", "alpha = nu/2", spec.alpha.clone(), half(&params.nu))],
        BasicClass::F11 => vec![
            ("alpha", "alpha = -omega2", spec.alpha.clone(), -params.omega2.clone()),
            ("beta", "beta = omega1", spec.beta.clone(), params.omega1.clone()),
        ],
        BasicClass::F0 => vec![],
    };
    rows.into_iter()
        .map(|(parameter, stated, actual, predicted)| {
            let status = if predicted == actual {
                RelationStatus::Agrees
            } else if predicted == -actual.clone() {
                RelationStatus::SignFlipped
            } else {
                RelationStatus::Mismatch
            };
            ParameterRelation {
                class: spec.class,
                parameter,
                stated,
                actual,
                predicted,
                status,
            }
        })
        .collect()
}
