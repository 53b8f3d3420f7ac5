//! The fundamental tensor `F`, Lee forms, basic-class decomposition and the
//! special-structure predicates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::connection::levi_civita;
use crate::contact::AcbStructure;
use crate::lie::LieAlgebra;
use crate::scalar::{max_abs, Scalar, Tolerance};
use crate::tensor::{basis_vector, indices3, SymTensor2, Tensor3, Vector, DIM};
use crate::Error;

/// `F_ijk = F(E_i, E_j, E_k) = g((∇_{E_i}φ)E_j, E_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FTensor<T>(pub Tensor3<T>);

impl<T: Scalar> FTensor<T> {
    pub fn zeros() -> Self {
        FTensor(Tensor3::zeros())
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &T {
        &self.0[(i, j, k)]
    }

    /// Sets `F_ijk` and `F_ikj`.
    pub fn set_sym(&mut self, i: usize, j: usize, k: usize, v: T) {
        self.0[(i, k, j)] = v.clone();
        self.0[(i, j, k)] = v;
    }

    pub fn max_abs(&self) -> T {
        self.0.max_abs()
    }

    /// `F(x, y, z)` for arbitrary vectors.
    pub fn eval(&self, x: &Vector<T>, y: &Vector<T>, z: &Vector<T>) -> T {
        indices3().fold(T::zero(), |acc, [i, j, k]| {
            acc + x[i].clone() * y[j].clone() * z[k].clone() * self.0[(i, j, k)].clone()
        })
    }

    pub fn nonzero(&self, tol: &Tolerance) -> Vec<([usize; 3], T)> {
        self.0
            .entries()
            .filter(|(_, v)| !tol.is_zero(*v))
            .map(|(idx, v)| (idx, v.clone()))
            .collect()
    }
}

impl<T: Scalar> std::ops::Add for &FTensor<T> {
    type Output = FTensor<T>;
    fn add(self, rhs: Self) -> FTensor<T> {
        FTensor(&self.0 + &rhs.0)
    }
}

/// Closed form of `F` in terms of the structure constants.
pub fn compute_f_closed_form<T: Scalar>(alg: &LieAlgebra<T>) -> FTensor<T> {
    let c = |k, i, j| alg.c(k, i, j).clone();
    let mut f = FTensor::zeros();
    let (c0_12, c2_01, c1_02) = (c(0, 1, 2), c(2, 0, 1), c(1, 0, 2));

    f.set_sym(1, 1, 1, c(1, 1, 2).twice());
    f.set_sym(1, 2, 2, c(1, 1, 2).twice());
    f.set_sym(2, 1, 1, -c(2, 1, 2).twice());
    f.set_sym(2, 2, 2, -c(2, 1, 2).twice());
    f.set_sym(1, 2, 0, -c(1, 0, 1));
    f.set_sym(0, 2, 0, -c(0, 0, 1));
    f.set_sym(2, 1, 0, -c(2, 0, 2));
    f.set_sym(0, 1, 0, c(0, 0, 2));
    f.set_sym(1, 1, 0, (c0_12.clone() - c2_01.clone() + c1_02.clone()).half());
    f.set_sym(2, 2, 0, (c0_12.clone() + c2_01.clone() - c1_02.clone()).half());
    let nu = c0_12 + c2_01 + c1_02;
    f.set_sym(0, 1, 1, nu.clone());
    f.set_sym(0, 2, 2, nu);
    f
}

/// `F` from its definition, through the Levi-Civita connection:
/// `F_ijk = g(∇_{E_i}(φE_j) − φ(∇_{E_i}E_j), E_k)`.
pub fn compute_f_oracle<T: Scalar>(alg: &LieAlgebra<T>) -> FTensor<T> {
    let s = AcbStructure::<T>::standard();
    let conn = levi_civita(alg);
    let mut out = Tensor3::zeros();
    for i in 0..DIM {
        let ei = basis_vector(i);
        for j in 0..DIM {
            let a = conn.nabla(&ei, &s.phi_basis(j));
            let b = s.phi_of(&conn.nabla_basis(i, j));
            let d: Vector<T> = std::array::from_fn(|m| a[m].clone() - b[m].clone());
            for k in 0..DIM {
                out[(i, j, k)] = s.g.form(&d, &basis_vector(k));
            }
        }
    }
    FTensor(out)
}

/// Largest violation of each defining identity of `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct FSymmetryDefect<T> {
    /// `F(x,y,z) − F(x,z,y)`.
    pub last_pair: T,
    /// `F(x,y,z) − F(x,φy,φz) − η(y)F(x,ξ,z) − η(z)F(x,y,ξ)`.
    pub phi_compat: T,
}

impl<T: Scalar> FSymmetryDefect<T> {
    pub fn max(&self) -> T {
        max_abs([&self.last_pair, &self.phi_compat])
    }
}

pub fn check_f_symmetries<T: Scalar>(f: &FTensor<T>) -> FSymmetryDefect<T> {
    let s = AcbStructure::<T>::standard();
    let xi = s.xi_vector();
    let mut sym = Vec::with_capacity(27);
    let mut compat = Vec::with_capacity(27);
    for [i, j, k] in indices3() {
        let (x, y, z) = (basis_vector(i), basis_vector(j), basis_vector(k));
        let v = f.get(i, j, k).clone();
        sym.push(v.clone() - f.get(i, k, j).clone());
        let rhs = f.eval(&x, &s.phi_of(&y), &s.phi_of(&z))
            + s.eta_of(&y) * f.eval(&x, &xi, &z)
            + s.eta_of(&z) * f.eval(&x, &y, &xi);
        compat.push(v - rhs);
    }
    FSymmetryDefect {
        last_pair: max_abs(&sym),
        phi_compat: max_abs(&compat),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeeForms<T> {
    pub theta: Vector<T>,
    pub theta_star: Vector<T>,
    pub omega: Vector<T>,
}

pub fn lee_forms<T: Scalar>(f: &FTensor<T>) -> LeeForms<T> {
    let g = |i, j, k| f.get(i, j, k).clone();
    LeeForms {
        theta: [
            g(1, 1, 0) - g(2, 2, 0),
            g(1, 1, 1) - g(2, 2, 1),
            g(1, 1, 2) - g(2, 1, 1),
        ],
        theta_star: [
            g(1, 2, 0) + g(2, 1, 0),
            g(1, 1, 2) + g(2, 1, 1),
            g(1, 1, 1) + g(2, 2, 1),
        ],
        omega: [T::zero(), g(0, 0, 1), g(0, 0, 2)],
    }
}

/// The basic classes that survive in dimension 3, plus `F0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BasicClass {
    F0,
    F1,
    F4,
    F5,
    F8,
    F9,
    F10,
    F11,
}

impl BasicClass {
    /// The seven summands of the decomposition.
    pub const SUMMANDS: [BasicClass; 7] = [
        BasicClass::F1,
        BasicClass::F4,
        BasicClass::F5,
        BasicClass::F8,
        BasicClass::F9,
        BasicClass::F10,
        BasicClass::F11,
    ];

    pub fn index(self) -> u8 {
        match self {
            BasicClass::F0 => 0,
            BasicClass::F1 => 1,
            BasicClass::F4 => 4,
            BasicClass::F5 => 5,
            BasicClass::F8 => 8,
            BasicClass::F9 => 9,
            BasicClass::F10 => 10,
            BasicClass::F11 => 11,
        }
    }

    /// Whether the class carries a second parameter `β`.
    pub fn has_beta(self) -> bool {
        matches!(self, BasicClass::F1 | BasicClass::F11)
    }
}

impl fmt::Display for BasicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.index())
    }
}

impl std::str::FromStr for BasicClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let n = s
            .strip_prefix(['F', 'f'])
            .unwrap_or(s)
            .parse::<u8>()
            .map_err(|_| format!("unknown class `{s}`"))?;
        [BasicClass::F0]
            .into_iter()
            .chain(BasicClass::SUMMANDS)
            .find(|c| c.index() == n)
            .ok_or_else(|| format!("unknown class `{s}`"))
    }
}

pub fn membership_label(m: &BTreeSet<BasicClass>) -> String {
    let names: Vec<String> = m.iter().map(ToString::to_string).collect();
    format!("{{{}}}", names.join(","))
}

/// `(θ1, θ2, θ0, θ*0, λ, μ, ν, ω1, ω2)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassParams<T> {
    pub theta1: T,
    pub theta2: T,
    pub theta0: T,
    pub theta_star0: T,
    pub lambda: T,
    pub mu: T,
    pub nu: T,
    pub omega1: T,
    pub omega2: T,
}

impl<T: Scalar> ClassParams<T> {
    pub fn named(&self) -> [(&'static str, &T); 9] {
        [
            ("theta1", &self.theta1),
            ("theta2", &self.theta2),
            ("theta0", &self.theta0),
            ("theta*0", &self.theta_star0),
            ("lambda", &self.lambda),
            ("mu", &self.mu),
            ("nu", &self.nu),
            ("omega1", &self.omega1),
            ("omega2", &self.omega2),
        ]
    }

    /// The component of `F` in one basic class.
    pub fn component(&self, class: BasicClass) -> FTensor<T> {
        let mut f = FTensor::zeros();
        match class {
            BasicClass::F0 => {}
            BasicClass::F1 => {
                f.set_sym(1, 1, 1, self.theta1.clone());
                f.set_sym(1, 2, 2, self.theta1.clone());
                f.set_sym(2, 1, 1, -self.theta2.clone());
                f.set_sym(2, 2, 2, -self.theta2.clone());
            }
            BasicClass::F4 => {
                let h = self.theta0.half();
                f.set_sym(1, 0, 1, h.clone());
                f.set_sym(2, 0, 2, -h);
            }
            BasicClass::F5 => {
                let h = self.theta_star0.half();
                f.set_sym(1, 0, 2, h.clone());
                f.set_sym(2, 0, 1, h);
            }
            BasicClass::F8 => {
                f.set_sym(1, 0, 1, self.lambda.clone());
                f.set_sym(2, 0, 2, self.lambda.clone());
            }
            BasicClass::F9 => {
                f.set_sym(1, 0, 2, self.mu.clone());
                f.set_sym(2, 0, 1, -self.mu.clone());
            }
            BasicClass::F10 => {
                f.set_sym(0, 1, 1, self.nu.clone());
                f.set_sym(0, 2, 2, self.nu.clone());
            }
            BasicClass::F11 => {
                f.set_sym(0, 0, 1, self.omega1.clone());
                f.set_sym(0, 0, 2, self.omega2.clone());
            }
        }
        f
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassDecomposition<T> {
    pub params: ClassParams<T>,
    /// One entry per summand class, zero tensors included.
    pub components: BTreeMap<BasicClass, FTensor<T>>,
    pub membership: BTreeSet<BasicClass>,
}

impl<T: Scalar> ClassDecomposition<T> {
    /// `Σ_s F_s`.
    pub fn sum(&self) -> FTensor<T> {
        self.components
            .values()
            .fold(FTensor::zeros(), |acc, f| &acc + f)
    }

    pub fn single_class(&self) -> Option<BasicClass> {
        match self.membership.len() {
            1 => self.membership.iter().next().copied(),
            _ => None,
        }
    }

    pub fn membership_label(&self) -> String {
        membership_label(&self.membership)
    }
}

/// Splits `f` into its basic-class components.
pub fn decompose<T: Scalar>(f: &FTensor<T>, tol: &Tolerance) -> Result<ClassDecomposition<T>, Error> {
    let scale = f.max_abs();
    let defect = check_f_symmetries(f);
    if !tol.is_zero_relative(&defect.max(), &scale) {
        return Err(Error::MalformedF(format!(
            "symmetry defect {}, phi-compatibility defect {}",
            defect.last_pair, defect.phi_compat
        )));
    }
    let g = |i, j, k| f.get(i, j, k).clone();
    let params = ClassParams {
        theta1: g(1, 1, 1),
        theta2: -g(2, 1, 1),
        theta0: g(1, 1, 0) - g(2, 2, 0),
        theta_star0: g(1, 2, 0) + g(2, 1, 0),
        lambda: (g(1, 1, 0) + g(2, 2, 0)).half(),
        mu: (g(1, 2, 0) - g(2, 1, 0)).half(),
        nu: g(0, 1, 1),
        omega1: g(0, 0, 1),
        omega2: g(0, 0, 2),
    };
    let components: BTreeMap<_, _> = BasicClass::SUMMANDS
        .into_iter()
        .map(|s| (s, params.component(s)))
        .collect();
    let mut membership: BTreeSet<_> = components
        .iter()
        .filter(|(_, c)| !tol.is_zero_relative(&c.max_abs(), &scale))
        .map(|(s, _)| *s)
        .collect();
    if membership.is_empty() {
        membership.insert(BasicClass::F0);
    }
    Ok(ClassDecomposition {
        params,
        components,
        membership,
    })
}

/// Decomposition of the closed-form `F` of an algebra.
pub fn classify<T: Scalar>(alg: &LieAlgebra<T>, tol: &Tolerance) -> ClassDecomposition<T> {
    decompose(&compute_f_closed_form(alg), tol)
        .expect("closed-form F satisfies the F identities for every Lie algebra")
}

/// A predicate evaluated from its definition and from the class conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteAgreement {
    pub direct: bool,
    pub by_class: bool,
}

impl RouteAgreement {
    pub fn agree(&self) -> bool {
        self.direct == self.by_class
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialStructureFlags {
    pub g_killing: RouteAgreement,
    pub gtilde_killing: RouteAgreement,
    pub phi_biinvariant: RouteAgreement,
    pub phi_abelian: RouteAgreement,
    pub xi_killing: RouteAgreement,
}

impl SpecialStructureFlags {
    pub fn named(&self) -> [(&'static str, RouteAgreement); 5] {
        [
            ("g_killing", self.g_killing),
            ("gtilde_killing", self.gtilde_killing),
            ("phi_biinvariant", self.phi_biinvariant),
            ("phi_abelian", self.phi_abelian),
            ("xi_killing", self.xi_killing),
        ]
    }

    pub fn all_agree(&self) -> bool {
        self.named().iter().all(|(_, r)| r.agree())
    }
}

/// `S_ij = (∇_{E_i}η)E_j + (∇_{E_j}η)E_i`; zero iff `ξ` is Killing.
pub fn kcontact_defect<T: Scalar>(alg: &LieAlgebra<T>) -> SymTensor2<T> {
    let conn = levi_civita(alg);
    // (∇_x η)y = −η(∇_x y) for fields with constant components.
    SymTensor2::from_fn(|i, j| -(conn.gamma[(i, j, 0)].clone() + conn.gamma[(j, i, 0)].clone()))
}

fn ad_invariant<T: Scalar>(alg: &LieAlgebra<T>, form: &SymTensor2<T>, tol: &Tolerance) -> bool {
    let c = alg.constants();
    let scale = c.as_tensor().max_abs();
    indices3().all(|[x, y, z]| {
        let (ex, ez) = (basis_vector::<T>(x), basis_vector::<T>(z));
        let lhs = form.form(&c.bracket(x, y), &ez);
        let rhs = form.form(&ex, &c.bracket(y, z));
        tol.is_zero_relative(&(lhs - rhs), &scale)
    })
}

fn vectors_close<T: Scalar>(a: &Vector<T>, b: &Vector<T>, scale: &T, tol: &Tolerance) -> bool {
    (0..DIM).all(|m| tol.is_zero_relative(&(a[m].clone() - b[m].clone()), scale))
}

/// Evaluates the five special structures twice: from their definitions on
/// the basis and from the class-parameter conditions.
pub fn special_structures<T: Scalar>(alg: &LieAlgebra<T>, tol: &Tolerance) -> SpecialStructureFlags {
    let s = AcbStructure::<T>::standard();
    let c = alg.constants();
    let scale = c.as_tensor().max_abs();
    let pairs = || (0..DIM).flat_map(|x| (0..DIM).map(move |y| (x, y)));

    let g_direct = ad_invariant(alg, &s.g, tol);
    let gt_direct = ad_invariant(alg, &s.associated_metric(), tol);
    let bi_direct = pairs().all(|(x, y)| {
        let lhs = s.phi_of(&c.bracket(x, y));
        let rhs = c.bracket_of(&basis_vector(x), &s.phi_basis(y));
        vectors_close(&lhs, &rhs, &scale, tol)
    });
    let ab_direct = pairs().all(|(x, y)| {
        let lhs = c.bracket_of(&s.phi_basis(x), &s.phi_basis(y));
        vectors_close(&lhs, &c.bracket(x, y), &scale, tol)
    });
    let xi_direct = tol.is_zero_relative(&kcontact_defect(alg).max_abs(), &scale);

    let d = classify(alg, tol);
    let p = &d.params;
    let fscale = compute_f_closed_form(alg).max_abs();
    let zero = |v: &T| tol.is_zero_relative(v, &fscale);
    let eq = |a: T, b: T| zero(&(a - b));
    let two_lambda = p.lambda.twice();
    // Parameters outside F1 ⊕ F8 ⊕ F10.
    let off_k = zero(&p.theta0)
        && zero(&p.theta_star0)
        && zero(&p.mu)
        && zero(&p.omega1)
        && zero(&p.omega2);
    let no_f1 = zero(&p.theta1) && zero(&p.theta2);

    SpecialStructureFlags {
        g_killing: RouteAgreement {
            direct: g_direct,
            by_class: off_k && no_f1 && eq(two_lambda.clone(), -p.nu.clone()),
        },
        gtilde_killing: RouteAgreement {
            direct: gt_direct,
            by_class: no_f1
                && zero(&p.theta0)
                && zero(&p.theta_star0)
                && zero(&p.omega1)
                && zero(&p.omega2)
                && eq(two_lambda.clone(), p.mu.clone())
                && eq(p.mu.clone(), p.nu.clone()),
        },
        phi_biinvariant: RouteAgreement {
            direct: bi_direct,
            by_class: off_k && no_f1 && eq(two_lambda.clone(), p.nu.clone()),
        },
        phi_abelian: RouteAgreement {
            direct: ab_direct,
            by_class: off_k && eq(two_lambda, p.nu.clone()),
        },
        xi_killing: RouteAgreement {
            direct: xi_direct,
            by_class: off_k,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{jacobi_close, FreeCoefficients, StructureConstants};
    use crate::scalar::Rational;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn alg(e01: [i64; 3], e02: [i64; 3], e12: [i64; 3]) -> LieAlgebra<Rational> {
        let c = StructureConstants::from_brackets(e01.map(q), e02.map(q), e12.map(q));
        LieAlgebra::new(c, &tol()).unwrap()
    }

    fn set(classes: &[BasicClass]) -> BTreeSet<BasicClass> {
        classes.iter().copied().collect()
    }

    fn only(f: &FTensor<Rational>, entries: &[([usize; 3], i64)]) {
        for ([i, j, k], v) in f.0.entries() {
            let want = entries
                .iter()
                .find(|(idx, _)| *idx == [i, j, k])
                .map_or(q(0), |(_, w)| q(*w));
            assert_eq!(*v, want, "F_{i}{j}{k}");
        }
    }

    #[test]
    fn f1_family_components() {
        let a = alg([0, 0, 0], [0, 0, 0], [0, 1, 2]);
        let f = compute_f_closed_form(&a);
        only(
            &f,
            &[([1, 1, 1], 2), ([1, 2, 2], 2), ([2, 1, 1], -4), ([2, 2, 2], -4)],
        );
        assert_eq!(compute_f_oracle(&a), f);
    }

    #[test]
    fn example_family_components() {
        let a = alg([0, -1, -3], [0, -3, 1], [0, 0, 0]);
        let f = compute_f_closed_form(&a);
        only(
            &f,
            &[
                ([0, 1, 1], -6),
                ([0, 2, 2], -6),
                ([1, 0, 2], 1),
                ([1, 2, 0], 1),
                ([2, 0, 1], -1),
                ([2, 1, 0], -1),
            ],
        );
        assert_eq!(compute_f_oracle(&a), f);
        let lee = lee_forms(&f);
        assert!(lee.theta.iter().chain(&lee.theta_star).chain(&lee.omega).all(Zero::is_zero));
        let d = decompose(&f, &tol()).unwrap();
        assert_eq!(d.params.mu, q(1));
        assert_eq!(d.params.nu, q(-6));
        assert_eq!(d.membership, set(&[BasicClass::F9, BasicClass::F10]));
    }

    #[test]
    fn abelian_is_f0() {
        let a = LieAlgebra::<Rational>::abelian();
        assert!(compute_f_closed_form(&a).max_abs().is_zero());
        assert!(compute_f_oracle(&a).max_abs().is_zero());
        assert_eq!(classify(&a, &tol()).membership, set(&[BasicClass::F0]));
    }

    #[test]
    fn oracle_matches_on_closure_example() {
        let free = FreeCoefficients {
            c1_12: q(1),
            c2_12: q(2),
            c1_01: q(3),
            c2_02: q(5),
            c0_01: q(7),
            c0_02: q(11),
        };
        let a = jacobi_close(&free).unwrap();
        assert_eq!(compute_f_oracle(&a), compute_f_closed_form(&a));
    }

    #[test]
    fn f5_lee_forms() {
        let f = compute_f_closed_form(&alg([0, 1, 0], [0, 0, 1], [0, 0, 0]));
        let lee = lee_forms(&f);
        assert_eq!(lee.theta_star[0], q(-2));
        let rest = lee.theta.iter().chain(&lee.theta_star[1..]).chain(&lee.omega);
        assert!(rest.into_iter().all(Zero::is_zero));
    }

    #[test]
    fn decompose_f4_f8_mix() {
        let mut f = FTensor::zeros();
        f.set_sym(1, 1, 0, q(3));
        f.set_sym(2, 2, 0, q(1));
        let d = decompose(&f, &tol()).unwrap();
        assert_eq!(d.params.theta0, q(2));
        assert_eq!(d.params.lambda, q(2));
        assert_eq!(d.membership, set(&[BasicClass::F4, BasicClass::F8]));
        assert_eq!(d.sum(), f);
    }

    #[test]
    fn malformed_f_is_rejected() {
        let mut f = FTensor::zeros();
        f.set_sym(1, 1, 2, q(1));
        assert!(check_f_symmetries(&f).max() > q(0));
        assert!(matches!(decompose(&f, &tol()), Err(Error::MalformedF(_))));
        let mut g = FTensor::<Rational>::zeros();
        g.0[(0, 1, 2)] = q(1);
        assert!(check_f_symmetries(&g).last_pair > q(0));
        assert!(check_f_symmetries(&FTensor::<Rational>::zeros()).max().is_zero());
    }

    #[test]
    fn classify_families() {
        let f9 = classify(&alg([0, 1, 0], [0, 0, -1], [0, 0, 0]), &tol());
        assert_eq!(f9.membership, set(&[BasicClass::F9]));
        assert_eq!(f9.params.mu, q(-1));
        let f11 = classify(&alg([1, 0, 0], [2, 0, 0], [0, 0, 0]), &tol());
        assert_eq!(f11.membership, set(&[BasicClass::F11]));
        assert_eq!(f11.params.omega1, q(2));
        assert_eq!(f11.params.omega2, q(-1));
    }

    #[test]
    fn killing_metric_witness() {
        // C^0_12 = 2, C^2_01 = −2, C^1_02 = −2
        let a = alg([0, 0, -2], [0, -2, 0], [2, 0, 0]);
        let flags = special_structures(&a, &tol());
        assert!(flags.g_killing.direct && flags.g_killing.by_class);
        let d = classify(&a, &tol());
        assert_eq!(d.params.lambda, q(1));
        assert_eq!(d.params.nu, q(-2));
        assert!(flags.all_agree());
    }

    #[test]
    fn abelian_has_every_special_structure() {
        let flags = special_structures(&LieAlgebra::<Rational>::abelian(), &tol());
        for (name, r) in flags.named() {
            assert!(r.direct && r.by_class, "{name}");
        }
    }

    #[test]
    fn f8_is_k_contact_but_not_killing() {
        let a = alg([0, 0, 1], [0, 1, 0], [-2, 0, 0]);
        let flags = special_structures(&a, &tol());
        assert!(flags.xi_killing.direct && flags.xi_killing.by_class);
        assert!(!flags.g_killing.direct && !flags.g_killing.by_class);
        assert!(kcontact_defect(&a).max_abs().is_zero());
    }

    #[test]
    fn f5_kcontact_defect() {
        let s = kcontact_defect(&alg([0, 1, 0], [0, 0, 1], [0, 0, 0]));
        assert_eq!(s[(1, 1)], q(-2));
        assert_eq!(s[(2, 2)], q(2));
        assert_eq!(s[(0, 0)], q(0));
        assert_eq!(s[(1, 2)], q(0));
    }

    // Lie derivative of g along ξ from brackets only:
    // (L_ξ g)(x, y) = −g([ξ, x], y) − g(x, [ξ, y]).
    fn lie_derivative_xi(a: &LieAlgebra<Rational>) -> SymTensor2<Rational> {
        let s = AcbStructure::<Rational>::standard();
        let c = a.constants();
        SymTensor2::from_fn(|i, j| {
            -(s.g.form(&c.bracket(0, i), &basis_vector(j)) + s.g.form(&basis_vector(i), &c.bracket(0, j)))
        })
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-5i64..=5, 1i64..=3).prop_map(|(n, d)| Rational::from_ratio(n, d))
    }

    fn random_alg() -> impl Strategy<Value = LieAlgebra<Rational>> {
        proptest::collection::vec(small(), 6).prop_filter_map("zero denominator", |v| {
            jacobi_close(&FreeCoefficients {
                c1_12: v[0].clone(),
                c2_12: v[1].clone(),
                c1_01: v[2].clone(),
                c2_02: v[3].clone(),
                c0_01: v[4].clone(),
                c0_02: v[5].clone(),
            })
            .ok()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn closed_form_equals_oracle(a in random_alg()) {
            prop_assert_eq!(compute_f_closed_form(&a), compute_f_oracle(&a));
        }

        #[test]
        fn decomposition_is_complete(a in random_alg()) {
            let f = compute_f_closed_form(&a);
            prop_assert!(check_f_symmetries(&f).max().is_zero());
            let d = decompose(&f, &tol()).unwrap();
            prop_assert_eq!(d.sum(), f);
            for comp in d.components.values() {
                prop_assert!(check_f_symmetries(comp).max().is_zero());
            }
        }

        #[test]
        fn special_structure_routes_agree(a in random_alg()) {
            prop_assert!(special_structures(&a, &tol()).all_agree());
        }

        #[test]
        fn kcontact_defect_is_lie_derivative(a in random_alg()) {
            prop_assert_eq!(kcontact_defect(&a), lie_derivative_xi(&a));
        }
    }
}
