//! Structure constants of 3-dimensional real Lie algebras in a fixed basis
//! `{E0, E1, E2}`, with `[E_i, E_j] = C^k_ij E_k`.

use std::fmt;

use crate::scalar::{max_abs, Scalar, Tolerance};
use crate::tensor::{zero_vector, Tensor3, Vector, DIM};
use crate::Error;

/// `C^k_ij`, stored as `c[(k, i, j)]`, antisymmetric in `(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants<T>(Tensor3<T>);

impl<T: Scalar> StructureConstants<T> {
    pub fn zero() -> Self {
        StructureConstants(Tensor3::zeros())
    }

    /// Builds from the three independent brackets `[E0,E1]`, `[E0,E2]`,
    /// `[E1,E2]`, each given by its components on `E0, E1, E2`.
    pub fn from_brackets(e01: Vector<T>, e02: Vector<T>, e12: Vector<T>) -> Self {
        let mut c = Tensor3::zeros();
        for ((i, j), b) in [((0, 1), e01), ((0, 2), e02), ((1, 2), e12)] {
            for (k, v) in b.into_iter().enumerate() {
                c[(k, j, i)] = -v.clone();
                c[(k, i, j)] = v;
            }
        }
        StructureConstants(c)
    }

    /// Accepts a full `[k][i][j]` array, checking antisymmetry.
    pub fn try_from_array(c: Tensor3<T>, tol: &Tolerance) -> Result<Self, Error> {
        let defect = max_abs(
            (0..DIM)
                .flat_map(|k| (0..DIM).flat_map(move |i| (0..DIM).map(move |j| (k, i, j))))
                .map(|(k, i, j)| c[(k, i, j)].clone() + c[(k, j, i)].clone())
                .collect::<Vec<_>>()
                .iter(),
        );
        if !tol.is_zero(&defect) {
            return Err(Error::NotAntisymmetric(defect.to_string()));
        }
        Ok(StructureConstants(c))
    }

    /// `C^k_ij`.
    pub fn get(&self, k: usize, i: usize, j: usize) -> &T {
        &self.0[(k, i, j)]
    }

    pub fn as_tensor(&self) -> &Tensor3<T> {
        &self.0
    }

    /// Components of `[E_i, E_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> Vector<T> {
        std::array::from_fn(|k| self.0[(k, i, j)].clone())
    }

    /// Bracket of arbitrary vectors, extended bilinearly.
    pub fn bracket_of(&self, u: &Vector<T>, v: &Vector<T>) -> Vector<T> {
        let mut out: Vector<T> = zero_vector();
        for i in 0..DIM {
            for j in 0..DIM {
                let uv = u[i].clone() * v[j].clone();
                if uv.is_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o = o.clone() + uv.clone() * self.0[(k, i, j)].clone();
                }
            }
        }
        out
    }

    /// `[[E_i,E_j],E_k] + [[E_j,E_k],E_i] + [[E_k,E_i],E_j]`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vector<T> {
        let term = |a: usize, b: usize, c: usize| {
            let ab = self.bracket(a, b);
            std::array::from_fn::<T, DIM, _>(|m| {
                (0..DIM).fold(T::zero(), |acc, n| acc + ab[n].clone() * self.0[(m, n, c)].clone())
            })
        };
        let (x, y, z) = (term(i, j, k), term(j, k, i), term(k, i, j));
        std::array::from_fn(|m| x[m].clone() + y[m].clone() + z[m].clone())
    }

    /// Jacobi defect on the triple `(E0, E1, E2)`. With antisymmetric
    /// constants in dimension 3 every other triple gives either this vector
    /// up to sign or zero, so this vanishes iff the constants define a Lie
    /// algebra.
    pub fn jacobi_defect(&self) -> Vector<T> {
        self.jacobiator(0, 1, 2)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> StructureConstants<U> {
        StructureConstants(self.0.map(f))
    }

    pub fn is_abelian(&self, tol: &Tolerance) -> bool {
        tol.is_zero(&self.0.max_abs())
    }
}

/// The six coefficients left free after imposing the Jacobi identity.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeCoefficients<T> {
    pub c1_12: T,
    pub c2_12: T,
    pub c1_01: T,
    pub c2_02: T,
    pub c0_01: T,
    pub c0_02: T,
}

/// The denominators of the Jacobi closure formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Denominator {
    /// `C^1_01 + C^2_02`, solving for `C^0_12`.
    C101PlusC202,
    /// `C^0_01 − C^2_12`, solving for `C^1_02`.
    C001MinusC212,
    /// `C^0_02 + C^1_12`, solving for `C^2_01`.
    C002PlusC112,
}

impl fmt::Display for Denominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Denominator::C101PlusC202 => "C^1_01 + C^2_02",
            Denominator::C001MinusC212 => "C^0_01 - C^2_12",
            Denominator::C002PlusC112 => "C^0_02 + C^1_12",
        })
    }
}

/// Solves the Jacobi identity for `C^0_12`, `C^1_02`, `C^2_01` in terms of
/// the six free coefficients.
pub fn jacobi_close<T: Scalar>(free: &FreeCoefficients<T>) -> Result<LieAlgebra<T>, Error> {
    let FreeCoefficients {
        c1_12,
        c2_12,
        c1_01,
        c2_02,
        c0_01,
        c0_02,
    } = free.clone();

    let d0 = c1_01.clone() + c2_02.clone();
    let d1 = c0_01.clone() - c2_12.clone();
    let d2 = c0_02.clone() + c1_12.clone();
    for (d, which) in [
        (&d0, Denominator::C101PlusC202),
        (&d1, Denominator::C001MinusC212),
        (&d2, Denominator::C002PlusC112),
    ] {
        if d.is_zero() {
            return Err(Error::ZeroDenominator(which));
        }
    }

    let c0_12 = (c1_12.clone() * c0_01.clone() + c2_12.clone() * c0_02.clone()) / d0;
    let c1_02 = (c1_01.clone() * c0_02.clone() - c1_12.clone() * c2_02.clone()) / d1;
    let c2_01 = (c0_01.clone() * c2_02.clone() + c1_01.clone() * c2_12.clone()) / d2;

    let c = StructureConstants::from_brackets(
        [c0_01, c1_01, c2_01],
        [c0_02, c1_02, c2_02],
        [c0_12, c1_12, c2_12],
    );
    Ok(LieAlgebra(c))
}

/// Structure constants known to satisfy the Jacobi identity.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<T>(StructureConstants<T>);

impl<T: Scalar> LieAlgebra<T> {
    pub fn new(c: StructureConstants<T>, tol: &Tolerance) -> Result<Self, Error> {
        let defect = c.jacobi_defect();
        let scale = c.as_tensor().max_abs();
        let worst = max_abs(&defect);
        if !tol.is_zero_relative(&worst, &(scale.clone() * scale)) {
            return Err(Error::NotALieAlgebra {
                defect: defect.iter().map(ToString::to_string).collect(),
            });
        }
        Ok(LieAlgebra(c))
    }

    /// For constructions whose Jacobi identity holds as a polynomial
    /// identity in their parameters.
    pub(crate) fn new_unchecked(c: StructureConstants<T>) -> Self {
        debug_assert!(!T::EXACT || c.jacobi_defect().iter().all(|v| v.is_zero()));
        LieAlgebra(c)
    }

    pub fn abelian() -> Self {
        LieAlgebra(StructureConstants::zero())
    }

    pub fn constants(&self) -> &StructureConstants<T> {
        &self.0
    }

    pub fn into_constants(self) -> StructureConstants<T> {
        self.0
    }

    /// `C^k_ij`.
    pub fn c(&self, k: usize, i: usize, j: usize) -> &T {
        self.0.get(k, i, j)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> LieAlgebra<U> {
        LieAlgebra(self.0.map(f))
    }
}
