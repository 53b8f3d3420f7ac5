//! The fixed almost contact B-metric structure on the φ-basis.

use crate::scalar::{max_abs, Scalar};
use crate::tensor::{basis_vector, SymTensor2, Tensor2, Vector, DIM};

/// `(φ, ξ, η, g)` with `φE0 = 0`, `φE1 = E2`, `φE2 = −E1`, `ξ = E0`,
/// `η = (1, 0, 0)` and `g = diag(1, 1, −1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AcbStructure<T> {
    /// `phi[(a, b)]` is the `E_a` component of `φE_b`.
    pub phi: Tensor2<T>,
    pub xi: usize,
    pub eta: Vector<T>,
    pub g: SymTensor2<T>,
}

impl<T: Scalar> AcbStructure<T> {
    pub fn standard() -> Self {
        let mut phi = Tensor2::zeros();
        phi[(2, 1)] = T::one();
        phi[(1, 2)] = -T::one();
        AcbStructure {
            phi,
            xi: 0,
            eta: basis_vector(0),
            g: SymTensor2::from_fn(|i, j| match (i, j) {
                (0, 0) | (1, 1) => T::one(),
                (2, 2) => -T::one(),
                _ => T::zero(),
            }),
        }
    }

    /// `g(E_i, E_i)`; the metric is diagonal.
    pub fn g_diag(&self, i: usize) -> T {
        self.g[(i, i)].clone()
    }

    pub fn phi_of(&self, v: &Vector<T>) -> Vector<T> {
        self.phi.apply(v)
    }

    pub fn phi_basis(&self, i: usize) -> Vector<T> {
        self.phi_of(&basis_vector(i))
    }

    pub fn xi_vector(&self) -> Vector<T> {
        basis_vector(self.xi)
    }

    pub fn eta_of(&self, v: &Vector<T>) -> T {
        (0..DIM).fold(T::zero(), |acc, i| acc + self.eta[i].clone() * v[i].clone())
    }

    pub fn eta_eta(&self) -> SymTensor2<T> {
        SymTensor2::outer_square(&self.eta)
    }

    /// `g̃(x, y) = g(x, φy) + η(x)η(y)`.
    pub fn associated_metric(&self) -> SymTensor2<T> {
        SymTensor2::from_fn(|i, j| {
            self.g.form(&basis_vector(i), &self.phi_basis(j))
                + self.eta[i].clone() * self.eta[j].clone()
        })
    }

    /// `g*(x, y) = g(x, φy) = g̃ − η⊗η`.
    pub fn g_star(&self) -> SymTensor2<T> {
        SymTensor2::from_fn(|i, j| self.g.form(&basis_vector(i), &self.phi_basis(j)))
    }

    /// `h = −φ²`, projector onto the contact distribution.
    pub fn horizontal(&self) -> Tensor2<T> {
        -&self.phi.matmul(&self.phi)
    }

    /// `v = ξ ⊗ η`, projector onto the span of `ξ`.
    pub fn vertical(&self) -> Tensor2<T> {
        let xi = self.xi_vector();
        Tensor2::from_fn(|a, b| xi[a].clone() * self.eta[b].clone())
    }

    /// `(ℓ1(s), ℓ2(s), ℓ3(s))`.
    pub fn ell_projectors(
        &self,
        s: &SymTensor2<T>,
    ) -> (SymTensor2<T>, SymTensor2<T>, SymTensor2<T>) {
        let h = self.horizontal();
        let v = self.vertical();
        let pull = |p: &Tensor2<T>, q: &Tensor2<T>| {
            SymTensor2::from_fn(|i, j| s.form(&col(p, i), &col(q, j)))
        };
        let l1 = pull(&h, &h);
        let l2 = pull(&v, &v);
        let mixed = SymTensor2::from_fn(|i, j| {
            s.form(&col(&v, i), &basis_vector(j)) + s.form(&basis_vector(i), &col(&v, j))
        });
        let l3 = &mixed - &l2.scaled(&T::from_int(2));
        (l1, l2, l3)
    }

    /// Largest violation over the basis of `φ² = −Id + η⊗ξ`, `η∘φ = 0`,
    /// `φξ = 0`, `η(ξ) = 1` and `g(φx, φy) = −g(x, y) + η(x)η(y)`.
    pub fn structure_defect(&self) -> T {
        let mut d = Vec::new();
        let phi2 = self.phi.matmul(&self.phi);
        let xi = self.xi_vector();
        for a in 0..DIM {
            for b in 0..DIM {
                let id = if a == b { T::one() } else { T::zero() };
                let target = -id + xi[a].clone() * self.eta[b].clone();
                d.push(phi2[(a, b)].clone() - target);
                let gphi = self.g.form(&self.phi_basis(a), &self.phi_basis(b));
                d.push(gphi + self.g[(a, b)].clone() - self.eta[a].clone() * self.eta[b].clone());
            }
            d.push(self.eta_of(&self.phi_basis(a)));
        }
        d.extend(self.phi_of(&xi));
        d.push(self.eta_of(&xi) - T::one());
        max_abs(&d)
    }
}

fn col<T: Scalar>(p: &Tensor2<T>, j: usize) -> Vector<T> {
    std::array::from_fn(|a| p[(a, j)].clone())
}
