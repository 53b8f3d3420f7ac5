//! Levi-Civita connection of the left-invariant metric.

use crate::contact::AcbStructure;
use crate::lie::LieAlgebra;
use crate::scalar::{max_abs, Scalar};
use crate::tensor::{zero_vector, Tensor3, Vector, DIM};

/// `gamma[(i, j, k)]` is the `E_k` component of `∇_{E_i} E_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection<T> {
    pub gamma: Tensor3<T>,
}

/// Solves the Koszul equality
/// `2g(∇_{E_i}E_j, E_k) = g([E_i,E_j],E_k) + g([E_k,E_i],E_j) + g([E_k,E_j],E_i)`.
pub fn levi_civita<T: Scalar>(alg: &LieAlgebra<T>) -> Connection<T> {
    let s = AcbStructure::<T>::standard();
    let c = |k, i, j| alg.c(k, i, j).clone();
    let gamma = Tensor3::from_fn(|i, j, k| {
        let lowered = c(k, i, j) * s.g_diag(k) + c(j, k, i) * s.g_diag(j) + c(i, k, j) * s.g_diag(i);
        // g is diagonal with entries ±1, so raising k multiplies by g_kk.
        (lowered * s.g_diag(k)).half()
    });
    Connection { gamma }
}

impl<T: Scalar> Connection<T> {
    /// Components of `∇_{E_i} E_j`.
    pub fn nabla_basis(&self, i: usize, j: usize) -> Vector<T> {
        std::array::from_fn(|k| self.gamma[(i, j, k)].clone())
    }

    /// `∇_u v` for left-invariant fields with constant components.
    pub fn nabla(&self, u: &Vector<T>, v: &Vector<T>) -> Vector<T> {
        let mut out: Vector<T> = zero_vector();
        for i in 0..DIM {
            for j in 0..DIM {
                let w = u[i].clone() * v[j].clone();
                if w.is_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o = o.clone() + w.clone() * self.gamma[(i, j, k)].clone();
                }
            }
        }
        out
    }

    /// `max |∇_{E_i}E_j − ∇_{E_j}E_i − [E_i,E_j]|`.
    pub fn torsion_defect(&self, alg: &LieAlgebra<T>) -> T {
        let mut d = Vec::with_capacity(27);
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    d.push(
                        self.gamma[(i, j, k)].clone() - self.gamma[(j, i, k)].clone()
                            - alg.c(k, i, j).clone(),
                    );
                }
            }
        }
        max_abs(&d)
    }

    /// `max |g(∇_{E_i}E_j, E_k) + g(E_j, ∇_{E_i}E_k)|`.
    pub fn metric_defect(&self) -> T {
        let s = AcbStructure::<T>::standard();
        let mut d = Vec::with_capacity(27);
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    d.push(
                        self.gamma[(i, j, k)].clone() * s.g_diag(k)
                            + self.gamma[(i, k, j)].clone() * s.g_diag(j),
                    );
                }
            }
        }
        max_abs(&d)
    }

    /// Nonzero coefficients `(i, j, k, Γ^k_ij)` in lexicographic order.
    pub fn nonzero(&self) -> Vec<([usize; 3], T)> {
        self.gamma
            .entries()
            .filter(|(_, v)| !v.is_zero())
            .map(|(idx, v)| (idx, v.clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::StructureConstants;
    use crate::scalar::{Rational, Tolerance};
    use num_traits::Zero;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn z() -> Vector<Rational> {
        zero_vector()
    }

    fn alg(e01: [i64; 3], e02: [i64; 3], e12: [i64; 3]) -> LieAlgebra<Rational> {
        let c = StructureConstants::from_brackets(e01.map(q), e02.map(q), e12.map(q));
        LieAlgebra::new(c, &Tolerance::default()).unwrap()
    }

    fn expect(conn: &Connection<Rational>, table: &[(usize, usize, [i64; 3])]) {
        for i in 0..3 {
            for j in 0..3 {
                let want = table
                    .iter()
                    .find(|(a, b, _)| (*a, *b) == (i, j))
                    .map(|(_, _, v)| v.map(q))
                    .unwrap_or_else(z);
                assert_eq!(conn.nabla_basis(i, j), want, "nabla_{i} E_{j}");
            }
        }
    }

    #[test]
    fn f1_table() {
        // [E1,E2] = E1 + 2E2
        let conn = levi_civita(&alg([0, 0, 0], [0, 0, 0], [0, 1, 2]));
        expect(
            &conn,
            &[(1, 1, [0, 0, 1]), (1, 2, [0, 1, 0]), (2, 1, [0, 0, -2]), (2, 2, [0, -2, 0])],
        );
    }

    #[test]
    fn abelian_is_flat_connection() {
        let conn = levi_civita(&LieAlgebra::<Rational>::abelian());
        assert!(conn.gamma.max_abs().is_zero());
    }

    #[test]
    fn example_family_table() {
        // a1 = 1, a2 = 3, so μ = 1 and ν = −6.
        let conn = levi_civita(&alg([0, -1, -3], [0, -3, 1], [0, 0, 0]));
        assert_eq!(conn.nabla_basis(0, 1), [q(0), q(0), q(-3)]);
        assert_eq!(conn.nabla_basis(1, 0), [q(0), q(1), q(0)]);
        assert_eq!(conn.nabla_basis(1, 1), [q(-1), q(0), q(0)]);
        assert_eq!(conn.nabla_basis(2, 2), [q(-1), q(0), q(0)]);
        assert!(conn.torsion_defect(&alg([0, -1, -3], [0, -3, 1], [0, 0, 0])).is_zero());
    }

    #[test]
    fn f4_table_includes_mixed_terms() {
        // [E0,E1] = E2, [E0,E2] = −E1
        let conn = levi_civita(&alg([0, 0, 1], [0, -1, 0], [0, 0, 0]));
        expect(
            &conn,
            &[
                (1, 0, [0, 0, -1]),
                (2, 0, [0, 1, 0]),
                (1, 2, [-1, 0, 0]),
                (2, 1, [-1, 0, 0]),
            ],
        );
        assert!(conn.metric_defect().is_zero());
    }

    #[test]
    fn torsion_free_and_metric_on_closure_output() {
        let free = crate::lie::FreeCoefficients {
            c1_12: q(1),
            c2_12: q(2),
            c1_01: q(3),
            c2_02: q(5),
            c0_01: q(7),
            c0_02: q(11),
        };
        let a = crate::lie::jacobi_close(&free).unwrap();
        let conn = levi_civita(&a);
        assert!(conn.torsion_defect(&a).is_zero());
        assert!(conn.metric_defect().is_zero());
    }
}
