//! Dense tensors over the fixed index set {0, 1, 2}.

use std::ops::{Add, Deref, Index, IndexMut, Neg, Sub};

use crate::scalar::{max_abs, Scalar, Tolerance};
use crate::Error;

pub const DIM: usize = 3;

pub type Vector<T> = [T; DIM];

pub fn zero_vector<T: Scalar>() -> Vector<T> {
    std::array::from_fn(|_| T::zero())
}

pub fn basis_vector<T: Scalar>(i: usize) -> Vector<T> {
    std::array::from_fn(|k| if k == i { T::one() } else { T::zero() })
}

/// Iterator over all index tuples of a rank-4 tensor in lexicographic order.
pub fn indices4() -> impl Iterator<Item = [usize; 4]> {
    (0..DIM * DIM * DIM * DIM).map(|n| [n / 27, (n / 9) % 3, (n / 3) % 3, n % 3])
}

pub fn indices3() -> impl Iterator<Item = [usize; 3]> {
    (0..DIM * DIM * DIM).map(|n| [n / 9, (n / 3) % 3, n % 3])
}

/// General 3x3 array, `t[(i, j)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor2<T>([[T; DIM]; DIM]);

impl<T: Scalar> Tensor2<T> {
    pub fn zeros() -> Self {
        Self::from_fn(|_, _| T::zero())
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        Tensor2(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn diagonal(d: [T; DIM]) -> Self {
        Self::from_fn(|i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self[(j, i)].clone())
    }

    pub fn scaled(&self, s: &T) -> Self {
        Self::from_fn(|i, j| self[(i, j)].clone() * s.clone())
    }

    pub fn max_abs(&self) -> T {
        max_abs(self.0.iter().flatten())
    }

    pub fn is_zero(&self, tol: &Tolerance) -> bool {
        tol.is_zero(&self.max_abs())
    }

    pub fn symmetry_defect(&self) -> T {
        (self - &self.transpose()).max_abs()
    }

    /// `self · v` with `v` a column of components.
    pub fn apply(&self, v: &Vector<T>) -> Vector<T> {
        std::array::from_fn(|i| {
            (0..DIM).fold(T::zero(), |acc, j| acc + self[(i, j)].clone() * v[j].clone())
        })
    }

    pub fn matmul(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| {
            (0..DIM).fold(T::zero(), |acc, k| {
                acc + self[(i, k)].clone() * other[(k, j)].clone()
            })
        })
    }

    /// Bilinear form `u^T self v`.
    pub fn form(&self, u: &Vector<T>, v: &Vector<T>) -> T {
        let sv = self.apply(v);
        (0..DIM).fold(T::zero(), |acc, i| acc + u[i].clone() * sv[i].clone())
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &T)> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| ((i, j), v)))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Tensor2<U> {
        Tensor2::from_fn(|i, j| f(&self[(i, j)]))
    }
}

impl<T> Index<(usize, usize)> for Tensor2<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.0[i][j]
    }
}

impl<T> IndexMut<(usize, usize)> for Tensor2<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.0[i][j]
    }
}

impl<T: Scalar> Add for &Tensor2<T> {
    type Output = Tensor2<T>;
    fn add(self, rhs: Self) -> Tensor2<T> {
        Tensor2::from_fn(|i, j| self[(i, j)].clone() + rhs[(i, j)].clone())
    }
}

impl<T: Scalar> Sub for &Tensor2<T> {
    type Output = Tensor2<T>;
    fn sub(self, rhs: Self) -> Tensor2<T> {
        Tensor2::from_fn(|i, j| self[(i, j)].clone() - rhs[(i, j)].clone())
    }
}

impl<T: Scalar> Neg for &Tensor2<T> {
    type Output = Tensor2<T>;
    fn neg(self) -> Tensor2<T> {
        Tensor2::from_fn(|i, j| -self[(i, j)].clone())
    }
}

/// Symmetric (0,2)-tensor. Construction guarantees `s[(i, j)] == s[(j, i)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensor2<T>(Tensor2<T>);

impl<T: Scalar> SymTensor2<T> {
    pub fn zeros() -> Self {
        SymTensor2(Tensor2::zeros())
    }

    /// Builds from the upper triangle; `f` is only called with `i <= j`.
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut t = Tensor2::zeros();
        for i in 0..DIM {
            for j in i..DIM {
                let v = f(i, j);
                t[(j, i)] = v.clone();
                t[(i, j)] = v;
            }
        }
        SymTensor2(t)
    }

    /// Accepts `t` if it is symmetric within `tol`; in float mode the
    /// off-diagonal pairs are averaged.
    pub fn try_from_tensor(t: Tensor2<T>, tol: &Tolerance) -> Result<Self, Error> {
        let defect = t.symmetry_defect();
        if !tol.is_zero_relative(&defect, &t.max_abs()) {
            return Err(Error::Asymmetric(defect.to_string()));
        }
        if T::EXACT {
            return Ok(SymTensor2(t));
        }
        Ok(Self::from_fn(|i, j| (t[(i, j)].clone() + t[(j, i)].clone()).half()))
    }

    /// `v ⊗ v`.
    pub fn outer_square(v: &Vector<T>) -> Self {
        Self::from_fn(|i, j| v[i].clone() * v[j].clone())
    }

    pub fn scaled(&self, s: &T) -> Self {
        SymTensor2(self.0.scaled(s))
    }

    pub fn as_tensor(&self) -> &Tensor2<T> {
        &self.0
    }

    pub fn into_tensor(self) -> Tensor2<T> {
        self.0
    }
}

impl<T> Deref for SymTensor2<T> {
    type Target = Tensor2<T>;
    fn deref(&self) -> &Tensor2<T> {
        &self.0
    }
}

impl<T: Scalar> Add for &SymTensor2<T> {
    type Output = SymTensor2<T>;
    fn add(self, rhs: Self) -> SymTensor2<T> {
        SymTensor2(&self.0 + &rhs.0)
    }
}

impl<T: Scalar> Sub for &SymTensor2<T> {
    type Output = SymTensor2<T>;
    fn sub(self, rhs: Self) -> SymTensor2<T> {
        SymTensor2(&self.0 - &rhs.0)
    }
}

/// Rank-3 array `t[(a, b, c)]`; the meaning of each slot is fixed by the
/// wrapping type.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3<T>([[[T; DIM]; DIM]; DIM]);

impl<T: Scalar> Tensor3<T> {
    pub fn zeros() -> Self {
        Self::from_fn(|_, _, _| T::zero())
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize, usize) -> T) -> Self {
        Tensor3(std::array::from_fn(|a| {
            std::array::from_fn(|b| std::array::from_fn(|c| f(a, b, c)))
        }))
    }

    pub fn max_abs(&self) -> T {
        max_abs(self.0.iter().flatten().flatten())
    }

    pub fn entries(&self) -> impl Iterator<Item = ([usize; 3], &T)> {
        indices3().map(move |[a, b, c]| ([a, b, c], &self.0[a][b][c]))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Tensor3<U> {
        Tensor3::from_fn(|a, b, c| f(&self.0[a][b][c]))
    }
}

impl<T> Index<(usize, usize, usize)> for Tensor3<T> {
    type Output = T;
    fn index(&self, (a, b, c): (usize, usize, usize)) -> &T {
        &self.0[a][b][c]
    }
}

impl<T> IndexMut<(usize, usize, usize)> for Tensor3<T> {
    fn index_mut(&mut self, (a, b, c): (usize, usize, usize)) -> &mut T {
        &mut self.0[a][b][c]
    }
}

impl<T: Scalar> Add for &Tensor3<T> {
    type Output = Tensor3<T>;
    fn add(self, rhs: Self) -> Tensor3<T> {
        Tensor3::from_fn(|a, b, c| self[(a, b, c)].clone() + rhs[(a, b, c)].clone())
    }
}

impl<T: Scalar> Sub for &Tensor3<T> {
    type Output = Tensor3<T>;
    fn sub(self, rhs: Self) -> Tensor3<T> {
        Tensor3::from_fn(|a, b, c| self[(a, b, c)].clone() - rhs[(a, b, c)].clone())
    }
}

/// Rank-4 covariant tensor, `t[(x, y, z, w)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor4<T> {
    data: Vec<T>,
}

fn offset(x: usize, y: usize, z: usize, w: usize) -> usize {
    debug_assert!(x < DIM && y < DIM && z < DIM && w < DIM);
    ((x * DIM + y) * DIM + z) * DIM + w
}

impl<T: Scalar> Tensor4<T> {
    pub fn zeros() -> Self {
        Self::from_fn(|_, _, _, _| T::zero())
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize, usize, usize) -> T) -> Self {
        Tensor4 {
            data: indices4().map(|[x, y, z, w]| f(x, y, z, w)).collect(),
        }
    }

    pub fn scaled(&self, s: &T) -> Self {
        Tensor4 {
            data: self.data.iter().map(|v| v.clone() * s.clone()).collect(),
        }
    }

    pub fn max_abs(&self) -> T {
        max_abs(&self.data)
    }

    pub fn is_zero(&self, tol: &Tolerance) -> bool {
        tol.is_zero(&self.max_abs())
    }

    pub fn entries(&self) -> impl Iterator<Item = ([usize; 4], &T)> {
        indices4().zip(self.data.iter())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Tensor4<U> {
        Tensor4 {
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Largest violation of the curvature-like identities: antisymmetry in
    /// each index pair and the first Bianchi identity in `(x, y, z)`.
    pub fn curvature_like_defect(&self) -> CurvatureLikeDefect<T> {
        let mut first = Vec::with_capacity(81);
        let mut last = Vec::with_capacity(81);
        let mut bianchi = Vec::with_capacity(81);
        let mut pair = Vec::with_capacity(81);
        for [x, y, z, w] in indices4() {
            let v = self[(x, y, z, w)].clone();
            first.push(v.clone() + self[(y, x, z, w)].clone());
            last.push(v.clone() + self[(x, y, w, z)].clone());
            bianchi.push(v.clone() + self[(y, z, x, w)].clone() + self[(z, x, y, w)].clone());
            pair.push(v - self[(z, w, x, y)].clone());
        }
        CurvatureLikeDefect {
            first_pair: max_abs(&first),
            last_pair: max_abs(&last),
            bianchi: max_abs(&bianchi),
            pair_exchange: max_abs(&pair),
        }
    }
}

impl<T> Index<(usize, usize, usize, usize)> for Tensor4<T> {
    type Output = T;
    fn index(&self, (x, y, z, w): (usize, usize, usize, usize)) -> &T {
        &self.data[offset(x, y, z, w)]
    }
}

impl<T> IndexMut<(usize, usize, usize, usize)> for Tensor4<T> {
    fn index_mut(&mut self, (x, y, z, w): (usize, usize, usize, usize)) -> &mut T {
        &mut self.data[offset(x, y, z, w)]
    }
}

impl<T: Scalar> Add for &Tensor4<T> {
    type Output = Tensor4<T>;
    fn add(self, rhs: Self) -> Tensor4<T> {
        Tensor4 {
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Sub for &Tensor4<T> {
    type Output = Tensor4<T>;
    fn sub(self, rhs: Self) -> Tensor4<T> {
        Tensor4 {
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Neg for &Tensor4<T> {
    type Output = Tensor4<T>;
    fn neg(self) -> Tensor4<T> {
        Tensor4 {
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureLikeDefect<T> {
    pub first_pair: T,
    pub last_pair: T,
    pub bianchi: T,
    /// Implied by the other three; reported separately as a cross-check.
    pub pair_exchange: T,
}

impl<T: Scalar> CurvatureLikeDefect<T> {
    pub fn max(&self) -> T {
        max_abs([&self.first_pair, &self.last_pair, &self.bianchi, &self.pair_exchange])
    }
}

/// Kulkarni–Nomizu product
/// `(a ⊼ b)(x,y,z,w) = a(x,z)b(y,w) − a(y,z)b(x,w) + a(y,w)b(x,z) − a(x,w)b(y,z)`.
///
/// The output is curvature-like when both factors are symmetric.
pub fn kulkarni_nomizu<T: Scalar>(a: &SymTensor2<T>, b: &SymTensor2<T>) -> Tensor4<T> {
    kulkarni_nomizu_general(a, b)
}

pub(crate) fn kulkarni_nomizu_general<T: Scalar>(a: &Tensor2<T>, b: &Tensor2<T>) -> Tensor4<T> {
    Tensor4::from_fn(|x, y, z, w| {
        a[(x, z)].clone() * b[(y, w)].clone() - a[(y, z)].clone() * b[(x, w)].clone()
            + a[(y, w)].clone() * b[(x, z)].clone()
            - a[(x, w)].clone() * b[(y, z)].clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn metric() -> SymTensor2<Rational> {
        SymTensor2::from_fn(|i, j| match (i, j) {
            (0, 0) | (1, 1) => q(1),
            (2, 2) => q(-1),
            _ => q(0),
        })
    }

    #[test]
    fn kulkarni_nomizu_of_metric() {
        let g = metric();
        let gg = kulkarni_nomizu(&g, &g);
        assert_eq!(gg[(0, 1, 0, 1)], q(2));
        assert_eq!(gg[(0, 2, 0, 2)], q(-2));
        assert_eq!(gg[(1, 2, 1, 2)], q(-2));
        let eta = SymTensor2::outer_square(&basis_vector::<Rational>(0));
        assert_eq!(kulkarni_nomizu(&g, &eta)[(0, 1, 0, 1)], q(1));
        assert_eq!(kulkarni_nomizu(&g, &eta)[(1, 2, 1, 2)], q(0));
    }

    #[test]
    fn rejects_asymmetric_matrix() {
        let mut t = Tensor2::<Rational>::zeros();
        t[(0, 1)] = q(1);
        assert!(SymTensor2::try_from_tensor(t, &Tolerance::default()).is_err());
    }

    #[test]
    fn float_symmetrization_within_tolerance() {
        let mut t = Tensor2::<f64>::zeros();
        t[(0, 1)] = 1.0;
        t[(1, 0)] = 1.0 + 1e-12;
        let s = SymTensor2::try_from_tensor(t, &Tolerance::default()).unwrap();
        assert_eq!(s[(0, 1)], s[(1, 0)]);
    }

    fn sym_strategy() -> impl Strategy<Value = SymTensor2<Rational>> {
        proptest::collection::vec((-9i64..=9, 1i64..=5), 6).prop_map(|v| {
            let mut it = v.into_iter();
            SymTensor2::from_fn(|_, _| {
                let (n, d) = it.next().unwrap();
                Rational::from_ratio(n, d)
            })
        })
    }

    proptest! {
        #[test]
        fn kulkarni_nomizu_is_curvature_like(a in sym_strategy(), b in sym_strategy()) {
            let t = kulkarni_nomizu(&a, &b);
            prop_assert!(t.curvature_like_defect().max().is_zero());
            // symmetric in its two arguments
            prop_assert_eq!(t, kulkarni_nomizu(&b, &a));
        }
    }
}
