//! Curvature of the Levi-Civita connection: `R`, Ricci and *-Ricci tensors,
//! scalar curvatures, basic sectional curvatures, Einstein-type conditions
//! and per-class curvature templates.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::connection::{levi_civita, Connection};
use crate::contact::AcbStructure;
use crate::lie::LieAlgebra;
use crate::scalar::{max_abs, Scalar, Tolerance};
use crate::structure::{BasicClass, ClassDecomposition};
use crate::tensor::{
    basis_vector, indices4, kulkarni_nomizu, kulkarni_nomizu_general, CurvatureLikeDefect,
    Tensor2, Tensor4, DIM,
};
use crate::Error;

/// `R_ijkl = g(∇_i∇_j E_k − ∇_j∇_i E_k − ∇_{[E_i,E_j]} E_k, E_l)`.
pub fn curvature_tensor<T: Scalar>(conn: &Connection<T>, alg: &LieAlgebra<T>) -> Tensor4<T> {
    let s = AcbStructure::<T>::standard();
    let gm = &conn.gamma;
    Tensor4::from_fn(|i, j, k, l| {
        let mut v = T::zero();
        for m in 0..DIM {
            v = v + gm[(j, k, m)].clone() * gm[(i, m, l)].clone()
                - gm[(i, k, m)].clone() * gm[(j, m, l)].clone()
                - alg.c(m, i, j).clone() * gm[(m, k, l)].clone();
        }
        v * s.g_diag(l)
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RicciData<T> {
    pub rho: Tensor2<T>,
    pub rho_star: Tensor2<T>,
    pub tau: T,
    pub tau_star: T,
}

/// `ρ_jk = R_0jk0 + R_1jk1 − R_2jk2`, `ρ*_jk = R_1jk2 + R_2jk1`,
/// `τ = ρ_00 + ρ_11 − ρ_22`, `τ* = 2ρ_12`.
pub fn ricci_and_scalars<T: Scalar>(r: &Tensor4<T>) -> RicciData<T> {
    let rho = Tensor2::from_fn(|j, k| {
        r[(0, j, k, 0)].clone() + r[(1, j, k, 1)].clone() - r[(2, j, k, 2)].clone()
    });
    let rho_star = Tensor2::from_fn(|j, k| r[(1, j, k, 2)].clone() + r[(2, j, k, 1)].clone());
    let tau = rho[(0, 0)].clone() + rho[(1, 1)].clone() - rho[(2, 2)].clone();
    let tau_star = rho[(1, 2)].clone().twice();
    RicciData {
        rho,
        rho_star,
        tau,
        tau_star,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionalCurvatures<T> {
    pub k01: T,
    pub k02: T,
    pub k12: T,
}

/// `k_ij = −2R_ijij / (g⊼g)_ijij` on the three basis planes.
pub fn sectional_curvatures<T: Scalar>(r: &Tensor4<T>) -> SectionalCurvatures<T> {
    let g = AcbStructure::<T>::standard().g;
    let gg = kulkarni_nomizu(&g, &g);
    let k = |i, j| -(r[(i, j, i, j)].clone().twice()) / gg[(i, j, i, j)].clone();
    SectionalCurvatures {
        k01: k(0, 1),
        k02: k(0, 2),
        k12: k(1, 2),
    }
}

/// `max |R + g⊼(ρ − (τ/4)g)|`; vanishes identically in dimension 3.
pub fn check_r3_identity<T: Scalar>(r: &Tensor4<T>, rho: &Tensor2<T>, tau: &T) -> T {
    let g = AcbStructure::<T>::standard().g;
    let traceless = rho - &g.scaled(&(tau.clone() / T::from_int(4)));
    (r + &kulkarni_nomizu_general(&g, &traceless)).max_abs()
}

fn phi_last_pair<T: Scalar>(r: &Tensor4<T>) -> Tensor4<T> {
    let s = AcbStructure::<T>::standard();
    Tensor4::from_fn(|x, y, z, w| {
        let (pz, pw) = (s.phi_basis(z), s.phi_basis(w));
        let mut v = T::zero();
        for a in 0..DIM {
            for b in 0..DIM {
                let c = pz[a].clone() * pw[b].clone();
                if !c.is_zero() {
                    v = v + c * r[(x, y, a, b)].clone();
                }
            }
        }
        v
    })
}

/// `max |R(x,y,φz,φw) + R(x,y,z,w)|`.
pub fn kaehler_defect<T: Scalar>(r: &Tensor4<T>) -> T {
    (&phi_last_pair(r) + r).max_abs()
}

/// `max |R(x,y,φz,φw)|`.
pub fn phi_killed_curvature_defect<T: Scalar>(r: &Tensor4<T>) -> T {
    phi_last_pair(r).max_abs()
}

/// Labels for Ricci tensors of the forms `λg + μg̃ + νη⊗η` and
/// `λg|_H + μg̃|_H + νη⊗η`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EinsteinLabel {
    Einstein,
    EtaEinstein,
    EtaComplexEinstein,
    ContactEinstein,
    HEinstein,
    VEinstein,
    PhiEinstein,
    StarEinstein,
    None,
}

impl fmt::Display for EinsteinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EinsteinLabel::Einstein => "Einstein",
            EinsteinLabel::EtaEinstein => "eta-Einstein",
            EinsteinLabel::EtaComplexEinstein => "eta-complex-Einstein",
            EinsteinLabel::ContactEinstein => "contact-Einstein",
            EinsteinLabel::HEinstein => "h-Einstein",
            EinsteinLabel::VEinstein => "v-Einstein",
            EinsteinLabel::PhiEinstein => "phi-Einstein",
            EinsteinLabel::StarEinstein => "*-Einstein",
            EinsteinLabel::None => "none",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EinsteinCoefficients<T> {
    pub lambda: T,
    pub mu: T,
    pub nu: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EinsteinVerdict<T> {
    /// Solution of `ρ = λg + μg̃ + νη⊗η`.
    pub complex: Option<EinsteinCoefficients<T>>,
    /// Solution of `ρ = λg|_H + μg̃|_H + νη⊗η`.
    pub contact: Option<EinsteinCoefficients<T>>,
    pub labels: BTreeSet<EinsteinLabel>,
}

impl<T> EinsteinVerdict<T> {
    pub fn has(&self, label: EinsteinLabel) -> bool {
        self.labels.contains(&label)
    }
}

/// Solves `Σ_c x_c · basis[c] = target` over all nine entries by Gaussian
/// elimination. `None` when the system is inconsistent or the basis is
/// dependent.
fn solve_in_span<T: Scalar>(
    basis: &[&Tensor2<T>; 3],
    target: &Tensor2<T>,
    tol: &Tolerance,
) -> Option<[T; 3]> {
    let scale = target.max_abs();
    let mut rows: Vec<[T; 4]> = (0..DIM)
        .flat_map(|i| (0..DIM).map(move |j| (i, j)))
        .map(|(i, j)| {
            [
                basis[0][(i, j)].clone(),
                basis[1][(i, j)].clone(),
                basis[2][(i, j)].clone(),
                target[(i, j)].clone(),
            ]
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..3 {
        let best = (pivot_row..rows.len())
            .max_by(|&a, &b| {
                rows[a][col]
                    .abs()
                    .partial_cmp(&rows[b][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .filter(|&r| !tol.is_zero(&rows[r][col]))?;
        rows.swap(pivot_row, best);
        let p = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone() / p[col].clone();
            for c in 0..4 {
                row[c] = row[c].clone() - factor.clone() * p[c].clone();
            }
        }
        pivot_row += 1;
    }
    let residual = max_abs(rows[3..].iter().map(|r| &r[3]));
    if !tol.is_zero_relative(&residual, &scale) {
        return None;
    }
    Some(std::array::from_fn(|c| rows[c][3].clone() / rows[c][c].clone()))
}

/// Classifies `ρ` against the Einstein-type conditions.
pub fn einstein_taxonomy<T: Scalar>(rho: &Tensor2<T>, tol: &Tolerance) -> EinsteinVerdict<T> {
    let s = AcbStructure::<T>::standard();
    let gt = s.associated_metric();
    let ee = s.eta_eta();
    let scale = rho.max_abs();
    let zero = |v: &T| tol.is_zero_relative(v, &scale);
    let coeffs = |x: [T; 3]| {
        let [lambda, mu, nu] = x;
        EinsteinCoefficients { lambda, mu, nu }
    };

    let complex = solve_in_span(&[&s.g, &gt, &ee], rho, tol).map(coeffs);
    let (g_h, gt_h) = (s.ell_projectors(&s.g).0, s.ell_projectors(&gt).0);
    let contact = solve_in_span(&[&g_h, &gt_h, &ee], rho, tol).map(coeffs);

    let mut labels = BTreeSet::new();
    if let Some(c) = &complex {
        labels.insert(EinsteinLabel::EtaComplexEinstein);
        if zero(&c.mu) {
            labels.insert(EinsteinLabel::EtaEinstein);
            if zero(&c.nu) {
                labels.insert(EinsteinLabel::Einstein);
            }
        }
    }
    if let Some(c) = &contact {
        labels.insert(EinsteinLabel::ContactEinstein);
        if zero(&c.nu) {
            labels.insert(EinsteinLabel::HEinstein);
            if zero(&c.mu) {
                labels.insert(EinsteinLabel::PhiEinstein);
            }
            if zero(&c.lambda) {
                labels.insert(EinsteinLabel::StarEinstein);
            }
        }
        if zero(&c.lambda) && zero(&c.mu) {
            labels.insert(EinsteinLabel::VEinstein);
        }
    }
    if labels.is_empty() {
        labels.insert(EinsteinLabel::None);
    }
    EinsteinVerdict {
        complex,
        contact,
        labels,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureReport<T> {
    pub connection: Connection<T>,
    pub r: Tensor4<T>,
    pub rho: Tensor2<T>,
    pub rho_star: Tensor2<T>,
    pub tau: T,
    pub tau_star: T,
    pub sectional: SectionalCurvatures<T>,
    pub kaehler_defect: T,
    pub phi_killed_defect: T,
    pub r3_defect: T,
    pub symmetry_defect: CurvatureLikeDefect<T>,
    pub einstein: EinsteinVerdict<T>,
}

impl<T: Scalar> CurvatureReport<T> {
    pub fn is_flat(&self, tol: &Tolerance) -> bool {
        self.r.is_zero(tol)
    }
}

/// Runs the whole curvature pipeline on an algebra.
pub fn analyze<T: Scalar>(alg: &LieAlgebra<T>, tol: &Tolerance) -> CurvatureReport<T> {
    let connection = levi_civita(alg);
    let r = curvature_tensor(&connection, alg);
    let RicciData {
        rho,
        rho_star,
        tau,
        tau_star,
    } = ricci_and_scalars(&r);
    CurvatureReport {
        sectional: sectional_curvatures(&r),
        kaehler_defect: kaehler_defect(&r),
        phi_killed_defect: phi_killed_curvature_defect(&r),
        r3_defect: check_r3_identity(&r, &rho, &tau),
        symmetry_defect: r.curvature_like_defect(),
        einstein: einstein_taxonomy(&rho, tol),
        connection,
        r,
        rho,
        rho_star,
        tau,
        tau_star,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TemplateDefect<T> {
    pub class: BasicClass,
    /// `max |R − template|`.
    pub curvature: T,
    /// `max |ρ − template|`.
    pub ricci: T,
}

/// Curvature and Ricci tensors predicted for a pure basic class.
pub fn class_templates<T: Scalar>(
    class: BasicClass,
    report: &CurvatureReport<T>,
) -> Result<(Tensor4<T>, Tensor2<T>), Error> {
    let s = AcbStructure::<T>::standard();
    let g = &s.g;
    let ee = s.eta_eta();
    let gs = s.g_star();
    let tau = report.tau.clone();
    let frac = |n: i64, d: i64| tau.clone() * T::from_ratio(n, d);
    let g_ee = kulkarni_nomizu(g, &ee);
    let gs_gs = kulkarni_nomizu(&gs, &gs);
    let lin = |a: T, x: &Tensor4<T>, b: T, y: &Tensor4<T>| &x.scaled(&a) + &y.scaled(&b);
    let out = match class {
        BasicClass::F1 => (
            lin(frac(-1, 4), &kulkarni_nomizu(g, g), frac(1, 2), &g_ee),
            (g.as_tensor() - ee.as_tensor()).scaled(&frac(1, 2)),
        ),
        BasicClass::F4 => (
            g_ee.scaled(&frac(-1, 4)),
            (g.as_tensor() + ee.as_tensor()).scaled(&frac(1, 4)),
        ),
        BasicClass::F5 => (
            lin(frac(-1, 12), &gs_gs, frac(-1, 6), &g_ee),
            g.scaled(&frac(1, 3)).into_tensor(),
        ),
        BasicClass::F8 | BasicClass::F9 => (
            lin(frac(1, 4), &gs_gs, frac(-1, 2), &g_ee),
            ee.scaled(&tau).into_tensor(),
        ),
        BasicClass::F10 => (Tensor4::zeros(), Tensor2::zeros()),
        BasicClass::F11 => {
            let rho = &report.rho;
            let rho_phi = Tensor2::from_fn(|i, j| rho.form(&s.phi_basis(i), &s.phi_basis(j)));
            let ricci = &(&rho_phi + &g.scaled(&frac(1, 2))) - &gs.scaled(&report.tau_star);
            (-&kulkarni_nomizu_general(rho, &ee), ricci)
        }
        BasicClass::F0 => return Err(Error::UnsupportedClass(BasicClass::F0.to_string())),
    };
    Ok(out)
}

/// Deviation of the computed curvature from the template of the single
/// class in `decomp.membership`.
pub fn curvature_template_check<T: Scalar>(
    decomp: &ClassDecomposition<T>,
    report: &CurvatureReport<T>,
) -> Result<TemplateDefect<T>, Error> {
    let class = decomp
        .single_class()
        .filter(|c| *c != BasicClass::F0)
        .ok_or_else(|| Error::UnsupportedClass(decomp.membership_label()))?;
    let (r_t, rho_t) = class_templates(class, report)?;
    Ok(TemplateDefect {
        class,
        curvature: (&report.r - &r_t).max_abs(),
        ricci: (&report.rho - &rho_t).max_abs(),
    })
}

/// Nonzero `R_ijkl` with `i < j`, `k < l` and `(i,j) <= (k,l)`.
pub fn independent_components<T: Scalar>(r: &Tensor4<T>, tol: &Tolerance) -> Vec<([usize; 4], T)> {
    indices4()
        .filter(|[i, j, k, l]| i < j && k < l && (i, j) <= (k, l))
        .map(|idx| (idx, r[(idx[0], idx[1], idx[2], idx[3])].clone()))
        .filter(|(_, v)| !tol.is_zero(v))
        .collect()
}

/// `(g⊼g)_ijij` on a basis plane.
pub fn basis_plane_norm<T: Scalar>(i: usize, j: usize) -> T {
    let g = AcbStructure::<T>::standard().g;
    let (ei, ej) = (basis_vector::<T>(i), basis_vector::<T>(j));
    (g.form(&ei, &ei) * g.form(&ej, &ej) - g.form(&ei, &ej) * g.form(&ei, &ej)).twice()
}
