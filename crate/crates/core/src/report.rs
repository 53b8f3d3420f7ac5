//! Serializable summary of the classification and curvature pipeline.
//!
//! Every scalar is rendered as a string: `p/q` in exact mode, a decimal in
//! float mode. Values within tolerance of zero print as `0`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curvature::{analyze, curvature_template_check, independent_components, EinsteinCoefficients};
use crate::document::{InputDocument, Mode};
use crate::lie::LieAlgebra;
use crate::scalar::{max_abs, Scalar, Tolerance};
use crate::structure::{check_f_symmetries, classify, compute_f_closed_form, lee_forms};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub index: Vec<usize>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Named {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JacobiStatus {
    pub satisfied: bool,
    pub max_defect: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeeFormsReport {
    pub theta: [String; 3],
    pub theta_star: [String; 3],
    pub omega: [String; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlagReport {
    pub name: String,
    pub direct: bool,
    pub by_class: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub f_nonzero: Vec<Component>,
    pub f_identity_defect: String,
    pub lee_forms: LeeFormsReport,
    pub parameters: Vec<Named>,
    pub membership: Vec<String>,
    pub special_structures: Vec<FlagReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientsReport {
    pub lambda: String,
    pub mu: String,
    pub nu: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EinsteinReport {
    pub labels: Vec<String>,
    /// `ρ = λg + μg̃ + νη⊗η`.
    pub complex: Option<CoefficientsReport>,
    /// `ρ = λg|_H + μg̃|_H + νη⊗η`.
    pub contact: Option<CoefficientsReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TemplateReport {
    pub class: String,
    pub curvature: String,
    pub ricci: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Defects {
    pub r3_identity: String,
    pub curvature_symmetry: String,
    pub kaehler: String,
    pub phi_killed: String,
    pub template: Option<TemplateReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureSection {
    pub connection: Vec<Component>,
    /// Nonzero `R_ijkl` with `i < j`, `k < l`, `(i,j) <= (k,l)`.
    pub r_nonzero: Vec<Component>,
    pub rho: Vec<Component>,
    pub rho_star: Vec<Component>,
    pub tau: String,
    pub tau_star: String,
    pub k01: String,
    pub k02: String,
    pub k12: String,
    pub flat: bool,
    pub einstein: EinsteinReport,
    pub defects: Defects,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub input: InputDocument,
    pub jacobi: JacobiStatus,
    pub classification: Classification,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub curvature: Option<CurvatureSection>,
    pub notes: Vec<String>,
}

fn show<T: Scalar>(v: &T, tol: &Tolerance) -> String {
    if tol.is_zero(v) {
        "0".to_string()
    } else {
        v.to_string()
    }
}

fn nonzero<T: Scalar, const N: usize>(
    entries: impl Iterator<Item = ([usize; N], T)>,
    tol: &Tolerance,
) -> Vec<Component> {
    entries
        .filter(|(_, v)| !tol.is_zero(v))
        .map(|(idx, v)| Component { index: idx.to_vec(), value: v.to_string() })
        .collect()
}

fn coefficients<T: Scalar>(c: &EinsteinCoefficients<T>, tol: &Tolerance) -> CoefficientsReport {
    CoefficientsReport {
        lambda: show(&c.lambda, tol),
        mu: show(&c.mu, tol),
        nu: show(&c.nu, tol),
    }
}

impl Report {
    /// Builds the report; the curvature section is included on request.
    pub fn build<T: Scalar>(
        input: &InputDocument,
        alg: &LieAlgebra<T>,
        tol: &Tolerance,
        with_curvature: bool,
    ) -> Report {
        let show = |v: &T| show(v, tol);
        let mut notes = Vec::new();
        let f = compute_f_closed_form(alg);
        let decomp = classify(alg, tol);
        let flags = crate::structure::special_structures(alg, tol);
        let lee = lee_forms(&f);
        let arr = |v: &[T; 3]| [show(&v[0]), show(&v[1]), show(&v[2])];

        for (name, r) in flags.named() {
            if !r.agree() {
                notes.push(format!(
                    "{name}: the definition gives {} but the class condition gives {}",
                    r.direct, r.by_class
                ));
            }
        }
        if input.mode == Mode::Float {
            notes.push(format!("float mode: zero tests use tolerance {}", tol.epsilon()));
        }

        let classification = Classification {
            f_nonzero: nonzero(f.0.entries().map(|(i, v)| (i, v.clone())), tol),
            f_identity_defect: show(&check_f_symmetries(&f).max()),
            lee_forms: LeeFormsReport {
                theta: arr(&lee.theta),
                theta_star: arr(&lee.theta_star),
                omega: arr(&lee.omega),
            },
            parameters: decomp
                .params
                .named()
                .into_iter()
                .map(|(n, v)| Named { name: n.to_string(), value: show(v) })
                .collect(),
            membership: decomp.membership.iter().map(ToString::to_string).collect(),
            special_structures: flags
                .named()
                .into_iter()
                .map(|(n, r)| FlagReport { name: n.to_string(), direct: r.direct, by_class: r.by_class })
                .collect(),
        };

        let curvature = with_curvature.then(|| {
            let rep = analyze(alg, tol);
            let template = match curvature_template_check(&decomp, &rep) {
                Ok(t) => Some(TemplateReport {
                    class: t.class.to_string(),
                    curvature: show(&t.curvature),
                    ricci: show(&t.ricci),
                }),
                Err(e) => {
                    notes.push(format!("template check skipped: {e}"));
                    None
                }
            };
            CurvatureSection {
                connection: nonzero(rep.connection.nonzero().into_iter(), tol),
                r_nonzero: nonzero(independent_components(&rep.r, tol).into_iter(), tol),
                rho: nonzero(rep.rho.entries().map(|((i, j), v)| ([i, j], v.clone())), tol),
                rho_star: nonzero(rep.rho_star.entries().map(|((i, j), v)| ([i, j], v.clone())), tol),
                tau: show(&rep.tau),
                tau_star: show(&rep.tau_star),
                k01: show(&rep.sectional.k01),
                k02: show(&rep.sectional.k02),
                k12: show(&rep.sectional.k12),
                flat: rep.is_flat(tol),
                einstein: EinsteinReport {
                    labels: rep.einstein.labels.iter().map(ToString::to_string).collect(),
                    complex: rep.einstein.complex.as_ref().map(|c| coefficients(c, tol)),
                    contact: rep.einstein.contact.as_ref().map(|c| coefficients(c, tol)),
                },
                defects: Defects {
                    r3_identity: show(&rep.r3_defect),
                    curvature_symmetry: show(&rep.symmetry_defect.max()),
                    kaehler: show(&rep.kaehler_defect),
                    phi_killed: show(&rep.phi_killed_defect),
                    template,
                },
            }
        });

        Report {
            input: input.clone(),
            jacobi: JacobiStatus {
                satisfied: true,
                max_defect: show(&max_abs(&alg.constants().jacobi_defect())),
            },
            classification,
            curvature,
            notes,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn subscript(index: &[usize]) -> String {
    index.iter().map(ToString::to_string).collect()
}

fn write_components(f: &mut fmt::Formatter<'_>, symbol: &str, items: &[Component]) -> fmt::Result {
    if items.is_empty() {
        return writeln!(f, "  {symbol}: all zero");
    }
    for c in items {
        writeln!(f, "  {symbol}_{} = {}", subscript(&c.index), c.value)?;
    }
    Ok(())
}

fn write_coefficients(f: &mut fmt::Formatter<'_>, what: &str, c: &Option<CoefficientsReport>) -> fmt::Result {
    match c {
        Some(c) => writeln!(f, "  {what}: lambda = {}, mu = {}, nu = {}", c.lambda, c.mu, c.nu),
        None => writeln!(f, "  {what}: no solution"),
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.classification;
        writeln!(f, "mode: {}", self.input.mode)?;
        writeln!(
            f,
            "jacobi: {} (max defect {})",
            if self.jacobi.satisfied { "ok" } else { "violated" },
            self.jacobi.max_defect
        )?;
        writeln!(f, "membership: {{{}}}", c.membership.join(","))?;
        writeln!(f, "parameters:")?;
        for p in &c.parameters {
            writeln!(f, "  {} = {}", p.name, p.value)?;
        }
        writeln!(f, "Lee forms:")?;
        writeln!(f, "  theta  = ({})", c.lee_forms.theta.join(", "))?;
        writeln!(f, "  theta* = ({})", c.lee_forms.theta_star.join(", "))?;
        writeln!(f, "  omega  = ({})", c.lee_forms.omega.join(", "))?;
        writeln!(f, "F (nonzero components):")?;
        write_components(f, "F", &c.f_nonzero)?;
        writeln!(f, "  identity defect = {}", c.f_identity_defect)?;
        writeln!(f, "special structures (definition / class condition):")?;
        for s in &c.special_structures {
            writeln!(f, "  {}: {} / {}", s.name, s.direct, s.by_class)?;
        }
        if let Some(k) = &self.curvature {
            writeln!(f, "connection (nabla_Ei Ej = sum_k G_ijk Ek):")?;
            write_components(f, "G", &k.connection)?;
            writeln!(f, "curvature:")?;
            write_components(f, "R", &k.r_nonzero)?;
            write_components(f, "rho", &k.rho)?;
            write_components(f, "rho*", &k.rho_star)?;
            writeln!(f, "  tau = {}", k.tau)?;
            writeln!(f, "  tau* = {}", k.tau_star)?;
            writeln!(f, "  k01 = {}, k02 = {}, k12 = {}", k.k01, k.k02, k.k12)?;
            writeln!(f, "  flat: {}", k.flat)?;
            writeln!(f, "Einstein: {}", k.einstein.labels.join(", "))?;
            write_coefficients(f, "complex", &k.einstein.complex)?;
            write_coefficients(f, "contact", &k.einstein.contact)?;
            let d = &k.defects;
            writeln!(f, "defects:")?;
            writeln!(f, "  R3 identity = {}", d.r3_identity)?;
            writeln!(f, "  curvature symmetry = {}", d.curvature_symmetry)?;
            writeln!(f, "  Kaehler = {}", d.kaehler)?;
            writeln!(f, "  phi-killed = {}", d.phi_killed)?;
            if let Some(t) = &d.template {
                writeln!(f, "  {} template: R {}, rho {}", t.class, t.curvature, t.ricci)?;
            }
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{construct_class_family, construct_example, ExampleSpec, FamilySpec};
    use crate::scalar::Rational;
    use crate::structure::BasicClass;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn full(alg: &LieAlgebra<Rational>) -> Report {
        let doc = InputDocument::from_constants(alg.constants());
        Report::build(&doc, alg, &Tolerance::default(), true)
    }

    #[test]
    fn example_report_values() {
        let alg = construct_example(&ExampleSpec { a1: q(1), a2: q(3) });
        let rep = full(&alg);
        assert_eq!(rep.classification.membership, ["F9", "F10"]);
        let param = |n: &str| {
            rep.classification.parameters.iter().find(|p| p.name == n).unwrap().value.clone()
        };
        assert_eq!(param("mu"), "1");
        assert_eq!(param("nu"), "-6");
        let k = rep.curvature.as_ref().unwrap();
        assert_eq!(k.tau, "-2");
        assert_eq!(k.tau_star, "-12");
        assert_eq!(k.defects.r3_identity, "0");
        assert!(k.defects.template.is_none());
        assert_eq!(k.einstein.complex.as_ref().unwrap().lambda, "0");
    }

    #[test]
    fn json_round_trip() {
        let spec = FamilySpec::new(BasicClass::F11, Rational::from_ratio(1, 2), q(-2)).unwrap();
        let rep = full(&construct_class_family(&spec).unwrap());
        let back: Report = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(back, rep);
    }

    #[test]
    fn flat_family_prints_flat() {
        let spec = FamilySpec::new(BasicClass::F10, q(3), q(0)).unwrap();
        let rep = full(&construct_class_family(&spec).unwrap());
        let text = rep.to_string();
        assert!(text.contains("flat: true"), "{text}");
        assert!(text.contains("F10 template: R 0, rho 0"), "{text}");
    }

    #[test]
    fn classification_only_omits_curvature() {
        let alg = LieAlgebra::<Rational>::abelian();
        let doc = InputDocument::from_constants(alg.constants());
        let rep = Report::build(&doc, &alg, &Tolerance::default(), false);
        assert!(rep.curvature.is_none());
        assert_eq!(rep.classification.membership, ["F0"]);
        assert!(!rep.to_json().contains("curvature"));
    }
}
