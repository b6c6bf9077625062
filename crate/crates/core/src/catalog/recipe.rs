//! Serializable metric recipes and the built-in examples.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::PolynomialMetric;
use crate::linalg::Matrix;

use super::families::{FamilyId, FamilySpec};
use super::generators::{
    g2_generators, g2_p, rho_so3_p, rho_so3_rational, spin7_generators, spin7_p,
};
use super::lorentz::build_lorentz_metric;
use super::pk::build_pk_metric;

/// What to build: a Lorentzian family with its `P_α ∈ P(h)`, or a pseudo-Kähler family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum MetricRecipe {
    Lorentz {
        family: FamilySpec,
        /// `p[α][i] = P_α(e_i)`.
        #[serde(default)]
        p: Vec<Vec<Matrix>>,
    },
    PseudoKaehler {
        family: FamilySpec,
    },
}

pub const BUILTIN_RECIPES: [&str; 3] = ["ikemakhen", "g2", "spin7"];

fn lorentz2(n: usize, eta_e: Option<Matrix>, h: Vec<Matrix>, p: Vec<Matrix>) -> MetricRecipe {
    let mut family = FamilySpec::new(FamilyId::Lorentz2, n);
    family.eta_e = eta_e;
    family.h_basis = h;
    MetricRecipe::Lorentz { family, p: vec![p] }
}

impl MetricRecipe {
    pub fn family(&self) -> &FamilySpec {
        match self {
            MetricRecipe::Lorentz { family, .. } | MetricRecipe::PseudoKaehler { family } => family,
        }
    }

    /// Type-2 metrics for `ρ(so(3)) ⊂ so(5)` (rescaled coordinates), `g₂` and `spin(7)`.
    pub fn builtin(name: &str) -> Result<Self> {
        Ok(match name {
            "ikemakhen" => {
                let (eta_e, h) = rho_so3_rational();
                lorentz2(5, Some(eta_e), h, rho_so3_p())
            }
            "g2" => lorentz2(7, None, g2_generators(), g2_p()),
            "spin7" => lorentz2(8, None, spin7_generators(), spin7_p()),
            other => {
                return Err(Error::Parse(format!(
                    "unknown recipe '{other}' (expected one of {})",
                    BUILTIN_RECIPES.join(", ")
                )))
            }
        })
    }

    pub fn build(&self) -> Result<PolynomialMetric> {
        match self {
            MetricRecipe::Lorentz { family, p } => build_lorentz_metric(family, p),
            MetricRecipe::PseudoKaehler { family } => {
                if family.family.is_lorentz() {
                    return Err(Error::Invalid(format!(
                        "{} is a Lorentz family",
                        family.family.name()
                    )));
                }
                build_pk_metric(family)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::StandardFrame;
    use crate::exactnum::qi;

    #[test]
    fn json_round_trip() {
        let mut s = FamilySpec::new(FamilyId::HolLambda, 1);
        s.m = 1;
        s.lambda = qi(2);
        for r in [
            MetricRecipe::PseudoKaehler { family: s },
            MetricRecipe::builtin("ikemakhen").unwrap(),
        ] {
            let j = serde_json::to_string(&r).unwrap();
            assert_eq!(serde_json::from_str::<MetricRecipe>(&j).unwrap(), r);
        }
    }

    #[test]
    fn builtins_start_at_eta() {
        for name in BUILTIN_RECIPES {
            let r = MetricRecipe::builtin(name).unwrap();
            let g = r.build().unwrap();
            assert_eq!(g.eta(), r.family().frame().unwrap().eta().clone(), "{name}");
        }
        assert!(MetricRecipe::builtin("nope").is_err());
    }

    #[test]
    fn pk_recipe_rejects_lorentz_family() {
        let r = MetricRecipe::PseudoKaehler {
            family: FamilySpec::new(FamilyId::Lorentz2, 0),
        };
        assert!(r.build().is_err());
        let g = MetricRecipe::PseudoKaehler {
            family: FamilySpec::new(FamilyId::HolN0Two, 0),
        }
        .build()
        .unwrap();
        assert_eq!(g.eta(), StandardFrame::pseudo_kaehler(0).eta().clone());
    }
}
