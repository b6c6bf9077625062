//! `--expect FAMILY[:v1[:v2…]]`: positional values fill the family's scalar parameters in
//! the order given by [`keys`].

use std::str::FromStr;

use holokit::catalog::{
    build_algebra, identify, FamilyId, FamilySpec, Identification, StandardFrame,
};
use holokit::exactnum::{parse_q, Q};
use holokit::liealg::MatrixLieAlgebra;
use holokit::linalg::Matrix;
use holokit::{Error, Result};

#[derive(Clone, Debug)]
pub struct Expectation {
    pub family: FamilyId,
    pub values: Vec<Q>,
    pub raw: String,
}

/// Parameter names filled by the positional values.
pub fn keys(f: FamilyId) -> &'static [&'static str] {
    use FamilyId::*;
    match f {
        HolN0Gamma => &["gamma1", "gamma2"],
        HolLambda => &["m", "lambda"],
        HolA1A2Tilde | HolA1PhiHat | HolPhiPhiHat | HolPhiA2Tilde | TwirA1 | TwirPhi | Lorentz4 => {
            &["m"]
        }
        HolPsiKL | TwirPsiKL => &["k", "l"],
        HolPsiKLR | TwirPsiKLR => &["m", "k", "l", "r"],
        TwirZeroPsiK | TwirZeroPsiKZeta => &["k"],
        _ => &[],
    }
}

impl FromStr for Expectation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let family = FamilyId::parse(parts.next().unwrap_or_default())?;
        let values = parts.map(parse_q).collect::<Result<Vec<_>>>()?;
        let k = keys(family);
        if values.len() > k.len() {
            return Err(Error::Parse(format!(
                "{} takes at most {} value(s) ({}), got {}",
                family.name(),
                k.len(),
                k.join(", "),
                values.len()
            )));
        }
        Ok(Expectation {
            family,
            values,
            raw: s.to_string(),
        })
    }
}

fn as_index(key: &str, q: &Q) -> Result<usize> {
    if !q.is_integer() || q < &Q::from_integer(0.into()) {
        return Err(Error::Parse(format!(
            "{key} must be a non-negative integer"
        )));
    }
    q.to_integer()
        .to_string()
        .parse()
        .map_err(|_| Error::Parse(format!("{key} is out of range")))
}

fn field(spec: &FamilySpec, key: &str) -> Q {
    let i = |x: usize| Q::from_integer((x as i64).into());
    match key {
        "m" => i(spec.m),
        "k" => i(spec.k),
        "l" => i(spec.l),
        "r" => i(spec.r),
        "lambda" => spec.lambda.clone(),
        "gamma1" => spec.gamma1.clone(),
        _ => spec.gamma2.clone(),
    }
}

impl Expectation {
    /// The family in `frame` with the given values and everything else at its default.
    pub fn spec(&self, frame: &StandardFrame) -> Result<FamilySpec> {
        let mut s = FamilySpec::new(self.family, frame.n());
        if self.family.is_lorentz() && frame.eta_e() != Matrix::identity(frame.n()) {
            s.eta_e = Some(frame.eta_e());
        }
        for (key, v) in keys(self.family).iter().zip(&self.values) {
            match *key {
                "m" => s.m = as_index(key, v)?,
                "k" => s.k = as_index(key, v)?,
                "l" => s.l = as_index(key, v)?,
                "r" => s.r = as_index(key, v)?,
                "lambda" => s.lambda = v.clone(),
                "gamma1" => s.gamma1 = v.clone(),
                _ => s.gamma2 = v.clone(),
            }
        }
        Ok(s)
    }

    fn agrees_with(&self, found: &FamilySpec) -> bool {
        found.family == self.family
            && keys(self.family)
                .iter()
                .zip(&self.values)
                .all(|(k, v)| &field(found, k) == v)
    }

    /// Passes when the family built from the given values equals `alg`, or else when
    /// identification over `sweep` finds this family with the given values.
    pub fn check(
        &self,
        alg: &MatrixLieAlgebra,
        frame: &StandardFrame,
        sweep: &[FamilySpec],
    ) -> Result<(bool, String)> {
        let spec = self.spec(frame)?;
        if let Ok(direct) = build_algebra(&spec) {
            if direct.ambient().eta() == alg.ambient().eta() && direct.subspace() == alg.subspace()
            {
                return Ok((true, spec.label()));
            }
        }
        Ok(match identify(alg, frame, sweep)? {
            Identification::Exact { family, label } => (self.agrees_with(&family), label),
            Identification::Unknown { .. } => (false, "unknown".into()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_family_and_values() {
        let e: Expectation = "n0-gamma:0:1/2".parse().unwrap();
        assert_eq!(e.family, FamilyId::HolN0Gamma);
        assert_eq!(e.values.len(), 2);
        assert!("n0-gamma:0:0:0".parse::<Expectation>().is_err());
        assert!("no-such-family".parse::<Expectation>().is_err());
        assert_eq!("lorentz2".parse::<Expectation>().unwrap().values.len(), 0);
    }

    #[test]
    fn index_values_must_be_integers() {
        let e: Expectation = "m-u-lambda:1/2:3".parse().unwrap();
        assert!(e.spec(&StandardFrame::pseudo_kaehler(1)).is_err());
        let e: Expectation = "m-u-lambda:1:3".parse().unwrap();
        let s = e.spec(&StandardFrame::pseudo_kaehler(1)).unwrap();
        assert_eq!((s.m, s.lambda), (1, Q::from_integer(3.into())));
    }

    #[test]
    fn direct_match_and_mismatch() {
        let f = StandardFrame::pseudo_kaehler(0);
        let alg = build_algebra(&FamilySpec::new(FamilyId::HolN0Two, 0)).unwrap();
        let ok: Expectation = "n0-2".parse().unwrap();
        assert!(ok.check(&alg, &f, &[]).unwrap().0);
        let bad: Expectation = "n0-gamma:0:0".parse().unwrap();
        assert!(!bad.check(&alg, &f, &[]).unwrap().0);
    }
}
