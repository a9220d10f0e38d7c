//! Interchangeable stability tests behind one trait, looked up by name.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::oracle::{oracle_verdict, OracleConfig};
use crate::poly::ComplexPolynomial;
use crate::routh::{classical_verdict_with, hurwitz_verdict_with, quartic_verdict, real_coefficients};
use crate::scalar::Tolerance;
use crate::verdict::StabilityVerdict;

/// Decides whether every root of a monic polynomial has negative real part.
pub trait StabilityTest: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// Errors when the polynomial is outside the test's domain (e.g. a
    /// complex polynomial handed to a real-only test).
    fn verdict(&self, p: &ComplexPolynomial) -> Result<StabilityVerdict>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct GeneralizedRouthHurwitz {
    pub tolerance: Tolerance,
}

impl StabilityTest for GeneralizedRouthHurwitz {
    fn name(&self) -> &'static str {
        "generalized"
    }

    fn description(&self) -> &'static str {
        "division-free generalized Routh-Hurwitz table (complex coefficients)"
    }

    fn verdict(&self, p: &ComplexPolynomial) -> Result<StabilityVerdict> {
        Ok(hurwitz_verdict_with(p, self.tolerance))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ClassicalRouth {
    pub tolerance: Tolerance,
}

impl StabilityTest for ClassicalRouth {
    fn name(&self) -> &'static str {
        "classical"
    }

    fn description(&self) -> &'static str {
        "classical Routh array (real coefficients only)"
    }

    fn verdict(&self, p: &ComplexPolynomial) -> Result<StabilityVerdict> {
        Ok(classical_verdict_with(&real_coefficients(p)?, self.tolerance))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct QuarticClosedForm {
    pub tolerance: Tolerance,
}

impl StabilityTest for QuarticClosedForm {
    fn name(&self) -> &'static str {
        "quartic"
    }

    fn description(&self) -> &'static str {
        "closed-form degree-4 conditions"
    }

    fn verdict(&self, p: &ComplexPolynomial) -> Result<StabilityVerdict> {
        quartic_verdict(p, self.tolerance)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RootOracle {
    pub config: OracleConfig,
}

impl StabilityTest for RootOracle {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn description(&self) -> &'static str {
        "Aberth-Ehrlich roots compared against the imaginary axis"
    }

    fn verdict(&self, p: &ComplexPolynomial) -> Result<StabilityVerdict> {
        Ok(oracle_verdict(p, self.config.margin))
    }
}

/// Shared knobs for the built-in tests.
#[derive(Clone, Copy, Debug, Default)]
pub struct CriterionConfig {
    pub tolerance: Tolerance,
    pub oracle: OracleConfig,
}

pub struct Registry {
    tests: BTreeMap<&'static str, Box<dyn StabilityTest>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry {
            tests: BTreeMap::new(),
        }
    }

    pub fn with_builtins(config: CriterionConfig) -> Self {
        let mut r = Registry::empty();
        r.register(Box::new(GeneralizedRouthHurwitz {
            tolerance: config.tolerance,
        }));
        r.register(Box::new(ClassicalRouth {
            tolerance: config.tolerance,
        }));
        r.register(Box::new(QuarticClosedForm {
            tolerance: config.tolerance,
        }));
        r.register(Box::new(RootOracle {
            config: config.oracle,
        }));
        r
    }

    /// Replaces any test already registered under the same name.
    pub fn register(&mut self, test: Box<dyn StabilityTest>) {
        self.tests.insert(test.name(), test);
    }

    pub fn get(&self, name: &str) -> Result<&dyn StabilityTest> {
        self.tests
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::UnknownTest {
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.tests.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn StabilityTest> {
        self.tests.values().map(|b| b.as_ref())
    }
}

impl Default for Registry {
    fn default() -> Self {
        Registry::with_builtins(CriterionConfig::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Stability;

    #[test]
    fn builtins_registered() {
        let r = Registry::default();
        assert_eq!(r.names(), vec!["classical", "generalized", "oracle", "quartic"]);
        assert!(matches!(r.get("nope"), Err(Error::UnknownTest { .. })));
    }

    #[test]
    fn all_builtins_agree_on_real_quartic() {
        let p = ComplexPolynomial::from_real_integers(&[2, 3, 2, 1]).unwrap();
        for t in Registry::default().iter() {
            assert!(t.verdict(&p).unwrap().is_hurwitz(), "{}", t.name());
        }
    }

    #[test]
    fn domain_errors() {
        let r = Registry::default();
        let complex = ComplexPolynomial::from_integer_pairs(&[(1, 1)]).unwrap();
        assert!(matches!(r.get("classical").unwrap().verdict(&complex), Err(Error::NotReal)));
        assert!(matches!(
            r.get("quartic").unwrap().verdict(&complex),
            Err(Error::WrongDegree { .. })
        ));
        assert_eq!(
            r.get("generalized").unwrap().verdict(&complex).unwrap().stability,
            Stability::Hurwitz
        );
    }

    struct AlwaysInconclusive;

    impl StabilityTest for AlwaysInconclusive {
        fn name(&self) -> &'static str {
            "generalized"
        }
        fn description(&self) -> &'static str {
            "stub"
        }
        fn verdict(&self, _: &ComplexPolynomial) -> Result<StabilityVerdict> {
            Ok(StabilityVerdict::inconclusive(None))
        }
    }

    #[test]
    fn register_overrides_by_name() {
        let mut r = Registry::default();
        r.register(Box::new(AlwaysInconclusive));
        let p = ComplexPolynomial::from_real_integers(&[1]).unwrap();
        assert_eq!(r.get("generalized").unwrap().verdict(&p).unwrap().stability, Stability::Inconclusive);
        assert_eq!(r.names().len(), 4);
    }
}
