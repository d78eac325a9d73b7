//! JSON model configurations for the CLI.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::builders::{self, Sign};
use crate::error::{Error, Result};
use crate::model::{PseudoOddConstant, SusyConstants, SusyModel};
use crate::poly::Polynomial;
use crate::ratfun::RationalFunction;
use crate::rational::Rational;

pub const SCHEMA_VERSION: u32 = 1;

/// Rational function as numerator/denominator coefficient lists, lowest
/// degree first. Coefficients accept integers, `"n/d"` strings, or
/// `[num, den]` pairs.
#[derive(Clone, Debug, Deserialize)]
pub struct RatFunSpec {
    pub num: Vec<Rational>,
    #[serde(default)]
    pub den: Option<Vec<Rational>>,
}

impl RatFunSpec {
    pub fn to_function(&self) -> Result<RationalFunction> {
        let num = Polynomial::new(self.num.clone());
        let den = match &self.den {
            Some(cs) => Polynomial::new(cs.clone()),
            None => Polynomial::one(),
        };
        RationalFunction::new(num, den)
    }
}

fn default_sign() -> String {
    "+".into()
}

#[derive(Clone, Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ConfigOptions {
    /// Reject the formal odd-constant family outright instead of
    /// constructing it.
    #[serde(default)]
    pub strict_case33: bool,
    /// The formal odd constant admitted in the degenerate family.
    #[serde(default)]
    pub pseudo_odd: i64,
    /// Branch sign for the v1- = ±w1- family: "+" or "-".
    #[serde(default = "default_sign")]
    pub sign: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub schema_version: u32,
    /// One of: "one-fold", "manual", "1", "2", "3-1", "3-2", "3-3",
    /// "4", "5".
    pub case: String,
    #[serde(default)]
    pub functions: BTreeMap<String, RatFunSpec>,
    #[serde(default)]
    pub constants: SusyConstants,
    #[serde(default)]
    pub options: ConfigOptions,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg: Config = serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        if cfg.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                cfg.schema_version
            )));
        }
        Ok(cfg)
    }

    fn function(&self, name: &str) -> Result<RationalFunction> {
        self.functions
            .get(name)
            .ok_or_else(|| {
                Error::Config(format!(
                    "case {:?} requires a function named {name:?}",
                    self.case
                ))
            })?
            .to_function()
    }

    pub fn build_model(&self) -> Result<SusyModel> {
        let c = &self.constants;
        match self.case.as_str() {
            "one-fold" => {
                builders::build_one_fold(&self.function("w0")?, &self.function("v0_minus")?, c)
            }
            "manual" => builders::build_two_fold(
                &self.function("w1_even")?,
                &self.function("w1_odd")?,
                &self.function("v1_odd")?,
                &self.function("w0_even")?,
                &self.function("w0_odd")?,
                &self.function("v0_even")?,
                &self.function("v0_odd")?,
                c,
            ),
            "1" => builders::solve_case1(
                &self.function("w1_even")?,
                &self.function("w1_odd")?,
                &self.function("v1_odd")?,
                c,
            ),
            "2" => builders::solve_case2(
                &self.function("w1_even")?,
                &self.function("w1_odd")?,
                &self.function("v1_odd")?,
                &self.function("w0_even")?,
                c,
            ),
            "3-1" => builders::solve_case3_1(
                &self.function("w1_even")?,
                &self.function("v0_minus")?,
                c,
            ),
            "3-2" => builders::solve_case3_2(
                &self.function("v1_odd")?,
                &self.function("v0_minus")?,
                c,
            ),
            "3-3" => builders::solve_case3_3(
                &self.function("w0_even")?,
                &self.function("w0_odd")?,
                &self.function("v0_even")?,
                PseudoOddConstant(self.options.pseudo_odd),
                c,
                self.options.strict_case33,
            ),
            "4" => builders::solve_case4(
                &self.function("w1_odd")?,
                &self.function("v1_odd")?,
                c,
            ),
            "5" => {
                let sign = match self.options.sign.as_str() {
                    "+" => Sign::Plus,
                    "-" => Sign::Minus,
                    s => {
                        return Err(Error::Config(format!(
                            "options.sign must be \"+\" or \"-\", got {s:?}"
                        )))
                    }
                };
                builders::solve_case5(&self.function("w1_odd")?, sign, &self.function("v0_even")?, c)
            }
            other => Err(Error::Config(format!(
                "unknown case {other:?} (expected one-fold, manual, 1, 2, 3-1, 3-2, 3-3, 4, or 5)"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_build_one_fold() {
        let cfg: Config = serde_json::from_str(
            r#"{
                "schema_version": 1,
                "case": "one-fold",
                "functions": {
                    "w0": {"num": [0, 1]},
                    "v0_minus": {"num": [0]}
                },
                "constants": {"C00": "-1/2"}
            }"#,
        )
        .unwrap();
        let model = cfg.build_model().unwrap();
        assert_eq!(model.order_n, 1);
        assert_eq!(model.constants.c00, Rational::new(-1, 2));
    }

    #[test]
    fn unknown_case_is_rejected() {
        let cfg: Config = serde_json::from_str(
            r#"{"schema_version": 1, "case": "6", "functions": {}}"#,
        )
        .unwrap();
        assert!(matches!(cfg.build_model(), Err(Error::Config(_))));
    }
}
