use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Newton,
    /// `Y + H_0 + ... + H_k`.
    CatalanK(usize),
    /// `Y + H_0 + H_1 + H_2/2`, the three-solve scheme whose last line is
    /// itself a Sylvester equation for `Y_{n+1}`.
    Catalan4,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Newton => write!(f, "newton"),
            Self::CatalanK(k) => write!(f, "catalan:{k}"),
            Self::Catalan4 => write!(f, "catalan4"),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "newton" => Ok(Self::Newton),
            "catalan4" => Ok(Self::Catalan4),
            _ => {
                let k = s
                    .strip_prefix("catalan:")
                    .and_then(|k| k.parse::<usize>().ok())
                    .ok_or_else(|| Error::Config(format!("unknown method '{s}'")))?;
                if k == 0 {
                    return Err(Error::Config("catalan:<k> needs k >= 1".into()));
                }
                Ok(Self::CatalanK(k))
            }
        }
    }
}

/// Which linear operator the corrections invert.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SylvesterForm {
    /// `(TY - I) E + E (TY)`; Newton right-hand side `T Y^2`.
    Paper,
    /// Frechet derivative `T E Y + (TY - I) E`; Newton right-hand side `T Y^2 - I`.
    Derived,
}

impl fmt::Display for SylvesterForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Paper => "paper",
            Self::Derived => "derived",
        })
    }
}

impl FromStr for SylvesterForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Self::Paper),
            "derived" => Ok(Self::Derived),
            _ => Err(Error::Config(format!("unknown form '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Precision {
    Double,
    Extended { digits: u32 },
}

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 40;

    pub fn default_res_tol(self) -> f64 {
        match self {
            Self::Double => 1e-13,
            Self::Extended { .. } => 1e-20,
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Double => write!(f, "double"),
            Self::Extended { digits } => write!(f, "extended:{digits}"),
        }
    }
}

impl FromStr for Precision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "double" {
            return Ok(Self::Double);
        }
        if s == "extended" {
            return Ok(Self::Extended { digits: Self::DEFAULT_DIGITS });
        }
        let digits = s
            .strip_prefix("extended:")
            .and_then(|d| d.parse::<u32>().ok())
            .filter(|&d| (16..=10_000).contains(&d))
            .ok_or_else(|| Error::Config(format!("bad precision '{s}'")))?;
        Ok(Self::Extended { digits })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub method: Method,
    pub max_iters: usize,
    pub res_tol: f64,
    pub form: SylvesterForm,
    pub precision: Precision,
}

impl SolverConfig {
    pub fn new(method: Method, precision: Precision) -> Self {
        Self {
            method,
            max_iters: 50,
            res_tol: precision.default_res_tol(),
            form: SylvesterForm::Derived,
            precision,
        }
    }

    pub fn with_form(mut self, form: SylvesterForm) -> Self {
        self.form = form;
        self
    }

    pub fn with_tol(mut self, res_tol: f64) -> Self {
        self.res_tol = res_tol;
        self
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.res_tol > 0.0) || !self.res_tol.is_finite() {
            return Err(Error::Config(format!("res_tol must be positive, got {}", self.res_tol)));
        }
        if self.max_iters == 0 {
            return Err(Error::Config("max_iters must be at least 1".into()));
        }
        if self.method == Method::CatalanK(0) {
            return Err(Error::Config("CatalanK needs k >= 1".into()));
        }
        Ok(())
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self::new(Method::Newton, Precision::Double)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_roundtrip() {
        for m in [Method::Newton, Method::CatalanK(3), Method::Catalan4] {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
        for p in [Precision::Double, Precision::Extended { digits: 60 }] {
            assert_eq!(p.to_string().parse::<Precision>().unwrap(), p);
        }
        assert!("catalan:0".parse::<Method>().is_err());
        assert!("extended:3".parse::<Precision>().is_err());
    }

    #[test]
    fn defaults() {
        let c = SolverConfig::default();
        assert_eq!(c.max_iters, 50);
        assert_eq!(c.res_tol, 1e-13);
        let e = SolverConfig::new(Method::Catalan4, Precision::Extended { digits: 40 });
        assert_eq!(e.res_tol, 1e-20);
        assert!(c.with_tol(0.0).validate().is_err());
        assert!(c.with_max_iters(0).validate().is_err());
    }
}
