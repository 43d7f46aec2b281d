//! Leakage case data: resonant pair states, dominant leakage channels and
//! the reference missing populations, loaded from a versioned TOML file.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonians::CouplingSet;

pub const CASE_FORMAT_VERSION: u32 = 1;

/// Shipped case table.
pub const BUILTIN_CASES: &str = include_str!("../data/cases.toml");

fn default_b_mhz() -> f64 {
    350.0
}

fn default_alpha() -> f64 {
    0.1
}

fn default_sigma_ratio() -> f64 {
    0.2
}

/// Resonant pair and its tuning conditions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairStates {
    pub r_c: String,
    pub r_t: String,
    pub a_c: String,
    pub b_t: String,
    pub c3_ghz_um3: f64,
    pub btau_300k: f64,
    pub btau_4k: f64,
    pub stark_field_v_per_m: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeakageStates {
    pub a_c_prime: String,
    pub b_t_prime: String,
    pub b_c_prime: String,
    pub a_t_prime: String,
}

/// One leakage configuration; frequencies in MHz.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeakageCase {
    #[serde(default)]
    pub id: u32,
    #[serde(default = "default_b_mhz")]
    pub b_mhz: f64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_sigma_ratio")]
    pub sigma_ratio: f64,
    /// Overrides T_t = 2π/(αB).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration_ns: Option<f64>,
    pub b_rr_ratio: f64,
    pub defect_rr_mhz: f64,
    pub b_ab_ratio: f64,
    pub defect_ab_mhz: f64,
    /// Reference missing population, if known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub missing: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairStates>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leakage: Option<LeakageStates>,
}

impl LeakageCase {
    pub fn validate(&self) -> Result<()> {
        let bad = |name: &str, v: f64| Error::param(format!("case {}: {name}", self.id), format!("invalid value {v}"));
        if !(self.b_mhz.is_finite() && self.b_mhz > 0.0) {
            return Err(bad("b_mhz", self.b_mhz));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(bad("alpha", self.alpha));
        }
        if !(self.sigma_ratio.is_finite() && self.sigma_ratio > 0.0) {
            return Err(bad("sigma_ratio", self.sigma_ratio));
        }
        if let Some(d) = self.duration_ns {
            if !(d.is_finite() && d > 0.0) {
                return Err(bad("duration_ns", d));
            }
        }
        for (n, v) in [
            ("b_rr_ratio", self.b_rr_ratio),
            ("defect_rr_mhz", self.defect_rr_mhz),
            ("b_ab_ratio", self.b_ab_ratio),
            ("defect_ab_mhz", self.defect_ab_mhz),
        ] {
            if !v.is_finite() {
                return Err(bad(n, v));
            }
        }
        Ok(())
    }

    /// Angular B in rad/µs.
    pub fn exchange(&self) -> f64 {
        std::f64::consts::TAU * self.b_mhz
    }

    /// Pulse duration in µs.
    pub fn duration(&self) -> f64 {
        match self.duration_ns {
            Some(ns) => ns * 1e-3,
            None => std::f64::consts::TAU / (self.alpha * self.exchange()),
        }
    }

    pub fn couplings(&self) -> CouplingSet {
        let b = self.exchange();
        let w = |mhz: f64| std::f64::consts::TAU * mhz;
        CouplingSet {
            exchange: b,
            b_rr: self.b_rr_ratio * b,
            b_ab: self.b_ab_ratio * b,
            defect: 0.0,
            defect_rr: w(self.defect_rr_mhz),
            defect_ab: w(self.defect_ab_mhz),
            blockade_shift: 0.0,
        }
    }

    pub fn from_toml_str(s: &str) -> Result<Self> {
        let c: LeakageCase = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::from_toml_str(&std::fs::read_to_string(path)?)
            .map_err(|e| match e {
                Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
                other => other,
            })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseTable {
    pub version: u32,
    #[serde(rename = "case")]
    pub cases: Vec<LeakageCase>,
}

impl CaseTable {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let t: CaseTable = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        if t.version != CASE_FORMAT_VERSION {
            return Err(Error::Config(format!(
                "case table version {} not supported (expected {CASE_FORMAT_VERSION})",
                t.version
            )));
        }
        for c in &t.cases {
            c.validate()?;
        }
        Ok(t)
    }

    pub fn builtin() -> Self {
        Self::from_toml_str(BUILTIN_CASES).expect("shipped case table parses")
    }

    pub fn get(&self, id: u32) -> Result<&LeakageCase> {
        self.cases.iter().find(|c| c.id == id).ok_or_else(|| {
            let ids: Vec<String> = self.cases.iter().map(|c| c.id.to_string()).collect();
            Error::param("case", format!("unknown case {id} (available: {})", ids.join(", ")))
        })
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("case table serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_table_transcription() {
        let t = CaseTable::builtin();
        assert_eq!(t.cases.len(), 5);
        let missing: Vec<f64> = t.cases.iter().map(|c| c.missing.unwrap()).collect();
        assert_eq!(missing, vec![1.4e-5, 1.7e-6, 5.5e-5, 9.5e-6, 6.4e-6]);
        let c2 = t.get(2).unwrap();
        assert_eq!((c2.b_rr_ratio, c2.defect_rr_mhz, c2.b_ab_ratio, c2.defect_ab_mhz), (0.66, -259.0, -2.17, 1990.0));
        let c3: Vec<f64> = t.cases.iter().map(|c| c.pair.as_ref().unwrap().c3_ghz_um3).collect();
        assert_eq!(c3, vec![-64.4, 65.3, -51.4, -68.2, -33.0]);
        let p5 = t.get(5).unwrap().pair.clone().unwrap();
        assert_eq!((p5.btau_300k, p5.btau_4k, p5.stark_field_v_per_m), (2.7e6, 10.7e6, 34.7));
        assert_eq!(t.get(4).unwrap().leakage.as_ref().unwrap().a_t_prime, "101p3/2 -1/2");
        assert!(t.get(9).is_err());
    }

    #[test]
    fn round_trip() {
        let t = CaseTable::builtin();
        let back = CaseTable::from_toml_str(&t.to_toml_string()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn defaults_and_duration() {
        let c = LeakageCase::from_toml_str(
            "b_rr_ratio = 0.5\ndefect_rr_mhz = 500\nb_ab_ratio = 0.5\ndefect_ab_mhz = 500",
        )
        .unwrap();
        assert_eq!(c.b_mhz, 350.0);
        // 2π / (0.1 · 2π · 350 MHz)
        assert!((c.duration() * 1e3 - 28.5714).abs() < 1e-3);
        let mut d = c.clone();
        d.duration_ns = Some(29.0);
        assert!((d.duration() - 0.029).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_versions_and_values() {
        assert!(CaseTable::from_toml_str("version = 2\ncase = []").is_err());
        assert!(LeakageCase::from_toml_str("b_rr_ratio = 0.5\ndefect_rr_mhz = 1\nb_ab_ratio = 0\ndefect_ab_mhz = 1\nalpha = 2").is_err());
        assert!(LeakageCase::from_toml_str("b_rr_ratio = 0.5").is_err());
    }
}
