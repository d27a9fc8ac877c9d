//! TOML configuration for the two code families, and the built-in presets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cayley::{build_48_code, CayleySpec, CheckCycle};
use crate::coset::{build_tanner, GenericSpec};
use crate::matgroup::{enumerate_group, GroupKind, GroupTable, Mat2, Subgroup};
use crate::stabilizer::ParityCheck;
use crate::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Coset,
    Cayley,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coset" => Ok(Family::Coset),
            "cayley" => Ok(Family::Cayley),
            other => Err(Error::Config(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Coset => "coset",
            Family::Cayley => "cayley",
        })
    }
}

/// A group element written as one `[a, b, c, d]` quadruple per direct factor.
pub type ElementConfig = Vec<[i64; 4]>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosetConfig {
    /// `psl2`, `psl2xpsl2` or `det4`.
    pub group: String,
    pub p: u32,
    /// Generators of H; empty means the trivial subgroup.
    #[serde(default)]
    pub h: Vec<ElementConfig>,
    /// Generators of K.
    pub k: Vec<ElementConfig>,
    pub g_omega: Vec<ElementConfig>,
    pub g_omegabar: Vec<ElementConfig>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CayleyConfig {
    pub p: u32,
    pub g_plus: [i64; 4],
    pub g_minus: [i64; 4],
}

fn group_kind(name: &str, p: u32) -> Result<GroupKind> {
    match name.to_ascii_lowercase().as_str() {
        "psl2" => Ok(GroupKind::Psl2 { p }),
        "psl2xpsl2" => Ok(GroupKind::Psl2Squared { p }),
        "det4" => Ok(GroupKind::Det4 { p }),
        other => Err(Error::Config(format!("unknown group kind {other:?}"))),
    }
}

fn element(g: &GroupTable, e: &ElementConfig) -> Result<u32> {
    let p = g.kind().modulus();
    let mats: Vec<Mat2> = e.iter().map(|q| Mat2::new(p, *q)).collect();
    g.index_of_mats(&mats).ok_or_else(|| {
        Error::Config(format!("{e:?} is not an element of {}", g.kind()))
    })
}

impl CosetConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn to_spec(&self) -> Result<GenericSpec> {
        let group = enumerate_group(group_kind(&self.group, self.p)?)?;
        let ids = |list: &[ElementConfig]| -> Result<Vec<u32>> {
            list.iter().map(|e| element(&group, e)).collect()
        };
        let h = Subgroup::generated(&group, &ids(&self.h)?);
        let k = Subgroup::generated(&group, &ids(&self.k)?);
        let g_omega = ids(&self.g_omega)?;
        let g_omegabar = ids(&self.g_omegabar)?;
        Ok(GenericSpec {
            group,
            h,
            k,
            g_omega,
            g_omegabar,
        })
    }
}

impl CayleyConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn to_spec(&self) -> CayleySpec {
        CayleySpec::new(self.p, self.g_plus, self.g_minus)
    }
}

/// (6,12)-regular code of length 3600 over `PSL₂(F₅) × PSL₂(F₅)`.
pub fn coset_psl2_5_squared() -> CosetConfig {
    let id = [1, 0, 0, 1];
    let t = [1, 1, 0, 1];
    let s = [0, -1, 1, 0];
    let ti = [1, -1, 0, 1];
    let u = [1, 2, -1, -1];
    CosetConfig {
        group: "psl2xpsl2".into(),
        p: 5,
        h: vec![],
        k: vec![vec![u, u]],
        g_omega: vec![vec![t, id], vec![s, id], vec![ti, id]],
        g_omegabar: vec![vec![id, t], vec![id, s], vec![id, ti]],
    }
}

/// The reference `p = 13` generator pair. Here `g₋ = g₊⁻¹`, so the generating
/// set has two elements and the construction rejects it.
pub fn cayley_p13() -> CayleyConfig {
    CayleyConfig {
        p: 13,
        g_plus: [9, 9, 12, 10],
        g_minus: [11, 7, 5, 6],
    }
}

/// (4,8)-regular code of length 8736 over `F₁₃`, `k = 4370`. Keeps `g₋` of
/// [`cayley_p13`] and takes `g₊` with determinant `-1`.
pub fn cayley_p13_alt() -> CayleyConfig {
    CayleyConfig {
        p: 13,
        g_plus: [1, 2, 12, 10],
        g_minus: [11, 7, 5, 6],
    }
}

/// Output of [`build_code`].
#[derive(Clone, Debug)]
pub struct BuiltCode {
    pub parity: ParityCheck,
    /// Check cycles, for the Cayley family.
    pub cycles: Option<Vec<CheckCycle>>,
}

/// Parses a family config and runs the matching construction.
pub fn build_code(family: Family, config_text: &str) -> Result<BuiltCode> {
    match family {
        Family::Coset => {
            let spec = CosetConfig::from_toml(config_text)?.to_spec()?;
            let code = build_tanner(&spec)?;
            Ok(BuiltCode {
                parity: code.tanner.to_parity_check()?,
                cycles: None,
            })
        }
        Family::Cayley => {
            let spec = CayleyConfig::from_toml(config_text)?.to_spec();
            let code = build_48_code(&spec)?;
            Ok(BuiltCode {
                parity: code.tanner.to_parity_check()?,
                cycles: Some(code.cycles),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_configs_match_presets() {
        let coset = include_str!("../configs/coset_psl2_5.toml");
        assert_eq!(CosetConfig::from_toml(coset).unwrap(), coset_psl2_5_squared());
        let cayley = include_str!("../configs/cayley_p13.toml");
        assert_eq!(CayleyConfig::from_toml(cayley).unwrap(), cayley_p13());
        let alt = include_str!("../configs/cayley_p13_alt.toml");
        assert_eq!(CayleyConfig::from_toml(alt).unwrap(), cayley_p13_alt());
    }

    #[test]
    fn toml_round_trip() {
        let c = coset_psl2_5_squared();
        assert_eq!(CosetConfig::from_toml(&c.to_toml()).unwrap(), c);
        let c = cayley_p13();
        assert_eq!(CayleyConfig::from_toml(&c.to_toml()).unwrap(), c);
    }

    #[test]
    fn bad_configs() {
        assert!(CayleyConfig::from_toml("p = 13\ng_plus = [1,2,3]\ng_minus=[1,0,0,1]").is_err());
        assert!(CayleyConfig::from_toml("p = 13\ng_plus = [1,0,0,1]\ng_minus=[1,0,0,1]\nx=1").is_err());
        let mut c = coset_psl2_5_squared();
        c.group = "sl3".into();
        assert!(c.to_spec().is_err());
        let mut c = coset_psl2_5_squared();
        c.k = vec![vec![[2, 0, 0, 1], [1, 0, 0, 1]]];
        assert!(matches!(c.to_spec(), Err(Error::Config(_))));
        assert!("torus".parse::<Family>().is_err());
    }
}
