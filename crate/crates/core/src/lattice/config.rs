use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Matrix, Rational};

/// Kodaira type of a singular fibre.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberKind {
    /// I_1: an irreducible nodal rational curve.
    Nodal,
    /// I_n with n >= 3: a cycle of n smooth rational curves.
    I(u32),
}

impl FiberKind {
    pub fn euler_number(self) -> u64 {
        match self {
            FiberKind::Nodal => 1,
            FiberKind::I(n) => u64::from(n),
        }
    }

    /// Components not meeting the section.
    pub fn extra_components(self) -> usize {
        match self {
            FiberKind::Nodal => 0,
            FiberKind::I(n) => n as usize - 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiberGroup {
    pub kind: FiberKind,
    pub count: u32,
}

/// Singular-fibre configuration plus an optional Gram matrix for the
/// transcendental lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberConfig {
    pub fibers: Vec<FiberGroup>,
    pub transcendental_gram: Option<Matrix>,
}

#[derive(Serialize, Deserialize)]
struct RawFiber {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    count: u32,
}

#[derive(Serialize, Deserialize)]
struct RawConfig {
    fibers: Vec<RawFiber>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    transcendental_gram: Option<Vec<Vec<Rational>>>,
}

impl FiberConfig {
    /// 24 nodal fibres with the default transcendental lattice.
    pub fn nodal24() -> Self {
        FiberConfig {
            fibers: vec![FiberGroup {
                kind: FiberKind::Nodal,
                count: 24,
            }],
            transcendental_gram: None,
        }
    }

    pub fn euler_sum(&self) -> u64 {
        self.fibers
            .iter()
            .map(|g| g.kind.euler_number() * u64::from(g.count))
            .sum()
    }

    /// Rank contributed to the Picard lattice by fibre components (the `r`
    /// in `2 + r`).
    pub fn component_rank(&self) -> usize {
        self.fibers
            .iter()
            .map(|g| g.kind.extra_components() * g.count as usize)
            .sum()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawConfig =
            serde_json::from_str(text).map_err(|e| Error::parse("fibre configuration", e.to_string()))?;
        let fibers = raw
            .fibers
            .into_iter()
            .map(|f| {
                let kind = match (f.kind.to_ascii_lowercase().as_str(), f.n) {
                    ("nodal", None) | ("nodal", Some(1)) | ("i", Some(1)) => FiberKind::Nodal,
                    ("i", Some(n)) if n >= 3 => FiberKind::I(n),
                    ("i", Some(n)) => return Err(Error::UnsupportedFiber(n)),
                    _ => return Err(Error::parse("fibre kind", format!("{} n={:?}", f.kind, f.n))),
                };
                Ok(FiberGroup {
                    kind,
                    count: f.count,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let transcendental_gram = raw.transcendental_gram.map(Matrix::from_rows).transpose()?;
        Ok(FiberConfig {
            fibers,
            transcendental_gram,
        })
    }

    pub fn to_json(&self) -> String {
        let raw = RawConfig {
            fibers: self
                .fibers
                .iter()
                .map(|g| match g.kind {
                    FiberKind::Nodal => RawFiber {
                        kind: "nodal".into(),
                        n: None,
                        count: g.count,
                    },
                    FiberKind::I(n) => RawFiber {
                        kind: "I".into(),
                        n: Some(n),
                        count: g.count,
                    },
                })
                .collect(),
            transcendental_gram: self.transcendental_gram.as_ref().map(Matrix::to_rows),
        };
        serde_json::to_string(&raw).expect("config serializes")
    }
}
