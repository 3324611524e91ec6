//! File formats: instances and query results as JSON, indexes as a
//! versioned binary blob.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{GeomError, Result};
use crate::hull::{HullIndex, ObliviousHullIndex};
use crate::levels::LevelIndex;
use crate::variants::{OutputSensitiveIndex, TradeoffIndex};
use crate::{Line, Point};

/// First bytes of every index blob.
pub const MAGIC: &[u8; 8] = b"LINEIDX\0";
/// Bumped whenever the encoding of any index changes.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("not an index file (bad magic header)")]
    BadMagic,
    #[error("index format version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("malformed index: {0}")]
    Decode(String),
}

impl FormatError {
    pub fn kind(&self) -> &'static str {
        match self {
            FormatError::BadMagic => "BadMagic",
            FormatError::VersionMismatch { .. } => "VersionMismatch",
            FormatError::Decode(_) => "Decode",
        }
    }
}

/// How an index answers queries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Std,
    Oblivious,
    /// Grouped query with this many groups; `None` means `round(sqrt n)`.
    Tradeoff(Option<usize>),
    OutSens,
    Levels,
}

impl Mode {
    /// The group count of a tradeoff mode for `n` lines.
    pub fn groups(self, n: usize) -> usize {
        match self {
            Mode::Tradeoff(Some(m)) => m,
            _ => ((n as f64).sqrt().round() as usize).clamp(1, n.max(1)),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Std => f.write_str("std"),
            Mode::Oblivious => f.write_str("oblivious"),
            Mode::Tradeoff(Some(m)) => write!(f, "tradeoff:{m}"),
            Mode::Tradeoff(None) => f.write_str("tradeoff:sqrt"),
            Mode::OutSens => f.write_str("outsens"),
            Mode::Levels => f.write_str("levels"),
        }
    }
}

impl FromStr for Mode {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || GeomError::InvalidParameter(format!("unknown mode {s:?}"));
        Ok(match s {
            "std" => Mode::Std,
            "oblivious" => Mode::Oblivious,
            "outsens" => Mode::OutSens,
            "levels" => Mode::Levels,
            "tradeoff:sqrt" => Mode::Tradeoff(None),
            _ => {
                let m = s.strip_prefix("tradeoff:").ok_or_else(bad)?;
                Mode::Tradeoff(Some(m.parse().map_err(|_| bad())?))
            }
        })
    }
}

/// A preprocessed index of any mode, with the seed its queries draw from.
#[derive(Debug, Serialize, Deserialize)]
pub enum StoredIndex {
    Std { seed: u64, index: HullIndex },
    Oblivious { index: ObliviousHullIndex },
    Tradeoff { seed: u64, index: TradeoffIndex },
    OutSens { seed: u64, index: OutputSensitiveIndex },
    Levels { seed: u64, index: LevelIndex },
}

impl StoredIndex {
    /// Builds the index for `mode`. Hull modes preprocess `lines`; the
    /// levels mode preprocesses `points`.
    pub fn build(mode: Mode, lines: &[Line], points: Option<&[Point]>, seed: u64) -> Result<Self> {
        Ok(match mode {
            Mode::Std => StoredIndex::Std { seed, index: HullIndex::preprocess(lines)? },
            Mode::Oblivious => StoredIndex::Oblivious { index: ObliviousHullIndex::preprocess(lines, seed)? },
            Mode::Tradeoff(_) => {
                StoredIndex::Tradeoff { seed, index: TradeoffIndex::preprocess(lines, mode.groups(lines.len()))? }
            }
            Mode::OutSens => StoredIndex::OutSens { seed, index: OutputSensitiveIndex::preprocess(lines)? },
            Mode::Levels => {
                let pts = points.ok_or_else(|| GeomError::InvalidParameter("levels mode needs points".into()))?;
                StoredIndex::Levels { seed, index: LevelIndex::preprocess(pts, false, seed)? }
            }
        })
    }

    pub fn mode(&self) -> Mode {
        match self {
            StoredIndex::Std { .. } => Mode::Std,
            StoredIndex::Oblivious { .. } => Mode::Oblivious,
            StoredIndex::Tradeoff { index, .. } => Mode::Tradeoff(Some(index.group_count())),
            StoredIndex::OutSens { .. } => Mode::OutSens,
            StoredIndex::Levels { .. } => Mode::Levels,
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = MAGIC.to_vec();
        out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        bincode::serialize_into(&mut out, self).expect("in-memory encoding cannot fail");
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> std::result::Result<Self, FormatError> {
        let rest = bytes.strip_prefix(MAGIC.as_slice()).ok_or(FormatError::BadMagic)?;
        if rest.len() < 4 {
            return Err(FormatError::Decode("truncated header".into()));
        }
        let found = u32::from_le_bytes(rest[..4].try_into().unwrap());
        if found != FORMAT_VERSION {
            return Err(FormatError::VersionMismatch { found, expected: FORMAT_VERSION });
        }
        bincode::deserialize(&rest[4..]).map_err(|e| FormatError::Decode(e.to_string()))
    }
}
