//! Strategy arguments of the `game` subcommand: `identity`, `optimal` or
//! `file:<path>`.
//!
//! A strategy file holds Alice's and Bob's two unitaries, each a 2×2 matrix
//! of `[re, im]` pairs in row-major order:
//!
//! ```json
//! { "alice": [[[[1,0],[0,0]],[[0,0],[1,0]]], ...], "bob": [...] }
//! ```

use std::path::PathBuf;

use ghz_chsh::games::ChshStrategy;
use ghz_chsh::qops::{Mat2, Unitary2};
use ghz_chsh::Complex;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::CliError;

type MatrixSpec = [[[f64; 2]; 2]; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyFile {
    pub alice: [MatrixSpec; 2],
    pub bob: [MatrixSpec; 2],
}

impl StrategyFile {
    pub fn to_strategy(&self) -> Result<ChshStrategy, CliError> {
        let u = |m: &MatrixSpec| {
            let c = |p: [f64; 2]| Complex::new(p[0], p[1]);
            Unitary2::new(Mat2::new(c(m[0][0]), c(m[0][1]), c(m[1][0]), c(m[1][1])))
        };
        Ok(ChshStrategy::new([u(&self.alice[0])?, u(&self.alice[1])?], [u(&self.bob[0])?, u(&self.bob[1])?]))
    }

    pub fn from_strategy(s: &ChshStrategy) -> Self {
        let m = |u: &Unitary2| {
            let m = u.matrix();
            let c = |r: usize, k: usize| [m.get(r, k).re, m.get(r, k).im];
            [[c(0, 0), c(0, 1)], [c(1, 0), c(1, 1)]]
        };
        StrategyFile { alice: [m(&s.alice[0]), m(&s.alice[1])], bob: [m(&s.bob[0]), m(&s.bob[1])] }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StrategySpec {
    Identity,
    Optimal,
    File(PathBuf),
}

impl std::str::FromStr for StrategySpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "identity" => Ok(StrategySpec::Identity),
            "optimal" => Ok(StrategySpec::Optimal),
            _ => match s.strip_prefix("file:") {
                Some(path) if !path.is_empty() => Ok(StrategySpec::File(PathBuf::from(path))),
                _ => Err(CliError::Usage(format!(
                    "strategy must be identity, optimal or file:<path>, got {s:?}"
                ))),
            },
        }
    }
}

impl StrategySpec {
    /// The strategy and a description of it for the report digest. File
    /// strategies are described by their matrices, not their path.
    pub fn resolve(&self) -> Result<(ChshStrategy, Value), CliError> {
        match self {
            StrategySpec::Identity => Ok((ChshStrategy::identity(), json!("identity"))),
            StrategySpec::Optimal => Ok((ChshStrategy::optimal(), json!("optimal"))),
            StrategySpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|source| CliError::Io { path: path.clone(), source })?;
                let file: StrategyFile = serde_json::from_str(&text).map_err(|e| CliError::Parse {
                    what: path.display().to_string(),
                    message: e.to_string(),
                })?;
                let strategy = file.to_strategy().map_err(|e| CliError::Parse {
                    what: path.display().to_string(),
                    message: e.to_string(),
                })?;
                Ok((strategy, serde_json::to_value(&file).expect("matrices serialize")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_parsing() {
        assert_eq!("optimal".parse::<StrategySpec>().unwrap(), StrategySpec::Optimal);
        assert_eq!("file:a.json".parse::<StrategySpec>().unwrap(), StrategySpec::File("a.json".into()));
        assert!("file:".parse::<StrategySpec>().is_err());
        assert!("best".parse::<StrategySpec>().is_err());
    }

    #[test]
    fn file_round_trip() {
        let s = ChshStrategy::optimal();
        let back = StrategyFile::from_strategy(&s).to_strategy().unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn non_unitary_rejected() {
        let mut f = StrategyFile::from_strategy(&ChshStrategy::identity());
        f.bob[1][0][0] = [2.0, 0.0];
        assert!(f.to_strategy().is_err());
    }
}
