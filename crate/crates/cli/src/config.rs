use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use sha2::{Digest, Sha256};

use mhecke_core::monodromy::MonodromicDatum;
use mhecke_core::root_datum::RootDatum;
use mhecke_core::verify::Bounds;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    pub n: u32,
    pub twist: Option<TwistConfig>,
    #[serde(default)]
    pub suite: SuiteConfig,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistConfig {
    /// Rows of the matrix of `δ` on `X`.
    pub matrix: Vec<Vec<i64>>,
    pub order: usize,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub max_r: Option<usize>,
    pub samples: Option<usize>,
    pub max_triples: Option<usize>,
    pub sample_triples: Option<usize>,
    pub max_cocenter_dim: Option<usize>,
    pub seed: Option<u64>,
    pub parallelism: Option<usize>,
}

/// A parsed config plus the SHA-256 of its bytes.
pub struct Loaded {
    pub config: Config,
    pub sha256: String,
}

pub fn load(path: &Path) -> Result<Loaded> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = std::str::from_utf8(&bytes).context("config is not UTF-8")?;
    let config: Config = toml::from_str(text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(Loaded { config, sha256: hex::encode(Sha256::digest(&bytes)) })
}

impl Config {
    /// Builds the datum, with `n` optionally overridden.
    pub fn datum(&self, n: Option<u32>) -> Result<MonodromicDatum> {
        let rd = RootDatum::new(self.rank, self.simple_roots.clone(), self.simple_coroots.clone())?;
        let n = n.unwrap_or(self.n);
        let md = match &self.twist {
            None => MonodromicDatum::untwisted(rd, n)?,
            Some(t) => {
                if t.matrix.len() != self.rank || t.matrix.iter().any(|r| r.len() != self.rank) {
                    bail!("twist matrix must be {0}x{0}", self.rank);
                }
                MonodromicDatum::new(rd, n, t.matrix.concat(), t.order)?
            }
        };
        Ok(md)
    }

    pub fn bounds(&self) -> Bounds {
        let d = Bounds::default();
        let s = &self.suite;
        Bounds {
            max_r: s.max_r.unwrap_or(d.max_r),
            samples: s.samples.unwrap_or(d.samples),
            max_triples: s.max_triples.unwrap_or(d.max_triples),
            sample_triples: s.sample_triples.unwrap_or(d.sample_triples),
            max_cocenter_dim: s.max_cocenter_dim.unwrap_or(d.max_cocenter_dim),
            seed: s.seed.unwrap_or(d.seed),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_builds() {
        let c: Config = toml::from_str(
            "rank = 2\nsimple_roots = [[2,-1],[-1,2]]\nsimple_coroots = [[1,0],[0,1]]\nn = 2\n\
             [twist]\nmatrix = [[0,1],[1,0]]\norder = 2\n[suite]\nmax_r = 2\n",
        )
        .unwrap();
        let md = c.datum(None).unwrap();
        assert_eq!(md.num_classes(), 4);
        assert_eq!(md.omega(), 2);
        assert_eq!(c.datum(Some(3)).unwrap().num_classes(), 9);
        assert_eq!(c.bounds().max_r, 2);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(toml::from_str::<Config>("rank = 1\nsimple_roots = [[2]]\nsimple_coroots = [[1]]\nn = 2\nbogus = 1\n").is_err());
        let c: Config = toml::from_str("rank = 1\nsimple_roots = [[2]]\nsimple_coroots = [[2]]\nn = 2\n").unwrap();
        assert!(c.datum(None).is_err());
        let c: Config = toml::from_str(
            "rank = 1\nsimple_roots = [[2]]\nsimple_coroots = [[1]]\nn = 2\n[twist]\nmatrix = [[1,0]]\norder = 1\n",
        )
        .unwrap();
        assert!(c.datum(None).is_err());
    }
}
