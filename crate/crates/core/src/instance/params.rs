use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// How the adversary fills the edges inside `V \ S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AdversaryStrategy {
    /// Independent density-1/2 edges.
    Random,
    /// `count` disjoint complete k-subsets planted among the outside vertices.
    FakeCliques { count: usize },
    /// Inflate the outside-degree of `target_count` victims by `boost`.
    DegreeBoost { target_count: usize, boost: usize },
    /// Victims copy the signs of the aggregate of a pool of clique triples.
    SignMatch { victims: usize, pool: usize },
}

impl AdversaryStrategy {
    pub fn check(&self, n: usize, k: usize) -> Result<()> {
        let outside = n - k;
        match *self {
            AdversaryStrategy::Random => Ok(()),
            AdversaryStrategy::FakeCliques { count } => {
                if count.checked_mul(k).is_none_or(|need| need > outside) {
                    return Err(Error::arg(format!(
                        "{count} fake cliques of size {k} need more than the {outside} outside vertices"
                    )));
                }
                Ok(())
            }
            AdversaryStrategy::DegreeBoost {
                target_count,
                boost,
            } => {
                if target_count > outside {
                    return Err(Error::arg(format!(
                        "{target_count} degree-boost victims exceed {outside} outside vertices"
                    )));
                }
                if target_count > 0 && boost + 1 > outside {
                    return Err(Error::arg(format!(
                        "boost {boost} exceeds the {} possible outside neighbours",
                        outside.saturating_sub(1)
                    )));
                }
                Ok(())
            }
            AdversaryStrategy::SignMatch { victims, pool } => {
                if victims == 0 || pool == 0 {
                    return Err(Error::arg("sign_match needs victims >= 1 and pool >= 1"));
                }
                if victims > outside {
                    return Err(Error::arg(format!(
                        "{victims} victims exceed {outside} outside vertices"
                    )));
                }
                let triples = (k as u128).pow(3);
                if pool as u128 > triples {
                    return Err(Error::arg(format!("pool {pool} exceeds k^3 = {triples}")));
                }
                Ok(())
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AdversaryStrategy::Random => "random",
            AdversaryStrategy::FakeCliques { .. } => "fake_cliques",
            AdversaryStrategy::DegreeBoost { .. } => "degree_boost",
            AdversaryStrategy::SignMatch { .. } => "sign_match",
        }
    }
}

impl fmt::Display for AdversaryStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdversaryStrategy::Random => f.write_str("random"),
            AdversaryStrategy::FakeCliques { count } => write!(f, "fake_cliques:count={count}"),
            AdversaryStrategy::DegreeBoost {
                target_count,
                boost,
            } => write!(f, "degree_boost:target_count={target_count},boost={boost}"),
            AdversaryStrategy::SignMatch { victims, pool } => {
                write!(f, "sign_match:victims={victims},pool={pool}")
            }
        }
    }
}

impl FromStr for AdversaryStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut fields: Vec<(&str, usize)> = Vec::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::arg(format!("adversary parameter {part:?} is not key=value")))?;
            let value = value
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::arg(format!("adversary parameter {part:?} is not an integer")))?;
            fields.push((key.trim(), value));
        }
        let take = |key: &str| -> Result<usize> {
            fields
                .iter()
                .find(|(k, _)| *k == key)
                .map(|&(_, v)| v)
                .ok_or_else(|| Error::arg(format!("adversary {name:?} is missing {key}")))
        };
        let allow = |keys: &[&str]| -> Result<()> {
            match fields.iter().find(|(k, _)| !keys.contains(k)) {
                Some((k, _)) => Err(Error::arg(format!("unknown parameter {k:?} for {name:?}"))),
                None => Ok(()),
            }
        };
        match name {
            "random" => {
                allow(&[])?;
                Ok(AdversaryStrategy::Random)
            }
            "fake_cliques" => {
                allow(&["count"])?;
                Ok(AdversaryStrategy::FakeCliques {
                    count: take("count")?,
                })
            }
            "degree_boost" => {
                allow(&["target_count", "boost"])?;
                Ok(AdversaryStrategy::DegreeBoost {
                    target_count: take("target_count")?,
                    boost: take("boost")?,
                })
            }
            "sign_match" => {
                allow(&["victims", "pool"])?;
                Ok(AdversaryStrategy::SignMatch {
                    victims: take("victims")?,
                    pool: take("pool")?,
                })
            }
            other => Err(Error::arg(format!("unknown adversary {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InstanceParams {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub adversary: AdversaryStrategy,
}

impl InstanceParams {
    pub fn new(n: usize, k: usize, seed: u64, adversary: AdversaryStrategy) -> Self {
        InstanceParams {
            n,
            k,
            seed,
            adversary,
        }
    }

    pub fn check(&self) -> Result<()> {
        if self.k < 2 || self.k > self.n {
            return Err(Error::arg(format!(
                "clique size k = {} must satisfy 2 <= k <= n = {}",
                self.k, self.n
            )));
        }
        if u32::try_from(self.n).is_err() {
            return Err(Error::arg(format!("n = {} does not fit in 32 bits", self.n)));
        }
        self.adversary.check(self.n, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings_round_trip() {
        for s in [
            "random",
            "fake_cliques:count=6",
            "degree_boost:target_count=1,boost=554",
            "sign_match:victims=4,pool=1024",
        ] {
            let a: AdversaryStrategy = s.parse().unwrap();
            assert_eq!(a.to_string(), s);
        }
        let a: AdversaryStrategy = "sign_match: pool=8, victims=2".parse().unwrap();
        assert_eq!(a, AdversaryStrategy::SignMatch { victims: 2, pool: 8 });
    }

    #[test]
    fn malformed_strings() {
        for s in ["", "bogus", "fake_cliques", "fake_cliques:count=x", "random:x=1", "sign_match:victims=1"] {
            assert!(s.parse::<AdversaryStrategy>().is_err(), "{s}");
        }
    }

    #[test]
    fn parameter_ranges() {
        assert!(InstanceParams::new(8, 9, 0, AdversaryStrategy::Random).check().is_err());
        assert!(InstanceParams::new(8, 1, 0, AdversaryStrategy::Random).check().is_err());
        assert!(InstanceParams::new(8, 8, 0, AdversaryStrategy::Random).check().is_ok());
        let fake = |count| InstanceParams::new(12, 4, 0, AdversaryStrategy::FakeCliques { count });
        assert!(fake(2).check().is_ok());
        assert!(fake(3).check().is_err());
        let sm = |victims, pool| InstanceParams::new(8, 2, 0, AdversaryStrategy::SignMatch { victims, pool });
        assert!(sm(1, 8).check().is_ok());
        assert!(sm(1, 9).check().is_err());
        assert!(sm(7, 1).check().is_err());
        assert!(sm(0, 1).check().is_err());
    }
}
