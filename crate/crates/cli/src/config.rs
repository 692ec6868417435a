//! Resource limits: built-in defaults, then an optional TOML file, then
//! environment variables, then command-line flags.

use std::path::Path;

use anyhow::{Context, Result};
use serde::Deserialize;

pub const CONFIG_ENV: &str = "CRITFACT_CONFIG";

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
pub struct Limits {
    /// Estimated words an enumeration or verification run may visit.
    pub max_words: u64,
    /// Longest word `profile` (and the family suites) will analyse.
    pub max_profile_len: usize,
    /// Longest generated word.
    pub max_m_prefix: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_words: 1_000_000,
            max_profile_len: 5000,
            max_m_prefix: 1_000_000,
        }
    }
}

impl Limits {
    /// Reads `path` (or the file named by `CRITFACT_CONFIG`) when given, then
    /// applies `CRITFACT_MAX_WORDS`, `CRITFACT_MAX_PROFILE_LEN` and
    /// `CRITFACT_MAX_M_PREFIX`.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let env_path = std::env::var_os(CONFIG_ENV);
        let path = path.or(env_path.as_deref().map(Path::new));
        let mut limits = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("reading config {}", p.display()))?;
                toml::from_str(&text).with_context(|| format!("parsing config {}", p.display()))?
            }
            None => Limits::default(),
        };
        override_from_env("CRITFACT_MAX_WORDS", &mut limits.max_words)?;
        override_from_env("CRITFACT_MAX_PROFILE_LEN", &mut limits.max_profile_len)?;
        override_from_env("CRITFACT_MAX_M_PREFIX", &mut limits.max_m_prefix)?;
        Ok(limits)
    }
}

fn override_from_env<T: std::str::FromStr>(key: &str, slot: &mut T) -> Result<()>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    if let Ok(value) = std::env::var(key) {
        *slot = value
            .trim()
            .parse()
            .with_context(|| format!("{key}={value:?}"))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file_keeps_defaults() {
        let limits: Limits = toml::from_str("max-words = 42").unwrap();
        assert_eq!(
            limits,
            Limits {
                max_words: 42,
                ..Limits::default()
            }
        );
        assert!(toml::from_str::<Limits>("max-wrods = 1").is_err());
    }
}
