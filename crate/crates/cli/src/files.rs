//! Chain and subgroup files.
//!
//! A chain file holds `base <k>` followed by `extend g=<word> rank <r>` lines
//! (optionally ending in `names ...`). A subgroup file holds one generator
//! word per line. In both, `#` starts a comment and blank lines are skipped.

use std::fs;
use std::path::Path;

use limitfold_core::{Elem, ExtensionChain, Limits};

use crate::cli::CliError;

pub fn load_chain(path: &Path, limits: Limits) -> Result<ExtensionChain, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(ExtensionChain::from_text(&text, limits)?)
}

/// Generator words of a subgroup file, comments stripped.
pub fn subgroup_words(text: &str) -> Vec<&str> {
    text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()).collect()
}

pub fn parse_subgroup(chain: &ExtensionChain, level: usize, text: &str) -> Result<Vec<Elem>, CliError> {
    subgroup_words(text).into_iter().map(|w| Ok(chain.parse_element(level, w)?)).collect()
}

pub fn load_subgroup(chain: &ExtensionChain, level: usize, path: &Path) -> Result<Vec<Elem>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_subgroup(chain, level, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_lines() {
        assert_eq!(subgroup_words("a t\n\n  # note\nb # trailing\n"), ["a t", "b"]);
        assert!(subgroup_words("").is_empty());
    }
}
