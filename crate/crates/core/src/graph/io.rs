use std::collections::HashSet;
use std::io::Read;

use super::{Network, NodeLabel};
use crate::error::{Error, Result};

/// How the two label columns are separated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Delimiter {
    /// Whitespace or commas, whichever appears.
    #[default]
    Auto,
    Whitespace,
    Comma,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HeaderPolicy {
    /// Skip the size line of a MatrixMarket file, nothing otherwise.
    #[default]
    Auto,
    None,
    /// Skip the first non-comment line.
    Skip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoadOptions {
    pub delimiter: Delimiter,
    pub header: HeaderPolicy,
    /// Merge `u v` with `v u`. When off, any repeated pair is an error.
    pub symmetrize: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            delimiter: Delimiter::Auto,
            header: HeaderPolicy::Auto,
            symmetrize: true,
        }
    }
}

/// Reads an edge list into a canonical network.
///
/// Lines starting with `#` or `%` are comments; columns after the second are
/// ignored. Self-loops are dropped but their node is kept.
pub fn load_edge_list<R: Read>(mut source: R, options: LoadOptions) -> Result<Network> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    let text = String::from_utf8(bytes).map_err(|_| Error::Encoding)?;

    let matrix_market = text.trim_start().starts_with("%%MatrixMarket");
    let mut skip_header = match options.header {
        HeaderPolicy::Auto => matrix_market,
        HeaderPolicy::None => false,
        HeaderPolicy::Skip => true,
    };

    let mut pairs = Vec::new();
    let mut loops = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        if skip_header {
            skip_header = false;
            continue;
        }
        let mut tokens = split(line, options.delimiter);
        let (a, b) = match (tokens.next(), tokens.next()) {
            (Some(a), Some(b)) => (NodeLabel::parse(a), NodeLabel::parse(b)),
            _ => {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("expected two node labels, found {line:?}"),
                })
            }
        };
        if a == b {
            loops.push(a);
            continue;
        }
        if !options.symmetrize {
            let key = if a < b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            };
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge {
                    line: idx + 1,
                    u: a.to_string(),
                    v: b.to_string(),
                });
            }
        }
        pairs.push((a, b));
    }
    Ok(Network::from_label_pairs(&pairs, loops.into_iter()))
}

fn split(line: &str, delimiter: Delimiter) -> Box<dyn Iterator<Item = &str> + '_> {
    match delimiter {
        Delimiter::Whitespace => Box::new(line.split_whitespace()),
        Delimiter::Comma => Box::new(line.split(',').map(str::trim).filter(|t| !t.is_empty())),
        Delimiter::Auto => Box::new(
            line.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty()),
        ),
    }
}
