use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use netcavity_core::{
    computability_gate, enumerate_cliques, k_core_decomposition, load_edge_list, sha256_hex,
    CavityConfig, CliqueComplex, ComplexCache, Computability, CorenessReport, GateConfig,
    LengthSchedule, LoadOptions, Network, SolverConfig,
};

use crate::args::{GateArgs, PipelineArgs, Schedule, SearchArgs};

pub struct Input {
    pub net: Network,
    pub checksum: String,
}

pub fn load(path: &Path) -> Result<Input> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let net = load_edge_list(&bytes[..], LoadOptions::default())
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok(Input {
        net,
        checksum: sha256_hex(&bytes),
    })
}

pub fn gate(input: &Input, args: &GateArgs) -> Result<(CorenessReport, Computability)> {
    let config = GateConfig::new(args.budget, args.threshold)?;
    let report = k_core_decomposition(&input.net);
    let verdict = computability_gate(&report, config);
    Ok((report, verdict))
}

/// Outcome of the gate and enumeration steps shared by every analysis
/// command.
pub enum Prepared {
    Blocked {
        reason: String,
    },
    Complex {
        k_max: usize,
        complex: CliqueComplex,
    },
}

pub fn prepare(input: &Input, args: &PipelineArgs) -> Result<Prepared> {
    let (report, verdict) = gate(input, &args.gate)?;
    if let Computability::NotComputable { reason } = verdict {
        if !args.force {
            return Ok(Prepared::Blocked { reason });
        }
        eprintln!("warning: {reason}; continuing because of --force");
    }
    let complex = complex(input, args)?;
    Ok(Prepared::Complex {
        k_max: report.k_max,
        complex,
    })
}

/// Cache key: the input bytes together with the enumeration limits, since
/// both decide what the complex holds.
fn cache_key(input: &Input, args: &PipelineArgs) -> String {
    let limits = format!(
        "{}\nbudget={}\nmax_order={:?}",
        input.checksum, args.gate.budget, args.max_order
    );
    sha256_hex(limits.as_bytes())
}

fn complex(input: &Input, args: &PipelineArgs) -> Result<CliqueComplex> {
    let key = cache_key(input, args);
    if let Some(path) = &args.cache {
        if let Some(cx) = read_cache(path, &key) {
            return Ok(cx);
        }
    }
    let cx = enumerate_cliques(&input.net, args.gate.budget, args.max_order)?;
    if let Some(path) = &args.cache {
        let text = ComplexCache::new(&cx, key).to_json()?;
        fs::write(path, text).with_context(|| format!("writing cache {}", path.display()))?;
    }
    Ok(cx)
}

fn read_cache(path: &Path, key: &str) -> Option<CliqueComplex> {
    let text = fs::read_to_string(path).ok()?;
    let cache = match ComplexCache::from_json(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("warning: ignoring unreadable cache {}: {e}", path.display());
            return None;
        }
    };
    if cache.source_checksum != key {
        return None;
    }
    match cache.to_complex() {
        Ok(cx) => Some(cx),
        Err(e) => {
            eprintln!(
                "warning: ignoring inconsistent cache {}: {e}",
                path.display()
            );
            None
        }
    }
}

pub fn cavity_config(args: &SearchArgs) -> CavityConfig {
    let mut solver = SolverConfig::default();
    if let Some(limit) = args.node_limit {
        solver.node_limit = limit;
    }
    CavityConfig {
        schedule: match args.schedule {
            Schedule::Standard => LengthSchedule::Standard,
            Schedule::Exhaustive => LengthSchedule::Exhaustive,
        },
        ceiling: args.ceiling,
        solver,
        ..CavityConfig::default()
    }
}
