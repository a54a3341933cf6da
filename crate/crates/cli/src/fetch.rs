use std::fs;
use std::io::{Cursor, Read};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use netcavity_core::fixtures::datasets;
use netcavity_core::{load_edge_list, sha256_hex, LoadOptions};
use serde::{Deserialize, Serialize};

const MAX_DOWNLOAD: u64 = 256 << 20;

/// Pins the archive a dataset was first fetched from.
#[derive(Debug, Serialize, Deserialize)]
pub struct Lock {
    pub name: String,
    pub url: String,
    pub archive_sha256: String,
    pub member: Option<String>,
    pub edges_sha256: String,
    pub nodes: usize,
    pub edges: usize,
}

pub fn lock_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!("{name}.lock"))
}

pub fn edges_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!("{name}.edges"))
}

pub fn fetch(name: &str, url: Option<&str>, dir: &Path, repin: bool) -> Result<Lock> {
    let known = datasets::by_name(name);
    let name = known.map_or(name, |d| d.name);
    let url = match (url, known.and_then(|d| d.url)) {
        (Some(u), _) | (None, Some(u)) => u,
        (None, None) if known.is_some() => {
            bail!("no download location is known for {name}; pass --url")
        }
        (None, None) => bail!("{name} is not in the catalogue; pass --url"),
    };
    let archive = download(url)?;
    let archive_sha256 = sha256_hex(&archive);
    let lock_file = lock_path(dir, name);
    if let Ok(text) = fs::read_to_string(&lock_file) {
        let pinned: Lock = serde_json::from_str(&text)
            .with_context(|| format!("parsing {}", lock_file.display()))?;
        if pinned.archive_sha256 != archive_sha256 && !repin {
            bail!(
                "checksum mismatch for {name}: pinned {} but downloaded {archive_sha256}; pass --repin to accept it",
                pinned.archive_sha256
            );
        }
    }
    let (member, text) = extract(&archive)?;
    let net = load_edge_list(text.as_bytes(), LoadOptions::default())
        .with_context(|| format!("parsing {}", member.as_deref().unwrap_or(url)))?;
    if let Some(d) = known {
        if (net.node_count(), net.edge_count()) != (d.nodes, d.edges) {
            bail!(
                "{name} should have {} nodes and {} edges, the download has {} and {}",
                d.nodes,
                d.edges,
                net.node_count(),
                net.edge_count()
            );
        }
    }
    let canonical = net.to_edge_list_text();
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    fs::write(edges_path(dir, name), &canonical)?;
    let lock = Lock {
        name: name.to_string(),
        url: url.to_string(),
        archive_sha256,
        member,
        edges_sha256: sha256_hex(canonical.as_bytes()),
        nodes: net.node_count(),
        edges: net.edge_count(),
    };
    fs::write(&lock_file, serde_json::to_string_pretty(&lock)? + "\n")?;
    Ok(lock)
}

fn download(url: &str) -> Result<Vec<u8>> {
    if !(url.starts_with("http://") || url.starts_with("https://")) {
        return fs::read(url).with_context(|| format!("reading {url}"));
    }
    let response = ureq::get(url)
        .call()
        .with_context(|| format!("downloading {url}"))?;
    let bytes = response
        .into_body()
        .with_config()
        .limit(MAX_DOWNLOAD)
        .read_to_vec()
        .with_context(|| format!("downloading {url}"))?;
    Ok(bytes)
}

/// The edge list inside a zip archive, or the bytes themselves when they are
/// not an archive.
fn extract(bytes: &[u8]) -> Result<(Option<String>, String)> {
    if !bytes.starts_with(b"PK\x03\x04") {
        return Ok((
            None,
            String::from_utf8(bytes.to_vec()).map_err(|_| anyhow!("download is not text"))?,
        ));
    }
    let mut zip = zip::ZipArchive::new(Cursor::new(bytes))?;
    let mut best: Option<(usize, u64, String)> = None;
    for i in 0..zip.len() {
        let f = zip.by_index(i)?;
        let lower = f.name().to_ascii_lowercase();
        let rank = [".edges", ".mtx", ".txt", ".csv"]
            .iter()
            .position(|e| lower.ends_with(e));
        if !f.is_file() || lower.contains("readme") || lower.starts_with("__macosx") {
            continue;
        }
        if let Some(rank) = rank {
            let better = best
                .as_ref()
                .is_none_or(|(r, size, _)| rank < *r || (rank == *r && f.size() > *size));
            if better {
                best = Some((rank, f.size(), f.name().to_string()));
            }
        }
    }
    let (_, _, name) = best.ok_or_else(|| anyhow!("the archive holds no edge list"))?;
    let mut text = String::new();
    zip.by_name(&name)?
        .read_to_string(&mut text)
        .with_context(|| format!("reading {name}"))?;
    Ok((Some(name), text))
}
