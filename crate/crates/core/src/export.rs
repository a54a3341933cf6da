//! JSON cache of clique complexes, certificate records and DOT output.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cavity::CavityCertificate;
use crate::complex::{CliqueComplex, CliqueLevel};
use crate::error::{Error, Result};
use crate::graph::{Network, NodeId, NodeLabel};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// On-disk form of a clique complex, keyed by the checksum of its source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexCache {
    pub counts: Vec<usize>,
    pub levels: Vec<Vec<Vec<NodeId>>>,
    pub truncated_at: Option<usize>,
    pub source_checksum: String,
}

impl ComplexCache {
    pub fn new(cx: &CliqueComplex, source_checksum: impl Into<String>) -> Self {
        ComplexCache {
            counts: cx.counts(),
            levels: cx
                .levels()
                .iter()
                .map(|l| l.iter().map(<[NodeId]>::to_vec).collect())
                .collect(),
            truncated_at: cx.truncated_at(),
            source_checksum: source_checksum.into(),
        }
    }

    /// Rebuilds the complex, checking counts and tuple shapes.
    pub fn to_complex(&self) -> Result<CliqueComplex> {
        if self.counts.len() != self.levels.len() {
            return Err(Error::Dimension {
                expected: self.counts.len(),
                actual: self.levels.len(),
            });
        }
        let mut levels = Vec::with_capacity(self.levels.len());
        for (k, (tuples, &count)) in self.levels.iter().zip(&self.counts).enumerate() {
            if tuples.len() != count {
                return Err(Error::Dimension {
                    expected: count,
                    actual: tuples.len(),
                });
            }
            if let Some(t) = tuples.iter().find(|t| t.len() != k + 1) {
                return Err(Error::Dimension {
                    expected: k + 1,
                    actual: t.len(),
                });
            }
            levels.push(CliqueLevel::from_tuples(k, tuples.clone()));
        }
        Ok(CliqueComplex::from_levels(levels, self.truncated_at))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// A certificate described by node labels, independent of internal ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub order: usize,
    pub generator: Vec<NodeLabel>,
    pub cliques: Vec<Vec<NodeLabel>>,
    pub length: usize,
    pub nodes: Vec<NodeLabel>,
}

impl CertificateRecord {
    pub fn from_certificate(cert: &CavityCertificate, net: &Network, cx: &CliqueComplex) -> Self {
        let labels = |c: &[NodeId]| c.iter().map(|&v| net.label(v).clone()).collect::<Vec<_>>();
        let level = cx.level(cert.order).expect("certificate order is present");
        CertificateRecord {
            order: cert.order,
            generator: labels(level.get(cert.generator)),
            cliques: cert.cliques(cx).map(labels).collect(),
            length: cert.length,
            nodes: labels(&cert.node_set(cx)),
        }
    }

    /// Resolves labels against `net` and the cliques against `cx`.
    pub fn to_certificate(&self, net: &Network, cx: &CliqueComplex) -> Result<CavityCertificate> {
        let ids = |c: &[NodeLabel]| -> Result<Vec<NodeId>> {
            c.iter()
                .map(|l| {
                    net.id_of(l)
                        .ok_or_else(|| Error::UnknownNode(l.to_string()))
                })
                .collect()
        };
        let cliques = self
            .cliques
            .iter()
            .map(|c| ids(c))
            .collect::<Result<Vec<_>>>()?;
        let cert =
            CavityCertificate::from_cliques(cx, self.order, &cliques, &ids(&self.generator)?)?;
        if cert.length != self.length {
            return Err(Error::Dimension {
                expected: self.length,
                actual: cert.length,
            });
        }
        Ok(cert)
    }
}

/// Undirected DOT graph of the edges inside the certificate's cliques.
pub fn cavity_dot(
    cert: &CavityCertificate,
    net: &Network,
    cx: &CliqueComplex,
    name: &str,
) -> String {
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    for c in cert.cliques(cx) {
        for (i, &u) in c.iter().enumerate() {
            edges.extend(c[i + 1..].iter().map(|&v| (u, v)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", name.replace('"', "'"));
    for v in cert.node_set(cx) {
        let _ = writeln!(
            out,
            "  n{v} [label=\"{}\"];",
            net.label(v).to_string().replace('"', "'")
        );
    }
    for (u, v) in edges {
        let _ = writeln!(out, "  n{u} -- n{v};");
    }
    out.push_str("}\n");
    out
}
