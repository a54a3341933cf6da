use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use netcavity_core::fixtures::{census_discrepancies, printed_census_chi, PRINTED_CENSUS};
use netcavity_core::{
    build_boundary_matrix, cavity_dot, euler_characteristic, find_cavities, homology_profile,
    random_gnm, select_spanning_and_generators, smallest_cavity_complex, verify_certificate,
    CavityCertificate, CertificateRecord, CliqueComplex, Computability, Constraint, Network,
    NodeLabel,
};
use serde::{Deserialize, Serialize};

use crate::args::{GateArgs, InputArgs, OutputArgs, PipelineArgs, SearchArgs};
use crate::pipeline::{self, Input, Prepared};
use crate::render::{emit, join, row, table, write_text};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_NOT_COMPUTABLE: u8 = 2;
pub const EXIT_TRUNCATED: u8 = 3;
pub const EXIT_UNVERIFIED: u8 = 4;

#[derive(Serialize)]
struct KcoreReport {
    nodes: usize,
    edges: usize,
    k_max: usize,
    histogram: Vec<usize>,
    core: Vec<NodeLabel>,
    core_edges: usize,
    threshold: usize,
    computable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

pub fn kcore(input: &InputArgs, gate: &GateArgs, output: &OutputArgs) -> Result<u8> {
    let input = pipeline::load(&input.input)?;
    let (report, verdict) = pipeline::gate(&input, gate)?;
    let net = &input.net;
    let r = KcoreReport {
        nodes: net.node_count(),
        edges: net.edge_count(),
        k_max: report.k_max,
        histogram: report.histogram(),
        core: report.core.iter().map(|&v| net.label(v).clone()).collect(),
        core_edges: report.core_edges,
        threshold: gate.threshold,
        computable: verdict.is_computable(),
        reason: match &verdict {
            Computability::NotComputable { reason } => Some(reason.clone()),
            Computability::Computable { .. } => None,
        },
    };
    emit(
        output,
        &r,
        || {
            let mut s = String::from("coreness,nodes\n");
            for (c, n) in r.histogram.iter().enumerate() {
                s += &format!("{c},{n}\n");
            }
            s
        },
        || {
            let mut rows = vec![row("coreness", &["nodes"])];
            rows.extend(
                r.histogram
                    .iter()
                    .enumerate()
                    .map(|(c, n)| row(&c.to_string(), &[n])),
            );
            let verdict = match &r.reason {
                None => format!("computable (threshold {})", r.threshold),
                Some(reason) => format!("not computable: {reason}"),
            };
            format!(
                "{}\nk_max = {}\n{}-core: {} nodes, {} edges\n{verdict}\n",
                table(&rows),
                r.k_max,
                r.k_max,
                r.core.len(),
                r.core_edges
            )
        },
    )?;
    Ok(if r.computable {
        EXIT_OK
    } else {
        EXIT_NOT_COMPUTABLE
    })
}

#[derive(Serialize)]
struct ProfileReport {
    nodes: usize,
    edges: usize,
    k_max: usize,
    counts: Vec<usize>,
    ranks: Vec<usize>,
    betti: Vec<usize>,
    chi: i64,
    euler_poincare: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    cavities: Option<Vec<CavityOut>>,
}

#[derive(Serialize)]
struct TruncatedReport {
    nodes: usize,
    edges: usize,
    k_max: usize,
    truncated_at: usize,
    counts: Vec<usize>,
    warning: String,
}

#[derive(Serialize, Deserialize)]
struct CavityOut {
    #[serde(flatten)]
    record: CertificateRecord,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    verified: Option<bool>,
}

/// Gate and enumeration, or the exit code that ends the command early.
fn complete_complex(
    input: &Input,
    args: &PipelineArgs,
    output: &OutputArgs,
) -> Result<Result<(usize, CliqueComplex), u8>> {
    let (k_max, cx) = match pipeline::prepare(input, args)? {
        Prepared::Blocked { reason } => {
            eprintln!("not computable: {reason} (use --force to override)");
            return Ok(Err(EXIT_NOT_COMPUTABLE));
        }
        Prepared::Complex { k_max, complex } => (k_max, complex),
    };
    let Some(order) = cx.truncated_at() else {
        return Ok(Ok((k_max, cx)));
    };
    let warning = cx.warning().unwrap_or_default().to_string();
    let r = TruncatedReport {
        nodes: input.net.node_count(),
        edges: input.net.edge_count(),
        k_max,
        truncated_at: order,
        counts: cx.counts(),
        warning: warning.clone(),
    };
    eprintln!("profile refused: {warning}");
    emit(
        output,
        &r,
        || {
            format!(
                "order,{}\nm_k,{}\ntruncated_at,{order}\n",
                join(&(0..r.counts.len()).collect::<Vec<_>>(), ","),
                join(&r.counts, ",")
            )
        },
        || {
            let orders: Vec<usize> = (0..r.counts.len()).collect();
            format!(
                "{}truncated before order {order}\n",
                table(&[row("k", &orders), row("m_k", &r.counts)])
            )
        },
    )?;
    Ok(Err(EXIT_TRUNCATED))
}

/// A certificate with its order.
type Found = (usize, CavityCertificate);

/// Certificates for the given orders, verified when asked.
fn search(
    net: &Network,
    cx: &CliqueComplex,
    orders: &[usize],
    search: &SearchArgs,
    verify: bool,
) -> Result<(Vec<CavityOut>, Vec<Found>)> {
    let config = pipeline::cavity_config(search);
    let mut out = Vec::new();
    let mut certs = Vec::new();
    for &k in orders {
        let bk = build_boundary_matrix(cx, k)?;
        let bk1 = build_boundary_matrix(cx, k + 1)?;
        let sel = select_spanning_and_generators(k, &bk, &bk1)?;
        let found = find_cavities(&bk, &bk1, &sel, config)
            .with_context(|| format!("cavity search at order {k}"))?;
        for (i, cert) in found.iter().enumerate() {
            let verified = if verify {
                Some(verify_certificate(cert, &bk, &bk1, &found[..i])?.is_ok())
            } else {
                None
            };
            out.push(CavityOut {
                record: CertificateRecord::from_certificate(cert, net, cx),
                verified,
            });
        }
        certs.extend(found.into_iter().map(|c| (k, c)));
    }
    Ok((out, certs))
}

fn write_dots(dir: &Path, net: &Network, cx: &CliqueComplex, certs: &[Found]) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut index = 0;
    for (i, (k, cert)) in certs.iter().enumerate() {
        index = if i > 0 && certs[i - 1].0 == *k {
            index + 1
        } else {
            1
        };
        let name = format!("cavity_k{k}_{index}");
        let path = dir.join(format!("{name}.dot"));
        fs::write(&path, cavity_dot(cert, net, cx, &name))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cavities_csv(cavities: &[CavityOut]) -> String {
    let mut s = String::from("order,generator,length,nodes,verified\n");
    for c in cavities {
        let r = &c.record;
        s += &format!(
            "{},{},{},{},{}\n",
            r.order,
            join(&r.generator, " "),
            r.length,
            join(&r.nodes, " "),
            c.verified.map_or(String::new(), |v| v.to_string())
        );
    }
    s
}

fn cavities_table(cavities: &[CavityOut]) -> String {
    let mut rows = vec![row("order", &["generator", "length", "nodes", "verified"])];
    for c in cavities {
        let r = &c.record;
        rows.push(row(
            &r.order.to_string(),
            &[
                format!("({})", join(&r.generator, ", ")),
                r.length.to_string(),
                format!("{{{}}}", join(&r.nodes, ", ")),
                c.verified.map_or("-".to_string(), |v| {
                    if v { "yes" } else { "NO" }.to_string()
                }),
            ],
        ));
    }
    table(&rows)
}

fn unverified(cavities: &[CavityOut]) -> bool {
    cavities.iter().any(|c| c.verified == Some(false))
}

pub struct AnalyzeArgs<'a> {
    pub input: &'a InputArgs,
    pub pipeline: &'a PipelineArgs,
    pub cavities: bool,
    pub emit_dot: Option<&'a Path>,
    pub verify: bool,
    pub search: &'a SearchArgs,
    pub output: &'a OutputArgs,
}

pub fn analyze(a: AnalyzeArgs) -> Result<u8> {
    let input = pipeline::load(&a.input.input)?;
    let (k_max, cx) = match complete_complex(&input, a.pipeline, a.output)? {
        Ok(v) => v,
        Err(code) => return Ok(code),
    };
    let p = homology_profile(&cx)?;
    let mut cavities = None;
    if a.cavities {
        let orders: Vec<usize> = (1..p.beta.len()).filter(|&k| p.beta[k] > 0).collect();
        let (out, certs) = search(&input.net, &cx, &orders, a.search, a.verify)?;
        if let Some(dir) = a.emit_dot {
            write_dots(dir, &input.net, &cx, &certs)?;
        }
        cavities = Some(out);
    }
    let r = ProfileReport {
        nodes: input.net.node_count(),
        edges: input.net.edge_count(),
        k_max,
        counts: p.m.clone(),
        ranks: p.r.clone(),
        betti: p.beta.clone(),
        chi: p.chi,
        euler_poincare: p.euler_poincare_ok,
        cavities,
    };
    emit(
        a.output,
        &r,
        || {
            let mut s = p.to_csv();
            if let Some(c) = &r.cavities {
                s += "\n";
                s += &cavities_csv(c);
            }
            s
        },
        || {
            let orders: Vec<usize> = (0..r.counts.len()).collect();
            let mut s = table(&[
                row("k", &orders),
                row("m_k", &r.counts),
                row("r_k", &r.ranks),
                row("beta_k", &r.betti),
            ]);
            s += &format!(
                "chi = {}, Euler-Poincare {}\n",
                r.chi,
                if r.euler_poincare { "holds" } else { "FAILS" }
            );
            if let Some(c) = &r.cavities {
                s += "\n";
                s += &cavities_table(c);
            }
            s
        },
    )?;
    Ok(if r.cavities.as_deref().is_some_and(unverified) {
        EXIT_UNVERIFIED
    } else {
        EXIT_OK
    })
}

pub fn cavities(a: AnalyzeArgs, order: Option<usize>) -> Result<u8> {
    let input = pipeline::load(&a.input.input)?;
    let (_, cx) = match complete_complex(&input, a.pipeline, a.output)? {
        Ok(v) => v,
        Err(code) => return Ok(code),
    };
    let orders = match order {
        Some(0) => bail!("cavities have order 1 or more"),
        Some(k) => vec![k],
        None => {
            let p = homology_profile(&cx)?;
            (1..p.beta.len()).filter(|&k| p.beta[k] > 0).collect()
        }
    };
    let (out, certs) = search(&input.net, &cx, &orders, a.search, a.verify)?;
    if let Some(dir) = a.emit_dot {
        write_dots(dir, &input.net, &cx, &certs)?;
    }
    emit(
        a.output,
        &out,
        || cavities_csv(&out),
        || cavities_table(&out),
    )?;
    Ok(if unverified(&out) {
        EXIT_UNVERIFIED
    } else {
        EXIT_OK
    })
}

#[derive(Serialize)]
struct CensusReport {
    order: usize,
    nodes: usize,
    counts: Vec<u64>,
    chi: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    printed_counts: Option<Vec<u64>>,
    printed_chi: i64,
    notes: Vec<String>,
}

pub fn smallest_cavity(k: usize, network_out: Option<&Path>, output: &OutputArgs) -> Result<u8> {
    let (net, cx) = smallest_cavity_complex(k)?;
    let counts: Vec<u64> = cx.counts().into_iter().map(|c| c as u64).collect();
    let chi = euler_characteristic(&cx)?.0;
    let printed_chi = printed_census_chi(k);
    let mut notes: Vec<String> = census_discrepancies(k, &counts)
        .into_iter()
        .map(|n| format!("paper-discrepancy: {n}"))
        .collect();
    if chi != printed_chi {
        notes.push(format!(
            "paper-discrepancy: k={k}: chi printed {printed_chi} measured {chi}"
        ));
    }
    let printed_counts = PRINTED_CENSUS.get(k - 1).map(|r| r.to_vec());
    if printed_counts.is_none() {
        notes.push(format!("k={k}: no printed census row to compare against"));
    }
    if let Some(path) = network_out {
        write_text(Some(path), &net.to_edge_list_text())?;
    }
    let r = CensusReport {
        order: k,
        nodes: net.node_count(),
        counts,
        chi,
        printed_counts,
        printed_chi,
        notes,
    };
    emit(
        output,
        &r,
        || {
            let orders: Vec<usize> = (0..r.counts.len()).collect();
            let mut s = format!(
                "order,{}\nm_k,{}\n",
                join(&orders, ","),
                join(&r.counts, ",")
            );
            if let Some(p) = &r.printed_counts {
                s += &format!("printed,{}\n", join(p, ","));
            }
            s + &format!("chi,{}\n", r.chi)
        },
        || {
            let orders: Vec<usize> = (0..r.counts.len()).collect();
            let mut rows = vec![row("j", &orders), row("m_j", &r.counts)];
            if let Some(p) = &r.printed_counts {
                rows.push(row("printed", p));
            }
            let mut s = format!(
                "smallest {k}-cavity, {} nodes\n{}chi = {}\n",
                r.nodes,
                table(&rows),
                r.chi
            );
            for n in &r.notes {
                s += n;
                s.push('\n');
            }
            s
        },
    )?;
    Ok(EXIT_OK)
}

pub fn random_er(nodes: usize, edges: usize, seed: u64, output: Option<&Path>) -> Result<u8> {
    let net = random_gnm(nodes, edges, seed)?;
    let mut text = format!("# G(n, m) with n = {nodes}, m = {edges}, seed {seed}\n");
    // isolated nodes have no edge line and are dropped on reload; name them for the reader
    let labels: Vec<&NodeLabel> = (0..net.node_count())
        .filter(|&v| net.degree(v as _) == 0)
        .map(|v| net.label(v as _))
        .collect();
    if !labels.is_empty() {
        text += &format!("# isolated: {}\n", join(&labels, " "));
    }
    text += &net.to_edge_list_text();
    write_text(output, &text)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VerifyLine {
    order: usize,
    generator: Vec<NodeLabel>,
    length: usize,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    failed: Option<Constraint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CertificateFile {
    List(Vec<CavityOut>),
    Profile { cavities: Vec<CavityOut> },
}

pub fn verify(
    input: &InputArgs,
    args: &PipelineArgs,
    certificates: &Path,
    output: &OutputArgs,
) -> Result<u8> {
    let text = fs::read_to_string(certificates)
        .with_context(|| format!("reading {}", certificates.display()))?;
    let records = match serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", certificates.display()))?
    {
        CertificateFile::List(l) | CertificateFile::Profile { cavities: l } => l,
    };
    let input = pipeline::load(&input.input)?;
    let (_, cx) = match complete_complex(&input, args, output)? {
        Ok(v) => v,
        Err(code) => return Ok(code),
    };
    let mut lines = Vec::new();
    // certificates of one order are checked in file order, each against its predecessors
    let mut accepted: Vec<Found> = Vec::new();
    let mut matrices = std::collections::BTreeMap::new();
    for c in records.into_iter().map(|c| c.record) {
        let mut line = VerifyLine {
            order: c.order,
            generator: c.generator.clone(),
            length: c.length,
            ok: false,
            failed: None,
            error: None,
        };
        let checked = (|| -> Result<_> {
            if c.order == 0 {
                bail!("order 0 has no cavities");
            }
            let cert = c.to_certificate(&input.net, &cx)?;
            if let std::collections::btree_map::Entry::Vacant(e) = matrices.entry(c.order) {
                e.insert((
                    build_boundary_matrix(&cx, c.order)?,
                    build_boundary_matrix(&cx, c.order + 1)?,
                ));
            }
            let (bk, bk1) = &matrices[&c.order];
            let prior: Vec<CavityCertificate> = accepted
                .iter()
                .filter(|(k, _)| *k == c.order)
                .map(|(_, p)| p.clone())
                .collect();
            Ok((verify_certificate(&cert, bk, bk1, &prior)?, cert))
        })();
        match checked {
            Ok((v, cert)) => {
                line.ok = v.is_ok();
                line.failed = v.failed;
                if v.is_ok() {
                    accepted.push((c.order, cert));
                }
            }
            Err(e) => line.error = Some(format!("{e:#}")),
        }
        lines.push(line);
    }
    let status = |l: &VerifyLine| match (&l.failed, &l.error) {
        (_, Some(e)) => format!("error: {e}"),
        (Some(f), _) => format!(
            "fails {}",
            serde_json::to_value(f)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default()
        ),
        (None, None) => "ok".to_string(),
    };
    emit(
        output,
        &lines,
        || {
            let mut s = String::from("order,generator,length,status\n");
            for l in &lines {
                s += &format!(
                    "{},{},{},{}\n",
                    l.order,
                    join(&l.generator, " "),
                    l.length,
                    status(l)
                );
            }
            s
        },
        || {
            let mut rows = vec![row("order", &["generator", "length", "status"])];
            for l in &lines {
                rows.push(row(
                    &l.order.to_string(),
                    &[
                        format!("({})", join(&l.generator, ", ")),
                        l.length.to_string(),
                        status(l),
                    ],
                ));
            }
            table(&rows)
        },
    )?;
    Ok(if lines.iter().all(|l| l.ok) {
        EXIT_OK
    } else {
        EXIT_UNVERIFIED
    })
}
