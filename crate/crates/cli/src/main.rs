//! Command-line driver: parses quiver/coalgebra/relation/comodule files and
//! prints exact, deterministically ordered reports as text or JSON.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pathcoalg::coalgebra::{
    delta_elem, is_admissible, is_subcoalgebra, subcoalgebra_closure, GradedSubcoalgebra,
};
use pathcoalg::comodule::{comodule_of_restriction, cotensor_section, restrict_comodule, FinComodule};
use pathcoalg::format::{
    coalgebra_json, element_json, parse_coalgebra_text, parse_comodule_text, parse_element,
    parse_quiver_text, parse_relations_text, path_json, quiver_json, quiver_to_text, subspace_json,
};
use pathcoalg::localization::{
    classify_idempotent, localize, localize_over_quotient, localized_quiver, re_express,
    IdempotentClassification, LocalizedQuiver,
};
use pathcoalg::quiver::{
    enumerate_all_paths, enumerate_cells, enumerate_paths, enumerate_tails, vertex_set, Path,
    Quiver, VertexId,
};
use pathcoalg::randgen::{
    random_comodule, random_quiver, random_relations, random_subcoalgebra, random_vertex_subset,
    rng_from_seed,
};
use pathcoalg::relations::{
    coalgebra_of_relations, criterion_witness, relations_of_coalgebra, truncated_ideal_span,
};
use pathcoalg::Error;

#[derive(Parser)]
#[command(
    name = "pathcoalg",
    version,
    about = "Exact computations with quivers, path coalgebras, vertex localization and comodules"
)]
struct Cli {
    /// Output format for every subcommand.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List paths of a quiver up to a length bound.
    Paths {
        /// Quiver file.
        quiver: PathBuf,
        /// Length bound.
        #[arg(long)]
        maxlen: usize,
        /// Only paths starting here.
        #[arg(long)]
        from: Option<String>,
        /// Only paths ending here (requires --from).
        #[arg(long)]
        to: Option<String>,
    },
    /// List the cells between two vertices of a subset: paths whose interior
    /// avoids the subset.
    Cells {
        quiver: PathBuf,
        /// Comma-separated vertex subset.
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<String>,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        maxlen: usize,
    },
    /// List the tails leaving a subset vertex: paths that exit the subset and
    /// never return.
    Tails {
        quiver: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<String>,
        #[arg(long)]
        from: String,
        #[arg(long)]
        maxlen: usize,
    },
    /// Comultiply an element of the path coalgebra.
    Delta {
        quiver: PathBuf,
        /// Element over the quiver, e.g. "alpha2*alpha1 + alpha4*alpha3".
        #[arg(long)]
        element: String,
    },
    /// Close the generators of a coalgebra file into an admissible
    /// subcoalgebra and print its graded components.
    Closure {
        coalgebra: PathBuf,
    },
    /// Localize a subcoalgebra at a vertex subset: localized quiver, arrow
    /// labels, and the rewritten coalgebra.
    Localize {
        coalgebra: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<String>,
        /// Elements to rewrite over the localized quiver (repeatable).
        #[arg(long)]
        element: Vec<String>,
    },
    /// Classify the idempotent of a vertex subset: semicentrality, splitness,
    /// and tail growth.
    Classify {
        /// Coalgebra file (closure of its generators).
        #[arg(long, conflicts_with_all = ["quiver", "maxlen"])]
        coalgebra: Option<PathBuf>,
        /// Quiver file; classifies over the full path coalgebra.
        #[arg(long, requires = "maxlen")]
        quiver: Option<PathBuf>,
        /// Truncation bound for --quiver mode.
        #[arg(long)]
        maxlen: Option<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<String>,
    },
    /// Convert between relation ideals and subcoalgebras via orthogonal
    /// complements.
    Dualize {
        /// Coalgebra file: prints its relation ideal.
        #[arg(long, conflicts_with_all = ["quiver", "relations", "maxlen"])]
        coalgebra: Option<PathBuf>,
        /// Quiver file for --relations mode.
        #[arg(long, requires_all = ["relations", "maxlen"])]
        quiver: Option<PathBuf>,
        /// Relations file: prints the ideal it spans and the dual coalgebra.
        #[arg(long)]
        relations: Option<PathBuf>,
        #[arg(long)]
        maxlen: Option<usize>,
    },
    /// Report the basis rows of one component none of whose support paths are
    /// members, and the parallel arrows they induce.
    Criterion {
        coalgebra: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Validate a comodule file and report its invariants; optionally restrict
    /// to a subset or compute the section of a subset comodule.
    Comodule {
        coalgebra: PathBuf,
        /// Comodule file over the coalgebra (or over its localization with
        /// --section).
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<String>>,
        /// Treat the module as one over the localization and compute its
        /// section over the full coalgebra (requires --subset and --module).
        #[arg(long, requires = "subset")]
        section: bool,
        /// Cap on intermediate tensor dimensions.
        #[arg(long, default_value_t = 4096)]
        cap: usize,
    },
    /// Round-trip a subcoalgebra through its relation ideal and check it is
    /// recovered exactly.
    Roundtrip {
        coalgebra: PathBuf,
    },
    /// Seeded randomized self-checks of the main identities.
    Selftest {
        #[arg(long, default_value_t = 20260816)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        rounds: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, cli.format) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn read(path: &FsPath) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::Unsupported(format!("cannot read `{}`: {e}", path.display())))
}

fn load_quiver(path: &FsPath) -> Result<Arc<Quiver>, Error> {
    parse_quiver_text(&read(path)?)
}

/// Reads a coalgebra file and closes its generators.
fn load_coalgebra(path: &FsPath) -> Result<GradedSubcoalgebra, Error> {
    let file = parse_coalgebra_text(&read(path)?)?;
    subcoalgebra_closure(&file.quiver, &file.generators, file.max_len, true)
}

fn resolve_vertex(q: &Quiver, name: &str) -> Result<VertexId, Error> {
    q.vertex_by_name(name)
        .ok_or_else(|| Error::UnknownVertex(name.to_string()))
}

fn subset_of(q: &Quiver, names: &[String]) -> Result<std::collections::BTreeSet<VertexId>, Error> {
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    vertex_set(q, &refs)
}

fn emit(format: Format, value: &Value, text: &str) {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
    }
}

fn path_lines(q: &Quiver, paths: &[Path]) -> String {
    let mut out = String::new();
    for p in paths {
        out.push_str(&p.display(q).to_string());
        out.push('\n');
    }
    out
}

fn names_json(q: &Quiver, paths: &[Path]) -> Value {
    Value::Array(paths.iter().map(|p| path_json(q, p)).collect())
}

fn component_lines(c: &GradedSubcoalgebra) -> String {
    let q = c.quiver();
    let mut out = String::new();
    for ((a, b), s) in c.components() {
        out.push_str(&format!(
            "component {} -> {} (dim {}):\n",
            q.vertex_name(*a),
            q.vertex_name(*b),
            s.dim()
        ));
        for row in s.rows() {
            out.push_str(&format!("  {}\n", row.display(q)));
        }
    }
    out
}

fn coalgebra_text(c: &GradedSubcoalgebra) -> String {
    let q = c.quiver();
    let vertices: Vec<&str> = c.vertices().iter().map(|v| q.vertex_name(*v)).collect();
    format!(
        "vertices: {}\nmaxlen: {}\nadmissible: {}\ntotal dim: {}\n{}",
        vertices.join(" "),
        c.max_len(),
        c.admissible(),
        c.total_dim(),
        component_lines(c)
    )
}

fn length_vector_text(q: &Quiver, lv: &BTreeMap<VertexId, usize>) -> String {
    lv.iter()
        .map(|(v, n)| format!("{}:{}", q.vertex_name(*v), n))
        .collect::<Vec<_>>()
        .join(" ")
}

fn length_vector_json(q: &Quiver, lv: &BTreeMap<VertexId, usize>) -> Value {
    Value::Object(
        lv.iter()
            .map(|(v, n)| (q.vertex_name(*v).to_string(), json!(n)))
            .collect(),
    )
}

/// Socle report: multiplicity of each vertex simple, zero rows omitted.
fn socle_entries(m: &FinComodule) -> Vec<(VertexId, usize)> {
    let q = m.coalgebra().quiver().clone();
    q.vertices()
        .map(|v| (v, m.hom_simple(v)))
        .filter(|(_, n)| *n > 0)
        .collect()
}

fn module_report_text(label: &str, m: &FinComodule) -> Result<String, Error> {
    let q = m.coalgebra().quiver().clone();
    let lv = m.length_vector()?;
    let mut out = format!("{label} dim: {}\n", m.dim());
    out.push_str(&format!(
        "{label} length vector: {}\n",
        length_vector_text(&q, &lv)
    ));
    let socle = socle_entries(m);
    out.push_str(&format!(
        "{label} socle dim: {}\n",
        socle.iter().map(|(_, n)| n).sum::<usize>()
    ));
    for (v, n) in &socle {
        out.push_str(&format!("{label} socle {}: {}\n", q.vertex_name(*v), n));
    }
    Ok(out)
}

fn module_report_json(m: &FinComodule) -> Result<Value, Error> {
    let q = m.coalgebra().quiver().clone();
    let lv = m.length_vector()?;
    Ok(json!({
        "dim": m.dim(),
        "length_vector": length_vector_json(&q, &lv),
        "socle": Value::Object(
            socle_entries(m)
                .into_iter()
                .map(|(v, n)| (q.vertex_name(v).to_string(), json!(n)))
                .collect(),
        ),
    }))
}

fn classification_text(
    q: &Quiver,
    xs: &std::collections::BTreeSet<VertexId>,
    cls: &IdempotentClassification,
) -> String {
    let names: Vec<&str> = xs.iter().map(|v| q.vertex_name(*v)).collect();
    let mut out = format!("subset: {}\n", names.join(" "));
    if let Some(a) = cls.entering_arrow {
        out.push_str(&format!("entering arrow: {}\n", q.arrow_name(a)));
    }
    if let Some(a) = cls.leaving_arrow {
        out.push_str(&format!("leaving arrow: {}\n", q.arrow_name(a)));
    }
    out.push_str(&format!("left semicentral: {}\n", cls.left_semicentral));
    out.push_str(&format!("right semicentral: {}\n", cls.right_semicentral));
    out.push_str(&format!("split: {}\n", cls.split));
    if let Some(w) = &cls.split_violation {
        out.push_str(&format!("split violation: {}\n", w.display(q)));
    }
    out.push_str(&format!("colocalizing: {}\n", cls.colocalizing));
    out.push_str(&format!("bounds exact: {}\n", cls.acyclic_exact));
    for (v, dims) in &cls.tail_dims {
        let dims: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
        out.push_str(&format!(
            "tail dims {}: {}\n",
            q.vertex_name(*v),
            dims.join(" ")
        ));
    }
    out
}

fn classification_json(
    q: &Quiver,
    xs: &std::collections::BTreeSet<VertexId>,
    cls: &IdempotentClassification,
) -> Value {
    json!({
        "subset": xs.iter().map(|v| q.vertex_name(*v)).collect::<Vec<_>>(),
        "entering_arrow": cls.entering_arrow.map(|a| q.arrow_name(a)),
        "leaving_arrow": cls.leaving_arrow.map(|a| q.arrow_name(a)),
        "left_semicentral": cls.left_semicentral,
        "right_semicentral": cls.right_semicentral,
        "split": cls.split,
        "split_violation": cls.split_violation.as_ref().map(|w| w.display(q).to_string()),
        "colocalizing": cls.colocalizing,
        "bounds_exact": cls.acyclic_exact,
        "truncation": cls.truncation,
        "tail_dims": Value::Object(
            cls.tail_dims
                .iter()
                .map(|(v, dims)| (q.vertex_name(*v).to_string(), json!(dims)))
                .collect(),
        ),
    })
}

fn localization_text(lq: &LocalizedQuiver, rewritten: &GradedSubcoalgebra) -> String {
    let orig = lq.original();
    let mut out = quiver_to_text(lq.quiver());
    for a in lq.quiver().arrows() {
        out.push_str(&format!(
            "label {} = {}\n",
            lq.quiver().arrow_name(a),
            lq.label(a).display(orig)
        ));
    }
    out.push_str(&format!("admissible: {}\n", rewritten.admissible()));
    out.push_str(&format!("total dim: {}\n", rewritten.total_dim()));
    out.push_str(&component_lines(rewritten));
    out
}

fn ideal_text(diagnosed: &pathcoalg::relations::GradedIdeal) -> String {
    let q = diagnosed.quiver();
    let mut out = format!("ideal dim: {}\n", diagnosed.total_dim());
    for ((a, b), s) in diagnosed.components() {
        out.push_str(&format!(
            "component {} -> {} (dim {}):\n",
            q.vertex_name(*a),
            q.vertex_name(*b),
            s.dim()
        ));
        for row in s.rows() {
            out.push_str(&format!("  {}\n", row.display(q)));
        }
    }
    out
}

fn ideal_json(ideal: &pathcoalg::relations::GradedIdeal) -> Value {
    let q = ideal.quiver();
    json!({
        "dim": ideal.total_dim(),
        "components": ideal.components().map(|((a, b), s)| json!({
            "source": q.vertex_name(*a),
            "target": q.vertex_name(*b),
            "space": subspace_json(q, s),
        })).collect::<Vec<_>>(),
    })
}

fn run(command: Command, format: Format) -> Result<(), Error> {
    match command {
        Command::Paths { quiver, maxlen, from, to } => {
            let q = load_quiver(&quiver)?;
            let paths = match (&from, &to) {
                (Some(a), Some(b)) => {
                    enumerate_paths(&q, resolve_vertex(&q, a)?, resolve_vertex(&q, b)?, maxlen)
                }
                (Some(a), None) => {
                    let a = resolve_vertex(&q, a)?;
                    enumerate_all_paths(&q, maxlen)
                        .into_iter()
                        .filter(|p| p.source() == a)
                        .collect()
                }
                (None, Some(_)) => {
                    return Err(Error::Unsupported("--to needs --from".to_string()))
                }
                (None, None) => enumerate_all_paths(&q, maxlen),
            };
            emit(format, &json!({ "paths": names_json(&q, &paths) }), &path_lines(&q, &paths));
        }
        Command::Cells { quiver, subset, from, to, maxlen } => {
            let q = load_quiver(&quiver)?;
            let xs = subset_of(&q, &subset)?;
            let cells = enumerate_cells(
                &q,
                &xs,
                resolve_vertex(&q, &from)?,
                resolve_vertex(&q, &to)?,
                maxlen,
            );
            emit(format, &json!({ "cells": names_json(&q, &cells) }), &path_lines(&q, &cells));
        }
        Command::Tails { quiver, subset, from, maxlen } => {
            let q = load_quiver(&quiver)?;
            let xs = subset_of(&q, &subset)?;
            let tails = enumerate_tails(&q, &xs, resolve_vertex(&q, &from)?, maxlen);
            emit(format, &json!({ "tails": names_json(&q, &tails) }), &path_lines(&q, &tails));
        }
        Command::Delta { quiver, element } => {
            let q = load_quiver(&quiver)?;
            let v = parse_element(&q, &element, 1)?;
            let expansion = delta_elem(&q, &v);
            let mut text = String::new();
            let mut terms = Vec::new();
            for ((back, front), coeff) in expansion.iter() {
                text.push_str(&format!(
                    "{} * {} (x) {}\n",
                    coeff,
                    back.display(&q),
                    front.display(&q)
                ));
                terms.push(json!({
                    "coeff": coeff.to_string(),
                    "back": path_json(&q, back),
                    "front": path_json(&q, front),
                }));
            }
            emit(format, &json!({ "terms": terms }), &text);
        }
        Command::Closure { coalgebra } => {
            let c = load_coalgebra(&coalgebra)?;
            emit(format, &coalgebra_json(&c), &coalgebra_text(&c));
        }
        Command::Localize { coalgebra, subset, element } => {
            let c = load_coalgebra(&coalgebra)?;
            let xs = subset_of(c.quiver(), &subset)?;
            let (lq, rewritten) = localize_over_quotient(&c, &xs)?;
            let mut text = localization_text(&lq, &rewritten);
            let mut rewrites = Vec::new();
            for raw in &element {
                let v = parse_element(c.quiver(), raw, 1)?;
                let image = re_express(&lq, &v)?;
                text.push_str(&format!(
                    "reexpress {} -> {}\n",
                    v.display(c.quiver()),
                    image.display(lq.quiver())
                ));
                rewrites.push(json!({
                    "input": element_json(c.quiver(), &v),
                    "image": element_json(lq.quiver(), &image),
                }));
            }
            let labels: Vec<Value> = lq
                .quiver()
                .arrows()
                .map(|a| {
                    json!({
                        "name": lq.quiver().arrow_name(a),
                        "label": element_json(lq.original(), lq.label(a)),
                    })
                })
                .collect();
            emit(
                format,
                &json!({
                    "quiver": quiver_json(lq.quiver()),
                    "labels": labels,
                    "coalgebra": coalgebra_json(&rewritten),
                    "reexpressed": rewrites,
                }),
                &text,
            );
        }
        Command::Classify { coalgebra, quiver, maxlen, subset } => {
            let c = match (coalgebra, quiver, maxlen) {
                (Some(path), None, None) => load_coalgebra(&path)?,
                (None, Some(path), Some(bound)) => {
                    GradedSubcoalgebra::full_path_coalgebra(load_quiver(&path)?, bound)
                }
                _ => {
                    return Err(Error::Unsupported(
                        "classify needs either --coalgebra or --quiver with --maxlen".to_string(),
                    ))
                }
            };
            let xs = subset_of(c.quiver(), &subset)?;
            let cls = classify_idempotent(&c, &xs)?;
            emit(
                format,
                &classification_json(c.quiver(), &xs, &cls),
                &classification_text(c.quiver(), &xs, &cls),
            );
        }
        Command::Dualize { coalgebra, quiver, relations, maxlen } => {
            match (coalgebra, quiver, relations, maxlen) {
                (Some(path), None, None, None) => {
                    let c = load_coalgebra(&path)?;
                    let diag = relations_of_coalgebra(&c)?;
                    let mut text = ideal_text(&diag.ideal);
                    text.push_str(&format!(
                        "supports length >= 2: {}\nclosed under multiplication: {}\n",
                        diag.supports_are_long, diag.closed_under_multiplication
                    ));
                    emit(
                        format,
                        &json!({
                            "ideal": ideal_json(&diag.ideal),
                            "supports_length_ge_2": diag.supports_are_long,
                            "closed_under_multiplication": diag.closed_under_multiplication,
                        }),
                        &text,
                    );
                }
                (None, Some(qpath), Some(rpath), Some(bound)) => {
                    let q = load_quiver(&qpath)?;
                    let gens = parse_relations_text(&q, &read(&rpath)?)?;
                    let ideal = truncated_ideal_span(&q, &gens, bound)?;
                    let c = coalgebra_of_relations(&q, &gens, bound)?;
                    let mut text = ideal_text(&ideal);
                    text.push_str(&coalgebra_text(&c));
                    emit(
                        format,
                        &json!({
                            "ideal": ideal_json(&ideal),
                            "coalgebra": coalgebra_json(&c),
                        }),
                        &text,
                    );
                }
                _ => {
                    return Err(Error::Unsupported(
                        "dualize needs either --coalgebra or --quiver with --relations and --maxlen"
                            .to_string(),
                    ))
                }
            }
        }
        Command::Criterion { coalgebra, from, to } => {
            let c = load_coalgebra(&coalgebra)?;
            let q = c.quiver().clone();
            let x = resolve_vertex(&q, &from)?;
            let y = resolve_vertex(&q, &to)?;
            let witness = criterion_witness(&c, x, y);
            let xs: std::collections::BTreeSet<VertexId> = [x, y].into_iter().collect();
            let lq = localized_quiver(&c, &xs)?;
            let lx = lq.localized_vertex(x).expect("subset vertex");
            let ly = lq.localized_vertex(y).expect("subset vertex");
            let parallel = lq.parallel_counts().get(&(lx, ly)).copied().unwrap_or(0);
            let mut text = format!(
                "pair: {} -> {}\ntruncation: {}\nwitness size: {}\n",
                q.vertex_name(x),
                q.vertex_name(y),
                witness.truncation,
                witness.size()
            );
            for row in &witness.rows {
                text.push_str(&format!("row: {}\n", row.display(&q)));
            }
            text.push_str(&format!(
                "localized parallel arrows: {parallel}\nthree or more parallel: {}\n",
                parallel >= 3
            ));
            emit(
                format,
                &json!({
                    "pair": [q.vertex_name(x), q.vertex_name(y)],
                    "truncation": witness.truncation,
                    "witness_size": witness.size(),
                    "rows": witness.rows.iter().map(|r| element_json(&q, r)).collect::<Vec<_>>(),
                    "localized_parallel_arrows": parallel,
                    "three_or_more_parallel": parallel >= 3,
                }),
                &text,
            );
        }
        Command::Comodule { coalgebra, module, subset, section, cap } => {
            let c = Arc::new(load_coalgebra(&coalgebra)?);
            let q = c.quiver().clone();
            let xs = subset.map(|names| subset_of(&q, &names)).transpose()?;
            match (module, xs, section) {
                (Some(mpath), None, false) => {
                    let rows = parse_comodule_text(&q, &read(&mpath)?)?;
                    let m = FinComodule::new(c, rows)?;
                    emit(
                        format,
                        &json!({ "module": module_report_json(&m)? }),
                        &module_report_text("module", &m)?,
                    );
                }
                (Some(mpath), Some(xs), false) => {
                    let rows = parse_comodule_text(&q, &read(&mpath)?)?;
                    let m = FinComodule::new(c.clone(), rows)?;
                    let ece = Arc::new(localize(&c, &xs)?);
                    let t = restrict_comodule(&m, &ece)?;
                    let text = format!(
                        "{}{}",
                        module_report_text("module", &m)?,
                        module_report_text("restriction", &t)?
                    );
                    emit(
                        format,
                        &json!({
                            "module": module_report_json(&m)?,
                            "restriction": module_report_json(&t)?,
                        }),
                        &text,
                    );
                }
                (Some(mpath), Some(xs), true) => {
                    let ece = Arc::new(localize(&c, &xs)?);
                    let rows = parse_comodule_text(&q, &read(&mpath)?)?;
                    let n = FinComodule::new(ece.clone(), rows)?;
                    let sec = cotensor_section(&n, &c, cap)?;
                    let back = restrict_comodule(&sec.comodule, &ece)?;
                    let recovered =
                        back.dim() == n.dim() && back.length_vector()? == n.length_vector()?;
                    let text = format!(
                        "{}{}restricts back: {recovered}\n",
                        module_report_text("module", &n)?,
                        module_report_text("section", &sec.comodule)?
                    );
                    emit(
                        format,
                        &json!({
                            "module": module_report_json(&n)?,
                            "section": module_report_json(&sec.comodule)?,
                            "restricts_back": recovered,
                        }),
                        &text,
                    );
                }
                (None, Some(xs), _) => {
                    let restriction = comodule_of_restriction(&c, &xs)?;
                    emit(
                        format,
                        &json!({ "restriction": module_report_json(&restriction.comodule)? }),
                        &module_report_text("restriction", &restriction.comodule)?,
                    );
                }
                (None, None, _) | (Some(_), None, true) => {
                    return Err(Error::Unsupported(
                        "comodule needs --module or --subset (--section needs both)".to_string(),
                    ))
                }
            }
        }
        Command::Roundtrip { coalgebra } => {
            let c = load_coalgebra(&coalgebra)?;
            let diag = relations_of_coalgebra(&c)?;
            let back = coalgebra_of_relations(c.quiver(), &diag.ideal.rows(), c.max_len())?;
            let recovered = back == c;
            let text = format!(
                "coalgebra total dim: {}\nideal dim: {}\nsupports length >= 2: {}\nclosed under multiplication: {}\nrecovered: {recovered}\n",
                c.total_dim(),
                diag.ideal.total_dim(),
                diag.supports_are_long,
                diag.closed_under_multiplication,
            );
            emit(
                format,
                &json!({
                    "coalgebra_dim": c.total_dim(),
                    "ideal_dim": diag.ideal.total_dim(),
                    "supports_length_ge_2": diag.supports_are_long,
                    "closed_under_multiplication": diag.closed_under_multiplication,
                    "recovered": recovered,
                }),
                &text,
            );
            if !recovered {
                return Err(Error::Unsupported(
                    "coalgebra was not recovered from its relation ideal".to_string(),
                ));
            }
        }
        Command::Selftest { seed, rounds } => {
            let checks = selftest(seed, rounds)?;
            emit(
                format,
                &json!({ "seed": seed, "rounds": rounds, "checks": checks, "ok": true }),
                &format!("seed: {seed}\nrounds: {rounds}\nchecks: {checks}\nselftest: ok\n"),
            );
        }
    }
    Ok(())
}

/// Randomized identities: relation-ideal duality, closure admissibility, and
/// length vectors through restriction. Returns the number of checks done.
fn selftest(seed: u64, rounds: usize) -> Result<usize, Error> {
    let mut rng = rng_from_seed(seed);
    let mut checks = 0usize;
    for round in 0..rounds {
        let q = random_quiver(&mut rng, 5, 8, true);
        let gens = random_relations(&mut rng, &q, 3, 5);
        let ideal = truncated_ideal_span(&q, &gens, 5)?;
        let c = coalgebra_of_relations(&q, &gens, 5)?;
        let diag = relations_of_coalgebra(&c)?;
        if diag.ideal != ideal || !diag.supports_are_long || !diag.closed_under_multiplication {
            return Err(Error::Unsupported(format!(
                "relation duality check failed in round {round}"
            )));
        }
        checks += 1;

        let q = random_quiver(&mut rng, 4, 6, false);
        let c = random_subcoalgebra(&mut rng, &q, 3, 3);
        if !is_subcoalgebra(&c) || !is_admissible(&c) {
            return Err(Error::Unsupported(format!(
                "closure check failed in round {round}"
            )));
        }
        checks += 1;

        let q = random_quiver(&mut rng, 4, 6, true);
        let c = Arc::new(random_subcoalgebra(&mut rng, &q, 3, 3));
        let xs = random_vertex_subset(&mut rng, &q);
        let ece = Arc::new(localize(&c, &xs)?);
        if let Ok(m) = random_comodule(&mut rng, &c, 6) {
            let lv = m.length_vector()?;
            let t = restrict_comodule(&m, &ece)?;
            let expected: BTreeMap<VertexId, usize> = lv
                .iter()
                .filter(|(v, _)| xs.contains(v))
                .map(|(v, n)| (*v, *n))
                .collect();
            if t.length_vector()? != expected {
                return Err(Error::Unsupported(format!(
                    "restriction length vector check failed in round {round}"
                )));
            }
            checks += 1;
        }
    }
    Ok(checks)
}
