use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use reflex24::arrangement::{cell_incidence_check, verify_intersection_points, Window};
use reflex24::complexes::graph::theta_graph;
use reflex24::complexes::{
    build_24cell, build_window, cat1_check, hypercube, isomorphic, k0_link, lens_assignment, lens_svg, mobius_kantor,
    Cat1, LensRole,
};
use reflex24::groups::{bfs_words, generate_g4, verify_reflection_fact, verify_translation_fact};
use reflex24::hquat::{parse_rational, Rational};
use reflex24::isometry::IsometryClass;
use reflex24::presentations::{
    abelianization, extract_presentation, quotient, stability_radius_sq, todd_coxeter, Presentation, QuotientSpace,
    TcOutcome,
};
use reflex24::verify::{verify_all, VerifyConfig};

#[derive(Parser, Debug)]
#[command(name = "reflex24", version, about = "Exact checks for the G̃4 reflection group and its complement complex")]
struct Cli {
    /// key=value settings file; command-line flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the lens diagram to this SVG file.
    #[arg(long, global = true, value_name = "PATH")]
    svg_lenses: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every check in order and report PASS/FAIL/SKIP for each.
    VerifyAll {
        #[arg(long)]
        radius_sq: Option<String>,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// The finite group G4 and words in the generators of G̃4.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// The fixed hyperplanes of G̃4.
    Arrangement {
        #[command(subcommand)]
        command: ArrangementCommand,
    },
    /// The complexes K₀ and K.
    Complex {
        #[command(subcommand)]
        command: ComplexCommand,
    },
    /// Orbit counts and boundary words of K₀/G4 or K/G̃4.
    Quotient {
        #[arg(long)]
        space: Option<String>,
        #[arg(long)]
        radius_sq: Option<String>,
    },
    /// Coset enumeration over the trivial subgroup.
    Tc {
        #[arg(long)]
        relators: Option<String>,
        /// Comma separated generator names; defaults to order of appearance.
        #[arg(long)]
        generators: Option<String>,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    /// List G4 and every word of G̃4 up to a length.
    Enum {
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ArrangementCommand {
    /// Intersection points and cell incidences inside a window.
    Verify {
        #[arg(long)]
        radius_sq: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum ComplexCommand {
    /// Build K in a window and export it as JSON.
    Build {
        #[arg(long)]
        radius_sq: Option<String>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Vertex links of K₀ and of the interior vertices of K.
    Links {
        /// List every vertex instead of a summary.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        radius_sq: Option<String>,
    },
    /// Lens assignment of the vertices and octahedra of the 24-cell.
    Lenses {
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
}

/// Settings from the config file, overridden by flags.
#[derive(Debug, Default)]
struct Settings {
    radius_sq: Option<String>,
    max_len: Option<usize>,
    max_cosets: Option<usize>,
    json: bool,
    svg_lenses: Option<PathBuf>,
    space: Option<String>,
    relators: Option<String>,
    generators: Option<String>,
}

enum Failure {
    /// Invalid configuration or arguments: exit 2.
    Config(String),
    /// A check ran and failed, or the computation could not finish: exit 1.
    Check(String),
}

type Outcome = Result<bool, Failure>;

fn config_error(e: impl ToString) -> Failure {
    Failure::Config(e.to_string())
}

fn load_config(path: &Path) -> Result<Settings, Failure> {
    let text = fs::read_to_string(path).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
    let table: toml::Table = text.parse().map_err(|e| config_error(format!("{}: {e}", path.display())))?;
    let mut s = Settings::default();
    for (key, value) in table {
        let bad = || config_error(format!("{}: bad value for {key}: {value}", path.display()));
        let text = || value.as_str().map(str::to_string).ok_or_else(bad);
        let count = || value.as_integer().and_then(|n| usize::try_from(n).ok()).ok_or_else(bad);
        match key.replace('-', "_").as_str() {
            "radius_sq" => {
                s.radius_sq = Some(match &value {
                    toml::Value::Integer(n) => n.to_string(),
                    toml::Value::String(t) => t.clone(),
                    _ => return Err(bad()),
                })
            }
            "max_len" => s.max_len = Some(count()?),
            "max_cosets" => s.max_cosets = Some(count()?),
            "json" => s.json = value.as_bool().ok_or_else(bad)?,
            "svg_lenses" => s.svg_lenses = Some(PathBuf::from(text()?)),
            "space" => s.space = Some(text()?),
            "relators" => s.relators = Some(text()?),
            "generators" => s.generators = Some(text()?),
            _ => return Err(config_error(format!("{}: unknown key {key}", path.display()))),
        }
    }
    Ok(s)
}

fn radius(s: &Settings, flag: &Option<String>, default: &str) -> Result<Rational, Failure> {
    let text = flag.clone().or_else(|| s.radius_sq.clone()).unwrap_or_else(|| default.to_string());
    let r = parse_rational(text.trim()).ok_or_else(|| config_error(format!("radius_sq {text:?} is not a rational")))?;
    Window::new(r.clone()).map_err(config_error)?;
    Ok(r)
}

fn emit(settings: &Settings, value: &Value, text: &str) {
    if settings.json {
        println!("{}", serde_json::to_string_pretty(value).expect("serialisable"));
    } else {
        print!("{text}");
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Check(format!("{}: {e}", path.display())))
}

fn write_lens_svg(path: &Path) -> Result<(), Failure> {
    write_file(path, &lens_svg(&lens_assignment()))
}

fn mark(ok: bool) -> &'static str {
    if ok { "PASS" } else { "FAIL" }
}

fn cmd_verify_all(s: &Settings, r: &Option<String>, max_len: Option<usize>, max_cosets: Option<usize>) -> Outcome {
    let defaults = VerifyConfig::default();
    let config = VerifyConfig {
        radius_sq: radius(s, r, &defaults.radius_sq.to_string())?,
        max_len: max_len.or(s.max_len).unwrap_or(defaults.max_len),
        max_cosets: max_cosets.or(s.max_cosets).unwrap_or(defaults.max_cosets),
    };
    config.validate().map_err(config_error)?;
    let report = verify_all(&config);
    emit(s, &serde_json::to_value(&report).expect("serialisable"), &report.to_text());
    Ok(report.all_passed())
}

fn cmd_group_enum(s: &Settings, max_len: Option<usize>, out: &Option<PathBuf>) -> Outcome {
    let max_len = max_len.or(s.max_len).unwrap_or(6);
    let g4 = generate_g4();
    let elements: Vec<Value> = g4
        .elements()
        .iter()
        .zip(g4.labels())
        .map(|(f, l)| json!({ "label": l.map(|l| l.to_string()), "map": f.to_string(), "class": format!("{:?}", f.classify()) }))
        .collect();
    let words = bfs_words(max_len);
    let mut by_length = vec![0usize; max_len + 1];
    let mut classes = std::collections::BTreeMap::<String, usize>::new();
    for (f, len) in &words {
        by_length[*len] += 1;
        *classes.entry(format!("{:?}", f.classify())).or_default() += 1;
    }
    let translations = verify_translation_fact(max_len);
    let reflections = words.iter().filter(|(f, _)| f.classify() == IsometryClass::Reflection).count();
    let ok = g4.len() == 24 && g4.labels().iter().all(Option::is_some) && translations.passed();
    let report = json!({
        "g4": elements,
        "max_len": max_len,
        "words": words.len(),
        "by_length": by_length,
        "classes": classes,
        "reflections": reflections,
        "translations": translations,
    });
    let text = format!(
        "G4: {} elements, all labelled: {}\nwords up to length {max_len}: {} {:?}\n\
         translations: {} (all in 2Λ: {}), reflections: {reflections}\n{} group enumeration\n",
        g4.len(),
        g4.labels().iter().all(Option::is_some),
        words.len(),
        by_length,
        translations.translations.len(),
        translations.all_in_two_lambda,
        mark(ok),
    );
    match out {
        Some(path) => {
            write_file(path, &serde_json::to_string_pretty(&report).expect("serialisable"))?;
            emit(s, &json!({ "passed": ok, "out": path }), &text);
        }
        None => emit(s, &report, &text),
    }
    Ok(ok)
}

fn cmd_arrangement(s: &Settings, r: &Option<String>) -> Outcome {
    let window = Window::new(radius(s, r, "8")?).map_err(config_error)?;
    let ir = verify_intersection_points(&window);
    let cr = cell_incidence_check(&window);
    let rr = verify_reflection_fact(&window, s.max_len.unwrap_or(6));
    let ok = ir.passed() && cr.passed() && rr.passed();
    let value = json!({
        "radius_sq": window.radius_sq.to_string(),
        "hyperplanes": ir.hyperplanes,
        "intersection_points": ir.points.len(),
        "outside_d4": ir.outside_d4,
        "missing_d4": ir.missing_d4,
        "cells": cr.centers,
        "incidence_pairs": cr.pairs_checked,
        "through_center": cr.through_center,
        "violations": cr.violations.len(),
        "reflections_unmatched": rr.unmatched.len(),
        "passed": ok,
    });
    let text = format!(
        "{} intersections: {} hyperplanes, {} points, {} outside Λ_D4, {} Λ_D4 points missed\n\
         {} incidences: {} cells, {} pairs, {} through a centre, {} violations\n\
         {} reflections: {} found, {} unmatched\n",
        mark(ir.passed()),
        ir.hyperplanes,
        ir.points.len(),
        ir.outside_d4.len(),
        ir.missing_d4.len(),
        mark(cr.passed()),
        cr.centers,
        cr.pairs_checked,
        cr.through_center,
        cr.violations.len(),
        mark(rr.passed()),
        rr.reflections,
        rr.unmatched.len(),
    );
    emit(s, &value, &text);
    Ok(ok)
}

fn cmd_complex_build(s: &Settings, r: &Option<String>, out: &Option<PathBuf>) -> Outcome {
    let window = Window::new(radius(s, r, "8")?).map_err(config_error)?;
    let w = build_window(&window);
    let json = w.to_json();
    let (v, e, t) = w.k.f_vector();
    let ok = w.inconsistent.is_empty() && w.k.invariant_violations().is_empty();
    let text = format!("{} K at radius² {}: {} cells, {v} vertices, {e} edges, {t} triangles\n", mark(ok), window.radius_sq, w.centers.len());
    match out {
        Some(path) => {
            write_file(path, &serde_json::to_string(&json).expect("serialisable"))?;
            emit(s, &json!({ "f_vector": [v, e, t], "cells": w.centers.len(), "out": path, "passed": ok }), &text);
        }
        None => emit(s, &json, &text),
    }
    Ok(ok)
}

fn cmd_complex_links(s: &Settings, all: bool, r: &Option<String>) -> Outcome {
    let cell = build_24cell(&reflex24::Quat::zero());
    let theta = theta_graph(&[3, 3, 3]);
    let mut rows = Vec::new();
    let mut ok = true;
    for v in 0..cell.vertices.len() {
        let link = k0_link(&cell, v);
        let cat1 = cat1_check(&link.graph);
        let pass = isomorphic(&link.graph, &theta) && cat1 == Cat1::Pass { min_cycle: Some(6) };
        ok &= pass;
        rows.push(json!({
            "complex": "K0",
            "vertex": cell.vertices[v].label(),
            "nodes": link.graph.node_count,
            "edges": link.graph.edge_count(),
            "shape": "theta",
            "min_cycle": cat1.min_cycle(),
            "passed": pass,
        }));
    }
    let window = Window::new(radius(s, r, "8")?).map_err(config_error)?;
    let w = build_window(&window);
    let mk = mobius_kantor();
    let q4 = hypercube(4);
    for x in w.interior_vertices() {
        let (Ok(link), Ok(full)) = (w.link_in_k(&x), w.full_voronoi_link(&x)) else {
            ok = false;
            continue;
        };
        let cat1 = cat1_check(&link.graph);
        let pass = isomorphic(&link.graph, &mk)
            && isomorphic(&full.graph, &q4)
            && link.graph.is_subgraph_of(&full.graph)
            && cat1 == Cat1::Pass { min_cycle: Some(6) };
        ok &= pass;
        rows.push(json!({
            "complex": "K",
            "vertex": x.label(),
            "nodes": link.graph.node_count,
            "edges": link.graph.edge_count(),
            "shape": "Möbius–Kantor",
            "min_cycle": cat1.min_cycle(),
            "passed": pass,
        }));
    }
    let count = |c: &str| rows.iter().filter(|r| r["complex"] == c).count();
    let failed = rows.iter().filter(|r| r["passed"] == false).count();
    let mut text = String::new();
    if all {
        for r in &rows {
            text.push_str(&format!(
                "{} {:<2} {:<16} {:>2} nodes {:>2} edges {} min cycle {}\n",
                mark(r["passed"] == true),
                r["complex"].as_str().unwrap_or_default(),
                r["vertex"].as_str().unwrap_or_default(),
                r["nodes"],
                r["edges"],
                r["shape"].as_str().unwrap_or_default(),
                r["min_cycle"],
            ));
        }
    }
    text.push_str(&format!(
        "{} {} K₀ links, {} interior K links at radius² {}, {failed} failed\n",
        mark(ok),
        count("K0"),
        count("K"),
        window.radius_sq
    ));
    let value = if all { json!({ "links": rows, "passed": ok }) } else {
        json!({ "k0_links": count("K0"), "k_links": count("K"), "failed": failed, "passed": ok })
    };
    emit(s, &value, &text);
    Ok(ok)
}

fn cmd_complex_lenses(s: &Settings, svg: &Option<PathBuf>) -> Outcome {
    let entries = lens_assignment();
    if let Some(path) = svg {
        write_file(path, &lens_svg(&entries))?;
    }
    let mut text = String::new();
    for e in &entries {
        let role = match e.role {
            LensRole::BoundaryCircle => "boundary circle".to_string(),
            LensRole::Hemisphere { front_of, back_of } => format!("front of {front_of}, back of {back_of}"),
            LensRole::Interior => "interior".to_string(),
            LensRole::LensCenter => "lens centre".to_string(),
        };
        text.push_str(&format!("{:<10?} {:<16} lenses {:?}  {role}\n", e.kind, e.label, e.lenses));
    }
    emit(s, &serde_json::to_value(&entries).expect("serialisable"), &text);
    Ok(true)
}

fn cmd_quotient(s: &Settings, space: &Option<String>, r: &Option<String>) -> Outcome {
    let space: QuotientSpace = space
        .clone()
        .or_else(|| s.space.clone())
        .unwrap_or_else(|| "K".into())
        .parse()
        .map_err(config_error)?;
    let radius = radius(s, r, &stability_radius_sq().to_string())?;
    let qc = quotient(space, &radius).map_err(|e| Failure::Check(e.to_string()))?;
    let presentation = extract_presentation(&qc).map_err(|e| Failure::Check(e.to_string()))?;
    let mut text = format!("{space}: {} vertex, {} edges, {} triangles\n", qc.counts.0, qc.counts.1, qc.counts.2);
    for e in &qc.edges {
        text.push_str(&format!("  {}: {} -> {}\n", e.name, e.tail, e.head));
    }
    for t in &qc.triangles {
        text.push_str(&format!("  {}: {}\n", t.word_text, t.vertices.join(", ")));
    }
    text.push_str(&format!("{presentation}\n"));
    let value = json!({ "quotient": qc, "presentation": presentation.to_string() });
    emit(s, &value, &text);
    Ok(true)
}

fn cmd_tc(s: &Settings, relators: &Option<String>, generators: &Option<String>, max_cosets: Option<usize>) -> Outcome {
    let relators = relators.clone().or_else(|| s.relators.clone()).ok_or_else(|| config_error("--relators is required"))?;
    let max_cosets = max_cosets.or(s.max_cosets).unwrap_or(100_000);
    if max_cosets == 0 {
        return Err(config_error("max_cosets must be at least 1"));
    }
    let p: Presentation = match generators.clone().or_else(|| s.generators.clone()) {
        Some(g) => {
            let names: Vec<&str> = g.split(',').map(str::trim).collect();
            Presentation::parse_with_generators(&names, &relators)
        }
        None => relators.parse(),
    }
    .map_err(config_error)?;
    let outcome = todd_coxeter(&p, max_cosets);
    let ab = abelianization(&p);
    let result = match &outcome {
        TcOutcome::Finite(t) => format!("finite, order {}", t.order()),
        TcOutcome::Exceeded { cosets_defined } => {
            format!("exceeded the cap after defining {cosets_defined} cosets (not a proof of infinite order)")
        }
    };
    let value = json!({
        "presentation": p.to_string(),
        "max_cosets": max_cosets,
        "order": outcome.order(),
        "exceeded": outcome.order().is_none(),
        "abelianization": ab.to_string(),
    });
    emit(s, &value, &format!("{p}\n{result}\nabelianization: {ab}\n"));
    Ok(true)
}

fn run(cli: &Cli) -> Outcome {
    let mut s = match &cli.config {
        Some(path) => load_config(path)?,
        None => Settings::default(),
    };
    s.json |= cli.json;
    if cli.svg_lenses.is_some() {
        s.svg_lenses = cli.svg_lenses.clone();
    }
    let ok = match &cli.command {
        Command::VerifyAll { radius_sq, max_len, max_cosets } => cmd_verify_all(&s, radius_sq, *max_len, *max_cosets)?,
        Command::Group { command: GroupCommand::Enum { max_len, out } } => cmd_group_enum(&s, *max_len, out)?,
        Command::Arrangement { command: ArrangementCommand::Verify { radius_sq } } => cmd_arrangement(&s, radius_sq)?,
        Command::Complex { command } => match command {
            ComplexCommand::Build { radius_sq, out } => cmd_complex_build(&s, radius_sq, out)?,
            ComplexCommand::Links { all, radius_sq } => cmd_complex_links(&s, *all, radius_sq)?,
            ComplexCommand::Lenses { svg } => cmd_complex_lenses(&s, svg)?,
        },
        Command::Quotient { space, radius_sq } => cmd_quotient(&s, space, radius_sq)?,
        Command::Tc { relators, generators, max_cosets } => cmd_tc(&s, relators, generators, *max_cosets)?,
    };
    if let Some(path) = &s.svg_lenses {
        write_lens_svg(path)?;
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(2)
        }
    }
}
