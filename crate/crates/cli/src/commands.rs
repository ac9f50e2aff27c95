use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use bubbletrap::bubble::output::{write_bubble_fasta, write_json_line, BubbleRecord, SourceSummary};
use bubbletrap::bubble::{enumerate_bubbles, oracle_enumerate, Bubble, BubbleQuery, EnumerationReport, Limits};
use bubbletrap::debruijn::{read_binary, read_gfa, write_binary, write_gfa, BINARY_MAGIC};
use bubbletrap::repeat::{
    gamma_experiment, generate_repeats, planted_bubble_graph, BubbleSpec, GammaExperiment, TrapSpec,
};
use bubbletrap::seqio::{read_sequences, write_fasta_record};
use bubbletrap::{build_graph, DeBruijnGraph, Error, NPolicy, Sequence, VertexId};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::args::*;
use crate::config::RunConfig;
use crate::error::{CliError, Result};

/// How a successful run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Complete,
    Partial,
}

fn create(cfg: &RunConfig, name: &str) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(cfg.output(name))?))
}

fn start(cfg: &RunConfig) -> Result<()> {
    fs::create_dir_all(&cfg.out)?;
    let mut w = create(cfg, "config.json")?;
    serde_json::to_writer_pretty(&mut w, cfg)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn write_json<T: Serialize>(cfg: &RunConfig, name: &str, value: &T) -> Result<()> {
    let mut w = create(cfg, name)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn n_policy(p: NPolicyArg) -> NPolicy {
    match p {
        NPolicyArg::Split => NPolicy::Split,
        NPolicyArg::Reject => NPolicy::Reject,
    }
}

fn load_reads(paths: &[std::path::PathBuf], policy: NPolicyArg) -> Result<Vec<Sequence>> {
    match read_sequences(paths, n_policy(policy)) {
        // Nothing to build from: report it the way the graph builder does.
        Err(Error::EmptyInput) => Err(Error::EmptyGraph.into()),
        r => Ok(r?),
    }
}

fn load_graph(path: &Path) -> Result<DeBruijnGraph> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 4];
    let n = r.read(&mut magic)?;
    let mut head = std::io::Cursor::new(magic[..n].to_vec()).chain(r);
    if &magic[..n] == BINARY_MAGIC {
        Ok(read_binary(&mut head)?)
    } else {
        Ok(read_gfa(BufReader::new(head))?.0)
    }
}

/// Writes `<stem>.gfa` or `<stem>.dbg` and returns the file name.
fn save_graph(cfg: &RunConfig, g: &DeBruijnGraph, stem: &str, format: GraphFormat) -> Result<String> {
    let name = match format {
        GraphFormat::Gfa => format!("{stem}.gfa"),
        GraphFormat::Dbg1 => format!("{stem}.dbg"),
    };
    let mut w = create(cfg, &name)?;
    match format {
        GraphFormat::Gfa => write_gfa(g, &mut w, &[cfg.to_json()])?,
        GraphFormat::Dbg1 => write_binary(g, &mut w)?,
    }
    w.flush()?;
    Ok(name)
}

pub fn build(a: &BuildArgs) -> Result<Outcome> {
    let mut cfg = RunConfig::new("build", &a.out.out);
    cfg.set_inputs(&a.reads);
    cfg.k = Some(a.k);
    cfg.format = Some(a.format.name());
    let reads = load_reads(&a.reads, a.n_policy)?;
    let g = build_graph(&reads, a.k)?;
    start(&cfg)?;
    let file = save_graph(&cfg, &g, "graph", a.format)?;
    let stats = g.stats();
    write_json(
        &cfg,
        "stats.json",
        &json!({ "config": cfg, "graph": file, "stats": stats }),
    )?;
    println!(
        "{file}: {} vertices, {} arcs, gamma {}",
        stats.vertex_count, stats.arc_count, stats.gamma
    );
    Ok(Outcome::Complete)
}

pub fn compress(a: &CompressArgs) -> Result<Outcome> {
    let mut cfg = RunConfig::new("compress", &a.out.out);
    cfg.set_inputs(&[&a.graph]);
    cfg.format = Some(a.format.name());
    let g = load_graph(&a.graph)?;
    cfg.k = Some(g.k());
    let c = g.compress();
    start(&cfg)?;
    let file = save_graph(&cfg, &c, "compressed", a.format)?;
    let stats = c.stats();
    write_json(
        &cfg,
        "stats.json",
        &json!({ "config": cfg, "graph": file, "input": g.stats(), "stats": stats }),
    )?;
    println!("{file}: {} vertices, {} arcs", stats.vertex_count, stats.arc_count);
    Ok(Outcome::Complete)
}

pub fn simulate(a: &SimulateArgs) -> Result<Outcome> {
    let mut cfg = RunConfig::new("simulate", &a.out.out)
        .param("m", a.m)
        .param("n", a.n)
        .param("alpha", a.alpha);
    cfg.rng_seed = Some(a.seed);
    let family = generate_repeats(a.m, a.n, a.alpha, a.seed)?;
    start(&cfg)?;
    let mut w = create(&cfg, "family.fasta")?;
    family.write_fasta(&mut w)?;
    w.flush()?;
    write_fasta_record(
        &mut create(&cfg, "seed.fasta")?,
        "seed",
        family.seed_sequence.as_bytes(),
    )?;
    println!("family.fasta: {} copies of length {}", a.m, a.n);
    Ok(Outcome::Complete)
}

pub fn gamma(a: &GammaArgs) -> Result<Outcome> {
    let mut cfg = RunConfig::new("gamma-experiment", &a.out.out)
        .param("m", a.m)
        .param("n", a.n)
        .param("alpha", a.alpha)
        .param("trials", a.trials);
    cfg.k = Some(a.k);
    cfg.rng_seed = Some(a.seed);
    let report = gamma_experiment(&GammaExperiment {
        m: a.m,
        n: a.n,
        k: a.k,
        alpha: a.alpha,
        trials: a.trials,
        rng_seed: a.seed,
    })?;
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
    start(&cfg)?;
    write_json(&cfg, "report.json", &json!({ "config": cfg, "report": report }))?;

    let mut w = create(&cfg, "report.csv")?;
    writeln!(w, "# {}", cfg.to_json())?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record([
        "trial",
        "gamma_random",
        "gamma_model",
        "arcs_random",
        "arcs_model",
        "ratio",
    ])?;
    let ratio = |model: f64, random: f64| if random == 0.0 { 0.0 } else { model / random };
    for t in &report.trials {
        csv.write_record([
            t.trial.to_string(),
            t.gamma_random.to_string(),
            t.gamma_model.to_string(),
            t.arcs_random.to_string(),
            t.arcs_model.to_string(),
            ratio(t.gamma_model as f64, t.gamma_random as f64).to_string(),
        ])?;
    }
    csv.write_record([
        "mean".to_string(),
        report.mean_gamma_random.to_string(),
        report.mean_gamma_model.to_string(),
        String::new(),
        String::new(),
        report.ratio.to_string(),
    ])?;
    csv.flush()?;
    println!(
        "mean gamma: random {:.1}, model {:.1}, ratio {:.4} (collision-free {})",
        report.mean_gamma_random, report.mean_gamma_model, report.ratio, report.collision_free_gamma
    );
    Ok(Outcome::Complete)
}

fn graph_input(input: &GraphInput, cfg: &mut RunConfig) -> Result<DeBruijnGraph> {
    let g = match &input.graph {
        Some(path) => {
            cfg.set_inputs(&[path]);
            load_graph(path)?
        }
        None => {
            cfg.set_inputs(&input.reads);
            build_graph(&load_reads(&input.reads, input.n_policy)?, input.k)?
        }
    };
    cfg.k = Some(g.k());
    cfg.params.insert("compressed", (!input.raw).into());
    Ok(if input.raw { g } else { g.compress() })
}

fn vertex_arg(g: &DeBruijnGraph, name: usize, what: &str) -> Result<VertexId> {
    if name == 0 || name > g.vertex_count() {
        return Err(CliError::Usage(format!(
            "{what} {name} is not a segment name (graph has segments 1..={})",
            g.vertex_count()
        )));
    }
    Ok(name - 1)
}

fn sources(g: &DeBruijnGraph, query: &QueryArgs) -> Result<Vec<VertexId>> {
    match query.source {
        Some(s) => Ok(vec![vertex_arg(g, s, "source")?]),
        None => Ok((0..g.vertex_count())
            .filter(|&v| g.graph().out_degree(v) >= 2)
            .collect()),
    }
}

fn query_config(cfg: &mut RunConfig, g: &DeBruijnGraph, q: &QueryArgs, uncapped: bool) -> (u64, u64, usize) {
    let alpha2 = q.alpha2.unwrap_or(q.alpha1);
    let (a1, a2) = (q.alpha1.max(alpha2), q.alpha1.min(alpha2));
    let b = if uncapped {
        BubbleQuery::uncapped(g.graph())
    } else {
        q.b
    };
    cfg.alpha1 = Some(a1);
    cfg.alpha2 = Some(a2);
    cfg.b = Some(b);
    if let Some(s) = q.source {
        cfg.params.insert("source", s.into());
    }
    (a1, a2, b)
}

struct SourceRun {
    bubbles: Vec<(Bubble, Duration)>,
    report: EnumerationReport,
}

pub fn bubbles(a: &BubblesArgs) -> Result<Outcome> {
    let mut cfg = RunConfig::new("bubbles", &a.out.out);
    let g = graph_input(&a.input, &mut cfg)?;
    let (a1, a2, b) = query_config(&mut cfg, &g, &a.query, a.uncapped);
    let timeout = match a.timeout {
        Some(t) if !t.is_finite() || t < 0.0 => {
            return Err(CliError::Usage(format!(
                "--timeout must be a non-negative number of seconds, got {t}"
            )))
        }
        Some(t) => Some(Duration::from_secs_f64(t)),
        None => None,
    };
    cfg.timeout_secs = a.timeout;
    if let Some(n) = a.max_nodes {
        cfg.params.insert("max_nodes", n.into());
    }
    let sink = match a.sink {
        Some(t) => {
            cfg.params.insert("sink", t.into());
            Some(vertex_arg(&g, t, "sink")?)
        }
        None => None,
    };
    let limits = Limits {
        timeout,
        max_nodes: a.max_nodes,
    };
    let runs: Vec<SourceRun> = sources(&g, &a.query)?
        .par_iter()
        .map(|&s| {
            let began = Instant::now();
            let mut bubbles = Vec::new();
            let report = enumerate_bubbles(g.graph(), &BubbleQuery::new(s, a1, a2, b), sink, limits, |x| {
                bubbles.push((x, began.elapsed()))
            })?;
            Ok(SourceRun { bubbles, report })
        })
        .collect::<Result<_>>()?;

    start(&cfg)?;
    let mut fa = create(&cfg, "bubbles.fa")?;
    let mut jl = create(&cfg, "bubbles.jsonl")?;
    write_json_line(&mut jl, &cfg.header_record())?;
    let mut index = 0;
    let mut partial = 0;
    for run in &runs {
        for (bubble, at) in &run.bubbles {
            write_bubble_fasta(&mut fa, &g, index, bubble)?;
            write_json_line(&mut jl, &BubbleRecord::new(index, bubble, at.as_micros() as u64))?;
            index += 1;
        }
        write_json_line(&mut jl, &SourceSummary::from(&run.report))?;
        partial += !run.report.is_complete() as usize;
    }
    write_json_line(
        &mut jl,
        &json!({ "record": "summary", "sources": runs.len(), "bubbles": index, "partial_sources": partial }),
    )?;
    fa.flush()?;
    jl.flush()?;
    println!("bubbles: {index}, sources searched: {}", runs.len());
    if partial > 0 {
        eprintln!("enumeration stopped early at {partial} sources; results are partial");
        return Ok(Outcome::Partial);
    }
    Ok(Outcome::Complete)
}

pub fn oracle(a: &OracleArgs) -> Result<Outcome> {
    let mut cfg = RunConfig::new("oracle", &a.out.out);
    let g = graph_input(&a.input, &mut cfg)?;
    let (a1, a2, b) = query_config(&mut cfg, &g, &a.query, a.uncapped);
    let mut found = Vec::new();
    for s in sources(&g, &a.query)? {
        found.extend(oracle_enumerate(g.graph(), &BubbleQuery::new(s, a1, a2, b))?);
    }
    start(&cfg)?;
    let mut jl = create(&cfg, "oracle.jsonl")?;
    write_json_line(&mut jl, &cfg.header_record())?;
    for (i, bubble) in found.iter().enumerate() {
        write_json_line(&mut jl, &BubbleRecord::new(i, bubble, 0))?;
    }
    jl.flush()?;
    println!("bubbles: {}", found.len());
    Ok(Outcome::Complete)
}

pub fn planted(a: &PlantedArgs) -> Result<Outcome> {
    let mut cfg = RunConfig::new("planted-bubble", &a.out.out)
        .param("m", a.m)
        .param("n", a.n)
        .param("alpha", a.alpha)
        .param("upper_middle", a.upper_middle)
        .param("lower_middle", a.lower_middle);
    if let Some(h) = a.insert_at {
        cfg = cfg.param("insert_at", h);
    }
    cfg.k = Some(a.k);
    cfg.rng_seed = Some(a.seed);
    cfg.format = Some(a.format.name());
    let spec = BubbleSpec {
        upper_middle: a.upper_middle,
        lower_middle: a.lower_middle,
        insert_at: a.insert_at,
    };
    let trap = TrapSpec {
        m: a.m,
        n: a.n,
        alpha: a.alpha,
        k: a.k,
    };
    let inst = planted_bubble_graph(&spec, &trap, a.seed)?;
    start(&cfg)?;

    let mut w = create(&cfg, "reads.fasta")?;
    for (i, r) in inst.reads.iter().enumerate() {
        let header = match i {
            0 => "isoform_upper".to_string(),
            1 => "isoform_lower".to_string(),
            _ => format!("copy_{}", i),
        };
        write_fasta_record(&mut w, &header, r.as_bytes())?;
    }
    w.flush()?;
    let file = save_graph(&cfg, &inst.compressed, "graph", a.format)?;
    let p = &inst.planted;
    let names = |path: &[VertexId]| path.iter().map(|v| v + 1).collect::<Vec<_>>();
    write_json(
        &cfg,
        "planted.json",
        &json!({
            "config": cfg,
            "graph": file,
            "raw_vertices": inst.raw.vertex_count(),
            "stats": inst.compressed.stats(),
            "planted": {
                "source": p.source + 1,
                "sink": p.sink + 1,
                "upper": names(&p.upper),
                "lower": names(&p.lower),
                "upper_len": p.upper_len,
                "lower_len": p.lower_len,
                "upper_branching": p.upper_branching,
                "lower_branching": p.lower_branching,
                "upper_seq": String::from_utf8_lossy(&inst.upper_seq),
                "lower_seq": String::from_utf8_lossy(&inst.lower_seq),
            },
        }),
    )?;
    println!(
        "{file}: {} vertices; planted bubble {} -> {} with lengths {}/{} and branching {}/{}",
        inst.compressed.vertex_count(),
        p.source + 1,
        p.sink + 1,
        p.upper_len,
        p.lower_len,
        p.upper_branching,
        p.lower_branching
    );
    Ok(Outcome::Complete)
}
