use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Result};
use serde_json::{json, Value};

use ordshadow::blocks::{homogeneous_blocks, phi, type_of};
use ordshadow::families::NamedFamily;
use ordshadow::lattice::{extremal_sets, verify_line_lemma, CheckMode, LatticeSet};
use ordshadow::search::{self, Lemma, LemmaMode, ObsCalcQuery, SearchConfig};
use ordshadow::speed::{self, HereditaryProperty};
use ordshadow::{Error, GraphFamily, OrderedGraph};

use crate::args::{Command, Globals, LatticeCmd, Mode, SearchCmd, SpeedCmd, VerifyCmd};

pub const DEFAULT_TRIALS: usize = 1000;
pub const DEFAULT_SEED: u64 = 0;

/// Files read by a command, with their contents.
#[derive(Default)]
pub struct Inputs {
    pub read: BTreeMap<String, Vec<u8>>,
}

impl Inputs {
    fn text(&mut self, path: &Path) -> Result<String> {
        let bytes = fs::read(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| input_error(format!("{} is not UTF-8", path.display())))?;
        self.read.insert(path.display().to_string(), bytes);
        Ok(text)
    }
}

pub(crate) fn input_error(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Error::InvalidInput(msg.into()))
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| input_error(format!("this command needs --{flag}")))
}

fn config(g: &Globals) -> SearchConfig {
    SearchConfig {
        budget: g.budget.unwrap_or(search::DEFAULT_BUDGET),
        threads: g.threads,
    }
}

fn lemma_mode(g: &Globals) -> LemmaMode {
    match g.mode.unwrap_or(Mode::Exhaustive) {
        Mode::Exhaustive => LemmaMode::Exhaustive,
        Mode::Random => LemmaMode::Random {
            trials: g.trials.unwrap_or(DEFAULT_TRIALS),
            seed: g.seed.unwrap_or(DEFAULT_SEED),
        },
    }
}

fn to_value<T: serde::Serialize>(report: &T) -> Value {
    serde_json::to_value(report).expect("reports serialize")
}

pub fn execute(command: &Command, g: &Globals, inputs: &mut Inputs) -> Result<Value> {
    match command {
        Command::Shadow => shadow(g, inputs),
        Command::Blocks => blocks(g),
        Command::Lattice(cmd) => lattice(cmd, g, inputs),
        Command::Verify(cmd) => verify(cmd, g),
        Command::Search(cmd) => search_cmd(cmd, g),
        Command::Speed(cmd) => speed_cmd(cmd, g, inputs),
        Command::Report(_) => unreachable!("replay is dispatched by the caller"),
    }
}

fn parse_graph(literal: &str) -> Result<OrderedGraph> {
    Ok(literal.trim().parse::<OrderedGraph>()?)
}

/// The family named by `--graph` (comma-separated literals), `--input`, or
/// `--name` with `--n`.
fn family_arg(g: &Globals, inputs: &mut Inputs) -> Result<GraphFamily> {
    if let Some(list) = &g.graph {
        let graphs = list.split(',').map(parse_graph).collect::<Result<Vec<_>>>()?;
        let n = graphs[0].n();
        return Ok(GraphFamily::new(n, graphs)?);
    }
    if let Some(path) = &g.input {
        return Ok(GraphFamily::parse(&inputs.text(path)?)?);
    }
    if let Some(name) = &g.name {
        return Ok(search::named_family(name, need(g.n, "n")?, g.k)?);
    }
    Err(input_error("give a family with --graph, --input or --name"))
}

fn shadow(g: &Globals, inputs: &mut Inputs) -> Result<Value> {
    let family = family_arg(g, inputs)?;
    let shadow = family.shadow()?;
    Ok(json!({
        "schema": 1,
        "report": "shadow",
        "n": family.n(),
        "family_size": family.len(),
        "shadow_size": shadow.len(),
        "family": family,
        "shadow": shadow,
    }))
}

fn blocks(g: &Globals) -> Result<Value> {
    let graph = parse_graph(&need(g.graph.clone(), "graph")?)?;
    let blocks = homogeneous_blocks(&graph)?;
    let sizes: Vec<usize> = blocks.sizes().collect();
    Ok(json!({
        "schema": 1,
        "report": "blocks",
        "graph": graph,
        "n": graph.n(),
        "blocks": blocks,
        "block_sizes": sizes,
        "type": type_of(&graph)?,
        "excess": blocks.excess(),
        "phi": phi(&graph).ok(),
    }))
}

fn lattice_summary(set: &LatticeSet) -> Result<Value> {
    let shadow = set.shadow()?;
    Ok(json!({
        "size": set.len(),
        "shadow_size": shadow.len(),
        "line": set.find_line(),
        "set": set,
    }))
}

fn lattice(cmd: &LatticeCmd, g: &Globals, inputs: &mut Inputs) -> Result<Value> {
    match cmd {
        LatticeCmd::VerifyLineLemma => {
            let mode = match g.mode.unwrap_or(Mode::Exhaustive) {
                Mode::Exhaustive => CheckMode::Exhaustive,
                Mode::Random => CheckMode::Randomized {
                    trials: g.trials.unwrap_or(DEFAULT_TRIALS) as u64,
                    seed: g.seed.unwrap_or(DEFAULT_SEED),
                },
            };
            let report = verify_line_lemma(need(g.d, "d")?, need(g.n, "n")?, mode, g.threads)?;
            Ok(to_value(&report))
        }
        LatticeCmd::Shadow => {
            let path = need(g.input.clone(), "input")?;
            let set: LatticeSet = serde_json::from_str(&inputs.text(&path)?)
                .map_err(|e| anyhow!(Error::Parse(e.to_string())))?;
            let mut out = lattice_summary(&set)?;
            out["schema"] = json!(1);
            out["report"] = json!("lattice-shadow");
            out["d"] = json!(set.d());
            out["n"] = json!(set.n());
            out["shadow"] = json!(set.shadow()?);
            Ok(out)
        }
        LatticeCmd::Extremal => {
            let n = need(g.n, "n")?;
            let (a, b) = extremal_sets(n)?;
            Ok(json!({
                "schema": 1,
                "report": "lattice-extremal",
                "d": 3,
                "n": n,
                "sets": [lattice_summary(&a)?, lattice_summary(&b)?],
            }))
        }
    }
}

fn verify(cmd: &VerifyCmd, g: &Globals) -> Result<Value> {
    let cfg = config(g);
    let report = match cmd {
        VerifyCmd::Theorem1 => {
            let n = need(g.n, "n")?;
            search::verify_shadow_theorem(n, g.max_size.unwrap_or(n.saturating_sub(1)), &cfg)?
        }
        VerifyCmd::Gline => search::verify_gline(need(g.n, "n")?, need(g.max_size, "max-size")?, &cfg)?,
        VerifyCmd::TwoMT => search::verify_2mt(need(g.n, "n")?, &cfg)?,
        VerifyCmd::Difftypes => {
            search::verify_difftypes(need(g.n, "n")?, g.t.unwrap_or(3), g.m.unwrap_or(2), lemma_mode(g), &cfg)?
        }
        VerifyCmd::Allcliques => match lemma_mode(g) {
            LemmaMode::Exhaustive => search::run_lemma(Lemma::Allcliques, need(g.n, "n")?, LemmaMode::Exhaustive, &cfg)?,
            LemmaMode::Random { trials, seed } => search::verify_allcliques(need(g.n, "n")?, trials, seed)?,
        },
        VerifyCmd::ObsCalc => {
            let q = ObsCalcQuery {
                m: g.m.map(|v| v as u64),
                n: g.n.map(|v| v as u64),
                t: g.t.map(|v| v as u64),
                ..ObsCalcQuery::default()
            };
            search::check_obs_calc(&q)?
        }
        VerifyCmd::Lemma => {
            let lemma: Lemma = need(g.name.clone(), "name")?.parse()?;
            search::run_lemma(lemma, need(g.n, "n")?, lemma_mode(g), &cfg)?
        }
    };
    Ok(to_value(&report))
}

fn search_cmd(cmd: &SearchCmd, g: &Globals) -> Result<Value> {
    let cfg = config(g);
    let report = match cmd {
        SearchCmd::MinShadow => search::min_shadow(need(g.n, "n")?, need(g.t, "t")?, &cfg)?,
        SearchCmd::Question51 => search::question_5_1(need(g.n, "n")?, &cfg)?,
        SearchCmd::ConjectureK => {
            let k = need(g.k, "k")?;
            let f = g.f.unwrap_or_else(|| search::default_f(k));
            search::verify_conjecture_generalk(need(g.n, "n")?, k, f, &cfg)?
        }
    };
    Ok(to_value(&report))
}

/// Graphs of possibly different sizes, one literal per line or as a family
/// JSON file, grouped by vertex count.
fn graph_list(text: &str) -> Result<Vec<GraphFamily>> {
    if text.trim_start().starts_with('{') {
        return Ok(vec![GraphFamily::parse(text)?]);
    }
    let mut by_n: BTreeMap<usize, Vec<OrderedGraph>> = BTreeMap::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if !line.is_empty() {
            let g = parse_graph(line)?;
            by_n.entry(g.n()).or_default().push(g);
        }
    }
    if by_n.is_empty() {
        bail!(Error::Parse("no graphs listed".into()));
    }
    by_n.into_iter().map(|(n, gs)| Ok(GraphFamily::new(n, gs)?)).collect()
}

fn property_arg(g: &Globals, inputs: &mut Inputs) -> Result<HereditaryProperty> {
    if let Some(path) = &g.input {
        let text = inputs.text(path)?;
        if g.forbidden {
            return Ok(speed::from_forbidden(&graph_list(&text)?, need(g.n, "n")?)?);
        }
        return Ok(HereditaryProperty::from_json(&text)?);
    }
    if let Some(name) = &g.name {
        return Ok(speed::named_property(NamedFamily::parse(name, g.k)?, need(g.n, "n")?)?);
    }
    Err(input_error("give a property with --input or --name"))
}

fn speed_cmd(cmd: &SpeedCmd, g: &Globals, inputs: &mut Inputs) -> Result<Value> {
    let report = match cmd {
        SpeedCmd::Compute => speed::speed_sequence(&property_arg(g, inputs)?)?,
        SpeedCmd::Named => {
            let family = NamedFamily::parse(&need(g.name.clone(), "name")?, g.k)?;
            speed::speed_sequence(&speed::named_property(family, need(g.n, "n")?)?)?
        }
        SpeedCmd::Closure => {
            let path = need(g.input.clone(), "input")?;
            let generators = graph_list(&inputs.text(&path)?)?;
            speed::speed_sequence(&speed::closure(&generators, need(g.n, "n")?)?)?
        }
        SpeedCmd::CheckTheorem2 => {
            // --k here is the level to test from, not a family parameter,
            // unless a parametrised name is given.
            let property = property_arg(g, inputs)?;
            let top = property.last_level().unwrap_or(0);
            match (&g.name, g.k) {
                (None, Some(k)) => speed::verify_theorem_hered(&property, k)?,
                _ => speed::verify_theorem_hered_all(&property, top.min(search::FAMILY_SEARCH_MAX_N))?,
            }
        }
    };
    Ok(to_value(&report))
}
