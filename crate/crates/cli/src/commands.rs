use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{anyhow, bail, Context};
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

use todolens_core::classify::bridge::BridgeHandle;
use todolens_core::classify::dataset::load_dataset;
use todolens_core::classify::eval::{crossvalidate, CrossValidation};
use todolens_core::classify::lexical::{Hyperparams, LexicalClassifier};
use todolens_core::classify::rules::RuleConfig;
use todolens_core::classify::{Classifier, PosClassifier, RuleClassifier, Target};
use todolens_core::jsonl::{read_jsonl, to_jsonl_string};
use todolens_core::lifecycle::{compute_metrics, label_removals, match_pairs, CommitGraph, GroupBy, Overrides, TodoRecord};
use todolens_core::miner::{default_repo_id, mine_repository, walk_history, CommitRecord, EventKind, TodoEvent};
use todolens_core::normalize::{normalize_diff, normalize_todo};
use todolens_core::report::{aggregate_distribution, emit_report, metrics_csv, Format, Report, RunManifest, VerdictRecord};
use todolens_core::stats::{cohen_kappa, fleiss_kappa, test_hypotheses};

use crate::config::Config;

pub const BRIDGE_ENV: &str = "TODOLENS_BRIDGE_CMD";

/// A flag problem the user can fix on the command line (exit code 1).
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

pub struct Ctx {
    pub config: Config,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Pos,
    Rules,
    Lexical,
    Bridge,
}

impl Model {
    fn name(self) -> &'static str {
        match self {
            Model::Pos => "pos",
            Model::Rules => "rules",
            Model::Lexical => "lexical",
            Model::Bridge => "bridge",
        }
    }

    fn resolve(flag: Option<Model>, config: &Config) -> anyhow::Result<Model> {
        match flag {
            Some(m) => Ok(m),
            None => Model::from_str(&config.classifier.model, true).map_err(|_| usage(format!("unknown model {:?} in config", config.classifier.model))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KappaMode {
    Cohen,
    Fleiss,
}

// ---- shared plumbing ----

fn read_input(path: Option<&Path>) -> anyhow::Result<(String, Vec<u8>)> {
    match path {
        Some(p) if p != Path::new("-") => {
            let bytes = std::fs::read(p).with_context(|| format!("reading {}", p.display()))?;
            Ok((p.display().to_string(), bytes))
        }
        _ => {
            let mut bytes = Vec::new();
            std::io::stdin().read_to_end(&mut bytes).context("reading standard input")?;
            Ok(("<stdin>".into(), bytes))
        }
    }
}

fn parse_jsonl<T: DeserializeOwned>(name: &str, bytes: &[u8]) -> anyhow::Result<Vec<T>> {
    Ok(read_jsonl(bytes, name)?)
}

/// Writes `body` to `out` (plus its manifest) or to stdout.
fn write_output(out: Option<&Path>, body: &[u8], manifest: &mut RunManifest) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
            manifest.add_output(path)?;
            let mpath = RunManifest::path_for(path);
            manifest.write(&mpath).with_context(|| format!("writing {}", mpath.display()))?;
        }
        None => std::io::stdout().lock().write_all(body)?,
    }
    Ok(())
}

fn json_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).unwrap_or(serde_json::Value::Null)
}

fn pretty_json<T: Serialize>(v: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// `ID=PATH` or a bare path, whose directory name becomes the id.
fn parse_repo_arg(arg: &str) -> (String, PathBuf) {
    if let Some((id, path)) = arg.split_once('=') {
        if !id.is_empty() && !id.contains(['/', '\\']) {
            return (id.to_string(), PathBuf::from(path));
        }
    }
    let path = PathBuf::from(arg);
    (default_repo_id(&path), path)
}

fn repo_map(args: &[String]) -> anyhow::Result<BTreeMap<String, PathBuf>> {
    let mut out = BTreeMap::new();
    for a in args {
        let (id, path) = parse_repo_arg(a);
        if out.insert(id.clone(), path).is_some() {
            return Err(usage(format!("repository id {id:?} given twice")));
        }
    }
    Ok(out)
}

fn head_id(commits: &[CommitRecord]) -> String {
    // HEAD descends from every other reachable commit, so it sorts last
    commits.last().map_or_else(|| "empty".to_string(), |c| c.commit_id.clone())
}

fn bridge_command(flag: Option<&str>, config: &Config) -> Option<String> {
    std::env::var(BRIDGE_ENV)
        .ok()
        .filter(|s| !s.trim().is_empty())
        .or_else(|| flag.map(str::to_string))
        .or_else(|| config.classifier.bridge_cmd.clone())
}

fn hyperparams(ctx: &Ctx) -> Hyperparams {
    let mut hp = ctx.config.classifier.lexical.clone();
    if let Some(s) = ctx.seed {
        hp.seed = s;
    }
    hp
}

// ---- mine ----

#[derive(Debug, Args)]
pub struct MineArgs {
    /// Repositories to mine; `ID=PATH` sets the repository id
    #[arg(required = true)]
    repos: Vec<String>,

    /// Event JSONL destination (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Repository id for a single repository (default: its directory name)
    #[arg(long)]
    repo_id: Option<String>,
}

pub fn mine(ctx: &Ctx, args: MineArgs) -> anyhow::Result<()> {
    let mut repos = Vec::new();
    match (&args.repo_id, args.repos.as_slice()) {
        (Some(id), [one]) => repos.push((args.repos[0].clone(), id.clone(), PathBuf::from(one))),
        (Some(_), _) => return Err(usage("--repo-id only applies when mining a single repository")),
        (None, _) => {
            let ids = repo_map(&args.repos)?;
            for a in &args.repos {
                let (id, path) = parse_repo_arg(a);
                debug_assert!(ids.contains_key(&id));
                repos.push((a.clone(), id, path));
            }
        }
    }
    let cfg = &ctx.config.mining;
    let mined: Vec<_> = repos
        .par_iter()
        .map(|(_, id, path)| mine_repository(path, id, cfg).with_context(|| format!("mining {}", path.display())))
        .collect::<anyhow::Result<_>>()?;

    let mut manifest = RunManifest::new("mine", json_value(&ctx.config.mining));
    let mut events: Vec<&TodoEvent> = Vec::new();
    for ((arg, _, _), m) in repos.iter().zip(&mined) {
        eprintln!("{}: {}", m.repo_id, m.diagnostics);
        manifest.add_input_digest(arg, &head_id(&m.commits));
        events.extend(&m.events);
    }
    write_output(args.out.as_deref(), to_jsonl_string(&events).as_bytes(), &mut manifest)
}

// ---- classify ----

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Classifier to use (default from config, else pos)
    #[arg(long, value_enum)]
    model: Option<Model>,

    /// Trained lexical model (from `train`)
    #[arg(long)]
    model_file: Option<PathBuf>,

    /// Command that speaks the bridge protocol; TODOLENS_BRIDGE_CMD wins
    #[arg(long)]
    bridge_cmd: Option<String>,

    /// Event JSONL from `mine` (default: stdin)
    #[arg(long)]
    input: Option<PathBuf>,

    /// Verdict JSONL destination (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Repository to read commit diffs from, `ID=PATH` or a path; repeatable
    #[arg(long = "repo")]
    repos: Vec<String>,
}

fn build_classifier(ctx: &Ctx, model: Model, model_file: Option<&Path>, bridge_flag: Option<&str>, trained: bool) -> anyhow::Result<Box<dyn Classifier>> {
    Ok(match model {
        Model::Pos => Box::new(PosClassifier),
        Model::Rules => Box::new(RuleClassifier {
            config: RuleConfig {
                min_content_tokens: ctx.config.classifier.min_content_tokens,
            },
        }),
        Model::Lexical if trained => {
            let path = model_file.ok_or_else(|| usage("--model lexical needs --model-file"))?;
            Box::new(LexicalClassifier::load(path).with_context(|| format!("loading {}", path.display()))?)
        }
        Model::Lexical => Box::new(LexicalClassifier::untrained(hyperparams(ctx))),
        Model::Bridge => {
            let cmd = bridge_command(bridge_flag, &ctx.config).ok_or_else(|| usage(format!("--model bridge needs --bridge-cmd or {BRIDGE_ENV}")))?;
            let timeout = Duration::from_secs(ctx.config.classifier.bridge_timeout_secs);
            Box::new(BridgeHandle::spawn(&cmd, timeout).with_context(|| format!("starting bridge {cmd:?}"))?)
        }
    })
}

pub fn classify(ctx: &Ctx, args: ClassifyArgs) -> anyhow::Result<()> {
    let model = Model::resolve(args.model, &ctx.config)?;
    let repos = repo_map(&args.repos)?;
    let (name, bytes) = read_input(args.input.as_deref())?;
    let events: Vec<TodoEvent> = parse_jsonl(&name, &bytes)?;
    let mut clf = build_classifier(ctx, model, args.model_file.as_deref(), args.bridge_cmd.as_deref(), true)?;

    let mut manifest = RunManifest::new(
        "classify",
        serde_json::json!({ "model": model.name(), "classifier": json_value(&ctx.config.classifier) }),
    );
    manifest.add_input_bytes(&name, &bytes);
    if let Some(p) = &args.model_file {
        manifest.add_input_bytes(&p.display().to_string(), &std::fs::read(p)?);
    }

    let histories: BTreeMap<&str, Vec<CommitRecord>> = repos
        .par_iter()
        .map(|(id, path)| Ok((id.as_str(), walk_history(path, &ctx.config.mining).with_context(|| format!("reading {}", path.display()))?)))
        .collect::<anyhow::Result<_>>()?;
    let by_commit: HashMap<(&str, &str), &CommitRecord> = histories
        .iter()
        .flat_map(|(id, cs)| cs.iter().map(move |c| ((*id, c.commit_id.as_str()), c)))
        .collect();
    for (id, cs) in &histories {
        manifest.add_input_digest(&repos[*id].display().to_string(), &head_id(cs));
    }

    let mut out = Vec::new();
    for ev in events.iter().filter(|e| e.kind == EventKind::Introduced) {
        let todo = normalize_todo(&ev.raw_comment);
        let diff = by_commit
            .get(&(ev.repo_id.as_str(), ev.commit_id.as_str()))
            .and_then(|c| c.file_for(EventKind::Introduced, &ev.file_path))
            .map(|fd| normalize_diff(&fd.to_unified()));
        let verdict = clf
            .classify(&todo, diff.as_ref())
            .with_context(|| format!("classifying {}:{}:{} in {}", ev.file_path, ev.line_no, ev.commit_id, ev.repo_id))?;
        out.push(VerdictRecord::new(ev, verdict));
    }
    write_output(args.out.as_deref(), to_jsonl_string(&out).as_bytes(), &mut manifest)
}

// ---- lifecycle ----

#[derive(Debug, Args)]
pub struct LifecycleArgs {
    /// Event JSONL from `mine`
    #[arg(long)]
    events: PathBuf,

    /// Verdict JSONL from `classify`
    #[arg(long)]
    verdicts: Option<PathBuf>,

    /// Repository the events came from, `ID=PATH` or a path; repeatable
    #[arg(long = "repo", required = true)]
    repos: Vec<String>,

    /// CSV of manual removal judgments (commit_id,file_path,line_no,status)
    #[arg(long)]
    overrides: Option<PathBuf>,

    /// Record JSONL destination (default: stdout)
    #[arg(long)]
    out_records: Option<PathBuf>,

    /// Metrics CSV destination
    #[arg(long)]
    out_metrics: Option<PathBuf>,

    /// One block of metric rows per repository
    #[arg(long)]
    by_repo: bool,
}

fn records_for(repo: &str, path: &Path, events: &[TodoEvent], overrides: &Overrides, ctx: &Ctx) -> anyhow::Result<(Vec<TodoRecord>, String)> {
    let commits = walk_history(path, &ctx.config.mining).with_context(|| format!("reading {}", path.display()))?;
    let graph = CommitGraph::from_commits(&commits)?;
    let (intro, elim): (Vec<TodoEvent>, Vec<TodoEvent>) = events.iter().cloned().partition(|e| e.kind == EventKind::Introduced);
    let mut records = match_pairs(&intro, &elim, &graph).with_context(|| format!("matching events of {repo}"))?;
    label_removals(&mut records, &commits, overrides)?;
    Ok((records, head_id(&commits)))
}

pub fn lifecycle(ctx: &Ctx, args: LifecycleArgs) -> anyhow::Result<()> {
    let repos = repo_map(&args.repos)?;
    let mut manifest = RunManifest::new("lifecycle", json_value(&ctx.config));
    let (name, bytes) = read_input(Some(&args.events))?;
    let events: Vec<TodoEvent> = parse_jsonl(&name, &bytes)?;
    manifest.add_input_bytes(&name, &bytes);

    let overrides_path = args.overrides.clone().or_else(|| ctx.config.lifecycle.overrides.clone());
    let overrides = match &overrides_path {
        Some(p) => {
            manifest.add_input_bytes(&p.display().to_string(), &std::fs::read(p).with_context(|| format!("reading {}", p.display()))?);
            Overrides::load(p)?
        }
        None => Overrides::default(),
    };

    let mut verdicts = HashMap::new();
    if let Some(p) = &args.verdicts {
        let (vname, vbytes) = read_input(Some(p))?;
        manifest.add_input_bytes(&vname, &vbytes);
        for v in parse_jsonl::<VerdictRecord>(&vname, &vbytes)? {
            let key = (v.repo_id.clone(), v.commit_id.clone(), v.file_path.clone(), v.line_no);
            verdicts.insert(key, v.verdict);
        }
    }

    let mut by_repo: BTreeMap<&str, Vec<TodoEvent>> = BTreeMap::new();
    for e in &events {
        by_repo.entry(e.repo_id.as_str()).or_default().push(e.clone());
    }
    for id in by_repo.keys() {
        if !repos.contains_key(*id) {
            bail!("events mention repository {id:?} but no --repo was given for it");
        }
    }
    let per_repo: Vec<(Vec<TodoRecord>, String)> = by_repo
        .par_iter()
        .map(|(id, evs)| records_for(id, &repos[*id], evs, &overrides, ctx))
        .collect::<anyhow::Result<_>>()?;

    let mut records = Vec::new();
    for ((id, _), (recs, head)) in by_repo.iter().zip(per_repo) {
        manifest.add_input_digest(&repos[*id].display().to_string(), &head);
        records.extend(recs);
    }
    for r in &mut records {
        let key = (r.intro.repo_id.clone(), r.intro.commit_id.clone(), r.intro.file_path.clone(), r.intro.line_no);
        r.verdict = verdicts.get(&key).cloned();
    }

    if let Some(p) = &args.out_metrics {
        let group = if args.by_repo { GroupBy::Repository } else { GroupBy::Category };
        let csv = metrics_csv(&compute_metrics(&records, group))?;
        let mut m = manifest.clone();
        write_output(Some(p), csv.as_bytes(), &mut m)?;
    }
    write_output(args.out_records.as_deref(), to_jsonl_string(&records).as_bytes(), &mut manifest)
}

// ---- stats ----

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Record JSONL from `lifecycle`
    #[arg(long, conflicts_with = "kappa")]
    records: Option<PathBuf>,

    /// Family-wise significance level
    #[arg(long)]
    alpha: Option<f64>,

    /// Compute rater agreement instead of hypothesis tests
    #[arg(long, value_enum, requires = "ratings")]
    kappa: Option<KappaMode>,

    /// CSV with a header row; cohen: one label column per rater,
    /// fleiss: one count column per category
    #[arg(long)]
    ratings: Option<PathBuf>,

    /// JSON destination (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn alpha(flag: Option<f64>, ctx: &Ctx) -> anyhow::Result<f64> {
    let a = flag.unwrap_or(ctx.config.report.alpha);
    if !(a > 0.0 && a < 1.0) {
        return Err(usage(format!("alpha must lie in (0, 1), got {a}")));
    }
    Ok(a)
}

fn kappa_from_csv(mode: KappaMode, bytes: &[u8]) -> anyhow::Result<(usize, f64)> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(bytes);
    let rows: Vec<csv::StringRecord> = rdr.records().collect::<Result<_, _>>()?;
    match mode {
        KappaMode::Cohen => {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for (i, r) in rows.iter().enumerate() {
                if r.len() != 2 {
                    bail!("line {}: expected two rater columns, found {}", i + 2, r.len());
                }
                a.push(r[0].to_string());
                b.push(r[1].to_string());
            }
            Ok((a.len(), cohen_kappa(&a, &b)?))
        }
        KappaMode::Fleiss => {
            let counts = rows
                .iter()
                .enumerate()
                .map(|(i, r)| r.iter().map(|c| c.parse::<usize>().map_err(|e| anyhow!("line {}: {e}", i + 2))).collect())
                .collect::<anyhow::Result<Vec<Vec<usize>>>>()?;
            Ok((counts.len(), fleiss_kappa(&counts)?))
        }
    }
}

pub fn stats(ctx: &Ctx, args: StatsArgs) -> anyhow::Result<()> {
    let alpha = alpha(args.alpha, ctx)?;
    let mut manifest = RunManifest::new("stats", serde_json::json!({ "alpha": alpha }));
    let body = match (&args.records, args.kappa) {
        (_, Some(mode)) => {
            let path = args.ratings.as_deref().ok_or_else(|| usage("--kappa needs --ratings"))?;
            let (name, bytes) = read_input(Some(path))?;
            manifest.add_input_bytes(&name, &bytes);
            let (items, kappa) = kappa_from_csv(mode, &bytes).with_context(|| name.clone())?;
            let mode = if mode == KappaMode::Cohen { "cohen" } else { "fleiss" };
            pretty_json(&serde_json::json!({ "mode": mode, "items": items, "kappa": kappa }))?
        }
        (Some(path), None) => {
            let (name, bytes) = read_input(Some(path))?;
            manifest.add_input_bytes(&name, &bytes);
            let records: Vec<TodoRecord> = parse_jsonl(&name, &bytes)?;
            pretty_json(&test_hypotheses(&records, alpha)?)?
        }
        (None, None) => return Err(usage("stats needs --records or --kappa")),
    };
    write_output(args.out.as_deref(), body.as_bytes(), &mut manifest)
}

// ---- report ----

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Verdict JSONL from `classify` (read from stdin when no input is named)
    #[arg(long)]
    verdicts: Option<PathBuf>,

    /// Record JSONL from `lifecycle`
    #[arg(long)]
    records: Option<PathBuf>,

    /// Cross-validation JSON from `train --cv`
    #[arg(long)]
    evaluation: Option<PathBuf>,

    /// csv, json or markdown (default from config, else csv)
    #[arg(long)]
    format: Option<String>,

    /// Family-wise significance level for the hypothesis tests
    #[arg(long)]
    alpha: Option<f64>,

    #[arg(long, default_value = "report")]
    out_dir: PathBuf,
}

pub fn report(ctx: &Ctx, args: ReportArgs) -> anyhow::Result<()> {
    let format: Format = args
        .format
        .as_deref()
        .unwrap_or(&ctx.config.report.format)
        .parse()
        .map_err(|e: todolens_core::report::ReportError| usage(e.to_string()))?;
    let alpha = alpha(args.alpha, ctx)?;
    let mut manifest = RunManifest::new("report", serde_json::json!({ "format": format!("{format:?}").to_lowercase(), "alpha": alpha }));
    let mut report = Report::default();

    let verdicts_src = if args.verdicts.is_none() && args.records.is_none() && args.evaluation.is_none() {
        Some(None)
    } else {
        args.verdicts.as_deref().map(Some)
    };
    if let Some(src) = verdicts_src {
        let (name, bytes) = read_input(src)?;
        manifest.add_input_bytes(&name, &bytes);
        let verdicts: Vec<VerdictRecord> = parse_jsonl(&name, &bytes)?;
        if !verdicts.is_empty() {
            report.distribution = Some(aggregate_distribution(verdicts.iter().map(|v| (v.repo_id.as_str(), &v.verdict)))?);
        }
    }
    if let Some(p) = &args.records {
        let (name, bytes) = read_input(Some(p))?;
        manifest.add_input_bytes(&name, &bytes);
        let records: Vec<TodoRecord> = parse_jsonl(&name, &bytes)?;
        if !records.is_empty() {
            report.metrics = Some(compute_metrics(&records, GroupBy::Category));
            report.stats = Some(test_hypotheses(&records, alpha)?);
        }
    }
    if let Some(p) = &args.evaluation {
        let (name, bytes) = read_input(Some(p))?;
        manifest.add_input_bytes(&name, &bytes);
        let runs: Vec<CrossValidation> = serde_json::from_slice(&bytes).with_context(|| name.clone())?;
        if !runs.is_empty() {
            report.evaluation = Some(runs);
        }
    }
    if report.is_empty() {
        bail!("nothing to report: every input was empty");
    }

    let written = emit_report(&report, format, &args.out_dir)?;
    for p in &written {
        manifest.add_output(p)?;
    }
    manifest.write(&args.out_dir.join("manifest.json"))?;
    for p in written {
        eprintln!("wrote {}", p.display());
    }
    Ok(())
}

// ---- train ----

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Labeled dataset JSONL
    #[arg(long)]
    dataset: PathBuf,

    /// Where to save the trained lexical model
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "lexical")]
    model: Model,

    #[arg(long)]
    epochs: Option<usize>,

    #[arg(long)]
    learning_rate: Option<f64>,

    #[arg(long)]
    l2: Option<f64>,

    /// Run k-fold cross-validation for both targets
    #[arg(long)]
    cv: Option<usize>,

    /// Cross-validation JSON destination (default: stdout)
    #[arg(long)]
    cv_out: Option<PathBuf>,

    #[arg(long)]
    bridge_cmd: Option<String>,
}

pub fn train(ctx: &Ctx, args: TrainArgs) -> anyhow::Result<()> {
    let mut hp = hyperparams(ctx);
    if let Some(e) = args.epochs {
        hp.epochs = e;
    }
    if let Some(lr) = args.learning_rate {
        hp.learning_rate = lr;
    }
    if let Some(l2) = args.l2 {
        hp.l2 = l2;
    }
    hp.validate().map_err(|e| usage(e.to_string()))?;
    if args.out.is_some() && args.model != Model::Lexical {
        return Err(usage("--out saves a lexical model; other models have nothing to train"));
    }
    if args.out.is_none() && args.cv.is_none() {
        return Err(usage("train needs --out, --cv or both"));
    }

    let dataset = load_dataset(&args.dataset)?;
    let mut manifest = RunManifest::new("train", serde_json::json!({ "model": args.model.name(), "hyperparams": json_value(&hp) }));
    manifest.add_input_bytes(&args.dataset.display().to_string(), &std::fs::read(&args.dataset)?);
    manifest.seeds.insert("init".into(), hp.seed);

    if let Some(path) = &args.out {
        let model = LexicalClassifier::train(&dataset, &hp)?;
        for m in [&model.form, &model.quality].into_iter().flatten() {
            eprintln!("{:?} loss {:.6}", m.target, m.final_loss);
        }
        let mut m = manifest.clone();
        write_output(Some(path), model.to_json().as_bytes(), &mut m)?;
    }
    if let Some(k) = args.cv {
        let mut clf = build_classifier(ctx, args.model, None, args.bridge_cmd.as_deref(), false)?;
        if args.model == Model::Lexical {
            clf = Box::new(LexicalClassifier::untrained(hp.clone()));
        }
        manifest.seeds.insert("folds".into(), hp.seed);
        let runs = [Target::Form, Target::Quality]
            .into_iter()
            .map(|t| crossvalidate(&dataset, k, clf.as_mut(), t, hp.seed))
            .collect::<Result<Vec<_>, _>>()?;
        write_output(args.cv_out.as_deref(), pretty_json(&runs)?.as_bytes(), &mut manifest)?;
    }
    Ok(())
}
