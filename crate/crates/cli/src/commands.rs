//! The subcommands as functions from parsed inputs to output text.

use std::fmt::Write;

use crowdtrust_core::methods::{run_method, MethodOptions, MethodRun};
use crowdtrust_core::modelsel::{loocv_select_for, CvConfig, LambdaGrid};
use crowdtrust_core::optim::Penalty;
use crowdtrust_core::simulate::{exam_like_scenario, generate, trec_like_scenario, CrowdScenario};
use crowdtrust_core::{split_queries, AnswerKey, Error as CoreError, LabelId, MethodTag, Split};

use crate::dataset::Dataset;
use crate::error::{CliError, Result};
use crate::report::{num, opt_num, Table};
use crate::scenario::parse_scenario;

/// Where `simulate` gets its crowd from.
#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioSource {
    Preset(String),
    /// Contents of a scenario file.
    File(String),
}

pub const PRESETS: [&str; 2] = ["trec-like", "exam-like"];

pub fn scenario_for(source: &ScenarioSource, seed: u64) -> Result<CrowdScenario> {
    match source {
        ScenarioSource::Preset(name) if name == "trec-like" => Ok(trec_like_scenario(seed)),
        ScenarioSource::Preset(name) if name == "exam-like" => Ok(exam_like_scenario(seed)),
        ScenarioSource::Preset(name) => {
            Err(CliError::Usage(format!("unknown preset `{name}`; expected one of {}", PRESETS.join(", "))))
        }
        ScenarioSource::File(text) => parse_scenario(text, seed),
    }
}

/// Generates a crowd and returns it with its full answer key.
pub fn cmd_simulate(source: &ScenarioSource, seed: u64) -> Result<Dataset> {
    let scenario = scenario_for(source, seed)?;
    let (matrix, key) = generate(&scenario).map_err(|e| CliError::Config(e.to_string()))?;
    Ok(Dataset::from_generated(matrix, key))
}

/// Options shared by `fuse`, `compare` and `cv`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOptions {
    pub train_count: Option<usize>,
    /// Explicit training query ids; overrides `train_count`.
    pub train_ids: Option<Vec<String>>,
    pub seed: u64,
    pub lambda: Option<f64>,
    pub eta: Option<f64>,
    pub grid: Option<Vec<f64>>,
}

impl RunOptions {
    fn grid(&self) -> Result<Option<LambdaGrid>> {
        self.grid.clone().map(LambdaGrid::new).transpose().map_err(|e| CliError::Usage(format!("--grid: {e}")))
    }

    fn method_options(&self) -> Result<MethodOptions> {
        for (flag, v) in [("--lambda", self.lambda), ("--eta", self.eta)] {
            if let Some(v) = v {
                if !v.is_finite() || v < 0.0 {
                    return Err(CliError::Usage(format!("{flag} must be a finite non-negative number, got {v}")));
                }
            }
        }
        Ok(MethodOptions { lambda: self.lambda, eta: self.eta, grid: self.grid()?, ..MethodOptions::default() })
    }
}

fn require_key<'a>(data: &'a Dataset, what: &str) -> Result<&'a AnswerKey> {
    data.key.as_ref().ok_or_else(|| CliError::Usage(format!("{what} needs an answer key (--key)")))
}

/// Training/test split of the key's coverage, or `None` without a key.
fn split_for(data: &Dataset, opts: &RunOptions) -> Result<Option<Split>> {
    let Some(key) = &data.key else {
        if opts.train_ids.is_some() || opts.train_count.is_some() {
            return Err(CliError::Usage("a training split needs an answer key (--key)".into()));
        }
        return Ok(None);
    };
    let split = if let Some(ids) = &opts.train_ids {
        let train = ids
            .iter()
            .map(|id| match data.query_index(id) {
                Some(q) if key.get(q).is_some() => Ok(q),
                Some(_) => Err(CliError::Usage(format!("training query `{id}` has no answer in the key"))),
                None => Err(CliError::Usage(format!("unknown training query `{id}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Split::with_train(key, train)
    } else {
        split_queries(key, opts.train_count.unwrap_or(0), opts.seed)
    };
    split.map(Some).map_err(|e| CliError::Usage(e.to_string()))
}

fn run(data: &Dataset, split: &Split, method: MethodTag, opts: &RunOptions) -> Result<MethodRun> {
    let empty;
    let key = match &data.key {
        Some(k) => k,
        None => {
            empty = AnswerKey::new(data.matrix.num_queries(), data.matrix.alphabet(), [])?;
            &empty
        }
    };
    run_method(&data.matrix, key, split, method, &opts.method_options()?).map_err(|e| match e {
        CoreError::Numeric(m) => CliError::Numeric(m),
        other => CliError::Core(other),
    })
}

fn parse_method(name: &str) -> Result<MethodTag> {
    MethodTag::from_name(name).ok_or_else(|| {
        let names: Vec<&str> = MethodTag::ALL.iter().map(|m| m.name()).collect();
        CliError::Usage(format!("unknown method `{name}`; expected one of {}", names.join(", ")))
    })
}

fn header(out: &mut String, data: &Dataset, split: Option<&Split>, seed: u64) {
    let m = &data.matrix;
    let _ = writeln!(out, "observations  {} queries, {} agents, {} entries", m.num_queries(), m.num_agents(), m.num_entries());
    let _ = writeln!(out, "labels        {}", m.alphabet().labels().join(" "));
    let _ = writeln!(out, "seed          {seed}");
    match split {
        Some(s) => {
            let _ = writeln!(out, "train         {} queries", s.train.len());
            let _ = writeln!(out, "test          {} queries", s.test.len());
        }
        None => {
            let _ = writeln!(out, "train         -");
            let _ = writeln!(out, "test          -");
        }
    }
}

/// Runs one method and renders the report: settings, test accuracy, weights
/// with agent ids, support, and every query's prediction with its scores.
pub fn cmd_fuse(data: &Dataset, method: &str, opts: &RunOptions) -> Result<String> {
    let method = parse_method(method)?;
    if method.is_supervised() {
        require_key(data, method.name())?;
        if opts.train_ids.is_none() && opts.train_count.is_none() {
            return Err(CliError::Usage(format!("{} needs --train-count or --train-ids", method.name())));
        }
    }
    let split = split_for(data, opts)?;
    let no_split = Split::default();
    let result = run(data, split.as_ref().unwrap_or(&no_split), method, opts)?;
    let alphabet = data.matrix.alphabet();

    let mut out = String::new();
    let _ = writeln!(out, "method        {} ({})", method.name(), method.title());
    header(&mut out, data, split.as_ref(), opts.seed);
    let accuracy = match (&split, &data.key) {
        (Some(s), Some(key)) if !s.test.is_empty() => Some(result.accuracy(key, &s.test)?),
        _ => None,
    };
    let _ = writeln!(out, "accuracy      {}", opt_num(accuracy));
    let _ = writeln!(out, "eta           {}", opt_num(result.eta));
    let lambdas: Vec<String> = result
        .models
        .iter()
        .filter_map(|m| {
            let l = m.lambda?;
            Some(match m.label {
                Some(c) => format!("{}={}", alphabet.name(c), num(l)),
                None => num(l),
            })
        })
        .collect();
    let _ = writeln!(out, "lambda        {}", if lambdas.is_empty() { "-".to_owned() } else { lambdas.join(" ") });

    let _ = writeln!(out, "\n[weights]");
    let model_name = |label: Option<LabelId>| label.map_or_else(|| "weight".to_owned(), |c| format!("weight[{}]", alphabet.name(c)));
    let mut table = Table::new(
        ["index".to_owned(), "agent_id".to_owned()].into_iter().chain(result.models.iter().map(|m| model_name(m.label))),
        2,
    );
    for (i, agent) in data.agents.iter().enumerate() {
        let mut row = vec![i.to_string(), agent.clone()];
        row.extend(result.models.iter().map(|m| num(m.weights.weights[i])));
        table.row(row);
    }
    let mut bias = vec!["-".to_owned(), "bias".to_owned()];
    bias.extend(result.models.iter().map(|m| num(m.weights.bias)));
    table.row(bias);
    table.render(&mut out);

    let support = result.support();
    let _ = writeln!(out, "\n[support] {} agents", support.len());
    for chunk in support.chunks(10) {
        let ids: Vec<&str> = chunk.iter().map(|&i| data.agents[i].as_str()).collect();
        let _ = writeln!(out, "{}", ids.join(" "));
    }

    let _ = writeln!(out, "\n[predictions]");
    let mut table = Table::new(
        ["index", "query_id", "split", "truth", "predicted"]
            .map(String::from)
            .into_iter()
            .chain(alphabet.labels().iter().map(|l| format!("score[{l}]"))),
        5,
    );
    let role = |q: usize| match &split {
        Some(s) if s.train.binary_search(&q).is_ok() => "train",
        Some(s) if s.test.binary_search(&q).is_ok() => "test",
        _ => "-",
    };
    for (q, predicted, scores) in result.result.iter() {
        let truth = data.key.as_ref().and_then(|k| k.get(q)).map_or("-", |l| alphabet.name(l));
        let mut row = vec![q.to_string(), data.queries[q].clone(), role(q).into(), truth.into(), alphabet.name(predicted).into()];
        row.extend(scores.iter().map(|&s| num(s)));
        table.row(row);
    }
    table.render(&mut out);
    Ok(out)
}

/// Runs all six methods on one split and tabulates test accuracy.
pub fn cmd_compare(data: &Dataset, opts: &RunOptions) -> Result<String> {
    require_key(data, "compare")?;
    if opts.train_ids.is_none() && opts.train_count.is_none() {
        return Err(CliError::Usage("compare needs --train-count or --train-ids".into()));
    }
    let split = split_for(data, opts)?.expect("key is present");
    let key = data.key.as_ref().expect("key is present");
    if split.test.is_empty() {
        return Err(CliError::Usage("no test queries left after the training split".into()));
    }
    let mut out = String::new();
    header(&mut out, data, Some(&split), opts.seed);
    out.push('\n');
    let mut table = Table::new(["method", "name", "accuracy (%)"], 2);
    for method in MethodTag::ALL {
        let result = run(data, &split, method, opts)?;
        table.row(vec![method.title().into(), method.name().into(), num(100.0 * result.accuracy(key, &split.test)?)]);
    }
    table.render(&mut out);
    Ok(out)
}

/// Leave-one-out error along the lambda grid for `svm` or `professional`;
/// one column per label on multi-label data.
pub fn cmd_cv(data: &Dataset, method: &str, opts: &RunOptions) -> Result<String> {
    let penalty = match parse_method(method)? {
        MethodTag::SupportVectorMachine => Penalty::L2,
        MethodTag::ProfessionalSearch => Penalty::L1,
        other => return Err(CliError::Usage(format!("cv applies to svm and professional, not {}", other.name()))),
    };
    let key = require_key(data, "cv")?;
    if opts.train_ids.is_none() && opts.train_count.is_none() {
        return Err(CliError::Usage("cv needs --train-count or --train-ids".into()));
    }
    let split = split_for(data, opts)?.expect("key is present");
    let grid = opts.grid()?.unwrap_or_else(|| LambdaGrid::default_for(penalty));
    let alphabet = data.matrix.alphabet();
    let views: Vec<(String, LabelId)> = if alphabet.is_binary() {
        let (positive, _) = alphabet.binary_pair()?;
        vec![("error".into(), positive)]
    } else {
        alphabet.ids().map(|c| (format!("error[{}]", alphabet.name(c)), c)).collect()
    };
    let config = CvConfig::default();
    let reports = views
        .iter()
        .map(|(_, c)| loocv_select_for(&data.matrix, key, &split.train, *c, penalty, &grid, &config))
        .collect::<std::result::Result<Vec<_>, _>>()?;

    let mut out = String::new();
    let _ = writeln!(out, "method        {} ({})", method, penalty_name(penalty));
    header(&mut out, data, Some(&split), opts.seed);
    out.push('\n');
    let mut table = Table::new(std::iter::once("lambda".to_owned()).chain(views.iter().map(|v| v.0.clone())), 0);
    for (k, &lambda) in grid.values().iter().enumerate() {
        let mut row = vec![num(lambda)];
        row.extend(reports.iter().map(|r| num(r.per_lambda_error[k].1)));
        table.row(row);
    }
    let mut chosen = vec!["chosen".to_owned()];
    chosen.extend(reports.iter().map(|r| num(r.chosen)));
    table.row(chosen);
    table.render(&mut out);
    Ok(out)
}

fn penalty_name(p: Penalty) -> &'static str {
    match p {
        Penalty::L1 => "L1 penalty",
        Penalty::L2 => "L2 penalty",
    }
}
