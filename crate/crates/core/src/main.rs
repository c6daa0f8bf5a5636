use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use braidcert::certify::{self, HarnessConfig, Structure, SubgroupSpec};
use braidcert::dynnikov::{self, Classification};
use braidcert::tree::{self, Tree};
use braidcert::{burau, BraidWord};

#[derive(Parser)]
#[command(name = "braidcert", version, about = "Entropy and solvability checks for braid subgroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the subgroup generated by the given words.
    Analyze {
        #[arg(short = 'n', long = "strands")]
        n: usize,
        /// Generator word, e.g. "1 -2" or "s1 s2^-1"; repeat for more generators.
        #[arg(short = 'g', long = "generator", required = true, allow_hyphen_values = true)]
        generators: Vec<String>,
        /// DISJOINT_TWISTS or CYCLIC.
        #[arg(long)]
        structure: Option<Structure>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budget: Budget,
    },
    /// Estimate the entropy of one braid.
    Entropy {
        #[arg(short = 'n', long = "strands")]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = 1000)]
        iterations: usize,
        #[arg(long)]
        json: bool,
    },
    /// Show the permutation and linking data of one braid.
    Perm {
        #[arg(short = 'n', long = "strands")]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Analyze a subgroup described by a JSON spec file.
    Certify {
        specfile: PathBuf,
        /// json or text.
        #[arg(long, default_value = "json")]
        format: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// Print the canonical center of a tree given as an edge list.
    TreeCenter { edgefile: PathBuf },
}

#[derive(Args)]
struct Budget {
    /// Longest generator word tried when searching for positive entropy.
    #[arg(long, default_value_t = 8)]
    max_len: usize,
    /// Longest generator word sampled for kernel elements.
    #[arg(long, default_value_t = 4)]
    kernel_len: usize,
    #[arg(long, default_value_t = 1000)]
    iterations: usize,
    /// Points on the unit circle used for the Burau bound.
    #[arg(long, default_value_t = burau::DEFAULT_GRID)]
    grid: usize,
}

impl Budget {
    fn config(&self) -> HarnessConfig {
        let mut config = HarnessConfig { max_len: self.max_len, kernel_len: self.kernel_len, ..Default::default() };
        config.entropy.iterations = self.iterations;
        config.entropy.burau_grid = self.grid;
        config
    }
}

fn run_report(spec: &SubgroupSpec, budget: &Budget, format: &str) -> Result<ExitCode> {
    let report = certify::analyze(spec, &budget.config())?;
    let text = certify::emit_report(&report, format)?;
    println!("{}", text.trim_end());
    Ok(if report.is_clean() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn entropy(n: usize, word: &str, iterations: usize, as_json: bool) -> Result<ExitCode> {
    let w = BraidWord::parse(word, n)?;
    let config = dynnikov::EntropyConfig { iterations, ..Default::default() };
    config.validate()?;
    let estimate = dynnikov::entropy_estimate(&w, &config)?;
    let bound = burau::entropy_lower_bound(&w, config.burau_grid)?;
    let classification = dynnikov::classify(&w, &config)?;
    let exact = match &classification {
        Classification::ZeroEntropy { exact, .. } => exact.clone(),
        _ if n == 3 => Some(burau::b3_exact_classify(&w)?),
        _ => None,
    };
    if as_json {
        let doc = json!({
            "word": w.to_string(),
            "n": n,
            "estimate": estimate.value,
            "verdict": estimate.verdict,
            "classification": classification.label(),
            "burau_lower_bound": bound,
            "iterations": estimate.iterations,
            "exact": exact,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!("word            {w}");
        println!("verdict         {}", estimate.verdict);
        println!("estimate        {:.6}", estimate.value);
        println!("tail std        {:.6}", estimate.tail_std);
        println!("burau bound     {bound:.6}");
        println!("classification  {}", classification.label());
        if let Some(e) = exact {
            println!("sl2 class       {} (trace {}, entropy {:.6})", e.class, e.trace, e.entropy_exact);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn perm(n: usize, word: &str) -> Result<ExitCode> {
    let w = BraidWord::parse(word, n)?;
    let p = w.permutation();
    println!("permutation   {p}");
    println!("images        {:?}", p.images());
    println!("order         {}", p.order());
    println!("exponent sum  {}", w.exponent_sum());
    println!("pure          {}", w.is_pure());
    if w.is_pure() {
        println!("linking matrix");
        for row in w.linking_matrix()?.rows() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
            println!("  {}", cells.join(""));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn tree_center(path: &PathBuf) -> Result<ExitCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let t = Tree::parse_edge_list(&text)?;
    let center = tree::canonical_center(&t);
    println!("{}", serde_json::to_string(&center)?);
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze { n, generators, structure, json, budget } => {
            let words: Vec<&str> = generators.iter().map(String::as_str).collect();
            let spec = SubgroupSpec::parse(n, &words, structure)?;
            run_report(&spec, &budget, if json { "json" } else { "text" })
        }
        Command::Entropy { n, word, iterations, json } => entropy(n, &word, iterations, json),
        Command::Perm { n, word } => perm(n, &word),
        Command::Certify { specfile, format, budget } => {
            let text = fs::read_to_string(&specfile).with_context(|| format!("reading {}", specfile.display()))?;
            let spec = SubgroupSpec::from_json(&text)?;
            run_report(&spec, &budget, &format)
        }
        Command::TreeCenter { edgefile } => tree_center(&edgefile),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
