//! `supertree`: command-line access to plane-tree containment, the universal
//! constructions, the exhaustive search and the bounds.
//!
//! Exit codes: 0 success or true, 1 predicate false, 2 usage or parse error,
//! 3 search cap exceeded.

mod dot;

use std::io::Read;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use supertree::bounds::{bound_report, p_eval, rho, rho_asym};
use supertree::constructions::{build, formula_size, j_gadget, FamilyId};
use supertree::containment::{contains, universal, Mode};
use supertree::perm::{psi, psi_inv, Permutation};
use supertree::search::{Query, ResultsStore};
use supertree::transforms::{binarize, binarize_intermediate, child_profile, expand};
use supertree::tree::{enumerate_bracket, enumerate_dary, parse_tree_list};
use supertree::{decode, Kind, Tree};

#[derive(Parser)]
#[command(
    name = "supertree",
    version,
    about = "Universal plane trees: containment, constructions, search"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for `universal` and `minimal`.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    /// d-ary to binary, `d >= 3`.
    Binarize,
    /// Gadget substitution only, keeping the arity.
    Intermediate,
    /// `[d]`-tree to d-ary tree.
    Expand,
    /// d-ary tree to `[d]`-tree.
    Forget,
}

#[derive(Subcommand)]
enum Command {
    /// List every tree on k vertices in code order.
    Enumerate {
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
    },
    /// Test whether a host contains a pattern.
    Contains {
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        mode: Mode,
    },
    /// Build a member of a construction family.
    Build {
        #[arg(long)]
        family: FamilyId,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Child types of a J gadget, e.g. `1,3,4`; overrides --k.
        #[arg(long, value_delimiter = ',')]
        tvec: Option<Vec<usize>>,
    },
    /// Test whether a host (from --host or stdin) contains every k-vertex tree.
    Universal {
        #[arg(long)]
        host: Option<String>,
        #[arg(long)]
        kind: Option<Kind>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        mode: Mode,
    },
    /// Smallest size of a k-universal tree, by exhaustive search.
    Minimal {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        mode: Mode,
        #[arg(long, default_value_t = 16)]
        n_cap: usize,
        /// First host size to examine; defaults to the best independent lower bound.
        #[arg(long)]
        n_start: Option<usize>,
        /// Ignore stored results.
        #[arg(long)]
        recompute: bool,
    },
    /// Sizes of a family for 1..=k from its recurrence.
    Sizes {
        #[arg(long)]
        family: FamilyId,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        /// Also build each tree and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Lower bounds, construction size and any stored exact value.
    Bounds {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        mode: Mode,
    },
    /// Growth constant of the contiguous `[d]`-tree construction.
    Rho {
        #[arg(long)]
        d: usize,
        /// Print the large-d approximation instead.
        #[arg(long)]
        asym: bool,
    },
    /// Binary tree code to permutation, or a 231-avoiding permutation to its tree.
    Psi { input: String },
    /// Apply a tree transformation to a code (argument or stdin).
    Transform {
        #[arg(long)]
        op: Op,
        /// Arity for `expand`; defaults to the tree's bound.
        #[arg(long)]
        d: Option<usize>,
        input: Option<String>,
    },
    /// Graphviz rendering of a code (argument or stdin).
    ExportDot { input: Option<String> },
}

/// What a subcommand produced; rendered according to `--format`.
struct Output {
    text: String,
    json: Value,
    tree: Option<Tree>,
    truth: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            tree: None,
            truth: true,
        }
    }
}

fn read_tree(arg: Option<String>) -> anyhow::Result<Tree> {
    if let Some(code) = arg {
        return Ok(decode(code.trim())?);
    }
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .context("reading stdin")?;
    let mut trees = parse_tree_list(&text)?;
    if trees.len() != 1 {
        bail!("expected one tree on stdin, found {}", trees.len());
    }
    Ok(trees.remove(0))
}

/// `x` to 12 significant digits.
fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let decimals = 11 - x.abs().log10().floor() as i64;
    if (0..=17).contains(&decimals) {
        format!("{x:.*}", decimals as usize)
    } else {
        format!("{x:.11e}")
    }
}

fn run(cmd: Command) -> anyhow::Result<Output> {
    Ok(match cmd {
        Command::Enumerate { kind, d, k } => {
            let codes: Vec<String> = match kind {
                Kind::Dary => enumerate_dary(d, k).iter().map(|t| t.encode()).collect(),
                Kind::Bracket => enumerate_bracket(d, k).iter().map(|t| t.encode()).collect(),
            };
            let json = json!({
                "query": {"kind": kind, "d": d, "k": k},
                "value": codes.len(),
                "trees": codes,
            });
            Output::new(codes.join("\n"), json)
        }
        Command::Contains {
            host,
            pattern,
            mode,
        } => {
            let (h, p) = (decode(&host)?, decode(&pattern)?);
            let verdict = contains(&h, &p, mode)?;
            let json = json!({
                "query": {"host": h.encode(), "pattern": p.encode(), "mode": mode},
                "verdict": verdict,
            });
            Output {
                truth: verdict,
                ..Output::new(verdict.to_string(), json)
            }
        }
        Command::Build { family, d, k, tvec } => {
            let t = match (&tvec, family) {
                (Some(tv), FamilyId::JGadget) => j_gadget(d, tv)?.into(),
                (Some(_), _) => bail!("--tvec only applies to the j_gadget family"),
                (None, _) => build(family, d, k)?,
            };
            let json = json!({
                "query": {"family": family, "d": d, "k": k, "tvec": tvec},
                "value": t.size(),
                "tree": t.encode(),
            });
            Output {
                tree: Some(t.clone()),
                ..Output::new(t.encode(), json)
            }
        }
        Command::Universal {
            host,
            kind,
            d,
            k,
            mode,
        } => {
            let host = read_tree(host)?;
            let kind = kind.unwrap_or(host.kind());
            let d = d.unwrap_or(host.degree_bound());
            let r = universal(&host, d, k, kind, mode)?;
            let json = json!({
                "query": {"host": r.host, "kind": kind, "d": d, "k": k, "mode": mode},
                "verdict": r.verdict,
                "counterexample": r.counterexample,
                "stats": {
                    "hosts_checked": 1,
                    "patterns_checked": r.stats.patterns_checked,
                    "states": r.stats.states,
                    "elapsed_ms": r.stats.elapsed_ms,
                },
            });
            let text = match &r.counterexample {
                None => format!("true ({} patterns)", r.stats.patterns_checked),
                Some(c) => format!("false (missing {c})"),
            };
            Output {
                truth: r.verdict,
                ..Output::new(text, json)
            }
        }
        Command::Minimal {
            d,
            k,
            kind,
            mode,
            n_cap,
            n_start,
            recompute,
        } => {
            let store = ResultsStore::from_env();
            let q = Query {
                d,
                k,
                kind,
                mode,
                n_start,
                n_cap,
            };
            let r = store.minimal_size(&q, recompute)?;
            let json = json!({
                "query": {"d": d, "k": k, "kind": kind, "mode": mode, "n_start": r.n_start, "n_cap": n_cap},
                "value": r.n_min,
                "witness": r.witness,
                "stats": {
                    "hosts_checked": r.total_hosts(),
                    "hosts_by_size": r.hosts_checked,
                    "states": r.states,
                    "elapsed_ms": r.elapsed_ms,
                },
            });
            let text = format!(
                "{} (witness {}, {} hosts checked from size {})",
                r.n_min,
                r.witness,
                r.total_hosts(),
                r.n_start
            );
            Output::new(text, json)
        }
        Command::Sizes {
            family,
            d,
            k,
            verify,
        } => {
            let mut rows = Vec::new();
            for j in 1..=k {
                let size = formula_size(family, d, j)?;
                if verify {
                    // build checks the constructed size against the recurrence
                    build(family, d, j)?;
                }
                rows.push((j, size));
            }
            let text = rows
                .iter()
                .map(|(j, s)| format!("{j}\t{s}"))
                .collect::<Vec<_>>()
                .join("\n");
            let json = json!({
                "query": {"family": family, "d": d, "k": k, "verify": verify},
                "value": rows.last().map(|r| r.1),
                "sizes": rows.iter().map(|(j, s)| json!({"k": j, "size": s})).collect::<Vec<_>>(),
            });
            Output::new(text, json)
        }
        Command::Bounds { d, k, kind, mode } => {
            let mut rep = bound_report(d, k, kind, mode)?;
            if let Some(r) = ResultsStore::from_env().find(d, k, kind, mode)? {
                rep.exact = Some(r.n_min);
                rep.witness = Some(r.witness);
            }
            let mut text: Vec<String> = rep
                .bounds
                .iter()
                .map(|(n, v)| format!("{n}\t{v}"))
                .collect();
            text.push(format!("best_lower\t{}", rep.best_lower));
            text.push(format!("{}\t{}", rep.construction, rep.construction_size));
            if let Some(n) = rep.exact {
                text.push(format!("exact\t{n}"));
            }
            let json = json!({
                "query": {"d": d, "k": k, "kind": kind, "mode": mode},
                "value": rep.best_lower,
                "bounds": rep.bounds,
                "construction": rep.construction,
                "construction_size": rep.construction_size.to_string(),
                "exact": rep.exact,
                "witness": rep.witness,
                "verdict": rep.consistent(),
            });
            Output::new(text.join("\n"), json)
        }
        Command::Rho { d, asym } => {
            let x = if asym { rho_asym(d)? } else { rho(d)? };
            let json = json!({
                "query": {"d": d, "asym": asym},
                "value": x,
                "residual": if asym { None } else { Some(p_eval(d, 1.0 / x)) },
            });
            Output::new(sig12(x), json)
        }
        Command::Psi { input } => {
            let input = input.trim();
            let out = if input.starts_with(['d', 'b']) {
                let t = decode(input)?;
                let Tree::Dary(t) = t else {
                    bail!("psi needs a binary d-ary tree, got a bracket tree");
                };
                psi(&t)?.to_string()
            } else {
                let p: Permutation = input.parse()?;
                psi_inv(&p)?.encode()
            };
            let json = json!({"query": {"input": input}, "value": out});
            Output::new(out, json)
        }
        Command::Transform { op, d, input } => {
            let t = read_tree(input)?;
            let out: Tree = match (op, &t) {
                (Op::Binarize, Tree::Dary(t)) => binarize(t)?.into(),
                (Op::Intermediate, Tree::Dary(t)) => binarize_intermediate(t).into(),
                (Op::Forget, Tree::Dary(t)) => t.forget().into(),
                (Op::Expand, Tree::Bracket(t)) => expand(t, d.unwrap_or(t.bound()))?.into(),
                (Op::Expand, Tree::Dary(_)) => bail!("expand needs a bracket tree"),
                (_, Tree::Bracket(_)) => bail!("this transformation needs a d-ary tree"),
            };
            let json = json!({
                "query": {"input": t.encode(), "d": d},
                "value": out.size(),
                "tree": out.encode(),
                "child_profile": child_profile(&t).f,
            });
            Output {
                tree: Some(out.clone()),
                ..Output::new(out.encode(), json)
            }
        }
        Command::ExportDot { input } => {
            let t = read_tree(input)?;
            let json = json!({"query": {"input": t.encode()}, "value": t.size()});
            Output {
                tree: Some(t),
                ..Output::new(String::new(), json)
            }
        }
    })
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<supertree::Error>() {
        Some(supertree::Error::CapExceeded { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let dot_only = matches!(cli.command, Command::ExportDot { .. });
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(cli.command)),
            Err(e) => Err(e.into()),
        },
        None => run(cli.command),
    };
    let out = match result {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_code(&e));
        }
    };
    match (cli.format, &out.tree) {
        (Format::Json, _) if !dot_only => println!("{}", out.json),
        (Format::Dot, Some(t)) => print!("{}", dot::to_dot(t)),
        (_, Some(t)) if dot_only => print!("{}", dot::to_dot(t)),
        (Format::Dot, None) => {
            eprintln!("error: --format dot needs a subcommand that produces a tree");
            return ExitCode::from(2);
        }
        _ => println!("{}", out.text),
    }
    if out.truth {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
