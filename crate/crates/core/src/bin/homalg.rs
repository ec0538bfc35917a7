use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use homalg::algebra::HomAlgebra;
use homalg::checkers::{check_identity, CheckParams, Identity, Subgroup};
use homalg::coeff::FieldElem;
use homalg::constructors::{construct, ConstructError, ConstructParams, Construction};
use homalg::fileio::AlgebraFile;
use homalg::free::{
    free_basis, gamma_eval, ideal_span, induced_morphism, quotient_dim, relation_generators,
    DCategoryObject, OverflowPolicy,
};
use homalg::report::{CheckEntry, Report};
use homalg::trees::{parse as parse_tree, serialize as serialize_tree, DecoratedTree};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "homalg", version, about = "Check and build twisted algebras with Rota-Baxter structure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check identities on an algebra file
    Check(CheckArgs),
    /// Run a catalog construction and write the result
    Construct(ConstructArgs),
    /// Truncated free-object computations
    Free(FreeArgs),
    /// Evaluate a decorated tree on algebra elements
    EvalTree(EvalTreeArgs),
    /// Search for Rota-Baxter operators
    SearchRb(SearchRbArgs),
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    #[arg(long, required = true)]
    identity: Vec<String>,
    #[arg(long)]
    product: Option<String>,
    #[arg(long)]
    operator: Option<String>,
    #[arg(long)]
    weight: Option<String>,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    file: PathBuf,
    #[arg(long)]
    name: String,
    #[arg(long)]
    product: Option<String>,
    #[arg(long)]
    operator: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long)]
    weight: Option<String>,
    #[arg(long)]
    no_verify: bool,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct FreeArgs {
    file: PathBuf,
    #[arg(long)]
    max_complexity: u64,
    #[arg(long)]
    list_basis: bool,
    /// subgroup id (g1..g6) for the relation quotient
    #[arg(long)]
    quotient: Option<String>,
    #[arg(long)]
    weight: Option<String>,
    /// target algebra file for the universal-property check
    #[arg(long)]
    universal: Option<PathBuf>,
    /// JSON file holding the base→target linear map as a matrix of
    /// coefficient strings (in the target's parameters)
    #[arg(long)]
    map: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct EvalTreeArgs {
    #[arg(long)]
    tree: String,
    #[arg(long)]
    algebra: PathBuf,
    #[arg(long)]
    product: Option<String>,
    #[arg(long)]
    operator: Option<String>,
    /// comma-separated basis labels, one per leaf
    #[arg(long)]
    args: String,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct SearchRbArgs {
    file: PathBuf,
    #[arg(long)]
    product: Option<String>,
    #[arg(long)]
    weight: Option<String>,
    #[arg(long, value_parser = ["verify", "grid"])]
    strategy: String,
    /// comma-separated coefficient values for grid entries
    #[arg(long)]
    values: Option<String>,
    /// cap on the number of grid candidates
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    #[arg(long)]
    report: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = match &cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Construct(a) => cmd_construct(a),
        Command::Free(a) => cmd_free(a),
        Command::EvalTree(a) => cmd_eval_tree(a),
        Command::SearchRb(a) => cmd_search_rb(a),
    };
    match result {
        Ok((mut report, code)) => {
            report.elapsed_ms = started.elapsed().as_millis();
            print!("{}", report.render_text());
            if let Some(path) = report_path(&cli.command) {
                if let Err(e) = write_report(&report, path) {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_INPUT);
                }
            }
            ExitCode::from(code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn report_path(c: &Command) -> Option<&PathBuf> {
    match c {
        Command::Check(a) => a.report.as_ref(),
        Command::Construct(a) => a.report.as_ref(),
        Command::Free(a) => a.report.as_ref(),
        Command::EvalTree(a) => a.report.as_ref(),
        Command::SearchRb(a) => a.report.as_ref(),
    }
}

fn write_report(report: &Report, path: &PathBuf) -> Result<(), String> {
    let text = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
    std::fs::write(path, text + "\n").map_err(|e| e.to_string())
}

fn load(path: &PathBuf) -> Result<(AlgebraFile, HomAlgebra), String> {
    let file = AlgebraFile::load(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let algebra = file
        .to_algebra()
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((file, algebra))
}

fn parse_weight(a: &HomAlgebra, w: &Option<String>) -> Result<Option<FieldElem>, String> {
    match w {
        None => Ok(None),
        Some(s) => a
            .ctx()
            .parse(s)
            .map(Some)
            .map_err(|e| format!("weight: {e}")),
    }
}

type CmdResult = Result<(Report, u8), String>;

fn cmd_check(args: &CheckArgs) -> CmdResult {
    let (_, algebra) = load(&args.file)?;
    let weight = parse_weight(&algebra, &args.weight)?;
    let params = CheckParams {
        product: args.product.clone(),
        operator: args.operator.clone(),
        beta: None,
        weight,
    };
    let mut report = Report::new(format!("check {}", args.file.display()));
    for id_name in &args.identity {
        let identity = Identity::from_str(id_name).map_err(|e| e.to_string())?;
        let r = check_identity(&algebra, &identity, &params).map_err(|e| e.to_string())?;
        report.checks.push(CheckEntry::from_report(&r));
    }
    let code = if report.all_pass() { 0 } else { EXIT_FAIL };
    Ok((report, code))
}

fn cmd_construct(args: &ConstructArgs) -> CmdResult {
    let (_, algebra) = load(&args.file)?;
    let construction = Construction::from_str(&args.name).map_err(|e| e.to_string())?;
    let weight = parse_weight(&algebra, &args.weight)?;
    let params = ConstructParams {
        product: args.product.clone(),
        operator: args.operator.clone(),
        beta: args.beta.clone(),
        n: args.n,
        m: args.m,
        weight,
    };
    let mut report = Report::new(format!(
        "construct {} {}",
        args.name,
        args.file.display()
    ));
    match construct(&algebra, construction, &params, !args.no_verify) {
        Ok(out) => {
            let file = AlgebraFile::from_algebra(&out);
            file.save(&args.out).map_err(|e| e.to_string())?;
            report.data = Some(serde_json::to_value(&file).map_err(|e| e.to_string())?);
            report.checks.push(CheckEntry {
                identity: format!("{}:hypotheses", args.name),
                pass: true,
                witness: None,
            });
            Ok((report, 0))
        }
        Err(ConstructError::HypothesisFailed(msg)) => {
            report.checks.push(CheckEntry {
                identity: format!("{}:hypotheses ({msg})", args.name),
                pass: false,
                witness: None,
            });
            Ok((report, EXIT_FAIL))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_free(args: &FreeArgs) -> CmdResult {
    let (_, algebra) = load(&args.file)?;
    if args.max_complexity < 1 {
        return Err("--max-complexity must be at least 1".into());
    }
    let free = free_basis(
        algebra.module.clone(),
        args.max_complexity,
        OverflowPolicy::Error,
    )
    .map_err(|e| e.to_string())?;
    let mut report = Report::new(format!("free {}", args.file.display()));

    if args.list_basis {
        let lines: Vec<String> = free
            .basis
            .iter()
            .map(|(tree, idx)| {
                let labels: Vec<&str> = idx
                    .iter()
                    .map(|&i| algebra.module.basis_labels[i].as_str())
                    .collect();
                format!("{} ⊗ ({})", serialize_tree(tree), labels.join(","))
            })
            .collect();
        report.data = Some(serde_json::json!({ "basis": lines, "dim": free.dim() }));
        report.checks.push(CheckEntry {
            identity: format!("basis size {}", free.dim()),
            pass: true,
            witness: None,
        });
        return Ok((report, 0));
    }

    if let Some(g_name) = &args.quotient {
        let g = Subgroup::from_str(g_name).map_err(|e| e.to_string())?;
        let lambda = parse_weight(&algebra, &args.weight)?
            .unwrap_or_else(|| FieldElem::zero(algebra.ctx()));
        let gens = relation_generators(&free, g, &lambda).map_err(|e| e.to_string())?;
        let span = ideal_span(&free, &gens).map_err(|e| e.to_string())?;
        let qd = quotient_dim(&free, &span);
        report.data = Some(serde_json::json!({
            "free_dim": free.dim(),
            "generators": gens.len(),
            "span_rank": span.rank,
            "quotient_dim_truncated": qd,
        }));
        report.checks.push(CheckEntry {
            identity: format!("truncated quotient dim {qd}"),
            pass: true,
            witness: None,
        });
        return Ok((report, 0));
    }

    if let Some(target_path) = &args.universal {
        let (_, target) = load(target_path)?;
        let map_path = args
            .map
            .as_ref()
            .ok_or("--universal requires --map")?;
        let map_rows: Vec<Vec<String>> = serde_json::from_str(
            &std::fs::read_to_string(map_path).map_err(|e| e.to_string())?,
        )
        .map_err(|e| format!("map file: {e}"))?;
        let mut f = homalg::coeff::FieldMatrix::zero(
            target.ctx(),
            target.dim(),
            free.base.dim,
        );
        if map_rows.len() != target.dim()
            || map_rows.iter().any(|r| r.len() != free.base.dim)
        {
            return Err("map matrix has the wrong shape".into());
        }
        for (i, row) in map_rows.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                *f.at_mut(i, j) = target.ctx().parse(s).map_err(|e| e.to_string())?;
            }
        }
        let d = DCategoryObject::from_algebra(&target, None, None).map_err(|e| e.to_string())?;
        let (_, check) = induced_morphism(&free, &f, &d).map_err(|e| e.to_string())?;
        for (name, ok) in [
            ("factorization", check.factorization),
            ("mu_intertwines", check.mu_intertwines),
            ("alpha_intertwines", check.alpha_intertwines),
            ("r_intertwines", check.r_intertwines),
        ] {
            report.checks.push(CheckEntry {
                identity: format!("universal:{name}"),
                pass: ok,
                witness: None,
            });
        }
        let code = if report.all_pass() { 0 } else { EXIT_FAIL };
        return Ok((report, code));
    }

    Err("choose one of --list-basis, --quotient, --universal".into())
}

/// Nested operator-word rendering of a decorated tree applied to named
/// arguments.
fn word_string(tree: &DecoratedTree, labels: &[&str]) -> String {
    match tree {
        DecoratedTree::Leaf(d) => {
            if d.is_zero() {
                labels[0].to_string()
            } else {
                format!("{}({})", d.op_word(), labels[0])
            }
        }
        DecoratedTree::Graft(l, r, d) => {
            let nl = l.leaves();
            let inner = format!(
                "[{}]·[{}]",
                word_string(l, &labels[..nl]),
                word_string(r, &labels[nl..])
            );
            if d.is_zero() {
                format!("{{{inner}}}")
            } else {
                format!("{}{{{inner}}}", d.op_word())
            }
        }
    }
}

fn cmd_eval_tree(args: &EvalTreeArgs) -> CmdResult {
    let (_, algebra) = load(&args.algebra)?;
    let tree = parse_tree(&args.tree).map_err(|e| e.to_string())?;
    let labels: Vec<&str> = args.args.split(',').map(str::trim).collect();
    if labels.len() != tree.leaves() {
        return Err(format!(
            "tree has {} leaves but {} arguments were given",
            tree.leaves(),
            labels.len()
        ));
    }
    let vectors: Vec<Vec<FieldElem>> = labels
        .iter()
        .map(|l| {
            algebra
                .module
                .label_index(l)
                .map(|i| algebra.module.basis_vector(i))
        })
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let target = DCategoryObject::from_algebra(
        &algebra,
        args.product.as_deref(),
        args.operator.as_deref(),
    )
    .map_err(|e| e.to_string())?;
    let value = gamma_eval(&tree, &vectors, &target).map_err(|e| e.to_string())?;

    let word = word_string(&tree, &labels);
    let rendered: Vec<String> = value
        .iter()
        .zip(&algebra.module.basis_labels)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, l)| format!("({c})·{l}"))
        .collect();
    let value_str = if rendered.is_empty() {
        "0".to_string()
    } else {
        rendered.join(" + ")
    };
    let mut report = Report::new(format!("eval-tree {}", args.tree));
    report.checks.push(CheckEntry {
        identity: format!("word {word}"),
        pass: true,
        witness: None,
    });
    report.checks.push(CheckEntry {
        identity: format!("value {value_str}"),
        pass: true,
        witness: None,
    });
    report.data = Some(serde_json::json!({
        "word": word,
        "value": value.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    }));
    Ok((report, 0))
}

fn cmd_search_rb(args: &SearchRbArgs) -> CmdResult {
    let (_, algebra) = load(&args.file)?;
    let weight = parse_weight(&algebra, &args.weight)?;
    let mut report = Report::new(format!("search-rb {}", args.file.display()));
    let params_for = |operator: Option<String>| CheckParams {
        product: args.product.clone(),
        operator,
        beta: None,
        weight: weight.clone(),
    };

    match args.strategy.as_str() {
        "verify" => {
            for name in algebra.operators.keys() {
                let r = check_identity(
                    &algebra,
                    &Identity::RotaBaxter,
                    &params_for(Some(name.clone())),
                )
                .map_err(|e| e.to_string())?;
                report.checks.push(CheckEntry {
                    identity: format!("rota_baxter[{name}]"),
                    pass: r.pass,
                    witness: CheckEntry::from_report(&r).witness,
                });
            }
            let code = if report.all_pass() { 0 } else { EXIT_FAIL };
            Ok((report, code))
        }
        "grid" => {
            let values_raw = args
                .values
                .as_ref()
                .ok_or("grid strategy requires --values")?;
            let values: Vec<FieldElem> = values_raw
                .split(',')
                .map(|s| algebra.ctx().parse(s.trim()))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            let dim = algebra.dim();
            let entries = dim * dim;
            let total = (values.len() as u64)
                .checked_pow(entries as u32)
                .filter(|&t| t <= args.budget)
                .ok_or_else(|| {
                    format!(
                        "grid of {}^{} candidates exceeds the budget of {}",
                        values.len(),
                        entries,
                        args.budget
                    )
                })?;
            let mut hits = Vec::new();
            let mut counters = vec![0usize; entries];
            for _ in 0..total {
                let mut m = homalg::coeff::FieldMatrix::zero(algebra.ctx(), dim, dim);
                for (pos, &vi) in counters.iter().enumerate() {
                    *m.at_mut(pos / dim, pos % dim) = values[vi].clone();
                }
                let mut candidate = algebra.clone();
                candidate.operators.clear();
                candidate
                    .add_operator("R", m.clone())
                    .map_err(|e| e.to_string())?;
                let r = check_identity(
                    &candidate,
                    &Identity::RotaBaxter,
                    &params_for(Some("R".into())),
                )
                .map_err(|e| e.to_string())?;
                if r.pass {
                    let rows: Vec<Vec<String>> = (0..dim)
                        .map(|i| (0..dim).map(|j| m.at(i, j).to_string()).collect())
                        .collect();
                    hits.push(rows);
                }
                // odometer increment
                for c in counters.iter_mut() {
                    *c += 1;
                    if *c < values.len() {
                        break;
                    }
                    *c = 0;
                }
            }
            report.checks.push(CheckEntry {
                identity: format!("grid search: {} of {} candidates pass", hits.len(), total),
                pass: true,
                witness: None,
            });
            report.data = Some(serde_json::json!({
                "candidates": total,
                "solutions": hits,
            }));
            Ok((report, 0))
        }
        _ => unreachable!(),
    }
}
