use std::fmt::Write as _;
use std::io::{self, Write as _};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qkchev::alcove::{admissible_json, chain_type_a_star, enumerate_admissible, enumerate_bruhat_admissible, standard_chain};
use qkchev::chevalley::{chevalley_gb, chevalley_grassmannian, chevalley_twostep};
use qkchev::qbg::build_qbg;
use qkchev::verify::{self, jobs_from_env, run_suite, Suite, SuiteConfig, JOBS_ENV};
use qkchev::{EdgeKind, Family, GroupDescriptor, LabeledChain, WeylElement};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "qkchev", version, about = "Quantum K-theory Chevalley formulas for flag manifolds of types A and C")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chevalley product [O(-ϖ_k)] · [O^w] in the requested space.
    Product(ProductArgs),
    /// The labeled (-ϖ_k)-chain with levels and segments.
    Chain(ChainArgs),
    /// The quantum Bruhat graph of the full Weyl group.
    Qbg(QbgArgs),
    /// Admissible subsets of a chain for a start element w.
    Enumerate(EnumerateArgs),
    /// Run a verification suite and print its report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Tsv,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Space {
    /// Full flag manifold G/B.
    Gb,
    /// Grassmannian, J = I ∖ {k}.
    Grass,
    /// Two-step flag manifold (type A), J = I ∖ {k1, k2}.
    Twostep,
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    n: usize,
}

impl GroupArgs {
    fn descriptor(&self) -> Result<GroupDescriptor, Failure> {
        Ok(GroupDescriptor::new(self.family, self.n)?)
    }
}

#[derive(Args)]
struct ProductArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, value_enum, default_value = "gb")]
    space: Space,
    /// Line bundle index; the target index for two-step spaces.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    k1: Option<usize>,
    #[arg(long)]
    k2: Option<usize>,
    /// Window of w, e.g. "3 1 2" or "-2 1".
    #[arg(long, allow_hyphen_values = true)]
    w: String,
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
}

#[derive(Args)]
struct ChainArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long)]
    k: usize,
    /// Use the mirrored type A chain Γ*(k).
    #[arg(long)]
    star: bool,
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
}

#[derive(Args)]
struct QbgArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    star: bool,
    #[arg(long, allow_hyphen_values = true)]
    w: String,
    /// Keep only subsets whose path has Bruhat edges only.
    #[arg(long)]
    bruhat_only: bool,
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: edgeOracleA, edgeOracleC, grassA, grassC, twostepA,
    /// involutions, parity, commute, wt, theta, mirror.
    #[arg(long, value_parser = parse_suite)]
    suite: Suite,
    /// Sweep bound on n; defaults to the suite's acceptance bound.
    #[arg(long)]
    n: Option<usize>,
    /// Worker threads.
    #[arg(long, env = JOBS_ENV)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: qkchev::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: qkchev::Error| e.to_string())
}

enum Failure {
    Usage(String),
    Library(qkchev::Error),
}

impl From<qkchev::Error> for Failure {
    fn from(e: qkchev::Error) -> Self {
        Failure::Library(e)
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn reject_format(format: Format, allowed: &[Format], cmd: &str) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        usage(format!("format '{name}' is not available for `{cmd}`"))
    }
}

struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn json(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

fn product(args: ProductArgs) -> Result<Output, Failure> {
    reject_format(args.format, &[Format::Pretty, Format::Json, Format::Tsv], "product")?;
    let desc = args.group.descriptor()?;
    let w = desc.parse_element(&args.w)?;
    let (combo, closed) = match args.space {
        Space::Gb => {
            let Some(k) = args.k else { return usage("--k is required") };
            (chevalley_gb(&w, k)?, None)
        }
        Space::Grass => {
            let Some(k) = args.k else { return usage("--k is required") };
            let c = chevalley_grassmannian(&w, k)?;
            (c.combo.clone(), Some(c))
        }
        Space::Twostep => {
            let (Some(k1), Some(k2)) = (args.k1, args.k2) else {
                return usage("--k1 and --k2 are required for --space twostep");
            };
            let Some(target) = args.k else {
                return usage("--k selects the target index and must equal --k1 or --k2");
            };
            let c = chevalley_twostep(&w, k1, k2, target)?;
            (c.combo.clone(), Some(c))
        }
    };
    let text = match args.format {
        Format::Json => {
            let mut v = combo.to_json();
            if let Some(c) = &closed {
                v["label"] = c.label.as_str().into();
                v["bruhat_count"] = c.bruhat_count.into();
            }
            json(v)
        }
        Format::Tsv => combo.to_tsv(),
        _ => {
            let mut s = String::new();
            if let Some(c) = &closed {
                let _ = writeln!(s, "case {}  |A_lessdot| = {}", c.label, c.bruhat_count);
            }
            let _ = write!(s, "{combo}");
            s
        }
    };
    Ok(Output::ok(text))
}

fn build_chain(group: &GroupArgs, k: usize, star: bool) -> Result<LabeledChain, Failure> {
    if star {
        if group.family != Family::A {
            return usage("--star is only defined in type A");
        }
        Ok(chain_type_a_star(group.n, k)?)
    } else {
        Ok(standard_chain(group.family, group.n, k)?)
    }
}

fn chain(args: ChainArgs) -> Result<Output, Failure> {
    reject_format(args.format, &[Format::Pretty, Format::Json, Format::Tsv], "chain")?;
    let chain = build_chain(&args.group, args.k, args.star)?;
    let text = match args.format {
        Format::Json => json(serde_json::to_value(&chain).expect("chains serialize")),
        Format::Tsv => {
            let mut s = String::from("index\troot\tlevel\tsegment\thalf\n");
            for (t, e) in chain.entries.iter().enumerate() {
                let half = if chain.family == Family::C && t >= chain.split_index { 2 } else { 1 };
                let _ = writeln!(s, "{}\t{}\t{}\t{}\t{half}", t + 1, e.root, e.level, e.segment);
            }
            s
        }
        _ => {
            let name = if args.star { "Γ*" } else { "Γ" };
            let mut s = format!("{name}({}) type {} n={}: {} entries", chain.k, chain.family, chain.n, chain.len());
            if chain.family == Family::C {
                let _ = write!(s, ", split after entry {}", chain.split_index);
            }
            s.push('\n');
            s.push_str(&chain.to_text());
            s
        }
    };
    Ok(Output::ok(text))
}

fn qbg(args: QbgArgs) -> Result<Output, Failure> {
    reject_format(args.format, &[Format::Pretty, Format::Json, Format::Dot], "qbg")?;
    let graph = build_qbg(args.group.descriptor()?)?;
    let text = match args.format {
        Format::Dot => graph.to_dot(),
        Format::Json => json(graph.to_json()),
        _ => {
            let mut s = format!(
                "QBG type {} n={}: {} vertices, {} Bruhat edges, {} quantum edges\n",
                graph.descriptor.family,
                graph.descriptor.n,
                graph.vertices.len(),
                graph.count(EdgeKind::Bruhat),
                graph.count(EdgeKind::Quantum),
            );
            for e in &graph.edges {
                let arrow = if e.kind == EdgeKind::Quantum { "~>" } else { "->" };
                let _ = writeln!(s, "{} {arrow} {}  {}", graph.vertices[e.src], graph.vertices[e.dst], e.root);
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn enumerate(args: EnumerateArgs) -> Result<Output, Failure> {
    reject_format(args.format, &[Format::Pretty, Format::Json, Format::Tsv], "enumerate")?;
    let desc = args.group.descriptor()?;
    let w: WeylElement = desc.parse_element(&args.w)?;
    let chain = build_chain(&args.group, args.k, args.star)?;
    let subsets = if args.bruhat_only {
        enumerate_bruhat_admissible(&w, &chain)?
    } else {
        enumerate_admissible(&w, &chain)?
    };
    let bruhat = subsets.iter().filter(|a| a.is_bruhat_only()).count();
    let max_len = subsets.iter().map(|a| a.len()).max().unwrap_or(0);
    let text = match args.format {
        Format::Json => json(serde_json::json!({
            "w": w.window(),
            "chain_length": chain.len(),
            "count": subsets.len(),
            "bruhat_only": bruhat,
            "subsets": subsets.iter().map(|a| admissible_json(&chain, a)).collect::<Vec<_>>(),
        })),
        Format::Tsv => {
            let mut s = String::from("indices\tend\tsize\tquantum\tdown\twt\n");
            for a in &subsets {
                let v = admissible_json(&chain, a);
                let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}\t{}", v["indices"], a.end(), a.len(), v["quantum_indices"], v["down"], v["wt"]);
            }
            s
        }
        _ => {
            let mut s = format!(
                "w = {w}, chain of length {}: {} admissible subsets ({bruhat} Bruhat-only, largest size {max_len})\n",
                chain.len(),
                subsets.len(),
            );
            for a in &subsets {
                let v = admissible_json(&chain, a);
                let _ = writeln!(
                    s,
                    "{:<16} end {}  quantum {}  down {}  wt {}",
                    v["indices"].to_string(),
                    a.end(),
                    v["quantum_indices"],
                    v["down"],
                    v["wt"]
                );
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn run_verify(args: VerifyArgs) -> Result<Output, Failure> {
    reject_format(args.format, &[Format::Pretty, Format::Json, Format::Tsv], "verify")?;
    if args.jobs == Some(0) {
        return usage("--jobs must be positive");
    }
    let cfg = match args.n {
        Some(n) => SuiteConfig::with_n(args.suite, n),
        None => SuiteConfig::defaults(args.suite),
    };
    let rows = run_suite(args.suite, cfg.jobs(args.jobs.or_else(jobs_from_env)))?;
    let ok = verify::all_match(&rows);
    let text = match args.format {
        Format::Json => json(serde_json::to_value(&rows).expect("rows serialize")),
        Format::Tsv => verify::to_tsv(&rows),
        _ => {
            let mut s = verify::to_tsv(&rows);
            let bad: Vec<_> = rows.iter().filter(|r| !r.matched).collect();
            for r in &bad {
                let _ = writeln!(s, "# mismatch {} n={} k={} w={}: {}", r.family, r.n, r.k, r.w, r.detail);
            }
            let _ = writeln!(
                s,
                "# suite {}: {} rows, {} mismatches: {}",
                args.suite,
                rows.len(),
                bad.len(),
                if ok { "PASS" } else { "FAIL" }
            );
            s
        }
    };
    Ok(Output { text, ok })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Product(a) => product(a),
        Command::Chain(a) => chain(a),
        Command::Qbg(a) => qbg(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            let _ = stdout.flush();
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            // A classifier miss is a defect in the formulas, not in the input.
            match e {
                qkchev::Error::Classification(_) => ExitCode::from(EXIT_MISMATCH),
                _ => ExitCode::from(EXIT_USAGE),
            }
        }
    }
}
