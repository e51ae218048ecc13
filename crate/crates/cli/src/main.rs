use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use extremal_k3::discriminant::discriminant_form;
use extremal_k3::fibration::{verify_remark, Z2Clause};
use extremal_k3::golden::{compare_golden, load_table1, load_table2, load_triples, verify_table1};
use extremal_k3::lattice::{count_roots, parse_gram, IntegralLattice};
use extremal_k3::pipeline::{classify_all, classify_one, DataTriple};
use extremal_k3::root_type::{
    dynkin_graph, enumerate_list_l, enumerate_n_lists, enumerate_rank_eu, graph_embeds, gram_of, rank_of,
    verify_extension_lemma, RootType,
};
use extremal_k3::{binary_form, Error};
use num_traits::{Signed, ToPrimitive};

#[derive(Parser)]
#[command(name = "extremal-k3", version, about = "Classification of extremal elliptic K3 surfaces")]
struct Cli {
    /// Worker threads; defaults to the available cores.
    #[arg(long, short = 'j', global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    /// Progress and timing on stderr.
    #[arg(long, short = 'v', global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Regenerate every data triple, one `sigma;mw;a;b;c` line each.
    Classify {
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Diff computed triples against the golden table.
    VerifyTable2 {
        golden: Option<PathBuf>,
        /// Output of `classify`; recomputed when absent.
        #[arg(long)]
        computed: Option<PathBuf>,
    },
    /// Check every row of the golden non-realizability table.
    VerifyTable1 { golden1: Option<PathBuf>, golden2: Option<PathBuf> },
    /// A19 into Γ_f(A10+E8) and D19 into Γ_f(D10+E8), and no A20.
    VerifyRemark,
    /// Every (N1)+(N2) root type embeds into a rank-18 (N2) type.
    VerifyExtension,
    /// List root types of a rank with eu <= 24, or those satisfying (N2).
    RootTypes {
        #[arg(long)]
        n2: bool,
        #[arg(long)]
        rank: Option<u32>,
    },
    ClassifyOne { sigma: String },
    /// GL2-reduce (or SL2 with `--sl2`) the even form `[[a, b], [b, c]]`.
    ReduceForm {
        #[arg(allow_hyphen_values = true)]
        a: i64,
        #[arg(allow_hyphen_values = true)]
        b: i64,
        #[arg(allow_hyphen_values = true)]
        c: i64,
        #[arg(long)]
        sl2: bool,
    },
    /// Roots of a definite even lattice given as a Gram file.
    CountRoots { gram_file: PathBuf },
    DiscForm { sigma: String },
    /// An induced embedding of Γ(sigma1) into Γ(sigma2).
    Embed { sigma1: String, sigma2: String },
}

/// Exit 1: a verification found a difference.
struct Mismatch;

enum Failure {
    Mismatch,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<Mismatch> for Failure {
    fn from(_: Mismatch) -> Self {
        Failure::Mismatch
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn sigma(s: &str) -> std::result::Result<RootType, Failure> {
    s.parse().map_err(|e: Error| Failure::Usage(format!("{s:?}: {e}")))
}

/// `data/<name>` in the working directory, else the copy shipped with the sources.
fn data_path(given: Option<PathBuf>, name: &str) -> PathBuf {
    given.unwrap_or_else(|| {
        let local = Path::new("data").join(name);
        if local.exists() {
            local
        } else {
            Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
        }
    })
}

fn triple_json(t: &DataTriple) -> serde_json::Value {
    serde_json::json!({
        "sigma": t.sigma.to_string(),
        "mw": t.mw,
        "a": t.t.a.to_i64(),
        "b": t.t.b.to_i64(),
        "c": t.t.c.to_i64(),
    })
}

fn print_triples(out: &mut impl Write, triples: &[DataTriple], format: Format) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            for t in triples {
                writeln!(out, "{t}")?;
            }
        }
        Format::Json => {
            let v: Vec<_> = triples.iter().map(triple_json).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"))?;
        }
    }
    Ok(())
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    let verbose = cli.verbose;
    let started = std::time::Instant::now();
    let log = |what: &str| {
        if verbose {
            eprintln!("{what} ({:.1?})", started.elapsed());
        }
    };
    match cli.command {
        Command::Classify { format } => {
            let all = classify_all()?;
            log("classified");
            print_triples(out, &all, format)?;
        }
        Command::VerifyTable2 { golden, computed } => {
            let golden = load_table2(&data_path(golden, "table2.csv"))?;
            let computed = match computed {
                Some(p) => load_triples(&p)?,
                None => classify_all()?,
            };
            log("computed");
            let diff = compare_golden(&computed, &golden);
            for line in diff.lines() {
                writeln!(out, "{line}")?;
            }
            writeln!(out, "diff: {}", diff.len())?;
            if !diff.is_empty() {
                return Err(Mismatch.into());
            }
        }
        Command::VerifyTable1 { golden1, golden2 } => {
            let t1 = load_table1(&data_path(golden1, "table1.csv"))?;
            let t2 = load_table2(&data_path(golden2, "table2.csv"))?;
            let report = verify_table1(&t1, &t2)?;
            for r in &report.rows {
                let clause = match r.witness.as_ref().map(|w| w.clause) {
                    Some(Z2Clause::EulerBound) => "c".to_string(),
                    Some(Z2Clause::ZeroSectionAvoided) => "a".to_string(),
                    Some(Z2Clause::A1FiberAvoided(i)) => format!("b:{i}"),
                    None => "-".to_string(),
                };
                writeln!(
                    out,
                    "row {}: entry {} eu {} witness {} {}",
                    r.row,
                    mark(r.entry_ok),
                    mark(r.eu_ok),
                    clause,
                    mark(r.passed())
                )?;
            }
            let p = &report.partition;
            writeln!(
                out,
                "partition: {} = {} realized + {} table rows, {} overlapping, {} uncovered, {} outside {}",
                p.rank18_n2,
                p.realized,
                p.table1,
                p.overlap.len(),
                p.uncovered.len(),
                p.table1_outside_list.len(),
                mark(p.passed())
            )?;
            let failed = report.rows.iter().filter(|r| !r.passed()).count();
            writeln!(out, "failed rows: {failed}")?;
            if !report.passed() {
                return Err(Mismatch.into());
            }
        }
        Command::VerifyRemark => {
            let r = verify_remark()?;
            let show = |w: &Option<extremal_k3::fibration::ZWitness>| match w {
                Some(w) => format!("{:?}", w.embedding),
                None => "none".to_string(),
            };
            writeln!(out, "A19 -> A10+E8: {}", show(&r.a19))?;
            writeln!(out, "D19 -> D10+E8: {}", show(&r.d19))?;
            writeln!(out, "A20 -> A10+E8: {}", if r.a20_embeds { "embeds" } else { "none" })?;
            if !r.passed() {
                return Err(Mismatch.into());
            }
        }
        Command::VerifyExtension => {
            let r = verify_extension_lemma();
            writeln!(out, "rank 18 with (N2): {}", r.rank18_count)?;
            writeln!(out, "(N1) and (N2): {}", r.all_count)?;
            for f in &r.failures {
                writeln!(out, "no extension: {f}")?;
            }
            writeln!(out, "failures: {}", r.failures.len())?;
            if !r.failures.is_empty() {
                return Err(Mismatch.into());
            }
        }
        Command::RootTypes { n2, rank } => {
            let list = match (n2, rank) {
                (false, None) => enumerate_list_l(),
                (false, Some(r)) => enumerate_rank_eu(r),
                (true, None) => enumerate_n_lists().1,
                (true, Some(r)) => enumerate_n_lists().1.into_iter().filter(|s| rank_of(s) == r).collect(),
            };
            for s in &list {
                writeln!(out, "{s}")?;
            }
        }
        Command::ClassifyOne { sigma: s } => {
            print_triples(out, &classify_one(&sigma(&s)?)?, Format::Csv)?;
        }
        Command::ReduceForm { a, b, c, sl2 } => {
            let f = binary_form::BinaryEvenForm::new(a, b, c)?;
            let r = if sl2 { binary_form::reduce_sl2(&f) } else { binary_form::reduce_gl2(&f) };
            writeln!(out, "{} {} {}", r.a, r.b, r.c)?;
        }
        Command::CountRoots { gram_file } => {
            let text = std::fs::read_to_string(&gram_file)
                .map_err(|e| Failure::Usage(format!("{}: {e}", gram_file.display())))?;
            let lat = parse_gram(&text).map_err(|e| Failure::Usage(format!("{}: {e}", gram_file.display())))?;
            // either sign of definiteness is accepted
            let lat = if lat.rank() > 0 && lat.gram()[(0, 0)].is_positive() {
                IntegralLattice::new(lat.gram().neg())?
            } else {
                lat
            };
            writeln!(out, "{}", count_roots(&lat)?)?;
        }
        Command::DiscForm { sigma: s } => {
            let d = discriminant_form(&gram_of(&sigma(&s)?))?;
            let orders: Vec<String> = d.cyclic_orders().iter().map(u64::to_string).collect();
            writeln!(out, "orders: {}", orders.join(" "))?;
            let q: Vec<String> = (0..d.generator_count()).map(|i| d.q_value(i).to_string()).collect();
            writeln!(out, "q: {}", q.join(" "))?;
            for i in 0..d.generator_count() {
                for j in i + 1..d.generator_count() {
                    writeln!(out, "b({i},{j}): {}", d.b_value(i, j))?;
                }
            }
        }
        Command::Embed { sigma1, sigma2 } => {
            let (s1, s2) = (sigma(&sigma1)?, sigma(&sigma2)?);
            match graph_embeds(&dynkin_graph(&s1), &dynkin_graph(&s2)) {
                Some(f) => {
                    let pairs: Vec<String> = f.iter().enumerate().map(|(i, v)| format!("{i}->{v}")).collect();
                    writeln!(out, "{}", pairs.join(" "))?;
                }
                None => writeln!(out, "none")?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli
        .jobs
        .map(usize::from)
        .or_else(|| std::env::var("EXTREMAL_K3_JOBS").ok().and_then(|s| s.parse().ok()).filter(|&n| n >= 1));
    if let Some(n) = jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
