//! `heapcrys` — build heaps, generate crystals, check toggle identities, and
//! run the verification suite from the command line.
//!
//! Exit codes: 0 all assertions pass, 1 an assertion failed (witness in the
//! report), 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use heapcrys::crystal::{self, IdealCrystal, TensorCrystal};
use heapcrys::dynkin::DynkinDiagram;
use heapcrys::grassmannian;
use heapcrys::heap::{self, Heap};
use heapcrys::preproj::{self, HeapModule};
use heapcrys::report::{derive_seed, CriterionReport, RunReport};
use heapcrys::suite::{self, Bound, SuiteConfig};
use heapcrys::tableaux;
use heapcrys::toggles;
use heapcrys::weyl;

#[derive(Parser)]
#[command(name = "heapcrys", version, about = "minuscule heap crystals, two ways")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Heap construction, order ideals, DOT export
    Heap {
        #[command(subcommand)]
        cmd: HeapCmd,
    },
    /// Demazure crystals on ideals and reverse plane partitions
    Crystal {
        #[command(subcommand)]
        cmd: CrystalCmd,
    },
    /// Tableau / Gelfand-Tsetlin / RPP correspondences
    Tableaux {
        #[command(subcommand)]
        cmd: TableauxCmd,
    },
    /// Toggle and cactus group actions
    Toggles {
        #[command(subcommand)]
        cmd: TogglesCmd,
    },
    /// Preprojective algebra modules from heaps
    Module {
        #[command(subcommand)]
        cmd: ModuleCmd,
    },
    /// Submodule Grassmannian verification
    Grassmannian {
        #[command(subcommand)]
        cmd: GrassmannianCmd,
    },
    /// Run verification suites
    Suite {
        #[command(subcommand)]
        cmd: SuiteCmd,
    },
}

#[derive(Args)]
struct DiagramArgs {
    /// Named diagram spec, e.g. A4, D5, E6, A2+A1
    #[arg(long = "type")]
    type_spec: Option<String>,
    /// Path to a JSON adjacency list {"vertices":[..],"edges":[[i,j],..]}
    #[arg(long)]
    adjacency: Option<PathBuf>,
}

impl DiagramArgs {
    fn build(&self) -> Result<Arc<DynkinDiagram>, String> {
        match (&self.type_spec, &self.adjacency) {
            (Some(spec), None) => {
                DynkinDiagram::from_spec(spec).map(Arc::new).map_err(|e| e.to_string())
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("reading {}: {e}", path.display()))?;
                DynkinDiagram::from_adjacency_json(&text)
                    .map(Arc::new)
                    .map_err(|e| e.to_string())
            }
            _ => Err("give exactly one of --type or --adjacency".into()),
        }
    }
}

#[derive(Args)]
struct WordArgs {
    #[command(flatten)]
    diagram: DiagramArgs,
    /// Reduced word as comma-separated vertex labels, e.g. 3,4,2,3,1,2
    #[arg(long)]
    word: Option<String>,
    /// Stabilizer subset J as comma-separated labels; uses w = w_0^J
    #[arg(long = "J")]
    j_set: Option<String>,
}

impl WordArgs {
    /// Resolve to (diagram, word, witness).
    fn build(&self) -> Result<(Arc<DynkinDiagram>, Vec<usize>, Vec<i64>), String> {
        let d = self.diagram.build()?;
        match (&self.word, &self.j_set) {
            (Some(w), None) => {
                let word = weyl::parse_word(&d, w).map_err(|e| e.to_string())?;
                let tables = weyl::RootTables::new(&d);
                let witness = weyl::lambda_min(&tables, &word);
                Ok((d, word, witness))
            }
            (None, Some(j)) => {
                let labels: Vec<usize> = j
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|e| format!("bad J: {e}")))
                    .collect::<Result<_, String>>()?;
                let j_idx: Vec<usize> = labels
                    .iter()
                    .map(|&l| d.index_of(l).map_err(|e| e.to_string()))
                    .collect::<Result<_, String>>()?;
                let word = weyl::minimal_coset_rep(&d, &j_idx);
                let mut witness = d.zero_weight();
                for i in 0..d.rank() {
                    if !j_idx.contains(&i) {
                        witness[i] = 1;
                    }
                }
                Ok((d, word, witness))
            }
            _ => Err("give exactly one of --word or --J (they are mutually exclusive)".into()),
        }
    }

    fn heap(&self) -> Result<(Arc<Heap>, Vec<i64>), String> {
        let (d, word, witness) = self.build()?;
        let heap = Heap::build(d, &word).map_err(|e| e.to_string())?;
        Ok((Arc::new(heap), witness))
    }
}

#[derive(Subcommand)]
enum HeapCmd {
    /// Build a heap and print it as JSON
    Build {
        #[command(flatten)]
        word: WordArgs,
    },
    /// Enumerate order ideals
    Ideals {
        #[command(flatten)]
        word: WordArgs,
        /// Enumeration bound
        #[arg(long, default_value_t = 1_000_000)]
        max: usize,
        /// List the ideals instead of only counting them
        #[arg(long)]
        list: bool,
    },
    /// Export the Hasse diagram as DOT (with the 4-colouring)
    Dot {
        #[command(flatten)]
        word: WordArgs,
        /// Output path; stdout when omitted
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CrystalCmd {
    /// Generate the Demazure crystal B_w(nλ) inside (B_w(λ))^{⊗n}
    Generate {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Write the crystal graph as DOT
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Dump the elements as JSON
        #[arg(long)]
        json: bool,
    },
    /// Check that Demazure generation equals the increasing-chain image
    VerifyGravsort {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Export the crystal graph of B_w(nλ) as DOT
    Dot {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Output path; stdout when omitted
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TableauxCmd {
    /// Exhaustive GT and RPP roundtrips on SSYT(n^p) with entries ≤ m
    Roundtrip {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum TogglesCmd {
    /// Compare a toggle word with a cactus word on RPP(w_0^{stab λ}, n)
    Check {
        #[command(flatten)]
        diagram: DiagramArgs,
        /// Weight as a sum of fundamental weights, e.g. w1 or w2+w5
        #[arg(long)]
        weight: String,
        #[arg(long, default_value_t = 1)]
        n: u8,
        /// Identity to check, e.g. "t1 = s2 s1 s12"
        #[arg(long)]
        identity: String,
    },
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// Build ℂH(w) and dump arrows, signs, and the colouring
    Build {
        #[command(flatten)]
        word: WordArgs,
    },
    /// Socle diagnostics of ℂH(w)
    Socle {
        #[command(flatten)]
        word: WordArgs,
    },
}

#[derive(Subcommand)]
enum GrassmannianCmd {
    /// Verify Φ_M = Φ and SD_M = Φ over every Φ ∈ RPP(w,n), sampled seeds
    Verify {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 25)]
        seeds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report here (stdout otherwise)
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Springer fibre comparison in type A (λ = ω_p)
    Springer {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        seeds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Run every acceptance criterion once
    All {
        #[arg(long, default_value = "full")]
        bound: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report here (stdout otherwise)
        #[arg(long)]
        json: Option<PathBuf>,
        /// Include runtimes in the report (makes it non-reproducible)
        #[arg(long)]
        timings: bool,
        /// Run only the named criterion
        #[arg(long)]
        only: Option<String>,
    },
}

fn main() -> ExitCode {
    if let Ok(t) = std::env::var("HEAPCRYS_THREADS") {
        if let Ok(threads) = t.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn write_or_print(path: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|e| format!("writing {}: {e}", p.display())),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Heap { cmd } => run_heap(cmd),
        Command::Crystal { cmd } => run_crystal(cmd),
        Command::Tableaux { cmd } => run_tableaux(cmd),
        Command::Toggles { cmd } => run_toggles(cmd),
        Command::Module { cmd } => run_module(cmd),
        Command::Grassmannian { cmd } => run_grassmannian(cmd),
        Command::Suite { cmd } => run_suite(cmd),
    }
}

fn run_heap(cmd: HeapCmd) -> Result<bool, String> {
    match cmd {
        HeapCmd::Build { word } => {
            let (heap, witness) = word.heap()?;
            let json = serde_json::json!({
                "word": weyl::word_string(heap.diagram(), heap.word()),
                "witness": witness,
                "heap": heap::heap_to_json(&heap),
            });
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
            Ok(true)
        }
        HeapCmd::Ideals { word, max, list } => {
            let (heap, _) = word.heap()?;
            let ideals = heap.order_ideals(max).map_err(|e| e.to_string())?;
            if list {
                for m in &ideals {
                    println!("{:?}", heap::ideal_members(*m));
                }
            }
            println!("{}", ideals.len());
            Ok(true)
        }
        HeapCmd::Dot { word, out } => {
            let (heap, _) = word.heap()?;
            let (two, _) = heapcrys::dynkin::two_colour_and_orient(heap.diagram());
            let colours = heap::four_colouring(&heap, &two).map_err(|e| e.to_string())?;
            write_or_print(&out, &heap::heap_to_dot(&heap, Some(&colours)))?;
            Ok(true)
        }
    }
}

fn crystal_dot(tc: &TensorCrystal, elems: &std::collections::BTreeSet<Vec<u64>>) -> String {
    let index: std::collections::BTreeMap<&Vec<u64>, usize> =
        elems.iter().enumerate().map(|(k, e)| (e, k)).collect();
    let mut out = String::from("digraph crystal {\n  rankdir=TB;\n");
    for (e, k) in &index {
        let label: Vec<String> = e.iter().map(|m| format!("{:b}", m)).collect();
        out.push_str(&format!("  n{k} [label=\"{}\"];\n", label.join("|")));
    }
    let palette = ["red", "blue", "green", "orange", "purple", "brown", "cyan", "magenta"];
    for (e, k) in &index {
        for i in 0..tc.rank() {
            if let Some(f) = tc.lower(e, i) {
                if let Some(t) = index.get(&f) {
                    out.push_str(&format!(
                        "  n{k} -> n{t} [color={},label=\"{}\"];\n",
                        palette[i % palette.len()],
                        i + 1
                    ));
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

fn run_crystal(cmd: CrystalCmd) -> Result<bool, String> {
    match cmd {
        CrystalCmd::Generate { word, n, dot, json } => {
            let (heap, witness) = word.heap()?;
            let crystal = Arc::new(IdealCrystal::new(heap.clone(), witness));
            let tc = TensorCrystal::power(crystal, n);
            let set = crystal::demazure_closure(&tc, heap.word(), tc.highest(), 5_000_000)
                .map_err(|e| e.to_string())?;
            if json {
                let dump: Vec<Vec<Vec<usize>>> = set
                    .iter()
                    .map(|e| e.iter().map(|&m| heap::ideal_members(m)).collect())
                    .collect();
                println!("{}", serde_json::to_string(&dump).unwrap());
            }
            if let Some(path) = dot {
                std::fs::write(&path, crystal_dot(&tc, &set))
                    .map_err(|e| format!("writing {}: {e}", path.display()))?;
            }
            println!("{}", set.len());
            Ok(true)
        }
        CrystalCmd::VerifyGravsort { word, n } => {
            let (heap, witness) = word.heap()?;
            let crystal = Arc::new(IdealCrystal::new(heap.clone(), witness));
            let rep =
                crystal::verify_gravsort(crystal, heap.word(), n as u8, 5_000_000)
                    .map_err(|e| e.to_string())?;
            let ok = rep.equal && rep.closure_ok;
            println!(
                "{} demazure={} chains={}",
                if ok { "PASS" } else { "FAIL" },
                rep.demazure_size,
                rep.chain_image_size
            );
            Ok(ok)
        }
        CrystalCmd::Dot { word, n, out } => {
            let (heap, witness) = word.heap()?;
            let crystal = Arc::new(IdealCrystal::new(heap.clone(), witness));
            let tc = TensorCrystal::power(crystal, n);
            let set = crystal::demazure_closure(&tc, heap.word(), tc.highest(), 5_000_000)
                .map_err(|e| e.to_string())?;
            write_or_print(&out, &crystal_dot(&tc, &set))?;
            Ok(true)
        }
    }
}

fn run_tableaux(cmd: TableauxCmd) -> Result<bool, String> {
    match cmd {
        TableauxCmd::Roundtrip { m, p, n } => {
            let heap = tableaux::rectangle_heap(m, p).map_err(|e| e.to_string())?;
            let all = tableaux::all_rectangular(p, n, m as u8);
            for t in &all {
                let gt = tableaux::gt_of_tableau(t);
                gt.validate().map_err(|e| e.to_string())?;
                if tableaux::tableau_of_gt(&gt).map_err(|e| e.to_string())?.rows != t.rows {
                    println!("FAIL gt roundtrip");
                    return Ok(false);
                }
                let rpp =
                    tableaux::rpp_of_rectangular_tableau(t, &heap).map_err(|e| e.to_string())?;
                let back = tableaux::rectangular_tableau_of_rpp(&rpp, &heap, m, p)
                    .map_err(|e| e.to_string())?;
                if &back != t {
                    println!("FAIL rpp roundtrip");
                    return Ok(false);
                }
            }
            println!("PASS {} tableaux", all.len());
            Ok(true)
        }
    }
}

fn parse_weight_labels(s: &str) -> Result<Vec<usize>, String> {
    s.split('+')
        .map(|part| {
            let part = part.trim();
            part.strip_prefix(['w', 'W'])
                .and_then(|r| r.parse::<usize>().ok())
                .ok_or_else(|| format!("bad weight component {part:?}; use w<label>"))
        })
        .collect()
}

fn run_toggles(cmd: TogglesCmd) -> Result<bool, String> {
    match cmd {
        TogglesCmd::Check { diagram, weight, n, identity } => {
            let d = diagram.build()?;
            let labels = parse_weight_labels(&weight)?;
            let supp: Vec<usize> = labels
                .iter()
                .map(|&l| d.index_of(l).map_err(|e| e.to_string()))
                .collect::<Result<_, String>>()?;
            let j_set: Vec<usize> = (0..d.rank()).filter(|i| !supp.contains(i)).collect();
            let word = weyl::minimal_coset_rep(&d, &j_set);
            let heap = Arc::new(Heap::build(d.clone(), &word).map_err(|e| e.to_string())?);
            let mut witness = d.zero_weight();
            for &i in &supp {
                witness[i] = 1;
            }
            let crystal = Arc::new(IdealCrystal::new(heap, witness));
            let space = toggles::ToggleSpace::new(crystal, n);
            let check = toggles::check_identity(&space, &identity).map_err(|e| e.to_string())?;
            println!(
                "{} n={} |RPP|={}",
                if check.equal { "EQUAL" } else { "UNEQUAL" },
                n,
                space.len()
            );
            Ok(true)
        }
    }
}

fn run_module(cmd: ModuleCmd) -> Result<bool, String> {
    match cmd {
        ModuleCmd::Build { word } => {
            let (heap, _) = word.heap()?;
            let module = HeapModule::build(heap).map_err(|e| e.to_string())?;
            let dump = preproj::module_to_json(&module);
            println!("{}", serde_json::to_string_pretty(&dump).unwrap());
            Ok(true)
        }
        ModuleCmd::Socle { word } => {
            let (heap, _) = word.heap()?;
            let module = HeapModule::build(heap).map_err(|e| e.to_string())?;
            let rep = preproj::socle_and_hull_checks(&module);
            let json = serde_json::json!({
                "socle_is_minimal_beads": rep.socle_is_minimal_beads,
                "socle_labels": rep.socle_labels,
                "descent_labels": rep.descent_labels,
                "dim_vector_matches": rep.dim_vector_matches,
            });
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
            Ok(rep.socle_is_minimal_beads
                && rep.socle_labels == rep.descent_labels
                && rep.dim_vector_matches)
        }
    }
}

fn run_grassmannian(cmd: GrassmannianCmd) -> Result<bool, String> {
    match cmd {
        GrassmannianCmd::Verify { word, n, seeds, seed, json } => {
            let (heap, _) = word.heap()?;
            let module = Arc::new(HeapModule::build(heap).map_err(|e| e.to_string())?);
            let seed_list: Vec<u64> =
                (0..seeds).map(|t| derive_seed(seed, &format!("verify/{t}"))).collect();
            let rep = grassmannian::verify_main_theorem(module, n, &seed_list)
                .map_err(|e| e.to_string())?;
            let ok = rep.failures.is_empty();
            let crit = if ok {
                CriterionReport::pass("jordan-rpp-bijection")
            } else {
                let f = &rep.failures[0];
                CriterionReport::fail(
                    "jordan-rpp-bijection",
                    format!("word {} n={} seed={} Φ={:?}: {}", f.word, f.copies, f.seed, f.phi_values, f.reason),
                )
            };
            let out = RunReport { seed, bound: "cli".into(), criteria: vec![crit] };
            write_or_print(&json, &out.to_json())?;
            Ok(ok)
        }
        GrassmannianCmd::Springer { m, p, n, seeds, seed } => {
            let seed_list: Vec<u64> =
                (0..seeds).map(|t| derive_seed(seed, &format!("springer/{t}"))).collect();
            let rep = grassmannian::springer_compare(m, p, n, &seed_list)
                .map_err(|e| e.to_string())?;
            let ok = rep.failures.is_empty();
            println!(
                "{} checked={}{}",
                if ok { "PASS" } else { "FAIL" },
                rep.checked,
                rep.failures.first().map(|f| format!(" witness: {f}")).unwrap_or_default()
            );
            Ok(ok)
        }
    }
}

fn run_suite(cmd: SuiteCmd) -> Result<bool, String> {
    match cmd {
        SuiteCmd::All { bound, seed, json, timings, only } => {
            let cfg = SuiteConfig {
                bound: Bound::parse(&bound).map_err(|e| e.to_string())?,
                seed,
                timings,
            };
            let report = match only {
                Some(id) => {
                    let crit = suite::run_criterion(&id, cfg).map_err(|e| e.to_string())?;
                    RunReport {
                        seed,
                        bound: cfg.bound.as_str().to_string(),
                        criteria: vec![crit],
                    }
                }
                None => suite::run_all(cfg),
            };
            for c in &report.criteria {
                println!(
                    "{} {}{}",
                    match c.status {
                        heapcrys::report::Status::Pass => "PASS",
                        heapcrys::report::Status::Fail => "FAIL",
                    },
                    c.criterion_id,
                    c.witness.as_deref().map(|w| format!(" — {w}")).unwrap_or_default()
                );
            }
            write_or_print(&json, &report.to_json())?;
            Ok(report.all_passed())
        }
    }
}
