//! Command-line front end: argument parsing, dispatch and report rendering.
//!
//! [`run`] never touches the process; it returns the text for stdout and
//! stderr together with the exit code, so the binary stays a one-liner.

mod gram;
mod report;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use gram::{GramDocument, GRAM_SCHEMA};
pub use report::{block_json, label_json, r2_json, sigma_json, symbol_json};

use crate::acceptance::{run_criterion_seeded, CriterionResult, CRITERIA};
use crate::bass::{classify_unimodular_r2, orthogonal_decompose, pseudo_basis_and_type, OrderChain, PseudoBasis};
use crate::error::{Error, Result};
use crate::exactnum::{det_class_of, int, is_prime, parse_rational, DetClass};
use crate::global::{exists_modular, genus_enumerate, glue_lattice, sigma_report, verify_genus, Ring};
use crate::herm::{HermLattice, OrderTag, RingCtx};
use crate::localclass::classify_local;
use crate::padic::lmat_from_kmat;
use crate::symbols::{hilbert, hilbert_product, relevant_places};

fn parse_prime(s: &str) -> std::result::Result<u64, String> {
    let p: u64 = s.parse().map_err(|_| format!("{s:?} is not a positive integer"))?;
    if is_prime(p) {
        Ok(p)
    } else {
        Err(format!("{p} is not prime"))
    }
}

fn parse_rank(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("{s:?} is not a positive rank")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    Ok,
    R,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::Ok => Ring::OK,
            RingArg::R => Ring::R,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DetArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(name = "modlat", version, about = "√-p-modular hermitian lattices over Z[√-p] and O_K")]
pub struct Command {
    #[command(subcommand)]
    pub sub: Sub,
    /// Machine-readable JSON output instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Exit with status 1 when the answer is negative.
    #[arg(long, global = true)]
    pub strict: bool,
    /// p-adic working precision.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u32).range(4..=4096))]
    pub precision: u32,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Sub {
    /// Does a √-p-modular lattice with these invariants exist?
    Exists {
        #[arg(long, value_parser = parse_prime)]
        p: u64,
        #[arg(long, value_parser = parse_rank)]
        n: usize,
        #[arg(long, value_enum)]
        ring: RingArg,
        #[arg(long, value_enum, default_value = "1")]
        det: DetArg,
    },
    /// List the genera.
    Genera {
        #[arg(long, value_parser = parse_prime)]
        p: u64,
        #[arg(long, value_parser = parse_rank)]
        n: usize,
        #[arg(long, value_enum)]
        ring: RingArg,
    },
    /// Genus counts for the superspecial dictionary.
    Sigma {
        #[arg(long, value_parser = parse_prime)]
        p: u64,
        #[arg(long, value_parser = parse_rank)]
        n: usize,
    },
    /// Classify a local Gram matrix.
    ClassifyLocal {
        #[arg(long)]
        gram: String,
    },
    /// Orthogonal decomposition of a perfect local Gram matrix.
    Decompose {
        #[arg(long)]
        gram: String,
    },
    /// Explicit representatives of the genera, verified.
    Glue {
        #[arg(long, value_parser = parse_prime)]
        p: u64,
        #[arg(long, value_parser = parse_rank)]
        n: usize,
        #[arg(long, value_enum)]
        ring: RingArg,
        /// Only the genus at this position of the `genera` list.
        #[arg(long)]
        index: Option<usize>,
    },
    /// Hilbert symbols (a, b) at all relevant places.
    Symbols {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Run criteria on separate threads.
        #[arg(long)]
        parallel: bool,
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
    },
}

/// Parses and validates arguments (the first item is the program name).
pub fn parse_command<I, T>(argv: I) -> Result<Command>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cmd = Command::try_parse_from(argv).map_err(|e| {
        let text = e.to_string();
        Error::UsageError(text.trim().trim_start_matches("error: ").to_string())
    })?;
    match &cmd.sub {
        Sub::Exists { p, ring: RingArg::R, .. } if p % 4 != 3 => {
            Err(Error::UsageError(format!("--ring r needs p ≡ 3 (mod 4); Z[√-{p}] is the maximal order")))
        }
        Sub::Symbols { a, b } => {
            for x in [a, b] {
                let q = parse_rational(x).map_err(|e| Error::UsageError(e.to_string()))?;
                if q == int(0) {
                    return Err(Error::UsageError("Hilbert symbols need nonzero rationals".into()));
                }
            }
            Ok(cmd)
        }
        Sub::Selftest { criterion: Some(c), .. } if !(1..=8).contains(c) => Err(Error::UsageError("criteria are numbered 1 to 8".into())),
        _ => Ok(cmd),
    }
}

/// Text for the two output streams and the exit status.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// A finished report: JSON payload, table text and whether the answer was negative.
struct Report {
    json: Value,
    table: String,
    negative: bool,
}

fn emit(cmd: &Command, r: Report) -> Outcome {
    let code = if r.negative && cmd.strict { 1 } else { 0 };
    let stdout = if cmd.json { format!("{}\n", serde_json::to_string_pretty(&r.json).expect("json")) } else { r.table };
    Outcome { stdout, stderr: String::new(), code }
}

fn emit_error(json: bool, e: &Error) -> Outcome {
    let stdout = if json {
        format!("{}\n", serde_json::to_string_pretty(&json!({ "reason": e.code(), "message": e.to_string() })).expect("json"))
    } else {
        String::new()
    };
    Outcome { stdout, stderr: format!("error [{}]: {e}\n", e.code()), code: e.exit_code() }
}

/// Parses, dispatches and renders; help and version requests exit with 0.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    if let Err(e) = Command::try_parse_from(&args) {
        if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) {
            return Outcome { stdout: e.to_string(), stderr: String::new(), code: 0 };
        }
    }
    let wants_json = args.iter().any(|a| a == "--json");
    let cmd = match parse_command(&args) {
        Ok(c) => c,
        Err(e) => return emit_error(wants_json, &e),
    };
    match dispatch(&cmd) {
        Ok(r) => emit(&cmd, r),
        Err(e) => emit_error(cmd.json, &e),
    }
}

fn read_document(path: &str) -> Result<GramDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::IOError(format!("{path}: {e}")))?;
    GramDocument::parse(&text)
}

fn det_class(p: u64, d: DetArg) -> Result<DetClass> {
    match d {
        DetArg::One => Ok(DetClass::identity(p)),
        DetArg::Two => det_class_of(&int(2), p),
    }
}

fn dispatch(cmd: &Command) -> Result<Report> {
    match &cmd.sub {
        Sub::Exists { p, n, ring, det } => {
            let d = det_class(*p, *det)?;
            let ring = Ring::from(*ring);
            let yes = exists_modular(*p, *n, ring, &d)?;
            Ok(Report {
                json: json!({ "command": "exists", "p": report::num(p), "n": report::num(n), "ring": ring.name(), "det": d.to_string(), "exists": yes }),
                table: format!("p={p} n={n} ring={ring} det={d}: {}\n", if yes { "exists" } else { "does not exist" }),
                negative: !yes,
            })
        }
        Sub::Genera { p, n, ring } => {
            let ring = Ring::from(*ring);
            let list = genus_enumerate(*p, *n, ring);
            let mut table = format!("{} genera for p={p} n={n} ring={ring}\n", list.len());
            for (i, s) in list.iter().enumerate() {
                let _ = writeln!(table, "  #{i}: det={} at_p={} at_2={} norm={}", s.det, s.at_p.kind, s.at_2, s.norm);
            }
            Ok(Report {
                json: json!({ "command": "genera", "p": report::num(p), "n": report::num(n), "ring": ring.name(), "count": report::num(list.len()), "genera": list.iter().map(symbol_json).collect::<Vec<_>>() }),
                table,
                negative: list.is_empty(),
            })
        }
        Sub::Sigma { p, n } => {
            let r = sigma_report(*p, *n)?;
            let mut json = sigma_json(&r);
            json["command"] = "sigma".into();
            let sigma2 = r.sigma2_count.map_or("n/a".to_string(), |c| c.to_string());
            let det = r.forced_det.as_ref().map_or("none".to_string(), |d| d.to_string());
            Ok(Report {
                json,
                table: format!("p={p} n={n}: nonempty={} det={det} sigma1={} sigma2={sigma2} total={}\n", r.nonempty, r.sigma1_count, r.total),
                negative: !r.nonempty,
            })
        }
        Sub::ClassifyLocal { gram } => classify_document(&read_document(gram)?),
        Sub::Decompose { gram } => decompose_document(&read_document(gram)?),
        Sub::Glue { p, n, ring, index } => glue(cmd, *p, *n, Ring::from(*ring), *index),
        Sub::Symbols { a, b } => {
            let (qa, qb) = (parse_rational(a)?, parse_rational(b)?);
            let places = relevant_places(&qa, &qb)?;
            let product = hilbert_product(&qa, &qb)?;
            let mut table = format!("Hilbert symbols ({a}, {b}):\n");
            let mut entries = Vec::new();
            for pl in &places {
                let s = hilbert(&qa, &qb, *pl);
                let _ = writeln!(table, "  at {pl}: {:+}", s.value());
                entries.push(json!({ "place": pl.to_string(), "value": report::sign(s) }));
            }
            let _ = writeln!(table, "  product: {:+}", product.value());
            Ok(Report { json: json!({ "command": "symbols", "a": a, "b": b, "places": entries, "product": report::sign(product) }), table, negative: false })
        }
        Sub::Selftest { parallel, criterion } => Ok(selftest(cmd.seed, *parallel, *criterion)),
    }
}

fn order_indices(tags: &[OrderTag]) -> Vec<usize> {
    tags.iter().map(|&t| usize::from(t == OrderTag::O)).collect()
}

/// The pseudo-basis, ambient Gram matrix and order chain of a local document.
fn local_setup(doc: &GramDocument) -> Result<(PseudoBasis, crate::padic::LMat)> {
    let l = doc.to_lattice()?;
    let (chain, idx) = match l.ctx() {
        RingCtx::LocalR2 { alg } => (OrderChain::conductor_one(alg.clone()), order_indices(l.tags())),
        RingCtx::LocalOK { alg } => (OrderChain::new(alg.clone(), 0, vec![0])?, vec![0; l.rank()]),
        _ => return Err(crate::error::invalid("a local document (with a prime) is required")),
    };
    let h = lmat_from_kmat(&chain.alg, l.gram())?;
    Ok((PseudoBasis::standard(chain, idx)?, h))
}

fn classify_document(doc: &GramDocument) -> Result<Report> {
    let l = doc.to_lattice()?;
    match l.ctx() {
        RingCtx::LocalOK { .. } => {
            let label = classify_local(&l)?;
            Ok(Report {
                json: json!({ "command": "classify-local", "class": label_json(&label) }),
                table: format!("{} (rank {})\n", label.kind, label.rank),
                negative: false,
            })
        }
        RingCtx::LocalR2 { .. } => {
            let (pb, h) = local_setup(doc)?;
            let c = classify_unimodular_r2(&pb, &h)?;
            Ok(Report {
                json: json!({ "command": "classify-local", "class": r2_json(&c) }),
                table: format!("{c} (r={}, s={}, odd norms: {})\n", c.r, c.s, c.odd_diag),
                negative: false,
            })
        }
        _ => Err(crate::error::invalid("a local document (with a prime) is required")),
    }
}

fn decompose_document(doc: &GramDocument) -> Result<Report> {
    let (pb, h) = local_setup(doc)?;
    let (out, blocks) = orthogonal_decompose(&pb, &h)?;
    let mut table = format!("{} isotypic blocks\n", blocks.len());
    for b in &blocks {
        let rows: Vec<Vec<(String, String)>> = b
            .gram
            .iter()
            .map(|r| r.iter().map(|e| e.to_kelem()).map(|k| (crate::exactnum::format_rational(&k.a), crate::exactnum::format_rational(&k.b))).collect())
            .collect();
        let _ = writeln!(table, "order index {} (pieces {:?}):\n{}", b.order_index, b.pieces, report::matrix_table(&rows));
    }
    let mut json = json!({ "command": "decompose", "blocks": blocks.iter().map(block_json).collect::<Vec<_>>() });
    if pb.chain.levels == [1, 0] && pb.chain.base == 1 {
        let (_, t) = pseudo_basis_and_type(&pb.chain, &out.z_generators())?;
        json["type"] = json!({ "r": report::num(t.r), "s": report::num(t.s) });
        let _ = writeln!(table, "type (r, s) = ({}, {})", t.r, t.s);
    }
    Ok(Report { json, table, negative: false })
}

fn lattice_rows(l: &HermLattice) -> Vec<Vec<(String, String)>> {
    GramDocument::from_lattice(l, 0).entries.into_iter().map(|r| r.into_iter().map(|[a, b]| (a, b)).collect()).collect()
}

fn glue(cmd: &Command, p: u64, n: usize, ring: Ring, index: Option<usize>) -> Result<Report> {
    let all = genus_enumerate(p, n, ring);
    let chosen: Vec<_> = match index {
        Some(i) => vec![all.get(i).cloned().ok_or_else(|| Error::NoSuchGenus(format!("there are {} genera, no #{i}", all.len())))?],
        None => all,
    };
    let mut items = Vec::new();
    let mut table = String::new();
    let mut all_ok = true;
    for s in &chosen {
        let l = glue_lattice(p, s)?;
        let check = verify_genus(&l, s);
        all_ok &= check.passed();
        let doc = GramDocument::from_lattice(&l, cmd.precision);
        let mut item = json!({ "symbol": symbol_json(s), "gram": serde_json::to_value(&doc).expect("json"), "verified": check.passed() });
        if let Some(f) = &check.failure {
            item["reason"] = f.code().into();
        }
        items.push(item);
        let tags: Vec<String> = l.tags().iter().map(|t| t.to_string()).collect();
        let _ = writeln!(table, "{s}\n  tags {}  verified: {}\n{}", tags.join(" "), check.passed(), report::matrix_table(&lattice_rows(&l)));
    }
    if chosen.is_empty() {
        table.push_str("no genera\n");
    }
    if !all_ok {
        return Err(Error::ConstructionFailed("a representative failed verification".into()));
    }
    Ok(Report { json: json!({ "command": "glue", "p": report::num(p), "n": report::num(n), "ring": ring.name(), "genera": items }), table, negative: chosen.is_empty() })
}

fn selftest(seed: Option<u64>, parallel: bool, only: Option<u8>) -> Report {
    let ids: Vec<u8> = match only {
        Some(c) => vec![c],
        None => CRITERIA.iter().map(|c| c.0).collect(),
    };
    let results: Vec<CriterionResult> = if parallel {
        std::thread::scope(|s| {
            let handles: Vec<_> = ids.iter().map(|&id| s.spawn(move || run_criterion_seeded(id, seed))).collect();
            handles.into_iter().map(|h| h.join().expect("criterion thread panicked")).collect()
        })
    } else {
        ids.iter().map(|&id| run_criterion_seeded(id, seed)).collect()
    };
    let passed = results.iter().all(|r| r.passed);
    let table: String = results.iter().map(|r| format!("{r}\n")).collect();
    let json = json!({
        "command": "selftest",
        "passed": passed,
        "criteria": results.iter().map(|r| json!({
            "id": report::num(r.id),
            "name": r.name,
            "passed": r.passed,
            "detail": r.detail,
            "seconds": format!("{:.3}", r.elapsed.as_secs_f64()),
        })).collect::<Vec<_>>(),
    });
    Report { json, table, negative: !passed }
}
