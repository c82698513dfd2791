//! Command-line front end. Every pipeline in the library is a subcommand;
//! inputs are presentation files or bundled corpus names; exit codes keep
//! refutation, bad input, and budget exhaustion apart:
//!
//! * 0: success, or the certificate/check is valid
//! * 1: the computation finished and refuted the claim
//! * 2: input error (unparseable file, unknown name, bad arguments)
//! * 3: a budget ran out before the question was decided

use clap::{Parser, Subcommand, ValueEnum};
use gpairs::enumerator::{
    commutator_subgroup_table, is_normal, low_index_subgroups_partial, normal_core_quotient,
    reidemeister_schreier, subgroup_table, EnumeratorError,
};
use gpairs::grothendieck::{
    diagonal_image_check, fibre_index, fibre_product, nested_chain_certify, pt_certify,
    FibreIndex, GrothendieckError,
};
use gpairs::homology::{
    coinvariants, five_term_check, h1, h2_certificate, superperfect_certificate, HomologyError,
};
use gpairs::presentations::{corpus, parse, parse_word, tietze, Presentation, Word};
use gpairs::recipes::{self, RecipeError};
use gpairs::spectrum::{
    finite_quotients, no_finite_quotients_certificate, quotient_order_primes, spectra_equal,
    NfqStatus, SpectrumError,
};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;
use std::process::exit;

#[derive(Parser)]
#[command(
    name = "gpairs",
    version,
    about = "Exact computation with finitely presented groups",
    long_about = "Exact computation with finitely presented groups: homology \
certificates, coset enumeration, finite-quotient spectra, and fibre-product \
certification.\n\nWherever a command takes an INPUT it accepts either a path \
to a presentation file or the name of a bundled presentation (see `gpairs \
corpus list`)."
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// First homology (abelianization) invariants
    H1 {
        /// Presentation file or corpus name
        input: String,
    },
    /// Second-homology vanishing certificate read off the presentation shape
    H2 { input: String },
    /// Certificate of trivial first homology together with vanishing second
    Superperfect { input: String },
    /// Enumerate cosets of the subgroup generated by the given words
    Cosets {
        input: String,
        /// Subgroup generator word, repeatable; none means the trivial subgroup
        #[arg(short, long = "word")]
        words: Vec<String>,
        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,
    },
    /// Present a finite-index subgroup on its Schreier generators
    Rs {
        input: String,
        #[arg(short, long = "word")]
        words: Vec<String>,
        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,
    },
    /// Coset table and presentation of the commutator subgroup (finite h1 only)
    Commutator {
        input: String,
        /// Cap on the abelianization order
        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,
    },
    /// Coinvariants of the abelianized kernel of a normal subgroup
    Coinvariants {
        input: String,
        #[arg(short, long = "word")]
        words: Vec<String>,
        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,
    },
    /// Five-term exact-sequence consistency report for a normal subgroup
    FiveTerm {
        input: String,
        #[arg(short, long = "word")]
        words: Vec<String>,
        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,
    },
    /// Conjugacy classes of subgroups of index at most the level
    Lis {
        input: String,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
        #[arg(long, default_value_t = 10_000_000)]
        max_nodes: usize,
    },
    /// Isomorphism classes of finite quotients of order at most the level
    Spectrum {
        input: String,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
        #[arg(long, default_value_t = 10_000_000)]
        max_nodes: usize,
    },
    /// Compare the finite-quotient spectra of two presentations
    SpectraEqual {
        first: String,
        second: String,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
        #[arg(long, default_value_t = 10_000_000)]
        max_nodes: usize,
    },
    /// Primes dividing element orders across the finite-quotient spectrum
    Primes {
        input: String,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
        #[arg(long, default_value_t = 10_000_000)]
        max_nodes: usize,
    },
    /// Certificate that no nontrivial quotient of order at most the level exists
    Nfq {
        input: String,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
        #[arg(long, default_value_t = 100_000_000)]
        max_nodes: usize,
    },
    /// Certify the fibre product of G with itself over G/<<S>>
    CertifyPt {
        /// Base presentation G: file or corpus name
        g: String,
        /// Relator set S: file or corpus name; its relators are taken and its
        /// generator list must match G's
        s: String,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
        #[arg(long, default_value_t = 100_000_000)]
        max_nodes: usize,
    },
    /// Fibre-product generators, quotient order, and diagonal-image check
    Fibre {
        g: String,
        s: String,
        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,
    },
    /// Stepwise certificate along a chain of nested relator sets
    Chain {
        g: String,
        /// Relator-set sources, innermost first; each must contain the previous
        #[arg(required = true, num_args = 1..)]
        sets: Vec<String>,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
        #[arg(long, default_value_t = 100_000_000)]
        max_nodes: usize,
    },
    /// Apply seeded random Tietze moves and print the rewritten presentation
    Tietze {
        input: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        moves: usize,
    },
    /// List bundled presentations or print one
    Corpus {
        #[command(subcommand)]
        which: CorpusCmd,
    },
    /// Run a named end-to-end computation with frozen expected outcomes
    Recipe {
        /// Recipe name; see --list
        name: Option<String>,
        /// List the available recipe names
        #[arg(long)]
        list: bool,
        /// Override the recipe's default level, where it has one
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        level: Option<u64>,
        #[arg(long)]
        max_cosets: Option<usize>,
        #[arg(long)]
        max_nodes: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Names of the bundled presentations and parameterized families
    List,
    /// Print a bundled presentation
    Show { name: String },
}

fn main() {
    let cli = Cli::parse();
    let fmt = cli.format;
    match cli.cmd {
        Cmd::H1 { input } => cmd_h1(fmt, &input),
        Cmd::H2 { input } => cmd_h2(fmt, &input),
        Cmd::Superperfect { input } => cmd_superperfect(fmt, &input),
        Cmd::Cosets { input, words, max_cosets } => cmd_cosets(fmt, &input, &words, max_cosets),
        Cmd::Rs { input, words, max_cosets } => cmd_rs(fmt, &input, &words, max_cosets),
        Cmd::Commutator { input, max_cosets } => cmd_commutator(fmt, &input, max_cosets),
        Cmd::Coinvariants { input, words, max_cosets } => {
            cmd_coinvariants(fmt, &input, &words, max_cosets)
        }
        Cmd::FiveTerm { input, words, max_cosets } => {
            cmd_five_term(fmt, &input, &words, max_cosets)
        }
        Cmd::Lis { input, level, max_nodes } => cmd_lis(fmt, &input, level as usize, max_nodes),
        Cmd::Spectrum { input, level, max_nodes } => {
            cmd_spectrum(fmt, &input, level as usize, max_nodes)
        }
        Cmd::SpectraEqual { first, second, level, max_nodes } => {
            cmd_spectra_equal(fmt, &first, &second, level as usize, max_nodes)
        }
        Cmd::Primes { input, level, max_nodes } => {
            cmd_primes(fmt, &input, level as usize, max_nodes)
        }
        Cmd::Nfq { input, level, max_nodes } => cmd_nfq(fmt, &input, level as usize, max_nodes),
        Cmd::CertifyPt { g, s, level, max_nodes } => {
            cmd_certify_pt(fmt, &g, &s, level as usize, max_nodes)
        }
        Cmd::Fibre { g, s, max_cosets } => cmd_fibre(fmt, &g, &s, max_cosets),
        Cmd::Chain { g, sets, level, max_nodes } => {
            cmd_chain(fmt, &g, &sets, level as usize, max_nodes)
        }
        Cmd::Tietze { input, seed, moves } => cmd_tietze(fmt, &input, seed, moves),
        Cmd::Corpus { which } => match which {
            CorpusCmd::List => cmd_corpus_list(fmt),
            CorpusCmd::Show { name } => cmd_corpus_show(fmt, &name),
        },
        Cmd::Recipe { name, list, level, max_cosets, max_nodes } => {
            if list {
                cmd_recipe_list(fmt)
            } else {
                let name = name.unwrap_or_else(|| die(2, "recipe name required (or --list)"));
                let b = recipes::Budgets {
                    level: level.map(|l| l as usize),
                    max_cosets,
                    max_nodes,
                };
                cmd_recipe(fmt, &name, &b)
            }
        }
    }
}

fn die(code: i32, msg: impl std::fmt::Display) -> ! {
    eprintln!("error: {msg}");
    exit(code)
}

fn code_enum(e: &EnumeratorError) -> i32 {
    match e {
        EnumeratorError::NodeBudgetExceeded { .. }
        | EnumeratorError::IncompleteTable
        | EnumeratorError::AbelianizationTooLarge { .. } => 3,
        EnumeratorError::InfiniteAbelianization => 1,
        _ => 2,
    }
}

fn code_spectrum(e: &SpectrumError) -> i32 {
    match e {
        SpectrumError::OrderCapExceeded { .. } | SpectrumError::IncompleteSpectrum { .. } => 3,
        SpectrumError::Enumerator(inner) => code_enum(inner),
        _ => 2,
    }
}

fn code_groth(e: &GrothendieckError) -> i32 {
    match e {
        GrothendieckError::QuotientNotFiniteAtBudget { .. }
        | GrothendieckError::IncompleteEnumeration { .. } => 3,
        GrothendieckError::Enumerator(inner) => code_enum(inner),
        GrothendieckError::Spectrum(inner) => code_spectrum(inner),
        _ => 2,
    }
}

fn code_homology(e: &HomologyError) -> i32 {
    match e {
        HomologyError::Enumerator(inner) => code_enum(inner),
        _ => 2,
    }
}

/// Loaded presentation plus its declared torsion primes, when bundled.
struct Input {
    presentation: Presentation,
    pi0: Option<BTreeSet<u64>>,
}

/// A path that exists is parsed as a file; anything else is looked up in the
/// bundled corpus.
fn load(src: &str) -> Input {
    if Path::new(src).exists() {
        let text = std::fs::read_to_string(src).unwrap_or_else(|e| die(2, format!("{src}: {e}")));
        let f = parse(&text).unwrap_or_else(|e| die(2, format!("{src}: {e}")));
        Input { presentation: f.presentation, pi0: f.pi0 }
    } else {
        match corpus::get(src) {
            Ok(e) => Input { presentation: e.presentation, pi0: e.pi0 },
            Err(e) => die(
                2,
                format!("{src}: not a file, and {e}; `gpairs corpus list` shows bundled names"),
            ),
        }
    }
}

/// Loads a relator set for the fibre-product commands: a presentation whose
/// generator list must match the base exactly, contributing its relators.
fn load_relators(g: &Presentation, src: &str) -> Vec<Word> {
    let i = load(src);
    if i.presentation.generator_names() != g.generator_names() {
        die(
            2,
            format!(
                "{src}: generators {:?} do not match the base presentation's {:?}",
                i.presentation.generator_names(),
                g.generator_names()
            ),
        );
    }
    i.presentation.relators().to_vec()
}

fn parse_words(p: &Presentation, words: &[String]) -> Vec<Word> {
    let names: Vec<String> = p.generator_names().iter().map(|s| s.to_string()).collect();
    words
        .iter()
        .map(|w| parse_word(&names, w).unwrap_or_else(|e| die(2, format!("word {w:?}: {e}"))))
        .collect()
}

/// Prints one line to stdout; a consumer that closed the pipe ends the run
/// quietly instead of panicking.
fn say(s: impl std::fmt::Display) {
    use std::io::Write;
    if writeln!(std::io::stdout(), "{s}").is_err() {
        exit(0);
    }
}

fn emit(fmt: Format, v: Value, text: String) {
    match fmt {
        Format::Json => say(serde_json::to_string_pretty(&v).expect("serializable")),
        Format::Text => say(text),
    }
}

fn cmd_h1(fmt: Format, input: &str) -> ! {
    let p = load(input).presentation;
    let inv = h1(&p);
    emit(
        fmt,
        json!({"h1": inv, "display": inv.to_string()}),
        format!("h1 = {inv}"),
    );
    exit(0)
}

fn cmd_h2(fmt: Format, input: &str) -> ! {
    let p = load(input).presentation;
    let cert = h2_certificate(&p);
    emit(
        fmt,
        json!({"h2": cert}),
        format!("h2 certificate: {} (upper bound rank {})", cert.status, cert.upper_bound_rank),
    );
    exit(if cert.is_zero() { 0 } else { 1 })
}

fn cmd_superperfect(fmt: Format, input: &str) -> ! {
    let p = load(input).presentation;
    let cert = superperfect_certificate(&p);
    let inv = h1(&p);
    emit(
        fmt,
        json!({"h1": inv, "h1_trivial": cert.h1_trivial, "h2": cert.h2_cert, "valid": cert.is_valid()}),
        format!(
            "h1 = {inv}\nh2 certificate: {}\nsuperperfect: {}",
            cert.h2_cert.status,
            if cert.is_valid() { "CERTIFIED" } else { "NOT CERTIFIED" }
        ),
    );
    exit(if cert.is_valid() { 0 } else { 1 })
}

fn cmd_cosets(fmt: Format, input: &str, words: &[String], max_cosets: usize) -> ! {
    let p = load(input).presentation;
    let subgroup = parse_words(&p, words);
    let t = subgroup_table(&p, &subgroup, max_cosets)
        .unwrap_or_else(|e| die(code_enum(&e), format!("{input}: {e}")));
    emit(
        fmt,
        json!({"n_cosets": t.n_cosets(), "complete": t.is_complete(), "table": t.to_json()}),
        format!(
            "{} cosets, {}",
            t.n_cosets(),
            if t.is_complete() { "complete" } else { "incomplete at this budget" }
        ),
    );
    exit(if t.is_complete() { 0 } else { 3 })
}

fn cmd_rs(fmt: Format, input: &str, words: &[String], max_cosets: usize) -> ! {
    let p = load(input).presentation;
    let subgroup = parse_words(&p, words);
    let t = subgroup_table(&p, &subgroup, max_cosets)
        .unwrap_or_else(|e| die(code_enum(&e), format!("{input}: {e}")));
    if !t.is_complete() {
        die(3, format!("{input}: enumeration incomplete within {max_cosets} cosets"));
    }
    let rs = reidemeister_schreier(&t)
        .unwrap_or_else(|e| die(code_enum(&e), format!("{input}: {e}")));
    let inv = h1(&rs);
    emit(
        fmt,
        json!({
            "index": t.n_cosets(),
            "presentation": rs.serialize(),
            "n_gens": rs.n_gens(),
            "n_relators": rs.relators().len(),
            "h1": inv,
        }),
        format!("# index {}, subgroup h1 = {inv}\n{}", t.n_cosets(), rs.serialize()),
    );
    exit(0)
}

fn cmd_commutator(fmt: Format, input: &str, max_cosets: usize) -> ! {
    let p = load(input).presentation;
    let t = commutator_subgroup_table(&p, max_cosets)
        .unwrap_or_else(|e| die(code_enum(&e), format!("{input}: {e}")));
    let rs = reidemeister_schreier(&t)
        .unwrap_or_else(|e| die(code_enum(&e), format!("{input}: {e}")));
    let inv = h1(&rs);
    emit(
        fmt,
        json!({
            "index": t.n_cosets(),
            "presentation": rs.serialize(),
            "h1": inv,
        }),
        format!("# commutator subgroup: index {}, h1 = {inv}\n{}", t.n_cosets(), rs.serialize()),
    );
    exit(0)
}

fn cmd_coinvariants(fmt: Format, input: &str, words: &[String], max_cosets: usize) -> ! {
    let p = load(input).presentation;
    let subgroup = parse_words(&p, words);
    let t = subgroup_table(&p, &subgroup, max_cosets)
        .unwrap_or_else(|e| die(code_enum(&e), format!("{input}: {e}")));
    let inv = coinvariants(&p, &t)
        .unwrap_or_else(|e| die(code_enum(&e), format!("{input}: {e}")));
    emit(
        fmt,
        json!({"index": t.n_cosets(), "coinvariants": inv, "display": inv.to_string()}),
        format!("coinvariants = {inv}"),
    );
    exit(0)
}

fn cmd_five_term(fmt: Format, input: &str, words: &[String], max_cosets: usize) -> ! {
    let p = load(input).presentation;
    let subgroup = parse_words(&p, words);
    let t = subgroup_table(&p, &subgroup, max_cosets)
        .unwrap_or_else(|e| die(code_enum(&e), format!("{input}: {e}")));
    if !t.is_complete() {
        die(3, format!("{input}: enumeration incomplete within {max_cosets} cosets"));
    }
    match is_normal(&t) {
        Ok(true) => {}
        Ok(false) => die(2, format!("{input}: the subgroup is not normal")),
        Err(e) => die(code_enum(&e), format!("{input}: {e}")),
    }
    let q = normal_core_quotient(&t)
        .unwrap_or_else(|e| die(code_enum(&e), format!("{input}: {e}")));
    let rep = five_term_check(&p, &t, &q)
        .unwrap_or_else(|e| die(code_homology(&e), format!("{input}: {e}")));
    let mut text = String::new();
    let _ = writeln!(text, "h1(G) = {}", rep.h1_g());
    let _ = writeln!(text, "h1(Q) = {}", rep.h1_q());
    let _ = writeln!(text, "h1(G) mod image of K = {}", rep.h1_g_mod_image());
    let _ = writeln!(text, "coinvariants of K = {}", rep.coinvariants());
    let _ = writeln!(text, "h2(Q) certificate: {}", rep.h2_q().status);
    let _ = writeln!(text, "quotient isomorphism: {}", rep.quotient_isomorphism());
    let _ = writeln!(text, "left embedding: {}", rep.left_embedding());
    let _ = write!(text, "five-term: {}", if rep.passes() { "PASS" } else { "FAIL" });
    emit(fmt, rep.to_json(), text);
    exit(if rep.passes() { 0 } else { 1 })
}

fn cmd_lis(fmt: Format, input: &str, level: usize, max_nodes: usize) -> ! {
    let p = load(input).presentation;
    let (tables, complete) = low_index_subgroups_partial(&p, level, max_nodes)
        .unwrap_or_else(|e| die(code_enum(&e), format!("{input}: {e}")));
    let mut by_index: Vec<usize> = vec![0; level + 1];
    for t in &tables {
        by_index[t.n_cosets()] += 1;
    }
    let mut text = format!(
        "{} subgroup classes of index <= {level}{}",
        tables.len(),
        if complete { "" } else { " (search truncated by the node budget)" }
    );
    for (i, n) in by_index.iter().enumerate().skip(1) {
        if *n > 0 {
            let _ = write!(text, "\n  index {i}: {n}");
        }
    }
    emit(
        fmt,
        json!({
            "level": level,
            "complete": complete,
            "count": tables.len(),
            "by_index": (1..=level).map(|i| json!({"index": i, "classes": by_index[i]})).collect::<Vec<_>>(),
            "tables": tables.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
        }),
        text,
    );
    exit(if complete { 0 } else { 3 })
}

fn cmd_spectrum(fmt: Format, input: &str, level: usize, max_nodes: usize) -> ! {
    let p = load(input).presentation;
    let rep = finite_quotients(&p, level, max_nodes)
        .unwrap_or_else(|e| die(code_spectrum(&e), format!("{input}: {e}")));
    let mut text = format!(
        "spectrum to level {level}: {} classes{}",
        rep.quotients().len(),
        if rep.is_complete() { "" } else { " (incomplete at this budget)" }
    );
    for e in rep.quotients() {
        let fp = e.fingerprint();
        let _ = write!(
            text,
            "\n  order {}: h1 = {}{}, kernels {}",
            fp.order(),
            fp.abelianization(),
            if fp.is_perfect() { ", perfect" } else { "" },
            e.count(),
        );
    }
    emit(fmt, rep.to_json(), text);
    exit(if rep.is_complete() { 0 } else { 3 })
}

fn cmd_spectra_equal(fmt: Format, first: &str, second: &str, level: usize, max_nodes: usize) -> ! {
    let p1 = load(first).presentation;
    let p2 = load(second).presentation;
    let cmp = spectra_equal(&p1, &p2, level, max_nodes)
        .unwrap_or_else(|e| die(code_spectrum(&e), format!("{e}")));
    let text = if cmp.is_equal() {
        format!(
            "spectra agree to level {level}{}",
            if cmp.fingerprint_only() { " (largest classes matched by fingerprint only)" } else { "" }
        )
    } else {
        let w = cmp.witness().expect("unequal comparison carries a witness");
        format!("spectra differ at order {}: {}", w.order, w.detail)
    };
    emit(fmt, cmp.to_json(), text);
    exit(if cmp.is_equal() { 0 } else { 1 })
}

fn cmd_primes(fmt: Format, input: &str, level: usize, max_nodes: usize) -> ! {
    let loaded = load(input);
    let rep = finite_quotients(&loaded.presentation, level, max_nodes)
        .unwrap_or_else(|e| die(code_spectrum(&e), format!("{input}: {e}")));
    if !rep.is_complete() {
        die(3, format!("{input}: spectrum incomplete within {max_nodes} nodes"));
    }
    let primes = quotient_order_primes(&rep);
    let declared = loaded.pi0;
    let mut text = format!(
        "primes of element orders to level {level}: {{{}}}",
        primes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
    );
    if let Some(d) = &declared {
        let _ = write!(
            text,
            "\ndeclared torsion primes: {{{}}}",
            d.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
        );
    }
    emit(
        fmt,
        json!({
            "level": level,
            "primes": primes.iter().copied().collect::<Vec<_>>(),
            "declared": declared.map(|d| d.iter().copied().collect::<Vec<_>>()),
        }),
        text,
    );
    exit(0)
}

fn cmd_nfq(fmt: Format, input: &str, level: usize, max_nodes: usize) -> ! {
    let p = load(input).presentation;
    let cert = no_finite_quotients_certificate(&p, level, max_nodes)
        .unwrap_or_else(|e| die(code_spectrum(&e), format!("{input}: {e}")));
    let (text, code) = match cert.status() {
        NfqStatus::Valid => {
            (format!("valid: no nontrivial quotient of order <= {level}"), 0)
        }
        NfqStatus::Refuted { witness_index } => (
            format!("refuted: a proper subgroup of index {witness_index} exists"),
            1,
        ),
        NfqStatus::Inconclusive => (
            format!("inconclusive: search exceeded {max_nodes} nodes"),
            3,
        ),
    };
    emit(fmt, cert.to_json(), text);
    exit(code)
}

fn cmd_certify_pt(fmt: Format, g_src: &str, s_src: &str, level: usize, max_nodes: usize) -> ! {
    let g = load(g_src).presentation;
    let s = load_relators(&g, s_src);
    let cert = pt_certify(&g, &s, level, max_nodes)
        .unwrap_or_else(|e| die(code_groth(&e), format!("{e}")));
    if matches!(cert.nfq().status(), NfqStatus::Inconclusive) {
        die(3, format!("subgroup search at level {level} exceeded {max_nodes} nodes"));
    }
    let ambient = cert.fibre().ambient().clone();
    let mut text = String::new();
    let _ = writeln!(text, "{}", if cert.is_valid() { "VALID" } else { "INVALID" });
    let _ = writeln!(text, "quotient trivial to level: {}", cert.q_trivial_to());
    let _ = writeln!(text, "h2 certificate: {}", cert.h2().status);
    let _ = writeln!(
        text,
        "fibre generators ({}):",
        cert.fibre().generators_of_p().len()
    );
    for w in cert.fibre().generators_of_p() {
        let _ = writeln!(text, "  {}", ambient.word_string(w));
    }
    let _ = writeln!(
        text,
        "surjectivity: {} base quotients, {} product-side quotients, {}",
        cert.surjectivity().checks().len(),
        cert.surjectivity().product_checks().len(),
        if cert.surjectivity().all_pass() { "all pass" } else { "FAILURES" },
    );
    let _ = write!(text, "caveat: {}", cert.caveat());
    emit(fmt, cert.to_json(), text);
    exit(if cert.is_valid() { 0 } else { 1 })
}

fn cmd_fibre(fmt: Format, g_src: &str, s_src: &str, max_cosets: usize) -> ! {
    let g = load(g_src).presentation;
    let s = load_relators(&g, s_src);
    let spec = fibre_product(&g, &s).unwrap_or_else(|e| die(code_groth(&e), format!("{e}")));
    let ambient = spec.ambient();
    let gens: Vec<String> = spec.generators_of_p().iter().map(|w| ambient.word_string(w)).collect();
    let idx = fibre_index(&spec, max_cosets)
        .unwrap_or_else(|e| die(code_groth(&e), format!("{e}")));
    let mut text = format!("fibre generators ({}):", gens.len());
    for w in &gens {
        let _ = write!(text, "\n  {w}");
    }
    match idx {
        FibreIndex::UnboundedAtBudget => {
            let _ = write!(
                text,
                "\nquotient order: not shown finite within {max_cosets} cosets"
            );
            emit(
                fmt,
                json!({"generators": gens, "quotient_order": Value::Null, "diagonal": Value::Null}),
                text,
            );
            exit(3)
        }
        FibreIndex::Finite(n) => {
            let diag = diagonal_image_check(&spec, max_cosets)
                .unwrap_or_else(|e| die(code_groth(&e), format!("{e}")));
            let _ = write!(text, "\nquotient order: {n}");
            let _ = write!(
                text,
                "\ndiagonal image: order {} of {}, generators diagonal: {} -> {}",
                diag.image_order(),
                diag.quotient_order(),
                diag.generators_diagonal(),
                if diag.passes() { "PASS" } else { "FAIL" },
            );
            emit(
                fmt,
                json!({"generators": gens, "quotient_order": n, "diagonal": diag.to_json()}),
                text,
            );
            exit(if diag.passes() { 0 } else { 1 })
        }
    }
}

fn cmd_chain(fmt: Format, g_src: &str, sets: &[String], level: usize, max_nodes: usize) -> ! {
    let g = load(g_src).presentation;
    let chain: Vec<Vec<Word>> = sets.iter().map(|s| load_relators(&g, s)).collect();
    let rep = nested_chain_certify(&g, &chain, level, max_nodes)
        .unwrap_or_else(|e| die(code_groth(&e), format!("{e}")));
    let mut text = String::new();
    for step in rep.steps() {
        let (from, to) = step.endpoints();
        let _ = writeln!(
            text,
            "step {from} -> {to}: quotient triviality {}, next h2 {}, {}",
            if step.nfq().is_valid() { "valid" } else { "not shown" },
            step.h2_next().status,
            if step.passes() { "PASS" } else { "FAIL" },
        );
    }
    let _ = write!(text, "chain: {}", if rep.is_valid() { "VALID" } else { "INVALID" });
    emit(fmt, rep.to_json(), text);
    exit(if rep.is_valid() { 0 } else { 1 })
}

fn cmd_tietze(fmt: Format, input: &str, seed: u64, moves: usize) -> ! {
    let p = load(input).presentation;
    let q = tietze::shuffled(&p, seed, moves);
    let inv = h1(&q);
    emit(
        fmt,
        json!({"seed": seed, "moves": moves, "presentation": q.serialize(), "h1": inv}),
        q.serialize().trim_end().to_string(),
    );
    exit(0)
}

fn cmd_corpus_list(fmt: Format) -> ! {
    let fixed = corpus::fixed_names();
    let families = corpus::family_patterns();
    match fmt {
        Format::Json => {
            let v = json!({
                "fixed": fixed.iter().map(|n| {
                    let e = corpus::get(n).expect("bundled name");
                    json!({"name": n, "notes": e.notes})
                }).collect::<Vec<_>>(),
                "families": families,
            });
            say(serde_json::to_string_pretty(&v).expect("serializable"));
        }
        Format::Text => {
            say("bundled:");
            for n in &fixed {
                let e = corpus::get(n).expect("bundled name");
                say(format!("  {n:<12} {}", e.notes));
            }
            say("families:");
            for f in &families {
                say(format!("  {f}"));
            }
        }
    }
    exit(0)
}

fn cmd_corpus_show(fmt: Format, name: &str) -> ! {
    let e = corpus::get(name).unwrap_or_else(|err| die(2, err));
    emit(
        fmt,
        json!({
            "name": name,
            "notes": e.notes,
            "pi0": e.pi0.as_ref().map(|d| d.iter().copied().collect::<Vec<_>>()),
            "presentation": e.presentation.serialize(),
        }),
        format!("# {}\n{}", e.notes, e.presentation.serialize().trim_end()),
    );
    exit(0)
}

fn cmd_recipe_list(fmt: Format) -> ! {
    match fmt {
        Format::Json => {
            say(serde_json::to_string_pretty(&json!({"recipes": recipes::NAMES}))
                .expect("serializable"));
        }
        Format::Text => {
            for n in recipes::NAMES {
                say(n);
            }
        }
    }
    exit(0)
}

fn cmd_recipe(fmt: Format, name: &str, b: &recipes::Budgets) -> ! {
    let rep = recipes::run(name, b).unwrap_or_else(|e| {
        let code = match &e {
            RecipeError::Unknown(_) => 2,
            RecipeError::Budget(_) => 3,
            RecipeError::Internal(_) => 2,
        };
        die(code, e)
    });
    let mut text = String::new();
    for c in rep.checks() {
        let _ = writeln!(
            text,
            "{} {} ({})",
            if c.pass() { "PASS" } else { "FAIL" },
            c.label(),
            c.detail(),
        );
    }
    let _ = write!(text, "recipe {}: {}", rep.name(), if rep.passes() { "PASS" } else { "FAIL" });
    emit(fmt, rep.to_json(), text);
    exit(if rep.passes() { 0 } else { 1 })
}
