use std::fs;
use std::path::Path;

use chm_core::cyclotomic::{quadrant_basis_rank, CycloError};
use chm_core::numtheory::{lemma3_analyze, solve_linear_congruence};
use chm_core::search::{self, canonicalize, cross_validate, SearchConfig, SearchError, SearchReport, Strategy};
use chm_core::seqcore::{lemma1_check, lemma1_order, lemma2_check, lemma2_order, CheckStatus, Lemma2Verdict, Sequence};
use chm_core::spectra::{spectral_verdict_for, SpectraError};
use serde_json::{json, Value};

use crate::args::{Cli, Command, Format, SeqInput};
use crate::{CliError, Status};

pub const MAX_EXHAUSTIVE_ENV: &str = "CHM_MAX_EXHAUSTIVE_N";

type CmdResult = Result<Status, CliError>;

fn invalid(msg: impl ToString) -> CliError {
    CliError::Invalid(msg.to_string())
}

pub fn run(cli: Cli) -> CmdResult {
    let fmt = cli.format;
    match cli.command {
        Command::Verify { input } => verify(&read_sequences(&input)?, fmt.unwrap_or(Format::Text)),
        Command::Analyze { input, k } => analyze(&read_sequences(&input)?, &k, fmt.unwrap_or(Format::Json)),
        Command::Search { n, strategy, jobs, weight_filter, out, checkpoint, cap, shard_bits } => {
            let strategy: Strategy = strategy.parse().map_err(invalid)?;
            let mut cfg = SearchConfig::new(n, strategy)
                .jobs(jobs)
                .weight_filter(weight_filter)
                .cap(cap)
                .max_exhaustive_n(max_exhaustive_n()?);
            cfg.shard_bits = shard_bits;
            cfg.checkpoint = checkpoint;
            search_cmd(&cfg, out.as_deref(), fmt.unwrap_or(Format::Json))
        }
        Command::Congruence { n, k, c } => congruence(n, k, c, fmt.unwrap_or(Format::Json)),
        Command::BasisRank { n } => basis_rank(&n, fmt.unwrap_or(Format::Csv)),
        Command::Roots { n } => roots(n, fmt.unwrap_or(Format::Csv)),
        Command::Lemma { n, which } => lemma(n, &which, fmt.unwrap_or(Format::Text)),
        Command::Report { input } => report(&input, fmt.unwrap_or(Format::Text)),
        Command::CrossValidate { n, jobs } => {
            let v = cross_validate(n, jobs, max_exhaustive_n()?).map_err(search_error)?;
            print_json(&serde_json::to_value(&v).unwrap());
            Ok(if v.pass { Status::Pass } else { Status::Fail })
        }
    }
}

fn max_exhaustive_n() -> Result<usize, CliError> {
    match std::env::var(MAX_EXHAUSTIVE_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| invalid(format!("{MAX_EXHAUSTIVE_ENV}={v:?} is not an order"))),
        Err(_) => Ok(search::DEFAULT_MAX_EXHAUSTIVE_N),
    }
}

fn search_error(e: SearchError) -> CliError {
    match e {
        SearchError::CapExceeded { .. } => CliError::Refused(format!(
            "{e}; raise {MAX_EXHAUSTIVE_ENV} or use --strategy prunedDFS"
        )),
        other => invalid(other),
    }
}

fn read_sequences(input: &SeqInput) -> Result<Vec<Sequence>, CliError> {
    let parse = |s: &str| s.parse::<Sequence>().map_err(|e| invalid(format!("bad sequence {s:?}: {e}")));
    match (&input.seq, &input.seq_file) {
        (Some(s), None) => Ok(vec![parse(s)?]),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            let seqs = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(parse)
                .collect::<Result<Vec<_>, _>>()?;
            if seqs.is_empty() {
                return Err(invalid(format!("{}: no sequences", path.display())));
            }
            Ok(seqs)
        }
        _ => Err(invalid("one of --seq or --seq-file is required")),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).unwrap());
}

fn status_word(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::TrivialException => "trivial exception",
    }
}

fn lemma2_text(v: &Lemma2Verdict) -> String {
    let Some(root) = v.sqrt_n else {
        return format!("fail ({} is not a perfect square)", v.n);
    };
    let allowed = format!("{} or {}", v.allowed_minus_counts[0], v.allowed_minus_counts[1]);
    match (v.minus_count, v.case) {
        (Some(c), Some(case)) => format!("pass ({c} entries equal to -1, {case:?} case; sqrt(n) = {root})").to_lowercase(),
        (Some(c), None) => format!("fail ({c} entries equal to -1, need {allowed})"),
        (None, _) => format!("pass (sqrt(n) = {root}, -1 count must be {allowed})"),
    }
}

fn verify(seqs: &[Sequence], fmt: Format) -> CmdResult {
    let mut all_pass = true;
    let mut records = Vec::new();
    for s in seqs {
        let hadamard = s.is_circulant_hadamard();
        all_pass &= hadamard;
        let l1 = lemma1_check(s);
        let l2 = lemma2_check(s);
        let ac = s.autocorrelation();
        match fmt {
            Format::Text => {
                println!("sequence: {s}");
                println!("order: {}", s.len());
                println!("lemma 1 (even order): {}", status_word(l1.status));
                println!("lemma 2 (square order and weight): {}", lemma2_text(&l2));
                let r: Vec<String> = ac.values().iter().map(ToString::to_string).collect();
                println!("autocorrelation: {}", r.join(" "));
                println!("circulant hadamard: {}", if hadamard { "pass" } else { "fail" });
                if seqs.len() > 1 {
                    println!();
                }
            }
            _ => records.push(json!({
                "sequence": s.to_string(),
                "n": s.len(),
                "lemma1": l1,
                "lemma2": l2,
                "autocorrelation": ac.values(),
                "isCirculantHadamard": hadamard,
                "gramIsScaledIdentity": s.circulant().is_hadamard(),
            })),
        }
    }
    if fmt != Format::Text {
        print_json(&if records.len() == 1 { records.pop().unwrap() } else { Value::Array(records) });
    }
    Ok(if all_pass { Status::Pass } else { Status::Fail })
}

fn analyze(seqs: &[Sequence], k: &str, fmt: Format) -> CmdResult {
    let mut all_pass = true;
    let mut records = Vec::new();
    for s in seqs {
        let n = s.len();
        let ks: Vec<usize> = if k.eq_ignore_ascii_case("all") {
            (0..n).collect()
        } else {
            vec![k.parse().map_err(|_| invalid(format!("--k must be \"all\" or an integer, got {k:?}")))?]
        };
        let j = s.minus_indices();
        let v = spectral_verdict_for(&j, &ks).map_err(|e| match e {
            SpectraError::UnsupportedOrder(n) => invalid(format!("analyze needs 4 | n, got n = {n}")),
            other => invalid(other),
        })?;
        all_pass &= v.overall;
        let per_k: Vec<Value> = v
            .per_k
            .iter()
            .map(|kv| {
                json!({
                    "k": kv.k,
                    "c0pass": kv.c0_pass,
                    "cVector": kv.c_vector,
                    "lambdaSqEqualsN": kv.lambda_sq_equals_n,
                    "nZero": kv.n_zero,
                    "nHalf": kv.n_half,
                })
            })
            .collect();
        records.push(json!({
            "sequence": s.to_string(),
            "n": n,
            "J": v.j,
            "perK": per_k,
            "overall": v.overall,
        }));
    }
    match fmt {
        Format::Text => {
            for r in &records {
                println!("sequence {} (n = {}), J = {}", r["sequence"].as_str().unwrap(), r["n"], r["J"]);
                for kv in r["perK"].as_array().unwrap() {
                    println!(
                        "  k = {:>3}  |lambda|^2 = n: {:<5}  C0 law: {:<5}  N0 = {}  N(n/2) = {}  C = {}",
                        kv["k"], kv["lambdaSqEqualsN"], kv["c0pass"], kv["nZero"], kv["nHalf"], kv["cVector"]
                    );
                }
                println!("  overall: {}", if r["overall"] == true { "pass" } else { "fail" });
            }
        }
        _ => print_json(&if records.len() == 1 { records.pop().unwrap() } else { Value::Array(records) }),
    }
    Ok(if all_pass { Status::Pass } else { Status::Fail })
}

fn search_cmd(cfg: &SearchConfig, out: Option<&Path>, fmt: Format) -> CmdResult {
    let report = search::enumerate(cfg).map_err(search_error)?;
    let text = serde_json::to_string_pretty(&report).unwrap();
    if let Some(path) = out {
        fs::write(path, format!("{text}\n")).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    }
    match fmt {
        Format::Text => {
            println!("n = {}, strategy = {}, raw_count = {}", report.n, report.strategy, report.raw_count);
            println!("canonical_count = {}", report.canonical_count.unwrap_or(0));
            println!("nodes_explored = {}, elapsed_ms = {}", report.nodes_explored, report.elapsed_ms);
            for s in &report.solutions {
                println!("{s}");
            }
            if report.truncated() {
                println!("(list truncated at cap = {})", report.cap);
            }
        }
        _ => println!("{text}"),
    }
    Ok(Status::Pass)
}

fn congruence(n: i64, k: i64, c: Option<i64>, fmt: Format) -> CmdResult {
    if n < 1 {
        return Err(invalid(format!("invalid modulus {n}")));
    }
    let sol = solve_linear_congruence(k, c.unwrap_or(n / 2), n).map_err(invalid)?;
    match fmt {
        Format::Text => match sol.j0 {
            Some(j0) => println!(
                "{}*j = {} (mod {}): solvable, gcd = {}, j0 = {}, {} solutions",
                sol.k, sol.c, sol.n, sol.g, j0, sol.solution_count
            ),
            None => println!("{}*j = {} (mod {}): unsolvable, gcd = {} does not divide {}", sol.k, sol.c, sol.n, sol.g, sol.c),
        },
        _ => print_json(&serde_json::to_value(&sol).unwrap()),
    }
    Ok(Status::Pass)
}

fn basis_rank(ns: &[usize], fmt: Format) -> CmdResult {
    let reports = ns
        .iter()
        .map(|&n| {
            quadrant_basis_rank(n).map_err(|e| match e {
                CycloError::UnsupportedOrder(n) => invalid(format!("basis-rank needs 4 | n, got n = {n}")),
                other => invalid(other),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    match fmt {
        Format::Json => print_json(&serde_json::to_value(&reports).unwrap()),
        _ => {
            println!("n,basis_size,rank,euler_half,independent");
            for r in &reports {
                println!("{},{},{},{},{}", r.n, r.basis_size, r.rank, r.euler_half, r.independent);
            }
        }
    }
    Ok(Status::Pass)
}

fn roots(n: usize, fmt: Format) -> CmdResult {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let rows: Vec<(usize, f64, f64, f64, bool)> = (0..n)
        .map(|e| {
            let theta = std::f64::consts::TAU * e as f64 / n as f64;
            // The basis {p_0, …, p_{n/4−1}} is the real part of the first-quadrant roots.
            let in_basis = n.is_multiple_of(4) && e < n / 4;
            (e, theta.to_degrees(), theta.cos(), theta.sin(), in_basis)
        })
        .collect();
    match fmt {
        Format::Json => print_json(&json!(rows
            .iter()
            .map(|r| json!({"exponent": r.0, "angleDeg": r.1, "re": r.2, "im": r.3, "inBasis": r.4}))
            .collect::<Vec<_>>())),
        _ => {
            println!("exponent,angle_deg,re_approx,im_approx,in_basis");
            for (e, a, re, im, b) in rows {
                println!("{e},{a:.6},{re:.12},{im:.12},{b}");
            }
        }
    }
    Ok(Status::Pass)
}

fn lemma(n: usize, which: &[u8], fmt: Format) -> CmdResult {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    if let Some(w) = which.iter().find(|w| !(1..=3).contains(*w)) {
        return Err(invalid(format!("unknown lemma {w}; expected 1, 2 or 3")));
    }
    let mut status = Status::Pass;
    let mut out = serde_json::Map::new();
    out.insert("n".into(), json!(n));
    let mut lines = Vec::new();
    if which.contains(&1) {
        let v = lemma1_order(n);
        if v.status == CheckStatus::Fail {
            status = Status::Fail;
        }
        let note = v.witness.as_deref().map(|w| format!(" ({w})")).unwrap_or_default();
        lines.push(format!("lemma 1 (n even): {}{note}", status_word(v.status)));
        out.insert("lemma1".into(), serde_json::to_value(&v).unwrap());
    }
    if which.contains(&2) {
        let v = lemma2_order(n);
        if !v.pass {
            status = Status::Fail;
        }
        lines.push(format!("lemma 2 (n a perfect square): {}", lemma2_text(&v)));
        out.insert("lemma2".into(), serde_json::to_value(&v).unwrap());
    }
    if which.contains(&3) {
        let r = lemma3_analyze(n as u64).map_err(invalid)?;
        lines.push(format!(
            "lemma 3 (n = 4t^2, k = n/4 - 1): t = {} ({:?}), k = {}, gcd chain {} -> {}, k*j = n/2 (mod n) {}{}, n/8 integral: {}, turyn-excluded: {}{}",
            r.t,
            r.t_parity,
            r.k,
            r.gcd_chain[0],
            r.gcd_chain[1],
            if r.solvable { "solvable" } else { "unsolvable" },
            r.j0.map(|j| format!(" (j0 = {j})")).unwrap_or_default(),
            r.n_over_8_integral,
            r.turyn_excluded,
            if r.k_zero_anomaly { ", note: k = 0 gives 0*j = 2 (mod 4), which has no solution" } else { "" },
        ).to_lowercase());
        out.insert("lemma3".into(), serde_json::to_value(&r).unwrap());
    }
    match fmt {
        Format::Text => lines.iter().for_each(|l| println!("{l}")),
        _ => print_json(&Value::Object(out)),
    }
    Ok(status)
}

fn report(path: &Path, fmt: Format) -> CmdResult {
    let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let rep: SearchReport =
        serde_json::from_str(&text).map_err(|e| invalid(format!("{}: not a search report: {e}", path.display())))?;
    let mut invalid_rows = Vec::new();
    let mut canonical = std::collections::BTreeSet::new();
    for s in &rep.solutions {
        match s.parse::<Sequence>() {
            Ok(seq) if seq.len() == rep.n && seq.is_circulant_hadamard() && seq.circulant().is_hadamard() => {
                canonical.insert(canonicalize(&seq).to_string());
            }
            _ => invalid_rows.push(s.clone()),
        }
    }
    let mut problems = Vec::new();
    if rep.solutions.len() > rep.cap {
        problems.push(format!("{} solutions listed but cap is {}", rep.solutions.len(), rep.cap));
    }
    if (rep.solutions.len() as u64) > rep.raw_count {
        problems.push(format!("{} solutions listed but raw_count is {}", rep.solutions.len(), rep.raw_count));
    }
    // A short list is only legitimate when the cap was reached.
    if rep.solutions.len() < rep.cap && (rep.solutions.len() as u64) != rep.raw_count {
        problems.push(format!("raw_count {} does not match {} listed solutions", rep.raw_count, rep.solutions.len()));
    }
    if rep.solutions.len() < rep.cap && invalid_rows.is_empty() {
        if let Some(c) = rep.canonical_count {
            if c != canonical.len() as u64 {
                problems.push(format!("canonical_count {c} but the listed rows form {} classes", canonical.len()));
            }
        }
    }
    if rep.solutions.windows(2).any(|w| w[0] >= w[1]) {
        problems.push("solutions are not sorted and distinct".into());
    }
    let ok = invalid_rows.is_empty() && problems.is_empty();
    match fmt {
        Format::Text => {
            println!(
                "{}: n = {}, strategy = {}, {} solutions checked, {} invalid",
                path.display(),
                rep.n,
                rep.strategy,
                rep.solutions.len(),
                invalid_rows.len()
            );
            for r in &invalid_rows {
                println!("invalid: {r}");
            }
            for p in &problems {
                println!("inconsistent: {p}");
            }
            println!("{}", if ok { "pass" } else { "fail" });
        }
        _ => print_json(&json!({
            "file": path.display().to_string(),
            "n": rep.n,
            "strategy": rep.strategy,
            "checked": rep.solutions.len(),
            "invalid": invalid_rows,
            "problems": problems,
            "pass": ok,
        })),
    }
    Ok(if ok { Status::Pass } else { Status::Fail })
}
