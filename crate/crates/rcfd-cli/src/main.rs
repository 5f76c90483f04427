//! Command-line interface for constructing, verifying and deciding
//! row-column factorial designs.
//!
//! Subcommands: `exists`, `construct`, `verify`, `search-vw`.
//! Everything is deterministic; `--jobs` only controls internal
//! parallelism and never changes any output.

use rcfd_core::array::{oa_check, rcfd_check, DesignSpec};
use rcfd_core::combinators::Mode;
use rcfd_core::hadamard::{builtin, oa2_from_hadamard, HadamardMatrix};
use rcfd_core::oracle::{decide, execute_with_mode, Status};
use rcfd_core::strength2::find_witness;
use rcfd_core::textio;
use std::process::ExitCode;

const USAGE: &str = "\
rcfd - row-column factorial design toolkit

USAGE:
  rcfd exists    -k K -m M -n N -q Q -t T
  rcfd construct -k K -m M -n N -q Q -t T [-o FILE] [--fast]
  rcfd verify    FILE -t T
  rcfd search-vw (--builtin NAME | FILE) -k K

OPTIONS:
  -k, -m, -n, -q, -t   design parameters (positive integers)
  -o FILE              output path for `construct` (default: stdout)
  --builtin NAME       embedded Hadamard matrix (sylvester-2..64, had.12,
                       had.20.toncheviv)
  --jobs N             number of worker threads for internal parallelism
  --fast               skip output re-verification in `construct`
  --seedless           assert determinism (no randomness exists; no-op)

EXIT CODES:
  exists:    0 = Exists, 1 = NotExists, 2 = Unknown
  construct: 0 = written, 1/2 as for exists
  verify:    0 = pass, 1 = fail
  search-vw: 0 = witness found, 1 = no witness
  3 = usage error, 4 = input/output error";

struct Args {
    command: String,
    k: Option<usize>,
    m: Option<usize>,
    n: Option<usize>,
    q: Option<usize>,
    t: Option<usize>,
    out: Option<String>,
    builtin: Option<String>,
    jobs: Option<usize>,
    fast: bool,
    positional: Vec<String>,
}

fn parse_args(argv: &[String]) -> Result<Args, String> {
    let mut args = Args {
        command: argv.first().cloned().unwrap_or_default(),
        k: None,
        m: None,
        n: None,
        q: None,
        t: None,
        out: None,
        builtin: None,
        jobs: None,
        fast: false,
        positional: Vec::new(),
    };
    if args.command.is_empty() {
        return Err("missing subcommand".into());
    }
    let mut it = argv[1..].iter();
    while let Some(a) = it.next() {
        let mut number = |slot: &mut Option<usize>, flag: &str| -> Result<(), String> {
            let v = it
                .next()
                .ok_or_else(|| format!("flag {flag} needs a value"))?;
            *slot = Some(
                v.parse::<usize>()
                    .map_err(|_| format!("flag {flag}: `{v}` is not a positive integer"))?,
            );
            Ok(())
        };
        match a.as_str() {
            "-k" => number(&mut args.k, "-k")?,
            "-m" => number(&mut args.m, "-m")?,
            "-n" => number(&mut args.n, "-n")?,
            "-q" => number(&mut args.q, "-q")?,
            "-t" => number(&mut args.t, "-t")?,
            "--jobs" => number(&mut args.jobs, "--jobs")?,
            "-o" => {
                args.out = Some(
                    it.next()
                        .ok_or_else(|| "flag -o needs a path".to_string())?
                        .clone(),
                )
            }
            "--builtin" => {
                args.builtin = Some(
                    it.next()
                        .ok_or_else(|| "flag --builtin needs a name".to_string())?
                        .clone(),
                )
            }
            "--fast" => args.fast = true,
            "--seedless" => {} // determinism holds unconditionally
            "-h" | "--help" => return Err(String::new()),
            other if other.starts_with('-') => return Err(format!("unknown flag `{other}`")),
            other => args.positional.push(other.to_string()),
        }
    }
    Ok(args)
}

fn spec_from(args: &Args) -> Result<DesignSpec, String> {
    let need = |v: Option<usize>, name: &str| v.ok_or(format!("missing flag -{name}"));
    Ok(DesignSpec::new(
        need(args.k, "k")?,
        need(args.m, "m")?,
        need(args.n, "n")?,
        need(args.q, "q")?,
        need(args.t, "t")?,
    ))
}

fn status_code(status: Status) -> u8 {
    match status {
        Status::Exists => 0,
        Status::NotExists => 1,
        Status::Unknown => 2,
    }
}

fn cmd_exists(args: &Args) -> Result<u8, String> {
    let spec = spec_from(args)?;
    let verdict = decide(spec).map_err(|e| e.to_string())?;
    print!("{}", verdict.report());
    Ok(status_code(verdict.status))
}

fn cmd_construct(args: &Args) -> Result<u8, String> {
    let spec = spec_from(args)?;
    let verdict = decide(spec).map_err(|e| e.to_string())?;
    if verdict.status != Status::Exists {
        print!("{}", verdict.report());
        return Ok(status_code(verdict.status));
    }
    let mode = if args.fast { Mode::Fast } else { Mode::Checked };
    let plan = verdict.plan.as_ref().expect("Exists carries a plan");
    let executed = execute_with_mode(plan, mode).map_err(|e| e.to_string())?;
    if !args.fast {
        // final end-to-end check before anything is written
        let report = rcfd_check(&executed.design, spec.t).map_err(|e| e.to_string())?;
        if !report.pass() {
            return Err(format!(
                "internal error: constructed design fails:\n{report}"
            ));
        }
    }
    let text = textio::write_design(&executed.design);
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| e.to_string())?;
            if let Some(w) = &executed.witness {
                std::fs::write(format!("{path}.witness"), w.to_text())
                    .map_err(|e| e.to_string())?;
            }
            eprintln!("wrote {path}");
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_verify(args: &Args) -> Result<u8, String> {
    let path = args
        .positional
        .first()
        .ok_or("verify needs a file argument")?;
    let t = args.t.ok_or("verify needs -t")?;
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    match textio::parse_any(&text).map_err(|e| e.to_string())? {
        textio::Parsed::Design(d) => {
            let report = rcfd_check(&d, t).map_err(|e| e.to_string())?;
            println!(
                "design {} read from {path}",
                DesignSpec::new(d.k(), d.m(), d.n(), d.q(), d.t())
            );
            println!("{report}");
            Ok(u8::from(!report.pass()))
        }
        textio::Parsed::Array(a) => {
            let report = oa_check(&a, t).map_err(|e| e.to_string())?;
            println!(
                "orthogonal array OA({}, {}, {}, {}) read from {path}",
                a.size(),
                a.degree(),
                a.q(),
                a.strength()
            );
            match &report.failure {
                None => {
                    println!("strength {t}: pass");
                    Ok(0)
                }
                Some(w) => {
                    println!("strength {t}: FAIL ({w})");
                    Ok(1)
                }
            }
        }
    }
}

fn load_hadamard(args: &Args) -> Result<HadamardMatrix, String> {
    if let Some(name) = &args.builtin {
        return builtin(name).map_err(|e| e.to_string());
    }
    let path = args
        .positional
        .first()
        .ok_or("search-vw needs --builtin NAME or a Hadamard file")?;
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    textio::parse_hadamard(&text).map_err(|e| e.to_string())
}

fn subsets_lex(total: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + total - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn cmd_search_vw(args: &Args) -> Result<u8, String> {
    let k = args.k.ok_or("search-vw needs -k")?;
    let h = load_hadamard(args)?.normalize();
    if h.order() % 8 != 4 {
        return Err(format!(
            "order {} is not 4m with m odd; the witness search targets such orders",
            h.order()
        ));
    }
    let oa = oa2_from_hadamard(&h).map_err(|e| e.to_string())?;
    let total = oa.degree();
    if k < 5 || k > total {
        return Err(format!("need 5 <= k <= {total}"));
    }
    let subsets = subsets_lex(total, k);
    for cols in &subsets {
        let sub = oa.select_columns(cols).map_err(|e| e.to_string())?;
        if let Some(wit) = find_witness(&sub) {
            let back = |local: &[usize]| -> Vec<usize> { local.iter().map(|&i| cols[i]).collect() };
            let sum_of = |local: &[usize]| -> String {
                let mut acc = vec![0u8; sub.size()];
                for &j in local {
                    for (i, row) in sub.rows().enumerate() {
                        acc[i] ^= row[j];
                    }
                }
                acc.iter().map(|&b| char::from(b'0' + b)).collect()
            };
            println!("witness found");
            println!("columns: {cols:?}");
            println!("V: {:?}", back(&wit.left));
            println!("W: {:?}", back(&wit.right));
            println!("sum(V): {}", sum_of(&wit.left));
            println!("sum(W): {}", sum_of(&wit.right));
            return Ok(0);
        }
    }
    println!(
        "no witness: exhausted all {} column subsets of size {k} (and within each, \
         every admissible pair of sub-subsets of sizes congruent to 1 or 2 mod 4)",
        subsets.len()
    );
    Ok(1)
}

fn run() -> u8 {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let args = match parse_args(&argv) {
        Ok(a) => a,
        Err(msg) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}\n");
            }
            eprintln!("{USAGE}");
            return 3;
        }
    };
    #[cfg(feature = "parallel")]
    if let Some(jobs) = args.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let outcome = match args.command.as_str() {
        "exists" => cmd_exists(&args),
        "construct" => cmd_construct(&args),
        "verify" => cmd_verify(&args),
        "search-vw" => cmd_search_vw(&args),
        other => {
            eprintln!("error: unknown subcommand `{other}`\n\n{USAGE}");
            return 3;
        }
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            if msg.starts_with("missing flag") || msg.contains("needs") {
                eprintln!("error: {msg}\n\n{USAGE}");
                3
            } else {
                eprintln!("error: {msg}");
                4
            }
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run())
}
