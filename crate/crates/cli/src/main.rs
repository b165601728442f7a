use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use paperfold::oracle::scan_block_counts;
use paperfold::{
    build_abelian_power, delta, find_minimal_power, prefix, scan_delta, EllTable, InstructionSeq, Letter, SearchBounds,
    WitnessRecord,
};
use serde::Serialize;
use serde_json::json;

const AFTER_HELP: &str = "\
Sequences: 'regular' | 'periodic:<bits>' | 'preperiod:<bits>,period:<bits>',
where '1' is the instruction +1 and '0' is -1. Letters of the word are printed
with the same encoding ('1' for +1, '0' for -1); JSON output uses [1,-1,...].

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.";

#[derive(Parser)]
#[command(name = "paperfold", version, about = "Abelian powers in paper-folding words", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Instruction sequence
    #[arg(long, default_value = "regular", value_parser = parse_seq)]
    seq: InstructionSeq,
    /// Emit JSON instead of plain text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print f_1 .. f_n
    Prefix {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'n')]
        n: u64,
    },
    /// Print the Δ-vector of m blocks of length d after position s
    Delta {
        #[command(flatten)]
        common: Common,
        #[arg(short = 's')]
        s: BigUint,
        #[arg(short = 'd')]
        d: BigUint,
        #[arg(short = 'm')]
        m: usize,
        /// Also compute Δ by scanning letters and fail if the two disagree
        #[arg(long)]
        scan: bool,
    },
    /// Construct an abelian m-power
    Construct {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'm')]
        m: usize,
    },
    /// Check by scanning that m blocks of length d after s are an abelian power
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(short = 's')]
        s: u64,
        #[arg(short = 'd')]
        d: u64,
        #[arg(short = 'm')]
        m: usize,
    },
    /// Search for the abelian m-power with the smallest d, then smallest s
    Search {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'm')]
        m: usize,
        #[arg(long)]
        smax: u64,
        #[arg(long)]
        dmax: u64,
    },
    /// Print the 16 gap offsets ℓ(x0, x1, x2, x3)
    Ltable {
        #[arg(long)]
        json: bool,
    },
}

fn parse_seq(text: &str) -> Result<InstructionSeq, String> {
    text.parse().map_err(|e: paperfold::SeqSpecError| e.to_string())
}

enum Failure {
    /// Usage or input error, exit 2.
    Usage(String),
    /// A check did not hold, exit 1.
    Check,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn emit(text: impl std::fmt::Display) -> Outcome {
    let mut out = io::stdout().lock();
    writeln!(out, "{text}")?;
    Ok(())
}

fn emit_json<T: Serialize>(value: &T) -> Outcome {
    emit(serde_json::to_string(value)?)
}

fn letters_json(letters: &[Letter]) -> Vec<i8> {
    letters.iter().map(|l| l.value()).collect()
}

fn run_prefix(common: &Common, n: u64) -> Outcome {
    let letters = prefix(&common.seq, n)?;
    if common.json {
        emit_json(&json!({
            "seq": common.seq.to_string(),
            "n": n,
            "letters": letters_json(&letters),
        }))
    } else {
        emit(letters.iter().map(|l| l.to_bit()).collect::<String>())
    }
}

fn run_delta(common: &Common, s: &BigUint, d: &BigUint, m: usize, scan: bool) -> Outcome {
    let formula = delta(&common.seq, s, d, m)?;
    let scanned = if scan {
        let s: u64 = s
            .try_into()
            .map_err(|_| Failure::Usage("s exceeds the scan bound".into()))?;
        let d: u64 = d
            .try_into()
            .map_err(|_| Failure::Usage("d exceeds the scan bound".into()))?;
        Some(scan_delta(&common.seq, s, d, m)?)
    } else {
        None
    };
    let agree = scanned.as_ref().map(|v| *v == formula);
    if common.json {
        emit_json(&json!({
            "seq": common.seq.to_string(),
            "s": s.to_string(),
            "d": d.to_string(),
            "m": m,
            "delta": formula,
            "scan": scanned,
            "agree": agree,
        }))?;
    } else {
        emit(&formula)?;
        if let Some(v) = &scanned {
            if *v != formula {
                eprintln!("scan disagrees with formula: {v}");
            }
        }
    }
    match agree {
        Some(false) => Err(Failure::Check),
        _ => Ok(()),
    }
}

fn run_construct(common: &Common, m: usize) -> Outcome {
    let witness = build_abelian_power::<BigUint>(&common.seq, m)?;
    if !witness.verify(&common.seq)? {
        eprintln!("constructed witness failed its own Δ check");
        return Err(Failure::Check);
    }
    if common.json {
        return emit_json(&WitnessRecord::from(&witness));
    }
    let mut text = format!(
        "s = {}\nd = {}\nm = {}\ndelta = {}\nparams: u={} t={} q={}\ntrace:",
        witness.s, witness.d, witness.m, witness.delta, witness.params.u, witness.params.t, witness.params.q
    );
    for step in &witness.trace {
        text.push_str(&format!("\n  r={} base=({}, {})", step.r, step.base_s, step.base_d));
    }
    emit(text)
}

fn run_verify(common: &Common, s: u64, d: u64, m: usize) -> Outcome {
    let counts = scan_block_counts(&common.seq, s, d, m)?;
    let ok = counts.windows(2).all(|w| w[0] == w[1]);
    if common.json {
        emit_json(&json!({
            "seq": common.seq.to_string(),
            "s": s.to_string(),
            "d": d.to_string(),
            "m": m,
            "counts": counts,
            "abelian_power": ok,
        }))?;
    } else {
        let counts = counts.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        let verdict = if ok { "abelian power" } else { "not an abelian power" };
        emit(format!("{verdict}: -1 counts per block {counts}"))?;
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run_search(common: &Common, m: usize, smax: u64, dmax: u64) -> Outcome {
    let found = find_minimal_power(&common.seq, m, SearchBounds::new(smax, dmax))?;
    if common.json {
        let witness = found
            .as_ref()
            .map(|w| json!({ "s": w.s.to_string(), "d": w.d.to_string() }));
        return emit_json(&json!({
            "seq": common.seq.to_string(),
            "m": m,
            "smax": smax,
            "dmax": dmax,
            "witness": witness,
        }));
    }
    match found {
        Some(w) => emit(format!("s={} d={}", w.s, w.d)),
        None => emit("none"),
    }
}

fn run_ltable(json: bool) -> Outcome {
    if json {
        let rows: Vec<_> = EllTable::rows()
            .map(|(x, ell)| json!({ "x": x.map(Letter::value), "ell": ell }))
            .collect();
        return emit_json(&rows);
    }
    let mut text = String::from("x0 x1 x2 x3 | ell");
    for (x, ell) in EllTable::rows() {
        text.push('\n');
        for l in x {
            text.push_str(&format!("{:>2} ", l.value()));
        }
        text.push_str(&format!("| {ell:>3}"));
    }
    emit(text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Prefix { common, n } => run_prefix(common, *n),
        Command::Delta { common, s, d, m, scan } => run_delta(common, s, d, *m, *scan),
        Command::Construct { common, m } => run_construct(common, *m),
        Command::Verify { common, s, d, m } => run_verify(common, *s, *d, *m),
        Command::Search { common, m, smax, dmax } => run_search(common, *m, *smax, *dmax),
        Command::Ltable { json } => run_ltable(*json),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
