use std::collections::VecDeque;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use slidewin::automata::format::AutomatonJson;
use slidewin::automata::{
    determinize_with, minimize, parse_any, Alphabet, Automaton, Dfa, Nfa, DEFAULT_STATE_BUDGET,
};
use slidewin::classify::{classify_dfa_with, classify_nfa_with, decide, Problem};
use slidewin::decompose::{decompose, DecompositionCertificate, DecompositionKind};
use slidewin::exactspace::fixed::{constant_fixed_algorithm, sparse_fixed_algorithm_with};
use slidewin::exactspace::{optimal_variable_algorithm, space_table};
use slidewin::families::{random_nfa, FamilyKind, FamilySpec, GadgetAlphabet};
use slidewin::report::{
    digest, verify_document, ClassifyResult, DecideResult, DecomposeResult, MeasureResult, Report,
    SimulateResult, TraceStep, WitnessSet,
};
use slidewin::streaming::{
    parse_stream, reference_variable_algorithm, trivial_fixed_algorithm, FixedWindowSpec, Model,
    Runner, Simulation, StreamToken,
};
use slidewin::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "slidewin",
    version,
    about = "Sliding-window space complexity of regular languages"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Cap on states built by subset constructions.
    #[arg(long, global = true, default_value_t = DEFAULT_STATE_BUDGET)]
    budget_states: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock timing in JSON reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algo {
    Trivial,
    OptimalVariable,
    Sparse,
    Constant,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Space class in both window models, with witnesses.
    Classify { input: PathBuf },
    /// Exact space table F_L(n), V_L(n) and ψ-count.
    Measure {
        input: PathBuf,
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        out: TableFormat,
    },
    /// Runs a streaming algorithm over a token stream.
    Simulate {
        input: PathBuf,
        #[arg(long, value_enum)]
        algo: Algo,
        /// Whitespace-separated tokens; `!` pops the oldest symbol.
        #[arg(long, conflicts_with = "random")]
        stream: Option<PathBuf>,
        /// Random stream of this many tokens drawn with --seed.
        #[arg(long)]
        random: Option<usize>,
        /// Window size for fixed-size algorithms.
        #[arg(long)]
        window: Option<usize>,
        /// Compare every answer with the reference algorithm.
        #[arg(long)]
        verify: bool,
    },
    /// Decision problem; exit code 0 for yes, 1 for no.
    Decide {
        #[arg(value_parser = parse_problem)]
        problem: Problem,
        input: PathBuf,
    },
    /// Structural decomposition with a self-checking certificate.
    Decompose {
        input: PathBuf,
        #[arg(long, value_parser = parse_kind)]
        kind: DecompositionKind,
        /// Certificate destination.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emits a family member as an automaton file.
    Generate {
        #[arg(value_parser = parse_family)]
        family: FamilyKind,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Payload automaton over {a,b} for the gadget families.
        #[arg(long)]
        input: Option<PathBuf>,
        /// States of the random payload used when no --input is given.
        #[arg(long, default_value_t = 3)]
        states: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verifies a certificate or report file; exit code 1 on failure.
    Verify { file: PathBuf },
}

fn parse_problem(s: &str) -> std::result::Result<Problem, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> std::result::Result<DecompositionKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_family(s: &str) -> std::result::Result<FamilyKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

struct Ctx {
    format: Format,
    budget: usize,
    seed: u64,
    timing: bool,
    started: Instant,
    args: Vec<String>,
}

impl Ctx {
    fn report<T: Serialize>(
        &self,
        command: &str,
        input: Option<&[u8]>,
        result: T,
        notes: Vec<String>,
    ) -> Result<String> {
        let report = Report {
            command: command.into(),
            args: self.args.clone(),
            input_digest: input.map(digest),
            result,
            notes,
            timing_ms: self
                .timing
                .then(|| self.started.elapsed().as_millis() as u64),
        };
        json(&report)
    }
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Error::Internal(e.to_string()))
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<(Vec<u8>, Automaton)> {
    let bytes = read(path)?;
    let src = String::from_utf8(bytes.clone())
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let a = parse_any(&src).map_err(|e| match e {
        Error::Parse { line, message } => {
            Error::Invalid(format!("{}: line {line}: {message}", path.display()))
        }
        other => other,
    })?;
    Ok((bytes, a))
}

fn to_dfa(a: &Automaton, budget: usize) -> Result<Dfa> {
    match a {
        Automaton::Dfa(d) => Ok(d.clone()),
        Automaton::Nfa(n) => determinize_with(n, budget),
    }
}

fn write_out(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn render(a: &Alphabet, toks: &[String]) -> String {
    if toks.is_empty() {
        return "ε".into();
    }
    let sep = if a.single_char() { "" } else { " " };
    toks.join(sep)
}

fn witness_lines(a: &Alphabet, w: &WitnessSet) -> String {
    let mut out = String::new();
    if let Some(c) = &w.not_constant {
        out += &format!(
            "not-constant witness: x={} y={} z={}\n",
            render(a, &c.x),
            render(a, &c.y),
            render(a, &c.z)
        );
    }
    if let Some(n) = &w.non_well_behaved {
        out += &format!(
            "non-well-behaved witness (reversal): u={} u0={} v0={} u1={} v1={}\n",
            render(a, &n.u),
            render(a, &n.u0),
            render(a, &n.v0),
            render(a, &n.u1),
            render(a, &n.v1)
        );
    }
    if let Some(t) = &w.critical {
        out += &format!(
            "critical tuple: u0={} u1={} w0={} w1={}\n",
            render(a, &t.u0),
            render(a, &t.u1),
            render(a, &t.w0),
            render(a, &t.w1)
        );
    }
    out
}

/// Printed output and exit status of a command.
struct Outcome {
    stdout: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn classify(ctx: &Ctx, input: &Path) -> Result<Outcome> {
    let (bytes, a) = load(input)?;
    let c = match &a {
        Automaton::Dfa(d) => classify_dfa_with(d, ctx.budget)?,
        Automaton::Nfa(n) => classify_nfa_with(n, ctx.budget)?,
    };
    let result = ClassifyResult::new(&c);
    if ctx.format == Format::Json {
        return Ok(Outcome::ok(ctx.report(
            "classify",
            Some(&bytes),
            result,
            vec![],
        )?));
    }
    let mut out = format!(
        "fixed: {}\nvariable: {}\nminimal states: {}\n",
        c.class.fixed,
        c.class.variable,
        c.minimal.num_states()
    );
    out += &witness_lines(c.minimal.alphabet(), &result.witnesses);
    Ok(Outcome::ok(out))
}

fn measure(ctx: &Ctx, input: &Path, max_n: usize, table: TableFormat) -> Result<Outcome> {
    let (bytes, a) = load(input)?;
    let d = to_dfa(&a, ctx.budget)?;
    let rows = space_table(&d, max_n)?;
    let mut notes = Vec::new();
    if let Some(r) = rows.iter().find(|r| r.f_bits.is_none()) {
        notes.push(format!(
            "F column omitted from n = {}: window automaton exceeds its budget",
            r.n
        ));
    }
    if let Some(r) = rows.iter().find(|r| r.psi_count.is_none()) {
        notes.push(format!(
            "ψ-count omitted from n = {}: enumeration exceeds its budget",
            r.n
        ));
    }
    if minimize(&d).num_states() == 1 {
        notes.push("trivial language: V_L(n) = 0 although log|ψ_L(Σ^≤n)| = log(n+1)".into());
    }
    let result = MeasureResult { rows };
    match table {
        TableFormat::Json => Ok(Outcome::ok(ctx.report(
            "measure",
            Some(&bytes),
            result,
            notes,
        )?)),
        TableFormat::Csv => {
            for n in &notes {
                eprintln!("note: {n}");
            }
            Ok(Outcome::ok(result.to_csv()))
        }
    }
}

fn random_stream(alphabet: &Alphabet, count: usize, pops: bool, seed: u64) -> Vec<StreamToken> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = alphabet.len();
    (0..count)
        .map(|_| {
            let r = rng.gen_range(0..k + usize::from(pops));
            if r == k {
                StreamToken::Pop
            } else {
                StreamToken::Symbol(r)
            }
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    ctx: &Ctx,
    input: &Path,
    algo: Algo,
    stream: Option<&Path>,
    random: Option<usize>,
    window: Option<usize>,
    verify: bool,
) -> Result<Outcome> {
    let (bytes, a) = load(input)?;
    let d = to_dfa(&a, ctx.budget)?;
    let alphabet = d.alphabet().clone();
    let model = match algo {
        Algo::OptimalVariable => Model::Variable,
        _ => Model::Fixed,
    };
    let spec = match (model, window) {
        (Model::Fixed, Some(n)) => Some(FixedWindowSpec::new(n)),
        (Model::Fixed, None) => {
            return Err(Error::Invalid("fixed-size algorithms need --window".into()))
        }
        (Model::Variable, _) => None,
    };
    let mut sim: Box<dyn Simulation> = match (algo, spec) {
        (Algo::OptimalVariable, _) => Box::new(Runner::new(optimal_variable_algorithm(&d)?)),
        (Algo::Trivial, Some(s)) => Box::new(Runner::new(trivial_fixed_algorithm(&d, s))),
        (Algo::Sparse, Some(s)) => {
            Box::new(Runner::new(sparse_fixed_algorithm_with(&d, s, ctx.budget)?))
        }
        (Algo::Constant, Some(s)) => Box::new(Runner::new(constant_fixed_algorithm(&d, s)?)),
        _ => unreachable!("fixed-size algorithms have a window"),
    };
    let tokens = match (stream, random) {
        (Some(p), _) => {
            let src = String::from_utf8(read(p)?).map_err(|e| Error::Io(e.to_string()))?;
            parse_stream(&alphabet, &src)?
        }
        (None, Some(n)) => random_stream(&alphabet, n, model == Model::Variable, ctx.seed),
        (None, None) => return Err(Error::Invalid("give --stream or --random".into())),
    };
    // ground truth: the window itself
    let mut wnd: VecDeque<usize> = spec.map(|s| s.initial_window().into()).unwrap_or_default();
    let mut reference: Box<dyn Simulation> = match spec {
        Some(s) => Box::new(Runner::new(trivial_fixed_algorithm(&d, s))),
        None => Box::new(Runner::new(reference_variable_algorithm(&d))),
    };
    let mut peak = sim.encoded().len();
    let mut mismatches = 0usize;
    let mut trace = Vec::with_capacity(tokens.len());
    for &t in &tokens {
        sim.push(t);
        reference.push(t);
        match (t, spec) {
            (StreamToken::Symbol(s), Some(sp)) => {
                if sp.n > 0 {
                    wnd.pop_front();
                    wnd.push_back(s);
                }
            }
            (StreamToken::Symbol(s), None) => wnd.push_back(s),
            (StreamToken::Pop, None) => {
                wnd.pop_front();
            }
            (StreamToken::Pop, Some(_)) => {}
        }
        let bits = sim.encoded().len();
        peak = peak.max(bits);
        let accept = sim.accepts();
        if verify && (accept != reference.accepts() || accept != d.accepts(wnd.make_contiguous())) {
            mismatches += 1;
        }
        let token = match t {
            StreamToken::Symbol(s) => alphabet.token(s).to_string(),
            StreamToken::Pop => "!".into(),
        };
        trace.push(TraceStep {
            token,
            accept,
            bits,
        });
    }
    let final_window: Vec<usize> = wnd.iter().copied().collect();
    let result = SimulateResult {
        algo: algo
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default(),
        model,
        window,
        accept: sim.accepts(),
        final_window: alphabet.tokens_of(&final_window),
        trace,
        peak_bits: peak,
        mismatches: verify.then_some(mismatches),
    };
    let code = u8::from(verify && mismatches > 0);
    if ctx.format == Format::Json {
        let mut notes = Vec::new();
        if model == Model::Fixed && tokens.contains(&StreamToken::Pop) {
            notes.push("fixed-size model ignores `!`".into());
        }
        return Ok(Outcome {
            stdout: ctx.report("simulate", Some(&bytes), result, notes)?,
            code,
        });
    }
    let mut out = String::new();
    for (i, s) in result.trace.iter().enumerate() {
        out += &format!(
            "{:>6} {:>3} {} {} bits\n",
            i + 1,
            s.token,
            if s.accept { "accept" } else { "reject" },
            s.bits
        );
    }
    out += &format!(
        "final window: {}\nfinal answer: {}\npeak bits: {}\n",
        render(&alphabet, &result.final_window),
        if result.accept { "accept" } else { "reject" },
        result.peak_bits
    );
    if verify {
        out += &format!("mismatches: {mismatches}\n");
    }
    Ok(Outcome { stdout: out, code })
}

fn decide_cmd(ctx: &Ctx, problem: Problem, input: &Path) -> Result<Outcome> {
    let (bytes, a) = load(input)?;
    let nfa: Nfa = a.to_nfa();
    let d = decide(problem, &nfa, ctx.budget)?;
    let minimal = minimize(&determinize_with(&nfa, ctx.budget)?);
    let witnesses = WitnessSet::new(
        minimal.alphabet(),
        d.not_constant.as_ref(),
        d.non_well_behaved.as_ref(),
        d.critical.as_ref(),
    );
    let code = u8::from(!d.answer);
    let stdout = if ctx.format == Format::Json {
        let result = DecideResult {
            problem,
            answer: d.answer,
            minimal: AutomatonJson::from_dfa(&minimal),
            witness_automaton: d
                .non_well_behaved
                .as_ref()
                .and(d.witness_automaton.as_ref())
                .map(AutomatonJson::from_dfa),
            witnesses,
        };
        ctx.report("decide", Some(&bytes), result, vec![])?
    } else {
        format!(
            "{}\n{}",
            if d.answer { "yes" } else { "no" },
            witness_lines(minimal.alphabet(), &witnesses)
        )
    };
    Ok(Outcome { stdout, code })
}

fn decompose_cmd(
    ctx: &Ctx,
    input: &Path,
    kind: DecompositionKind,
    out: Option<&Path>,
) -> Result<Outcome> {
    let (bytes, a) = load(input)?;
    let d = to_dfa(&a, ctx.budget)?;
    let cert = decompose(&d, kind)?;
    let cert_json = cert.to_json();
    // the serialized form must verify on its own
    DecompositionCertificate::from_json(&cert_json)?;
    if let Some(p) = out {
        write_out(p, &json(&cert_json)?)?;
    }
    if ctx.format == Format::Json {
        let result = DecomposeResult {
            kind,
            leaves: cert.leaves().len(),
            certificate: cert_json,
        };
        return Ok(Outcome::ok(ctx.report(
            "decompose",
            Some(&bytes),
            result,
            vec![],
        )?));
    }
    let mut s = format!(
        "kind: {}\nleaves: {}\n",
        format!("{kind:?}").to_lowercase(),
        cert.leaves().len()
    );
    for (i, leaf) in cert.leaves().iter().enumerate() {
        s += &format!("  {i}: {} ({} states)\n", leaf.tag, leaf.dfa.num_states());
    }
    s += &format!(
        "formula: {}\n",
        serde_json::to_string(cert.formula()).map_err(|e| Error::Internal(e.to_string()))?
    );
    s += "verification: ok\n";
    Ok(Outcome::ok(s))
}

fn generate(
    ctx: &Ctx,
    family: FamilyKind,
    k: usize,
    input: Option<&Path>,
    states: usize,
    out: Option<&Path>,
) -> Result<Outcome> {
    let payload = || -> Result<Nfa> {
        match input {
            Some(p) => Ok(load(p)?.1.to_nfa()),
            None => {
                let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
                Ok(random_nfa(
                    &mut rng,
                    &GadgetAlphabet::payload(),
                    states.max(1),
                    0.5,
                ))
            }
        }
    };
    let spec = match family {
        FamilyKind::Lk => FamilySpec::Lk(k),
        FamilyKind::Zk => FamilySpec::Zk(k),
        FamilyKind::Rho => FamilySpec::RhoConst(payload()?),
        FamilyKind::RhoLog => FamilySpec::RhoLog(payload()?),
        FamilyKind::Sigma => FamilySpec::Sigma(payload()?),
    };
    let a = spec.build()?;
    let text = match ctx.format {
        Format::Text => a.to_text(),
        Format::Json => json(&a.to_json())?,
    };
    match out {
        Some(p) => {
            write_out(p, &text)?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn verify_cmd(file: &Path) -> Result<Outcome> {
    let bytes = read(file)?;
    let src = String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))?;
    match verify_document(&src) {
        Ok(what) => Ok(Outcome::ok(format!("ok ({what})\n"))),
        Err(e @ (Error::Parse { .. } | Error::Io(_))) => Err(e),
        Err(e) => Ok(Outcome {
            stdout: format!("failed: {e}\n"),
            code: 1,
        }),
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let ctx = Ctx {
        format: cli.format,
        budget: cli.budget_states,
        seed: cli.seed,
        timing: cli.timing,
        started: Instant::now(),
        args: std::env::args().skip(1).collect(),
    };
    match &cli.command {
        Command::Classify { input } => classify(&ctx, input),
        Command::Measure { input, max_n, out } => measure(&ctx, input, *max_n, *out),
        Command::Simulate {
            input,
            algo,
            stream,
            random,
            window,
            verify,
        } => simulate(
            &ctx,
            input,
            *algo,
            stream.as_deref(),
            *random,
            *window,
            *verify,
        ),
        Command::Decide { problem, input } => decide_cmd(&ctx, *problem, input),
        Command::Decompose { input, kind, out } => {
            decompose_cmd(&ctx, input, *kind, out.as_deref())
        }
        Command::Generate {
            family,
            k,
            input,
            states,
            out,
        } => generate(&ctx, *family, *k, input.as_deref(), *states, out.as_deref()),
        Command::Verify { file } => verify_cmd(file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(o) => {
            print!("{}", o.stdout);
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
