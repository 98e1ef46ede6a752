//! The `ztile` command line front end.
//!
//! Every subcommand produces a [`CommandResult`]; `--json` prints it as one
//! JSON object, otherwise it is rendered as text. Exit codes: 0 ok,
//! 1 violation (valid input, property fails), 2 usage or parse error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::certify::{self, Certifier};
use crate::construct::{self, ConstructionJson, QUADRATIC_THRESHOLD};
use crate::error::Error;
use crate::interval;
use crate::poly::CyclotomicCache;
use crate::search::{self, SearchOptions, DEFAULT_GUARD};
use crate::tiling::{
    cyclic_cover_counts, first_bad_cell, normalize_tile, CyclicSet, CyclicTilingJson,
    IntervalTiling,
};

pub const GUARD_ENV: &str = "ZTILE_GUARD_D";

/// Residues shown by `--render` before truncating.
const RENDER_LIMIT: usize = 4096;

#[derive(Debug, Parser)]
#[command(name = "ztile", version, about = "Translational tilings of the integers and of Z_M")]
pub struct Cli {
    /// Print the result as a JSON object.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check A ⊕ B' = Z_M or A ⊕ B = [n].
    Verify(VerifyArgs),
    /// Least period of a subset of Z_M.
    Period(PeriodArgs),
    /// Build a tiling with a long least period for a diameter budget.
    Construct(ConstructArgs),
    /// Cyclotomic period certificate of a tile.
    Certify(CertifyArgs),
    /// Effective bounds on the longest period for diameter D.
    Bounds(BoundsArgs),
    /// Factor an interval tiling.
    Decompose(DecomposeArgs),
    /// Exhaustive table of the longest least period per diameter.
    Search(SearchArgs),
    /// Coefficients of the n-th cyclotomic polynomial.
    Cyclotomic(CyclotomicArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub modulus: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub tile: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub complement: Option<String>,
    /// Length n of the interval [n].
    #[arg(long)]
    pub interval: Option<usize>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    /// Read {"modulus", "tile", "complement"} from a JSON file ("-" for stdin).
    #[arg(long, value_name = "FILE")]
    pub from_json: Option<PathBuf>,
    /// Print an ASCII strip labelling each cell by the translate covering it.
    #[arg(long)]
    pub render: bool,
}

#[derive(Debug, Args)]
pub struct PeriodArgs {
    #[arg(long)]
    pub modulus: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub set: String,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub diameter: usize,
    /// Fail instead of falling back below the quadratic threshold.
    #[arg(long)]
    pub force_quadratic: bool,
    #[arg(long)]
    pub render: bool,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub tile: String,
    /// Also report the period forced on every complement mod M.
    #[arg(long)]
    pub modulus: Option<usize>,
    /// Also list the moduli up to this cap that admit a non-periodic complement.
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub diameter: usize,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
    /// Emit the full recursive decomposition.
    #[arg(long)]
    pub tree: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub max_diameter: usize,
    /// Try every modulus up to the cap instead of certificate candidates.
    #[arg(long)]
    pub unpruned: bool,
    /// Largest modulus tried (default 2^D, which makes the answer exact).
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long)]
    pub jobs: Option<usize>,
    /// One JSON object per row instead of the result envelope.
    #[arg(long)]
    pub jsonl: bool,
}

#[derive(Debug, Args)]
pub struct CyclotomicArgs {
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub message: String,
    pub payload: Value,
    /// Extra human-readable output (tables, renders); not part of the JSON.
    #[serde(skip)]
    pub text: Option<String>,
}

impl CommandResult {
    fn ok(message: impl Into<String>, payload: Value) -> Self {
        CommandResult { status: Status::Ok, message: message.into(), payload, text: None }
    }

    fn violation(message: impl Into<String>, payload: Value) -> Self {
        CommandResult { status: Status::Violation, message: message.into(), payload, text: None }
    }

    fn error(message: impl Into<String>) -> Self {
        CommandResult { status: Status::Error, message: message.into(), payload: Value::Null, text: None }
    }

    fn with_text(mut self, text: Option<String>) -> Self {
        self.text = text;
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Error => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", status_word(self.status), self.message);
        if let Value::Object(map) = &self.payload {
            for (k, v) in map {
                // tables in `text` replace nested rows
                let nested = matches!(v, Value::Array(items) if items.iter().any(Value::is_object));
                if nested && self.text.is_some() {
                    continue;
                }
                let _ = writeln!(out, "  {k}: {}", text_value(v));
            }
        }
        if let Some(t) = &self.text {
            out.push_str(t);
            if !t.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::Violation => "violation",
        Status::Error => "error",
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            items.iter().map(text_value).collect::<Vec<_>>().join(",")
        }
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

type CmdResult = std::result::Result<CommandResult, CommandResult>;

fn usage(err: impl std::fmt::Display) -> CommandResult {
    CommandResult::error(err.to_string())
}

/// Comma-separated decimal integers; the empty string is the empty list.
pub fn parse_list(raw: &str) -> std::result::Result<Vec<i64>, String> {
    let raw = raw.trim();
    if raw.is_empty() {
        return Ok(Vec::new());
    }
    raw.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|e| format!("bad integer {s:?} in list {raw:?}: {e}")))
        .collect()
}

fn parse_naturals(raw: &str, what: &str) -> std::result::Result<Vec<usize>, CommandResult> {
    let list = parse_list(raw).map_err(usage)?;
    list.into_iter()
        .map(|x| usize::try_from(x).map_err(|_| usage(format!("{what} must be non-negative, got {x}"))))
        .collect()
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> std::result::Result<&'a str, CommandResult> {
    v.as_deref().ok_or_else(|| usage(format!("missing --{flag}")))
}

const LABELS: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

/// One character per cell: the label of the translate covering it, `.` if
/// uncovered, `#` if covered more than once.
fn render_strip(len: usize, covers: impl Fn(&mut dyn FnMut(usize, usize))) -> String {
    let shown = len.min(RENDER_LIMIT);
    let mut cells: Vec<Option<usize>> = vec![None; shown];
    let mut multi = vec![false; shown];
    covers(&mut |cell, translate| {
        if cell < shown {
            if cells[cell].is_some() {
                multi[cell] = true;
            }
            cells[cell] = Some(translate);
        }
    });
    let mut out = String::new();
    for (row, chunk) in (0..shown).collect::<Vec<_>>().chunks(64).enumerate() {
        let _ = write!(out, "{:>7} ", row * 64);
        for &c in chunk {
            out.push(match (multi[c], cells[c]) {
                (true, _) => '#',
                (false, None) => '.',
                (false, Some(t)) => LABELS[t % LABELS.len()] as char,
            });
        }
        out.push('\n');
    }
    if shown < len {
        let _ = writeln!(out, "        ... first {shown} of {len} cells shown");
    }
    out
}

fn render_cyclic(tile: &[usize], complement: &[usize], m: usize) -> String {
    render_strip(m, |mark| {
        for (idx, &b) in complement.iter().enumerate() {
            for &a in tile {
                mark((a + b) % m, idx);
            }
        }
    })
}

fn verify_cyclic(raw_tile: &[i64], raw_complement: &[i64], m: usize, render: bool) -> CmdResult {
    let tile = normalize_tile(raw_tile).map_err(usage)?;
    let shift = raw_tile.iter().min().copied().unwrap_or(0);
    // shifting B' by min(A) keeps every sum a + b unchanged
    let complement =
        CyclicSet::new(m, raw_complement.iter().map(|&b| b + shift)).map_err(usage)?;
    let counts = cyclic_cover_counts(&tile, &complement);
    let text = render.then(|| render_cyclic(tile.elements(), complement.elements(), m));
    Ok(match first_bad_cell(&counts) {
        None => CommandResult::ok(
            format!("A ⊕ B' = Z_{m}"),
            json!({"tiling": true, "modulus": m}),
        ),
        Some(w) => CommandResult::violation(
            format!("not a tiling of Z_{m}: residue {} covered {} times", w.residue, w.count),
            json!({"tiling": false, "modulus": m, "witness": w}),
        ),
    }
    .with_text(text))
}

fn verify_interval(t: &IntervalTiling, render: bool) -> CommandResult {
    let (counts, outside) = t.cover_counts();
    let text = render.then(|| {
        render_strip(t.n(), |mark| {
            for (idx, &b) in t.b().iter().enumerate() {
                for &a in t.a() {
                    mark(a + b, idx);
                }
            }
        })
    });
    let n = t.n();
    let result = match first_bad_cell(&counts) {
        None if outside == 0 => CommandResult::ok(format!("A ⊕ B = [{n}]"), json!({"tiling": true, "n": n})),
        None => CommandResult::violation(
            format!("not a tiling of [{n}]: {outside} sums fall outside the interval"),
            json!({"tiling": false, "n": n, "witness": {"outside": outside}}),
        ),
        Some(w) => CommandResult::violation(
            format!("not a tiling of [{n}]: {} covered {} times", w.residue, w.count),
            json!({"tiling": false, "n": n, "witness": w}),
        ),
    };
    result.with_text(text)
}

fn read_json_input(path: &PathBuf) -> std::result::Result<CyclicTilingJson, CommandResult> {
    let raw = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(usage)?
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?
    };
    let value: Value = serde_json::from_str(&raw).map_err(|e| usage(format!("invalid JSON: {e}")))?;
    // accept a bare tiling object or a full result envelope
    let inner = match value.get("payload") {
        Some(p) if p.is_object() => p.clone(),
        _ => value,
    };
    serde_json::from_value(inner).map_err(|e| usage(format!("invalid tiling JSON: {e}")))
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    if let Some(path) = &args.from_json {
        let t = read_json_input(path)?;
        return verify_cyclic(&t.tile, &t.complement, t.modulus, args.render);
    }
    match (args.modulus, args.interval) {
        (Some(m), None) => {
            let tile = parse_list(required(&args.tile, "tile")?).map_err(usage)?;
            let comp = parse_list(required(&args.complement, "complement")?).map_err(usage)?;
            if m == 0 {
                return Err(usage(Error::ZeroModulus));
            }
            verify_cyclic(&tile, &comp, m, args.render)
        }
        (None, Some(n)) => {
            let a = parse_naturals(required(&args.a, "a")?, "A")?;
            let b = parse_naturals(required(&args.b, "b")?, "B")?;
            let t = IntervalTiling::new(n, a, b).map_err(usage)?;
            Ok(verify_interval(&t, args.render))
        }
        _ => Err(usage("give exactly one of --modulus (with --tile, --complement), --interval (with --a, --b) or --from-json")),
    }
}

fn cmd_period(args: &PeriodArgs) -> CmdResult {
    let set = CyclicSet::new(args.modulus, parse_list(&args.set).map_err(usage)?).map_err(usage)?;
    let t = set.least_period();
    Ok(CommandResult::ok(
        format!("least period {t} mod {}", args.modulus),
        json!({"least_period": t, "periodic_mod_M": t < args.modulus}),
    ))
}

fn cmd_construct(args: &ConstructArgs) -> CmdResult {
    let d = args.diameter;
    if d == 0 {
        return Err(usage("--diameter must be at least 1"));
    }
    let best = if args.force_quadratic {
        let c = construct::construct_long_period(d)
            .map_err(usage)?
            .ok_or_else(|| usage(Error::BelowThreshold(d)))?;
        construct::BestConstruction {
            diameter: d,
            mode: construct::Mode::Quadratic,
            primes: Some((c.p, c.q)),
            least_period: c.tiling.least_period(),
            tiling: c.tiling,
        }
    } else {
        construct::construct_best(d).map_err(usage)?
    };
    let out = ConstructionJson::from(&best);
    let text = args
        .render
        .then(|| render_cyclic(&out.tile, &out.complement, out.modulus));
    let msg = match best.mode {
        construct::Mode::Quadratic => format!(
            "quadratic construction: M = {} = 30·{}·{}, non-periodic complement",
            out.modulus,
            out.p.unwrap_or(0),
            out.q.unwrap_or(0)
        ),
        construct::Mode::Fallback => format!(
            "fallback construction: M = 2D = {} (quadratic needs D >= {QUADRATIC_THRESHOLD})",
            out.modulus
        ),
    };
    Ok(CommandResult::ok(msg, serde_json::to_value(&out).expect("serializable")).with_text(text))
}

fn cmd_certify(args: &CertifyArgs) -> CmdResult {
    let tile = normalize_tile(&parse_list(&args.tile).map_err(usage)?).map_err(usage)?;
    let mut certifier = Certifier::new();
    let cert = certifier.certificate(&tile).map_err(usage)?;
    let mut payload = serde_json::to_value(&cert).expect("serializable");
    let mut msg = format!("{} cyclotomic divisors, t_lcm = {}", cert.k(), cert.t_lcm);
    if let Some(m) = args.modulus {
        if m == 0 {
            return Err(usage(Error::ZeroModulus));
        }
        let t0 = certifier.forced_period(&tile, m).map_err(usage)?;
        payload["forced_period"] = json!(t0);
        let _ = write!(msg, "; every complement mod {m} has period {t0}");
    }
    if let Some(cap) = args.cap {
        let c = certifier.nonperiodic_modulus_candidates(&tile, cap).map_err(usage)?;
        payload["candidates"] = json!(c);
    }
    Ok(CommandResult::ok(msg, payload))
}

fn cmd_bounds(args: &BoundsArgs) -> CmdResult {
    if args.diameter == 0 {
        return Err(usage("--diameter must be at least 1"));
    }
    let r = certify::report_bounds(args.diameter).map_err(usage)?;
    let msg = match r.max_t_lcm {
        Some(l) => format!("{} <= longest period <= {l}", r.lower),
        None => format!(
            "{} <= longest period <= {} (tile scan skipped above D = {})",
            r.lower,
            r.newman_cap,
            certify::BOUNDS_SCAN_LIMIT
        ),
    };
    Ok(CommandResult::ok(msg, serde_json::to_value(&r).expect("serializable")))
}

fn cmd_decompose(args: &DecomposeArgs) -> CmdResult {
    let a = parse_naturals(&args.a, "A")?;
    let b = parse_naturals(&args.b, "B")?;
    let t = IntervalTiling::new(args.n, a, b).map_err(usage)?;
    if t.n() <= 1 {
        return Err(usage("n>1 required"));
    }
    let result = if args.tree {
        interval::decomposition_tree(&t).map(|tree| serde_json::to_value(tree).expect("serializable"))
    } else {
        interval::long_decompose(&t).map(|d| serde_json::to_value(d).expect("serializable"))
    };
    match result {
        Ok(v) => {
            let msg = format!("m = {}, scaled side {}", v["m"], v["scaled_side"].as_str().unwrap_or("?"));
            Ok(CommandResult::ok(msg, v))
        }
        Err(Error::NotATiling { residue, count }) => Ok(CommandResult::violation(
            format!("not a tiling of [{}]: {residue} covered {count} times", t.n()),
            json!({"tiling": false, "witness": {"residue": residue, "count": count}}),
        )),
        Err(e) => Err(usage(e)),
    }
}

fn guard_from_env() -> std::result::Result<usize, CommandResult> {
    match std::env::var(GUARD_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| usage(format!("{GUARD_ENV}={v:?} is not a valid diameter: {e}"))),
        Err(_) => Ok(DEFAULT_GUARD),
    }
}

fn search_table(rows: &[search::SearchWitness]) -> String {
    let mut out = String::from("  D  T(D)  tile                 M     complement\n");
    for r in rows {
        let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let _ = writeln!(
            out,
            "{:>3}  {:>4}  {:<19}  {:>4}  {}{}",
            r.diameter,
            r.value,
            format!("{{{}}}", list(r.tile.elements())),
            r.modulus(),
            format!("{{{}}}", list(r.complement.elements())),
            if r.exact { "" } else { "  (lower bound)" }
        );
    }
    out
}

fn cmd_search(args: &SearchArgs) -> CmdResult {
    let opts = SearchOptions { cap: args.cap, pruned: !args.unpruned, guard: guard_from_env()? };
    let run = || search::emit_table(args.max_diameter, &opts);
    let rows = match args.jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(usage)?
            .install(run),
        None => run(),
    }
    .map_err(usage)?;
    let exact = rows.iter().all(|r| r.exact);
    let payload = json!({
        "source": "exhaustive search",
        "pruned": opts.pruned,
        "exact": exact,
        "rows": rows,
    });
    let msg = format!(
        "longest least period for D = 1..{} (exhaustive search{})",
        args.max_diameter,
        if exact { "" } else { ", capped: lower bounds" }
    );
    let text = if args.jsonl {
        rows.iter().map(|r| serde_json::to_string(r).expect("serializable") + "\n").collect()
    } else {
        search_table(&rows)
    };
    let result = CommandResult::ok(msg, payload).with_text(Some(text));
    Ok(result)
}

fn cmd_cyclotomic(args: &CyclotomicArgs) -> CmdResult {
    let mut cache = CyclotomicCache::<i64>::new();
    let p = cache.get(args.n).map_err(usage)?.clone();
    Ok(CommandResult::ok(
        format!("Φ_{}(x) = {p}", args.n),
        json!({"n": args.n, "degree": p.degree(), "coeffs": p.coeffs()}),
    ))
}

pub fn execute(cli: &Cli) -> CommandResult {
    let r = match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Period(a) => cmd_period(a),
        Command::Construct(a) => cmd_construct(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Search(a) => cmd_search(a),
        Command::Cyclotomic(a) => cmd_cyclotomic(a),
    };
    r.unwrap_or_else(|e| e)
}

/// Parse, execute and format. Returns the exit code and the text for stdout.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let result = execute(&cli);
    let jsonl = matches!(&cli.command, Command::Search(s) if s.jsonl) && result.status == Status::Ok;
    let out = if jsonl {
        result.text.clone().unwrap_or_default()
    } else if cli.json {
        result.to_json() + "\n"
    } else {
        result.to_text()
    };
    (result.exit_code(), out)
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (code, out) = run(args);
    if code == 2 {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn json_of(args: &[&str]) -> (i32, Value) {
        let mut full = vec!["ztile", "--json"];
        full.extend_from_slice(args);
        let (code, out) = run(full);
        (code, serde_json::from_str(&out).unwrap_or(Value::Null))
    }

    #[test]
    fn list_parsing() {
        assert_eq!(parse_list("0,1, 3").unwrap(), vec![0, 1, 3]);
        assert_eq!(parse_list("-1,2").unwrap(), vec![-1, 2]);
        assert!(parse_list("").unwrap().is_empty());
        assert!(parse_list("0,x").is_err());
    }

    #[test]
    fn verify_shifted_tile_keeps_witness() {
        // A = {1,2} with B' = {0,1}: sums 1,2,2,3
        let (code, v) = json_of(&["verify", "--modulus", "4", "--tile", "1,2", "--complement", "0,1"]);
        assert_eq!(code, 1);
        assert_eq!(v["payload"]["witness"]["residue"], 0);
    }

    #[test]
    fn usage_errors_exit_2() {
        let (code, v) = json_of(&["verify", "--modulus", "4", "--tile", "0,a", "--complement", "0"]);
        assert_eq!(code, 2);
        assert_eq!(v["status"], "error");
        let (code, _) = run(["ztile", "nonsense"]);
        assert_eq!(code, 2);
        let (code, _) = json_of(&["verify", "--tile", "0,1"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn help_exits_0() {
        let (code, out) = run(["ztile", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify"));
    }

    #[test]
    fn render_strip_labels() {
        let s = render_cyclic(&[0, 1], &[0, 2], 4);
        assert!(s.ends_with("aabb\n"));
        let s = render_cyclic(&[0, 1], &[0, 1], 4);
        assert!(s.contains("a#b."));
    }
}
