//! `grsd`: self-dual abelian codes over Galois rings from the command line.

mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gr_selfdual::counting::{self, ProviderChoice};
use gr_selfdual::cyclotomic::ClassPartition;
use gr_selfdual::ideals::{self, IdealEngine};
use gr_selfdual::verification::{self, Status};
use gr_selfdual::{AbelianGroup, Duality, Error, GaloisRing, GroupRing};
use serde_json::{json, Value};

use crate::output::{Report, Table};

#[derive(Parser, Debug)]
#[command(name = "grsd", version, about = "Self-dual abelian codes in GR(p^r,s)[G]")]
struct Cli {
    /// Emit a JSON object with "parameters", "result" and "breakdown".
    #[arg(long, global = true)]
    json: bool,

    /// Append wall-clock timings (output is then no longer reproducible).
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Galois ring utilities.
    Gr {
        #[command(subcommand)]
        command: GrCommand,
    },
    /// List the p^s-cyclotomic classes of a group with their types.
    Classes(ClassesArgs),
    /// Count abelian codes (all, or Euclidean / Hermitian self-dual).
    Count(CountArgs),
    /// Whether a self-dual abelian code exists.
    Exists(ExistsArgs),
    /// Construct a self-dual abelian code.
    Construct(RingArgs),
    /// List all ideals, or all self-dual ideals, of a small group ring.
    Enumerate(EnumerateArgs),
    /// Counts of cyclic codes over a range of lengths.
    Table(TableArgs),
    /// Compare every formula with an exhaustive oracle.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum GrCommand {
    /// Describe GR(p^r, s).
    Info(GrArgs),
}

#[derive(Args, Debug)]
struct GrArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    r: u32,
    #[arg(long, default_value_t = 1)]
    s: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DualArg {
    Euclidean,
    Hermitian,
    None,
}

impl DualArg {
    fn duality(self) -> Option<Duality> {
        match self {
            Self::Euclidean => Some(Duality::Euclidean),
            Self::Hermitian => Some(Duality::Hermitian),
            Self::None => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Self::Euclidean => "euclidean",
            Self::Hermitian => "hermitian",
            Self::None => "none",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SelfDualArg {
    Euclidean,
    Hermitian,
}

impl SelfDualArg {
    fn duality(self) -> Duality {
        match self {
            Self::Euclidean => Duality::Euclidean,
            Self::Hermitian => Duality::Hermitian,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ProviderArg {
    Auto,
    Trivial,
    Closed,
    Brute,
}

impl ProviderArg {
    fn choice(self) -> ProviderChoice {
        match self {
            Self::Auto => ProviderChoice::Auto,
            Self::Trivial => ProviderChoice::Trivial,
            Self::Closed => ProviderChoice::Closed,
            Self::Brute => ProviderChoice::Brute,
        }
    }
}

#[derive(Args, Debug)]
struct ClassesArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    s: u32,
    /// Group, e.g. `Z7` or `Z2xZ4`.
    #[arg(long)]
    group: String,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    r: u32,
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, default_value_t = DualArg::Euclidean)]
    dual: DualArg,
    /// Source of the base counts over the Sylow p-subgroup.
    #[arg(long, value_enum, default_value_t = ProviderArg::Auto)]
    provider: ProviderArg,
}

#[derive(Args, Debug)]
struct ExistsArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    r: u32,
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, default_value_t = SelfDualArg::Euclidean)]
    dual: SelfDualArg,
}

#[derive(Args, Debug)]
struct RingArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    r: u32,
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, default_value_t = SelfDualArg::Euclidean)]
    dual: SelfDualArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Exhaustive join-closure enumeration.
    Brute,
    /// Componentwise enumeration (semisimple rings, self-dual codes only).
    Decomposition,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    r: u32,
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long)]
    group: String,
    /// `none` lists every ideal.
    #[arg(long, value_enum, default_value_t = DualArg::None)]
    dual: DualArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Brute)]
    method: MethodArg,
    /// Maximum number of codes listed by the decomposition method.
    #[arg(long, default_value_t = 1000)]
    limit: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 2)]
    r: u32,
    #[arg(long, default_value_t = 1)]
    s: u32,
    /// Inclusive range of lengths, `a..b`.
    #[arg(long, value_parser = parse_range)]
    lengths: (u64, u64),
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Largest ring (number of elements) checked exhaustively.
    #[arg(long, default_value_t = 1024)]
    max_ring_size: u64,
}

fn parse_range(text: &str) -> Result<(u64, u64), String> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| format!("expected `a..b`, got `{text}`"))?;
    let a: u64 = a.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    if a == 0 || a > b {
        return Err(format!("need 1 <= a <= b, got {a}..{b}"));
    }
    Ok((a, b))
}

/// Outcome of a command: printed output and the exit code.
enum Outcome {
    Ok(String),
    VerificationFailed(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    match run(&cli) {
        Ok(outcome) => {
            let (text, code) = match outcome {
                Outcome::Ok(text) => (text, ExitCode::SUCCESS),
                Outcome::VerificationFailed(text) => (text, ExitCode::from(1)),
            };
            print!("{text}");
            if cli.timings {
                eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn group(spec: &str) -> Result<AbelianGroup, Error> {
    AbelianGroup::parse(spec)
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let json = cli.json;
    let report = match &cli.command {
        Command::Gr {
            command: GrCommand::Info(args),
        } => gr_info(args)?,
        Command::Classes(args) => classes(args)?,
        Command::Count(args) => count(args)?,
        Command::Exists(args) => exists(args)?,
        Command::Construct(args) => construct(args)?,
        Command::Enumerate(args) => enumerate(args)?,
        Command::Table(args) => return table(args).map(Outcome::Ok),
        Command::Verify(args) => return Ok(verify(args, json, cli.timings)),
    };
    Ok(Outcome::Ok(report.render(json)))
}

fn gr_info(args: &GrArgs) -> Result<Report, Error> {
    let gr = GaloisRing::new(args.p, args.r, args.s)?;
    let params = json!({ "p": args.p, "r": args.r, "s": args.s });
    let result = json!({
        "ring": gr.to_string(),
        "characteristic": gr.characteristic(),
        "residue_field_size": gr.residue_field_size(),
        "size": gr.size().to_string(),
        "units": gr.unit_count().to_string(),
        "modulus": gr.modulus_string(),
        "teichmuller_generator": gr.teichmuller_generator().to_string(),
    });
    let text = format!(
        "ring: {gr}\ncharacteristic: {}\nresidue field: F_{}\nsize: {}\nunits: {}\nmodulus: {}\nteichmuller generator: {}\n",
        gr.characteristic(),
        gr.residue_field_size(),
        gr.size(),
        gr.unit_count(),
        gr.modulus_string(),
        gr.teichmuller_generator(),
    );
    Ok(Report::new(params, result, Vec::new(), text))
}

fn classes(args: &ClassesArgs) -> Result<Report, Error> {
    let g = group(&args.group)?;
    let part = ClassPartition::with_ring(&g, args.p, args.s)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for c in part.classes() {
        let elems: Vec<String> = c.elements.iter().map(|&i| g.element_at(i).to_string()).collect();
        let rep = g.element_at(c.representative).to_string();
        let herm = c.hermitian_type.map(|t| t.to_string());
        let e_partner = c.euclidean_partner.map(|i| g.element_at(i).to_string());
        let h_partner = c.hermitian_partner.map(|i| g.element_at(i).to_string());
        text.push_str(&format!(
            "{rep}\tsize {}\ttype {}{}\t{{{}}}\n",
            c.cardinality(),
            c.euclidean_type,
            herm.as_ref().map_or(String::new(), |h| format!(" / {h}")),
            elems.join(", ")
        ));
        rows.push(json!({
            "representative": rep,
            "size": c.cardinality(),
            "elements": elems,
            "euclidean_type": c.euclidean_type.to_string(),
            "hermitian_type": herm,
            "euclidean_partner": e_partner,
            "hermitian_partner": h_partner,
        }));
    }
    let (i, ii, iii) = part.euclidean_counts();
    let mut summary = json!({ "classes": part.len(), "type_I": i, "type_II": ii, "type_III_pairs": iii });
    text.push_str(&format!("classes: {}  I: {i}  II: {ii}  III pairs: {iii}", part.len()));
    if let Some((ii_p, iii_p)) = part.hermitian_counts() {
        summary["type_II'"] = json!(ii_p);
        summary["type_III'_pairs"] = json!(iii_p);
        text.push_str(&format!("  II': {ii_p}  III' pairs: {iii_p}"));
    }
    text.push('\n');
    let params = json!({ "p": args.p, "s": args.s, "q": part.q(), "group": g.to_string() });
    Ok(Report::new(params, summary, rows, text))
}

fn count(args: &CountArgs) -> Result<Report, Error> {
    let g = group(&args.group)?;
    let provider = args.provider.choice().build(ideals::exhaustive_bound_from_env());
    let report = counting::count_codes(args.p, args.r, args.s, &g, args.dual.duality(), provider.as_ref())?;
    let providers: std::collections::BTreeSet<&str> =
        report.breakdown.iter().map(|row| row.provider.as_str()).collect();
    let mut params = serde_json::to_value(&report.parameters).expect("serialisable");
    params["provider"] = json!(provider.name());
    let result = json!({
        "count": report.count.to_string(),
        "providers_used": providers,
    });
    let breakdown = report
        .breakdown
        .iter()
        .map(|row| serde_json::to_value(row).expect("serialisable"))
        .collect();
    Ok(Report::new(params, result, breakdown, format!("{}\n", report.count)))
}

fn exists(args: &ExistsArgs) -> Result<Report, Error> {
    let g = group(&args.group)?;
    let duality = args.dual.duality();
    let answer = counting::exists_self_dual(args.p, args.r, args.s, &g, duality)?;
    let params = json!({
        "p": args.p, "r": args.r, "s": args.s, "group": g.to_string(), "duality": duality.to_string(),
    });
    Ok(Report::new(params, json!(answer), Vec::new(), format!("{answer}\n")))
}

fn ring_params(p: u64, r: u32, s: u32, g: &AbelianGroup, dual: &str) -> Value {
    json!({ "p": p, "r": r, "s": s, "group": g.to_string(), "duality": dual })
}

fn construct(args: &RingArgs) -> Result<Report, Error> {
    let g = group(&args.group)?;
    let duality = args.dual.duality();
    let code = ideals::construct_self_dual(args.p, args.r, args.s, &g, duality)?;
    let gens: Vec<String> = code.generators.iter().map(|u| code.ring.format(u)).collect();
    let verified = match &code.ideal {
        Some(ideal) => Some(IdealEngine::new(code.ring.clone())?.is_self_dual(ideal, duality)?),
        None => None,
    };
    let size = code.ideal.as_ref().map(|i| i.size().to_string());
    let mut text: String = gens.iter().map(|g| format!("{g}\n")).collect();
    if let Some(v) = verified {
        text.push_str(&format!("self-dual: {v}\n"));
    }
    let result = json!({
        "ring": code.ring.to_string(),
        "generators": gens,
        "size": size,
        "self_dual": verified,
    });
    let params = ring_params(args.p, args.r, args.s, &g, &duality.to_string());
    Ok(Report::new(params, result, Vec::new(), text))
}

fn enumerate(args: &EnumerateArgs) -> Result<Report, Error> {
    let g = group(&args.group)?;
    let params = ring_params(args.p, args.r, args.s, &g, args.dual.name());
    match args.method {
        MethodArg::Brute => {
            let gr = GaloisRing::shared(args.p, args.r, args.s)?;
            let ring = GroupRing::shared(gr, g.clone());
            let engine = IdealEngine::with_bound(ring.clone(), ideals::exhaustive_bound_from_env())?;
            let found = match args.dual.duality() {
                None => engine.enumerate_ideals()?,
                Some(d) => engine.self_dual_ideals(d)?,
            };
            let mut text = String::new();
            let rows: Vec<Value> = found
                .iter()
                .map(|ideal| {
                    let gens: Vec<String> = ideal.generators().iter().map(|u| ring.format(u)).collect();
                    text.push_str(&format!("<{}>\n", gens.join(", ")));
                    json!({ "generators": gens, "size": ideal.size().to_string() })
                })
                .collect();
            text.push_str(&format!("total: {}\n", found.len()));
            let result = json!({ "ring": ring.to_string(), "count": found.len().to_string() });
            Ok(Report::new(params, result, rows, text))
        }
        MethodArg::Decomposition => {
            let duality = args.dual.duality().ok_or_else(|| {
                Error::InvalidParameter("the decomposition method lists self-dual codes; pass --dual".into())
            })?;
            let en = ideals::enumerate_semisimple_selfdual(args.p, args.r, args.s, &g, duality, args.limit)?;
            let mut text = String::new();
            let rows: Vec<Value> = en
                .representatives
                .iter()
                .map(|u| {
                    let gen = en.ring.format(u);
                    text.push_str(&format!("<{gen}>\n"));
                    json!({ "generators": [gen] })
                })
                .collect();
            text.push_str(&format!("total: {}\n", en.count));
            let result = json!({ "ring": en.ring.to_string(), "count": en.count.to_string() });
            Ok(Report::new(params, result, rows, text))
        }
    }
}

fn table(args: &TableArgs) -> Result<String, Error> {
    if !gr_selfdual::arith::is_prime(args.p) {
        return Err(Error::NotPrime(args.p));
    }
    let bound = ideals::exhaustive_bound_from_env();
    let provider = ProviderChoice::Auto.build(bound);
    let cell = |n: u64, duality: Option<Duality>| -> Option<String> {
        if duality == Some(Duality::Hermitian) && !args.s.is_multiple_of(2) {
            return None;
        }
        let report = if args.r == 2 {
            counting::cyclic_count_length_n(args.p, args.s, n, duality)
        } else {
            let g = AbelianGroup::cyclic(n).ok()?;
            counting::count_codes(args.p, args.r, args.s, &g, duality, provider.as_ref())
        };
        report.ok().map(|r| r.count.to_string())
    };
    let mut table = Table::new(&["n", "NC", "NEC", "NHC"]);
    for n in args.lengths.0..=args.lengths.1 {
        table.push(vec![
            Some(n.to_string()),
            cell(n, None),
            cell(n, Some(Duality::Euclidean)),
            cell(n, Some(Duality::Hermitian)),
        ]);
    }
    let params = json!({ "p": args.p, "r": args.r, "s": args.s, "lengths": [args.lengths.0, args.lengths.1] });
    Ok(match args.format {
        FormatArg::Csv => table.to_csv(),
        FormatArg::Json => table.to_json(params),
    })
}

fn verify(args: &VerifyArgs, json: bool, timings: bool) -> Outcome {
    let records = verification::run_verification(args.max_ring_size);
    let failed = records.iter().filter(|r| r.status == Status::Fail).count();
    let text = if json {
        let rows: Vec<Value> = records
            .iter()
            .map(|r| {
                let mut v = serde_json::to_value(r).expect("serialisable");
                if timings {
                    v["elapsed_ms"] = json!(r.elapsed_ms);
                }
                v
            })
            .collect();
        let doc = json!({
            "parameters": { "max_ring_size": args.max_ring_size },
            "result": { "records": records.len(), "passed": records.len() - failed, "failed": failed },
            "breakdown": rows,
        });
        format!("{}\n", serde_json::to_string_pretty(&doc).expect("serialisable"))
    } else {
        let mut out = String::new();
        for r in &records {
            let status = if r.status == Status::Pass { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status}  {:<22} p={} r={} s={} G={:<10} formula={} oracle={} ({})",
                r.check, r.p, r.r, r.s, r.group, r.formula, r.oracle, r.oracle_kind
            ));
            if timings {
                out.push_str(&format!(" {:.1} ms", r.elapsed_ms));
            }
            out.push('\n');
        }
        out.push_str(&format!("{} passed, {failed} failed\n", records.len() - failed));
        out
    };
    if failed == 0 {
        Outcome::Ok(text)
    } else {
        Outcome::VerificationFailed(text)
    }
}
