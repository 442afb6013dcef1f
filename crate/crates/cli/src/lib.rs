//! Command-line front end. `run` returns the process exit code:
//! 0 success, 1 counterexample or failed check, 2 usage error, 3 internal error.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use nsrig_core::graded::{self, ideal_tensor_torsion};
use nsrig_core::linkage::link;
use nsrig_core::rigidity::{self, OracleMode};
use nsrig_core::search::{self, Filters};
use nsrig_core::{Error, NumericalSemigroup, RelativeIdeal};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FOUND: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "nsrig", version, about = "Rigidity of monomial ideals in numerical semigroup rings")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Semigroup invariants.
    Ns {
        #[arg(value_parser = parse_positive_list)]
        gens: List,
    },
    /// Ideal report: generators, dual, trace, End ring, lengths.
    Ideal {
        #[arg(long, value_parser = parse_positive_list)]
        ns: List,
        #[arg(value_parser = parse_list, allow_hyphen_values = true)]
        gens: List,
    },
    /// Decide rigidity.
    Rigid {
        #[arg(long, value_parser = parse_positive_list)]
        ns: List,
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        ideal: List,
        #[arg(long, default_value = "both")]
        oracle: OracleMode,
    },
    /// Torsion of a tensor product of two ideals.
    Tensor {
        #[arg(long, value_parser = parse_positive_list)]
        ns: List,
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        left: List,
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        right: List,
    },
    /// Link an ideal through a monomial in it.
    Link {
        #[arg(long, value_parser = parse_positive_list)]
        ns: List,
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        ideal: List,
        #[arg(long)]
        via: i64,
    },
    /// Scan every ideal class over every selected semigroup.
    Scan(ScanArgs),
    /// Check theorem statements against a results file.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, default_value_t = 10)]
    max_genus: usize,
    #[arg(long)]
    max_mult: Option<i64>,
    #[arg(long)]
    max_embdim: Option<usize>,
    #[arg(long)]
    symmetric: bool,
    #[arg(long)]
    ci: bool,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    resume: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

/// Comma-separated integers.
#[derive(Clone, Debug)]
struct List(Vec<i64>);

fn parse_list(s: &str) -> Result<List, String> {
    let out: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<_, _>>()?;
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(List(out))
}

fn parse_positive_list(s: &str) -> Result<List, String> {
    let out = parse_list(s)?;
    if let Some(bad) = out.0.iter().find(|&&g| g <= 0) {
        return Err(format!("generator {bad} is not positive"));
    }
    Ok(out)
}

enum Failure {
    Core(Error),
    Io(std::io::Error),
    Found,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

fn max_genus_limit() -> usize {
    std::env::var("NSRIG_MAX_GENUS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(search::DEFAULT_MAX_GENUS)
}

fn list(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn semigroup(gens: &[i64]) -> Result<Arc<NumericalSemigroup>, Error> {
    Ok(Arc::new(NumericalSemigroup::new(gens)?))
}

fn emit(out: &mut dyn Write, json: bool, value: Value, human: &[String]) -> std::io::Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serializable"))
    } else {
        for line in human {
            writeln!(out, "{line}")?;
        }
        Ok(())
    }
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Found) => EXIT_FOUND,
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_internal() {
                EXIT_INTERNAL
            } else {
                EXIT_USAGE
            }
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Ns { gens } => ns(&gens.0, json, out),
        Command::Ideal { ns, gens } => ideal(&ns.0, &gens.0, json, out),
        Command::Rigid { ns, ideal, oracle } => rigid(&ns.0, &ideal.0, oracle, json, out),
        Command::Tensor { ns, left, right } => tensor(&ns.0, &left.0, &right.0, json, out),
        Command::Link { ns, ideal, via } => link_cmd(&ns.0, &ideal.0, via, json, out),
        Command::Scan(args) => scan(args, json, out, err),
        Command::Verify { input } => verify(&input, json, out),
    }
}

fn ns(gens: &[i64], json: bool, out: &mut dyn Write) -> Outcome {
    let s = semigroup(gens)?;
    let apery = s.apery(s.multiplicity())?;
    let value = json!({
        "generators": s.generators(),
        "multiplicity": s.multiplicity(),
        "embedding_dimension": s.embedding_dimension(),
        "frobenius": s.frobenius(),
        "conductor": s.conductor(),
        "genus": s.genus(),
        "gaps": s.gaps(),
        "apery": apery,
        "symmetric": s.is_symmetric(),
        "complete_intersection": s.is_complete_intersection(),
    });
    let human = vec![
        format!("semigroup: {s}"),
        format!("multiplicity: {}", s.multiplicity()),
        format!("embedding dimension: {}", s.embedding_dimension()),
        format!("frobenius: {}", s.frobenius()),
        format!("conductor: {}", s.conductor()),
        format!("genus: {}", s.genus()),
        format!("gaps: {}", list(&s.gaps())),
        format!("apery({}): {}", s.multiplicity(), list(&apery)),
        format!("symmetric: {}", s.is_symmetric()),
        format!("complete intersection: {}", s.is_complete_intersection()),
    ];
    Ok(emit(out, json, value, &human)?)
}

fn ideal(ns: &[i64], gens: &[i64], json: bool, out: &mut dyn Write) -> Outcome {
    let s = semigroup(ns)?;
    let i = RelativeIdeal::new(&s, gens)?;
    let dual = i.dual();
    let trace = i.trace();
    let end = i.end_ring();
    let mut value = json!({
        "semigroup": s.generators(),
        "generators": i.generators(),
        "nu": i.nu(),
        "min": i.min(),
        "conductor": i.conductor(),
        "principal": i.is_principal(),
        "integral": i.is_integral(),
        "dual": dual.generators(),
        "trace": trace.generators(),
        "end_ring": end.generators(),
        "end_colength": rigidity::end_colength(&i),
    });
    let mut human = vec![
        format!("ideal: {i} over {s}"),
        format!("generators: {} (nu = {})", list(i.generators()), i.nu()),
        format!("principal: {}", i.is_principal()),
        format!("dual: {dual}"),
        format!("trace: {trace}"),
        format!("End: {end}"),
        format!("length End/R: {}", rigidity::end_colength(&i)),
    ];
    if i.is_integral() {
        let colength = s.unit_ideal().quotient_length(&i)?;
        let trace_colength = trace.quotient_length(&i)?;
        let cm_type = graded::cm_type(&i)?;
        value["colength"] = json!(colength);
        value["trace_colength"] = json!(trace_colength);
        value["cm_type"] = json!(cm_type);
        human.push(format!("length R/I: {colength}"));
        human.push(format!("length tr(I)/I: {trace_colength}"));
        human.push(format!("type of R/I: {cm_type}"));
    }
    Ok(emit(out, json, value, &human)?)
}

fn rigid(ns: &[i64], gens: &[i64], mode: OracleMode, json: bool, out: &mut dyn Write) -> Outcome {
    let s = semigroup(ns)?;
    let i = RelativeIdeal::new(&s, gens)?;
    let ext1 = match mode {
        OracleMode::Torsion => None,
        _ => Some(rigidity::ext1_length(&i)?),
    };
    let torsion = match mode {
        OracleMode::Length => None,
        _ => Some(rigidity::self_dual_torsion(&i)?),
    };
    let rigid = rigidity::is_rigid(&i, mode)?;
    let mut reasons = Vec::new();
    if let Some(x) = ext1 {
        reasons.push(format!("ext1={x}"));
    }
    if let Some(t) = torsion {
        reasons.push(if t == 0 { "torsion=0".to_string() } else { "torsion>0".to_string() });
    }
    let mut human = vec![format!("rigid: {rigid} ({})", reasons.join(", "))];
    let mut value = json!({
        "rigid": rigid,
        "oracle": mode,
        "ext1_length": ext1,
        "torsion_length": torsion,
        "principal": i.is_principal(),
    });
    if i.is_integral() && (s.is_symmetric() || mode == OracleMode::Torsion) {
        let report = rigidity::rigidity_report(&i)?;
        human.push(format!("principal: {}", i.is_principal()));
        human.push(format!("length R/I: {}", report.colength));
        human.push(format!("length End/R: {}", report.end_colength));
        human.push(format!("length c(R,I): {}", report.twisted_conormal_length));
        human.push(format!("length tr(I)/I: {}", report.trace_colength));
        if let Some(t) = torsion {
            human.push(format!("torsion length: {t}"));
        }
        human.push(format!("conormal defect: {}", report.conormal_defect));
        human.push(format!("delta (monomial): {}", report.delta_mono));
        human.push(format!("End: <{}>", list(&report.end_ring_generators)));
        value["report"] = serde_json::to_value(&report).expect("serializable");
    }
    Ok(emit(out, json, value, &human)?)
}

fn tensor(ns: &[i64], left: &[i64], right: &[i64], json: bool, out: &mut dyn Write) -> Outcome {
    let s = semigroup(ns)?;
    let e = RelativeIdeal::new(&s, left)?;
    let f = RelativeIdeal::new(&s, right)?;
    let d = ideal_tensor_torsion(&e, &f)?;
    let mut human = vec![format!("torsion length: {}", d.torsion_length)];
    for c in d.per_degree.iter().filter(|c| c.torsion > 0) {
        human.push(format!(
            "  degree {}: {} symbols, {} components, torsion {}",
            c.degree, c.symbols, c.components, c.torsion
        ));
    }
    if let Some(w) = &d.window {
        human.push(format!("checked to degree {} (bound {})", w.top, w.bound));
    }
    let value = serde_json::to_value(&d).expect("serializable");
    Ok(emit(out, json, value, &human)?)
}

fn link_cmd(ns: &[i64], gens: &[i64], via: i64, json: bool, out: &mut dyn Write) -> Outcome {
    let s = semigroup(ns)?;
    let i = RelativeIdeal::new(&s, gens)?;
    let l = link(&i, via)?;
    let human = vec![
        format!("linked ideal: ({}) via t^{via}", list(&l.linked)),
        format!("double link: ({})", list(&l.double_link)),
        format!("involution: {}", l.involution),
        format!("type of R/J: {}", l.linked_type),
        format!("Gorenstein quotient: {}", l.gorenstein_quotient),
        format!("End rings equal: {}", l.end_equal),
        format!(
            "J to dual shift: {}",
            l.dual_iso_shift.map_or("none".to_string(), |c| c.to_string())
        ),
        format!("length additivity: {}", l.length_additive),
    ];
    let value = serde_json::to_value(&l).expect("serializable");
    Ok(emit(out, json, value, &human)?)
}

fn scan(args: ScanArgs, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let filters = Filters {
        symmetric: args.symmetric,
        ci: args.ci,
        max_mult: args.max_mult,
        max_embdim: args.max_embdim,
    };
    let start = Instant::now();
    let semigroups = search::enumerate_semigroups_with_limit(args.max_genus, &filters, max_genus_limit())?;
    let summary = search::scan_conjecture(&semigroups, &args.out, args.resume, args.jobs)?;
    writeln!(err, "scan finished in {:.2}s", start.elapsed().as_secs_f64())?;
    let mut human = vec![
        format!("semigroups: {}", summary.semigroups),
        format!("instances: {}", summary.instances),
        format!("resumed: {}", summary.resumed),
        format!("rigid: {}", summary.rigid),
        format!("principal: {}", summary.principal),
        format!("non-principal rigid: {}", summary.counterexamples.len()),
    ];
    for r in &summary.counterexamples {
        human.push(format!("COUNTEREXAMPLE: <{}> ideal ({})", list(&r.sg), list(&r.ideal)));
    }
    let value = serde_json::to_value(&summary).expect("serializable");
    emit(out, json, value, &human)?;
    if summary.counterexamples.is_empty() {
        Ok(())
    } else {
        Err(Failure::Found)
    }
}

fn verify(input: &std::path::Path, json: bool, out: &mut dyn Write) -> Outcome {
    let records = search::read_records(input)?;
    let report = search::verify_theorems(&records);
    let mut human = vec![format!("records: {}", report.records)];
    for row in &report.rows {
        let status = if row.failures.is_empty() { "ok" } else { "FAIL" };
        human.push(format!("{status:4} {:52} {}/{}", row.name, row.holds, row.applicable));
        for f in &row.failures {
            human.push(format!("     {}", serde_json::to_string(f).expect("serializable")));
        }
    }
    if !report.min_mult_reading_flags.is_empty() {
        human.push(format!(
            "e = embdim + 2 (minimal multiplicity readings differ): {}",
            report
                .min_mult_reading_flags
                .iter()
                .map(|g| format!("<{}>", list(g)))
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    let value = serde_json::to_value(&report).expect("serializable");
    emit(out, json, value, &human)?;
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Found)
    }
}
