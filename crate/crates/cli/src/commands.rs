use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use serde_json::{json, Value};
use trijac::arith::{rat_to_display, rat_to_pq};
use trijac::engines::{self, term, term_at};
use trijac::genfun::{coefficients, gf_for};
use trijac::identities::{check, check_all, CheckParams, IdentityCheckReport};
use trijac::json::int_to_number;
use trijac::{Engine, IdentityId, SeqError, SequenceId};

use crate::output::{csv_terms, ints_json, plain_list, to_json_text, OutputFormat};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments: exit 2.
    Usage(String),
    /// A computation contradicted itself: exit 1.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Failure(_) => ExitCode::from(1),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

impl From<SeqError> for CliError {
    fn from(e: SeqError) -> Self {
        match e {
            SeqError::Invariant(_) => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type CmdResult = Result<ExitCode, CliError>;

pub fn compute(seq: SequenceId, n: i64, engine: Engine, format: OutputFormat) -> CmdResult {
    let value = term_at(seq, n, engine)?;
    let text = rat_to_display(&value);
    match format {
        OutputFormat::Plain => println!("{text}"),
        OutputFormat::Csv => print!("seq,n,value\n{seq},{n},{text}\n"),
        OutputFormat::Json => {
            let v = if value.is_integer() {
                Value::Number(int_to_number(value.numer()))
            } else {
                Value::String(rat_to_pq(&value))
            };
            let doc = json!({ "seq": seq.name(), "n": n, "engine": engine.name(), "value": v });
            println!("{}", to_json_text(&doc));
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn range(
    seq: SequenceId,
    from: u64,
    to: u64,
    engine: Engine,
    format: OutputFormat,
) -> CmdResult {
    let values = engines::range(seq, from, to, engine)?;
    match format {
        OutputFormat::Plain => println!("{}", plain_list(&values)),
        OutputFormat::Csv => print!("{}", csv_terms(seq, from, &values)),
        OutputFormat::Json => {
            let doc = json!({
                "seq": seq.name(),
                "from": from,
                "to": to,
                "engine": engine.name(),
                "values": ints_json(&values),
            });
            println!("{}", to_json_text(&doc));
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn gf(seq: SequenceId, terms: usize, format: OutputFormat) -> CmdResult {
    let gf = gf_for(seq);
    let coeffs = coefficients(&gf, terms).map_err(|e| CliError::Usage(e.to_string()))?;
    match format {
        OutputFormat::Plain => println!("{}", plain_list(&coeffs)),
        OutputFormat::Csv => print!("{}", csv_terms(seq, 0, &coeffs)),
        OutputFormat::Json => {
            let doc = json!({
                "seq": seq.name(),
                "order": "constant-first",
                "numerator": gf.numerator(),
                "denominator": gf.denominator(),
                "coefficients": ints_json(&coeffs),
            });
            println!("{}", to_json_text(&doc));
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub struct VerifyRequest {
    pub ids: Vec<IdentityId>,
    pub all: bool,
    pub n_max: u64,
    pub pair_budget: usize,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub inject_fault: Option<IdentityId>,
}

pub fn verify(req: VerifyRequest) -> CmdResult {
    if req.ids.is_empty() && !req.all {
        return Err(CliError::Usage("verify needs --id <ID> or --all".into()));
    }
    let params = CheckParams {
        n_max: req.n_max,
        pair_budget: req.pair_budget,
        inject_fault: req.inject_fault,
    };
    let reports = if req.all {
        check_all(&params)
    } else {
        req.ids
            .iter()
            .map(|&id| check(id, &params))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Usage(e.to_string()))?
    };

    let text = match req.format {
        OutputFormat::Plain => verify_plain(&reports),
        OutputFormat::Csv => verify_csv(&reports),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&reports).expect("reports serialize");
            s.push('\n');
            s
        }
    };
    let failed = reports.iter().filter(|r| !r.passed()).count();
    match &req.out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            println!(
                "{} of {} identities pass; report written to {}",
                reports.len() - failed,
                reports.len(),
                path.display()
            );
        }
        None => print!("{text}"),
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn verify_plain(reports: &[IdentityCheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let tag = match (r.passed(), r.vacuous) {
            (true, true) => "PASS (vacuous)",
            (true, false) => "PASS",
            (false, _) => "FAIL",
        };
        writeln!(
            out,
            "{tag} {:<8} checked={} skipped={}  {}",
            r.identity.label(),
            r.checked,
            r.skipped,
            r.identity.statement()
        )
        .unwrap();
        for f in &r.failures {
            let at: Vec<String> = r
                .domain
                .indices
                .iter()
                .zip(&f.indices)
                .map(|(name, v)| format!("{name}={v}"))
                .collect();
            write!(
                out,
                "    at {}: lhs={} rhs={}",
                at.join(" "),
                rat_to_pq(&f.lhs),
                rat_to_pq(&f.rhs)
            )
            .unwrap();
            if let Some(note) = &f.note {
                write!(out, " ({note})").unwrap();
            }
            out.push('\n');
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    writeln!(out, "{passed} of {} identities pass", reports.len()).unwrap();
    out
}

fn verify_csv(reports: &[IdentityCheckReport]) -> String {
    let mut out = String::from("identity,checked,skipped,vacuous,failures,status\n");
    for r in reports {
        let status = if r.passed() { "pass" } else { "fail" };
        writeln!(
            out,
            "{},{},{},{},{},{status}",
            r.identity.label(),
            r.checked,
            r.skipped,
            r.vacuous,
            r.failures.len()
        )
        .unwrap();
    }
    out
}

pub fn bench(
    seq: SequenceId,
    n: u64,
    engines: &[Engine],
    iter_cap: u64,
    format: OutputFormat,
) -> CmdResult {
    if engines.contains(&Engine::Iter) && n > iter_cap {
        return Err(CliError::Usage(format!(
            "iter engine refused for n = {n} (cap {iter_cap}; raise it with --iter-cap)"
        )));
    }
    let mut rows = Vec::with_capacity(engines.len());
    for &engine in engines {
        let start = Instant::now();
        let value = term(seq, n, engine)?;
        rows.push((engine, start.elapsed(), value));
    }
    let agree = rows.windows(2).all(|w| w[0].2 == w[1].2);
    let first = &rows[0].2;
    let digits = first.to_string().trim_start_matches('-').len();

    match format {
        OutputFormat::Json => {
            let results: Vec<Value> = rows
                .iter()
                .map(|(e, t, v)| json!({ "engine": e.name(), "seconds": t.as_secs_f64(), "digits": v.to_string().len() }))
                .collect();
            let doc = json!({ "seq": seq.name(), "n": n, "results": results, "agree": agree });
            println!("{}", to_json_text(&doc));
        }
        OutputFormat::Csv => {
            println!("engine,seconds,digits");
            for (e, t, v) in &rows {
                println!("{e},{:.6},{}", t.as_secs_f64(), v.to_string().len());
            }
        }
        OutputFormat::Plain => {
            println!("{seq} n={n}");
            println!("{:<8} {:>14} {:>10}", "engine", "time_ms", "digits");
            for (e, t, v) in &rows {
                println!(
                    "{:<8} {:>14.3} {:>10}",
                    e.name(),
                    t.as_secs_f64() * 1e3,
                    v.to_string().len()
                );
            }
            if agree {
                if digits <= 80 {
                    println!("values agree: {first}");
                } else {
                    println!("values agree ({digits} digits)");
                }
            } else {
                println!("values DIFFER");
            }
        }
    }
    Ok(if agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
