//! `etaq`: expand eta products, scan and certify Ramanujan congruences,
//! and inspect filtrations of level-1 forms mod a prime.

mod error;
mod output;

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use etaq::congruence::{self, AuditReport, Certificate, ClassRow, ScanReport};
use etaq::eisenstein::{build_f, delta, eisenstein, FormWithWeight};
use etaq::filtration::{filtration, required_precision, theta_cycle};
use etaq::{expand_product, FormError, Integers, PrimeField, ProductSpec, ThetaCycleReport};
use serde_json::json;

use crate::error::{CliError, EXIT_USAGE};
use crate::output::OutputRecord;

#[derive(Debug, Parser)]
#[command(name = "etaq", version, about = "Eta-product q-series and Ramanujan congruences")]
struct Cli {
    /// Emit the JSON output record instead of a table.
    #[arg(long, global = true, env = "ETAQ_JSON")]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coefficients of an eta product.
    Expand(ExpandArgs),
    /// Progressions that vanish mod a prime up to a horizon.
    Scan(ScanArgs),
    /// Least coefficient witnessing that c(ell n + a) is not always 0 mod ell.
    Refute(ResidueArgs),
    /// Decide c(ell n + a) = 0 mod ell by the strongest applicable route.
    Certify(ResidueArgs),
    /// Scan and certify c_N = 1/((q;q)(q^N;q^N)) over a range of N.
    Classify(ClassifyArgs),
    /// Refute every residue for every prime above the bound.
    Audit(AuditArgs),
    /// Filtrations of theta^i f for i < ell.
    ThetaCycle(FormArgs),
    /// Filtration of a level-1 form mod ell.
    Filtration(FormArgs),
}

#[derive(Debug, Args)]
struct ExpandArgs {
    /// Product such as "1^-1 2^-1" for 1/((q;q)(q^2;q^2)).
    #[arg(short, long)]
    spec: ProductSpec,
    /// Number of coefficients.
    #[arg(short = 'n', long, env = "ETAQ_PRECISION", default_value_t = 20)]
    precision: u64,
    /// Print only this coefficient.
    #[arg(long, conflicts_with = "start")]
    index: Option<u64>,
    /// First exponent printed.
    #[arg(long, default_value_t = 0)]
    start: u64,
    /// Reduce modulo this prime.
    #[arg(short, long)]
    modulus: Option<u64>,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(short, long)]
    spec: ProductSpec,
    /// Coefficients c(m) with m below the horizon are checked.
    #[arg(long, env = "ETAQ_SCAN_HORIZON", default_value_t = congruence::DEFAULT_SCAN_HORIZON)]
    horizon: u64,
    /// Primes to scan instead of the bound, e.g. 2,3,5,7.
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Largest prime scanned for products with an odd number of parts.
    #[arg(long, conflicts_with = "primes")]
    cap: Option<u64>,
}

#[derive(Debug, Args)]
struct ResidueArgs {
    #[arg(short, long)]
    spec: ProductSpec,
    #[arg(short = 'l', long)]
    ell: u64,
    #[arg(short, long)]
    a: u64,
    #[arg(long, env = "ETAQ_REFUTE_HORIZON", default_value_t = congruence::DEFAULT_REFUTE_HORIZON)]
    horizon: u64,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long)]
    from: u64,
    #[arg(long)]
    to: u64,
    #[arg(long, env = "ETAQ_SCAN_HORIZON", default_value_t = congruence::DEFAULT_SCAN_HORIZON)]
    horizon: u64,
    /// One CSV line per congruence.
    #[arg(long)]
    csv: bool,
}

#[derive(Debug, Args)]
struct AuditArgs {
    #[arg(short, long)]
    spec: ProductSpec,
    #[arg(long)]
    from: u64,
    #[arg(long)]
    to: u64,
    #[arg(long, env = "ETAQ_REFUTE_HORIZON", default_value_t = congruence::DEFAULT_REFUTE_HORIZON)]
    horizon: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NamedForm {
    Delta,
    F,
}

#[derive(Debug, Args)]
struct FormArgs {
    /// delta, E<k> (E4, E6, ...) or F (needs --spec).
    #[arg(long)]
    form: String,
    #[arg(short = 'l', long)]
    ell: u64,
    /// Level-1 product for --form F, e.g. "1^-2".
    #[arg(short, long)]
    spec: Option<ProductSpec>,
}

struct Rendered {
    record: OutputRecord,
    human: String,
    csv: Option<String>,
}

fn field(p: u64) -> Result<PrimeField, CliError> {
    Ok(PrimeField::new(p)?)
}

fn cmd_expand(args: &ExpandArgs) -> Result<Rendered, CliError> {
    let (lo, hi) = match args.index {
        Some(i) => (i, i + 1),
        None => (args.start, args.precision),
    };
    if hi == 0 {
        return Err(CliError::Usage("precision must be positive".into()));
    }
    let prec = hi as i64;
    let values: Vec<String> = match args.modulus {
        Some(p) => {
            let s = expand_product(field(p)?, &args.spec, prec)?;
            (lo..hi)
                .map(|n| s.coeff(n as i64).map(|c| c.to_string()))
                .collect::<Result<_, _>>()?
        }
        None => {
            let s = expand_product(Integers, &args.spec, prec)?;
            (lo..hi)
                .map(|n| s.coeff(n as i64).map(|c| c.to_string()))
                .collect::<Result<_, _>>()?
        }
    };
    let results = match args.index {
        Some(i) => json!({ "index": i.to_string(), "coefficient": values[0] }),
        None => json!({ "start": lo.to_string(), "coefficients": values }),
    };
    let mut record = OutputRecord::new("expand", &args.spec, results)?;
    record = match args.index {
        Some(i) => record.param("index", i),
        None => record.param("precision", args.precision).param("start", args.start),
    };
    if let Some(p) = args.modulus {
        record = record.param("modulus", p);
    }
    Ok(Rendered {
        record,
        human: values.join(" "),
        csv: None,
    })
}

fn cmd_scan(args: &ScanArgs) -> Result<Rendered, CliError> {
    let primes = match (&args.primes, args.cap) {
        (Some(list), _) => Some(list.clone()),
        (None, Some(cap)) => Some(congruence::prime_bound(&args.spec, Some(cap))?.primes),
        (None, None) => None,
    };
    let report: ScanReport = congruence::scan(&args.spec, args.horizon, primes)?;
    let mut human = format!(
        "primes {} ({})\n",
        join(&report.primes),
        if report.exhaustive {
            "exhaustive"
        } else {
            "not exhaustive"
        }
    );
    if report.candidates.is_empty() {
        human.push_str("no candidates");
    } else {
        human.push_str(&format!("{:>5} {:>5}  status", "ell", "a"));
        for c in &report.candidates {
            write!(
                human,
                "\n{:>5} {:>5}  {}",
                c.ell,
                c.a,
                format!("{:?}", c.status).to_lowercase()
            )
            .unwrap();
        }
    }
    let mut record = OutputRecord::new("scan", &args.spec, &report)?.param("horizon", args.horizon);
    if let Some(cap) = args.cap {
        record = record.param("cap", cap);
    }
    if let Some(p) = &args.primes {
        record = record.param("primes", join(p));
    }
    Ok(Rendered {
        record,
        human,
        csv: None,
    })
}

fn describe_certificate(c: &Certificate) -> String {
    let mut s = format!("ell {}  a {}  route {:?}  status {:?}", c.ell, c.a, c.route, c.status());
    if let Some(w) = c.witness {
        write!(
            s,
            "\nwitness n = {}: c({}) = {} (mod {})",
            w.n,
            c.ell * w.n + c.a,
            w.residue,
            c.ell
        )
        .unwrap();
    }
    if let Some(b) = c.sturm_bound {
        write!(s, "\nsturm bound {b}").unwrap();
    }
    if let Some(b) = c.b {
        write!(s, "\nb = {b}").unwrap();
    }
    if let Some(d) = c.delta_ell {
        write!(s, "\ndelta_ell = {d}").unwrap();
    }
    if let Some(h) = c.horizon {
        write!(s, "\nchecked below {h}").unwrap();
    }
    if let Some(r) = &c.reduced_spec {
        write!(
            s,
            "\nreduced to {}",
            if r.is_empty() { "1".to_string() } else { r.to_string() }
        )
        .unwrap();
    }
    if let Some(n) = &c.note {
        write!(s, "\nnote: {n}").unwrap();
    }
    s
}

fn cmd_residue(name: &str, args: &ResidueArgs) -> Result<Rendered, CliError> {
    let cert = match name {
        "refute" => congruence::refute(&args.spec, args.ell, args.a, args.horizon)?,
        _ => congruence::certify(&args.spec, args.ell, args.a, args.horizon)?,
    };
    let record = OutputRecord::new(name, &args.spec, &cert)?
        .param("a", args.a)
        .param("ell", args.ell)
        .param("horizon", args.horizon);
    Ok(Rendered {
        record,
        human: describe_certificate(&cert),
        csv: None,
    })
}

fn cmd_classify(args: &ClassifyArgs) -> Result<Rendered, CliError> {
    if args.from > args.to {
        return Err(CliError::Usage(format!("empty range {}..={}", args.from, args.to)));
    }
    let rows: Vec<ClassRow> = congruence::classify_cn(args.from..=args.to, args.horizon)?;
    let mut human = format!("{:>4}  congruences (ell, a)", "N");
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(["N", "ell", "a", "status", "route"])?;
    for row in &rows {
        let cells: Vec<String> = row
            .entries
            .iter()
            .map(|e| format!("({}, {}) {:?}", e.ell, e.a, e.status).to_lowercase())
            .collect();
        write!(
            human,
            "\n{:>4}  {}",
            row.n,
            if cells.is_empty() { "-".into() } else { cells.join(", ") }
        )
        .unwrap();
        for e in &row.entries {
            out.write_record([
                row.n.to_string(),
                e.ell.to_string(),
                e.a.to_string(),
                format!("{:?}", e.status).to_lowercase(),
                format!("{:?}", e.route),
            ])?;
        }
    }
    let csv = String::from_utf8(out.into_inner().map_err(|e| CliError::Output(e.to_string()))?)
        .map_err(|e| CliError::Output(e.to_string()))?;
    let record = OutputRecord::new("classify", "", json!({ "rows": rows }))?
        .param("from", args.from)
        .param("horizon", args.horizon)
        .param("to", args.to);
    Ok(Rendered {
        record,
        human,
        csv: Some(csv),
    })
}

fn cmd_audit(args: &AuditArgs) -> Result<Rendered, CliError> {
    let report: AuditReport = congruence::audit_prime_bound(&args.spec, args.from..=args.to, args.horizon)?;
    let mut human = format!("{:>5} {:>7} {:>12}  anomalies", "ell", "forced", "max witness");
    for e in &report.entries {
        let max_n = e.attempts.iter().filter_map(|t| t.witness.map(|w| w.n)).max();
        write!(
            human,
            "\n{:>5} {:>7} {:>12}  {}",
            e.ell,
            e.forced_residue,
            max_n.map_or("-".into(), |n| format!("n = {n}")),
            if e.anomalies.is_empty() {
                "none".into()
            } else {
                join(&e.anomalies)
            }
        )
        .unwrap();
    }
    if !report.skipped.is_empty() {
        write!(
            human,
            "\nskipped (not above the bound or dividing the level): {}",
            join(&report.skipped)
        )
        .unwrap();
    }
    write!(human, "\nanomalies: {}", report.anomalies()).unwrap();
    let record = OutputRecord::new("audit", &args.spec, &report)?
        .param("from", args.from)
        .param("horizon", args.horizon)
        .param("to", args.to);
    Ok(Rendered {
        record,
        human,
        csv: None,
    })
}

/// Declared weight of the named form and the extra weight a theta cycle adds.
fn form_weight(args: &FormArgs) -> Result<(NamedFormKind, i64), CliError> {
    let name = args.form.as_str();
    if let Some(k) = name.strip_prefix('E').or_else(|| name.strip_prefix('e')) {
        let k: u64 = k.parse().map_err(|_| CliError::Usage(format!("unknown form {name}")))?;
        return Ok((NamedFormKind::Eisenstein(k), k as i64));
    }
    match NamedForm::from_str(name, true).map_err(|_| CliError::Usage(format!("unknown form {name}")))? {
        NamedForm::Delta => Ok((NamedFormKind::Delta, 12)),
        NamedForm::F => {
            let spec = args
                .spec
                .clone()
                .ok_or_else(|| CliError::Usage("--form F needs --spec".into()))?;
            if spec.level() != 1 {
                return Err(FormError::UnsupportedLevel(spec.level()).into());
            }
            let j = spec
                .j()
                .ok_or_else(|| CliError::Usage(format!("{spec} is not a product of 1/(q^a;q^a)")))?;
            Ok((NamedFormKind::F(spec), (j * (args.ell * args.ell - 1) / 2) as i64))
        }
    }
}

enum NamedFormKind {
    Delta,
    Eisenstein(u64),
    F(ProductSpec),
}

fn build_form(args: &FormArgs, extra_weight: i64) -> Result<(String, FormWithWeight<PrimeField>), CliError> {
    if args.ell < 5 {
        return Err(FormError::PrimeTooSmall { ell: args.ell, min: 5 }.into());
    }
    let fl = field(args.ell)?;
    let (kind, weight) = form_weight(args)?;
    let prec = required_precision(weight + extra_weight);
    let (label, form) = match kind {
        NamedFormKind::Delta => ("delta".to_string(), delta(fl, prec)?),
        NamedFormKind::Eisenstein(k) => (format!("E{k}"), eisenstein(fl, k, prec)?),
        NamedFormKind::F(spec) => (format!("F({spec})"), build_f(fl, &spec, args.ell, prec)?),
    };
    Ok((label, form))
}

fn form_spec(args: &FormArgs) -> String {
    args.spec.as_ref().map(|s| s.to_string()).unwrap_or_default()
}

fn cmd_theta_cycle(args: &FormArgs) -> Result<Rendered, CliError> {
    let extra = (args.ell as i64 - 1) * (args.ell as i64 + 1);
    let (label, form) = build_form(args, extra)?;
    let report: ThetaCycleReport = theta_cycle(&form.series, form.weight, args.ell)?;
    let human = format!(
        "{label} mod {}\nfiltrations {:?}\ncase {}  k0 {}  stable {}\ndrops at {:?}, s = {:?}",
        args.ell,
        report.filtrations,
        report.case_label.label(),
        report.k0.map_or("-".into(), |k| k.to_string()),
        report.stable,
        report.drop_indices,
        report.drops
    );
    let record = OutputRecord::new("theta-cycle", form_spec(args), &report)?
        .param("ell", args.ell)
        .param("form", &label)
        .param("weight", form.weight);
    Ok(Rendered {
        record,
        human,
        csv: None,
    })
}

fn cmd_filtration(args: &FormArgs) -> Result<Rendered, CliError> {
    let (label, form) = build_form(args, 0)?;
    let w = filtration(&form.series, form.weight, args.ell)?;
    let record = OutputRecord::new(
        "filtration",
        form_spec(args),
        json!({ "declared_weight": form.weight, "filtration": w, "form": label }),
    )?
    .param("ell", args.ell)
    .param("form", &label);
    Ok(Rendered {
        record,
        human: w.to_string(),
        csv: None,
    })
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let rendered = match &cli.command {
        Command::Expand(a) => cmd_expand(a)?,
        Command::Scan(a) => cmd_scan(a)?,
        Command::Refute(a) => cmd_residue("refute", a)?,
        Command::Certify(a) => cmd_residue("certify", a)?,
        Command::Classify(a) => {
            if a.csv && cli.json {
                return Err(CliError::Usage("--csv and --json are exclusive".into()));
            }
            let r = cmd_classify(a)?;
            if a.csv {
                return Ok(r.csv.unwrap_or_default().trim_end().to_string());
            }
            r
        }
        Command::Audit(a) => cmd_audit(a)?,
        Command::ThetaCycle(a) => cmd_theta_cycle(a)?,
        Command::Filtration(a) => cmd_filtration(a)?,
    };
    if cli.json {
        rendered.record.to_json()
    } else {
        Ok(rendered.human)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(text) => match writeln!(std::io::stdout().lock(), "{text}") {
            Ok(()) => ExitCode::SUCCESS,
            // a closed pipe (`etaq ... | head`) is not a failure
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::FAILURE
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
