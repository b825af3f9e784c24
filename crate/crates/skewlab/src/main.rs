use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use skewlab::catalog::{builtin_catalog, CatalogEntry};
use skewlab::defs::{dump_entry, load_definitions};
use skewlab::error::Error;
use skewlab::finmod::{cyclic_annihilator, element_annihilator};
use skewlab::finring::{find_idempotent_generator, idempotents, RightIdeal};
use skewlab::properties::{check_property, Instance, PropertyId, PropertyReport, Verdict, DEFAULT_BUDGET};
use skewlab::skewpoly::DegreeBound;
use skewlab::theorems::{builtin_specs, find_spec, hunt, run_suite, Status, TheoremReport};

#[derive(Parser)]
#[command(name = "skewlab", about = "Exact property and theorem checks for finite rings, their endomorphisms, and skew polynomial extensions", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Selector {
    /// Ring id from the catalog or a loaded definition file
    #[arg(long)]
    ring: Option<String>,
    /// Endomorphism name on the selected ring
    #[arg(long, default_value = "id")]
    sigma: String,
    /// Module name on the selected ring
    #[arg(long, default_value = "regular")]
    module: String,
    /// Sweep every (ring, sigma, module) combination instead
    #[arg(long, conflicts_with = "ring")]
    all: bool,
}

#[derive(Args)]
struct Common {
    /// Degree bound D for polynomial-extension checks
    #[arg(long, default_value_t = 2)]
    degree: usize,
    /// Enumeration budget in (m(x), f(x)) pairs; SKEWLAB_BUDGET overrides
    /// the default
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Additional definition files to load into the catalog
    #[arg(long = "defs")]
    defs: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check properties on one instance (or every instance with --all)
    Check {
        #[command(flatten)]
        selector: Selector,
        #[command(flatten)]
        common: Common,
        /// Comma-separated property ids
        #[arg(long, value_delimiter = ',', required = true)]
        props: Vec<String>,
    },
    /// Run every builtin theorem on the selected instance(s)
    Suite {
        #[command(flatten)]
        selector: Selector,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep one theorem across instances and report the anomalies
    Hunt {
        /// Theorem id
        theorem: String,
        #[command(flatten)]
        selector: Selector,
        #[command(flatten)]
        common: Common,
    },
    /// Catalog inspection
    Catalog {
        #[command(subcommand)]
        sub: CatalogCommand,
        #[arg(long = "defs")]
        defs: Vec<PathBuf>,
    },
    /// Print the annihilators r(m) and r(mR) of a module element
    Ann {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "regular")]
        module: String,
        #[arg(long)]
        element: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long = "defs")]
        defs: Vec<PathBuf>,
    },
    /// List the idempotents of a ring
    Idempotents {
        #[arg(long)]
        ring: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long = "defs")]
        defs: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List every catalog entry
    List,
    /// Emit a round-trippable definition file for one entry
    Dump { id: String },
}

struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

fn load_catalog(defs: &[PathBuf]) -> Result<Vec<CatalogEntry>, Usage> {
    let mut entries = builtin_catalog();
    for path in defs {
        for entry in load_definitions(path).map_err(|e| Usage(format!("{}: {e}", path.display())))? {
            if entries.iter().any(|x| x.id == entry.id) {
                return Err(Usage(format!(
                    "{}: id '{}' already defined",
                    path.display(),
                    entry.id
                )));
            }
            entries.push(entry);
        }
    }
    Ok(entries)
}

fn find_entry<'a>(entries: &'a [CatalogEntry], id: &str) -> Result<&'a CatalogEntry, Usage> {
    entries.iter().find(|e| e.id == id).ok_or_else(|| {
        let known: Vec<&str> = entries.iter().map(|e| e.id.as_str()).collect();
        Usage(format!("unknown ring '{id}'; known rings: {}", known.join(", ")))
    })
}

fn resolve_instances(entries: &[CatalogEntry], selector: &Selector) -> Result<Vec<Instance>, Usage> {
    if selector.all {
        let mut out = Vec::new();
        for entry in entries {
            for sigma in &entry.endomorphisms {
                for module in &entry.modules {
                    out.push(
                        Instance::new(entry.ring.clone(), sigma.clone(), module.clone())
                            .map_err(Usage::from)?,
                    );
                }
            }
        }
        return Ok(out);
    }
    let ring_id = selector
        .ring
        .as_deref()
        .ok_or_else(|| Usage("either --ring or --all is required".to_string()))?;
    let entry = find_entry(entries, ring_id)?;
    let sigma = entry.sigma(&selector.sigma).ok_or_else(|| {
        let known: Vec<&str> = entry.endomorphisms.iter().map(|e| e.name.as_str()).collect();
        Usage(format!(
            "unknown sigma '{}' on ring '{ring_id}'; known: {}",
            selector.sigma,
            known.join(", ")
        ))
    })?;
    let module = entry.module(&selector.module).ok_or_else(|| {
        let known: Vec<&str> = entry.modules.iter().map(|m| m.name.as_str()).collect();
        Usage(format!(
            "unknown module '{}' on ring '{ring_id}'; known: {}",
            selector.module,
            known.join(", ")
        ))
    })?;
    Ok(vec![
        Instance::new(entry.ring.clone(), sigma.clone(), module.clone()).map_err(Usage::from)?,
    ])
}

fn effective_budget(common: &Common) -> Result<u64, Usage> {
    if let Some(b) = common.budget {
        if b == 0 {
            return Err(Usage("budget must be positive".to_string()));
        }
        return Ok(b);
    }
    match std::env::var("SKEWLAB_BUDGET") {
        Ok(v) => v
            .parse::<u64>()
            .ok()
            .filter(|&b| b > 0)
            .ok_or_else(|| Usage(format!("invalid SKEWLAB_BUDGET '{v}'"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

#[derive(Serialize, Deserialize)]
struct CheckRecord {
    instance: String,
    #[serde(flatten)]
    report: PropertyReport,
}

fn describe_report(rep: &PropertyReport) -> String {
    let mut s = match rep.verdict {
        Verdict::Holds => "holds".to_string(),
        Verdict::Fails => "fails".to_string(),
        Verdict::HoldsUpToDegree => {
            format!("holds-up-to-degree-{}", rep.degree_bound.unwrap_or(0))
        }
        Verdict::Inconclusive => "inconclusive".to_string(),
    };
    if let Some(w) = &rep.witness {
        s.push_str(&format!(" witness={}", serde_json::to_string(w).unwrap()));
    }
    if let Some(n) = &rep.note {
        s.push_str(&format!(" note={n}"));
    }
    s
}

fn cmd_check(selector: Selector, common: Common, props: Vec<String>) -> Result<ExitCode, Usage> {
    let properties: Vec<PropertyId> = props
        .iter()
        .map(|p| {
            p.parse::<PropertyId>().map_err(|_| {
                let valid: Vec<&str> = PropertyId::all().iter().map(|q| q.as_str()).collect();
                Usage(format!("unknown property '{p}'; valid ids: {}", valid.join(", ")))
            })
        })
        .collect::<Result<_, _>>()?;
    let entries = load_catalog(&common.defs)?;
    let instances = resolve_instances(&entries, &selector)?;
    let budget = effective_budget(&common)?;
    let d = DegreeBound(common.degree);
    let mut records = Vec::new();
    for inst in &instances {
        for &prop in &properties {
            let report = check_property(inst, prop, d, budget).map_err(Usage::from)?;
            if common.format == Format::Text {
                println!("{} {} {}", inst.id, report.property, describe_report(&report));
            }
            records.push(CheckRecord { instance: inst.id.clone(), report });
        }
    }
    let mut exit = ExitCode::SUCCESS;
    if records.iter().any(|r| r.report.verdict == Verdict::Inconclusive) {
        exit = ExitCode::from(3);
    }
    if records.iter().any(|r| r.report.verdict == Verdict::Fails) {
        exit = ExitCode::from(2);
    }
    if common.format == Format::Json {
        records.sort_by(|a, b| (&a.instance, &a.report.property).cmp(&(&b.instance, &b.report.property)));
        for r in &records {
            println!("{}", serde_json::to_string(r).unwrap());
        }
    }
    Ok(exit)
}

fn emit_theorem_reports(reports: &mut Vec<TheoremReport>, format: Format) {
    reports.sort_by(|a, b| (&a.theorem, &a.instance).cmp(&(&b.theorem, &b.instance)));
    for r in reports.iter() {
        match format {
            Format::Json => println!("{}", serde_json::to_string(r).unwrap()),
            Format::Text => {
                let status = match r.status {
                    Status::Verified => "verified",
                    Status::Vacuous => "vacuous",
                    Status::Refuted => "REFUTED",
                    Status::Inconclusive => "inconclusive",
                };
                println!("{} {} {} D={}", r.theorem, r.instance, status, r.degree_bound);
            }
        }
    }
}

fn cmd_suite(selector: Selector, common: Common) -> Result<ExitCode, Usage> {
    let entries = load_catalog(&common.defs)?;
    let instances = resolve_instances(&entries, &selector)?;
    let budget = effective_budget(&common)?;
    let d = DegreeBound(common.degree);
    let mut reports = Vec::new();
    for inst in &instances {
        reports.extend(run_suite(inst, d, budget).map_err(Usage::from)?);
    }
    emit_theorem_reports(&mut reports, common.format);
    let mut counts = [0usize; 4];
    for r in &reports {
        let i = match r.status {
            Status::Verified => 0,
            Status::Vacuous => 1,
            Status::Inconclusive => 2,
            Status::Refuted => 3,
        };
        counts[i] += 1;
    }
    if common.format == Format::Text {
        println!(
            "summary: {} verified, {} vacuous, {} inconclusive, {} REFUTED",
            counts[0], counts[1], counts[2], counts[3]
        );
    }
    Ok(if counts[3] > 0 { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn cmd_hunt(theorem: String, selector: Selector, common: Common) -> Result<ExitCode, Usage> {
    let spec = find_spec(&theorem).map_err(|_| {
        let valid: Vec<&str> = builtin_specs().iter().map(|s| s.id).collect();
        Usage(format!("unknown theorem '{theorem}'; valid ids: {}", valid.join(", ")))
    })?;
    let entries = load_catalog(&common.defs)?;
    let instances = resolve_instances(&entries, &selector)?;
    let budget = effective_budget(&common)?;
    let d = DegreeBound(common.degree);
    let (mut anomalies, verified) = hunt(&instances, &spec, d, budget).map_err(Usage::from)?;
    let refuted = anomalies.iter().filter(|r| r.status == Status::Refuted).count();
    emit_theorem_reports(&mut anomalies, common.format);
    if common.format == Format::Text {
        println!("summary: {} verified, {} anomalies, {} REFUTED", verified, anomalies.len(), refuted);
    }
    Ok(if refuted > 0 { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn cmd_catalog(sub: CatalogCommand, defs: Vec<PathBuf>) -> Result<ExitCode, Usage> {
    let entries = load_catalog(&defs)?;
    match sub {
        CatalogCommand::List => {
            for e in &entries {
                let sigmas: Vec<&str> = e.endomorphisms.iter().map(|s| s.name.as_str()).collect();
                let modules: Vec<&str> = e.modules.iter().map(|m| m.name.as_str()).collect();
                println!(
                    "{} size={} sigmas=[{}] modules=[{}]",
                    e.id,
                    e.ring.size,
                    sigmas.join(","),
                    modules.join(",")
                );
            }
        }
        CatalogCommand::Dump { id } => {
            let entry = find_entry(&entries, &id)?;
            print!("{}", dump_entry(entry));
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct AnnRecord {
    source: String,
    elements: Vec<usize>,
    generator: Option<usize>,
}

fn cmd_ann(
    ring: String,
    module: String,
    element: usize,
    format: Format,
    defs: Vec<PathBuf>,
) -> Result<ExitCode, Usage> {
    let entries = load_catalog(&defs)?;
    let entry = find_entry(&entries, &ring)?;
    let m = entry.module(&module).ok_or_else(|| {
        Usage(format!("unknown module '{module}' on ring '{ring}'"))
    })?;
    if element >= m.size {
        return Err(Usage(format!("element {element} out of range (module size {})", m.size)));
    }
    for ann in [element_annihilator(m, element), cyclic_annihilator(m, element)] {
        let ideal = RightIdeal { elements: ann.elements.iter().copied().collect::<BTreeSet<_>>() };
        let generator = find_idempotent_generator(&entry.ring, &ideal).map_err(Usage::from)?;
        let record = AnnRecord {
            source: ann.source.clone(),
            elements: ann.elements.iter().copied().collect(),
            generator,
        };
        match format {
            Format::Json => println!("{}", serde_json::to_string(&record).unwrap()),
            Format::Text => {
                let gen = match record.generator {
                    Some(e) => format!("idempotent generator e={e}"),
                    None => "no idempotent generator".to_string(),
                };
                println!("{} = {:?} ({})", record.source, record.elements, gen);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_idempotents(ring: String, format: Format, defs: Vec<PathBuf>) -> Result<ExitCode, Usage> {
    let entries = load_catalog(&defs)?;
    let entry = find_entry(&entries, &ring)?;
    let idems = idempotents(&entry.ring);
    match format {
        Format::Json => println!("{}", serde_json::to_string(&idems).unwrap()),
        Format::Text => println!("{} idempotents: {:?}", ring, idems),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(64);
        }
    };
    let result = match cli.command {
        Command::Check { selector, common, props } => cmd_check(selector, common, props),
        Command::Suite { selector, common } => cmd_suite(selector, common),
        Command::Hunt { theorem, selector, common } => cmd_hunt(theorem, selector, common),
        Command::Catalog { sub, defs } => cmd_catalog(sub, defs),
        Command::Ann { ring, module, element, format, defs } => {
            cmd_ann(ring, module, element, format, defs)
        }
        Command::Idempotents { ring, format, defs } => cmd_idempotents(ring, format, defs),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(64)
        }
    }
}
