//! The four subcommand implementations.

use crate::input::{load_analyze_group, locate_error, resolve_seed};
use crate::manifest::{builtin_manifest, parse_manifest, resolve_entries, Manifest};
use crate::{AnalyzeArgs, CliError, CmdResult, ConstructArgs, Format, OracleArgs, VerifyArgs};
use nilpotwo_core::{
    builtin_corpus, format_group_spec, format_real, main_pipeline, out_of_range_notice,
    parse_family, thompson_minimizer, verify_class2_certificate, verify_section_certificate,
    BigCount, BoundReport, Caps, GeneratedGroup, MinimizerMode, SeedState, TableGroup,
};
use rayon::prelude::*;
use std::io::Read;

/// Writes one line to stdout. A reader that hangs up early (`nilpotwo ... | head`)
/// closes the pipe; treat that as a normal end of output rather than a panic.
fn emit(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(1);
    }
}
use std::path::Path;

/// Smallest order the bound covers.
fn in_range(order: &BigCount) -> bool {
    *order >= BigCount::from(3u32)
}

pub fn analyze(args: AnalyzeArgs) -> CmdResult {
    let caps = Caps::default();
    let seed = resolve_seed(args.seed, None)?;
    let loaded = load_analyze_group(
        args.source.as_deref(),
        args.family.as_deref(),
        args.table,
        args.name.as_deref(),
        &caps,
    )?;

    let order = loaded.group.order();
    if !in_range(&order) {
        emit(&out_of_range_notice(&loaded.name, &order));
        return Ok(0);
    }

    let mut rng = SeedState::from_seed(seed).derive(&loaded.name);
    let outcome = main_pipeline(&loaded.group, &caps, &mut rng)?;
    for note in &outcome.notes {
        eprintln!("note: {note}");
    }
    let report = BoundReport::from_outcome(&loaded.name, &outcome, seed);
    emit(&report.to_json());
    if outcome.margin_log2 >= 0.0 {
        Ok(0)
    } else {
        Ok(2)
    }
}

/// Outcome of one verify entry, kept in manifest order until emission.
enum EntryResult {
    /// Below the bound's range: reported as a notice, counts as passing.
    Notice(String),
    /// Analyzed: a report row plus its pass/fail bookkeeping.
    Report {
        report: BoundReport,
        margin: f64,
        certificates_ok: bool,
        reasons: Vec<String>,
        notes: Vec<String>,
    },
    /// The pipeline failed on this entry; recorded, the run continues.
    Failed { name: String, message: String },
}

fn run_entry(
    name: &str,
    group: &GeneratedGroup,
    caps: &Caps,
    seed: u64,
    corrupt: bool,
) -> EntryResult {
    let order = group.order();
    if !in_range(&order) {
        return EntryResult::Notice(out_of_range_notice(name, &order));
    }
    let mut rng = SeedState::from_seed(seed).derive(name);
    match main_pipeline(group, caps, &mut rng) {
        Ok(outcome) => {
            let mut certificate = outcome.certificate.clone();
            if corrupt {
                certificate.size += 1u32;
            }
            let mut reasons = Vec::new();
            let check = verify_class2_certificate(&certificate, group);
            let mut certificates_ok = check.ok;
            reasons.extend(check.reasons);
            if let Some(section) = &outcome.section {
                let check = verify_section_certificate(section, group);
                certificates_ok &= check.ok;
                reasons.extend(check.reasons);
            }
            EntryResult::Report {
                report: BoundReport::from_outcome(name, &outcome, seed),
                margin: outcome.margin_log2,
                certificates_ok,
                reasons,
                notes: outcome.notes.clone(),
            }
        }
        Err(e) => EntryResult::Failed {
            name: name.to_string(),
            message: e.to_string(),
        },
    }
}

pub fn verify(args: VerifyArgs) -> CmdResult {
    let (origin, manifest, base_dir): (String, Manifest, std::path::PathBuf) = if args.builtin {
        ("builtin".into(), builtin_manifest(), ".".into())
    } else {
        match &args.manifest {
            None => {
                return Err(CliError::input(
                    "verify needs a manifest path or --builtin",
                ))
            }
            Some(p) if p.as_os_str() == "-" => {
                let mut text = String::new();
                std::io::stdin()
                    .read_to_string(&mut text)
                    .map_err(|e| CliError::input(format!("stdin: {e}")))?;
                ("stdin".into(), parse_manifest("stdin", &text)?, ".".into())
            }
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
                let origin = path.display().to_string();
                let manifest = parse_manifest(&origin, &text)?;
                let base = path
                    .parent()
                    .filter(|p| !p.as_os_str().is_empty())
                    .unwrap_or_else(|| Path::new("."))
                    .to_path_buf();
                (origin, manifest, base)
            }
        }
    };

    let seed = resolve_seed(args.seed, manifest.seed)?;
    let caps = manifest.caps.clone();
    let entries = resolve_entries(&origin, &manifest, &base_dir)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::input(format!("thread pool: {e}")))?;
    let corrupt = args.corrupt_certificates;
    let results: Vec<EntryResult> = pool.install(|| {
        entries
            .par_iter()
            .map(|(name, group)| run_entry(name, group, &caps, seed, corrupt))
            .collect()
    });

    if args.format == Format::Csv {
        emit(&BoundReport::csv_header());
    }
    let mut reported = 0usize;
    let mut skipped = 0usize;
    let mut failed = 0usize;
    let mut min_margin = f64::INFINITY;
    let mut all_pass = true;
    for result in &results {
        match result {
            EntryResult::Notice(text) => {
                skipped += 1;
                eprintln!("{text}");
            }
            EntryResult::Report {
                report,
                margin,
                certificates_ok,
                reasons,
                notes,
            } => {
                reported += 1;
                min_margin = min_margin.min(*margin);
                let row_pass = *margin >= 0.0 && *certificates_ok;
                all_pass &= row_pass;
                match args.format {
                    Format::Json => emit(&report.to_json()),
                    Format::Csv => emit(&report.to_csv_row()),
                }
                for note in notes {
                    eprintln!("note: {}: {note}", report.name);
                }
                if !certificates_ok {
                    eprintln!(
                        "certificate check failed: {}: {}",
                        report.name,
                        reasons.join("; ")
                    );
                }
                if *margin < 0.0 {
                    eprintln!("bound violated: {}: margin {}", report.name, format_real(*margin));
                }
            }
            EntryResult::Failed { name, message } => {
                failed += 1;
                all_pass = false;
                eprintln!("error: {name}: {message}");
            }
        }
    }
    let min_margin_text = if reported == 0 {
        "n/a".to_string()
    } else {
        format_real(min_margin)
    };
    eprintln!(
        "summary: entries={} reported={reported} skipped={skipped} failed={failed} \
         min_margin={min_margin_text} pass={all_pass}",
        results.len()
    );
    Ok(if all_pass { 0 } else { 2 })
}

pub fn oracle(args: OracleArgs) -> CmdResult {
    if args.max_order > 256 {
        return Err(CliError::input(format!(
            "--max-order may not exceed 256, got {}",
            args.max_order
        )));
    }
    let caps = Caps::default();
    for (name, spec) in builtin_corpus() {
        let group = spec.realize()?;
        let order = match group.order_u64() {
            Some(o) if (3..=args.max_order).contains(&o) => o,
            _ => continue,
        };
        let table = TableGroup::from_generated(&group, args.max_order)?;
        let (section, _witnesses) = table.max_abelian_section(args.max_order)?;
        let mut rng = SeedState::from_seed(nilpotwo_core::DEFAULT_SEED).derive(&name);
        let certificate = thompson_minimizer(&group, MinimizerMode::Exhaustive, &caps, &mut rng)?;
        let check = verify_class2_certificate(&certificate, &group);
        if !check.ok {
            return Err(CliError::violation(format!(
                "{name}: witness failed re-verification: {}",
                check.reasons.join("; ")
            )));
        }
        emit(&format!(
            "{name}\torder={order}\tabelian_section={section}\twitness_order={}\tclass={}",
            certificate.size, certificate.class
        ));
    }
    Ok(0)
}

pub fn construct(args: ConstructArgs) -> CmdResult {
    let spec = parse_family(&args.family)
        .map_err(|e| locate_error("family expression", &args.family, 1, e))?;
    let group = spec.realize()?;
    let line = format_group_spec(&group);
    match &args.out {
        Some(path) => std::fs::write(path, format!("{line}\n"))
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?,
        None => emit(&line),
    }
    Ok(0)
}
