//! Merge the per-case verification CSVs of a directory into one table with a
//! `source` column.

use std::fs;

use tailasym::oracle::report::write_atomic;

use crate::{ReportArgs, RunOutcome};

const VERIFY_HEADER: &str = "u,predicted_log,oracle_log,ratio,pass";

pub(crate) fn run(args: &ReportArgs) -> Result<RunOutcome, String> {
    let mut names: Vec<String> = fs::read_dir(&args.out_dir)
        .map_err(|e| format!("reading {}: {e}", args.out_dir.display()))?
        .filter_map(|entry| entry.ok())
        .filter_map(|entry| entry.file_name().into_string().ok())
        .filter(|name| name.ends_with(".csv") && *name != args.output)
        .collect();
    names.sort();

    let mut merged = format!("source,{VERIFY_HEADER}\n");
    let mut merged_rows = 0usize;
    let mut skipped = Vec::new();
    for name in &names {
        let text = fs::read_to_string(args.out_dir.join(name))
            .map_err(|e| format!("reading {name}: {e}"))?;
        let mut lines = text.lines();
        if lines.next() != Some(VERIFY_HEADER) {
            skipped.push(name.clone());
            continue;
        }
        let stem = name.trim_end_matches(".csv");
        for line in lines {
            if !line.is_empty() {
                merged.push_str(stem);
                merged.push(',');
                merged.push_str(line);
                merged.push('\n');
                merged_rows += 1;
            }
        }
    }
    if merged_rows == 0 {
        return Err(format!(
            "no verification CSVs found in {}",
            args.out_dir.display()
        ));
    }
    write_atomic(&args.out_dir.join(&args.output), merged.as_bytes())
        .map_err(|e| e.to_string())?;
    println!(
        "merged {merged_rows} rows from {} files into {}{}",
        names.len() - skipped.len(),
        args.output,
        if skipped.is_empty() {
            String::new()
        } else {
            format!(" (skipped {} non-verification files)", skipped.len())
        }
    );
    Ok(RunOutcome::AllPass)
}
