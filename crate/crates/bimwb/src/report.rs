//! Batch verification over the reduction catalogue.
//!
//! A suite run generates deterministic instances for each named entry,
//! verifies every instance at one depth, and returns the reports sorted by
//! entry identifier and instance digest, so the rendered output is stable
//! across runs and thread counts.

use crate::reductions::{generate_instances, verify, ReductionError, VerificationReport};

/// Verifies `per_entry` generated instances of each listed entry at the
/// given depth.  Set `BIMWB_THREADS` to verify entries on that many worker
/// threads; the report order is the same either way.
pub fn run_suite(
    ids: &[&str],
    per_entry: usize,
    depth: usize,
    seed: u64,
) -> Result<Vec<VerificationReport>, ReductionError> {
    let jobs: Vec<(String, Vec<crate::reductions::Instance>)> = ids
        .iter()
        .map(|id| Ok((id.to_string(), generate_instances(id, per_entry, seed)?)))
        .collect::<Result<_, ReductionError>>()?;

    let threads = std::env::var("BIMWB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 1);

    let mut reports = match threads {
        None => run_jobs(&jobs, depth, seed)?,
        Some(t) => {
            let chunk = jobs.len().div_ceil(t).max(1);
            let results: Vec<Result<Vec<VerificationReport>, ReductionError>> =
                std::thread::scope(|scope| {
                    jobs.chunks(chunk)
                        .map(|part| scope.spawn(move || run_jobs(part, depth, seed)))
                        .collect::<Vec<_>>()
                        .into_iter()
                        .map(|h| h.join().expect("verification workers do not panic"))
                        .collect()
                });
            let mut all = Vec::new();
            for r in results {
                all.extend(r?);
            }
            all
        }
    };
    reports.sort_by(|a, b| (&a.id, &a.digest).cmp(&(&b.id, &b.digest)));
    Ok(reports)
}

fn run_jobs(
    jobs: &[(String, Vec<crate::reductions::Instance>)],
    depth: usize,
    seed: u64,
) -> Result<Vec<VerificationReport>, ReductionError> {
    let mut out = Vec::new();
    for (id, instances) in jobs {
        for inst in instances {
            out.push(verify(id, inst, depth, seed)?);
        }
    }
    Ok(out)
}

/// Renders reports as newline-separated structured records.
pub fn render(reports: &[VerificationReport]) -> String {
    reports.iter().map(VerificationReport::line).collect::<Vec<_>>().join("\n")
}
