//! Schedule execution with per-stage persistence and resume.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use super::manifest::{sha256_file, Manifest, StageRecord};
use super::schedule::{Schedule, StageKind, StageSpec};
use super::{base_enumerate, PipelineError};
use crate::g6::{read_stage_file, write_stage_file};
use crate::search::{edge_removal_closure, extend_independent, ExtensionJob};

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    /// Skip stages whose recorded parameters, inputs and file checksums
    /// still match.
    pub resume: bool,
    /// Stop after the last stage carrying this label.
    pub until_label: Option<String>,
    /// Run stages marked `extended = true` as well.
    pub include_extended: bool,
    /// Check class membership against the full tuple set.
    pub audit_full_tuples: bool,
    /// Progress lines on stderr.
    pub verbose: bool,
}

impl RunOptions {
    pub fn new(out_dir: impl Into<PathBuf>) -> Self {
        RunOptions {
            out_dir: out_dir.into(),
            resume: false,
            until_label: None,
            include_extended: false,
            audit_full_tuples: false,
            verbose: false,
        }
    }
}

/// Executes the schedule in order, persisting each stage output as a
/// canonical stage file and rewriting the manifest after every stage.
///
/// Extended stages are skipped unless requested; stages whose input was
/// skipped are skipped in turn. With `resume`, a stage re-runs only when
/// its parameters, input checksum or output checksum changed.
pub fn run_schedule(schedule: &Schedule, opts: &RunOptions) -> Result<Manifest, PipelineError> {
    let stages_dir = opts.out_dir.join("stages");
    fs::create_dir_all(&stages_dir).map_err(|source| PipelineError::Io {
        path: stages_dir.display().to_string(),
        source,
    })?;
    let manifest_path = opts.out_dir.join("manifest.txt");

    let until_idx = match &opts.until_label {
        Some(label) => Some(
            schedule
                .stages
                .iter()
                .rposition(|s| &s.label == label)
                .ok_or_else(|| {
                    PipelineError::Manifest(format!("--until label `{label}` not in schedule"))
                })?,
        ),
        None => None,
    };

    let prior = if opts.resume && manifest_path.exists() {
        Some(Manifest::load(&manifest_path)?)
    } else {
        None
    };

    let mut manifest = Manifest {
        schedule_name: schedule.name.clone(),
        m: schedule.m,
        p: schedule.p,
        q: schedule.q,
        final_n: schedule.final_n,
        stages_total: schedule.stages.len(),
        records: Vec::new(),
        dir: opts.out_dir.clone(),
    };

    for (i, stage) in schedule.stages.iter().enumerate() {
        if let Some(u) = until_idx {
            if i > u {
                break;
            }
        }
        if stage.extended && !opts.include_extended {
            if opts.verbose {
                eprintln!("[{}] skipped (extended)", stage.id);
            }
            continue;
        }

        let input_record = match &stage.input {
            Some(input) => match manifest.record(input) {
                Some(r) => Some(r.clone()),
                None => {
                    if opts.verbose {
                        eprintln!("[{}] skipped (input {} not run)", stage.id, input);
                    }
                    continue;
                }
            },
            None => None,
        };
        let input_sha = input_record
            .as_ref()
            .map(|r| r.sha256.clone())
            .unwrap_or_else(|| "-".to_string());

        if let Some(prior) = &prior {
            if let Some(r) = prior.record(&stage.id) {
                if record_matches(r, stage)
                    && r.input_sha256 == input_sha
                    && file_checksum_ok(&opts.out_dir.join(&r.file), &r.sha256)
                {
                    if opts.verbose {
                        eprintln!("[{}] reused ({} graphs)", stage.id, r.output_count);
                    }
                    manifest.records.push(r.clone());
                    manifest.write(&manifest_path)?;
                    continue;
                }
            }
        }

        let started = Instant::now();
        let (input_count, output) = execute_stage(stage, input_record.as_ref(), opts)?;
        let file_rel = format!("stages/{}.g6", stage.id);
        let file_abs = opts.out_dir.join(&file_rel);
        write_stage_file(&file_abs, &output)?;
        let sha256 = sha256_file(&file_abs).map_err(|source| PipelineError::Io {
            path: file_abs.display().to_string(),
            source,
        })?;
        let record = StageRecord {
            id: stage.id.clone(),
            label: stage.label.clone(),
            kind: stage.kind,
            m: stage.m,
            p: stage.p,
            q: stage.q,
            n: stage.n,
            k: stage.k,
            plus_t: stage.plus_t,
            alpha_mode: stage.alpha_mode,
            input: stage.input.clone(),
            input_sha256: input_sha,
            input_count,
            output_count: output.len(),
            file: file_rel,
            sha256,
            wall_ms: started.elapsed().as_millis(),
        };
        if opts.verbose {
            eprintln!(
                "[{}] {} {} -> {} graphs in {} ms",
                record.id,
                record.kind.as_str(),
                record.label,
                record.output_count,
                record.wall_ms
            );
        }
        manifest.records.push(record);
        manifest.write(&manifest_path)?;
    }

    Ok(manifest)
}

fn record_matches(r: &StageRecord, s: &StageSpec) -> bool {
    r.label == s.label
        && r.kind == s.kind
        && r.m == s.m
        && r.n == s.n
        && r.k == s.k
        && r.plus_t == s.plus_t
        && r.alpha_mode == s.alpha_mode
        && r.input == s.input
}

fn file_checksum_ok(path: &Path, want: &str) -> bool {
    path.exists() && sha256_file(path).is_ok_and(|got| got == want)
}

fn execute_stage(
    stage: &StageSpec,
    input: Option<&StageRecord>,
    opts: &RunOptions,
) -> Result<(usize, Vec<crate::graph::Graph>), PipelineError> {
    match stage.kind {
        StageKind::Base => {
            let out = base_enumerate(
                &stage.spec(),
                stage.q,
                stage.n,
                stage.plus_t,
                stage.alpha_mode,
                opts.audit_full_tuples,
            )?;
            Ok((0, out))
        }
        StageKind::Extend => {
            let input = input.expect("validated by the schedule");
            let seeds = read_stage_file(&opts.out_dir.join(&input.file))?;
            let input_count = seeds.len();
            let job = ExtensionJob {
                seeds,
                k: stage.k,
                spec: stage.spec(),
                q: stage.q,
                alpha_mode: stage.alpha_mode,
                audit_full_tuples: opts.audit_full_tuples,
            };
            Ok((input_count, extend_independent(&job)?))
        }
        StageKind::Closure => {
            let input = input.expect("validated by the schedule");
            let maximal = read_stage_file(&opts.out_dir.join(&input.file))?;
            let input_count = maximal.len();
            let out = edge_removal_closure(
                &maximal,
                &stage.spec(),
                stage.q,
                stage.plus_t,
                stage.alpha_mode,
                opts.audit_full_tuples,
            );
            Ok((input_count, out))
        }
    }
}
