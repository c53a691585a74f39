//! Comparison of a run manifest against an expected-counts table.
//!
//! Expected files are comma-separated rows `label, alpha, maximal,
//! plus_kt` where alpha is one of `any`/`-`, `le2`/`<=2`, `eq2`/`=2`,
//! `ge3`/`>=3` and a count of `-` means "not tabulated".

use thiserror::Error;

use super::manifest::{Manifest, StageRecord};
use super::schedule::StageKind;
use crate::search::AlphaMode;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("line {0}: expected `label, alpha, maximal, plus_kt`")]
    BadRow(usize),
    #[error("line {0}: bad alpha filter `{1}`")]
    BadAlpha(usize, String),
    #[error("line {0}: bad count `{1}`")]
    BadCount(usize, String),
}

/// Independence-number column of a table row.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AlphaFilter {
    Any,
    AtMostTwo,
    ExactlyTwo,
    AtLeastThree,
}

impl AlphaFilter {
    pub fn as_str(self) -> &'static str {
        match self {
            AlphaFilter::Any => "any",
            AlphaFilter::AtMostTwo => "<=2",
            AlphaFilter::ExactlyTwo => "=2",
            AlphaFilter::AtLeastThree => ">=3",
        }
    }
}

/// One expected-counts row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedRow {
    pub label: String,
    pub alpha: AlphaFilter,
    pub maximal: Option<u64>,
    pub plus_kt: Option<u64>,
}

pub fn parse_expected(text: &str) -> Result<Vec<ExpectedRow>, VerifyError> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(VerifyError::BadRow(lineno));
        }
        let alpha = match fields[1] {
            "any" | "-" => AlphaFilter::Any,
            "le2" | "<=2" => AlphaFilter::AtMostTwo,
            "eq2" | "=2" => AlphaFilter::ExactlyTwo,
            "ge3" | ">=3" => AlphaFilter::AtLeastThree,
            other => return Err(VerifyError::BadAlpha(lineno, other.to_string())),
        };
        let count = |s: &str| -> Result<Option<u64>, VerifyError> {
            if s == "-" {
                return Ok(None);
            }
            s.replace([' ', '_'], "")
                .parse::<u64>()
                .map(Some)
                .map_err(|_| VerifyError::BadCount(lineno, s.to_string()))
        };
        rows.push(ExpectedRow {
            label: fields[0].to_string(),
            alpha,
            maximal: count(fields[2])?,
            plus_kt: count(fields[3])?,
        });
    }
    Ok(rows)
}

/// The alpha column a stage's output corresponds to.
fn stage_alpha(record: &StageRecord) -> AlphaFilter {
    match (record.kind, record.alpha_mode) {
        (StageKind::Base, AlphaMode::Unrestricted) => AlphaFilter::Any,
        (StageKind::Base, AlphaMode::ExactlyTwo) => AlphaFilter::AtMostTwo,
        (StageKind::Extend, AlphaMode::Unrestricted) if record.k >= 3 => AlphaFilter::AtLeastThree,
        (StageKind::Extend, AlphaMode::Unrestricted) => AlphaFilter::Any,
        (StageKind::Extend, AlphaMode::ExactlyTwo) => AlphaFilter::ExactlyTwo,
        (StageKind::Closure, AlphaMode::Unrestricted) => AlphaFilter::Any,
        (StageKind::Closure, AlphaMode::ExactlyTwo) => AlphaFilter::ExactlyTwo,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellOutcome {
    Pass { got: u64 },
    Fail { got: u64, want: u64 },
    NotRun,
}

#[derive(Clone, Debug)]
pub struct RowResult {
    pub row: ExpectedRow,
    /// Outcome per tabulated cell; `None` when the table has no entry.
    pub maximal: Option<CellOutcome>,
    pub plus_kt: Option<CellOutcome>,
}

impl RowResult {
    pub fn failed(&self) -> bool {
        [self.maximal, self.plus_kt]
            .iter()
            .flatten()
            .any(|c| matches!(c, CellOutcome::Fail { .. }))
    }

    pub fn complete(&self) -> bool {
        ![self.maximal, self.plus_kt]
            .iter()
            .flatten()
            .any(|c| matches!(c, CellOutcome::NotRun))
    }

    pub fn render(&self) -> String {
        let cell = |c: &Option<CellOutcome>| match c {
            None => "-".to_string(),
            Some(CellOutcome::Pass { got }) => format!("{got} ok"),
            Some(CellOutcome::Fail { got, want }) => format!("{got} != {want}"),
            Some(CellOutcome::NotRun) => "not run".to_string(),
        };
        let status = if self.failed() {
            "FAIL"
        } else if self.complete() {
            "PASS"
        } else {
            "SKIP"
        };
        format!(
            "{status} {} alpha {}: maximal {} | plus-kt {}",
            self.row.label,
            self.row.alpha.as_str(),
            cell(&self.maximal),
            cell(&self.plus_kt),
        )
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub rows: Vec<RowResult>,
}

impl VerifyReport {
    pub fn failed(&self) -> bool {
        self.rows.iter().any(RowResult::failed)
    }

    pub fn render(&self) -> String {
        let mut out: Vec<String> = self.rows.iter().map(RowResult::render).collect();
        let passed = self.rows.iter().filter(|r| r.complete() && !r.failed()).count();
        let failed = self.rows.iter().filter(|r| r.failed()).count();
        let skipped = self.rows.len() - passed - failed;
        out.push(format!("{passed} passed, {failed} failed, {skipped} skipped"));
        out.join("\n")
    }
}

/// Checks each expected row against the manifest. The maximal column is
/// matched against extend stages, the plus-kt column against base and
/// closure stages; rows whose stages were not run are reported but do not
/// fail the run.
pub fn verify_tables(manifest: &Manifest, rows: &[ExpectedRow]) -> VerifyReport {
    let find = |row: &ExpectedRow, kinds: &[StageKind]| -> Option<u64> {
        manifest
            .records
            .iter()
            .find(|r| {
                r.label == row.label && kinds.contains(&r.kind) && stage_alpha(r) == row.alpha
            })
            .map(|r| r.output_count as u64)
    };
    let results = rows
        .iter()
        .map(|row| {
            let outcome = |want: Option<u64>, got: Option<u64>| {
                want.map(|want| match got {
                    None => CellOutcome::NotRun,
                    Some(got) if got == want => CellOutcome::Pass { got },
                    Some(got) => CellOutcome::Fail { got, want },
                })
            };
            RowResult {
                row: row.clone(),
                maximal: outcome(row.maximal, find(row, &[StageKind::Extend])),
                plus_kt: outcome(
                    row.plus_kt,
                    find(row, &[StageKind::Base, StageKind::Closure]),
                ),
            }
        })
        .collect();
    VerifyReport { rows: results }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn manifest_with(records: Vec<StageRecord>) -> Manifest {
        Manifest {
            schedule_name: "demo".into(),
            m: 8,
            p: 6,
            q: 7,
            final_n: 17,
            stages_total: records.len() + 1,
            records,
            dir: PathBuf::from("."),
        }
    }

    fn record(label: &str, kind: StageKind, alpha: AlphaMode, k: usize, count: usize) -> StageRecord {
        StageRecord {
            id: format!("{label}-{}", kind.as_str()),
            label: label.into(),
            kind,
            m: 4,
            p: 6,
            q: 7,
            n: 8,
            k,
            plus_t: 6,
            alpha_mode: alpha,
            input: None,
            input_sha256: "-".into(),
            input_count: 0,
            output_count: count,
            file: "x.g6".into(),
            sha256: "0".into(),
            wall_ms: 0,
        }
    }

    #[test]
    fn parses_expected_rows() {
        let rows = parse_expected(
            "# table\nwHn(4)(6)(7)(8), any, 2, 13\nwHn(2)(6)(7)(5), le2, -, 1\nwHn(8)(6)(7)(17), ge3, 0, -\n",
        )
        .unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].maximal, Some(2));
        assert_eq!(rows[1].alpha, AlphaFilter::AtMostTwo);
        assert_eq!(rows[1].maximal, None);
        assert_eq!(rows[2].plus_kt, None);

        assert!(parse_expected("a, b\n").is_err());
        assert!(parse_expected("a, what, 1, 2\n").is_err());
        assert!(parse_expected("a, any, x, 2\n").is_err());
        // spaces inside counts are tolerated, matching printed tables
        assert_eq!(
            parse_expected("a, any, -, 104 271\n").unwrap()[0].plus_kt,
            Some(104271)
        );
    }

    #[test]
    fn pass_fail_and_skip_rows() {
        let m = manifest_with(vec![
            record("wHn(4)(6)(7)(8)", StageKind::Extend, AlphaMode::Unrestricted, 2, 2),
            record("wHn(4)(6)(7)(8)", StageKind::Closure, AlphaMode::Unrestricted, 0, 13),
        ]);
        let rows = parse_expected(
            "wHn(4)(6)(7)(8), any, 2, 13\nwHn(5)(6)(7)(10), any, 8, 324\n",
        )
        .unwrap();
        let report = verify_tables(&m, &rows);
        assert!(!report.failed());
        assert!(report.rows[0].complete());
        assert!(!report.rows[1].complete());
        assert!(report.render().contains("1 passed, 0 failed, 1 skipped"));
    }

    #[test]
    fn corrupted_counts_fail() {
        let m = manifest_with(vec![record(
            "wHn(4)(6)(7)(8)",
            StageKind::Extend,
            AlphaMode::Unrestricted,
            2,
            2,
        )]);
        let rows = parse_expected("wHn(4)(6)(7)(8), any, 3, -\n").unwrap();
        let report = verify_tables(&m, &rows);
        assert!(report.failed());
        assert!(report.rows[0].render().starts_with("FAIL"));
    }

    #[test]
    fn empty_manifest_and_table_pass() {
        let m = manifest_with(Vec::new());
        let report = verify_tables(&m, &[]);
        assert!(!report.failed());
        assert!(report.rows.is_empty());
    }

    #[test]
    fn alpha_columns_route_to_the_right_stages() {
        // a k=3 unrestricted extension is the alpha >= 3 row
        let m = manifest_with(vec![
            record("wHn(8)(6)(7)(17)", StageKind::Extend, AlphaMode::Unrestricted, 3, 0),
            record("wHn(8)(6)(7)(17)", StageKind::Extend, AlphaMode::ExactlyTwo, 2, 0),
        ]);
        let rows =
            parse_expected("wHn(8)(6)(7)(17), ge3, 0, -\nwHn(8)(6)(7)(17), eq2, 0, -\n").unwrap();
        let report = verify_tables(&m, &rows);
        assert!(!report.failed());
        assert!(report.rows.iter().all(|r| r.complete()));
    }
}
