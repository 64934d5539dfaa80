//! Replay verification of the bundled witness tables.
//!
//! The tables ship as TSV files mirroring their published source column for
//! column, misprints included. Verification is pure replay through the
//! factor / ramify / galois layers - never the search heuristics - and
//! grades each row:
//!
//! - PASS: every invariant of the witness holds.
//! - WARN (still a pass): a recoverable transcription defect was corrected
//!   and the corrected row verifies fully. Two kinds are handled: a
//!   polynomial cell written with `x` in place of `t`, and a derived column
//!   (pi, or the printed A^2-4B) disagreeing with the value recomputed from
//!   the witness columns.
//! - NOTE (still a pass): the quartic row with prime-power b passes the
//!   documented relaxed invariant, with one ramified place instead of two.
//! - FAIL: a witness invariant is mathematically violated as printed; the
//!   specific invariant is named. Failing rows are *not* corrected.

use crate::construct::{verify_d8, verify_s3};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::Poly;
use crate::text::parse_poly;

/// One table row as read from the file, columns still raw.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub table: u8,
    pub line: usize,
    pub p: u64,
    pub cells: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Pass,
    Fail,
}

/// Verification outcome of a single row.
#[derive(Clone, Debug)]
pub struct RowOutcome {
    pub line: usize,
    pub p: u64,
    pub status: RowStatus,
    pub warns: Vec<String>,
    pub notes: Vec<String>,
    pub failures: Vec<String>,
}

impl RowOutcome {
    pub fn passed(&self) -> bool {
        self.status == RowStatus::Pass
    }
}

/// Outcome of a whole table.
#[derive(Clone, Debug)]
pub struct TableReport {
    pub table: u8,
    pub rows: Vec<RowOutcome>,
}

impl TableReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(RowOutcome::passed)
    }

    pub fn passed_count(&self) -> usize {
        self.rows.iter().filter(|r| r.passed()).count()
    }

    pub fn warn_count(&self) -> usize {
        self.rows.iter().map(|r| r.warns.len()).sum()
    }

    pub fn note_count(&self) -> usize {
        self.rows.iter().map(|r| r.notes.len()).sum()
    }

    pub fn failed_rows(&self) -> Vec<&RowOutcome> {
        self.rows.iter().filter(|r| !r.passed()).collect()
    }
}

fn split_rows(table: u8, content: &str, header: &[&str]) -> Result<Vec<TableRow>> {
    let mut lines = content.lines().enumerate();
    let (_, first) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty table file".into()))?;
    let got: Vec<&str> = first.trim_end().split('\t').collect();
    if got != header {
        return Err(Error::Parse(format!(
            "line 1: expected header {header:?}, got {got:?}"
        )));
    }
    let mut rows = Vec::new();
    for (ix, line) in lines {
        let line_no = ix + 1;
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<String> = line.trim_end().split('\t').map(str::to_string).collect();
        if cells.len() != header.len() {
            return Err(Error::Parse(format!(
                "line {line_no}: expected {} columns, got {}",
                header.len(),
                cells.len()
            )));
        }
        let p = cells[0]
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("line {line_no}: bad prime '{}'", cells[0])))?;
        rows.push(TableRow {
            table,
            line: line_no,
            p,
            cells,
        });
    }
    Ok(rows)
}

/// Parses a polynomial cell; a cell written with `x` in place of `t` is
/// corrected with a warning, any other failure is a row failure.
fn parse_cell(
    field: &FieldSpec,
    cell: &str,
    what: &str,
    warns: &mut Vec<String>,
    failures: &mut Vec<String>,
) -> Option<Poly> {
    match parse_poly(field, cell) {
        Ok(p) => Some(p),
        Err(_) => {
            let substituted = cell.replace('x', "t");
            match parse_poly(field, &substituted) {
                Ok(p) => {
                    warns.push(format!(
                        "{what} = '{cell}' read with x as a typo for t: {}",
                        p.to_text('t')
                    ));
                    Some(p)
                }
                Err(e) => {
                    failures.push(format!("{what} = '{cell}' does not parse: {e}"));
                    None
                }
            }
        }
    }
}

/// Verifies a quartic-family table (columns p, A, A2m4B, a, b).
pub fn verify_table1(content: &str) -> Result<TableReport> {
    let rows = split_rows(1, content, &["p", "A", "A2m4B", "a", "b"])?;
    let mut outcomes = Vec::new();
    for row in rows {
        outcomes.push(verify_table1_row(&row));
    }
    Ok(TableReport {
        table: 1,
        rows: outcomes,
    })
}

fn verify_table1_row(row: &TableRow) -> RowOutcome {
    let mut warns = Vec::new();
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    let line = row.line;
    let p = row.p;

    let field = match FieldSpec::prime(p) {
        Ok(f) => f,
        Err(e) => {
            return RowOutcome {
                line,
                p,
                status: RowStatus::Fail,
                warns,
                notes,
                failures: vec![format!("p: {e}")],
            }
        }
    };
    let cap_a_col = row.cells[1].trim().parse::<u64>().ok();
    let cap_col = row.cells[2].trim().parse::<u64>().ok();
    let a = parse_cell(&field, &row.cells[3], "a", &mut warns, &mut failures);
    let b = parse_cell(&field, &row.cells[4], "b", &mut warns, &mut failures);
    let (a, b) = match (a, b) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return RowOutcome {
                line,
                p,
                status: RowStatus::Fail,
                warns,
                notes,
                failures,
            }
        }
    };

    // the prime-power relaxation is documented for the p = 3 row only
    let relax = p == 3;
    match verify_d8(&a, &b, relax) {
        Ok(v) => {
            for check in &v.checks {
                if !check.passed {
                    failures.push(match &check.note {
                        Some(n) => format!("{} ({n})", check.name),
                        None => check.name.to_string(),
                    });
                } else if let Some(n) = &check.note {
                    if n.starts_with("NOTE") {
                        notes.push(n.clone());
                    }
                }
            }
            // printed derived columns must agree with the recomputation
            match cap_a_col {
                Some(col) if col % p == v.cap_a => {}
                Some(col) => warns.push(format!(
                    "printed A = {col} disagrees with lc(a) = {}; using the computed value",
                    v.cap_a
                )),
                None => failures.push("A column does not parse".into()),
            }
            match cap_col {
                Some(col) if col % p == v.cap_a2m4cap_b => {}
                Some(col) => warns.push(format!(
                    "printed A^2-4B = {col} disagrees with computed {}; using the computed value",
                    v.cap_a2m4cap_b
                )),
                None => failures.push("A^2-4B column does not parse".into()),
            }
        }
        Err(e) => failures.push(format!("verification error: {e}")),
    }

    RowOutcome {
        line,
        p,
        status: if failures.is_empty() {
            RowStatus::Pass
        } else {
            RowStatus::Fail
        },
        warns,
        notes,
        failures,
    }
}

/// Verifies a cubic-family table (columns p, u, w, pi).
pub fn verify_table2(content: &str) -> Result<TableReport> {
    let rows = split_rows(2, content, &["p", "u", "w", "pi"])?;
    let mut outcomes = Vec::new();
    for row in rows {
        outcomes.push(verify_table2_row(&row));
    }
    Ok(TableReport {
        table: 2,
        rows: outcomes,
    })
}

fn verify_table2_row(row: &TableRow) -> RowOutcome {
    let mut warns = Vec::new();
    let notes = Vec::new();
    let mut failures = Vec::new();
    let line = row.line;
    let p = row.p;

    let field = match FieldSpec::prime(p) {
        Ok(f) => f,
        Err(e) => {
            return RowOutcome {
                line,
                p,
                status: RowStatus::Fail,
                warns,
                notes,
                failures: vec![format!("p: {e}")],
            }
        }
    };
    let u = match row.cells[1].trim().parse::<u64>() {
        Ok(u) => u,
        Err(_) => {
            return RowOutcome {
                line,
                p,
                status: RowStatus::Fail,
                warns,
                notes,
                failures: vec![format!("u = '{}' does not parse", row.cells[1])],
            }
        }
    };
    let w = parse_cell(&field, &row.cells[2], "w", &mut warns, &mut failures);
    let pi_printed = parse_cell(&field, &row.cells[3], "pi", &mut warns, &mut failures);
    let (w, pi_printed) = match (w, pi_printed) {
        (Some(w), Some(pi)) => (w, pi),
        _ => {
            return RowOutcome {
                line,
                p,
                status: RowStatus::Fail,
                warns,
                notes,
                failures,
            }
        }
    };

    match verify_s3(p, u, &w) {
        Ok(v) => {
            // the pi column is derived from (u, w); a disagreement is a
            // transcription defect of the printed table, corrected with a
            // warning while the witness itself is judged on the recomputation
            if v.pi != pi_printed {
                let printed_irr = !pi_printed.is_constant()
                    && crate::factor::is_irreducible(&pi_printed).unwrap_or(false);
                warns.push(format!(
                    "printed pi = {} disagrees with 4w^3-27u = {} (printed value {}); \
                     using the computed value",
                    pi_printed.to_text('t'),
                    v.pi.to_text('t'),
                    if printed_irr {
                        "is irreducible"
                    } else {
                        "is not even irreducible"
                    },
                ));
            }
            for check in &v.checks {
                if !check.passed {
                    failures.push(match &check.note {
                        Some(n) => format!("{} ({n})", check.name),
                        None => check.name.to_string(),
                    });
                }
            }
        }
        Err(e) => failures.push(format!("verification error: {e}")),
    }

    RowOutcome {
        line,
        p,
        status: if failures.is_empty() {
            RowStatus::Pass
        } else {
            RowStatus::Fail
        },
        warns,
        notes,
        failures,
    }
}
