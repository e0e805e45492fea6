//! Bundled reference words for small binary parameters.
//!
//! The data file ships 75 rows: every known minimal example with one, two,
//! or three wildcards for n <= 5, plus the rows recording proven
//! nonexistence. Each witness row is a full word; the `tables` CLI command
//! and the test suite re-verify all of them against the checker.

use std::sync::OnceLock;

use crate::alphabet::Alphabet;
use crate::word::PartialWord;

const RAW: &str = include_str!("../data/tables.txt");

/// Whether a row carries a word or records a nonexistence result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryStatus {
    Witness(PartialWord),
    Dash,
}

/// One row of the bundled tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    /// Source table: 1, 2, or 3 (= number of wildcards).
    pub table: u8,
    /// Factor length the word is universal for.
    pub n: usize,
    /// 1-based wildcard positions. For dash rows in table 1 this is the
    /// single position the nonexistence result is about.
    pub positions: Vec<usize>,
    pub status: EntryStatus,
    /// Theorem ids backing the row, possibly empty.
    pub theorems: Vec<String>,
}

impl TableEntry {
    pub fn witness(&self) -> Option<&PartialWord> {
        match &self.status {
            EntryStatus::Witness(w) => Some(w),
            EntryStatus::Dash => None,
        }
    }

    pub fn is_dash(&self) -> bool {
        matches!(self.status, EntryStatus::Dash)
    }
}

fn parse_row(line: &str) -> Result<TableEntry, String> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 5 {
        return Err(format!("expected 5 fields, got {}: {line:?}", fields.len()));
    }
    let table: u8 = fields[0].parse().map_err(|_| format!("bad table id {:?}", fields[0]))?;
    if !(1..=3).contains(&table) {
        return Err(format!("table id out of range: {table}"));
    }
    let n: usize = fields[1].parse().map_err(|_| format!("bad n {:?}", fields[1]))?;
    let positions: Vec<usize> = fields[2]
        .split(',')
        .map(|p| p.parse().map_err(|_| format!("bad position {p:?}")))
        .collect::<Result<_, _>>()?;
    let status = if fields[3] == "-" {
        EntryStatus::Dash
    } else {
        let word = PartialWord::parse(fields[3], Alphabet::BINARY)
            .map_err(|e| format!("bad word {:?}: {e}", fields[3]))?;
        if word.diamond_positions() != positions {
            return Err(format!(
                "positions column {:?} disagrees with word {:?}",
                positions,
                fields[3]
            ));
        }
        EntryStatus::Witness(word)
    };
    if status == EntryStatus::Dash && (table != 1 || positions.len() != 1) {
        return Err(format!("dash rows only occur in table 1 with one position: {line:?}"));
    }
    let theorems = if fields[4] == "-" {
        Vec::new()
    } else {
        fields[4].split(',').map(str::to_string).collect()
    };
    Ok(TableEntry { table, n, positions, status, theorems })
}

fn parse_all() -> Result<Vec<TableEntry>, String> {
    RAW.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_row)
        .collect()
}

/// All bundled rows in file order.
pub fn entries() -> &'static [TableEntry] {
    static ENTRIES: OnceLock<Vec<TableEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| parse_all().expect("bundled table data is well-formed"))
}

/// Table 1 rows for one n, ordered by wildcard position.
pub fn single_diamond_rows(n: usize) -> Vec<&'static TableEntry> {
    entries().iter().filter(|e| e.table == 1 && e.n == n).collect()
}

/// The table 1 word with its wildcard at position k, if the table has one.
pub fn table1_witness(n: usize, k: usize) -> Option<&'static PartialWord> {
    entries()
        .iter()
        .find(|e| e.table == 1 && e.n == n && e.positions == [k])
        .and_then(TableEntry::witness)
}

/// The table 2 word whose wildcard gaps are (lx, ly, lz): lx letters, a
/// wildcard, ly letters, a wildcard, lz letters. Falls back to the mirrored
/// shape (lz, ly, lx), returning the reversed word so the caller still gets
/// a word of the requested shape.
pub fn table2_witness_for_shape(
    n: usize,
    lx: usize,
    ly: usize,
    lz: usize,
) -> Option<PartialWord> {
    let len = lx + ly + lz + 2;
    let direct = [lx + 1, lx + ly + 2];
    let mirrored = [lz + 1, lz + ly + 2];
    for e in entries().iter().filter(|e| e.table == 2 && e.n == n) {
        if let Some(w) = e.witness() {
            if w.len() != len {
                continue;
            }
            if e.positions == direct {
                return Some(w.clone());
            }
            if e.positions == mirrored {
                return Some(w.reversed());
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverage::is_universal;

    #[test]
    fn row_counts_match_source() {
        let all = entries();
        assert_eq!(all.len(), 75);
        assert_eq!(all.iter().filter(|e| e.table == 1).count(), 31);
        assert_eq!(all.iter().filter(|e| e.table == 2).count(), 26);
        assert_eq!(all.iter().filter(|e| e.table == 3).count(), 18);
        assert_eq!(all.iter().filter(|e| e.is_dash()).count(), 7);
    }

    #[test]
    fn every_witness_is_universal() {
        for e in entries() {
            if let Some(w) = e.witness() {
                assert_eq!(w.diamond_count(), e.table as usize, "row {e:?}");
                assert!(
                    is_universal(w, e.n, false).unwrap(),
                    "table {} row n={} positions {:?} failed verification",
                    e.table,
                    e.n,
                    e.positions
                );
            }
        }
    }

    #[test]
    fn table1_has_every_position_up_to_center() {
        for n in 1..=5usize {
            let rows = single_diamond_rows(n);
            let expect = if n == 1 { 1 } else { 1 << (n - 1) };
            assert_eq!(rows.len(), expect);
            for (i, row) in rows.iter().enumerate() {
                assert_eq!(row.positions, [i + 1]);
            }
        }
    }

    #[test]
    fn table1_lookup() {
        assert!(table1_witness(3, 2).is_some());
        assert!(table1_witness(3, 3).is_none());
        assert_eq!(table1_witness(4, 6).unwrap().render(), "01100*011110100");
    }

    #[test]
    fn table2_shape_lookup_uses_mirror() {
        let direct = table2_witness_for_shape(4, 0, 5, 7).unwrap();
        assert_eq!(direct.render(), "*00011*1001011");
        let mirrored = table2_witness_for_shape(4, 7, 5, 0).unwrap();
        assert_eq!(mirrored.render(), "1101001*11000*");
        assert!(is_universal(&mirrored, 4, false).unwrap());
        assert!(table2_witness_for_shape(4, 1, 5, 6).is_none());
    }

    #[test]
    fn dash_rows_all_carry_theorems_or_are_n1() {
        for e in entries().iter().filter(|e| e.is_dash()) {
            assert_eq!(e.table, 1);
            assert!(!e.theorems.is_empty());
        }
    }
}
