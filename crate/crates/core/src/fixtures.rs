//! Fixture tables: TSV parsing, the family-table registry, and lookup
//! helpers for generator annotations.
//!
//! The TSV format (UTF-8, tab separated, `#` comments) is the bit-exact
//! contract between the library, the verification harness, and the CLI:
//! `table_id, braid_pattern, conway_pattern, class, constraints,
//! start_values`.

use crate::braid::{parse_braid, ReducedWord};
use crate::conway::{CorrespondenceEntry, EntryClass};
use crate::enumerate::FamilyEnumOptions;
use std::collections::BTreeMap;

/// Default fixture data shipped with the crate.
pub const DEFAULT_TABLES: &str = include_str!("../../../data/paper_tables.tsv");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixtureError {
    #[error("line {0}: expected at least 4 tab-separated fields")]
    BadLine(usize),
    #[error("line {0}: unknown class {1:?}")]
    BadClass(usize, String),
}

/// One parsed fixture row.
#[derive(Debug, Clone)]
pub struct FixtureRow {
    pub table_id: String,
    pub braid_pattern: String,
    pub conway_pattern: String,
    pub class: EntryClass,
    pub constraints: String,
    pub start_values: String,
}

impl FixtureRow {
    pub fn kind(&self) -> RowKind {
        match self.table_id.split(':').next().unwrap_or("") {
            "fam" => RowKind::FamilyTable,
            "gen" => RowKind::GeneratorTable,
            "corr" => RowKind::Correspondence,
            "achiral" => RowKind::Achiral,
            "series" => RowKind::Series,
            "count" => RowKind::Count,
            "gap" => RowKind::Inert,
            _ => RowKind::Correspondence,
        }
    }

    /// Constraint text with `key=value` directives stripped.
    pub fn relation_constraints(&self) -> String {
        self.constraints
            .split(';')
            .filter(|p| !p.contains('='))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Value of a `key=value` directive in the constraints column.
    pub fn directive(&self, key: &str) -> Option<String> {
        self.constraints.split(';').find_map(|p| {
            let (k, v) = p.split_once('=')?;
            (k.trim() == key).then(|| v.trim().to_string())
        })
    }

    pub fn has_flag(&self, flag: &str) -> bool {
        self.directive("flag").map(|v| v == flag).unwrap_or(false)
    }

    pub fn entry(&self) -> CorrespondenceEntry {
        CorrespondenceEntry {
            table_id: self.table_id.clone(),
            braid_pattern: self.braid_pattern.clone(),
            conway_pattern: self.conway_pattern.clone(),
            class: self.class,
            constraints: self.relation_constraints(),
            start_values: self.start_values.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    FamilyTable,
    GeneratorTable,
    Correspondence,
    Achiral,
    Series,
    Count,
    Inert,
}

/// Parses fixture TSV text into rows, preserving file order.
pub fn parse_tsv(text: &str) -> Result<Vec<FixtureRow>, FixtureError> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < 4 {
            return Err(FixtureError::BadLine(idx + 1));
        }
        let class = EntryClass::parse(fields[3])
            .ok_or_else(|| FixtureError::BadClass(idx + 1, fields[3].to_string()))?;
        rows.push(FixtureRow {
            table_id: fields[0].to_string(),
            braid_pattern: fields[1].to_string(),
            conway_pattern: fields[2].to_string(),
            class,
            constraints: fields.get(4).unwrap_or(&"").to_string(),
            start_values: fields.get(5).unwrap_or(&"").to_string(),
        });
    }
    Ok(rows)
}

pub fn default_rows() -> Vec<FixtureRow> {
    parse_tsv(DEFAULT_TABLES).expect("shipped fixtures parse")
}

/// Scope of one printed family table: the generator, the parameter cap,
/// and the table's explicit deviations from invariant-level dedup. The
/// two eight-letter tables keep one pair of invariant-equal families
/// apart (`.p 1 1` vs `.(p,2)`) and omit the families whose vertex
/// tangles need more than two parameters; both facts are recorded here as
/// data because no word-combinatorial rule produces them.
#[derive(Debug, Clone)]
pub struct FamilyTableSpec {
    pub table_id: &'static str,
    pub generator: &'static str,
    pub max_params: Option<usize>,
    pub keep_separate: &'static [&'static [usize]],
    pub excluded: &'static [&'static [usize]],
}

pub const FAMILY_TABLES: &[FamilyTableSpec] = &[
    FamilyTableSpec {
        table_id: "fam:thm2",
        generator: "AbAb",
        max_params: None,
        keep_separate: &[],
        excluded: &[],
    },
    FamilyTableSpec {
        table_id: "fam:6*",
        generator: "AbAbAb",
        max_params: None,
        keep_separate: &[],
        excluded: &[],
    },
    FamilyTableSpec {
        table_id: "fam:8*",
        generator: "AbAbAbAb",
        max_params: None,
        keep_separate: &[],
        excluded: &[],
    },
    FamilyTableSpec {
        table_id: "fam:.2 1",
        generator: "AbAbACbC",
        max_params: Some(4),
        keep_separate: &[&[5], &[6]],
        excluded: &[&[5, 6, 7], &[0, 5, 6, 7], &[1, 5, 6, 7], &[2, 5, 6, 7]],
    },
    FamilyTableSpec {
        table_id: "fam:.2:2",
        generator: "AbCbAbCb",
        max_params: Some(4),
        keep_separate: &[],
        excluded: &[&[0, 2, 4, 6], &[1, 3, 5, 7], &[0, 1, 3, 4], &[0, 1, 3, 5], &[0, 1, 3, 7]],
    },
];

impl FamilyTableSpec {
    pub fn options(&self) -> FamilyEnumOptions {
        FamilyEnumOptions {
            max_params: self.max_params,
            keep_separate: self.keep_separate.iter().map(|s| s.to_vec()).collect(),
            excluded: self.excluded.iter().map(|s| s.to_vec()).collect(),
        }
    }

    pub fn generator_word(&self) -> ReducedWord {
        parse_braid(self.generator).expect("registry generator").idempotent_reduce()
    }
}

/// Looks up the table spec for a generator, falling back to unadjusted
/// enumeration options for generators outside the registry.
pub fn table_spec_for(generator: &ReducedWord) -> Option<&'static FamilyTableSpec> {
    let canon = generator.canonical_form();
    FAMILY_TABLES.iter().find(|spec| spec.generator_word().canonical_form() == canon)
}

/// Enumeration options for a generator: the registered table scope when
/// one exists, otherwise defaults.
pub fn enum_options_for(generator: &ReducedWord) -> FamilyEnumOptions {
    table_spec_for(generator).map(|s| s.options()).unwrap_or_default()
}

/// Conway annotations for generating words, keyed by canonical form.
pub fn kl_annotations(rows: &[FixtureRow]) -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    for row in rows {
        if row.kind() != RowKind::GeneratorTable || row.has_flag("misprint") {
            continue;
        }
        if let Ok(word) = parse_braid(&row.braid_pattern) {
            let canon = word.idempotent_reduce().canonical_form().to_string();
            map.entry(canon).or_insert_with(|| row.conway_pattern.clone());
        }
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_fixtures_parse() {
        let rows = default_rows();
        assert!(rows.len() > 250, "expected the full table set, got {}", rows.len());
        let fam21 = rows.iter().filter(|r| r.table_id == "fam:.2 1").count();
        assert_eq!(fam21, 70);
        let fam22 = rows.iter().filter(|r| r.table_id == "fam:.2:2").count();
        assert_eq!(fam22, 19);
        let thm2 = rows.iter().filter(|r| r.table_id == "fam:thm2").count();
        assert_eq!(thm2, 5);
        let eight = rows.iter().filter(|r| r.table_id == "fam:8*").count();
        assert_eq!(eight, 29);
        let six = rows.iter().filter(|r| r.table_id == "fam:6*").count();
        assert_eq!(six, 12);
    }

    #[test]
    fn directives() {
        let rows = default_rows();
        let mis: Vec<&FixtureRow> =
            rows.iter().filter(|r| r.table_id == "gen:alg" && r.has_flag("misprint")).collect();
        assert_eq!(mis.len(), 2);
        let delta = rows.iter().find(|r| r.table_id == "gap").unwrap();
        assert_eq!(delta.directive("delta").as_deref(), Some("2"));
    }

    #[test]
    fn every_braid_pattern_parses_and_round_trips() {
        for row in default_rows() {
            if row.kind() == RowKind::Count {
                continue;
            }
            let fam = crate::family::BraidFamily::parse_pattern(&row.braid_pattern)
                .unwrap_or_else(|e| panic!("{}: {:?}", row.braid_pattern, e));
            assert_eq!(fam.pattern(), row.braid_pattern, "round trip");
        }
    }
}
