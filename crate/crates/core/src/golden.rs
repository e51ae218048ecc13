//! Golden table files and diffs against computed output.
//!
//! `table2.csv` lines are `no;sigma;mw;a;b;c`, `table1.csv` lines are
//! `row;delta;table2_no;sigma_f;eu`. Both use `;` because root type strings
//! contain `+`.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use num_bigint::BigInt;

use crate::binary_form::BinaryEvenForm;
use crate::error::{Error, Result};
use crate::fibration::{build_gamma_f, check_witness, find_z_embedding, find_z_embedding_with, Z2Kind, ZWitness};
use crate::pipeline::DataTriple;
use crate::root_type::{enumerate_n_lists, eu_of, RootType};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    pub no: u32,
    pub triple: DataTriple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub row: u32,
    pub delta: RootType,
    pub table2_no: u32,
    pub sigma_f: RootType,
    pub eu: u32,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(Error::Io)
}

fn fields<'a>(path: &Path, line_no: usize, line: &'a str, n: usize) -> Result<Vec<&'a str>> {
    let f: Vec<&str> = line.split(';').map(str::trim).collect();
    if f.len() != n {
        return Err(Error::Golden {
            path: path.display().to_string(),
            line: line_no,
            msg: format!("expected {n} fields, found {}", f.len()),
        });
    }
    Ok(f)
}

fn field<T: std::str::FromStr>(path: &Path, line_no: usize, s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Golden {
        path: path.display().to_string(),
        line: line_no,
        msg: format!("bad {what}: {s:?}"),
    })
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_mw(s: &str) -> Option<Vec<u64>> {
    if s == "1" {
        return Some(vec![]);
    }
    let v: Vec<u64> = s.split('.').map(|x| x.parse().ok()).collect::<Option<_>>()?;
    if v.iter().any(|&x| x < 2) {
        return None;
    }
    Some(v)
}

pub fn parse_table2(path: &Path, text: &str) -> Result<Vec<GoldenRow>> {
    let mut out = Vec::new();
    for (n, line) in data_lines(text) {
        let f = fields(path, n, line, 6)?;
        let no = field(path, n, f[0], "entry number")?;
        let sigma: RootType = f[1].parse().map_err(|e| Error::Golden {
            path: path.display().to_string(),
            line: n,
            msg: format!("bad root type: {e}"),
        })?;
        let mw = parse_mw(f[2]).ok_or_else(|| Error::Golden {
            path: path.display().to_string(),
            line: n,
            msg: format!("bad MW: {:?}", f[2]),
        })?;
        let a: BigInt = field(path, n, f[3], "a")?;
        let b: BigInt = field(path, n, f[4], "b")?;
        let c: BigInt = field(path, n, f[5], "c")?;
        let t = BinaryEvenForm::new(a, b, c).map_err(|e| Error::Golden {
            path: path.display().to_string(),
            line: n,
            msg: e.to_string(),
        })?;
        out.push(GoldenRow { no, triple: DataTriple { sigma, mw, t } });
    }
    Ok(out)
}

/// Lines `sigma;mw;a;b;c` as written by `classify`; `no` is 0.
pub fn parse_triples(path: &Path, text: &str) -> Result<Vec<DataTriple>> {
    let numbered: String = data_lines(text).map(|(_, l)| format!("0;{l}\n")).collect();
    // keep the original line numbers in errors
    parse_table2(path, &numbered)
        .map(|rows| rows.into_iter().map(|r| r.triple).collect())
        .map_err(|e| match e {
            Error::Golden { path, line, msg } => {
                let original = data_lines(text).nth(line - 1).map_or(line, |(n, _)| n);
                Error::Golden { path, line: original, msg }
            }
            e => e,
        })
}

pub fn load_triples(path: &Path) -> Result<Vec<DataTriple>> {
    parse_triples(path, &read(path)?)
}

pub fn load_table2(path: &Path) -> Result<Vec<GoldenRow>> {
    parse_table2(path, &read(path)?)
}

pub fn parse_table1(path: &Path, text: &str) -> Result<Vec<Table1Row>> {
    let mut out = Vec::new();
    for (n, line) in data_lines(text) {
        let f = fields(path, n, line, 5)?;
        let parse_rt = |s: &str| -> Result<RootType> {
            s.parse().map_err(|e| Error::Golden {
                path: path.display().to_string(),
                line: n,
                msg: format!("bad root type: {e}"),
            })
        };
        out.push(Table1Row {
            row: field(path, n, f[0], "row number")?,
            delta: parse_rt(f[1])?,
            table2_no: field(path, n, f[2], "entry number")?,
            sigma_f: parse_rt(f[3])?,
            eu: field(path, n, f[4], "eu")?,
        });
    }
    Ok(out)
}

pub fn load_table1(path: &Path) -> Result<Vec<Table1Row>> {
    parse_table1(path, &read(path)?)
}

/// Serialized form of a triple without the entry number.
pub fn triple_line(t: &DataTriple) -> String {
    t.to_string()
}

/// Multiset difference of computed triples against the golden rows.
#[derive(Clone, Debug, Default)]
pub struct Diff {
    /// In the golden file but not computed.
    pub missing: Vec<GoldenRow>,
    /// Computed but not in the golden file.
    pub extra: Vec<DataTriple>,
}

impl Diff {
    pub fn len(&self) -> usize {
        self.missing.len() + self.extra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `-no;sigma;mw;a;b;c` for missing rows, `+sigma;mw;a;b;c` for extra ones.
    pub fn lines(&self) -> Vec<String> {
        let mut v: Vec<String> = self.missing.iter().map(|r| format!("-{};{}", r.no, r.triple)).collect();
        v.extend(self.extra.iter().map(|t| format!("+{t}")));
        v
    }
}

pub fn compare_golden(computed: &[DataTriple], golden: &[GoldenRow]) -> Diff {
    let mut pool: BTreeMap<String, usize> = BTreeMap::new();
    for t in computed {
        *pool.entry(triple_line(t)).or_default() += 1;
    }
    let mut diff = Diff::default();
    for r in golden {
        match pool.get_mut(&triple_line(&r.triple)) {
            Some(n) if *n > 0 => *n -= 1,
            _ => diff.missing.push(r.clone()),
        }
    }
    let mut left = pool;
    for t in computed {
        let n = left.get_mut(&triple_line(t)).unwrap();
        if *n > 0 {
            *n -= 1;
            diff.extra.push(t.clone());
        }
    }
    diff
}

pub fn compare_golden_file(computed: &[DataTriple], golden_path: &Path) -> Result<Diff> {
    Ok(compare_golden(computed, &load_table2(golden_path)?))
}

/// Result of checking one `table1.csv` row.
#[derive(Clone, Debug)]
pub struct RowCheck {
    pub row: u32,
    /// The referenced entry has root type `sigma_f` and trivial MW.
    pub entry_ok: bool,
    pub eu_ok: bool,
    pub witness: Option<ZWitness>,
    pub witness_valid: bool,
}

impl RowCheck {
    pub fn passed(&self) -> bool {
        self.entry_ok && self.eu_ok && self.witness.is_some() && self.witness_valid
    }
}

#[derive(Clone, Debug)]
pub struct PartitionCheck {
    pub rank18_n2: usize,
    /// Rank-18 (N2) types that are the root type of a trivial-MW entry.
    pub realized: usize,
    /// Distinct `table1.csv` configurations, all of rank 18 with (N2).
    pub table1: usize,
    pub table1_outside_list: Vec<RootType>,
    pub overlap: Vec<RootType>,
    pub uncovered: Vec<RootType>,
}

impl PartitionCheck {
    pub fn passed(&self) -> bool {
        self.table1_outside_list.is_empty()
            && self.overlap.is_empty()
            && self.uncovered.is_empty()
            && self.realized + self.table1 == self.rank18_n2
    }
}

#[derive(Clone, Debug)]
pub struct Table1Report {
    pub rows: Vec<RowCheck>,
    pub partition: PartitionCheck,
}

impl Table1Report {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(RowCheck::passed) && self.partition.passed()
    }
}

pub fn check_table1_row(row: &Table1Row, table2: &[GoldenRow]) -> Result<RowCheck> {
    let entry: Vec<&GoldenRow> = table2.iter().filter(|r| r.no == row.table2_no).collect();
    let entry_ok =
        !entry.is_empty() && entry.iter().all(|r| r.triple.sigma == row.sigma_f && r.triple.mw.is_empty());
    let eu_ok = eu_of(&row.sigma_f) == row.eu;
    let witness = find_z_embedding(&row.delta, &row.sigma_f, entry_ok, row.eu).or_else(|e| match e {
        Error::MwNotTrivial => Ok(None),
        e => Err(e),
    })?;
    let gamma = build_gamma_f(&row.sigma_f)?;
    let witness_valid = witness.as_ref().is_some_and(|w| check_witness(&row.delta, &gamma, w));
    Ok(RowCheck { row: row.row, entry_ok, eu_ok, witness, witness_valid })
}

/// A witness for one specific alternative of (Z2), validated.
pub fn witness_of_kind(row: &Table1Row, kind: Z2Kind) -> Result<Option<ZWitness>> {
    let gamma = build_gamma_f(&row.sigma_f)?;
    Ok(find_z_embedding_with(&row.delta, &gamma, row.eu, kind).filter(|w| check_witness(&row.delta, &gamma, w)))
}

pub fn check_partition(table1: &[Table1Row], table2: &[GoldenRow]) -> PartitionCheck {
    let (rank18, _) = enumerate_n_lists();
    let list: HashSet<&RootType> = rank18.iter().collect();
    let realized_all: HashSet<&RootType> =
        table2.iter().filter(|r| r.triple.mw.is_empty()).map(|r| &r.triple.sigma).collect();
    let deltas: HashSet<&RootType> = table1.iter().map(|r| &r.delta).collect();
    let realized = rank18.iter().filter(|s| realized_all.contains(s)).count();
    let mut table1_outside_list: Vec<RootType> = deltas.iter().filter(|s| !list.contains(*s)).map(|s| (*s).clone()).collect();
    let mut overlap: Vec<RootType> = deltas.iter().filter(|s| realized_all.contains(*s)).map(|s| (*s).clone()).collect();
    let mut uncovered: Vec<RootType> =
        rank18.iter().filter(|s| !realized_all.contains(s) && !deltas.contains(s)).cloned().collect();
    table1_outside_list.sort();
    overlap.sort();
    uncovered.sort();
    PartitionCheck { rank18_n2: rank18.len(), realized, table1: deltas.len(), table1_outside_list, overlap, uncovered }
}

pub fn verify_table1(table1: &[Table1Row], table2: &[GoldenRow]) -> Result<Table1Report> {
    use rayon::prelude::*;
    let rows = table1.par_iter().map(|r| check_table1_row(r, table2)).collect::<Result<Vec<_>>>()?;
    Ok(Table1Report { rows, partition: check_partition(table1, table2) })
}

pub fn verify_table1_files(table1: &Path, table2: &Path) -> Result<Table1Report> {
    verify_table1(&load_table1(table1)?, &load_table2(table2)?)
}
