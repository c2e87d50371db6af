//! Enumeration of admissible triples and the on-disk result cache.
//!
//! The cache is a CSV table plus a `.solutions.jsonl` sidecar holding the full
//! record for each row. Both files are append-only and written in canonical
//! order, so re-running a search over an existing cache reproduces the table.

use crate::arith::is_prime_u64;
use crate::conic::{ConicOptions, ConicSolution};
use crate::error::{Error, Result};
use crate::redei::{build_redei_with, normalized, triple_report_from};
use crate::residue::{quad_symbol, splitting_type, PrimeIdeal};
use crate::ring::{class_numbers, fundamental_unit, QuadField};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

pub const CSV_HEADER: [&str; 8] = ["p", "Np1", "pi1", "Np2", "pi2", "Np3", "pi3", "symbol"];

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub norm_bound: u64,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    pub height_bound: u32,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            norm_bound: 1000,
            jobs: 0,
            height_bound: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub p: u64,
    pub p1: PrimeIdeal,
    pub p2: PrimeIdeal,
    pub p3: PrimeIdeal,
    pub symbol: i8,
    pub solution: ConicSolution,
    pub timestamp: u64,
}

type Key = (PrimeIdeal, PrimeIdeal, PrimeIdeal);

impl SearchRecord {
    pub fn key(&self) -> Key {
        (self.p1.clone(), self.p2.clone(), self.p3.clone())
    }

    pub fn csv_row(&self) -> [String; 8] {
        [
            self.p.to_string(),
            self.p1.norm().to_string(),
            self.p1.generator().to_string(),
            self.p2.norm().to_string(),
            self.p2.generator().to_string(),
            self.p3.norm().to_string(),
            self.p3.generator().to_string(),
            self.symbol.to_string(),
        ]
    }

    /// Re-run the residue route on the stored solution.
    pub fn recompute(&self) -> Result<i8> {
        let data = build_redei_with(&self.p1, &self.p2, &ConicOptions::default())?;
        let data = crate::redei::RedeiData {
            solution: self.solution.clone(),
            alpha1: crate::redei::Alpha1 {
                x: self.solution.x.clone(),
                y: self.solution.y.clone(),
            },
            ..data
        };
        Ok(triple_report_from(&data, &self.p3, &ConicOptions::default())?.symbol)
    }
}

/// Gate: h⁺ = 1 and 2 inert.
pub fn check_search_field(field: QuadField) -> Result<()> {
    if class_numbers(field).h_plus != 1 {
        return Err(Error::PreconditionFailed(format!("Q(√{}) has nontrivial narrow class group", field.p())));
    }
    if !field.two_inert() {
        return Err(Error::PreconditionFailed(format!("the conic route needs p ≡ 5 mod 8, got {}", field.p())));
    }
    Ok(())
}

/// Odd prime ideals with N𝔭 ≤ bound, N𝔭 ≡ 1 mod 4 and (ε/𝔭) = 1, carrying normalized generators.
pub fn usable_ideals(field: QuadField, bound: u64) -> Result<Vec<PrimeIdeal>> {
    let eps = fundamental_unit(field).fundamental_unit;
    let mut out = Vec::new();
    for ell in 3..=bound {
        if !is_prime_u64(ell) {
            continue;
        }
        for ideal in splitting_type(field, ell)?.1 {
            if ideal.norm() > bound as u128 || ideal.norm() % 4 != 1 {
                continue;
            }
            if quad_symbol(&eps, &ideal)? != 1 {
                continue;
            }
            let Ok(g) = normalized(&ideal) else { continue };
            out.push(ideal.with_generator(g)?);
        }
    }
    out.sort();
    Ok(out)
}

/// Admissible (𝔭₁, 𝔭₂, 𝔭₃) with 𝔭₁ < 𝔭₂, in canonical order.
pub fn admissible_triples(ideals: &[PrimeIdeal]) -> Vec<(usize, usize, usize)> {
    let n = ideals.len();
    let ok: Vec<Vec<bool>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| a != b && matches!(quad_symbol(ideals[a].generator(), &ideals[b]), Ok(1)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !(ok[i][j] && ok[j][i]) {
                continue;
            }
            for k in 0..n {
                if k != i && k != j && ok[i][k] && ok[k][i] && ok[j][k] && ok[k][j] {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Compute records for the given triples, fanning out over pairs.
fn compute(field: QuadField, ideals: &[PrimeIdeal], triples: &[(usize, usize, usize)], options: &SearchOptions) -> Result<Vec<SearchRecord>> {
    let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &(i, j, k) in triples {
        by_pair.entry((i, j)).or_default().push(k);
    }
    let pairs: Vec<_> = by_pair.into_iter().collect();
    let conic = ConicOptions {
        height_bound: options.height_bound,
        avoid: None,
    };
    let run = || -> Result<Vec<SearchRecord>> {
        let chunks: Vec<Result<Vec<SearchRecord>>> = pairs
            .par_iter()
            .map(|((i, j), ks)| {
                let data = build_redei_with(&ideals[*i], &ideals[*j], &conic)?;
                ks.iter()
                    .map(|&k| {
                        let r = triple_report_from(&data, &ideals[k], &conic)?;
                        Ok(SearchRecord {
                            p: field.p(),
                            p1: r.p1,
                            p2: r.p2,
                            p3: r.p3,
                            symbol: r.symbol,
                            solution: r.solution,
                            timestamp: now(),
                        })
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        for c in chunks {
            out.extend(c?);
        }
        Ok(out)
    };
    let mut out = if options.jobs == 0 {
        run()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(run)?
    };
    out.sort_by_key(|r| r.key());
    Ok(out)
}

/// Every admissible triple up to the norm bound with its symbol.
pub fn search(field: QuadField, options: &SearchOptions) -> Result<Vec<SearchRecord>> {
    search_with_cache(field, options, None)
}

/// Search, reusing and extending a cache when given.
pub fn search_with_cache(field: QuadField, options: &SearchOptions, cache: Option<&Cache>) -> Result<Vec<SearchRecord>> {
    check_search_field(field)?;
    let ideals = usable_ideals(field, options.norm_bound)?;
    let triples = admissible_triples(&ideals);
    let known: BTreeMap<Key, SearchRecord> = match cache {
        Some(c) => c.load()?.into_iter().filter(|r| r.p == field.p()).map(|r| (r.key(), r)).collect(),
        None => BTreeMap::new(),
    };
    let missing: Vec<_> = triples
        .iter()
        .copied()
        .filter(|&(i, j, k)| !known.contains_key(&(ideals[i].clone(), ideals[j].clone(), ideals[k].clone())))
        .collect();
    let fresh = compute(field, &ideals, &missing, options)?;
    if let Some(c) = cache {
        c.append(&fresh)?;
    }
    let mut all: BTreeMap<Key, SearchRecord> = BTreeMap::new();
    for &(i, j, k) in &triples {
        let key = (ideals[i].clone(), ideals[j].clone(), ideals[k].clone());
        if let Some(r) = known.get(&key) {
            all.insert(key, r.clone());
        }
    }
    for r in fresh {
        all.insert(r.key(), r);
    }
    Ok(all.into_values().collect())
}

/// CSV table with a JSON-lines sidecar of full records.
#[derive(Debug, Clone)]
pub struct Cache {
    csv: PathBuf,
    sidecar: PathBuf,
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

impl Cache {
    pub fn new(csv: impl Into<PathBuf>) -> Self {
        let csv = csv.into();
        let mut name = csv.file_stem().map(|s| s.to_os_string()).unwrap_or_default();
        name.push(".solutions.jsonl");
        let sidecar = csv.with_file_name(name);
        Cache { csv, sidecar }
    }

    pub fn csv_path(&self) -> &Path {
        &self.csv
    }

    pub fn sidecar_path(&self) -> &Path {
        &self.sidecar
    }

    /// Records from the sidecar, checked row by row against the CSV.
    pub fn load(&self) -> Result<Vec<SearchRecord>> {
        let rows = self.read_csv()?;
        let mut records = Vec::new();
        if self.sidecar.exists() {
            let f = File::open(&self.sidecar).map_err(|e| io_err(&self.sidecar, e))?;
            for (n, line) in BufReader::new(f).lines().enumerate() {
                let line = line.map_err(|e| io_err(&self.sidecar, e))?;
                if line.trim().is_empty() {
                    continue;
                }
                let r: SearchRecord =
                    serde_json::from_str(&line).map_err(|e| io_err(&self.sidecar, format!("line {}: {e}", n + 1)))?;
                records.push(r);
            }
        }
        if rows.len() != records.len() {
            return Err(Error::Inconsistent(format!(
                "{} has {} rows but {} has {} records",
                self.csv.display(),
                rows.len(),
                self.sidecar.display(),
                records.len()
            )));
        }
        for (row, r) in rows.iter().zip(&records) {
            if row.as_slice() != r.csv_row().as_slice() {
                return Err(Error::Inconsistent(format!("cache row {row:?} disagrees with its sidecar record")));
            }
        }
        Ok(records)
    }

    fn read_csv(&self) -> Result<Vec<Vec<String>>> {
        if !self.csv.exists() {
            return Ok(Vec::new());
        }
        let mut rdr = csv::Reader::from_path(&self.csv).map_err(|e| io_err(&self.csv, e))?;
        let header: Vec<String> = rdr.headers().map_err(|e| io_err(&self.csv, e))?.iter().map(String::from).collect();
        if header != CSV_HEADER {
            return Err(io_err(&self.csv, format!("unexpected header {header:?}")));
        }
        rdr.records()
            .map(|r| r.map(|r| r.iter().map(String::from).collect()).map_err(|e| io_err(&self.csv, e)))
            .collect()
    }

    /// Append records to both files, writing the CSV header on first use.
    pub fn append(&self, records: &[SearchRecord]) -> Result<()> {
        if records.is_empty() && self.csv.exists() {
            return Ok(());
        }
        let fresh = !self.csv.exists();
        let f = OpenOptions::new().create(true).append(true).open(&self.csv).map_err(|e| io_err(&self.csv, e))?;
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(f);
        if fresh {
            w.write_record(CSV_HEADER).map_err(|e| io_err(&self.csv, e))?;
        }
        for r in records {
            w.write_record(r.csv_row()).map_err(|e| io_err(&self.csv, e))?;
        }
        w.flush().map_err(|e| io_err(&self.csv, e))?;
        let mut s = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.sidecar)
            .map_err(|e| io_err(&self.sidecar, e))?;
        for r in records {
            let line = serde_json::to_string(r).map_err(|e| io_err(&self.sidecar, e))?;
            writeln!(s, "{line}").map_err(|e| io_err(&self.sidecar, e))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_search_is_admissible() {
        let k = QuadField::new(5).unwrap();
        let opts = SearchOptions {
            norm_bound: 150,
            ..Default::default()
        };
        let ideals = usable_ideals(k, 150).unwrap();
        assert!(ideals.iter().all(|i| i.norm() % 4 == 1 && i.norm() <= 150));
        for r in search(k, &opts).unwrap() {
            assert!(crate::redei::triple_admissible(&r.p1, &r.p2, &r.p3).ok);
        }
    }

    #[test]
    fn field_gate() {
        let k = QuadField::new(17).unwrap();
        assert!(search(k, &SearchOptions::default()).is_err());
    }
}
