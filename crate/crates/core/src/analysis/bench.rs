//! Timing of the three sign engines on random index pairs.

use std::hint::black_box;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::table::build_table;
use crate::algebra::AlgebraSignature;
use crate::error::{Error, Result};
use crate::twist::{closed_parity, BasisIndex, RecursiveTwist};

/// Levels at or below this also time table lookup and cross-check all engines.
pub const TABLE_BENCH_LEVEL: u32 = 12;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub levels: Vec<u32>,
    pub queries: usize,
    pub seed: u64,
    /// Timed runs per (level, engine); the median is reported.
    pub repetitions: usize,
    /// The recursive engine is timed on at most this many of the queries.
    pub recursive_queries: usize,
}

impl BenchConfig {
    pub fn new(levels: impl IntoIterator<Item = u32>, queries: usize, seed: u64) -> Self {
        BenchConfig {
            levels: levels.into_iter().collect(),
            queries,
            seed,
            repetitions: 5,
            recursive_queries: 1 << 16,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: u32,
    pub engine: &'static str,
    pub queries: usize,
    pub total_ns: u64,
    pub per_query_ns: f64,
    pub seed: u64,
}

impl BenchRow {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("row serializes")
    }
}

fn median_ns(repetitions: usize, mut run: impl FnMut() -> bool) -> u64 {
    let mut times: Vec<u64> = (0..repetitions.max(1))
        .map(|_| {
            let start = Instant::now();
            black_box(run());
            start.elapsed().as_nanos() as u64
        })
        .collect();
    times.sort_unstable();
    times[times.len() / 2]
}

fn row(n: u32, engine: &'static str, queries: usize, total_ns: u64, seed: u64) -> BenchRow {
    BenchRow {
        n,
        engine,
        queries,
        total_ns,
        per_query_ns: total_ns as f64 / queries.max(1) as f64,
        seed,
    }
}

/// Times closed-form, memoized-recursive and (for small levels) table-lookup
/// sign evaluation on uniformly random pairs below `2^n`. Wherever two
/// engines see the same query their signs are compared, and any disagreement
/// is an invariant error.
pub fn benchmark_engines(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in &config.levels {
        if n == 0 || n > 31 {
            return Err(Error::Unsupported(format!("benchmark levels must lie in 1..=31, got {n}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ u64::from(n) << 32);
        let queries: Vec<(u32, u32)> = (0..config.queries)
            .map(|_| (rng.random_range(0..1u32 << n), rng.random_range(0..1u32 << n)))
            .collect();

        let closed: Vec<bool> = queries.iter().map(|&(a, b)| closed_parity(a, b)).collect();
        let total = median_ns(config.repetitions, || {
            queries
                .iter()
                .fold(false, |acc, &(a, b)| acc ^ closed_parity(black_box(a), black_box(b)))
        });
        rows.push(row(n, "closed", queries.len(), total, config.seed));

        let rec_queries = &queries[..config.recursive_queries.min(queries.len())];
        let mut checker = RecursiveTwist::new();
        for (i, &(a, b)) in rec_queries.iter().enumerate() {
            if checker.sigma(BasisIndex(a), BasisIndex(b)).is_negative() != closed[i] {
                return Err(Error::Invariant(format!(
                    "closed form and recursion disagree on ({a}, {b}) at level {n}"
                )));
            }
        }
        drop(checker);
        let total = median_ns(config.repetitions, || {
            let mut rec = RecursiveTwist::with_capacity_limit(1 << 20);
            rec_queries.iter().fold(false, |acc, &(a, b)| {
                acc ^ rec.sigma(BasisIndex(black_box(a)), BasisIndex(black_box(b))).is_negative()
            })
        });
        rows.push(row(n, "recursive", rec_queries.len(), total, config.seed));

        if n <= TABLE_BENCH_LEVEL {
            let table = build_table(AlgebraSignature::standard(n)?, TABLE_BENCH_LEVEL)?;
            for (i, &(a, b)) in queries.iter().enumerate() {
                if table.is_negative(a, b) != closed[i] {
                    return Err(Error::Invariant(format!(
                        "table and closed form disagree on ({a}, {b}) at level {n}"
                    )));
                }
            }
            let total = median_ns(config.repetitions, || {
                queries
                    .iter()
                    .fold(false, |acc, &(a, b)| acc ^ table.is_negative(black_box(a), black_box(b)))
            });
            rows.push(row(n, "table", queries.len(), total, config.seed));
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_row_per_level_and_engine() {
        let mut cfg = BenchConfig::new([4, 8, 14], 1000, 3);
        cfg.repetitions = 2;
        let rows = benchmark_engines(&cfg).unwrap();
        let shape: Vec<_> = rows.iter().map(|r| (r.n, r.engine)).collect();
        assert_eq!(
            shape,
            vec![
                (4, "closed"),
                (4, "recursive"),
                (4, "table"),
                (8, "closed"),
                (8, "recursive"),
                (8, "table"),
                (14, "closed"),
                (14, "recursive"),
            ]
        );
        assert!(rows.iter().all(|r| r.queries == 1000 && r.seed == 3));
    }

    #[test]
    fn row_json_fields() {
        let r = row(8, "closed", 10, 250, 1);
        let v: serde_json::Value = serde_json::from_str(&r.to_json_line()).unwrap();
        for key in ["n", "engine", "queries", "total_ns", "per_query_ns"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["per_query_ns"], 25.0);
    }

    #[test]
    fn rejects_bad_levels() {
        assert!(benchmark_engines(&BenchConfig::new([0], 10, 0)).is_err());
        assert!(benchmark_engines(&BenchConfig::new([32], 10, 0)).is_err());
    }
}
