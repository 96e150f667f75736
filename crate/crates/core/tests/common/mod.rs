//! Helpers shared by the integration tests: independent exact rank and
//! projection routines, a seeded family generator, and the golden table.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use radohorn::{IndexSet, VectorFamily};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rank by plain rational Gaussian elimination.
pub fn naive_rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn coords(family: &VectorFamily, i: usize) -> Vec<Q> {
    family.vector(i).coords().to_vec()
}

pub fn rank_of(family: &VectorFamily, set: &IndexSet) -> usize {
    let rows: Vec<Vec<Q>> = set.iter().map(|&i| coords(family, i)).collect();
    naive_rank(&rows)
}

pub fn independent(family: &VectorFamily, set: &IndexSet) -> bool {
    rank_of(family, set) == set.len()
}

pub fn in_span(family: &VectorFamily, v: &[Q], set: &IndexSet) -> bool {
    let mut rows: Vec<Vec<Q>> = set.iter().map(|&i| coords(family, i)).collect();
    let before = naive_rank(&rows);
    rows.push(v.to_vec());
    naive_rank(&rows) == before
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Orthogonal projection onto the complement of `span(basis)`.
pub fn project_away(v: &[Q], basis: &[Vec<Q>]) -> Vec<Q> {
    let mut ortho: Vec<Vec<Q>> = Vec::new();
    for b in basis {
        let mut w = b.clone();
        for u in &ortho {
            let f = dot(&w, u) / dot(u, u);
            w = w.iter().zip(u).map(|(x, y)| x - &f * y).collect();
        }
        if w.iter().any(|x| !x.is_zero()) {
            ortho.push(w);
        }
    }
    let mut out = v.to_vec();
    for u in &ortho {
        let f = dot(&out, u) / dot(u, u);
        out = out.iter().zip(u).map(|(x, y)| x - &f * y).collect();
    }
    out
}

pub fn mask_set(mask: u32) -> IndexSet {
    (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

/// `indep[mask]` for every subset of the family.
pub fn independence_table(family: &VectorFamily) -> Vec<bool> {
    let m = family.len();
    (0..1u32 << m)
        .map(|mask| independent(family, &mask_set(mask)))
        .collect()
}

/// Fewest independent sets covering `mask`, by subset DP.
pub fn min_parts_table(indep: &[bool]) -> Vec<usize> {
    let mut best = vec![usize::MAX; indep.len()];
    best[0] = 0;
    for mask in 1..indep.len() {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        // Enumerate subsets of `rest` and always include the lowest bit.
        let mut sub = rest;
        loop {
            let part = sub | low;
            if indep[part] && best[mask ^ part] != usize::MAX {
                best[mask] = best[mask].min(best[mask ^ part] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best
}

pub fn family_from_rows(rows: &[Vec<i64>]) -> VectorFamily {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    VectorFamily::from_integer_rows(&refs).unwrap()
}

/// Random families with no zero vectors. Some vectors are scaled copies or
/// sums of earlier ones so that dependencies are common.
pub struct FamilyGen {
    rng: ChaCha8Rng,
}

impl FamilyGen {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rows(&mut self, max_dim: usize, max_len: usize) -> Vec<Vec<i64>> {
        let dim = self.rng.gen_range(1..=max_dim);
        let len = self.rng.gen_range(1..=max_len);
        let mut rows: Vec<Vec<i64>> = Vec::with_capacity(len);
        while rows.len() < len {
            let choice = self.rng.gen_range(0..10);
            let row: Vec<i64> = if choice < 2 && !rows.is_empty() {
                let base = &rows[self.rng.gen_range(0..rows.len())];
                let s = [-2, -1, 2, 3][self.rng.gen_range(0..4)];
                base.iter().map(|x| x * s).collect()
            } else if choice < 4 && rows.len() >= 2 {
                let a = &rows[self.rng.gen_range(0..rows.len())];
                let b = &rows[self.rng.gen_range(0..rows.len())];
                a.iter().zip(b).map(|(x, y)| x + y).collect()
            } else {
                (0..dim).map(|_| self.rng.gen_range(-2..=2)).collect()
            };
            if row.iter().any(|&x| x != 0) {
                rows.push(row);
            }
        }
        rows
    }

    pub fn family(&mut self, max_dim: usize, max_len: usize) -> VectorFamily {
        family_from_rows(&self.rows(max_dim, max_len))
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn fixture(name: &str) -> VectorFamily {
    radohorn::FamilyDocument::load(&fixtures_dir().join(format!("{name}.json")))
        .and_then(|d| d.to_family())
        .unwrap()
}

pub const FIXTURES: [&str; 4] = ["fam_a", "fam_b", "fam_c", "fam_d"];

/// (golden file stem, fixture, arguments, expected exit code)
pub fn golden_cases() -> Vec<(String, &'static str, Vec<&'static str>, i32)> {
    let mut cases = Vec::new();
    let table: [(&str, &[&str], [i32; 4]); 12] = [
        ("partition", &["partition", "--render"], [0, 0, 0, 0]),
        (
            "partition_ascii",
            &["partition", "--render", "--ascii-only"],
            [0, 0, 0, 0],
        ),
        ("analyze_k1", &["analyze", "--k", "1"], [2, 2, 2, 2]),
        ("analyze_k2", &["analyze", "--k", "2"], [0, 2, 0, 0]),
        ("construct", &["construct"], [0, 0, 0, 0]),
        (
            "construct_trace",
            &["construct", "--trace", "--ascii-only"],
            [0, 0, 0, 0],
        ),
        ("witness_k1", &["witness", "--k", "1"], [0, 0, 0, 0]),
        ("witness_k2", &["witness", "--k", "2"], [2, 0, 2, 2]),
        (
            "remove_k1_l1",
            &["remove", "--k", "1", "--l", "1"],
            [0, 2, 0, 2],
        ),
        (
            "remove_k1_l2",
            &["remove", "--k", "1", "--l", "2"],
            [0, 0, 0, 0],
        ),
        (
            "remove_k2_l0",
            &["remove", "--k", "2", "--l", "0"],
            [0, 2, 0, 0],
        ),
        ("oracle", &["oracle", "--render"], [0, 0, 0, 0]),
    ];
    for (stem, args, codes) in table {
        for (fixture, code) in FIXTURES.iter().zip(codes) {
            cases.push((format!("{fixture}.{stem}"), *fixture, args.to_vec(), code));
        }
    }
    cases
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the binary from the fixtures directory so the echoed input path is
/// stable.
pub fn run_cli(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_radohorn"))
        .current_dir(fixtures_dir())
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn run_case(fixture: &str, args: &[&str]) -> Run {
    let input = format!("{fixture}.json");
    let mut full: Vec<&str> = args.to_vec();
    full.push("--input");
    full.push(&input);
    run_cli(&full)
}

/// Compares every golden case; with `UPDATE_GOLDEN` set, rewrites the files
/// instead. Returns one message per mismatch.
pub fn check_goldens() -> Vec<String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut problems = Vec::new();
    for (stem, fixture, args, code) in golden_cases() {
        let run = run_case(fixture, &args);
        if run.code != code {
            problems.push(format!(
                "{stem}: exit {} (expected {code}) {}",
                run.code, run.stderr
            ));
        }
        let path = golden_dir().join(format!("{stem}.json"));
        if update {
            std::fs::write(&path, &run.stdout).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(expected) if expected == run.stdout => {}
            Ok(_) => problems.push(format!("{stem}: report differs from {}", path.display())),
            Err(e) => problems.push(format!("{stem}: {e}")),
        }
    }
    problems
}

pub fn one() -> Q {
    Q::one()
}
