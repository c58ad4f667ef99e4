//! Exhaustive search for solutions of `x^p - y^q = 1` over norm shells.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Roots;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::criteria::{cassels_check, qth_roots, CasselsReport};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::primes::is_prime;
use crate::quadint::QuadInt;

/// Elements with `lo <= norm <= hi`, ordered by `(norm, a, b)`.
///
/// Uses `4 N(a + b w) = (2a + c1 b)^2 + |disc| b^2`.
pub fn elements_in_norm_range(field: FieldSpec, lo: u64, hi: u64) -> Vec<QuadInt> {
    let lo = lo.max(1);
    if hi < lo {
        return vec![];
    }
    let (_, c1) = field.omega_relation();
    let disc_abs = field.disc().unsigned_abs() as u128;
    let (lo4, hi4) = (4 * lo as u128, 4 * hi as u128);
    let b_max = (hi4 / disc_abs).sqrt() as i64;
    let mut out: Vec<(u64, i64, i64)> = Vec::new();
    for b in -b_max..=b_max {
        let tail = disc_abs * (b as i128).unsigned_abs().pow(2);
        if tail > hi4 {
            continue;
        }
        let u_hi = (hi4 - tail).sqrt() as i64;
        let u_lo = if tail >= lo4 {
            0
        } else {
            let need = lo4 - tail;
            let s = need.sqrt();
            (if s * s == need { s } else { s + 1 }) as i64
        };
        let parity = (c1 * b).rem_euclid(2);
        let mut push = |u: i64| {
            if u.rem_euclid(2) == parity {
                let a = (u - c1 * b) / 2;
                let n = ((u as i128).pow(2) as u128 + tail) / 4;
                out.push((n as u64, a, b));
            }
        };
        for u in u_lo..=u_hi {
            push(u);
            if u != 0 {
                push(-u);
            }
        }
    }
    out.sort_unstable();
    out.into_iter()
        .map(|(_, a, b)| QuadInt::new(field, a, b))
        .collect()
}

/// Every `x` with `1 <= N(x) <= n_max`, ordered by `(norm, a, b)`.
pub fn enumerate_by_norm(field: FieldSpec, n_max: u64) -> Vec<QuadInt> {
    elements_in_norm_range(field, 1, n_max)
}

pub fn elements_with_norm(field: FieldSpec, n: u64) -> Vec<QuadInt> {
    elements_in_norm_range(field, n, n)
}

/// Contiguous norm ranges covering `[1, n_max]`.
pub fn norm_shards(n_max: u64, shards: usize) -> Vec<(u64, u64)> {
    let shards = (shards.max(1) as u64).min(n_max.max(1));
    let width = n_max.div_ceil(shards).max(1);
    (0..shards)
        .map(|i| (1 + i * width, ((i + 1) * width).min(n_max)))
        .filter(|(lo, hi)| lo <= hi)
        .collect()
}

/// `count` seeded elements drawn uniformly from `1 <= N(x) <= n_max`.
pub fn random_elements(field: FieldSpec, count: usize, n_max: u64, seed: u64) -> Vec<QuadInt> {
    let (c0, c1) = field.omega_relation();
    let disc_abs = field.disc().unsigned_abs();
    let b_max = ((4 * n_max / disc_abs) as f64).sqrt() as i64 + 1;
    let a_max = (n_max as f64).sqrt() as i64 + b_max + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = rng.gen_range(-a_max..=a_max) as i128;
        let b = rng.gen_range(-b_max..=b_max) as i128;
        let n = a * a + c1 as i128 * a * b - c0 as i128 * b * b;
        if 1 <= n && n <= n_max as i128 {
            out.push(QuadInt::new(field, a as i64, b as i64));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub x: QuadInt,
    pub y: QuadInt,
    /// Present when `p > q >= 3`.
    pub cassels: Option<CasselsReport>,
}

/// `z = x^p - 1` has a `q`-th power norm but is not a `q`-th power.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NearMiss {
    pub x: QuadInt,
    pub z: QuadInt,
    pub q: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub field: FieldSpec,
    pub p: u64,
    pub q: u64,
    pub norm_bound: u64,
    pub candidates_scanned: u64,
    pub solutions: Vec<Solution>,
    pub near_misses: Vec<NearMiss>,
    #[serde(skip)]
    pub elapsed: Duration,
    /// Elements skipped because the checkpoint listed them.
    #[serde(skip)]
    pub resumed: u64,
}

impl SearchReport {
    /// Solutions whose report violates a condition every solution must meet.
    pub fn inconsistent_solutions(&self) -> Vec<&Solution> {
        self.solutions
            .iter()
            .filter(|s| s.cassels.as_ref().is_some_and(|c| !c.consistent()))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    /// Number of norm-range shards scanned in parallel; 0 means one per thread.
    pub shards: usize,
    pub checkpoint: Option<PathBuf>,
}

/// Resumable record of scanned elements: one canonical element per line.
///
/// Only elements with nothing to report are recorded, so a resumed scan
/// rebuilds the same solutions and near-misses as a fresh one.
#[derive(Debug)]
pub struct Checkpoint {
    path: PathBuf,
    done: HashSet<String>,
    writer: Mutex<File>,
}

impl Checkpoint {
    pub fn open(path: &Path) -> Result<Self> {
        let mut done = HashSet::new();
        if path.exists() {
            for line in BufReader::new(File::open(path)?).lines() {
                let line = line?;
                let line = line.trim();
                if !line.is_empty() {
                    done.insert(line.to_owned());
                }
            }
        }
        let writer = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(Checkpoint {
            path: path.to_owned(),
            done,
            writer: Mutex::new(writer),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn contains(&self, x: &QuadInt) -> bool {
        self.done.contains(&x.to_string())
    }

    pub fn len(&self) -> usize {
        self.done.len()
    }

    pub fn is_empty(&self) -> bool {
        self.done.is_empty()
    }

    fn record(&self, elems: &[QuadInt]) -> Result<()> {
        if elems.is_empty() {
            return Ok(());
        }
        let mut buf = String::new();
        for x in elems {
            buf.push_str(&x.to_string());
            buf.push('\n');
        }
        let mut w = self.writer.lock().expect("checkpoint lock");
        w.write_all(buf.as_bytes())?;
        w.flush()?;
        Ok(())
    }
}

#[derive(Default)]
struct ShardResult {
    scanned: u64,
    resumed: u64,
    solutions: Vec<Solution>,
    near_misses: Vec<NearMiss>,
}

fn scan_shard(
    field: FieldSpec,
    p: u32,
    q: u32,
    range: (u64, u64),
    checkpoint: Option<&Checkpoint>,
) -> Result<ShardResult> {
    let one = QuadInt::one(field);
    let mut res = ShardResult::default();
    let mut clean = Vec::new();
    for x in elements_in_norm_range(field, range.0, range.1) {
        res.scanned += 1;
        if checkpoint.is_some_and(|c| c.contains(&x)) {
            res.resumed += 1;
            continue;
        }
        let z = &x.pow(p) - &one;
        // y = 0 is the trivial family x^p = 1
        if z.is_zero() {
            clean.push(x);
            continue;
        }
        let roots = qth_roots(&z, q);
        if roots.is_empty() {
            if z.norm().nth_root(q).pow(q) == z.norm() {
                res.near_misses.push(NearMiss {
                    x,
                    z,
                    q: q as u64,
                });
            } else {
                clean.push(x);
            }
            continue;
        }
        for y in roots {
            assert!((x.pow(p) - y.pow(q)).is_one());
            let cassels = if p > q && q >= 3 {
                Some(cassels_check(&x, &y, p as u64, q as u64)?)
            } else {
                None
            };
            res.solutions.push(Solution {
                x: x.clone(),
                y,
                cassels,
            });
        }
    }
    if let Some(c) = checkpoint {
        c.record(&clean)?;
    }
    Ok(res)
}

fn run_search(field: FieldSpec, p: u64, q: u64, n_max: u64, opts: &SearchOptions) -> Result<SearchReport> {
    let start = Instant::now();
    let checkpoint = opts.checkpoint.as_deref().map(Checkpoint::open).transpose()?;
    let shards = if opts.shards == 0 {
        4 * rayon::current_num_threads()
    } else {
        opts.shards
    };
    let (pe, qe) = (p as u32, q as u32);
    let results: Vec<ShardResult> = norm_shards(n_max, shards)
        .into_par_iter()
        .map(|range| scan_shard(field, pe, qe, range, checkpoint.as_ref()))
        .collect::<Result<_>>()?;
    let mut report = SearchReport {
        field,
        p,
        q,
        norm_bound: n_max,
        candidates_scanned: 0,
        solutions: vec![],
        near_misses: vec![],
        elapsed: Duration::ZERO,
        resumed: 0,
    };
    for r in results {
        report.candidates_scanned += r.scanned;
        report.resumed += r.resumed;
        report.solutions.extend(r.solutions);
        report.near_misses.extend(r.near_misses);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

fn check_prime(v: u64) -> Result<()> {
    if is_prime(v) {
        Ok(())
    } else {
        Err(Error::NotPrime(v))
    }
}

/// Scan every `x` with `N(x) <= n_max` for `x^p - y^q = 1`, `y != 0`.
pub fn search_catalan(field: FieldSpec, p: u64, q: u64, n_max: u64) -> Result<SearchReport> {
    search_catalan_with(field, p, q, n_max, &SearchOptions::default())
}

pub fn search_catalan_with(
    field: FieldSpec,
    p: u64,
    q: u64,
    n_max: u64,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    check_prime(p)?;
    check_prime(q)?;
    if !(p > q && q >= 3) {
        return Err(Error::InvalidExponents {
            p,
            q,
            reason: "need p > q >= 3",
        });
    }
    run_search(field, p, q, n_max, opts)
}

/// Scan for `x^p - y^p = 1`, `y != 0`.
pub fn search_equal_exponent(field: FieldSpec, p: u64, n_max: u64) -> Result<SearchReport> {
    search_equal_exponent_with(field, p, n_max, &SearchOptions::default())
}

pub fn search_equal_exponent_with(
    field: FieldSpec,
    p: u64,
    n_max: u64,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    check_prime(p)?;
    if p < 3 {
        return Err(Error::InvalidExponents {
            p,
            q: p,
            reason: "need odd p >= 3",
        });
    }
    run_search(field, p, p, n_max, opts)
}

/// Lattice-point count of `1 <= N(x) <= n_max`, by direct double loop.
pub fn lattice_count(field: FieldSpec, n_max: u64) -> u64 {
    let (c0, c1) = field.omega_relation();
    let r = (4 * n_max as i64 / field.disc().abs()).sqrt() + 2;
    let a_r = (n_max as i64).sqrt() + r + 2;
    let mut count = 0;
    for b in -r..=r {
        for a in -a_r..=a_r {
            let n = BigInt::from(a * a + c1 * a * b - c0 * b * b);
            if n >= BigInt::from(1) && n <= BigInt::from(n_max) {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_spec;

    fn f(d: i64) -> FieldSpec {
        field_spec(d).unwrap()
    }

    #[test]
    fn small_enumerations() {
        let g = f(-1);
        let units: Vec<String> = enumerate_by_norm(g, 1).iter().map(|x| x.to_string()).collect();
        assert_eq!(units.len(), 4);
        assert_eq!(enumerate_by_norm(g, 2).len(), 8);
        let s = f(-7);
        let two: Vec<QuadInt> = enumerate_by_norm(s, 2);
        assert_eq!(two.len(), 6);
        assert!(two.contains(&QuadInt::omega(s)));
        assert!(two.contains(&QuadInt::new(s, 1, -1)));
        assert!(two.iter().all(|x| x.norm() <= BigInt::from(2)));
    }

    #[test]
    fn counts_match_brute_force() {
        for field in FieldSpec::all() {
            for n in [1, 7, 50, 333] {
                assert_eq!(enumerate_by_norm(field, n).len() as u64, lattice_count(field, n), "{field} {n}");
            }
        }
    }

    #[test]
    fn ordering_and_uniqueness() {
        let xs = enumerate_by_norm(f(-3), 200);
        let keys: Vec<_> = xs.iter().map(|x| (x.norm(), x.a().clone(), x.b().clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn shards_partition_the_range() {
        let field = f(-11);
        let total = enumerate_by_norm(field, 1000);
        for shards in [1, 3, 7, 2000] {
            let joined: Vec<QuadInt> = norm_shards(1000, shards)
                .into_iter()
                .flat_map(|(lo, hi)| elements_in_norm_range(field, lo, hi))
                .collect();
            assert_eq!(joined, total);
        }
    }

    #[test]
    fn no_small_solutions_in_gaussian_integers() {
        let r = search_catalan(f(-1), 5, 3, 2000).unwrap();
        assert!(r.solutions.is_empty());
        assert_eq!(r.candidates_scanned, lattice_count(f(-1), 2000));
        assert!(search_equal_exponent(f(-1), 3, 1000).unwrap().solutions.is_empty());
    }

    #[test]
    fn unit_solution_in_eisenstein_integers() {
        let e = f(-3);
        let r = search_catalan(e, 7, 5, 10).unwrap();
        // w and its conjugate, w a primitive sixth root of unity
        let w = QuadInt::omega(e);
        let got: Vec<(QuadInt, QuadInt)> = r.solutions.iter().map(|s| (s.x.clone(), s.y.clone())).collect();
        assert_eq!(got, vec![(w.clone(), -w.clone()), (w.conj(), -w.conj())]);
        assert_eq!(r.inconsistent_solutions().len(), 2);
        assert!(search_equal_exponent(e, 3, 10).unwrap().solutions.is_empty());
        assert!(!search_equal_exponent(e, 5, 1).unwrap().solutions.is_empty());
    }

    #[test]
    fn deterministic_across_shard_counts() {
        let field = f(-2);
        let a = search_catalan_with(field, 5, 3, 500, &SearchOptions { shards: 1, checkpoint: None }).unwrap();
        let b = search_catalan_with(field, 5, 3, 500, &SearchOptions { shards: 9, checkpoint: None }).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn bad_exponents() {
        assert!(search_catalan(f(-1), 3, 5, 10).is_err());
        assert!(search_catalan(f(-1), 9, 5, 10).is_err());
        assert!(search_equal_exponent(f(-1), 2, 10).is_err());
    }

    #[test]
    fn random_elements_respect_bound() {
        for field in FieldSpec::all() {
            let xs = random_elements(field, 300, 1_000_000, 3);
            assert_eq!(xs.len(), 300);
            assert!(xs.iter().all(|x| x.norm() >= BigInt::from(1) && x.norm() <= BigInt::from(1_000_000)));
            assert_eq!(xs, random_elements(field, 300, 1_000_000, 3));
        }
    }
}
