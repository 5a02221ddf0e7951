//! Orbit walks, full censuses over all `n!` labelings, operator order, and
//! the orbit-size prediction for forests. The census parallelizes over
//! starting ranks with a shared atomic visited set; each orbit is counted
//! exactly once by claiming its minimal-rank element, so the resulting
//! report is identical for every thread count.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::{factorial, Labeling};
use crate::ops::{CompiledOp, OperatorSpec};
use crate::orient::gcd;
use crate::Caps;

/// The orbit of `start`: `start, op(start), op^2(start), ...` up to (not
/// including) the first return to `start`.
pub fn orbit(g: &Graph, op: &OperatorSpec, start: &Labeling) -> Result<Vec<Labeling>> {
    let compiled = op.compile(g.n())?;
    let mut out = vec![start.clone()];
    let mut current = start.clone();
    loop {
        compiled.apply_in_place(g, &mut current);
        if current == *start {
            return Ok(out);
        }
        out.push(current.clone());
    }
}

/// Orbit-size census of an operator over all `n!` labelings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    pub labelings: u64,
    /// orbit size -> number of orbits of that size
    pub orbit_sizes: BTreeMap<u64, u64>,
    /// lcm of all orbit sizes
    pub order: BigUint,
}

struct AtomicBits {
    words: Vec<AtomicU64>,
}

impl AtomicBits {
    fn new(len: u64) -> AtomicBits {
        let words = (len as usize).div_ceil(64);
        AtomicBits {
            words: (0..words).map(|_| AtomicU64::new(0)).collect(),
        }
    }

    fn get(&self, i: u64) -> bool {
        let word = self.words[(i / 64) as usize].load(Ordering::Relaxed);
        word >> (i % 64) & 1 == 1
    }

    fn set(&self, i: u64) {
        self.words[(i / 64) as usize].fetch_or(1 << (i % 64), Ordering::Relaxed);
    }

    /// Sets bit `i`; true iff this call was the one that set it.
    fn claim(&self, i: u64) -> bool {
        let prev = self.words[(i / 64) as usize].fetch_or(1 << (i % 64), Ordering::Relaxed);
        prev >> (i % 64) & 1 == 0
    }
}

/// Visits every labeling once and records each orbit size exactly once per
/// orbit. Output is independent of `threads`.
pub fn census(g: &Graph, op: &OperatorSpec, caps: &Caps, threads: usize) -> Result<Census> {
    let n = g.n();
    if n > caps.max_census_n {
        return Err(Error::CapExceeded {
            what: "census vertex count",
            requested: n,
            cap: caps.max_census_n,
        });
    }
    let compiled = op.compile(n)?;
    let total = factorial(n);
    let visited = AtomicBits::new(total);
    let claimed = AtomicBits::new(total);
    let threads = threads.max(1).min(total as usize);
    let chunk = total.div_ceil(threads as u64);

    let locals: Vec<BTreeMap<u64, u64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let lo = t as u64 * chunk;
                let hi = total.min(lo + chunk);
                let compiled = &compiled;
                let visited = &visited;
                let claimed = &claimed;
                scope.spawn(move || census_worker(g, compiled, visited, claimed, lo, hi))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("census worker")).collect()
    });

    let mut orbit_sizes: BTreeMap<u64, u64> = BTreeMap::new();
    for local in locals {
        for (size, count) in local {
            *orbit_sizes.entry(size).or_insert(0) += count;
        }
    }
    let order = orbit_sizes
        .keys()
        .fold(BigUint::from(1u32), |acc, &size| acc.lcm(&BigUint::from(size)));
    Ok(Census {
        n,
        labelings: total,
        orbit_sizes,
        order,
    })
}

fn census_worker(
    g: &Graph,
    compiled: &CompiledOp,
    visited: &AtomicBits,
    claimed: &AtomicBits,
    lo: u64,
    hi: u64,
) -> BTreeMap<u64, u64> {
    let n = g.n();
    let mut sizes = BTreeMap::new();
    let mut ranks: Vec<u64> = Vec::new();
    for start in lo..hi {
        if visited.get(start) {
            continue;
        }
        ranks.clear();
        ranks.push(start);
        let mut current = Labeling::from_rank(n, start);
        loop {
            compiled.apply_in_place(g, &mut current);
            let r = current.rank();
            if r == start {
                break;
            }
            ranks.push(r);
        }
        let min_rank = *ranks.iter().min().expect("orbit is nonempty");
        if claimed.claim(min_rank) {
            *sizes.entry(ranks.len() as u64).or_insert(0) += 1;
        }
        for &r in &ranks {
            visited.set(r);
        }
    }
    sizes
}

/// The order of the operator as a permutation of all labelings: the lcm of
/// its orbit sizes, as an unbounded integer.
pub fn operator_order(g: &Graph, op: &OperatorSpec, caps: &Caps, threads: usize) -> Result<BigUint> {
    Ok(census(g, op, caps, threads)?.order)
}

/// The toric-promotion orbit size a forest labeling must have: with `t`
/// the size of the component holding label 1, `(n-1) * t / gcd(t, n)`.
pub fn predicted_orbit_size(g: &Graph, sigma: &Labeling) -> Result<u64> {
    let n = g.n();
    assert_eq!(n, sigma.n());
    if n < 2 {
        return Err(Error::TooFewVertices { needed: 2, n });
    }
    if !g.is_forest() {
        return Err(Error::NotAForest);
    }
    let components = g.connected_components();
    let t = components.blocks()[components.block_of(sigma.vertex_with(1))].len();
    Ok((n as u64 - 1) * (t / gcd(t, n)) as u64)
}

/// A named pass/fail outcome with an optional counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub counterexample: Option<String>,
}

/// A census in interchange form. The order is serialized as a decimal
/// string because it routinely exceeds fixed integer widths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub graph: String,
    pub n: usize,
    pub operator: String,
    pub orbit_sizes: BTreeMap<u64, u64>,
    pub order: String,
    pub labelings: u64,
    pub verdicts: Vec<Verdict>,
    pub seed: u64,
}

impl CensusReport {
    pub fn new(
        graph: String,
        operator: String,
        census: &Census,
        verdicts: Vec<Verdict>,
        seed: u64,
    ) -> CensusReport {
        CensusReport {
            graph,
            n: census.n,
            operator,
            orbit_sizes: census.orbit_sizes.clone(),
            order: census.order.to_string(),
            labelings: census.labelings,
            verdicts,
            seed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("census report serializes")
    }

    /// One `size,count` row per orbit size.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("size,count\n");
        for (size, count) in &self.orbit_sizes {
            out.push_str(&format!("{size},{count}\n"));
        }
        out
    }
}

impl std::fmt::Display for CensusReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "graph:     {}", self.graph)?;
        writeln!(f, "operator:  {}", self.operator)?;
        writeln!(f, "labelings: {}", self.labelings)?;
        writeln!(f, "order:     {}", self.order)?;
        writeln!(f, "orbit sizes:")?;
        for (size, count) in &self.orbit_sizes {
            writeln!(f, "  {size} x {count}")?;
        }
        for v in &self.verdicts {
            let status = if v.pass { "pass" } else { "FAIL" };
            match &v.counterexample {
                Some(cex) => writeln!(f, "check {}: {status} ({cex})", v.name)?,
                None => writeln!(f, "check {}: {status}", v.name)?,
            }
        }
        Ok(())
    }
}
