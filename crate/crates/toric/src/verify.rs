//! Verification suites: orbit-size checks over whole graph families,
//! operator-identity sweeps, the zeta-order survey on paths, and the
//! flip-class/component structure sweep. Every suite records its scope and
//! seed, and every report is byte-identical for any thread count: work is
//! split by index and merged back in index order.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fs::{verify_component_correspondence, verify_component_cycle};
use crate::graph::{Graph, GraphFamily};
use crate::labeling::{factorial, Labeling};
use crate::ops::{
    cpro_path, cyclic_shift, factored_tpro_power, forest_power_path, jdt_slide, promotion,
    toggle, toric_promotion, toric_promotion_pi, OperatorSpec,
};
use crate::orbit::{census, operator_order, Census, Verdict};
use crate::orient::{double_flip_classes, flip_classes, induced_orientation, nu};
use crate::Caps;

/// Default RNG seed for sampled scopes; recorded in every report.
pub const DEFAULT_SEED: u64 = 1729;

const MIX: u64 = 0x9E37_79B9_7F4A_7C15;

fn stream_seed(seed: u64, index: u64) -> u64 {
    seed ^ index.wrapping_add(1).wrapping_mul(MIX)
}

/// Which graph family a scope enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScopeFamily {
    Trees,
    Forests,
}

impl ScopeFamily {
    fn as_str(&self) -> &'static str {
        match self {
            ScopeFamily::Trees => "trees",
            ScopeFamily::Forests => "forests",
        }
    }
}

/// A verification scope: vertex-count range, the point where exhaustive
/// enumeration gives way to seeded sampling, and the sample sizes.
///
/// `sample_labelings = 0` means a full census of every graph in scope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationScope {
    pub family: ScopeFamily,
    pub min_n: usize,
    pub max_n: usize,
    pub exhaustive_max_n: usize,
    pub sample_graphs: usize,
    pub sample_labelings: usize,
    pub seed: u64,
}

impl VerificationScope {
    /// Trees from 2 vertices up to `max_n`: exhaustive through 6 vertices,
    /// 200 sampled trees per larger size, full labelings everywhere.
    pub fn trees(max_n: usize, seed: u64) -> VerificationScope {
        VerificationScope {
            family: ScopeFamily::Trees,
            min_n: 2,
            max_n,
            exhaustive_max_n: 6,
            sample_graphs: 200,
            sample_labelings: 0,
            seed,
        }
    }

    /// Forests from 2 vertices up to `max_n`, exhaustive throughout.
    pub fn forests(max_n: usize, seed: u64) -> VerificationScope {
        VerificationScope {
            family: ScopeFamily::Forests,
            min_n: 2,
            max_n,
            exhaustive_max_n: max_n,
            sample_graphs: 200,
            sample_labelings: 0,
            seed,
        }
    }

    /// The graphs this scope covers, in a deterministic order.
    fn graphs(&self, caps: &Caps) -> Result<Vec<Graph>> {
        let mut out = Vec::new();
        for n in self.min_n..=self.max_n {
            if n <= self.exhaustive_max_n {
                match self.family {
                    ScopeFamily::Trees => out.extend(Graph::enumerate_trees(n, caps)?),
                    ScopeFamily::Forests => out.extend(Graph::enumerate_forests(n, caps)?),
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(self.seed, n as u64));
                match self.family {
                    ScopeFamily::Trees => {
                        for _ in 0..self.sample_graphs {
                            let seq: Vec<usize> =
                                (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
                            out.push(Graph::from_prufer(&seq)?);
                        }
                    }
                    ScopeFamily::Forests => {
                        // Rejection sampling over edge subsets of the
                        // complete graph: uniform over forests.
                        let m = n * (n - 1) / 2;
                        let all: Vec<(usize, usize)> = (0..n)
                            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                            .collect();
                        let mut found = 0;
                        while found < self.sample_graphs {
                            let mask = rng.gen::<u64>() & ((1u64 << m) - 1);
                            let pairs: Vec<(usize, usize)> = all
                                .iter()
                                .enumerate()
                                .filter(|(e, _)| mask >> e & 1 == 1)
                                .map(|(_, &p)| p)
                                .collect();
                            let g = Graph::from_edge_list(n, &pairs)?;
                            if g.is_forest() {
                                out.push(g);
                                found += 1;
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Default)]
struct Tally {
    checks: u64,
    failures: u64,
    first: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, cex: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(cex());
            }
        }
    }

    /// Appends a later tally; `self` must come earlier in scope order so
    /// the surviving counterexample is the first one.
    fn absorb(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures += other.failures;
        if self.first.is_none() {
            self.first = other.first;
        }
    }

    fn verdict(&self, name: &str) -> Verdict {
        Verdict {
            name: name.into(),
            pass: self.failures == 0,
            counterexample: self.first.clone(),
        }
    }
}

/// Runs `f` over `items` with up to `threads` workers; results come back
/// in item order regardless of scheduling.
fn parallel_map<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync,
{
    let threads = threads.max(1).min(items.len().max(1));
    if threads == 1 {
        return items.iter().enumerate().map(|(i, t)| f(i, t)).collect();
    }
    let chunk = items.len().div_ceil(threads);
    std::thread::scope(|scope| {
        let f = &f;
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let lo = t * chunk;
                let hi = items.len().min(lo + chunk);
                scope.spawn(move || (lo..hi).map(|i| f(i, &items[i])).collect::<Vec<R>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("verify worker"))
            .collect()
    })
}

/// Report of an orbit-size suite over a graph family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSuiteReport {
    pub suite: String,
    pub family: String,
    pub min_n: usize,
    pub max_n: usize,
    pub exhaustive_max_n: usize,
    pub sample_graphs: usize,
    pub sample_labelings: usize,
    pub seed: u64,
    pub graphs_checked: u64,
    pub labelings_checked: u64,
    pub verdicts: Vec<Verdict>,
    pub pass: bool,
}

impl std::fmt::Display for OrbitSuiteReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "suite {} over {} (n = {}..={}, exhaustive to {}, seed {})",
            self.suite, self.family, self.min_n, self.max_n, self.exhaustive_max_n, self.seed
        )?;
        writeln!(
            f,
            "graphs: {}  labelings: {}",
            self.graphs_checked, self.labelings_checked
        )?;
        write_verdicts(f, &self.verdicts)
    }
}

fn write_verdicts(f: &mut std::fmt::Formatter<'_>, verdicts: &[Verdict]) -> std::fmt::Result {
    for v in verdicts {
        let status = if v.pass { "pass" } else { "FAIL" };
        match &v.counterexample {
            Some(cex) => writeln!(f, "  {}: {status} ({cex})", v.name)?,
            None => writeln!(f, "  {}: {status}", v.name)?,
        }
    }
    Ok(())
}

struct OrbitOutcome {
    labelings: u64,
    tallies: Vec<Tally>,
}

/// Walks every toric-promotion orbit of every graph in scope and checks
/// the measured size against the component-size formula, divisibility of
/// every orbit size by `n - 1`, and (on trees) that the `(n-1)`-th power
/// fixes every labeling.
pub fn verify_forest_theorem(
    scope: &VerificationScope,
    caps: &Caps,
    threads: usize,
) -> Result<OrbitSuiteReport> {
    let graphs = scope.graphs(caps)?;
    let names = [
        "orbit-size-formula",
        "orbit-size-divisibility",
        "toric-power-identity",
    ];
    let outcomes = parallel_map(&graphs, threads, |index, g| {
        check_forest_graph(g, scope.sample_labelings, stream_seed(scope.seed, index as u64))
    });
    finish_orbit_suite("forest-orbits", scope, &names, graphs.len(), outcomes)
}

fn check_forest_graph(g: &Graph, sample_labelings: usize, seed: u64) -> Result<OrbitOutcome> {
    let n = g.n();
    let compiled = OperatorSpec::ToricPromotion.compile(n)?;
    let components = g.connected_components();
    let comp_size: Vec<usize> = (0..n)
        .map(|v| components.blocks()[components.block_of(v)].len())
        .collect();
    let is_tree = components.blocks().len() == 1;
    let mut tallies = vec![Tally::default(); 3];
    let mut labelings = 0u64;

    let inspect_orbit = |members: &[(u64, usize)], tallies: &mut Vec<Tally>| {
        let size = members.len() as u64;
        for &(rank, t) in members {
            let expected = (n as u64 - 1) * (t / crate::orient::gcd(t, n)) as u64;
            tallies[0].record(expected == size, || {
                format!(
                    "graph={} labeling={} orbit={} expected={}",
                    g.descriptor(),
                    Labeling::from_rank(n, rank),
                    size,
                    expected
                )
            });
        }
        tallies[1].record(size.is_multiple_of(n as u64 - 1), || {
            format!("graph={} orbit={}", g.descriptor(), size)
        });
        if is_tree {
            tallies[2].record((n as u64 - 1).is_multiple_of(size), || {
                format!("graph={} orbit={}", g.descriptor(), size)
            });
        }
    };

    let walk = |start: u64| -> Vec<(u64, usize)> {
        let mut current = Labeling::from_rank(n, start);
        let mut members = vec![(start, comp_size[current.vertex_with(1)])];
        loop {
            compiled.apply_in_place(g, &mut current);
            let r = current.rank();
            if r == start {
                return members;
            }
            members.push((r, comp_size[current.vertex_with(1)]));
        }
    };

    if sample_labelings == 0 {
        let total = factorial(n);
        let mut visited = vec![false; total as usize];
        for start in 0..total {
            if visited[start as usize] {
                continue;
            }
            let members = walk(start);
            for &(r, _) in &members {
                visited[r as usize] = true;
            }
            labelings += members.len() as u64;
            inspect_orbit(&members, &mut tallies);
        }
    } else {
        let total = factorial(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..sample_labelings {
            let members = walk(rng.gen_range(0..total));
            labelings += 1;
            inspect_orbit(&members, &mut tallies);
        }
    }
    Ok(OrbitOutcome { labelings, tallies })
}

/// Checks that on every tree in scope, every orbit of shift-after-promotion
/// has size exactly `n`.
pub fn verify_cpro_order(
    scope: &VerificationScope,
    caps: &Caps,
    threads: usize,
) -> Result<OrbitSuiteReport> {
    let graphs = scope.graphs(caps)?;
    let names = ["cpro-orbit-size"];
    let outcomes = parallel_map(&graphs, threads, |index, g| {
        check_cpro_graph(g, scope.sample_labelings, stream_seed(scope.seed, index as u64))
    });
    finish_orbit_suite("cpro-orbits", scope, &names, graphs.len(), outcomes)
}

fn check_cpro_graph(g: &Graph, sample_labelings: usize, seed: u64) -> Result<OrbitOutcome> {
    let n = g.n();
    let compiled = OperatorSpec::cpro().compile(n)?;
    let mut tally = Tally::default();
    let mut labelings = 0u64;

    let walk_size = |start: u64| -> u64 {
        let mut current = Labeling::from_rank(n, start);
        let mut size = 0u64;
        loop {
            compiled.apply_in_place(g, &mut current);
            size += 1;
            if current.rank() == start {
                return size;
            }
        }
    };

    if sample_labelings == 0 {
        let total = factorial(n);
        let mut visited = vec![false; total as usize];
        for start in 0..total {
            if visited[start as usize] {
                continue;
            }
            let mut current = Labeling::from_rank(n, start);
            let mut size = 0u64;
            loop {
                visited[current.rank() as usize] = true;
                compiled.apply_in_place(g, &mut current);
                size += 1;
                if current.rank() == start {
                    break;
                }
            }
            labelings += size;
            tally.record(size == n as u64, || {
                format!("graph={} orbit={}", g.descriptor(), size)
            });
        }
    } else {
        let total = factorial(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..sample_labelings {
            let size = walk_size(rng.gen_range(0..total));
            labelings += 1;
            tally.record(size == n as u64, || {
                format!("graph={} orbit={}", g.descriptor(), size)
            });
        }
    }
    Ok(OrbitOutcome {
        labelings,
        tallies: vec![tally],
    })
}

fn finish_orbit_suite(
    suite: &str,
    scope: &VerificationScope,
    names: &[&str],
    graphs: usize,
    outcomes: Vec<Result<OrbitOutcome>>,
) -> Result<OrbitSuiteReport> {
    let mut merged = vec![Tally::default(); names.len()];
    let mut labelings = 0u64;
    for outcome in outcomes {
        let outcome = outcome?;
        labelings += outcome.labelings;
        for (into, tally) in merged.iter_mut().zip(outcome.tallies) {
            into.absorb(tally);
        }
    }
    let verdicts: Vec<Verdict> = merged
        .iter()
        .zip(names)
        .map(|(t, name)| t.verdict(name))
        .collect();
    let pass = verdicts.iter().all(|v| v.pass);
    Ok(OrbitSuiteReport {
        suite: suite.into(),
        family: scope.family.as_str().into(),
        min_n: scope.min_n,
        max_n: scope.max_n,
        exhaustive_max_n: scope.exhaustive_max_n,
        sample_graphs: scope.sample_graphs,
        sample_labelings: scope.sample_labelings,
        seed: scope.seed,
        graphs_checked: graphs as u64,
        labelings_checked: labelings,
        verdicts,
        pass,
    })
}

/// One row of the zeta-order survey: computed order of the reordered toric
/// promotion on a path versus the predicted `h * (n - h)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaRow {
    pub n: usize,
    pub h: usize,
    pub computed_order: String,
    pub expected_order: u64,
    pub matches: bool,
}

/// Survey report. A mismatch at `h = 1` contradicts the proven orbit
/// theorem and fails the report; mismatches at larger `h` are findings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaOrderReport {
    pub suite: String,
    pub min_n: usize,
    pub max_n: usize,
    pub rows: Vec<ZetaRow>,
    pub all_match: bool,
    pub pass: bool,
}

impl std::fmt::Display for ZetaOrderReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "suite {} (paths n = {}..={})", self.suite, self.min_n, self.max_n)?;
        writeln!(f, "{:>3} {:>3} {:>12} {:>12} match", "n", "h", "computed", "expected")?;
        for row in &self.rows {
            writeln!(
                f,
                "{:>3} {:>3} {:>12} {:>12} {}",
                row.n, row.h, row.computed_order, row.expected_order, row.matches
            )?;
        }
        writeln!(f, "all rows match: {}", self.all_match)
    }
}

/// Censuses the reordered toric promotion on the path and compares its
/// order with `h * (n - h)`.
pub fn verify_zeta_conjecture(n: usize, h: usize, caps: &Caps, threads: usize) -> Result<ZetaRow> {
    let g = Graph::generate(GraphFamily::Path, n)?;
    let op = OperatorSpec::zeta(n, h)?;
    let computed = operator_order(&g, &op, caps, threads)?;
    let expected = (h * (n - h)) as u64;
    Ok(ZetaRow {
        n,
        h,
        matches: computed == expected.into(),
        computed_order: computed.to_string(),
        expected_order: expected,
    })
}

/// Runs [`verify_zeta_conjecture`] for every `h` on every path size in
/// range.
pub fn zeta_survey(min_n: usize, max_n: usize, caps: &Caps, threads: usize) -> Result<ZetaOrderReport> {
    let mut rows = Vec::new();
    for n in min_n..=max_n {
        for h in 1..=n / 2 {
            rows.push(verify_zeta_conjecture(n, h, caps, threads)?);
        }
    }
    let all_match = rows.iter().all(|r| r.matches);
    let pass = rows.iter().filter(|r| r.h == 1).all(|r| r.matches);
    Ok(ZetaOrderReport {
        suite: "zeta-orders".into(),
        min_n,
        max_n,
        rows,
        all_match,
        pass,
    })
}

/// All `h` whose reordered toric promotion has the same orbit-size multiset
/// as the one reordered by `pi`. Conjugate operators share their cycle
/// type, so a conjugate representative must appear here.
pub fn match_conjugacy_class(
    g: &Graph,
    pi: &[usize],
    caps: &Caps,
    threads: usize,
) -> Result<Vec<usize>> {
    let n = g.n();
    let target: Census = census(g, &OperatorSpec::ToricPromotionPi(pi.to_vec()), caps, threads)?;
    let mut matches = Vec::new();
    for h in 1..=n / 2 {
        let candidate = census(g, &OperatorSpec::zeta(n, h)?, caps, threads)?;
        if candidate.orbit_sizes == target.orbit_sizes {
            matches.push(h);
        }
    }
    Ok(matches)
}

/// Scope of the operator-identity sweep: paths, stars, and seeded random
/// trees per size, exhaustive labelings up to a size and seeded samples
/// beyond.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityScope {
    pub min_n: usize,
    pub max_n: usize,
    pub exhaustive_max_n: usize,
    pub random_trees: usize,
    pub sample_labelings: usize,
    pub s_max: usize,
    pub seed: u64,
}

impl Default for IdentityScope {
    fn default() -> IdentityScope {
        IdentityScope {
            min_n: 2,
            max_n: 7,
            exhaustive_max_n: 5,
            random_trees: 20,
            sample_labelings: 1000,
            s_max: 3,
            seed: DEFAULT_SEED,
        }
    }
}

/// Report of the operator-identity sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub suite: String,
    pub scope: IdentityScope,
    pub graphs_checked: u64,
    pub labelings_checked: u64,
    pub verdicts: Vec<Verdict>,
    pub pass: bool,
}

impl std::fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "suite {} (n = {}..={}, exhaustive labelings to n = {}, seed {})",
            self.suite,
            self.scope.min_n,
            self.scope.max_n,
            self.scope.exhaustive_max_n,
            self.scope.seed
        )?;
        writeln!(
            f,
            "graphs: {}  labelings: {}",
            self.graphs_checked, self.labelings_checked
        )?;
        write_verdicts(f, &self.verdicts)
    }
}

const IDENTITY_CHECKS: [&str; 7] = [
    "toggle-shift-relation",
    "power-factoring",
    "slide-identity",
    "forest-slide-identity",
    "toggle-commutation",
    "identity-pi-reduction",
    "promotion-orientation",
];

/// Sweeps the operator identities over paths, stars, and random trees:
/// the shift/toggle commutation relation, the factored power evaluation,
/// the slide realizations of shift-after-promotion, commutation of the
/// shifted toggle prefixes with toric promotion, the identity-permutation
/// reduction, and orientation preservation under promotion.
pub fn verify_operator_identities(scope: &IdentityScope, caps: &Caps) -> Result<IdentityReport> {
    let mut tallies = vec![Tally::default(); IDENTITY_CHECKS.len()];
    let mut graphs_checked = 0u64;
    let mut labelings_checked = 0u64;

    for n in scope.min_n..=scope.max_n {
        if n > caps.max_census_n {
            return Err(crate::error::Error::CapExceeded {
                what: "identity sweep vertex count",
                requested: n,
                cap: caps.max_census_n,
            });
        }
        let mut graphs = vec![
            Graph::generate(GraphFamily::Path, n)?,
            Graph::generate(GraphFamily::Star, n)?,
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(scope.seed, n as u64));
        for _ in 0..scope.random_trees {
            let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
            graphs.push(Graph::from_prufer(&seq)?);
        }
        for (gi, g) in graphs.iter().enumerate() {
            graphs_checked += 1;
            let total = factorial(n);
            if n <= scope.exhaustive_max_n {
                for rank in 0..total {
                    let sigma = Labeling::from_rank(n, rank);
                    check_identities(g, &sigma, scope.s_max, &mut tallies)?;
                    labelings_checked += 1;
                }
            } else {
                let mut label_rng = ChaCha8Rng::seed_from_u64(stream_seed(
                    scope.seed,
                    (n as u64) << 32 | gi as u64,
                ));
                for _ in 0..scope.sample_labelings {
                    let sigma = Labeling::from_rank(n, label_rng.gen_range(0..total));
                    check_identities(g, &sigma, scope.s_max, &mut tallies)?;
                    labelings_checked += 1;
                }
            }
        }
    }

    let verdicts: Vec<Verdict> = tallies
        .iter()
        .zip(IDENTITY_CHECKS)
        .map(|(t, name)| t.verdict(name))
        .collect();
    let pass = verdicts.iter().all(|v| v.pass);
    Ok(IdentityReport {
        suite: "operator-identities".into(),
        scope: scope.clone(),
        graphs_checked,
        labelings_checked,
        verdicts,
        pass,
    })
}

fn tau_labels(i: usize, n: usize) -> (usize, usize) {
    if i == n {
        (n, 1)
    } else {
        (i, i + 1)
    }
}

/// The shifted toggle prefix: shift by `m`, then toggles `m, m-1, ..., 1`.
fn shifted_prefix(g: &Graph, sigma: &Labeling, m: usize) -> Result<Labeling> {
    let mut out = cyclic_shift(sigma, m as i64);
    for i in (1..=m).rev() {
        out = toggle(g, &out, i, i + 1)?;
    }
    Ok(out)
}

fn check_identities(
    g: &Graph,
    sigma: &Labeling,
    s_max: usize,
    tallies: &mut [Tally],
) -> Result<()> {
    let n = g.n();
    let cex = |detail: String| format!("graph={} labeling={sigma} {detail}", g.descriptor());

    // Shifting labels conjugates the indexed toggles.
    for i in 1..=n {
        let (a, b) = tau_labels(i, n);
        let (c, d) = tau_labels(i % n + 1, n);
        let lhs = cyclic_shift(&toggle(g, sigma, a, b)?, 1);
        let rhs = toggle(g, &cyclic_shift(sigma, 1), c, d)?;
        tallies[0].record(lhs == rhs, || cex(format!("toggle-index={i}")));
    }

    // Factored powers agree with iterated toric promotion.
    let max_reps = (n - 1) * s_max + (n - 2);
    let mut powers = Vec::with_capacity(max_reps + 1);
    powers.push(sigma.clone());
    for _ in 0..max_reps {
        let next = toric_promotion(g, powers.last().expect("nonempty"))?;
        powers.push(next);
    }
    for s in 0..=s_max {
        for k in 0..=n - 2 {
            let factored = factored_tpro_power(g, sigma, s, k)?;
            tallies[1].record(factored == powers[(n - 1) * s + k], || {
                cex(format!("s={s} k={k}"))
            });
        }
    }

    // One slide along the constructed path equals shift-after-promotion.
    let slide = jdt_slide(g, sigma, &cpro_path(g, sigma))?;
    tallies[2].record(slide == cyclic_shift(&promotion(g, sigma), 1), || {
        cex("single-step slide".into())
    });

    // On forests, one slide realizes any power, starting at label 1.
    if g.is_forest() {
        let mut power = sigma.clone();
        for steps in 0..=2 * n {
            let path = forest_power_path(g, sigma, steps)?;
            let ok = path[0] == sigma.vertex_with(1) && jdt_slide(g, sigma, &path)? == power;
            tallies[3].record(ok, || cex(format!("steps={steps}")));
            power = cyclic_shift(&promotion(g, &power), 1);
        }
    }

    // The shifted toggle prefixes commute with toric promotion.
    let tpro = toric_promotion(g, sigma)?;
    for m in 0..n {
        let lhs = shifted_prefix(g, &tpro, m)?;
        let rhs = toric_promotion(g, &shifted_prefix(g, sigma, m)?)?;
        tallies[4].record(lhs == rhs, || cex(format!("m={m}")));
    }

    // The identity permutation reduces the reordered operator to plain
    // toric promotion.
    let identity_pi: Vec<usize> = (1..=n).collect();
    tallies[5].record(toric_promotion_pi(g, &identity_pi, sigma)? == tpro, || {
        cex("identity permutation".into())
    });

    // Promotion fixes the induced orientation.
    tallies[6].record(
        induced_orientation(g, &promotion(g, sigma)) == induced_orientation(g, sigma),
        || cex("promotion orientation".into()),
    );
    Ok(())
}

/// Report of the flip-class / component structure sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FsStructureReport {
    pub suite: String,
    pub max_connected_n: usize,
    pub max_forest_n: usize,
    pub connected_graphs: u64,
    pub forests: u64,
    pub verdicts: Vec<Verdict>,
    pub pass: bool,
}

impl std::fmt::Display for FsStructureReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "suite {} (connected graphs to n = {}, forests to n = {})",
            self.suite, self.max_connected_n, self.max_forest_n
        )?;
        writeln!(
            f,
            "connected graphs: {}  forests: {}",
            self.connected_graphs, self.forests
        )?;
        write_verdicts(f, &self.verdicts)
    }
}

const FS_CHECKS: [&str; 4] = [
    "flip-class-coarsening",
    "component-correspondence",
    "component-cycle",
    "inversion-isomorphism",
];

/// Sweeps every connected graph and every forest up to the given sizes:
/// each flip class must split into exactly `nu` double-flip classes, the
/// toggle components must match the double-flip extension partition, and
/// the shift must chain the components of each flip class in one cycle.
/// Small inversion-isomorphism checks run alongside.
pub fn verify_fs_structure(
    max_connected_n: usize,
    max_forest_n: usize,
    caps: &Caps,
    threads: usize,
) -> Result<FsStructureReport> {
    let mut graphs: Vec<Graph> = Vec::new();
    let mut connected_graphs = 0u64;
    for n in 1..=max_connected_n {
        for g in Graph::enumerate_graphs(n) {
            if g.connected_components().blocks().len() == 1 {
                connected_graphs += 1;
                graphs.push(g);
            }
        }
    }
    let mut forests = 0u64;
    for n in 1..=max_forest_n {
        for g in Graph::enumerate_forests(n, caps)? {
            forests += 1;
            graphs.push(g);
        }
    }

    let outcomes = parallel_map(&graphs, threads, |_, g| check_fs_graph(g, caps));
    let mut tallies = vec![Tally::default(); FS_CHECKS.len()];
    for outcome in outcomes {
        for (into, tally) in tallies.iter_mut().zip(outcome?) {
            into.absorb(tally);
        }
    }

    // A handful of cross-pair inversion checks on small graphs.
    for n in 2..=4usize {
        let mut pool = vec![
            Graph::generate(GraphFamily::Path, n)?,
            Graph::generate(GraphFamily::Star, n)?,
            Graph::generate(GraphFamily::Complete, n)?,
        ];
        if n >= 3 {
            pool.push(Graph::generate(GraphFamily::Cycle, n)?);
        }
        for x in &pool {
            for y in &pool {
                let report = crate::fs::inversion_isomorphism_check(x, y, caps)?;
                tallies[3].record(report.pass, || {
                    format!(
                        "x={} y={} {}",
                        x.descriptor(),
                        y.descriptor(),
                        report.counterexample.clone().unwrap_or_default()
                    )
                });
            }
        }
    }

    let verdicts: Vec<Verdict> = tallies
        .iter()
        .zip(FS_CHECKS)
        .map(|(t, name)| t.verdict(name))
        .collect();
    let pass = verdicts.iter().all(|v| v.pass);
    Ok(FsStructureReport {
        suite: "fs-structure".into(),
        max_connected_n,
        max_forest_n,
        connected_graphs,
        forests,
        verdicts,
        pass,
    })
}

fn check_fs_graph(g: &Graph, caps: &Caps) -> Result<Vec<Tally>> {
    let mut tallies = vec![Tally::default(); FS_CHECKS.len()];

    // Each flip class splits into exactly nu double-flip classes.
    let flips = flip_classes(g, caps)?;
    let dfc = double_flip_classes(g, caps)?;
    let expected = nu(g);
    let mut per_flip = vec![0usize; flips.len()];
    let mut straddles = false;
    for class in dfc.classes() {
        let f = flips.class_of(&class[0]).expect("flip classes cover all");
        straddles |= class.iter().any(|alpha| flips.class_of(alpha) != Some(f));
        per_flip[f] += 1;
    }
    let ok = !straddles && per_flip.iter().all(|&count| count == expected);
    tallies[0].record(ok, || {
        format!(
            "graph={} per-flip-counts={:?} nu={}",
            g.descriptor(),
            per_flip,
            expected
        )
    });

    let correspondence = verify_component_correspondence(g, caps)?;
    tallies[1].record(correspondence.pass, || {
        format!(
            "graph={} {}",
            g.descriptor(),
            correspondence.mismatch.clone().unwrap_or_default()
        )
    });

    let cycle = verify_component_cycle(g, caps)?;
    tallies[2].record(cycle.pass, || {
        format!(
            "graph={} {}",
            g.descriptor(),
            cycle.detail.clone().unwrap_or_default()
        )
    });

    Ok(tallies)
}

/// Pretty JSON for any report.
pub fn report_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}
