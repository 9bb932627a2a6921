//! Exhaustive minimization over colorings of `Z_n`, zero-count searches,
//! and pattern-avoidance search over `[n]`.
//!
//! Cyclic minimization extends bit prefixes depth-first: a progression is
//! charged to the level at which its last element is assigned, so the
//! running count only grows along a path and "count >= incumbent" prunes
//! soundly. Canonical pruning additionally fixes the first bit by
//! conjugation and keeps only prefixes that can still extend to the
//! lexicographically least rotation, whenever the requested symmetry group
//! contains those generators. The plain sweep over all `2^n` colorings is
//! kept as an oracle; the two modes must agree and a test enforces it.
//!
//! Interval pattern search minimizes the number of increasing progressions
//! whose color tuple lies in a pattern set. Minima are computed for each
//! length in ascending order so that the exact minimum for shorter
//! intervals serves as an admissible suffix bound for longer ones. Long
//! runs honor node budgets and write resumable text checkpoints; a
//! budgeted result always carries the proved lower bound and an
//! `exhausted` flag so partial runs cannot be mistaken for proofs.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::apcount::{is_degenerate_step, ApFilter, PatternSet};
use crate::coloring::{Coloring, Group, SymmetryGroup};
use crate::error::Error;

/// Feasibility caps for the exhaustive cyclic searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub naive_cap: usize,
    pub pruned_cap: usize,
}

impl Default for SearchLimits {
    fn default() -> SearchLimits {
        SearchLimits {
            naive_cap: 16,
            pruned_cap: 24,
        }
    }
}

/// How to run the exhaustive cyclic minimization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Sweep all `2^n` colorings with bit-parallel counting.
    Naive,
    /// Depth-first prefix extension with incremental counts, best-so-far
    /// pruning, and symmetry filtering.
    CanonicalPruned,
}

/// Result of an exhaustive cyclic minimization.
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub n: usize,
    pub k: usize,
    pub filter: ApFilter,
    pub minimum_count: u64,
    /// Canonical forms of minimizing colorings, sorted; deduplicated under
    /// the report's symmetry group.
    pub witnesses: Vec<Coloring>,
    pub symmetry: SymmetryGroup,
    pub mode: SearchMode,
    pub nodes_explored: u64,
    pub exhaustive: bool,
}

const WITNESS_RAW_CAP: usize = 50_000;

/// Progressions grouped by the level at which their last element is
/// assigned.
fn completion_lists(n: usize, k: usize, filter: ApFilter) -> Vec<Vec<Vec<u8>>> {
    let mut lists: Vec<Vec<Vec<u8>>> = vec![Vec::new(); n];
    for d in 0..n {
        if matches!(filter, ApFilter::NonDegenerateOnly) && is_degenerate_step(n, d, k) {
            continue;
        }
        for a in 0..n {
            let terms: Vec<u8> = (0..k).map(|j| ((a + j * d) % n) as u8).collect();
            let level = *terms.iter().max().unwrap() as usize;
            lists[level].push(terms);
        }
    }
    lists
}

struct CyclicDfs<'a> {
    n: usize,
    aps: &'a [Vec<Vec<u8>>],
    bits: Vec<u8>,
    nodes: u64,
    conj_fix: bool,
    necklace: bool,
    best: u64,
    /// `None`: minimize. `Some(t)`: collect every leaf with count exactly t.
    target: Option<u64>,
    hits: Vec<Vec<u8>>,
}

impl<'a> CyclicDfs<'a> {
    fn new(n: usize, aps: &'a [Vec<Vec<u8>>], conj_fix: bool, necklace: bool) -> CyclicDfs<'a> {
        CyclicDfs {
            n,
            aps,
            bits: vec![0; n],
            nodes: 0,
            conj_fix,
            necklace,
            best: u64::MAX,
            target: None,
            hits: Vec::new(),
        }
    }

    fn step(&mut self, level: usize, cnt: u64, ties: &[u8]) {
        self.nodes += 1;
        if level == self.n {
            match self.target {
                None => self.best = self.best.min(cnt),
                Some(t) => {
                    if cnt == t && self.hits.len() < WITNESS_RAW_CAP {
                        self.hits.push(self.bits.clone());
                    }
                }
            }
            return;
        }
        let mut new_ties = [0u8; 64];
        for b in 0..=1u8 {
            if level == 0 && self.conj_fix && b == 1 {
                continue;
            }
            let mut nt_len = 0;
            if self.necklace {
                // A prefix survives only while no rotation of the final
                // string is already known to be lexicographically smaller.
                let mut branch_dead = false;
                for &s in ties {
                    let reference = self.bits[level - s as usize];
                    if b < reference {
                        branch_dead = true;
                        break;
                    }
                    if b == reference {
                        new_ties[nt_len] = s;
                        nt_len += 1;
                    }
                }
                if branch_dead {
                    continue;
                }
                if level > 0 {
                    if b < self.bits[0] {
                        continue;
                    }
                    if b == self.bits[0] {
                        new_ties[nt_len] = level as u8;
                        nt_len += 1;
                    }
                }
            }
            self.bits[level] = b;
            let mut c = cnt;
            for ap in &self.aps[level] {
                let first = self.bits[ap[0] as usize];
                if ap[1..].iter().all(|&p| self.bits[p as usize] == first) {
                    c += 1;
                }
            }
            let prune = match self.target {
                None => c >= self.best,
                Some(t) => c > t,
            };
            if !prune {
                self.step(level + 1, c, &new_ties[..nt_len]);
            }
        }
    }
}

fn rotate_mask(m: u64, s: usize, n: usize, full: u64) -> u64 {
    if s == 0 {
        return m;
    }
    ((m >> s) | (m << (n - s))) & full
}

fn mask_count(mask: u64, n: usize, k: usize, filter: ApFilter, shifts: &[Vec<usize>]) -> u64 {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let ones = mask;
    let zeros = !mask & full;
    let mut total = 0u64;
    for (d, shift_row) in shifts.iter().enumerate() {
        if matches!(filter, ApFilter::NonDegenerateOnly) && is_degenerate_step(n, d, k) {
            continue;
        }
        let mut acc1 = ones;
        let mut acc0 = zeros;
        for &s in shift_row {
            acc1 &= rotate_mask(ones, s, n, full);
            acc0 &= rotate_mask(zeros, s, n, full);
        }
        total += (acc1.count_ones() + acc0.count_ones()) as u64;
    }
    total
}

fn canonical_witnesses(raw: impl IntoIterator<Item = Vec<u8>>, n: usize, sym: &SymmetryGroup) -> Vec<Coloring> {
    let mut set = BTreeSet::new();
    for bits in raw {
        let c = Coloring::new(Group::Cyclic(n), bits).expect("search bits are valid");
        set.insert(c.canonical_form(sym).expect("cyclic"));
    }
    set.into_iter().collect()
}

/// Exact minimum of the monochromatic k-AP count over all `2^n` colorings
/// of `Z_n`, with canonical witnesses. Both modes return the same minimum;
/// `Naive` is the oracle and has the lower feasibility cap.
pub fn exhaustive_min_cyclic(
    n: usize,
    k: usize,
    sym: SymmetryGroup,
    mode: SearchMode,
    filter: ApFilter,
) -> Result<SearchReport, Error> {
    exhaustive_min_cyclic_with_limits(n, k, sym, mode, filter, &SearchLimits::default())
}

pub fn exhaustive_min_cyclic_with_limits(
    n: usize,
    k: usize,
    sym: SymmetryGroup,
    mode: SearchMode,
    filter: ApFilter,
    limits: &SearchLimits,
) -> Result<SearchReport, Error> {
    assert!(n >= 1 && k >= 2);
    let cap = match mode {
        SearchMode::Naive => limits.naive_cap,
        SearchMode::CanonicalPruned => limits.pruned_cap,
    };
    if n > cap.min(63) {
        return Err(Error::CapExceeded { n, cap: cap.min(63) });
    }

    let (minimum, raw_witnesses, nodes) = match mode {
        SearchMode::Naive => {
            let shifts: Vec<Vec<usize>> =
                (0..n).map(|d| (1..k).map(|j| (j * d) % n).collect()).collect();
            let mut min = u64::MAX;
            let mut raw: Vec<Vec<u8>> = Vec::new();
            for mask in 0u64..(1u64 << n) {
                let c = mask_count(mask, n, k, filter, &shifts);
                if c < min {
                    min = c;
                    raw.clear();
                }
                if c == min && raw.len() < WITNESS_RAW_CAP {
                    raw.push((0..n).map(|v| ((mask >> v) & 1) as u8).collect());
                }
            }
            (min, raw, 1u64 << n)
        }
        SearchMode::CanonicalPruned => {
            let aps = completion_lists(n, k, filter);
            let conj_fix = sym.conjugation;
            let necklace = sym.translations && n <= 64;
            let mut dfs = CyclicDfs::new(n, &aps, conj_fix, necklace);
            dfs.step(0, 0, &[]);
            let minimum = dfs.best;
            let phase1_nodes = dfs.nodes;
            let mut collect = CyclicDfs::new(n, &aps, conj_fix, necklace);
            collect.target = Some(minimum);
            collect.step(0, 0, &[]);
            (minimum, collect.hits, phase1_nodes + collect.nodes)
        }
    };

    Ok(SearchReport {
        n,
        k,
        filter,
        minimum_count: minimum,
        witnesses: canonical_witnesses(raw_witnesses, n, &sym),
        symmetry: sym,
        mode,
        nodes_explored: nodes,
        exhaustive: true,
    })
}

/// All colorings of `Z_n` (one canonical form per orbit of the symmetry
/// group) with zero non-degenerate monochromatic k-APs.
pub fn zero_mono_colorings(
    n: usize,
    k: usize,
    sym: SymmetryGroup,
) -> Result<Vec<Coloring>, Error> {
    zero_mono_colorings_with_limits(n, k, sym, &SearchLimits::default())
}

pub fn zero_mono_colorings_with_limits(
    n: usize,
    k: usize,
    sym: SymmetryGroup,
    limits: &SearchLimits,
) -> Result<Vec<Coloring>, Error> {
    assert!(n >= 1 && k >= 2);
    if n > limits.pruned_cap.min(63) {
        return Err(Error::CapExceeded {
            n,
            cap: limits.pruned_cap.min(63),
        });
    }
    let aps = completion_lists(n, k, ApFilter::NonDegenerateOnly);
    let mut dfs = CyclicDfs::new(n, &aps, sym.conjugation, sym.translations && n <= 64);
    dfs.target = Some(0);
    dfs.step(0, 0, &[]);
    Ok(canonical_witnesses(dfs.hits, n, &sym))
}

/// Outcome of a pattern search over `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternOutcome {
    /// A coloring with zero progressions in the pattern set, with witness.
    FreeColoringFound(Coloring),
    /// Proof that every coloring contains at least one such progression.
    NoneExists,
    /// The budget ran out before either could be established.
    Undetermined,
}

/// Result of a pattern-avoidance or pattern-minimization search.
#[derive(Clone, Debug)]
pub struct PatternSearchReport {
    pub n: usize,
    pub pattern_k: usize,
    pub outcome: PatternOutcome,
    /// Exact minimum of the pattern count, when proved.
    pub min_count: Option<u64>,
    /// Largest lower bound proved on the minimum.
    pub lower_bound_proved: Option<u64>,
    /// Count of the best coloring found (an upper bound on the minimum).
    pub upper_bound_found: Option<u64>,
    /// The best coloring found, when any full coloring was reached.
    pub best_witness: Option<Coloring>,
    pub budget_exhausted: bool,
    pub nodes_explored: u64,
}

/// Pattern progressions grouped by their final (0-based) position.
fn pattern_endings(n: usize, k: usize) -> Vec<Vec<Vec<u16>>> {
    let mut lists: Vec<Vec<Vec<u16>>> = vec![Vec::new(); n];
    for (p, list) in lists.iter_mut().enumerate() {
        let mut d = 1usize;
        while (k - 1) * d <= p {
            let start = p - (k - 1) * d;
            list.push((0..k).map(|j| (start + j * d) as u16).collect());
            d += 1;
        }
    }
    lists
}

fn set_is_conjugation_closed(set: &PatternSet) -> bool {
    set.iter().all(|p| {
        let conj: Vec<u8> = p.iter().map(|&b| 1 - b).collect();
        set.contains(&conj)
    })
}

/// Depth-first prefix extension over `[n_limit]` pruning any prefix whose
/// newest element completes a progression with pattern in the set. Returns
/// one report per `n <= n_limit`: a witness when a pattern-free coloring
/// exists, otherwise proof that none does. Every report is exhaustive.
pub fn pattern_free_max_interval(
    set: &PatternSet,
    n_limit: usize,
) -> Result<Vec<PatternSearchReport>, Error> {
    assert!(n_limit >= 1);
    let k = set.k();
    let lut = set.lookup();
    let conj_fix = set_is_conjugation_closed(set);
    let endings = pattern_endings(n_limit, k);

    struct FreeDfs<'a> {
        n: usize,
        lut: &'a [bool],
        endings: &'a [Vec<Vec<u16>>],
        conj_fix: bool,
        bits: Vec<u8>,
        witnesses: Vec<Option<Vec<u8>>>,
        nodes: u64,
        done: bool,
    }

    impl FreeDfs<'_> {
        fn step(&mut self, level: usize) {
            if self.done {
                return;
            }
            self.nodes += 1;
            for b in 0..=1u8 {
                if level == 0 && self.conj_fix && b == 1 {
                    continue;
                }
                self.bits[level] = b;
                let blocked = self.endings[level].iter().any(|ap| {
                    let idx = ap
                        .iter()
                        .fold(0usize, |acc, &p| (acc << 1) | self.bits[p as usize] as usize);
                    self.lut[idx]
                });
                if blocked {
                    continue;
                }
                if self.witnesses[level].is_none() {
                    self.witnesses[level] = Some(self.bits[..=level].to_vec());
                }
                if level + 1 == self.n {
                    self.done = true;
                    return;
                }
                self.step(level + 1);
                if self.done {
                    return;
                }
            }
        }
    }

    let mut dfs = FreeDfs {
        n: n_limit,
        lut: &lut,
        endings: &endings,
        conj_fix,
        bits: vec![0; n_limit],
        witnesses: vec![None; n_limit],
        nodes: 0,
        done: false,
    };
    dfs.step(0);

    let reports = (1..=n_limit)
        .map(|n| {
            let witness = dfs.witnesses[n - 1].clone();
            match witness {
                Some(bits) => {
                    let coloring = Coloring::new(Group::Interval(n), bits).expect("valid bits");
                    PatternSearchReport {
                        n,
                        pattern_k: k,
                        outcome: PatternOutcome::FreeColoringFound(coloring.clone()),
                        min_count: Some(0),
                        lower_bound_proved: Some(0),
                        upper_bound_found: Some(0),
                        best_witness: Some(coloring),
                        budget_exhausted: false,
                        nodes_explored: dfs.nodes,
                    }
                }
                None => PatternSearchReport {
                    n,
                    pattern_k: k,
                    outcome: PatternOutcome::NoneExists,
                    min_count: None,
                    lower_bound_proved: Some(1),
                    upper_bound_found: None,
                    best_witness: None,
                    budget_exhausted: false,
                    nodes_explored: dfs.nodes,
                },
            }
        })
        .collect();
    Ok(reports)
}

/// Tuning for the pattern-minimization search.
#[derive(Clone, Debug)]
pub struct PatternSearchOptions {
    /// Node budget across the whole run (`None` = unbounded).
    pub budget: Option<u64>,
    /// Worker threads for the branch-and-bound of each interval length.
    /// Budgeted runs fall back to one worker so that partial results stay
    /// reproducible.
    pub workers: usize,
    /// Resumable checkpoint file.
    pub checkpoint: Option<PathBuf>,
    /// Prefix depth at which subtrees become independent tasks (the
    /// checkpointing and parallelism granularity).
    pub task_depth: usize,
}

impl Default for PatternSearchOptions {
    fn default() -> PatternSearchOptions {
        PatternSearchOptions {
            budget: None,
            workers: 1,
            checkpoint: None,
            task_depth: 12,
        }
    }
}

fn pattern_set_signature(set: &PatternSet) -> String {
    let mut sig = String::new();
    for p in set.iter() {
        for &b in p {
            let _ = write!(sig, "{b}");
        }
        sig.push(',');
    }
    sig.pop();
    sig
}

#[derive(Default)]
struct CheckpointState {
    results: Vec<(usize, u64, Vec<u8>)>,
    best: Option<(usize, u64, Vec<u8>)>,
    done: BTreeSet<Vec<u8>>,
    done_depth: Option<usize>,
    done_n: Option<usize>,
}

fn parse_bits(s: &str) -> Result<Vec<u8>, Error> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0u8),
            '1' => Ok(1u8),
            other => Err(Error::Checkpoint(format!("bad bit {other:?}"))),
        })
        .collect()
}

fn read_checkpoint(path: &Path, set: &PatternSet, n: usize) -> Result<CheckpointState, Error> {
    let mut state = CheckpointState::default();
    if !path.exists() {
        return Ok(state);
    }
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    match lines.next() {
        Some("monoap-pattern-checkpoint v1") => {}
        _ => return Err(Error::Checkpoint("missing header".into())),
    }
    for line in lines {
        let mut fields = line.split_whitespace();
        match fields.next() {
            Some("params") => {
                let want = format!("n={n} k={} patterns={}", set.k(), pattern_set_signature(set));
                let got = line.trim_start_matches("params").trim();
                if got != want {
                    return Err(Error::Checkpoint(format!(
                        "parameter mismatch: checkpoint has {got:?}, run wants {want:?}"
                    )));
                }
            }
            Some("result") => {
                let m: usize = fields
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Checkpoint("bad result line".into()))?;
                let min: u64 = fields
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Checkpoint("bad result line".into()))?;
                let bits = parse_bits(
                    fields
                        .next()
                        .ok_or_else(|| Error::Checkpoint("bad result line".into()))?,
                )?;
                state.results.push((m, min, bits));
            }
            Some("best") => {
                let m: usize = fields
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Checkpoint("bad best line".into()))?;
                let value: u64 = fields
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Checkpoint("bad best line".into()))?;
                let bits = parse_bits(
                    fields
                        .next()
                        .ok_or_else(|| Error::Checkpoint("bad best line".into()))?,
                )?;
                state.best = Some((m, value, bits));
            }
            Some("done") => {
                let m: usize = fields
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Checkpoint("bad done line".into()))?;
                let depth: usize = fields
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Checkpoint("bad done line".into()))?;
                let bits = parse_bits(
                    fields
                        .next()
                        .ok_or_else(|| Error::Checkpoint("bad done line".into()))?,
                )?;
                state.done_n = Some(m);
                state.done_depth = Some(depth);
                state.done.insert(bits);
            }
            Some(_) | None => {}
        }
    }
    Ok(state)
}

struct CheckpointWriter {
    file: Mutex<fs::File>,
}

impl CheckpointWriter {
    fn create(path: &Path, set: &PatternSet, n: usize, state: &CheckpointState) -> Result<CheckpointWriter, Error> {
        // Rewrite the file from the parsed state so stale frontier records
        // from other lengths do not accumulate.
        let mut file = fs::File::create(path)?;
        writeln!(file, "monoap-pattern-checkpoint v1")?;
        writeln!(file, "params n={n} k={} patterns={}", set.k(), pattern_set_signature(set))?;
        for (m, min, bits) in &state.results {
            writeln!(file, "result {m} {min} {}", bits_to_string(bits))?;
        }
        if let Some((m, value, bits)) = &state.best {
            writeln!(file, "best {m} {value} {}", bits_to_string(bits))?;
        }
        if let (Some(m), Some(depth)) = (state.done_n, state.done_depth) {
            for bits in &state.done {
                writeln!(file, "done {m} {depth} {}", bits_to_string(bits))?;
            }
        }
        file.flush()?;
        Ok(CheckpointWriter { file: Mutex::new(file) })
    }

    fn record(&self, line: &str) {
        let mut file = self.file.lock().expect("checkpoint lock");
        let _ = writeln!(file, "{line}");
        let _ = file.flush();
    }
}

fn bits_to_string(bits: &[u8]) -> String {
    bits.iter().map(|&b| char::from(b'0' + b)).collect()
}

/// Shared state of one branch-and-bound run.
struct MinPatternShared<'a> {
    lut: &'a [bool],
    endings: &'a [Vec<Vec<u16>>],
    suffix_min: &'a [u64],
    m: usize,
    conj_closed: bool,
    best: AtomicU64,
    incumbents: Mutex<Vec<(u64, Vec<u8>)>>,
    nodes: AtomicU64,
    budget: Option<u64>,
    aborted: AtomicU64, // 0 = running, 1 = budget exhausted
    open_lb: AtomicU64,
}

impl<'a> MinPatternShared<'a> {
    fn delta(&self, bits: &[u8], level: usize) -> u64 {
        self.endings[level]
            .iter()
            .filter(|ap| {
                let idx = ap
                    .iter()
                    .fold(0usize, |acc, &p| (acc << 1) | bits[p as usize] as usize);
                self.lut[idx]
            })
            .count() as u64
    }

    fn record_leaf(&self, cnt: u64, bits: &[u8]) {
        let mut best = self.best.load(Ordering::Relaxed);
        while cnt < best {
            match self
                .best
                .compare_exchange(best, cnt, Ordering::Relaxed, Ordering::Relaxed)
            {
                Ok(_) => break,
                Err(cur) => best = cur,
            }
        }
        if cnt <= self.best.load(Ordering::Relaxed) {
            let mut incumbents = self.incumbents.lock().expect("incumbent lock");
            incumbents.push((cnt, bits.to_vec()));
        }
    }

    fn note_open(&self, bound: u64) {
        self.open_lb.fetch_min(bound, Ordering::Relaxed);
    }

    fn dfs(&self, bits: &mut Vec<u8>, level: usize, cnt: u64) {
        if self.aborted.load(Ordering::Relaxed) != 0 {
            self.note_open(cnt + self.suffix_min[self.m - level]);
            return;
        }
        let nodes = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(budget) = self.budget {
            if nodes > budget {
                self.aborted.store(1, Ordering::Relaxed);
                self.note_open(cnt + self.suffix_min[self.m - level]);
                return;
            }
        }
        if level == self.m {
            self.record_leaf(cnt, bits);
            return;
        }
        for b in 0..=1u8 {
            if level == 0 && self.conj_closed && b == 1 {
                continue;
            }
            bits[level] = b;
            let c = cnt + self.delta(bits, level);
            let bound = c + self.suffix_min[self.m - level - 1];
            if bound < self.best.load(Ordering::Relaxed) {
                self.dfs(bits, level + 1, c);
                if self.aborted.load(Ordering::Relaxed) != 0 {
                    // The untried sibling branch is covered by the parent
                    // bound recorded on the way out.
                    self.note_open(cnt + self.suffix_min[self.m - level]);
                    return;
                }
            }
        }
    }

    fn new(
        lut: &'a [bool],
        endings: &'a [Vec<Vec<u16>>],
        suffix_min: &'a [u64],
        m: usize,
        budget: Option<u64>,
        conj_closed: bool,
    ) -> MinPatternShared<'a> {
        MinPatternShared {
            lut,
            endings,
            suffix_min,
            m,
            conj_closed,
            best: AtomicU64::new(u64::MAX),
            incumbents: Mutex::new(Vec::new()),
            nodes: AtomicU64::new(0),
            budget,
            aborted: AtomicU64::new(0),
            open_lb: AtomicU64::new(u64::MAX),
        }
    }
}

/// Minimum over all 2-colorings of `[n]` of the number of increasing
/// progressions with pattern in the set. See [`min_pattern_profile`].
pub fn min_pattern_count_interval(
    n: usize,
    set: &PatternSet,
    opts: &PatternSearchOptions,
) -> Result<PatternSearchReport, Error> {
    let mut profile = min_pattern_profile(n, set, opts)?;
    Ok(profile.pop().expect("profile is nonempty"))
}

/// Exact minima of the pattern count for every length `1..=n_max`,
/// computed in ascending order so each result serves as the admissible
/// suffix bound of the longer searches. Honors budgets and checkpoints;
/// a budget-exhausted tail is reported as undetermined with the proved
/// lower bound.
pub fn min_pattern_profile(
    n_max: usize,
    set: &PatternSet,
    opts: &PatternSearchOptions,
) -> Result<Vec<PatternSearchReport>, Error> {
    assert!(n_max >= 1);
    let k = set.k();
    let lut = set.lookup();
    let conj_closed = set_is_conjugation_closed(set);
    let endings_full = pattern_endings(n_max, k);
    let workers = if opts.budget.is_some() { 1 } else { opts.workers.max(1) };

    let mut checkpoint_state = match &opts.checkpoint {
        Some(path) => read_checkpoint(path, set, n_max)?,
        None => CheckpointState::default(),
    };
    checkpoint_state.results.sort();
    checkpoint_state.results.dedup();
    let writer = match &opts.checkpoint {
        Some(path) => Some(CheckpointWriter::create(path, set, n_max, &checkpoint_state)?),
        None => None,
    };

    // suffix_min[m] = exact minimum for [m]; grows as lengths complete.
    let mut suffix_min: Vec<u64> = vec![0];
    let mut reports: Vec<PatternSearchReport> = Vec::new();
    let mut nodes_total = 0u64;
    let mut exhausted = false;
    let mut prev_witness: Option<Vec<u8>> = None;

    for m in 1..=n_max {
        if exhausted {
            // Budget is gone: everything longer is undetermined, but
            // monotonicity keeps the last proved bound valid.
            let lb = *suffix_min.last().unwrap();
            reports.push(PatternSearchReport {
                n: m,
                pattern_k: k,
                outcome: PatternOutcome::Undetermined,
                min_count: None,
                lower_bound_proved: Some(lb),
                upper_bound_found: None,
                best_witness: None,
                budget_exhausted: true,
                nodes_explored: 0,
            });
            continue;
        }

        // Replay a finished length from the checkpoint.
        if let Some((_, min, bits)) = checkpoint_state
            .results
            .iter()
            .find(|(rm, _, _)| *rm == m)
            .cloned()
        {
            suffix_min.push(min);
            prev_witness = Some(bits.clone());
            reports.push(report_for_exact(m, k, min, bits, 0));
            continue;
        }

        let remaining_budget = opts.budget.map(|b| b.saturating_sub(nodes_total));
        if remaining_budget == Some(0) {
            exhausted = true;
            let lb = *suffix_min.last().unwrap();
            reports.push(PatternSearchReport {
                n: m,
                pattern_k: k,
                outcome: PatternOutcome::Undetermined,
                min_count: None,
                lower_bound_proved: Some(lb),
                upper_bound_found: None,
                best_witness: None,
                budget_exhausted: true,
                nodes_explored: 0,
            });
            continue;
        }

        let endings = &endings_full[..m];
        let shared = MinPatternShared::new(&lut, endings, &suffix_min, m, remaining_budget, conj_closed);

        // Warm start: extend the previous witness by both bits.
        if let Some(prev) = &prev_witness {
            for b in [0u8, 1] {
                let mut bits = prev.clone();
                bits.push(b);
                let cnt = count_patterns_direct(&bits, k, &lut);
                shared.record_leaf(cnt, &bits);
            }
        }

        let resume_done = if checkpoint_state.done_n == Some(m) {
            checkpoint_state.done.clone()
        } else {
            BTreeSet::new()
        };
        let resume_depth = if checkpoint_state.done_n == Some(m) {
            checkpoint_state.done_depth
        } else {
            None
        };
        if let Some((bm, value, bits)) = &checkpoint_state.best {
            if *bm == m {
                shared.record_leaf(*value, bits);
            }
        }

        run_min_pattern_search(
            &shared,
            workers,
            opts.task_depth,
            writer.as_ref(),
            m,
            &resume_done,
            resume_depth,
        );

        let m_nodes = shared.nodes.load(Ordering::Relaxed);
        nodes_total += m_nodes;
        let best = shared.best.load(Ordering::Relaxed);
        let aborted = shared.aborted.load(Ordering::Relaxed) != 0;
        let incumbents = shared.incumbents.into_inner().expect("incumbent lock");
        let best_bits = incumbents
            .iter()
            .filter(|(v, _)| *v == best)
            .map(|(_, bits)| bits.clone())
            .min();

        if aborted {
            exhausted = true;
            let open = shared.open_lb.load(Ordering::Relaxed);
            let lb = open.min(best).max(*suffix_min.last().unwrap());
            reports.push(PatternSearchReport {
                n: m,
                pattern_k: k,
                outcome: PatternOutcome::Undetermined,
                min_count: None,
                lower_bound_proved: Some(lb),
                upper_bound_found: (best != u64::MAX).then_some(best),
                best_witness: best_bits.map(|bits| {
                    Coloring::new(Group::Interval(m), bits).expect("valid bits")
                }),
                budget_exhausted: true,
                nodes_explored: m_nodes,
            });
            continue;
        }

        let bits = best_bits.expect("exhaustive search reached a leaf");
        if let Some(w) = &writer {
            w.record(&format!("result {m} {best} {}", bits_to_string(&bits)));
        }
        suffix_min.push(best);
        prev_witness = Some(bits.clone());
        reports.push(report_for_exact(m, k, best, bits, m_nodes));
    }

    Ok(reports)
}

fn report_for_exact(m: usize, k: usize, min: u64, bits: Vec<u8>, nodes: u64) -> PatternSearchReport {
    let witness = Coloring::new(Group::Interval(m), bits).expect("valid bits");
    PatternSearchReport {
        n: m,
        pattern_k: k,
        outcome: if min == 0 {
            PatternOutcome::FreeColoringFound(witness.clone())
        } else {
            PatternOutcome::NoneExists
        },
        min_count: Some(min),
        lower_bound_proved: Some(min),
        upper_bound_found: Some(min),
        best_witness: Some(witness),
        budget_exhausted: false,
        nodes_explored: nodes,
    }
}

fn count_patterns_direct(bits: &[u8], k: usize, lut: &[bool]) -> u64 {
    let n = bits.len();
    if k > n {
        return 0;
    }
    let mut total = 0u64;
    for d in 1..=n {
        if (k - 1) * d > n - 1 {
            break;
        }
        for a in 0..n - (k - 1) * d {
            let idx = (0..k).fold(0usize, |acc, j| (acc << 1) | bits[a + j * d] as usize);
            if lut[idx] {
                total += 1;
            }
        }
    }
    total
}

fn run_min_pattern_search(
    shared: &MinPatternShared<'_>,
    workers: usize,
    task_depth: usize,
    writer: Option<&CheckpointWriter>,
    m: usize,
    resume_done: &BTreeSet<Vec<u8>>,
    resume_depth: Option<usize>,
) {
    let use_tasks = (workers > 1 || writer.is_some()) && m > task_depth + 4;
    if !use_tasks {
        let mut bits = vec![0u8; m];
        shared.dfs(&mut bits, 0, 0);
        return;
    }

    let depth = resume_depth.unwrap_or(task_depth).min(m - 1);

    // Enumerate surviving prefixes at the task depth.
    let mut tasks: Vec<(Vec<u8>, u64)> = Vec::new();
    {
        let mut bits = vec![0u8; m];
        enumerate_tasks(shared, &mut bits, 0, 0, depth, &mut tasks);
    }

    let process = |task: &(Vec<u8>, u64)| {
        if shared.aborted.load(Ordering::Relaxed) != 0 {
            return;
        }
        let (prefix, cnt) = task;
        if resume_done.contains(prefix) {
            return;
        }
        let mut bits = vec![0u8; m];
        bits[..depth].copy_from_slice(prefix);
        if *cnt + shared.suffix_min[m - depth] < shared.best.load(Ordering::Relaxed) {
            shared.dfs(&mut bits, depth, *cnt);
        }
        if shared.aborted.load(Ordering::Relaxed) == 0 {
            if let Some(w) = writer {
                // Record the incumbent before marking the subtree done, so
                // an interrupted run can only lose work, never a bound.
                let best = shared.best.load(Ordering::Relaxed);
                if best != u64::MAX {
                    let incumbents = shared.incumbents.lock().expect("incumbent lock");
                    if let Some((_, bits)) = incumbents
                        .iter()
                        .filter(|(v, _)| *v == best)
                        .min_by_key(|(_, b)| b.clone())
                    {
                        w.record(&format!("best {m} {best} {}", bits_to_string(bits)));
                    }
                }
                w.record(&format!("done {m} {depth} {}", bits_to_string(prefix)));
            }
        }
    };

    if workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("worker pool");
        pool.install(|| {
            use rayon::prelude::*;
            tasks.par_iter().for_each(process);
        });
    } else {
        tasks.iter().for_each(process);
    }
}

fn enumerate_tasks(
    shared: &MinPatternShared<'_>,
    bits: &mut Vec<u8>,
    level: usize,
    cnt: u64,
    depth: usize,
    tasks: &mut Vec<(Vec<u8>, u64)>,
) {
    if level == depth {
        tasks.push((bits[..depth].to_vec(), cnt));
        return;
    }
    for b in 0..=1u8 {
        if level == 0 && shared.conj_closed && b == 1 {
            continue;
        }
        bits[level] = b;
        let c = cnt + shared.delta(bits, level);
        if c + shared.suffix_min[shared.m - level - 1] < shared.best.load(Ordering::Relaxed) {
            enumerate_tasks(shared, bits, level + 1, c, depth, tasks);
        }
    }
}
