//! Exhaustive enumeration, counting and uniqueness testing of valid tilings
//! of finite windows.
//!
//! `enumerate` runs a backtracking search with most-constrained-cell-first
//! variable selection and arc-consistent domain propagation over the four
//! edge relations. `count_transfer_matrix` counts by dynamic programming
//! over rows and serves as an independent oracle for the search: on any
//! window the two must agree exactly.
//!
//! Window boundaries are free by default: a window result is a statement
//! about finite patches only, and is a necessary condition for whole-plane
//! behaviour, never a sufficient one.

use crate::tile::{BoundaryConstraint, Patch, TileError, TileSet};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

pub const DEFAULT_SOLUTION_LIMIT: usize = 1_000_000;
const DEFAULT_NODE_BUDGET: u64 = 500_000_000;
const DEFAULT_STATE_BUDGET: usize = 4_000_000;

/// Global search budget, overridable through `TILINGFORGE_BUDGET`.
pub fn node_budget() -> u64 {
    std::env::var("TILINGFORGE_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum SolveError {
    #[error("pinned cells ({0},{1}) and ({2},{3}) violate adjacency")]
    InfeasiblePin(u32, u32, u32, u32),
    #[error("pin outside window at ({0},{1})")]
    PinOutsideWindow(u32, u32),
    #[error("tile error: {0}")]
    Tile(#[from] TileError),
    #[error("transfer-matrix state space too large: {0} states")]
    StateSpaceTooLarge(usize),
    #[error("search budget exceeded")]
    BudgetExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    None,
    Unique,
    Multiple,
    LimitReached,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub solutions: Vec<Patch>,
}

/// A window-solving request. `pins` fixes single cells; `domains` optionally
/// restricts cells to a candidate set (used by the verification suites to
/// pin "any tile with feature F" without naming one tile).
#[derive(Clone)]
pub struct SolveRequest<'a> {
    pub tileset: &'a TileSet,
    pub width: u32,
    pub height: u32,
    pub pins: Patch,
    pub boundary: Option<BoundaryConstraint>,
    pub domains: Option<HashMap<(u32, u32), Vec<u32>>>,
    pub limit: Option<usize>,
    pub jobs: usize,
    pub node_budget: Option<u64>,
}

impl<'a> SolveRequest<'a> {
    pub fn new(tileset: &'a TileSet, width: u32, height: u32) -> Self {
        SolveRequest {
            tileset,
            width,
            height,
            pins: Patch::new((0, 0), width, height),
            boundary: None,
            domains: None,
            limit: Some(DEFAULT_SOLUTION_LIMIT),
            jobs: 1,
            node_budget: None,
        }
    }

    pub fn unlimited(mut self) -> Self {
        self.limit = None;
        self
    }
}

/// Fixed-width bitset over tile indices.
#[derive(Clone, PartialEq, Eq)]
struct Domain {
    words: Vec<u64>,
}

impl Domain {
    fn full(n: usize) -> Domain {
        let mut words = vec![u64::MAX; (n + 63) / 64];
        let rem = n % 64;
        if rem != 0 {
            *words.last_mut().unwrap() = (1u64 << rem) - 1;
        }
        Domain { words }
    }

    fn empty(n: usize) -> Domain {
        Domain {
            words: vec![0; (n + 63) / 64],
        }
    }

    fn singleton(n: usize, i: usize) -> Domain {
        let mut d = Domain::empty(n);
        d.insert(i);
        d
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    fn intersect(&mut self, other: &Domain) -> bool {
        let mut changed = false;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            let v = *a & *b;
            if v != *a {
                changed = true;
                *a = v;
            }
        }
        changed
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

/// Per-tileset compatibility tables: for every color, the set of tiles
/// showing that color on a given side.
struct Tables {
    n: usize,
    north: Vec<u32>,
    east: Vec<u32>,
    south: Vec<u32>,
    west: Vec<u32>,
    by_north: HashMap<u32, Domain>,
    by_east: HashMap<u32, Domain>,
    by_south: HashMap<u32, Domain>,
    by_west: HashMap<u32, Domain>,
    ids: Vec<u32>,
}

impl Tables {
    fn new(ts: &TileSet) -> Tables {
        let n = ts.len();
        let mut t = Tables {
            n,
            north: Vec::with_capacity(n),
            east: Vec::with_capacity(n),
            south: Vec::with_capacity(n),
            west: Vec::with_capacity(n),
            by_north: HashMap::new(),
            by_east: HashMap::new(),
            by_south: HashMap::new(),
            by_west: HashMap::new(),
            ids: Vec::with_capacity(n),
        };
        for (i, tile) in ts.tiles().iter().enumerate() {
            t.north.push(tile.north.0);
            t.east.push(tile.east.0);
            t.south.push(tile.south.0);
            t.west.push(tile.west.0);
            t.ids.push(tile.id);
            t.by_north
                .entry(tile.north.0)
                .or_insert_with(|| Domain::empty(n))
                .insert(i);
            t.by_east
                .entry(tile.east.0)
                .or_insert_with(|| Domain::empty(n))
                .insert(i);
            t.by_south
                .entry(tile.south.0)
                .or_insert_with(|| Domain::empty(n))
                .insert(i);
            t.by_west
                .entry(tile.west.0)
                .or_insert_with(|| Domain::empty(n))
                .insert(i);
        }
        t
    }

    /// Tiles whose `side` color appears on the opposite side of some tile in
    /// `dom`. Used to filter a neighbor's domain.
    fn support(&self, dom: &Domain, from: &[u32], index: &HashMap<u32, Domain>) -> Domain {
        let mut seen: Vec<u32> = dom.iter().map(|i| from[i]).collect();
        seen.sort_unstable();
        seen.dedup();
        let mut out = Domain::empty(self.n);
        for c in seen {
            if let Some(d) = index.get(&c) {
                for (a, b) in out.words.iter_mut().zip(&d.words) {
                    *a |= *b;
                }
            }
        }
        out
    }
}

struct Searcher<'a> {
    tables: &'a Tables,
    width: usize,
    height: usize,
    limit: usize,
    budget: u64,
    nodes: &'a AtomicU64,
    solutions: Vec<Vec<u32>>,
    budget_hit: bool,
}

impl<'a> Searcher<'a> {
    fn idx(&self, x: usize, y: usize) -> usize {
        y * self.width + x
    }

    /// Arc-consistency fixpoint from a seed set of changed cells.
    /// Returns false on a wiped-out domain.
    fn propagate(&self, doms: &mut [Domain], seed: &[usize]) -> bool {
        let mut queue: Vec<usize> = seed.to_vec();
        let mut queued = vec![false; doms.len()];
        for &c in seed {
            queued[c] = true;
        }
        while let Some(c) = queue.pop() {
            queued[c] = false;
            if doms[c].is_empty() {
                return false;
            }
            let x = c % self.width;
            let y = c / self.width;
            let mut neighbors: [(usize, u8); 4] = [(0, 0); 4];
            let mut count = 0;
            if x + 1 < self.width {
                neighbors[count] = (self.idx(x + 1, y), 0);
                count += 1;
            }
            if x > 0 {
                neighbors[count] = (self.idx(x - 1, y), 1);
                count += 1;
            }
            if y + 1 < self.height {
                neighbors[count] = (self.idx(x, y + 1), 2);
                count += 1;
            }
            if y > 0 {
                neighbors[count] = (self.idx(x, y - 1), 3);
                count += 1;
            }
            for &(nc, dir) in &neighbors[..count] {
                let allowed = match dir {
                    // east neighbor: its west must appear among our easts
                    0 => self
                        .tables
                        .support(&doms[c], &self.tables.east, &self.tables.by_west),
                    1 => self
                        .tables
                        .support(&doms[c], &self.tables.west, &self.tables.by_east),
                    2 => self
                        .tables
                        .support(&doms[c], &self.tables.north, &self.tables.by_south),
                    _ => self
                        .tables
                        .support(&doms[c], &self.tables.south, &self.tables.by_north),
                };
                if doms[nc].intersect(&allowed) {
                    if doms[nc].is_empty() {
                        return false;
                    }
                    if !queued[nc] {
                        queued[nc] = true;
                        queue.push(nc);
                    }
                }
            }
        }
        true
    }

    fn pick_cell(&self, doms: &[Domain]) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (i, d) in doms.iter().enumerate() {
            let c = d.count();
            if c > 1 {
                match best {
                    Some((_, bc)) if bc <= c => {}
                    _ => best = Some((i, c)),
                }
                if c == 2 {
                    break;
                }
            }
        }
        best
    }

    fn search(&mut self, doms: &mut Vec<Domain>) -> bool {
        if self.solutions.len() >= self.limit {
            return true;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.budget_hit = true;
            return true;
        }
        match self.pick_cell(doms) {
            None => {
                let sol: Vec<u32> = doms
                    .iter()
                    .map(|d| self.tables.ids[d.first().unwrap()])
                    .collect();
                self.solutions.push(sol);
                self.solutions.len() >= self.limit
            }
            Some((cell, _)) => {
                let candidates: Vec<usize> = doms[cell].iter().collect();
                for t in candidates {
                    let mut next = doms.clone();
                    next[cell] = Domain::singleton(self.tables.n, t);
                    if self.propagate(&mut next, &[cell]) && self.search(&mut next) {
                        return true;
                    }
                    if self.budget_hit {
                        return true;
                    }
                }
                false
            }
        }
    }
}

fn initial_domains(req: &SolveRequest) -> Result<Vec<Domain>, SolveError> {
    let ts = req.tileset;
    let n = ts.len();
    let w = req.width as usize;
    let h = req.height as usize;
    let mut doms = vec![Domain::full(n); w * h];

    if let Some(b) = &req.boundary {
        b.check_dims(req.width, req.height)?;
        let filter = |doms: &mut Vec<Domain>, cell: usize, side: &[u32], color: u32| {
            let mut keep = Domain::empty(n);
            for i in 0..n {
                if side[i] == color {
                    keep.insert(i);
                }
            }
            doms[cell].intersect(&keep);
        };
        let tables_side = |sel: u8| -> Vec<u32> {
            ts.tiles()
                .iter()
                .map(|t| match sel {
                    0 => t.north.0,
                    1 => t.east.0,
                    2 => t.south.0,
                    _ => t.west.0,
                })
                .collect()
        };
        let norths = tables_side(0);
        let easts = tables_side(1);
        let souths = tables_side(2);
        let wests = tables_side(3);
        if let Some(v) = &b.south {
            for x in 0..w {
                filter(&mut doms, x, &souths, v[x].0);
            }
        }
        if let Some(v) = &b.north {
            for x in 0..w {
                filter(&mut doms, (h - 1) * w + x, &norths, v[x].0);
            }
        }
        if let Some(v) = &b.west {
            for y in 0..h {
                filter(&mut doms, y * w, &wests, v[y].0);
            }
        }
        if let Some(v) = &b.east {
            for y in 0..h {
                filter(&mut doms, y * w + (w - 1), &easts, v[y].0);
            }
        }
    }

    if let Some(map) = &req.domains {
        for (&(x, y), ids) in map {
            if x >= req.width || y >= req.height {
                return Err(SolveError::PinOutsideWindow(x, y));
            }
            let mut keep = Domain::empty(n);
            for id in ids {
                let i = ts.index_of(*id).ok_or(TileError::UnknownTileId(*id))?;
                keep.insert(i);
            }
            doms[(y as usize) * w + x as usize].intersect(&keep);
        }
    }

    // Pins: check pairwise adjacency of pinned cells directly, then narrow.
    for (&(x, y), &id) in &req.pins.cells {
        if x >= req.width || y >= req.height {
            return Err(SolveError::PinOutsideWindow(x, y));
        }
        let t = ts.get(id).ok_or(TileError::UnknownTileId(id))?;
        if let Some(rid) = req.pins.get(x + 1, y) {
            let r = ts.get(rid).ok_or(TileError::UnknownTileId(rid))?;
            if t.east != r.west {
                return Err(SolveError::InfeasiblePin(x, y, x + 1, y));
            }
        }
        if let Some(uid) = req.pins.get(x, y + 1) {
            let u = ts.get(uid).ok_or(TileError::UnknownTileId(uid))?;
            if t.north != u.south {
                return Err(SolveError::InfeasiblePin(x, y, x, y + 1));
            }
        }
        let i = ts.index_of(id).unwrap();
        let cell = (y as usize) * w + x as usize;
        if !doms[cell].contains(i) {
            doms[cell] = Domain::empty(n);
        } else {
            doms[cell] = Domain::singleton(n, i);
        }
    }
    Ok(doms)
}

/// Enumerates every complete valid assignment of the window that extends the
/// pins and respects the boundary, in lexicographic row-major order.
pub fn enumerate(req: &SolveRequest) -> Result<SolveOutcome, SolveError> {
    let tables = Tables::new(req.tileset);
    let w = req.width as usize;
    let h = req.height as usize;
    let limit = req.limit.unwrap_or(usize::MAX);
    let budget = req.node_budget.unwrap_or_else(node_budget);
    let nodes = AtomicU64::new(0);

    let mut doms = initial_domains(req)?;
    let seed: Vec<usize> = (0..w * h).collect();
    let mut searcher = Searcher {
        tables: &tables,
        width: w,
        height: h,
        limit,
        budget,
        nodes: &nodes,
        solutions: Vec::new(),
        budget_hit: false,
    };
    let feasible = searcher.propagate(&mut doms, &seed);

    let mut raw: Vec<Vec<u32>> = Vec::new();
    let mut budget_hit = false;
    if feasible {
        let jobs = req.jobs.max(1);
        if jobs == 1 {
            searcher.search(&mut doms);
            raw = std::mem::take(&mut searcher.solutions);
            budget_hit = searcher.budget_hit;
        } else {
            // Deterministic split on the first branch cell: each worker owns a
            // slice of that cell's candidates; results are concatenated in
            // candidate order, so the merged set matches a sequential run.
            match searcher.pick_cell(&doms) {
                None => {
                    searcher.search(&mut doms);
                    raw = std::mem::take(&mut searcher.solutions);
                    budget_hit = searcher.budget_hit;
                }
                Some((cell, _)) => {
                    let candidates: Vec<usize> = doms[cell].iter().collect();
                    let chunks: Vec<Vec<usize>> = candidates
                        .chunks(candidates.len().div_ceil(jobs))
                        .map(|c| c.to_vec())
                        .collect();
                    let results: Vec<(Vec<Vec<u32>>, bool)> = std::thread::scope(|scope| {
                        let handles: Vec<_> = chunks
                            .iter()
                            .map(|chunk| {
                                let doms = doms.clone();
                                let tables = &tables;
                                let nodes = &nodes;
                                scope.spawn(move || {
                                    let mut local = Searcher {
                                        tables,
                                        width: w,
                                        height: h,
                                        limit,
                                        budget,
                                        nodes,
                                        solutions: Vec::new(),
                                        budget_hit: false,
                                    };
                                    for &t in chunk {
                                        let mut next = doms.clone();
                                        next[cell] = Domain::singleton(tables.n, t);
                                        if local.propagate(&mut next, &[cell]) {
                                            local.search(&mut next);
                                        }
                                        if local.solutions.len() >= limit || local.budget_hit {
                                            break;
                                        }
                                    }
                                    (local.solutions, local.budget_hit)
                                })
                            })
                            .collect();
                        handles.into_iter().map(|h| h.join().unwrap()).collect()
                    });
                    for (sols, hit) in results {
                        raw.extend(sols);
                        budget_hit |= hit;
                    }
                    raw.truncate(limit);
                }
            }
        }
    }
    if budget_hit {
        return Err(SolveError::BudgetExceeded);
    }

    raw.sort();
    raw.dedup();
    let truncated = raw.len() >= limit && req.limit.is_some();
    let solutions: Vec<Patch> = raw
        .into_iter()
        .map(|cells| {
            let mut p = Patch::new(req.pins.origin, req.width, req.height);
            for (i, id) in cells.into_iter().enumerate() {
                let x = (i % w) as u32;
                let y = (i / w) as u32;
                p.set(x, y, id).unwrap();
            }
            p
        })
        .collect();
    let status = if truncated {
        SolveStatus::LimitReached
    } else {
        match solutions.len() {
            0 => SolveStatus::None,
            1 => SolveStatus::Unique,
            _ => SolveStatus::Multiple,
        }
    };
    Ok(SolveOutcome { status, solutions })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    None,
    Unique(Patch),
    Multiple,
}

/// Does the window admit zero, one, or several completions extending `pins`?
pub fn unique_extension(
    ts: &TileSet,
    pins: &Patch,
    width: u32,
    height: u32,
) -> Result<Extension, SolveError> {
    let mut req = SolveRequest::new(ts, width, height);
    req.pins = pins.clone();
    req.limit = Some(2);
    let out = match enumerate(&req) {
        Ok(o) => o,
        Err(SolveError::InfeasiblePin(..)) => {
            return Ok(Extension::None);
        }
        Err(e) => return Err(e),
    };
    Ok(match out.solutions.len() {
        0 => Extension::None,
        1 => Extension::Unique(out.solutions.into_iter().next().unwrap()),
        _ => Extension::Multiple,
    })
}

/// Counts complete valid tilings of the window by dynamic programming over
/// rows. The row state is the sequence of north colors exposed by the last
/// placed row. Entirely independent of `enumerate`.
pub fn count_transfer_matrix(
    ts: &TileSet,
    width: u32,
    height: u32,
    boundary: Option<&BoundaryConstraint>,
) -> Result<BigUint, SolveError> {
    if let Some(b) = boundary {
        b.check_dims(width, height)?;
    }
    let w = width as usize;
    let h = height as usize;
    let tiles = ts.tiles();
    let state_budget = DEFAULT_STATE_BUDGET;

    // rows_from(state, row): all rows compatible with the given south
    // constraint, grouped by exposed north sequence.
    let row_expansions = |south: Option<&[u32]>,
                          row: usize|
     -> HashMap<Vec<u32>, BigUint> {
        let mut out: HashMap<Vec<u32>, BigUint> = HashMap::new();
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
        while let Some((x, chosen)) = stack.pop() {
            if x == w {
                let norths: Vec<u32> = chosen.iter().map(|&i| tiles[i].north.0).collect();
                *out.entry(norths).or_insert_with(BigUint::zero) += BigUint::one();
                continue;
            }
            'tile: for (i, t) in tiles.iter().enumerate() {
                if let Some(s) = south {
                    if t.south.0 != s[x] {
                        continue;
                    }
                }
                if let Some(b) = boundary {
                    if row == 0 {
                        if let Some(v) = &b.south {
                            if t.south != v[x] {
                                continue 'tile;
                            }
                        }
                    }
                    if row == h - 1 {
                        if let Some(v) = &b.north {
                            if t.north != v[x] {
                                continue 'tile;
                            }
                        }
                    }
                    if x == 0 {
                        if let Some(v) = &b.west {
                            if t.west != v[row] {
                                continue 'tile;
                            }
                        }
                    }
                    if x == w - 1 {
                        if let Some(v) = &b.east {
                            if t.east != v[row] {
                                continue 'tile;
                            }
                        }
                    }
                }
                if x > 0 && tiles[*chosen.last().unwrap()].east != t.west {
                    continue;
                }
                let mut next = chosen.clone();
                next.push(i);
                stack.push((x + 1, next));
            }
        }
        out
    };

    let mut counts: HashMap<Vec<u32>, BigUint> = HashMap::new();
    for (norths, c) in row_expansions(None, 0) {
        *counts.entry(norths).or_insert_with(BigUint::zero) += c;
    }
    for row in 1..h {
        let mut next: HashMap<Vec<u32>, BigUint> = HashMap::new();
        for (state, cnt) in &counts {
            for (norths, mult) in row_expansions(Some(state), row) {
                *next.entry(norths).or_insert_with(BigUint::zero) += cnt * &mult;
            }
        }
        if next.len() > state_budget {
            return Err(SolveError::StateSpaceTooLarge(next.len()));
        }
        counts = next;
    }
    Ok(counts.values().fold(BigUint::zero(), |a, b| a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tile::{FeatureSet, TileSet};
    use num_traits::ToPrimitive;

    fn uniform(n: u32) -> TileSet {
        let mut ts = TileSet::new("uniform");
        for id in 1..=n {
            ts.add_tile(id, "a", "a", "a", "a", FeatureSet::empty()).unwrap();
        }
        ts
    }

    #[test]
    fn one_tile_two_by_two() {
        let ts = uniform(1);
        let out = enumerate(&SolveRequest::new(&ts, 2, 2)).unwrap();
        assert_eq!(out.status, SolveStatus::Unique);
        assert_eq!(out.solutions.len(), 1);
    }

    #[test]
    fn free_shift_count() {
        // k tiles with a shared color: k^(n*n) tilings of an n x n window.
        let ts = uniform(3);
        let out = enumerate(&SolveRequest::new(&ts, 2, 2)).unwrap();
        assert_eq!(out.solutions.len(), 81);
        let c = count_transfer_matrix(&ts, 2, 2, None).unwrap();
        assert_eq!(c.to_u64().unwrap(), 81);
    }

    #[test]
    fn transfer_matrix_trivials() {
        let ts = uniform(1);
        assert_eq!(
            count_transfer_matrix(&ts, 3, 3, None).unwrap().to_u64().unwrap(),
            1
        );
        let ts2 = uniform(2);
        assert_eq!(
            count_transfer_matrix(&ts2, 2, 2, None).unwrap().to_u64().unwrap(),
            16
        );
    }

    #[test]
    fn solutions_sorted_row_major() {
        let ts = uniform(2);
        let out = enumerate(&SolveRequest::new(&ts, 2, 1)).unwrap();
        let keys: Vec<Vec<u32>> = out
            .solutions
            .iter()
            .map(|p| vec![p.get(0, 0).unwrap(), p.get(1, 0).unwrap()])
            .collect();
        assert_eq!(keys, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
    }

    #[test]
    fn infeasible_pin_detected() {
        let mut ts = TileSet::new("x");
        ts.add_tile(1, "a", "p", "a", "q", FeatureSet::empty()).unwrap();
        ts.add_tile(2, "a", "q", "a", "p", FeatureSet::empty()).unwrap();
        let mut req = SolveRequest::new(&ts, 2, 1);
        req.pins.set(0, 0, 1).unwrap(); // east p
        req.pins.set(1, 0, 1).unwrap(); // west q
        assert!(matches!(
            enumerate(&req),
            Err(SolveError::InfeasiblePin(0, 0, 1, 0))
        ));
    }

    #[test]
    fn unique_extension_multiple_and_none() {
        let ts = uniform(2);
        let pins = Patch::new((0, 0), 2, 2);
        assert_eq!(
            unique_extension(&ts, &pins, 2, 2).unwrap(),
            Extension::Multiple
        );

        let mut ts2 = TileSet::new("x");
        ts2.add_tile(1, "a", "p", "a", "q", FeatureSet::empty()).unwrap();
        let mut pins2 = Patch::new((0, 0), 2, 1);
        pins2.set(0, 0, 1).unwrap();
        pins2.set(1, 0, 1).unwrap();
        assert_eq!(unique_extension(&ts2, &pins2, 2, 1).unwrap(), Extension::None);
    }

    #[test]
    fn parallel_matches_sequential() {
        let mut ts = TileSet::new("mix");
        ts.add_tile(1, "a", "a", "a", "a", FeatureSet::empty()).unwrap();
        ts.add_tile(2, "a", "b", "a", "a", FeatureSet::empty()).unwrap();
        ts.add_tile(3, "a", "a", "a", "b", FeatureSet::empty()).unwrap();
        let mut req = SolveRequest::new(&ts, 3, 2);
        let seq = enumerate(&req).unwrap();
        req.jobs = 4;
        let par = enumerate(&req).unwrap();
        assert_eq!(seq.solutions, par.solutions);
    }

    #[test]
    fn pin_reduces_count() {
        let ts = uniform(2);
        let mut req = SolveRequest::new(&ts, 2, 2);
        let all = enumerate(&req).unwrap().solutions.len();
        req.pins.set(0, 0, 1).unwrap();
        let pinned = enumerate(&req).unwrap().solutions.len();
        assert!(pinned <= all);
        assert_eq!(pinned, 8);
    }
}
