//! Exhaustive search for words matching a template: a pruned backtracking
//! engine and an independent brute-force oracle.
//!
//! The engine assigns letters to the free cells left to right, keeping an
//! incremental coverage count and cutting a branch the moment any factor is
//! covered twice. The count identity checked by [`pattern_length_check`]
//! guarantees that a leaf with no overfull factor covers everything exactly
//! once, so leaves are witnesses without a final scan. The oracle instead
//! enumerates every assignment and runs the full universality check,
//! sharing none of the engine's shortcuts.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use crate::alphabet::{Alphabet, Symbol};
use crate::coverage::{is_universal, shapes_for, WindowShape, MAX_FACTOR_SPACE};
use crate::error::{Error, Result};
use crate::feasibility::{propagate_constraints, Propagation};
use crate::template::{Cell, DiamondTemplate};
use crate::word::PartialWord;

/// Node budget applied when a spec does not set one.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Hard cap on the oracle's assignment space, alpha^(#free cells).
pub const ORACLE_ASSIGNMENT_LIMIT: u128 = 1 << 22;

/// Whether to stop at the first witness or collect all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    First,
    All,
}

/// Why a search returned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The whole space was covered.
    Completed,
    /// First-witness mode found its witness.
    FirstFound,
    /// The node budget ran out.
    NodeBudget,
    /// The time budget ran out.
    TimeBudget,
}

/// Search configuration around one template.
#[derive(Debug, Clone)]
pub struct SearchSpec {
    template: DiamondTemplate,
    mode: SearchMode,
    symmetry_reduction: bool,
    node_budget: Option<u64>,
    time_budget: Option<Duration>,
}

impl SearchSpec {
    pub fn new(template: DiamondTemplate) -> Self {
        SearchSpec {
            template,
            mode: SearchMode::All,
            symmetry_reduction: false,
            node_budget: Some(DEFAULT_NODE_BUDGET),
            time_budget: None,
        }
    }

    pub fn with_mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    /// When set, the first free cell of an all-free template is pinned to
    /// letter 0, and mirror-symmetric templates only emit words that are
    /// lexicographically no larger than their reversal. One representative
    /// of every symmetry class is still emitted; this is a reduction, not a
    /// full canonicalization.
    pub fn with_symmetry_reduction(mut self, on: bool) -> Self {
        self.symmetry_reduction = on;
        self
    }

    /// None lifts the node budget entirely.
    pub fn with_node_budget(mut self, budget: Option<u64>) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn with_time_budget(mut self, budget: Option<Duration>) -> Self {
        self.time_budget = budget;
        self
    }

    pub fn template(&self) -> &DiamondTemplate {
        &self.template
    }

    pub fn mode(&self) -> SearchMode {
        self.mode
    }

    pub fn symmetry_reduction(&self) -> bool {
        self.symmetry_reduction
    }

    pub fn node_budget(&self) -> Option<u64> {
        self.node_budget
    }

    pub fn time_budget(&self) -> Option<Duration> {
        self.time_budget
    }
}

/// Witnesses found plus how the search ended.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub witnesses: Vec<PartialWord>,
    /// True when the whole space was covered, so an empty witness list is a
    /// proof of nonexistence.
    pub exhausted: bool,
    pub nodes_explored: u64,
    pub stop: StopReason,
}

fn factor_space(alphabet: Alphabet, n: usize) -> Result<u128> {
    u32::try_from(n)
        .ok()
        .and_then(|n| (alphabet.size() as u128).checked_pow(n))
        .ok_or_else(|| Error::BadParams(format!("alpha^n overflows for n = {n}")))
}

/// Checks the count identity: the window expansions must add up to exactly
/// alpha^n. Cyclic templates additionally need a uniform wildcard count d
/// per window and n | d * N.
pub fn pattern_length_check(template: &DiamondTemplate) -> Result<()> {
    let alphabet = template.alphabet();
    let n = template.n();
    let expected = factor_space(alphabet, n)?;
    let cells = template.cells();
    let shapes = shapes_for(template.len(), n, template.cyclic(), alphabet, |c| {
        matches!(cells[c], Cell::Diamond)
    });
    let mut found: u128 = 0;
    for shape in &shapes {
        found = found.saturating_add(shape.expansion_count(alphabet));
    }
    if found != expected {
        return Err(Error::CountMismatch { expected, found });
    }
    if template.cyclic() {
        let d = shapes.first().map_or(0, |s| s.diamonds.len());
        if shapes.iter().any(|s| s.diamonds.len() != d) {
            return Err(Error::CyclicPattern(
                "cyclic windows carry differing wildcard counts".to_string(),
            ));
        }
        if (d * template.len()) % n != 0 {
            return Err(Error::CyclicPattern(format!(
                "n = {n} does not divide d * N = {}",
                d * template.len()
            )));
        }
    }
    Ok(())
}

/// Lexicographic comparison with wildcards ordered after letters.
fn word_le(a: &PartialWord, b: &PartialWord, alphabet: Alphabet) -> bool {
    let rank = |s: Symbol| match s {
        Symbol::Letter(v) => v as usize,
        Symbol::Diamond => alphabet.size(),
    };
    for (&x, &y) in a.symbols().iter().zip(b.symbols()) {
        match rank(x).cmp(&rank(y)) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    a.len() <= b.len()
}

struct EngineConfig {
    mode: SearchMode,
    pin_first: bool,
    mirror_filter: bool,
    node_budget: u64,
    deadline: Option<Instant>,
}

struct Engine<'a> {
    alphabet: Alphabet,
    template: &'a DiamondTemplate,
    config: EngineConfig,
    free: Vec<usize>,
    free_index: Vec<usize>,
    letters: Vec<u8>,
    shapes: Vec<WindowShape>,
    by_depth: Vec<Vec<usize>>,
    counts: Vec<u32>,
    touched: Vec<u64>,
    witnesses: Vec<PartialWord>,
    nodes: u64,
    stop: Option<StopReason>,
}

impl<'a> Engine<'a> {
    fn new(template: &'a DiamondTemplate, config: EngineConfig) -> Result<Self> {
        let alphabet = template.alphabet();
        let n = template.n();
        let space = factor_space(alphabet, n)?;
        if space > MAX_FACTOR_SPACE as u128 {
            return Err(Error::TooLarge {
                what: "factor space",
                need: space,
                limit: MAX_FACTOR_SPACE as u128,
            });
        }
        let cells = template.cells();
        let shapes = shapes_for(template.len(), n, template.cyclic(), alphabet, |c| {
            matches!(cells[c], Cell::Diamond)
        });
        // 0-based cell indices of the free cells, ascending.
        let free: Vec<usize> = template.free_positions().iter().map(|p| p - 1).collect();
        let mut free_index = vec![usize::MAX; template.len()];
        for (i, &cell) in free.iter().enumerate() {
            free_index[cell] = i;
        }
        // A window can be counted once its last free cell is assigned.
        let mut by_depth = vec![Vec::new(); free.len() + 1];
        for (w, shape) in shapes.iter().enumerate() {
            let trigger = shape
                .fixed
                .iter()
                .filter(|(cell, _)| matches!(cells[*cell], Cell::Free))
                .map(|(cell, _)| free_index[*cell] + 1)
                .max()
                .unwrap_or(0);
            by_depth[trigger].push(w);
        }
        Ok(Engine {
            alphabet,
            template,
            config,
            letters: vec![0; free.len()],
            free,
            free_index,
            shapes,
            by_depth,
            counts: vec![0; space as usize],
            touched: Vec::new(),
            witnesses: Vec::new(),
            nodes: 0,
            stop: None,
        })
    }

    fn apply_depth(&mut self, depth: usize) -> bool {
        let cells = self.template.cells();
        let letters = &self.letters;
        let free_index = &self.free_index;
        let letter_of = |cell: usize| match cells[cell] {
            Cell::Fixed(v) => v,
            Cell::Free => letters[free_index[cell]],
            Cell::Diamond => unreachable!("wildcard cells are expanded, not read"),
        };
        let counts = &mut self.counts;
        let touched = &mut self.touched;
        for &w in &self.by_depth[depth] {
            let fits = self.shapes[w].for_each_code(self.alphabet, &letter_of, |code| {
                counts[code as usize] += 1;
                touched.push(code);
                counts[code as usize] <= 1
            });
            if !fits {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for code in self.touched.drain(mark..) {
            self.counts[code as usize] -= 1;
        }
    }

    fn emit(&mut self) {
        let symbols: Vec<Symbol> = self
            .template
            .cells()
            .iter()
            .enumerate()
            .map(|(cell, c)| match c {
                Cell::Diamond => Symbol::Diamond,
                Cell::Fixed(v) => Symbol::Letter(*v),
                Cell::Free => Symbol::Letter(self.letters[self.free_index[cell]]),
            })
            .collect();
        let word = PartialWord::new(symbols, self.alphabet).expect("cells are in range");
        if self.config.mirror_filter && !word_le(&word, &word.reversed(), self.alphabet) {
            return;
        }
        self.witnesses.push(word);
        if self.config.mode == SearchMode::First {
            self.stop = Some(StopReason::FirstFound);
        }
    }

    fn dfs(&mut self, depth: usize) {
        if depth == self.free.len() {
            self.emit();
            return;
        }
        let candidates = if depth == 0 && self.config.pin_first {
            1
        } else {
            self.alphabet.size()
        };
        for letter in 0..candidates {
            if self.stop.is_some() {
                return;
            }
            if self.nodes >= self.config.node_budget {
                self.stop = Some(StopReason::NodeBudget);
                return;
            }
            if let Some(deadline) = self.config.deadline {
                if self.nodes & 0xfff == 0 && Instant::now() >= deadline {
                    self.stop = Some(StopReason::TimeBudget);
                    return;
                }
            }
            self.nodes += 1;
            self.letters[depth] = letter as u8;
            let mark = self.touched.len();
            if self.apply_depth(depth + 1) {
                self.dfs(depth + 1);
            }
            self.undo(mark);
        }
    }

    fn run(mut self) -> SearchResult {
        if self.apply_depth(0) {
            self.dfs(0);
        }
        let stop = self.stop.unwrap_or(StopReason::Completed);
        SearchResult {
            witnesses: self.witnesses,
            exhausted: stop == StopReason::Completed,
            nodes_explored: self.nodes,
            stop,
        }
    }
}

fn engine_config(spec: &SearchSpec, refined: &DiamondTemplate) -> EngineConfig {
    EngineConfig {
        mode: spec.mode,
        // Pinning the first free cell to 0 is a letter-permutation argument,
        // sound only when no cell carries a fixed letter.
        pin_first: spec.symmetry_reduction && refined.fixed_positions().is_empty(),
        mirror_filter: spec.symmetry_reduction && spec.template.is_mirror_symmetric(),
        node_budget: spec.node_budget.unwrap_or(u64::MAX),
        deadline: spec.time_budget.map(|b| Instant::now() + b),
    }
}

fn empty_exhausted() -> SearchResult {
    SearchResult {
        witnesses: Vec::new(),
        exhausted: true,
        nodes_explored: 0,
        stop: StopReason::Completed,
    }
}

/// Length check plus propagation. Cyclic orbit closure can turn free cells
/// into wildcards, which changes the window counts, so cyclic templates are
/// length-checked after refinement; linear refinement never moves a
/// wildcard, so the raw check runs first and surfaces a CountMismatch even
/// when propagation would also contradict. None means propagation proved
/// the template unsatisfiable.
fn seeded_template(spec: &SearchSpec) -> Result<Option<DiamondTemplate>> {
    if !spec.template.cyclic() {
        pattern_length_check(&spec.template)?;
    }
    let refined = match propagate_constraints(&spec.template) {
        Propagation::Contradiction(_) => return Ok(None),
        Propagation::Refined(r) => r.template().clone(),
    };
    if spec.template.cyclic() {
        pattern_length_check(&refined)?;
    }
    Ok(Some(refined))
}

/// Depth-first search over the template's free cells.
///
/// Propagation seeds the search: forced letters are filled in up front, and
/// a contradiction there settles the template as unsatisfiable without
/// exploring anything. Cyclic templates may have free cells forced into
/// wildcards by orbit closure; witnesses then follow the closed template.
pub fn exhaustive_search(spec: &SearchSpec) -> Result<SearchResult> {
    let refined = match seeded_template(spec)? {
        None => return Ok(empty_exhausted()),
        Some(t) => t,
    };
    Ok(Engine::new(&refined, engine_config(spec, &refined))?.run())
}

/// Same search split over the first free cell's letters, one thread per
/// letter, each with an equal share of the node budget. Results merge in
/// letter order, so the witness sequence matches the sequential engine.
pub fn exhaustive_search_parallel(spec: &SearchSpec) -> Result<SearchResult> {
    let refined = match seeded_template(spec)? {
        None => return Ok(empty_exhausted()),
        Some(t) => t,
    };
    let config = engine_config(spec, &refined);
    let free = refined.free_positions();
    if free.is_empty() {
        return Ok(Engine::new(&refined, config)?.run());
    }
    let letters: Vec<u8> = if config.pin_first {
        vec![0]
    } else {
        spec.template.alphabet().letters().collect()
    };
    let branch_budget = spec.node_budget.map(|b| (b / letters.len() as u64).max(1));
    let branches: Vec<Result<SearchResult>> = std::thread::scope(|scope| {
        let handles: Vec<_> = letters
            .iter()
            .map(|&x| {
                let branch = refined.with_cell(free[0], Cell::Fixed(x));
                let branch_config = EngineConfig {
                    mode: spec.mode,
                    pin_first: false,
                    mirror_filter: config.mirror_filter,
                    node_budget: branch_budget.unwrap_or(u64::MAX),
                    deadline: config.deadline,
                };
                scope.spawn(move || {
                    // Re-propagating with the pinned letter can only fix
                    // more cells; a contradiction settles the branch.
                    let seeded = match propagate_constraints(&branch) {
                        Propagation::Contradiction(_) => return Ok(empty_exhausted()),
                        Propagation::Refined(r) => r.template().clone(),
                    };
                    Ok(Engine::new(&seeded, branch_config)?.run())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("search thread panicked")).collect()
    });
    let mut witnesses = Vec::new();
    let mut nodes = 0;
    let mut stop = StopReason::Completed;
    for branch in branches {
        let branch = branch?;
        nodes += branch.nodes_explored;
        if spec.mode == SearchMode::First && !branch.witnesses.is_empty() {
            if witnesses.is_empty() {
                witnesses.extend(branch.witnesses.into_iter().take(1));
                stop = StopReason::FirstFound;
            }
            continue;
        }
        witnesses.extend(branch.witnesses);
        if stop == StopReason::Completed && branch.stop != StopReason::Completed {
            stop = branch.stop;
        }
    }
    Ok(SearchResult {
        exhausted: stop == StopReason::Completed,
        nodes_explored: nodes,
        witnesses,
        stop,
    })
}

/// Enumerates every letter assignment of the free cells and keeps the ones
/// the full universality check accepts. No propagation, no pruning, no
/// symmetry handling: free cells always hold letters and the budget fields
/// are ignored. This is the trusted baseline the engine is compared against.
pub fn brute_force_oracle(spec: &SearchSpec) -> Result<SearchResult> {
    pattern_length_check(&spec.template)?;
    let template = &spec.template;
    let alphabet = template.alphabet();
    let alpha = alphabet.size();
    let free = template.free_positions();
    let space = (alpha as u128).checked_pow(free.len() as u32);
    if space.is_none_or(|s| s > ORACLE_ASSIGNMENT_LIMIT) {
        return Err(Error::TooLarge {
            what: "oracle assignment space",
            need: (alpha as u128).saturating_pow(free.len() as u32),
            limit: ORACLE_ASSIGNMENT_LIMIT,
        });
    }
    let mut values = vec![0u8; free.len()];
    let mut witnesses = Vec::new();
    let mut nodes = 0u64;
    'assignments: loop {
        nodes += 1;
        let mut next_free = 0;
        let symbols: Vec<Symbol> = template
            .cells()
            .iter()
            .map(|c| match c {
                Cell::Diamond => Symbol::Diamond,
                Cell::Fixed(v) => Symbol::Letter(*v),
                Cell::Free => {
                    let s = Symbol::Letter(values[next_free]);
                    next_free += 1;
                    s
                }
            })
            .collect();
        let word = PartialWord::new(symbols, alphabet).expect("cells are in range");
        if is_universal(&word, template.n(), template.cyclic())? {
            witnesses.push(word);
            if spec.mode == SearchMode::First {
                return Ok(SearchResult {
                    witnesses,
                    exhausted: false,
                    nodes_explored: nodes,
                    stop: StopReason::FirstFound,
                });
            }
        }
        // Advance the rightmost cell first: assignments come out in the
        // same lexicographic order the engine uses.
        for i in (0..values.len()).rev() {
            values[i] += 1;
            if (values[i] as usize) < alpha {
                continue 'assignments;
            }
            values[i] = 0;
        }
        break;
    }
    Ok(SearchResult {
        witnesses,
        exhausted: true,
        nodes_explored: nodes,
        stop: StopReason::Completed,
    })
}

/// The template a single wildcard at position k dictates: the count
/// identity fixes the length to alpha^n + n - 1 - min(k, n) * (alpha - 1).
pub fn single_diamond_template(alphabet: Alphabet, n: usize, k: usize) -> Result<DiamondTemplate> {
    if n < 1 || k < 1 {
        return Err(Error::BadParams(format!(
            "single wildcard templates need n >= 1 and k >= 1, got n = {n}, k = {k}"
        )));
    }
    let alpha = alphabet.size() as u128;
    let len = factor_space(alphabet, n)? + n as u128 - 1 - (k.min(n) as u128) * (alpha - 1);
    if len > MAX_FACTOR_SPACE as u128 {
        return Err(Error::TooLarge {
            what: "template length",
            need: len,
            limit: MAX_FACTOR_SPACE as u128,
        });
    }
    let len = len as usize;
    if k > len {
        return Err(Error::BadParams(format!(
            "position {k} is beyond the implied length {len}"
        )));
    }
    DiamondTemplate::from_diamond_positions(alphabet, n, false, len, &[k])
}

/// Runs the engine for every wildcard position up to the middle of the
/// word, with symmetry reduction on. Positions past the middle mirror the
/// early ones. Sweeps beyond alpha = 2, n = 7 are refused unless
/// `allow_large` is set.
pub fn sweep_single_diamond(
    alphabet: Alphabet,
    n: usize,
    mode: SearchMode,
    allow_large: bool,
) -> Result<BTreeMap<usize, SearchResult>> {
    if n < 1 {
        return Err(Error::BadParams("sweep needs n >= 1".to_string()));
    }
    if (!alphabet.is_binary() || n > 7) && !allow_large {
        return Err(Error::BadParams(format!(
            "sweep for alphabet size {}, n = {n} exceeds the desk-scale guard; pass allow_large",
            alphabet.size()
        )));
    }
    let alpha = alphabet.size() as u128;
    let plateau = factor_space(alphabet, n)? + n as u128 - 1 - (n as u128) * (alpha - 1);
    let center = ((plateau + 1) / 2) as usize;
    let mut results = BTreeMap::new();
    for k in 1..=center {
        let template = single_diamond_template(alphabet, n, k)?;
        let spec = SearchSpec::new(template)
            .with_mode(mode)
            .with_symmetry_reduction(true);
        results.insert(k, exhaustive_search(&spec)?);
    }
    Ok(results)
}
