//! Existence and nonexistence verdicts backed by the proven results, plus
//! constraint propagation over templates.
//!
//! Every negative verdict names the result it rests on via a stable
//! [`TheoremId`] string, so downstream output can be audited. Cases the
//! theory does not settle come back as [`Verdict::Unknown`], with a bundled
//! witness attached when the reference tables cover the parameters.

use std::fmt;

use crate::alphabet::Alphabet;
use crate::constructions::Family;
use crate::error::{Error, Result};
use crate::search::pattern_length_check;
use crate::tables;
use crate::template::{Cell, DiamondTemplate};
use crate::word::PartialWord;

/// Stable identifier of the result backing a nonexistence verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    /// No single-wildcard word over an alphabet of size three or more.
    T31,
    /// No binary single-wildcard word with the wildcard at position n.
    T32,
    /// No binary single-wildcard word for (n, k) in {(3,4), (4,5), (4,7)}.
    T33,
    /// Segment-length exclusions for two wildcards, n >= 5.
    T41,
    /// Adjacent wildcards only work for n = 2 and one n = 3 shape.
    C42,
    /// Cyclic words need some d in 1..n-1 with n dividing d * alpha^(n-d).
    C52,
    /// No cyclic word when gcd(alpha, n) = 1.
    C53,
    /// No binary word starting with 2 <= d <= n-2 wildcards followed by
    /// letters through position n+2.
    T62,
    /// Cyclic wildcard-orbit closure or the count identity fails.
    L51Count,
    /// The cyclic case n = 2, d = 1 fails by direct inspection.
    N2D1,
}

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T31 => "T3.1",
            TheoremId::T32 => "T3.2",
            TheoremId::T33 => "T3.3",
            TheoremId::T41 => "T4.1",
            TheoremId::C42 => "C4.2",
            TheoremId::C52 => "C5.2",
            TheoremId::C53 => "C5.3",
            TheoremId::T62 => "T6.2",
            TheoremId::L51Count => "L5.1-count",
            TheoremId::N2D1 => "N2D1",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How an existence verdict is realized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Existence {
    /// One of the general constructions produces a word.
    Construction(Family),
    /// A concrete word, typically from the bundled tables.
    Witness(PartialWord),
}

/// Outcome of a feasibility question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Exists(Existence),
    NonexistentBy { theorem: TheoremId, detail: String },
    Unknown { note: String, witness: Option<PartialWord> },
}

impl Verdict {
    /// Some(true) for Exists, Some(false) for NonexistentBy, None for Unknown.
    pub fn settled(&self) -> Option<bool> {
        match self {
            Verdict::Exists(_) => Some(true),
            Verdict::NonexistentBy { .. } => Some(false),
            Verdict::Unknown { .. } => None,
        }
    }
}

/// Verdict for cyclic parameters together with the feasible wildcard
/// densities: a cyclic word must have uniform d wildcards per window and
/// length alpha^(n-d).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicVerdict {
    pub verdict: Verdict,
    pub feasible_d: Vec<usize>,
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn modpow(mut base: u128, mut exp: usize, modulus: u128) -> u128 {
    debug_assert!(modulus > 0);
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// The bundled cyclic word for alpha = 2, n = 4.
pub fn cyclic_witness_n4() -> PartialWord {
    PartialWord::parse("*001*110", Alphabet::BINARY).expect("literal parses")
}

/// Verdict for a linear word with a single wildcard at position k, counted
/// from the beginning or the end; positions past the middle are folded onto
/// their mirror before the case analysis.
pub fn single_diamond_verdict(alphabet: Alphabet, n: usize, k: usize) -> Result<Verdict> {
    if n < 1 || k < 1 {
        return Err(Error::BadParams(format!(
            "single wildcard verdict needs n >= 1 and k >= 1, got n = {n}, k = {k}"
        )));
    }
    if n == 1 {
        // The whole word is the single wildcard.
        if k == 1 {
            return Ok(Verdict::Exists(Existence::Construction(Family::Trivial)));
        }
        return Err(Error::BadParams(format!(
            "for n = 1 the word has length 1, so k = {k} is out of range"
        )));
    }
    if !alphabet.is_binary() {
        return Ok(Verdict::NonexistentBy {
            theorem: TheoremId::T31,
            detail: format!(
                "no word with a single wildcard exists over an alphabet of size {} >= 3",
                alphabet.size()
            ),
        });
    }
    // For k >= n the word, if any, has length 2^n - 1; fold k onto the
    // nearer end so the table convention applies.
    let k = if k >= n && n <= 127 {
        let total = (1u128 << n) - 1;
        let k128 = k as u128;
        if k128 > total {
            return Err(Error::BadParams(format!(
                "position {k} is beyond the word length {total} for n = {n}"
            )));
        }
        k128.min(total + 1 - k128) as usize
    } else {
        k
    };
    if k == n {
        return Ok(Verdict::NonexistentBy {
            theorem: TheoremId::T32,
            detail: format!("no binary word with a single wildcard at position n = {n}"),
        });
    }
    if matches!((n, k), (3, 4) | (4, 5) | (4, 7)) {
        return Ok(Verdict::NonexistentBy {
            theorem: TheoremId::T33,
            detail: format!("the case n = {n}, k = {k} is excluded"),
        });
    }
    if k == 1 {
        return Ok(Verdict::Exists(Existence::Construction(Family::Pos1)));
    }
    if k < n {
        return Ok(Verdict::Exists(Existence::Construction(Family::PosK)));
    }
    Ok(Verdict::Unknown {
        note: format!(
            "conjectured to exist: single wildcard, n = {n}, k = {k} is not covered by T3.2 or T3.3"
        ),
        witness: tables::table1_witness(n, k).cloned(),
    })
}

/// Verdict for a linear binary word of the shape x wildcard y wildcard z,
/// where lx, ly, lz are the segment lengths.
pub fn two_diamond_shape_verdict(n: usize, lx: usize, ly: usize, lz: usize) -> Result<Verdict> {
    if n < 2 {
        return Err(Error::BadParams(format!(
            "two-wildcard shapes need n >= 2, got n = {n}"
        )));
    }
    if ly == 0 {
        if n == 2 && lx == 0 && lz == 0 {
            let w = PartialWord::parse("**", Alphabet::BINARY).expect("literal parses");
            return Ok(Verdict::Exists(Existence::Witness(w)));
        }
        if n == 3 && (lx, lz) == (0, 4) {
            let w = PartialWord::parse("**0111", Alphabet::BINARY).expect("literal parses");
            return Ok(Verdict::Exists(Existence::Witness(w)));
        }
        if n == 3 && (lx, lz) == (4, 0) {
            let w = PartialWord::parse("1110**", Alphabet::BINARY).expect("literal parses");
            return Ok(Verdict::Exists(Existence::Witness(w)));
        }
        return Ok(Verdict::NonexistentBy {
            theorem: TheoremId::C42,
            detail: format!(
                "adjacent wildcards only admit the n = 2 and n = 3 exceptions, not n = {n} with lx = {lx}, lz = {lz}"
            ),
        });
    }
    if n >= 5 {
        let reason = if lx >= n && ly >= n && lz >= n {
            Some("all three segments have length >= n")
        } else if lx == n - 1 {
            Some("the first segment has length n - 1")
        } else if lz == n - 1 {
            Some("the last segment has length n - 1")
        } else if ly <= n - 2 {
            Some("the middle segment has length <= n - 2")
        } else {
            None
        };
        if let Some(reason) = reason {
            return Ok(Verdict::NonexistentBy {
                theorem: TheoremId::T41,
                detail: format!("{reason} (n = {n}, lx = {lx}, ly = {ly}, lz = {lz})"),
            });
        }
    }
    Ok(Verdict::Unknown {
        note: format!(
            "shape lx = {lx}, ly = {ly}, lz = {lz} for n = {n} is not settled by T4.1 or C4.2"
        ),
        witness: tables::table2_witness_for_shape(n, lx, ly, lz),
    })
}

/// Verdict for the existence of any cyclic word for the given alphabet and
/// n, with the list of wildcard densities d the count identity allows.
pub fn cyclic_parameter_verdict(alphabet: Alphabet, n: usize) -> Result<CyclicVerdict> {
    if n < 2 {
        return Err(Error::BadParams(format!(
            "cyclic parameters need n >= 2, got n = {n}"
        )));
    }
    let alpha = alphabet.size() as usize;
    if gcd(alpha, n) == 1 {
        return Ok(CyclicVerdict {
            verdict: Verdict::NonexistentBy {
                theorem: TheoremId::C53,
                detail: format!("gcd(alpha, n) = gcd({alpha}, {n}) = 1"),
            },
            feasible_d: Vec::new(),
        });
    }
    // A cyclic word has length alpha^(n-d) with d wildcards per window and
    // n | d * alpha^(n-d); collect the feasible d.
    let feasible: Vec<usize> = (1..n)
        .filter(|&d| (d as u128 * modpow(alpha as u128, n - d, n as u128)) % n as u128 == 0)
        .collect();
    if alpha == 2 && n == 2 {
        return Ok(CyclicVerdict {
            verdict: Verdict::NonexistentBy {
                theorem: TheoremId::N2D1,
                detail: "the sole candidate d = 1 fails: up to symmetry the word is *0, \
                         which covers 00 twice and 11 never"
                    .to_string(),
            },
            feasible_d: Vec::new(),
        });
    }
    if feasible.is_empty() {
        return Ok(CyclicVerdict {
            verdict: Verdict::NonexistentBy {
                theorem: TheoremId::C52,
                detail: format!("no d in 1..{n} satisfies {n} | d * {alpha}^({n} - d)"),
            },
            feasible_d: Vec::new(),
        });
    }
    let witness = (alpha == 2 && n == 4).then(cyclic_witness_n4);
    Ok(CyclicVerdict {
        verdict: Verdict::Unknown {
            note: format!("cyclic candidates have length {alpha}^({n} - d) for d in {feasible:?}"),
            witness,
        },
        feasible_d: feasible,
    })
}

/// Screens a concrete cyclic template: every wildcard orbit under stepping
/// by n must close without hitting a letter, and the closed template must
/// satisfy the count identity and the divisibility screen. Passing both is
/// not sufficient for existence, so a clean screen stays Unknown.
pub fn cyclic_template_verdict(template: &DiamondTemplate) -> Result<Verdict> {
    if !template.cyclic() {
        return Err(Error::BadParams(
            "cyclic template screening needs a cyclic template".to_string(),
        ));
    }
    let refined = match propagate_constraints(template) {
        Propagation::Contradiction(clash) => {
            return Ok(Verdict::NonexistentBy {
                theorem: TheoremId::L51Count,
                detail: format!("wildcard orbit closure fails: {clash}"),
            })
        }
        Propagation::Refined(r) => r.template().clone(),
    };
    match pattern_length_check(&refined) {
        Ok(()) => Ok(Verdict::Unknown {
            note: "orbit closure and the count identity both hold".to_string(),
            witness: None,
        }),
        Err(Error::CountMismatch { expected, found }) => Ok(Verdict::NonexistentBy {
            theorem: TheoremId::L51Count,
            detail: format!("window expansions sum to {found}, universality needs {expected}"),
        }),
        Err(Error::CyclicPattern(reason)) => Ok(Verdict::NonexistentBy {
            theorem: TheoremId::L51Count,
            detail: reason,
        }),
        Err(e) => Err(e),
    }
}

/// Verdict for templates beginning with exactly d wildcards.
pub fn prefix_run_verdict(
    alphabet: Alphabet,
    n: usize,
    d: usize,
    template: &DiamondTemplate,
) -> Result<Verdict> {
    if template.alphabet() != alphabet || template.n() != n {
        return Err(Error::BadParams(format!(
            "template is for alphabet size {}, n = {}, not alphabet size {}, n = {n}",
            template.alphabet().size(),
            template.n(),
            alphabet.size()
        )));
    }
    if template.len() < d
        || template.cells()[..d].iter().any(|c| !matches!(c, Cell::Diamond))
        || (template.len() > d && matches!(template.cell(d + 1), Cell::Diamond))
    {
        return Err(Error::BadParams(format!(
            "template does not start with exactly {d} wildcards"
        )));
    }
    if alphabet.is_binary()
        && n >= 4
        && (2..=n - 2).contains(&d)
        && template.len() >= n + 2
        && (d + 1..=n + 2).all(|i| !matches!(template.cell(i), Cell::Diamond))
    {
        return Ok(Verdict::NonexistentBy {
            theorem: TheoremId::T62,
            detail: format!(
                "no binary word starts with {d} wildcards followed by letters through position {}",
                n + 2
            ),
        });
    }
    if alphabet.is_binary() && n >= 2 && d == n - 1 {
        return Ok(Verdict::Exists(Existence::Construction(Family::Nm1Diamonds)));
    }
    Ok(Verdict::Unknown {
        note: format!("a {d}-wildcard prefix for n = {n} is not settled by T6.2"),
        witness: None,
    })
}

/// Why a template admits no completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Contradiction {
    /// A wildcard forces a letter at offset n after it, which requires a
    /// binary alphabet.
    NonBinaryForcedLetter { diamond: usize, cell: usize },
    /// Two cells are forced both equal and complementary, or carry
    /// conflicting fixed letters.
    InconsistentCells { a: usize, b: usize },
    /// A cell is forced to copy a letter and to be a wildcard at once.
    DiamondClash { letter_cell: usize, diamond_cell: usize },
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contradiction::NonBinaryForcedLetter { diamond, cell } => write!(
                f,
                "wildcard at {diamond} forces a letter relation at {cell}, impossible beyond binary"
            ),
            Contradiction::InconsistentCells { a, b } => {
                write!(f, "cells {a} and {b} carry contradictory constraints")
            }
            Contradiction::DiamondClash { letter_cell, diamond_cell } => write!(
                f,
                "cell {diamond_cell} must stay a wildcard but is forced to copy cell {letter_cell}"
            ),
        }
    }
}

/// Relation between two cells derived by propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    Complement,
}

/// A template refined by propagation, with the derived cell relations.
#[derive(Debug, Clone)]
pub struct Refinement {
    template: DiamondTemplate,
    root: Vec<usize>,
    flip: Vec<bool>,
}

impl Refinement {
    fn unconstrained(template: DiamondTemplate) -> Self {
        let len = template.len();
        Refinement {
            template,
            root: (0..=len).collect(),
            flip: vec![false; len + 1],
        }
    }

    pub fn template(&self) -> &DiamondTemplate {
        &self.template
    }

    /// The relation between cells a and b (1-based), if propagation linked
    /// them. Unrelated or out-of-range cells give None.
    pub fn relation(&self, a: usize, b: usize) -> Option<Relation> {
        let len = self.template.len();
        if a < 1 || a > len || b < 1 || b > len {
            return None;
        }
        if self.root[a] != self.root[b] {
            return None;
        }
        if self.flip[a] == self.flip[b] {
            Some(Relation::Equal)
        } else {
            Some(Relation::Complement)
        }
    }
}

/// Result of propagating the two constraint rules over a template.
#[derive(Debug, Clone)]
pub enum Propagation {
    Refined(Refinement),
    Contradiction(Contradiction),
}

impl Propagation {
    pub fn refinement(&self) -> Option<&Refinement> {
        match self {
            Propagation::Refined(r) => Some(r),
            Propagation::Contradiction(_) => None,
        }
    }

    pub fn contradiction(&self) -> Option<&Contradiction> {
        match self {
            Propagation::Refined(_) => None,
            Propagation::Contradiction(c) => Some(c),
        }
    }
}

struct ParityDsu {
    parent: Vec<usize>,
    // Relation of each node to its parent; false is equal.
    flip: Vec<bool>,
    size: Vec<usize>,
}

impl ParityDsu {
    fn new(len: usize) -> Self {
        ParityDsu {
            parent: (0..=len).collect(),
            flip: vec![false; len + 1],
            size: vec![1; len + 1],
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, parent_flip) = self.find(self.parent[x]);
        let total = self.flip[x] ^ parent_flip;
        self.parent[x] = root;
        self.flip[x] = total;
        (root, total)
    }

    /// Records a xor b == rel; Err if the existing relations disagree.
    fn union(&mut self, a: usize, b: usize, rel: Relation) -> std::result::Result<(), ()> {
        let want = matches!(rel, Relation::Complement);
        let (ra, fa) = self.find(a);
        let (rb, fb) = self.find(b);
        if ra == rb {
            return if fa ^ fb == want { Ok(()) } else { Err(()) };
        }
        let (big, small, flip_small) = if self.size[ra] >= self.size[rb] {
            (ra, rb, fa ^ fb ^ want)
        } else {
            (rb, ra, fa ^ fb ^ want)
        };
        self.parent[small] = big;
        self.flip[small] = flip_small;
        self.size[big] += self.size[small];
        Ok(())
    }
}

/// Collects the letter-copy constraints one orientation of a linear
/// template implies. Free cells count as letters: whatever fills them is
/// subject to the same relations.
fn collect_linear(
    t: &DiamondTemplate,
    reversed: bool,
    constraints: &mut Vec<(usize, usize, Relation)>,
) -> Option<Contradiction> {
    let n = t.n();
    let len = t.len();
    if n < 2 {
        return None;
    }
    let get = |i: usize| if reversed { t.cell(len + 1 - i) } else { t.cell(i) };
    let orig = |i: usize| if reversed { len + 1 - i } else { i };
    for k in 1..=len {
        if !matches!(get(k), Cell::Diamond) || k + n > len || matches!(get(k + n), Cell::Diamond) {
            continue;
        }
        for i in 1..n {
            if matches!(get(i), Cell::Diamond) {
                continue;
            }
            if matches!(get(k + i), Cell::Diamond) {
                return Some(Contradiction::DiamondClash {
                    letter_cell: orig(i),
                    diamond_cell: orig(k + i),
                });
            }
            constraints.push((orig(i), orig(k + i), Relation::Equal));
        }
        if !matches!(get(n), Cell::Diamond) {
            if !t.alphabet().is_binary() {
                return Some(Contradiction::NonBinaryForcedLetter {
                    diamond: orig(k),
                    cell: orig(n),
                });
            }
            constraints.push((orig(n), orig(k + n), Relation::Complement));
        }
    }
    None
}

fn propagate_linear(t: &DiamondTemplate) -> Propagation {
    let len = t.len();
    let mut constraints = Vec::new();
    for reversed in [false, true] {
        if let Some(c) = collect_linear(t, reversed, &mut constraints) {
            return Propagation::Contradiction(c);
        }
    }
    let mut dsu = ParityDsu::new(len);
    for &(a, b, rel) in &constraints {
        if dsu.union(a, b, rel).is_err() {
            return Propagation::Contradiction(Contradiction::InconsistentCells { a, b });
        }
    }
    // Push fixed letters through their classes; a class value is the letter
    // the class root would carry.
    let mut class_value: Vec<Option<(u8, usize)>> = vec![None; len + 1];
    for pos in t.fixed_positions() {
        let letter = match t.cell(pos) {
            Cell::Fixed(v) => v,
            _ => unreachable!("fixed_positions returns fixed cells"),
        };
        let (root, flip) = dsu.find(pos);
        let normalized = if flip { 1 - letter } else { letter };
        match class_value[root] {
            None => class_value[root] = Some((normalized, pos)),
            Some((have, first)) => {
                if have != normalized {
                    return Propagation::Contradiction(Contradiction::InconsistentCells {
                        a: first,
                        b: pos,
                    });
                }
            }
        }
    }
    let mut template = t.clone();
    for pos in t.free_positions() {
        let (root, flip) = dsu.find(pos);
        if let Some((value, _)) = class_value[root] {
            let letter = if flip { 1 - value } else { value };
            template = template.with_cell(pos, Cell::Fixed(letter));
        }
    }
    let mut root = vec![0; len + 1];
    let mut flip = vec![false; len + 1];
    for x in 1..=len {
        let (r, f) = dsu.find(x);
        root[x] = r;
        flip[x] = f;
    }
    Propagation::Refined(Refinement { template, root, flip })
}

fn propagate_cyclic(t: &DiamondTemplate) -> Propagation {
    let len = t.len();
    let n = t.n();
    let mut template = t.clone();
    // A wildcard's whole orbit under stepping by n (mod len) must be
    // wildcards; stepping forward eventually wraps around the orbit.
    for start in t.diamond_positions() {
        let mut j = start;
        loop {
            j = (j - 1 + n) % len + 1;
            if j == start {
                break;
            }
            match template.cell(j) {
                Cell::Diamond => {}
                Cell::Free => template = template.with_cell(j, Cell::Diamond),
                Cell::Fixed(_) => {
                    return Propagation::Contradiction(Contradiction::DiamondClash {
                        letter_cell: j,
                        diamond_cell: start,
                    });
                }
            }
        }
    }
    Propagation::Refined(Refinement::unconstrained(template))
}

/// Applies the letter-copy rule (linear templates, both orientations) or
/// the wildcard-orbit rule (cyclic templates) and closes the consequences.
/// The fixpoint is unique: rerunning on a refined template changes nothing.
pub fn propagate_constraints(t: &DiamondTemplate) -> Propagation {
    if t.cyclic() {
        propagate_cyclic(t)
    } else {
        propagate_linear(t)
    }
}
