//! Factor coverage: which length-n words appear in a partial word, and how often.
//!
//! A window with d wildcards stands for alpha^d full words at once. A word is
//! universal for length n exactly when every full word of that length is
//! covered once over all windows. Full words are indexed as base-alpha
//! integers, most significant letter first, so coverage is a flat count array.

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::word::PartialWord;

/// Refuse to expand a single window into more than this many full words
/// unless the window covers the whole target space anyway.
pub const DEFAULT_EXPANSION_LIMIT: u64 = 1 << 20;

/// Upper bound on alpha^n for the coverage array.
pub const MAX_FACTOR_SPACE: u64 = 1 << 26;

pub fn encode_word(letters: &[u8], alphabet: Alphabet) -> u64 {
    let mut code: u64 = 0;
    for &x in letters {
        debug_assert!(alphabet.contains(x));
        code = code * alphabet.size() as u64 + x as u64;
    }
    code
}

pub fn decode_word(code: u64, len: usize, alphabet: Alphabet) -> Vec<u8> {
    let alpha = alphabet.size() as u64;
    let mut letters = vec![0u8; len];
    let mut rest = code;
    for slot in letters.iter_mut().rev() {
        *slot = (rest % alpha) as u8;
        rest /= alpha;
    }
    letters
}

pub fn render_factor(code: u64, len: usize, alphabet: Alphabet) -> String {
    decode_word(code, len, alphabet)
        .into_iter()
        .map(|x| alphabet.letter_to_char(x))
        .collect()
}

/// One window of a partial word, resolved to per-cell weights.
///
/// In cyclic mode a window longer than the word revisits cells; a revisited
/// wildcard still takes a single value, so its weight is the sum over all
/// offsets that hit it.
#[derive(Debug)]
pub(crate) struct WindowShape {
    /// 1-based window start.
    pub start: usize,
    /// Distinct non-wildcard cells: (0-based cell index, positional weight).
    pub fixed: Vec<(usize, u64)>,
    /// Distinct wildcard cells: (0-based cell index, positional weight).
    pub diamonds: Vec<(usize, u64)>,
}

impl WindowShape {
    pub fn expansion_count(&self, alphabet: Alphabet) -> u128 {
        (alphabet.size() as u128).pow(self.diamonds.len() as u32)
    }

    /// Visits every expansion code given concrete letters per cell.
    /// `letter_of(cell)` must return the letter of every fixed cell.
    pub fn for_each_code(
        &self,
        alphabet: Alphabet,
        letter_of: impl Fn(usize) -> u8,
        mut visit: impl FnMut(u64) -> bool,
    ) -> bool {
        let alpha = alphabet.size() as u64;
        let mut base: u64 = 0;
        for &(cell, weight) in &self.fixed {
            base += letter_of(cell) as u64 * weight;
        }
        let d = self.diamonds.len();
        let mut values = vec![0u8; d];
        loop {
            let mut code = base;
            for (v, &(_, weight)) in values.iter().zip(&self.diamonds) {
                code += *v as u64 * weight;
            }
            if !visit(code) {
                return false;
            }
            // odometer over the wildcard values
            let mut i = 0;
            loop {
                if i == d {
                    return true;
                }
                values[i] += 1;
                if (values[i] as u64) < alpha {
                    break;
                }
                values[i] = 0;
                i += 1;
            }
        }
    }
}

/// Window shapes of a word of length `len` for factor length `n`, with
/// positional weights resolved for a concrete alphabet. Linear words yield
/// `len - n + 1` windows, cyclic words `len` windows that wrap around.
pub(crate) fn shapes_for(
    len: usize,
    n: usize,
    cyclic: bool,
    alphabet: Alphabet,
    is_diamond: impl Fn(usize) -> bool,
) -> Vec<WindowShape> {
    let alpha = alphabet.size() as u64;
    let mut offset_weight = vec![1u64; n];
    for j in (0..n.saturating_sub(1)).rev() {
        offset_weight[j] = offset_weight[j + 1] * alpha;
    }
    let starts: Vec<usize> = if cyclic {
        (0..len).collect()
    } else if len >= n {
        (0..=len - n).collect()
    } else {
        Vec::new()
    };
    let mut shapes = Vec::with_capacity(starts.len());
    for s in starts {
        let mut fixed: Vec<(usize, u64)> = Vec::new();
        let mut diamonds: Vec<(usize, u64)> = Vec::new();
        for (j, &w) in offset_weight.iter().enumerate() {
            let cell = if cyclic { (s + j) % len } else { s + j };
            let bucket = if is_diamond(cell) {
                &mut diamonds
            } else {
                &mut fixed
            };
            match bucket.iter_mut().find(|(c, _)| *c == cell) {
                Some((_, weight)) => *weight += w,
                None => bucket.push((cell, w)),
            }
        }
        shapes.push(WindowShape {
            start: s + 1,
            fixed,
            diamonds,
        });
    }
    shapes
}

/// The set of full words a single window stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowExpansion {
    alphabet: Alphabet,
    n: usize,
    start: usize,
    codes: Vec<u64>,
}

impl WindowExpansion {
    /// 1-based window start.
    pub fn start(&self) -> usize {
        self.start
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Expansion codes, sorted ascending.
    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn contains(&self, code: u64) -> bool {
        self.codes.binary_search(&code).is_ok()
    }

    pub fn words(&self) -> Vec<Vec<u8>> {
        self.codes
            .iter()
            .map(|&c| decode_word(c, self.n, self.alphabet))
            .collect()
    }

    pub fn render(&self) -> Vec<String> {
        self.codes
            .iter()
            .map(|&c| render_factor(c, self.n, self.alphabet))
            .collect()
    }
}

fn shape_at(u: &PartialWord, start: usize, n: usize, cyclic: bool) -> Result<WindowShape> {
    let len = u.len();
    if n == 0 {
        return Err(Error::BadParams("factor length must be at least 1".into()));
    }
    let max_start = if cyclic {
        len
    } else if len >= n {
        len - n + 1
    } else {
        0
    };
    if start == 0 || start > max_start {
        return Err(Error::BadWindow { start, n, len });
    }
    let symbols = u.symbols();
    let shapes = shapes_for(len, n, cyclic, u.alphabet(), |cell| {
        symbols[cell].is_diamond()
    });
    Ok(shapes.into_iter().nth(start - 1).expect("start in range"))
}

/// Expands the window of length `n` starting at 1-based position `start`.
pub fn window_expansion(
    u: &PartialWord,
    start: usize,
    n: usize,
    cyclic: bool,
) -> Result<WindowExpansion> {
    window_expansion_with_limit(u, start, n, cyclic, DEFAULT_EXPANSION_LIMIT)
}

pub fn window_expansion_with_limit(
    u: &PartialWord,
    start: usize,
    n: usize,
    cyclic: bool,
    limit: u64,
) -> Result<WindowExpansion> {
    let shape = shape_at(u, start, n, cyclic)?;
    let count = shape.expansion_count(u.alphabet());
    if count > limit as u128 {
        return Err(Error::TooLarge {
            what: "window expansion",
            need: count,
            limit: limit as u128,
        });
    }
    let symbols = u.symbols();
    let mut codes = Vec::with_capacity(count as usize);
    shape.for_each_code(
        u.alphabet(),
        |cell| symbols[cell].letter().expect("fixed cell"),
        |code| {
            codes.push(code);
            true
        },
    );
    codes.sort_unstable();
    Ok(WindowExpansion {
        alphabet: u.alphabet(),
        n,
        start,
        codes,
    })
}

/// How often each full word of length `n` is covered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageMap {
    alphabet: Alphabet,
    n: usize,
    counts: Vec<u32>,
}

impl CoverageMap {
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self, code: u64) -> u32 {
        self.counts[code as usize]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    pub fn missing(&self) -> Vec<u64> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(i, _)| i as u64)
            .collect()
    }

    pub fn duplicated(&self) -> Vec<u64> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c >= 2)
            .map(|(i, _)| i as u64)
            .collect()
    }

    pub fn all_exactly_one(&self) -> bool {
        self.counts.iter().all(|&c| c == 1)
    }
}

pub fn coverage(u: &PartialWord, n: usize, cyclic: bool) -> Result<CoverageMap> {
    coverage_with_limit(u, n, cyclic, DEFAULT_EXPANSION_LIMIT)
}

pub fn coverage_with_limit(
    u: &PartialWord,
    n: usize,
    cyclic: bool,
    limit: u64,
) -> Result<CoverageMap> {
    if n == 0 {
        return Err(Error::BadParams("factor length must be at least 1".into()));
    }
    if !cyclic && u.len() < n {
        return Err(Error::BadWindow {
            start: 1,
            n,
            len: u.len(),
        });
    }
    let alphabet = u.alphabet();
    let space = alphabet.pow(n).filter(|&s| s <= MAX_FACTOR_SPACE);
    let Some(space) = space else {
        return Err(Error::TooLarge {
            what: "factor space",
            need: (alphabet.size() as u128).pow(n as u32),
            limit: MAX_FACTOR_SPACE as u128,
        });
    };
    let mut counts = vec![0u32; space as usize];
    let symbols = u.symbols();
    let shapes = shapes_for(u.len(), n, cyclic, alphabet, |cell| {
        symbols[cell].is_diamond()
    });
    for shape in &shapes {
        // A window of n distinct wildcards covers the whole space once;
        // no need to enumerate it (this is what makes the all-wildcard
        // word cheap to verify).
        if shape.diamonds.len() == n {
            for c in counts.iter_mut() {
                *c += 1;
            }
            continue;
        }
        let need = shape.expansion_count(alphabet);
        if need > limit as u128 {
            return Err(Error::TooLarge {
                what: "window expansion",
                need,
                limit: limit as u128,
            });
        }
        shape.for_each_code(
            alphabet,
            |cell| symbols[cell].letter().expect("fixed cell"),
            |code| {
                counts[code as usize] += 1;
                true
            },
        );
    }
    Ok(CoverageMap {
        alphabet,
        n,
        counts,
    })
}

/// A factor covered more than once, with the windows that cover it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Duplicate {
    /// Code of the repeated factor.
    pub factor: u64,
    /// 1-based starts of every window whose expansion contains it.
    pub windows: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalityReport {
    pub alphabet: Alphabet,
    pub n: usize,
    pub cyclic: bool,
    pub universal: bool,
    /// Codes of factors never covered.
    pub missing: Vec<u64>,
    pub duplicated: Vec<Duplicate>,
}

impl UniversalityReport {
    pub fn render_missing(&self) -> Vec<String> {
        self.missing
            .iter()
            .map(|&c| render_factor(c, self.n, self.alphabet))
            .collect()
    }
}

/// Full universality check with a violation report.
pub fn universality(u: &PartialWord, n: usize, cyclic: bool) -> Result<UniversalityReport> {
    universality_with_limit(u, n, cyclic, DEFAULT_EXPANSION_LIMIT)
}

pub fn universality_with_limit(
    u: &PartialWord,
    n: usize,
    cyclic: bool,
    limit: u64,
) -> Result<UniversalityReport> {
    let map = coverage_with_limit(u, n, cyclic, limit)?;
    let missing = map.missing();
    let dup_codes = map.duplicated();
    let mut duplicated: Vec<Duplicate> = dup_codes
        .iter()
        .map(|&factor| Duplicate {
            factor,
            windows: Vec::new(),
        })
        .collect();
    if !duplicated.is_empty() {
        let symbols = u.symbols();
        let shapes = shapes_for(u.len(), n, cyclic, u.alphabet(), |cell| {
            symbols[cell].is_diamond()
        });
        for shape in &shapes {
            if shape.diamonds.len() == n {
                for d in duplicated.iter_mut() {
                    d.windows.push(shape.start);
                }
                continue;
            }
            shape.for_each_code(
                u.alphabet(),
                |cell| symbols[cell].letter().expect("fixed cell"),
                |code| {
                    if let Ok(i) = dup_codes.binary_search(&code) {
                        let w = &mut duplicated[i].windows;
                        if w.last() != Some(&shape.start) {
                            w.push(shape.start);
                        }
                    }
                    true
                },
            );
        }
    }
    let universal = missing.is_empty() && duplicated.is_empty();
    Ok(UniversalityReport {
        alphabet: u.alphabet(),
        n,
        cyclic,
        universal,
        missing,
        duplicated,
    })
}

/// Convenience wrapper around [`universality`].
pub fn is_universal(u: &PartialWord, n: usize, cyclic: bool) -> Result<bool> {
    Ok(coverage(u, n, cyclic)?.all_exactly_one())
}
