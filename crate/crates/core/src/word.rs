use std::fmt;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// Characters accepted as the wildcard on input. Output uses '*' by default.
pub const DIAMOND_GLYPHS: [char; 3] = ['*', '.', '◊'];

/// A non-empty word over an alphabet extended with the wildcard symbol.
///
/// Positions are 1-based in the public API, matching the usual convention
/// for factor indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialWord {
    alphabet: Alphabet,
    symbols: Vec<Symbol>,
}

impl PartialWord {
    pub fn new(symbols: Vec<Symbol>, alphabet: Alphabet) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyWord);
        }
        for s in &symbols {
            if let Symbol::Letter(x) = s {
                if !alphabet.contains(*x) {
                    return Err(Error::BadLetter {
                        letter: *x,
                        alpha: alphabet.size(),
                    });
                }
            }
        }
        Ok(PartialWord { alphabet, symbols })
    }

    /// Parses digit/letter symbols plus any of `*`, `.`, `◊` as the wildcard.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        let mut symbols = Vec::with_capacity(text.len());
        for c in text.chars() {
            if DIAMOND_GLYPHS.contains(&c) {
                symbols.push(Symbol::Diamond);
            } else if let Some(letter) = alphabet.char_to_letter(c) {
                symbols.push(Symbol::Letter(letter));
            } else {
                return Err(Error::OutOfAlphabet {
                    symbol: c,
                    alpha: alphabet.size(),
                });
            }
        }
        Self::new(symbols, alphabet)
    }

    pub fn from_letters(letters: &[u8], alphabet: Alphabet) -> Result<Self> {
        Self::new(
            letters.iter().map(|&x| Symbol::Letter(x)).collect(),
            alphabet,
        )
    }

    /// The all-wildcard word of the given length.
    pub fn all_diamonds(len: usize, alphabet: Alphabet) -> Result<Self> {
        Self::new(vec![Symbol::Diamond; len], alphabet)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructor rejects empty words
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Symbol at a 1-based position.
    pub fn symbol_at(&self, pos: usize) -> Option<Symbol> {
        (1..=self.len()).contains(&pos).then(|| self.symbols[pos - 1])
    }

    pub fn diamond_count(&self) -> usize {
        self.symbols.iter().filter(|s| s.is_diamond()).count()
    }

    /// 1-based positions of the wildcards, in increasing order.
    pub fn diamond_positions(&self) -> Vec<usize> {
        self.symbols
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_diamond())
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn render(&self) -> String {
        self.render_with_diamond('*')
    }

    pub fn render_unicode(&self) -> String {
        self.render_with_diamond('◊')
    }

    pub fn render_with_diamond(&self, glyph: char) -> String {
        self.symbols
            .iter()
            .map(|s| match s {
                Symbol::Diamond => glyph,
                Symbol::Letter(x) => self.alphabet.letter_to_char(*x),
            })
            .collect()
    }

    pub fn reversed(&self) -> Self {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        PartialWord {
            alphabet: self.alphabet,
            symbols,
        }
    }

    /// Relabels letters through `perm`, which must be a permutation of the alphabet.
    pub fn permute_letters(&self, perm: &[u8]) -> Result<Self> {
        let alpha = self.alphabet.size();
        if perm.len() != alpha {
            return Err(Error::BadParams(format!(
                "permutation has {} entries, alphabet has {}",
                perm.len(),
                alpha
            )));
        }
        let mut seen = vec![false; alpha];
        for &p in perm {
            if !self.alphabet.contains(p) || seen[p as usize] {
                return Err(Error::BadParams("not a permutation".into()));
            }
            seen[p as usize] = true;
        }
        let symbols = self
            .symbols
            .iter()
            .map(|s| match s {
                Symbol::Diamond => Symbol::Diamond,
                Symbol::Letter(x) => Symbol::Letter(perm[*x as usize]),
            })
            .collect();
        Ok(PartialWord {
            alphabet: self.alphabet,
            symbols,
        })
    }
}

impl fmt::Display for PartialWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for PartialWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialWord({}, alpha={})", self.render(), self.alphabet)
    }
}

/// The letter permutation that makes first occurrences increase left to right.
/// Letters that never occur are mapped to the remaining targets in order.
fn first_occurrence_perm(symbols: &[Symbol], alphabet: Alphabet) -> Vec<u8> {
    let alpha = alphabet.size();
    let mut perm: Vec<Option<u8>> = vec![None; alpha];
    let mut next: u8 = 0;
    for s in symbols {
        if let Symbol::Letter(x) = s {
            if perm[*x as usize].is_none() {
                perm[*x as usize] = Some(next);
                next += 1;
            }
        }
    }
    for slot in perm.iter_mut() {
        if slot.is_none() {
            *slot = Some(next);
            next += 1;
        }
    }
    perm.into_iter().map(|p| p.unwrap()).collect()
}

/// Normal form under reversal and letter permutations.
///
/// If the maximal wildcard-free prefix is longer than the maximal
/// wildcard-free suffix the word is reversed first; then letters are
/// relabelled so first occurrences increase. Idempotent, and universality
/// is invariant under both operations.
pub fn canonicalize(u: &PartialWord) -> PartialWord {
    let symbols = u.symbols();
    let first = symbols.iter().position(|s| s.is_diamond());
    let oriented = match first {
        None => u.clone(),
        Some(i) => {
            let j = symbols.iter().rposition(|s| s.is_diamond()).unwrap();
            let prefix_len = i;
            let suffix_len = symbols.len() - 1 - j;
            if prefix_len > suffix_len {
                u.reversed()
            } else {
                u.clone()
            }
        }
    };
    let perm = first_occurrence_perm(oriented.symbols(), oriented.alphabet());
    oriented.permute_letters(&perm).expect("valid permutation")
}

fn symbol_key(s: Symbol) -> u8 {
    match s {
        Symbol::Diamond => 0,
        Symbol::Letter(x) => x + 1,
    }
}

/// Normal form for cyclic words: the minimum, under rotations, reversal and
/// letter permutations, of the relabelled symbol sequence (wildcard sorts
/// before every letter). Two cyclic words have equal normal forms exactly
/// when one is a rotation of the other up to reversal and relabelling.
pub fn canonical_cyclic(u: &PartialWord) -> PartialWord {
    let n = u.len();
    let mut best: Option<Vec<Symbol>> = None;
    for dir in [u.clone(), u.reversed()] {
        for shift in 0..n {
            let mut rotated: Vec<Symbol> = Vec::with_capacity(n);
            rotated.extend_from_slice(&dir.symbols()[shift..]);
            rotated.extend_from_slice(&dir.symbols()[..shift]);
            let perm = first_occurrence_perm(&rotated, u.alphabet());
            let candidate: Vec<Symbol> = rotated
                .iter()
                .map(|s| match s {
                    Symbol::Diamond => Symbol::Diamond,
                    Symbol::Letter(x) => Symbol::Letter(perm[*x as usize]),
                })
                .collect();
            let better = match &best {
                None => true,
                Some(b) => {
                    let lhs = candidate.iter().map(|&s| symbol_key(s));
                    let rhs = b.iter().map(|&s| symbol_key(s));
                    lhs.lt(rhs)
                }
            };
            if better {
                best = Some(candidate);
            }
        }
    }
    PartialWord::new(best.unwrap(), u.alphabet()).expect("non-empty")
}

/// Extends the binary word `w` periodically to length `n` and complements
/// the final letter.
pub fn truncated_complement(w: &[u8], n: usize) -> Result<Vec<u8>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if n == 0 {
        return Err(Error::BadParams("target length must be at least 1".into()));
    }
    if w.iter().any(|&x| x > 1) {
        return Err(Error::BinaryOnly(usize::from(*w.iter().max().unwrap()) + 1));
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(w[i % w.len()]);
    }
    out[n - 1] ^= 1;
    Ok(out)
}
