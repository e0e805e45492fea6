//! Diamond templates: positional patterns for searches and verdicts.
//!
//! A template fixes the length, the wildcard cells, and optionally some
//! letters; the remaining cells are free. A search fills every free cell
//! with a letter, so a template stands for a family of candidate words that
//! share the same wildcard layout.

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::word::PartialWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    /// A wildcard in the final word.
    Diamond,
    /// A pinned letter.
    Fixed(u8),
    /// To be assigned a letter (never a wildcard) by search or propagation.
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiamondTemplate {
    alphabet: Alphabet,
    n: usize,
    cyclic: bool,
    cells: Vec<Cell>,
}

impl DiamondTemplate {
    pub fn new(alphabet: Alphabet, n: usize, cyclic: bool, cells: Vec<Cell>) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParams("factor length must be at least 1".into()));
        }
        if cells.is_empty() {
            return Err(Error::EmptyWord);
        }
        for cell in &cells {
            if let Cell::Fixed(x) = cell {
                if !alphabet.contains(*x) {
                    return Err(Error::BadLetter {
                        letter: *x,
                        alpha: alphabet.size() as usize,
                    });
                }
            }
        }
        Ok(DiamondTemplate {
            alphabet,
            n,
            cyclic,
            cells,
        })
    }

    /// Parses a template string: `?` is a free cell, a diamond glyph
    /// (`*`, `.`, `◊`) a wildcard, anything else a fixed letter.
    pub fn parse(text: &str, alphabet: Alphabet, n: usize, cyclic: bool) -> Result<Self> {
        let mut cells = Vec::new();
        for ch in text.chars() {
            if ch == '?' {
                cells.push(Cell::Free);
            } else if crate::word::DIAMOND_GLYPHS.contains(&ch) {
                cells.push(Cell::Diamond);
            } else {
                let letter = alphabet
                    .char_to_letter(ch)
                    .ok_or(Error::OutOfAlphabet {
                        symbol: ch,
                        alpha: alphabet.size() as usize,
                    })?;
                cells.push(Cell::Fixed(letter));
            }
        }
        Self::new(alphabet, n, cyclic, cells)
    }

    /// All-free template of length `len` with wildcards at the given
    /// 1-based positions.
    pub fn from_diamond_positions(
        alphabet: Alphabet,
        n: usize,
        cyclic: bool,
        len: usize,
        positions: &[usize],
    ) -> Result<Self> {
        let mut cells = vec![Cell::Free; len];
        for &p in positions {
            if p == 0 || p > len {
                return Err(Error::BadParams(format!(
                    "wildcard position {p} out of range 1..={len}"
                )));
            }
            if cells[p - 1] == Cell::Diamond {
                return Err(Error::BadParams(format!(
                    "wildcard position {p} repeated"
                )));
            }
            cells[p - 1] = Cell::Diamond;
        }
        Self::new(alphabet, n, cyclic, cells)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// 1-based cell access.
    pub fn cell(&self, position: usize) -> Cell {
        self.cells[position - 1]
    }

    pub fn diamond_positions(&self) -> Vec<usize> {
        self.positions_of(|c| matches!(c, Cell::Diamond))
    }

    pub fn free_positions(&self) -> Vec<usize> {
        self.positions_of(|c| matches!(c, Cell::Free))
    }

    pub fn fixed_positions(&self) -> Vec<usize> {
        self.positions_of(|c| matches!(c, Cell::Fixed(_)))
    }

    fn positions_of(&self, pred: impl Fn(&Cell) -> bool) -> Vec<usize> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| pred(c))
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Copy with one cell replaced.
    pub(crate) fn with_cell(&self, position: usize, cell: Cell) -> Self {
        let mut t = self.clone();
        t.cells[position - 1] = cell;
        t
    }

    pub fn reversed(&self) -> Self {
        let mut t = self.clone();
        t.cells.reverse();
        t
    }

    /// Whether the cell pattern reads the same in both directions.
    pub fn is_mirror_symmetric(&self) -> bool {
        self.cells
            .iter()
            .zip(self.cells.iter().rev())
            .all(|(a, b)| a == b)
    }

    /// Whether `word` is a completion of this template: wildcards line up,
    /// fixed letters match, free cells hold any letter.
    pub fn matches(&self, word: &PartialWord) -> bool {
        if word.len() != self.len() || word.alphabet() != self.alphabet {
            return false;
        }
        self.cells
            .iter()
            .zip(word.symbols())
            .all(|(cell, sym)| match (cell, sym) {
                (Cell::Diamond, Symbol::Diamond) => true,
                (Cell::Fixed(x), Symbol::Letter(y)) => x == y,
                (Cell::Free, Symbol::Letter(_)) => true,
                _ => false,
            })
    }

    /// The template as a partial word, available once no free cell remains.
    pub fn as_word(&self) -> Option<PartialWord> {
        let symbols: Option<Vec<Symbol>> = self
            .cells
            .iter()
            .map(|c| match c {
                Cell::Diamond => Some(Symbol::Diamond),
                Cell::Fixed(x) => Some(Symbol::Letter(*x)),
                Cell::Free => None,
            })
            .collect();
        PartialWord::new(symbols?, self.alphabet).ok()
    }

    pub fn render(&self) -> String {
        self.cells
            .iter()
            .map(|c| match c {
                Cell::Diamond => '*',
                Cell::Fixed(x) => self.alphabet.letter_to_char(*x),
                Cell::Free => '?',
            })
            .collect()
    }
}

impl std::fmt::Display for DiamondTemplate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}
