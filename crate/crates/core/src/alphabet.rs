use std::fmt;

use crate::error::{Error, Result};

/// A finite alphabet {0, 1, ..., size-1} with 2 <= size <= 36.
///
/// Letters render as '0'..'9' followed by 'a'..'z', so words stay plain text
/// for every supported size.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    size: u8,
}

impl Alphabet {
    pub const MAX_SIZE: usize = 36;
    pub const BINARY: Alphabet = Alphabet { size: 2 };

    pub fn new(size: usize) -> Result<Self> {
        if !(2..=Self::MAX_SIZE).contains(&size) {
            return Err(Error::BadAlphabet(size));
        }
        Ok(Alphabet { size: size as u8 })
    }

    pub fn size(&self) -> usize {
        self.size as usize
    }

    pub fn is_binary(&self) -> bool {
        self.size == 2
    }

    pub fn contains(&self, letter: u8) -> bool {
        letter < self.size
    }

    pub fn letters(&self) -> impl Iterator<Item = u8> {
        0..self.size
    }

    /// alpha^exp, or None on overflow / when it exceeds u64.
    pub fn pow(&self, exp: usize) -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..exp {
            acc = acc.checked_mul(self.size as u64)?;
        }
        Some(acc)
    }

    pub fn letter_to_char(&self, letter: u8) -> char {
        debug_assert!(self.contains(letter));
        if letter < 10 {
            (b'0' + letter) as char
        } else {
            (b'a' + letter - 10) as char
        }
    }

    pub fn char_to_letter(&self, c: char) -> Option<u8> {
        let value = match c {
            '0'..='9' => c as u8 - b'0',
            'a'..='z' => c as u8 - b'a' + 10,
            _ => return None,
        };
        self.contains(value).then_some(value)
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({})", self.size)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.size)
    }
}

/// One position of a partial word: a concrete letter or the wildcard.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Symbol {
    Letter(u8),
    Diamond,
}

impl Symbol {
    pub fn is_diamond(&self) -> bool {
        matches!(self, Symbol::Diamond)
    }

    pub fn letter(&self) -> Option<u8> {
        match self {
            Symbol::Letter(x) => Some(*x),
            Symbol::Diamond => None,
        }
    }
}
