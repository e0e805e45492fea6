//! Closed-form constructors of universal partial words.
//!
//! Each family fixes a short prefix containing the wildcards, removes the
//! factors that prefix already covers from the de Bruijn graph, and completes
//! the word along an Eulerian path of the remainder. Every constructor
//! re-verifies its own output before returning; a failure here means a bug,
//! not bad input, and surfaces as [`Error::SelfCheck`].

use crate::alphabet::{Alphabet, Symbol};
use crate::coverage::{encode_word, is_universal, window_expansion};
use crate::debruijn::DeBruijnGraph;
use crate::error::{Error, Result};
use crate::word::{truncated_complement, PartialWord};

/// The construction families with a known closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Single wildcard at position 1, prefix `◊0^(n-1)1`.
    Pos1,
    /// Single wildcard at position k in 2..=n-1, prefix `01^(k-2)◊c(01^(k-1),n)`.
    PosK,
    /// Two wildcards at positions 1 and 2n-1, prefix `◊0^(n-1)1^(n-2)◊10^(n-2)1`.
    TwoDiamonds,
    /// The literal word `◊^(n-1)01^n`.
    Nm1Diamonds,
    /// The literal word `◊^n`.
    Trivial,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Pos1 => "pos1",
            Family::PosK => "posk",
            Family::TwoDiamonds => "two_diamonds",
            Family::Nm1Diamonds => "nm1_diamonds",
            Family::Trivial => "trivial",
        }
    }

    pub const ALL: [Family; 5] = [
        Family::Pos1,
        Family::PosK,
        Family::TwoDiamonds,
        Family::Nm1Diamonds,
        Family::Trivial,
    ];
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "pos1" => Ok(Family::Pos1),
            "posk" => Ok(Family::PosK),
            "two_diamonds" | "two" => Ok(Family::TwoDiamonds),
            "nm1_diamonds" | "nm1" => Ok(Family::Nm1Diamonds),
            "trivial" => Ok(Family::Trivial),
            other => Err(Error::BadParams(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionRequest {
    pub family: Family,
    pub n: usize,
    /// Wildcard position, required by [`Family::PosK`] and ignored elsewhere.
    pub k: Option<usize>,
    pub alphabet: Alphabet,
}

/// Dispatches to the family constructors. Only [`Family::Trivial`] supports
/// alphabets beyond binary.
pub fn construct(req: &ConstructionRequest) -> Result<PartialWord> {
    if req.family != Family::Trivial && !req.alphabet.is_binary() {
        return Err(Error::BadParams(format!(
            "family {} is defined for the binary alphabet only",
            req.family
        )));
    }
    match req.family {
        Family::Pos1 => construct_pos1(req.n),
        Family::PosK => {
            let k = req
                .k
                .ok_or_else(|| Error::BadParams("family posk requires k".into()))?;
            construct_posk(req.n, k)
        }
        Family::TwoDiamonds => construct_two_diamonds(req.n),
        Family::Nm1Diamonds => construct_nm1_diamonds(req.n),
        Family::Trivial => trivial(req.n, req.alphabet),
    }
}

fn letters(letter: u8, count: usize) -> impl Iterator<Item = Symbol> {
    std::iter::repeat(Symbol::Letter(letter)).take(count)
}

/// Completes a wildcard prefix into a universal word: removes every factor
/// the prefix covers from the de Bruijn graph of order n-1 and appends the
/// letters of an Eulerian path of the remainder. The path sets off from the
/// vertex spelled by the prefix's last n-1 letters and must land on `end`.
/// A missing path means the construction itself is broken, so those errors
/// surface as [`Error::SelfCheck`].
fn complete_prefix(prefix: &PartialWord, n: usize, end: &[u8]) -> Result<PartialWord> {
    let alphabet = prefix.alphabet();
    let m = n - 1;
    let mut covered: Vec<Vec<u8>> = Vec::new();
    for s in 1..=prefix.len() - n + 1 {
        covered.extend(window_expansion(prefix, s, n, false)?.words());
    }
    let graph = DeBruijnGraph::build(alphabet, m)?.remove_edges(&covered)?;
    let tail: Vec<u8> = prefix.symbols()[prefix.len() - m..]
        .iter()
        .map(|s| {
            s.letter()
                .ok_or_else(|| Error::SelfCheck("construction prefix ends in a wildcard".into()))
        })
        .collect::<Result<_>>()?;
    let walk = graph
        .eulerian_path(encode_word(&tail, alphabet), encode_word(end, alphabet))
        .map_err(|e| match e {
            Error::NoEulerianPath(issue) => Error::SelfCheck(format!(
                "construction graph admits no Eulerian completion: {issue}"
            )),
            Error::EmptyWalk => {
                Error::SelfCheck("construction graph has no edges left".into())
            }
            other => other,
        })?;
    let mut symbols = prefix.symbols().to_vec();
    symbols.extend(walk.edge_letters().into_iter().map(Symbol::Letter));
    PartialWord::new(symbols, alphabet)
}

/// Contract check shared by all constructors: wildcard layout, total length,
/// prefix, and universality.
fn check_output(
    word: PartialWord,
    family: Family,
    n: usize,
    diamonds: &[usize],
    length: usize,
    prefix: &PartialWord,
) -> Result<PartialWord> {
    let fail = |what: &str| {
        Err(Error::SelfCheck(format!(
            "{family} output for n={n} violates its contract: {what}"
        )))
    };
    if word.len() != length {
        return fail("wrong length");
    }
    if word.diamond_positions() != diamonds {
        return fail("wrong wildcard positions");
    }
    if word.symbols()[..prefix.len()] != *prefix.symbols() {
        return fail("wrong prefix");
    }
    if !is_universal(&word, n, false)? {
        return fail("not universal");
    }
    Ok(word)
}

/// Universal word with a single wildcard at position 1: `◊0^(n-1)1` completed
/// along an Eulerian path. Length 2^n + n - 2.
pub fn construct_pos1(n: usize) -> Result<PartialWord> {
    if n < 2 {
        return Err(Error::BadParams(format!("pos1 requires n >= 2, got {n}")));
    }
    let alphabet = Alphabet::BINARY;
    let mut prefix = vec![Symbol::Diamond];
    prefix.extend(letters(0, n - 1));
    prefix.extend(letters(1, 1));
    let prefix = PartialWord::new(prefix, alphabet)?;
    // The path runs from 0^(n-2)1 to 10^(n-2).
    let mut end = vec![1u8];
    end.extend(std::iter::repeat(0).take(n - 2));
    let word = complete_prefix(&prefix, n, &end)?;
    // Any universal word with its single wildcard first must continue with
    // n-1 equal letters and then the complementary one; assert it on our own
    // output as a sanity check.
    let letters: Vec<u8> = word.symbols()[1..=n]
        .iter()
        .map(|s| s.letter().unwrap())
        .collect();
    if letters[..n - 1].iter().any(|&x| x != letters[0]) || letters[n - 1] == letters[0] {
        return Err(Error::SelfCheck(
            "pos1 output breaks the forced prefix shape".into(),
        ));
    }
    check_output(word, Family::Pos1, n, &[1], (1 << n) + n - 2, &prefix)
}

/// Universal word with a single wildcard at position k, 2 <= k <= n-1:
/// `01^(k-2)◊c(01^(k-1),n)` completed along an Eulerian path.
/// Length 2^n + n - 1 - k.
pub fn construct_posk(n: usize, k: usize) -> Result<PartialWord> {
    if n < 3 || k < 2 || k > n - 1 {
        return Err(Error::BadParams(format!(
            "posk requires n >= 3 and 2 <= k <= n-1, got n={n} k={k}"
        )));
    }
    let alphabet = Alphabet::BINARY;
    let mut prefix = vec![Symbol::Letter(0)];
    prefix.extend(letters(1, k - 2));
    prefix.push(Symbol::Diamond);
    let mut base = vec![0u8];
    base.extend(std::iter::repeat(1).take(k - 1));
    prefix.extend(
        truncated_complement(&base, n)?
            .into_iter()
            .map(Symbol::Letter),
    );
    let prefix = PartialWord::new(prefix, alphabet)?;
    // The Eulerian completion argument needs n >= 5; the smaller cases are
    // pinned explicit words.
    let word = match (n, k) {
        (3, 2) => PartialWord::parse("0*011100", alphabet)?,
        (4, 2) => PartialWord::parse("0*010011011110000", alphabet)?,
        (4, 3) => PartialWord::parse("01*0111100001010", alphabet)?,
        _ => {
            // The path ends at the prefix's opening n-1 letters with the
            // wildcard read as 0.
            let end: Vec<u8> = prefix.symbols()[..n - 1]
                .iter()
                .map(|s| s.letter().unwrap_or(0))
                .collect();
            complete_prefix(&prefix, n, &end)?
        }
    };
    check_output(word, Family::PosK, n, &[k], (1 << n) + n - 1 - k, &prefix)
}

/// Universal word with two wildcards at positions 1 and 2n-1:
/// `◊0^(n-1)1^(n-2)◊10^(n-2)1` completed along an Eulerian path.
/// Length 2^n - 2.
pub fn construct_two_diamonds(n: usize) -> Result<PartialWord> {
    if n < 4 {
        return Err(Error::BadParams(format!(
            "two_diamonds requires n >= 4, got {n}"
        )));
    }
    let alphabet = Alphabet::BINARY;
    let mut prefix = vec![Symbol::Diamond];
    prefix.extend(letters(0, n - 1));
    prefix.extend(letters(1, n - 2));
    prefix.push(Symbol::Diamond);
    prefix.extend(letters(1, 1));
    prefix.extend(letters(0, n - 2));
    prefix.extend(letters(1, 1));
    let prefix = PartialWord::new(prefix, alphabet)?;
    // The path runs from 0^(n-2)1 to 01^(n-2).
    let mut end = vec![0u8];
    end.extend(std::iter::repeat(1).take(n - 2));
    let word = complete_prefix(&prefix, n, &end)?;
    check_output(
        word,
        Family::TwoDiamonds,
        n,
        &[1, 2 * n - 1],
        (1 << n) - 2,
        &prefix,
    )
}

/// The literal universal word `◊^(n-1)01^n`. Length 2n.
pub fn construct_nm1_diamonds(n: usize) -> Result<PartialWord> {
    if n < 2 {
        return Err(Error::BadParams(format!(
            "nm1_diamonds requires n >= 2, got {n}"
        )));
    }
    let alphabet = Alphabet::BINARY;
    let mut symbols = vec![Symbol::Diamond; n - 1];
    symbols.push(Symbol::Letter(0));
    symbols.extend(letters(1, n));
    let word = PartialWord::new(symbols, alphabet)?;
    let diamonds: Vec<usize> = (1..n).collect();
    let prefix = word.clone();
    check_output(word, Family::Nm1Diamonds, n, &diamonds, 2 * n, &prefix)
}

/// The all-wildcard word `◊^n`: universal for every n in linear mode and for
/// n = 1 only in cyclic mode.
pub fn trivial(n: usize, alphabet: Alphabet) -> Result<PartialWord> {
    if n == 0 {
        return Err(Error::BadParams("trivial requires n >= 1".into()));
    }
    let word = PartialWord::all_diamonds(n, alphabet)?;
    let diamonds: Vec<usize> = (1..=n).collect();
    let prefix = word.clone();
    check_output(word, Family::Trivial, n, &diamonds, n, &prefix)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(w: &PartialWord) -> String {
        w.render()
    }

    #[test]
    fn pos1_smallest_case_is_pinned() {
        assert_eq!(render(&construct_pos1(2).unwrap()), "*011");
    }

    #[test]
    fn pos1_contract_holds() {
        for n in 2..=10 {
            let w = construct_pos1(n).unwrap();
            assert_eq!(w.len(), (1 << n) + n - 2);
            assert_eq!(w.diamond_positions(), vec![1]);
            let mut expect = String::from("*");
            expect.push_str(&"0".repeat(n - 1));
            expect.push('1');
            assert!(render(&w).starts_with(&expect), "n={n}");
        }
    }

    #[test]
    fn pos1_rejects_small_n() {
        assert!(matches!(construct_pos1(1), Err(Error::BadParams(_))));
    }

    #[test]
    fn posk_explicit_small_words() {
        assert_eq!(render(&construct_posk(3, 2).unwrap()), "0*011100");
        assert_eq!(render(&construct_posk(4, 2).unwrap()), "0*010011011110000");
        assert_eq!(render(&construct_posk(4, 3).unwrap()), "01*0111100001010");
    }

    #[test]
    fn posk_contract_holds() {
        for n in 5..=9 {
            for k in 2..n {
                let w = construct_posk(n, k).unwrap();
                assert_eq!(w.len(), (1 << n) + n - 1 - k, "n={n} k={k}");
                assert_eq!(w.diamond_positions(), vec![k], "n={n} k={k}");
                let mut expect = String::from("0");
                expect.push_str(&"1".repeat(k - 2));
                expect.push('*');
                let c: String = truncated_complement(
                    &[&[0u8][..], &vec![1u8; k - 1]].concat(),
                    n,
                )
                .unwrap()
                .iter()
                .map(|&x| char::from(b'0' + x))
                .collect();
                expect.push_str(&c);
                assert!(render(&w).starts_with(&expect), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn posk_rejects_bad_positions() {
        assert!(matches!(construct_posk(2, 2), Err(Error::BadParams(_))));
        assert!(matches!(construct_posk(3, 1), Err(Error::BadParams(_))));
        assert!(matches!(construct_posk(3, 3), Err(Error::BadParams(_))));
        assert!(matches!(construct_posk(5, 5), Err(Error::BadParams(_))));
    }

    #[test]
    fn two_diamonds_n4_has_a_unique_completion() {
        assert_eq!(
            render(&construct_two_diamonds(4).unwrap()),
            "*00011*1001011"
        );
    }

    #[test]
    fn two_diamonds_contract_holds() {
        for n in 4..=10 {
            let w = construct_two_diamonds(n).unwrap();
            assert_eq!(w.len(), (1 << n) - 2, "n={n}");
            assert_eq!(w.diamond_positions(), vec![1, 2 * n - 1], "n={n}");
            let mut expect = String::from("*");
            expect.push_str(&"0".repeat(n - 1));
            expect.push_str(&"1".repeat(n - 2));
            expect.push('*');
            expect.push('1');
            expect.push_str(&"0".repeat(n - 2));
            expect.push('1');
            assert!(render(&w).starts_with(&expect), "n={n}");
        }
    }

    #[test]
    fn two_diamonds_rejects_small_n() {
        assert!(matches!(
            construct_two_diamonds(3),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn nm1_diamonds_is_the_literal_word() {
        assert_eq!(render(&construct_nm1_diamonds(2).unwrap()), "*011");
        assert_eq!(render(&construct_nm1_diamonds(3).unwrap()), "**0111");
        assert_eq!(render(&construct_nm1_diamonds(4).unwrap()), "***01111");
        assert!(matches!(
            construct_nm1_diamonds(1),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn trivial_is_all_wildcards() {
        let a = Alphabet::BINARY;
        assert_eq!(render(&trivial(3, a).unwrap()), "***");
        assert!(is_universal(&trivial(1, a).unwrap(), 1, true).unwrap());
        assert!(!is_universal(&trivial(2, a).unwrap(), 2, true).unwrap());
        let t = Alphabet::new(3).unwrap();
        assert!(is_universal(&trivial(4, t).unwrap(), 4, false).unwrap());
        assert!(matches!(trivial(0, a), Err(Error::BadParams(_))));
    }

    #[test]
    fn dispatcher_guards_alphabet_and_k() {
        let ternary = Alphabet::new(3).unwrap();
        let req = ConstructionRequest {
            family: Family::Pos1,
            n: 4,
            k: None,
            alphabet: ternary,
        };
        assert!(matches!(construct(&req), Err(Error::BadParams(_))));
        let req = ConstructionRequest {
            family: Family::PosK,
            n: 5,
            k: None,
            alphabet: Alphabet::BINARY,
        };
        assert!(matches!(construct(&req), Err(Error::BadParams(_))));
        let req = ConstructionRequest {
            family: Family::PosK,
            n: 5,
            k: Some(3),
            alphabet: Alphabet::BINARY,
        };
        assert_eq!(construct(&req).unwrap(), construct_posk(5, 3).unwrap());
    }

    #[test]
    fn family_round_trips_through_names() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert_eq!("two-diamonds".parse::<Family>().unwrap(), Family::TwoDiamonds);
        assert!("bogus".parse::<Family>().is_err());
    }
}
