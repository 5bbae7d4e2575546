//! Ordered alphabets, words and the radix (shortlex) order.
//!
//! Letters are stored as indices into the alphabet's symbol sequence, so the
//! natural order on `usize` is the alphabet order. All algorithms in the crate
//! work on `&[Letter]`; [`Word`] pairs a letter sequence with its alphabet for
//! the public, alphabet-checked entry points.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a symbol in its [`OrderedAlphabet`]. Smaller index = smaller symbol.
pub type Letter = usize;

/// A finite, totally ordered set of symbols. Position in the sequence defines
/// the order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderedAlphabet {
    symbols: Arc<[String]>,
}

impl OrderedAlphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::EmptySymbol);
            }
            if symbols[..i].contains(s) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Self {
            symbols: symbols.into(),
        })
    }

    /// Alphabet `{"0", "1", ...}` with `size` decimal-digit symbols.
    pub fn digits(size: usize) -> Self {
        Self::new((0..size).map(|i| i.to_string())).expect("digits are distinct")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter]
    }

    pub fn letter(&self, symbol: &str) -> Option<Letter> {
        self.symbols.iter().position(|s| s == symbol)
    }

    pub fn letters(&self) -> std::ops::Range<Letter> {
        0..self.len()
    }

    /// Same symbols, opposite order. Letter `a` becomes `len - 1 - a`.
    pub fn reversed(&self) -> Self {
        Self {
            symbols: self
                .symbols
                .iter()
                .rev()
                .cloned()
                .collect::<Vec<_>>()
                .into(),
        }
    }

    /// Prepends `symbol` as the new minimum. Existing letters shift up by one.
    pub fn with_minimum(&self, symbol: &str) -> Result<Self> {
        if self.letter(symbol).is_some() {
            return Err(Error::SymbolCollision(symbol.to_string()));
        }
        Self::new(std::iter::once(symbol.to_string()).chain(self.symbols.iter().cloned()))
    }

    /// True if every symbol is a single character, so words can be written
    /// without separators.
    pub fn is_single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word. Without a separator every character is one symbol;
    /// with one, the text is split on it. The empty string is the empty word.
    pub fn parse(&self, text: &str, sep: Option<&str>) -> Result<Word> {
        let mut letters = Vec::new();
        if !text.is_empty() {
            match sep {
                Some(sep) if !sep.is_empty() => {
                    for part in text.split(sep) {
                        letters.push(self.lookup(part)?);
                    }
                }
                _ => {
                    let mut buf = [0u8; 4];
                    for c in text.chars() {
                        letters.push(self.lookup(c.encode_utf8(&mut buf))?);
                    }
                }
            }
        }
        Ok(Word::new(self.clone(), letters))
    }

    fn lookup(&self, symbol: &str) -> Result<Letter> {
        self.letter(symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    /// Renders letters by concatenating symbols, optionally joined by `sep`.
    pub fn render(&self, letters: &[Letter], sep: &str) -> String {
        letters
            .iter()
            .map(|&a| self.symbol(a))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Debug for OrderedAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.symbols.iter()).finish()
    }
}

/// A word over an [`OrderedAlphabet`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: OrderedAlphabet,
    letters: Vec<Letter>,
}

impl Word {
    /// # Panics
    /// If a letter is out of range for the alphabet.
    pub fn new(alphabet: OrderedAlphabet, letters: Vec<Letter>) -> Self {
        assert!(
            letters.iter().all(|&a| a < alphabet.len()),
            "letter out of range for alphabet"
        );
        Self { alphabet, letters }
    }

    pub fn empty(alphabet: OrderedAlphabet) -> Self {
        Self::new(alphabet, Vec::new())
    }

    pub fn alphabet(&self) -> &OrderedAlphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.alphabet.is_single_char() {
            ""
        } else {
            " "
        };
        f.write_str(&self.alphabet.render(&self.letters, sep))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_string())
    }
}

/// Radix order on letter sequences: shorter first, then lexicographic.
pub fn radix_cmp(u: &[Letter], v: &[Letter]) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| u.cmp(v))
}

/// Radix order on words over the same alphabet.
pub fn radix_compare(u: &Word, v: &Word) -> Result<Ordering> {
    if u.alphabet != v.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    Ok(radix_cmp(&u.letters, &v.letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin() -> OrderedAlphabet {
        OrderedAlphabet::digits(2)
    }

    fn w(s: &str) -> Word {
        bin().parse(s, None).unwrap()
    }

    #[test]
    fn radix_examples() {
        assert_eq!(radix_compare(&w(""), &w("0")).unwrap(), Ordering::Less);
        assert_eq!(radix_compare(&w("01"), &w("10")).unwrap(), Ordering::Less);
        assert_eq!(radix_compare(&w("10"), &w("011")).unwrap(), Ordering::Less);
        assert_eq!(radix_compare(&w("11"), &w("11")).unwrap(), Ordering::Equal);
    }

    #[test]
    fn mismatched_alphabets_rejected() {
        let other = OrderedAlphabet::new(["a", "b"]).unwrap();
        let u = other.parse("ab", None).unwrap();
        assert!(matches!(
            radix_compare(&w("01"), &u),
            Err(Error::AlphabetMismatch)
        ));
    }

    #[test]
    fn alphabet_validation() {
        assert!(matches!(
            OrderedAlphabet::new(["a", "a"]),
            Err(Error::DuplicateSymbol(_))
        ));
        assert!(matches!(
            OrderedAlphabet::new(["a", ""]),
            Err(Error::EmptySymbol)
        ));
        assert!(matches!(
            bin().with_minimum("1"),
            Err(Error::SymbolCollision(_))
        ));
    }

    #[test]
    fn parse_with_separator() {
        let abc = OrderedAlphabet::new(["10", "#"]).unwrap();
        let word = abc.parse("10,#,#", Some(",")).unwrap();
        assert_eq!(word.letters(), &[0, 1, 1]);
        assert_eq!(word.to_string(), "10 # #");
        assert!(abc.parse("x", None).is_err());
    }

    #[test]
    fn reversal_flips_order() {
        let rev = bin().reversed();
        assert_eq!(rev.symbols(), &["1".to_string(), "0".to_string()]);
        let padded = bin().with_minimum("$").unwrap();
        assert_eq!(padded.letter("$"), Some(0));
        assert_eq!(padded.letter("1"), Some(2));
    }
}
