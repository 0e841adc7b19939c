//! Presentation letters, words over them, and the textual word syntax:
//!
//! ```text
//! WORD  := "1" | TOKEN (WS TOKEN)*
//! TOKEN := KIND "[" INT ("," INT)? "]"
//! ```
//!
//! `"1"` is the empty word. Letter kinds follow the presentation alphabets,
//! not the names of the concrete maps.

use std::fmt;
use std::str::FromStr;

use crate::chain_maps::{identity, ChainSize, Family, PartialMap};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LetterKind {
    A,
    B,
    E,
    F,
}

impl LetterKind {
    pub fn as_char(self) -> char {
        match self {
            LetterKind::A => 'a',
            LetterKind::B => 'b',
            LetterKind::E => 'e',
            LetterKind::F => 'f',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            'a' => Some(LetterKind::A),
            'b' => Some(LetterKind::B),
            'e' => Some(LetterKind::E),
            'f' => Some(LetterKind::F),
            _ => None,
        }
    }
}

/// One presentation letter such as `e[1,3]` or `a[2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorSymbol {
    pub kind: LetterKind,
    pub first: usize,
    pub second: Option<usize>,
}

impl GeneratorSymbol {
    pub const fn single(kind: LetterKind, i: usize) -> Self {
        GeneratorSymbol {
            kind,
            first: i,
            second: None,
        }
    }

    pub const fn pair(kind: LetterKind, i: usize, j: usize) -> Self {
        GeneratorSymbol {
            kind,
            first: i,
            second: Some(j),
        }
    }

    /// Checks the letter against the alphabet of `fam` on a chain of size `n`.
    pub fn validate(&self, fam: Family, n: ChainSize) -> Result<()> {
        let n = n.get();
        let ok = match (fam, self.kind, self.second) {
            (Family::D, LetterKind::E, Some(j)) | (Family::ID, LetterKind::A, Some(j)) => {
                1 <= self.first && self.first < j && j <= n
            }
            (Family::ID, LetterKind::F, None)
            | (Family::IC, LetterKind::E, None)
            | (Family::PC, LetterKind::F, None) => (1..=n).contains(&self.first),
            (Family::C | Family::PC, LetterKind::E, None) | (Family::IC, LetterKind::A, None) => {
                1 <= self.first && self.first < n
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(invalid(format!(
                "letter {self} is not valid for {fam} with n = {n}"
            )))
        }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.second {
            Some(j) => write!(f, "{}[{},{}]", self.kind.as_char(), self.first, j),
            None => write!(f, "{}[{}]", self.kind.as_char(), self.first),
        }
    }
}

impl FromStr for GeneratorSymbol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { text: s, pos: 0 };
        let sym = p.token()?;
        if p.pos != s.len() {
            return Err(p.error("trailing characters after token"));
        }
        Ok(sym)
    }
}

/// All letters of the presentation alphabet, ascending by (kind, indices).
pub fn alphabet(fam: Family, n: ChainSize) -> Vec<GeneratorSymbol> {
    use LetterKind::*;
    let n = n.get();
    let singles = |kind, hi: usize| (1..=hi).map(move |i| GeneratorSymbol::single(kind, i));
    let pairs = |kind| {
        (1..=n).flat_map(move |i| ((i + 1)..=n).map(move |j| GeneratorSymbol::pair(kind, i, j)))
    };
    let mut out: Vec<GeneratorSymbol> = match fam {
        Family::D => pairs(E).collect(),
        Family::PD => Vec::new(),
        Family::ID => singles(F, n).chain(pairs(A)).collect(),
        Family::C => singles(E, n - 1).collect(),
        Family::IC => singles(E, n).chain(singles(A, n - 1)).collect(),
        Family::PC => singles(F, n).chain(singles(E, n - 1)).collect(),
    };
    out.sort();
    out
}

/// A word over the alphabet of one family; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    family: Family,
    n: ChainSize,
    letters: Vec<GeneratorSymbol>,
}

impl Word {
    pub fn new(family: Family, n: ChainSize, letters: Vec<GeneratorSymbol>) -> Result<Self> {
        for l in &letters {
            l.validate(family, n)?;
        }
        Ok(Word { family, n, letters })
    }

    pub(crate) fn from_valid(family: Family, n: ChainSize, letters: Vec<GeneratorSymbol>) -> Self {
        Word { family, n, letters }
    }

    pub fn empty(family: Family, n: ChainSize) -> Self {
        Word {
            family,
            n,
            letters: Vec::new(),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> ChainSize {
        self.n
    }

    pub fn letters(&self) -> &[GeneratorSymbol] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<GeneratorSymbol> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if (self.family, self.n) != (other.family, other.n) {
            return Err(invalid("cannot concatenate words of different monoids"));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word::from_valid(self.family, self.n, letters))
    }

    /// A word of the same monoid with different letters.
    pub fn with_letters(&self, letters: Vec<GeneratorSymbol>) -> Result<Word> {
        Word::new(self.family, self.n, letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.letters))
    }
}

/// Canonical text for a letter sequence; `"1"` for the empty sequence.
pub fn format_letters(letters: &[GeneratorSymbol]) -> String {
    if letters.is_empty() {
        return "1".to_owned();
    }
    letters
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn format_word(w: &Word) -> String {
    w.to_string()
}

pub fn parse_word(text: &str, fam: Family, n: ChainSize) -> Result<Word> {
    let letters = parse_letters(text)?;
    Word::new(fam, n, letters)
}

/// Parses word syntax without checking letters against any alphabet.
pub fn parse_letters(text: &str) -> Result<Vec<GeneratorSymbol>> {
    let mut p = Parser { text, pos: 0 };
    p.skip_ws();
    if p.rest().starts_with('1') {
        p.pos += 1;
        p.skip_ws();
        if !p.at_end() {
            return Err(p.error("the identity word \"1\" cannot be combined with letters"));
        }
        return Ok(Vec::new());
    }
    let mut letters = Vec::new();
    loop {
        letters.push(p.token()?);
        let before = p.pos;
        p.skip_ws();
        if p.at_end() {
            return Ok(letters);
        }
        if p.pos == before {
            return Err(p.error("expected whitespace between letters"));
        }
    }
}

/// Left-to-right product of the concrete generators.
pub fn evaluate(w: &Word) -> PartialMap {
    let gens: Vec<PartialMap> = w
        .letters
        .iter()
        .map(|&l| {
            crate::chain_maps::generator(w.family, l, w.n).expect("word letters are validated")
        })
        .collect();
    gens.iter().fold(identity(w.n), |acc, g| acc.then(g))
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos == self.text.len()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_owned(),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn int(&mut self) -> Result<usize> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        let value = self.rest()[..digits]
            .parse()
            .map_err(|_| self.error("integer out of range"))?;
        self.pos += digits;
        Ok(value)
    }

    fn token(&mut self) -> Result<GeneratorSymbol> {
        let kind = self
            .rest()
            .chars()
            .next()
            .and_then(LetterKind::from_char)
            .ok_or_else(|| self.error("expected a letter kind (a, b, e or f)"))?;
        self.pos += 1;
        self.expect('[')?;
        let first = self.int()?;
        let second = if self.rest().starts_with(',') {
            self.pos += 1;
            Some(self.int()?)
        } else {
            None
        };
        self.expect(']')?;
        Ok(GeneratorSymbol {
            kind,
            first,
            second,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: usize) -> ChainSize {
        ChainSize::new(k).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_word("e[1,2] e[1,3]", Family::D, n(3)).unwrap().len(),
            2
        );
        assert!(parse_word("1", Family::C, n(4)).unwrap().is_empty());
        assert!(matches!(
            parse_word("e[3,2]", Family::D, n(3)),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            parse_word("e[1,2]e[1,3]", Family::D, n(3)),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_word("", Family::D, n(3)),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_word("1 e[1]", Family::C, n(3)),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_word("x[1]", Family::C, n(3)),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_word("e[1", Family::C, n(3)),
            Err(Error::Syntax { .. })
        ));
        // Wrong kind for the family.
        assert!(parse_word("a[1]", Family::PC, n(3)).is_err());
        assert!(parse_word("e[3]", Family::IC, n(3)).is_ok());
        assert!(parse_word("e[3]", Family::PC, n(3)).is_err());
    }

    #[test]
    fn format_examples() {
        assert_eq!(Word::empty(Family::D, n(3)).to_string(), "1");
        let w = parse_word("e[1,2] e[2,3]", Family::D, n(3)).unwrap();
        assert_eq!(format_word(&w), "e[1,2] e[2,3]");
        let messy = parse_word("  e[1,2]\t  e[2,3] ", Family::D, n(3)).unwrap();
        assert_eq!(messy.to_string(), "e[1,2] e[2,3]");
        assert_eq!(parse_word(" 1 ", Family::D, n(3)).unwrap().to_string(), "1");
    }

    #[test]
    fn evaluate_examples() {
        let w = parse_word("e[1,2] e[1,3]", Family::D, n(3)).unwrap();
        assert_eq!(evaluate(&w).images(), [1, 1, 1]);
        assert_eq!(
            evaluate(&parse_word("1", Family::PC, n(3)).unwrap()),
            identity(n(3))
        );
        let aa = evaluate(&parse_word("a[1] a[1]", Family::IC, n(3)).unwrap());
        let ee = evaluate(&parse_word("e[1] e[2]", Family::IC, n(3)).unwrap());
        assert_eq!(aa.images(), [0, 0, 3]);
        assert_eq!(aa, ee);
    }

    #[test]
    fn alphabets() {
        let names = |fam, k| {
            alphabet(fam, n(k))
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        };
        assert_eq!(names(Family::D, 3), ["e[1,2]", "e[1,3]", "e[2,3]"]);
        assert_eq!(names(Family::IC, 2), ["a[1]", "e[1]", "e[2]"]);
        assert_eq!(names(Family::ID, 2), ["a[1,2]", "f[1]", "f[2]"]);
        assert!(alphabet(Family::D, n(1)).is_empty());
        assert!(alphabet(Family::C, n(1)).is_empty());
        assert!(alphabet(Family::PD, n(4)).is_empty());
        for fam in Family::ALL {
            for k in 1..5 {
                for l in alphabet(fam, n(k)) {
                    l.validate(fam, n(k)).unwrap();
                }
            }
        }
    }
}
