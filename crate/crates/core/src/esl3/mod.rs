//! ESL₃(ℤ): integer 3×3 matrices of determinant ±1.
//!
//! Holds the named generator catalog, words over it, the relation registry
//! and a bounded Cayley-graph search for short words.

mod claims;
mod search;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arith::Ring;
use crate::matrix::{is_unit, MatrixError, SquareMatrix};

pub use claims::{
    centrality_check, conjugation_closure_check, registry_claims, run_claim_registry, run_claims,
    CentralityOutcome, Claim, Form, COMMUTATOR_CONVENTION,
};
pub use search::{
    bounded_word_search, generation_check, GenerationOutcome, SearchConfig, DEFAULT_ENTRY_CAP,
    DEFAULT_NODE_LIMIT, MAX_SEARCH_LEN,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Esl3Error {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("search explored more than {limit} states")]
    SearchBudgetExceeded { limit: usize },
    #[error("word length {0} exceeds the search limit")]
    InvalidLength(usize),
    #[error("cannot parse word letter {0:?}")]
    BadLetter(String),
    #[error("expected a 3x3 integer matrix")]
    NotIntegral3x3,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// True iff `det M = ±1`.
pub fn is_esl3_member(m: &SquareMatrix) -> bool {
    m.ring() == Ring::Integers && m.dim() == 3 && is_unit(&m.det())
}

/// Named integer 3×3 matrices, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorCatalog {
    entries: Vec<(String, SquareMatrix)>,
}

const PAIRS: [(usize, usize); 6] = [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)];

fn unit(i: usize, j: usize) -> usize {
    (i - 1) * 3 + (j - 1)
}

fn matrix(entries: [i64; 9]) -> SquareMatrix {
    SquareMatrix::from_i64(Ring::Integers, 3, &entries)
}

/// `E + e_ij`.
pub fn transvection(i: usize, j: usize) -> SquareMatrix {
    let mut e = [1, 0, 0, 0, 1, 0, 0, 0, 1];
    e[unit(i, j)] = 1;
    matrix(e)
}

/// Identity with −1 at `(k, k)` and 1 at `(k, l)`; squares to `E`.
pub fn diagonal_involution(k: usize, l: usize) -> SquareMatrix {
    let mut e = [1, 0, 0, 0, 1, 0, 0, 0, 1];
    e[unit(k, k)] = -1;
    e[unit(k, l)] = 1;
    matrix(e)
}

/// Identity with −1 at `(k, k)`.
pub fn sign_flip(k: usize) -> SquareMatrix {
    let mut e = [1, 0, 0, 0, 1, 0, 0, 0, 1];
    e[unit(k, k)] = -1;
    matrix(e)
}

impl GeneratorCatalog {
    pub fn empty() -> Self {
        GeneratorCatalog {
            entries: Vec::new(),
        }
    }

    /// The standard catalog.
    ///
    /// `i12_disp`, `i23_disp`, `i12i23_disp` and `I13_disp` are the matrices
    /// as printed in the involution construction; `ikl` are the
    /// definitional diagonal involutions.
    pub fn standard() -> Self {
        let mut cat = GeneratorCatalog::empty();
        for k in 1..=3 {
            cat.insert(format!("D{k}"), sign_flip(k));
        }
        cat.insert("D123", matrix([-1, 0, 0, 0, -1, 0, 0, 0, -1]));
        cat.insert("P3", matrix([0, 1, 0, 0, 0, 1, 1, 0, 0]));
        cat.insert("M6", matrix([0, 1, 0, 0, 0, 1, -1, 0, 0]));
        for (i, j) in PAIRS {
            cat.insert(format!("t{i}{j}"), transvection(i, j));
        }
        for (k, l) in PAIRS {
            cat.insert(format!("i{k}{l}"), diagonal_involution(k, l));
        }
        cat.insert("i12_disp", matrix([1, -1, 0, 0, 1, 0, 0, 0, 1]));
        cat.insert("i23_disp", matrix([1, 0, 0, 0, 1, 1, 0, 0, -1]));
        cat.insert("i12i23_disp", matrix([1, 1, 1, 0, 1, 1, 0, 0, -1]));
        cat.insert("I13_disp", matrix([1, 0, -1, 0, 1, 0, 0, 0, -1]));
        cat
    }

    /// Adds or replaces a named matrix.
    pub fn insert(&mut self, name: impl Into<String>, m: SquareMatrix) {
        let name = name.into();
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = m,
            None => self.entries.push((name, m)),
        }
    }

    pub fn get(&self, name: &str) -> Option<&SquareMatrix> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn lookup(&self, name: &str) -> Result<&SquareMatrix, Esl3Error> {
        self.get(name)
            .ok_or_else(|| Esl3Error::UnknownGenerator(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &SquareMatrix)> {
        self.entries.iter().map(|(n, m)| (n.as_str(), m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The eight involutions `D1, D2, i_kl`.
    pub fn involution_set() -> Vec<&'static str> {
        vec!["D1", "D2", "i12", "i13", "i21", "i23", "i31", "i32"]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub name: String,
    pub inverse: bool,
}

impl Letter {
    pub fn new(name: impl Into<String>) -> Self {
        Letter {
            name: name.into(),
            inverse: false,
        }
    }

    pub fn inv(name: impl Into<String>) -> Self {
        Letter {
            name: name.into(),
            inverse: true,
        }
    }

    pub fn exponent(&self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(&self) -> Letter {
        Letter {
            name: self.name.clone(),
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.name)
        } else {
            write!(f, "{}", self.name)
        }
    }
}

/// A product of generators and their inverses, read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn gen(name: &str) -> Self {
        Word::new(vec![Letter::new(name)])
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word::new(self.letters.iter().rev().map(Letter::inverted).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word::new(letters)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word::new(
            self.letters
                .iter()
                .cloned()
                .cycle()
                .take(n * self.len())
                .collect(),
        )
    }

    /// `x·y·x⁻¹·y⁻¹`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }

    /// `g·w·g⁻¹`.
    pub fn conjugate(g: &Word, w: &Word) -> Word {
        g.concat(w).concat(&g.inverse())
    }

    /// Replace every letter naming a key of `macros` by its word.
    pub fn expand(&self, macros: &[(String, Word)]) -> Word {
        let mut out = Vec::new();
        for letter in &self.letters {
            match macros.iter().find(|(n, _)| *n == letter.name) {
                Some((_, w)) if letter.inverse => out.extend(w.inverse().letters),
                Some((_, w)) => out.extend(w.letters.iter().cloned()),
                None => out.push(letter.clone()),
            }
        }
        Word::new(out)
    }

    /// Cancels adjacent `x x⁻¹` pairs.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for letter in &self.letters {
            match out.last() {
                Some(last) if last.name == letter.name && last.inverse != letter.inverse => {
                    out.pop();
                }
                _ => out.push(letter.clone()),
            }
        }
        Word::new(out)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "E");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Esl3Error;

    /// Whitespace- or `*`-separated letters, each `name` or `name^-1`;
    /// `E` or an empty string is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for token in s
            .split(|c: char| c.is_whitespace() || c == '*')
            .filter(|t| !t.is_empty())
        {
            if token == "E" {
                continue;
            }
            let (name, inverse) = match token.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (token, false),
            };
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Esl3Error::BadLetter(token.to_string()));
            }
            letters.push(Letter {
                name: name.to_string(),
                inverse,
            });
        }
        Ok(Word::new(letters))
    }
}

/// Left-to-right product; negative exponents use the exact inverse.
pub fn evaluate_word(w: &Word, catalog: &GeneratorCatalog) -> Result<SquareMatrix, Esl3Error> {
    let mut acc = SquareMatrix::identity(Ring::Integers, 3);
    for letter in &w.letters {
        let g = catalog.lookup(&letter.name)?;
        let factor = if letter.inverse {
            g.inverse()?
        } else {
            g.clone()
        };
        acc = acc.multiply(&factor)?;
    }
    Ok(acc)
}
