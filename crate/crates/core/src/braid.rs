//! Braid words, free-group words and the Artin action.
//!
//! Letters use the usual signed-integer notation: `i` is the Artin generator
//! `σ_i`, `-i` its inverse. Free-group words use the same convention with
//! `k` standing for `x_k` and `-k` for `x_k⁻¹` (1-based).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("malformed token `{token}` at byte {position}")]
    MalformedToken { position: usize, token: String },
    #[error("zero letter at byte {position}")]
    ZeroLetter { position: usize },
    #[error("letter {letter} needs at least {} strands, but {strands} declared", letter.unsigned_abs() + 1)]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("strand count must be at least 1")]
    NoStrands,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for &letter in &letters {
            if letter == 0 {
                return Err(BraidError::ZeroLetter { position: 0 });
            }
            if letter.unsigned_abs() as usize >= strands {
                return Err(BraidError::LetterOutOfRange { letter, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// The trivial braid on one strand, whose closure is the unknot.
    pub fn unknot() -> Self {
        BraidWord {
            strands: 1,
            letters: Vec::new(),
        }
    }

    /// `σ_1^power` on two strands.
    pub fn sigma1_power(power: i32) -> Self {
        let letter = if power < 0 { -1 } else { 1 };
        BraidWord {
            strands: 2,
            letters: vec![letter; power.unsigned_abs() as usize],
        }
    }

    /// Parses whitespace- or comma-separated signed integers, optionally
    /// preceded by a `strands=k` header. Without a header the strand count is
    /// `max|letter| + 1`.
    pub fn parse(text: &str) -> Result<Self, BraidError> {
        let mut declared = None;
        let mut letters = Vec::new();
        for (position, token) in tokens(text) {
            if let Some(value) = token.strip_prefix("strands=") {
                if declared.is_some() || !letters.is_empty() {
                    return Err(BraidError::MalformedToken {
                        position,
                        token: token.to_string(),
                    });
                }
                let k: usize = value.parse().map_err(|_| BraidError::MalformedToken {
                    position,
                    token: token.to_string(),
                })?;
                if k == 0 {
                    return Err(BraidError::NoStrands);
                }
                declared = Some(k);
                continue;
            }
            let letter: i32 = token.parse().map_err(|_| BraidError::MalformedToken {
                position,
                token: token.to_string(),
            })?;
            if letter == 0 {
                return Err(BraidError::ZeroLetter { position });
            }
            letters.push(letter);
        }
        let needed = letters
            .iter()
            .map(|l| l.unsigned_abs() as usize + 1)
            .max()
            .unwrap_or(1);
        let strands = declared.unwrap_or(needed);
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The inverse braid: letters reversed and negated.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Concatenation `self · other`. Panics if strand counts differ.
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "strand count mismatch");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Text form accepted by [`BraidWord::parse`]; the header is emitted only
    /// when the strand count is not implied by the letters.
    pub fn to_text(&self) -> String {
        let body = self
            .letters
            .iter()
            .map(i32::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        let implied = self
            .letters
            .iter()
            .map(|l| l.unsigned_abs() as usize + 1)
            .max()
            .unwrap_or(1);
        if implied == self.strands {
            body
        } else if body.is_empty() {
            format!("strands={}", self.strands)
        } else {
            format!("strands={} {body}", self.strands)
        }
    }
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        let sep = ch.is_whitespace() || ch == ',';
        match (sep, start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out.into_iter()
}

impl FromStr for BraidWord {
    type Err = BraidError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BraidWord::parse(s)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for BraidWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        BraidWord::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// A freely reduced word in the free group, letters `±k` for `x_k^{±1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    /// `x_k` (1-based).
    pub fn generator(k: usize) -> Self {
        FreeWord(vec![k as i32])
    }

    /// Builds a word from arbitrary letters, reducing freely.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut w = FreeWord::identity();
        for l in letters {
            assert!(l != 0, "free word letters are nonzero");
            w.push(l);
        }
        w
    }

    fn push(&mut self, letter: i32) {
        if self.0.last() == Some(&-letter) {
            self.0.pop();
        } else {
            self.0.push(letter);
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }

    /// Reduced product `self · other`.
    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    /// Image under the endomorphism sending `x_k` to `images[k - 1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut w = FreeWord::identity();
        for &l in &self.0 {
            let img = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                for &m in &img.0 {
                    w.push(m);
                }
            } else {
                for &m in img.0.iter().rev() {
                    w.push(-m);
                }
            }
        }
        w
    }

    /// Exponent sum of each generator `x_1..x_n`.
    pub fn abelianize(&self, n: usize) -> Vec<i32> {
        let mut e = vec![0; n];
        for &l in &self.0 {
            e[l.unsigned_abs() as usize - 1] += l.signum();
        }
        e
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("x{l}")
                } else {
                    format!("x{}^-1", -l)
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Images of `x_1..x_n` under the automorphism induced by the braid.
///
/// `σ_i` sends `x_i ↦ x_i x_{i+1} x_i⁻¹`, `x_{i+1} ↦ x_i`; `σ_i⁻¹` sends
/// `x_i ↦ x_{i+1}`, `x_{i+1} ↦ x_{i+1}⁻¹ x_i x_{i+1}`. The word `l_1 l_2 … l_k`
/// acts as `l_1 ∘ l_2 ∘ … ∘ l_k`, so braid multiplication maps to composition.
pub fn artin_action(b: &BraidWord) -> Vec<FreeWord> {
    let n = b.strands();
    let mut images: Vec<FreeWord> = (1..=n).map(FreeWord::generator).collect();
    for &letter in b.letters() {
        let i = letter.unsigned_abs() as usize - 1;
        let (left, right) = (images[i].clone(), images[i + 1].clone());
        if letter > 0 {
            images[i] = left.concat(&right).concat(&left.inverse());
            images[i + 1] = left;
        } else {
            images[i] = right.clone();
            images[i + 1] = right.inverse().concat(&left).concat(&right);
        }
    }
    images
}

/// Strand permutation and components of a braid closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureInfo {
    /// `permutation[i]` is the generator index that `x_i` abelianizes to
    /// under the Artin action (0-based).
    pub permutation: Vec<usize>,
    /// Cycles of the permutation, each sorted, ordered by lowest strand.
    pub components: Vec<Vec<usize>>,
    pub component_names: Vec<String>,
}

impl ClosureInfo {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_knot(&self) -> bool {
        self.components.len() == 1
    }

    /// Component index of each strand.
    pub fn strand_components(&self) -> Vec<usize> {
        let mut out = vec![0; self.permutation.len()];
        for (c, strands) in self.components.iter().enumerate() {
            for &s in strands {
                out[s] = c;
            }
        }
        out
    }
}

/// Variable names for closure components: `t` for a knot, `s, t` for two
/// components, `t1..tk` otherwise.
pub fn component_variable_names(count: usize) -> Vec<String> {
    match count {
        1 => vec!["t".into()],
        2 => vec!["s".into(), "t".into()],
        k => (1..=k).map(|i| format!("t{i}")).collect(),
    }
}

pub fn closure_info(b: &BraidWord) -> ClosureInfo {
    let n = b.strands();
    let mut permutation: Vec<usize> = (0..n).collect();
    for &letter in b.letters() {
        let i = letter.unsigned_abs() as usize - 1;
        permutation.swap(i, i + 1);
    }
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut s = start;
        while !seen[s] {
            seen[s] = true;
            cycle.push(s);
            s = permutation[s];
        }
        cycle.sort_unstable();
        components.push(cycle);
    }
    let component_names = component_variable_names(components.len());
    ClosureInfo {
        permutation,
        components,
        component_names,
    }
}

/// Pairwise linking numbers of the closure components, with the braid axis
/// appended as the last component.
pub fn linking_matrix(b: &BraidWord) -> Vec<Vec<i32>> {
    let info = closure_info(b);
    let comp = info.strand_components();
    let k = info.component_count();
    let mut twice = vec![vec![0i32; k + 1]; k + 1];
    let mut occupant: Vec<usize> = (0..b.strands()).collect();
    for &letter in b.letters() {
        let i = letter.unsigned_abs() as usize - 1;
        let (a, c) = (comp[occupant[i]], comp[occupant[i + 1]]);
        if a != c {
            twice[a][c] += letter.signum();
            twice[c][a] += letter.signum();
        }
        occupant.swap(i, i + 1);
    }
    let mut lk: Vec<Vec<i32>> = twice
        .iter()
        .map(|row| row.iter().map(|v| v / 2).collect())
        .collect();
    for (c, strands) in info.components.iter().enumerate() {
        lk[c][k] = strands.len() as i32;
        lk[k][c] = strands.len() as i32;
    }
    lk
}
