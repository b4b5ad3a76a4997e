//! Braid words: data model, text I/O, reduction, and letter-level symmetries.
//!
//! A braid word is a sequence of generator letters. Capital letters are
//! positive crossings, lower case letters their inverses; `A/a` is generator
//! 1, `B/b` generator 2, and so on up to `L/l`. A run `a...a` of length `p`
//! is stored as one letter of degree `p` and printed `a^p`.

use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;

/// Highest supported generator index (letters `A`..`L`).
pub const MAX_INDEX: u8 = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("empty braid word")]
    Empty,
    #[error("illegal character {0:?}")]
    IllegalChar(char),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("malformed degree or repetition count")]
    BadDegree,
    #[error("unbalanced parenthesis")]
    Parens,
}

/// One letter: generator index (1-based), sign, and degree >= 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BraidLetter {
    pub index: u8,
    pub positive: bool,
    pub degree: u32,
}

impl BraidLetter {
    pub fn new(index: u8, positive: bool, degree: u32) -> Self {
        debug_assert!(index >= 1 && degree >= 1);
        Self { index, positive, degree }
    }

    fn char(&self) -> char {
        let base = if self.positive { b'A' } else { b'a' };
        (base + self.index - 1) as char
    }

    /// Comparison order used throughout: lower generator index first, then
    /// capital before lower case, then higher degree first (degrees are
    /// front-loaded in representative words).
    fn rank(&self) -> (u8, u8, i64) {
        (self.index, if self.positive { 0 } else { 1 }, -(self.degree as i64))
    }
}

impl PartialOrd for BraidLetter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BraidLetter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Debug for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "{}", self.char())
        } else {
            write!(f, "{}^{}", self.char(), self.degree)
        }
    }
}

/// A braid word in canonical storage: adjacent letters with equal
/// (index, sign) are merged by summing degrees.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct BraidWord {
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(letters: Vec<BraidLetter>) -> Self {
        let mut w = Self { letters: Vec::with_capacity(letters.len()) };
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn empty() -> Self {
        Self { letters: Vec::new() }
    }

    fn push(&mut self, l: BraidLetter) {
        debug_assert!(l.degree >= 1);
        if let Some(last) = self.letters.last_mut() {
            if last.index == l.index && last.positive == l.positive {
                last.degree += l.degree;
                return;
            }
        }
        self.letters.push(l);
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of stored letters (the length `l` for reduced words).
    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    /// Total crossing count: the sum of degrees.
    pub fn crossing_count(&self) -> u64 {
        self.letters.iter().map(|l| l.degree as u64).sum()
    }

    /// Number of distinct generator indices used.
    pub fn width(&self) -> usize {
        let mut seen = [false; MAX_INDEX as usize + 1];
        let mut n = 0;
        for l in &self.letters {
            if !seen[l.index as usize] {
                seen[l.index as usize] = true;
                n += 1;
            }
        }
        n
    }

    pub fn max_index(&self) -> u8 {
        self.letters.iter().map(|l| l.index).max().unwrap_or(0)
    }

    /// Strand count of the underlying braid (highest generator + 1; the
    /// empty word is a one-strand braid).
    pub fn strands(&self) -> usize {
        self.max_index() as usize + 1
    }

    /// True when generators 1..=max all occur.
    pub fn contiguous(&self) -> bool {
        self.width() == self.max_index() as usize
    }

    /// Signed crossing sum: +degree per capital, -degree per lower case.
    pub fn exponent_sum(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| if l.positive { l.degree as i64 } else { -(l.degree as i64) })
            .sum()
    }

    /// One bit per crossing, `0` when the letter matches the alternation
    /// convention (odd index capital, even index lower case), else `1`.
    pub fn alternation_code(&self) -> String {
        let mut out = String::with_capacity(self.crossing_count() as usize);
        for l in &self.letters {
            let conventional = (l.index % 2 == 1) == l.positive;
            let bit = if conventional { '0' } else { '1' };
            for _ in 0..l.degree {
                out.push(bit);
            }
        }
        out
    }

    pub fn is_alternating(&self) -> bool {
        self.letters.iter().all(|l| (l.index % 2 == 1) == l.positive)
    }

    /// Underlying permutation of the closure: product of transpositions
    /// (i, i+1), one per crossing, taken left to right.
    pub fn closure_permutation(&self) -> Permutation {
        let mut perm = Permutation::identity(self.strands());
        for l in &self.letters {
            if l.degree % 2 == 1 {
                perm.swap_images(l.index as usize - 1, l.index as usize);
            }
        }
        perm
    }

    /// Number of link components of the closure.
    pub fn component_count(&self) -> usize {
        self.closure_permutation().cycle_count()
    }

    /// Sets every degree to 1 and re-merges to a fixpoint.
    pub fn idempotent_reduce(&self) -> ReducedWord {
        let mut current: Vec<BraidLetter> = self.letters.clone();
        loop {
            for l in current.iter_mut() {
                l.degree = 1;
            }
            let next = BraidWord::new(current.clone());
            if next.letters.iter().all(|l| l.degree == 1) {
                return ReducedWord(next);
            }
            current = next.letters;
        }
    }

    /// True when the word equals its own image under reversal, generator
    /// relabelling `i -> m+1-i` (m the highest index used), and case swap.
    /// Degrees are included in the comparison.
    pub fn is_antisymmetric(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let m = self.max_index();
        let image: Vec<BraidLetter> = self
            .letters
            .iter()
            .rev()
            .map(|l| BraidLetter::new(m + 1 - l.index, !l.positive, l.degree))
            .collect();
        BraidWord::new(image) == *self
    }

    /// Cyclic rotation by `k` letter blocks, re-merged.
    pub fn rotated(&self, k: usize) -> Self {
        if self.letters.is_empty() {
            return self.clone();
        }
        let n = self.letters.len();
        let k = k % n;
        let mut v = Vec::with_capacity(n);
        v.extend_from_slice(&self.letters[k..]);
        v.extend_from_slice(&self.letters[..k]);
        BraidWord::new(v)
    }

    pub fn reversed(&self) -> Self {
        BraidWord::new(self.letters.iter().rev().copied().collect())
    }

    /// Generator relabelling `i -> m+1-i` over the highest index `m` used,
    /// with case swap exactly when that preserves the alternation
    /// convention (i.e. when `m` is even).
    pub fn flipped(&self) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let m = self.max_index();
        let swap_case = m % 2 == 0;
        BraidWord::new(
            self.letters
                .iter()
                .map(|l| {
                    BraidLetter::new(
                        m + 1 - l.index,
                        if swap_case { !l.positive } else { l.positive },
                        l.degree,
                    )
                })
                .collect(),
        )
    }

    /// Case swap on every letter (the mirror word).
    pub fn mirrored(&self) -> Self {
        BraidWord::new(
            self.letters
                .iter()
                .map(|l| BraidLetter::new(l.index, !l.positive, l.degree))
                .collect(),
        )
    }

    /// All images under the cyclic/reversal/flip symmetry group.
    pub fn symmetry_images(&self) -> Vec<BraidWord> {
        let mut out = Vec::new();
        for rev in [false, true] {
            for flip in [false, true] {
                let mut base = self.clone();
                if rev {
                    base = base.reversed();
                }
                if flip {
                    base = base.flipped();
                }
                let n = base.letters.len().max(1);
                for k in 0..n {
                    out.push(base.rotated(k));
                }
            }
        }
        out
    }

    /// Lexicographic minimum over the symmetry group generated by cyclic
    /// rotation, reversal, and the convention-preserving flip.
    pub fn canonical_form(&self) -> BraidWord {
        self.symmetry_images().into_iter().min().unwrap_or_else(BraidWord::empty)
    }

    /// Position permutations induced by symmetries fixing this word.
    ///
    /// Each map sends the letter position in `self` to its position in the
    /// transformed word; only meaningful for words that stay the same
    /// length under rotation (no wrap-around merge).
    pub fn automorphism_position_maps(&self) -> Vec<Vec<usize>> {
        let n = self.letters.len();
        let mut maps: Vec<Vec<usize>> = Vec::new();
        if n == 0 {
            return maps;
        }
        for rev in [false, true] {
            for flip in [false, true] {
                let mut tagged: Vec<(BraidLetter, usize)> =
                    self.letters.iter().copied().zip(0..n).collect();
                if rev {
                    tagged.reverse();
                }
                if flip {
                    let m = self.max_index();
                    let swap_case = m % 2 == 0;
                    for (l, _) in tagged.iter_mut() {
                        *l = BraidLetter::new(
                            m + 1 - l.index,
                            if swap_case { !l.positive } else { l.positive },
                            l.degree,
                        );
                    }
                }
                for k in 0..n {
                    let mut rotated: Vec<(BraidLetter, usize)> = Vec::with_capacity(n);
                    rotated.extend_from_slice(&tagged[k..]);
                    rotated.extend_from_slice(&tagged[..k]);
                    if rotated.iter().map(|(l, _)| *l).eq(self.letters.iter().copied()) {
                        let mut map = vec![0usize; n];
                        for (pos, (_, tag)) in rotated.iter().enumerate() {
                            map[*tag] = pos;
                        }
                        if !maps.contains(&map) {
                            maps.push(map);
                        }
                    }
                }
            }
        }
        maps
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            if l.degree == 1 {
                write!(f, "{}", l.char())?;
            } else {
                write!(f, "{}^{}", l.char(), l.degree)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BraidWord({})", self)
    }
}

/// A braid word whose letters all have degree 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ReducedWord(BraidWord);

impl ReducedWord {
    /// Wraps a word, reducing it first if needed.
    pub fn from_word(w: &BraidWord) -> Self {
        w.idempotent_reduce()
    }

    pub fn word(&self) -> &BraidWord {
        &self.0
    }

    pub fn into_word(self) -> BraidWord {
        self.0
    }

    pub fn letters(&self) -> &[BraidLetter] {
        self.0.letters()
    }

    pub fn len(&self) -> usize {
        self.0.letter_count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn width(&self) -> usize {
        self.0.width()
    }

    pub fn max_index(&self) -> u8 {
        self.0.max_index()
    }

    /// Canonical form, re-reduced in case a rotation merged wrap-around
    /// letters.
    pub fn canonical_form(&self) -> ReducedWord {
        self.0.canonical_form().idempotent_reduce()
    }

    /// First and last letters differ, so the word is a proper cyclic word.
    pub fn cyclically_proper(&self) -> bool {
        match (self.letters().first(), self.letters().last()) {
            (Some(a), Some(b)) if self.len() > 1 => {
                !(a.index == b.index && a.positive == b.positive)
            }
            _ => true,
        }
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ReducedWord({})", self.0)
    }
}

/// Parses braid text: letters `A`-`L`/`a`-`l`, degrees as `A^3` or `A3`,
/// plain repetition (`AAA`), and parenthesized powers like `(Ab)^2`.
pub fn parse_braid(text: &str) -> Result<BraidWord, ParseError> {
    let letters = parse_letters(text)?;
    if letters.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(BraidWord::new(letters))
}

fn parse_letters(text: &str) -> Result<Vec<BraidLetter>, ParseError> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '(' {
            let mut depth = 1;
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && depth > 0 {
                match chars[j] {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    _ => {}
                }
                j += 1;
            }
            if depth != 0 {
                return Err(ParseError::Parens);
            }
            let inner: String = chars[start..j - 1].iter().collect();
            let inner_letters = parse_letters(&inner)?;
            i = j;
            let reps = match take_degree(&chars, &mut i)? {
                Some(n) => n,
                None => 1,
            };
            for _ in 0..reps {
                out.extend_from_slice(&inner_letters);
            }
            continue;
        }
        let (index, positive) = match c {
            'A'..='L' => ((c as u8 - b'A' + 1), true),
            'a'..='l' => ((c as u8 - b'a' + 1), false),
            other => return Err(ParseError::IllegalChar(other)),
        };
        i += 1;
        let degree = take_degree(&chars, &mut i)?.unwrap_or(1);
        out.push(BraidLetter::new(index, positive, degree));
    }
    Ok(out)
}

fn take_degree(chars: &[char], i: &mut usize) -> Result<Option<u32>, ParseError> {
    let caret = *i < chars.len() && chars[*i] == '^';
    if caret {
        *i += 1;
    }
    let start = *i;
    while *i < chars.len() && chars[*i].is_ascii_digit() {
        *i += 1;
    }
    if start == *i {
        if caret {
            return Err(ParseError::BadDegree);
        }
        return Ok(None);
    }
    let n: u32 = chars[start..*i]
        .iter()
        .collect::<String>()
        .parse()
        .map_err(|_| ParseError::BadDegree)?;
    if n == 0 {
        return Err(ParseError::ZeroDegree);
    }
    Ok(Some(n))
}

/// Canonical text form: degree-1 letters bare, degree-k letters as `X^k`.
pub fn format_braid(word: &BraidWord) -> String {
    word.to_string()
}

/// A permutation of strand positions, stored as a 0-based image array.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { image: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.image[i]
    }

    /// Post-composes with the transposition (a b).
    fn swap_images(&mut self, a: usize, b: usize) {
        for v in self.image.iter_mut() {
            if *v == a {
                *v = b;
            } else if *v == b {
                *v = a;
            }
        }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.image.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.image[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.image[cur];
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BraidWord {
        parse_braid(s).unwrap()
    }

    #[test]
    fn parse_notation_forms() {
        assert_eq!(w("AbAb").letters().len(), 4);
        // A^3 b^2 a^2 B^3
        let p = w("A^3b^2a^2B^3");
        let degs: Vec<(u8, bool, u32)> =
            p.letters().iter().map(|l| (l.index, l.positive, l.degree)).collect();
        assert_eq!(degs, vec![(1, true, 3), (2, false, 2), (1, false, 2), (2, true, 3)]);
        // Adjacent equal letters merge: AAbACbACb
        let q = w("AAbACbACb");
        let degs: Vec<(u8, bool, u32)> =
            q.letters().iter().map(|l| (l.index, l.positive, l.degree)).collect();
        assert_eq!(
            degs,
            vec![
                (1, true, 2),
                (2, false, 1),
                (1, true, 1),
                (3, true, 1),
                (2, false, 1),
                (1, true, 1),
                (3, true, 1),
                (2, false, 1)
            ]
        );
        // Bare-integer degrees and parenthesized powers
        assert_eq!(w("A3"), w("A^3"));
        assert_eq!(w("(Ab)^2"), w("AbAb"));
        assert_eq!(w("AAA"), w("A^3"));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_braid(""), Err(ParseError::Empty));
        assert_eq!(parse_braid("AxB"), Err(ParseError::IllegalChar('x')));
        assert_eq!(parse_braid("A^0"), Err(ParseError::ZeroDegree));
        assert_eq!(parse_braid("A^"), Err(ParseError::BadDegree));
        // Generator index gaps are not parse errors.
        assert!(parse_braid("AC").is_ok());
    }

    #[test]
    fn format_round_trip() {
        for s in ["A^3", "AbAb", "A^2bA^2bAb", "A^2bAb"] {
            let word = w(s);
            assert_eq!(format_braid(&word), s);
            assert_eq!(parse_braid(&format_braid(&word)).unwrap(), word);
        }
    }

    #[test]
    fn reduction() {
        assert_eq!(w("A^3b^2a^2B^3").idempotent_reduce().to_string(), "AbaB");
        assert_eq!(w("A^2bA^2bAb").idempotent_reduce().to_string(), "AbAbAb");
        assert_eq!(w("AbAb").idempotent_reduce().to_string(), "AbAb");
        // Re-merge cascades to a fixpoint.
        assert_eq!(w("Ab^2bA").idempotent_reduce().to_string(), "AbA");
    }

    #[test]
    fn widths_and_counts() {
        let word = w("AbACbC");
        assert_eq!(word.width(), 3);
        assert_eq!(word.strands(), 4);
        assert_eq!(word.crossing_count(), 6);
        assert_eq!(w("A^pb".replace('p', "4").as_str()).crossing_count(), 5);
    }

    #[test]
    fn permutations_and_components() {
        // (12)(23)(12)(23) is the 3-cycle (1 3 2): one cycle
        assert_eq!(w("AbAb").component_count(), 1);
        // (23)(12)(23) swaps 1 and 3: two cycles on 3 strands
        assert_eq!(w("A^2bAb").component_count(), 2);
        assert_eq!(w("A^2").component_count(), 2);
        assert_eq!(w("A^3").component_count(), 1);
        assert_eq!(w("AAbACbACb").component_count(), 3);
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(w("A^3bAb^3").exponent_sum(), 0);
        assert_eq!(w("A^3BaB").exponent_sum(), 4);
        assert_eq!(w("AbAb").exponent_sum(), 0);
    }

    #[test]
    fn alternation_codes() {
        assert_eq!(w("AbACbC").alternation_code(), "000000");
        assert_eq!(w("A^2BaB").alternation_code(), "00111");
        assert_eq!(w("AbaB").alternation_code(), "0011");
    }

    #[test]
    fn antisymmetry() {
        assert!(w("AbAb").is_antisymmetric());
        assert!(w("ABacBDcd").is_antisymmetric());
        assert!(!w("AbACbC").is_antisymmetric());
        assert!(w("A^3bAb^3").is_antisymmetric());
        assert!(w("A^2bAb^2").is_antisymmetric());
        // Degrees must be symmetric too.
        assert!(!w("A^2bAb^3").is_antisymmetric());
    }

    #[test]
    fn antisymmetry_implies_zero_exponent_sum() {
        for s in ["AbAb", "ABacBDcd", "A^4bAb^4", "A^2b^3A^3b^2"] {
            let word = w(s);
            if word.is_antisymmetric() {
                assert_eq!(word.exponent_sum(), 0, "{}", s);
            }
        }
    }

    #[test]
    fn canonical_rotation() {
        assert_eq!(w("bAbA").canonical_form().to_string(), "AbAb");
        let c = w("AbACbC").canonical_form();
        assert_eq!(c.to_string(), "AbACbC");
    }

    #[test]
    fn automorphisms_of_antiprism_words() {
        // (Ab)^3 has the full flip-inclusive dihedral symmetry: 12 maps.
        assert_eq!(w("AbAbAb").automorphism_position_maps().len(), 12);
        // AbAbACbC keeps only the identity and one reflection.
        assert_eq!(w("AbAbACbC").automorphism_position_maps().len(), 2);
        assert_eq!(w("AbAbAbAb").automorphism_position_maps().len(), 16);
        assert_eq!(w("AbCbAbCb").automorphism_position_maps().len(), 8);
    }
}
