//! Positive braid words, their permutations and half-twist detection.

use crate::error::{Error, Result};
use std::collections::{HashSet, VecDeque};
use std::fmt;

/// A positive braid word `σ_{k_1}⋯σ_{k_r}` on `strands` strands. Letters are
/// one-based generator indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<usize>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<usize>) -> Result<BraidWord> {
        if strands == 0 {
            return Err(Error::InvalidWord("a braid needs at least one strand".into()));
        }
        if let Some(bad) = letters.iter().find(|&&k| k == 0 || k >= strands) {
            return Err(Error::InvalidWord(format!("letter {bad} outside [1, {}]", strands - 1)));
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses whitespace- or comma-separated generator indices, e.g. `"2 1 3 2"`.
    pub fn parse(text: &str, strands: usize) -> Result<BraidWord> {
        let mut letters = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let tok = tok.trim_start_matches(['s', 'σ']);
            let k: usize = tok.parse().map_err(|_| Error::InvalidWord(format!("cannot parse letter `{tok}`")))?;
            letters.push(k);
        }
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::InvalidWord("strand counts differ".into()));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn pow(&self, k: usize) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.repeat(k) }
    }

    /// The word with the given (zero-based) positions deleted.
    pub fn without(&self, positions: &[usize]) -> BraidWord {
        let letters = self.letters.iter().enumerate().filter(|(i, _)| !positions.contains(i)).map(|(_, &k)| k).collect();
        BraidWord { strands: self.strands, letters }
    }

    /// Coxeter permutation: `p[i]` is the right-hand position of the strand
    /// entering at left position `i` (zero-based).
    pub fn permutation(&self) -> Vec<usize> {
        permutation_of(self.strands, &self.letters)
    }

    /// Strand identities at every column: `threads[l][pos]` is the left
    /// position (at column 0) of the strand found at `pos` after `l` letters.
    pub fn threads(&self) -> Vec<Vec<usize>> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        let mut out = vec![at.clone()];
        for &k in &self.letters {
            at.swap(k - 1, k);
            out.push(at.clone());
        }
        out
    }

    /// Component index for each left position: cycles of the permutation
    /// numbered by their least element.
    pub fn components(&self) -> Vec<usize> {
        let p = self.permutation();
        let mut comp = vec![usize::MAX; self.strands];
        let mut next = 0;
        for start in 0..self.strands {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut i = start;
            while comp[i] == usize::MAX {
                comp[i] = next;
                i = p[i];
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().copied().max().map_or(0, |m| m + 1)
    }

    /// Rotation `σ_{k_{j+1}}⋯σ_{k_r}σ_{k_1}⋯σ_{k_j}`.
    pub fn rotated(&self, j: usize) -> BraidWord {
        let mut letters = self.letters[j..].to_vec();
        letters.extend_from_slice(&self.letters[..j]);
        BraidWord { strands: self.strands, letters }
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|k| format!("s{k}")).collect();
        write!(f, "[{}; {}]", self.strands, parts.join(" "))
    }
}

fn permutation_of(strands: usize, letters: &[usize]) -> Vec<usize> {
    let mut at: Vec<usize> = (0..strands).collect();
    for &k in letters {
        at.swap(k - 1, k);
    }
    let mut p = vec![0; strands];
    for (pos, &s) in at.iter().enumerate() {
        p[s] = pos;
    }
    p
}

/// Image of the word under σ_i ↦ (i i+1), one-based.
pub fn coxeter_permutation(word: &BraidWord) -> Vec<usize> {
    word.permutation().into_iter().map(|x| x + 1).collect()
}

/// Cycle notation such as `(1 4)(2 3)`; fixed points are omitted.
pub fn cycle_notation(perm: &[usize]) -> String {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for s in 0..n {
        if seen[s] || perm[s] == s + 1 {
            seen[s] = true;
            continue;
        }
        let mut cyc = Vec::new();
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            cyc.push((i + 1).to_string());
            i = perm[i] - 1;
        }
        out.push_str(&format!("({})", cyc.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// The half-twist `Δ_N = ∏_{j=1}^{N-1} σ_j σ_{j-1} ⋯ σ_1`.
pub fn half_twist(n: usize) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("half twist needs N >= 2, got {n}")));
    }
    let mut letters = Vec::new();
    for j in 1..n {
        for i in (1..=j).rev() {
            letters.push(i);
        }
    }
    BraidWord::new(n, letters)
}

/// Default rewriting depth for [`contains_half_twist`].
pub const HALF_TWIST_DEPTH: usize = 3;

/// Sufficient check that the word minus `excluded` positions contains a
/// half-twist: some cyclic window of length N(N−1)/2 whose permutation is the
/// order reversal (hence a reduced word for Δ), after at most `depth` braid
/// relation rewrites.
pub fn contains_half_twist(word: &BraidWord, excluded: &[usize], depth: usize) -> bool {
    let w = word.without(excluded);
    let letters: Vec<u8> = w.letters().iter().map(|&k| k as u8).collect();
    search_half_twist(letters, word.strands(), depth, true)
}

/// Like [`contains_half_twist`] for the open word `letters`: windows and
/// rewrites never wrap around from the last letter to the first.
pub fn contains_half_twist_linear(letters: &[usize], strands: usize, depth: usize) -> bool {
    search_half_twist(letters.iter().map(|&k| k as u8).collect(), strands, depth, false)
}

fn search_half_twist(letters: Vec<u8>, n: usize, depth: usize, cyclic: bool) -> bool {
    if n == 1 {
        return true;
    }
    let need = n * (n - 1) / 2;
    if letters.len() < need {
        return false;
    }
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(letters.clone());
    queue.push_back((letters, 0usize));
    while let Some((cur, d)) = queue.pop_front() {
        if has_reversing_window(&cur, n, need, cyclic) {
            return true;
        }
        if d == depth {
            continue;
        }
        for next in rewrites(&cur, cyclic) {
            if seen.insert(next.clone()) {
                queue.push_back((next, d + 1));
            }
        }
    }
    false
}

fn has_reversing_window(letters: &[u8], n: usize, need: usize, cyclic: bool) -> bool {
    let len = letters.len();
    let starts = if cyclic { len } else { len + 1 - need };
    for start in 0..starts {
        let mut at: Vec<usize> = (0..n).collect();
        for off in 0..need {
            let k = letters[(start + off) % len] as usize;
            at.swap(k - 1, k);
        }
        if at.iter().enumerate().all(|(pos, &s)| s == n - 1 - pos) {
            return true;
        }
    }
    false
}

/// All words reachable by one commutation or braid relation, applied
/// cyclically when `cyclic` is set.
fn rewrites(w: &[u8], cyclic: bool) -> Vec<Vec<u8>> {
    let len = w.len();
    let mut out = Vec::new();
    if len < 2 {
        return out;
    }
    for i in 0..len {
        if !cyclic && i + 1 >= len {
            break;
        }
        let j = (i + 1) % len;
        if j == i {
            continue;
        }
        if (w[i] as i32 - w[j] as i32).abs() >= 2 {
            let mut v = w.to_vec();
            v.swap(i, j);
            out.push(v);
        }
        if len >= 3 && (cyclic || i + 2 < len) {
            let k = (i + 2) % len;
            if w[i] == w[k] && (w[i] as i32 - w[j] as i32).abs() == 1 {
                let mut v = w.to_vec();
                v[i] = w[j];
                v[j] = w[i];
                v[k] = w[j];
                out.push(v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[usize]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn permutations() {
        assert_eq!(coxeter_permutation(&w(2, &[1])), vec![2, 1]);
        let d4 = half_twist(4).unwrap();
        assert_eq!(d4.letters(), &[1, 2, 1, 3, 2, 1]);
        assert_eq!(cycle_notation(&coxeter_permutation(&d4)), "(1 4)(2 3)");
        let lam = w(3, &[2, 1, 1, 2]).pow(3).concat(&w(3, &[1])).unwrap();
        assert_eq!(cycle_notation(&coxeter_permutation(&lam)), "(1 2)");
        assert_eq!(lam.component_count(), 2);
    }

    #[test]
    fn half_twist_detection() {
        assert!(contains_half_twist(&half_twist(3).unwrap(), &[], HALF_TWIST_DEPTH));
        assert!(!contains_half_twist(&w(3, &[1, 1]), &[], HALF_TWIST_DEPTH));
        let d4 = w(4, &[2, 1, 3, 2]).pow(4).concat(&w(4, &[3, 3, 1, 1])).unwrap();
        // a9 sits at zero-based position 7.
        assert!(contains_half_twist(&d4, &[7], HALF_TWIST_DEPTH));
        assert!(contains_half_twist_linear(&[2, 1, 2], 3, 0));
        // Cyclically 1 1 2 1 contains 1 2 1, but not as an open word.
        assert!(!contains_half_twist_linear(&[2, 1, 1], 3, HALF_TWIST_DEPTH));
    }

    #[test]
    fn invalid_letters() {
        assert!(BraidWord::new(2, vec![2]).is_err());
        assert!(BraidWord::parse("2 1, 3 2", 4).is_ok());
        assert!(BraidWord::parse("2 x", 4).is_err());
    }
}
