use super::{FoundationVerdict, Lcm, RightLcmMonoid};
use crate::{Error, Result};

/// A free monoid on single-character letters. Words are letter indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeMonoid {
    letters: Vec<char>,
}

/// `e` stands for the empty word, so default alphabets skip it.
const DEFAULT_LETTERS: &str = "abcdfghijklmnopqrstuvwxyz";

impl FreeMonoid {
    /// The free monoid on `k` letters `a, b, c, d, f, …`.
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 || k > DEFAULT_LETTERS.len() {
            return Err(Error::Precondition(format!("free monoid rank {k} out of range")));
        }
        Ok(FreeMonoid {
            letters: DEFAULT_LETTERS.chars().take(k).collect(),
        })
    }

    pub fn with_alphabet(letters: &[char]) -> Result<Self> {
        let mut seen = letters.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if letters.is_empty()
            || seen.len() != letters.len()
            || letters
                .iter()
                .any(|&c| matches!(c, 'e' | 'ε' | ',' | '(' | ')' | '[' | ']' | '·' | '.'))
        {
            return Err(Error::Precondition(format!("unusable alphabet {letters:?}")));
        }
        Ok(FreeMonoid {
            letters: letters.to_vec(),
        })
    }

    pub fn rank(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    /// Words of length exactly `n`, in lexicographic order.
    pub fn words_of_length(&self, n: usize) -> Vec<Vec<u8>> {
        let k = self.letters.len() as u8;
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..k).map(move |c| {
                        let mut w = w.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

fn is_prefix(p: &[u8], w: &[u8]) -> bool {
    w.starts_with(p)
}

impl RightLcmMonoid for FreeMonoid {
    type Elem = Vec<u8>;

    fn identity(&self) -> Vec<u8> {
        Vec::new()
    }

    fn multiply(&self, p: &Vec<u8>, q: &Vec<u8>) -> Vec<u8> {
        let mut w = p.clone();
        w.extend_from_slice(q);
        w
    }

    fn grade(&self, p: &Vec<u8>) -> usize {
        p.len()
    }

    fn enumerate(&self, depth: usize) -> Vec<Vec<u8>> {
        (0..=depth).flat_map(|n| self.words_of_length(n)).collect()
    }

    fn right_lcm(&self, p: &Vec<u8>, q: &Vec<u8>) -> Lcm<Vec<u8>> {
        if is_prefix(p, q) {
            Lcm::Common(q.clone())
        } else if is_prefix(q, p) {
            Lcm::Common(p.clone())
        } else {
            Lcm::Disjoint
        }
    }

    fn left_divide(&self, p: &Vec<u8>, r: &Vec<u8>) -> Option<Vec<u8>> {
        r.strip_prefix(p.as_slice()).map(<[u8]>::to_vec)
    }

    fn show(&self, p: &Vec<u8>) -> String {
        if p.is_empty() {
            return "e".into();
        }
        p.iter().map(|&c| self.letters[c as usize]).collect()
    }

    fn parse(&self, s: &str) -> Result<Vec<u8>> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "ε" {
            return Ok(Vec::new());
        }
        s.chars()
            .map(|c| {
                self.letters
                    .iter()
                    .position(|&l| l == c)
                    .map(|i| i as u8)
                    .ok_or_else(|| Error::UnknownLabel(format!("letter {c:?} in {s:?}")))
            })
            .collect()
    }

    /// Exact: `F` is a foundation set iff every word of length `max |f|` has
    /// a prefix in `F`.
    fn foundation_exact(&self, f: &[Vec<u8>]) -> Option<FoundationVerdict<Vec<u8>>> {
        let Some(len) = f.iter().map(Vec::len).max() else {
            return Some(FoundationVerdict::No(Vec::new()));
        };
        for w in self.words_of_length(len) {
            if !f.iter().any(|x| is_prefix(x, &w)) {
                return Some(FoundationVerdict::No(w));
            }
        }
        Some(FoundationVerdict::Yes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_and_labels() {
        let m = FreeMonoid::new(5).unwrap();
        assert_eq!(m.letters(), &['a', 'b', 'c', 'd', 'f']);
        assert_eq!(m.enumerate(2).len(), 1 + 5 + 25);
        let w = m.parse("fab").unwrap();
        assert_eq!(m.show(&w), "fab");
        assert_eq!(m.show(&m.identity()), "e");
        assert!(FreeMonoid::with_alphabet(&['0', 'e']).is_err());
    }

    #[test]
    fn lcm_is_prefix_order() {
        let m = FreeMonoid::new(2).unwrap();
        let w = |s: &str| m.parse(s).unwrap();
        assert_eq!(m.right_lcm(&w("a"), &w("ab")), Lcm::Common(w("ab")));
        assert_eq!(m.right_lcm(&w("ab"), &w("ba")), Lcm::Disjoint);
        assert_eq!(m.left_divide(&w("a"), &w("abb")), Some(w("bb")));
        assert_eq!(m.left_divide(&w("b"), &w("abb")), None);
    }

    #[test]
    fn exact_foundation() {
        let m = FreeMonoid::new(2).unwrap();
        let w = |s: &str| m.parse(s).unwrap();
        assert!(m.foundation_exact(&[w("aa"), w("ab"), w("b")]).unwrap().is_yes());
        assert_eq!(
            m.foundation_exact(&[w("aa"), w("b")]).unwrap(),
            FoundationVerdict::No(w("ab"))
        );
        assert!(m.foundation_exact(&[w("e")]).unwrap().is_yes());
    }
}
