//! Geodesic normal forms of PSL2(Z) elements and membership testing.
//!
//! Words are read over `{a, b, B}` where `B` is `b^-1`. Input may also use
//! `A` for `a^-1`, which equals `a` in the group.

use std::fmt;
use std::str::FromStr;

use crate::graph::{Graph, GraphError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    BInv,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid letter {0:?}; words use a, A, b, B")]
pub struct WordParseError(pub char);

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Normal-form predicate: no factor `aa`, `bb`, `BB`, `bB` or `Bb`.
    pub fn is_normal(&self) -> bool {
        self.0.windows(2).all(|w| reduce_pair(w[0], w[1]).is_none())
    }

    /// The geodesic representative of the same group element.
    pub fn normalize(&self) -> Word {
        let mut stack = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            push_reduced(&mut stack, l);
        }
        Word(stack)
    }

    /// Every normal word of length exactly `len`.
    pub fn all_normal(len: usize) -> Vec<Word> {
        if len == 0 {
            return vec![Word::default()];
        }
        let mut out: Vec<Word> =
            [Letter::A, Letter::B, Letter::BInv].iter().map(|&l| Word(vec![l])).collect();
        for _ in 1..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    let next: &[Letter] = if *w.0.last().unwrap() == Letter::A {
                        &[Letter::B, Letter::BInv]
                    } else {
                        &[Letter::A]
                    };
                    next.iter().map(move |&l| {
                        let mut v = w.0.clone();
                        v.push(l);
                        Word(v)
                    })
                })
                .collect();
        }
        out
    }
}

/// Result of rewriting the two-letter factor `xy`: `Some(None)` means it
/// cancels, `Some(Some(z))` means it becomes the single letter `z`, `None`
/// means it is already reduced.
fn reduce_pair(x: Letter, y: Letter) -> Option<Option<Letter>> {
    use Letter::*;
    match (x, y) {
        (A, A) | (B, BInv) | (BInv, B) => Some(None),
        (B, B) => Some(Some(BInv)),
        (BInv, BInv) => Some(Some(B)),
        _ => None,
    }
}

fn push_reduced(stack: &mut Vec<Letter>, mut letter: Letter) {
    loop {
        let Some(&top) = stack.last() else {
            stack.push(letter);
            return;
        };
        match reduce_pair(top, letter) {
            None => {
                stack.push(letter);
                return;
            }
            Some(None) => {
                stack.pop();
                return;
            }
            Some(Some(z)) => {
                stack.pop();
                letter = z;
            }
        }
    }
}

impl FromStr for Word {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                'a' | 'A' => Ok(Letter::A),
                'b' => Ok(Letter::B),
                'B' => Ok(Letter::BInv),
                other => Err(WordParseError(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|l| write!(f, "{}", l.as_char()))
    }
}

/// Whether the normal form of `w` labels a closed path at the root of `g`.
pub fn member(g: &Graph, w: &Word) -> Result<bool, GraphError> {
    let root = g.root().ok_or(GraphError::NoRoot)?;
    let mut at = root;
    for &l in w.normalize().letters() {
        let next = match l {
            Letter::A => g.step_a(at),
            Letter::B => g.step_b(at),
            Letter::BInv => g.step_b_inv(at),
        };
        match next {
            Some(v) => at = v,
            None => return Ok(false),
        }
    }
    Ok(at == root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::subgroup_h;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Repeated leftmost textual rewriting, independent of the stack reducer.
    fn rewrite_naive(s: &str) -> String {
        let mut cur = s.replace('A', "a");
        loop {
            let before = cur.clone();
            for (pat, rep) in [("aa", ""), ("bB", ""), ("Bb", ""), ("bb", "B"), ("BB", "b")] {
                if let Some(i) = cur.find(pat) {
                    cur.replace_range(i..i + 2, rep);
                    break;
                }
            }
            if cur == before {
                return cur;
            }
        }
    }

    #[test]
    fn normal_forms() {
        assert_eq!(w("aA").normalize().to_string(), "");
        assert_eq!(w("abb").normalize().to_string(), "aB");
        assert_eq!(w("abaB").normalize().to_string(), "abaB");
        assert_eq!(w("bbb").normalize().to_string(), "");
        assert_eq!(w("babBa").normalize().to_string(), "b");
        assert!("abc".parse::<Word>().is_err());
    }

    #[test]
    fn membership_in_two_triangle_subgroup() {
        let h = subgroup_h();
        assert!(member(&h, &w("abaB")).unwrap());
        assert!(member(&h, &w("babab")).unwrap());
        assert!(member(&h, &w("")).unwrap());
        assert!(!member(&h, &w("a")).unwrap());
        assert!(member(&h, &w("abbaB")).unwrap() == member(&h, &w("aBaB")).unwrap());
        assert_eq!(member(&h.with_root(None).unwrap(), &w("a")), Err(GraphError::NoRoot));
    }

    #[test]
    fn normal_word_enumeration() {
        assert_eq!(Word::all_normal(0).len(), 1);
        assert_eq!(Word::all_normal(1).len(), 3);
        // a(b|B)a... and (b|B)a(b|B)...
        assert_eq!(Word::all_normal(4).len(), 4 + 4);
        assert!(Word::all_normal(5).iter().all(Word::is_normal));
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent_and_normal(s in "[aAbB]{0,40}") {
            let n = w(&s).normalize();
            prop_assert!(n.is_normal());
            prop_assert_eq!(n.normalize(), n.clone());
        }

        #[test]
        fn stack_reduction_agrees_with_textual_rewriting(s in "[aAbB]{0,40}") {
            prop_assert_eq!(w(&s).normalize().to_string(), rewrite_naive(&s));
        }

        #[test]
        fn membership_ignores_normalization(s in "[aAbB]{0,20}") {
            let h = subgroup_h();
            let word = w(&s);
            prop_assert_eq!(member(&h, &word).unwrap(), member(&h, &word.normalize()).unwrap());
        }
    }
}
