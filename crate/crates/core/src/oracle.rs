//! Brute-force reference computations on words, independent of the automata:
//! normal forms, element and conjugacy class enumeration, and cyclic
//! representatives and primitive words of finite languages.

use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

use crate::alphabet::{Letter, OrderedAlphabet};
use crate::graph::SimpleGraph;

pub type Word = Vec<Letter>;

/// Largest length accepted by the enumerations.
pub const MAX_LENGTH: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("length {found} exceeds the limit {limit}")]
    TooLong { found: usize, limit: usize },
    #[error("language is not closed under cyclic permutation (missing `{0}`)")]
    NotRotationClosed(String),
    #[error("language contains the empty word")]
    ContainsEmptyWord,
}

fn commute(g: &SimpleGraph, a: Letter, b: Letter) -> bool {
    a.vertex() != b.vertex() && g.is_adjacent(a.vertex(), b.vertex())
}

/// Removes pairs `x ... x^-1` whose intervening letters all commute with `x`
/// until none is left.
fn freely_reduce(g: &SimpleGraph, w: &[Letter]) -> Word {
    let mut w = w.to_vec();
    'outer: loop {
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[j] == w[i].inverse() {
                    w.remove(j);
                    w.remove(i);
                    continue 'outer;
                }
                if !commute(g, w[i], w[j]) {
                    break;
                }
            }
        }
        return w;
    }
}

/// Shortlex normal form of the element represented by `w`.
pub fn normal_form(g: &SimpleGraph, w: &[Letter]) -> Word {
    let mut rest = freely_reduce(g, w);
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best = 0;
        for i in 1..rest.len() {
            if rest[i] < rest[best] && rest[..i].iter().all(|&p| commute(g, p, rest[i])) {
                best = i;
            }
        }
        out.push(rest.remove(best));
    }
    out
}

/// Indices of letters that can be shuffled to the front of `w`.
fn front_movable(g: &SimpleGraph, w: &[Letter]) -> Vec<usize> {
    (0..w.len()).filter(|&i| w[..i].iter().all(|&p| commute(g, p, w[i]))).collect()
}

/// Indices of letters that can be shuffled to the end of `w`.
fn end_movable(g: &SimpleGraph, w: &[Letter]) -> Vec<usize> {
    (0..w.len()).filter(|&i| w[i + 1..].iter().all(|&p| commute(g, p, w[i]))).collect()
}

/// Conjugates of `w` obtained by carrying one letter around, in normal form.
fn cyclic_moves(g: &SimpleGraph, w: &[Letter]) -> Vec<Word> {
    let mut out = Vec::new();
    for i in front_movable(g, w) {
        let mut v = w.to_vec();
        let l = v.remove(i);
        v.push(l);
        out.push(normal_form(g, &v));
    }
    for i in end_movable(g, w) {
        let mut v = w.to_vec();
        let l = v.remove(i);
        v.insert(0, l);
        out.push(normal_form(g, &v));
    }
    out
}

/// A shortest element of the conjugacy class of `w`, in normal form.
pub fn cyclically_reduce(g: &SimpleGraph, w: &[Letter]) -> Word {
    let mut u = normal_form(g, w);
    'outer: loop {
        for v in cyclic_moves(g, &u) {
            if v.len() < u.len() {
                u = v;
                continue 'outer;
            }
        }
        return u;
    }
}

/// Canonical representative of the conjugacy class of `w`: the least normal
/// form of minimal length. Its length is the conjugacy length.
pub fn conjugacy_key(g: &SimpleGraph, w: &[Letter]) -> Word {
    let start = cyclically_reduce(g, w);
    let mut seen: HashSet<Word> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for v in cyclic_moves(g, &u) {
            debug_assert_eq!(v.len(), u.len(), "cyclically reduced words have minimal length");
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen.into_iter().min().expect("class is nonempty")
}

pub fn is_geodesic(g: &SimpleGraph, w: &[Letter]) -> bool {
    normal_form(g, w).len() == w.len()
}

pub fn is_shortlex(g: &SimpleGraph, w: &[Letter]) -> bool {
    normal_form(g, w) == w
}

pub fn is_conj_geodesic(g: &SimpleGraph, w: &[Letter]) -> bool {
    cyclically_reduce(g, w).len() == w.len()
}

fn check_length(n: usize) -> Result<(), OracleError> {
    if n > MAX_LENGTH {
        Err(OracleError::TooLong { found: n, limit: MAX_LENGTH })
    } else {
        Ok(())
    }
}

/// Normal forms of all elements of length at most `n`, grouped by length.
pub fn enumerate_elements(g: &SimpleGraph, n: usize) -> Result<Vec<Vec<Word>>, OracleError> {
    check_length(n)?;
    let alphabet = OrderedAlphabet::artin(g);
    let mut layers: Vec<Vec<Word>> = vec![vec![Vec::new()]];
    for len in 1..=n {
        let mut next: BTreeSet<Word> = BTreeSet::new();
        for w in &layers[len - 1] {
            for l in alphabet.letters() {
                let mut v = w.clone();
                v.push(l);
                let v = normal_form(g, &v);
                if v.len() == len {
                    next.insert(v);
                }
            }
        }
        layers.push(next.into_iter().collect());
    }
    Ok(layers)
}

/// Number of elements of each length `0..=n`.
pub fn element_counts(g: &SimpleGraph, n: usize) -> Result<Vec<u64>, OracleError> {
    Ok(enumerate_elements(g, n)?.iter().map(|l| l.len() as u64).collect())
}

/// Number of conjugacy classes of each minimal length `0..=n`.
pub fn enumerate_classes(g: &SimpleGraph, n: usize) -> Result<Vec<u64>, OracleError> {
    let layers = enumerate_elements(g, n)?;
    let mut keys: HashSet<Word> = HashSet::new();
    for layer in &layers {
        for w in layer {
            keys.insert(conjugacy_key(g, w));
        }
    }
    let mut counts = vec![0u64; n + 1];
    for k in keys {
        counts[k.len()] += 1;
    }
    Ok(counts)
}

fn rotations(w: &[Letter]) -> impl Iterator<Item = Word> + '_ {
    (0..w.len().max(1)).map(move |i| {
        let i = i.min(w.len());
        let mut r = w[i..].to_vec();
        r.extend_from_slice(&w[..i]);
        r
    })
}

/// The lexicographically least rotation of each word of a rotation-closed
/// finite language.
pub fn cycrep_bruteforce(
    alphabet: &OrderedAlphabet,
    words: &[Word],
) -> Result<BTreeSet<Word>, OracleError> {
    let set: HashSet<&[Letter]> = words.iter().map(Vec::as_slice).collect();
    let mut out = BTreeSet::new();
    for w in words {
        for r in rotations(w) {
            if !set.contains(r.as_slice()) {
                return Err(OracleError::NotRotationClosed(alphabet.format_word(&r)));
            }
        }
        out.insert(rotations(w).min().expect("at least one rotation"));
    }
    Ok(out)
}

/// Words of the language that are not proper powers of other members.
pub fn prim_bruteforce(words: &[Word]) -> Result<BTreeSet<Word>, OracleError> {
    if words.iter().any(Vec::is_empty) {
        return Err(OracleError::ContainsEmptyWord);
    }
    let set: HashSet<&[Letter]> = words.iter().map(Vec::as_slice).collect();
    Ok(words
        .iter()
        .filter(|w| {
            let n = w.len();
            !(1..n).filter(|d| n % d == 0).any(|d| {
                let root = &w[..d];
                set.contains(root) && w.chunks(d).all(|c| c == root)
            })
        })
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(x: &OrderedAlphabet, s: &str) -> Word {
        x.parse_word(s).unwrap()
    }

    /// All words reachable from `w` by commuting adjacent letters or deleting
    /// an adjacent inverse pair.
    fn rewrite_closure(g: &SimpleGraph, w: &[Letter]) -> HashSet<Word> {
        let mut seen = HashSet::from([w.to_vec()]);
        let mut queue = VecDeque::from([w.to_vec()]);
        while let Some(u) = queue.pop_front() {
            for i in 0..u.len().saturating_sub(1) {
                let mut next = Vec::new();
                if commute(g, u[i], u[i + 1]) {
                    let mut v = u.clone();
                    v.swap(i, i + 1);
                    next.push(v);
                }
                if u[i + 1] == u[i].inverse() {
                    let mut v = u.clone();
                    v.drain(i..i + 2);
                    next.push(v);
                }
                for v in next {
                    if seen.insert(v.clone()) {
                        queue.push_back(v);
                    }
                }
            }
        }
        seen
    }

    fn all_words(x: &OrderedAlphabet, n: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..n {
            layer = layer
                .iter()
                .flat_map(|u: &Word| x.letters().map(move |l| [u.clone(), vec![l]].concat()))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    #[test]
    fn normal_form_examples() {
        let z2 = SimpleGraph::complete(2);
        let x = OrderedAlphabet::artin(&z2);
        assert_eq!(normal_form(&z2, &w(&x, "a a^-1")), Vec::<Letter>::new());
        assert_eq!(normal_form(&z2, &w(&x, "b a")), w(&x, "a b"));
        assert_eq!(normal_form(&z2, &w(&x, "a b a^-1")), w(&x, "b"));
        let p = SimpleGraph::path(4);
        let x = OrderedAlphabet::artin(&p);
        assert_eq!(normal_form(&p, &w(&x, "c a")), w(&x, "c a"));
        assert_eq!(normal_form(&p, &w(&x, "b a")), w(&x, "a b"));
        assert_eq!(normal_form(&p, &w(&x, "a d c a^-1")), w(&x, "a c d a^-1"));
        assert_eq!(normal_form(&p, &w(&x, "a b a^-1")), w(&x, "b"));
    }

    #[test]
    fn normal_form_is_a_reachable_idempotent_invariant() {
        for g in [SimpleGraph::path(3), SimpleGraph::edgeless(2), SimpleGraph::complete(2)] {
            let x = OrderedAlphabet::artin(&g);
            let words = all_words(&x, 4);
            for u in &words {
                let nf = normal_form(&g, u);
                assert_eq!(normal_form(&g, &nf), nf);
                assert!(nf.len() <= u.len());
                let reach = rewrite_closure(&g, u);
                assert!(reach.contains(&nf), "{}", x.format_word(u));
                // Words with the same normal form are connected by rewriting.
                for v in &reach {
                    assert_eq!(normal_form(&g, v), nf);
                }
            }
        }
    }

    #[test]
    fn class_counts() {
        assert_eq!(enumerate_classes(&SimpleGraph::edgeless(2), 3).unwrap()[..3], [1, 4, 8]);
        assert_eq!(enumerate_classes(&SimpleGraph::complete(2), 4).unwrap(), [1, 4, 8, 12, 16]);
        assert_eq!(enumerate_classes(&SimpleGraph::edgeless(1), 4).unwrap(), [1, 2, 2, 2, 2]);
        assert_eq!(element_counts(&SimpleGraph::edgeless(2), 3).unwrap(), [1, 4, 12, 36]);
        assert_eq!(
            enumerate_classes(&SimpleGraph::edgeless(1), 9).unwrap_err(),
            OracleError::TooLong { found: 9, limit: MAX_LENGTH }
        );
    }

    #[test]
    fn conjugacy_keys() {
        let p = SimpleGraph::path(4);
        let x = OrderedAlphabet::artin(&p);
        // a commutes with b, so b a c a^-1 is conjugate to b c.
        assert_eq!(conjugacy_key(&p, &w(&x, "b a c a^-1")), conjugacy_key(&p, &w(&x, "c b")));
        assert_eq!(conjugacy_key(&p, &w(&x, "c a")), conjugacy_key(&p, &w(&x, "a c")));
        assert!(is_conj_geodesic(&p, &w(&x, "a c")));
        assert!(!is_conj_geodesic(&p, &w(&x, "a c a^-1")));
        assert!(is_geodesic(&p, &w(&x, "a c a^-1")));
        assert!(!is_shortlex(&p, &w(&x, "b a")));
    }

    #[test]
    fn cycrep_examples() {
        let x = OrderedAlphabet::from_vertex_labels(["a", "b"]);
        let ws = |ss: &[&str]| ss.iter().map(|s| w(&x, s)).collect::<Vec<_>>();
        let got = cycrep_bruteforce(&x, &ws(&["a b", "b a"])).unwrap();
        assert_eq!(got, ws(&["a b"]).into_iter().collect());
        let got = cycrep_bruteforce(&x, &ws(&["a a b", "a b a", "b a a", "b b a", "b a b", "a b b"])).unwrap();
        assert_eq!(got, ws(&["a a b", "a b b"]).into_iter().collect());
        assert!(matches!(cycrep_bruteforce(&x, &ws(&["a b"])), Err(OracleError::NotRotationClosed(_))));
    }

    #[test]
    fn prim_examples() {
        let x = OrderedAlphabet::from_vertex_labels(["a", "b"]);
        let ws = |ss: &[&str]| ss.iter().map(|s| w(&x, s)).collect::<Vec<_>>();
        assert_eq!(prim_bruteforce(&ws(&["a", "a a", "a b"])).unwrap(), ws(&["a", "a b"]).into_iter().collect());
        assert_eq!(prim_bruteforce(&ws(&["a", "a a a"])).unwrap(), ws(&["a"]).into_iter().collect());
        assert_eq!(prim_bruteforce(&[vec![]]).unwrap_err(), OracleError::ContainsEmptyWord);
    }
}
