//! Complete deterministic automata over an [`OrderedAlphabet`], with the
//! closure operations the growth computations need.
//!
//! Every [`Dfa`] is complete: a rejecting sink is present whenever some word
//! cannot be extended to an accepted one, so complementation is a flip of the
//! accepting set. Operations that build new automata return them minimized
//! and canonically numbered (see [`minimize`]).

mod growth;
mod minimize;
mod nfa;

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alphabet::{Letter, OrderedAlphabet};

pub use growth::{growth_series, growth_series_by_elimination};
pub use minimize::minimize;
pub use nfa::Nfa;

pub type State = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("transition table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("state {0} out of range")]
    StateOutOfRange(u64),
    #[error("automaton has no states")]
    NoStates,
    #[error("letter `{0}` not in the target alphabet")]
    UnknownLetter(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: OrderedAlphabet,
    /// `table[state * |X| + letter]`
    table: Vec<State>,
    initial: State,
    accepting: Vec<bool>,
}

impl std::fmt::Debug for Dfa {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Dfa({} states over {:?})", self.state_count(), self.alphabet)
    }
}

impl Dfa {
    pub fn new(
        alphabet: OrderedAlphabet,
        table: Vec<State>,
        initial: State,
        accepting: Vec<bool>,
    ) -> Result<Self, AutomatonError> {
        let n = accepting.len();
        if n == 0 {
            return Err(AutomatonError::NoStates);
        }
        let k = alphabet.len();
        if table.len() != n * k {
            return Err(AutomatonError::TableSize { expected: n * k, found: table.len() });
        }
        if let Some(&bad) = table.iter().find(|&&t| t as usize >= n) {
            return Err(AutomatonError::StateOutOfRange(bad as u64));
        }
        if initial as usize >= n {
            return Err(AutomatonError::StateOutOfRange(initial as u64));
        }
        Ok(Dfa { alphabet, table, initial, accepting })
    }

    /// Accepts every word.
    pub fn all_words(alphabet: &OrderedAlphabet) -> Self {
        Dfa::new(alphabet.clone(), vec![0; alphabet.len()], 0, vec![true]).expect("valid")
    }

    /// Accepts nothing.
    pub fn empty_language(alphabet: &OrderedAlphabet) -> Self {
        Dfa::new(alphabet.clone(), vec![0; alphabet.len()], 0, vec![false]).expect("valid")
    }

    /// Accepts exactly the given words.
    pub fn from_words<'a>(
        alphabet: &OrderedAlphabet,
        words: impl IntoIterator<Item = &'a [Letter]>,
    ) -> Self {
        // A trie with state 0 as the sink.
        let k = alphabet.len();
        let mut table = vec![0; 2 * k];
        let mut accepting = vec![false, false];
        for w in words {
            let mut s = 1usize;
            for &l in w {
                let next = table[s * k + l.index()] as usize;
                s = if next == 0 {
                    let fresh = accepting.len();
                    accepting.push(false);
                    table.extend(std::iter::repeat_n(0, k));
                    table[s * k + l.index()] = fresh as State;
                    fresh
                } else {
                    next
                };
            }
            accepting[s] = true;
        }
        minimize(&Dfa::new(alphabet.clone(), table, 1, accepting).expect("valid"))
    }

    /// Accepts exactly the empty word.
    pub fn epsilon_only(alphabet: &OrderedAlphabet) -> Self {
        Dfa::from_words(alphabet, [&[][..]])
    }

    pub fn alphabet(&self) -> &OrderedAlphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn is_accepting(&self, s: State) -> bool {
        self.accepting[s as usize]
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    #[inline]
    pub fn step(&self, s: State, l: Letter) -> State {
        self.table[s as usize * self.alphabet.len() + l.index()]
    }

    #[inline]
    fn step_index(&self, s: State, letter: usize) -> State {
        self.table[s as usize * self.alphabet.len() + letter]
    }

    pub fn run_from(&self, s: State, word: &[Letter]) -> State {
        word.iter().fold(s, |s, &l| self.step(s, l))
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.is_accepting(self.run_from(self.initial, word))
    }

    fn check_alphabet(&self, other: &Dfa) -> Result<(), AutomatonError> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(AutomatonError::AlphabetMismatch)
        }
    }

    /// States from which some accepting state is reachable.
    pub(crate) fn coaccessible(&self) -> Vec<bool> {
        let n = self.state_count();
        let k = self.alphabet.len();
        let mut reverse: Vec<Vec<State>> = vec![Vec::new(); n];
        for s in 0..n {
            for l in 0..k {
                reverse[self.table[s * k + l] as usize].push(s as State);
            }
        }
        let mut live = self.accepting.clone();
        let mut queue: VecDeque<usize> = (0..n).filter(|&s| live[s]).collect();
        while let Some(t) = queue.pop_front() {
            for &s in &reverse[t] {
                if !live[s as usize] {
                    live[s as usize] = true;
                    queue.push_back(s as usize);
                }
            }
        }
        live
    }

    /// `reach[p][q]`: some word leads from `p` to `q`.
    pub(crate) fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.state_count();
        let k = self.alphabet.len();
        (0..n)
            .map(|p| {
                let mut seen = vec![false; n];
                seen[p] = true;
                let mut stack = vec![p];
                while let Some(s) = stack.pop() {
                    for l in 0..k {
                        let t = self.table[s * k + l] as usize;
                        if !seen[t] {
                            seen[t] = true;
                            stack.push(t);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    /// Re-reads the automaton over a larger alphabet: letters of `target` absent
    /// from `self`'s alphabet lead to a rejecting sink.
    pub fn embed_into(&self, target: &OrderedAlphabet) -> Result<Dfa, AutomatonError> {
        let map = self.alphabet.embedding_into(target).ok_or_else(|| {
            let missing = self
                .alphabet
                .letters()
                .find(|&l| target.parse_letter(&self.alphabet.name(l)).is_none())
                .map(|l| self.alphabet.name(l))
                .unwrap_or_default();
            AutomatonError::UnknownLetter(missing)
        })?;
        let n = self.state_count();
        let sink = n as State;
        let k = target.len();
        let mut table = vec![sink; (n + 1) * k];
        for s in 0..n {
            for (l, &t) in map.iter().enumerate() {
                table[s * k + t.index()] = self.table[s * self.alphabet.len() + l];
            }
        }
        let mut accepting = self.accepting.clone();
        accepting.push(false);
        Ok(minimize(&Dfa::new(target.clone(), table, self.initial, accepting)?))
    }

    /// Accepted words of length at most `n`, in shortlex order.
    pub fn words_up_to(&self, n: usize) -> Vec<Vec<Letter>> {
        let live = self.coaccessible();
        let mut out = Vec::new();
        let mut layer: Vec<(State, Vec<Letter>)> = vec![(self.initial, Vec::new())];
        for len in 0..=n {
            for (s, w) in &layer {
                if self.is_accepting(*s) {
                    out.push(w.clone());
                }
            }
            if len == n {
                break;
            }
            let mut next = Vec::new();
            for (s, w) in &layer {
                for l in self.alphabet.letters() {
                    let t = self.step(*s, l);
                    if live[t as usize] {
                        let mut w2 = w.clone();
                        w2.push(l);
                        next.push((t, w2));
                    }
                }
            }
            layer = next;
        }
        out
    }

    pub fn to_json(&self) -> DfaJson {
        let k = self.alphabet.len();
        DfaJson {
            alphabet: self.alphabet.letters().map(|l| self.alphabet.name(l)).collect(),
            states: self.state_count(),
            transitions: self.table.chunks(k.max(1)).map(|c| c.to_vec()).collect(),
            initial: self.initial,
            accepting: (0..self.state_count() as State).filter(|&s| self.is_accepting(s)).collect(),
        }
    }

    /// Reads a dump produced by [`to_json`](Self::to_json); the alphabet is
    /// rebuilt from the generator names.
    pub fn from_json(j: &DfaJson) -> Result<Dfa, AutomatonError> {
        let labels: Vec<String> = j.alphabet.iter().step_by(2).cloned().collect();
        let alphabet = OrderedAlphabet::from_vertex_labels(labels);
        if alphabet.letters().map(|l| alphabet.name(l)).ne(j.alphabet.iter().cloned()) {
            return Err(AutomatonError::AlphabetMismatch);
        }
        let mut accepting = vec![false; j.states];
        for &s in &j.accepting {
            *accepting
                .get_mut(s as usize)
                .ok_or(AutomatonError::StateOutOfRange(s as u64))? = true;
        }
        if j.transitions.len() != j.states {
            return Err(AutomatonError::TableSize {
                expected: j.states * alphabet.len(),
                found: j.transitions.iter().map(Vec::len).sum(),
            });
        }
        let table = j.transitions.concat();
        Dfa::new(alphabet, table, j.initial, accepting)
    }
}

/// Dense JSON dump of an automaton, for debugging and fixtures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaJson {
    pub alphabet: Vec<String>,
    pub states: usize,
    /// One row per state, one column per letter in letter order.
    pub transitions: Vec<Vec<State>>,
    pub initial: State,
    pub accepting: Vec<State>,
}

/// Product automaton over reachable state pairs.
fn product(a: &Dfa, b: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Result<Dfa, AutomatonError> {
    a.check_alphabet(b)?;
    let k = a.alphabet.len();
    let mut index: HashMap<(State, State), State> = HashMap::new();
    let mut pairs = vec![(a.initial, b.initial)];
    index.insert((a.initial, b.initial), 0);
    let mut table = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        for l in 0..k {
            let next = (a.step_index(p, l), b.step_index(q, l));
            let id = *index.entry(next).or_insert_with(|| {
                pairs.push(next);
                (pairs.len() - 1) as State
            });
            table.push(id);
        }
        i += 1;
    }
    let accepting = pairs.iter().map(|&(p, q)| accept(a.is_accepting(p), b.is_accepting(q))).collect();
    Ok(minimize(&Dfa::new(a.alphabet.clone(), table, 0, accepting)?))
}

pub fn intersect(a: &Dfa, b: &Dfa) -> Result<Dfa, AutomatonError> {
    product(a, b, |x, y| x && y)
}

pub fn union(a: &Dfa, b: &Dfa) -> Result<Dfa, AutomatonError> {
    product(a, b, |x, y| x || y)
}

/// Intersection of a nonempty list of automata, minimizing after every step.
pub fn intersect_all<'a>(
    automata: impl IntoIterator<Item = &'a Dfa>,
) -> Result<Option<Dfa>, AutomatonError> {
    let mut acc: Option<Dfa> = None;
    for d in automata {
        acc = Some(match acc {
            None => minimize(d),
            Some(a) => intersect(&a, d)?,
        });
    }
    Ok(acc)
}

pub fn complement_lang(a: &Dfa) -> Dfa {
    let mut c = a.clone();
    c.accepting.iter_mut().for_each(|x| *x = !*x);
    minimize(&c)
}

/// `L(a) = L(b)`, decided by searching the product for a pair of states that
/// disagree on acceptance.
pub fn equivalent(a: &Dfa, b: &Dfa) -> Result<bool, AutomatonError> {
    a.check_alphabet(b)?;
    let k = a.alphabet.len();
    let mut seen = std::collections::HashSet::new();
    let mut queue = VecDeque::from([(a.initial, b.initial)]);
    seen.insert((a.initial, b.initial));
    while let Some((p, q)) = queue.pop_front() {
        if a.is_accepting(p) != b.is_accepting(q) {
            return Ok(false);
        }
        for l in 0..k {
            let next = (a.step_index(p, l), b.step_index(q, l));
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(true)
}

/// `L(a) ⊆ L(b)`.
pub fn is_subset(a: &Dfa, b: &Dfa) -> Result<bool, AutomatonError> {
    equivalent(&intersect(a, b)?, a)
}

/// `{wu : w ∈ L(a), u ∈ L(b)}`.
pub fn concat(a: &Dfa, b: &Dfa) -> Result<Dfa, AutomatonError> {
    a.check_alphabet(b)?;
    Ok(minimize(&Nfa::concatenation(a, b).determinize()))
}

/// Closure under cyclic permutation: `{vu : uv ∈ L(a)}`.
///
/// A word `vu` is accepted when, for some state `q`, `v` leads from `q` to an
/// accepting state and `u` leads from the initial state to `q`. The subset
/// construction runs directly over pairs (target `q`, current state) in two
/// phases, pruning runs that can no longer succeed.
pub fn cyc_perm(a: &Dfa) -> Dfa {
    let a = minimize(a);
    let n = a.state_count();
    let live = a.coaccessible();
    let reach = a.reachability();
    let q0 = a.initial;

    const PHASE2: u64 = 1 << 63;
    let pack = |phase2: bool, target: State, at: State| -> u64 {
        (if phase2 { PHASE2 } else { 0 }) | (target as u64) << 32 | at as u64
    };
    // Phase 1 reads v from `target`; reaching an accepting state opens phase 2
    // at the initial state, which then reads u and must end on `target`.
    let close = |set: &mut Vec<u64>| {
        let mut extra = Vec::new();
        for &x in set.iter() {
            if x & PHASE2 == 0 {
                let (target, at) = ((x >> 32) as State, x as State);
                if a.is_accepting(at) && reach[q0 as usize][target as usize] {
                    extra.push(pack(true, target, q0));
                }
            }
        }
        set.extend(extra);
        set.sort_unstable();
        set.dedup();
    };
    let keep = |phase2: bool, target: State, at: State| -> bool {
        if phase2 {
            reach[at as usize][target as usize]
        } else {
            live[at as usize]
        }
    };

    let mut start: Vec<u64> =
        (0..n as State).filter(|&q| live[q as usize]).map(|q| pack(false, q, q)).collect();
    close(&mut start);

    nfa::subset_construction(
        &a.alphabet,
        start,
        |set, letter| {
            let mut next: Vec<u64> = set
                .iter()
                .filter_map(|&x| {
                    let phase2 = x & PHASE2 != 0;
                    let target = ((x >> 32) & 0x7fff_ffff) as State;
                    let at = a.step_index(x as State, letter);
                    keep(phase2, target, at).then(|| pack(phase2, target, at))
                })
                .collect();
            close(&mut next);
            next
        },
        |set| {
            set.iter().any(|&x| x & PHASE2 != 0 && ((x >> 32) & 0x7fff_ffff) as State == x as State)
        },
    )
}

/// Number of accepted words of each length `0..=max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthCounts {
    pub counts: Vec<BigUint>,
}

impl LengthCounts {
    pub fn max_degree(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn as_u64(&self) -> Vec<u64> {
        self.counts.iter().map(|c| u64::try_from(c).expect("count fits in u64")).collect()
    }
}

/// Counts accepted words by length with a forward pass over the transition table.
pub fn count_words(a: &Dfa, n: usize) -> LengthCounts {
    let k = a.alphabet.len();
    let states = a.state_count();
    let mut current = vec![BigUint::zero(); states];
    current[a.initial as usize] = BigUint::from(1u8);
    let mut counts = Vec::with_capacity(n + 1);
    for len in 0..=n {
        counts.push(
            (0..states).filter(|&s| a.accepting[s]).fold(BigUint::zero(), |acc, s| acc + &current[s]),
        );
        if len == n {
            break;
        }
        let mut next = vec![BigUint::zero(); states];
        for s in 0..states {
            if current[s].is_zero() {
                continue;
            }
            for l in 0..k {
                next[a.table[s * k + l] as usize] += &current[s];
            }
        }
        current = next;
    }
    LengthCounts { counts }
}

#[cfg(test)]
mod tests;
