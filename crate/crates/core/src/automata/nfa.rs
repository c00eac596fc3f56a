use std::collections::HashMap;

use super::{minimize, Dfa, State};
use crate::alphabet::{Letter, OrderedAlphabet};

/// Nondeterministic automaton with epsilon moves. Only used as an
/// intermediate; [`determinize`](Nfa::determinize) turns it into a [`Dfa`].
#[derive(Debug, Clone)]
pub struct Nfa {
    alphabet: OrderedAlphabet,
    /// `transitions[state][letter]`
    transitions: Vec<Vec<Vec<State>>>,
    epsilon: Vec<Vec<State>>,
    initial: Vec<State>,
    accepting: Vec<bool>,
}

impl Nfa {
    pub fn new(alphabet: OrderedAlphabet, states: usize) -> Self {
        let k = alphabet.len();
        Nfa {
            alphabet,
            transitions: vec![vec![Vec::new(); k]; states],
            epsilon: vec![Vec::new(); states],
            initial: Vec::new(),
            accepting: vec![false; states],
        }
    }

    pub fn from_dfa(d: &Dfa) -> Self {
        let mut nfa = Nfa::new(d.alphabet().clone(), d.state_count());
        for s in 0..d.state_count() as State {
            for l in d.alphabet().letters() {
                nfa.add_transition(s, l, d.step(s, l));
            }
            nfa.accepting[s as usize] = d.is_accepting(s);
        }
        nfa.initial.push(d.initial());
        nfa
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn add_transition(&mut self, from: State, l: Letter, to: State) {
        self.transitions[from as usize][l.index()].push(to);
    }

    pub fn add_epsilon(&mut self, from: State, to: State) {
        self.epsilon[from as usize].push(to);
    }

    pub fn add_initial(&mut self, s: State) {
        self.initial.push(s);
    }

    pub fn set_accepting(&mut self, s: State, accepting: bool) {
        self.accepting[s as usize] = accepting;
    }

    /// Copies of `a` and `b` side by side, with epsilon moves from the
    /// accepting states of `a` to the initial state of `b`.
    pub fn concatenation(a: &Dfa, b: &Dfa) -> Nfa {
        let offset = a.state_count() as State;
        let mut nfa = Nfa::new(a.alphabet().clone(), a.state_count() + b.state_count());
        for s in 0..a.state_count() as State {
            for l in a.alphabet().letters() {
                nfa.add_transition(s, l, a.step(s, l));
            }
            if a.is_accepting(s) {
                nfa.add_epsilon(s, offset + b.initial());
            }
        }
        for s in 0..b.state_count() as State {
            for l in b.alphabet().letters() {
                nfa.add_transition(offset + s, l, offset + b.step(s, l));
            }
            nfa.set_accepting(offset + s, b.is_accepting(s));
        }
        nfa.add_initial(a.initial());
        nfa
    }

    fn epsilon_closure(&self, set: &mut Vec<u64>) {
        let mut stack: Vec<u64> = set.clone();
        while let Some(s) = stack.pop() {
            for &t in &self.epsilon[s as usize] {
                if !set.contains(&(t as u64)) {
                    set.push(t as u64);
                    stack.push(t as u64);
                }
            }
        }
        set.sort_unstable();
        set.dedup();
    }

    pub fn determinize(&self) -> Dfa {
        let mut start: Vec<u64> = self.initial.iter().map(|&s| s as u64).collect();
        self.epsilon_closure(&mut start);
        subset_construction(
            &self.alphabet,
            start,
            |set, letter| {
                let mut next: Vec<u64> = set
                    .iter()
                    .flat_map(|&s| self.transitions[s as usize][letter].iter().map(|&t| t as u64))
                    .collect();
                next.sort_unstable();
                next.dedup();
                self.epsilon_closure(&mut next);
                next
            },
            |set| set.iter().any(|&s| self.accepting[s as usize]),
        )
    }
}

/// Generic subset construction. Subsets are sorted, deduplicated vectors of
/// opaque state codes; `step` must return its result in that normal form.
/// The empty subset becomes the rejecting sink. The result is minimized.
pub(crate) fn subset_construction(
    alphabet: &OrderedAlphabet,
    start: Vec<u64>,
    step: impl Fn(&[u64], usize) -> Vec<u64>,
    accept: impl Fn(&[u64]) -> bool,
) -> Dfa {
    let k = alphabet.len();
    let mut index: HashMap<Vec<u64>, State> = HashMap::new();
    let mut subsets: Vec<Vec<u64>> = vec![start.clone()];
    index.insert(start, 0);
    let mut table: Vec<State> = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        for l in 0..k {
            let next = step(&subsets[i], l);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = subsets.len() as State;
                    index.insert(next.clone(), id);
                    subsets.push(next);
                    id
                }
            };
            table.push(id);
        }
        i += 1;
    }
    let accepting = subsets.iter().map(|s| accept(s)).collect();
    minimize(&Dfa::new(alphabet.clone(), table, 0, accepting).expect("subset construction is complete"))
}
