//! Regular languages attached to a right-angled Artin group over its Artin
//! generators: geodesics, shortlex normal forms, their cyclic versions and
//! support restrictions.

use thiserror::Error;

use crate::alphabet::{Letter, OrderedAlphabet};
use crate::automata::{
    complement_lang, count_words, cyc_perm, growth_series, intersect, union, AutomatonError, Dfa,
    LengthCounts, State,
};
use crate::graph::{GraphError, SimpleGraph, VertexSet};
use crate::poly::RationalFunction;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LanguageError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error("vertex {0} out of range")]
    UnknownVertex(usize),
    #[error("letters {a} < {b} must belong to distinct adjacent vertices in increasing order")]
    NotAThreatPair { a: String, b: String },
    #[error("vertex set {0} is not indecomposable")]
    Decomposable(String),
    #[error("vertex set is empty")]
    EmptySubset,
}

fn check_vertex(alphabet: &OrderedAlphabet, v: usize) -> Result<(), LanguageError> {
    if v < alphabet.vertex_count() {
        Ok(())
    } else {
        Err(LanguageError::UnknownVertex(v))
    }
}

/// Builds a complete automaton from a per-state, per-letter transition rule.
fn tabulate(
    alphabet: &OrderedAlphabet,
    states: usize,
    accepting: &[State],
    delta: impl Fn(State, Letter) -> State,
) -> Dfa {
    let mut table = Vec::with_capacity(states * alphabet.len());
    for s in 0..states as State {
        table.extend(alphabet.letters().map(|l| delta(s, l)));
    }
    let mut acc = vec![false; states];
    for &s in accepting {
        acc[s as usize] = true;
    }
    Dfa::new(alphabet.clone(), table, 0, acc).expect("tabulated automaton is complete")
}

/// Accepts the words in which no sequence of commutations brings an
/// occurrence of `x_v` next to `x_v^-1`.
pub fn geo_checker(g: &SimpleGraph, alphabet: &OrderedAlphabet, v: usize) -> Result<Dfa, LanguageError> {
    check_vertex(alphabet, v)?;
    const Q1: State = 0;
    const Q2: State = 1;
    const Q3: State = 2;
    const Q4: State = 3;
    const F: State = 4;
    let [pos, neg] = alphabet.vertex_letters(v);
    Ok(tabulate(alphabet, 5, &[Q1, Q2, Q3, Q4], |s, l| {
        if s == F {
            return F;
        }
        if l == pos {
            return if s == Q3 { F } else { Q2 };
        }
        if l == neg {
            return if s == Q2 { F } else { Q3 };
        }
        if g.is_adjacent(l.vertex(), v) {
            s
        } else {
            Q4
        }
    }))
}

/// Geodesic words: the intersection of the checkers for all vertices.
pub fn geo_fsa(g: &SimpleGraph) -> Result<Dfa, LanguageError> {
    let alphabet = OrderedAlphabet::artin(g);
    let mut acc = Dfa::all_words(&alphabet);
    for v in 0..g.vertex_count() {
        acc = intersect(&acc, &geo_checker(g, &alphabet, v)?)?;
    }
    Ok(acc)
}

/// Words with no factor `b s a` in which every letter of `s` commutes with
/// `a`. Requires `a < b` with distinct adjacent vertices.
pub fn lex_threat(
    g: &SimpleGraph,
    alphabet: &OrderedAlphabet,
    a: Letter,
    b: Letter,
) -> Result<Dfa, LanguageError> {
    let (va, vb) = (a.vertex(), b.vertex());
    check_vertex(alphabet, va)?;
    check_vertex(alphabet, vb)?;
    if !(a < b && va != vb && g.is_adjacent(va, vb)) {
        return Err(LanguageError::NotAThreatPair { a: alphabet.name(a), b: alphabet.name(b) });
    }
    const IDLE: State = 0;
    const THREAT: State = 1;
    const DEAD: State = 2;
    Ok(tabulate(alphabet, 3, &[IDLE, THREAT], |s, l| match s {
        IDLE if l == b => THREAT,
        IDLE => IDLE,
        THREAT if l == a => DEAD,
        THREAT if g.is_adjacent(l.vertex(), va) => THREAT,
        THREAT => IDLE,
        _ => DEAD,
    }))
}

/// Shortlex normal forms: geodesics that are lexicographically least among
/// their commutation class.
pub fn shortlex_fsa(g: &SimpleGraph) -> Result<Dfa, LanguageError> {
    let alphabet = OrderedAlphabet::artin(g);
    let mut acc = geo_fsa(g)?;
    for a in alphabet.letters() {
        for b in alphabet.letters() {
            if a < b && a.vertex() != b.vertex() && g.is_adjacent(a.vertex(), b.vertex()) {
                acc = intersect(&acc, &lex_threat(g, &alphabet, a, b)?)?;
            }
        }
    }
    Ok(acc)
}

/// Words containing at least one letter `x_v^{±1}`.
pub fn support_require(alphabet: &OrderedAlphabet, v: usize) -> Result<Dfa, LanguageError> {
    check_vertex(alphabet, v)?;
    Ok(tabulate(alphabet, 2, &[1], |s, l| if s == 1 || l.vertex() == v { 1 } else { 0 }))
}

/// Words of `l` whose support is exactly `u`.
pub fn support_exact(l: &Dfa, u: VertexSet) -> Result<Dfa, LanguageError> {
    let alphabet = l.alphabet();
    let mut acc = l.clone();
    for v in u.iter() {
        acc = intersect(&acc, &support_require(alphabet, v)?)?;
    }
    let mut outside = Dfa::empty_language(alphabet);
    for v in (0..alphabet.vertex_count()).filter(|&v| !u.contains(v)) {
        outside = union(&outside, &support_require(alphabet, v)?)?;
    }
    Ok(intersect(&acc, &complement_lang(&outside))?)
}

/// Words all of whose cyclic permutations are shortlex normal forms.
pub fn cycsl_fsa(g: &SimpleGraph) -> Result<Dfa, LanguageError> {
    Ok(complement_lang(&cyc_perm(&complement_lang(&shortlex_fsa(g)?))))
}

/// Growth function and counts up to degree `n` of the cyclically shortlex
/// words with support exactly `u`. Computed inside the subgroup generated by
/// `u`, which gives the same language.
pub fn cycsl_support_series(
    g: &SimpleGraph,
    u: VertexSet,
    n: usize,
) -> Result<(RationalFunction, LengthCounts), LanguageError> {
    let d = cycsl_support_fsa(g, u)?;
    Ok((growth_series(&d), count_words(&d, n)))
}

/// The automaton behind [`cycsl_support_series`], over the alphabet of the
/// induced subgraph on `u`.
pub fn cycsl_support_fsa(g: &SimpleGraph, u: VertexSet) -> Result<Dfa, LanguageError> {
    if u.is_empty() {
        return Err(LanguageError::EmptySubset);
    }
    if !g.is_indecomposable(u) {
        return Err(LanguageError::Decomposable(g.format_set(u)));
    }
    let h = g.induced_subgraph(u)?;
    support_exact(&cycsl_fsa(&h)?, h.vertices())
}

/// Conjugacy geodesics: words all of whose cyclic permutations are geodesic.
pub fn conjgeo_fsa(g: &SimpleGraph) -> Result<Dfa, LanguageError> {
    Ok(complement_lang(&cyc_perm(&complement_lang(&geo_fsa(g)?))))
}

/// Words `w1 x_v^e w2 x_v^-e w3` with `w1`, `w3` over the letters of
/// neighbours of `v`.
pub fn lprime_fsa(g: &SimpleGraph, v: usize) -> Result<Dfa, LanguageError> {
    let alphabet = OrderedAlphabet::artin(g);
    check_vertex(&alphabet, v)?;
    // 0: before any v-letter. For e in {0: x_v, 1: x_v^-1}, base 1 + 3e:
    //   +0 last v-letter equals the first,
    //   +1 last v-letter is the inverse of the first, only neighbours since,
    //   +2 last v-letter is the inverse of the first, something else since.
    const DEAD: State = 7;
    Ok(tabulate(&alphabet, 8, &[2, 5], |s, l| {
        let near = l.vertex() != v && g.is_adjacent(l.vertex(), v);
        let sign = if l.is_positive() { 0 } else { 1 };
        match s {
            0 if l.vertex() == v => 1 + 3 * sign,
            0 if near => 0,
            0 | DEAD => DEAD,
            _ => {
                let e = (s - 1) / 3;
                let base = 1 + 3 * e;
                if l.vertex() == v {
                    if sign == e {
                        base
                    } else {
                        base + 1
                    }
                } else if s == base || near {
                    s
                } else {
                    base + 2
                }
            }
        }
    }))
}

/// Growth function of the conjugacy geodesics as an alternating sum over
/// vertex subsets `S` of the growth of `Geo ∩ ⋂_{v∈S} L'_v`.
pub fn conjgeo_series_incl_excl(g: &SimpleGraph) -> Result<RationalFunction, LanguageError> {
    let geo = geo_fsa(g)?;
    let primes: Vec<Dfa> = (0..g.vertex_count()).map(|v| lprime_fsa(g, v)).collect::<Result<_, _>>()?;
    let mut total = RationalFunction::zero();
    // Depth-first over subsets in increasing vertex order, reusing the
    // intersection of the prefix. An empty intersection prunes all supersets.
    let mut stack: Vec<(Dfa, usize, bool)> = vec![(geo, 0, false)];
    while let Some((d, next, odd)) = stack.pop() {
        let f = growth_series(&d);
        if f.is_zero() {
            continue;
        }
        total = if odd { total - f } else { total + f };
        for (v, p) in primes.iter().enumerate().skip(next) {
            stack.push((intersect(&d, p)?, v + 1, !odd));
        }
    }
    Ok(total)
}
