use proptest::prelude::*;

use super::*;
use crate::poly::{rat_eq, RationalFunction};
use crate::series::expand;

fn ab() -> OrderedAlphabet {
    OrderedAlphabet::from_vertex_labels(["a"])
}

fn word(alpha: &OrderedAlphabet, text: &str) -> Vec<Letter> {
    alpha.parse_word(text).unwrap()
}

/// All words over `alpha` of length at most `n`, shortlex.
fn all_words(alpha: &OrderedAlphabet, n: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for l in alpha.letters() {
                let mut w2: Vec<Letter> = w.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Words containing the letter `a^-1` an even number of times (two states).
fn even_inverses() -> Dfa {
    let alpha = ab();
    Dfa::new(alpha, vec![0, 1, 1, 0], 0, vec![true, false]).unwrap()
}

#[test]
fn from_words_accepts_exactly_those() {
    let alpha = ab();
    let ws = [word(&alpha, "a"), word(&alpha, "a^-1 a"), Vec::new()];
    let d = Dfa::from_words(&alpha, ws.iter().map(Vec::as_slice));
    for w in all_words(&alpha, 4) {
        assert_eq!(d.accepts(&w), ws.contains(&w), "{}", alpha.format_word(&w));
    }
    assert_eq!(d.words_up_to(3), vec![Vec::new(), word(&alpha, "a"), word(&alpha, "a^-1 a")]);
}

#[test]
fn minimize_merges_equivalent_states() {
    let alpha = ab();
    // Four states computing parity of length twice over.
    let d = Dfa::new(alpha, vec![1, 3, 2, 0, 3, 1, 0, 2], 0, vec![true, false, true, false]).unwrap();
    let m = minimize(&d);
    assert_eq!(m.state_count(), 2);
    assert!(equivalent(&d, &m).unwrap());
}

#[test]
fn growth_of_simple_languages() {
    let alpha = ab();
    // All words over two letters: 1/(1-2z).
    let all = Dfa::all_words(&alpha);
    assert!(rat_eq(&growth_series(&all), &RationalFunction::from_factors(&[1], &[&[1, -2]])));
    assert!(growth_series(&Dfa::empty_language(&alpha)).is_zero());
    assert!(rat_eq(&growth_series(&Dfa::epsilon_only(&alpha)), &RationalFunction::one()));
    let e = even_inverses();
    let r = growth_series(&e);
    let counts = count_words(&e, 10).as_u64();
    let exp = expand(&r, 10).unwrap();
    assert_eq!(exp.to_strings(), counts.iter().map(u64::to_string).collect::<Vec<_>>());
    assert!(rat_eq(&r, &growth_series_by_elimination(&e)));
}

#[test]
fn concat_and_cyc_perm_examples() {
    let alpha = ab();
    let a = Dfa::from_words(&alpha, [&word(&alpha, "a")[..]]);
    let b = Dfa::from_words(&alpha, [&word(&alpha, "a^-1 a^-1")[..]]);
    let ab = concat(&a, &b).unwrap();
    assert_eq!(ab.words_up_to(5), vec![word(&alpha, "a a^-1 a^-1")]);

    let c = cyc_perm(&ab);
    let mut got = c.words_up_to(5);
    got.sort();
    let mut want =
        vec![word(&alpha, "a a^-1 a^-1"), word(&alpha, "a^-1 a a^-1"), word(&alpha, "a^-1 a^-1 a")];
    want.sort();
    assert_eq!(got, want);

    assert!(equivalent(&cyc_perm(&Dfa::epsilon_only(&alpha)), &Dfa::epsilon_only(&alpha)).unwrap());
    assert!(equivalent(&cyc_perm(&Dfa::empty_language(&alpha)), &Dfa::empty_language(&alpha)).unwrap());
}

#[test]
fn json_round_trip() {
    let e = even_inverses();
    let j = e.to_json();
    let text = serde_json::to_string(&j).unwrap();
    let back = Dfa::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back, e);
}

#[test]
fn embed_into_larger_alphabet() {
    let small = ab();
    let big = OrderedAlphabet::from_vertex_labels(["a", "b"]);
    let d = Dfa::all_words(&small).embed_into(&big).unwrap();
    assert!(d.accepts(&word(&big, "a a^-1")));
    assert!(!d.accepts(&word(&big, "a b")));
    assert!(Dfa::all_words(&big).embed_into(&small).is_err());
}

#[test]
fn mismatched_alphabets_are_rejected() {
    let big = OrderedAlphabet::from_vertex_labels(["a", "b"]);
    let err = intersect(&Dfa::all_words(&ab()), &Dfa::all_words(&big)).unwrap_err();
    assert_eq!(err, AutomatonError::AlphabetMismatch);
}

/// Random complete automaton over a one- or two-generator alphabet.
fn arb_dfa() -> impl Strategy<Value = Dfa> {
    (1usize..=2, 1usize..=5).prop_flat_map(|(gens, n)| {
        let k = 2 * gens;
        (
            proptest::collection::vec(0..n as State, n * k),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(table, accepting)| {
                let labels = ["a", "b"][..gens].to_vec();
                Dfa::new(OrderedAlphabet::from_vertex_labels(labels), table, 0, accepting).unwrap()
            })
    })
}

fn same_alphabet_pair() -> impl Strategy<Value = (Dfa, Dfa)> {
    (arb_dfa(), arb_dfa()).prop_filter("same alphabet", |(a, b)| a.alphabet() == b.alphabet())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimize_is_idempotent_and_preserves_language(d in arb_dfa()) {
        let m = minimize(&d);
        prop_assert_eq!(minimize(&m), m.clone());
        prop_assert!(m.state_count() <= d.state_count());
        for w in all_words(d.alphabet(), 4) {
            prop_assert_eq!(d.accepts(&w), m.accepts(&w));
        }
    }

    #[test]
    fn boolean_operations_match_membership((a, b) in same_alphabet_pair()) {
        let i = intersect(&a, &b).unwrap();
        let u = union(&a, &b).unwrap();
        let ca = complement_lang(&a);
        for w in all_words(a.alphabet(), 4) {
            prop_assert_eq!(i.accepts(&w), a.accepts(&w) && b.accepts(&w));
            prop_assert_eq!(u.accepts(&w), a.accepts(&w) || b.accepts(&w));
            prop_assert_eq!(ca.accepts(&w), !a.accepts(&w));
        }
        // De Morgan
        let dm = complement_lang(&union(&complement_lang(&a), &complement_lang(&b)).unwrap());
        prop_assert!(equivalent(&dm, &i).unwrap());
        prop_assert!(is_subset(&i, &u).unwrap());
        prop_assert_eq!(equivalent(&a, &b).unwrap(), minimize(&a) == minimize(&b));
    }

    #[test]
    fn count_words_matches_enumeration(d in arb_dfa()) {
        let counts = count_words(&d, 4).as_u64();
        let mut by_len = [0u64; 5];
        for w in all_words(d.alphabet(), 4) {
            if d.accepts(&w) {
                by_len[w.len()] += 1;
            }
        }
        prop_assert_eq!(counts, by_len.to_vec());
    }

    #[test]
    fn growth_series_expands_to_counts(d in arb_dfa()) {
        let r = growth_series(&d);
        let counts = count_words(&d, 20).counts;
        let exp = expand(&r, 20).unwrap();
        let want: Vec<String> = counts.iter().map(ToString::to_string).collect();
        prop_assert_eq!(exp.to_strings(), want);
        prop_assert!(rat_eq(&r, &growth_series_by_elimination(&d)));
    }

    #[test]
    fn cyc_perm_matches_rotations(d in arb_dfa()) {
        let c = cyc_perm(&d);
        let words = all_words(d.alphabet(), 4);
        for w in &words {
            let rotated = (0..w.len().max(1)).any(|i| {
                let mut r = w[i.min(w.len())..].to_vec();
                r.extend_from_slice(&w[..i.min(w.len())]);
                d.accepts(&r)
            });
            prop_assert_eq!(c.accepts(w), rotated, "{}", d.alphabet().format_word(w));
        }
    }

    #[test]
    fn concat_matches_splits((a, b) in same_alphabet_pair()) {
        let c = concat(&a, &b).unwrap();
        for w in all_words(a.alphabet(), 4) {
            let split = (0..=w.len()).any(|i| a.accepts(&w[..i]) && b.accepts(&w[i..]));
            prop_assert_eq!(c.accepts(&w), split);
        }
    }
}
