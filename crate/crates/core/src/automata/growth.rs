//! Length generating functions of regular languages.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{count_words, Dfa};
use crate::poly::{Poly, RationalFunction};
use crate::series::expand;

/// Transition-count matrix restricted to live states (accessible and
/// coaccessible), with the initial state's row index and accepting flags.
/// `None` when the language is empty.
struct Trimmed {
    /// `m[p][q]`: number of letters leading from `p` to `q`.
    m: Vec<Vec<u64>>,
    initial: usize,
    accepting: Vec<bool>,
}

fn trim(a: &Dfa) -> Option<Trimmed> {
    let a = super::minimize(a);
    let live = a.coaccessible();
    if !live[a.initial as usize] {
        return None;
    }
    let mut index = vec![usize::MAX; a.state_count()];
    let mut states = Vec::new();
    for s in 0..a.state_count() {
        if live[s] {
            index[s] = states.len();
            states.push(s);
        }
    }
    let n = states.len();
    let mut m = vec![vec![0u64; n]; n];
    for (i, &s) in states.iter().enumerate() {
        for l in a.alphabet.letters() {
            let t = a.step(s as u32, l) as usize;
            if live[t] {
                m[i][index[t]] += 1;
            }
        }
    }
    Some(Trimmed {
        m,
        initial: index[a.initial as usize],
        accepting: states.iter().map(|&s| a.accepting[s]).collect(),
    })
}

/// Shortest linear recurrence generating `s`: returns the connection
/// polynomial `C` (with `C(0) = 1`) and its length.
fn berlekamp_massey(s: &[BigRational]) -> (Vec<BigRational>, usize) {
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut last = BigRational::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=len.min(c.len() - 1) {
            d += &c[i] * &s[n - i];
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let coef = &d / &last;
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + shift] -= &coef * bi;
        }
        if 2 * len <= n {
            len = n + 1 - len;
            b = prev;
            last = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.truncate(len + 1);
    (c, len)
}

/// Integer polynomial proportional to the given rational coefficients.
fn clear_denominators(coeffs: &[BigRational], lcm: &BigInt) -> Poly {
    Poly::new(coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect())
}

/// Rational generating function `sum_n |L ∩ X^n| z^n` of the accepted
/// language.
///
/// With `n` live states the denominator has degree at most `n` and the
/// numerator degree below `n`, so `2n` terms of the counting sequence
/// determine it; the recurrence is recovered with Berlekamp-Massey and the
/// result is checked against further terms.
pub fn growth_series(a: &Dfa) -> RationalFunction {
    let Some(t) = trim(a) else {
        return RationalFunction::zero();
    };
    let n = t.m.len();
    let terms = 2 * n + 2;
    let counts: Vec<BigInt> =
        count_words(a, terms - 1).counts.into_iter().map(BigInt::from).collect();
    let s: Vec<BigRational> = counts.iter().cloned().map(BigRational::from_integer).collect();
    let (c, len) = berlekamp_massey(&s);
    assert!(len <= n, "recurrence longer than the state count");

    // P = C * S mod z^len
    let p: Vec<BigRational> = (0..len)
        .map(|k| (0..=k.min(c.len() - 1)).fold(BigRational::zero(), |acc, i| acc + &c[i] * &s[k - i]))
        .collect();
    let lcm = c.iter().chain(p.iter()).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let r = RationalFunction::new(clear_denominators(&p, &lcm), clear_denominators(&c, &lcm))
        .expect("connection polynomial has constant term 1");

    let check = expand(&r, terms - 1).expect("denominator has constant term 1");
    assert_eq!(check.coeffs(), &counts[..], "recovered series disagrees with the word counts");
    r
}

/// Same result as [`growth_series`], computed by solving `(I - zM) x = f`
/// with fraction-free elimination over `Z[z]`. Slow; meant for cross-checks
/// on small automata.
pub fn growth_series_by_elimination(a: &Dfa) -> RationalFunction {
    let Some(t) = trim(a) else {
        return RationalFunction::zero();
    };
    let n = t.m.len();
    let system: Vec<Vec<Poly>> = (0..n)
        .map(|p| {
            (0..n)
                .map(|q| {
                    let diag = if p == q { 1 } else { 0 };
                    Poly::from_i64(&[diag, -(t.m[p][q] as i64)])
                })
                .collect()
        })
        .collect();
    let den = bareiss_det(system.clone());
    // Cramer's rule for the initial state's unknown.
    let mut replaced = system;
    for (p, row) in replaced.iter_mut().enumerate() {
        row[t.initial] = Poly::from_i64(&[t.accepting[p] as i64]);
    }
    let num = bareiss_det(replaced);
    RationalFunction::new(num, den).expect("det(I - zM) has constant term 1")
}

/// Determinant over `Z[z]` by Bareiss elimination with row pivoting.
fn bareiss_det(mut a: Vec<Vec<Poly>>) -> Poly {
    let n = a.len();
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Poly::zero();
        };
        if pivot != k {
            a.swap(pivot, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].clone() * a[i][j].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v.div_exact_poly(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a.last().map_or(Poly::one(), |row| row[n - 1].clone());
    if sign {
        -det
    } else {
        det
    }
}
