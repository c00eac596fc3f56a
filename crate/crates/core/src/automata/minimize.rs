use std::collections::VecDeque;

use super::{Dfa, State};

/// Minimal complete automaton for `L(a)`, states numbered in breadth-first
/// order from the initial state (letters in alphabet order). Two automata
/// accept the same language iff their minimizations are identical.
pub fn minimize(a: &Dfa) -> Dfa {
    let k = a.alphabet.len();

    // Restrict to the accessible part.
    let reachable = bfs_order(a.state_count(), a.initial, |s, l| a.table[s as usize * k + l], k);
    let n = reachable.len();
    let mut old_to_new = vec![State::MAX; a.state_count()];
    for (i, &s) in reachable.iter().enumerate() {
        old_to_new[s as usize] = i as State;
    }
    let table: Vec<State> = reachable
        .iter()
        .flat_map(|&s| (0..k).map(move |l| (s, l)))
        .map(|(s, l)| old_to_new[a.table[s as usize * k + l] as usize])
        .collect();
    let accepting: Vec<bool> = reachable.iter().map(|&s| a.accepting[s as usize]).collect();

    let class = hopcroft(n, k, &table, &accepting);

    // Quotient automaton, then canonical renumbering.
    let classes = class.iter().copied().max().map_or(0, |m| m + 1);
    let mut q_table = vec![0 as State; classes * k];
    let mut q_accepting = vec![false; classes];
    for s in 0..n {
        let c = class[s];
        q_accepting[c] = accepting[s];
        for l in 0..k {
            q_table[c * k + l] = class[table[s * k + l] as usize] as State;
        }
    }
    let q_initial = class[0] as State;
    let order = bfs_order(classes, q_initial, |s, l| q_table[s as usize * k + l], k);
    let mut rank = vec![0 as State; classes];
    for (i, &c) in order.iter().enumerate() {
        rank[c as usize] = i as State;
    }
    let mut out_table = vec![0 as State; classes * k];
    let mut out_accepting = vec![false; classes];
    for (i, &c) in order.iter().enumerate() {
        out_accepting[i] = q_accepting[c as usize];
        for l in 0..k {
            out_table[i * k + l] = rank[q_table[c as usize * k + l] as usize];
        }
    }
    Dfa { alphabet: a.alphabet.clone(), table: out_table, initial: 0, accepting: out_accepting }
}

fn bfs_order(n: usize, start: State, step: impl Fn(State, usize) -> State, k: usize) -> Vec<State> {
    let mut seen = vec![false; n];
    let mut order = vec![start];
    seen[start as usize] = true;
    let mut i = 0;
    while i < order.len() {
        let s = order[i];
        for l in 0..k {
            let t = step(s, l);
            if !seen[t as usize] {
                seen[t as usize] = true;
                order.push(t);
            }
        }
        i += 1;
    }
    order
}

/// Hopcroft partition refinement; returns the class index of each state.
fn hopcroft(n: usize, k: usize, table: &[State], accepting: &[bool]) -> Vec<usize> {
    // inverse[l][t] = states s with table[s][l] = t, as CSR.
    let mut inv_start = vec![0usize; k * n + 1];
    for s in 0..n {
        for l in 0..k {
            inv_start[l * n + table[s * k + l] as usize + 1] += 1;
        }
    }
    for i in 0..k * n {
        inv_start[i + 1] += inv_start[i];
    }
    let mut inv = vec![0 as State; n * k];
    let mut fill = inv_start.clone();
    for s in 0..n {
        for l in 0..k {
            let key = l * n + table[s * k + l] as usize;
            inv[fill[key]] = s as State;
            fill[key] += 1;
        }
    }

    let mut block_of = vec![0usize; n];
    let mut blocks: Vec<Vec<State>> = Vec::new();
    let acc: Vec<State> = (0..n as State).filter(|&s| accepting[s as usize]).collect();
    let rej: Vec<State> = (0..n as State).filter(|&s| !accepting[s as usize]).collect();
    for part in [acc, rej] {
        if !part.is_empty() {
            let id = blocks.len();
            for &s in &part {
                block_of[s as usize] = id;
            }
            blocks.push(part);
        }
    }

    let mut work: VecDeque<(usize, usize)> = VecDeque::new();
    if blocks.len() == 2 {
        let small = if blocks[0].len() <= blocks[1].len() { 0 } else { 1 };
        work.extend((0..k).map(|l| (small, l)));
    }

    let mut touched_count = vec![0usize; n];
    let mut marked = vec![false; n];
    while let Some((splitter, l)) = work.pop_front() {
        // Predecessors of the splitter block on letter l.
        let mut preds: Vec<State> = Vec::new();
        for &t in &blocks[splitter] {
            let key = l * n + t as usize;
            for &s in &inv[inv_start[key]..inv_start[key + 1]] {
                if !marked[s as usize] {
                    marked[s as usize] = true;
                    preds.push(s);
                }
            }
        }
        let mut touched_blocks: Vec<usize> = Vec::new();
        for &s in &preds {
            let b = block_of[s as usize];
            if touched_count[b] == 0 {
                touched_blocks.push(b);
            }
            touched_count[b] += 1;
        }
        for b in touched_blocks {
            let hit = touched_count[b];
            touched_count[b] = 0;
            if hit == blocks[b].len() {
                continue;
            }
            let (inside, outside): (Vec<State>, Vec<State>) =
                blocks[b].iter().partition(|&&s| marked[s as usize]);
            // The old id keeps the larger half, the new id gets the smaller.
            let (keep, split) =
                if inside.len() >= outside.len() { (inside, outside) } else { (outside, inside) };
            let new_id = blocks.len();
            for &s in &split {
                block_of[s as usize] = new_id;
            }
            blocks[b] = keep;
            blocks.push(split);
            work.extend((0..k).map(|m| (new_id, m)));
        }
        for &s in &preds {
            marked[s as usize] = false;
        }
    }
    block_of
}
