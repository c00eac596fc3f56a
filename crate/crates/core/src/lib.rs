//! Growth series of right-angled Artin groups computed from finite automata.

pub mod alphabet;
pub mod automata;
pub mod cli;
pub mod graph;
pub mod languages;
pub mod oracle;
pub mod pipeline;
pub mod poly;
pub mod series;
