//! The Artin generating set of a graph: one generator and its inverse per
//! vertex, ordered vertex block by vertex block with `x_v < x_v^-1`.

use std::fmt;

use crate::graph::SimpleGraph;

/// A letter of an [`OrderedAlphabet`]. Letter `2v` is the generator of vertex
/// `v`, letter `2v + 1` its inverse, and the numeric order is the letter order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(pub u16);

impl Letter {
    pub fn generator(v: usize) -> Letter {
        Letter(2 * v as u16)
    }

    pub fn inverse_generator(v: usize) -> Letter {
        Letter(2 * v as u16 + 1)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn vertex(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderedAlphabet {
    vertex_labels: Vec<String>,
}

impl fmt::Debug for OrderedAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.letters().map(|l| self.name(l))).finish()
    }
}

impl OrderedAlphabet {
    /// The Artin generating set of `g`, letters ordered by vertex listing order.
    pub fn artin(g: &SimpleGraph) -> Self {
        OrderedAlphabet { vertex_labels: g.labels().to_vec() }
    }

    pub fn from_vertex_labels<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        OrderedAlphabet { vertex_labels: labels.into_iter().map(Into::into).collect() }
    }

    pub fn len(&self) -> usize {
        2 * self.vertex_labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_labels.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.len() as u16).map(Letter)
    }

    /// Letters of vertex `v`, generator first.
    pub fn vertex_letters(&self, v: usize) -> [Letter; 2] {
        [Letter::generator(v), Letter::inverse_generator(v)]
    }

    /// `a` for a generator, `a^-1` for its inverse.
    pub fn name(&self, l: Letter) -> String {
        let base = &self.vertex_labels[l.vertex()];
        if l.is_positive() {
            base.clone()
        } else {
            format!("{base}^-1")
        }
    }

    /// Looks a letter up by its [`name`](Self::name).
    pub fn parse_letter(&self, name: &str) -> Option<Letter> {
        let (base, positive) = match name.strip_suffix("^-1") {
            Some(b) => (b, false),
            None => (name, true),
        };
        let v = self.vertex_labels.iter().position(|l| l == base)?;
        Some(if positive { Letter::generator(v) } else { Letter::inverse_generator(v) })
    }

    /// Renders a word as space-separated letter names; the empty word is `ε`.
    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        w.iter().map(|&l| self.name(l)).collect::<Vec<_>>().join(" ")
    }

    /// Parses a space-separated word.
    pub fn parse_word(&self, text: &str) -> Option<Vec<Letter>> {
        text.split_whitespace().map(|t| self.parse_letter(t)).collect()
    }

    /// Maps each letter of `self` to the letter with the same name in `larger`.
    pub fn embedding_into(&self, larger: &OrderedAlphabet) -> Option<Vec<Letter>> {
        self.letters().map(|l| larger.parse_letter(&self.name(l))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_structure() {
        let g = SimpleGraph::path(3);
        let x = OrderedAlphabet::artin(&g);
        assert_eq!(x.len(), 6);
        for l in x.letters() {
            assert_eq!(l.inverse().inverse(), l);
            assert_eq!(l.inverse().vertex(), l.vertex());
            assert_ne!(l.inverse(), l);
        }
        // Compatible with the vertex order.
        let letters: Vec<_> = x.letters().collect();
        for w in letters.windows(2) {
            assert!(w[0].vertex() <= w[1].vertex());
        }
        assert_eq!(x.name(Letter(3)), "b^-1");
        assert_eq!(x.parse_letter("c^-1"), Some(Letter(5)));
        assert_eq!(x.parse_word("a b^-1 c").unwrap(), vec![Letter(0), Letter(3), Letter(4)]);
        assert_eq!(x.format_word(&[]), "ε");
    }

    #[test]
    fn embedding_by_name() {
        let small = OrderedAlphabet::from_vertex_labels(["b", "d"]);
        let big = OrderedAlphabet::from_vertex_labels(["a", "b", "c", "d"]);
        assert_eq!(
            small.embedding_into(&big).unwrap(),
            vec![Letter(2), Letter(3), Letter(6), Letter(7)]
        );
        assert!(big.embedding_into(&small).is_none());
    }
}
