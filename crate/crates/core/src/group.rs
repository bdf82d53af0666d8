//! Generators, words and Cayley balls of realized group elements.
//!
//! A group element is identified with the transformation it induces (its
//! table over the acting point set), so the abstract group is always seen
//! through its faithful quotient on the space. Cayley balls are enumerated
//! breadth-first; the first word that reaches a table is its witness, which
//! makes witnesses shortest and, among shortest words, lexicographically
//! smallest in the declared label order.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::perm::Perm;

/// What is known about the order of the abstract group being presented.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PresentedOrder {
    #[default]
    Unknown,
    Finite(usize),
    Infinite,
}

/// How "non-identity element" is read.
///
/// `Realized` treats the action as an action of its realized group, so an
/// element is non-identity iff its map is not the identity map. `Presented`
/// reads it in the declared abstract group: when that group is strictly larger
/// than the realized one, some non-identity element acts trivially, so the
/// identity map also counts as coming from a non-identity element.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Semantics {
    #[default]
    Realized,
    Presented,
}

impl std::str::FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "realized" => Ok(Semantics::Realized),
            "presented" => Ok(Semantics::Presented),
            other => Err(Error::InvalidParameter(format!("unknown semantics `{other}`"))),
        }
    }
}

/// A word over generator indices; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `s · self`
    pub fn prepend(&self, s: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(s);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn display<'a>(&'a self, gens: &'a GeneratorSystem) -> impl fmt::Display + 'a {
        WordDisplay { word: self, gens }
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    gens: &'a GeneratorSystem,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("e");
        }
        for (i, &l) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&self.gens.labels[l])?;
        }
        Ok(())
    }
}

/// A finite symmetric generating set: labels plus an involutive inverse pairing.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSystem {
    labels: Vec<String>,
    inverse: Vec<usize>,
    relations: Vec<(Word, Word)>,
    order: PresentedOrder,
}

impl GeneratorSystem {
    /// `pairs` lists `(s, s⁻¹)`; labels not mentioned are their own inverse.
    pub fn new<S: AsRef<str>>(labels: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        if labels.is_empty() {
            return Err(Error::InvalidGenerators("no generators".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l == "e" || l.contains(char::is_whitespace) {
                return Err(Error::InvalidGenerators(format!("invalid label `{l}`")));
            }
            if labels[..i].contains(l) {
                return Err(Error::InvalidGenerators(format!("duplicate label `{l}`")));
            }
        }
        let find = |l: &str| {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let mut inverse: Vec<Option<usize>> = vec![None; labels.len()];
        for (a, b) in pairs {
            let (a, b) = (find(a.as_ref())?, find(b.as_ref())?);
            for (x, y) in [(a, b), (b, a)] {
                match inverse[x] {
                    Some(prev) if prev != y => {
                        return Err(Error::InvalidGenerators(format!(
                            "`{}` is paired with both `{}` and `{}`",
                            labels[x], labels[prev], labels[y]
                        )))
                    }
                    _ => inverse[x] = Some(y),
                }
            }
        }
        let inverse = inverse.iter().enumerate().map(|(i, inv)| inv.unwrap_or(i)).collect();
        Ok(GeneratorSystem { labels, inverse, relations: Vec::new(), order: PresentedOrder::Unknown })
    }

    pub fn with_order(mut self, order: PresentedOrder) -> Self {
        self.order = order;
        self
    }

    pub fn with_relation(mut self, lhs: &str, rhs: &str) -> Result<Self> {
        let pair = (self.parse_word(lhs)?, self.parse_word(rhs)?);
        self.relations.push(pair);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    pub fn inverse_of(&self, s: usize) -> usize {
        self.inverse[s]
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    pub fn order(&self) -> PresentedOrder {
        self.order
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Parses a word. Letters may be separated by whitespace, `·` or `*`;
    /// unseparated runs are split greedily by longest matching label.
    /// `e` or the empty string is the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split(|c: char| c.is_whitespace() || c == '·' || c == '*') {
            if token.is_empty() || token == "e" {
                continue;
            }
            let mut rest = token;
            while !rest.is_empty() {
                let best = self
                    .labels
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| rest.starts_with(l.as_str()))
                    .max_by_key(|(_, l)| l.len())
                    .ok_or_else(|| Error::UnknownLabel(rest.to_string()))?;
                letters.push(best.0);
                rest = &rest[best.1.len()..];
            }
        }
        Ok(Word(letters))
    }

    pub fn inverse_word(&self, w: &Word) -> Word {
        Word(w.0.iter().rev().map(|&s| self.inverse[s]).collect())
    }
}

/// A group element realized by its transformation table, with a shortest
/// witness word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedElement {
    table: Perm,
    witness: Word,
}

impl RealizedElement {
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table.apply(x)
    }

    /// Full table, including any companion points (see
    /// [`GroupAction::with_companion`]).
    pub fn table(&self) -> &Perm {
        &self.table
    }

    pub fn witness(&self) -> &Word {
        &self.witness
    }

    pub fn length(&self) -> usize {
        self.witness.len()
    }

    pub fn is_identity(&self) -> bool {
        self.table.is_identity()
    }
}

/// The realized elements of word length at most `radius`.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    radius: usize,
    elements: Vec<RealizedElement>,
    lookup: HashMap<Perm, usize>,
    left: Vec<Vec<Option<usize>>>,
    saturated: bool,
}

impl CayleyBall {
    /// Breadth-first enumeration from generator tables. A saturated ball
    /// records the largest word length actually needed as its radius.
    pub(crate) fn enumerate(tables: &[Perm], radius: usize) -> Self {
        let n = tables.first().map_or(0, Perm::len);
        let id = Perm::identity(n);
        let mut elements = vec![RealizedElement { table: id.clone(), witness: Word::identity() }];
        let mut lookup = HashMap::from([(id, 0usize)]);
        let mut frontier = vec![0usize];
        let mut saturated = false;
        let mut level = 0;
        loop {
            // Outer loop over letters, inner over the (lexicographically
            // ordered) frontier keeps the new layer in lexicographic order.
            let mut next = Vec::new();
            let mut fresh: Vec<RealizedElement> = Vec::new();
            let mut fresh_lookup: HashMap<Perm, ()> = HashMap::new();
            for (s, table) in tables.iter().enumerate() {
                for &g in &frontier {
                    let h = table.compose(&elements[g].table);
                    if lookup.contains_key(&h) || fresh_lookup.contains_key(&h) {
                        continue;
                    }
                    fresh_lookup.insert(h.clone(), ());
                    fresh.push(RealizedElement { table: h, witness: elements[g].witness.prepend(s) });
                }
            }
            if fresh.is_empty() {
                saturated = true;
                break;
            }
            if level == radius {
                break;
            }
            for e in fresh {
                let idx = elements.len();
                lookup.insert(e.table.clone(), idx);
                elements.push(e);
                next.push(idx);
            }
            frontier = next;
            level += 1;
        }
        let radius = if saturated { level } else { radius };
        let left = elements
            .iter()
            .map(|g| tables.iter().map(|t| lookup.get(&t.compose(&g.table)).copied()).collect())
            .collect();
        CayleyBall { radius, elements, lookup, left, saturated }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True iff the ball of radius `radius + 1` adds nothing, i.e. the
    /// realized group is finite and fully enumerated.
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn elements(&self) -> &[RealizedElement] {
        &self.elements
    }

    pub fn get(&self, g: usize) -> &RealizedElement {
        &self.elements[g]
    }

    /// Index of the identity element (always 0).
    pub fn identity(&self) -> usize {
        0
    }

    pub fn index_of(&self, table: &Perm) -> Option<usize> {
        self.lookup.get(table).copied()
    }

    /// Index of `s · g` if it lies in the ball.
    #[inline]
    pub fn left_mul(&self, g: usize, s: usize) -> Option<usize> {
        self.left[g][s]
    }

    /// Cayley edges `(g, s, s·g)` with both endpoints in the ball.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.left
            .iter()
            .enumerate()
            .flat_map(|(g, row)| row.iter().enumerate().filter_map(move |(s, h)| h.map(|h| (g, s, h))))
    }

    pub fn non_identity(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&g| !self.elements[g].is_identity())
    }
}

/// Ball of radius `k` for `action`.
pub fn cayley_ball(action: &GroupAction, k: usize) -> CayleyBall {
    action.cayley_ball(k)
}

/// Smallest `C >= 1` such that every generator of each action is a word of
/// length at most `C` in the generators of the other.
pub fn word_length_constant(a: &GroupAction, b: &GroupAction, horizon: usize) -> Result<usize> {
    if a.space().len() != b.space().len() {
        return Err(Error::GeneratorMismatch("actions live on spaces of different size".into()));
    }
    let mut constant = 1;
    for (from, to) in [(a, b), (b, a)] {
        let ball = to.cayley_ball(horizon);
        let mut lengths: HashMap<&[usize], usize> = HashMap::new();
        for e in ball.elements() {
            let map = &e.table().table()[..to.space().len()];
            lengths.entry(map).or_insert(e.length());
        }
        for s in 0..from.generators().len() {
            let map = from.generator_map(s).table();
            let len = lengths
                .get(map)
                .ok_or_else(|| Error::HorizonExhausted(from.generators().label(s).to_string(), horizon))?;
            constant = constant.max(*len);
        }
    }
    Ok(constant)
}
