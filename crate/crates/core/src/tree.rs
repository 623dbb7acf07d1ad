//! Path execution and full-tree construction with the two permuting moves of
//! the reference Sage session, plus the nested-list serializations.
//!
//! Every walk starts from `[1, α, 1, β, 1, γ]` and applies the mandatory
//! prefix (right, then left) before the caller's word.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde_json::Value;

use crate::dual::ShadowTriple;
use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

/// Default cap on `build_tree` heights; node values grow doubly exponentially.
pub const DEFAULT_MAX_HEIGHT: usize = 25;

/// Subtrees taller than this are filled with `rayon::join`.
const PARALLEL_FILL_HEIGHT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Left,
    Right,
}

impl Move {
    pub fn as_char(self) -> char {
        match self {
            Move::Left => 'l',
            Move::Right => 'r',
        }
    }
}

impl TryFrom<char> for Move {
    type Error = Error;

    fn try_from(c: char) -> Result<Self> {
        match c.to_ascii_lowercase() {
            'l' => Ok(Move::Left),
            'r' => Ok(Move::Right),
            _ => Err(Error::parse("move (l or r)", c.to_string())),
        }
    }
}

/// A word over `{l, r}` addressing a node below the mandatory prefix.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MovePath(pub Vec<Move>);

impl MovePath {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn child(&self, mv: Move) -> Self {
        let mut moves = self.0.clone();
        moves.push(mv);
        Self(moves)
    }

    /// All words of exactly `len` moves, in breadth-first order (`l` before `r`).
    pub fn all_of_length(len: usize) -> impl Iterator<Item = MovePath> {
        (0u64..(1u64 << len)).map(move |bits| {
            MovePath(
                (0..len)
                    .map(|i| {
                        if bits >> (len - 1 - i) & 1 == 0 {
                            Move::Left
                        } else {
                            Move::Right
                        }
                    })
                    .collect(),
            )
        })
    }
}

impl FromStr for MovePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(Move::try_from)
            .collect::<Result<Vec<_>>>()
            .map(MovePath)
            .map_err(|_| Error::parse("move path over {l, r}", s))
    }
}

impl fmt::Display for MovePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.0 {
            write!(f, "{}", m.as_char())?;
        }
        Ok(())
    }
}

/// `[a, alpha, b, beta, c, gamma]`, the interleaved row format.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SixTuple {
    pub a: Rational,
    pub alpha: Rational,
    pub b: Rational,
    pub beta: Rational,
    pub c: Rational,
    pub gamma: Rational,
}

/// Field names in serialization order.
pub const FIELD_NAMES: [&str; 6] = ["a", "alpha", "b", "beta", "c", "gamma"];

impl SixTuple {
    pub fn root(alpha: Rational, beta: Rational, gamma: Rational) -> Self {
        Self {
            a: Rational::one(),
            alpha,
            b: Rational::one(),
            beta,
            c: Rational::one(),
            gamma,
        }
    }

    pub fn from_array(values: [Rational; 6]) -> Self {
        let [a, alpha, b, beta, c, gamma] = values;
        Self {
            a,
            alpha,
            b,
            beta,
            c,
            gamma,
        }
    }

    pub fn from_ints(values: [i64; 6]) -> Self {
        Self::from_array(values.map(|v| Rational::from_integer(v.into())))
    }

    pub fn fields(&self) -> [&Rational; 6] {
        [
            &self.a,
            &self.alpha,
            &self.b,
            &self.beta,
            &self.c,
            &self.gamma,
        ]
    }

    pub fn field(&self, index: usize) -> Option<&Rational> {
        self.fields().get(index).copied()
    }

    pub fn bodies(&self) -> [&Rational; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn shadows(&self) -> [&Rational; 3] {
        [&self.alpha, &self.beta, &self.gamma]
    }

    pub fn to_triple(&self) -> ShadowTriple {
        ShadowTriple::from_parts(
            self.bodies().map(Clone::clone),
            self.shadows().map(Clone::clone),
        )
    }

    pub fn step(&self, mv: Move) -> Result<Self> {
        match mv {
            Move::Left => sage_move_left(self),
            Move::Right => sage_move_right(self),
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.fields()
                .iter()
                .map(|r| Value::String(r.to_string()))
                .collect(),
        )
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let items = value
            .as_array()
            .filter(|items| items.len() == 6)
            .ok_or_else(|| Error::parse("six-tuple", value.to_string()))?;
        let mut fields = Vec::with_capacity(6);
        for item in items {
            let text = item
                .as_str()
                .ok_or_else(|| Error::parse("rational string", item.to_string()))?;
            fields.push(parse_rational(text)?);
        }
        let fields: [Rational; 6] = fields.try_into().expect("six fields");
        Ok(Self::from_array(fields))
    }
}

impl fmt::Display for SixTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.fields().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

fn two() -> Rational {
    Rational::from_integer(2.into())
}

/// Mutation on the second entry, then `(a, b, c) ← (a, c, b')`.
pub fn sage_move_left(s: &SixTuple) -> Result<SixTuple> {
    if s.b.is_zero() {
        return Err(Error::DivisionByZero("left move with b = 0"));
    }
    let corner = (&s.a * &s.a + &s.c * &s.c) / &s.b;
    let gamma = (-(&corner * &s.beta) + two() * &s.a * &s.alpha + two() * &s.c * &s.gamma) / &s.b;
    Ok(SixTuple {
        a: s.a.clone(),
        alpha: s.alpha.clone(),
        b: s.c.clone(),
        beta: s.gamma.clone(),
        c: corner,
        gamma,
    })
}

/// Mutation on the first entry, then `(a, b, c) ← (c, b, a')`.
pub fn sage_move_right(s: &SixTuple) -> Result<SixTuple> {
    if s.a.is_zero() {
        return Err(Error::DivisionByZero("right move with a = 0"));
    }
    let corner = (&s.b * &s.b + &s.c * &s.c) / &s.a;
    let gamma = (-(&corner * &s.alpha) + two() * &s.b * &s.beta + two() * &s.c * &s.gamma) / &s.a;
    Ok(SixTuple {
        a: s.c.clone(),
        alpha: s.gamma.clone(),
        b: s.b.clone(),
        beta: s.beta.clone(),
        c: corner,
        gamma,
    })
}

/// The node reached by the mandatory prefix (right, then left).
pub fn prefix_node(alpha: Rational, beta: Rational, gamma: Rational) -> Result<SixTuple> {
    SixTuple::root(alpha, beta, gamma)
        .step(Move::Right)?
        .step(Move::Left)
}

/// Every row visited from the root along `r`, `l`, then `word`; `word.len() + 3` rows.
pub fn path(alpha: Rational, beta: Rational, gamma: Rational, word: &MovePath) -> Result<Vec<SixTuple>> {
    let mut rows = Vec::with_capacity(word.len() + 3);
    let mut current = SixTuple::root(alpha, beta, gamma);
    rows.push(current.clone());
    for &mv in [Move::Right, Move::Left].iter().chain(word.moves()) {
        current = current.step(mv)?;
        rows.push(current.clone());
    }
    Ok(rows)
}

/// Perfect binary tree of rows; `None` is the empty tree `[]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShadowTree(pub Option<Box<TreeNode>>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub node: SixTuple,
    pub left: ShadowTree,
    pub right: ShadowTree,
}

impl ShadowTree {
    pub fn empty() -> Self {
        Self(None)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    pub fn root(&self) -> Option<&SixTuple> {
        self.0.as_deref().map(|n| &n.node)
    }

    pub fn height(&self) -> usize {
        match &self.0 {
            None => 0,
            Some(n) => 1 + n.left.height().max(n.right.height()),
        }
    }

    pub fn node_count(&self) -> usize {
        match &self.0 {
            None => 0,
            Some(n) => 1 + n.left.node_count() + n.right.node_count(),
        }
    }

    /// The node at `word` below the tree root.
    pub fn node_at(&self, word: &MovePath) -> Option<&SixTuple> {
        let mut current = self.0.as_deref()?;
        for mv in word.moves() {
            let next = match mv {
                Move::Left => &current.left,
                Move::Right => &current.right,
            };
            current = next.0.as_deref()?;
        }
        Some(&current.node)
    }

    /// Nodes with their addresses, level by level, left before right.
    pub fn nodes_breadth_first(&self) -> Vec<(MovePath, &SixTuple)> {
        let mut out = Vec::new();
        let mut level: Vec<(MovePath, &TreeNode)> = self
            .0
            .as_deref()
            .map(|n| vec![(MovePath::empty(), n)])
            .unwrap_or_default();
        while !level.is_empty() {
            let mut next = Vec::with_capacity(level.len() * 2);
            for (word, node) in level {
                if let Some(l) = node.left.0.as_deref() {
                    next.push((word.child(Move::Left), l));
                }
                if let Some(r) = node.right.0.as_deref() {
                    next.push((word.child(Move::Right), r));
                }
                out.push((word, &node.node));
            }
            level = next;
        }
        out
    }

    /// Single-line Sage nested list: `[[a, alpha, b, beta, c, gamma], left, right]`.
    pub fn to_sage_compact(&self) -> String {
        let mut out = String::new();
        self.write_compact(&mut out);
        out
    }

    fn write_compact(&self, out: &mut String) {
        match &self.0 {
            None => out.push_str("[]"),
            Some(n) => {
                out.push('[');
                out.push_str(&n.node.to_string());
                out.push_str(", ");
                n.left.write_compact(out);
                out.push_str(", ");
                n.right.write_compact(out);
                out.push(']');
            }
        }
    }

    /// Sage pretty-printer layout: leaves on one line, children indented one column.
    pub fn to_sage_pretty(&self) -> String {
        let mut out = String::new();
        self.write_pretty(&mut out, 0);
        out
    }

    fn write_pretty(&self, out: &mut String, indent: usize) {
        match &self.0 {
            None => out.push_str("[]"),
            Some(n) if n.left.is_empty() && n.right.is_empty() => self.write_compact(out),
            Some(n) => {
                let pad = " ".repeat(indent + 1);
                out.push('[');
                out.push_str(&n.node.to_string());
                out.push_str(",\n");
                out.push_str(&pad);
                n.left.write_pretty(out, indent + 1);
                out.push_str(",\n");
                out.push_str(&pad);
                n.right.write_pretty(out, indent + 1);
                out.push(']');
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match &self.0 {
            None => Value::Array(Vec::new()),
            Some(n) => Value::Array(vec![n.node.to_json(), n.left.to_json(), n.right.to_json()]),
        }
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let items = value
            .as_array()
            .ok_or_else(|| Error::parse("tree", value.to_string()))?;
        match items.as_slice() {
            [] => Ok(Self::empty()),
            [node, left, right] => {
                let tree = Self(Some(Box::new(TreeNode {
                    node: SixTuple::from_json(node)?,
                    left: Self::from_json(left)?,
                    right: Self::from_json(right)?,
                })));
                Ok(tree)
            }
            _ => Err(Error::parse("tree", value.to_string())),
        }
    }
}

/// Fills a perfect tree of `height` levels below the prefix node.
pub fn build_tree(alpha: Rational, beta: Rational, gamma: Rational, height: usize) -> Result<ShadowTree> {
    build_tree_limited(alpha, beta, gamma, height, DEFAULT_MAX_HEIGHT)
}

pub fn build_tree_limited(
    alpha: Rational,
    beta: Rational,
    gamma: Rational,
    height: usize,
    limit: usize,
) -> Result<ShadowTree> {
    if height > limit {
        return Err(Error::DepthLimit {
            requested: height,
            limit,
        });
    }
    if height == 0 {
        return Ok(ShadowTree::empty());
    }
    let start = prefix_node(alpha, beta, gamma)?;
    fill(start, height)
}

fn fill(node: SixTuple, height: usize) -> Result<ShadowTree> {
    if height == 1 {
        return Ok(ShadowTree(Some(Box::new(TreeNode {
            node,
            left: ShadowTree::empty(),
            right: ShadowTree::empty(),
        }))));
    }
    let left = sage_move_left(&node)?;
    let right = sage_move_right(&node)?;
    let (left, right) = if height > PARALLEL_FILL_HEIGHT {
        rayon::join(|| fill(left, height - 1), || fill(right, height - 1))
    } else {
        (fill(left, height - 1), fill(right, height - 1))
    };
    Ok(ShadowTree(Some(Box::new(TreeNode {
        node,
        left: left?,
        right: right?,
    }))))
}

/// `(c, γ)` of the prefix node and of the nodes `direction`, `direction²`, …;
/// `count` pairs in total.
pub fn branch_sequence(
    alpha: Rational,
    beta: Rational,
    gamma: Rational,
    direction: Move,
    count: usize,
) -> Result<Vec<(Rational, Rational)>> {
    if count == 0 {
        return Err(Error::Precondition("branch count must be at least 1".into()));
    }
    let mut node = prefix_node(alpha, beta, gamma)?;
    let mut out = Vec::with_capacity(count);
    out.push((node.c.clone(), node.gamma.clone()));
    for _ in 1..count {
        node = node.step(direction)?;
        out.push((node.c.clone(), node.gamma.clone()));
    }
    Ok(out)
}

/// Single-line list of rows.
pub fn rows_to_sage_compact(rows: &[SixTuple]) -> String {
    let items: Vec<String> = rows.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(", "))
}

/// One row per line, as the Sage pretty-printer lays out a list of lists.
pub fn rows_to_sage_pretty(rows: &[SixTuple]) -> String {
    let items: Vec<String> = rows.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(",\n "))
}

pub fn rows_to_json(rows: &[SixTuple]) -> Value {
    Value::Array(rows.iter().map(SixTuple::to_json).collect())
}
