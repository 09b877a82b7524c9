//! Threshold graph representations.
//!
//! A connected threshold graph is stored as its cotree part sequence
//! `T(a_1, ..., a_r)`: a caterpillar-shaped path of interior nodes where the
//! node at depth `i` carries `a_i` leaves. Odd depths are join nodes, even
//! depths are union nodes, and depth 1 (the root) is always a join, which is
//! exactly the connectivity assumption. The equivalent creation-order binary
//! sequence lists one bit per vertex: 1 for a dominating vertex, 0 for an
//! isolated one. Reading the bit word as maximal runs gives the cotree parts
//! from the deepest node to the root.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// Interior node kind: join connects everything below, union does not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Join,
    Union,
}

impl NodeKind {
    /// Kind of the interior node at 1-based depth `depth`.
    pub fn at_depth(depth: usize) -> NodeKind {
        if depth % 2 == 1 {
            NodeKind::Join
        } else {
            NodeKind::Union
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CotreeError {
    #[error("cotree needs at least one part")]
    Empty,
    #[error("part a{index} is 0; every part must be at least 1")]
    ZeroPart { index: usize },
    #[error("deepest part a{depth} = {value}; the deepest node needs at least 2 leaves")]
    ShallowTail { depth: usize, value: u64 },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {position}: expected {expected}")]
    Syntax {
        position: usize,
        expected: &'static str,
    },
    #[error("part at byte {position} does not fit in 64 bits")]
    PartTooLarge { position: usize },
    #[error(transparent)]
    Invariant(#[from] CotreeError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BinaryError {
    #[error("empty creation sequence")]
    Empty,
    #[error("disconnected graph: the final bit must be 1 (last vertex dominating)")]
    Disconnected,
    #[error("single-vertex graph is not representable (deepest node needs 2 leaves)")]
    SingleVertex,
    #[error("invalid character `{ch}` at position {position}; expected 0 or 1")]
    UnexpectedChar { ch: char, position: usize },
    #[error("malformed run-length token `{token}`")]
    BadRun { token: String },
}

/// Cotree of a connected threshold graph: the part sequence `(a_1, ..., a_r)`
/// with `a_i >= 1` and `a_r >= 2`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cotree {
    parts: Vec<u64>,
}

impl Cotree {
    pub fn new(parts: Vec<u64>) -> Result<Self, CotreeError> {
        if parts.is_empty() {
            return Err(CotreeError::Empty);
        }
        for (i, &p) in parts.iter().enumerate() {
            if p == 0 {
                return Err(CotreeError::ZeroPart { index: i + 1 });
            }
        }
        let last = *parts.last().expect("non-empty");
        if last < 2 {
            return Err(CotreeError::ShallowTail {
                depth: parts.len(),
                value: last,
            });
        }
        Ok(Cotree { parts })
    }

    /// Parses the `T(a1,...,ar)` notation, whitespace tolerated.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        skip_ws(&mut pos);
        if pos >= bytes.len() || bytes[pos] != b'T' {
            return Err(ParseError::Syntax {
                position: pos,
                expected: "`T`",
            });
        }
        pos += 1;
        skip_ws(&mut pos);
        if pos >= bytes.len() || bytes[pos] != b'(' {
            return Err(ParseError::Syntax {
                position: pos,
                expected: "`(`",
            });
        }
        pos += 1;
        let mut parts = Vec::new();
        loop {
            skip_ws(&mut pos);
            let start = pos;
            let mut value: u128 = 0;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                value = value * 10 + u128::from(bytes[pos] - b'0');
                if value > u128::from(u64::MAX) {
                    return Err(ParseError::PartTooLarge { position: start });
                }
                pos += 1;
            }
            if pos == start {
                return Err(ParseError::Syntax {
                    position: pos,
                    expected: "digit",
                });
            }
            parts.push(value as u64);
            skip_ws(&mut pos);
            match bytes.get(pos) {
                Some(b',') => pos += 1,
                Some(b')') => {
                    pos += 1;
                    break;
                }
                _ => {
                    return Err(ParseError::Syntax {
                        position: pos,
                        expected: "`,` or `)`",
                    })
                }
            }
        }
        skip_ws(&mut pos);
        if pos != bytes.len() {
            return Err(ParseError::Syntax {
                position: pos,
                expected: "end of input",
            });
        }
        Ok(Cotree::new(parts)?)
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Depth `r` of the cotree path.
    pub fn depth(&self) -> usize {
        self.parts.len()
    }

    /// Total vertex count `n`.
    pub fn vertex_count(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// Kind of the node at 1-based depth `i`.
    pub fn kind_at(&self, depth: usize) -> NodeKind {
        debug_assert!(depth >= 1 && depth <= self.depth());
        NodeKind::at_depth(depth)
    }

    pub fn join_count(&self) -> u64 {
        (self.depth() as u64 + 1) / 2
    }

    pub fn union_count(&self) -> u64 {
        self.depth() as u64 / 2
    }

    /// Componentwise order on equal-depth part sequences: `self <= other`
    /// when `other` extends `self` by adding leaves. Different depths are
    /// incomparable.
    pub fn leq(&self, other: &Cotree) -> bool {
        self.depth() == other.depth()
            && self
                .parts
                .iter()
                .zip(other.parts.iter())
                .all(|(a, b)| a <= b)
    }

    /// Creation-order binary word: blocks from the deepest node to the root,
    /// join blocks as 1s, union blocks as 0s.
    pub fn to_binary(&self) -> BinarySequence {
        let mut bits = Vec::with_capacity(self.vertex_count() as usize);
        for depth in (1..=self.depth()).rev() {
            let bit = self.kind_at(depth) == NodeKind::Join;
            bits.extend(std::iter::repeat(bit).take(self.parts[depth - 1] as usize));
        }
        BinarySequence { bits }
    }
}

impl fmt::Display for Cotree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Cotree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Cotree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            parts: &'a [u64],
        }
        Repr { parts: &self.parts }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cotree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            parts: Vec<u64>,
        }
        let repr = Repr::deserialize(deserializer)?;
        Cotree::new(repr.parts).map_err(D::Error::custom)
    }
}

/// Creation-order 0/1 word of a connected threshold graph.
///
/// The first bit is a graph-theoretic don't-care (a lone first vertex is
/// neither isolated nor dominating), so construction canonicalizes it to
/// match the second bit; that makes the leading run length at least 2 and
/// the word an exact image of a cotree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinarySequence {
    bits: Vec<bool>,
}

impl BinarySequence {
    pub fn new(bits: Vec<bool>) -> Result<Self, BinaryError> {
        if bits.is_empty() {
            return Err(BinaryError::Empty);
        }
        if !bits[bits.len() - 1] {
            return Err(BinaryError::Disconnected);
        }
        if bits.len() == 1 {
            return Err(BinaryError::SingleVertex);
        }
        let mut bits = bits;
        bits[0] = bits[1];
        Ok(BinarySequence { bits })
    }

    /// Parses either a raw bit string (`"111100011"`) or run-length blocks
    /// (`"1^4 0^3 1^2"`, single bits allowed as bare `1`/`0`).
    pub fn parse(text: &str) -> Result<Self, BinaryError> {
        let mut bits = Vec::new();
        if text.contains('^') {
            for token in text.split_whitespace() {
                let (bit_part, count_part) = match token.split_once('^') {
                    Some((b, c)) => (b, Some(c)),
                    None => (token, None),
                };
                let bit = match bit_part {
                    "0" => false,
                    "1" => true,
                    _ => {
                        return Err(BinaryError::BadRun {
                            token: token.to_owned(),
                        })
                    }
                };
                let count: u64 = match count_part {
                    Some(c) => c.parse().map_err(|_| BinaryError::BadRun {
                        token: token.to_owned(),
                    })?,
                    None => 1,
                };
                if count == 0 {
                    return Err(BinaryError::BadRun {
                        token: token.to_owned(),
                    });
                }
                bits.extend(std::iter::repeat(bit).take(count as usize));
            }
        } else {
            for (i, ch) in text.char_indices() {
                match ch {
                    '0' => bits.push(false),
                    '1' => bits.push(true),
                    c if c.is_whitespace() || c == ',' => {}
                    c => {
                        return Err(BinaryError::UnexpectedChar {
                            ch: c,
                            position: i,
                        })
                    }
                }
            }
        }
        BinarySequence::new(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Maximal runs as `(bit, length)`, in creation order.
    pub fn runs(&self) -> Vec<(bool, u64)> {
        let mut runs: Vec<(bool, u64)> = Vec::new();
        for &b in &self.bits {
            match runs.last_mut() {
                Some((bit, len)) if *bit == b => *len += 1,
                _ => runs.push((b, 1)),
            }
        }
        runs
    }

    /// Inverse of [`Cotree::to_binary`]: the i-th run from the right is part
    /// `a_i`.
    pub fn to_cotree(&self) -> Cotree {
        let runs = self.runs();
        let parts: Vec<u64> = runs.iter().rev().map(|&(_, len)| len).collect();
        debug_assert!(runs
            .iter()
            .rev()
            .enumerate()
            .all(|(i, &(bit, _))| bit == (NodeKind::at_depth(i + 1) == NodeKind::Join)));
        Cotree::new(parts).expect("validated bit word maps onto a cotree")
    }

    pub fn run_length_string(&self) -> String {
        self.runs()
            .iter()
            .map(|&(bit, len)| format!("{}^{}", if bit { 1 } else { 0 }, len))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinarySequence({self})")
    }
}

/// Dense symmetric 0/1 adjacency matrix with zero diagonal.
#[derive(Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl AdjacencyMatrix {
    /// Vertex `i` is adjacent to every earlier vertex exactly when its
    /// creation bit is 1.
    pub fn from_binary(seq: &BinarySequence) -> Self {
        let n = seq.len();
        let mut m = AdjacencyMatrix {
            n,
            bits: vec![false; n * n],
        };
        for (i, &dominating) in seq.bits().iter().enumerate() {
            if dominating {
                for j in 0..i {
                    m.bits[i * n + j] = true;
                    m.bits[j * n + i] = true;
                }
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    pub fn degree(&self, i: usize) -> usize {
        (0..self.n).filter(|&j| self.get(i, j)).count()
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count() / 2
    }
}
