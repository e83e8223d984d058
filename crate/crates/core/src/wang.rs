//! Wang tile sets, the unsigned to signed-free reduction, framed glue words and an
//! exhaustive torus solver.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WangError {
    #[error("glue value {value} does not fit in {bits} bits")]
    ValueTooLarge { value: u32, bits: u32 },
    #[error("glue words have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("node budget of {0} exhausted")]
    BudgetExceeded(u64),
    #[error("unsigned glues cannot be encoded")]
    UnsignedGlue,
    #[error("expected a {expected} tile set")]
    WrongKind { expected: &'static str },
    #[error("tile set is empty")]
    Empty,
    #[error("torus dimensions must be positive")]
    BadDimensions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
    Unsigned,
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Sign::Positive => s.serialize_str("+"),
            Sign::Negative => s.serialize_str("-"),
            Sign::Unsigned => s.serialize_none(),
        }
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Option::<String>::deserialize(d)?.as_deref() {
            None => Ok(Sign::Unsigned),
            Some("+") => Ok(Sign::Positive),
            Some("-") => Ok(Sign::Negative),
            Some(other) => Err(serde::de::Error::custom(format!("bad glue sign {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Glue {
    #[serde(default = "unsigned")]
    pub sign: Sign,
    pub value: u32,
}

fn unsigned() -> Sign {
    Sign::Unsigned
}

impl Glue {
    pub fn unsigned(value: u32) -> Glue {
        Glue { sign: Sign::Unsigned, value }
    }

    pub fn positive(value: u32) -> Glue {
        Glue { sign: Sign::Positive, value }
    }

    pub fn negative(value: u32) -> Glue {
        Glue { sign: Sign::Negative, value }
    }

    /// Unsigned glues match equal values; signed glues need opposite signs and equal values.
    pub fn matches(&self, other: &Glue) -> bool {
        if self.value != other.value {
            return false;
        }
        matches!(
            (self.sign, other.sign),
            (Sign::Unsigned, Sign::Unsigned)
                | (Sign::Positive, Sign::Negative)
                | (Sign::Negative, Sign::Positive)
        )
    }
}

impl fmt::Display for Glue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Positive => write!(f, "+{}", self.value),
            Sign::Negative => write!(f, "-{}", self.value),
            Sign::Unsigned => write!(f, "{}", self.value),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WangTile {
    pub n: Glue,
    pub e: Glue,
    pub s: Glue,
    pub w: Glue,
}

impl WangTile {
    pub fn unsigned(n: u32, e: u32, s: u32, w: u32) -> WangTile {
        WangTile { n: Glue::unsigned(n), e: Glue::unsigned(e), s: Glue::unsigned(s), w: Glue::unsigned(w) }
    }

    /// Glues in the order north, east, south, west.
    pub fn glues(&self) -> [Glue; 4] {
        [self.n, self.e, self.s, self.w]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetKind {
    Unsigned,
    SignedFree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WangTileSet {
    pub kind: SetKind,
    pub tiles: Vec<WangTile>,
}

impl WangTileSet {
    pub fn new(kind: SetKind, tiles: Vec<WangTile>) -> Result<WangTileSet, WangError> {
        if tiles.is_empty() {
            return Err(WangError::Empty);
        }
        Ok(WangTileSet { kind, tiles })
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// Number of distinct glue values used anywhere in the set.
    pub fn glue_count(&self) -> usize {
        self.tiles
            .iter()
            .flat_map(|t| t.glues())
            .map(|g| g.value)
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Payload bits per glue word: `max(1, ⌈log₂ G⌉)`.
    pub fn payload_bits(&self) -> u32 {
        bits_for(self.glue_count())
    }
}

pub fn bits_for(glue_count: usize) -> u32 {
    let mut b = 1;
    while (1usize << b) < glue_count {
        b += 1;
    }
    b
}

/// Renames glues so the vertical and horizontal namespaces are disjoint, then signs
/// north/east positive and south/west negative. Values are compacted to `0..G`.
pub fn make_signed_free(set: &WangTileSet) -> Result<WangTileSet, WangError> {
    if set.kind != SetKind::Unsigned {
        return Err(WangError::WrongKind { expected: "unsigned" });
    }
    if set.tiles.is_empty() {
        return Err(WangError::Empty);
    }
    let vertical = |g: Glue| 2 * g.value as u64;
    let horizontal = |g: Glue| 2 * g.value as u64 + 1;
    let used: BTreeSet<u64> = set
        .tiles
        .iter()
        .flat_map(|t| [vertical(t.n), vertical(t.s), horizontal(t.e), horizontal(t.w)])
        .collect();
    let index = |v: u64| used.range(..v).count() as u32;
    let tiles = set
        .tiles
        .iter()
        .map(|t| WangTile {
            n: Glue::positive(index(vertical(t.n))),
            e: Glue::positive(index(horizontal(t.e))),
            s: Glue::negative(index(vertical(t.s))),
            w: Glue::negative(index(horizontal(t.w))),
        })
        .collect();
    Ok(WangTileSet { kind: SetKind::SignedFree, tiles })
}

/// A framed glue word; bit `true` is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GlueWord(pub Vec<bool>);

impl GlueWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn reversed(&self) -> GlueWord {
        GlueWord(self.0.iter().rev().copied().collect())
    }

    /// The word read off a mirrored side: reversed and complemented.
    pub fn reflected(&self) -> GlueWord {
        GlueWord(self.0.iter().rev().map(|b| !b).collect())
    }
}

impl fmt::Display for GlueWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for GlueWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GlueWord({self})")
    }
}

impl std::str::FromStr for GlueWord {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(format!("bad bit {c:?}")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(GlueWord)
    }
}

impl Serialize for GlueWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GlueWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Positive: `00 ∥ binary(value) ∥ 01`; negative: the reverse of the positive word.
pub fn encode_glue(value: u32, sign: Sign, bits: u32) -> Result<GlueWord, WangError> {
    if bits < 32 && value >= (1u32 << bits) {
        return Err(WangError::ValueTooLarge { value, bits });
    }
    let mut w = vec![false, false];
    w.extend((0..bits).rev().map(|i| i < 32 && (value >> i) & 1 == 1));
    w.extend([false, true]);
    let word = GlueWord(w);
    match sign {
        Sign::Positive => Ok(word),
        Sign::Negative => Ok(word.reversed()),
        Sign::Unsigned => Err(WangError::UnsignedGlue),
    }
}

/// Inverse of `encode_glue`; `None` for words carrying neither framing.
pub fn decode_glue(word: &GlueWord) -> Option<(u32, Sign)> {
    let w = word.bits();
    if w.len() < 5 {
        return None;
    }
    let k = w.len();
    let (payload, sign): (Vec<bool>, Sign) = if !w[0] && !w[1] && !w[k - 2] && w[k - 1] {
        (w[2..k - 2].to_vec(), Sign::Positive)
    } else if w[0] && !w[1] && !w[k - 2] && !w[k - 1] {
        (w[2..k - 2].iter().rev().copied().collect(), Sign::Negative)
    } else {
        return None;
    };
    if payload.len() > 32 {
        return None;
    }
    Some((payload.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32), sign))
}

/// Two sides fit when traversed in opposite directions: `w2 == reverse(w1)`.
pub fn words_match(w1: &GlueWord, w2: &GlueWord) -> Result<bool, WangError> {
    if w1.len() != w2.len() {
        return Err(WangError::LengthMismatch(w1.len(), w2.len()));
    }
    Ok(w1.0.iter().eq(w2.0.iter().rev()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusTiling {
    pub k1: usize,
    pub k2: usize,
    /// `grid[row][col]`, rows from north to south.
    pub grid: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorusOutcome {
    Solved(TorusTiling),
    Unsatisfiable,
}

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

struct Compat {
    /// `h[a][b]`: tile `b` may sit east of tile `a`.
    h: Vec<Vec<bool>>,
    /// `v[a][b]`: tile `b` may sit south of tile `a`.
    v: Vec<Vec<bool>>,
}

impl Compat {
    fn new(set: &WangTileSet) -> Compat {
        let t = &set.tiles;
        let h = t.iter().map(|a| t.iter().map(|b| a.e.matches(&b.w)).collect()).collect();
        let v = t.iter().map(|a| t.iter().map(|b| a.s.matches(&b.n)).collect()).collect();
        Compat { h, v }
    }
}

struct Solver {
    compat: Compat,
    tiles: usize,
    k1: usize,
    k2: usize,
    grid: Vec<Vec<usize>>,
    failed: HashSet<(usize, Vec<usize>, Vec<usize>)>,
    nodes: u64,
    budget: u64,
}

impl Solver {
    fn candidate(&self, r: usize, c: usize, t: usize) -> bool {
        if c > 0 && !self.compat.h[self.grid[r][c - 1]][t] {
            return false;
        }
        if c + 1 == self.k1 {
            let first = if c == 0 { t } else { self.grid[r][0] };
            if !self.compat.h[t][first] {
                return false;
            }
        }
        if r > 0 && !self.compat.v[self.grid[r - 1][c]][t] {
            return false;
        }
        if r + 1 == self.k2 {
            let top = if r == 0 { t } else { self.grid[0][c] };
            if !self.compat.v[t][top] {
                return false;
            }
        }
        true
    }

    fn row_key(&self, r: usize) -> (usize, Vec<usize>, Vec<usize>) {
        (r, self.grid[0].clone(), self.grid[r - 1].clone())
    }

    fn fill(&mut self, r: usize, c: usize) -> Result<bool, WangError> {
        if r == self.k2 {
            return Ok(true);
        }
        if c == 0 && r > 0 && self.failed.contains(&self.row_key(r)) {
            return Ok(false);
        }
        for t in 0..self.tiles {
            if !self.candidate(r, c, t) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(WangError::BudgetExceeded(self.budget));
            }
            self.grid[r][c] = t;
            let (nr, nc) = if c + 1 == self.k1 { (r + 1, 0) } else { (r, c + 1) };
            if self.fill(nr, nc)? {
                return Ok(true);
            }
        }
        if c == 0 && r > 0 {
            let key = self.row_key(r);
            self.failed.insert(key);
        }
        Ok(false)
    }
}

/// Depth-first search over row-major cells with tiles tried in index order.
pub fn solve_torus(
    set: &WangTileSet,
    k1: usize,
    k2: usize,
    budget: u64,
) -> Result<TorusOutcome, WangError> {
    if k1 == 0 || k2 == 0 {
        return Err(WangError::BadDimensions);
    }
    if set.tiles.is_empty() {
        return Err(WangError::Empty);
    }
    let mut solver = Solver {
        compat: Compat::new(set),
        tiles: set.tiles.len(),
        k1,
        k2,
        grid: vec![vec![0; k1]; k2],
        failed: HashSet::new(),
        nodes: 0,
        budget,
    };
    if solver.fill(0, 0)? {
        Ok(TorusOutcome::Solved(TorusTiling { k1, k2, grid: solver.grid }))
    } else {
        Ok(TorusOutcome::Unsatisfiable)
    }
}

/// Checks every wrapped horizontal and vertical adjacency.
pub fn check_wang_tiling(set: &WangTileSet, t: &TorusTiling) -> bool {
    if t.grid.len() != t.k2 || t.grid.iter().any(|row| row.len() != t.k1) {
        return false;
    }
    if t.grid.iter().flatten().any(|&i| i >= set.tiles.len()) {
        return false;
    }
    for r in 0..t.k2 {
        for c in 0..t.k1 {
            let here = &set.tiles[t.grid[r][c]];
            let east = &set.tiles[t.grid[r][(c + 1) % t.k1]];
            let south = &set.tiles[t.grid[(r + 1) % t.k2][c]];
            if !here.e.matches(&east.w) || !here.s.matches(&south.n) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(tiles: Vec<WangTile>) -> WangTileSet {
        WangTileSet::new(SetKind::Unsigned, tiles).unwrap()
    }

    fn word(s: &str) -> GlueWord {
        s.parse().unwrap()
    }

    #[test]
    fn signing_a_single_tile() {
        let s = make_signed_free(&set(vec![WangTile::unsigned(3, 3, 3, 3)])).unwrap();
        let t = s.tiles[0];
        assert_eq!((t.n.sign, t.e.sign, t.s.sign, t.w.sign), (Sign::Positive, Sign::Positive, Sign::Negative, Sign::Negative));
        assert_eq!(t.n.value, t.s.value);
        assert_eq!(t.e.value, t.w.value);
        assert_ne!(t.n.value, t.e.value);
        assert_eq!(s.glue_count(), 2);
    }

    #[test]
    fn signing_at_most_doubles_glues() {
        let u = set(vec![WangTile::unsigned(0, 1, 2, 3), WangTile::unsigned(1, 1, 0, 2)]);
        let s = make_signed_free(&u).unwrap();
        assert!(s.glue_count() <= 2 * u.glue_count());
        assert!(make_signed_free(&s).is_err());
    }

    #[test]
    fn encoding_examples() {
        assert_eq!(encode_glue(5, Sign::Positive, 4).unwrap(), word("00010101"));
        assert_eq!(encode_glue(5, Sign::Negative, 4).unwrap(), word("10101000"));
        assert_eq!(encode_glue(0, Sign::Positive, 1).unwrap(), word("00001"));
        assert_eq!(encode_glue(16, Sign::Positive, 4), Err(WangError::ValueTooLarge { value: 16, bits: 4 }));
    }

    #[test]
    fn matching_examples() {
        let p = encode_glue(5, Sign::Positive, 4).unwrap();
        let n = encode_glue(5, Sign::Negative, 4).unwrap();
        assert!(words_match(&p, &n).unwrap());
        assert!(!words_match(&p, &p).unwrap());
        assert!(words_match(&p, &word("00001")).is_err());
        assert!(p.reflected().to_string().starts_with("01"));
    }

    #[test]
    fn payload_bits() {
        assert_eq!(bits_for(1), 1);
        assert_eq!(bits_for(2), 1);
        assert_eq!(bits_for(3), 2);
        assert_eq!(bits_for(4), 2);
        assert_eq!(bits_for(5), 3);
    }

    #[test]
    fn solver_examples() {
        let selfmatch = set(vec![WangTile::unsigned(0, 1, 0, 1)]);
        assert!(matches!(solve_torus(&selfmatch, 1, 1, 100), Ok(TorusOutcome::Solved(_))));
        let bad = set(vec![WangTile::unsigned(0, 1, 2, 1)]);
        for (k1, k2) in [(1, 1), (2, 3), (3, 2)] {
            assert_eq!(solve_torus(&bad, k1, k2, 1000), Ok(TorusOutcome::Unsatisfiable));
        }
        let alt = set(vec![WangTile::unsigned(0, 5, 1, 5), WangTile::unsigned(1, 5, 0, 5)]);
        assert_eq!(solve_torus(&alt, 1, 1, 100), Ok(TorusOutcome::Unsatisfiable));
        match solve_torus(&alt, 1, 2, 100).unwrap() {
            TorusOutcome::Solved(t) => {
                assert!(check_wang_tiling(&alt, &t));
                assert_eq!(t.grid, vec![vec![0], vec![1]]);
            }
            TorusOutcome::Unsatisfiable => panic!("1x2 alternation is solvable"),
        }
    }

    #[test]
    fn budget_is_distinct_from_unsatisfiable() {
        let tiles = (0..4).map(|i| WangTile::unsigned(i, 0, (i + 1) % 5, 0)).collect();
        let s = set(tiles);
        assert_eq!(solve_torus(&s, 3, 3, 2), Err(WangError::BudgetExceeded(2)));
    }

    #[test]
    fn corrupted_solution_is_rejected() {
        let alt = set(vec![WangTile::unsigned(0, 5, 1, 5), WangTile::unsigned(1, 5, 0, 5)]);
        let TorusOutcome::Solved(mut t) = solve_torus(&alt, 2, 2, 100).unwrap() else {
            panic!("solvable")
        };
        assert!(check_wang_tiling(&alt, &t));
        t.grid[0][0] = 1 - t.grid[0][0];
        assert!(!check_wang_tiling(&alt, &t));
    }

    proptest! {
        #[test]
        fn encode_decode_round_trip(b in 1u32..=12, v in 0u32..4096, neg in any::<bool>()) {
            let v = v % (1 << b);
            let sign = if neg { Sign::Negative } else { Sign::Positive };
            let w = encode_glue(v, sign, b).unwrap();
            prop_assert_eq!(w.len() as u32, b + 4);
            prop_assert_eq!(decode_glue(&w), Some((v, sign)));
        }

        #[test]
        fn matching_iff_equal_values(b in 1u32..=8, v in 0u32..256, w in 0u32..256) {
            let (v, w) = (v % (1 << b), w % (1 << b));
            let p = encode_glue(v, Sign::Positive, b).unwrap();
            let n = encode_glue(w, Sign::Negative, b).unwrap();
            prop_assert_eq!(words_match(&p, &n).unwrap(), v == w);
            prop_assert_eq!(words_match(&p.reversed(), &n.reversed()).unwrap(), words_match(&p, &n).unwrap());
        }
    }
}
