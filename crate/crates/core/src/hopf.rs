//! Symbolic image of a diagram in the category of a quantum algebra.
//!
//! Every classical crossing becomes a pair of algebra symbols: the over
//! strand carries the left factor `e` (or `s(e)` at a negative crossing) and
//! the under strand the right factor `e'`.  Decorations are then slid along
//! each component to one point; every half turn passed on the way applies
//! the antipode once, and the leftover rotation of the loop becomes a power
//! of the flat curl element `G`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::ports::{slot_turn, Resolution};
use crate::diagram::{EventKind, MorseDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Factor {
    /// `e`, sitting on the over strand.
    Left,
    /// `e'`, sitting on the under strand.
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraSymbol {
    pub crossing: usize,
    pub factor: Factor,
    /// The crossing is negative and carries the inverse element.
    pub inverse: bool,
}

impl AlgebraSymbol {
    /// Antipode power already contained in the symbol: `s(e)` for the left
    /// factor of an inverse.
    fn built_in(&self) -> i32 {
        (self.inverse && self.factor == Factor::Left) as i32
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub symbol: AlgebraSymbol,
    /// Number of antipodes applied by sliding (may be negative).
    pub power: i32,
}

impl Letter {
    /// Total antipode power as printed.
    pub fn shown_power(&self) -> i32 {
        self.power + self.symbol.built_in()
    }
}

/// A cyclic product of letters on a circle, times `G^g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TraceWord {
    pub letters: Vec<Letter>,
    pub g: i32,
}

/// One trace word per component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceExpression {
    pub words: Vec<TraceWord>,
}

impl TraceWord {
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Half turns once around the loop: a plain circle plus `g` curls.
    fn turn(&self) -> i32 {
        2 * (self.g + 1)
    }

    /// Moves the base point past the first `k` letters.  Each letter carried
    /// around the loop passes its full turn.
    pub fn rotated(&self, k: usize) -> TraceWord {
        let n = self.letters.len();
        if n == 0 {
            return self.clone();
        }
        let k = k % n;
        let mut letters = self.letters[k..].to_vec();
        letters.extend(self.letters[..k].iter().map(|l| Letter { power: l.power + self.turn(), ..*l }));
        TraceWord { letters, g: self.g }
    }

    /// Shifts all sliding powers so the first letter has none.
    fn based(mut self) -> TraceWord {
        if let Some(p0) = self.letters.first().map(|l| l.power) {
            for l in &mut self.letters {
                l.power -= p0;
            }
        }
        self
    }

    /// Crossing ids renumbered in order of first appearance, starting at
    /// `next`; returns the renaming.
    fn renamed(&self, map: &mut BTreeMap<usize, usize>) -> TraceWord {
        let mut out = self.clone();
        for l in &mut out.letters {
            let n = map.len();
            l.symbol.crossing = *map.entry(l.symbol.crossing).or_insert(n);
        }
        out
    }

    fn key(&self) -> Vec<(usize, Factor, bool, i32)> {
        self.letters
            .iter()
            .map(|l| (l.symbol.crossing, l.symbol.factor, l.symbol.inverse, l.power))
            .collect()
    }

    /// Base point whose rendering is lexicographically smallest, with
    /// crossings renamed by first appearance.
    fn best_rotation(&self) -> usize {
        (0..self.letters.len().max(1))
            .min_by_key(|&k| {
                let w = self.rotated(k).based();
                w.renamed(&mut BTreeMap::new()).key()
            })
            .unwrap_or(0)
    }
}

/// Canonical representative of a trace word up to moving the base point and
/// renaming crossings.
pub fn canonical_cyclic(w: &TraceWord) -> TraceWord {
    let k = w.best_rotation();
    w.rotated(k).based().renamed(&mut BTreeMap::new())
}

impl TraceExpression {
    /// Canonical form: words in canonical rotation, sorted, and crossings
    /// renamed consistently across words.
    pub fn canonical(&self) -> TraceExpression {
        let mut words: Vec<TraceWord> = self
            .words
            .iter()
            .map(|w| w.rotated(w.best_rotation()).based())
            .collect();
        words.sort_by_cached_key(|w| (canonical_cyclic(w).key(), w.g));
        let mut map = BTreeMap::new();
        TraceExpression { words: words.iter().map(|w| w.renamed(&mut map)).collect() }
    }

    /// No algebra is left on any component.  The `G` powers are kept: they
    /// record the rotation of each unlinked component.
    pub fn is_unlink_form(&self) -> bool {
        self.words.iter().all(|w| w.is_empty())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "words": self.words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "unlink_form": self.is_unlink_form(),
        })
    }
}

/// The image of a diagram, one word per component in basepoint order.  Each
/// component is read in the direction in which it turns counterclockwise
/// (its default direction when the total turn is zero), starting at its
/// basepoint.  A plain circle is the reference loop, so the `G` exponent is
/// the rotation number minus one.
pub fn functor_image(d: &MorseDiagram) -> TraceExpression {
    let pg = d.ports();
    let mut words = Vec::new();
    for l in pg.trace(|_| Resolution::Pass) {
        let forward = l.half_turns >= 0;
        let steps: Vec<(usize, usize)> = if forward {
            l.steps.clone()
        } else {
            l.steps.iter().rev().map(|&(a, b)| (b, a)).collect()
        };
        let mut letters = Vec::new();
        let mut turn = 0;
        for &(a, b) in &steps {
            let e = a / 4;
            let kind = pg.kind(e);
            if kind.is_classical() {
                let over = pg.is_over(e, a % 4);
                letters.push(Letter {
                    symbol: AlgebraSymbol {
                        crossing: e,
                        factor: if over { Factor::Left } else { Factor::Right },
                        inverse: kind == EventKind::Neg,
                    },
                    power: turn,
                });
            }
            turn += slot_turn(a % 4, b % 4);
        }
        words.push(TraceWord { letters, g: l.half_turns.abs() / 2 - 1 });
    }
    TraceExpression { words }
}

/// Outcome of [`simplify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Simplified {
    pub expression: TraceExpression,
    pub cancelled: usize,
    pub unlink_form: bool,
}

/// Position of a letter: (word, index).
type Site = (usize, usize);

/// Repeatedly cancels `rho rho^-1` (or `rho^-1 rho`) pairs: two crossings of
/// opposite kind whose left factors are adjacent in one word and whose
/// right factors are adjacent in one word, at equal powers and in matching
/// order.  Sound but not complete: a word that does not reduce is only
/// reported as not reduced.
pub fn simplify(t: &TraceExpression) -> Simplified {
    let mut words = t.words.clone();
    let mut cancelled = 0;
    while let Some((a, b)) = find_cancellation(&words) {
        let mut doomed: Vec<Site> = Vec::new();
        for (w, word) in words.iter().enumerate() {
            for (i, l) in word.letters.iter().enumerate() {
                if l.symbol.crossing == a || l.symbol.crossing == b {
                    doomed.push((w, i));
                }
            }
        }
        for &(w, i) in doomed.iter().rev() {
            words[w].letters.remove(i);
        }
        cancelled += 1;
    }
    let expression = TraceExpression { words };
    let unlink_form = expression.is_unlink_form();
    Simplified { expression, cancelled, unlink_form }
}

/// Adjacent letter pairs of one word, cyclically when the word wraps.  The
/// wrapped letter gains the loop rotation.
fn adjacent_pairs(w: &TraceWord) -> Vec<(Letter, Letter)> {
    let n = w.letters.len();
    let mut out: Vec<(Letter, Letter)> = w.letters.windows(2).map(|p| (p[0], p[1])).collect();
    if n >= 2 {
        let first = Letter { power: w.letters[0].power + w.turn(), ..w.letters[0] };
        out.push((w.letters[n - 1], first));
    }
    out
}

/// For an adjacent pair at a common power `k`, the order in which the two
/// crossings multiply once the antipode (an anti-homomorphism) is pulled
/// out: unchanged for even `k`, reversed for odd `k`.
fn effective_order(x: &Letter, y: &Letter) -> Option<(usize, usize)> {
    if x.power != y.power {
        return None;
    }
    let (c1, c2) = (x.symbol.crossing, y.symbol.crossing);
    Some(if x.power.rem_euclid(2) == 0 { (c1, c2) } else { (c2, c1) })
}

fn find_cancellation(words: &[TraceWord]) -> Option<(usize, usize)> {
    let mut left: Vec<(usize, usize)> = Vec::new();
    let mut right: Vec<(usize, usize)> = Vec::new();
    for w in words {
        for (x, y) in adjacent_pairs(w) {
            if x.symbol.crossing == y.symbol.crossing || x.symbol.factor != y.symbol.factor {
                continue;
            }
            if x.symbol.inverse == y.symbol.inverse {
                continue;
            }
            if let Some(order) = effective_order(&x, &y) {
                match x.symbol.factor {
                    Factor::Left => left.push(order),
                    Factor::Right => right.push(order),
                }
            }
        }
    }
    left.into_iter().find(|o| right.contains(o))
}

fn name(c: usize) -> String {
    format!("x{}", c + 1)
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prime = if self.symbol.factor == Factor::Right { "'" } else { "" };
        let base = format!("{}{prime}", name(self.symbol.crossing));
        match self.shown_power() {
            0 => write!(f, "{base}"),
            1 => write!(f, "s({base})"),
            k => write!(f, "s^{k}({base})"),
        }
    }
}

impl fmt::Display for TraceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        if self.g != 0 {
            parts.push(if self.g == 1 { "G".to_string() } else { format!("G^{}", self.g) });
        }
        write!(f, "TR[{}]", parts.join(" "))
    }
}

impl fmt::Display for TraceExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.words.iter().map(|w| w.to_string()).collect();
        write!(f, "{}", words.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad trace word: {0}")]
pub struct TraceParseError(String);

/// Parses `TR[e' s(f) s^2(e) s^3(f') G^2]`.  Symbol names are arbitrary
/// identifiers (crossings are numbered by first appearance); the antipode
/// power is stored as a sliding power, so inverse flags are not recovered.
pub fn parse_trace_word(text: &str) -> Result<TraceWord, TraceParseError> {
    let bad = |m: &str| TraceParseError(format!("{m} in {text:?}"));
    let body = text
        .trim()
        .strip_prefix("TR[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| bad("expected TR[...]"))?;
    let mut names: BTreeMap<String, usize> = BTreeMap::new();
    let mut letters = Vec::new();
    let mut g = 0;
    for tok in body.split_whitespace() {
        if let Some(rest) = tok.strip_prefix('G') {
            g += match rest.strip_prefix('^') {
                Some(e) => e.parse::<i32>().map_err(|_| bad("bad G exponent"))?,
                None if rest.is_empty() => 1,
                None => return Err(bad("bad G token")),
            };
            continue;
        }
        let (power, inner) = if let Some(rest) = tok.strip_prefix("s^") {
            let open = rest.find('(').ok_or_else(|| bad("missing '('"))?;
            let k: i32 = rest[..open].parse().map_err(|_| bad("bad antipode power"))?;
            (k, &rest[open..])
        } else if let Some(rest) = tok.strip_prefix('s') {
            if rest.starts_with('(') {
                (1, rest)
            } else {
                (0, tok)
            }
        } else {
            (0, tok)
        };
        let inner = if power != 0 || inner.starts_with('(') {
            inner
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| bad("unbalanced parentheses"))?
        } else {
            inner
        };
        let (stem, factor) = match inner.strip_suffix('\'') {
            Some(s) => (s, Factor::Right),
            None => (inner, Factor::Left),
        };
        if stem.is_empty() || !stem.chars().all(|c| c.is_ascii_alphanumeric()) {
            return Err(bad("bad symbol name"));
        }
        let n = names.len();
        let crossing = *names.entry(stem.to_string()).or_insert(n);
        letters.push(Letter { symbol: AlgebraSymbol { crossing, factor, inverse: false }, power });
    }
    Ok(TraceWord { letters, g })
}

/// Forgets inverse flags by folding them into the antipode power, for
/// comparing with parsed words.
pub fn flatten(w: &TraceWord) -> TraceWord {
    TraceWord {
        letters: w
            .letters
            .iter()
            .map(|l| Letter {
                symbol: AlgebraSymbol { inverse: false, ..l.symbol },
                power: l.shown_power(),
            })
            .collect(),
        g: w.g,
    }
}

/// Same word up to base point and renaming, ignoring inverse flags.
pub fn same_word(a: &TraceWord, b: &TraceWord) -> bool {
    canonical_cyclic(&flatten(a)) == canonical_cyclic(&flatten(b))
}
