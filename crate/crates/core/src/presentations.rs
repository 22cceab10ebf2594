//! Finite presentations of the window subgroups `B(W) = <a_i : i in W>` of `A(p, c)`.
//!
//! The generators of `B([lo, hi])` are `a_lo, ..., a_hi`, stored by position
//! `0..=hi-lo`. Relators are the power relators `a_i^p` followed by the
//! left-normed commutators `[a_{i_0}, ..., a_{i_k}]` of weight `c_d + 1` over
//! every tuple of window indices whose spread is exactly `d`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// How a [`CSequence`] continues past its explicit prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tail {
    /// The last prefix value repeats forever.
    RepeatLast,
    /// `c_n = max(n, last prefix value)`.
    Identity,
}

/// A non-decreasing sequence `c_1 <= c_2 <= ...` of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CSequence {
    prefix: Vec<u32>,
    tail: Tail,
}

impl CSequence {
    pub fn explicit(prefix: Vec<u32>) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::InvalidSequence("empty list".into()));
        }
        Self::validated(prefix, Tail::RepeatLast)
    }

    /// The identity rule `c_n = n`.
    pub fn identity() -> Self {
        CSequence { prefix: Vec::new(), tail: Tail::Identity }
    }

    pub fn with_identity_tail(prefix: Vec<u32>) -> Result<Self> {
        Self::validated(prefix, Tail::Identity)
    }

    pub fn constant(value: u32) -> Result<Self> {
        Self::explicit(vec![value])
    }

    fn validated(prefix: Vec<u32>, tail: Tail) -> Result<Self> {
        if prefix.iter().any(|&v| v == 0) {
            return Err(Error::InvalidSequence("entries must be positive".into()));
        }
        if prefix.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidSequence("entries must be non-decreasing".into()));
        }
        Ok(CSequence { prefix, tail })
    }

    /// `c_n` for `n >= 1`.
    pub fn get(&self, n: u32) -> u32 {
        assert!(n >= 1, "c-sequence is indexed from 1");
        let idx = (n - 1) as usize;
        if let Some(&v) = self.prefix.get(idx) {
            return v;
        }
        let last = self.prefix.last().copied().unwrap_or(0);
        match self.tail {
            Tail::RepeatLast => last,
            Tail::Identity => n.max(last),
        }
    }

    /// The explicit values `c_1, ..., c_n`.
    pub fn prefix_values(&self, n: u32) -> Vec<u32> {
        (1..=n).map(|i| self.get(i)).collect()
    }
}

impl fmt::Display for CSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.prefix.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self.tail {
            Tail::RepeatLast => write!(f, "{body}"),
            Tail::Identity if body.is_empty() => write!(f, "id"),
            Tail::Identity => write!(f, "{body},id"),
        }
    }
}

impl FromStr for CSequence {
    type Err = Error;

    /// Accepts `id` (`c_n = n`), a comma list such as `1,2,2` (last value
    /// repeats), or a list ending in `id` such as `1,1,id`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
        if parts.is_empty() {
            return Err(Error::InvalidSequence(format!("`{s}`")));
        }
        let (values, identity_tail) = match parts.split_last() {
            Some((&"id", rest)) | Some((&"n", rest)) => (rest, true),
            _ => (&parts[..], false),
        };
        let prefix = values
            .iter()
            .map(|v| v.parse::<u32>().map_err(|_| Error::InvalidSequence(format!("bad entry `{v}`"))))
            .collect::<Result<Vec<_>>>()?;
        if identity_tail {
            Self::with_identity_tail(prefix)
        } else {
            Self::explicit(prefix)
        }
    }
}

/// Integer interval `[lo, hi]` of generator indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidWindow(format!("{lo} > {hi}")));
        }
        Ok(Window { lo, hi })
    }

    /// `[-radius, radius]`.
    pub fn centered(radius: i64) -> Self {
        Window { lo: -radius, hi: radius }
    }

    pub fn width(&self) -> u64 {
        (self.hi - self.lo) as u64
    }

    pub fn len(&self) -> usize {
        self.width() as usize + 1
    }

    pub fn contains(&self, index: i64) -> bool {
        self.lo <= index && index <= self.hi
    }

    pub fn shifted(&self, k: i64) -> Self {
        Window { lo: self.lo + k, hi: self.hi + k }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for Window {
    type Err = Error;

    /// `lo..hi`, e.g. `-1..1`.
    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| Error::InvalidWindow(format!("expected `lo..hi`, got `{s}`")))?;
        let parse = |v: &str| {
            v.trim().parse::<i64>().map_err(|_| Error::InvalidWindow(format!("bad bound `{v}`")))
        };
        Window::new(parse(lo)?, parse(hi)?)
    }
}

/// One letter of a generator word: generator position and inversion flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: u32,
    pub inv: bool,
}

impl Letter {
    pub fn gen(gen: u32) -> Self {
        Letter { gen, inv: false }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    /// Column index in a coset table: `2 * gen` for the generator,
    /// `2 * gen + 1` for its inverse.
    pub fn column(self) -> usize {
        2 * self.gen as usize + self.inv as usize
    }

    pub fn from_column(col: usize) -> Self {
        Letter { gen: (col / 2) as u32, inv: col % 2 == 1 }
    }
}

pub type GenWord = Vec<Letter>;

pub fn invert_word(w: &[Letter]) -> GenWord {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// `[u, v] = u^-1 v^-1 u v`.
pub fn commutator(u: &[Letter], v: &[Letter]) -> GenWord {
    let mut out = invert_word(u);
    out.extend(invert_word(v));
    out.extend_from_slice(u);
    out.extend_from_slice(v);
    out
}

/// Left-normed `[u_1, ..., u_k] = [[u_1, ..., u_{k-1}], u_k]`; a single
/// entry is returned unchanged.
pub fn left_normed(entries: &[GenWord]) -> GenWord {
    let mut iter = entries.iter();
    let mut acc = iter.next().cloned().unwrap_or_default();
    for next in iter {
        acc = commutator(&acc, next);
    }
    acc
}

/// Where a relator came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelatorLabel {
    /// `a_index^p`.
    Power { index: i64 },
    /// Left-normed commutator over `tuple` (absolute indices) with the given
    /// spread `d`; its weight is `tuple.len() = c_d + 1`.
    Commutator { spread: u64, weight: usize, tuple: Vec<i64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relator {
    pub letters: GenWord,
    pub label: RelatorLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub p: u64,
    pub window: Window,
    pub generator_count: usize,
    pub relators: Vec<Relator>,
}

/// Guards against relator explosion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PresentationLimits {
    pub max_width: u64,
    pub max_tuples: u128,
}

impl Default for PresentationLimits {
    fn default() -> Self {
        PresentationLimits { max_width: 8, max_tuples: 2_000_000 }
    }
}

/// Upper bound on the number of commutator tuples examined for a window of
/// width `width`.
fn tuple_estimate(c: &CSequence, width: u64) -> u128 {
    (1..=width)
        .map(|d| {
            let weight = c.get(d as u32) as u32 + 1;
            let per_block = (d as u128 + 1).saturating_pow(weight);
            per_block.saturating_mul((width - d + 1) as u128)
        })
        .fold(0u128, u128::saturating_add)
}

pub fn build_window_presentation(p: u64, c: &CSequence, w: Window) -> Result<Presentation> {
    build_window_presentation_with(p, c, w, PresentationLimits::default())
}

pub fn build_window_presentation_with(
    p: u64,
    c: &CSequence,
    w: Window,
    limits: PresentationLimits,
) -> Result<Presentation> {
    check_prime(p)?;
    let width = w.width();
    if width > limits.max_width {
        return Err(Error::WindowTooWide { width, bound: limits.max_width });
    }
    let estimate = tuple_estimate(c, width);
    if estimate > limits.max_tuples {
        return Err(Error::RelatorExplosion { estimate, bound: limits.max_tuples });
    }

    let n = w.len();
    let mut relators = Vec::new();
    let mut seen: HashSet<GenWord> = HashSet::new();
    let mut push = |letters: GenWord, label: RelatorLabel, relators: &mut Vec<Relator>| {
        if seen.insert(letters.clone()) {
            relators.push(Relator { letters, label });
        }
    };

    for g in 0..n as u32 {
        let letters = vec![Letter::gen(g); p as usize];
        push(letters, RelatorLabel::Power { index: w.lo + g as i64 }, &mut relators);
    }

    for d in 1..=width {
        let weight = c.get(d as u32) as usize + 1;
        let mut tuple = vec![0usize; weight];
        // Odometer over all tuples with entries in 0..n, lexicographic.
        loop {
            if tuple[0] != tuple[1] {
                let (mn, mx) = tuple
                    .iter()
                    .fold((usize::MAX, 0), |(lo, hi), &v| (lo.min(v), hi.max(v)));
                if (mx - mn) as u64 == d {
                    let entries: Vec<GenWord> =
                        tuple.iter().map(|&g| vec![Letter::gen(g as u32)]).collect();
                    let label = RelatorLabel::Commutator {
                        spread: d,
                        weight,
                        tuple: tuple.iter().map(|&g| w.lo + g as i64).collect(),
                    };
                    push(left_normed(&entries), label, &mut relators);
                }
            }
            // advance
            let mut pos = weight;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < n {
                    break;
                }
                tuple[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
    }

    Ok(Presentation { p, window: w, generator_count: n, relators })
}

pub fn relator_count(p: u64, c: &CSequence, w: Window) -> Result<usize> {
    Ok(build_window_presentation(p, c, w)?.relators.len())
}

impl Presentation {
    /// Line-oriented text form: `gens n`, then one relator per line in
    /// letter syntax (`a3 a3`, `a0^-1 a1^-1 a0 a1`), commutators expanded.
    pub fn to_text(&self) -> String {
        let mut out = format!("gens {}\n", self.generator_count);
        for r in &self.relators {
            out.push_str(&format_gen_word(&r.letters, self.window.lo));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// The presentation of the window shifted by `k` (the automorphism
    /// `a_i -> a_{i+k}`): same letters, shifted labels.
    pub fn shifted(&self, k: i64) -> Presentation {
        let relators = self
            .relators
            .iter()
            .map(|r| Relator {
                letters: r.letters.clone(),
                label: match &r.label {
                    RelatorLabel::Power { index } => RelatorLabel::Power { index: index + k },
                    RelatorLabel::Commutator { spread, weight, tuple } => RelatorLabel::Commutator {
                        spread: *spread,
                        weight: *weight,
                        tuple: tuple.iter().map(|i| i + k).collect(),
                    },
                },
            })
            .collect();
        Presentation { window: self.window.shifted(k), relators, ..self.clone() }
    }
}

/// Formats a generator word with absolute indices (`position + lo`).
pub fn format_gen_word(w: &[Letter], lo: i64) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|l| {
            let idx = lo + l.gen as i64;
            if l.inv {
                format!("a{idx}^-1")
            } else {
                format!("a{idx}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}
