//! Witness search for single-variable mixed words over `G(p, c)`, the
//! enumerate-and-refute driver, and an independent checker for its output.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limit_group::{GElement, LimitGroup};
use crate::mixed_words::{MixedWord, Syllable};
use crate::presentations::{CSequence, Window};

/// Candidates are evaluated in parallel batches of this size.
const BATCH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    /// Candidates `a t^beta` have `a` in `B([-r, r])` for `r` up to this.
    pub max_support_radius: i64,
    pub max_beta: i64,
    /// Longest shortest-word length of the `a` part.
    pub max_word_length: usize,
    pub max_candidates: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_support_radius: 3, max_beta: 3, max_word_length: 8, max_candidates: 100_000 }
    }
}

impl SearchBounds {
    pub fn validate(&self) -> Result<()> {
        if self.max_support_radius < 0 || self.max_beta < 0 || self.max_word_length == 0 || self.max_candidates == 0 {
            return Err(Error::Precondition("search bounds must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    TrivialInFreeProduct,
    WitnessFound,
    SearchExhausted,
}

/// One line of a driver log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub index: usize,
    pub p: u64,
    pub c: String,
    pub word: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evaluation_normal_form: Option<String>,
    pub candidates_checked: u64,
    /// Candidates whose evaluation needed a window beyond the configured bound.
    pub candidates_skipped: u64,
    pub bounds: SearchBounds,
}

/// Outcome of [`find_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Witness { witness: GElement, value: GElement, checked: u64, skipped: u64 },
    Exhausted { checked: u64, skipped: u64 },
}

/// `t`-exponents in candidate order: `0, 1, -1, 2, -2, ...`.
fn beta_order(max_beta: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=max_beta).flat_map(|b| [b, -b]))
}

/// Elements `a` with least window of radius exactly `r`, in shortlex order,
/// stopping once `cap` have been found.
fn ring(group: &LimitGroup, r: i64, bounds: &SearchBounds, cap: u64) -> Result<Vec<GElement>> {
    let mut out = Vec::new();
    for item in group.window_walk(Window::centered(r), bounds.max_word_length)? {
        let (a, _) = item?;
        let g = GElement::from_a(a);
        if g.support_radius() == r {
            out.push(g);
        }
        if out.len() as u64 >= cap {
            break;
        }
    }
    Ok(out)
}

/// First candidate `g` in order (least-window radius, `|beta|`, shortlex `a`)
/// with `w(g) != 1`.
pub fn find_witness(group: &LimitGroup, w: &MixedWord<GElement>, bounds: &SearchBounds) -> Result<SearchOutcome> {
    bounds.validate()?;
    if w.is_empty() {
        return Err(Error::Precondition("the empty word has no witness".into()));
    }
    if w.variables().iter().any(|&id| id != 1) {
        return Err(Error::Precondition("expected a word in the single variable x".into()));
    }
    let mut checked = 0u64;
    let mut skipped = 0u64;
    for r in 0..=bounds.max_support_radius {
        let ring = ring(group, r, bounds, bounds.max_candidates - checked)?;
        for beta in beta_order(bounds.max_beta) {
            for chunk in ring.chunks(BATCH) {
                let room = (bounds.max_candidates - checked) as usize;
                let chunk = &chunk[..chunk.len().min(room)];
                let results: Vec<Result<Option<GElement>>> = chunk
                    .par_iter()
                    .map(|a| {
                        let g = GElement { a: a.a.clone(), beta };
                        let value = w.evaluate_at(group, &g)?;
                        Ok((!group.is_trivial(&value)?).then_some(value))
                    })
                    .collect();
                for (a, r) in chunk.iter().zip(results) {
                    checked += 1;
                    match r {
                        Ok(Some(value)) => {
                            let witness = GElement { a: a.a.clone(), beta };
                            let value = group.canonical(&value)?;
                            return Ok(SearchOutcome::Witness { witness, value, checked, skipped });
                        }
                        Ok(None) => {}
                        Err(e) if e.is_capacity() => skipped += 1,
                        Err(e) => return Err(e),
                    }
                }
                if checked >= bounds.max_candidates {
                    return Ok(SearchOutcome::Exhausted { checked, skipped });
                }
            }
        }
    }
    Ok(SearchOutcome::Exhausted { checked, skipped })
}

/// Shortlex-first `count` distinct reduced words over `x, x^-1, a0, a0^-1,
/// t, t^-1` (in that letter order; `a0^-1` is dropped for `p = 2`). Strings
/// with a letter next to its inverse are skipped, the rest are reduced in
/// the free product and repeats dropped.
pub fn enumerate_words(group: &LimitGroup, count: usize) -> Result<Vec<MixedWord<GElement>>> {
    let mut alphabet = vec![
        Syllable::Var { id: 1, exp: 1 },
        Syllable::Var { id: 1, exp: -1 },
        Syllable::Const(GElement::generator(0)),
    ];
    if group.p() > 2 {
        alphabet.push(Syllable::Const(group.inverse(&GElement::generator(0))?));
    }
    alphabet.push(Syllable::Const(GElement::t_power(1)));
    alphabet.push(Syllable::Const(GElement::t_power(-1)));
    let inverse_of: Vec<usize> = (0..alphabet.len())
        .map(|i| match alphabet.len() {
            5 => [1, 0, 2, 4, 3][i],
            _ => [1, 0, 3, 2, 5, 4][i],
        })
        .collect();

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    // Letter strings of the current length with no letter next to its inverse.
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    while out.len() < count {
        let mut next = Vec::new();
        for s in &layer {
            for k in 0..alphabet.len() {
                if s.last().is_some_and(|&l| inverse_of[l] == k) {
                    continue;
                }
                let mut s2 = s.clone();
                s2.push(k);
                let raw = s2.iter().map(|&i| alphabet[i].clone()).collect();
                let w = MixedWord::reduce(group, raw)?;
                if seen.insert(w.clone()) {
                    out.push(w);
                    if out.len() == count {
                        return Ok(out);
                    }
                }
                next.push(s2);
            }
        }
        layer = next;
    }
    Ok(out)
}

/// Result of a driver run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DriveReport {
    pub certificates: Vec<Certificate>,
    /// Recorded values `w_i(g_i)` found trivial at a later step; always
    /// expected to be zero.
    pub persistence_violations: usize,
    /// Set when a capacity error cut the run short.
    pub incomplete: Option<String>,
}

/// Runs the search over the first `count` enumerated words, keeping the set
/// of witnessed values and re-checking all of it after every step.
pub fn drive(group: &LimitGroup, count: usize, bounds: &SearchBounds) -> Result<DriveReport> {
    bounds.validate()?;
    if count == 0 {
        return Err(Error::Precondition("count must be at least 1".into()));
    }
    let words = enumerate_words(group, count)?;
    let mut certificates = Vec::new();
    let mut values: Vec<GElement> = Vec::new();
    let mut persistence_violations = 0;
    let mut incomplete = None;
    for (index, w) in words.iter().enumerate() {
        let mut cert = Certificate {
            index,
            p: group.p(),
            c: group.c().to_string(),
            word: w.to_text(group),
            status: Status::TrivialInFreeProduct,
            witness: None,
            evaluation_normal_form: None,
            candidates_checked: 0,
            candidates_skipped: 0,
            bounds: *bounds,
        };
        if !w.is_empty() {
            match find_witness(group, w, bounds) {
                Ok(SearchOutcome::Witness { witness, value, checked, skipped }) => {
                    cert.status = Status::WitnessFound;
                    cert.witness = Some(witness.to_string());
                    cert.evaluation_normal_form = Some(value.to_string());
                    cert.candidates_checked = checked;
                    cert.candidates_skipped = skipped;
                    values.push(value);
                }
                Ok(SearchOutcome::Exhausted { checked, skipped }) => {
                    cert.status = Status::SearchExhausted;
                    cert.candidates_checked = checked;
                    cert.candidates_skipped = skipped;
                }
                Err(e) if e.is_capacity() => {
                    incomplete = Some(format!("word {index}: {e}"));
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        certificates.push(cert);
        let dead: usize = values
            .par_iter()
            .map(|v| group.is_trivial(v).map(usize::from))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .sum();
        persistence_violations = persistence_violations.max(dead);
    }
    Ok(DriveReport { certificates, persistence_violations, incomplete })
}

pub fn write_certificates<W: Write>(out: &mut W, certs: &[Certificate]) -> Result<()> {
    for c in certs {
        writeln!(out, "{}", serde_json::to_string(c)?)?;
    }
    Ok(())
}

pub fn read_certificates<R: BufRead>(input: R) -> Result<Vec<Certificate>> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line)?);
    }
    Ok(out)
}

/// Findings of [`verify_certificates`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checked: usize,
    pub witnesses: usize,
    pub inconclusive: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Re-checks a certificate log from its text alone: words and witnesses are
/// re-parsed, evaluations redone in a fresh group, and the recorded normal
/// forms compared. `config` supplies limits and the cache; `p` and `c` come
/// from each certificate.
pub fn verify_certificates(certs: &[Certificate], config: &crate::limit_group::InstanceConfig) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let mut group: Option<LimitGroup> = None;
    for cert in certs {
        report.checked += 1;
        let c: CSequence = match cert.c.parse() {
            Ok(c) => c,
            Err(e) => {
                report.failures.push(format!("certificate {}: {e}", cert.index));
                continue;
            }
        };
        if group.as_ref().is_none_or(|g| g.p() != cert.p || *g.c() != c) {
            let mut cfg = config.clone();
            cfg.p = cert.p;
            cfg.c = c;
            group = Some(LimitGroup::new(cfg)?);
        }
        let g = group.as_ref().expect("set above");
        if let Err(reason) = verify_one(g, cert) {
            report.failures.push(format!("certificate {}: {reason}", cert.index));
        }
        match cert.status {
            Status::WitnessFound => report.witnesses += 1,
            Status::SearchExhausted => report.inconclusive += 1,
            Status::TrivialInFreeProduct => {}
        }
    }
    Ok(report)
}

fn verify_one(group: &LimitGroup, cert: &Certificate) -> std::result::Result<(), String> {
    let w = MixedWord::parse(group, &cert.word).map_err(|e| format!("word: {e}"))?;
    match cert.status {
        Status::TrivialInFreeProduct => {
            if !w.is_empty() {
                return Err("word does not reduce to the empty word".into());
            }
        }
        Status::SearchExhausted => {
            if w.is_empty() {
                return Err("empty word recorded as searched".into());
            }
        }
        Status::WitnessFound => {
            let witness = cert.witness.as_deref().ok_or("missing witness")?;
            let g = group.parse(witness).map_err(|e| format!("witness: {e}"))?;
            let value = w.evaluate_at(group, &g).map_err(|e| format!("evaluation: {e}"))?;
            if group.is_trivial(&value).map_err(|e| format!("evaluation: {e}"))? {
                return Err(format!("w({witness}) is trivial"));
            }
            if let Some(nf) = &cert.evaluation_normal_form {
                let recorded = group.parse(nf).map_err(|e| format!("normal form: {e}"))?;
                if !group.equal(&recorded, &value).map_err(|e| format!("normal form: {e}"))? {
                    return Err("recorded normal form differs from the evaluation".into());
                }
            }
        }
    }
    Ok(())
}
