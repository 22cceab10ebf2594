//! Power-commutator presentations of finite p-groups and the p-quotient
//! algorithm.
//!
//! A consistent presentation on generators `g_0 .. g_{n-1}` stores
//! `g_k^p` and `[g_j, g_i]` (`j > i`) as normal words in later generators.
//! Every element then has a unique normal form `g_0^{e_0} ... g_{n-1}^{e_{n-1}}`
//! with `0 <= e_k < p`, and products are computed by collection.
//!
//! [`p_quotient`] builds such a presentation for a finitely presented group
//! that is a finite p-group, one layer of the lower exponent-p central series
//! at a time: it forms the covering group with one central "tail" per
//! relation, forces consistency, imposes the defining relators and keeps the
//! surviving tails as the next layer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentations::{check_prime, GenWord};

/// Normal word: `(generator, exponent)` pairs, generators increasing,
/// exponents in `1..p`.
pub type PcWord = Vec<(u32, u32)>;

/// How a pc generator was introduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Definition {
    /// Image of an input generator.
    Generator(u32),
    /// `g_k^p`.
    Power(u32),
    /// `[g_j, g_i]`.
    Commutator(u32, u32),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
struct Rel {
    word: PcWord,
    /// Central tail generators, sparse.
    tail: Vec<(u32, u32)>,
}

/// Relations of a presentation, possibly extended by central tails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Rels {
    p: u32,
    n: usize,
    m: usize,
    power: Vec<Rel>,
    /// `comm[j][i]` for `i < j`.
    comm: Vec<Vec<Rel>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Elt {
    e: Vec<u32>,
    t: Vec<u32>,
}

impl Rels {
    fn identity(&self) -> Elt {
        Elt { e: vec![0; self.n], t: vec![0; self.m] }
    }

    fn add_tail(&self, v: &mut Elt, tail: &[(u32, u32)], times: u32) {
        for &(k, e) in tail {
            let slot = &mut v.t[k as usize];
            *slot = (*slot + e * times) % self.p;
        }
    }

    /// `v <- v * g_i`.
    fn mul_gen(&self, v: &mut Elt, i: usize) {
        let suffix: Vec<(usize, u32)> =
            (i + 1..self.n).filter(|&k| v.e[k] != 0).map(|k| (k, v.e[k])).collect();
        for &(k, _) in &suffix {
            v.e[k] = 0;
        }
        v.e[i] += 1;
        if v.e[i] == self.p {
            v.e[i] = 0;
            self.mul_rel(v, &self.power[i]);
        }
        // s * g_i = g_i * s^{g_i}, and g_k^{g_i} = g_k [g_k, g_i].
        for (k, e) in suffix {
            for _ in 0..e {
                self.mul_gen(v, k);
                self.mul_rel(v, &self.comm[k][i]);
            }
        }
    }

    fn mul_rel(&self, v: &mut Elt, rel: &Rel) {
        self.mul_word(v, &rel.word);
        self.add_tail(v, &rel.tail, 1);
    }

    fn mul_word(&self, v: &mut Elt, w: &[(u32, u32)]) {
        for &(g, e) in w {
            for _ in 0..e {
                self.mul_gen(v, g as usize);
            }
        }
    }

    fn mul(&self, u: &Elt, v: &Elt) -> Elt {
        let mut out = u.clone();
        self.mul_word(&mut out, &to_word(&v.e));
        for (k, &e) in v.t.iter().enumerate() {
            out.t[k] = (out.t[k] + e) % self.p;
        }
        out
    }

    fn inverse(&self, u: &Elt) -> Elt {
        let mut w = u.clone();
        let mut r = vec![0; self.n];
        for k in 0..self.n {
            if w.e[k] != 0 {
                let need = self.p - w.e[k];
                for _ in 0..need {
                    self.mul_gen(&mut w, k);
                }
                r[k] = need;
            }
        }
        let t = w.t.iter().map(|&x| (self.p - x) % self.p).collect();
        Elt { e: r, t }
    }

    fn from_rel(&self, rel: &Rel) -> Elt {
        let mut v = self.identity();
        self.mul_rel(&mut v, rel);
        v
    }
}

fn is_prime_u32(p: u32) -> bool {
    crate::presentations::is_prime(p as u64)
}

fn to_word(e: &[u32]) -> PcWord {
    e.iter().enumerate().filter(|(_, &x)| x != 0).map(|(k, &x)| (k as u32, x)).collect()
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

/// Reduced row echelon basis over `F_p`, kept fully reduced.
struct Echelon {
    p: u32,
    rows: Vec<Vec<u32>>,
    pivot_of_col: Vec<Option<usize>>,
}

impl Echelon {
    fn new(p: u32, m: usize) -> Self {
        Echelon { p, rows: Vec::new(), pivot_of_col: vec![None; m] }
    }

    fn insert(&mut self, mut row: Vec<u32>) {
        let p = self.p;
        let m = row.len();
        let mut lead = None;
        for col in 0..m {
            if row[col] == 0 {
                continue;
            }
            match self.pivot_of_col[col] {
                Some(r) => {
                    let f = row[col];
                    let basis = &self.rows[r];
                    for k in col..m {
                        if basis[k] != 0 {
                            row[k] = (row[k] + (p - f) * basis[k]) % p;
                        }
                    }
                }
                None => {
                    if lead.is_none() {
                        lead = Some(col);
                    }
                }
            }
        }
        let Some(col) = lead else { return };
        let s = inv_mod(row[col], p);
        for x in row.iter_mut() {
            *x = *x * s % p;
        }
        for other in self.rows.iter_mut() {
            let f = other[col];
            if f != 0 {
                for k in col..m {
                    if row[k] != 0 {
                        other[k] = (other[k] + (p - f) * row[k]) % p;
                    }
                }
            }
        }
        self.pivot_of_col[col] = Some(self.rows.len());
        self.rows.push(row);
    }
}

/// Consistent power-commutator presentation of a finite p-group together
/// with the images of the generators of the group it was computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcGroup {
    rels: Rels,
    weights: Vec<u32>,
    definitions: Vec<Definition>,
    images: Vec<PcWord>,
    #[serde(skip)]
    inverse_images: Vec<PcWord>,
}

/// Bounds for [`p_quotient`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PQuotientLimits {
    /// Largest number of pc generators, i.e. the largest `log_p` of the order.
    pub max_generators: usize,
}

impl Default for PQuotientLimits {
    fn default() -> Self {
        PQuotientLimits { max_generators: 256 }
    }
}

enum TailSource {
    Image(usize),
    Power(usize),
    Comm(usize, usize),
}

/// Computes a consistent pc presentation of `<x_0..x_{d-1} | relators>`,
/// which must be a finite p-group.
///
/// Fails with [`Error::CapacityExceeded`] once the quotient needs more than
/// `limits.max_generators` generators (which is also what happens when the
/// group is not a finite p-group).
pub fn p_quotient(
    p: u64,
    generator_count: usize,
    relators: &[GenWord],
    limits: PQuotientLimits,
) -> Result<PcGroup> {
    check_prime(p)?;
    if p > 1 << 15 {
        return Err(Error::Precondition(format!("prime {p} is too large for pc collection")));
    }
    for r in relators {
        if let Some(l) = r.iter().find(|l| l.gen as usize >= generator_count) {
            return Err(Error::InvalidLetter { gen: l.gen as usize, count: generator_count });
        }
    }
    let p = p as u32;
    let mut group = PcGroup {
        rels: Rels { p, n: 0, m: 0, power: Vec::new(), comm: Vec::new() },
        weights: Vec::new(),
        definitions: Vec::new(),
        images: vec![Vec::new(); generator_count],
        inverse_images: Vec::new(),
    };
    let mut class = 0u32;
    loop {
        let grown = group.next_layer(relators, class)?;
        if grown == 0 {
            break;
        }
        if group.rels.n > limits.max_generators {
            return Err(Error::CapacityExceeded { limit: limits.max_generators });
        }
        class += 1;
    }
    group.fill_inverses();
    group.check_relators(relators)?;
    Ok(group)
}

impl PcGroup {
    fn defining_image(&self, x: usize) -> bool {
        self.definitions.contains(&Definition::Generator(x as u32))
    }

    /// Adds the next layer of the lower exponent-p central series; returns its rank.
    fn next_layer(&mut self, relators: &[GenWord], class: u32) -> Result<usize> {
        let n = self.rels.n;
        let p = self.rels.p;
        let mut sources = Vec::new();
        for x in 0..self.images.len() {
            if !self.defining_image(x) {
                sources.push(TailSource::Image(x));
            }
        }
        for k in 0..n {
            if self.weights[k] <= class && !self.definitions.contains(&Definition::Power(k as u32)) {
                sources.push(TailSource::Power(k));
            }
        }
        for j in 0..n {
            for i in 0..j {
                if self.weights[i] + self.weights[j] <= class + 1
                    && !self.definitions.contains(&Definition::Commutator(j as u32, i as u32))
                {
                    sources.push(TailSource::Comm(j, i));
                }
            }
        }
        let m = sources.len();

        let mut cover = self.rels.clone();
        cover.m = m;
        let mut image_tail = vec![None; self.images.len()];
        for (t, src) in sources.iter().enumerate() {
            let unit = vec![(t as u32, 1)];
            match *src {
                TailSource::Image(x) => image_tail[x] = Some(t as u32),
                TailSource::Power(k) => cover.power[k].tail = unit,
                TailSource::Comm(j, i) => cover.comm[j][i].tail = unit,
            }
        }

        let mut ech = Echelon::new(p, m);
        let mut record = |lhs: Elt, rhs: Elt| -> Result<()> {
            if lhs.e != rhs.e {
                return Err(Error::Verification("inconsistent pc presentation".into()));
            }
            ech.insert(lhs.t.iter().zip(&rhs.t).map(|(a, b)| (a + p - b) % p).collect());
            Ok(())
        };

        let gen = |k: usize| {
            let mut v = cover.identity();
            cover.mul_gen(&mut v, k);
            v
        };
        let times = |v: &Elt, k: usize, reps: u32| {
            let mut out = v.clone();
            for _ in 0..reps {
                cover.mul_gen(&mut out, k);
            }
            out
        };
        for i in 0..n {
            // g_i^p g_i = g_i g_i^p
            let lhs = times(&cover.from_rel(&cover.power[i]), i, 1);
            let rhs = cover.mul(&gen(i), &cover.from_rel(&cover.power[i]));
            record(lhs, rhs)?;
            for j in i + 1..n {
                // (g_j^{p-1} g_j) g_i = g_j^{p-1} (g_j g_i)
                let lhs = times(&cover.from_rel(&cover.power[j]), i, 1);
                let ji = times(&gen(j), i, 1);
                let rhs = cover.mul(&times(&cover.identity(), j, p - 1), &ji);
                record(lhs, rhs)?;
                // (g_j g_i^{p-1}) g_i = g_j (g_i^p)
                let lhs = times(&times(&gen(j), i, p - 1), i, 1);
                let rhs = cover.mul(&gen(j), &cover.from_rel(&cover.power[i]));
                record(lhs, rhs)?;
                for k in j + 1..n {
                    if self.weights[i] + self.weights[j] + self.weights[k] > class + 1 {
                        continue;
                    }
                    // (g_k g_j) g_i = g_k (g_j g_i)
                    let lhs = times(&times(&gen(k), j, 1), i, 1);
                    let rhs = cover.mul(&gen(k), &times(&gen(j), i, 1));
                    record(lhs, rhs)?;
                }
            }
        }

        let mut images = Vec::with_capacity(self.images.len());
        for (x, w) in self.images.iter().enumerate() {
            let mut v = cover.identity();
            cover.mul_word(&mut v, w);
            if let Some(t) = image_tail[x] {
                v.t[t as usize] = 1;
            }
            images.push(v);
        }
        let inverses: Vec<Elt> = images.iter().map(|v| cover.inverse(v)).collect();
        for r in relators {
            let mut v = cover.identity();
            for l in r {
                let g = if l.inv { &inverses[l.gen as usize] } else { &images[l.gen as usize] };
                v = cover.mul(&v, g);
            }
            if v.e.iter().any(|&e| e != 0) {
                return Err(Error::Verification("relator fails in the previous quotient".into()));
            }
            let zero = cover.identity();
            record(v, zero)?;
        }

        // Surviving tails become the new generators.
        let mut new_index = vec![None; m];
        let mut added = 0usize;
        for t in 0..m {
            if ech.pivot_of_col[t].is_none() {
                if class > 0 && matches!(sources[t], TailSource::Image(_)) {
                    return Err(Error::Verification("generator image outside the commutator layer".into()));
                }
                new_index[t] = Some((n + added) as u32);
                added += 1;
            }
        }
        if added == 0 {
            return Ok(0);
        }
        let expand = |t: usize| -> Vec<(u32, u32)> {
            match ech.pivot_of_col[t] {
                None => vec![(new_index[t].expect("free tail"), 1)],
                Some(r) => ech.rows[r]
                    .iter()
                    .enumerate()
                    .filter(|&(k, &f)| k != t && f != 0)
                    .map(|(k, &f)| (new_index[k].expect("reduced row"), (p - f) % p))
                    .collect(),
            }
        };
        let substitute = |rel: &mut Rel| {
            let mut extra: Vec<(u32, u32)> = Vec::new();
            for &(t, e) in &rel.tail {
                for (g, f) in expand(t as usize) {
                    extra.push((g, f * e % p));
                }
            }
            extra.sort_unstable();
            let mut merged: Vec<(u32, u32)> = Vec::new();
            for (g, f) in extra {
                match merged.last_mut() {
                    Some((h, s)) if *h == g => *s = (*s + f) % p,
                    _ => merged.push((g, f)),
                }
            }
            rel.word.extend(merged.into_iter().filter(|&(_, f)| f != 0));
            rel.tail.clear();
        };

        let total = n + added;
        let mut power: Vec<Rel> = cover.power.clone();
        let mut comm: Vec<Vec<Rel>> = cover.comm.clone();
        for rel in power.iter_mut() {
            substitute(rel);
        }
        for row in comm.iter_mut() {
            for rel in row.iter_mut() {
                substitute(rel);
            }
        }
        for j in n..total {
            power.push(Rel::default());
            comm.push(vec![Rel::default(); j]);
        }
        for x in 0..self.images.len() {
            if let Some(t) = image_tail[x] {
                let mut rel = Rel { word: self.images[x].clone(), tail: vec![(t, 1)] };
                substitute(&mut rel);
                self.images[x] = rel.word;
            }
        }
        for (t, src) in sources.iter().enumerate() {
            if new_index[t].is_some() {
                self.weights.push(class + 1);
                self.definitions.push(match *src {
                    TailSource::Image(x) => Definition::Generator(x as u32),
                    TailSource::Power(k) => Definition::Power(k as u32),
                    TailSource::Comm(j, i) => Definition::Commutator(j as u32, i as u32),
                });
            }
        }
        self.rels = Rels { p, n: total, m: 0, power, comm };
        Ok(added)
    }

    fn fill_inverses(&mut self) {
        self.inverse_images = (0..self.images.len())
            .map(|x| to_word(&self.rels.inverse(&self.elt(&self.image_vec(x))).e))
            .collect();
    }

    /// Fails unless every relator evaluates to the identity.
    pub fn check_relators(&self, relators: &[GenWord]) -> Result<()> {
        for (k, r) in relators.iter().enumerate() {
            if self.trace(r)?.iter().any(|&e| e != 0) {
                return Err(Error::Verification(format!("relator {k} fails in the pc presentation")));
            }
        }
        Ok(())
    }

    /// Runs every overlap test on the presentation itself; true iff all
    /// pairs of collections agree.
    pub fn is_consistent(&self) -> bool {
        let r = &self.rels;
        let n = r.n;
        let p = r.p;
        let gen = |k: usize| {
            let mut v = r.identity();
            r.mul_gen(&mut v, k);
            v
        };
        let times = |v: &Elt, k: usize, reps: u32| {
            let mut out = v.clone();
            for _ in 0..reps {
                r.mul_gen(&mut out, k);
            }
            out
        };
        for i in 0..n {
            if times(&r.from_rel(&r.power[i]), i, 1) != r.mul(&gen(i), &r.from_rel(&r.power[i])) {
                return false;
            }
            for j in i + 1..n {
                let lhs = times(&r.from_rel(&r.power[j]), i, 1);
                if lhs != r.mul(&times(&r.identity(), j, p - 1), &times(&gen(j), i, 1)) {
                    return false;
                }
                let lhs = times(&times(&gen(j), i, p - 1), i, 1);
                if lhs != r.mul(&gen(j), &r.from_rel(&r.power[i])) {
                    return false;
                }
                for k in j + 1..n {
                    let lhs = times(&times(&gen(k), j, 1), i, 1);
                    if lhs != r.mul(&gen(k), &times(&gen(j), i, 1)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    /// Loads a presentation written by [`PcGroup::to_json`] and checks it
    /// against `relators`.
    pub fn from_json(text: &str, relators: &[GenWord]) -> Result<PcGroup> {
        let mut g: PcGroup = serde_json::from_str(text)?;
        let r = &g.rels;
        let shape_ok = is_prime_u32(r.p)
            && r.m == 0
            && r.power.len() == r.n
            && r.comm.len() == r.n
            && r.comm.iter().enumerate().all(|(j, row)| row.len() == j)
            && g.weights.len() == r.n
            && g.definitions.len() == r.n;
        let normal = |w: &PcWord| {
            w.windows(2).all(|x| x[0].0 < x[1].0)
                && w.iter().all(|&(k, e)| (k as usize) < r.n && e > 0 && e < r.p)
        };
        let above = |w: &PcWord, k: usize| w.iter().all(|&(g, _)| g as usize > k);
        let rels_ok = shape_ok
            && r.power.iter().enumerate().all(|(k, rel)| {
                rel.tail.is_empty() && normal(&rel.word) && above(&rel.word, k)
            })
            && r.comm.iter().enumerate().all(|(j, row)| {
                row.iter().all(|rel| rel.tail.is_empty() && normal(&rel.word) && above(&rel.word, j))
            })
            && g.images.iter().all(normal);
        if !rels_ok {
            return Err(Error::Format("malformed pc presentation".into()));
        }
        g.fill_inverses();
        g.check_relators(relators)?;
        Ok(g)
    }

    pub fn prime(&self) -> u64 {
        self.rels.p as u64
    }

    /// Number of pc generators; the order is `p^rank`.
    pub fn rank(&self) -> usize {
        self.rels.n
    }

    /// Order, if it fits in `u128`.
    pub fn order(&self) -> Option<u128> {
        (self.rels.p as u128).checked_pow(self.rels.n as u32)
    }

    pub fn input_generator_count(&self) -> usize {
        self.images.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn definitions(&self) -> &[Definition] {
        &self.definitions
    }

    /// Normal form of the image of input generator `x`.
    pub fn image(&self, x: usize) -> &PcWord {
        &self.images[x]
    }

    pub fn identity(&self) -> Vec<u32> {
        vec![0; self.rels.n]
    }

    fn elt(&self, e: &[u32]) -> Elt {
        Elt { e: e.to_vec(), t: Vec::new() }
    }

    /// Product of two exponent vectors.
    pub fn mul(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        self.rels.mul(&self.elt(u), &self.elt(v)).e
    }

    pub fn inverse(&self, u: &[u32]) -> Vec<u32> {
        self.rels.inverse(&self.elt(u)).e
    }

    /// `u * x` or `u * x^-1` for an input generator `x`.
    pub fn mul_input(&self, u: &[u32], gen: usize, inv: bool) -> Vec<u32> {
        let mut v = self.elt(u);
        if inv {
            self.rels.mul_word(&mut v, &self.inverse_images[gen]);
        } else {
            self.rels.mul_word(&mut v, &self.images[gen]);
        }
        v.e
    }

    fn image_vec(&self, x: usize) -> Vec<u32> {
        let mut e = self.identity();
        for &(g, k) in &self.images[x] {
            e[g as usize] = k;
        }
        e
    }

    /// Exponent vector of a word in the input generators.
    pub fn trace(&self, w: &[crate::presentations::Letter]) -> Result<Vec<u32>> {
        let d = self.images.len();
        let mut v = self.rels.identity();
        for l in w {
            let x = l.gen as usize;
            if x >= d {
                return Err(Error::InvalidLetter { gen: x, count: d });
            }
            self.rels.mul_word(&mut v, if l.inv { &self.inverse_images[x] } else { &self.images[x] });
        }
        Ok(v.e)
    }

    /// Least `k` with `u^k = 1`.
    pub fn element_order(&self, u: &[u32]) -> u128 {
        let mut order = 1u128;
        let mut cur = u.to_vec();
        while cur.iter().any(|&e| e != 0) {
            let mut next = self.identity();
            for _ in 0..self.rels.p {
                next = self.mul(&next, &cur);
            }
            cur = next;
            order *= self.rels.p as u128;
        }
        order
    }

    /// Index of an exponent vector in `0..p^rank` (little-endian base `p`).
    pub fn index_of(&self, e: &[u32]) -> u128 {
        e.iter().rev().fold(0u128, |acc, &x| acc * self.rels.p as u128 + x as u128)
    }

    pub fn vector_at(&self, mut index: u128) -> Vec<u32> {
        let p = self.rels.p as u128;
        (0..self.rels.n)
            .map(|_| {
                let x = (index % p) as u32;
                index /= p;
                x
            })
            .collect()
    }

    /// Word in the input generators evaluating to pc generator `k`.
    pub fn generator_word(&self, k: usize) -> GenWord {
        use crate::presentations::{commutator, Letter};
        match self.definitions[k] {
            Definition::Generator(x) => vec![Letter { gen: x, inv: false }],
            Definition::Power(j) => {
                let w = self.generator_word(j as usize);
                w.iter().cycle().take(w.len() * self.rels.p as usize).copied().collect()
            }
            Definition::Commutator(j, i) => {
                commutator(&self.generator_word(j as usize), &self.generator_word(i as usize))
            }
        }
    }

    /// Word in the input generators for an exponent vector.
    pub fn word_for(&self, e: &[u32]) -> GenWord {
        let mut out = Vec::new();
        for (k, &x) in e.iter().enumerate() {
            if x != 0 {
                let w = self.generator_word(k);
                for _ in 0..x {
                    out.extend_from_slice(&w);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::Letter;

    fn word(s: &str) -> GenWord {
        s.chars()
            .map(|c| {
                if c.is_ascii_lowercase() {
                    Letter { gen: c as u32 - 'a' as u32, inv: false }
                } else {
                    Letter { gen: c.to_ascii_lowercase() as u32 - 'a' as u32, inv: true }
                }
            })
            .collect()
    }

    fn order_of(p: u64, d: usize, rels: &[&str]) -> u128 {
        let r: Vec<GenWord> = rels.iter().map(|s| word(s)).collect();
        p_quotient(p, d, &r, PQuotientLimits::default()).unwrap().order().unwrap()
    }

    #[test]
    fn small_groups() {
        assert_eq!(order_of(2, 1, &["aa"]), 2);
        assert_eq!(order_of(2, 1, &["aaaa"]), 4);
        assert_eq!(order_of(3, 2, &["aaa", "bbb", "ABab"]), 9);
        // D8 and Q8
        assert_eq!(order_of(2, 2, &["aa", "bb", "abababab"]), 8);
        assert_eq!(order_of(2, 2, &["aaaa", "aaBB", "Baba"]), 8);
        // Heisenberg group mod 3: [a,b] commutes with a and b.
        assert_eq!(order_of(3, 2, &["aaa", "bbb", "BAbaAABaba", "BAbaBABabb"]), 27);
        assert_eq!(order_of(2, 2, &["a", "b"]), 1);
    }

    #[test]
    fn capacity_for_infinite_groups() {
        let r = vec![word("ABab")];
        assert!(matches!(
            p_quotient(2, 2, &r, PQuotientLimits { max_generators: 10 }),
            Err(Error::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn arithmetic_matches_relators() {
        let r: Vec<GenWord> = ["aa", "bb", "abababab"].iter().map(|s| word(s)).collect();
        let g = p_quotient(2, 2, &r, PQuotientLimits::default()).unwrap();
        for idx in 0..8u128 {
            let u = g.vector_at(idx);
            assert_eq!(g.index_of(&u), idx);
            let ui = g.inverse(&u);
            assert_eq!(g.mul(&u, &ui), g.identity());
            assert_eq!(g.trace(&g.word_for(&u)).unwrap(), u);
        }
        let ab = g.trace(&word("ab")).unwrap();
        assert_eq!(g.element_order(&ab), 4);
    }
}
