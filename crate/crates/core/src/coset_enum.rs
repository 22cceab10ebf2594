//! Todd–Coxeter coset enumeration over the trivial subgroup.
//!
//! The result is the regular representation of a finite presented group:
//! one coset per element, one column per generator and per inverse. After
//! enumeration the cosets are renumbered in breadth-first shortlex order, so
//! coset `k` is the `k`-th element in shortlex order of its normal form and
//! coset `0` is the identity.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pc_group::PcGroup;
use crate::presentations::{GenWord, Letter, Presentation};

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const UNDEF: u32 = u32::MAX;

pub type Coset = u32;

/// Complete coset action of a finite group on itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    generator_count: usize,
    coset_count: usize,
    /// Row-major, `2 * generator_count` columns.
    action: Vec<u32>,
    /// BFS tree: the coset and column through which each coset was first reached.
    parent: Vec<(u32, u32)>,
}

struct Enumerator<'a> {
    cols: usize,
    relators: &'a [Vec<usize>],
    table: Vec<u32>,
    rep: Vec<u32>,
    live: usize,
    max_cosets: usize,
    queue: Vec<u32>,
}

impl<'a> Enumerator<'a> {
    fn row(&self, c: u32) -> usize {
        c as usize * self.cols
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[self.row(c) + x]
    }

    fn set(&mut self, c: u32, x: usize, v: u32) {
        let r = self.row(c);
        self.table[r + x] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.rep[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32> {
        if self.live >= self.max_cosets {
            return Err(Error::CapacityExceeded { limit: self.max_cosets });
        }
        let n = self.rep.len() as u32;
        if n == UNDEF {
            return Err(Error::CapacityExceeded { limit: self.max_cosets });
        }
        self.rep.push(n);
        self.table.extend(std::iter::repeat(UNDEF).take(self.cols));
        self.live += 1;
        self.set(c, x, n);
        self.set(n, x ^ 1, c);
        Ok(n)
    }

    fn find(&mut self, mut c: u32) -> u32 {
        let mut root = c;
        while self.rep[root as usize] != root {
            root = self.rep[root as usize];
        }
        while self.rep[c as usize] != root {
            let next = self.rep[c as usize];
            self.rep[c as usize] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.find(a);
        let b = self.find(b);
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.rep[kill as usize] = keep;
        self.live -= 1;
        self.queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                self.set(f, x ^ 1, UNDEF);
                let e1 = self.find(e);
                let f1 = self.find(f);
                let ex = self.get(e1, x);
                if ex != UNDEF {
                    self.merge(f1, ex);
                } else {
                    let fx = self.get(f1, x ^ 1);
                    if fx != UNDEF {
                        self.merge(e1, fx);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, x ^ 1, e1);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Scan relator `r` from coset `c`, defining new cosets as needed.
    fn scan_and_fill(&mut self, c: u32, r: usize) -> Result<()> {
        let rel = self.relators[r].as_slice();
        if rel.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0isize;
        let last = rel.len() as isize - 1;
        let mut j = last;
        loop {
            while i <= last {
                let nxt = self.get(f, rel[i as usize]);
                if nxt == UNDEF {
                    break;
                }
                f = nxt;
                i += 1;
            }
            if i > last {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j >= i {
                let nxt = self.get(b, rel[j as usize] ^ 1);
                if nxt == UNDEF {
                    break;
                }
                b = nxt;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                // deduction
                let x = rel[i as usize];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                return Ok(());
            }
            self.define(f, rel[i as usize])?;
        }
    }

    fn run(&mut self) -> Result<()> {
        let mut c = 0u32;
        while (c as usize) < self.rep.len() {
            if self.is_live(c) {
                for r in 0..self.relators.len() {
                    self.scan_and_fill(c, r)?;
                    if !self.is_live(c) {
                        break;
                    }
                }
                if self.is_live(c) {
                    for x in 0..self.cols {
                        if self.get(c, x) == UNDEF {
                            self.define(c, x)?;
                        }
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }
}

/// Free reduction followed by cancellation of inverse letters at the two ends.
pub fn cyclically_reduce(w: &[Letter]) -> GenWord {
    let mut out: GenWord = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    let mut start = 0;
    let mut end = out.len();
    while end - start >= 2 && out[start] == out[end - 1].inverse() {
        start += 1;
        end -= 1;
    }
    out[start..end].to_vec()
}

/// Enumerates the cosets of the trivial subgroup of `pres`.
pub fn enumerate(pres: &Presentation, max_cosets: usize) -> Result<CosetTable> {
    enumerate_relators(
        pres.generator_count,
        &pres.relators.iter().map(|r| r.letters.clone()).collect::<Vec<_>>(),
        max_cosets,
    )
}

/// Enumeration from bare relator words.
pub fn enumerate_relators(
    generator_count: usize,
    relators: &[GenWord],
    max_cosets: usize,
) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::Precondition("max_cosets must be at least 1".into()));
    }
    for r in relators {
        if let Some(l) = r.iter().find(|l| l.gen as usize >= generator_count) {
            return Err(Error::InvalidLetter { gen: l.gen as usize, count: generator_count });
        }
    }
    let cols = 2 * generator_count;
    // Scanning assumes cyclically reduced relators.
    let mut seen = HashSet::new();
    let rels: Vec<Vec<usize>> = relators
        .iter()
        .map(|r| cyclically_reduce(r).iter().map(|l| l.column()).collect::<Vec<_>>())
        .filter(|r| !r.is_empty() && seen.insert(r.clone()))
        .collect();
    let mut e = Enumerator {
        cols,
        relators: &rels,
        table: vec![UNDEF; cols],
        rep: vec![0],
        live: 1,
        max_cosets,
        queue: Vec::new(),
    };
    e.run()?;

    // Compact the live cosets, then renumber in BFS shortlex order.
    let mut compact = vec![UNDEF; e.rep.len()];
    let mut live = Vec::with_capacity(e.live);
    for c in 0..e.rep.len() as u32 {
        if e.rep[c as usize] == c {
            compact[c as usize] = live.len() as u32;
            live.push(c);
        }
    }
    let mut raw = vec![UNDEF; live.len() * cols];
    for (new, &old) in live.iter().enumerate() {
        for x in 0..cols {
            let t = e.get(old, x);
            let t = e.find(t);
            raw[new * cols + x] = compact[t as usize];
        }
    }
    Ok(CosetTable::standardize(generator_count, live.len(), &raw))
}

/// Regular representation of a group given by a pc presentation, numbered
/// exactly as [`enumerate`] would number it.
pub fn regular_table(pc: &PcGroup, max_cosets: usize) -> Result<CosetTable> {
    let n = match pc.order() {
        Some(order) if order <= max_cosets as u128 => order as usize,
        _ => return Err(Error::CapacityExceeded { limit: max_cosets }),
    };
    let gens = pc.input_generator_count();
    let cols = 2 * gens;
    let mut raw = vec![UNDEF; n * cols];
    for idx in 0..n {
        let e = pc.vector_at(idx as u128);
        for x in 0..cols {
            let l = Letter::from_column(x);
            let next = pc.mul_input(&e, l.gen as usize, l.inv);
            raw[idx * cols + x] = pc.index_of(&next) as u32;
        }
    }
    let identity = pc.index_of(&pc.identity()) as usize;
    debug_assert_eq!(identity, 0);
    Ok(CosetTable::standardize(gens, n, &raw))
}

impl CosetTable {
    fn standardize(generator_count: usize, n: usize, raw: &[u32]) -> CosetTable {
        let cols = 2 * generator_count;
        let mut order = vec![UNDEF; n];
        let mut bfs = Vec::with_capacity(n);
        let mut parent = Vec::with_capacity(n);
        order[0] = 0;
        bfs.push(0u32);
        parent.push((0u32, UNDEF));
        let mut head = 0;
        while head < bfs.len() {
            let c = bfs[head];
            for x in 0..cols {
                let t = raw[c as usize * cols + x];
                if order[t as usize] == UNDEF {
                    order[t as usize] = bfs.len() as u32;
                    bfs.push(t);
                    parent.push((head as u32, x as u32));
                }
            }
            head += 1;
        }
        let mut action = vec![UNDEF; n * cols];
        for (new, &old) in bfs.iter().enumerate() {
            for x in 0..cols {
                action[new * cols + x] = order[raw[old as usize * cols + x] as usize];
            }
        }
        CosetTable { generator_count, coset_count: n, action, parent }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    /// Number of cosets, i.e. the order of the group.
    pub fn coset_count(&self) -> usize {
        self.coset_count
    }

    pub fn identity_coset(&self) -> Coset {
        0
    }

    pub fn act(&self, c: Coset, l: Letter) -> Coset {
        self.action[c as usize * 2 * self.generator_count + l.column()]
    }

    pub fn act_column(&self, c: Coset, col: usize) -> Coset {
        self.action[c as usize * 2 * self.generator_count + col]
    }

    fn check_letters(&self, w: &[Letter]) -> Result<()> {
        match w.iter().find(|l| l.gen as usize >= self.generator_count) {
            Some(l) => Err(Error::InvalidLetter { gen: l.gen as usize, count: self.generator_count }),
            None => Ok(()),
        }
    }

    pub fn trace_from(&self, start: Coset, w: &[Letter]) -> Result<Coset> {
        self.check_letters(w)?;
        Ok(w.iter().fold(start, |c, &l| self.act(c, l)))
    }

    pub fn trace(&self, w: &[Letter]) -> Result<Coset> {
        self.trace_from(0, w)
    }

    /// The coset reached by tracing `u` then `v` from the identity.
    pub fn multiply(&self, u: &[Letter], v: &[Letter]) -> Result<Coset> {
        let mid = self.trace(u)?;
        self.trace_from(mid, v)
    }

    /// Shortlex-minimal word reaching `c` from the identity.
    pub fn word_for_coset(&self, mut c: Coset) -> GenWord {
        let mut out = Vec::new();
        while c != 0 {
            let (par, col) = self.parent[c as usize];
            out.push(Letter::from_column(col as usize));
            c = par;
        }
        out.reverse();
        out
    }

    pub fn normal_form(&self, u: &[Letter]) -> Result<GenWord> {
        Ok(self.word_for_coset(self.trace(u)?))
    }

    /// Least `k >= 1` with `u^k` at the identity coset.
    pub fn element_order(&self, u: &[Letter]) -> Result<u64> {
        let g = self.trace(u)?;
        Ok(self.coset_order(g))
    }

    /// Order of the element represented by coset `g`.
    pub fn coset_order(&self, g: Coset) -> u64 {
        // The regular action: right multiplication by g is the permutation
        // obtained by tracing g's word.
        let word = self.word_for_coset(g);
        let mut k = 1;
        let mut c = g;
        while c != 0 {
            c = word.iter().fold(c, |acc, &l| self.act(acc, l));
            k += 1;
        }
        k
    }

    /// Product of two elements given as cosets.
    pub fn mul_cosets(&self, a: Coset, b: Coset) -> Coset {
        self.word_for_coset(b).iter().fold(a, |acc, &l| self.act(acc, l))
    }

    pub fn inverse_coset(&self, a: Coset) -> Coset {
        self.word_for_coset(a).iter().rev().fold(0, |acc, &l| self.act(acc, l.inverse()))
    }

    /// Relator words that fail to trace to the identity permutation, with
    /// the first coset each one moves.
    pub fn relator_violations(&self, relators: &[GenWord]) -> Result<Vec<(usize, Coset)>> {
        let mut out = Vec::new();
        for (i, r) in relators.iter().enumerate() {
            self.check_letters(r)?;
            if let Some(q) = (0..self.coset_count as u32).find(|&q| self.trace_from(q, r).ok() != Some(q)) {
                out.push((i, q));
            }
        }
        Ok(out)
    }

    /// Every column is a permutation of the cosets and the inverse column
    /// undoes it.
    pub fn is_consistent(&self) -> bool {
        let cols = 2 * self.generator_count;
        let mut seen = vec![false; self.coset_count];
        for x in 0..cols {
            seen.iter_mut().for_each(|s| *s = false);
            for c in 0..self.coset_count as u32 {
                let t = self.act_column(c, x);
                if t as usize >= self.coset_count || seen[t as usize] {
                    return false;
                }
                seen[t as usize] = true;
                if self.act_column(t, x ^ 1) != c {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&TableFile::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<CosetTable> {
        let file: TableFile = serde_json::from_str(s)?;
        CosetTable::try_from(file)
    }

    /// Every element as a coset index, in shortlex order of normal forms.
    pub fn elements(&self) -> impl Iterator<Item = Coset> {
        0..self.coset_count as u32
    }

    /// Cosets in BFS layers, used to check shortlex minimality.
    pub fn bfs_depths(&self) -> Vec<usize> {
        let mut depth = vec![usize::MAX; self.coset_count];
        depth[0] = 0;
        let mut q = VecDeque::from([0u32]);
        while let Some(c) = q.pop_front() {
            for x in 0..2 * self.generator_count {
                let t = self.act_column(c, x);
                if depth[t as usize] == usize::MAX {
                    depth[t as usize] = depth[c as usize] + 1;
                    q.push_back(t);
                }
            }
        }
        depth
    }
}

/// On-disk form: coset count and action rows.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableFile {
    pub generators: usize,
    pub coset_count: usize,
    pub rows: Vec<Vec<u32>>,
}

impl From<&CosetTable> for TableFile {
    fn from(t: &CosetTable) -> Self {
        let cols = 2 * t.generator_count;
        TableFile {
            generators: t.generator_count,
            coset_count: t.coset_count,
            rows: t.action.chunks(cols.max(1)).map(<[u32]>::to_vec).collect(),
        }
    }
}

impl TryFrom<TableFile> for CosetTable {
    type Error = Error;

    fn try_from(f: TableFile) -> Result<Self> {
        let cols = 2 * f.generators;
        if f.coset_count == 0 || f.rows.len() != f.coset_count {
            return Err(Error::Format("row count does not match coset count".into()));
        }
        let mut raw = Vec::with_capacity(cols * f.coset_count);
        for row in &f.rows {
            if row.len() != cols || row.iter().any(|&t| t as usize >= f.coset_count) {
                return Err(Error::Format("malformed action row".into()));
            }
            raw.extend_from_slice(row);
        }
        let table = CosetTable::standardize(f.generators, f.coset_count, &raw);
        if !table.is_consistent() {
            return Err(Error::Format("action columns are not inverse permutations".into()));
        }
        let reached = table.parent.len();
        if reached != f.coset_count {
            return Err(Error::Format("table is not transitive".into()));
        }
        Ok(table)
    }
}
