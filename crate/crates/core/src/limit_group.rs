//! Arithmetic in `A(p, c)` and in `G(p, c) = <A, t>` with `t a_i t^-1 = a_{i+1}`.
//!
//! Every element of `G` is stored as `a t^beta` with `a` a word in the
//! generators `a_i`. The word problem for `a` is decided in the finite window
//! group `B(W)` of a window containing its support. Window groups are built
//! on demand and shared through a [`TableCache`]: each gets a pc presentation
//! from the p-quotient algorithm, and those of order at most
//! `table_limit` also get a Todd-Coxeter coset table, whose order must agree.
//!
//! Killing every generator outside a window `W` is a retraction `A -> B(W)`,
//! so each element of `A` has a least window `W_min` with the element in
//! `B(W_min)`. The canonical form of an element is its normal form in
//! `B(W_min)`; it does not depend on the word the element was built from.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::coset_enum::{self, Coset, CosetTable, DEFAULT_MAX_COSETS};
use crate::pc_group::{p_quotient, PQuotientLimits, PcGroup};
use crate::error::{Error, Result};
use crate::presentations::{
    build_window_presentation_with, check_prime, CSequence, GenWord, Letter, PresentationLimits,
    Window,
};
use crate::syntax::{self, Interpret};

/// A word `a_{i_1}^{e_1} ... a_{i_k}^{e_k}` with exponents in `1..p` and no two
/// adjacent letters on the same index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AWord {
    letters: Vec<(i64, u32)>,
}

impl AWord {
    pub fn identity() -> Self {
        AWord::default()
    }

    pub fn generator(index: i64) -> Self {
        AWord { letters: vec![(index, 1)] }
    }

    /// Builds a word from `(index, exponent)` pairs, reducing exponents mod `p`
    /// and merging neighbours.
    pub fn from_letters<I: IntoIterator<Item = (i64, i64)>>(letters: I, p: u64) -> Self {
        let mut w = AWord::identity();
        for (i, e) in letters {
            w.push(i, e, p);
        }
        w
    }

    pub fn push(&mut self, index: i64, exp: i64, p: u64) {
        let e = exp.rem_euclid(p as i64) as u32;
        if e == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some((i, f)) if *i == index => {
                let sum = (*f + e) % p as u32;
                if sum == 0 {
                    self.letters.pop();
                } else {
                    *f = sum;
                }
            }
            _ => self.letters.push((index, e)),
        }
    }

    pub fn letters(&self) -> &[(i64, u32)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Smallest window containing every index, `None` for the empty word.
    pub fn support(&self) -> Option<Window> {
        let lo = self.letters.iter().map(|l| l.0).min()?;
        let hi = self.letters.iter().map(|l| l.0).max()?;
        Some(Window { lo, hi })
    }

    /// The automorphism `a_i -> a_{i+k}`.
    pub fn shift(&self, k: i64) -> Result<AWord> {
        let letters = self
            .letters
            .iter()
            .map(|&(i, e)| i.checked_add(k).map(|j| (j, e)).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(AWord { letters })
    }

    pub fn concat(&self, other: &AWord, p: u64) -> AWord {
        let mut out = self.clone();
        for &(i, e) in &other.letters {
            out.push(i, e as i64, p);
        }
        out
    }

    pub fn inverse(&self, p: u64) -> AWord {
        AWord::from_letters(self.letters.iter().rev().map(|&(i, e)| (i, -(e as i64))), p)
    }

    /// Expands to generator letters for a window starting at `lo`, writing
    /// each power with whichever of `g^e`, `g^-(p-e)` is shorter.
    fn to_gen_word(&self, lo: i64, p: u64) -> GenWord {
        let mut out = Vec::new();
        for &(i, e) in &self.letters {
            let gen = (i - lo) as u32;
            let back = p as u32 - e;
            if back < e {
                out.extend(std::iter::repeat(Letter { gen, inv: true }).take(back as usize));
            } else {
                out.extend(std::iter::repeat(Letter { gen, inv: false }).take(e as usize));
            }
        }
        out
    }

    /// Drops every letter outside `w` (the retraction onto `B(w)`).
    pub fn retract(&self, w: Window, p: u64) -> AWord {
        AWord::from_letters(
            self.letters.iter().filter(|l| w.contains(l.0)).map(|&(i, e)| (i, e as i64)),
            p,
        )
    }
}

impl fmt::Display for AWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, &(i, e)) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if e == 1 {
                write!(f, "a{i}")?;
            } else {
                write!(f, "a{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// The element `a t^beta` of `G(p, c)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GElement {
    pub a: AWord,
    pub beta: i64,
}

impl GElement {
    pub fn identity() -> Self {
        GElement::default()
    }

    pub fn generator(index: i64) -> Self {
        GElement { a: AWord::generator(index), beta: 0 }
    }

    pub fn t_power(beta: i64) -> Self {
        GElement { a: AWord::identity(), beta }
    }

    pub fn from_a(a: AWord) -> Self {
        GElement { a, beta: 0 }
    }

    /// Radius of the support of the `a` part: `max |i|`.
    pub fn support_radius(&self) -> i64 {
        self.a.support().map(|w| w.lo.abs().max(w.hi.abs())).unwrap_or(0)
    }
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_empty(), self.beta) {
            (true, 0) => write!(f, "1"),
            (false, 0) => write!(f, "{}", self.a),
            (true, 1) => write!(f, "t"),
            (true, b) => write!(f, "t^{b}"),
            (false, 1) => write!(f, "{} t", self.a),
            (false, b) => write!(f, "{} t^{b}", self.a),
        }
    }
}

/// Order of an element of `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Order {
    Finite(u64),
    Infinite,
}

/// Image in the lamplighter quotient `Z/p wr Z` obtained by adding the
/// relations `[a_i, a_j] = 1`: per-index exponent sums mod `p`, plus `beta`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianImage {
    pub vector: BTreeMap<i64, u32>,
    pub beta: i64,
}

impl AbelianImage {
    pub fn is_zero(&self) -> bool {
        self.vector.is_empty() && self.beta == 0
    }

    /// The coarser invariant `(total exponent sum mod p, beta)`.
    pub fn collapsed(&self, p: u64) -> (u32, i64) {
        let total = self.vector.values().map(|&e| e as u64).sum::<u64>() % p;
        (total as u32, self.beta)
    }
}

/// Element of a window group, as located by its engine.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ElementKey {
    Coset(Coset),
    Vector(Vec<u32>),
}

/// The group `B([0, width])`: a pc presentation, and for small orders the
/// full coset table as well.
#[derive(Debug)]
pub struct WindowGroup {
    pub width: u64,
    pub pc: PcGroup,
    pub table: Option<CosetTable>,
    pub relators: Vec<GenWord>,
}

impl WindowGroup {
    /// `|B|` when it fits in `u128`.
    pub fn order(&self) -> Option<u128> {
        self.pc.order()
    }

    pub fn locate(&self, w: &[Letter]) -> Result<ElementKey> {
        match &self.table {
            Some(t) => Ok(ElementKey::Coset(t.trace(w)?)),
            None => Ok(ElementKey::Vector(self.pc.trace(w)?)),
        }
    }

    pub fn identity(&self) -> ElementKey {
        match &self.table {
            Some(_) => ElementKey::Coset(0),
            None => ElementKey::Vector(self.pc.identity()),
        }
    }

    pub fn is_identity(&self, key: &ElementKey) -> bool {
        match key {
            ElementKey::Coset(c) => *c == 0,
            ElementKey::Vector(v) => v.iter().all(|&e| e == 0),
        }
    }

    /// `key * x` for a window letter `x`.
    pub fn step(&self, key: &ElementKey, l: Letter) -> ElementKey {
        match (key, &self.table) {
            (ElementKey::Coset(c), Some(t)) => ElementKey::Coset(t.act(*c, l)),
            (ElementKey::Vector(v), _) => ElementKey::Vector(self.pc.mul_input(v, l.gen as usize, l.inv)),
            (ElementKey::Coset(_), None) => unreachable!("coset key without a table"),
        }
    }

    /// Normal-form word: shortlex-least when a table exists, otherwise the
    /// expansion of the pc normal form.
    pub fn word(&self, key: &ElementKey) -> GenWord {
        match key {
            ElementKey::Coset(c) => self.table.as_ref().expect("table").word_for_coset(*c),
            ElementKey::Vector(v) => self.pc.word_for(v),
        }
    }

    pub fn element_order(&self, key: &ElementKey) -> Result<u64> {
        match key {
            ElementKey::Coset(c) => Ok(self.table.as_ref().expect("table").coset_order(*c)),
            ElementKey::Vector(v) => u64::try_from(self.pc.element_order(v)).map_err(|_| Error::Overflow),
        }
    }
}

type Slot = Arc<OnceLock<Result<Arc<WindowGroup>>>>;

/// Window groups keyed by width. The group for `[lo, hi]` is the group for
/// `[0, hi - lo]` with every index shifted by `lo`.
///
/// Each key is built exactly once; threads asking for other keys are not
/// blocked while a group is under construction.
#[derive(Debug, Default)]
pub struct TableCache {
    slots: Mutex<HashMap<u64, Slot>>,
    dir: Option<PathBuf>,
}

impl TableCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        TableCache { slots: Mutex::new(HashMap::new()), dir }
    }

    fn slot(&self, width: u64) -> Slot {
        let mut slots = self.slots.lock().expect("cache lock poisoned");
        slots.entry(width).or_default().clone()
    }

    /// Window groups built successfully so far, by width.
    pub fn built(&self) -> Vec<Arc<WindowGroup>> {
        let slots = self.slots.lock().expect("cache lock poisoned");
        let mut out: Vec<_> =
            slots.values().filter_map(|s| s.get().and_then(|r| r.as_ref().ok().cloned())).collect();
        out.sort_by_key(|t| t.width);
        out
    }
}

/// Parameters of an instance `G(p, c)`.
/// Iterator returned by [`LimitGroup::window_walk`].
pub struct WindowWalk<'a> {
    group: &'a LimitGroup,
    letters: Vec<Letter>,
    window: Window,
    wg: Arc<WindowGroup>,
    seen: HashSet<ElementKey>,
    queue: VecDeque<(ElementKey, Vec<Letter>)>,
    max_len: usize,
}

impl Iterator for WindowWalk<'_> {
    type Item = Result<(AWord, usize)>;

    fn next(&mut self) -> Option<Self::Item> {
        let (key, word) = self.queue.pop_front()?;
        if word.len() < self.max_len {
            for &l in &self.letters {
                let next = self.wg.step(&key, l);
                if self.seen.insert(next.clone()) {
                    let mut w = word.clone();
                    w.push(l);
                    self.queue.push_back((next, w));
                }
            }
        }
        let len = word.len();
        Some(self.group.canonical_a(&self.group.from_window_word(&word, self.window.lo)).map(|a| (a, len)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceConfig {
    pub p: u64,
    pub c: CSequence,
    /// Coset cap for Todd-Coxeter runs.
    pub max_cosets: usize,
    /// Window groups up to this order also get a coset table.
    pub table_limit: u64,
    /// Widest window the engine will build.
    pub max_width: u64,
    /// Largest `log_p |B|` accepted from the p-quotient.
    pub max_rank: usize,
    pub cache_dir: Option<PathBuf>,
}

impl Default for InstanceConfig {
    /// `p = 2`, `c = (1, 2, 3, 3, ...)`.
    fn default() -> Self {
        InstanceConfig {
            p: 2,
            c: CSequence::explicit(vec![1, 2, 3]).expect("valid"),
            max_cosets: DEFAULT_MAX_COSETS,
            table_limit: 1 << 16,
            max_width: 10,
            max_rank: 512,
            cache_dir: None,
        }
    }
}

impl InstanceConfig {
    pub fn new(p: u64, c: CSequence) -> Self {
        InstanceConfig { p, c, ..InstanceConfig::default() }
    }
}

/// The group `G(p, c)` with its window cache.
#[derive(Debug)]
pub struct LimitGroup {
    config: InstanceConfig,
    cache: TableCache,
}

impl LimitGroup {
    pub fn new(config: InstanceConfig) -> Result<Self> {
        check_prime(config.p)?;
        if config.max_cosets == 0 {
            return Err(Error::Precondition("max_cosets must be positive".into()));
        }
        let cache = TableCache::new(config.cache_dir.clone());
        Ok(LimitGroup { config, cache })
    }

    pub fn default_instance() -> Self {
        LimitGroup::new(InstanceConfig::default()).expect("default instance is valid")
    }

    pub fn with(p: u64, c: CSequence) -> Result<Self> {
        LimitGroup::new(InstanceConfig::new(p, c))
    }

    pub fn p(&self) -> u64 {
        self.config.p
    }

    pub fn c(&self) -> &CSequence {
        &self.config.c
    }

    pub fn config(&self) -> &InstanceConfig {
        &self.config
    }

    pub fn cache(&self) -> &TableCache {
        &self.cache
    }

    /// Hex digest of `(p, c_1..c_width, width)`, the disk cache key.
    pub fn cache_key(&self, width: u64) -> String {
        let prefix = self.config.c.prefix_values(width as u32);
        let text = format!(
            "p={};c={};window=0..{}",
            self.config.p,
            prefix.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
            width
        );
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    /// The group `B([0, width])`.
    pub fn window_group(&self, width: u64) -> Result<Arc<WindowGroup>> {
        if width > self.config.max_width {
            return Err(Error::WindowTooWide { width, bound: self.config.max_width });
        }
        let slot = self.cache.slot(width);
        slot.get_or_init(|| self.build_window(width).map(Arc::new)).clone()
    }

    fn build_window(&self, width: u64) -> Result<WindowGroup> {
        let limits = PresentationLimits { max_width: self.config.max_width, ..Default::default() };
        let window = Window::new(0, width as i64)?;
        let pres = build_window_presentation_with(self.config.p, &self.config.c, window, limits)?;
        let relators: Vec<GenWord> = pres.relators.iter().map(|r| r.letters.clone()).collect();
        let key = self.cache_key(width);
        let dir = self.cache.dir.as_ref();
        let load = |suffix: &str| dir.and_then(|d| std::fs::read_to_string(d.join(format!("{key}.{suffix}.json"))).ok());
        let store = |suffix: &str, text: String| -> Result<()> {
            if let Some(d) = dir {
                std::fs::create_dir_all(d)?;
                std::fs::write(d.join(format!("{key}.{suffix}.json")), text)?;
            }
            Ok(())
        };

        let pc = match load("pc").and_then(|t| PcGroup::from_json(&t, &relators).ok()) {
            Some(pc) if pc.input_generator_count() == window.len() => pc,
            _ => {
                let limits = PQuotientLimits { max_generators: self.config.max_rank };
                let pc = p_quotient(self.config.p, window.len(), &relators, limits)?;
                store("pc", pc.to_json()?)?;
                pc
            }
        };

        let order = pc.order();
        let table = match order {
            Some(n) if n <= self.config.table_limit as u128 => {
                let cached = load("table").and_then(|t| CosetTable::from_json(&t).ok()).filter(|t| {
                    t.coset_count() as u128 == n
                        && t.generator_count() == window.len()
                        && t.relator_violations(&relators).map(|v| v.is_empty()).unwrap_or(false)
                });
                match cached {
                    Some(t) => Some(t),
                    None => {
                        let t = match coset_enum::enumerate(&pres, self.config.max_cosets) {
                            Ok(t) => t,
                            Err(e) if e.is_capacity() => coset_enum::regular_table(&pc, n as usize)?,
                            Err(e) => return Err(e),
                        };
                        if t.coset_count() as u128 != n {
                            return Err(Error::Verification(format!(
                                "window width {width}: coset table has {} elements, pc presentation {n}",
                                t.coset_count()
                            )));
                        }
                        store("table", t.to_json()?)?;
                        Some(t)
                    }
                }
            }
            _ => None,
        };
        Ok(WindowGroup { width, pc, table, relators })
    }

    /// Locates `a` in the group of `window`, which must contain its support.
    fn locate(&self, a: &AWord, window: Window) -> Result<(Arc<WindowGroup>, ElementKey)> {
        let wg = self.window_group(window.width())?;
        let key = wg.locate(&a.to_gen_word(window.lo, self.config.p))?;
        Ok((wg, key))
    }

    /// Least window `W` with `a` in `B(W)`; `None` for the identity.
    pub fn minimal_window(&self, a: &AWord) -> Result<Option<Window>> {
        let Some(w) = a.support() else { return Ok(None) };
        let (wg, target) = self.locate(a, w)?;
        if wg.is_identity(&target) {
            return Ok(None);
        }
        let p = self.config.p;
        let fixed = |sub: Window| -> Result<bool> {
            let r = a.retract(sub, p);
            Ok(wg.locate(&r.to_gen_word(w.lo, p))? == target)
        };
        let mut lo = w.lo;
        while lo < w.hi && fixed(Window { lo: lo + 1, hi: w.hi })? {
            lo += 1;
        }
        let mut hi = w.hi;
        while hi > lo && fixed(Window { lo, hi: hi - 1 })? {
            hi -= 1;
        }
        Ok(Some(Window { lo, hi }))
    }

    /// Canonical form of an element of `A`: its normal form in the group of
    /// its least window.
    pub fn canonical_a(&self, a: &AWord) -> Result<AWord> {
        let Some(w) = self.minimal_window(a)? else { return Ok(AWord::identity()) };
        let (wg, key) = self.locate(&a.retract(w, self.config.p), w)?;
        Ok(self.from_window_word(&wg.word(&key), w.lo))
    }

    fn from_window_word(&self, w: &[Letter], lo: i64) -> AWord {
        AWord::from_letters(
            w.iter().map(|l| (lo + l.gen as i64, if l.inv { -1 } else { 1 })),
            self.config.p,
        )
    }

    pub fn canonical(&self, g: &GElement) -> Result<GElement> {
        Ok(GElement { a: self.canonical_a(&g.a)?, beta: g.beta })
    }

    pub fn shift(&self, u: &AWord, k: i64) -> Result<AWord> {
        u.shift(k)
    }

    /// Word-level product `(a1, b1)(a2, b2) = (a1 shift(a2, b1), b1 + b2)`
    /// without canonicalization. Needs no window groups.
    pub fn mul_raw(&self, g: &GElement, h: &GElement) -> Result<GElement> {
        let shifted = h.a.shift(g.beta)?;
        Ok(GElement {
            a: g.a.concat(&shifted, self.config.p),
            beta: g.beta.checked_add(h.beta).ok_or(Error::Overflow)?,
        })
    }

    /// Canonical product.
    pub fn multiply(&self, g: &GElement, h: &GElement) -> Result<GElement> {
        self.canonical(&self.mul_raw(g, h)?)
    }

    /// `(a t^b)^-1 = shift(a^-1, -b) t^-b`, word level.
    pub fn inverse(&self, g: &GElement) -> Result<GElement> {
        let back = g.beta.checked_neg().ok_or(Error::Overflow)?;
        Ok(GElement { a: g.a.inverse(self.config.p).shift(back)?, beta: back })
    }

    pub fn pow_raw(&self, g: &GElement, k: i64) -> Result<GElement> {
        self.pow(g, k)
    }

    pub fn is_trivial(&self, g: &GElement) -> Result<bool> {
        if g.beta != 0 {
            return Ok(false);
        }
        let Some(w) = g.a.support() else { return Ok(true) };
        let (wg, key) = self.locate(&g.a, w)?;
        Ok(wg.is_identity(&key))
    }

    pub fn equal(&self, g: &GElement, h: &GElement) -> Result<bool> {
        self.is_trivial(&self.mul_raw(g, &self.inverse(h)?)?)
    }

    pub fn order(&self, g: &GElement) -> Result<Order> {
        if g.beta != 0 {
            return Ok(Order::Infinite);
        }
        let Some(w) = g.a.support() else { return Ok(Order::Finite(1)) };
        let (wg, key) = self.locate(&g.a, w)?;
        Ok(Order::Finite(wg.element_order(&key)?))
    }

    pub fn abelianize(&self, g: &GElement) -> AbelianImage {
        let p = self.config.p as u32;
        let mut vector = BTreeMap::new();
        for &(i, e) in g.a.letters() {
            let slot = vector.entry(i).or_insert(0u32);
            *slot = (*slot + e) % p;
        }
        vector.retain(|_, e| *e != 0);
        AbelianImage { vector, beta: g.beta }
    }

    /// Letters `a_lo, a_lo^-1, a_{lo+1}, ...` of a window, in shortlex order.
    /// For `p = 2` the inverse letters are omitted.
    fn window_letters(&self, window: Window) -> Vec<Letter> {
        (0..window.len() as u32)
            .flat_map(|gen| {
                let inv = (self.config.p > 2).then_some(Letter { gen, inv: true });
                std::iter::once(Letter { gen, inv: false }).chain(inv)
            })
            .collect()
    }

    /// Up to `limit` elements of `B(window)` in shortlex order of their
    /// shortest words, as canonical forms. Starts with the identity.
    pub fn window_elements(&self, window: Window, limit: usize) -> Result<Vec<AWord>> {
        self.window_walk(window, usize::MAX)?.take(limit).map(|r| r.map(|(a, _)| a)).collect()
    }

    /// Lazy breadth-first walk over `B(window)`, yielding each element once
    /// as `(canonical form, shortest word length)` in shortlex order of the
    /// shortest words. Elements needing more than `max_len` letters are not
    /// reached.
    pub fn window_walk(&self, window: Window, max_len: usize) -> Result<WindowWalk<'_>> {
        let wg = self.window_group(window.width())?;
        let start = wg.identity();
        let mut seen = HashSet::new();
        seen.insert(start.clone());
        Ok(WindowWalk {
            group: self,
            letters: self.window_letters(window),
            window,
            wg,
            seen,
            queue: VecDeque::from([(start, Vec::new())]),
            max_len,
        })
    }

    /// Elements of `<gens>` inside the group of `window`.
    fn subgroup_keys(&self, gens: &[AWord], window: Window, limit: usize) -> Result<Vec<ElementKey>> {
        let wg = self.window_group(window.width())?;
        let gen_words: Vec<GenWord> =
            gens.iter().map(|g| g.to_gen_word(window.lo, self.config.p)).collect();
        let mut seen = HashSet::new();
        let start = wg.identity();
        seen.insert(start.clone());
        let mut out = vec![start];
        let mut head = 0;
        while head < out.len() {
            let key = out[head].clone();
            head += 1;
            for w in &gen_words {
                let mut next = key.clone();
                for &l in w {
                    next = wg.step(&next, l);
                }
                if seen.insert(next.clone()) {
                    if out.len() >= limit {
                        return Err(Error::CapacityExceeded { limit });
                    }
                    out.push(next);
                }
            }
        }
        Ok(out)
    }

    /// Checks `H ∩ t^-(2N+1) H t^(2N+1) = {1}` for `H = <gens>` inside
    /// `B([-N, N])`, comparing both subgroups inside `B([-N, 3N+1])`.
    pub fn conjugate_subgroup_meet_trivial(&self, gens: &[AWord], radius: i64) -> Result<bool> {
        if radius < 0 {
            return Err(Error::Precondition("radius must be non-negative".into()));
        }
        let window = Window::centered(radius);
        for g in gens {
            if let Some(s) = g.support() {
                if !window.contains(s.lo) || !window.contains(s.hi) {
                    return Err(Error::Precondition(format!("generator `{g}` lies outside {window}")));
                }
            }
        }
        let step = 2 * radius + 1;
        let joint = Window { lo: -radius, hi: 3 * radius + 1 };
        let limit = self.config.max_cosets;
        let here = self.subgroup_keys(gens, joint, limit)?;
        let shifted: Vec<AWord> = gens.iter().map(|g| g.shift(step)).collect::<Result<_>>()?;
        let there = self.subgroup_keys(&shifted, joint, limit)?;
        let here: HashSet<ElementKey> = here.into_iter().collect();
        let wg = self.window_group(joint.width())?;
        Ok(there.iter().all(|k| wg.is_identity(k) || !here.contains(k)))
    }

    pub fn parse(&self, text: &str) -> Result<GElement> {
        syntax::parse(text)?.eval(self)
    }
}

impl Interpret for LimitGroup {
    type Value = GElement;

    fn identity(&self) -> GElement {
        GElement::identity()
    }

    fn symbol(&self, name: char, index: Option<i64>) -> Result<GElement> {
        match (name, index) {
            ('a', Some(i)) => Ok(GElement::generator(i)),
            ('t', None) => Ok(GElement::t_power(1)),
            _ => Err(Error::UnknownSymbol(format!(
                "{name}{}",
                index.map(|i| i.to_string()).unwrap_or_default()
            ))),
        }
    }

    fn mul(&self, a: &GElement, b: &GElement) -> Result<GElement> {
        self.mul_raw(a, b)
    }

    fn inv(&self, a: &GElement) -> Result<GElement> {
        self.inverse(a)
    }
}
