//! Finite groups given by multiplication tables, and exhaustive checks of
//! mixed identities in them.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixed_words::{Ambient, MixedWord};
use crate::syntax::Interpret;

/// Groups larger than this are refused outright.
pub const MAX_ORDER: usize = 1 << 16;
/// Axioms are checked exhaustively up to this order and sampled above it.
pub const EXHAUSTIVE_AXIOMS: usize = 512;
/// Largest group for a one-variable exhaustive check.
pub const SINGLE_VARIABLE_BUDGET: u64 = 10_000;
/// Largest number of assignments for a multi-variable check.
pub const MULTI_VARIABLE_BUDGET: u64 = 1_000_000;

/// Elements are `0..order`, with `0` the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
    /// Permutation of each element (0-based points), for permutation groups.
    perms: Option<Vec<Vec<u8>>>,
}

impl FiniteGroup {
    /// Builds a group from a full table; `table[i * n + j] = i * j`.
    /// Element 0 must be the identity.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<u32>, labels: Vec<String>) -> Result<Self> {
        if order == 0 || table.len() != order * order || labels.len() != order {
            return Err(Error::Precondition("table shape does not match order".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::CapacityExceeded { limit: MAX_ORDER });
        }
        if table.iter().any(|&x| x as usize >= order) {
            return Err(Error::Precondition("table entry out of range".into()));
        }
        let mut inv = vec![u32::MAX; order];
        for i in 0..order {
            if table[i] as usize != i || table[i * order] as usize != i {
                return Err(Error::Precondition("element 0 is not an identity".into()));
            }
            for j in 0..order {
                if table[i * order + j] == 0 {
                    inv[i] = j as u32;
                    break;
                }
            }
            if inv[i] == u32::MAX {
                return Err(Error::Precondition(format!("element {i} has no inverse")));
            }
        }
        let g = FiniteGroup { name: name.into(), order, mul: table, inv, labels, perms: None };
        g.check_axioms()?;
        Ok(g)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        let assoc = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        let ok = if n <= EXHAUSTIVE_AXIOMS {
            (0..n).into_par_iter().all(|a| (0..n).all(|b| (0..n).all(|c| assoc(a, b, c))))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            (0..100_000).all(|_| assoc(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
        };
        if !ok {
            return Err(Error::Precondition(format!("{}: multiplication is not associative", self.name)));
        }
        for i in 0..n {
            if self.mul(self.inv(i), i) != 0 {
                return Err(Error::Precondition(format!("{}: inverse table is not two-sided", self.name)));
            }
        }
        Ok(())
    }

    /// Closure of a set of permutations of `0..degree`, composed left to right
    /// (`p * q` applies `p` first).
    pub fn from_permutations(name: impl Into<String>, degree: usize, gens: &[Vec<u8>]) -> Result<Self> {
        let identity: Vec<u8> = (0..degree as u8).collect();
        for g in gens {
            let mut sorted = g.clone();
            sorted.sort_unstable();
            if g.len() != degree || sorted != identity {
                return Err(Error::Precondition("generator is not a permutation".into()));
            }
        }
        let compose = |p: &[u8], q: &[u8]| -> Vec<u8> { p.iter().map(|&i| q[i as usize]).collect() };
        let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
        let mut perms = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for g in gens {
                let next = compose(&perms[k], g);
                if !index.contains_key(&next) {
                    if perms.len() >= MAX_ORDER {
                        return Err(Error::CapacityExceeded { limit: MAX_ORDER });
                    }
                    index.insert(next.clone(), perms.len());
                    perms.push(next);
                    queue.push_back(perms.len() - 1);
                }
            }
        }
        let n = perms.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = index[&compose(&perms[i], &perms[j])] as u32;
            }
        }
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        let mut g = FiniteGroup::from_table(name, n, table, labels)?;
        g.perms = Some(perms);
        Ok(g)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("cyclic group of order 0".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::CapacityExceeded { limit: MAX_ORDER });
        }
        let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        let labels = (0..n).map(|k| if k == 0 { "e".into() } else { format!("c^{k}") }).collect();
        FiniteGroup::from_table(format!("C{n}"), n, table, labels)
    }

    /// Symmetries of a regular `n`-gon, order `2n`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition("dihedral groups need n >= 2".into()));
        }
        if n == 2 {
            let mut g = FiniteGroup::direct_product(&FiniteGroup::cyclic(2)?, &FiniteGroup::cyclic(2)?)?;
            g.name = "D2".into();
            return Ok(g);
        }
        let rotation: Vec<u8> = (0..n).map(|i| ((i + 1) % n) as u8).collect();
        let reflection: Vec<u8> = (0..n).map(|i| ((n - i) % n) as u8).collect();
        FiniteGroup::from_permutations(format!("D{n}"), n, &[rotation, reflection])
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if !(1..=5).contains(&n) {
            return Err(Error::Precondition("symmetric groups are built for n <= 5".into()));
        }
        if n == 1 {
            return FiniteGroup::from_permutations("S1", 1, &[]);
        }
        let cycle: Vec<u8> = (0..n).map(|i| ((i + 1) % n) as u8).collect();
        let mut swap: Vec<u8> = (0..n as u8).collect();
        swap.swap(0, 1);
        FiniteGroup::from_permutations(format!("S{n}"), n, &[swap, cycle])
    }

    pub fn alternating(n: usize) -> Result<Self> {
        if !(3..=5).contains(&n) {
            return Err(Error::Precondition("alternating groups are built for 3 <= n <= 5".into()));
        }
        let gens: Vec<Vec<u8>> = (2..n)
            .map(|k| {
                let mut p: Vec<u8> = (0..n as u8).collect();
                p[0] = 1;
                p[1] = k as u8;
                p[k] = 0;
                p
            })
            .collect();
        FiniteGroup::from_permutations(format!("A{n}"), n, &gens)
    }

    pub fn klein_four() -> Result<Self> {
        let mut g = FiniteGroup::from_permutations("V4", 4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]])?;
        g.name = "V4".into();
        Ok(g)
    }

    /// Quaternion group, as permutations of its regular representation.
    pub fn quaternion() -> Result<Self> {
        // Points: 1, i, j, k, -1, -i, -j, -k; right multiplication by i and j.
        let i = vec![1, 4, 7, 2, 5, 0, 3, 6];
        let j = vec![2, 3, 4, 5, 6, 7, 0, 1];
        FiniteGroup::from_permutations("Q8", 8, &[i, j])
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let (na, nb) = (a.order, b.order);
        let n = na.checked_mul(nb).filter(|&n| n <= MAX_ORDER).ok_or(Error::CapacityExceeded { limit: MAX_ORDER })?;
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                table[x * n + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32;
            }
        }
        let labels =
            (0..n).map(|x| format!("({},{})", a.labels[x / nb], b.labels[x % nb])).collect();
        FiniteGroup::from_table(format!("{}x{}", a.name, b.name), n, table, labels)
    }

    /// `base^k ⋊ C_k`, the generator of `C_k` rotating coordinates. Returns
    /// the group with the base split as coordinate 0 against coordinates
    /// `1..k`.
    pub fn wreath_product(k: usize, base: &FiniteGroup) -> Result<WreathProduct> {
        if k == 0 {
            return Err(Error::Precondition("top group must be nontrivial".into()));
        }
        let m = base.order;
        let base_size = (0..k)
            .try_fold(1usize, |acc, _| acc.checked_mul(m))
            .filter(|&s| s.checked_mul(k).is_some_and(|n| n <= MAX_ORDER))
            .ok_or(Error::CapacityExceeded { limit: MAX_ORDER })?;
        let n = base_size * k;
        // Element (f, s) encoded as s * base_size + sum f_i m^i.
        let decode = |x: usize| -> (Vec<usize>, usize) {
            let s = x / base_size;
            let mut r = x % base_size;
            let f = (0..k)
                .map(|_| {
                    let v = r % m;
                    r /= m;
                    v
                })
                .collect();
            (f, s)
        };
        let encode = |f: &[usize], s: usize| -> usize {
            s * base_size + f.iter().rev().fold(0usize, |acc, &v| acc * m + v)
        };
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            let (f, s) = decode(x);
            for y in 0..n {
                let (g, t) = decode(y);
                // (f, s)(g, t) = (f * (g rotated by s), s + t)
                let h: Vec<usize> = (0..k).map(|i| base.mul(f[i], g[(i + k - s) % k])).collect();
                table[x * n + y] = encode(&h, (s + t) % k) as u32;
            }
        }
        let labels = (0..n)
            .map(|x| {
                let (f, s) = decode(x);
                let parts: Vec<&str> = f.iter().map(|&v| base.labels[v].as_str()).collect();
                format!("[{}; r^{s}]", parts.join(","))
            })
            .collect();
        let group = FiniteGroup::from_table(format!("{}wrC{k}", base.name), n, table, labels)?;
        let mut first = Vec::new();
        let mut rest = Vec::new();
        for x in 0..base_size {
            let (f, _) = decode(x);
            if f[1..].iter().all(|&v| v == 0) {
                first.push(x);
            }
            if f[0] == 0 {
                rest.push(x);
            }
        }
        Ok(WreathProduct { group, first_factor: first, second_factor: rest })
    }

    /// Parses `C6`, `C-6`, `D4`, `S3`, `A4`, `V4`, `Q8`, products `C2xS3`
    /// and wreath products `C3wrC2` (base `C3`, top `C2`).
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some((base, top)) = spec.split_once("wr") {
            let k = match FiniteGroup::from_spec(top)? {
                t if t.name.starts_with('C') => t.order,
                _ => return Err(Error::UnknownSymbol(format!("top group `{top}` must be cyclic"))),
            };
            return Ok(FiniteGroup::wreath_product(k, &FiniteGroup::from_spec(base)?)?.group);
        }
        if spec.contains('x') {
            let mut parts = spec.split('x');
            let mut g = FiniteGroup::from_spec(parts.next().unwrap_or(""))?;
            for p in parts {
                g = FiniteGroup::direct_product(&g, &FiniteGroup::from_spec(p)?)?;
            }
            return Ok(g);
        }
        let (family, rest) = spec.split_at(spec.chars().next().map(char::len_utf8).unwrap_or(0));
        let n: usize = rest
            .trim_start_matches('-')
            .parse()
            .map_err(|_| Error::UnknownSymbol(format!("group `{spec}`")))?;
        match family {
            "C" => FiniteGroup::cyclic(n),
            "D" => FiniteGroup::dihedral(n),
            "S" => FiniteGroup::symmetric(n),
            "A" => FiniteGroup::alternating(n),
            "V" if n == 4 => FiniteGroup::klein_four(),
            "Q" if n == 8 => FiniteGroup::quaternion(),
            _ => Err(Error::UnknownSymbol(format!("group `{spec}`"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() % self.element_order(a) as u64 {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Element with the given permutation, for permutation groups.
    pub fn find_permutation(&self, perm: &[u8]) -> Option<usize> {
        self.perms.as_ref()?.iter().position(|p| p == perm)
    }

    pub fn center(&self) -> Vec<usize> {
        self.elements().filter(|&z| self.elements().all(|x| self.mul(x, z) == self.mul(z, x))).collect()
    }

    pub fn is_normal_subgroup(&self, n: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in n {
            if x >= self.order {
                return false;
            }
            member[x] = true;
        }
        member[0]
            && n.iter().all(|&a| n.iter().all(|&b| member[self.mul(a, b)]))
            && n.iter().all(|&a| self.elements().all(|g| member[self.mul(self.mul(self.inv(g), a), g)]))
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// Cycle notation with 1-based points, `e` for the identity.
pub fn cycle_notation(perm: &[u8]) -> String {
    let sep = if perm.len() > 9 { " " } else { "" };
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push((i + 1).to_string());
            i = perm[i] as usize;
        }
        out.push('(');
        out.push_str(&cycle.join(sep));
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

/// A wreath product with its base split into two commuting factors.
#[derive(Debug, Clone)]
pub struct WreathProduct {
    pub group: FiniteGroup,
    pub first_factor: Vec<usize>,
    pub second_factor: Vec<usize>,
}

/// A finite group with named constants, the ambient group for mixed words.
#[derive(Debug, Clone)]
pub struct GroupWithConstants {
    pub group: FiniteGroup,
    pub constants: BTreeMap<String, usize>,
}

impl GroupWithConstants {
    pub fn new(group: FiniteGroup) -> Self {
        GroupWithConstants { group, constants: BTreeMap::new() }
    }

    pub fn with(mut self, name: &str, element: usize) -> Result<Self> {
        if element >= self.group.order() {
            return Err(Error::Precondition(format!("constant `{name}` is not an element")));
        }
        if name.starts_with('x') {
            return Err(Error::Precondition("constant names may not start with `x`".into()));
        }
        self.constants.insert(name.to_string(), element);
        Ok(self)
    }

    pub fn parse_word(&self, text: &str) -> Result<MixedWord<usize>> {
        MixedWord::parse(self, text)
    }
}

impl Interpret for GroupWithConstants {
    type Value = usize;

    fn identity(&self) -> usize {
        0
    }

    fn symbol(&self, name: char, index: Option<i64>) -> Result<usize> {
        let key = match index {
            Some(i) => format!("{name}{i}"),
            None => name.to_string(),
        };
        if key == "e" {
            return Ok(0);
        }
        self.constants.get(&key).copied().ok_or(Error::UnknownSymbol(key))
    }

    fn cycle(&self, points: &[u32]) -> Result<usize> {
        let perms = self
            .group
            .perms
            .as_ref()
            .ok_or_else(|| Error::UnknownSymbol(format!("{} is not a permutation group", self.group.name)))?;
        let degree = perms[0].len();
        let mut perm: Vec<u8> = (0..degree as u8).collect();
        for (k, &pt) in points.iter().enumerate() {
            let next = points[(k + 1) % points.len()];
            if pt as usize > degree || next as usize > degree || points[..k].contains(&pt) {
                return Err(Error::Precondition(format!("cycle entry {pt} is invalid for degree {degree}")));
            }
            perm[pt as usize - 1] = next as u8 - 1;
        }
        self.group
            .find_permutation(&perm)
            .ok_or_else(|| Error::Precondition(format!("{} does not lie in {}", cycle_notation(&perm), self.group.name)))
    }

    fn mul(&self, a: &usize, b: &usize) -> Result<usize> {
        Ok(self.group.mul(*a, *b))
    }

    fn inv(&self, a: &usize) -> Result<usize> {
        Ok(self.group.inv(*a))
    }

    fn pow(&self, a: &usize, k: i64) -> Result<usize> {
        Ok(self.group.pow(*a, k))
    }
}

impl Ambient for GroupWithConstants {
    fn is_trivial(&self, v: &usize) -> Result<bool> {
        Ok(*v == 0)
    }

    fn canonical(&self, v: &usize) -> Result<usize> {
        Ok(*v)
    }

    fn format(&self, v: &usize) -> String {
        if let Some((name, _)) = self.constants.iter().find(|(_, &e)| e == *v) {
            return name.clone();
        }
        match &self.group.perms {
            Some(p) if *v != 0 => cycle_notation(&p[*v]),
            _ if *v == 0 => "1".into(),
            _ => format!("<{}>", self.group.label(*v)),
        }
    }
}

/// Outcome of an exhaustive mixed-identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub word: String,
    pub group: String,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<BTreeMap<String, String>>,
    pub substitutions_checked: u64,
}

/// Checks `w = 1` under every assignment of the variables of `w`.
///
/// Assignments are ordered lexicographically by (variable id, element
/// index); a failing verdict carries the first failing assignment.
pub fn is_mixed_identity(w: &MixedWord<usize>, g: &GroupWithConstants) -> Result<Verdict> {
    let vars = w.variables();
    let n = g.group.order() as u64;
    let total = match vars.len() {
        0 => 1,
        1 if n <= SINGLE_VARIABLE_BUDGET => n,
        1 => return Err(Error::Budget(format!("|G| = {n} exceeds {SINGLE_VARIABLE_BUDGET}"))),
        k => n
            .checked_pow(k as u32)
            .filter(|&t| t <= MULTI_VARIABLE_BUDGET)
            .ok_or_else(|| Error::Budget(format!("|G|^{k} exceeds {MULTI_VARIABLE_BUDGET}")))?,
    };
    let assignment = |mut idx: u64| -> Vec<usize> {
        let mut out = vec![0; vars.len()];
        for slot in out.iter_mut().rev() {
            *slot = (idx % n) as usize;
            idx /= n;
        }
        out
    };
    let fails = |idx: u64| -> Result<bool> {
        let values = assignment(idx);
        let v = w.evaluate_with(g, |id| vars.iter().position(|&x| x == id).map(|k| values[k]))?;
        Ok(v != 0)
    };
    let first = (0..total)
        .into_par_iter()
        .map(|idx| fails(idx).map(|f| f.then_some(idx)))
        .find_first(|r| !matches!(r, Ok(None)));
    let first = match first {
        Some(r) => r?,
        None => None,
    };
    let name = |id: u32| if id == 1 { "x".to_string() } else { format!("x{id}") };
    Ok(Verdict {
        word: w.to_text(g),
        group: g.group.name().to_string(),
        verdict: first.is_none(),
        counterexample: first.map(|idx| {
            vars.iter()
                .zip(assignment(idx))
                .map(|(&id, e)| (name(id), g.format(&e)))
                .collect()
        }),
        substitutions_checked: first.map(|i| i + 1).unwrap_or(total),
    })
}

/// Result of checking `[x^{n!}, g] = 1` over a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorialReport {
    pub group: String,
    pub subgroup_order: usize,
    pub holds: bool,
    pub counterexample: Option<String>,
    pub substitutions_checked: u64,
}

/// Checks `[x^{n!}, g] = 1` for every `x`, where `N` is a normal subgroup of
/// order `n` and `g` a nontrivial element of `N`.
pub fn factorial_identity_check(group: &FiniteGroup, normal: &[usize], g: usize) -> Result<FactorialReport> {
    let mut n_set = normal.to_vec();
    n_set.sort_unstable();
    n_set.dedup();
    if !group.is_normal_subgroup(&n_set) {
        return Err(Error::Precondition("N is not a normal subgroup".into()));
    }
    if g == 0 {
        return Err(Error::Precondition("g must be nontrivial".into()));
    }
    if !n_set.contains(&g) {
        return Err(Error::Precondition("g must lie in N".into()));
    }
    let n = n_set.len() as u64;
    let counterexample = group.elements().find(|&x| {
        let ord = group.element_order(x) as u64;
        let exp = (1..=n).fold(1u64 % ord, |acc, k| acc * (k % ord) % ord);
        group.commutator(group.pow(x, exp as i64), g) != 0
    });
    Ok(FactorialReport {
        group: group.name().to_string(),
        subgroup_order: n_set.len(),
        holds: counterexample.is_none(),
        counterexample: counterexample.map(|x| group.label(x).to_string()),
        substitutions_checked: counterexample.map(|x| x as u64 + 1).unwrap_or(group.order() as u64),
    })
}

/// Aggregate verdict of a canned identity over every admissible choice of
/// constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CannedReport {
    pub identity: String,
    pub group: String,
    pub group_order: usize,
    pub verdict: bool,
    pub constant_choices: u64,
    pub substitutions_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Verdict>,
}

fn canned(identity: &str, group: FiniteGroup, choices: Vec<Vec<(&str, usize)>>) -> Result<CannedReport> {
    let mut report = CannedReport {
        identity: identity.to_string(),
        group: group.name().to_string(),
        group_order: group.order(),
        verdict: true,
        constant_choices: 0,
        substitutions_checked: 0,
        failure: None,
    };
    let mut ambient = GroupWithConstants::new(group);
    for choice in choices {
        for (name, e) in choice {
            ambient = ambient.with(name, e)?;
        }
        let v = is_mixed_identity(&ambient.parse_word(identity)?, &ambient)?;
        report.constant_choices += 1;
        report.substitutions_checked += v.substitutions_checked;
        if !v.verdict {
            report.verdict = false;
            report.failure = Some(v);
            break;
        }
    }
    Ok(report)
}

/// `[[x,a],b] = 1` on `A x B` for every nontrivial `a` in `A` and `b` in `B`.
pub fn check_direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<CannedReport> {
    if a.order() < 2 || b.order() < 2 {
        return Err(Error::Precondition("both factors must be nontrivial".into()));
    }
    let g = FiniteGroup::direct_product(a, b)?;
    let nb = b.order();
    let choices = (1..a.order())
        .flat_map(|x| (1..nb).map(move |y| vec![("a", x * nb), ("b", y)]))
        .collect();
    canned("[[x,a],b]", g, choices)
}

/// `[[[x,a],a],b] = 1` on `base wr C_k` for every nontrivial `a` in the
/// first base coordinate and `b` in the others.
pub fn check_wreath(k: usize, base: &FiniteGroup) -> Result<CannedReport> {
    if k < 2 || base.order() < 2 {
        return Err(Error::Precondition("both groups must be nontrivial".into()));
    }
    let w = FiniteGroup::wreath_product(k, base)?;
    let choices = w.first_factor[1..]
        .iter()
        .flat_map(|&a| w.second_factor[1..].iter().map(move |&b| vec![("a", a), ("b", b)]))
        .collect();
    canned("[[[x,a],a],b]", w.group, choices)
}

/// Closure of `gens` under multiplication.
pub fn subgroup_closure(group: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut member = vec![false; group.order()];
    member[0] = true;
    let mut out = vec![0];
    let mut head = 0;
    while head < out.len() {
        let x = out[head];
        head += 1;
        for &g in gens {
            let y = group.mul(x, g);
            if !member[y] {
                member[y] = true;
                out.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// [`factorial_identity_check`] for every nontrivial `g` in `N`.
pub fn check_factorial(group: &FiniteGroup, normal: &[usize]) -> Result<Vec<FactorialReport>> {
    normal.iter().filter(|&&g| g != 0).map(|&g| factorial_identity_check(group, normal, g)).collect()
}

/// Small groups used as fixtures.
pub fn catalog() -> Result<Vec<FiniteGroup>> {
    Ok(vec![
        FiniteGroup::cyclic(2)?,
        FiniteGroup::cyclic(3)?,
        FiniteGroup::cyclic(4)?,
        FiniteGroup::cyclic(5)?,
        FiniteGroup::klein_four()?,
        FiniteGroup::symmetric(3)?,
        FiniteGroup::dihedral(4)?,
        FiniteGroup::quaternion()?,
        FiniteGroup::alternating(4)?,
        FiniteGroup::dihedral(5)?,
        FiniteGroup::symmetric(4)?,
    ])
}
