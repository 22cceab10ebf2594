//! Reduced words in the free product `G * F_n` of an ambient group with a
//! free group on variables `x_1, x_2, ...`.
//!
//! A word is a sequence of syllables, each either a nontrivial constant of
//! `G` or a nonzero power of a variable, with no two adjacent syllables that
//! could be merged. Single-variable words use variable 1, written `x`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::limit_group::{GElement, LimitGroup};
use crate::syntax::{self, Interpret};

/// A group that can host the constants of a mixed word.
pub trait Ambient: Interpret {
    fn is_trivial(&self, v: &Self::Value) -> Result<bool>;

    /// A representative that depends only on the element.
    fn canonical(&self, v: &Self::Value) -> Result<Self::Value>;

    /// Text that [`Interpret`] parses back to the same element.
    fn format(&self, v: &Self::Value) -> String;
}

impl Ambient for LimitGroup {
    fn is_trivial(&self, v: &GElement) -> Result<bool> {
        LimitGroup::is_trivial(self, v)
    }

    fn canonical(&self, v: &GElement) -> Result<GElement> {
        LimitGroup::canonical(self, v)
    }

    fn format(&self, v: &GElement) -> String {
        v.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Syllable<E> {
    Const(E),
    Var { id: u32, exp: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedWord<E> {
    syllables: Vec<Syllable<E>>,
}

impl<E: Clone> MixedWord<E> {
    pub fn empty() -> Self {
        MixedWord { syllables: Vec::new() }
    }

    pub fn x() -> Self {
        MixedWord { syllables: vec![Syllable::Var { id: 1, exp: 1 }] }
    }

    pub fn syllables(&self) -> &[Syllable<E>] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    /// Distinct variable ids, ascending.
    pub fn variables(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self
            .syllables
            .iter()
            .filter_map(|s| match s {
                Syllable::Var { id, .. } => Some(*id),
                Syllable::Const(_) => None,
            })
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    pub fn variable_count(&self) -> usize {
        self.variables().len()
    }

    /// Sum of `|exp|` over variable syllables.
    pub fn variable_length(&self) -> u64 {
        self.syllables
            .iter()
            .map(|s| match s {
                Syllable::Var { exp, .. } => exp.unsigned_abs(),
                Syllable::Const(_) => 0,
            })
            .sum()
    }

    /// Reduces a raw syllable sequence.
    pub fn reduce<A: Ambient<Value = E>>(ambient: &A, raw: Vec<Syllable<E>>) -> Result<Self> {
        let mut stack: Vec<Syllable<E>> = Vec::with_capacity(raw.len());
        for s in raw {
            let mut s = s;
            loop {
                if is_unit(ambient, &s)? {
                    break;
                }
                let merged = match (stack.last(), &s) {
                    (Some(Syllable::Const(a)), Syllable::Const(b)) => Syllable::Const(ambient.mul(a, b)?),
                    (Some(Syllable::Var { id: i, exp: e }), Syllable::Var { id: j, exp: f }) if i == j => {
                        Syllable::Var { id: *i, exp: e.checked_add(*f).ok_or(Error::Overflow)? }
                    }
                    _ => {
                        stack.push(s);
                        break;
                    }
                };
                stack.pop();
                s = merged;
            }
        }
        let syllables = stack
            .into_iter()
            .map(|s| match s {
                Syllable::Const(c) => ambient.canonical(&c).map(Syllable::Const),
                v => Ok(v),
            })
            .collect::<Result<_>>()?;
        Ok(MixedWord { syllables })
    }

    pub fn parse<A: Ambient<Value = E>>(ambient: &A, text: &str) -> Result<Self> {
        let raw = syntax::parse(text)?.eval(&FreeProduct(ambient))?;
        MixedWord::reduce(ambient, raw)
    }

    pub fn to_text<A: Ambient<Value = E>>(&self, ambient: &A) -> String {
        if self.syllables.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|s| match s {
                Syllable::Const(c) => ambient.format(c),
                Syllable::Var { id, exp } => {
                    let name = if *id == 1 { "x".to_string() } else { format!("x{id}") };
                    if *exp == 1 { name } else { format!("{name}^{exp}") }
                }
            })
            .collect();
        parts.join(" ")
    }

    /// Image under the homomorphism fixing `G` with `x_i -> assignment(i)`.
    pub fn evaluate_with<A, F>(&self, ambient: &A, assignment: F) -> Result<E>
    where
        A: Ambient<Value = E>,
        F: Fn(u32) -> Option<E>,
    {
        let mut acc = ambient.identity();
        for s in &self.syllables {
            let factor = match s {
                Syllable::Const(c) => c.clone(),
                Syllable::Var { id, exp } => {
                    let v = assignment(*id)
                        .ok_or_else(|| Error::Precondition(format!("no value for variable {id}")))?;
                    ambient.pow(&v, *exp)?
                }
            };
            acc = ambient.mul(&acc, &factor)?;
        }
        Ok(acc)
    }

    pub fn evaluate<A: Ambient<Value = E>>(&self, ambient: &A, assignment: &BTreeMap<u32, E>) -> Result<E> {
        self.evaluate_with(ambient, |id| assignment.get(&id).cloned())
    }

    /// Evaluation of a single-variable word at `x -> g`.
    pub fn evaluate_at<A: Ambient<Value = E>>(&self, ambient: &A, g: &E) -> Result<E> {
        self.evaluate_with(ambient, |id| (id == 1).then(|| g.clone()))
    }

    /// Substitutes `x_i -> x^i g x^i`; the result is a word in `x` alone.
    pub fn iota_embed<A: Ambient<Value = E>>(&self, ambient: &A, g: &E) -> Result<Self> {
        if ambient.is_trivial(g)? {
            return Err(Error::Precondition("embedding constant must be nontrivial".into()));
        }
        let g_inv = ambient.inv(g)?;
        let mut raw = Vec::new();
        for s in &self.syllables {
            match s {
                Syllable::Const(c) => raw.push(Syllable::Const(c.clone())),
                Syllable::Var { id, exp } => {
                    let i = *id as i64;
                    let (step, c) = if *exp > 0 { (i, g) } else { (-i, &g_inv) };
                    for _ in 0..exp.unsigned_abs() {
                        raw.push(Syllable::Var { id: 1, exp: step });
                        raw.push(Syllable::Const(c.clone()));
                        raw.push(Syllable::Var { id: 1, exp: step });
                    }
                }
            }
        }
        MixedWord::reduce(ambient, raw)
    }

    /// Substitutes `x -> [x, n] = x^-1 n^-1 x n` in a single-variable word.
    pub fn sub_commutator<A: Ambient<Value = E>>(&self, ambient: &A, n: &E) -> Result<Self> {
        if ambient.is_trivial(n)? {
            return Err(Error::Precondition("commutator constant must be nontrivial".into()));
        }
        if self.variables().iter().any(|&id| id != 1) {
            return Err(Error::Precondition("expected a word in the single variable x".into()));
        }
        let n_inv = ambient.inv(n)?;
        let var = |exp| Syllable::Var { id: 1, exp };
        let mut raw = Vec::new();
        for s in &self.syllables {
            match s {
                Syllable::Const(c) => raw.push(Syllable::Const(c.clone())),
                Syllable::Var { exp, .. } => {
                    for _ in 0..exp.unsigned_abs() {
                        if *exp > 0 {
                            raw.extend([var(-1), Syllable::Const(n_inv.clone()), var(1), Syllable::Const(n.clone())]);
                        } else {
                            raw.extend([Syllable::Const(n_inv.clone()), var(-1), Syllable::Const(n.clone()), var(1)]);
                        }
                    }
                }
            }
        }
        MixedWord::reduce(ambient, raw)
    }

    /// Raw concatenation followed by reduction.
    pub fn concat<A: Ambient<Value = E>>(&self, ambient: &A, other: &Self) -> Result<Self> {
        let raw = self.syllables.iter().chain(&other.syllables).cloned().collect();
        MixedWord::reduce(ambient, raw)
    }

    pub fn inverse<A: Ambient<Value = E>>(&self, ambient: &A) -> Result<Self> {
        MixedWord::reduce(ambient, invert_raw(ambient, &self.syllables)?)
    }

    pub fn from_syllables_unchecked(syllables: Vec<Syllable<E>>) -> Self {
        MixedWord { syllables }
    }
}

fn is_unit<A: Ambient>(ambient: &A, s: &Syllable<A::Value>) -> Result<bool> {
    match s {
        Syllable::Const(c) => ambient.is_trivial(c),
        Syllable::Var { exp, .. } => Ok(*exp == 0),
    }
}

fn invert_raw<A: Ambient>(ambient: &A, w: &[Syllable<A::Value>]) -> Result<Vec<Syllable<A::Value>>> {
    w.iter()
        .rev()
        .map(|s| match s {
            Syllable::Const(c) => ambient.inv(c).map(Syllable::Const),
            Syllable::Var { id, exp } => Ok(Syllable::Var { id: *id, exp: -exp }),
        })
        .collect()
}

/// Parses into raw syllable lists: `x` and `x<int>` are variables, every
/// other symbol is handed to the ambient group.
struct FreeProduct<'a, A>(&'a A);

impl<A: Ambient> Interpret for FreeProduct<'_, A> {
    type Value = Vec<Syllable<A::Value>>;

    fn identity(&self) -> Self::Value {
        Vec::new()
    }

    fn symbol(&self, name: char, index: Option<i64>) -> Result<Self::Value> {
        if name == 'x' {
            let id = match index {
                None => 1,
                Some(i) if i >= 1 && i <= u32::MAX as i64 => i as u32,
                Some(i) => return Err(Error::UnknownSymbol(format!("x{i}"))),
            };
            return Ok(vec![Syllable::Var { id, exp: 1 }]);
        }
        Ok(vec![Syllable::Const(self.0.symbol(name, index)?)])
    }

    fn cycle(&self, points: &[u32]) -> Result<Self::Value> {
        Ok(vec![Syllable::Const(self.0.cycle(points)?)])
    }

    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value> {
        Ok(a.iter().chain(b).cloned().collect())
    }

    fn inv(&self, a: &Self::Value) -> Result<Self::Value> {
        invert_raw(self.0, a)
    }

    fn pow(&self, a: &Self::Value, k: i64) -> Result<Self::Value> {
        if let [Syllable::Var { id, exp }] = a.as_slice() {
            let exp = exp.checked_mul(k).ok_or(Error::Overflow)?;
            return Ok(vec![Syllable::Var { id: *id, exp }]);
        }
        let base = if k < 0 { self.inv(a)? } else { a.clone() };
        Ok(base.iter().cloned().cycle().take(base.len() * k.unsigned_abs() as usize).collect())
    }
}
