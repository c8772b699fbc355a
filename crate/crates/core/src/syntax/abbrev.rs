//! Defined notions, expanded eagerly into the seven core connectives.

use thiserror::Error;

use super::free::{fresh, FreeVars};
use super::subst::subst_fo;
use super::{ctor, Formula, Name, SetTerm};

/// `∀z. (z ∈ t → z ∈ u) ∧ (z ∈ u → z ∈ t)` with `z` fresh.
pub fn eq(t: &SetTerm, u: &SetTerm) -> Formula {
    let mut used = t.free_fo();
    used.extend(u.free_fo());
    let z = fresh("z", used.iter());
    let zv = SetTerm::var(z.clone());
    Formula::forall(
        z,
        iff(Formula::member(zv.clone(), t.clone()), Formula::member(zv, u.clone())),
    )
}

/// `(φ → ψ) ∧ (ψ → φ)`
pub fn iff(phi: Formula, psi: Formula) -> Formula {
    Formula::and(Formula::implies(phi.clone(), psi.clone()), Formula::implies(psi, phi))
}

/// `φ → ⊥`
pub fn not(phi: Formula) -> Formula {
    Formula::implies(phi, Formula::Bottom)
}

/// `∃y. φ ∧ ∀e. φ[y:=e] → e = y` with `e` fresh.
pub fn exists_unique(y: &str, phi: Formula) -> Formula {
    let mut used = phi.free_fo();
    used.insert(y.to_string());
    let e = fresh("e", used.iter());
    let ev = SetTerm::var(e.clone());
    let other = subst_fo(&phi, y, &ev);
    Formula::exists(
        y,
        Formula::and(
            phi,
            Formula::forall(e, Formula::implies(other, eq(&ev, &SetTerm::var(y)))),
        ),
    )
}

/// `∀x. x ∈ a → φ`
pub fn bounded_forall(x: &str, set: SetTerm, phi: Formula) -> Formula {
    Formula::forall(x, Formula::implies(Formula::member(SetTerm::var(x), set), phi))
}

/// `∃x. x ∈ a ∧ φ`
pub fn bounded_exists(x: &str, set: SetTerm, phi: Formula) -> Formula {
    Formula::exists(x, Formula::and(Formula::member(SetTerm::var(x), set), phi))
}

/// `∪{t, {t, t}}`
pub fn succ(t: SetTerm) -> SetTerm {
    SetTerm::union(SetTerm::pair(t.clone(), SetTerm::pair(t.clone(), t)))
}

/// The von Neumann numeral `S(…S(∅))`.
pub fn numeral(n: usize) -> SetTerm {
    (0..n).fold(SetTerm::empty(), |acc, _| succ(acc))
}

/// Recognise the expanded form of `t = u` produced by [`eq`].
pub fn is_eq(phi: &Formula) -> Option<(&SetTerm, &SetTerm)> {
    let Formula::Forall(z, body) = phi else { return None };
    let Formula::And(fwd, bwd) = &**body else { return None };
    let (Formula::Implies(a1, b1), Formula::Implies(a2, b2)) = (&**fwd, &**bwd) else {
        return None;
    };
    let (Formula::Member(z1, t), Formula::Member(z2, u)) = (&**a1, &**b1) else { return None };
    let (Formula::Member(z3, u2), Formula::Member(z4, t2)) = (&**a2, &**b2) else {
        return None;
    };
    let is_z = |s: &SetTerm| s.as_var() == Some(z.as_str());
    if [z1, z2, z3, z4].into_iter().all(is_z)
        && u == u2
        && t == t2
        && !t.is_fo_free(z)
        && !u.is_fo_free(z)
    {
        Some((t, u))
    } else {
        None
    }
}

/// Recognise `∪{t, {t, t}}`.
pub fn is_succ(t: &SetTerm) -> Option<&SetTerm> {
    let inst = t.as_ctor().filter(|i| i.name == ctor::UNION && i.params.is_empty())?;
    let [pair] = inst.args.as_slice() else { return None };
    let outer = pair.as_ctor().filter(|i| i.name == ctor::PAIR && i.params.is_empty())?;
    let [pred, inner] = outer.args.as_slice() else { return None };
    let inner = inner.as_ctor().filter(|i| i.name == ctor::PAIR && i.params.is_empty())?;
    match inner.args.as_slice() {
        [x, y] if x == pred && y == pred => Some(pred),
        _ => None,
    }
}

/// The value `n` if `t` is literally `numeral(n)`.
pub fn numeral_value(t: &SetTerm) -> Option<usize> {
    let mut n = 0;
    let mut cur = t;
    loop {
        if let Some(pred) = is_succ(cur) {
            n += 1;
            cur = pred;
        } else if matches!(cur.as_ctor(), Some(i) if i.name == ctor::EMPTY && i.args.is_empty() && i.params.is_empty())
        {
            return Some(n);
        } else {
            return None;
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AbbreviationError {
    #[error("{kind} expects {expected}")]
    Arity { kind: &'static str, expected: &'static str },
    #[error("numeral argument must be non-negative, got {0}")]
    NegativeNumeral(i64),
}

/// Arguments to [`Abbreviation::build`].
#[derive(Clone, Debug)]
pub enum Arg {
    Term(SetTerm),
    Formula(Formula),
    Var(Name),
    Int(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Abbreviation {
    Eq,
    Iff,
    Not,
    ExistsUnique,
    BoundedForall,
    BoundedExists,
    Numeral,
    Succ,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Built {
    Formula(Formula),
    Term(SetTerm),
}

impl Abbreviation {
    fn name(self) -> &'static str {
        match self {
            Abbreviation::Eq => "eq",
            Abbreviation::Iff => "iff",
            Abbreviation::Not => "not",
            Abbreviation::ExistsUnique => "exists-unique",
            Abbreviation::BoundedForall => "bounded-forall",
            Abbreviation::BoundedExists => "bounded-exists",
            Abbreviation::Numeral => "numeral",
            Abbreviation::Succ => "succ",
        }
    }

    /// Expand the abbreviation applied to `args`.
    pub fn build(self, args: Vec<Arg>) -> Result<Built, AbbreviationError> {
        use Abbreviation::*;
        let arity = |expected| AbbreviationError::Arity { kind: self.name(), expected };
        let mut it = args.into_iter();
        let built = match (self, it.next(), it.next(), it.next(), it.next()) {
            (Eq, Some(Arg::Term(t)), Some(Arg::Term(u)), None, None) => Built::Formula(eq(&t, &u)),
            (Eq, ..) => return Err(arity("two terms")),
            (Iff, Some(Arg::Formula(p)), Some(Arg::Formula(q)), None, None) => {
                Built::Formula(iff(p, q))
            }
            (Iff, ..) => return Err(arity("two formulas")),
            (Not, Some(Arg::Formula(p)), None, None, None) => Built::Formula(not(p)),
            (Not, ..) => return Err(arity("one formula")),
            (ExistsUnique, Some(Arg::Var(y)), Some(Arg::Formula(p)), None, None) => {
                Built::Formula(exists_unique(&y, p))
            }
            (ExistsUnique, ..) => return Err(arity("a variable and a formula")),
            (BoundedForall, Some(Arg::Var(x)), Some(Arg::Term(a)), Some(Arg::Formula(p)), None) => {
                Built::Formula(bounded_forall(&x, a, p))
            }
            (BoundedForall, ..) => return Err(arity("a variable, a term and a formula")),
            (BoundedExists, Some(Arg::Var(x)), Some(Arg::Term(a)), Some(Arg::Formula(p)), None) => {
                Built::Formula(bounded_exists(&x, a, p))
            }
            (BoundedExists, ..) => return Err(arity("a variable, a term and a formula")),
            (Numeral, Some(Arg::Int(n)), None, None, None) => {
                let n = usize::try_from(n).map_err(|_| AbbreviationError::NegativeNumeral(n))?;
                Built::Term(numeral(n))
            }
            (Numeral, ..) => return Err(arity("one integer")),
            (Succ, Some(Arg::Term(t)), None, None, None) => Built::Term(succ(t)),
            (Succ, ..) => return Err(arity("one term")),
        };
        Ok(built)
    }
}
