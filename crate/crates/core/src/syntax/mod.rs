//! Abstract syntax of set terms, formulas and proof terms.
//!
//! Binders are named. Terms are compared up to renaming of bound variables with
//! [`alpha_equal`], and every substitution renames binders that would capture a
//! free variable of the replacement.

mod abbrev;
mod alpha;
mod free;
mod subst;

pub use abbrev::{
    bounded_exists, bounded_forall, eq, exists_unique, iff, is_eq, is_succ, not, numeral,
    numeral_value, succ, Abbreviation, AbbreviationError, Arg, Built,
};
pub use alpha::{alpha_equal, alpha_hash, AlphaEq};
pub use free::{fresh, FreeVars, Vars};
pub use subst::{subst_fo, subst_fo_many, subst_proof, Subst};

use std::collections::BTreeSet;

/// Variable names. First-order and proof variables live in separate namespaces,
/// which is tracked by position rather than by type.
pub type Name = String;

/// Names of the constructors of the builtin theory.
pub mod ctor {
    pub const EMPTY: &str = "empty";
    pub const PAIR: &str = "pair";
    pub const OMEGA: &str = "omega";
    pub const UNION: &str = "union";
    pub const POWER: &str = "pow";
    pub const SEP: &str = "sep";
    pub const REPL: &str = "repl";
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SetTerm {
    Var(Name),
    /// Application of a theory constructor. Constants such as `empty` and
    /// `omega` are constructors with no arguments.
    Ctor(CtorInstance),
}

/// A constructor applied to its carried formulas and set-term arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CtorInstance {
    pub name: Name,
    pub params: Vec<FormulaParam>,
    pub args: Vec<SetTerm>,
}

/// A formula carried by a comprehension constructor, together with the
/// variables it binds (one for separation, two for replacement).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormulaParam {
    pub binders: Vec<Name>,
    pub body: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Bottom,
    Member(SetTerm, SetTerm),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(Name, Box<Formula>),
    Exists(Name, Box<Formula>),
}

/// The formula schema of an `ind` term: `body` with the induction variable
/// `var` and the parameters `params` bound.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndSchema {
    pub var: Name,
    pub params: Vec<Name>,
    pub body: Formula,
}

/// One arm of a `case`: `var : formula => body`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Branch {
    pub var: Name,
    pub formula: Formula,
    pub body: Box<ProofTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProofTerm {
    Var(Name),
    App(Box<ProofTerm>, Box<ProofTerm>),
    FoApp(Box<ProofTerm>, SetTerm),
    Lam(Name, Formula, Box<ProofTerm>),
    FoLam(Name, Box<ProofTerm>),
    Pair(Box<ProofTerm>, Box<ProofTerm>),
    Fst(Box<ProofTerm>),
    Snd(Box<ProofTerm>),
    Inl(Box<ProofTerm>),
    Inr(Box<ProofTerm>),
    Case(Box<ProofTerm>, Branch, Branch),
    Witness(SetTerm, Box<ProofTerm>),
    /// `let [fo, var : formula] := head in body`
    Let {
        fo: Name,
        var: Name,
        formula: Formula,
        head: Box<ProofTerm>,
        body: Box<ProofTerm>,
    },
    Magic(Box<ProofTerm>),
    /// `axRep(member, ctor, body)`: a proof of `member ∈ ctor`.
    AxRep(CtorInstance, SetTerm, Box<ProofTerm>),
    /// `axProp(member, ctor, body)`: the defining property of `member ∈ ctor`.
    AxProp(CtorInstance, SetTerm, Box<ProofTerm>),
    Ind(IndSchema, Vec<SetTerm>, Box<ProofTerm>),
    /// Checker directive; transparent to reduction.
    Ascribe(Box<ProofTerm>, Formula),
}

impl SetTerm {
    pub fn var(name: impl Into<Name>) -> Self {
        SetTerm::Var(name.into())
    }

    pub fn constant(name: impl Into<Name>) -> Self {
        SetTerm::Ctor(CtorInstance::new(name, vec![], vec![]))
    }

    pub fn ctor(name: impl Into<Name>, args: Vec<SetTerm>) -> Self {
        SetTerm::Ctor(CtorInstance::new(name, vec![], args))
    }

    pub fn empty() -> Self {
        Self::constant(ctor::EMPTY)
    }

    pub fn omega() -> Self {
        Self::constant(ctor::OMEGA)
    }

    pub fn pair(left: SetTerm, right: SetTerm) -> Self {
        Self::ctor(ctor::PAIR, vec![left, right])
    }

    pub fn union(set: SetTerm) -> Self {
        Self::ctor(ctor::UNION, vec![set])
    }

    pub fn power(set: SetTerm) -> Self {
        Self::ctor(ctor::POWER, vec![set])
    }

    /// `{ binder ∈ set | body }`
    pub fn sep(binder: impl Into<Name>, body: Formula, set: SetTerm) -> Self {
        SetTerm::Ctor(CtorInstance::new(
            ctor::SEP,
            vec![FormulaParam { binders: vec![binder.into()], body }],
            vec![set],
        ))
    }

    /// Replacement of `set` along the relation `body(x, y)`.
    pub fn repl(x: impl Into<Name>, y: impl Into<Name>, body: Formula, set: SetTerm) -> Self {
        SetTerm::Ctor(CtorInstance::new(
            ctor::REPL,
            vec![FormulaParam { binders: vec![x.into(), y.into()], body }],
            vec![set],
        ))
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            SetTerm::Var(name) => Some(name),
            SetTerm::Ctor(_) => None,
        }
    }

    pub fn as_ctor(&self) -> Option<&CtorInstance> {
        match self {
            SetTerm::Ctor(inst) => Some(inst),
            SetTerm::Var(_) => None,
        }
    }

    pub fn is_ctor_named(&self, name: &str) -> bool {
        matches!(self, SetTerm::Ctor(inst) if inst.name == name)
    }

    /// True when no constructor occurs anywhere in the term.
    pub fn is_term_free(&self) -> bool {
        matches!(self, SetTerm::Var(_))
    }
}

impl CtorInstance {
    pub fn new(name: impl Into<Name>, params: Vec<FormulaParam>, args: Vec<SetTerm>) -> Self {
        CtorInstance { name: name.into(), params, args }
    }

    pub fn to_term(&self) -> SetTerm {
        SetTerm::Ctor(self.clone())
    }
}

impl From<CtorInstance> for SetTerm {
    fn from(inst: CtorInstance) -> Self {
        SetTerm::Ctor(inst)
    }
}

impl Formula {
    pub fn member(elem: SetTerm, set: SetTerm) -> Self {
        Formula::Member(elem, set)
    }

    pub fn and(left: Formula, right: Formula) -> Self {
        Formula::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Formula, right: Formula) -> Self {
        Formula::Or(Box::new(left), Box::new(right))
    }

    pub fn implies(left: Formula, right: Formula) -> Self {
        Formula::Implies(Box::new(left), Box::new(right))
    }

    pub fn forall(var: impl Into<Name>, body: Formula) -> Self {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<Name>, body: Formula) -> Self {
        Formula::Exists(var.into(), Box::new(body))
    }

    /// Conjunction of a non-empty list, nested to the right.
    pub fn conjunction(mut parts: Vec<Formula>) -> Option<Formula> {
        let mut acc = parts.pop()?;
        while let Some(next) = parts.pop() {
            acc = Formula::and(next, acc);
        }
        Some(acc)
    }

    /// No constructor occurs in any atom.
    pub fn is_term_free(&self) -> bool {
        match self {
            Formula::Bottom => true,
            Formula::Member(l, r) => l.is_term_free() && r.is_term_free(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.is_term_free() && r.is_term_free()
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => b.is_term_free(),
        }
    }
}

impl IndSchema {
    pub fn new(var: impl Into<Name>, params: Vec<Name>, body: Formula) -> Self {
        IndSchema { var: var.into(), params, body }
    }

    /// `body[var := elem, params := args]`, simultaneously.
    pub fn instantiate(&self, elem: &SetTerm, args: &[SetTerm]) -> Formula {
        let mut pairs = vec![(self.var.clone(), elem.clone())];
        pairs.extend(self.params.iter().cloned().zip(args.iter().cloned()));
        subst_fo_many(&self.body, pairs)
    }

    fn reserved(&self, args: &[SetTerm]) -> BTreeSet<Name> {
        let mut used = self.free_fo();
        for a in args {
            used.extend(a.free_vars().fo);
        }
        used
    }

    /// `∀a. φ(a, t⃗)`
    pub fn conclusion(&self, args: &[SetTerm]) -> Formula {
        let a = fresh(&self.var, self.reserved(args).iter());
        let body = self.instantiate(&SetTerm::var(a.clone()), args);
        Formula::forall(a, body)
    }

    /// `∀c. (∀b. b ∈ c → φ(b, t⃗)) → φ(c, t⃗)`
    pub fn premise(&self, args: &[SetTerm]) -> Formula {
        let mut used = self.reserved(args);
        let c = fresh("c", used.iter());
        used.insert(c.clone());
        let b = fresh("b", used.iter());
        let (cv, bv) = (SetTerm::var(c.clone()), SetTerm::var(b.clone()));
        let hyp = Formula::forall(
            b,
            Formula::implies(Formula::member(bv.clone(), cv.clone()), self.instantiate(&bv, args)),
        );
        Formula::forall(c, Formula::implies(hyp, self.instantiate(&cv, args)))
    }

    /// Free variables of the schema other than its binders.
    pub fn free_fo(&self) -> BTreeSet<Name> {
        let mut fv = self.body.free_vars().fo;
        fv.remove(&self.var);
        for p in &self.params {
            fv.remove(p);
        }
        fv
    }
}

impl Branch {
    pub fn new(var: impl Into<Name>, formula: Formula, body: ProofTerm) -> Self {
        Branch { var: var.into(), formula, body: Box::new(body) }
    }
}

impl ProofTerm {
    pub fn var(name: impl Into<Name>) -> Self {
        ProofTerm::Var(name.into())
    }

    pub fn app(fun: ProofTerm, arg: ProofTerm) -> Self {
        ProofTerm::App(Box::new(fun), Box::new(arg))
    }

    pub fn fo_app(fun: ProofTerm, arg: SetTerm) -> Self {
        ProofTerm::FoApp(Box::new(fun), arg)
    }

    pub fn lam(var: impl Into<Name>, formula: Formula, body: ProofTerm) -> Self {
        ProofTerm::Lam(var.into(), formula, Box::new(body))
    }

    pub fn fo_lam(var: impl Into<Name>, body: ProofTerm) -> Self {
        ProofTerm::FoLam(var.into(), Box::new(body))
    }

    pub fn pair(left: ProofTerm, right: ProofTerm) -> Self {
        ProofTerm::Pair(Box::new(left), Box::new(right))
    }

    pub fn fst(p: ProofTerm) -> Self {
        ProofTerm::Fst(Box::new(p))
    }

    pub fn snd(p: ProofTerm) -> Self {
        ProofTerm::Snd(Box::new(p))
    }

    pub fn inl(p: ProofTerm) -> Self {
        ProofTerm::Inl(Box::new(p))
    }

    pub fn inr(p: ProofTerm) -> Self {
        ProofTerm::Inr(Box::new(p))
    }

    pub fn case(scrutinee: ProofTerm, left: Branch, right: Branch) -> Self {
        ProofTerm::Case(Box::new(scrutinee), left, right)
    }

    pub fn witness(term: SetTerm, proof: ProofTerm) -> Self {
        ProofTerm::Witness(term, Box::new(proof))
    }

    pub fn let_in(
        fo: impl Into<Name>,
        var: impl Into<Name>,
        formula: Formula,
        head: ProofTerm,
        body: ProofTerm,
    ) -> Self {
        ProofTerm::Let {
            fo: fo.into(),
            var: var.into(),
            formula,
            head: Box::new(head),
            body: Box::new(body),
        }
    }

    pub fn magic(p: ProofTerm) -> Self {
        ProofTerm::Magic(Box::new(p))
    }

    pub fn ax_rep(ctor: CtorInstance, member: SetTerm, body: ProofTerm) -> Self {
        ProofTerm::AxRep(ctor, member, Box::new(body))
    }

    pub fn ax_prop(ctor: CtorInstance, member: SetTerm, body: ProofTerm) -> Self {
        ProofTerm::AxProp(ctor, member, Box::new(body))
    }

    pub fn ind(schema: IndSchema, args: Vec<SetTerm>, body: ProofTerm) -> Self {
        ProofTerm::Ind(schema, args, Box::new(body))
    }

    pub fn ascribe(p: ProofTerm, formula: Formula) -> Self {
        ProofTerm::Ascribe(Box::new(p), formula)
    }

    /// Strip top-level ascriptions.
    pub fn peel(&self) -> &ProofTerm {
        let mut term = self;
        while let ProofTerm::Ascribe(inner, _) = term {
            term = inner;
        }
        term
    }

    /// Remove every ascription in the term.
    pub fn erase_ascriptions(&self) -> ProofTerm {
        use ProofTerm::*;
        let go = |p: &ProofTerm| Box::new(p.erase_ascriptions());
        match self {
            Var(x) => Var(x.clone()),
            App(m, n) => App(go(m), go(n)),
            FoApp(m, t) => FoApp(go(m), t.clone()),
            Lam(x, phi, m) => Lam(x.clone(), phi.clone(), go(m)),
            FoLam(a, m) => FoLam(a.clone(), go(m)),
            Pair(m, n) => Pair(go(m), go(n)),
            Fst(m) => Fst(go(m)),
            Snd(m) => Snd(go(m)),
            Inl(m) => Inl(go(m)),
            Inr(m) => Inr(go(m)),
            Case(m, l, r) => Case(
                go(m),
                Branch { var: l.var.clone(), formula: l.formula.clone(), body: go(&l.body) },
                Branch { var: r.var.clone(), formula: r.formula.clone(), body: go(&r.body) },
            ),
            Witness(t, m) => Witness(t.clone(), go(m)),
            Let { fo, var, formula, head, body } => Let {
                fo: fo.clone(),
                var: var.clone(),
                formula: formula.clone(),
                head: go(head),
                body: go(body),
            },
            Magic(m) => Magic(go(m)),
            AxRep(c, t, m) => AxRep(c.clone(), t.clone(), go(m)),
            AxProp(c, t, m) => AxProp(c.clone(), t.clone(), go(m)),
            Ind(s, args, m) => Ind(s.clone(), args.clone(), go(m)),
            Ascribe(m, _) => m.erase_ascriptions(),
        }
    }

    /// Immediate proof subterms, in the order used by [`ProofTerm::subterm_at`]:
    /// a `case` lists its scrutinee then both branch bodies, a `let` its head
    /// then its body.
    pub fn children(&self) -> Vec<&ProofTerm> {
        use ProofTerm::*;
        match self {
            Var(_) => vec![],
            App(m, n) | Pair(m, n) => vec![m, n],
            FoApp(m, _) | Lam(_, _, m) | FoLam(_, m) | Fst(m) | Snd(m) | Inl(m) | Inr(m)
            | Witness(_, m) | Magic(m) | AxRep(_, _, m) | AxProp(_, _, m) | Ind(_, _, m)
            | Ascribe(m, _) => vec![m],
            Case(m, l, r) => vec![m, &l.body, &r.body],
            Let { head, body, .. } => vec![head, body],
        }
    }

    /// Follow a path of child indices.
    pub fn subterm_at(&self, path: &[usize]) -> Option<&ProofTerm> {
        path.iter().try_fold(self, |t, &i| t.children().get(i).copied())
    }

    /// Number of nodes, counting only proof-term constructors.
    pub fn size(&self) -> usize {
        use ProofTerm::*;
        1 + match self {
            Var(_) => 0,
            App(m, n) | Pair(m, n) => m.size() + n.size(),
            FoApp(m, _) | Lam(_, _, m) | FoLam(_, m) | Fst(m) | Snd(m) | Inl(m) | Inr(m)
            | Witness(_, m) | Magic(m) | AxRep(_, _, m) | AxProp(_, _, m) | Ind(_, _, m)
            | Ascribe(m, _) => m.size(),
            Case(m, l, r) => m.size() + l.body.size() + r.body.size(),
            Let { head, body, .. } => head.size() + body.size(),
        }
    }
}
