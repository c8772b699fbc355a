use std::collections::{BTreeMap, BTreeSet};

use super::free::{fresh, FreeVars};
use super::{Branch, CtorInstance, Formula, FormulaParam, IndSchema, Name, ProofTerm, SetTerm};

/// A simultaneous, capture-avoiding substitution over both namespaces.
#[derive(Clone, Debug, Default)]
pub struct Subst {
    fo: BTreeMap<Name, SetTerm>,
    proof: BTreeMap<Name, ProofTerm>,
    fo_avoid: BTreeSet<Name>,
    proof_avoid: BTreeSet<Name>,
}

impl Subst {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fo(mut self, var: impl Into<Name>, term: SetTerm) -> Self {
        self.fo_avoid.extend(term.free_fo());
        self.fo.insert(var.into(), term);
        self
    }

    pub fn proof(mut self, var: impl Into<Name>, term: ProofTerm) -> Self {
        let fv = term.free_vars();
        self.fo_avoid.extend(fv.fo);
        self.proof_avoid.extend(fv.proof);
        self.proof.insert(var.into(), term);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.fo.is_empty() && self.proof.is_empty()
    }

    pub fn apply<T: Substitutable>(&self, subject: &T) -> T {
        if self.is_empty() {
            subject.clone()
        } else {
            subject.apply_subst(self)
        }
    }

    fn touches(&self, body: &super::Vars) -> bool {
        self.fo.keys().any(|k| body.fo.contains(k))
            || self.proof.keys().any(|k| body.proof.contains(k))
    }

    /// Enter the scope of first-order binders, renaming any that would
    /// capture a free variable of the replacement terms.
    fn under_fo(&self, binders: &[Name], body: impl Fn() -> super::Vars) -> (Vec<Name>, Subst) {
        let mut inner = self.clone();
        for b in binders {
            inner.fo.remove(b);
        }
        if inner.is_empty() || !binders.iter().any(|b| inner.fo_avoid.contains(b)) {
            return (binders.to_vec(), inner);
        }
        let body = body();
        if !inner.touches(&body) {
            return (binders.to_vec(), inner);
        }
        let mut renamed = Vec::with_capacity(binders.len());
        for b in binders {
            if inner.fo_avoid.contains(b) {
                let used: Vec<&Name> = inner
                    .fo_avoid
                    .iter()
                    .chain(body.fo.iter())
                    .chain(inner.fo.keys())
                    .chain(binders.iter())
                    .chain(renamed.iter())
                    .collect();
                let new = fresh(b, used);
                inner.fo.insert(b.clone(), SetTerm::Var(new.clone()));
                inner.fo_avoid.insert(new.clone());
                renamed.push(new);
            } else {
                renamed.push(b.clone());
            }
        }
        (renamed, inner)
    }

    fn under_proof(&self, binder: &Name, body: &ProofTerm) -> (Name, Subst) {
        let mut inner = self.clone();
        inner.proof.remove(binder);
        if inner.is_empty() || !inner.proof_avoid.contains(binder) {
            return (binder.clone(), inner);
        }
        let fv = body.free_vars();
        if !inner.touches(&fv) {
            return (binder.clone(), inner);
        }
        let used: Vec<&Name> =
            inner.proof_avoid.iter().chain(fv.proof.iter()).chain(inner.proof.keys()).collect();
        let new = fresh(binder, used);
        inner.proof.insert(binder.clone(), ProofTerm::Var(new.clone()));
        inner.proof_avoid.insert(new.clone());
        (new, inner)
    }
}

pub trait Substitutable: Clone {
    fn apply_subst(&self, s: &Subst) -> Self;
}

impl Substitutable for SetTerm {
    fn apply_subst(&self, s: &Subst) -> Self {
        match self {
            SetTerm::Var(a) => s.fo.get(a).cloned().unwrap_or_else(|| self.clone()),
            SetTerm::Ctor(inst) => SetTerm::Ctor(inst.apply_subst(s)),
        }
    }
}

impl Substitutable for CtorInstance {
    fn apply_subst(&self, s: &Subst) -> Self {
        let params = self
            .params
            .iter()
            .map(|p| {
                let (binders, inner) = s.under_fo(&p.binders, || p.body.free_vars());
                FormulaParam { binders, body: inner.apply(&p.body) }
            })
            .collect();
        CtorInstance {
            name: self.name.clone(),
            params,
            args: self.args.iter().map(|a| s.apply(a)).collect(),
        }
    }
}

impl Substitutable for Formula {
    fn apply_subst(&self, s: &Subst) -> Self {
        match self {
            Formula::Bottom => Formula::Bottom,
            Formula::Member(l, r) => Formula::Member(s.apply(l), s.apply(r)),
            Formula::And(l, r) => Formula::and(s.apply(&**l), s.apply(&**r)),
            Formula::Or(l, r) => Formula::or(s.apply(&**l), s.apply(&**r)),
            Formula::Implies(l, r) => Formula::implies(s.apply(&**l), s.apply(&**r)),
            Formula::Forall(a, body) | Formula::Exists(a, body) => {
                let (mut names, inner) = s.under_fo(std::slice::from_ref(a), || body.free_vars());
                let name = names.pop().expect("one binder");
                let body = inner.apply(&**body);
                if matches!(self, Formula::Forall(..)) {
                    Formula::forall(name, body)
                } else {
                    Formula::exists(name, body)
                }
            }
        }
    }
}

impl Substitutable for IndSchema {
    fn apply_subst(&self, s: &Subst) -> Self {
        let mut binders = vec![self.var.clone()];
        binders.extend(self.params.iter().cloned());
        let (mut names, inner) = s.under_fo(&binders, || self.body.free_vars());
        let var = names.remove(0);
        IndSchema { var, params: names, body: inner.apply(&self.body) }
    }
}

impl Substitutable for ProofTerm {
    fn apply_subst(&self, s: &Subst) -> Self {
        use ProofTerm::*;
        let go = |p: &ProofTerm| Box::new(s.apply(p));
        match self {
            Var(x) => s.proof.get(x).cloned().unwrap_or_else(|| self.clone()),
            App(m, n) => App(go(m), go(n)),
            FoApp(m, t) => FoApp(go(m), s.apply(t)),
            Lam(x, phi, m) => {
                let (x, inner) = s.under_proof(x, m);
                Lam(x, s.apply(phi), Box::new(inner.apply(&**m)))
            }
            FoLam(a, m) => {
                let (mut names, inner) = s.under_fo(std::slice::from_ref(a), || m.free_vars());
                FoLam(names.pop().expect("one binder"), Box::new(inner.apply(&**m)))
            }
            Pair(m, n) => Pair(go(m), go(n)),
            Fst(m) => Fst(go(m)),
            Snd(m) => Snd(go(m)),
            Inl(m) => Inl(go(m)),
            Inr(m) => Inr(go(m)),
            Case(m, l, r) => {
                let branch = |b: &Branch| {
                    let (var, inner) = s.under_proof(&b.var, &b.body);
                    Branch { var, formula: s.apply(&b.formula), body: Box::new(inner.apply(&*b.body)) }
                };
                Case(go(m), branch(l), branch(r))
            }
            Witness(t, m) => Witness(s.apply(t), go(m)),
            Let { fo, var, formula, head, body } => {
                let (mut names, inner) = s.under_fo(std::slice::from_ref(fo), || {
                    let mut fv = formula.free_vars();
                    let b = body.free_vars();
                    fv.fo.extend(b.fo);
                    fv.proof.extend(b.proof);
                    fv
                });
                let formula = inner.apply(formula);
                let (var, inner2) = inner.under_proof(var, body);
                Let {
                    fo: names.pop().expect("one binder"),
                    var,
                    formula,
                    head: go(head),
                    body: Box::new(inner2.apply(&**body)),
                }
            }
            Magic(m) => Magic(go(m)),
            AxRep(c, t, m) => AxRep(s.apply(c), s.apply(t), go(m)),
            AxProp(c, t, m) => AxProp(s.apply(c), s.apply(t), go(m)),
            Ind(schema, args, m) => {
                Ind(s.apply(schema), args.iter().map(|a| s.apply(a)).collect(), go(m))
            }
            Ascribe(m, phi) => Ascribe(go(m), s.apply(phi)),
        }
    }
}

/// `subject[var := replacement]` for a first-order variable.
pub fn subst_fo<T: Substitutable>(subject: &T, var: &str, replacement: &SetTerm) -> T {
    Subst::new().fo(var, replacement.clone()).apply(subject)
}

/// Simultaneous first-order substitution.
pub fn subst_fo_many<T, I>(subject: &T, pairs: I) -> T
where
    T: Substitutable,
    I: IntoIterator<Item = (Name, SetTerm)>,
{
    pairs.into_iter().fold(Subst::new(), |s, (v, t)| s.fo(v, t)).apply(subject)
}

/// `subject[var := replacement]` for a proof variable.
pub fn subst_proof(subject: &ProofTerm, var: &str, replacement: &ProofTerm) -> ProofTerm {
    Subst::new().proof(var, replacement.clone()).apply(subject)
}
