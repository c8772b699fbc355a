//! Syntactic translations: defining formulas for set terms and relativization
//! of formulas and terms to a class.

use std::collections::BTreeSet;

use crate::syntax::{
    ctor, eq, fresh, iff, subst_fo, succ, CtorInstance, Formula, FormulaParam, FreeVars, Name,
    SetTerm,
};
use crate::theory::{izf_r_minus, Theory, TheoryError};

fn var(n: &Name) -> SetTerm {
    SetTerm::var(n.clone())
}

fn pick(base: &str, used: &mut BTreeSet<Name>) -> Name {
    let n = fresh(base, used.iter());
    used.insert(n.clone());
    n
}

/// The variable [`define_term`] uses for the defined set: `x` unless the term
/// mentions it.
pub fn definition_var(term: &SetTerm) -> Name {
    fresh("x", term.free_fo().iter())
}

/// A term-free formula `φ(x, a⃗)` that holds exactly when `x` is the set
/// denoted by `term`, with `x =` [`definition_var`]`(term)`.
pub fn define_term(term: &SetTerm) -> Result<Formula, TheoryError> {
    define_term_at(term, &definition_var(term))
}

/// [`define_term`] with an explicit name for the defined set.
pub fn define_term_at(term: &SetTerm, x: &str) -> Result<Formula, TheoryError> {
    let theory = izf_r_minus();
    theory.check_term(term)?;
    Definer { theory: &theory }.define(term, x)
}

struct Definer<'t> {
    theory: &'t Theory,
}

impl Definer<'_> {
    fn define(&self, term: &SetTerm, x: &str) -> Result<Formula, TheoryError> {
        let xv = SetTerm::var(x);
        let inst = match term {
            SetTerm::Var(_) => return Ok(eq(&xv, term)),
            SetTerm::Ctor(inst) => inst,
        };
        let mut used = term.free_fo();
        used.insert(x.to_string());
        if inst.name == ctor::OMEGA && inst.args.is_empty() {
            // the least set containing 0 and closed under S
            let c = pick("c", &mut used);
            let y = pick("y", &mut used);
            let (cv, yv) = (var(&c), var(&y));
            let closure = Formula::or(
                eq(&cv, &SetTerm::empty()),
                Formula::exists(y, Formula::and(Formula::member(yv.clone(), xv.clone()), eq(&cv, &succ(yv)))),
            );
            let fixed = Formula::forall(c, iff(Formula::member(cv, xv), closure));
            return self.eliminate(&fixed);
        }
        let mut conjuncts = Vec::new();
        let mut bound = Vec::new();
        let mut args = Vec::new();
        for arg in &inst.args {
            if arg.as_var().is_some() {
                args.push(arg.clone());
            } else {
                let xi = pick("x", &mut used);
                conjuncts.push(self.define(arg, &xi)?);
                args.push(var(&xi));
                bound.push(xi);
            }
        }
        let c = pick("c", &mut used);
        let flat = CtorInstance::new(inst.name.clone(), inst.params.clone(), args);
        let phi = self.eliminate(&self.theory.phi_a(&flat, &var(&c))?)?;
        conjuncts.push(Formula::forall(c.clone(), iff(Formula::member(var(&c), xv), phi)));
        let body = Formula::conjunction(conjuncts).expect("at least the extensional clause");
        Ok(bound.into_iter().rev().fold(body, |acc, xi| Formula::exists(xi, acc)))
    }

    /// Replace every atom mentioning a constructor by its definition.
    fn eliminate(&self, phi: &Formula) -> Result<Formula, TheoryError> {
        let go = |f: &Formula| self.eliminate(f);
        Ok(match phi {
            Formula::Bottom => Formula::Bottom,
            Formula::Member(l, r) => {
                if l.as_var().is_some() && r.as_var().is_some() {
                    return Ok(phi.clone());
                }
                let mut used = l.free_fo();
                used.extend(r.free_fo());
                let mut defs = Vec::new();
                let mut side = |t: &SetTerm, base: &str| -> Result<SetTerm, TheoryError> {
                    if t.as_var().is_some() {
                        return Ok(t.clone());
                    }
                    let y = pick(base, &mut used);
                    defs.push((y.clone(), self.define(t, &y)?));
                    Ok(var(&y))
                };
                let l2 = side(l, "y")?;
                let r2 = side(r, "y")?;
                let mut parts: Vec<Formula> = defs.iter().map(|(_, d)| d.clone()).collect();
                parts.push(Formula::member(l2, r2));
                let body = Formula::conjunction(parts).expect("non-empty");
                defs.into_iter().rev().fold(body, |acc, (y, _)| Formula::exists(y, acc))
            }
            Formula::And(l, r) => Formula::and(go(l)?, go(r)?),
            Formula::Or(l, r) => Formula::or(go(l)?, go(r)?),
            Formula::Implies(l, r) => Formula::implies(go(l)?, go(r)?),
            Formula::Forall(a, b) => Formula::forall(a.clone(), go(b)?),
            Formula::Exists(a, b) => Formula::exists(a.clone(), go(b)?),
        })
    }
}

/// A class `{hole | formula}`. Free variables of `formula` other than `hole`
/// are parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPredicate {
    pub hole: Name,
    pub formula: Formula,
}

impl ClassPredicate {
    pub fn new(hole: impl Into<Name>, formula: Formula) -> Self {
        ClassPredicate { hole: hole.into(), formula }
    }

    /// The class of all sets, `{x | x = x}`.
    pub fn trivial() -> Self {
        let x = SetTerm::var("x");
        ClassPredicate::new("x", eq(&x, &x))
    }

    /// `T(t)`
    pub fn apply(&self, t: &SetTerm) -> Formula {
        subst_fo(&self.formula, &self.hole, t)
    }

    pub fn params(&self) -> BTreeSet<Name> {
        let mut fv = self.formula.free_fo();
        fv.remove(&self.hole);
        fv
    }
}

/// Rename `binders` that would capture a parameter of the class, inside `body`.
fn avoid_params(binders: &[Name], body: &Formula, class: &ClassPredicate) -> (Vec<Name>, Formula) {
    let params = class.params();
    if !binders.iter().any(|b| params.contains(b)) {
        return (binders.to_vec(), body.clone());
    }
    let mut used: BTreeSet<Name> = params.iter().cloned().collect();
    used.extend(body.free_fo());
    used.extend(binders.iter().cloned());
    let mut body = body.clone();
    let names = binders
        .iter()
        .map(|b| {
            if params.contains(b) {
                let n = pick(b, &mut used);
                body = subst_fo(&body, b, &var(&n));
                n
            } else {
                b.clone()
            }
        })
        .collect();
    (names, body)
}

/// `φ^T`: quantifiers range over `T` and terms are relativized.
pub fn relativize_formula(phi: &Formula, class: &ClassPredicate) -> Formula {
    let go = |f: &Formula| relativize_formula(f, class);
    match phi {
        Formula::Bottom => Formula::Bottom,
        Formula::Member(l, r) => Formula::member(relativize_term(l, class), relativize_term(r, class)),
        Formula::And(l, r) => Formula::and(go(l), go(r)),
        Formula::Or(l, r) => Formula::or(go(l), go(r)),
        Formula::Implies(l, r) => Formula::implies(go(l), go(r)),
        Formula::Forall(a, body) | Formula::Exists(a, body) => {
            let (mut names, body) = avoid_params(std::slice::from_ref(a), body, class);
            let a = names.pop().expect("one binder");
            let guard = class.apply(&var(&a));
            let body = go(&body);
            if matches!(phi, Formula::Forall(..)) {
                Formula::forall(a, Formula::implies(guard, body))
            } else {
                Formula::exists(a, Formula::and(guard, body))
            }
        }
    }
}

/// `t^T`: power sets are cut down to `T`, comprehension formulas are
/// relativized and replacement images are required to lie in `T`.
pub fn relativize_term(term: &SetTerm, class: &ClassPredicate) -> SetTerm {
    let inst = match term {
        SetTerm::Var(_) => return term.clone(),
        SetTerm::Ctor(inst) => inst,
    };
    let args: Vec<SetTerm> = inst.args.iter().map(|a| relativize_term(a, class)).collect();
    let params: Vec<FormulaParam> = inst
        .params
        .iter()
        .map(|p| {
            let (binders, body) = avoid_params(&p.binders, &p.body, class);
            let mut body = relativize_formula(&body, class);
            if inst.name == ctor::REPL {
                if let Some(image) = binders.get(1) {
                    body = Formula::and(class.apply(&var(image)), body);
                }
            }
            FormulaParam { binders, body }
        })
        .collect();
    let rebuilt = SetTerm::Ctor(CtorInstance::new(inst.name.clone(), params, args));
    if inst.name == ctor::POWER {
        let mut used = class.params();
        used.extend(rebuilt.free_fo());
        let x = fresh("x", used.iter());
        SetTerm::sep(x.clone(), class.apply(&var(&x)), rebuilt)
    } else {
        rebuilt
    }
}
