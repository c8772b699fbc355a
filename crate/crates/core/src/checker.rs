//! Bidirectional type checking of proof terms.
//!
//! `inl`, `inr`, `[t, M]` and `magic` only check; everything else synthesizes.
//! Binders that would violate an eigenvariable condition are renamed before
//! the checker descends.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::syntax::{
    alpha_equal, fresh, iff, subst_fo, subst_proof, CtorInstance, Formula, FormulaParam,
    FreeVars, IndSchema, Name, ProofTerm, SetTerm,
};
use crate::theory::{Theory, TheoryError};

/// Proof hypotheses in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context {
    entries: Vec<(Name, Formula)>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add `x : φ`, replacing an earlier hypothesis of the same name.
    pub fn with(mut self, x: impl Into<Name>, phi: Formula) -> Self {
        self.push(x.into(), phi);
        self
    }

    pub fn push(&mut self, x: Name, phi: Formula) {
        self.entries.retain(|(y, _)| *y != x);
        self.entries.push((x, phi));
    }

    pub fn lookup(&self, x: &str) -> Option<&Formula> {
        self.entries.iter().rev().find(|(y, _)| y == x).map(|(_, f)| f)
    }

    pub fn contains(&self, x: &str) -> bool {
        self.lookup(x).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Formula)> {
        self.entries.iter().map(|(x, f)| (x, f))
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.entries.iter().map(|(x, _)| x)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `FV_F(rg Γ)`
    pub fn free_fo(&self) -> BTreeSet<Name> {
        self.entries.iter().flat_map(|(_, f)| f.free_fo()).collect()
    }

    /// `Γ[a := t]`
    pub fn subst_fo(&self, a: &str, t: &SetTerm) -> Context {
        Context {
            entries: self.entries.iter().map(|(x, f)| (x.clone(), subst_fo(f, a, t))).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    UnboundVariable,
    TypeMismatch,
    NotSynthesizable,
    SideConditionViolated,
    Arity,
    UnknownCtor,
    InductionUnavailable,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::UnboundVariable => "unbound-variable",
            ErrorKind::TypeMismatch => "type-mismatch",
            ErrorKind::NotSynthesizable => "not-synthesizable",
            ErrorKind::SideConditionViolated => "side-condition-violated",
            ErrorKind::Arity => "arity",
            ErrorKind::UnknownCtor => "unknown-ctor",
            ErrorKind::InductionUnavailable => "induction-unavailable",
        })
    }
}

/// A typing failure. `path` lists child indices (see [`ProofTerm::children`])
/// from the root of the checked term to the offending subterm.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{kind} at /{}: {message}", path_string(.path))]
pub struct CheckError {
    pub kind: ErrorKind,
    pub path: Vec<usize>,
    pub message: String,
    pub expected: Option<Formula>,
    pub actual: Option<Formula>,
}

fn path_string(path: &[usize]) -> String {
    path.iter().map(usize::to_string).collect::<Vec<_>>().join("/")
}

impl CheckError {
    fn new(kind: ErrorKind, path: &[usize], message: impl Into<String>) -> Self {
        CheckError { kind, path: path.to_vec(), message: message.into(), expected: None, actual: None }
    }

    fn mismatch(path: &[usize], message: impl Into<String>, expected: Formula, actual: Formula) -> Self {
        CheckError {
            expected: Some(expected),
            actual: Some(actual),
            ..CheckError::new(ErrorKind::TypeMismatch, path, message)
        }
    }

    fn from_theory(err: TheoryError, path: &[usize]) -> Self {
        let kind = match err {
            TheoryError::UnknownCtor(_) => ErrorKind::UnknownCtor,
            TheoryError::Arity { .. } | TheoryError::Params { .. } => ErrorKind::Arity,
        };
        CheckError::new(kind, path, err.to_string())
    }
}

struct Checker<'t> {
    theory: &'t Theory,
    path: Vec<usize>,
}

fn conn(phi: &Formula) -> &'static str {
    match phi {
        Formula::Bottom => "falsity",
        Formula::Member(..) => "a membership",
        Formula::And(..) => "a conjunction",
        Formula::Or(..) => "a disjunction",
        Formula::Implies(..) => "an implication",
        Formula::Forall(..) => "a universal",
        Formula::Exists(..) => "an existential",
    }
}

impl<'t> Checker<'t> {
    fn err(&self, kind: ErrorKind, message: impl Into<String>) -> CheckError {
        CheckError::new(kind, &self.path, message)
    }

    fn at<R>(&mut self, child: usize, f: impl FnOnce(&mut Self) -> R) -> R {
        self.path.push(child);
        let r = f(self);
        self.path.pop();
        r
    }

    fn term(&self, t: &SetTerm) -> Result<(), CheckError> {
        self.theory.check_term(t).map_err(|e| CheckError::from_theory(e, &self.path))
    }

    fn formula(&self, phi: &Formula) -> Result<(), CheckError> {
        self.theory.check_formula(phi).map_err(|e| CheckError::from_theory(e, &self.path))
    }

    fn phi_a(&self, inst: &CtorInstance, t: &SetTerm) -> Result<Formula, CheckError> {
        self.term(t)?;
        self.theory.check_instance(inst).map_err(|e| CheckError::from_theory(e, &self.path))?;
        self.theory.phi_a(inst, t).map_err(|e| CheckError::from_theory(e, &self.path))
    }

    fn expect_equal(&self, expected: &Formula, actual: &Formula) -> Result<(), CheckError> {
        if alpha_equal(expected, actual) {
            Ok(())
        } else {
            Err(CheckError::mismatch(
                &self.path,
                "formulas differ",
                expected.clone(),
                actual.clone(),
            ))
        }
    }

    fn shape(&self, what: &Formula, wanted: &str) -> CheckError {
        let mut e = self.err(
            ErrorKind::TypeMismatch,
            format!("expected {wanted}, found {}", conn(what)),
        );
        e.actual = Some(what.clone());
        e
    }

    /// Rename proof binder `x` in `body` when it clashes with the context.
    fn fresh_proof(ctx: &Context, x: &Name, body: &ProofTerm) -> (Name, ProofTerm) {
        if !ctx.contains(x) {
            return (x.clone(), body.clone());
        }
        let mut used: BTreeSet<Name> = ctx.names().cloned().collect();
        used.extend(body.free_vars().proof);
        let y = fresh(x, used.iter());
        let renamed = subst_proof(body, x, &ProofTerm::var(y.clone()));
        (y, renamed)
    }

    fn synth(&mut self, ctx: &Context, m: &ProofTerm) -> Result<Formula, CheckError> {
        use ProofTerm::*;
        match m {
            Var(x) => ctx
                .lookup(x)
                .cloned()
                .ok_or_else(|| self.err(ErrorKind::UnboundVariable, format!("unbound proof variable `{x}`"))),
            App(f, n) => {
                let ft = self.at(0, |c| c.synth(ctx, f))?;
                match ft {
                    Formula::Implies(phi, psi) => {
                        self.at(1, |c| c.check(ctx, n, &phi))?;
                        Ok(*psi)
                    }
                    other => Err(self.at(0, |c| c.shape(&other, "an implication"))),
                }
            }
            FoApp(f, t) => {
                self.term(t)?;
                match self.at(0, |c| c.synth(ctx, f))? {
                    Formula::Forall(a, phi) => Ok(subst_fo(&*phi, &a, t)),
                    other => Err(self.at(0, |c| c.shape(&other, "a universal"))),
                }
            }
            Lam(x, phi, body) => {
                self.formula(phi)?;
                let (x, body) = Self::fresh_proof(ctx, x, body);
                let inner = ctx.clone().with(x, phi.clone());
                let psi = self.at(0, |c| c.synth(&inner, &body))?;
                Ok(Formula::implies(phi.clone(), psi))
            }
            FoLam(a, body) => {
                let ctx_fv = ctx.free_fo();
                let (a, body) = if ctx_fv.contains(a) {
                    let mut used = ctx_fv;
                    used.extend(body.free_fo());
                    let b = fresh(a, used.iter());
                    let renamed = subst_fo(&**body, a, &SetTerm::var(b.clone()));
                    (b, renamed)
                } else {
                    (a.clone(), (**body).clone())
                };
                let phi = self.at(0, |c| c.synth(ctx, &body))?;
                Ok(Formula::forall(a, phi))
            }
            Pair(l, r) => {
                let phi = self.at(0, |c| c.synth(ctx, l))?;
                let psi = self.at(1, |c| c.synth(ctx, r))?;
                Ok(Formula::and(phi, psi))
            }
            Fst(p) | Snd(p) => match self.at(0, |c| c.synth(ctx, p))? {
                Formula::And(phi, psi) => Ok(if matches!(m, Fst(_)) { *phi } else { *psi }),
                other => Err(self.at(0, |c| c.shape(&other, "a conjunction"))),
            },
            Case(scrut, l, r) => {
                self.formula(&l.formula)?;
                self.formula(&r.formula)?;
                let disj = Formula::or(l.formula.clone(), r.formula.clone());
                self.at(0, |c| c.check(ctx, scrut, &disj))?;
                let (lx, lbody) = Self::fresh_proof(ctx, &l.var, &l.body);
                let (rx, rbody) = Self::fresh_proof(ctx, &r.var, &r.body);
                let left = self.at(1, |c| c.synth(&ctx.clone().with(lx, l.formula.clone()), &lbody))?;
                let right =
                    self.at(2, |c| c.synth(&ctx.clone().with(rx, r.formula.clone()), &rbody))?;
                if alpha_equal(&left, &right) {
                    Ok(left)
                } else {
                    Err(CheckError::mismatch(&self.path, "case branches disagree", left, right))
                }
            }
            Let { fo, var, formula, head, body } => {
                let (a, phi, body) = self.let_parts(ctx, fo, formula, body, &BTreeSet::new());
                self.formula(&phi)?;
                let ex = Formula::exists(a.clone(), phi.clone());
                self.at(0, |c| c.check(ctx, head, &ex))?;
                let (x, body) = Self::fresh_proof(ctx, var, &body);
                let psi = self.at(1, |c| c.synth(&ctx.clone().with(x, phi), &body))?;
                if psi.is_fo_free(&a) {
                    let mut e = self.err(
                        ErrorKind::SideConditionViolated,
                        format!("witness variable `{a}` escapes in the result of let"),
                    );
                    e.actual = Some(psi);
                    return Err(e);
                }
                Ok(psi)
            }
            AxRep(inst, t, body) => {
                let phi = self.phi_a(inst, t)?;
                self.at(0, |c| c.check(ctx, body, &phi))?;
                Ok(Formula::member(t.clone(), inst.to_term()))
            }
            AxProp(inst, t, body) => {
                let phi = self.phi_a(inst, t)?;
                let mem = Formula::member(t.clone(), inst.to_term());
                self.at(0, |c| c.check(ctx, body, &mem))?;
                Ok(phi)
            }
            Ind(schema, args, body) => {
                if !self.theory.has_induction {
                    return Err(self.err(
                        ErrorKind::InductionUnavailable,
                        format!("theory `{}` has no ∈-induction", self.theory.name),
                    ));
                }
                if schema.params.len() != args.len() {
                    return Err(self.err(
                        ErrorKind::Arity,
                        format!(
                            "induction schema has {} parameter(s), given {} argument(s)",
                            schema.params.len(),
                            args.len()
                        ),
                    ));
                }
                self.formula(&schema.body)?;
                for t in args {
                    self.term(t)?;
                }
                let premise = schema.premise(args);
                self.at(0, |c| c.check(ctx, body, &premise))?;
                Ok(schema.conclusion(args))
            }
            Ascribe(body, phi) => {
                self.formula(phi)?;
                self.at(0, |c| c.check(ctx, body, phi))?;
                Ok(phi.clone())
            }
            Inl(_) | Inr(_) | Witness(..) | Magic(_) => Err(self.err(
                ErrorKind::NotSynthesizable,
                "inl, inr, witness and magic need a goal; add an ascription",
            )),
        }
    }

    /// Choose the let-bound witness variable away from the context and `extra`,
    /// renaming it in the annotation and the body.
    fn let_parts(
        &self,
        ctx: &Context,
        a: &Name,
        phi: &Formula,
        body: &ProofTerm,
        extra: &BTreeSet<Name>,
    ) -> (Name, Formula, ProofTerm) {
        let mut clash = ctx.free_fo();
        clash.extend(extra.iter().cloned());
        if !clash.contains(a) {
            return (a.clone(), phi.clone(), body.clone());
        }
        let mut used = clash;
        used.extend(phi.free_fo());
        used.extend(body.free_fo());
        let b = fresh(a, used.iter());
        let bv = SetTerm::var(b.clone());
        (b, subst_fo(phi, a, &bv), subst_fo(body, a, &bv))
    }

    fn check(&mut self, ctx: &Context, m: &ProofTerm, goal: &Formula) -> Result<(), CheckError> {
        use ProofTerm::*;
        match (m, goal) {
            (Inl(p), Formula::Or(phi, _)) => self.at(0, |c| c.check(ctx, p, phi)),
            (Inr(p), Formula::Or(_, psi)) => self.at(0, |c| c.check(ctx, p, psi)),
            (Inl(_) | Inr(_), other) => Err(self.shape(other, "a disjunction")),
            (Witness(t, p), Formula::Exists(a, phi)) => {
                self.term(t)?;
                let inst = subst_fo(&**phi, a, t);
                self.at(0, |c| c.check(ctx, p, &inst))
            }
            (Witness(..), other) => Err(self.shape(other, "an existential")),
            (Magic(p), _) => self.at(0, |c| c.check(ctx, p, &Formula::Bottom)),
            (Lam(x, phi, body), Formula::Implies(dom, cod)) => {
                self.formula(phi)?;
                if !alpha_equal(phi, &**dom) {
                    return Err(CheckError::mismatch(
                        &self.path,
                        "lambda annotation differs from the goal's antecedent",
                        (**dom).clone(),
                        phi.clone(),
                    ));
                }
                let (x, body) = Self::fresh_proof(ctx, x, body);
                let inner = ctx.clone().with(x, phi.clone());
                self.at(0, |c| c.check(&inner, &body, cod))
            }
            (FoLam(a, body), Formula::Forall(b, psi)) => {
                let mut clash = ctx.free_fo();
                clash.extend(goal.free_fo());
                let name = if clash.contains(a) {
                    clash.extend(body.free_fo());
                    fresh(a, clash.iter())
                } else {
                    a.clone()
                };
                let nv = SetTerm::var(name.clone());
                let body = subst_fo(&**body, a, &nv);
                let psi = subst_fo(&**psi, b, &nv);
                self.at(0, |c| c.check(ctx, &body, &psi))
            }
            (Pair(l, r), Formula::And(phi, psi)) => {
                self.at(0, |c| c.check(ctx, l, phi))?;
                self.at(1, |c| c.check(ctx, r, psi))
            }
            (Case(scrut, l, r), _) => {
                self.formula(&l.formula)?;
                self.formula(&r.formula)?;
                let disj = Formula::or(l.formula.clone(), r.formula.clone());
                self.at(0, |c| c.check(ctx, scrut, &disj))?;
                let (lx, lbody) = Self::fresh_proof(ctx, &l.var, &l.body);
                let (rx, rbody) = Self::fresh_proof(ctx, &r.var, &r.body);
                self.at(1, |c| c.check(&ctx.clone().with(lx, l.formula.clone()), &lbody, goal))?;
                self.at(2, |c| c.check(&ctx.clone().with(rx, r.formula.clone()), &rbody, goal))
            }
            (Let { fo, var, formula, head, body }, _) => {
                let (a, phi, body) = self.let_parts(ctx, fo, formula, body, &goal.free_fo());
                self.formula(&phi)?;
                let ex = Formula::exists(a, phi.clone());
                self.at(0, |c| c.check(ctx, head, &ex))?;
                let (x, body) = Self::fresh_proof(ctx, var, &body);
                self.at(1, |c| c.check(&ctx.clone().with(x, phi), &body, goal))
            }
            (Ascribe(p, phi), _) => {
                self.formula(phi)?;
                self.at(0, |c| c.check(ctx, p, phi))?;
                self.expect_equal(goal, phi)
            }
            _ => {
                let found = self.synth(ctx, m)?;
                self.expect_equal(goal, &found)
            }
        }
    }
}

/// Infer the formula proved by `proof` under `ctx`.
pub fn synthesize(theory: &Theory, ctx: &Context, proof: &ProofTerm) -> Result<Formula, CheckError> {
    Checker { theory, path: Vec::new() }.synth(ctx, proof)
}

/// Check that `proof` proves `goal` under `ctx`.
pub fn check(theory: &Theory, ctx: &Context, proof: &ProofTerm, goal: &Formula) -> Result<(), CheckError> {
    let mut checker = Checker { theory, path: Vec::new() };
    checker.formula(goal)?;
    checker.check(ctx, proof, goal)
}

/// A comprehension axiom instantiated at fixed carried formulas: the bound
/// variables in quantifier order (parameters, then arguments, then the member),
/// the constructor applied to the argument variables, and `φ_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomInstance {
    pub params: Vec<Name>,
    pub args: Vec<Name>,
    pub member: Name,
    pub ctor: CtorInstance,
    pub phi: Formula,
}

impl AxiomInstance {
    pub fn new(theory: &Theory, ctor: &str, params: &[FormulaParam]) -> Result<Self, CheckError> {
        let desc = theory
            .descriptor(ctor)
            .ok_or_else(|| CheckError::new(ErrorKind::UnknownCtor, &[], format!("unknown constructor `{ctor}`")))?;
        let probe = CtorInstance::new(ctor, params.to_vec(), vec![]);
        let fparams: Vec<Name> = probe.free_fo().into_iter().collect();
        let mut used: BTreeSet<Name> = fparams.iter().cloned().collect();
        let mut pick = |hole: &Name| {
            let n = fresh(hole, used.iter());
            used.insert(n.clone());
            n
        };
        let args: Vec<Name> = desc.args.iter().map(&mut pick).collect();
        let member = pick(&desc.member);
        let inst = CtorInstance::new(ctor, params.to_vec(), args.iter().map(SetTerm::var).collect());
        let phi = theory
            .check_instance(&inst)
            .and_then(|_| theory.phi_a(&inst, &SetTerm::var(member.clone())))
            .map_err(|e| CheckError::from_theory(e, &[]))?;
        Ok(AxiomInstance { params: fparams, args, member, ctor: inst, phi })
    }

    /// `c ∈ t_A(a⃗)`
    pub fn membership(&self) -> Formula {
        Formula::member(SetTerm::var(self.member.clone()), self.ctor.to_term())
    }

    /// `∀f⃗ ∀a⃗ ∀c. c ∈ t_A(a⃗) ↔ φ_A(c, a⃗)`
    pub fn formula(&self) -> Formula {
        let body = iff(self.membership(), self.phi.clone());
        self.params
            .iter()
            .chain(&self.args)
            .chain(std::iter::once(&self.member))
            .rev()
            .fold(body, |acc, a| Formula::forall(a.clone(), acc))
    }
}

/// The closed comprehension axiom for `ctor` with the given carried formulas.
/// Free variables of the carried formulas are universally quantified outermost.
pub fn check_axiom_instance(
    theory: &Theory,
    ctor: &str,
    params: &[FormulaParam],
) -> Result<Formula, CheckError> {
    Ok(AxiomInstance::new(theory, ctor, params)?.formula())
}

/// `∀f⃗. (∀c. (∀b. b ∈ c → ψ(b, f⃗)) → ψ(c, f⃗)) → ∀a. ψ(a, f⃗)`
pub fn induction_axiom(theory: &Theory, schema: &IndSchema) -> Result<Formula, CheckError> {
    if !theory.has_induction {
        return Err(CheckError::new(
            ErrorKind::InductionUnavailable,
            &[],
            format!("theory `{}` has no ∈-induction", theory.name),
        ));
    }
    theory.check_formula(&schema.body).map_err(|e| CheckError::from_theory(e, &[]))?;
    let args: Vec<SetTerm> = schema.params.iter().map(SetTerm::var).collect();
    let body = Formula::implies(schema.premise(&args), schema.conclusion(&args));
    Ok(schema.params.iter().rev().fold(body, |acc, f| Formula::forall(f.clone(), acc)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{eq, not, numeral, ctor};
    use crate::theory::{izf_r_minus, nonwf_theory};

    fn v(n: &str) -> SetTerm {
        SetTerm::var(n)
    }

    fn p(n: &str) -> ProofTerm {
        ProofTerm::var(n)
    }

    fn refl_empty() -> ProofTerm {
        let e = SetTerm::empty();
        let mem = Formula::member(v("c"), e);
        ProofTerm::fo_lam(
            "c",
            ProofTerm::pair(ProofTerm::lam("x", mem.clone(), p("x")), ProofTerm::lam("x", mem, p("x"))),
        )
    }

    #[test]
    fn reflexivity_of_empty() {
        let th = izf_r_minus();
        let e = SetTerm::empty();
        check(&th, &Context::new(), &refl_empty(), &eq(&e, &e)).unwrap();
        // synthesis yields the same formula up to the bound name
        let got = synthesize(&th, &Context::new(), &refl_empty()).unwrap();
        assert!(alpha_equal(&got, &eq(&e, &e)));
    }

    #[test]
    fn witness_for_empty() {
        let th = izf_r_minus();
        let goal = Formula::exists("a", eq(&v("a"), &SetTerm::empty()));
        let proof = ProofTerm::witness(SetTerm::empty(), refl_empty());
        check(&th, &Context::new(), &proof, &goal).unwrap();
    }

    #[test]
    fn ex_falso() {
        let th = izf_r_minus();
        let ctx = Context::new().with("x", Formula::Bottom);
        let goal = Formula::member(SetTerm::omega(), SetTerm::omega());
        check(&th, &ctx, &ProofTerm::magic(p("x")), &goal).unwrap();
    }

    #[test]
    fn inl_is_not_synthesizable() {
        let th = izf_r_minus();
        let ctx = Context::new().with("x", Formula::Bottom);
        let err = synthesize(&th, &ctx, &ProofTerm::inl(p("x"))).unwrap_err();
        assert_eq!(err.kind, ErrorKind::NotSynthesizable);
        assert_eq!(err.path, Vec::<usize>::new());
    }

    #[test]
    fn unbound_variable_path() {
        let th = izf_r_minus();
        let term = ProofTerm::lam("x", Formula::Bottom, ProofTerm::app(p("x"), p("y")));
        let err = synthesize(&th, &Context::new(), &term).unwrap_err();
        // `x : ⊥` is not an implication
        assert_eq!(err.kind, ErrorKind::TypeMismatch);
        assert_eq!(err.path, vec![0, 0]);
        let term = ProofTerm::lam("x", Formula::Bottom, ProofTerm::fst(p("y")));
        let err = synthesize(&th, &Context::new(), &term).unwrap_err();
        assert_eq!(err.kind, ErrorKind::UnboundVariable);
        assert_eq!(term.subterm_at(&err.path), Some(&p("y")));
    }

    #[test]
    fn crabbe_terms() {
        let th = izf_r_minus();
        let x = v("x");
        let zero = SetTerm::empty();
        let t = SetTerm::sep("x", not(Formula::member(x.clone(), x)), zero.clone());
        let sep = t.as_ctor().unwrap().clone();
        let tt = Formula::member(t.clone(), t.clone());
        let n = ProofTerm::lam(
            "y",
            tt.clone(),
            ProofTerm::app(ProofTerm::snd(ProofTerm::ax_prop(sep.clone(), t.clone(), p("y"))), p("y")),
        );
        let got = synthesize(&th, &Context::new(), &n).unwrap();
        assert_eq!(got, not(tt));
        let t0 = Formula::member(t.clone(), zero);
        let m = ProofTerm::lam(
            "x",
            t0.clone(),
            ProofTerm::app(n.clone(), ProofTerm::ax_rep(sep, t.clone(), ProofTerm::pair(p("x"), n))),
        );
        assert_eq!(synthesize(&th, &Context::new(), &m).unwrap(), not(t0));
    }

    #[test]
    fn fo_lambda_renames_against_context() {
        let th = izf_r_minus();
        // a : a ∈ ω ⊢ λa. a_hyp  — the bound a must not be the free one
        let ctx = Context::new().with("h", Formula::member(v("a"), SetTerm::omega()));
        let got = synthesize(&th, &ctx, &ProofTerm::fo_lam("a", p("h"))).unwrap();
        let Formula::Forall(b, body) = &got else { panic!() };
        assert_ne!(b, "a");
        assert_eq!(**body, Formula::member(v("a"), SetTerm::omega()));
    }

    #[test]
    fn let_side_condition() {
        let th = izf_r_minus();
        let phi = Formula::member(v("a"), SetTerm::omega());
        let ex = Formula::exists("a", phi.clone());
        let ctx = Context::new().with("h", ex.clone());
        // the body's type mentions the witness: rejected
        let bad = ProofTerm::let_in("a", "x", phi.clone(), p("h"), p("x"));
        let err = synthesize(&th, &ctx, &bad).unwrap_err();
        assert_eq!(err.kind, ErrorKind::SideConditionViolated);
        // re-packing the witness is fine
        let good = ProofTerm::let_in("a", "x", phi, p("h"), ProofTerm::witness(v("a"), p("x")));
        check(&th, &ctx, &good, &ex).unwrap();
    }

    #[test]
    fn let_check_mode_goal_mentions_binder() {
        let th = izf_r_minus();
        // h : ∃a. a ∈ ω, k : a ∈ a ⊢ let [a, x] := h in k : a ∈ a
        let phi = Formula::member(v("a"), SetTerm::omega());
        let aa = Formula::member(v("a"), v("a"));
        let ctx = Context::new().with("h", Formula::exists("a", phi.clone())).with("k", aa.clone());
        let term = ProofTerm::let_in("a", "x", phi, p("h"), p("k"));
        check(&th, &ctx, &term, &aa).unwrap();
    }

    #[test]
    fn case_requires_matching_branches() {
        let th = izf_r_minus();
        let a = Formula::member(v("a"), v("b"));
        let ctx = Context::new().with("h", Formula::or(Formula::Bottom, a.clone()));
        let term = ProofTerm::case(
            p("h"),
            crate::syntax::Branch::new("x", Formula::Bottom, ProofTerm::ascribe(ProofTerm::magic(p("x")), a.clone())),
            crate::syntax::Branch::new("y", a.clone(), p("y")),
        );
        assert_eq!(synthesize(&th, &ctx, &term).unwrap(), a);
        let bad = ProofTerm::case(
            p("h"),
            crate::syntax::Branch::new("x", Formula::Bottom, p("x")),
            crate::syntax::Branch::new("y", a.clone(), p("y")),
        );
        assert_eq!(synthesize(&th, &ctx, &bad).unwrap_err().kind, ErrorKind::TypeMismatch);
    }

    #[test]
    fn axiom_instances() {
        let th = izf_r_minus();
        let c = v("c");
        let e = SetTerm::empty();
        let empty = check_axiom_instance(&th, ctor::EMPTY, &[]).unwrap();
        let expected = Formula::forall(
            "c",
            Formula::and(
                Formula::implies(Formula::member(c.clone(), e.clone()), Formula::Bottom),
                Formula::implies(Formula::Bottom, Formula::member(c.clone(), e)),
            ),
        );
        assert_eq!(empty, expected);
        let pair = check_axiom_instance(&th, ctor::PAIR, &[]).unwrap();
        let expected = Formula::forall(
            "a",
            Formula::forall(
                "b",
                Formula::forall(
                    "c",
                    iff(
                        Formula::member(c.clone(), SetTerm::pair(v("a"), v("b"))),
                        Formula::or(eq(&c, &v("a")), eq(&c, &v("b"))),
                    ),
                ),
            ),
        );
        assert!(alpha_equal(&pair, &expected));
        assert!(pair.free_fo().is_empty());
        let err = check_axiom_instance(&th, "nope", &[]).unwrap_err();
        assert_eq!(err.kind, ErrorKind::UnknownCtor);
        let err = check_axiom_instance(&th, ctor::SEP, &[]).unwrap_err();
        assert_eq!(err.kind, ErrorKind::Arity);
    }

    #[test]
    fn separation_instance_quantifies_parameters() {
        let th = izf_r_minus();
        let param = FormulaParam { binders: vec!["c".into()], body: Formula::member(v("c"), v("a")) };
        let phi = check_axiom_instance(&th, ctor::SEP, &[param]).unwrap();
        assert!(phi.free_fo().is_empty());
        // outermost binder is the parameter a, the separated set gets a fresh name
        let Formula::Forall(f, rest) = &phi else { panic!() };
        assert_eq!(f, "a");
        let Formula::Forall(arg, _) = &**rest else { panic!() };
        assert_ne!(arg, "a");
    }

    #[test]
    fn induction_unavailable_in_nonwf() {
        let th = nonwf_theory();
        let schema = IndSchema::new("a", vec![], Formula::member(v("a"), v("a")));
        let term = ProofTerm::ind(schema.clone(), vec![], p("m"));
        let ctx = Context::new().with("m", Formula::Bottom);
        assert_eq!(synthesize(&th, &ctx, &term).unwrap_err().kind, ErrorKind::InductionUnavailable);
        assert_eq!(induction_axiom(&th, &schema).unwrap_err().kind, ErrorKind::InductionUnavailable);
    }

    #[test]
    fn induction_rule() {
        let th = izf_r_minus();
        let schema = IndSchema::new("a", vec!["f".into()], Formula::member(v("a"), v("f")));
        let args = vec![numeral(1)];
        let prem = schema.premise(&args);
        let ctx = Context::new().with("m", prem);
        let got = synthesize(&th, &ctx, &ProofTerm::ind(schema.clone(), args.clone(), p("m"))).unwrap();
        let expected = Formula::forall("a", Formula::member(v("a"), numeral(1)));
        assert!(alpha_equal(&got, &expected));
        let bad = ProofTerm::ind(schema, vec![], p("m"));
        assert_eq!(synthesize(&th, &ctx, &bad).unwrap_err().kind, ErrorKind::Arity);
    }

    #[test]
    fn ill_formed_ctor_in_annotation() {
        let th = izf_r_minus();
        let bad = Formula::member(v("a"), SetTerm::ctor(ctor::PAIR, vec![v("a")]));
        let term = ProofTerm::lam("x", bad, p("x"));
        assert_eq!(synthesize(&th, &Context::new(), &term).unwrap_err().kind, ErrorKind::Arity);
        let term = ProofTerm::fo_app(ProofTerm::fo_lam("a", ProofTerm::lam("x", Formula::Bottom, p("x"))), SetTerm::constant("c"));
        assert_eq!(synthesize(&th, &Context::new(), &term).unwrap_err().kind, ErrorKind::UnknownCtor);
    }
}
