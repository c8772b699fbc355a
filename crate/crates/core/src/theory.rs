//! Theories as data: every set constructor `t_A` comes with the formula
//! `φ_A(c, a⃗)` that characterises its members.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::syntax::{
    ctor, eq, fresh, succ, CtorInstance, Formula, FormulaParam, FreeVars, Name, SetTerm, Subst,
};

/// How many variables the carried formula of a constructor binds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamSpec {
    None,
    OneBinder,
    TwoBinders,
}

impl ParamSpec {
    pub fn binder_count(self) -> Option<usize> {
        match self {
            ParamSpec::None => None,
            ParamSpec::OneBinder => Some(1),
            ParamSpec::TwoBinders => Some(2),
        }
    }
}

/// A defining formula with holes. Free variables stand for the member and
/// argument holes; `Carried(ts)` is the constructor's carried formula applied
/// to `ts`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Schema {
    Bottom,
    Member(SetTerm, SetTerm),
    And(Box<Schema>, Box<Schema>),
    Or(Box<Schema>, Box<Schema>),
    Implies(Box<Schema>, Box<Schema>),
    Forall(Name, Box<Schema>),
    Exists(Name, Box<Schema>),
    Carried(Vec<SetTerm>),
}

impl From<Formula> for Schema {
    fn from(phi: Formula) -> Self {
        let b = |f: Box<Formula>| Box::new(Schema::from(*f));
        match phi {
            Formula::Bottom => Schema::Bottom,
            Formula::Member(l, r) => Schema::Member(l, r),
            Formula::And(l, r) => Schema::And(b(l), b(r)),
            Formula::Or(l, r) => Schema::Or(b(l), b(r)),
            Formula::Implies(l, r) => Schema::Implies(b(l), b(r)),
            Formula::Forall(a, body) => Schema::Forall(a, b(body)),
            Formula::Exists(a, body) => Schema::Exists(a, b(body)),
        }
    }
}

impl Schema {
    fn and(l: Schema, r: Schema) -> Schema {
        Schema::And(Box::new(l), Box::new(r))
    }

    fn implies(l: Schema, r: Schema) -> Schema {
        Schema::Implies(Box::new(l), Box::new(r))
    }

    fn forall(a: &str, body: Schema) -> Schema {
        Schema::Forall(a.into(), Box::new(body))
    }

    fn exists(a: &str, body: Schema) -> Schema {
        Schema::Exists(a.into(), Box::new(body))
    }

    fn collect(&self, bound: &mut Vec<Name>, free: &mut BTreeSet<Name>, carried: &mut Vec<usize>) {
        let term = |t: &SetTerm, bound: &Vec<Name>, free: &mut BTreeSet<Name>| {
            free.extend(t.free_fo().into_iter().filter(|v| !bound.contains(v)));
        };
        match self {
            Schema::Bottom => {}
            Schema::Member(l, r) => {
                term(l, bound, free);
                term(r, bound, free);
            }
            Schema::And(l, r) | Schema::Or(l, r) | Schema::Implies(l, r) => {
                l.collect(bound, free, carried);
                r.collect(bound, free, carried);
            }
            Schema::Forall(a, body) | Schema::Exists(a, body) => {
                bound.push(a.clone());
                body.collect(bound, free, carried);
                bound.pop();
            }
            Schema::Carried(ts) => {
                carried.push(ts.len());
                for t in ts {
                    term(t, bound, free);
                }
            }
        }
    }

    /// Free hole names and the arities of every carried-formula occurrence.
    pub fn holes(&self) -> (BTreeSet<Name>, Vec<usize>) {
        let mut free = BTreeSet::new();
        let mut carried = Vec::new();
        self.collect(&mut Vec::new(), &mut free, &mut carried);
        (free, carried)
    }

    fn terms(&self, out: &mut Vec<SetTerm>) {
        match self {
            Schema::Bottom => {}
            Schema::Member(l, r) => {
                out.push(l.clone());
                out.push(r.clone());
            }
            Schema::And(l, r) | Schema::Or(l, r) | Schema::Implies(l, r) => {
                l.terms(out);
                r.terms(out);
            }
            Schema::Forall(_, b) | Schema::Exists(_, b) => b.terms(out),
            Schema::Carried(ts) => out.extend(ts.iter().cloned()),
        }
    }

    fn instantiate(
        &self,
        env: &BTreeMap<Name, SetTerm>,
        carried: Option<&FormulaParam>,
        avoid: &mut BTreeSet<Name>,
    ) -> Formula {
        let subst = |t: &SetTerm| {
            env.iter().fold(Subst::new(), |s, (k, v)| s.fo(k.clone(), v.clone())).apply(t)
        };
        match self {
            Schema::Bottom => Formula::Bottom,
            Schema::Member(l, r) => Formula::member(subst(l), subst(r)),
            Schema::And(l, r) => {
                Formula::and(l.instantiate(env, carried, avoid), r.instantiate(env, carried, avoid))
            }
            Schema::Or(l, r) => {
                Formula::or(l.instantiate(env, carried, avoid), r.instantiate(env, carried, avoid))
            }
            Schema::Implies(l, r) => Formula::implies(
                l.instantiate(env, carried, avoid),
                r.instantiate(env, carried, avoid),
            ),
            Schema::Forall(b, body) | Schema::Exists(b, body) => {
                let name = if avoid.contains(b) { fresh(b, avoid.iter()) } else { b.clone() };
                avoid.insert(name.clone());
                let mut inner = env.clone();
                inner.insert(b.clone(), SetTerm::var(name.clone()));
                let body = body.instantiate(&inner, carried, avoid);
                if matches!(self, Schema::Forall(..)) {
                    Formula::forall(name, body)
                } else {
                    Formula::exists(name, body)
                }
            }
            Schema::Carried(ts) => {
                let param = carried.expect("carried formula checked before instantiation");
                param
                    .binders
                    .iter()
                    .zip(ts)
                    .fold(Subst::new(), |s, (x, t)| s.fo(x.clone(), subst(t)))
                    .apply(&param.body)
            }
        }
    }
}

/// One comprehension axiom `∀a⃗ ∀c. c ∈ t_A(a⃗) ↔ φ_A(c, a⃗)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomDescriptor {
    pub name: Name,
    /// Hole for the member `c`.
    pub member: Name,
    /// Holes for the set arguments `a⃗`; their count is the term arity.
    pub args: Vec<Name>,
    pub params: ParamSpec,
    pub schema: Schema,
}

impl AxiomDescriptor {
    pub fn new(
        name: &str,
        member: &str,
        args: &[&str],
        params: ParamSpec,
        schema: impl Into<Schema>,
    ) -> Self {
        AxiomDescriptor {
            name: name.into(),
            member: member.into(),
            args: args.iter().map(|a| a.to_string()).collect(),
            params,
            schema: schema.into(),
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoryError {
    #[error("unknown constructor `{0}`")]
    UnknownCtor(Name),
    #[error("constructor `{ctor}` expects {expected} argument(s), found {found}")]
    Arity { ctor: Name, expected: usize, found: usize },
    #[error("constructor `{ctor}` expects {expected} carried formula(s) binding {binders} variable(s)")]
    Params { ctor: Name, expected: usize, binders: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("constructor `{0}` is declared more than once")]
    DuplicateName(Name),
    #[error("constructor `{ctor}` repeats hole `{hole}`")]
    DuplicateHole { ctor: Name, hole: Name },
    #[error("schema of `{ctor}` mentions undeclared variable `{var}`")]
    UndeclaredHole { ctor: Name, var: Name },
    #[error("schema of `{ctor}` applies its carried formula to {found} term(s), expected {expected}")]
    CarriedArity { ctor: Name, expected: usize, found: usize },
    #[error("schema of `{ctor}` uses a carried formula but the constructor carries none")]
    NoCarriedFormula { ctor: Name },
    #[error("schema of `{ctor}` is ill-formed: {source}")]
    IllFormed { ctor: Name, source: TheoryError },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    pub name: Name,
    pub descriptors: Vec<AxiomDescriptor>,
    pub has_induction: bool,
}

impl Theory {
    pub fn new(name: impl Into<Name>, descriptors: Vec<AxiomDescriptor>, has_induction: bool) -> Self {
        Theory { name: name.into(), descriptors, has_induction }
    }

    pub fn descriptor(&self, name: &str) -> Option<&AxiomDescriptor> {
        self.descriptors.iter().find(|d| d.name == name)
    }

    fn resolve(&self, inst: &CtorInstance) -> Result<&AxiomDescriptor, TheoryError> {
        let desc =
            self.descriptor(&inst.name).ok_or_else(|| TheoryError::UnknownCtor(inst.name.clone()))?;
        if inst.args.len() != desc.arity() {
            return Err(TheoryError::Arity {
                ctor: inst.name.clone(),
                expected: desc.arity(),
                found: inst.args.len(),
            });
        }
        let shape_ok = match desc.params.binder_count() {
            None => inst.params.is_empty(),
            Some(n) => inst.params.len() == 1 && inst.params[0].binders.len() == n,
        };
        if !shape_ok {
            return Err(TheoryError::Params {
                ctor: inst.name.clone(),
                expected: usize::from(desc.params.binder_count().is_some()),
                binders: desc.params.binder_count().unwrap_or(0),
            });
        }
        Ok(desc)
    }

    /// Every constructor in `t` resolves with matching arity and carried formulas.
    pub fn check_term(&self, t: &SetTerm) -> Result<(), TheoryError> {
        match t {
            SetTerm::Var(_) => Ok(()),
            SetTerm::Ctor(inst) => self.check_instance(inst),
        }
    }

    pub fn check_instance(&self, inst: &CtorInstance) -> Result<(), TheoryError> {
        self.resolve(inst)?;
        for p in &inst.params {
            self.check_formula(&p.body)?;
        }
        inst.args.iter().try_for_each(|a| self.check_term(a))
    }

    pub fn check_formula(&self, phi: &Formula) -> Result<(), TheoryError> {
        match phi {
            Formula::Bottom => Ok(()),
            Formula::Member(l, r) => {
                self.check_term(l)?;
                self.check_term(r)
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                self.check_formula(l)?;
                self.check_formula(r)
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => self.check_formula(b),
        }
    }

    /// `φ_A(member, u⃗)` for the constructor instance `t_A(u⃗)`.
    pub fn phi_a(&self, inst: &CtorInstance, member: &SetTerm) -> Result<Formula, TheoryError> {
        let desc = self.resolve(inst)?;
        let carried = inst.params.first();
        let mut avoid = member.free_fo();
        avoid.extend(inst.free_fo());
        let mut env = BTreeMap::new();
        env.insert(desc.member.clone(), member.clone());
        for (hole, arg) in desc.args.iter().zip(&inst.args) {
            env.insert(hole.clone(), arg.clone());
        }
        Ok(desc.schema.instantiate(&env, carried, &mut avoid))
    }

    /// Check descriptor invariants, reporting every violation.
    pub fn validate(&self) -> Result<(), Vec<ValidationError>> {
        let mut errors = Vec::new();
        let mut seen = BTreeSet::new();
        for d in &self.descriptors {
            if !seen.insert(d.name.as_str()) {
                errors.push(ValidationError::DuplicateName(d.name.clone()));
            }
            let mut holes = BTreeSet::new();
            for h in std::iter::once(&d.member).chain(&d.args) {
                if !holes.insert(h.clone()) {
                    errors.push(ValidationError::DuplicateHole { ctor: d.name.clone(), hole: h.clone() });
                }
            }
            let (free, carried) = d.schema.holes();
            for var in free.difference(&holes) {
                errors.push(ValidationError::UndeclaredHole { ctor: d.name.clone(), var: var.clone() });
            }
            match d.params.binder_count() {
                None if !carried.is_empty() => {
                    errors.push(ValidationError::NoCarriedFormula { ctor: d.name.clone() })
                }
                Some(n) => {
                    for found in carried.into_iter().filter(|&k| k != n) {
                        errors.push(ValidationError::CarriedArity {
                            ctor: d.name.clone(),
                            expected: n,
                            found,
                        });
                    }
                }
                None => {}
            }
            let mut terms = Vec::new();
            d.schema.terms(&mut terms);
            if let Some(source) = terms.iter().find_map(|t| self.check_term(t).err()) {
                errors.push(ValidationError::IllFormed { ctor: d.name.clone(), source });
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }
}

fn v(name: &str) -> SetTerm {
    SetTerm::var(name)
}

/// IZF_R without the Leibniz schema.
pub fn izf_r_minus() -> Theory {
    let (a, b, c) = (v("a"), v("b"), v("c"));
    let carried = |ts: &[&str]| Schema::Carried(ts.iter().map(|t| v(t)).collect());

    let replacement = Schema::and(
        Schema::forall(
            "x",
            Schema::implies(
                Schema::Member(v("x"), a.clone()),
                Schema::exists(
                    "y",
                    Schema::and(
                        carried(&["x", "y"]),
                        Schema::forall(
                            "e",
                            Schema::implies(carried(&["x", "e"]), eq(&v("e"), &v("y")).into()),
                        ),
                    ),
                ),
            ),
        ),
        Schema::exists(
            "x",
            Schema::and(Schema::Member(v("x"), a.clone()), carried(&["x", "c"])),
        ),
    );

    let descriptors = vec![
        AxiomDescriptor::new(ctor::EMPTY, "c", &[], ParamSpec::None, Formula::Bottom),
        AxiomDescriptor::new(
            ctor::PAIR,
            "c",
            &["a", "b"],
            ParamSpec::None,
            Formula::or(eq(&c, &a), eq(&c, &b)),
        ),
        AxiomDescriptor::new(
            ctor::OMEGA,
            "c",
            &[],
            ParamSpec::None,
            Formula::or(
                eq(&c, &SetTerm::empty()),
                Formula::exists(
                    "b",
                    Formula::and(Formula::member(b.clone(), SetTerm::omega()), eq(&c, &succ(b.clone()))),
                ),
            ),
        ),
        AxiomDescriptor::new(
            ctor::UNION,
            "c",
            &["a"],
            ParamSpec::None,
            Formula::exists(
                "b",
                Formula::and(Formula::member(b.clone(), a.clone()), Formula::member(c.clone(), b.clone())),
            ),
        ),
        AxiomDescriptor::new(
            ctor::POWER,
            "c",
            &["a"],
            ParamSpec::None,
            Formula::forall(
                "b",
                Formula::implies(Formula::member(b.clone(), c.clone()), Formula::member(b, a.clone())),
            ),
        ),
        AxiomDescriptor::new(
            ctor::SEP,
            "c",
            &["a"],
            ParamSpec::OneBinder,
            Schema::and(Schema::Member(c, a), carried(&["c"])),
        ),
        AxiomDescriptor::new(ctor::REPL, "c", &["a"], ParamSpec::TwoBinders, replacement),
    ];
    Theory::new("izf-r-minus", descriptors, true)
}

/// The two-axiom non-well-founded theory: `a ∈ c ↔ a = c` and
/// `a ∈ d ↔ a ∈ c ∧ (a ∈ a → a ∈ a)`, without ∈-induction.
pub fn nonwf_theory() -> Theory {
    let a = v("a");
    let c = SetTerm::constant("c");
    let descriptors = vec![
        AxiomDescriptor::new("c", "a", &[], ParamSpec::None, eq(&a, &c)),
        AxiomDescriptor::new(
            "d",
            "a",
            &[],
            ParamSpec::None,
            Formula::and(
                Formula::member(a.clone(), c),
                Formula::implies(Formula::member(a.clone(), a.clone()), Formula::member(a.clone(), a)),
            ),
        ),
    ];
    Theory::new("nonwf", descriptors, false)
}
