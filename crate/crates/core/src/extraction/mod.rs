//! Witness extraction from closed proofs: disjunction, term existence and
//! numerical existence, plus proof terms for the axioms themselves.

pub mod derived;

use thiserror::Error;

use crate::checker::{check, induction_axiom, synthesize, AxiomInstance, CheckError, Context};
use crate::reducer::{evaluate, head_name, EvalError, EvalResult};
use crate::syntax::{
    ctor, eq, subst_fo, succ, CtorInstance, Formula, FormulaParam, FreeVars, IndSchema, Name, ProofTerm,
    SetTerm, Subst,
};
use crate::theory::Theory;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ExtractError {
    #[error("proof does not check: {0}")]
    Check(#[from] CheckError),
    #[error("proof has free proof variables: {}", .0.join(", "))]
    Open(Vec<Name>),
    #[error("goal is not {expected}")]
    GoalShape { expected: &'static str, goal: Formula },
    #[error("{stage}: {source}")]
    Eval { stage: String, source: EvalError },
    #[error("{stage}: fuel exhausted after {steps} step(s)")]
    FuelExhausted { stage: String, steps: u64 },
    #[error("{stage}: reduction cycles with period {period}")]
    Cycle { stage: String, period: u64 },
    /// A closed well-typed proof normalized to the wrong canonical form. This
    /// means a checker or reducer bug, not a user error.
    #[error("{stage}: expected {expected}, normalized to {found}")]
    Malformed { stage: String, expected: &'static str, found: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disjunct {
    pub side: Side,
    pub subproof: ProofTerm,
    pub formula: Formula,
    pub steps: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub term: SetTerm,
    pub subproof: ProofTerm,
    /// `φ[a := term]`, which `subproof` proves.
    pub formula: Formula,
    /// Variables of the raw witness that were replaced by `∅`.
    pub closed: Vec<Name>,
    pub steps: u64,
}

/// The output of the numeral extraction: `chain[0]` is the original term,
/// `equations[i]` proves `chain[i] = S(chain[i+1])` and the last equation
/// proves `chain[n] = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumeralWitness {
    pub value: usize,
    pub chain: Vec<SetTerm>,
    pub equations: Vec<ProofTerm>,
    pub steps: u64,
}

impl NumeralWitness {
    /// A proof of `chain[0] = numeral(value)`.
    pub fn equation(&self) -> ProofTerm {
        derived::numeral_equation(&self.chain, &self.equations)
    }
}

fn require_closed(proof: &ProofTerm) -> Result<(), ExtractError> {
    let open = proof.free_vars().proof;
    if open.is_empty() {
        Ok(())
    } else {
        Err(ExtractError::Open(open.into_iter().collect()))
    }
}

fn normalize(proof: &ProofTerm, fuel: u64, stage: &str, steps: &mut u64) -> Result<ProofTerm, ExtractError> {
    let res = evaluate(proof, fuel, false)
        .map_err(|source| ExtractError::Eval { stage: stage.into(), source })?;
    match res {
        EvalResult::Normalized { value, steps: n } => {
            *steps += n;
            Ok(value)
        }
        EvalResult::FuelExhausted { steps: n, .. } => {
            Err(ExtractError::FuelExhausted { stage: stage.into(), steps: n })
        }
        EvalResult::CycleDetected { period, .. } => {
            Err(ExtractError::Cycle { stage: stage.into(), period })
        }
    }
}

fn malformed(stage: &str, expected: &'static str, found: &ProofTerm) -> ExtractError {
    ExtractError::Malformed { stage: stage.into(), expected, found: head_name(found).into() }
}

/// Normalize a proof of `φ ∨ ψ` and return the disjunct it commits to.
pub fn extract_disjunct(
    theory: &Theory,
    proof: &ProofTerm,
    goal: &Formula,
    fuel: u64,
) -> Result<Disjunct, ExtractError> {
    let Formula::Or(left, right) = goal else {
        return Err(ExtractError::GoalShape { expected: "a disjunction", goal: goal.clone() });
    };
    require_closed(proof)?;
    check(theory, &Context::new(), proof, goal)?;
    let mut steps = 0;
    let value = normalize(proof, fuel, "disjunction", &mut steps)?;
    let (side, subproof, formula) = match value {
        ProofTerm::Inl(n) => (Side::Left, *n, (**left).clone()),
        ProofTerm::Inr(n) => (Side::Right, *n, (**right).clone()),
        other => return Err(malformed("disjunction", "inl or inr", &other)),
    };
    check(theory, &Context::new(), &subproof, &formula)?;
    Ok(Disjunct { side, subproof, formula, steps })
}

/// Normalize a proof of `∃a. φ` to `[t, N]`. Free variables of `t` that are
/// not free in the goal are replaced by `∅` in both `t` and `N`.
pub fn extract_witness(
    theory: &Theory,
    proof: &ProofTerm,
    goal: &Formula,
    fuel: u64,
) -> Result<Witness, ExtractError> {
    let Formula::Exists(a, phi) = goal else {
        return Err(ExtractError::GoalShape { expected: "an existential", goal: goal.clone() });
    };
    require_closed(proof)?;
    check(theory, &Context::new(), proof, goal)?;
    let mut steps = 0;
    let value = normalize(proof, fuel, "witness", &mut steps)?;
    let ProofTerm::Witness(t, n) = value else {
        return Err(malformed("witness", "a witness pair", &value));
    };
    let goal_fv = goal.free_fo();
    let closed: Vec<Name> = t.free_fo().into_iter().filter(|v| !goal_fv.contains(v)).collect();
    let s = closed.iter().fold(Subst::new(), |s, v| s.fo(v.clone(), SetTerm::empty()));
    let (term, subproof) = (s.apply(&t), s.apply(&*n));
    let formula = subst_fo(&**phi, a, &term);
    check(theory, &Context::new(), &subproof, &formula)?;
    Ok(Witness { term, subproof, formula, closed, steps })
}

/// Read off the natural number denoted by `t` from a proof of `t ∈ ω`.
pub fn extract_numeral(theory: &Theory, proof: &ProofTerm, fuel: u64) -> Result<NumeralWitness, ExtractError> {
    require_closed(proof)?;
    let ty = synthesize(theory, &Context::new(), proof)?;
    let omega = SetTerm::omega();
    let mut t = match ty {
        Formula::Member(t, s) if s == omega => t,
        other => return Err(ExtractError::GoalShape { expected: "a membership in ω", goal: other }),
    };
    let mut chain = vec![t.clone()];
    let mut equations = Vec::new();
    let mut current = proof.clone();
    let mut steps = 0;
    loop {
        let level = chain.len() - 1;
        let stage = |what: &str| format!("level {level}, {what}");
        let rep = normalize(&current, fuel, &stage("membership"), &mut steps)?;
        let body = match rep {
            ProofTerm::AxRep(inst, _, body) if inst.name == ctor::OMEGA => *body,
            other => return Err(malformed(&stage("membership"), "infRep", &other)),
        };
        match normalize(&body, fuel, &stage("disjunction"), &mut steps)? {
            ProofTerm::Inl(zero) => {
                check(theory, &Context::new(), &zero, &eq(&t, &SetTerm::empty()))?;
                equations.push(*zero);
                return Ok(NumeralWitness { value: level, chain, equations, steps });
            }
            ProofTerm::Inr(pred) => {
                let (t1, pair) = match normalize(&pred, fuel, &stage("predecessor"), &mut steps)? {
                    ProofTerm::Witness(t1, pair) => (t1, *pair),
                    other => return Err(malformed(&stage("predecessor"), "a witness pair", &other)),
                };
                let (q, e) = match normalize(&pair, fuel, &stage("conjunction"), &mut steps)? {
                    ProofTerm::Pair(q, e) => (*q, *e),
                    other => return Err(malformed(&stage("conjunction"), "a pair", &other)),
                };
                let succ_eq = eq(&t, &succ(t1.clone()));
                check(theory, &Context::new(), &e, &succ_eq)?;
                equations.push(e);
                chain.push(t1.clone());
                t = t1;
                current = q;
            }
            other => return Err(malformed(&stage("disjunction"), "inl or inr", &other)),
        }
    }
}

/// Which axiom [`axiom_proof`] should prove.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomSpec {
    Comprehension { ctor: Name, params: Vec<FormulaParam> },
    Induction(IndSchema),
}

impl AxiomSpec {
    pub fn ctor(name: &str) -> Self {
        AxiomSpec::Comprehension { ctor: name.into(), params: vec![] }
    }

    /// The formula the generated proof proves.
    pub fn formula(&self, theory: &Theory) -> Result<Formula, CheckError> {
        match self {
            AxiomSpec::Comprehension { ctor, params } => {
                Ok(AxiomInstance::new(theory, ctor, params)?.formula())
            }
            AxiomSpec::Induction(schema) => induction_axiom(theory, schema),
        }
    }
}

/// `λf⃗ λa⃗ λc. <λx : c ∈ t_A(a⃗). axProp(x), λx : φ_A. axRep(x)>`, or for
/// induction `λf⃗ λx : premise. ind(f⃗, x)`.
pub fn axiom_proof(theory: &Theory, spec: &AxiomSpec) -> Result<ProofTerm, CheckError> {
    match spec {
        AxiomSpec::Comprehension { ctor, params } => {
            let ax = AxiomInstance::new(theory, ctor, params)?;
            let c = SetTerm::var(ax.member.clone());
            let inst: CtorInstance = ax.ctor.clone();
            let x = ProofTerm::var("x");
            let body = ProofTerm::pair(
                ProofTerm::lam("x", ax.membership(), ProofTerm::ax_prop(inst.clone(), c.clone(), x.clone())),
                ProofTerm::lam("x", ax.phi.clone(), ProofTerm::ax_rep(inst, c, x)),
            );
            Ok(ax
                .params
                .iter()
                .chain(&ax.args)
                .chain(std::iter::once(&ax.member))
                .rev()
                .fold(body, |acc, a| ProofTerm::fo_lam(a.clone(), acc)))
        }
        AxiomSpec::Induction(schema) => {
            induction_axiom(theory, schema)?;
            let args: Vec<SetTerm> = schema.params.iter().map(SetTerm::var).collect();
            let body = ProofTerm::lam(
                "x",
                schema.premise(&args),
                ProofTerm::ind(schema.clone(), args, ProofTerm::var("x")),
            );
            Ok(schema.params.iter().rev().fold(body, |acc, f| ProofTerm::fo_lam(f.clone(), acc)))
        }
    }
}
