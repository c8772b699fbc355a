//! Small-step reduction: the lazy weak-head strategy, an unrestricted
//! leftmost-outermost strategy, and an evaluation driver with cycle detection.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::syntax::{
    alpha_equal, alpha_hash, fresh, subst_fo, subst_proof, Formula, FreeVars, Name, ProofTerm,
    SetTerm,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Stepped(ProofTerm),
    Value,
    /// No rule applies and the term is not a value. Only ill-typed or open
    /// terms get stuck.
    Stuck(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalResult {
    Normalized { value: ProofTerm, steps: u64 },
    FuelExhausted { last: ProofTerm, steps: u64 },
    /// `witness` was reached after `entry` steps and recurs (up to α) after
    /// another `period` steps.
    CycleDetected { period: u64, witness: ProofTerm, entry: u64 },
}

impl EvalResult {
    pub fn kind(&self) -> &'static str {
        match self {
            EvalResult::Normalized { .. } => "normalized",
            EvalResult::FuelExhausted { .. } => "fuel-exhausted",
            EvalResult::CycleDetected { .. } => "cycle-detected",
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("stuck after {steps} step(s): {reason}")]
    Stuck { term: ProofTerm, reason: String, steps: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Weak-head evaluation through the evaluation contexts only.
    #[default]
    Lazy,
    /// Leftmost-outermost, also under binders and inside values.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    pub fuel: u64,
    pub detect_cycles: bool,
    pub strategy: Strategy,
    /// How many recent states are remembered for cycle detection.
    pub window: usize,
}

pub const DEFAULT_WINDOW: usize = 64;

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { fuel: 1_000_000, detect_cycles: false, strategy: Strategy::Lazy, window: DEFAULT_WINDOW }
    }
}

/// Head constructor is one of `λa`, `λx:φ`, `inl`, `inr`, `[t, M]`, `<M, N>`,
/// `axRep`. Ascriptions are looked through.
pub fn is_value(term: &ProofTerm) -> bool {
    use ProofTerm::*;
    matches!(
        term.peel(),
        Lam(..) | FoLam(..) | Inl(_) | Inr(_) | Witness(..) | Pair(..) | AxRep(..)
    )
}

enum Local {
    Stepped,
    Value,
    Stuck(String),
}

fn take(b: &mut Box<ProofTerm>) -> ProofTerm {
    std::mem::replace(&mut **b, ProofTerm::Var(Name::new()))
}

fn mismatch(what: &str, found: &ProofTerm) -> String {
    format!("{what} applied to {}", head_name(found))
}

/// A short description of the head constructor, for diagnostics.
pub fn head_name(t: &ProofTerm) -> &'static str {
    use ProofTerm::*;
    match t {
        Var(_) => "a variable",
        App(..) => "an application",
        FoApp(..) => "a first-order application",
        Lam(..) => "a proof abstraction",
        FoLam(..) => "a first-order abstraction",
        Pair(..) => "a pair",
        Fst(_) => "fst",
        Snd(_) => "snd",
        Inl(_) => "inl",
        Inr(_) => "inr",
        Case(..) => "case",
        Witness(..) => "a witness pair",
        Let { .. } => "let",
        Magic(_) => "magic",
        AxRep(..) => "axRep",
        AxProp(..) => "axProp",
        Ind(..) => "ind",
        Ascribe(..) => "an ascription",
    }
}

/// `λc. M c (λb. λx : b ∈ c. ind(t⃗, M) b)` with `c, b, x` fresh.
fn unfold_ind(term: ProofTerm) -> ProofTerm {
    let ProofTerm::Ind(_, _, body) = &term else { unreachable!("unfold_ind on non-ind") };
    let fv = term.free_vars();
    let c = fresh("c", fv.fo.iter());
    let mut used: BTreeSet<Name> = fv.fo;
    used.insert(c.clone());
    let b = fresh("b", used.iter());
    let x = fresh("x", fv.proof.iter());
    let (cv, bv) = (SetTerm::var(c.clone()), SetTerm::var(b.clone()));
    let head = ProofTerm::fo_app((**body).clone(), cv.clone());
    let rec = ProofTerm::fo_lam(
        b,
        ProofTerm::lam(x, Formula::member(bv.clone(), cv), ProofTerm::fo_app(term, bv)),
    );
    ProofTerm::fo_lam(c, ProofTerm::app(head, rec))
}

/// Apply a base rule at the root if one matches. `Ok(false)` means the root is
/// not a redex; `Err` means it is an elimination of the wrong value.
fn contract(m: &mut ProofTerm) -> Result<bool, String> {
    use ProofTerm::*;
    let next = match m {
        App(f, n) => match f.peel() {
            Lam(..) => {
                let Lam(x, _, body) = take(f).peel().clone() else { unreachable!() };
                subst_proof(&body, &x, &take(n))
            }
            v if is_value(v) => return Err(mismatch("proof application", v)),
            _ => return Ok(false),
        },
        FoApp(f, t) => match f.peel() {
            FoLam(..) => {
                let FoLam(a, body) = take(f).peel().clone() else { unreachable!() };
                subst_fo(&*body, &a, t)
            }
            v if is_value(v) => return Err(mismatch("first-order application", v)),
            _ => return Ok(false),
        },
        Fst(p) | Snd(p) => match p.peel() {
            Pair(..) => {
                let Pair(l, r) = take(p).peel().clone() else { unreachable!() };
                if matches!(m, Fst(_)) {
                    *l
                } else {
                    *r
                }
            }
            v if is_value(v) => return Err(mismatch("projection", v)),
            _ => return Ok(false),
        },
        Case(s, l, r) => match s.peel() {
            Inl(..) | Inr(..) => {
                let (left, inner) = match take(s).peel().clone() {
                    Inl(inner) => (true, inner),
                    Inr(inner) => (false, inner),
                    _ => unreachable!(),
                };
                let br = if left { l } else { r };
                subst_proof(&br.body, &br.var, &inner)
            }
            v if is_value(v) => return Err(mismatch("case", v)),
            _ => return Ok(false),
        },
        Let { fo, var, head, body, .. } => match head.peel() {
            Witness(..) => {
                let Witness(t, inner) = take(head).peel().clone() else { unreachable!() };
                let body = subst_fo(&**body, fo, &t);
                subst_proof(&body, var, &inner)
            }
            v if is_value(v) => return Err(mismatch("let", v)),
            _ => return Ok(false),
        },
        AxProp(inst, t, body) => match body.peel() {
            AxRep(inst2, t2, _) => {
                if !alpha_equal(inst, inst2) || !alpha_equal(t, t2) {
                    return Err(format!("axProp for {} meets axRep for {}", inst.name, inst2.name));
                }
                let AxRep(_, _, inner) = take(body).peel().clone() else { unreachable!() };
                *inner
            }
            v if is_value(v) => return Err(mismatch("axProp", v)),
            _ => return Ok(false),
        },
        Magic(p) if is_value(p) => return Err(mismatch("magic", p)),
        Ind(..) => unfold_ind(std::mem::replace(m, Var(Name::new()))),
        Ascribe(inner, _) => {
            *m = take(inner);
            return contract(m);
        }
        _ => return Ok(false),
    };
    *m = next;
    Ok(true)
}

fn lazy(m: &mut ProofTerm) -> Local {
    use ProofTerm::*;
    if let Ascribe(inner, _) = m {
        *m = take(inner);
    }
    match contract(m) {
        Ok(true) => return Local::Stepped,
        Err(reason) => return Local::Stuck(reason),
        Ok(false) => {}
    }
    if is_value(m) {
        return Local::Value;
    }
    match m {
        App(f, _) | FoApp(f, _) | Fst(f) | Snd(f) | Magic(f) => lazy_inner(f),
        Case(s, ..) => lazy_inner(s),
        Let { head, .. } => lazy_inner(head),
        AxProp(_, _, body) => lazy_inner(body),
        Var(x) => Local::Stuck(format!("free proof variable `{x}`")),
        _ => unreachable!("every other form is a value or a redex"),
    }
}

/// Step a subterm in evaluation position; a value there means the enclosing
/// elimination had no matching rule.
fn lazy_inner(m: &mut ProofTerm) -> Local {
    match lazy(m) {
        Local::Value => Local::Stuck(format!("no rule for an elimination of {}", head_name(m))),
        other => other,
    }
}

/// One step of the lazy strategy.
pub fn step(term: &ProofTerm) -> StepOutcome {
    let mut m = term.erase_ascriptions();
    match advance(&mut m, Strategy::Lazy) {
        Local::Stepped => StepOutcome::Stepped(m),
        Local::Value => StepOutcome::Value,
        Local::Stuck(reason) => StepOutcome::Stuck(reason),
    }
}

/// One lazy step that keeps the ascriptions away from the redex, so a reduct
/// of an annotated term can be re-checked. Erasing commutes with it:
/// `step(erase(M))` and `erase(step_annotated(M))` agree up to α.
pub fn step_annotated(term: &ProofTerm) -> StepOutcome {
    let mut m = term.clone();
    match advance(&mut m, Strategy::Lazy) {
        Local::Stepped => StepOutcome::Stepped(m),
        Local::Value => StepOutcome::Value,
        Local::Stuck(reason) => StepOutcome::Stuck(reason),
    }
}

/// Leftmost-outermost search for a redex anywhere in the term.
fn outermost(m: &mut ProofTerm) -> Result<bool, String> {
    use ProofTerm::*;
    if contract(m)? {
        return Ok(true);
    }
    let children: Vec<&mut Box<ProofTerm>> = match m {
        Var(_) => vec![],
        App(l, r) | Pair(l, r) => vec![l, r],
        FoApp(b, _) | Lam(_, _, b) | FoLam(_, b) | Fst(b) | Snd(b) | Inl(b) | Inr(b)
        | Witness(_, b) | Magic(b) | AxRep(_, _, b) | AxProp(_, _, b) | Ind(_, _, b)
        | Ascribe(b, _) => vec![b],
        Case(s, l, r) => vec![s, &mut l.body, &mut r.body],
        Let { head, body, .. } => vec![head, body],
    };
    for child in children {
        // open neutral terms under binders are normal, not stuck
        if let Ok(true) = outermost(child) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// One leftmost-outermost step, reducing under binders as well.
pub fn full_step(term: &ProofTerm) -> StepOutcome {
    let mut m = term.erase_ascriptions();
    match advance(&mut m, Strategy::Full) {
        Local::Stepped => StepOutcome::Stepped(m),
        Local::Value => StepOutcome::Value,
        Local::Stuck(reason) => StepOutcome::Stuck(reason),
    }
}

fn advance(m: &mut ProofTerm, strategy: Strategy) -> Local {
    match strategy {
        Strategy::Lazy => lazy(m),
        Strategy::Full => match outermost(m) {
            Ok(true) => Local::Stepped,
            Err(reason) => Local::Stuck(reason),
            Ok(false) if is_value(m) => Local::Value,
            Ok(false) => Local::Stuck(format!("{} in normal form", head_name(m))),
        },
    }
}

/// Lazy evaluation with the default window.
pub fn evaluate(term: &ProofTerm, fuel: u64, detect_cycles: bool) -> Result<EvalResult, EvalError> {
    run(term, &EvalOptions { fuel, detect_cycles, ..EvalOptions::default() }, |_, _| {})
}

/// Iterate the chosen strategy. `trace` sees every state, starting with the
/// input at step 0.
pub fn run(
    term: &ProofTerm,
    opts: &EvalOptions,
    mut trace: impl FnMut(u64, &ProofTerm),
) -> Result<EvalResult, EvalError> {
    let mut m = term.erase_ascriptions();
    let mut seen: VecDeque<(u64, u64, ProofTerm)> = VecDeque::new();
    let mut steps = 0u64;
    loop {
        trace(steps, &m);
        if opts.detect_cycles {
            let h = alpha_hash(&m);
            if let Some((at, _, w)) = seen.iter().find(|(_, hh, w)| *hh == h && alpha_equal(w, &m)) {
                return Ok(EvalResult::CycleDetected { period: steps - at, witness: w.clone(), entry: *at });
            }
            if opts.window > 0 {
                if seen.len() == opts.window {
                    seen.pop_front();
                }
                seen.push_back((steps, h, m.clone()));
            }
        }
        if steps == opts.fuel {
            let mut probe = m.clone();
            return match advance(&mut probe, opts.strategy) {
                Local::Stepped => Ok(EvalResult::FuelExhausted { last: m, steps }),
                Local::Value => Ok(EvalResult::Normalized { value: m, steps }),
                Local::Stuck(reason) => Err(EvalError::Stuck { term: m, reason, steps }),
            };
        }
        match advance(&mut m, opts.strategy) {
            Local::Value => return Ok(EvalResult::Normalized { value: m, steps }),
            Local::Stuck(reason) => return Err(EvalError::Stuck { term: m, reason, steps }),
            Local::Stepped => steps += 1,
        }
    }
}
