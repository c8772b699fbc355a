//! The subcommands, each producing a [`Report`].

use lambdaz::checker::{check, synthesize, Context};
use lambdaz::extraction::{
    axiom_proof, extract_disjunct, extract_numeral, extract_witness, AxiomSpec, ExtractError, Side,
};
use lambdaz::fixtures;
use lambdaz::meta::{define_term, definition_var, relativize_formula, relativize_term, ClassPredicate};
use lambdaz::reducer::{run, EvalOptions, EvalResult, Strategy};
use lambdaz::syntax::{alpha_equal, FormulaParam, FreeVars, IndSchema, ProofTerm, Name, Formula};
use lambdaz::theory::Theory;

use crate::parser::{Def, Judgment, Mode};
use crate::printer;
use crate::report::{Record, Report};
use crate::script::{parse_script, ProofScript};

pub const CRABBE_SCRIPT: &str = include_str!("../corpus/crabbe.lz");
pub const NONWF_SCRIPT: &str = include_str!("../corpus/nonwf.lz");

fn context_of(j: &Judgment) -> Context {
    j.context.iter().fold(Context::new(), |ctx, (x, phi)| ctx.with(x.clone(), phi.clone()))
}

fn check_error_fields(r: &mut Record, e: &lambdaz::checker::CheckError) {
    r.push("kind", e.kind);
    r.push("path", format!("/{}", e.path.iter().map(usize::to_string).collect::<Vec<_>>().join("/")));
    if let Some(x) = &e.expected {
        r.push("expected", printer::formula(x));
    }
    if let Some(x) = &e.actual {
        r.push("actual", printer::formula(x));
    }
}

fn judgment_record(script: &ProofScript, j: &Judgment) -> Record {
    let Some(Def::Proof(m)) = script.def(&j.name) else {
        return Record::new("judgment", &j.name).fail("not a proof definition");
    };
    let ctx = context_of(j);
    let kind = match j.mode {
        Mode::Check => "check",
        Mode::Synth => "synth",
    };
    let mut r = Record::new(kind, &j.name).field("line", j.pos.line);
    let outcome = match (&j.mode, &j.goal) {
        (Mode::Check, Some(goal)) => {
            r.push("goal", printer::formula(goal));
            check(&script.theory, &ctx, m, goal).map(|_| None)
        }
        _ => synthesize(&script.theory, &ctx, m).map(Some),
    };
    match outcome {
        Ok(Some(phi)) => r.field("formula", printer::formula(&phi)),
        Ok(None) => r,
        Err(e) => {
            let mut r = r.fail(e.message.clone());
            check_error_fields(&mut r, &e);
            r
        }
    }
}

/// Every judgment of the script, in order.
pub fn check_all(script: &ProofScript) -> Report {
    let mut rep = Report::default();
    for j in script.judgments() {
        rep.push(judgment_record(script, j));
    }
    if rep.records.is_empty() {
        rep.push(Record::new("check", "script").field("judgments", 0));
    }
    rep
}

fn proof_def<'s>(script: &'s ProofScript, name: &str) -> Result<&'s ProofTerm, String> {
    match script.def(name) {
        Some(Def::Proof(m)) => Ok(m),
        Some(d) => Err(format!("`{name}` is a {} definition, expected a proof", d.kind())),
        None => Err(format!("undefined name `{name}`")),
    }
}

fn eval_fields(r: &mut Record, res: &EvalResult) {
    r.push("result", res.kind());
    match res {
        EvalResult::Normalized { value, steps } => {
            r.push("steps", steps);
            r.push("value", printer::proof(value));
        }
        EvalResult::FuelExhausted { last, steps } => {
            r.push("steps", steps);
            r.push("last", printer::proof(last));
        }
        EvalResult::CycleDetected { period, witness, entry } => {
            r.push("entry", entry);
            r.push("period", period);
            r.push("witness", printer::proof(witness));
        }
    }
}

/// Evaluate a proof definition. Succeeds when a normal form is reached.
pub fn eval(script: &ProofScript, name: &str, opts: &EvalOptions, trace: bool) -> Report {
    let mut rep = Report::default();
    let strategy = match opts.strategy {
        Strategy::Lazy => "lazy",
        Strategy::Full => "full",
    };
    let r = Record::new("eval", name).field("strategy", strategy).field("fuel", opts.fuel);
    let m = match proof_def(script, name) {
        Ok(m) => m,
        Err(e) => {
            rep.push(r.fail(e));
            return rep;
        }
    };
    let mut states = Vec::new();
    let res = run(m, opts, |i, t| {
        if trace {
            states.push((i, printer::proof(t)));
        }
    });
    for (i, t) in states {
        rep.push(Record::new("step", i.to_string()).field("term", t));
    }
    let mut r = r;
    match res {
        Ok(res) => {
            eval_fields(&mut r, &res);
            if !matches!(res, EvalResult::Normalized { .. }) {
                r.ok = false;
            }
        }
        Err(e) => r = r.fail(e),
    }
    rep.push(r);
    rep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extraction {
    Disjunct,
    Witness,
    Numeral,
}

fn extraction_error(r: Record, e: ExtractError) -> Record {
    match &e {
        ExtractError::Check(c) => {
            let mut r = r.fail(&e);
            check_error_fields(&mut r, c);
            r
        }
        _ => r.fail(e),
    }
}

pub fn extract(script: &ProofScript, name: &str, what: Extraction, fuel: u64) -> Report {
    let kind = match what {
        Extraction::Disjunct => "extract-disjunct",
        Extraction::Witness => "extract-witness",
        Extraction::Numeral => "extract-numeral",
    };
    let mut rep = Report::default();
    let r = Record::new(kind, name);
    let m = match proof_def(script, name) {
        Ok(m) => m,
        Err(e) => {
            rep.push(r.fail(e));
            return rep;
        }
    };
    let th = &script.theory;
    let goal = match script.goal_for(name) {
        Some(g) => Ok(g.clone()),
        None => synthesize(th, &Context::new(), m),
    };
    let goal = match goal {
        Ok(g) => g,
        Err(e) => {
            rep.push(extraction_error(r, e.into()));
            return rep;
        }
    };
    let mut r = r.field("goal", printer::formula(&goal));
    let rec = match what {
        Extraction::Disjunct => extract_disjunct(th, m, &goal, fuel).map(|d| {
            r.push("side", if d.side == Side::Left { "left" } else { "right" });
            r.push("formula", printer::formula(&d.formula));
            r.push("subproof", printer::proof(&d.subproof));
            r.push("steps", d.steps);
            r.clone()
        }),
        Extraction::Witness => extract_witness(th, m, &goal, fuel).map(|w| {
            r.push("term", printer::term(&w.term));
            r.push("formula", printer::formula(&w.formula));
            r.push("subproof", printer::proof(&w.subproof));
            if !w.closed.is_empty() {
                r.push("closed", w.closed.join(", "));
            }
            r.push("steps", w.steps);
            r.clone()
        }),
        Extraction::Numeral => extract_numeral(th, m, fuel).map(|n| {
            r.push("n", n.value);
            r.push("chain", n.chain.iter().map(printer::term).collect::<Vec<_>>().join(" ; "));
            r.push("steps", n.steps);
            // the composed equation must itself check
            let eqn = n.equation();
            let target = lambdaz::syntax::eq(&n.chain[0], &lambdaz::syntax::numeral(n.value));
            match check(th, &Context::new(), &eqn, &target) {
                Ok(()) => r.push("equation", printer::formula(&target)),
                Err(e) => {
                    r.ok = false;
                    r.push("error", format!("composed equation does not check: {e}"));
                }
            }
            r.clone()
        }),
    };
    rep.push(rec.unwrap_or_else(|e| extraction_error(r, e)));
    rep
}

/// The generated proof of a comprehension axiom, or of induction for
/// `ctor = "ind"`, re-checked against its formula.
pub fn axiom(theory: &Theory, ctor: &str, param: Option<FormulaParam>) -> Report {
    let mut rep = Report::default();
    let r = Record::new("axiom", ctor).field("theory", &theory.name);
    let spec = if ctor == "ind" {
        match param {
            Some(FormulaParam { binders, body }) => {
                let mut names = binders.into_iter();
                let var = names.next().expect("parser requires a binder");
                AxiomSpec::Induction(IndSchema::new(var, names.collect(), body))
            }
            None => {
                rep.push(r.fail("induction needs --param 'a f… : phi'"));
                return rep;
            }
        }
    } else {
        AxiomSpec::Comprehension { ctor: ctor.into(), params: param.into_iter().collect() }
    };
    let built = spec.formula(theory).and_then(|phi| axiom_proof(theory, &spec).map(|m| (phi, m)));
    let r = match built {
        Ok((phi, m)) => {
            let r = r.field("formula", printer::formula(&phi)).field("proof", printer::proof(&m));
            match check(theory, &Context::new(), &m, &phi) {
                Ok(()) => r.field("checks", "yes"),
                Err(e) => r.fail(e),
            }
        }
        Err(e) => r.fail(e),
    };
    rep.push(r);
    rep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum RelKind {
    Formula,
    Term,
}

fn class_predicate(script: &ProofScript, pred: &str, hole: Option<&str>) -> Result<ClassPredicate, String> {
    let phi: &Formula = match script.def(pred) {
        Some(Def::Formula(f)) => f,
        Some(d) => return Err(format!("`{pred}` is a {} definition, expected a formula", d.kind())),
        None => return Err(format!("undefined name `{pred}`")),
    };
    let free: Vec<Name> = phi.free_fo().into_iter().collect();
    let hole = match (hole, free.as_slice()) {
        (Some(h), _) => h.to_string(),
        (None, [h]) => h.clone(),
        (None, _) => {
            return Err(format!(
                "`{pred}` has free variables {{{}}}; pick the class variable with --hole",
                free.join(", ")
            ))
        }
    };
    Ok(ClassPredicate::new(hole, phi.clone()))
}

pub fn relativize(script: &ProofScript, kind: RelKind, name: &str, pred: &str, hole: Option<&str>) -> Report {
    let mut rep = Report::default();
    let r = Record::new("relativize", name).field("pred", pred);
    let out = class_predicate(script, pred, hole).and_then(|class| {
        let r = r.clone().field("hole", &class.hole);
        match (kind, script.def(name)) {
            (RelKind::Formula, Some(Def::Formula(phi))) => {
                Ok(r.field("formula", printer::formula(&relativize_formula(phi, &class))))
            }
            (RelKind::Term, Some(Def::Term(t))) => Ok(r.field("term", printer::term(&relativize_term(t, &class)))),
            (_, Some(d)) => Err(format!("`{name}` is a {} definition", d.kind())),
            (_, None) => Err(format!("undefined name `{name}`")),
        }
    });
    rep.push(out.unwrap_or_else(|e| r.fail(e)));
    rep
}

pub fn define(script: &ProofScript, name: &str) -> Report {
    let mut rep = Report::default();
    let r = Record::new("define-term", name);
    let r = match script.def(name) {
        Some(Def::Term(t)) => match define_term(t) {
            Ok(phi) => {
                let mut fv: Vec<Name> = phi.free_fo().into_iter().collect();
                fv.sort();
                r.field("variable", definition_var(t))
                    .field("term-free", phi.is_term_free())
                    .field("free", fv.join(", "))
                    .field("formula", printer::formula(&phi))
            }
            Err(e) => r.fail(e),
        },
        Some(d) => r.fail(format!("`{name}` is a {} definition, expected a set term", d.kind())),
        None => r.fail(format!("undefined name `{name}`")),
    };
    rep.push(r);
    rep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Demo {
    Crabbe,
    Nonwf,
}

fn assertion(rep: &mut Report, what: &str, holds: bool, detail: impl ToString) {
    let r = Record::new("assert", what).field("observed", detail);
    rep.push(if holds { r } else { Record { ok: false, ..r } });
}

fn synth_def(script: &ProofScript, name: &str) -> Result<Formula, String> {
    let m = proof_def(script, name)?;
    synthesize(&script.theory, &Context::new(), m).map_err(|e| e.to_string())
}

fn show(res: &Result<Formula, String>) -> String {
    match res {
        Ok(phi) => printer::formula(phi),
        Err(e) => e.clone(),
    }
}

/// The two non-normalizing fixtures, parsed from their scripts and run end to end.
pub fn demo(which: Demo) -> Report {
    let mut rep = Report::default();
    let (src, file) = match which {
        Demo::Crabbe => (CRABBE_SCRIPT, "crabbe.lz"),
        Demo::Nonwf => (NONWF_SCRIPT, "nonwf.lz"),
    };
    let script = match parse_script(src, file, None) {
        Ok(s) => s,
        Err(e) => {
            rep.push(Record::new("demo", file).fail(e));
            return rep;
        }
    };
    let cycle = |m: &ProofTerm, strategy: Strategy, fuel: u64| {
        run(m, &EvalOptions { fuel, detect_cycles: true, strategy, ..EvalOptions::default() }, |_, _| {})
    };
    match which {
        Demo::Crabbe => {
            let fx = fixtures::crabbe();
            let n = synth_def(&script, "N");
            assertion(&mut rep, "N : t in t -> false", matches!(&n, Ok(f) if alpha_equal(f, &fx.n_type())), show(&n));
            let m_ty = synth_def(&script, "M");
            assertion(&mut rep, "M : t in 0 -> false", matches!(&m_ty, Ok(f) if alpha_equal(f, &fx.m_type())), show(&m_ty));
            let Ok(m) = proof_def(&script, "M") else {
                rep.push(Record::new("demo", file).fail("script defines no M"));
                return rep;
            };
            let lazy = cycle(m, Strategy::Lazy, 1_000_000);
            let lazy_ok = matches!(&lazy, Ok(EvalResult::Normalized { steps: 0, .. }));
            let lazy_txt = match &lazy {
                Ok(r) => describe(r),
                Err(e) => e.to_string(),
            };
            assertion(&mut rep, "lazy evaluation of M is normalized in 0 steps", lazy_ok, lazy_txt);
            let full = cycle(m, Strategy::Full, 10);
            let full_ok = matches!(&full, Ok(EvalResult::CycleDetected { period: 3, .. }));
            let full_txt = match &full {
                Ok(r) => describe(r),
                Err(e) => e.to_string(),
            };
            assertion(&mut rep, "full reduction of M cycles with period 3", full_ok, full_txt);
        }
        Demo::Nonwf => {
            let fx = fixtures::nonwf();
            let dc = proof_def(&script, "dc").and_then(|p| {
                check(&script.theory, &Context::new(), p, &fixtures::NonWf::dc_type()).map_err(|e| e.to_string())
            });
            assertion(&mut rep, "dc : d in c", dc.is_ok(), dc.err().unwrap_or_else(|| "checks".into()));
            let m_ty = synth_def(&script, "M");
            assertion(
                &mut rep,
                "M : d in d",
                matches!(&m_ty, Ok(f) if alpha_equal(f, &fixtures::NonWf::m_type())),
                show(&m_ty),
            );
            let Ok(m) = proof_def(&script, "M") else {
                rep.push(Record::new("demo", file).fail("script defines no M"));
                return rep;
            };
            assertion(&mut rep, "M is the fixture term", alpha_equal(m, &fx.m), printer::proof(m));
            let lazy = cycle(m, Strategy::Lazy, 1_000);
            let ok = matches!(&lazy, Ok(EvalResult::CycleDetected { period: 3, .. }));
            let txt = match &lazy {
                Ok(r) => describe(r),
                Err(e) => e.to_string(),
            };
            assertion(&mut rep, "lazy evaluation of M cycles with period 3", ok, txt);
        }
    }
    rep
}

fn describe(r: &EvalResult) -> String {
    match r {
        EvalResult::Normalized { steps, .. } => format!("normalized after {steps} step(s)"),
        EvalResult::FuelExhausted { steps, .. } => format!("fuel exhausted after {steps} step(s)"),
        EvalResult::CycleDetected { period, entry, .. } => format!("cycle of period {period} entered at step {entry}"),
    }
}
