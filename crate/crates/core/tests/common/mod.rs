//! Random well-typed proof terms, built compositionally so that every
//! production is typed by construction. Each intro form that cannot be
//! synthesized (`inl`, `inr`, `[t, M]`, `magic`) is wrapped in an ascription,
//! and that invariant survives `step_annotated`, so every reduct can be
//! re-checked by the bidirectional checker.
#![allow(dead_code)]

use lambdaz::checker::{check, synthesize, Context};
use lambdaz::extraction::derived::{numeral_rep, refl};
use lambdaz::extraction::{axiom_proof, AxiomSpec};
use lambdaz::syntax::{
    ctor, eq, numeral, subst_fo, Branch, CtorInstance, FormulaParam, Formula, FreeVars, IndSchema,
    Name, ProofTerm, SetTerm,
};
use lambdaz::reducer::{is_value, step, step_annotated, StepOutcome};
use lambdaz::syntax::alpha_equal;
use lambdaz::theory::{izf_r_minus, Theory};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Hypotheses and first-order variables in scope.
#[derive(Clone, Debug, Default)]
pub struct Env {
    pub hyps: Vec<(Name, Formula)>,
    pub fo: Vec<Name>,
}

impl Env {
    pub fn context(&self) -> Context {
        self.hyps.iter().fold(Context::new(), |c, (x, f)| c.with(x.clone(), f.clone()))
    }

    pub fn with_hyp(&self, x: &str, phi: Formula) -> Env {
        let mut e = self.clone();
        e.hyps.push((x.into(), phi));
        e
    }

    pub fn with_fo(&self, a: &str) -> Env {
        let mut e = self.clone();
        e.fo.push(a.into());
        e
    }
}

/// Wrap every `inl`, `inr`, `[t, M]` and `magic` in `m` with the formula the
/// checker would push into it. `goal` is `None` in synthesis position.
pub fn annotate(th: &Theory, ctx: &Context, m: &ProofTerm, goal: Option<&Formula>) -> ProofTerm {
    use ProofTerm::*;
    let boxed = |p: ProofTerm| Box::new(p);
    if let Some(g) = goal {
        let wrap = |p: ProofTerm| ProofTerm::ascribe(p, g.clone());
        match (m, g) {
            (Inl(b), Formula::Or(l, _)) => return wrap(Inl(boxed(annotate(th, ctx, b, Some(l))))),
            (Inr(b), Formula::Or(_, r)) => return wrap(Inr(boxed(annotate(th, ctx, b, Some(r))))),
            (Witness(t, b), Formula::Exists(a, body)) => {
                let inner = subst_fo(&**body, a, t);
                return wrap(Witness(t.clone(), boxed(annotate(th, ctx, b, Some(&inner)))));
            }
            (Magic(b), _) => return wrap(Magic(boxed(annotate(th, ctx, b, Some(&Formula::Bottom))))),
            (Lam(x, phi, b), Formula::Implies(_, psi)) => {
                let inner = ctx.clone().with(x.clone(), phi.clone());
                return Lam(x.clone(), phi.clone(), boxed(annotate(th, &inner, b, Some(psi))));
            }
            (FoLam(a, b), Formula::Forall(c, body)) => {
                let inner = subst_fo(&**body, c, &SetTerm::var(a.clone()));
                return FoLam(a.clone(), boxed(annotate(th, ctx, b, Some(&inner))));
            }
            (Pair(l, r), Formula::And(gl, gr)) => {
                return Pair(boxed(annotate(th, ctx, l, Some(gl))), boxed(annotate(th, ctx, r, Some(gr))))
            }
            (Case(..) | Let { .. }, _) => return elim(th, ctx, m, goal),
            (Ascribe(b, phi), _) => return annotate(th, ctx, b, Some(phi)),
            _ => {}
        }
    }
    match m {
        Var(_) | Inl(_) | Inr(_) | Witness(..) | Magic(_) => m.clone(),
        App(f, n) => {
            let f = annotate(th, ctx, f, None);
            let dom = match synthesize(th, ctx, &f) {
                Ok(Formula::Implies(a, _)) => Some(*a),
                _ => None,
            };
            App(boxed(f), boxed(annotate(th, ctx, n, dom.as_ref())))
        }
        FoApp(f, t) => FoApp(boxed(annotate(th, ctx, f, None)), t.clone()),
        Lam(x, phi, b) => {
            let inner = ctx.clone().with(x.clone(), phi.clone());
            Lam(x.clone(), phi.clone(), boxed(annotate(th, &inner, b, None)))
        }
        FoLam(a, b) => FoLam(a.clone(), boxed(annotate(th, ctx, b, None))),
        Pair(l, r) => Pair(boxed(annotate(th, ctx, l, None)), boxed(annotate(th, ctx, r, None))),
        Fst(p) => Fst(boxed(annotate(th, ctx, p, None))),
        Snd(p) => Snd(boxed(annotate(th, ctx, p, None))),
        Case(..) | Let { .. } => elim(th, ctx, m, None),
        AxRep(inst, t, b) => {
            let phi = th.phi_a(inst, t).ok();
            AxRep(inst.clone(), t.clone(), boxed(annotate(th, ctx, b, phi.as_ref())))
        }
        AxProp(inst, t, b) => {
            let mem = Formula::member(t.clone(), inst.to_term());
            AxProp(inst.clone(), t.clone(), boxed(annotate(th, ctx, b, Some(&mem))))
        }
        Ind(schema, args, b) => {
            let premise = schema.premise(args);
            Ind(schema.clone(), args.clone(), boxed(annotate(th, ctx, b, Some(&premise))))
        }
        Ascribe(b, phi) => {
            let inner = annotate(th, ctx, b, Some(phi));
            match inner {
                Ascribe(..) => inner,
                other => ProofTerm::ascribe(other, phi.clone()),
            }
        }
    }
}

fn elim(th: &Theory, ctx: &Context, m: &ProofTerm, goal: Option<&Formula>) -> ProofTerm {
    match m {
        ProofTerm::Case(s, l, r) => {
            let scrut = Formula::or(l.formula.clone(), r.formula.clone());
            let branch = |b: &Branch| {
                let inner = ctx.clone().with(b.var.clone(), b.formula.clone());
                Branch::new(b.var.clone(), b.formula.clone(), annotate(th, &inner, &b.body, goal))
            };
            ProofTerm::case(annotate(th, ctx, s, Some(&scrut)), branch(l), branch(r))
        }
        ProofTerm::Let { fo, var, formula, head, body } => {
            let ex = Formula::exists(fo.clone(), formula.clone());
            let inner = ctx.clone().with(var.clone(), formula.clone());
            ProofTerm::let_in(
                fo.clone(),
                var.clone(),
                formula.clone(),
                annotate(th, ctx, head, Some(&ex)),
                annotate(th, &inner, body, goal),
            )
        }
        _ => unreachable!(),
    }
}

pub struct Gen {
    rng: ChaCha8Rng,
    theory: Theory,
    next: usize,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), theory: izf_r_minus(), next: 0 }
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn name(&mut self, base: &str) -> Name {
        self.next += 1;
        format!("{base}_{}", self.next)
    }

    fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// A closed set term.
    pub fn closed_term(&mut self) -> SetTerm {
        match self.rng.gen_range(0..8) {
            0..=2 => numeral(self.rng.gen_range(0..3)),
            3 => SetTerm::omega(),
            4 => SetTerm::pair(numeral(0), numeral(1)),
            5 => SetTerm::union(SetTerm::omega()),
            6 => SetTerm::power(numeral(0)),
            _ => SetTerm::sep("x", Formula::member(SetTerm::var("x"), SetTerm::omega()), SetTerm::omega()),
        }
    }

    pub fn set_term(&mut self, env: &Env) -> SetTerm {
        if !env.fo.is_empty() && self.rng.gen_bool(0.4) {
            return SetTerm::var(env.fo.choose(&mut self.rng).unwrap().clone());
        }
        self.closed_term()
    }

    pub fn formula(&mut self, env: &Env, depth: usize) -> Formula {
        let atom = depth == 0 || self.rng.gen_bool(0.3);
        if atom {
            return match self.rng.gen_range(0..4) {
                0 => Formula::Bottom,
                1 => eq(&self.set_term(env), &self.set_term(env)),
                _ => Formula::member(self.set_term(env), self.set_term(env)),
            };
        }
        match self.rng.gen_range(0..5) {
            0 => Formula::and(self.formula(env, depth - 1), self.formula(env, depth - 1)),
            1 => Formula::or(self.formula(env, depth - 1), self.formula(env, depth - 1)),
            2 => Formula::implies(self.formula(env, depth - 1), self.formula(env, depth - 1)),
            k => {
                let a = self.name("q");
                let body = self.formula(&env.with_fo(&a), depth - 1);
                if k == 3 {
                    Formula::forall(a, body)
                } else {
                    Formula::exists(a, body)
                }
            }
        }
    }

    fn synth(&self, env: &Env, m: &ProofTerm) -> Formula {
        synthesize(&self.theory, &env.context(), m)
            .unwrap_or_else(|e| panic!("generated term does not synthesize: {e}\n{m:?}"))
    }

    /// A closed well-typed proof and its formula.
    pub fn closed(&mut self, depth: usize) -> (ProofTerm, Formula) {
        self.proof(&Env::default(), depth)
    }

    /// A proof well-typed under `env`, and its formula.
    pub fn proof(&mut self, env: &Env, depth: usize) -> (ProofTerm, Formula) {
        let m = if depth == 0 || self.rng.gen_bool(0.15) { self.leaf(env) } else { self.compound(env, depth - 1) };
        let phi = self.synth(env, &m);
        (m, phi)
    }

    fn annotated(&self, env: &Env, m: ProofTerm, goal: &Formula) -> ProofTerm {
        annotate(&self.theory, &env.context(), &m, Some(goal))
    }

    fn leaf(&mut self, env: &Env) -> ProofTerm {
        match self.rng.gen_range(0..7) {
            0 if !env.hyps.is_empty() => ProofTerm::var(env.hyps.choose(&mut self.rng).unwrap().0.clone()),
            0 | 1 => refl(&self.set_term(env)),
            2 => self.membership(env),
            3 => {
                let phi = self.formula(env, 2);
                let x = self.name("x");
                ProofTerm::lam(x.clone(), phi, ProofTerm::var(x))
            }
            4 => {
                let phi = self.formula(env, 2);
                let x = self.name("x");
                ProofTerm::lam(
                    x.clone(),
                    Formula::Bottom,
                    ProofTerm::ascribe(ProofTerm::magic(ProofTerm::var(x)), phi),
                )
            }
            5 => {
                let name = *[ctor::EMPTY, ctor::PAIR, ctor::OMEGA, ctor::UNION, ctor::POWER].choose(&mut self.rng).unwrap();
                axiom_proof(&self.theory, &AxiomSpec::ctor(name)).unwrap()
            }
            _ => {
                let k = self.rng.gen_range(0..3);
                self.annotated(env, numeral_rep(k), &Formula::member(numeral(k), SetTerm::omega()))
            }
        }
    }

    fn compound(&mut self, env: &Env, d: usize) -> ProofTerm {
        match self.rng.gen_range(0..14) {
            0 => {
                let (m, _) = self.proof(env, d);
                let (n, _) = self.proof(env, d);
                ProofTerm::pair(m, n)
            }
            1 => {
                let (m, phi) = self.proof(env, d);
                let p = if matches!(phi, Formula::And(..)) {
                    m
                } else {
                    let (n, _) = self.proof(env, d);
                    ProofTerm::pair(m, n)
                };
                if self.coin() {
                    ProofTerm::fst(p)
                } else {
                    ProofTerm::snd(p)
                }
            }
            2 => {
                // (λx:φ. B) M
                let (m, phi) = self.proof(env, d);
                let x = self.name("h");
                let (b, _) = self.proof(&env.with_hyp(&x, phi.clone()), d);
                ProofTerm::app(ProofTerm::lam(x, phi, b), m)
            }
            3 => {
                // (λa. B) t
                let a = self.name("a");
                let (b, _) = self.proof(&env.with_fo(&a), d);
                let t = self.set_term(env);
                ProofTerm::fo_app(ProofTerm::fo_lam(a, b), t)
            }
            4 => {
                let (m, phi) = self.proof(env, d);
                match phi {
                    Formula::Forall(..) => ProofTerm::fo_app(m, self.set_term(env)),
                    _ => self.axiom_elim(env),
                }
            }
            5 => self.injection(env, d),
            6 => self.case(env, d),
            7 => self.witness(env, d).0,
            8 => self.let_in(env, d),
            9 => self.ind(env, d),
            10 => {
                let (mem, phi) = self.membership_typed(env);
                let Formula::Member(t, set) = phi else { unreachable!() };
                let inst = set.as_ctor().unwrap().clone();
                if self.coin() {
                    ProofTerm::ax_prop(inst, t, mem)
                } else {
                    let h = self.name("h");
                    let prop = ProofTerm::ax_prop(inst, t.clone(), ProofTerm::var(h.clone()));
                    ProofTerm::app(ProofTerm::lam(h, Formula::member(t, set), prop), mem)
                }
            }
            11 => {
                // (λf : φ → φ. f M) (λy : φ. y)
                let (m, phi) = self.proof(env, d);
                let (f, y) = (self.name("f"), self.name("y"));
                let arrow = Formula::implies(phi.clone(), phi.clone());
                let use_f = ProofTerm::lam(f.clone(), arrow, ProofTerm::app(ProofTerm::var(f), m));
                ProofTerm::app(use_f, ProofTerm::lam(y.clone(), phi, ProofTerm::var(y)))
            }
            12 => self.axiom_elim(env),
            _ => {
                let x = self.name("h");
                let phi = self.formula(env, 2);
                let (b, _) = self.proof(&env.with_hyp(&x, phi.clone()), d);
                ProofTerm::lam(x, phi, b)
            }
        }
    }

    fn injection(&mut self, env: &Env, d: usize) -> ProofTerm {
        let (m, phi) = self.proof(env, d);
        let other = self.formula(env, 2);
        if self.coin() {
            ProofTerm::ascribe(ProofTerm::inl(m), Formula::or(phi, other))
        } else {
            ProofTerm::ascribe(ProofTerm::inr(m), Formula::or(other, phi))
        }
    }

    fn case(&mut self, env: &Env, d: usize) -> ProofTerm {
        let s = self.injection(env, d);
        let Formula::Or(l, r) = self.synth(env, &s) else { unreachable!() };
        let (x, y) = (self.name("l"), self.name("r"));
        let (ex, ey) = (env.with_hyp(&x, (*l).clone()), env.with_hyp(&y, (*r).clone()));
        let (bl, br) = if self.coin() {
            let (c, _) = self.proof(env, d);
            let use_hyp = |g: &mut Gen, h: &Name, phi: &Formula| {
                if g.coin() {
                    let u = g.name("u");
                    ProofTerm::app(ProofTerm::lam(u, phi.clone(), c.clone()), ProofTerm::var(h.clone()))
                } else {
                    c.clone()
                }
            };
            (use_hyp(self, &x, &l), use_hyp(self, &y, &r))
        } else {
            let (p, pl) = self.proof(&ex, d);
            let (q, qr) = self.proof(&ey, d);
            let join = Formula::or(pl, qr);
            (
                ProofTerm::ascribe(ProofTerm::inl(p), join.clone()),
                ProofTerm::ascribe(ProofTerm::inr(q), join),
            )
        };
        ProofTerm::case(s, Branch::new(x, *l, bl), Branch::new(y, *r, br))
    }

    /// `([t, M] : ∃a. φ')` where `φ'` abstracts some occurrences of `t`.
    fn witness(&mut self, env: &Env, d: usize) -> (ProofTerm, Formula) {
        let (m, phi) = self.proof(env, d);
        let mut closed = Vec::new();
        closed_subterms(&phi, &mut closed);
        let t = match closed.choose(&mut self.rng) {
            Some(t) => t.clone(),
            None => self.closed_term(),
        };
        let a = self.name("w");
        let body = abstract_formula(&phi, &t, &a, &mut self.rng);
        let ex = Formula::exists(a, body);
        (ProofTerm::ascribe(ProofTerm::witness(t, m), ex.clone()), ex)
    }

    fn let_in(&mut self, env: &Env, d: usize) -> ProofTerm {
        let (w, ex) = self.witness(env, d);
        let Formula::Exists(a0, body) = ex else { unreachable!() };
        let (a, x) = (self.name("a"), self.name("x"));
        let phi = subst_fo(&*body, &a0, &SetTerm::var(a.clone()));
        let inner = env.with_fo(&a).with_hyp(&x, phi.clone());
        let (b, psi) = self.proof(&inner, d);
        let b = if psi.free_fo().contains(&a) {
            let (c, _) = self.proof(env, d);
            ProofTerm::snd(ProofTerm::pair(b, c))
        } else {
            b
        };
        ProofTerm::let_in(a, x, phi, w, b)
    }

    /// `ind(...) t` for one of a few schemas with known step proofs.
    fn ind(&mut self, env: &Env, d: usize) -> ProofTerm {
        let a = SetTerm::var("a");
        let variant = self.rng.gen_range(0..4);
        let mut constant = None;
        let (schema, args) = match variant {
            0 => (IndSchema::new("a", vec![], Formula::implies(Formula::member(a.clone(), a.clone()), Formula::Bottom)), vec![]),
            1 => (IndSchema::new("a", vec![], eq(&a, &a)), vec![]),
            2 => {
                let f = SetTerm::var("f");
                let body = Formula::implies(Formula::member(a.clone(), f.clone()), Formula::member(a, f));
                (IndSchema::new("a", vec!["f".into()], body), vec![self.set_term(env)])
            }
            _ => {
                // the step ignores its hypothesis
                let (m, chi) = self.proof(env, d);
                constant = Some(m);
                (IndSchema::new("a", vec![], chi), vec![])
            }
        };
        let Formula::Forall(c, premise) = schema.premise(&args) else { unreachable!() };
        let Formula::Implies(hyp, concl) = *premise else { unreachable!() };
        let cv = SetTerm::var(c.clone());
        let h = self.name("ih");
        let body = match (variant, &*concl) {
            (0, Formula::Implies(l, _)) => {
                // λx : c ∈ c. ih c x x
                let x = self.name("x");
                let ih = ProofTerm::app(ProofTerm::fo_app(ProofTerm::var(h.clone()), cv.clone()), ProofTerm::var(x.clone()));
                ProofTerm::lam(x.clone(), (**l).clone(), ProofTerm::app(ih, ProofTerm::var(x)))
            }
            (1, _) => refl(&cv),
            (2, Formula::Implies(l, _)) => {
                let x = self.name("x");
                ProofTerm::lam(x.clone(), (**l).clone(), ProofTerm::var(x))
            }
            _ => constant.take().unwrap(),
        };
        let step = ProofTerm::fo_lam(c, ProofTerm::lam(h, *hyp, body));
        let ind = ProofTerm::ind(schema, args, step);
        if self.coin() {
            ProofTerm::fo_app(ind, self.set_term(env))
        } else {
            ind
        }
    }

    fn membership(&mut self, env: &Env) -> ProofTerm {
        self.membership_typed(env).0
    }

    /// A proof of `t ∈ A` built from axRep, with `A` a constructor term.
    fn membership_typed(&mut self, env: &Env) -> (ProofTerm, Formula) {
        let th = self.theory.clone();
        let ctx = env.context();
        let k = self.rng.gen_range(0..3);
        let kv = numeral(k);
        let omega = SetTerm::omega();
        let rep = |t: &SetTerm, set: &SetTerm, body: ProofTerm| {
            ProofTerm::ax_rep(set.as_ctor().unwrap().clone(), t.clone(), body)
        };
        let (m, t, set) = match self.rng.gen_range(0..7) {
            0 => {
                let (t, u) = (self.set_term(env), self.set_term(env));
                let set = SetTerm::pair(t.clone(), u.clone());
                if self.coin() {
                    (rep(&t, &set, ProofTerm::inl(refl(&t))), t, set)
                } else {
                    (rep(&u, &set, ProofTerm::inr(refl(&u))), u, set)
                }
            }
            1 => {
                let t = self.set_term(env);
                let set = SetTerm::power(t.clone());
                let x = self.name("x");
                let body = ProofTerm::fo_lam(
                    "b",
                    ProofTerm::lam(x.clone(), Formula::member(SetTerm::var("b"), t.clone()), ProofTerm::var(x)),
                );
                (rep(&t, &set, body), t, set)
            }
            2 => (numeral_rep(k), kv, omega),
            3 => {
                // k ∈ ∪{ω, ω}
                let pair = SetTerm::pair(omega.clone(), omega.clone());
                let set = SetTerm::union(pair.clone());
                let in_pair = rep(&omega, &pair, ProofTerm::inl(refl(&omega)));
                let body = ProofTerm::witness(omega.clone(), ProofTerm::pair(in_pair, numeral_rep(k)));
                (rep(&kv, &set, body), kv, set)
            }
            4 => {
                let set = SetTerm::sep("x", Formula::member(SetTerm::var("x"), omega.clone()), omega.clone());
                (rep(&kv, &set, ProofTerm::pair(numeral_rep(k), numeral_rep(k))), kv, set)
            }
            5 => {
                // k ∈ repl[x y : y = x](ω)
                let (x, y) = (SetTerm::var("x"), SetTerm::var("y"));
                let set = SetTerm::repl("x", "y", eq(&y, &x), omega.clone());
                let (h, q) = (self.name("h"), self.name("q"));
                let total = ProofTerm::fo_lam(
                    "x",
                    ProofTerm::lam(
                        h,
                        Formula::member(x.clone(), omega.clone()),
                        ProofTerm::witness(
                            x.clone(),
                            ProofTerm::pair(
                                refl(&x),
                                ProofTerm::fo_lam("e", ProofTerm::lam(q.clone(), eq(&SetTerm::var("e"), &x), ProofTerm::var(q))),
                            ),
                        ),
                    ),
                );
                let hit = ProofTerm::witness(kv.clone(), ProofTerm::pair(numeral_rep(k), refl(&kv)));
                (rep(&kv, &set, ProofTerm::pair(total, hit)), kv, set)
            }
            _ => {
                // through the instantiated PAIR axiom: snd (ax t u t) (inl refl)
                let (t, u) = (self.set_term(env), self.set_term(env));
                let ax = axiom_proof(&th, &AxiomSpec::ctor(ctor::PAIR)).unwrap();
                let inst = ProofTerm::fo_app(ProofTerm::fo_app(ProofTerm::fo_app(ax, t.clone()), u.clone()), t.clone());
                let set = SetTerm::pair(t.clone(), u);
                (ProofTerm::app(ProofTerm::snd(inst), ProofTerm::inl(refl(&t))), t, set)
            }
        };
        let goal = Formula::member(t, set);
        (annotate(&th, &ctx, &m, Some(&goal)), goal)
    }

    /// `fst (ax t⃗ c) M` or the membership itself, through an instantiated axiom.
    fn axiom_elim(&mut self, env: &Env) -> ProofTerm {
        let (mem, phi) = self.membership_typed(env);
        let Formula::Member(t, set) = &phi else { unreachable!() };
        let inst = set.as_ctor().unwrap();
        if !inst.params.is_empty() {
            return ProofTerm::ax_prop(inst.clone(), t.clone(), mem);
        }
        let ax = axiom_proof(&self.theory, &AxiomSpec::ctor(&inst.name)).unwrap();
        let applied = inst.args.iter().chain(std::iter::once(t)).fold(ax, |m, a| ProofTerm::fo_app(m, a.clone()));
        ProofTerm::app(ProofTerm::fst(applied), mem)
    }
}

fn closed_subterms(phi: &Formula, out: &mut Vec<SetTerm>) {
    fn term(t: &SetTerm, out: &mut Vec<SetTerm>) {
        if t.free_fo().is_empty() {
            out.push(t.clone());
        }
        if let SetTerm::Ctor(c) = t {
            c.args.iter().for_each(|a| term(a, out));
        }
    }
    match phi {
        Formula::Bottom => {}
        Formula::Member(l, r) => {
            term(l, out);
            term(r, out);
        }
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            closed_subterms(l, out);
            closed_subterms(r, out);
        }
        Formula::Forall(_, b) | Formula::Exists(_, b) => closed_subterms(b, out),
    }
}

/// Replace a random selection of the occurrences of the closed term `t` by `a`.
fn abstract_formula(phi: &Formula, t: &SetTerm, a: &str, rng: &mut ChaCha8Rng) -> Formula {
    let f = |p: &Formula, rng: &mut ChaCha8Rng| Box::new(abstract_formula(p, t, a, rng));
    match phi {
        Formula::Bottom => Formula::Bottom,
        Formula::Member(l, r) => Formula::Member(abstract_term(l, t, a, rng), abstract_term(r, t, a, rng)),
        Formula::And(l, r) => Formula::And(f(l, rng), f(r, rng)),
        Formula::Or(l, r) => Formula::Or(f(l, rng), f(r, rng)),
        Formula::Implies(l, r) => Formula::Implies(f(l, rng), f(r, rng)),
        Formula::Forall(x, b) => Formula::Forall(x.clone(), f(b, rng)),
        Formula::Exists(x, b) => Formula::Exists(x.clone(), f(b, rng)),
    }
}

fn abstract_term(s: &SetTerm, t: &SetTerm, a: &str, rng: &mut ChaCha8Rng) -> SetTerm {
    if s == t && rng.gen_bool(0.6) {
        return SetTerm::var(a);
    }
    match s {
        SetTerm::Var(_) => s.clone(),
        SetTerm::Ctor(c) => SetTerm::Ctor(CtorInstance {
            name: c.name.clone(),
            params: c
                .params
                .iter()
                .map(|p| FormulaParam { binders: p.binders.clone(), body: abstract_formula(&p.body, t, a, rng) })
                .collect(),
            args: c.args.iter().map(|x| abstract_term(x, t, a, rng)).collect(),
        }),
    }
}

const FUEL: usize = 20_000;

/// Walk the lazy trace of the closed `m : phi`, checking Subject Reduction at
/// every step, Progress at every state and Canonical Forms at the value. The
/// closed parts of the value are walked in turn. Returns the steps taken.
pub fn walk(th: &Theory, m: &ProofTerm, phi: &Formula) -> Result<usize, String> {
    let ctx = Context::new();
    let mut cur = m.clone();
    let mut steps = 0;
    for i in 0..FUEL {
        if let Err(e) = check(th, &ctx, &cur, phi) {
            return Err(format!("subject reduction fails after {i} step(s): {e}\nstart {m:?}\nnow {cur:?}"));
        }
        let plain = step(&cur);
        match step_annotated(&cur) {
            StepOutcome::Stepped(next) => {
                let StepOutcome::Stepped(erased) = plain else {
                    return Err(format!("step and step_annotated disagree on {cur:?}"));
                };
                if !alpha_equal(&erased, &next.erase_ascriptions()) || is_value(&cur) {
                    return Err(format!("erasure does not commute with the step from {cur:?}"));
                }
                steps += 1;
                cur = next;
            }
            StepOutcome::Value => {
                if plain != StepOutcome::Value || !is_value(&cur) {
                    return Err(format!("value mismatch at {cur:?}"));
                }
                canonical(th, cur.peel(), phi)?;
                for (part, f) in closed_parts(th, cur.peel(), phi) {
                    steps += walk(th, &part, &f)?;
                }
                return Ok(steps);
            }
            StepOutcome::Stuck(reason) => return Err(format!("progress fails: {reason}\n{cur:?}")),
        }
    }
    Err(format!("no value within {FUEL} steps: {m:?}"))
}

/// The clause of Canonical Forms selected by the head of `phi`.
pub fn canonical(th: &Theory, v: &ProofTerm, phi: &Formula) -> Result<(), String> {
    let ctx = Context::new();
    let ok = |m: &ProofTerm, f: &Formula| check(th, &ctx, m, f).is_ok();
    let holds = match (phi, v) {
        (Formula::Member(t, set), ProofTerm::AxRep(inst, u, n)) => {
            alpha_equal(&inst.to_term(), set) && alpha_equal(t, u) && th.phi_a(inst, t).is_ok_and(|f| ok(n, &f))
        }
        (Formula::Or(l, _), ProofTerm::Inl(n)) => ok(n, l),
        (Formula::Or(_, r), ProofTerm::Inr(n)) => ok(n, r),
        (Formula::And(l, r), ProofTerm::Pair(n, o)) => ok(n, l) && ok(o, r),
        (Formula::Implies(l, r), ProofTerm::Lam(x, a, n)) => {
            alpha_equal(a, l) && check(th, &ctx.clone().with(x.clone(), a.clone()), n, r).is_ok()
        }
        (Formula::Forall(a, body), ProofTerm::FoLam(b, n)) => ok(n, &subst_fo(&**body, a, &SetTerm::var(b.clone()))),
        (Formula::Exists(a, body), ProofTerm::Witness(t, n)) => ok(n, &subst_fo(&**body, a, t)),
        _ => false,
    };
    if holds {
        Ok(())
    } else {
        Err(format!("canonical forms fails for {phi:?}: {v:?}"))
    }
}

fn closed_parts(th: &Theory, v: &ProofTerm, phi: &Formula) -> Vec<(ProofTerm, Formula)> {
    match (phi, v) {
        (Formula::Member(t, _), ProofTerm::AxRep(inst, _, n)) => {
            th.phi_a(inst, t).map(|f| vec![((**n).clone(), f)]).unwrap_or_default()
        }
        (Formula::Or(l, _), ProofTerm::Inl(n)) => vec![((**n).clone(), (**l).clone())],
        (Formula::Or(_, r), ProofTerm::Inr(n)) => vec![((**n).clone(), (**r).clone())],
        (Formula::And(l, r), ProofTerm::Pair(n, o)) => {
            vec![((**n).clone(), (**l).clone()), ((**o).clone(), (**r).clone())]
        }
        (Formula::Exists(a, body), ProofTerm::Witness(t, n)) => vec![((**n).clone(), subst_fo(&**body, a, t))],
        _ => vec![],
    }
}

const VARS: [&str; 5] = ["a", "b", "c", "d", "x"];

pub fn var_name() -> impl Strategy<Value = &'static str> {
    proptest::sample::select(&VARS[..])
}

/// Set terms over a handful of names, with binders drawn from the same names.
pub fn set_term_strategy() -> impl Strategy<Value = SetTerm> {
    let leaf = prop_oneof![
        4 => var_name().prop_map(SetTerm::var),
        1 => Just(SetTerm::empty()),
        1 => Just(SetTerm::omega()),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| SetTerm::pair(l, r)),
            inner.clone().prop_map(SetTerm::union),
            inner.clone().prop_map(SetTerm::power),
            (var_name(), inner.clone(), inner.clone())
                .prop_map(|(v, s, t)| SetTerm::sep(v, Formula::member(SetTerm::var(v), s), t)),
            (var_name(), var_name(), inner.clone(), inner)
                .prop_filter("distinct binders", |(x, y, _, _)| x != y)
                .prop_map(|(x, y, s, t)| {
                    let body = Formula::and(
                        Formula::member(SetTerm::var(x), SetTerm::var(y)),
                        Formula::member(SetTerm::var(y), s),
                    );
                    SetTerm::Ctor(CtorInstance::new(
                        ctor::REPL,
                        vec![FormulaParam { binders: vec![x.into(), y.into()], body }],
                        vec![t],
                    ))
                }),
        ]
    })
}

pub fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::Bottom),
        4 => (set_term_strategy(), set_term_strategy()).prop_map(|(l, r)| Formula::member(l, r)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::implies(l, r)),
            (var_name(), inner.clone()).prop_map(|(v, b)| Formula::forall(v, b)),
            (var_name(), inner).prop_map(|(v, b)| Formula::exists(v, b)),
        ]
    })
}

/// One instance of `φ[a:=t][b:=u[a:=t]] = φ[b:=u][a:=t]`; `None` when the side
/// conditions `a ≠ b` and `b ∉ FV(t)` fail.
pub fn substitution_commutes(phi: &Formula, t: &SetTerm, u: &SetTerm, a: &str, b: &str) -> Option<bool> {
    if a == b || t.free_fo().contains(b) {
        return None;
    }
    let left = subst_fo(&subst_fo(phi, a, t), b, &subst_fo(u, a, t));
    let right = subst_fo(&subst_fo(phi, b, u), a, t);
    Some(alpha_equal(&left, &right))
}
