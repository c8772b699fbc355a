use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::{CtorInstance, Formula, IndSchema, Name, ProofTerm, SetTerm};

#[derive(Default)]
pub struct Env {
    fo: Vec<(Name, Name)>,
    proof: Vec<(Name, Name)>,
}

fn lookup(stack: &[(Name, Name)], name: &str, left: bool) -> Option<usize> {
    stack.iter().rposition(|(l, r)| if left { l == name } else { r == name })
}

fn var_eq(stack: &[(Name, Name)], a: &str, b: &str) -> bool {
    match (lookup(stack, a, true), lookup(stack, b, false)) {
        (None, None) => a == b,
        (Some(i), Some(j)) => i == j,
        _ => false,
    }
}

/// Structural equality up to renaming of bound variables.
pub trait AlphaEq {
    fn alpha_eq_in(&self, other: &Self, env: &mut Env) -> bool;
    fn alpha_hash_in(&self, env: &mut Vec<Name>, penv: &mut Vec<Name>, h: &mut DefaultHasher);
}

pub fn alpha_equal<T: AlphaEq + ?Sized>(left: &T, right: &T) -> bool {
    left.alpha_eq_in(right, &mut Env::default())
}

/// A hash that agrees on alpha-equivalent values.
pub fn alpha_hash<T: AlphaEq + ?Sized>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.alpha_hash_in(&mut Vec::new(), &mut Vec::new(), &mut h);
    h.finish()
}

fn hash_var(stack: &[Name], name: &str, h: &mut DefaultHasher) {
    match stack.iter().rposition(|n| n == name) {
        Some(i) => (0u8, stack.len() - i).hash(h),
        None => (1u8, name).hash(h),
    }
}

fn scoped<R>(stack: &mut Vec<Name>, names: &[Name], f: impl FnOnce(&mut Vec<Name>) -> R) -> R {
    let depth = stack.len();
    stack.extend(names.iter().cloned());
    let r = f(stack);
    stack.truncate(depth);
    r
}

impl AlphaEq for SetTerm {
    fn alpha_eq_in(&self, other: &Self, env: &mut Env) -> bool {
        match (self, other) {
            (SetTerm::Var(a), SetTerm::Var(b)) => var_eq(&env.fo, a, b),
            (SetTerm::Ctor(l), SetTerm::Ctor(r)) => l.alpha_eq_in(r, env),
            _ => false,
        }
    }

    fn alpha_hash_in(&self, env: &mut Vec<Name>, penv: &mut Vec<Name>, h: &mut DefaultHasher) {
        match self {
            SetTerm::Var(a) => hash_var(env, a, h),
            SetTerm::Ctor(inst) => inst.alpha_hash_in(env, penv, h),
        }
    }
}

impl AlphaEq for CtorInstance {
    fn alpha_eq_in(&self, other: &Self, env: &mut Env) -> bool {
        if self.name != other.name
            || self.params.len() != other.params.len()
            || self.args.len() != other.args.len()
        {
            return false;
        }
        let params_eq = self.params.iter().zip(&other.params).all(|(l, r)| {
            if l.binders.len() != r.binders.len() {
                return false;
            }
            let depth = env.fo.len();
            env.fo.extend(l.binders.iter().cloned().zip(r.binders.iter().cloned()));
            let eq = l.body.alpha_eq_in(&r.body, env);
            env.fo.truncate(depth);
            eq
        });
        params_eq && self.args.iter().zip(&other.args).all(|(l, r)| l.alpha_eq_in(r, env))
    }

    fn alpha_hash_in(&self, env: &mut Vec<Name>, penv: &mut Vec<Name>, h: &mut DefaultHasher) {
        (2u8, &self.name, self.params.len(), self.args.len()).hash(h);
        for p in &self.params {
            p.binders.len().hash(h);
            scoped(env, &p.binders, |env| p.body.alpha_hash_in(env, penv, h));
        }
        for a in &self.args {
            a.alpha_hash_in(env, penv, h);
        }
    }
}

impl AlphaEq for Formula {
    fn alpha_eq_in(&self, other: &Self, env: &mut Env) -> bool {
        use Formula::*;
        match (self, other) {
            (Bottom, Bottom) => true,
            (Member(a, b), Member(c, d)) => a.alpha_eq_in(c, env) && b.alpha_eq_in(d, env),
            (And(a, b), And(c, d)) | (Or(a, b), Or(c, d)) | (Implies(a, b), Implies(c, d)) => {
                a.alpha_eq_in(c, env) && b.alpha_eq_in(d, env)
            }
            (Forall(a, l), Forall(b, r)) | (Exists(a, l), Exists(b, r)) => {
                env.fo.push((a.clone(), b.clone()));
                let eq = l.alpha_eq_in(r, env);
                env.fo.pop();
                eq
            }
            _ => false,
        }
    }

    fn alpha_hash_in(&self, env: &mut Vec<Name>, penv: &mut Vec<Name>, h: &mut DefaultHasher) {
        use Formula::*;
        match self {
            Bottom => 10u8.hash(h),
            Member(a, b) => {
                11u8.hash(h);
                a.alpha_hash_in(env, penv, h);
                b.alpha_hash_in(env, penv, h);
            }
            And(a, b) | Or(a, b) | Implies(a, b) => {
                let tag: u8 = match self {
                    And(..) => 12,
                    Or(..) => 13,
                    _ => 14,
                };
                tag.hash(h);
                a.alpha_hash_in(env, penv, h);
                b.alpha_hash_in(env, penv, h);
            }
            Forall(a, body) | Exists(a, body) => {
                (if matches!(self, Forall(..)) { 15u8 } else { 16u8 }).hash(h);
                scoped(env, std::slice::from_ref(a), |env| body.alpha_hash_in(env, penv, h));
            }
        }
    }
}

impl AlphaEq for IndSchema {
    fn alpha_eq_in(&self, other: &Self, env: &mut Env) -> bool {
        if self.params.len() != other.params.len() {
            return false;
        }
        let depth = env.fo.len();
        env.fo.push((self.var.clone(), other.var.clone()));
        env.fo.extend(self.params.iter().cloned().zip(other.params.iter().cloned()));
        let eq = self.body.alpha_eq_in(&other.body, env);
        env.fo.truncate(depth);
        eq
    }

    fn alpha_hash_in(&self, env: &mut Vec<Name>, penv: &mut Vec<Name>, h: &mut DefaultHasher) {
        self.params.len().hash(h);
        let mut names = vec![self.var.clone()];
        names.extend(self.params.iter().cloned());
        scoped(env, &names, |env| self.body.alpha_hash_in(env, penv, h));
    }
}

impl AlphaEq for ProofTerm {
    fn alpha_eq_in(&self, other: &Self, env: &mut Env) -> bool {
        use ProofTerm::*;
        match (self, other) {
            (Var(x), Var(y)) => var_eq(&env.proof, x, y),
            (App(a, b), App(c, d)) | (Pair(a, b), Pair(c, d)) => {
                a.alpha_eq_in(c, env) && b.alpha_eq_in(d, env)
            }
            (FoApp(a, t), FoApp(b, u)) => a.alpha_eq_in(b, env) && t.alpha_eq_in(u, env),
            (Lam(x, phi, m), Lam(y, psi, n)) => {
                phi.alpha_eq_in(psi, env) && {
                    env.proof.push((x.clone(), y.clone()));
                    let eq = m.alpha_eq_in(n, env);
                    env.proof.pop();
                    eq
                }
            }
            (FoLam(a, m), FoLam(b, n)) => {
                env.fo.push((a.clone(), b.clone()));
                let eq = m.alpha_eq_in(n, env);
                env.fo.pop();
                eq
            }
            (Fst(a), Fst(b)) | (Snd(a), Snd(b)) | (Inl(a), Inl(b)) | (Inr(a), Inr(b))
            | (Magic(a), Magic(b)) => a.alpha_eq_in(b, env),
            (Case(m, l1, r1), Case(n, l2, r2)) => {
                m.alpha_eq_in(n, env)
                    && [(l1, l2), (r1, r2)].into_iter().all(|(a, b)| {
                        a.formula.alpha_eq_in(&b.formula, env) && {
                            env.proof.push((a.var.clone(), b.var.clone()));
                            let eq = a.body.alpha_eq_in(&b.body, env);
                            env.proof.pop();
                            eq
                        }
                    })
            }
            (Witness(t, m), Witness(u, n)) => t.alpha_eq_in(u, env) && m.alpha_eq_in(n, env),
            (
                Let { fo: a1, var: x1, formula: f1, head: h1, body: b1 },
                Let { fo: a2, var: x2, formula: f2, head: h2, body: b2 },
            ) => {
                h1.alpha_eq_in(h2, env) && {
                    env.fo.push((a1.clone(), a2.clone()));
                    env.proof.push((x1.clone(), x2.clone()));
                    let eq = f1.alpha_eq_in(f2, env) && b1.alpha_eq_in(b2, env);
                    env.fo.pop();
                    env.proof.pop();
                    eq
                }
            }
            (AxRep(c1, t1, m1), AxRep(c2, t2, m2)) | (AxProp(c1, t1, m1), AxProp(c2, t2, m2)) => {
                c1.alpha_eq_in(c2, env) && t1.alpha_eq_in(t2, env) && m1.alpha_eq_in(m2, env)
            }
            (Ind(s1, a1, m1), Ind(s2, a2, m2)) => {
                s1.alpha_eq_in(s2, env)
                    && a1.len() == a2.len()
                    && a1.iter().zip(a2).all(|(l, r)| l.alpha_eq_in(r, env))
                    && m1.alpha_eq_in(m2, env)
            }
            (Ascribe(m, phi), Ascribe(n, psi)) => m.alpha_eq_in(n, env) && phi.alpha_eq_in(psi, env),
            _ => false,
        }
    }

    fn alpha_hash_in(&self, env: &mut Vec<Name>, penv: &mut Vec<Name>, h: &mut DefaultHasher) {
        use ProofTerm::*;
        std::mem::discriminant(self).hash(h);
        match self {
            Var(x) => hash_var(penv, x, h),
            App(a, b) | Pair(a, b) => {
                a.alpha_hash_in(env, penv, h);
                b.alpha_hash_in(env, penv, h);
            }
            FoApp(a, t) => {
                a.alpha_hash_in(env, penv, h);
                t.alpha_hash_in(env, penv, h);
            }
            Lam(x, phi, m) => {
                phi.alpha_hash_in(env, penv, h);
                scoped(penv, std::slice::from_ref(x), |penv| m.alpha_hash_in(env, penv, h));
            }
            FoLam(a, m) => {
                scoped(env, std::slice::from_ref(a), |env| m.alpha_hash_in(env, penv, h));
            }
            Fst(a) | Snd(a) | Inl(a) | Inr(a) | Magic(a) => a.alpha_hash_in(env, penv, h),
            Case(m, l, r) => {
                m.alpha_hash_in(env, penv, h);
                for b in [l, r] {
                    b.formula.alpha_hash_in(env, penv, h);
                    scoped(penv, std::slice::from_ref(&b.var), |penv| {
                        b.body.alpha_hash_in(env, penv, h)
                    });
                }
            }
            Witness(t, m) => {
                t.alpha_hash_in(env, penv, h);
                m.alpha_hash_in(env, penv, h);
            }
            Let { fo, var, formula, head, body } => {
                head.alpha_hash_in(env, penv, h);
                scoped(env, std::slice::from_ref(fo), |env| {
                    formula.alpha_hash_in(env, penv, h);
                    scoped(penv, std::slice::from_ref(var), |penv| {
                        body.alpha_hash_in(env, penv, h)
                    });
                });
            }
            AxRep(c, t, m) | AxProp(c, t, m) => {
                c.alpha_hash_in(env, penv, h);
                t.alpha_hash_in(env, penv, h);
                m.alpha_hash_in(env, penv, h);
            }
            Ind(s, args, m) => {
                s.alpha_hash_in(env, penv, h);
                for a in args {
                    a.alpha_hash_in(env, penv, h);
                }
                m.alpha_hash_in(env, penv, h);
            }
            Ascribe(m, phi) => {
                m.alpha_hash_in(env, penv, h);
                phi.alpha_hash_in(env, penv, h);
            }
        }
    }
}
