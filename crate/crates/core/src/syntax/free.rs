use std::collections::BTreeSet;

use super::{CtorInstance, Formula, IndSchema, Name, ProofTerm, SetTerm};

/// Free variables, split by namespace.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Vars {
    pub fo: BTreeSet<Name>,
    pub proof: BTreeSet<Name>,
}

impl Vars {
    pub fn is_empty(&self) -> bool {
        self.fo.is_empty() && self.proof.is_empty()
    }
}

pub trait FreeVars {
    fn collect_free(&self, bound_fo: &mut Vec<Name>, bound_proof: &mut Vec<Name>, out: &mut Vars);

    fn free_vars(&self) -> Vars {
        let mut out = Vars::default();
        self.collect_free(&mut Vec::new(), &mut Vec::new(), &mut out);
        out
    }

    fn free_fo(&self) -> BTreeSet<Name> {
        self.free_vars().fo
    }

    fn is_fo_free(&self, name: &str) -> bool {
        self.free_vars().fo.contains(name)
    }
}

fn with_bound<R>(bound: &mut Vec<Name>, names: &[Name], f: impl FnOnce(&mut Vec<Name>) -> R) -> R {
    let depth = bound.len();
    bound.extend(names.iter().cloned());
    let r = f(bound);
    bound.truncate(depth);
    r
}

impl FreeVars for SetTerm {
    fn collect_free(&self, bf: &mut Vec<Name>, bp: &mut Vec<Name>, out: &mut Vars) {
        match self {
            SetTerm::Var(a) => {
                if !bf.contains(a) {
                    out.fo.insert(a.clone());
                }
            }
            SetTerm::Ctor(inst) => inst.collect_free(bf, bp, out),
        }
    }
}

impl FreeVars for CtorInstance {
    fn collect_free(&self, bf: &mut Vec<Name>, bp: &mut Vec<Name>, out: &mut Vars) {
        for param in &self.params {
            with_bound(bf, &param.binders, |bf| param.body.collect_free(bf, bp, out));
        }
        for arg in &self.args {
            arg.collect_free(bf, bp, out);
        }
    }
}

impl FreeVars for Formula {
    fn collect_free(&self, bf: &mut Vec<Name>, bp: &mut Vec<Name>, out: &mut Vars) {
        match self {
            Formula::Bottom => {}
            Formula::Member(l, r) => {
                l.collect_free(bf, bp, out);
                r.collect_free(bf, bp, out);
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_free(bf, bp, out);
                r.collect_free(bf, bp, out);
            }
            Formula::Forall(a, body) | Formula::Exists(a, body) => {
                with_bound(bf, std::slice::from_ref(a), |bf| body.collect_free(bf, bp, out))
            }
        }
    }
}

impl FreeVars for IndSchema {
    fn collect_free(&self, bf: &mut Vec<Name>, bp: &mut Vec<Name>, out: &mut Vars) {
        let mut names = vec![self.var.clone()];
        names.extend(self.params.iter().cloned());
        with_bound(bf, &names, |bf| self.body.collect_free(bf, bp, out));
    }
}

impl FreeVars for ProofTerm {
    fn collect_free(&self, bf: &mut Vec<Name>, bp: &mut Vec<Name>, out: &mut Vars) {
        use ProofTerm::*;
        match self {
            Var(x) => {
                if !bp.contains(x) {
                    out.proof.insert(x.clone());
                }
            }
            App(m, n) | Pair(m, n) => {
                m.collect_free(bf, bp, out);
                n.collect_free(bf, bp, out);
            }
            FoApp(m, t) => {
                m.collect_free(bf, bp, out);
                t.collect_free(bf, bp, out);
            }
            Lam(x, phi, m) => {
                phi.collect_free(bf, bp, out);
                with_bound(bp, std::slice::from_ref(x), |bp| m.collect_free(bf, bp, out));
            }
            FoLam(a, m) => {
                with_bound(bf, std::slice::from_ref(a), |bf| m.collect_free(bf, bp, out))
            }
            Fst(m) | Snd(m) | Inl(m) | Inr(m) | Magic(m) => m.collect_free(bf, bp, out),
            Case(m, l, r) => {
                m.collect_free(bf, bp, out);
                for br in [l, r] {
                    br.formula.collect_free(bf, bp, out);
                    with_bound(bp, std::slice::from_ref(&br.var), |bp| {
                        br.body.collect_free(bf, bp, out)
                    });
                }
            }
            Witness(t, m) => {
                t.collect_free(bf, bp, out);
                m.collect_free(bf, bp, out);
            }
            Let { fo, var, formula, head, body } => {
                head.collect_free(bf, bp, out);
                with_bound(bf, std::slice::from_ref(fo), |bf| {
                    formula.collect_free(bf, bp, out);
                    with_bound(bp, std::slice::from_ref(var), |bp| {
                        body.collect_free(bf, bp, out)
                    });
                });
            }
            AxRep(c, t, m) | AxProp(c, t, m) => {
                c.collect_free(bf, bp, out);
                t.collect_free(bf, bp, out);
                m.collect_free(bf, bp, out);
            }
            Ind(schema, args, m) => {
                schema.collect_free(bf, bp, out);
                for a in args {
                    a.collect_free(bf, bp, out);
                }
                m.collect_free(bf, bp, out);
            }
            Ascribe(m, phi) => {
                m.collect_free(bf, bp, out);
                phi.collect_free(bf, bp, out);
            }
        }
    }
}

/// A name based on `base` that is not in `used`. Deterministic: trailing
/// digits of `base` are dropped and the smallest free numeric suffix is taken.
pub fn fresh<'a, I>(base: &str, used: I) -> Name
where
    I: IntoIterator<Item = &'a Name>,
{
    let used: BTreeSet<&str> = used.into_iter().map(String::as_str).collect();
    if !used.contains(base) {
        return base.to_string();
    }
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|cand| !used.contains(cand.as_str()))
        .expect("unbounded suffix search")
}
