//! The two non-normalizing examples: Crabbé's term, which is typable in
//! IZF_R⁻ but not strongly normalizing, and the looping proof of `d ∈ d` in
//! the two-axiom theory of [`nonwf_theory`](crate::theory::nonwf_theory).

use crate::syntax::{not, Formula, ProofTerm, SetTerm};

fn p(name: &str) -> ProofTerm {
    ProofTerm::var(name)
}

#[derive(Clone, Debug)]
pub struct Crabbe {
    /// `{x ∈ 0 | x ∈ x → ⊥}`
    pub t: SetTerm,
    /// `λy : t ∈ t. snd(sepProp(t, 0, y)) y`, proving `t ∈ t → ⊥`
    pub n: ProofTerm,
    /// `λx : t ∈ 0. N (sepRep(t, 0, <x, N>))`, proving `t ∈ 0 → ⊥`
    pub m: ProofTerm,
}

impl Crabbe {
    pub fn n_type(&self) -> Formula {
        not(Formula::member(self.t.clone(), self.t.clone()))
    }

    pub fn m_type(&self) -> Formula {
        not(Formula::member(self.t.clone(), SetTerm::empty()))
    }
}

pub fn crabbe() -> Crabbe {
    let x = SetTerm::var("x");
    let t = SetTerm::sep("x", not(Formula::member(x.clone(), x)), SetTerm::empty());
    let sep = t.as_ctor().expect("sep term").clone();
    let n = ProofTerm::lam(
        "y",
        Formula::member(t.clone(), t.clone()),
        ProofTerm::app(ProofTerm::snd(ProofTerm::ax_prop(sep.clone(), t.clone(), p("y"))), p("y")),
    );
    let m = ProofTerm::lam(
        "x",
        Formula::member(t.clone(), SetTerm::empty()),
        ProofTerm::app(
            n.clone(),
            ProofTerm::ax_rep(sep, t.clone(), ProofTerm::pair(p("x"), n.clone())),
        ),
    );
    Crabbe { t, n, m }
}

#[derive(Clone, Debug)]
pub struct NonWf {
    /// The proof of `d ∈ c`.
    pub dc: ProofTerm,
    /// `λx : d ∈ d. snd(dProp(d, x)) x`, proving `d ∈ d → d ∈ d`
    pub o: ProofTerm,
    /// `O (dRep(d, <N, O>))`, proving `d ∈ d`
    pub m: ProofTerm,
}

impl NonWf {
    pub fn c() -> SetTerm {
        SetTerm::constant("c")
    }

    pub fn d() -> SetTerm {
        SetTerm::constant("d")
    }

    pub fn dc_type() -> Formula {
        Formula::member(Self::d(), Self::c())
    }

    pub fn m_type() -> Formula {
        Formula::member(Self::d(), Self::d())
    }
}

pub fn nonwf() -> NonWf {
    let (c, d) = (NonWf::c(), NonWf::d());
    let (ci, di) = (c.as_ctor().unwrap().clone(), d.as_ctor().unwrap().clone());
    let z = SetTerm::var("z");
    let into_c = ProofTerm::lam(
        "y",
        Formula::member(z.clone(), d.clone()),
        ProofTerm::fst(ProofTerm::ax_prop(di.clone(), z.clone(), p("y"))),
    );
    let into_d = ProofTerm::lam(
        "y",
        Formula::member(z.clone(), c),
        ProofTerm::ax_rep(
            di.clone(),
            z.clone(),
            ProofTerm::pair(p("y"), ProofTerm::lam("w", Formula::member(z.clone(), z), p("w"))),
        ),
    );
    let dc = ProofTerm::ax_rep(ci, d.clone(), ProofTerm::fo_lam("z", ProofTerm::pair(into_c, into_d)));
    let o = ProofTerm::lam(
        "x",
        Formula::member(d.clone(), d.clone()),
        ProofTerm::app(ProofTerm::snd(ProofTerm::ax_prop(di.clone(), d.clone(), p("x"))), p("x")),
    );
    let m = ProofTerm::app(
        o.clone(),
        ProofTerm::ax_rep(di, d, ProofTerm::pair(dc.clone(), o.clone())),
    );
    NonWf { dc, o, m }
}
