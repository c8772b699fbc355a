//! Hand-built proofs about the expanded equality. There is no Leibniz rule, so
//! each of these is an explicit term over the comprehension axioms.
//!
//! Every builder takes its hypotheses as proof terms and wraps them in a
//! β-redex `(λe : t = u. …) p`, so the result synthesizes whenever `p` checks.

use crate::syntax::{
    eq, fresh, numeral, succ, Branch, CtorInstance, Formula, FreeVars, Name, ProofTerm,
    SetTerm,
};

fn p(name: &str) -> ProofTerm {
    ProofTerm::var(name)
}

fn fo(name: &Name) -> SetTerm {
    SetTerm::var(name.clone())
}

/// Names not free in any of `terms`.
fn fresh_names<const N: usize>(bases: [&str; N], terms: &[&SetTerm]) -> [Name; N] {
    let mut used: Vec<Name> = terms.iter().flat_map(|t| t.free_fo()).collect();
    bases.map(|b| {
        let n = fresh(b, used.iter());
        used.push(n.clone());
        n
    })
}

fn ctor_of(t: &SetTerm) -> CtorInstance {
    t.as_ctor().expect("constructor term").clone()
}

/// `t = t`
pub fn refl(t: &SetTerm) -> ProofTerm {
    let [z] = fresh_names(["z"], &[t]);
    let mem = Formula::member(fo(&z), t.clone());
    ProofTerm::fo_lam(
        z,
        ProofTerm::pair(ProofTerm::lam("x", mem.clone(), p("x")), ProofTerm::lam("x", mem, p("x"))),
    )
}

/// `u = t` from `proof : t = u`
pub fn sym(t: &SetTerm, u: &SetTerm, proof: ProofTerm) -> ProofTerm {
    let [z] = fresh_names(["z"], &[t, u]);
    let ez = ProofTerm::fo_app(p("e"), fo(&z));
    let body = ProofTerm::fo_lam(z, ProofTerm::pair(ProofTerm::snd(ez.clone()), ProofTerm::fst(ez)));
    ProofTerm::app(ProofTerm::lam("e", eq(t, u), body), proof)
}

/// `t = s` from `tu : t = u` and `us : u = s`
pub fn trans(t: &SetTerm, u: &SetTerm, s: &SetTerm, tu: ProofTerm, us: ProofTerm) -> ProofTerm {
    let [z] = fresh_names(["z"], &[t, u, s]);
    let zv = fo(&z);
    let e1 = ProofTerm::fo_app(p("e1"), zv.clone());
    let e2 = ProofTerm::fo_app(p("e2"), zv.clone());
    let fwd = ProofTerm::lam(
        "x",
        Formula::member(zv.clone(), t.clone()),
        ProofTerm::app(ProofTerm::fst(e2.clone()), ProofTerm::app(ProofTerm::fst(e1.clone()), p("x"))),
    );
    let bwd = ProofTerm::lam(
        "x",
        Formula::member(zv, s.clone()),
        ProofTerm::app(ProofTerm::snd(e1), ProofTerm::app(ProofTerm::snd(e2), p("x"))),
    );
    let body = ProofTerm::lam(
        "e1",
        eq(t, u),
        ProofTerm::lam("e2", eq(u, s), ProofTerm::fo_lam(z, ProofTerm::pair(fwd, bwd))),
    );
    ProofTerm::app(ProofTerm::app(body, tu), us)
}

/// `a ∈ {a, b}` or `b ∈ {a, b}`
fn pair_member(a: &SetTerm, b: &SetTerm, left: bool) -> ProofTerm {
    let set = SetTerm::pair(a.clone(), b.clone());
    let (member, inj): (&SetTerm, fn(ProofTerm) -> ProofTerm) =
        if left { (a, ProofTerm::inl) } else { (b, ProofTerm::inr) };
    ProofTerm::ax_rep(ctor_of(&set), member.clone(), inj(refl(member)))
}

/// `∀z. z ∈ S(t) → z ∈ S(u)` from `proof : t = u`
pub fn succ_subset(t: &SetTerm, u: &SetTerm, proof: ProofTerm) -> ProofTerm {
    let [z, b] = fresh_names(["z", "b"], &[t, u]);
    let (zv, bv) = (fo(&z), fo(&b));
    let tt = SetTerm::pair(t.clone(), t.clone());
    let pt = SetTerm::pair(t.clone(), tt.clone());
    let uu = SetTerm::pair(u.clone(), u.clone());
    let (st, su) = (succ(t.clone()), succ(u.clone()));

    // z ∈ ∪{u, {u, u}} through the member `w` of {u, {u, u}}
    let into_su = |w: SetTerm, w_in_pu: ProofTerm, z_in_w: ProofTerm| {
        ProofTerm::ax_rep(ctor_of(&su), zv.clone(), ProofTerm::witness(w, ProofTerm::pair(w_in_pu, z_in_w)))
    };
    let z_in_b = ProofTerm::snd(p("k"));
    let on = |eqn: &str| ProofTerm::fo_app(p(eqn), zv.clone());

    // b = t: z ∈ t, hence z ∈ u
    let left = into_su(
        u.clone(),
        pair_member(u, &uu, true),
        ProofTerm::app(
            ProofTerm::fst(on("e")),
            ProofTerm::app(ProofTerm::fst(on("l")), z_in_b.clone()),
        ),
    );

    // b = {t, t}: z = t, hence z = u and z ∈ {u, u}
    let z_in_tt = ProofTerm::app(ProofTerm::fst(on("r")), z_in_b);
    let zt = eq(&zv, t);
    let z_eq_t = ProofTerm::case(
        ProofTerm::ax_prop(ctor_of(&tt), zv.clone(), z_in_tt),
        Branch::new("q", zt.clone(), p("q")),
        Branch::new("q", zt, p("q")),
    );
    let z_in_uu = ProofTerm::ax_rep(
        ctor_of(&uu),
        zv.clone(),
        ProofTerm::inl(trans(&zv, t, u, z_eq_t, p("e"))),
    );
    let right = into_su(uu.clone(), pair_member(u, &uu, false), z_in_uu);

    let split = ProofTerm::case(
        ProofTerm::ax_prop(ctor_of(&pt), bv.clone(), ProofTerm::fst(p("k"))),
        Branch::new("l", eq(&bv, t), left),
        Branch::new("r", eq(&bv, &tt), right),
    );
    let unpacked = ProofTerm::let_in(
        b,
        "k",
        Formula::and(Formula::member(bv.clone(), pt), Formula::member(zv.clone(), bv)),
        ProofTerm::ax_prop(ctor_of(&st), zv.clone(), p("h")),
        split,
    );
    let body = ProofTerm::fo_lam(z, ProofTerm::lam("h", Formula::member(zv, st), unpacked));
    ProofTerm::app(ProofTerm::lam("e", eq(t, u), body), proof)
}

/// `S(t) = S(u)` from `proof : t = u`
pub fn succ_cong(t: &SetTerm, u: &SetTerm, proof: ProofTerm) -> ProofTerm {
    let [z] = fresh_names(["z"], &[t, u]);
    let zv = fo(&z);
    let fwd = ProofTerm::fo_app(succ_subset(t, u, p("e")), zv.clone());
    let bwd = ProofTerm::fo_app(succ_subset(u, t, sym(t, u, p("e"))), zv);
    let body = ProofTerm::fo_lam(z, ProofTerm::pair(fwd, bwd));
    ProofTerm::app(ProofTerm::lam("e", eq(t, u), body), proof)
}

/// `t₀ = n̄` from the equations `tᵢ = S(tᵢ₊₁)` and the final `tₙ = 0`.
pub fn numeral_equation(chain: &[SetTerm], equations: &[ProofTerm]) -> ProofTerm {
    assert_eq!(chain.len(), equations.len(), "one equation per chain element");
    let n = chain.len() - 1;
    let mut acc = equations[n].clone();
    for i in (0..n).rev() {
        // acc : tᵢ₊₁ = numeral(n - i - 1)
        let prev = numeral(n - i - 1);
        let step = succ_cong(&chain[i + 1], &prev, acc);
        acc = trans(&chain[i], &succ(chain[i + 1].clone()), &succ(prev), equations[i].clone(), step);
    }
    acc
}

/// `numeral(k) ∈ ω` built directly with `infRep`.
pub fn numeral_rep(k: usize) -> ProofTerm {
    let omega = ctor_of(&SetTerm::omega());
    let mut proof = ProofTerm::ax_rep(omega.clone(), numeral(0), ProofTerm::inl(refl(&numeral(0))));
    for i in 0..k {
        let next = numeral(i + 1);
        let body = ProofTerm::inr(ProofTerm::witness(numeral(i), ProofTerm::pair(proof, refl(&next))));
        proof = ProofTerm::ax_rep(omega.clone(), next, body);
    }
    proof
}

/// `numeral(k) ∈ ω` as an application of the instantiated INF axiom `ax`,
/// which must prove `∀c. c ∈ ω ↔ φ_ω(c)`.
pub fn numeral_via_axiom(ax: &ProofTerm, k: usize) -> ProofTerm {
    let rep = |t: SetTerm, body: ProofTerm| ProofTerm::app(ProofTerm::snd(ProofTerm::fo_app(ax.clone(), t)), body);
    let mut proof = rep(numeral(0), ProofTerm::inl(refl(&numeral(0))));
    for i in 0..k {
        let next = numeral(i + 1);
        let body = ProofTerm::inr(ProofTerm::witness(numeral(i), ProofTerm::pair(proof, refl(&next))));
        proof = rep(next, body);
    }
    proof
}
