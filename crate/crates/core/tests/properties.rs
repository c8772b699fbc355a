mod common;

use common::{formula_strategy, set_term_strategy, substitution_commutes, var_name, walk, Env, Gen};
use lambdaz::checker::{check, synthesize, Context};
use lambdaz::syntax::{alpha_equal, subst_fo, subst_proof, Formula, FreeVars, SetTerm};
use proptest::prelude::*;

#[test]
fn generated_terms_are_closed_and_well_typed() {
    let mut g = Gen::new(7);
    for _ in 0..200 {
        let (m, phi) = g.closed(4);
        assert!(m.free_vars().is_empty(), "{m:?}");
        assert!(check(g.theory(), &Context::new(), &m, &phi).is_ok());
    }
}

#[test]
fn subject_reduction_progress_canonical_forms() {
    let mut g = Gen::new(2024);
    let th = g.theory().clone();
    let (mut count, mut steps) = (0, 0);
    for i in 0..1200 {
        let (m, phi) = g.closed(1 + i % 5);
        steps += walk(&th, &m, &phi).unwrap_or_else(|e| panic!("{e}"));
        count += 1;
    }
    assert!(count >= 1000);
    // the suite must exercise reduction, not only values
    assert!(steps > 2 * count, "only {steps} steps");
}

#[test]
fn weakening() {
    let mut g = Gen::new(11);
    for _ in 0..300 {
        let env = Env::default().with_fo("a_0").with_hyp("h_0", Formula::member(SetTerm::var("a_0"), SetTerm::omega()));
        let (m, phi) = g.proof(&env, 3);
        let psi = g.formula(&env, 2);
        let wider = env.with_hyp("fresh_h", psi).context();
        let again = synthesize(g.theory(), &wider, &m).unwrap();
        assert!(alpha_equal(&again, &phi));
    }
}

#[test]
fn proof_substitution() {
    let mut g = Gen::new(12);
    for _ in 0..300 {
        let (n, phi) = g.closed(2);
        let env = Env::default().with_hyp("x_0", phi);
        let (m, psi) = g.proof(&env, 3);
        let subst = subst_proof(&m, "x_0", &n);
        if let Err(e) = check(g.theory(), &Context::new(), &subst, &psi) {
            panic!("{e}\n{m:?}\n{n:?}");
        }
    }
}

#[test]
fn first_order_substitution() {
    let mut g = Gen::new(13);
    for _ in 0..300 {
        let hyp = g.formula(&Env::default().with_fo("a_0"), 2);
        let env = Env::default().with_fo("a_0").with_hyp("h_0", hyp);
        let (m, phi) = g.proof(&env, 3);
        let t = g.closed_term();
        let ctx = env.context().subst_fo("a_0", &t);
        let moved = subst_fo(&m, "a_0", &t);
        if let Err(e) = check(g.theory(), &ctx, &moved, &subst_fo(&phi, "a_0", &t)) {
            panic!("{e}\n{m:?} with a_0 := {t:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn substitution_commutes_when_b_not_free_in_t(
        phi in formula_strategy(),
        t in set_term_strategy(),
        u in set_term_strategy(),
        a in var_name(),
        b in var_name(),
    ) {
        let result = substitution_commutes(&phi, &t, &u, a, b);
        prop_assume!(result.is_some());
        prop_assert!(result.unwrap());
    }
}
