//! Concrete syntax for kernel objects. Output parses back to an α-equal
//! object; `=`, numerals and `S` are re-sugared.

use std::fmt::Write;

use lambdaz::syntax::{
    ctor, is_eq, is_succ, numeral_value, CtorInstance, Formula, FormulaParam, IndSchema, ProofTerm, SetTerm,
};
use lambdaz::theory::{AxiomDescriptor, ParamSpec, Schema, Theory};

pub fn term(t: &SetTerm) -> String {
    let mut s = String::new();
    write_term(&mut s, t);
    s
}

pub fn formula(phi: &Formula) -> String {
    let mut s = String::new();
    write_formula(&mut s, phi, 0);
    s
}

pub fn proof(m: &ProofTerm) -> String {
    let mut s = String::new();
    write_proof(&mut s, m, 0);
    s
}

fn builtin_shape(inst: &CtorInstance, arity: usize, binders: Option<usize>) -> bool {
    inst.args.len() == arity
        && match binders {
            None => inst.params.is_empty(),
            Some(n) => inst.params.len() == 1 && inst.params[0].binders.len() == n,
        }
}

fn write_param(out: &mut String, p: &FormulaParam) {
    out.push('[');
    out.push_str(&p.binders.join(" "));
    out.push_str(" : ");
    write_formula(out, &p.body, 0);
    out.push(']');
}

fn write_terms(out: &mut String, ts: &[SetTerm]) {
    for (i, t) in ts.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_term(out, t);
    }
}

fn write_term(out: &mut String, t: &SetTerm) {
    let inst = match t {
        SetTerm::Var(x) => return out.push_str(x),
        SetTerm::Ctor(inst) => inst,
    };
    if let Some(n) = numeral_value(t) {
        let _ = write!(out, "{n}");
        return;
    }
    if let Some(pred) = is_succ(t) {
        out.push_str("S(");
        write_term(out, pred);
        out.push(')');
        return;
    }
    let name = inst.name.as_str();
    match name {
        ctor::EMPTY if builtin_shape(inst, 0, None) => out.push_str("empty"),
        ctor::OMEGA if builtin_shape(inst, 0, None) => out.push_str("omega"),
        ctor::PAIR if builtin_shape(inst, 2, None) => {
            out.push('{');
            write_terms(out, &inst.args);
            out.push('}');
        }
        ctor::UNION | ctor::POWER if builtin_shape(inst, 1, None) => {
            out.push_str(if name == ctor::UNION { "union " } else { "pow " });
            write_term(out, &inst.args[0]);
        }
        ctor::SEP | ctor::REPL if builtin_shape(inst, 1, Some(if name == ctor::SEP { 1 } else { 2 })) => {
            out.push_str(name);
            write_param(out, &inst.params[0]);
            out.push('(');
            write_term(out, &inst.args[0]);
            out.push(')');
        }
        _ => {
            out.push_str(name);
            for p in &inst.params {
                write_param(out, p);
            }
            out.push('(');
            write_terms(out, &inst.args);
            out.push(')');
        }
    }
}

// Formula levels: 0 implication and quantifiers, 1 disjunction, 2 conjunction,
// 3 atoms.
fn write_formula(out: &mut String, phi: &Formula, level: u8) {
    if let Some((t, u)) = is_eq(phi) {
        write_term(out, t);
        out.push_str(" = ");
        write_term(out, u);
        return;
    }
    let open = match phi {
        Formula::Bottom | Formula::Member(..) => false,
        Formula::And(..) => level > 2,
        Formula::Or(..) => level > 1,
        Formula::Implies(..) | Formula::Forall(..) | Formula::Exists(..) => level > 0,
    };
    if open {
        out.push('(');
    }
    match phi {
        Formula::Bottom => out.push_str("false"),
        Formula::Member(l, r) => {
            write_term(out, l);
            out.push_str(" in ");
            write_term(out, r);
        }
        Formula::And(l, r) => {
            write_formula(out, l, 2);
            out.push_str(" /\\ ");
            write_formula(out, r, 3);
        }
        Formula::Or(l, r) => {
            write_formula(out, l, 1);
            out.push_str(" \\/ ");
            write_formula(out, r, 2);
        }
        Formula::Implies(l, r) => {
            write_formula(out, l, 1);
            out.push_str(" -> ");
            write_formula(out, r, 0);
        }
        Formula::Forall(a, body) | Formula::Exists(a, body) => {
            out.push_str(if matches!(phi, Formula::Forall(..)) { "forall " } else { "exists " });
            out.push_str(a);
            out.push_str(". ");
            write_formula(out, body, 0);
        }
    }
    if open {
        out.push(')');
    }
}

fn write_ctor_spec(out: &mut String, inst: &CtorInstance) {
    out.push('{');
    out.push_str(&inst.name);
    for p in &inst.params {
        write_param(out, p);
    }
    out.push('}');
}

fn write_schema_binders(out: &mut String, schema: &IndSchema) {
    out.push('[');
    out.push_str(&schema.var);
    for p in &schema.params {
        out.push(' ');
        out.push_str(p);
    }
    out.push_str(" : ");
    write_formula(out, &schema.body, 0);
    out.push(']');
}

// Proof levels: 0 binders, 1 application, 2 prefix operators, 3 atoms.
fn write_proof(out: &mut String, m: &ProofTerm, level: u8) {
    let own = match m {
        ProofTerm::Lam(..) | ProofTerm::FoLam(..) | ProofTerm::Let { .. } => 0,
        ProofTerm::App(..) | ProofTerm::FoApp(..) => 1,
        ProofTerm::Fst(_) | ProofTerm::Snd(_) | ProofTerm::Inl(_) | ProofTerm::Inr(_) | ProofTerm::Magic(_) => 2,
        _ => 3,
    };
    let open = own < level;
    if open {
        out.push('(');
    }
    match m {
        ProofTerm::Var(x) => out.push_str(x),
        ProofTerm::App(f, a) => {
            write_proof(out, f, 1);
            out.push(' ');
            write_proof(out, a, 2);
        }
        ProofTerm::FoApp(f, t) => {
            write_proof(out, f, 1);
            out.push_str(" @ ");
            write_term(out, t);
        }
        ProofTerm::Lam(x, phi, body) => {
            let _ = write!(out, "fun ({x} : ");
            write_formula(out, phi, 0);
            out.push_str(") => ");
            write_proof(out, body, 0);
        }
        ProofTerm::FoLam(a, body) => {
            let _ = write!(out, "fun {a} => ");
            write_proof(out, body, 0);
        }
        ProofTerm::Pair(l, r) => {
            out.push('<');
            write_proof(out, l, 0);
            out.push_str(", ");
            write_proof(out, r, 0);
            out.push('>');
        }
        ProofTerm::Fst(n) | ProofTerm::Snd(n) | ProofTerm::Inl(n) | ProofTerm::Inr(n) | ProofTerm::Magic(n) => {
            out.push_str(match m {
                ProofTerm::Fst(_) => "fst ",
                ProofTerm::Snd(_) => "snd ",
                ProofTerm::Inl(_) => "inl ",
                ProofTerm::Inr(_) => "inr ",
                _ => "magic ",
            });
            write_proof(out, n, 2);
        }
        ProofTerm::Case(s, l, r) => {
            out.push_str("case ");
            write_proof(out, s, 0);
            out.push_str(" of { ");
            for (tag, b) in [("inl", l), ("inr", r)] {
                if tag == "inr" {
                    out.push_str(" | ");
                }
                let _ = write!(out, "{tag} ({} : ", b.var);
                write_formula(out, &b.formula, 0);
                out.push_str(") => ");
                write_proof(out, &b.body, 0);
            }
            out.push_str(" }");
        }
        ProofTerm::Witness(t, n) => {
            out.push('[');
            write_term(out, t);
            out.push_str(", ");
            write_proof(out, n, 0);
            out.push(']');
        }
        ProofTerm::Let { fo, var, formula: phi, head, body } => {
            let _ = write!(out, "let [{fo}, {var} : ");
            write_formula(out, phi, 0);
            out.push_str("] := ");
            write_proof(out, head, 0);
            out.push_str(" in ");
            write_proof(out, body, 0);
        }
        ProofTerm::AxRep(inst, t, n) | ProofTerm::AxProp(inst, t, n) => {
            out.push_str(if matches!(m, ProofTerm::AxRep(..)) { "axrep" } else { "axprop" });
            write_ctor_spec(out, inst);
            out.push('(');
            write_term(out, t);
            if !inst.args.is_empty() {
                out.push_str("; ");
                write_terms(out, &inst.args);
            }
            out.push_str(")(");
            write_proof(out, n, 0);
            out.push(')');
        }
        ProofTerm::Ind(schema, args, n) => {
            out.push_str("ind");
            write_schema_binders(out, schema);
            out.push('(');
            write_terms(out, args);
            out.push_str(")(");
            write_proof(out, n, 0);
            out.push(')');
        }
        ProofTerm::Ascribe(n, phi) => {
            out.push('(');
            write_proof(out, n, 0);
            out.push_str(" : ");
            write_formula(out, phi, 0);
            out.push(')');
        }
    }
    if open {
        out.push(')');
    }
}

fn write_schema(out: &mut String, s: &Schema, level: u8) {
    let as_formula = |s: &Schema| -> Option<Formula> {
        fn go(s: &Schema) -> Option<Formula> {
            Some(match s {
                Schema::Bottom => Formula::Bottom,
                Schema::Member(l, r) => Formula::member(l.clone(), r.clone()),
                Schema::And(l, r) => Formula::and(go(l)?, go(r)?),
                Schema::Or(l, r) => Formula::or(go(l)?, go(r)?),
                Schema::Implies(l, r) => Formula::implies(go(l)?, go(r)?),
                Schema::Forall(a, b) => Formula::forall(a.clone(), go(b)?),
                Schema::Exists(a, b) => Formula::exists(a.clone(), go(b)?),
                Schema::Carried(_) => return None,
            })
        }
        go(s)
    };
    if let Some(f) = as_formula(s) {
        return write_formula(out, &f, level);
    }
    let open = match s {
        Schema::And(..) => level > 2,
        Schema::Or(..) => level > 1,
        Schema::Implies(..) | Schema::Forall(..) | Schema::Exists(..) => level > 0,
        _ => false,
    };
    if open {
        out.push('(');
    }
    match s {
        Schema::And(l, r) => {
            write_schema(out, l, 2);
            out.push_str(" /\\ ");
            write_schema(out, r, 3);
        }
        Schema::Or(l, r) => {
            write_schema(out, l, 1);
            out.push_str(" \\/ ");
            write_schema(out, r, 2);
        }
        Schema::Implies(l, r) => {
            write_schema(out, l, 1);
            out.push_str(" -> ");
            write_schema(out, r, 0);
        }
        Schema::Forall(a, b) | Schema::Exists(a, b) => {
            out.push_str(if matches!(s, Schema::Forall(..)) { "forall " } else { "exists " });
            out.push_str(a);
            out.push_str(". ");
            write_schema(out, b, 0);
        }
        Schema::Carried(ts) => {
            out.push_str("$(");
            write_terms(out, ts);
            out.push(')');
        }
        Schema::Bottom | Schema::Member(..) => unreachable!("handled as formulas"),
    }
    if open {
        out.push(')');
    }
}

pub fn descriptor(d: &AxiomDescriptor) -> String {
    let mut out = format!("axiom {}[{}", d.name, d.member);
    for a in &d.args {
        out.push(' ');
        out.push_str(a);
    }
    out.push_str(" : ");
    write_schema(&mut out, &d.schema, 0);
    let k = match d.params {
        ParamSpec::None => 0,
        ParamSpec::OneBinder => 1,
        ParamSpec::TwoBinders => 2,
    };
    let _ = write!(out, "]({k})");
    out
}

/// A theory in theory-file syntax.
pub fn theory(th: &Theory) -> String {
    let mut out = String::new();
    for d in &th.descriptors {
        out.push_str(&descriptor(d));
        out.push('\n');
    }
    if th.has_induction {
        out.push_str("induction\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_formula, parse_proof, parse_term, parse_theory};
    use lambdaz::fixtures::{crabbe, nonwf};
    use lambdaz::syntax::{alpha_equal, eq, numeral};
    use lambdaz::theory::{izf_r_minus, nonwf_theory};

    #[test]
    fn sugar_is_restored() {
        let (a, b) = (SetTerm::var("a"), SetTerm::var("b"));
        assert_eq!(formula(&eq(&a, &numeral(3))), "a = 3");
        assert_eq!(term(&lambdaz::syntax::succ(a.clone())), "S(a)");
        let f = Formula::implies(Formula::forall("x", Formula::Bottom), Formula::or(Formula::Bottom, Formula::and(Formula::Bottom, Formula::member(a, b))));
        assert_eq!(formula(&f), "(forall x. false) -> false \\/ false /\\ a in b");
    }

    #[test]
    fn fixtures_round_trip() {
        let th = izf_r_minus();
        let c = crabbe();
        for m in [&c.n, &c.m] {
            assert!(alpha_equal(&parse_proof(&proof(m), &th).unwrap(), m), "{}", proof(m));
        }
        assert_eq!(parse_term(&term(&c.t), &th).unwrap(), c.t);
        assert_eq!(parse_formula(&formula(&c.m_type()), &th).unwrap(), c.m_type());
        let th = nonwf_theory();
        let n = nonwf();
        for m in [&n.dc, &n.o, &n.m] {
            assert!(alpha_equal(&parse_proof(&proof(m), &th).unwrap(), m), "{}", proof(m));
        }
    }

    #[test]
    fn nested_application_parenthesized() {
        let th = izf_r_minus();
        let x = ProofTerm::var("x");
        let m = ProofTerm::app(x.clone(), ProofTerm::app(x.clone(), ProofTerm::fst(ProofTerm::app(x.clone(), x.clone()))));
        assert_eq!(proof(&m), "x (x fst (x x))");
        assert_eq!(parse_proof(&proof(&m), &th).unwrap(), m);
        let l = ProofTerm::app(ProofTerm::lam("y", Formula::Bottom, x.clone()), x);
        assert_eq!(proof(&l), "(fun (y : false) => x) x");
    }

    #[test]
    fn theories_round_trip() {
        for th in [izf_r_minus(), nonwf_theory()] {
            let text = theory(&th);
            let back = parse_theory(&text, &th.name).unwrap();
            assert_eq!(theory(&back), text);
            assert_eq!(back.has_induction, th.has_induction);
            assert!(back.validate().is_ok());
        }
    }
}
