//! Recursive-descent parser for terms, formulas, proofs, scripts and theory
//! files. Abbreviations are expanded as they are read.

use std::collections::{BTreeMap, BTreeSet};

use lambdaz::syntax::{
    ctor, eq, numeral, succ, Branch, CtorInstance, Formula, FormulaParam, IndSchema, Name, ProofTerm,
    SetTerm,
};
use lambdaz::theory::{AxiomDescriptor, ParamSpec, Schema, Theory};

use crate::lexer::{tokenize, ParseError, Pos, Tok, Token};

pub const KEYWORDS: &[&str] = &[
    "false", "in", "forall", "exists", "empty", "omega", "union", "pow", "sep", "repl", "fun", "fst",
    "snd", "inl", "inr", "case", "of", "let", "magic", "axrep", "axprop", "ind", "def", "check",
    "synth", "theory", "axiom", "induction",
];

fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

/// A named script definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Def {
    Term(SetTerm),
    Formula(Formula),
    Proof(ProofTerm),
}

impl Def {
    pub fn kind(&self) -> &'static str {
        match self {
            Def::Term(_) => "set term",
            Def::Formula(_) => "formula",
            Def::Proof(_) => "proof",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Check,
    Synth,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgment {
    pub pos: Pos,
    pub context: Vec<(Name, Formula)>,
    pub name: Name,
    pub goal: Option<Formula>,
    pub mode: Mode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Def { pos: Pos, name: Name, def: Def },
    Judgment(Judgment),
}

/// How the script names its theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheorySel {
    IzfRMinus,
    NonWf,
    File(String),
}

impl TheorySel {
    pub fn from_word(s: &str) -> TheorySel {
        match s {
            "izf-r-minus" => TheorySel::IzfRMinus,
            "nonwf" => TheorySel::NonWf,
            path => TheorySel::File(path.into()),
        }
    }
}

type PResult<T> = Result<T, ParseError>;

pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
    /// Zero-argument constructors written as bare identifiers.
    constants: BTreeSet<Name>,
    defs: BTreeMap<Name, Def>,
    fo_bound: Vec<Name>,
    proof_bound: Vec<Name>,
    /// Whether `$(…)` carried-formula applications are allowed.
    schema_mode: bool,
}

fn constants_of(theory: &Theory) -> BTreeSet<Name> {
    theory
        .descriptors
        .iter()
        .filter(|d| d.arity() == 0 && d.params == ParamSpec::None && !is_keyword(&d.name))
        .map(|d| d.name.clone())
        .collect()
}

fn schema_to_formula(s: Schema) -> Option<Formula> {
    let b = |s: Box<Schema>| schema_to_formula(*s);
    Some(match s {
        Schema::Bottom => Formula::Bottom,
        Schema::Member(l, r) => Formula::Member(l, r),
        Schema::And(l, r) => Formula::and(b(l)?, b(r)?),
        Schema::Or(l, r) => Formula::or(b(l)?, b(r)?),
        Schema::Implies(l, r) => Formula::implies(b(l)?, b(r)?),
        Schema::Forall(a, body) => Formula::forall(a, b(body)?),
        Schema::Exists(a, body) => Formula::exists(a, b(body)?),
        Schema::Carried(_) => return None,
    })
}

impl Parser {
    pub fn new(src: &str, theory: &Theory) -> PResult<Parser> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
            constants: constants_of(theory),
            defs: BTreeMap::new(),
            fo_bound: Vec::new(),
            proof_bound: Vec::new(),
            schema_mode: false,
        })
    }

    pub fn set_theory(&mut self, theory: &Theory) {
        self.constants = constants_of(theory);
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn here(&self) -> Pos {
        self.toks[self.pos].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError::new(self.here(), message))
    }

    fn unexpected<T>(&self, wanted: &str) -> PResult<T> {
        self.error(format!("expected {wanted}, found {}", self.peek()))
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    fn is_kw(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Ident(t) if t == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        let hit = self.is_sym(s);
        if hit {
            self.bump();
        }
        hit
    }

    fn eat_kw(&mut self, s: &str) -> bool {
        let hit = self.is_kw(s);
        if hit {
            self.bump();
        }
        hit
    }

    fn expect_sym(&mut self, s: &str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.unexpected(&format!("`{s}`"))
        }
    }

    fn expect_kw(&mut self, s: &str) -> PResult<()> {
        if self.eat_kw(s) {
            Ok(())
        } else {
            self.unexpected(&format!("`{s}`"))
        }
    }

    /// A non-keyword identifier.
    fn name(&mut self) -> PResult<Name> {
        match self.peek() {
            Tok::Ident(s) if !is_keyword(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => self.unexpected("a name"),
        }
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub fn expect_eof(&self) -> PResult<()> {
        if self.at_eof() {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }

    fn with_fo<T>(&mut self, names: &[Name], f: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        let depth = self.fo_bound.len();
        self.fo_bound.extend(names.iter().cloned());
        let out = f(self);
        self.fo_bound.truncate(depth);
        out
    }

    fn with_proof<T>(&mut self, name: &Name, f: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        let depth = self.proof_bound.len();
        self.proof_bound.push(name.clone());
        let out = f(self);
        self.proof_bound.truncate(depth);
        out
    }

    fn wrong_kind<T>(&self, name: &str, def: &Def, wanted: &str) -> PResult<T> {
        self.error(format!("`{name}` is a {} definition, expected a {wanted}", def.kind()))
    }

    // ---- set terms ----

    pub fn term(&mut self) -> PResult<SetTerm> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(numeral(n))
            }
            Tok::Sym("{") => {
                self.bump();
                let l = self.term()?;
                self.expect_sym(",")?;
                let r = self.term()?;
                self.expect_sym("}")?;
                Ok(SetTerm::pair(l, r))
            }
            Tok::Ident(w) => match w.as_str() {
                "empty" => {
                    self.bump();
                    Ok(SetTerm::empty())
                }
                "omega" => {
                    self.bump();
                    Ok(SetTerm::omega())
                }
                "union" => {
                    self.bump();
                    Ok(SetTerm::union(self.term()?))
                }
                "pow" => {
                    self.bump();
                    Ok(SetTerm::power(self.term()?))
                }
                "sep" | "repl" => {
                    self.bump();
                    let param = self.carried_param()?;
                    let want = if w == "sep" { 1 } else { 2 };
                    if param.binders.len() != want {
                        return self.error(format!("`{w}` binds {want} variable(s)"));
                    }
                    self.expect_sym("(")?;
                    let set = self.term()?;
                    self.expect_sym(")")?;
                    let name = if w == "sep" { ctor::SEP } else { ctor::REPL };
                    Ok(CtorInstance::new(name, vec![param], vec![set]).to_term())
                }
                "S" if matches!(self.peek_at(1), Tok::Sym("(")) => {
                    self.bump();
                    self.bump();
                    let t = self.term()?;
                    self.expect_sym(")")?;
                    Ok(succ(t))
                }
                _ if is_keyword(&w) => self.unexpected("a set term"),
                _ => {
                    self.bump();
                    if self.is_sym("(") || self.is_sym("[") {
                        return self.generic_ctor(w);
                    }
                    if self.fo_bound.contains(&w) {
                        return Ok(SetTerm::var(w));
                    }
                    match self.defs.get(&w) {
                        Some(Def::Term(t)) => Ok(t.clone()),
                        Some(d) => {
                            self.pos -= 1;
                            self.wrong_kind(&w, d, "set term")
                        }
                        None if self.constants.contains(&w) => Ok(SetTerm::constant(w)),
                        None => Ok(SetTerm::var(w)),
                    }
                }
            },
            _ => self.unexpected("a set term"),
        }
    }

    /// `name[binders : phi](args)` after the name.
    fn generic_ctor(&mut self, name: Name) -> PResult<SetTerm> {
        let params = if self.is_sym("[") { vec![self.carried_param()?] } else { vec![] };
        let args = self.term_list("(", ")")?;
        Ok(CtorInstance::new(name, params, args).to_term())
    }

    fn term_list(&mut self, open: &str, close: &str) -> PResult<Vec<SetTerm>> {
        self.expect_sym(open)?;
        let mut out = Vec::new();
        if !self.eat_sym(close) {
            loop {
                out.push(self.term()?);
                if self.eat_sym(close) {
                    break;
                }
                self.expect_sym(",")?;
            }
        }
        Ok(out)
    }

    fn binders_until_colon(&mut self) -> PResult<Vec<Name>> {
        let mut names = vec![self.name()?];
        while !self.is_sym(":") {
            names.push(self.name()?);
        }
        self.bump();
        Ok(names)
    }

    /// `[x y : phi]`
    fn carried_param(&mut self) -> PResult<FormulaParam> {
        self.expect_sym("[")?;
        let binders = self.binders_until_colon()?;
        let body = self.with_fo(&binders, |p| p.formula())?;
        self.expect_sym("]")?;
        Ok(FormulaParam { binders, body })
    }

    /// `x y : phi`, as given on the command line for carried formulas.
    pub fn param_spec(&mut self) -> PResult<FormulaParam> {
        let binders = self.binders_until_colon()?;
        let body = self.with_fo(&binders, |p| p.formula())?;
        Ok(FormulaParam { binders, body })
    }

    // ---- formulas ----

    pub fn formula(&mut self) -> PResult<Formula> {
        let start = self.here();
        let s = self.schema()?;
        schema_to_formula(s).ok_or_else(|| ParseError::new(start, "`$` is only allowed in axiom declarations"))
    }

    pub fn schema(&mut self) -> PResult<Schema> {
        if self.is_kw("forall") || self.is_kw("exists") {
            return self.quantified();
        }
        let lhs = self.disjunction()?;
        if self.eat_sym("->") {
            let rhs = self.schema()?;
            return Ok(Schema::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn quantified(&mut self) -> PResult<Schema> {
        let universal = matches!(self.bump(), Tok::Ident(w) if w == "forall");
        let mut names = vec![self.name()?];
        while !self.is_sym(".") {
            names.push(self.name()?);
        }
        self.bump();
        let body = self.with_fo(&names, |p| p.schema())?;
        Ok(names.into_iter().rev().fold(body, |acc, a| {
            if universal {
                Schema::Forall(a, Box::new(acc))
            } else {
                Schema::Exists(a, Box::new(acc))
            }
        }))
    }

    fn disjunction(&mut self) -> PResult<Schema> {
        let mut acc = self.conjunction()?;
        while self.eat_sym("\\/") {
            let r = self.conjunction()?;
            acc = Schema::Or(Box::new(acc), Box::new(r));
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> PResult<Schema> {
        let mut acc = self.formula_atom()?;
        while self.eat_sym("/\\") {
            let r = self.formula_atom()?;
            acc = Schema::And(Box::new(acc), Box::new(r));
        }
        Ok(acc)
    }

    fn formula_atom(&mut self) -> PResult<Schema> {
        if self.eat_kw("false") {
            return Ok(Schema::Bottom);
        }
        if self.is_kw("forall") || self.is_kw("exists") {
            return self.quantified();
        }
        if self.eat_sym("(") {
            let inner = self.schema()?;
            self.expect_sym(")")?;
            return Ok(inner);
        }
        if self.is_sym("$") {
            if !self.schema_mode {
                return self.error("`$` is only allowed in axiom declarations");
            }
            self.bump();
            return Ok(Schema::Carried(self.term_list("(", ")")?));
        }
        if let Tok::Ident(w) = self.peek().clone() {
            let is_relation = matches!(self.peek_at(1), Tok::Ident(k) if k == "in") || matches!(self.peek_at(1), Tok::Sym("="));
            if !is_relation && !self.fo_bound.contains(&w) {
                if let Some(def) = self.defs.get(&w) {
                    return match def {
                        Def::Formula(f) => {
                            let f = f.clone();
                            self.bump();
                            Ok(f.into())
                        }
                        d => self.wrong_kind(&w, d, "formula"),
                    };
                }
            }
        }
        let lhs = self.term()?;
        if self.eat_kw("in") {
            Ok(Schema::Member(lhs, self.term()?))
        } else if self.eat_sym("=") {
            Ok(eq(&lhs, &self.term()?).into())
        } else {
            self.unexpected("`in` or `=`")
        }
    }

    // ---- proofs ----

    pub fn proof(&mut self) -> PResult<ProofTerm> {
        if self.eat_kw("fun") {
            if self.eat_sym("(") {
                let x = self.name()?;
                self.expect_sym(":")?;
                let phi = self.formula()?;
                self.expect_sym(")")?;
                self.expect_sym("=>")?;
                let body = self.with_proof(&x, |p| p.proof())?;
                return Ok(ProofTerm::lam(x, phi, body));
            }
            let a = self.name()?;
            self.expect_sym("=>")?;
            let body = self.with_fo(std::slice::from_ref(&a), |p| p.proof())?;
            return Ok(ProofTerm::fo_lam(a, body));
        }
        if self.eat_kw("let") {
            self.expect_sym("[")?;
            let a = self.name()?;
            self.expect_sym(",")?;
            let x = self.name()?;
            self.expect_sym(":")?;
            let phi = self.with_fo(std::slice::from_ref(&a), |p| p.formula())?;
            self.expect_sym("]")?;
            self.expect_sym(":=")?;
            let head = self.proof()?;
            self.expect_kw("in")?;
            let body = self.with_fo(std::slice::from_ref(&a), |p| p.with_proof(&x, |p| p.proof()))?;
            return Ok(ProofTerm::let_in(a, x, phi, head, body));
        }
        let mut acc = self.prefixed()?;
        loop {
            if self.eat_sym("@") {
                acc = ProofTerm::fo_app(acc, self.term()?);
            } else if self.starts_proof_atom() {
                acc = ProofTerm::app(acc, self.prefixed()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_proof_atom(&self) -> bool {
        match self.peek() {
            Tok::Sym(s) => matches!(*s, "(" | "<" | "["),
            Tok::Ident(w) => {
                !is_keyword(w)
                    || matches!(
                        w.as_str(),
                        "fst" | "snd" | "inl" | "inr" | "magic" | "case" | "axrep" | "axprop" | "ind"
                    )
            }
            _ => false,
        }
    }

    fn prefixed(&mut self) -> PResult<ProofTerm> {
        let op: Option<fn(ProofTerm) -> ProofTerm> = match self.peek() {
            Tok::Ident(w) => match w.as_str() {
                "fst" => Some(ProofTerm::fst),
                "snd" => Some(ProofTerm::snd),
                "inl" => Some(ProofTerm::inl),
                "inr" => Some(ProofTerm::inr),
                "magic" => Some(ProofTerm::magic),
                _ => None,
            },
            _ => None,
        };
        match op {
            Some(op) => {
                self.bump();
                Ok(op(self.prefixed()?))
            }
            None => self.proof_atom(),
        }
    }

    fn proof_atom(&mut self) -> PResult<ProofTerm> {
        match self.peek().clone() {
            Tok::Sym("(") => {
                self.bump();
                let m = self.proof()?;
                if self.eat_sym(":") {
                    let phi = self.formula()?;
                    self.expect_sym(")")?;
                    return Ok(ProofTerm::ascribe(m, phi));
                }
                self.expect_sym(")")?;
                Ok(m)
            }
            Tok::Sym("<") => {
                self.bump();
                let l = self.proof()?;
                self.expect_sym(",")?;
                let r = self.proof()?;
                self.expect_sym(">")?;
                Ok(ProofTerm::pair(l, r))
            }
            Tok::Sym("[") => {
                self.bump();
                let t = self.term()?;
                self.expect_sym(",")?;
                let m = self.proof()?;
                self.expect_sym("]")?;
                Ok(ProofTerm::witness(t, m))
            }
            Tok::Ident(w) if w == "case" => {
                self.bump();
                let scrutinee = self.proof()?;
                self.expect_kw("of")?;
                self.expect_sym("{")?;
                let left = self.branch("inl")?;
                self.expect_sym("|")?;
                let right = self.branch("inr")?;
                self.expect_sym("}")?;
                Ok(ProofTerm::case(scrutinee, left, right))
            }
            Tok::Ident(w) if w == "axrep" || w == "axprop" => {
                self.bump();
                self.expect_sym("{")?;
                let name = match self.bump() {
                    Tok::Ident(n) => n,
                    _ => {
                        self.pos -= 1;
                        return self.unexpected("a constructor name");
                    }
                };
                let params = if self.is_sym("[") { vec![self.carried_param()?] } else { vec![] };
                self.expect_sym("}")?;
                self.expect_sym("(")?;
                let member = self.term()?;
                let mut args = Vec::new();
                if self.eat_sym(";") {
                    while !self.is_sym(")") {
                        args.push(self.term()?);
                        if !self.eat_sym(",") {
                            break;
                        }
                    }
                }
                self.expect_sym(")")?;
                self.expect_sym("(")?;
                let body = self.proof()?;
                self.expect_sym(")")?;
                let inst = CtorInstance::new(name, params, args);
                Ok(if w == "axrep" {
                    ProofTerm::ax_rep(inst, member, body)
                } else {
                    ProofTerm::ax_prop(inst, member, body)
                })
            }
            Tok::Ident(w) if w == "ind" => {
                self.bump();
                self.expect_sym("[")?;
                let names = self.binders_until_colon()?;
                let body = self.with_fo(&names, |p| p.formula())?;
                self.expect_sym("]")?;
                let args = self.term_list("(", ")")?;
                self.expect_sym("(")?;
                let m = self.proof()?;
                self.expect_sym(")")?;
                let mut names = names.into_iter();
                let var = names.next().expect("at least one binder");
                Ok(ProofTerm::ind(IndSchema::new(var, names.collect(), body), args, m))
            }
            Tok::Ident(w) if !is_keyword(&w) => {
                self.bump();
                if self.proof_bound.contains(&w) {
                    return Ok(ProofTerm::var(w));
                }
                match self.defs.get(&w) {
                    Some(Def::Proof(m)) => Ok(m.clone()),
                    Some(d) => {
                        self.pos -= 1;
                        self.wrong_kind(&w, d, "proof")
                    }
                    None => Ok(ProofTerm::var(w)),
                }
            }
            _ => self.unexpected("a proof term"),
        }
    }

    /// `inl (x : phi) => N`
    fn branch(&mut self, tag: &str) -> PResult<Branch> {
        self.expect_kw(tag)?;
        self.expect_sym("(")?;
        let x = self.name()?;
        self.expect_sym(":")?;
        let phi = self.formula()?;
        self.expect_sym(")")?;
        self.expect_sym("=>")?;
        let body = self.with_proof(&x, |p| p.proof())?;
        Ok(Branch::new(x, phi, body))
    }

    // ---- scripts ----

    /// `theory NAME` or `theory "path"`, if present.
    pub fn theory_directive(&mut self) -> PResult<Option<TheorySel>> {
        if !self.eat_kw("theory") {
            return Ok(None);
        }
        match self.bump() {
            Tok::Ident(w) => Ok(Some(TheorySel::from_word(&w))),
            Tok::Str(s) => Ok(Some(TheorySel::File(s))),
            _ => {
                self.pos -= 1;
                self.unexpected("a theory name or path")
            }
        }
    }

    fn at_statement_end(&self) -> bool {
        match self.peek() {
            Tok::Eof => true,
            Tok::Ident(w) => matches!(w.as_str(), "def" | "check" | "synth" | "theory"),
            _ => false,
        }
    }

    /// A definition body: a set term, else a formula, else a proof.
    fn def_body(&mut self) -> PResult<Def> {
        let start = self.pos;
        let mut best: Option<ParseError> = None;
        let keep = |e: ParseError, best: &mut Option<ParseError>| {
            if best.as_ref().is_none_or(|b| e.pos > b.pos) {
                *best = Some(e);
            }
        };
        let attempts: [fn(&mut Parser) -> PResult<Def>; 3] = [
            |p| p.term().map(Def::Term),
            |p| p.formula().map(Def::Formula),
            |p| p.proof().map(Def::Proof),
        ];
        for attempt in attempts {
            self.pos = start;
            match attempt(self) {
                Ok(d) if self.at_statement_end() => return Ok(d),
                Ok(_) => keep(ParseError::new(self.here(), format!("unexpected {}", self.peek())), &mut best),
                Err(e) => keep(e, &mut best),
            }
        }
        Err(best.expect("three attempts"))
    }

    fn judgment(&mut self, pos: Pos, mode: Mode) -> PResult<Judgment> {
        let mut context = Vec::new();
        if self.is_sym("(") {
            loop {
                self.expect_sym("(")?;
                let x = self.name()?;
                self.expect_sym(":")?;
                let phi = self.formula()?;
                self.expect_sym(")")?;
                context.push((x, phi));
                if !self.eat_sym(",") {
                    break;
                }
            }
            self.expect_sym("|-")?;
        }
        let name_pos = self.here();
        let name = self.name()?;
        match self.defs.get(&name) {
            Some(Def::Proof(_)) => {}
            Some(d) => return Err(ParseError::new(name_pos, format!("`{name}` is a {} definition, expected a proof", d.kind()))),
            None => return Err(ParseError::new(name_pos, format!("undefined proof `{name}`"))),
        }
        let goal = match mode {
            Mode::Check => {
                self.expect_sym(":")?;
                Some(self.formula()?)
            }
            Mode::Synth => None,
        };
        Ok(Judgment { pos, context, name, goal, mode })
    }

    /// Definitions and judgments up to the end of input.
    pub fn statements(&mut self) -> PResult<Vec<Statement>> {
        let mut out = Vec::new();
        while !self.at_eof() {
            let pos = self.here();
            if self.eat_kw("def") {
                let name_pos = self.here();
                let name = self.name()?;
                if self.defs.contains_key(&name) {
                    return Err(ParseError::new(name_pos, format!("`{name}` is already defined")));
                }
                self.expect_sym(":=")?;
                let def = self.def_body()?;
                self.defs.insert(name.clone(), def.clone());
                out.push(Statement::Def { pos, name, def });
            } else if self.eat_kw("check") {
                out.push(Statement::Judgment(self.judgment(pos, Mode::Check)?));
            } else if self.eat_kw("synth") {
                out.push(Statement::Judgment(self.judgment(pos, Mode::Synth)?));
            } else {
                return self.unexpected("`def`, `check` or `synth`");
            }
        }
        Ok(out)
    }

    // ---- theory files ----

    /// `axiom NAME[c a1 … an : schema](k)` and `induction` lines. `k` is the
    /// number of variables bound by the carried formula, written `$(t1, …, tk)`.
    pub fn theory_file(&mut self, name: &str) -> PResult<Theory> {
        // declared constants may be used before their own declaration
        let mut constants = BTreeSet::new();
        for i in 0..self.toks.len().saturating_sub(2) {
            let (Tok::Ident(kw), Tok::Ident(n), Tok::Sym("[")) =
                (&self.toks[i].tok, &self.toks[i + 1].tok, &self.toks[i + 2].tok)
            else {
                continue;
            };
            let holes = self.toks[i + 3..].iter().take_while(|t| matches!(t.tok, Tok::Ident(_))).count();
            if kw == "axiom" && holes == 1 {
                constants.insert(n.clone());
            }
        }
        self.constants = constants;
        let mut descriptors = Vec::new();
        let mut has_induction = false;
        while !self.at_eof() {
            if self.eat_kw("induction") {
                has_induction = true;
                continue;
            }
            self.expect_kw("axiom")?;
            let ctor_name = match self.bump() {
                Tok::Ident(n) => n,
                _ => {
                    self.pos -= 1;
                    return self.unexpected("a constructor name");
                }
            };
            self.expect_sym("[")?;
            let holes = self.binders_until_colon()?;
            self.schema_mode = true;
            let schema = self.with_fo(&holes, |p| p.schema());
            self.schema_mode = false;
            let schema = schema?;
            self.expect_sym("]")?;
            self.expect_sym("(")?;
            let k_pos = self.here();
            let params = match self.bump() {
                Tok::Num(0) => ParamSpec::None,
                Tok::Num(1) => ParamSpec::OneBinder,
                Tok::Num(2) => ParamSpec::TwoBinders,
                _ => return Err(ParseError::new(k_pos, "carried-formula arity must be 0, 1 or 2")),
            };
            self.expect_sym(")")?;
            let args: Vec<&str> = holes[1..].iter().map(String::as_str).collect();
            descriptors.push(AxiomDescriptor::new(&ctor_name, &holes[0], &args, params, schema));
        }
        Ok(Theory::new(name, descriptors, has_induction))
    }
}

fn parse_all<T>(src: &str, theory: &Theory, f: impl FnOnce(&mut Parser) -> PResult<T>) -> PResult<T> {
    let mut p = Parser::new(src, theory)?;
    let out = f(&mut p)?;
    p.expect_eof()?;
    Ok(out)
}

pub fn parse_term(src: &str, theory: &Theory) -> PResult<SetTerm> {
    parse_all(src, theory, Parser::term)
}

pub fn parse_formula(src: &str, theory: &Theory) -> PResult<Formula> {
    parse_all(src, theory, Parser::formula)
}

pub fn parse_proof(src: &str, theory: &Theory) -> PResult<ProofTerm> {
    parse_all(src, theory, Parser::proof)
}

pub fn parse_param(src: &str, theory: &Theory) -> PResult<FormulaParam> {
    parse_all(src, theory, Parser::param_spec)
}

pub fn parse_theory(src: &str, name: &str) -> PResult<Theory> {
    let empty = Theory::new(name, vec![], false);
    parse_all(src, &empty, |p| p.theory_file(name))
}
